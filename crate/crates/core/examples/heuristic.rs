//! The predicted order of the point count next to an actual census.
//!
//!     cargo run --release --example heuristic -- -2

use cubic_twist::census::curve_census;
use cubic_twist::heuristic::{integral_constant, integral_constant_double_exponential, predicted_sum, KSign};
use cubic_twist::mordell::star_filter;

fn main() -> cubic_twist::Result<()> {
    let k: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(-2);
    for sign in [KSign::Negative, KSign::Positive] {
        let simpson = integral_constant(sign, 1e-12)?;
        let de = integral_constant_double_exponential(sign, 1e-12)?;
        println!("{sign:?}: {simpson:.12} (Simpson)  {de:.12} (exp-sinh)");
    }
    for n in [100u64, 1000, 10_000] {
        let p = predicted_sum(k, n, 1e-10)?;
        let report = curve_census(k, n, 10_000_000)?;
        let found: usize = report.records.iter().map(|r| star_filter(k, r.b, &r.points).len()).sum();
        println!("k = {k}, N = {n:>6}: predicted {:>10.1}, found {found:>7}", p.predicted);
    }
    Ok(())
}
