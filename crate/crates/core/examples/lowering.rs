//! Discriminant lowering of every point found on a range of curves, with the
//! `(h, u)` relation checked on the reduced lowered forms.
//!
//!     cargo run --release --example lowering -- 2 60

use cubic_twist::arith::gcd_parts;
use cubic_twist::census::curve_census;
use cubic_twist::forms::reduce;
use cubic_twist::lowering::{canonical_g, extract_hu, lower, within_seminvariant_bounds};

fn main() -> cubic_twist::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let n: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(60);

    let report = curve_census(k, n, 100_000)?;
    println!("{:>4} {:>18} {:>4} {:>6} {:>24} {:>20} {:>6} {:>6}", "B", "P", "M", "w", "F_P", "reduced", "h", "u");
    for p in report.points() {
        let parts = gcd_parts(p.x, p.b)?;
        let (g, m) = canonical_g(p)?;
        let lowered = lower(p, m)?;
        let (red, _) = reduce(&lowered.form)?;
        let (h, u) = extract_hu(&red, k, parts.g0, parts.g1)?;
        assert!(within_seminvariant_bounds(red.a(), &h, g, parts.g1, k));
        println!(
            "{:>4} {:>18} {:>4} {:>6} {:>24} {:>20} {:>6} {:>6}",
            p.b,
            p.to_string(),
            m,
            lowered.w,
            lowered.form.to_string(),
            red.to_string(),
            h,
            u
        );
    }
    Ok(())
}
