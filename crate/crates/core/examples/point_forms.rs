//! Points on `y^2 = x^3 + kB^2` and their forms `x^3 - 3x(P)xy^2 + 2y(P)y^3`.
//!
//!     cargo run --example point_forms -- 2 5

use cubic_twist::census::enumerate_points;
use cubic_twist::forms::is_reducible;
use cubic_twist::mordell::{family_one, family_two, form_to_point, point_to_form};

fn main() -> cubic_twist::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let b: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);

    println!("points on y^2 = x^3 + {k}*{b}^2 with x <= 10^5:");
    for p in enumerate_points(k, b, 100_000)? {
        let f = point_to_form(&p)?;
        let back = form_to_point(&f, k)?;
        assert_eq!(back, p);
        let kind = if is_reducible(&f) { "reducible" } else { "irreducible" };
        println!("  {:>16}  f_P = {f}  Delta = {}  {kind}", p.to_string(), f.discriminant());
    }

    println!("explicit families for k = {k}:");
    for (b, d) in [(1, 1), (1, 3), (2, 5)] {
        if let Ok(p) = family_one(k, b, d) {
            println!("  family_one(b={b}, d={d}) -> {p} on B = {}", p.b);
        }
    }
    for (x, y) in [(3, 1), (1, 2)] {
        if let Ok(p) = family_two(k, x, y) {
            println!("  family_two(x={x}, y={y}) -> {p} on B = {}", p.b);
        }
    }
    Ok(())
}
