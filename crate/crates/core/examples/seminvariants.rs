//! Seminvariants, Hessian and the syzygy for a form given as `[a,b,c,d]`.
//!
//!     cargo run --example seminvariants -- "[1,5,26,142]"

use cubic_twist::BinaryCubicForm;
use num_bigint::BigInt;

fn main() -> cubic_twist::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "[1,0,1,2]".into());
    let f: BinaryCubicForm = arg.parse()?;
    let s = f.seminvariants();
    println!("f = {f}");
    println!("a = {}, H = {}, U = {}, Delta = {}", s.a, s.h, s.u, s.delta);
    println!("Hessian = {}", f.hessian());
    let lhs = &s.u * &s.u;
    let rhs = BigInt::from(4) * &s.h * &s.h * &s.h - &s.delta * &s.a * &s.a;
    println!("U^2 = {lhs}, 4H^3 - Delta a^2 = {rhs}");
    Ok(())
}
