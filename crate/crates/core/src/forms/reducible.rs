use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::BinaryCubicForm;
use crate::arith::factorize_big;

/// Whether `f` has a linear factor over the rationals.
///
/// Forms with `a = 0` or `d = 0` are divisible by `y` or `x`; forms with
/// zero discriminant have a repeated, hence rational, root. Otherwise a
/// root `p/q` of `f(t, 1)` in lowest terms has `q | a` and `p | d`, and
/// every such candidate inside the Cauchy bound is tested exactly.
pub fn is_reducible(f: &BinaryCubicForm) -> bool {
    if f.a().is_zero() || f.d().is_zero() || f.discriminant().is_zero() {
        return true;
    }
    let [a, b3, c3, d] = f.polynomial_coefficients();
    // |p/q| < 1 + max(|3b|, |3c|, |d|) / |a|
    let bound_num = b3.abs().max(c3.abs()).max(d.abs()) + a.abs();
    let qs = divisors(a.magnitude());
    let ps = divisors(d.magnitude());
    for q in &qs {
        let q = BigInt::from(q.clone());
        for p in &ps {
            let p = BigInt::from(p.clone());
            if &p * a.abs() > &bound_num * &q {
                break;
            }
            if f.eval(&p, &q).is_zero() || f.eval(&-&p, &q).is_zero() {
                return true;
            }
        }
    }
    false
}

/// Positive divisors in increasing order.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for (p, e) in factorize_big(n) {
        let len = out.len();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            for i in 0..len {
                out.push(&out[i] * &pk);
            }
        }
    }
    out.sort();
    out
}
