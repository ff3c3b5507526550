//! Discriminant lowering.
//!
//! For a point `P = (c, d)` and `M | B` with `gcd(c, M) = 1`, put
//! `w = c^-1 d (mod M^2)` and
//!
//! ```text
//! F_P(x, y) = f_P(M x + w y, y) / M^2,
//! ```
//!
//! an integer-matrix form with `F_P(1, 0) = M` and discriminant
//! `-4kB^2 / M^2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::gcd_parts;
use crate::forms::BinaryCubicForm;
use crate::mordell::MordellPoint;
use crate::{Error, Result};

/// A lowered form and the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoweredForm {
    pub form: BinaryCubicForm,
    /// In `[1, M^2]` for `M > 1`, and 0 for `M = 1`.
    pub w: BigInt,
    pub m: u64,
    pub source: MordellPoint,
}

/// `g = prod_{p | gcd(x, B)} p^v_p(B)` and `M = B / g`.
pub fn canonical_g(p: &MordellPoint) -> Result<(u64, u64)> {
    let parts = gcd_parts(p.x, p.b)?;
    Ok((parts.g, p.b / parts.g))
}

/// Lowers `f_P` by `M`.
pub fn lower(p: &MordellPoint, m: u64) -> Result<LoweredForm> {
    if m == 0 || p.b % m != 0 {
        return Err(Error::NotADivisor { m, b: p.b });
    }
    let shared = p.x.unsigned_abs().gcd(&(m as u128));
    if shared != 1 {
        return Err(Error::NotCoprime(shared as u64));
    }
    let f_p = p.form();
    if m == 1 {
        return Ok(LoweredForm {
            form: f_p,
            w: BigInt::zero(),
            m,
            source: *p,
        });
    }
    let m_big = BigInt::from(m);
    let modulus = &m_big * &m_big;
    let x = BigInt::from(p.x);
    // gcd(x, M) = 1 implies gcd(x, M^2) = 1
    let inv = mod_inverse(&x, &modulus).ok_or(Error::NotCoprime(1))?;
    let mut w = (inv * BigInt::from(p.y)).mod_floor(&modulus);
    if w.is_zero() {
        w = modulus.clone();
    }
    let raw = f_p.substitute(&[
        [m_big.clone(), BigInt::zero()],
        [w.clone(), BigInt::from(1)],
    ]);
    let mut coeffs = Vec::with_capacity(4);
    for v in raw {
        let (q, r) = v.div_rem(&modulus);
        if !r.is_zero() {
            return Err(Error::NonIntegralLowering);
        }
        coeffs.push(q);
    }
    let form = BinaryCubicForm::from_coefficients(coeffs.try_into().unwrap())?;
    debug_assert_eq!(form.a(), &m_big);
    debug_assert_eq!(
        form.discriminant(),
        -4 * p.constant_term() / (&m_big * &m_big)
    );
    Ok(LoweredForm {
        form,
        w,
        m,
        source: *p,
    })
}

fn mod_inverse(x: &BigInt, modulus: &BigInt) -> Option<BigInt> {
    let e = x.mod_floor(modulus).extended_gcd(modulus);
    (e.gcd == BigInt::from(1)).then(|| e.x.mod_floor(modulus))
}

/// Splits the Hessian seminvariant as `H = h g0` and `U / 2 = u g0`, and
/// checks `u^2 - k g1^2 a^2 = g0 h^3`.
pub fn extract_hu(f: &BinaryCubicForm, k: i64, g0: u64, g1: u64) -> Result<(BigInt, BigInt)> {
    let s = f.seminvariants();
    let g0b = BigInt::from(g0);
    let g1b = BigInt::from(g1);
    if g0 == 0 || !(&s.h % &g0b).is_zero() {
        return Err(Error::HessianDivisibility);
    }
    if !(&s.u % (BigInt::from(2) * &g0b)).is_zero() {
        return Err(Error::HessianDivisibility);
    }
    let h = &s.h / &g0b;
    let u = &s.u / (BigInt::from(2) * &g0b);
    let lhs = &u * &u - BigInt::from(k) * &g1b * &g1b * &s.a * &s.a;
    if lhs != &g0b * &h * &h * &h {
        return Err(Error::SeminvariantRelation);
    }
    Ok((h, u))
}

/// `|a| <= 4 * 3^(-3/4) g^(1/2) |k|^(1/4)` and
/// `|h| <= 2^(4/3) 3^(-1/2) g1 |k|^(1/2)`, checked exactly via
/// `27 a^4 <= 256 g^2 |k|` and `27 h^6 <= 256 g1^6 |k|^3`.
pub fn within_seminvariant_bounds(a: &BigInt, h: &BigInt, g: u64, g1: u64, k: i64) -> bool {
    let (g, g1, k) = (BigInt::from(g), BigInt::from(g1), BigInt::from(k).abs());
    let a2 = a * a;
    let h2 = h * h;
    let g1_2 = &g1 * &g1;
    27 * &a2 * &a2 <= 256 * &g * &g * &k
        && 27 * &h2 * &h2 * &h2 <= 256 * &g1_2 * &g1_2 * &g1_2 * &k * &k * &k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{form, reduce};

    fn pt(k: i64, b: u64, x: i128, y: i128) -> MordellPoint {
        MordellPoint::new(k, b, x, y).unwrap()
    }

    #[test]
    fn canonical_g_examples() {
        assert_eq!(canonical_g(&pt(2, 7, 7, 21)).unwrap(), (7, 1));
        assert_eq!(canonical_g(&pt(2, 5, -1, 7)).unwrap(), (1, 5));
        assert_eq!(canonical_g(&pt(2, 6, -2, 8)).unwrap(), (2, 3));
    }

    #[test]
    fn lowering_golden_values() {
        let l = lower(&pt(2, 5, -1, 7), 5).unwrap();
        assert_eq!(l.w, BigInt::from(18));
        assert_eq!(l.form, form(5, 18, 65, 236));
        assert_eq!(l.form.discriminant(), BigInt::from(-8));

        let l = lower(&pt(2, 6, -2, 8), 3).unwrap();
        assert_eq!(l.w, BigInt::from(5));
        assert_eq!(l.form, form(3, 5, 9, 19));
        assert_eq!(l.form.discriminant(), BigInt::from(-32));

        let p = pt(2, 7, 7, 21);
        let l = lower(&p, 1).unwrap();
        assert_eq!(l.w, BigInt::zero());
        assert_eq!(l.form, p.form());
    }

    #[test]
    fn lowering_hypotheses() {
        assert!(matches!(lower(&pt(2, 6, -2, 8), 2), Err(Error::NotCoprime(2))));
        assert!(matches!(lower(&pt(2, 5, -1, 7), 3), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn extract_hu_examples() {
        let (h, u) = extract_hu(&form(5, 18, 65, 236), 2, 1, 1).unwrap();
        assert_eq!((h, u), (BigInt::from(-1), BigInt::from(7)));
        let (h, u) = extract_hu(&form(3, 5, 9, 19), 2, 2, 1).unwrap();
        assert_eq!((h, u), (BigInt::from(-1), BigInt::from(4)));
        // H = -1 is not divisible by 3
        assert!(matches!(extract_hu(&form(5, 18, 65, 236), 2, 3, 1), Err(Error::HessianDivisibility)));
        // wrong k breaks the relation
        assert!(matches!(extract_hu(&form(5, 18, 65, 236), 3, 1, 1), Err(Error::SeminvariantRelation)));
    }

    #[test]
    fn relation_survives_reduction() {
        let (red, _) = reduce(&form(5, 18, 65, 236)).unwrap();
        let (h, _) = extract_hu(&red, 2, 1, 1).unwrap();
        assert!(!h.is_zero());
        assert!(within_seminvariant_bounds(red.a(), &h, 1, 1, 2));
    }
}
