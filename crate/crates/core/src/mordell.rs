//! Integral points on `y^2 = x^3 + kB^2` and their cubic forms.
//!
//! A point `P = (c, d)` corresponds to `f_P = x^3 - 3c xy^2 + 2d y^3`, i.e.
//! `[1, 0, -c, 2d]`, whose discriminant is `-4kB^2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_perfect_square;
use crate::forms::BinaryCubicForm;
use crate::{Error, Result};

/// An integral point together with the curve it lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MordellPoint {
    pub k: i64,
    /// The twist parameter `B`.
    pub b: u64,
    pub x: i128,
    pub y: i128,
}

impl MordellPoint {
    /// Checks `y^2 = x^3 + k B^2` before constructing the point.
    pub fn new(k: i64, b: u64, x: i128, y: i128) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        if b == 0 {
            return Err(Error::NonPositiveB);
        }
        if !on_curve(k, b, x, y) {
            return Err(Error::OffCurve { k, b, x, y });
        }
        Ok(MordellPoint { k, b, x, y })
    }

    /// `k B^2`.
    pub fn constant_term(&self) -> BigInt {
        BigInt::from(self.k) * BigInt::from(self.b) * BigInt::from(self.b)
    }

    /// The form `f_P`.
    pub fn form(&self) -> BinaryCubicForm {
        BinaryCubicForm::new(1, 0, -BigInt::from(self.x), 2 * BigInt::from(self.y))
            .expect("leading coefficient is 1")
    }
}

impl fmt::Display for MordellPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub(crate) fn on_curve(k: i64, b: u64, x: i128, y: i128) -> bool {
    let fast = || -> Option<bool> {
        let lhs = y.checked_mul(y)?;
        let rhs = x
            .checked_mul(x)?
            .checked_mul(x)?
            .checked_add((k as i128).checked_mul((b as i128).checked_mul(b as i128)?)?)?;
        Some(lhs == rhs)
    };
    fast().unwrap_or_else(|| {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let kb2 = BigInt::from(k) * BigInt::from(b) * BigInt::from(b);
        &y * &y == &x * &x * &x + kb2
    })
}

/// `f_P = [1, 0, -x(P), 2y(P)]`.
pub fn point_to_form(p: &MordellPoint) -> Result<BinaryCubicForm> {
    if !on_curve(p.k, p.b, p.x, p.y) {
        return Err(Error::OffCurve {
            k: p.k,
            b: p.b,
            x: p.x,
            y: p.y,
        });
    }
    Ok(p.form())
}

/// Inverse of [`point_to_form`]: reads `P` off a form `[1, 0, -c, 2d]` and
/// recovers `B` from the discriminant.
pub fn form_to_point(f: &BinaryCubicForm, k: i64) -> Result<MordellPoint> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if f.a() != &BigInt::from(1) {
        return Err(Error::NotMordellForm("leading coefficient is not 1"));
    }
    if !f.b().is_zero() {
        return Err(Error::NotMordellForm("x^2 y coefficient is not 0"));
    }
    if f.d() % 2 != BigInt::zero() {
        return Err(Error::NotMordellForm("y^3 coefficient is odd"));
    }
    let delta = f.discriminant();
    let bad = || Error::BadDiscriminant {
        delta: delta.clone(),
        k,
    };
    let minus_4k = BigInt::from(-4 * k as i128);
    if !(&delta % &minus_4k).is_zero() {
        return Err(bad());
    }
    let b2 = &delta / &minus_4k;
    if !b2.is_positive() {
        return Err(bad());
    }
    let b = is_perfect_square(&b2).ok_or_else(bad)?;
    let b = b.to_u64().ok_or(Error::OutOfRange("B"))?;
    let x = (-f.c()).to_i128().ok_or(Error::OutOfRange("x"))?;
    let y = (f.d() / BigInt::from(2)).to_i128().ok_or(Error::OutOfRange("y"))?;
    MordellPoint::new(k, b, x, y)
}

/// The point `(d^2 - kb^2, d(d^2 - kb^2))` on the curve with
/// `B = |b (d^2 - kb^2)|`.
pub fn family_one(k: i64, b: u64, d: i128) -> Result<MordellPoint> {
    let x = d
        .checked_mul(d)
        .and_then(|d2| {
            (k as i128)
                .checked_mul(b as i128)
                .and_then(|kb| kb.checked_mul(b as i128))
                .and_then(|kb2| d2.checked_sub(kb2))
        })
        .ok_or(Error::OutOfRange("family parameters"))?;
    if x == 0 || b == 0 {
        return Err(Error::ZeroB);
    }
    let big_b = (b as i128)
        .checked_mul(x)
        .map(|v| v.unsigned_abs())
        .and_then(|v| u64::try_from(v).ok())
        .ok_or(Error::OutOfRange("B"))?;
    let y = d.checked_mul(x).ok_or(Error::OutOfRange("y"))?;
    MordellPoint::new(k, big_b, x, y)
}

/// The point `(x^2 - ky^2, x(x^2 - ky^2))` with `B = |y (x^2 - ky^2)|`.
pub fn family_two(k: i64, x: i128, y: i128) -> Result<MordellPoint> {
    if y == 0 {
        return Err(Error::ZeroB);
    }
    let b = u64::try_from(y.unsigned_abs()).map_err(|_| Error::OutOfRange("y"))?;
    family_one(k, b, x)
}

/// Points from [`family_one`] over the box `0 < b <= N^(1/3) / (2|k|^(1/3))`,
/// `0 < |d| <= N^(1/3) |k|^(1/6) / 2`, keeping those with `B <= N`. The box
/// edges are tested exactly as `8kb^3 <= N` and `64d^6 <= |k|N^2`.
pub fn family_one_box(k: i64, n: u64) -> Vec<MordellPoint> {
    let (ak, n) = (k.unsigned_abs() as u128, n as u128);
    let mut out = Vec::new();
    let mut b: u128 = 1;
    while 8 * ak * b * b * b <= n {
        let mut d: u128 = 1;
        while 64 * d.pow(6) <= ak * n * n {
            for sd in [d as i128, -(d as i128)] {
                if let Ok(p) = family_one(k, b as u64, sd) {
                    if p.b as u128 <= n {
                        out.push(p);
                    }
                }
            }
            d += 1;
        }
        b += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Removes the torsion points `(0, +-sqrt(k) B)` when `k` is a perfect
/// square; otherwise returns the points unchanged.
pub fn star_filter(k: i64, b: u64, pts: &[MordellPoint]) -> Vec<MordellPoint> {
    match is_perfect_square(&k) {
        Some(root) => {
            let t = root as i128 * b as i128;
            pts.iter()
                .copied()
                .filter(|p| !(p.x == 0 && (p.y == t || p.y == -t)))
                .collect()
        }
        None => pts.to_vec(),
    }
}
