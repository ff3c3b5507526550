//! Integer-matrix binary cubic forms `ax^3 + 3bx^2y + 3cxy^2 + dy^3`.
//!
//! Matrices act on the right of row vectors: `act(f, g)(x, y) = f((x, y) g)`,
//! so `(x, y) [[m11, m12], [m21, m22]] = (m11 x + m21 y, m12 x + m22 y)`.
//! With this convention `act(act(f, g1), g2) = act(f, g2 * g1)`.

mod equiv;
mod reduce;
mod reducible;

pub use equiv::{equiv, equiv_marked, SEARCH_GENERATORS};
pub use reduce::{reduce, satisfies_reduced_bounds, A_BOUND, H_BOUND};
pub use reducible::is_reducible;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// `f(x, y) = a x^3 + 3b x^2 y + 3c x y^2 + d y^3`, never identically zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryCubicForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// The seminvariants `a`, `H = b^2 - ac`, `U = 2b^3 + a^2 d - 3abc` and the
/// discriminant. They satisfy `U^2 = 4H^3 - delta * a^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seminvariants {
    pub a: BigInt,
    pub h: BigInt,
    pub u: BigInt,
    pub delta: BigInt,
}

/// `p x^2 + q x y + r y^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
}

impl BinaryCubicForm {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let f = BinaryCubicForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        if f.a.is_zero() && f.b.is_zero() && f.c.is_zero() && f.d.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(f)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// `[a, b, c, d]` in the integer-matrix convention.
    pub fn coefficients(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Coefficients of the expanded polynomial: `[a, 3b, 3c, d]`.
    pub fn polynomial_coefficients(&self) -> [BigInt; 4] {
        [
            self.a.clone(),
            &self.b * 3,
            &self.c * 3,
            self.d.clone(),
        ]
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let x2 = x * x;
        let y2 = y * y;
        &self.a * &x2 * x + 3 * &self.b * &x2 * y + 3 * &self.c * x * &y2 + &self.d * &y2 * y
    }

    pub fn discriminant(&self) -> BigInt {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let b2 = b * b;
        let c2 = c * c;
        3 * &b2 * &c2 - 4 * a * &c2 * c - 4 * &b2 * b * d - a * a * d * d + 6 * a * b * c * d
    }

    pub fn seminvariants(&self) -> Seminvariants {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Seminvariants {
            a: a.clone(),
            h: b * b - a * c,
            u: 2 * b * b * b + a * a * d - 3 * a * b * c,
            delta: self.discriminant(),
        }
    }

    /// The Hessian covariant `(b^2 - ac) x^2 + (bc - ad) xy + (c^2 - bd) y^2`.
    pub fn hessian(&self) -> QuadraticForm {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        QuadraticForm {
            p: b * b - a * c,
            q: b * c - a * d,
            r: c * c - b * d,
        }
    }

    /// `f((x, y) g)`.
    pub fn act(&self, g: &Unimodular) -> BinaryCubicForm {
        let [a, b, c, d] = self.substitute(&g.m);
        BinaryCubicForm { a, b, c, d }
    }

    /// Integer-matrix coefficients of `f((x, y) m)` for an arbitrary integer
    /// matrix `m`. The result is zero when `det m = 0` and `f` vanishes on
    /// the image line, so this does not return a [`BinaryCubicForm`].
    pub fn substitute(&self, m: &[[BigInt; 2]; 2]) -> [BigInt; 4] {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let [[m11, m12], [m21, m22]] = m;
        // f(v) = T(v, v, v) for the symmetric trilinear T with
        // T(e1,e1,e1)=a, T(e1,e1,e2)=b, T(e1,e2,e2)=c, T(e2,e2,e2)=d; the rows
        // r1 = (m11, m12), r2 = (m21, m22) give the new coefficients
        // T(r1,r1,r1), T(r1,r1,r2), T(r1,r2,r2), T(r2,r2,r2).
        let new_a = self.eval(m11, m12);
        let new_d = self.eval(m21, m22);
        let new_b = a * m11 * m11 * m21
            + b * (m11 * m11 * m22 + 2 * m11 * m12 * m21)
            + c * (2 * m11 * m12 * m22 + m12 * m12 * m21)
            + d * m12 * m12 * m22;
        let new_c = a * m11 * m21 * m21
            + b * (2 * m11 * m21 * m22 + m12 * m21 * m21)
            + c * (m11 * m22 * m22 + 2 * m12 * m21 * m22)
            + d * m12 * m22 * m22;
        [new_a, new_b, new_c, new_d]
    }

    /// Builds a form from substituted coefficients known to be nonzero.
    pub(crate) fn from_coefficients([a, b, c, d]: [BigInt; 4]) -> Result<Self> {
        BinaryCubicForm::new(a, b, c, d)
    }
}

impl fmt::Display for BinaryCubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{}]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for BinaryCubicForm {
    type Err = Error;

    /// Parses `[a,b,c,d]` (whitespace allowed).
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "form",
            input: s.to_string(),
        };
        let v = parse_int_list(s).ok_or_else(err)?;
        let [a, b, c, d]: [BigInt; 4] = v.try_into().map_err(|_| err())?;
        BinaryCubicForm::new(a, b, c, d)
    }
}

fn parse_int_list(s: &str) -> Option<Vec<BigInt>> {
    let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
    inner
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().ok())
        .collect()
}

impl QuadraticForm {
    pub fn discriminant(&self) -> BigInt {
        &self.q * &self.q - 4 * &self.p * &self.r
    }

    /// `Q((x, y) g)`.
    pub fn act(&self, g: &Unimodular) -> QuadraticForm {
        let [[m11, m12], [m21, m22]] = &g.m;
        let (p, q, r) = (&self.p, &self.q, &self.r);
        QuadraticForm {
            p: p * m11 * m11 + q * m11 * m12 + r * m12 * m12,
            q: 2 * p * m11 * m21 + q * (m11 * m22 + m12 * m21) + 2 * r * m12 * m22,
            r: p * m21 * m21 + q * m21 * m22 + r * m22 * m22,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.p, self.q, self.r)
    }
}

/// A 2x2 integer matrix of determinant +1 or -1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Unimodular {
    m: [[BigInt; 2]; 2],
}

impl Unimodular {
    pub fn new(
        m11: impl Into<BigInt>,
        m12: impl Into<BigInt>,
        m21: impl Into<BigInt>,
        m22: impl Into<BigInt>,
    ) -> Result<Self> {
        let g = Unimodular {
            m: [[m11.into(), m12.into()], [m21.into(), m22.into()]],
        };
        let det = g.det_big();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det));
        }
        Ok(g)
    }

    fn unchecked(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        Unimodular {
            m: [[m11.into(), m12.into()], [m21.into(), m22.into()]],
        }
    }

    pub fn identity() -> Self {
        Self::unchecked(1, 0, 0, 1)
    }

    /// `(x, y) -> (y, x)`.
    pub fn swap() -> Self {
        Self::unchecked(0, 1, 1, 0)
    }

    /// `[[1, 0], [t, 1]]`, i.e. `(x, y) -> (x + t y, y)`.
    pub fn translation(t: impl Into<BigInt>) -> Self {
        Unimodular {
            m: [
                [BigInt::one(), BigInt::zero()],
                [t.into(), BigInt::one()],
            ],
        }
    }

    /// `(x, y) -> (-x, y)`.
    pub fn negate_x() -> Self {
        Self::unchecked(-1, 0, 0, 1)
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.m
    }

    fn det_big(&self) -> BigInt {
        let [[a, b], [c, d]] = &self.m;
        a * d - b * c
    }

    /// +1 or -1.
    pub fn det(&self) -> i32 {
        if self.det_big().is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn mul(&self, other: &Unimodular) -> Unimodular {
        let [[a, b], [c, d]] = &self.m;
        let [[e, f], [g, h]] = &other.m;
        Unimodular {
            m: [
                [a * e + b * g, a * f + b * h],
                [c * e + d * g, c * f + d * h],
            ],
        }
    }

    pub fn inverse(&self) -> Unimodular {
        let [[a, b], [c, d]] = &self.m;
        let s = BigInt::from(self.det());
        Unimodular {
            m: [[d * &s, -b * &s], [-c * &s, a * &s]],
        }
    }

    /// Row vector times matrix: `(x, y) g`.
    pub fn apply_row(&self, (x, y): (&BigInt, &BigInt)) -> (BigInt, BigInt) {
        let [[a, b], [c, d]] = &self.m;
        (x * a + y * c, x * b + y * d)
    }
}

impl fmt::Display for Unimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl FromStr for Unimodular {
    type Err = Error;

    /// Parses `[[m11,m12],[m21,m22]]`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "matrix",
            input: s.to_string(),
        };
        let flat: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = flat
            .strip_prefix("[[")
            .and_then(|t| t.strip_suffix("]]"))
            .ok_or_else(err)?;
        let (r1, r2) = inner.split_once("],[").ok_or_else(err)?;
        let row = |r: &str| -> Option<(BigInt, BigInt)> {
            let (x, y) = r.split_once(',')?;
            Some((x.parse().ok()?, y.parse().ok()?))
        };
        let (m11, m12) = row(r1).ok_or_else(err)?;
        let (m21, m22) = row(r2).ok_or_else(err)?;
        Unimodular::new(m11, m12, m21, m22)
    }
}

/// A form together with a nonzero lattice point. `GL_2(Z)` acts by
/// `g . (f, v) = (f((x, y) g), v g^-1)`, which preserves `f(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedForm {
    form: BinaryCubicForm,
    point: (BigInt, BigInt),
}

impl MarkedForm {
    pub fn new(form: BinaryCubicForm, x0: impl Into<BigInt>, y0: impl Into<BigInt>) -> Result<Self> {
        let point = (x0.into(), y0.into());
        if point.0.is_zero() && point.1.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(MarkedForm { form, point })
    }

    pub fn form(&self) -> &BinaryCubicForm {
        &self.form
    }

    pub fn point(&self) -> (&BigInt, &BigInt) {
        (&self.point.0, &self.point.1)
    }

    /// `f(x0, y0)`.
    pub fn value(&self) -> BigInt {
        self.form.eval(&self.point.0, &self.point.1)
    }

    pub fn act(&self, g: &Unimodular) -> MarkedForm {
        MarkedForm {
            form: self.form.act(g),
            point: g.inverse().apply_row(self.point()),
        }
    }
}

impl fmt::Display for MarkedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ({},{}))", self.form, self.point.0, self.point.1)
    }
}

/// Free-function form of [`BinaryCubicForm::seminvariants`].
pub fn seminvariants(f: &BinaryCubicForm) -> Seminvariants {
    f.seminvariants()
}

/// Free-function form of [`BinaryCubicForm::hessian`].
pub fn hessian(f: &BinaryCubicForm) -> QuadraticForm {
    f.hessian()
}

/// Free-function form of [`BinaryCubicForm::act`].
pub fn act(f: &BinaryCubicForm, g: &Unimodular) -> BinaryCubicForm {
    f.act(g)
}

/// Free-function form of [`MarkedForm::act`].
pub fn act_marked(mf: &MarkedForm, g: &Unimodular) -> MarkedForm {
    mf.act(g)
}

#[cfg(test)]
pub(crate) fn form(a: i64, b: i64, c: i64, d: i64) -> BinaryCubicForm {
    BinaryCubicForm::new(a, b, c, d).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sem(f: &BinaryCubicForm) -> [i64; 4] {
        let s = f.seminvariants();
        [&s.a, &s.h, &s.u, &s.delta].map(|v| i64::try_from(v).unwrap())
    }

    #[test]
    fn seminvariant_examples() {
        assert_eq!(sem(&form(1, 0, 1, 2)), [1, -1, 2, -8]);
        assert_eq!(sem(&form(1, 0, 1, 14)), [1, -1, 14, -200]);
        assert_eq!(sem(&form(1, 0, 0, 0)), [1, 0, 0, 0]);
    }

    #[test]
    fn hessian_examples() {
        assert_eq!(form(1, 0, 1, 14).hessian().to_string(), "[-1,-14,1]");
        assert_eq!(form(5, 18, 65, 236).hessian().to_string(), "[-1,-10,-23]");
        assert!(form(1, 0, 0, 0).hessian().is_zero());
    }

    #[test]
    fn act_examples() {
        let f = form(1, 0, 1, 2);
        let g = Unimodular::new(1, 0, 5, 1).unwrap();
        let h = f.act(&g);
        assert_eq!(h, form(1, 5, 26, 142));
        assert_eq!(h.polynomial_coefficients().map(|v| i64::try_from(v).unwrap()), [1, 15, 78, 142]);
        assert_eq!(h.discriminant(), BigInt::from(-8));
        assert_eq!(f.act(&Unimodular::identity()), f);
    }

    #[test]
    fn act_composes_in_reverse_order() {
        let f = form(2, -1, 3, 7);
        let g1 = Unimodular::new(2, 1, 1, 1).unwrap();
        let g2 = Unimodular::new(0, 1, -1, 3).unwrap();
        assert_eq!(f.act(&g1).act(&g2), f.act(&g2.mul(&g1)));
    }

    #[test]
    fn marked_action_examples() {
        let f = form(1, 0, 1, 2);
        let m = MarkedForm::new(f.clone(), 1, 0).unwrap();
        let g = Unimodular::new(1, 0, 5, 1).unwrap();
        let moved = m.act(&g);
        assert_eq!(moved.form(), &form(1, 5, 26, 142));
        assert_eq!(moved.point(), (&BigInt::from(1), &BigInt::from(0)));
        assert_eq!(moved.value(), BigInt::from(1));

        let swapped = m.act(&Unimodular::swap());
        assert_eq!(swapped.form(), &form(2, 1, 0, 1));
        assert_eq!(swapped.point(), (&BigInt::from(0), &BigInt::from(1)));
        assert_eq!(swapped.value(), m.value());

        assert_eq!(m.act(&Unimodular::identity()), m);
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(matches!(BinaryCubicForm::new(0, 0, 0, 0), Err(Error::ZeroForm)));
        assert!(matches!(Unimodular::new(2, 0, 0, 1), Err(Error::NotUnimodular(_))));
        assert!(matches!(MarkedForm::new(form(1, 0, 0, 1), 0, 0), Err(Error::ZeroPoint)));
    }

    #[test]
    fn parsing_round_trips() {
        let f: BinaryCubicForm = " [5, 18,65,236]".parse().unwrap();
        assert_eq!(f, form(5, 18, 65, 236));
        assert_eq!(f.to_string(), "[5,18,65,236]");
        assert!("[1,2,3]".parse::<BinaryCubicForm>().is_err());
        assert!("1,2,3,4".parse::<BinaryCubicForm>().is_err());
        let g: Unimodular = "[[1,0],[-5,1]]".parse().unwrap();
        assert_eq!(g, Unimodular::translation(-5));
        assert_eq!(g.to_string(), "[[1,0],[-5,1]]");
        assert!("[[2,0],[0,1]]".parse::<Unimodular>().is_err());
    }

    #[test]
    fn inverse_and_det() {
        let g = Unimodular::new(3, 2, 1, 1).unwrap();
        assert_eq!(g.mul(&g.inverse()), Unimodular::identity());
        assert_eq!(Unimodular::swap().det(), -1);
        assert_eq!(Unimodular::swap().inverse(), Unimodular::swap());
    }
}
