//! Reduction to a representative with bounded seminvariants.
//!
//! Descent is driven by a positive-definite quadratic covariant `Q`: a step
//! is either the translation `(x, y) -> (x + t y, y)` with `t` the nearest
//! integer to `-q / 2p` (ties toward zero) or the swap `(x, y) -> (y, x)`
//! when `r < p`. Every step is applied exactly to the cubic form, so the
//! returned matrix is an exact witness.
//!
//! For positive discriminant `Q` is the Hessian and everything is exact.
//! For negative discriminant `Q` is Julia's covariant
//! `sum_i |f'(alpha_i)|^-2 (x - alpha_i y)(x - conj(alpha_i) y)` over the
//! roots of `f(t, 1)`, evaluated in floating point from a real root found
//! by exact bisection. Both choices agree (up to scale) with the Hessian
//! when all roots are real.

use std::collections::{HashSet, VecDeque};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::{BinaryCubicForm, Unimodular, SEARCH_GENERATORS};
use crate::{Error, Result};

/// `2^(3/2) 3^(-3/4)`: reduced forms have `|a| <= A_BOUND |delta|^(1/4)`.
pub const A_BOUND: f64 = 1.240_806_478_802_799_5;
/// `2^(1/3) 3^(-1/2)`: reduced forms have `|H| <= H_BOUND |delta|^(1/2)`.
pub const H_BOUND: f64 = 0.727_415_757_314_480_9;

const MAX_STEPS: usize = 100_000;
const MAX_ROUNDS: usize = 64;
const FLOAT_SLACK: f64 = 1e-9;
const ESCALATION_RADIUS: usize = 6;

/// Exact test of both reduced-form bounds:
/// `27 a^4 <= 64 |delta|` and `27 H^6 <= 4 |delta|^3`.
pub fn satisfies_reduced_bounds(f: &BinaryCubicForm) -> bool {
    let s = f.seminvariants();
    let delta = s.delta.abs();
    let a2 = &s.a * &s.a;
    let h2 = &s.h * &s.h;
    27 * &a2 * &a2 <= 64 * &delta && 27 * &h2 * &h2 * &h2 <= 4 * &delta * &delta * &delta
}

/// Returns `(f_red, g)` with `f_red = f.act(g)` satisfying the reduced-form
/// bounds.
pub fn reduce(f: &BinaryCubicForm) -> Result<(BinaryCubicForm, Unimodular)> {
    let delta = f.discriminant();
    if delta.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let mut state = Descent {
        form: f.clone(),
        gamma: Unimodular::identity(),
    };
    if delta.is_positive() {
        state.hessian_descent()?;
    } else {
        for _ in 0..MAX_ROUNDS {
            let q = julia_covariant(&state.form);
            if !state.float_descent(q)? {
                break;
            }
        }
    }
    if !satisfies_reduced_bounds(&state.form) {
        state.escalate()?;
    }
    debug_assert_eq!(f.act(&state.gamma), state.form);
    Ok((state.form, state.gamma))
}

struct Descent {
    form: BinaryCubicForm,
    gamma: Unimodular,
}

impl Descent {
    fn step(&mut self, g: &Unimodular) {
        self.form = self.form.act(g);
        self.gamma = g.mul(&self.gamma);
    }

    fn hessian_descent(&mut self) -> Result<()> {
        for _ in 0..MAX_STEPS {
            let mut h = self.form.hessian();
            if h.p.is_negative() {
                h.p = -h.p;
                h.q = -h.q;
                h.r = -h.r;
            }
            let t = round_half_toward_zero(&-&h.q, &(2 * &h.p));
            if !t.is_zero() {
                self.step(&Unimodular::translation(t));
            } else if h.r < h.p {
                self.step(&Unimodular::swap());
            } else {
                return Ok(());
            }
        }
        Err(Error::ReductionFailed)
    }

    /// Gauss descent on a floating-point covariant, mirrored exactly on the
    /// form. Returns whether any step was taken.
    fn float_descent(&mut self, [mut p, mut q, mut r]: [f64; 3]) -> Result<bool> {
        let mut changed = false;
        for _ in 0..MAX_STEPS {
            if p < 0.0 {
                (p, q, r) = (-p, -q, -r);
            }
            (q, r) = (q / p, r / p);
            p = 1.0;
            let t = -q / 2.0;
            if t.abs() > 0.5 + FLOAT_SLACK {
                let t = if (t.abs() - t.abs().trunc() - 0.5).abs() <= FLOAT_SLACK {
                    t.trunc()
                } else {
                    t.round()
                };
                let tb = BigInt::from_f64(t).ok_or(Error::ReductionFailed)?;
                self.step(&Unimodular::translation(tb));
                (q, r) = (2.0 * t + q, t * t + q * t + r);
                changed = true;
            } else if r < 1.0 - FLOAT_SLACK {
                self.step(&Unimodular::swap());
                (p, r) = (r, p);
                changed = true;
            } else {
                return Ok(changed);
            }
        }
        Err(Error::ReductionFailed)
    }

    /// Bounded breadth-first search around the current form for one that
    /// meets the bounds. Only reached if the descent stalls short of them.
    fn escalate(&mut self) -> Result<()> {
        let start = self.form.clone();
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([(start, Unimodular::identity(), 0usize)]);
        let generators = SEARCH_GENERATORS.map(|[a, b, c, d]| Unimodular::new(a, b, c, d).unwrap());
        while let Some((form, word, depth)) = queue.pop_front() {
            if satisfies_reduced_bounds(&form) {
                self.form = form;
                self.gamma = word.mul(&self.gamma);
                return Ok(());
            }
            if depth == ESCALATION_RADIUS {
                continue;
            }
            for g in &generators {
                let next = form.act(g);
                if seen.insert(next.clone()) {
                    queue.push_back((next, g.mul(&word), depth + 1));
                }
            }
        }
        Err(Error::ReductionFailed)
    }
}

/// Nearest integer to `n / d` (`d > 0`), halves rounded toward zero.
fn round_half_toward_zero(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    let twice: BigInt = 2 * r;
    match twice.cmp(d) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_negative() {
                q + 1
            } else {
                q
            }
        }
    }
}

/// Julia's covariant of a form with negative discriminant, as `[p, q, r]`.
fn julia_covariant(f: &BinaryCubicForm) -> [f64; 3] {
    if f.a().is_zero() {
        // Move a root away from infinity, then transport the covariant back.
        let pre = [(1, 1, 0, 1), (1, -1, 0, 1), (1, 2, 0, 1), (2, 1, 1, 1)]
            .into_iter()
            .map(|(a, b, c, d)| Unimodular::new(a, b, c, d).unwrap())
            .find(|g| !f.act(g).a().is_zero())
            .expect("a nonzero cubic vanishes on at most three lines");
        let q = julia_covariant(&f.act(&pre));
        return act_f64(q, &pre.inverse());
    }
    let [a, b3, c3, d] = f.polynomial_coefficients();
    let alpha = real_root(&a, &b3, &c3, &d);
    let (af, bf, cf) = (to_f64(&a), to_f64(&b3), to_f64(&c3));
    // f(t, 1) = a (t - alpha)(t^2 + s t + r)
    let s = bf / af + alpha;
    let r = cf / af + alpha * s;
    let re = -s / 2.0;
    let im = (4.0 * r - s * s).max(0.0).sqrt() / 2.0;
    let deriv_real = 3.0 * af * alpha * alpha + 2.0 * bf * alpha + cf;
    let (dr, di) = (
        3.0 * af * (re * re - im * im) + 2.0 * bf * re + cf,
        3.0 * af * 2.0 * re * im + 2.0 * bf * im,
    );
    let w0 = 1.0 / (deriv_real * deriv_real);
    let w1 = 1.0 / (dr * dr + di * di);
    let norm2 = re * re + im * im;
    [
        w0 + 2.0 * w1,
        -2.0 * alpha * w0 - 4.0 * w1 * re,
        alpha * alpha * w0 + 2.0 * w1 * norm2,
    ]
}

fn act_f64([p, q, r]: [f64; 3], g: &Unimodular) -> [f64; 3] {
    let [[m11, m12], [m21, m22]] = g.entries().clone().map(|row| row.map(|v| to_f64(&v)));
    [
        p * m11 * m11 + q * m11 * m12 + r * m12 * m12,
        2.0 * p * m11 * m21 + q * (m11 * m22 + m12 * m21) + 2.0 * r * m12 * m22,
        p * m21 * m21 + q * m21 * m22 + r * m22 * m22,
    ]
}

fn to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// The unique real root of `a t^3 + b t^2 + c t + d` (negative discriminant,
/// `a != 0`), by bisection on dyadic rationals with exact sign evaluation.
fn real_root(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> f64 {
    let sign_at = |num: &BigInt, den: &BigInt| -> Sign {
        let num2 = num * num;
        let den2 = den * den;
        (a * &num2 * num + b * &num2 * den + c * num * &den2 + d * &den2 * den).sign()
    };
    // Cauchy bound: every root has |t| < 1 + max(|b|, |c|, |d|) / |a|.
    let bound: BigInt = Integer::div_ceil(&b.abs().max(c.abs()).max(d.abs()), &a.abs()) + 1;
    let mut lo = -bound.clone();
    let mut hi = bound;
    let mut den = BigInt::one();
    let lo_sign = sign_at(&lo, &den);
    for _ in 0..4096 {
        lo *= 2;
        hi *= 2;
        den *= 2;
        let mid: BigInt = (&lo + &hi) / 2;
        match sign_at(&mid, &den) {
            Sign::NoSign => return dyadic_to_f64(&mid, &den),
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
        let width_bits = (&hi - &lo).bits();
        if width_bits + 60 <= den.bits().max(lo.bits()) {
            break;
        }
    }
    dyadic_to_f64(&((lo + hi) / 2), &den)
}

fn dyadic_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    let shift = num.bits().max(den.bits()).saturating_sub(62);
    let n = to_f64(&(num >> shift));
    let d = to_f64(&(den >> shift));
    if d == 0.0 {
        return to_f64(num) / to_f64(den);
    }
    n / d
}
