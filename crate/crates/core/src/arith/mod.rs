//! Exact integer utilities: valuations, Legendre symbols, perfect squares
//! and the decompositions of `B` used when counting points.

mod factor;

pub use factor::{factorize_big, is_prime_u64, Factorizer, SpfSieve, DEFAULT_SIEVE_BOUND};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Factorization of `n` with the shared default [`Factorizer`].
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    Factorizer::global().factorize(n)
}

pub fn is_prime(n: u64) -> bool {
    Factorizer::global().is_prime(n)
}

/// Exponent of the prime `p` in `n`.
pub fn valuation(n: i128, p: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ValuationOfZero);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(valuation_unchecked(n.unsigned_abs(), p as u128))
}

fn valuation_unchecked(mut n: u128, p: u128) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Legendre symbol `(a / p)` for an odd prime `p`, computed with the Jacobi
/// reciprocity algorithm.
pub fn legendre(a: i128, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(jacobi(a.rem_euclid(p as i128) as u64, p))
}

/// Jacobi symbol `(a / n)` for odd `n > 0`.
pub(crate) fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let (mut a, mut n) = (a % n, n);
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Exact square-root extraction.
pub trait PerfectSquare: Sized {
    /// `Some(r)` with `r >= 0` and `r * r == self`, or `None`.
    fn perfect_sqrt(&self) -> Option<Self>;
}

macro_rules! perfect_square_unsigned {
    ($($t:ty),*) => {$(
        impl PerfectSquare for $t {
            fn perfect_sqrt(&self) -> Option<Self> {
                // squares are 0, 1, 4 or 9 mod 16
                if (0x0213u32 >> (*self & 15) as u32) & 1 == 0 {
                    return None;
                }
                let r = Roots::sqrt(self);
                (r * r == *self).then_some(r)
            }
        }
    )*};
}

macro_rules! perfect_square_signed {
    ($($t:ty => $u:ty),*) => {$(
        impl PerfectSquare for $t {
            fn perfect_sqrt(&self) -> Option<Self> {
                if *self < 0 {
                    return None;
                }
                (*self as $u).perfect_sqrt().map(|r| r as $t)
            }
        }
    )*};
}

perfect_square_unsigned!(u32, u64, u128);
perfect_square_signed!(i32 => u32, i64 => u64, i128 => u128);

impl PerfectSquare for BigUint {
    fn perfect_sqrt(&self) -> Option<Self> {
        let r = Roots::sqrt(self);
        (&r * &r == *self).then_some(r)
    }
}

impl PerfectSquare for BigInt {
    fn perfect_sqrt(&self) -> Option<Self> {
        match self.sign() {
            Sign::Minus => None,
            _ => self
                .magnitude()
                .perfect_sqrt()
                .map(|r| BigInt::from_biguint(Sign::Plus, r)),
        }
    }
}

/// Returns `r` with `r^2 = n` when `n` is a perfect square, `None` otherwise
/// (including every negative `n`).
pub fn is_perfect_square<T: PerfectSquare>(n: &T) -> Option<T> {
    n.perfect_sqrt()
}

/// `n` is a perfect square (of an integer, so `n >= 0`).
pub fn is_square_i64(n: i64) -> bool {
    n.perfect_sqrt().is_some()
}

/// `|k|` has no repeated prime factor. `k = 0` is not squarefree.
pub fn is_squarefree(k: i64) -> bool {
    k != 0 && factorize(k.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Decomposition of the part of `B` shared with `c`.
///
/// `g0 = gcd(c, B)`, `g1 = prod p^max(v_p(B) - v_p(c), 0)` and
/// `g = prod p^v_p(B)`, all products over `p | gcd(c, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GcdParts {
    pub g0: u64,
    pub g1: u64,
    pub g: u64,
}

/// Computes [`GcdParts`] for `c` and `B`, with `gcd(0, B) = B`.
pub fn gcd_parts(c: i128, b: u64) -> Result<GcdParts> {
    if b == 0 {
        return Err(Error::NonPositiveB);
    }
    if c == 0 {
        return Ok(GcdParts { g0: b, g1: 1, g: b });
    }
    let g0 = (c.unsigned_abs()).gcd(&(b as u128)) as u64;
    let (mut g1, mut g) = (1u64, 1u64);
    for (p, _) in factorize(g0) {
        let vb = valuation_unchecked(b as u128, p as u128);
        let vc = valuation_unchecked(c.unsigned_abs(), p as u128);
        g *= p.pow(vb);
        if vb > vc {
            g1 *= p.pow(vb - vc);
        }
    }
    debug_assert_eq!(g, g0 * g1);
    Ok(GcdParts { g0, g1, g })
}

/// `prod_{p^3 | B} p^v_p(B)`; `B` is cube-free exactly when this is 1.
pub fn cubefull_part(b: u64) -> u64 {
    cubefull_from_factors(factorize(b).into_iter())
}

pub(crate) fn cubefull_from_factors(factors: impl Iterator<Item = (u64, u32)>) -> u64 {
    factors
        .filter(|&(_, e)| e >= 3)
        .map(|(p, e)| p.pow(e))
        .product()
}

/// The factorization `B = m * n` separating primes by how they split
/// relative to `k`.
///
/// `n` is the product of odd primes `p` with `(k/p) = -1` and odd
/// `v_p(B)`, each to the first power; `m` is everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MNSplit {
    pub m: u64,
    pub n: u64,
}

pub fn split_mn(b: u64, k: i64) -> MNSplit {
    split_mn_from_factors(factorize(b).into_iter(), k)
}

pub(crate) fn split_mn_from_factors(factors: impl Iterator<Item = (u64, u32)>, k: i64) -> MNSplit {
    let (mut m, mut n) = (1u64, 1u64);
    for (p, e) in factors {
        if p == 2 || k % p as i64 == 0 {
            m *= p.pow(e);
            continue;
        }
        match jacobi(k.rem_euclid(p as i64) as u64, p) {
            1 => m *= p.pow(e),
            _ => {
                m *= p.pow(e - e % 2);
                if e % 2 == 1 {
                    n *= p;
                }
            }
        }
    }
    MNSplit { m, n }
}

/// `floor(cbrt(n))` for `n >= 0`.
pub(crate) fn floor_cbrt(n: u128) -> u128 {
    Roots::cbrt(&n)
}
