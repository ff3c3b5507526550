//! Integer factorization: sieve trial division, deterministic Miller-Rabin
//! and Pollard-Brent rho.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Default bound for the trial-division prime table.
pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Trial division up to a fixed prime bound, then Miller-Rabin and
/// Pollard-rho on whatever cofactor remains.
#[derive(Debug, Clone)]
pub struct Factorizer {
    primes: Vec<u64>,
    bound: u64,
}

impl Factorizer {
    pub fn with_sieve_bound(bound: u64) -> Self {
        let bound = bound.max(2);
        Factorizer {
            primes: primes_up_to(bound),
            bound,
        }
    }

    /// Shared instance using [`DEFAULT_SIEVE_BOUND`].
    pub fn global() -> &'static Factorizer {
        static GLOBAL: OnceLock<Factorizer> = OnceLock::new();
        GLOBAL.get_or_init(|| Factorizer::with_sieve_bound(DEFAULT_SIEVE_BOUND))
    }

    pub fn sieve_bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.bound {
            return n >= 2 && self.primes.binary_search(&n).is_ok();
        }
        is_prime_u64(n)
    }

    /// Prime factorization of `n` as `(prime, exponent)` pairs in increasing
    /// prime order. `factorize(1)` and `factorize(0)` are empty.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        if n < 2 {
            return out;
        }
        for &p in &self.primes {
            if p.saturating_mul(p).saturating_mul(p) > n {
                break;
            }
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
        }
        if n > 1 {
            let mut big = Vec::new();
            split_cofactor(n, &mut big);
            big.sort_unstable();
            for p in big {
                match out.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => out.push((p, 1)),
                }
            }
            out.sort_unstable();
        }
        out
    }
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn split_cofactor(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_cofactor(d, out);
    split_cofactor(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns a nontrivial divisor of the composite `n`.
fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    if let Some(r) = exact_root(n) {
        return r;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho exhausts c only for prime input")
}

fn exact_root(n: u64) -> Option<u64> {
    use num_integer::Roots;
    let s = n.sqrt();
    if s * s == n {
        return Some(s);
    }
    let c = n.cbrt();
    if c * c * c == n {
        return Some(c);
    }
    None
}

/// Factorization of an arbitrary-size natural number. Inputs that fit in
/// 64 bits go through [`Factorizer::factorize`]; larger ones use trial
/// division, a strong-probable-prime test and rho over `BigUint`.
pub fn factorize_big(n: &BigUint) -> Vec<(BigUint, u32)> {
    if let Some(small) = n.to_u64() {
        return Factorizer::global()
            .factorize(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut n = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for &p in Factorizer::global().primes().iter().take(10_000) {
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    let mut rest = Vec::new();
    split_big(n, &mut rest);
    rest.sort();
    for p in rest {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort();
    out
}

fn split_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        for (p, e) in Factorizer::global().factorize(small) {
            out.extend(std::iter::repeat_n(BigUint::from(p), e as usize));
        }
        return;
    }
    if is_probable_prime_big(&n) {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    split_big(&n / &d, out);
    split_big(d, out);
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in MR_BASES.iter().chain([41u64, 43, 47, 53, 59, 61, 67, 71].iter()) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_big(n: &BigUint) -> BigUint {
    let s = n.sqrt();
    if &(&s * &s) == n {
        return s;
    }
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            let g = diff.gcd(n);
            if g.is_one() {
                continue;
            }
            if &g != n {
                return g;
            }
            break;
        }
    }
    unreachable!("rho exhausts c only for prime input")
}

/// Smallest-prime-factor table for `1..=limit`, used by the counting
/// harnesses that factor every integer in a range.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: u32) -> Self {
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SpfSieve { spf }
    }

    pub fn limit(&self) -> u32 {
        (self.spf.len() - 1) as u32
    }

    /// Factorization of `n <= limit`.
    pub fn factorize(&self, mut n: u32) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize];
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizes_across_the_sieve_bound() {
        let f = Factorizer::with_sieve_bound(100);
        assert_eq!(f.factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        // 1_000_003 and 999_983 are both prime and above the bound
        assert_eq!(
            f.factorize(1_000_003 * 999_983),
            vec![(999_983, 1), (1_000_003, 1)]
        );
        assert_eq!(f.factorize(101 * 101 * 7), vec![(7, 1), (101, 2)]);
        assert_eq!(f.factorize(1), vec![]);
    }

    #[test]
    fn large_prime_powers_and_semiprimes() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        assert_eq!(Factorizer::global().factorize(p * 3), vec![(3, 1), (p, 1)]);
        let q = 2_147_483_647u64;
        assert_eq!(Factorizer::global().factorize(q * q), vec![(q, 2)]);
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn big_factorization_matches_product() {
        let n = BigUint::from(18_446_744_073_709_551_557u64) * BigUint::from(1_000_003u64) * 12u32;
        let parts = factorize_big(&n);
        let back = parts
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        assert_eq!(back, n);
        assert_eq!(parts.len(), 4);
    }

    #[test]
    fn spf_sieve_agrees_with_trial_division() {
        let sieve = SpfSieve::new(5000);
        for n in 1..=5000u32 {
            let a: Vec<(u64, u32)> = sieve
                .factorize(n)
                .into_iter()
                .map(|(p, e)| (p as u64, e))
                .collect();
            assert_eq!(a, Factorizer::global().factorize(n as u64), "n = {n}");
        }
    }
}
