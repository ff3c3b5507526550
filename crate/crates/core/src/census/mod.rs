//! Brute-force census of integral points on `y^2 = x^3 + kB^2`.
//!
//! Searches are complete only inside the window `x <= x_bound`; an empty
//! record means no point was found there, not that none exists.

mod io;

pub use io::{merge_shards, read_jsonl, write_jsonl, write_summary_csv, CensusSummary};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    cubefull_from_factors, cubefull_part, floor_cbrt, gcd_parts, is_perfect_square, is_squarefree,
    split_mn_from_factors, SpfSieve,
};
use crate::forms::{is_reducible, BinaryCubicForm};
use crate::mordell::MordellPoint;
use crate::{Error, Result};

/// Largest supported `x_bound` and `B`, keeping `x^3` and `kB^2` well inside
/// `i128`.
pub const MAX_WINDOW: i128 = 1_000_000_000_000;
pub const MAX_ABS_K: i64 = 1_000_000_000;

/// Per-point data recomputable from `(x, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointAnnotation {
    pub g0: u64,
    pub g1: u64,
    pub reducible: bool,
}

impl PointAnnotation {
    pub fn for_point(p: &MordellPoint) -> Result<Self> {
        let parts = gcd_parts(p.x, p.b)?;
        Ok(PointAnnotation {
            g0: parts.g0,
            g1: parts.g1,
            reducible: is_reducible(&p.form()),
        })
    }
}

/// All points found on one curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub b: u64,
    /// Sorted by `x` ascending, then `y` descending.
    pub points: Vec<MordellPoint>,
    pub cube_free: bool,
    /// Parallel to `points`.
    pub annotations: Vec<PointAnnotation>,
}

/// Census over `B` in `b_start..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub k: i64,
    pub n: u64,
    pub b_start: u64,
    pub x_bound: i128,
    pub curve_count: u64,
    pub point_sum: u64,
    pub point_sum_cubefree: u64,
    pub records: Vec<CensusRecord>,
}

impl CensusReport {
    fn from_records(k: i64, b_start: u64, n: u64, x_bound: i128, records: Vec<CensusRecord>) -> Self {
        let curve_count = records.iter().filter(|r| !r.points.is_empty()).count() as u64;
        let point_sum = records.iter().map(|r| r.points.len() as u64).sum();
        let point_sum_cubefree = records
            .iter()
            .filter(|r| r.cube_free)
            .map(|r| r.points.len() as u64)
            .sum();
        CensusReport {
            k,
            n,
            b_start,
            x_bound,
            curve_count,
            point_sum,
            point_sum_cubefree,
            records,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = &MordellPoint> {
        self.records.iter().flat_map(|r| r.points.iter())
    }

    pub fn summary(&self) -> CensusSummary {
        CensusSummary {
            n: self.n,
            curve_count: self.curve_count,
            point_sum: self.point_sum,
            point_sum_cubefree: self.point_sum_cubefree,
        }
    }

    /// Re-derives the aggregates from the records.
    pub fn is_consistent(&self) -> bool {
        let again = CensusReport::from_records(self.k, self.b_start, self.n, self.x_bound, self.records.clone());
        again == *self
    }
}

/// Parameters of a census run over `B` in `b_start..=b_end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusConfig {
    pub k: i64,
    pub b_start: u64,
    pub b_end: u64,
    pub x_bound: i128,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub workers: usize,
}

impl CensusConfig {
    pub fn new(k: i64, n: u64, x_bound: i128) -> Self {
        CensusConfig {
            k,
            b_start: 1,
            b_end: n,
            x_bound,
            workers: 0,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_range(mut self, b_start: u64, b_end: u64) -> Self {
        self.b_start = b_start;
        self.b_end = b_end;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::ZeroK);
        }
        if self.k.unsigned_abs() > MAX_ABS_K as u64 {
            return Err(Error::OutOfRange("k"));
        }
        if self.b_start == 0 || self.b_end < self.b_start {
            return Err(Error::EmptyRange);
        }
        if self.b_end as i128 > MAX_WINDOW || self.x_bound > MAX_WINDOW {
            return Err(Error::OutOfRange("B or x_bound"));
        }
        if self.x_bound < 1 {
            return Err(Error::OutOfRange("x_bound"));
        }
        Ok(())
    }

    /// Runs the census. The output does not depend on `workers`.
    pub fn run(&self) -> Result<CensusReport> {
        self.validate()?;
        let shards = shard_ranges(self.b_start, self.b_end, 4 * self.workers.max(rayon::current_num_threads()));
        let k = self.k;
        let x_bound = self.x_bound;
        let work = || -> Result<Vec<CensusRecord>> {
            let parts: Vec<Result<Vec<CensusRecord>>> = shards
                .par_iter()
                .map(|&(lo, hi)| census_shard(k, lo, hi, x_bound))
                .collect();
            let mut records = Vec::with_capacity((self.b_end - self.b_start + 1) as usize);
            for part in parts {
                records.extend(part?);
            }
            Ok(records)
        };
        let records = if self.workers == 0 {
            work()?
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .map_err(|_| Error::OutOfRange("workers"))?
                .install(work)?
        };
        Ok(CensusReport::from_records(k, self.b_start, self.b_end, x_bound, records))
    }
}

/// Splits `lo..=hi` into at most `pieces` contiguous ranges of roughly equal
/// `B^2` mass, which tracks the cost of the large-`x` part of the sweep.
fn shard_ranges(lo: u64, hi: u64, pieces: usize) -> Vec<(u64, u64)> {
    let pieces = pieces.max(1) as u64;
    let (l2, h2) = ((lo as f64).powi(2), (hi as f64).powi(2));
    let mut out = Vec::new();
    let mut start = lo;
    for i in 1..=pieces {
        let end = if i == pieces {
            hi
        } else {
            ((l2 + (h2 - l2) * i as f64 / pieces as f64).sqrt() as u64).clamp(start, hi)
        };
        if end >= start {
            out.push((start, end));
            start = end + 1;
        }
        if start > hi {
            break;
        }
    }
    out
}

/// Smallest integer `r >= 0` with `r^2 >= n`, for `n >= 0`.
fn ceil_sqrt(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let r = num_integer::Roots::sqrt(&(n as u128)) as i128;
    if r * r == n {
        r
    } else {
        r + 1
    }
}

fn floor_sqrt(n: i128) -> i128 {
    num_integer::Roots::sqrt(&(n as u128)) as i128
}

/// Smallest `x` with `x^3 + k b^2 >= 0`.
fn x_min(k: i64, b: u64) -> i128 {
    let v = k.unsigned_abs() as u128 * b as u128 * b as u128;
    let r = floor_cbrt(v) as i128;
    if k > 0 {
        -r
    } else if r * r * r == v as i128 {
        r
    } else {
        r + 1
    }
}

/// Points with `x_min <= x <= x_bound` on the single curve `E_B`, by direct
/// scan over `x`.
pub fn enumerate_points(k: i64, b: u64, x_bound: i128) -> Result<Vec<MordellPoint>> {
    CensusConfig::new(k, b, x_bound).with_range(b, b).validate()?;
    let kb2 = k as i128 * b as i128 * b as i128;
    let mut out = Vec::new();
    for x in x_min(k, b)..=x_bound {
        if let Some(y) = is_perfect_square(&(x * x * x + kb2)) {
            out.push(MordellPoint { k, b, x, y });
            if y != 0 {
                out.push(MordellPoint { k, b, x, y: -y });
            }
        }
    }
    Ok(out)
}

/// Finds every point with `x <= x_bound` on all curves `lo <= B <= hi` in a
/// single sweep over `x`. At each `x` it scans whichever is shorter: the
/// admissible `B` (testing `x^3 + kB^2` for squareness) or the admissible
/// `y` (testing `(y^2 - x^3) / k` for being a square `B^2`).
pub(crate) fn sweep_points(k: i64, lo: u64, hi: u64, x_bound: i128) -> Vec<Vec<(i128, i128)>> {
    let kk = k as i128;
    let (lo_i, hi_i) = (lo as i128, hi as i128);
    let mut found: Vec<Vec<(i128, i128)>> = vec![Vec::new(); (hi - lo + 1) as usize];
    let x_start = if k > 0 { x_min(k, hi) } else { x_min(k, lo) };
    let mut push = |b: i128, x: i128, y: i128| {
        let slot = &mut found[(b - lo_i) as usize];
        slot.push((x, y));
        if y != 0 {
            slot.push((x, -y));
        }
    };
    for x in x_start..=x_bound {
        let cube = x * x * x;
        let (b_min, b_max) = if k > 0 {
            let b_min = if cube >= 0 {
                lo_i
            } else {
                lo_i.max(ceil_sqrt((-cube + kk - 1) / kk))
            };
            (b_min, hi_i)
        } else {
            (lo_i, hi_i.min(floor_sqrt(cube / -kk)))
        };
        if b_min > b_max {
            continue;
        }
        let (v_lo, v_hi) = if k > 0 {
            (cube + kk * b_min * b_min, cube + kk * b_max * b_max)
        } else {
            (cube + kk * b_max * b_max, cube + kk * b_min * b_min)
        };
        let (y_lo, y_hi) = (ceil_sqrt(v_lo), floor_sqrt(v_hi));
        if y_lo > y_hi {
            continue;
        }
        if b_max - b_min <= y_hi - y_lo {
            for b in b_min..=b_max {
                if let Some(y) = is_perfect_square(&(cube + kk * b * b)) {
                    push(b, x, y);
                }
            }
        } else {
            for y in y_lo..=y_hi {
                let t = y * y - cube;
                if t % kk != 0 {
                    continue;
                }
                if let Some(b) = is_perfect_square(&(t / kk)) {
                    if b >= b_min && b <= b_max {
                        push(b, x, y);
                    }
                }
            }
        }
    }
    for pts in &mut found {
        pts.sort_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)));
    }
    found
}

fn census_shard(k: i64, lo: u64, hi: u64, x_bound: i128) -> Result<Vec<CensusRecord>> {
    sweep_points(k, lo, hi, x_bound)
        .into_iter()
        .zip(lo..=hi)
        .map(|(pts, b)| {
            let points = pts
                .into_iter()
                .map(|(x, y)| MordellPoint::new(k, b, x, y))
                .collect::<Result<Vec<_>>>()?;
            let annotations = points
                .iter()
                .map(PointAnnotation::for_point)
                .collect::<Result<Vec<_>>>()?;
            Ok(CensusRecord {
                b,
                points,
                cube_free: cubefull_part(b) == 1,
                annotations,
            })
        })
        .collect()
}

/// One record per `B` in `1..=n`.
pub fn curve_census(k: i64, n: u64, x_bound: i128) -> Result<CensusReport> {
    CensusConfig::new(k, n, x_bound).run()
}

/// Number of points found on cube-free curves with `B <= n`.
pub fn cubefree_point_sum(k: i64, n: u64, x_bound: i128) -> Result<u64> {
    Ok(curve_census(k, n, x_bound)?.point_sum_cubefree)
}

/// `#{1 <= B <= n : cube-full part of B >= big_k}`.
pub fn count_large_cubefull(n: u32, big_k: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let sieve = SpfSieve::new(n);
    (1..=n)
        .filter(|&b| {
            let part = cubefull_from_factors(sieve.factorize(b).into_iter().map(|(p, e)| (p as u64, e)));
            part >= big_k
        })
        .count() as u64
}

/// A reducible form `x(x^2 + 3b xy + 3c y^2)` of discriminant `-4kB^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducibleTriple {
    #[serde(rename = "B")]
    pub big_b: u64,
    pub b: i64,
    pub c: i64,
}

impl ReducibleTriple {
    pub fn form(&self) -> BinaryCubicForm {
        BinaryCubicForm::new(1, self.b, self.c, 0).expect("leading coefficient is 1")
    }
}

/// All `(b, c, B)` with `B <= n` solving `12c = (3b)^2 + 3k t^2` for
/// `t = 2B/c`, sorted by `(B, b, c)`. Requires squarefree `k`.
pub fn reducible_census(k: i64, n: u64) -> Result<Vec<ReducibleTriple>> {
    if !is_squarefree(k) {
        return Err(Error::NotSquarefree(k));
    }
    if k.unsigned_abs() > MAX_ABS_K as u64 || n as i128 > MAX_WINDOW {
        return Err(Error::OutOfRange("k or N"));
    }
    let mut out = Vec::new();
    let (kk, nn) = (k as i128, n as i128);
    // |c| >= 1 and B = |t c| / 2 <= n give |t| <= 2n. For k > 0, c >= k t^2 / 4
    // also gives |t|^3 <= 8n / k.
    let t_max = if k > 0 {
        floor_cbrt((8 * nn / kk) as u128) as i128 + 1
    } else {
        2 * nn
    };
    for t in (-t_max..=t_max).filter(|&t| t != 0) {
        let at = t.abs();
        // 12|c| <= 24n/|t| bounds (3b)^2 around -3kt^2.
        let spread = 24 * nn / at;
        let centre = -3 * kk * t * t;
        let (sq_lo, sq_hi) = ((centre - spread).max(0), centre + spread);
        if sq_hi < 0 {
            continue;
        }
        let b_lo = (ceil_sqrt(sq_lo) + 2) / 3;
        let b_hi = floor_sqrt(sq_hi) / 3;
        for b_abs in b_lo.max(0)..=b_hi {
            for b in if b_abs == 0 { vec![0] } else { vec![b_abs, -b_abs] } {
                let num = 9 * b * b + 3 * kk * t * t;
                if num % 12 != 0 {
                    continue;
                }
                let c = num / 12;
                if c == 0 || (t * c) % 2 != 0 {
                    continue;
                }
                let big_b = t * c / 2;
                if big_b < 1 || big_b > nn {
                    continue;
                }
                let triple = ReducibleTriple {
                    big_b: big_b as u64,
                    b: b as i64,
                    c: c as i64,
                };
                let expected = -4 * BigInt::from(k) * BigInt::from(big_b) * BigInt::from(big_b);
                assert_eq!(triple.form().discriminant(), expected);
                out.push(triple);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `#{1 <= B <= n : B is its own m-part}`, i.e. `B` has no odd prime `p`
/// with `(k/p) = -1` to an odd power.
pub fn count_m_integers(k: i64, n: u32) -> u64 {
    if n == 0 {
        return 0;
    }
    let sieve = SpfSieve::new(n);
    (1..=n)
        .filter(|&b| {
            let factors = sieve.factorize(b).into_iter().map(|(p, e)| (p as u64, e));
            split_mn_from_factors(factors, k).n == 1
        })
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(pts: &[MordellPoint]) -> Vec<(i128, i128)> {
        pts.iter().map(|p| (p.x, p.y)).collect()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(coords(&enumerate_points(2, 1, 100).unwrap()), vec![(-1, 1), (-1, -1)]);
        assert_eq!(coords(&enumerate_points(-2, 1, 100).unwrap()), vec![(3, 5), (3, -5)]);
        let pts = coords(&enumerate_points(2, 5, 100).unwrap());
        assert!(pts.contains(&(-1, 7)) && pts.contains(&(-1, -7)));
    }

    #[test]
    fn x_min_is_tight() {
        for k in [-7i64, -2, -1, 1, 2, 5] {
            for b in 1..50u64 {
                let m = x_min(k, b);
                let kb2 = k as i128 * (b * b) as i128;
                assert!(m * m * m + kb2 >= 0);
                assert!((m - 1).pow(3) + kb2 < 0);
            }
        }
    }

    #[test]
    fn sweep_matches_direct_enumeration() {
        for k in [-5i64, -2, -1, 1, 2, 3] {
            let swept = sweep_points(k, 1, 60, 3000);
            for (i, pts) in swept.iter().enumerate() {
                let b = i as u64 + 1;
                assert_eq!(pts, &coords(&enumerate_points(k, b, 3000).unwrap()), "k = {k}, B = {b}");
            }
        }
    }

    #[test]
    fn shards_cover_the_range() {
        for (lo, hi, n) in [(1, 1, 8), (1, 7, 3), (5, 1000, 64), (1, 100_000, 40)] {
            let s = shard_ranges(lo, hi, n);
            assert_eq!(s.first().unwrap().0, lo);
            assert_eq!(s.last().unwrap().1, hi);
            for w in s.windows(2) {
                assert_eq!(w[0].1 + 1, w[1].0);
            }
        }
    }

    #[test]
    fn small_census() {
        let r = curve_census(2, 7, 10_000).unwrap();
        assert_eq!(r.records.len(), 7);
        let hit: Vec<u64> = r.records.iter().filter(|r| !r.points.is_empty()).map(|r| r.b).collect();
        for b in [1, 2, 3, 5, 6, 7] {
            assert!(hit.contains(&b), "B = {b}");
        }
        let two = &r.records[1];
        for p in [(-2, 0), (1, 3), (1, -3), (2, 4), (2, -4), (46, 312), (46, -312)] {
            assert!(coords(&two.points).contains(&p));
        }
        assert!(r.is_consistent());

        let one = curve_census(2, 1, 100).unwrap();
        assert_eq!(one.curve_count, 1);
        assert!(matches!(curve_census(2, 0, 100), Err(Error::EmptyRange)));
    }

    #[test]
    fn cubefree_sum_examples() {
        assert_eq!(cubefree_point_sum(2, 1, 100).unwrap(), 2);
        let r = curve_census(2, 10, 10_000).unwrap();
        let eight = r.records[7].points.len() as u64;
        assert!(!r.records[7].cube_free);
        assert_eq!(r.point_sum_cubefree, r.point_sum - eight);
    }

    #[test]
    fn cubefull_count_examples() {
        assert_eq!(count_large_cubefull(100, 8), 15);
        assert_eq!(count_large_cubefull(100, 1), 100);
        assert_eq!(count_large_cubefull(10, 1000), 0);
    }

    #[test]
    fn reducible_census_examples() {
        let r = reducible_census(2, 10).unwrap();
        assert!(r.contains(&ReducibleTriple { big_b: 2, b: 0, c: 2 }));
        let r = reducible_census(1, 1).unwrap();
        assert!(r.contains(&ReducibleTriple { big_b: 1, b: 0, c: 1 }));
        assert!(reducible_census(2, 0).unwrap().is_empty());
        assert!(matches!(reducible_census(12, 10), Err(Error::NotSquarefree(12))));
    }

    #[test]
    fn reducible_census_matches_brute_force() {
        for k in [-7i64, -3, -2, -1, 1, 2, 5] {
            let n = 300u64;
            let fast = reducible_census(k, n).unwrap();
            let mut slow = Vec::new();
            for big_b in 1..=n as i64 {
                let target = -4 * k * big_b * big_b;
                // c | 2B, and b is bounded by |c^2 (3b^2 - 4c)| = |target|
                for c in (-2 * big_b..=2 * big_b).filter(|&c| c != 0 && (2 * big_b) % c == 0) {
                    let b_max = ((target.abs() / (c * c) + 4 * c.abs()) / 3) as f64;
                    let b_max = b_max.sqrt() as i64 + 1;
                    for b in -b_max..=b_max {
                        if c * c * (3 * b * b - 4 * c) == target {
                            slow.push(ReducibleTriple { big_b: big_b as u64, b, c });
                        }
                    }
                }
            }
            slow.sort();
            assert_eq!(fast, slow, "k = {k}");
        }
    }

    #[test]
    fn m_count_examples() {
        assert_eq!(count_m_integers(2, 10), 6);
        assert_eq!(count_m_integers(2, 1), 1);
    }
}
