//! Reproducible experiment harness: solves instance families with every
//! algorithm, compares against the lower bound, the recursion bound and
//! (when the instance is small enough) the exhaustive oracle, and emits CSV.
//!
//! Randomness comes from a seeded ChaCha8 stream, so a (family, seed) pair
//! pins the instance list on every platform. Wall times are informational
//! and excluded from the determinism guarantee; CSV omits them unless asked.

use crate::geom::SirtpInstance;
use crate::oracle::{self, Budget};
use crate::solver;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::time::Instant;

/// Instance families under comparison.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `(p, p+1)` for `p` in the inclusive range: the Euclidean worst case.
    Successor { p_min: u64, p_max: u64 },
    /// `n` uniform coprime pairs with `2 <= p < q <= p_max`.
    CoprimeRandom { n: usize, p_max: u64, seed: u64 },
    /// `n` pairs with `p < q < (1 + eps) * p`, `p <= p_max`.
    RatioBand { eps: f64, n: usize, p_max: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub p: u64,
    pub q: u64,
    pub lower_bound: u64,
    pub euclid_size: u128,
    pub algsirtp_size: u128,
    pub trace_depth: usize,
    pub lemma_bound: f64,
    pub oracle_min: Option<u128>,
    pub euclid_micros: u128,
    pub algsirtp_micros: u128,
    pub oracle_micros: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct BenchOptions {
    /// Oracle column is filled only where `p*q` stays at or below this.
    pub oracle_cap: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { oracle_cap: 36 }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The instance list of a family, in output order.
pub fn family_instances(family: &Family) -> Vec<SirtpInstance> {
    match *family {
        Family::Successor { p_min, p_max } => {
            (p_min..=p_max).map(|p| SirtpInstance::new(p, p + 1)).collect()
        }
        Family::CoprimeRandom { n, p_max, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let p = rng.gen_range(2..=p_max.saturating_sub(1).max(2));
                let q = rng.gen_range(p + 1..=p_max.max(p + 1));
                if gcd(p, q) == 1 {
                    out.push(SirtpInstance::new(p, q));
                }
            }
            out
        }
        Family::RatioBand { eps, n, p_max, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let p = rng.gen_range(2..=p_max);
                // Largest q with q < (1+eps)*p, conservatively in integers.
                let q_hi = ((p as f64) * (1.0 + eps)).ceil() as u64 - 1;
                if q_hi <= p {
                    continue;
                }
                let q = rng.gen_range(p + 1..=q_hi);
                if (q as f64) < (p as f64) * (1.0 + eps) {
                    out.push(SirtpInstance::new(p, q));
                }
            }
            out
        }
    }
}

pub fn run_family(family: &Family, options: &BenchOptions) -> Vec<BenchRecord> {
    family_instances(family).iter().map(|&inst| run_one(inst, options)).collect()
}

fn run_one(inst: SirtpInstance, options: &BenchOptions) -> BenchRecord {
    let (p, q) = inst.normalized();

    let t0 = Instant::now();
    let euclid_size = solver::euclid_sirtp_size(inst);
    let euclid_micros = t0.elapsed().as_micros();

    let t1 = Instant::now();
    let (algsirtp_size, trace) = solver::algsirtp_size(inst);
    let algsirtp_micros = t1.elapsed().as_micros();

    let t2 = Instant::now();
    let oracle_min = if (p as u128) * (q as u128) <= options.oracle_cap as u128 {
        let budget = Budget { max_area: options.oracle_cap, ..Budget::default() };
        oracle::min_sirtp(inst, &budget).ok().filter(|r| r.exhausted).map(|r| r.min_size)
    } else {
        None
    };
    let oracle_micros = t2.elapsed().as_micros();

    BenchRecord {
        p,
        q,
        lower_bound: solver::lower_bound(inst),
        euclid_size,
        algsirtp_size,
        trace_depth: trace.depth(),
        lemma_bound: solver::lemma_bound(inst, trace.depth()),
        oracle_min,
        euclid_micros,
        algsirtp_micros,
        oracle_micros,
    }
}

/// CSV with a stable column order, LF endings, unquoted integers and the
/// real-valued bound at 4 decimals. Timing columns (the last three) are
/// opt-in because they vary run to run.
pub fn emit_csv(records: &[BenchRecord], include_times: bool) -> String {
    let mut out = String::new();
    out.push_str("p,q,lowerBound,euclidSize,algsirtpSize,traceDepth,lemmaBound,oracleMin");
    if include_times {
        out.push_str(",euclidMicros,algsirtpMicros,oracleMicros");
    }
    out.push('\n');
    for r in records {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{:.4},{}",
            r.p,
            r.q,
            r.lower_bound,
            r.euclid_size,
            r.algsirtp_size,
            r.trace_depth,
            r.lemma_bound,
            r.oracle_min.map(|v| v.to_string()).unwrap_or_default()
        );
        if include_times {
            let _ = write!(out, ",{},{},{}", r.euclid_micros, r.algsirtp_micros, r.oracle_micros);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn successor_family_records() {
        let records = run_family(&Family::Successor { p_min: 2, p_max: 5 }, &Default::default());
        assert_eq!(records.len(), 4);
        for r in &records {
            assert_eq!(r.q, r.p + 1);
            assert_eq!(r.euclid_size, (r.p + 1) as u128);
            assert!(r.lower_bound as u128 <= r.algsirtp_size);
            assert!((r.algsirtp_size as f64) <= r.lemma_bound);
        }
        let two_three = &records[0];
        assert_eq!(two_three.algsirtp_size, 3);
        assert_eq!(two_three.oracle_min, Some(3));
    }

    #[test]
    fn ratio_band_constraint() {
        let fam = Family::RatioBand { eps: 0.5, n: 1, p_max: 100, seed: 1 };
        let records = run_family(&fam, &Default::default());
        assert_eq!(records.len(), 1);
        let r = &records[0];
        assert!(r.p < r.q);
        assert!((r.q as f64) < 1.5 * r.p as f64);
    }

    #[test]
    fn csv_shape_and_determinism() {
        assert_eq!(
            emit_csv(&[], false),
            "p,q,lowerBound,euclidSize,algsirtpSize,traceDepth,lemmaBound,oracleMin\n"
        );
        let fam = Family::Successor { p_min: 2, p_max: 5 };
        let opts = BenchOptions::default();
        let a = emit_csv(&run_family(&fam, &opts), false);
        let b = emit_csv(&run_family(&fam, &opts), false);
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 5);
        assert!(!a.contains('\r'));
    }

    #[test]
    fn coprime_family_deterministic() {
        let fam = Family::CoprimeRandom { n: 5, p_max: 50, seed: 7 };
        let a = family_instances(&fam);
        let b = family_instances(&fam);
        assert_eq!(a, b);
        for inst in &a {
            let (p, q) = inst.normalized();
            assert_eq!(gcd(p, q), 1);
        }
    }
}
