//! Square-multiplication timing runs with CSV output.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Result};
use kmul::{Limb, Multiplier, Radix, Registry};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alloc::count_allocations;

pub const CSV_HEADER: &str = "n,algo,reps,total_ns,avg_ns,peak_scratch_limbs,heap_allocs";

/// Default `n^2 * reps` budget per length.
pub const DEFAULT_REPS_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub algo: String,
    pub reps: u64,
    pub total_ns: u128,
    pub avg_ns: u128,
    pub peak_scratch_limbs: usize,
    pub heap_allocs: u64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub lengths: Vec<usize>,
    pub algos: Vec<String>,
    pub radix: Radix,
    pub threshold: usize,
    pub seed: u64,
    pub reps_budget: u64,
}

impl BenchConfig {
    /// Timed repetitions at length `n`; non-increasing in `n`.
    pub fn reps(&self, n: usize) -> u64 {
        let sq = (n as u64).saturating_mul(n as u64).max(1);
        (self.reps_budget / sq).max(4)
    }
}

/// `min, min*factor, ...` up to `max`, always ending at `max`.
pub fn geometric_lengths(min: usize, max: usize, factor: f64) -> Result<Vec<usize>> {
    if min == 0 || min > max {
        bail!("need 1 <= min <= max, got {min}..{max}");
    }
    if factor.is_nan() || factor <= 1.0 {
        bail!("geometric factor must exceed 1, got {factor}");
    }
    let mut out = Vec::new();
    let mut x = min as f64;
    while (x.round() as usize) < max {
        let n = x.round() as usize;
        if out.last() != Some(&n) {
            out.push(n);
        }
        x *= factor;
    }
    out.push(max);
    Ok(out)
}

pub fn arithmetic_lengths(min: usize, max: usize, step: usize) -> Result<Vec<usize>> {
    if min == 0 || min > max || step == 0 {
        bail!("need 1 <= min <= max and step >= 1, got {min}..{max} step {step}");
    }
    Ok((min..=max).step_by(step).collect())
}

// SB, KS, KR first, anything else after in name order.
fn algo_rank(name: &str) -> (usize, String) {
    let key = name.to_ascii_lowercase();
    let rank = ["sb", "ks", "kr"].iter().position(|&k| k == key).unwrap_or(3);
    (rank, key)
}

fn random_operand(rng: &mut ChaCha8Rng, radix: Radix, n: usize) -> Vec<Limb> {
    (0..n).map(|_| rng.gen_range(0..radix.get()) as Limb).collect()
}

/// Times one algorithm at one length on a fixed operand pair.
pub fn time_one(m: &dyn Multiplier, radix: Radix, a: &[Limb], b: &[Limb], reps: u64) -> BenchRecord {
    let mut d = vec![0; a.len() + b.len()];
    let stats = m.multiply(radix, &mut d, a, b);
    let (total_ns, heap_allocs) = count_allocations(|| {
        let start = Instant::now();
        for _ in 0..reps {
            m.multiply(radix, black_box(&mut d), black_box(a), black_box(b));
        }
        start.elapsed().as_nanos()
    });
    black_box(&d);
    BenchRecord {
        n: a.len(),
        algo: m.label().to_string(),
        reps,
        total_ns,
        avg_ns: total_ns / reps as u128,
        peak_scratch_limbs: stats.peak_scratch_limbs,
        heap_allocs,
    }
}

/// One record per (length, algorithm), sorted by length and then SB, KS, KR.
pub fn run(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let registry = Registry::with_builtins(config.threshold)?;
    let mut algos = config.algos.clone();
    algos.sort_by_key(|a| algo_rank(a));
    algos.dedup_by_key(|a| a.to_ascii_lowercase());
    let strategies = algos.iter().map(|a| registry.get(a)).collect::<kmul::Result<Vec<_>>>()?;
    let mut lengths = config.lengths.clone();
    lengths.sort_unstable();
    lengths.dedup();

    let mut out = Vec::new();
    for &n in &lengths {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (n as u64).rotate_left(32));
        let a = random_operand(&mut rng, config.radix, n);
        let b = random_operand(&mut rng, config.radix, n);
        for m in &strategies {
            out.push(time_one(m.as_ref(), config.radix, &a, &b, config.reps(n)));
        }
    }
    Ok(out)
}

pub fn write_csv(records: &[BenchRecord], w: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `log2(avg_ns)` against `log2(n)`.
pub fn log_log_slope(points: &[(usize, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|&(n, t)| ((n as f64).log2(), t.log2())).collect();
    let k = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / k;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Slope per algorithm label over the records.
pub fn slopes(records: &[BenchRecord]) -> Vec<(String, f64)> {
    let mut labels: Vec<&str> = records.iter().map(|r| r.algo.as_str()).collect();
    labels.sort_by_key(|a| algo_rank(a));
    labels.dedup();
    labels
        .into_iter()
        .filter_map(|l| {
            let pts: Vec<(usize, f64)> =
                records.iter().filter(|r| r.algo == l).map(|r| (r.n, r.avg_ns as f64)).collect();
            log_log_slope(&pts).map(|s| (l.to_string(), s))
        })
        .collect()
}
