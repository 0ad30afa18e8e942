//! Sample-level simulation of the energy detector with `M` antennas, used to
//! check the Gaussian approximations against the physical model.

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{invalid, Result};
use crate::model::{ChannelParams, Constellation, GaussianStat};

/// Rows generated per RNG stream.
const SHARD_ROWS: usize = 4096;

pub const MIN_KS_SAMPLES: usize = 100;
pub const MIN_PLUGIN_ROWS: usize = 10_000;
pub const MIN_PLUGIN_BINS: usize = 16;
pub const DEFAULT_PLUGIN_BINS: usize = 256;

/// One row per channel use: the transmitted energy, the three channel
/// variables and the detector output.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub z_values: Vec<f64>,
    pub sh_values: Vec<f64>,
    pub sn_values: Vec<f64>,
    pub w_values: Vec<f64>,
    pub x_values: Vec<f64>,
    pub seed: u64,
}

impl SampleBatch {
    fn with_capacity(n: usize, seed: u64) -> Self {
        Self {
            z_values: Vec::with_capacity(n),
            sh_values: Vec::with_capacity(n),
            sn_values: Vec::with_capacity(n),
            w_values: Vec::with_capacity(n),
            x_values: Vec::with_capacity(n),
            seed,
        }
    }

    pub fn len(&self) -> usize {
        self.z_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z_values.is_empty()
    }

    /// Largest `|z − (sh·x + sn + w·√x)|` over the batch.
    pub fn identity_residual(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let x = self.x_values[i];
                let rebuilt = self.sh_values[i] * x + self.sn_values[i] + self.w_values[i] * x.sqrt();
                (self.z_values[i] - rebuilt).abs()
            })
            .fold(0.0, f64::max)
    }

    fn append(&mut self, mut other: SampleBatch) {
        self.z_values.append(&mut other.z_values);
        self.sh_values.append(&mut other.sh_values);
        self.sn_values.append(&mut other.sn_values);
        self.w_values.append(&mut other.w_values);
        self.x_values.append(&mut other.x_values);
    }
}

/// Draws `n` channel uses of
/// `z = (1/M) Σᵢ |hᵢ√x + nᵢ|²` with `hᵢ ~ CN(0, σ_h²)`, `nᵢ ~ CN(0, σ_n²)` and
/// `x` from the constellation pmf.
///
/// Rows are produced in shards of fixed size, each from its own ChaCha
/// stream keyed by the shard index, so the output does not depend on the
/// number of worker threads.
pub fn simulate_exact(
    params: &ChannelParams,
    constellation: &Constellation,
    n: usize,
    seed: u64,
) -> Result<SampleBatch> {
    if n == 0 {
        return invalid("sample count must be at least 1");
    }
    let pick = WeightedIndex::new(constellation.pmf()).map_err(|e| {
        crate::Error::InvalidArgument(format!("constellation pmf unusable for sampling: {e}"))
    })?;
    let shards = n.div_ceil(SHARD_ROWS);
    let parts: Vec<SampleBatch> = (0..shards)
        .into_par_iter()
        .map(|k| {
            let rows = SHARD_ROWS.min(n - k * SHARD_ROWS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            simulate_shard(params, constellation, &pick, rows, seed, &mut rng)
        })
        .collect();

    let mut batch = SampleBatch::with_capacity(n, seed);
    for part in parts {
        batch.append(part);
    }
    Ok(batch)
}

fn simulate_shard(
    params: &ChannelParams,
    constellation: &Constellation,
    pick: &WeightedIndex<f64>,
    rows: usize,
    seed: u64,
    rng: &mut ChaCha8Rng,
) -> SampleBatch {
    let m = params.antennas() as usize;
    // per real/imaginary part
    let h_sd = (params.sigma_h2() / 2.0).sqrt();
    let n_sd = (params.sigma_n2() / 2.0).sqrt();
    let mut batch = SampleBatch::with_capacity(rows, seed);

    for _ in 0..rows {
        let x = constellation.energies()[pick.sample(rng)];
        let amp = x.sqrt();
        let (mut sh, mut sn, mut w, mut z) = (0.0, 0.0, 0.0, 0.0);
        for _ in 0..m {
            let h_re = h_sd * rng.sample::<f64, _>(StandardNormal);
            let h_im = h_sd * rng.sample::<f64, _>(StandardNormal);
            let n_re = n_sd * rng.sample::<f64, _>(StandardNormal);
            let n_im = n_sd * rng.sample::<f64, _>(StandardNormal);
            sh += h_re * h_re + h_im * h_im;
            sn += n_re * n_re + n_im * n_im;
            w += h_re * n_re + h_im * n_im;
            let y_re = h_re * amp + n_re;
            let y_im = h_im * amp + n_im;
            z += y_re * y_re + y_im * y_im;
        }
        let m = m as f64;
        batch.x_values.push(x);
        batch.sh_values.push(sh / m);
        batch.sn_values.push(sn / m);
        batch.w_values.push(2.0 * w / m);
        batch.z_values.push(z / m);
    }
    batch
}

/// Two-sided Kolmogorov–Smirnov statistic between the empirical CDF of
/// `samples` and the CDF of `reference`. A zero-variance reference is a
/// point mass.
pub fn ks_distance_to_gaussian(samples: &[f64], reference: GaussianStat) -> Result<f64> {
    if samples.len() < MIN_KS_SAMPLES {
        return invalid(format!(
            "KS distance needs at least {MIN_KS_SAMPLES} samples, got {}",
            samples.len()
        ));
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return invalid("samples must be finite");
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);

    // (CDF at v, left limit at v)
    let cdf: Box<dyn Fn(f64) -> (f64, f64)> = if reference.variance > 0.0 {
        let normal = Normal::new(reference.mean, reference.std_dev())
            .map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
        Box::new(move |v| {
            let f = normal.cdf(v);
            (f, f)
        })
    } else {
        let mean = reference.mean;
        Box::new(move |v| (f64::from(v >= mean), f64::from(v > mean)))
    };

    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    let mut start = 0;
    while start < sorted.len() {
        let v = sorted[start];
        let end = start + sorted[start..].iter().take_while(|&&s| s == v).count();
        let (f, f_left) = cdf(v);
        d = d
            .max((end as f64 / n - f).abs())
            .max((f_left - start as f64 / n).abs());
        start = end;
    }
    Ok(d.clamp(0.0, 1.0))
}

/// Plug-in estimate (bits) of `I(x; z)` from the joint histogram of the
/// transmitted symbol and `z` quantised into `bins` equal-width cells over the
/// sample range. No bias correction.
pub fn empirical_mi_plugin(batch: &SampleBatch, bins: usize) -> Result<f64> {
    if batch.len() < MIN_PLUGIN_ROWS {
        return invalid(format!(
            "plug-in MI needs at least {MIN_PLUGIN_ROWS} rows, got {}",
            batch.len()
        ));
    }
    if bins < MIN_PLUGIN_BINS {
        return invalid(format!("plug-in MI needs at least {MIN_PLUGIN_BINS} bins"));
    }
    let (lo, hi) = batch
        .z_values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &z| (lo.min(z), hi.max(z)));
    let width = hi - lo;
    if !(width.is_finite() && width > 0.0) {
        return invalid("detector output has a degenerate range");
    }

    let mut symbols: BTreeMap<u64, usize> = BTreeMap::new();
    for x in &batch.x_values {
        let next = symbols.len();
        symbols.entry(x.to_bits()).or_insert(next);
    }
    let mut joint = vec![vec![0u64; bins]; symbols.len()];
    for (x, z) in batch.x_values.iter().zip(&batch.z_values) {
        let row = symbols[&x.to_bits()];
        let cell = (((z - lo) / width * bins as f64) as usize).min(bins - 1);
        joint[row][cell] += 1;
    }

    let n = batch.len() as f64;
    let px: Vec<f64> = joint.iter().map(|r| r.iter().sum::<u64>() as f64 / n).collect();
    let pz: Vec<f64> = (0..bins)
        .map(|b| joint.iter().map(|r| r[b]).sum::<u64>() as f64 / n)
        .collect();
    let mut mi = 0.0;
    for (row, p_x) in joint.iter().zip(&px) {
        for (&count, p_z) in row.iter().zip(&pz) {
            if count > 0 {
                let p = count as f64 / n;
                mi += p * (p / (p_x * p_z)).log2();
            }
        }
    }
    Ok(mi.max(0.0))
}
