//! SIMO memoryless Rayleigh-fading capacity benchmark and the adaptive
//! constellation-size selector.

use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;

use crate::bounds::composite;
use crate::entropy::NumericsConfig;
use crate::error::{invalid, Result};
use crate::model::{ChannelParams, Constellation};

/// Normalisation constant `a` of the capacity-achieving input law.
///
/// The capacity expression writes `log(a)` without a base; `log_a_in_bits`
/// selects `log₂ a` instead of the default `ln a` (converted to bits).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimoParams {
    a_const: f64,
    log_a_in_bits: bool,
}

impl SimoParams {
    pub fn new(a_const: f64, log_a_in_bits: bool) -> Result<Self> {
        if !(a_const.is_finite() && a_const > 0.0) {
            return invalid(format!("a must be positive, got {a_const}"));
        }
        Ok(Self {
            a_const,
            log_a_in_bits,
        })
    }

    pub fn a_const(&self) -> f64 {
        self.a_const
    }

    fn log_a_bits(&self) -> f64 {
        if self.log_a_in_bits {
            self.a_const.log2()
        } else {
            self.a_const.ln() / LN_2
        }
    }
}

impl Default for SimoParams {
    fn default() -> Self {
        Self {
            a_const: 1.0,
            log_a_in_bits: false,
        }
    }
}

/// Large-`M` capacity (bits) of the memoryless Rayleigh-fading SIMO channel
/// under an average power constraint:
/// `½log₂(M/2π) + log a + ρ/(a(1+ρ))`, last term in nats converted to bits.
pub fn simo_capacity(antennas: u32, rho: f64, simo: &SimoParams) -> Result<f64> {
    if antennas == 0 {
        return invalid("antenna count must be at least 1");
    }
    if !(rho.is_finite() && rho > 0.0) {
        return invalid(format!("SNR must be positive, got {rho}"));
    }
    let m = antennas as f64;
    let a = simo.a_const;
    Ok(0.5 * (m / (2.0 * PI)).log2() + simo.log_a_bits() + rho / (a * (1.0 + rho)) / LN_2)
}

/// Acceptable loss `delta` and the admissible constellation sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveConfig {
    delta: f64,
    candidates: Vec<usize>,
}

impl AdaptiveConfig {
    /// Candidates are sorted and deduplicated; each must be at least 2.
    pub fn new(delta: f64, mut candidates: Vec<usize>) -> Result<Self> {
        if !(0.0..1.0).contains(&delta) {
            return invalid(format!("delta must lie in [0, 1), got {delta}"));
        }
        if candidates.is_empty() {
            return invalid("no candidate constellation sizes");
        }
        if let Some(bad) = candidates.iter().find(|&&p| p < 2) {
            return invalid(format!("candidate constellation size {bad} is below 2"));
        }
        candidates.sort_unstable();
        candidates.dedup();
        Ok(Self { delta, candidates })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn candidates(&self) -> &[usize] {
        &self.candidates
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveChoice {
    pub order: usize,
    /// Composite lower bound of the chosen size (bits).
    pub rate: f64,
}

/// Picks from precomputed `(P, lb)` pairs: the largest `P` with
/// `lb/log₂P ≥ 1 − delta`; failing that, the largest `lb`, ties going to the
/// smaller `P`.
pub fn select_from_bounds(lower_bounds: &[(usize, f64)], delta: f64) -> Result<AdaptiveChoice> {
    if lower_bounds.is_empty() {
        return invalid("no candidate constellation sizes");
    }
    let mut sorted = lower_bounds.to_vec();
    sorted.sort_by_key(|&(p, _)| p);

    let qualifying = sorted
        .iter()
        .rev()
        .find(|&&(p, lb)| p >= 2 && lb / (p as f64).log2() >= 1.0 - delta);
    if let Some(&(order, rate)) = qualifying {
        return Ok(AdaptiveChoice { order, rate });
    }
    let mut best = sorted[0];
    for &(p, lb) in &sorted[1..] {
        if lb > best.1 {
            best = (p, lb);
        }
    }
    Ok(AdaptiveChoice {
        order: best.0,
        rate: best.1,
    })
}

/// Adaptive choice at each SNR point. Every candidate's composite bound is
/// evaluated with an energy constellation of mean `mean_energy`.
pub fn select_constellation(
    params_at_each_snr: &[ChannelParams],
    mean_energy: f64,
    adaptive: &AdaptiveConfig,
    cfg: &NumericsConfig,
) -> Result<Vec<AdaptiveChoice>> {
    let constellations = adaptive
        .candidates
        .iter()
        .map(|&p| Constellation::uniform(p, mean_energy))
        .collect::<Result<Vec<_>>>()?;
    params_at_each_snr
        .par_iter()
        .enumerate()
        .map(|(i, params)| {
            let lbs = constellations
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let stream = (i * constellations.len() + k) as u64;
                    let r = composite(params, c, &cfg.clone().with_stream(stream))?;
                    Ok((c.order(), r.lb))
                })
                .collect::<Result<Vec<_>>>()?;
            select_from_bounds(&lbs, adaptive.delta)
        })
        .collect()
}
