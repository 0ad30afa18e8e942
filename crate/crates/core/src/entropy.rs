//! Differential entropies of the detector output.
//!
//! Everything here is in nats. Conversion to bits happens once, in
//! [`crate::bounds`], through [`nats_to_bits`].
//!
//! Three kinds of quantity appear:
//! - closed-form Gaussian entropies averaged over the input pmf
//!   ([`h_z_given_x`], [`h_z_given_sh_x`], [`h_z_given_w_x`]);
//! - entropies of one-dimensional Gaussian mixtures, evaluated either by
//!   deterministic quadrature ([`mixture_entropy_quad`]) or by Monte Carlo
//!   ([`mixture_entropy_mc`]);
//! - expectations of mixture entropies over a Gaussian channel variable
//!   ([`h_z_given_sh`], [`h_z_given_w`]).

use std::f64::consts::{E, LN_2, PI};

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};
use crate::model::{ChannelParams, Constellation, GaussianStat};
use crate::quadrature::{simpson, NormalRule};

const WEIGHT_TOLERANCE: f64 = 1e-12;

/// Relative floor applied to channel-energy quadrature nodes.
const SH_FLOOR: f64 = 1e-12;

const STREAM_MIXTURE: u64 = 0;
const STREAM_SH: u64 = 1;
const STREAM_W: u64 = 2;

pub fn nats_to_bits(nats: f64) -> f64 {
    nats / LN_2
}

pub fn bits_to_nats(bits: f64) -> f64 {
    bits * LN_2
}

/// An entropy estimate and its Monte Carlo standard error (0 when the value
/// comes from deterministic quadrature or a closed form).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub nats: f64,
    pub std_error: f64,
}

impl EntropyValue {
    fn exact(nats: f64) -> Self {
        Self {
            nats,
            std_error: 0.0,
        }
    }

    pub fn bits(&self) -> f64 {
        nats_to_bits(self.nats)
    }

    pub fn std_error_bits(&self) -> f64 {
        nats_to_bits(self.std_error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureComponent {
    pub weight: f64,
    pub mean: f64,
    pub variance: f64,
}

/// Weighted sum of univariate Gaussian densities.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    components: Vec<MixtureComponent>,
}

impl MixtureSpec {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        if components.is_empty() {
            return invalid("mixture has no components");
        }
        for c in &components {
            if !(c.weight.is_finite() && c.weight >= 0.0) {
                return invalid(format!("mixture weight {} is not a probability", c.weight));
            }
            if !c.mean.is_finite() {
                return invalid("mixture mean is not finite");
            }
            if !(c.variance.is_finite() && c.variance > 0.0) {
                return invalid(format!("mixture variance must be positive, got {}", c.variance));
            }
        }
        let total: f64 = components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return invalid(format!("mixture weights sum to {total}, not 1"));
        }
        Ok(Self { components })
    }

    /// Mixture `Σ pmf[p]·N(law(ε_p))` over the constellation support.
    pub(crate) fn from_constellation(
        constellation: &Constellation,
        law: impl Fn(f64) -> (f64, f64),
    ) -> Self {
        let components = constellation
            .support()
            .map(|(weight, x)| {
                let (mean, variance) = law(x);
                MixtureComponent {
                    weight,
                    mean,
                    variance,
                }
            })
            .collect();
        Self { components }
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    /// Components with zero weight dropped, exact duplicates merged, and the
    /// rest sorted by (mean, variance). Makes evaluation order-independent.
    fn canonical(&self) -> Vec<MixtureComponent> {
        let mut comps: Vec<MixtureComponent> = self
            .components
            .iter()
            .copied()
            .filter(|c| c.weight > 0.0)
            .collect();
        comps.sort_by(|a, b| {
            a.mean
                .total_cmp(&b.mean)
                .then(a.variance.total_cmp(&b.variance))
                .then(a.weight.total_cmp(&b.weight))
        });
        let mut merged: Vec<MixtureComponent> = Vec::with_capacity(comps.len());
        for c in comps {
            match merged.last_mut() {
                Some(last) if last.mean == c.mean && last.variance == c.variance => {
                    last.weight += c.weight
                }
                _ => merged.push(c),
            }
        }
        merged
    }
}

/// Precomputed log-density terms for one component.
#[derive(Debug, Clone, Copy)]
struct LogTerm {
    mean: f64,
    log_scale: f64,
    inv_two_var: f64,
}

impl LogTerm {
    fn new(c: &MixtureComponent) -> Self {
        Self {
            mean: c.mean,
            log_scale: c.weight.ln() - 0.5 * (2.0 * PI * c.variance).ln(),
            inv_two_var: 0.5 / c.variance,
        }
    }

    #[inline]
    fn at(&self, z: f64) -> f64 {
        let d = z - self.mean;
        self.log_scale - d * d * self.inv_two_var
    }
}

#[inline]
fn log_sum_exp(terms: &[LogTerm], z: f64) -> f64 {
    let mut max = f64::NEG_INFINITY;
    for t in terms {
        max = max.max(t.at(z));
    }
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = terms.iter().map(|t| (t.at(z) - max).exp()).sum();
    max + sum.ln()
}

/// How the outer expectations over `sh` and `w` are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Gauss–Hermite outer rule, Simpson inner integral. Deterministic.
    #[default]
    Quadrature,
    /// Seeded Monte Carlo for both levels, with standard errors.
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericsConfig {
    /// Simpson panels spanning one component window of
    /// `2·tail_sigmas` standard deviations.
    pub z_quadrature_points: usize,
    pub tail_sigmas: f64,
    pub outer_quadrature_order: usize,
    pub mc_outer_samples: usize,
    pub mc_inner_samples: usize,
    pub seed: u64,
    /// Normalised Gauss–Hermite weights below this are skipped.
    pub rel_tolerance: f64,
    pub method: Method,
    /// RNG stream selector, typically the grid-point index.
    pub stream: u64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            z_quadrature_points: 512,
            tail_sigmas: 10.0,
            outer_quadrature_order: 64,
            mc_outer_samples: 1_000,
            mc_inner_samples: 100_000,
            seed: 0,
            rel_tolerance: 1e-15,
            method: Method::Quadrature,
            stream: 0,
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.z_quadrature_points == 0
            || self.outer_quadrature_order == 0
            || self.mc_outer_samples == 0
            || self.mc_inner_samples == 0
        {
            return invalid("quadrature orders and sample counts must be at least 1");
        }
        if self.tail_sigmas.is_nan() || self.tail_sigmas < 4.0 {
            return invalid(format!("tail_sigmas must be at least 4, got {}", self.tail_sigmas));
        }
        if self.rel_tolerance.is_nan() || self.rel_tolerance <= 0.0 {
            return invalid("rel_tolerance must be positive");
        }
        Ok(())
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    fn rng(&self, purpose: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream.wrapping_mul(8).wrapping_add(purpose));
        rng
    }
}

/// `½ ln(2πe·variance)`.
pub fn gaussian_entropy(variance: f64) -> Result<EntropyValue> {
    if !(variance.is_finite() && variance > 0.0) {
        return invalid(format!("variance must be positive, got {variance}"));
    }
    Ok(EntropyValue::exact(gaussian_nats(variance)))
}

fn gaussian_nats(variance: f64) -> f64 {
    0.5 * (2.0 * PI * E * variance).ln()
}

/// `−∫ f ln f` for a Gaussian mixture by piecewise composite Simpson.
///
/// The real line is cut at every component window edge
/// `mean ± tail_sigmas·sd`. Each piece is integrated with a step set by the
/// narrowest component covering it, and only covering components enter the
/// log-density. Pieces outside every window carry density below
/// `exp(−tail_sigmas²/2)` and are skipped.
pub fn mixture_entropy_quad(spec: &MixtureSpec, cfg: &NumericsConfig) -> Result<EntropyValue> {
    cfg.validate()?;
    if spec.components.is_empty() {
        return invalid("mixture has no components");
    }
    Ok(EntropyValue::exact(quad_nats(spec, cfg)))
}

fn quad_nats(spec: &MixtureSpec, cfg: &NumericsConfig) -> f64 {
    let comps = spec.canonical();
    if comps.len() == 1 {
        return gaussian_nats(comps[0].variance);
    }

    let tail = cfg.tail_sigmas;
    let windows: Vec<(f64, f64, f64)> = comps
        .iter()
        .map(|c| {
            let sd = c.variance.sqrt();
            (c.mean - tail * sd, c.mean + tail * sd, sd)
        })
        .collect();
    let mut edges: Vec<f64> = windows.iter().flat_map(|w| [w.0, w.1]).collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let terms: Vec<LogTerm> = comps.iter().map(LogTerm::new).collect();
    let mut active: Vec<LogTerm> = Vec::with_capacity(terms.len());
    let mut total = 0.0;
    for piece in edges.windows(2) {
        let (a, b) = (piece[0], piece[1]);
        let mid = 0.5 * (a + b);
        active.clear();
        let mut sd_min = f64::INFINITY;
        for (term, w) in terms.iter().zip(&windows) {
            if w.0 < mid && mid < w.1 {
                active.push(*term);
                sd_min = sd_min.min(w.2);
            }
        }
        if active.is_empty() {
            continue;
        }
        let step = 2.0 * tail * sd_min / cfg.z_quadrature_points as f64;
        let panels = ((b - a) / step).ceil() as usize;
        total += simpson(
            |z| {
                let log_f = log_sum_exp(&active, z);
                if log_f.is_finite() {
                    -log_f.exp() * log_f
                } else {
                    0.0
                }
            },
            a,
            b,
            panels,
        );
    }
    total
}

/// Monte Carlo estimate of the mixture entropy: mean of `−ln f(z)` over
/// `mc_inner_samples` seeded draws from the mixture.
pub fn mixture_entropy_mc(spec: &MixtureSpec, cfg: &NumericsConfig) -> Result<EntropyValue> {
    cfg.validate()?;
    if spec.components.is_empty() {
        return invalid("mixture has no components");
    }
    if cfg.mc_inner_samples < 2 {
        return invalid("Monte Carlo entropy needs at least 2 samples");
    }
    let mut rng = cfg.rng(STREAM_MIXTURE);
    let (nats, std_error) = mc_nats(spec, cfg.mc_inner_samples, &mut rng);
    Ok(EntropyValue { nats, std_error })
}

fn mc_nats(spec: &MixtureSpec, samples: usize, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let comps = spec.canonical();
    let terms: Vec<LogTerm> = comps.iter().map(LogTerm::new).collect();
    let pick = WeightedIndex::new(comps.iter().map(|c| c.weight)).expect("validated weights");
    let sds: Vec<f64> = comps.iter().map(|c| c.variance.sqrt()).collect();

    let mut mean = 0.0;
    let mut m2 = 0.0;
    for i in 0..samples {
        let k = pick.sample(rng);
        let n: f64 = StandardNormal.sample(rng);
        let z = comps[k].mean + sds[k] * n;
        let v = -log_sum_exp(&terms, z);
        // Welford
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    let var = if samples > 1 { m2 / (samples - 1) as f64 } else { 0.0 };
    (mean, (var / samples as f64).sqrt())
}

fn closed_form(constellation: &Constellation, variance: impl Fn(f64) -> f64) -> EntropyValue {
    let nats = constellation
        .support()
        .map(|(p, x)| p * gaussian_nats(variance(x)))
        .sum();
    EntropyValue::exact(nats)
}

/// `h(z|x)`: each `z|x` is Gaussian with the full conditional variance.
pub fn h_z_given_x(params: &ChannelParams, constellation: &Constellation) -> EntropyValue {
    closed_form(constellation, |x| params.var_z_given_x(x))
}

/// `h(z|sh, x)`: the channel-energy term drops out of the variance, so the
/// value does not depend on the realisation of `sh`.
pub fn h_z_given_sh_x(params: &ChannelParams, constellation: &Constellation) -> EntropyValue {
    closed_form(constellation, |x| params.var_z_given_sh_x(x))
}

/// `h(z|w, x)`: the cross term drops out of the variance.
pub fn h_z_given_w_x(params: &ChannelParams, constellation: &Constellation) -> EntropyValue {
    closed_form(constellation, |x| params.var_z_given_w_x(x))
}

/// `h(z|sh) = E_sh[h(z|sh = s)]`, with `sh ~ N(σ_h², σ_h⁴/M)`.
pub fn h_z_given_sh(
    params: &ChannelParams,
    constellation: &Constellation,
    cfg: &NumericsConfig,
) -> Result<EntropyValue> {
    let floor = SH_FLOOR * params.sigma_h2();
    conditional_mixture_entropy(params.stat_sh(), cfg, STREAM_SH, |s| {
        let s = s.max(floor);
        MixtureSpec::from_constellation(constellation, |x| {
            (s * x + params.sigma_n2(), params.var_z_given_sh_x(x))
        })
    })
}

/// `h(z|w) = E_w[h(z|w = w)]`, with `w ~ N(0, 2σ_h²σ_n²/M)`.
pub fn h_z_given_w(
    params: &ChannelParams,
    constellation: &Constellation,
    cfg: &NumericsConfig,
) -> Result<EntropyValue> {
    conditional_mixture_entropy(params.stat_w(), cfg, STREAM_W, |w| {
        MixtureSpec::from_constellation(constellation, |x| {
            (
                params.sigma_h2() * x + w * x.sqrt() + params.sigma_n2(),
                params.var_z_given_w_x(x),
            )
        })
    })
}

fn conditional_mixture_entropy(
    outer: GaussianStat,
    cfg: &NumericsConfig,
    purpose: u64,
    mixture_at: impl Fn(f64) -> MixtureSpec,
) -> Result<EntropyValue> {
    cfg.validate()?;
    match cfg.method {
        Method::Quadrature => {
            let rule = NormalRule::new(cfg.outer_quadrature_order, cfg.rel_tolerance);
            let nats = rule
                .points(outer)
                .map(|(t, w)| w * quad_nats(&mixture_at(t), cfg))
                .sum();
            Ok(EntropyValue::exact(nats))
        }
        Method::MonteCarlo => {
            let mut rng = cfg.rng(purpose);
            let draws = cfg.mc_outer_samples;
            let inner = cfg.mc_inner_samples.div_ceil(draws).max(2);
            let sd = outer.std_dev();
            let per_draw: Vec<f64> = (0..draws)
                .map(|_| {
                    let n: f64 = StandardNormal.sample(&mut rng);
                    mc_nats(&mixture_at(outer.mean + sd * n), inner, &mut rng).0
                })
                .collect();
            let k = per_draw.len() as f64;
            let mean = per_draw.iter().sum::<f64>() / k;
            let std_error = if per_draw.len() > 1 {
                let var = per_draw.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
                (var / k).sqrt()
            } else {
                0.0
            };
            Ok(EntropyValue {
                nats: mean,
                std_error,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    const HALF_LN_2PI_E: f64 = 1.418_938_533_204_672_7;

    fn mix(parts: &[(f64, f64, f64)]) -> MixtureSpec {
        MixtureSpec::new(
            parts
                .iter()
                .map(|&(weight, mean, variance)| MixtureComponent {
                    weight,
                    mean,
                    variance,
                })
                .collect(),
        )
        .unwrap()
    }

    fn cfg() -> NumericsConfig {
        NumericsConfig::default()
    }

    #[test]
    fn gaussian_entropy_values() {
        let v = 1.0 / (2.0 * PI * E);
        assert_abs_diff_eq!(gaussian_entropy(v).unwrap().nats, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(gaussian_entropy(1.0).unwrap().nats, HALF_LN_2PI_E, epsilon = 1e-15);
        let v = E * E / (2.0 * PI * E);
        assert_abs_diff_eq!(gaussian_entropy(v).unwrap().nats, 1.0, epsilon = 1e-15);
        assert_eq!(gaussian_entropy(1.0).unwrap().std_error, 0.0);
        assert!(gaussian_entropy(0.0).is_err());
        assert!(gaussian_entropy(-1.0).is_err());
    }

    #[test]
    fn unit_round_trip() {
        for x in [0.0, 1e-9, 0.3, 1.0, 17.25] {
            assert_abs_diff_eq!(bits_to_nats(nats_to_bits(x)), x, epsilon = 1e-15);
        }
    }

    #[test]
    fn mixture_spec_errors() {
        assert!(MixtureSpec::new(vec![]).is_err());
        let bad_var = vec![MixtureComponent { weight: 1.0, mean: 0.0, variance: 0.0 }];
        assert!(MixtureSpec::new(bad_var).is_err());
        let bad_sum = vec![
            MixtureComponent { weight: 0.5, mean: 0.0, variance: 1.0 },
            MixtureComponent { weight: 0.4, mean: 1.0, variance: 1.0 },
        ];
        assert!(MixtureSpec::new(bad_sum).is_err());
    }

    #[test]
    fn quad_single_and_duplicated_component() {
        let single = mix(&[(1.0, 0.0, 1.0)]);
        assert_abs_diff_eq!(mixture_entropy_quad(&single, &cfg()).unwrap().nats, HALF_LN_2PI_E, epsilon = 1e-12);
        let dup = mix(&[(0.5, 3.0, 2.0), (0.5, 3.0, 2.0)]);
        let expect = gaussian_entropy(2.0).unwrap().nats;
        assert_abs_diff_eq!(mixture_entropy_quad(&dup, &cfg()).unwrap().nats, expect, epsilon = 1e-12);
    }

    #[test]
    fn quad_well_separated_mixture() {
        // scipy.integrate.quad reference: 2.1120857137646176
        let m = mix(&[(0.5, 0.0, 1.0), (0.5, 100.0, 1.0)]);
        let h = mixture_entropy_quad(&m, &cfg()).unwrap().nats;
        assert_abs_diff_eq!(h, HALF_LN_2PI_E + LN_2, epsilon = 1e-6);
        assert_abs_diff_eq!(h, 2.112_085_713_764_617_6, epsilon = 1e-8);
    }

    #[test]
    fn quad_matches_adaptive_reference() {
        // scipy.integrate.quad with breakpoints at mean ± sd: 1.1193441162998712
        let m = mix(&[(0.2, -1.0, 0.09), (0.5, 0.5, 1.0), (0.3, 3.0, 0.0025)]);
        let h = mixture_entropy_quad(&m, &cfg()).unwrap().nats;
        assert_abs_diff_eq!(h, 1.119_344_116_299_871_2, epsilon = 1e-8);
    }

    #[test]
    fn quad_is_deterministic_and_order_free() {
        let a = mix(&[(0.2, -1.0, 0.09), (0.5, 0.5, 1.0), (0.3, 3.0, 0.0025)]);
        let b = mix(&[(0.3, 3.0, 0.0025), (0.2, -1.0, 0.09), (0.5, 0.5, 1.0)]);
        let ha = mixture_entropy_quad(&a, &cfg()).unwrap();
        assert_eq!(ha, mixture_entropy_quad(&a, &cfg()).unwrap());
        assert_abs_diff_eq!(ha.nats, mixture_entropy_quad(&b, &cfg()).unwrap().nats, epsilon = 1e-12);
        assert_eq!(ha.std_error, 0.0);
    }

    #[test]
    fn quad_shift_and_scale() {
        let base = [(0.25, -0.4, 0.3), (0.25, 0.1, 0.01), (0.5, 2.0, 1.5)];
        let h0 = mixture_entropy_quad(&mix(&base), &cfg()).unwrap().nats;
        let shifted: Vec<_> = base.iter().map(|&(w, m, v)| (w, m + 37.5, v)).collect();
        let hs = mixture_entropy_quad(&mix(&shifted), &cfg()).unwrap().nats;
        assert_abs_diff_eq!(hs, h0, epsilon = 1e-9);
        for k in [0.01, 0.5, 3.0, 250.0] {
            let scaled: Vec<_> = base.iter().map(|&(w, m, v)| (w, k * m, k * k * v)).collect();
            let hk = mixture_entropy_quad(&mix(&scaled), &cfg()).unwrap().nats;
            assert_abs_diff_eq!(hk, h0 + f64::ln(k), epsilon = 1e-8);
        }
    }

    #[test]
    fn mc_single_component() {
        let m = mix(&[(1.0, 0.0, 1.0)]);
        let v = mixture_entropy_mc(&m, &cfg()).unwrap();
        assert!(v.std_error > 0.0);
        assert!((v.nats - HALF_LN_2PI_E).abs() <= 3.0 * v.std_error, "{v:?}");
    }

    #[test]
    fn mc_is_deterministic_given_seed() {
        let m = mix(&[(0.4, 0.0, 1.0), (0.6, 1.5, 0.2)]);
        let c = cfg().with_seed(17);
        assert_eq!(mixture_entropy_mc(&m, &c).unwrap(), mixture_entropy_mc(&m, &c).unwrap());
        let other = mixture_entropy_mc(&m, &c.clone().with_seed(18)).unwrap();
        assert_ne!(other, mixture_entropy_mc(&m, &c).unwrap());
    }

    #[test]
    fn mc_agrees_with_quad_on_random_mixtures() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for i in 0..10 {
            let k = rng.gen_range(1..=5);
            let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let parts: Vec<_> = raw
                .iter()
                .map(|w| (w / total, rng.gen_range(-4.0..4.0), rng.gen_range(0.01..3.0)))
                .collect();
            let m = mix(&parts);
            let c = cfg().with_seed(1000 + i);
            let q = mixture_entropy_quad(&m, &c).unwrap().nats;
            let mc = mixture_entropy_mc(&m, &c).unwrap();
            assert!((mc.nats - q).abs() <= 4.0 * mc.std_error, "{parts:?}: {q} vs {mc:?}");
        }
    }

    #[test]
    fn mc_requires_two_samples() {
        let m = mix(&[(1.0, 0.0, 1.0)]);
        let c = NumericsConfig { mc_inner_samples: 1, ..cfg() };
        assert!(mixture_entropy_mc(&m, &c).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(cfg().validate().is_ok());
        assert!(NumericsConfig { tail_sigmas: 3.0, ..cfg() }.validate().is_err());
        assert!(NumericsConfig { z_quadrature_points: 0, ..cfg() }.validate().is_err());
        assert!(NumericsConfig { rel_tolerance: 0.0, ..cfg() }.validate().is_err());
    }

    fn params(sh: f64, sn: f64, m: u32) -> ChannelParams {
        ChannelParams::new(sh, sn, m).unwrap()
    }

    #[test]
    fn closed_forms_degenerate_constellation() {
        let p = params(1.0, 0.7, 64);
        let c = Constellation::uniform(1, 1.0).unwrap();
        let expect = 0.5 * (2.0 * PI * E * 0.49 / 64.0).ln();
        assert_abs_diff_eq!(h_z_given_x(&p, &c).nats, expect, epsilon = 1e-14);
        assert_abs_diff_eq!(h_z_given_sh_x(&p, &c).nats, expect, epsilon = 1e-14);
        assert_abs_diff_eq!(h_z_given_w_x(&p, &c).nats, expect, epsilon = 1e-14);
        assert_abs_diff_eq!(h_z_given_sh(&p, &c, &cfg()).unwrap().nats, expect, epsilon = 1e-12);
        assert_abs_diff_eq!(h_z_given_w(&p, &c, &cfg()).unwrap().nats, expect, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_binary_example() {
        let p = params(1.0, 1.0, 100);
        let c = Constellation::uniform(2, 1.0).unwrap();
        // calculator value of ½·½[ln(2πe·0.01) + ln(2πe·0.09)]
        assert_abs_diff_eq!(h_z_given_x(&p, &c).nats, -0.334_340_415_455_318_2, epsilon = 1e-13);
        // x = 2 term of h(z|sh,x) uses variance 5/100
        let expect = 0.5 * gaussian_nats(0.01) + 0.5 * gaussian_nats(0.05);
        assert_abs_diff_eq!(h_z_given_sh_x(&p, &c).nats, expect, epsilon = 1e-14);
        let p = params(1.0, 1.0, 200);
        let expect = 0.5 * gaussian_nats(1.0 / 200.0) + 0.5 * gaussian_nats(5.0 / 200.0);
        assert_abs_diff_eq!(h_z_given_w_x(&p, &c).nats, expect, epsilon = 1e-14);
    }

    #[test]
    fn doubling_antennas_shifts_h_z_given_x() {
        let c = Constellation::uniform(8, 1.0).unwrap();
        let a = h_z_given_x(&params(1.0, 0.3, 50), &c).nats;
        let b = h_z_given_x(&params(1.0, 0.3, 100), &c).nats;
        assert_abs_diff_eq!(a - b, 0.5 * LN_2, epsilon = 1e-13);
    }

    #[test]
    fn genie_closed_forms_are_smaller() {
        let c = Constellation::uniform(4, 1.0).unwrap();
        for sn in [1e-3, 0.1, 1.0, 10.0] {
            let p = params(1.0, sn, 100);
            let full = h_z_given_x(&p, &c).nats;
            assert!(h_z_given_sh_x(&p, &c).nats < full);
            assert!(h_z_given_w_x(&p, &c).nats < full);
        }
    }

    #[test]
    fn conditional_entropy_gaps_within_mixture_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..12 {
            let order = [2, 3, 4, 8, 16][rng.gen_range(0..5)];
            let c = Constellation::uniform(order, 1.0).unwrap();
            let snr_db = rng.gen_range(-20.0..30.0);
            let m = rng.gen_range(20..500);
            let p = ChannelParams::from_snr_db(1.0, snr_db, 1.0, m).unwrap();
            let ln_p = (order as f64).ln();
            let gap_sh = h_z_given_sh(&p, &c, &cfg()).unwrap().nats - h_z_given_sh_x(&p, &c).nats;
            let gap_w = h_z_given_w(&p, &c, &cfg()).unwrap().nats - h_z_given_w_x(&p, &c).nats;
            for gap in [gap_sh, gap_w] {
                assert!(gap >= -1e-9 && gap <= ln_p + 1e-9, "P={order} snr={snr_db} M={m}: {gap}");
            }
        }
    }

    #[test]
    fn h_z_given_w_noiseless_limit() {
        let p = params(1.0, 1e-6, 100);
        let c = Constellation::uniform(4, 1.0).unwrap();
        let noiseless = MixtureSpec::from_constellation(&c, |x| {
            let m = p.moments_z_given_x(x).unwrap();
            (m.mean, m.variance)
        });
        let reference = mixture_entropy_quad(&noiseless, &cfg()).unwrap().nats;
        let hw = h_z_given_w(&p, &c, &cfg()).unwrap().nats;
        assert_abs_diff_eq!(hw, reference, epsilon = 1e-4);
    }

    #[test]
    fn monte_carlo_mode_tracks_quadrature() {
        let p = ChannelParams::from_snr_db(1.0, 6.0, 1.0, 200).unwrap();
        let c = Constellation::uniform(4, 1.0).unwrap();
        let quad = h_z_given_sh(&p, &c, &cfg()).unwrap();
        let mc_cfg = NumericsConfig {
            mc_outer_samples: 200,
            mc_inner_samples: 40_000,
            ..cfg().with_method(Method::MonteCarlo).with_seed(3)
        };
        let mc = h_z_given_sh(&p, &c, &mc_cfg).unwrap();
        assert!(mc.std_error > 0.0);
        assert!((mc.nats - quad.nats).abs() <= 4.0 * mc.std_error, "{mc:?} vs {quad:?}");
        let mc_w = h_z_given_w(&p, &c, &mc_cfg).unwrap();
        let quad_w = h_z_given_w(&p, &c, &cfg()).unwrap();
        assert!((mc_w.nats - quad_w.nats).abs() <= 4.0 * mc_w.std_error);
    }
}
