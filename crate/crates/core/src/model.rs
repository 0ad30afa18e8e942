//! Constellation, channel parameters and the conditional moments of the
//! energy-detector output under the large-`M` Gaussian approximation.

use crate::error::{invalid, Result};

/// Antenna count below which the Gaussian approximation of the averaged
/// energies is flagged as outside its justified regime.
pub const CLT_MIN_ANTENNAS: u32 = 30;

const PMF_TOLERANCE: f64 = 1e-12;

/// PAM energy alphabet `{0, c, 2c, …, (P−1)c}` with its input distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    scale: f64,
    energies: Vec<f64>,
    pmf: Vec<f64>,
}

impl Constellation {
    /// Builds a `P`-ary energy constellation whose mean energy equals
    /// `target_mean`. A missing `pmf` means uniform input.
    ///
    /// `P = 1` yields the degenerate alphabet `{0}` with scale 0.
    pub fn new(order: usize, target_mean: f64, pmf: Option<Vec<f64>>) -> Result<Self> {
        if order == 0 {
            return invalid("constellation order must be at least 1");
        }
        if !(target_mean.is_finite() && target_mean > 0.0) {
            return invalid(format!("target mean energy must be positive, got {target_mean}"));
        }
        let pmf = match pmf {
            Some(pmf) => {
                if pmf.len() != order {
                    return invalid(format!(
                        "pmf has {} entries for a constellation of order {order}",
                        pmf.len()
                    ));
                }
                if pmf.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
                    return invalid("pmf entries must be finite and nonnegative");
                }
                let total: f64 = pmf.iter().sum();
                if (total - 1.0).abs() > PMF_TOLERANCE {
                    return invalid(format!("pmf sums to {total}, not 1"));
                }
                pmf
            }
            None => vec![1.0 / order as f64; order],
        };

        if order == 1 {
            return Ok(Self {
                scale: 0.0,
                energies: vec![0.0],
                pmf,
            });
        }

        let mean_index: f64 = pmf.iter().enumerate().map(|(p, w)| w * p as f64).sum();
        if mean_index <= 0.0 {
            return invalid("pmf puts all mass on the zero-energy symbol; mean energy cannot be met");
        }
        let scale = target_mean / mean_index;
        let energies = (0..order).map(|p| scale * p as f64).collect();
        Ok(Self {
            scale,
            energies,
            pmf,
        })
    }

    pub fn uniform(order: usize, target_mean: f64) -> Result<Self> {
        Self::new(order, target_mean, None)
    }

    pub fn order(&self) -> usize {
        self.energies.len()
    }

    /// Energy spacing `c`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// `(probability, energy)` pairs with nonzero probability.
    pub fn support(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.pmf
            .iter()
            .copied()
            .zip(self.energies.iter().copied())
            .filter(|(p, _)| *p > 0.0)
    }

    pub fn mean_energy(&self) -> f64 {
        self.pmf.iter().zip(&self.energies).map(|(p, e)| p * e).sum()
    }

    /// `log₂ P`, the trivial upper bound on the information rate.
    pub fn max_bits(&self) -> f64 {
        (self.order() as f64).log2()
    }
}

/// Free-function form of [`Constellation::new`].
pub fn make_constellation(
    order: usize,
    target_mean: f64,
    pmf: Option<Vec<f64>>,
) -> Result<Constellation> {
    Constellation::new(order, target_mean, pmf)
}

/// Mean and variance of a Gaussian law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianStat {
    pub mean: f64,
    pub variance: f64,
}

impl GaussianStat {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !mean.is_finite() || !(variance.is_finite() && variance >= 0.0) {
            return invalid(format!("bad Gaussian moments ({mean}, {variance})"));
        }
        Ok(Self { mean, variance })
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// Channel power `σ_h²`, noise power `σ_n²` and antenna count `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    sigma_h2: f64,
    sigma_n2: f64,
    antennas: u32,
}

impl ChannelParams {
    pub fn new(sigma_h2: f64, sigma_n2: f64, antennas: u32) -> Result<Self> {
        if !(sigma_h2.is_finite() && sigma_h2 > 0.0) {
            return invalid(format!("sigma_h2 must be positive, got {sigma_h2}"));
        }
        if !(sigma_n2.is_finite() && sigma_n2 > 0.0) {
            return invalid(format!("sigma_n2 must be positive, got {sigma_n2}"));
        }
        if antennas == 0 {
            return invalid("antenna count must be at least 1");
        }
        Ok(Self {
            sigma_h2,
            sigma_n2,
            antennas,
        })
    }

    /// Noise power chosen so that `E[x]/σ_n²` equals the requested SNR.
    pub fn from_snr_db(sigma_h2: f64, snr_db: f64, mean_energy: f64, antennas: u32) -> Result<Self> {
        if !snr_db.is_finite() {
            return invalid(format!("SNR must be finite, got {snr_db}"));
        }
        if !(mean_energy.is_finite() && mean_energy > 0.0) {
            return invalid(format!("mean energy must be positive, got {mean_energy}"));
        }
        Self::new(sigma_h2, noise_power_for_snr(snr_db, mean_energy), antennas)
    }

    pub fn sigma_h2(&self) -> f64 {
        self.sigma_h2
    }

    pub fn sigma_n2(&self) -> f64 {
        self.sigma_n2
    }

    pub fn antennas(&self) -> u32 {
        self.antennas
    }

    /// Linear SNR `E[x]/σ_n²`.
    pub fn snr(&self, mean_energy: f64) -> f64 {
        mean_energy / self.sigma_n2
    }

    /// False when `M` is too small for the Gaussian approximation to be
    /// trusted. Evaluation still proceeds; callers decide whether to warn.
    pub fn clt_justified(&self) -> bool {
        self.antennas >= CLT_MIN_ANTENNAS
    }

    fn m(&self) -> f64 {
        self.antennas as f64
    }

    /// Averaged channel energy: `N(σ_h², σ_h⁴/M)`.
    pub fn stat_sh(&self) -> GaussianStat {
        GaussianStat {
            mean: self.sigma_h2,
            variance: self.sigma_h2 * self.sigma_h2 / self.m(),
        }
    }

    /// Averaged noise energy: `N(σ_n², σ_n⁴/M)`.
    pub fn stat_sn(&self) -> GaussianStat {
        GaussianStat {
            mean: self.sigma_n2,
            variance: self.sigma_n2 * self.sigma_n2 / self.m(),
        }
    }

    /// Cross term: `N(0, 2σ_h²σ_n²/M)`.
    pub fn stat_w(&self) -> GaussianStat {
        GaussianStat {
            mean: 0.0,
            variance: 2.0 * self.sigma_h2 * self.sigma_n2 / self.m(),
        }
    }

    pub(crate) fn var_z_given_x(&self, x: f64) -> f64 {
        let (h, n) = (self.sigma_h2, self.sigma_n2);
        (h * h * x * x + n * n + 2.0 * h * n * x) / self.m()
    }

    pub(crate) fn var_z_given_sh_x(&self, x: f64) -> f64 {
        let (h, n) = (self.sigma_h2, self.sigma_n2);
        (n * n + 2.0 * h * n * x) / self.m()
    }

    pub(crate) fn var_z_given_w_x(&self, x: f64) -> f64 {
        let (h, n) = (self.sigma_h2, self.sigma_n2);
        (h * h * x * x + n * n) / self.m()
    }

    /// Law of `z` given the transmitted energy only.
    pub fn moments_z_given_x(&self, x: f64) -> Result<GaussianStat> {
        check_energy(x)?;
        Ok(GaussianStat {
            mean: self.sigma_h2 * x + self.sigma_n2,
            variance: self.var_z_given_x(x),
        })
    }

    /// Law of `z` given the channel energy realisation `sh` and the energy.
    pub fn moments_z_given_sh_x(&self, sh: f64, x: f64) -> Result<GaussianStat> {
        check_energy(x)?;
        Ok(GaussianStat {
            mean: sh * x + self.sigma_n2,
            variance: self.var_z_given_sh_x(x),
        })
    }

    /// Law of `z` given the cross-term realisation `w` and the energy.
    pub fn moments_z_given_w_x(&self, w: f64, x: f64) -> Result<GaussianStat> {
        check_energy(x)?;
        Ok(GaussianStat {
            mean: self.sigma_h2 * x + w * x.sqrt() + self.sigma_n2,
            variance: self.var_z_given_w_x(x),
        })
    }
}

/// `σ_n² = E[x]·10^(−SNR_dB/10)`.
pub fn noise_power_for_snr(snr_db: f64, mean_energy: f64) -> f64 {
    mean_energy * 10f64.powf(-snr_db / 10.0)
}

fn check_energy(x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return invalid(format!("symbol energy must be nonnegative, got {x}"));
    }
    Ok(())
}
