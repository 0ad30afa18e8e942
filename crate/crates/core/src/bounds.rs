//! Lower and upper bounds on `I(x; z)` and the exact-MI oracle.
//!
//! Conditioning `z` on the channel energy `sh` or on the cross term `w`
//! gives two lower bounds,
//!
//! ```text
//! LB:H = h(z|sh) − h(z|x)        LB:W = h(z|w) − h(z|x)
//! ```
//!
//! and revealing `sh` or `w` to the receiver gives two upper bounds,
//!
//! ```text
//! UB:H = h(z|sh) − h(z|sh,x)     UB:W = h(z|w) − h(z|w,x)
//! ```
//!
//! The composite bounds are `LB = max(LB:H, LB:W)` and `UB = min(UB:H, UB:W)`.
//! Under the Gaussian model `z|x` is itself Gaussian, so the exact mutual
//! information is a one-dimensional mixture entropy minus `h(z|x)`.

use crate::entropy::{
    h_z_given_sh, h_z_given_sh_x, h_z_given_w, h_z_given_w_x, h_z_given_x, mixture_entropy_quad,
    nats_to_bits, EntropyValue, MixtureSpec, NumericsConfig,
};
use crate::error::Result;
use crate::model::{ChannelParams, Constellation};

/// Fixed quadrature allowance (bits) added to every per-point tolerance.
pub const QUADRATURE_ALLOWANCE_BITS: f64 = 1e-3;

/// The five entropies (nats) shared by the four bounds at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundTerms {
    pub h_z_given_x: EntropyValue,
    pub h_z_given_sh_x: EntropyValue,
    pub h_z_given_w_x: EntropyValue,
    pub h_z_given_sh: EntropyValue,
    pub h_z_given_w: EntropyValue,
}

impl BoundTerms {
    pub fn evaluate(
        params: &ChannelParams,
        constellation: &Constellation,
        cfg: &NumericsConfig,
    ) -> Result<Self> {
        Ok(Self {
            h_z_given_x: h_z_given_x(params, constellation),
            h_z_given_sh_x: h_z_given_sh_x(params, constellation),
            h_z_given_w_x: h_z_given_w_x(params, constellation),
            h_z_given_sh: h_z_given_sh(params, constellation, cfg)?,
            h_z_given_w: h_z_given_w(params, constellation, cfg)?,
        })
    }

    pub fn raw_lb_h(&self) -> f64 {
        nats_to_bits(self.h_z_given_sh.nats - self.h_z_given_x.nats)
    }

    pub fn raw_lb_w(&self) -> f64 {
        nats_to_bits(self.h_z_given_w.nats - self.h_z_given_x.nats)
    }

    pub fn raw_ub_h(&self) -> f64 {
        nats_to_bits(self.h_z_given_sh.nats - self.h_z_given_sh_x.nats)
    }

    pub fn raw_ub_w(&self) -> f64 {
        nats_to_bits(self.h_z_given_w.nats - self.h_z_given_w_x.nats)
    }
}

/// Unclamped bound values in bits, kept for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawBounds {
    pub lb_h: f64,
    pub lb_w: f64,
    pub ub_h: f64,
    pub ub_w: f64,
    pub exact_mi: f64,
}

/// Standard errors (bits) matching the fields of [`BoundsResult`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundsStdErrors {
    pub lb_h: f64,
    pub lb_w: f64,
    pub ub_h: f64,
    pub ub_w: f64,
    pub lb: f64,
    pub ub: f64,
    pub exact_mi: f64,
}

/// All bounds at one grid point, in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsResult {
    pub lb_h: f64,
    pub lb_w: f64,
    pub ub_h: f64,
    pub ub_w: f64,
    pub lb: f64,
    pub ub: f64,
    pub exact_mi: f64,
    pub max_bits: f64,
    pub std_errors: BoundsStdErrors,
    /// `4 × combined standard error + QUADRATURE_ALLOWANCE_BITS`.
    pub tol: f64,
    pub raw: RawBounds,
}

impl BoundsResult {
    fn assemble(terms: &BoundTerms, raw_exact_mi: f64, max_bits: f64) -> Self {
        let raw = RawBounds {
            lb_h: terms.raw_lb_h(),
            lb_w: terms.raw_lb_w(),
            ub_h: terms.raw_ub_h(),
            ub_w: terms.raw_ub_w(),
            exact_mi: raw_exact_mi,
        };
        let se_sh = terms.h_z_given_sh.std_error_bits();
        let se_w = terms.h_z_given_w.std_error_bits();

        let lb_h = raw.lb_h.max(0.0);
        let lb_w = raw.lb_w.max(0.0);
        let ub_h = raw.ub_h.min(max_bits);
        let ub_w = raw.ub_w.min(max_bits);
        let (lb, se_lb) = if lb_h >= lb_w { (lb_h, se_sh) } else { (lb_w, se_w) };
        let (ub, se_ub) = if ub_h <= ub_w { (ub_h, se_sh) } else { (ub_w, se_w) };

        Self {
            lb_h,
            lb_w,
            ub_h,
            ub_w,
            lb,
            ub,
            exact_mi: raw_exact_mi.clamp(0.0, max_bits),
            max_bits,
            std_errors: BoundsStdErrors {
                lb_h: se_sh,
                lb_w: se_w,
                ub_h: se_sh,
                ub_w: se_w,
                lb: se_lb,
                ub: se_ub,
                exact_mi: 0.0,
            },
            tol: 4.0 * se_sh.hypot(se_w) + QUADRATURE_ALLOWANCE_BITS,
            raw,
        }
    }

    /// A result with every field zero (the `P = 1` alphabet).
    fn zero() -> Self {
        let raw = RawBounds {
            lb_h: 0.0,
            lb_w: 0.0,
            ub_h: 0.0,
            ub_w: 0.0,
            exact_mi: 0.0,
        };
        Self {
            lb_h: 0.0,
            lb_w: 0.0,
            ub_h: 0.0,
            ub_w: 0.0,
            lb: 0.0,
            ub: 0.0,
            exact_mi: 0.0,
            max_bits: 0.0,
            std_errors: BoundsStdErrors::default(),
            tol: QUADRATURE_ALLOWANCE_BITS,
            raw,
        }
    }

    /// Largest amount (bits) by which any of
    /// `lb ≤ exact_mi ≤ ub`, `0 ≤ lb ≤ ub ≤ log₂P` is violated beyond `tol`.
    /// Zero or negative means every relation holds.
    pub fn bracketing_excess(&self) -> f64 {
        [
            self.lb - self.exact_mi,
            self.exact_mi - self.ub,
            self.lb - self.ub,
            self.ub - self.max_bits,
            -self.lb,
        ]
        .into_iter()
        .map(|gap| gap - self.tol)
        .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn degenerate(constellation: &Constellation) -> bool {
    constellation.support().count() <= 1
}

/// `I(x;z|sh) ≥ I(x;z) ≥ h(z|sh) − h(z|x)`, clamped below at 0.
pub fn lb_h(params: &ChannelParams, constellation: &Constellation, cfg: &NumericsConfig) -> Result<f64> {
    if degenerate(constellation) {
        return Ok(0.0);
    }
    let h_sh = h_z_given_sh(params, constellation, cfg)?;
    let h_x = h_z_given_x(params, constellation);
    Ok(nats_to_bits(h_sh.nats - h_x.nats).max(0.0))
}

/// `h(z|w) − h(z|x)`, clamped below at 0.
pub fn lb_w(params: &ChannelParams, constellation: &Constellation, cfg: &NumericsConfig) -> Result<f64> {
    if degenerate(constellation) {
        return Ok(0.0);
    }
    let h_w = h_z_given_w(params, constellation, cfg)?;
    let h_x = h_z_given_x(params, constellation);
    Ok(nats_to_bits(h_w.nats - h_x.nats).max(0.0))
}

/// Genie-aided `I(x;z|sh)`, clamped above at `log₂P`.
pub fn ub_h(params: &ChannelParams, constellation: &Constellation, cfg: &NumericsConfig) -> Result<f64> {
    if degenerate(constellation) {
        return Ok(0.0);
    }
    let h_sh = h_z_given_sh(params, constellation, cfg)?;
    let h_sh_x = h_z_given_sh_x(params, constellation);
    Ok(nats_to_bits(h_sh.nats - h_sh_x.nats).min(constellation.max_bits()))
}

/// Genie-aided `I(x;z|w)`, clamped above at `log₂P`.
pub fn ub_w(params: &ChannelParams, constellation: &Constellation, cfg: &NumericsConfig) -> Result<f64> {
    if degenerate(constellation) {
        return Ok(0.0);
    }
    let h_w = h_z_given_w(params, constellation, cfg)?;
    let h_w_x = h_z_given_w_x(params, constellation);
    Ok(nats_to_bits(h_w.nats - h_w_x.nats).min(constellation.max_bits()))
}

fn raw_exact_mi(
    params: &ChannelParams,
    constellation: &Constellation,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let output = MixtureSpec::from_constellation(constellation, |x| {
        (
            params.sigma_h2() * x + params.sigma_n2(),
            params.var_z_given_x(x),
        )
    });
    let h_z = mixture_entropy_quad(&output, cfg)?;
    Ok(nats_to_bits(h_z.nats - h_z_given_x(params, constellation).nats))
}

/// `I(x;z) = h(z) − h(z|x)` under the Gaussian model, clamped to `[0, log₂P]`.
/// Always evaluated by quadrature, whatever `cfg.method` says.
pub fn exact_mi(params: &ChannelParams, constellation: &Constellation, cfg: &NumericsConfig) -> Result<f64> {
    if degenerate(constellation) {
        return Ok(0.0);
    }
    Ok(raw_exact_mi(params, constellation, cfg)?.clamp(0.0, constellation.max_bits()))
}

/// Every bound at one point, with `h(z|sh)` and `h(z|w)` evaluated once.
pub fn composite(
    params: &ChannelParams,
    constellation: &Constellation,
    cfg: &NumericsConfig,
) -> Result<BoundsResult> {
    cfg.validate()?;
    if degenerate(constellation) {
        return Ok(BoundsResult::zero());
    }
    let terms = BoundTerms::evaluate(params, constellation, cfg)?;
    let exact = raw_exact_mi(params, constellation, cfg)?;
    Ok(BoundsResult::assemble(&terms, exact, constellation.max_bits()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn point(order: usize, snr_db: f64, antennas: u32) -> (ChannelParams, Constellation) {
        (
            ChannelParams::from_snr_db(1.0, snr_db, 1.0, antennas).unwrap(),
            Constellation::uniform(order, 1.0).unwrap(),
        )
    }

    fn cfg() -> NumericsConfig {
        NumericsConfig::default()
    }

    #[test]
    fn degenerate_alphabet_is_all_zero() {
        let (p, c) = point(1, 6.0, 200);
        let r = composite(&p, &c, &cfg()).unwrap();
        for v in [r.lb_h, r.lb_w, r.ub_h, r.ub_w, r.lb, r.ub, r.exact_mi] {
            assert_eq!(v, 0.0);
        }
        assert_eq!(lb_h(&p, &c, &cfg()).unwrap(), 0.0);
        assert_eq!(lb_w(&p, &c, &cfg()).unwrap(), 0.0);
        assert_eq!(ub_h(&p, &c, &cfg()).unwrap(), 0.0);
        assert_eq!(ub_w(&p, &c, &cfg()).unwrap(), 0.0);
        assert_eq!(exact_mi(&p, &c, &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn standalone_bounds_match_composite() {
        let (p, c) = point(4, 3.0, 100);
        let r = composite(&p, &c, &cfg()).unwrap();
        assert_eq!(r.lb_h, lb_h(&p, &c, &cfg()).unwrap());
        assert_eq!(r.lb_w, lb_w(&p, &c, &cfg()).unwrap());
        assert_eq!(r.ub_h, ub_h(&p, &c, &cfg()).unwrap());
        assert_eq!(r.ub_w, ub_w(&p, &c, &cfg()).unwrap());
        assert_eq!(r.exact_mi, exact_mi(&p, &c, &cfg()).unwrap());
        assert_eq!(r.lb, r.lb_h.max(r.lb_w));
        assert_eq!(r.ub, r.ub_h.min(r.ub_w));
    }

    #[test]
    fn genie_gaps_are_closed_form() {
        for (order, snr, m) in [(2, -5.0, 50), (8, 6.0, 200), (16, 20.0, 400)] {
            let (p, c) = point(order, snr, m);
            let t = BoundTerms::evaluate(&p, &c, &cfg()).unwrap();
            let gap_h = nats_to_bits(h_z_given_x(&p, &c).nats - h_z_given_sh_x(&p, &c).nats);
            let gap_w = nats_to_bits(h_z_given_x(&p, &c).nats - h_z_given_w_x(&p, &c).nats);
            assert!(gap_h > 0.0 && gap_w > 0.0);
            assert_abs_diff_eq!(t.raw_ub_h() - t.raw_lb_h(), gap_h, epsilon = 1e-12);
            assert_abs_diff_eq!(t.raw_ub_w() - t.raw_lb_w(), gap_w, epsilon = 1e-12);
        }
    }

    // Reference values from an independent numpy implementation
    // (uniform-step Simpson per window, 96-node Gauss–Hermite).
    #[test]
    fn matches_reference_implementation() {
        let cases = [
            ((8, 6.0, 200), [2.2921722, 2.4594045, 2.9495465, 2.7109355, 2.6006487]),
            ((16, 6.0, 200), [2.7170991, 2.7307582, 3.3815840, 3.0080916, 2.7928371]),
            ((2, -10.0, 20), [0.1115068, 0.0491876, 0.1216672, 0.1665589, 0.1175787]),
            ((8, 10.0, 50), [1.7538845, 2.0457151, 2.8581657, 2.1791501, 2.0972152]),
        ];
        for ((order, snr, m), [lbh, lbw, ubh, ubw, ex]) in cases {
            let (p, c) = point(order, snr, m);
            let r = composite(&p, &c, &cfg()).unwrap();
            let got = [r.raw.lb_h, r.raw.lb_w, r.raw.ub_h, r.raw.ub_w, r.raw.exact_mi];
            for (g, e) in got.iter().zip([lbh, lbw, ubh, ubw, ex]) {
                assert_abs_diff_eq!(*g, e, epsilon = 2e-6);
            }
        }
    }

    #[test]
    fn low_snr_pair_coincides() {
        let (p, c) = point(8, -20.0, 200);
        let r = composite(&p, &c, &cfg()).unwrap();
        assert!(r.ub_h - r.lb_h < 0.01, "{r:?}");
    }

    #[test]
    fn high_snr_pair_coincides() {
        // the (LB:W, UB:W) pair closes as noise vanishes
        let (p, c) = point(4, 20.0, 400);
        let r = composite(&p, &c, &cfg()).unwrap();
        assert!(r.ub_w - r.lb_w < 0.05, "{r:?}");
        // LB:H diverges downwards and is clamped
        assert!(r.raw.lb_h < 0.0);
        assert_eq!(r.lb_h, 0.0);
    }

    #[test]
    fn saturation_under_channel_hardening() {
        // Exact MI sits below log₂P at high SNR; the ceiling is set by var(sh) = σ_h⁴/M.
        let (p, c) = point(8, 40.0, 400);
        let r = composite(&p, &c, &cfg()).unwrap();
        assert!(r.exact_mi < 3.0 && r.exact_mi > 2.85, "{r:?}");
        let (p, c) = point(4, 40.0, 400);
        let r = composite(&p, &c, &cfg()).unwrap();
        assert_abs_diff_eq!(r.exact_mi, 2.0, epsilon = 0.02);
        assert_abs_diff_eq!(r.lb_w, 2.0, epsilon = 0.02);
    }

    #[test]
    fn bracketing_on_sample_points() {
        for (order, snr, m) in [(2, -20.0, 20), (4, 0.0, 50), (8, 12.0, 100), (16, 30.0, 400)] {
            let (p, c) = point(order, snr, m);
            let r = composite(&p, &c, &cfg()).unwrap();
            assert!(r.bracketing_excess() <= 0.0, "{order} {snr} {m}: {r:?}");
            assert_eq!(r.tol, QUADRATURE_ALLOWANCE_BITS);
        }
    }

    #[test]
    fn bracketing_excess_flags_violations() {
        let (p, c) = point(2, 0.0, 50);
        let mut r = composite(&p, &c, &cfg()).unwrap();
        r.exact_mi = r.ub + 0.01;
        assert!(r.bracketing_excess() > 0.0);
    }
}
