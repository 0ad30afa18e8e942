//! Quadrature helpers: Gauss–Hermite expectations over a Gaussian and
//! composite Simpson on a finite interval.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::hermite::GaussHermite;

use crate::model::GaussianStat;

/// Gauss–Hermite rule rescaled for expectations over a standard normal:
/// `E[f(Z)] ≈ Σ wᵢ f(tᵢ)` with `Σ wᵢ = 1`.
#[derive(Debug, Clone)]
pub(crate) struct NormalRule {
    nodes: Vec<(f64, f64)>,
}

type RuleCache = Mutex<HashMap<(usize, u64), Arc<NormalRule>>>;

impl NormalRule {
    /// Rule of the given order, dropping nodes whose normalised weight is
    /// below `weight_cutoff` and renormalising the rest.
    pub(crate) fn new(order: usize, weight_cutoff: f64) -> Arc<Self> {
        static CACHE: OnceLock<RuleCache> = OnceLock::new();
        let key = (order, weight_cutoff.to_bits());
        let cache = CACHE.get_or_init(Default::default);
        if let Some(rule) = cache.lock().unwrap().get(&key) {
            return Arc::clone(rule);
        }

        let order = NonZeroUsize::new(order).expect("quadrature order must be positive");
        let rule = GaussHermite::new(order);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let mut nodes: Vec<(f64, f64)> = rule
            .iter()
            .map(|(x, w)| (std::f64::consts::SQRT_2 * x, w / sqrt_pi))
            .filter(|(_, w)| *w >= weight_cutoff)
            .collect();
        nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = nodes.iter().map(|(_, w)| w).sum();
        for node in &mut nodes {
            node.1 /= total;
        }

        let rule = Arc::new(NormalRule { nodes });
        cache.lock().unwrap().insert(key, Arc::clone(&rule));
        rule
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Node positions and weights for `N(law.mean, law.variance)`.
    pub(crate) fn points(&self, law: GaussianStat) -> impl Iterator<Item = (f64, f64)> + '_ {
        let sd = law.std_dev();
        self.nodes.iter().map(move |&(t, w)| (law.mean + sd * t, w))
    }
}

/// Composite Simpson over `[a, b]` with `panels` (rounded up to even) panels.
pub(crate) fn simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let z = a + h * i as f64;
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(z);
    }
    acc * h / 3.0
}
