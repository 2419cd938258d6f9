//! Sums of independent exponential random variables.
//!
//! The interference terms at the relay are sums of one to three independent
//! exponentials with rates `λᵢ`. For pairwise distinct rates the density has
//! the partial-fraction form
//!
//! ```text
//! f(z) = Πλⱼ · Σᵢ e^(−λᵢz) / Πⱼ≠ᵢ (λⱼ − λᵢ)
//! ```
//!
//! which divides by rate differences and breaks down as rates coincide. For
//! closely spaced rates the density is evaluated through the equivalent
//! divided-difference identity `f(z) = Πλⱼ · z^(n−1) · exp[−λ₁z, …, −λₙz]`,
//! whose divided differences of `exp` are computed without cancellation.

use crate::error::{Error, Result};

/// Two rates are degenerate when `|λᵢ − λⱼ| ≤ DEGENERACY_REL_TOL · max(λᵢ, λⱼ)`.
pub const DEGENERACY_REL_TOL: f64 = 1e-9;

pub const MAX_STAGES: usize = 3;

/// Below this relative gap the partial-fraction density loses too many digits
/// to cancellation and the divided-difference route is used instead.
pub const PARTIAL_FRACTION_MIN_GAP: f64 = 1e-3;

/// True if any pair of rates is closer than [`DEGENERACY_REL_TOL`] relative.
pub fn rates_degenerate(rates: &[f64]) -> bool {
    rates_closer_than(rates, DEGENERACY_REL_TOL)
}

fn rates_closer_than(rates: &[f64], rel: f64) -> bool {
    for (i, &x) in rates.iter().enumerate() {
        for &y in &rates[i + 1..] {
            if (x - y).abs() <= rel * x.max(y) {
                return true;
            }
        }
    }
    false
}

/// Weights `wᵢ = Πⱼ≠ᵢ λⱼ/(λⱼ − λᵢ)` of the partial-fraction decomposition.
/// They sum to one; only meaningful for distinct rates.
fn partial_fraction_weights(rates: &[f64]) -> Vec<f64> {
    rates
        .iter()
        .enumerate()
        .map(|(i, &li)| {
            rates
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &lj)| lj / (lj - li))
                .product()
        })
        .collect()
}

/// Distribution of `Z = Σ Zᵢ`, `Zᵢ ~ Exp(rate λᵢ)` independent.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypoexponential {
    rates: Vec<f64>,
    degenerate: bool,
    clustered: bool,
}

impl Hypoexponential {
    pub fn new(rates: &[f64]) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::config("hypoexponential needs at least one rate"));
        }
        if rates.len() > MAX_STAGES {
            return Err(Error::config(format!(
                "hypoexponential supports at most {MAX_STAGES} stages, got {}",
                rates.len()
            )));
        }
        if let Some(bad) = rates.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(Error::config(format!("rate must be positive and finite, got {bad}")));
        }
        Ok(Self {
            rates: rates.to_vec(),
            degenerate: rates_degenerate(rates),
            clustered: rates_closer_than(rates, PARTIAL_FRACTION_MIN_GAP),
        })
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn mean(&self) -> f64 {
        self.rates.iter().map(|r| 1.0 / r).sum()
    }

    /// Density at `z ≥ 0`; zero for negative `z`.
    pub fn pdf(&self, z: f64) -> f64 {
        if z < 0.0 {
            return 0.0;
        }
        let density = if self.clustered {
            self.pdf_divided_difference(z)
        } else {
            self.pdf_partial_fraction(z)
        };
        density.max(0.0)
    }

    /// Partial-fraction density; valid for distinct rates only.
    pub fn pdf_partial_fraction(&self, z: f64) -> f64 {
        partial_fraction_weights(&self.rates)
            .iter()
            .zip(&self.rates)
            .map(|(w, l)| w * l * (-l * z).exp())
            .sum()
    }

    /// Density through divided differences of `exp`; valid for any rates.
    pub fn pdf_divided_difference(&self, z: f64) -> f64 {
        let n = self.rates.len();
        let prod: f64 = self.rates.iter().product();
        if n == 1 {
            return prod * (-self.rates[0] * z).exp();
        }
        if z == 0.0 {
            return 0.0;
        }
        let points: Vec<f64> = self.rates.iter().map(|l| -l * z).collect();
        prod * z.powi(n as i32 - 1) * exp_divided_difference(&points)
    }

    /// `E[e^(−sZ)] = Πᵢ λᵢ/(λᵢ + s)` for `s ≥ 0`.
    pub fn laplace(&self, s: f64) -> f64 {
        1.0 - self.laplace_complement(s)
    }

    /// `1 − E[e^(−sZ)]`, evaluated without cancellation when it is small.
    ///
    /// Distinct rates use the partial-fraction form `Σ wᵢ s/(λᵢ + s)`;
    /// degenerate ones the product form `1 − Π λᵢ/(λᵢ + s)`.
    pub fn laplace_complement(&self, s: f64) -> f64 {
        if self.degenerate || self.rates.len() == 1 {
            let log_l: f64 = self.rates.iter().map(|l| -(s / l).ln_1p()).sum();
            -log_l.exp_m1()
        } else {
            partial_fraction_weights(&self.rates)
                .iter()
                .zip(&self.rates)
                .map(|(w, l)| w * s / (l + s))
                .sum()
        }
    }
}

/// Divided difference `exp[t₁, …, tₙ]` of the exponential function.
///
/// Clusters narrower than one unit use the Taylor expansion about their
/// midpoint, where the divided difference of `yᵐ` is the complete homogeneous
/// symmetric polynomial `h_{m−n+1}`; wider clusters use the recurrence on
/// sorted points, which then divides by a spread of at least one.
pub fn exp_divided_difference(points: &[f64]) -> f64 {
    let mut t = points.to_vec();
    t.sort_by(f64::total_cmp);
    divided_difference_sorted(&t)
}

fn divided_difference_sorted(t: &[f64]) -> f64 {
    let n = t.len();
    match n {
        0 => 0.0,
        1 => t[0].exp(),
        _ => {
            let spread = t[n - 1] - t[0];
            if spread < 1.0 {
                taylor_divided_difference(t)
            } else if n == 2 {
                // e^b (1 − e^(a−b)) / (b − a), a < b
                -t[1].exp() * (t[0] - t[1]).exp_m1() / spread
            } else {
                (divided_difference_sorted(&t[1..]) - divided_difference_sorted(&t[..n - 1])) / spread
            }
        }
    }
}

fn taylor_divided_difference(t: &[f64]) -> f64 {
    let n = t.len();
    let c = 0.5 * (t[0] + t[n - 1]);
    let y: Vec<f64> = t.iter().map(|x| x - c).collect();

    // h[j] holds h_j over the variables folded in so far.
    const TERMS: usize = 40;
    let mut h = [0.0_f64; TERMS];
    h[0] = 1.0;
    for &yi in &y {
        for j in 1..TERMS {
            h[j] += yi * h[j - 1];
        }
    }

    // Σ_{m ≥ n−1} h_{m−n+1} / m!
    let mut inv_fact = 1.0;
    for m in 1..n {
        inv_fact /= m as f64;
    }
    // |y| ≤ 1/2, so 40 terms are far below machine precision; odd h_j may
    // vanish for symmetric points, so there is no early exit.
    let mut sum = 0.0;
    for (j, hj) in h.iter().enumerate() {
        sum += hj * inv_fact;
        inv_fact /= (n + j) as f64;
    }
    c.exp() * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn three_distinct_rates_vanish_at_origin() {
        let h = Hypoexponential::new(&[1.0, 2.0, 3.0]).unwrap();
        assert!(h.pdf(0.0).abs() < 1e-15);
    }

    #[test]
    fn single_stage_is_exponential() {
        let h = Hypoexponential::new(&[2.0]).unwrap();
        assert_eq!(h.pdf(0.0), 2.0);
        assert!(close(h.pdf(0.7), 2.0 * (-1.4_f64).exp(), 1e-15));
    }

    #[test]
    fn equal_rates_give_erlang() {
        let h = Hypoexponential::new(&[1.0, 1.0]).unwrap();
        assert!(h.is_degenerate());
        assert!(close(h.pdf(1.0), (-1.0_f64).exp(), 1e-14));
        assert!(close(h.pdf(1.0), 0.367_879_441_171_442_3, 1e-12));

        let e3 = Hypoexponential::new(&[2.0, 2.0, 2.0]).unwrap();
        let z: f64 = 1.3;
        let erlang3 = 8.0 * z * z * (-2.0 * z).exp() / 2.0;
        assert!(close(e3.pdf(z), erlang3, 1e-13));
    }

    #[test]
    fn divided_difference_matches_partial_fractions_when_distinct() {
        let h = Hypoexponential::new(&[0.3, 1.7, 5.0]).unwrap();
        for &z in &[0.01, 0.2, 1.0, 3.0, 12.0] {
            let pf = h.pdf_partial_fraction(z);
            let dd = h.pdf_divided_difference(z);
            assert!(close(dd, pf, 1e-12), "z={z}: {dd} vs {pf}");
        }
    }

    #[test]
    fn mixed_degenerate_pair_plus_distinct() {
        // Erlang(2, μ) + Exp(ν) by direct convolution
        let (mu, nu) = (1.5_f64, 4.0_f64);
        let h = Hypoexponential::new(&[mu, mu, nu]).unwrap();
        let z: f64 = 0.8;
        let d = nu - mu;
        let expected = mu * mu * nu * ((-mu * z).exp() * (z / d - 1.0 / (d * d)) + (-nu * z).exp() / (d * d));
        assert!(close(h.pdf(z), expected, 1e-12), "{} vs {expected}", h.pdf(z));
    }

    #[test]
    fn near_degenerate_is_continuous() {
        let z = 0.9;
        let exact = Hypoexponential::new(&[1.0, 1.0, 2.0]).unwrap().pdf(z);
        for rel in [1e-6, -1e-6, 1e-10] {
            let h = Hypoexponential::new(&[1.0, 1.0 + rel, 2.0]).unwrap();
            assert!((h.pdf(z) - exact).abs() < 1e-6);
        }
    }

    #[test]
    fn routes_agree_at_switch_gap() {
        for gap in [2e-3, 1e-3, 5e-4] {
            let h = Hypoexponential::new(&[0.7, 0.7 * (1.0 + gap), 3.0]).unwrap();
            for z in [0.5, 2.0, 10.0, 40.0] {
                let (pf, dd) = (h.pdf_partial_fraction(z), h.pdf_divided_difference(z));
                assert!(close(pf, dd, 1e-9), "gap {gap} z {z}: {pf} vs {dd}");
            }
        }
    }

    #[test]
    fn laplace_forms_agree() {
        let h = Hypoexponential::new(&[0.5, 2.0, 9.0]).unwrap();
        let s = 0.37;
        let product: f64 = h.rates().iter().map(|l| l / (l + s)).product();
        assert!(close(h.laplace(s), product, 1e-14));
        assert_eq!(h.laplace_complement(0.0), 0.0);
    }

    #[test]
    fn wide_spread_divided_difference() {
        // exp[a, b] for a far apart pair
        let (a, b) = (-40.0_f64, -2.0_f64);
        let expected = (b.exp() - a.exp()) / (b - a);
        assert!(close(exp_divided_difference(&[a, b]), expected, 1e-14));
        let (a, b, c) = (-30.0_f64, -29.5_f64, -1.0_f64);
        let d1 = (b.exp() - a.exp()) / (b - a);
        let d2 = (c.exp() - b.exp()) / (c - b);
        assert!(close(exp_divided_difference(&[c, a, b]), (d2 - d1) / (c - a), 1e-12));
    }

    #[test]
    fn rejects_bad_rate_sets() {
        assert!(Hypoexponential::new(&[]).is_err());
        assert!(Hypoexponential::new(&[1.0, -1.0]).is_err());
        assert!(Hypoexponential::new(&[1.0, 2.0, 3.0, 4.0]).is_err());
    }
}
