//! Closed-form exact and high-SNR outage probabilities, diversity-order
//! estimation and delay-limited throughput.
//!
//! The exact expressions factor into a relay-slot term and a user-slot term:
//!
//! * `x_l`: `P = 1 − J₁·J₂`, where `J₁ = e^(−β_l/Ω_l)·E[e^(−β_l Z/Ω_l)]` with
//!   `Z` the hypoexponential interference at the relay and `J₂` the
//!   probability that `D_k` decodes `x_t` and then `x_l`;
//! * `x_t`: `P = 1 − Θ₁·Θ₂·Θ₃`, where `Θ₁` couples the two relay decoding
//!   stages through `Z′` and `Θ₂ = e^(−ξ_t/Ω_k)`, `Θ₃ = e^(−ξ_t/Ω_r)`.
//!
//! Both are assembled in the log domain, `P = −expm1(ln J₁ + ln J₂)`, so small
//! outage probabilities keep their relative accuracy. `Z`'s transform uses the
//! `Φ` partial fractions for three distinct rates and the product form
//! `Πλᵢ/(λᵢ+s)` when rates are degenerate or fewer terms are active.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypoexp::rates_degenerate;
use crate::model::{build_derived_constants, DerivedConstants, PairRoles, SicMode, SystemConfig};

/// Raw probabilities within this distance of `[0, 1]` are clamped; larger
/// excursions are reported as numeric errors.
pub const CLAMP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SignalKind {
    /// `x_l`, the near user's message.
    #[serde(rename = "x_l")]
    Strong,
    /// `x_t`, the distant user's message.
    #[serde(rename = "x_t")]
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Closed,
    Asymptotic,
}

/// Where the high-SNR expressions are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticPoint {
    /// At the configured `ρ`.
    AtRho,
    /// The `ρ → ∞` error floor.
    AtInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageValue {
    pub probability: f64,
    pub method: Method,
    pub mode: SicMode,
    pub signal: SignalKind,
    pub roles: PairRoles,
}

pub fn checked_probability(raw: f64, what: &str) -> Result<f64> {
    if !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&raw) {
        return Err(Error::numeric(format!("{what} = {raw} lies outside [0,1]")));
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// `1 − E[e^(−sZ)]` for the relay interference `Z` with active rates `rates`.
///
/// Distinct rates go through partial fractions with weights `wᵢ`, so that
/// `1 − L(s) = Σ wᵢ s/(λᵢ + s)`; with `phi` given (three rates) the weights are
/// `w = (λ₂λ₃Φ₁, −λ₁λ₃Φ₂, λ₁λ₂Φ₃)`.
fn interference_laplace_complement(rates: &[f64], phi: Option<[f64; 3]>, s: f64) -> f64 {
    if s == 0.0 || rates.is_empty() {
        return 0.0;
    }
    match (rates, phi) {
        (&[l1, l2, l3], Some([p1, p2, p3])) => {
            let w = [l2 * l3 * p1, -l1 * l3 * p2, l1 * l2 * p3];
            w.iter().zip(rates).map(|(w, l)| w * s / (l + s)).sum()
        }
        (&[l1, l2], None) if !rates_degenerate(rates) => {
            let d = l2 - l1;
            l2 / d * s / (l1 + s) - l1 / d * s / (l2 + s)
        }
        _ => {
            let log_l: f64 = rates.iter().map(|l| -(s / l).ln_1p()).sum();
            -log_l.exp_m1()
        }
    }
}

fn phi_of(rates: &[f64]) -> Option<[f64; 3]> {
    match rates {
        &[l1, l2, l3] if !rates_degenerate(rates) => Some([
            1.0 / ((l2 - l1) * (l3 - l1)),
            1.0 / ((l3 - l2) * (l2 - l1)),
            1.0 / ((l3 - l1) * (l3 - l2)),
        ]),
        _ => None,
    }
}

fn ln_1m(x: f64) -> f64 {
    (-x).ln_1p()
}

/// `ln E[e^(−sZ)]`, from the complement while it is small and directly otherwise.
fn ln_interference_laplace(rates: &[f64], phi: Option<[f64; 3]>, s: f64) -> f64 {
    let miss = interference_laplace_complement(rates, phi, s);
    if miss <= 0.5 {
        ln_1m(miss)
    } else {
        interference_laplace(rates, s).ln()
    }
}

/// `ln J₁`.
fn ln_j1(dc: &DerivedConstants) -> f64 {
    let s = dc.beta_l / dc.omega_l;
    -s + ln_interference_laplace(&dc.lambda, dc.phi, s)
}

/// `ln J₂`; requires both user-side thresholds to be feasible.
fn ln_j2(dc: &DerivedConstants, tau: f64, theta: f64) -> f64 {
    let base = -theta / dc.omega_k;
    if dc.sic == SicMode::Perfect || tau == 0.0 {
        return base;
    }
    // ε ρ τ Ω_I, the residual-SIC scale
    let m = dc.sic.epsilon() * dc.rho * tau * dc.omega_i;
    let c = m / (dc.omega_k + m);
    base + ln_1m(c * (-(theta - tau) / m).exp())
}

/// Exact outage of `x_l` (ipSIC or pSIC per the configuration).
pub fn outage_xl(config: &SystemConfig, roles: PairRoles) -> Result<OutageValue> {
    let dc = build_derived_constants(config, roles)?;
    let raw = match (dc.tau_l, dc.theta_l) {
        (Some(tau), Some(theta)) => -(ln_j1(&dc) + ln_j2(&dc, tau, theta)).exp_m1(),
        _ => 1.0,
    };
    Ok(OutageValue {
        probability: checked_probability(raw, "outage of x_l")?,
        method: Method::Closed,
        mode: config.sic,
        signal: SignalKind::Strong,
        roles,
    })
}

/// `ln Θ₁`.
fn ln_theta1(dc: &DerivedConstants) -> f64 {
    let eps = dc.sic.epsilon();
    let s = (dc.beta_l + dc.beta_t * dc.omega_l * dc.varphi_t) / dc.omega_l;
    // φ_t Ω_t = 1 + ρ β_l a_t Ω_t / Ω_l = 1 + β_l / (λ₁ Ω_l)
    let ln_phi_omega_t = (dc.beta_l / (dc.lambda[0] * dc.omega_l)).ln_1p();
    let ln_residual = (eps * dc.rho * dc.beta_t * dc.varphi_t * dc.omega_i).ln_1p();
    -ln_phi_omega_t - ln_residual - dc.beta_l / dc.omega_l - dc.beta_t * dc.varphi_t
        + ln_interference_laplace(&dc.lambda_p, None, s)
}

/// Exact outage of `x_t` (ipSIC or pSIC per the configuration).
pub fn outage_xt(config: &SystemConfig, roles: PairRoles) -> Result<OutageValue> {
    let dc = build_derived_constants(config, roles)?;
    let raw = match dc.xi_t {
        Some(xi) => {
            let ln_theta23 = -xi / dc.omega_k - xi / dc.omega_r;
            -(ln_theta1(&dc) + ln_theta23).exp_m1()
        }
        None => 1.0,
    };
    Ok(OutageValue {
        probability: checked_probability(raw, "outage of x_t")?,
        method: Method::Closed,
        mode: config.sic,
        signal: SignalKind::Weak,
        roles,
    })
}

pub fn outage_closed(config: &SystemConfig, roles: PairRoles, signal: SignalKind) -> Result<OutageValue> {
    match signal {
        SignalKind::Strong => outage_xl(config, roles),
        SignalKind::Weak => outage_xt(config, roles),
    }
}

/// `Πλᵢ · Σ ±Φᵢ/(λᵢ + s)` (or its two-term / product analogue), evaluated
/// directly rather than as a complement.
fn interference_laplace(rates: &[f64], s: f64) -> f64 {
    if s == 0.0 {
        return 1.0;
    }
    match (rates, phi_of(rates)) {
        ([], _) => 1.0,
        (&[l1, l2, l3], Some([p1, p2, p3])) => l1 * l2 * l3 * (p1 / (l1 + s) - p2 / (l2 + s) + p3 / (l3 + s)),
        (&[l1, l2], _) if !rates_degenerate(rates) => l1 * l2 / (l2 - l1) * (1.0 / (l1 + s) - 1.0 / (l2 + s)),
        _ => rates.iter().map(|l| l / (l + s)).product(),
    }
}

/// High-SNR outage of `x_l`. With [`AsymptoticPoint::AtRho`] the expressions
/// obtained from `e^(−x) ≈ 1 − x` are evaluated as they stand at the
/// configured `ρ`. Every `λᵢ` and `β` scales as `1/ρ` and the first-order
/// terms cancel, so both points give the same error floor up to rounding.
pub fn outage_xl_asymptotic(config: &SystemConfig, roles: PairRoles, point: AsymptoticPoint) -> Result<OutageValue> {
    let dc = build_derived_constants(config, roles)?;
    let raw = match (dc.tau_l, dc.theta_l) {
        (Some(tau), Some(theta)) => {
            let (rates, s) = match point {
                AsymptoticPoint::AtRho => (dc.lambda.clone(), dc.beta_l / dc.omega_l),
                AsymptoticPoint::AtInfinity => (
                    dc.lambda.iter().map(|l| l * dc.rho).collect(),
                    dc.rho * dc.beta_l / dc.omega_l,
                ),
            };
            let relay = interference_laplace(&rates, s);
            let user = match (config.sic, point) {
                (SicMode::Perfect, _) => 1.0,
                (SicMode::Imperfect, _) if tau == 0.0 => match point {
                    AsymptoticPoint::AtRho => 1.0 - theta / dc.omega_k,
                    AsymptoticPoint::AtInfinity => 1.0,
                },
                (SicMode::Imperfect, AsymptoticPoint::AtRho) => {
                    let m = dc.rho * tau * dc.omega_i;
                    let c = m / (dc.omega_k + m);
                    1.0 - theta / dc.omega_k - c * (1.0 - theta * (dc.omega_k + m) / (m * dc.omega_k))
                }
                (SicMode::Imperfect, AsymptoticPoint::AtInfinity) => {
                    let m = dc.rho * tau * dc.omega_i;
                    1.0 - m / (dc.omega_k + m)
                }
            };
            1.0 - relay * user
        }
        _ => 1.0,
    };
    Ok(OutageValue {
        probability: checked_probability(raw, "asymptotic outage of x_l")?,
        method: Method::Asymptotic,
        mode: config.sic,
        signal: SignalKind::Strong,
        roles,
    })
}

/// High-SNR outage of `x_t`; see [`outage_xl_asymptotic`].
pub fn outage_xt_asymptotic(config: &SystemConfig, roles: PairRoles, point: AsymptoticPoint) -> Result<OutageValue> {
    let dc = build_derived_constants(config, roles)?;
    let raw = if dc.feasible_t {
        let scale = match point {
            AsymptoticPoint::AtRho => 1.0,
            AsymptoticPoint::AtInfinity => dc.rho,
        };
        let rates: Vec<f64> = dc.lambda_p.iter().map(|l| l * scale).collect();
        let (beta_l, beta_t) = (dc.beta_l * scale, dc.beta_t * scale);
        let s = (beta_l + beta_t * dc.omega_l * dc.varphi_t) / dc.omega_l;
        let residual = 1.0 + dc.sic.epsilon() * dc.rho * dc.beta_t * dc.varphi_t * dc.omega_i;
        let phi_omega_t = 1.0 + dc.beta_l / (dc.lambda[0] * dc.omega_l);
        1.0 - interference_laplace(&rates, s) / (phi_omega_t * residual)
    } else {
        1.0
    };
    Ok(OutageValue {
        probability: checked_probability(raw, "asymptotic outage of x_t")?,
        method: Method::Asymptotic,
        mode: config.sic,
        signal: SignalKind::Weak,
        roles,
    })
}

pub fn outage_asymptotic(
    config: &SystemConfig,
    roles: PairRoles,
    signal: SignalKind,
    point: AsymptoticPoint,
) -> Result<OutageValue> {
    match signal {
        SignalKind::Strong => outage_xl_asymptotic(config, roles, point),
        SignalKind::Weak => outage_xt_asymptotic(config, roles, point),
    }
}

/// Log-log slope `−Δln P / Δln ρ` between two high-SNR points (dB inputs,
/// linear `ρ` in the slope).
pub fn diversity_order_estimate<F>(mut outage: F, rho_lo_db: f64, rho_hi_db: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(rho_lo_db >= 40.0 && rho_hi_db > rho_lo_db) {
        return Err(Error::config(format!(
            "diversity estimate needs 40 dB <= rho_lo < rho_hi, got {rho_lo_db} and {rho_hi_db}"
        )));
    }
    let p_lo = outage(rho_lo_db)?;
    let p_hi = outage(rho_hi_db)?;
    for (p, rho_db) in [(p_lo, rho_lo_db), (p_hi, rho_hi_db)] {
        if p.is_nan() || p <= 0.0 {
            return Err(Error::UndefinedDiversity { rho_db });
        }
    }
    let ln_rho = |db: f64| db / 10.0 * std::f64::consts::LN_10;
    Ok(-(p_hi.ln() - p_lo.ln()) / (ln_rho(rho_hi_db) - ln_rho(rho_lo_db)))
}

/// `Σᵢ (1 − P_xᵢ)·Rᵢ` in BPCU, with outages ordered `x₁..x₄`.
pub fn throughput_delay_limited(config: &SystemConfig, outage: [f64; 4]) -> f64 {
    outage.iter().zip(&config.rates).map(|(p, r)| (1.0 - p) * r).sum()
}

/// Exact outages of `x₁..x₄` in that order.
pub fn outage_all_closed(config: &SystemConfig) -> Result<[f64; 4]> {
    Ok([
        outage_xl(config, PairRoles::G1_TO_G2)?.probability,
        outage_xt(config, PairRoles::G1_TO_G2)?.probability,
        outage_xl(config, PairRoles::G2_TO_G1)?.probability,
        outage_xt(config, PairRoles::G2_TO_G1)?.probability,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    const G12: PairRoles = PairRoles::G1_TO_G2;

    fn table(rho_db: f64, sic: SicMode) -> SystemConfig {
        SystemConfig::table_one().with_rho_db(rho_db).with_sic(sic)
    }

    #[test]
    fn zero_rates_never_outage() {
        for sic in SicMode::BOTH {
            let cfg = table(10.0, sic).with_rates([0.0; 4]);
            for roles in [PairRoles::G1_TO_G2, PairRoles::G2_TO_G1] {
                assert_eq!(outage_xl(&cfg, roles).unwrap().probability, 0.0);
                assert_eq!(outage_xt(&cfg, roles).unwrap().probability, 0.0);
                for point in [AsymptoticPoint::AtRho, AsymptoticPoint::AtInfinity] {
                    assert_eq!(outage_xl_asymptotic(&cfg, roles, point).unwrap().probability, 0.0);
                    assert_eq!(outage_xt_asymptotic(&cfg, roles, point).unwrap().probability, 0.0);
                }
            }
        }
    }

    #[test]
    fn infeasible_splits_give_certain_outage() {
        let mut cfg = table(30.0, SicMode::Imperfect).with_varpi(0.01, 0.5);
        cfg.b = [0.001, 0.999, 0.2, 0.8];
        assert_eq!(outage_xl(&cfg, G12).unwrap().probability, 1.0);

        // b_t ≤ (b_l + ϖ₂) γ_th_t
        let mut cfg = table(30.0, SicMode::Perfect).with_rates([0.1, 1.0, 0.1, 0.01]);
        cfg.b = [0.45, 0.55, 0.2, 0.8];
        let dc = build_derived_constants(&cfg, G12).unwrap();
        assert!(!dc.feasible_t);
        assert_eq!(outage_xt(&cfg, G12).unwrap().probability, 1.0);
        assert_eq!(outage_xl(&cfg, G12).unwrap().probability, 1.0);
        assert_eq!(
            outage_xt_asymptotic(&cfg, G12, AsymptoticPoint::AtInfinity)
                .unwrap()
                .probability,
            1.0
        );
    }

    #[test]
    fn psic_floor_ignores_residual_variance() {
        let a = table(40.0, SicMode::Perfect).with_omega_i_db(-20.0);
        let b = table(40.0, SicMode::Perfect).with_omega_i_db(-3.0);
        for point in [AsymptoticPoint::AtRho, AsymptoticPoint::AtInfinity] {
            assert_eq!(
                outage_xl_asymptotic(&a, G12, point).unwrap().probability,
                outage_xl_asymptotic(&b, G12, point).unwrap().probability
            );
        }
    }

    #[test]
    fn asymptotic_expressions_are_the_floor() {
        for sic in SicMode::BOTH {
            for signal in [SignalKind::Strong, SignalKind::Weak] {
                let floor = outage_asymptotic(&table(30.0, sic), G12, signal, AsymptoticPoint::AtInfinity)
                    .unwrap()
                    .probability;
                for rho_db in [-10.0, 0.0, 30.0, 60.0] {
                    let p = outage_asymptotic(&table(rho_db, sic), G12, signal, AsymptoticPoint::AtRho)
                        .unwrap()
                        .probability;
                    assert!(
                        (p - floor).abs() <= 1e-12,
                        "{sic} {signal:?} at {rho_db} dB: {p} vs {floor}"
                    );
                }
            }
        }
    }

    #[test]
    fn asymptotic_tracks_exact_at_high_snr() {
        for sic in SicMode::BOTH {
            let cfg = table(60.0, sic);
            let exact = outage_xl(&cfg, G12).unwrap().probability;
            let asym = outage_xl_asymptotic(&cfg, G12, AsymptoticPoint::AtRho)
                .unwrap()
                .probability;
            assert!((exact - asym).abs() / exact < 0.02, "{sic}: {exact} vs {asym}");
            let exact = outage_xt(&cfg, G12).unwrap().probability;
            let asym = outage_xt_asymptotic(&cfg, G12, AsymptoticPoint::AtRho)
                .unwrap()
                .probability;
            assert!((exact - asym).abs() / exact < 0.02, "{sic}: {exact} vs {asym}");
        }
    }

    #[test]
    fn reduced_terms_without_relay_interference() {
        let cfg = table(60.0, SicMode::Perfect).with_varpi(0.0, 0.0);
        let dc = build_derived_constants(&cfg, G12).unwrap();
        assert!(dc.lambda_p.is_empty());
        let p = outage_xt_asymptotic(&cfg, G12, AsymptoticPoint::AtRho)
            .unwrap()
            .probability;
        assert!(p > 0.0 && p < 1.0);
        let exact = outage_xt(&cfg, G12).unwrap().probability;
        assert!((exact - p).abs() / exact < 0.02, "{exact} vs {p}");
    }

    #[test]
    fn phi_form_matches_product_form() {
        let rates = [0.7, 2.5, 11.0];
        let phi = phi_of(&rates);
        assert!(phi.is_some());
        for s in [1e-6, 0.3, 5.0] {
            let pf = interference_laplace_complement(&rates, phi, s);
            let prod = interference_laplace_complement(&rates, None, s);
            assert!((pf - prod).abs() <= 1e-13 * prod, "{pf} vs {prod}");
            assert!((interference_laplace(&rates, s) - (1.0 - prod)).abs() < 1e-14);
        }
    }

    #[test]
    fn diversity_slopes() {
        let flat = diversity_order_estimate(|_| Ok(0.3), 40.0, 50.0).unwrap();
        assert!(flat.abs() < 1e-15);
        let unit = diversity_order_estimate(|db| Ok(10f64.powf(-db / 10.0)), 50.0, 60.0).unwrap();
        assert!((unit - 1.0).abs() < 1e-12);
        assert!(matches!(
            diversity_order_estimate(|_| Ok(0.0), 50.0, 60.0),
            Err(Error::UndefinedDiversity { .. })
        ));
        assert!(diversity_order_estimate(|_| Ok(0.1), 30.0, 60.0).is_err());
        assert!(diversity_order_estimate(|_| Ok(0.1), 60.0, 50.0).is_err());
    }

    #[test]
    fn ipsic_error_floor_has_zero_diversity() {
        let d = diversity_order_estimate(
            |db| Ok(outage_xl(&table(db, SicMode::Imperfect), G12)?.probability),
            50.0,
            60.0,
        )
        .unwrap();
        assert!(d.abs() < 0.05, "{d}");
    }

    #[test]
    fn throughput_arithmetic() {
        let cfg = SystemConfig::table_one();
        assert!((throughput_delay_limited(&cfg, [0.0; 4]) - 0.22).abs() < 1e-15);
        assert_eq!(throughput_delay_limited(&cfg, [1.0; 4]), 0.0);
        assert!((throughput_delay_limited(&cfg, [0.5, 0.0, 0.5, 0.0]) - 0.12).abs() < 1e-15);
    }

    #[test]
    fn clamp_gate() {
        assert_eq!(checked_probability(1.0 + 5e-13, "p").unwrap(), 1.0);
        assert_eq!(checked_probability(-5e-13, "p").unwrap(), 0.0);
        assert!(checked_probability(1.0 + 1e-9, "p").is_err());
        assert!(checked_probability(f64::NAN, "p").is_err());
    }
}
