//! Quadrature evaluation of the outage integrals, independent of the closed
//! forms in [`crate::analysis`].
//!
//! Only the interference densities are shared ([`Hypoexponential::pdf`]); every
//! integral over them is computed numerically. Semi-infinite ranges
//! `[z₀, ∞)` are mapped onto `(0, 1]` by `z = z₀ + L(1 − u)/u`, where `L` is
//! the integrand's natural length scale, and integrated with adaptive Simpson
//! bisection.
//!
//! To keep small outage probabilities accurate the oracle integrates the
//! outage-side mass (`1 − J`) rather than the success probability `J`.

use crate::error::{Error, Result};
use crate::hypoexp::Hypoexponential;
use crate::model::{build_derived_constants, PairRoles, SicMode, SystemConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Budget of interval bisections across the whole integral.
    pub max_subdivisions: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 200_000,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_subdivisions > 0 {
            Ok(())
        } else {
            Err(Error::config(format!(
                "quadrature tolerances must be positive: {self:?}"
            )))
        }
    }
}

const INITIAL_PANELS: usize = 64;
const MAX_DEPTH: usize = 50;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<f64> {
    spec.validate()?;
    if a == b {
        return Ok(0.0);
    }
    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Oracle(format!("integrand is {v} at {x}")))
        }
    };

    let width = (b - a) / INITIAL_PANELS as f64;
    let mut nodes = Vec::with_capacity(2 * INITIAL_PANELS + 1);
    for i in 0..=2 * INITIAL_PANELS {
        let x = if i == 2 * INITIAL_PANELS {
            b
        } else {
            a + 0.5 * width * i as f64
        };
        nodes.push((x, eval(x)?));
    }
    let mut coarse = 0.0;
    let mut stack = Vec::with_capacity(INITIAL_PANELS);
    for p in 0..INITIAL_PANELS {
        let (x0, f0) = nodes[2 * p];
        let (_, f1) = nodes[2 * p + 1];
        let (x2, f2) = nodes[2 * p + 2];
        let whole = simpson(x0, x2, f0, f1, f2);
        coarse += whole;
        stack.push((x0, x2, f0, f1, f2, whole));
    }
    let total_tol = spec.abs_tol.max(spec.rel_tol * coarse.abs());

    let mut work: Vec<Panel> = stack
        .into_iter()
        .map(|(a, b, fa, fm, fb, whole)| Panel {
            a,
            b,
            fa,
            fm,
            fb,
            whole,
            tol: total_tol / INITIAL_PANELS as f64,
            depth: 0,
        })
        .collect();

    let mut sum = 0.0;
    let mut subdivisions = 0usize;
    while let Some(p) = work.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let (flm, frm) = (eval(lm)?, eval(rm)?);
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * p.tol {
            sum += left + right + delta / 15.0;
            continue;
        }
        subdivisions += 1;
        if subdivisions > spec.max_subdivisions || p.depth >= MAX_DEPTH {
            return Err(Error::Oracle(format!(
                "adaptive Simpson did not converge on [{a}, {b}] (tolerance {total_tol:e})"
            )));
        }
        let tol = 0.5 * p.tol;
        let depth = p.depth + 1;
        work.push(Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
            tol,
            depth,
        });
        work.push(Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
            tol,
            depth,
        });
    }
    Ok(sum)
}

/// `∫_{start}^∞ f(z) dz` via `z = start + scale·(1 − u)/u`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, start: f64, scale: f64, spec: &QuadSpec) -> Result<f64> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Oracle(format!("invalid length scale {scale}")));
    }
    let g = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let z = start + scale * (1.0 - u) / u;
        if !z.is_finite() {
            return 0.0;
        }
        let v = f(z) * scale / (u * u);
        // Far tail: exponential decay beats 1/u², but the product can be 0·∞.
        if v.is_nan() {
            0.0
        } else {
            v
        }
    };
    adaptive_simpson(g, 0.0, 1.0, spec)
}

/// `1 − E[e^(−sZ)] = ∫ f_Z(z)(1 − e^(−sz)) dz` by quadrature.
pub fn quad_laplace_complement(z: &Hypoexponential, s: f64, spec: &QuadSpec) -> Result<f64> {
    if s == 0.0 {
        return Ok(0.0);
    }
    integrate_semi_infinite(|x| z.pdf(x) * -(-s * x).exp_m1(), 0.0, z.mean(), spec)
}

/// `ln E[e^(−sZ)]`, integrating whichever of the transform and its
/// complement is the smaller mass so that neither side loses digits.
fn quad_ln_laplace(z: &Hypoexponential, s: f64, spec: &QuadSpec) -> Result<f64> {
    let miss = quad_laplace_complement(z, s, spec)?;
    if miss <= 0.5 {
        return Ok((-miss).ln_1p());
    }
    let hit = integrate_semi_infinite(|x| z.pdf(x) * (-s * x).exp(), 0.0, z.mean(), spec)?;
    Ok(hit.ln())
}

/// Outage of `x_l` from quadrature of `J₁` over the interference density
/// and of `J₂` over `|h_k|²`.
pub fn quad_outage_xl(config: &SystemConfig, roles: PairRoles, spec: &QuadSpec) -> Result<f64> {
    let dc = build_derived_constants(config, roles)?;
    let (tau, theta) = match (dc.tau_l, dc.theta_l) {
        (Some(tau), Some(theta)) => (tau, theta),
        _ => return Ok(1.0),
    };

    let z = Hypoexponential::new(&dc.lambda)?;
    let s = dc.beta_l / dc.omega_l;
    let ln_j1 = -s + quad_ln_laplace(&z, s, spec)?;

    // 1 − J₂: |h_k|² below θ, or above θ but the residual |g|² too strong.
    let omega_k = dc.omega_k;
    let below = adaptive_simpson(|y| (-y / omega_k).exp() / omega_k, 0.0, theta, spec)?;
    let residual = if dc.sic == SicMode::Imperfect && tau > 0.0 {
        let m = dc.rho * tau * dc.omega_i;
        let scale = 1.0 / (1.0 / omega_k + 1.0 / m);
        integrate_semi_infinite(|y| (-y / omega_k - (y - tau) / m).exp() / omega_k, theta, scale, spec)?
    } else {
        0.0
    };
    let miss = below + residual;
    let ln_j2 = if miss <= 0.5 {
        (-miss).ln_1p()
    } else {
        // success side, shifted to start at θ: e^(−θ/Ω_k)·∫ e^(−u/Ω_k)/Ω_k·(1 − P(residual too strong)) du
        let hit = if dc.sic == SicMode::Imperfect && tau > 0.0 {
            let m = dc.rho * tau * dc.omega_i;
            integrate_semi_infinite(
                |u| (-u / omega_k).exp() / omega_k * -(-(u + theta - tau) / m).exp_m1(),
                0.0,
                omega_k,
                spec,
            )?
        } else {
            integrate_semi_infinite(|u| (-u / omega_k).exp() / omega_k, 0.0, omega_k, spec)?
        };
        -theta / omega_k + hit.ln()
    };

    Ok((-(ln_j1 + ln_j2).exp_m1()).clamp(0.0, 1.0))
}

/// Outage of `x_t`: `Θ₁` by quadrature over the two-term density of `Z′`,
/// `Θ₂`, `Θ₃` exactly.
pub fn quad_outage_xt(config: &SystemConfig, roles: PairRoles, spec: &QuadSpec) -> Result<f64> {
    let dc = build_derived_constants(config, roles)?;
    let xi = match dc.xi_t {
        Some(xi) => xi,
        None => return Ok(1.0),
    };
    let eps = dc.sic.epsilon();
    let s = (dc.beta_l + dc.beta_t * dc.omega_l * dc.varphi_t) / dc.omega_l;
    let ln_laplace = if dc.lambda_p.is_empty() {
        0.0
    } else {
        quad_ln_laplace(&Hypoexponential::new(&dc.lambda_p)?, s, spec)?
    };
    let ln_prefactor = -(dc.varphi_t * dc.omega_t).ln()
        - (eps * dc.rho * dc.beta_t * dc.varphi_t * dc.omega_i).ln_1p()
        - dc.beta_l / dc.omega_l
        - dc.beta_t * dc.varphi_t;
    let ln_theta1 = ln_prefactor + ln_laplace;
    let ln_theta2 = -xi / dc.omega_k;
    let ln_theta3 = -xi / dc.omega_r;
    Ok((-(ln_theta1 + ln_theta2 + ln_theta3).exp_m1()).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_on_polynomial_and_exponential() {
        let spec = QuadSpec::default();
        let v = adaptive_simpson(|x| x * x * x, 0.0, 2.0, &spec).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let v = integrate_semi_infinite(|x| (-x).exp(), 0.0, 1.0, &spec).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
        let v = integrate_semi_infinite(|x| (-3.0 * x).exp(), 2.0, 1.0, &spec).unwrap();
        assert!((v - (-6.0f64).exp() / 3.0).abs() < 1e-10);
    }

    #[test]
    fn non_convergence_is_an_error() {
        let spec = QuadSpec {
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            max_subdivisions: 5,
        };
        let r = adaptive_simpson(|x: f64| (1.0 / (x + 1e-6)).sin(), 0.0, 1.0, &spec);
        assert!(matches!(r, Err(Error::Oracle(_))));
        assert!(adaptive_simpson(|x| x, 0.0, 1.0, &QuadSpec { abs_tol: 0.0, ..spec }).is_err());
    }

    #[test]
    fn densities_integrate_to_one() {
        let spec = QuadSpec::default();
        for rates in [
            vec![2.0],
            vec![0.5, 3.0],
            vec![1.0, 2.0, 3.0],
            vec![1.0, 1.0],
            vec![4.0, 4.0, 4.0],
            vec![500.0, 500.0, 50_000.0],
        ] {
            let h = Hypoexponential::new(&rates).unwrap();
            let total = integrate_semi_infinite(|z| h.pdf(z), 0.0, h.mean(), &spec).unwrap();
            assert!((total - 1.0).abs() <= 1e-8, "{rates:?}: {total}");
        }
    }

    #[test]
    fn single_term_j1_matches_analytic() {
        // ϖ₁ = 0, pSIC: J₁ = e^(−β/Ω_l) λ₁Ω_l / (Ω_lλ₁ + β)
        let cfg = SystemConfig::table_one()
            .with_varpi(0.0, 0.0)
            .with_sic(SicMode::Perfect)
            .with_rho_db(15.0);
        let dc = build_derived_constants(&cfg, PairRoles::G1_TO_G2).unwrap();
        let (l1, beta, om) = (dc.lambda[0], dc.beta_l, dc.omega_l);
        let analytic = (-beta / om).exp() * l1 * om / (om * l1 + beta);
        let z = Hypoexponential::new(&dc.lambda).unwrap();
        let spec = QuadSpec {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            ..QuadSpec::default()
        };
        let miss = quad_laplace_complement(&z, beta / om, &spec).unwrap();
        let j1 = (-beta / om).exp() * (1.0 - miss);
        assert!((j1 - analytic).abs() < 1e-10, "{j1} vs {analytic}");
    }

    #[test]
    fn zero_rates_zero_outage() {
        let cfg = SystemConfig::table_one().with_rates([0.0; 4]);
        let spec = QuadSpec::default();
        assert_eq!(quad_outage_xl(&cfg, PairRoles::G1_TO_G2, &spec).unwrap(), 0.0);
        assert_eq!(quad_outage_xt(&cfg, PairRoles::G2_TO_G1, &spec).unwrap(), 0.0);
    }

    #[test]
    fn tightening_tolerance_is_stable() {
        let cfg = SystemConfig::table_one().with_rho_db(20.0).with_varpi(0.1, 0.1);
        let loose = QuadSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-11,
            ..QuadSpec::default()
        };
        let tight = QuadSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            ..QuadSpec::default()
        };
        for f in [quad_outage_xl, quad_outage_xt] {
            let a = f(&cfg, PairRoles::G1_TO_G2, &loose).unwrap();
            let b = f(&cfg, PairRoles::G1_TO_G2, &tight).unwrap();
            assert!((a - b).abs() <= 1e-8 * b.abs().max(1e-3), "{a} vs {b}");
        }
    }
}
