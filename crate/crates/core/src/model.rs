//! Scenario configuration, role indexing, derived constants and channel
//! sampling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypoexp::rates_degenerate;

/// Power-split sum tolerance (`b₁ + b₂ = 1`).
const SPLIT_SUM_TOL: f64 = 1e-12;

/// The single dB → linear conversion point.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Target SINR for a rate `R` in BPCU over the two-slot exchange.
pub fn target_sinr(rate: f64) -> f64 {
    (2.0 * rate).exp2() - 1.0
}

/// Channel power gains `Ωᵢ = dᵢ^(−α)` for near users (`d₁`, users 1 and 3)
/// and distant users (`d₂`, users 2 and 4).
pub fn omega_from_distances(d_near: f64, d_far: f64, alpha: f64) -> [f64; 4] {
    let near = d_near.powf(-alpha);
    let far = d_far.powf(-alpha);
    [near, far, near, far]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SicMode {
    /// Residual interference `ε|g|²` with `ε = 1`.
    #[serde(rename = "ipSIC")]
    Imperfect,
    #[serde(rename = "pSIC")]
    Perfect,
}

impl SicMode {
    pub const BOTH: [SicMode; 2] = [SicMode::Imperfect, SicMode::Perfect];

    pub fn epsilon(self) -> f64 {
        match self {
            SicMode::Imperfect => 1.0,
            SicMode::Perfect => 0.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SicMode::Imperfect => "ipSIC",
            SicMode::Perfect => "pSIC",
        }
    }
}

impl fmt::Display for SicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SicMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ip" | "ipsic" | "imperfect" | "1" => Ok(SicMode::Imperfect),
            "p" | "psic" | "perfect" | "0" => Ok(SicMode::Perfect),
            other => Err(Error::config(format!(
                "SIC mode must be ipSIC (ε=1) or pSIC (ε=0), got {other:?}"
            ))),
        }
    }
}

/// Full scenario parameterization. Indices `0..4` correspond to users
/// `D₁..D₄`; `D₁`,`D₂` form group `G₁` and `D₃`,`D₄` form `G₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    /// Transmit SNR `ρ = P_u/N₀` in dB, shared by both slots.
    pub rho_db: f64,
    /// Uplink power coefficients `a₁..a₄`.
    pub a: [f64; 4],
    /// Relay downlink power coefficients `b₁..b₄`.
    pub b: [f64; 4],
    /// Channel variances `Ω₁..Ω₄` (linear).
    pub omega: [f64; 4],
    /// Residual-SIC interference variance `Ω_I` in dB.
    pub omega_i_db: f64,
    /// Interference-signal level at the relay.
    pub varpi1: f64,
    /// Interference-signal level at the users.
    pub varpi2: f64,
    /// Target rates `R₁..R₄` in BPCU.
    pub rates: [f64; 4],
    pub sic: SicMode,
}

impl SystemConfig {
    /// Reference scenario: `b₁=b₃=0.2`, `R₁=R₃=0.1`, `R₂=R₄=0.01` BPCU,
    /// `a₁=a₃=0.8`, `d₁=2 m`, `d₂=10 m`, `α=2`, `ϖ₁=ϖ₂=0.01`, `Ω_I=−20 dB`,
    /// ipSIC at 30 dB.
    pub fn table_one() -> Self {
        Self {
            rho_db: 30.0,
            a: [0.8, 0.2, 0.8, 0.2],
            b: [0.2, 0.8, 0.2, 0.8],
            omega: omega_from_distances(2.0, 10.0, 2.0),
            omega_i_db: -20.0,
            varpi1: 0.01,
            varpi2: 0.01,
            rates: [0.1, 0.01, 0.1, 0.01],
            sic: SicMode::Imperfect,
        }
    }

    pub fn with_rho_db(mut self, rho_db: f64) -> Self {
        self.rho_db = rho_db;
        self
    }

    pub fn with_sic(mut self, sic: SicMode) -> Self {
        self.sic = sic;
        self
    }

    pub fn with_varpi(mut self, varpi1: f64, varpi2: f64) -> Self {
        self.varpi1 = varpi1;
        self.varpi2 = varpi2;
        self
    }

    pub fn with_omega_i_db(mut self, omega_i_db: f64) -> Self {
        self.omega_i_db = omega_i_db;
        self
    }

    pub fn with_rates(mut self, rates: [f64; 4]) -> Self {
        self.rates = rates;
        self
    }

    pub fn rho(&self) -> f64 {
        db_to_linear(self.rho_db)
    }

    pub fn omega_i(&self) -> f64 {
        db_to_linear(self.omega_i_db)
    }

    pub fn gamma_th(&self) -> [f64; 4] {
        self.rates.map(target_sinr)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.rho_db.is_finite() {
            return Err(Error::config(format!("rho_db must be finite, got {}", self.rho_db)));
        }
        for (name, coeffs) in [("a", &self.a), ("b", &self.b)] {
            for (i, &c) in coeffs.iter().enumerate() {
                if !(c > 0.0 && c < 1.0) {
                    return Err(Error::config(format!("{name}{} must lie in (0,1), got {c}", i + 1)));
                }
            }
        }
        for (lo, hi) in [(0, 1), (2, 3)] {
            let sum = self.b[lo] + self.b[hi];
            if (sum - 1.0).abs() > SPLIT_SUM_TOL {
                return Err(Error::config(format!(
                    "b{} + b{} must equal 1, got {sum}",
                    lo + 1,
                    hi + 1
                )));
            }
            if self.b[hi] <= self.b[lo] {
                return Err(Error::config(format!(
                    "distant user needs the larger downlink share: b{} = {} must exceed b{} = {}",
                    hi + 1,
                    self.b[hi],
                    lo + 1,
                    self.b[lo]
                )));
            }
        }
        for (i, &o) in self.omega.iter().enumerate() {
            if !(o.is_finite() && o > 0.0) {
                return Err(Error::config(format!("omega{} must be positive, got {o}", i + 1)));
            }
        }
        if self.sic == SicMode::Imperfect && !(self.omega_i_db.is_finite()) {
            return Err(Error::config(format!(
                "omega_i_db must be finite under ipSIC, got {}",
                self.omega_i_db
            )));
        }
        for (name, w) in [("varpi1", self.varpi1), ("varpi2", self.varpi2)] {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::config(format!("{name} must lie in [0,1], got {w}")));
            }
        }
        for (i, &r) in self.rates.iter().enumerate() {
            if !(r.is_finite() && r >= 0.0) {
                return Err(Error::config(format!(
                    "r{} must be a non-negative rate, got {r}",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

/// Index mapping that lets one code path serve both groups: `x_l` is the
/// near-user (strong uplink) signal, `x_t` the distant-user signal of the
/// transmitting group, `D_k`/`D_r` the near/distant users of the other group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairRoles {
    pub l: usize,
    pub t: usize,
    pub k: usize,
    pub r: usize,
}

impl PairRoles {
    /// Messages of `G₁` delivered to `G₂`: `(l,t,k,r) = (1,2,3,4)`.
    pub const G1_TO_G2: PairRoles = PairRoles { l: 1, t: 2, k: 3, r: 4 };
    /// Messages of `G₂` delivered to `G₁`: `(l,t,k,r) = (3,4,1,2)`.
    pub const G2_TO_G1: PairRoles = PairRoles { l: 3, t: 4, k: 1, r: 2 };

    pub fn new(l: usize, t: usize, k: usize, r: usize) -> Result<Self> {
        let roles = PairRoles { l, t, k, r };
        roles.validate()?;
        Ok(roles)
    }

    pub fn validate(&self) -> Result<()> {
        let lk_ok = matches!((self.l, self.k), (1, 3) | (3, 1));
        let tr_ok = matches!((self.t, self.r), (2, 4) | (4, 2));
        let same_group = (self.l == 1 && self.t == 2) || (self.l == 3 && self.t == 4);
        if lk_ok && tr_ok && same_group {
            Ok(())
        } else {
            Err(Error::config(format!(
                "invalid role tuple (l,t,k,r) = ({},{},{},{})",
                self.l, self.t, self.k, self.r
            )))
        }
    }

    pub(crate) fn idx(user: usize) -> usize {
        user - 1
    }
}

impl fmt::Display for PairRoles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(l,t,k,r)=({},{},{},{})", self.l, self.t, self.k, self.r)
    }
}

/// One fading realization: `|h₁|²..|h₄|²` and the residual-SIC gain `|g|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSample {
    pub gains: [f64; 4],
    /// Zero under pSIC.
    pub residual: f64,
}

impl ChannelSample {
    /// Gain of user `i ∈ 1..=4`.
    pub fn gain(&self, user: usize) -> f64 {
        self.gains[PairRoles::idx(user)]
    }
}

/// Counter-based random stream. Stream `s` of seed `σ` is an independent
/// ChaCha8 keystream, so the `n`-th draw is a pure function of `(σ, s, n)`.
#[derive(Debug, Clone)]
pub struct RandomStream {
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    /// Exponential draw with the given mean.
    pub fn exponential(&mut self, mean: f64) -> f64 {
        let e: f64 = Exp1.sample(&mut self.rng);
        mean * e
    }
}

/// Draws `|h₁|²..|h₄|²` and, under ipSIC only, `|g|²`.
pub fn sample_channels(stream: &mut RandomStream, config: &SystemConfig) -> ChannelSample {
    let gains = config.omega.map(|o| stream.exponential(o));
    let residual = match config.sic {
        SicMode::Imperfect => stream.exponential(config.omega_i()),
        SicMode::Perfect => 0.0,
    };
    ChannelSample { gains, residual }
}

/// Theorem-level scalars for one role assignment, all in linear units.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedConstants {
    pub roles: PairRoles,
    pub sic: SicMode,
    pub rho: f64,
    pub omega_i: f64,
    pub omega_l: f64,
    pub omega_t: f64,
    pub omega_k: f64,
    pub omega_r: f64,
    /// `γ_thᵢ = 2^(2Rᵢ) − 1` for users 1..4.
    pub gamma_th: [f64; 4],
    /// Active rates of `Z`: `[λ₁]` when `ϖ₁ = 0`, else `[λ₁, λ₂, λ₃]`.
    pub lambda: Vec<f64>,
    /// `Φ₁, Φ₂, Φ₃`; present only for three pairwise-distinct rates.
    pub phi: Option<[f64; 3]>,
    pub beta_l: f64,
    pub beta_t: f64,
    /// `None` when `b_l ≤ ϖ₂γ_th_l`.
    pub tau_l: Option<f64>,
    /// `None` when `b_t ≤ (b_l + ϖ₂)γ_th_t`.
    pub xi_t: Option<f64>,
    /// `max(τ_l, ξ_t)`; `None` unless both are feasible.
    pub theta_l: Option<f64>,
    /// Active rates of `Z′`: empty when `ϖ₁ = 0`, else `[λ′₁, λ′₂]`.
    pub lambda_p: Vec<f64>,
    pub varphi_t: f64,
    pub feasible_l: bool,
    pub feasible_t: bool,
}

impl DerivedConstants {
    pub fn gamma_l(&self) -> f64 {
        self.gamma_th[PairRoles::idx(self.roles.l)]
    }

    pub fn gamma_t(&self) -> f64 {
        self.gamma_th[PairRoles::idx(self.roles.t)]
    }

    /// `λ₂, λ₃` are distinct enough for the `Φ` form.
    pub fn lambda_distinct(&self) -> bool {
        !rates_degenerate(&self.lambda)
    }
}

pub fn build_derived_constants(config: &SystemConfig, roles: PairRoles) -> Result<DerivedConstants> {
    config.validate()?;
    roles.validate()?;

    let rho = config.rho();
    let omega_i = config.omega_i();
    let i = PairRoles::idx;
    let (l, t, k, r) = (i(roles.l), i(roles.t), i(roles.k), i(roles.r));
    let (a, b, om) = (&config.a, &config.b, &config.omega);
    let gamma_th = config.gamma_th();
    let (g_l, g_t) = (gamma_th[l], gamma_th[t]);
    let w1 = config.varpi1;
    let w2 = config.varpi2;

    let lambda1 = 1.0 / (rho * a[t] * om[t]);
    let (lambda, lambda_p) = if w1 > 0.0 {
        let l2 = 1.0 / (rho * w1 * a[k] * om[k]);
        let l3 = 1.0 / (rho * w1 * a[r] * om[r]);
        (vec![lambda1, l2, l3], vec![l2, l3])
    } else {
        (vec![lambda1], Vec::new())
    };
    let phi = if lambda.len() == 3 && !rates_degenerate(&lambda) {
        let (l1, l2, l3) = (lambda[0], lambda[1], lambda[2]);
        Some([
            1.0 / ((l2 - l1) * (l3 - l1)),
            1.0 / ((l3 - l2) * (l2 - l1)),
            1.0 / ((l3 - l1) * (l3 - l2)),
        ])
    } else {
        None
    };

    let beta_l = g_l / (rho * a[l]);
    let beta_t = g_t / (rho * a[t]);

    let tau_den = b[l] - w2 * g_l;
    let feasible_l = tau_den > 0.0;
    let tau_l = feasible_l.then(|| g_l / (rho * tau_den));

    let xi_den = b[t] - (b[l] + w2) * g_t;
    let feasible_t = xi_den > 0.0;
    let xi_t = feasible_t.then(|| g_t / (rho * xi_den));

    let theta_l = match (tau_l, xi_t) {
        (Some(tau), Some(xi)) => Some(tau.max(xi)),
        _ => None,
    };

    let varphi_t = (om[l] + rho * beta_l * a[t] * om[t]) / (om[l] * om[t]);

    let dc = DerivedConstants {
        roles,
        sic: config.sic,
        rho,
        omega_i,
        omega_l: om[l],
        omega_t: om[t],
        omega_k: om[k],
        omega_r: om[r],
        gamma_th,
        lambda,
        phi,
        beta_l,
        beta_t,
        tau_l,
        xi_t,
        theta_l,
        lambda_p,
        varphi_t,
        feasible_l,
        feasible_t,
    };
    let finite = dc.lambda.iter().chain(&dc.lambda_p).all(|x| x.is_finite())
        && dc.beta_l.is_finite()
        && dc.beta_t.is_finite()
        && dc.varphi_t.is_finite();
    if !finite {
        return Err(Error::numeric(format!(
            "derived constants overflow at rho_db = {}",
            config.rho_db
        )));
    }
    Ok(dc)
}

/// A scenario read from a flat `key=value` file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub config: SystemConfig,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

const SCENARIO_KEYS: &[&str] = &[
    "rho_db",
    "a1",
    "a2",
    "a3",
    "a4",
    "b1",
    "b2",
    "b3",
    "b4",
    "omega1",
    "omega2",
    "omega3",
    "omega4",
    "d1",
    "d2",
    "alpha",
    "omega_i_db",
    "varpi1",
    "varpi2",
    "r1",
    "r2",
    "r3",
    "r4",
    "sic_mode",
    "trials",
    "seed",
];

impl ScenarioFile {
    /// Parses `key=value` lines; `#` starts a comment. Unspecified keys keep
    /// their [`SystemConfig::table_one`] values. Unknown or repeated keys and
    /// mixing `omegaN` with `d1`/`d2`/`alpha` are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<&str, &str> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if !SCENARIO_KEYS.contains(&key) {
                return Err(Error::config(format!("line {}: unknown key {key:?}", lineno + 1)));
            }
            if entries.insert(key, value).is_some() {
                return Err(Error::config(format!("line {}: duplicate key {key:?}", lineno + 1)));
            }
        }

        let num = |key: &str| -> Result<Option<f64>> {
            entries
                .get(key)
                .map(|v| {
                    v.parse::<f64>()
                        .map_err(|_| Error::config(format!("{key}: not a number: {v:?}")))
                })
                .transpose()
        };
        let int = |key: &str| -> Result<Option<u64>> {
            entries
                .get(key)
                .map(|v| {
                    v.parse::<u64>()
                        .map_err(|_| Error::config(format!("{key}: not a non-negative integer: {v:?}")))
                })
                .transpose()
        };

        let mut config = SystemConfig::table_one();
        if let Some(v) = num("rho_db")? {
            config.rho_db = v;
        }
        for idx in 0..4 {
            if let Some(v) = num(&format!("a{}", idx + 1))? {
                config.a[idx] = v;
            }
            if let Some(v) = num(&format!("b{}", idx + 1))? {
                config.b[idx] = v;
            }
            if let Some(v) = num(&format!("r{}", idx + 1))? {
                config.rates[idx] = v;
            }
        }

        let explicit_omega = (1..=4).any(|i| entries.contains_key(format!("omega{i}").as_str()));
        let geometric = ["d1", "d2", "alpha"].iter().any(|k| entries.contains_key(k));
        if explicit_omega && geometric {
            return Err(Error::config("give either omega1..omega4 or d1/d2/alpha, not both"));
        }
        if geometric {
            let d1 = num("d1")?.unwrap_or(2.0);
            let d2 = num("d2")?.unwrap_or(10.0);
            let alpha = num("alpha")?.unwrap_or(2.0);
            if !(d1 > 0.0 && d2 > 0.0 && alpha.is_finite()) {
                return Err(Error::config("distances must be positive and alpha finite"));
            }
            config.omega = omega_from_distances(d1, d2, alpha);
        }
        for idx in 0..4 {
            if let Some(v) = num(&format!("omega{}", idx + 1))? {
                config.omega[idx] = v;
            }
        }
        if let Some(v) = num("omega_i_db")? {
            config.omega_i_db = v;
        }
        if let Some(v) = num("varpi1")? {
            config.varpi1 = v;
        }
        if let Some(v) = num("varpi2")? {
            config.varpi2 = v;
        }
        if let Some(v) = entries.get("sic_mode") {
            config.sic = v.parse()?;
        }
        config.validate()?;

        Ok(Self {
            config,
            trials: int("trials")?,
            seed: int("seed")?,
        })
    }
}
