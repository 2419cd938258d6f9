//! SNR sweeps, figure presets, the TWR-OMA reference and oracle validation.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    checked_probability, outage_asymptotic, outage_closed, throughput_delay_limited, AsymptoticPoint, SignalKind,
};
use crate::error::{Error, Result};
use crate::model::{omega_from_distances, PairRoles, SicMode, SystemConfig};
use crate::montecarlo::{mc_outage, DEFAULT_TRIALS};
use crate::oracle::{quad_outage_xl, quad_outage_xt, QuadSpec};

/// The four messages; `x₁`,`x₂` travel from `G₁` to `G₂`, `x₃`,`x₄` back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signal {
    X1,
    X2,
    X3,
    X4,
}

impl Signal {
    pub const ALL: [Signal; 4] = [Signal::X1, Signal::X2, Signal::X3, Signal::X4];

    pub fn roles(self) -> PairRoles {
        match self {
            Signal::X1 | Signal::X2 => PairRoles::G1_TO_G2,
            Signal::X3 | Signal::X4 => PairRoles::G2_TO_G1,
        }
    }

    pub fn kind(self) -> SignalKind {
        match self {
            Signal::X1 | Signal::X3 => SignalKind::Strong,
            Signal::X2 | Signal::X4 => SignalKind::Weak,
        }
    }

    /// User index `1..=4` of the message's source.
    pub fn user(self) -> usize {
        self as usize + 1
    }

    /// The user that must finally decode this message.
    pub fn destination(self) -> usize {
        let roles = self.roles();
        match self.kind() {
            SignalKind::Strong => roles.k,
            SignalKind::Weak => roles.r,
        }
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.user())
    }
}

impl FromStr for Signal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x1" | "1" => Ok(Signal::X1),
            "x2" | "2" => Ok(Signal::X2),
            "x3" | "3" => Ok(Signal::X3),
            "x4" | "4" => Ok(Signal::X4),
            other => Err(Error::config(format!("unknown signal {other:?} (expected x1..x4)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepMethod {
    Closed,
    Asymptotic,
    Mc,
    Quad,
    Oma,
}

impl SweepMethod {
    pub fn label(self) -> &'static str {
        match self {
            SweepMethod::Closed => "closed",
            SweepMethod::Asymptotic => "asymptotic",
            SweepMethod::Mc => "mc",
            SweepMethod::Quad => "quad",
            SweepMethod::Oma => "oma",
        }
    }
}

impl fmt::Display for SweepMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SweepMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "closed" => Ok(SweepMethod::Closed),
            "asymptotic" | "asym" => Ok(SweepMethod::Asymptotic),
            "mc" => Ok(SweepMethod::Mc),
            "quad" => Ok(SweepMethod::Quad),
            "oma" => Ok(SweepMethod::Oma),
            other => Err(Error::config(format!("unknown method {other:?}"))),
        }
    }
}

/// Time-division reference for the four-message exchange.
///
/// Every message crosses two hops (source → relay, relay → destination), each
/// in its own orthogonal phase, with full power and no inter-group
/// interference. With `N` equal phases a rate `R` needs SINR `2^(N·R) − 1` on
/// both hops:
///
/// ```text
/// P_oma = 1 − exp(−γ/(ρΩ_src)) · exp(−γ/(ρΩ_dst))
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmaBaseline {
    pub phases: u32,
}

impl Default for OmaBaseline {
    /// Four messages × two hops.
    fn default() -> Self {
        Self { phases: 8 }
    }
}

impl OmaBaseline {
    pub fn target_sinr(&self, rate: f64) -> f64 {
        (self.phases as f64 * rate).exp2() - 1.0
    }

    pub fn outage(&self, config: &SystemConfig, signal: Signal) -> f64 {
        let rate = config.rates[signal.user() - 1];
        let gamma = self.target_sinr(rate);
        if gamma == 0.0 {
            return 0.0;
        }
        let rho = config.rho();
        let src = config.omega[signal.user() - 1];
        let dst = config.omega[signal.destination() - 1];
        -(-gamma / (rho * src) - gamma / (rho * dst)).exp_m1()
    }
}

/// TWR-OMA outage with the default [`OmaBaseline`].
pub fn oma_outage(config: &SystemConfig, signal: Signal) -> f64 {
    OmaBaseline::default().outage(config, signal)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoGrid {
    pub min_db: f64,
    pub max_db: f64,
    pub step_db: f64,
}

impl RhoGrid {
    pub fn new(min_db: f64, max_db: f64, step_db: f64) -> Result<Self> {
        let grid = Self {
            min_db,
            max_db,
            step_db,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn single(rho_db: f64) -> Self {
        Self {
            min_db: rho_db,
            max_db: rho_db,
            step_db: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step_db > 0.0 && self.min_db.is_finite() && self.max_db.is_finite() && self.max_db >= self.min_db) {
            return Err(Error::config(format!(
                "SNR grid needs finite min <= max and step > 0, got {}..{} step {}",
                self.min_db, self.max_db, self.step_db
            )));
        }
        Ok(())
    }

    /// Grid points `min + i·step`, including `max` when it lies on the grid.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.max_db - self.min_db) / self.step_db + 1e-9).floor() as usize;
        (0..=n).map(|i| self.min_db + i as f64 * self.step_db).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub config: SystemConfig,
    pub grid: RhoGrid,
    pub methods: Vec<SweepMethod>,
    pub signals: Vec<Signal>,
    pub modes: Vec<SicMode>,
    pub trials: u64,
    pub seed: u64,
    pub quad: QuadSpec,
    pub oma: OmaBaseline,
}

impl SweepSpec {
    pub fn new(config: SystemConfig, grid: RhoGrid) -> Self {
        Self {
            config,
            grid,
            methods: vec![SweepMethod::Closed],
            signals: vec![Signal::X1, Signal::X2],
            modes: SicMode::BOTH.to_vec(),
            trials: DEFAULT_TRIALS,
            seed: 7,
            quad: QuadSpec::default(),
            oma: OmaBaseline::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.methods.is_empty() || self.signals.is_empty() || self.modes.is_empty() {
            return Err(Error::config("sweep needs at least one method, signal and SIC mode"));
        }
        self.quad.validate()
    }
}

/// One output row; the field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub rho_db: f64,
    pub signal: String,
    pub sic_mode: String,
    pub method: String,
    pub value: f64,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

impl CurveRow {
    fn point(rho_db: f64, signal: &str, mode: SicMode, method: SweepMethod, value: f64) -> Self {
        Self {
            rho_db,
            signal: signal.to_string(),
            sic_mode: mode.label().to_string(),
            method: method.label().to_string(),
            value,
            ci_low: None,
            ci_high: None,
            trials: None,
            seed: None,
        }
    }
}

/// Outage of one signal at the configuration's SNR and SIC mode.
pub fn evaluate_outage(
    config: &SystemConfig,
    signal: Signal,
    method: SweepMethod,
    spec: &SweepSpec,
) -> Result<CurveRow> {
    let (roles, kind) = (signal.roles(), signal.kind());
    let name = signal.to_string();
    let row = |value| CurveRow::point(config.rho_db, &name, config.sic, method, value);
    Ok(match method {
        SweepMethod::Closed => row(outage_closed(config, roles, kind)?.probability),
        SweepMethod::Asymptotic => row(outage_asymptotic(config, roles, kind, AsymptoticPoint::AtRho)?.probability),
        SweepMethod::Quad => {
            let p = match kind {
                SignalKind::Strong => quad_outage_xl(config, roles, &spec.quad)?,
                SignalKind::Weak => quad_outage_xt(config, roles, &spec.quad)?,
            };
            row(p)
        }
        SweepMethod::Oma => row(spec.oma.outage(config, signal)),
        SweepMethod::Mc => {
            let est = mc_outage(config, roles, kind, spec.trials, spec.seed)?;
            CurveRow {
                ci_low: Some(est.ci_low),
                ci_high: Some(est.ci_high),
                trials: Some(est.trials),
                seed: Some(est.seed),
                ..row(est.p_hat)
            }
        }
    })
}

/// One row per (SNR point × signal × SIC mode × method), in that nesting order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<CurveRow>> {
    spec.validate()?;
    let per_point: Vec<Result<Vec<CurveRow>>> = spec
        .grid
        .points()
        .into_par_iter()
        .map(|rho_db| {
            let mut rows = Vec::new();
            for &signal in &spec.signals {
                for &mode in &spec.modes {
                    let cfg = spec.config.clone().with_rho_db(rho_db).with_sic(mode);
                    for &method in &spec.methods {
                        let row = evaluate_outage(&cfg, signal, method, spec)?;
                        checked_probability(row.value, &format!("{method} outage of {signal} at {rho_db} dB"))?;
                        rows.push(row);
                    }
                }
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for chunk in per_point {
        rows.extend(chunk?);
    }
    Ok(rows)
}

/// Delay-limited throughput rows (signal column `sum`), one per
/// (SNR point × SIC mode × method). Supported methods: closed, asymptotic,
/// quad, mc (four outage estimates composed) and oma.
pub fn run_throughput(spec: &SweepSpec) -> Result<Vec<CurveRow>> {
    spec.validate()?;
    let per_point: Vec<Result<Vec<CurveRow>>> = spec
        .grid
        .points()
        .into_par_iter()
        .map(|rho_db| {
            let mut rows = Vec::new();
            for &mode in &spec.modes {
                let cfg = spec.config.clone().with_rho_db(rho_db).with_sic(mode);
                for &method in &spec.methods {
                    let mut outages = [0.0; 4];
                    for signal in Signal::ALL {
                        outages[signal.user() - 1] = evaluate_outage(&cfg, signal, method, spec)?.value;
                    }
                    let mut row = CurveRow::point(rho_db, "sum", mode, method, throughput_delay_limited(&cfg, outages));
                    if method == SweepMethod::Mc {
                        row.trials = Some(spec.trials);
                        row.seed = Some(spec.seed);
                    }
                    rows.push(row);
                }
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for chunk in per_point {
        rows.extend(chunk?);
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config(format!("unknown output format {other:?}"))),
        }
    }
}

/// Writes rows as CSV (header row, LF line endings) or a JSON array.
pub fn write_rows<W: Write, T: Serialize>(rows: &[T], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(true)
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            for row in rows {
                w.serialize(row).map_err(|e| Error::Serialize(e.to_string()))?;
            }
            w.flush().map_err(|e| Error::Serialize(e.to_string()))?;
        }
        OutputFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows).map_err(|e| Error::Serialize(e.to_string()))?;
            out.write_all(b"\n").map_err(|e| Error::Serialize(e.to_string()))?;
        }
    }
    Ok(())
}

/// SNR where the NOMA closed-form outage first rises above the OMA reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossover {
    pub signal: &'static str,
    pub sic_mode: SicMode,
    /// Refined crossover SNR.
    pub rho_db: f64,
    /// Grid points bracketing the sign change.
    pub bracket_lo_db: f64,
    pub bracket_hi_db: f64,
}

/// Scans `grid` for the first point where NOMA is no longer below OMA, having
/// been below it at the first grid point, and refines by bisection to 1e-9 dB.
pub fn find_crossover(
    config: &SystemConfig,
    signal: Signal,
    mode: SicMode,
    grid: &RhoGrid,
    oma: &OmaBaseline,
) -> Result<Option<Crossover>> {
    grid.validate()?;
    let gap = |rho_db: f64| -> Result<f64> {
        let cfg = config.clone().with_rho_db(rho_db).with_sic(mode);
        Ok(outage_closed(&cfg, signal.roles(), signal.kind())?.probability - oma.outage(&cfg, signal))
    };
    let points = grid.points();
    if points.is_empty() || gap(points[0])? >= 0.0 {
        return Ok(None);
    }
    for pair in points.windows(2) {
        let (mut lo, mut hi) = (pair[0], pair[1]);
        if gap(hi)? >= 0.0 {
            let (bracket_lo_db, bracket_hi_db) = (lo, hi);
            while hi - lo > 1e-9 {
                let mid = 0.5 * (lo + hi);
                if gap(mid)? < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let name = match signal {
                Signal::X1 => "x1",
                Signal::X2 => "x2",
                Signal::X3 => "x3",
                Signal::X4 => "x4",
            };
            return Ok(Some(Crossover {
                signal: name,
                sic_mode: mode,
                rho_db: hi,
                bracket_lo_db,
                bracket_hi_db,
            }));
        }
    }
    Ok(None)
}

/// A named block of rows produced by a figure preset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureSeries {
    pub name: String,
    pub rows: Vec<CurveRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureOutput {
    pub id: u32,
    pub series: Vec<FigureSeries>,
    pub crossovers: Vec<Crossover>,
}

/// Settings shared by all figure presets.
#[derive(Debug, Clone, Copy)]
pub struct FigureOptions {
    pub trials: u64,
    pub seed: u64,
    pub include_mc: bool,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            trials: DEFAULT_TRIALS,
            seed: 7,
            include_mc: true,
        }
    }
}

pub const FIGURE_GRID: RhoGrid = RhoGrid {
    min_db: 0.0,
    max_db: 60.0,
    step_db: 5.0,
};

fn figure_spec(config: SystemConfig, grid: RhoGrid, methods: Vec<SweepMethod>, opts: &FigureOptions) -> SweepSpec {
    let methods = methods
        .into_iter()
        .filter(|m| opts.include_mc || *m != SweepMethod::Mc)
        .collect();
    SweepSpec {
        methods,
        trials: opts.trials,
        seed: opts.seed,
        ..SweepSpec::new(config, grid)
    }
}

/// Reference-parameter presets:
///
/// 1. outage of `x₁`,`x₂` vs SNR (`ϖ=0.01`, `Ω_I=−20 dB`): closed,
///    asymptotic, MC and OMA, plus the NOMA/OMA crossover;
/// 2. the same for `ϖ ∈ {0, 0.01, 0.1}`;
/// 3. `ϖ = 0` with `Ω_I ∈ {−20, −10, 0} dB`;
/// 4. delay-limited throughput for `Ω_I ∈ {−20, −10} dB` with the OMA reference.
pub fn figure(id: u32, opts: &FigureOptions) -> Result<FigureOutput> {
    use SweepMethod::*;
    let base = SystemConfig::table_one();
    let mut series = Vec::new();
    let mut crossovers = Vec::new();
    match id {
        1 => {
            let spec = figure_spec(base.clone(), FIGURE_GRID, vec![Closed, Asymptotic, Mc, Oma], opts);
            series.push(FigureSeries {
                name: "outage".into(),
                rows: run_sweep(&spec)?,
            });
            let fine = RhoGrid {
                step_db: 1.0,
                ..FIGURE_GRID
            };
            for signal in [Signal::X1, Signal::X2] {
                for mode in SicMode::BOTH {
                    if let Some(c) = find_crossover(&base, signal, mode, &fine, &OmaBaseline::default())? {
                        crossovers.push(c);
                    }
                }
            }
        }
        2 => {
            for w in [0.0, 0.01, 0.1] {
                let cfg = base.clone().with_varpi(w, w);
                let spec = figure_spec(cfg, FIGURE_GRID, vec![Closed, Mc], opts);
                series.push(FigureSeries {
                    name: format!("varpi_{w}"),
                    rows: run_sweep(&spec)?,
                });
            }
        }
        3 => {
            for omega_i_db in [-20.0, -10.0, 0.0] {
                let cfg = base.clone().with_varpi(0.0, 0.0).with_omega_i_db(omega_i_db);
                let spec = figure_spec(cfg, FIGURE_GRID, vec![Closed, Mc], opts);
                series.push(FigureSeries {
                    name: format!("omega_i_{omega_i_db}dB"),
                    rows: run_sweep(&spec)?,
                });
            }
        }
        4 => {
            for omega_i_db in [-20.0, -10.0] {
                let cfg = base.clone().with_omega_i_db(omega_i_db);
                let spec = figure_spec(cfg, FIGURE_GRID, vec![Closed, Mc, Oma], opts);
                series.push(FigureSeries {
                    name: format!("throughput_omega_i_{omega_i_db}dB"),
                    rows: run_throughput(&spec)?,
                });
            }
        }
        other => return Err(Error::config(format!("unknown figure id {other} (expected 1..4)"))),
    }
    Ok(FigureOutput { id, series, crossovers })
}

/// Which λ regime a random validation scenario was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LambdaRegime {
    Distinct,
    /// `a_t Ω_t` placed within `10⁻¹⁰..10⁻⁵` relative of `ϖ₁ a_k Ω_k`.
    NearDegenerate,
}

/// Random valid scenario: SNR uniform in dB over `[0, 60]`, splits honouring
/// `b_l < b_t`, distances 1–12 m with path-loss exponent 2–3.5.
pub fn random_config(rng: &mut impl Rng, regime: LambdaRegime) -> SystemConfig {
    let alpha = rng.random_range(2.0..3.5);
    let mut omega = [0.0; 4];
    for o in &mut omega {
        let d: f64 = rng.random_range(1.0..12.0);
        *o = d.powf(-alpha);
    }
    let bl1: f64 = rng.random_range(0.05..0.45);
    let bl2: f64 = rng.random_range(0.05..0.45);
    let varpi = |rng: &mut dyn rand::RngCore| -> f64 {
        if rng.random_bool(0.1) {
            0.0
        } else {
            rng.random_range(0.001..0.2)
        }
    };
    let mut cfg = SystemConfig {
        rho_db: rng.random_range(0.0..60.0),
        a: std::array::from_fn(|_| rng.random_range(0.05..0.95)),
        b: [bl1, 1.0 - bl1, bl2, 1.0 - bl2],
        omega,
        omega_i_db: rng.random_range(-30.0..0.0),
        varpi1: varpi(rng),
        varpi2: varpi(rng),
        rates: [
            rng.random_range(0.01..0.3),
            rng.random_range(0.005..0.1),
            rng.random_range(0.01..0.3),
            rng.random_range(0.005..0.1),
        ],
        sic: if rng.random_bool(0.5) {
            SicMode::Imperfect
        } else {
            SicMode::Perfect
        },
    };
    if regime == LambdaRegime::NearDegenerate {
        if cfg.varpi1 == 0.0 {
            cfg.varpi1 = rng.random_range(0.01..0.2);
        }
        // both role assignments: a_t Ω_t ≈ ϖ₁ a_k Ω_k
        let rel: f64 = 10f64.powf(rng.random_range(-10.0..-5.0)) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        for (t, k) in [(1, 2), (3, 0)] {
            cfg.omega[t] = cfg.varpi1 * cfg.a[k] * cfg.omega[k] / cfg.a[t] * (1.0 + rel);
        }
    }
    cfg
}

pub fn omega_table_one() -> [f64; 4] {
    omega_from_distances(2.0, 10.0, 2.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationCase {
    pub index: usize,
    pub regime: LambdaRegime,
    pub signal: SignalKind,
    pub sic_mode: SicMode,
    pub rho_db: f64,
    pub closed: f64,
    pub quad: f64,
    pub rel_err: f64,
    pub tolerance: f64,
}

impl ValidationCase {
    pub fn passed(&self) -> bool {
        self.rel_err <= self.tolerance
    }
}

pub const DISTINCT_REL_TOL: f64 = 1e-6;
pub const NEAR_DEGENERATE_REL_TOL: f64 = 1e-5;

/// Closed form against the quadrature oracle for `count` distinct-regime and
/// `count / 4` near-degenerate scenarios, each evaluated for `x_l` and `x_t`
/// under both SIC modes.
pub fn validate_oracle_agreement(count: usize, seed: u64, quad: &QuadSpec) -> Result<Vec<ValidationCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scenarios = Vec::new();
    for _ in 0..count {
        scenarios.push((random_config(&mut rng, LambdaRegime::Distinct), LambdaRegime::Distinct));
    }
    for _ in 0..count / 4 {
        scenarios.push((
            random_config(&mut rng, LambdaRegime::NearDegenerate),
            LambdaRegime::NearDegenerate,
        ));
    }
    let cases: Vec<Result<Vec<ValidationCase>>> = scenarios
        .into_par_iter()
        .enumerate()
        .map(|(index, (cfg, regime))| {
            let tolerance = match regime {
                LambdaRegime::Distinct => DISTINCT_REL_TOL,
                LambdaRegime::NearDegenerate => NEAR_DEGENERATE_REL_TOL,
            };
            let mut out = Vec::new();
            for mode in SicMode::BOTH {
                let cfg = cfg.clone().with_sic(mode);
                for signal in [SignalKind::Strong, SignalKind::Weak] {
                    let roles = PairRoles::G1_TO_G2;
                    let closed = outage_closed(&cfg, roles, signal)?.probability;
                    let quad = match signal {
                        SignalKind::Strong => quad_outage_xl(&cfg, roles, quad)?,
                        SignalKind::Weak => quad_outage_xt(&cfg, roles, quad)?,
                    };
                    let rel_err = if closed == quad {
                        0.0
                    } else {
                        (closed - quad).abs() / quad.abs()
                    };
                    out.push(ValidationCase {
                        index,
                        regime,
                        signal,
                        sic_mode: mode,
                        rho_db: cfg.rho_db,
                        closed,
                        quad,
                        rel_err,
                        tolerance,
                    });
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for c in cases {
        all.extend(c?);
    }
    Ok(all)
}
