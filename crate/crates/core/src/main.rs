use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use twr_noma::analysis::{diversity_order_estimate, outage_closed};
use twr_noma::experiments::{
    figure, run_sweep, run_throughput, validate_oracle_agreement, write_rows, FigureOptions, OutputFormat, RhoGrid,
    Signal, SweepMethod, SweepSpec, FIGURE_GRID,
};
use twr_noma::model::ScenarioFile;
use twr_noma::montecarlo::DEFAULT_TRIALS;
use twr_noma::oracle::QuadSpec;
use twr_noma::{Error, Result, SicMode, SystemConfig};

#[derive(Parser)]
#[command(name = "twr-noma", version, about = "Outage and throughput of two-way relay NOMA")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All methods for selected signals at one SNR.
    Outage {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "closed,asymptotic,quad,mc")]
        methods: Vec<String>,
    },
    /// Outage curves over an SNR grid.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "closed")]
        methods: Vec<String>,
    },
    /// Delay-limited sum throughput over an SNR grid.
    Throughput {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "closed,oma")]
        methods: Vec<String>,
    },
    /// High-SNR log-log slope of the closed-form outage.
    Diversity {
        #[command(flatten)]
        common: Common,
    },
    /// Closed forms against the quadrature oracle on random scenarios.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Reference-parameter presets; with --out, one file per series in that directory.
    Figure {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        id: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SicArg {
    Ip,
    P,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// key = value scenario file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    rho_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    rho_min_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    rho_max_db: Option<f64>,
    #[arg(long)]
    rho_step_db: Option<f64>,
    /// SIC modes to evaluate; defaults to the scenario file's mode, or both.
    #[arg(long, value_enum)]
    sic: Option<SicArg>,
    #[arg(long, allow_hyphen_values = true)]
    varpi1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    varpi2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    omega_i_db: Option<f64>,
    /// Comma-separated subset of x1,x2,x3,x4.
    #[arg(long, value_delimiter = ',', default_value = "x1,x2")]
    signals: Vec<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

struct Resolved {
    config: SystemConfig,
    modes: Vec<SicMode>,
    signals: Vec<Signal>,
    trials: u64,
    seed: u64,
    format: OutputFormat,
}

impl Common {
    fn resolve(&self) -> Result<Resolved> {
        let (mut config, file_trials, file_seed) = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                let file = ScenarioFile::parse(&text)?;
                (file.config, file.trials, file.seed)
            }
            None => (SystemConfig::table_one(), None, None),
        };
        if let Some(rho_db) = self.rho_db {
            config.rho_db = rho_db;
        }
        if let Some(w) = self.varpi1 {
            config.varpi1 = w;
        }
        if let Some(w) = self.varpi2 {
            config.varpi2 = w;
        }
        if let Some(o) = self.omega_i_db {
            config.omega_i_db = o;
        }
        let modes = match (self.sic, &self.config) {
            (Some(SicArg::Ip), _) => vec![SicMode::Imperfect],
            (Some(SicArg::P), _) => vec![SicMode::Perfect],
            (Some(SicArg::Both), _) | (None, None) => SicMode::BOTH.to_vec(),
            (None, Some(_)) => vec![config.sic],
        };
        config.sic = modes[0];
        config.validate()?;
        let signals = self
            .signals
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Signal>>>()?;
        Ok(Resolved {
            config,
            modes,
            signals,
            trials: self.trials.or(file_trials).unwrap_or(DEFAULT_TRIALS),
            seed: self.seed.or(file_seed).unwrap_or(7),
            format: match self.format {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Json => OutputFormat::Json,
            },
        })
    }

    fn grid(&self, default: RhoGrid) -> Result<RhoGrid> {
        RhoGrid::new(
            self.rho_min_db.unwrap_or(default.min_db),
            self.rho_max_db.unwrap_or(default.max_db),
            self.rho_step_db.unwrap_or(default.step_db),
        )
    }
}

fn parse_methods(names: &[String]) -> Result<Vec<SweepMethod>> {
    names.iter().map(|m| m.parse()).collect()
}

fn sweep_spec(r: &Resolved, grid: RhoGrid, methods: Vec<SweepMethod>) -> SweepSpec {
    SweepSpec {
        methods,
        signals: r.signals.clone(),
        modes: r.modes.clone(),
        trials: r.trials,
        seed: r.seed,
        ..SweepSpec::new(r.config.clone(), grid)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit<T: Serialize>(rows: &[T], format: OutputFormat, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let mut w = create(path)?;
            write_rows(rows, format, &mut w)?;
            w.flush().map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })
        }
        None => write_rows(rows, format, io::stdout().lock()),
    }
}

#[derive(Serialize)]
struct DiversityRow {
    signal: String,
    sic_mode: &'static str,
    rho_lo_db: f64,
    rho_hi_db: f64,
    diversity: f64,
}

#[derive(Serialize)]
struct ValidationSummary {
    cases: usize,
    failures: usize,
    max_rel_err: f64,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Outage { common, methods } => {
            let r = common.resolve()?;
            let grid = RhoGrid::single(r.config.rho_db);
            let rows = run_sweep(&sweep_spec(&r, grid, parse_methods(&methods)?))?;
            emit(&rows, r.format, common.out.as_deref())
        }
        Command::Sweep { common, methods } => {
            let r = common.resolve()?;
            let rows = run_sweep(&sweep_spec(&r, common.grid(FIGURE_GRID)?, parse_methods(&methods)?))?;
            emit(&rows, r.format, common.out.as_deref())
        }
        Command::Throughput { common, methods } => {
            let r = common.resolve()?;
            let rows = run_throughput(&sweep_spec(&r, common.grid(FIGURE_GRID)?, parse_methods(&methods)?))?;
            emit(&rows, r.format, common.out.as_deref())
        }
        Command::Diversity { common } => {
            let r = common.resolve()?;
            let (lo, hi) = (common.rho_min_db.unwrap_or(50.0), common.rho_max_db.unwrap_or(60.0));
            let mut rows = Vec::new();
            for &signal in &r.signals {
                for &mode in &r.modes {
                    let d = diversity_order_estimate(
                        |db| {
                            let cfg = r.config.clone().with_rho_db(db).with_sic(mode);
                            Ok(outage_closed(&cfg, signal.roles(), signal.kind())?.probability)
                        },
                        lo,
                        hi,
                    )?;
                    rows.push(DiversityRow {
                        signal: signal.to_string(),
                        sic_mode: mode.label(),
                        rho_lo_db: lo,
                        rho_hi_db: hi,
                        diversity: d,
                    });
                }
            }
            emit(&rows, r.format, common.out.as_deref())
        }
        Command::Validate { common, count } => {
            let r = common.resolve()?;
            let cases = validate_oracle_agreement(count, r.seed, &QuadSpec::default())?;
            let failures = cases.iter().filter(|c| !c.passed()).count();
            let max_rel_err = cases.iter().map(|c| c.rel_err).fold(0.0, f64::max);
            match &common.out {
                Some(path) => emit(&cases, r.format, Some(path))?,
                None => emit(
                    &[ValidationSummary {
                        cases: cases.len(),
                        failures,
                        max_rel_err,
                    }],
                    r.format,
                    None,
                )?,
            }
            if failures > 0 {
                return Err(Error::Oracle(format!(
                    "{failures} of {} cases disagree with the oracle",
                    cases.len()
                )));
            }
            Ok(())
        }
        Command::Figure { common, id } => {
            let r = common.resolve()?;
            let opts = FigureOptions {
                trials: r.trials,
                seed: r.seed,
                include_mc: r.trials > 0,
            };
            let fig = figure(id, &opts)?;
            let ext = match r.format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            };
            match &common.out {
                Some(dir) => {
                    fs::create_dir_all(dir).map_err(|source| Error::Io {
                        path: dir.clone(),
                        source,
                    })?;
                    for series in &fig.series {
                        let path = dir.join(format!("fig{id}_{}.{ext}", series.name));
                        emit(&series.rows, r.format, Some(&path))?;
                    }
                    if !fig.crossovers.is_empty() {
                        emit(
                            &fig.crossovers,
                            r.format,
                            Some(&dir.join(format!("fig{id}_crossover.{ext}"))),
                        )?;
                    }
                }
                None => {
                    let mut stdout = io::stdout().lock();
                    for series in &fig.series {
                        writeln!(stdout, "# series: {}", series.name).map_err(|e| Error::Serialize(e.to_string()))?;
                        write_rows(&series.rows, r.format, &mut stdout)?;
                    }
                    if !fig.crossovers.is_empty() {
                        writeln!(stdout, "# series: crossover").map_err(|e| Error::Serialize(e.to_string()))?;
                        write_rows(&fig.crossovers, r.format, &mut stdout)?;
                    }
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
