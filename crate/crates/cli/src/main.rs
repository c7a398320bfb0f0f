use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use girthwords::cayley::{diameter, GirthMode, DEFAULT_ELEMENT_CAP, DEFAULT_MAX_LEN};
use girthwords::harness::{self, Cell, ExperimentConfig, ExperimentKind, OutputFormat, ResultRow, ResultTable};
use girthwords::words::infer_arity;
use girthwords::{parse_word, Error, Group, GroupSpec};

#[derive(Parser)]
#[command(name = "girthwords", version, about = "Word maps, girth and diameter of random Cayley graphs in finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Output format, `csv` (default) or `json`.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Summary chart.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Master seed, required by every randomized command.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the probability that a word evaluates to the identity.
    ProbeWord {
        #[arg(long, value_parser = parse_spec)]
        spec: GroupSpec,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1_000_000)]
        exact_cap: u64,
        #[arg(long, default_value_t = 0.99)]
        confidence: f64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = 2.0)]
        eps: f64,
    },
    /// Girth of Cayley graphs on random generator tuples.
    Girth {
        #[arg(long, value_parser = parse_spec)]
        spec: GroupSpec,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "undirected", value_parser = parse_mode)]
        mode: GirthMode,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        element_cap: usize,
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
    /// Diameter of Cayley graphs on random generator tuples.
    Diameter {
        #[arg(long, value_parser = parse_spec)]
        spec: GroupSpec,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
    },
    /// Dependence frequencies of vector trajectories against their bounds.
    Trajectory {
        #[arg(long, value_parser = parse_spec)]
        spec: GroupSpec,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Trajectories per trial.
        #[arg(long)]
        trajectories: Option<usize>,
    },
    /// Closed-form bounds and constants.
    Bounds {
        #[arg(long, value_parser = parse_spec)]
        spec: GroupSpec,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 2.0)]
        eps: f64,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Run an experiment described by a config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_spec(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<GirthMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Parse { .. } | Error::Decode(_) => 2,
        Error::Capacity(_) | Error::GirthCapacity { .. } => 3,
        Error::Io(_) => 4,
        Error::Singular | Error::Internal(_) => 1,
    }
}

fn require_seed(g: &Global) -> Result<u64, Failure> {
    g.seed.ok_or_else(|| Failure::Usage("--seed is required for randomized commands".into()))
}

fn word_of(text: &str) -> Result<girthwords::Word, Failure> {
    Ok(parse_word(text, infer_arity(text))?)
}

fn config_for(cmd: &Command, g: &Global) -> Result<ExperimentConfig, Failure> {
    let mut cfg = match cmd {
        Command::ProbeWord {
            spec,
            word,
            samples,
            exact_cap,
            confidence,
            trials,
            eps,
        } => {
            let mut c = ExperimentConfig::new(ExperimentKind::ProbeWord, vec![*spec], require_seed(g)?);
            c.words = vec![word_of(word)?];
            c.samples = *samples;
            c.exact_cap = *exact_cap;
            c.confidence = *confidence;
            c.trials = *trials;
            c.eps = *eps;
            c
        }
        Command::Girth {
            spec,
            k,
            mode,
            max_len,
            element_cap,
            trials,
        } => {
            let mut c = ExperimentConfig::new(ExperimentKind::GirthScan, vec![*spec], require_seed(g)?);
            c.k = *k;
            c.mode = *mode;
            c.max_len = *max_len;
            c.element_cap = *element_cap;
            c.trials = *trials;
            c
        }
        Command::Trajectory {
            spec,
            word,
            trials,
            trajectories,
        } => {
            let mut c = ExperimentConfig::new(ExperimentKind::TrajectoryScan, vec![*spec], require_seed(g)?);
            c.words = vec![word_of(word)?];
            c.trials = *trials;
            c.trajectories = *trajectories;
            c
        }
        Command::Bounds { spec, len, eps, k } => {
            let mut c = ExperimentConfig::new(ExperimentKind::BoundsTable, vec![*spec], g.seed.unwrap_or(0));
            c.lens = vec![*len];
            c.eps = *eps;
            c.k = *k;
            c
        }
        Command::Experiment { config } => {
            let text = std::fs::read_to_string(config).map_err(Error::from)?;
            let mut c = ExperimentConfig::parse(&text)?;
            if let Some(s) = g.seed {
                c.seed = s;
            }
            c
        }
        Command::Diameter { .. } => unreachable!(),
    };
    if let Some(w) = g.workers {
        cfg.workers = Some(w);
    }
    if g.out.is_some() {
        cfg.out = g.out.clone();
    }
    if g.svg.is_some() {
        cfg.svg = g.svg.clone();
    }
    if let Some(f) = g.format {
        cfg.format = f;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Rows for the `diameter` command: one BFS per seeded generator tuple.
fn diameter_table(spec: GroupSpec, k: usize, trials: u64, cap: u64, seed: u64) -> Result<ResultTable, Error> {
    let group = Group::new(spec)?;
    let columns = ["spec", "k", "trial", "seed", "diameter", "reached", "generates", "error"];
    let mut rows = Vec::new();
    for trial in 0..trials {
        let s = harness::derive_seed(seed, trial);
        let gens = group.sample_tuple(k, &mut harness::substream(seed, trial))?;
        let d = diameter(&group, &gens, cap)?;
        rows.push(ResultRow {
            cells: vec![
                Cell::text(spec),
                Cell::int(k),
                Cell::int(trial),
                Cell::Text(format!("{s:#018x}")),
                Cell::int(d.diameter),
                Cell::int(d.reached),
                Cell::int(d.generates as i64),
                Cell::Text(String::new()),
            ],
        });
    }
    Ok(ResultTable {
        columns: columns.iter().map(|c| c.to_string()).collect(),
        rows,
    })
}

fn write_table(table: &ResultTable, kind: Option<ExperimentKind>, format: OutputFormat, out: Option<&Path>, svg: Option<&Path>) -> Result<(), Error> {
    match kind {
        Some(kind) => harness::emit(table, kind, format, out, svg),
        None => {
            let text = harness::render(table, format)?;
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
            if let Some(p) = svg {
                let pts = table
                    .rows
                    .iter()
                    .filter_map(|r| Some((r.cells[2].as_f64()?, r.cells[4].as_f64()?)))
                    .collect();
                let series = [harness::emit::Series {
                    name: table.rows.first().map(|r| r.cells[0].to_string()).unwrap_or_default(),
                    points: pts,
                }];
                std::fs::write(p, harness::emit::svg_chart("trial", "diameter", &series))?;
            }
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let g = &cli.global;
    if let Command::Diameter { spec, k, trials, cap } = &cli.command {
        let seed = require_seed(g)?;
        let table = diameter_table(*spec, *k, *trials, *cap, seed)?;
        write_table(&table, None, g.format.unwrap_or_default(), g.out.as_deref(), g.svg.as_deref())?;
        return Ok(0);
    }
    let cfg = config_for(&cli.command, g)?;
    let table = harness::run_experiment(&cfg)?;
    write_table(&table, Some(cfg.kind), cfg.format, cfg.out.as_deref(), cfg.svg.as_deref())?;
    if let Command::Bounds { .. } = cli.command {
        eprintln!("{}", bounds_summary(&table));
    }
    let capacity = table.column("error").is_some_and(|i| table.rows.iter().any(|r| r.cells[i] == Cell::text("capacity")));
    Ok(if capacity { 3 } else { 0 })
}

fn bounds_summary(t: &ResultTable) -> String {
    let get = |c: &str| t.get(0, c).map(|v| v.to_string()).unwrap_or_else(|| "NA".into());
    format!(
        "{} len={}: ln bound {} (applicable {}), positive-word bound {}, a = {}, girth slope {}, log E {} <= {}",
        get("spec"),
        get("len"),
        get("ln_bound"),
        get("applicable"),
        get("positive_bound"),
        get("constant_a"),
        get("girth_slope"),
        get("log_e"),
        get("log_e_estimate"),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
