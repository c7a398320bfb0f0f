//! Experiment configuration and its flat `key = value` text format.
//!
//! ```text
//! # girth growth in SL_n(2)
//! kind     = girth_scan
//! specs    = sl:3..6:2
//! k        = 2
//! trials   = 50
//! seed     = 7
//! ```
//!
//! Keys:
//!
//! | key            | meaning                                                   | default      |
//! |----------------|-----------------------------------------------------------|--------------|
//! | `kind`         | `probe_word`, `girth_scan`, `dg_scan`, `trajectory_scan`, `bounds_table` | required |
//! | `specs`        | comma-separated group specs; any numeric field may be a range `a..b` | required |
//! | `seed`         | master seed                                               | required     |
//! | `k`            | number of generators                                      | 2            |
//! | `words`        | `;`-separated words (`probe_word`, `trajectory_scan`)     |              |
//! | `trials`       | trials per spec (per word for `probe_word`)               | 1            |
//! | `samples`      | Monte Carlo samples per trial                             | 100000       |
//! | `confidence`   | confidence level of the Wilson interval                   | 0.99         |
//! | `exact_cap`    | largest tuple count enumerated exactly                    | 1000000      |
//! | `mode`         | `undirected` or `directed`                                | undirected   |
//! | `max_len`      | girth search length limit                                 | 40           |
//! | `element_cap`  | girth search element cap                                  | 10000000     |
//! | `diameter_cap` | largest group order searched for the diameter             | 10000000     |
//! | `trajectories` | trajectories per trial (`trajectory_scan`)                | from `n` and the word length |
//! | `eps`          | epsilon of the length bound                               | 2            |
//! | `lens`         | word lengths (`bounds_table`), list or range              | 1..4         |
//! | `workers`      | worker threads                                            | all cores    |
//! | `format`       | `csv` or `json`                                           | csv          |
//! | `out`          | output path                                               | stdout       |
//! | `svg`          | summary chart path                                        | none         |

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::cayley::{GirthMode, DEFAULT_ELEMENT_CAP, DEFAULT_MAX_LEN};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::words::{infer_arity, parse_word, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    ProbeWord,
    GirthScan,
    DgScan,
    TrajectoryScan,
    BoundsTable,
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "probe_word" => ExperimentKind::ProbeWord,
            "girth_scan" => ExperimentKind::GirthScan,
            "dg_scan" => ExperimentKind::DgScan,
            "trajectory_scan" => ExperimentKind::TrajectoryScan,
            "bounds_table" => ExperimentKind::BoundsTable,
            _ => return Err(Error::parse(0, format!("unknown experiment kind `{s}`"))),
        })
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::ProbeWord => "probe_word",
            ExperimentKind::GirthScan => "girth_scan",
            ExperimentKind::DgScan => "dg_scan",
            ExperimentKind::TrajectoryScan => "trajectory_scan",
            ExperimentKind::BoundsTable => "bounds_table",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::parse(0, format!("unknown output format `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub specs: Vec<GroupSpec>,
    pub seed: u64,
    pub k: usize,
    pub words: Vec<Word>,
    pub trials: u64,
    pub samples: u64,
    pub confidence: f64,
    pub exact_cap: u64,
    pub mode: GirthMode,
    pub max_len: usize,
    pub element_cap: usize,
    pub diameter_cap: u64,
    pub trajectories: Option<usize>,
    pub eps: f64,
    pub lens: Vec<usize>,
    pub workers: Option<usize>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, specs: Vec<GroupSpec>, seed: u64) -> Self {
        ExperimentConfig {
            kind,
            specs,
            seed,
            k: 2,
            words: Vec::new(),
            trials: 1,
            samples: 100_000,
            confidence: 0.99,
            exact_cap: 1_000_000,
            mode: GirthMode::Undirected,
            max_len: DEFAULT_MAX_LEN,
            element_cap: DEFAULT_ELEMENT_CAP,
            diameter_cap: 10_000_000,
            trajectories: None,
            eps: 2.0,
            lens: (1..=4).collect(),
            workers: None,
            format: OutputFormat::Csv,
            out: None,
            svg: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.specs.is_empty() {
            return Err(Error::domain("no group specs"));
        }
        for s in &self.specs {
            s.validate()?;
        }
        if self.trials == 0 {
            return Err(Error::domain("trials must be at least 1"));
        }
        if self.k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        if self.workers == Some(0) {
            return Err(Error::domain("workers must be at least 1"));
        }
        match self.kind {
            ExperimentKind::ProbeWord | ExperimentKind::TrajectoryScan if self.words.is_empty() => {
                Err(Error::domain(format!("{} needs at least one word", self.kind)))
            }
            ExperimentKind::ProbeWord if self.samples == 0 => Err(Error::domain("samples must be at least 1")),
            ExperimentKind::GirthScan | ExperimentKind::DgScan if self.max_len == 0 => Err(Error::domain("max_len must be at least 1")),
            ExperimentKind::BoundsTable if self.lens.is_empty() || self.lens.contains(&0) => {
                Err(Error::domain("lens must be a nonempty list of positive lengths"))
            }
            _ => Ok(()),
        }
    }

    /// Parses the flat text format; line numbers are reported as error positions.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kind = None;
        let mut specs = None;
        let mut seed = None;
        let mut rest = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let (key, value) = line.split_once('=').ok_or_else(|| Error::parse(lineno, format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let at = |e: Error| match e {
                Error::Parse { msg, .. } => Error::parse(lineno, format!("{key}: {msg}")),
                other => Error::parse(lineno, format!("{key}: {other}")),
            };
            match key {
                "kind" => kind = Some(value.parse::<ExperimentKind>().map_err(at)?),
                "specs" | "spec" => specs = Some(parse_spec_list(value).map_err(at)?),
                "seed" => seed = Some(parse_num::<u64>(value).map_err(at)?),
                _ => rest.push((lineno, key.to_string(), value.to_string())),
            }
        }
        let kind = kind.ok_or_else(|| Error::parse(0, "missing key `kind`"))?;
        let specs = specs.ok_or_else(|| Error::parse(0, "missing key `specs`"))?;
        let seed = seed.ok_or_else(|| Error::parse(0, "missing key `seed`"))?;
        let mut cfg = ExperimentConfig::new(kind, specs, seed);
        let mut word_text = None;
        for (lineno, key, value) in rest {
            let at = |e: Error| match e {
                Error::Parse { msg, .. } => Error::parse(lineno, format!("{key}: {msg}")),
                other => Error::parse(lineno, format!("{key}: {other}")),
            };
            let v = value.as_str();
            match key.as_str() {
                "k" => cfg.k = parse_num(v).map_err(at)?,
                "words" | "word" => word_text = Some((lineno, value.clone())),
                "trials" => cfg.trials = parse_num(v).map_err(at)?,
                "samples" => cfg.samples = parse_num(v).map_err(at)?,
                "confidence" => cfg.confidence = parse_num(v).map_err(at)?,
                "exact_cap" => cfg.exact_cap = parse_num(v).map_err(at)?,
                "mode" => cfg.mode = v.parse().map_err(at)?,
                "max_len" => cfg.max_len = parse_num(v).map_err(at)?,
                "element_cap" => cfg.element_cap = parse_num(v).map_err(at)?,
                "diameter_cap" => cfg.diameter_cap = parse_num(v).map_err(at)?,
                "trajectories" => cfg.trajectories = Some(parse_num(v).map_err(at)?),
                "eps" => cfg.eps = parse_num(v).map_err(at)?,
                "lens" => cfg.lens = parse_usize_list(v).map_err(at)?,
                "workers" => cfg.workers = Some(parse_num(v).map_err(at)?),
                "format" => cfg.format = v.parse().map_err(at)?,
                "out" => cfg.out = Some(PathBuf::from(v)),
                "svg" => cfg.svg = Some(PathBuf::from(v)),
                _ => return Err(Error::parse(lineno, format!("unknown key `{key}`"))),
            }
        }
        if let Some((lineno, text)) = word_text {
            let parts: Vec<&str> = text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
            let k = parts.iter().map(|p| infer_arity(p)).max().unwrap_or(1).max(cfg.k);
            cfg.words = parts
                .iter()
                .map(|p| parse_word(p, k))
                .collect::<Result<_>>()
                .map_err(|e| Error::parse(lineno, format!("words: {e}")))?;
        }
        cfg.validate().map_err(|e| Error::parse(0, e.to_string()))?;
        Ok(cfg)
    }
}

fn parse_num<T: FromStr>(s: &str) -> Result<T> {
    s.trim().replace('_', "").parse().map_err(|_| Error::parse(0, format!("invalid number `{s}`")))
}

/// `a`, `a..b` (inclusive), comma-separated.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        out.extend(parse_range(part)?);
    }
    if out.is_empty() {
        return Err(Error::parse(0, "empty list"));
    }
    Ok(out)
}

fn parse_range(part: &str) -> Result<Vec<usize>> {
    match part.split_once("..") {
        Some((a, b)) => {
            let (a, b): (usize, usize) = (parse_num(a)?, parse_num(b)?);
            if a > b {
                return Err(Error::parse(0, format!("empty range `{part}`")));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![parse_num(part)?]),
    }
}

/// Comma-separated specs; each numeric field may be an inclusive range,
/// e.g. `sl:3..6:2` or `sym:5..8`.
pub fn parse_spec_list(s: &str) -> Result<Vec<GroupSpec>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let fields: Vec<&str> = part.split(':').collect();
        let family = fields[0];
        let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
        for f in &fields[1..] {
            let values = parse_range(f)?;
            combos = combos
                .iter()
                .flat_map(|c| values.iter().map(move |v| c.iter().copied().chain([*v]).collect()))
                .collect();
        }
        for c in combos {
            let text = std::iter::once(family.to_string()).chain(c.iter().map(usize::to_string)).collect::<Vec<_>>().join(":");
            out.push(text.parse::<GroupSpec>()?);
        }
    }
    if out.is_empty() {
        return Err(Error::parse(0, "empty spec list"));
    }
    Ok(out)
}
