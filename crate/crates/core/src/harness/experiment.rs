//! Experiment execution. Trials are mapped in parallel over independent
//! substreams and collected in `(spec, trial)` order, so the rows do not
//! depend on the number of workers.

use std::fmt;

use rayon::prelude::*;

use crate::cayley::{diameter, girth_with_cap, union_bound_report, GirthValue};
use crate::error::{Error, Result};
use crate::groups::{Family, Group, GroupSpec};
use crate::harness::config::{ExperimentConfig, ExperimentKind};
use crate::harness::seed::{derive_seed, substream};
use crate::probability::{
    constant_a, estimate_mc, exact_by_enumeration, girth_slope, length_bound, positive_word_bound, rational_to_f64, CONSTANT_A_TERMS,
};
use crate::trajectory::dependence_experiment;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Always finite; non-finite values become [`Cell::Na`].
    Float(f64),
    Text(String),
    Na,
}

impl Cell {
    pub fn float(x: f64) -> Cell {
        if x.is_finite() {
            Cell::Float(x)
        } else {
            Cell::Na
        }
    }

    pub fn int(x: impl TryInto<i64>) -> Cell {
        x.try_into().map(Cell::Int).unwrap_or(Cell::Na)
    }

    pub fn text(s: impl fmt::Display) -> Cell {
        Cell::Text(s.to_string())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Float(x) => Some(*x),
            _ => None,
        }
    }

    /// Inverse of `Display`, used when reading CSV back.
    pub fn parse(s: &str) -> Cell {
        if s == "NA" {
            return Cell::Na;
        }
        let numeric = s.bytes().next().is_some_and(|b| b.is_ascii_digit() || b == b'-');
        if numeric {
            if let Ok(i) = s.parse::<i64>() {
                return Cell::Int(i);
            }
            if let Ok(x) = s.parse::<f64>() {
                return Cell::Float(x);
            }
        }
        Cell::Text(s.to_string())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(i) => write!(f, "{i}"),
            Cell::Float(x) => write!(f, "{x:?}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Na => f.write_str("NA"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn get(&self, row: usize, name: &str) -> Option<&Cell> {
        Some(&self.rows.get(row)?.cells[self.column(name)?])
    }
}

/// Column set of each experiment kind. The last column is always `error`.
pub fn columns(kind: ExperimentKind) -> &'static [&'static str] {
    match kind {
        ExperimentKind::ProbeWord => &[
            "spec", "word", "trial", "seed", "samples", "successes", "p_hat", "ci_low", "ci_high", "confidence", "exact", "ln_bound", "error",
        ],
        ExperimentKind::GirthScan => &[
            "spec", "n", "q", "k", "mode", "trial", "seed", "girth", "lower_bound", "witness", "involution_square", "slope_bound", "error",
        ],
        ExperimentKind::DgScan => &["spec", "n", "q", "k", "trial", "seed", "girth", "diameter", "ratio", "generates", "error"],
        ExperimentKind::TrajectoryScan => &[
            "spec", "word", "seed", "i", "trials", "reached", "dependent_count", "empirical", "dependent_any", "bound", "bound_std_err", "dominated", "error",
        ],
        ExperimentKind::BoundsTable => &[
            "spec", "len", "eps", "k", "c_eps", "applicable", "ln_bound", "log10_bound", "positive_bound", "constant_a", "girth_slope", "ln_e", "log_e", "log_e_estimate",
            "error",
        ],
    }
}

struct RowBuilder {
    kind: ExperimentKind,
    cells: Vec<Cell>,
}

impl RowBuilder {
    fn new(kind: ExperimentKind) -> Self {
        RowBuilder {
            kind,
            cells: vec![Cell::Na; columns(kind).len()],
        }
    }

    fn set(&mut self, name: &str, c: Cell) -> &mut Self {
        let i = columns(self.kind).iter().position(|x| *x == name).expect("unknown column");
        self.cells[i] = c;
        self
    }

    fn error(&mut self, e: &Error) -> &mut Self {
        self.set("error", Cell::text(e.code()))
    }

    fn finish(&mut self) -> ResultRow {
        let last = self.cells.len() - 1;
        if self.cells[last] == Cell::Na {
            self.cells[last] = Cell::Text(String::new());
        }
        ResultRow {
            cells: std::mem::take(&mut self.cells),
        }
    }
}

/// Seeds are written in hex so they never read back as integers.
fn seed_cell(seed: u64) -> Cell {
    Cell::Text(format!("{seed:#018x}"))
}

fn q_cell(spec: &GroupSpec) -> Cell {
    spec.q.map(Cell::int).unwrap_or(Cell::Na)
}

/// Runs the experiment on a pool of `cfg.workers` threads (all cores when unset).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| Error::Internal(e.to_string()))?;
    let rows = pool.install(|| match cfg.kind {
        ExperimentKind::ProbeWord => probe_rows(cfg),
        ExperimentKind::GirthScan => girth_rows(cfg),
        ExperimentKind::DgScan => dg_rows(cfg),
        ExperimentKind::TrajectoryScan => trajectory_rows(cfg),
        ExperimentKind::BoundsTable => bounds_rows(cfg),
    })?;
    Ok(ResultTable {
        columns: columns(cfg.kind).iter().map(|c| c.to_string()).collect(),
        rows,
    })
}

fn groups(cfg: &ExperimentConfig) -> Result<Vec<Group>> {
    cfg.specs.iter().map(|s| Group::new(*s)).collect()
}

/// `(spec index, trial)` pairs in output order.
fn tasks(cfg: &ExperimentConfig, per_spec: u64) -> Vec<(usize, u64)> {
    (0..cfg.specs.len()).flat_map(|s| (0..per_spec).map(move |t| (s, t))).collect()
}

fn probe_rows(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let groups = groups(cfg)?;
    let nw = cfg.words.len() as u64;
    let kind = ExperimentKind::ProbeWord;
    Ok(tasks(cfg, nw * cfg.trials)
        .into_par_iter()
        .map(|(s, idx)| {
            let (w, trial) = (&cfg.words[(idx / cfg.trials) as usize], idx % cfg.trials);
            let g = &groups[s];
            let seed = derive_seed(cfg.seed, trial);
            let mut row = RowBuilder::new(kind);
            row.set("spec", Cell::text(g.spec()))
                .set("word", Cell::text(w))
                .set("trial", Cell::int(trial))
                .set("seed", seed_cell(seed))
                .set("samples", Cell::int(cfg.samples))
                .set("confidence", Cell::float(cfg.confidence));
            if let Ok(p) = exact_by_enumeration(g, w, cfg.exact_cap) {
                row.set("exact", Cell::float(rational_to_f64(&p)));
            }
            if let Ok(b) = length_bound(g.spec(), w.len(), cfg.eps) {
                row.set("ln_bound", Cell::float(b.ln_bound));
            }
            match estimate_mc(g, w, cfg.samples, cfg.confidence, seed) {
                Ok(e) => {
                    row.set("successes", Cell::int(e.successes))
                        .set("p_hat", Cell::float(e.p_hat))
                        .set("ci_low", Cell::float(e.ci_low))
                        .set("ci_high", Cell::float(e.ci_high));
                }
                Err(e) => {
                    row.error(&e);
                }
            }
            row.finish()
        })
        .collect())
}

fn girth_rows(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let groups = groups(cfg)?;
    let kind = ExperimentKind::GirthScan;
    let slope = girth_slope(cfg.k.max(2));
    Ok(tasks(cfg, cfg.trials)
        .into_par_iter()
        .map(|(s, trial)| {
            let g = &groups[s];
            let spec = g.spec();
            let seed = derive_seed(cfg.seed, trial);
            let mut row = RowBuilder::new(kind);
            row.set("spec", Cell::text(spec))
                .set("n", Cell::int(spec.n))
                .set("q", q_cell(spec))
                .set("k", Cell::int(cfg.k))
                .set("mode", Cell::text(cfg.mode))
                .set("trial", Cell::int(trial))
                .set("seed", seed_cell(seed))
                .set("slope_bound", Cell::float(slope * spec.n as f64));
            let result = g
                .sample_tuple(cfg.k, &mut substream(cfg.seed, trial))
                .and_then(|gens| girth_with_cap(g, &gens, cfg.mode, cfg.max_len, cfg.element_cap));
            match result {
                Ok(r) => {
                    match r.value {
                        GirthValue::Exact(v) => row.set("girth", Cell::int(v)).set("lower_bound", Cell::int(v)),
                        GirthValue::AtLeast(v) => row.set("lower_bound", Cell::int(v)),
                    };
                    if let Some(w) = &r.witness {
                        row.set("witness", Cell::text(w));
                    }
                    row.set("involution_square", Cell::int(r.involution_square as i64));
                }
                Err(e) => {
                    if let Error::GirthCapacity { checked, .. } = e {
                        row.set("lower_bound", Cell::int(checked + 1));
                    }
                    row.error(&e);
                }
            }
            row.finish()
        })
        .collect())
}

fn dg_rows(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let groups = groups(cfg)?;
    let kind = ExperimentKind::DgScan;
    Ok(tasks(cfg, cfg.trials)
        .into_par_iter()
        .map(|(s, trial)| {
            let g = &groups[s];
            let spec = g.spec();
            let seed = derive_seed(cfg.seed, trial);
            let mut row = RowBuilder::new(kind);
            row.set("spec", Cell::text(spec))
                .set("n", Cell::int(spec.n))
                .set("q", q_cell(spec))
                .set("k", Cell::int(cfg.k))
                .set("trial", Cell::int(trial))
                .set("seed", seed_cell(seed));
            let result = g.sample_tuple(cfg.k, &mut substream(cfg.seed, trial)).and_then(|gens| {
                let gr = girth_with_cap(g, &gens, cfg.mode, cfg.max_len, cfg.element_cap)?;
                let d = diameter(g, &gens, cfg.diameter_cap)?;
                Ok((gr, d))
            });
            match result {
                Ok((gr, d)) => {
                    row.set("diameter", Cell::int(d.diameter)).set("generates", Cell::int(d.generates as i64));
                    if let Some(v) = gr.girth() {
                        row.set("girth", Cell::int(v)).set("ratio", Cell::float(d.diameter as f64 / v as f64));
                    } else {
                        row.error(&Error::Capacity(format!("no relation up to length {}", cfg.max_len)));
                    }
                }
                Err(e) => {
                    row.error(&e);
                }
            }
            row.finish()
        })
        .collect())
}

fn trajectory_rows(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let groups = groups(cfg)?;
    let kind = ExperimentKind::TrajectoryScan;
    let mut rows = Vec::new();
    for g in &groups {
        for w in &cfg.words {
            let mut base = RowBuilder::new(kind);
            base.set("spec", Cell::text(g.spec())).set("word", Cell::text(w)).set("seed", seed_cell(cfg.seed));
            match dependence_experiment(g, w, cfg.trials, cfg.seed, cfg.trajectories) {
                Ok(exp) => {
                    for r in &exp.rows {
                        let mut row = RowBuilder {
                            kind,
                            cells: base.cells.clone(),
                        };
                        row.set("i", Cell::int(r.i))
                            .set("trials", Cell::int(r.reached))
                            .set("reached", Cell::int(r.reached))
                            .set("dependent_count", Cell::int(r.dependent))
                            .set("dependent_any", Cell::int(r.dependent_any));
                        if let Some(e) = r.empirical() {
                            row.set("empirical", Cell::float(e));
                        }
                        if let Some(b) = r.bound {
                            row.set("bound", Cell::float(b));
                        }
                        if let Some(se) = r.bound_std_err() {
                            row.set("bound_std_err", Cell::float(se));
                        }
                        if let Some(d) = r.dominated(3.0) {
                            row.set("dominated", Cell::int(d as i64));
                        }
                        rows.push(row.finish());
                    }
                }
                Err(e) => rows.push(base.error(&e).finish()),
            }
        }
    }
    Ok(rows)
}

fn bounds_rows(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let kind = ExperimentKind::BoundsTable;
    let a = constant_a(CONSTANT_A_TERMS);
    let mut rows = Vec::new();
    for spec in &cfg.specs {
        for &len in &cfg.lens {
            let mut row = RowBuilder::new(kind);
            row.set("spec", Cell::text(spec))
                .set("len", Cell::int(len))
                .set("eps", Cell::float(cfg.eps))
                .set("k", Cell::int(cfg.k))
                .set("constant_a", Cell::float(a));
            if cfg.k >= 2 {
                row.set("girth_slope", Cell::float(girth_slope(cfg.k)));
            }
            if matches!(spec.family, Family::Sym | Family::Alt) {
                match positive_word_bound(spec.n, len) {
                    Ok(b) => row.set("positive_bound", Cell::float(rational_to_f64(&b))),
                    Err(e) => row.error(&e),
                };
            } else {
                match length_bound(spec, len, cfg.eps) {
                    Ok(b) => {
                        if let Ok(u) = union_bound_report(spec, cfg.k, b.c_eps, cfg.eps) {
                            row.set("ln_e", Cell::float(u.ln_e))
                                .set("log_e", Cell::float(u.log_e))
                                .set("log_e_estimate", Cell::float(u.log_e_estimate));
                        }
                        row.set("c_eps", Cell::float(b.c_eps))
                        .set("applicable", Cell::int(b.applicable as i64))
                        .set("ln_bound", Cell::float(b.ln_bound))
                            .set("log10_bound", Cell::float(b.ln_bound / std::f64::consts::LN_10))
                    }
                    Err(e) => row.error(&e),
                };
            }
            rows.push(row.finish());
        }
    }
    Ok(rows)
}

/// Median of the integer values of `name` in rows where `group_by` equals `key`.
pub fn median_by(table: &ResultTable, group_by: &str, key: &Cell, name: &str) -> Option<f64> {
    let gi = table.column(group_by)?;
    let ci = table.column(name)?;
    let mut v: Vec<f64> = table.rows.iter().filter(|r| &r.cells[gi] == key).filter_map(|r| r.cells[ci].as_f64()).collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { (v[m - 1] + v[m]) / 2.0 })
}
