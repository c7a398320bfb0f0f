//! Writing result tables: CSV (the artifact of record), JSON, and an SVG summary chart.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::harness::config::{ExperimentKind, OutputFormat};
use crate::harness::experiment::{median_by, Cell, ResultRow, ResultTable};

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Decode(format!("{other:?}")),
    }
}

/// CSV with a header row, RFC 4180 quoting and `\n` line endings.
pub fn to_csv(table: &ResultTable) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&table.columns).map_err(csv_error)?;
    for r in &table.rows {
        w.write_record(r.cells.iter().map(|c| c.to_string())).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub fn parse_csv(text: &str) -> Result<ResultTable> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let columns = r.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| {
            let rec = rec.map_err(csv_error)?;
            Ok(ResultRow {
                cells: rec.iter().map(Cell::parse).collect(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ResultTable { columns, rows })
}

fn json_value(c: &Cell) -> Value {
    match c {
        Cell::Int(i) => Value::from(*i),
        Cell::Float(x) => Value::from(*x),
        Cell::Text(s) => Value::from(s.as_str()),
        Cell::Na => Value::Null,
    }
}

/// An array of objects keyed by column name, in column order.
pub fn to_json(table: &ResultTable) -> Result<String> {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| Value::Object(table.columns.iter().cloned().zip(r.cells.iter().map(json_value)).collect::<Map<_, _>>()))
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn render(table: &ResultTable, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => to_csv(table),
        OutputFormat::Json => to_json(table),
    }
}

/// Writes the table to `out` (stdout when `None`) and the summary chart to `svg`.
pub fn emit(table: &ResultTable, kind: ExperimentKind, format: OutputFormat, out: Option<&Path>, svg: Option<&Path>) -> Result<()> {
    let text = render(table, format)?;
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if let Some(p) = svg {
        std::fs::write(p, summary_svg(table, kind))?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

fn distinct(table: &ResultTable, name: &str) -> Vec<Cell> {
    let Some(i) = table.column(name) else { return Vec::new() };
    let mut out: Vec<Cell> = Vec::new();
    for r in &table.rows {
        if !out.contains(&r.cells[i]) {
            out.push(r.cells[i].clone());
        }
    }
    out
}

fn points(table: &ResultTable, filter: (&str, &Cell), x: &str, y: &str) -> Vec<(f64, f64)> {
    let (Some(fi), Some(xi), Some(yi)) = (table.column(filter.0), table.column(x), table.column(y)) else {
        return Vec::new();
    };
    let mut pts: Vec<(f64, f64)> = table
        .rows
        .iter()
        .filter(|r| &r.cells[fi] == filter.1)
        .filter_map(|r| Some((r.cells[xi].as_f64()?, r.cells[yi].as_f64()?)))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts
}

/// The series plotted for each experiment kind.
pub fn summary_series(table: &ResultTable, kind: ExperimentKind) -> (String, String, Vec<Series>) {
    let per_spec = |x: &str, y: &str| -> Vec<Series> {
        distinct(table, "spec")
            .iter()
            .map(|s| Series {
                name: s.to_string(),
                points: points(table, ("spec", s), x, y),
            })
            .collect()
    };
    match kind {
        ExperimentKind::GirthScan => {
            let pts = distinct(table, "spec")
                .iter()
                .filter_map(|s| {
                    let i = table.rows.iter().position(|r| &r.cells[0] == s)?;
                    Some((table.get(i, "n")?.as_f64()?, median_by(table, "spec", s, "girth")?))
                })
                .collect();
            ("n".into(), "median girth".into(), vec![Series { name: "median girth".into(), points: pts }])
        }
        ExperimentKind::DgScan => ("girth".into(), "diameter".into(), per_spec("girth", "diameter")),
        ExperimentKind::TrajectoryScan => {
            let mut s = per_spec("i", "empirical");
            s.extend(per_spec("i", "bound").into_iter().map(|mut x| {
                x.name.push_str(" bound");
                x
            }));
            ("trajectory".into(), "dependence frequency".into(), s)
        }
        ExperimentKind::ProbeWord => ("trial".into(), "p_hat".into(), per_spec("trial", "p_hat")),
        ExperimentKind::BoundsTable => ("len".into(), "log10 bound".into(), per_spec("len", "log10_bound")),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

/// Line chart with axes, one polyline and its points per series.
pub fn svg_chart(x_label: &str, y_label: &str, series: &[Series]) -> String {
    let (w, h, m) = (640.0, 420.0, 60.0);
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().copied()).collect();
    let bounds = |f: fn(&(f64, f64)) -> f64| {
        let lo = all.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = all.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        match (lo.is_finite(), hi > lo) {
            (false, _) => (0.0, 1.0),
            (true, true) => (lo, hi),
            (true, false) => (lo - 0.5, lo + 0.5),
        }
    };
    let (x0, x1) = bounds(|p| p.0);
    let (y0, y1) = bounds(|p| p.1);
    let sx = |x: f64| m + (x - x0) / (x1 - x0) * (w - 2.0 * m);
    let sy = |y: f64| h - m - (y - y0) / (y1 - y0) * (h - 2.0 * m);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r#"<line x1="{m}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#, h - m, w - m, h - m);
    let _ = writeln!(s, r#"<line x1="{m}" y1="{m}" x2="{m}" y2="{}" stroke="black"/>"#, h - m);
    for (v, x) in [(x0, sx(x0)), (x1, sx(x1))] {
        let _ = writeln!(s, r#"<text x="{x:.1}" y="{:.1}" font-size="11" text-anchor="middle">{}</text>"#, h - m + 16.0, fmt_tick(v));
    }
    for (v, y) in [(y0, sy(y0)), (y1, sy(y1))] {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{y:.1}" font-size="11" text-anchor="end">{}</text>"#, m - 6.0, fmt_tick(v));
    }
    let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="13" text-anchor="middle">{}</text>"#, w / 2.0, h - 15.0, escape(x_label));
    let _ = writeln!(
        s,
        r#"<text x="15" y="{:.1}" font-size="13" text-anchor="middle" transform="rotate(-90 15 {:.1})">{}</text>"#,
        h / 2.0,
        h / 2.0,
        escape(y_label)
    );
    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.1},{:.1}", sx(x), sy(y))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" points="{}"><title>{}</title></polyline>"#, pts.join(" "), escape(&ser.name));
        for &(x, y) in &ser.points {
            let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#, sx(x), sy(y));
        }
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="11" fill="{color}">{}</text>"#, w - m + 4.0, m + 14.0 * i as f64, escape(&ser.name));
    }
    s.push_str("</svg>\n");
    s
}

fn fmt_tick(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e9 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

pub fn summary_svg(table: &ResultTable, kind: ExperimentKind) -> String {
    let (x, y, series) = summary_series(table, kind);
    svg_chart(&x, &y, &series)
}
