//! One result row per (instance, configuration).
//!
//! JSON field order and CSV column order are both the declaration order of
//! [`RunRecord`]; in CSV the cut counts are flattened into `cuts.cycle`,
//! `cuts.cutset` and `cuts.clique`.

use std::io::Write;

use lipp::{Graph, SolveReport, SolverConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cuts {
    pub cycle: usize,
    pub cutset: usize,
    pub clique: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub formulation: String,
    pub clique_mode: String,
    pub status: String,
    pub objective: usize,
    pub best_bound: f64,
    /// `null` when no path was found, where the gap is unbounded.
    pub gap_percent: Option<f64>,
    pub nodes: u64,
    pub cuts: Cuts,
    pub root_bound: f64,
    pub warm_start_value: Option<usize>,
    /// Heuristic plus solver wall-clock time.
    pub time_seconds: f64,
}

impl RunRecord {
    pub fn new(
        instance: &str,
        g: &Graph,
        cfg: &SolverConfig,
        report: &SolveReport,
        warm_start_value: Option<usize>,
        time_seconds: f64,
    ) -> Self {
        RunRecord {
            instance: instance.to_string(),
            n: g.n(),
            m: g.m(),
            formulation: cfg.formulation.name().to_string(),
            clique_mode: cfg.clique_mode.name().to_string(),
            status: report.status.name().to_string(),
            objective: report.objective,
            best_bound: report.best_bound,
            gap_percent: report.gap_percent.is_finite().then_some(report.gap_percent),
            nodes: report.nodes,
            cuts: Cuts { cycle: report.cuts.cycle, cutset: report.cuts.cutset, clique: report.cuts.clique },
            root_bound: report.root_bound,
            warm_start_value,
            time_seconds,
        }
    }
}

/// The flat CSV shape of a [`RunRecord`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct CsvRow {
    instance: String,
    n: usize,
    m: usize,
    formulation: String,
    #[serde(rename = "cliqueMode")]
    clique_mode: String,
    status: String,
    objective: usize,
    #[serde(rename = "bestBound")]
    best_bound: f64,
    #[serde(rename = "gapPercent")]
    gap_percent: Option<f64>,
    nodes: u64,
    #[serde(rename = "cuts.cycle")]
    cuts_cycle: usize,
    #[serde(rename = "cuts.cutset")]
    cuts_cutset: usize,
    #[serde(rename = "cuts.clique")]
    cuts_clique: usize,
    #[serde(rename = "rootBound")]
    root_bound: f64,
    #[serde(rename = "warmStartValue")]
    warm_start_value: Option<usize>,
    #[serde(rename = "timeSeconds")]
    time_seconds: f64,
}

impl From<&RunRecord> for CsvRow {
    fn from(r: &RunRecord) -> Self {
        CsvRow {
            instance: r.instance.clone(),
            n: r.n,
            m: r.m,
            formulation: r.formulation.clone(),
            clique_mode: r.clique_mode.clone(),
            status: r.status.clone(),
            objective: r.objective,
            best_bound: r.best_bound,
            gap_percent: r.gap_percent,
            nodes: r.nodes,
            cuts_cycle: r.cuts.cycle,
            cuts_cutset: r.cuts.cutset,
            cuts_clique: r.cuts.clique,
            root_bound: r.root_bound,
            warm_start_value: r.warm_start_value,
            time_seconds: r.time_seconds,
        }
    }
}

impl From<CsvRow> for RunRecord {
    fn from(r: CsvRow) -> Self {
        RunRecord {
            instance: r.instance,
            n: r.n,
            m: r.m,
            formulation: r.formulation,
            clique_mode: r.clique_mode,
            status: r.status,
            objective: r.objective,
            best_bound: r.best_bound,
            gap_percent: r.gap_percent,
            nodes: r.nodes,
            cuts: Cuts { cycle: r.cuts_cycle, cutset: r.cuts_cutset, clique: r.cuts_clique },
            root_bound: r.root_bound,
            warm_start_value: r.warm_start_value,
            time_seconds: r.time_seconds,
        }
    }
}

pub const CSV_COLUMNS: [&str; 16] = [
    "instance",
    "n",
    "m",
    "formulation",
    "cliqueMode",
    "status",
    "objective",
    "bestBound",
    "gapPercent",
    "nodes",
    "cuts.cycle",
    "cuts.cutset",
    "cuts.clique",
    "rootBound",
    "warmStartValue",
    "timeSeconds",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Writes records as JSON lines or as CSV with a header.
pub struct RecordWriter<W: Write> {
    inner: Inner<W>,
}

enum Inner<W: Write> {
    Json(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: OutputFormat) -> anyhow::Result<Self> {
        let inner = match format {
            OutputFormat::Json => Inner::Json(out),
            OutputFormat::Csv => {
                // the header goes out even when no record follows
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
                w.write_record(CSV_COLUMNS)?;
                Inner::Csv(Box::new(w))
            }
        };
        Ok(RecordWriter { inner })
    }

    pub fn write(&mut self, r: &RunRecord) -> anyhow::Result<()> {
        match &mut self.inner {
            Inner::Json(w) => {
                serde_json::to_writer(&mut *w, r)?;
                writeln!(w)?;
            }
            Inner::Csv(w) => w.serialize(CsvRow::from(r))?,
        }
        Ok(())
    }

    pub fn flush(&mut self) -> anyhow::Result<()> {
        match &mut self.inner {
            Inner::Json(w) => w.flush()?,
            Inner::Csv(w) => w.flush()?,
        }
        Ok(())
    }
}

/// Reads back the CSV written by [`RecordWriter`].
#[cfg(test)]
pub fn read_csv(text: &str) -> anyhow::Result<Vec<RunRecord>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rd.deserialize::<CsvRow>() {
        out.push(row?.into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunRecord {
        RunRecord {
            instance: "karate".into(),
            n: 34,
            m: 78,
            formulation: "cut".into(),
            clique_mode: "apriori".into(),
            status: "Optimal".into(),
            objective: 9,
            best_bound: 9.0,
            gap_percent: Some(0.0),
            nodes: 13,
            cuts: Cuts { cycle: 0, cutset: 41, clique: 7 },
            root_bound: 13.629_629_629_629_63,
            warm_start_value: Some(8),
            time_seconds: 0.123_456_789,
        }
    }

    #[test]
    fn json_round_trip() {
        for r in [sample(), RunRecord { gap_percent: None, warm_start_value: None, ..sample() }] {
            let text = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<RunRecord>(&text).unwrap(), r);
        }
    }

    #[test]
    fn json_field_order() {
        let text = serde_json::to_string(&sample()).unwrap();
        let keys = [
            "instance",
            "n",
            "m",
            "formulation",
            "cliqueMode",
            "status",
            "objective",
            "bestBound",
            "gapPercent",
            "nodes",
            "cuts",
            "rootBound",
            "warmStartValue",
            "timeSeconds",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\":")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
    }

    #[test]
    fn csv_round_trip_and_header() {
        let rows = [sample(), RunRecord { gap_percent: None, warm_start_value: None, ..sample() }];
        let mut buf = Vec::new();
        let mut w = RecordWriter::new(&mut buf, OutputFormat::Csv).unwrap();
        for r in &rows {
            w.write(r).unwrap();
        }
        w.flush().unwrap();
        drop(w);
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
        assert_eq!(read_csv(&text).unwrap(), rows);
    }

    #[test]
    fn empty_csv_has_only_the_header() {
        let mut buf = Vec::new();
        RecordWriter::new(&mut buf, OutputFormat::Csv).unwrap().flush().unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
    }
}
