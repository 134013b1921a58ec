// SPDX-License-Identifier: Apache-2.0

//! Report commands and their renderers.
//!
//! Every command returns a plain serialisable struct; [`Render`] turns it
//! into an aligned text table, CSV, or JSON. Text outputs give delays in
//! picoseconds with two decimals and number wires from 1; JSON keeps
//! seconds and zero-based wire indices.

use std::cell::OnceCell;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analytic::{model_delay, ProfileEvaluator, WindowModel};
use crate::bus::{baseline_delay, classify_bus, classify_wire, delta_of, BusSpec, CrosstalkClass, DelayEstimate};
use crate::bus::{ModelTag, Transition, TransitionPattern};
use crate::cac::{certify, codebook_worst_delays, family_codebook, generate_codebook, Certificate, Codebook};
use crate::cac::{CodebookDelays, Family};
use crate::error::{Error, Result};
use crate::scenario::{Case, OutputFormat, Scenario};
use crate::search::SearchReport;
use crate::search::{alg1, class_representative, exhaustive, symmetric_enumerate, AnalyticOracle, DelayOracle};
use crate::sim::{build_network, choose_dt, default_t_end, delays_from_trace, simulate, trace_csv, ResponseBank};
use crate::PS;

pub fn ps(seconds: f64) -> String {
    format!("{:.2}", seconds * PS)
}

fn pct(x: f64) -> String {
    format!("{x:.2}")
}

/// Left-aligned columns separated by two spaces.
fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:<w$}", w = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",") + "\n").collect()
}

pub trait Render: Serialize {
    fn table(&self) -> String;
    fn csv(&self) -> String;

    fn render(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Table => self.table(),
            OutputFormat::Csv => self.csv(),
            OutputFormat::Json => serde_json::to_string_pretty(self)? + "\n",
        })
    }
}

// ---------------------------------------------------------------- classify

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub pattern: TransitionPattern,
    pub classes: Vec<CrosstalkClass>,
    pub max: CrosstalkClass,
}

impl ClassifyReport {
    /// Space-separated classes, wire 1 first.
    pub fn summary(&self) -> String {
        self.classes.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// Per-wire classes. The class index does not depend on λ.
pub fn cmd_classify(pattern: &TransitionPattern) -> ClassifyReport {
    let (classes, max) = classify_bus(&delta_of(pattern));
    ClassifyReport { pattern: pattern.clone(), classes, max }
}

impl Render for ClassifyReport {
    fn table(&self) -> String {
        grid(&[
            vec!["pattern".into(), self.pattern.to_string()],
            vec!["classes".into(), self.summary()],
            vec!["max".into(), self.max.to_string()],
        ])
    }

    fn csv(&self) -> String {
        let mut rows = vec![vec!["wire".into(), "transition".into(), "class".into()]];
        for (k, c) in self.classes.iter().enumerate() {
            rows.push(vec![(k + 1).to_string(), self.pattern.transition(k).symbol().to_string(), c.to_string()]);
        }
        csv(&rows)
    }
}

// ------------------------------------------------------------------- delay

/// Times cases under any model; the simulator bank is built on first use.
struct Bench<'a> {
    spec: &'a BusSpec,
    evaluator: ProfileEvaluator,
    bank: OnceCell<std::result::Result<ResponseBank, String>>,
}

impl<'a> Bench<'a> {
    fn new(scenario: &'a Scenario) -> Self {
        Bench { spec: &scenario.bus, evaluator: scenario.evaluator(), bank: OnceCell::new() }
    }

    fn delay(&self, model: ModelTag, case: &Case) -> std::result::Result<f64, String> {
        self.try_delay(model, case).map_err(|e| e.to_string())
    }

    fn try_delay(&self, model: ModelTag, case: &Case) -> Result<f64> {
        let (pattern, wire) = (&case.pattern, case.wire);
        if pattern.transition(wire) == Transition::Steady {
            return Err(Error::NoTransition { wire });
        }
        let window = |w: WindowModel| Ok(model_delay(pattern, wire, w, self.spec, self.evaluator)?.value);
        match model {
            ModelTag::Baseline => Ok(baseline_delay(&delta_of(pattern), wire, self.spec)?.value),
            ModelTag::ThreeWire => window(WindowModel::ThreeWire),
            ModelTag::FiveWire => window(WindowModel::FiveWire),
            ModelTag::Boundary1 => window(WindowModel::Boundary1),
            ModelTag::Boundary2 => window(WindowModel::Boundary2),
            ModelTag::Simulator => {
                let bank = self
                    .bank
                    .get_or_init(|| ResponseBank::build_default(self.spec).map_err(|e| e.to_string()))
                    .as_ref()
                    .map_err(|e| Error::Unsupported(format!("simulator unavailable: {e}")))?;
                bank.delay(pattern, wire)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub model: ModelTag,
    /// Seconds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delay: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Cell {
    fn from(model: ModelTag, r: std::result::Result<f64, String>) -> Self {
        match r {
            Ok(d) => Cell { model, delay: Some(d), error: None },
            Err(e) => Cell { model, delay: None, error: Some(e) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayRow {
    pub pattern: TransitionPattern,
    pub wire: usize,
    pub class: CrosstalkClass,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayReport {
    pub models: Vec<ModelTag>,
    pub rows: Vec<DelayRow>,
}

fn case_class(case: &Case) -> Result<CrosstalkClass> {
    classify_wire(&delta_of(&case.pattern), case.wire)
}

/// Every case under every model. A model that fails on a row leaves an
/// error in that cell and the run goes on.
pub fn cmd_delay(scenario: &Scenario) -> Result<DelayReport> {
    let bench = Bench::new(scenario);
    let rows = scenario
        .cases()?
        .iter()
        .map(|case| {
            Ok(DelayRow {
                pattern: case.pattern.clone(),
                wire: case.wire,
                class: case_class(case)?,
                cells: scenario.models.iter().map(|&m| Cell::from(m, bench.delay(m, case))).collect(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(DelayReport { models: scenario.models.clone(), rows })
}

fn notes(out: &mut String, rows: impl Iterator<Item = (usize, ModelTag, String)>) {
    for (i, model, e) in rows {
        let _ = writeln!(out, "note: row {} {model}: {e}", i + 1);
    }
}

impl Render for DelayReport {
    fn table(&self) -> String {
        let mut head = vec!["pattern".to_string(), "wire".into(), "class".into()];
        head.extend(self.models.iter().map(|m| format!("{m}_ps")));
        let mut rows = vec![head];
        for r in &self.rows {
            let mut line = vec![r.pattern.to_string(), (r.wire + 1).to_string(), r.class.to_string()];
            line.extend(r.cells.iter().map(|c| c.delay.map_or("-".into(), ps)));
            rows.push(line);
        }
        let mut out = grid(&rows);
        notes(
            &mut out,
            self.rows
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.cells.iter().filter_map(move |c| c.error.clone().map(|e| (i, c.model, e)))),
        );
        out
    }

    fn csv(&self) -> String {
        let mut rows = vec![["pattern", "wire", "class", "model", "delay_ps", "error"].map(String::from).to_vec()];
        for r in &self.rows {
            for c in &r.cells {
                rows.push(vec![
                    r.pattern.to_string(),
                    (r.wire + 1).to_string(),
                    r.class.to_string(),
                    c.model.to_string(),
                    c.delay.map_or(String::new(), ps),
                    c.error.clone().unwrap_or_default(),
                ]);
            }
        }
        csv(&rows)
    }
}

// ---------------------------------------------------------------- simulate

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub pattern: TransitionPattern,
    pub delays: Vec<DelayEstimate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    /// Seconds.
    pub dt: f64,
    pub t_end: f64,
    pub segments: usize,
    pub rows: Vec<SimRow>,
}

/// Full transient run per pattern. Returns the report and, when `traces` is
/// set, one far-end CSV per row (`None` for rows that did not simulate).
pub fn cmd_simulate(scenario: &Scenario, traces: bool) -> Result<(SimulateReport, Vec<Option<String>>)> {
    let spec = &scenario.bus;
    let cases = scenario.cases()?;
    let mut patterns: Vec<TransitionPattern> = Vec::new();
    for c in cases {
        if !patterns.contains(&c.pattern) {
            patterns.push(c.pattern);
        }
    }
    let t_end = default_t_end(spec);
    let (dt, net) = if patterns.iter().any(|p| !p.is_quiet()) {
        (choose_dt(spec)?, Some(build_network(spec)?))
    } else {
        (0.0, None)
    };
    let mut rows = Vec::new();
    let mut csvs = Vec::new();
    for pattern in patterns {
        let net = match (&net, pattern.is_quiet()) {
            (Some(net), false) => net,
            _ => {
                rows.push(SimRow { pattern, delays: Vec::new(), note: Some("no transitions".into()) });
                csvs.push(None);
                continue;
            }
        };
        let run = simulate(net, &pattern, dt, t_end).and_then(|t| Ok((delays_from_trace(&t, &pattern)?, t)));
        match run {
            Ok((delays, trace)) => {
                csvs.push(traces.then(|| trace_csv(&trace)));
                rows.push(SimRow { pattern, delays, note: None });
            }
            Err(e) => {
                csvs.push(None);
                rows.push(SimRow { pattern, delays: Vec::new(), note: Some(e.to_string()) });
            }
        }
    }
    Ok((SimulateReport { dt, t_end, segments: spec.segments(), rows }, csvs))
}

impl Render for SimulateReport {
    fn table(&self) -> String {
        let mut rows = vec![["pattern", "wire", "class", "delay_ps"].map(String::from).to_vec()];
        for r in &self.rows {
            if let Some(note) = &r.note {
                rows.push(vec![r.pattern.to_string(), "-".into(), "-".into(), note.clone()]);
            }
            for d in &r.delays {
                rows.push(vec![r.pattern.to_string(), (d.wire + 1).to_string(), d.class.to_string(), ps(d.value)]);
            }
        }
        let mut out = grid(&rows);
        let _ = writeln!(out, "dt {} ps, t_end {} ps, {} segments", ps(self.dt), ps(self.t_end), self.segments);
        out
    }

    fn csv(&self) -> String {
        let mut rows = vec![["pattern", "wire", "class", "delay_ps", "note"].map(String::from).to_vec()];
        for r in &self.rows {
            if let Some(note) = &r.note {
                rows.push(vec![r.pattern.to_string(), String::new(), String::new(), String::new(), note.clone()]);
            }
            for d in &r.delays {
                rows.push(vec![
                    r.pattern.to_string(),
                    (d.wire + 1).to_string(),
                    d.class.to_string(),
                    ps(d.value),
                    String::new(),
                ]);
            }
        }
        csv(&rows)
    }
}

// ----------------------------------------------------------------- compare

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelError {
    pub model: ModelTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delay: Option<f64>,
    /// `100·(T − T_sim)/T_sim`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signed_error_pct: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_error_pct: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub pattern: TransitionPattern,
    pub wire: usize,
    pub class: CrosstalkClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulated: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub models: Vec<ModelError>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub models: Vec<ModelTag>,
    pub rows: Vec<CompareRow>,
}

/// Relative error of `model` against `reference`, in percent.
pub fn error_pct(model: f64, reference: f64) -> f64 {
    100.0 * (model - reference) / reference
}

/// Each analytic model against the simulator, row by row.
pub fn cmd_compare(scenario: &Scenario) -> Result<CompareReport> {
    if !scenario.models.contains(&ModelTag::Simulator) {
        return Err(Error::InvalidScenario("compare needs the simulator in the model list".into()));
    }
    let models: Vec<ModelTag> = scenario.models.iter().copied().filter(|&m| m != ModelTag::Simulator).collect();
    if models.is_empty() {
        return Err(Error::InvalidScenario("compare needs at least one analytic model".into()));
    }
    let bench = Bench::new(scenario);
    let rows = scenario
        .cases()?
        .iter()
        .map(|case| {
            let sim = bench.delay(ModelTag::Simulator, case);
            let simulated = sim.as_ref().ok().copied();
            let cells = models
                .iter()
                .map(|&model| match bench.delay(model, case) {
                    Ok(d) => {
                        let signed = simulated.map(|s| error_pct(d, s));
                        ModelError {
                            model,
                            delay: Some(d),
                            signed_error_pct: signed,
                            abs_error_pct: signed.map(f64::abs),
                            error: None,
                        }
                    }
                    Err(e) => {
                        ModelError { model, delay: None, signed_error_pct: None, abs_error_pct: None, error: Some(e) }
                    }
                })
                .collect();
            Ok(CompareRow {
                pattern: case.pattern.clone(),
                wire: case.wire,
                class: case_class(case)?,
                simulated,
                error: sim.err(),
                models: cells,
            })
        })
        .collect::<Result<_>>()?;
    Ok(CompareReport { models, rows })
}

impl Render for CompareReport {
    fn table(&self) -> String {
        let mut head = vec!["class".to_string(), "pattern".into(), "wire".into(), "simulator_ps".into()];
        for m in &self.models {
            head.push(format!("{m}_ps"));
            head.push("err_%".into());
        }
        let mut rows = vec![head];
        for r in &self.rows {
            let mut line = vec![
                r.class.to_string(),
                r.pattern.to_string(),
                (r.wire + 1).to_string(),
                r.simulated.map_or("-".into(), ps),
            ];
            for c in &r.models {
                line.push(c.delay.map_or("-".into(), ps));
                line.push(c.signed_error_pct.map_or("-".into(), pct));
            }
            rows.push(line);
        }
        let mut out = grid(&rows);
        notes(
            &mut out,
            self.rows.iter().enumerate().flat_map(|(i, r)| {
                let sim = r.error.clone().map(|e| (i, ModelTag::Simulator, e));
                sim.into_iter().chain(r.models.iter().filter_map(move |c| c.error.clone().map(|e| (i, c.model, e))))
            }),
        );
        out
    }

    fn csv(&self) -> String {
        let mut rows = vec![[
            "pattern",
            "wire",
            "class",
            "simulator_ps",
            "model",
            "delay_ps",
            "signed_error_pct",
            "abs_error_pct",
            "error",
        ]
        .map(String::from)
        .to_vec()];
        for r in &self.rows {
            for c in &r.models {
                rows.push(vec![
                    r.pattern.to_string(),
                    (r.wire + 1).to_string(),
                    r.class.to_string(),
                    r.simulated.map_or(String::new(), ps),
                    c.model.to_string(),
                    c.delay.map_or(String::new(), ps),
                    c.signed_error_pct.map_or(String::new(), pct),
                    c.abs_error_pct.map_or(String::new(), pct),
                    c.error.clone().or_else(|| r.error.clone()).unwrap_or_default(),
                ]);
            }
        }
        csv(&rows)
    }
}

// ------------------------------------------------------------------- worst

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    Alg1,
    Exhaustive,
    Symmetric,
}

impl std::str::FromStr for SearchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alg1" => Ok(SearchMethod::Alg1),
            "exhaustive" => Ok(SearchMethod::Exhaustive),
            "symmetric" => Ok(SearchMethod::Symmetric),
            _ => Err(Error::InvalidScenario(format!("unknown search method {s:?}"))),
        }
    }
}

/// Where delays come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    Simulator,
    Analytic,
}

impl std::str::FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simulator" => Ok(OracleKind::Simulator),
            "analytic" => Ok(OracleKind::Analytic),
            _ => Err(Error::InvalidScenario(format!("unknown evaluator {s:?}"))),
        }
    }
}

fn make_oracle(kind: OracleKind, spec: &BusSpec, evaluator: ProfileEvaluator) -> Result<Box<dyn DelayOracle>> {
    Ok(match kind {
        OracleKind::Simulator => Box::new(ResponseBank::build_default(spec)?),
        OracleKind::Analytic => Box::new(AnalyticOracle { spec: spec.clone(), evaluator }),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstReport {
    pub wires: usize,
    pub method: SearchMethod,
    pub oracle: OracleKind,
    pub search: SearchReport,
}

/// Worst pattern of `class` for the middle wire of `spec`.
pub fn cmd_worst(
    spec: &BusSpec,
    class: CrosstalkClass,
    method: SearchMethod,
    oracle: OracleKind,
    evaluator: ProfileEvaluator,
    budget: u64,
) -> Result<WorstReport> {
    let m = spec.wire_count();
    if m % 2 == 0 {
        return Err(Error::Unsupported(format!("worst-case search needs an odd wire count, got {m}")));
    }
    let bank = make_oracle(oracle, spec, evaluator)?;
    let search = match method {
        SearchMethod::Alg1 => alg1(m, class, &class_representative(class), bank.as_ref())?,
        SearchMethod::Exhaustive => exhaustive(m, class, bank.as_ref(), budget)?,
        SearchMethod::Symmetric => symmetric_enumerate(m, class, bank.as_ref(), budget)?,
    };
    Ok(WorstReport { wires: m, method, oracle, search })
}

fn method_name(m: SearchMethod) -> &'static str {
    match m {
        SearchMethod::Alg1 => "alg1",
        SearchMethod::Exhaustive => "exhaustive",
        SearchMethod::Symmetric => "symmetric",
    }
}

fn oracle_name(o: OracleKind) -> &'static str {
    match o {
        OracleKind::Simulator => "simulator",
        OracleKind::Analytic => "analytic",
    }
}

impl Render for WorstReport {
    fn table(&self) -> String {
        let s = &self.search;
        let mut out = grid(&[
            vec!["wires".into(), self.wires.to_string()],
            vec!["method".into(), method_name(self.method).into()],
            vec!["oracle".into(), oracle_name(self.oracle).into()],
            vec!["class".into(), s.class.to_string()],
            vec!["pattern".into(), s.pattern.to_string()],
            vec!["delay_ps".into(), ps(s.delay)],
            vec!["iterations".into(), s.iterations.to_string()],
            vec!["evaluations".into(), s.evaluations.to_string()],
        ]);
        out.push_str("trajectory\n");
        let rows: Vec<Vec<String>> = s
            .trajectory
            .iter()
            .enumerate()
            .map(|(i, t)| vec![format!("  {i}"), t.pattern.to_string(), ps(t.delay)])
            .collect();
        out.push_str(&grid(&rows));
        out
    }

    fn csv(&self) -> String {
        let mut rows = vec![["step", "pattern", "delay_ps"].map(String::from).to_vec()];
        for (i, t) in self.search.trajectory.iter().enumerate() {
            rows.push(vec![i.to_string(), t.pattern.to_string(), ps(t.delay)]);
        }
        csv(&rows)
    }
}

// --------------------------------------------------------------------- cac

/// Which codebook to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeSelection {
    Family(Family),
    Cap(CrosstalkClass),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacReport {
    pub selection: CodeSelection,
    pub width: usize,
    pub codewords: usize,
    pub transitions: usize,
    pub optimal: bool,
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delays: Option<CodebookDelays>,
    pub codebook: Codebook,
}

/// Builds (or takes) a codebook, certifies it, and optionally times every
/// transition on an `n`-wire copy of `spec`.
pub fn cmd_cac(
    book: Codebook,
    selection: CodeSelection,
    spec: &BusSpec,
    oracle: Option<OracleKind>,
    evaluator: ProfileEvaluator,
) -> Result<CacReport> {
    let certificate = certify(&book)?;
    let delays = match oracle {
        Some(kind) => {
            let spec = spec.clone().with_wire_count(book.width())?;
            Some(codebook_worst_delays(&book, make_oracle(kind, &spec, evaluator)?.as_ref())?)
        }
        None => None,
    };
    Ok(CacReport {
        selection,
        width: book.width(),
        codewords: book.len(),
        transitions: book.transition_count(),
        optimal: book.is_optimal(),
        certificate,
        delays,
        codebook: book,
    })
}

/// Codebook for a selection.
pub fn build_codebook(n: usize, selection: CodeSelection, node_budget: u64) -> Result<Codebook> {
    match selection {
        CodeSelection::Family(f) => family_codebook(n, f, node_budget),
        CodeSelection::Cap(cap) => generate_codebook(n, cap, node_budget),
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

impl Render for CacReport {
    fn table(&self) -> String {
        let code = match self.selection {
            CodeSelection::Family(f) => format!("{f} (cap {})", f.cap()),
            CodeSelection::Cap(c) => format!("cap {c}"),
        };
        let mut out = grid(&[
            vec!["code".into(), code],
            vec!["width".into(), self.width.to_string()],
            vec!["codewords".into(), self.codewords.to_string()],
            vec!["transitions".into(), self.transitions.to_string()],
            vec!["optimal".into(), yes_no(self.optimal)],
            vec![
                "certified".into(),
                format!("{} ({} violations)", yes_no(self.certificate.valid), self.certificate.violations.len()),
            ],
        ]);
        if let Some(d) = &self.delays {
            let mut rows = vec![["wire", "worst_ps", "from", "to"].map(String::from).to_vec()];
            for (k, w) in d.per_wire.iter().enumerate() {
                rows.push(match w {
                    Some(w) => vec![(k + 1).to_string(), ps(w.delay), w.from.clone(), w.to.clone()],
                    None => vec![(k + 1).to_string(), "-".into()],
                });
            }
            out.push_str(&grid(&rows));
            if let Some(w) = &d.overall {
                let _ = writeln!(out, "overall worst: wire {} {} ps ({} -> {})", w.wire + 1, ps(w.delay), w.from, w.to);
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut rows = vec![["wire", "worst_ps", "from", "to"].map(String::from).to_vec()];
        if let Some(d) = &self.delays {
            for (k, w) in d.per_wire.iter().enumerate() {
                rows.push(match w {
                    Some(w) => vec![(k + 1).to_string(), ps(w.delay), w.from.clone(), w.to.clone()],
                    None => vec![(k + 1).to_string(), String::new(), String::new(), String::new()],
                });
            }
        }
        csv(&rows)
    }
}

impl Render for Certificate {
    fn table(&self) -> String {
        let mut out = grid(&[
            vec!["width".into(), self.width.to_string()],
            vec!["cap".into(), self.cap.to_string()],
            vec!["codewords".into(), self.codewords.to_string()],
            vec!["transitions".into(), self.transitions.to_string()],
            vec!["valid".into(), yes_no(self.valid)],
        ]);
        for v in &self.violations {
            let _ = writeln!(out, "violation: {} -> {} is {}", v.from, v.to, v.class);
        }
        out
    }

    fn csv(&self) -> String {
        let mut rows = vec![["from", "to", "class"].map(String::from).to_vec()];
        rows.extend(self.violations.iter().map(|v| vec![v.from.clone(), v.to.clone(), v.class.to_string()]));
        csv(&rows)
    }
}
