// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use xtalk::analytic::Evaluation;
use xtalk::cac::{Codebook, Family, DEFAULT_NODE_BUDGET};
use xtalk::report::{
    build_codebook, cmd_cac, cmd_classify, cmd_compare, cmd_delay, cmd_simulate, cmd_worst, CodeSelection, OracleKind,
    Render, SearchMethod,
};
use xtalk::scenario::{OutputFormat, PatternEntry, Scenario};
use xtalk::search::DEFAULT_BUDGET;
use xtalk::sim::{default_t_end, spice_netlist};
use xtalk::{CrosstalkClass, Error, ModelTag, Result, TransitionPattern};

#[derive(Parser)]
#[command(name = "xtalk", version, about = "Crosstalk delay estimates for capacitively coupled RC buses")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario JSON; the bundled three-wire reference bus otherwise.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,

    /// table, csv or json. Overrides the scenario's choice.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct Selection {
    /// Pattern to time, e.g. `dud` or `010>101`. Repeatable; replaces the
    /// scenario's patterns and resizes the bus to match.
    #[arg(long = "pattern", allow_hyphen_values = true)]
    patterns: Vec<String>,

    /// Wire to time, counted from 1. Defaults to the middle wire.
    #[arg(long)]
    wire: Option<usize>,
}

#[derive(clap::Args)]
struct Models {
    /// baseline, three-wire, five-wire, boundary1, boundary2 or simulator.
    /// Repeatable; replaces the scenario's list.
    #[arg(long = "model")]
    models: Vec<ModelTag>,

    /// crossing (root of the modal waveform) or table (closed-form delay of the class).
    #[arg(long)]
    evaluation: Option<Evaluation>,

    /// Ignore driver resistance and load in the analytic models.
    #[arg(long)]
    unbuffered: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Crosstalk class of every wire.
    Classify {
        #[arg(allow_hyphen_values = true)]
        pattern: String,
    },
    /// Delay of each pattern under each model.
    Delay {
        #[command(flatten)]
        selection: Selection,
        #[command(flatten)]
        models: Models,
    },
    /// Transient simulation of each pattern, every switching wire.
    Simulate {
        #[command(flatten)]
        selection: Selection,
        /// Directory for far-end waveform CSVs, one per pattern.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Directory for SPICE decks of the simulated ladder.
        #[arg(long)]
        spice: Option<PathBuf>,
    },
    /// Analytic models against the simulator, with percentage errors.
    Compare {
        #[command(flatten)]
        selection: Selection,
        #[command(flatten)]
        models: Models,
    },
    /// Worst-case pattern for the middle wire.
    Worst {
        #[arg(long)]
        wires: usize,
        #[arg(long)]
        class: CrosstalkClass,
        /// alg1, exhaustive or symmetric.
        #[arg(long, default_value = "alg1")]
        method: SearchMethod,
        /// simulator or analytic.
        #[arg(long, default_value = "simulator")]
        oracle: OracleKind,
        /// Oracle calls allowed for the sweeps.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        models: Models,
    },
    /// Build or import a crosstalk-avoidance codebook, certify it, and
    /// optionally time all its transitions.
    Cac {
        #[arg(long, required_unless_present = "import")]
        wires: Option<usize>,
        /// olc, fpc or foc.
        #[arg(long, conflicts_with_all = ["cap", "import"])]
        family: Option<Family>,
        /// Largest class allowed in any transition, e.g. 3C.
        #[arg(long, conflicts_with = "import")]
        cap: Option<CrosstalkClass>,
        /// Codebook JSON to certify instead of generating one.
        #[arg(long)]
        import: Option<PathBuf>,
        /// Write the codebook JSON here.
        #[arg(long)]
        export: Option<PathBuf>,
        /// simulator or analytic; omit to skip delay evaluation.
        #[arg(long)]
        evaluator: Option<OracleKind>,
        /// Node budget of the exact search.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[command(flatten)]
        models: Models,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_scenario(path: Option<&Path>) -> Result<Scenario> {
    match path {
        Some(p) => Scenario::from_json(&read(p)?),
        None => Ok(Scenario::reference()),
    }
}

fn apply_selection(scenario: &mut Scenario, sel: &Selection) -> Result<()> {
    let patterns = sel.patterns.iter().map(|p| p.parse()).collect::<Result<Vec<TransitionPattern>>>()?;
    if let Some(first) = patterns.first() {
        let m = first.wire_count();
        if let Some(p) = patterns.iter().find(|p| p.wire_count() != m) {
            return Err(Error::InvalidPattern(format!("pattern {p} has {} wires, {first} has {m}", p.wire_count())));
        }
        scenario.bus = scenario.bus.clone().with_wire_count(m)?;
        scenario.patterns = patterns.into_iter().map(PatternEntry::Pattern).collect();
        scenario.observed_wire = None;
    }
    if let Some(w) = sel.wire {
        if w == 0 {
            return Err(Error::WireOutOfRange { index: 0, count: scenario.bus.wire_count() });
        }
        scenario.observed_wire = Some(w - 1);
    }
    scenario.validate()
}

fn apply_models(scenario: &mut Scenario, models: &Models) -> Result<()> {
    if !models.models.is_empty() {
        scenario.models = models.models.clone();
    }
    if let Some(e) = models.evaluation {
        scenario.evaluation = e;
    }
    if models.unbuffered {
        scenario.buffered = false;
    }
    scenario.validate()
}

fn run(cli: Cli) -> Result<String> {
    let mut scenario = load_scenario(cli.scenario.as_deref())?;
    let format = cli.format.unwrap_or(scenario.output);
    match cli.command {
        Command::Classify { pattern } => cmd_classify(&pattern.parse()?).render(format),
        Command::Delay { selection, models } => {
            apply_selection(&mut scenario, &selection)?;
            apply_models(&mut scenario, &models)?;
            cmd_delay(&scenario)?.render(format)
        }
        Command::Simulate { selection, trace, spice } => {
            apply_selection(&mut scenario, &selection)?;
            let (report, traces) = cmd_simulate(&scenario, trace.is_some())?;
            if let Some(dir) = &trace {
                fs::create_dir_all(dir)?;
                for (i, csv) in traces.iter().enumerate() {
                    if let Some(csv) = csv {
                        write(&dir.join(format!("trace_{}.csv", i + 1)), csv)?;
                    }
                }
            }
            if let Some(dir) = &spice {
                fs::create_dir_all(dir)?;
                let t_end = default_t_end(&scenario.bus);
                for (i, row) in report.rows.iter().enumerate() {
                    let deck = spice_netlist(&scenario.bus, &row.pattern, t_end);
                    write(&dir.join(format!("pattern_{}.sp", i + 1)), &deck)?;
                }
            }
            report.render(format)
        }
        Command::Compare { selection, models } => {
            apply_selection(&mut scenario, &selection)?;
            apply_models(&mut scenario, &models)?;
            cmd_compare(&scenario)?.render(format)
        }
        Command::Worst { wires, class, method, oracle, budget, models } => {
            apply_models(&mut scenario, &models)?;
            let spec = scenario.bus.clone().with_wire_count(wires)?;
            cmd_worst(&spec, class, method, oracle, scenario.evaluator(), budget)?.render(format)
        }
        Command::Cac { wires, family, cap, import, export, evaluator, budget, models } => {
            apply_models(&mut scenario, &models)?;
            let (book, selection) = match (&import, family, cap) {
                (Some(path), _, _) => {
                    let book = Codebook::from_json(&read(path)?)?;
                    if let Some(n) = wires.filter(|&n| n != book.width()) {
                        return Err(Error::WidthMismatch { left: n, right: book.width() });
                    }
                    let cap = book.class_cap();
                    (book, CodeSelection::Cap(cap))
                }
                (None, Some(f), _) => {
                    let sel = CodeSelection::Family(f);
                    (build_codebook(wires.unwrap_or(0), sel, budget)?, sel)
                }
                (None, None, Some(c)) => {
                    let sel = CodeSelection::Cap(c);
                    (build_codebook(wires.unwrap_or(0), sel, budget)?, sel)
                }
                (None, None, None) => {
                    return Err(Error::InvalidScenario("cac needs --family, --cap or --import".into()));
                }
            };
            if let Some(path) = &export {
                write(path, &(book.to_json()? + "\n"))?;
            }
            cmd_cac(book, selection, &scenario.bus, evaluator, scenario.evaluator())?.render(format)
        }
    }
}

fn fail(kind: &str, message: &str) -> ExitCode {
    eprintln!("{}", serde_json::json!({ "error": kind, "message": message }));
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", e.to_string().trim_end()),
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(text) => match out {
            Some(path) => match write(&path, &text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e.kind(), &e.to_string()),
            },
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(e) => fail(e.kind(), &e.to_string()),
    }
}
