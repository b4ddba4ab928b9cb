//! Command-line front end.

pub mod parse;
pub mod plot;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analyzer::{analyze_with_profile, Analysis, AnalysisResult};
use crate::cwcell::{build, validate_complex, EquivariantCellComplex};
use crate::error::{Error, Result};
use crate::gridmodule::{
    borel, borel_dims, check_consequences, decompose_module, dualize, realize, BigradedModule, DimTable, Window,
};
use crate::m2algebra::Decomposition;

pub use parse::{parse_file, parse_space, InputFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_AMBIGUOUS: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bredon",
    version,
    about = "RO(C2)-graded Bredon cohomology with F2 coefficients"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the cohomology of a complex and its decomposition.
    Analyze(Opts),
    /// Decompose a bigraded module given as JSON.
    Decompose(Opts),
    /// Validate a complex and run the module consequence checks.
    Check(Opts),
    /// RO(C2)-graded homology, dual to the cohomology decomposition.
    Homology(Opts),
    /// Borel cohomology as a module over F2[x].
    Borel(Opts),
    /// Cone-and-strip diagram as SVG, or a dimension grid with --ascii.
    Plot(Opts),
    /// Check incidence data only.
    Validate(Opts),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).multiple(false).args(["space", "file"]))]
pub struct Opts {
    /// Builder expression, e.g. "wedge(sphere:2,1,antipodal:1)".
    #[arg(long)]
    pub space: Option<String>,
    /// JSON file: a cell complex, a bigraded module or a decomposition.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Drop the basepoint copy of Σ^{0,0}M2.
    #[arg(long)]
    pub reduced: bool,
    /// Plot or table window as pmin,pmax,qmin,qmax.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<Window>,
    /// Human-readable output instead of JSON.
    #[arg(long)]
    pub pretty: bool,
    /// Text output for plot.
    #[arg(long)]
    pub ascii: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Complex dimension for module inputs (default: window p_max − 2).
    #[arg(long)]
    pub dimension: Option<usize>,
}

fn parse_window(s: &str) -> std::result::Result<Window, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err("expected pmin,pmax,qmin,qmax".into());
    }
    let v: Vec<i64> = parts
        .iter()
        .map(|x| x.parse::<i64>().map_err(|e| format!("'{x}': {e}")))
        .collect::<std::result::Result<_, _>>()?;
    Window::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

/// A finished report and the exit status it carries.
pub struct Report {
    pub text: String,
    pub status: i32,
}

/// Parses arguments, runs the command and writes the report. Returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = cli_opts(&cli.command).out.clone();
    match execute(&cli.command) {
        Ok(report) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &report.text)
                    .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
                None => {
                    print!("{}", report.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => report.status,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_ERROR
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn cli_opts(c: &Command) -> &Opts {
    match c {
        Command::Analyze(o)
        | Command::Decompose(o)
        | Command::Check(o)
        | Command::Homology(o)
        | Command::Borel(o)
        | Command::Plot(o)
        | Command::Validate(o) => o,
    }
}

enum Source {
    Complex(EquivariantCellComplex),
    Module(BigradedModule),
    Decomposition(Decomposition),
}

fn load(o: &Opts) -> Result<Source> {
    if let Some(expr) = &o.space {
        return Ok(Source::Complex(build(&parse_space(expr)?)?));
    }
    let path = o.file.as_ref().ok_or_else(|| Error::Input("no input given".into()))?;
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let parsed = parse_file(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    Ok(match parsed {
        InputFile::Complex(x) => Source::Complex(x),
        InputFile::Module(m) => Source::Module(m),
        InputFile::Decomposition(d) => Source::Decomposition(d),
    })
}

fn need_complex(s: Source, what: &str) -> Result<EquivariantCellComplex> {
    match s {
        Source::Complex(x) => Ok(x),
        _ => Err(Error::Input(format!(
            "{what} needs a cell complex (a builder expression or complex JSON)"
        ))),
    }
}

fn finish(value: Value, text: Option<String>, o: &Opts, status: i32) -> Result<Report> {
    let text = match text.filter(|_| o.pretty) {
        Some(t) => t,
        None => serde_json::to_string_pretty(&value)? + "\n",
    };
    Ok(Report { text, status })
}

fn status_of(r: &AnalysisResult) -> i32 {
    match r {
        AnalysisResult::Unique { .. } => EXIT_OK,
        AnalysisResult::Ambiguous { .. } => EXIT_AMBIGUOUS,
    }
}

/// Candidates from a complex (by analysis) or a decomposition file.
fn candidates(o: &Opts) -> Result<(Vec<Decomposition>, i32, Option<Analysis>)> {
    match load(o)? {
        Source::Complex(x) => {
            let mut a = analyze_with_profile(&x)?;
            if o.reduced {
                a.result = a.result.reduced()?;
            }
            let list = a.result.candidates().into_iter().cloned().collect();
            Ok((list, status_of(&a.result), Some(a)))
        }
        Source::Decomposition(d) => {
            let d = if o.reduced {
                d.reduced()
                    .ok_or_else(|| Error::Input("no copy of Σ^{0,0}M2 to remove".into()))?
            } else {
                d
            };
            Ok((vec![d], EXIT_OK, None))
        }
        Source::Module(_) => Err(Error::Input(
            "this command needs a complex or a decomposition, not a module".into(),
        )),
    }
}

fn default_window(list: &[Decomposition], analysis: Option<&Analysis>) -> Window {
    let m = analysis
        .map(|a| a.profile.dimension)
        .or_else(|| list.iter().filter_map(Decomposition::dimension_bound).max())
        .unwrap_or(0);
    Window::default_for(m)
}

pub fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Analyze(o) => {
            let x = need_complex(load(o)?, "analyze")?;
            let mut a = analyze_with_profile(&x)?;
            if o.reduced {
                a.result = a.result.reduced()?;
            }
            let mut value = serde_json::to_value(&a.result)?;
            value["space"] = json!(x.name);
            value["reduced"] = json!(o.reduced);
            value["profile"] = serde_json::to_value(&a.profile)?;
            let status = status_of(&a.result);
            finish(value, Some(pretty_analysis(&x, &a, o)), o, status)
        }
        Command::Decompose(o) => {
            let Source::Module(module) = load(o)? else {
                return Err(Error::Input("decompose needs a bigraded module JSON file".into()));
            };
            module.check_relations()?;
            let m = match o.dimension {
                Some(m) => m,
                None => usize::try_from(module.window().p_max - 2)
                    .map_err(|_| Error::Input("window too small to infer the dimension; pass --dimension".into()))?,
            };
            let mut d = decompose_module(&module, m)?;
            if o.reduced {
                d = d
                    .reduced()
                    .ok_or_else(|| Error::Input("no copy of Σ^{0,0}M2 to remove".into()))?;
            }
            let value = json!({ "status": "unique", "decomposition": d, "dimension": m });
            finish(value, Some(format!("{d}\n")), o, EXIT_OK)
        }
        Command::Check(o) => check(o),
        Command::Homology(o) => {
            let (list, status, _) = candidates(o)?;
            let duals: Vec<_> = list.iter().map(dualize).collect();
            let text = duals.iter().map(|d| format!("{d}\n")).collect::<String>();
            let value = json!({ "status": status_name(status), "homology": duals });
            finish(value, Some(text), o, status)
        }
        Command::Borel(o) => {
            let (list, status, a) = candidates(o)?;
            let top = a.as_ref().map_or(0, |a| a.profile.dimension as i64) + 2;
            let mut text = String::new();
            let mut items = Vec::new();
            for d in &list {
                let b = borel(d);
                let names: Vec<String> = b.iter().map(|s| s.to_string()).collect();
                let _ = writeln!(
                    text,
                    "{}",
                    if names.is_empty() {
                        "0".into()
                    } else {
                        names.join(" ⊕ ")
                    }
                );
                items.push(json!({ "summands": b, "dims": borel_dims(&b, top) }));
            }
            let value = json!({ "status": status_name(status), "borel": items });
            finish(value, Some(text), o, status)
        }
        Command::Plot(o) => {
            let (list, status, a) = candidates(o)?;
            let window = o.window.unwrap_or_else(|| default_window(&list, a.as_ref()));
            let text = if o.ascii {
                list.iter()
                    .map(|d| format!("{d}\n{}", plot::ascii(&DimTable::of_decomposition(d, window))))
                    .collect::<Vec<_>>()
                    .join("\n")
            } else {
                plot::svg_panels(&list, window)
            };
            Ok(Report { text, status })
        }
        Command::Validate(o) => {
            let x = need_complex(load(o)?, "validate")?;
            validate_complex(&x)?;
            let value = json!({
                "valid": true,
                "name": x.name,
                "dimension": x.dimension(),
                "fixed": x.fixed_counts(),
                "free": x.free_counts(),
            });
            let text = format!(
                "valid: {} (dimension {}, fixed cells {:?}, free orbits {:?})\n",
                x.name,
                x.dimension(),
                x.fixed_counts(),
                x.free_counts()
            );
            finish(value, Some(text), o, EXIT_OK)
        }
    }
}

fn status_name(status: i32) -> &'static str {
    if status == EXIT_AMBIGUOUS {
        "ambiguous"
    } else {
        "unique"
    }
}

fn check(o: &Opts) -> Result<Report> {
    match load(o)? {
        Source::Module(module) => {
            module.check_relations()?;
            let violations = check_consequences(&module, o.dimension);
            let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            let status = if violations.is_empty() { EXIT_OK } else { EXIT_ERROR };
            let value = json!({ "relations": "ok", "violations": violations });
            let text = if lines.is_empty() {
                "relations ok; all consequences hold\n".into()
            } else {
                lines.join("\n") + "\n"
            };
            finish(value, Some(text), o, status)
        }
        Source::Complex(x) => {
            validate_complex(&x)?;
            let a = analyze_with_profile(&x)?;
            let window = a.profile.window();
            let mut violations = Vec::new();
            for d in a.result.candidates() {
                violations.extend(check_consequences(&realize(d, window), Some(a.profile.dimension)));
            }
            let status = if violations.is_empty() { EXIT_OK } else { EXIT_ERROR };
            let value = json!({
                "valid": true,
                "profile": "consistent",
                "candidates": a.result.candidates().len(),
                "violations": violations,
            });
            let text = format!(
                "valid complex {}; invariant profile consistent; {} candidate(s); {} violation(s)\n",
                x.name,
                a.result.candidates().len(),
                violations.len()
            );
            finish(value, Some(text), o, status)
        }
        Source::Decomposition(d) => {
            let m = d
                .dimension_bound()
                .ok_or_else(|| Error::NotFiniteComplexModule(format!("{d} violates the bounds 0 ≤ q ≤ p and 0 ≤ r")))?;
            let violations = check_consequences(&realize(&d, Window::default_for(m)), Some(m));
            let status = if violations.is_empty() { EXIT_OK } else { EXIT_ERROR };
            let value = json!({ "violations": violations });
            finish(value, Some(format!("{} violation(s)\n", violations.len())), o, status)
        }
    }
}

fn pretty_analysis(x: &EquivariantCellComplex, a: &Analysis, o: &Opts) -> String {
    let p = &a.profile;
    let mut s = String::new();
    let reduced = if o.reduced { ", reduced" } else { "" };
    let _ = writeln!(s, "space: {} (dimension {}{reduced})", x.name, p.dimension);
    match &a.result {
        AnalysisResult::Unique { decomposition } => {
            let _ = writeln!(s, "status: unique");
            let _ = writeln!(s, "decomposition: {decomposition}");
        }
        AnalysisResult::Ambiguous {
            candidates,
            diagnostics,
        } => {
            let _ = writeln!(s, "status: ambiguous ({} candidates)", candidates.len());
            for c in candidates {
                let _ = writeln!(s, "  candidate: {c}");
            }
            for d in diagnostics {
                let _ = writeln!(s, "  note: {d}");
            }
        }
    }
    let _ = writeln!(s, "fixed set cohomology:   {:?}", p.fixed_dims);
    let _ = writeln!(s, "underlying cohomology:  {:?}", p.underlying_dims);
    let _ = writeln!(s, "quotient cohomology:    {:?}", p.quotient_dims);
    let window = o.window.unwrap_or(p.window());
    let mut dims = DimTable::zeros(window);
    for b in window.bidegrees() {
        dims.set(b, p.dims.get(b));
    }
    let _ = writeln!(s, "dim H^{{p,q}} (unreduced):");
    s.push_str(&plot::ascii(&dims));
    s
}
