//! `etaint run | eval | table | list`.
//!
//! Exit status: 0 when every non-flagged check passes, 1 when any check
//! fails, 2 on a usage error (reported before any computation).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use etaint_core::ClosedFormId;
use serde::Serialize;

use crate::report::Report;
use crate::verify::{default_registry, find, run_suite, ExpectedStatus, IdentitySpec};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const MIN_TOL: f64 = 1e-12;
pub const MAX_TOL: f64 = 1e-3;

// sweeps longer than this are almost certainly a typo in the step
const MAX_TABLE_POINTS: usize = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "etaint",
    version,
    about = "Verify integral identities of the Dedekind eta function"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Absolute tolerance for every check, in [1e-12, 1e-3]. Without it each
    /// identity uses its own default.
    #[arg(long, global = true, env = "ETAINT_TOL", value_parser = parse_tol)]
    pub tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads (default: one per core).
    #[arg(long, short, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the whole registry, or the listed identities, on their default grids.
    #[command(group(ArgGroup::new("which").required(true).args(["all", "identity"])))]
    Run {
        #[arg(long)]
        all: bool,
        #[arg(long, value_parser = parse_id)]
        identity: Vec<ClosedFormId>,
    },
    /// Verify one identity at the given parameters (default grid if none).
    Eval {
        #[arg(long, value_parser = parse_id)]
        identity: ClosedFormId,
        /// `name=value`
        #[arg(long = "param", value_parser = parse_assignment)]
        params: Vec<(String, String)>,
    },
    /// Sweep one parameter over `lo:hi:step` (hi included up to step/2).
    Table {
        #[arg(long, value_parser = parse_id)]
        identity: ClosedFormId,
        /// `name=lo:hi:step`
        #[arg(long = "param", value_parser = parse_assignment)]
        param: (String, String),
    },
    /// Print the registry with anchors and notes.
    List,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if (MIN_TOL..=MAX_TOL).contains(&v) {
        Ok(v)
    } else {
        Err(format!(
            "{v} outside the valid range [{MIN_TOL:e}, {MAX_TOL:e}]"
        ))
    }
}

fn parse_id(s: &str) -> Result<ClosedFormId, String> {
    ClosedFormId::from_label(s).ok_or_else(|| {
        let all: Vec<_> = ClosedFormId::ALL.iter().map(|i| i.label()).collect();
        format!("unknown identity `{s}`; known: {}", all.join(", "))
    })
}

fn parse_assignment(s: &str) -> Result<(String, String), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn parse_number(name: &str, s: &str) -> Result<f64, Error> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Usage(format!("--param {name}: `{s}` is not a finite number")))
}

fn param_index(id: ClosedFormId, name: &str) -> Result<usize, Error> {
    id.params()
        .iter()
        .position(|p| p.name == name)
        .ok_or_else(|| {
            let names: Vec<_> = id.params().iter().map(|p| p.name).collect();
            Error::Usage(if names.is_empty() {
                format!("--param {name}: {id} takes no parameters")
            } else {
                format!("--param {name}: {id} takes {}", names.join(", "))
            })
        })
}

/// `lo + k·step` for every `k` with `lo + k·step < hi + step/2`.
pub fn parse_range(name: &str, s: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Usage(format!(
            "--param {name}: expected lo:hi:step, got `{s}`"
        )));
    }
    let lo = parse_number(name, parts[0])?;
    let hi = parse_number(name, parts[1])?;
    let step = parse_number(name, parts[2])?;
    if step <= 0.0 {
        return Err(Error::Usage(format!(
            "--param {name}: step must be positive"
        )));
    }
    // plain decimals land exactly on the decimal grid (0.6, not 0.6000000000000001)
    let scale = match (decimals(parts[0]), decimals(parts[2])) {
        (Some(a), Some(b)) if a.max(b) <= 15 => 10f64.powi(a.max(b)),
        _ => 1.0,
    };
    let (lo_s, step_s) = if scale > 1.0 {
        ((lo * scale).round(), (step * scale).round())
    } else {
        (lo, step)
    };
    let mut out = Vec::new();
    for k in 0.. {
        let v = (lo_s + step_s * f64::from(k)) / scale;
        if v >= hi + 0.5 * step {
            break;
        }
        if out.len() == MAX_TABLE_POINTS {
            return Err(Error::Usage(format!(
                "--param {name}: more than {MAX_TABLE_POINTS} points"
            )));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(Error::Usage(format!("--param {name}: empty range `{s}`")));
    }
    Ok(out)
}

fn decimals(s: &str) -> Option<i32> {
    let s = s.trim();
    if s.contains(['e', 'E']) {
        return None;
    }
    Some(s.split_once('.').map_or(0, |(_, frac)| frac.len() as i32))
}

fn with_grid(id: ClosedFormId, grid: Vec<Vec<f64>>) -> Result<IdentitySpec, Error> {
    let mut spec = find(id);
    for p in &grid {
        spec.check_point(p)?;
    }
    spec.param_grid = grid;
    Ok(spec)
}

fn eval_spec(id: ClosedFormId, assignments: &[(String, String)]) -> Result<IdentitySpec, Error> {
    if assignments.is_empty() {
        return Ok(find(id));
    }
    let mut point = vec![None; id.params().len()];
    for (name, value) in assignments {
        let i = param_index(id, name)?;
        point[i] = Some(parse_number(name, value)?);
    }
    let point = point
        .into_iter()
        .zip(id.params())
        .map(|(v, p)| v.ok_or_else(|| Error::Usage(format!("{id}: missing --param {}", p.name))))
        .collect::<Result<Vec<_>, _>>()?;
    with_grid(id, vec![point])
}

fn table_spec(id: ClosedFormId, (name, range): &(String, String)) -> Result<IdentitySpec, Error> {
    param_index(id, name)?;
    let values = parse_range(name, range)?;
    with_grid(id, values.into_iter().map(|v| vec![v]).collect())
}

#[derive(Serialize)]
struct ListEntry<'a> {
    id: &'a str,
    params: Vec<String>,
    grid: &'a [Vec<f64>],
    tol: f64,
    expected_status: ExpectedStatus,
    anchor: &'a str,
    #[serde(skip_serializing_if = "str::is_empty")]
    notes: &'a str,
}

fn render_list(format: Format) -> Result<String, Error> {
    let reg = default_registry();
    let entries: Vec<ListEntry> = reg
        .iter()
        .map(|s| ListEntry {
            id: s.id.label(),
            params: s
                .id
                .params()
                .iter()
                .map(|p| format!("{} ∈ {}", p.name, p.domain.describe()))
                .collect(),
            grid: &s.param_grid,
            tol: s.tol,
            expected_status: s.expected_status,
            anchor: s.anchor,
            notes: s.notes,
        })
        .collect();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&entries)? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "params", "tol", "expected_status", "anchor", "notes"])?;
            for e in &entries {
                w.write_record([
                    e.id,
                    &e.params.join("; "),
                    &e.tol.to_string(),
                    match e.expected_status {
                        ExpectedStatus::Pass => "pass",
                        ExpectedStatus::Flagged => "flagged",
                    },
                    e.anchor,
                    e.notes,
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
        Format::Text => {
            let mut out = String::new();
            for e in &entries {
                out.push_str(e.anchor);
                out.push('\n');
                if !e.params.is_empty() {
                    let grid: Vec<String> = e.grid.iter().map(|p| format!("{p:?}")).collect();
                    out.push_str(&format!(
                        "    {}; grid {}\n",
                        e.params.join(", "),
                        grid.join(" ")
                    ));
                }
                if e.expected_status == ExpectedStatus::Flagged {
                    out.push_str("    expected: flagged\n");
                }
                if !e.notes.is_empty() {
                    out.push_str(&format!("    note: {}\n", e.notes));
                }
            }
            out
        }
    })
}

fn render_report(report: &Report, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => Ok(report.to_text()),
    }
}

/// Exit status implied by a finished report.
pub fn exit_code(report: &Report) -> i32 {
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn execute(cli: &Cli) -> Result<i32, Error> {
    let jobs = cli.jobs.map(usize::from);
    let registry = match &cli.command {
        Command::List => {
            emit(cli, &render_list(cli.format)?)?;
            return Ok(EXIT_OK);
        }
        Command::Run { all: true, .. } => default_registry(),
        Command::Run { identity, .. } => identity.iter().map(|&id| find(id)).collect(),
        Command::Eval { identity, params } => vec![eval_spec(*identity, params)?],
        Command::Table { identity, param } => vec![table_spec(*identity, param)?],
    };
    let report = run_suite(&registry, cli.tol, jobs)?;
    emit(cli, &render_report(&report, cli.format)?)?;
    Ok(exit_code(&report))
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("etaint: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_includes_hi_with_rounding_guard() {
        let v = parse_range("s", "0.25:2.0:0.25").unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(v[0], 0.25);
        assert!((v[7] - 2.0).abs() < 1e-12);
        let v = parse_range("s", "0.1:0.3:0.1").unwrap();
        assert_eq!(v, [0.1, 0.2, 0.3]);
        let v = parse_range("s", "0.4:0.6:0.05").unwrap();
        assert_eq!(v, [0.4, 0.45, 0.5, 0.55, 0.6]);
        let v = parse_range("s", "1e-1:3e-1:1e-1").unwrap();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn range_errors() {
        assert!(parse_range("s", "1:2").is_err());
        assert!(parse_range("s", "1:2:0").is_err());
        assert!(parse_range("s", "1:2:-1").is_err());
        assert!(parse_range("s", "3:1:1").is_err());
        assert!(parse_range("s", "0:1e9:1e-3").is_err());
    }

    #[test]
    fn tolerance_bounds() {
        assert!(parse_tol("1e-10").is_ok());
        assert!(parse_tol("1e-12").is_ok());
        assert!(parse_tol("1e-13").is_err());
        assert!(parse_tol("0.01").is_err());
        assert!(parse_tol("abc").is_err());
    }

    #[test]
    fn eval_parameter_binding() {
        let s = eval_spec(ClosedFormId::Eq7, &[("s".into(), "0.5".into())]).unwrap();
        assert_eq!(s.param_grid, vec![vec![0.5]]);
        assert!(eval_spec(ClosedFormId::Eq7, &[("t".into(), "0.5".into())]).is_err());
        assert!(eval_spec(ClosedFormId::Eq7, &[("s".into(), "-1".into())]).is_err());
        assert!(eval_spec(ClosedFormId::A13, &[("s".into(), "1".into())]).is_err());
        assert_eq!(
            eval_spec(ClosedFormId::A3, &[]).unwrap().param_grid.len(),
            4
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(main(["etaint", "eval", "--identity", "EQ6"]), EXIT_USAGE);
        assert_eq!(main(["etaint", "run"]), EXIT_USAGE);
        assert_eq!(main(["etaint", "list", "--tol", "1"]), EXIT_USAGE);
        assert_eq!(
            main(["etaint", "eval", "--identity", "A15", "--param", "n=0.5"]),
            EXIT_USAGE
        );
    }
}
