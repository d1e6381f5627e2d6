//! Command-line adapter: parse, dispatch to the library, serialise.
//!
//! Exit codes: 0 ran (including "not found" and non-exact statuses),
//! 1 output could not be written, 2 usage or parameter error, 3 malformed
//! input, 4 acceptance failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qturan_core::constructions::{
    blowup, chi1_lower, low_complement, q3_pair_example, tree_family, triangle_family, tripart_13_4, triple_partition,
    universal_tree, Partition, TreeVariant,
};
use qturan_core::robust::{chromatic_number, robust_witness, Caps};
use qturan_core::wstar::{max_star_weight, max_star_weight_by_covers};
use qturan_core::{find_s_copies, verify_free, QGraph};
use serde_json::{json, Value};

use crate::formats::{self, FormatError};
use crate::{acceptance, parallel, report};

#[derive(Debug, Parser)]
#[command(name = "qturan", version, about = "Turán problems on weighted-edge q-graphs")]
pub struct Cli {
    /// Worker threads for search and experiments (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Output format; csv applies to tabular results only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Look for s-copies of a pattern in a q-graph.
    Detect {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        s: u32,
        /// List copies (distinct vertex maps) instead of stopping at the first.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compute ex(n, F, q, s) exactly, or the best bound within budget.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long, env = "QTURAN_BUDGET_SECS")]
        budget_secs: Option<f64>,
        /// Largest q²·C(n,2) accepted.
        #[arg(long, default_value_t = qturan_core::extremal::DEFAULT_GROUND_CAP)]
        ground_cap: usize,
    },
    /// Write one of the explicit constructions to a q-graph file.
    Construct {
        kind: Construction,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        pattern: Option<String>,
        /// triangle-family: 1..4; tree-family: full | primed.
        #[arg(long)]
        variant: Option<String>,
        /// tree-family blocks, e.g. `1,2,3/4,5,6`; default is a balanced split of [n].
        #[arg(long)]
        parts: Option<String>,
        /// tree-family number of balanced blocks.
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Certify that a q-graph has no s-copy of a pattern.
    Verify {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        s: u32,
    },
    /// Robust chromatic number with a realising colouring and removal set.
    Chi1 {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 16)]
        max_vertices: usize,
    },
    /// Chromatic number.
    Chi {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 16)]
        max_vertices: usize,
    },
    /// How often chi1 = r on random multipartite graphs K(m, r, p).
    #[command(name = "random-chi1")]
    RandomChi1 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Maximum total weight of a (*)-weighting of K_k.
    #[command(name = "wstar-max")]
    WstarMax {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = qturan_core::wstar::DEFAULT_K_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Route::Scan)]
        route: Route,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Check condition (*) for a weight function file.
    #[command(name = "wstar-check")]
    WstarCheck {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run the acceptance grid; exits 4 if any criterion fails.
    Acceptance {
        /// Criterion ids to run (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    UniversalTree,
    Blowup,
    LowComplement,
    Chi1Lower,
    TreeFamily,
    #[value(name = "tripart-13-4")]
    Tripart134,
    TriangleFamily,
    TriplePartition,
    #[value(name = "q3-pair")]
    Q3Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Scan,
    Covers,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Output(String),
    #[error("{0} acceptance criteria failed")]
    Acceptance(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Output(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Format(FormatError::Syntax { .. }) | CliError::Format(FormatError::Io { .. }) => 3,
            CliError::Acceptance(_) => 4,
        }
    }
}

impl From<qturan_core::Error> for CliError {
    fn from(e: qturan_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn need<T>(value: Option<T>, flag: &str, kind: Construction) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{kind:?} needs --{flag}")))
}

fn read_host(path: &Path) -> Result<QGraph, CliError> {
    Ok(formats::read_qgraph(&formats::read_file(path)?)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

fn parse_parts(text: &str) -> Result<Partition, CliError> {
    let blocks = text
        .split('/')
        .map(|b| b.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("bad --parts `{text}`: {e}")))?;
    Ok(Partition::new(blocks)?)
}

enum Output {
    Report(report::RunReport),
    Text(String),
}

/// Parses `args` (including the program name), runs, and writes to `out`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(Output::Report(r)) => {
            let text = serde_json::to_string_pretty(&r).expect("reports serialise");
            if writeln!(out, "{text}").is_err() {
                return 1;
            }
            0
        }
        Ok(Output::Text(t)) => {
            if write!(out, "{t}").is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn report(command: &str, parameters: Value, result: Value, start: Instant, nodes: Option<u64>) -> Output {
    Output::Report(report::RunReport {
        command: command.into(),
        parameters,
        result,
        seconds: start.elapsed().as_secs_f64(),
        nodes,
    })
}

fn json_only(cli: &Cli, command: &str) -> Result<(), CliError> {
    if cli.format == Format::Csv {
        return Err(CliError::Usage(format!("{command} has no csv output")));
    }
    Ok(())
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Output, CliError> {
    let start = Instant::now();
    match &cli.command {
        Command::Detect { host, pattern, s, all, limit } => {
            json_only(cli, "detect")?;
            let h = read_host(host)?;
            let f = formats::load_pattern(pattern)?;
            let limit = match (all, limit) {
                (_, Some(l)) => *l,
                (true, None) => usize::MAX,
                (false, None) => 1,
            };
            let found = find_s_copies(&h, &f, *s, limit)?;
            let params = json!({ "host": host, "pattern": pattern, "s": s, "limit": limit });
            Ok(report("detect", params, report::embeddings(&found), start, None))
        }
        Command::Extremal { n, q, s, pattern, budget_nodes, budget_secs, ground_cap } => {
            let f = formats::load_pattern(pattern)?;
            let hg = qturan_core::forbidden_configs(*n, *q, &f, *s, *ground_cap)?;
            let limits = parallel::Limits { nodes: *budget_nodes, seconds: *budget_secs };
            let r = parallel::solve(&hg, limits, cli.jobs)?;
            let seconds = start.elapsed().as_secs_f64();
            if cli.format == Format::Csv {
                return Ok(Output::Text(format!(
                    "n,q,s,pattern,value,status,nodes,seconds\n{n},{q},{s},{pattern},{},{},{},{seconds:.3}\n",
                    r.value,
                    r.status.as_str(),
                    r.nodes
                )));
            }
            let params = json!({
                "n": n, "q": q, "s": s, "pattern": pattern,
                "budget_nodes": budget_nodes, "budget_secs": budget_secs,
            });
            Ok(report("extremal", params, report::search_result(&r, seconds), start, Some(r.nodes)))
        }
        Command::Construct { kind, q, n, pattern, variant, parts, r, out } => {
            json_only(cli, "construct")?;
            let k = *kind;
            let mut extra = Value::Null;
            let h = match k {
                Construction::UniversalTree => universal_tree(need(*q, "q", k)?, need(*n, "n", k)?)?,
                Construction::Blowup => {
                    blowup(&formats::load_pattern(&need(pattern.clone(), "pattern", k)?)?, need(*q, "q", k)?)
                }
                Construction::LowComplement => low_complement(need(*q, "q", k)?, need(*n, "n", k)?)?,
                Construction::Chi1Lower => {
                    let f = formats::load_pattern(&need(pattern.clone(), "pattern", k)?)?;
                    chi1_lower(&f, need(*q, "q", k)?, need(*n, "n", k)?, &Caps::default())?
                }
                Construction::TreeFamily => {
                    let p = match parts {
                        Some(t) => parse_parts(t)?,
                        None => Partition::balanced(need(*n, "n", k)?, *r)?,
                    };
                    let v = match variant.as_deref() {
                        None | Some("full") => TreeVariant::Full,
                        Some("primed") => TreeVariant::Primed,
                        Some(other) => return Err(CliError::Usage(format!("unknown tree variant `{other}`"))),
                    };
                    tree_family(&p, v)?
                }
                Construction::Tripart134 => tripart_13_4(need(*n, "n", k)?)?,
                Construction::TriangleFamily => {
                    let v = need(variant.as_deref(), "variant", k)?;
                    let v: u8 = v.parse().map_err(|_| CliError::Usage(format!("bad --variant `{v}`")))?;
                    triangle_family(need(*q, "q", k)?, need(*n, "n", k)?, v)?
                }
                Construction::TriplePartition => {
                    let q = need(*q, "q", k)?;
                    let triples = triple_partition(q)?;
                    extra = json!(triples
                        .iter()
                        .map(|t| t.iter().map(|e| [e.u as u64, e.v as u64, e.a as u64, e.b as u64]).collect::<Vec<_>>())
                        .collect::<Vec<_>>());
                    QGraph::from_edges(3, q, triples.iter().flatten().copied())?
                }
                Construction::Q3Pair => q3_pair_example(need(*n, "n", k)?)?,
            };
            write_file(out, &formats::write_qgraph(&h))?;
            let mut result = json!({ "n": h.n(), "q": h.q(), "size": h.len(), "out": out });
            if !extra.is_null() {
                result["triples"] = extra;
            }
            let kind_name = k.to_possible_value().expect("named").get_name().to_string();
            let params = json!({
                "kind": kind_name, "q": q, "n": n, "pattern": pattern,
                "variant": variant, "parts": parts, "r": r,
            });
            Ok(report("construct", params, result, start, None))
        }
        Command::Verify { host, pattern, s } => {
            json_only(cli, "verify")?;
            let h = read_host(host)?;
            let f = formats::load_pattern(pattern)?;
            let (free, copy) = verify_free(&h, &f, *s)?;
            let params = json!({ "host": host, "pattern": pattern, "s": s });
            Ok(report("verify", params, report::verification(free, copy.as_ref()), start, None))
        }
        Command::Chi1 { pattern, max_vertices } => {
            json_only(cli, "chi1")?;
            let f = formats::load_pattern(pattern)?;
            let caps = Caps { max_vertices: *max_vertices, ..Caps::default() };
            let w = robust_witness(&f, &caps)?;
            Ok(report("chi1", json!({ "pattern": pattern }), report::robust(&w), start, None))
        }
        Command::Chi { pattern, max_vertices } => {
            json_only(cli, "chi")?;
            let f = formats::load_pattern(pattern)?;
            let caps = Caps { max_vertices: *max_vertices, ..Caps::default() };
            let chi = chromatic_number(&f, &caps)?;
            Ok(report("chi", json!({ "pattern": pattern }), json!({ "chi": chi }), start, None))
        }
        Command::RandomChi1 { m, r, p, trials, seed } => {
            let rep = parallel::chi1_experiment(*m, *r, *p, *trials, *seed, cli.jobs)?;
            if cli.format == Format::Csv {
                return Ok(Output::Text(report::experiment_csv(&rep)));
            }
            let params = json!({ "m": m, "r": r, "p": p, "trials": trials, "seed": seed });
            Ok(report("random-chi1", params, report::experiment(&rep), start, None))
        }
        Command::WstarMax { k, cap, route, out } => {
            json_only(cli, "wstar-max")?;
            let (value, w) = match route {
                Route::Scan => max_star_weight(*k, *cap)?,
                Route::Covers => max_star_weight_by_covers(*k, *cap)?,
            };
            if let Some(path) = out {
                write_file(path, &formats::write_wstar(&w))?;
            }
            let route_name = route.to_possible_value().expect("named").get_name().to_string();
            let params = json!({ "k": k, "cap": cap, "route": route_name });
            Ok(report("wstar-max", params, report::wstar_max(*k, value, &w), start, None))
        }
        Command::WstarCheck { input } => {
            json_only(cli, "wstar-check")?;
            let w = formats::read_wstar(&formats::read_file(input)?)?;
            Ok(report("wstar-check", json!({ "in": input }), report::wstar_check(&w), start, None))
        }
        Command::Acceptance { only } => {
            json_only(cli, "acceptance")?;
            let outcomes = acceptance::run(only, cli.jobs, |o| {
                let _ = writeln!(err, "{o}");
            });
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                return Err(CliError::Acceptance(failed));
            }
            let result = json!(outcomes
                .iter()
                .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail, "seconds": o.seconds }))
                .collect::<Vec<_>>());
            Ok(report("acceptance", json!({ "only": only }), result, start, None))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("qturan").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["extremal", "--n", "3"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["chi", "--pattern", "c3", "--format", "csv"]).0, 2);
        assert_eq!(run_capture(&["extremal", "--n", "3", "--q", "2", "--s", "0", "--pattern", "c3"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("extremal"));
    }

    #[test]
    fn chi_of_named_patterns() {
        let (code, out, _) = run_capture(&["chi", "--pattern", "c5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["chi"], 3);
        assert_eq!(v["command"], "chi");
    }
}
