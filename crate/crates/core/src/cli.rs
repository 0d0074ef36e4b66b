//! Command-line front end. `run` is the whole program minus process exit, so
//! tests can drive it in-process.

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::conditions::Condition;
use crate::digraph::Digraph;
use crate::families::{
    bypass_pattern, complete_bipartite_digraph, complete_digraph, d0, d1, directed_cycle, t5, InnerSpec,
};
use crate::insertion::insertion_bypass_attempt;
use crate::search::{
    find_bypass_pattern, find_cycle_of_length, find_good_cycle, find_hamiltonian_bypass,
    find_hamiltonian_cycle, find_pre_hamiltonian_cycle,
};
use crate::verify::{
    check_theorem11, check_theorem12, check_theorem16_conjecture, check_theorem6, check_theorem8,
    check_theorem9, explore_no_bypass, Mode, RunConfig, SampleModel, TheoremReport, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Worker-count override read when `--threads` is absent.
pub const THREADS_ENV: &str = "HAMBYPASS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "hambypass", version, about = "Hamiltonian bypass toolkit for small digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a family member in the text digraph format.
    Gen(GenArgs),
    /// Evaluate degree conditions on a digraph.
    Check(CheckArgs),
    /// Search a digraph for a structure.
    Find(FindArgs),
    /// Re-check a theorem over all or sampled digraphs of one order.
    Verify(VerifyArgs),
    /// Catalogue strong bypass-free digraphs meeting a condition.
    Explore(ExploreArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Kstar,
    Kbipartite,
    Cycle,
    Dnk,
    T5,
    D0,
    D1,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Subdigraph on B for d0: empty, complete, path, random:<seed>, arcs:u-v,...
    #[arg(long)]
    inner: Option<InnerSpec>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Digraph file; stdin when absent or `-`.
    #[arg(long)]
    input: Option<String>,
    /// Condition id, e.g. a_k:0, meyniel, degree_sum:-2, thm16.
    #[arg(long = "cond", required = true)]
    conds: Vec<String>,
}

#[derive(Args, Debug)]
struct FindArgs {
    /// hc, prehc, bypass, dnk:<k>, goodcycle or cycle:<m>.
    structure: String,
    #[arg(long)]
    input: Option<String>,
    /// Include the insertion-engine trace where it applies.
    #[arg(long)]
    explain: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Thm6,
    Thm8,
    Thm9,
    Thm11,
    Thm12,
    Thm16,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    n: usize,
    /// Sample this many digraphs instead of scanning all of them.
    #[arg(long, requires = "seed", conflicts_with = "long")]
    sample: Option<u64>,
    #[arg(long, requires = "sample")]
    seed: Option<u64>,
    /// Sample each arc with probability 3/4 instead of 1/2.
    #[arg(long, requires = "sample")]
    dense: bool,
    /// Allow the order-6 exhaustive scan.
    #[arg(long)]
    long: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Suppress progress lines on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    theorem: Theorem,
    #[command(flatten)]
    scan: ScanArgs,
    /// Minimum in-degree for thm16 (3 is the theorem, 2 the open variant).
    #[arg(long)]
    min_in: Option<usize>,
    /// Read A_0 with z allowed to equal y.
    #[arg(long)]
    inclusive_triples: bool,
}

#[derive(Args, Debug)]
struct ExploreArgs {
    #[arg(long = "cond")]
    cond: String,
    #[command(flatten)]
    scan: ScanArgs,
}

struct Failure(i32, String);

impl Failure {
    fn usage(msg: impl std::fmt::Display) -> Failure {
        Failure(EXIT_USAGE, msg.to_string())
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code. Progress lines from scans go to the process stderr.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a).map(|text| (EXIT_OK, text)),
        Command::Check(a) => read_input(a.input.as_deref(), stdin)
            .and_then(|g| cmd_check(&g, &a.conds))
            .map(|v| (EXIT_OK, pretty(&v))),
        Command::Find(a) => read_input(a.input.as_deref(), stdin)
            .and_then(|g| cmd_find(&g, &a.structure, a.explain))
            .map(|v| (EXIT_OK, pretty(&v))),
        Command::Verify(a) => cmd_verify(a).map(report_outcome),
        Command::Explore(a) => cmd_explore(a).map(report_outcome),
    };
    match result {
        Ok((code, text)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn report_outcome(r: TheoremReport) -> (i32, String) {
    let code = match r.verdict {
        Verdict::CounterexampleFound => EXIT_COUNTEREXAMPLE,
        Verdict::Confirmed | Verdict::ReportOnly => EXIT_OK,
    };
    let mut s = r.to_json();
    s.push('\n');
    (code, s)
}

fn read_input(path: Option<&str>, stdin: &mut dyn Read) -> Result<Digraph, Failure> {
    let text = match path {
        None | Some("-") => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
            s
        }
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::usage(format!("{p}: {e}")))?,
    };
    Digraph::parse_text(&text).map_err(Failure::usage)
}

fn cmd_gen(a: GenArgs) -> Result<String, Failure> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Failure::usage(format!("{:?} needs --{name}", a.family).to_lowercase()))
    };
    let g = match a.family {
        Family::Kstar => complete_digraph(need(a.n, "n")?),
        Family::Kbipartite => complete_bipartite_digraph(need(a.p, "p")?, need(a.q, "q")?),
        Family::Cycle => directed_cycle(need(a.n, "n")?),
        Family::Dnk => bypass_pattern(need(a.n, "n")?, need(a.k, "k")?),
        Family::T5 => Ok(t5()),
        Family::D0 => d0(need(a.n, "n")?, a.inner.as_ref().unwrap_or(&InnerSpec::Empty)),
        Family::D1 => d1(need(a.n, "n")?, need(a.k, "k")?),
    }
    .map_err(Failure::usage)?;
    Ok(g.to_text())
}

fn cmd_check(g: &Digraph, ids: &[String]) -> Result<Value, Failure> {
    let mut out = Map::new();
    for id in ids {
        let cond: Condition = id.parse().map_err(Failure::usage)?;
        let report = cond.check(g).map_err(Failure::usage)?;
        out.insert(id.clone(), serde_json::to_value(report).expect("report serializes"));
    }
    Ok(Value::Object(out))
}

fn cmd_find(g: &Digraph, structure: &str, explain: bool) -> Result<Value, Failure> {
    let bad_arg = |what: &str| Failure::usage(format!("bad {what} in `{structure}`"));
    let cycle_json = |c: Option<crate::digraph::Cycle>| match c {
        Some(c) => json!({ "found": true, "cycle": c.vertices() }),
        None => json!({ "found": false }),
    };
    let mut v = match structure {
        "hc" => cycle_json(find_hamiltonian_cycle(g)),
        "prehc" => cycle_json(find_pre_hamiltonian_cycle(g).map_err(Failure::usage)?),
        "goodcycle" => cycle_json(find_good_cycle(g).map_err(Failure::usage)?),
        "bypass" => match find_hamiltonian_bypass(g).map_err(Failure::usage)? {
            Some(w) => json!({ "found": true, "order": w.order }),
            None => json!({ "found": false }),
        },
        s => {
            if let Some(k) = s.strip_prefix("dnk:") {
                let k: usize = k.parse().map_err(|_| bad_arg("k"))?;
                match find_bypass_pattern(g, k).map_err(Failure::usage)? {
                    Some(e) => json!({ "found": true, "k": e.k, "map": e.map }),
                    None => json!({ "found": false, "k": k }),
                }
            } else if let Some(m) = s.strip_prefix("cycle:") {
                let m: usize = m.parse().map_err(|_| bad_arg("length"))?;
                cycle_json(find_cycle_of_length(g, m).map_err(Failure::usage)?)
            } else {
                return Err(Failure::usage(format!(
                    "unknown structure `{s}` (expected hc, prehc, bypass, dnk:<k>, goodcycle, cycle:<m>)"
                )));
            }
        }
    };
    if explain {
        let trace = if structure == "bypass" {
            match insertion_bypass_attempt(g) {
                Some(a) => json!({
                    "engine": "insertion",
                    "start_arc": [a.start_arc.0, a.start_arc.1],
                    "steps": a.outcome.steps,
                    "path": a.outcome.extended,
                    "leftovers": a.outcome.leftovers.iter().collect::<Vec<_>>(),
                    "complete": a.complete,
                }),
                None => json!({ "engine": "insertion", "start_arc": null, "complete": false }),
            }
        } else {
            json!({ "engine": "exact-search" })
        };
        v.as_object_mut().expect("object").insert("explain".into(), trace);
    }
    Ok(v)
}

fn run_config(scan: &ScanArgs, inclusive_triples: bool) -> Result<(Mode, RunConfig), Failure> {
    let threads = match scan.threads {
        Some(t) => Some(t),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::usage(format!("{THREADS_ENV}={v} is not a count")))?,
            ),
            Err(_) => None,
        },
    };
    if threads == Some(0) {
        return Err(Failure::usage("thread count must be positive"));
    }
    let mode = match (scan.sample, scan.seed) {
        (Some(count), Some(seed)) => Mode::Sample {
            count,
            seed,
            model: if scan.dense { SampleModel::Dense } else { SampleModel::Uniform },
        },
        _ => Mode::Exhaustive,
    };
    let config = RunConfig {
        threads,
        allow_long: scan.long,
        inclusive_triples,
        progress: !scan.quiet,
    };
    Ok((mode, config))
}

fn cmd_verify(a: VerifyArgs) -> Result<TheoremReport, Failure> {
    if a.min_in.is_some() && a.theorem != Theorem::Thm16 {
        return Err(Failure::usage("--min-in only applies to thm16"));
    }
    let (mode, config) = run_config(&a.scan, a.inclusive_triples)?;
    let n = a.scan.n;
    match a.theorem {
        Theorem::Thm6 => check_theorem6(n, mode, &config),
        Theorem::Thm8 => check_theorem8(n, mode, &config),
        Theorem::Thm9 => check_theorem9(n, mode, &config),
        Theorem::Thm11 => check_theorem11(n, mode, &config),
        Theorem::Thm12 => check_theorem12(n, mode, &config),
        Theorem::Thm16 => check_theorem16_conjecture(n, a.min_in.unwrap_or(3), mode, &config),
    }
    .map_err(Failure::usage)
}

fn cmd_explore(a: ExploreArgs) -> Result<TheoremReport, Failure> {
    let cond: Condition = a.cond.parse().map_err(Failure::usage)?;
    let (mode, config) = run_config(&a.scan, false)?;
    explore_no_bypass(a.scan.n, cond, mode, &config).map_err(Failure::usage)
}
