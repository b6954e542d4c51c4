//! wreathkit: decision queries over (iterated) wreath products and free
//! solvable groups.
//!
//! Single query:
//!   wreathkit --group "wr(Z/2, Z)" wp "a1 t1 a1 t1^-1 a1 t1 a1 t1^-1"
//!   wreathkit --group "wr(Z/2, Z)" cp "a1 t1" "t1 a1" --json
//! Batch (one query per line, words double-quoted):
//!   wreathkit --group "freesolvable(2, 2)" --batch queries.txt
//! Selftest:
//!   wreathkit selftest [--full]
//!
//! Exit codes: 0 success; 1 false verdict under --exit-verdict (single
//! boolean queries); 2 parse/usage error; 3 capability error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;

use wreathkit_core::dsl::{parse_group_expr, parse_word};
use wreathkit_core::group::{ConjugacyAnswer, Element, Group, Order, PowerAnswer};
use wreathkit_core::selftest::{self, Scale};
use wreathkit_core::Error;

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPABILITY: u8 = 3;

#[derive(Parser)]
#[command(name = "wreathkit", version, about = "Word, conjugacy and power problems in wreath products and free solvable groups")]
struct Cli {
    /// Group description, e.g. "wr(Z/2, Z)", "BS(1,2)", "freesolvable(2, 3)"
    #[arg(long)]
    group: Option<String>,

    /// Batch file with one query per line: <command> "<word>" ["<word2>"]
    #[arg(long)]
    batch: Option<PathBuf>,

    /// Emit one JSON object per query (newline-delimited)
    #[arg(long)]
    json: bool,

    /// Smoothness bound certified for torsion orders at group construction
    #[arg(long, default_value_t = wreathkit_core::DEFAULT_BETA)]
    beta: u32,

    /// Ball radius for best-effort conjugacy witness searches
    #[arg(long, default_value_t = wreathkit_core::DEFAULT_BALL_CAP)]
    radius: usize,

    /// Scripting mode: exit 1 when a single boolean query answers false
    #[arg(long)]
    exit_verdict: bool,

    /// With `selftest`: run the full-scale suite instead of the quick one
    #[arg(long)]
    full: bool,

    /// `<command> <word> [<word2>]`, or `selftest`
    #[arg(value_name = "QUERY")]
    query: Vec<String>,
}

#[derive(Serialize)]
struct QueryRecord {
    command: String,
    group: String,
    inputs: Vec<String>,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<String>,
    time_ms: f64,
}

struct Answer {
    verdict: String,
    witness: Option<String>,
    k: Option<String>,
    bool_verdict: Option<bool>,
    /// extra human-readable lines (support tables)
    table: Vec<String>,
}

fn usage_err(msg: impl Into<String>) -> (u8, String) {
    (EXIT_USAGE, msg.into())
}

fn core_err(e: Error) -> (u8, String) {
    let code = match e {
        Error::Unsupported(_)
        | Error::WrongGroup { .. }
        | Error::NotSmooth { .. }
        | Error::CommutingPair
        | Error::CapExceeded { .. } => EXIT_CAPABILITY,
        _ => EXIT_USAGE,
    };
    (code, e.to_string())
}

fn element_lines(e: &Element) -> Vec<String> {
    match e {
        Element::Wreath(w) => {
            let mut lines = vec![format!("top: {}", w.top)];
            for (k, v) in &w.support {
                lines.push(format!("  {k} -> {v}"));
            }
            if w.support.is_empty() {
                lines.push("  (empty support)".to_string());
            }
            lines
        }
        other => vec![format!("value: {other}")],
    }
}

fn run_query(
    group: &Group,
    command: &str,
    words: &[String],
    radius: usize,
) -> Result<Answer, (u8, String)> {
    let arity = match command {
        "wp" | "order" | "collect" | "embed" => 1,
        "cp" | "pp" | "csgmp" | "csmmp" => 2,
        other => return Err(usage_err(format!("unknown command `{other}`"))),
    };
    if words.len() != arity {
        return Err(usage_err(format!(
            "command `{command}` takes {arity} word argument(s), got {}",
            words.len()
        )));
    }
    let elems: Vec<Element> = words
        .iter()
        .map(|w| {
            let word = parse_word(group, w).map_err(core_err)?;
            group.evaluate(&word).map_err(core_err)
        })
        .collect::<Result<_, _>>()?;

    let answer = match command {
        "wp" => {
            let v = group.wp(&elems[0]);
            Answer {
                verdict: v.to_string(),
                witness: None,
                k: None,
                bool_verdict: Some(v),
                table: vec![],
            }
        }
        "cp" => {
            let ans = group
                .conjugacy_with_witness_radius(&elems[0], &elems[1], radius)
                .map_err(core_err)?;
            match ans {
                ConjugacyAnswer::Conjugate { witness_top } => Answer {
                    verdict: "conjugate".into(),
                    witness: witness_top.map(|d| d.to_string()),
                    k: None,
                    bool_verdict: Some(true),
                    table: vec![],
                },
                ConjugacyAnswer::NotConjugate => Answer {
                    verdict: "not-conjugate".into(),
                    witness: None,
                    k: None,
                    bool_verdict: Some(false),
                    table: vec![],
                },
            }
        }
        "pp" => match group.pp(&elems[0], &elems[1]).map_err(core_err)? {
            PowerAnswer::Solution(k) => Answer {
                verdict: "solution".into(),
                witness: None,
                k: Some(k.to_string()),
                bool_verdict: Some(true),
                table: vec![],
            },
            PowerAnswer::NoSolution => Answer {
                verdict: "no-solution".into(),
                witness: None,
                k: None,
                bool_verdict: Some(false),
                table: vec![],
            },
        },
        "csgmp" => {
            let v = group.csgmp(&elems[0], &elems[1]).map_err(core_err)?;
            Answer {
                verdict: v.to_string(),
                witness: None,
                k: None,
                bool_verdict: Some(v),
                table: vec![],
            }
        }
        "csmmp" => {
            let v = group.csmmp(&elems[0], &elems[1]).map_err(core_err)?;
            Answer {
                verdict: v.to_string(),
                witness: None,
                k: None,
                bool_verdict: Some(v),
                table: vec![],
            }
        }
        "order" => match group.order(&elems[0]).map_err(core_err)? {
            Order::Finite(n) => Answer {
                verdict: "finite".into(),
                witness: None,
                k: Some(n.to_string()),
                bool_verdict: None,
                table: vec![],
            },
            Order::Infinity => Answer {
                verdict: "infinity".into(),
                witness: None,
                k: None,
                bool_verdict: None,
                table: vec![],
            },
        },
        "collect" => Answer {
            verdict: elems[0].to_string(),
            witness: None,
            k: None,
            bool_verdict: None,
            table: element_lines(&elems[0]),
        },
        "embed" => {
            if !matches!(group, Group::FreeSolvable(_)) {
                return Err(core_err(Error::Unsupported(
                    "embed applies to freesolvable(d, r) groups".into(),
                )));
            }
            Answer {
                verdict: elems[0].to_string(),
                witness: None,
                k: None,
                bool_verdict: None,
                table: element_lines(&elems[0]),
            }
        }
        _ => unreachable!(),
    };
    Ok(answer)
}

/// Split a batch line into tokens: bare words or double-quoted strings.
fn split_query_line(line: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut in_quotes = false;
    let mut had_quotes = false;
    for c in line.chars() {
        match (c, in_quotes) {
            ('"', false) => {
                in_quotes = true;
                had_quotes = true;
            }
            ('"', true) => in_quotes = false,
            (c, false) if c.is_whitespace() => {
                if !cur.is_empty() || had_quotes {
                    out.push(std::mem::take(&mut cur));
                    had_quotes = false;
                }
            }
            (c, _) => cur.push(c),
        }
    }
    if in_quotes {
        return Err("unclosed quote".into());
    }
    if !cur.is_empty() || had_quotes {
        out.push(cur);
    }
    Ok(out)
}

fn emit(
    cli: &Cli,
    group_text: &str,
    command: &str,
    inputs: &[String],
    answer: &Answer,
    elapsed_ms: f64,
) {
    if cli.json {
        let record = QueryRecord {
            command: command.to_string(),
            group: group_text.to_string(),
            inputs: inputs.to_vec(),
            verdict: answer.verdict.clone(),
            witness: answer.witness.clone(),
            k: answer.k.clone(),
            time_ms: elapsed_ms,
        };
        println!("{}", serde_json::to_string(&record).expect("record serializes"));
    } else {
        match (&answer.k, &answer.witness) {
            (Some(k), _) if command == "pp" => println!("{command}: k = {k}"),
            (Some(k), _) if command == "order" => println!("{command}: {k}"),
            (_, Some(w)) => println!("{command}: {} (witness top: {w})", answer.verdict),
            _ if !answer.table.is_empty() => {
                println!("{command}:");
                for line in &answer.table {
                    println!("  {line}");
                }
            }
            _ => println!("{command}: {}", answer.verdict),
        }
    }
}

fn run() -> u8 {
    let cli = Cli::parse();

    // selftest mode
    if cli.query.first().map(String::as_str) == Some("selftest") {
        if cli.query.len() > 1 {
            eprintln!("selftest takes no positional arguments");
            return EXIT_USAGE;
        }
        let scale = if cli.full { Scale::Full } else { Scale::Quick };
        let report = selftest::run(scale);
        for line in report.lines() {
            println!("{line}");
        }
        return if report.all_passed() { 0 } else { EXIT_FALSE };
    }

    let group_text = match &cli.group {
        Some(g) => g.clone(),
        None => {
            eprintln!("--group is required (or use the selftest command)");
            return EXIT_USAGE;
        }
    };
    let group = match parse_group_expr(&group_text) {
        Ok(expr) => match expr.build(cli.beta) {
            Ok(g) => g,
            Err(e) => {
                let (code, msg) = core_err(e);
                eprintln!("group error: {msg}");
                return code;
            }
        },
        Err(e) => {
            eprintln!("group error: {e}");
            return EXIT_USAGE;
        }
    };

    // batch mode: output order follows input order; first error aborts
    if let Some(path) = &cli.batch {
        let content = match std::fs::read_to_string(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("cannot read batch file {}: {e}", path.display());
                return EXIT_USAGE;
            }
        };
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens = match split_query_line(line) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("batch line {}: {e}", lineno + 1);
                    return EXIT_USAGE;
                }
            };
            let (command, words) = tokens.split_first().expect("nonempty line");
            let start = Instant::now();
            match run_query(&group, command, words, cli.radius) {
                Ok(answer) => {
                    let ms = start.elapsed().as_secs_f64() * 1e3;
                    emit(&cli, &group_text, command, words, &answer, ms);
                }
                Err((code, msg)) => {
                    eprintln!("batch line {}: {msg}", lineno + 1);
                    return code;
                }
            }
        }
        return 0;
    }

    // single query mode
    if cli.query.is_empty() {
        eprintln!("expected a command (wp, cp, pp, csgmp, csmmp, order, collect, embed) or selftest");
        return EXIT_USAGE;
    }
    let command = cli.query[0].clone();
    let words: Vec<String> = cli.query[1..].to_vec();
    let start = Instant::now();
    match run_query(&group, &command, &words, cli.radius) {
        Ok(answer) => {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&cli, &group_text, &command, &words, &answer, ms);
            if cli.exit_verdict {
                if let Some(false) = answer.bool_verdict {
                    return EXIT_FALSE;
                }
            }
            0
        }
        Err((code, msg)) => {
            eprintln!("{msg}");
            code
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run())
}
