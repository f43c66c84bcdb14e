//! Command-line front end: parse theories and terms, translate to nets,
//! check correctness, compose, enumerate switchings, and decide equality.
//!
//! Exit codes: 0 success, 1 falsified check (incorrect net, unequal
//! nets), 2 equality not settled within the bound, 64 usage error,
//! 65 parse/type/input error.

use std::fs;
use std::process::exit;

use smcnet::{
    enumerate_switchings, first_failure, net_to_dot, par_count, parse_term, parse_theory,
    switch_graph_to_dot, theory_equal_bounded, translate, FailureKind, Net, Term, Theory, Verdict,
};

const EX_USAGE: i32 = 64;
const EX_DATAERR: i32 = 65;

const USAGE: &str = "\
usage: smcnet <command> [args]

commands:
  check THEORY TERM                 print the inferred arity of a term
  net THEORY TERM [--json|--dot]    translate a term to a net
  compose THEORY TERM TERM          glue the nets of two terms
  correct NETFILE [--theory FILE] [--explain]
                                    check a net file against the switching
                                    criterion; --explain prints the first
                                    failing switching as DOT
  equal THEORY TERM TERM [--depth N]
                                    decide equality modulo the theory's
                                    equations, searching at most N rewrites
  switchings THEORY TERM [--count]  enumerate the switchings of a term's net
";

fn fail_usage(msg: &str) -> ! {
    eprintln!("smcnet: {msg}");
    eprint!("{USAGE}");
    exit(EX_USAGE);
}

fn fail_data(msg: impl std::fmt::Display) -> ! {
    eprintln!("smcnet: {msg}");
    exit(EX_DATAERR);
}

struct Args {
    positional: Vec<String>,
    json: bool,
    dot: bool,
    explain: bool,
    count: bool,
    theory: Option<String>,
    depth: usize,
}

fn parse_args(raw: &[String]) -> Args {
    let mut args = Args {
        positional: Vec::new(),
        json: false,
        dot: false,
        explain: false,
        count: false,
        theory: None,
        depth: 0,
    };
    let mut it = raw.iter();
    while let Some(a) = it.next() {
        match a.as_str() {
            "--json" => args.json = true,
            "--dot" => args.dot = true,
            "--explain" => args.explain = true,
            "--count" => args.count = true,
            "--theory" => match it.next() {
                Some(v) => args.theory = Some(v.clone()),
                None => fail_usage("--theory needs a file argument"),
            },
            "--depth" => match it.next().map(|v| v.parse::<usize>()) {
                Some(Ok(n)) => args.depth = n,
                _ => fail_usage("--depth needs a number"),
            },
            flag if flag.starts_with("--") => fail_usage(&format!("unknown flag {flag}")),
            _ => args.positional.push(a.clone()),
        }
    }
    args
}

fn read_file(path: &str) -> String {
    match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => fail_data(format_args!("{path}: {e}")),
    }
}

fn load_theory(path: &str) -> Theory {
    match parse_theory(&read_file(path)) {
        Ok(th) => th,
        Err(e) => fail_data(format_args!("{path}: {e}")),
    }
}

fn load_term(text: &str, th: &Theory) -> Term {
    match parse_term(text, &th.signature) {
        Ok(t) => t,
        Err(e) => fail_data(format_args!("term `{text}`: {e}")),
    }
}

fn net_of(text: &str, th: &Theory) -> Net {
    let term = load_term(text, th);
    match translate(&term, &th.signature) {
        Ok(net) => net,
        Err(e) => fail_data(e),
    }
}

fn main() {
    let raw: Vec<String> = std::env::args().skip(1).collect();
    if raw.is_empty() {
        fail_usage("missing command");
    }
    let command = raw[0].clone();
    let args = parse_args(&raw[1..]);
    let pos = &args.positional;

    match command.as_str() {
        "check" => {
            let [theory, term] = require::<2>(pos);
            let th = load_theory(theory);
            let t = load_term(term, &th);
            let (src, tgt) = match smcnet::infer_type(&t, &th.signature) {
                Ok(a) => a,
                Err(e) => fail_data(e),
            };
            println!("{src} -> {tgt}");
        }
        "net" => {
            let [theory, term] = require::<2>(pos);
            if args.json && args.dot {
                fail_usage("--json and --dot are mutually exclusive");
            }
            let net = net_of(term, &load_theory(theory));
            if args.dot {
                print!("{}", net_to_dot(&net));
            } else {
                println!("{}", net.to_json_string());
            }
        }
        "compose" => {
            let [theory, t1, t2] = require::<3>(pos);
            let th = load_theory(theory);
            let f = net_of(t1, &th);
            let g = net_of(t2, &th);
            match f.compose(&g) {
                Ok(net) => println!("{}", net.to_json_string()),
                Err(e) => fail_data(e),
            }
        }
        "correct" => {
            let [netfile] = require::<1>(pos);
            let th = args.theory.as_deref().map(load_theory);
            let text = read_file(netfile);
            let net = match Net::from_json_str(&text, th.as_ref().map(|t| &t.signature)) {
                Ok(net) => net,
                Err(e) => fail_data(format_args!("{netfile}: {e}")),
            };
            match first_failure(&net) {
                None => {
                    println!("correct");
                }
                Some(failure) => {
                    let kind = match failure.kind {
                        FailureKind::Cyclic => "cyclic",
                        FailureKind::Disconnected => "disconnected",
                    };
                    println!("incorrect: switching {} is {}", failure.index, kind);
                    if args.explain {
                        print!("{}", switch_graph_to_dot(&failure.graph));
                    }
                    exit(1);
                }
            }
        }
        "equal" => {
            let [theory, t1, t2] = require::<3>(pos);
            let th = load_theory(theory);
            let a = load_term(t1, &th);
            let b = load_term(t2, &th);
            match theory_equal_bounded(&a, &b, &th, args.depth) {
                Ok(Verdict::Equal(trace)) => {
                    println!("EQUAL");
                    for step in trace {
                        let dir = if step.forward { "->" } else { "<-" };
                        println!("  {} {}", step.equation, dir);
                    }
                }
                Ok(Verdict::NotFoundWithinBound) => {
                    if args.depth == 0 {
                        println!("NOT-EQUAL-FREE");
                        exit(1);
                    }
                    println!("UNKNOWN({})", args.depth);
                    exit(2);
                }
                Err(e) => fail_data(e),
            }
        }
        "switchings" => {
            let [theory, term] = require::<2>(pos);
            let net = net_of(term, &load_theory(theory));
            if args.count {
                println!("{}", enumerate_switchings(&net).count());
            } else {
                let mut all_trees = true;
                let mut total = 0u64;
                for graph in enumerate_switchings(&net) {
                    let verdict = match graph.check_tree() {
                        Ok(()) => "tree",
                        Err(FailureKind::Cyclic) => {
                            all_trees = false;
                            "cyclic"
                        }
                        Err(FailureKind::Disconnected) => {
                            all_trees = false;
                            "disconnected"
                        }
                    };
                    println!("{}: {}", graph.index, verdict);
                    total += 1;
                }
                println!(
                    "{} switchings over {} par nodes: {}",
                    total,
                    par_count(&net),
                    if all_trees { "correct" } else { "incorrect" }
                );
                if !all_trees {
                    exit(1);
                }
            }
        }
        other => fail_usage(&format!("unknown command `{other}`")),
    }
}

fn require<const N: usize>(pos: &[String]) -> [&str; N] {
    if pos.len() != N {
        fail_usage(&format!("expected {N} argument(s), got {}", pos.len()));
    }
    std::array::from_fn(|i| pos[i].as_str())
}
