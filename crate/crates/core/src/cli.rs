//! The `lambda-au` command line. [`run`] takes the arguments and standard
//! input and returns the exit code and both output streams, so the binary
//! only has to print them.
//!
//! Exit codes: 0 success, 1 a property was refuted (not a generalization,
//! not a superpattern, ...), 2 bad input, 3 fuel or size limits reached
//! before an answer.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::au::{
    check_generalization, less_general, pattern_lgg, subst_json, Aup, GenWitness, MatchOutcome,
};
use crate::error::Error;
use crate::gen::{small_signature, TermGen};
use crate::golden;
use crate::kernel::{
    elaborate, eta_reduce, parse_expr, parse_term, term_to_json, Signature, Substitution, Term,
};
use crate::nullarity::{
    generate_chain, lift, maximal_positions, pseudo_pattern_lambda, pseudo_pattern_sp, tighten,
    FragmentTag, PseudoMode, TightStatus,
};
use crate::superpattern::is_superpattern;

#[derive(Parser, Debug)]
#[command(
    name = "lambda-au",
    version,
    about = "Anti-unification over the simply-typed lambda calculus"
)]
pub struct Cli {
    /// Signature file with one `name : type` per line.
    #[arg(long, global = true)]
    pub sig: Option<std::path::PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Search depth for higher-order matching.
    #[arg(long, global = true, default_value_t = 8)]
    pub fuel: usize,
    /// Seed for `corpus`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// The problem a command works on: the two sides default to
/// `λx:a.λy:a. f(x)` and `λx:a.λy:a. f(y)`.
#[derive(clap::Args, Debug, Clone)]
pub struct ProblemArgs {
    #[arg(long)]
    pub left: Option<String>,
    #[arg(long)]
    pub right: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the η-long β-normal form of a term (`-` reads standard input).
    Normalize { term: String },
    /// Least general pattern generalization of two closed terms.
    Lgg { left: String, right: String },
    /// Check that a term generalizes both sides of a problem.
    CheckGen {
        term: String,
        #[command(flatten)]
        problem: ProblemArgs,
        /// Witness for the left side, e.g. `Z := \w1:a.\w2:a. w1; W := a`.
        #[arg(long)]
        sigma1: Option<String>,
        #[arg(long)]
        sigma2: Option<String>,
    },
    /// Membership in the superpattern fragment.
    Superpattern { term: String },
    /// Remove free variables that projections or witness ranges can replace.
    Tighten {
        term: String,
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value = "lambda")]
        fragment: FragmentTag,
    },
    /// Maximal positions and lifting of `λw̄.c(r̄)`.
    Lift { term: String },
    /// Pseudo-pattern of a tight generalization.
    Pseudo {
        term: String,
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value = "lambda")]
        fragment: FragmentTag,
        /// Resolve inner occurrences of the head variable side by side.
        #[arg(long)]
        collapsed: bool,
    },
    /// Certified strictly descending chain of generalizations.
    Chain {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "lambda")]
        fragment: FragmentTag,
        /// Starting generalization; the pattern lgg by default.
        #[arg(long)]
        start: Option<String>,
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Recompute every worked example and report.
    PaperExamples,
    /// Random problems over a five-constant signature with their lggs.
    Corpus {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

/// What a command printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let (code, kind) = match &e {
            Error::Syntax { .. } => (2, "syntax"),
            Error::UnknownIdentifier { .. } => (2, "unknown-identifier"),
            Error::TypeMismatch { .. } => (2, "type-mismatch"),
            Error::ArityOverflow { .. } => (2, "arity-overflow"),
            Error::InvalidPosition(_) => (2, "invalid-position"),
            Error::InvalidProblem(_) => (2, "invalid-problem"),
            Error::Json(_) => (2, "json"),
            Error::NotAPattern(_) => (1, "not-a-pattern"),
            Error::Shape(_) => (1, "shape"),
            Error::InvalidWitness(_) => (1, "invalid-witness"),
            Error::NotPatternDerived(_) => (1, "not-pattern-derived"),
            Error::NotRefutable(_) => (1, "not-refutable"),
            Error::FuelExhausted(_) => (3, "fuel-exhausted"),
            Error::TooLarge(_) => (3, "too-large"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn io(message: String) -> Failure {
        Failure {
            code: 2,
            kind: "io",
            message,
        }
    }
}

/// A command's result: exit code, text rendering and JSON rendering.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report {
            code: 0,
            text,
            json,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let json = cli.json;
    match execute(&cli, stdin) {
        Ok(r) => Output {
            code: r.code,
            stdout: if json {
                format!("{}\n", serde_json::to_string_pretty(&r.json).expect("json"))
            } else {
                format!("{}\n", r.text)
            },
            stderr: String::new(),
        },
        Err(f) => Output {
            code: f.code,
            stdout: String::new(),
            stderr: if json {
                format!("{}\n", json!({"error": f.kind, "message": f.message}))
            } else {
                format!("error: {}\n", f.message)
            },
        },
    }
}

fn signature(cli: &Cli) -> Result<Signature, Failure> {
    match &cli.sig {
        None => Ok(Signature::builtin()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
            Ok(Signature::parse(&text)?)
        }
    }
}

fn read_arg(text: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if text != "-" {
        return Ok(text.to_string());
    }
    let mut buf = String::new();
    stdin
        .read_to_string(&mut buf)
        .map_err(|e| Failure::io(format!("stdin: {e}")))?;
    Ok(buf.trim().to_string())
}

fn problem(args: &ProblemArgs, sig: &Signature) -> Result<Aup, Failure> {
    match (&args.left, &args.right) {
        (None, None) => Ok(Aup::new(
            parse_term("\\x:a.\\y:a. f(x)", sig)?,
            parse_term("\\x:a.\\y:a. f(y)", sig)?,
        )?),
        (Some(l), Some(r)) => Ok(Aup::new(parse_term(l, sig)?, parse_term(r, sig)?)?),
        _ => Err(Error::InvalidProblem("give both --left and --right".into()).into()),
    }
}

/// `Z := term; W := term`. Free variables of `g` fix the types of the domain.
fn parse_subst(text: &str, g: &Term, sig: &Signature) -> Result<Substitution, Failure> {
    let mut s = Substitution::new();
    let fv = crate::kernel::free_vars(g);
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (var, body) = part.split_once(":=").ok_or_else(|| {
            Failure::from(Error::Syntax {
                offset: 0,
                message: format!("expected `Var := term` in `{part}`"),
            })
        })?;
        let var = var.trim();
        let Some(ty) = fv.get(var) else {
            return Err(
                Error::InvalidProblem(format!("{var} is not a free variable of {g}")).into(),
            );
        };
        let (expr, free) = parse_expr(body.trim(), sig, &Default::default())?;
        let t = elaborate(&expr, sig, &free)?;
        if t.ty() != ty {
            return Err(Error::mismatch(ty, t.ty()).into());
        }
        s.insert(var, t);
    }
    Ok(s)
}

// Witnesses for `g` found by matching against both sides.
fn witnesses(g: &Term, p: &Aup, fuel: usize) -> Result<GenWitness, Failure> {
    let l = less_general(g, &p.left, fuel);
    let r = less_general(g, &p.right, fuel);
    match (l, r) {
        (MatchOutcome::Proven(s1), MatchOutcome::Proven(s2)) => {
            Ok(GenWitness::new(g.clone(), s1, s2))
        }
        (MatchOutcome::Refuted(why), _) | (_, MatchOutcome::Refuted(why)) => Err(Failure {
            code: 1,
            kind: "not-a-generalization",
            message: format!("{g} does not generalize the problem: {why}"),
        }),
        _ => Err(Error::FuelExhausted(format!("no witness for {g} within fuel {fuel}")).into()),
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, Failure> {
    let sig = signature(cli)?;
    let fuel = cli.fuel;
    match &cli.command {
        Command::Normalize { term } => {
            let t = parse_term(&read_arg(term, stdin)?, &sig)?;
            Ok(Report::ok(
                t.to_string(),
                json!({"term": t.to_string(), "type": t.ty().to_string(), "ast": term_to_json(&t)}),
            ))
        }
        Command::Lgg { left, right } => {
            let p = Aup::new(
                parse_term(&read_arg(left, stdin)?, &sig)?,
                parse_term(right, &sig)?,
            )?;
            let w = pattern_lgg(&p);
            Ok(Report::ok(w.to_string(), w.to_json()))
        }
        Command::CheckGen {
            term,
            problem: pa,
            sigma1,
            sigma2,
        } => {
            let p = problem(pa, &sig)?;
            let g = parse_term(&read_arg(term, stdin)?, &sig)?;
            match (sigma1, sigma2) {
                (Some(s1), Some(s2)) => {
                    let w = GenWitness::new(
                        g.clone(),
                        parse_subst(s1, &g, &sig)?,
                        parse_subst(s2, &g, &sig)?,
                    );
                    let ok = check_generalization(&w, &p)?;
                    Ok(Report {
                        code: if ok { 0 } else { 1 },
                        text: format!(
                            "{}: {}",
                            w.g,
                            if ok {
                                "generalizes"
                            } else {
                                "does not generalize"
                            }
                        ),
                        json: json!({"generalizes": ok, "witness": w.to_json()}),
                    })
                }
                (None, None) => {
                    let l = less_general(&g, &p.left, fuel);
                    let r = less_general(&g, &p.right, fuel);
                    let code = match (&l, &r) {
                        (MatchOutcome::Proven(_), MatchOutcome::Proven(_)) => 0,
                        (MatchOutcome::Refuted(_), _) | (_, MatchOutcome::Refuted(_)) => 1,
                        _ => 3,
                    };
                    let verdict =
                        ["generalizes", "does not generalize", "", "unknown"][code as usize];
                    Ok(Report {
                        code,
                        text: format!("{g}: {verdict}\n  left: {l}\n  right: {r}"),
                        json: json!({
                            "generalizes": code == 0,
                            "left": l.to_json(),
                            "right": r.to_json(),
                        }),
                    })
                }
                _ => Err(Error::InvalidProblem("give both --sigma1 and --sigma2".into()).into()),
            }
        }
        Command::Superpattern { term } => {
            let t = parse_term(&read_arg(term, stdin)?, &sig)?;
            let r = is_superpattern(&t);
            Ok(Report {
                code: if r.is_member { 0 } else { 1 },
                text: r.to_string(),
                json: r.to_json(),
            })
        }
        Command::Tighten {
            term,
            problem: pa,
            fragment,
        } => {
            let p = problem(pa, &sig)?;
            let g = parse_term(&read_arg(term, stdin)?, &sig)?;
            let w = witnesses(&g, &p, fuel)?;
            let t = tighten(&w, &p, *fragment, &sig, fuel)?;
            let mut text = String::new();
            for (v, b) in &t.rewrites {
                let _ = writeln!(text, "{v} := {b}");
            }
            let _ = write!(text, "{}\nstatus: {}", t.witness, t.status);
            Ok(Report {
                code: if t.status == TightStatus::Tight { 0 } else { 3 },
                text,
                json: json!({
                    "witness": t.witness.to_json(),
                    "status": t.status.to_string(),
                    "rewrites": t.rewrites.iter().map(|(v, b)| json!({"var": v, "binding": b.to_string()})).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Lift { term } => {
            let t = parse_term(&read_arg(term, stdin)?, &sig)?;
            let maximal = maximal_positions(&t, &sig)?;
            let l = lift(&t, &sig)?;
            let short = eta_reduce(&l.term);
            let mut text = format!(
                "maximal positions: {{{}}}\n{}\n  η-short: {short}",
                maximal
                    .iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                l.term
            );
            for (h, ty, sub, q) in &l.fresh {
                let _ = write!(text, "\n  {h} : {ty}  replaces {sub} at {q}");
            }
            Ok(Report::ok(
                text,
                json!({
                    "maximalPositions": maximal.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                    "term": l.term.to_string(),
                    "etaShort": short.to_string(),
                    "ast": term_to_json(&l.term),
                    "fresh": l.fresh.iter().map(|(h, ty, sub, q)| json!({
                        "var": h,
                        "type": ty.to_string(),
                        "replaced": sub.to_string(),
                        "position": q.to_string(),
                    })).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Pseudo {
            term,
            problem: pa,
            fragment,
            collapsed,
        } => {
            let p = problem(pa, &sig)?;
            let g = parse_term(&read_arg(term, stdin)?, &sig)?;
            let w = crate::au::ground_witnesses(&witnesses(&g, &p, fuel)?, &p, &sig)?;
            let mode = if *collapsed {
                PseudoMode::Collapsed
            } else {
                PseudoMode::Definitional
            };
            let out = match fragment {
                FragmentTag::LambdaAll => pseudo_pattern_lambda(&w, &p, mode)?,
                FragmentTag::LambdaSp => pseudo_pattern_sp(&w, &p, &sig, mode)?,
            };
            Ok(Report::ok(out.to_string(), out.to_json()))
        }
        Command::Chain {
            n,
            fragment,
            start,
            problem: pa,
        } => {
            let p = problem(pa, &sig)?;
            let start = match start {
                Some(text) => witnesses(&parse_term(&read_arg(text, stdin)?, &sig)?, &p, fuel)?,
                None => pattern_lgg(&p),
            };
            let c = generate_chain(&p, &start, *fragment, *n, &sig, fuel.max(1))?;
            let mut text = format!(
                "tightened: {}\npseudo-pattern: {}",
                c.tightened.g, c.elements[0].g
            );
            for (i, (e, s)) in c.elements.iter().skip(1).zip(&c.steps).enumerate() {
                let _ = write!(
                    text,
                    "\n{}: {}  [forward {}; {} {} > {}; reverse not proven at fuel {}]",
                    i + 1,
                    e.g,
                    subst_json(&s.forward),
                    s.refutation.case_tag,
                    s.refutation.n_next,
                    s.refutation.n_prev,
                    s.reverse_fuel
                );
            }
            Ok(Report::ok(text, c.to_json()))
        }
        Command::PaperExamples => {
            let r = golden::run();
            Ok(Report {
                code: if r.all_passed() { 0 } else { 1 },
                text: r.to_string(),
                json: r.to_json(),
            })
        }
        Command::Corpus { count, depth } => {
            let mut gen = TermGen::new(cli.seed, small_signature());
            let mut rows = Vec::new();
            let mut text = String::new();
            for _ in 0..*count {
                let p = gen.aup(*depth);
                let w = pattern_lgg(&p);
                let ok = check_generalization(&w, &p)?;
                let _ = writeln!(text, "{}  ≜  {}\n  lgg {}", p.left, p.right, w.g);
                rows.push(json!({"problem": p.to_json(), "lgg": w.to_json(), "verified": ok}));
            }
            Ok(Report::ok(text.trim_end().to_string(), Value::Array(rows)))
        }
    }
}
