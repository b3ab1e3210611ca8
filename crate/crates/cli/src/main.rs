//! Command-line front end: parsing, reduction, weak evaluation,
//! translation, type checking, normal-form classification, and the
//! exhaustive property suites.
//!
//! Exit codes: 0 success, 1 domain error (type error, not in image, …),
//! 2 usage error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sharelam::bang::{bang_redexes, infer_bang};
use sharelam::lsc::{infer_lsc, lsc_redexes, weak_eval_steps, Calculus};
use sharelam::mscll::{check_derivation, compile_typing};
use sharelam::oracle::{
    check_confluence_mod_flatten, check_simulation, check_sn, count_lsc, count_sharing,
    stream_lsc, stream_sharing, Caps, PropertyReport, SnResult,
};
use sharelam::sharing::{
    classify_nf, sharing_redexes, typecheck_sharing, typing_derivation, weak_eval_sharing,
    TypingEnv,
};
use sharelam::syntax::{
    parse_bang, parse_lsc, parse_sharing, parse_simple_type, AstLines,
};
use sharelam::translations::{
    inverse, tra_bang, tra_cbn, tra_cbn_type, tra_cbs, tra_cbs_type, tra_cbv, tra_cbv_type,
    InverseOutput, TranslationKind,
};

#[derive(Parser)]
#[command(name = "sharelam", about = "Workbench for the sharing linear λ-calculus and friends", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lang {
    Lsc,
    Sharing,
    Bang,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CalcArg {
    Cbn,
    Cbv,
    Cbs,
    Cbnd,
    Sharing,
    Bang,
    BangFull,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Cbn,
    Cbv,
    Cbs,
    Bang,
}

impl KindArg {
    fn kind(self) -> TranslationKind {
        match self {
            KindArg::Cbn => TranslationKind::Cbn,
            KindArg::Cbv => TranslationKind::Cbv,
            KindArg::Cbs => TranslationKind::Cbs,
            KindArg::Bang => TranslationKind::Bang,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Full,
    Weak,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Confluence,
    SimulationCbn,
    SimulationCbv,
    SimulationCbs,
    Sn,
    Counts,
}

#[derive(Args)]
struct TermArg {
    /// The input term; `-` reads from standard input.
    term: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term and print its canonical form.
    Parse {
        #[arg(long, value_enum, default_value = "sharing")]
        lang: Lang,
        /// Print the structured-text AST instead of the concrete syntax.
        #[arg(long)]
        ast: bool,
        #[command(flatten)]
        input: TermArg,
    },
    /// Reduce a term to normal form (first redex in enumeration order).
    Reduce {
        #[arg(long, value_enum)]
        calculus: CalcArg,
        #[arg(long, value_enum, default_value = "full")]
        strategy: Strategy,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        /// Print every intermediate step.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        ast: bool,
        #[command(flatten)]
        input: TermArg,
    },
    /// Weak-evaluate a term, labelling each step with its rulename.
    Eval {
        #[arg(long, value_enum)]
        calculus: CalcArg,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: TermArg,
    },
    /// Translate a term (or, with --ty, a type) into the sharing calculus.
    Translate {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Invert: the input is a sharing term in the image grammar.
        #[arg(long)]
        inverse: bool,
        /// Translate a simple type instead of a term.
        #[arg(long)]
        ty: bool,
        #[arg(long)]
        ast: bool,
        #[command(flatten)]
        input: TermArg,
    },
    /// Infer the (principal) type of a term.
    Typecheck {
        #[arg(long, value_enum, default_value = "sharing")]
        lang: Lang,
        /// For sharing terms, also compile the typing derivation to a
        /// checked sequent derivation and print it.
        #[arg(long)]
        sequent: bool,
        #[command(flatten)]
        input: TermArg,
    },
    /// Classify a sharing term in the normal-form grammar.
    Nf {
        #[command(flatten)]
        input: TermArg,
    },
    /// Run an exhaustive property suite over all terms up to a size.
    Check {
        #[arg(long, value_enum)]
        property: Property,
        #[arg(long, default_value_t = 4)]
        size: usize,
        /// Emit a machine-readable one-line summary.
        #[arg(long)]
        json_summary: bool,
        /// Fixed enumeration order (always on; accepted for compatibility).
        #[arg(long)]
        deterministic: bool,
    },
}

fn read_term(raw: &str) -> String {
    if raw == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).unwrap_or(0);
        buf.trim().to_string()
    } else {
        raw.to_string()
    }
}

/// A domain error: printed to stderr, exit code 1.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Fail {
        Fail(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Command) -> Result<(), Fail> {
    match cmd {
        Command::Parse { lang, ast, input } => {
            let src = read_term(&input.term);
            match lang {
                Lang::Lsc => {
                    let t = parse_lsc(&src)?;
                    print!("{}", if ast { t.ast_lines() } else { format!("{t}\n") });
                }
                Lang::Sharing => {
                    let t = parse_sharing(&src)?;
                    print!("{}", if ast { t.ast_lines() } else { format!("{t}\n") });
                }
                Lang::Bang => {
                    let t = parse_bang(&src)?;
                    print!("{}", if ast { t.ast_lines() } else { format!("{t}\n") });
                }
            }
            Ok(())
        }
        Command::Reduce {
            calculus,
            strategy,
            max_steps,
            trace,
            ast,
            input,
        } => reduce_cmd(calculus, strategy, max_steps, trace, ast, &read_term(&input.term)),
        Command::Eval {
            calculus,
            max_steps,
            trace,
            input,
        } => eval_cmd(calculus, max_steps, trace, &read_term(&input.term)),
        Command::Translate {
            kind,
            inverse: inv,
            ty,
            ast,
            input,
        } => translate_cmd(kind, inv, ty, ast, &read_term(&input.term)),
        Command::Typecheck { lang, sequent, input } => {
            typecheck_cmd(lang, sequent, &read_term(&input.term))
        }
        Command::Nf { input } => {
            let t = parse_sharing(&read_term(&input.term))?;
            match classify_nf(&t) {
                Some(tag) => println!("{tag}"),
                None => return Err(Fail("term is reducible (no normal-form tag)".into())),
            }
            Ok(())
        }
        Command::Check {
            property,
            size,
            json_summary,
            deterministic: _,
        } => check_cmd(property, size, json_summary),
    }
}

/// One named reduction step in the deterministic strategy.
fn step_of(calculus: CalcArg, strategy: Strategy, t: &Step) -> Result<Option<(String, Step)>, Fail> {
    Ok(match (t, strategy) {
        (Step::Lsc(t), Strategy::Full) => {
            let calc = lsc_calc(calculus)?;
            lsc_redexes(t, calc)
                .into_iter()
                .next()
                .map(|(r, u)| (r.to_string(), Step::Lsc(u)))
        }
        (Step::Lsc(t), Strategy::Weak) => {
            let calc = lsc_calc(calculus)?;
            weak_eval_steps(t, calc)
                .into_iter()
                .next()
                .map(|(r, u)| (r.to_string(), Step::Lsc(u)))
        }
        (Step::Sharing(t), Strategy::Full) => sharing_redexes(t)
            .into_iter()
            .next()
            .map(|(r, u)| (r.to_string(), Step::Sharing(u))),
        (Step::Sharing(t), Strategy::Weak) => weak_eval_sharing(t)
            .into_iter()
            .next()
            .map(|(r, u)| (r.to_string(), Step::Sharing(u))),
        (Step::Bang(t, simplified), _) => bang_redexes(t, *simplified)?
            .into_iter()
            .next()
            .map(|(r, u)| (r.to_string(), Step::Bang(u, *simplified))),
    })
}

enum Step {
    Lsc(sharelam::syntax::lsc_term::LscTerm),
    Sharing(sharelam::syntax::sharing_term::SharingTerm),
    Bang(sharelam::syntax::bang_term::BangTerm, bool),
}

impl std::fmt::Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Step::Lsc(t) => write!(f, "{t}"),
            Step::Sharing(t) => write!(f, "{t}"),
            Step::Bang(t, _) => write!(f, "{t}"),
        }
    }
}

impl Step {
    fn ast_lines(&self) -> String {
        match self {
            Step::Lsc(t) => t.ast_lines(),
            Step::Sharing(t) => t.ast_lines(),
            Step::Bang(t, _) => t.ast_lines(),
        }
    }
}

fn lsc_calc(c: CalcArg) -> Result<Calculus, Fail> {
    match c {
        CalcArg::Cbn => Ok(Calculus::Cbn),
        CalcArg::Cbv => Ok(Calculus::Cbv),
        CalcArg::Cbs => Ok(Calculus::Cbs),
        CalcArg::Cbnd => Ok(Calculus::Cbnd),
        _ => Err(Fail("this calculus selector needs an LSC term".into())),
    }
}

fn parse_for(calculus: CalcArg, src: &str) -> Result<Step, Fail> {
    Ok(match calculus {
        CalcArg::Sharing => Step::Sharing(parse_sharing(src)?),
        CalcArg::Bang => Step::Bang(parse_bang(src)?, true),
        CalcArg::BangFull => Step::Bang(parse_bang(src)?, false),
        _ => Step::Lsc(parse_lsc(src)?),
    })
}

fn reduce_cmd(
    calculus: CalcArg,
    strategy: Strategy,
    max_steps: usize,
    trace: bool,
    ast: bool,
    src: &str,
) -> Result<(), Fail> {
    let mut cur = parse_for(calculus, src)?;
    if trace {
        println!("{cur}");
    }
    for _ in 0..max_steps {
        match step_of(calculus, strategy, &cur)? {
            Some((rule, next)) => {
                if trace {
                    println!("--{rule}--> {next}");
                }
                cur = next;
            }
            None => break,
        }
    }
    if !trace {
        if ast {
            print!("{}", cur.ast_lines());
        } else {
            println!("{cur}");
        }
    }
    Ok(())
}

fn eval_cmd(calculus: CalcArg, max_steps: usize, trace: bool, src: &str) -> Result<(), Fail> {
    reduce_cmd(calculus, Strategy::Weak, max_steps, trace, false, src)
}

fn translate_cmd(kind: KindArg, inv: bool, ty: bool, ast: bool, src: &str) -> Result<(), Fail> {
    let kind = kind.kind();
    if ty {
        let a = parse_simple_type(src)?;
        let out = match kind {
            TranslationKind::Cbn => tra_cbn_type(&a),
            TranslationKind::Cbv => tra_cbv_type(&a),
            TranslationKind::Cbs => tra_cbs_type(&a),
            TranslationKind::Bang => {
                return Err(Fail("--ty is not supported for the bang embedding".into()))
            }
        };
        println!("{out}");
        return Ok(());
    }
    if inv {
        let t = parse_sharing(src)?;
        match inverse(&t, kind)? {
            InverseOutput::Lsc(u) => println!("{u}"),
            InverseOutput::Bang(u) => println!("{u}"),
        }
        return Ok(());
    }
    let out = match kind {
        TranslationKind::Bang => tra_bang(&parse_bang(src)?)?,
        TranslationKind::Cbn => tra_cbn(&parse_lsc(src)?),
        TranslationKind::Cbv => tra_cbv(&parse_lsc(src)?),
        TranslationKind::Cbs => tra_cbs(&parse_lsc(src)?),
    };
    if ast {
        print!("{}", out.ast_lines());
    } else {
        println!("{out}");
    }
    Ok(())
}

fn typecheck_cmd(lang: Lang, sequent: bool, src: &str) -> Result<(), Fail> {
    match lang {
        Lang::Lsc => {
            let t = parse_lsc(src)?;
            let (_, ty) = infer_lsc(&t).ok_or(Fail("term is not simply typable".into()))?;
            println!("{ty}");
        }
        Lang::Bang => {
            let t = parse_bang(src)?;
            let (_, ty) = infer_bang(&t).ok_or(Fail("term is not typable".into()))?;
            println!("{ty}");
        }
        Lang::Sharing => {
            let t = parse_sharing(src)?;
            let env = TypingEnv::default();
            let (ty, _) = typecheck_sharing(&env, &t)?;
            println!("{ty}");
            if sequent {
                let deriv = typing_derivation(&env, &t)?;
                let seq = compile_typing(&deriv)?;
                check_derivation(&seq)
                    .map_err(|es| Fail(format!("sequent derivation check failed: {es:?}")))?;
                print!("{}", seq.ast_lines());
            }
        }
    }
    Ok(())
}

fn report_out(r: &PropertyReport, json: bool) -> Result<(), Fail> {
    if json {
        println!(
            "{{\"property\":\"{}\",\"instances\":{},\"failures\":{},\"inconclusive\":{},\"ok\":{}}}",
            r.property,
            r.instances,
            r.failures.len(),
            r.inconclusive,
            r.ok()
        );
    } else {
        println!("{}", r.summary());
        for f in r.failures.iter().take(5) {
            println!("  counterexample: {} expected {} got {}", f.input, f.expected, f.actual);
        }
    }
    if r.ok() {
        Ok(())
    } else {
        Err(Fail(format!("property {} failed", r.property)))
    }
}

fn check_cmd(property: Property, size: usize, json: bool) -> Result<(), Fail> {
    use sharelam::syntax::lsc_term::pv;
    use sharelam::syntax::sharing_term::uv;
    let lsc_pool = [pv("x"), pv("y")];
    let sharing_pool = [uv("u"), uv("v")];
    let caps = Caps::default();
    match property {
        Property::Confluence => {
            let mut total = PropertyReport::new("confluence-mod-flattening");
            for n in 1..=size {
                stream_sharing(n, &sharing_pool, &mut |t| {
                    total.absorb(check_confluence_mod_flatten(&t, &caps));
                });
            }
            report_out(&total, json)
        }
        Property::SimulationCbn | Property::SimulationCbv | Property::SimulationCbs => {
            let kind = match property {
                Property::SimulationCbn => TranslationKind::Cbn,
                Property::SimulationCbv => TranslationKind::Cbv,
                _ => TranslationKind::Cbs,
            };
            let mut total = PropertyReport::new(format!("simulation-{kind}"));
            for n in 1..=size {
                stream_lsc(n, &lsc_pool, &mut |t| {
                    total.absorb(check_simulation(&t, kind, &caps));
                });
            }
            report_out(&total, json)
        }
        Property::Sn => {
            let mut total = PropertyReport::new("strong-normalization");
            for n in 1..=size {
                stream_sharing(n, &sharing_pool, &mut |t| {
                    if typecheck_sharing(&TypingEnv::default(), &t).is_ok() {
                        total.instances += 1;
                        if let SnResult::Timeout = check_sn(&t, 5_000) {
                            total.fail(&t, "termination within the step cap", "timeout");
                        }
                    }
                });
            }
            report_out(&total, json)
        }
        Property::Counts => {
            let mut total = PropertyReport::new("enumeration-counts");
            for n in 1..=size {
                let mut seen = 0u64;
                stream_lsc(n, &lsc_pool, &mut |_| seen += 1);
                total.instances += 1;
                let want = count_lsc(n, lsc_pool.len() as u64);
                if seen != want {
                    total.fail(format!("lsc size {n}"), want, seen);
                }
                let mut seen = 0u64;
                stream_sharing(n, &sharing_pool, &mut |_| seen += 1);
                total.instances += 1;
                let want = count_sharing(n, 0, sharing_pool.len() as u64);
                if seen != want {
                    total.fail(format!("sharing size {n}"), want, seen);
                }
            }
            report_out(&total, json)
        }
    }
}
