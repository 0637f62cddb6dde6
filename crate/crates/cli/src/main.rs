//! Command-line surface for the diagram calculus: evaluate cobordism
//! expressions, print linking matrices, run the check suites, and extract
//! Casson invariants.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 type error,
//! 3 invariant or check failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lmo_core::coblang::{self, evaluate, lk_only, parse, typecheck};
use lmo_core::cylinders::{casson_lambda, cyl_compose, morita_check, tau1};
use lmo_core::diagram::Color;
use lmo_core::error::LangError;
use lmo_core::generators::{
    builtin_degree2, chi_inv_z_id1_y_part, load_table, t1_y_part, t1_y_part_computed,
    GeneratorTable,
};
use lmo_core::notation::{matrix_to_string, series_to_string};
use lmo_core::pairing::{check_group_like_closure, gaussian_integrate, integrate_partial};
use lmo_core::sampling::Sampler;
use lmo_core::series::YSeries;
use lmo_core::tscat::{star, TsElement};

#[derive(Parser)]
#[command(
    name = "lmo",
    about = "Exact diagrammatic calculus for the LMO invariant of Lagrangian cobordisms",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Truncation bound on the internal degree.
    #[arg(short = 'd', long = "max-ideg", default_value_t = 2)]
    max_ideg: usize,
    /// Path to a generator table file; the built-in degree-2 table when absent.
    #[arg(long)]
    table: Option<std::path::PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, clap::ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, typecheck and evaluate an expression; print W and the Y-part.
    Eval {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the linking matrix of an expression (fast path).
    Lk {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named check suite.
    Check {
        /// One of: hopf, invert-t1, c-cross, casson, morita, closure,
        /// gaussian, star, all.
        suite: String,
        /// Number of randomized trials where applicable.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a closed expression and print its Casson invariant.
    Casson {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => err,
    }
}

fn load(common: &Common) -> Result<GeneratorTable, ExitCode> {
    match &common.table {
        None => Ok(builtin_degree2()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                eprintln!("error: cannot read table {}: {e}", path.display());
                ExitCode::from(1)
            })?;
            load_table(&text).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(3)
            })
        }
    }
}

fn lang_exit(e: &LangError) -> ExitCode {
    match e {
        LangError::Parse(_) => ExitCode::from(1),
        LangError::WordMismatch { .. } | LangError::TruncationTooLarge { .. } => ExitCode::from(2),
        _ => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Eval { expr, common } => {
            let table = load(&common)?;
            let element = eval_expr(&expr, &table, common.max_ideg)?;
            // Text output elides all-zero matrices; machine output always
            // carries the colors so that it parses back to the element.
            let w_text = if common.format == Format::Text && element.w().is_zero() {
                "[]".to_string()
            } else {
                matrix_to_string(element.w())
            };
            println!("W = {}; Y = {}", w_text, series_to_string(element.y_part()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Lk { expr, common } => {
            let table = load(&common)?;
            let parsed = parse(&expr).map_err(|e| {
                eprintln!("error: {e}");
                lang_exit(&e)
            })?;
            let typed = typecheck(&parsed).map_err(|e| {
                eprintln!("error: {e}");
                lang_exit(&e)
            })?;
            let w = lk_only(&typed, &table).map_err(|e| {
                eprintln!("error: {e}");
                lang_exit(&e)
            })?;
            println!("{}", matrix_to_string(&w));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            suite,
            trials,
            common,
        } => {
            let table = load(&common)?;
            let mut failures = 0usize;
            let mut lines = Vec::new();
            run_suites(&suite, trials, &common, &table, &mut lines, &mut failures).map_err(
                |msg| {
                    eprintln!("error: {msg}");
                    ExitCode::from(1)
                },
            )?;
            for line in &lines {
                println!("{line}");
            }
            if failures == 0 {
                println!("all checks passed");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{failures} check(s) failed");
                Ok(ExitCode::from(3))
            }
        }
        Command::Casson { expr, common } => {
            let table = load(&common)?;
            let element = eval_expr(&expr, &table, common.max_ideg.max(2))?;
            let lambda = casson_lambda(&element).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?;
            println!("{lambda}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn eval_expr(expr: &str, table: &GeneratorTable, max_ideg: usize) -> Result<TsElement, ExitCode> {
    let parsed = parse(expr).map_err(|e| {
        eprintln!("error: {e}");
        lang_exit(&e)
    })?;
    let typed = typecheck(&parsed).map_err(|e| {
        eprintln!("error: {e}");
        lang_exit(&e)
    })?;
    evaluate(&typed, table, max_ideg).map_err(|e| {
        eprintln!("error: {e}");
        lang_exit(&e)
    })
}

fn run_suites(
    suite: &str,
    trials: usize,
    common: &Common,
    table: &GeneratorTable,
    lines: &mut Vec<String>,
    failures: &mut usize,
) -> Result<(), String> {
    let all = suite == "all";
    let mut ran = false;
    let record = |name: &str, ok: bool, failures: &mut usize, lines: &mut Vec<String>| {
        lines.push(format!("{}  {}", if ok { "pass" } else { "FAIL" }, name));
        if !ok {
            *failures += 1;
        }
    };
    if all || suite == "hopf" {
        ran = true;
        for (lhs, rhs) in HOPF_RELATIONS {
            let l = coblang::eval_str(lhs, table, table.max_ideg).map_err(|e| e.to_string())?;
            let r = coblang::eval_str(rhs, table, table.max_ideg).map_err(|e| e.to_string())?;
            record(&format!("hopf: {lhs} = {rhs}"), l == r, failures, lines);
        }
    }
    if all || suite == "invert-t1" {
        ran = true;
        let computed = t1_y_part_computed().map_err(|e| e.to_string())?;
        record(
            "invert-t1: star inverse reproduces the normalizer",
            computed == t1_y_part(),
            failures,
            lines,
        );
        let product = star(&chi_inv_z_id1_y_part(), &computed, 1).map_err(|e| e.to_string())?;
        record(
            "invert-t1: product is the unit",
            product == YSeries::one(2),
            failures,
            lines,
        );
    }
    if all || suite == "c-cross" {
        ran = true;
        let ev =
            coblang::eval_str(C_EXPRESSION, table, table.max_ideg).map_err(|e| e.to_string())?;
        let stored = table
            .value_of(lmo_core::generators::GeneratorName::CoDuality)
            .map_err(|e| e.to_string())?;
        record(
            "c-cross: decomposition reproduces the stored row",
            ev == stored,
            failures,
            lines,
        );
    }
    if all || suite == "casson" {
        ran = true;
        let p = coblang::eval_str("Y o (v+ x v+ x v+)", table, table.max_ideg)
            .map_err(|e| e.to_string())?;
        let lambda = casson_lambda(&p).map_err(|e| e.to_string())?;
        let ok = lambda == lmo_core::rat(1, 1) || lambda == lmo_core::rat(-1, 1);
        record(
            &format!("casson: punctured Poincare sphere has lambda = {lambda}"),
            ok,
            failures,
            lines,
        );
    }
    if all || suite == "morita" {
        ran = true;
        let mut sampler = Sampler::new(common.seed);
        let mut ok = true;
        for _ in 0..trials {
            let genus = sampler.usize_in(1, 3);
            let m = sampler.cylinder(genus, 2, 2);
            let n = sampler.cylinder(genus, 2, 2);
            let (_, _, equal) = morita_check(&m, &n, table).map_err(|e| e.to_string())?;
            ok &= equal;
        }
        record(
            &format!("morita: composition formula on {trials} random pairs"),
            ok,
            failures,
            lines,
        );
    }
    if all || suite == "closure" {
        ran = true;
        let mut sampler = Sampler::new(common.seed);
        let s = [Color::free("s")];
        let palette = [Color::free("s"), Color::free("a"), Color::free("b")];
        let mut ok = true;
        for _ in 0..trials.min(25) {
            let e = sampler.group_like(3, &palette, 2, 3);
            let d = sampler.group_like(3, &palette, 2, 3);
            ok &= check_group_like_closure(&e, &d, &s).map_err(|e| e.to_string())?;
        }
        record(
            "closure: brackets of group-likes are group-like",
            ok,
            failures,
            lines,
        );
    }
    if all || suite == "gaussian" {
        ran = true;
        let mut sampler = Sampler::new(common.seed);
        let mut ok = true;
        for _ in 0..trials.min(25) {
            ok &= gaussian_iteration_trial(&mut sampler).map_err(|e| e.to_string())?;
        }
        record(
            "gaussian: iterated integration agrees with joint",
            ok,
            failures,
            lines,
        );
    }
    if all || suite == "star" {
        ran = true;
        let mut sampler = Sampler::new(common.seed);
        let mut ok = true;
        for _ in 0..trials.min(50) {
            let genus = sampler.usize_in(1, 2);
            let a = sampler.cylinder(genus, 2, 2);
            let b = sampler.cylinder(genus, 2, 2);
            let via_star = cyl_compose(&a, &b).map_err(|e| e.to_string())?;
            let via_compose =
                TsElement::compose(&a.to_ts(), &b.to_ts()).map_err(|e| e.to_string())?;
            ok &= via_star.to_ts() == via_compose;
            // tau1 additivity under composition
            let t_sum = tau1(&a)
                .and_then(|x| Ok((x, tau1(&b)?)))
                .and_then(|(x, y)| x.add(&y).map_err(Into::into))
                .map_err(|e: lmo_core::error::TsError| e.to_string())?;
            ok &= tau1(&via_star).map_err(|e| e.to_string())? == t_sum;
        }
        record(
            "star: cylinder composition matches the category, tau1 additive",
            ok,
            failures,
            lines,
        );
    }
    if !ran {
        return Err(format!(
            "unknown suite `{suite}`; expected hopf, invert-t1, c-cross, casson, morita, closure, gaussian, star or all"
        ));
    }
    Ok(())
}

fn gaussian_iteration_trial(sampler: &mut Sampler) -> Result<bool, lmo_core::error::PairingError> {
    use lmo_core::matrix::StrutMatrix;
    let s1 = Color::star(1);
    let s2 = Color::star(2);
    let colors = vec![s1.clone(), s2.clone()];
    // Resample until the matrix and the leading block are nondegenerate.
    let l = loop {
        let mut m = StrutMatrix::zero(colors.clone());
        m.set_sym(&s1, &s1, sampler.rational(3));
        m.set_sym(&s2, &s2, sampler.rational(3));
        if sampler.bool() {
            m.set_sym(&s1, &s2, sampler.rational(2));
        }
        use num_traits::Zero;
        if !m.det().is_zero()
            && !m
                .restrict(std::slice::from_ref(&s1))
                .unwrap()
                .det()
                .is_zero()
        {
            break m;
        }
    };
    let palette = [s1.clone(), s2.clone(), Color::free("x")];
    let p = sampler.primitive_series(2, &palette, 2, 4);
    if !p.is_substantial(&colors) {
        return Ok(true);
    }
    let joint = gaussian_integrate(&l, &p, &colors)?;
    let (schur, p1) = integrate_partial(&l, &p, &[s1])?;
    let iterated = gaussian_integrate(&schur, &p1, &[s2])?;
    Ok(joint == iterated)
}

const HOPF_RELATIONS: &[(&str, &str)] = &[
    ("mu o (mu x id[.])", "mu o (id[.] x mu) o Pinv[.,.,.]"),
    (
        "(delta x id[.]) o delta",
        "P[.,.,.] o (id[.] x delta) o delta",
    ),
    ("mu o (eta x id[.])", "id[.]"),
    ("mu o (id[.] x eta)", "id[.]"),
    ("(eps x id[.]) o delta", "id[.]"),
    ("(id[.] x eps) o delta", "id[.]"),
    ("mu o (s x id[.]) o delta", "eta o eps"),
    ("mu o (id[.] x s) o delta", "eta o eps"),
    ("psi o psi_inv", "id[(..)]"),
    ("psi_inv o psi", "id[(..)]"),
    ("s o s_inv", "id[.]"),
    ("s o v+", "v+"),
    ("s o v-", "v-"),
    ("Y o (eta x id[.] x id[.])", "eps x eps"),
    ("Y o (id[.] x eta x id[.])", "eps x eps"),
    ("Y o (id[.] x id[.] x eta)", "eps x eps"),
    ("Y o (c x id[.])", "eps"),
    ("Y o P[.,.,.] o (id[.] x c)", "eps"),
];

const C_EXPRESSION: &str =
    "(mu x mu) o Pinv[(..),.,.] o (P[.,.,.] x id[.]) o (id[.] x delta x id[.]) o (v- x v+ x v-)";
