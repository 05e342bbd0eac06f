//! Command-line entry point: ingest model files, run named verification
//! suites, and emit structured reports or plot data.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ejalab::composite::{marginals_conditionals, maximal_tensor, pr_box, validate_joint};
use ejalab::jordan::FamilySpec;
use ejalab::modelfile::{load_model, LoadedModel};
use ejalab::report::{CheckResult, VerificationReport};
use ejalab::suites::{
    acceptance_report, ball_samples_csv, run_suite, validate_finite_model, SuiteConfig,
    SuiteError,
};
use ejalab::testspace::FiniteModel;
use ejalab::tol;
use ejalab::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Markdown,
    Json,
}

#[derive(Parser)]
#[command(
    name = "ejalab",
    version,
    about = "Verification workbench for finite-dimensional probabilistic models and euclidean Jordan algebras"
)]
struct Cli {
    /// Seed for every sampled check (EJALAB_SEED is the fallback).
    #[arg(long, env = "EJALAB_SEED", default_value_t = 0, global = true)]
    seed: u64,

    /// Random samples per sampled check.
    #[arg(long, default_value_t = 1000, global = true)]
    samples: usize,

    /// Tolerance for algebraic identities.
    #[arg(long = "tol-alg", default_value_t = tol::ALGEBRAIC, global = true)]
    tol_alg: f64,

    /// Eigenvalue-merge tolerance.
    #[arg(long = "tol-eig", default_value_t = tol::EIGEN_MERGE, global = true)]
    tol_eig: f64,

    /// LP feasibility tolerance.
    #[arg(long = "tol-lp", default_value_t = tol::LP, global = true)]
    tol_lp: f64,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Markdown, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a model file and summarize its structure.
    Validate { file: PathBuf },

    /// Run a named suite: lemma1 | theorem2 | snake | bitball | appendixB | report.
    Suite {
        name: String,
        /// Restrict to one algebra family (classical|realherm|complexherm|quatherm|spin).
        #[arg(long, requires = "size")]
        family: Option<String>,
        /// Size parameter for --family.
        #[arg(long)]
        size: Option<usize>,
    },

    /// Print the non-signaling box table and verify it.
    Prbox,

    /// Build the maximal tensor product of two finite models.
    Maxtensor { file_a: PathBuf, file_b: PathBuf },

    /// Run the full acceptance battery.
    Report,

    /// Emit sampled rank-2 state-space coordinates as CSV.
    BallSamples {
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = SuiteConfig {
        seed: cli.seed,
        samples: cli.samples,
        tols: Tolerances {
            algebraic: cli.tol_alg,
            eigen_merge: cli.tol_eig,
            lp: cli.tol_lp,
        },
    };

    let code = match &cli.command {
        Command::Validate { file } => cmd_validate(file, &cfg, cli.format),
        Command::Suite { name, family, size } => {
            cmd_suite(name, family.as_deref(), *size, &cfg, cli.format)
        }
        Command::Prbox => cmd_prbox(&cfg, cli.format),
        Command::Maxtensor { file_a, file_b } => cmd_maxtensor(file_a, file_b, &cfg, cli.format),
        Command::Report => {
            let start = std::time::Instant::now();
            let mut report = acceptance_report(&cfg);
            report.wall = start.elapsed();
            emit(&report, cli.format)
        }
        Command::BallSamples {
            family,
            size,
            count,
            out,
        } => cmd_ball_samples(family, *size, *count, out, &cfg),
    };
    ExitCode::from(code)
}

fn emit(report: &VerificationReport, format: Format) -> u8 {
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Markdown => print!("{}", report.to_markdown()),
    }
    if report.all_passed() {
        0
    } else {
        1
    }
}

fn parse_family(name: &str) -> Result<FamilySpec, String> {
    FamilySpec::parse(name).ok_or_else(|| {
        format!("unknown family `{name}` (expected classical|realherm|complexherm|quatherm|spin)")
    })
}

fn usage_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    2
}

fn cmd_validate(file: &PathBuf, cfg: &SuiteConfig, format: Format) -> u8 {
    let loaded = match load_model(file) {
        Ok(l) => l,
        Err(e) => return usage_error(e),
    };
    let checks: Vec<CheckResult> = match loaded {
        LoadedModel::Finite { model, group } => {
            let mut checks = validate_finite_model(&model, &cfg.tols);
            if let Some(g) = group {
                checks.push(
                    CheckResult::new("validate.group", "symmetry group").with_detail(format!(
                        "order {}, transitive: {}",
                        g.order(),
                        g.is_transitive(model.space().n_outcomes())
                    )),
                );
            }
            checks
        }
        LoadedModel::Jordan(j) => {
            let scoped = SuiteConfig {
                samples: cfg.samples.min(200),
                ..*cfg
            };
            let mut checks = ejalab::suites::criterion01_jordan_axioms(&scoped)
                .into_iter()
                .filter(|c| c.name.ends_with(&format!(".{}", j.label())))
                .collect::<Vec<_>>();
            checks.push(
                CheckResult::new("validate.algebra", "algebra summary").with_detail(format!(
                    "{}: dim {}, rank {} (every Jordan model is sharp)",
                    j.label(),
                    j.dim(),
                    j.rank()
                )),
            );
            checks
        }
    };
    let report = VerificationReport::new("validate", cfg.seed, checks);
    emit(&report, format)
}

fn cmd_suite(
    name: &str,
    family: Option<&str>,
    size: Option<usize>,
    cfg: &SuiteConfig,
    format: Format,
) -> u8 {
    let algebra = match (family, size) {
        (Some(f), Some(s)) => match parse_family(f) {
            Ok(fam) => Some((fam, s)),
            Err(e) => return usage_error(e),
        },
        _ => None,
    };
    match run_suite(name, algebra, cfg) {
        Ok(report) => emit(&report, format),
        Err(SuiteError::UnknownSuite(s)) => usage_error(format!("unknown suite `{s}`")),
        Err(e) => usage_error(e),
    }
}

fn cmd_prbox(cfg: &SuiteConfig, format: Format) -> u8 {
    let omega = pr_box();
    if format == Format::Markdown {
        let labels = omega.a_space.outcomes();
        println!("non-signaling box on two square bits (tests {{x,y}} and {{a,b}}):\n");
        print!("      ");
        for l in labels {
            print!("{l:>6}");
        }
        println!();
        for (r, l) in labels.iter().enumerate() {
            print!("{l:>6}");
            for c in 0..labels.len() {
                print!("{:>6}", format!("{:.1}", omega.table[(r, c)]));
            }
            println!();
        }
        println!();
        let model = FiniteModel::full(omega.a_space.clone()).expect("square bit");
        let diag = validate_joint(&model, &model, &omega, 1e-12);
        let mc = marginals_conditionals(&omega, 1e-12);
        println!(
            "non-signaling: {}; marginals uniform: {}",
            diag.ok(),
            mc.map(|m| m
                .omega1
                .iter()
                .chain(m.omega2.iter())
                .all(|v| (v - 0.5).abs() < 1e-12))
                .unwrap_or(false)
        );
        println!();
    }
    let checks = ejalab::suites::criterion10_pr_box(cfg);
    let report = VerificationReport::new("prbox", cfg.seed, checks);
    emit(&report, format)
}

fn cmd_maxtensor(file_a: &PathBuf, file_b: &PathBuf, cfg: &SuiteConfig, format: Format) -> u8 {
    let load_finite = |p: &PathBuf| -> Result<FiniteModel, String> {
        match load_model(p) {
            Ok(LoadedModel::Finite { model, .. }) => Ok(model),
            Ok(LoadedModel::Jordan(_)) => Err(format!(
                "{}: maxtensor needs finite models, not an algebra",
                p.display()
            )),
            Err(e) => Err(e.to_string()),
        }
    };
    let a = match load_finite(file_a) {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    let b = match load_finite(file_b) {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    let composite = match maximal_tensor(&a, &b) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let mut checks = Vec::new();
    checks.push(
        CheckResult::new("maxtensor.vertices", "joint-state polytope").with_detail(format!(
            "{} extreme joint states over {} product outcomes",
            composite.composite.vertices().len(),
            composite.composite.space().n_outcomes()
        )),
    );
    checks.push(
        CheckResult::new(
            "maxtensor.unit",
            "pairing sums to the order unit on every test pair",
        )
        .with_residual(composite.unit_condition_residual(), 1e-9),
    );
    let mut all_valid = true;
    for v in composite.composite.vertices() {
        let omega = composite.joint_state_of(v);
        all_valid &= validate_joint(&a, &b, &omega, 1e-9).ok();
    }
    checks.push(
        CheckResult::new(
            "maxtensor.states",
            "every extreme state pulls back to a joint state",
        )
        .with_flag(all_valid),
    );
    let report = VerificationReport::new("maxtensor", cfg.seed, checks);
    emit(&report, format)
}

fn cmd_ball_samples(
    family: &str,
    size: usize,
    count: usize,
    out: &PathBuf,
    cfg: &SuiteConfig,
) -> u8 {
    let fam = match parse_family(family) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    match ball_samples_csv(fam, size, count, cfg.seed) {
        Ok(csv) => {
            if let Err(e) = std::fs::write(out, csv) {
                return usage_error(format!("cannot write {}: {e}", out.display()));
            }
            eprintln!("wrote {count} samples to {}", out.display());
            0
        }
        Err(e) => usage_error(e),
    }
}
