//! Command-line front end for the exact 3-manifold invariant library.
//!
//! Exit codes: 0 success, 2 invalid input, 3 computation refused because a
//! size bound was exceeded.  Bounds can be widened per run through the
//! environment variables TAU4_ENUM_BOUND (sublink and enhancement
//! enumeration), TAU4_CROSSING_BOUND (skein recursion), and
//! TAU4_COUNT_BOUND (GF(2) assignment counting).

mod input;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use input::SurgeryInput;
use report::VerifyBlock;
use std::process::ExitCode;
use tau4::conway::{self, DEFAULT_CROSSING_BOUND};
use tau4::enhanced::DEFAULT_ENUM_BOUND;
use tau4::invariants;
use tau4::reduction::{self, DEFAULT_COUNT_BOUND};
use tau4::surgery::{self, Tau4Result, DEFAULT_COMPONENT_BOUND};

pub struct CliError {
    pub msg: String,
    pub code: u8,
}

impl CliError {
    pub fn validation(msg: String) -> Self {
        CliError { msg, code: 2 }
    }
}

impl From<tau4::Error> for CliError {
    fn from(e: tau4::Error) -> Self {
        CliError {
            code: if e.is_size_bound() { 3 } else { 2 },
            msg: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exponential,
    SpinSum,
    Product,
    Model,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    CubicSystem,
    QuadSystem,
    Single,
}

#[derive(Parser)]
#[command(name = "tau4", version, about = "Exact invariants of links and surgery 3-manifolds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a Z4-enhanced inner product space over GF(2).
    EnhancedClassify { file: String },
    /// Brown invariant of an enhanced space.
    EnhancedBrown { file: String },
    /// Conway polynomial of a link diagram.
    LinkConway { file: String },
    /// Arf invariant of a proper link diagram.
    LinkArf { file: String },
    /// Brown invariant of a proper link diagram.
    LinkBrown { file: String },
    /// tau4 of the 3-manifold obtained by surgery on a framed link.
    SurgeryTau4 {
        file: String,
        /// Evaluation engine.
        #[arg(long, value_enum, default_value = "exponential")]
        method: Method,
        /// Also run the two independent sublink engines and require agreement.
        #[arg(long)]
        cross_check: bool,
    },
    /// mu invariants of the characteristic sublinks of a framed link.
    SurgeryMu { file: String },
    /// Reduce a 3-CNF in DIMACS form through the polynomial counting stages.
    Reduce {
        file: String,
        /// Which stage of the reduction to emit.
        #[arg(long, value_enum, default_value = "single")]
        emit: Emit,
        /// Check the counting identity against brute-force model counting.
        #[arg(long)]
        verify: bool,
    },
    /// Count satisfying assignments of a 3-CNF in DIMACS form.
    Count { file: String },
    /// tau4 of the surgery manifold attached to a cubic form over GF(2).
    CubicTau4 { file: String },
}

fn env_bound(name: &str, default: usize) -> Result<usize, CliError> {
    match std::env::var(name) {
        Ok(s) => s.trim().parse::<usize>().map_err(|_| {
            CliError::validation(format!("{} = {:?} is not a nonnegative integer", name, s))
        }),
        Err(std::env::VarError::NotPresent) => Ok(default),
        Err(e) => Err(CliError::validation(format!("{}: {}", name, e))),
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::validation(format!("reading stdin: {}", e)))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("reading {}: {}", path, e)))
    }
}

fn surgery_tau4(
    text: &str,
    method: Method,
    cross_check: bool,
    format: Format,
) -> Result<String, CliError> {
    let comp_bound = env_bound("TAU4_ENUM_BOUND", DEFAULT_COMPONENT_BOUND)?;
    let crossing_bound = env_bound("TAU4_CROSSING_BOUND", DEFAULT_CROSSING_BOUND)?;
    let parsed = input::parse_surgery(text)?;
    let link = match &parsed {
        SurgeryInput::Link(l) => Some(l),
        _ => None,
    };
    let primary: Tau4Result = match method {
        Method::Exponential => {
            let l = link.ok_or_else(|| {
                CliError::validation("method exponential needs a link diagram".into())
            })?;
            surgery::tau4_exponential_bounded(l, comp_bound, crossing_bound)?
        }
        Method::SpinSum => {
            let l = link.ok_or_else(|| {
                CliError::validation("method spin-sum needs a link diagram".into())
            })?;
            surgery::tau4_spin_sum_bounded(l, comp_bound, crossing_bound)?
        }
        Method::Product => {
            let lam = match &parsed {
                SurgeryInput::Matrix(m) => m.clone(),
                SurgeryInput::Link(l) => l.linking_matrix()?,
                SurgeryInput::Model(m) => m.lk_matrix().clone(),
            };
            if lam.n() > comp_bound {
                return Err(tau4::Error::BoundExceeded {
                    what: "component count",
                    value: lam.n(),
                    bound: comp_bound,
                }
                .into());
            }
            surgery::tau4_diagonalize_and_product(&lam)
        }
        Method::Model => {
            let model = match &parsed {
                SurgeryInput::Model(m) => m.clone(),
                SurgeryInput::Link(l) => {
                    invariants::model_from_diagram_bounded(l, crossing_bound)?
                }
                SurgeryInput::Matrix(_) => {
                    return Err(CliError::validation(
                        "method model needs a link diagram or an invariant model".into(),
                    ))
                }
            };
            surgery::tau4_of_model_bounded(&model, comp_bound)?
        }
    };
    let cross = if cross_check {
        let l = link.ok_or_else(|| {
            CliError::validation("--cross-check needs a link diagram".into())
        })?;
        let e = surgery::tau4_exponential_bounded(l, comp_bound, crossing_bound)?;
        let s = surgery::tau4_spin_sum_bounded(l, comp_bound, crossing_bound)?;
        if e.value != s.value {
            return Err(CliError::validation(
                "cross-check failed: the sublink and spin structure sums disagree".into(),
            ));
        }
        Some((e, s))
    } else {
        None
    };
    report::tau4_report(&primary, cross.as_ref().map(|(e, s)| (e, s)), format)
}

fn surgery_mu(text: &str, format: Format) -> Result<String, CliError> {
    let comp_bound = env_bound("TAU4_ENUM_BOUND", DEFAULT_COMPONENT_BOUND)?;
    let crossing_bound = env_bound("TAU4_CROSSING_BOUND", DEFAULT_CROSSING_BOUND)?;
    let link = input::parse_link(text)?;
    let lam = link.linking_matrix()?;
    let subs = surgery::characteristic_sublinks_bounded(&lam, comp_bound)?;
    let mut rows: Vec<(Vec<usize>, u8)> = Vec::with_capacity(subs.len());
    for s in &subs {
        let mu = invariants::mu_invariant_bounded(&link, s, crossing_bound)?;
        rows.push((s.support().iter().map(|&i| i + 1).collect(), mu));
    }
    rows.sort();
    Ok(report::mu_report(&rows, format))
}

fn reduce(text: &str, emit: Emit, verify: bool, format: Format) -> Result<String, CliError> {
    let count_bound = env_bound("TAU4_COUNT_BOUND", DEFAULT_COUNT_BOUND)?;
    let cnf = input::parse_cnf(text)?;
    let cubics = reduction::cnf_to_cubic_system(&cnf);
    let block = if verify {
        let quads = reduction::to_quad_system(cnf.nvars(), &cubics)?;
        let single = reduction::to_single_cubic(&quads)?;
        let models = reduction::count_models_bounded(&cnf, count_bound)?;
        let zeros = reduction::count_zeros_bounded(&single, count_bound)?;
        let (m, k) = (quads.m(), quads.polys().len());
        // Doubled form of the identity, safe for k = 0 as well:
        // 2 zeros = 2^(m+k) + 2^k models.
        let holds =
            2 * u128::from(zeros) == (1u128 << (m + k)) + (u128::from(models) << k);
        Some(VerifyBlock { m, k, models, zeros, holds })
    } else {
        None
    };
    Ok(match emit {
        Emit::CubicSystem => {
            report::polys_report(cnf.nvars(), &cubics, block.as_ref(), format)
        }
        Emit::QuadSystem => {
            let quads = reduction::to_quad_system(cnf.nvars(), &cubics)?;
            report::polys_report(quads.m(), quads.polys(), block.as_ref(), format)
        }
        Emit::Single => {
            let quads = reduction::to_quad_system(cnf.nvars(), &cubics)?;
            let single = reduction::to_single_cubic(&quads)?;
            report::cubic_report(&single, block.as_ref(), format)
        }
    })
}

fn run(cli: Cli) -> Result<String, CliError> {
    let format = cli.format;
    match cli.command {
        Command::EnhancedClassify { file } => {
            let bound = env_bound("TAU4_ENUM_BOUND", DEFAULT_ENUM_BOUND)?;
            let space = input::parse_space(&read_input(&file)?)?;
            let tuple = space.class_tuple_bounded(bound)?;
            let nf = space.normal_form_bounded(bound)?;
            Ok(report::classify_report(&tuple, &nf, format))
        }
        Command::EnhancedBrown { file } => {
            let bound = env_bound("TAU4_ENUM_BOUND", DEFAULT_ENUM_BOUND)?;
            let space = input::parse_space(&read_input(&file)?)?;
            Ok(report::brown_report(space.brown_bounded(bound)?, format))
        }
        Command::LinkConway { file } => {
            let bound = env_bound("TAU4_CROSSING_BOUND", DEFAULT_CROSSING_BOUND)?;
            let link = input::parse_link(&read_input(&file)?)?;
            Ok(report::conway_report(&conway::conway_bounded(&link, bound)?, format))
        }
        Command::LinkArf { file } => {
            let bound = env_bound("TAU4_CROSSING_BOUND", DEFAULT_CROSSING_BOUND)?;
            let link = input::parse_link(&read_input(&file)?)?;
            Ok(report::arf_report(
                invariants::arf_hoste_murakami_bounded(&link, bound)?,
                format,
            ))
        }
        Command::LinkBrown { file } => {
            let bound = env_bound("TAU4_CROSSING_BOUND", DEFAULT_CROSSING_BOUND)?;
            let link = input::parse_link(&read_input(&file)?)?;
            let b = invariants::brown_of_proper_link_bounded(&link, bound)?;
            Ok(report::brown_report(tau4::enhanced::BrownValue::Finite(b), format))
        }
        Command::SurgeryTau4 { file, method, cross_check } => {
            surgery_tau4(&read_input(&file)?, method, cross_check, format)
        }
        Command::SurgeryMu { file } => surgery_mu(&read_input(&file)?, format),
        Command::Reduce { file, emit, verify } => {
            reduce(&read_input(&file)?, emit, verify, format)
        }
        Command::Count { file } => {
            let bound = env_bound("TAU4_COUNT_BOUND", DEFAULT_COUNT_BOUND)?;
            let cnf = input::parse_cnf(&read_input(&file)?)?;
            Ok(report::count_report(
                reduction::count_models_bounded(&cnf, bound)?,
                format,
            ))
        }
        Command::CubicTau4 { file } => {
            let bound = env_bound("TAU4_COUNT_BOUND", DEFAULT_COUNT_BOUND)?;
            let cubic = input::parse_cubic(&read_input(&file)?)?;
            report::tau4_report(
                &reduction::tau4_of_cubic_bounded(&cubic, bound)?,
                None,
                format,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
