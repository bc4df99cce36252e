use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dqb_core::comodules::{coinvariants, counit_epsilon_on, hhat, validate_bicomodule};
use dqb_core::dqb::DqbError;
use dqb_core::exactmath::rank;
use dqb_core::groups::{cyclic_cocycle, group_antipode_data, group_dqb, GroupData};
use dqb_core::preantipode::{
    check_antipode, check_preantipode, compute_tau, preantipode_from_antipode, solve_preantipode, PreantipodeError,
};
use dqb_core::serialization::{
    parse_antipode, parse_dqb, parse_module, parse_preantipode, serialize_antipode, serialize_dqb,
    serialize_preantipode, serialize_report, DocumentError, ReportFormat,
};
use dqb_core::{validate_dqb, DualQuasiBialgebra, HopfBicomodule, Matrix, Preantipode, Report};

const EXIT_PASS: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "dqb", version, about = "Exact checks for dual quasi-bialgebras and preantipodes")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    report: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every dual quasi-bialgebra axiom.
    Verify { dqb: PathBuf },
    /// Solve for all preantipodes.
    SolvePreantipode {
        dqb: PathBuf,
        /// Write the particular solution as a preantipode document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build S = β ∗ s ∗ α from antipode data.
    FromAntipode { dqb: PathBuf, antipode: PathBuf },
    /// Build τ, ψ and ε_M for a bicomodule and check that they are inverse.
    StructureTheorem {
        dqb: PathBuf,
        /// Module document; omit with --use-hhat.
        #[arg(required_unless_present = "use_hhat", conflicts_with = "use_hhat")]
        module: Option<PathBuf>,
        /// Use H ⊗̂ H.
        #[arg(long)]
        use_hhat: bool,
        /// Use this preantipode instead of solving for one.
        #[arg(long)]
        preantipode: Option<PathBuf>,
    },
    /// Write a twisted group algebra of ℤ/n and its antipode data.
    Gen {
        #[arg(long)]
        cyclic: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

/// An operational failure; the mathematical outcome is the `bool` in `Ok`.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.report {
        Format::Text => ReportFormat::Text,
        Format::JsonLines => ReportFormat::JsonLines,
    };
    let mut out = String::new();
    let result = run(cli.command, format, &mut out);
    print!("{out}");
    match result {
        Ok(true) => ExitCode::from(EXIT_PASS),
        Ok(false) => ExitCode::from(EXIT_NEGATIVE),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command, format: ReportFormat, out: &mut String) -> Result<bool, InputError> {
    match command {
        Command::Verify { dqb } => verify(&dqb, format, out),
        Command::SolvePreantipode { dqb, out: path } => solve(&dqb, path.as_deref(), format, out),
        Command::FromAntipode { dqb, antipode } => from_antipode(&dqb, &antipode, format, out),
        Command::StructureTheorem { dqb, module, use_hhat: _, preantipode } => {
            structure_theorem(&dqb, module.as_deref(), preantipode.as_deref(), format, out)
        }
        Command::Gen { cyclic, r, out: dir } => gen(cyclic, r, &dir, out),
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

enum Loaded {
    Ok(Box<DualQuasiBialgebra>),
    /// Parsed, but ω has no convolution inverse.
    Degenerate,
}

fn load(path: &Path) -> Result<Loaded, InputError> {
    match parse_dqb(&read(path)?) {
        Ok(h) => Ok(Loaded::Ok(Box::new(h))),
        Err(DocumentError::Structure(DqbError::OmegaNotInvertible)) => Ok(Loaded::Degenerate),
        Err(e) => Err(InputError(format!("{}: {e}", path.display()))),
    }
}

/// Loads a dual quasi-bialgebra that must satisfy every axiom.
fn load_valid(path: &Path) -> Result<DualQuasiBialgebra, InputError> {
    match load(path)? {
        Loaded::Ok(h) if validate_dqb(&h).passed() => Ok(*h),
        _ => Err(InputError(format!("{}: not a dual quasi-bialgebra (run verify)", path.display()))),
    }
}

fn verify(path: &Path, format: ReportFormat, out: &mut String) -> Result<bool, InputError> {
    let report = match load(path)? {
        Loaded::Ok(h) => validate_dqb(&h),
        Loaded::Degenerate => {
            let mut r = Report::new();
            r.condition("omega-invertible", false, "omega has no convolution inverse");
            r
        }
    };
    out.push_str(&serialize_report(&report, format));
    Ok(report.passed())
}

fn vector_string(v: &[dqb_core::Scalar]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| if c.is_one() { format!("e{j}") } else { format!("({c})*e{j}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn print_map(name: &str, s: &Matrix, out: &mut String) {
    for i in 0..s.cols() {
        let _ = writeln!(out, "{name}(e{i}) = {}", vector_string(&s.column(i)));
    }
}

fn solve(path: &Path, write_to: Option<&Path>, format: ReportFormat, out: &mut String) -> Result<bool, InputError> {
    let h = load_valid(path)?;
    let Some(solutions) = solve_preantipode(&h)? else {
        out.push_str("none\n");
        return Ok(false);
    };
    print_map("S", &solutions.particular, out);
    let _ = writeln!(out, "kernel dimension: {}", solutions.kernel.len());
    if let Some(target) = write_to {
        fs::write(target, serialize_preantipode(&h, &solutions.particular))
            .map_err(|e| InputError(format!("{}: {e}", target.display())))?;
    }
    let report = check_preantipode(&h, &solutions.particular)?;
    out.push_str(&serialize_report(&report, format));
    Ok(report.passed())
}

fn from_antipode(dqb: &Path, antipode: &Path, format: ReportFormat, out: &mut String) -> Result<bool, InputError> {
    let h = load_valid(dqb)?;
    let data = parse_antipode(&read(antipode)?, &h).map_err(|e| InputError(format!("{}: {e}", antipode.display())))?;
    let report = check_antipode(&h, &data)?;
    if !report.passed() {
        out.push_str(&serialize_report(&report, format));
        return Ok(false);
    }
    match preantipode_from_antipode(&h, &data) {
        Ok(s) => {
            print_map("S", &s.s, out);
            let mut report = report;
            report.extend(check_preantipode(&h, &s.s)?);
            out.push_str(&serialize_report(&report, format));
            Ok(report.passed())
        }
        Err(PreantipodeError::NotAPreantipode(r)) => {
            out.push_str("internal inconsistency: beta * s * alpha is not a preantipode\n");
            out.push_str(&serialize_report(&r, format));
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

fn structure_theorem(
    dqb: &Path,
    module: Option<&Path>,
    preantipode: Option<&Path>,
    format: ReportFormat,
    out: &mut String,
) -> Result<bool, InputError> {
    let h = load_valid(dqb)?;
    let m: HopfBicomodule = match module {
        Some(path) => parse_module(&read(path)?, &h).map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => hhat(&h),
    };
    let module_report = validate_bicomodule(&h, &m);
    if !module_report.passed() {
        out.push_str(&serialize_report(&module_report.prefixed("module/"), format));
        return Ok(false);
    }
    let s = match preantipode {
        Some(path) => parse_preantipode(&read(path)?, &h).map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => match solve_preantipode(&h)? {
            Some(solutions) => Preantipode { s: solutions.particular },
            None => {
                out.push_str("no preantipode\n");
                return Ok(false);
            }
        },
    };
    let sub = coinvariants(&h, &m);
    let eps = counit_epsilon_on(&h, &m, sub.clone());
    let _ = writeln!(out, "coinvariant dimension: {}", sub.dim());
    let _ = writeln!(out, "epsilon bijective: {}", if eps.is_bijective() { "yes" } else { "no" });
    let mut report = check_preantipode(&h, &s.s)?.prefixed("preantipode/");
    report.condition("epsilon-bijective", eps.is_bijective(), format!("{}x{} matrix of rank {}", eps.matrix.rows(), eps.matrix.cols(), rank(&eps.matrix)));
    match compute_tau(&h, &s, &m) {
        Ok(tau) => report.extend(tau.report),
        Err(PreantipodeError::TauFailed(r)) => report.extend(r),
        Err(e) => return Err(e.into()),
    }
    out.push_str(&serialize_report(&report, format));
    Ok(report.passed())
}

fn gen(n: u32, r: u32, dir: &Path, out: &mut String) -> Result<bool, InputError> {
    let theta = cyclic_cocycle(n, r)?;
    let group = GroupData::cyclic(n as usize);
    let h = group_dqb(&group, &theta)?;
    let data = group_antipode_data(&group, &theta)?;
    fs::create_dir_all(dir).map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
    for (suffix, text) in [("dqb", serialize_dqb(&h)), ("antipode", serialize_antipode(&h, &data))] {
        let path = dir.join(format!("z{n}_r{r}.{suffix}.json"));
        fs::write(&path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(true)
}
