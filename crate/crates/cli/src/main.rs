//! `johnson`: Johnson homomorphisms and Casson-core numbers of products of
//! bounding-curve Dehn twists.
//!
//! Exit status: 0 on success, 1 when a mathematical check fails, 2 on usage,
//! parse or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use johnson_core::casson::casson_report;
use johnson_core::expansion::default_expansion;
use johnson_core::johnson::{tau2, tau3, TwistList};
use johnson_core::psi::{self, load_psi};
use johnson_core::twist_file::{parse_twist_file, write_twist_file};
use johnson_core::verify::{verify_psi, with_coefficient};
use johnson_core::Error;

#[derive(Parser)]
#[command(name = "johnson", version, about)]
struct Cli {
    /// Surface genus.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..))]
    genus: u16,

    /// Truncation degree of the tensor algebra.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u16).range(2..=12))]
    degree: u16,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the symplectic defect of the default expansion.
    CheckExpansion,
    /// Print tau_2 or tau_3 of a twist list in canonical form.
    Tau {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        level: u8,
        #[arg(long)]
        file: PathBuf,
        /// Print the degree-5 sum even when tau_2 does not vanish.
        #[arg(long = "unsafe")]
        unsafe_sum: bool,
    },
    /// Reproduce every computation on the embedded element psi.
    VerifyPsi {
        /// Change the exponent of s1 from 7 to 6 before checking.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Print d, d', the twist counts and lambda of a twist list.
    Casson {
        #[arg(long)]
        file: PathBuf,
    },
    /// Write the psi twist list to a file.
    ExportPsi {
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Mismatch(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CertificateFailed(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let genus = usize::from(cli.genus);
    let degree = usize::from(cli.degree);
    match &cli.command {
        Command::CheckExpansion => check_expansion(genus, degree),
        Command::Tau {
            level,
            file,
            unsafe_sum,
        } => tau(genus, degree, *level, file, *unsafe_sum),
        Command::VerifyPsi { corrupt } => verify(*corrupt),
        Command::Casson { file } => casson(genus, file),
        Command::ExportPsi { out } => export(out),
    }
}

fn check_expansion(genus: usize, degree: usize) -> Result<(), Failure> {
    let exp = default_expansion(genus, degree)?;
    let defect = exp.symplectic_defect()?;
    for (k, t) in &defect {
        println!("degree {k}: {t}");
    }
    if let Some((k, _)) = defect.iter().find(|(k, _)| *k <= 3) {
        return Err(Failure::Mismatch(format!("not symplectic in degree {k}")));
    }
    println!("symplectic through degree 3");
    Ok(())
}

fn read_twists(path: &Path, genus: usize) -> Result<TwistList, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let twists = parse_twist_file(&text, genus)?;
    twists.validate(genus)?;
    Ok(twists)
}

fn tau(
    genus: usize,
    degree: usize,
    level: u8,
    file: &Path,
    unsafe_sum: bool,
) -> Result<(), Failure> {
    let need = usize::from(level) + 2;
    if degree < need {
        return Err(Failure::Input(format!(
            "tau_{level} needs --degree at least {need}"
        )));
    }
    let twists = read_twists(file, genus)?;
    let exp = default_expansion(genus, need)?;
    let t2 = tau2(&exp, &twists)?;
    if level == 2 {
        println!("{t2}");
        return Ok(());
    }
    if !t2.is_zero() {
        if !unsafe_sum {
            return Err(Error::CertificateFailed(Box::new(t2)).into());
        }
        eprintln!("warning: tau_2 is nonzero; the output is the L_5 sum, not tau_3");
    }
    println!("{}", tau3(&exp, &twists)?);
    Ok(())
}

fn verify(corrupt: bool) -> Result<(), Failure> {
    let mut data = load_psi();
    if corrupt {
        data = with_coefficient(&data, 14, 6)?;
    }
    let checks = verify_psi(&data);
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(Failure::Mismatch(format!(
            "{failed} of {} checks failed",
            checks.len()
        )));
    }
    println!("all {} checks passed", checks.len());
    Ok(())
}

fn casson(genus: usize, file: &Path) -> Result<(), Failure> {
    let twists = read_twists(file, genus)?;
    let exp = default_expansion(genus, 4)?;
    print!("{}", casson_report(&exp, &twists)?);
    Ok(())
}

fn export(out: &Path) -> Result<(), Failure> {
    let genus_line = format!("genus {}", psi::GENUS);
    let text = write_twist_file(
        &load_psi().twists,
        &[
            "psi: a product of bounding-curve twists in J_3 with lambda = 1",
            &genus_line,
            "coeff genus barcode",
        ],
    );
    fs::write(out, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", out.display())))
}
