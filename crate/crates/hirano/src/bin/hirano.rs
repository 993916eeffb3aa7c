use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hirano::blockthm::{verify_conclusion, Profile, TheoremId};
use hirano::decomp::{idempotent_nilpotent, jordan_chevalley, tripotent_nilpotent, SplitPair};
use hirano::error::Error;
use hirano::format;
use hirano::gendrazin::{
    drazin_inverse, hirano_inverse, is_hirano_invertible, is_nilpotent,
    is_strongly_drazin_invertible, strongly_drazin_inverse,
};
use hirano::genfuzz::{necessity_probe, sweep, GenConfig};
use hirano::ratmat::Matrix;

#[derive(Parser)]
#[command(
    name = "hirano",
    about = "Exact generalized-inverse toolkit: Drazin, strongly Drazin and Hirano inverses, \
             commuting splittings, and block-matrix theorem checking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InverseKind {
    Drazin,
    Strong,
    Hirano,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeMode {
    Tripotent,
    Idempotent,
    Jc,
}

#[derive(Subcommand)]
enum Command {
    /// Report class membership (nilpotent / strongly Drazin / Hirano) of a matrix
    Check {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Compute a generalized inverse with a full certificate
    Invert {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum)]
        kind: InverseKind,
    },
    /// Split into a commuting structured + nilpotent pair
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum)]
        mode: DecomposeMode,
    },
    /// Check one theorem statement on a block instance
    Theorem {
        #[arg(long)]
        id: String,
        #[arg(long)]
        blocks: PathBuf,
        /// Check the statement exactly as printed (no repaired hypotheses)
        #[arg(long)]
        as_stated: bool,
    },
    /// Seeded soundness sweep or hypothesis-dropping probe
    Fuzz {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        entry_bound: i64,
        /// Violate this hypothesis instead of satisfying it
        #[arg(long)]
        drop: Option<String>,
        #[arg(long)]
        as_stated: bool,
        /// Where to write a counterexample block file, if one is found
        #[arg(long)]
        counterexample_out: Option<PathBuf>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Matrix(hirano::ratmat::MatrixError::BadRational(_))
        | Error::UnknownTheoremId(_)
        | Error::UnknownHypothesis { .. } => 2,
        Error::Matrix(_) | Error::ArityMismatch { .. } => 3,
        _ => 4,
    }
}

fn read_matrix(path: &PathBuf) -> Result<Matrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    format::parse_matrix_file(&text)
}

fn yes_no(exp: Option<usize>) -> String {
    match exp {
        Some(e) => format!("yes (exponent {e})"),
        None => "no".to_string(),
    }
}

fn cmd_check(matrix: &PathBuf) -> Result<(), Error> {
    let m = read_matrix(matrix)?;
    let nil = is_nilpotent(&m)?;
    let sd = is_strongly_drazin_invertible(&m)?;
    let hir = is_hirano_invertible(&m)?;
    println!("nilpotent: {}", yes_no(nil));
    println!("strongly-drazin: {}", yes_no(sd));
    println!("hirano: {}", yes_no(hir));
    if hir.is_some() {
        let (p, q, r, _) = m.char_poly()?.split_hirano_roots();
        println!("char_poly: x^{p} (x-1)^{q} (x+1)^{r}");
    }
    Ok(())
}

fn cmd_invert(matrix: &PathBuf, kind: InverseKind) -> Result<(), Error> {
    let m = read_matrix(matrix)?;
    let out = match kind {
        InverseKind::Drazin => {
            let dz = drazin_inverse(&m)?;
            json!({
                "kind": "drazin",
                "inverse": format::matrix_rows(&dz.dinv),
                "index": dz.index_k,
                "core_projection": format::matrix_rows(&dz.core_proj),
                "spectral_complement": format::matrix_rows(&dz.core_complement),
            })
        }
        InverseKind::Strong => {
            if is_strongly_drazin_invertible(&m)?.is_none() {
                let res = m.sub(&m.power(2)?)?;
                eprintln!(
                    "no strongly Drazin inverse: A - A^2 is not nilpotent; residual:\n{}",
                    format::render_matrix_file(&res)
                );
                return Err(Error::NotStronglyDrazin);
            }
            let cert = strongly_drazin_inverse(&m)?;
            json!({
                "kind": "strongly-drazin",
                "inverse": format::matrix_rows(&cert.z),
                "idempotent": format::matrix_rows(&cert.idem),
                "nilpart": format::matrix_rows(&cert.nilpart),
                "nil_exponent": cert.nil_exponent,
            })
        }
        InverseKind::Hirano => {
            if is_hirano_invertible(&m)?.is_none() {
                let res = m.sub(&m.power(3)?)?;
                eprintln!(
                    "no Hirano inverse: A - A^3 is not nilpotent; residual:\n{}",
                    format::render_matrix_file(&res)
                );
                return Err(Error::NotHirano);
            }
            let cert = hirano_inverse(&m)?;
            json!({
                "kind": "hirano",
                "inverse": format::matrix_rows(&cert.z),
                "tripotent": format::matrix_rows(&cert.tripotent),
                "nilpart": format::matrix_rows(&cert.nilpart),
                "nil_exponent": cert.nil_exponent,
            })
        }
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(())
}

fn cmd_decompose(matrix: &PathBuf, mode: DecomposeMode) -> Result<(), Error> {
    let m = read_matrix(matrix)?;
    let pair: SplitPair = match mode {
        DecomposeMode::Tripotent => tripotent_nilpotent(&m)?,
        DecomposeMode::Idempotent => idempotent_nilpotent(&m)?,
        DecomposeMode::Jc => jordan_chevalley(&m)?,
    };
    let out = json!({
        "structured_part": format::matrix_rows(&pair.structured_part),
        "nilpart": format::matrix_rows(&pair.nilpart),
        "nil_exponent": pair.nil_exponent,
        "newton_steps": pair.newton_steps,
    });
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(())
}

fn cmd_theorem(id: &str, blocks: &PathBuf, as_stated: bool) -> Result<(), Error> {
    let id: TheoremId = id.parse()?;
    let text = std::fs::read_to_string(blocks)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", blocks.display())))?;
    let inst = format::parse_block_file(id, &text)?;
    let profile = if as_stated { Profile::AsStated } else { Profile::Default };
    let report = verify_conclusion(id, &inst, profile)?;
    println!("{}", serde_json::to_string_pretty(&format::report_to_json(&report)).unwrap());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_fuzz(
    id: &str,
    trials: usize,
    size: usize,
    seed: u64,
    entry_bound: i64,
    drop: Option<&str>,
    as_stated: bool,
    counterexample_out: Option<&PathBuf>,
) -> Result<(), Error> {
    let id: TheoremId = id.parse()?;
    let cfg = GenConfig { seed, block_size: size, entry_bound, trials };
    let profile = if as_stated { Profile::AsStated } else { Profile::Default };
    let (summary, counterexample) = match drop {
        Some(h) => {
            let p = necessity_probe(id, h, &cfg, profile)?;
            let ce = p.counterexample.clone();
            (format::probe_to_json(&p, seed), ce)
        }
        None => {
            let s = sweep(id, &cfg, profile)?;
            let ce = s.first_counterexample.clone();
            (format::sweep_to_json(&s, seed), ce)
        }
    };
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    if let Some(ce) = counterexample {
        let path = counterexample_out.cloned().unwrap_or_else(|| {
            PathBuf::from(format!("{}_counterexample.json", id.name().to_lowercase()))
        });
        let payload = format::counterexample_to_json(id, seed, &ce);
        std::fs::write(&path, serde_json::to_string_pretty(&payload).unwrap())
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
        println!("counterexample written to {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { matrix } => cmd_check(matrix),
        Command::Invert { matrix, kind } => cmd_invert(matrix, *kind),
        Command::Decompose { matrix, mode } => cmd_decompose(matrix, *mode),
        Command::Theorem { id, blocks, as_stated } => cmd_theorem(id, blocks, *as_stated),
        Command::Fuzz {
            id,
            trials,
            size,
            seed,
            entry_bound,
            drop,
            as_stated,
            counterexample_out,
        } => cmd_fuzz(
            id,
            *trials,
            *size,
            *seed,
            *entry_bound,
            drop.as_deref(),
            *as_stated,
            counterexample_out.as_ref(),
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
