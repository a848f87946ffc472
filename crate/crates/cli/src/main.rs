//! `toric-koszul analyze | corpus | verify`.
//!
//! Exit codes: 0 consistent, 1 mathematical inconsistency (or a report
//! that fails verification), 2 input error, 3 resource cap.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_koszul::pipeline::{
    analyze_file, corpus_run, render_summary, summarize, verify_report, AnalysisReport, FieldChoice, Options,
};
use toric_koszul::Error;

#[derive(Parser)]
#[command(name = "toric-koszul", version, about = "Regularity and Koszul certificates for lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one polytope file and print its JSON report.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        flags: Flags,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze every *.json file of a directory.
    Corpus {
        dir: PathBuf,
        #[command(flatten)]
        flags: Flags,
        /// Write per-item reports and summary.json here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Re-check a stored report without re-running the engines.
    Verify { report: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Fp,
    Q,
}

#[derive(Args)]
struct Flags {
    /// Homological cutoff D of the Koszul certificate.
    #[arg(long = "cutoff-D", default_value_t = 4)]
    cutoff_d: usize,
    #[arg(long, value_enum, default_value = "fp")]
    field: FieldArg,
    /// Seed of the random monomial orders in the quadratic Gröbner search.
    #[arg(long, default_value_t = 0)]
    gb_seed: u64,
    /// Check normal generation up to this multiple (default 2n).
    #[arg(long)]
    ng_bound: Option<u64>,
    /// Store the resolution differentials in the report.
    #[arg(long)]
    emit_differentials: bool,
    /// Record stage durations (makes reports run-dependent).
    #[arg(long)]
    timings: bool,
}

impl Flags {
    fn options(&self) -> Options {
        Options {
            cutoff_d: self.cutoff_d,
            field: match self.field {
                FieldArg::Fp => FieldChoice::Fp,
                FieldArg::Q => FieldChoice::Q,
            },
            gb_seed: self.gb_seed,
            ng_bound: self.ng_bound,
            emit_differentials: self.emit_differentials,
            timings: self.timings,
            ..Options::default()
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Internal { .. } | Error::Overflow(_) => 1,
        Error::ResourceCap(_) => 3,
        _ => 2,
    }
}

fn write_json(path: Option<&Path>, v: &impl serde::Serialize) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).map_err(|e| e.to_string())? + "\n";
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    match cli.command {
        Command::Analyze { file, flags, out } => {
            let report = analyze_file(&file, &flags.options()).map_err(|e| (error_code(&e), e.to_string()))?;
            write_json(out.as_deref(), &report).map_err(|e| (2, e))?;
            for msg in &report.inconsistencies {
                eprintln!("INCONSISTENT: {msg}");
            }
            Ok(if report.consistent { 0 } else { 1 })
        }
        Command::Corpus { dir, flags, out_dir } => {
            let items = corpus_run(&dir, &flags.options()).map_err(|e| (2, format!("{}: {e}", dir.display())))?;
            let summary = summarize(&items);
            if let Some(d) = &out_dir {
                std::fs::create_dir_all(d).map_err(|e| (2, format!("{}: {e}", d.display())))?;
                for it in &items {
                    if let Ok(r) = &it.outcome {
                        let name = it.file.file_name().expect("file name");
                        write_json(Some(&d.join(name)), r).map_err(|e| (2, e))?;
                    }
                }
                write_json(Some(&d.join("summary.json")), &summary).map_err(|e| (2, e))?;
            }
            print!("{}", render_summary(&summary));
            println!();
            write_json(None, &summary).map_err(|e| (2, e))?;
            let mut code = 0;
            for it in &items {
                let c = match &it.outcome {
                    Ok(r) if !r.consistent => 1,
                    Ok(_) => 0,
                    Err(e) => error_code(e),
                };
                // an inconsistency outranks a cap, which outranks bad input
                let rank = |c: u8| [0, 3, 1, 2][c as usize];
                if rank(c) > rank(code) {
                    code = c;
                }
            }
            Ok(code)
        }
        Command::Verify { report } => {
            let text = std::fs::read_to_string(&report).map_err(|e| (2, format!("{}: {e}", report.display())))?;
            let parsed: AnalysisReport =
                serde_json::from_str(&text).map_err(|e| (2, format!("{}: not a report: {e}", report.display())))?;
            let v = verify_report(&parsed);
            write_json(None, &v).map_err(|e| (2, e))?;
            Ok(if v.ok() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => ExitCode::from(c),
        Err((c, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(c)
        }
    }
}
