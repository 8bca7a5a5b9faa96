use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use strongac::certificates::{search_certificate, Certificate, CertificateBounds};
use strongac::foxcalc::boundary_d2;
use strongac::matrices::LaurentMatrix;
use strongac::presentations::{apply_script, bounded_search, format_script, parse_script, Presentation, SearchBounds};
use strongac::report::{run_verify_paper, PaperInputs};
use strongac::winding::{lambda_vector, render_grid, winding_invariant, RenderFormat};
use strongac::words::{parse_word, Word};
use strongac::Execution;

#[derive(Parser)]
#[command(name = "strongac", version, about = "Winding invariants, Fox calculus and move search on two-generator presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Winding invariant of a commutator-subgroup word.
    Winding {
        word: String,
        /// Draw the traced loop with its winding numbers.
        #[arg(long, value_enum)]
        render: Option<Render>,
        /// Write the drawing here instead of standard output.
        #[arg(long, requires = "render")]
        out: Option<PathBuf>,
    },
    /// Λ vector of a cocommutative presentation.
    Lambda { presentation: PathBuf },
    /// Abelianized Fox boundary matrix d2.
    Fox { presentation: PathBuf },
    #[command(subcommand)]
    Moves(MovesCommand),
    #[command(subcommand)]
    Cert(CertCommand),
    /// Replay every machine-checkable identity behind the P/Q counterexample.
    VerifyPaper {
        /// Certificate file replacing the built-in one.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Matrix file replacing the built-in Evans matrix.
        #[arg(long)]
        evans: Option<PathBuf>,
        /// Print `CHECK <name> PASS|FAIL` lines only.
        #[arg(long)]
        machine: bool,
    },
}

#[derive(Subcommand)]
enum MovesCommand {
    /// Apply a move script and print the resulting presentation.
    Apply {
        presentation: PathBuf,
        #[arg(long)]
        script: PathBuf,
    },
    /// Breadth-first search for a script from one presentation to another.
    Search {
        start: PathBuf,
        goal: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_moves: usize,
        #[arg(long, default_value_t = 1)]
        max_conjugator_len: usize,
        #[arg(long, default_value_t = 24)]
        max_relator_len: usize,
        /// Only Q-moves: no Nielsen automorphisms.
        #[arg(long)]
        no_automorphisms: bool,
        #[command(flatten)]
        exec: ExecArgs,
    },
}

#[derive(Subcommand)]
enum CertCommand {
    /// Check that a certificate expands to the target word.
    Verify {
        presentation: PathBuf,
        certificate: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Look for a short certificate for the target word.
    Search {
        presentation: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 3)]
        max_steps: usize,
        #[arg(long, default_value_t = 2)]
        max_conjugator_len: usize,
        #[command(flatten)]
        exec: ExecArgs,
    },
}

#[derive(Args)]
struct ExecArgs {
    /// Run single-threaded.
    #[arg(long)]
    sequential: bool,
}

impl ExecArgs {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Ascii,
    Svg,
}

/// Outcome of a subcommand that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_presentation(path: &Path) -> Result<Presentation> {
    read(path)?
        .parse()
        .with_context(|| format!("parsing presentation {}", path.display()))
}

fn word_arg(text: &str) -> Result<Word> {
    parse_word(text).with_context(|| format!("parsing word `{text}`"))
}

/// Matrix file: rows separated by `;` or newlines, entries by `,`.
fn read_matrix(path: &Path) -> Result<LaurentMatrix> {
    let text = read(path)?;
    let rows: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    rows.join(";")
        .split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .collect::<Vec<_>>()
        .join("; ")
        .parse()
        .with_context(|| format!("parsing matrix {}", path.display()))
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Winding { word, render, out } => {
            let w = word_arg(&word)?;
            let p = winding_invariant(&w)?;
            match render {
                None => println!("{p}"),
                Some(r) => {
                    let format = match r {
                        Render::Ascii => RenderFormat::Ascii,
                        Render::Svg => RenderFormat::Svg,
                    };
                    let drawing = render_grid(&w, format)?;
                    match out {
                        Some(path) => {
                            fs::write(&path, drawing).with_context(|| format!("writing {}", path.display()))?;
                            println!("{p}");
                        }
                        None => {
                            println!("P = {p}");
                            print!("{drawing}");
                        }
                    }
                }
            }
        }
        Command::Lambda { presentation } => {
            let p = read_presentation(&presentation)?;
            for (i, l) in lambda_vector(&p)?.iter().enumerate() {
                println!("Λ_{} = {l}", i + 1);
            }
        }
        Command::Fox { presentation } => {
            let p = read_presentation(&presentation)?;
            let d = boundary_d2(&p)?;
            for i in 0..d.rows() {
                let row: Vec<String> = (0..d.cols()).map(|j| d.get(i, j).to_string()).collect();
                println!("{}", row.join(", "));
            }
        }
        Command::Moves(MovesCommand::Apply { presentation, script }) => {
            let p = read_presentation(&presentation)?;
            let moves = parse_script(&read(&script)?).with_context(|| format!("parsing script {}", script.display()))?;
            print!("{}", apply_script(&p, &moves)?);
        }
        Command::Moves(MovesCommand::Search {
            start,
            goal,
            max_moves,
            max_conjugator_len,
            max_relator_len,
            no_automorphisms,
            exec,
        }) => {
            let bounds = SearchBounds {
                max_moves,
                max_conjugator_len,
                max_relator_len,
                automorphisms: !no_automorphisms,
                execution: exec.execution(),
            };
            let outcome = bounded_search(&read_presentation(&start)?, &read_presentation(&goal)?, &bounds)?;
            match outcome.script {
                Some(script) => print!("{}", format_script(&script)),
                None => {
                    println!(
                        "no script within {} moves ({} states, depth {})",
                        max_moves, outcome.states_visited, outcome.depth_reached
                    );
                    return Ok(Status::Failed);
                }
            }
        }
        Command::Cert(CertCommand::Verify {
            presentation,
            certificate,
            target,
        }) => {
            let p = read_presentation(&presentation)?;
            let cert: Certificate = read(&certificate)?
                .parse()
                .with_context(|| format!("parsing certificate {}", certificate.display()))?;
            let target = word_arg(&target)?;
            let expanded = match cert.expand(&p) {
                Ok(w) => w,
                Err(e) => {
                    println!("invalid: {e}");
                    return Ok(Status::Failed);
                }
            };
            if expanded != target {
                println!("invalid: expands to {expanded}");
                return Ok(Status::Failed);
            }
            println!("valid: {} steps", cert.len());
            if let Ok(consistent) = cert.lambda_consistency(&p, &target) {
                println!("winding sums: {}", if consistent { "consistent" } else { "inconsistent" });
                if !consistent {
                    return Ok(Status::Failed);
                }
            }
        }
        Command::Cert(CertCommand::Search {
            presentation,
            target,
            max_steps,
            max_conjugator_len,
            exec,
        }) => {
            let p = read_presentation(&presentation)?;
            let bounds = CertificateBounds {
                max_steps,
                max_conjugator_len,
                execution: exec.execution(),
            };
            match search_certificate(&p, &word_arg(&target)?, &bounds) {
                Some(c) => print!("{c}"),
                None => {
                    println!("no certificate within {max_steps} steps");
                    return Ok(Status::Failed);
                }
            }
        }
        Command::VerifyPaper { cert, evans, machine } => {
            let mut inputs = PaperInputs::default();
            if let Some(path) = cert {
                inputs.cert_text = read(&path)?;
            }
            if let Some(path) = evans {
                inputs.evans = read_matrix(&path)?;
                if inputs.evans.rows() != 2 || inputs.evans.cols() != 2 {
                    bail!("{} is not a 2x2 matrix", path.display());
                }
            }
            let report = run_verify_paper(&inputs);
            if machine {
                print!("{}", report.machine_format());
            } else {
                println!("{report}");
            }
            if !report.all_passed() {
                return Ok(Status::Failed);
            }
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
