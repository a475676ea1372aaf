use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use schreierkit::rschreier::{derived_subgroup, DEFAULT_MAX_INDEX};
use schreierkit::{
    abelian_invariants, as_racg, minimal_presentation, simplify, structure_report, theorem1_presentation, twin_group,
    verify_paper_claims, Presentation, RacgContext, SimplificationBudget, Word,
};

const EXIT_COMPUTATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CLAIM_VIOLATED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "schreierkit", version, about = "Commutator subgroups of twin groups and right-angled Coxeter groups")]
struct Cli {
    /// Output format for reports and presentations.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Cap on the number of cosets in the parity coset table.
    #[arg(long, env = "SCHREIERKIT_MAX_INDEX", default_value_t = DEFAULT_MAX_INDEX, global = true,
          value_parser = parse_max_index)]
    max_index: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Twin group TW_n.
    Twin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The beta_p(j) presentation of TW_{m+2}'.
    Theorem1 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The (2m-1)-generator presentation of TW_{m+2}'.
    Minimal {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Presentation of the parity kernel via Reidemeister-Schreier.
    Derived {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Skip Tietze simplification.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Tietze simplification.
    Simplify {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Abelian invariants (free rank and torsion).
    Abelianize {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Chordality, freeness and hyperbolicity report for a right-angled Coxeter presentation.
    Analyze {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Also reduce this word, e.g. "g1 g3 g1^-1 g3".
        #[arg(long)]
        word: Option<String>,
    },
    /// Recompute the structural claims about TW_{m+2}'.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct BudgetArgs {
    #[arg(long, default_value_t = SimplificationBudget::default().max_passes)]
    max_passes: usize,
    #[arg(long, default_value_t = SimplificationBudget::default().max_relator_length)]
    max_len: usize,
}

impl BudgetArgs {
    fn budget(self) -> Result<SimplificationBudget, Failure> {
        SimplificationBudget::new(self.max_passes, self.max_len).map_err(Failure::usage)
    }
}

fn parse_max_index(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v < 2 {
        return Err("max index must be >= 2".into());
    }
    Ok(v)
}

#[derive(Debug)]
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(e: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: e.into(),
        }
    }

    fn compute(e: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_COMPUTATION,
            error: e.into(),
        }
    }
}

impl From<schreierkit::Error> for Failure {
    fn from(e: schreierkit::Error) -> Self {
        match e {
            schreierkit::Error::Parse(_) | schreierkit::Error::InvalidArgument(_) => Failure::usage(e),
            other => Failure::compute(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Twin { n, output } => emit_presentation(&twin_group(n)?, output, format),
        Command::Theorem1 { m, output } => emit_presentation(&theorem1_presentation(m)?, output, format),
        Command::Minimal { m, output } => emit_presentation(&minimal_presentation(m)?, output, format),
        Command::Derived {
            input,
            output,
            raw,
            budget,
        } => {
            let budget = budget.budget()?;
            let p = read_presentation(input)?;
            let derived = derived_subgroup(&p, cli.max_index)?.presentation;
            let out = if raw { derived } else { simplify(&derived, budget).presentation };
            emit_presentation(&out, output, format)
        }
        Command::Simplify { input, output, budget } => {
            let budget = budget.budget()?;
            let p = read_presentation(input)?;
            let outcome = simplify(&p, budget);
            if outcome.budget_exhausted {
                eprintln!("warning: simplification budget exhausted after {} eliminations", outcome.eliminations);
            }
            emit_presentation(&outcome.presentation, output, format)
        }
        Command::Abelianize { input } => {
            let inv = abelian_invariants(&read_presentation(input)?);
            match format {
                Format::Json => print_line(&inv.to_json().to_string())?,
                Format::Text => print_line(&inv.to_string())?,
            }
            Ok(0)
        }
        Command::Analyze { input, word } => {
            let p = read_presentation(input)?;
            let report = structure_report(&p)?;
            let mut value = serde_json::to_value(&report).map_err(Failure::compute)?;
            if let Some(text) = word {
                let w: Word = text.parse()?;
                let ctx = RacgContext::new(as_racg(&p)?);
                let nf = ctx.normal_form(&w)?;
                value["word"] = serde_json::json!({
                    "input": w.to_string(),
                    "normal_form": nf.to_string(),
                    "is_identity": nf.is_empty(),
                });
            }
            match format {
                Format::Json => print_line(&serde_json::to_string_pretty(&value).map_err(Failure::compute)?)?,
                Format::Text => {
                    for (k, v) in value.as_object().expect("report is an object") {
                        print_line(&format!("{k}: {v}"))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { m, json } => {
            let report = verify_paper_claims(m)?;
            if json {
                print_line(&serde_json::to_string_pretty(&report).map_err(Failure::compute)?)?;
            } else {
                print!("{report}");
            }
            Ok(if report.passed() { 0 } else { EXIT_CLAIM_VIOLATED })
        }
    }
}

fn read_presentation(input: Option<PathBuf>) -> Result<Presentation, Failure> {
    let (text, source) = match input {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(Failure::usage)?;
            (text, path.display().to_string())
        }
        None => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .context("reading standard input")
                .map_err(Failure::usage)?;
            (text, "<stdin>".to_string())
        }
    };
    Presentation::from_json(&text).map_err(|e| Failure::usage(anyhow::Error::new(e).context(source)))
}

fn emit_presentation(p: &Presentation, output: Option<PathBuf>, format: Format) -> Result<u8, Failure> {
    let text = match format {
        Format::Json => p.to_json(),
        Format::Text => format!("{p}\n"),
    };
    match output {
        Some(path) => fs::write(&path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::compute)?,
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing standard output")
            .map_err(Failure::compute)?,
    }
    Ok(0)
}

fn print_line(s: &str) -> Result<(), Failure> {
    writeln!(io::stdout(), "{s}")
        .context("writing standard output")
        .map_err(Failure::compute)
}
