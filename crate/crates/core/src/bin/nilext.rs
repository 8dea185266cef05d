use clap::{Parser, Subcommand};
use nilext::cli::{
    cmd_extend, cmd_model, cmd_roots, cmd_table, cmd_verify, finish, parse_family, parse_sequence,
    CliError, CommandOutput, ExtendArgs, VerifyChecks, EXIT_USAGE,
};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nilext", version, about = "Exact invariants, graded central extensions and model tables for nilpotent Lie algebras")]
struct Cli {
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized characteristic-vector sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog model, e.g. "Q:m=4" or "g21q:m=4,t=1,q=2".
    Model {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check invariants of a model id or a document file (all checks by default).
    Verify {
        source: String,
        #[arg(long)]
        jacobi: bool,
        #[arg(long)]
        charseq: bool,
        #[arg(long)]
        graded: bool,
        #[arg(long)]
        p2: bool,
        #[arg(long)]
        all: bool,
        /// Expected characteristic sequence, e.g. 7,1,1.
        #[arg(long)]
        expect_charseq: Option<String>,
    },
    /// Enumerate graded one-dimensional central extensions.
    Extend {
        base: String,
        #[arg(long)]
        degree: Option<u32>,
        /// Index-sum family, e.g. "t=2,k=2" or "t=3/2,k=2".
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        nilindex: Option<usize>,
        /// Filters: "p2" and/or "charseq=7,1,1" (repeatable).
        #[arg(long)]
        filter: Vec<String>,
    },
    /// Regenerate table 1 or 2 and diff it against the printed cells.
    Table {
        number: u32,
        #[arg(long, default_value = "4..6")]
        m_range: String,
        #[arg(long, default_value = "1..3")]
        q_range: String,
    },
    /// Root-system checks for a simple type, e.g. "E8".
    Roots {
        kind: String,
        #[arg(long)]
        prop1: bool,
        #[arg(long)]
        pcheck: bool,
    },
}

fn range(s: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::Usage(format!("bad range '{s}' (expected e.g. 4..6 or 5)"));
    let (a, b) = s.split_once("..").unwrap_or((s, s));
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn run(cli: Cli) -> Result<CommandOutput, CliError> {
    let seed = cli.seed;
    match cli.command {
        Command::Model { id, out } => cmd_model(&id, out.as_deref()),
        Command::Verify { source, jacobi, charseq, graded, p2, all, expect_charseq } => {
            let checks = if all { VerifyChecks::all() } else { VerifyChecks { jacobi, charseq, graded, p2 } };
            let expect = expect_charseq.as_deref().map(parse_sequence).transpose()?;
            cmd_verify(&source, checks, expect, seed)
        }
        Command::Extend { base, degree, family, nilindex, filter } => {
            let mut args = ExtendArgs {
                degree,
                family: family.as_deref().map(parse_family).transpose()?,
                nilindex,
                seed,
                ..Default::default()
            };
            for f in filter.iter().flat_map(|f| f.split(';')) {
                match f.trim() {
                    "p2" => args.p2 = true,
                    s if s.starts_with("charseq=") => args.charseq = Some(parse_sequence(&s[8..])?),
                    s => return Err(CliError::Usage(format!("unknown filter '{s}'"))),
                }
            }
            cmd_extend(&base, &args)
        }
        Command::Table { number, m_range, q_range } => cmd_table(number, range(&m_range)?, range(&q_range)?, seed),
        Command::Roots { kind, prop1, pcheck } => cmd_roots(&kind, prop1, pcheck),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    let json = cli.json;
    let out = finish(run(cli));
    if json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
    } else if out.exit == EXIT_USAGE {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    ExitCode::from(out.exit as u8)
}
