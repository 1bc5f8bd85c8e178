use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;

/// Arithmetized syntax, partial truth and finite satisfaction classes.
///
/// Exit status: 0 true or clean, 1 false or violations, 2 unknown,
/// 64 usage or input error. A `-` in place of a file or formula reads stdin.
#[derive(Parser, Debug)]
#[command(name = "veritas", version)]
struct Cli {
    /// Structured JSON output with sorted keys.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula (or a term) and print it in canonical form.
    Parse { text: String },
    /// Quantifier and connective depth of a formula.
    Depth { formula: String },
    /// Structural template with its arguments and bound renaming.
    Template { formula: String },
    /// Structural similarity of two formulae.
    Sim { first: String, second: String },
    /// Structural equivalence of two sentences, over N or a finite structure.
    Equiv {
        first: String,
        second: String,
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Code of a formula or term.
    Code { text: String },
    /// Formula or term with the given code.
    Decode { code: String },
    /// Evaluate a sentence: Kleene-bounded over N, or exactly in a structure.
    Eval {
        formula: String,
        #[command(flatten)]
        cap: Cap,
        /// Evaluate the restricted truth predicate Tr_c instead.
        #[arg(long, value_name = "C")]
        tr_depth: Option<usize>,
        /// Sentences (or codes), one per line, that `T` holds of.
        #[arg(long)]
        oracle: Option<PathBuf>,
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// One extension step of a satisfaction class.
    Extend {
        #[arg(long)]
        structure: PathBuf,
        /// Formulae, one per line.
        #[arg(long)]
        formulas: PathBuf,
        /// Base predicate file; the equality base when omitted.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repeated extension; stages are separated by `---` lines.
    ExtendChain {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        stages: PathBuf,
        #[arg(long)]
        base: Option<PathBuf>,
        /// Where to write the last stage.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a satisfaction predicate against one group of axioms.
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// The assignments a satisfaction predicate makes a formula true under.
    Disintegrate {
        #[arg(long)]
        sat: PathBuf,
        #[arg(long)]
        phi: String,
    },
    /// Print a scheme instance.
    Scheme {
        kind: SchemeKind,
        #[arg(long)]
        phi: Option<String>,
        #[command(flatten)]
        vars: Pair,
    },
    /// Verify a Hilbert-style proof file.
    ProveVerify { file: PathBuf },
    /// Evaluate the universal closure of every line of a verified proof.
    Reflect {
        file: PathBuf,
        #[command(flatten)]
        cap: Cap,
    },
    /// Run the brute-force verification suites.
    Selftest {
        /// Structures up to N=4 and fewer samples.
        #[arg(long)]
        small: bool,
    },
}

#[derive(Args, Debug)]
struct Cap {
    /// Quantifier search bound.
    #[arg(long, env = "VERITAS_CAP", default_value_t = 50)]
    cap: u64,
}

#[derive(Args, Debug)]
struct SatFiles {
    #[arg(long)]
    sat: PathBuf,
    #[arg(long)]
    structure: PathBuf,
}

#[derive(Args, Debug)]
struct Pair {
    #[arg(long, default_value = "x")]
    x: String,
    #[arg(long, default_value = "y")]
    y: String,
}

#[derive(Subcommand, Debug)]
enum CheckKind {
    /// Compositional clauses.
    Comp {
        #[command(flatten)]
        files: SatFiles,
    },
    /// Structural regularity.
    Strreg {
        #[command(flatten)]
        files: SatFiles,
    },
    /// Extensionality.
    Ext {
        #[command(flatten)]
        files: SatFiles,
    },
    /// Compositional truth axioms restricted to depth at most C.
    Ct {
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        files: SatFiles,
    },
    /// Internal induction for a formula.
    Int {
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        files: SatFiles,
    },
    /// Collection instance for a formula.
    Coll {
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        vars: Pair,
        /// Read the bound on y strictly.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        files: SatFiles,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SchemeKind {
    Coll,
    Ind,
    Int,
    Loccoll,
    Locind,
    Gr,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::USAGE),
            };
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            let text = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&outcome.json).expect("json"))
            } else {
                outcome.text
            };
            print!("{text}");
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::USAGE)
        }
    }
}
