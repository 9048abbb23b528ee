//! `eqsurg`: lens-space factorizations, census, catalogs and word checks.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 inadmissible input, 64 usage.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eqsurg::lens::Variant;

#[derive(Debug, Parser)]
#[command(
    name = "eqsurg",
    version,
    about = "Equivariant surgery calculus for genus-one real 3-manifolds"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Print timings and progress to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor the real structure C or C' on L(p, q) and build its diagrams.
    Lens(LensArgs),
    /// Run the lens pipeline over every admissible (p, q) with p <= max-p.
    Census(CensusArgs),
    /// Print a built-in catalog.
    Catalog(CatalogArgs),
    /// Evaluate a twist word against a matrix, or run the relation suite.
    Verify(VerifyArgs),
    /// Rewrite an even palindrome on invariant curves as squared twists.
    FactorPalindrome(PalindromeArgs),
}

#[derive(Debug, Args)]
pub struct LensArgs {
    #[arg(long, value_parser = positive)]
    pub p: i64,
    #[arg(long, value_parser = positive)]
    pub q: i64,
    #[arg(long, default_value = "C", value_parser = parse_variant)]
    pub variant: Variant,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
    pub max_p: i64,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CatalogName {
    S1xs2,
    Rp3,
    #[value(name = "typeA")]
    TypeA,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(value_enum)]
    pub name: CatalogName,
    /// Required for typeA.
    #[arg(long, value_parser = positive)]
    pub p: Option<i64>,
    #[arg(long, value_parser = positive)]
    pub q: Option<i64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Word such as "(a-b)^-1 | cst".
    #[arg(
        long,
        requires = "expect",
        conflicts_with = "relations",
        allow_hyphen_values = true
    )]
    pub word: Option<String>,
    /// Matrix literal such as "[[-1,0],[2,1]]".
    #[arg(long, requires = "word", allow_hyphen_values = true)]
    pub expect: Option<String>,
    /// Check the built-in relations for exponents up to EQSURG_MAX_EXP.
    #[arg(long)]
    pub relations: bool,
    #[arg(long, env = "EQSURG_MAX_EXP", default_value_t = 10, value_parser = clap::value_parser!(i64).range(0..))]
    pub max_exp: i64,
}

#[derive(Debug, Args)]
pub struct PalindromeArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub genus: u32,
    /// File holding the involution as a matrix literal.
    #[arg(long)]
    pub involution: std::path::PathBuf,
    /// Curves separated by ';', e.g. "[1,-1];[1,1]".
    #[arg(long, allow_hyphen_values = true)]
    pub curves: String,
    /// Exponents separated by ',', e.g. "1,-2".
    #[arg(long, allow_hyphen_values = true)]
    pub exps: String,
}

fn positive(s: &str) -> Result<i64, String> {
    match s.parse::<i64>() {
        Ok(n) if n > 0 => Ok(n),
        Ok(n) => Err(format!("{n} is not positive")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                commands::EXIT_USAGE
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(commands::run(&cli))
}
