use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superorbit_core::algebra::Family;

#[derive(Parser, Debug)]
#[command(name = "superorbit", version, about = "Odd ranks and multiplicity bounds for nilpotent orbits of Lie superalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Markdown, global = true)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the nilpotent orbits of one algebra with their invariants.
    Orbits(OrbitsArgs),
    /// Compare the closed formula for k with the exact rank oracle.
    Verify(VerifyArgs),
    /// Analyse a graded parabolic, given by degrees or found for an orbit.
    Parabolic(ParabolicArgs),
    /// Multiplicity numerics of a module induced from a graded parabolic.
    Induced(InducedArgs),
    /// Reproduce one of the exceptional orbit tables.
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct OrbitsArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Gamma parameters as three exact rationals, e.g. `1,1,-2` or `1/2,1/2,-1`.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Restrict the sl(2) partition for g3/f4; `all` lists both.
    #[arg(long, default_value = "1^2")]
    pub nu: String,
    /// Also run the rank oracle on every row.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub max_m: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Gamma parameters; repeat for several triples.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Vec<String>,
    /// For p: test the candidate weight conventions against the oracle.
    #[arg(long)]
    pub resolve_interpretation: bool,
}

#[derive(Args, Debug)]
pub struct ParabolicArgs {
    #[arg(long, value_parser = parse_family, default_value = "gl")]
    pub family: Family,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree of each basis index, e.g. `1,1,2,3,1,2,2`.
    #[arg(long, conflicts_with = "find", required_unless_present = "find")]
    pub degrees: Option<String>,
    /// Target orbit: `(3,1),(2,1)` for gl, `(3,1)` for q/sq.
    #[arg(long)]
    pub find: Option<String>,
}

#[derive(Args, Debug)]
pub struct InducedArgs {
    #[command(flatten)]
    pub parabolic: ParabolicArgs,
    /// Dimension of the inducing module.
    #[arg(long, default_value_t = 1)]
    pub dim_lt: u64,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub name: TableName,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    G3,
    F4,
    Gamma,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e| format!("{e}"))
}
