use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "fusion", version, about = "Tight fusion frames, orbit searches and spherical design lifts")]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "FUSION_THREADS")]
    pub threads: Option<usize>,

    /// Arithmetic for identity checks. Commands that need floats say so.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,

    /// Print the JSON envelope on stdout instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed forms and checks for one orbit O(d; a, b).
    Orbit(OrbitArgs),
    /// Tight fusion frame certificate for a frame file or orbit union.
    CheckTff(CheckTffArgs),
    /// Search for two-orbit unions that are tight 2-fusion frames.
    Search(SearchArgs),
    /// Solve (d+2)(a+b) = 8ab.
    SolveSingle(SolveSingleArgs),
    /// Scale a single-orbit solution (d0, a0, b0) by s.
    Scale(ScaleArgs),
    /// Lift a tight fusion frame of planes to a spherical design.
    Lift(LiftArgs),
    /// Check a point set for the spherical design property.
    VerifyDesign(VerifyDesignArgs),
    /// Predicted ECTFF pair statistics and cardinality bounds for (d, N).
    Bounds(BoundsArgs),
    /// Check a plane configuration against the ECTFF predictions.
    CheckEctff2(CheckEctff2Args),
    /// Build the equi-isoclinic planes of a SIC-POVM.
    SicLift(SicLiftArgs),
    /// Embed a configuration into a Euclidean sphere by traceless projectors.
    Embed(EmbedArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct OrbitArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    /// Enumerate the orbit and run the two-point and frame checks.
    #[arg(long)]
    pub check_tff2: bool,
    /// Also sum the probe functional over the enumerated orbit.
    #[arg(long)]
    pub brute_force: bool,
    /// Write the enumerated orbit as a frame file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckTffArgs {
    /// Frame file.
    #[arg(long = "in", conflicts_with = "orbits")]
    pub input: Option<PathBuf>,
    /// Orbit union file `{"d": .., "parts": [[a, b], ..]}`.
    #[arg(long)]
    pub orbits: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub t: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Table,
    Csv,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub min_d: usize,
    #[arg(long)]
    pub max_d: usize,
    /// Odd dimensions only.
    #[arg(long)]
    pub odd: bool,
    /// Number of orbits per union; only 2 is supported.
    #[arg(long, default_value_t = 2)]
    pub orbits: usize,
    /// Also report pairs of two orbits that each satisfy the condition alone.
    #[arg(long)]
    pub include_single: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Table)]
    pub format: TableFormat,
    /// Write the result table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SolveSingleArgs {
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, conflicts_with = "d")]
    pub min_d: Option<usize>,
    #[arg(long, requires = "min_d")]
    pub max_d: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct ScaleArgs {
    #[arg(long)]
    pub d0: usize,
    #[arg(long)]
    pub a0: usize,
    #[arg(long)]
    pub b0: usize,
    /// Scale factor; with --max-s, the first one.
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    #[arg(long)]
    pub max_s: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct LiftArgs {
    /// Orbit `d,a,b` to lift.
    #[arg(long, conflicts_with = "input")]
    pub orbit: Option<String>,
    /// Frame file to lift.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Frame strength t; by default the largest of 2, 1 that the frame passes.
    #[arg(long)]
    pub t: Option<u32>,
    /// Vertices per polygon.
    #[arg(long, default_value_t = 6)]
    pub polygon: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Same rotation angle on every plane instead of seeded angles.
    #[arg(long)]
    pub fixed_phase: Option<f64>,
    /// Rotate planes until no two points coincide.
    #[arg(long)]
    pub repair: bool,
    /// Certify at this strength instead of the declared one.
    #[arg(long)]
    pub verify: Option<u32>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Pairwise,
    Moments,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyDesignArgs {
    /// Point set or lifted design file.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub t: u32,
    #[arg(long, value_enum, default_value_t = Criterion::Both)]
    pub criterion: Criterion,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckEctff2Args {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SicLiftArgs {
    /// Complex dimension; the built-in fiducial covers n = 2.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EmbedArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_follow_the_subcommand() {
        let cli =
            Cli::try_parse_from(["fusion", "bounds", "--d", "4", "--N", "4", "--json", "--mode", "float"]).unwrap();
        assert!(cli.json);
        assert_eq!(cli.mode, ModeArg::Float);
        match cli.command {
            Command::Bounds(b) => assert_eq!((b.d, b.n), (4, 4)),
            other => panic!("parsed {other:?}"),
        }
    }

    #[test]
    fn lift_sources_are_exclusive() {
        assert!(Cli::try_parse_from(["fusion", "lift", "--orbit", "4,1,3", "--in", "f.json"]).is_err());
        let cli = Cli::try_parse_from(["fusion", "lift", "--orbit", "4,1,3"]).unwrap();
        let Command::Lift(l) = cli.command else { panic!("not a lift") };
        assert_eq!((l.polygon, l.seed, l.t), (6, 0, None));
    }
}
