use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use l1coh::sweep::{Axis, BoundSpec};

/// l1-norm coherence of multiqubit states and its superadditivity bounds.
#[derive(Debug, Parser)]
#[command(name = "l1coh", version)]
pub struct Cli {
    /// Tolerance for validity and superadditivity checks.
    #[arg(long, global = true, value_name = "TOL")]
    pub tolerance: Option<f64>,

    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    /// Overwrite existing output files.
    #[arg(long, global = true)]
    pub force: bool,

    /// Evaluate on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Total, single-qubit and tail coherences for the identity ordering.
    Coherence {
        /// State file (JSON).
        state: PathBuf,
    },
    /// Evaluate every bound on a state.
    Bounds(BoundsArgs),
    /// Evaluate bounds over a one- or two-axis parameter grid and write CSV.
    Sweep(SweepArgs),
    /// Superadditivity and bound validity checks on random pure states.
    Random(RandomArgs),
    /// Scalar inequality grids, pinned golden values and degeneracy identities.
    Verify {
        /// Flip the sign of one expected value; the run must then fail.
        #[arg(long)]
        self_test: bool,
    },
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Exponent α.
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,

    /// Global k in (0, 1].
    #[arg(long, conflicts_with = "kn")]
    pub k: Option<f64>,

    /// Per-level k list, one value per level (N − 1 entries).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub kn: Option<Vec<f64>>,

    /// Exponent δ ≥ 1.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,

    /// Qubit ordering as a comma-separated permutation of 0..N.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub ordering: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// State file (JSON).
    pub state: PathBuf,

    #[command(flatten)]
    pub params: ParamArgs,

    /// Split index for the mixed-pattern bounds (default: detected).
    #[arg(long)]
    pub m: Option<usize>,

    /// Tightest valid k for the all-descending bounds.
    #[arg(long)]
    pub auto_params: bool,

    /// Search every qubit ordering for the largest applicable value.
    #[arg(long, conflicts_with = "ordering")]
    pub auto_ordering: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// State file (JSON).
    pub state: PathBuf,

    #[command(flatten)]
    pub params: ParamArgs,

    /// Axis `name:min:max:steps` with name in {alpha, k, k1, delta}; give one or two.
    #[arg(long = "axis", required = true)]
    pub axes: Vec<Axis>,

    /// Bound with optional overrides, e.g. `Cor1` or `Ref30:delta=1`.
    #[arg(long = "bound", required = true)]
    pub bounds: Vec<BoundSpec>,

    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    /// Number of random states.
    #[arg(long)]
    pub n: usize,

    /// Qubits per state (2 to 6).
    #[arg(long)]
    pub qubits: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
