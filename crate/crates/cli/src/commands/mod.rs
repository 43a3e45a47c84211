pub mod bounds;
pub mod coherence;
pub mod random;
pub mod sweep;
pub mod verify;

use std::path::Path;

use l1coh::coherence::{profile, validate_ordering, CoherenceProfile};
use l1coh::statefile::{self, LoadedState, StateSpec};

use crate::args::ParamArgs;
use l1coh::bounds::{BoundParams, KMode};

/// Parsed state file together with the raw description.
pub struct Input {
    pub spec: StateSpec,
    pub state: LoadedState,
}

pub fn load(path: &Path) -> Result<Input, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let spec = statefile::parse_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let state = spec
        .build()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Input { spec, state })
}

pub fn ordering(args: &ParamArgs, n: usize) -> Result<Vec<usize>, String> {
    let ordering = args.ordering.clone().unwrap_or_else(|| (0..n).collect());
    validate_ordering(&ordering, n).map_err(|e| e.to_string())?;
    Ok(ordering)
}

pub fn profile_of(input: &Input, ordering: &[usize]) -> Result<CoherenceProfile, String> {
    let rho = input.state.density().map_err(|e| e.to_string())?;
    profile(&rho, ordering).map_err(|e| e.to_string())
}

/// Parameters from the flags, validated for the loosest bound family; `k`
/// defaults to 1.
pub fn params(args: &ParamArgs, n: usize) -> Result<BoundParams, String> {
    let k = match &args.kn {
        Some(list) => {
            if list.len() + 1 != n {
                return Err(format!(
                    "--kn has {} entries, expected {} for {n} qubits",
                    list.len(),
                    n - 1
                ));
            }
            KMode::PerIndex(list.clone())
        }
        None => KMode::Global(args.k.unwrap_or(1.0)),
    };
    let p = BoundParams {
        alpha: args.alpha,
        delta: args.delta,
        k,
        m: None,
    };
    p.validate(1.0).map_err(|e| e.to_string())?;
    Ok(p)
}
