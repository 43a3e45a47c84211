use l1coh::bounds::KMode;
use l1coh::sweep::{run_sweep, SweepSpec};

use super::{load, ordering, params, profile_of};
use crate::args::SweepArgs;
use crate::output::{sink, write_csv};
use crate::{Globals, Outcome};

pub fn run(a: &SweepArgs, g: &Globals) -> Result<Outcome, String> {
    let input = load(&a.state)?;
    let n = input.state.n_qubits();
    let fixed = params(&a.params, n)?;
    let profile = profile_of(&input, &ordering(&a.params, n)?)?;
    let (k, fixed_kn) = match fixed.k {
        KMode::Global(k) => (k, None),
        KMode::PerIndex(ks) => (ks[0], Some(ks)),
    };
    let spec = SweepSpec {
        axes: a.axes.clone(),
        alpha: fixed.alpha,
        k,
        delta: fixed.delta,
        fixed_kn,
        bounds: a.bounds.clone(),
    };
    let table = run_sweep(&profile, &spec, g.exec).map_err(|e| e.to_string())?;
    let out = sink(a.out.as_deref(), g.force)?;
    write_csv(out, &table.header, table.records())?;
    Ok(Outcome::Success)
}
