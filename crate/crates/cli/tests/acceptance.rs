//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use l1coh::bounds::{
    best_params, cor1_bound, ref_scheme_bound, thm1_bound, thm2_bound, thm3_bound, thm4_bound,
    BoundId, BoundParams, ParamMode, RefScheme, Step,
};
use l1coh::coherence::{identity_profile, CoherenceProfile, SubsetCoherence};
use l1coh::oracle::corpus::{structured_states, synthetic_profile};
use l1coh::oracle::{
    bound_validity_fuzz, coherence_oracle, inequality_grid_verify, superadditivity_fuzz,
    transcribe, FuzzConfig, GridSpec,
};
use l1coh::qstate::{random_pure, DensityMatrix};
use l1coh::statefile;
use l1coh::sweep::{run_sweep, SweepSpec, SweepTable};
use l1coh::Execution;

type Failure = Box<dyn std::error::Error>;
type Outcome = Result<String, Failure>;
type Criterion = (&'static str, fn() -> Outcome);

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn density(name: &str) -> DensityMatrix {
    statefile::load(data(name)).unwrap().density().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(msg().into())
    }
}

fn within(what: &str, got: f64, want: f64, tol: f64) -> Result<(), Failure> {
    ensure((got - want).abs() <= tol, || {
        format!("{what}: got {got}, want {want} ± {tol:e}")
    })
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn example1_profile() -> Outcome {
    let rho = density("example1_product.json");
    let p = identity_profile(&rho)?;
    let table = SubsetCoherence::new(&rho).map_err(|e| e.to_string())?;
    let got = [
        p.singles()[0],
        p.singles()[1],
        p.singles()[2],
        p.tails()[0],
        p.total(),
    ];
    let want = [1.0, 4.0 / 5.0, 3.0 / 5.0, 47.0 / 25.0, 119.0 / 25.0];
    for (name, (g, w)) in ["C_1", "C_2", "C_3", "C_23", "C_123"]
        .iter()
        .zip(got.iter().zip(want))
    {
        within(name, *g, w, 1e-12)?;
    }
    within(
        "C_23 from subset table",
        table.of_qubits(&[1, 2]),
        47.0 / 25.0,
        1e-12,
    )?;
    Ok(format!("(C_1, C_2, C_3, C_23, C_123) = {got:?}"))
}

fn example2_profile() -> Outcome {
    let rho = density("example2_schmidt.json");
    let p = identity_profile(&rho)?;
    for (i, w) in [0.4, 0.8, 0.8].into_iter().enumerate() {
        within(&format!("C_{}", i + 1), p.singles()[i], w, 1e-12)?;
    }
    within("C_23", p.tails()[0], 12.0 / 5.0, 1e-12)?;
    let oracle = coherence_oracle(&rho);
    within("total vs oracle", p.total(), oracle, 1e-12)?;
    within("oracle total", oracle, 4.0, 1e-12)?;
    let out = Command::new(env!("CARGO_BIN_EXE_l1coh"))
        .args(["coherence", data("example2_schmidt.json").to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(
        out.status.code() == Some(0) && text.contains("18/5"),
        || format!("coherence command did not print the 18/5 note: {text}"),
    )?;
    Ok(format!(
        "singles {:?}, C_23 {}, total {} = oracle; published 18/5 differs by {:.1}",
        p.singles(),
        p.tails()[0],
        p.total(),
        p.total() - 3.6
    ))
}

fn cor1_example1() -> Outcome {
    let p = identity_profile(&density("example1_product.json"))?;
    let params = BoundParams::new(2.0, 0.9, 2.0);
    let cor1 = cor1_bound(&p, &params)?;
    let ref31 = ref_scheme_bound(&p, &params, RefScheme::Ref31)?;
    ensure(cor1.applicable() && ref31.applicable(), || {
        "a bound is not applicable".into()
    })?;
    let (c, t) = (p.singles(), p.tails());
    let cor1_tx = transcribe::cor1_rhs(c, t, 2.0, 0.81, 0.81);
    let ref31_tx = transcribe::ref_hybrid_rhs(c, 2.0, 0.81, 0.81);
    within("Cor1 vs transcription", cor1.rhs, cor1_tx, 1e-12)?;
    within("Cor1", cor1.rhs, 5.182658, 1e-5)?;
    within("Ref31 vs transcription", ref31.rhs, ref31_tx, 1e-12)?;
    within(
        "Ref31 (transcribed value)",
        ref31.rhs,
        5.358_024_691_358_025,
        1e-5,
    )?;
    let lhs = 22.6576;
    within("C_123^2", cor1.lhs, lhs, 1e-10)?;
    ensure(cor1.rhs <= lhs && ref31.rhs <= lhs, || {
        "rhs above C_123^2".into()
    })?;
    Ok(format!(
        "Cor1 {:.7}, Ref31 {:.7} (quoted 5.357983 is {:.1e} off the exact arithmetic), both <= {lhs}",
        cor1.rhs,
        ref31.rhs,
        ref31.rhs - 5.357983
    ))
}

fn difference_anchor() -> Outcome {
    let rho = density("example2_schmidt.json");
    let p = identity_profile(&rho)?;
    let spec = SweepSpec {
        axes: vec!["alpha:2:5:31".parse()?, "k1:0.05:1:20".parse()?],
        alpha: 2.0,
        k: 1.0,
        delta: 2.0,
        fixed_kn: None,
        bounds: vec!["Cor1".parse()?, "Ref31".parse()?],
    };
    let table = run_sweep(&p, &spec, Execution::Parallel)?;
    let row = table
        .rows
        .iter()
        .find(|r| r.axes == [2.0, 1.0])
        .ok_or("grid lacks (alpha 2, k1 1)")?;
    let s2_minus_s1 = row.diffs[0];
    within("S2 - S1", s2_minus_s1, 4.0 / 15.0, 1e-10)?;
    Ok(format!(
        "S2 - S1 at (alpha 2, k1 1, k2 1, delta 2) = {s2_minus_s1}"
    ))
}

fn inequality_grids() -> Outcome {
    let spec = GridSpec::default();
    let points = [
        ("bernoulli", spec.bernoulli_x * spec.bernoulli_alpha),
        ("scalar", spec.x * spec.k * spec.alpha * spec.deltas.len()),
    ];
    for (name, n) in points {
        ensure(n >= 10_000, || format!("{name} grid has only {n} points"))?;
    }
    let s = inequality_grid_verify(&spec, Execution::Parallel)?;
    ensure(s.tolerance <= 1e-12, || {
        format!("tolerance {} too loose", s.tolerance)
    })?;
    ensure(s.passed(), || {
        format!(
            "{} violations: {:?}",
            s.violation_count,
            s.violations.first()
        )
    })?;
    for check in [
        "bernoulli",
        "gamma_ineq",
        "lambda_ineq",
        "dominance",
        "saturation",
    ] {
        let worst = s
            .worst_by_check
            .get(check)
            .copied()
            .ok_or(format!("{check} never ran"))?;
        ensure(worst >= -1e-12, || format!("{check} worst slack {worst:e}"))?;
    }
    Ok(format!(
        "{} checks, worst slack {:e}, saturation |slack| <= {:e}",
        s.checks_run,
        s.worst_slack.unwrap_or(0.0),
        -s.worst_by_check["saturation"]
    ))
}

fn superadditivity() -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=4 {
        let cfg = FuzzConfig::new(1000, n, 6 + n as u64)?.with_tolerance(1e-9)?;
        let s = superadditivity_fuzz(&cfg, Execution::Parallel)?;
        ensure(s.passed(), || {
            format!("N = {n}: {:?}", s.violations.first())
        })?;
        parts.push(format!(
            "N={n}: {} checks, worst {:.3e}",
            s.checks_run,
            s.worst_slack.unwrap_or(0.0)
        ));
    }
    Ok(parts.join("; "))
}

fn bound_validity() -> Outcome {
    let mut parts = Vec::new();
    for n in 3..=4 {
        let cfg = FuzzConfig::new(500, n, 70 + n as u64)?.with_tolerance(1e-9)?;
        let s = bound_validity_fuzz(&cfg, &BoundId::ALL, Execution::Parallel)?;
        ensure(s.passed(), || {
            format!("N = {n}: {:?}", s.violations.first())
        })?;
        let applicable: u64 = s.tallies.values().map(|t| t.applicable).sum();
        // Cor1 is defined for three qubits only.
        for b in BoundId::ALL
            .into_iter()
            .filter(|&b| n == 3 || b != BoundId::Cor1)
        {
            let t = s.tallies.get(b.as_str()).cloned().unwrap_or_default();
            ensure(t.applicable > 0, || {
                format!("N = {n}: {b} never applicable")
            })?;
        }
        parts.push(format!(
            "N={n}: {} checks, {applicable} applicable reports",
            s.checks_run
        ));
    }
    Ok(parts.join("; "))
}

fn degeneracy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let n = rng.random_range(3..=6);
        let alpha = rng.random_range(2.0..5.0);
        let k: f64 = rng.random_range(0.3..=1.0);
        let delta = rng.random_range(1.0..2.0);
        let kd = k.powf(delta);
        let global = BoundParams::new(alpha, k, delta);
        let uniform = BoundParams::per_index(alpha, vec![k; n - 1], delta);

        let p = synthetic_profile(&mut rng, &Step::split(n - 1, n), &vec![kd; n - 1]);
        let (a, b) = (thm1_bound(&p, &global)?, thm3_bound(&p, &uniform)?);
        ensure(a.applicable() && b.applicable(), || {
            format!("case {case}: Thm1/Thm3 not applicable")
        })?;
        worst = worst.max(relative(a.rhs, b.rhs));

        let m = rng.random_range(1..=n - 2);
        let p = synthetic_profile(&mut rng, &Step::split(m, n), &vec![kd; n - 1]);
        let a = thm2_bound(&p, &global.clone().with_m(m))?;
        let b = thm4_bound(&p, &uniform.clone().with_m(m))?;
        ensure(a.applicable() && b.applicable(), || {
            format!("case {case}: Thm2/Thm4 not applicable")
        })?;
        worst = worst.max(relative(a.rhs, b.rhs));

        let m = rng.random_range(1..=n - 1);
        let p = synthetic_profile(&mut rng, &Step::split(m, n), &vec![1.0; n - 1]);
        let unit = BoundParams::new(alpha, 1.0, delta).with_m(m);
        let a = ref_scheme_bound(&p, &unit, RefScheme::Ref31)?;
        let b = ref_scheme_bound(&p, &unit, RefScheme::Ref29)?;
        ensure(a.applicable() && b.applicable(), || {
            format!("case {case}: Ref31/Ref29 not applicable")
        })?;
        worst = worst.max(relative(a.rhs, b.rhs));
    }
    ensure(worst <= 1e-12, || {
        format!("largest relative difference {worst:e}")
    })?;
    Ok(format!(
        "300 identities, largest relative difference {worst:e}"
    ))
}

fn corpus_profiles() -> Result<Vec<CoherenceProfile>, Failure> {
    let mut states: Vec<DensityMatrix> = Vec::new();
    for n in 3..=4 {
        for seed in 0..200 {
            states.push(random_pure(n, 900 + seed)?.density()?);
        }
        for (_, s) in structured_states(n, 3)? {
            states.push(s.density()?);
        }
    }
    let mut out = Vec::new();
    for rho in &states {
        let n = rho.n_qubits();
        let table = SubsetCoherence::new(rho)?;
        for ordering in (0..n).permutations(n) {
            out.push(table.profile(&ordering)?);
        }
    }
    Ok(out)
}

fn refinement() -> Outcome {
    let mut compared = 0;
    for alpha in [2.0, 3.0] {
        for p in corpus_profiles()? {
            let Ok(t1) = best_params(&p, alpha, ParamMode::Thm1) else {
                continue;
            };
            let r1 = thm1_bound(&p, &t1)?;
            if !r1.applicable() {
                continue;
            }
            let r3 = thm3_bound(&p, &best_params(&p, alpha, ParamMode::Thm3)?)?;
            ensure(r3.applicable(), || {
                format!("Thm3 not applicable on {:?}", p.singles())
            })?;
            ensure(r3.rhs >= r1.rhs - 1e-12, || {
                format!("Thm3 {} < Thm1 {} on {:?}", r3.rhs, r1.rhs, p.singles())
            })?;
            compared += 1;
        }
    }
    ensure(compared > 0, || "no applicable corpus profile".into())?;
    let p = identity_profile(&density("product_1_02_01.json"))?;
    let r1 = thm1_bound(&p, &best_params(&p, 2.0, ParamMode::Thm1)?)?;
    let r3 = thm3_bound(&p, &best_params(&p, 2.0, ParamMode::Thm3)?)?;
    within("pinned Thm1", r1.rhs, 1.59, 1e-12)?;
    within("pinned Thm3", r3.rhs, 1.69125, 1e-12)?;
    Ok(format!(
        "{compared} applicable profiles; pinned Thm3 {} >= Thm1 {}",
        r3.rhs, r1.rhs
    ))
}

fn column(table: &SweepTable, name: &str) -> Result<Vec<f64>, Failure> {
    table
        .column(name)
        .ok_or(format!("missing column {name}"))?
        .iter()
        .map(|v| v.parse::<f64>().map_err(Failure::from))
        .collect()
}

fn alpha_sweep() -> Outcome {
    let p = identity_profile(&density("example1_product.json"))?;
    let labels = [
        "Cor1",
        "Ref31",
        "Cor1:delta=1",
        "Ref30:delta=1",
        "Ref29",
        "Ref31:delta=1",
        "Ref31:k=1",
    ];
    let spec = SweepSpec {
        axes: vec!["alpha:2:5:61".parse()?],
        alpha: 2.0,
        k: 0.9,
        delta: 2.0,
        fixed_kn: None,
        bounds: labels.iter().map(|l| l.parse()).collect::<Result<_, _>>()?,
    };
    let table = run_sweep(&p, &spec, Execution::Parallel)?;
    ensure(table.rows.len() == 61, || {
        format!("{} rows", table.rows.len())
    })?;
    let lhs = column(&table, "lhs")?;
    for l in labels {
        let rhs = column(&table, &format!("rhs:{l}"))?;
        let ok = column(&table, &format!("applicable:{l}"));
        ensure(ok.is_err(), || {
            "applicable column should not parse as a number".into()
        })?;
        let flags = table.column(&format!("applicable:{l}")).unwrap();
        for (i, (r, h)) in rhs.iter().zip(&lhs).enumerate() {
            ensure(flags[i] == "true", || {
                format!("{l} not applicable at row {i}")
            })?;
            ensure(*r <= *h, || format!("{l} above lhs at row {i}"))?;
        }
    }
    let pairs = [("Ref31:delta=1", "Ref30:delta=1"), ("Ref31:k=1", "Ref29")];
    for (a, b) in pairs {
        let (x, y) = (
            column(&table, &format!("rhs:{a}"))?,
            column(&table, &format!("rhs:{b}"))?,
        );
        let worst = x
            .iter()
            .zip(&y)
            .map(|(u, v)| relative(*u, *v))
            .fold(0.0, f64::max);
        ensure(worst <= 1e-12, || {
            format!("{a} vs {b}: relative difference {worst:e}")
        })?;
    }
    let alpha = column(&table, "alpha")?;
    let diff = column(&table, "diff:Cor1-Ref31")?;
    let crossing = diff.windows(2).position(|w| w[0].signum() != w[1].signum());
    let note = match crossing {
        Some(i) => format!(
            "Cor1 - Ref31 changes sign between alpha {} and {}",
            alpha[i],
            alpha[i + 1]
        ),
        None => format!(
            "Cor1 - Ref31 keeps sign {} over the range",
            diff[0].signum()
        ),
    };
    Ok(format!(
        "all curves applicable and <= lhs, degeneracies exact; {note}"
    ))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, Failure> {
    let out = Command::new(env!("CARGO_BIN_EXE_l1coh"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let state = data("example1_product.json");
    let state = state.to_str().unwrap();
    let mut files = Vec::new();
    for run in 0..2 {
        let random = dir.path().join(format!("random{run}.csv"));
        let sweep = dir.path().join(format!("sweep{run}.csv"));
        run_cli(&[
            "random",
            "--n",
            "150",
            "--qubits",
            "3",
            "--seed",
            "7",
            "--out",
            random.to_str().unwrap(),
        ])?;
        let args = [
            "sweep",
            state,
            "--axis",
            "alpha:2:5:31",
            "--axis",
            "k:0.5:1:11",
            "--delta",
            "2",
        ];
        let mut args = args.to_vec();
        args.extend([
            "--bound",
            "Cor1",
            "--bound",
            "Ref31",
            "--out",
            sweep.to_str().unwrap(),
        ]);
        run_cli(&args)?;
        files.push((
            std::fs::read(&random).unwrap(),
            std::fs::read(&sweep).unwrap(),
        ));
    }
    ensure(files[0].0 == files[1].0, || {
        "random CSV differs between runs".into()
    })?;
    ensure(files[0].1 == files[1].1, || {
        "sweep CSV differs between runs".into()
    })?;
    ensure(
        !files[0].0.is_empty() && !files[0].1.contains(&b'\r'),
        || "bad CSV bytes".into(),
    )?;
    Ok(format!(
        "random {} bytes and sweep {} bytes identical across two runs",
        files[0].0.len(),
        files[0].1.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("golden example 1 profile", example1_profile),
        ("golden example 2 profile and total", example2_profile),
        ("three-qubit bounds on example 1", cor1_example1),
        ("S2 - S1 anchor on example 2", difference_anchor),
        ("scalar inequality grids", inequality_grids),
        ("superadditivity fuzz", superadditivity),
        ("bound validity fuzz", bound_validity),
        ("degeneracy identities", degeneracy),
        ("refinement ordering", refinement),
        ("alpha sweep on example 1", alpha_sweep),
        ("determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into())
                .into())
        });
        match result {
            Ok(detail) => println!("acceptance {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
