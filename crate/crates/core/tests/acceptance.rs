//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stepode::demos;
use stepode::solver::{check_solvability, DEFAULT_EPS, NO_UNIQUE_SOLUTION};
use stepode::trig::min_nodes;
use stepode::verify::{default_delta, Reference};
use stepode::{
    analyze, apply_operator_piecewise, convergence_study, omega, oracle_order2, residual_grid,
    sigma, solve_constant, solve_piecewise, Error, OdeProblem, Partition, StepFunction, TrigSeries,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })?;
    Ok(elapsed)
}

fn rel_close(a: f64, b: f64, scale: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * scale
}

/// Psi - Psi'' = 1/2 + sin x.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = demos::demo44();
    let sol = solve_piecewise(&p, 20).map_err(|e| e.to_string())?;
    ensure(sol.cells().len() == 1, || "expected one cell".into())?;
    let psi = sol.cell(0);
    let mut worst_coeff: f64 = (psi.half_c0() - 0.5).abs();
    for k in 1..=20 {
        let (c, d) = psi.harmonic(k);
        let want = if k == 1 { (0.0, 0.5) } else { (0.0, 0.0) };
        worst_coeff = worst_coeff.max((c - want.0).abs()).max((d - want.1).abs());
    }
    ensure(worst_coeff <= 1e-12, || {
        format!("coefficient error {worst_coeff:e}")
    })?;

    let grid: Vec<f64> = (0..200).map(|i| -PI + PI * i as f64 / 100.0).collect();
    let mut worst_grid: f64 = 0.0;
    for &x in &grid {
        let v = sol.eval(x).map_err(|e| e.to_string())?;
        worst_grid = worst_grid.max((v - demos::demo44_exact(x)).abs());
    }
    ensure(worst_grid <= 1e-10, || {
        format!("grid deviation {worst_grid:e}")
    })?;
    let t = within_time(start, Duration::from_secs(1))?;
    Ok(format!(
        "coefficient error {worst_coeff:e} <= 1e-12, grid deviation {worst_grid:e} <= 1e-10, {t:?}"
    ))
}

/// Order-22 problem with step coefficients on the quarters.
fn criterion_2() -> Outcome {
    let start = Instant::now();
    let p = demos::demo41();
    let sol = solve_piecewise(&p, 20).map_err(|e| e.to_string())?;
    ensure(sol.cells().len() == 4, || "expected four cells".into())?;
    let report = residual_grid(&p, &sol, 200, default_delta(PI)).map_err(|e| e.to_string())?;
    for b in [-PI / 2.0, 0.0, PI / 2.0] {
        ensure(
            report
                .grid
                .iter()
                .all(|x| (x - b).abs() > default_delta(PI)),
            || format!("grid contains breakpoint {b}"),
        )?;
    }
    ensure(report.grid.len() == 196, || {
        format!("expected 196 grid points, got {}", report.grid.len())
    })?;
    ensure(report.sup_norm <= 1e-8, || {
        format!("sup_norm {:e}", report.sup_norm)
    })?;

    let image = apply_operator_piecewise(&p, &sol).map_err(|e| e.to_string())?;
    let f = p.forcing();
    let mut worst: f64 = 0.0;
    for cell in image.cells() {
        let mut pairs = vec![(cell.half_c0(), f.half_c0())];
        for k in 1..=cell.harmonics() {
            let (c, d) = cell.harmonic(k);
            let (fc, fd) = f.harmonic(k);
            pairs.push((c, fc));
            pairs.push((d, fd));
        }
        for (got, want) in pairs {
            // scale by the largest forcing coefficient where the target is zero
            let scale = if want == 0.0 { 2.0 } else { want.abs() };
            worst = worst.max((got - want).abs() / scale);
        }
    }
    ensure(worst <= 1e-9, || {
        format!("operator image relative error {worst:e}")
    })?;
    let t = within_time(start, Duration::from_secs(1))?;
    Ok(format!(
        "sup_norm {:e} <= 1e-8 on {} points, L(psi) = f to {worst:e} <= 1e-9, {t:?}",
        report.sup_norm,
        report.grid.len()
    ))
}

fn random_problem(rng: &mut ChaCha8Rng) -> Option<OdeProblem> {
    let l = rng.gen_range(0.5..4.0);
    let order = 2 * rng.gen_range(1..=5);
    let harmonics = rng.gen_range(1..=32);
    let cells = rng.gen_range(1..=6);

    let mut interior: Vec<f64> = (1..cells).map(|_| rng.gen_range(-l..l)).collect();
    interior.sort_by(f64::total_cmp);
    if interior.windows(2).any(|w| w[1] - w[0] < 1e-6 * l) {
        return None;
    }
    let mut coefficients = Vec::with_capacity(order + 1);
    for n in 0..=order {
        // each coefficient uses a random subset of the shared breakpoints
        let mut bps = vec![-l];
        bps.extend(interior.iter().copied().filter(|_| rng.gen_bool(0.6)));
        bps.push(l);
        let values = (0..bps.len() - 1)
            .map(|_| {
                if n == 0 {
                    rng.gen_range(0.5..2.0)
                } else {
                    rng.gen_range(-1.0..1.0)
                }
            })
            .collect();
        coefficients.push(StepFunction::from_breakpoints(l, bps, values).ok()?);
    }
    let forcing = TrigSeries::new(
        l,
        rng.gen_range(-1.0..1.0),
        (0..harmonics).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        (0..harmonics).map(|_| rng.gen_range(-1.0..1.0)).collect(),
    )
    .ok()?;
    OdeProblem::new(coefficients, forcing).ok()
}

/// Randomized operator-inverse identities.
fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let (mut accepted, mut rejected, mut checked) = (0, 0, 0usize);
    let mut worst: f64 = 0.0;
    while accepted < 200 {
        let Some(p) = random_problem(&mut rng) else {
            continue;
        };
        let k_max = p.forcing().harmonics();
        if !check_solvability(&p, k_max, DEFAULT_EPS).ok {
            rejected += 1;
            continue;
        }
        let sol = solve_piecewise(&p, k_max).map_err(|e| e.to_string())?;
        let partition: &Partition = sol.partition();
        ensure(partition.num_cells() <= 6, || "more than six cells".into())?;
        let l = p.half_length();
        for (cell, psi) in sol.cells().iter().enumerate() {
            let a = p
                .coefficients_at(partition.midpoint(cell))
                .map_err(|e| e.to_string())?;
            ensure(
                rel_close(
                    a[0] * psi.half_c0(),
                    p.forcing().half_c0(),
                    p.forcing().half_c0().abs(),
                    1e-12,
                ),
                || format!("constant term mismatch on cell {cell}"),
            )?;
            for k in 1..=k_max {
                let (alpha, beta) = psi.harmonic(k);
                let (c, d) = p.forcing().harmonic(k);
                let (s, o) = (sigma(&a, k, l), omega(&a, k, l));
                let scale = c.abs().max(d.abs());
                let e1 = (alpha * s + beta * o - c).abs() / scale;
                let e2 = (beta * s - alpha * o - d).abs() / scale;
                worst = worst.max(e1).max(e2);
                checked += 1;
            }
        }
        accepted += 1;
    }
    ensure(worst <= 1e-12, || {
        format!("worst relative identity error {worst:e}")
    })?;
    let t = within_time(start, Duration::from_secs(10))?;
    Ok(format!(
        "{accepted} problems ({rejected} resonant draws rejected), {checked} cell/harmonic pairs, worst {worst:e} <= 1e-12, {t:?}"
    ))
}

/// Constant-coefficient solver against the undetermined-coefficients oracle.
fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst: f64 = 0.0;
    let mut accepted = 0;
    while accepted < 100 {
        let l = rng.gen_range(0.5..4.0);
        let a0 = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let a2 = rng.gen_range(-1.0..1.0);
        let k_max = rng.gen_range(1..=32);
        let resonant = (1..=k_max).any(|k| {
            let w = k as f64 * PI / l;
            (a0 - a2 * w * w).abs() < 1e-6 * a0.abs().max(a2.abs() * w * w)
        });
        if resonant {
            continue;
        }
        let f = TrigSeries::new(
            l,
            rng.gen_range(-1.0..1.0),
            (0..k_max).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            (0..k_max).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
        .map_err(|e| e.to_string())?;
        let ours = solve_constant(&[a0, 0.0, a2], &f).map_err(|e| e.to_string())?;
        let oracle = oracle_order2(a0, a2, &f).map_err(|e| e.to_string())?;
        let mut pairs = vec![(ours.half_c0(), oracle.half_c0())];
        pairs.extend(
            ours.cos_coeffs()
                .iter()
                .copied()
                .zip(oracle.cos_coeffs().iter().copied()),
        );
        pairs.extend(
            ours.sin_coeffs()
                .iter()
                .copied()
                .zip(oracle.sin_coeffs().iter().copied()),
        );
        for (x, y) in pairs {
            let scale = x.abs().max(y.abs());
            if scale > 0.0 {
                worst = worst.max((x - y).abs() / scale);
            }
        }
        accepted += 1;
    }
    ensure(worst <= 1e-12, || {
        format!("worst relative difference {worst:e}")
    })?;
    Ok(format!(
        "100 instances, worst relative difference {worst:e} <= 1e-12"
    ))
}

/// Fourier analysis of the sawtooth and trig-polynomial round trip.
fn criterion_5() -> Outcome {
    let k_max = 10;
    let f = analyze(|x| x, PI, k_max, min_nodes(k_max)).map_err(|e| e.to_string())?;
    let mut worst_saw: f64 = 0.0;
    for k in 1..=k_max {
        let exact = 2.0 * if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
        worst_saw = worst_saw.max((f.harmonic(k).1 - exact).abs());
    }
    ensure(worst_saw <= 1e-8, || {
        format!("sawtooth d_k error {worst_saw:e}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut worst_trip: f64 = 0.0;
    for _ in 0..50 {
        let l = rng.gen_range(0.5..4.0);
        let k = rng.gen_range(1..=20);
        let t = TrigSeries::new(
            l,
            rng.gen_range(-1.0..1.0),
            (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
        .map_err(|e| e.to_string())?;
        let back = analyze(|x| t.eval(x), l, k, min_nodes(k)).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let x = rng.gen_range(-l..l);
            worst_trip = worst_trip.max((back.eval(x) - t.eval(x)).abs());
        }
    }
    ensure(worst_trip <= 1e-10, || {
        format!("round trip error {worst_trip:e}")
    })?;
    Ok(format!(
        "sawtooth d_k error {worst_saw:e} <= 1e-8, round trip {worst_trip:e} <= 1e-10"
    ))
}

/// Frozen-coefficient solutions converge at the 1/S rate.
fn criterion_6() -> Outcome {
    let boxed = demos::convergence_coefficients();
    let fns: Vec<&dyn Fn(f64) -> f64> = boxed.iter().map(|b| b.as_ref()).collect();
    let table = convergence_study(
        &fns,
        PI,
        &demos::convergence_forcing(),
        &[4, 8, 16, 32, 64],
        20,
        &Reference::Pointwise,
    )
    .map_err(|e| e.to_string())?;
    let d = table.distances();
    ensure(table.is_strictly_decreasing(), || {
        format!("not decreasing: {d:?}")
    })?;
    let mean = table.mean_ratio().unwrap_or(0.0);
    ensure(mean >= 1.5, || format!("mean halving ratio {mean}"))?;
    let shown: Vec<String> = d.iter().map(|v| format!("{v:.3e}")).collect();
    Ok(format!(
        "distances [{}], mean halving ratio {mean:.4} >= 1.5",
        shown.join(", ")
    ))
}

/// Resonant harmonic is reported and the CLI exits with code 3.
fn criterion_7() -> Outcome {
    let f = TrigSeries::new(PI, 0.0, vec![1.0], vec![0.0]).map_err(|e| e.to_string())?;
    let p = OdeProblem::constant(&[1.0, 0.0, 1.0], f).map_err(|e| e.to_string())?;
    let report = check_solvability(&p, 20, DEFAULT_EPS);
    ensure(!report.ok, || "report says ok".into())?;
    let flagged: Vec<usize> = report.resonant_pairs.iter().map(|r| r.harmonic).collect();
    ensure(flagged == vec![1], || {
        format!("flagged harmonics {flagged:?}")
    })?;
    ensure(
        matches!(solve_piecewise(&p, 20), Err(Error::Resonant(_))),
        || "solver did not refuse".into(),
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("resonant.json");
    std::fs::write(&path, stepode::cli::canonical_json(&p, Some(20))).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_stepode"))
        .args(["solve", "--problem"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(3), || {
        format!("exit status {:?}", out.status)
    })?;
    ensure(
        stderr.contains("has no solution or has infinitely many solutions")
            && stderr.contains(NO_UNIQUE_SOLUTION),
        || format!("stderr: {stderr}"),
    )?;
    Ok("k = 1 flagged, CLI exit code 3 with the no-unique-solution message".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 constant-coefficient demo", criterion_1),
        ("2 step-coefficient demo", criterion_2),
        ("3 operator-inverse property suite", criterion_3),
        ("4 oracle equivalence", criterion_4),
        ("5 Fourier analysis oracle", criterion_5),
        ("6 convergence study", criterion_6),
        ("7 resonance handling", criterion_7),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("{} of 7 criteria passed", 7 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
