//! Fourier coefficients of a supplied forcing, evaluation and exact
//! differentiation of the resulting series.

use std::error::Error;
use std::f64::consts::PI;

use stepode::trig::min_nodes;
use stepode::{analyze, analyze_samples};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let harmonics = 10;
    let saw = analyze(|x| x, PI, harmonics, min_nodes(harmonics))?;
    println!("g(x) = x on [-pi, pi): sine coefficients against 2(-1)^(k+1)/k");
    for k in 1..=harmonics {
        let exact = 2.0 * if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
        println!(
            "  k = {k:2}  d_k = {:+.15}  error {:.1e}",
            saw.harmonic(k).1,
            saw.harmonic(k).1 - exact
        );
    }

    // forcing known only through samples on [-l, l)
    let l = 2.0;
    let n = 64;
    let samples: Vec<f64> = (0..n)
        .map(|j| {
            let x = -l + 2.0 * l * j as f64 / n as f64;
            (PI * x / l).cos().powi(3)
        })
        .collect();
    let f = analyze_samples(&samples, l, 8)?;
    // cos^3 = (3 cos t + cos 3t) / 4
    println!(
        "cos^3: c_1 = {:.15}, c_3 = {:.15}",
        f.harmonic(1).0,
        f.harmonic(3).0
    );

    let df = f.derivative(1);
    let x = 0.3;
    let fd = (f.eval(x + 1e-6) - f.eval(x - 1e-6)) / 2e-6;
    println!(
        "f'(0.3): exact {:.10}, central difference {:.10}",
        df.eval(x),
        fd
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
