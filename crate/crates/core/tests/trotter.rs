mod common;

use common::fixture;
use cvqe::fermion::load_fcidump;
use cvqe::qubit_map::{cutoff_filter, jordan_wigner};
use cvqe::simulator::{exact_guiding_state, trotter_guiding_state, EvolutionPlan};

fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

fn trotter_errors(time: f64) -> (Vec<f64>, Vec<f64>) {
    let (h, meta) = load_fcidump(fixture("h2_r0.74.fcidump")).unwrap();
    let ps = jordan_wigner(&cutoff_filter(&h, 0.0).unwrap()).unwrap();
    let exact = exact_guiding_state(&h, &meta, time).unwrap();
    let ks = [4usize, 8, 16, 32, 64];
    let errs = ks
        .iter()
        .map(|&k| {
            let psi = trotter_guiding_state(&ps, &meta, &EvolutionPlan::new(time, k).unwrap()).unwrap();
            psi.distance(&exact).unwrap()
        })
        .collect();
    (ks.iter().map(|&k| k as f64).collect(), errs)
}

#[test]
fn trotter_error_decays_as_inverse_steps() {
    for time in [2.0, 5.0] {
        let (ks, errs) = trotter_errors(time);
        let slope = log_log_slope(&ks, &errs);
        assert!((-1.2..=-0.8).contains(&slope), "T={time}: slope {slope}, errors {errs:?}");
    }
}

#[test]
fn factor_weights_sum_to_half_time() {
    for k in 1..40 {
        let plan = EvolutionPlan::new(3.0, k).unwrap();
        let w = plan.factor_weights();
        assert_eq!(w.len(), k);
        assert!((w.iter().sum::<f64>() - 1.5).abs() < 1e-12);
    }
}

#[test]
fn zero_time_returns_reference() {
    let (h, meta) = load_fcidump(fixture("h2_r0.74.fcidump")).unwrap();
    let ps = jordan_wigner(&h).unwrap();
    let psi = trotter_guiding_state(&ps, &meta, &EvolutionPlan::new(0.0, 1).unwrap()).unwrap();
    assert_eq!(psi.amplitude(meta.hf_occupation).norm(), 1.0);
}
