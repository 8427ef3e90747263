//! Circuit executions needed per structure: one computational-basis
//! measurement setting for guided sampling versus an iterative VQE that
//! measures every Pauli basis at every optimizer step.

use cvqe::pipeline::measurement_cost;

fn main() {
    let q = 14;
    let gsa = measurement_cost(q, 1, Some(1), 200);
    println!("guided sampling, Q = {q}: {} executions", gsa.cvqe);

    println!("\n{:>10} {:>8} {:>18}", "iterations", "shots", "VQE executions");
    for (iterations, shots) in [(10, 1000), (100, 1000), (100, 10_000), (1000, 1000)] {
        let c = measurement_cost(q, iterations, None, shots);
        println!("{iterations:>10} {shots:>8} {:>18.3e}", c.vqe as f64);
    }
    let reference = measurement_cost(q, 100, None, 1000);
    println!(
        "\nbases (2Q)^4 = {}; reference VQE / guided sampling = {:.1e} ({:.1} orders of magnitude)",
        (2 * q).pow(4),
        reference.vqe as f64 / gsa.cvqe as f64,
        (reference.vqe as f64 / gsa.cvqe as f64).log10()
    );
}
