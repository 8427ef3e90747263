/// Circuit executions per structure for the guided-sampling run and for a
/// conventional iterative VQE reference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementCost {
    pub cvqe: u64,
    pub vqe: u64,
}

impl MeasurementCost {
    pub fn ratio(&self) -> f64 {
        self.vqe as f64 / self.cvqe as f64
    }

    /// `log10` of [`ratio`](Self::ratio).
    pub fn orders_of_magnitude(&self) -> f64 {
        self.ratio().log10()
    }
}

/// CVQE needs `bases × shots` executions; the iterative reference needs
/// `iterations × bases × shots`. When `bases` is `None` the CVQE side uses
/// the single computational basis and the reference uses `(2Q)^4`.
pub fn measurement_cost(qubits: u64, iterations: u64, bases: Option<u64>, shots: u64) -> MeasurementCost {
    let cvqe = bases.unwrap_or(1) * shots;
    let vqe = iterations * bases.unwrap_or_else(|| (2 * qubits).pow(4)) * shots;
    MeasurementCost { cvqe, vqe }
}
