use crate::model::{Metrics, PackingSolution};

/// Initial (uncompressed) volume, true volume, count, utilization
/// (true volume over bin volume) and weight of the packed items.
pub fn compute_metrics(solution: &PackingSolution) -> Metrics {
    let initial_volume = solution.steps.iter().map(|p| p.spec.initial_volume()).sum();
    let true_volume: f64 = solution.steps.iter().map(|p| p.true_volume()).sum();
    Metrics {
        initial_volume,
        true_volume,
        item_count: solution.steps.len(),
        utilization: true_volume / solution.bin.volume(),
        total_weight: solution.steps.iter().map(|p| p.spec.weight).sum(),
    }
}
