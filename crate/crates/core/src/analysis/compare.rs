use crate::engine::pack_bin;
use crate::model::{BinSpec, ItemSpec, Metrics};

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub bin: BinSpec,
    pub with_compression: Metrics,
    pub without_compression: Metrics,
}

impl ComparisonRow {
    pub fn delta_utilization(&self) -> f64 {
        self.with_compression.utilization - self.without_compression.utilization
    }

    pub fn delta_item_count(&self) -> i64 {
        self.with_compression.item_count as i64 - self.without_compression.item_count as i64
    }

    pub fn delta_initial_volume(&self) -> f64 {
        self.with_compression.initial_volume - self.without_compression.initial_volume
    }

    pub fn delta_true_volume(&self) -> f64 {
        self.with_compression.true_volume - self.without_compression.true_volume
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = vec![format!(
            "{:<12} {:>9} {:>9} {:>9} {:>6} {:>6} {:>6} {:>12} {:>12}",
            "bin", "util_on", "util_off", "d_util", "n_on", "n_off", "d_n", "iv_on", "iv_off"
        )];
        for row in &self.rows {
            let (on, off) = (&row.with_compression, &row.without_compression);
            lines.push(format!(
                "{:<12} {:>9.4} {:>9.4} {:>+9.4} {:>6} {:>6} {:>+6} {:>12.2} {:>12.2}",
                row.bin.name,
                on.utilization,
                off.utilization,
                row.delta_utilization(),
                on.item_count,
                off.item_count,
                row.delta_item_count(),
                on.initial_volume,
                off.initial_volume
            ));
        }
        lines
    }
}

/// Packs `items` into each bin twice, with and without compression.
pub fn compare_compression(items: &[ItemSpec], bins: &[BinSpec]) -> Comparison {
    let rows = bins
        .iter()
        .map(|bin| ComparisonRow {
            bin: bin.clone(),
            with_compression: pack_bin(items, bin, true).metrics,
            without_compression: pack_bin(items, bin, false).metrics,
        })
        .collect();
    Comparison { rows }
}
