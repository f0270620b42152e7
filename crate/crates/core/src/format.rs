//! On-disk documents: instances, solutions (which double as loading
//! scenes for external viewers) and compression comparison reports.
//!
//! All documents are pretty-printed JSON carrying a `format_version`.
//! Lengths are cm, weights kg, and every real value is rounded to six
//! decimal places when written.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{compute_metrics, Comparison, ComparisonRow};
use crate::model::{
    BinSpec, ClassId, Dims, ItemClass, ItemSpec, Metrics, ModelError, PackingSolution, PlacedItem,
    Point, RotationType,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("{record}: {source}")]
    Invalid {
        record: String,
        #[source]
        source: ModelError,
    },
}

pub fn round6(v: f64) -> f64 {
    let r = (v * 1e6).round() / 1e6;
    // avoid writing -0.0
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinRecord {
    pub name: String,
    pub depth: f64,
    pub width: f64,
    pub height: f64,
    pub max_weight: f64,
}

impl From<&BinSpec> for BinRecord {
    fn from(b: &BinSpec) -> Self {
        BinRecord {
            name: b.name.clone(),
            depth: round6(b.depth),
            width: round6(b.width),
            height: round6(b.height),
            max_weight: round6(b.max_weight),
        }
    }
}

impl BinRecord {
    pub fn to_spec(&self) -> Result<BinSpec, FormatError> {
        BinSpec::new(
            self.name.clone(),
            self.depth,
            self.width,
            self.height,
            self.max_weight,
        )
        .map_err(|source| FormatError::Invalid {
            record: format!("bin '{}'", self.name),
            source,
        })
    }
}

/// One line of an item table. `compressibility` and
/// `max_compression_ratio` default to the class's catalog values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemRecord {
    pub name: String,
    pub depth: f64,
    pub width: f64,
    pub height: f64,
    pub weight: f64,
    pub class_id: u8,
    #[serde(default = "one")]
    pub quantity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compressibility: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_compression_ratio: Option<f64>,
}

fn one() -> usize {
    1
}

impl ItemRecord {
    pub fn from_spec(spec: &ItemSpec, quantity: usize) -> Self {
        let standard = ItemClass::standard(spec.class.class_id);
        let custom = spec.class != standard;
        ItemRecord {
            name: spec.name.clone(),
            depth: round6(spec.dims.depth),
            width: round6(spec.dims.width),
            height: round6(spec.dims.height),
            weight: round6(spec.weight),
            class_id: spec.class.class_id.index(),
            quantity,
            compressibility: custom.then(|| round6(spec.class.compressibility)),
            max_compression_ratio: custom.then(|| round6(spec.class.max_compression_ratio)),
        }
    }

    /// Builds the spec for copy number `instance_index`.
    pub fn to_spec(&self, instance_index: usize) -> Result<ItemSpec, FormatError> {
        let invalid = |source| FormatError::Invalid {
            record: format!("item '{}'", self.name),
            source,
        };
        let class_id = ClassId::try_from(self.class_id).map_err(invalid)?;
        let (c, r) = class_id.default_params();
        let class = ItemClass::new(
            class_id,
            self.compressibility.unwrap_or(c),
            self.max_compression_ratio.unwrap_or(r),
        )
        .map_err(invalid)?;
        ItemSpec::new(
            self.name.clone(),
            Dims::new(self.depth, self.width, self.height),
            self.weight,
            class,
            instance_index,
        )
        .map_err(invalid)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub format_version: u32,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub bins: Vec<BinRecord>,
    pub items: Vec<ItemRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub initial_volume: f64,
    pub true_volume: f64,
    pub item_count: usize,
    pub utilization: f64,
    pub total_weight: f64,
}

impl From<&Metrics> for MetricsRecord {
    fn from(m: &Metrics) -> Self {
        MetricsRecord {
            initial_volume: round6(m.initial_volume),
            true_volume: round6(m.true_volume),
            item_count: m.item_count,
            utilization: round6(m.utilization),
            total_weight: round6(m.total_weight),
        }
    }
}

/// One loading instruction. Besides the placement itself it carries the
/// item's catalog data so a solution file can be validated on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub index: usize,
    pub item_name: String,
    pub rotation_type: u8,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub rot_depth: f64,
    pub rot_width: f64,
    pub rot_height: f64,
    pub true_height: f64,
    pub true_compression: f64,
    pub depth: f64,
    pub width: f64,
    pub height: f64,
    pub weight: f64,
    pub class_id: u8,
    pub compressibility: f64,
    pub max_compression_ratio: f64,
    pub top_load: f64,
    /// Index of the step this item rests on; absent for the floor.
    #[serde(default)]
    pub support: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub format_version: u32,
    pub bin: BinRecord,
    pub compression: bool,
    pub steps: Vec<StepRecord>,
    pub unpacked: Vec<ItemRecord>,
    pub metrics: MetricsRecord,
}

impl SolutionDoc {
    pub fn from_solution(solution: &PackingSolution) -> Self {
        let steps = solution
            .steps
            .iter()
            .enumerate()
            .map(|(index, p)| StepRecord {
                index,
                item_name: p.spec.name.clone(),
                rotation_type: p.rotation.type_id(),
                x: round6(p.position.x),
                y: round6(p.position.y),
                z: round6(p.position.z),
                rot_depth: round6(p.rot_dims.depth),
                rot_width: round6(p.rot_dims.width),
                rot_height: round6(p.rot_dims.height),
                true_height: round6(p.true_height),
                true_compression: round6(p.true_compression),
                depth: round6(p.spec.dims.depth),
                width: round6(p.spec.dims.width),
                height: round6(p.spec.dims.height),
                weight: round6(p.spec.weight),
                class_id: p.spec.class.class_id.index(),
                compressibility: round6(p.spec.class.compressibility),
                max_compression_ratio: round6(p.spec.class.max_compression_ratio),
                top_load: round6(p.top_load),
                support: p.under,
            })
            .collect();
        SolutionDoc {
            format_version: FORMAT_VERSION,
            bin: BinRecord::from(&solution.bin),
            compression: solution.compression,
            steps,
            unpacked: solution
                .unpacked
                .iter()
                .map(|s| ItemRecord::from_spec(s, 1))
                .collect(),
            metrics: MetricsRecord::from(&solution.metrics),
        }
    }

    /// Rebuilds the in-memory solution; metrics are recomputed from the
    /// steps rather than trusted.
    pub fn to_solution(&self) -> Result<PackingSolution, FormatError> {
        check_version(self.format_version)?;
        let bin = self.bin.to_spec()?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            let record = format!("step {} ('{}')", i, s.item_name);
            let invalid = |source| FormatError::Invalid {
                record: record.clone(),
                source,
            };
            let class_id = ClassId::try_from(s.class_id).map_err(invalid)?;
            let class = ItemClass::new(class_id, s.compressibility, s.max_compression_ratio)
                .map_err(invalid)?;
            let spec = ItemSpec::new(
                s.item_name.clone(),
                Dims::new(s.depth, s.width, s.height),
                s.weight,
                class,
                i,
            )
            .map_err(invalid)?;
            let rotation = RotationType::new(s.rotation_type).map_err(invalid)?;
            steps.push(PlacedItem {
                spec,
                rotation,
                position: Point::new(s.x, s.y, s.z),
                rot_dims: Dims::new(s.rot_depth, s.rot_width, s.rot_height),
                true_height: s.true_height,
                true_compression: s.true_compression,
                top_load: s.top_load,
                under: s.support.filter(|&u| u < self.steps.len() && u != i),
                over: Vec::new(),
            });
        }
        for i in 0..steps.len() {
            if let Some(u) = steps[i].under {
                steps[u].over.push(i);
            }
        }
        let unpacked = self
            .unpacked
            .iter()
            .enumerate()
            .map(|(i, r)| r.to_spec(steps.len() + i))
            .collect::<Result<Vec<_>, _>>()?;
        let mut solution = PackingSolution {
            bin,
            compression: self.compression,
            steps,
            unpacked,
            metrics: Metrics::default(),
        };
        solution.metrics = compute_metrics(&solution);
        Ok(solution)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub bin: String,
    pub with_compression: MetricsRecord,
    pub without_compression: MetricsRecord,
    pub delta_utilization: f64,
    pub delta_item_count: i64,
    pub delta_initial_volume: f64,
    pub delta_true_volume: f64,
}

impl From<&ComparisonRow> for ComparisonRecord {
    fn from(row: &ComparisonRow) -> Self {
        ComparisonRecord {
            bin: row.bin.name.clone(),
            with_compression: MetricsRecord::from(&row.with_compression),
            without_compression: MetricsRecord::from(&row.without_compression),
            delta_utilization: round6(row.delta_utilization()),
            delta_item_count: row.delta_item_count(),
            delta_initial_volume: round6(row.delta_initial_volume()),
            delta_true_volume: round6(row.delta_true_volume()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonDoc {
    pub format_version: u32,
    pub label: String,
    pub rows: Vec<ComparisonRecord>,
    /// Plain-text table, one line per entry.
    pub summary: Vec<String>,
}

impl ComparisonDoc {
    pub fn from_comparison(label: &str, comparison: &Comparison) -> Self {
        ComparisonDoc {
            format_version: FORMAT_VERSION,
            label: label.to_string(),
            rows: comparison.rows.iter().map(ComparisonRecord::from).collect(),
            summary: comparison.summary_lines(),
        }
    }
}

pub(crate) fn check_version(v: u32) -> Result<(), FormatError> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(FormatError::Version(v))
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn solution_to_string(solution: &PackingSolution) -> String {
    to_pretty(&SolutionDoc::from_solution(solution))
}

pub fn solution_from_str(text: &str) -> Result<PackingSolution, FormatError> {
    let doc: SolutionDoc = serde_json::from_str(text)?;
    doc.to_solution()
}

pub fn load_solution(path: impl AsRef<std::path::Path>) -> Result<PackingSolution, FormatError> {
    solution_from_str(&std::fs::read_to_string(path)?)
}

pub fn save_solution(
    solution: &PackingSolution,
    path: impl AsRef<std::path::Path>,
) -> Result<(), FormatError> {
    std::fs::write(path, solution_to_string(solution))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::pack_bin;
    use crate::instances::catalog_instance;

    #[test]
    fn round6_rounds() {
        assert_eq!(round6(10.799999999999999), 10.8);
        assert_eq!(round6(1.0000004), 1.0);
        assert_eq!(round6(-0.0000001), 0.0);
        assert!(round6(-0.0000001).is_sign_positive());
    }

    #[test]
    fn solution_document_round_trip() {
        let inst = catalog_instance();
        let sol = pack_bin(&inst.items, &inst.bins[0], true);
        let text = solution_to_string(&sol);
        let back = solution_from_str(&text).unwrap();
        assert_eq!(back.steps.len(), sol.steps.len());
        assert_eq!(back.unpacked.len(), sol.unpacked.len());
        assert!((back.metrics.utilization - sol.metrics.utilization).abs() < 1e-5);
        // writing the re-read solution gives the same bytes
        assert_eq!(solution_to_string(&back), text);
    }

    #[test]
    fn rejects_unknown_version_and_bad_records() {
        let inst = catalog_instance();
        let sol = pack_bin(&inst.items[..3], &inst.bins[0], true);
        let mut doc = SolutionDoc::from_solution(&sol);
        doc.format_version = 99;
        assert!(matches!(doc.to_solution(), Err(FormatError::Version(99))));

        let mut doc = SolutionDoc::from_solution(&sol);
        doc.steps[0].weight = 0.0;
        let err = doc.to_solution().unwrap_err().to_string();
        assert!(err.contains("step 0"), "{err}");

        assert!(matches!(
            solution_from_str("{ not json"),
            Err(FormatError::Parse(_))
        ));
    }
}
