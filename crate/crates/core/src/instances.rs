//! Benchmark instances: the fresh-produce catalog, a seeded random
//! generator and instance file I/O.

use std::path::Path;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::{
    check_version, to_pretty, BinRecord, FormatError, InstanceDoc, ItemRecord, FORMAT_VERSION,
};
use crate::model::{BinSpec, ClassId, ItemSpec};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("invalid generator config: {0}")]
    Config(String),
}

impl From<std::io::Error> for InstanceError {
    fn from(e: std::io::Error) -> Self {
        InstanceError::Format(FormatError::Io(e))
    }
}

impl From<serde_json::Error> for InstanceError {
    fn from(e: serde_json::Error) -> Self {
        InstanceError::Format(FormatError::Parse(e))
    }
}

/// Candidate bins plus the expanded item list (one record per physical
/// item, `instance_index` = position in the list).
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub label: String,
    pub seed: Option<u64>,
    pub bins: Vec<BinSpec>,
    pub items: Vec<ItemSpec>,
}

impl Instance {
    /// Case-insensitive lookup by full name ("Small bin") or first word
    /// ("small").
    pub fn bin(&self, name: &str) -> Option<&BinSpec> {
        let wanted = name.trim().to_ascii_lowercase();
        self.bins.iter().find(|b| {
            let full = b.name.to_ascii_lowercase();
            full == wanted || full.split_whitespace().next() == Some(wanted.as_str())
        })
    }

    pub fn bin_names(&self) -> Vec<String> {
        self.bins.iter().map(|b| short_name(&b.name)).collect()
    }

    pub fn to_doc(&self) -> InstanceDoc {
        let mut items: Vec<ItemRecord> = Vec::new();
        let mut last: Option<&ItemSpec> = None;
        for spec in &self.items {
            match (last, items.last_mut()) {
                (Some(prev), Some(rec)) if same_kind(prev, spec) => rec.quantity += 1,
                _ => items.push(ItemRecord::from_spec(spec, 1)),
            }
            last = Some(spec);
        }
        InstanceDoc {
            format_version: FORMAT_VERSION,
            label: self.label.clone(),
            seed: self.seed,
            bins: self.bins.iter().map(BinRecord::from).collect(),
            items,
        }
    }

    pub fn from_doc(doc: &InstanceDoc) -> Result<Self, InstanceError> {
        check_version(doc.format_version)?;
        let bins = doc
            .bins
            .iter()
            .map(BinRecord::to_spec)
            .collect::<Result<Vec<_>, _>>()?;
        let mut items = Vec::new();
        for record in &doc.items {
            for _ in 0..record.quantity {
                items.push(record.to_spec(items.len())?);
            }
        }
        Ok(Instance {
            label: doc.label.clone(),
            seed: doc.seed,
            bins,
            items,
        })
    }

    pub fn to_json(&self) -> String {
        to_pretty(&self.to_doc())
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let doc: InstanceDoc = serde_json::from_str(text)?;
        Instance::from_doc(&doc)
    }
}

fn short_name(name: &str) -> String {
    name.split_whitespace()
        .next()
        .unwrap_or(name)
        .to_ascii_lowercase()
}

fn same_kind(a: &ItemSpec, b: &ItemSpec) -> bool {
    a.name == b.name && a.dims == b.dims && a.weight == b.weight && a.class == b.class
}

pub fn catalog_bins() -> Vec<BinSpec> {
    [
        ("Small bin", 40.0, 40.0, 35.0, 55.0),
        ("Medium bin", 50.0, 45.0, 40.0, 65.0),
        ("Large bin", 60.0, 50.0, 45.0, 80.0),
        ("Larger bin", 70.0, 65.0, 60.0, 100.0),
    ]
    .into_iter()
    .map(|(n, d, w, h, m)| BinSpec::new(n, d, w, h, m).expect("catalog bins are valid"))
    .collect()
}

/// (name, depth, width, height, weight, quantity, class)
const CATALOG_ITEMS: [(&str, f64, f64, f64, f64, usize, ClassId); 7] = [
    (
        "Chinese Cabbage",
        25.0,
        12.0,
        12.0,
        1.2,
        50,
        ClassId::GreenVegetable,
    ),
    (
        "Little Cabbage",
        18.0,
        8.0,
        8.0,
        0.8,
        50,
        ClassId::GreenVegetable,
    ),
    ("Rice", 45.0, 40.0, 8.0, 5.0, 5, ClassId::Rice),
    ("Millet", 35.0, 30.0, 8.0, 2.5, 5, ClassId::Rice),
    (
        "Bebe Pumpkin",
        10.0,
        10.0,
        7.0,
        0.3,
        50,
        ClassId::MelonFruit,
    ),
    ("Potato", 12.0, 5.0, 5.0, 0.1, 50, ClassId::MelonFruit),
    ("Eggs", 30.0, 20.0, 20.0, 1.6, 5, ClassId::Other),
];

/// The four catalog bins and all 215 catalog items.
pub fn catalog_instance() -> Instance {
    let mut items = Vec::new();
    for (name, d, w, h, m, qty, class) in CATALOG_ITEMS {
        for _ in 0..qty {
            let idx = items.len();
            items.push(
                ItemSpec::standard(name, d, w, h, m, class, idx).expect("catalog items are valid"),
            );
        }
    }
    Instance {
        label: "catalog".to_string(),
        seed: None,
        bins: catalog_bins(),
        items,
    }
}

/// Parameters of [`random_instance`]. Ranges are inclusive `[min, max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub kind_count: usize,
    pub quantity: [usize; 2],
    /// Integer centimetres.
    pub dims: [u32; 2],
    pub weight: [f64; 2],
    /// Relative frequency of classes 0..=3.
    pub class_mix: [f64; 4],
    /// Bins written into the instance; the catalog bins when empty.
    pub bins: Vec<BinRecord>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            kind_count: 7,
            quantity: [1, 20],
            dims: [5, 45],
            weight: [0.1, 5.0],
            class_mix: [1.0; 4],
            bins: Vec::new(),
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), InstanceError> {
        let bad = |msg: String| Err(InstanceError::Config(msg));
        if self.kind_count == 0 {
            return bad("kind_count must be at least 1".into());
        }
        let [qmin, qmax] = self.quantity;
        if qmin == 0 || qmin > qmax {
            return bad(format!(
                "quantity range [{qmin}, {qmax}] must satisfy 1 <= min <= max"
            ));
        }
        let [dmin, dmax] = self.dims;
        if dmin == 0 || dmin > dmax {
            return bad(format!(
                "dims range [{dmin}, {dmax}] must satisfy 1 <= min <= max"
            ));
        }
        let [wmin, wmax] = self.weight;
        if !(wmin > 0.0 && wmin <= wmax && wmax.is_finite()) {
            return bad(format!(
                "weight range [{wmin}, {wmax}] must satisfy 0 < min <= max"
            ));
        }
        if self.class_mix.iter().any(|w| !(*w >= 0.0 && w.is_finite()))
            || self.class_mix.iter().sum::<f64>() <= 0.0
        {
            return bad("class_mix weights must be non-negative with a positive sum".into());
        }
        for b in &self.bins {
            b.to_spec()?;
        }
        Ok(())
    }
}

/// Deterministic for a given `(config, seed)`.
pub fn random_instance(config: &GeneratorConfig, seed: u64) -> Result<Instance, InstanceError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes =
        WeightedIndex::new(config.class_mix).map_err(|e| InstanceError::Config(e.to_string()))?;
    let mut items = Vec::new();
    for kind in 0..config.kind_count {
        let class = ClassId::ALL[classes.sample(&mut rng)];
        let mut dim = || f64::from(rng.gen_range(config.dims[0]..=config.dims[1]));
        let (d, w, h) = (dim(), dim(), dim());
        let raw = rng.gen_range(config.weight[0]..=config.weight[1]);
        let weight = ((raw * 100.0).round() / 100.0).max(0.01);
        let qty = rng.gen_range(config.quantity[0]..=config.quantity[1]);
        let name = format!("item-{kind}");
        for _ in 0..qty {
            let idx = items.len();
            items.push(
                ItemSpec::standard(name.clone(), d, w, h, weight, class, idx)
                    .map_err(|e| InstanceError::Config(e.to_string()))?,
            );
        }
    }
    let bins = if config.bins.is_empty() {
        catalog_bins()
    } else {
        config
            .bins
            .iter()
            .map(BinRecord::to_spec)
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(Instance {
        label: format!("random-{seed}"),
        seed: Some(seed),
        bins,
        items,
    })
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance, InstanceError> {
    Instance::from_json(&std::fs::read_to_string(path)?)
}

pub fn save_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<(), InstanceError> {
    std::fs::write(path, instance.to_json())?;
    Ok(())
}

pub fn load_config(path: impl AsRef<Path>) -> Result<GeneratorConfig, InstanceError> {
    let config: GeneratorConfig = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_matches_tables() {
        let inst = catalog_instance();
        assert_eq!(inst.bins.len(), 4);
        let small = &inst.bins[0];
        assert_eq!(
            (small.depth, small.width, small.height, small.max_weight),
            (40.0, 40.0, 35.0, 55.0)
        );
        let cabbages: Vec<_> = inst
            .items
            .iter()
            .filter(|i| i.name == "Chinese Cabbage")
            .collect();
        assert_eq!(cabbages.len(), 50);
        let c = cabbages[0];
        assert_eq!(
            (
                c.dims.depth,
                c.dims.width,
                c.dims.height,
                c.weight,
                c.class.class_id
            ),
            (25.0, 12.0, 12.0, 1.2, ClassId::GreenVegetable)
        );
        assert_eq!(inst.to_doc().items.len(), 7);
        assert_eq!(inst.items.len(), 215);
        assert!(inst
            .items
            .iter()
            .enumerate()
            .all(|(i, s)| s.instance_index == i));
    }

    #[test]
    fn catalog_totals() {
        let inst = catalog_instance();
        let weight: f64 = inst.items.iter().map(|i| i.weight).sum();
        assert!((weight - 165.5).abs() < 1e-9);
        // 50*3600 + 50*1152 + 5*14400 + 5*8400 + 50*700 + 50*300 + 5*12000
        let volume: f64 = inst.items.iter().map(|i| i.initial_volume()).sum();
        assert_eq!(volume, 461_600.0);
    }

    #[test]
    fn class_parameters() {
        let inst = catalog_instance();
        for item in &inst.items {
            let expected = match item.class.class_id {
                ClassId::GreenVegetable => (0.1, 0.3),
                ClassId::Rice => (0.03, 0.2),
                ClassId::MelonFruit => (0.01, 0.1),
                ClassId::Other => (0.0, 0.0),
            };
            assert_eq!(
                (item.class.compressibility, item.class.max_compression_ratio),
                expected
            );
        }
    }

    #[test]
    fn bin_lookup() {
        let inst = catalog_instance();
        assert_eq!(inst.bin("small").unwrap().name, "Small bin");
        assert_eq!(inst.bin("Larger bin").unwrap().name, "Larger bin");
        assert_eq!(inst.bin("LARGE").unwrap().name, "Large bin");
        assert!(inst.bin("gigantic").is_none());
        assert_eq!(inst.bin_names(), ["small", "medium", "large", "larger"]);
    }

    #[test]
    fn generator_is_deterministic() {
        let cfg = GeneratorConfig::default();
        let a = random_instance(&cfg, 42).unwrap();
        let b = random_instance(&cfg, 42).unwrap();
        assert_eq!(a, b);
        let c = random_instance(&cfg, 1).unwrap().to_json();
        let d = random_instance(&cfg, 2).unwrap().to_json();
        assert_ne!(c, d);
    }

    #[test]
    fn generator_respects_class_mix() {
        let cfg = GeneratorConfig {
            class_mix: [0.0, 0.0, 0.0, 1.0],
            ..Default::default()
        };
        let inst = random_instance(&cfg, 7).unwrap();
        assert!(!inst.items.is_empty());
        assert!(inst
            .items
            .iter()
            .all(|i| i.class.compressibility == 0.0 && i.class.max_compression_ratio == 0.0));
    }

    #[test]
    fn generator_rejects_bad_config() {
        for cfg in [
            GeneratorConfig {
                dims: [10, 5],
                ..Default::default()
            },
            GeneratorConfig {
                weight: [-1.0, 2.0],
                ..Default::default()
            },
            GeneratorConfig {
                class_mix: [0.0; 4],
                ..Default::default()
            },
            GeneratorConfig {
                quantity: [0, 3],
                ..Default::default()
            },
        ] {
            assert!(matches!(
                random_instance(&cfg, 0),
                Err(InstanceError::Config(_))
            ));
        }
    }

    #[test]
    fn json_round_trip() {
        let inst = catalog_instance();
        assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
        let rnd = random_instance(&GeneratorConfig::default(), 9).unwrap();
        assert_eq!(Instance::from_json(&rnd.to_json()).unwrap(), rnd);
    }

    #[test]
    fn load_rejects_invalid_records() {
        let mut doc = catalog_instance().to_doc();
        doc.items[3].weight = 0.0;
        let err = Instance::from_doc(&doc).unwrap_err().to_string();
        assert!(err.contains("Millet") && err.contains("weight"), "{err}");

        let mut doc = catalog_instance().to_doc();
        doc.items[0].max_compression_ratio = Some(1.0);
        let err = Instance::from_doc(&doc).unwrap_err().to_string();
        assert!(err.contains("Chinese Cabbage"), "{err}");

        let mut doc = catalog_instance().to_doc();
        doc.items[0].compressibility = Some(1.5);
        assert!(Instance::from_doc(&doc).is_err());

        assert!(Instance::from_json("{\"bins\": 3}").is_err());
    }
}
