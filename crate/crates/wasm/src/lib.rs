//! Browser bindings for the packing demo in `www/`.
//!
//! Everything crosses the boundary as JSON strings. The `*_json` functions
//! are plain Rust so they can be tested natively; the `#[wasm_bindgen]`
//! wrappers only convert errors.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use dvpack::compression::{effective_compression_ratio, true_height};
use dvpack::{
    catalog_instance, compare_compression, random_instance, GeneratorConfig, Instance, Metrics,
    Packer, PlacedItem, StepOutcome,
};

#[derive(Serialize)]
struct SceneBox {
    index: usize,
    name: String,
    class_id: u8,
    x: f64,
    y: f64,
    z: f64,
    depth: f64,
    width: f64,
    height: f64,
    rot_height: f64,
    rotation_type: u8,
    compression: f64,
    top_load: f64,
    weight: f64,
}

impl SceneBox {
    fn new(index: usize, p: &PlacedItem) -> Self {
        SceneBox {
            index,
            name: p.spec.name.clone(),
            class_id: p.spec.class.class_id.index(),
            x: p.position.x,
            y: p.position.y,
            z: p.position.z,
            depth: p.rot_dims.depth,
            width: p.rot_dims.width,
            height: p.true_height,
            rot_height: p.rot_dims.height,
            rotation_type: p.rotation.type_id(),
            compression: p.true_compression,
            top_load: p.top_load,
            weight: p.spec.weight,
        }
    }
}

#[derive(Serialize)]
struct Scene {
    bin: String,
    depth: f64,
    width: f64,
    height: f64,
    compression: bool,
    boxes: Vec<SceneBox>,
    unpacked: Vec<String>,
    remaining: usize,
    last: Option<String>,
    metrics: Metrics,
}

fn instance_for(source: &str, seed: u64) -> Result<Instance, String> {
    match source {
        "catalog" => Ok(catalog_instance()),
        "random" => random_instance(&GeneratorConfig::default(), seed).map_err(|e| e.to_string()),
        other => Err(format!(
            "unknown source '{other}' (expected catalog or random)"
        )),
    }
}

/// Step-by-step packer over a built-in instance.
pub struct Session {
    packer: Packer,
    last: Option<String>,
}

impl Session {
    pub fn open(source: &str, seed: u64, bin: &str, compression: bool) -> Result<Self, String> {
        let instance = instance_for(source, seed)?;
        let spec = instance.bin(bin).ok_or_else(|| {
            format!(
                "unknown bin '{bin}'; valid bins: {}",
                instance.bin_names().join(", ")
            )
        })?;
        Ok(Session {
            packer: Packer::new(&instance.items, spec.clone(), compression),
            last: None,
        })
    }

    /// Advances one item; false once the queue is empty.
    pub fn advance(&mut self) -> bool {
        match self.packer.step() {
            Some(StepOutcome::Placed(idx)) => {
                let p = &self.packer.state().placed[idx];
                self.last = Some(format!(
                    "placed {} at ({}, {}, {:.2})",
                    p.spec.name, p.position.x, p.position.y, p.position.z
                ));
                true
            }
            Some(StepOutcome::Unpacked(spec)) => {
                self.last = Some(format!("no room for {}", spec.name));
                true
            }
            None => false,
        }
    }

    pub fn run_to_end(&mut self) {
        while self.advance() {}
    }

    pub fn scene_json(&self) -> String {
        let state = self.packer.state();
        let solution = state.to_solution();
        let scene = Scene {
            bin: state.spec.name.clone(),
            depth: state.spec.depth,
            width: state.spec.width,
            height: state.spec.height,
            compression: state.compression_enabled,
            boxes: state
                .placed
                .iter()
                .enumerate()
                .map(|(i, p)| SceneBox::new(i, p))
                .collect(),
            unpacked: self
                .packer
                .unpacked()
                .iter()
                .map(|s| s.name.clone())
                .collect(),
            remaining: self.packer.remaining(),
            last: self.last.clone(),
            metrics: solution.metrics,
        };
        serde_json::to_string(&scene).expect("scene serializes")
    }
}

pub fn pack_json(source: &str, seed: u64, bin: &str, compression: bool) -> Result<String, String> {
    let mut session = Session::open(source, seed, bin, compression)?;
    session.run_to_end();
    Ok(session.scene_json())
}

#[derive(Serialize)]
struct CompareRow {
    bin: String,
    with_compression: Metrics,
    without_compression: Metrics,
    delta_utilization: f64,
    delta_item_count: i64,
}

pub fn compare_json(source: &str, seed: u64) -> Result<String, String> {
    let instance = instance_for(source, seed)?;
    let rows: Vec<CompareRow> = compare_compression(&instance.items, &instance.bins)
        .rows
        .into_iter()
        .map(|r| CompareRow {
            bin: r.bin.name.clone(),
            delta_utilization: r.delta_utilization(),
            delta_item_count: r.delta_item_count(),
            with_compression: r.with_compression,
            without_compression: r.without_compression,
        })
        .collect();
    Ok(serde_json::to_string(&rows).expect("rows serialize"))
}

#[derive(Serialize)]
struct Deformation {
    ratio: f64,
    capped: bool,
    true_height: f64,
}

pub fn deform_json(
    compressibility: f64,
    max_ratio: f64,
    weight: f64,
    load: f64,
    height: f64,
) -> Result<String, String> {
    let sized = weight > 0.0 && height > 0.0 && load >= 0.0;
    if !sized {
        return Err("weight and height must be positive, load non-negative".into());
    }
    if !(0.0..=1.0).contains(&compressibility) || !(0.0..1.0).contains(&max_ratio) {
        return Err("compressibility must be in [0, 1] and max ratio in [0, 1)".into());
    }
    let ratio = effective_compression_ratio(compressibility, max_ratio, weight, load);
    let out = Deformation {
        ratio,
        capped: compressibility * load / weight > max_ratio,
        true_height: true_height(height, ratio),
    };
    Ok(serde_json::to_string(&out).expect("deformation serializes"))
}

fn js(err: String) -> JsError {
    JsError::new(&err)
}

/// Packs a whole bin and returns the scene.
#[wasm_bindgen]
pub fn pack(source: &str, seed: u64, bin: &str, compression: bool) -> Result<String, JsError> {
    pack_json(source, seed, bin, compression).map_err(js)
}

/// Per-bin metrics with and without compression.
#[wasm_bindgen]
pub fn compare(source: &str, seed: u64) -> Result<String, JsError> {
    compare_json(source, seed).map_err(js)
}

/// Compression ratio and resulting height of one item under a load.
#[wasm_bindgen]
pub fn deform(
    compressibility: f64,
    max_ratio: f64,
    weight: f64,
    load: f64,
    height: f64,
) -> Result<String, JsError> {
    deform_json(compressibility, max_ratio, weight, load, height).map_err(js)
}

#[wasm_bindgen]
pub struct Stepper {
    session: Session,
}

#[wasm_bindgen]
impl Stepper {
    #[wasm_bindgen(constructor)]
    pub fn new(source: &str, seed: u64, bin: &str, compression: bool) -> Result<Stepper, JsError> {
        Ok(Stepper {
            session: Session::open(source, seed, bin, compression).map_err(js)?,
        })
    }

    pub fn step(&mut self) -> bool {
        self.session.advance()
    }

    pub fn finish(&mut self) {
        self.session.run_to_end();
    }

    pub fn scene(&self) -> String {
        self.session.scene_json()
    }
}
