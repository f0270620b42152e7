//! Domain types shared by every other module: item and bin catalog entries,
//! the six orthogonal rotations, runtime placement state and the
//! deterministic item ordering used by the packer.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for every coordinate and height comparison.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{what}: {field} must be > 0 (got {value})")]
    NonPositive {
        what: String,
        field: &'static str,
        value: f64,
    },
    #[error("{what}: compressibility must lie in [0, 1] (got {value})")]
    Compressibility { what: String, value: f64 },
    #[error("{what}: max compression ratio must lie in [0, 1) (got {value})")]
    MaxCompression { what: String, value: f64 },
    #[error("{what}: class 3 items must be incompressible (c = {c}, r = {r})")]
    RigidClass { what: String, c: f64, r: f64 },
    #[error("unknown item class id {0} (expected 0..=3)")]
    UnknownClass(u8),
    #[error("unknown rotation type {0} (expected 0..=5)")]
    UnknownRotation(u8),
}

/// Product family of an item; fixes its default deformation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum ClassId {
    GreenVegetable = 0,
    Rice = 1,
    MelonFruit = 2,
    Other = 3,
}

impl ClassId {
    pub const ALL: [ClassId; 4] = [
        ClassId::GreenVegetable,
        ClassId::Rice,
        ClassId::MelonFruit,
        ClassId::Other,
    ];

    pub fn index(self) -> u8 {
        self as u8
    }

    /// Catalog `(compressibility, max_compression_ratio)` for the class.
    pub fn default_params(self) -> (f64, f64) {
        match self {
            ClassId::GreenVegetable => (0.1, 0.3),
            ClassId::Rice => (0.03, 0.2),
            ClassId::MelonFruit => (0.01, 0.1),
            ClassId::Other => (0.0, 0.0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ClassId::GreenVegetable => "green vegetables",
            ClassId::Rice => "rice",
            ClassId::MelonFruit => "melons and fruits",
            ClassId::Other => "other",
        }
    }
}

impl From<ClassId> for u8 {
    fn from(c: ClassId) -> u8 {
        c.index()
    }
}

impl TryFrom<u8> for ClassId {
    type Error = ModelError;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        ClassId::ALL
            .get(v as usize)
            .copied()
            .ok_or(ModelError::UnknownClass(v))
    }
}

/// Deformation parameters of an item.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ItemClass {
    pub class_id: ClassId,
    pub compressibility: f64,
    pub max_compression_ratio: f64,
}

impl ItemClass {
    /// The catalog parameters for `class_id`.
    pub fn standard(class_id: ClassId) -> Self {
        let (compressibility, max_compression_ratio) = class_id.default_params();
        ItemClass {
            class_id,
            compressibility,
            max_compression_ratio,
        }
    }

    pub fn new(
        class_id: ClassId,
        compressibility: f64,
        max_compression_ratio: f64,
    ) -> Result<Self, ModelError> {
        let class = ItemClass {
            class_id,
            compressibility,
            max_compression_ratio,
        };
        class.validate("item class")?;
        Ok(class)
    }

    pub(crate) fn validate(&self, what: &str) -> Result<(), ModelError> {
        let c = self.compressibility;
        let r = self.max_compression_ratio;
        if !(0.0..=1.0).contains(&c) {
            return Err(ModelError::Compressibility {
                what: what.to_string(),
                value: c,
            });
        }
        if !(0.0..1.0).contains(&r) {
            return Err(ModelError::MaxCompression {
                what: what.to_string(),
                value: r,
            });
        }
        if self.class_id == ClassId::Other && (c != 0.0 || r != 0.0) {
            return Err(ModelError::RigidClass {
                what: what.to_string(),
                c,
                r,
            });
        }
        Ok(())
    }

    pub fn is_rigid(&self) -> bool {
        self.compressibility == 0.0 || self.max_compression_ratio == 0.0
    }
}

/// Extents of an axis-aligned box in cm: depth along x, width along y,
/// height along z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dims {
    pub depth: f64,
    pub width: f64,
    pub height: f64,
}

impl Dims {
    pub const fn new(depth: f64, width: f64, height: f64) -> Self {
        Dims {
            depth,
            width,
            height,
        }
    }

    pub fn volume(&self) -> f64 {
        self.depth * self.width * self.height
    }

    pub fn base_area(&self) -> f64 {
        self.depth * self.width
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.depth, self.width, self.height]
    }

    /// True if `other` holds the same three values in some order.
    pub fn is_permutation_of(&self, other: &Dims, tol: f64) -> bool {
        let mut a = self.as_array();
        let mut b = other.as_array();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        a.iter().zip(b.iter()).all(|(p, q)| (p - q).abs() <= tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point {
    pub const ORIGIN: Point = Point {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point { x, y, z }
    }

    pub fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        (self.x - other.x).abs() <= tol
            && (self.y - other.y).abs() <= tol
            && (self.z - other.z).abs() <= tol
    }
}

/// An immutable catalog entry for a single physical item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemSpec {
    pub name: String,
    pub dims: Dims,
    pub weight: f64,
    pub class: ItemClass,
    /// Position in the input list; the last tie-breaker when sorting.
    pub instance_index: usize,
}

impl ItemSpec {
    pub fn new(
        name: impl Into<String>,
        dims: Dims,
        weight: f64,
        class: ItemClass,
        instance_index: usize,
    ) -> Result<Self, ModelError> {
        let spec = ItemSpec {
            name: name.into(),
            dims,
            weight,
            class,
            instance_index,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Shorthand for an item using its class's catalog parameters.
    pub fn standard(
        name: impl Into<String>,
        depth: f64,
        width: f64,
        height: f64,
        weight: f64,
        class_id: ClassId,
        instance_index: usize,
    ) -> Result<Self, ModelError> {
        ItemSpec::new(
            name,
            Dims::new(depth, width, height),
            weight,
            ItemClass::standard(class_id),
            instance_index,
        )
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let what = format!("item '{}' (#{})", self.name, self.instance_index);
        for (field, value) in [
            ("depth", self.dims.depth),
            ("width", self.dims.width),
            ("height", self.dims.height),
            ("weight", self.weight),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ModelError::NonPositive { what, field, value });
            }
        }
        self.class.validate(&what)
    }

    pub fn initial_volume(&self) -> f64 {
        self.dims.volume()
    }

    pub fn bottom_facet_area(&self) -> f64 {
        bottom_facet_area(self)
    }
}

/// One of the six axis-aligned orientations of a cuboid.
///
/// | type | rotation         | (d, w, h) becomes |
/// |------|------------------|-------------------|
/// | 0    | none             | (d, w, h)         |
/// | 1    | about z          | (w, d, h)         |
/// | 2    | about x, then y  | (w, h, d)         |
/// | 3    | about y          | (h, w, d)         |
/// | 4    | about x, then z  | (h, d, w)         |
/// | 5    | about x          | (d, h, w)         |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub struct RotationType(u8);

impl RotationType {
    pub const ALL: [RotationType; 6] = [
        RotationType(0),
        RotationType(1),
        RotationType(2),
        RotationType(3),
        RotationType(4),
        RotationType(5),
    ];

    pub fn new(type_id: u8) -> Result<Self, ModelError> {
        if type_id < 6 {
            Ok(RotationType(type_id))
        } else {
            Err(ModelError::UnknownRotation(type_id))
        }
    }

    pub fn type_id(self) -> u8 {
        self.0
    }
}

impl From<RotationType> for u8 {
    fn from(r: RotationType) -> u8 {
        r.0
    }
}

impl TryFrom<u8> for RotationType {
    type Error = ModelError;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        RotationType::new(v)
    }
}

impl fmt::Display for RotationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn rotate_dims(dims: Dims, rotation: RotationType) -> Dims {
    let Dims {
        depth: d,
        width: w,
        height: h,
    } = dims;
    match rotation.0 {
        0 => Dims::new(d, w, h),
        1 => Dims::new(w, d, h),
        2 => Dims::new(w, h, d),
        3 => Dims::new(h, w, d),
        4 => Dims::new(h, d, w),
        5 => Dims::new(d, h, w),
        _ => unreachable!("rotation type is validated on construction"),
    }
}

/// Area of the largest facet, the one the item prefers to rest on.
pub fn bottom_facet_area(spec: &ItemSpec) -> f64 {
    let Dims {
        depth: d,
        width: w,
        height: h,
    } = spec.dims;
    (d * w).max(d * h).max(w * h)
}

/// Orders items for packing: largest bottom facet first, then more
/// compressible first, then larger volume, then input order.
pub fn sort_items(items: &[ItemSpec]) -> Vec<ItemSpec> {
    let mut sorted = items.to_vec();
    sorted.sort_by(compare_for_packing);
    sorted
}

fn compare_for_packing(a: &ItemSpec, b: &ItemSpec) -> Ordering {
    bottom_facet_area(b)
        .total_cmp(&bottom_facet_area(a))
        .then_with(|| b.class.compressibility.total_cmp(&a.class.compressibility))
        .then_with(|| b.initial_volume().total_cmp(&a.initial_volume()))
        .then_with(|| a.instance_index.cmp(&b.instance_index))
}

/// All six rotations, largest resulting base area first (ties by type id).
pub fn bottom_down_rotation_order(spec: &ItemSpec) -> [RotationType; 6] {
    let mut order = RotationType::ALL;
    order.sort_by(|a, b| {
        let area_a = rotate_dims(spec.dims, *a).base_area();
        let area_b = rotate_dims(spec.dims, *b).base_area();
        area_b.total_cmp(&area_a).then_with(|| a.cmp(b))
    });
    order
}

/// A container: open on top, back-left-bottom corner at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinSpec {
    pub name: String,
    pub depth: f64,
    pub width: f64,
    pub height: f64,
    pub max_weight: f64,
}

impl BinSpec {
    pub fn new(
        name: impl Into<String>,
        depth: f64,
        width: f64,
        height: f64,
        max_weight: f64,
    ) -> Result<Self, ModelError> {
        let bin = BinSpec {
            name: name.into(),
            depth,
            width,
            height,
            max_weight,
        };
        bin.validate()?;
        Ok(bin)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for (field, value) in [
            ("depth", self.depth),
            ("width", self.width),
            ("height", self.height),
            ("max_weight", self.max_weight),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ModelError::NonPositive {
                    what: format!("bin '{}'", self.name),
                    field,
                    value,
                });
            }
        }
        Ok(())
    }

    pub fn volume(&self) -> f64 {
        self.depth * self.width * self.height
    }
}

/// Runtime state of a packed item. Links are indices into the owning
/// bin's placement list.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedItem {
    pub spec: ItemSpec,
    pub rotation: RotationType,
    /// Back-left-bottom corner.
    pub position: Point,
    /// Rotated extents before any compression.
    pub rot_dims: Dims,
    pub true_height: f64,
    pub true_compression: f64,
    /// Total weight resting on this item through its support chain.
    pub top_load: f64,
    pub under: Option<usize>,
    pub over: Vec<usize>,
}

impl PlacedItem {
    /// An uncompressed placement with no links.
    pub fn new(spec: ItemSpec, rotation: RotationType, position: Point) -> Self {
        let rot_dims = rotate_dims(spec.dims, rotation);
        PlacedItem {
            spec,
            rotation,
            position,
            rot_dims,
            true_height: rot_dims.height,
            true_compression: 0.0,
            top_load: 0.0,
            under: None,
            over: Vec::new(),
        }
    }

    pub fn top(&self) -> f64 {
        self.position.z + self.true_height
    }

    /// Half-open footprint test: `[x, x+d) x [y, y+w)`.
    pub fn footprint_contains(&self, x: f64, y: f64) -> bool {
        let p = self.position;
        x >= p.x - EPS
            && x < p.x + self.rot_dims.depth - EPS
            && y >= p.y - EPS
            && y < p.y + self.rot_dims.width - EPS
    }

    pub fn true_volume(&self) -> f64 {
        self.rot_dims.depth * self.rot_dims.width * self.true_height
    }
}

/// A candidate corner position together with the item whose top face
/// carries it (`None` for the floor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PivotEntry {
    pub point: Point,
    pub host: Option<usize>,
}

impl PivotEntry {
    pub const fn floor(x: f64, y: f64) -> Self {
        PivotEntry {
            point: Point::new(x, y, 0.0),
            host: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Metrics {
    pub initial_volume: f64,
    pub true_volume: f64,
    pub item_count: usize,
    pub utilization: f64,
    pub total_weight: f64,
}

/// Output of a packing run. `steps` is the loading order.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingSolution {
    pub bin: BinSpec,
    pub compression: bool,
    pub steps: Vec<PlacedItem>,
    pub unpacked: Vec<ItemSpec>,
    pub metrics: Metrics,
}
