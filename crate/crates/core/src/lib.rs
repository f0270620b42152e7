//! Compression-aware 3D bin packing for deformable cuboid items.
//!
//! Items are loaded one bin at a time with a bottom-left-fill pivot
//! scheme; stacking weight compresses the items underneath, which can free
//! enough height for more items than a rigid-body model allows.
//!
//! ```
//! use dvpack::{catalog_instance, pack_bin, validate_solution};
//!
//! let inst = catalog_instance();
//! let solution = pack_bin(&inst.items, &inst.bins[0], true);
//! assert!(validate_solution(&solution).is_empty());
//! println!("{} items, utilization {:.3}", solution.metrics.item_count, solution.metrics.utilization);
//! ```

pub mod analysis;
pub mod compression;
pub mod engine;
pub mod format;
pub mod geometry;
pub mod instances;
pub mod model;

pub use analysis::{
    compare_compression, compute_metrics, oracle_pack, validate_prefixes, validate_solution,
    validate_solution_with_tolerance, Comparison, ComparisonRow, Constraint, OracleResult,
    Violation,
};
pub use engine::{pack_bin, BinState, Packer, StepOutcome};
pub use instances::{
    catalog_instance, load_instance, random_instance, save_instance, GeneratorConfig, Instance,
    InstanceError,
};
pub use model::{
    bottom_down_rotation_order, bottom_facet_area, rotate_dims, sort_items, BinSpec, ClassId, Dims,
    ItemClass, ItemSpec, Metrics, PackingSolution, PivotEntry, PlacedItem, Point, RotationType,
    EPS,
};
