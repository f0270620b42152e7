use std::fmt;

use crate::geometry::{boxes_intersect, footprint_overlap_area, Aabb};
use crate::model::{rotate_dims, PackingSolution, EPS};

/// The six feasibility rules a loaded bin must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    Weight,
    Bounds,
    Orthogonality,
    NoOverlap,
    Stability,
    Orientation,
}

impl Constraint {
    pub fn id(self) -> &'static str {
        match self {
            Constraint::Weight => "weight",
            Constraint::Bounds => "bounds",
            Constraint::Orthogonality => "orthogonality",
            Constraint::NoOverlap => "no-overlap",
            Constraint::Stability => "stability",
            Constraint::Orientation => "orientation",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub constraint: Constraint,
    /// Step indices involved.
    pub items: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.constraint, self.detail)
    }
}

pub fn validate_solution(solution: &PackingSolution) -> Vec<Violation> {
    validate_solution_with_tolerance(solution, EPS)
}

/// Checks every constraint and returns all violations (empty when
/// feasible). `tol` is the absolute slack on coordinate comparisons;
/// solutions read back from six-decimal files need about `1e-5`.
pub fn validate_solution_with_tolerance(solution: &PackingSolution, tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    let bin = &solution.bin;
    let steps = &solution.steps;

    let total: f64 = steps.iter().map(|p| p.spec.weight).sum();
    if total > bin.max_weight + tol {
        out.push(Violation {
            constraint: Constraint::Weight,
            items: (0..steps.len()).collect(),
            detail: format!(
                "total weight {total} kg exceeds limit {} kg",
                bin.max_weight
            ),
        });
    }

    let boxes: Vec<Aabb> = steps.iter().map(|p| p.aabb()).collect();

    for (i, b) in boxes.iter().enumerate() {
        let outside = b.min.x < -tol
            || b.min.y < -tol
            || b.min.z < -tol
            || b.max.x > bin.depth + tol
            || b.max.y > bin.width + tol
            || b.max.z > bin.height + tol;
        if outside {
            out.push(Violation {
                constraint: Constraint::Bounds,
                items: vec![i],
                detail: format!(
                    "item {i} ('{}') spans [{}, {}]x[{}, {}]x[{}, {}] outside {}x{}x{}",
                    steps[i].spec.name,
                    b.min.x,
                    b.max.x,
                    b.min.y,
                    b.max.y,
                    b.min.z,
                    b.max.z,
                    bin.depth,
                    bin.width,
                    bin.height
                ),
            });
        }
    }

    // Boxes are stored as corner + extents, so every face is axis-parallel;
    // the only way to break orthogonality is a degenerate extent.
    for (i, p) in steps.iter().enumerate() {
        let d = p.rot_dims;
        if !(d.depth > 0.0 && d.width > 0.0 && d.height > 0.0 && p.true_height > 0.0) {
            out.push(Violation {
                constraint: Constraint::Orthogonality,
                items: vec![i],
                detail: format!("item {i} has a degenerate extent"),
            });
        }
    }

    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            if intersects_with_tol(&boxes[i], &boxes[j], tol) {
                out.push(Violation {
                    constraint: Constraint::NoOverlap,
                    items: vec![i, j],
                    detail: format!(
                        "items {i} ('{}') and {j} ('{}') overlap",
                        steps[i].spec.name, steps[j].spec.name
                    ),
                });
            }
        }
    }

    for (i, b) in boxes.iter().enumerate() {
        if b.min.z <= tol {
            continue;
        }
        let supported = boxes.iter().enumerate().any(|(j, s)| {
            j != i && (s.max.z - b.min.z).abs() <= tol && footprint_overlap_area(b, s) > 0.0
        });
        if !supported {
            out.push(Violation {
                constraint: Constraint::Stability,
                items: vec![i],
                detail: format!(
                    "item {i} ('{}') at z = {} has nothing underneath",
                    steps[i].spec.name, b.min.z
                ),
            });
        }
    }

    for (i, p) in steps.iter().enumerate() {
        let expected = rotate_dims(p.spec.dims, p.rotation);
        let matches = [
            (expected.depth, p.rot_dims.depth),
            (expected.width, p.rot_dims.width),
            (expected.height, p.rot_dims.height),
        ]
        .iter()
        .all(|(a, b)| (a - b).abs() <= tol);
        if !p.rot_dims.is_permutation_of(&p.spec.dims, tol) || !matches {
            out.push(Violation {
                constraint: Constraint::Orientation,
                items: vec![i],
                detail: format!(
                    "item {i} ('{}') dims {:?} do not match rotation {} of {:?}",
                    p.spec.name,
                    p.rot_dims.as_array(),
                    p.rotation,
                    p.spec.dims.as_array()
                ),
            });
        }
    }

    out
}

fn intersects_with_tol(a: &Aabb, b: &Aabb, tol: f64) -> bool {
    if tol <= EPS {
        return boxes_intersect(a, b);
    }
    a.min.x < b.max.x - tol
        && b.min.x < a.max.x - tol
        && a.min.y < b.max.y - tol
        && b.min.y < a.max.y - tol
        && a.min.z < b.max.z - tol
        && b.min.z < a.max.z - tol
}

/// Validates every prefix `steps[..k]` of the loading sequence, returning
/// the first failing prefix length and its violations.
pub fn validate_prefixes(
    solution: &PackingSolution,
    tol: f64,
) -> Result<(), (usize, Vec<Violation>)> {
    let mut prefix = PackingSolution {
        bin: solution.bin.clone(),
        compression: solution.compression,
        steps: Vec::with_capacity(solution.steps.len()),
        unpacked: Vec::new(),
        metrics: solution.metrics,
    };
    for (k, step) in solution.steps.iter().enumerate() {
        prefix.steps.push(step.clone());
        let violations = validate_solution_with_tolerance(&prefix, tol);
        if !violations.is_empty() {
            return Err((k + 1, violations));
        }
    }
    Ok(())
}
