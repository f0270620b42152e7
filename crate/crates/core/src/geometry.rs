//! Axis-aligned boxes and the overlap test used for the no-overlap rule.

use crate::model::{Dims, PlacedItem, Point, EPS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point,
    pub max: Point,
}

impl Aabb {
    pub fn from_corner(corner: Point, extents: Dims) -> Self {
        Aabb {
            min: corner,
            max: Point::new(
                corner.x + extents.depth,
                corner.y + extents.width,
                corner.z + extents.height,
            ),
        }
    }
}

impl PlacedItem {
    /// Occupied box using the current (possibly compressed) height.
    pub fn aabb(&self) -> Aabb {
        Aabb::from_corner(
            self.position,
            Dims::new(self.rot_dims.depth, self.rot_dims.width, self.true_height),
        )
    }
}

fn open_overlap(a_min: f64, a_max: f64, b_min: f64, b_max: f64) -> bool {
    a_min < b_max - EPS && b_min < a_max - EPS
}

/// True iff the interiors overlap on all three axes. Boxes that only share
/// a face, edge or corner do not intersect.
pub fn boxes_intersect(a: &Aabb, b: &Aabb) -> bool {
    open_overlap(a.min.x, a.max.x, b.min.x, b.max.x)
        && open_overlap(a.min.y, a.max.y, b.min.y, b.max.y)
        && open_overlap(a.min.z, a.max.z, b.min.z, b.max.z)
}

/// Area of the intersection of two boxes' xy projections.
pub fn footprint_overlap_area(a: &Aabb, b: &Aabb) -> f64 {
    let dx = a.max.x.min(b.max.x) - a.min.x.max(b.min.x);
    let dy = a.max.y.min(b.max.y) - a.min.y.max(b.min.y);
    if dx > EPS && dy > EPS {
        dx * dy
    } else {
        0.0
    }
}
