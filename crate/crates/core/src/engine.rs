//! Bottom-left-fill placement with compression-aware feasibility.
//!
//! Items are taken in [`sort_items`] order. Each item tries its rotations
//! largest-base-first and, for each rotation, every pivot in
//! bottom-left-deepest order (lowest z, then y, then x). The first feasible
//! (rotation, pivot) pair wins; an item with none is left unpacked. Placing
//! an item on top of another adds its weight to every supporter below it,
//! which may compress (and lower) the whole column before the final
//! height and overlap checks.

use std::collections::VecDeque;

use crate::analysis::compute_metrics;
use crate::compression::{column_members, propagate_load, recompute_column, support_chain};
use crate::geometry::{boxes_intersect, Aabb};
use crate::model::{
    bottom_down_rotation_order, rotate_dims, sort_items, BinSpec, Dims, ItemSpec, PackingSolution,
    PivotEntry, PlacedItem, Point, RotationType, EPS,
};

/// Contents of the single open bin during a run.
#[derive(Debug, Clone)]
pub struct BinState {
    pub spec: BinSpec,
    pub placed: Vec<PlacedItem>,
    pub pivots: Vec<PivotEntry>,
    pub total_weight: f64,
    pub compression_enabled: bool,
}

#[derive(Clone, Copy)]
struct Saved {
    idx: usize,
    z: f64,
    true_height: f64,
    true_compression: f64,
    top_load: f64,
}

impl BinState {
    pub fn new(spec: BinSpec, compression_enabled: bool) -> Self {
        BinState {
            spec,
            placed: Vec::new(),
            pivots: vec![PivotEntry::floor(0.0, 0.0)],
            total_weight: 0.0,
            compression_enabled,
        }
    }

    /// Attempts to put `item` with `rotation` at the pivot with index
    /// `pivot_idx`. On success the placement is committed and the pivot
    /// list updated; on failure the state is left untouched.
    pub fn try_place(&mut self, item: &ItemSpec, rotation: RotationType, pivot_idx: usize) -> bool {
        let pivot = self.pivots[pivot_idx];
        let dims = rotate_dims(item.dims, rotation);
        let p = pivot.point;

        if self.total_weight + item.weight > self.spec.max_weight + EPS {
            return false;
        }
        if p.x + dims.depth > self.spec.depth + EPS || p.y + dims.width > self.spec.width + EPS {
            return false;
        }
        // Floor placements and rigid runs never move anything, so the checks
        // can run before committing.
        if pivot.host.is_none() || !self.compression_enabled {
            let candidate = Aabb::from_corner(p, dims);
            if p.z + dims.height > self.spec.height + EPS
                || self
                    .placed
                    .iter()
                    .any(|q| boxes_intersect(&candidate, &q.aabb()))
            {
                return false;
            }
        }

        let new_idx = self.placed.len();
        let mut placed = PlacedItem::new(item.clone(), rotation, p);
        placed.under = pivot.host;
        self.placed.push(placed);
        if let Some(host) = pivot.host {
            self.placed[host].over.push(new_idx);
        }

        if pivot.host.is_some() && self.compression_enabled && !self.settle(new_idx, pivot.host) {
            return false;
        }
        if pivot.host.is_some() && !self.compression_enabled {
            let chain = support_chain(&self.placed, pivot.host);
            propagate_load(&mut self.placed, &chain, item.weight);
        }

        self.total_weight += item.weight;
        self.pivots.remove(pivot_idx);
        let fresh = self.generate_pivots(new_idx);
        self.insert_pivots(&fresh);
        true
    }

    /// Propagates the new item's weight, recompresses its column and runs
    /// the final height/overlap check, undoing everything on failure.
    fn settle(&mut self, new_idx: usize, host: Option<usize>) -> bool {
        let chain = support_chain(&self.placed, host);
        let root = chain[0];
        let members = column_members(&self.placed, root).expect("support links must form a forest");
        let saved: Vec<Saved> = members
            .iter()
            .map(|&idx| {
                let it = &self.placed[idx];
                Saved {
                    idx,
                    z: it.position.z,
                    true_height: it.true_height,
                    true_compression: it.true_compression,
                    top_load: it.top_load,
                }
            })
            .collect();

        let weight = self.placed[new_idx].spec.weight;
        propagate_load(&mut self.placed, &chain, weight);
        recompute_column(&mut self.placed, root, true).expect("support links must form a forest");

        let fits = self.placed[new_idx].top() <= self.spec.height + EPS
            && saved
                .iter()
                .filter(|s| {
                    let it = &self.placed[s.idx];
                    s.idx == new_idx || it.position.z != s.z || it.true_height != s.true_height
                })
                .all(|s| {
                    let moved = self.placed[s.idx].aabb();
                    self.placed
                        .iter()
                        .enumerate()
                        .all(|(j, q)| j == s.idx || !boxes_intersect(&moved, &q.aabb()))
                });

        if !fits {
            for s in &saved {
                let it = &mut self.placed[s.idx];
                it.position.z = s.z;
                it.true_height = s.true_height;
                it.true_compression = s.true_compression;
                it.top_load = s.top_load;
            }
            self.placed.pop();
            if let Some(h) = host {
                self.placed[h].over.pop();
            }
        }
        fits
    }

    /// The three pivots created by a placed item: beside it along x, beside
    /// it along y (both on the surface it rests on, remapped downward if that
    /// surface does not reach them) and on its top face.
    pub fn generate_pivots(&self, idx: usize) -> [PivotEntry; 3] {
        let item = &self.placed[idx];
        let p = item.position;
        let side = |x: f64, y: f64| {
            self.remap_dangling_pivot(PivotEntry {
                point: Point::new(x, y, p.z),
                host: item.under,
            })
        };
        [
            side(p.x + item.rot_dims.depth, p.y),
            side(p.x, p.y + item.rot_dims.width),
            PivotEntry {
                point: Point::new(p.x, p.y, item.top()),
                host: Some(idx),
            },
        ]
    }

    /// Drops a pivot onto the first top face found straight below it, or
    /// onto the floor. Supported pivots come back unchanged.
    pub fn remap_dangling_pivot(&self, pivot: PivotEntry) -> PivotEntry {
        let Point { x, y, z } = pivot.point;
        if z <= EPS {
            return PivotEntry::floor(x, y);
        }
        if let Some(h) = pivot.host {
            let host = &self.placed[h];
            if host.footprint_contains(x, y) && (host.top() - z).abs() <= EPS {
                return pivot;
            }
        }
        let below = self
            .placed
            .iter()
            .enumerate()
            .filter(|(_, q)| q.footprint_contains(x, y) && q.top() <= z + EPS)
            .max_by(|(ia, a), (ib, b)| a.top().total_cmp(&b.top()).then(ib.cmp(ia)));
        match below {
            Some((idx, q)) => PivotEntry {
                point: Point::new(x, y, q.top()),
                host: Some(idx),
            },
            None => PivotEntry::floor(x, y),
        }
    }

    /// Refreshes every pivot's height from its host, appends `fresh`, drops
    /// duplicates and pivots no item could use, and restores
    /// bottom-left-deepest order.
    pub fn insert_pivots(&mut self, fresh: &[PivotEntry]) {
        for pivot in &mut self.pivots {
            if let Some(h) = pivot.host {
                pivot.point.z = self.placed[h].top();
            }
        }
        let spec = &self.spec;
        let usable = |p: &PivotEntry| {
            p.point.x < spec.depth - EPS
                && p.point.y < spec.width - EPS
                && p.point.z < spec.height - EPS
        };
        let mut merged: Vec<PivotEntry> = Vec::with_capacity(self.pivots.len() + fresh.len());
        for pivot in self.pivots.iter().chain(fresh.iter()) {
            if usable(pivot) && !merged.iter().any(|m| m.point.approx_eq(&pivot.point, EPS)) {
                merged.push(*pivot);
            }
        }
        sort_pivots(&mut merged);
        self.pivots = merged;
    }

    pub fn into_solution(self, unpacked: Vec<ItemSpec>) -> PackingSolution {
        let mut solution = PackingSolution {
            bin: self.spec,
            compression: self.compression_enabled,
            steps: self.placed,
            unpacked,
            metrics: Default::default(),
        };
        solution.metrics = compute_metrics(&solution);
        solution
    }

    /// Snapshot of the current contents as a solution (no leftovers).
    pub fn to_solution(&self) -> PackingSolution {
        self.clone().into_solution(Vec::new())
    }
}

/// Ascending z, then y, then x.
pub fn sort_pivots(pivots: &mut [PivotEntry]) {
    pivots.sort_by(|a, b| {
        a.point
            .z
            .total_cmp(&b.point.z)
            .then(a.point.y.total_cmp(&b.point.y))
            .then(a.point.x.total_cmp(&b.point.x))
    });
}

/// Result of packing one item.
#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    /// Placed; the value indexes [`BinState::placed`].
    Placed(usize),
    Unpacked(ItemSpec),
}

/// Incremental driver: one call to [`Packer::step`] handles one item.
#[derive(Debug, Clone)]
pub struct Packer {
    state: BinState,
    queue: VecDeque<ItemSpec>,
    unpacked: Vec<ItemSpec>,
}

impl Packer {
    pub fn new(items: &[ItemSpec], bin: BinSpec, compression_enabled: bool) -> Self {
        Packer {
            state: BinState::new(bin, compression_enabled),
            queue: sort_items(items).into(),
            unpacked: Vec::new(),
        }
    }

    pub fn state(&self) -> &BinState {
        &self.state
    }

    pub fn unpacked(&self) -> &[ItemSpec] {
        &self.unpacked
    }

    pub fn remaining(&self) -> usize {
        self.queue.len()
    }

    pub fn step(&mut self) -> Option<StepOutcome> {
        let item = self.queue.pop_front()?;
        let mut tried: Vec<Dims> = Vec::with_capacity(6);
        for rotation in bottom_down_rotation_order(&item) {
            let dims = rotate_dims(item.dims, rotation);
            // identical extents behave identically
            if tried.contains(&dims) {
                continue;
            }
            tried.push(dims);
            for pivot_idx in 0..self.state.pivots.len() {
                if self.state.try_place(&item, rotation, pivot_idx) {
                    return Some(StepOutcome::Placed(self.state.placed.len() - 1));
                }
            }
        }
        self.unpacked.push(item.clone());
        Some(StepOutcome::Unpacked(item))
    }

    pub fn finish(mut self) -> PackingSolution {
        while self.step().is_some() {}
        self.state.into_solution(self.unpacked)
    }
}

/// Packs as many of `items` as possible into one bin of type `bin`.
pub fn pack_bin(items: &[ItemSpec], bin: &BinSpec, compression_enabled: bool) -> PackingSolution {
    Packer::new(items, bin.clone(), compression_enabled).finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ClassId;

    fn small_bin() -> BinSpec {
        BinSpec::new("Small bin", 40.0, 40.0, 35.0, 55.0).unwrap()
    }

    fn rigid(name: &str, d: f64, w: f64, h: f64) -> ItemSpec {
        ItemSpec::standard(name, d, w, h, 1.0, ClassId::Other, 0).unwrap()
    }

    fn r(t: u8) -> RotationType {
        RotationType::new(t).unwrap()
    }

    fn points(state: &BinState) -> Vec<(f64, f64, f64)> {
        state
            .pivots
            .iter()
            .map(|p| (p.point.x, p.point.y, p.point.z))
            .collect()
    }

    /// H = 13 bin with a compressible 12 cm item and a 2 cm item.
    fn squeeze_case() -> (BinSpec, ItemSpec, ItemSpec) {
        let bin = BinSpec::new("tight", 10.0, 10.0, 13.0, 100.0).unwrap();
        let a = ItemSpec::standard("A", 10.0, 10.0, 12.0, 1.2, ClassId::GreenVegetable, 0).unwrap();
        let b = ItemSpec::standard("B", 10.0, 10.0, 2.0, 1.2, ClassId::Other, 1).unwrap();
        (bin, a, b)
    }

    #[test]
    fn single_item_lands_at_origin() {
        let potato =
            ItemSpec::standard("Potato", 12.0, 5.0, 5.0, 0.1, ClassId::MelonFruit, 0).unwrap();
        let sol = pack_bin(&[potato], &small_bin(), true);
        assert_eq!(sol.steps.len(), 1);
        assert_eq!(sol.steps[0].position, Point::ORIGIN);
        assert!(sol.unpacked.is_empty());
    }

    #[test]
    fn oversized_item_is_unpacked() {
        let big = rigid("big", 50.0, 50.0, 50.0);
        let sol = pack_bin(std::slice::from_ref(&big), &small_bin(), true);
        assert!(sol.steps.is_empty());
        assert_eq!(sol.unpacked, vec![big]);
    }

    #[test]
    fn compression_makes_room_for_second_item() {
        let (bin, a, b) = squeeze_case();
        let off = pack_bin(&[a.clone(), b.clone()], &bin, false);
        assert_eq!(off.steps.len(), 1);
        assert_eq!(off.unpacked.len(), 1);

        let on = pack_bin(&[a, b], &bin, true);
        assert_eq!(on.steps.len(), 2);
        let (lower, upper) = (&on.steps[0], &on.steps[1]);
        assert!((lower.true_compression - 0.1).abs() < 1e-12);
        assert!((lower.true_height - 10.8).abs() < 1e-12);
        assert!((upper.position.z - 10.8).abs() < 1e-12);
        assert!((upper.top() - 12.8).abs() < 1e-12);
    }

    #[test]
    fn try_place_bounds_and_weight() {
        let mut state = BinState::new(small_bin(), true);
        let rice = ItemSpec::standard("Rice", 45.0, 40.0, 8.0, 5.0, ClassId::Rice, 0).unwrap();
        assert!(!state.try_place(&rice, r(0), 0));
        assert_eq!(state.placed.len(), 0);

        let mut state = BinState::new(small_bin(), true);
        state.total_weight = 54.5;
        let cabbage = ItemSpec::standard(
            "Chinese Cabbage",
            25.0,
            12.0,
            12.0,
            1.2,
            ClassId::GreenVegetable,
            0,
        )
        .unwrap();
        assert!(!state.try_place(&cabbage, r(0), 0));

        let mut state = BinState::new(small_bin(), true);
        assert!(state.try_place(&cabbage, r(0), 0));
        assert_eq!(state.placed.len(), 1);
    }

    #[test]
    fn try_place_squeeze_needs_compression() {
        for enabled in [false, true] {
            let (bin, a, b) = squeeze_case();
            let mut state = BinState::new(bin, enabled);
            assert!(state.try_place(&a, r(0), 0));
            let on_top = state.pivots.iter().position(|p| p.host == Some(0)).unwrap();
            let before = state.clone();
            assert_eq!(state.try_place(&b, r(0), on_top), enabled);
            if !enabled {
                assert_eq!(state.placed, before.placed);
                assert_eq!(state.pivots, before.pivots);
            }
        }
    }

    #[test]
    fn failed_compression_rolls_back() {
        // B would squeeze A, but A's drop pushes C (resting on A, overhanging
        // the rigid D) into D.
        let bin = BinSpec::new("b", 20.0, 10.0, 30.0, 100.0).unwrap();
        let mut state = BinState::new(bin, true);
        let a = ItemSpec::standard("A", 10.0, 10.0, 10.0, 1.0, ClassId::GreenVegetable, 0).unwrap();
        let d = ItemSpec::standard("D", 10.0, 10.0, 10.0, 1.0, ClassId::Other, 1).unwrap();
        assert!(state.try_place(&a, r(0), 0));
        let floor_x10 = state
            .pivots
            .iter()
            .position(|p| p.point == Point::new(10.0, 0.0, 0.0))
            .unwrap();
        assert!(state.try_place(&d, r(0), floor_x10));
        let c = ItemSpec::standard("C", 20.0, 10.0, 5.0, 0.1, ClassId::Other, 2).unwrap();
        let on_a = state
            .pivots
            .iter()
            .position(|p| p.host == Some(0) && p.point.x == 0.0)
            .unwrap();
        // placing C compresses A slightly, dropping C into D
        let before = state.clone();
        assert!(!state.try_place(&c, r(0), on_a));
        assert_eq!(state.placed, before.placed);
        assert_eq!(state.pivots, before.pivots);
        assert_eq!(state.total_weight, before.total_weight);
    }

    #[test]
    fn pivots_after_first_item() {
        let mut state = BinState::new(small_bin(), false);
        let cabbage = rigid("Chinese Cabbage", 25.0, 12.0, 12.0);
        assert!(state.try_place(&cabbage, r(0), 0));
        assert_eq!(
            points(&state),
            [(25.0, 0.0, 0.0), (0.0, 12.0, 0.0), (0.0, 0.0, 12.0)]
        );
        assert_eq!(state.pivots[2].host, Some(0));
        assert_eq!(state.pivots[0].host, None);
    }

    #[test]
    fn generate_pivots_formulas() {
        let mut state = BinState::new(small_bin(), false);
        state.placed.push(PlacedItem::new(
            rigid("Potato", 12.0, 5.0, 5.0),
            r(0),
            Point::new(10.0, 5.0, 0.0),
        ));
        let got: Vec<_> = state.generate_pivots(0).iter().map(|p| p.point).collect();
        assert_eq!(
            got,
            [
                Point::new(22.0, 5.0, 0.0),
                Point::new(10.0, 10.0, 0.0),
                Point::new(10.0, 5.0, 5.0)
            ]
        );

        state.placed[0].true_height = 10.8;
        assert_eq!(state.generate_pivots(0)[2].point.z, 10.8);
    }

    #[test]
    fn remap_examples() {
        let mut state = BinState::new(small_bin(), false);
        state.placed.push(PlacedItem::new(
            rigid("base", 25.0, 12.0, 12.0),
            r(0),
            Point::ORIGIN,
        ));
        let dangling = PivotEntry {
            point: Point::new(25.0, 0.0, 12.0),
            host: Some(0),
        };
        assert_eq!(
            state.remap_dangling_pivot(dangling),
            PivotEntry::floor(25.0, 0.0)
        );

        let supported = PivotEntry {
            point: Point::new(10.0, 0.0, 12.0),
            host: Some(0),
        };
        assert_eq!(state.remap_dangling_pivot(supported), supported);

        // a 5 cm item under (10, 0) and a 12 cm one that does not cover it
        let mut state = BinState::new(small_bin(), false);
        state.placed.push(PlacedItem::new(
            rigid("low", 12.0, 12.0, 5.0),
            r(0),
            Point::ORIGIN,
        ));
        state.placed.push(PlacedItem::new(
            rigid("high", 10.0, 12.0, 12.0),
            r(0),
            Point::new(12.0, 0.0, 0.0),
        ));
        let p = PivotEntry {
            point: Point::new(10.0, 0.0, 12.0),
            host: Some(1),
        };
        assert_eq!(
            state.remap_dangling_pivot(p),
            PivotEntry {
                point: Point::new(10.0, 0.0, 5.0),
                host: Some(0)
            }
        );
    }

    #[test]
    fn insert_sorts_and_dedups() {
        let mut state = BinState::new(small_bin(), false);
        assert_eq!(points(&state), [(0.0, 0.0, 0.0)]);
        state.pivots.clear();
        state.placed.push(PlacedItem::new(
            rigid("a", 25.0, 12.0, 12.0),
            r(0),
            Point::ORIGIN,
        ));
        state.insert_pivots(&[
            PivotEntry {
                point: Point::new(0.0, 0.0, 12.0),
                host: Some(0),
            },
            PivotEntry::floor(25.0, 0.0),
            PivotEntry::floor(0.0, 12.0),
        ]);
        assert_eq!(
            points(&state),
            [(25.0, 0.0, 0.0), (0.0, 12.0, 0.0), (0.0, 0.0, 12.0)]
        );
        state.insert_pivots(&[PivotEntry::floor(25.0, 0.0)]);
        assert_eq!(state.pivots.len(), 3);
    }

    #[test]
    fn pivot_heights_follow_compressed_hosts() {
        let (bin, a, b) = squeeze_case();
        let mut state = BinState::new(bin, true);
        assert!(state.try_place(&a, r(0), 0));
        let on_top = state.pivots.iter().position(|p| p.host == Some(0)).unwrap();
        assert!(state.try_place(&b, r(0), on_top));
        for pivot in &state.pivots {
            if let Some(h) = pivot.host {
                assert!((pivot.point.z - state.placed[h].top()).abs() <= EPS);
            }
        }
    }
}
