//! Exhaustive search for the best packing of a handful of items.
//!
//! Every subset, loading order and rotation is tried. Corner positions come
//! from the usual normal-pattern grid: along x (resp. y) an item may start
//! at 0 or at any sum of the rotated depths (widths) of items loaded before
//! it. Each item either stands on the floor or rests on an earlier item
//! whose footprint contains its corner; loads, compression and elevations
//! are then evaluated from scratch for the whole arrangement after every
//! insertion, so each loading prefix is feasible too.

use thiserror::Error;

use super::metrics::compute_metrics;
use crate::model::{
    rotate_dims, BinSpec, Dims, ItemSpec, Metrics, PackingSolution, PlacedItem, Point,
    RotationType, EPS,
};

pub const ORACLE_MAX_ITEMS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle handles at most {ORACLE_MAX_ITEMS} items (got {0})")]
    TooManyItems(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Best achievable sum of uncompressed volumes.
    pub initial_volume: f64,
    /// One arrangement reaching it, in loading order.
    pub arrangement: PackingSolution,
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    item: usize,
    rotation: RotationType,
    dims: Dims,
    x: f64,
    y: f64,
    host: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Settled {
    z: f64,
    height: f64,
    compression: f64,
    load: f64,
}

struct Search<'a> {
    items: &'a [ItemSpec],
    bin: &'a BinSpec,
    compression: bool,
    all_volume: f64,
    best_volume: f64,
    best: Vec<Slot>,
}

pub fn oracle_pack(
    items: &[ItemSpec],
    bin: &BinSpec,
    compression_enabled: bool,
) -> Result<OracleResult, OracleError> {
    if items.len() > ORACLE_MAX_ITEMS {
        return Err(OracleError::TooManyItems(items.len()));
    }
    let mut search = Search {
        items,
        bin,
        compression: compression_enabled,
        all_volume: items.iter().map(ItemSpec::initial_volume).sum(),
        best_volume: 0.0,
        best: Vec::new(),
    };
    let mut slots = Vec::with_capacity(items.len());
    search.dfs(&mut slots, 0.0);

    let settled = search
        .settle(&search.best)
        .expect("best arrangement is feasible");
    let steps = search
        .best
        .iter()
        .zip(&settled)
        .enumerate()
        .map(|(k, (slot, s))| PlacedItem {
            spec: items[slot.item].clone(),
            rotation: slot.rotation,
            position: Point::new(slot.x, slot.y, s.z),
            rot_dims: slot.dims,
            true_height: s.height,
            true_compression: s.compression,
            top_load: s.load,
            under: slot.host,
            over: search
                .best
                .iter()
                .enumerate()
                .filter(|(_, o)| o.host == Some(k))
                .map(|(j, _)| j)
                .collect(),
        })
        .collect();
    let used: Vec<usize> = search.best.iter().map(|s| s.item).collect();
    let mut arrangement = PackingSolution {
        bin: bin.clone(),
        compression: compression_enabled,
        steps,
        unpacked: (0..items.len())
            .filter(|i| !used.contains(i))
            .map(|i| items[i].clone())
            .collect(),
        metrics: Metrics::default(),
    };
    arrangement.metrics = compute_metrics(&arrangement);
    Ok(OracleResult {
        initial_volume: search.best_volume,
        arrangement,
    })
}

impl Search<'_> {
    fn dfs(&mut self, slots: &mut Vec<Slot>, volume: f64) {
        if volume > self.best_volume + EPS {
            self.best_volume = volume;
            self.best = slots.clone();
        }
        let remaining: f64 = (0..self.items.len())
            .filter(|&i| !slots.iter().any(|s| s.item == i))
            .map(|i| self.items[i].initial_volume())
            .sum();
        if self.best_volume >= self.all_volume - EPS || volume + remaining <= self.best_volume + EPS
        {
            return;
        }

        for i in 0..self.items.len() {
            if slots.iter().any(|s| s.item == i) {
                continue;
            }
            let spec = &self.items[i];
            let mut seen: Vec<Dims> = Vec::new();
            for rotation in RotationType::ALL {
                let dims = rotate_dims(spec.dims, rotation);
                if seen.contains(&dims) {
                    continue;
                }
                seen.push(dims);
                let xs = offsets(
                    slots.iter().map(|s| s.dims.depth),
                    dims.depth,
                    self.bin.depth,
                );
                let ys = offsets(
                    slots.iter().map(|s| s.dims.width),
                    dims.width,
                    self.bin.width,
                );
                for &x in &xs {
                    for &y in &ys {
                        let hosts: Vec<Option<usize>> = std::iter::once(None)
                            .chain(
                                slots
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, s)| {
                                        x >= s.x - EPS
                                            && x < s.x + s.dims.depth - EPS
                                            && y >= s.y - EPS
                                            && y < s.y + s.dims.width - EPS
                                    })
                                    .map(|(j, _)| Some(j)),
                            )
                            .collect();
                        for host in hosts {
                            slots.push(Slot {
                                item: i,
                                rotation,
                                dims,
                                x,
                                y,
                                host,
                            });
                            if self.settle(slots).is_some() {
                                self.dfs(slots, volume + spec.initial_volume());
                            }
                            slots.pop();
                        }
                    }
                }
            }
        }
    }

    /// Evaluates loads and heights of a whole arrangement; `None` if it
    /// breaks the weight, height or overlap rules.
    fn settle(&self, slots: &[Slot]) -> Option<Vec<Settled>> {
        let weight: f64 = slots.iter().map(|s| self.items[s.item].weight).sum();
        if weight > self.bin.max_weight + EPS {
            return None;
        }
        let mut out = vec![Settled::default(); slots.len()];
        for s in slots {
            let w = self.items[s.item].weight;
            let mut cursor = s.host;
            while let Some(j) = cursor {
                out[j].load += w;
                cursor = slots[j].host;
            }
        }
        for k in 0..slots.len() {
            let spec = &self.items[slots[k].item];
            let ratio = if self.compression {
                let c = spec.class.compressibility * out[k].load / spec.weight;
                c.min(spec.class.max_compression_ratio)
            } else {
                0.0
            };
            out[k].compression = ratio;
            out[k].height = slots[k].dims.height * (1.0 - ratio);
            out[k].z = slots[k].host.map_or(0.0, |j| out[j].z + out[j].height);
            if out[k].z + out[k].height > self.bin.height + EPS {
                return None;
            }
        }
        for a in 0..slots.len() {
            for b in a + 1..slots.len() {
                let (p, q) = (&slots[a], &slots[b]);
                let overlap = |p0: f64, p1: f64, q0: f64, q1: f64| p0 < q1 - EPS && q0 < p1 - EPS;
                if overlap(p.x, p.x + p.dims.depth, q.x, q.x + q.dims.depth)
                    && overlap(p.y, p.y + p.dims.width, q.y, q.y + q.dims.width)
                    && overlap(
                        out[a].z,
                        out[a].z + out[a].height,
                        out[b].z,
                        out[b].z + out[b].height,
                    )
                {
                    return None;
                }
            }
        }
        Some(out)
    }
}

/// 0 and every subset sum of `lengths`, keeping those where an item of
/// extent `extent` still fits below `limit`.
fn offsets(lengths: impl Iterator<Item = f64>, extent: f64, limit: f64) -> Vec<f64> {
    let mut sums = vec![0.0];
    for len in lengths {
        let extended: Vec<f64> = sums.iter().map(|s| s + len).collect();
        sums.extend(extended);
    }
    sums.sort_by(f64::total_cmp);
    sums.dedup_by(|a, b| (*a - *b).abs() <= EPS);
    sums.retain(|s| s + extent <= limit + EPS);
    sums
}
