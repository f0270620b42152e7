//! Height deformation of stacked items.
//!
//! An item carrying load `u` compresses by `c* = min(r, c * u / m)` and its
//! vertical extent becomes `h * (1 - c*)`. Loads travel down the single
//! `under` link of each item, so a column is a tree rooted at a floor item.

use std::collections::VecDeque;

use thiserror::Error;

use crate::model::PlacedItem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompressionError {
    #[error("support links form a cycle through item {0}")]
    Cycle(usize),
    #[error("item {0} is not resting on the floor")]
    NotFloorItem(usize),
}

/// Compression ratio of an item of weight `weight` under load `load`,
/// capped at `max_ratio`.
pub fn effective_compression_ratio(
    compressibility: f64,
    max_ratio: f64,
    weight: f64,
    load: f64,
) -> f64 {
    debug_assert!(weight > 0.0, "item weight must be positive");
    max_ratio.min(compressibility * load / weight)
}

pub fn true_height(height: f64, compression: f64) -> f64 {
    height * (1.0 - compression)
}

/// Supporters of a placement hosted by `host`, floor item first.
pub fn support_chain(items: &[PlacedItem], host: Option<usize>) -> Vec<usize> {
    let mut chain = Vec::new();
    let mut cursor = host;
    while let Some(idx) = cursor {
        if chain.len() > items.len() {
            // a cycle; recompute_column reports it
            break;
        }
        chain.push(idx);
        cursor = items[idx].under;
    }
    chain.reverse();
    chain
}

/// Adds `added_weight` to the top load of every item in `chain`.
pub fn propagate_load(items: &mut [PlacedItem], chain: &[usize], added_weight: f64) {
    for &idx in chain {
        items[idx].top_load += added_weight;
    }
}

/// Items reachable from `root` through `over` links, breadth-first,
/// `root` first.
pub fn column_members(items: &[PlacedItem], root: usize) -> Result<Vec<usize>, CompressionError> {
    let mut seen = vec![false; items.len()];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(idx) = queue.pop_front() {
        if seen[idx] {
            return Err(CompressionError::Cycle(idx));
        }
        seen[idx] = true;
        order.push(idx);
        queue.extend(items[idx].over.iter().copied());
    }
    Ok(order)
}

/// Recomputes compression, true height and elevation for every item
/// supported (transitively) by the floor item `root`. With `enabled` off
/// every item keeps its rigid height. Returns the visited items in
/// breadth-first order.
pub fn recompute_column(
    items: &mut [PlacedItem],
    root: usize,
    enabled: bool,
) -> Result<Vec<usize>, CompressionError> {
    if items[root].under.is_some() {
        return Err(CompressionError::NotFloorItem(root));
    }
    let order = column_members(items, root)?;
    for &idx in &order {
        let z = match items[idx].under {
            Some(under) => items[under].position.z + items[under].true_height,
            None => 0.0,
        };
        let item = &mut items[idx];
        let ratio = if enabled {
            let class = item.spec.class;
            effective_compression_ratio(
                class.compressibility,
                class.max_compression_ratio,
                item.spec.weight,
                item.top_load,
            )
        } else {
            0.0
        };
        item.true_compression = ratio;
        item.true_height = true_height(item.rot_dims.height, ratio);
        item.position.z = z;
    }
    Ok(order)
}
