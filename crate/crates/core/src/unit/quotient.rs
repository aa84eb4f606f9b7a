//! Identifying vertices that can share one interval.

use crate::graph::SunflowerInstance;
use crate::simultaneous::{restrict_enumeration, SimultaneousEnumeration};

/// The reduced instance together with, for every original global id, the
/// original global id of the vertex whose interval it copies.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub reduced: SunflowerInstance,
    pub enumeration: SimultaneousEnumeration,
    pub representative: Vec<usize>,
}

impl Quotient {
    /// Original ids kept in the reduced instance, sorted.
    pub fn kept(&self) -> Vec<usize> {
        (0..self.representative.len()).filter(|&v| self.representative[v] == v).collect()
    }
}

/// Merges shared vertices that sit in one block in every graph, and every
/// private vertex into a vertex of its block (the least shared one if the
/// block has shared vertices). After this each graph's vertices are totally
/// ordered by the order the enumeration induces.
pub fn quotient_indistinguishable(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> Quotient {
    let n = inst.vertex_count();
    let mut rep: Vec<usize> = (0..n).collect();
    let shared = inst.shared_ids();
    let mut by_signature: std::collections::HashMap<Vec<usize>, usize> = std::collections::HashMap::new();
    for &s in &shared {
        let sig: Vec<usize> = (0..inst.k()).map(|i| se.block_of(inst, i, s).unwrap_or(usize::MAX)).collect();
        let r = *by_signature.entry(sig).or_insert(s);
        rep[s] = r;
    }
    for i in 0..inst.k() {
        for block in se.orders[i].blocks() {
            let gids: Vec<usize> = block.iter().map(|&l| inst.to_global(i, l)).collect();
            let target = gids
                .iter()
                .copied()
                .filter(|&g| inst.is_shared(g))
                .min()
                .map(|s| rep[s])
                .unwrap_or_else(|| *gids.iter().min().expect("blocks are nonempty"));
            for &g in &gids {
                if !inst.is_shared(g) {
                    rep[g] = target;
                }
            }
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&v| rep[v] == v).collect();
    let reduced = inst.restrict(&kept);
    let enumeration = restrict_enumeration(inst, se, &reduced);
    Quotient { reduced, enumeration, representative: rep }
}
