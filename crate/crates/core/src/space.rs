//! The space of simultaneous enumerations: which components can be reversed
//! on their own, which only together, and the full set they generate.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SunflowerInstance;
use crate::proper::compute_blocks;
use crate::simultaneous::SimultaneousEnumeration;

/// A component of a member graph, named by its graph and least global vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComponentId {
    pub graph: usize,
    pub least: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInfo {
    pub id: ComponentId,
    /// Global ids of the component's vertices, sorted.
    pub vertices: Vec<usize>,
    /// Global ids of its shared vertices, sorted.
    pub shared: Vec<usize>,
    pub block_count: usize,
    pub loose: bool,
    pub independent: bool,
    /// Blocks of the shared graph it is oriented at.
    pub oriented_at: Vec<usize>,
}

impl ComponentInfo {
    pub fn has_private(&self) -> bool {
        self.vertices.len() > self.shared.len()
    }
}

/// Components oriented at one block of the shared graph, all of them loose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversiblePart {
    pub shared_block: usize,
    pub members: Vec<ComponentId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClassification {
    pub components: Vec<ComponentInfo>,
    /// Per block of the shared graph (indices of `shared_blocks`): the components oriented at it.
    pub oriented: Vec<Vec<ComponentId>>,
    /// Blocks of the shared graph as global ids.
    pub shared_blocks: Vec<Vec<usize>>,
    pub reversible_parts: Vec<ReversiblePart>,
}

impl ComponentClassification {
    pub fn component(&self, id: ComponentId) -> Option<&ComponentInfo> {
        self.components.iter().find(|c| c.id == id)
    }

    /// Independent components whose reversal changes something.
    pub fn free_components(&self) -> Vec<ComponentId> {
        self.components.iter().filter(|c| c.independent && c.block_count > 1).map(|c| c.id).collect()
    }

    /// Reverses every member of a reversible part.
    pub fn reverse_part(
        &self,
        inst: &SunflowerInstance,
        se: &SimultaneousEnumeration,
        part: usize,
    ) -> Result<SimultaneousEnumeration> {
        let part = self
            .reversible_parts
            .get(part)
            .ok_or_else(|| Error::Enumeration(format!("no reversible part {part}")))?;
        Ok(reverse_components(inst, se, &part.members))
    }

    /// Reverses one independent component.
    pub fn reverse_independent(
        &self,
        inst: &SunflowerInstance,
        se: &SimultaneousEnumeration,
        id: ComponentId,
    ) -> Result<SimultaneousEnumeration> {
        match self.component(id) {
            Some(c) if c.independent => Ok(reverse_components(inst, se, &[id])),
            Some(_) => Err(Error::Enumeration(format!("component {id:?} is not independent"))),
            None => Err(Error::Enumeration(format!("no component {id:?}"))),
        }
    }
}

/// Reverses the listed components in place within their graphs' orders.
pub fn reverse_components(
    inst: &SunflowerInstance,
    se: &SimultaneousEnumeration,
    ids: &[ComponentId],
) -> SimultaneousEnumeration {
    let mut out = se.clone();
    for id in ids {
        let order = &out.orders[id.graph];
        let local = inst.to_local(id.graph, id.least).expect("component vertex in its graph");
        let span = order.span_of_block(order.position(local));
        out.orders[id.graph] = order.with_span_reversed(span);
    }
    out
}

pub fn reverse_all(se: &SimultaneousEnumeration) -> SimultaneousEnumeration {
    se.reversed()
}

pub fn classify_components(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> ComponentClassification {
    let shared = inst.shared_ids();
    let sblocks = compute_blocks(&inst.shared_graph());
    let mut sblock_of = vec![usize::MAX; inst.vertex_count()];
    for (a, &s) in shared.iter().enumerate() {
        sblock_of[s] = sblocks.block_of[a];
    }
    let shared_blocks: Vec<Vec<usize>> =
        sblocks.blocks.iter().map(|b| b.iter().map(|&a| shared[a]).collect()).collect();
    let mut components = Vec::new();
    let mut oriented = vec![Vec::new(); shared_blocks.len()];
    for (i, order) in se.orders.iter().enumerate() {
        for &(start, end) in order.spans() {
            let mut vertices: Vec<usize> = order.blocks()[start..end]
                .iter()
                .flatten()
                .map(|&l| inst.to_global(i, l))
                .collect();
            vertices.sort_unstable();
            let sh: Vec<usize> = vertices.iter().copied().filter(|&g| inst.is_shared(g)).collect();
            let block = |g: usize| order.position(inst.to_local(i, g).expect("vertex of graph"));
            let loose = sh.windows(2).all(|w| sblock_of[w[0]] == sblock_of[w[1]]);
            let aligns_any = sh.windows(2).any(|w| block(w[0]) != block(w[1]));
            let id = ComponentId { graph: i, least: vertices[0] };
            let mut at: Vec<usize> = Vec::new();
            for (x, &u) in sh.iter().enumerate() {
                for &v in &sh[x + 1..] {
                    let b = sblock_of[u];
                    if b == sblock_of[v] && block(u) != block(v) && !at.contains(&b) {
                        at.push(b);
                    }
                }
            }
            for &b in &at {
                oriented[b].push(id);
            }
            components.push(ComponentInfo {
                id,
                vertices,
                shared: sh,
                block_count: end - start,
                loose,
                independent: loose && !aligns_any,
                oriented_at: at,
            });
        }
    }
    let mut reversible_parts = Vec::new();
    for (b, members) in oriented.iter().enumerate() {
        if !members.is_empty()
            && members.iter().all(|id| components.iter().any(|c| c.id == *id && c.loose))
        {
            reversible_parts.push(ReversiblePart { shared_block: b, members: members.clone() });
        }
    }
    ComponentClassification { components, oriented, shared_blocks, reversible_parts }
}

/// Every enumeration obtained from `se` or its reversal by reversing free
/// components and reversible parts, without duplicates.
pub fn enumerate_space(
    inst: &SunflowerInstance,
    se: &SimultaneousEnumeration,
    cap: usize,
) -> Result<Vec<SimultaneousEnumeration>> {
    let class = classify_components(inst, se);
    let mut moves: Vec<Vec<ComponentId>> = class.free_components().into_iter().map(|c| vec![c]).collect();
    moves.extend(class.reversible_parts.iter().map(|p| p.members.clone()));
    let bits = moves.len() + 1;
    if bits >= usize::BITS as usize || (1usize << bits) > cap {
        return Err(Error::CapExceeded { what: format!("2^{bits} enumerations"), cap });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for base in [se.clone(), se.reversed()] {
        for mask in 0..1usize << moves.len() {
            let ids: Vec<ComponentId> =
                (0..moves.len()).filter(|&m| mask >> m & 1 == 1).flat_map(|m| moves[m].iter().copied()).collect();
            let cand = reverse_components(inst, &base, &ids);
            let key: Vec<Vec<Vec<usize>>> = cand.orders.iter().map(|o| o.blocks().to_vec()).collect();
            if seen.insert(key) {
                out.push(cand);
            }
        }
    }
    Ok(out)
}
