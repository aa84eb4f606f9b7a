//! The partial order induced by a simultaneous enumeration, and its extensions.
//!
//! Every member graph's vertex set is a chain of the order, so an up-set is
//! known once its first element in each chain is. `PartialOrder` stores exactly
//! that: for every vertex and graph, the first chain position reachable from
//! the vertex. Comparisons are O(k) and adding a pair only touches vertices
//! whose up-sets actually grow.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::SunflowerInstance;
use crate::simultaneous::SimultaneousEnumeration;

pub const ABSENT: usize = usize::MAX;

/// Each graph's vertices in order, with neighbor counts on either side.
#[derive(Clone, Debug)]
pub struct Chains {
    pub n: usize,
    /// `order[j]` lists the global ids of graph `j` from left to right.
    pub order: Vec<Vec<usize>>,
    /// `pos[j][v]`, `ABSENT` when `v` is not in graph `j`.
    pub pos: Vec<Vec<usize>>,
    /// Per graph and position: neighbors at earlier positions.
    pub left_nb: Vec<Vec<usize>>,
    /// Per graph and position: neighbors at later positions.
    pub right_nb: Vec<Vec<usize>>,
    pub graphs_of: Vec<Vec<usize>>,
}

impl Chains {
    pub fn k(&self) -> usize {
        self.order.len()
    }

    pub fn contains(&self, j: usize, v: usize) -> bool {
        self.pos[j][v] != ABSENT
    }

    /// Last non-neighbor of `v` before it in graph `j`.
    pub fn last_non_neighbor_before(&self, j: usize, v: usize) -> Option<usize> {
        let p = self.pos[j][v];
        let q = p.checked_sub(self.left_nb[j][p] + 1)?;
        Some(self.order[j][q])
    }

    /// First non-neighbor of `v` after it in graph `j`.
    pub fn first_non_neighbor_after(&self, j: usize, v: usize) -> Option<usize> {
        let p = self.pos[j][v];
        self.order[j].get(p + self.right_nb[j][p] + 1).copied()
    }

    /// Position of the last neighbor of `v` after it (or of `v`) in graph `j`.
    pub fn reach_right(&self, j: usize, v: usize) -> usize {
        let p = self.pos[j][v];
        p + self.right_nb[j][p]
    }

    /// Position of the first neighbor of `v` before it (or of `v`) in graph `j`.
    pub fn reach_left(&self, j: usize, v: usize) -> usize {
        let p = self.pos[j][v];
        p - self.left_nb[j][p]
    }
}

/// A partial order in which every graph's vertex set is a chain.
#[derive(Clone, Debug)]
pub struct PartialOrder {
    /// `up[v][j]`: first position of graph `j` at or above `v`; the chain length if none.
    up: Vec<Vec<usize>>,
    /// Immediate predecessors: chain neighbors and sources of added pairs.
    preds: Vec<Vec<usize>>,
}

impl PartialOrder {
    pub fn le(&self, chains: &Chains, a: usize, b: usize) -> bool {
        a == b || chains.graphs_of[b].iter().any(|&j| chains.pos[j][b] >= self.up[a][j])
    }

    pub fn lt(&self, chains: &Chains, a: usize, b: usize) -> bool {
        a != b && self.le(chains, a, b)
    }

    pub fn up(&self, v: usize, j: usize) -> usize {
        self.up[v][j]
    }

    /// Adds `a < b` and everything it implies. Fails if `b <= a` already holds.
    pub fn add(&mut self, chains: &Chains, a: usize, b: usize) -> Result<()> {
        if self.le(chains, b, a) {
            return Err(Error::Internal(format!("adding {a} < {b} closes a cycle")));
        }
        if !self.preds[b].contains(&a) {
            self.preds[b].push(a);
        }
        let target = self.up[b].clone();
        self.lower(chains, a, &target, |_| true);
        Ok(())
    }

    /// Lowers the up-table of `start` and its predecessors to at most
    /// `target`, visiting only vertices accepted by `keep`.
    pub(crate) fn lower(&mut self, chains: &Chains, start: usize, target: &[usize], keep: impl Fn(usize) -> bool) {
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            if !keep(p) {
                continue;
            }
            let mut changed = false;
            for j in 0..chains.k() {
                if target[j] < self.up[p][j] {
                    self.up[p][j] = target[j];
                    changed = true;
                }
            }
            if changed {
                stack.extend(self.preds[p].iter().copied());
            }
        }
    }

    pub(crate) fn add_pred(&mut self, v: usize, pred: usize) {
        if self.preds[v].last() != Some(&pred) {
            self.preds[v].push(pred);
        }
    }
}

/// Each graph's vertices ordered consistently with every enumeration, and
/// the order they generate. Fails if the generated order is cyclic or does
/// not totally order some graph's vertices.
pub fn induced_partial_order(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> Result<(Chains, PartialOrder)> {
    let n = inst.vertex_count();
    let k = inst.k();
    // Vertices, then one node between each pair of consecutive blocks.
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (j, order) in se.orders.iter().enumerate() {
        let blocks = order.blocks();
        for b in 1..blocks.len() {
            let mid = succ.len();
            succ.push(Vec::new());
            indeg.push(blocks[b - 1].len());
            for &l in &blocks[b - 1] {
                succ[inst.to_global(j, l)].push(mid);
            }
            for &l in &blocks[b] {
                let g = inst.to_global(j, l);
                succ[mid].push(g);
                indeg[g] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..succ.len()).filter(|&x| indeg[x] == 0).map(Reverse).collect();
    let mut topo = Vec::with_capacity(succ.len());
    while let Some(Reverse(x)) = heap.pop() {
        topo.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    if topo.len() != succ.len() {
        return Err(Error::Enumeration("the enumerations order some vertices cyclically".into()));
    }
    let mut order: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut pos = vec![vec![ABSENT; n]; k];
    let mut graphs_of = vec![Vec::new(); n];
    for &x in topo.iter().filter(|&&x| x < n) {
        for j in inst.graphs_containing(x) {
            pos[j][x] = order[j].len();
            order[j].push(x);
            graphs_of[x].push(j);
        }
    }
    let mut left_nb = Vec::with_capacity(k);
    let mut right_nb = Vec::with_capacity(k);
    for j in 0..k {
        let g = inst.graph(j);
        let mut l = vec![0; order[j].len()];
        let mut r = vec![0; order[j].len()];
        for (p, &v) in order[j].iter().enumerate() {
            let local = inst.to_local(j, v).expect("vertex of graph");
            for &w in g.neighbors(local) {
                if pos[j][inst.to_global(j, w)] < p {
                    l[p] += 1;
                } else {
                    r[p] += 1;
                }
            }
        }
        left_nb.push(l);
        right_nb.push(r);
    }
    let chains = Chains { n, order, pos, left_nb, right_nb, graphs_of };

    let lens: Vec<usize> = chains.order.iter().map(Vec::len).collect();
    let mut up_all: Vec<Vec<usize>> = vec![lens.clone(); succ.len()];
    for &x in topo.iter().rev() {
        let mut row = up_all[x].clone();
        for &y in &succ[x] {
            for j in 0..k {
                row[j] = row[j].min(up_all[y][j]);
            }
        }
        if x < n {
            for &j in &chains.graphs_of[x] {
                row[j] = row[j].min(chains.pos[j][x]);
            }
        }
        up_all[x] = row;
    }
    up_all.truncate(n);
    let mut preds = vec![Vec::new(); n];
    for ord in &chains.order {
        for w in ord.windows(2) {
            preds[w[1]].push(w[0]);
        }
    }
    let po = PartialOrder { up: up_all, preds };
    for (j, ord) in chains.order.iter().enumerate() {
        for w in ord.windows(2) {
            if !po.le(&chains, w[0], w[1]) {
                return Err(Error::Enumeration(format!(
                    "vertices {} and {} of graph {j} are not ordered",
                    inst.vertex_name(w[0]),
                    inst.vertex_name(w[1])
                )));
            }
        }
    }
    Ok((chains, po))
}

/// Ordered pairs of the order that are edges (`E`) and non-edges (`F`) of a
/// graph containing both ends.
pub fn edge_classification(
    inst: &SunflowerInstance,
    chains: &Chains,
    alpha: &PartialOrder,
) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut e = Vec::new();
    let mut f = Vec::new();
    for u in 0..chains.n {
        for x in 0..chains.n {
            if !alpha.lt(chains, u, x) {
                continue;
            }
            let mut adj = false;
            let mut non = false;
            for &j in &chains.graphs_of[u] {
                if chains.contains(j, x) {
                    let g = inst.graph(j);
                    let (a, b) = (inst.to_local(j, u).unwrap(), inst.to_local(j, x).unwrap());
                    if g.has_edge(a, b) {
                        adj = true;
                    } else {
                        non = true;
                    }
                }
            }
            if adj {
                e.push((u, x));
            }
            if non {
                f.push((u, x));
            }
        }
    }
    (e, f)
}

/// Whether `vw ∈ E`, `ux ∈ F` and `x <= w` always give `u < v`.
pub fn is_left_closed(
    less_eq: impl Fn(usize, usize) -> bool,
    e: &[(usize, usize)],
    f: &[(usize, usize)],
) -> bool {
    e.iter().all(|&(v, w)| {
        f.iter().all(|&(u, x)| !less_eq(x, w) || (u != v && less_eq(u, v)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::simultaneous::{recognize_proper, ProperVerdict};

    fn path(names: &[&str]) -> Graph {
        let edges: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Graph::build(names, &edges).unwrap()
    }

    #[test]
    fn two_routes_order() {
        let inst = SunflowerInstance::new(
            vec![path(&["s1", "a", "b", "c", "s2"]), path(&["s1", "d", "s2"])],
            vec!["s1", "s2"],
            vec![],
        );
        let ProperVerdict::Yes(comps) = recognize_proper(&inst).unwrap() else { panic!() };
        let (chains, alpha) = induced_partial_order(&inst, &comps[0].enumeration).unwrap();
        let id = |s: &str| inst.global_index(s).unwrap();
        let first = if alpha.le(&chains, id("s1"), id("s2")) { "s1" } else { "s2" };
        let last = if first == "s1" { "s2" } else { "s1" };
        let line = if first == "s1" { ["s1", "a", "b", "c", "s2"] } else { ["s2", "c", "b", "a", "s1"] };
        for w in line.windows(2) {
            assert!(alpha.lt(&chains, id(w[0]), id(w[1])));
        }
        assert!(alpha.lt(&chains, id(first), id("d")) && alpha.lt(&chains, id("d"), id(last)));
        for x in ["a", "b", "c"] {
            assert!(!alpha.le(&chains, id(x), id("d")) && !alpha.le(&chains, id("d"), id(x)));
        }
        let mut extended = alpha.clone();
        extended.add(&chains, id("a"), id("d")).unwrap();
        assert!(extended.lt(&chains, id(line[0]), id("d")));
        assert!(extended.le(&chains, id("a"), id("d")));
        let after_a = line[line.iter().position(|&x| x == "a").unwrap() + 1];
        assert!(!extended.le(&chains, id(after_a), id("d")));
        assert!(extended.add(&chains, id("d"), id("a")).is_err());
    }
}
