//! Chains in the union graph against bars in one member graph.

use std::collections::VecDeque;

use crate::graph::SunflowerInstance;
use crate::simultaneous::SimultaneousEnumeration;
use crate::unit::{ChainGraph, Conflict};

/// Breadth-first distances and parents in the union graph, over global ids.
#[derive(Clone, Debug)]
pub struct UnionPaths {
    adjacency: Vec<Vec<usize>>,
}

impl UnionPaths {
    pub fn new(inst: &SunflowerInstance) -> UnionPaths {
        let mut adjacency = vec![Vec::new(); inst.vertex_count()];
        for (i, g) in inst.graphs().iter().enumerate() {
            for (a, b) in g.edges() {
                let (u, v) = (inst.to_global(i, a), inst.to_global(i, b));
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        UnionPaths { adjacency }
    }

    /// Parent pointers of a search from `source`; `usize::MAX` when unreached.
    pub fn tree(&self, source: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.adjacency.len();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        (dist, parent)
    }
}

/// Size of the shortest chain between `u` and `v` in the union graph.
pub fn shortest_chain(inst: &SunflowerInstance, u: usize, v: usize) -> Option<usize> {
    let (dist, _) = UnionPaths::new(inst).tree(u);
    (dist[v] != usize::MAX).then(|| dist[v] + 1)
}

/// Block-level tables of one member graph's enumeration.
#[derive(Clone, Debug)]
pub struct BarTable {
    /// Last and first block adjacent to each block (the block itself included).
    hi: Vec<usize>,
    lo: Vec<usize>,
    /// Component span `[start, end)` of each block.
    span: Vec<(usize, usize)>,
    /// Largest bar starting at a block and heading right (left) within its component.
    right: Vec<usize>,
    left: Vec<usize>,
    /// Prefix sums of component independence numbers, per component in order.
    prefix: Vec<usize>,
    component: Vec<usize>,
}

impl BarTable {
    pub fn new(inst: &SunflowerInstance, se: &SimultaneousEnumeration, i: usize) -> BarTable {
        let order = &se.orders[i];
        let g = inst.graph(i);
        let blocks = order.blocks();
        let m = blocks.len();
        let mut hi = vec![0; m];
        let mut lo = vec![0; m];
        for (b, block) in blocks.iter().enumerate() {
            let v = block[0];
            let ps = g.neighbors(v).iter().map(|&w| order.position(w));
            hi[b] = ps.clone().chain([b]).max().unwrap();
            lo[b] = ps.chain([b]).min().unwrap();
        }
        let mut span = vec![(0, 0); m];
        let mut component = vec![0; m];
        for (c, &(s, e)) in order.spans().iter().enumerate() {
            for b in s..e {
                span[b] = (s, e);
                component[b] = c;
            }
        }
        let mut right = vec![1; m];
        for b in (0..m).rev() {
            if hi[b] + 1 < span[b].1 {
                right[b] = 1 + right[hi[b] + 1];
            }
        }
        let mut left = vec![1; m];
        for b in 0..m {
            if lo[b] > span[b].0 {
                left[b] = 1 + left[lo[b] - 1];
            }
        }
        let mut prefix = vec![0];
        for &(s, _) in order.spans() {
            prefix.push(prefix.last().unwrap() + right[s]);
        }
        BarTable { hi, lo, span, right, left, prefix, component }
    }

    /// Size of the largest bar from block `a` to a later block `b`, with
    /// the components of `a` and `b` reversed as given. `None` for adjacent
    /// blocks or when `b` does not come after `a`.
    pub fn bar(&self, a: usize, b: usize, flip_a: bool, flip_b: bool) -> Option<usize> {
        let (ca, cb) = (self.component[a], self.component[b]);
        if ca == cb {
            // Reversing the whole component swaps the ends; the size is symmetric.
            let before = if flip_a { b < a } else { a < b };
            if !before {
                return None;
            }
            let (x, y) = (a.min(b), a.max(b));
            return self.inner_bar(x, y).map(|path| path.len());
        }
        if ca > cb {
            return None;
        }
        let from_a = if flip_a { self.left[a] } else { self.right[a] };
        let into_b = if flip_b { self.right[b] } else { self.left[b] };
        Some(from_a + self.prefix[cb] - self.prefix[ca + 1] + into_b)
    }

    /// Greedy bar between blocks `x < y` of one component, as block positions.
    fn inner_bar(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        if x >= self.lo[y] {
            return None;
        }
        let mut path = vec![x];
        let mut cur = x;
        while self.hi[cur] + 1 < self.lo[y] {
            cur = self.hi[cur] + 1;
            path.push(cur);
        }
        path.push(y);
        Some(path)
    }

    fn run_right(&self, a: usize) -> Vec<usize> {
        let mut path = vec![a];
        let mut cur = a;
        while self.hi[cur] + 1 < self.span[cur].1 {
            cur = self.hi[cur] + 1;
            path.push(cur);
        }
        path
    }

    fn run_left(&self, a: usize) -> Vec<usize> {
        let mut path = vec![a];
        let mut cur = a;
        while self.lo[cur] > self.span[cur].0 {
            cur = self.lo[cur] - 1;
            path.push(cur);
        }
        path
    }

    /// Block positions of a largest bar in the unflipped order, `a` before `b`.
    fn bar_blocks(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let (ca, cb) = (self.component[a], self.component[b]);
        if ca == cb {
            return self.inner_bar(a, b);
        }
        let mut path = self.run_right(a);
        let mut s = self.span[a].1;
        while s < self.span[b].0 {
            let run = self.run_right(s);
            s = self.span[s].1;
            path.extend(run);
        }
        let mut tail = self.run_left(b);
        tail.reverse();
        path.extend(tail);
        Some(path)
    }
}

/// Size of the largest bar from `u` to `v` in graph `i`, with the
/// components of `u` and `v` reversed as given; `None` if `v` is not after
/// `u` or no bar exists.
pub fn max_bar(
    inst: &SunflowerInstance,
    i: usize,
    se: &SimultaneousEnumeration,
    u: usize,
    v: usize,
    flip_u: bool,
    flip_v: bool,
) -> Option<usize> {
    let table = BarTable::new(inst, se, i);
    let (a, b) = (se.block_of(inst, i, u)?, se.block_of(inst, i, v)?);
    table.bar(a, b, flip_u, flip_v)
}

/// The first relaxed conflict over all pairs of shared vertices, scanned in
/// the shared order and by graph.
pub fn find_relaxed_conflict(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> Option<Conflict> {
    let shared = inst.shared_ids();
    if shared.len() < 2 || inst.k() < 2 {
        return None;
    }
    let paths = UnionPaths::new(inst);
    let tables: Vec<BarTable> = (0..inst.k()).map(|i| BarTable::new(inst, se, i)).collect();
    for (x, &u) in shared.iter().enumerate() {
        let (dist, parent) = paths.tree(u);
        for &v in &shared[x + 1..] {
            if dist[v] == usize::MAX {
                continue;
            }
            let chain = dist[v] + 1;
            for (i, table) in tables.iter().enumerate() {
                let (a, b) = (se.block_of(inst, i, u).unwrap(), se.block_of(inst, i, v).unwrap());
                let (a, b, left, right) = if a <= b { (a, b, u, v) } else { (b, a, v, u) };
                let Some(size) = table.bar(a, b, false, false) else { continue };
                if size < chain {
                    continue;
                }
                let mut path = vec![v];
                while *path.last().unwrap() != u {
                    path.push(parent[*path.last().unwrap()]);
                }
                if left == u {
                    path.reverse();
                }
                let blocks = table.bar_blocks(a, b).expect("a bar exists");
                let order = &se.orders[i];
                let mut bar: Vec<usize> = blocks[..chain - 1]
                    .iter()
                    .map(|&blk| inst.to_global(i, order.blocks()[blk][0]))
                    .collect();
                bar[0] = left;
                bar.push(right);
                return Some(Conflict { u: left, v: right, chain: path, bar, chain_graph: ChainGraph::Union, bar_graph: i });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::brute_force_conflict;
    use crate::simultaneous::{recognize_proper, ProperVerdict};
    use crate::space::enumerate_space;

    fn path(names: &[&str]) -> Graph {
        let edges: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Graph::build(names, &edges).unwrap()
    }

    fn enumeration(inst: &SunflowerInstance) -> SimultaneousEnumeration {
        let ProperVerdict::Yes(comps) = recognize_proper(inst).unwrap() else { panic!("expected yes") };
        comps[0].enumeration.clone()
    }

    fn long_bar() -> SunflowerInstance {
        let long = path(&["s1", "x1", "d", "x2", "e", "x3", "f", "x4", "s2"]);
        SunflowerInstance::new(vec![path(&["s1", "a", "b", "c", "s2"]), long], vec!["s1", "s2"], vec![])
    }

    #[test]
    fn long_bar_chain_and_bar() {
        let inst = long_bar();
        let se = enumeration(&inst);
        let (s1, s2) = (inst.global_index("s1").unwrap(), inst.global_index("s2").unwrap());
        assert_eq!(shortest_chain(&inst, s1, s2), Some(5));
        assert_eq!(shortest_chain(&inst, s1, s1), Some(1));
        let (u, v) = if se.block_of(&inst, 1, s1) < se.block_of(&inst, 1, s2) { (s1, s2) } else { (s2, s1) };
        assert_eq!(max_bar(&inst, 1, &se, u, v, false, false), Some(5));
        let c = find_relaxed_conflict(&inst, &se).unwrap();
        assert_eq!((c.chain.len(), c.bar.len()), (5, 5));
        assert_eq!(c.bar_graph, 1);
        let names: Vec<&str> = c.bar.iter().map(|&g| inst.vertex_name(g)).collect();
        let inner: Vec<&str> = names[1..4].to_vec();
        assert!(inner == ["d", "e", "f"] || inner == ["f", "e", "d"], "{names:?}");
    }

    #[test]
    fn bar_past_a_common_neighbor() {
        let g = path(&["s1", "x", "s2"]);
        let h = Graph::build(&["s1", "s2"], &[]).unwrap();
        let inst = SunflowerInstance::new(vec![g, h], vec!["s1", "s2"], vec![]);
        let se = enumeration(&inst);
        let (s1, s2) = (inst.global_index("s1").unwrap(), inst.global_index("s2").unwrap());
        let (u, v) = if se.block_of(&inst, 0, s1) < se.block_of(&inst, 0, s2) { (s1, s2) } else { (s2, s1) };
        assert_eq!(max_bar(&inst, 0, &se, u, v, false, false), Some(2));
        assert_eq!(max_bar(&inst, 0, &se, v, u, false, false), None);
        // Chain s1-x-s2 of size 3 beats both bars.
        assert_eq!(find_relaxed_conflict(&inst, &se), None);
    }

    #[test]
    fn two_routes_has_a_conflict_in_every_enumeration() {
        let inst = SunflowerInstance::new(
            vec![path(&["s1", "a", "b", "c", "s2"]), path(&["s1", "d", "s2"])],
            vec!["s1", "s2"],
            vec![],
        );
        let se = enumeration(&inst);
        for e in enumerate_space(&inst, &se, 64).unwrap() {
            let c = find_relaxed_conflict(&inst, &e).expect("conflict");
            assert_eq!((c.chain.len(), c.bar.len(), c.bar_graph), (3, 3, 0));
            assert!(brute_force_conflict(&inst, &e, 10).unwrap().is_some());
        }
    }

    #[test]
    fn flips_across_components() {
        // Graph 0: s1 alone, then a path p-q-s2; reversing that path moves s2 to its near end.
        let g = Graph::build(&["s1", "p", "q", "s2"], &[("p", "q"), ("q", "s2")]).unwrap();
        let h = path(&["s1", "z", "s2"]);
        let inst = SunflowerInstance::new(vec![g, h], vec!["s1", "s2"], vec![]);
        let se = enumeration(&inst);
        let table = BarTable::new(&inst, &se, 0);
        let (s1, s2) = (inst.global_index("s1").unwrap(), inst.global_index("s2").unwrap());
        let (a, b) = (se.block_of(&inst, 0, s1).unwrap(), se.block_of(&inst, 0, s2).unwrap());
        let (a, b) = (a.min(b), a.max(b));
        let sizes: Vec<usize> = [false, true].iter().map(|&f| table.bar(a, b, false, f).unwrap()).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        // s2 at the far end of its path gives s1,p,s2; at the near end only s1,s2.
        assert_eq!(sorted, vec![2, 3]);
    }
}
