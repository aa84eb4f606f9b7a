//! Blocks, straight and fine enumerations of single graphs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pqtree::{PqTree, Shape};
use crate::rational::{int, Interval, Representation};

/// Classes of vertices with equal closed neighborhoods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    /// Each block sorted; blocks ordered by least vertex.
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

pub fn compute_blocks(g: &Graph) -> BlockPartition {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0; g.len()];
    for v in 0..g.len() {
        let id = *seen.entry(g.closed_neighborhood(v)).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[id].push(v);
        block_of[v] = id;
    }
    BlockPartition { blocks, block_of }
}

/// An ordered block partition in which every block and the blocks adjacent to
/// it are consecutive. Components occupy contiguous spans.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StraightEnumeration {
    blocks: Vec<Vec<usize>>,
    position: Vec<usize>,
    spans: Vec<(usize, usize)>,
}

impl StraightEnumeration {
    /// Checks that `blocks` is a straight enumeration of `g` and wraps it.
    pub fn new(g: &Graph, blocks: Vec<Vec<usize>>) -> Result<StraightEnumeration> {
        let bad = |m: &str| Err(Error::Enumeration(m.to_string()));
        let mut position = vec![usize::MAX; g.len()];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return bad("empty block");
            }
            for &v in block {
                if v >= g.len() || position[v] != usize::MAX {
                    return bad("blocks do not partition the vertices");
                }
                position[v] = b;
            }
        }
        if position.contains(&usize::MAX) {
            return bad("blocks do not cover the vertices");
        }
        let truth = compute_blocks(g);
        for block in &blocks {
            let b = truth.block_of[block[0]];
            if truth.blocks[b].len() != block.len() || block.iter().any(|&v| truth.block_of[v] != b) {
                return bad("not the block partition of the graph");
            }
        }
        for (b, block) in blocks.iter().enumerate() {
            let v = block[0];
            let (mut lo, mut hi) = (b, b);
            let mut count = 1;
            let mut seen_blocks = vec![b];
            for &w in g.neighbors(v) {
                let p = position[w];
                if p != b && !seen_blocks.contains(&p) {
                    seen_blocks.push(p);
                    count += 1;
                    lo = lo.min(p);
                    hi = hi.max(p);
                }
            }
            if hi - lo + 1 != count {
                return bad("adjacent blocks are not consecutive");
            }
        }
        let spans = component_spans(g, &blocks, &position)
            .ok_or_else(|| Error::Enumeration("components are not contiguous".into()))?;
        Ok(StraightEnumeration { blocks, position, spans })
    }

    pub(crate) fn from_parts_unchecked(g: &Graph, blocks: Vec<Vec<usize>>) -> StraightEnumeration {
        let mut position = vec![0; g.len()];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                position[v] = b;
            }
        }
        let spans = component_spans(g, &blocks, &position).expect("components are contiguous");
        StraightEnumeration { blocks, position, spans }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block holding `v`.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Component spans `[start, end)` into the block list, in order.
    pub fn spans(&self) -> &[(usize, usize)] {
        &self.spans
    }

    /// Index of the span containing block position `b`.
    pub fn span_of_block(&self, b: usize) -> usize {
        self.spans.partition_point(|s| s.1 <= b)
    }

    /// Vertices listed block by block.
    pub fn vertex_order(&self) -> Vec<usize> {
        self.blocks.concat()
    }

    /// Whole order reversed.
    pub fn reversed(&self) -> StraightEnumeration {
        let n = self.blocks.len();
        let blocks: Vec<Vec<usize>> = self.blocks.iter().rev().cloned().collect();
        let position = self.position.iter().map(|&p| n - 1 - p).collect();
        let spans = self.spans.iter().rev().map(|&(s, e)| (n - e, n - s)).collect();
        StraightEnumeration { blocks, position, spans }
    }

    /// The blocks of one component span reversed in place.
    pub fn with_span_reversed(&self, span: usize) -> StraightEnumeration {
        let (s, e) = self.spans[span];
        let mut out = self.clone();
        out.blocks[s..e].reverse();
        for b in s..e {
            for &v in &out.blocks[b] {
                out.position[v] = b;
            }
        }
        out
    }

    /// Blocks with the components rearranged: `order[i]` is the old span placed i-th,
    /// reversed when `flip[i]`.
    pub fn rearranged(&self, order: &[usize], flip: &[bool]) -> StraightEnumeration {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        let mut spans = Vec::with_capacity(self.spans.len());
        for (i, &c) in order.iter().enumerate() {
            let (s, e) = self.spans[c];
            let start = blocks.len();
            if flip[i] {
                blocks.extend(self.blocks[s..e].iter().rev().cloned());
            } else {
                blocks.extend(self.blocks[s..e].iter().cloned());
            }
            spans.push((start, blocks.len()));
        }
        let mut position = vec![0; self.position.len()];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                position[v] = b;
            }
        }
        StraightEnumeration { blocks, position, spans }
    }
}

fn component_spans(g: &Graph, blocks: &[Vec<usize>], position: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut spans = Vec::new();
    let mut start = 0;
    // A component ends where no block reaches past the current frontier.
    let mut reach = 0;
    for (b, block) in blocks.iter().enumerate() {
        if b > reach && b > start {
            spans.push((start, b));
            start = b;
        }
        reach = reach.max(b);
        for &w in g.neighbors(block[0]) {
            reach = reach.max(position[w]);
        }
    }
    if !blocks.is_empty() {
        spans.push((start, blocks.len()));
    }
    // In a straight enumeration the reach sweep finds exactly the components.
    let comps = g.connected_components();
    if comps.len() != spans.len() {
        return None;
    }
    for comp in comps {
        let b = position[comp[0]];
        let span = spans[spans.partition_point(|s| s.1 <= b)];
        let size: usize = blocks[span.0..span.1].iter().map(Vec::len).sum();
        if size != comp.len() || comp.iter().any(|&v| position[v] < span.0 || position[v] >= span.1) {
            return None;
        }
    }
    Some(spans)
}

/// Lexicographic breadth-first search. Ties among equally labelled vertices go
/// to the one earliest in `initial`.
pub fn lex_bfs(g: &Graph, initial: &[usize]) -> Vec<usize> {
    let n = g.len();
    if n == 0 {
        return Vec::new();
    }
    let mut rank = vec![0; n];
    for (i, &v) in initial.iter().enumerate() {
        rank[v] = i;
    }
    // Neighbor lists sorted by rank so split-off cells keep the initial relative order.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in initial {
        for &w in g.neighbors(v) {
            adj[w].push(v);
        }
    }
    const NIL: usize = usize::MAX;
    // Cells form a linked list; each cell holds a linked list of vertices.
    let mut next_v = vec![NIL; n];
    let mut prev_v = vec![NIL; n];
    let mut cell_of = vec![0; n];
    let mut head: Vec<usize> = vec![initial[0]];
    let mut tail: Vec<usize> = vec![initial[n - 1]];
    let mut next_c: Vec<usize> = vec![NIL];
    let mut prev_c: Vec<usize> = vec![NIL];
    let mut split_into: Vec<usize> = vec![NIL];
    let mut split_stamp: Vec<usize> = vec![NIL];
    for w in initial.windows(2) {
        next_v[w[0]] = w[1];
        prev_v[w[1]] = w[0];
    }
    let mut first = 0;
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);

    fn unlink(
        v: usize,
        c: usize,
        head: &mut [usize],
        tail: &mut [usize],
        next_v: &mut [usize],
        prev_v: &mut [usize],
    ) {
        let (p, q) = (prev_v[v], next_v[v]);
        if p != usize::MAX {
            next_v[p] = q;
        } else {
            head[c] = q;
        }
        if q != usize::MAX {
            prev_v[q] = p;
        } else {
            tail[c] = p;
        }
        next_v[v] = usize::MAX;
        prev_v[v] = usize::MAX;
    }

    for step in 0..n {
        while head[first] == NIL {
            first = next_c[first];
        }
        let p = head[first];
        unlink(p, first, &mut head, &mut tail, &mut next_v, &mut prev_v);
        visited[p] = true;
        order.push(p);
        for &w in &adj[p] {
            if visited[w] {
                continue;
            }
            let c = cell_of[w];
            if split_stamp[c] != step {
                split_stamp[c] = step;
                let nc = head.len();
                head.push(NIL);
                tail.push(NIL);
                split_into.push(NIL);
                split_stamp.push(NIL);
                let before = prev_c[c];
                next_c.push(c);
                prev_c.push(before);
                prev_c[c] = nc;
                if before != NIL {
                    next_c[before] = nc;
                }
                if before == NIL || c == first {
                    first = nc;
                }
                split_into[c] = nc;
            }
            let nc = split_into[c];
            unlink(w, c, &mut head, &mut tail, &mut next_v, &mut prev_v);
            cell_of[w] = nc;
            if tail[nc] == NIL {
                head[nc] = w;
            } else {
                next_v[tail[nc]] = w;
                prev_v[w] = tail[nc];
            }
            tail[nc] = w;
        }
    }
    order
}

/// Lexicographic BFS breaking ties toward the vertex latest in `previous`.
pub fn lex_bfs_plus(g: &Graph, previous: &[usize]) -> Vec<usize> {
    let rev: Vec<usize> = previous.iter().rev().copied().collect();
    lex_bfs(g, &rev)
}

/// Whether `order` lists the vertices so that every closed neighborhood is consecutive.
pub fn verify_fine_enumeration(g: &Graph, order: &[usize]) -> Result<bool> {
    let pos = permutation_positions(g.len(), order)?;
    Ok(is_fine(g, &pos))
}

fn permutation_positions(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return Err(Error::Enumeration("not a permutation".into()));
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::Enumeration("not a permutation".into()));
        }
        pos[v] = i;
    }
    Ok(pos)
}

fn is_fine(g: &Graph, pos: &[usize]) -> bool {
    (0..g.len()).all(|v| {
        let (mut lo, mut hi) = (pos[v], pos[v]);
        for &w in g.neighbors(v) {
            lo = lo.min(pos[w]);
            hi = hi.max(pos[w]);
        }
        hi - lo == g.degree(v)
    })
}

/// A fine enumeration of a proper interval graph, or `None` if there is none.
pub fn fine_enumeration(g: &Graph) -> Option<Vec<usize>> {
    let identity: Vec<usize> = (0..g.len()).collect();
    let first = lex_bfs(g, &identity);
    let second = lex_bfs_plus(g, &first);
    let third = lex_bfs_plus(g, &second);
    let pos = permutation_positions(g.len(), &third).ok()?;
    is_fine(g, &pos).then_some(third)
}

/// The canonical straight enumeration, or `None` when `g` is not a proper interval graph.
///
/// Components come in order of their least vertex; each is oriented so its
/// least vertex's block is not after its mirror position.
///
/// ```
/// use sunflower_interval::{proper::straight_enumeration, Graph};
/// let path = Graph::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
/// let se = straight_enumeration(&path).unwrap();
/// assert_eq!(se.blocks(), &[vec![0], vec![1], vec![2]]);
/// let claw = Graph::build(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]).unwrap();
/// assert!(straight_enumeration(&claw).is_none());
/// ```
pub fn straight_enumeration(g: &Graph) -> Option<StraightEnumeration> {
    let order = fine_enumeration(g)?;
    let parts = compute_blocks(g);
    let mut seen = vec![false; parts.blocks.len()];
    let mut blocks = Vec::with_capacity(parts.blocks.len());
    for &v in &order {
        let b = parts.block_of[v];
        if !seen[b] {
            seen[b] = true;
            blocks.push(parts.blocks[b].clone());
        }
    }
    let raw = StraightEnumeration::new(g, blocks).ok()?;
    Some(canonical(&raw))
}

/// Reorders components by least vertex and orients each canonically.
pub fn canonical(se: &StraightEnumeration) -> StraightEnumeration {
    let mut comps: Vec<(usize, usize, bool)> = se
        .spans()
        .iter()
        .enumerate()
        .map(|(i, &(s, e))| {
            let mins: Vec<usize> = se.blocks[s..e].iter().map(|b| b[0]).collect();
            let least = *mins.iter().min().expect("nonempty component");
            let p = mins.iter().position(|&m| m == least).unwrap_or(0);
            let mirror = mins.len() - 1 - p;
            let flip = match p.cmp(&mirror) {
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => mins.iter().rev().lt(mins.iter()),
            };
            (least, i, flip)
        })
        .collect();
    comps.sort_unstable();
    let order: Vec<usize> = comps.iter().map(|c| c.1).collect();
    let flip: Vec<bool> = comps.iter().map(|c| c.2).collect();
    se.rearranged(&order, &flip)
}

/// Integer intervals realizing the enumeration: block `b` starts at `2Bb` and
/// ends just before the block after its last neighbor block starts.
pub fn representation_from_straight_enumeration(g: &Graph, se: &StraightEnumeration) -> Representation {
    let nb = se.block_count() as i64;
    let mut rep = Representation::default();
    for (b, block) in se.blocks().iter().enumerate() {
        let last = g
            .neighbors(block[0])
            .iter()
            .map(|&w| se.position(w))
            .chain(std::iter::once(b))
            .max()
            .unwrap_or(b) as i64;
        let b = b as i64;
        let iv = Interval::new(int(2 * nb * b), int(2 * nb * last + nb + b));
        for &v in block {
            rep.intervals.insert(g.name(v).to_string(), iv.clone());
        }
    }
    rep
}

/// A tree whose consistent orders are exactly the fine enumerations of `g`.
pub fn fine_enum_pqtree(g: &Graph) -> Option<PqTree> {
    if g.is_empty() {
        return None;
    }
    let se = straight_enumeration(g)?;
    Some(fine_enum_pqtree_of(&se))
}

pub(crate) fn fine_enum_pqtree_of(se: &StraightEnumeration) -> PqTree {
    let block_shape = |b: &Vec<usize>| match b.len() {
        1 => Shape::Leaf(b[0]),
        _ => Shape::P(b.iter().map(|&v| Shape::Leaf(v)).collect()),
    };
    let comps: Vec<Shape> = se
        .spans()
        .iter()
        .map(|&(s, e)| {
            let kids: Vec<Shape> = se.blocks()[s..e].iter().map(block_shape).collect();
            if kids.len() == 1 {
                kids.into_iter().next().expect("one block")
            } else {
                Shape::Q(kids)
            }
        })
        .collect();
    let root = if comps.len() == 1 { comps.into_iter().next().expect("one component") } else { Shape::P(comps) };
    PqTree::from_shape(root).expect("every vertex appears once")
}
