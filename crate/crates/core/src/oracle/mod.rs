//! Brute-force ground truth and the representation checker.
//!
//! Nothing here calls the recognition algorithms; blocks, enumerations,
//! chains and bars are recomputed from their definitions.

pub mod general;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, SunflowerInstance};
use crate::rational::{Interval, Representation};
use crate::simultaneous::SimultaneousEnumeration;
use crate::unit::{ChainGraph, Conflict};
use crate::Mode;

pub const DEFAULT_VERTEX_CAP: usize = 10;
const ENUMERATION_CAP: usize = 400_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    MissingEdge,
    ExtraEdge,
    Containment,
    NonUnitLength,
    SharedMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub kind: FailureKind,
    pub graph: Option<usize>,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub ok: bool,
    pub mode: Mode,
    pub failures: Vec<CheckFailure>,
}

/// Verifies a representation exactly: per graph, intervals intersect iff the
/// vertices are adjacent; no proper containment (proper mode) or all lengths
/// one (unit mode).
pub fn check_representation(inst: &SunflowerInstance, rep: &Representation, mode: Mode) -> Result<CheckReport> {
    let mut failures = Vec::new();
    for name in inst.vertex_names() {
        if rep.get(name).is_none() {
            return Err(Error::Enumeration(format!("no interval for vertex {name}")));
        }
    }
    if let Some(per_graph) = &rep.per_graph {
        for (i, g) in inst.graphs().iter().enumerate() {
            let mut listed: Vec<&String> = per_graph.get(i).map(|v| v.iter().collect()).unwrap_or_default();
            let mut actual: Vec<&String> = g.names().iter().collect();
            listed.sort();
            actual.sort();
            if listed != actual {
                failures.push(CheckFailure { kind: FailureKind::SharedMismatch, graph: Some(i), vertices: vec![] });
            }
        }
    }
    for (i, g) in inst.graphs().iter().enumerate() {
        let ivs: Vec<&Interval> = g.names().iter().map(|n| rep.get(n).expect("checked above")).collect();
        check_graph(g, i, &ivs, mode, &mut failures);
    }
    Ok(CheckReport { ok: failures.is_empty(), mode, failures })
}

fn check_graph(g: &Graph, gi: usize, ivs: &[&Interval], mode: Mode, failures: &mut Vec<CheckFailure>) {
    let name = |v: usize| g.name(v).to_string();
    let mut fail = |kind, vs: Vec<String>| failures.push(CheckFailure { kind, graph: Some(gi), vertices: vs });
    let mut by_left: Vec<usize> = (0..g.len()).collect();
    by_left.sort_by(|&a, &b| (&ivs[a].l, std::cmp::Reverse(&ivs[a].r)).cmp(&(&ivs[b].l, std::cmp::Reverse(&ivs[b].r))));
    let mut met = vec![0usize; g.len()];
    for (at, &a) in by_left.iter().enumerate() {
        if ivs[a].r < ivs[a].l {
            fail(FailureKind::Containment, vec![name(a)]);
        }
        for &b in &by_left[at + 1..] {
            if ivs[b].l > ivs[a].r {
                break;
            }
            met[a] += 1;
            met[b] += 1;
            if !g.has_edge(a, b) {
                fail(FailureKind::ExtraEdge, vec![name(a), name(b)]);
            }
        }
    }
    for v in 0..g.len() {
        if met[v] < g.degree(v) {
            for &w in g.neighbors(v) {
                if v < w && !ivs[v].intersects(ivs[w]) {
                    fail(FailureKind::MissingEdge, vec![name(v), name(w)]);
                }
            }
        }
    }
    match mode {
        Mode::Unit => {
            for v in 0..g.len() {
                if ivs[v].length() != crate::rational::int(1) {
                    fail(FailureKind::NonUnitLength, vec![name(v)]);
                }
            }
        }
        Mode::Proper => {
            // Sorted by left ascending, right descending: a containment shows up
            // as a right endpoint not beyond the largest one seen so far.
            let mut best: Option<usize> = None;
            for &b in &by_left {
                if let Some(a) = best {
                    if ivs[a].properly_contains(ivs[b]) {
                        fail(FailureKind::Containment, vec![name(a), name(b)]);
                    }
                }
                best = match best {
                    Some(a) if ivs[a].r > ivs[b].r || (ivs[a].r == ivs[b].r && ivs[a].l <= ivs[b].l) => Some(a),
                    _ => Some(b),
                };
            }
        }
    }
}

/// Blocks by definition: equal closed neighborhoods. Sorted, ordered by least vertex.
pub fn blocks_by_definition(g: &Graph) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut key: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.len() {
        let mut nb: Vec<usize> = g.neighbors(v).to_vec();
        nb.push(v);
        nb.sort_unstable();
        match key.iter().position(|k| *k == nb) {
            Some(i) => out[i].push(v),
            None => {
                key.push(nb);
                out.push(vec![v]);
            }
        }
    }
    out
}

/// All straight enumerations of `g` as block lists, by backtracking over block
/// sequences with a prefix test that is exact for extendability of each
/// block's neighborhood range.
pub fn all_straight_enumerations(g: &Graph, cap: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let blocks = blocks_by_definition(g);
    let nb = blocks.len();
    let adj: Vec<Vec<bool>> = (0..nb)
        .map(|a| (0..nb).map(|b| a == b || g.has_edge(blocks[a][0], blocks[b][0])).collect())
        .collect();
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(nb);
    let mut used = vec![false; nb];
    fn ok_prefix(seq: &[usize], used: &[bool], adj: &[Vec<bool>]) -> bool {
        for (p, &b) in seq.iter().enumerate() {
            let placed: Vec<usize> = (0..seq.len()).filter(|&q| adj[b][seq[q]]).collect();
            let (lo, hi) = (placed[0], placed[placed.len() - 1]);
            if hi - lo + 1 != placed.len() || lo > p || hi < p {
                return false;
            }
            let open = (0..used.len()).any(|c| !used[c] && adj[b][c]);
            if open && hi != seq.len() - 1 {
                return false;
            }
        }
        true
    }
    fn go(
        seq: &mut Vec<usize>,
        used: &mut [bool],
        adj: &[Vec<bool>],
        blocks: &[Vec<usize>],
        out: &mut Vec<Vec<Vec<usize>>>,
        cap: usize,
    ) -> bool {
        if seq.len() == blocks.len() {
            out.push(seq.iter().map(|&b| blocks[b].clone()).collect());
            return out.len() <= cap;
        }
        for b in 0..blocks.len() {
            if used[b] {
                continue;
            }
            used[b] = true;
            seq.push(b);
            if ok_prefix(seq, used, adj) && !go(seq, used, adj, blocks, out, cap) {
                return false;
            }
            seq.pop();
            used[b] = false;
        }
        true
    }
    if !go(&mut seq, &mut used, &adj, &blocks, &mut out, cap) {
        return Err(Error::CapExceeded { what: "straight enumerations".into(), cap });
    }
    Ok(out)
}

fn guard(inst: &SunflowerInstance, vertex_cap: usize) -> Result<()> {
    if inst.vertex_count() > vertex_cap {
        return Err(Error::CapExceeded { what: format!("{} vertices", inst.vertex_count()), cap: vertex_cap });
    }
    Ok(())
}

fn positions(blocks: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut pos = vec![0; n];
    for (b, block) in blocks.iter().enumerate() {
        for &v in block {
            pos[v] = b;
        }
    }
    pos
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Exhaustive: some order of the shared vertices is compatible with a
/// straight enumeration of every member graph.
pub fn brute_force_proper(inst: &SunflowerInstance, vertex_cap: usize) -> Result<bool> {
    guard(inst, vertex_cap)?;
    let shared = inst.shared_ids();
    // Per graph: the distinct weak orders the enumerations induce on the shared vertices.
    let mut signatures: Vec<Vec<Vec<usize>>> = Vec::new();
    for (i, g) in inst.graphs().iter().enumerate() {
        let all = all_straight_enumerations(g, ENUMERATION_CAP)?;
        if all.is_empty() && !g.is_empty() {
            return Ok(false);
        }
        let mut sigs: Vec<Vec<usize>> = all
            .iter()
            .map(|blocks| {
                let pos = positions(blocks, g.len());
                shared.iter().map(|&s| pos[inst.to_local(i, s).expect("shared vertex present")]).collect()
            })
            .collect();
        sigs.sort();
        sigs.dedup();
        signatures.push(sigs);
    }
    if shared.is_empty() {
        return Ok(true);
    }
    let idx: Vec<usize> = (0..shared.len()).collect();
    for zeta in permutations(&idx) {
        let fits = |sig: &Vec<usize>| zeta.windows(2).all(|w| sig[w[0]] <= sig[w[1]]);
        if signatures.iter().all(|sigs| sigs.iter().any(fits)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Pairwise definition of a simultaneous enumeration over block lists.
pub fn is_simultaneous_by_definition(inst: &SunflowerInstance, orders: &[Vec<Vec<usize>>]) -> bool {
    let shared = inst.shared_ids();
    let pos: Vec<Vec<usize>> = orders
        .iter()
        .enumerate()
        .map(|(i, blocks)| {
            let p = positions(blocks, inst.graph(i).len());
            shared.iter().map(|&s| p[inst.to_local(i, s).expect("shared vertex present")]).collect()
        })
        .collect();
    for a in 0..shared.len() {
        for b in 0..shared.len() {
            if pos.iter().any(|p| p[a] < p[b]) && pos.iter().any(|p| p[a] > p[b]) {
                return false;
            }
        }
    }
    true
}

/// Every tuple of straight enumerations satisfying the pairwise definition.
pub fn all_simultaneous_enumerations(inst: &SunflowerInstance, vertex_cap: usize) -> Result<Vec<Vec<Vec<Vec<usize>>>>> {
    guard(inst, vertex_cap)?;
    let per_graph: Vec<Vec<Vec<Vec<usize>>>> = inst
        .graphs()
        .iter()
        .map(|g| all_straight_enumerations(g, ENUMERATION_CAP))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut current: Vec<Vec<Vec<usize>>> = Vec::new();
    fn go(
        inst: &SunflowerInstance,
        per_graph: &[Vec<Vec<Vec<usize>>>],
        current: &mut Vec<Vec<Vec<usize>>>,
        out: &mut Vec<Vec<Vec<Vec<usize>>>>,
    ) -> Result<()> {
        let i = current.len();
        if i == per_graph.len() {
            out.push(current.clone());
            if out.len() > ENUMERATION_CAP {
                return Err(Error::CapExceeded { what: "simultaneous enumerations".into(), cap: ENUMERATION_CAP });
            }
            return Ok(());
        }
        for cand in &per_graph[i] {
            current.push(cand.clone());
            if consistent_prefix(inst, current) {
                go(inst, per_graph, current, out)?;
            }
            current.pop();
        }
        Ok(())
    }
    go(inst, &per_graph, &mut current, &mut out)?;
    Ok(out)
}

fn consistent_prefix(inst: &SunflowerInstance, prefix: &[Vec<Vec<usize>>]) -> bool {
    let shared = inst.shared_ids();
    let pos: Vec<Vec<usize>> = prefix
        .iter()
        .enumerate()
        .map(|(i, blocks)| {
            let p = positions(blocks, inst.graph(i).len());
            shared.iter().map(|&s| inst.to_local(i, s).map_or(0, |l| p[l])).collect()
        })
        .collect();
    let last = &pos[pos.len() - 1];
    for a in 0..shared.len() {
        for b in 0..shared.len() {
            if last[a] < last[b] && pos.iter().any(|p| p[a] > p[b]) {
                return false;
            }
        }
    }
    true
}

/// Searches chains and bars from their definitions: shortest increasing paths
/// inside each member graph against longest increasing independent sequences.
pub fn brute_force_conflict(
    inst: &SunflowerInstance,
    se: &SimultaneousEnumeration,
    vertex_cap: usize,
) -> Result<Option<Conflict>> {
    let orders: Vec<Vec<Vec<usize>>> = se.orders.iter().map(|o| o.blocks().to_vec()).collect();
    conflict_by_definition(inst, &orders, vertex_cap)
}

pub fn conflict_by_definition(
    inst: &SunflowerInstance,
    orders: &[Vec<Vec<usize>>],
    vertex_cap: usize,
) -> Result<Option<Conflict>> {
    guard(inst, vertex_cap)?;
    let shared = inst.shared_ids();
    let pos: Vec<Vec<usize>> =
        orders.iter().enumerate().map(|(i, b)| positions(b, inst.graph(i).len())).collect();
    for &u in &shared {
        for &v in &shared {
            if u == v {
                continue;
            }
            let chains: Vec<Option<Vec<usize>>> =
                (0..inst.k()).map(|i| shortest_chain(inst, i, &pos[i], u, v)).collect();
            let bars: Vec<Option<Vec<usize>>> =
                (0..inst.k()).map(|j| longest_bar(inst, j, &pos[j], u, v)).collect();
            for (i, chain) in chains.iter().enumerate() {
                let Some(chain) = chain else { continue };
                for (j, bar) in bars.iter().enumerate() {
                    let Some(bar) = bar else { continue };
                    if chain.len() >= 2 && bar.len() >= chain.len() {
                        let mut bar = bar.clone();
                        while bar.len() > chain.len() {
                            bar.remove(1);
                        }
                        return Ok(Some(Conflict {
                            u,
                            v,
                            chain: chain.clone(),
                            bar,
                            chain_graph: ChainGraph::Member(i),
                            bar_graph: j,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Shortest sequence u = c1 <_i ... <_i cm = v of consecutive G_i-neighbors (global ids).
fn shortest_chain(inst: &SunflowerInstance, i: usize, pos: &[usize], u: usize, v: usize) -> Option<Vec<usize>> {
    let g = inst.graph(i);
    let (lu, lv) = (inst.to_local(i, u)?, inst.to_local(i, v)?);
    if pos[lu] >= pos[lv] {
        return None;
    }
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut frontier = vec![lu];
    parent.insert(lu, lu);
    while !frontier.is_empty() && !parent.contains_key(&lv) {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in g.neighbors(x) {
                if pos[y] > pos[x] && !parent.contains_key(&y) {
                    parent.insert(y, x);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    parent.get(&lv)?;
    let mut path = vec![lv];
    while *path.last().expect("nonempty") != lu {
        path.push(parent[path.last().expect("nonempty")]);
    }
    path.reverse();
    Some(path.into_iter().map(|l| inst.to_global(i, l)).collect())
}

/// Longest sequence u = b1 <_j ... <_j bm = v forming an independent set of G_j (global ids).
fn longest_bar(inst: &SunflowerInstance, j: usize, pos: &[usize], u: usize, v: usize) -> Option<Vec<usize>> {
    let g = inst.graph(j);
    let (lu, lv) = (inst.to_local(j, u)?, inst.to_local(j, v)?);
    if pos[lu] >= pos[lv] || g.has_edge(lu, lv) {
        return None;
    }
    let inner: Vec<usize> = (0..g.len()).filter(|&x| pos[x] > pos[lu] && pos[x] < pos[lv]).collect();
    let mut best = vec![lu, lv];
    let mut current = vec![lu];
    fn go(g: &Graph, pos: &[usize], inner: &[usize], from: usize, lv: usize, current: &mut Vec<usize>, best: &mut Vec<usize>) {
        if current.len() + 1 > best.len() {
            let mut cand = current.clone();
            cand.push(lv);
            *best = cand;
        }
        for (k, &x) in inner.iter().enumerate().skip(from) {
            let last = *current.last().expect("nonempty");
            if pos[x] > pos[last] && !g.has_edge(x, lv) && current.iter().all(|&c| !g.has_edge(c, x)) {
                current.push(x);
                go(g, pos, inner, k + 1, lv, current, best);
                current.pop();
            }
        }
    }
    let mut sorted = inner;
    sorted.sort_by_key(|&x| pos[x]);
    go(g, pos, &sorted, 0, lv, &mut current, &mut best);
    Some(best.into_iter().map(|l| inst.to_global(j, l)).collect())
}

/// Exhaustive: per union component, some simultaneous enumeration has no conflict.
pub fn brute_force_unit(inst: &SunflowerInstance, vertex_cap: usize) -> Result<bool> {
    guard(inst, vertex_cap)?;
    for part in inst.split_by_components() {
        let mut found = false;
        for orders in all_simultaneous_enumerations(&part, vertex_cap)? {
            if conflict_by_definition(&part, &orders, vertex_cap)?.is_none() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
