//! Sunflower proper interval recognition and simultaneous representations.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::graph::SunflowerInstance;
use crate::pqtree::PqTree;
use crate::proper::{canonical, fine_enum_pqtree_of, straight_enumeration, StraightEnumeration};
use crate::rational::{int, Interval, Representation};

/// One straight enumeration per member graph, over each graph's local indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimultaneousEnumeration {
    pub orders: Vec<StraightEnumeration>,
}

impl SimultaneousEnumeration {
    pub fn reversed(&self) -> SimultaneousEnumeration {
        SimultaneousEnumeration { orders: self.orders.iter().map(|o| o.reversed()).collect() }
    }

    /// Block position of a global vertex in graph `i`.
    pub fn block_of(&self, inst: &SunflowerInstance, i: usize, gid: usize) -> Option<usize> {
        inst.to_local(i, gid).map(|l| self.orders[i].position(l))
    }
}

/// The pairwise definition: a strict order of two shared vertices in one
/// graph is never reversed in another.
pub fn is_simultaneous(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> bool {
    let shared = inst.shared_ids();
    let pos: Vec<Vec<usize>> = (0..inst.k())
        .map(|i| shared.iter().map(|&s| se.block_of(inst, i, s).unwrap_or(0)).collect())
        .collect();
    for a in 0..shared.len() {
        for b in 0..shared.len() {
            for i in 0..inst.k() {
                if pos[i][a] < pos[i][b] && (0..inst.k()).any(|j| pos[j][a] > pos[j][b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `ζ` (global ids of all shared vertices) never runs against the block order.
pub fn compatible(
    inst: &SunflowerInstance,
    graph: usize,
    se: &StraightEnumeration,
    zeta: &[usize],
) -> Result<bool> {
    check_shared_order(inst, zeta)?;
    let mut last = 0;
    for &s in zeta {
        let l = inst
            .to_local(graph, s)
            .ok_or_else(|| Error::Enumeration(format!("{} missing from graph {graph}", inst.vertex_name(s))))?;
        let p = se.position(l);
        if p < last {
            return Ok(false);
        }
        last = p;
    }
    Ok(true)
}

fn check_shared_order(inst: &SunflowerInstance, zeta: &[usize]) -> Result<()> {
    let mut ids = inst.shared_ids();
    let mut z = zeta.to_vec();
    ids.sort_unstable();
    z.sort_unstable();
    if ids != z {
        return Err(Error::Enumeration("order is not over the shared vertices".into()));
    }
    Ok(())
}

/// A linear order of the shared vertices compatible with every graph's
/// enumeration, ties broken toward smaller global id; `None` when the
/// enumerations disagree.
pub fn shared_order(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> Option<Vec<usize>> {
    let shared = inst.shared_ids();
    let n = inst.vertex_count();
    // Nodes: global ids, then one separator per gap between consecutive shared groups.
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg: Vec<usize> = vec![0; n];
    for i in 0..inst.k() {
        let mut groups: Vec<(usize, usize)> = shared
            .iter()
            .filter_map(|&s| se.block_of(inst, i, s).map(|p| (p, s)))
            .collect();
        groups.sort_unstable();
        let mut prev_group: Vec<usize> = Vec::new();
        let mut at = 0;
        while at < groups.len() {
            let p = groups[at].0;
            let mut group = Vec::new();
            while at < groups.len() && groups[at].0 == p {
                group.push(groups[at].1);
                at += 1;
            }
            if !prev_group.is_empty() {
                let sep = succ.len();
                succ.push(group.clone());
                indeg.push(prev_group.len());
                for &u in &prev_group {
                    succ[u].push(sep);
                }
                for &v in &group {
                    indeg[v] += 1;
                }
            }
            prev_group = group;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = shared.iter().filter(|&&s| indeg[s] == 0).map(|&s| Reverse(s)).collect();
    let mut out = Vec::with_capacity(shared.len());
    while let Some(Reverse(u)) = heap.pop() {
        out.push(u);
        for &sep in &succ[u] {
            indeg[sep] -= 1;
            if indeg[sep] == 0 {
                for &v in &succ[sep] {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        heap.push(Reverse(v));
                    }
                }
            }
        }
    }
    (out.len() == shared.len()).then_some(out)
}

/// The enumeration of the shared graph induced by the member enumerations
/// (shared graph indices follow the declared shared-vertex order).
pub fn shared_enumeration(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> Result<StraightEnumeration> {
    let s = inst.shared_graph();
    let shared = inst.shared_ids();
    let sblocks = crate::proper::compute_blocks(&s);
    let mut result: Option<Vec<Vec<usize>>> = None;
    for i in 0..inst.k() {
        let mut keyed: Vec<(usize, usize)> = (0..shared.len())
            .filter_map(|a| se.block_of(inst, i, shared[a]).map(|p| (p, a)))
            .collect();
        if keyed.len() != shared.len() {
            continue;
        }
        keyed.sort_unstable();
        let mut seq: Vec<usize> = Vec::new();
        for &(_, a) in &keyed {
            let b = sblocks.block_of[a];
            if seq.last() != Some(&b) {
                seq.push(b);
            }
        }
        let blocks: Vec<Vec<usize>> = seq.iter().map(|&b| sblocks.blocks[b].clone()).collect();
        match &result {
            None => result = Some(blocks),
            Some(r) if *r != blocks => {
                return Err(Error::Enumeration("graphs induce different orders on the shared graph".into()))
            }
            _ => {}
        }
    }
    let blocks = result.unwrap_or_default();
    StraightEnumeration::new(&s, blocks)
}

/// Why an instance has no simultaneous proper representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProperNo {
    /// This member graph is not a proper interval graph.
    NotProperInterval { graph: usize },
    /// The member trees restricted to the shared vertices of this union
    /// component admit no common order.
    NoCommonOrder { component: usize },
}

#[derive(Clone, Debug)]
pub struct ProperComponent {
    pub instance: SunflowerInstance,
    pub enumeration: SimultaneousEnumeration,
    /// Over global ids of `instance`; `None` without shared vertices.
    pub shared_tree: Option<PqTree>,
    pub shared_order: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum ProperVerdict {
    Yes(Vec<ProperComponent>),
    No(ProperNo),
}

impl ProperVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, ProperVerdict::Yes(_))
    }
}

pub(crate) fn check_instance(inst: &SunflowerInstance) -> Result<()> {
    if !inst.is_sunflower() {
        return Err(Error::NotSunflower);
    }
    let report = inst.validate();
    if !report.ok {
        return Err(Error::Invalid(report));
    }
    Ok(())
}

/// Decides whether the instance has a simultaneous proper interval representation.
///
/// ```
/// use sunflower_interval::{Graph, SunflowerInstance};
/// use sunflower_interval::simultaneous::recognize_proper;
/// let g1 = Graph::build(&["s1", "a", "s2"], &[("s1", "a"), ("a", "s2")]).unwrap();
/// let g2 = Graph::build(&["s1", "s2", "b"], &[("s2", "b")]).unwrap();
/// let inst = SunflowerInstance::new(vec![g1, g2], vec!["s1", "s2"], vec![]);
/// assert!(recognize_proper(&inst).unwrap().is_yes());
/// ```
pub fn recognize_proper(inst: &SunflowerInstance) -> Result<ProperVerdict> {
    check_instance(inst)?;
    let mut base = Vec::with_capacity(inst.k());
    for (i, g) in inst.graphs().iter().enumerate() {
        match straight_enumeration(g) {
            Some(se) => base.push(se),
            None => return Ok(ProperVerdict::No(ProperNo::NotProperInterval { graph: i })),
        }
    }
    let mut comps = Vec::new();
    for (c, part) in inst.split_by_components().into_iter().enumerate() {
        match recognize_connected(&part)? {
            Some(pc) => comps.push(pc),
            None => return Ok(ProperVerdict::No(ProperNo::NoCommonOrder { component: c })),
        }
    }
    Ok(ProperVerdict::Yes(comps))
}

/// Recognition on one union component whose member graphs are all proper interval graphs.
fn recognize_connected(inst: &SunflowerInstance) -> Result<Option<ProperComponent>> {
    let ses: Vec<StraightEnumeration> = inst
        .graphs()
        .iter()
        .map(|g| straight_enumeration(g).ok_or_else(|| Error::Internal("member graph lost properness".into())))
        .collect::<Result<_>>()?;
    let shared = inst.shared_ids();
    if shared.is_empty() {
        let enumeration = SimultaneousEnumeration { orders: ses };
        return Ok(Some(ProperComponent { instance: inst.clone(), enumeration, shared_tree: None, shared_order: vec![] }));
    }
    let mut tree: Option<PqTree> = None;
    for (i, se) in ses.iter().enumerate() {
        let local = fine_enum_pqtree_of(se).map_elements(|l| inst.to_global(i, l));
        let projected = local.projection(&shared)?;
        let next = match tree {
            None => projected,
            Some(t) => t.intersect(&projected)?,
        };
        if next.is_null() {
            return Ok(None);
        }
        tree = Some(next);
    }
    let tree = tree.expect("at least one graph holds the shared vertices");
    let zeta = tree.pick_order()?;
    let mut orders = Vec::with_capacity(inst.k());
    for (i, se) in ses.iter().enumerate() {
        orders.push(compatible_enumeration(inst, i, se, &zeta)?);
    }
    let enumeration = SimultaneousEnumeration { orders };
    Ok(Some(ProperComponent { instance: inst.clone(), enumeration, shared_tree: Some(tree), shared_order: zeta }))
}

/// Rearranges a graph's straight enumeration so it is compatible with `zeta`.
/// Every component holds a shared vertex in a connected instance; components
/// are ordered by their earliest shared vertex and each is flipped if needed.
fn compatible_enumeration(
    inst: &SunflowerInstance,
    i: usize,
    se: &StraightEnumeration,
    zeta: &[usize],
) -> Result<StraightEnumeration> {
    let mut rank = HashMap::with_capacity(zeta.len());
    for (r, &s) in zeta.iter().enumerate() {
        if let Some(l) = inst.to_local(i, s) {
            rank.insert(l, r);
        }
    }
    let mut keyed = Vec::with_capacity(se.spans().len());
    for (c, &(s, e)) in se.spans().iter().enumerate() {
        let blocks = &se.blocks()[s..e];
        let ranks: Vec<Vec<usize>> =
            blocks.iter().map(|b| b.iter().filter_map(|v| rank.get(v).copied()).collect()).collect();
        let first = ranks.iter().flatten().min().copied().unwrap_or(usize::MAX);
        let flip = if monotone(ranks.iter()) {
            false
        } else if monotone(ranks.iter().rev()) {
            true
        } else {
            return Err(Error::Internal("shared order fits neither orientation of a component".into()));
        };
        keyed.push((first, c, flip));
    }
    keyed.sort_unstable();
    let order: Vec<usize> = keyed.iter().map(|k| k.1).collect();
    let flip: Vec<bool> = keyed.iter().map(|k| k.2).collect();
    let out = se.rearranged(&order, &flip);
    if !compatible(inst, i, &out, zeta)? {
        return Err(Error::Internal("components interleave in the shared order".into()));
    }
    Ok(out)
}

fn monotone<'a>(blocks: impl Iterator<Item = &'a Vec<usize>>) -> bool {
    let mut below = 0usize;
    let mut first = true;
    for ranks in blocks {
        if ranks.is_empty() {
            continue;
        }
        let lo = *ranks.iter().min().expect("nonempty");
        if !first && lo < below {
            return false;
        }
        below = below.max(*ranks.iter().max().expect("nonempty"));
        first = false;
    }
    true
}

/// Restricts an enumeration of `inst` to each of the given sub-instances (matched by vertex names).
pub fn restrict_enumeration(
    inst: &SunflowerInstance,
    se: &SimultaneousEnumeration,
    part: &SunflowerInstance,
) -> SimultaneousEnumeration {
    let orders = (0..inst.k())
        .map(|i| {
            let g = inst.graph(i);
            let pg = part.graph(i);
            let blocks: Vec<Vec<usize>> = se.orders[i]
                .blocks()
                .iter()
                .map(|b| {
                    let mut kept: Vec<usize> = b.iter().filter_map(|&v| pg.index_of(g.name(v))).collect();
                    kept.sort_unstable();
                    kept
                })
                .filter(|b| !b.is_empty())
                .collect();
            StraightEnumeration::from_parts_unchecked(pg, blocks)
        })
        .collect();
    SimultaneousEnumeration { orders }
}

/// Builds integer-endpoint intervals realizing `se`: each graph's endpoint
/// sequence is derived from its enumeration and all sequences are spliced
/// around the common subsequence of shared endpoints.
pub fn build_simultaneous_representation(
    inst: &SunflowerInstance,
    se: &SimultaneousEnumeration,
) -> Result<Representation> {
    if se.orders.len() != inst.k() {
        return Err(Error::Enumeration("one enumeration per graph expected".into()));
    }
    let pieces = inst
        .split_by_components()
        .iter()
        .map(|part| merge_connected(part, &restrict_enumeration(inst, se, part)))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = Representation::concat_right(pieces, &int(1));
    rep.per_graph = Some(inst.graphs().iter().map(|g| g.names().to_vec()).collect());
    Ok(rep)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum End {
    Left(usize),
    Right(usize),
}

fn merge_connected(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> Result<Representation> {
    let zeta = shared_order(inst, se)
        .ok_or_else(|| Error::Enumeration("enumerations order shared vertices inconsistently".into()))?;
    let mut zrank = vec![usize::MAX; inst.vertex_count()];
    for (r, &s) in zeta.iter().enumerate() {
        zrank[s] = r;
    }
    // Endpoint sequences over global ids, one per graph.
    let seqs: Vec<Vec<End>> = (0..inst.k())
        .map(|i| {
            let g = inst.graph(i);
            let order = &se.orders[i];
            let mut vs: Vec<usize> = (0..g.len()).collect();
            vs.sort_by_key(|&l| {
                let gid = inst.to_global(i, l);
                (order.position(l), zrank[gid], l)
            });
            let mut place = vec![0; g.len()];
            for (p, &l) in vs.iter().enumerate() {
                place[l] = p;
            }
            let mut seq = Vec::with_capacity(2 * vs.len());
            let mut pending = 0;
            for (p, &l) in vs.iter().enumerate() {
                // Earlier vertices not adjacent to l close before l opens; they form a prefix.
                let first_nb = g.neighbors(l).iter().map(|&w| place[w]).filter(|&q| q < p).min().unwrap_or(p);
                while pending < first_nb {
                    seq.push(End::Right(inst.to_global(i, vs[pending])));
                    pending += 1;
                }
                seq.push(End::Left(inst.to_global(i, l)));
            }
            while pending < vs.len() {
                seq.push(End::Right(inst.to_global(i, vs[pending])));
                pending += 1;
            }
            seq
        })
        .collect();
    let is_shared_end = |e: &End| match *e {
        End::Left(v) | End::Right(v) => inst.is_shared(v),
    };
    let common: Vec<End> = seqs
        .iter()
        .find(|s| s.iter().any(is_shared_end))
        .map(|s| s.iter().copied().filter(is_shared_end).collect())
        .unwrap_or_default();
    for s in &seqs {
        let mine: Vec<End> = s.iter().copied().filter(is_shared_end).collect();
        if !mine.is_empty() && mine != common {
            return Err(Error::Internal("shared endpoints ordered differently across graphs".into()));
        }
    }
    // Splice: before each shared endpoint, the private endpoints every graph has there.
    let mut merged: Vec<End> = Vec::new();
    let mut cursors = vec![0usize; seqs.len()];
    for target in common.iter().map(Some).chain(std::iter::once(None)) {
        for (i, s) in seqs.iter().enumerate() {
            while cursors[i] < s.len() && !is_shared_end(&s[cursors[i]]) {
                merged.push(s[cursors[i]]);
                cursors[i] += 1;
            }
            if target.is_some() && cursors[i] < s.len() {
                cursors[i] += 1;
            }
        }
        if let Some(&t) = target {
            merged.push(t);
        }
    }
    let mut left = vec![0i64; inst.vertex_count()];
    let mut right = vec![0i64; inst.vertex_count()];
    for (at, e) in merged.iter().enumerate() {
        match *e {
            End::Left(v) => left[v] = at as i64,
            End::Right(v) => right[v] = at as i64,
        }
    }
    let mut rep = Representation::default();
    for v in 0..inst.vertex_count() {
        rep.intervals.insert(inst.vertex_name(v).to_string(), Interval::new(int(left[v]), int(right[v])));
    }
    Ok(rep)
}

/// Convenience: the representation of a positive recognition outcome.
pub fn representation_of(inst: &SunflowerInstance, comps: &[ProperComponent]) -> Result<Representation> {
    let pieces = comps
        .iter()
        .map(|c| build_simultaneous_representation(&c.instance, &c.enumeration))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = Representation::concat_right(pieces, &int(1));
    rep.per_graph = Some(inst.graphs().iter().map(|g| g.names().to_vec()).collect());
    Ok(rep)
}

/// Reorders a straight enumeration canonically; exposed for callers that build enumerations by hand.
pub fn canonical_enumeration(se: &StraightEnumeration) -> StraightEnumeration {
    canonical(se)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn path(names: &[&str]) -> Graph {
        let edges: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Graph::build(names, &edges).unwrap()
    }

    fn two_routes() -> SunflowerInstance {
        SunflowerInstance::new(
            vec![path(&["s1", "a", "b", "c", "s2"]), path(&["s1", "d", "s2"])],
            vec!["s1", "s2"],
            vec![],
        )
    }

    #[test]
    fn two_routes_is_proper() {
        let inst = two_routes();
        let ProperVerdict::Yes(comps) = recognize_proper(&inst).unwrap() else { panic!("expected yes") };
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert!(is_simultaneous(&c.instance, &c.enumeration));
        let z: Vec<&str> = c.shared_order.iter().map(|&v| inst.vertex_name(v)).collect();
        assert_eq!(z, ["s1", "s2"]);
        let g1 = &c.enumeration.orders[0];
        assert!(compatible(&inst, 0, g1, &c.shared_order).unwrap());
        let rev: Vec<usize> = c.shared_order.iter().rev().copied().collect();
        assert!(!compatible(&inst, 0, g1, &rev).unwrap());
        let rep = representation_of(&inst, &comps).unwrap();
        assert_eq!(rep.len(), 6);
    }

    #[test]
    fn claw_is_not_proper() {
        let claw = Graph::build(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]).unwrap();
        let inst = SunflowerInstance::new(vec![claw], vec!["c", "x", "y", "z"], vec![("c", "x"), ("c", "y"), ("c", "z")]);
        assert!(matches!(
            recognize_proper(&inst).unwrap(),
            ProperVerdict::No(ProperNo::NotProperInterval { graph: 0 })
        ));
    }

    #[test]
    fn shared_enumeration_of_two_routes() {
        let inst = two_routes();
        let ProperVerdict::Yes(comps) = recognize_proper(&inst).unwrap() else { panic!() };
        let s = shared_enumeration(&inst, &comps[0].enumeration).unwrap();
        assert_eq!(s.blocks(), &[vec![0], vec![1]]);
    }

    #[test]
    fn general_instances_are_refused() {
        let inst = SunflowerInstance::general(vec![path(&["a", "b"])]);
        assert_eq!(recognize_proper(&inst).unwrap_err(), Error::NotSunflower);
    }
}
