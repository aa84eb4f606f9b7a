//! Seeded instance generators.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, GraphError, Result};
use crate::graph::{Graph, SunflowerInstance};
use crate::pqtree::{PqTree, Shape};
use crate::rational::{frac, Interval, Representation};

/// A random PQ-tree over the elements `0..leaves`.
pub fn random_pqtree(seed: u64, leaves: usize) -> PqTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elems: Vec<usize> = (0..leaves.max(1)).collect();
    elems.shuffle(&mut rng);
    PqTree::from_shape(random_shape(&mut rng, &elems)).expect("distinct leaves")
}

fn random_shape(rng: &mut impl Rng, elems: &[usize]) -> Shape {
    if elems.len() == 1 {
        return Shape::Leaf(elems[0]);
    }
    let parts = rng.gen_range(2..=elems.len());
    let mut cuts: Vec<usize> = (1..elems.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut kids = Vec::with_capacity(parts);
    let mut start = 0;
    for end in cuts.into_iter().chain(std::iter::once(elems.len())) {
        kids.push(random_shape(rng, &elems[start..end]));
        start = end;
    }
    if rng.gen_bool(0.5) {
        Shape::P(kids)
    } else {
        Shape::Q(kids)
    }
}

/// A random subset of `0..n`, each element kept with probability one half.
pub fn random_subset(seed: u64, n: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// An instance of the betweenness problem: order the ground set so that the
/// middle element of every triple lies between the other two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetweennessInstance {
    pub ground: Vec<String>,
    pub triples: Vec<[String; 3]>,
}

impl BetweennessInstance {
    pub fn new<S: Into<String>>(ground: Vec<S>, triples: Vec<[S; 3]>) -> Result<BetweennessInstance> {
        let bw = BetweennessInstance {
            ground: ground.into_iter().map(Into::into).collect(),
            triples: triples.into_iter().map(|t| t.map(Into::into)).collect(),
        };
        bw.check()?;
        Ok(bw)
    }

    pub fn check(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for a in &self.ground {
            if !seen.insert(a.as_str()) {
                return Err(GraphError::DuplicateVertex(a.clone()).into());
            }
        }
        for t in &self.triples {
            for x in t {
                if !seen.contains(x.as_str()) {
                    return Err(GraphError::UnknownVertex(x.clone()).into());
                }
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::Enumeration(format!("triple ({}, {}, {}) repeats an element", t[0], t[1], t[2])));
            }
        }
        Ok(())
    }

    pub fn is_satisfied_by(&self, order: &[String]) -> bool {
        let at: HashMap<&str, usize> = order.iter().enumerate().map(|(p, a)| (a.as_str(), p)).collect();
        self.triples.iter().all(|[a, b, c]| {
            let (a, b, c) = (at[a.as_str()], at[b.as_str()], at[c.as_str()]);
            (a < b && b < c) || (c < b && b < a)
        })
    }

    /// A satisfying order by trying every permutation.
    pub fn solve_exhaustive(&self, cap: usize) -> Result<Option<Vec<String>>> {
        let n = self.ground.len();
        if (1..=n).try_fold(1usize, |acc, x| acc.checked_mul(x)).is_none_or(|f| f > cap) {
            return Err(Error::CapExceeded { what: format!("{n}! orders"), cap });
        }
        let mut order = self.ground.clone();
        Ok(permute(&mut order, 0, &|o| self.is_satisfied_by(o)))
    }
}

fn permute(v: &mut Vec<String>, from: usize, ok: &dyn Fn(&[String]) -> bool) -> Option<Vec<String>> {
    if from == v.len() {
        return ok(v).then(|| v.clone());
    }
    for i in from..v.len() {
        v.swap(from, i);
        if let Some(found) = permute(v, from + 1, ok) {
            return Some(found);
        }
        v.swap(from, i);
    }
    None
}

/// A prefix not starting any ground element, for fresh gadget vertices.
fn fresh_prefix(bw: &BetweennessInstance, base: &str) -> String {
    let mut p = base.to_string();
    while bw.ground.iter().any(|a| a.starts_with(&p)) {
        p.insert(0, '_');
    }
    p
}

/// The ground set as an edgeless graph, plus per triple `(a, b, c)` an induced
/// path `a x b y c` on fresh vertices. Not a sunflower instance.
pub fn gen_betweenness_proper(bw: &BetweennessInstance) -> SunflowerInstance {
    let (px, py) = (fresh_prefix(bw, "x"), fresh_prefix(bw, "y"));
    let mut graphs = vec![Graph::build::<&str>(&bw.ground.iter().map(String::as_str).collect::<Vec<_>>(), &[]).expect("valid ground")];
    for (i, [a, b, c]) in bw.triples.iter().enumerate() {
        let (x, y) = (format!("{px}{i}"), format!("{py}{i}"));
        let names = [a.as_str(), x.as_str(), b.as_str(), y.as_str(), c.as_str()];
        let edges: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        graphs.push(Graph::build(&names, &edges).expect("distinct gadget vertices"));
    }
    SunflowerInstance::general(graphs)
}

/// The unit variant: `x` and `y` become runs of `2n` vertices (`n` the ground
/// size), one graph per consecutive pair of the runs; the first graph
/// attaches `a` and `c`, the last attaches `b`. Not a sunflower instance.
pub fn gen_betweenness_unit(bw: &BetweennessInstance) -> SunflowerInstance {
    let n = bw.ground.len();
    let (px, py) = (fresh_prefix(bw, "x"), fresh_prefix(bw, "y"));
    let mut graphs = vec![Graph::build::<&str>(&bw.ground.iter().map(String::as_str).collect::<Vec<_>>(), &[]).expect("valid ground")];
    for (i, [a, b, c]) in bw.triples.iter().enumerate() {
        for j in 1..2 * n {
            let (x0, x1) = (format!("{px}{i}_{j}"), format!("{px}{i}_{}", j + 1));
            let (y0, y1) = (format!("{py}{i}_{j}"), format!("{py}{i}_{}", j + 1));
            let names = [a.as_str(), b.as_str(), c.as_str(), &x0, &x1, &y0, &y1];
            let mut edges = vec![(x0.as_str(), x1.as_str()), (y0.as_str(), y1.as_str())];
            if j == 1 {
                edges.push((a.as_str(), x0.as_str()));
                edges.push((c.as_str(), y0.as_str()));
            }
            if j == 2 * n - 1 {
                edges.push((x1.as_str(), b.as_str()));
                edges.push((y1.as_str(), b.as_str()));
            }
            graphs.push(Graph::build(&names, &edges).expect("distinct gadget vertices"));
        }
    }
    SunflowerInstance::general(graphs)
}

/// A random betweenness instance over `0..ground` (as strings).
pub fn random_betweenness(seed: u64, ground: usize, triples: usize) -> BetweennessInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..ground).map(|a| a.to_string()).collect();
    let mut ts = Vec::new();
    if ground >= 3 {
        for _ in 0..triples {
            let picked: Vec<&String> = names.choose_multiple(&mut rng, 3).collect();
            ts.push([picked[0].clone(), picked[1].clone(), picked[2].clone()]);
        }
    }
    BetweennessInstance { ground: names, triples: ts }
}

/// Sizes for random sunflower instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub shared: usize,
    pub private_per_graph: usize,
    pub k: usize,
    /// Edges added after sampling; each joins a private vertex to another vertex of its graph.
    pub extra_edges: usize,
    pub spread: Spread,
}

impl RandomParams {
    pub fn new(shared: usize, private_per_graph: usize, k: usize, extra_edges: usize) -> RandomParams {
        RandomParams { shared, private_per_graph, k, extra_edges, spread: Spread::Dense }
    }
}

/// How far apart the sampled intervals lie.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Spread {
    /// Left ends within a third of a unit per vertex of a graph: average
    /// degree about six, large instances mostly connected.
    #[default]
    Dense,
    /// Left ends within one unit per vertex: average degree about two,
    /// long induced paths between shared vertices.
    Wide,
}

/// Unit intervals with left ends on a grid of quarters, spread so that
/// degrees stay bounded as sizes grow, read off as member graphs.
pub fn gen_random_yes_certified(
    seed: u64,
    shared: usize,
    private_per_graph: usize,
    k: usize,
) -> (SunflowerInstance, Representation) {
    sample_unit(seed, shared, private_per_graph, k, Spread::Dense)
}

fn sample_unit(
    seed: u64,
    shared: usize,
    private_per_graph: usize,
    k: usize,
    spread: Spread,
) -> (SunflowerInstance, Representation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_graph = shared + private_per_graph;
    let quarters = match spread {
        Spread::Dense => 4 * per_graph / 3,
        Spread::Wide => 4 * per_graph,
    }
    .max(4) as i64;
    let mut sample = |name: String| (name, Interval::unit(frac(rng.gen_range(0..=quarters), 4)));
    let shared_iv: Vec<(String, Interval)> = (0..shared).map(|s| sample(format!("s{s}"))).collect();
    let private_iv: Vec<Vec<(String, Interval)>> =
        (0..k).map(|i| (0..private_per_graph).map(|p| sample(format!("g{i}v{p}"))).collect()).collect();
    let intersection = |vs: &[&(String, Interval)]| -> Graph {
        let names: Vec<String> = vs.iter().map(|(n, _)| n.clone()).collect();
        let mut pairs = Vec::new();
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                if vs[a].1.intersects(&vs[b].1) {
                    pairs.push((a, b));
                }
            }
        }
        Graph::from_parts(names, &pairs)
    };
    let graphs: Vec<Graph> = private_iv
        .iter()
        .map(|priv_iv| intersection(&shared_iv.iter().chain(priv_iv).collect::<Vec<_>>()))
        .collect();
    let s = intersection(&shared_iv.iter().collect::<Vec<_>>());
    let shared_edges: Vec<(String, String)> =
        s.edges().map(|(a, b)| (s.name(a).to_string(), s.name(b).to_string())).collect();
    let inst = SunflowerInstance::new(graphs, s.names().to_vec(), shared_edges);
    let mut rep = Representation::default();
    for (n, iv) in shared_iv.iter().chain(private_iv.iter().flatten()) {
        rep.intervals.insert(n.clone(), iv.clone());
    }
    rep.per_graph = Some(inst.graphs().iter().map(|g| g.names().to_vec()).collect());
    (inst, rep)
}

pub fn gen_random_yes(seed: u64, shared: usize, private_per_graph: usize, k: usize) -> SunflowerInstance {
    gen_random_yes_certified(seed, shared, private_per_graph, k).0
}

/// A random unit instance with extra edges that keep the shared graph
/// induced; its status is unknown.
pub fn gen_random_any(seed: u64, params: RandomParams) -> SunflowerInstance {
    let base = sample_unit(seed, params.shared, params.private_per_graph, params.k, params.spread).0;
    if params.extra_edges == 0 || params.private_per_graph == 0 {
        return base;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05ee_d0fe_d9e5);
    let mut edges: Vec<Vec<(usize, usize)>> = base.graphs().iter().map(|g| g.edges().collect()).collect();
    for _ in 0..params.extra_edges {
        let i = rng.gen_range(0..params.k);
        let g = base.graph(i);
        let privates: Vec<usize> = (0..g.len()).filter(|&l| !base.is_shared(base.to_global(i, l))).collect();
        let a = privates[rng.gen_range(0..privates.len())];
        let b = rng.gen_range(0..g.len());
        let e = (a.min(b), a.max(b));
        if a != b && !edges[i].contains(&e) {
            edges[i].push(e);
        }
    }
    let graphs: Vec<Graph> =
        base.graphs().iter().zip(&edges).map(|(g, es)| Graph::from_parts(g.names().to_vec(), es)).collect();
    let shared_edges: Vec<(String, String)> = base.shared_edges().to_vec();
    SunflowerInstance::new(graphs, base.shared_vertices().to_vec(), shared_edges)
}
