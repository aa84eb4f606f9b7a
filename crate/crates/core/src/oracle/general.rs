//! Exact search for simultaneous representations of arbitrary (not necessarily
//! sunflower) graph families.
//!
//! Endpoints are unknowns of a system of difference constraints. Every pair of
//! vertices that share a member graph contributes a two-way disjunction (which
//! one lies to the left). The search branches on those disjunctions, propagates
//! forced choices, and checks feasibility with an incrementally maintained
//! all-pairs shortest path matrix. Strict inequalities carry an infinitesimal
//! slack, so weights are pairs `(constant, multiple of slack)` compared
//! lexicographically.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::SunflowerInstance;
use crate::rational::{frac, int, Interval, Rational, Representation};
use crate::Mode;

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

type Weight = (i64, i64);

fn add(a: Weight, b: Weight) -> Weight {
    (a.0 + b.0, a.1 + b.1)
}

#[derive(Clone)]
struct Distances {
    n: usize,
    d: Vec<Option<Weight>>,
}

impl Distances {
    fn new(n: usize) -> Distances {
        let mut d = vec![None; n * n];
        for i in 0..n {
            d[i * n + i] = Some((0, 0));
        }
        Distances { n, d }
    }

    fn get(&self, a: usize, b: usize) -> Option<Weight> {
        self.d[a * self.n + b]
    }

    /// Would `x[to] <= x[from] + w` close a negative cycle?
    fn admits(&self, e: &Edge) -> bool {
        match self.get(e.to, e.from) {
            Some(back) => add(back, e.w) >= (0, 0),
            None => true,
        }
    }

    fn insert(&mut self, e: &Edge) -> bool {
        if !self.admits(e) {
            return false;
        }
        if let Some(cur) = self.get(e.from, e.to) {
            if cur <= e.w {
                return true;
            }
        }
        let n = self.n;
        let into: Vec<(usize, Weight)> = (0..n).filter_map(|a| self.get(a, e.from).map(|x| (a, x))).collect();
        let out: Vec<(usize, Weight)> = (0..n).filter_map(|b| self.get(e.to, b).map(|x| (b, x))).collect();
        for &(a, da) in &into {
            for &(b, db) in &out {
                let cand = add(add(da, e.w), db);
                let slot = &mut self.d[a * n + b];
                if slot.is_none_or(|cur| cand < cur) {
                    *slot = Some(cand);
                }
            }
        }
        true
    }
}

/// `x[to] <= x[from] + w`.
#[derive(Clone, Copy, Debug)]
struct Edge {
    from: usize,
    to: usize,
    w: Weight,
}

fn edge(from: usize, to: usize, w: Weight) -> Edge {
    Edge { from, to, w }
}

/// Two alternatives, each a conjunction of constraints.
struct Choice {
    options: [Vec<Edge>; 2],
}

struct System {
    vars: usize,
    fixed: Vec<Edge>,
    choices: Vec<Choice>,
}

const STRICT: Weight = (0, -1);

fn build(inst: &SunflowerInstance, mode: Mode) -> System {
    let n = inst.vertex_count();
    // Per co-occurring pair: (adjacent somewhere, non-adjacent somewhere).
    let mut pairs: BTreeMap<(usize, usize), (bool, bool)> = BTreeMap::new();
    for (i, g) in inst.graphs().iter().enumerate() {
        for a in 0..g.len() {
            for b in a + 1..g.len() {
                let (u, v) = (inst.to_global(i, a), inst.to_global(i, b));
                let key = (u.min(v), u.max(v));
                let e = pairs.entry(key).or_default();
                if g.has_edge(a, b) {
                    e.0 = true;
                } else {
                    e.1 = true;
                }
            }
        }
    }
    let mut sys = System { vars: 0, fixed: Vec::new(), choices: Vec::new() };
    match mode {
        Mode::Proper => {
            let (l, r) = (|v: usize| 2 * v, |v: usize| 2 * v + 1);
            sys.vars = 2 * n;
            for v in 0..n {
                sys.fixed.push(edge(r(v), l(v), (0, 0)));
            }
            for (&(u, v), &(adj, nonadj)) in &pairs {
                if adj {
                    // Endpoints can always be perturbed apart, so overlapping
                    // intervals are strictly staggered.
                    let first = |a: usize, b: usize| {
                        vec![edge(l(b), l(a), STRICT), edge(r(b), r(a), STRICT), edge(r(a), l(b), (0, 0))]
                    };
                    sys.choices.push(Choice { options: [first(u, v), first(v, u)] });
                }
                if nonadj {
                    sys.choices.push(Choice {
                        options: [vec![edge(l(v), r(u), STRICT)], vec![edge(l(u), r(v), STRICT)]],
                    });
                }
            }
        }
        Mode::Unit => {
            sys.vars = n;
            for (&(u, v), &(adj, nonadj)) in &pairs {
                if adj {
                    sys.fixed.push(edge(u, v, (1, 0)));
                    sys.fixed.push(edge(v, u, (1, 0)));
                }
                if nonadj {
                    sys.choices.push(Choice {
                        options: [vec![edge(v, u, (-1, -1))], vec![edge(u, v, (-1, -1))]],
                    });
                }
            }
        }
    }
    sys
}

struct Search<'a> {
    sys: &'a System,
    nodes: usize,
    cap: usize,
}

impl Search<'_> {
    fn run(&mut self, mut dist: Distances, mut open: Vec<usize>) -> Result<Option<Distances>> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::CapExceeded { what: "search nodes".into(), cap: self.cap });
        }
        // Settle every choice with at most one admissible side.
        loop {
            let mut progressed = false;
            let mut keep = Vec::with_capacity(open.len());
            for &c in &open {
                let ok: Vec<bool> = self.sys.choices[c]
                    .options
                    .iter()
                    .map(|opt| opt.iter().all(|e| dist.admits(e)))
                    .collect();
                match (ok[0], ok[1]) {
                    (false, false) => return Ok(None),
                    (true, true) => keep.push(c),
                    (a, _) => {
                        let side = if a { 0 } else { 1 };
                        for e in &self.sys.choices[c].options[side] {
                            if !dist.insert(e) {
                                return Ok(None);
                            }
                        }
                        progressed = true;
                    }
                }
            }
            open = keep;
            if !progressed {
                break;
            }
        }
        let Some((&c, rest)) = open.split_first() else { return Ok(Some(dist)) };
        for opt in &self.sys.choices[c].options {
            let mut next = dist.clone();
            if opt.iter().all(|e| next.insert(e)) {
                if let Some(done) = self.run(next, rest.to_vec())? {
                    return Ok(Some(done));
                }
            }
        }
        Ok(None)
    }
}

/// A simultaneous representation of all member graphs in the given mode, if any.
pub fn general_representation(inst: &SunflowerInstance, mode: Mode, node_cap: usize) -> Result<Option<Representation>> {
    let sys = build(inst, mode);
    let mut dist = Distances::new(sys.vars);
    for e in &sys.fixed {
        if !dist.insert(e) {
            return Ok(None);
        }
    }
    let mut search = Search { sys: &sys, nodes: 0, cap: node_cap };
    let Some(dist) = search.run(dist, (0..sys.choices.len()).collect())? else { return Ok(None) };
    // Potentials from a virtual source joined to every variable by zero edges.
    let value: Vec<Weight> = (0..sys.vars)
        .map(|v| (0..sys.vars).filter_map(|a| dist.get(a, v)).min().expect("diagonal is zero"))
        .collect();
    let eps = frac(1, 2 * sys.vars as i64 + 2);
    let real = |w: Weight| -> Rational { int(w.0) + &eps * int(w.1) };
    let mut rep = Representation::default();
    for (v, name) in inst.vertex_names().iter().enumerate() {
        let iv = match mode {
            Mode::Proper => Interval::new(real(value[2 * v]), real(value[2 * v + 1])),
            Mode::Unit => Interval::unit(real(value[v])),
        };
        rep.intervals.insert(name.clone(), iv);
    }
    rep.per_graph = Some(inst.graphs().iter().map(|g| g.names().to_vec()).collect());
    Ok(Some(rep))
}

pub fn general_representable(inst: &SunflowerInstance, mode: Mode) -> Result<bool> {
    Ok(general_representation(inst, mode, DEFAULT_NODE_CAP)?.is_some())
}
