//! Simple undirected graphs and sunflower instances.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::GraphError;

/// An undirected simple graph over named vertices.
///
/// Names are mapped to dense indices in input order; every ordering the crate
/// produces is derived from these indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, dropping duplicate edges.
    ///
    /// ```
    /// use sunflower_interval::Graph;
    /// let g = Graph::build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "b")]).unwrap();
    /// assert_eq!((g.len(), g.edge_count()), (3, 2));
    /// ```
    pub fn build<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph, GraphError> {
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref();
            if index.insert(v.to_string(), names.len()).is_some() {
                return Err(GraphError::DuplicateVertex(v.to_string()));
            }
            names.push(v.to_string());
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            if ia == ib {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            pairs.push((ia, ib));
        }
        Ok(Graph::from_index_edges(names, index, &pairs))
    }

    pub(crate) fn from_parts(names: Vec<String>, pairs: &[(usize, usize)]) -> Graph {
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Graph::from_index_edges(names, index, pairs)
    }

    fn from_index_edges(
        names: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Graph {
        let mut adj = vec![Vec::new(); names.len()];
        for &(a, b) in pairs {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Graph { names, index, adj, edge_count: edge_count / 2 }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Sorted open neighborhood.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Sorted closed neighborhood.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let at = out.partition_point(|&w| w < v);
        out.insert(at, v);
        out
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The subgraph induced by `vs`, keeping the relative index order of `vs` as given.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Graph {
        let mut local = HashMap::with_capacity(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            local.insert(v, i);
        }
        let names: Vec<String> = vs.iter().map(|&v| self.names[v].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &v) in vs.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = local.get(w) {
                    if i < j {
                        pairs.push((i, j));
                    }
                }
            }
        }
        Graph::from_parts(names, &pairs)
    }

    /// Like [`Graph::induced_subgraph`] but addressed by vertex names.
    pub fn induced_by_names<S: AsRef<str>>(&self, vs: &[S]) -> Result<Graph, GraphError> {
        let idx = vs
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| GraphError::UnknownVertex(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.induced_subgraph(&idx))
    }

    /// Distances from `s` by breadth-first search; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// `k` graphs that pairwise share exactly one common induced subgraph.
///
/// Construction never fails on sunflower violations; [`SunflowerInstance::validate`]
/// reports them. Vertices of all graphs are also numbered globally (shared
/// vertices first, then each graph's private vertices in graph order).
#[derive(Clone, Debug)]
pub struct SunflowerInstance {
    name: Option<String>,
    graphs: Vec<Graph>,
    shared: Vec<String>,
    shared_edges: Vec<(String, String)>,
    sunflower: bool,
    universe: Vec<String>,
    global: HashMap<String, usize>,
    to_global: Vec<Vec<usize>>,
    to_local: Vec<Vec<usize>>,
    is_shared: Vec<bool>,
}

pub const ABSENT: usize = usize::MAX;

impl SunflowerInstance {
    pub fn new<S: Into<String>>(
        graphs: Vec<Graph>,
        shared_vertices: Vec<S>,
        shared_edges: Vec<(S, S)>,
    ) -> SunflowerInstance {
        let shared: Vec<String> = shared_vertices.into_iter().map(Into::into).collect();
        let shared_edges = shared_edges.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        Self::assemble(None, graphs, shared, shared_edges, true)
    }

    /// An instance of the general simultaneous problem: graphs may overlap arbitrarily.
    pub fn general(graphs: Vec<Graph>) -> SunflowerInstance {
        Self::assemble(None, graphs, Vec::new(), Vec::new(), false)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> SunflowerInstance {
        self.name = Some(name.into());
        self
    }

    fn assemble(
        name: Option<String>,
        graphs: Vec<Graph>,
        shared: Vec<String>,
        shared_edges: Vec<(String, String)>,
        sunflower: bool,
    ) -> SunflowerInstance {
        let mut universe: Vec<String> = Vec::new();
        let mut global: HashMap<String, usize> = HashMap::new();
        let mut add = |n: &str, universe: &mut Vec<String>| {
            if !global.contains_key(n) {
                global.insert(n.to_string(), universe.len());
                universe.push(n.to_string());
            }
        };
        for s in &shared {
            add(s, &mut universe);
        }
        for g in &graphs {
            for n in g.names() {
                add(n, &mut universe);
            }
        }
        let n = universe.len();
        let mut to_global = Vec::with_capacity(graphs.len());
        let mut to_local = Vec::with_capacity(graphs.len());
        for g in &graphs {
            let tg: Vec<usize> = g.names().iter().map(|x| global[x]).collect();
            let mut tl = vec![ABSENT; n];
            for (l, &gid) in tg.iter().enumerate() {
                tl[gid] = l;
            }
            to_global.push(tg);
            to_local.push(tl);
        }
        let mut is_shared = vec![false; n];
        for s in &shared {
            is_shared[global[s]] = true;
        }
        SunflowerInstance {
            name,
            graphs,
            shared,
            shared_edges,
            sunflower,
            universe,
            global,
            to_global,
            to_local,
            is_shared,
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn graph(&self, i: usize) -> &Graph {
        &self.graphs[i]
    }

    pub fn k(&self) -> usize {
        self.graphs.len()
    }

    pub fn shared_vertices(&self) -> &[String] {
        &self.shared
    }

    pub fn shared_edges(&self) -> &[(String, String)] {
        &self.shared_edges
    }

    /// False for instances built with [`SunflowerInstance::general`].
    pub fn is_sunflower(&self) -> bool {
        self.sunflower
    }

    /// Number of distinct vertices over all graphs.
    pub fn vertex_count(&self) -> usize {
        self.universe.len()
    }

    pub fn vertex_name(&self, gid: usize) -> &str {
        &self.universe[gid]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.universe
    }

    pub fn global_index(&self, name: &str) -> Option<usize> {
        self.global.get(name).copied()
    }

    pub fn is_shared(&self, gid: usize) -> bool {
        self.is_shared[gid]
    }

    /// Global ids of the shared vertices in declaration order.
    pub fn shared_ids(&self) -> Vec<usize> {
        self.shared.iter().map(|s| self.global[s]).collect()
    }

    pub fn to_global(&self, i: usize, local: usize) -> usize {
        self.to_global[i][local]
    }

    pub fn globals_of(&self, i: usize) -> &[usize] {
        &self.to_global[i]
    }

    /// Local index of a global vertex in graph `i`, if present.
    pub fn to_local(&self, i: usize, gid: usize) -> Option<usize> {
        match self.to_local[i][gid] {
            ABSENT => None,
            l => Some(l),
        }
    }

    /// Indices of graphs containing the global vertex.
    pub fn graphs_containing(&self, gid: usize) -> Vec<usize> {
        (0..self.k()).filter(|&i| self.to_local[i][gid] != ABSENT).collect()
    }

    /// The shared graph on the declared shared vertices and edges.
    pub fn shared_graph(&self) -> Graph {
        let idx: HashMap<&str, usize> =
            self.shared.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let pairs: Vec<(usize, usize)> = self
            .shared_edges
            .iter()
            .filter_map(|(a, b)| Some((*idx.get(a.as_str())?, *idx.get(b.as_str())?)))
            .filter(|(a, b)| a != b)
            .collect();
        Graph::from_parts(self.shared.clone(), &pairs)
    }

    /// The union graph over global ids.
    pub fn union_graph(&self) -> Graph {
        let mut pairs = Vec::new();
        for (i, g) in self.graphs.iter().enumerate() {
            for (a, b) in g.edges() {
                pairs.push((self.to_global[i][a], self.to_global[i][b]));
            }
        }
        Graph::from_parts(self.universe.clone(), &pairs)
    }

    /// Checks every sunflower condition and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.graphs.is_empty() {
            violations.push(Violation::new("no-graphs", "instance has no graphs", vec![]));
        }
        let shared_set: BTreeSet<&str> = self.shared.iter().map(String::as_str).collect();
        if shared_set.len() != self.shared.len() {
            violations.push(Violation::new(
                "duplicate-shared",
                "shared vertex listed twice",
                vec![],
            ));
        }
        for (a, b) in &self.shared_edges {
            for x in [a, b] {
                if !shared_set.contains(x.as_str()) {
                    violations.push(Violation::new(
                        "shared-edge-endpoint",
                        format!("shared edge {a}-{b} has non-shared endpoint {x}"),
                        vec![x.clone()],
                    ));
                }
            }
        }
        let shared_edge_set: BTreeSet<(String, String)> =
            self.shared_edges.iter().map(|(a, b)| ordered(a, b)).collect();
        for (i, g) in self.graphs.iter().enumerate() {
            let missing: Vec<String> =
                self.shared.iter().filter(|s| g.index_of(s).is_none()).cloned().collect();
            if !missing.is_empty() {
                violations.push(Violation::new(
                    "shared-missing",
                    format!("shared vertices missing from G_{}", i + 1),
                    missing,
                ));
            }
            for (a, b) in &shared_edge_set {
                if let (Some(x), Some(y)) = (g.index_of(a), g.index_of(b)) {
                    if !g.has_edge(x, y) {
                        violations.push(Violation::new(
                            "shared-edge-missing",
                            format!("shared edge {a}-{b} missing from G_{}", i + 1),
                            vec![a.clone(), b.clone()],
                        ));
                    }
                }
            }
            for (x, y) in g.edges() {
                let (a, b) = (g.name(x), g.name(y));
                if shared_set.contains(a)
                    && shared_set.contains(b)
                    && !shared_edge_set.contains(&ordered(a, b))
                {
                    violations.push(Violation::new(
                        "not-induced",
                        format!("S not induced in G_{}: edge {a}-{b} is not shared", i + 1),
                        vec![a.to_string(), b.to_string()],
                    ));
                }
            }
        }
        for i in 0..self.k() {
            for j in i + 1..self.k() {
                let extra: Vec<String> = self.graphs[i]
                    .names()
                    .iter()
                    .filter(|n| !shared_set.contains(n.as_str()))
                    .filter(|n| self.graphs[j].index_of(n).is_some())
                    .cloned()
                    .collect();
                if !extra.is_empty() {
                    violations.push(Violation::new(
                        "pairwise-intersection",
                        format!(
                            "pairwise intersection exceeds S: G_{} and G_{} share {}",
                            i + 1,
                            j + 1,
                            extra.join(", ")
                        ),
                        extra,
                    ));
                }
            }
        }
        ValidationReport { ok: violations.is_empty(), violations }
    }

    /// One sub-instance per connected component of the union graph, ordered by least global id.
    ///
    /// Every sub-instance keeps all `k` graphs (some possibly empty) and the
    /// original vertex names.
    pub fn split_by_components(&self) -> Vec<SunflowerInstance> {
        let comps = self.union_graph().connected_components();
        let mut owner = vec![0; self.vertex_count()];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                owner[v] = c;
            }
        }
        let mut locals = vec![vec![Vec::new(); self.graphs.len()]; comps.len()];
        for (i, tg) in self.to_global.iter().enumerate() {
            for (l, &v) in tg.iter().enumerate() {
                locals[owner[v]][i].push(l);
            }
        }
        let mut shared = vec![Vec::new(); comps.len()];
        for s in &self.shared {
            shared[owner[self.global[s]]].push(s.clone());
        }
        let mut shared_edges = vec![Vec::new(); comps.len()];
        for (a, b) in &self.shared_edges {
            if let (Some(&x), Some(&y)) = (self.global.get(a), self.global.get(b)) {
                if owner[x] == owner[y] {
                    shared_edges[owner[x]].push((a.clone(), b.clone()));
                }
            }
        }
        locals
            .into_iter()
            .zip(shared)
            .zip(shared_edges)
            .map(|((vs, sh), se)| {
                let graphs = self.graphs.iter().zip(&vs).map(|(g, vs)| g.induced_subgraph(vs)).collect();
                Self::assemble(self.name.clone(), graphs, sh, se, self.sunflower)
            })
            .collect()
    }

    /// The sub-instance on a set of global ids (sorted).
    pub(crate) fn restrict(&self, comp: &[usize]) -> SunflowerInstance {
        let mut inside = vec![false; self.vertex_count()];
        for &v in comp {
            inside[v] = true;
        }
        let graphs = self
            .graphs
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let vs: Vec<usize> =
                    (0..g.len()).filter(|&l| inside[self.to_global[i][l]]).collect();
                g.induced_subgraph(&vs)
            })
            .collect();
        let shared: Vec<String> =
            self.shared.iter().filter(|s| inside[self.global[*s]]).cloned().collect();
        let shared_edges = self
            .shared_edges
            .iter()
            .filter(|(a, b)| {
                self.global.get(a).is_some_and(|&x| inside[x])
                    && self.global.get(b).is_some_and(|&x| inside[x])
            })
            .cloned()
            .collect();
        Self::assemble(self.name.clone(), graphs, shared, shared_edges, self.sunflower)
    }
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// One broken sunflower condition.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub rule: String,
    pub message: String,
    pub offending: Vec<String>,
}

impl Violation {
    fn new(rule: &str, message: impl Into<String>, offending: Vec<String>) -> Violation {
        Violation { rule: rule.to_string(), message: message.into(), offending }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        let msgs: Vec<&str> = self.violations.iter().map(|v| v.message.as_str()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}
