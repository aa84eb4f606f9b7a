//! JSON formats for instances, representations, conflicts and verdicts.
//!
//! Output is canonical: map keys sorted, rationals as reduced `p/q`
//! strings, so equal values serialize to equal bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::generators::BetweennessInstance;
use crate::graph::{Graph, SunflowerInstance};
use crate::rational::{fraction_string, parse_fraction, Interval, Representation};
use crate::unit::{ChainGraph, Conflict};
use crate::Mode;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default)]
    shared_vertices: Vec<String>,
    #[serde(default)]
    shared_edges: Vec<(String, String)>,
    graphs: Vec<GraphJson>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    sunflower: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalJson {
    l: String,
    r: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepresentationJson {
    intervals: BTreeMap<String, IntervalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    per_graph: Option<Vec<Vec<String>>>,
}

fn json_error(e: serde_json::Error) -> Error {
    match e.classify() {
        serde_json::error::Category::Data => Error::Schema(e.to_string()),
        _ => Error::Json(e.to_string()),
    }
}

/// Reads an instance without validating the sunflower conditions.
pub fn parse_instance_unchecked(bytes: &[u8]) -> Result<SunflowerInstance> {
    let raw: InstanceJson = serde_json::from_slice(bytes).map_err(json_error)?;
    if raw.graphs.is_empty() {
        return Err(Error::Schema("an instance needs at least one graph".into()));
    }
    let mut graphs = Vec::with_capacity(raw.graphs.len());
    for (i, g) in raw.graphs.iter().enumerate() {
        let graph = Graph::build(&g.vertices, &g.edges).map_err(|e| Error::Schema(format!("graph {i}: {e}")))?;
        graphs.push(graph);
    }
    let inst = if raw.sunflower {
        SunflowerInstance::new(graphs, raw.shared_vertices, raw.shared_edges)
    } else {
        if !raw.shared_vertices.is_empty() || !raw.shared_edges.is_empty() {
            return Err(Error::Schema("a non-sunflower instance lists no shared part".into()));
        }
        SunflowerInstance::general(graphs)
    };
    Ok(match raw.name {
        Some(n) => inst.with_name(n),
        None => inst,
    })
}

/// Reads an instance and, unless it is flagged `"sunflower": false`,
/// checks the sunflower conditions.
///
/// ```
/// let text = r#"{"shared_vertices":["s"],"shared_edges":[],
///   "graphs":[{"vertices":["s","a"],"edges":[["s","a"]]},{"vertices":["s","b"],"edges":[]}]}"#;
/// let inst = sunflower_interval::io::parse_instance(text.as_bytes()).unwrap();
/// assert_eq!(inst.k(), 2);
/// ```
pub fn parse_instance(bytes: &[u8]) -> Result<SunflowerInstance> {
    let inst = parse_instance_unchecked(bytes)?;
    if inst.is_sunflower() {
        let report = inst.validate();
        if !report.ok {
            return Err(Error::Invalid(report));
        }
    }
    Ok(inst)
}

pub fn instance_to_json(inst: &SunflowerInstance) -> String {
    let raw = InstanceJson {
        name: inst.name().map(str::to_string),
        shared_vertices: inst.shared_vertices().to_vec(),
        shared_edges: inst.shared_edges().to_vec(),
        graphs: inst
            .graphs()
            .iter()
            .map(|g| GraphJson {
                vertices: g.names().to_vec(),
                edges: g.edges().map(|(a, b)| (g.name(a).to_string(), g.name(b).to_string())).collect(),
            })
            .collect(),
        sunflower: inst.is_sunflower(),
    };
    serde_json::to_string_pretty(&raw).expect("instances serialize")
}

fn interval_value(iv: &Interval) -> IntervalJson {
    IntervalJson { l: fraction_string(&iv.l), r: fraction_string(&iv.r) }
}

fn representation_raw(rep: &Representation) -> RepresentationJson {
    RepresentationJson {
        intervals: rep.intervals.iter().map(|(n, iv)| (n.clone(), interval_value(iv))).collect(),
        per_graph: rep.per_graph.clone(),
    }
}

pub fn representation_value(rep: &Representation) -> Value {
    serde_json::to_value(representation_raw(rep)).expect("representations serialize")
}

/// ```
/// use sunflower_interval::io::representation_to_json;
/// use sunflower_interval::rational::{frac, Interval};
/// use sunflower_interval::Representation;
/// let mut rep = Representation::default();
/// rep.intervals.insert("a".into(), Interval::unit(frac(1, 2)));
/// assert_eq!(representation_to_json(&rep), r#"{"intervals":{"a":{"l":"1/2","r":"3/2"}}}"#);
/// ```
pub fn representation_to_json(rep: &Representation) -> String {
    serde_json::to_string(&representation_raw(rep)).expect("representations serialize")
}

pub fn parse_representation(bytes: &[u8]) -> Result<Representation> {
    let raw: RepresentationJson = serde_json::from_slice(bytes).map_err(json_error)?;
    let mut rep = Representation { per_graph: raw.per_graph, ..Default::default() };
    for (name, iv) in raw.intervals {
        let bad = || Error::Schema(format!("bad endpoint for {name}"));
        let l = parse_fraction(&iv.l).ok_or_else(bad)?;
        let r = parse_fraction(&iv.r).ok_or_else(bad)?;
        if l > r {
            return Err(Error::Schema(format!("interval of {name} ends before it starts")));
        }
        rep.intervals.insert(name, Interval::new(l, r));
    }
    Ok(rep)
}

#[derive(Serialize)]
#[serde(untagged)]
enum ChainGraphJson {
    Union(&'static str),
    Member(usize),
}

#[derive(Serialize)]
struct ConflictJson {
    u: String,
    v: String,
    chain: Vec<String>,
    bar: Vec<String>,
    chain_graph: ChainGraphJson,
    bar_graph: usize,
}

/// A conflict with vertex ids of `inst` replaced by names.
pub fn conflict_value(inst: &SunflowerInstance, c: &Conflict) -> Value {
    let names = |vs: &[usize]| -> Vec<String> { vs.iter().map(|&v| inst.vertex_name(v).to_string()).collect() };
    let raw = ConflictJson {
        u: inst.vertex_name(c.u).to_string(),
        v: inst.vertex_name(c.v).to_string(),
        chain: names(&c.chain),
        bar: names(&c.bar),
        chain_graph: match c.chain_graph {
            ChainGraph::Union => ChainGraphJson::Union("union"),
            ChainGraph::Member(i) => ChainGraphJson::Member(i),
        },
        bar_graph: c.bar_graph,
    };
    serde_json::to_value(raw).expect("conflicts serialize")
}

pub fn parse_betweenness(bytes: &[u8]) -> Result<BetweennessInstance> {
    let raw: BetweennessInstance = serde_json::from_slice(bytes).map_err(json_error)?;
    raw.check().map_err(|e| Error::Schema(e.to_string()))?;
    Ok(raw)
}

pub fn betweenness_to_json(bw: &BetweennessInstance) -> String {
    serde_json::to_string_pretty(bw).expect("betweenness instances serialize")
}

/// `{"result":"yes"|"no","mode":m,"certificate":…}` on one line.
pub fn verdict_json(yes: bool, mode: Mode, certificate: Value) -> String {
    #[derive(Serialize)]
    struct Verdict {
        result: &'static str,
        mode: Mode,
        certificate: Value,
    }
    let v = Verdict { result: if yes { "yes" } else { "no" }, mode, certificate };
    serde_json::to_string(&v).expect("verdicts serialize")
}
