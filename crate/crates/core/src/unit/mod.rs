//! Sunflower unit interval recognition.
//!
//! A proper-recognized instance is unit-representable exactly when some
//! enumeration in its space is free of conflicts: a chain in the union graph
//! and a bar in a member graph between the same two shared vertices, the bar
//! at least as long as the chain. Which reversals avoid all conflicts is a
//! 2-SAT question. A conflict-free enumeration is then extended to a linear
//! order, the order to a supergraph, and the supergraph to unit intervals.

pub mod conflict;
pub mod order;
pub mod quotient;
pub mod sandwich;
pub mod sweep;
pub mod twosat;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SunflowerInstance;
use crate::rational::{int, Representation};
use crate::simultaneous::{recognize_proper, restrict_enumeration, ProperNo, ProperVerdict, SimultaneousEnumeration};
use crate::space::{classify_components, reverse_components};

pub use conflict::{find_relaxed_conflict, max_bar, shortest_chain};
pub use order::{induced_partial_order, Chains, PartialOrder};
pub use quotient::{quotient_indistinguishable, Quotient};
pub use sandwich::{sandwich_graph, unit_representation_from_fine_enum};
pub use sweep::{scout, zip, ScoutOutcome};
pub use twosat::{build_2sat, solve_2sat, TwoSatFormula};

/// Which graph a chain lives in; relaxed chains live in the union graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainGraph {
    Union,
    Member(usize),
}

/// A chain and a bar of equal size between the same two shared vertices
/// (global ids of the instance they were found in).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub u: usize,
    pub v: usize,
    pub chain: Vec<usize>,
    pub bar: Vec<usize>,
    pub chain_graph: ChainGraph,
    pub bar_graph: usize,
}

impl Conflict {
    pub fn size(&self) -> usize {
        self.chain.len()
    }
}

#[derive(Clone, Debug)]
pub struct UnitComponent {
    pub instance: SunflowerInstance,
    pub enumeration: SimultaneousEnumeration,
}

#[derive(Clone, Debug)]
pub enum UnitNo {
    Proper(ProperNo),
    /// Every enumeration of this union component has a conflict; `conflict`
    /// is one for the enumeration found first, over ids of `instance`.
    Conflict { component: usize, instance: SunflowerInstance, conflict: Option<Conflict> },
}

#[derive(Clone, Debug)]
pub enum UnitVerdict {
    Yes(Vec<UnitComponent>),
    No(UnitNo),
}

impl UnitVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, UnitVerdict::Yes(_))
    }
}

/// Decides whether the instance has a simultaneous unit interval representation.
///
/// ```
/// use sunflower_interval::{Graph, SunflowerInstance};
/// use sunflower_interval::unit::recognize_unit;
/// let g1 = Graph::build(&["s1", "a", "b", "c", "s2"], &[("s1", "a"), ("a", "b"), ("b", "c"), ("c", "s2")]).unwrap();
/// let g2 = Graph::build(&["s1", "d", "s2"], &[("s1", "d"), ("d", "s2")]).unwrap();
/// let inst = SunflowerInstance::new(vec![g1, g2], vec!["s1", "s2"], vec![]);
/// assert!(!recognize_unit(&inst).unwrap().is_yes());
/// ```
pub fn recognize_unit(inst: &SunflowerInstance) -> Result<UnitVerdict> {
    let comps = match recognize_proper(inst)? {
        ProperVerdict::Yes(comps) => comps,
        ProperVerdict::No(no) => return Ok(UnitVerdict::No(UnitNo::Proper(no))),
    };
    let mut out = Vec::with_capacity(comps.len());
    for (c, comp) in comps.into_iter().enumerate() {
        let (part, se) = (comp.instance, comp.enumeration);
        let class = classify_components(&part, &se);
        let formula = build_2sat(&part, &se, &class);
        let Some(assignment) = solve_2sat(&formula) else {
            let conflict = find_relaxed_conflict(&part, &se);
            return Ok(UnitVerdict::No(UnitNo::Conflict { component: c, instance: part, conflict }));
        };
        let mut ids = Vec::new();
        for (var, &value) in formula.variables.iter().zip(&assignment) {
            if value {
                match var {
                    twosat::Variable::Component(id) => ids.push(*id),
                    twosat::Variable::Part(p) => ids.extend(class.reversible_parts[*p].members.iter().copied()),
                }
            }
        }
        let chosen = reverse_components(&part, &se, &ids);
        if find_relaxed_conflict(&part, &chosen).is_some() {
            return Err(Error::Internal("the chosen reversals leave a conflict".into()));
        }
        out.push(UnitComponent { instance: part, enumeration: chosen });
    }
    Ok(UnitVerdict::Yes(out))
}

/// Unit intervals realizing a conflict-free enumeration, with union
/// components laid out left to right.
pub fn build_unit_representation(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> Result<Representation> {
    if se.orders.len() != inst.k() {
        return Err(Error::Enumeration("one enumeration per graph expected".into()));
    }
    let pieces = inst
        .split_by_components()
        .iter()
        .map(|part| unit_connected(part, &restrict_enumeration(inst, se, part)))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = Representation::concat_right(pieces, &int(1));
    rep.per_graph = Some(inst.graphs().iter().map(|g| g.names().to_vec()).collect());
    Ok(rep)
}

fn unit_connected(inst: &SunflowerInstance, se: &SimultaneousEnumeration) -> Result<Representation> {
    let q = quotient_indistinguishable(inst, se);
    let (chains, alpha) = induced_partial_order(&q.reduced, &q.enumeration)?;
    let tau = match scout(&q.reduced, &q.enumeration, &chains, &alpha)? {
        ScoutOutcome::Order(tau) => tau,
        ScoutOutcome::Conflict(_) => {
            return Err(Error::Enumeration("the enumeration has a conflict".into()));
        }
    };
    let line = zip(&chains, &tau)?;
    let h = sandwich_graph(&q.reduced, &chains, &line);
    let order: Vec<usize> = (0..h.len()).collect();
    let reduced = unit_representation_from_fine_enum(&h, &order)?;
    let mut rep = Representation::default();
    for v in 0..inst.vertex_count() {
        let source = inst.vertex_name(q.representative[v]);
        let iv = reduced.get(source).ok_or_else(|| Error::Internal(format!("no interval for {source}")))?;
        rep.intervals.insert(inst.vertex_name(v).to_string(), iv.clone());
    }
    Ok(rep)
}

/// Convenience: the representation of a positive recognition outcome.
pub fn unit_representation_of(inst: &SunflowerInstance, comps: &[UnitComponent]) -> Result<Representation> {
    let pieces = comps
        .iter()
        .map(|c| build_unit_representation(&c.instance, &c.enumeration))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = Representation::concat_right(pieces, &int(1));
    rep.per_graph = Some(inst.graphs().iter().map(|g| g.names().to_vec()).collect());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::{brute_force_unit, check_representation};
    use crate::Mode;

    fn path(names: &[&str]) -> Graph {
        let edges: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Graph::build(names, &edges).unwrap()
    }

    fn assert_unit_yes(inst: &SunflowerInstance) {
        let UnitVerdict::Yes(comps) = recognize_unit(inst).unwrap() else { panic!("expected yes") };
        let rep = unit_representation_of(inst, &comps).unwrap();
        let report = check_representation(inst, &rep, Mode::Unit).unwrap();
        assert!(report.ok, "{report:?}");
    }

    #[test]
    fn two_routes_and_long_bar_are_no() {
        let two_routes = SunflowerInstance::new(
            vec![path(&["s1", "a", "b", "c", "s2"]), path(&["s1", "d", "s2"])],
            vec!["s1", "s2"],
            vec![],
        );
        let long = path(&["s1", "x1", "d", "x2", "e", "x3", "f", "x4", "s2"]);
        let long_bar = SunflowerInstance::new(vec![path(&["s1", "a", "b", "c", "s2"]), long], vec!["s1", "s2"], vec![]);
        for inst in [two_routes, long_bar] {
            let UnitVerdict::No(UnitNo::Conflict { conflict, .. }) = recognize_unit(&inst).unwrap() else {
                panic!("expected a conflict")
            };
            assert!(conflict.is_some());
            assert!(!brute_force_unit(&inst, 12).unwrap());
        }
    }

    #[test]
    fn small_yes_instances() {
        assert_unit_yes(&SunflowerInstance::new(
            vec![path(&["s1", "a", "s2"]), path(&["s1", "d", "s2"])],
            vec!["s1", "s2"],
            vec![],
        ));
        assert_unit_yes(&SunflowerInstance::new(vec![path(&["s", "a", "x"]), path(&["s", "b", "y"])], vec!["s"], vec![]));
        assert_unit_yes(&SunflowerInstance::new(vec![path(&["p", "q", "r", "t"])], Vec::<String>::new(), vec![]));
        let g1 = Graph::build(&["u", "v", "p"], &[("u", "v"), ("v", "p")]).unwrap();
        let g2 = Graph::build(&["u", "v", "q"], &[("u", "v"), ("u", "q")]).unwrap();
        assert_unit_yes(&SunflowerInstance::new(vec![g1, g2], vec!["u", "v"], vec![("u", "v")]));
    }
}
