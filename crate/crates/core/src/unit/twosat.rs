//! Reversal decisions as a 2-SAT formula.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::graph::SunflowerInstance;
use crate::simultaneous::SimultaneousEnumeration;
use crate::space::{ComponentClassification, ComponentId};
use crate::unit::conflict::{BarTable, UnionPaths};

/// What a variable reverses when true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Variable {
    Component(ComponentId),
    /// Index into the classification's reversible parts.
    Part(usize),
}

/// `var` is true iff `positive`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TwoSatFormula {
    pub variables: Vec<Variable>,
    /// Disjunctions of at most two literals; an empty one is unsatisfiable.
    pub clauses: Vec<Vec<Literal>>,
}

/// Which variable, if any, reverses each component, keyed by graph and span.
fn variable_map(class: &ComponentClassification) -> (Vec<Variable>, HashMap<ComponentId, usize>) {
    let mut variables = Vec::new();
    let mut of = HashMap::new();
    for id in class.free_components() {
        of.insert(id, variables.len());
        variables.push(Variable::Component(id));
    }
    for (p, part) in class.reversible_parts.iter().enumerate() {
        for &id in &part.members {
            of.insert(id, variables.len());
        }
        variables.push(Variable::Part(p));
    }
    (variables, of)
}

/// One clause per combination of reversals that leaves a shared pair with a
/// bar at least as large as its shortest chain.
pub fn build_2sat(inst: &SunflowerInstance, se: &SimultaneousEnumeration, class: &ComponentClassification) -> TwoSatFormula {
    let (variables, of) = variable_map(class);
    let shared = inst.shared_ids();
    let paths = UnionPaths::new(inst);
    let tables: Vec<BarTable> = (0..inst.k()).map(|i| BarTable::new(inst, se, i)).collect();
    // Variable of the component holding each shared vertex, per graph.
    let var_of: Vec<Vec<Option<usize>>> = (0..inst.k())
        .map(|i| {
            let order = &se.orders[i];
            shared
                .iter()
                .map(|&s| {
                    let span = order.span_of_block(se.block_of(inst, i, s).unwrap());
                    let (start, end) = order.spans()[span];
                    let least = order.blocks()[start..end].iter().flatten().map(|&l| inst.to_global(i, l)).min().unwrap();
                    of.get(&ComponentId { graph: i, least }).copied()
                })
                .collect()
        })
        .collect();
    let mut clauses: BTreeSet<Vec<Literal>> = BTreeSet::new();
    for (x, &u) in shared.iter().enumerate() {
        let (dist, _) = paths.tree(u);
        for (y, &v) in shared.iter().enumerate().skip(x + 1) {
            if dist[v] == usize::MAX {
                continue;
            }
            let chain = dist[v] + 1;
            for (i, table) in tables.iter().enumerate() {
                let (a, b) = (se.block_of(inst, i, u).unwrap(), se.block_of(inst, i, v).unwrap());
                let (vu, vv) = (var_of[i][x], var_of[i][y]);
                for fu in [false, true] {
                    if fu && vu.is_none() {
                        continue;
                    }
                    for fv in [false, true] {
                        if fv && vv.is_none() || vu.is_some() && vu == vv && fu != fv {
                            continue;
                        }
                        let size = table.bar(a, b, fu, fv).or_else(|| table.bar(b, a, fv, fu));
                        if size.is_some_and(|s| s >= chain) {
                            let mut clause: Vec<Literal> = Vec::new();
                            if let Some(var) = vu {
                                clause.push(Literal { var, positive: !fu });
                            }
                            if let Some(var) = vv {
                                if vv != vu {
                                    clause.push(Literal { var, positive: !fv });
                                }
                            }
                            clause.sort_unstable();
                            clauses.insert(clause);
                        }
                    }
                }
            }
        }
    }
    TwoSatFormula { variables, clauses: clauses.into_iter().collect() }
}

/// A satisfying assignment by strongly connected components of the
/// implication graph, or `None`.
pub fn solve_2sat(f: &TwoSatFormula) -> Option<Vec<bool>> {
    let n = f.variables.len();
    let node = |l: Literal| 2 * l.var + usize::from(!l.positive);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for c in &f.clauses {
        match c.as_slice() {
            [] => return None,
            [a] => adj[node(*a) ^ 1].push(node(*a)),
            [a, b] => {
                adj[node(*a) ^ 1].push(node(*b));
                adj[node(*b) ^ 1].push(node(*a));
            }
            _ => panic!("clauses have at most two literals"),
        }
    }
    let comp = tarjan(&adj);
    (0..n)
        .map(|x| match comp[2 * x].cmp(&comp[2 * x + 1]) {
            std::cmp::Ordering::Equal => None,
            // Components are numbered in reverse topological order.
            o => Some(o == std::cmp::Ordering::Less),
        })
        .collect()
}

fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut count = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    comp
}
