//! Extending the induced order to a left-closed linear order: a right-to-left
//! pass adding only forced pairs, then a greedy left-to-right pass.
//!
//! Left-closed means: `vw ∈ E`, `ux ∈ F` and `x <= w` imply `u < v`.

use crate::error::{Error, Result};
use crate::graph::SunflowerInstance;
use crate::simultaneous::SimultaneousEnumeration;
use crate::unit::conflict::find_relaxed_conflict;
use crate::unit::order::{Chains, PartialOrder};
use crate::unit::Conflict;

#[derive(Clone, Debug)]
pub enum ScoutOutcome {
    Order(PartialOrder),
    Conflict(Conflict),
}

/// Right-to-left pass. Each step takes the least-indexed maximal unprocessed
/// vertex `x` and, for graphs `i` and `j`, orders the last non-neighbor
/// before `x` in `i` before the first neighbor of the first
/// vertex at or above `x` in `j`. A pair that would close a cycle means the
/// enumeration has a conflict, which is then located and returned.
pub fn scout(
    inst: &SunflowerInstance,
    se: &SimultaneousEnumeration,
    chains: &Chains,
    alpha: &PartialOrder,
) -> Result<ScoutOutcome> {
    let k = chains.k();
    let mut order = alpha.clone();
    // Unprocessed vertices of each graph form a prefix of its chain.
    let mut len: Vec<usize> = chains.order.iter().map(Vec::len).collect();
    for _ in 0..chains.n {
        let x = (0..k)
            .filter(|&j| len[j] > 0)
            .map(|j| chains.order[j][len[j] - 1])
            .filter(|&c| {
                (0..k).all(|h| {
                    if chains.contains(h, c) {
                        chains.pos[h][c] + 1 == len[h]
                    } else {
                        order.up(c, h) >= len[h]
                    }
                })
            })
            .min()
            .ok_or_else(|| Error::Internal("no maximal vertex left".into()))?;
        let mut after = len.clone();
        for &j in &chains.graphs_of[x] {
            after[j] -= 1;
        }
        let lefts: Vec<usize> =
            chains.graphs_of[x].iter().filter_map(|&i| chains.last_non_neighbor_before(i, x)).collect();
        let rights: Vec<usize> = (0..k)
            .filter_map(|j| {
                let w = *chains.order[j].get(order.up(x, j))?;
                Some(chains.order[j][chains.reach_left(j, w)])
            })
            .collect();
        for &u in &lefts {
            for &v in &rights {
                if order.le(chains, v, u) {
                    return match find_relaxed_conflict(inst, se) {
                        Some(c) => Ok(ScoutOutcome::Conflict(c)),
                        None => Err(Error::Internal("ordering broke down without a conflict".into())),
                    };
                }
                order.add(chains, u, v)?;
            }
        }
        len = after;
    }
    Ok(ScoutOutcome::Order(order))
}

/// Left-to-right pass over a left-closed order: repeatedly emits the
/// least-indexed minimal vertex `u` and orders every later neighbor of an
/// emitted vertex before every later non-neighbor of `u`.
pub fn zip(chains: &Chains, tau: &PartialOrder) -> Result<Vec<usize>> {
    let k = chains.k();
    let mut order = tau.clone();
    let mut done = vec![false; chains.n];
    let mut count = vec![0usize; k];
    // Per graph: furthest position reached by a neighbor of an emitted vertex.
    let mut reach: Vec<Option<usize>> = vec![None; k];
    let mut out = Vec::with_capacity(chains.n);
    while out.len() < chains.n {
        let mut cands: Vec<usize> =
            (0..k).filter(|&j| count[j] < chains.order[j].len()).map(|j| chains.order[j][count[j]]).collect();
        cands.sort_unstable();
        cands.dedup();
        let u = cands
            .iter()
            .copied()
            .find(|&c| cands.iter().all(|&y| !order.lt(chains, y, c)))
            .ok_or_else(|| Error::Internal("no minimal vertex left".into()))?;
        done[u] = true;
        out.push(u);
        for &i in &chains.graphs_of[u] {
            count[i] += 1;
            let r = chains.reach_right(i, u);
            reach[i] = Some(reach[i].map_or(r, |p| p.max(r)));
        }
        let later: Vec<usize> =
            chains.graphs_of[u].iter().filter_map(|&i| chains.first_non_neighbor_after(i, u)).collect();
        if later.is_empty() {
            continue;
        }
        let target: Vec<usize> = (0..k).map(|j| later.iter().map(|&z| order.up(z, j)).min().unwrap()).collect();
        for i in 0..k {
            let Some(p) = reach[i] else { continue };
            let y = chains.order[i][p];
            if done[y] {
                continue;
            }
            if later.iter().any(|&z| order.le(chains, z, y)) {
                return Err(Error::Internal("zipping closed a cycle".into()));
            }
            for &z in &later {
                order.add_pred(z, y);
            }
            order.lower(chains, y, &target, |p| !done[p]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::simultaneous::{recognize_proper, ProperVerdict};
    use crate::unit::order::{edge_classification, induced_partial_order, is_left_closed};

    fn path(names: &[&str]) -> Graph {
        let edges: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Graph::build(names, &edges).unwrap()
    }

    #[test]
    fn two_routes_scout_finds_the_conflict() {
        let inst = SunflowerInstance::new(
            vec![path(&["s1", "a", "b", "c", "s2"]), path(&["s1", "d", "s2"])],
            vec!["s1", "s2"],
            vec![],
        );
        let ProperVerdict::Yes(comps) = recognize_proper(&inst).unwrap() else { panic!() };
        let se = &comps[0].enumeration;
        let (chains, alpha) = induced_partial_order(&inst, se).unwrap();
        assert!(matches!(scout(&inst, se, &chains, &alpha).unwrap(), ScoutOutcome::Conflict(_)));
    }

    #[test]
    fn two_paths_sharing_ends() {
        // s1-a-s2 and s1-d-s2: no conflict, and a and d must interleave.
        let inst = SunflowerInstance::new(
            vec![path(&["s1", "a", "s2"]), path(&["s1", "d", "s2"])],
            vec!["s1", "s2"],
            vec![],
        );
        let ProperVerdict::Yes(comps) = recognize_proper(&inst).unwrap() else { panic!() };
        let se = &comps[0].enumeration;
        let (chains, alpha) = induced_partial_order(&inst, se).unwrap();
        let (e, f) = edge_classification(&inst, &chains, &alpha);
        let ScoutOutcome::Order(tau) = scout(&inst, se, &chains, &alpha).unwrap() else { panic!() };
        assert!(is_left_closed(|a, b| tau.le(&chains, a, b), &e, &f));
        let line = zip(&chains, &tau).unwrap();
        assert_eq!(line.len(), 4);
        let at = |v: usize| line.iter().position(|&x| x == v).unwrap();
        assert!(is_left_closed(|a, b| at(a) <= at(b), &e, &f));
    }
}
