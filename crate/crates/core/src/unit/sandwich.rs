//! A supergraph with the linear order as fine enumeration, and unit
//! intervals for it.

use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{Graph, SunflowerInstance};
use crate::rational::{int, Interval, Rational, Representation};
use crate::unit::order::Chains;

/// The graph on the vertices of `inst`, listed in `line` order, in which each
/// vertex is adjacent to every later vertex up to the furthest later neighbor
/// (in any member graph) of itself or an earlier vertex.
pub fn sandwich_graph(inst: &SunflowerInstance, chains: &Chains, line: &[usize]) -> Graph {
    let mut at = vec![0; chains.n];
    for (p, &v) in line.iter().enumerate() {
        at[v] = p;
    }
    let mut pairs = Vec::new();
    let mut reach = 0;
    for (p, &v) in line.iter().enumerate() {
        for &j in &chains.graphs_of[v] {
            reach = reach.max(at[chains.order[j][chains.reach_right(j, v)]]);
        }
        for x in p + 1..=reach {
            pairs.push((p, x));
        }
    }
    let names: Vec<String> = line.iter().map(|&v| inst.vertex_name(v).to_string()).collect();
    Graph::from_parts(names, &pairs)
}

/// Unit intervals whose intersection graph is `h`, with left endpoints
/// increasing along `order`. Each left endpoint is the midpoint of its
/// feasible range, or one past its lower bound when unbounded above.
pub fn unit_representation_from_fine_enum(h: &Graph, order: &[usize]) -> Result<Representation> {
    let n = h.len();
    if order.len() != n {
        return Err(Error::Enumeration("the order must list every vertex once".into()));
    }
    let mut at = vec![usize::MAX; n];
    for (p, &v) in order.iter().enumerate() {
        if v >= n || at[v] != usize::MAX {
            return Err(Error::Enumeration("the order must list every vertex once".into()));
        }
        at[v] = p;
    }
    let mut left: Vec<Rational> = Vec::with_capacity(n);
    let one = Rational::one();
    let half = Rational::new(1.into(), 2.into());
    for (p, &v) in order.iter().enumerate() {
        let earlier: Vec<usize> = h.neighbors(v).iter().map(|&w| at[w]).filter(|&q| q < p).collect();
        let later = h.degree(v) - earlier.len();
        let first = earlier.iter().copied().min().unwrap_or(p);
        let last = h.neighbors(v).iter().map(|&w| at[w]).max().unwrap_or(p).max(p);
        if earlier.len() != p - first || later != last - p {
            return Err(Error::Enumeration(format!("the neighborhood of {} is not consecutive", h.name(v))));
        }
        if p == 0 {
            left.push(int(0));
            continue;
        }
        let mut low = left[p - 1].clone();
        if first > 0 {
            let bound = &left[first - 1] + &one;
            if bound > low {
                low = bound;
            }
        }
        let l = if first < p {
            let high = &left[first] + &one;
            if low >= high {
                return Err(Error::Enumeration(format!("no room for {}", h.name(v))));
            }
            (low + high) * &half
        } else {
            low + &one
        };
        left.push(l);
    }
    let mut rep = Representation::default();
    for (p, &v) in order.iter().enumerate() {
        rep.intervals.insert(h.name(v).to_string(), Interval::unit(left[p].clone()));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn path_midpoints() {
        let g = Graph::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let rep = unit_representation_from_fine_enum(&g, &[0, 1, 2]).unwrap();
        assert_eq!(rep.get("a").unwrap().l, int(0));
        assert_eq!(rep.get("b").unwrap().l, frac(1, 2));
        assert_eq!(rep.get("c").unwrap().l, frac(5, 4));
        assert_eq!(rep.get("c").unwrap().r, frac(9, 4));
    }

    #[test]
    fn clique_and_singleton() {
        let k3 = Graph::build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let rep = unit_representation_from_fine_enum(&k3, &[0, 1, 2]).unwrap();
        let iv: Vec<&Interval> = ["a", "b", "c"].iter().map(|v| rep.get(v).unwrap()).collect();
        for x in &iv {
            assert_eq!(x.length(), int(1));
            assert!(iv.iter().all(|y| x.intersects(y)));
        }
        let one = Graph::build(&["x"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(unit_representation_from_fine_enum(&one, &[0]).unwrap().get("x").unwrap().l, int(0));
    }

    #[test]
    fn rejects_a_non_fine_order() {
        let g = Graph::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(unit_representation_from_fine_enum(&g, &[0, 2, 1]).is_err());
    }
}
