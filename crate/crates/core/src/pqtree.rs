//! PQ-trees over a finite ground set of `usize` elements.
//!
//! A tree stands for the set of linear orders of its leaves obtained by
//! permuting the children of P-nodes arbitrarily and reversing the children
//! of Q-nodes. The null tree stands for the empty set.
//!
//! ```
//! use sunflower_interval::PqTree;
//! let t = PqTree::universal(&[1, 2, 3]).unwrap();
//! let t = t.reduce(&[1, 2]).unwrap().reduce(&[2, 3]).unwrap();
//! assert_eq!(t.to_string(), "Q(1, 2, 3)");
//! assert_eq!(t.enumerate_orders(10).unwrap(), vec![vec![1, 2, 3], vec![3, 2, 1]]);
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::PqError;

type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Leaf(usize),
    P,
    Q,
}

#[derive(Clone, Debug)]
struct Node {
    kind: Kind,
    children: Vec<NodeId>,
    parent: Option<NodeId>,
    slot: usize,
    leaves: usize,
}

/// A plain nested description of a tree, used for building and inspecting trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf(usize),
    P(Vec<Shape>),
    Q(Vec<Shape>),
}

#[derive(Clone, Debug)]
pub struct PqTree {
    ground: Vec<usize>,
    nodes: Vec<Node>,
    root: Option<NodeId>,
    leaf: HashMap<usize, NodeId>,
}

/// Per-reduction marks: how many constrained leaves sit below a node and
/// which of its children are touched.
#[derive(Default)]
struct Marks {
    count: HashMap<NodeId, usize>,
    pert: HashMap<NodeId, Vec<NodeId>>,
}

impl Marks {
    fn count(&self, x: NodeId) -> usize {
        self.count.get(&x).copied().unwrap_or(0)
    }
}

struct Fail;

impl PqTree {
    /// The tree admitting every order of `ground`.
    pub fn universal(ground: &[usize]) -> Result<PqTree, PqError> {
        let mut g = ground.to_vec();
        g.sort_unstable();
        g.dedup();
        match g.len() {
            0 => Err(PqError::EmptyGround),
            1 => PqTree::from_shape(Shape::Leaf(g[0])),
            _ => PqTree::from_shape(Shape::P(g.into_iter().map(Shape::Leaf).collect())),
        }
    }

    /// The null tree over `ground`: no order is consistent with it.
    pub fn null(ground: &[usize]) -> PqTree {
        let mut g = ground.to_vec();
        g.sort_unstable();
        g.dedup();
        PqTree { ground: g, nodes: Vec::new(), root: None, leaf: HashMap::new() }
    }

    /// Builds a tree from a nested shape, normalizing it.
    pub fn from_shape(shape: Shape) -> Result<PqTree, PqError> {
        let mut t = PqTree { ground: Vec::new(), nodes: Vec::new(), root: None, leaf: HashMap::new() };
        let root = t.build(&normalize_shape(shape))?;
        t.root = Some(root);
        t.ground = t.leaf.keys().copied().collect();
        t.ground.sort_unstable();
        Ok(t)
    }

    fn build(&mut self, s: &Shape) -> Result<NodeId, PqError> {
        match s {
            Shape::Leaf(e) => {
                let id = self.alloc(Kind::Leaf(*e), Vec::new());
                if self.leaf.insert(*e, id).is_some() {
                    return Err(PqError::Parse(format!("element {e} appears twice")));
                }
                Ok(id)
            }
            Shape::P(cs) | Shape::Q(cs) => {
                let kids = cs.iter().map(|c| self.build(c)).collect::<Result<Vec<_>, _>>()?;
                let kind = if matches!(s, Shape::P(_)) { Kind::P } else { Kind::Q };
                Ok(self.alloc(kind, kids))
            }
        }
    }

    fn alloc(&mut self, kind: Kind, children: Vec<NodeId>) -> NodeId {
        let id = self.nodes.len();
        let leaves = match kind {
            Kind::Leaf(_) => 1,
            _ => children.iter().map(|&c| self.nodes[c].leaves).sum(),
        };
        for (i, &c) in children.iter().enumerate() {
            self.nodes[c].parent = Some(id);
            self.nodes[c].slot = i;
        }
        self.nodes.push(Node { kind, children, parent: None, slot: 0, leaves });
        id
    }

    pub fn to_shape(&self) -> Option<Shape> {
        self.root.map(|r| self.shape_of(r))
    }

    fn shape_of(&self, x: NodeId) -> Shape {
        let n = &self.nodes[x];
        match n.kind {
            Kind::Leaf(e) => Shape::Leaf(e),
            Kind::P => Shape::P(n.children.iter().map(|&c| self.shape_of(c)).collect()),
            Kind::Q => Shape::Q(n.children.iter().map(|&c| self.shape_of(c)).collect()),
        }
    }

    /// The same tree rebuilt into a fresh arena without garbage nodes.
    pub fn normalized(&self) -> PqTree {
        match self.to_shape() {
            Some(s) => PqTree::from_shape(s).expect("tree shapes are well formed"),
            None => PqTree::null(&self.ground),
        }
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn is_null(&self) -> bool {
        self.root.is_none()
    }

    /// Renames every element; `f` must be injective.
    pub fn map_elements(&self, f: impl Fn(usize) -> usize) -> PqTree {
        fn go(s: Shape, f: &dyn Fn(usize) -> usize) -> Shape {
            match s {
                Shape::Leaf(e) => Shape::Leaf(f(e)),
                Shape::P(cs) => Shape::P(cs.into_iter().map(|c| go(c, f)).collect()),
                Shape::Q(cs) => Shape::Q(cs.into_iter().map(|c| go(c, f)).collect()),
            }
        }
        match self.to_shape() {
            Some(s) => PqTree::from_shape(go(s, &f)).expect("renaming is injective"),
            None => PqTree::null(&self.ground.iter().map(|&e| f(e)).collect::<Vec<_>>()),
        }
    }

    /// Restricts the tree to orders in which `c` is consecutive.
    pub fn reduce(&self, c: &[usize]) -> Result<PqTree, PqError> {
        let mut t = self.clone();
        t.reduce_in_place(c)?;
        Ok(t)
    }

    /// In-place [`PqTree::reduce`]; returns whether the tree is still non-null.
    pub fn reduce_in_place(&mut self, c: &[usize]) -> Result<bool, PqError> {
        for e in c {
            if self.ground.binary_search(e).is_err() {
                return Err(PqError::UnknownElement(*e));
            }
        }
        let Some(root) = self.root else { return Ok(false) };
        let mut c = c.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.len() <= 1 {
            return Ok(true);
        }
        let marks = self.mark(&c, root);
        let mut top = root;
        'descend: loop {
            if let Some(kids) = marks.pert.get(&top) {
                for &k in kids {
                    if marks.count(k) == c.len() {
                        top = k;
                        continue 'descend;
                    }
                }
            }
            break;
        }
        if self.process_root(top, &marks).is_err() {
            self.root = None;
            self.nodes.clear();
            self.leaf.clear();
            return Ok(false);
        }
        Ok(true)
    }

    fn mark(&self, c: &[usize], root: NodeId) -> Marks {
        let mut marks = Marks::default();
        let mut seen: HashMap<NodeId, ()> = HashMap::new();
        for e in c {
            let mut x = self.leaf[e];
            seen.insert(x, ());
            while let Some(p) = self.nodes[x].parent {
                marks.pert.entry(p).or_default().push(x);
                if seen.insert(p, ()).is_some() {
                    break;
                }
                x = p;
            }
        }
        // Post-order accumulation of leaf counts over the marked part.
        let mut stack = vec![(root, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                let n = match self.nodes[x].kind {
                    Kind::Leaf(_) => 1,
                    _ => marks.pert.get(&x).map_or(0, |ks| ks.iter().map(|k| marks.count(*k)).sum()),
                };
                marks.count.insert(x, n);
            } else {
                stack.push((x, true));
                if let Some(ks) = marks.pert.get(&x) {
                    for &k in ks {
                        stack.push((k, false));
                    }
                }
            }
        }
        marks
    }

    fn is_full(&self, x: NodeId, marks: &Marks) -> bool {
        marks.count(x) == self.nodes[x].leaves
    }

    fn reslot_from(&mut self, x: NodeId, from: usize) {
        let kids = std::mem::take(&mut self.nodes[x].children);
        for (i, &c) in kids.iter().enumerate().skip(from) {
            self.nodes[c].parent = Some(x);
            self.nodes[c].slot = i;
        }
        self.nodes[x].children = kids;
    }

    /// Removes a child from a P-node; order among P-children is irrelevant.
    fn detach(&mut self, p: NodeId, child: NodeId) {
        let s = self.nodes[child].slot;
        let kids = &mut self.nodes[p].children;
        kids.swap_remove(s);
        if s < kids.len() {
            let moved = kids[s];
            self.nodes[moved].slot = s;
        }
        self.nodes[p].leaves -= self.nodes[child].leaves;
        self.nodes[child].parent = None;
    }

    fn attach(&mut self, p: NodeId, child: NodeId) {
        let s = self.nodes[p].children.len();
        self.nodes[p].children.push(child);
        self.nodes[p].leaves += self.nodes[child].leaves;
        self.nodes[child].parent = Some(p);
        self.nodes[child].slot = s;
    }

    /// Puts `new` where `old` was (same parent and slot, or as root).
    fn replace(&mut self, old_parent: Option<NodeId>, slot: usize, new: NodeId) {
        match old_parent {
            Some(p) => {
                self.nodes[p].children[slot] = new;
                self.nodes[new].parent = Some(p);
                self.nodes[new].slot = slot;
            }
            None => {
                self.nodes[new].parent = None;
                self.root = Some(new);
            }
        }
    }

    fn group(&mut self, mut xs: Vec<NodeId>) -> Option<NodeId> {
        match xs.len() {
            0 => None,
            1 => xs.pop(),
            _ => Some(self.alloc(Kind::P, xs)),
        }
    }

    fn reverse_children(&mut self, x: NodeId) {
        self.nodes[x].children.reverse();
        self.reslot_from(x, 0);
    }

    fn split_pert(&self, x: NodeId, marks: &Marks) -> (Vec<NodeId>, Vec<NodeId>) {
        let pert = marks.pert.get(&x).cloned().unwrap_or_default();
        pert.into_iter().partition(|&c| self.is_full(c, marks))
    }

    /// Turns a partial node into a Q-node whose children run from the
    /// unconstrained side to the constrained side. Returns the new Q-node,
    /// detached from any parent.
    fn process_partial(&mut self, x: NodeId, marks: &Marks) -> Result<NodeId, Fail> {
        match self.nodes[x].kind {
            Kind::Leaf(_) => unreachable!("leaves are never partial"),
            Kind::P => {
                let (full, partial) = self.split_pert(x, marks);
                if partial.len() > 1 {
                    return Err(Fail);
                }
                for &c in full.iter().chain(&partial) {
                    self.detach(x, c);
                }
                let empty_group = match self.nodes[x].children.len() {
                    0 => None,
                    1 => {
                        let only = self.nodes[x].children[0];
                        self.detach(x, only);
                        Some(only)
                    }
                    _ => Some(x),
                };
                let full_group = self.group(full);
                let mut seq = Vec::new();
                seq.extend(empty_group);
                if let Some(&pa) = partial.first() {
                    let q = self.process_partial(pa, marks)?;
                    seq.extend(std::mem::take(&mut self.nodes[q].children));
                }
                seq.extend(full_group);
                Ok(self.alloc(Kind::Q, seq))
            }
            Kind::Q => {
                let (lo, hi) = self.pert_range(x, marks)?;
                let d = self.nodes[x].children.len();
                let kids = &self.nodes[x].children;
                let partial_at: Vec<usize> =
                    (lo..=hi).filter(|&s| !self.is_full(kids[s], marks)).collect();
                if partial_at.len() > 1 {
                    return Err(Fail);
                }
                let pa = partial_at.first().copied();
                let right_ok = hi == d - 1 && pa.is_none_or(|s| s == lo);
                let left_ok = lo == 0 && pa.is_none_or(|s| s == hi);
                let (lo, pa) = if right_ok {
                    (lo, pa)
                } else if left_ok {
                    self.reverse_children(x);
                    (d - 1 - hi, pa.map(|s| d - 1 - s))
                } else {
                    return Err(Fail);
                };
                if let Some(s) = pa {
                    let child = self.nodes[x].children[s];
                    let q = self.process_partial(child, marks)?;
                    let inner = std::mem::take(&mut self.nodes[q].children);
                    self.nodes[x].children.splice(s..=s, inner);
                    self.reslot_from(x, lo);
                }
                Ok(x)
            }
        }
    }

    /// Slot range of the touched children of a Q-node; they must be contiguous
    /// and every interior one full.
    fn pert_range(&self, x: NodeId, marks: &Marks) -> Result<(usize, usize), Fail> {
        let pert = &marks.pert[&x];
        let mut lo = usize::MAX;
        let mut hi = 0;
        for &c in pert {
            let s = self.nodes[c].slot;
            lo = lo.min(s);
            hi = hi.max(s);
        }
        if hi - lo + 1 != pert.len() {
            return Err(Fail);
        }
        let kids = &self.nodes[x].children;
        if (lo + 1..hi).any(|s| !self.is_full(kids[s], marks)) {
            return Err(Fail);
        }
        Ok((lo, hi))
    }

    fn process_root(&mut self, x: NodeId, marks: &Marks) -> Result<(), Fail> {
        match self.nodes[x].kind {
            Kind::Leaf(_) => Ok(()),
            Kind::P => {
                let (full, partial) = self.split_pert(x, marks);
                if partial.len() > 2 {
                    return Err(Fail);
                }
                if partial.is_empty() {
                    if full.len() < self.nodes[x].children.len() {
                        for &c in &full {
                            self.detach(x, c);
                        }
                        let g = self.group(full).expect("the pertinent root has two touched children");
                        self.attach(x, g);
                    }
                    return Ok(());
                }
                let (parent, slot) = (self.nodes[x].parent, self.nodes[x].slot);
                for &c in full.iter().chain(&partial) {
                    self.detach(x, c);
                }
                let full_group = self.group(full);
                let q = self.process_partial(partial[0], marks)?;
                let mut seq = std::mem::take(&mut self.nodes[q].children);
                seq.extend(full_group);
                if let Some(&second) = partial.get(1) {
                    let q2 = self.process_partial(second, marks)?;
                    let mut tail = std::mem::take(&mut self.nodes[q2].children);
                    tail.reverse();
                    seq.extend(tail);
                }
                let kind = if seq.len() == 2 { Kind::P } else { Kind::Q };
                let merged = self.alloc(kind, seq);
                if self.nodes[x].children.is_empty() {
                    self.replace(parent, slot, merged);
                } else {
                    self.attach(x, merged);
                }
                Ok(())
            }
            Kind::Q => {
                let (lo, hi) = self.pert_range(x, marks)?;
                let (left, right) = (self.nodes[x].children[lo], self.nodes[x].children[hi]);
                if !self.is_full(right, marks) {
                    let q = self.process_partial(right, marks)?;
                    let mut inner = std::mem::take(&mut self.nodes[q].children);
                    inner.reverse();
                    self.nodes[x].children.splice(hi..=hi, inner);
                }
                if !self.is_full(left, marks) {
                    let q = self.process_partial(left, marks)?;
                    let inner = std::mem::take(&mut self.nodes[q].children);
                    self.nodes[x].children.splice(lo..=lo, inner);
                }
                self.reslot_from(x, lo);
                Ok(())
            }
        }
    }

    /// Projection onto `sub`: the restrictions of all consistent orders.
    pub fn projection(&self, sub: &[usize]) -> Result<PqTree, PqError> {
        if sub.is_empty() {
            return Err(PqError::EmptyGround);
        }
        for e in sub {
            if self.ground.binary_search(e).is_err() {
                return Err(PqError::UnknownElement(*e));
            }
        }
        let Some(shape) = self.to_shape() else { return Err(PqError::NullTree) };
        let keep: std::collections::HashSet<usize> = sub.iter().copied().collect();
        let pruned = prune(shape, &keep).expect("sub is nonempty");
        PqTree::from_shape(pruned)
    }

    /// The tree whose consistent orders are those of both trees.
    pub fn intersect(&self, other: &PqTree) -> Result<PqTree, PqError> {
        if self.ground != other.ground {
            return Err(PqError::GroundMismatch);
        }
        if self.is_null() || other.is_null() {
            return Ok(PqTree::null(&self.ground));
        }
        let mut t = self.normalized();
        for c in other.constraint_family() {
            if !t.reduce_in_place(&c)? {
                break;
            }
        }
        Ok(t)
    }

    /// Sets whose consecutiveness pins down exactly this tree's orders: each
    /// inner node's leaves, and each adjacent pair of Q-children.
    pub fn constraint_family(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if let Some(r) = self.root {
            self.collect_constraints(r, &mut out);
        }
        out
    }

    fn collect_constraints(&self, x: NodeId, out: &mut Vec<Vec<usize>>) -> Vec<usize> {
        let n = &self.nodes[x];
        match n.kind {
            Kind::Leaf(e) => vec![e],
            _ => {
                let sets: Vec<Vec<usize>> =
                    n.children.iter().map(|&c| self.collect_constraints(c, out)).collect();
                if n.kind == Kind::Q {
                    for w in sets.windows(2) {
                        out.push(w[0].iter().chain(&w[1]).copied().collect());
                    }
                }
                let all: Vec<usize> = sets.concat();
                out.push(all.clone());
                all
            }
        }
    }

    /// The left-to-right frontier.
    pub fn pick_order(&self) -> Result<Vec<usize>, PqError> {
        let root = self.root.ok_or(PqError::NullTree)?;
        let mut out = Vec::with_capacity(self.ground.len());
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            match self.nodes[x].kind {
                Kind::Leaf(e) => out.push(e),
                _ => stack.extend(self.nodes[x].children.iter().rev()),
            }
        }
        Ok(out)
    }

    /// Whether `order` is one of the consistent orders.
    pub fn consistent(&self, order: &[usize]) -> Result<bool, PqError> {
        let mut pos = HashMap::with_capacity(order.len());
        for (i, e) in order.iter().enumerate() {
            if self.ground.binary_search(e).is_err() || pos.insert(*e, i).is_some() {
                return Err(PqError::NotPermutation);
            }
        }
        if pos.len() != self.ground.len() {
            return Err(PqError::NotPermutation);
        }
        let Some(root) = self.root else { return Ok(false) };
        Ok(self.span(root, &pos).is_some())
    }

    fn span(&self, x: NodeId, pos: &HashMap<usize, usize>) -> Option<(usize, usize)> {
        let n = &self.nodes[x];
        if let Kind::Leaf(e) = n.kind {
            return Some((pos[&e], pos[&e]));
        }
        let spans = n.children.iter().map(|&c| self.span(c, pos)).collect::<Option<Vec<_>>>()?;
        let lo = spans.iter().map(|s| s.0).min()?;
        let hi = spans.iter().map(|s| s.1).max()?;
        if hi - lo + 1 != n.leaves {
            return None;
        }
        if n.kind == Kind::Q {
            let up = spans.windows(2).all(|w| w[0].1 < w[1].0);
            let down = spans.windows(2).all(|w| w[0].0 > w[1].1);
            if !up && !down {
                return None;
            }
        }
        Some((lo, hi))
    }

    /// Number of consistent orders, saturating at `u128::MAX`.
    pub fn count_orders(&self) -> u128 {
        match self.root {
            Some(r) => self.count_from(r),
            None => 0,
        }
    }

    fn count_from(&self, x: NodeId) -> u128 {
        let n = &self.nodes[x];
        let inner = n.children.iter().fold(1u128, |acc, &c| acc.saturating_mul(self.count_from(c)));
        match n.kind {
            Kind::Leaf(_) => 1,
            Kind::Q => inner.saturating_mul(2),
            Kind::P => (1..=n.children.len() as u128).fold(inner, |a, f| a.saturating_mul(f)),
        }
    }

    /// All consistent orders, sorted lexicographically.
    pub fn enumerate_orders(&self, cap: usize) -> Result<Vec<Vec<usize>>, PqError> {
        let total = self.count_orders();
        if total > cap as u128 {
            return Err(PqError::CapExceeded(total, cap));
        }
        let mut out = match self.root {
            Some(r) => self.orders_from(r),
            None => Vec::new(),
        };
        out.sort();
        Ok(out)
    }

    fn orders_from(&self, x: NodeId) -> Vec<Vec<usize>> {
        let n = &self.nodes[x];
        if let Kind::Leaf(e) = n.kind {
            return vec![vec![e]];
        }
        let parts: Vec<Vec<Vec<usize>>> = n.children.iter().map(|&c| self.orders_from(c)).collect();
        let arrangements: Vec<Vec<usize>> = match n.kind {
            Kind::Q => {
                let fwd: Vec<usize> = (0..parts.len()).collect();
                let rev: Vec<usize> = fwd.iter().rev().copied().collect();
                vec![fwd, rev]
            }
            _ => permutations(parts.len()),
        };
        let mut out = Vec::new();
        for arr in arrangements {
            let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
            for &i in &arr {
                let mut next = Vec::with_capacity(acc.len() * parts[i].len());
                for prefix in &acc {
                    for suffix in &parts[i] {
                        let mut o = prefix.clone();
                        o.extend(suffix);
                        next.push(o);
                    }
                }
                acc = next;
            }
            out.extend(acc);
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

fn prune(s: Shape, keep: &std::collections::HashSet<usize>) -> Option<Shape> {
    match s {
        Shape::Leaf(e) => keep.contains(&e).then_some(Shape::Leaf(e)),
        Shape::P(cs) => rebuild(false, cs.into_iter().filter_map(|c| prune(c, keep)).collect()),
        Shape::Q(cs) => rebuild(true, cs.into_iter().filter_map(|c| prune(c, keep)).collect()),
    }
}

fn rebuild(q: bool, mut cs: Vec<Shape>) -> Option<Shape> {
    match cs.len() {
        0 => None,
        1 => cs.pop(),
        2 => Some(Shape::P(cs)),
        _ if q => Some(Shape::Q(cs)),
        _ => Some(Shape::P(cs)),
    }
}

fn normalize_shape(s: Shape) -> Shape {
    match s {
        Shape::Leaf(e) => Shape::Leaf(e),
        Shape::P(cs) => rebuild(false, cs.into_iter().map(normalize_shape).collect())
            .unwrap_or(Shape::P(Vec::new())),
        Shape::Q(cs) => rebuild(true, cs.into_iter().map(normalize_shape).collect())
            .unwrap_or(Shape::P(Vec::new())),
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, cs) = match self {
            Shape::Leaf(e) => return write!(f, "{e}"),
            Shape::P(cs) => ("P", cs),
            Shape::Q(cs) => ("Q", cs),
        };
        write!(f, "{tag}(")?;
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for PqTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_shape() {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "NULL"),
        }
    }
}

impl FromStr for PqTree {
    type Err = PqError;

    /// Parses the text form, e.g. `P(1, Q(2, 3, 4))`.
    fn from_str(s: &str) -> Result<PqTree, PqError> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut at = 0;
        let shape = parse_node(&toks, &mut at)?;
        if at != toks.len() {
            return Err(PqError::Parse(format!("trailing input at {at}")));
        }
        if shape_is_empty(&shape) {
            return Err(PqError::EmptyGround);
        }
        PqTree::from_shape(shape)
    }
}

fn shape_is_empty(s: &Shape) -> bool {
    match s {
        Shape::Leaf(_) => false,
        Shape::P(cs) | Shape::Q(cs) => cs.iter().all(shape_is_empty),
    }
}

fn parse_node(t: &[char], at: &mut usize) -> Result<Shape, PqError> {
    let err = |m: &str, at: usize| PqError::Parse(format!("{m} at {at}"));
    match t.get(*at) {
        Some(c) if c.is_ascii_digit() => {
            let start = *at;
            while t.get(*at).is_some_and(|c| c.is_ascii_digit()) {
                *at += 1;
            }
            let text: String = t[start..*at].iter().collect();
            text.parse().map(Shape::Leaf).map_err(|_| err("bad number", start))
        }
        Some(&tag @ ('P' | 'Q')) => {
            *at += 1;
            if t.get(*at) != Some(&'(') {
                return Err(err("expected '('", *at));
            }
            *at += 1;
            let mut cs = vec![parse_node(t, at)?];
            loop {
                match t.get(*at) {
                    Some(',') => {
                        *at += 1;
                        cs.push(parse_node(t, at)?);
                    }
                    Some(')') => {
                        *at += 1;
                        break;
                    }
                    _ => return Err(err("expected ',' or ')'", *at)),
                }
            }
            Ok(if tag == 'P' { Shape::P(cs) } else { Shape::Q(cs) })
        }
        _ => Err(err("expected a node", *at)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> PqTree {
        s.parse().unwrap()
    }

    fn orders(t: &PqTree) -> Vec<Vec<usize>> {
        t.enumerate_orders(100_000).unwrap()
    }

    #[test]
    fn universal_trees() {
        assert_eq!(PqTree::universal(&[1]).unwrap().to_string(), "1");
        assert_eq!(orders(&PqTree::universal(&[1, 2]).unwrap()).len(), 2);
        assert_eq!(orders(&PqTree::universal(&[1, 2, 3]).unwrap()).len(), 6);
        assert_eq!(PqTree::universal(&[]).unwrap_err(), PqError::EmptyGround);
    }

    #[test]
    fn reduce_examples() {
        let u = PqTree::universal(&[1, 2, 3]).unwrap();
        let r = u.reduce(&[1, 2]).unwrap();
        assert_eq!(
            orders(&r),
            vec![vec![1, 2, 3], vec![2, 1, 3], vec![3, 1, 2], vec![3, 2, 1]]
        );
        assert_eq!(orders(&u.reduce(&[1, 2, 3]).unwrap()), orders(&u));
        let q = r.reduce(&[2, 3]).unwrap();
        assert_eq!(orders(&q), vec![vec![1, 2, 3], vec![3, 2, 1]]);
        assert!(q.reduce(&[1, 3]).unwrap().is_null());
        assert_eq!(u.reduce(&[4]).unwrap_err(), PqError::UnknownElement(4));
    }

    #[test]
    fn projection_examples() {
        let q = t("Q(1, 2, 3)");
        assert_eq!(orders(&q.projection(&[1, 3]).unwrap()), vec![vec![1, 3], vec![3, 1]]);
        let p = t("P(Q(1, 2, 3), 4)");
        let pr = p.projection(&[1, 2, 4]).unwrap();
        assert_eq!(pr.to_string(), "P(P(1, 2), 4)");
        assert_eq!(orders(&pr).len(), 4);
        assert_eq!(q.projection(&[]).unwrap_err(), PqError::EmptyGround);
    }

    #[test]
    fn intersect_examples() {
        let u = PqTree::universal(&[1, 2, 3]).unwrap();
        let a = u.reduce(&[1, 2]).unwrap();
        let b = u.reduce(&[2, 3]).unwrap();
        assert_eq!(orders(&a.intersect(&b).unwrap()), vec![vec![1, 2, 3], vec![3, 2, 1]]);
        assert_eq!(orders(&a.intersect(&u).unwrap()), orders(&a));
        assert!(t("Q(1, 2, 3)").intersect(&t("Q(2, 1, 3)")).unwrap().is_null());
        assert_eq!(
            a.intersect(&PqTree::universal(&[1, 2]).unwrap()).unwrap_err(),
            PqError::GroundMismatch
        );
    }

    #[test]
    fn pick_consistent_enumerate() {
        assert_eq!(t("Q(1, 2, 3)").pick_order().unwrap(), vec![1, 2, 3]);
        assert!(t("Q(1, 2, 3)").consistent(&[1, 2, 3]).unwrap());
        assert!(!t("Q(1, 2, 3)").consistent(&[2, 1, 3]).unwrap());
        assert_eq!(t("Q(1, 2, 3)").consistent(&[1, 2]).unwrap_err(), PqError::NotPermutation);
        assert_eq!(orders(&t("P(1, Q(2, 3, 4))")).len(), 4);
        assert!(matches!(
            PqTree::universal(&[1, 2, 3, 4]).unwrap().enumerate_orders(5),
            Err(PqError::CapExceeded(24, 5))
        ));
        assert_eq!(PqTree::null(&[1]).pick_order().unwrap_err(), PqError::NullTree);
    }

    #[test]
    fn two_child_q_becomes_p() {
        assert_eq!(t("Q(1, Q(2, 3))").to_string(), "P(1, P(2, 3))");
        assert_eq!(t("P(P(1))").to_string(), "1");
    }
}
