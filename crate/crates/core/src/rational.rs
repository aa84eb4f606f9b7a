//! Exact interval endpoints.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` with `q > 0`, always with an explicit denominator.
pub fn fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_fraction(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// A closed interval `[l, r]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub l: Rational,
    pub r: Rational,
}

impl Interval {
    pub fn new(l: Rational, r: Rational) -> Interval {
        Interval { l, r }
    }

    pub fn unit(l: Rational) -> Interval {
        let r = &l + Rational::one();
        Interval { l, r }
    }

    pub fn length(&self) -> Rational {
        &self.r - &self.l
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.l <= other.r && other.l <= self.r
    }

    /// `self` contains `other` and they differ.
    pub fn properly_contains(&self, other: &Interval) -> bool {
        self.l <= other.l && other.r <= self.r && self != other
    }

    pub fn shifted(&self, by: &Rational) -> Interval {
        Interval { l: &self.l + by, r: &self.r + by }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.l, self.r)
    }
}

/// Intervals keyed by vertex name; for simultaneous representations also the
/// vertex set of each member graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Representation {
    pub intervals: BTreeMap<String, Interval>,
    pub per_graph: Option<Vec<Vec<String>>>,
}

impl Representation {
    pub fn get(&self, v: &str) -> Option<&Interval> {
        self.intervals.get(v)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn max_right(&self) -> Option<&Rational> {
        self.intervals.values().map(|i| &i.r).max()
    }

    pub fn min_left(&self) -> Option<&Rational> {
        self.intervals.values().map(|i| &i.l).min()
    }

    /// Vertex names sorted by left endpoint, ties by right endpoint then name.
    pub fn left_order(&self) -> Vec<&str> {
        let mut vs: Vec<(&String, &Interval)> = self.intervals.iter().collect();
        vs.sort_by(|a, b| (&a.1.l, &a.1.r, a.0).cmp(&(&b.1.l, &b.1.r, b.0)));
        vs.into_iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Places `pieces` left to right, each starting `gap` after the previous
    /// one ends.
    pub fn concat_right(pieces: impl IntoIterator<Item = Representation>, gap: &Rational) -> Representation {
        let mut out = Representation::default();
        let mut end: Option<Rational> = None;
        for piece in pieces {
            let (Some(l), Some(r)) = (piece.min_left(), piece.max_right()) else { continue };
            let shift = match &end {
                Some(e) => e + gap - l,
                None => Rational::zero(),
            };
            end = Some(r + &shift);
            for (n, i) in piece.intervals {
                out.intervals.insert(n, i.shifted(&shift));
            }
        }
        out
    }
}
