//! Points of the ground set {0, 1, 2, ...} and finite sets of them.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A point of the infinite ground set.
pub type Point = u32;

/// A finite set of points, kept sorted and deduplicated.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    elems: Vec<Point>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(p: Point) -> Self {
        PointSet { elems: vec![p] }
    }

    pub fn from_slice(points: &[Point]) -> Self {
        points.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.elems.binary_search(&p).is_ok()
    }

    /// Position of `p` in ascending order, when present.
    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.elems.binary_search(&p).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.elems.iter().copied()
    }

    pub fn as_slice(&self) -> &[Point] {
        &self.elems
    }

    pub fn max(&self) -> Option<Point> {
        self.elems.last().copied()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.iter().filter(|&p| other.contains(p)).collect()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.iter().filter(|&p| !other.contains(p)).collect()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.iter().all(|p| !other.contains(p))
    }

    pub fn with_point(&self, p: Point) -> Self {
        self.iter().chain([p]).collect()
    }

    pub fn without_point(&self, p: Point) -> Self {
        self.iter().filter(|&q| q != p).collect()
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        let mut elems: Vec<Point> = iter.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        PointSet { elems }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = Point;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Point>>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter().copied()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Vec::<Point>::deserialize(d)?.into_iter().collect())
    }
}

/// Deterministic supply of previously unmentioned points: always hands out
/// the smallest integer exceeding everything observed so far.
#[derive(Clone, Debug)]
pub struct FreshPoints {
    next: Point,
}

impl FreshPoints {
    pub fn starting_at(next: Point) -> Self {
        FreshPoints { next }
    }

    /// Starts just past the largest of `points` (at 0 when there are none).
    pub fn beyond<I: IntoIterator<Item = Point>>(points: I) -> Self {
        let next = points.into_iter().map(|p| p + 1).max().unwrap_or(0);
        FreshPoints { next }
    }

    pub fn fresh(&mut self) -> Point {
        let p = self.next;
        self.next += 1;
        p
    }

    pub fn observe(&mut self, p: Point) {
        self.next = self.next.max(p + 1);
    }

    pub fn observe_all(&mut self, ps: &PointSet) {
        if let Some(m) = ps.max() {
            self.observe(m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let a = PointSet::from_slice(&[2, 0, 2, 1]);
        let b = PointSet::from_slice(&[1, 3]);
        assert_eq!(a.as_slice(), &[0, 1, 2]);
        assert_eq!(a.union(&b).as_slice(), &[0, 1, 2, 3]);
        assert_eq!(a.intersection(&b).as_slice(), &[1]);
        assert_eq!(a.difference(&b).as_slice(), &[0, 2]);
        assert!(PointSet::new().is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
        assert!(b.without_point(1).is_disjoint_from(&a));
        assert_eq!(a.index_of(2), Some(2));
        assert_eq!(a.index_of(5), None);
    }

    #[test]
    fn fresh_points_stay_ahead() {
        let mut fresh = FreshPoints::beyond([0, 4, 2]);
        assert_eq!(fresh.fresh(), 5);
        fresh.observe(9);
        assert_eq!(fresh.fresh(), 10);
        fresh.observe(3); // already behind; no effect
        assert_eq!(fresh.fresh(), 11);
        assert_eq!(FreshPoints::beyond([]).fresh(), 0);
    }

    #[test]
    fn set_json_round_trip() {
        let a = PointSet::from_slice(&[3, 1]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, "[1,3]");
        let back: PointSet = serde_json::from_str("[3,1,1]").unwrap();
        assert_eq!(back, a);
    }
}
