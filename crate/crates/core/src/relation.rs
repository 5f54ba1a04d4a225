//! Canonical finitely supported relations and their arithmetic.
//!
//! A relation here acts on the whole ground set but differs from the
//! identity on only finitely many points. The stored form is support
//! minimal: `graph` holds exactly the pairs among support points, and every
//! point outside the support relates to itself alone. Two values are equal
//! as Rust values iff they are equal as relations on the ground set.

use crate::error::Error;
use crate::point::{Point, PointSet};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteRelation {
    support: PointSet,
    graph: Vec<(Point, Point)>,
}

impl FiniteRelation {
    /// Builds the support-minimal form of the relation acting as `pairs` on
    /// `declared` and as the identity elsewhere. Declared points whose only
    /// incident pair is their own loop act identically and are dropped;
    /// pairs mentioning points outside `declared` are rejected, so a
    /// declared support never has to grow.
    pub fn canonicalize<I>(declared: &PointSet, pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Point, Point)>,
    {
        let mut graph: Vec<(Point, Point)> = pairs.into_iter().collect();
        graph.sort_unstable();
        graph.dedup();
        for &(p, q) in &graph {
            if !declared.contains(p) || !declared.contains(q) {
                return Err(Error::PairOutsideSupport(p, q));
            }
        }
        let removable: PointSet = declared
            .iter()
            .filter(|&p| {
                let mut saw_loop = false;
                for &(a, b) in &graph {
                    if (a == p) != (b == p) {
                        return false; // incident pair that is not the loop
                    }
                    if a == p && b == p {
                        saw_loop = true;
                    }
                }
                saw_loop
            })
            .collect();
        let support = declared.difference(&removable);
        graph.retain(|&(a, b)| !(a == b && removable.contains(a)));
        debug_assert!(graph
            .iter()
            .all(|&(a, b)| support.contains(a) && support.contains(b)));
        Ok(FiniteRelation { support, graph })
    }

    /// The identity relation: empty support, empty graph.
    pub fn identity() -> Self {
        FiniteRelation {
            support: PointSet::new(),
            graph: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    /// The permutation swapping two distinct points.
    pub fn transposition(a: Point, b: Point) -> Self {
        assert_ne!(a, b, "a transposition swaps two distinct points");
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        FiniteRelation {
            support: PointSet::from_slice(&[a, b]),
            graph: vec![(a, b), (b, a)],
        }
    }

    /// The relation sending `x` to the empty set and fixing everything else.
    pub fn empty_at(x: Point) -> Self {
        FiniteRelation {
            support: PointSet::singleton(x),
            graph: Vec::new(),
        }
    }

    /// A permutation from its cycles. Singleton cycles canonicalize away;
    /// a point appearing twice anywhere is an error.
    pub fn from_cycles(cycles: &[Vec<Point>]) -> Result<Self, Error> {
        let mut pairs = Vec::new();
        let mut mentioned: Vec<Point> = Vec::new();
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if mentioned.contains(&p) {
                    return Err(Error::Parse(format!("point {p} repeats in the cycles")));
                }
                mentioned.push(p);
                pairs.push((p, cycle[(i + 1) % cycle.len()]));
            }
        }
        let declared: PointSet = mentioned.into_iter().collect();
        Self::canonicalize(&declared, pairs)
    }

    pub fn support(&self) -> &PointSet {
        &self.support
    }

    /// The stored pairs, sorted lexicographically. Only support points occur.
    pub fn graph(&self) -> &[(Point, Point)] {
        &self.graph
    }

    /// Image of one point.
    pub fn apply(&self, x: Point) -> PointSet {
        if !self.support.contains(x) {
            return PointSet::singleton(x);
        }
        self.row(x)
    }

    /// Union of the images of a set of points.
    pub fn apply_set(&self, xs: &PointSet) -> PointSet {
        xs.iter().flat_map(|x| self.apply(x).iter().collect::<Vec<_>>()).collect()
    }

    fn row(&self, x: Point) -> PointSet {
        let lo = self.graph.partition_point(|&(a, _)| a < x);
        let hi = self.graph.partition_point(|&(a, _)| a <= x);
        self.graph[lo..hi].iter().map(|&(_, b)| b).collect()
    }

    /// The converse relation; keeps this relation's support.
    pub fn inverse(&self) -> Self {
        let flipped: Vec<(Point, Point)> = self.graph.iter().map(|&(a, b)| (b, a)).collect();
        Self::canonicalize(&self.support, flipped).expect("flipped pairs stay inside the support")
    }

    /// True when the relation acts as a bijection: exactly one image and one
    /// preimage per support point.
    pub fn is_permutation(&self) -> bool {
        if self.graph.len() != self.support.len() {
            return false;
        }
        self.support.iter().all(|p| {
            self.graph.iter().filter(|&&(a, _)| a == p).count() == 1
                && self.graph.iter().filter(|&&(_, b)| b == p).count() == 1
        })
    }

    /// True when the relation acts as a total single-valued map: exactly one
    /// image per support point.
    pub fn is_function(&self) -> bool {
        self.support
            .iter()
            .all(|p| self.graph.iter().filter(|&&(a, _)| a == p).count() == 1)
    }

    /// Cycle decomposition when the relation is a permutation. Each cycle
    /// starts at its smallest point; cycles are listed by that point
    /// ascending. The identity yields no cycles.
    pub fn to_cycles(&self) -> Option<Vec<Vec<Point>>> {
        if !self.is_permutation() {
            return None;
        }
        let mut visited = PointSet::new();
        let mut cycles = Vec::new();
        for start in self.support.iter() {
            if visited.contains(start) {
                continue;
            }
            let mut cycle = vec![start];
            visited = visited.with_point(start);
            let mut cur = self.row(start).iter().next().expect("permutation rows are nonempty");
            while cur != start {
                cycle.push(cur);
                visited = visited.with_point(cur);
                cur = self.row(cur).iter().next().expect("permutation rows are nonempty");
            }
            cycles.push(cycle);
        }
        Some(cycles)
    }
}

/// Relational composition: step through `f`, then through `g`.
///
/// Computed over the union of the two supports as a boolean matrix product,
/// with an identity row wherever a relation does not support a window point.
/// Points outside the window relate only to themselves on both sides, so the
/// window loses nothing.
pub fn compose(f: &FiniteRelation, g: &FiniteRelation) -> FiniteRelation {
    let window = f.support().union(g.support());
    let k = window.len();
    let words = k.div_ceil(64);
    let fill_row = |rel: &FiniteRelation, i: usize, p: Point, out: &mut [u64]| {
        if rel.support().contains(p) {
            for q in rel.row(p).iter() {
                let j = window.index_of(q).expect("graphs stay inside the window");
                out[j / 64] |= 1 << (j % 64);
            }
        } else {
            out[i / 64] |= 1 << (i % 64);
        }
    };
    let mut rows_f = vec![0u64; k * words];
    let mut rows_g = vec![0u64; k * words];
    for (i, p) in window.iter().enumerate() {
        fill_row(f, i, p, &mut rows_f[i * words..(i + 1) * words]);
        fill_row(g, i, p, &mut rows_g[i * words..(i + 1) * words]);
    }
    let w = window.as_slice();
    let mut pairs = Vec::new();
    let mut acc = vec![0u64; words];
    for i in 0..k {
        acc.iter_mut().for_each(|a| *a = 0);
        for j in 0..k {
            if rows_f[i * words + j / 64] >> (j % 64) & 1 == 1 {
                for t in 0..words {
                    acc[t] |= rows_g[j * words + t];
                }
            }
        }
        for j in 0..k {
            if acc[j / 64] >> (j % 64) & 1 == 1 {
                pairs.push((w[i], w[j]));
            }
        }
    }
    FiniteRelation::canonicalize(&window, pairs).expect("product pairs stay inside the window")
}

/// Reference composition straight from the set formula, for cross-checking
/// `compose`: both semantic extensions are materialized over the support
/// union as plain pair sets and joined pointwise. No bit-matrix machinery.
pub fn compose_naive(f: &FiniteRelation, g: &FiniteRelation) -> FiniteRelation {
    let window = f.support().union(g.support());
    let extend = |rel: &FiniteRelation| -> Vec<(Point, Point)> {
        let mut v = rel.graph().to_vec();
        for p in window.iter() {
            if !rel.support().contains(p) {
                v.push((p, p));
            }
        }
        v
    };
    let fhat = extend(f);
    let ghat = extend(g);
    let mut pairs = BTreeSet::new();
    for &(x, y) in &fhat {
        for &(y2, z) in &ghat {
            if y == y2 {
                pairs.insert((x, z));
            }
        }
    }
    FiniteRelation::canonicalize(&window, pairs).expect("joined pairs stay inside the window")
}

/// Whether two relations commute. Disjoint supports commute outright; the
/// general case compares the two composition orders.
pub fn commutes(f: &FiniteRelation, g: &FiniteRelation) -> bool {
    if f.support().is_disjoint_from(g.support()) {
        return true;
    }
    commutes_direct(f, g)
}

/// `commutes` without the disjoint-support shortcut, so audits can re-verify
/// the shortcut's claim by actual composition.
pub fn commutes_direct(f: &FiniteRelation, g: &FiniteRelation) -> bool {
    compose(f, g) == compose(g, f)
}

/// How many relations are supported inside a window of `k` points.
pub fn window_relation_count(k: usize) -> u128 {
    assert!(k <= 11, "count overflows past 11 points");
    1u128 << (k * k)
}

/// The relation whose graph inside `window` is the subset of window pairs
/// selected by `mask`: bit `i*k + j` stands for (window[i], window[j]), so
/// pairs are indexed in lexicographic order and masks ascend with the usual
/// integer order. Works for windows of up to 8 points.
pub fn from_window_mask(window: &PointSet, mask: u64) -> FiniteRelation {
    let k = window.len();
    assert!(k <= 8, "masks index at most 8x8 windows");
    let w = window.as_slice();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if mask >> (i * k + j) & 1 == 1 {
                pairs.push((w[i], w[j]));
            }
        }
    }
    FiniteRelation::canonicalize(window, pairs).expect("mask pairs lie inside the window")
}

/// Inverse of `from_window_mask`: the mask of the relation's action inside
/// `window`, identity loops included for window points off the support.
/// None when the support leaks outside the window.
pub fn window_mask(f: &FiniteRelation, window: &PointSet) -> Option<u64> {
    if !f.support().is_subset_of(window) {
        return None;
    }
    let k = window.len();
    assert!(k <= 8, "masks index at most 8x8 windows");
    let mut mask = 0u64;
    for &(a, b) in f.graph() {
        let i = window.index_of(a)?;
        let j = window.index_of(b)?;
        mask |= 1 << (i * k + j);
    }
    for (i, p) in window.iter().enumerate() {
        if !f.support().contains(p) {
            mask |= 1 << (i * k + i);
        }
    }
    Some(mask)
}

/// Sort key realizing ascending-mask order inside `window` without the
/// 8-point representability limit: the set bit positions, highest first,
/// compared lexicographically — exactly the numeric order of the masks.
pub fn window_order_key(f: &FiniteRelation, window: &PointSet) -> Vec<u32> {
    assert!(
        f.support().is_subset_of(window),
        "ordering needs the support inside the window"
    );
    let k = window.len() as u32;
    let mut idx: Vec<u32> = f
        .graph()
        .iter()
        .map(|&(a, b)| {
            let i = window.index_of(a).unwrap() as u32;
            let j = window.index_of(b).unwrap() as u32;
            i * k + j
        })
        .collect();
    for (i, p) in window.iter().enumerate() {
        if !f.support().contains(p) {
            idx.push(i as u32 * k + i as u32);
        }
    }
    idx.sort_unstable_by(|a, b| b.cmp(a));
    idx
}

/// Parses relation JSON ({"support":[...],"pairs":[[a,b],...]}) or the
/// permutation shorthand "perm:(0 1)(2 3)".
pub fn parse_relation(text: &str) -> Result<FiniteRelation, Error> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("perm:") {
        return parse_cycles(rest);
    }
    Ok(serde_json::from_str(t)?)
}

fn parse_cycles(text: &str) -> Result<FiniteRelation, Error> {
    let mut cycles: Vec<Vec<Point>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(after_open) = rest.strip_prefix('(') else {
            return Err(Error::Parse(format!("expected '(' at \"{rest}\"")));
        };
        let Some(close) = after_open.find(')') else {
            return Err(Error::Parse("unclosed cycle".into()));
        };
        let mut cycle = Vec::new();
        for tok in after_open[..close].split_whitespace() {
            let p: Point = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point \"{tok}\"")))?;
            cycle.push(p);
        }
        cycles.push(cycle);
        rest = after_open[close + 1..].trim_start();
    }
    FiniteRelation::from_cycles(&cycles)
}

/// Canonical single-line JSON: support and pairs ascending.
pub fn format_relation(f: &FiniteRelation) -> String {
    serde_json::to_string(f).expect("relation serialization cannot fail")
}

/// Cycle shorthand for permutations, canonical JSON otherwise.
pub fn format_relation_human(f: &FiniteRelation) -> String {
    match f.to_cycles() {
        Some(cycles) if cycles.is_empty() => "perm:()".to_string(),
        Some(cycles) => {
            let mut out = String::from("perm:");
            for cycle in cycles {
                out.push('(');
                for (i, p) in cycle.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    out.push_str(&p.to_string());
                }
                out.push(')');
            }
            out
        }
        None => format_relation(f),
    }
}

impl fmt::Display for FiniteRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_relation_human(self))
    }
}

impl fmt::Debug for FiniteRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FiniteRelation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FiniteRelation", 2)?;
        st.serialize_field("support", self.support.as_slice())?;
        st.serialize_field("pairs", &self.graph)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct RawRelation {
    support: Vec<Point>,
    pairs: Vec<(Point, Point)>,
}

impl<'de> Deserialize<'de> for FiniteRelation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawRelation::deserialize(d)?;
        let declared: PointSet = raw.support.into_iter().collect();
        FiniteRelation::canonicalize(&declared, raw.pairs).map_err(D::Error::custom)
    }
}
