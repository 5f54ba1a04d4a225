//! Families of relations closed under composition, enumerable over finite
//! windows: all relations, permutations, total maps, and user closures.

use crate::error::Error;
use crate::point::{FreshPoints, Point, PointSet};
use crate::relation::{
    self, compose, parse_relation, window_order_key, window_relation_count, FiniteRelation,
};
use itertools::Itertools;
use std::collections::BTreeSet;

// Full-window enumeration guardrails (points per window) without the
// override. The mask machinery caps every full-window enumeration at 8
// points outright.
const FREL_WINDOW_CAP: usize = 5;
const FSYM_WINDOW_CAP: usize = 8;
const FFUN_WINDOW_CAP: usize = 6;
const HARD_WINDOW_CAP: usize = 8;

/// Default element cap for generated closures.
pub const CLOSURE_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
enum FamilyKind {
    AllRelations,
    Permutations,
    TotalMaps,
    Generated { elements: BTreeSet<FiniteRelation> },
}

/// A named, composition-closed family of relations: membership test plus
/// deterministic window enumeration, and — for the built-ins — construction
/// of separating witnesses.
#[derive(Clone, Debug)]
pub struct Family {
    kind: FamilyKind,
    cap_override: bool,
}

/// Every finitely supported relation.
pub fn frel_family() -> Family {
    Family { kind: FamilyKind::AllRelations, cap_override: false }
}

/// Finitely supported permutations.
pub fn fsym_family() -> Family {
    Family { kind: FamilyKind::Permutations, cap_override: false }
}

/// Finitely supported total single-valued maps.
pub fn ffun_family() -> Family {
    Family { kind: FamilyKind::TotalMaps, cap_override: false }
}

/// Closes `generators` under composition with the default element cap.
pub fn generated_family(generators: &[FiniteRelation]) -> Result<Family, Error> {
    generated_family_with_cap(generators, CLOSURE_CAP)
}

/// Worklist closure of `generators` under composition, eagerly materialized;
/// errors once the closure would exceed `cap` elements.
pub fn generated_family_with_cap(
    generators: &[FiniteRelation],
    cap: usize,
) -> Result<Family, Error> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut elements: BTreeSet<FiniteRelation> = generators.iter().cloned().collect();
    if elements.len() > cap {
        return Err(Error::ClosureCap(cap));
    }
    let mut queue: Vec<FiniteRelation> = elements.iter().cloned().collect();
    while let Some(u) = queue.pop() {
        // Products with everything known so far, both ways around. Anything
        // added later is itself queued and will meet `u` when popped.
        let snapshot: Vec<FiniteRelation> = elements.iter().cloned().collect();
        for v in &snapshot {
            for w in [compose(&u, v), compose(v, &u)] {
                if !elements.contains(&w) {
                    elements.insert(w.clone());
                    queue.push(w);
                    if elements.len() > cap {
                        return Err(Error::ClosureCap(cap));
                    }
                }
            }
        }
    }
    Ok(Family { kind: FamilyKind::Generated { elements }, cap_override: false })
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::AllRelations => "frel",
            FamilyKind::Permutations => "fsym",
            FamilyKind::TotalMaps => "ffun",
            FamilyKind::Generated { .. } => "gen",
        }
    }

    /// Lifts the per-family window guardrail (the 8-point ceiling stays).
    pub fn with_cap_override(mut self, allow: bool) -> Self {
        self.cap_override = allow;
        self
    }

    pub fn contains(&self, f: &FiniteRelation) -> bool {
        match &self.kind {
            FamilyKind::AllRelations => true,
            FamilyKind::Permutations => f.is_permutation(),
            FamilyKind::TotalMaps => f.is_function(),
            FamilyKind::Generated { elements } => elements.contains(f),
        }
    }

    /// Whether `separating_witness` works; closures can only be searched.
    pub fn witness_capable(&self) -> bool {
        !matches!(self.kind, FamilyKind::Generated { .. })
    }

    /// Every member supported inside `window`, each exactly once, ascending
    /// in the window's mask order.
    pub fn enumerate_window(
        &self,
        window: &PointSet,
    ) -> Result<Box<dyn Iterator<Item = FiniteRelation> + '_>, Error> {
        let k = window.len();
        match &self.kind {
            FamilyKind::AllRelations => {
                self.check_cap(k, FREL_WINDOW_CAP)?;
                let w = window.clone();
                let total = window_relation_count(k);
                Ok(Box::new(
                    (0..total).map(move |m| relation::from_window_mask(&w, m as u64)),
                ))
            }
            FamilyKind::Permutations => {
                self.check_cap(k, FSYM_WINDOW_CAP)?;
                let mut v: Vec<FiniteRelation> = window
                    .iter()
                    .permutations(k)
                    .map(|image| {
                        let pairs = window.iter().zip(image);
                        FiniteRelation::canonicalize(window, pairs)
                            .expect("permutation pairs stay inside the window")
                    })
                    .collect();
                v.sort_by_cached_key(|f| window_order_key(f, window));
                Ok(Box::new(v.into_iter()))
            }
            FamilyKind::TotalMaps => {
                self.check_cap(k, FFUN_WINDOW_CAP)?;
                let w = window.as_slice();
                let total = if k == 0 { 1 } else { (k as u64).pow(k as u32) };
                let mut v = Vec::with_capacity(total as usize);
                for m in 0..total {
                    // Digits of m in base k pick each point's image; the
                    // image lands inside the window by construction, and
                    // conversely every member supported here shows up: a
                    // total single-valued map sends a support point to a
                    // support point and fixes the rest of the window.
                    let mut digits = m;
                    let pairs = (0..k).map(|i| {
                        let q = w[(digits % k as u64) as usize];
                        digits /= k as u64;
                        (w[i], q)
                    });
                    v.push(
                        FiniteRelation::canonicalize(window, pairs)
                            .expect("map pairs stay inside the window"),
                    );
                }
                v.sort_by_cached_key(|f| window_order_key(f, window));
                Ok(Box::new(v.into_iter()))
            }
            FamilyKind::Generated { elements } => {
                let mut v: Vec<FiniteRelation> = elements
                    .iter()
                    .filter(|f| f.support().is_subset_of(window))
                    .cloned()
                    .collect();
                v.sort_by_cached_key(|f| window_order_key(f, window));
                Ok(Box::new(v.into_iter()))
            }
        }
    }

    fn check_cap(&self, k: usize, cap: usize) -> Result<(), Error> {
        if k > HARD_WINDOW_CAP {
            return Err(Error::WindowTooLarge(k));
        }
        if !self.cap_override && k > cap {
            return Err(Error::WindowCap { family: self.name().into(), len: k, cap });
        }
        Ok(())
    }

    /// A member moving `x` somewhere other than itself while avoiding
    /// `avoid` entirely: the transposition of `x` with a fresh point. All
    /// built-in families contain every transposition.
    pub fn separating_witness(
        &self,
        x: Point,
        avoid: &PointSet,
        fresh: &mut FreshPoints,
    ) -> Result<FiniteRelation, Error> {
        if !self.witness_capable() {
            return Err(Error::NotWitnessCapable(self.name().into()));
        }
        loop {
            let y = fresh.fresh();
            if y != x && !avoid.contains(y) {
                return Ok(FiniteRelation::transposition(x, y));
            }
        }
    }

    /// Total count of the closure, for generated families.
    pub fn generated_len(&self) -> Option<usize> {
        match &self.kind {
            FamilyKind::Generated { elements } => Some(elements.len()),
            _ => None,
        }
    }
}

/// Support-based filters over a window enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportFilter {
    All,
    SuppLe(usize),
    SuppEq(usize),
    SuppContains(Point),
}

/// A family restricted to a window and filtered by support shape.
pub struct WindowedSubset<'a> {
    pub family: &'a Family,
    pub window: PointSet,
    pub filter: SupportFilter,
}

impl WindowedSubset<'_> {
    pub fn enumerate(&self) -> Result<Vec<FiniteRelation>, Error> {
        enumerate_filtered(self.family, &self.window, self.filter)
    }
}

/// The window enumeration filtered by the predicate, in window order.
pub fn enumerate_filtered(
    family: &Family,
    window: &PointSet,
    filter: SupportFilter,
) -> Result<Vec<FiniteRelation>, Error> {
    match filter {
        SupportFilter::All => Ok(family.enumerate_window(window)?.collect()),
        SupportFilter::SuppLe(n) => enumerate_support_bounded(family, window, n),
        SupportFilter::SuppEq(n) => Ok(enumerate_support_bounded(family, window, n)?
            .into_iter()
            .filter(|f| f.support().len() == n)
            .collect()),
        SupportFilter::SuppContains(x) => Ok(family
            .enumerate_window(window)?
            .filter(|f| f.support().contains(x))
            .collect()),
    }
}

/// Members with at most `bound` support points inside `window`, in window
/// order. Goes through the size-`bound` sub-windows, so large windows stay
/// tractable when only small supports are wanted; the result is identical
/// to filtering the full enumeration.
pub fn enumerate_support_bounded(
    family: &Family,
    window: &PointSet,
    bound: usize,
) -> Result<Vec<FiniteRelation>, Error> {
    if bound >= window.len() {
        return Ok(family.enumerate_window(window)?.collect());
    }
    let mut seen = BTreeSet::new();
    for combo in window.iter().combinations(bound) {
        let sub: PointSet = combo.into_iter().collect();
        for f in family.enumerate_window(&sub)? {
            seen.insert(f);
        }
    }
    let mut v: Vec<FiniteRelation> = seen.into_iter().collect();
    v.sort_by_cached_key(|f| window_order_key(f, window));
    Ok(v)
}

/// Parses a family spec: "frel" | "fsym" | "ffun" | "gen:<path>", the path
/// holding one generator per line (relation JSON or perm shorthand).
pub fn parse_family_spec(spec: &str) -> Result<Family, Error> {
    match spec {
        "frel" => Ok(frel_family()),
        "fsym" => Ok(fsym_family()),
        "ffun" => Ok(ffun_family()),
        other => {
            let Some(path) = other.strip_prefix("gen:") else {
                return Err(Error::InvalidQuery(format!("unknown family spec \"{other}\"")));
            };
            let text = std::fs::read_to_string(path)?;
            let generators: Vec<FiniteRelation> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(parse_relation)
                .collect::<Result<_, _>>()?;
            generated_family(&generators)
        }
    }
}
