//! Inequality constraints over the semigroup with an adjoined unit, the
//! witness-family and neighborhood constructions built from them, and the
//! windowed verification of the support topology they induce: small-support
//! slices are closed, support membership is relatively open, and
//! equal-support slices are discrete.

use crate::error::Error;
use crate::family::{enumerate_filtered, enumerate_support_bounded, Family, SupportFilter};
use crate::point::{FreshPoints, Point, PointSet};
use crate::relation::{commutes_direct, compose, FiniteRelation};
use crate::Verdict;
use serde::{Deserialize, Serialize};

/// An element of the semigroup with a formal two-sided unit adjoined; the
/// unit is elided during composition rather than represented as a relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitOrElem {
    Unit,
    Elem(FiniteRelation),
}

impl UnitOrElem {
    pub fn elem(f: FiniteRelation) -> Self {
        UnitOrElem::Elem(f)
    }
}

/// One sub-basic open constraint: the solution sets {x : axb ≠ c} and
/// {x : axb ≠ cxd}. Every neighborhood constructed here is a finite
/// intersection of these two shapes and nothing else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubBasicConstraint {
    NeConst {
        a: UnitOrElem,
        b: UnitOrElem,
        c: FiniteRelation,
    },
    NePair {
        a: UnitOrElem,
        b: UnitOrElem,
        c: UnitOrElem,
        d: UnitOrElem,
    },
}

fn sandwich(a: &UnitOrElem, x: &FiniteRelation, b: &UnitOrElem) -> FiniteRelation {
    let left = match a {
        UnitOrElem::Unit => x.clone(),
        UnitOrElem::Elem(a) => compose(a, x),
    };
    match b {
        UnitOrElem::Unit => left,
        UnitOrElem::Elem(b) => compose(&left, b),
    }
}

/// Whether `x` lies in the constraint's solution set.
pub fn constraint_holds(c: &SubBasicConstraint, x: &FiniteRelation) -> bool {
    match c {
        SubBasicConstraint::NeConst { a, b, c } => sandwich(a, x, b) != *c,
        SubBasicConstraint::NePair { a, b, c, d } => sandwich(a, x, b) != sandwich(c, x, d),
    }
}

/// Which arm of the witness-family dichotomy produced a family: a single
/// non-commuting element supported at the point alone (A), or the inductive
/// fresh-support construction (B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    A,
    B,
}

#[derive(Clone, Debug)]
pub struct WitnessFamily {
    pub branch: Branch,
    pub elements: Vec<FiniteRelation>,
}

/// A family of elements of the given family all failing to commute with
/// `f`, anchored at the support point `x` and avoiding `avoid`.
///
/// Branch A: if something supported inside {x} already fails to commute
/// with `f`, that single element is the family. Branch B: otherwise builds
/// n+1 elements, each avoiding everything the previous ones touched (except
/// x itself), so that the supports pairwise meet in at most {x}.
///
/// Witness-capable families construct each element directly; otherwise
/// `search` must supply a window to scan, and exhaustion is an error.
pub fn witness_family(
    family: &Family,
    f: &FiniteRelation,
    x: Point,
    avoid: &PointSet,
    n: usize,
    fresh: &mut FreshPoints,
    search: Option<&PointSet>,
) -> Result<WitnessFamily, Error> {
    if !family.contains(f) {
        return Err(Error::NotInFamily(f.to_string(), family.name().into()));
    }
    if !f.support().contains(x) {
        return Err(Error::InvalidQuery(format!(
            "anchor point {x} is outside the support {}",
            f.support()
        )));
    }
    if avoid.contains(x) {
        return Err(Error::InvalidQuery(format!(
            "anchor point {x} must not be in the avoid set {avoid}"
        )));
    }
    if !family.witness_capable() && search.is_none() {
        return Err(Error::NotWitnessCapable(family.name().into()));
    }

    let anchor = PointSet::singleton(x);
    for s in family.enumerate_window(&anchor)? {
        if !commutes_direct(f, &s) {
            return Ok(WitnessFamily { branch: Branch::A, elements: vec![s] });
        }
    }

    let mut cur = avoid.clone();
    let mut elements: Vec<FiniteRelation> = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let g = if family.witness_capable() {
            let g = family.separating_witness(x, &cur, fresh)?;
            if commutes_direct(f, &g) {
                return Err(Error::WitnessVerification {
                    witness: g.to_string(),
                    against: f.to_string(),
                });
            }
            g
        } else {
            let pool = search.unwrap().difference(&cur);
            family
                .enumerate_window(&pool)?
                .find(|g| !g.support().is_subset_of(&anchor) && !commutes_direct(f, g))
                .ok_or(Error::SearchExhausted)?
        };
        cur = cur.union(&g.support().without_point(x));
        elements.push(g);
    }
    for (i, gi) in elements.iter().enumerate() {
        for gj in &elements[i + 1..] {
            debug_assert!(gi
                .support()
                .intersection(gj.support())
                .is_subset_of(&anchor));
            debug_assert!(!gj.support().is_subset_of(&anchor));
        }
    }
    Ok(WitnessFamily { branch: Branch::B, elements })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub x: Point,
    pub branch: Branch,
    #[serde(rename = "F_before")]
    pub f_before: PointSet,
    #[serde(rename = "F_after")]
    pub f_after: PointSet,
}

/// An open neighborhood of `center`, encoded as commutation failures plus
/// point exclusions. The denoted set is
/// O = {h : ∀g ∈ commute_constraints, hg ≠ gh} ∩ {h : h ∉ exclusions},
/// a finite intersection of sub-basic constraints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodWitness {
    pub center: FiniteRelation,
    pub n: usize,
    pub commute_constraints: Vec<FiniteRelation>,
    pub exclusions: Vec<FiniteRelation>,
    pub trace: Vec<TraceEntry>,
}

impl NeighborhoodWitness {
    /// The witness as explicit sub-basic constraints: xg ≠ gx per commute
    /// constraint g, and x ≠ e per exclusion e.
    pub fn constraints(&self) -> Vec<SubBasicConstraint> {
        let mut v = Vec::with_capacity(self.commute_constraints.len() + self.exclusions.len());
        for g in &self.commute_constraints {
            v.push(SubBasicConstraint::NePair {
                a: UnitOrElem::Unit,
                b: UnitOrElem::Elem(g.clone()),
                c: UnitOrElem::Elem(g.clone()),
                d: UnitOrElem::Unit,
            });
        }
        for e in &self.exclusions {
            v.push(SubBasicConstraint::NeConst {
                a: UnitOrElem::Unit,
                b: UnitOrElem::Unit,
                c: e.clone(),
            });
        }
        v
    }

    /// Whether `h` lies in the denoted neighborhood.
    pub fn admits(&self, h: &FiniteRelation) -> bool {
        self.constraints().iter().all(|c| constraint_holds(c, h))
    }

    /// Every point any part of the witness touches; verification windows
    /// are extended by these so the constraints cannot be satisfied
    /// vacuously.
    pub fn mentioned_points(&self) -> PointSet {
        let mut m = self.center.support().clone();
        for g in &self.commute_constraints {
            m = m.union(g.support());
        }
        for e in &self.exclusions {
            m = m.union(e.support());
        }
        m
    }
}

/// Builds the neighborhood whose small-support members must envelop the
/// center's support: walk the support points in ascending order, anchor a
/// witness family at each, and accumulate the touched points so later
/// families avoid earlier ones.
pub fn neighborhood_witness(
    family: &Family,
    f: &FiniteRelation,
    n: usize,
    fresh: &mut FreshPoints,
    search: Option<&PointSet>,
) -> Result<NeighborhoodWitness, Error> {
    if !family.contains(f) {
        return Err(Error::NotInFamily(f.to_string(), family.name().into()));
    }
    let mut cur = f.support().clone();
    let mut commute_constraints = Vec::new();
    let mut trace = Vec::new();
    for x in f.support().iter() {
        let avoid = cur.without_point(x);
        let fam = witness_family(family, f, x, &avoid, n, fresh, search)?;
        let before = cur.clone();
        for g in &fam.elements {
            cur = cur.union(g.support());
        }
        trace.push(TraceEntry { x, branch: fam.branch, f_before: before, f_after: cur.clone() });
        commute_constraints.extend(fam.elements);
    }
    let w = NeighborhoodWitness {
        center: f.clone(),
        n,
        commute_constraints,
        exclusions: Vec::new(),
        trace,
    };
    debug_assert!(w.admits(&w.center));
    Ok(w)
}

/// The neighborhood witness at n = |supp(f)|, sharpened with exclusions so
/// that the denoted set meets the equal-support slice in `f` alone: every
/// same-support family member other than `f` is excluded pointwise.
pub fn isolation_witness(
    family: &Family,
    f: &FiniteRelation,
    fresh: &mut FreshPoints,
    search: Option<&PointSet>,
) -> Result<NeighborhoodWitness, Error> {
    let n = f.support().len();
    let mut w = neighborhood_witness(family, f, n, fresh, search)?;
    w.exclusions = family
        .enumerate_window(f.support())?
        .filter(|e| e.support().len() == n && e != f)
        .collect();
    debug_assert!(w.admits(&w.center));
    Ok(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct NeighborhoodReport {
    pub verdict: Verdict,
    /// Members of the support-bounded slice over the extended window.
    pub enumerated: u64,
    /// How many of those the witness admits.
    pub admitted: u64,
    pub center_admitted: bool,
    /// An admitted element whose support fails to envelop the center's.
    pub counterexample: Option<FiniteRelation>,
}

/// Checks the enveloping property on a window: every admitted member of the
/// ≤ n support slice must have support containing the center's. The window
/// is extended by the witness's own points first, since the constraints
/// mention fresh points outside it.
pub fn verify_neighborhood(
    family: &Family,
    w: &NeighborhoodWitness,
    window: &PointSet,
) -> Result<NeighborhoodReport, Error> {
    if !w.center.support().is_subset_of(window) {
        return Err(Error::InvalidQuery(format!(
            "center support {} escapes the window {window}",
            w.center.support()
        )));
    }
    let ext = window.union(&w.mentioned_points());
    let mut enumerated = 0;
    let mut admitted = 0;
    let mut counterexample = None;
    for h in enumerate_support_bounded(family, &ext, w.n)? {
        enumerated += 1;
        if !w.admits(&h) {
            continue;
        }
        admitted += 1;
        if counterexample.is_none() && !w.center.support().is_subset_of(h.support()) {
            counterexample = Some(h);
        }
    }
    let center_admitted = w.admits(&w.center);
    let verdict = Verdict::from(counterexample.is_none() && center_admitted);
    Ok(NeighborhoodReport { verdict, enumerated, admitted, center_admitted, counterexample })
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolationReport {
    pub verdict: Verdict,
    /// Members of the equal-support slice over the extended window.
    pub enumerated: u64,
    pub admitted: u64,
    pub center_admitted: bool,
    /// An admitted slice member other than the center.
    pub stray: Option<FiniteRelation>,
}

/// Checks that the witness meets the |supp| = n slice in its center alone.
pub fn verify_isolation(
    family: &Family,
    w: &NeighborhoodWitness,
    window: &PointSet,
) -> Result<IsolationReport, Error> {
    if !w.center.support().is_subset_of(window) {
        return Err(Error::InvalidQuery(format!(
            "center support {} escapes the window {window}",
            w.center.support()
        )));
    }
    let ext = window.union(&w.mentioned_points());
    let slice = enumerate_filtered(family, &ext, SupportFilter::SuppEq(w.n))?;
    let enumerated = slice.len() as u64;
    let mut admitted = 0;
    let mut stray = None;
    for h in slice {
        if !w.admits(&h) {
            continue;
        }
        admitted += 1;
        if h != w.center && stray.is_none() {
            stray = Some(h);
        }
    }
    let center_admitted = w.admits(&w.center);
    let verdict = Verdict::from(stray.is_none() && center_admitted);
    Ok(IsolationReport { verdict, enumerated, admitted, center_admitted, stray })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyPart {
    Closed,
    Open,
    Discrete,
}

#[derive(Clone, Debug, Serialize)]
pub struct TopologyItem {
    pub part: TopologyPart,
    pub center: FiniteRelation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Point>,
    pub checked: u64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct TopologyReport {
    pub n: usize,
    pub verdict: Verdict,
    pub items: Vec<TopologyItem>,
}

/// The three windowed topology audits for the support-size slices:
///
/// 1. closedness — every window member with more than n support points gets
///    a neighborhood admitting nothing from the ≤ n slice;
/// 2. relative openness — for every ≤ n member f and each x ∈ supp(f), f's
///    neighborhood meets the ≤ n slice only in elements supported at x;
/// 3. discreteness — every = n member is isolated in the = n slice by its
///    isolation witness.
///
/// Slices are taken over per-witness extended windows.
pub fn verify_support_topology(
    family: &Family,
    n: usize,
    window: &PointSet,
    fresh: &mut FreshPoints,
) -> Result<TopologyReport, Error> {
    if !family.witness_capable() {
        return Err(Error::NotWitnessCapable(family.name().into()));
    }
    let mut items = Vec::new();

    for f in family.enumerate_window(window)? {
        if f.support().len() <= n {
            continue;
        }
        let w = neighborhood_witness(family, &f, n, fresh, None)?;
        let ext = window.union(&w.mentioned_points());
        let mut checked = 0;
        let mut ok = true;
        for h in enumerate_support_bounded(family, &ext, n)? {
            checked += 1;
            if w.admits(&h) {
                ok = false;
            }
        }
        items.push(TopologyItem {
            part: TopologyPart::Closed,
            center: f,
            x: None,
            checked,
            verdict: Verdict::from(ok),
        });
    }

    for f in enumerate_support_bounded(family, window, n)? {
        if f.support().is_empty() {
            continue;
        }
        let w = neighborhood_witness(family, &f, n, fresh, None)?;
        let ext = window.union(&w.mentioned_points());
        let admitted: Vec<FiniteRelation> = enumerate_support_bounded(family, &ext, n)?
            .into_iter()
            .filter(|h| w.admits(h))
            .collect();
        for x in f.support().iter() {
            let ok = admitted.iter().all(|h| h.support().contains(x));
            items.push(TopologyItem {
                part: TopologyPart::Open,
                center: f.clone(),
                x: Some(x),
                checked: admitted.len() as u64,
                verdict: Verdict::from(ok),
            });
        }
    }

    for f in enumerate_filtered(family, window, SupportFilter::SuppEq(n))? {
        let w = isolation_witness(family, &f, fresh, None)?;
        let report = verify_isolation(family, &w, window)?;
        items.push(TopologyItem {
            part: TopologyPart::Discrete,
            center: f,
            x: None,
            checked: report.enumerated,
            verdict: report.verdict,
        });
    }

    let verdict = Verdict::from(items.iter().all(|i| i.verdict == Verdict::Pass));
    Ok(TopologyReport { n, verdict, items })
}
