//! Named verification suites bundling the module-level checks into
//! reproducible, machine-readable acceptance runs.

use crate::centralizer::fdc_audit;
use crate::error::Error;
use crate::family::parse_family_spec;
use crate::point::{FreshPoints, Point, PointSet};
use crate::relation::{
    commutes_direct, compose, compose_naive, window_relation_count, FiniteRelation,
};
use crate::zariski::verify_support_topology;
use crate::Verdict;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

/// How many sampled triples the associativity check draws when the window
/// is too big to cube exhaustively.
const SAMPLED_TRIPLES: u64 = 100_000;

/// Element count up to which associativity is checked on every triple.
const EXHAUSTIVE_TRIPLE_LIMIT: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditSuite {
    /// Support subadditivity, closure under composition, disjoint-support
    /// commutation (fast path disabled), and associativity.
    Axioms,
    /// Window enumeration count against the closed form.
    Counting,
    /// Separation witnesses for every (element, avoided set) pair.
    Prop2,
    /// Double-centralizer containment certificates.
    Fdc,
    /// The three support-topology audits.
    TheoremMain,
    /// Bit-matrix composition against the naive pair-set evaluation.
    Oracle,
}

impl AuditSuite {
    pub const ALL: [AuditSuite; 6] = [
        AuditSuite::Axioms,
        AuditSuite::Counting,
        AuditSuite::Prop2,
        AuditSuite::Fdc,
        AuditSuite::TheoremMain,
        AuditSuite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AuditSuite::Axioms => "axioms",
            AuditSuite::Counting => "counting",
            AuditSuite::Prop2 => "prop2",
            AuditSuite::Fdc => "fdc",
            AuditSuite::TheoremMain => "theorem_main",
            AuditSuite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for AuditSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AuditSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        AuditSuite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidQuery(format!("unknown audit suite \"{s}\"")))
    }
}

/// What to run: suite, family spec string ("frel" | "fsym" | "ffun" |
/// "gen:<path>"), window, and the optional knobs individual suites read.
#[derive(Clone, Debug)]
pub struct AuditSpec {
    pub suite: AuditSuite,
    pub family: String,
    pub window: PointSet,
    /// Support bound for the topology suite.
    pub n: Option<usize>,
    /// Seed for sampled associativity triples; 0 when absent.
    pub seed: Option<u64>,
    /// Targets for the double-centralizer suite; defaults to the
    /// transposition of the two smallest window points.
    pub targets: Option<Vec<FiniteRelation>>,
    /// Most failure records kept in the report; counting continues past it.
    pub failure_cap: usize,
    pub cap_override: bool,
}

impl AuditSpec {
    pub fn new(suite: AuditSuite, family: impl Into<String>, window: PointSet) -> Self {
        AuditSpec {
            suite,
            family: family.into(),
            window,
            n: None,
            seed: None,
            targets: None,
            failure_cap: 32,
            cap_override: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub suite: AuditSuite,
    pub family: String,
    pub window: PointSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdict: Verdict,
    pub checked: u64,
    pub failures: Vec<serde_json::Value>,
    pub wall_time_ms: u64,
}

struct Failures {
    records: Vec<serde_json::Value>,
    total: u64,
    cap: usize,
}

impl Failures {
    fn new(cap: usize) -> Self {
        Failures { records: Vec::new(), total: 0, cap }
    }

    fn push(&mut self, record: serde_json::Value) {
        self.total += 1;
        if self.records.len() < self.cap {
            self.records.push(record);
        }
    }
}

/// Runs one suite. Reports are deterministic for a fixed (spec, seed) up to
/// `wall_time_ms`; malformed specs and window-cap violations are errors,
/// while property violations become failure records and a fail verdict.
pub fn run_audit(spec: &AuditSpec) -> Result<AuditReport, Error> {
    let start = Instant::now();
    let family = parse_family_spec(&spec.family)?.with_cap_override(spec.cap_override);
    let mut failures = Failures::new(spec.failure_cap);

    let checked = match spec.suite {
        AuditSuite::Axioms => {
            let all: Vec<FiniteRelation> = family.enumerate_window(&spec.window)?.collect();
            let mut checked = 0;
            for f in &all {
                for g in &all {
                    checked += 1;
                    let fg = compose(f, g);
                    if !fg.support().is_subset_of(&f.support().union(g.support())) {
                        failures.push(json!({
                            "kind": "subadditivity", "f": f, "g": g, "compose": fg,
                        }));
                    }
                    if !family.contains(&fg) {
                        failures.push(json!({"kind": "closure", "f": f, "g": g, "compose": fg}));
                    }
                    if f.support().is_disjoint_from(g.support()) && !commutes_direct(f, g) {
                        failures.push(json!({"kind": "disjoint_commute", "f": f, "g": g}));
                    }
                }
            }
            let mut check_triple = |f: &FiniteRelation, g: &FiniteRelation, h: &FiniteRelation| {
                if compose(&compose(f, g), h) != compose(f, &compose(g, h)) {
                    failures.push(json!({"kind": "associativity", "f": f, "g": g, "h": h}));
                }
            };
            if all.len() <= EXHAUSTIVE_TRIPLE_LIMIT {
                for f in &all {
                    for g in &all {
                        for h in &all {
                            check_triple(f, g, h);
                        }
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.unwrap_or(0));
                for _ in 0..SAMPLED_TRIPLES {
                    let f = &all[rng.gen_range(0..all.len())];
                    let g = &all[rng.gen_range(0..all.len())];
                    let h = &all[rng.gen_range(0..all.len())];
                    check_triple(f, g, h);
                }
            }
            checked
        }
        AuditSuite::Counting => {
            let k = spec.window.len();
            let expected: u128 = match family.name() {
                "frel" => window_relation_count(k),
                "fsym" => (1..=k as u128).product(),
                "ffun" => (k as u128).pow(k as u32),
                other => {
                    return Err(Error::InvalidQuery(format!(
                        "the counting suite needs a closed-form family, not \"{other}\""
                    )))
                }
            };
            let got = family.enumerate_window(&spec.window)?.count() as u128;
            if got != expected {
                failures.push(json!({
                    "kind": "count", "got": got as u64, "expected": expected as u64,
                }));
            }
            got as u64
        }
        AuditSuite::Prop2 => {
            if !family.witness_capable() {
                return Err(Error::NotWitnessCapable(family.name().into()));
            }
            let all: Vec<FiniteRelation> = family.enumerate_window(&spec.window)?.collect();
            let points: Vec<Point> = spec.window.iter().collect();
            let full: u32 = (1 << points.len()) - 1;
            let mut checked = 0;
            for f in &all {
                // Every proper subset of the window, the empty set
                // included.
                for mask in 0..full {
                    let avoid: PointSet = points
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect();
                    if f.support().is_subset_of(&avoid) {
                        continue;
                    }
                    checked += 1;
                    let x = f.support().difference(&avoid).iter().next().unwrap();
                    let shielded = avoid.union(&f.support().without_point(x));
                    let mut fresh =
                        FreshPoints::beyond(spec.window.iter().chain(shielded.iter()));
                    match family.separating_witness(x, &shielded, &mut fresh) {
                        Err(err) => failures.push(json!({
                            "kind": "construction", "f": f, "F": avoid,
                            "error": err.to_string(),
                        })),
                        Ok(g) => {
                            let image = g.apply(x);
                            let mut violations = Vec::new();
                            if !g.support().is_disjoint_from(&avoid) {
                                violations.push("support_meets_F");
                            }
                            if image.is_empty() {
                                violations.push("empty_image");
                            }
                            if image.contains(x) {
                                violations.push("fixes_x");
                            }
                            if commutes_direct(f, &g) {
                                violations.push("commutes");
                            }
                            if !family.contains(&g) {
                                violations.push("outside_family");
                            }
                            if !violations.is_empty() {
                                failures.push(json!({
                                    "kind": "witness", "f": f, "F": avoid, "g": g,
                                    "violations": violations,
                                }));
                            }
                        }
                    }
                }
            }
            checked
        }
        AuditSuite::Fdc => {
            let targets = match &spec.targets {
                Some(t) => t.clone(),
                None => {
                    let mut points = spec.window.iter();
                    let (Some(a), Some(b)) = (points.next(), points.next()) else {
                        return Err(Error::InvalidQuery(
                            "the double-centralizer suite needs two window points for its default target"
                                .into(),
                        ));
                    };
                    vec![FiniteRelation::transposition(a, b)]
                }
            };
            let report = fdc_audit(&family, &targets, &spec.window)?;
            for entry in report.entries.iter().filter(|e| e.commutes) {
                failures.push(serde_json::to_value(entry)?);
            }
            report.checked
        }
        AuditSuite::TheoremMain => {
            let Some(n) = spec.n else {
                return Err(Error::InvalidQuery(
                    "the topology suite needs a support bound n".into(),
                ));
            };
            let mut fresh = FreshPoints::beyond(spec.window.iter());
            let report = verify_support_topology(&family, n, &spec.window, &mut fresh)?;
            for item in report.items.iter().filter(|i| i.verdict == Verdict::Fail) {
                failures.push(serde_json::to_value(item)?);
            }
            report.items.len() as u64
        }
        AuditSuite::Oracle => {
            let all: Vec<FiniteRelation> = family.enumerate_window(&spec.window)?.collect();
            let mut checked = 0;
            for f in &all {
                for g in &all {
                    checked += 1;
                    let fast = compose(f, g);
                    let naive = compose_naive(f, g);
                    if fast != naive {
                        failures.push(json!({"f": f, "g": g, "fast": fast, "naive": naive}));
                    }
                }
            }
            checked
        }
    };

    Ok(AuditReport {
        suite: spec.suite,
        family: spec.family.clone(),
        window: spec.window.clone(),
        n: spec.n,
        seed: spec.seed,
        verdict: Verdict::from(failures.total == 0),
        checked,
        failures: failures.records,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(n: u32) -> PointSet {
        (0..n).collect()
    }

    fn spec(suite: AuditSuite, family: &str, k: u32) -> AuditSpec {
        AuditSpec::new(suite, family, window(k))
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in AuditSuite::ALL {
            assert_eq!(suite.name().parse::<AuditSuite>().unwrap(), suite);
        }
        assert!("bogus".parse::<AuditSuite>().is_err());
        assert_eq!(AuditSuite::TheoremMain.to_string(), "theorem_main");
    }

    #[test]
    fn counting_matches_the_closed_forms() {
        let report = run_audit(&spec(AuditSuite::Counting, "frel", 3)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.checked, 512);
        let report = run_audit(&spec(AuditSuite::Counting, "fsym", 3)).unwrap();
        assert_eq!((report.verdict, report.checked), (Verdict::Pass, 6));
        let report = run_audit(&spec(AuditSuite::Counting, "ffun", 3)).unwrap();
        assert_eq!((report.verdict, report.checked), (Verdict::Pass, 27));
    }

    #[test]
    fn axiom_checks_count_ordered_pairs() {
        let report = run_audit(&spec(AuditSuite::Axioms, "fsym", 3)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.checked, 36);
        assert!(report.failures.is_empty());
    }

    #[test]
    fn axioms_cover_the_exhaustive_associativity_branch() {
        // 16 elements ≤ the exhaustive limit, so all 4096 triples run.
        let report = run_audit(&spec(AuditSuite::Axioms, "frel", 2)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.checked, 256);
    }

    #[test]
    fn separation_witnesses_cover_every_escaping_pair() {
        let report = run_audit(&spec(AuditSuite::Prop2, "fsym", 3)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        // Three transpositions with six proper subsets each, two 3-cycles
        // with all seven; the identity never escapes.
        assert_eq!(report.checked, 3 * 6 + 2 * 7);

        let report = run_audit(&spec(AuditSuite::Prop2, "frel", 2)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn the_double_centralizer_suite_uses_the_default_target() {
        let report = run_audit(&spec(AuditSuite::Fdc, "fsym", 5)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.checked, 118);
        assert!(report.failures.is_empty());
    }

    #[test]
    fn the_topology_suite_counts_items() {
        let mut s = spec(AuditSuite::TheoremMain, "fsym", 3);
        s.n = Some(2);
        let report = run_audit(&s).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        // 2 closedness + 6 openness + 3 discreteness items.
        assert_eq!(report.checked, 11);
    }

    #[test]
    fn the_oracle_suite_compares_both_composition_routes() {
        let report = run_audit(&spec(AuditSuite::Oracle, "frel", 2)).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.checked, 256);
    }

    #[test]
    fn reports_are_deterministic_up_to_wall_time() {
        let mut s = spec(AuditSuite::Fdc, "frel", 3);
        s.seed = Some(7);
        let strip = |r: &AuditReport| {
            let mut v = serde_json::to_value(r).unwrap();
            v.as_object_mut().unwrap().remove("wall_time_ms");
            v
        };
        let a = run_audit(&s).unwrap();
        let b = run_audit(&s).unwrap();
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(a.checked, 496);
    }

    #[test]
    fn malformed_specs_are_errors_not_failures() {
        assert!(matches!(
            run_audit(&spec(AuditSuite::Counting, "gen:/nonexistent", 2)),
            Err(Error::Io(_))
        ));
        assert!(matches!(
            run_audit(&spec(AuditSuite::Counting, "nope", 2)),
            Err(Error::InvalidQuery(_))
        ));
        assert!(matches!(
            run_audit(&spec(AuditSuite::TheoremMain, "fsym", 3)),
            Err(Error::InvalidQuery(_))
        ));
        assert!(matches!(
            run_audit(&spec(AuditSuite::Fdc, "fsym", 1)),
            Err(Error::InvalidQuery(_))
        ));
        assert!(matches!(
            run_audit(&spec(AuditSuite::Axioms, "frel", 7)),
            Err(Error::WindowCap { .. })
        ));
    }

    #[test]
    fn failure_records_cap_but_counting_continues() {
        let mut f = Failures::new(3);
        for i in 0..10 {
            f.push(json!({"i": i}));
        }
        assert_eq!(f.total, 10);
        assert_eq!(f.records.len(), 3);
    }

    #[test]
    fn report_json_carries_the_suite_and_timing_fields() {
        let report = run_audit(&spec(AuditSuite::Counting, "fsym", 2)).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["suite"], "counting");
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["checked"], 2);
        assert!(v["wall_time_ms"].is_u64());
        assert!(v.get("n").is_none());
        assert!(v["failures"].as_array().unwrap().is_empty());
    }
}
