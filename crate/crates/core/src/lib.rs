//! Arithmetic and topology probes for semigroups of finitely supported
//! binary relations on the non-negative integers.
//!
//! A relation here acts as the identity outside a finite declared support;
//! composition, inversion, and commutation respect that convention. On top
//! of the arithmetic sit enumerable families (all relations, permutations,
//! total maps, generated closures), windowed centralizer queries with a
//! constructive double-centralizer containment audit, inequality-constraint
//! neighborhoods that pin supports from below, and windowed audits showing
//! the support-size slices are closed, relatively open at each support
//! point, and discrete at exact size.
//!
//! Everything is exact: no floats, no approximation — enumeration windows
//! are the only truncation, and every verdict names what it quantified
//! over.

pub mod audit;
pub mod centralizer;
pub mod error;
pub mod family;
pub mod point;
pub mod relation;
pub mod zariski;

pub use audit::{run_audit, AuditReport, AuditSpec, AuditSuite};
pub use centralizer::{
    centralizer_window, double_centralizer_window, fdc_audit, CentralizerQuery, FdcEntry,
    FdcReport,
};
pub use error::Error;
pub use family::{
    enumerate_filtered, enumerate_support_bounded, ffun_family, frel_family, fsym_family,
    generated_family, generated_family_with_cap, parse_family_spec, Family, SupportFilter,
    WindowedSubset, CLOSURE_CAP,
};
pub use point::{FreshPoints, Point, PointSet};
pub use relation::{
    commutes, commutes_direct, compose, compose_naive, format_relation, format_relation_human,
    parse_relation, window_relation_count, FiniteRelation,
};
pub use zariski::{
    constraint_holds, isolation_witness, neighborhood_witness, verify_isolation,
    verify_neighborhood, verify_support_topology, witness_family, Branch, IsolationReport,
    NeighborhoodReport, NeighborhoodWitness, SubBasicConstraint, TopologyItem, TopologyPart,
    TopologyReport, TraceEntry, UnitOrElem, WitnessFamily,
};

use serde::{Deserialize, Serialize};
use std::fmt;

/// Outcome of a verification: pass means zero violations were found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}
