//! Exhaustive checks of the class implications and minimizer theorems over
//! every weak order (or every linear order) on a ground set of `n <= 3`
//! elements.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::class::{check_condition, pairwise_q3_equivalence, ConditionId};
use crate::error::{Error, Result};
use crate::gen::{check_cap, LinearOrderCodes, WeakOrderCodes};
use crate::hierarchy::check_qh;
use crate::minimize::{argmin, argmin_lattice_closure, is_interval_local_min, is_lower_interval_min};
use crate::par;
use crate::setfn::SetFunction;
use crate::subset::{GroundSet, Interval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Q3 implies Q4.
    Lemma1,
    /// Interval-local minima of Q1 (and, dually, Q2) functions are global.
    Theorem1,
    /// Interval-local minima of injective Q4 functions are the global minimizer.
    Theorem2,
    /// A lower-interval minimizer of a Q1 function lifts to a global one above it.
    Lemma1a,
    /// Complement duality swaps Q1/Q2, fixes Q3/Q4, and both duals are involutions.
    Duality,
    /// Pointwise Q1-or-Q2 is the same predicate as Q3.
    Remark2,
    /// Minimizers of a quasisubmodular function form a lattice.
    Remark5,
    /// Quasisubmodular implies Qh, and both Qh checkers agree.
    Qh,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma1,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Lemma1a,
        Suite::Duality,
        Suite::Remark2,
        Suite::Remark5,
        Suite::Qh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Lemma1a => "lemma1a",
            Suite::Duality => "duality",
            Suite::Remark2 => "remark2",
            Suite::Remark5 => "remark5",
            Suite::Qh => "qh",
        }
    }

    /// Whether the suite runs over linear orders instead of weak orders.
    pub fn uses_linear_orders(self) -> bool {
        self == Suite::Theorem2
    }

    /// `None` when the hypothesis does not apply, else the failure
    /// description if the claim is violated.
    fn check(self, f: &SetFunction) -> Option<Option<String>> {
        let holds = |c| check_condition(f, c).holds();
        match self {
            Suite::Lemma1 => holds(ConditionId::Q3).then(|| (!holds(ConditionId::Q4)).then(|| "Q3 but not Q4".into())),
            Suite::Theorem1 => {
                let (q1, q2) = (holds(ConditionId::Q1), holds(ConditionId::Q2));
                if !(q1 || q2) {
                    return None;
                }
                if q2 && !check_condition(&f.complement_dual(), ConditionId::Q1).holds() {
                    return Some(Some("Q2 but the complement dual is not Q1".into()));
                }
                let min = argmin(f).min_value;
                Some(
                    f.ground()
                        .subsets()
                        .find(|&x| is_interval_local_min(f, x).unwrap() && *f.at(x) != min)
                        .map(|x| format!("interval-local {} is not global", f.ground().format_subset(x))),
                )
            }
            Suite::Theorem2 => {
                if !holds(ConditionId::Q4) {
                    return None;
                }
                let d = argmin(f);
                Some(
                    f.ground()
                        .subsets()
                        .find(|&x| is_interval_local_min(f, x).unwrap() && d.minimizers != [x])
                        .map(|x| format!("interval-local {} is not the unique minimizer", f.ground().format_subset(x))),
                )
            }
            Suite::Lemma1a => {
                if !holds(ConditionId::Q1) {
                    return None;
                }
                let min = argmin(f).min_value;
                Some(
                    f.ground()
                        .subsets()
                        .filter(|&x| is_lower_interval_min(f, x).unwrap())
                        .find(|&x| {
                            let best = Interval::above(x, f.n()).iter().map(|z| f.rank(z)).min().unwrap();
                            f.levels()[best as usize] != min
                        })
                        .map(|x| format!("no global minimizer above {}", f.ground().format_subset(x))),
                )
            }
            Suite::Duality => {
                let g = f.complement_dual();
                let same = |a: ConditionId, b: ConditionId| holds(a) == check_condition(&g, b).holds();
                let failure = if !same(ConditionId::Q1, ConditionId::Q2) || !same(ConditionId::Q2, ConditionId::Q1) {
                    Some("complement dual does not swap Q1 and Q2")
                } else if !same(ConditionId::Q3, ConditionId::Q3) {
                    Some("Q3 is not complement self-dual")
                } else if !same(ConditionId::Q4, ConditionId::Q4) {
                    Some("Q4 is not complement self-dual")
                } else if g.complement_dual() != *f {
                    Some("complement dual is not an involution")
                } else if f.order_dual().and_then(|d| d.order_dual()).ok().as_ref() != Some(f) {
                    Some("order dual is not an involution")
                } else {
                    None
                };
                Some(failure.map(Into::into))
            }
            Suite::Remark2 => Some((!pairwise_q3_equivalence(f)).then(|| "pointwise Q1|Q2 differs from Q3".into())),
            Suite::Remark5 => holds(ConditionId::QuasiSubmodular)
                .then(|| (!argmin_lattice_closure(f)).then(|| "minimizers not closed under union/intersection".into())),
            Suite::Qh => {
                let qh = check_condition(f, ConditionId::Qh);
                if qh != check_qh(f) {
                    return Some(Some("pair-scan and value-class Qh checks disagree".into()));
                }
                holds(ConditionId::QuasiSubmodular).then(|| (!qh.holds()).then(|| "quasisubmodular but not Qh".into()))
            }
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown suite `{s}`")))
    }
}

/// The first counterexample found by a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteViolation {
    /// Position in the enumeration stream.
    pub index: usize,
    pub ranks: Vec<u32>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub scanned: usize,
    /// Functions satisfying the suite's hypothesis.
    pub hypothesis: usize,
    pub violations: usize,
    pub first_violation: Option<SuiteViolation>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "n": self.n,
            "scanned": self.scanned,
            "hypothesis_satisfied": self.hypothesis,
            "violations": self.violations,
            "first_violation": self.first_violation.as_ref().map(|v| json!({
                "index": v.index,
                "ranks": v.ranks,
                "detail": v.detail,
            })),
        })
    }
}

#[derive(Default)]
struct Tally {
    scanned: usize,
    hypothesis: usize,
    violations: usize,
    first: Option<SuiteViolation>,
}

/// Runs `suite` over the full enumeration for `n`, split across `threads`.
/// Counts and the first violation do not depend on the thread count.
pub fn run_suite(suite: Suite, n: usize, threads: usize) -> Result<SuiteReport> {
    check_cap(n)?;
    let ground = GroundSet::letters(n)?;
    let m = 1usize << n;
    let codes: Vec<Vec<u32>> = if suite.uses_linear_orders() {
        LinearOrderCodes::new(m).collect()
    } else {
        WeakOrderCodes::new(m).collect()
    };
    let tallies = par::map_chunks(codes.len(), threads, |range| {
        let mut t = Tally::default();
        for i in range {
            let f = SetFunction::from_rank_code(ground.clone(), &codes[i]);
            t.scanned += 1;
            if let Some(result) = suite.check(&f) {
                t.hypothesis += 1;
                if let Some(detail) = result {
                    t.violations += 1;
                    if t.first.is_none() {
                        t.first = Some(SuiteViolation { index: i, ranks: codes[i].clone(), detail });
                    }
                }
            }
        }
        t
    });
    let mut report = SuiteReport { suite, n, scanned: 0, hypothesis: 0, violations: 0, first_violation: None };
    for t in tallies {
        report.scanned += t.scanned;
        report.hypothesis += t.hypothesis;
        report.violations += t.violations;
        if report.first_violation.is_none() {
            report.first_violation = t.first;
        }
    }
    Ok(report)
}
