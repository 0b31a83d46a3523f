//! Membership tests for the ordinal submodularity classes.
//!
//! Every condition is a statement about a pair `(X, Y)` and the four values
//! `f(X), f(Y), f(X ∪ Y), f(X ∩ Y)`. A function belongs to a class when the
//! condition holds at all `4^n` ordered pairs. Pairs are scanned in
//! lexicographic `(X, Y)` mask order and the first violation is reported, so
//! witnesses are reproducible.
//!
//! | condition | holds at `(X, Y)` when |
//! |-----------|------------------------|
//! | Q1 | `f(X) > f(X∩Y)` or `f(X∪Y) <= f(Y)` |
//! | Q2 | `f(X) >= f(X∩Y)` or `f(X∪Y) < f(Y)` |
//! | Q3 | `f(X) >= f(X∩Y)` or `f(X∪Y) <= f(Y)` |
//! | Q4 | `max(f(X), f(Y)) >= min(f(X∪Y), f(X∩Y))` |
//! | Qh | `f(X) != f(Y)`, or `f(X∪Y) = f(X∩Y) = f(X)`, or `f(X∪Y) < f(X)`, or `f(X∩Y) < f(X)` |
//!
//! Quasisubmodular means Q1 and Q2 together. Ordinary submodularity
//! (`f(X) + f(Y) >= f(X∪Y) + f(X∩Y)`) needs a numeric codomain and uses exact
//! arithmetic; injectivity is condition (*) of the minimization theorems.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::par;
use crate::setfn::SetFunction;
use crate::subset::Subset;
use crate::value::OrdinalValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConditionId {
    Q1,
    Q2,
    Q3,
    Q4,
    Qh,
    QuasiSubmodular,
    OrdinarySubmodular,
    Injective,
}

impl ConditionId {
    pub const ALL: [ConditionId; 8] = [
        ConditionId::Q1,
        ConditionId::Q2,
        ConditionId::Q3,
        ConditionId::Q4,
        ConditionId::Qh,
        ConditionId::QuasiSubmodular,
        ConditionId::OrdinarySubmodular,
        ConditionId::Injective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionId::Q1 => "Q1",
            ConditionId::Q2 => "Q2",
            ConditionId::Q3 => "Q3",
            ConditionId::Q4 => "Q4",
            ConditionId::Qh => "Qh",
            ConditionId::QuasiSubmodular => "QuasiSubmodular",
            ConditionId::OrdinarySubmodular => "OrdinarySubmodular",
            ConditionId::Injective => "Injective",
        }
    }

    /// Conditions decided from comparisons alone.
    pub fn is_ordinal(self) -> bool {
        self != ConditionId::OrdinarySubmodular
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "q1" => ConditionId::Q1,
            "q2" => ConditionId::Q2,
            "q3" => ConditionId::Q3,
            "q4" => ConditionId::Q4,
            "qh" => ConditionId::Qh,
            "quasisubmodular" | "quasi" | "qs" => ConditionId::QuasiSubmodular,
            "ordinarysubmodular" | "ordinary" | "submodular" => ConditionId::OrdinarySubmodular,
            "injective" | "inj" | "*" => ConditionId::Injective,
            _ => return Err(Error::UnknownCondition(s.to_owned())),
        })
    }
}

/// An ordered pair `(X, Y)` at which a condition fails, with its four values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionWitness {
    pub condition: ConditionId,
    pub x: Subset,
    pub y: Subset,
    pub v_x: OrdinalValue,
    pub v_y: OrdinalValue,
    pub v_union: OrdinalValue,
    pub v_inter: OrdinalValue,
}

impl ConditionWitness {
    fn at(f: &SetFunction, condition: ConditionId, x: Subset, y: Subset) -> Self {
        Self {
            condition,
            x,
            y,
            v_x: f.at(x).clone(),
            v_y: f.at(y).clone(),
            v_union: f.at(x.union(y)).clone(),
            v_inter: f.at(x.intersection(y)).clone(),
        }
    }

    /// `[f(X), f(Y), f(X ∪ Y), f(X ∩ Y)]`
    pub fn values(&self) -> [&OrdinalValue; 4] {
        [&self.v_x, &self.v_y, &self.v_union, &self.v_inter]
    }

    /// Re-evaluates the condition on the recorded values alone.
    pub fn reproduces(&self) -> bool {
        let quad = PairValues { x: &self.v_x, y: &self.v_y, union: &self.v_union, inter: &self.v_inter };
        match self.condition {
            ConditionId::Injective => self.x != self.y && self.v_x == self.v_y,
            ConditionId::OrdinarySubmodular => {
                matches!(ordinary_at(&quad), Some(false))
            }
            c => !quad.holds(c),
        }
    }
}

/// The four values a pairwise condition looks at.
#[derive(Clone, Copy, Debug)]
struct PairValues<T> {
    x: T,
    y: T,
    union: T,
    inter: T,
}

impl<T: PartialOrd> PairValues<T> {
    fn holds(&self, cond: ConditionId) -> bool {
        let PairValues { x, y, union, inter } = self;
        match cond {
            ConditionId::Q1 => x > inter || union <= y,
            ConditionId::Q2 => x >= inter || union < y,
            ConditionId::Q3 => x >= inter || union <= y,
            ConditionId::Q4 => {
                let hi = if x >= y { x } else { y };
                let lo = if union <= inter { union } else { inter };
                hi >= lo
            }
            ConditionId::Qh => x != y || (union == x && inter == x) || union < x || inter < x,
            ConditionId::QuasiSubmodular => self.holds(ConditionId::Q1) && self.holds(ConditionId::Q2),
            ConditionId::Injective | ConditionId::OrdinarySubmodular => {
                unreachable!("{cond} is not decided from a value quadruple")
            }
        }
    }
}

fn rank_quad(f: &SetFunction, x: Subset, y: Subset) -> PairValues<u32> {
    PairValues { x: f.rank(x), y: f.rank(y), union: f.rank(x.union(y)), inter: f.rank(x.intersection(y)) }
}

/// `f(X) + f(Y) >= f(X∪Y) + f(X∩Y)` in exact arithmetic; `None` for labels.
fn ordinary_at(q: &PairValues<&OrdinalValue>) -> Option<bool> {
    match (q.x, q.y, q.union, q.inter) {
        (OrdinalValue::Int(a), OrdinalValue::Int(b), OrdinalValue::Int(c), OrdinalValue::Int(d)) => {
            Some(*a as i128 + *b as i128 >= *c as i128 + *d as i128)
        }
        (OrdinalValue::Rat(a), OrdinalValue::Rat(b), OrdinalValue::Rat(c), OrdinalValue::Rat(d)) => {
            let big = |r: &crate::value::Rational| {
                BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            };
            Some(big(a) + big(b) >= big(c) + big(d))
        }
        _ => None,
    }
}

fn pair_ok(f: &SetFunction, cond: ConditionId, x: Subset, y: Subset) -> bool {
    match cond {
        ConditionId::Injective => x == y || f.rank(x) != f.rank(y),
        ConditionId::OrdinarySubmodular => {
            let quad = PairValues {
                x: f.at(x),
                y: f.at(y),
                union: f.at(x.union(y)),
                inter: f.at(x.intersection(y)),
            };
            ordinary_at(&quad).unwrap_or(true)
        }
        c => rank_quad(f, x, y).holds(c),
    }
}

/// Whether `cond` holds at the single ordered pair `(X, Y)`.
///
/// Ordinary submodularity errors on a label codomain.
pub fn holds_at_pair(f: &SetFunction, cond: ConditionId, x: Subset, y: Subset) -> Result<bool> {
    f.ground().check(x)?;
    f.ground().check(y)?;
    if cond == ConditionId::OrdinarySubmodular && !f.codomain().is_numeric() {
        return Err(Error::UnsupportedCodomain(f.codomain().kind().into()));
    }
    Ok(pair_ok(f, cond, x, y))
}

/// Result of checking one condition over all pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails(ConditionWitness),
    /// Ordinary submodularity on a codomain without addition.
    NotApplicable,
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn witness(&self) -> Option<&ConditionWitness> {
        match self {
            Outcome::Fails(w) => Some(w),
            _ => None,
        }
    }

    /// `Some(holds)`, or `None` when not applicable.
    pub fn flag(&self) -> Option<bool> {
        match self {
            Outcome::NotApplicable => None,
            other => Some(other.holds()),
        }
    }
}

fn first_violation(f: &SetFunction, cond: ConditionId, threads: usize) -> Option<ConditionWitness> {
    let len = f.len();
    par::first_hit(len, threads, |xi| {
        let x = Subset(xi as u32);
        (0..len as u32).map(Subset).find(|&y| !pair_ok(f, cond, x, y))
    })
    .map(|(xi, y)| ConditionWitness::at(f, cond, Subset(xi as u32), y))
}

/// Checks `cond` at every ordered pair and returns the lexicographically
/// least violating pair, if any.
pub fn check_condition(f: &SetFunction, cond: ConditionId) -> Outcome {
    check_condition_par(f, cond, 1)
}

/// [`check_condition`] with the `X` range split across `threads` workers. The
/// reported witness is the same for every thread count.
pub fn check_condition_par(f: &SetFunction, cond: ConditionId, threads: usize) -> Outcome {
    match cond {
        ConditionId::OrdinarySubmodular if !f.codomain().is_numeric() => Outcome::NotApplicable,
        ConditionId::Injective if f.levels().len() == f.len() => Outcome::Holds,
        ConditionId::Injective => injectivity_witness(f).map_or(Outcome::Holds, Outcome::Fails),
        _ => first_violation(f, cond, threads).map_or(Outcome::Holds, Outcome::Fails),
    }
}

/// Every violating pair in scan order, at most `limit` of them.
pub fn violations(f: &SetFunction, cond: ConditionId, limit: usize) -> Vec<ConditionWitness> {
    if cond == ConditionId::OrdinarySubmodular && !f.codomain().is_numeric() {
        return Vec::new();
    }
    let subsets = || f.ground().subsets();
    subsets()
        .flat_map(|x| subsets().map(move |y| (x, y)))
        .filter(|&(x, y)| !pair_ok(f, cond, x, y))
        .take(limit)
        .map(|(x, y)| ConditionWitness::at(f, cond, x, y))
        .collect()
}

fn injectivity_witness(f: &SetFunction) -> Option<ConditionWitness> {
    let mut first_with_rank = vec![None; f.levels().len()];
    let mut best: Option<(Subset, Subset)> = None;
    for s in f.ground().subsets() {
        match first_with_rank[f.rank(s) as usize] {
            None => first_with_rank[f.rank(s) as usize] = Some(s),
            Some(earlier) => {
                // (earlier, s) is the least pair with this X = earlier.
                if best.is_none_or(|(bx, _)| earlier < bx) {
                    best = Some((earlier, s));
                }
            }
        }
    }
    best.map(|(x, y)| ConditionWitness::at(f, ConditionId::Injective, x, y))
}

/// Ordinary submodularity with exact arithmetic. Errors on label codomains.
pub fn is_ordinary_submodular(f: &SetFunction) -> Result<Outcome> {
    if !f.codomain().is_numeric() {
        return Err(Error::UnsupportedCodomain(f.codomain().kind().into()));
    }
    Ok(check_condition(f, ConditionId::OrdinarySubmodular))
}

/// Condition (*): all `2^n` values are pairwise distinct.
pub fn is_injective(f: &SetFunction) -> bool {
    f.levels().len() == f.len()
}

/// Checks that "(Q1 or Q2) at every pair" is the same predicate
/// as "(Q3) at every pair". Always true; exposed as a diagnostic.
pub fn pairwise_q3_equivalence(f: &SetFunction) -> bool {
    let pairs = || f.ground().subsets().flat_map(|x| f.ground().subsets().map(move |y| (x, y)));
    let pointwise = pairs().all(|(x, y)| {
        let q = rank_quad(f, x, y);
        q.holds(ConditionId::Q1) || q.holds(ConditionId::Q2)
    });
    pointwise == check_condition(f, ConditionId::Q3).holds()
}

/// Outcomes for every [`ConditionId`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    outcomes: Vec<(ConditionId, Outcome)>,
}

/// Compact classification, one `Option<bool>` per [`ConditionId::ALL`] entry.
pub type ClassVector = [Option<bool>; 8];

impl ClassReport {
    pub fn outcome(&self, cond: ConditionId) -> &Outcome {
        &self.outcomes.iter().find(|(c, _)| *c == cond).expect("every condition is reported").1
    }

    /// `false` for failed and not-applicable conditions.
    pub fn holds(&self, cond: ConditionId) -> bool {
        self.outcome(cond).holds()
    }

    pub fn witness(&self, cond: ConditionId) -> Option<&ConditionWitness> {
        self.outcome(cond).witness()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ConditionId, &Outcome)> {
        self.outcomes.iter().map(|(c, o)| (*c, o))
    }

    pub fn vector(&self) -> ClassVector {
        let mut v = [None; 8];
        for (slot, cond) in v.iter_mut().zip(ConditionId::ALL) {
            *slot = self.outcome(cond).flag();
        }
        v
    }

    /// Implications that every correct classification satisfies.
    pub fn inconsistency(&self) -> Option<(ConditionId, ConditionId)> {
        use ConditionId::*;
        const IMPLIES: [(ConditionId, ConditionId); 8] = [
            (QuasiSubmodular, Q1),
            (QuasiSubmodular, Q2),
            (Q1, Q3),
            (Q2, Q3),
            (Q3, Q4),
            (OrdinarySubmodular, QuasiSubmodular),
            (QuasiSubmodular, Qh),
            (Injective, Qh),
        ];
        for (a, b) in IMPLIES {
            if self.holds(a) && !self.holds(b) {
                return Some((a, b));
            }
        }
        if self.holds(Q1) && self.holds(Q2) && !self.holds(QuasiSubmodular) {
            return Some((Q1, QuasiSubmodular));
        }
        None
    }
}

/// Evaluates every condition.
///
/// # Panics
/// If the outcomes violate one of the known implications, which can only be
/// a checker bug.
pub fn classify(f: &SetFunction) -> ClassReport {
    classify_par(f, 1)
}

pub fn classify_par(f: &SetFunction, threads: usize) -> ClassReport {
    let outcomes = ConditionId::ALL.iter().map(|&c| (c, check_condition_par(f, c, threads))).collect();
    let report = ClassReport { outcomes };
    if let Some((a, b)) = report.inconsistency() {
        panic!("classification is inconsistent: {a} holds but {b} does not");
    }
    report
}
