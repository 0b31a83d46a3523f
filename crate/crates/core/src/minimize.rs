//! Minimizers, interval-local optimality and global certificates.
//!
//! A point `X*` is *interval-local* when `f(X*) <= f(Z)` for every `Z` in
//! `[∅, X*] ∪ [X*, E]`. For (Q1)- or (Q2)-submodular functions, and for
//! injective (Q4)-submodular ones, every interval-local point is a global
//! minimizer; [`certify_global_min`] checks locality, finds which of those
//! hypotheses applies and combines the two.

use std::fmt;

use serde_json::{json, Value};

use crate::class::{check_condition_par, is_injective, ConditionId, Outcome};
use crate::error::{Error, Result};
use crate::format::{subset_to_name_list, value_to_json};
use crate::setfn::SetFunction;
use crate::subset::{Interval, Subset};
use crate::value::OrdinalValue;

/// `Arg min { f(X) : X ∈ 2^E }` with the minimum value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgminSet {
    /// Ascending by mask.
    pub minimizers: Vec<Subset>,
    pub min_value: OrdinalValue,
}

impl ArgminSet {
    pub fn contains(&self, s: Subset) -> bool {
        self.minimizers.binary_search(&s).is_ok()
    }

    pub fn to_json(&self, f: &SetFunction) -> Value {
        json!({
            "minimizers": self.minimizers.iter().map(|&s| subset_to_name_list(f.ground(), s)).collect::<Vec<_>>(),
            "min_value": value_to_json(f.codomain(), &self.min_value),
        })
    }
}

fn argmin_over(f: &SetFunction, candidates: impl Iterator<Item = Subset>) -> Option<ArgminSet> {
    let mut best: Option<(u32, Vec<Subset>)> = None;
    for s in candidates {
        let r = f.rank(s);
        match &mut best {
            Some((b, list)) if r == *b => list.push(s),
            Some((b, _)) if r > *b => {}
            _ => best = Some((r, vec![s])),
        }
    }
    best.map(|(_, mut minimizers)| {
        minimizers.sort_unstable();
        let min_value = f.at(minimizers[0]).clone();
        ArgminSet { minimizers, min_value }
    })
}

/// All global minimizers by exhaustive scan.
pub fn argmin(f: &SetFunction) -> ArgminSet {
    argmin_over(f, f.ground().subsets()).expect("2^E is nonempty")
}

/// Least `(rank, mask)` over the candidates.
fn least(f: &SetFunction, candidates: impl Iterator<Item = Subset>) -> Subset {
    candidates.min_by_key(|&s| (f.rank(s), s)).expect("intervals are nonempty")
}

fn neighbourhood(f: &SetFunction, x: Subset) -> impl Iterator<Item = Subset> {
    Interval::below(x).iter().chain(Interval::above(x, f.n()).iter())
}

/// `f(X) <= f(Z)` for every `Z ⊆ X`.
pub fn is_lower_interval_min(f: &SetFunction, x: Subset) -> Result<bool> {
    f.ground().check(x)?;
    let r = f.rank(x);
    Ok(Interval::below(x).iter().all(|z| r <= f.rank(z)))
}

/// `f(X) <= f(Z)` for every `Z ∈ [∅, X] ∪ [X, E]`.
pub fn is_interval_local_min(f: &SetFunction, x: Subset) -> Result<bool> {
    f.ground().check(x)?;
    let r = f.rank(x);
    Ok(neighbourhood(f, x).all(|z| r <= f.rank(z)))
}

/// Moves a lower-interval-minimal `X` to the smallest-mask minimizer of `f`
/// over `[X, E]`.
///
/// When `f` is (Q1)-submodular that point is a global minimizer: some global
/// minimizer `Z*` has `f(Z* ∪ X) <= f(Z*)`, and `Z* ∪ X ∈ [X, E]`. With
/// `verify` set the (Q1) hypothesis is checked first.
pub fn lift_to_global(f: &SetFunction, x: Subset, verify: bool) -> Result<Subset> {
    if !is_lower_interval_min(f, x)? {
        return Err(Error::Precondition(format!(
            "{} does not minimize f over [∅, X]",
            f.ground().format_subset(x)
        )));
    }
    if verify {
        if let Outcome::Fails(w) = check_condition_par(f, ConditionId::Q1, 1) {
            return Err(Error::hypothesis(w));
        }
    }
    Ok(least(f, Interval::above(x, f.n()).iter()))
}

/// A class hypothesis under which interval-local minima are global.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    Q1,
    /// The union/intersection dual of the (Q1) argument.
    Q2,
    /// (Q4) together with injectivity.
    Q4Injective,
}

impl Hypothesis {
    pub fn tag(self) -> &'static str {
        match self {
            Hypothesis::Q1 => "Q1",
            Hypothesis::Q2 => "Q2",
            Hypothesis::Q4Injective => "Q4-with-(*)",
        }
    }

    /// Checks the hypothesis on `f`.
    pub fn holds(self, f: &SetFunction, threads: usize) -> bool {
        match self {
            Hypothesis::Q1 => check_condition_par(f, ConditionId::Q1, threads).holds(),
            Hypothesis::Q2 => check_condition_par(f, ConditionId::Q2, threads).holds(),
            Hypothesis::Q4Injective => {
                is_injective(f) && check_condition_par(f, ConditionId::Q4, threads).holds()
            }
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The first hypothesis, in the order Q1, Q2, Q4 with injectivity, that `f`
/// satisfies.
pub fn strongest_hypothesis(f: &SetFunction, threads: usize) -> Option<Hypothesis> {
    [Hypothesis::Q1, Hypothesis::Q2, Hypothesis::Q4Injective]
        .into_iter()
        .find(|h| h.holds(f, threads))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The hypothesis was checked over all pairs.
    Verified,
    /// The caller vouched for the hypothesis; it was not checked.
    Asserted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Interval-local and a hypothesis holds.
    Global,
    /// Some point of `[∅, X] ∪ [X, E]` has a smaller value.
    NotIntervalLocal,
    /// Interval-local, but no hypothesis is available.
    Unknown,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Global => "global",
            Verdict::NotIntervalLocal => "not-interval-local",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCertificate {
    pub point: Subset,
    pub value: OrdinalValue,
    /// `2^{|X|}`
    pub lower_checked: u64,
    /// `2^{n - |X|}`
    pub upper_checked: u64,
    pub interval_local: bool,
    pub hypothesis: Option<Hypothesis>,
    pub evidence: Evidence,
    pub verdict: Verdict,
}

impl MinimalityCertificate {
    pub fn global(&self) -> bool {
        self.verdict == Verdict::Global
    }

    /// Total evaluations, `2^{|X|} + 2^{n-|X|}`.
    pub fn evaluations(&self) -> u64 {
        self.lower_checked + self.upper_checked
    }

    pub fn to_json(&self, f: &SetFunction) -> Value {
        json!({
            "point": subset_to_name_list(f.ground(), self.point),
            "value": value_to_json(f.codomain(), &self.value),
            "lower_checked": self.lower_checked,
            "upper_checked": self.upper_checked,
            "interval_local": self.interval_local,
            "hypothesis": self.hypothesis.map(Hypothesis::tag),
            "hypothesis_verified": self.evidence == Evidence::Verified,
            "global": self.global(),
            "verdict": self.verdict.tag(),
        })
    }
}

fn certificate(f: &SetFunction, x: Subset, hypothesis: Option<Hypothesis>, evidence: Evidence) -> Result<MinimalityCertificate> {
    let interval_local = is_interval_local_min(f, x)?;
    let verdict = match (interval_local, hypothesis) {
        (false, _) => Verdict::NotIntervalLocal,
        (true, Some(_)) => Verdict::Global,
        (true, None) => Verdict::Unknown,
    };
    Ok(MinimalityCertificate {
        point: x,
        value: f.at(x).clone(),
        lower_checked: Interval::below(x).len(),
        upper_checked: Interval::above(x, f.n()).len(),
        interval_local,
        hypothesis,
        evidence,
        verdict,
    })
}

/// Checks interval-local minimality of `X` and verifies the strongest
/// applicable hypothesis with full class checks.
pub fn certify_global_min(f: &SetFunction, x: Subset) -> Result<MinimalityCertificate> {
    certify_global_min_par(f, x, 1)
}

pub fn certify_global_min_par(f: &SetFunction, x: Subset, threads: usize) -> Result<MinimalityCertificate> {
    f.ground().check(x)?;
    certificate(f, x, strongest_hypothesis(f, threads), Evidence::Verified)
}

/// Like [`certify_global_min`] but trusts the caller's hypothesis without
/// checking it.
pub fn certify_assuming(f: &SetFunction, x: Subset, hypothesis: Hypothesis) -> Result<MinimalityCertificate> {
    certificate(f, x, Some(hypothesis), Evidence::Asserted)
}

/// Points visited by [`interval_descent`] and the certificate at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentTrace {
    pub steps: Vec<(Subset, OrdinalValue)>,
    pub certificate: MinimalityCertificate,
}

impl DescentTrace {
    pub fn terminal(&self) -> Subset {
        self.steps.last().expect("a trace has at least its start").0
    }

    /// Number of moves, one less than the number of points.
    pub fn moves(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn to_json(&self, f: &SetFunction) -> Value {
        json!({
            "steps": self.steps.iter().map(|(s, v)| json!({
                "point": subset_to_name_list(f.ground(), *s),
                "value": value_to_json(f.codomain(), v),
            })).collect::<Vec<_>>(),
            "moves": self.moves(),
            "certificate": self.certificate.to_json(f),
        })
    }
}

/// Repeatedly jumps to the best point of `[∅, X] ∪ [X, E]` (smallest mask on
/// ties) until the current point attains that minimum.
///
/// Values strictly decrease, so at most `p - 1 <= 2^n - 1` moves happen. The
/// end point is certified like [`certify_global_min`].
pub fn interval_descent(f: &SetFunction, start: Subset) -> Result<DescentTrace> {
    interval_descent_par(f, start, 1)
}

pub fn interval_descent_par(f: &SetFunction, start: Subset, threads: usize) -> Result<DescentTrace> {
    f.ground().check(start)?;
    let mut current = start;
    let mut steps = vec![(current, f.at(current).clone())];
    loop {
        let best = least(f, neighbourhood(f, current));
        if f.rank(current) <= f.rank(best) {
            break;
        }
        current = best;
        steps.push((current, f.at(current).clone()));
    }
    debug_assert!(steps.len() <= f.len());
    let certificate = certify_global_min_par(f, current, threads)?;
    Ok(DescentTrace { steps, certificate })
}

/// Whether the minimizer family is closed under union and intersection.
pub fn argmin_lattice_closure(f: &SetFunction) -> bool {
    let d = argmin(f);
    d.minimizers.iter().all(|&x| {
        d.minimizers
            .iter()
            .all(|&y| d.contains(x.union(y)) && d.contains(x.intersection(y)))
    })
}

/// Solution of `min φ(X)` subject to `f(X) > μ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstrainedMin {
    pub argmin: ArgminSet,
    /// `μ_k`, the k-th smallest distinct value of `f`.
    pub threshold: OrdinalValue,
    /// `|2^E ∖ F_k|`
    pub feasible: usize,
}

/// Minimizes `phi` over `{X : f(X) > μ_k}` by enumeration, for
/// `1 <= k <= p - 1` where `p` is the number of distinct values of `f`.
pub fn constrained_minimize(phi: &SetFunction, f: &SetFunction, k: usize) -> Result<ConstrainedMin> {
    if phi.ground() != f.ground() {
        return Err(Error::GroundMismatch);
    }
    if !phi.codomain().is_numeric() {
        return Err(Error::UnsupportedCodomain(phi.codomain().kind().into()));
    }
    let p = f.levels().len();
    if k < 1 || k >= p {
        return Err(Error::Range { what: "k", value: k as i64, lo: 1, hi: p as i64 - 1 });
    }
    let feasible: Vec<Subset> = f.ground().subsets().filter(|&s| f.rank(s) >= k as u32).collect();
    let argmin = argmin_over(phi, feasible.iter().copied()).expect("k < p leaves a feasible set");
    Ok(ConstrainedMin { argmin, threshold: f.levels()[k - 1].clone(), feasible: feasible.len() })
}
