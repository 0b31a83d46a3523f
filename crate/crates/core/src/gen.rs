//! Test corpora: exhaustive enumerators, structured submodular families,
//! seeded random functions and counterexample search.

use num_traits::CheckedAdd;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::class::classify;
use crate::error::{Error, Result};
use crate::par;
use crate::predicate::Predicate;
use crate::setfn::SetFunction;
use crate::subset::GroundSet;
use crate::value::{Codomain, OrdinalValue, Rational};

/// Largest `n` for the exhaustive enumerators.
pub const ENUMERATION_CAP: usize = 3;

pub(crate) fn check_cap(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        return Err(Error::EnumerationCap { n, max: ENUMERATION_CAP });
    }
    if n == 0 {
        return Err(Error::GroundSet("the ground set must be nonempty".into()));
    }
    Ok(())
}

/// Surjective rank vectors `r: {0..m} -> {1..k}` in lexicographic order.
///
/// Each one is a weak order on `m` items, i.e. an ordered set partition, so
/// there are `Σ_k k! S(m, k)` of them (3, 75, 545 835 for `m` = 2, 4, 8).
#[derive(Clone, Debug)]
pub struct WeakOrderCodes {
    m: usize,
    code: Vec<u32>,
    started: bool,
    done: bool,
}

impl WeakOrderCodes {
    pub fn new(m: usize) -> Self {
        Self { m, code: vec![1; m], started: false, done: m == 0 }
    }

    /// Whether `prefix` (the first `len` digits) can still be completed to a
    /// surjective vector.
    fn completable(&self, len: usize) -> bool {
        let prefix = &self.code[..len];
        let max = prefix.iter().copied().max().unwrap_or(0) as usize;
        let mut seen = vec![false; max + 1];
        for &r in prefix {
            seen[r as usize] = true;
        }
        let missing = (1..=max).filter(|&r| !seen[r]).count();
        missing <= self.m - len
    }

    /// Smallest completion of the first `len` digits.
    fn fill_from(&mut self, len: usize) {
        for i in len..self.m {
            self.code[i] = 1;
            // Place the smallest digit that keeps the rest completable.
            while !self.completable(i + 1) {
                self.code[i] += 1;
            }
        }
    }

    fn advance(&mut self) -> bool {
        let m = self.m as u32;
        for i in (0..self.m).rev() {
            while self.code[i] < m {
                self.code[i] += 1;
                if self.completable(i + 1) {
                    self.fill_from(i + 1);
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for WeakOrderCodes {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.code.clone())
    }
}

/// Every integer function on `n <= 3` elements up to strictly increasing
/// reparametrization, as rank vectors `1..=k`, in lexicographic order.
pub fn enumerate_weak_orders(n: usize) -> Result<impl Iterator<Item = SetFunction>> {
    check_cap(n)?;
    let ground = GroundSet::letters(n)?;
    Ok(WeakOrderCodes::new(1 << n).map(move |code| SetFunction::from_rank_code(ground.clone(), &code)))
}

/// Permutations of `1..=m` in lexicographic order.
#[derive(Clone, Debug)]
pub struct LinearOrderCodes {
    next: Option<Vec<u32>>,
}

impl LinearOrderCodes {
    pub fn new(m: usize) -> Self {
        Self { next: (m > 0).then(|| (1..=m as u32).collect()) }
    }
}

impl Iterator for LinearOrderCodes {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(i) = (0..succ.len().saturating_sub(1)).rev().find(|&i| succ[i] < succ[i + 1]) {
            let j = (i + 1..succ.len()).rev().find(|&j| succ[j] > succ[i]).expect("succ[i+1] > succ[i]");
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// All `(2^n)!` injective functions with values `1..=2^n`, `n <= 3`.
pub fn enumerate_linear_orders(n: usize) -> Result<impl Iterator<Item = SetFunction>> {
    check_cap(n)?;
    let ground = GroundSet::letters(n)?;
    Ok(LinearOrderCodes::new(1 << n).map(move |code| SetFunction::from_rank_code(ground.clone(), &code)))
}

/// A weighted undirected edge between element indices `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn new(u: usize, v: usize, weight: i64) -> Self {
        Self { u, v, weight: Rational::from_integer(weight) }
    }
}

/// `f(X)` = total weight of edges with exactly one endpoint in `X`.
///
/// The codomain is integer when every weight is an integer, else rational.
pub fn cut_function(n: usize, edges: &[Edge]) -> Result<SetFunction> {
    let ground = GroundSet::letters(n)?;
    for e in edges {
        if !(e.u < e.v && e.v < n) {
            return Err(Error::Precondition(format!("edge ({}, {}) needs 0 <= u < v < {n}", e.u, e.v)));
        }
        if e.weight <= Rational::from_integer(0) {
            return Err(Error::Precondition(format!("edge ({}, {}) has non-positive weight", e.u, e.v)));
        }
    }
    let integral = edges.iter().all(|e| e.weight.is_integer());
    let mut values = Vec::with_capacity(ground.power_set_len());
    for s in ground.subsets() {
        let mut total = Rational::from_integer(0);
        for e in edges.iter().filter(|e| s.contains(e.u) != s.contains(e.v)) {
            total = total
                .checked_add(&e.weight)
                .ok_or(Error::Overflow("summing cut weights"))?;
        }
        values.push(if integral { OrdinalValue::Int(total.to_integer()) } else { OrdinalValue::Rat(total) });
    }
    let codomain = if integral { Codomain::Integer } else { Codomain::Rational };
    SetFunction::new(ground, codomain, values)
}

/// `f(X) = Σ_{i ∈ X} w_i + g(|X|)` for a concave `g` on `0..=n`.
pub fn modular_plus_concave(n: usize, weights: &[i64], g: &[i64]) -> Result<SetFunction> {
    if weights.len() != n || g.len() != n + 1 {
        return Err(Error::Precondition(format!(
            "need {n} weights and {} concave values, got {} and {}",
            n + 1,
            weights.len(),
            g.len()
        )));
    }
    if let Some(i) = (1..n).find(|&i| g[i - 1] as i128 - 2 * g[i] as i128 + g[i + 1] as i128 > 0) {
        return Err(Error::Precondition(format!("g is not concave at {i}")));
    }
    let ground = GroundSet::letters(n)?;
    let values = ground
        .subsets()
        .map(|s| {
            s.elements()
                .try_fold(g[s.len()], |acc, i| acc.checked_add(weights[i]))
                .ok_or(Error::Overflow("summing modular weights"))
        })
        .collect::<Result<Vec<_>>>()?;
    SetFunction::from_ints(ground, &values)
}

/// A seeded random function taking exactly `distinct` values.
///
/// Values come from a random increasing pool of the requested size; every
/// pool value is used at least once. Label codomains need at least
/// `distinct` labels.
pub fn random_function(n: usize, codomain: &Codomain, distinct: usize, seed: u64) -> Result<SetFunction> {
    let ground = GroundSet::letters(n)?;
    let len = ground.power_set_len();
    if distinct < 1 || distinct > len {
        return Err(Error::Range { what: "distinct_values", value: distinct as i64, lo: 1, hi: len as i64 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<OrdinalValue> = match codomain {
        Codomain::Integer => {
            let mut v = rng.gen_range(-10..=10);
            (0..distinct)
                .map(|_| {
                    let out = v;
                    v += rng.gen_range(1..=5);
                    OrdinalValue::Int(out)
                })
                .collect()
        }
        Codomain::Rational => {
            let mut v = Rational::new(rng.gen_range(-10..=10), rng.gen_range(1..=4));
            (0..distinct)
                .map(|_| {
                    let out = v;
                    v += Rational::new(rng.gen_range(1..=5), rng.gen_range(1..=6));
                    OrdinalValue::Rat(out)
                })
                .collect()
        }
        Codomain::Labels(order) => {
            if order.len() < distinct {
                return Err(Error::Range {
                    what: "distinct_values",
                    value: distinct as i64,
                    lo: 1,
                    hi: order.len() as i64,
                });
            }
            let mut picked = rand::seq::index::sample(&mut rng, order.len(), distinct).into_vec();
            picked.sort_unstable();
            picked.into_iter().map(|i| OrdinalValue::Label(i as u32)).collect()
        }
    };
    let mut slots: Vec<usize> = (0..len).map(|_| rng.gen_range(0..distinct)).collect();
    let mut masks: Vec<usize> = (0..len).collect();
    masks.shuffle(&mut rng);
    for (level, &mask) in masks.iter().take(distinct).enumerate() {
        slots[mask] = level;
    }
    SetFunction::new(ground, codomain.clone(), slots.into_iter().map(|i| pool[i].clone()).collect())
}

/// The first weak order on `n <= 3` elements whose classification satisfies
/// `predicate`, in enumeration order.
pub fn search_witness(n: usize, predicate: &Predicate) -> Result<Option<SetFunction>> {
    Ok(enumerate_weak_orders(n)?.find(|f| predicate.eval(&classify(f))))
}

/// [`search_witness`] with the stream split into `threads` contiguous chunks;
/// the least stream index wins, so the result matches the sequential scan.
pub fn search_witness_par(n: usize, predicate: &Predicate, threads: usize) -> Result<Option<SetFunction>> {
    check_cap(n)?;
    let ground = GroundSet::letters(n)?;
    let codes: Vec<Vec<u32>> = WeakOrderCodes::new(1 << n).collect();
    Ok(par::first_hit(codes.len(), threads, |i| {
        let f = SetFunction::from_rank_code(ground.clone(), &codes[i]);
        predicate.eval(&classify(&f)).then_some(f)
    })
    .map(|(_, f)| f))
}
