//! Tabulated set functions `f: 2^E -> (P, <=)` and their structural transforms.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Interval, Subset};
use crate::value::{Codomain, OrdinalValue};

/// A total map from every subset of a ground set to a codomain value.
///
/// Values are stored densely, indexed by subset mask. Construction also
/// computes the dense rank of every value (0 for the smallest distinct
/// value), which is all the ordinal conditions ever look at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    ground: GroundSet,
    codomain: Codomain,
    values: Vec<OrdinalValue>,
    ranks: Vec<u32>,
    levels: Vec<OrdinalValue>,
}

impl SetFunction {
    pub fn new(ground: GroundSet, codomain: Codomain, values: Vec<OrdinalValue>) -> Result<Self> {
        let expected = ground.power_set_len();
        if values.len() != expected {
            return Err(Error::ValueCount { expected, got: values.len(), n: ground.len() });
        }
        for v in &values {
            codomain.ensure(v)?;
        }
        let mut levels = values.clone();
        // Same kind throughout, so the comparison is total.
        levels.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        levels.dedup();
        let ranks = values
            .iter()
            .map(|v| {
                levels.binary_search_by(|l| l.partial_cmp(v).unwrap_or(Ordering::Equal)).unwrap() as u32
            })
            .collect();
        Ok(Self { ground, codomain, values, ranks, levels })
    }

    /// Integer-valued function on `ground`.
    pub fn from_ints(ground: GroundSet, values: &[i64]) -> Result<Self> {
        Self::new(ground, Codomain::Integer, values.iter().map(|&v| OrdinalValue::Int(v)).collect())
    }

    /// Integer-valued function on the ground set `a, b, ...`, with `n` taken
    /// from the table length.
    pub fn ints(values: &[i64]) -> Result<Self> {
        let len = values.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::Precondition(format!("{len} values is not 2^n for any n >= 1")));
        }
        Self::from_ints(GroundSet::letters(len.trailing_zeros() as usize)?, values)
    }

    /// Builds the integer function whose values are the given surjective
    /// ranks `1..=k` without re-sorting.
    pub(crate) fn from_rank_code(ground: GroundSet, code: &[u32]) -> Self {
        debug_assert_eq!(code.len(), ground.power_set_len());
        let k = code.iter().copied().max().unwrap_or(0);
        Self {
            ground,
            codomain: Codomain::Integer,
            values: code.iter().map(|&r| OrdinalValue::Int(r as i64)).collect(),
            ranks: code.iter().map(|&r| r - 1).collect(),
            levels: (1..=k as i64).map(OrdinalValue::Int).collect(),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn codomain(&self) -> &Codomain {
        &self.codomain
    }

    /// Number of ground elements.
    pub fn n(&self) -> usize {
        self.ground.len()
    }

    /// Number of subsets, `2^n`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    pub fn values(&self) -> &[OrdinalValue] {
        &self.values
    }

    /// `f(s)`, or an index error if `s` is not a subset of the ground set.
    pub fn evaluate(&self, s: Subset) -> Result<&OrdinalValue> {
        self.values.get(s.index()).ok_or(Error::MaskOutOfRange { mask: s.mask(), n: self.n() })
    }

    /// `f(s)`; panics when `s` is out of range.
    pub fn at(&self, s: Subset) -> &OrdinalValue {
        &self.values[s.index()]
    }

    /// Dense rank of `f(s)`: the number of distinct values strictly below it.
    pub fn rank(&self, s: Subset) -> u32 {
        self.ranks[s.index()]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// The distinct values, strictly increasing.
    pub fn levels(&self) -> &[OrdinalValue] {
        &self.levels
    }

    /// The rank vector `1..=p`, the canonical representative of `f` up to
    /// strictly increasing reparametrization.
    pub fn rank_code(&self) -> Vec<u32> {
        self.ranks.iter().map(|r| r + 1).collect()
    }

    pub fn display_value(&self, s: Subset) -> String {
        self.codomain.display(self.at(s))
    }

    /// `g(X) = f(E ∖ X)`. Swaps the roles of union and intersection.
    pub fn complement_dual(&self) -> SetFunction {
        let full = self.full().mask() as usize;
        let pick = |i: usize| i ^ full;
        Self {
            ground: self.ground.clone(),
            codomain: self.codomain.clone(),
            values: (0..self.len()).map(|i| self.values[pick(i)].clone()).collect(),
            ranks: (0..self.len()).map(|i| self.ranks[pick(i)]).collect(),
            levels: self.levels.clone(),
        }
    }

    /// The same function read in the reversed order `(P, <=*)`: numeric values
    /// are negated and a label order is reversed.
    pub fn order_dual(&self) -> Result<SetFunction> {
        let (codomain, flip): (Codomain, Box<dyn Fn(&OrdinalValue) -> Result<OrdinalValue>>) =
            match &self.codomain {
                Codomain::Integer => (
                    Codomain::Integer,
                    Box::new(|v| match v {
                        OrdinalValue::Int(x) => {
                            x.checked_neg().map(OrdinalValue::Int).ok_or(Error::Overflow("negating"))
                        }
                        _ => unreachable!("validated at construction"),
                    }),
                ),
                Codomain::Rational => (
                    Codomain::Rational,
                    Box::new(|v| match v {
                        OrdinalValue::Rat(r) => {
                            if *r.numer() == i64::MIN {
                                Err(Error::Overflow("negating"))
                            } else {
                                Ok(OrdinalValue::Rat(-*r))
                            }
                        }
                        _ => unreachable!("validated at construction"),
                    }),
                ),
                Codomain::Labels(order) => {
                    let last = order.len() as u32 - 1;
                    let reversed = order.iter().rev().cloned().collect();
                    (
                        Codomain::Labels(reversed),
                        Box::new(move |v| match v {
                            OrdinalValue::Label(i) => Ok(OrdinalValue::Label(last - i)),
                            _ => unreachable!("validated at construction"),
                        }),
                    )
                }
            };
        let top = self.levels.len() as u32 - 1;
        Ok(Self {
            ground: self.ground.clone(),
            codomain,
            values: self.values.iter().map(&flip).collect::<Result<_>>()?,
            ranks: self.ranks.iter().map(|r| top - r).collect(),
            levels: self.levels.iter().rev().map(&flip).collect::<Result<_>>()?,
        })
    }

    /// `σ ∘ f` for a strictly increasing `σ` given as `(old, new)` pairs.
    ///
    /// The target codomain is inferred from the new values: integers,
    /// rationals, or labels of this function's own label order.
    pub fn monotone_transform(&self, sigma: &[(OrdinalValue, OrdinalValue)]) -> Result<SetFunction> {
        let first = sigma
            .first()
            .ok_or_else(|| Error::InvalidTransform("empty transform".into()))?;
        let target = match &first.1 {
            OrdinalValue::Int(_) => Codomain::Integer,
            OrdinalValue::Rat(_) => Codomain::Rational,
            OrdinalValue::Label(_) => match &self.codomain {
                Codomain::Labels(_) => self.codomain.clone(),
                _ => {
                    return Err(Error::InvalidTransform(
                        "label targets need an explicit label codomain".into(),
                    ))
                }
            },
        };
        self.monotone_transform_into(sigma, target)
    }

    /// [`SetFunction::monotone_transform`] into an explicit target codomain.
    pub fn monotone_transform_into(
        &self,
        sigma: &[(OrdinalValue, OrdinalValue)],
        target: Codomain,
    ) -> Result<SetFunction> {
        for (old, new) in sigma {
            if !self.codomain.admits(old) {
                return Err(Error::InvalidTransform(format!("source value {old} is not in the codomain")));
            }
            if !target.admits(new) {
                return Err(Error::InvalidTransform(format!("target value {new} is not in the target codomain")));
            }
        }
        let mut pairs: Vec<&(OrdinalValue, OrdinalValue)> = sigma.iter().collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidTransform(format!("source value {} mapped twice", w[0].0)));
            }
            if w[0].1.partial_cmp(&w[1].1) != Some(Ordering::Less) {
                return Err(Error::InvalidTransform(format!(
                    "not strictly increasing: {} -> {} but {} -> {}",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        let lookup = |v: &OrdinalValue| -> Result<OrdinalValue> {
            pairs
                .binary_search_by(|p| p.0.partial_cmp(v).unwrap_or(Ordering::Equal))
                .map(|i| pairs[i].1.clone())
                .map_err(|_| Error::InvalidTransform(format!("value {v} is not covered")))
        };
        let values = self.values.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        let levels = self.levels.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ground: self.ground.clone(),
            codomain: target,
            values,
            ranks: self.ranks.clone(),
            levels,
        })
    }

    /// The restriction to an interval `[lo, hi]`, as a function on the ground
    /// set `hi ∖ lo`: subset `S` of the new ground set maps to `f(lo ∪ S)`.
    ///
    /// `[X, X]` yields a single-valued function on an empty ground set.
    pub fn restrict(&self, interval: &Interval) -> Result<SetFunction> {
        self.ground.check(interval.hi())?;
        let free: Vec<usize> = interval.free().elements().collect();
        let ground = GroundSet::new_allow_empty(free.iter().map(|&i| self.ground.elements()[i].clone()))?;
        let embed = |local: usize| -> Subset {
            let mut mask = interval.lo().mask();
            for (bit, &i) in free.iter().enumerate() {
                if local >> bit & 1 == 1 {
                    mask |= 1 << i;
                }
            }
            Subset(mask)
        };
        let values = (0..1usize << free.len()).map(|s| self.at(embed(s)).clone()).collect();
        SetFunction::new(ground, self.codomain.clone(), values)
    }
}
