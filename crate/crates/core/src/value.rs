//! Totally ordered codomains and their values.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Description of the totally ordered set a function takes values in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Codomain {
    Integer,
    Rational,
    /// Labels ordered by their position in the list.
    Labels(Vec<String>),
}

impl Codomain {
    pub fn labels<I, S>(order: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let order: Vec<String> = order.into_iter().map(Into::into).collect();
        if order.is_empty() {
            return Err(Error::Codomain("label_order is empty".into()));
        }
        for (i, label) in order.iter().enumerate() {
            if order[..i].contains(label) {
                return Err(Error::Codomain(format!("label `{label}` is listed twice")));
            }
        }
        Ok(Codomain::Labels(order))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Codomain::Integer => "integer",
            Codomain::Rational => "rational",
            Codomain::Labels(_) => "labels",
        }
    }

    pub fn is_numeric(&self) -> bool {
        !matches!(self, Codomain::Labels(_))
    }

    pub fn admits(&self, value: &OrdinalValue) -> bool {
        match (self, value) {
            (Codomain::Integer, OrdinalValue::Int(_)) => true,
            (Codomain::Rational, OrdinalValue::Rat(_)) => true,
            (Codomain::Labels(order), OrdinalValue::Label(i)) => (*i as usize) < order.len(),
            _ => false,
        }
    }

    pub(crate) fn ensure(&self, value: &OrdinalValue) -> Result<()> {
        if self.admits(value) {
            Ok(())
        } else {
            Err(Error::CodomainMismatch { value: value.to_string(), codomain: self.kind().into() })
        }
    }

    pub fn label_index(&self, label: &str) -> Option<u32> {
        match self {
            Codomain::Labels(order) => order.iter().position(|l| l == label).map(|i| i as u32),
            _ => None,
        }
    }

    /// Human-readable rendering of `value`, using label names when available.
    pub fn display(&self, value: &OrdinalValue) -> String {
        match (self, value) {
            (Codomain::Labels(order), OrdinalValue::Label(i)) => order
                .get(*i as usize)
                .cloned()
                .unwrap_or_else(|| value.to_string()),
            _ => value.to_string(),
        }
    }
}

impl fmt::Display for Codomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind())
    }
}

/// One element of a codomain.
///
/// Rationals are kept in lowest terms with a positive denominator, so derived
/// equality is value equality. Values of different kinds are incomparable:
/// `partial_cmp` returns `None` and [`OrdinalValue::try_cmp`] errors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrdinalValue {
    Int(i64),
    Rat(Rational),
    /// Index into the codomain's `label_order`.
    Label(u32),
}

impl OrdinalValue {
    /// Canonical rational `num / den`.
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Codomain("rational with zero denominator".into()));
        }
        if num == i64::MIN || den == i64::MIN {
            return Err(Error::Overflow("normalizing a rational"));
        }
        Ok(OrdinalValue::Rat(Ratio::new(num, den)))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            OrdinalValue::Int(_) => "integer",
            OrdinalValue::Rat(_) => "rational",
            OrdinalValue::Label(_) => "labels",
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.partial_cmp(other).ok_or_else(|| {
            Error::Codomain(format!("cannot compare {} value with {} value", self.kind(), other.kind()))
        })
    }
}

impl PartialOrd for OrdinalValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (OrdinalValue::Int(a), OrdinalValue::Int(b)) => Some(a.cmp(b)),
            // Ratio's Ord compares without cross-multiplying, so no overflow.
            (OrdinalValue::Rat(a), OrdinalValue::Rat(b)) => Some(a.cmp(b)),
            (OrdinalValue::Label(a), OrdinalValue::Label(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}

impl fmt::Display for OrdinalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalValue::Int(v) => write!(f, "{v}"),
            OrdinalValue::Rat(r) => write!(f, "{r}"),
            OrdinalValue::Label(i) => write!(f, "#{i}"),
        }
    }
}

impl From<i64> for OrdinalValue {
    fn from(v: i64) -> Self {
        OrdinalValue::Int(v)
    }
}
