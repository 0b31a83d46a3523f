//! Ground sets, bitmask subsets and interval sublattices of `2^E`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set. Dense tables hold `2^n` values.
pub const MAX_ELEMENTS: usize = 20;

/// An ordered list of distinct, named elements.
///
/// Names may not contain commas or surrounding whitespace because subsets are
/// written as comma-joined element names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    elements: Vec<String>,
}

impl GroundSet {
    /// Builds a ground set with `1 <= n <= 20` elements.
    pub fn new<I, S>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ground = Self::new_allow_empty(elements)?;
        if ground.is_empty() {
            return Err(Error::GroundSet("the ground set must be nonempty".into()));
        }
        Ok(ground)
    }

    /// Same as [`GroundSet::new`] but accepts zero elements; restrictions to
    /// a degenerate interval `[X, X]` live on an empty ground set.
    pub(crate) fn new_allow_empty<I, S>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.len() > MAX_ELEMENTS {
            return Err(Error::GroundSet(format!(
                "{} elements exceeds the limit of {MAX_ELEMENTS}",
                elements.len()
            )));
        }
        for (i, name) in elements.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::GroundSet(format!("element {i} has an empty name")));
            }
            if name.contains(',') || name.trim() != name {
                return Err(Error::GroundSet(format!(
                    "element name `{name}` contains a comma or surrounding whitespace"
                )));
            }
            if elements[..i].contains(name) {
                return Err(Error::GroundSet(format!("element `{name}` is listed twice")));
            }
        }
        Ok(Self { elements })
    }

    /// `a`, `b`, `c`, ... for `1 <= n <= 20`.
    pub fn letters(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| char::from(b'a' + i as u8).to_string()))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// Number of subsets, `2^n`.
    pub fn power_set_len(&self) -> usize {
        1usize << self.len()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> + Clone {
        (0..self.power_set_len() as u32).map(Subset)
    }

    pub fn check(&self, s: Subset) -> Result<Subset> {
        if (s.0 as usize) < self.power_set_len() {
            Ok(s)
        } else {
            Err(Error::MaskOutOfRange { mask: s.0, n: self.len() })
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Parses comma-joined element names; the empty string is the empty set.
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let mut mask = 0u32;
        if text.trim().is_empty() {
            return Ok(Subset(0));
        }
        for name in text.split(',').map(str::trim) {
            let i = self.index_of(name).ok_or_else(|| Error::UnknownElement(name.to_owned()))?;
            if mask & (1 << i) != 0 {
                return Err(Error::DuplicateElement(name.to_owned()));
            }
            mask |= 1 << i;
        }
        Ok(Subset(mask))
    }

    pub fn names(&self, s: Subset) -> Vec<&str> {
        s.elements().map(|i| self.elements[i].as_str()).collect()
    }

    /// Inverse of [`GroundSet::parse_subset`], elements in ground-set order.
    pub fn format_subset(&self, s: Subset) -> String {
        self.names(s).join(",")
    }
}

/// A subset of the ground set as a bitmask; bit `i` is element `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(self.0 ^ Subset::full(n).0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn contains(self, element: usize) -> bool {
        self.0 >> element & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Indices of the members, ascending.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// All subsets of `self`, ascending by mask, `self` included.
    pub fn submasks(self) -> SubmaskIter {
        SubmaskIter { within: self.0, next: Some(0) }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug)]
pub struct SubmaskIter {
    within: u32,
    next: Option<u32>,
}

impl Iterator for SubmaskIter {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let s = self.next?;
        // Smallest submask of `within` greater than `s`.
        let succ = (s | !self.within).wrapping_add(1) & self.within;
        self.next = (succ != 0).then_some(succ);
        Some(Subset(s))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match self.next {
            None => (0, Some(0)),
            Some(_) => (1, Some(1 << self.within.count_ones())),
        }
    }
}

/// The interval sublattice `[lo, hi] = { Z : lo ⊆ Z ⊆ hi }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Subset,
    hi: Subset,
}

impl Interval {
    pub fn new(lo: Subset, hi: Subset) -> Result<Self> {
        if !lo.is_subset_of(hi) {
            return Err(Error::InvalidInterval { lo: lo.0, hi: hi.0 });
        }
        Ok(Self { lo, hi })
    }

    /// `[∅, x]`
    pub fn below(x: Subset) -> Self {
        Self { lo: Subset::EMPTY, hi: x }
    }

    /// `[x, E]`
    pub fn above(x: Subset, n: usize) -> Self {
        Self { lo: x, hi: Subset::full(n) }
    }

    pub fn lo(&self) -> Subset {
        self.lo
    }

    pub fn hi(&self) -> Subset {
        self.hi
    }

    /// The free coordinates `hi ∖ lo`.
    pub fn free(&self) -> Subset {
        self.hi.difference(self.lo)
    }

    pub fn contains(&self, z: Subset) -> bool {
        self.lo.is_subset_of(z) && z.is_subset_of(self.hi)
    }

    /// `2^{|hi ∖ lo|}`
    pub fn len(&self) -> u64 {
        1u64 << self.free().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Members ascending by mask.
    pub fn iter(&self) -> impl Iterator<Item = Subset> {
        let lo = self.lo;
        self.free().submasks().map(move |s| s.union(lo))
    }
}
