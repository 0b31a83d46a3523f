//! Level sets of a function and the nested family chain they form.
//!
//! With distinct values `μ_1 < ... < μ_p` the families
//! `F_i = { X : f(X) <= μ_i }` nest strictly,
//! `∅ = F_0 ⊂ F_1 ⊂ ... ⊂ F_p = 2^E`. Conversely a strictly nested chain
//! determines the function `X ↦ i` for `X ∈ F_i ∖ F_{i-1}`.

use serde_json::{json, Value};

use crate::class::{ConditionId, ConditionWitness, Outcome};
use crate::error::{Error, Result};
use crate::format::{ground_from_json, parse_json, subset_to_json, value_to_json};
use crate::setfn::SetFunction;
use crate::subset::{GroundSet, Subset};
use crate::value::OrdinalValue;

/// The distinct values of a function, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelValues {
    pub mu: Vec<OrdinalValue>,
}

impl LevelValues {
    pub fn p(&self) -> usize {
        self.mu.len()
    }
}

pub fn levels(f: &SetFunction) -> LevelValues {
    LevelValues { mu: f.levels().to_vec() }
}

/// `F_i`, ascending by mask. `i = 0` gives the empty family.
pub fn level_family(f: &SetFunction, i: usize) -> Result<Vec<Subset>> {
    let p = f.levels().len();
    if i > p {
        return Err(Error::Range { what: "level", value: i as i64, lo: 0, hi: p as i64 });
    }
    Ok(f.ground().subsets().filter(|&s| (f.rank(s) as usize) < i).collect())
}

/// The families `F_0, ..., F_p`, each sorted by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelChain {
    families: Vec<Vec<Subset>>,
}

impl LevelChain {
    /// Validates `F_0 = ∅`, strict nesting and `F_p = 2^E` over a ground set
    /// of `n` elements. Families are sorted on the way in.
    pub fn new(n: usize, families: Vec<Vec<Subset>>) -> Result<Self> {
        let total = 1usize << n;
        let mut families = families;
        for (i, fam) in families.iter_mut().enumerate() {
            fam.sort_unstable();
            if let Some(w) = fam.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Chain(format!("F_{i} lists mask {:#x} twice", w[0].mask())));
            }
            if let Some(s) = fam.iter().find(|s| s.index() >= total) {
                return Err(Error::Chain(format!("F_{i} contains out-of-range mask {:#x}", s.mask())));
            }
        }
        match families.first() {
            None => return Err(Error::Chain("no families".into())),
            Some(f0) if !f0.is_empty() => return Err(Error::Chain("F_0 must be empty".into())),
            _ => {}
        }
        if families.len() < 2 {
            return Err(Error::Chain("need at least F_0 and F_1".into()));
        }
        for i in 1..families.len() {
            let (prev, cur) = (&families[i - 1], &families[i]);
            if cur.len() <= prev.len() || !prev.iter().all(|s| cur.binary_search(s).is_ok()) {
                return Err(Error::Chain(format!("F_{} is not a proper subfamily of F_{i}", i - 1)));
            }
        }
        if families.last().map(Vec::len) != Some(total) {
            return Err(Error::Chain("the last family must be the whole power set".into()));
        }
        Ok(Self { families })
    }

    pub fn families(&self) -> &[Vec<Subset>] {
        &self.families
    }

    pub fn family(&self, i: usize) -> Option<&[Subset]> {
        self.families.get(i).map(Vec::as_slice)
    }

    /// Number of nonempty levels.
    pub fn p(&self) -> usize {
        self.families.len() - 1
    }

    /// The level `i` with `X ∈ F_i ∖ F_{i-1}`, for every mask.
    fn level_of_each(&self) -> Vec<u32> {
        let mut level = vec![0u32; self.families.last().map_or(0, Vec::len)];
        for (i, fam) in self.families.iter().enumerate().rev() {
            for s in fam {
                level[s.index()] = i as u32;
            }
        }
        level
    }

    pub fn to_json(&self, ground: &GroundSet) -> Value {
        json!({
            "ground_set": ground.elements(),
            "families": self.families.iter()
                .map(|fam| fam.iter().map(|&s| subset_to_json(ground, s)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// The chain `F_0 ⊂ ... ⊂ F_p` induced by `f`.
pub fn family_chain(f: &SetFunction) -> LevelChain {
    let p = f.levels().len();
    let mut families = vec![Vec::new(); p + 1];
    for s in f.ground().subsets() {
        for fam in &mut families[f.rank(s) as usize + 1..] {
            fam.push(s);
        }
    }
    LevelChain { families }
}

/// Checks (Qh) by scanning only pairs inside one value class: whenever
/// `f(X) = f(Y)`, either `f(X∪Y) = f(X∩Y) = f(X)` or one of them is smaller.
///
/// Independent of the all-pairs scan in [`crate::class`]; both report the
/// same lexicographically least witness.
pub fn check_qh(f: &SetFunction) -> Outcome {
    let mut classes: Vec<Vec<Subset>> = vec![Vec::new(); f.levels().len()];
    for s in f.ground().subsets() {
        classes[f.rank(s) as usize].push(s);
    }
    let mut best: Option<(Subset, Subset)> = None;
    for class in &classes {
        for &x in class {
            if best.is_some_and(|(bx, _)| bx < x) {
                break;
            }
            let r = f.rank(x);
            let bad = class.iter().copied().find(|&y| {
                let (u, i) = (f.rank(x.union(y)), f.rank(x.intersection(y)));
                !((u == r && i == r) || u < r || i < r)
            });
            if let Some(y) = bad {
                if best.is_none_or(|b| (x, y) < b) {
                    best = Some((x, y));
                }
                break;
            }
        }
    }
    match best {
        None => Outcome::Holds,
        Some((x, y)) => Outcome::Fails(ConditionWitness {
            condition: ConditionId::Qh,
            x,
            y,
            v_x: f.at(x).clone(),
            v_y: f.at(y).clone(),
            v_union: f.at(x.union(y)).clone(),
            v_inter: f.at(x.intersection(y)).clone(),
        }),
    }
}

/// The integer function with value `i` on `F_i ∖ F_{i-1}`, provided it
/// satisfies (Qh). Chains whose function fails (Qh) are rejected.
pub fn qh_from_chain(ground: &GroundSet, chain: &LevelChain) -> Result<SetFunction> {
    if chain.families.last().map(Vec::len) != Some(ground.power_set_len()) {
        return Err(Error::Chain(format!("chain does not cover the power set of {} elements", ground.len())));
    }
    let level = chain.level_of_each();
    let f = SetFunction::from_rank_code(ground.clone(), &level);
    match check_qh(&f) {
        Outcome::Fails(w) => Err(Error::ChainNotQh(Box::new(w))),
        _ => Ok(f),
    }
}

/// Reads `{"ground_set": [...], "families": [[], ["", "a,b"], ...]}`.
pub fn parse_chain(text: &str) -> Result<(GroundSet, LevelChain)> {
    let v = parse_json(text)?;
    let obj = v.as_object().ok_or_else(|| Error::format("$", "expected an object"))?;
    let ground = ground_from_json(
        obj.get("ground_set").ok_or_else(|| Error::format("$", "missing field `ground_set`"))?,
        "$.ground_set",
    )?;
    let fams = obj
        .get("families")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::format("$.families", "expected an array of families"))?;
    let mut families = Vec::with_capacity(fams.len());
    for (i, fam) in fams.iter().enumerate() {
        let path = format!("$.families[{i}]");
        let items = fam.as_array().ok_or_else(|| Error::format(&path, "expected an array"))?;
        let mut family = Vec::with_capacity(items.len());
        for (j, key) in items.iter().enumerate() {
            let key = key.as_str().ok_or_else(|| Error::format(format!("{path}[{j}]"), "expected a string"))?;
            family.push(
                ground
                    .parse_subset(key)
                    .map_err(|e| Error::format(format!("{path}[{j}]"), e.to_string()))?,
            );
        }
        families.push(family);
    }
    let chain = LevelChain::new(ground.len(), families)?;
    Ok((ground, chain))
}

pub fn levels_to_json(f: &SetFunction, levels: &LevelValues) -> Value {
    json!({
        "mu": levels.mu.iter().map(|v| value_to_json(f.codomain(), v)).collect::<Vec<_>>(),
        "p": levels.p(),
    })
}
