//! Small named functions on `E = {a, b}` used throughout the tests and docs.
//!
//! Tables are indexed by mask: `[f(∅), f({a}), f({b}), f({a,b})]`.

use crate::setfn::SetFunction;

fn two(values: [i64; 4]) -> SetFunction {
    SetFunction::ints(&values).expect("fixture tables have 4 entries")
}

/// The constant zero function.
pub fn f_const() -> SetFunction {
    two([0, 0, 0, 0])
}

/// Injective, (Q4) but not (Q3): `f({a}) < f(∅) < f({b}) < f({a,b})`.
pub fn f_r3() -> SetFunction {
    two([1, 0, 2, 3])
}

/// Cut function of the single edge `a - b`.
pub fn f_cut() -> SetFunction {
    two([0, 1, 1, 0])
}

/// (Q1) but not (Q2).
pub fn f_q1nq2() -> SetFunction {
    two([1, 0, 2, 2])
}

/// Cardinality `|X|`.
pub fn f_card() -> SetFunction {
    two([0, 1, 1, 2])
}
