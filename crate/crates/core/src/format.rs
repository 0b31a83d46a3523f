//! JSON encodings of set functions, values, subsets and reports.
//!
//! A set function file looks like
//!
//! ```json
//! {"ground_set": ["a", "b"], "codomain": {"kind": "integer"}, "values_dense": [1, 0, 2, 3]}
//! ```
//!
//! where `values_dense[i]` is the value at mask `i`. The sparse alternative
//! replaces `values_dense` by `"values": {"": 1, "a": 0, "b": 2, "a,b": 3}`.
//! Integers are JSON integers, rationals are `[num, den]` and labels are
//! strings drawn from `codomain.label_order`.

use serde_json::{json, Map, Value};

use crate::class::{ClassReport, ConditionWitness};
use crate::error::{Error, Result};
use crate::setfn::SetFunction;
use crate::subset::{GroundSet, Subset};
use crate::value::{Codomain, OrdinalValue};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TableForm {
    #[default]
    Dense,
    Sparse,
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_set_function(text: &str) -> Result<SetFunction> {
    set_function_from_json(&parse_json(text)?)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::format(path, format!("missing field `{key}`")))
}

pub fn ground_from_json(v: &Value, path: &str) -> Result<GroundSet> {
    let items = v.as_array().ok_or_else(|| Error::format(path, "expected an array of element names"))?;
    let names = items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            item.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::format(format!("{path}[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>>>()?;
    GroundSet::new(names).map_err(|e| Error::format(path, e.to_string()))
}

pub fn codomain_from_json(v: &Value, path: &str) -> Result<Codomain> {
    let obj = v.as_object().ok_or_else(|| Error::format(path, "expected an object"))?;
    let kind = field(obj, "kind", path)?
        .as_str()
        .ok_or_else(|| Error::format(format!("{path}.kind"), "expected a string"))?;
    match kind {
        "integer" => Ok(Codomain::Integer),
        "rational" => Ok(Codomain::Rational),
        "labels" => {
            let lpath = format!("{path}.label_order");
            let order = field(obj, "label_order", path)?
                .as_array()
                .ok_or_else(|| Error::format(&lpath, "expected an array of labels"))?
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    l.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| Error::format(format!("{lpath}[{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>>>()?;
            Codomain::labels(order).map_err(|e| Error::format(lpath, e.to_string()))
        }
        other => Err(Error::format(format!("{path}.kind"), format!("unknown codomain kind `{other}`"))),
    }
}

pub fn codomain_to_json(c: &Codomain) -> Value {
    match c {
        Codomain::Labels(order) => json!({"kind": "labels", "label_order": order}),
        other => json!({"kind": other.kind()}),
    }
}

pub fn value_from_json(codomain: &Codomain, v: &Value, path: &str) -> Result<OrdinalValue> {
    let bad = |what: &str| Error::format(path, format!("expected {what} in the {} codomain", codomain.kind()));
    match codomain {
        Codomain::Integer => v.as_i64().map(OrdinalValue::Int).ok_or_else(|| bad("an integer")),
        Codomain::Rational => {
            let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("[num, den]"))?;
            let (num, den) = match (pair[0].as_i64(), pair[1].as_i64()) {
                (Some(n), Some(d)) => (n, d),
                _ => return Err(bad("integer [num, den]")),
            };
            OrdinalValue::rational(num, den).map_err(|e| Error::format(path, e.to_string()))
        }
        Codomain::Labels(_) => {
            let label = v.as_str().ok_or_else(|| bad("a label string"))?;
            codomain
                .label_index(label)
                .map(OrdinalValue::Label)
                .ok_or_else(|| Error::format(path, format!("label `{label}` is not in label_order")))
        }
    }
}

pub fn value_to_json(codomain: &Codomain, v: &OrdinalValue) -> Value {
    match v {
        OrdinalValue::Int(x) => json!(x),
        OrdinalValue::Rat(r) => json!([r.numer(), r.denom()]),
        OrdinalValue::Label(_) => json!(codomain.display(v)),
    }
}

pub fn set_function_from_json(v: &Value) -> Result<SetFunction> {
    let obj = v.as_object().ok_or_else(|| Error::format("$", "expected an object"))?;
    let ground = ground_from_json(field(obj, "ground_set", "$")?, "$.ground_set")?;
    let codomain = codomain_from_json(field(obj, "codomain", "$")?, "$.codomain")?;
    let values = match (obj.get("values_dense"), obj.get("values")) {
        (Some(_), Some(_)) => {
            return Err(Error::format("$", "give either `values_dense` or `values`, not both"))
        }
        (Some(dense), None) => {
            let items = dense
                .as_array()
                .ok_or_else(|| Error::format("$.values_dense", "expected an array"))?;
            if items.len() != ground.power_set_len() {
                return Err(Error::format(
                    "$.values_dense",
                    format!("expected {} values, got {}", ground.power_set_len(), items.len()),
                ));
            }
            items
                .iter()
                .enumerate()
                .map(|(i, item)| value_from_json(&codomain, item, &format!("$.values_dense[{i}]")))
                .collect::<Result<Vec<_>>>()?
        }
        (None, Some(sparse)) => {
            let map = sparse.as_object().ok_or_else(|| Error::format("$.values", "expected an object"))?;
            let mut slots: Vec<Option<OrdinalValue>> = vec![None; ground.power_set_len()];
            for (key, item) in map {
                let path = format!("$.values[{key:?}]");
                let s = ground.parse_subset(key).map_err(|e| Error::format(&path, e.to_string()))?;
                if slots[s.index()].is_some() {
                    return Err(Error::format(path, "subset given twice"));
                }
                slots[s.index()] = Some(value_from_json(&codomain, item, &path)?);
            }
            slots
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    v.ok_or_else(|| {
                        Error::format(
                            "$.values",
                            format!("missing subset {:?}", ground.format_subset(Subset(i as u32))),
                        )
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        (None, None) => return Err(Error::format("$", "missing field `values_dense` or `values`")),
    };
    SetFunction::new(ground, codomain, values)
}

pub fn set_function_to_json(f: &SetFunction, form: TableForm) -> Value {
    let codomain = f.codomain();
    let mut obj = Map::new();
    obj.insert("ground_set".into(), json!(f.ground().elements()));
    obj.insert("codomain".into(), codomain_to_json(codomain));
    match form {
        TableForm::Dense => {
            let vals: Vec<Value> = f.values().iter().map(|v| value_to_json(codomain, v)).collect();
            obj.insert("values_dense".into(), Value::Array(vals));
        }
        TableForm::Sparse => {
            let vals: Map<String, Value> = f
                .ground()
                .subsets()
                .map(|s| (f.ground().format_subset(s), value_to_json(codomain, f.at(s))))
                .collect();
            obj.insert("values".into(), Value::Object(vals));
        }
    }
    Value::Object(obj)
}

/// A subset as its comma-joined key.
pub fn subset_to_json(ground: &GroundSet, s: Subset) -> Value {
    json!(ground.format_subset(s))
}

/// A subset as a list of element names.
pub fn subset_to_name_list(ground: &GroundSet, s: Subset) -> Value {
    json!(ground.names(s))
}

pub fn witness_to_json(f: &SetFunction, w: &ConditionWitness) -> Value {
    json!({
        "condition": w.condition.name(),
        "X": subset_to_json(f.ground(), w.x),
        "Y": subset_to_json(f.ground(), w.y),
        "values": w.values().iter().map(|v| value_to_json(f.codomain(), v)).collect::<Vec<_>>(),
    })
}

/// `{"Q1": true, ..., "OrdinarySubmodular": null, "witnesses": {...}}`; the
/// `witnesses` object is present only when asked for.
pub fn class_report_to_json(f: &SetFunction, report: &ClassReport, witnesses: bool) -> Value {
    let mut obj = Map::new();
    for (cond, outcome) in report.iter() {
        obj.insert(cond.name().into(), json!(outcome.flag()));
    }
    if witnesses {
        let ws: Map<String, Value> = report
            .iter()
            .filter_map(|(c, o)| o.witness().map(|w| (c.name().to_owned(), witness_to_json(f, w))))
            .collect();
        obj.insert("witnesses".into(), Value::Object(ws));
    }
    Value::Object(obj)
}
