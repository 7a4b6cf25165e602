//! Stable JSON output: every object carries a schema version and a
//! provenance tag; rationals are exact strings, never floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};
use tropos_core::abelian::GroupElement;
use tropos_core::geometry::{Constraint, Item, Polyhedron, Rel};
use tropos_core::tropical::{CellLabel, Provenance, SphericalSet, TropicalRegion, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

pub fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn provenance_str(p: Provenance) -> &'static str {
    match p {
        Provenance::Exact => "EXACT",
        Provenance::UpperBound => "UPPER_BOUND",
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::Unknown => "UNKNOWN",
    }
}

fn exponents_json(g: &GroupElement) -> Value {
    Value::Array(g.free.iter().map(|e| Value::String(e.to_string())).collect())
}

fn constraint_json(c: &Constraint) -> Value {
    json!({
        "coeffs": c.coeffs.iter().map(rational_str).collect::<Vec<_>>(),
        "constant": rational_str(&c.constant),
        "rel": match c.rel { Rel::Eq => "eq", Rel::Ge => "ge", Rel::Gt => "gt" },
    })
}

fn polyhedron_json(p: &Polyhedron) -> Value {
    Value::Array(p.constraints.iter().map(constraint_json).collect())
}

pub fn region_json(r: &TropicalRegion) -> Value {
    let cells: Vec<Value> = r
        .cells
        .iter()
        .map(|c| {
            let mut obj = serde_json::Map::new();
            match &c.label {
                CellLabel::Tie(elems) => {
                    obj.insert(
                        "tie_set".into(),
                        Value::Array(elems.iter().map(exponents_json).collect()),
                    );
                }
                CellLabel::UnitWitness(u) => {
                    obj.insert("unit_witness".into(), exponents_json(u));
                }
            }
            obj.insert("constraints".into(), polyhedron_json(&c.poly));
            Value::Object(obj)
        })
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "kind": "region",
        "source": r.source,
        "provenance": provenance_str(r.provenance),
        "dim": r.dim,
        "cells": cells,
    })
}

fn dir_json(x: &BigInt, y: &BigInt) -> Value {
    json!([x.to_string(), y.to_string()])
}

pub fn sphere_json(s: &SphericalSet) -> Value {
    let body = match s {
        SphericalSet::Dim0 => json!({"dim": 0}),
        SphericalSet::Dim1 { neg, pos } => json!({"dim": 1, "neg": neg, "pos": pos}),
        SphericalSet::Dim2(c) => {
            let items: Vec<Value> = c
                .items
                .iter()
                .map(|item| match item {
                    Item::Point(p) => json!({"point": dir_json(&p.x, &p.y)}),
                    Item::Arc(a) => json!({"arc": {
                        "start": dir_json(&a.start.x, &a.start.y),
                        "end": dir_json(&a.end.x, &a.end.y),
                        "start_closed": a.start_closed,
                        "end_closed": a.end_closed,
                    }}),
                })
                .collect();
            json!({"dim": 2, "full": c.full, "items": items})
        }
        SphericalSet::General { dim, cells } => json!({
            "dim": dim,
            "cells": cells.iter().map(polyhedron_json).collect::<Vec<_>>(),
        }),
    };
    let mut obj = body.as_object().unwrap().clone();
    obj.insert("schema".into(), json!(SCHEMA_VERSION));
    obj.insert("kind".into(), json!("sphere"));
    Value::Object(obj)
}

pub fn to_bytes(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("serializable");
    out.push(b'\n');
    out
}
