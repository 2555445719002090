//! The JSON algebra file:
//!
//! ```json
//! { "field": "Q", "table": { "e1e1": ["1", "0"], "e1e2": ["0", "0"],
//!                            "e2e1": ["0", "0"], "e2e2": ["0", "1"] } }
//! ```
//!
//! `field` is `"Q"`, `"F2"`, `"Fp:<p>"` or `{"p": <p>}`. Unknown keys are
//! rejected. Syntax problems come back as [`Error::Format`]; a well-formed
//! file naming an unsupported field comes back as [`Error::Field`].

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Algebra, Vector2};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct PrimeTag {
    p: u64,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum FieldTag {
    Name(String),
    Prime(PrimeTag),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Table {
    e1e1: [String; 2],
    e1e2: [String; 2],
    e2e1: [String; 2],
    e2e2: [String; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    field: FieldTag,
    table: Table,
}

pub fn field_from_tag(tag: &Value) -> Result<FieldSpec> {
    let tag: FieldTag =
        serde_json::from_value(tag.clone()).map_err(|e| Error::Format(format!("field: {e}")))?;
    resolve_field(tag)
}

fn resolve_field(tag: FieldTag) -> Result<FieldSpec> {
    Ok(match tag {
        FieldTag::Name(name) => name.parse()?,
        FieldTag::Prime(PrimeTag { p }) => FieldSpec::prime(p)?,
    })
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let field = resolve_field(file.field)?;
    let t = &file.table;
    let mut products = Vec::with_capacity(4);
    for (key, pair) in [("e1e1", &t.e1e1), ("e1e2", &t.e1e2), ("e2e1", &t.e2e1), ("e2e2", &t.e2e2)] {
        let parse = |s: &str| {
            field
                .parse_scalar(s)
                .map_err(|e| Error::Format(format!("table.{key}: {e}")))
        };
        products.push(Vector2::new(parse(&pair[0])?, parse(&pair[1])?));
    }
    let products: [Vector2; 4] = products.try_into().expect("four products");
    Algebra::new(field, products)
}

pub fn field_json(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Rational => json!("Q"),
        FieldSpec::Prime(2) => json!("F2"),
        FieldSpec::Prime(p) => json!({ "p": p }),
    }
}

pub fn algebra_json(alg: &Algebra) -> Value {
    let cell = |i, j| {
        let v: &Vector2 = alg.product(i, j);
        json!([v.x1.to_string(), v.x2.to_string()])
    };
    json!({
        "field": field_json(alg.field()),
        "table": {
            "e1e1": cell(1, 1),
            "e1e2": cell(1, 2),
            "e2e1": cell(2, 1),
            "e2e2": cell(2, 2),
        }
    })
}
