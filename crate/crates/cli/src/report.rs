//! Report builders: each wraps one core operation and renders its result.

use serde_json::{json, Map, Value};
use twoalg_core::f2::{enumerate_orbits, format_seq4};
use twoalg_core::io::{algebra_json, field_json};
use twoalg_core::iso::{classify_exhaustive, decide, fingerprint as compute_fingerprint};
use twoalg_core::jordan::{catalog as jordan_catalog, is_jordan_pointwise, is_jordan_symbolic, jordan_defect};
use twoalg_core::reduction::{classify as compute_classify, representative};
use twoalg_core::{Algebra, BasisChange, ClassLabel, Error, Family, FieldSpec, IdempotentSet, Scalar, Vector2};

use crate::{Failure, Output};

fn matrix_json(m: &BasisChange) -> Value {
    let [[a, b], [c, d]] = m.rows();
    json!([[a.to_string(), b.to_string()], [c.to_string(), d.to_string()]])
}

fn vector_json(v: &Vector2) -> Value {
    json!([v.x1.to_string(), v.x2.to_string()])
}

fn params_json(label: &ClassLabel) -> Value {
    let mut m = Map::new();
    for (name, v) in label.named_params() {
        m.insert(name.to_string(), json!(v.to_string()));
    }
    Value::Object(m)
}

pub fn classify(alg: &Algebra) -> Result<Output, Failure> {
    let (label, trace) = compute_classify(alg)?;
    let witness = trace.witness();
    let steps = trace.step_names();
    let json = json!({
        "family": label.family.name(),
        "params": params_json(&label),
        "witness": matrix_json(&witness),
        "trace": steps,
        "residual_note": label.residual_note(),
    });
    let text = format!(
        "label: {label}\nwitness: {witness}\ntrace: {}\nnote: {}\n",
        if steps.is_empty() { "(none)".to_string() } else { steps.join(", ") },
        label.residual_note()
    );
    Ok(Output { json, text })
}

pub fn iso(a: &Algebra, b: &Algebra) -> Result<Output, Failure> {
    let d = decide(a, b)?;
    let verdict = match d.isomorphic {
        Some(true) => "isomorphic",
        Some(false) => "not isomorphic",
        None => "undecided",
    };
    let mut text = format!("{verdict} (by {})\n", d.method);
    if let Some(w) = &d.witness {
        text.push_str(&format!("witness: {}\n", w.matrix));
    }
    let json = json!({
        "isomorphic": d.isomorphic,
        "method": d.method,
        "witness": d.witness.as_ref().map(|w| matrix_json(&w.matrix)),
    });
    Ok(Output { json, text })
}

pub fn enumerate_f2() -> Output {
    let census = enumerate_orbits();
    let s = census.summary();
    let orbits: Vec<Value> = census
        .orbits
        .iter()
        .map(|o| {
            json!({
                "representative": format_seq4(&o.representative),
                "members": o.members.iter().map(format_seq4).collect::<Vec<_>>(),
                "isotropy": format!("{:?}", o.isotropy),
            })
        })
        .collect();
    let json = json!({
        "class_count": s.class_count,
        "histogram": s.histogram,
        "burnside_fixed_points": s.burnside_fixed_points,
        "burnside_balances": census.burnside_balances(),
        "orbits": orbits,
    });
    let mut text = format!(
        "classes: {}\nhistogram (size: count): {:?}\nBurnside fixed points: {:?}\n",
        s.class_count, s.histogram, s.burnside_fixed_points
    );
    for line in census.table_lines() {
        text.push_str(&line);
        text.push('\n');
    }
    Output { json, text }
}

pub fn enumerate_fq(field: FieldSpec, expensive: bool) -> Result<Output, Failure> {
    let part = classify_exhaustive(field, expensive)?;
    let s = part.summary();
    let lines = part.report_lines();
    let json = json!({
        "field": field_json(field),
        "group_size": part.group_size,
        "class_count": s.class_count,
        "histogram": s.histogram,
        "orbits": lines,
    });
    let mut text = format!(
        "field: {field}\ngroup order: {}\nclasses: {}\nhistogram (size: count): {:?}\n",
        part.group_size, s.class_count, s.histogram
    );
    for line in lines {
        text.push_str(&line);
        text.push('\n');
    }
    Ok(Output { json, text })
}

/// Primes at which the pointwise check runs: the field's own prime, or for
/// ℚ the small odd primes where every constant reduces.
fn pointwise_primes(alg: &Algebra) -> Vec<u32> {
    match alg.field() {
        FieldSpec::Prime(p) if p <= 31 => vec![p],
        FieldSpec::Prime(_) => vec![],
        FieldSpec::Rational => [3, 5, 7]
            .into_iter()
            .filter(|&p| alg.constants().iter().all(|c| c.reduce_mod(p).is_some()))
            .collect(),
    }
}

fn reduce(alg: &Algebra, p: u32) -> Algebra {
    match alg.field() {
        FieldSpec::Rational => {
            let c = alg.constants().map(|c| c.reduce_mod(p).expect("checked by pointwise_primes"));
            Algebra::from_constants(FieldSpec::Prime(p), c).expect("one field")
        }
        _ => alg.clone(),
    }
}

pub fn jordan(alg: &Algebra) -> Result<Output, Failure> {
    let symbolic = is_jordan_symbolic(alg)?;
    let mut pointwise = Map::new();
    let mut text = format!("commutative: {}\njordan (symbolic): {symbolic}\n", alg.is_commutative());
    for p in pointwise_primes(alg) {
        let holds = is_jordan_pointwise(&reduce(alg, p))?;
        pointwise.insert(p.to_string(), json!(holds));
        text.push_str(&format!("jordan (pointwise mod {p}): {holds}\n"));
    }
    let failing = if alg.is_commutative() && !symbolic { jordan_defect(alg)? } else { None };
    if let Some(fc) = &failing {
        text.push_str(&format!("failing coefficient: {} of {} = {}\n", fc.coordinate, fc.monomial, fc.value));
    }
    let mut json = json!({
        "algebra": algebra_json(alg),
        "commutative": alg.is_commutative(),
        "jordan_symbolic": symbolic,
        "jordan_pointwise_p": pointwise,
    });
    if let Some(fc) = failing {
        json["failing_coefficient"] = json!({
            "coordinate": fc.coordinate,
            "monomial": fc.monomial,
            "value": fc.value.to_string(),
        });
    }
    Ok(Output { json, text })
}

pub fn idempotents(alg: &Algebra) -> Output {
    match alg.idempotents() {
        IdempotentSet::Finite(pts) => {
            let mut text = format!("{} idempotent(s)\n", pts.len());
            for v in &pts {
                text.push_str(&format!("{v}\n"));
            }
            Output {
                json: json!({ "kind": "finite", "points": pts.iter().map(vector_json).collect::<Vec<_>>() }),
                text,
            }
        }
        IdempotentSet::Line { base, direction } => Output {
            json: json!({ "kind": "line", "base": vector_json(&base), "direction": vector_json(&direction) }),
            text: format!("line: {base} + t {direction}\n"),
        },
        IdempotentSet::Plane => Output {
            json: json!({ "kind": "plane" }),
            text: "every nonzero vector\n".into(),
        },
    }
}

pub fn fingerprint(alg: &Algebra) -> Output {
    let fp = compute_fingerprint(alg);
    let json = serde_json::to_value(fp).expect("serializable");
    let text = format!(
        "commutative: {}\nanticommutative: {}\nassociative: {}\nunital: {}\nimage dimension: {}\n\
         skew part trivial: {}\nidempotents: {}\nsquare span dimension: {}\n",
        fp.commutative,
        fp.anticommutative,
        fp.associative,
        fp.unital,
        fp.image_dim,
        fp.skew_trivial,
        fp.idempotent_profile,
        fp.square_map_rank
    );
    Output { json, text }
}

/// Splits `name=value` arguments.
fn parse_params(field: FieldSpec, params: &[String]) -> Result<Vec<(String, Scalar)>, Failure> {
    params
        .iter()
        .map(|p| {
            let (name, value) = p
                .split_once('=')
                .ok_or_else(|| Failure::input(format!("parameter {p:?} is not name=value")))?;
            let v = field
                .parse_scalar(value)
                .map_err(|e| Failure::input(format!("parameter {name}: {e}")))?;
            Ok((name.to_string(), v))
        })
        .collect()
}

pub fn catalog(name: &str, params: &[String], field: FieldSpec) -> Result<Output, Failure> {
    let alg = match jordan_catalog(field).into_iter().find(|(n, _)| n.eq_ignore_ascii_case(name)) {
        Some((_, alg)) => {
            if !params.is_empty() {
                return Err(Failure::input(format!("{name} takes no parameters")));
            }
            alg
        }
        None => {
            let family: Family = name.parse().map_err(|e: Error| Failure::from(e))?;
            let named = parse_params(field, params)?;
            representative(&ClassLabel::from_named(field, family, &named)?)?
        }
    };
    let json = algebra_json(&alg);
    let text = format!("{}\n", serde_json::to_string(&json).expect("serializable"));
    Ok(Output { json, text })
}
