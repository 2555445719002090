#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use twoalg_core::{Algebra, BasisChange, FieldSpec, Scalar, Vector2};

pub const Q: FieldSpec = FieldSpec::Rational;

pub fn q(s: &str) -> Scalar {
    Q.parse_scalar(s).unwrap()
}

pub fn rational() -> impl Strategy<Value = Scalar> + Clone {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Q.ratio(n, d))
}

pub fn residue(p: u32) -> impl Strategy<Value = Scalar> + Clone {
    (0..p as i64).prop_map(move |n| FieldSpec::Prime(p).from_i64(n))
}

pub fn algebra_over(scalar: impl Strategy<Value = Scalar> + Clone, field: FieldSpec) -> impl Strategy<Value = Algebra> {
    proptest::array::uniform8(scalar).prop_map(move |c| Algebra::from_constants(field, c).unwrap())
}

pub fn rational_algebra() -> impl Strategy<Value = Algebra> {
    algebra_over(rational(), Q)
}

/// Mostly sparse algebras, so that degenerate branches get exercised.
pub fn sparse_rational_algebra() -> impl Strategy<Value = Algebra> {
    let entry = prop_oneof![3 => Just(Q.zero()), 1 => Just(Q.one()), 2 => rational()];
    algebra_over(entry, Q)
}

pub fn rational_matrix() -> impl Strategy<Value = BasisChange> {
    proptest::array::uniform4(rational())
        .prop_filter_map("singular", |[a, b, c, d]| BasisChange::new(a, b, c, d).ok())
}

pub fn prime_matrix(p: u32) -> impl Strategy<Value = BasisChange> {
    proptest::array::uniform4(residue(p))
        .prop_filter_map("singular", |[a, b, c, d]| BasisChange::new(a, b, c, d).ok())
}

pub fn rational_vector() -> impl Strategy<Value = Vector2> {
    (rational(), rational()).prop_map(|(a, b)| Vector2::new(a, b))
}

pub fn random_prime_algebra(rng: &mut impl Rng, p: u32) -> Algebra {
    let f = FieldSpec::Prime(p);
    Algebra::from_i64(f, std::array::from_fn(|_| rng.gen_range(0..p as i64)))
}

pub fn random_rational(rng: &mut impl Rng) -> Scalar {
    Q.ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn random_rational_algebra(rng: &mut impl Rng) -> Algebra {
    Algebra::from_constants(Q, std::array::from_fn(|_| random_rational(rng))).unwrap()
}

pub fn random_rational_matrix(rng: &mut impl Rng) -> BasisChange {
    loop {
        let [a, b, c, d] = std::array::from_fn(|_| random_rational(rng));
        if let Ok(m) = BasisChange::new(a, b, c, d) {
            return m;
        }
    }
}

/// Compares classifier labels with an orbit partition. Returns the orbits
/// split across labels and the labels shared by orbits.
pub fn label_disagreements(
    part: &twoalg_core::iso::OrbitPartition,
    labels: &[twoalg_core::ClassLabel],
) -> (Vec<String>, Vec<String>) {
    use std::collections::HashMap;
    let mut label_of_orbit: HashMap<u32, &twoalg_core::ClassLabel> = HashMap::new();
    let mut orbit_of_label: HashMap<&twoalg_core::ClassLabel, u32> = HashMap::new();
    let (mut split, mut merged) = (Vec::new(), Vec::new());
    for (code, (&orbit, label)) in part.orbit_of.iter().zip(labels).enumerate() {
        match label_of_orbit.get(&orbit) {
            Some(l) if *l != label => split.push(format!("code {code}: {l} vs {label}")),
            Some(_) => {}
            None => {
                label_of_orbit.insert(orbit, label);
            }
        }
        match orbit_of_label.get(label) {
            Some(&o) if o != orbit => merged.push(format!("{label}: orbits {o} and {orbit}")),
            Some(_) => {}
            None => {
                orbit_of_label.insert(label, orbit);
            }
        }
    }
    (split, merged)
}

/// Classifies every code of `F_q`, checking each witness on the way.
pub fn classify_all(field: FieldSpec, codes: impl Iterator<Item = u32>) -> Vec<twoalg_core::ClassLabel> {
    use twoalg_core::reduction::{classify, representative};
    codes
        .map(|code| {
            let alg = twoalg_core::iso::decode(field, code).unwrap();
            let (label, trace) = classify(&alg).unwrap();
            assert_eq!(alg.transform(&trace.witness()).unwrap(), representative(&label).unwrap(), "witness for {alg}");
            label
        })
        .collect()
}
