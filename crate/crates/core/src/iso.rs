//! Isomorphism by exhaustion over small prime fields, and cheap invariants
//! that hold over any field.
//!
//! The orbit census packs an algebra over `F_q` into a single integer code,
//! the base-`q` number whose digits are `α1, β1, …, α4, β4` with `α1` most
//! significant, so numeric order on codes is lexicographic order on tuples.
//! Each group element acts on codes through an 8×8 matrix mod `q` computed
//! here from `μ'(ei, ej) = M⁻¹ μ(M ei, M ej)`; this path shares no code with
//! [`Algebra::transform`].

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, BasisChange, IdempotentSet};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Default upper bound on the field order for brute-force searches.
pub const DEFAULT_MAX_ORDER: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IdempotentProfile {
    Count(usize),
    Line,
    Plane,
}

impl fmt::Display for IdempotentProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdempotentProfile::Count(n) => write!(f, "Count({n})"),
            IdempotentProfile::Line => f.write_str("Line"),
            IdempotentProfile::Plane => f.write_str("Plane"),
        }
    }
}

/// Isomorphism invariants; differing fingerprints rule out an isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantFingerprint {
    pub commutative: bool,
    pub anticommutative: bool,
    pub associative: bool,
    pub unital: bool,
    pub image_dim: u8,
    /// The skew part vanishes. In characteristic 2 the skew part is not
    /// defined and this records commutativity instead.
    pub skew_trivial: bool,
    pub idempotent_profile: IdempotentProfile,
    /// Dimension of the span of all squares `μ(v, v)`.
    pub square_map_rank: u8,
}

pub fn fingerprint(alg: &Algebra) -> InvariantFingerprint {
    let p = alg.predicates();
    let idempotent_profile = match alg.idempotents() {
        IdempotentSet::Finite(v) => IdempotentProfile::Count(v.len()),
        IdempotentSet::Line { .. } => IdempotentProfile::Line,
        IdempotentSet::Plane => IdempotentProfile::Plane,
    };
    InvariantFingerprint {
        commutative: p.commutative,
        anticommutative: p.anticommutative,
        associative: p.associative,
        unital: p.unital,
        image_dim: p.image_dim,
        skew_trivial: p.commutative,
        idempotent_profile,
        square_map_rank: alg.square_span_dim(),
    }
}

/// A basis change with `a.transform(&matrix) == b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub matrix: BasisChange,
}

fn small_field(field: FieldSpec, max_order: u32, operation: &'static str) -> Result<u32> {
    match field.order() {
        Some(q) if q <= max_order => Ok(q),
        _ => Err(Error::UnsupportedField { field, operation }),
    }
}

/// Scans `GL(2, F_q)` in lexicographic order of `(a, b, c, d)` and returns
/// the first matrix carrying `a` to `b`. Fields larger than
/// [`DEFAULT_MAX_ORDER`] are refused; see [`isomorphic_bruteforce_bounded`].
pub fn isomorphic_bruteforce(a: &Algebra, b: &Algebra) -> Result<Option<IsoWitness>> {
    isomorphic_bruteforce_bounded(a, b, DEFAULT_MAX_ORDER)
}

pub fn isomorphic_bruteforce_bounded(a: &Algebra, b: &Algebra, max_order: u32) -> Result<Option<IsoWitness>> {
    if a.field() != b.field() {
        return Err(crate::field::FieldError::Mismatch {
            left: a.field(),
            right: b.field(),
        }
        .into());
    }
    small_field(a.field(), max_order, "brute-force isomorphism")?;
    for m in BasisChange::all_invertible(a.field())? {
        if &a.transform(&m)? == b {
            return Ok(Some(IsoWitness { matrix: m }));
        }
    }
    Ok(None)
}

/// `GL(2, F_q)` acting on packed algebra codes.
pub struct CodeAction {
    q: u32,
    /// Matrices `[a, b, c, d]` in lexicographic order.
    matrices: Vec<[u32; 4]>,
    /// Row-major 8×8 action of each matrix on the constant vector.
    maps: Vec<[u32; 64]>,
    powers: [u32; 8],
}

impl CodeAction {
    pub fn new(q: u32) -> Self {
        let mut matrices = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        if (a * d + q * q - b * c) % q != 0 {
                            matrices.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let maps = matrices.iter().map(|m| Self::linear_map(q, m)).collect();
        let mut powers = [1u32; 8];
        for k in (0..7).rev() {
            powers[k] = powers[k + 1] * q;
        }
        CodeAction { q, matrices, maps, powers }
    }

    fn linear_map(q: u32, m: &[u32; 4]) -> [u32; 64] {
        let [a, b, c, d] = *m;
        let mm = [[a, b], [c, d]];
        let delta = (a * d + q * q - b * c) % q;
        let dinv = (1..q).find(|x| x * delta % q == 1).expect("invertible");
        let inv = [
            [d * dinv % q, (q - b) % q * dinv % q],
            [(q - c) % q * dinv % q, a * dinv % q],
        ];
        let mut out = [0u32; 64];
        // μ'_{ij}^k = Σ Minv[k][s] M[p][i] M[r][j] μ_{pr}^s
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let row = 2 * (2 * i + j) + k;
                    for p in 0..2 {
                        for r in 0..2 {
                            for s in 0..2 {
                                let col = 2 * (2 * p + r) + s;
                                let v = inv[k][s] * mm[p][i] % q * mm[r][j] % q;
                                out[8 * row + col] = (out[8 * row + col] + v) % q;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn group_size(&self) -> usize {
        self.matrices.len()
    }

    pub fn space_size(&self) -> u32 {
        self.powers[0] * self.q
    }

    pub fn matrix(&self, g: usize) -> [u32; 4] {
        self.matrices[g]
    }

    pub fn digits(&self, code: u32) -> [u32; 8] {
        std::array::from_fn(|k| code / self.powers[k] % self.q)
    }

    pub fn code(&self, digits: &[u32; 8]) -> u32 {
        digits.iter().zip(self.powers).map(|(d, p)| d * p).sum()
    }

    pub fn apply(&self, g: usize, code: u32) -> u32 {
        let x = self.digits(code);
        let map = &self.maps[g];
        let mut out = 0;
        for row in 0..8 {
            let mut acc = 0;
            for col in 0..8 {
                acc += map[8 * row + col] * x[col];
            }
            out += (acc % self.q) * self.powers[row];
        }
        out
    }
}

/// Packs an algebra over `F_q` into its code.
pub fn encode(alg: &Algebra) -> Option<u32> {
    let q = alg.field().order()?;
    let mut code = 0u32;
    for c in alg.constants() {
        code = code.checked_mul(q)?.checked_add(c.residue()?)?;
    }
    Some(code)
}

pub fn decode(field: FieldSpec, code: u32) -> Option<Algebra> {
    let q = field.order()?;
    let mut digits = [0i64; 8];
    let mut rest = code;
    for k in (0..8).rev() {
        digits[k] = (rest % q) as i64;
        rest /= q;
    }
    (rest == 0).then(|| Algebra::from_i64(field, digits))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Code of the lexicographically smallest member.
    pub min: u32,
    pub size: usize,
    pub stabilizer: usize,
}

/// All `q⁸` algebras over `F_q` split into `GL(2, F_q)` orbits.
pub struct OrbitPartition {
    pub field: FieldSpec,
    pub group_size: usize,
    /// Sorted by `min`.
    pub orbits: Vec<Orbit>,
    /// Orbit index of every code.
    pub orbit_of: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSummary {
    pub class_count: usize,
    pub histogram: BTreeMap<usize, usize>,
}

impl OrbitPartition {
    pub fn class_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for o in &self.orbits {
            *h.entry(o.size).or_insert(0) += 1;
        }
        h
    }

    pub fn summary(&self) -> PartitionSummary {
        PartitionSummary {
            class_count: self.class_count(),
            histogram: self.histogram(),
        }
    }

    /// One line per orbit: `min=<8 scalars> size=<n> stabilizer=<m>`.
    pub fn report_lines(&self) -> Vec<String> {
        let q = self.field.order().expect("finite");
        self.orbits
            .iter()
            .map(|o| {
                let mut digits = Vec::with_capacity(8);
                let mut rest = o.min;
                for _ in 0..8 {
                    digits.push(rest % q);
                    rest /= q;
                }
                digits.reverse();
                let joined: Vec<String> = digits.iter().map(u32::to_string).collect();
                format!("min={} size={} stabilizer={}", joined.join(","), o.size, o.stabilizer)
            })
            .collect()
    }

    /// The member codes of every orbit, each list sorted.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.orbits.len()];
        for (code, &o) in self.orbit_of.iter().enumerate() {
            out[o as usize].push(code as u32);
        }
        out
    }
}

/// Orbit census over `F_2` or `F_3`; `F_5` only with `expensive` set.
///
/// Codes are scanned in increasing order; the first unvisited code is the
/// minimum of its orbit, whose members are found by applying every group
/// element to it.
pub fn classify_exhaustive(field: FieldSpec, expensive: bool) -> Result<OrbitPartition> {
    let q = small_field(field, DEFAULT_MAX_ORDER, "exhaustive orbit census")?;
    if q == 5 && !expensive {
        return Err(Error::Precondition(
            "the F5 census scans 390625 algebras; enable the expensive flag".into(),
        ));
    }
    let action = CodeAction::new(q);
    let space = action.space_size();
    let mut orbit_of = vec![u32::MAX; space as usize];
    let mut orbits = Vec::new();
    for code in 0..space {
        if orbit_of[code as usize] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        let mut size = 0;
        let mut stabilizer = 0;
        for g in 0..action.group_size() {
            let image = action.apply(g, code);
            if image == code {
                stabilizer += 1;
            }
            let slot = &mut orbit_of[image as usize];
            if *slot == u32::MAX {
                *slot = id;
                size += 1;
            }
        }
        orbits.push(Orbit { min: code, size, stabilizer });
    }
    Ok(OrbitPartition {
        field,
        group_size: action.group_size(),
        orbits,
        orbit_of,
    })
}

/// Outcome of [`decide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoDecision {
    /// `None` when the method cannot tell.
    pub isomorphic: Option<bool>,
    pub witness: Option<IsoWitness>,
    /// `"bruteforce"` or `"normal-form"`.
    pub method: &'static str,
}

/// Decides isomorphism: by brute force over fields of order at most
/// [`DEFAULT_MAX_ORDER`], otherwise by comparing normal forms.
///
/// Equal normal forms give the witness `w_a · w_b⁻¹`. Different normal forms
/// prove non-isomorphism unless one label depends on the input basis (see
/// [`crate::reduction::label_is_invariant`]); then the answer is `None`.
pub fn decide(a: &Algebra, b: &Algebra) -> Result<IsoDecision> {
    if a.field() != b.field() {
        return Err(crate::field::FieldError::Mismatch {
            left: a.field(),
            right: b.field(),
        }
        .into());
    }
    if a.field().order().is_some_and(|q| q <= DEFAULT_MAX_ORDER) {
        let witness = isomorphic_bruteforce(a, b)?;
        return Ok(IsoDecision {
            isomorphic: Some(witness.is_some()),
            witness,
            method: "bruteforce",
        });
    }
    use crate::reduction::{classify, label_is_invariant};
    let (la, ta) = classify(a)?;
    let (lb, tb) = classify(b)?;
    if la == lb {
        let matrix = ta.witness().compose(&tb.witness().inverse());
        return Ok(IsoDecision {
            isomorphic: Some(true),
            witness: Some(IsoWitness { matrix }),
            method: "normal-form",
        });
    }
    let certain = label_is_invariant(a, &la) && label_is_invariant(b, &lb);
    Ok(IsoDecision {
        isomorphic: certain.then_some(false),
        witness: None,
        method: "normal-form",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fingerprint_examples() {
        let q = FieldSpec::Rational;
        let zero = fingerprint(&Algebra::zero(q));
        assert_eq!(
            zero,
            InvariantFingerprint {
                commutative: true,
                anticommutative: true,
                associative: true,
                unital: false,
                image_dim: 0,
                skew_trivial: true,
                idempotent_profile: IdempotentProfile::Count(0),
                square_map_rank: 0,
            }
        );
        let j2 = fingerprint(&Algebra::from_i64(q, [1, 0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(j2.idempotent_profile, IdempotentProfile::Count(3));
        let mu18 = fingerprint(&Algebra::from_i64(q, [0, 1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(mu18.idempotent_profile, IdempotentProfile::Count(0));
        assert_eq!((mu18.image_dim, mu18.commutative), (1, true));
    }

    #[test]
    fn code_round_trip() {
        let f3 = FieldSpec::Prime(3);
        for code in [0, 1, 17, 6560] {
            assert_eq!(encode(&decode(f3, code).unwrap()), Some(code));
        }
        assert!(decode(f3, 6561).is_none());
        assert_eq!(encode(&Algebra::from_i64(f3, [1, 0, 0, 0, 0, 0, 0, 0])), Some(2187));
    }

    #[test]
    fn code_action_matches_matrix_count() {
        assert_eq!(CodeAction::new(2).group_size(), 6);
        assert_eq!(CodeAction::new(3).group_size(), 48);
        assert_eq!(CodeAction::new(3).matrix(0), [0, 1, 1, 0]);
    }

    #[test]
    fn bruteforce_rejects_large_or_infinite_fields() {
        let a = Algebra::zero(FieldSpec::Rational);
        assert!(matches!(isomorphic_bruteforce(&a, &a), Err(Error::UnsupportedField { .. })));
        let b = Algebra::zero(FieldSpec::Prime(7));
        assert!(isomorphic_bruteforce(&b, &b).is_err());
        assert!(isomorphic_bruteforce_bounded(&b, &b, 7).unwrap().is_some());
    }

    #[test]
    fn census_needs_flag_for_f5() {
        assert!(classify_exhaustive(FieldSpec::Prime(5), false).is_err());
        assert!(classify_exhaustive(FieldSpec::Prime(7), true).is_err());
        assert!(classify_exhaustive(FieldSpec::Rational, true).is_err());
    }
}
