//! The Jordan identity `(vw)(vv) = v(w(vv))` for commutative algebras.
//!
//! Both sides are cubic in `v = (x1, x2)` and linear in `w = (y1, y2)`, so
//! each output coordinate is a combination of eight monomials. The symbolic
//! check compares those sixteen coefficients exactly; the pointwise check
//! evaluates the identity on every pair of vectors of a finite field.

use crate::algebra::{Algebra, Vector2};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

pub const MONOMIALS: [&str; 8] = [
    "x1^3 y1",
    "x1^3 y2",
    "x1^2 x2 y1",
    "x1^2 x2 y2",
    "x1 x2^2 y1",
    "x1 x2^2 y2",
    "x2^3 y1",
    "x2^3 y2",
];

/// A map `(v, w) ↦ K²`, cubic in `v` and linear in `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPolynomial {
    /// `coeffs[c][m]`: coefficient of monomial `m` in output coordinate `c`.
    pub coeffs: [[Scalar; 8]; 2],
}

impl BiPolynomial {
    fn zero(field: FieldSpec) -> Self {
        BiPolynomial {
            coeffs: std::array::from_fn(|_| std::array::from_fn(|_| field.zero())),
        }
    }

    /// Adds `v` to the coefficients of the monomial `x_i x_p x_r y_j`
    /// (indices 0 or 1).
    fn add_term(&mut self, xs: [usize; 3], j: usize, v: &Vector2) {
        let x2_count = xs.iter().sum::<usize>();
        let m = 2 * x2_count + j;
        self.coeffs[0][m] = &self.coeffs[0][m] + &v.x1;
        self.coeffs[1][m] = &self.coeffs[1][m] + &v.x2;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Scalar::is_zero)
    }

    pub fn sub(&self, other: &BiPolynomial) -> BiPolynomial {
        BiPolynomial {
            coeffs: std::array::from_fn(|c| std::array::from_fn(|m| &self.coeffs[c][m] - &other.coeffs[c][m])),
        }
    }

    pub fn eval(&self, v: &Vector2, w: &Vector2) -> Vector2 {
        let f = v.field();
        let (x1, x2) = (&v.x1, &v.x2);
        let monos: [Scalar; 4] = [x1.pow(3), x1.square() * x2, x1 * x2.square(), x2.pow(3)];
        let ys = [&w.x1, &w.x2];
        let mut out = [f.zero(), f.zero()];
        for (c, slot) in out.iter_mut().enumerate() {
            for (k, mono) in monos.iter().enumerate() {
                for (j, y) in ys.iter().enumerate() {
                    *slot = &*slot + &self.coeffs[c][2 * k + j] * mono * *y;
                }
            }
        }
        Vector2::new(out[0].clone(), out[1].clone())
    }
}

fn basis(field: FieldSpec) -> [Vector2; 2] {
    [Vector2::e1(field), Vector2::e2(field)]
}

/// `(vw)(vv)` and `v(w(vv))` expanded over the basis.
pub fn jordan_sides(alg: &Algebra) -> (BiPolynomial, BiPolynomial) {
    let f = alg.field();
    let e = basis(f);
    let mut lhs = BiPolynomial::zero(f);
    let mut rhs = BiPolynomial::zero(f);
    for i in 0..2 {
        for j in 0..2 {
            let vw = alg.mul(&e[i], &e[j]);
            for p in 0..2 {
                for r in 0..2 {
                    let vv = alg.mul(&e[p], &e[r]);
                    lhs.add_term([i, p, r], j, &alg.mul(&vw, &vv));
                    let inner = alg.mul(&e[j], &vv);
                    rhs.add_term([i, p, r], j, &alg.mul(&e[i], &inner));
                }
            }
        }
    }
    (lhs, rhs)
}

/// A nonzero coefficient of `(vw)(vv) − v(w(vv))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingCoefficient {
    /// `"e1"` or `"e2"`.
    pub coordinate: &'static str,
    pub monomial: &'static str,
    pub value: Scalar,
}

fn require_odd(field: FieldSpec) -> Result<()> {
    if field.characteristic() == 2 {
        return Err(Error::Characteristic2("Jordan identity check"));
    }
    Ok(())
}

/// The first nonzero coefficient of the Jordan defect, in monomial order,
/// or `None` when the identity holds as a polynomial identity. Commutativity
/// is not checked here.
pub fn jordan_defect(alg: &Algebra) -> Result<Option<FailingCoefficient>> {
    require_odd(alg.field())?;
    let (lhs, rhs) = jordan_sides(alg);
    let diff = lhs.sub(&rhs);
    for m in 0..8 {
        for (c, coordinate) in ["e1", "e2"].into_iter().enumerate() {
            if !diff.coeffs[c][m].is_zero() {
                return Ok(Some(FailingCoefficient {
                    coordinate,
                    monomial: MONOMIALS[m],
                    value: diff.coeffs[c][m].clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Commutative and satisfying the Jordan identity as a polynomial identity.
pub fn is_jordan_symbolic(alg: &Algebra) -> Result<bool> {
    require_odd(alg.field())?;
    if !alg.is_commutative() {
        return Ok(false);
    }
    Ok(jordan_defect(alg)?.is_none())
}

/// Commutative and satisfying the Jordan identity at every pair of vectors
/// of the (finite) field.
pub fn is_jordan_pointwise(alg: &Algebra) -> Result<bool> {
    let f = alg.field();
    require_odd(f)?;
    let vectors = Vector2::all(f).ok_or(Error::UnsupportedField {
        field: f,
        operation: "pointwise Jordan check",
    })?;
    if !alg.is_commutative() {
        return Ok(false);
    }
    for v in &vectors {
        let vv = alg.mul(v, v);
        for w in &vectors {
            let lhs = alg.mul(&alg.mul(v, w), &vv);
            let rhs = alg.mul(v, &alg.mul(w, &vv));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(v1 v2)((v1 + v2) w) == (v1 + v2)((v1 v2) w)`.
pub fn lemma_holds(alg: &Algebra, v1: &Vector2, v2: &Vector2, w: &Vector2) -> bool {
    let p = alg.mul(v1, v2);
    let s = v1.add(v2);
    alg.mul(&p, &alg.mul(&s, w)) == alg.mul(&s, &alg.mul(&p, w))
}

/// The six Jordan algebras `J1..J6` over `field`.
pub fn catalog(field: FieldSpec) -> Vec<(&'static str, Algebra)> {
    let half = field.ratio(1, 2);
    let (z, o) = (field.zero(), field.one());
    let j3 = Algebra::from_constants(
        field,
        [o.clone(), z.clone(), half.clone(), half.clone(), half.clone(), half, z.clone(), o],
    )
    .expect("same field");
    vec![
        ("J1", Algebra::from_i64(field, [1, 0, 0, 1, 0, 1, 0, 1])),
        ("J2", Algebra::from_i64(field, [1, 0, 0, 0, 0, 0, 0, 1])),
        ("J3", j3),
        ("J4", Algebra::from_i64(field, [1, 0, 0, 1, 0, 1, 0, 0])),
        ("J5", Algebra::from_i64(field, [1, 0, 0, 0, 0, 0, 0, 0])),
        ("J6", Algebra::from_i64(field, [0, 1, 0, 0, 0, 0, 0, 0])),
    ]
}

/// `μ12(α4)`: `e1e1 = e1`, `e1e2 = e2e1 = e1`, `e2e2 = α4 e1`.
pub fn mu12(field: FieldSpec, alpha4: i64) -> Algebra {
    Algebra::from_i64(field, [1, 0, 1, 0, 1, 0, alpha4, 0])
}

/// `μ17`: `e1e1 = e2`, `e1e2 = e2e1 = e2`.
pub fn mu17(field: FieldSpec) -> Algebra {
    Algebra::from_i64(field, [0, 1, 0, 1, 0, 1, 0, 0])
}

/// Two idempotents `e1, e2` with `e1e2 = λ(e1 + e2)`, at `λ = −1`.
pub fn lambda_minus_one(field: FieldSpec) -> Algebra {
    Algebra::from_i64(field, [1, 0, -1, -1, -1, -1, 0, 1])
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: Algebra,
    /// The published verdict.
    pub published: bool,
    pub computed: bool,
    pub failing: Option<FailingCoefficient>,
}

#[derive(Debug, Clone)]
pub struct CatalogReport {
    pub entries: Vec<CatalogEntry>,
    /// Idempotent pairs of `J1..J3` on which the lemma failed.
    pub lemma_failures: Vec<String>,
    pub lemma_pairs_checked: usize,
    /// `J1` is associative.
    pub j1_associative: bool,
}

impl CatalogReport {
    pub fn disagreements(&self) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.published != e.computed).collect()
    }
}

/// Checks the catalog and the published non-Jordan verdicts over ℚ.
///
/// The lemma is linear in `w`, so checking `w = e1, e2` covers every `w`.
pub fn jordan_catalog_check() -> Result<CatalogReport> {
    let q = FieldSpec::Rational;
    let mut entries = Vec::new();
    let mut push = |name: String, algebra: Algebra, published: bool| -> Result<()> {
        let computed = is_jordan_symbolic(&algebra)?;
        let failing = if computed { None } else { jordan_defect(&algebra)? };
        entries.push(CatalogEntry {
            name,
            algebra,
            published,
            computed,
            failing,
        });
        Ok(())
    };
    for (name, alg) in catalog(q) {
        push(name.to_string(), alg, true)?;
    }
    for a4 in [0, 1, -1, 2] {
        push(format!("Mu12(alpha4={a4})"), mu12(q, a4), false)?;
    }
    push("Mu17".into(), mu17(q), false)?;
    push("Mu11(lambda=-1)".into(), lambda_minus_one(q), false)?;

    let mut lemma_failures = Vec::new();
    let mut lemma_pairs_checked = 0;
    for (name, alg) in catalog(q).into_iter().take(3) {
        let pts = match alg.idempotents() {
            crate::algebra::IdempotentSet::Finite(pts) => pts,
            crate::algebra::IdempotentSet::Line { base, direction } => {
                vec![base.clone(), base.add(&direction), base.sub(&direction)]
            }
            crate::algebra::IdempotentSet::Plane => unreachable!("characteristic 0"),
        };
        for v1 in &pts {
            for v2 in &pts {
                lemma_pairs_checked += 1;
                for w in basis(q) {
                    if !lemma_holds(&alg, v1, v2, &w) {
                        lemma_failures.push(format!("{name}: v1={v1} v2={v2} w={w}"));
                    }
                }
            }
        }
    }
    let j1 = &catalog(q)[0].1;
    Ok(CatalogReport {
        entries,
        lemma_failures,
        lemma_pairs_checked,
        j1_associative: j1.is_associative(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    #[test]
    fn zero_and_j1_are_jordan() {
        assert!(is_jordan_symbolic(&Algebra::zero(Q)).unwrap());
        assert!(is_jordan_symbolic(&catalog(Q)[0].1).unwrap());
        assert!(is_jordan_pointwise(&Algebra::zero(FieldSpec::Prime(3))).unwrap());
    }

    #[test]
    fn published_failures() {
        assert!(!is_jordan_symbolic(&mu17(Q)).unwrap());
        assert!(!is_jordan_symbolic(&lambda_minus_one(Q)).unwrap());
        assert!(!is_jordan_pointwise(&mu17(FieldSpec::Prime(5))).unwrap());
        let defect = jordan_defect(&mu17(Q)).unwrap().unwrap();
        assert!(!defect.value.is_zero());
    }

    #[test]
    fn noncommutative_is_never_jordan() {
        let a = Algebra::from_i64(Q, [0, 0, 1, 0, 0, 0, 0, 0]);
        assert!(!is_jordan_symbolic(&a).unwrap());
        assert!(!is_jordan_pointwise(&Algebra::from_i64(FieldSpec::Prime(3), [0, 0, 1, 0, 0, 0, 0, 0])).unwrap());
    }

    #[test]
    fn expansion_matches_evaluation() {
        let a = Algebra::from_i64(Q, [1, 2, -1, 3, -1, 3, 4, -2]);
        let (lhs, _) = jordan_sides(&a);
        let v = Vector2::new(Q.ratio(2, 3), Q.from_i64(-5));
        let w = Vector2::from_i64(Q, 7, 1);
        let direct = a.mul(&a.mul(&v, &w), &a.mul(&v, &v));
        assert_eq!(lhs.eval(&v, &w), direct);
    }

    #[test]
    fn refusals() {
        assert!(is_jordan_pointwise(&Algebra::zero(Q)).is_err());
        assert!(is_jordan_symbolic(&Algebra::zero(FieldSpec::Prime(2))).is_err());
    }
}
