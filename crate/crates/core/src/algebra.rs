//! Two-dimensional algebras as eight structure constants.
//!
//! With respect to the fixed basis `{e1, e2}`:
//!
//! ```text
//! e1 e1 = α1 e1 + β1 e2      e1 e2 = α2 e1 + β2 e2
//! e2 e1 = α3 e1 + β3 e2      e2 e2 = α4 e1 + β4 e2
//! ```
//!
//! A [`BasisChange`] with rows `(a b / c d)` is the matrix whose columns are
//! the new basis vectors: `e1' = a e1 + c e2`, `e2' = b e1 + d e2`. The
//! transformed multiplication is `μ'(x, y) = M⁻¹ μ(Mx, My)`, which is a right
//! action: transforming by `M` and then by `N` equals transforming by `M·N`.
//!
//! For example, to move `μ(e1,e2) = 2e1 + 3e2` to `μ'(e1,e2) = e1` one takes
//! the new basis `e1' = 2e1 + 3e2`, `e2' = ½e2`, i.e. the matrix `(2 0 / 3 ½)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{polynomial_roots, FieldSpec, Scalar};
use crate::linalg;

/// Coordinates in the fixed basis `{e1, e2}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector2 {
    pub x1: Scalar,
    pub x2: Scalar,
}

impl Vector2 {
    pub fn new(x1: Scalar, x2: Scalar) -> Self {
        debug_assert_eq!(x1.field(), x2.field());
        Vector2 { x1, x2 }
    }

    pub fn from_i64(field: FieldSpec, x1: i64, x2: i64) -> Self {
        Vector2::new(field.from_i64(x1), field.from_i64(x2))
    }

    pub fn zero(field: FieldSpec) -> Self {
        Vector2::from_i64(field, 0, 0)
    }

    pub fn e1(field: FieldSpec) -> Self {
        Vector2::from_i64(field, 1, 0)
    }

    pub fn e2(field: FieldSpec) -> Self {
        Vector2::from_i64(field, 0, 1)
    }

    pub fn field(&self) -> FieldSpec {
        self.x1.field()
    }

    pub fn is_zero(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero()
    }

    pub fn add(&self, other: &Vector2) -> Vector2 {
        Vector2::new(&self.x1 + &other.x1, &self.x2 + &other.x2)
    }

    pub fn sub(&self, other: &Vector2) -> Vector2 {
        Vector2::new(&self.x1 - &other.x1, &self.x2 - &other.x2)
    }

    pub fn scale(&self, k: &Scalar) -> Vector2 {
        Vector2::new(k * &self.x1, k * &self.x2)
    }

    /// `det [self other]`; zero exactly when the two vectors are dependent.
    pub fn det(&self, other: &Vector2) -> Scalar {
        &self.x1 * &other.x2 - &self.x2 * &other.x1
    }

    fn render_key(&self) -> (String, String) {
        (self.x1.to_string(), self.x2.to_string())
    }

    /// All vectors of `F_q^2`, in lexicographic residue order.
    pub fn all(field: FieldSpec) -> Option<Vec<Vector2>> {
        let elems = field.elements()?;
        let mut out = Vec::with_capacity(elems.len() * elems.len());
        for x1 in &elems {
            for x2 in &elems {
                out.push(Vector2::new(x1.clone(), x2.clone()));
            }
        }
        Some(out)
    }
}

impl fmt::Display for Vector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

impl fmt::Debug for Vector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An invertible 2×2 matrix with rows `(a b / c d)`; its columns are the new
/// basis vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasisChange {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    delta: Scalar,
}

impl BasisChange {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        for x in [&b, &c, &d] {
            a.checked_add(x)?;
        }
        let delta = &a * &d - &b * &c;
        if delta.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(BasisChange { a, b, c, d, delta })
    }

    pub fn from_i64(field: FieldSpec, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        BasisChange::new(
            field.from_i64(a),
            field.from_i64(b),
            field.from_i64(c),
            field.from_i64(d),
        )
    }

    /// The matrix whose columns are `e1'` and `e2'`.
    pub fn from_columns(e1: &Vector2, e2: &Vector2) -> Result<Self> {
        BasisChange::new(e1.x1.clone(), e2.x1.clone(), e1.x2.clone(), e2.x2.clone())
    }

    pub fn identity(field: FieldSpec) -> Self {
        BasisChange::from_i64(field, 1, 0, 0, 1).expect("identity is invertible")
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    /// Rows `[[a, b], [c, d]]`.
    pub fn rows(&self) -> [[&Scalar; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    pub fn column(&self, j: usize) -> Vector2 {
        match j {
            0 => Vector2::new(self.a.clone(), self.c.clone()),
            1 => Vector2::new(self.b.clone(), self.d.clone()),
            _ => panic!("column index {j} out of range"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn apply(&self, v: &Vector2) -> Vector2 {
        Vector2::new(
            &self.a * &v.x1 + &self.b * &v.x2,
            &self.c * &v.x1 + &self.d * &v.x2,
        )
    }

    pub fn apply_inverse(&self, v: &Vector2) -> Vector2 {
        Vector2::new(
            (&self.d * &v.x1 - &self.b * &v.x2) / &self.delta,
            (&self.a * &v.x2 - &self.c * &v.x1) / &self.delta,
        )
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &BasisChange) -> BasisChange {
        BasisChange::new(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
        .expect("product of invertible matrices is invertible")
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange::new(
            &self.d / &self.delta,
            -&self.b / &self.delta,
            -&self.c / &self.delta,
            &self.a / &self.delta,
        )
        .expect("inverse is invertible")
    }

    /// Every element of `GL(2, F_q)` in lexicographic order of the residues
    /// `(a, b, c, d)`.
    pub fn all_invertible(field: FieldSpec) -> Result<Vec<BasisChange>> {
        let elems = field.elements().ok_or(Error::UnsupportedField {
            field,
            operation: "matrix enumeration",
        })?;
        let mut out = Vec::new();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    for d in &elems {
                        if let Ok(m) = BasisChange::new(a.clone(), b.clone(), c.clone(), d.clone()) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The nonzero solutions of `μ(v, v) = v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IdempotentSet {
    /// Sorted by the text rendering of the coordinates.
    Finite(Vec<Vector2>),
    /// The affine line `base + t · direction`.
    Line { base: Vector2, direction: Vector2 },
    /// Every nonzero vector.
    Plane,
}

impl IdempotentSet {
    pub fn contains(&self, v: &Vector2) -> bool {
        match self {
            IdempotentSet::Finite(vs) => vs.contains(v),
            IdempotentSet::Line { base, direction } => v.sub(base).det(direction).is_zero(),
            IdempotentSet::Plane => !v.is_zero(),
        }
    }

    pub fn finite_count(&self) -> Option<usize> {
        match self {
            IdempotentSet::Finite(vs) => Some(vs.len()),
            _ => None,
        }
    }

    /// Equality as point sets.
    pub fn same_set(&self, other: &IdempotentSet) -> bool {
        match (self, other) {
            (IdempotentSet::Finite(a), IdempotentSet::Finite(b)) => a == b,
            (IdempotentSet::Line { base, direction }, IdempotentSet::Line { direction: d2, .. }) => {
                other.contains(base) && direction.det(d2).is_zero()
            }
            (IdempotentSet::Plane, IdempotentSet::Plane) => true,
            _ => false,
        }
    }

    /// Every member, for sets over a finite field.
    pub fn points(&self) -> Option<Vec<Vector2>> {
        let mut pts = match self {
            IdempotentSet::Finite(vs) => vs.clone(),
            IdempotentSet::Line { base, direction } => base
                .field()
                .elements()?
                .iter()
                .map(|t| base.add(&direction.scale(t)))
                .collect(),
            IdempotentSet::Plane => return None,
        };
        pts.sort_by_key(Vector2::render_key);
        Some(pts)
    }

    /// Image of the set under `v ↦ M⁻¹ v`, i.e. the idempotents of
    /// `transform(A, M)` given those of `A`.
    pub fn pull_back(&self, m: &BasisChange) -> IdempotentSet {
        match self {
            IdempotentSet::Finite(vs) => {
                let mut out: Vec<Vector2> = vs.iter().map(|v| m.apply_inverse(v)).collect();
                out.sort_by_key(Vector2::render_key);
                IdempotentSet::Finite(out)
            }
            IdempotentSet::Line { base, direction } => {
                let base = m.apply_inverse(base);
                let dir = m.apply_inverse(direction);
                IdempotentSet::Line {
                    base,
                    direction: normalize_direction(&dir),
                }
            }
            IdempotentSet::Plane => IdempotentSet::Plane,
        }
    }
}

fn normalize_direction(v: &Vector2) -> Vector2 {
    if !v.x2.is_zero() {
        v.scale(&v.x2.inv().expect("nonzero"))
    } else {
        v.scale(&v.x1.inv().expect("direction is nonzero"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StructuralPredicates {
    pub commutative: bool,
    pub anticommutative: bool,
    pub associative: bool,
    pub unital: bool,
    pub image_dim: u8,
}

/// A bilinear multiplication on the plane over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    field: FieldSpec,
    // e1e1, e1e2, e2e1, e2e2
    products: [Vector2; 4],
}

const fn slot(i: usize, j: usize) -> usize {
    2 * i + j
}

impl Algebra {
    /// Builds an algebra from the products `[e1e1, e1e2, e2e1, e2e2]`.
    pub fn new(field: FieldSpec, products: [Vector2; 4]) -> Result<Self> {
        for p in &products {
            for x in [&p.x1, &p.x2] {
                if x.field() != field {
                    return Err(crate::field::FieldError::Mismatch {
                        left: field,
                        right: x.field(),
                    }
                    .into());
                }
            }
        }
        Ok(Algebra { field, products })
    }

    /// Constants in the order `α1, β1, α2, β2, α3, β3, α4, β4`.
    pub fn from_constants(field: FieldSpec, c: [Scalar; 8]) -> Result<Self> {
        let [a1, b1, a2, b2, a3, b3, a4, b4] = c;
        Algebra::new(
            field,
            [
                Vector2 { x1: a1, x2: b1 },
                Vector2 { x1: a2, x2: b2 },
                Vector2 { x1: a3, x2: b3 },
                Vector2 { x1: a4, x2: b4 },
            ],
        )
    }

    /// Integer constants in the order `α1, β1, α2, β2, α3, β3, α4, β4`.
    pub fn from_i64(field: FieldSpec, c: [i64; 8]) -> Self {
        Algebra::from_constants(field, c.map(|x| field.from_i64(x))).expect("same field")
    }

    pub fn zero(field: FieldSpec) -> Self {
        Algebra::from_i64(field, [0; 8])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `μ(e_i, e_j)` for `i, j ∈ {1, 2}`.
    pub fn product(&self, i: usize, j: usize) -> &Vector2 {
        assert!((1..=2).contains(&i) && (1..=2).contains(&j), "basis index out of range");
        &self.products[slot(i - 1, j - 1)]
    }

    pub fn products(&self) -> &[Vector2; 4] {
        &self.products
    }

    /// `α_k`, `k ∈ 1..=4`.
    pub fn alpha(&self, k: usize) -> &Scalar {
        &self.products[k - 1].x1
    }

    /// `β_k`, `k ∈ 1..=4`.
    pub fn beta(&self, k: usize) -> &Scalar {
        &self.products[k - 1].x2
    }

    pub fn constants(&self) -> [Scalar; 8] {
        let p = &self.products;
        [
            p[0].x1.clone(),
            p[0].x2.clone(),
            p[1].x1.clone(),
            p[1].x2.clone(),
            p[2].x1.clone(),
            p[2].x2.clone(),
            p[3].x1.clone(),
            p[3].x2.clone(),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.products.iter().all(Vector2::is_zero)
    }

    fn check_field(&self, v: &Vector2) -> Result<()> {
        for x in [&v.x1, &v.x2] {
            if x.field() != self.field {
                return Err(crate::field::FieldError::Mismatch {
                    left: self.field,
                    right: x.field(),
                }
                .into());
            }
        }
        Ok(())
    }

    pub fn multiply(&self, x: &Vector2, y: &Vector2) -> Result<Vector2> {
        self.check_field(x)?;
        self.check_field(y)?;
        Ok(self.mul(x, y))
    }

    /// Bilinear expansion without field checks.
    pub(crate) fn mul(&self, x: &Vector2, y: &Vector2) -> Vector2 {
        let xs = [&x.x1, &x.x2];
        let ys = [&y.x1, &y.x2];
        let mut r1 = self.field.zero();
        let mut r2 = self.field.zero();
        for i in 0..2 {
            if xs[i].is_zero() {
                continue;
            }
            for j in 0..2 {
                let k = xs[i] * ys[j];
                if k.is_zero() {
                    continue;
                }
                let p = &self.products[slot(i, j)];
                r1 = r1 + &k * &p.x1;
                r2 = r2 + &k * &p.x2;
            }
        }
        Vector2::new(r1, r2)
    }

    pub(crate) fn square(&self, v: &Vector2) -> Vector2 {
        self.mul(v, v)
    }

    /// The isomorphic multiplication `μ'(x, y) = M⁻¹ μ(Mx, My)`, computed by
    /// evaluating on the four basis pairs.
    pub fn transform(&self, m: &BasisChange) -> Result<Algebra> {
        if m.field() != self.field {
            return Err(crate::field::FieldError::Mismatch {
                left: self.field,
                right: m.field(),
            }
            .into());
        }
        let cols = [m.column(0), m.column(1)];
        let products = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .map(|(i, j)| m.apply_inverse(&self.mul(&cols[i], &cols[j])));
        Ok(Algebra {
            field: self.field,
            products,
        })
    }

    /// Constant-wise sum of two algebras over the same field.
    pub fn add_constantwise(&self, other: &Algebra) -> Result<Algebra> {
        if other.field != self.field {
            return Err(crate::field::FieldError::Mismatch {
                left: self.field,
                right: other.field,
            }
            .into());
        }
        let products = [0, 1, 2, 3].map(|k| self.products[k].add(&other.products[k]));
        Ok(Algebra {
            field: self.field,
            products,
        })
    }

    fn half(&self, op: &'static str) -> Result<Scalar> {
        if self.field.characteristic() == 2 {
            return Err(Error::Characteristic2(op));
        }
        Ok(self.field.ratio(1, 2))
    }

    /// `μ_a(x, y) = (μ(x, y) − μ(y, x)) / 2`.
    pub fn skew_part(&self) -> Result<Algebra> {
        let half = self.half("skew part")?;
        let products = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| {
            self.products[slot(i, j)]
                .sub(&self.products[slot(j, i)])
                .scale(&half)
        });
        Ok(Algebra {
            field: self.field,
            products,
        })
    }

    /// `μ_s(x, y) = (μ(x, y) + μ(y, x)) / 2`.
    pub fn sym_part(&self) -> Result<Algebra> {
        let half = self.half("symmetric part")?;
        let products = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| {
            self.products[slot(i, j)]
                .add(&self.products[slot(j, i)])
                .scale(&half)
        });
        Ok(Algebra {
            field: self.field,
            products,
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.products[1] == self.products[2]
    }

    /// `μ(x, y) = −μ(y, x)` for all `x, y`.
    pub fn is_anticommutative(&self) -> bool {
        let p = &self.products;
        p[0].add(&p[0]).is_zero() && p[3].add(&p[3]).is_zero() && p[1].add(&p[2]).is_zero()
    }

    /// Checks `(xy)z = x(yz)` on the eight basis triples.
    pub fn is_associative(&self) -> bool {
        let basis = [Vector2::e1(self.field), Vector2::e2(self.field)];
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    if self.mul(&self.mul(x, y), z) != self.mul(x, &self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Jacobi identity on the basis triples (trilinear, so this suffices).
    pub fn satisfies_jacobi(&self) -> bool {
        let basis = [Vector2::e1(self.field), Vector2::e2(self.field)];
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    let s = self
                        .mul(x, &self.mul(y, z))
                        .add(&self.mul(y, &self.mul(z, x)))
                        .add(&self.mul(z, &self.mul(x, y)));
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A two-sided unit, found by solving the linear system
    /// `μ(u, e_i) = μ(e_i, u) = e_i`.
    pub fn unit(&self) -> Option<Vector2> {
        let f = self.field;
        let basis = [Vector2::e1(f), Vector2::e2(f)];
        let mut rows = Vec::with_capacity(8);
        for (i, ei) in basis.iter().enumerate() {
            // u1 μ(e1, e_i) + u2 μ(e2, e_i) = e_i, and the mirrored system
            let left = [&self.products[slot(0, i)], &self.products[slot(1, i)]];
            let right = [&self.products[slot(i, 0)], &self.products[slot(i, 1)]];
            for side in [left, right] {
                rows.push(vec![side[0].x1.clone(), side[1].x1.clone(), ei.x1.clone()]);
                rows.push(vec![side[0].x2.clone(), side[1].x2.clone(), ei.x2.clone()]);
            }
        }
        linalg::solve_augmented(rows).map(|u| Vector2::new(u[0].clone(), u[1].clone()))
    }

    /// Dimension of the span of the four basis products.
    pub fn image_dim(&self) -> u8 {
        let rows: Vec<Vec<Scalar>> = self
            .products
            .iter()
            .map(|p| vec![p.x1.clone(), p.x2.clone()])
            .collect();
        linalg::rank(&rows) as u8
    }

    /// Dimension of the span of all squares `μ(v, v)`, i.e. of
    /// `{e1e1, e1e2 + e2e1, e2e2}`.
    pub fn square_span_dim(&self) -> u8 {
        let p = &self.products;
        let cross = p[1].add(&p[2]);
        let rows: Vec<Vec<Scalar>> = [&p[0], &cross, &p[3]]
            .iter()
            .map(|v| vec![v.x1.clone(), v.x2.clone()])
            .collect();
        linalg::rank(&rows) as u8
    }

    pub fn predicates(&self) -> StructuralPredicates {
        StructuralPredicates {
            commutative: self.is_commutative(),
            anticommutative: self.is_anticommutative(),
            associative: self.is_associative(),
            unital: self.unit().is_some(),
            image_dim: self.image_dim(),
        }
    }

    /// The nonzero idempotents.
    ///
    /// In odd or zero characteristic, `v = r·d` is idempotent exactly when
    /// `μ(d, d) = λ d` with `λ ≠ 0` and `r = 1/λ`. The directions `d = (1, m)`
    /// with `μ(d, d) ∥ d` are the roots of the cubic
    /// `m·Q1(1, m) − Q2(1, m)`, and `d = (0, 1)` is checked separately. When
    /// the cubic vanishes identically every direction is an eigendirection,
    /// `μ(v, v) = λ(v) v` with `λ` linear, and the idempotents form the line
    /// `λ(v) = 1`. Over `F_2` the three nonzero vectors are enumerated.
    pub fn idempotents(&self) -> IdempotentSet {
        let f = self.field;
        if f.characteristic() == 2 {
            let all: Vec<Vector2> = Vector2::all(f)
                .expect("finite")
                .into_iter()
                .filter(|v| !v.is_zero())
                .collect();
            let idem: Vec<Vector2> = all.iter().filter(|v| self.square(v) == **v).cloned().collect();
            if idem.len() == all.len() {
                return IdempotentSet::Plane;
            }
            return IdempotentSet::Finite(sorted(idem));
        }
        let p = &self.products;
        let (p1, p2) = (&p[0].x1, &p[0].x2);
        let s = p[1].add(&p[2]);
        let (s1, s2) = (&s.x1, &s.x2);
        let (r1, r2) = (&p[3].x1, &p[3].x2);
        let cubic = [-p2, p1 - s2, s1 - r2, r1.clone()];
        let roots = match polynomial_roots(&cubic) {
            Ok(roots) => roots,
            Err(_) => {
                // identically zero: μ(v, v) = (p1 x + s1 y) v
                if p1.is_zero() && s1.is_zero() {
                    return IdempotentSet::Finite(Vec::new());
                }
                let (base, direction) = if !p1.is_zero() {
                    (
                        Vector2::new(p1.inv().expect("nonzero"), f.zero()),
                        Vector2::new(-s1 / p1, f.one()),
                    )
                } else {
                    (Vector2::new(f.zero(), s1.inv().expect("nonzero")), Vector2::e1(f))
                };
                return IdempotentSet::Line { base, direction };
            }
        };
        let mut out = Vec::new();
        for m in roots {
            let d = Vector2::new(f.one(), m);
            let lambda = self.square(&d).x1;
            if !lambda.is_zero() {
                out.push(d.scale(&lambda.inv().expect("nonzero")));
            }
        }
        if r1.is_zero() && !r2.is_zero() {
            out.push(Vector2::new(f.zero(), r2.inv().expect("nonzero")));
        }
        IdempotentSet::Finite(sorted(out))
    }
}

fn sorted(mut vs: Vec<Vector2>) -> Vec<Vector2> {
    vs.sort_by_key(Vector2::render_key);
    vs.dedup();
    vs
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.products;
        write!(
            f,
            "{{e1e1={}, e1e2={}, e2e1={}, e2e2={}}} over {}",
            p[0], p[1], p[2], p[3], self.field
        )
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn q(n: i64, d: i64) -> Scalar {
        Q.ratio(n, d)
    }

    fn mu11(field: FieldSpec, a2: Scalar, b2: Scalar) -> Algebra {
        let (z, o) = (field.zero(), field.one());
        Algebra::from_constants(field, [o.clone(), z.clone(), a2.clone(), b2.clone(), a2, b2, z, o]).unwrap()
    }

    #[test]
    fn multiply_reads_the_table() {
        let zero = Algebra::zero(Q);
        let v = Vector2::from_i64(Q, 3, -2);
        assert!(zero.multiply(&v, &v).unwrap().is_zero());
        let a = Algebra::from_i64(Q, [0, 0, 1, 1, 0, 0, 0, 0]);
        assert_eq!(
            a.multiply(&Vector2::e1(Q), &Vector2::e2(Q)).unwrap(),
            Vector2::from_i64(Q, 1, 1)
        );
        let m = mu11(Q, q(1, 1), q(1, 1));
        let v = Vector2::new(q(1, 3), q(1, 3));
        assert_eq!(m.multiply(&v, &v).unwrap(), v);
    }

    #[test]
    fn multiply_rejects_other_fields() {
        let a = Algebra::zero(Q);
        let v = Vector2::e1(FieldSpec::Prime(5));
        assert!(a.multiply(&v, &v).is_err());
    }

    #[test]
    fn identity_transform_is_trivial() {
        let a = Algebra::from_i64(Q, [1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(a.transform(&BasisChange::identity(Q)).unwrap(), a);
    }

    #[test]
    fn worked_change_of_basis() {
        // μ(e1,e2) = 2e1 + 3e2 = −μ(e2,e1); new basis e1' = 2e1 + 3e2, e2' = ½e2
        let a = Algebra::from_i64(Q, [0, 0, 2, 3, -2, -3, 0, 0]);
        let m = BasisChange::from_columns(
            &Vector2::from_i64(Q, 2, 3),
            &Vector2::new(q(0, 1), q(1, 2)),
        )
        .unwrap();
        let t = a.transform(&m).unwrap();
        assert_eq!(t, Algebra::from_i64(Q, [0, 0, 1, 0, -1, 0, 0, 0]));
    }

    #[test]
    fn singular_matrix_rejected() {
        assert_eq!(BasisChange::from_i64(Q, 1, 2, 2, 4), Err(Error::SingularMatrix));
    }

    #[test]
    fn gl2_sizes() {
        assert_eq!(BasisChange::all_invertible(FieldSpec::Prime(2)).unwrap().len(), 6);
        assert_eq!(BasisChange::all_invertible(FieldSpec::Prime(3)).unwrap().len(), 48);
        assert_eq!(BasisChange::all_invertible(FieldSpec::Prime(5)).unwrap().len(), 480);
        assert!(BasisChange::all_invertible(Q).is_err());
    }

    #[test]
    fn skew_and_symmetric_parts() {
        let comm = Algebra::from_i64(Q, [1, 2, 3, 4, 3, 4, 5, 6]);
        assert!(comm.skew_part().unwrap().is_zero());
        let a = Algebra::from_i64(Q, [0, 0, 1, 0, 0, 0, 0, 0]);
        let half = q(1, 2);
        let z = q(0, 1);
        assert_eq!(
            a.skew_part().unwrap(),
            Algebra::from_constants(Q, [z.clone(), z.clone(), half.clone(), z.clone(), -&half, z.clone(), z.clone(), z.clone()]).unwrap()
        );
        assert_eq!(
            a.sym_part().unwrap(),
            Algebra::from_constants(Q, [z.clone(), z.clone(), half.clone(), z.clone(), half, z.clone(), z.clone(), z]).unwrap()
        );
        assert_eq!(
            Algebra::zero(FieldSpec::Prime(2)).skew_part(),
            Err(Error::Characteristic2("skew part"))
        );
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(Algebra::zero(Q).idempotents(), IdempotentSet::Finite(vec![]));
        let m = mu11(Q, q(1, 1), q(1, 1));
        let mut expected = vec![Vector2::e1(Q), Vector2::e2(Q), Vector2::new(q(1, 3), q(1, 3))];
        expected.sort_by_key(Vector2::render_key);
        assert_eq!(m.idempotents(), IdempotentSet::Finite(expected));
        let line = mu11(Q, q(1, 2), q(1, 2)).idempotents();
        assert_eq!(
            line,
            IdempotentSet::Line {
                base: Vector2::e1(Q),
                direction: Vector2::from_i64(Q, -1, 1),
            }
        );
        // J2 = F x F: e1, e2, e1 + e2
        let j2 = Algebra::from_i64(Q, [1, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(j2.idempotents().finite_count(), Some(3));
    }

    #[test]
    fn idempotents_on_the_vertical_direction() {
        // e2e2 = 2e2 only: idempotent ½e2
        let a = Algebra::from_i64(Q, [0, 0, 0, 0, 0, 0, 0, 2]);
        assert_eq!(a.idempotents(), IdempotentSet::Finite(vec![Vector2::new(q(0, 1), q(1, 2))]));
    }

    #[test]
    fn idempotents_over_f2() {
        let f2 = FieldSpec::Prime(2);
        // e1e1=e1, e2e2=e2, e1e2=e2e1=0: squaring is the identity map over F2
        let a = Algebra::from_i64(f2, [1, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(a.idempotents(), IdempotentSet::Plane);
        assert_eq!(Algebra::zero(f2).idempotents(), IdempotentSet::Finite(vec![]));
    }

    #[test]
    fn predicate_examples() {
        let z = Algebra::zero(Q).predicates();
        assert!(z.commutative && z.associative && !z.unital && z.image_dim == 0);
        let j1 = Algebra::from_i64(Q, [1, 0, 0, 1, 0, 1, 0, 1]);
        let p = j1.predicates();
        assert!(p.commutative && p.associative && p.unital && p.image_dim == 2);
        assert_eq!(j1.unit(), Some(Vector2::e1(Q)));
        let mu18 = Algebra::from_i64(Q, [0, 1, 0, 0, 0, 0, 0, 0]).predicates();
        assert!(mu18.commutative && mu18.associative && !mu18.unital && mu18.image_dim == 1);
    }

    #[test]
    fn skew_part_is_lie_in_dimension_two() {
        let a = Algebra::from_i64(Q, [3, -1, 4, 1, -5, 9, 2, 6]);
        let s = a.skew_part().unwrap();
        assert!(s.is_anticommutative());
        assert!(s.satisfies_jacobi());
    }
}
