//! Normal forms over fields of characteristic other than 2.
//!
//! The walk first normalizes the skew part to `μ_a(e1, e2) = e1` or finds it
//! zero. In the skew case the remaining freedom is `Aut(μ_a)`, the matrices
//! `(a b / 0 1)`; in the symmetric case it is all of `GL(2)` and the
//! idempotents drive the choice of basis. Every step is a real basis change
//! applied through [`Algebra::transform`], so the trace composes to an exact
//! witness for the final normal form.
//!
//! Wherever a family has leftover freedom the walk spends it to make the
//! parameters an isomorphism invariant: square-class representatives for
//! parameters scaled by squares, and over `F_p` the smallest parameter tuple
//! over all admissible bases.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Algebra, BasisChange, IdempotentSet, Vector2};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkewKind {
    SkewNontrivial,
    Symmetric,
}

/// `q(u, v) = b1 u² + 2 b2 uv + b4 v²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub b1: Scalar,
    pub b2: Scalar,
    pub b4: Scalar,
}

impl QuadraticForm {
    /// The form built from `β1, β2, β4` of an algebra.
    pub fn of(alg: &Algebra) -> Self {
        QuadraticForm {
            b1: alg.beta(1).clone(),
            b2: alg.beta(2).clone(),
            b4: alg.beta(4).clone(),
        }
    }

    pub fn eval(&self, u: &Scalar, v: &Scalar) -> Scalar {
        let two = u.field().from_i64(2);
        &self.b1 * u * u + two * &self.b2 * u * v + &self.b4 * v * v
    }

    /// `b2² − b1 b4`.
    pub fn discriminant(&self) -> Scalar {
        &self.b2 * &self.b2 - &self.b1 * &self.b4
    }

    /// Square class of the discriminant, with zero as its own class.
    pub fn discriminant_class(&self) -> Scalar {
        let d = self.discriminant();
        d.square_class_rep().unwrap_or(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Zero,
    Mu1,
    Mu2,
    Mu3,
    Mu4,
    Mu5,
    Mu6,
    Mu7,
    Mu8,
    Mu9,
    Mu10,
    Mu11,
    Mu12,
    Mu13K,
    Mu14,
    Mu14K,
    Mu15,
    Mu16,
    Mu17,
    Mu18,
    Mu18K,
}

impl Family {
    pub const ALL: [Family; 21] = [
        Family::Zero,
        Family::Mu1,
        Family::Mu2,
        Family::Mu3,
        Family::Mu4,
        Family::Mu5,
        Family::Mu6,
        Family::Mu7,
        Family::Mu8,
        Family::Mu9,
        Family::Mu10,
        Family::Mu11,
        Family::Mu12,
        Family::Mu13K,
        Family::Mu14,
        Family::Mu14K,
        Family::Mu15,
        Family::Mu16,
        Family::Mu17,
        Family::Mu18,
        Family::Mu18K,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Zero => "Zero",
            Family::Mu1 => "Mu1",
            Family::Mu2 => "Mu2",
            Family::Mu3 => "Mu3",
            Family::Mu4 => "Mu4",
            Family::Mu5 => "Mu5",
            Family::Mu6 => "Mu6",
            Family::Mu7 => "Mu7",
            Family::Mu8 => "Mu8",
            Family::Mu9 => "Mu9",
            Family::Mu10 => "Mu10",
            Family::Mu11 => "Mu11",
            Family::Mu12 => "Mu12",
            Family::Mu13K => "Mu13K",
            Family::Mu14 => "Mu14",
            Family::Mu14K => "Mu14K",
            Family::Mu15 => "Mu15",
            Family::Mu16 => "Mu16",
            Family::Mu17 => "Mu17",
            Family::Mu18 => "Mu18",
            Family::Mu18K => "Mu18K",
        }
    }

    /// Parameter names, in the order [`ClassLabel::params`] stores them.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Zero | Family::Mu17 | Family::Mu18 => &[],
            Family::Mu1 => &["beta1", "alpha2", "alpha4", "beta4"],
            Family::Mu2 | Family::Mu4 => &["beta1", "alpha2", "beta4"],
            Family::Mu3 | Family::Mu9 => &["alpha2", "beta4"],
            Family::Mu5 => &["beta1", "alpha2"],
            Family::Mu6 => &["beta2", "alpha4", "beta4"],
            Family::Mu7 => &["alpha4", "beta4"],
            Family::Mu8 | Family::Mu10 => &["alpha2", "alpha4"],
            Family::Mu11 => &["alpha2", "beta2"],
            Family::Mu12 | Family::Mu14 | Family::Mu14K => &["alpha4"],
            Family::Mu13K | Family::Mu15 => &["beta2", "alpha4"],
            Family::Mu16 => &["beta2"],
            Family::Mu18K => &["alpha2", "beta2", "alpha4", "beta4"],
        }
    }

    /// How the leftover basis freedom was used to fix the parameters.
    pub fn residual_note(self) -> &'static str {
        match self {
            Family::Zero => "no parameters",
            Family::Mu1 => "cross term of the form removed; e1 scaled so that alpha1 = 1; parameters unique",
            Family::Mu2 => "cross term of the form removed; e1 scaled so that alpha4 = 1; parameters unique",
            Family::Mu3 => "cross term of the form removed; e1 scaled so that beta1 = 1; parameters unique",
            Family::Mu4 | Family::Mu5 => {
                "cross term of the form removed; beta1 replaced by its square-class representative"
            }
            Family::Mu6 => "alpha2 cleared by a shear; e1 scaled so that alpha1 = 1; parameters unique",
            Family::Mu7 => "alpha2 cleared by a shear; e1 scaled so that beta2 = 1; parameters unique",
            Family::Mu8 => "beta4 cleared by a shear; e1 scaled so that alpha1 = beta2 = 1; parameters unique",
            Family::Mu9 => "alpha4 cleared by a shear; parameters unique",
            Family::Mu10 => "e1 scaled so that alpha4 is 0 or 1",
            Family::Mu11 => "smallest (alpha2, beta2) over ordered pairs of idempotents",
            Family::Mu12 => "not produced by the classifier; isomorphic to Mu14 with alpha4 - 1",
            Family::Mu13K => "beta4 cleared, alpha2 scaled to 1; parameters unique",
            Family::Mu14 => "alpha4 replaced by its square-class representative (or 0)",
            Family::Mu14K => "alpha2 cleared, beta4 scaled to 1; parameters unique",
            Family::Mu15 => "beta4 cleared; alpha4 replaced by its square-class representative",
            Family::Mu16 => "beta4 cleared; parameters unique",
            Family::Mu17 | Family::Mu18 => "basis (v, v^2) for any v with nonzero square",
            Family::Mu18K => {
                "basis (v, v^2); over F_p the smallest parameters over all v, over Q chosen through the trace form"
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Format(format!("unknown family {s:?}")))
    }
}

/// A family together with its normalized parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassLabel {
    pub field: FieldSpec,
    pub family: Family,
    /// In the order of [`Family::param_names`].
    pub params: Vec<Scalar>,
}

impl ClassLabel {
    pub fn new(field: FieldSpec, family: Family, params: Vec<Scalar>) -> Result<Self> {
        let names = family.param_names();
        if params.len() != names.len() {
            return Err(Error::InvalidParams {
                family: family.name().into(),
                reason: format!("expected {} parameters, got {}", names.len(), params.len()),
            });
        }
        for p in &params {
            if p.field() != field {
                return Err(crate::field::FieldError::Mismatch {
                    left: field,
                    right: p.field(),
                }
                .into());
            }
        }
        Ok(ClassLabel { field, family, params })
    }

    /// Builds a label from `name = value` pairs in any order.
    pub fn from_named(field: FieldSpec, family: Family, named: &[(String, Scalar)]) -> Result<Self> {
        let names = family.param_names();
        for (k, _) in named {
            if !names.contains(&k.as_str()) {
                return Err(Error::InvalidParams {
                    family: family.name().into(),
                    reason: format!("unknown parameter {k:?}"),
                });
            }
        }
        let mut params = Vec::with_capacity(names.len());
        for n in names {
            let v = named
                .iter()
                .find(|(k, _)| k == n)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::InvalidParams {
                    family: family.name().into(),
                    reason: format!("missing parameter {n:?}"),
                })?;
            params.push(v);
        }
        ClassLabel::new(field, family, params)
    }

    pub fn param(&self, name: &str) -> Option<&Scalar> {
        let i = self.family.param_names().iter().position(|n| *n == name)?;
        self.params.get(i)
    }

    pub fn named_params(&self) -> Vec<(&'static str, &Scalar)> {
        self.family.param_names().iter().copied().zip(self.params.iter()).collect()
    }

    pub fn residual_note(&self) -> &'static str {
        self.family.residual_note()
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if !self.params.is_empty() {
            let parts: Vec<String> = self.named_params().iter().map(|(n, v)| format!("{n}={v}")).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub name: &'static str,
    pub matrix: BasisChange,
    pub algebra: Algebra,
}

/// The basis changes applied by [`classify`], in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: Algebra,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    fn new(input: Algebra) -> Self {
        ReductionTrace { input, steps: Vec::new() }
    }

    pub fn current(&self) -> &Algebra {
        self.steps.last().map_or(&self.input, |s| &s.algebra)
    }

    /// The product of the step matrices, so that
    /// `input.transform(witness) == current()`.
    pub fn witness(&self) -> BasisChange {
        self.steps
            .iter()
            .fold(BasisChange::identity(self.input.field()), |acc, s| acc.compose(&s.matrix))
    }

    pub fn step_names(&self) -> Vec<&'static str> {
        self.steps.iter().map(|s| s.name).collect()
    }

    fn apply(&mut self, name: &'static str, m: BasisChange) -> Result<()> {
        if m.is_identity() {
            return Ok(());
        }
        let algebra = self.current().transform(&m)?;
        self.steps.push(TraceStep { name, matrix: m, algebra });
        Ok(())
    }
}

fn require_odd(field: FieldSpec, op: &'static str) -> Result<()> {
    if field.characteristic() == 2 {
        return Err(Error::Characteristic2(op));
    }
    Ok(())
}

/// `(a b / 0 1)`: `e1' = a e1`, `e2' = b e1 + e2`.
fn aut(a: Scalar, b: Scalar) -> Result<BasisChange> {
    let f = a.field();
    BasisChange::new(a, b, f.zero(), f.one())
}

/// `(1 s / 0 t)`: `e1' = e1`, `e2' = s e1 + t e2`.
fn fix_e1(s: Scalar, t: Scalar) -> Result<BasisChange> {
    let f = s.field();
    BasisChange::new(f.one(), s, f.zero(), t)
}

/// `diag(t, t²)`, which keeps `e1 e1 = e2`.
fn square_scaling(t: &Scalar) -> Result<BasisChange> {
    let f = t.field();
    BasisChange::new(t.clone(), f.zero(), f.zero(), t.square())
}

/// Normalizes the skew part to `μ_a(e1, e2) = e1` when it is nonzero.
///
/// With `μ_a(e1, e2) = αe1 + βe2` the new basis is `e1' = αe1 + βe2`,
/// `e2' = α⁻¹e2` when `α ≠ 0`, and `e1' = e2`, `e2' = −β⁻¹e1` otherwise.
pub fn reduce_skew(alg: &Algebra) -> Result<(Algebra, BasisChange, SkewKind)> {
    let f = alg.field();
    require_odd(f, "skew normalization")?;
    let skew = alg.skew_part()?;
    let w = skew.product(1, 2);
    if w.is_zero() {
        return Ok((alg.clone(), BasisChange::identity(f), SkewKind::Symmetric));
    }
    let (alpha, beta) = (&w.x1, &w.x2);
    let m = if !alpha.is_zero() {
        BasisChange::new(alpha.clone(), f.zero(), beta.clone(), alpha.inv()?)?
    } else {
        BasisChange::new(f.zero(), -beta.inv()?, f.one(), f.zero())?
    };
    Ok((alg.transform(&m)?, m, SkewKind::SkewNontrivial))
}

fn has_unit_skew(alg: &Algebra) -> Result<bool> {
    let skew = alg.skew_part()?;
    let f = alg.field();
    Ok(skew.product(1, 2) == &Vector2::e1(f))
}

/// Removes the cross term `β2` of the form by `(1, −β2/β1 / 0, 1)`.
///
/// Requires `μ_a(e1, e2) = e1` and `β1 ≠ 0`.
pub fn gauss_reduce(alg: &Algebra) -> Result<(Algebra, BasisChange)> {
    require_odd(alg.field(), "Gauss reduction")?;
    if !has_unit_skew(alg)? {
        return Err(Error::Precondition("skew part must be mu_a(e1, e2) = e1".into()));
    }
    if alg.beta(1).is_zero() {
        return Err(Error::Precondition("beta1 must be nonzero".into()));
    }
    let f = alg.field();
    let b = -(alg.beta(2) / alg.beta(1));
    let m = aut(f.one(), b)?;
    Ok((alg.transform(&m)?, m))
}

/// Symmetric-part constants `α1, β1, α2, β2, α4, β4` where `α2` is the
/// average of `α2` and `α3`.
struct SymView {
    a1: Scalar,
    b1: Scalar,
    a2: Scalar,
    b2: Scalar,
    a4: Scalar,
    b4: Scalar,
}

impl SymView {
    fn of(alg: &Algebra) -> Self {
        let half = alg.field().ratio(1, 2);
        SymView {
            a1: alg.alpha(1).clone(),
            b1: alg.beta(1).clone(),
            a2: (alg.alpha(2) + alg.alpha(3)) * half,
            b2: alg.beta(2).clone(),
            a4: alg.alpha(4).clone(),
            b4: alg.beta(4).clone(),
        }
    }
}

/// The canonical representative of the square class, scaled into place:
/// returns `t` with `t² x = rep(x)`.
fn square_class_scale(x: &Scalar) -> Result<(Scalar, Scalar)> {
    let rep = x
        .square_class_rep()
        .ok_or_else(|| Error::Precondition("square class of zero".into()))?;
    let t = (&rep / x)
        .sqrt()
        .expect("a value and its class representative differ by a square");
    Ok((t, rep))
}

/// Classifies an algebra over ℚ or `F_p` with `p` odd.
///
/// The returned trace satisfies
/// `alg.transform(&trace.witness()) == representative(&label)`.
pub fn classify(alg: &Algebra) -> Result<(ClassLabel, ReductionTrace)> {
    let f = alg.field();
    require_odd(f, "classification (use the F2 orbit census instead)")?;
    let mut trace = ReductionTrace::new(alg.clone());
    if alg.is_zero() {
        return Ok((ClassLabel::new(f, Family::Zero, vec![])?, trace));
    }
    let (_, m, kind) = reduce_skew(alg)?;
    trace.apply("skew-normalize", m)?;
    let label = match kind {
        SkewKind::SkewNontrivial => walk_skew(&mut trace)?,
        SkewKind::Symmetric => walk_symmetric(&mut trace)?,
    };
    Ok((label, trace))
}

fn walk_skew(trace: &mut ReductionTrace) -> Result<ClassLabel> {
    let f = trace.input.field();
    let s = SymView::of(trace.current());
    let one = f.one();
    if !s.b1.is_zero() {
        let (_, m) = gauss_reduce(trace.current())?;
        trace.apply("gauss", m)?;
        let s = SymView::of(trace.current());
        if !s.a1.is_zero() {
            trace.apply("scale", aut(s.a1.inv()?, f.zero())?)?;
            let s = SymView::of(trace.current());
            return ClassLabel::new(f, Family::Mu1, vec![s.b1, s.a2, s.a4, s.b4]);
        }
        if !s.a4.is_zero() {
            trace.apply("scale", aut(s.a4.clone(), f.zero())?)?;
            let s = SymView::of(trace.current());
            return ClassLabel::new(f, Family::Mu2, vec![s.b1, s.a2, s.b4]);
        }
        let (t, _) = square_class_scale(&s.b1)?;
        trace.apply("scale", aut(t, f.zero())?)?;
        let s = SymView::of(trace.current());
        return if s.b1.is_one() {
            ClassLabel::new(f, Family::Mu3, vec![s.a2, s.b4])
        } else if !s.b4.is_zero() {
            ClassLabel::new(f, Family::Mu4, vec![s.b1, s.a2, s.b4])
        } else {
            ClassLabel::new(f, Family::Mu5, vec![s.b1, s.a2])
        };
    }
    if s.a1 != s.b2 {
        let b = -(&s.a2 / (&s.a1 - &s.b2));
        trace.apply("shear", aut(one.clone(), b)?)?;
        let s = SymView::of(trace.current());
        if !s.a1.is_zero() {
            trace.apply("scale", aut(s.a1.inv()?, f.zero())?)?;
            let s = SymView::of(trace.current());
            return ClassLabel::new(f, Family::Mu6, vec![s.b2, s.a4, s.b4]);
        }
        trace.apply("scale", aut(s.b2.inv()?, f.zero())?)?;
        let s = SymView::of(trace.current());
        return ClassLabel::new(f, Family::Mu7, vec![s.a4, s.b4]);
    }
    if !s.a1.is_zero() {
        let b = -(&s.b4 / (f.from_i64(2) * &s.b2));
        trace.apply("shear", aut(one, b)?)?;
        let s = SymView::of(trace.current());
        trace.apply("scale", aut(s.a1.inv()?, f.zero())?)?;
        let s = SymView::of(trace.current());
        return ClassLabel::new(f, Family::Mu8, vec![s.a2, s.a4]);
    }
    let gap = f.from_i64(2) * &s.a2 - &s.b4;
    if !gap.is_zero() {
        let b = -(&s.a4 / &gap);
        trace.apply("shear", aut(one, b)?)?;
        let s = SymView::of(trace.current());
        return ClassLabel::new(f, Family::Mu9, vec![s.a2, s.b4]);
    }
    if !s.a4.is_zero() {
        trace.apply("scale", aut(s.a4.clone(), f.zero())?)?;
    }
    let s = SymView::of(trace.current());
    ClassLabel::new(f, Family::Mu10, vec![s.a2, s.a4])
}

fn walk_symmetric(trace: &mut ReductionTrace) -> Result<ClassLabel> {
    let f = trace.input.field();
    match trace.current().idempotents() {
        IdempotentSet::Line { base, direction } => {
            let m = BasisChange::from_columns(&base, &base.add(&direction))?;
            trace.apply("idempotent-basis", m)?;
            let cur = trace.current();
            ClassLabel::new(f, Family::Mu11, vec![cur.alpha(2).clone(), cur.beta(2).clone()])
        }
        IdempotentSet::Plane => Err(Error::Precondition(
            "every vector idempotent cannot occur outside characteristic 2".into(),
        )),
        IdempotentSet::Finite(pts) if pts.len() >= 2 => {
            let cur = trace.current().clone();
            let mut best: Option<((Scalar, Scalar), BasisChange)> = None;
            for u in &pts {
                for v in &pts {
                    if u == v {
                        continue;
                    }
                    let m = BasisChange::from_columns(u, v)?;
                    let t = cur.transform(&m)?;
                    let key = (t.alpha(2).clone(), t.beta(2).clone());
                    if best.as_ref().is_none_or(|(k, _)| key < *k) {
                        best = Some((key, m));
                    }
                }
            }
            let ((a2, b2), m) = best.expect("at least one ordered pair");
            trace.apply("idempotent-basis", m)?;
            ClassLabel::new(f, Family::Mu11, vec![a2, b2])
        }
        IdempotentSet::Finite(pts) if pts.len() == 1 => walk_one_idempotent(trace, &pts[0]),
        IdempotentSet::Finite(_) => walk_no_idempotent(trace),
    }
}

fn walk_one_idempotent(trace: &mut ReductionTrace, u: &Vector2) -> Result<ClassLabel> {
    let f = trace.input.field();
    let other = if u.x2.is_zero() { Vector2::e2(f) } else { Vector2::e1(f) };
    trace.apply("idempotent-basis", BasisChange::from_columns(u, &other)?)?;
    let (zero, one) = (f.zero(), f.one());
    let s = SymView::of(trace.current());
    if !s.b2.is_zero() {
        let shift = -(&s.b4 / (f.from_i64(2) * &s.b2));
        trace.apply("shear", fix_e1(shift, one.clone())?)?;
        let s = SymView::of(trace.current());
        if !s.a2.is_zero() {
            trace.apply("scale", fix_e1(zero, s.a2.inv()?)?)?;
            let s = SymView::of(trace.current());
            return ClassLabel::new(f, Family::Mu13K, vec![s.b2, s.a4]);
        }
        if !s.a4.is_zero() {
            let (t, _) = square_class_scale(&s.a4)?;
            trace.apply("scale", fix_e1(zero, t)?)?;
            let s = SymView::of(trace.current());
            return ClassLabel::new(f, Family::Mu15, vec![s.b2, s.a4]);
        }
        return ClassLabel::new(f, Family::Mu16, vec![s.b2]);
    }
    trace.apply("shear", fix_e1(-s.a2.clone(), one)?)?;
    let s = SymView::of(trace.current());
    if !s.b4.is_zero() {
        trace.apply("scale", fix_e1(zero, s.b4.inv()?)?)?;
        let s = SymView::of(trace.current());
        return ClassLabel::new(f, Family::Mu14K, vec![s.a4]);
    }
    if !s.a4.is_zero() {
        let (t, _) = square_class_scale(&s.a4)?;
        trace.apply("scale", fix_e1(zero, t)?)?;
    }
    let s = SymView::of(trace.current());
    ClassLabel::new(f, Family::Mu14, vec![s.a4])
}

fn first_with_nonzero_square(alg: &Algebra) -> Vector2 {
    let f = alg.field();
    [Vector2::e1(f), Vector2::e2(f), Vector2::from_i64(f, 1, 1)]
        .into_iter()
        .find(|v| !alg.square(v).is_zero())
        .expect("a nonzero commutative algebra has a nonzero square outside characteristic 2")
}

fn square_basis(alg: &Algebra, v: &Vector2) -> Result<BasisChange> {
    BasisChange::from_columns(v, &alg.square(v))
}

fn walk_no_idempotent(trace: &mut ReductionTrace) -> Result<ClassLabel> {
    let f = trace.input.field();
    let cur = trace.current().clone();
    if cur.image_dim() == 1 {
        let v = first_with_nonzero_square(&cur);
        trace.apply("square-basis", square_basis(&cur, &v)?)?;
        let b2 = trace.current().beta(2).clone();
        if b2.is_zero() {
            return ClassLabel::new(f, Family::Mu18, vec![]);
        }
        trace.apply("scale", square_scaling(&b2.inv()?)?)?;
        return ClassLabel::new(f, Family::Mu17, vec![]);
    }
    if f.is_finite() {
        let mut best: Option<([Scalar; 4], BasisChange)> = None;
        for v in Vector2::all(f).expect("finite field") {
            let sq = cur.square(&v);
            if sq.is_zero() {
                continue;
            }
            let m = BasisChange::from_columns(&v, &sq)?;
            let t = cur.transform(&m)?;
            let key = [t.alpha(2).clone(), t.beta(2).clone(), t.alpha(4).clone(), t.beta(4).clone()];
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, m));
            }
        }
        let (_, m) = best.expect("some square is nonzero");
        trace.apply("square-basis", m)?;
    } else {
        rational_square_basis(trace)?;
    }
    let t = trace.current();
    ClassLabel::new(
        f,
        Family::Mu18K,
        vec![t.alpha(2).clone(), t.beta(2).clone(), t.alpha(4).clone(), t.beta(4).clone()],
    )
}

/// Over ℚ, picks the generator `v` of the basis `(v, v²)` through the trace
/// form `T(x) = tr(y ↦ xy)`:
///
/// * `T ≠ 0` and `u² ≠ 0` for `u` spanning `ker T`: `v = t·u`, with `t` fixed
///   by `α4 = α2 + β4` (when `α4 ≠ 0`) or by a square-class representative;
/// * `T ≠ 0` and `u² = 0`: any `v` with `T(v) = 1`; these are all related by
///   automorphisms;
/// * `T = 0`: the first of `e1, e2, e1 + e2` with a nonzero square. This
///   last choice depends on the input basis.
fn rational_square_basis(trace: &mut ReductionTrace) -> Result<()> {
    let cur = trace.current().clone();
    let f = cur.field();
    let t1 = cur.alpha(1) + cur.beta(2);
    let t2 = cur.alpha(3) + cur.beta(4);
    if t1.is_zero() && t2.is_zero() {
        let v = first_with_nonzero_square(&cur);
        return trace.apply("square-basis", square_basis(&cur, &v)?);
    }
    let u = Vector2::new(-t2.clone(), t1.clone());
    if cur.square(&u).is_zero() {
        let z = if !t1.is_zero() {
            Vector2::new(t1.inv()?, f.zero())
        } else {
            Vector2::new(f.zero(), t2.inv()?)
        };
        return trace.apply("trace-basis", square_basis(&cur, &z)?);
    }
    trace.apply("kernel-basis", square_basis(&cur, &u)?)?;
    let k = trace.current().clone();
    let s = k.alpha(2) + k.beta(4);
    let t = if !k.alpha(4).is_zero() {
        &s / k.alpha(4)
    } else {
        square_class_scale(&s)?.0
    };
    trace.apply("scale", square_scaling(&t)?)
}

fn invalid(family: Family, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        family: family.name().into(),
        reason: reason.into(),
    }
}

/// Whether [`classify`] assigns `alg` a label that does not depend on the
/// basis it is given in. The only exception is the no-idempotent case over ℚ
/// with vanishing trace form, whose generator is taken from the input basis.
pub fn label_is_invariant(alg: &Algebra, label: &ClassLabel) -> bool {
    if label.family != Family::Mu18K || label.field.is_finite() {
        return true;
    }
    let t1 = alg.alpha(1) + alg.beta(2);
    let t2 = alg.alpha(3) + alg.beta(4);
    !(t1.is_zero() && t2.is_zero())
}

/// The structure constants of a family member, exactly as displayed for
/// that family. Parameters violating the family's side conditions are
/// rejected.
pub fn representative(label: &ClassLabel) -> Result<Algebra> {
    let f = label.field;
    let family = label.family;
    require_odd(f, "family representatives")?;
    let p = |name: &str| label.param(name).cloned().expect("validated by ClassLabel::new");
    let (z, o) = (f.zero(), f.one());
    let two = f.from_i64(2);
    let skew = |a2: &Scalar| (a2 + &o, a2 - &o);
    let constants: [Scalar; 8] = match family {
        Family::Zero => std::array::from_fn(|_| z.clone()),
        Family::Mu1 | Family::Mu2 | Family::Mu3 | Family::Mu4 | Family::Mu5 => {
            let a2 = p("alpha2");
            let (up, down) = skew(&a2);
            let (a1, b1, a4, b4) = match family {
                Family::Mu1 => (o.clone(), p("beta1"), p("alpha4"), p("beta4")),
                Family::Mu2 => (z.clone(), p("beta1"), o.clone(), p("beta4")),
                Family::Mu3 => (z.clone(), o.clone(), z.clone(), p("beta4")),
                Family::Mu4 => (z.clone(), p("beta1"), z.clone(), p("beta4")),
                _ => (z.clone(), p("beta1"), z.clone(), z.clone()),
            };
            if b1.is_zero() {
                return Err(invalid(family, "beta1 must be nonzero"));
            }
            if matches!(family, Family::Mu4 | Family::Mu5) && b1.is_square() {
                return Err(invalid(family, "beta1 must not be a square"));
            }
            if family == Family::Mu4 && b4.is_zero() {
                return Err(invalid(family, "beta4 must be nonzero"));
            }
            [a1, b1, up, z.clone(), down, z.clone(), a4, b4]
        }
        Family::Mu6 => {
            let b2 = p("beta2");
            if b2.is_one() {
                return Err(invalid(family, "beta2 must differ from 1"));
            }
            [o.clone(), z.clone(), o.clone(), b2.clone(), -&o, b2, p("alpha4"), p("beta4")]
        }
        Family::Mu7 => [z.clone(), z.clone(), o.clone(), o.clone(), -&o, o.clone(), p("alpha4"), p("beta4")],
        Family::Mu8 => {
            let (up, down) = skew(&p("alpha2"));
            [o.clone(), z.clone(), up, o.clone(), down, o.clone(), p("alpha4"), z.clone()]
        }
        Family::Mu9 => {
            let a2 = p("alpha2");
            let b4 = p("beta4");
            if b4 == &two * &a2 {
                return Err(invalid(family, "beta4 must differ from 2 alpha2"));
            }
            let (up, down) = skew(&a2);
            [z.clone(), z.clone(), up, z.clone(), down, z.clone(), z.clone(), b4]
        }
        Family::Mu10 => {
            let a2 = p("alpha2");
            let (up, down) = skew(&a2);
            [z.clone(), z.clone(), up, z.clone(), down, z.clone(), p("alpha4"), &two * &a2]
        }
        Family::Mu11 => {
            let (a2, b2) = (p("alpha2"), p("beta2"));
            [o.clone(), z.clone(), a2.clone(), b2.clone(), a2, b2, z.clone(), o.clone()]
        }
        Family::Mu12 => [o.clone(), z.clone(), o.clone(), z.clone(), o.clone(), z.clone(), p("alpha4"), z.clone()],
        Family::Mu13K => {
            let b2 = p("beta2");
            if b2.is_zero() {
                return Err(invalid(family, "beta2 must be nonzero"));
            }
            [o.clone(), z.clone(), o.clone(), b2.clone(), o.clone(), b2, p("alpha4"), z.clone()]
        }
        Family::Mu14 => [o.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), p("alpha4"), z.clone()],
        Family::Mu14K => [o.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), p("alpha4"), o.clone()],
        Family::Mu15 => {
            let b2 = p("beta2");
            if b2.is_zero() {
                return Err(invalid(family, "beta2 must be nonzero"));
            }
            if p("alpha4").is_zero() {
                return Err(invalid(family, "alpha4 must be nonzero"));
            }
            [o.clone(), z.clone(), z.clone(), b2.clone(), z.clone(), b2, p("alpha4"), z.clone()]
        }
        Family::Mu16 => {
            let b2 = p("beta2");
            if b2 == f.ratio(1, 2) {
                return Err(invalid(family, "beta2 must differ from 1/2"));
            }
            [o.clone(), z.clone(), z.clone(), b2.clone(), z.clone(), b2, z.clone(), z.clone()]
        }
        Family::Mu17 => [z.clone(), o.clone(), z.clone(), o.clone(), z.clone(), o.clone(), z.clone(), z.clone()],
        Family::Mu18 => [z.clone(), o.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        Family::Mu18K => {
            let (a2, b2) = (p("alpha2"), p("beta2"));
            [z.clone(), o.clone(), a2.clone(), b2.clone(), a2, b2, p("alpha4"), p("beta4")]
        }
    };
    let alg = Algebra::from_constants(f, constants)?;
    match family {
        Family::Mu13K | Family::Mu14K | Family::Mu15 => {
            if alg.idempotents().finite_count() != Some(1) {
                return Err(invalid(family, "parameters admit a second idempotent"));
            }
        }
        Family::Mu18K => {
            if alg.idempotents().finite_count() != Some(0) {
                return Err(invalid(family, "parameters admit an idempotent"));
            }
        }
        _ => {}
    }
    Ok(alg)
}
