//! Exact scalars over the rationals and over small prime fields.
//!
//! Every structure constant, matrix entry and vector coordinate in the crate
//! is a [`Scalar`]. A scalar carries its field with it, so mixing a rational
//! with a residue, or residues of different moduli, is detected instead of
//! silently producing garbage.
//!
//! Text form is part of the file format and is bit-exact: rationals render as
//! `n/d` in lowest terms with the sign on the numerator (`-3/2`, `0`, `7`),
//! residues as bare integers in `0..p`. [`FieldSpec::parse_scalar`] accepts
//! exactly the rendered forms and nothing else.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest prime modulus accepted by [`FieldSpec::prime`]. Square roots and
/// polynomial roots over `F_p` are found by exhaustive search.
pub const MAX_PRIME: u32 = 997;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("unsupported field `{0}`")]
    Unsupported(String),
    #[error("scalar field mismatch: {left} vs {right}")]
    Mismatch { left: FieldSpec, right: FieldSpec },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is identically zero")]
    IdenticallyZero,
    #[error("`{input}` is not a canonical element of {field}")]
    Parse { input: String, field: FieldSpec },
}

/// The field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !num_prime::nt_funcs::is_prime64(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > u64::from(MAX_PRIME) {
            return Err(FieldError::PrimeTooLarge(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u32> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(p),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Prime {
                value: n.rem_euclid(i64::from(p)) as u32,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field. Panics if `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        self.from_i64(num) / self.from_i64(den)
    }

    pub fn from_rational(self, q: &BigRational) -> Option<Scalar> {
        match self {
            FieldSpec::Rational => Some(Scalar::Rational(q.clone())),
            FieldSpec::Prime(p) => {
                let modulus = BigInt::from(p);
                let den = q.denom().mod_floor(&modulus);
                if den.is_zero() {
                    return None;
                }
                let num = q.numer().mod_floor(&modulus);
                let num = self.from_i64(num.to_i64().expect("residue fits"));
                let den = self.from_i64(den.to_i64().expect("residue fits"));
                Some(num / den)
            }
        }
    }

    /// All elements in increasing residue order; `None` for the rationals.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(
                (0..p)
                    .map(|value| Scalar::Prime { value, modulus: p })
                    .collect(),
            ),
        }
    }

    /// Parses the canonical text form of an element of this field.
    pub fn parse_scalar(self, input: &str) -> Result<Scalar, FieldError> {
        let err = || FieldError::Parse {
            input: input.to_string(),
            field: self,
        };
        let parsed = match self {
            FieldSpec::Rational => {
                let (num, den) = match input.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (input, None),
                };
                let num = parse_decimal(num, true).ok_or_else(err)?;
                let den = match den {
                    Some(d) => parse_decimal(d, false).ok_or_else(err)?,
                    None => BigInt::one(),
                };
                if den.is_zero() {
                    return Err(err());
                }
                Scalar::Rational(BigRational::new(num, den))
            }
            FieldSpec::Prime(p) => {
                let value = parse_decimal(input, false)
                    .and_then(|v| v.to_u32())
                    .ok_or_else(err)?;
                if value >= p {
                    return Err(err());
                }
                Scalar::Prime { value, modulus: p }
            }
        };
        if parsed.to_string() != input {
            return Err(err());
        }
        Ok(parsed)
    }
}

fn parse_decimal(s: &str, allow_minus: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_minus => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("Q"),
            FieldSpec::Prime(2) => f.write_str("F2"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `Q`, `F2` and `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" => Ok(FieldSpec::Rational),
            "F2" => Ok(FieldSpec::Prime(2)),
            _ => match s.strip_prefix("Fp:") {
                Some(p) => {
                    let p: u64 = p.parse().map_err(|_| FieldError::Unsupported(s.into()))?;
                    FieldSpec::prime(p)
                }
                None => Err(FieldError::Unsupported(s.into())),
            },
        }
    }
}

/// An element of ℚ (always in lowest terms) or of `F_p` (residue in `0..p`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Prime { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Prime { value, .. } => Some(*value),
        }
    }

    /// Image under ℚ → F_p, when the denominator is invertible mod `p`.
    pub fn reduce_mod(&self, p: u32) -> Option<Scalar> {
        let q = self.as_rational()?;
        FieldSpec::Prime(p).from_rational(q)
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::Mismatch {
                left: self.field(),
                right: other.field(),
            })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: ((u64::from(*a) * u64::from(*b)) % u64::from(*modulus)) as u32,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, modulus } => {
                let m = i64::from(*modulus);
                let g = i64::from(*value).extended_gcd(&m);
                Scalar::Prime {
                    value: g.x.rem_euclid(m) as u32,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// A square root if one exists in the field. Over ℚ the nonnegative root,
    /// over `F_p` the smaller residue.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = exact_isqrt(q.numer())?;
                let d = exact_isqrt(q.denom())?;
                Some(Scalar::Rational(BigRational::new(n, d)))
            }
            Scalar::Prime { value, modulus } => {
                let (v, p) = (u64::from(*value), u64::from(*modulus));
                (0..*modulus)
                    .find(|r| (u64::from(*r) * u64::from(*r)) % p == v)
                    .map(|r| Scalar::Prime {
                        value: r,
                        modulus: *modulus,
                    })
            }
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Canonical representative of the class of `self` modulo nonzero
    /// squares: the squarefree integer part over ℚ, and `1` or the least
    /// quadratic non-residue over `F_p`. `None` for zero.
    pub fn square_class_rep(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(q) => {
                // m/n and m*n differ by the square n^2
                let prod = q.numer() * q.denom();
                let sign = prod.sign();
                let core = squarefree_part(prod.magnitude());
                let core = BigInt::from_biguint(if sign == Sign::Minus { Sign::Minus } else { Sign::Plus }, core);
                Some(Scalar::Rational(BigRational::from_integer(core)))
            }
            Scalar::Prime { modulus, .. } => {
                let field = self.field();
                if self.is_square() {
                    return Some(field.one());
                }
                (2..*modulus)
                    .map(|n| field.from_i64(i64::from(n)))
                    .find(|n| !n.is_square())
            }
        }
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn squarefree_part(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    num_prime::nt_funcs::factorize(n.clone())
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order over ℚ, residue order over `F_p`; scalars of different
/// fields are ordered by field first.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) => {
                p.cmp(q).then(a.cmp(b))
            }
            _ => self.field().cmp(&other.field()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

// The operator impls panic on field mismatch; the `checked_*` methods are the
// fallible versions. Algebras validate their field once at construction.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

/// All roots in the field of `a t^2 + b t + c`, sorted and duplicate-free.
///
/// Returns [`FieldError::IdenticallyZero`] when all three coefficients
/// vanish, since then every element is a root.
pub fn solve_quadratic(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Vec<Scalar>, FieldError> {
    a.same_field(b)?;
    a.same_field(c)?;
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(FieldError::IdenticallyZero);
    }
    let field = a.field();
    if a.is_zero() {
        if b.is_zero() {
            return Ok(Vec::new());
        }
        return Ok(vec![-c / b]);
    }
    let mut roots = if field.characteristic() == 2 {
        field
            .elements()
            .expect("finite")
            .into_iter()
            .filter(|t| (a * t * t + b * t + c).is_zero())
            .collect()
    } else {
        let disc = b * b - field.from_i64(4) * a * c;
        match disc.sqrt() {
            None => Vec::new(),
            Some(r) => {
                let two_a = field.from_i64(2) * a;
                vec![(-b + &r) / &two_a, (-b - &r) / &two_a]
            }
        }
    };
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// All roots in the field of the polynomial with coefficients `coeffs`
/// (constant term first), degree at most 3. Sorted and duplicate-free.
///
/// Over `F_p` the roots are found by enumeration. Over ℚ a cubic is made
/// monic with integer coefficients, whose rational roots are integers; those
/// are located exactly by bisection on the monotone pieces between the
/// critical points, so no factorisation is needed.
pub fn polynomial_roots(coeffs: &[Scalar]) -> Result<Vec<Scalar>, FieldError> {
    let Some(first) = coeffs.first() else {
        return Err(FieldError::IdenticallyZero);
    };
    for c in coeffs {
        first.same_field(c)?;
    }
    assert!(coeffs.len() <= 4, "degree above 3 is not supported");
    let field = first.field();
    let degree = match coeffs.iter().rposition(|c| !c.is_zero()) {
        None => return Err(FieldError::IdenticallyZero),
        Some(d) => d,
    };
    if let Some(elements) = field.elements() {
        return Ok(elements
            .into_iter()
            .filter(|t| horner(&coeffs[..=degree], t).is_zero())
            .collect());
    }
    let zero = field.zero();
    match degree {
        0 => Ok(Vec::new()),
        1 => solve_quadratic(&zero, &coeffs[1], &coeffs[0]),
        2 => solve_quadratic(&coeffs[2], &coeffs[1], &coeffs[0]),
        _ => {
            let rats: Vec<&BigRational> = coeffs.iter().map(|c| c.as_rational().expect("rational")).collect();
            let mut roots: Vec<Scalar> = rational_cubic_roots(&rats)
                .into_iter()
                .map(Scalar::Rational)
                .collect();
            roots.sort();
            roots.dedup();
            Ok(roots)
        }
    }
}

fn horner(coeffs: &[Scalar], t: &Scalar) -> Scalar {
    coeffs
        .iter()
        .rev()
        .fold(t.field().zero(), |acc, c| acc * t + c)
}

fn rational_cubic_roots(c: &[&BigRational]) -> Vec<BigRational> {
    let lcm = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = c.iter().map(|q| (*q * &lcm).to_integer()).collect();
    let (a0, a1, a2, a3) = (&ints[0], &ints[1], &ints[2], &ints[3]);
    // t = a3 * m turns a3^2 f(m) into a monic integer cubic
    let coef_a = a2.clone();
    let coef_b = a1 * a3;
    let coef_c = a0 * a3 * a3;
    monic_cubic_integer_roots(&coef_a, &coef_b, &coef_c)
        .into_iter()
        .map(|t| BigRational::new(t, a3.clone()))
        .collect()
}

/// Integer roots of `t^3 + a t^2 + b t + c`.
fn monic_cubic_integer_roots(a: &BigInt, b: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let g = |t: &BigInt| ((t + a) * t + b) * t + c;
    let bound = BigInt::one() + a.abs().max(b.abs()).max(c.abs());
    let three = BigInt::from(3);
    let e = a * a - &three * b;
    let mut roots = Vec::new();
    let mut intervals = Vec::new();
    if e.is_negative() {
        intervals.push((-&bound, bound.clone()));
    } else {
        // critical points (-a -+ sqrt(e)) / 3, with sqrt(e) in [s, s+1)
        let s = e.sqrt();
        let lo_c_low = (-a - &s - BigInt::one()).div_floor(&three);
        let lo_c_high = (-a - &s).div_ceil(&three);
        let hi_c_low = (-a + &s).div_floor(&three);
        let hi_c_high = (-a + &s + BigInt::one()).div_ceil(&three);
        for range in [(&lo_c_low, &lo_c_high), (&hi_c_low, &hi_c_high)] {
            let mut t = range.0 - 1;
            while t <= range.1 + 1 {
                if g(&t).is_zero() {
                    roots.push(t.clone());
                }
                t += 1;
            }
        }
        intervals.push((-&bound, lo_c_low - 1));
        intervals.push((lo_c_high + 1, hi_c_low - 1));
        intervals.push((hi_c_high + 1, bound));
    }
    for (lo, hi) in intervals {
        if lo > hi {
            continue;
        }
        if let Some(r) = monotone_integer_root(&g, lo, hi) {
            roots.push(r);
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn monotone_integer_root(g: &dyn Fn(&BigInt) -> BigInt, mut lo: BigInt, mut hi: BigInt) -> Option<BigInt> {
    let f_lo = g(&lo);
    let f_hi = g(&hi);
    if f_lo.is_zero() {
        return Some(lo);
    }
    if f_hi.is_zero() {
        return Some(hi);
    }
    if f_lo.sign() == f_hi.sign() {
        return None;
    }
    let lo_sign = f_lo.sign();
    while &hi - &lo > BigInt::one() {
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        let f_mid = g(&mid);
        if f_mid.is_zero() {
            return Some(mid);
        }
        if f_mid.sign() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}
