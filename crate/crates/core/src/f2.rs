//! Algebras over `F_2` as sequences of R-codes, and their orbit census.
//!
//! Over `F_2` the nonzero vectors are `e1`, `e2` and `e3 = e1 + e2`, and the
//! six invertible matrices permute them. A product is one of `R0 = 0`,
//! `R1 = e1`, `R2 = e2`, `R3 = e3`, and an algebra is the sequence of its
//! four basis products ([`Seq4`]); the products on all nine pairs from
//! `{e1, e2, e3}` follow by additivity ([`Seq9`]).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, BasisChange, Vector2};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

pub const F2: FieldSpec = FieldSpec::Prime(2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rcode {
    R0,
    R1,
    R2,
    R3,
}

impl Rcode {
    pub const ALL: [Rcode; 4] = [Rcode::R0, Rcode::R1, Rcode::R2, Rcode::R3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Rcode {
        Rcode::ALL[i]
    }

    /// `Ri + Ri = R0`, `Ri + Rj = Rk` for `{i, j, k} = {1, 2, 3}`.
    pub fn add(self, other: Rcode) -> Rcode {
        // as bit pairs (x1, x2) this is xor: R1 = 01, R2 = 10, R3 = 11
        Rcode::from_index(self.index() ^ other.index())
    }

    pub fn to_vector(self) -> Vector2 {
        match self {
            Rcode::R0 => Vector2::from_i64(F2, 0, 0),
            Rcode::R1 => Vector2::from_i64(F2, 1, 0),
            Rcode::R2 => Vector2::from_i64(F2, 0, 1),
            Rcode::R3 => Vector2::from_i64(F2, 1, 1),
        }
    }

    pub fn from_vector(v: &Vector2) -> Option<Rcode> {
        let bits = (v.x1.residue()?, v.x2.residue()?);
        Some(match bits {
            (0, 0) => Rcode::R0,
            (1, 0) => Rcode::R1,
            (0, 1) => Rcode::R2,
            _ => Rcode::R3,
        })
    }
}

impl fmt::Display for Rcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rcode::R0 => "0",
            Rcode::R1 => "R1",
            Rcode::R2 => "R2",
            Rcode::R3 => "R3",
        })
    }
}

/// `(μ(e1,e1), μ(e1,e2), μ(e2,e1), μ(e2,e2))`.
pub type Seq4 = [Rcode; 4];

/// Products on the pairs `(1,1) (1,2) (2,1) (2,2) (1,3) (2,3) (3,1) (3,2) (3,3)`.
pub type Seq9 = [Rcode; 9];

const SEQ9_PAIRS: [(usize, usize); 9] = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 3), (3, 1), (3, 2), (3, 3)];

pub fn extend(s: &Seq4) -> Seq9 {
    let [i, j, k, l] = *s;
    [i, j, k, l, i.add(j), k.add(l), i.add(k), j.add(l), i.add(j).add(k).add(l)]
}

fn seq9_at(s9: &Seq9, a: usize, b: usize) -> Rcode {
    let pos = SEQ9_PAIRS.iter().position(|&p| p == (a, b)).expect("indices in 1..=3");
    s9[pos]
}

pub fn all_seq4() -> Vec<Seq4> {
    (0..256usize)
        .map(|n| [n >> 6, (n >> 4) & 3, (n >> 2) & 3, n & 3].map(Rcode::from_index))
        .collect()
}

pub fn format_seq4(s: &Seq4) -> String {
    format!("({},{},{},{})", s[0], s[1], s[2], s[3])
}

/// Parses `(a,b,c,d)` with entries `0`, `R0`..`R3`. A single trailing comma
/// before the closing parenthesis is tolerated; anything else is an error.
pub fn parse_seq4(text: &str) -> Result<Seq4> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Format(format!("{text:?} is not a parenthesized sequence")))?;
    if inner.contains(['(', ')']) {
        return Err(Error::Format(format!("unbalanced parentheses in {text:?}")));
    }
    let inner = inner.strip_suffix(',').unwrap_or(inner);
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Format(format!("{text:?} has {} entries, expected 4", parts.len())));
    }
    let mut out = [Rcode::R0; 4];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = match *p {
            "0" | "R0" | "R_0" => Rcode::R0,
            "R1" | "R_1" => Rcode::R1,
            "R2" | "R_2" => Rcode::R2,
            "R3" | "R_3" => Rcode::R3,
            other => return Err(Error::Format(format!("unknown entry {other:?} in {text:?}"))),
        };
    }
    Ok(out)
}

pub fn seq4_to_algebra(s: &Seq4) -> Algebra {
    Algebra::new(F2, s.map(Rcode::to_vector)).expect("F2 vectors")
}

pub fn algebra_to_seq4(alg: &Algebra) -> Option<Seq4> {
    if alg.field() != F2 {
        return None;
    }
    let p = alg.products();
    Some([
        Rcode::from_vector(&p[0])?,
        Rcode::from_vector(&p[1])?,
        Rcode::from_vector(&p[2])?,
        Rcode::from_vector(&p[3])?,
    ])
}

/// Permutations of `{1, 2, 3}`, i.e. of `{e1, e2, e3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Perm {
    Id,
    T12,
    T13,
    T23,
    /// `1 → 2 → 3 → 1`.
    C,
    /// `1 → 3 → 2 → 1`.
    C2,
}

impl Perm {
    pub const ALL: [Perm; 6] = [Perm::Id, Perm::T12, Perm::T13, Perm::T23, Perm::C, Perm::C2];

    /// Images of `1, 2, 3`.
    fn images(self) -> [usize; 3] {
        match self {
            Perm::Id => [1, 2, 3],
            Perm::T12 => [2, 1, 3],
            Perm::T13 => [3, 2, 1],
            Perm::T23 => [1, 3, 2],
            Perm::C => [2, 3, 1],
            Perm::C2 => [3, 1, 2],
        }
    }

    pub fn apply(self, i: usize) -> usize {
        self.images()[i - 1]
    }

    fn from_images(images: [usize; 3]) -> Perm {
        *Perm::ALL
            .iter()
            .find(|p| p.images() == images)
            .expect("a permutation of 1..=3")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm) -> Perm {
        Perm::from_images([1, 2, 3].map(|i| self.apply(other.apply(i))))
    }

    pub fn inverse(self) -> Perm {
        let mut images = [0; 3];
        for i in 1..=3 {
            images[self.apply(i) - 1] = i;
        }
        Perm::from_images(images)
    }

    pub fn name(self) -> &'static str {
        match self {
            Perm::Id => "Id",
            Perm::T12 => "t12",
            Perm::T13 => "t13",
            Perm::T23 => "t23",
            Perm::C => "c",
            Perm::C2 => "c2",
        }
    }
}

fn rcode_perm(p: Perm, r: Rcode) -> Rcode {
    match r {
        Rcode::R0 => Rcode::R0,
        other => Rcode::from_index(p.apply(other.index())),
    }
}

/// The matrix whose columns are `e_σ(1)` and `e_σ(2)`.
pub fn matrix_for_perm(p: Perm) -> BasisChange {
    let c1 = Rcode::from_index(p.apply(1)).to_vector();
    let c2 = Rcode::from_index(p.apply(2)).to_vector();
    BasisChange::from_columns(&c1, &c2).expect("distinct nonzero vectors over F2 are independent")
}

/// `s'(i, j) = σ⁻¹(s(σ(i), σ(j)))`: the sequence of the algebra in the basis
/// `(e_σ(1), e_σ(2))`. Acting by `q` then by `p` equals acting by `q ∘ p`.
pub fn perm_act(p: Perm, s: &Seq4) -> Seq4 {
    let s9 = extend(s);
    let inv = p.inverse();
    [(1, 1), (1, 2), (2, 1), (2, 2)].map(|(i, j)| rcode_perm(inv, seq9_at(&s9, p.apply(i), p.apply(j))))
}

/// The subgroups of `Σ3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Subgroup {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
}

impl Subgroup {
    pub fn elements(self) -> &'static [Perm] {
        match self {
            Subgroup::G1 => &[Perm::Id],
            Subgroup::G2 => &[Perm::Id, Perm::T12],
            Subgroup::G3 => &[Perm::Id, Perm::T13],
            Subgroup::G4 => &[Perm::Id, Perm::T23],
            Subgroup::G5 => &[Perm::Id, Perm::C, Perm::C2],
            Subgroup::G6 => &Perm::ALL,
        }
    }

    pub fn order(self) -> usize {
        self.elements().len()
    }

    pub fn from_elements(perms: &[Perm]) -> Option<Subgroup> {
        let mut sorted = perms.to_vec();
        sorted.sort();
        [Subgroup::G1, Subgroup::G2, Subgroup::G3, Subgroup::G4, Subgroup::G5, Subgroup::G6]
            .into_iter()
            .find(|g| {
                let mut e = g.elements().to_vec();
                e.sort();
                e == sorted
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    /// The smallest member, with `R0 < R1 < R2 < R3` entrywise.
    pub representative: Seq4,
    /// Sorted.
    pub members: Vec<Seq4>,
    pub isotropy: Subgroup,
}

#[derive(Debug, Clone)]
pub struct F2Census {
    pub orbits: Vec<OrbitRecord>,
    /// `|Fix(g)|` for `g` in [`Perm::ALL`] order.
    pub burnside_fixed_points: [usize; 6],
}

#[derive(Debug, Clone, Serialize)]
pub struct F2Summary {
    pub class_count: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub burnside_fixed_points: [usize; 6],
}

impl F2Census {
    pub fn class_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for o in &self.orbits {
            *h.entry(o.members.len()).or_insert(0) += 1;
        }
        h
    }

    /// `Σ |Fix(g)| == 6 · class_count`.
    pub fn burnside_balances(&self) -> bool {
        self.burnside_fixed_points.iter().sum::<usize>() == 6 * self.class_count()
    }

    pub fn summary(&self) -> F2Summary {
        F2Summary {
            class_count: self.class_count(),
            histogram: self.histogram(),
            burnside_fixed_points: self.burnside_fixed_points,
        }
    }

    pub fn orbit_containing(&self, s: &Seq4) -> Option<&OrbitRecord> {
        self.orbits.iter().find(|o| o.members.binary_search(s).is_ok())
    }

    /// One line per orbit: representative first, then the other members and
    /// the isotropy subgroup.
    pub fn table_lines(&self) -> Vec<String> {
        self.orbits
            .iter()
            .map(|o| {
                let others: Vec<String> = o
                    .members
                    .iter()
                    .filter(|m| **m != o.representative)
                    .map(format_seq4)
                    .collect();
                format!(
                    "{} size={} isotropy={:?} others=[{}]",
                    format_seq4(&o.representative),
                    o.members.len(),
                    o.isotropy,
                    others.join(" ")
                )
            })
            .collect()
    }
}

pub fn enumerate_orbits() -> F2Census {
    let all = all_seq4();
    let mut seen = std::collections::BTreeSet::new();
    let mut orbits = Vec::new();
    for s in &all {
        if seen.contains(s) {
            continue;
        }
        let mut members: Vec<Seq4> = Perm::ALL.iter().map(|&p| perm_act(p, s)).collect();
        members.sort();
        members.dedup();
        let fixing: Vec<Perm> = Perm::ALL.iter().copied().filter(|&p| perm_act(p, s) == *s).collect();
        let isotropy = Subgroup::from_elements(&fixing).expect("a stabilizer is a subgroup");
        seen.extend(members.iter().copied());
        orbits.push(OrbitRecord {
            representative: members[0],
            members,
            isotropy,
        });
    }
    let burnside_fixed_points = Perm::ALL.map(|p| all.iter().filter(|s| perm_act(p, s) == **s).count());
    F2Census {
        orbits,
        burnside_fixed_points,
    }
}

/// One row of the published orbit tables, transcribed as printed.
#[derive(Debug, Clone, Copy)]
pub struct PublishedOrbit {
    pub name: &'static str,
    pub representative: &'static str,
    /// The printed orbit list; `sN` stands for the representative itself.
    pub orbit: &'static str,
    /// Order of the isotropy subgroup stated for the row.
    pub isotropy_order: usize,
}

pub const PUBLISHED_ORBITS: [PublishedOrbit; 17] = [
    PublishedOrbit { name: "s1", representative: "(0,0,0,0)", orbit: "s1", isotropy_order: 6 },
    PublishedOrbit { name: "s2", representative: "(R1,R3,R3,R2)", orbit: "s2", isotropy_order: 6 },
    PublishedOrbit { name: "s3", representative: "(R3,R2,R2,R1)", orbit: "s3, (R2,R1,R1,R3)", isotropy_order: 3 },
    PublishedOrbit { name: "s4", representative: "(0,R1,R2,0)", orbit: "s4, (R1,R3,R2,0), (0,R1,R3,R2)", isotropy_order: 2 },
    PublishedOrbit { name: "s5", representative: "(0,R2,R1,0)", orbit: "s5,(R1,R2,R3,0),(0,R3,R1,R2)", isotropy_order: 2 },
    PublishedOrbit { name: "s6", representative: "(0,R3,R3,0)", orbit: "s6, (0,R1,R1,0),(0,R2,R2),0)", isotropy_order: 2 },
    PublishedOrbit { name: "s7", representative: "(R1,0,0,R2)", orbit: "s7,(R1,R2,R2,R2),(R1,R1,R1,R2)", isotropy_order: 2 },
    PublishedOrbit { name: "s8", representative: "(R1,R1,R2,R2)", orbit: "s8,(0,R1,0,R2),(R1,0,R2,0)", isotropy_order: 2 },
    PublishedOrbit { name: "s9", representative: "(R1,R2,R1,R2)", orbit: "s9,(0,0,R1,R2),(R1,R2,0,0,)", isotropy_order: 2 },
    PublishedOrbit { name: "s10", representative: "(R2,0,0,R1)", orbit: "s10,(R1,R3,R3,R3),(R3,R3,R3,R1)", isotropy_order: 2 },
    PublishedOrbit { name: "s11", representative: "(R2,R1,R2,R1)", orbit: "s11,(0,0,R1,R3),(R3,R2,0,0)", isotropy_order: 2 },
    PublishedOrbit { name: "s12", representative: "(R2,R2,R1,R1)", orbit: "s12,(0,R1,0,R3),(R3,0,R2,0)", isotropy_order: 2 },
    PublishedOrbit { name: "s13", representative: "(R2,R3,R3,R1)", orbit: "s13,(R1,R2,R2,R3),(R3,R1,R1,R2)", isotropy_order: 2 },
    PublishedOrbit { name: "s14", representative: "(R3,0,0,R3)", orbit: "s14,(0,R1,R1,R1),(R2,R2,R2,0)", isotropy_order: 2 },
    PublishedOrbit { name: "s15", representative: "(R3,R1,R2,R3)", orbit: "s15,(R1,R2,R3,R1),(R2,R3,R1,R3)", isotropy_order: 2 },
    PublishedOrbit { name: "s16", representative: "(R3,R2,R1,R3)", orbit: "s16,(R1,R3,R2,R1),(R2,R1,R3,R2)", isotropy_order: 2 },
    PublishedOrbit { name: "s17", representative: "(R3,R3,R3,R3)", orbit: "s17, (0,0,0,R1),(R2,0,0,0)", isotropy_order: 2 },
];

/// Outcome of comparing one published row with the computed orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCheck {
    pub name: &'static str,
    /// Printed fragments that do not parse as a sequence.
    pub malformed: Vec<String>,
    /// Computed members absent from the printed list.
    pub missing: Vec<Seq4>,
    /// Printed members outside the computed orbit.
    pub extra: Vec<Seq4>,
    pub isotropy_matches: bool,
}

impl RowCheck {
    pub fn is_clean(&self) -> bool {
        self.malformed.is_empty() && self.missing.is_empty() && self.extra.is_empty() && self.isotropy_matches
    }
}

/// Splits an orbit list at commas outside parentheses, then tries to read
/// each fragment that starts with `(` as a sequence. Fragments with stray
/// parentheses are reported as malformed rather than repaired.
fn split_orbit_list(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth <= 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur.trim().to_string());
    out.into_iter().filter(|s| !s.is_empty()).collect()
}

pub fn check_published_row(census: &F2Census, row: &PublishedOrbit) -> Result<RowCheck> {
    let rep = parse_seq4(row.representative)?;
    let computed = census
        .orbit_containing(&rep)
        .ok_or_else(|| Error::Format(format!("{} not found", row.representative)))?;
    let mut listed = vec![rep];
    let mut malformed = Vec::new();
    for frag in split_orbit_list(row.orbit) {
        if frag == row.name {
            continue;
        }
        match parse_seq4(&frag) {
            Ok(s) => listed.push(s),
            Err(_) => malformed.push(frag),
        }
    }
    listed.sort();
    listed.dedup();
    let missing = computed.members.iter().filter(|m| !listed.contains(m)).copied().collect();
    let extra = listed.iter().filter(|m| !computed.members.contains(m)).copied().collect();
    Ok(RowCheck {
        name: row.name,
        malformed,
        missing,
        extra,
        isotropy_matches: computed.isotropy.order() == row.isotropy_order,
    })
}

pub fn check_published_orbits(census: &F2Census) -> Result<Vec<RowCheck>> {
    PUBLISHED_ORBITS.iter().map(|r| check_published_row(census, r)).collect()
}
