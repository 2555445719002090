//! The closed-form change-of-basis formulas as published, line by line.
//!
//! [`Algebra::transform`] does not use these; they exist so the printed
//! formulas can be checked against the direct computation. The eighth printed
//! line carries the label `β'1` although its right-hand side is `β'4`.

use crate::algebra::{Algebra, BasisChange};
use crate::field::Scalar;

/// One printed line of the formula block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublishedLine {
    /// The left-hand side exactly as printed.
    pub printed_label: &'static str,
    /// The constant the right-hand side actually computes, as an index into
    /// `α1, β1, α2, β2, α3, β3, α4, β4`.
    pub computes: usize,
    pub value: Scalar,
}

impl PublishedLine {
    pub fn label_matches(&self) -> bool {
        CONSTANT_NAMES[self.computes] == self.printed_label
    }
}

pub const CONSTANT_NAMES: [&str; 8] = ["α'1", "β'1", "α'2", "β'2", "α'3", "β'3", "α'4", "β'4"];

const PRINTED_LABELS: [&str; 8] = ["α'1", "β'1", "α'2", "β'2", "α'3", "β'3", "α'4", "β'1"];

/// Evaluates the eight printed lines for `A` and `M = (a b / c d)`.
pub fn published_lines(alg: &Algebra, m: &BasisChange) -> Vec<PublishedLine> {
    let [[a, b], [c, d]] = m.rows();
    let delta = m.delta();
    let al = |k: usize| alg.alpha(k);
    let be = |k: usize| alg.beta(k);

    // coefficient patterns (k1, k2, k3, k4) of the four constants for each product
    let patterns: [[Scalar; 4]; 4] = [
        [a * a, a * c, a * c, c * c],
        [a * b, a * d, b * c, c * d],
        [a * b, b * c, a * d, c * d],
        [b * b, b * d, b * d, d * d],
    ];
    let mut out = Vec::with_capacity(8);
    for (slot, k) in patterns.iter().enumerate() {
        let sa = &k[0] * al(1) + &k[1] * al(2) + &k[2] * al(3) + &k[3] * al(4);
        let sb = &k[0] * be(1) + &k[1] * be(2) + &k[2] * be(3) + &k[3] * be(4);
        let alpha = (&sa * d - &sb * b) / delta;
        let beta = (-(&sa * c) + &sb * a) / delta;
        out.push(PublishedLine {
            printed_label: PRINTED_LABELS[2 * slot],
            computes: 2 * slot,
            value: alpha,
        });
        out.push(PublishedLine {
            printed_label: PRINTED_LABELS[2 * slot + 1],
            computes: 2 * slot + 1,
            value: beta,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn only_the_last_label_is_wrong() {
        let q = FieldSpec::Rational;
        let alg = Algebra::from_i64(q, [1, 2, 3, 4, 5, 6, 7, 8]);
        let m = BasisChange::from_i64(q, 2, 1, -1, 3).unwrap();
        let lines = published_lines(&alg, &m);
        let bad: Vec<usize> = (0..8).filter(|&i| !lines[i].label_matches()).collect();
        assert_eq!(bad, vec![7]);
        let direct = alg.transform(&m).unwrap().constants();
        for line in &lines {
            assert_eq!(line.value, direct[line.computes]);
        }
    }
}
