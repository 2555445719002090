//! The F2 orbit census against the matrix action and the code-packed census.

use std::collections::BTreeSet;

use twoalg_core::f2::*;
use twoalg_core::iso::{classify_exhaustive, encode};
use twoalg_core::BasisChange;

#[test]
fn counts_histogram_and_burnside() {
    let census = enumerate_orbits();
    assert_eq!(all_seq4().len(), 256);
    assert_eq!(census.class_count(), 52);
    let hist: Vec<(usize, usize)> = census.histogram().into_iter().collect();
    assert_eq!(hist, [(1, 2), (2, 1), (3, 14), (6, 35)]);
    assert!(census.burnside_balances());
    // fixed points recounted without perm_act: |Fix(M)| under the matrix action
    for (k, p) in Perm::ALL.iter().enumerate() {
        let m = matrix_for_perm(*p);
        let fixed = all_seq4()
            .iter()
            .filter(|s| seq4_to_algebra(s).transform(&m).unwrap() == seq4_to_algebra(s))
            .count();
        assert_eq!(fixed, census.burnside_fixed_points[k], "{}", p.name());
    }
    let total: usize = census.orbits.iter().map(|o| o.members.len()).sum();
    assert_eq!(total, 256);
}

#[test]
fn orbit_size_times_isotropy_is_six() {
    for o in enumerate_orbits().orbits {
        assert_eq!(o.members.len() * o.isotropy.order(), 6);
        assert_eq!(o.representative, o.members[0]);
    }
}

#[test]
fn permutation_action_is_the_matrix_action() {
    let mut mismatches = 0;
    for s in all_seq4() {
        for p in Perm::ALL {
            let by_matrix = algebra_to_seq4(&seq4_to_algebra(&s).transform(&matrix_for_perm(p)).unwrap()).unwrap();
            if perm_act(p, &s) != by_matrix {
                mismatches += 1;
            }
        }
    }
    assert_eq!(mismatches, 0);
}

#[test]
fn matrices_for_permutations_are_all_of_gl2() {
    let mut from_perms: Vec<String> = Perm::ALL.iter().map(|p| matrix_for_perm(*p).to_string()).collect();
    let mut gl: Vec<String> = BasisChange::all_invertible(F2).unwrap().iter().map(|m| m.to_string()).collect();
    from_perms.sort();
    gl.sort();
    assert_eq!(from_perms, gl);
}

#[test]
fn acting_by_q_then_p_is_acting_by_q_after_p() {
    for s in all_seq4() {
        for p in Perm::ALL {
            for q in Perm::ALL {
                assert_eq!(perm_act(p, &perm_act(q, &s)), perm_act(q.compose(p), &s));
                let mq = matrix_for_perm(q);
                let mp = matrix_for_perm(p);
                assert_eq!(mq.compose(&mp), matrix_for_perm(q.compose(p)));
            }
        }
    }
}

#[test]
fn agrees_with_code_packed_census() {
    let census = enumerate_orbits();
    let part = classify_exhaustive(F2, false).unwrap();
    let ours: BTreeSet<Vec<u32>> = census
        .orbits
        .iter()
        .map(|o| {
            let mut codes: Vec<u32> = o.members.iter().map(|s| encode(&seq4_to_algebra(s)).unwrap()).collect();
            codes.sort();
            codes
        })
        .collect();
    let theirs: BTreeSet<Vec<u32>> = part.members().into_iter().collect();
    assert_eq!(ours, theirs);
}

#[test]
fn seq4_round_trip() {
    for s in all_seq4() {
        assert_eq!(algebra_to_seq4(&seq4_to_algebra(&s)), Some(s));
        assert_eq!(parse_seq4(&format_seq4(&s)).unwrap(), s);
    }
}

#[test]
fn extension_is_bilinear() {
    // μ(e3, e3) recomputed from the algebra
    for s in all_seq4() {
        let a = seq4_to_algebra(&s);
        let e3 = Rcode::R3.to_vector();
        let s9 = extend(&s);
        assert_eq!(s9[8].to_vector(), a.multiply(&e3, &e3).unwrap());
        assert_eq!(s9[4].to_vector(), a.multiply(&Rcode::R1.to_vector(), &e3).unwrap());
        assert_eq!(s9[7].to_vector(), a.multiply(&e3, &Rcode::R2.to_vector()).unwrap());
    }
}

#[test]
fn table_has_one_line_per_orbit() {
    let census = enumerate_orbits();
    let lines = census.table_lines();
    assert_eq!(lines.len(), 52);
    assert!(lines[0].starts_with("(0,0,0,0) size=1 isotropy=G6"));
}
