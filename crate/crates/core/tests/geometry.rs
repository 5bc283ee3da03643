mod common;

use walgebra::geometry::{jc_closed_form, jc_recursive, omega, verify_inverse};

use common::*;

#[test]
fn omega_matches_matrix_trace() {
    for n in 3..=6 {
        let all: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
        for &x in &all {
            for &y in &all {
                assert_eq!(omega(n, gen(x.0, x.1), gen(y.0, y.1)), omega_oracle(n, x, y), "N={n} {x:?} {y:?}");
            }
        }
    }
}

#[test]
fn jc_n3() {
    let want = "E_{1,2}⊗E_{3,1} + E_{2,2}⊗E_{3,2}";
    assert_eq!(jc_closed_form(3).unwrap().render(), want);
    assert_eq!(jc_recursive(3).unwrap().render(), want);
}

#[test]
fn closed_form_inverts_omega() {
    for n in 3..=8 {
        let r = verify_inverse(n).unwrap();
        assert!(r.nondegenerate && r.m_isotropic && r.b_isotropic, "N={n}");
        assert!(r.inverse_ok_closed, "N={n}: {:?}", r.defects_closed);
    }
}

#[test]
fn literal_recursion_differs_from_closed_form_from_n4() {
    // j_c^{21}(E_{4,3}^*) = E_{3,3} − j_c^{21}(E_{3,2}^*) = E_{3,3} − E_{2,2}
    let r = verify_inverse(4).unwrap();
    assert_eq!(r.jc_diff, vec!["(-2)·E_{2,2}⊗E_{4,3}".to_string()]);
    assert!(!r.inverse_ok_recursive);
}
