use nichols_core::braided::perm_compose;
use nichols_core::fk::{as_transposition, build_fk, cycle_notation, fk_chi, fk_dims, fk_rigidity, transposition};
use nichols_core::nichols::nichols_dims;

/// Coefficients of `prod (1 + t + ... + t^{m-1})` over the given `m`.
fn q_integer_product(factors: &[usize]) -> Vec<usize> {
    let mut poly = vec![1usize];
    for &m in factors {
        let mut next = vec![0usize; poly.len() + m - 1];
        for (d, &c) in poly.iter().enumerate() {
            for k in 0..m {
                next[d + k] += c;
            }
        }
        poly = next;
    }
    poly
}

#[test]
fn fk3_hilbert_series() {
    let dims = fk_dims(3, 6).unwrap();
    assert!(!dims.is_partial());
    let mut expected = q_integer_product(&[2, 2, 3]);
    expected.resize(7, 0);
    assert_eq!(dims.dims, expected);
    assert_eq!(dims.total(), 12);
}

#[test]
fn fk3_symmetrizer_matches_rewriting() {
    let fk = build_fk(3).unwrap();
    assert_eq!(nichols_dims(&fk.space, 5).dims, fk_dims(3, 5).unwrap().dims);
}

#[test]
fn fk4_low_degrees() {
    let dims = fk_dims(4, 5).unwrap();
    let expected = q_integer_product(&[2, 2, 3, 3, 4, 4]);
    assert_eq!(dims.dims, expected[..6]);
    assert_eq!(expected.iter().sum::<usize>(), 576);
}

#[test]
fn fk_relation_count() {
    for n in [3usize, 4, 5] {
        let fk = build_fk(n).unwrap();
        let t = n * (n - 1) / 2;
        assert_eq!(fk.space.rank(), t);
        // squares, disjoint commuting pairs, two cyclic relations per triple
        let disjoint = t * (t - 1) / 2 - n * (n - 1) * (n - 2) / 2;
        let triples = n * (n - 1) * (n - 2) / 3;
        assert_eq!(fk.relations.len(), t + disjoint + triples, "n = {n}");
    }
    assert!(build_fk(2).is_err());
}

#[test]
fn chi_is_a_sign_on_transpositions() {
    let n = 4;
    for (a, b) in [(0u8, 1u8), (0, 2), (1, 3), (2, 3)] {
        let s = transposition(n, a, b);
        assert_eq!(as_transposition(&s), Some((a, b)));
        assert_eq!(fk_chi(&s, &s).unwrap(), -1);
        for (c, d) in [(0u8, 1u8), (1, 2), (0, 3)] {
            let t = transposition(n, c, d);
            assert!(fk_chi(&s, &t).unwrap().abs() == 1);
        }
    }
    let cycle = perm_compose(&transposition(3, 0, 1), &transposition(3, 1, 2));
    assert_eq!(as_transposition(&cycle), None);
    assert!(fk_chi(&cycle, &transposition(3, 0, 1)).is_err());
    assert_eq!(cycle_notation(&transposition(4, 1, 3)), "(2 4)");
}

#[test]
fn fk_relations_are_rigid() {
    for n in [3usize, 4] {
        let r = fk_rigidity(n).unwrap();
        assert!(r.rigid);
        assert!(r.generators_have_transposition_degree);
        assert!(r.relations.iter().all(|c| c.homogeneous && !c.is_transposition));
    }
}
