use nichols_core::symmetric::{
    braided_commutator, check_braided_lie, enveloping_dims, examples, scheunert_cocycle, sign_twist_verdict, AbelianBicharacter,
    BraidedLieData,
};
use nichols_core::{CycNumber, Scalar};
use proptest::prelude::*;

fn z(n: u32, k: i64) -> CycNumber {
    CycNumber::root_of_unity(n, k)
}

fn m1() -> CycNumber {
    CycNumber::integer(-1)
}

/// Skew bicharacter on `Z^r` with diagonal signs and upper entries `zeta_n^k`.
fn skew(signs: &[bool], upper: &[(u32, i64)]) -> AbelianBicharacter {
    let r = signs.len();
    let mut values = vec![vec![CycNumber::one(); r]; r];
    let mut it = upper.iter();
    for i in 0..r {
        values[i][i] = if signs[i] { m1() } else { CycNumber::one() };
        for j in i + 1..r {
            let &(n, k) = it.next().unwrap();
            values[i][j] = z(n, k);
            values[j][i] = z(n, -k);
        }
    }
    AbelianBicharacter::free(values).unwrap()
}

#[test]
fn color_example_twists_to_the_super_sign() {
    let q = z(3, 1);
    let beta = examples::color_bicharacter(&q);
    let tw = scheunert_cocycle(&beta).unwrap();
    assert_eq!(*tw.sigma.value(1, 0), q.neg());
    assert!(tw.sigma.value(0, 1).is_one());
    assert!(tw.twisted.values().iter().flatten().all(|v| *v == m1()));
    let verdict = sign_twist_verdict(&beta, &[vec![1, 0], vec![0, 1]]).unwrap();
    assert_eq!((verdict.odd_dim, verdict.even_dim, verdict.nichols_dim, verdict.rigid), (2, 0, Some(4), true));
    let verdict = sign_twist_verdict(&beta, &[vec![1, 0], vec![2, 0]]).unwrap();
    assert!(!verdict.rigid);
}

#[test]
fn non_sign_diagonal_is_rejected() {
    let beta = AbelianBicharacter::free(vec![vec![z(3, 1)]]).unwrap();
    assert!(scheunert_cocycle(&beta).is_err());
    let not_skew = AbelianBicharacter::free(vec![vec![m1(), z(3, 1)], vec![z(3, 1), m1()]]).unwrap();
    assert!(scheunert_cocycle(&not_skew).is_err());
}

#[test]
fn trivial_bicharacter_on_the_integers_needs_no_twist() {
    let beta = AbelianBicharacter::trivial(vec![0]);
    let tw = scheunert_cocycle(&beta).unwrap();
    assert!(tw.sigma.value(0, 0).is_one());
    assert_eq!(tw.twisted, beta);
}

#[test]
fn shipped_lie_algebras_satisfy_the_axioms_and_pbw() {
    for (name, l) in examples::shipped() {
        assert!(check_braided_lie(&l).unwrap().holds(), "{name}");
        let e = enveloping_dims(&l, 4).unwrap();
        assert!(e.stable, "{name}");
        assert!(e.matches_nichols(), "{name}: {:?} vs {:?}", e.graded, e.nichols);
    }
}

#[test]
fn enveloping_dims_of_heisenberg_are_symmetric_algebra_dims() {
    let e = enveloping_dims(&examples::heisenberg(), 4).unwrap();
    // dim S^d(k^3) = C(d + 2, 2)
    let expected: Vec<usize> = (0..=4).map(|d| (d + 1) * (d + 2) / 2).collect();
    assert_eq!(e.graded, expected);
    let filtered: Vec<usize> = expected.iter().scan(0, |acc, x| {
        *acc += x;
        Some(*acc)
    }).collect();
    assert_eq!(e.filtered, filtered);
}

#[test]
fn broken_antisymmetry_has_a_witness() {
    let mut l = examples::sl2();
    l.bracket[1][0] = vec![(2, CycNumber::integer(-2))];
    let r = check_braided_lie(&l).unwrap();
    assert!(!r.anticomm.holds);
    assert!(!r.anticomm.witnesses.is_empty());
    assert!(!r.holds());
}

#[test]
fn commutators_of_associative_algebras() {
    let m2 = examples::matrix_algebra();
    assert!(m2.is_associative());
    let l = braided_commutator(&m2, &vec![vec![CycNumber::one(); 4]; 4]).unwrap();
    assert!(check_braided_lie(&l).unwrap().holds());
    assert!(!l.is_abelian());

    let torus = examples::quantum_torus(3);
    let beta = examples::torus_bicharacter(3, 2);
    let l = braided_commutator(&torus, &examples::torus_braiding(3, &beta)).unwrap();
    assert!(check_braided_lie(&l).unwrap().holds());
    assert!(!l.is_abelian());
    let beta = examples::torus_bicharacter(3, 1);
    assert!(braided_commutator(&torus, &examples::torus_braiding(3, &beta)).unwrap().is_abelian());

    let mut bad = examples::torus_braiding(3, &beta);
    bad[0][1] = z(3, 1);
    assert!(braided_commutator(&torus, &bad).is_err());
}

#[test]
fn asymmetric_braiding_is_a_precondition_error() {
    let l = examples::heisenberg();
    let mut q = l.q.clone();
    q[0][1] = z(3, 1);
    let broken = BraidedLieData { q, ..l };
    assert!(check_braided_lie(&broken).is_err());
}

#[test]
fn twisting_back_restores_the_lie_algebra() {
    let l = examples::color_triple(&z(3, 1));
    let (beta, _) = l.grading.clone().unwrap();
    let tw = scheunert_cocycle(&beta).unwrap();
    let there = l.twist(&tw.sigma).unwrap();
    assert!(there.grading.as_ref().unwrap().0.is_sign());
    assert!(check_braided_lie(&there).unwrap().holds());
    assert_eq!(there.twist(&tw.sigma.inverse()).unwrap(), l);
}

proptest! {
    #[test]
    fn scheunert_cocycle_on_random_triples(
        signs in prop::collection::vec(any::<bool>(), 1..=3),
        upper in prop::collection::vec((prop::sample::select(vec![2u32, 3, 4, 6]), 0i64..12), 3),
        triples in prop::collection::vec(prop::collection::vec(-3i64..=3, 9), 20),
    ) {
        let beta = skew(&signs, &upper);
        let tw = scheunert_cocycle(&beta).unwrap();
        prop_assert!(tw.twisted.is_sign());
        let r = signs.len();
        for t in triples {
            prop_assert!(tw.sigma.cocycle_identity(&t[0..r], &t[3..3 + r], &t[6..6 + r]));
            // beta_sigma and beta agree on the diagonal
            prop_assert_eq!(tw.twisted.eval(&t[0..r], &t[0..r]), beta.eval(&t[0..r], &t[0..r]));
        }
    }

    #[test]
    fn twisting_the_quantum_torus_keeps_it_associative(a in 0i64..3, b in 0i64..3, c in 0i64..3, d in 0i64..3) {
        let torus = examples::quantum_torus(3);
        let group = examples::torus_bicharacter(3, 1);
        let sigma = AbelianBicharacter::new(vec![3, 3], vec![vec![z(3, a), z(3, b)], vec![z(3, c), z(3, d)]]).unwrap();
        let twisted = torus.twist(&group, &sigma).unwrap();
        prop_assert!(twisted.is_associative());
        prop_assert_eq!(twisted.twist(&group, &sigma.inverse()).unwrap(), torus);
    }
}
