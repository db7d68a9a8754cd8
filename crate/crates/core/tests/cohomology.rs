use std::collections::BTreeMap;

use nichols_core::braided::build_diagonal;
use nichols_core::cohomology::{CochainPair, GradedBialgebraData, TrivialModule};
use nichols_core::fk::build_fk;
use nichols_core::nichols::Quotient;
use nichols_core::tensor::TensorElement;
use nichols_core::{CycNumber, Scalar};

fn z(n: u32, k: i64) -> CycNumber {
    CycNumber::root_of_unity(n, k)
}

fn rank_one(n: u32) -> GradedBialgebraData {
    let v = build_diagonal(vec![vec![z(n, 1)]]).unwrap();
    GradedBialgebraData::from_nichols(&v, n as usize + 1).unwrap()
}

fn fk3() -> GradedBialgebraData {
    let fk = build_fk(3).unwrap();
    GradedBialgebraData::from_quotient(Quotient::from_relations(&fk.space, &fk.relations, 6).unwrap()).unwrap()
}

/// A nonzero coboundary `(d^h h, -d^c h)` from some single admissible entry of `h`.
fn some_coboundary(b: &GradedBialgebraData, ell: i64) -> Option<CochainPair> {
    for a in b.plus() {
        for c in b.plus() {
            if b.degree[c] as i64 != b.degree[a] as i64 + ell {
                continue;
            }
            if let Ok(p) = b.coboundary(ell, &[(a, c, CycNumber::one())]) {
                if !p.is_zero() {
                    return Some(p);
                }
            }
        }
    }
    None
}

#[test]
fn coproduct_of_square_at_cube_root() {
    let q = z(3, 1);
    let v = build_diagonal(vec![vec![q.clone()]]).unwrap();
    let b = Quotient::from_nichols(&v, 4).unwrap();
    assert_eq!(b.dims().dims, vec![1, 1, 1]);
    let d = b.coproduct(&TensorElement::word(vec![0, 0]));
    assert!(d.coefficient(&[0, 0], &[]).is_one());
    assert!(d.coefficient(&[], &[0, 0]).is_one());
    assert_eq!(d.coefficient(&[0], &[0]), CycNumber::one().add(&q));
}

#[test]
fn rank_one_truncated_cohomology_vanishes() {
    for n in [2u32, 3, 4] {
        let b = rank_one(n);
        assert_eq!(b.dim(), n as usize);
        assert_eq!(b.top_degree(), n as usize - 1);
        assert!(b.check_axioms().is_empty());
        for ell in -2 * b.top_degree() as i64..=-1 {
            let h = b.truncated_h2(ell).unwrap();
            assert_eq!(h.cohomology, 0, "order {n}, degree {ell}");
            assert_eq!(h.cocycles, h.coboundaries);
        }
    }
}

#[test]
fn differential_squares_to_zero() {
    for b in [rank_one(3), rank_one(4), fk3()] {
        for ell in -(b.top_degree() as i64)..=0 {
            assert!(b.check_dd(2, ell).unwrap().holds(), "degree {ell}");
            assert!(b.check_dd(3, ell).unwrap().holds(), "degree {ell}");
        }
    }
}

#[test]
fn exterior_line_has_one_dimensional_epsilon_cohomology() {
    let b = rank_one(2);
    let u = TrivialModule::unit(&b);
    let m = b.kernel_m().unwrap();
    assert!(m.agree());
    assert_eq!(m.hom_dim(&u), 1);
    assert_eq!(b.epsilon_h2(&u).cohomology, 1);
    assert_eq!(b.epsilon_h2(&TrivialModule::zero()).cohomology, 0);
    assert_eq!(m.hom_dim(&TrivialModule::zero()), 0);
}

#[test]
fn epsilon_identity_on_small_examples() {
    for b in [rank_one(3), rank_one(4), fk3()] {
        let u = TrivialModule::unit(&b);
        let m = b.kernel_m().unwrap();
        assert!(m.agree());
        assert_eq!(b.epsilon_h2(&u).cohomology, m.hom_dim(&u));
    }
}

#[test]
fn fk3_minimal_relations_sit_in_degree_two() {
    let b = fk3();
    assert_eq!(b.dim(), 12);
    let m = b.kernel_m().unwrap();
    assert_eq!(m.dims_by_degree(), BTreeMap::from([(2, 5)]));
    assert_eq!(b.epsilon_h2(&TrivialModule::unit(&b)).cohomology, 3);
}

#[test]
fn coboundaries_are_cocycles() {
    let b = rank_one(3);
    let p = some_coboundary(&b, 0).expect("an admissible h");
    assert!(b.is_cocycle(&p).unwrap());
    let half = CochainPair { ell: p.ell, f: p.f.clone(), g: Vec::new() };
    assert!(!b.is_cocycle(&half).unwrap());
    let b = rank_one(4);
    for p in b.cocycle_basis(-1).unwrap().into_iter().chain(b.cocycle_basis(-2).unwrap()) {
        let half = CochainPair { ell: p.ell, f: p.f.clone(), g: Vec::new() };
        assert_eq!(b.first_order_deformation(&half).unwrap().holds(), b.is_cocycle(&half).unwrap());
    }
}

#[test]
fn cocycle_test_matches_deformation_test() {
    for b in [rank_one(3), fk3()] {
        for ell in -(b.top_degree() as i64)..=-1 {
            for p in b.cocycle_basis(ell).unwrap() {
                assert!(b.is_cocycle(&p).unwrap());
                assert!(b.first_order_deformation(&p).unwrap().holds());
                assert!(b.check_vanishing_lemma(&p, 2).unwrap().holds());
            }
        }
    }
}

#[test]
fn positive_degree_deformation_is_rejected() {
    let b = rank_one(3);
    assert!(b.first_order_deformation(&CochainPair::zero(1)).is_err());
}
