use std::collections::BTreeSet;

use nichols_core::braided::build_diagonal;
use nichols_core::weyl::{cartan_roots, enumerate_roots, Root};
use nichols_core::{CycNumber, Scalar};
use proptest::prelude::*;

fn z(n: u32, k: i64) -> CycNumber {
    CycNumber::root_of_unity(n, k)
}

fn exps(n: u32, a: &[&[i64]]) -> Vec<Vec<CycNumber>> {
    a.iter().map(|r| r.iter().map(|&e| z(n, e)).collect()).collect()
}

fn root_set(q: Vec<Vec<CycNumber>>) -> (bool, BTreeSet<Root>) {
    let rs = enumerate_roots(&build_diagonal(q).unwrap(), 64).unwrap();
    (rs.finite, rs.roots().into_iter().collect())
}

fn set(roots: &[&[i64]]) -> BTreeSet<Root> {
    roots.iter().map(|r| r.to_vec()).collect()
}

#[test]
fn a2_at_cube_root() {
    let rs = enumerate_roots(&build_diagonal(exps(3, &[&[1, 2], &[0, 1]])).unwrap(), 64).unwrap();
    assert!(rs.finite);
    assert_eq!(rs.roots().into_iter().collect::<BTreeSet<_>>(), set(&[&[1, 0], &[0, 1], &[1, 1]]));
    assert!(rs.positive_roots.iter().all(|r| r.n_alpha == Some(3)));
    assert_eq!(cartan_roots(&rs).unwrap().len(), 3);
}

#[test]
fn b2_types() {
    let b2 = set(&[&[1, 0], &[0, 1], &[1, 1], &[2, 1]]);
    assert_eq!(root_set(exps(3, &[&[1, 1], &[0, 2]])), (true, b2.clone()));
    assert_eq!(root_set(exps(6, &[&[2, 5], &[0, 3]])).1.len(), 4);
}

#[test]
fn super_a2_has_three_roots() {
    let (finite, roots) = root_set(exps(6, &[&[3, 4], &[0, 3]]));
    assert!(finite);
    assert_eq!(roots, set(&[&[1, 0], &[0, 1], &[1, 1]]));
}

#[test]
fn a3_at_cube_root() {
    let (finite, roots) = root_set(exps(3, &[&[1, 2, 0], &[0, 1, 2], &[0, 0, 1]]));
    assert!(finite);
    assert_eq!(roots.len(), 6);
    assert!(roots.contains(&vec![1, 1, 1]));
}

#[test]
fn generic_parameter_gives_no_finite_orders() {
    let q: CycNumber = "2".parse().unwrap();
    let rs = enumerate_roots(&build_diagonal(vec![vec![q.clone(), q.inv()], vec![CycNumber::integer(1), q]]).unwrap(), 64).unwrap();
    assert!(rs.positive_roots.iter().all(|r| r.n_alpha.is_none()));
}

proptest! {
    #[test]
    fn roots_depend_only_on_the_diagram(a in 0i64..6, b in 0i64..6, c in 0i64..6, t in 0i64..6) {
        let q = exps(6, &[&[a, b], &[0, c]]);
        let mut q2 = q.clone();
        q2[0][1] = q2[0][1].mul(&z(6, t));
        q2[1][0] = q2[1][0].mul(&z(6, -t));
        let (f1, r1) = root_set(q);
        let (f2, r2) = root_set(q2);
        prop_assert_eq!(f1, f2);
        prop_assert_eq!(r1, r2);
    }

    #[test]
    fn finite_root_systems_are_positive_and_contain_simple_roots(a in 0i64..6, b in 0i64..6, c in 0i64..6) {
        let (finite, roots) = root_set(exps(6, &[&[a, b], &[0, c]]));
        prop_assert!(roots.contains(&vec![1, 0]) && roots.contains(&vec![0, 1]));
        if finite {
            prop_assert!(roots.iter().all(|r| r.iter().all(|&x| x >= 0)));
        }
    }
}
