use std::collections::HashSet;

use nichols_core::braided::{build_diagonal, BraidedSpace};
use nichols_core::config::shipped;
use nichols_core::relations::{
    check_prop_gchi, generate_relations, pre_nichols_relations, verdict_for, verify_presentation, Family, Realization,
    RelationInstance, Verdict,
};
use nichols_core::weyl::enumerate_roots;
use nichols_core::{CycNumber, Scalar};
use proptest::prelude::*;

fn z(n: u32, k: i64) -> CycNumber {
    CycNumber::root_of_unity(n, k)
}

fn exps(n: u32, a: &[&[i64]]) -> Vec<Vec<CycNumber>> {
    a.iter().map(|r| r.iter().map(|&e| z(n, e)).collect()).collect()
}

/// `prod q_ij^{a_i a_j}` straight from the matrix.
fn q_of_degree(q: &[Vec<CycNumber>], a: &[i64]) -> CycNumber {
    let mut v = CycNumber::one();
    for i in 0..a.len() {
        for j in 0..a.len() {
            v = v.mul(&q[i][j].pow(a[i] * a[j]));
        }
    }
    v
}

fn catalog(space: &BraidedSpace) -> Vec<RelationInstance> {
    let rs = enumerate_roots(space, 64).unwrap();
    assert!(rs.finite);
    generate_relations(space, &rs).unwrap()
}

fn diagonal_configs() -> Vec<(&'static str, BraidedSpace)> {
    shipped().into_iter().filter(|(_, c)| !c.is_fomin_kirillov()).map(|(n, c)| (n, c.space().unwrap())).collect()
}

#[test]
fn catalogs_are_well_formed() {
    for (name, v) in diagonal_configs() {
        let rels = catalog(&v);
        assert!(!rels.is_empty(), "{name}");
        let mut seen = HashSet::new();
        for r in &rels {
            assert!(seen.insert((r.family, r.participants.clone(), r.degree.clone())), "{name}: duplicate {}", r.family.name());
            let support: Vec<usize> = (0..v.rank()).filter(|&i| r.degree[i] != 0).collect();
            assert_eq!(r.support, support, "{name}");
            assert!(r.degree.iter().all(|&a| a >= 0) && r.total_degree() >= 2, "{name}");
            if let Some(e) = &r.element {
                assert_eq!(e.multidegree(v.rank()), Some(r.degree.clone()), "{name}: {}", r.expression);
            }
        }
    }
}

#[test]
fn gchi_scalars_match_the_braiding_matrix() {
    for (name, v) in diagonal_configs() {
        let q = v.q_matrix().unwrap().to_vec();
        let rels = catalog(&v);
        let real = Realization::separating(&v).unwrap();
        for rep in check_prop_gchi(&real, &rels) {
            assert_eq!(rep.chi_r_g_r, q_of_degree(&q, &rep.degree), "{name}");
            let clash = rep.witnesses.iter().any(|w| w.same_group && w.same_character);
            assert_eq!(rep.ok, !clash, "{name}");
            for w in &rep.witnesses {
                assert_eq!(w.q_tt, q[w.t][w.t]);
            }
        }
    }
}

#[test]
fn shipped_diagonal_configs_are_rigid() {
    for (name, v) in diagonal_configs() {
        let rels = catalog(&v);
        let real = Realization::separating(&v).unwrap();
        assert_eq!(verdict_for(&real, &rels, false).verdict, Verdict::Rigid, "{name}");
        assert_eq!(verdict_for(&real, &rels, true).verdict, Verdict::Rigid, "{name}");
        let pre = pre_nichols_relations(&rels);
        assert!(pre.iter().all(|r| r.family != Family::RootPower));
    }
}

#[test]
fn catalog_presents_the_nichols_algebra() {
    for (name, v) in diagonal_configs() {
        let max_degree = if v.rank() >= 3 { 5 } else { 8 };
        let rels: Vec<RelationInstance> =
            catalog(&v).into_iter().filter(|r| r.element.is_some() || r.total_degree() as usize > max_degree).collect();
        let check = verify_presentation(&v, &rels, max_degree).unwrap();
        assert_eq!(check.first_mismatch, None, "{name}: {:?} vs {:?}", check.quotient, check.nichols);
    }
}

#[test]
fn two_minus_one_vertices_scalar_is_one() {
    let v = build_diagonal(exps(6, &[&[3, 3, 0], &[0, 3, 4], &[0, 0, 2]])).unwrap();
    let rels = catalog(&v);
    let real = Realization::separating(&v).unwrap();
    let reps = check_prop_gchi(&real, &rels);
    let found: Vec<_> = reps.iter().filter(|r| r.family == Family::TwoMinusOneVertices).collect();
    assert!(!found.is_empty());
    for r in found {
        assert_eq!(r.degree, vec![2, 2, 0]);
        assert!(r.chi_r_g_r.is_one());
        assert!(r.ok);
    }
}

#[test]
fn minus_one_vertex_scalar_is_product_of_outer_vertices() {
    let q = exps(6, &[&[2, 4, 0], &[0, 3, 2], &[0, 0, 4]]);
    let v = build_diagonal(q.clone()).unwrap();
    let rels = catalog(&v);
    let real = Realization::separating(&v).unwrap();
    let reps = check_prop_gchi(&real, &rels);
    let found: Vec<_> = reps.iter().filter(|r| r.family == Family::MinusOneVertex).collect();
    assert!(!found.is_empty());
    for r in found {
        let (i, k) = (r.participants[0], r.participants[2]);
        assert_eq!(r.chi_r_g_r, q[i][i].mul(&q[k][k]));
    }
}

#[test]
fn canonical_realization_never_clashes() {
    for (name, v) in diagonal_configs() {
        let rels = catalog(&v);
        let real = Realization::canonical(&v).unwrap();
        let report = verdict_for(&real, &rels, false);
        assert!(report.failing.is_empty(), "{name}");
        assert!(report.instances.iter().all(|r| r.witnesses.iter().all(|w| !w.same_group)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relations_lie_in_the_ideal_of_random_rank_two(a in 1i64..6, b in 0i64..6, c in 1i64..6) {
        let v = build_diagonal(exps(6, &[&[a, b], &[0, c]])).unwrap();
        let rs = enumerate_roots(&v, 64).unwrap();
        prop_assume!(rs.finite);
        for r in generate_relations(&v, &rs).unwrap() {
            if let Some(e) = &r.element {
                if r.total_degree() <= 6 {
                    prop_assert!(nichols_core::nichols::is_in_nichols_ideal(&v, e).unwrap(), "{}", r.expression);
                }
            }
        }
    }
}
