use nichols_core::exact::gcd_u64;
use nichols_core::{CycNumber, Scalar};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const ORDERS: [u32; 7] = [1, 3, 4, 5, 6, 8, 12];

fn complex(x: &CycNumber) -> (f64, f64) {
    let n = x.field_order() as f64;
    x.coefficients().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
        let c = c.to_f64().unwrap();
        let t = 2.0 * std::f64::consts::PI * k as f64 / n;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 * (1.0 + a.0.abs()) && (a.1 - b.1).abs() < 1e-6 * (1.0 + a.1.abs())
}

fn number() -> impl Strategy<Value = CycNumber> {
    (0..ORDERS.len(), prop::collection::vec((-4i64..=4, 0i64..12), 0..4)).prop_map(|(o, terms)| {
        let n = ORDERS[o];
        terms.into_iter().fold(CycNumber::integer(0), |acc, (c, k)| acc.add(&CycNumber::root_of_unity(n, k).mul(&CycNumber::integer(c))))
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in number(), b in number(), c in number()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn inverses(a in number()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv()).is_one());
        prop_assert_eq!(a.checked_inv().unwrap(), a.inv());
    }

    #[test]
    fn complex_embedding_is_a_homomorphism(a in number(), b in number()) {
        let (x, y) = (complex(&a), complex(&b));
        prop_assert!(close(complex(&a.add(&b)), (x.0 + y.0, x.1 + y.1)));
        prop_assert!(close(complex(&a.mul(&b)), (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
    }

    #[test]
    fn display_parses_back(a in number()) {
        let s = a.to_string();
        let back: CycNumber = s.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn root_orders(n in 1u32..=24, k in -30i64..30) {
        let z = CycNumber::root_of_unity(n, k);
        let expected = n as u64 / gcd_u64(n as u64, k.rem_euclid(n as i64) as u64);
        prop_assert_eq!(z.order().unwrap(), Some(expected));
    }
}

#[test]
fn non_roots_have_no_order() {
    assert_eq!(CycNumber::integer(2).order().unwrap(), None);
    let x: CycNumber = "1 + zeta5".parse().unwrap();
    assert_eq!(x.order().unwrap(), None);
    assert!(CycNumber::integer(0).order().is_err());
    assert!(CycNumber::integer(0).checked_inv().is_err());
}

#[test]
fn golden_ratio_relation_in_q_zeta5() {
    // phi = -(zeta5^2 + zeta5^3) satisfies phi^2 = phi + 1
    let phi = CycNumber::root_of_unity(5, 2).add(&CycNumber::root_of_unity(5, 3)).neg();
    assert_eq!(phi.mul(&phi), phi.add(&CycNumber::integer(1)));
}

#[test]
fn literals() {
    let a: CycNumber = "zeta3^2".parse().unwrap();
    assert_eq!(a, CycNumber::root_of_unity(3, -1));
    let b: CycNumber = "1/2 + zeta4".parse().unwrap();
    assert_eq!(b.sub(&CycNumber::root_of_unity(4, 1)), CycNumber::from_ratio(1, 2));
    assert!("zeta0".parse::<CycNumber>().is_err());
    assert!("1/0".parse::<CycNumber>().is_err());
    assert_eq!(CycNumber::root_of_unity(6, 3).to_string(), "-1");
    assert_eq!(CycNumber::root_of_unity(12, 4).to_string(), "zeta3");
}

#[test]
fn q_integers_vanish_exactly_at_the_order() {
    for n in [2u32, 3, 4, 5, 6, 8] {
        let q = CycNumber::root_of_unity(n, 1);
        for m in 1..=2 * n {
            assert_eq!(q.q_integer(m).is_zero(), m % n == 0, "n = {n}, m = {m}");
        }
    }
}
