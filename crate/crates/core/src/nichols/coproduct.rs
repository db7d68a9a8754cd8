//! The braided coproduct of `T(V)` with primitive generators.

use crate::braided::BraidedSpace;
use crate::exact::{CycNumber, Scalar};
use crate::tensor::{TensorElement, TensorPair, Word};

/// `Delta(w)` for a basis word, as the product of `x (x) 1 + 1 (x) x` in the braided tensor product algebra.
pub fn coproduct_word(space: &BraidedSpace, w: &[u8]) -> TensorPair {
    let mut acc = TensorPair::zero();
    acc.add_term(Vec::new(), Vec::new(), CycNumber::one());
    for &x in w {
        let mut next = TensorPair::zero();
        for ((a, b), c) in acc.terms() {
            // (a (x) b)(x (x) 1) = a c(b (x) x)
            let (left, right, s) = space.braid_words(b, &[x]);
            let mut a2: Word = a.clone();
            a2.extend_from_slice(&left);
            next.add_term(a2, right, c.mul(&s));
            // (a (x) b)(1 (x) x) = a (x) b x
            let mut b2 = b.clone();
            b2.push(x);
            next.add_term(a.clone(), b2, c.clone());
        }
        acc = next;
    }
    acc
}

pub fn braided_coproduct(space: &BraidedSpace, e: &TensorElement) -> TensorPair {
    let mut out = TensorPair::zero();
    for (w, c) in e.terms() {
        for ((l, r), v) in coproduct_word(space, w).terms() {
            out.add_term(l.clone(), r.clone(), v.mul(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::build_diagonal;

    #[test]
    fn rank_one_square() {
        let q = CycNumber::root_of_unity(5, 2);
        let v = build_diagonal(vec![vec![q.clone()]]).unwrap();
        let d = coproduct_word(&v, &[0, 0]);
        assert_eq!(d.coefficient(&[0, 0], &[]), CycNumber::one());
        assert_eq!(d.coefficient(&[0], &[0]), CycNumber::one().add(&q));
        assert_eq!(d.coefficient(&[], &[0, 0]), CycNumber::one());
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn generators_are_primitive() {
        let v = build_diagonal(vec![vec![CycNumber::root_of_unity(3, 1)]]).unwrap();
        let d = coproduct_word(&v, &[0]);
        assert_eq!(d.len(), 2);
        assert!(d.reduced().is_zero());
    }
}
