//! Elements of the tensor algebra `T(V)` and of `T(V) (x) T(V)` on a fixed basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{CycNumber, Scalar};

/// A word over the ordered basis; letters are basis indices.
pub type Word = Vec<u8>;

/// Finitely supported map from words to coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct TensorElement<F: Scalar = CycNumber> {
    terms: BTreeMap<Word, F>,
}

impl<F: Scalar> Default for TensorElement<F> {
    fn default() -> Self {
        TensorElement { terms: BTreeMap::new() }
    }
}

impl<F: Scalar> TensorElement<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, F::one())
    }

    pub fn letter(i: usize) -> Self {
        Self::word(vec![i as u8])
    }

    pub fn unit() -> Self {
        Self::word(Vec::new())
    }

    pub fn monomial(w: Word, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                let s = slot.add(&c);
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, F)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &[u8]) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    /// Common word length, or `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(|w| w.len());
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Letter counts of the first term; meaningful for multihomogeneous elements.
    pub fn multidegree(&self, rank: usize) -> Option<Vec<i64>> {
        let (w, _) = self.terms.iter().next()?;
        Some(letter_counts(w, rank))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TensorElement { terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect() }
    }

    /// Concatenation product in `T(V)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::unit(), |acc, _| acc.mul(self))
    }

    pub fn map_coefficients<G: Scalar>(&self, f: impl Fn(&F) -> G) -> TensorElement<G> {
        TensorElement::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }
}

pub fn letter_counts(w: &[u8], rank: usize) -> Vec<i64> {
    let mut v = vec![0i64; rank];
    for &l in w {
        v[l as usize] += 1;
    }
    v
}

impl<F: Scalar> fmt::Debug for TensorElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Scalar> fmt::Display for TensorElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|l| format!("x{}", l + 1)).collect::<Vec<_>>().join("")
                };
                format!("({c}){word}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of `T(V) (x) T(V)`.
#[derive(Clone, PartialEq)]
pub struct TensorPair<F: Scalar = CycNumber> {
    terms: BTreeMap<(Word, Word), F>,
}

impl<F: Scalar> Default for TensorPair<F> {
    fn default() -> Self {
        TensorPair { terms: BTreeMap::new() }
    }
}

impl<F: Scalar> TensorPair<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: F) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                let s = slot.add(&c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, left: &[u8], right: &[u8]) -> F {
        self.terms.get(&(left.to_vec(), right.to_vec())).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops the terms with an empty tensor factor, giving the reduced coproduct.
    pub fn reduced(&self) -> Self {
        TensorPair {
            terms: self
                .terms
                .iter()
                .filter(|((l, r), _)| !l.is_empty() && !r.is_empty())
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl<F: Scalar> fmt::Debug for TensorPair<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|l| format!("x{}", l + 1)).collect::<Vec<_>>().join("")
            }
        };
        let parts: Vec<String> =
            self.terms.iter().map(|((l, r), c)| format!("({c}){}|{}", show(l), show(r))).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_drops_zeros() {
        let x: TensorElement = TensorElement::letter(0);
        let y = TensorElement::letter(1);
        let xy = x.mul(&y);
        assert_eq!(xy.degree(), Some(2));
        let z = xy.sub(&xy);
        assert!(z.is_zero());
        assert!(x.add(&xy).degree().is_none());
        assert_eq!(x.pow(3).terms().next().unwrap().0, &vec![0u8, 0, 0]);
    }
}
