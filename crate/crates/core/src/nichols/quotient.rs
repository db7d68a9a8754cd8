//! Truncated graded quotients `T(V) / I` with normal-word bases.

use std::collections::HashMap;

use crate::braided::BraidedSpace;
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Scalar};
use crate::linalg::{from_entries, nullspace, rank, SparseVec};
use crate::nichols::coproduct::coproduct_word;
use crate::nichols::rewrite::{Completion, GradedDims, GroebnerBasis, RewriteOptions};
use crate::nichols::symmetrizer::SymmetrizerTower;
use crate::tensor::{TensorElement, TensorPair, Word};

const BASIS_BUDGET: usize = 2_000_000;

/// The algebra `T(V)/I` in degrees `0..=max_degree`, with basis the normal words of a Groebner basis of `I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    space: BraidedSpace,
    gb: GroebnerBasis<CycNumber>,
    max_degree: usize,
    finite: bool,
    basis: Vec<Vec<Word>>,
}

impl Quotient {
    /// `T(V) / <relations>` truncated at `max_degree`.
    pub fn from_relations(space: &BraidedSpace, relations: &[TensorElement], max_degree: usize) -> Result<Quotient> {
        let opts = RewriteOptions::with_max_degree(max_degree);
        let all_rational = relations.iter().all(|r| r.terms().all(|(_, c)| c.is_rational()));
        let gb = if all_rational {
            let rels: Vec<_> = relations.iter().map(|r| r.map_coefficients(|c| c.as_rational().expect("rational"))).collect();
            GroebnerBasis::compute(space.rank(), &rels, &opts)?.map_coefficients(|c| CycNumber::rational(c.clone()))
        } else {
            GroebnerBasis::compute(space.rank(), relations, &opts)?
        };
        Self::assemble(space, gb, max_degree)
    }

    /// The Nichols algebra `B(V)` through `max_degree`: at each degree the
    /// kernel of the symmetrizer on the current normal words is added to the
    /// ideal, so the result is exact in every degree it covers.
    pub fn from_nichols(space: &BraidedSpace, max_degree: usize) -> Result<Quotient> {
        let opts = RewriteOptions::with_max_degree(max_degree);
        let mut comp = Completion::<CycNumber>::new(space.rank(), &[], &opts)?;
        let mut tower = SymmetrizerTower::new(space);
        tower.advance()?;
        while comp.degree_done() < max_degree {
            tower.advance()?;
            let tower_ref = &tower;
            let progressed = comp.step(|gb, _d| {
                let mut extra = Vec::new();
                for block in tower_ref.blocks() {
                    let cols: Vec<usize> = (0..block.words.len()).filter(|&c| gb.is_normal(&block.words[c])).collect();
                    if cols.is_empty() {
                        continue;
                    }
                    let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
                    let rows: Vec<SparseVec<CycNumber>> = block
                        .rows
                        .iter()
                        .map(|r| r.iter().filter_map(|(c, v)| pos.get(c).map(|&i| (i, v.clone()))).collect())
                        .collect();
                    for k in nullspace(rows, cols.len()) {
                        extra.push(TensorElement::from_terms(k.into_iter().map(|(i, v)| (block.words[cols[i]].clone(), v))));
                    }
                }
                extra
            });
            if !progressed {
                break;
            }
            if comp.basis().normal_words(comp.degree_done()).is_empty() {
                break;
            }
        }
        let done = comp.degree_done();
        let gb = comp.stop();
        if let Some(reason) = &gb.dims().partial {
            return Err(Error::Budget(reason.clone()));
        }
        let mut q = Self::assemble(space, gb, max_degree)?;
        if done < max_degree || q.basis.last().is_some_and(|b| b.is_empty()) {
            q.finite = true;
        }
        Ok(q)
    }

    fn assemble(space: &BraidedSpace, gb: GroebnerBasis<CycNumber>, max_degree: usize) -> Result<Quotient> {
        let mut basis = Vec::new();
        let mut total = 0usize;
        let mut finite = false;
        for d in 0..=max_degree {
            let words = gb.normal_words(d);
            total += words.len();
            if total > BASIS_BUDGET {
                return Err(Error::Budget(format!("quotient basis exceeds {BASIS_BUDGET} words")));
            }
            let empty = words.is_empty();
            basis.push(words);
            if empty {
                finite = true;
                break;
            }
        }
        while basis.len() > 1 && basis.last().is_some_and(|b| b.is_empty()) {
            basis.pop();
        }
        let top = basis.len() - 1;
        Ok(Quotient { space: space.clone(), gb, max_degree: if finite { top } else { max_degree }, finite, basis })
    }

    pub fn space(&self) -> &BraidedSpace {
        &self.space
    }

    /// Highest degree represented; for a finite quotient this is its top degree.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// True when the quotient is known to vanish above `max_degree`.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<CycNumber> {
        &self.gb
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims { dims: self.basis.iter().map(|b| b.len()).collect(), partial: None }
    }

    pub fn basis(&self, d: usize) -> &[Word] {
        self.basis.get(d).map_or(&[], |b| b.as_slice())
    }

    pub fn dimension(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }

    /// Normal form; components above `max_degree` are dropped.
    pub fn normal_form(&self, e: &TensorElement) -> TensorElement {
        let truncated = TensorElement::from_terms(
            e.terms().filter(|(w, _)| w.len() <= self.max_degree).map(|(w, c)| (w.clone(), c.clone())),
        );
        self.gb.reduce(&truncated)
    }

    pub fn multiply(&self, u: &[u8], v: &[u8]) -> TensorElement {
        let mut w = u.to_vec();
        w.extend_from_slice(v);
        self.normal_form(&TensorElement::word(w))
    }

    /// `Delta` of an element of `T(V)` pushed to `B (x) B`.
    pub fn coproduct(&self, e: &TensorElement) -> TensorPair {
        let mut out = TensorPair::zero();
        for (w, c) in e.terms() {
            for ((l, r), v) in coproduct_word(&self.space, w).terms() {
                let nl = self.normal_form(&TensorElement::word(l.clone()));
                if nl.is_zero() {
                    continue;
                }
                let nr = self.normal_form(&TensorElement::word(r.clone()));
                let cv = v.mul(c);
                for (a, x) in nl.terms() {
                    for (b, y) in nr.terms() {
                        out.add_term(a.clone(), b.clone(), cv.mul(x).mul(y));
                    }
                }
            }
        }
        out
    }

    /// `c(u (x) v)` in `B (x) B` for normal words `u`, `v`.
    pub fn braid(&self, u: &[u8], v: &[u8]) -> TensorPair {
        let (l, r, s) = self.space.braid_words(u, v);
        let nl = self.normal_form(&TensorElement::word(l));
        let nr = self.normal_form(&TensorElement::word(r));
        let mut out = TensorPair::zero();
        for (a, x) in nl.terms() {
            for (b, y) in nr.terms() {
                out.add_term(a.clone(), b.clone(), s.mul(x).mul(y));
            }
        }
        out
    }

    /// True when `Delta(e)` lies in `I (x) T + T (x) I`, i.e. vanishes in `B (x) B`.
    pub fn coproduct_vanishes(&self, e: &TensorElement) -> bool {
        self.coproduct(e).is_zero()
    }

    /// `dim ker` of the reduced coproduct on the degree-`d` component.
    pub fn primitives_dim(&self, d: usize) -> usize {
        let words = self.basis(d);
        let mut index: HashMap<(Word, Word), usize> = HashMap::new();
        let vectors: Vec<SparseVec<CycNumber>> = words
            .iter()
            .map(|w| {
                let delta = self.coproduct(&TensorElement::word(w.clone())).reduced();
                let entries: Vec<(usize, CycNumber)> = delta
                    .terms()
                    .map(|(k, v)| {
                        let n = index.len();
                        (*index.entry(k.clone()).or_insert(n), v.clone())
                    })
                    .collect();
                from_entries(entries)
            })
            .collect();
        words.len() - rank(vectors)
    }
}

/// `dim P(T(V)/<relations>)_d` through the truncated quotient.
pub fn primitives(space: &BraidedSpace, relations: &[TensorElement], d: usize) -> Result<usize> {
    Ok(Quotient::from_relations(space, relations, d)?.primitives_dim(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::build_diagonal;

    fn z(n: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(n, k)
    }

    #[test]
    fn rank_one_nichols_quotients() {
        for n in [2u32, 3, 4] {
            let v = build_diagonal(vec![vec![z(n, 1)]]).unwrap();
            let b = Quotient::from_nichols(&v, 8).unwrap();
            assert!(b.is_finite());
            assert_eq!(b.dimension(), n as usize);
            assert_eq!(b.max_degree(), n as usize - 1);
            assert_eq!(b.primitives_dim(1), 1);
            for d in 2..n as usize {
                assert_eq!(b.primitives_dim(d), 0);
            }
        }
    }

    #[test]
    fn a2_at_cube_root() {
        let v = build_diagonal(vec![vec![z(3, 1), z(3, 2)], vec![CycNumber::one(), z(3, 1)]]).unwrap();
        let b = Quotient::from_nichols(&v, 10).unwrap();
        assert!(b.is_finite());
        assert_eq!(b.dimension(), 27);
        assert_eq!(b.primitives_dim(2), 0);
    }

    #[test]
    fn missing_relation_shows_up_as_primitive() {
        // super line without its square relation: x^2 is primitive in T(V)
        let v = build_diagonal(vec![vec![z(2, 1)]]).unwrap();
        assert_eq!(primitives(&v, &[], 2).unwrap(), 1);
    }
}
