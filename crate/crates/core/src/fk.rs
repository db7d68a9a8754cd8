//! Fomin-Kirillov algebras `FK_n` as quadratic algebras over transpositions of `S_n`.

use num_rational::BigRational;
use serde::Serialize;

use crate::braided::{perm_compose, perm_identity, perm_inverse, BraidedSpace, Perm};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Scalar};
use crate::nichols::{rewrite_dims, GradedDims, Quotient, RewriteOptions};
use crate::tensor::TensorElement;

#[derive(Clone, Debug)]
pub struct FkSpace {
    pub n: usize,
    /// `(i, j)` with `i < j`, 0-based, in lexicographic order; position = basis index.
    pub transpositions: Vec<(u8, u8)>,
    pub space: BraidedSpace,
    pub relations: Vec<TensorElement>,
}

pub fn transposition(n: usize, i: u8, j: u8) -> Perm {
    let mut p = perm_identity(n);
    p.swap(i as usize, j as usize);
    p
}

/// The pair moved by a transposition, or `None` for any other permutation.
pub fn as_transposition(p: &[u8]) -> Option<(u8, u8)> {
    let moved: Vec<u8> = (0..p.len() as u8).filter(|&k| p[k as usize] != k).collect();
    match moved.as_slice() {
        [i, j] if p[*i as usize] == *j => Some((*i, *j)),
        _ => None,
    }
}

/// `chi(sigma, tau) = 1` iff `sigma(i) < sigma(j)` for `tau = (ij)`, `i < j`.
pub fn fk_chi(sigma: &[u8], tau: &[u8]) -> Result<i64> {
    if as_transposition(sigma).is_none() {
        return Err(Error::Precondition("sigma is not a transposition".into()));
    }
    let (i, j) = as_transposition(tau).ok_or_else(|| Error::Precondition("tau is not a transposition".into()))?;
    Ok(if sigma[i as usize] < sigma[j as usize] { 1 } else { -1 })
}

pub fn build_fk(n: usize) -> Result<FkSpace> {
    if n < 3 {
        return Err(Error::Precondition(format!("FK_n needs n >= 3, got {n}")));
    }
    let mut transpositions = Vec::new();
    for i in 0..n as u8 {
        for j in i + 1..n as u8 {
            transpositions.push((i, j));
        }
    }
    let index = |a: u8, b: u8| -> u8 {
        let key = if a < b { (a, b) } else { (b, a) };
        transpositions.iter().position(|&t| t == key).expect("transposition") as u8
    };
    let degrees: Vec<Perm> = transpositions.iter().map(|&(i, j)| transposition(n, i, j)).collect();
    let theta = degrees.len();
    let mut table = Vec::with_capacity(theta * theta);
    for s in 0..theta {
        for t in 0..theta {
            let sigma = &degrees[s];
            let conj = perm_compose(&perm_compose(sigma, &degrees[t]), &perm_inverse(sigma));
            let (a, b) = as_transposition(&conj).expect("conjugate of a transposition");
            let chi = fk_chi(sigma, &degrees[t])?;
            table.push((index(a, b), s as u8, CycNumber::integer(chi)));
        }
    }
    let labels = transpositions.iter().map(|(i, j)| format!("x({}{})", i + 1, j + 1)).collect();
    let space = BraidedSpace::group_type(labels, degrees, table)?;

    let one = CycNumber::one;
    let minus = || CycNumber::integer(-1);
    let mut relations = Vec::new();
    for &(i, j) in &transpositions {
        let a = index(i, j);
        relations.push(TensorElement::word(vec![a, a]));
    }
    for i in 0..n as u8 {
        for j in i + 1..n as u8 {
            for k in j + 1..n as u8 {
                let (ij, jk, ik) = (index(i, j), index(j, k), index(i, k));
                relations.push(TensorElement::from_terms([
                    (vec![ij, jk], one()),
                    (vec![jk, ik], minus()),
                    (vec![ik, ij], minus()),
                ]));
                relations.push(TensorElement::from_terms([
                    (vec![jk, ij], one()),
                    (vec![ik, jk], minus()),
                    (vec![ij, ik], minus()),
                ]));
            }
        }
    }
    for (a, &(i, j)) in transpositions.iter().enumerate() {
        for (b, &(k, l)) in transpositions.iter().enumerate().skip(a + 1) {
            if i != k && i != l && j != k && j != l {
                relations.push(TensorElement::from_terms([(vec![a as u8, b as u8], one()), (vec![b as u8, a as u8], minus())]));
            }
        }
    }
    Ok(FkSpace { n, transpositions, space, relations })
}

impl FkSpace {
    pub fn rational_relations(&self) -> Vec<TensorElement<BigRational>> {
        self.relations.iter().map(|r| r.map_coefficients(|c| c.as_rational().expect("integer coefficients"))).collect()
    }

    pub fn quotient(&self, max_degree: usize) -> Result<Quotient> {
        Quotient::from_relations(&self.space, &self.relations, max_degree)
    }

    /// Group degree of a word: the product of its transpositions.
    pub fn word_degree(&self, w: &[u8]) -> Perm {
        let mut g = perm_identity(self.n);
        for &l in w {
            g = perm_compose(&g, &self.space.group_degrees()[l as usize]);
        }
        g
    }
}

/// Hilbert series of `FK_n` through `max_degree` by overlap completion over `Q`.
pub fn fk_dims(n: usize, max_degree: usize) -> Result<GradedDims> {
    let fk = build_fk(n)?;
    rewrite_dims(fk.space.rank(), &fk.rational_relations(), &RewriteOptions::with_max_degree(max_degree))
}

#[derive(Clone, Debug, Serialize)]
pub struct FkRelationCheck {
    pub relation: String,
    pub homogeneous: bool,
    /// Cycle notation of the group degree, 1-based.
    pub group_degree: String,
    pub is_transposition: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FkRigidity {
    pub n: usize,
    pub rigid: bool,
    pub relations: Vec<FkRelationCheck>,
    pub generators_have_transposition_degree: bool,
}

pub fn fk_rigidity(n: usize) -> Result<FkRigidity> {
    let fk = build_fk(n)?;
    let mut checks = Vec::new();
    for r in &fk.relations {
        let mut degrees = r.terms().map(|(w, _)| fk.word_degree(w));
        let first = degrees.next().unwrap_or_else(|| perm_identity(n));
        let homogeneous = degrees.all(|g| g == first);
        checks.push(FkRelationCheck {
            relation: format_fk(&fk, r),
            homogeneous,
            group_degree: cycle_notation(&first),
            is_transposition: as_transposition(&first).is_some(),
        });
    }
    let generators_ok = fk.space.group_degrees().iter().all(|g| as_transposition(g).is_some());
    let rigid = generators_ok && checks.iter().all(|c| c.homogeneous && !c.is_transposition);
    Ok(FkRigidity { n, rigid, relations: checks, generators_have_transposition_degree: generators_ok })
}

pub fn format_fk(fk: &FkSpace, e: &TensorElement) -> String {
    let labels = fk.space.labels();
    let parts: Vec<String> = e
        .terms()
        .map(|(w, c)| {
            let word: String = w.iter().map(|&l| labels[l as usize].as_str()).collect();
            match c.as_rational().map(|r| r.to_string()) {
                Some(s) if s == "1" => word,
                Some(s) if s == "-1" => format!("-{word}"),
                _ => format!("({c}){word}"),
            }
        })
        .collect();
    parts.join(" + ").replace("+ -", "- ")
}

pub fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cycle.push((k + 1).to_string());
            k = p[k] as usize;
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_rule() {
        let t = |i, j| transposition(3, i, j);
        assert_eq!(fk_chi(&t(0, 1), &t(0, 1)).unwrap(), -1);
        assert_eq!(fk_chi(&transposition(4, 0, 1), &transposition(4, 2, 3)).unwrap(), 1);
        assert_eq!(fk_chi(&t(0, 1), &t(0, 2)).unwrap(), 1);
        assert!(fk_chi(&perm_identity(3), &t(0, 1)).is_err());
    }

    #[test]
    fn relation_counts() {
        assert_eq!(build_fk(3).unwrap().relations.len(), 5);
        assert_eq!(build_fk(4).unwrap().relations.len(), 17);
        assert_eq!(build_fk(10).unwrap().relations.len(), 45 + 240 + 630);
        assert!(build_fk(2).is_err());
    }

    #[test]
    fn fk3_braiding_example() {
        let fk = build_fk(3).unwrap();
        // x(12) (x) x(13) -> chi((12),(13)) x(23) (x) x(12)
        let (k, l, s) = fk.space.braid_letters(0, 1).clone();
        assert_eq!((k, l), (2, 0));
        assert_eq!(s, CycNumber::one());
        assert!(fk.space.check_braid_equation().holds);
    }

    #[test]
    fn fk3_symmetrizer_agrees() {
        let fk = build_fk(3).unwrap();
        assert_eq!(crate::nichols::nichols_dims(&fk.space, 5).dims, vec![1, 3, 4, 3, 1, 0]);
        for r in &fk.relations {
            assert!(crate::nichols::is_in_nichols_ideal(&fk.space, r).unwrap());
        }
    }

    #[test]
    fn fk3_hilbert_series() {
        assert_eq!(fk_dims(3, 6).unwrap().dims, vec![1, 3, 4, 3, 1, 0, 0]);
    }
}
