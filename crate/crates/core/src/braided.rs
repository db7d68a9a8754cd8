//! Braided vector spaces of diagonal and group type.
//!
//! Both kinds are stored as a monomial table: `c(x_i (x) x_j) = s * x_k (x) x_l`.
//! Every braiding operator therefore sends basis words to scalar multiples of
//! basis words, which the symmetrizer and coproduct code rely on.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{CycNumber, Scalar};
use crate::tensor::{letter_counts, TensorElement, Word};

/// Permutation of `{0, .., n-1}` stored as its image list.
pub type Perm = Vec<u8>;

pub fn perm_compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn perm_inverse(a: &[u8]) -> Perm {
    let mut out = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

pub fn perm_identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BraidingKind {
    Diagonal,
    GroupType,
}

/// Grading key of a word, constant on the blocks every braiding operator preserves.
pub type BlockKey = Vec<i64>;

#[derive(Clone, Debug)]
pub struct BraidedSpace {
    kind: BraidingKind,
    labels: Vec<String>,
    q: Vec<Vec<CycNumber>>,
    degrees: Vec<Perm>,
    table: Vec<(u8, u8, CycNumber)>,
    inverse: Vec<(u8, u8, CycNumber)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DynkinDiagram {
    pub vertices: Vec<CycNumber>,
    /// `(i, j, q_ij q_ji)` for `i < j`, only when the label differs from 1.
    pub edges: Vec<(usize, usize, CycNumber)>,
}

impl DynkinDiagram {
    pub fn edge(&self, i: usize, j: usize) -> CycNumber {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges
            .iter()
            .find(|(x, y, _)| *x == a && *y == b)
            .map(|(_, _, v)| v.clone())
            .unwrap_or_else(CycNumber::one)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidCheck {
    pub holds: bool,
    pub counterexample: Option<Word>,
}

pub fn build_diagonal(q: Vec<Vec<CycNumber>>) -> Result<BraidedSpace> {
    let theta = q.len();
    if theta == 0 {
        return Err(Error::InvalidBraiding("empty q-matrix".into()));
    }
    if theta > u8::MAX as usize {
        return Err(Error::InvalidBraiding(format!("rank {theta} too large")));
    }
    for (i, row) in q.iter().enumerate() {
        if row.len() != theta {
            return Err(Error::InvalidBraiding(format!("row {} has length {}, expected {theta}", i + 1, row.len())));
        }
        for (j, v) in row.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::InvalidBraiding(format!("q_{}{} is zero", i + 1, j + 1)));
            }
        }
    }
    let mut table = Vec::with_capacity(theta * theta);
    let mut inverse = Vec::with_capacity(theta * theta);
    for i in 0..theta {
        for j in 0..theta {
            table.push((j as u8, i as u8, q[i][j].clone()));
            // c^{-1}(x_i x_j) = q_ji^{-1} x_j x_i
            inverse.push((j as u8, i as u8, q[j][i].inv()));
        }
    }
    Ok(BraidedSpace {
        kind: BraidingKind::Diagonal,
        labels: (1..=theta).map(|i| format!("x{i}")).collect(),
        q,
        degrees: Vec::new(),
        table,
        inverse,
    })
}

impl BraidedSpace {
    /// Group-type space from its braiding table `(i, j) -> (k, l, s)` and the group degree of each basis vector.
    pub fn group_type(labels: Vec<String>, degrees: Vec<Perm>, table: Vec<(u8, u8, CycNumber)>) -> Result<BraidedSpace> {
        let theta = labels.len();
        if degrees.len() != theta || table.len() != theta * theta {
            return Err(Error::InvalidBraiding("table size does not match the basis".into()));
        }
        let mut inverse: Vec<Option<(u8, u8, CycNumber)>> = vec![None; theta * theta];
        for i in 0..theta {
            for j in 0..theta {
                let (k, l, s) = &table[i * theta + j];
                if s.is_zero() {
                    return Err(Error::InvalidBraiding(format!("zero scalar at ({}, {})", i + 1, j + 1)));
                }
                let slot = &mut inverse[*k as usize * theta + *l as usize];
                if slot.is_some() {
                    return Err(Error::InvalidBraiding("braiding table is not a bijection".into()));
                }
                *slot = Some((i as u8, j as u8, s.inv()));
            }
        }
        Ok(BraidedSpace {
            kind: BraidingKind::GroupType,
            labels,
            q: Vec::new(),
            degrees,
            table,
            inverse: inverse.into_iter().map(|x| x.expect("bijective table")).collect(),
        })
    }

    pub fn kind(&self) -> BraidingKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.rank());
        self.labels = labels;
        self
    }

    pub fn q_matrix(&self) -> Result<&[Vec<CycNumber>]> {
        match self.kind {
            BraidingKind::Diagonal => Ok(&self.q),
            BraidingKind::GroupType => Err(Error::NotDiagonal),
        }
    }

    pub fn q(&self, i: usize, j: usize) -> &CycNumber {
        &self.q[i][j]
    }

    /// `q_ij q_ji`.
    pub fn q_tilde(&self, i: usize, j: usize) -> CycNumber {
        self.q[i][j].mul(&self.q[j][i])
    }

    pub fn group_degrees(&self) -> &[Perm] {
        &self.degrees
    }

    /// `c(x_i (x) x_j) = s * x_k (x) x_l`.
    pub fn braid_letters(&self, i: u8, j: u8) -> &(u8, u8, CycNumber) {
        &self.table[i as usize * self.rank() + j as usize]
    }

    pub fn unbraid_letters(&self, k: u8, l: u8) -> &(u8, u8, CycNumber) {
        &self.inverse[k as usize * self.rank() + l as usize]
    }

    /// Applies `c` on slots `pos, pos + 1` (0-based) of a basis word.
    pub fn braid_word(&self, w: &[u8], pos: usize) -> (Word, CycNumber) {
        let (k, l, s) = self.braid_letters(w[pos], w[pos + 1]);
        let mut out = w.to_vec();
        out[pos] = *k;
        out[pos + 1] = *l;
        (out, s.clone())
    }

    pub fn unbraid_word(&self, w: &[u8], pos: usize) -> (Word, CycNumber) {
        let (k, l, s) = self.unbraid_letters(w[pos], w[pos + 1]);
        let mut out = w.to_vec();
        out[pos] = *k;
        out[pos + 1] = *l;
        (out, s.clone())
    }

    /// `c_{d-1} ... c_k` on a word of length `d`: moves the letter at `k` to the end.
    pub fn move_to_end(&self, w: &[u8], k: usize) -> (Word, CycNumber) {
        let mut word = w.to_vec();
        let mut scalar = CycNumber::one();
        for pos in k..word.len().saturating_sub(1) {
            let (a, b, s) = self.braid_letters(word[pos], word[pos + 1]);
            word[pos] = *a;
            word[pos + 1] = *b;
            scalar = scalar.mul(s);
        }
        (word, scalar)
    }

    /// Braiding of `T(V)` on basis words: `c(u (x) v) = s * v' (x) u'`.
    pub fn braid_words(&self, u: &[u8], v: &[u8]) -> (Word, Word, CycNumber) {
        let a = u.len();
        let mut word = u.to_vec();
        word.extend_from_slice(v);
        let mut scalar = CycNumber::one();
        for t in 0..v.len() {
            for pos in (t..a + t).rev() {
                let (x, y, s) = self.braid_letters(word[pos], word[pos + 1]);
                word[pos] = *x;
                word[pos + 1] = *y;
                scalar = scalar.mul(s);
            }
        }
        let right = word.split_off(v.len());
        (word, right, scalar)
    }

    /// Applies the braiding operator at 1-based position `i` to a homogeneous element.
    pub fn apply_braiding(&self, e: &TensorElement, i: usize) -> Result<TensorElement> {
        let n = e.degree().unwrap_or(0);
        if e.is_zero() {
            return Ok(TensorElement::zero());
        }
        check_position(n, i)?;
        Ok(TensorElement::from_terms(e.terms().map(|(w, c)| {
            let (w2, s) = self.braid_word(w, i - 1);
            (w2, c.mul(&s))
        })))
    }

    pub fn braiding_operator(&self, n: usize, i: usize) -> Result<BraidingOperator<'_>> {
        check_position(n, i)?;
        Ok(BraidingOperator { space: self, degree: n, position: i })
    }

    pub fn block_key(&self, w: &[u8]) -> BlockKey {
        match self.kind {
            BraidingKind::Diagonal => letter_counts(w, self.rank()),
            BraidingKind::GroupType => {
                let n = self.degrees.first().map_or(0, |p| p.len());
                let mut g = perm_identity(n);
                for &l in w {
                    g = perm_compose(&g, &self.degrees[l as usize]);
                }
                let mut key = vec![w.len() as i64];
                key.extend(g.into_iter().map(i64::from));
                key
            }
        }
    }

    pub fn check_braid_equation(&self) -> BraidCheck {
        let theta = self.rank() as u8;
        for a in 0..theta {
            for b in 0..theta {
                for c in 0..theta {
                    let w = [a, b, c];
                    let lhs = self.compose_positions(&w, &[0, 1, 0]);
                    let rhs = self.compose_positions(&w, &[1, 0, 1]);
                    if lhs != rhs {
                        return BraidCheck { holds: false, counterexample: Some(w.to_vec()) };
                    }
                }
            }
        }
        BraidCheck { holds: true, counterexample: None }
    }

    /// Applies `c` at the listed 0-based positions in order (first entry acts first).
    fn compose_positions(&self, w: &[u8], positions: &[usize]) -> (Word, CycNumber) {
        let mut word = w.to_vec();
        let mut scalar = CycNumber::one();
        for &p in positions {
            let (w2, s) = self.braid_word(&word, p);
            word = w2;
            scalar = scalar.mul(&s);
        }
        (word, scalar)
    }

    pub fn cartan_integer(&self, i: usize, j: usize, cap: u32) -> Result<Option<i64>> {
        if i == j {
            return Err(Error::SameIndex(i, j));
        }
        if self.kind != BraidingKind::Diagonal {
            return Err(Error::NotDiagonal);
        }
        Ok(cartan_integer_from(&self.q[i][i], &self.q_tilde(i, j), cap))
    }

    pub fn dynkin_diagram(&self) -> Result<DynkinDiagram> {
        if self.kind != BraidingKind::Diagonal {
            return Err(Error::NotDiagonal);
        }
        let theta = self.rank();
        let vertices = (0..theta).map(|i| self.q[i][i].clone()).collect();
        let mut edges = Vec::new();
        for i in 0..theta {
            for j in i + 1..theta {
                let t = self.q_tilde(i, j);
                if !t.is_one() {
                    edges.push((i, j, t));
                }
            }
        }
        Ok(DynkinDiagram { vertices, edges })
    }

    /// `q~_ij = q_ii^{c_ij}` for all `j != i`. Rank one is vacuously Cartan.
    pub fn is_cartan_vertex(&self, i: usize, cap: u32) -> Result<bool> {
        for j in 0..self.rank() {
            if j == i {
                continue;
            }
            let c = self.cartan_integer(i, j, cap)?.ok_or(Error::UndefinedCartanInteger { i: i + 1, j: j + 1, cap })?;
            if self.q_tilde(i, j) != self.q[i][i].pow(c) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generalized Cartan matrix; `None` entries are undefined within `cap`.
    pub fn cartan_matrix(&self, cap: u32) -> Result<Vec<Vec<Option<i64>>>> {
        let theta = self.rank();
        let mut m = vec![vec![Some(2); theta]; theta];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                if i != j {
                    *slot = self.cartan_integer(i, j, cap)?;
                }
            }
        }
        Ok(m)
    }

    /// Least common multiple of the field orders of all braiding scalars.
    pub fn ambient_order(&self) -> u32 {
        self.table
            .iter()
            .map(|(_, _, s)| s.field_order() as u64)
            .fold(1u64, |a, b| a / crate::exact::gcd_u64(a, b) * b) as u32
    }

    /// Basis words of length `d` grouped by block key.
    pub fn words_by_block(&self, d: usize) -> BTreeMap<BlockKey, Vec<Word>> {
        let mut out: BTreeMap<BlockKey, Vec<Word>> = BTreeMap::new();
        for w in all_words(self.rank(), d) {
            out.entry(self.block_key(&w)).or_default().push(w);
        }
        out
    }
}

pub fn cartan_integer_from(qii: &CycNumber, qt: &CycNumber, cap: u32) -> Option<i64> {
    let mut qn = CycNumber::one();
    for n in 0..=cap {
        let first = qii.q_integer(n + 1);
        let second = CycNumber::one().sub(&qn.mul(qt));
        if first.is_zero() || second.is_zero() {
            return Some(-(n as i64));
        }
        qn = qn.mul(qii);
    }
    None
}

fn check_position(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::PositionOutOfRange { position: i, degree: n });
    }
    Ok(())
}

/// All words of length `d` over `theta` letters in lexicographic order.
pub fn all_words(theta: usize, d: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * theta);
        for w in &out {
            for l in 0..theta as u8 {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

/// The operator `id^{i-1} (x) c (x) id^{n-i-1}` on `V^{(x) n}`.
#[derive(Clone, Copy, Debug)]
pub struct BraidingOperator<'a> {
    space: &'a BraidedSpace,
    degree: usize,
    position: usize,
}

impl BraidingOperator<'_> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn apply(&self, e: &TensorElement) -> Result<TensorElement> {
        self.check(e)?;
        self.space.apply_braiding(e, self.position)
    }

    pub fn apply_inverse(&self, e: &TensorElement) -> Result<TensorElement> {
        self.check(e)?;
        Ok(TensorElement::from_terms(e.terms().map(|(w, c)| {
            let (w2, s) = self.space.unbraid_word(w, self.position - 1);
            (w2, c.mul(&s))
        })))
    }

    fn check(&self, e: &TensorElement) -> Result<()> {
        match e.degree() {
            Some(d) if d != self.degree => Err(Error::Precondition(format!("expected degree {}, got {d}", self.degree))),
            None if !e.is_zero() => Err(Error::Precondition("inhomogeneous element".into())),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(n, k)
    }

    fn a2() -> BraidedSpace {
        build_diagonal(vec![vec![z(3, 1), z(3, 2)], vec![CycNumber::one(), z(3, 1)]]).unwrap()
    }

    #[test]
    fn diagonal_braiding_on_pairs() {
        let v = a2();
        let e = TensorElement::word(vec![0, 1]);
        let out = v.apply_braiding(&e, 1).unwrap();
        assert_eq!(out, TensorElement::monomial(vec![1, 0], z(3, 2)));
        assert!(v.check_braid_equation().holds);
        assert!(matches!(v.apply_braiding(&e, 2), Err(Error::PositionOutOfRange { .. })));
    }

    #[test]
    fn zero_entry_rejected() {
        let bad = build_diagonal(vec![vec![z(2, 1), CycNumber::zero()], vec![CycNumber::one(), z(2, 1)]]);
        assert!(bad.is_err());
    }

    #[test]
    fn cartan_integers() {
        let v = a2();
        assert_eq!(v.cartan_integer(0, 1, 50).unwrap(), Some(-1));
        assert!(v.is_cartan_vertex(0, 50).unwrap());
        assert!(v.is_cartan_vertex(1, 50).unwrap());
        assert!(matches!(v.cartan_integer(0, 0, 50), Err(Error::SameIndex(0, 0))));
        let generic = build_diagonal(vec![
            vec![CycNumber::integer(2), CycNumber::from_ratio(1, 2)],
            vec![CycNumber::one(), CycNumber::integer(2)],
        ])
        .unwrap();
        assert_eq!(generic.cartan_integer(0, 1, 50).unwrap(), Some(-1));
        let sup = build_diagonal(vec![vec![z(2, 1), z(3, 1)], vec![CycNumber::one(), z(2, 1)]]).unwrap();
        assert_eq!(sup.cartan_integer(0, 1, 50).unwrap(), Some(-1));
        assert!(!sup.is_cartan_vertex(0, 50).unwrap());
        let d = sup.dynkin_diagram().unwrap();
        assert_eq!(d.vertices, vec![z(2, 1), z(2, 1)]);
        assert_eq!(d.edges, vec![(0, 1, z(3, 1))]);
    }

    #[test]
    fn braid_words_matches_letterwise() {
        let v = a2();
        let (l, r, s) = v.braid_words(&[0, 1], &[1]);
        assert_eq!((l, r), (vec![1], vec![0, 1]));
        assert_eq!(s, v.q(0, 1).mul(v.q(1, 1)));
    }
}
