//! Quantum symmetrizers and the homogeneous components of the Nichols ideal.
//!
//! `S_d = (S_{d-1} (x) id) T_d` where `T_d` sums the braid lifts moving one
//! letter to the last slot. Ranks are computed from row spaces: the rows of
//! `S_d` are spanned by `(phi (x) x_l^*) T_d` with `phi` a row of `S_{d-1}`,
//! so only a basis of the previous row space has to be kept. Every braiding
//! operator preserves the block key of a word, hence each block is an
//! independent task.

use std::collections::HashMap;

use crate::braided::{BlockKey, BraidedSpace};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Scalar};
use crate::linalg::{from_entries, nullspace, Echelon, SparseVec};
use crate::nichols::rewrite::GradedDims;
use crate::par;
use crate::tensor::{TensorElement, Word};

/// Largest `theta^d` for which words are enumerated explicitly.
pub const MEMORY_GUARD: u64 = 20_000_000;

/// The quantum symmetrizer `S_n` on `V^{(x) n}`.
#[derive(Clone, Copy, Debug)]
pub struct Symmetrizer<'a> {
    space: &'a BraidedSpace,
    degree: usize,
}

pub fn matsumoto_symmetrizer(space: &BraidedSpace, n: usize) -> Symmetrizer<'_> {
    Symmetrizer { space, degree: n }
}

impl Symmetrizer<'_> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn apply(&self, e: &TensorElement) -> Result<TensorElement> {
        match e.degree() {
            Some(d) if d != self.degree => {
                Err(Error::Precondition(format!("symmetrizer of degree {} applied to degree {d}", self.degree)))
            }
            None if !e.is_zero() => Err(Error::Precondition("inhomogeneous element".into())),
            _ => Ok(apply_symmetrizer(self.space, e)),
        }
    }

    /// Image of a single basis word.
    pub fn apply_word(&self, w: &[u8]) -> TensorElement {
        apply_symmetrizer(self.space, &TensorElement::word(w.to_vec()))
    }
}

fn apply_symmetrizer(space: &BraidedSpace, e: &TensorElement) -> TensorElement {
    let d = match e.degree() {
        Some(d) if d >= 2 => d,
        _ => return e.clone(),
    };
    let mut by_last: HashMap<u8, TensorElement> = HashMap::new();
    for (w, c) in e.terms() {
        for k in 0..d {
            let (moved, s) = space.move_to_end(w, k);
            let last = moved[d - 1];
            by_last.entry(last).or_default().add_term(moved[..d - 1].to_vec(), c.mul(&s));
        }
    }
    let mut out = TensorElement::zero();
    for (l, prefix) in by_last {
        for (w, c) in apply_symmetrizer(space, &prefix).into_terms() {
            let mut w = w;
            w.push(l);
            out.add_term(w, c);
        }
    }
    out
}

/// One block of degree `d`: its words and a basis of the row space of `S_d` restricted to it.
#[derive(Clone, Debug)]
pub struct SymmetrizerBlock {
    pub key: BlockKey,
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
    pub rows: Vec<SparseVec<CycNumber>>,
}

impl SymmetrizerBlock {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis of `ker S_d` on this block.
    pub fn kernel(&self) -> Vec<TensorElement> {
        nullspace(self.rows.clone(), self.words.len())
            .into_iter()
            .map(|v| TensorElement::from_terms(v.into_iter().map(|(c, x)| (self.words[c].clone(), x))))
            .collect()
    }
}

/// Row spaces of `S_0, S_1, ..` computed one degree at a time.
pub struct SymmetrizerTower<'a> {
    space: &'a BraidedSpace,
    degree: usize,
    blocks: Vec<SymmetrizerBlock>,
    block_of: HashMap<BlockKey, usize>,
    guard: u64,
}

impl<'a> SymmetrizerTower<'a> {
    pub fn new(space: &'a BraidedSpace) -> Self {
        Self::with_guard(space, MEMORY_GUARD)
    }

    /// A tower that refuses degrees with more than `guard` words.
    pub fn with_guard(space: &'a BraidedSpace, guard: u64) -> Self {
        let key = space.block_key(&[]);
        let mut index = HashMap::new();
        index.insert(Vec::new(), 0);
        let block = SymmetrizerBlock {
            key: key.clone(),
            words: vec![Vec::new()],
            index,
            rows: vec![vec![(0, CycNumber::one())]],
        };
        let mut block_of = HashMap::new();
        block_of.insert(key, 0);
        SymmetrizerTower { space, degree: 0, blocks: vec![block], block_of, guard }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[SymmetrizerBlock] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    /// Advances to the next degree, refusing when the word count exceeds the memory guard.
    pub fn advance(&mut self) -> Result<()> {
        let d = self.degree + 1;
        let theta = self.space.rank() as u64;
        let count = theta.checked_pow(d as u32).unwrap_or(u64::MAX);
        if count > self.guard {
            return Err(Error::Budget(format!("theta^d = {theta}^{d} exceeds the memory guard {}", self.guard)));
        }
        // column view of each previous block: word index -> (row, value)
        let columns: Vec<Vec<Vec<(usize, CycNumber)>>> = par::map(&self.blocks, |b| {
            let mut cols = vec![Vec::new(); b.words.len()];
            for (r, row) in b.rows.iter().enumerate() {
                for (c, v) in row {
                    cols[*c].push((r, v.clone()));
                }
            }
            cols
        });
        let groups: Vec<(BlockKey, Vec<Word>)> = self.space.words_by_block(d).into_iter().collect();
        let space = self.space;
        let prev = &self.blocks;
        let prev_of = &self.block_of;
        let new_blocks = par::map(&groups, |(key, words)| {
            let mut acc: HashMap<(usize, usize, u8), Vec<(usize, CycNumber)>> = HashMap::new();
            for (col, w) in words.iter().enumerate() {
                for k in 0..d {
                    let (moved, s) = space.move_to_end(w, k);
                    let l = moved[d - 1];
                    let prefix = &moved[..d - 1];
                    let Some(&bid) = prev_of.get(&space.block_key(prefix)) else { continue };
                    let Some(&idx) = prev[bid].index.get(prefix) else { continue };
                    for (r, v) in &columns[bid][idx] {
                        acc.entry((bid, *r, l)).or_default().push((col, v.mul(&s)));
                    }
                }
            }
            let mut keys: Vec<_> = acc.keys().cloned().collect();
            keys.sort_unstable();
            let mut ech = Echelon::new();
            for k in keys {
                let entries = acc.remove(&k).unwrap_or_default();
                ech.insert(from_entries(entries));
                if ech.rank() == words.len() {
                    break;
                }
            }
            let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
            SymmetrizerBlock { key: key.clone(), words: words.clone(), index, rows: ech.rows().to_vec() }
        });
        self.block_of = new_blocks.iter().enumerate().map(|(i, b)| (b.key.clone(), i)).collect();
        self.blocks = new_blocks;
        self.degree = d;
        Ok(())
    }
}

/// `dim B_d(V)` for `d = 0..=max_degree`, as ranks of the quantum symmetrizers.
pub fn nichols_dims(space: &BraidedSpace, max_degree: usize) -> GradedDims {
    nichols_dims_with(space, max_degree, MEMORY_GUARD)
}

/// [`nichols_dims`] with an explicit word-count guard.
pub fn nichols_dims_with(space: &BraidedSpace, max_degree: usize, guard: u64) -> GradedDims {
    let mut tower = SymmetrizerTower::with_guard(space, guard);
    let mut dims = vec![1usize];
    while tower.degree() < max_degree {
        if let Err(e) = tower.advance() {
            return GradedDims { dims, partial: Some(e.to_string()) };
        }
        let r = tower.rank();
        dims.push(r);
        if r == 0 {
            dims.resize(max_degree + 1, 0);
            break;
        }
    }
    GradedDims { dims, partial: None }
}

/// Basis of `ker S_d`, grouped block by block.
pub fn ideal_component(space: &BraidedSpace, d: usize) -> Result<Vec<TensorElement>> {
    let mut tower = SymmetrizerTower::new(space);
    while tower.degree() < d {
        tower.advance()?;
    }
    let kernels = par::map(tower.blocks(), |b| b.kernel());
    Ok(kernels.into_iter().flatten().collect())
}

pub fn is_in_nichols_ideal(space: &BraidedSpace, e: &TensorElement) -> Result<bool> {
    if e.is_zero() {
        return Ok(true);
    }
    let d = e.degree().ok_or_else(|| Error::Precondition("inhomogeneous element".into()))?;
    Ok(matsumoto_symmetrizer(space, d).apply(e)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::build_diagonal;

    fn z(n: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(n, k)
    }

    #[test]
    fn rank_one_dims() {
        for n in [2u32, 3, 4, 6] {
            let v = build_diagonal(vec![vec![z(n, 1)]]).unwrap();
            let dims = nichols_dims(&v, n as usize + 1);
            let mut expected = vec![1; n as usize];
            expected.extend([0, 0]);
            assert_eq!(dims.dims, expected, "order {n}");
        }
    }

    #[test]
    fn super_line_ideal() {
        let v = build_diagonal(vec![vec![z(2, 1)]]).unwrap();
        let ker = ideal_component(&v, 2).unwrap();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], TensorElement::word(vec![0, 0]));
    }

    #[test]
    fn degree_two_is_id_plus_c() {
        let v = build_diagonal(vec![vec![z(3, 1), z(3, 2)], vec![CycNumber::one(), z(3, 1)]]).unwrap();
        let s = matsumoto_symmetrizer(&v, 2);
        let e = TensorElement::word(vec![0, 1]);
        let expected = e.add(&v.apply_braiding(&e, 1).unwrap());
        assert_eq!(s.apply(&e).unwrap(), expected);
    }
}
