//! Sparse exact linear algebra over any [`Scalar`] field.
//!
//! Vectors are sorted `(column, value)` lists without explicit zeros.
//! [`Echelon`] keeps rows with pairwise distinct leading columns, which is
//! all that rank, membership and kernel computations need.

use std::collections::{BTreeMap, HashMap};

use crate::exact::Scalar;

pub type SparseVec<F> = Vec<(usize, F)>;

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn from_entries<F: Scalar>(entries: impl IntoIterator<Item = (usize, F)>) -> SparseVec<F> {
    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
    for (c, v) in entries {
        if v.is_zero() {
            continue;
        }
        match acc.get_mut(&c) {
            Some(slot) => *slot = slot.add(&v),
            None => {
                acc.insert(c, v);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a + factor * b`.
pub fn axpy<F: Scalar>(a: &SparseVec<F>, factor: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = factor.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&factor.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Scalar>(v: &SparseVec<F>, factor: &F) -> SparseVec<F> {
    if factor.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(c, x)| (*c, x.mul(factor))).collect()
}

pub fn dot_dense<F: Scalar>(v: &SparseVec<F>, dense: &[F]) -> F {
    v.iter().fold(F::zero(), |acc, (c, x)| acc.add(&x.mul(&dense[*c])))
}

/// Row echelon form with monic rows and distinct leading columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Scalar> {
    rows: Vec<SparseVec<F>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Scalar> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivot_row: HashMap::new() }
    }
}

impl<F: Scalar> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Reduces `v` until its leading column is not a pivot (or it vanishes).
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((lead, coeff)) = v.first().cloned() {
            match self.pivot_row.get(&lead) {
                Some(&r) => v = axpy(&v, &coeff.neg(), &self.rows[r]),
                None => break,
            }
        }
        v
    }

    /// Fully reduces `v` against every pivot, not only the leading one.
    pub fn reduce_full(&self, v: SparseVec<F>) -> SparseVec<F> {
        let mut v = v;
        let mut idx = 0;
        while idx < v.len() {
            let (col, coeff) = v[idx].clone();
            if let Some(&r) = self.pivot_row.get(&col) {
                v = axpy(&v, &coeff.neg(), &self.rows[r]);
            } else {
                idx += 1;
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts `v`; returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let v = self.reduce(v);
        if v.is_empty() {
            return false;
        }
        let inv = v[0].1.inv();
        let v = scale(&v, &inv);
        self.pivot_row.insert(v[0].0, self.rows.len());
        self.rows.push(v);
        true
    }

    /// Reduced row echelon form: rows sorted by pivot, pivot columns cleared elsewhere.
    pub fn into_rref(self) -> Vec<SparseVec<F>> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivots: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        for i in (0..rows.len()).rev() {
            let mut row = rows[i].clone();
            let mut k = 1;
            while k < row.len() {
                let (col, coeff) = row[k].clone();
                match pivots.get(&col) {
                    Some(&p) if p != i => {
                        row = axpy(&row, &coeff.neg(), &rows[p]);
                    }
                    _ => k += 1,
                }
            }
            rows[i] = row;
        }
        rows
    }
}

pub fn rank<F: Scalar>(rows: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of `{ x : row . x = 0 for every row }` in a space of dimension `ncols`.
pub fn nullspace<F: Scalar>(rows: impl IntoIterator<Item = SparseVec<F>>, ncols: usize) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let rref = e.into_rref();
    let mut is_pivot = vec![false; ncols];
    for r in &rref {
        is_pivot[r[0].0] = true;
    }
    // column -> list of (pivot column, coefficient in that row)
    let mut by_free: HashMap<usize, Vec<(usize, F)>> = HashMap::new();
    for r in &rref {
        let pc = r[0].0;
        for (c, v) in &r[1..] {
            by_free.entry(*c).or_default().push((pc, v.neg()));
        }
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut entries = by_free.remove(&free).unwrap_or_default();
            entries.push((free, F::one()));
            from_entries(entries)
        })
        .collect()
}

/// Applies a matrix given by its rows to a sparse vector.
pub fn apply_rows<F: Scalar>(rows: &[SparseVec<F>], v: &SparseVec<F>) -> Vec<F> {
    let mut dense_v: HashMap<usize, &F> = HashMap::with_capacity(v.len());
    for (c, x) in v {
        dense_v.insert(*c, x);
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .filter_map(|(c, a)| dense_v.get(c).map(|x| a.mul(x)))
                .fold(F::zero(), |acc, t| acc.add(&t))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_i64(v)
    }

    fn row(entries: &[(usize, i64)]) -> SparseVec<BigRational> {
        from_entries(entries.iter().map(|&(c, v)| (c, q(v))))
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![row(&[(0, 1), (1, 2), (2, 3)]), row(&[(0, 2), (1, 4), (2, 6)]), row(&[(1, 1), (2, 1)])];
        assert_eq!(rank(rows.clone()), 2);
        let ker = nullspace(rows.clone(), 3);
        assert_eq!(ker.len(), 1);
        for r in &rows {
            let dense: Vec<BigRational> = (0..3)
                .map(|c| ker[0].iter().find(|(cc, _)| *cc == c).map(|(_, v)| v.clone()).unwrap_or_else(|| q(0)))
                .collect();
            assert!(dot_dense(r, &dense).is_zero());
        }
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 1), (3, 1)])));
        assert!(e.insert(row(&[(1, 2), (3, -1)])));
        assert!(e.contains(&row(&[(0, 2), (1, 2), (3, 1)])));
        assert!(!e.contains(&row(&[(3, 1)])));
        assert!(!e.insert(row(&[(0, 1), (1, 2), (3, 0)])));
    }

    #[test]
    fn rref_clears_pivots() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(row(&[(1, 1), (2, 2)]));
        let r = e.into_rref();
        assert_eq!(r[0], row(&[(0, 1), (2, -1)]));
        assert_eq!(r[1], row(&[(1, 1), (2, 2)]));
    }
}
