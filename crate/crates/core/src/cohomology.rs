//! Graded bialgebra cohomology of finite-dimensional braided bialgebras.
//!
//! Cochains live in the normalized bicomplex `Hom((B+)^p, (B+)^q)`, restricted to
//! maps of a fixed degree that preserve a chosen grading key (the category constraint).
//! `Ĥ^2` is `H^3` of the total complex of the bicomplex with its edges removed.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::braided::{perm_compose, perm_identity, BraidedSpace, BraidingKind};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Scalar};
use crate::linalg::{from_entries, nullspace, rank, SparseVec};
use crate::nichols::Quotient;
use crate::par;
use crate::tensor::{letter_counts, TensorElement, Word};

/// Linear combination of basis tuples of `B^{(x)k}`.
pub type Tens = BTreeMap<Vec<usize>, CycNumber>;

fn tens_add(t: &mut Tens, k: Vec<usize>, c: CycNumber) {
    if c.is_zero() {
        return;
    }
    match t.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Which homogeneous decomposition cochains must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grading {
    /// No constraint beyond the integer degree.
    Plain,
    /// `Z^theta` multidegree (diagonal type).
    Multidegree,
    /// `(g, chi)` in the separating realization, as exponents of the values `chi_j(g)`, `chi(g_i)`.
    Separating,
    /// Group degree in `S_n` together with equivariance under the degrees of the generators (group type).
    GroupDegree,
}

/// Structure constants of a finite-dimensional graded braided bialgebra on a
/// basis of words; index 0 is the unit.
#[derive(Clone, Debug)]
pub struct GradedBialgebraData {
    pub words: Vec<Word>,
    pub labels: Vec<String>,
    pub degree: Vec<usize>,
    pub grading: Grading,
    pub keys: Vec<Vec<i64>>,
    key_modulus: i64,
    mult: Vec<Vec<SparseVec<CycNumber>>>,
    comult: Vec<Vec<(usize, usize, CycNumber)>>,
    braid: Vec<Vec<Vec<(usize, usize, CycNumber)>>>,
    /// `g_i . b` for the degree `g_i` of each generator.
    action: Vec<Vec<SparseVec<CycNumber>>>,
    quotient: Option<Quotient>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: Vec<String>,
}

impl GradedBialgebraData {
    /// `B(V)` through `max_degree`; the algebra must vanish above it.
    pub fn from_nichols(space: &BraidedSpace, max_degree: usize) -> Result<Self> {
        Self::from_quotient(Quotient::from_nichols(space, max_degree)?)
    }

    /// `T(V)/<relations>`; fails with `Axiom` if the relations do not span a biideal.
    pub fn from_relations(space: &BraidedSpace, relations: &[TensorElement], max_degree: usize) -> Result<Self> {
        let data = Self::from_quotient(Quotient::from_relations(space, relations, max_degree)?)?;
        if let Some(f) = data.check_axioms().into_iter().next() {
            return Err(Error::Axiom(format!("{} fails at {}", f.axiom, f.witness.join(", "))));
        }
        Ok(data)
    }

    pub fn from_quotient(q: Quotient) -> Result<Self> {
        if !q.is_finite() {
            return Err(Error::Precondition(format!("quotient is not finite-dimensional through degree {}", q.max_degree())));
        }
        let space = q.space().clone();
        let mut words = Vec::new();
        for d in 0..=q.max_degree() {
            words.extend(q.basis(d).iter().cloned());
        }
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let to_sparse = |e: &TensorElement| from_entries(e.terms().map(|(w, c)| (index[w], c.clone())));
        let n = words.len();
        let mult: Vec<Vec<SparseVec<CycNumber>>> =
            par::map_range(n, |i| (0..n).map(|j| to_sparse(&q.multiply(&words[i], &words[j]))).collect());
        let comult = par::map_range(n, |i| {
            q.coproduct(&TensorElement::word(words[i].clone()))
                .terms()
                .map(|((l, r), c)| (index[l], index[r], c.clone()))
                .collect()
        });
        let braid = par::map_range(n, |i| {
            (0..n)
                .map(|j| q.braid(&words[i], &words[j]).terms().map(|((l, r), c)| (index[l], index[r], c.clone())).collect())
                .collect()
        });
        let action = (0..space.rank() as u8)
            .map(|g| {
                words
                    .iter()
                    .map(|w| {
                        let mut c = CycNumber::one();
                        let mut moved = Vec::with_capacity(w.len());
                        for &l in w {
                            let (k, _, s) = space.braid_letters(g, l);
                            c = c.mul(s);
                            moved.push(*k);
                        }
                        to_sparse(&q.normal_form(&TensorElement::word(moved)).scale(&c))
                    })
                    .collect()
            })
            .collect();
        let labels = words.iter().map(|w| word_label(&space, w)).collect();
        let degree = words.iter().map(|w| w.len()).collect();
        let grading = match space.kind() {
            BraidingKind::Diagonal => Grading::Separating,
            BraidingKind::GroupType => Grading::GroupDegree,
        };
        let mut data = GradedBialgebraData {
            words,
            labels,
            degree,
            grading: Grading::Plain,
            keys: Vec::new(),
            key_modulus: 0,
            mult,
            comult,
            braid,
            action,
            quotient: Some(q),
        };
        data.set_grading(grading)?;
        Ok(data)
    }

    /// Recomputes the grading keys of all basis elements.
    pub fn set_grading(&mut self, grading: Grading) -> Result<()> {
        let space = self.quotient.as_ref().expect("quotient").space().clone();
        let theta = space.rank();
        let (keys, modulus) = match grading {
            Grading::Plain => (vec![Vec::new(); self.words.len()], 0),
            Grading::Multidegree => {
                if space.kind() != BraidingKind::Diagonal {
                    return Err(Error::NotDiagonal);
                }
                (self.words.iter().map(|w| letter_counts(w, theta)).collect(), 0)
            }
            Grading::Separating => {
                let q = space.q_matrix()?;
                let mut n = 1u32;
                for x in q.iter().flatten() {
                    let o = x.order()?.ok_or_else(|| Error::Precondition(format!("{x} is not a root of unity")))? as u32;
                    n = n / crate::exact::gcd_u64(n as u64, o as u64) as u32 * o;
                }
                let exp = |x: &CycNumber| -> Result<i64> {
                    (0..n as i64)
                        .find(|&k| CycNumber::root_of_unity(n, k) == *x)
                        .ok_or_else(|| Error::Precondition(format!("{x} is not a root of unity of order dividing {n}")))
                };
                let mut letter = Vec::with_capacity(theta);
                for i in 0..theta {
                    let mut k = Vec::with_capacity(2 * theta);
                    for j in 0..theta {
                        k.push(exp(&q[i][j])?);
                    }
                    for j in 0..theta {
                        k.push(exp(&q[j][i])?);
                    }
                    letter.push(k);
                }
                let keys = self
                    .words
                    .iter()
                    .map(|w| {
                        let mut k = vec![0i64; 2 * theta];
                        for &l in w {
                            for (a, b) in k.iter_mut().zip(&letter[l as usize]) {
                                *a = (*a + b) % n as i64;
                            }
                        }
                        k
                    })
                    .collect();
                (keys, n as i64)
            }
            Grading::GroupDegree => {
                if space.kind() != BraidingKind::GroupType {
                    return Err(Error::Precondition("group degree needs a braiding of group type".into()));
                }
                (self.words.iter().map(|w| space.block_key(w)[1..].to_vec()).collect(), 0)
            }
        };
        self.grading = grading;
        self.keys = keys;
        self.key_modulus = modulus;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn top_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    pub fn quotient(&self) -> Option<&Quotient> {
        self.quotient.as_ref()
    }

    /// Indices of the augmentation ideal `B+`.
    pub fn plus(&self) -> std::ops::Range<usize> {
        1..self.dim()
    }

    pub fn mult(&self, i: usize, j: usize) -> &SparseVec<CycNumber> {
        &self.mult[i][j]
    }

    pub fn comult(&self, i: usize) -> &[(usize, usize, CycNumber)] {
        &self.comult[i]
    }

    /// `c(b_i (x) b_j)`.
    pub fn braid(&self, i: usize, j: usize) -> &[(usize, usize, CycNumber)] {
        &self.braid[i][j]
    }

    /// Key of a tensor of basis elements.
    pub fn tuple_key(&self, t: &[usize]) -> Vec<i64> {
        match self.grading {
            Grading::Plain => Vec::new(),
            Grading::GroupDegree => {
                let n = self.keys[0].len();
                t.iter().fold(perm_identity(n), |g, &i| {
                    let p: Vec<u8> = self.keys[i].iter().map(|&x| x as u8).collect();
                    perm_compose(&g, &p)
                })
                .into_iter()
                .map(i64::from)
                .collect()
            }
            Grading::Multidegree | Grading::Separating => {
                let mut k = self.keys[0].clone();
                for &i in t {
                    for (a, b) in k.iter_mut().zip(&self.keys[i]) {
                        *a += b;
                        if self.key_modulus > 0 {
                            *a %= self.key_modulus;
                        }
                    }
                }
                k
            }
        }
    }

    pub fn tuple_degree(&self, t: &[usize]) -> usize {
        t.iter().map(|&i| self.degree[i]).sum()
    }

    /// Applies `c` at positions `pos, pos + 1`.
    pub fn braid_at(&self, t: &Tens, pos: usize) -> Tens {
        let mut out = Tens::new();
        for (k, c) in t {
            for (a, b, v) in &self.braid[k[pos]][k[pos + 1]] {
                let mut nk = k.clone();
                nk[pos] = *a;
                nk[pos + 1] = *b;
                tens_add(&mut out, nk, c.mul(v));
            }
        }
        out
    }

    /// Applies `Delta` to the factor at `pos`.
    pub fn delta_at(&self, t: &Tens, pos: usize) -> Tens {
        let mut out = Tens::new();
        for (k, c) in t {
            for (a, b, v) in &self.comult[k[pos]] {
                let mut nk = Vec::with_capacity(k.len() + 1);
                nk.extend_from_slice(&k[..pos]);
                nk.push(*a);
                nk.push(*b);
                nk.extend_from_slice(&k[pos + 1..]);
                tens_add(&mut out, nk, c.mul(v));
            }
        }
        out
    }

    /// Multiplies the factors at `pos, pos + 1`.
    pub fn mult_at(&self, t: &Tens, pos: usize) -> Tens {
        let mut out = Tens::new();
        for (k, c) in t {
            for (a, v) in &self.mult[k[pos]][k[pos + 1]] {
                let mut nk = Vec::with_capacity(k.len() - 1);
                nk.extend_from_slice(&k[..pos]);
                nk.push(*a);
                nk.extend_from_slice(&k[pos + 2..]);
                tens_add(&mut out, nk, c.mul(v));
            }
        }
        out
    }

    /// Product of the factors in `range` of every tuple.
    pub fn mult_range(&self, t: &Tens, start: usize, len: usize) -> Tens {
        let mut out = t.clone();
        for _ in 1..len {
            out = self.mult_at(&out, start);
        }
        out
    }

    /// Iterated coproduct `B -> B^{(x)q}`.
    pub fn iterated_delta(&self, a: usize, q: usize) -> Tens {
        let mut t = Tens::new();
        t.insert(vec![a], CycNumber::one());
        for k in 1..q {
            t = self.delta_at(&t, k - 1);
        }
        t
    }

    /// Product in the braided tensor product algebra `B^{(x)q}`.
    pub fn tensor_product(&self, x: &Tens, y: &Tens) -> Tens {
        let mut out = Tens::new();
        for (kx, cx) in x {
            for (ky, cy) in y {
                let q = kx.len();
                let mut t = Tens::new();
                let mut k = kx.clone();
                k.extend_from_slice(ky);
                t.insert(k, cx.mul(cy));
                // move y_k left past x_{k+1..q}
                for m in 0..q {
                    let from = q + m;
                    let to = 2 * m + 1;
                    for pos in (to..from).rev() {
                        t = self.braid_at(&t, pos);
                    }
                }
                for m in 0..q {
                    t = self.mult_at(&t, m);
                }
                for (k, c) in t {
                    tens_add(&mut out, k, c);
                }
            }
        }
        out
    }

    /// Coproduct of `B^{(x)p}`, with the `p` left factors followed by the `p` right ones.
    pub fn tensor_coproduct(&self, a: &[usize]) -> Tens {
        let p = a.len();
        let mut t = Tens::new();
        t.insert(a.to_vec(), CycNumber::one());
        for k in (0..p).rev() {
            t = self.delta_at(&t, k);
        }
        for k in 1..p {
            for pos in (k..2 * k).rev() {
                t = self.braid_at(&t, pos);
            }
        }
        t
    }

    /// `rho_l`: left coaction of `B` on `B^{(x)p}`.
    pub fn left_coaction(&self, a: &[usize]) -> Tens {
        self.mult_range(&self.tensor_coproduct(a), 0, a.len())
    }

    /// `rho_r`: right coaction of `B` on `B^{(x)p}`.
    pub fn right_coaction(&self, a: &[usize]) -> Tens {
        self.mult_range(&self.tensor_coproduct(a), a.len(), a.len())
    }

    fn single(&self, i: usize) -> Tens {
        let mut t = Tens::new();
        t.insert(vec![i], CycNumber::one());
        t
    }

    fn sparse_tens(&self, v: &SparseVec<CycNumber>) -> Tens {
        v.iter().map(|(i, c)| (vec![*i], c.clone())).collect()
    }

    /// Checks the bialgebra axioms on all basis elements, pairs and triples.
    pub fn check_axioms(&self) -> Vec<AxiomFailure> {
        let n = self.dim();
        let mut fails = Vec::new();
        let lab = |i: usize| self.labels[i].clone();
        for a in 0..n {
            if self.mult[0][a] != vec![(a, CycNumber::one())] || self.mult[a][0] != vec![(a, CycNumber::one())] {
                fails.push(AxiomFailure { axiom: "unit".into(), witness: vec![lab(a)] });
            }
            let d = self.delta_at(&self.single(a), 0);
            let left: Tens = d.iter().filter(|(k, _)| k[0] == 0).map(|(k, c)| (vec![k[1]], c.clone())).collect();
            let right: Tens = d.iter().filter(|(k, _)| k[1] == 0).map(|(k, c)| (vec![k[0]], c.clone())).collect();
            if left != self.single(a) || right != self.single(a) {
                fails.push(AxiomFailure { axiom: "counit".into(), witness: vec![lab(a)] });
            }
            if self.delta_at(&d, 0) != self.delta_at(&d, 1) {
                fails.push(AxiomFailure { axiom: "coassociativity".into(), witness: vec![lab(a)] });
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let results = par::map(&pairs, |&(a, b)| {
            let mut f = Vec::new();
            let lhs = self.delta_at(&self.sparse_tens(&self.mult[a][b]), 0);
            let rhs = self.tensor_product(&self.iterated_delta(a, 2), &self.iterated_delta(b, 2));
            if lhs != rhs {
                f.push(AxiomFailure { axiom: "compatibility".into(), witness: vec![lab(a), lab(b)] });
            }
            for c in 0..n {
                let mut t = Tens::new();
                t.insert(vec![a, b, c], CycNumber::one());
                if self.mult_at(&self.mult_at(&t, 0), 0) != self.mult_at(&self.mult_at(&t, 1), 0) {
                    f.push(AxiomFailure { axiom: "associativity".into(), witness: vec![lab(a), lab(b), lab(c)] });
                }
            }
            f
        });
        fails.extend(results.into_iter().flatten());
        fails
    }
}

fn word_label(space: &BraidedSpace, w: &[u8]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&l| space.labels()[l as usize].clone()).collect::<Vec<_>>().join("")
}

fn tuples(range: std::ops::Range<usize>, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                range.clone().map(move |i| {
                    let mut n = t.clone();
                    n.push(i);
                    n
                })
            })
            .collect();
    }
    out
}

/// Degree-`ell` morphisms `(B+)^{(x)p} -> (B+)^{(x)q}`, coordinatized by basis pairs.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub p: usize,
    pub q: usize,
    pub ell: i64,
    pub coords: Vec<(Vec<usize>, Vec<usize>)>,
    by_input: HashMap<Vec<usize>, Vec<(usize, Vec<usize>)>>,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    fn at(&self, input: &[usize]) -> &[(usize, Vec<usize>)] {
        self.by_input.get(input).map_or(&[], |v| v.as_slice())
    }
}

type RowKey = (usize, usize, Vec<usize>, Vec<usize>);

/// Sparse matrix of a differential; rows are `(p, q, input, output)` evaluations.
#[derive(Clone, Debug, Default)]
pub struct Differential {
    pub rows: HashMap<RowKey, usize>,
    pub ncols: usize,
    pub entries: Vec<(usize, usize, CycNumber)>,
}

impl Differential {
    fn push(&mut self, key: RowKey, col: usize, v: CycNumber) {
        if v.is_zero() {
            return;
        }
        let n = self.rows.len();
        let r = *self.rows.entry(key).or_insert(n);
        self.entries.push((r, col, v));
    }

    pub fn columns(&self) -> Vec<SparseVec<CycNumber>> {
        let mut cols: Vec<Vec<(usize, CycNumber)>> = vec![Vec::new(); self.ncols];
        for (r, c, v) in &self.entries {
            cols[*c].push((*r, v.clone()));
        }
        cols.into_iter().map(from_entries).collect()
    }

    pub fn row_vectors(&self) -> Vec<SparseVec<CycNumber>> {
        let mut rows: Vec<Vec<(usize, CycNumber)>> = vec![Vec::new(); self.rows.len()];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows.into_iter().map(from_entries).collect()
    }

    pub fn rank(&self) -> usize {
        rank(self.columns())
    }

    pub fn kernel(&self) -> Vec<SparseVec<CycNumber>> {
        nullspace(self.row_vectors(), self.ncols)
    }
}

/// Direct sum `Tot_n` of the edge-free bicomplex in a fixed degree.
#[derive(Clone, Debug)]
pub struct TotalSpace {
    pub n: usize,
    pub ell: i64,
    pub parts: Vec<CochainSpace>,
    pub offsets: Vec<usize>,
}

impl TotalSpace {
    pub fn dim(&self) -> usize {
        self.parts.iter().map(|c| c.dim()).sum()
    }

    fn index(&self) -> HashMap<RowKey, usize> {
        let mut m = HashMap::new();
        for (c, off) in self.parts.iter().zip(&self.offsets) {
            for (i, (a, b)) in c.coords.iter().enumerate() {
                m.insert((c.p, c.q, a.clone(), b.clone()), off + i);
            }
        }
        m
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct H2Dims {
    pub degree: i64,
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

/// A cochain `(f, g)` in `Tot_3` with `f: B+ (x) B+ -> B+`, `g: B+ -> B+ (x) B+`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CochainPair {
    pub ell: i64,
    /// `((a, b), c, coefficient of b_c in f(b_a, b_b))`
    pub f: Vec<((usize, usize), usize, CycNumber)>,
    /// `(c, (a, b), coefficient of b_a (x) b_b in g(b_c))`
    pub g: Vec<(usize, (usize, usize), CycNumber)>,
}

impl CochainPair {
    pub fn zero(ell: i64) -> Self {
        CochainPair { ell, f: Vec::new(), g: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().all(|x| x.2.is_zero()) && self.g.iter().all(|x| x.2.is_zero())
    }
}

impl GradedBialgebraData {
    pub fn cochains(&self, p: usize, q: usize, ell: i64) -> CochainSpace {
        let mut targets: HashMap<(usize, Vec<i64>), Vec<Vec<usize>>> = HashMap::new();
        for t in tuples(self.plus(), q) {
            targets.entry((self.tuple_degree(&t), self.tuple_key(&t))).or_default().push(t);
        }
        let mut coords = Vec::new();
        let mut by_input: HashMap<Vec<usize>, Vec<(usize, Vec<usize>)>> = HashMap::new();
        for a in tuples(self.plus(), p) {
            let d = self.tuple_degree(&a) as i64 + ell;
            if d < 0 {
                continue;
            }
            if let Some(ts) = targets.get(&(d as usize, self.tuple_key(&a))) {
                for t in ts {
                    by_input.entry(a.clone()).or_default().push((coords.len(), t.clone()));
                    coords.push((a.clone(), t.clone()));
                }
            }
        }
        CochainSpace { p, q, ell, coords, by_input }
    }

    pub fn total_space(&self, n: usize, ell: i64) -> TotalSpace {
        let mut parts = Vec::new();
        let mut offsets = Vec::new();
        let mut off = 0;
        for p in (1..n).rev() {
            let c = self.cochains(p, n - p, ell);
            offsets.push(off);
            off += c.dim();
            parts.push(c);
        }
        TotalSpace { n, ell, parts, offsets }
    }

    fn left_action(&self, a: usize, y: &[usize]) -> Tens {
        let mut t = Tens::new();
        t.insert(y.to_vec(), CycNumber::one());
        self.tensor_product(&self.iterated_delta(a, y.len()), &t)
    }

    fn right_action(&self, y: &[usize], a: usize) -> Tens {
        let mut t = Tens::new();
        t.insert(y.to_vec(), CycNumber::one());
        self.tensor_product(&t, &self.iterated_delta(a, y.len()))
    }

    /// Entries of the Hochschild differential of `c`, with columns shifted by `offset`.
    fn hochschild_into(&self, c: &CochainSpace, offset: usize, sign: &CycNumber, out: &mut Differential) {
        let (p, q) = (c.p, c.q);
        let inputs = tuples(self.plus(), p + 1);
        let rows = par::map(&inputs, |a| {
            let mut e: Vec<(Vec<usize>, usize, CycNumber)> = Vec::new();
            for (col, y) in c.at(&a[1..]) {
                for (k, v) in self.left_action(a[0], y) {
                    e.push((k, *col, v));
                }
            }
            for i in 1..=p {
                let s = if i % 2 == 0 { CycNumber::one() } else { CycNumber::integer(-1) };
                for (z, lam) in &self.mult[a[i - 1]][a[i]] {
                    if *z == 0 {
                        continue;
                    }
                    let mut b = a[..i - 1].to_vec();
                    b.push(*z);
                    b.extend_from_slice(&a[i + 1..]);
                    for (col, y) in c.at(&b) {
                        e.push((y.clone(), *col, s.mul(lam)));
                    }
                }
            }
            let s = if (p + 1) % 2 == 0 { CycNumber::one() } else { CycNumber::integer(-1) };
            for (col, y) in c.at(&a[..p]) {
                for (k, v) in self.right_action(y, a[p]) {
                    e.push((k, *col, s.mul(&v)));
                }
            }
            e
        });
        for (a, e) in inputs.into_iter().zip(rows) {
            for (k, col, v) in e {
                out.push((p + 1, q, a.clone(), k), offset + col, v.mul(sign));
            }
        }
    }

    /// Entries of the Cartier differential of `c`.
    fn cartier_into(&self, c: &CochainSpace, offset: usize, sign: &CycNumber, out: &mut Differential) {
        let (p, q) = (c.p, c.q);
        let inputs = tuples(self.plus(), p);
        let rows = par::map(&inputs, |a| {
            let mut e: Vec<(Vec<usize>, usize, CycNumber)> = Vec::new();
            for (k, lam) in self.left_coaction(a) {
                if k[1..].contains(&0) {
                    continue;
                }
                for (col, y) in c.at(&k[1..]) {
                    let mut t = vec![k[0]];
                    t.extend_from_slice(y);
                    e.push((t, *col, lam.clone()));
                }
            }
            for (col, y) in c.at(a) {
                let mut t = Tens::new();
                t.insert(y.clone(), CycNumber::one());
                for j in 1..=q {
                    let s = if j % 2 == 0 { CycNumber::one() } else { CycNumber::integer(-1) };
                    for (k, v) in self.delta_at(&t, j - 1) {
                        e.push((k, *col, s.mul(&v)));
                    }
                }
            }
            let s = if (q + 1) % 2 == 0 { CycNumber::one() } else { CycNumber::integer(-1) };
            for (k, lam) in self.right_coaction(a) {
                if k[..p].contains(&0) {
                    continue;
                }
                for (col, y) in c.at(&k[..p]) {
                    let mut t = y.clone();
                    t.push(k[p]);
                    e.push((t, *col, s.mul(&lam)));
                }
            }
            e
        });
        for (a, e) in inputs.into_iter().zip(rows) {
            for (k, col, v) in e {
                out.push((p, q + 1, a.clone(), k), offset + col, v.mul(sign));
            }
        }
    }

    /// Total differential `Tot_n -> Tot_{n+1}` with the sign trick `d^h + (-1)^p d^c`.
    pub fn total_differential(&self, space: &TotalSpace) -> Differential {
        let mut d = Differential { ncols: space.dim(), ..Default::default() };
        for (c, &off) in space.parts.iter().zip(&space.offsets) {
            self.hochschild_into(c, off, &CycNumber::one(), &mut d);
            let s = if c.p % 2 == 0 { CycNumber::one() } else { CycNumber::integer(-1) };
            self.cartier_into(c, off, &s, &mut d);
        }
        d
    }

    fn act_tuple(&self, g: usize, a: &[usize]) -> Tens {
        let mut t = Tens::new();
        t.insert(Vec::new(), CycNumber::one());
        for &x in a {
            let mut n = Tens::new();
            for (k, c) in &t {
                for (y, v) in &self.action[g][x] {
                    let mut nk = k.clone();
                    nk.push(*y);
                    tens_add(&mut n, nk, c.mul(v));
                }
            }
            t = n;
        }
        t
    }

    /// Linear conditions `f(g . a) = g . f(a)`; empty unless the grading is `GroupDegree`.
    pub fn equivariance(&self, space: &TotalSpace) -> Differential {
        let mut e = Differential { ncols: space.dim(), ..Default::default() };
        if self.grading != Grading::GroupDegree {
            return e;
        }
        for (part, (c, &off)) in space.parts.iter().zip(&space.offsets).enumerate() {
            for g in 0..self.action.len() {
                for a in tuples(self.plus(), c.p) {
                    for (a2, lam) in self.act_tuple(g, &a) {
                        for (col, y) in c.at(&a2) {
                            e.push((g, part, a.clone(), y.clone()), off + col, lam.clone());
                        }
                    }
                    for (col, y) in c.at(&a) {
                        for (y2, lam) in self.act_tuple(g, y) {
                            e.push((g, part, a.clone(), y2), off + col, lam.neg());
                        }
                    }
                }
            }
        }
        e
    }

    /// Basis of the morphisms inside `Tot_n`; `None` means every coordinate vector is one.
    fn morphism_basis(&self, space: &TotalSpace) -> Result<Option<Vec<SparseVec<CycNumber>>>> {
        match self.grading {
            Grading::Plain => Err(Error::Precondition("cochains must be morphisms; choose a grading other than plain".into())),
            Grading::GroupDegree => Ok(Some(self.equivariance(space).kernel())),
            _ => Ok(None),
        }
    }

    /// `dim Ẑ^2_ell`, `dim B̂^2_ell` and `dim Ĥ^2_ell`.
    pub fn truncated_h2(&self, ell: i64) -> Result<H2Dims> {
        let c2 = self.total_space(2, ell);
        let c3 = self.total_space(3, ell);
        let d2 = self.total_differential(&c2);
        let d3 = self.total_differential(&c3);
        let coboundaries = match self.morphism_basis(&c2)? {
            None => d2.rank(),
            Some(basis) => {
                let cols = d2.columns();
                rank(basis.iter().map(|v| image(&cols, v)))
            }
        };
        let mut rows = d3.row_vectors();
        rows.extend(self.equivariance(&c3).row_vectors());
        let morphisms = match self.morphism_basis(&c3)? {
            None => c3.dim(),
            Some(b) => b.len(),
        };
        let cocycles = c3.dim() - rank(rows);
        Ok(H2Dims { degree: ell, cochains: morphisms, cocycles, coboundaries, cohomology: cocycles - coboundaries })
    }

    /// Basis of `Ẑ^2_ell` as cochain pairs.
    pub fn cocycle_basis(&self, ell: i64) -> Result<Vec<CochainPair>> {
        let c3 = self.total_space(3, ell);
        self.morphism_basis(&c3)?;
        let mut rows = self.total_differential(&c3).row_vectors();
        rows.extend(self.equivariance(&c3).row_vectors());
        Ok(nullspace(rows, c3.dim()).iter().map(|v| self.pair_from_vector(&c3, v)).collect())
    }

    /// `(h, -h)`-coboundary `(d^h h, -d^c h)` of `h: B+ -> B+` given as `(input, output, coefficient)`.
    pub fn coboundary(&self, ell: i64, h: &[(usize, usize, CycNumber)]) -> Result<CochainPair> {
        let c2 = self.total_space(2, ell);
        let c3 = self.total_space(3, ell);
        let index = c2.index();
        let mut v = Vec::new();
        for (a, b, x) in h {
            let i = index
                .get(&(1, 1, vec![*a], vec![*b]))
                .ok_or_else(|| Error::Precondition(format!("h({a}) -> {b} is not an admissible entry")))?;
            v.push((*i, x.clone()));
        }
        let d2 = self.total_differential(&c2);
        let w = image(&d2.columns(), &from_entries(v));
        let back: HashMap<usize, &RowKey> = d2.rows.iter().map(|(k, r)| (*r, k)).collect();
        let idx3 = c3.index();
        let mut out = Vec::new();
        for (r, x) in w {
            let k = back[&r];
            let c = idx3.get(k).ok_or_else(|| Error::Axiom("coboundary leaves the normalized complex".into()))?;
            out.push((*c, x));
        }
        Ok(self.pair_from_vector(&c3, &from_entries(out)))
    }

    fn pair_from_vector(&self, c3: &TotalSpace, v: &SparseVec<CycNumber>) -> CochainPair {
        let mut pair = CochainPair::zero(c3.ell);
        for (i, x) in v {
            let (part, local) = locate(&c3.offsets, *i);
            let (a, b) = &c3.parts[part].coords[local];
            if c3.parts[part].p == 2 {
                pair.f.push(((a[0], a[1]), b[0], x.clone()));
            } else {
                pair.g.push((a[0], (b[0], b[1]), x.clone()));
            }
        }
        pair
    }

    /// Coordinates of a pair in `Tot_3`; fails if it is not a morphism of degree `ell`.
    pub fn pair_to_vector(&self, c3: &TotalSpace, pair: &CochainPair) -> Result<SparseVec<CycNumber>> {
        let index = c3.index();
        let mut entries = Vec::new();
        for ((a, b), c, x) in &pair.f {
            let k = (2, 1, vec![*a, *b], vec![*c]);
            let i = index.get(&k).ok_or_else(|| Error::Precondition(format!("f({a},{b}) -> {c} is not an admissible entry")))?;
            entries.push((*i, x.clone()));
        }
        for (c, (a, b), x) in &pair.g {
            let k = (1, 2, vec![*c], vec![*a, *b]);
            let i = index.get(&k).ok_or_else(|| Error::Precondition(format!("g({c}) -> ({a},{b}) is not an admissible entry")))?;
            entries.push((*i, x.clone()));
        }
        Ok(from_entries(entries))
    }

    /// True when the pair satisfies the three cocycle equations.
    pub fn is_cocycle(&self, pair: &CochainPair) -> Result<bool> {
        let c3 = self.total_space(3, pair.ell);
        let v = self.pair_to_vector(&c3, pair)?;
        Ok(image(&self.total_differential(&c3).columns(), &v).is_empty())
    }

    /// Checks `d_{n+1} d_n = 0` on the morphisms in `Tot_n` of degree `ell`;
    /// also fails if `d_n` leaves the normalized, category-constrained subcomplex.
    pub fn check_dd(&self, n: usize, ell: i64) -> Result<DdCheck> {
        let cn = self.total_space(n, ell);
        let cn1 = self.total_space(n + 1, ell);
        let basis = self.morphism_basis(&cn)?.unwrap_or_else(|| (0..cn.dim()).map(|i| vec![(i, CycNumber::one())]).collect());
        let dn = self.total_differential(&cn);
        let dn1 = self.total_differential(&cn1);
        let index = cn1.index();
        let row_to_col: HashMap<usize, usize> = dn.rows.iter().filter_map(|(k, &r)| index.get(k).map(|&c| (r, c))).collect();
        let cols = dn.columns();
        let cols1 = dn1.columns();
        let mut escaped = 0;
        let mut nonzero = 0;
        for v in &basis {
            let w = image(&cols, v);
            let mut mapped = Vec::new();
            for (r, x) in w {
                match row_to_col.get(&r) {
                    Some(&c) => mapped.push((c, x)),
                    None => escaped += 1,
                }
            }
            if !image(&cols1, &from_entries(mapped)).is_empty() {
                nonzero += 1;
            }
        }
        Ok(DdCheck { n, ell, dim: basis.len(), nonzero_columns: nonzero, escaped_entries: escaped })
    }
}

/// `sum_i v_i * cols[i]`.
fn image(cols: &[SparseVec<CycNumber>], v: &SparseVec<CycNumber>) -> SparseVec<CycNumber> {
    let mut acc: HashMap<usize, CycNumber> = HashMap::new();
    for (i, x) in v {
        for (r, y) in &cols[*i] {
            let e = acc.entry(*r).or_insert_with(CycNumber::zero);
            *e = e.add(&x.mul(y));
        }
    }
    from_entries(acc.into_iter().filter(|(_, x)| !x.is_zero()))
}

fn locate(offsets: &[usize], i: usize) -> (usize, usize) {
    let part = offsets.iter().rposition(|&o| o <= i).expect("offset");
    (part, i - offsets[part])
}

#[derive(Clone, Debug, Serialize)]
pub struct DdCheck {
    pub n: usize,
    pub ell: i64,
    pub dim: usize,
    pub nonzero_columns: usize,
    pub escaped_entries: usize,
}

impl DdCheck {
    pub fn holds(&self) -> bool {
        self.nonzero_columns == 0 && self.escaped_entries == 0
    }
}

/// A homogeneous object `U` with trivial `B`-action, given by the keys of its basis.
#[derive(Clone, Debug, Serialize)]
pub struct TrivialModule {
    pub keys: Vec<Vec<i64>>,
}

impl TrivialModule {
    /// The unit object `k`.
    pub fn unit(b: &GradedBialgebraData) -> Self {
        TrivialModule { keys: vec![b.keys[0].clone()] }
    }

    pub fn zero() -> Self {
        TrivialModule { keys: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EpsilonDims {
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

/// One homogeneous block of `M = ker(B+ (x)_B B+ -> B+)`.
#[derive(Clone, Debug, Serialize)]
pub struct MBlock {
    pub degree: usize,
    pub key: Vec<i64>,
    pub via_structure: usize,
    pub via_ideal: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MReport {
    pub blocks: Vec<MBlock>,
}

impl MReport {
    pub fn agree(&self) -> bool {
        self.blocks.iter().all(|b| b.via_structure == b.via_ideal)
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.via_structure).sum()
    }

    pub fn dims_by_degree(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b.degree).or_insert(0) += b.via_structure;
        }
        m
    }

    /// `dim Hom(M, U)` in the homogeneous category.
    pub fn hom_dim(&self, u: &TrivialModule) -> usize {
        self.blocks.iter().map(|b| b.via_structure * u.keys.iter().filter(|k| **k == b.key).count()).sum()
    }
}

impl GradedBialgebraData {
    /// `Z^2`, `B^2`, `H^2` of `epsilon`-cochains `B+ (x) B+ -> U`.
    pub fn epsilon_h2(&self, u: &TrivialModule) -> EpsilonDims {
        let plus: Vec<usize> = self.plus().collect();
        let mut col: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for &a in &plus {
            for &b in &plus {
                let k = self.tuple_key(&[a, b]);
                for (i, uk) in u.keys.iter().enumerate() {
                    if *uk == k {
                        let n = col.len();
                        col.insert((a, b, i), n);
                    }
                }
            }
        }
        let triples: Vec<(usize, usize, usize)> = tuples(self.plus(), 3).into_iter().map(|t| (t[0], t[1], t[2])).collect();
        let eqs: Vec<Vec<SparseVec<CycNumber>>> = par::map(&triples, |&(x, y, z)| {
            (0..u.dim())
                .map(|i| {
                    let mut e = Vec::new();
                    for (w, c) in &self.mult[x][y] {
                        if let Some(&k) = col.get(&(*w, z, i)) {
                            e.push((k, c.clone()));
                        }
                    }
                    for (w, c) in &self.mult[y][z] {
                        if let Some(&k) = col.get(&(x, *w, i)) {
                            e.push((k, c.neg()));
                        }
                    }
                    from_entries(e)
                })
                .collect()
        });
        let n = col.len();
        let cocycles = n - rank(eqs.into_iter().flatten());
        let mut bounds = Vec::new();
        for &t in &plus {
            for (i, uk) in u.keys.iter().enumerate() {
                if *uk != self.keys[t] {
                    continue;
                }
                let mut e = Vec::new();
                for &x in &plus {
                    for &y in &plus {
                        for (w, c) in &self.mult[x][y] {
                            if *w == t {
                                if let Some(&k) = col.get(&(x, y, i)) {
                                    e.push((k, c.clone()));
                                }
                            }
                        }
                    }
                }
                bounds.push(from_entries(e));
            }
        }
        let coboundaries = rank(bounds);
        EpsilonDims { cochains: n, cocycles, coboundaries, cohomology: cocycles - coboundaries }
    }

    /// `M` per homogeneous block, from the structure constants and from `I / (T+ I + I T+)`.
    pub fn kernel_m(&self) -> Result<MReport> {
        let q = self.quotient.as_ref().ok_or_else(|| Error::Precondition("no presentation attached".into()))?;
        let theta = q.space().rank();
        let letter_index: Vec<usize> = (0..theta as u8)
            .map(|l| self.words.iter().position(|w| w.as_slice() == [l]).ok_or_else(|| Error::Precondition("generator vanishes".into())))
            .collect::<Result<_>>()?;
        let word_key = |w: &[u8]| -> Vec<i64> {
            let t: Vec<usize> = w.iter().map(|&l| letter_index[l as usize]).collect();
            self.tuple_key(&t)
        };

        let plus: Vec<usize> = self.plus().collect();
        let mut pair_blocks: BTreeMap<(usize, Vec<i64>), Vec<(usize, usize)>> = BTreeMap::new();
        for &a in &plus {
            for &b in &plus {
                pair_blocks.entry((self.tuple_degree(&[a, b]), self.tuple_key(&[a, b]))).or_default().push((a, b));
            }
        }
        let mut structure: BTreeMap<(usize, Vec<i64>), usize> = BTreeMap::new();
        for (key, pairs) in &pair_blocks {
            let pos: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let mut rels = Vec::new();
            for &x in &plus {
                for &y in &plus {
                    for &z in &plus {
                        if self.tuple_degree(&[x, y, z]) != key.0 {
                            continue;
                        }
                        let mut e = Vec::new();
                        for (w, c) in &self.mult[x][y] {
                            if let Some(&i) = pos.get(&(*w, z)) {
                                e.push((i, c.clone()));
                            }
                        }
                        for (w, c) in &self.mult[y][z] {
                            if let Some(&i) = pos.get(&(x, *w)) {
                                e.push((i, c.neg()));
                            }
                        }
                        rels.push(from_entries(e));
                    }
                }
            }
            let mut images: Vec<Vec<(usize, CycNumber)>> = vec![Vec::new(); self.dim()];
            for (i, &(a, b)) in pairs.iter().enumerate() {
                for (w, c) in &self.mult[a][b] {
                    images[*w].push((i, c.clone()));
                }
            }
            let r = rank(rels);
            let m = rank(images.into_iter().map(from_entries));
            let dim = pairs.len() - r - m;
            if dim > 0 {
                structure.insert(key.clone(), dim);
            }
        }

        let gb = q.groebner_basis();
        let top = self.top_degree();
        let mut ideal: BTreeMap<(usize, Vec<i64>), usize> = BTreeMap::new();
        let mut prev: Vec<TensorElement> = Vec::new();
        for d in 1..=top + 1 {
            let mut blocks: BTreeMap<Vec<i64>, Vec<Word>> = BTreeMap::new();
            for w in crate::braided::all_words(theta, d) {
                blocks.entry(word_key(&w)).or_default().push(w);
            }
            let mut current = Vec::new();
            for (key, words) in blocks {
                let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
                let to_vec = |e: &TensorElement| from_entries(e.terms().filter_map(|(w, c)| index.get(w).map(|&i| (i, c.clone()))));
                let gens: Vec<TensorElement> = words
                    .iter()
                    .map(|w| {
                        let e = TensorElement::word(w.clone());
                        if d > top {
                            e
                        } else {
                            e.sub(&gb.reduce(&e))
                        }
                    })
                    .filter(|e| !e.is_zero())
                    .collect();
                let dim_i = rank(gens.iter().map(to_vec));
                let mut products = Vec::new();
                for r in &prev {
                    for l in 0..theta {
                        let x = TensorElement::letter(l);
                        for e in [x.mul(r), r.mul(&x)] {
                            if word_key(e.terms().next().expect("nonzero").0) == key {
                                products.push(to_vec(&e));
                            }
                        }
                    }
                }
                let dim_p = rank(products);
                if dim_i > dim_p {
                    ideal.insert((d, key), dim_i - dim_p);
                }
                current.extend(gens);
            }
            prev = current;
        }

        let keys: std::collections::BTreeSet<(usize, Vec<i64>)> = structure.keys().chain(ideal.keys()).cloned().collect();
        let blocks = keys
            .into_iter()
            .map(|k| MBlock {
                via_structure: structure.get(&k).copied().unwrap_or(0),
                via_ideal: ideal.get(&k).copied().unwrap_or(0),
                degree: k.0,
                key: k.1,
            })
            .collect();
        Ok(MReport { blocks })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingLemmaReport {
    pub r: usize,
    /// `None` when the hypotheses of that part do not hold for this pair.
    pub part1: Option<bool>,
    pub part2: Option<bool>,
    pub part3: Option<bool>,
}

impl VanishingLemmaReport {
    pub fn holds(&self) -> bool {
        [self.part1, self.part2, self.part3].iter().all(|p| p.unwrap_or(true))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformationReport {
    pub r: usize,
    pub failures: Vec<AxiomFailure>,
}

impl DeformationReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Linear combination of `t^k (x)` basis tuples, truncated above `t^r`.
type TTens = BTreeMap<(usize, Vec<usize>), CycNumber>;

fn ttens_add(t: &mut TTens, k: (usize, Vec<usize>), c: CycNumber) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(k).or_insert_with(CycNumber::zero);
    *e = e.add(&c);
}

fn ttens_clean(t: TTens) -> TTens {
    t.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

struct Deformed<'a> {
    b: &'a GradedBialgebraData,
    r: usize,
    f: HashMap<(usize, usize), Vec<(usize, CycNumber)>>,
    g: HashMap<usize, Vec<(usize, usize, CycNumber)>>,
}

impl Deformed<'_> {
    fn mult_at(&self, t: &TTens, pos: usize) -> TTens {
        let mut out = TTens::new();
        for ((s, k), c) in t {
            let (x, y) = (k[pos], k[pos + 1]);
            let splice = |z: usize| {
                let mut nk = k[..pos].to_vec();
                nk.push(z);
                nk.extend_from_slice(&k[pos + 2..]);
                nk
            };
            for (z, v) in self.b.mult(x, y) {
                ttens_add(&mut out, (*s, splice(*z)), c.mul(v));
            }
            if s + self.r <= self.r {
                for (z, v) in self.f.get(&(x, y)).map_or(&[][..], |v| v.as_slice()) {
                    ttens_add(&mut out, (s + self.r, splice(*z)), c.mul(v));
                }
            }
        }
        ttens_clean(out)
    }

    fn delta_at(&self, t: &TTens, pos: usize) -> TTens {
        let mut out = TTens::new();
        for ((s, k), c) in t {
            let splice = |a: usize, b: usize| {
                let mut nk = k[..pos].to_vec();
                nk.push(a);
                nk.push(b);
                nk.extend_from_slice(&k[pos + 1..]);
                nk
            };
            for (a, b, v) in self.b.comult(k[pos]) {
                ttens_add(&mut out, (*s, splice(*a, *b)), c.mul(v));
            }
            if s + self.r <= self.r {
                for (a, b, v) in self.g.get(&k[pos]).map_or(&[][..], |v| v.as_slice()) {
                    ttens_add(&mut out, (s + self.r, splice(*a, *b)), c.mul(v));
                }
            }
        }
        ttens_clean(out)
    }

    fn braid_at(&self, t: &TTens, pos: usize) -> TTens {
        let mut out = TTens::new();
        for ((s, k), c) in t {
            for (a, b, v) in self.b.braid(k[pos], k[pos + 1]) {
                let mut nk = k.clone();
                nk[pos] = *a;
                nk[pos + 1] = *b;
                ttens_add(&mut out, (*s, nk), c.mul(v));
            }
        }
        ttens_clean(out)
    }

    fn unit(k: Vec<usize>) -> TTens {
        let mut t = TTens::new();
        t.insert((0, k), CycNumber::one());
        t
    }
}

impl GradedBialgebraData {
    /// Checks the three parts of the vanishing lemma for `g` on a cocycle, at level `r`.
    pub fn check_vanishing_lemma(&self, pair: &CochainPair, r: usize) -> Result<VanishingLemmaReport> {
        if !self.is_cocycle(pair)? {
            return Err(Error::Precondition("pair is not a cocycle".into()));
        }
        let f_vanishes = |pred: &dyn Fn(usize) -> bool| {
            pair.f.iter().all(|((a, b), _, x)| x.is_zero() || !pred(self.degree[*a] + self.degree[*b]))
        };
        let g_vanishes = |pred: &dyn Fn(usize) -> bool| pair.g.iter().all(|(c, _, x)| x.is_zero() || !pred(self.degree[*c]));
        let neg = pair.ell < 0;
        let f_le = f_vanishes(&|d| d <= r);
        let part1 = (r > 1 && f_le && g_vanishes(&|d| d < r)).then(|| g_vanishes(&|d| d == r));
        let part2 = (neg && f_le).then(|| g_vanishes(&|d| d <= r));
        let part3 = (neg && f_vanishes(&|_| true)).then(|| g_vanishes(&|_| true));
        Ok(VanishingLemmaReport { r, part1, part2, part3 })
    }

    /// `(m + t^r f, Delta + t^r g)` over `k[t]/(t^{r+1})` with `r = -ell`, checked on all basis elements.
    pub fn first_order_deformation(&self, pair: &CochainPair) -> Result<DeformationReport> {
        if pair.ell >= 0 {
            return Err(Error::Precondition(format!("deformation degree must be negative, got {}", pair.ell)));
        }
        let r = (-pair.ell) as usize;
        let mut f: HashMap<(usize, usize), Vec<(usize, CycNumber)>> = HashMap::new();
        for ((a, b), c, x) in &pair.f {
            f.entry((*a, *b)).or_default().push((*c, x.clone()));
        }
        let mut g: HashMap<usize, Vec<(usize, usize, CycNumber)>> = HashMap::new();
        for (c, (a, b), x) in &pair.g {
            g.entry(*c).or_default().push((*a, *b, x.clone()));
        }
        let d = Deformed { b: self, r, f, g };
        let n = self.dim();
        let lab = |i: usize| self.labels[i].clone();
        let mut failures = Vec::new();
        for a in 0..n {
            let da = d.delta_at(&Deformed::unit(vec![a]), 0);
            let counit_l: TTens = da.iter().filter(|((_, k), _)| k[0] == 0).map(|((s, k), c)| ((*s, vec![k[1]]), c.clone())).collect();
            let counit_r: TTens = da.iter().filter(|((_, k), _)| k[1] == 0).map(|((s, k), c)| ((*s, vec![k[0]]), c.clone())).collect();
            if counit_l != Deformed::unit(vec![a]) || counit_r != Deformed::unit(vec![a]) {
                failures.push(AxiomFailure { axiom: "counit".into(), witness: vec![lab(a)] });
            }
            if d.delta_at(&da, 0) != d.delta_at(&da, 1) {
                failures.push(AxiomFailure { axiom: "coassociativity".into(), witness: vec![lab(a)] });
            }
            let u = d.mult_at(&Deformed::unit(vec![0, a]), 0);
            let v = d.mult_at(&Deformed::unit(vec![a, 0]), 0);
            if u != Deformed::unit(vec![a]) || v != Deformed::unit(vec![a]) {
                failures.push(AxiomFailure { axiom: "unit".into(), witness: vec![lab(a)] });
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let found = par::map(&pairs, |&(a, b)| {
            let mut out = Vec::new();
            let ab = Deformed::unit(vec![a, b]);
            let lhs = d.delta_at(&d.mult_at(&ab, 0), 0);
            let mut rhs = d.delta_at(&d.delta_at(&ab, 1), 0);
            rhs = d.braid_at(&rhs, 1);
            rhs = d.mult_at(&d.mult_at(&rhs, 2), 0);
            if lhs != rhs {
                out.push(AxiomFailure { axiom: "compatibility".into(), witness: vec![lab(a), lab(b)] });
            }
            for c in 0..n {
                let t = Deformed::unit(vec![a, b, c]);
                if d.mult_at(&d.mult_at(&t, 0), 0) != d.mult_at(&d.mult_at(&t, 1), 0) {
                    out.push(AxiomFailure { axiom: "associativity".into(), witness: vec![lab(a), lab(b), lab(c)] });
                }
            }
            out
        });
        failures.extend(found.into_iter().flatten());
        Ok(DeformationReport { r, failures })
    }
}
