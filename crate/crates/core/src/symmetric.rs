//! Bicharacters on abelian groups, the Scheunert twist to a sign
//! bicharacter, braided Lie algebras with diagonal symmetric braidings and
//! their universal enveloping algebras.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::braided::{build_diagonal, BraidedSpace};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Scalar};
use crate::linalg::{from_entries, Echelon, SparseVec};
use crate::nichols::Quotient;

/// Elements of `Z^r` reduced modulo the generator orders.
pub type GroupElement = Vec<i64>;

const MAX_WITNESSES: usize = 8;

fn one() -> CycNumber {
    CycNumber::integer(1)
}

fn minus_one() -> CycNumber {
    CycNumber::integer(-1)
}

fn is_sign(x: &CycNumber) -> bool {
    *x == one() || *x == minus_one()
}

/// A bimultiplicative map on a finitely generated abelian group given by its
/// values on generators. `orders[i] == 0` marks a free generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianBicharacter {
    orders: Vec<u64>,
    values: Vec<Vec<CycNumber>>,
}

/// On-disk form: values are cyclotomic literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicharacterFile {
    pub orders: Vec<u64>,
    pub values: Vec<Vec<String>>,
}

impl AbelianBicharacter {
    pub fn new(orders: Vec<u64>, values: Vec<Vec<CycNumber>>) -> Result<Self> {
        let r = orders.len();
        if values.len() != r || values.iter().any(|row| row.len() != r) {
            return Err(Error::Precondition(format!("bicharacter table must be {r}x{r}")));
        }
        for (i, row) in values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    return Err(Error::Precondition(format!("value on (a{}, a{}) is zero", i + 1, j + 1)));
                }
                for &n in [orders[i], orders[j]].iter().filter(|&&n| n > 0) {
                    if !v.pow(n as i64).is_one() {
                        return Err(Error::Precondition(format!(
                            "torsion inconsistency: value {v} on (a{}, a{}) has no n-th power 1 for n = {n}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(AbelianBicharacter { orders, values })
    }

    pub fn free(values: Vec<Vec<CycNumber>>) -> Result<Self> {
        Self::new(vec![0; values.len()], values)
    }

    pub fn from_file(f: &BicharacterFile) -> Result<Self> {
        let mut values = Vec::with_capacity(f.values.len());
        for (i, row) in f.values.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, s) in row.iter().enumerate() {
                r.push(s.parse().map_err(|_| Error::Config {
                    field: format!("values[{i}][{j}]"),
                    message: format!("cannot parse `{s}`"),
                })?);
            }
            values.push(r);
        }
        Self::new(f.orders.clone(), values)
    }

    pub fn to_file(&self) -> BicharacterFile {
        BicharacterFile {
            orders: self.orders.clone(),
            values: self.values.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn values(&self) -> &[Vec<CycNumber>] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> &CycNumber {
        &self.values[i][j]
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = vec![0; self.rank()];
        g[i] = 1;
        g
    }

    pub fn reduce(&self, g: &[i64]) -> GroupElement {
        g.iter().zip(&self.orders).map(|(&x, &n)| if n == 0 { x } else { x.rem_euclid(n as i64) }).collect()
    }

    pub fn add(&self, g: &[i64], h: &[i64]) -> GroupElement {
        let s: Vec<i64> = g.iter().zip(h).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, g: &[i64]) -> GroupElement {
        let s: Vec<i64> = g.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn eval(&self, g: &[i64], h: &[i64]) -> CycNumber {
        let mut acc = one();
        for (i, &a) in g.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in h.iter().enumerate() {
                if b != 0 {
                    acc = acc.mul(&self.values[i][j].pow(a * b));
                }
            }
        }
        acc
    }

    pub fn is_skew(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.values[i][j].mul(&self.values[j][i]).is_one()))
    }

    /// Symmetric, `+-1`-valued and skew: the braiding is a signed flip.
    pub fn is_sign(&self) -> bool {
        self.is_skew()
            && self.values.iter().flatten().all(is_sign)
            && (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.values[i][j] == self.values[j][i]))
    }

    pub fn trivial(orders: Vec<u64>) -> Self {
        let r = orders.len();
        AbelianBicharacter { orders, values: vec![vec![one(); r]; r] }
    }

    /// The pointwise inverse, which is again bimultiplicative.
    pub fn inverse(&self) -> Self {
        AbelianBicharacter {
            orders: self.orders.clone(),
            values: self.values.iter().map(|r| r.iter().map(|v| v.inv()).collect()).collect(),
        }
    }

    /// `beta_sigma(h, k) = sigma(k, h)^-1 beta(h, k) sigma(h, k)`.
    pub fn twisted_by(&self, sigma: &AbelianBicharacter) -> Result<Self> {
        if sigma.orders != self.orders {
            return Err(Error::Precondition("cocycle lives on a different group".into()));
        }
        let r = self.rank();
        let values = (0..r)
            .map(|h| (0..r).map(|k| sigma.values[k][h].inv().mul(&self.values[h][k]).mul(&sigma.values[h][k])).collect())
            .collect();
        Self::new(self.orders.clone(), values)
    }

    /// The right 2-cocycle identity `sigma(h,k) sigma(hk,l) = sigma(k,l) sigma(h,kl)` at one triple.
    pub fn cocycle_identity(&self, h: &[i64], k: &[i64], l: &[i64]) -> bool {
        let lhs = self.eval(h, k).mul(&self.eval(&self.add(h, k), l));
        let rhs = self.eval(k, l).mul(&self.eval(h, &self.add(k, l)));
        lhs == rhs
    }
}

#[derive(Clone, Debug)]
pub struct ScheunertTwist {
    pub sigma: AbelianBicharacter,
    pub twisted: AbelianBicharacter,
}

/// `sigma(a_j, a_k) = 1` for `j <= k`; for `k > j`, `sigma(a_k, a_j)` makes
/// `beta_sigma(a_j, a_k)` equal to `-1` exactly when both generators are odd.
pub fn scheunert_cocycle(beta: &AbelianBicharacter) -> Result<ScheunertTwist> {
    let r = beta.rank();
    for i in 0..r {
        if !is_sign(beta.value(i, i)) {
            return Err(Error::Precondition(format!(
                "diagonal value beta(a{0}, a{0}) = {1} is not +-1",
                i + 1,
                beta.value(i, i)
            )));
        }
    }
    if !beta.is_skew() {
        return Err(Error::Precondition("bicharacter is not skew-symmetric".into()));
    }
    let odd: Vec<bool> = (0..r).map(|i| *beta.value(i, i) == minus_one()).collect();
    let mut values = vec![vec![one(); r]; r];
    for j in 0..r {
        for k in j + 1..r {
            let eps = if odd[j] && odd[k] { minus_one() } else { one() };
            values[k][j] = beta.value(j, k).mul(&eps);
        }
    }
    let sigma = AbelianBicharacter::new(beta.orders.clone(), values)?;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let (ga, gb, gc) = (sigma.generator(a), sigma.generator(b), sigma.generator(c));
                if !sigma.cocycle_identity(&ga, &gb, &gc) {
                    return Err(Error::Axiom(format!("2-cocycle identity fails at (a{}, a{}, a{})", a + 1, b + 1, c + 1)));
                }
            }
        }
    }
    let twisted = beta.twisted_by(&sigma)?;
    if !twisted.is_sign() {
        return Err(Error::Axiom("twisted bicharacter is not a sign bicharacter".into()));
    }
    Ok(ScheunertTwist { sigma, twisted })
}

fn check_homogeneous(
    group: &AbelianBicharacter,
    degrees: &[GroupElement],
    table: &[Vec<SparseVec<CycNumber>>],
    labels: &[String],
) -> Result<()> {
    for (a, row) in table.iter().enumerate() {
        for (b, prod) in row.iter().enumerate() {
            let target = group.add(&degrees[a], &degrees[b]);
            if let Some((k, _)) = prod.iter().find(|(k, _)| group.reduce(&degrees[*k]) != target) {
                return Err(Error::Precondition(format!(
                    "product of {} and {} has a component on {} of the wrong degree",
                    labels[a], labels[b], labels[*k]
                )));
            }
        }
    }
    Ok(())
}

fn bilinear(table: &[Vec<SparseVec<CycNumber>>], u: &SparseVec<CycNumber>, v: &SparseVec<CycNumber>) -> SparseVec<CycNumber> {
    let mut out = Vec::new();
    for (a, x) in u {
        for (b, y) in v {
            let c = x.mul(y);
            out.extend(table[*a][*b].iter().map(|(k, z)| (*k, z.mul(&c))));
        }
    }
    from_entries(out)
}

fn render(labels: &[String], v: &SparseVec<CycNumber>) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|(k, x)| format!("({x}){}", labels[*k])).collect::<Vec<_>>().join(" + ")
}

/// A finite-dimensional algebra with a basis and structure constants.
/// Degrees are optional and only needed for twisting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub labels: Vec<String>,
    pub mult: Vec<Vec<SparseVec<CycNumber>>>,
    pub degrees: Option<Vec<GroupElement>>,
}

impl Algebra {
    pub fn new(labels: Vec<String>, mult: Vec<Vec<SparseVec<CycNumber>>>) -> Result<Self> {
        let n = labels.len();
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition(format!("multiplication table must be {n}x{n}")));
        }
        if mult.iter().flatten().flatten().any(|(k, _)| *k >= n) {
            return Err(Error::Precondition("product refers to a basis element out of range".into()));
        }
        Ok(Algebra { labels, mult, degrees: None })
    }

    /// Attaches degrees; the multiplication must be homogeneous.
    pub fn graded(mut self, group: &AbelianBicharacter, degrees: Vec<GroupElement>) -> Result<Self> {
        if degrees.len() != self.dim() || degrees.iter().any(|g| g.len() != group.rank()) {
            return Err(Error::Precondition("one degree in the group per basis element is required".into()));
        }
        check_homogeneous(group, &degrees, &self.mult, &self.labels)?;
        self.degrees = Some(degrees.iter().map(|g| group.reduce(g)).collect());
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, u: &SparseVec<CycNumber>, v: &SparseVec<CycNumber>) -> SparseVec<CycNumber> {
        bilinear(&self.mult, u, v)
    }

    pub fn associator(&self, a: usize, b: usize, c: usize) -> SparseVec<CycNumber> {
        let ab_c = self.product(&self.mult[a][b], &vec![(c, one())]);
        let a_bc = self.product(&vec![(a, one())], &self.mult[b][c]);
        from_entries(ab_c.into_iter().chain(a_bc.into_iter().map(|(k, x)| (k, x.neg()))))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.associator(a, b, c).is_empty())))
    }

    /// `m_sigma(a, b) = sigma(deg a, deg b) m(a, b)`.
    pub fn twist(&self, group: &AbelianBicharacter, sigma: &AbelianBicharacter) -> Result<Algebra> {
        let degrees = self.degrees.as_ref().ok_or_else(|| Error::Precondition("algebra has no grading".into()))?;
        check_homogeneous(group, degrees, &self.mult, &self.labels)?;
        let mult = twisted_table(&self.mult, degrees, sigma);
        Ok(Algebra { labels: self.labels.clone(), mult, degrees: self.degrees.clone() })
    }
}

fn twisted_table(
    table: &[Vec<SparseVec<CycNumber>>],
    degrees: &[GroupElement],
    sigma: &AbelianBicharacter,
) -> Vec<Vec<SparseVec<CycNumber>>> {
    table
        .iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(|(b, prod)| {
                    let s = sigma.eval(&degrees[a], &degrees[b]);
                    prod.iter().map(|(k, x)| (*k, x.mul(&s))).collect()
                })
                .collect()
        })
        .collect()
}

/// Standalone form of [`Algebra::twist`].
pub fn twist_algebra(a: &Algebra, group: &AbelianBicharacter, sigma: &AbelianBicharacter) -> Result<Algebra> {
    a.twist(group, sigma)
}

/// A Lie object for the diagonal braiding `c(x_i (x) x_j) = q_ij x_j (x) x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedLieData {
    pub labels: Vec<String>,
    pub q: Vec<Vec<CycNumber>>,
    pub bracket: Vec<Vec<SparseVec<CycNumber>>>,
    pub grading: Option<(AbelianBicharacter, Vec<GroupElement>)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub witnesses: Vec<String>,
}

impl AxiomCheck {
    fn new() -> Self {
        AxiomCheck { holds: true, witnesses: Vec::new() }
    }

    fn fail(&mut self, w: String) {
        self.holds = false;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub compat: AxiomCheck,
    pub anticomm: AxiomCheck,
    pub jacobi: AxiomCheck,
}

impl LieReport {
    pub fn holds(&self) -> bool {
        self.compat.holds && self.anticomm.holds && self.jacobi.holds
    }
}

fn check_symmetric(q: &[Vec<CycNumber>]) -> Result<()> {
    let n = q.len();
    for i in 0..n {
        for j in 0..n {
            if q[i][j].is_zero() || !q[i][j].mul(&q[j][i]).is_one() {
                return Err(Error::Precondition(format!(
                    "braiding is not symmetric: q_{0}{1} q_{1}{0} = {2}",
                    i + 1,
                    j + 1,
                    q[i][j].mul(&q[j][i])
                )));
            }
        }
    }
    Ok(())
}

impl BraidedLieData {
    pub fn new(labels: Vec<String>, q: Vec<Vec<CycNumber>>, bracket: Vec<Vec<SparseVec<CycNumber>>>) -> Result<Self> {
        let n = labels.len();
        if q.len() != n || q.iter().any(|r| r.len() != n) || bracket.len() != n || bracket.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition(format!("braiding and bracket tables must be {n}x{n}")));
        }
        if bracket.iter().flatten().flatten().any(|(k, _)| *k >= n) {
            return Err(Error::Precondition("bracket refers to a basis element out of range".into()));
        }
        Ok(BraidedLieData { labels, q, bracket, grading: None })
    }

    /// Braiding `q_ij = beta(deg x_i, deg x_j)`; the bracket must be homogeneous.
    pub fn from_bicharacter(
        labels: Vec<String>,
        beta: &AbelianBicharacter,
        degrees: Vec<GroupElement>,
        bracket: Vec<Vec<SparseVec<CycNumber>>>,
    ) -> Result<Self> {
        if degrees.len() != labels.len() || degrees.iter().any(|g| g.len() != beta.rank()) {
            return Err(Error::Precondition("one degree in the group per basis element is required".into()));
        }
        let degrees: Vec<GroupElement> = degrees.iter().map(|g| beta.reduce(g)).collect();
        let q = degrees.iter().map(|g| degrees.iter().map(|h| beta.eval(g, h)).collect()).collect();
        let mut l = Self::new(labels, q, bracket)?;
        check_homogeneous(beta, &degrees, &l.bracket, &l.labels)?;
        l.grading = Some((beta.clone(), degrees));
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn bracket_of(&self, u: &SparseVec<CycNumber>, v: &SparseVec<CycNumber>) -> SparseVec<CycNumber> {
        bilinear(&self.bracket, u, v)
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().flatten().all(|v| v.is_empty())
    }

    pub fn space(&self) -> Result<BraidedSpace> {
        build_diagonal(self.q.clone())
    }

    /// The same space and braiding with zero bracket.
    pub fn abelianized(&self) -> Self {
        let n = self.dim();
        BraidedLieData { bracket: vec![vec![Vec::new(); n]; n], ..self.clone() }
    }

    /// Twists bracket and braiding by a cocycle on the grading group.
    pub fn twist(&self, sigma: &AbelianBicharacter) -> Result<Self> {
        let (beta, degrees) = self.grading.as_ref().ok_or_else(|| Error::Precondition("Lie data has no grading".into()))?;
        let beta_s = beta.twisted_by(sigma)?;
        let bracket = twisted_table(&self.bracket, degrees, sigma);
        Self::from_bicharacter(self.labels.clone(), &beta_s, degrees.clone(), bracket)
    }

    fn check_compat(&self, report: &mut AxiomCheck) {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &self.bracket[i][j] {
                    for z in 0..n {
                        if self.q[*k][z] != self.q[i][z].mul(&self.q[j][z]) || self.q[z][*k] != self.q[z][i].mul(&self.q[z][j]) {
                            report.fail(format!(
                                "[{}, {}] has a component on {} that braids differently from the pair with {}",
                                self.labels[i], self.labels[j], self.labels[*k], self.labels[z]
                            ));
                        }
                    }
                }
            }
        }
    }

    fn check_anticomm(&self, report: &mut AxiomCheck) {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                // [x_i, x_j] + q_ij [x_j, x_i]
                let v = from_entries(
                    self.bracket[i][j]
                        .iter()
                        .cloned()
                        .chain(self.bracket[j][i].iter().map(|(k, x)| (*k, x.mul(&self.q[i][j])))),
                );
                if !v.is_empty() {
                    report.fail(format!(
                        "[{0}, {1}] + c-term = {2}",
                        self.labels[i],
                        self.labels[j],
                        render(&self.labels, &v)
                    ));
                }
            }
        }
    }

    fn check_jacobi(&self, report: &mut AxiomCheck) {
        let n = self.dim();
        let unit = |a: usize| -> SparseVec<CycNumber> { vec![(a, one())] };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t1 = self.bracket_of(&self.bracket[i][j], &unit(k));
                    let c2 = self.q[j][k].mul(&self.q[i][k]);
                    let t2 = self.bracket_of(&self.bracket[k][i], &unit(j));
                    let c3 = self.q[i][k].mul(&self.q[i][j]).mul(&self.q[j][k]).mul(&self.q[k][j]);
                    let t3 = self.bracket_of(&self.bracket[j][k], &unit(i));
                    let v = from_entries(
                        t1.into_iter()
                            .chain(t2.into_iter().map(|(a, x)| (a, x.mul(&c2))))
                            .chain(t3.into_iter().map(|(a, x)| (a, x.mul(&c3)))),
                    );
                    if !v.is_empty() {
                        report.fail(format!(
                            "Jacobi sum on ({}, {}, {}) = {}",
                            self.labels[i],
                            self.labels[j],
                            self.labels[k],
                            render(&self.labels, &v)
                        ));
                    }
                }
            }
        }
    }
}

/// Evaluates compatibility with `c`, braided anticommutativity and the
/// braided Jacobi identity on all basis pairs and triples.
pub fn check_braided_lie(l: &BraidedLieData) -> Result<LieReport> {
    check_symmetric(&l.q)?;
    let mut report = LieReport { compat: AxiomCheck::new(), anticomm: AxiomCheck::new(), jacobi: AxiomCheck::new() };
    l.check_compat(&mut report.compat);
    l.check_anticomm(&mut report.anticomm);
    l.check_jacobi(&mut report.jacobi);
    Ok(report)
}

/// `[a, b] = ab - q_ab ba` on an associative algebra whose multiplication
/// commutes with the diagonal symmetric braiding `q`.
pub fn braided_commutator(a: &Algebra, q: &[Vec<CycNumber>]) -> Result<BraidedLieData> {
    let n = a.dim();
    if q.len() != n || q.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition(format!("braiding table must be {n}x{n}")));
    }
    check_symmetric(q)?;
    if !a.is_associative() {
        return Err(Error::Precondition("algebra is not associative".into()));
    }
    for i in 0..n {
        for j in 0..n {
            for (k, _) in &a.mult[i][j] {
                for z in 0..n {
                    if q[*k][z] != q[i][z].mul(&q[j][z]) || q[z][*k] != q[z][i].mul(&q[z][j]) {
                        return Err(Error::Precondition(format!(
                            "multiplication does not commute with the braiding: {}{} has a component on {} and fails against {}",
                            a.labels[i], a.labels[j], a.labels[*k], a.labels[z]
                        )));
                    }
                }
            }
        }
    }
    let bracket = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| from_entries(a.mult[i][j].iter().cloned().chain(a.mult[j][i].iter().map(|(k, x)| (*k, x.mul(&q[i][j]).neg())))))
                .collect()
        })
        .collect();
    BraidedLieData::new(a.labels.clone(), q.to_vec(), bracket)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeDims {
    /// `dim F_d` for `d = 0..=max_degree`.
    pub filtered: Vec<usize>,
    /// `dim F_d / F_{d-1}`.
    pub graded: Vec<usize>,
    /// Graded dimensions of the Nichols algebra of `(L, c)`.
    pub nichols: Vec<usize>,
    /// The filtered dimensions did not change when the ideal was saturated one degree further.
    pub stable: bool,
}

impl EnvelopeDims {
    pub fn matches_nichols(&self) -> bool {
        self.graded == self.nichols
    }
}

/// Largest number of tensor words an envelope computation may index.
pub const ENVELOPE_WORD_BUDGET: usize = 400_000;

/// Filtered dimensions of `U_c(L) = T(L) / (x y - c(x y) - [x, y])`.
///
/// The ideal is inhomogeneous, so `I` meets `T(L)_{<=d}` in more than the
/// span of the generators `u r v` of total degree `<= d`. The span is taken
/// up to degree `max_degree + 2`, columns are ordered by decreasing length,
/// and the echelon rows whose pivot has length `<= d` span the part of it
/// inside `T(L)_{<=d}`.
pub fn enveloping_dims(l: &BraidedLieData, max_degree: usize) -> Result<EnvelopeDims> {
    let report = check_braided_lie(l)?;
    if !report.holds() {
        return Err(Error::Precondition("not a braided Lie algebra".into()));
    }
    let n = l.dim();
    let top = max_degree + 2;
    let mut words_by_len: Vec<Vec<Vec<u8>>> = vec![vec![Vec::new()]];
    let mut total = 1usize;
    for len in 1..=top {
        let count = words_by_len[len - 1].len().saturating_mul(n);
        total = total.saturating_add(count);
        if total > ENVELOPE_WORD_BUDGET {
            return Err(Error::Budget(format!("T(L) up to degree {top} has more than {ENVELOPE_WORD_BUDGET} words")));
        }
        let next = words_by_len[len - 1]
            .iter()
            .flat_map(|w| {
                (0..n as u8).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        words_by_len.push(next);
    }
    let mut index: HashMap<Vec<u8>, usize> = HashMap::with_capacity(total);
    let mut next = 0;
    for len in (0..=top).rev() {
        for w in &words_by_len[len] {
            index.insert(w.clone(), next);
            next += 1;
        }
    }
    // columns of length <= d are the last prefix[d] ones
    let mut prefix = vec![0usize; top + 1];
    let mut acc = 0;
    for d in 0..=top {
        acc += words_by_len[d].len();
        prefix[d] = acc;
    }
    let column_len = |c: usize| -> usize {
        let from_end = total - 1 - c;
        prefix.iter().position(|&p| from_end < p).expect("column in range")
    };

    let relation = |i: usize, j: usize| -> Vec<(Vec<u8>, CycNumber)> {
        let mut r = vec![(vec![i as u8, j as u8], one()), (vec![j as u8, i as u8], l.q[i][j].neg())];
        r.extend(l.bracket[i][j].iter().map(|(k, x)| (vec![*k as u8], x.neg())));
        r
    };
    let relations: Vec<Vec<(Vec<u8>, CycNumber)>> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| relation(i, j)).collect();

    let mut ech: Echelon<CycNumber> = Echelon::new();
    let insert_layer = |ech: &mut Echelon<CycNumber>, outer: usize| {
        for lu in 0..=outer {
            let lv = outer - lu;
            for u in &words_by_len[lu] {
                for v in &words_by_len[lv] {
                    for rel in &relations {
                        let row = from_entries(rel.iter().map(|(w, x)| {
                            let mut word = u.clone();
                            word.extend_from_slice(w);
                            word.extend_from_slice(v);
                            (index[&word], x.clone())
                        }));
                        ech.insert(row);
                    }
                }
            }
        }
    };
    let filtered_now = |ech: &Echelon<CycNumber>| -> Vec<usize> {
        let mut in_low = vec![0usize; top + 1];
        for c in ech.pivot_columns() {
            in_low[column_len(c)] += 1;
        }
        let mut out = Vec::with_capacity(max_degree + 1);
        let mut ideal = 0;
        for d in 0..=max_degree {
            ideal += in_low[d];
            out.push(prefix[d] - ideal);
        }
        out
    };
    for outer in 0..top - 1 {
        insert_layer(&mut ech, outer);
    }
    let before = filtered_now(&ech);
    insert_layer(&mut ech, top - 2);
    let filtered = filtered_now(&ech);
    let graded: Vec<usize> = (0..=max_degree).map(|d| filtered[d] - if d == 0 { 0 } else { filtered[d - 1] }).collect();
    let nichols = Quotient::from_nichols(&l.space()?, max_degree)?.dims().dims;
    let nichols = (0..=max_degree).map(|d| nichols.get(d).copied().unwrap_or(0)).collect();
    Ok(EnvelopeDims { stable: before == filtered, filtered, graded, nichols })
}

/// Outcome of the sign-twist argument for symmetric braidings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignTwistVerdict {
    /// Parity of each basis vector after twisting (`true` = odd).
    pub odd: Vec<bool>,
    pub even_dim: usize,
    pub odd_dim: usize,
    /// `dim B(V) = 2^odd_dim` when finite.
    pub nichols_dim: Option<u64>,
    pub rigid: bool,
    pub explanation: String,
}

/// For `V` graded by the group of `beta`, twists to the sign bicharacter;
/// `B(V)` is finite-dimensional iff the even part vanishes, and then `V`
/// carries no nonzero Lie superalgebra structure, so `B(V)` is rigid.
pub fn sign_twist_verdict(beta: &AbelianBicharacter, degrees: &[GroupElement]) -> Result<SignTwistVerdict> {
    let tw = scheunert_cocycle(beta)?;
    let odd: Vec<bool> = degrees.iter().map(|g| tw.twisted.eval(g, g) == minus_one()).collect();
    let odd_dim = odd.iter().filter(|&&o| o).count();
    let even_dim = odd.len() - odd_dim;
    let (nichols_dim, rigid, explanation) = if even_dim == 0 {
        (
            Some(1u64 << odd_dim),
            true,
            "twisted braiding is minus the flip: B(V) is an exterior algebra and V has no nonzero Lie superalgebra bracket".to_string(),
        )
    } else {
        (None, false, format!("even part has dimension {even_dim}: B(V) contains a polynomial algebra and is infinite-dimensional"))
    };
    Ok(SignTwistVerdict { odd, even_dim, odd_dim, nichols_dim, rigid, explanation })
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn empty_table(n: usize) -> Vec<Vec<SparseVec<CycNumber>>> {
    vec![vec![Vec::new(); n]; n]
}

fn flip(n: usize) -> Vec<Vec<CycNumber>> {
    vec![vec![one(); n]; n]
}

/// Shipped examples.
pub mod examples {
    use super::*;

    fn set(t: &mut [Vec<SparseVec<CycNumber>>], i: usize, j: usize, v: SparseVec<CycNumber>) {
        t[i][j] = from_entries(v);
    }

    /// `[x, y] = z` with the flip.
    pub fn heisenberg() -> BraidedLieData {
        let mut b = empty_table(3);
        set(&mut b, 0, 1, vec![(2, one())]);
        set(&mut b, 1, 0, vec![(2, minus_one())]);
        BraidedLieData::new(labels(&["x", "y", "z"]), flip(3), b).expect("valid table")
    }

    /// `[e, f] = h`, `[h, e] = 2e`, `[h, f] = -2f` with the flip.
    pub fn sl2() -> BraidedLieData {
        let (e, f, h) = (0, 1, 2);
        let mut b = empty_table(3);
        set(&mut b, e, f, vec![(h, one())]);
        set(&mut b, f, e, vec![(h, minus_one())]);
        set(&mut b, h, e, vec![(e, CycNumber::integer(2))]);
        set(&mut b, e, h, vec![(e, CycNumber::integer(-2))]);
        set(&mut b, h, f, vec![(f, CycNumber::integer(-2))]);
        set(&mut b, f, h, vec![(f, CycNumber::integer(2))]);
        BraidedLieData::new(labels(&["e", "f", "h"]), flip(3), b).expect("valid table")
    }

    /// One odd vector with zero bracket.
    pub fn odd_superline() -> BraidedLieData {
        let beta = AbelianBicharacter::new(vec![2], vec![vec![minus_one()]]).expect("valid bicharacter");
        BraidedLieData::from_bicharacter(labels(&["x"]), &beta, vec![vec![1]], empty_table(1)).expect("valid table")
    }

    /// Odd `x` and even `y = [x, x]` over `Z`.
    pub fn superline_pair() -> BraidedLieData {
        let beta = AbelianBicharacter::free(vec![vec![minus_one()]]).expect("valid bicharacter");
        let mut b = empty_table(2);
        set(&mut b, 0, 0, vec![(1, one())]);
        BraidedLieData::from_bicharacter(labels(&["x", "y"]), &beta, vec![vec![1], vec![2]], b).expect("valid table")
    }

    /// `beta(e1,e1) = beta(e2,e2) = -1`, `beta(e1,e2) = q`, `beta(e2,e1) = q^-1` on `Z^2`.
    pub fn color_bicharacter(q: &CycNumber) -> AbelianBicharacter {
        AbelianBicharacter::free(vec![vec![minus_one(), q.clone()], vec![q.inv(), minus_one()]]).expect("valid bicharacter")
    }

    /// Color Lie superalgebra over `Z^2`: `x1` in degree `e1`, `x2` in `e2`,
    /// `y = [x1, x1]` in `2 e1`.
    pub fn color_pair(q: &CycNumber) -> BraidedLieData {
        let beta = color_bicharacter(q);
        let mut b = empty_table(3);
        set(&mut b, 0, 0, vec![(2, one())]);
        BraidedLieData::from_bicharacter(labels(&["x1", "x2", "y"]), &beta, vec![vec![1, 0], vec![0, 1], vec![2, 0]], b)
            .expect("valid table")
    }

    /// Color Lie superalgebra over `Z^2` with `w = [x1, x2]` in `e1 + e2`.
    pub fn color_triple(q: &CycNumber) -> BraidedLieData {
        let beta = color_bicharacter(q);
        let mut b = empty_table(3);
        set(&mut b, 0, 1, vec![(2, one())]);
        set(&mut b, 1, 0, vec![(2, q.inv().neg())]);
        BraidedLieData::from_bicharacter(labels(&["x1", "x2", "w"]), &beta, vec![vec![1, 0], vec![0, 1], vec![1, 1]], b)
            .expect("valid table")
    }

    /// `M_2` with matrix units `e11, e12, e21, e22`.
    pub fn matrix_algebra() -> Algebra {
        let n = 4;
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut mult = empty_table(n);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    mult[idx(i, j)][idx(j, k)] = vec![(idx(i, k), one())];
                }
            }
        }
        Algebra::new(labels(&["e11", "e12", "e21", "e22"]), mult).expect("valid table")
    }

    /// The group `(Z/m)^2` with `beta(g, h) = zeta_m^{s (g1 h2 - g2 h1)}`.
    pub fn torus_bicharacter(m: u32, s: i64) -> AbelianBicharacter {
        let z = |e: i64| CycNumber::root_of_unity(m, e);
        AbelianBicharacter::new(vec![m as u64, m as u64], vec![vec![z(0), z(s)], vec![z(-s), z(0)]]).expect("valid bicharacter")
    }

    /// Twisted group algebra of `(Z/m)^2`: `u_g u_h = zeta_m^{g1 h2} u_{g+h}`.
    pub fn quantum_torus(m: u32) -> Algebra {
        let group = torus_bicharacter(m, 1);
        let elems: Vec<GroupElement> = (0..m as i64).flat_map(|a| (0..m as i64).map(move |b| vec![a, b])).collect();
        let pos = |g: &GroupElement| (g[0] * m as i64 + g[1]) as usize;
        let mult = elems
            .iter()
            .map(|g| elems.iter().map(|h| vec![(pos(&group.add(g, h)), CycNumber::root_of_unity(m, g[0] * h[1]))]).collect())
            .collect();
        let names: Vec<String> = elems.iter().map(|g| format!("u{}{}", g[0], g[1])).collect();
        Algebra::new(names, mult).expect("valid table").graded(&group, elems).expect("homogeneous")
    }

    /// Diagonal braiding on the quantum torus from a bicharacter of `(Z/m)^2`.
    pub fn torus_braiding(m: u32, beta: &AbelianBicharacter) -> Vec<Vec<CycNumber>> {
        let elems: Vec<GroupElement> = (0..m as i64).flat_map(|a| (0..m as i64).map(move |b| vec![a, b])).collect();
        elems.iter().map(|g| elems.iter().map(|h| beta.eval(g, h)).collect()).collect()
    }

    /// The shipped braided Lie algebras used for the PBW comparison.
    pub fn shipped() -> Vec<(&'static str, BraidedLieData)> {
        let q = CycNumber::root_of_unity(3, 1);
        vec![
            ("heisenberg", heisenberg()),
            ("sl2", sl2()),
            ("odd-superline", odd_superline()),
            ("superline-pair", superline_pair()),
            ("color-pair", color_pair(&q)),
            ("color-triple", color_triple(&q)),
        ]
    }
}
