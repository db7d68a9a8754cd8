//! The defining relations of a Nichols algebra of diagonal type with finite
//! root system, their `(g_R, chi_R)` degrees over a realization, and the
//! resulting rigidity criterion.
//!
//! Iterated brackets follow `x_{i1 i2 .. ik} = [x_{i1}, x_{i2 .. ik}]_c` with
//! `[a, b]_c = ab - chi(deg a, deg b) ba`.

use std::fmt;

use serde::Serialize;

use crate::braided::{cartan_integer_from, BraidedSpace, BraidingKind};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Scalar};
use crate::nichols::{nichols_dims, Quotient};
use crate::par;
use crate::tensor::TensorElement;
use crate::weyl::{is_cartan_vertex_conv, Bicharacter, Root, RootSystemData, DEFAULT_CARTAN_CAP};

/// Relations of larger total degree are listed without an explicit element.
pub const ELEMENT_DEGREE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    RootPower,
    QuantumSerre,
    SimpleRootPower,
    TwoMinusOneVertices,
    MinusOneVertex,
    StandardB2,
    StandardB3,
    Triangle,
    SuperC3,
    SuperG3,
    SuperC3Order3,
    NinthRoot,
    NinthRootCase2,
    SuperG3Order4,
    SuperC3Like,
    SuperC3LikeBis,
    SuperC4,
    SuperC4Modified,
    SuperF4First,
    SuperF4Second,
    DoubleEdgeTwo,
    SpecialRank3,
    BothEdgesAboveOne,
    HighRoot,
    NextRootCase2,
    TwoAlphaCase2,
    NextRootCase3,
    TwoAlphaCase1,
    HighPower,
}

impl Family {
    pub const ALL: [Family; 29] = [
        Family::RootPower,
        Family::QuantumSerre,
        Family::SimpleRootPower,
        Family::TwoMinusOneVertices,
        Family::MinusOneVertex,
        Family::StandardB2,
        Family::StandardB3,
        Family::Triangle,
        Family::SuperC3,
        Family::SuperG3,
        Family::SuperC3Order3,
        Family::NinthRoot,
        Family::NinthRootCase2,
        Family::SuperG3Order4,
        Family::SuperC3Like,
        Family::SuperC3LikeBis,
        Family::SuperC4,
        Family::SuperC4Modified,
        Family::SuperF4First,
        Family::SuperF4Second,
        Family::DoubleEdgeTwo,
        Family::SpecialRank3,
        Family::BothEdgesAboveOne,
        Family::HighRoot,
        Family::NextRootCase2,
        Family::TwoAlphaCase2,
        Family::NextRootCase3,
        Family::TwoAlphaCase1,
        Family::HighPower,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::RootPower => "root-power",
            Family::QuantumSerre => "quantum-serre",
            Family::SimpleRootPower => "simple-root-power",
            Family::TwoMinusOneVertices => "two-minus-one-vertices",
            Family::MinusOneVertex => "minus-one-vertex",
            Family::StandardB2 => "standard-b2",
            Family::StandardB3 => "standard-b3",
            Family::Triangle => "triangle",
            Family::SuperC3 => "super-c3",
            Family::SuperG3 => "super-g3",
            Family::SuperC3Order3 => "super-c3-order-3",
            Family::NinthRoot => "ninth-root",
            Family::NinthRootCase2 => "ninth-root-case-2",
            Family::SuperG3Order4 => "super-g3-order-4",
            Family::SuperC3Like => "super-c3-like",
            Family::SuperC3LikeBis => "super-c3-like-bis",
            Family::SuperC4 => "super-c4",
            Family::SuperC4Modified => "super-c4-modified",
            Family::SuperF4First => "super-f4-first",
            Family::SuperF4Second => "super-f4-second",
            Family::DoubleEdgeTwo => "double-edge-two",
            Family::SpecialRank3 => "special-rank-3",
            Family::BothEdgesAboveOne => "both-edges-above-one",
            Family::HighRoot => "high-root",
            Family::NextRootCase2 => "next-root-case-2",
            Family::TwoAlphaCase2 => "two-alpha-case-2",
            Family::NextRootCase3 => "next-root-case-3",
            Family::TwoAlphaCase1 => "two-alpha-case-1",
            Family::HighPower => "high-power",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Symbolic relation element; evaluated against a bicharacter.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    X(usize),
    /// `x_{i1 .. ik}`
    Iter(Vec<usize>),
    /// A named root vector and its definition.
    Named(String, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Lin(Vec<(CycNumber, Expr)>),
}

fn br(a: Expr, b: Expr) -> Expr {
    Expr::Bracket(Box::new(a), Box::new(b))
}

fn mul(a: Expr, b: Expr) -> Expr {
    Expr::Mul(Box::new(a), Box::new(b))
}

fn xs(idx: &[usize]) -> Expr {
    if idx.len() == 1 {
        Expr::X(idx[0])
    } else {
        Expr::Iter(idx.to_vec())
    }
}

fn lin(terms: Vec<(CycNumber, Expr)>) -> Expr {
    Expr::Lin(terms)
}

impl Expr {
    pub fn degree(&self, rank: usize) -> Vec<i64> {
        match self {
            Expr::X(i) => {
                let mut d = vec![0; rank];
                d[*i] += 1;
                d
            }
            Expr::Iter(idx) => {
                let mut d = vec![0; rank];
                for &i in idx {
                    d[i] += 1;
                }
                d
            }
            Expr::Named(_, e) => e.degree(rank),
            Expr::Bracket(a, b) | Expr::Mul(a, b) => {
                a.degree(rank).iter().zip(b.degree(rank)).map(|(x, y)| x + y).collect()
            }
            Expr::Pow(a, n) => a.degree(rank).into_iter().map(|x| x * *n as i64).collect(),
            Expr::Lin(terms) => terms.first().map_or(vec![0; rank], |(_, e)| e.degree(rank)),
        }
    }

    pub fn eval(&self, chi: &Bicharacter) -> TensorElement {
        let theta = chi.rank();
        match self {
            Expr::X(i) => TensorElement::letter(*i),
            Expr::Iter(idx) => {
                let mut acc = TensorElement::letter(idx[idx.len() - 1]);
                let mut deg = vec![0i64; theta];
                deg[idx[idx.len() - 1]] += 1;
                for &i in idx[..idx.len() - 1].iter().rev() {
                    let mut di = vec![0i64; theta];
                    di[i] = 1;
                    acc = bracket(chi, &TensorElement::letter(i), &di, &acc, &deg);
                    deg[i] += 1;
                }
                acc
            }
            Expr::Named(_, e) => e.eval(chi),
            Expr::Bracket(a, b) => bracket(chi, &a.eval(chi), &a.degree(theta), &b.eval(chi), &b.degree(theta)),
            Expr::Mul(a, b) => a.eval(chi).mul(&b.eval(chi)),
            Expr::Pow(a, n) => a.eval(chi).pow(*n),
            Expr::Lin(terms) => {
                let mut out = TensorElement::zero();
                for (c, e) in terms {
                    out = out.add(&e.eval(chi).scale(c));
                }
                out
            }
        }
    }
}

fn write_index(f: &mut fmt::Formatter<'_>, idx: &[usize]) -> fmt::Result {
    if idx.iter().all(|&i| i < 9) {
        for i in idx {
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    } else {
        let s: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::X(i) => write!(f, "x{}", i + 1),
            Expr::Iter(idx) => {
                write!(f, "x_")?;
                write_index(f, idx)
            }
            Expr::Named(name, _) => f.write_str(name),
            Expr::Bracket(a, b) => write!(f, "[{a}, {b}]_c"),
            Expr::Mul(a, b) => write!(f, "{a} {b}"),
            Expr::Pow(a, n) => match **a {
                Expr::X(_) | Expr::Iter(_) | Expr::Named(..) => write!(f, "{a}^{n}"),
                _ => write!(f, "({a})^{n}"),
            },
            Expr::Lin(terms) => {
                for (k, (c, e)) in terms.iter().filter(|(c, _)| !c.is_zero()).enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    if c.is_one() {
                        write!(f, "{e}")?;
                    } else {
                        write!(f, "({c}) {e}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// `[a, b]_c = ab - chi(da, db) ba` for `Z^theta`-homogeneous `a`, `b`.
pub fn bracket(chi: &Bicharacter, a: &TensorElement, da: &[i64], b: &TensorElement, db: &[i64]) -> TensorElement {
    a.mul(b).sub(&b.mul(a).scale(&chi.eval(da, db)))
}

/// `(ad_c x_i)^n (y)` for homogeneous `y` of degree `dy`.
pub fn ad_power(chi: &Bicharacter, i: usize, n: u32, y: &TensorElement, dy: &[i64]) -> TensorElement {
    let mut di = vec![0; chi.rank()];
    di[i] = 1;
    let xi = TensorElement::letter(i);
    let mut acc = y.clone();
    let mut d = dy.to_vec();
    for _ in 0..n {
        acc = bracket(chi, &xi, &di, &acc, &d);
        d[i] += 1;
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationInstance {
    pub family: Family,
    /// Indices `i, j, k, l` as used in the guard, 0-based.
    pub participants: Vec<usize>,
    /// The root `alpha` for powers of root vectors.
    pub root: Option<Root>,
    pub degree: Vec<i64>,
    pub support: Vec<usize>,
    pub expression: String,
    #[serde(skip)]
    pub element: Option<TensorElement>,
    /// Guard branches that fired and interpretation notes.
    pub flags: Vec<String>,
}

impl RelationInstance {
    /// An instance with a prescribed degree and no element.
    pub fn with_degree(family: Family, participants: Vec<usize>, degree: Vec<i64>) -> Self {
        let support = support_of(&degree);
        RelationInstance {
            family,
            participants,
            root: None,
            degree,
            support,
            expression: String::new(),
            element: None,
            flags: Vec::new(),
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.degree.iter().sum()
    }

    pub fn participants_label(&self) -> String {
        let names = ["i", "j", "k", "l"];
        self.participants.iter().enumerate().map(|(n, p)| format!("{}={}", names[n.min(3)], p + 1)).collect::<Vec<_>>().join(",")
    }
}

fn support_of(degree: &[i64]) -> Vec<usize> {
    degree.iter().enumerate().filter(|(_, &a)| a != 0).map(|(i, _)| i).collect()
}

struct Ctx<'a> {
    q: &'a [Vec<CycNumber>],
    chi: Bicharacter,
    rs: &'a RootSystemData,
    /// `m_ij = -c_ij`
    m: Vec<Vec<i64>>,
    out: Vec<RelationInstance>,
}

impl Ctx<'_> {
    fn theta(&self) -> usize {
        self.q.len()
    }

    fn d(&self, i: usize) -> &CycNumber {
        &self.q[i][i]
    }

    fn p(&self, i: usize, j: usize) -> &CycNumber {
        &self.q[i][j]
    }

    fn t(&self, i: usize, j: usize) -> CycNumber {
        self.q[i][j].mul(&self.q[j][i])
    }

    fn has_root(&self, terms: &[(usize, i64)]) -> bool {
        let mut r = vec![0; self.theta()];
        for &(i, a) in terms {
            r[i] += a;
        }
        self.rs.contains(&r)
    }

    fn push(&mut self, family: Family, participants: Vec<usize>, expr: Expr, flags: Vec<String>) {
        let degree = expr.degree(self.theta());
        let total: i64 = degree.iter().sum();
        let element = (total as usize <= ELEMENT_DEGREE_CAP).then(|| expr.eval(&self.chi));
        self.out.push(RelationInstance {
            family,
            participants,
            root: None,
            support: support_of(&degree),
            degree,
            expression: expr.to_string(),
            element,
            flags,
        });
    }
}

fn minus_one() -> CycNumber {
    CycNumber::integer(-1)
}

fn is_m1(x: &CycNumber) -> bool {
    *x == minus_one()
}

fn prim(x: &CycNumber, n: u64) -> bool {
    x.is_primitive_root(n)
}

fn inv(x: &CycNumber) -> CycNumber {
    x.checked_inv().expect("braiding scalars are nonzero")
}

fn distinct(idx: &[usize]) -> bool {
    (0..idx.len()).all(|a| (a + 1..idx.len()).all(|b| idx[a] != idx[b]))
}

fn tuples(theta: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| (0..theta).map(move |x| {
                let mut t = t.clone();
                t.push(x);
                t
            }))
            .collect();
    }
    out.retain(|t| distinct(t));
    out
}

/// Root vector used for `alpha` in powers of root vectors, when one is constructed.
fn root_vector(alpha: &[i64]) -> Option<Expr> {
    let supp = support_of(alpha);
    match *supp.as_slice() {
        [i] if alpha[i] == 1 => Some(Expr::X(i)),
        [i, j] => {
            let (a, b) = (alpha[i], alpha[j]);
            match (a, b) {
                (1, 1) => Some(Expr::Iter(vec![i, j])),
                (m, 1) => Some(Expr::Iter([vec![i; m as usize], vec![j]].concat())),
                (1, m) => Some(Expr::Iter([vec![j; m as usize], vec![i]].concat())),
                (3, 2) => Some(x_next_root(i, j, 2)),
                (2, 3) => Some(x_next_root(j, i, 2)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// `x_{3a_i+2a_j} = [x_iij, x_ij]_c`, then `x_{(m+1)a_i+m a_j} = [x_{m a_i+(m-1)a_j}, x_ij]_c`.
fn x_next_root(i: usize, j: usize, m: i64) -> Expr {
    let mut e = Expr::Named(format!("x_(3a{}+2a{})", i + 1, j + 1), Box::new(br(xs(&[i, i, j]), xs(&[i, j]))));
    for k in 3..=m {
        e = Expr::Named(format!("x_({}a{}+{}a{})", k + 1, i + 1, k, j + 1), Box::new(br(e, xs(&[i, j]))));
    }
    e
}

/// All relations of the presentation whose guards hold for `space`.
pub fn generate_relations(space: &BraidedSpace, rs: &RootSystemData) -> Result<Vec<RelationInstance>> {
    if space.kind() != BraidingKind::Diagonal {
        return Err(Error::NotDiagonal);
    }
    if !rs.finite {
        return Err(Error::InfiniteRootSystem);
    }
    let q = space.q_matrix()?;
    let theta = q.len();
    let mut m = vec![vec![0i64; theta]; theta];
    for i in 0..theta {
        for j in 0..theta {
            if i != j {
                let qt = q[i][j].mul(&q[j][i]);
                let c = cartan_integer_from(&q[i][i], &qt, DEFAULT_CARTAN_CAP).ok_or(Error::UndefinedCartanInteger {
                    i: i + 1,
                    j: j + 1,
                    cap: DEFAULT_CARTAN_CAP,
                })?;
                m[i][j] = -c;
            }
        }
    }
    let mut cx = Ctx { q, chi: Bicharacter::new(q.to_vec()), rs, m, out: Vec::new() };
    root_powers(&mut cx);
    serre(&mut cx);
    simple_powers(&mut cx);
    rank_two_vertex_families(&mut cx);
    rank_three_families(&mut cx);
    rank_four_families(&mut cx);
    rank_two_families(&mut cx);
    Ok(cx.out)
}

fn root_powers(cx: &mut Ctx) {
    for alpha in cx.rs.cartan_roots.clone() {
        let Some(n) = cx.rs.info(&alpha).and_then(|r| r.n_alpha) else { continue };
        if n < 2 {
            continue;
        }
        let degree: Vec<i64> = alpha.iter().map(|a| a * n as i64).collect();
        let total: i64 = degree.iter().sum();
        let rv = root_vector(&alpha);
        let element = rv.as_ref().filter(|_| total as usize <= ELEMENT_DEGREE_CAP).map(|e| e.eval(&cx.chi).pow(n as u32));
        let expression = match &rv {
            Some(e) => Expr::Pow(Box::new(e.clone()), n as u32).to_string(),
            None => format!("x_{alpha:?}^{n}"),
        };
        let mut flags = Vec::new();
        if rv.is_none() {
            flags.push("root vector not constructed".into());
        }
        cx.out.push(RelationInstance {
            family: Family::RootPower,
            participants: support_of(&alpha),
            root: Some(alpha),
            support: support_of(&degree),
            degree,
            expression,
            element,
            flags,
        });
    }
}

fn serre(cx: &mut Ctx) {
    let theta = cx.theta();
    for i in 0..theta {
        for j in 0..theta {
            if i == j {
                continue;
            }
            let n = cx.m[i][j] + 1;
            if cx.d(i).pow(n).is_one() {
                continue;
            }
            let mut e = Expr::X(j);
            for _ in 0..n {
                e = br(Expr::X(i), e);
            }
            cx.push(Family::QuantumSerre, vec![i, j], e, vec![format!("m_ij = {}", n - 1)]);
        }
    }
}

fn simple_powers(cx: &mut Ctx) {
    for i in 0..cx.theta() {
        if is_cartan_vertex_conv(cx.q, i, DEFAULT_CARTAN_CAP) != Some(false) {
            continue;
        }
        match cx.d(i).order().ok().flatten() {
            Some(n) if n >= 2 => cx.push(Family::SimpleRootPower, vec![i], Expr::Pow(Box::new(Expr::X(i)), n as u32), vec![]),
            _ => {}
        }
    }
}

fn rank_two_vertex_families(cx: &mut Ctx) {
    let theta = cx.theta();
    for ij in tuples(theta, 2) {
        let (i, j) = (ij[0], ij[1]);
        let m1 = minus_one();
        // x_ij^2 with a witness k
        if is_m1(cx.d(i)) && is_m1(&cx.t(i, j)) && is_m1(cx.d(j)) {
            let witness = (0..theta)
                .filter(|&k| k != i && k != j)
                .find(|&k| !cx.t(i, k).pow(2).is_one() || !cx.t(j, k).pow(2).is_one());
            if let Some(k) = witness {
                cx.push(
                    Family::TwoMinusOneVertices,
                    vec![i, j],
                    Expr::Pow(Box::new(xs(&[i, j])), 2),
                    vec![format!("witness k = {}", k + 1)],
                );
            }
        }
        // [x_iij, x_ij]_c
        let qt = cx.t(i, j);
        if is_m1(cx.d(j)) && prim(&cx.d(i).mul(&qt), 6) && qt != m1 && (prim(cx.d(i), 3) || cx.m[i][j] >= 3) {
            cx.push(Family::StandardB2, vec![i, j], br(xs(&[i, i, j]), xs(&[i, j])), vec![]);
        }
    }
}

fn rank_three_families(cx: &mut Ctx) {
    let m1 = minus_one();
    for ijk in tuples(cx.theta(), 3) {
        let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
        let (dii, djj, dkk) = (cx.d(i).clone(), cx.d(j).clone(), cx.d(k).clone());
        let (tij, tik, tjk) = (cx.t(i, j), cx.t(i, k), cx.t(j, k));
        let tik1 = tik.is_one();
        let p = vec![i, j, k];

        if is_m1(&djj) && tik1 && tij.mul(&tjk).is_one() && tij != m1 {
            cx.push(Family::MinusOneVertex, p.clone(), br(xs(&[i, j, k]), xs(&[j])), vec![]);
        }

        let b3_first = djj.neg().is_one() && tij.mul(&tjk).is_one();
        let b3_second = inv(&djj) == tij && tij == tjk && tij != m1;
        if prim(&dii, 3) && (dii == tij || dii == tij.neg()) && tik1 && (b3_first || b3_second) {
            let mut flags = Vec::new();
            if b3_first {
                flags.push("case -q_jj = q~_ij q~_jk = 1".into());
            }
            if b3_second {
                flags.push("case q_jj^-1 = q~_ij = q~_jk".into());
            }
            cx.push(Family::StandardB3, p.clone(), br(xs(&[i, i, j, k]), xs(&[i, j])), flags);
        }

        if !tik.is_one() && !tij.is_one() && !tjk.is_one() {
            let one = CycNumber::one();
            let a = one.sub(&tjk).mul(&inv(&cx.p(k, j).mul(&one.sub(&tik))));
            let b = cx.p(i, j).mul(&one.sub(&tjk));
            let e = lin(vec![
                (one.clone(), xs(&[i, j, k])),
                (a.neg(), br(xs(&[i, k]), xs(&[j]))),
                (b.neg(), mul(xs(&[j]), xs(&[i, k]))),
            ]);
            cx.push(Family::Triangle, p.clone(), e, vec![]);
        }

        if tik1 {
            let mut cases = Vec::new();
            if is_m1(&dii) && is_m1(&djj) && tij.pow(2) == inv(&tjk) {
                cases.push("i");
            }
            if is_m1(&tij) && is_m1(&djj) && prim(&dii, 3) && dii == tjk.pow(2).neg() {
                cases.push("ii");
            }
            if is_m1(&dkk) && is_m1(&tjk) && is_m1(&djj) && prim(&dii, 3) && dii == tij.neg() {
                cases.push("iii");
            }
            if is_m1(&djj) && tij == dii.pow(-2) && tjk == dii.pow(3).neg() {
                cases.push("iv");
            }
            if is_m1(&dii) && is_m1(&djj) && is_m1(&dkk) && prim(&tjk, 3) && (tij == tjk || tij.neg() == tjk) {
                cases.push("v");
            }
            if !cases.is_empty() {
                let flags = cases.iter().map(|c| format!("case ({c})")).collect();
                cx.push(Family::SuperC3, p.clone(), br(br(xs(&[i, j]), xs(&[i, j, k])), xs(&[j])), flags);
            }

            if is_m1(&dii) && is_m1(&djj) && tij.pow(3) == inv(&tjk) {
                let e = br(br(xs(&[i, j]), br(xs(&[i, j]), xs(&[i, j, k]))), xs(&[j]));
                cx.push(Family::SuperG3, p.clone(), e, vec![]);
            }

            if prim(&djj, 3) && djj == tij.pow(2) && djj == tjk {
                cx.push(Family::SuperC3Order3, p.clone(), br(br(xs(&[i, j, k]), xs(&[j])), xs(&[j])), vec![]);
            }

            if prim(&dkk, 9) && djj == dkk && inv(&tij) == dkk && inv(&tjk) == dkk && dii == dkk.pow(6) {
                let e = br(br(xs(&[i, i, j]), xs(&[i, i, j, k])), xs(&[i, j]));
                cx.push(Family::NinthRoot, p.clone(), e, vec![]);
            }

            if prim(&dii, 9) && inv(&tij) == dii && inv(&tjk) == djj && djj == dii.pow(5) && dkk == dii.pow(6) {
                let c = inv(&CycNumber::one().add(&tjk)).mul(cx.p(j, k));
                let e = lin(vec![
                    (CycNumber::one(), br(br(xs(&[i, j, k]), xs(&[j])), xs(&[k]))),
                    (c.neg(), br(br(xs(&[i, j, k]), xs(&[k])), xs(&[j]))),
                ]);
                cx.push(Family::NinthRootCase2, p.clone(), e, vec![]);
            }

            if prim(&djj, 4) && djj == tij.pow(3) && djj == tjk {
                let e = br(br(br(xs(&[i, j, k]), xs(&[j])), xs(&[j])), xs(&[j]));
                cx.push(Family::SuperG3Order4, p.clone(), e, vec![]);
            }

            if is_m1(&dii) && is_m1(&tij) && djj == inv(&tjk) && !is_m1(&djj) {
                cx.push(Family::SuperC3Like, p.clone(), br(xs(&[i, j]), xs(&[i, j, k])), vec![]);
            }

            if is_m1(&dii) && is_m1(&dkk) && prim(&tij, 3) && djj == tjk.neg() && (djj == tij || djj == tij.neg()) {
                let one = CycNumber::one();
                let s = one.add(&djj.pow(2));
                let a = s.mul(&inv(cx.p(k, j)));
                let b = s.mul(&one.add(&djj)).mul(cx.p(i, j));
                let e = lin(vec![
                    (one.clone(), br(xs(&[i]), xs(&[j, j, k]))),
                    (a.neg(), br(xs(&[i, j, k]), xs(&[j]))),
                    (b.neg(), mul(xs(&[j]), xs(&[i, j, k]))),
                ]);
                cx.push(Family::SuperC3LikeBis, p.clone(), e, vec![]);
            }

            if is_m1(&djj) && is_m1(&dkk) && is_m1(&tjk) && prim(&dii, 3) && dii == tij.neg() {
                cx.push(Family::SpecialRank3, p.clone(), br(xs(&[i, i, j, k]), xs(&[i, j, k])), vec![]);
            }
        }

        if tjk.is_one() && prim(&dii, 3) && dii == tij && dii == tik.neg() {
            let c = cx.p(j, k).mul(cx.p(i, k)).mul(cx.p(j, i));
            let e = lin(vec![
                (CycNumber::one(), br(xs(&[i]), br(xs(&[i, j]), xs(&[i, k])))),
                (c, br(xs(&[i, i, k]), xs(&[i, j]))),
                (cx.p(i, j).clone(), mul(xs(&[i, j]), xs(&[i, i, k]))),
            ]);
            cx.push(Family::DoubleEdgeTwo, p.clone(), e, vec![]);
        }
    }
}

fn rank_four_families(cx: &mut Ctx) {
    for ijkl in tuples(cx.theta(), 4) {
        let (i, j, k, l) = (ijkl[0], ijkl[1], ijkl[2], ijkl[3]);
        let (dii, djj, dkk, dll) = (cx.d(i).clone(), cx.d(j).clone(), cx.d(k).clone(), cx.d(l).clone());
        let (tij, tjk, tkl) = (cx.t(i, j), cx.t(j, k), cx.t(k, l));
        if !(cx.t(i, k).is_one() && cx.t(i, l).is_one() && cx.t(j, l).is_one()) {
            continue;
        }
        let p = vec![i, j, k, l];

        if djj.mul(&tij).is_one() && djj.mul(&tjk).is_one() && is_m1(&dkk) && tjk.pow(2) == inv(&tkl) && dll == inv(&tkl) {
            let e = br(br(br(xs(&[i, j, k, l]), xs(&[k])), xs(&[j])), xs(&[k]));
            cx.push(Family::SuperC4, p.clone(), e, vec![]);
        }

        if tjk == tij && tij == inv(&djj) && (prim(&tjk, 4) || prim(&tjk, 6)) && is_m1(&dii) && is_m1(&dkk) && tjk.pow(3) == tkl
        {
            let e = br(br(xs(&[i, j, k]), br(xs(&[i, j, k, l]), xs(&[k]))), xs(&[j, k]));
            cx.push(Family::SuperC4Modified, p.clone(), e, vec![]);
        }

        // q_ll = q~_lk^-1 = q_kk = q~_jk^-1 = q^2, q~_ij = q_ii^-1 = q^3
        let sq = dkk.clone();
        let cube = tij.clone();
        let base = cube.mul(&inv(&sq));
        if dll == inv(&tkl) && dll == dkk && dkk == inv(&tjk) && tij == inv(&dii) && is_m1(&djj) && base.pow(2) == sq
            && base.pow(3) == cube
        {
            let e = br(br(br(xs(&[i, j, k]), xs(&[j])), br(xs(&[i, j, k, l]), xs(&[j]))), xs(&[j, k]));
            cx.push(Family::SuperF4First, p.clone(), e, vec![format!("q = {base}")]);
        }

        let mut cases = Vec::new();
        if is_m1(&dkk) && dii == inv(&tij) && dii == djj.pow(2) && tkl == inv(&dll) && tkl == djj.pow(3) && tjk == inv(&djj) {
            cases.push("i");
        }
        if dii == inv(&tij) && dii == inv(&dll).neg() && dii == tkl.neg() && is_m1(&djj) && is_m1(&tjk) && is_m1(&dkk) {
            cases.push("ii");
        }
        if !cases.is_empty() {
            let c = cx.p(j, k).mul(&inv(&tij).sub(&djj));
            let e = lin(vec![
                (CycNumber::one(), br(br(xs(&[i, j, k, l]), xs(&[j])), xs(&[k]))),
                (c.neg(), br(br(xs(&[i, j, k, l]), xs(&[k])), xs(&[j]))),
            ]);
            let flags = cases.iter().map(|c| format!("case ({c})")).collect();
            cx.push(Family::SuperF4Second, p.clone(), e, flags);
        }
    }
}

fn rank_two_families(cx: &mut Ctx) {
    let one = CycNumber::one();
    for ij in tuples(cx.theta(), 2) {
        let (i, j) = (ij[0], ij[1]);
        let (dii, djj, t) = (cx.d(i).clone(), cx.d(j).clone(), cx.t(i, j));
        let (mij, mji) = (cx.m[i][j], cx.m[j][i]);
        let p = vec![i, j];

        if !is_m1(&dii) && !is_m1(&djj) && !dii.mul(&t).is_one() && !djj.mul(&t).is_one() {
            let a = one.sub(&t).mul(&djj).mul(cx.p(j, i));
            let b = one.add(&djj).mul(&one.sub(&djj.mul(&t)));
            let e = lin(vec![(a, br(xs(&[i]), br(xs(&[i, j]), xs(&[j])))), (b.neg(), Expr::Pow(Box::new(xs(&[i, j])), 2))]);
            cx.push(Family::BothEdgesAboveOne, p.clone(), e, vec![]);
        }

        if mij == 4 || mij == 5 || (is_m1(&djj) && mij == 3 && prim(&dii, 4)) {
            let qt = dii.mul(&t);
            let num = one.sub(&qt).sub(&qt.pow(2).mul(&djj));
            let den = one.sub(&qt).mul(cx.p(j, i));
            match den.checked_inv() {
                Ok(di) => {
                    let e = lin(vec![
                        (one.clone(), br(xs(&[i]), x_next_root(i, j, 2))),
                        (num.mul(&di).neg(), Expr::Pow(Box::new(xs(&[i, i, j])), 2)),
                    ]);
                    cx.push(Family::HighRoot, p.clone(), e, vec![]);
                }
                Err(_) => {
                    let mut d = vec![0; cx.theta()];
                    d[i] = 4;
                    d[j] = 2;
                    let mut r = RelationInstance::with_degree(Family::HighRoot, p.clone(), d);
                    r.flags.push("coefficient denominator vanishes".into());
                    cx.out.push(r);
                }
            }
        }

        let no_4_3 = !cx.has_root(&[(i, 4), (j, 3)]);
        if no_4_3 && (is_m1(&djj) || mji >= 2) && (mij >= 3 || (mij == 2 && prim(&dii, 3))) {
            let mut flags = Vec::new();
            if !is_m1(&djj) {
                flags.push(format!("m_ji read as -c_ji = {mji}"));
            }
            cx.push(Family::NextRootCase2, p.clone(), x_next_root(i, j, 3), flags);
        }

        if cx.has_root(&[(i, 3), (j, 2)])
            && !cx.has_root(&[(i, 5), (j, 3)])
            && !dii.pow(3).mul(&t).is_one()
            && !dii.pow(4).mul(&t).is_one()
        {
            cx.push(Family::TwoAlphaCase2, p.clone(), br(xs(&[i, i, j]), x_next_root(i, j, 2)), vec![]);
        }

        if cx.has_root(&[(i, 4), (j, 3)]) && !cx.has_root(&[(i, 5), (j, 4)]) {
            cx.push(Family::NextRootCase3, p.clone(), x_next_root(i, j, 4), vec![]);
        }

        if cx.has_root(&[(i, 5), (j, 2)]) && !cx.has_root(&[(i, 7), (j, 3)]) {
            let e = br(br(xs(&[i, i, i, j]), xs(&[i, i, j])), xs(&[i, i, j]));
            cx.push(Family::TwoAlphaCase1, p.clone(), e, vec!["outer bracket read as left-nested".into()]);
        }

        if is_m1(&djj) && cx.has_root(&[(i, 5), (j, 4)]) {
            let z = t.clone();
            let q = dii.clone();
            let a = one.sub(&z).mul(&one.sub(&q.pow(4).mul(&z.pow(3)))).sub(
                &one.sub(&q.mul(&z)).mul(&one.add(&q)).mul(&q).mul(&z),
            );
            let b = one.sub(&z).mul(&one.sub(&q.pow(6).mul(&z.pow(5)))).sub(&a.mul(&q).mul(&z));
            let num = b.sub(
                &one.add(&q)
                    .mul(&one.sub(&q.mul(&z)))
                    .mul(&one.add(&z).add(&q.mul(&z.pow(2))))
                    .mul(&q.pow(6))
                    .mul(&z.pow(4)),
            );
            let den = a.mul(&q.pow(3)).mul(&cx.p(i, j).pow(2)).mul(&cx.p(j, i).pow(3));
            match den.checked_inv() {
                Ok(di) => {
                    let e = lin(vec![
                        (one.clone(), br(xs(&[i, i, j]), x_next_root(i, j, 3))),
                        (num.mul(&di).neg(), Expr::Pow(Box::new(x_next_root(i, j, 2)), 2)),
                    ]);
                    cx.push(Family::HighPower, p.clone(), e, vec![]);
                }
                Err(_) => {
                    let mut d = vec![0; cx.theta()];
                    d[i] = 6;
                    d[j] = 4;
                    let mut r = RelationInstance::with_degree(Family::HighPower, p.clone(), d);
                    r.flags.push("coefficient denominator vanishes".into());
                    cx.out.push(r);
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealizationKind {
    /// `Gamma = Z^theta`, `g_i = e_i`.
    Canonical,
    /// `Gamma = (Z/N)^theta`.
    Cyclic,
    /// `Gamma` generated by the `g_i` modulo the common kernel of the `chi_j`,
    /// so the characters separate points.
    Separating,
    Explicit,
}

/// A realization of a diagonal braiding as a Yetter-Drinfeld module over an abelian group.
#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub kind: RealizationKind,
    /// Orders of the generators of `Gamma`; `0` for a free generator.
    pub moduli: Vec<u64>,
    /// `g_i` in coordinates of the generators of `Gamma`.
    pub g: Vec<Vec<i64>>,
    /// `chi_j` as values on the generators of `Gamma`.
    pub chi: Vec<Vec<CycNumber>>,
}

/// A group element: coordinates reduced by the moduli, or for a separating
/// realization the vector `(chi_j(g))_j`, which determines it.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupElement {
    Coords(Vec<i64>),
    Values(Vec<CycNumber>),
}

fn q_of(space: &BraidedSpace) -> Result<Vec<Vec<CycNumber>>> {
    Ok(space.q_matrix()?.to_vec())
}

impl Realization {
    pub fn canonical(space: &BraidedSpace) -> Result<Realization> {
        let q = q_of(space)?;
        Ok(Self::standard(RealizationKind::Canonical, &q, 0))
    }

    /// Requires `q_ij^n = 1` for all `i, j`.
    pub fn cyclic(space: &BraidedSpace, n: u64) -> Result<Realization> {
        let q = q_of(space)?;
        if n == 0 {
            return Err(Error::Precondition("cyclic realization needs N >= 1".into()));
        }
        for row in &q {
            for v in row {
                if !v.pow(n as i64).is_one() {
                    return Err(Error::Precondition(format!("q entry {v} is not an N-th root of unity for N = {n}")));
                }
            }
        }
        Ok(Self::standard(RealizationKind::Cyclic, &q, n))
    }

    pub fn separating(space: &BraidedSpace) -> Result<Realization> {
        let q = q_of(space)?;
        Ok(Self::standard(RealizationKind::Separating, &q, 0))
    }

    /// Checks `chi_j(g_i) = q_ij` and that each `chi_j` is well defined on torsion generators.
    pub fn explicit(space: &BraidedSpace, moduli: Vec<u64>, g: Vec<Vec<i64>>, chi: Vec<Vec<CycNumber>>) -> Result<Realization> {
        let q = q_of(space)?;
        let theta = q.len();
        let r = moduli.len();
        if g.len() != theta || chi.len() != theta {
            return Err(Error::Precondition(format!("realization needs {theta} group elements and characters")));
        }
        if g.iter().any(|v| v.len() != r) || chi.iter().any(|v| v.len() != r) {
            return Err(Error::Precondition(format!("group elements and characters need {r} coordinates")));
        }
        for (j, c) in chi.iter().enumerate() {
            for (k, v) in c.iter().enumerate() {
                if v.is_zero() {
                    return Err(Error::Precondition(format!("chi_{} vanishes on generator {}", j + 1, k + 1)));
                }
                if moduli[k] > 0 && !v.pow(moduli[k] as i64).is_one() {
                    return Err(Error::Precondition(format!(
                        "chi_{} is not well defined on generator {} of order {}",
                        j + 1,
                        k + 1,
                        moduli[k]
                    )));
                }
            }
        }
        let real = Realization { kind: RealizationKind::Explicit, moduli, g, chi };
        for i in 0..theta {
            for j in 0..theta {
                let v = real.eval(&real.chi[j], &real.g[i]);
                if v != q[i][j] {
                    return Err(Error::Precondition(format!(
                        "chi_{}(g_{}) = {v} but q_{}{} = {}",
                        j + 1,
                        i + 1,
                        i + 1,
                        j + 1,
                        q[i][j]
                    )));
                }
            }
        }
        Ok(real)
    }

    fn standard(kind: RealizationKind, q: &[Vec<CycNumber>], n: u64) -> Realization {
        let theta = q.len();
        let g = (0..theta).map(|i| (0..theta).map(|k| i64::from(i == k)).collect()).collect();
        let chi = (0..theta).map(|j| (0..theta).map(|k| q[k][j].clone()).collect()).collect();
        Realization { kind, moduli: vec![n; theta], g, chi }
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    fn eval(&self, chi: &[CycNumber], coords: &[i64]) -> CycNumber {
        let mut v = CycNumber::one();
        for (c, &a) in chi.iter().zip(coords) {
            v = v.mul(&c.pow(a));
        }
        v
    }

    fn coords(&self, a: &[i64]) -> Vec<i64> {
        let r = self.moduli.len();
        let mut out = vec![0i64; r];
        for (gi, &ai) in self.g.iter().zip(a) {
            for k in 0..r {
                out[k] += ai * gi[k];
            }
        }
        for (x, &n) in out.iter_mut().zip(&self.moduli) {
            if n > 0 {
                *x = x.rem_euclid(n as i64);
            }
        }
        out
    }

    /// `g_1^{a_1} .. g_theta^{a_theta}`.
    pub fn group_element(&self, a: &[i64]) -> GroupElement {
        let c = self.coords(a);
        match self.kind {
            RealizationKind::Separating => GroupElement::Values(self.chi.iter().map(|x| self.eval(x, &c)).collect()),
            _ => GroupElement::Coords(c),
        }
    }

    /// `chi_1^{a_1} .. chi_theta^{a_theta}` as values on the generators of `Gamma`.
    pub fn character(&self, a: &[i64]) -> Vec<CycNumber> {
        let r = self.moduli.len();
        (0..r)
            .map(|k| {
                let mut v = CycNumber::one();
                for (cj, &aj) in self.chi.iter().zip(a) {
                    v = v.mul(&cj[k].pow(aj));
                }
                v
            })
            .collect()
    }

    /// `chi_b(g_a)` computed inside the realization.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> CycNumber {
        self.eval(&self.character(b), &self.coords(a))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GChi {
    pub g: GroupElement,
    pub chi: Vec<CycNumber>,
    /// `chi_R(g_R)`
    pub scalar: CycNumber,
}

pub fn g_chi(real: &Realization, degree: &[i64]) -> GChi {
    GChi { g: real.group_element(degree), chi: real.character(degree), scalar: real.pairing(degree, degree) }
}

#[derive(Clone, Debug, Serialize)]
pub struct GChiWitness {
    /// 0-based vertex index.
    pub t: usize,
    pub same_group: bool,
    pub same_character: bool,
    /// `chi_R(g_t) chi_t(g_R)`, compared in the proof with `q~` values.
    pub cross: CycNumber,
    pub q_tt: CycNumber,
}

#[derive(Clone, Debug, Serialize)]
pub struct GChiReport {
    pub family: Family,
    pub participants: Vec<usize>,
    pub degree: Vec<i64>,
    pub chi_r_g_r: CycNumber,
    pub ok: bool,
    pub witnesses: Vec<GChiWitness>,
}

/// Tests `(g_R, chi_R) != (g_t, chi_t)` for every instance and vertex `t`.
pub fn check_prop_gchi(real: &Realization, instances: &[RelationInstance]) -> Vec<GChiReport> {
    let theta = real.rank();
    let units: Vec<Vec<i64>> = (0..theta).map(|t| (0..theta).map(|k| i64::from(k == t)).collect()).collect();
    let vertex: Vec<GChi> = units.iter().map(|e| g_chi(real, e)).collect();
    par::map(instances, |r| {
        let gc = g_chi(real, &r.degree);
        let witnesses: Vec<GChiWitness> = (0..theta)
            .map(|t| GChiWitness {
                t,
                same_group: gc.g == vertex[t].g,
                same_character: gc.chi == vertex[t].chi,
                cross: real.pairing(&units[t], &r.degree).mul(&real.pairing(&r.degree, &units[t])),
                q_tt: vertex[t].scalar.clone(),
            })
            .collect();
        GChiReport {
            family: r.family,
            participants: r.participants.clone(),
            degree: r.degree.clone(),
            chi_r_g_r: gc.scalar,
            ok: !witnesses.iter().any(|w| w.same_group && w.same_character),
            witnesses,
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Rigid,
    NotDecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub verdict: Verdict,
    pub pre_nichols: bool,
    pub realization: RealizationKind,
    pub instances: Vec<GChiReport>,
    /// Positions in `instances` of relations with `(g_R, chi_R) = (g_t, chi_t)` for some `t`.
    pub failing: Vec<usize>,
}

/// Verdict for an explicit instance list.
pub fn verdict_for(real: &Realization, instances: &[RelationInstance], pre_nichols: bool) -> RigidityReport {
    let kept: Vec<RelationInstance> =
        instances.iter().filter(|r| !(pre_nichols && r.family == Family::RootPower)).cloned().collect();
    let reports = check_prop_gchi(real, &kept);
    let failing: Vec<usize> = reports.iter().enumerate().filter(|(_, r)| !r.ok).map(|(i, _)| i).collect();
    RigidityReport {
        verdict: if failing.is_empty() { Verdict::Rigid } else { Verdict::NotDecided },
        pre_nichols,
        realization: real.kind,
        instances: reports,
        failing,
    }
}

/// Rigidity of `B(V)`, or of the distinguished pre-Nichols algebra when
/// `pre_nichols` is set, through `Hom(R, V) = 0` in the realization.
pub fn rigidity_verdict(
    space: &BraidedSpace,
    rs: &RootSystemData,
    real: &Realization,
    pre_nichols: bool,
) -> Result<RigidityReport> {
    let instances = generate_relations(space, rs)?;
    Ok(verdict_for(real, &instances, pre_nichols))
}

/// The relations kept for the distinguished pre-Nichols algebra.
pub fn pre_nichols_relations(instances: &[RelationInstance]) -> Vec<RelationInstance> {
    instances.iter().filter(|r| r.family != Family::RootPower).cloned().collect()
}

/// Hilbert series of `T(V)` modulo the explicit relation elements against that of `B(V)`.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationCheck {
    pub max_degree: usize,
    pub nichols: Vec<usize>,
    pub quotient: Vec<usize>,
    pub first_mismatch: Option<usize>,
    /// Instances of degree at most `max_degree` that have no explicit element.
    pub unconstructed: Vec<usize>,
}

impl PresentationCheck {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none() && self.unconstructed.is_empty()
    }
}

pub fn verify_presentation(space: &BraidedSpace, instances: &[RelationInstance], max_degree: usize) -> Result<PresentationCheck> {
    let nd = nichols_dims(space, max_degree);
    if let Some(reason) = nd.partial {
        return Err(Error::Budget(reason));
    }
    let elements: Vec<TensorElement> = instances.iter().filter_map(|r| r.element.clone()).collect();
    let unconstructed = instances
        .iter()
        .enumerate()
        .filter(|(_, r)| r.element.is_none() && r.total_degree() as usize <= max_degree)
        .map(|(i, _)| i)
        .collect();
    let mut quotient = Quotient::from_relations(space, &elements, max_degree)?.dims().dims;
    quotient.resize(max_degree + 1, 0);
    let first_mismatch = (0..=max_degree).find(|&d| quotient[d] != nd.dims[d]);
    Ok(PresentationCheck { max_degree, nichols: nd.dims, quotient, first_mismatch, unconstructed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::build_diagonal;
    use crate::nichols::is_in_nichols_ideal;
    use crate::weyl::{enumerate_roots, DEFAULT_REFLECTION_CAP};

    fn z(n: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(n, k)
    }

    fn relations_of(q: Vec<Vec<CycNumber>>) -> (BraidedSpace, Vec<RelationInstance>) {
        let v = build_diagonal(q).unwrap();
        let rs = enumerate_roots(&v, DEFAULT_REFLECTION_CAP).unwrap();
        let rels = generate_relations(&v, &rs).unwrap();
        (v, rels)
    }

    #[test]
    fn rank_one_cube_root() {
        let (_, rels) = relations_of(vec![vec![z(3, 1)]]);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].family, Family::RootPower);
        assert_eq!(rels[0].degree, vec![3]);
        assert_eq!(rels[0].element, Some(TensorElement::word(vec![0, 0, 0])));
    }

    #[test]
    fn super_line_uses_simple_power() {
        let (_, rels) = relations_of(vec![vec![z(2, 1)]]);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].family, Family::SimpleRootPower);
        assert_eq!(rels[0].degree, vec![2]);
    }

    #[test]
    fn super_a2_relations_lie_in_ideal() {
        let (v, rels) = relations_of(vec![vec![z(2, 1), z(3, 2)], vec![CycNumber::one(), z(3, 1)]]);
        assert!(rels.iter().any(|r| r.family == Family::SimpleRootPower && r.participants == vec![0]));
        assert!(rels.iter().any(|r| r.family == Family::QuantumSerre));
        for r in &rels {
            if let Some(e) = &r.element {
                assert!(is_in_nichols_ideal(&v, e).unwrap(), "{} {:?}", r.family, r.participants);
            }
        }
    }

    #[test]
    fn bracket_matches_definition() {
        let chi = Bicharacter::new(vec![vec![z(3, 1), z(3, 2)], vec![CycNumber::one(), z(3, 1)]]);
        let e = Expr::Iter(vec![0, 1]).eval(&chi);
        let expected = TensorElement::from_terms([(vec![0, 1], CycNumber::one()), (vec![1, 0], z(3, 2).neg())]);
        assert_eq!(e, expected);
    }

    #[test]
    fn realization_scalars_match_bicharacter() {
        let v = build_diagonal(vec![vec![z(3, 1), z(3, 2)], vec![CycNumber::one(), z(3, 1)]]).unwrap();
        let chi = Bicharacter::from_space(&v).unwrap();
        for real in [Realization::canonical(&v).unwrap(), Realization::cyclic(&v, 3).unwrap(), Realization::separating(&v).unwrap()] {
            for a in [vec![1, 2], vec![3, 0], vec![0, 0]] {
                assert_eq!(g_chi(&real, &a).scalar, chi.eval(&a, &a));
            }
        }
        assert!(Realization::cyclic(&v, 2).is_err());
    }

    #[test]
    fn adversarial_degree_is_not_decided() {
        let v = build_diagonal(vec![vec![z(3, 1), z(3, 2)], vec![CycNumber::one(), z(3, 1)]]).unwrap();
        let real = Realization::separating(&v).unwrap();
        let fake = RelationInstance::with_degree(Family::QuantumSerre, vec![0, 1], vec![1, 0]);
        let report = verdict_for(&real, &[fake], false);
        assert_eq!(report.verdict, Verdict::NotDecided);
        assert_eq!(report.failing, vec![0]);
    }
}
