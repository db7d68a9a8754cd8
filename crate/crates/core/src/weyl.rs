//! Weyl groupoid of a diagonal braiding: reflections, positive roots and Cartan roots.
//!
//! An object of the groupoid reached from `V` is recorded by the integer
//! matrix `M` whose columns are its simple roots written in the basis of
//! `V`. Its braiding matrix is the pullback `q'_jk = chi(M e_j, M e_k)`, so
//! the walk never has to compose braided spaces explicitly.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::braided::{build_diagonal, cartan_integer_from, BraidedSpace};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Scalar};
use crate::par;

pub const DEFAULT_REFLECTION_CAP: usize = 64;
pub const DEFAULT_CARTAN_CAP: u32 = 50;
const STATE_BUDGET: usize = 200_000;
/// Largest root coefficient followed by the walk.
const ENTRY_BOUND: i64 = 1 << 10;

pub type Root = Vec<i64>;

/// `chi(alpha_i, alpha_j) = q_ij`, extended bimultiplicatively to `Z^theta`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bicharacter {
    q: Vec<Vec<CycNumber>>,
}

impl Bicharacter {
    pub fn new(q: Vec<Vec<CycNumber>>) -> Self {
        Bicharacter { q }
    }

    pub fn from_space(space: &BraidedSpace) -> Result<Self> {
        Ok(Bicharacter { q: space.q_matrix()?.to_vec() })
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn matrix(&self) -> &[Vec<CycNumber>] {
        &self.q
    }

    pub fn eval(&self, a: &[i64], b: &[i64]) -> CycNumber {
        let mut out = CycNumber::one();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    out = out.mul(&self.q[i][j].pow(ai * bj));
                }
            }
        }
        out
    }
}

pub fn bichar_eval(chi: &Bicharacter, a: &[i64], b: &[i64]) -> CycNumber {
    chi.eval(a, b)
}

fn unit(theta: usize, i: usize) -> Root {
    let mut v = vec![0; theta];
    v[i] = 1;
    v
}

/// `s_i(alpha_j) = alpha_j - c_ij alpha_i` as a matrix acting on columns.
fn reflection_matrix(cartan_row: &[i64], i: usize) -> Vec<Vec<i64>> {
    let theta = cartan_row.len();
    let mut s = vec![vec![0i64; theta]; theta];
    for (j, &c) in cartan_row.iter().enumerate() {
        // column j is s_i(alpha_j)
        s[j][j] += 1;
        s[i][j] -= c;
    }
    s
}

/// Product of two morphism matrices; `None` once an entry leaves `ENTRY_BOUND`.
fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for r in 0..n {
        for c in 0..n {
            let mut acc = 0i64;
            for k in 0..n {
                acc = acc.checked_add(a[r][k].checked_mul(b[k][c])?)?;
            }
            if acc.abs() > ENTRY_BOUND {
                return None;
            }
            out[r][c] = acc;
        }
    }
    Some(out)
}

fn column(m: &[Vec<i64>], j: usize) -> Root {
    m.iter().map(|row| row[j]).collect()
}

fn identity(theta: usize) -> Vec<Vec<i64>> {
    (0..theta).map(|i| unit(theta, i)).collect()
}

/// Row `i` of the Cartan matrix (`c_ii = 2`); `None` when some entry is undefined.
fn cartan_row(q: &[Vec<CycNumber>], i: usize, cap: u32) -> Option<Vec<i64>> {
    (0..q.len())
        .map(|j| if j == i { Some(2) } else { cartan_integer_from(&q[i][i], &q[i][j].mul(&q[j][i]), cap) })
        .collect()
}

fn pulled_back(chi: &Bicharacter, m: &[Vec<i64>]) -> Vec<Vec<CycNumber>> {
    let theta = m.len();
    let cols: Vec<Root> = (0..theta).map(|j| column(m, j)).collect();
    (0..theta).map(|j| (0..theta).map(|k| chi.eval(&cols[j], &cols[k])).collect()).collect()
}

pub fn reflect(space: &BraidedSpace, i: usize, cap: u32) -> Result<BraidedSpace> {
    let q = space.q_matrix()?;
    let row = (0..q.len())
        .map(|j| {
            if j == i {
                Ok(2)
            } else {
                space.cartan_integer(i, j, cap)?.ok_or(Error::UndefinedCartanInteger { i: i + 1, j: j + 1, cap })
            }
        })
        .collect::<Result<Vec<i64>>>()?;
    let chi = Bicharacter::from_space(space)?;
    build_diagonal(pulled_back(&chi, &reflection_matrix(&row, i)))
}

/// Cartan vertex test with the rank-one convention: a lone vertex counts as
/// Cartan iff `q_11` is a root of unity of order at least 3.
pub fn is_cartan_vertex_conv(q: &[Vec<CycNumber>], i: usize, cap: u32) -> Option<bool> {
    if q.len() == 1 {
        return Some(matches!(q[0][0].order().ok().flatten(), Some(n) if n >= 3));
    }
    for j in 0..q.len() {
        if j == i {
            continue;
        }
        let qt = q[i][j].mul(&q[j][i]);
        let c = cartan_integer_from(&q[i][i], &qt, cap)?;
        if qt != q[i][i].pow(c) {
            return Some(false);
        }
    }
    Some(true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootInfo {
    pub root: Root,
    pub q_alpha: CycNumber,
    /// Order of `q_alpha`; `None` when it is not a root of unity.
    pub n_alpha: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystemData {
    pub rank: usize,
    pub finite: bool,
    pub positive_roots: Vec<RootInfo>,
    pub cartan_roots: Vec<Root>,
    /// Number of groupoid states (object, morphism) visited.
    pub states: usize,
    pub warnings: Vec<String>,
}

impl RootSystemData {
    pub fn contains(&self, root: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r.root == root)
    }

    pub fn info(&self, root: &[i64]) -> Option<&RootInfo> {
        self.positive_roots.iter().find(|r| r.root == root)
    }

    pub fn roots(&self) -> Vec<Root> {
        self.positive_roots.iter().map(|r| r.root.clone()).collect()
    }
}

fn normalize_sign(r: Root) -> Option<Root> {
    if r.iter().all(|&x| x >= 0) {
        Some(r)
    } else if r.iter().all(|&x| x <= 0) {
        Some(r.into_iter().map(|x| -x).collect())
    } else {
        None
    }
}

fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
}

struct Walk {
    states: Vec<Vec<Vec<i64>>>,
    finite: bool,
    warnings: Vec<String>,
}

/// Breadth-first walk over reflection words of length at most `cap`.
fn walk(chi: &Bicharacter, cap: usize, cartan_cap: u32) -> Walk {
    let theta = chi.rank();
    let start = identity(theta);
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
    seen.insert(start.clone());
    let mut states = vec![start.clone()];
    let mut frontier = vec![start];
    let mut finite = true;
    let mut warnings = Vec::new();
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth == cap {
            finite = false;
            warnings.push(format!("reflection cap {cap} reached before the groupoid walk stabilized"));
            break;
        }
        let expanded: Vec<(Vec<Vec<Vec<i64>>>, bool, bool)> = par::map(&frontier, |m| {
            let q = pulled_back(chi, m);
            let mut next = Vec::new();
            let mut defined = true;
            let mut bounded = true;
            for i in 0..theta {
                match cartan_row(&q, i, cartan_cap) {
                    Some(row) => match mat_mul(m, &reflection_matrix(&row, i)) {
                        Some(n) => next.push(n),
                        None => bounded = false,
                    },
                    None => defined = false,
                }
            }
            (next, defined, bounded)
        });
        let mut new_frontier = Vec::new();
        let mut unbounded = false;
        for (next, defined, bounded) in expanded {
            if !defined && finite {
                finite = false;
                warnings.push(format!("Cartan integer undefined within scan bound {cartan_cap}"));
            }
            if !bounded && !unbounded {
                unbounded = true;
                finite = false;
                warnings.push(format!("root coefficient above {ENTRY_BOUND}; root system treated as infinite"));
            }
            for m in next {
                if seen.insert(m.clone()) {
                    states.push(m.clone());
                    new_frontier.push(m);
                }
            }
        }
        if states.len() > STATE_BUDGET {
            finite = false;
            warnings.push(format!("more than {STATE_BUDGET} groupoid states; root system treated as infinite"));
            break;
        }
        if unbounded {
            break;
        }
        frontier = new_frontier;
        depth += 1;
    }
    Walk { states, finite, warnings }
}

pub fn enumerate_roots(space: &BraidedSpace, cap: usize) -> Result<RootSystemData> {
    enumerate_roots_with(space, cap, DEFAULT_CARTAN_CAP)
}

pub fn enumerate_roots_with(space: &BraidedSpace, cap: usize, cartan_cap: u32) -> Result<RootSystemData> {
    let chi = Bicharacter::from_space(space)?;
    let theta = chi.rank();
    let w = walk(&chi, cap, cartan_cap);
    let mut roots: BTreeSet<Root> = (0..theta).map(|i| unit(theta, i)).collect();
    let mut warnings = w.warnings;
    for m in &w.states {
        for j in 0..theta {
            match normalize_sign(column(m, j)) {
                Some(r) => {
                    roots.insert(r);
                }
                None => {
                    warnings.push(format!("mixed-sign root {:?} encountered", column(m, j)));
                }
            }
        }
    }
    let mut list: Vec<Root> = roots.into_iter().collect();
    sort_roots(&mut list);
    let positive_roots = list
        .into_iter()
        .map(|r| {
            let q_alpha = chi.eval(&r, &r);
            let n_alpha = q_alpha.order().ok().flatten();
            RootInfo { root: r, q_alpha, n_alpha }
        })
        .collect();
    let finite = w.finite && !warnings.iter().any(|m| m.starts_with("mixed-sign"));
    let mut data =
        RootSystemData { rank: theta, finite, positive_roots, cartan_roots: Vec::new(), states: w.states.len(), warnings };
    if data.finite {
        data.cartan_roots = collect_cartan_roots(&chi, &w.states, cartan_cap);
    }
    Ok(data)
}

fn collect_cartan_roots(chi: &Bicharacter, states: &[Vec<Vec<i64>>], cartan_cap: u32) -> Vec<Root> {
    let theta = chi.rank();
    let per_state: Vec<Vec<Root>> = par::map(states, |m| {
        let q = pulled_back(chi, m);
        (0..theta)
            .filter(|&i| is_cartan_vertex_conv(&q, i, cartan_cap) == Some(true))
            .filter_map(|i| normalize_sign(column(m, i)))
            .collect()
    });
    let set: BTreeSet<Root> = per_state.into_iter().flatten().collect();
    let mut out: Vec<Root> = set.into_iter().collect();
    sort_roots(&mut out);
    out
}

/// The orbit of Cartan vertices under the groupoid, as roots of `V`.
pub fn cartan_roots(rs: &RootSystemData) -> Result<Vec<Root>> {
    if !rs.finite {
        return Err(Error::InfiniteRootSystem);
    }
    Ok(rs.cartan_roots.clone())
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
    fn bicharacter_values() {
        let chi = Bicharacter::from_space(&a2()).unwrap();
        assert_eq!(chi.eval(&[1, 1], &[1, 1]), z(3, 1));
        assert_eq!(chi.eval(&[0, 0], &[1, 0]), CycNumber::one());
        assert_eq!(chi.eval(&[1, 0], &[0, 1]), z(3, 2));
    }

    #[test]
    fn a2_roots() {
        let rs = enumerate_roots(&a2(), DEFAULT_REFLECTION_CAP).unwrap();
        assert!(rs.finite);
        assert_eq!(rs.roots(), vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(rs.positive_roots.iter().all(|r| r.n_alpha == Some(3)));
        assert_eq!(rs.cartan_roots.len(), 3);
        let r = reflect(&a2(), 0, 50).unwrap();
        assert_eq!(r.dynkin_diagram().unwrap(), a2().dynkin_diagram().unwrap());
    }

    #[test]
    fn generic_a2_has_no_orders() {
        let v = build_diagonal(vec![
            vec![CycNumber::integer(2), CycNumber::from_ratio(1, 2)],
            vec![CycNumber::one(), CycNumber::integer(2)],
        ])
        .unwrap();
        let rs = enumerate_roots(&v, DEFAULT_REFLECTION_CAP).unwrap();
        assert!(rs.finite);
        assert_eq!(rs.positive_roots.len(), 3);
        assert!(rs.positive_roots.iter().all(|r| r.n_alpha.is_none()));
    }

    #[test]
    fn rank_one_convention() {
        let minus = build_diagonal(vec![vec![z(2, 1)]]).unwrap();
        let rs = enumerate_roots(&minus, 8).unwrap();
        assert_eq!(rs.roots(), vec![vec![1]]);
        assert!(rs.cartan_roots.is_empty());
        let cube = build_diagonal(vec![vec![z(3, 1)]]).unwrap();
        assert_eq!(enumerate_roots(&cube, 8).unwrap().cartan_roots, vec![vec![1]]);
    }

    #[test]
    fn super_a2_excludes_odd_root() {
        let v = build_diagonal(vec![vec![z(2, 1), z(3, 2)], vec![CycNumber::one(), z(3, 1)]]).unwrap();
        let rs = enumerate_roots(&v, DEFAULT_REFLECTION_CAP).unwrap();
        assert!(rs.finite);
        assert!(!rs.cartan_roots.contains(&vec![1, 0]));
    }
}
