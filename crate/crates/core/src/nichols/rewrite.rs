//! Degree-bounded overlap completion for homogeneous two-sided ideals of `T(V)`.
//!
//! Monomials are ordered deglex. Because every relation is homogeneous the
//! completion runs one degree at a time: all S-polynomials of degree `d`
//! only involve rules of smaller degree, so after processing degree `d` the
//! rule set is a Groebner basis through degree `d`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::linalg::{from_entries, Echelon};
use crate::par;
use crate::tensor::{TensorElement, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: Vec<usize>,
    /// Set when a budget stopped the computation; `dims` is then valid only up to its length.
    pub partial: Option<String>,
}

impl GradedDims {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_partial(&self) -> bool {
        self.partial.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct RewriteOptions {
    pub max_degree: usize,
    pub max_rules: usize,
    /// Cap on normal words enumerated while counting dimensions.
    pub max_normal_words: usize,
    /// Basis letters from smallest to largest; defaults to the natural order.
    pub letter_order: Option<Vec<u8>>,
}

impl Default for RewriteOptions {
    fn default() -> Self {
        RewriteOptions { max_degree: 8, max_rules: 500_000, max_normal_words: 5_000_000, letter_order: None }
    }
}

impl RewriteOptions {
    pub fn with_max_degree(max_degree: usize) -> Self {
        RewriteOptions { max_degree, ..Default::default() }
    }
}

/// `lead -> sum of tail`, with every tail word smaller than `lead`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<F: Scalar> {
    pub lead: Word,
    pub tail: Vec<(Word, F)>,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Scalar> {
    rank: usize,
    max_degree: usize,
    rules: Vec<Rule<F>>,
    lookup: HashMap<Word, usize>,
    lead_lengths: Vec<usize>,
    to_internal: Vec<u8>,
    to_external: Vec<u8>,
    dims: Vec<usize>,
    partial: Option<String>,
}

type Overlap = (usize, usize, usize);

/// Incremental completion, one degree per [`Completion::step`].
pub struct Completion<F: Scalar> {
    gb: GroebnerBasis<F>,
    inputs: BTreeMap<usize, Vec<BTreeMap<Word, F>>>,
    pending: BTreeMap<usize, Vec<Overlap>>,
    done: usize,
    opts: RewriteOptions,
}

impl<F: Scalar> Completion<F> {
    pub fn new(rank: usize, relations: &[TensorElement<F>], opts: &RewriteOptions) -> Result<Self> {
        let to_internal: Vec<u8> = match &opts.letter_order {
            Some(order) => {
                let mut inv = vec![u8::MAX; rank];
                if order.len() != rank {
                    return Err(Error::Precondition("letter order must list every basis letter once".into()));
                }
                for (pos, &l) in order.iter().enumerate() {
                    if l as usize >= rank || inv[l as usize] != u8::MAX {
                        return Err(Error::Precondition("letter order must list every basis letter once".into()));
                    }
                    inv[l as usize] = pos as u8;
                }
                inv
            }
            None => (0..rank as u8).collect(),
        };
        let mut to_external = vec![0u8; rank];
        for (l, &i) in to_internal.iter().enumerate() {
            to_external[i as usize] = l as u8;
        }
        let gb = GroebnerBasis {
            rank,
            max_degree: 1,
            rules: Vec::new(),
            lookup: HashMap::new(),
            lead_lengths: Vec::new(),
            to_internal,
            to_external,
            dims: Vec::new(),
            partial: None,
        };
        let mut inputs: BTreeMap<usize, Vec<BTreeMap<Word, F>>> = BTreeMap::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let d = r.degree().ok_or_else(|| Error::Precondition("relation is not homogeneous".into()))?;
            if d < 2 {
                return Err(Error::Precondition("relations must have degree at least 2".into()));
            }
            if d <= opts.max_degree {
                inputs.entry(d).or_default().push(gb.internal_poly(r));
            }
        }
        Ok(Completion { gb, inputs, pending: BTreeMap::new(), done: 1, opts: opts.clone() })
    }

    /// Highest degree through which the rules form a Groebner basis.
    pub fn degree_done(&self) -> usize {
        self.done
    }

    pub fn basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    /// Processes the next degree. After the S-polynomials of that degree are
    /// reduced, `extra` may add further relations of the same degree; it sees
    /// the current rules, so it can restrict itself to normal words.
    pub fn step(&mut self, extra: impl FnOnce(&GroebnerBasis<F>, usize) -> Vec<TensorElement<F>>) -> bool {
        if self.gb.partial.is_some() || self.done >= self.opts.max_degree {
            return false;
        }
        let d = self.done + 1;
        let gb = &mut self.gb;
        let first_new = gb.rules.len();
        let mut candidates: Vec<BTreeMap<Word, F>> = self.inputs.remove(&d).unwrap_or_default();
        for (a, b, o) in self.pending.remove(&d).unwrap_or_default() {
            candidates.push(gb.s_polynomial(a, b, o));
        }
        let reduced = par::map(&candidates, |p| gb.reduce_internal(p.clone()));
        for rule in GroebnerBasis::echelonize(reduced) {
            gb.push_rule(rule);
        }
        gb.max_degree = d;
        let more: Vec<BTreeMap<Word, F>> = extra(gb, d).iter().map(|e| gb.internal_poly(e)).collect();
        if !more.is_empty() {
            let reduced = par::map(&more, |p| gb.reduce_internal(p.clone()));
            for rule in GroebnerBasis::echelonize(reduced) {
                gb.push_rule(rule);
            }
        }
        if gb.rules.len() > self.opts.max_rules {
            gb.partial = Some(format!("rule budget {} exceeded at degree {d}", self.opts.max_rules));
            return false;
        }
        for r in first_new..gb.rules.len() {
            for s in 0..gb.rules.len() {
                let mut pairs = vec![(r, s)];
                if s < first_new {
                    pairs.push((s, r));
                }
                for (a, b) in pairs {
                    for (o, deg) in gb.overlaps(a, b) {
                        if deg <= self.opts.max_degree {
                            self.pending.entry(deg).or_default().push((a, b, o));
                        }
                    }
                }
            }
        }
        self.done = d;
        true
    }

    /// Runs the remaining degrees and counts normal words.
    pub fn finish(mut self) -> GroebnerBasis<F> {
        while self.step(|_, _| Vec::new()) {}
        self.stop()
    }

    /// Stops at the current degree and counts normal words through it.
    pub fn stop(mut self) -> GroebnerBasis<F> {
        let done = self.done.min(self.opts.max_degree);
        self.gb.max_degree = done;
        self.gb.count_dims(done, self.opts.max_normal_words);
        self.gb
    }
}

impl<F: Scalar> GroebnerBasis<F> {
    pub fn compute(rank: usize, relations: &[TensorElement<F>], opts: &RewriteOptions) -> Result<Self> {
        Ok(Completion::new(rank, relations, opts)?.finish())
    }

    fn internal_poly(&self, e: &TensorElement<F>) -> BTreeMap<Word, F> {
        let mut out: BTreeMap<Word, F> = BTreeMap::new();
        for (w, c) in e.terms() {
            let iw: Word = w.iter().map(|&l| self.to_internal[l as usize]).collect();
            add_to(&mut out, iw, c.clone());
        }
        out
    }

    fn external_word(&self, w: &[u8]) -> Word {
        w.iter().map(|&l| self.to_external[l as usize]).collect()
    }

    fn push_rule(&mut self, rule: Rule<F>) {
        let len = rule.lead.len();
        if !self.lead_lengths.contains(&len) {
            self.lead_lengths.push(len);
            self.lead_lengths.sort_unstable();
        }
        self.lookup.insert(rule.lead.clone(), self.rules.len());
        self.rules.push(rule);
    }

    /// Overlaps `lead_a = p m`, `lead_b = m s` with `0 < |m| < min(|lead_a|, |lead_b|)`.
    fn overlaps(&self, a: usize, b: usize) -> Vec<(usize, usize)> {
        let la = &self.rules[a].lead;
        let lb = &self.rules[b].lead;
        let max_o = la.len().min(lb.len());
        (1..max_o).filter(|&o| la[la.len() - o..] == lb[..o]).map(|o| (o, la.len() + lb.len() - o)).collect()
    }

    /// `tail_a * s - p * tail_b` for the overlap `p m s`.
    fn s_polynomial(&self, a: usize, b: usize, o: usize) -> BTreeMap<Word, F> {
        let ra = &self.rules[a];
        let rb = &self.rules[b];
        let p = &ra.lead[..ra.lead.len() - o];
        let s = &rb.lead[o..];
        let mut out = BTreeMap::new();
        for (t, c) in &ra.tail {
            let mut w = t.clone();
            w.extend_from_slice(s);
            add_to(&mut out, w, c.clone());
        }
        for (t, c) in &rb.tail {
            let mut w = p.to_vec();
            w.extend_from_slice(t);
            add_to(&mut out, w, c.neg());
        }
        out
    }

    fn find_lead(&self, w: &[u8]) -> Option<(usize, usize)> {
        for &len in &self.lead_lengths {
            if len > w.len() {
                break;
            }
            for pos in 0..=w.len() - len {
                if let Some(&r) = self.lookup.get(&w[pos..pos + len]) {
                    return Some((pos, r));
                }
            }
        }
        None
    }

    /// Full reduction of a homogeneous polynomial in internal letters.
    fn reduce_internal(&self, mut p: BTreeMap<Word, F>) -> BTreeMap<Word, F> {
        let mut out = BTreeMap::new();
        while let Some((w, c)) = p.pop_last() {
            match self.find_lead(&w) {
                Some((pos, r)) => {
                    let rule = &self.rules[r];
                    let end = pos + rule.lead.len();
                    for (t, a) in &rule.tail {
                        let mut nw = Vec::with_capacity(w.len());
                        nw.extend_from_slice(&w[..pos]);
                        nw.extend_from_slice(t);
                        nw.extend_from_slice(&w[end..]);
                        add_to(&mut p, nw, c.mul(a));
                    }
                }
                None => {
                    out.insert(w, c);
                }
            }
        }
        out
    }

    /// Interreduces reduced candidates of one degree into new rules.
    fn echelonize(reduced: Vec<BTreeMap<Word, F>>) -> Vec<Rule<F>> {
        let mut words: Vec<Word> = reduced.iter().flat_map(|p| p.keys().cloned()).collect();
        if words.is_empty() {
            return Vec::new();
        }
        words.sort_unstable_by(|a, b| b.cmp(a));
        words.dedup();
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut ech = Echelon::new();
        for p in &reduced {
            if p.is_empty() {
                continue;
            }
            ech.insert(from_entries(p.iter().map(|(w, c)| (index[w], c.clone()))));
        }
        ech.into_rref()
            .into_iter()
            .map(|row| Rule {
                lead: words[row[0].0].clone(),
                tail: row[1..].iter().map(|(c, v)| (words[*c].clone(), v.neg())).collect(),
            })
            .collect()
    }

    fn count_dims(&mut self, completed: usize, max_words: usize) {
        let mut dims = vec![1usize];
        let mut level: Vec<Word> = vec![Vec::new()];
        let mut seen = 1usize;
        for _ in 0..completed {
            let mut next = Vec::new();
            for w in &level {
                for l in 0..self.rank as u8 {
                    let mut nw = w.clone();
                    nw.push(l);
                    if !self.ends_with_lead(&nw) {
                        next.push(nw);
                    }
                }
            }
            seen += next.len();
            if seen > max_words {
                self.partial = Some(format!("normal word budget {max_words} exceeded at degree {}", dims.len()));
                break;
            }
            dims.push(next.len());
            level = next;
        }
        self.dims = dims;
    }

    fn ends_with_lead(&self, w: &[u8]) -> bool {
        self.lead_lengths.iter().any(|&len| len <= w.len() && self.lookup.contains_key(&w[w.len() - len..]))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn map_coefficients<G: Scalar>(&self, f: impl Fn(&F) -> G) -> GroebnerBasis<G> {
        GroebnerBasis {
            rank: self.rank,
            max_degree: self.max_degree,
            rules: self
                .rules
                .iter()
                .map(|r| Rule { lead: r.lead.clone(), tail: r.tail.iter().map(|(w, c)| (w.clone(), f(c))).collect() })
                .collect(),
            lookup: self.lookup.clone(),
            lead_lengths: self.lead_lengths.clone(),
            to_internal: self.to_internal.clone(),
            to_external: self.to_external.clone(),
            dims: self.dims.clone(),
            partial: self.partial.clone(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims { dims: self.dims.clone(), partial: self.partial.clone() }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Rules in the caller's letters.
    pub fn rules(&self) -> Vec<Rule<F>> {
        self.rules
            .iter()
            .map(|r| Rule {
                lead: self.external_word(&r.lead),
                tail: r.tail.iter().map(|(w, c)| (self.external_word(w), c.clone())).collect(),
            })
            .collect()
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        let iw: Word = w.iter().map(|&l| self.to_internal[l as usize]).collect();
        self.find_lead(&iw).is_none()
    }

    /// Normal form of any element; exact for components of degree at most `max_degree`.
    pub fn reduce(&self, e: &TensorElement<F>) -> TensorElement<F> {
        let mut by_degree: BTreeMap<usize, BTreeMap<Word, F>> = BTreeMap::new();
        for (w, c) in e.terms() {
            let iw: Word = w.iter().map(|&l| self.to_internal[l as usize]).collect();
            add_to(by_degree.entry(w.len()).or_default(), iw, c.clone());
        }
        let mut out = TensorElement::zero();
        for (_, p) in by_degree {
            for (w, c) in self.reduce_internal(p) {
                out.add_term(self.external_word(&w), c);
            }
        }
        out
    }

    /// Normal words of length `d`, sorted in the caller's lexicographic order.
    pub fn normal_words(&self, d: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack: Vec<Word> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            if w.len() == d {
                out.push(self.external_word(&w));
                continue;
            }
            for l in 0..self.rank as u8 {
                let mut nw = w.clone();
                nw.push(l);
                if !self.ends_with_lead(&nw) {
                    stack.push(nw);
                }
            }
        }
        out.sort();
        out
    }
}

fn add_to<F: Scalar>(p: &mut BTreeMap<Word, F>, w: Word, c: F) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(slot) => {
            let s = slot.add(&c);
            if s.is_zero() {
                p.remove(&w);
            } else {
                *slot = s;
            }
        }
        None => {
            p.insert(w, c);
        }
    }
}

/// Hilbert series of `T(V) / <relations>` through `max_degree`.
pub fn rewrite_dims<F: Scalar>(rank: usize, relations: &[TensorElement<F>], opts: &RewriteOptions) -> Result<GradedDims> {
    Ok(GroebnerBasis::compute(rank, relations, opts)?.dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn poly(terms: &[(&[u8], i64)]) -> TensorElement<Q> {
        TensorElement::from_terms(terms.iter().map(|(w, c)| (w.to_vec(), Q::from_i64(*c))))
    }

    #[test]
    fn rank_one_square() {
        let dims = rewrite_dims(1, &[poly(&[(&[0, 0], 1)])], &RewriteOptions::with_max_degree(5)).unwrap();
        assert_eq!(dims.dims, vec![1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn commutative_polynomials() {
        // xy - yx gives the polynomial ring in two variables
        let dims = rewrite_dims(2, &[poly(&[(&[1, 0], 1), (&[0, 1], -1)])], &RewriteOptions::with_max_degree(5)).unwrap();
        assert_eq!(dims.dims, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn overlap_produces_new_rule() {
        // x^2 = xy, then x^3 reduces two ways and forces xy^2 - ... relations
        let rel = poly(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let rel2 = poly(&[(&[1, 1], 1)]);
        let gb = GroebnerBasis::compute(2, &[rel, rel2], &RewriteOptions::with_max_degree(4)).unwrap();
        // commutative ring with y^2 = 0: basis x^n, x^n y
        assert_eq!(gb.dims().dims, vec![1, 2, 2, 2, 2]);
        let e = poly(&[(&[1, 0, 1], 1)]);
        assert!(gb.reduce(&e).is_zero());
    }

    #[test]
    fn letter_order_does_not_change_dims() {
        let rels = [poly(&[(&[1, 0], 1), (&[0, 1], -1)]), poly(&[(&[0, 0, 1], 1), (&[1, 1, 1], 1)])];
        let a = rewrite_dims(2, &rels, &RewriteOptions::with_max_degree(6)).unwrap();
        let opts = RewriteOptions { letter_order: Some(vec![1, 0]), ..RewriteOptions::with_max_degree(6) };
        let b = rewrite_dims(2, &rels, &opts).unwrap();
        assert_eq!(a, b);
    }
}
