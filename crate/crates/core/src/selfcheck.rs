//! The invariant suite behind `nichols selfcheck`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braided::{build_diagonal, BraidedSpace};
use crate::cohomology::GradedBialgebraData;
use crate::config;
use crate::error::Result;
use crate::exact::CycNumber;
use crate::fk::build_fk;
use crate::nichols::{ideal_component, nichols_dims, Quotient};
use crate::symmetric::{check_braided_lie, examples, scheunert_cocycle, AbelianBicharacter, GroupElement};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfCheck {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SelfCheck {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn record(out: &mut Vec<CheckResult>, name: String, r: Result<(bool, String)>) {
    let (passed, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    out.push(CheckResult { name, passed, detail });
}

/// Every braiding the project ships: the example configs and the braided Lie examples.
pub fn shipped_spaces() -> Result<Vec<(String, BraidedSpace)>> {
    let mut out = Vec::new();
    for (name, cfg) in config::shipped() {
        out.push((name.to_string(), cfg.space()?));
    }
    for (name, l) in examples::shipped() {
        out.push((format!("lie:{name}"), l.space()?));
    }
    Ok(out)
}

/// Small algebras on which the bialgebra differential is exercised.
pub fn cohomology_samples() -> Result<Vec<(String, GradedBialgebraData)>> {
    let mut out = Vec::new();
    for n in [2u32, 3, 4] {
        let v = build_diagonal(vec![vec![CycNumber::root_of_unity(n, 1)]])?;
        out.push((format!("rank1-order{n}"), GradedBialgebraData::from_nichols(&v, 2 * n as usize)?));
    }
    let fk = build_fk(3)?;
    out.push(("fk3".into(), GradedBialgebraData::from_quotient(Quotient::from_relations(&fk.space, &fk.relations, 6)?)?));
    Ok(out)
}

fn biideal_closure(space: &BraidedSpace, max_degree: usize) -> Result<(bool, String)> {
    let quotient = Quotient::from_nichols(space, max_degree)?;
    let mut checked = 0;
    for d in 2..=max_degree {
        for e in ideal_component(space, d)? {
            if !quotient.coproduct_vanishes(&e) {
                return Ok((false, format!("coproduct of a degree-{d} ideal element survives in B(V) (x) B(V)")));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} ideal basis elements in degrees 2..={max_degree}")))
}

fn random_element(rng: &mut ChaCha8Rng, rank: usize) -> GroupElement {
    (0..rank).map(|_| rng.gen_range(-6..=6)).collect()
}

/// Checks the right 2-cocycle identity of the Scheunert cocycle on random triples.
pub fn scheunert_random_triples(beta: &AbelianBicharacter, triples: usize, seed: u64) -> Result<(bool, String)> {
    let tw = scheunert_cocycle(beta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..triples {
        let (h, k, l) = (random_element(&mut rng, beta.rank()), random_element(&mut rng, beta.rank()), random_element(&mut rng, beta.rank()));
        if !tw.sigma.cocycle_identity(&h, &k, &l) {
            return Ok((false, format!("identity fails at {h:?}, {k:?}, {l:?}")));
        }
    }
    Ok((tw.twisted.is_sign(), format!("{triples} triples, twisted bicharacter is a sign bicharacter: {}", tw.twisted.is_sign())))
}

pub fn run(seed: u64) -> Result<SelfCheck> {
    let mut checks = Vec::new();
    let spaces = shipped_spaces()?;
    for (name, space) in &spaces {
        let c = space.check_braid_equation();
        let detail = match &c.counterexample {
            Some(w) => format!("fails on word {w:?}"),
            None => "holds on all basis triples".into(),
        };
        checks.push(CheckResult { name: format!("braid-equation {name}"), passed: c.holds, detail });
    }
    for (name, b) in cohomology_samples()? {
        let top = b.top_degree() as i64;
        let r = (|| {
            let mut cases = 0;
            for n in 2..=3 {
                for ell in -top..=-1 {
                    let dd = b.check_dd(n, ell)?;
                    if !dd.holds() {
                        return Ok((false, format!("d o d != 0 at n = {n}, degree {ell}")));
                    }
                    cases += 1;
                }
            }
            Ok((true, format!("{cases} (n, degree) cases")))
        })();
        record(&mut checks, format!("d-squared-zero {name}"), r);
    }
    for (name, cfg) in config::shipped() {
        let r = cfg.space().and_then(|s| biideal_closure(&s, 4));
        record(&mut checks, format!("biideal-closure {name}"), r);
    }
    for (name, space) in spaces.iter().filter(|(n, _)| !n.starts_with("lie:")) {
        let r = (|| {
            let sym = nichols_dims(space, 4).dims;
            let mut rew = Quotient::from_nichols(space, 4)?.dims().dims;
            rew.resize(sym.len(), 0);
            Ok((sym == rew, format!("symmetrizer {sym:?}, rewriting {rew:?}")))
        })();
        record(&mut checks, format!("hilbert-series-agree {name}"), r);
    }
    let beta = examples::color_bicharacter(&CycNumber::root_of_unity(3, 1));
    record(&mut checks, "scheunert-cocycle color".into(), scheunert_random_triples(&beta, 1000, seed));
    for (name, l) in examples::shipped() {
        let r = check_braided_lie(&l).map(|rep| (rep.holds(), "compat, anticomm, jacobi".to_string()));
        record(&mut checks, format!("braided-lie {name}"), r);
    }
    Ok(SelfCheck { seed, checks })
}
