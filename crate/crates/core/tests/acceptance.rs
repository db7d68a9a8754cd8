use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nichols_core::braided::build_diagonal;
use nichols_core::cohomology::{GradedBialgebraData, TrivialModule};
use nichols_core::config::shipped;
use nichols_core::fk::{build_fk, fk_dims, fk_rigidity};
use nichols_core::nichols::{nichols_dims, Quotient};
use nichols_core::relations::{check_prop_gchi, generate_relations, verdict_for, Family, Verdict};
use nichols_core::selfcheck::{self, DEFAULT_SEED};
use nichols_core::symmetric::{check_braided_lie, enveloping_dims, examples, scheunert_cocycle};
use nichols_core::weyl::enumerate_roots;
use nichols_core::{CycNumber, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z(n: u32, k: i64) -> CycNumber {
    CycNumber::root_of_unity(n, k)
}

/// Coefficients of `prod (1 + t^h + ... + t^{(m-1)h})` over `(h, m)`.
fn pbw_series(factors: &[(usize, usize)]) -> Vec<usize> {
    let top: usize = factors.iter().map(|(h, m)| h * (m - 1)).sum();
    let mut poly = vec![0usize; top + 1];
    poly[0] = 1;
    for &(h, m) in factors {
        let mut next = vec![0usize; top + 1];
        for (d, &c) in poly.iter().enumerate() {
            for k in 0..m {
                if d + k * h <= top {
                    next[d + k * h] += c;
                }
            }
        }
        poly = next;
    }
    poly
}

/// `1` while the numeric quantum factorial `(d)_q!` at `q = e^{2 pi i / n}` is nonzero.
fn rank_one_oracle(n: u32, max_degree: usize) -> Vec<usize> {
    let t = 2.0 * std::f64::consts::PI / n as f64;
    let mut fact = (1.0f64, 0.0f64);
    let mut out = vec![1];
    for d in 1..=max_degree {
        let (re, im) = (0..d).fold((0.0, 0.0), |(a, b), k| (a + (t * k as f64).cos(), b + (t * k as f64).sin()));
        fact = (fact.0 * re - fact.1 * im, fact.0 * im + fact.1 * re);
        out.push(usize::from(fact.0.hypot(fact.1) > 1e-9));
    }
    out
}

fn padded(mut v: Vec<usize>, len: usize) -> Vec<usize> {
    v.resize(len, 0);
    v
}

fn fk3() -> Outcome {
    let start = Instant::now();
    let fk = build_fk(3).map_err(|e| e.to_string())?;
    let sym = nichols_dims(&fk.space, 4);
    let rew = fk_dims(3, 4).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(sym.dims == vec![1, 3, 4, 3, 1], || format!("symmetrizer dims {:?}", sym.dims))?;
    ensure(rew.dims == sym.dims, || format!("rewriting dims {:?}", rew.dims))?;
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("dims {:?}, total {} by both engines in {elapsed:.2?}", sym.dims, sym.total()))
}

fn fk4() -> Outcome {
    let start = Instant::now();
    let dims = fk_dims(4, 12).map_err(|e| e.to_string())?;
    let expected = pbw_series(&[(1, 2), (1, 2), (1, 3), (1, 3), (1, 4), (1, 4)]);
    ensure(!dims.is_partial(), || format!("partial: {:?}", dims.partial))?;
    ensure(dims.dims == expected, || format!("dims {:?}", dims.dims))?;
    ensure(dims.total() == 576, || format!("total {}", dims.total()))?;
    Ok(format!("total {} through degree 12 in {:.2?}", dims.total(), start.elapsed()))
}

fn rank_one() -> Outcome {
    for n in [2u32, 3, 4, 6] {
        let v = build_diagonal(vec![vec![z(n, 1)]]).map_err(|e| e.to_string())?;
        let dims = nichols_dims(&v, n as usize).dims;
        let mut expected = vec![1; n as usize];
        expected.push(0);
        ensure(dims == expected && dims == rank_one_oracle(n, n as usize), || format!("N = {n}: {dims:?}"))?;
    }
    Ok("N = 2, 3, 4, 6: dims 1 in degrees 0..N-1 and 0 at N".into())
}

fn a2_at_cube_root() -> Outcome {
    let q = vec![vec![z(3, 1), z(3, 2)], vec![CycNumber::one(), z(3, 1)]];
    let v = build_diagonal(q.clone()).map_err(|e| e.to_string())?;
    let rs = enumerate_roots(&v, 64).map_err(|e| e.to_string())?;
    let roots: BTreeSet<Vec<i64>> = rs.roots().into_iter().collect();
    let expected: BTreeSet<Vec<i64>> = [vec![1, 0], vec![1, 1], vec![0, 1]].into_iter().collect();
    ensure(rs.finite && roots == expected, || format!("roots {roots:?}"))?;
    let mut factors = Vec::new();
    for a in &expected {
        let mut qa = CycNumber::one();
        for i in 0..2 {
            for j in 0..2 {
                qa = qa.mul(&q[i][j].pow(a[i] * a[j]));
            }
        }
        let order = (1..=12).find(|&m| qa.pow(m).is_one()).ok_or("root of infinite order")?;
        factors.push(((a[0] + a[1]) as usize, order as usize));
    }
    let dims = nichols_dims(&v, 8);
    let oracle = padded(pbw_series(&factors), 9);
    ensure(dims.dims == oracle, || format!("dims {:?} vs PBW {oracle:?}", dims.dims))?;
    ensure(dims.total() == 27, || format!("total {}", dims.total()))?;
    Ok(format!("positive roots {:?}, dims {:?}, total 27", rs.roots(), dims.dims))
}

fn gchi() -> Outcome {
    let mut instances = 0;
    let mut scalars = Vec::new();
    for (name, cfg) in shipped().into_iter().filter(|(_, c)| !c.is_fomin_kirillov()) {
        let v = cfg.space().map_err(|e| e.to_string())?;
        let rs = enumerate_roots(&v, 64).map_err(|e| e.to_string())?;
        ensure(rs.finite, || format!("{name}: root system not finite"))?;
        let rels = generate_relations(&v, &rs).map_err(|e| e.to_string())?;
        let real = cfg.realization(&v).map_err(|e| e.to_string())?;
        let q = v.q_matrix().map_err(|e| e.to_string())?.to_vec();
        for rep in check_prop_gchi(&real, &rels) {
            instances += 1;
            ensure(rep.ok, || format!("{name}: {} {:?} clashes", rep.family.name(), rep.participants))?;
            match rep.family {
                Family::TwoMinusOneVertices => {
                    ensure(rep.chi_r_g_r.is_one(), || format!("{name}: scalar {}", rep.chi_r_g_r))?;
                    scalars.push(format!("{}: chi_R(g_R) = 1", rep.family.name()));
                }
                Family::MinusOneVertex => {
                    let (i, k) = (rep.participants[0], rep.participants[2]);
                    ensure(rep.chi_r_g_r == q[i][i].mul(&q[k][k]), || format!("{name}: scalar {}", rep.chi_r_g_r))?;
                    scalars.push(format!("{}: chi_R(g_R) = q_ii q_kk", rep.family.name()));
                }
                _ => {}
            }
        }
    }
    scalars.sort();
    scalars.dedup();
    ensure(scalars.len() == 2, || format!("scalar witnesses seen: {scalars:?}"))?;
    Ok(format!("{instances} instances separated; {}", scalars.join("; ")))
}

fn rigidity() -> Outcome {
    let mut names = Vec::new();
    for (name, cfg) in shipped() {
        if let Some(n) = cfg.fomin_kirillov {
            let r = fk_rigidity(n).map_err(|e| e.to_string())?;
            ensure(r.rigid, || format!("{name}: not rigid"))?;
        } else {
            let v = cfg.space().map_err(|e| e.to_string())?;
            let rs = enumerate_roots(&v, 64).map_err(|e| e.to_string())?;
            let rels = generate_relations(&v, &rs).map_err(|e| e.to_string())?;
            let real = cfg.realization(&v).map_err(|e| e.to_string())?;
            for pre in [false, true] {
                let verdict = verdict_for(&real, &rels, pre).verdict;
                ensure(verdict == Verdict::Rigid, || format!("{name} (pre-Nichols {pre}): {verdict:?}"))?;
            }
        }
        names.push(name);
    }
    Ok(format!("rigid with and without pre-Nichols on {} configs", names.len()))
}

fn rank_one_algebras() -> Result<Vec<(String, GradedBialgebraData)>, String> {
    [2u32, 3, 4]
        .into_iter()
        .map(|n| {
            let v = build_diagonal(vec![vec![z(n, 1)]]).map_err(|e| e.to_string())?;
            let b = GradedBialgebraData::from_nichols(&v, n as usize + 1).map_err(|e| e.to_string())?;
            Ok((format!("k[x]/x^{n}"), b))
        })
        .collect()
}

fn truncated_cohomology() -> Outcome {
    let mut checked = 0;
    for (name, b) in rank_one_algebras()? {
        let top = b.top_degree() as i64;
        for ell in -2 * top..=-1 {
            let h = b.truncated_h2(ell).map_err(|e| e.to_string())?;
            ensure(h.cohomology == 0, || format!("{name}: H^2 in degree {ell} has dimension {}", h.cohomology))?;
            checked += 1;
        }
    }
    Ok(format!("H^2 vanishes in {checked} negative degrees across three algebras"))
}

fn epsilon_identity() -> Outcome {
    let mut algebras = rank_one_algebras()?;
    let fk = build_fk(3).map_err(|e| e.to_string())?;
    let q = Quotient::from_relations(&fk.space, &fk.relations, 6).map_err(|e| e.to_string())?;
    algebras.push(("FK3".into(), GradedBialgebraData::from_quotient(q).map_err(|e| e.to_string())?));
    let mut parts = Vec::new();
    for (name, b) in algebras {
        let u = TrivialModule::unit(&b);
        let m = b.kernel_m().map_err(|e| e.to_string())?;
        let lhs = b.epsilon_h2(&u).cohomology;
        let rhs = m.hom_dim(&u);
        ensure(m.agree() && lhs == rhs, || format!("{name}: H^2_eps = {lhs}, Hom(M, k) = {rhs}"))?;
        parts.push(format!("{name} {lhs}"));
    }
    Ok(format!("dim H^2_eps = dim Hom(M, k): {}", parts.join(", ")))
}

fn pbw() -> Outcome {
    let mut parts = Vec::new();
    for (name, l) in examples::shipped() {
        let e = enveloping_dims(&l, 4).map_err(|e| e.to_string())?;
        ensure(e.stable && e.matches_nichols(), || format!("{name}: {:?} vs {:?}", e.graded, e.nichols))?;
        parts.push(format!("{name} {:?}", e.graded));
    }
    Ok(parts.join("; "))
}

fn scheunert() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let element = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..2).map(|_| rng.gen_range(-6..=6)).collect() };
    let mut twisted = 0;
    for (name, l) in examples::shipped() {
        let Some((beta, _)) = &l.grading else { continue };
        let tw = scheunert_cocycle(beta).map_err(|e| format!("{name}: {e}"))?;
        ensure(tw.twisted.is_sign(), || format!("{name}: twisted bicharacter is not a sign"))?;
        if beta.rank() == 2 {
            for _ in 0..1000 {
                let (h, k, m) = (element(&mut rng), element(&mut rng), element(&mut rng));
                ensure(tw.sigma.cocycle_identity(&h, &k, &m), || format!("{name}: identity fails at {h:?} {k:?} {m:?}"))?;
            }
        }
        let before = check_braided_lie(&l).map_err(|e| e.to_string())?.holds();
        let after = l.twist(&tw.sigma).and_then(|t| check_braided_lie(&t)).map_err(|e| e.to_string())?.holds();
        ensure(before && after, || format!("{name}: axioms before {before}, after {after}"))?;
        twisted += 1;
    }
    Ok(format!("1000 random triples per Z^2 example; {twisted} graded examples twisted to signs with axioms intact"))
}

fn invariant_suite() -> Outcome {
    let start = Instant::now();
    let report = selfcheck::run(DEFAULT_SEED).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    ensure(failed.is_empty(), || format!("failed: {failed:?}"))?;
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{} checks green in {elapsed:.2?}", report.checks.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("FK3 total dimension 12", fk3),
        ("FK4 total dimension 576", fk4),
        ("rank-one Nichols dimensions", rank_one),
        ("A2 at a cube root of unity", a2_at_cube_root),
        ("(g_R, chi_R) separation", gchi),
        ("rigidity verdicts", rigidity),
        ("negative-degree H^2 vanishes", truncated_cohomology),
        ("epsilon-cohomology identity", epsilon_identity),
        ("PBW property", pbw),
        ("Scheunert twist", scheunert),
        ("selfcheck invariants", invariant_suite),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
