use std::collections::BTreeMap;

use nichols_core::braided::{BraidedSpace, BraidingKind};
use nichols_core::cohomology::{GradedBialgebraData, TrivialModule};
use nichols_core::config::RunConfig;
use nichols_core::fk::{build_fk, fk_dims, fk_rigidity, format_fk};
use nichols_core::nichols::{nichols_dims_with, Quotient};
use nichols_core::relations::{check_prop_gchi, generate_relations, rigidity_verdict, verify_presentation, Verdict};
use nichols_core::selfcheck;
use nichols_core::symmetric::{
    check_braided_lie, enveloping_dims, examples, scheunert_cocycle, sign_twist_verdict, AbelianBicharacter,
    BicharacterFile, BraidedLieData,
};
use nichols_core::weyl::{enumerate_roots_with, RootSystemData};
use nichols_core::{Error, Result};
use serde_json::{json, Value};

use crate::{Command, GlobalArgs, Outcome, Status};

fn done(results: Value) -> Outcome {
    Outcome { results, warnings: Vec::new(), status: Status::Done }
}

fn need<'a>(config: Option<&'a RunConfig>, command: &str) -> Result<&'a RunConfig> {
    config.ok_or_else(|| Error::Config { field: "--config".into(), message: format!("`{command}` needs a configuration file") })
}

fn roots_of(cfg: &RunConfig, space: &BraidedSpace) -> Result<RootSystemData> {
    enumerate_roots_with(space, cfg.budgets.reflection_cap as usize, cfg.budgets.cartan_cap)
}

fn fk_n(cfg: &RunConfig) -> Option<usize> {
    cfg.fomin_kirillov
}

pub fn run(command: &Command, config: Option<&RunConfig>, global: &GlobalArgs) -> Result<Outcome> {
    match command {
        Command::Diagram => diagram(need(config, "diagram")?),
        Command::Roots => roots(need(config, "roots")?),
        Command::Relations => relations(need(config, "relations")?),
        Command::Rigidity { pre_nichols } => rigidity(need(config, "rigidity")?, *pre_nichols),
        Command::Nichols { max_degree } => {
            let cfg = need(config, "nichols")?;
            nichols(cfg, max_degree.unwrap_or(cfg.budgets.max_degree))
        }
        Command::Rewrite { max_degree } => {
            let cfg = need(config, "rewrite")?;
            rewrite(cfg, max_degree.unwrap_or(cfg.budgets.max_degree))
        }
        Command::Cohomology { degree, epsilon } => cohomology(need(config, "cohomology")?, *degree, *epsilon),
        Command::Epsilon => epsilon(need(config, "epsilon")?),
        Command::Twist { bicharacter } => twist(bicharacter),
        Command::LieCheck { example } => lie_check(example.as_deref()),
        Command::Pbw { max_degree, example } => pbw(*max_degree, example.as_deref()),
        Command::Fk { n, max_degree, rigidity } => fk(*n, *max_degree, *rigidity),
        Command::Selfcheck => self_check(global.seed),
    }
}

fn diagram(cfg: &RunConfig) -> Result<Outcome> {
    let space = cfg.space()?;
    if space.kind() != BraidingKind::Diagonal {
        return Err(Error::NotDiagonal);
    }
    let d = space.dynkin_diagram()?;
    let cartan = space.cartan_matrix(cfg.budgets.cartan_cap)?;
    Ok(done(json!({
        "rank": space.rank(),
        "vertices": d.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "edges": d.edges.iter().map(|(i, j, v)| json!({"i": i + 1, "j": j + 1, "label": v.to_string()})).collect::<Vec<_>>(),
        "cartan_matrix": cartan,
    })))
}

fn roots(cfg: &RunConfig) -> Result<Outcome> {
    let space = cfg.space()?;
    let rs = roots_of(cfg, &space)?;
    let status = if rs.finite { Status::Done } else { Status::Partial };
    let mut warnings = rs.warnings.clone();
    if !rs.finite {
        warnings.push("root system not known to be finite within the budgets".into());
    }
    Ok(Outcome {
        results: json!({
            "finite": rs.finite,
            "count": rs.positive_roots.len(),
            "positive_roots": rs.positive_roots.iter().map(|r| json!({
                "root": r.root,
                "q_alpha": r.q_alpha.to_string(),
                "n_alpha": r.n_alpha,
                "cartan": rs.cartan_roots.contains(&r.root),
            })).collect::<Vec<_>>(),
            "groupoid_states": rs.states,
        }),
        warnings,
        status,
    })
}

fn relations(cfg: &RunConfig) -> Result<Outcome> {
    if let Some(n) = fk_n(cfg) {
        let fk = build_fk(n)?;
        let rels: Vec<String> = fk.relations.iter().map(|r| format_fk(&fk, r)).collect();
        return Ok(done(json!({ "count": rels.len(), "relations": rels })));
    }
    let space = cfg.space()?;
    let rs = roots_of(cfg, &space)?;
    let rels = generate_relations(&space, &rs)?;
    let real = cfg.realization(&space)?;
    let checks = check_prop_gchi(&real, &rels);
    let rows: Vec<Value> = rels
        .iter()
        .zip(&checks)
        .map(|(r, c)| {
            json!({
                "family": r.family.name(),
                "participants": r.participants_label(),
                "degree": r.degree,
                "chi_r_g_r": c.chi_r_g_r.to_string(),
                "separated": c.ok,
                "expression": r.expression,
                "flags": r.flags.join("; "),
            })
        })
        .collect();
    Ok(done(json!({ "count": rows.len(), "finite_root_system": rs.finite, "relations": rows })))
}

fn rigidity(cfg: &RunConfig, pre_nichols: bool) -> Result<Outcome> {
    if let Some(n) = fk_n(cfg) {
        let r = fk_rigidity(n)?;
        let status = if r.rigid { Status::Done } else { Status::Partial };
        return Ok(Outcome {
            results: json!({
                "verdict": if r.rigid { "rigid" } else { "not-decided" },
                "n": n,
                "generators_have_transposition_degree": r.generators_have_transposition_degree,
                "relations": r.relations,
            }),
            warnings: Vec::new(),
            status,
        });
    }
    let space = cfg.space()?;
    let rs = roots_of(cfg, &space)?;
    let mut warnings = Vec::new();
    if !rs.finite {
        warnings.push("root system not known to be finite; the catalog may be incomplete".into());
    }
    let real = cfg.realization(&space)?;
    let report = rigidity_verdict(&space, &rs, &real, pre_nichols)?;
    let failing: Vec<Value> = report
        .failing
        .iter()
        .map(|&i| {
            let r = &report.instances[i];
            json!({"family": r.family.name(), "degree": r.degree, "chi_r_g_r": r.chi_r_g_r.to_string()})
        })
        .collect();
    let rigid = report.verdict == Verdict::Rigid && rs.finite;
    Ok(Outcome {
        results: json!({
            "verdict": report.verdict,
            "pre_nichols": pre_nichols,
            "realization": report.realization,
            "relations_checked": report.instances.len(),
            "failing": failing,
        }),
        warnings,
        status: if rigid { Status::Done } else { Status::Partial },
    })
}

fn dims_json(dims: &[usize]) -> Value {
    json!({ "dims": dims, "total": dims.iter().sum::<usize>() })
}

fn nichols(cfg: &RunConfig, max_degree: usize) -> Result<Outcome> {
    let space = cfg.space()?;
    let nd = nichols_dims_with(&space, max_degree, cfg.budgets.memory_guard);
    let mut results = dims_json(&nd.dims);
    results["vanishes_at_top"] = json!(nd.dims.last() == Some(&0));
    Ok(match nd.partial {
        Some(reason) => Outcome { results, warnings: vec![format!("partial: {reason}")], status: Status::Partial },
        None => done(results),
    })
}

fn rewrite(cfg: &RunConfig, max_degree: usize) -> Result<Outcome> {
    if let Some(n) = fk_n(cfg) {
        let d = fk_dims(n, max_degree)?;
        let mut results = dims_json(&d.dims);
        results["n"] = json!(n);
        return Ok(match d.partial {
            Some(reason) => Outcome { results, warnings: vec![format!("partial: {reason}")], status: Status::Partial },
            None => done(results),
        });
    }
    let space = cfg.space()?;
    let rs = roots_of(cfg, &space)?;
    let rels = generate_relations(&space, &rs)?;
    let check = verify_presentation(&space, &rels, max_degree)?;
    let mut warnings = Vec::new();
    for &i in &check.unconstructed {
        warnings.push(format!("{} {}: element not constructed", rels[i].family.name(), rels[i].participants_label()));
    }
    if let Some(d) = check.first_mismatch {
        warnings.push(format!("relations do not present B(V): first mismatch in degree {d}"));
    }
    Ok(Outcome {
        results: json!({
            "max_degree": max_degree,
            "relations": rels.len(),
            "quotient": dims_json(&check.quotient),
            "nichols": dims_json(&check.nichols),
            "presents_nichols": check.holds(),
        }),
        status: if check.holds() { Status::Done } else { Status::Partial },
        warnings,
    })
}

fn bialgebra(cfg: &RunConfig) -> Result<GradedBialgebraData> {
    match fk_n(cfg) {
        Some(n) => {
            let fk = build_fk(n)?;
            GradedBialgebraData::from_quotient(Quotient::from_relations(&fk.space, &fk.relations, cfg.budgets.max_degree)?)
        }
        None => GradedBialgebraData::from_nichols(&cfg.space()?, cfg.budgets.max_degree),
    }
}

fn epsilon_json(b: &GradedBialgebraData) -> Result<Value> {
    let u = TrivialModule::unit(b);
    let eps = b.epsilon_h2(&u);
    let m = b.kernel_m()?;
    let by_degree: BTreeMap<String, usize> = m.dims_by_degree().into_iter().map(|(d, n)| (d.to_string(), n)).collect();
    Ok(json!({
        "h2_epsilon": eps,
        "m_dims_by_degree": by_degree,
        "m_computations_agree": m.agree(),
        "hom_m_k": m.hom_dim(&u),
        "identity_holds": m.agree() && m.hom_dim(&u) == eps.cohomology,
    }))
}

fn cohomology(cfg: &RunConfig, degree: Option<i64>, with_epsilon: bool) -> Result<Outcome> {
    let b = bialgebra(cfg)?;
    let top = b.top_degree() as i64;
    let degrees: Vec<i64> = match degree {
        Some(d) => vec![d],
        None => (1..=2 * top).map(|l| -l).collect(),
    };
    let mut rows = Vec::new();
    for &ell in &degrees {
        rows.push(b.truncated_h2(ell)?);
    }
    let vanishing = rows.iter().all(|h| h.cohomology == 0);
    let mut results = json!({
        "dim": b.dim(),
        "top_degree": top,
        "convention": "H^2 of the truncated bialgebra complex, read as H^3 of the total complex",
        "degrees": rows,
        "vanishes": vanishing,
    });
    if with_epsilon {
        results["epsilon"] = epsilon_json(&b)?;
    }
    Ok(Outcome {
        status: if vanishing { Status::Done } else { Status::Partial },
        warnings: if vanishing { Vec::new() } else { vec!["nonzero cohomology in a negative degree".into()] },
        results,
    })
}

fn epsilon(cfg: &RunConfig) -> Result<Outcome> {
    let b = bialgebra(cfg)?;
    let results = epsilon_json(&b)?;
    let ok = results["identity_holds"].as_bool() == Some(true);
    Ok(Outcome { results, warnings: Vec::new(), status: if ok { Status::Done } else { Status::Failed } })
}

fn table(b: &AbelianBicharacter) -> Vec<Vec<String>> {
    b.values().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
}

fn twist(path: &std::path::Path) -> Result<Outcome> {
    let text = std::fs::read_to_string(path)?;
    let file: BicharacterFile =
        serde_json::from_str(&text).map_err(|e| Error::Config { field: "<bicharacter>".into(), message: e.to_string() })?;
    let beta = AbelianBicharacter::from_file(&file)?;
    let tw = scheunert_cocycle(&beta)?;
    let generators: Vec<Vec<i64>> = (0..beta.rank()).map(|i| beta.generator(i)).collect();
    let verdict = sign_twist_verdict(&beta, &generators)?;
    Ok(done(json!({
        "orders": beta.orders(),
        "beta": table(&beta),
        "sigma": table(&tw.sigma),
        "beta_sigma": table(&tw.twisted),
        "sign_bicharacter": tw.twisted.is_sign(),
        "odd_generators": verdict.odd,
    })))
}

fn pick(example: Option<&str>) -> Result<Vec<(&'static str, BraidedLieData)>> {
    let all = examples::shipped();
    match example {
        None => Ok(all),
        Some(name) => {
            let names: Vec<&str> = all.iter().map(|(n, _)| *n).collect();
            let found: Vec<_> = all.into_iter().filter(|(n, _)| *n == name).collect();
            if found.is_empty() {
                return Err(Error::Config { field: "--example".into(), message: format!("unknown example `{name}`; known: {}", names.join(", ")) });
            }
            Ok(found)
        }
    }
}

fn lie_check(example: Option<&str>) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut all = true;
    for (name, l) in pick(example)? {
        let r = check_braided_lie(&l)?;
        let twisted = match &l.grading {
            Some((beta, _)) => match scheunert_cocycle(beta) {
                Ok(tw) => Some(check_braided_lie(&l.twist(&tw.sigma)?)?.holds()),
                Err(_) => None,
            },
            None => None,
        };
        all &= r.holds() && twisted != Some(false);
        let witnesses: Vec<String> =
            r.compat.witnesses.iter().chain(&r.anticomm.witnesses).chain(&r.jacobi.witnesses).cloned().collect();
        rows.push(json!({
            "example": name,
            "dim": l.dim(),
            "compat": r.compat.holds,
            "anticomm": r.anticomm.holds,
            "jacobi": r.jacobi.holds,
            "after_sign_twist": twisted,
            "witnesses": witnesses.join("; "),
        }));
    }
    Ok(Outcome { results: json!({ "examples": rows }), warnings: Vec::new(), status: if all { Status::Done } else { Status::Failed } })
}

fn pbw(max_degree: usize, example: Option<&str>) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut all = true;
    for (name, l) in pick(example)? {
        let e = enveloping_dims(&l, max_degree)?;
        if !e.stable {
            warnings.push(format!("{name}: filtration not stable under further saturation"));
        }
        all &= e.matches_nichols() && e.stable;
        rows.push(json!({
            "example": name,
            "filtered": e.filtered,
            "gr_u": e.graded,
            "nichols": e.nichols,
            "match": e.matches_nichols(),
        }));
    }
    Ok(Outcome {
        results: json!({ "max_degree": max_degree, "examples": rows }),
        warnings,
        status: if all { Status::Done } else { Status::Partial },
    })
}

fn fk(n: usize, max_degree: usize, with_rigidity: bool) -> Result<Outcome> {
    let d = fk_dims(n, max_degree)?;
    let mut results = json!({
        "n": n,
        "table": d.dims.iter().enumerate().map(|(k, v)| json!({"degree": k, "dim": v})).collect::<Vec<_>>(),
        "dims": d.dims,
        "total": d.total(),
    });
    let mut status = Status::Done;
    let mut warnings = Vec::new();
    if let Some(reason) = &d.partial {
        warnings.push(format!("partial: {reason}"));
        status = Status::Partial;
    }
    if with_rigidity {
        let r = fk_rigidity(n)?;
        results["rigid"] = json!(r.rigid);
        if !r.rigid {
            status = Status::Partial;
        }
    }
    Ok(Outcome { results, warnings, status })
}

fn self_check(seed: u64) -> Result<Outcome> {
    let r = selfcheck::run(seed)?;
    let passed = r.passed();
    Ok(Outcome {
        results: json!({ "seed": r.seed, "passed": passed, "checks": r.checks }),
        warnings: Vec::new(),
        status: if passed { Status::Done } else { Status::Failed },
    })
}
