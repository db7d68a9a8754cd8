//! JSON run configurations.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::braided::{build_diagonal, BraidedSpace};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Scalar};
use crate::fk::build_fk;
use crate::relations::Realization;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealizationSpec {
    Canonical,
    Separating,
    Cyclic {
        order: u64,
    },
    Explicit {
        moduli: Vec<u64>,
        g: Vec<Vec<i64>>,
        /// `chi[j][k]`: value of `chi_j` on the `k`-th generator of the group.
        chi: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    pub max_degree: usize,
    pub reflection_cap: u32,
    pub cartan_cap: u32,
    /// Largest number of words `theta^d` a symmetrizer pass may touch.
    pub memory_guard: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { max_degree: 8, reflection_cap: 64, cartan_cap: 50, memory_guard: 20_000_000 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// `q_ij = zeta_N^{a_ij}` with `N = cyclotomic_order`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_exponents: Option<Vec<Vec<i64>>>,
    /// Literals such as `"-1"`, `"zeta3^2"`, `"1/2 + zeta5"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_values: Option<Vec<Vec<String>>>,
    /// Builds the Fomin-Kirillov space on the transpositions of `S_n` instead of a diagonal one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fomin_kirillov: Option<usize>,
    #[serde(default = "default_realization")]
    pub realization: RealizationSpec,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub output: OutputMode,
}

fn default_realization() -> RealizationSpec {
    RealizationSpec::Separating
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config { field: field.into(), message: message.into() }
}

impl RunConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| field_err("<document>", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn diagonal(name: &str, q: Vec<Vec<String>>) -> RunConfig {
        RunConfig {
            name: Some(name.into()),
            cyclotomic_order: None,
            rank: Some(q.len()),
            q_exponents: None,
            q_values: Some(q),
            fomin_kirillov: None,
            realization: RealizationSpec::Separating,
            budgets: Budgets::default(),
            output: OutputMode::Text,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn is_fomin_kirillov(&self) -> bool {
        self.fomin_kirillov.is_some()
    }

    /// The q-matrix, with every entry checked.
    pub fn q_matrix(&self) -> Result<Vec<Vec<CycNumber>>> {
        let q: Vec<Vec<CycNumber>> = match (&self.q_exponents, &self.q_values) {
            (Some(_), Some(_)) => return Err(field_err("q_values", "give either q_exponents or q_values, not both")),
            (None, None) => return Err(field_err("q_exponents", "missing (or give q_values)")),
            (Some(a), None) => {
                let n = self.cyclotomic_order.ok_or_else(|| field_err("cyclotomic_order", "required with q_exponents"))?;
                if n == 0 {
                    return Err(field_err("cyclotomic_order", "must be positive"));
                }
                a.iter().map(|row| row.iter().map(|&e| CycNumber::root_of_unity(n, e)).collect()).collect()
            }
            (None, Some(v)) => {
                let mut rows = Vec::with_capacity(v.len());
                for (i, row) in v.iter().enumerate() {
                    let mut r = Vec::with_capacity(row.len());
                    for (j, s) in row.iter().enumerate() {
                        let x: CycNumber =
                            s.parse().map_err(|_| field_err(format!("q_values[{i}][{j}]"), format!("cannot parse `{s}`")))?;
                        if x.is_zero() {
                            return Err(field_err(format!("q_values[{i}][{j}]"), format!("q_{}{} must be nonzero", i + 1, j + 1)));
                        }
                        r.push(x);
                    }
                    rows.push(r);
                }
                rows
            }
        };
        let field = if self.q_exponents.is_some() { "q_exponents" } else { "q_values" };
        let theta = q.len();
        if theta == 0 {
            return Err(field_err(field, "empty matrix"));
        }
        if let Some(i) = q.iter().position(|r| r.len() != theta) {
            return Err(field_err(format!("{field}[{i}]"), format!("row has {} entries, expected {theta}", q[i].len())));
        }
        if let Some(r) = self.rank {
            if r != theta {
                return Err(field_err("rank", format!("rank {r} does not match a {theta}x{theta} matrix")));
            }
        }
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.fomin_kirillov {
            if self.q_exponents.is_some() || self.q_values.is_some() {
                return Err(field_err("fomin_kirillov", "cannot be combined with a q-matrix"));
            }
            if n < 3 {
                return Err(field_err("fomin_kirillov", format!("needs n >= 3, got {n}")));
            }
            if self.realization != RealizationSpec::Separating {
                return Err(field_err("realization", "realizations apply to diagonal braidings only"));
            }
        } else {
            let space = build_diagonal(self.q_matrix()?)?;
            self.realization(&space)?;
        }
        if self.budgets.reflection_cap == 0 {
            return Err(field_err("budgets.reflection_cap", "must be positive"));
        }
        if self.budgets.cartan_cap == 0 {
            return Err(field_err("budgets.cartan_cap", "must be positive"));
        }
        Ok(())
    }

    pub fn space(&self) -> Result<BraidedSpace> {
        match self.fomin_kirillov {
            Some(n) => Ok(build_fk(n)?.space),
            None => build_diagonal(self.q_matrix()?),
        }
    }

    pub fn realization(&self, space: &BraidedSpace) -> Result<Realization> {
        let wrap = |e: Error| match e {
            Error::Precondition(m) => field_err("realization", m),
            other => other,
        };
        match &self.realization {
            RealizationSpec::Canonical => Realization::canonical(space),
            RealizationSpec::Separating => Realization::separating(space),
            RealizationSpec::Cyclic { order } => Realization::cyclic(space, *order).map_err(wrap),
            RealizationSpec::Explicit { moduli, g, chi } => {
                let mut values = Vec::with_capacity(chi.len());
                for (j, row) in chi.iter().enumerate() {
                    let mut r = Vec::with_capacity(row.len());
                    for (k, s) in row.iter().enumerate() {
                        r.push(s.parse().map_err(|_| field_err(format!("realization.chi[{j}][{k}]"), format!("cannot parse `{s}`")))?);
                    }
                    values.push(r);
                }
                Realization::explicit(space, moduli.clone(), g.clone(), values).map_err(wrap)
            }
        }
    }
}

/// The example configurations under `configs/`.
pub const SHIPPED: &[(&str, &str)] = &[
    ("a2-zeta3", include_str!("../../../configs/a2-zeta3.json")),
    ("a3-zeta3", include_str!("../../../configs/a3-zeta3.json")),
    ("b2-zeta3", include_str!("../../../configs/b2-zeta3.json")),
    ("fk3", include_str!("../../../configs/fk3.json")),
    ("fk4", include_str!("../../../configs/fk4.json")),
    ("rank1-minus-one", include_str!("../../../configs/rank1-minus-one.json")),
    ("rank1-zeta3", include_str!("../../../configs/rank1-zeta3.json")),
    ("rank1-zeta4", include_str!("../../../configs/rank1-zeta4.json")),
    ("rank1-zeta6", include_str!("../../../configs/rank1-zeta6.json")),
    ("rank3-minus-one-vertex", include_str!("../../../configs/rank3-minus-one-vertex.json")),
    ("rank3-triangle", include_str!("../../../configs/rank3-triangle.json")),
    ("rank3-two-minus-one-vertices", include_str!("../../../configs/rank3-two-minus-one-vertices.json")),
    ("standard-b2", include_str!("../../../configs/standard-b2.json")),
    ("super-a2", include_str!("../../../configs/super-a2.json")),
];

/// Parsed [`SHIPPED`] configurations.
pub fn shipped() -> Vec<(&'static str, RunConfig)> {
    SHIPPED.iter().map(|(n, text)| (*n, RunConfig::from_json(text).expect("shipped config is valid"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_and_values_agree() {
        let a = RunConfig::from_json(r#"{"cyclotomic_order": 3, "rank": 2, "q_exponents": [[1, 2], [0, 1]]}"#).unwrap();
        let b = RunConfig::from_json(r#"{"q_values": [["zeta3", "zeta3^2"], ["1", "zeta3"]]}"#).unwrap();
        assert_eq!(a.q_matrix().unwrap(), b.q_matrix().unwrap());
    }

    #[test]
    fn zero_entry_names_the_field() {
        let err = RunConfig::from_json(r#"{"q_values": [["-1", "0"], ["1", "-1"]]}"#).unwrap_err();
        assert!(err.to_string().contains("q_values[0][1]"), "{err}");
    }

    #[test]
    fn rank_mismatch() {
        let err = RunConfig::from_json(r#"{"cyclotomic_order": 2, "rank": 3, "q_exponents": [[1]]}"#).unwrap_err();
        assert!(err.to_string().contains("rank"));
    }

    #[test]
    fn round_trip() {
        let a = RunConfig::from_json(r#"{"name": "fk3", "fomin_kirillov": 3, "budgets": {"max_degree": 4}}"#).unwrap();
        assert_eq!(RunConfig::from_json(&a.to_json()).unwrap(), a);
    }
}
