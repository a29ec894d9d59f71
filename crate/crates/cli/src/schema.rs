//! JSON input formats. Indices (cones, form components) are 1-based, as
//! are the default variable names `z1 … zm`.
//!
//! ```json
//! {"rays": [[1,0],[0,1],[-1,-1]], "cones": [[1,2],[2,3],[3,1]]}
//! {"weights": [1,3,5]}
//! {"k": 1, "variables": ["x1","x2"], "coeffs": {"1": "-x2", "2": "x1"}}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use torfol::forms::KForm;
use torfol::ratmap::{MapFlags, RationalMapLifting};
use torfol::toric::Fan;
use torfol::QPoly;

use crate::error::CliError;
use crate::parse::{numbered, parse_polynomial};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Shortcut for a weighted projective space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<Vec<usize>>>,
    /// Rays are arbitrary generators (the variety is a quotient by a finite
    /// group, e.g. a fake weighted projective plane).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub generators: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
}

impl FanSpec {
    pub fn build(&self) -> Result<(Fan, Vec<String>), CliError> {
        let fan = match (&self.weights, &self.rays, &self.cones) {
            (Some(w), None, None) => Fan::weighted_projective(w)?,
            (None, Some(rays), Some(cones)) => {
                let mut zero_based = Vec::with_capacity(cones.len());
                for c in cones {
                    if c.iter().any(|i| *i == 0 || *i > rays.len()) {
                        return Err(CliError::Input(format!("cone {c:?} refers to a ray outside 1..{}", rays.len())));
                    }
                    zero_based.push(c.iter().map(|i| i - 1).collect());
                }
                if self.generators {
                    Fan::from_generators(rays.clone(), zero_based)?
                } else {
                    Fan::new(rays.clone(), zero_based)?
                }
            }
            _ => return Err(CliError::Input("a fan needs either `weights` or both `rays` and `cones`".into())),
        };
        let vars = match &self.variables {
            Some(v) if v.len() != fan.nrays() => {
                return Err(CliError::Input(format!("{} variable names for {} rays", v.len(), fan.nrays())));
            }
            Some(v) => v.clone(),
            None => numbered("z", fan.nrays(), 1),
        };
        Ok((fan, vars))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    /// `"i"` or `"i,j,…"` (1-based) to the coefficient of `dz_i ∧ dz_j ∧ …`.
    pub coeffs: BTreeMap<String, String>,
}

fn index_set(key: &str, m: usize, k: usize) -> Result<Vec<usize>, CliError> {
    let idx: Vec<usize> = key
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| CliError::Input(format!("bad component key `{key}`"))))
        .collect::<Result<_, _>>()?;
    if idx.len() != k || idx.iter().any(|i| *i == 0 || *i > m) {
        return Err(CliError::Input(format!("component key `{key}` is not a {k}-subset of 1..{m}")));
    }
    Ok(idx.into_iter().map(|i| i - 1).collect())
}

impl FormSpec {
    /// The form in `default_vars` unless the file names its own variables.
    pub fn build(&self, default_vars: &[String]) -> Result<(KForm, Vec<String>), CliError> {
        let vars = self.variables.clone().unwrap_or_else(|| default_vars.to_vec());
        if vars.len() != default_vars.len() {
            return Err(CliError::Input(format!("the form names {} variables, the fan has {}", vars.len(), default_vars.len())));
        }
        let m = vars.len();
        let mut terms = Vec::new();
        for (key, text) in &self.coeffs {
            let p = parse_polynomial(text, &vars).map_err(|e| CliError::Input(format!("coefficient `{key}`: {e}")))?;
            terms.push((index_set(key, m, self.k)?, p));
        }
        Ok((KForm::from_terms(m, self.k, terms)?, vars))
    }

    pub fn from_form(a: &KForm, vars: &[String]) -> FormSpec {
        let coeffs = a
            .terms()
            .into_iter()
            .map(|(idx, c)| {
                let key: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
                (key.join(","), crate::print::polynomial(c, vars))
            })
            .collect();
        FormSpec { k: a.k(), variables: Some(vars.to_vec()), coeffs }
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagSpec {
    #[serde(default)]
    pub complete: bool,
    #[serde(default)]
    pub flat_pullback: bool,
    /// The pair `(F, α)` is asserted generic; the decidable parts are
    /// checked and reported.
    #[serde(default)]
    pub generic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    /// Source variable names `x0 … xn`.
    pub source: Vec<String>,
    pub components: Vec<String>,
    #[serde(default)]
    pub flags: FlagSpec,
}

impl MapSpec {
    pub fn build(&self, target: Fan) -> Result<RationalMapLifting, CliError> {
        let comps = self.parse_components(&self.components, "F")?;
        let mut f = RationalMapLifting::new(comps, target)?;
        f.flags = MapFlags { complete: self.flags.complete, flat_pullback: self.flags.flat_pullback };
        Ok(f)
    }

    pub fn parse_components(&self, texts: &[String], label: &str) -> Result<Vec<QPoly>, CliError> {
        texts
            .iter()
            .enumerate()
            .map(|(i, t)| parse_polynomial(t, &self.source).map_err(|e| CliError::Input(format!("{label}{}: {e}", i + 1))))
            .collect()
    }
}

/// A first-order deformation `(F + εG, α + εη)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationSpec {
    pub g: Vec<String>,
    pub eta: FormSpec,
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}
