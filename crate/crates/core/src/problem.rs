//! JSON problem descriptions.
//!
//! ```json
//! {
//!   "d": 3,
//!   "flavor": "SO0",
//!   "highest_weight": ["2", "1"],
//!   "cusps": {"kappa": 1, "torus_volumes": [1.0]},
//!   "truncation_Ys": [1.0, 2.718281828459045, 10.0],
//!   "options": {"t": [0.25, 1.0], "u": 1.0, "tolerance": 1e-9}
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::assembler::CuspGeometry;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weights::{Flavor, GroupDatum, HighestWeight, WeightContext};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cusps {
    pub kappa: u64,
    pub torus_volumes: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub d: i64,
    pub flavor: String,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub highest_weight: Vec<Rational>,
    pub cusps: Cusps,
    #[serde(rename = "truncation_Ys", default)]
    pub truncation_ys: Vec<f64>,
    #[serde(default)]
    pub options: ProblemOptions,
}

/// Validated form of a [`ProblemSpec`].
#[derive(Debug, Clone)]
pub struct Problem {
    pub group: GroupDatum,
    pub weight: HighestWeight,
    pub geometry: CuspGeometry,
    pub options: ProblemOptions,
}

/// Upper bound on accepted problem text, in bytes.
const MAX_PROBLEM_BYTES: usize = 1 << 20;

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        if text.len() > MAX_PROBLEM_BYTES {
            return Err(Error::ResourceLimit {
                what: "problem size in bytes",
                requested: text.len(),
                limit: MAX_PROBLEM_BYTES,
            });
        }
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serialises")
    }

    pub fn validate(&self) -> Result<Problem> {
        let flavor: Flavor = self.flavor.parse()?;
        let group = GroupDatum::new(self.d, flavor)?;
        if self.highest_weight.len() != group.n() + 1 {
            return Err(Error::DimensionMismatch {
                expected: group.n() + 1,
                found: self.highest_weight.len(),
            });
        }
        let weight = HighestWeight::new(self.highest_weight.clone(), WeightContext::G, flavor)?;
        let geometry = CuspGeometry::new(
            self.cusps.kappa,
            self.cusps.torus_volumes.clone(),
            self.truncation_ys.clone(),
        )?;
        if let Some(ts) = &self.options.t {
            if let Some(t) = ts.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
                return Err(Error::Domain(format!("heat time {t} must be positive")));
            }
        }
        if let Some(u) = self.options.u {
            if !(u.is_finite() && u > 0.0) {
                return Err(Error::Domain(format!("cut height {u} must be positive")));
            }
        }
        if let Some(tol) = self.options.tolerance {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::Domain(format!("tolerance {tol} must be positive")));
            }
        }
        Ok(Problem {
            group,
            weight,
            geometry,
            options: self.options.clone(),
        })
    }
}
