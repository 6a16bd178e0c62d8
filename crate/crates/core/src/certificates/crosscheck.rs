use serde::Serialize;

use super::bound::rate_bound;
use super::witness::{witness_search, WitnessCertificate};
use crate::error::Result;
use crate::groups::Realization;
use crate::growth::{enumerate_ball_with, growth_table, omega_bounds, EnumConfig};
use crate::hp::Fixed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CrosscheckStatus {
    Pass,
    Fail,
    /// No witness was found, so the group is not treated as metabelian
    /// non-polycyclic and nothing is asserted.
    NotApplicable,
}

/// Compares a realization against the uniform bound `ω ≥ 2^{1/48}` for
/// metabelian non-polycyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub threshold: Fixed,
    pub radius: usize,
    pub upper: Fixed,
    pub witness: Option<WitnessCertificate>,
    /// Radii where the certified `2^{⌊n/cost⌋}` exceeded the measured γ.
    pub gamma_violations: Vec<usize>,
    pub status: CrosscheckStatus,
}

impl CrosscheckReport {
    pub fn witness_margin(&self) -> Option<Fixed> {
        self.witness.as_ref()?.omega_lower.as_ref().map(|x| x.sub(&self.threshold))
    }

    pub fn upper_margin(&self) -> Fixed {
        self.upper.sub(&self.threshold)
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let num = |x: &Fixed| serde_json::Value::Number(x.to_decimal(12).parse().expect("decimal literal"));
        serde_json::json!({
            "status": self.status,
            "threshold": num(&self.threshold),
            "radius": self.radius,
            "upper": num(&self.upper),
            "upper_margin": num(&self.upper_margin()),
            "witness": self.witness.as_ref().map(|w| w.to_json(names)),
            "witness_margin": self.witness_margin().as_ref().map(num),
            "gamma_violations": self.gamma_violations,
        })
    }
}

pub fn crosscheck_metabelian(
    r: &Realization,
    radius: usize,
    max_word_len: usize,
    p_max: usize,
    config: EnumConfig,
) -> Result<CrosscheckReport> {
    let threshold = rate_bound(1)?.omega_alpha;
    let table = growth_table(&enumerate_ball_with(r, radius, config)?);
    let upper = omega_bounds(&table)?.upper(radius).clone();
    let mut witness = witness_search(r, max_word_len, p_max)?;
    let gamma_violations = witness.as_mut().map(|c| c.check_against(&table)).unwrap_or_default();
    let status = match &witness {
        None => CrosscheckStatus::NotApplicable,
        Some(c) => {
            let lower = c.omega_lower.as_ref().expect("search returns injective certificates");
            if *lower >= threshold && upper >= threshold && gamma_violations.is_empty() {
                CrosscheckStatus::Pass
            } else {
                CrosscheckStatus::Fail
            }
        }
    };
    Ok(CrosscheckReport { threshold, radius, upper, witness, gamma_violations, status })
}
