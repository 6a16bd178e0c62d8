use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ball::Ball;
use crate::error::{Error, Result};
use crate::hp::{self, Fixed};

/// Sphere and ball sizes `γ(0), …, γ(radius)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrowthTable {
    spheres: Vec<BigUint>,
    gamma: Vec<BigUint>,
}

impl GrowthTable {
    pub fn from_spheres(spheres: Vec<BigUint>) -> GrowthTable {
        assert!(!spheres.is_empty() && spheres[0].is_one(), "sphere 0 must be the identity");
        let mut acc = BigUint::zero();
        let gamma = spheres
            .iter()
            .map(|s| {
                acc += s;
                acc.clone()
            })
            .collect();
        GrowthTable { spheres, gamma }
    }

    /// Builds a table from cumulative counts; they must be non-decreasing
    /// and start at 1.
    pub fn from_gamma(gamma: Vec<BigUint>) -> GrowthTable {
        assert!(!gamma.is_empty() && gamma[0].is_one(), "gamma(0) must be 1");
        let mut spheres = vec![BigUint::one()];
        for w in gamma.windows(2) {
            assert!(w[1] >= w[0], "gamma must be non-decreasing");
            spheres.push(&w[1] - &w[0]);
        }
        GrowthTable { spheres, gamma }
    }

    pub fn radius(&self) -> usize {
        self.gamma.len() - 1
    }

    pub fn gamma(&self, n: usize) -> &BigUint {
        &self.gamma[n]
    }

    pub fn sphere(&self, n: usize) -> &BigUint {
        &self.spheres[n]
    }

    pub fn gammas(&self) -> &[BigUint] {
        &self.gamma
    }

    pub fn spheres(&self) -> &[BigUint] {
        &self.spheres
    }

    pub fn truncate(&self, radius: usize) -> GrowthTable {
        GrowthTable { spheres: self.spheres[..=radius].to_vec(), gamma: self.gamma[..=radius].to_vec() }
    }
}

/// Sphere sizes of an enumerated ball.
pub fn growth_table(b: &Ball) -> GrowthTable {
    let spheres = (0..=b.radius()).map(|d| BigUint::from(b.layer(d).len())).collect();
    GrowthTable::from_spheres(spheres)
}

/// Bounds on `ω(G, X)` derived from a growth table.
///
/// `upper(n) = min_{1≤k≤n} γ(k)^{1/k}` is a certified upper bound because γ
/// is submultiplicative; `naive(n) = γ(n)^{1/n}`. Vectors are indexed by
/// `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthEstimate {
    pub upper: Vec<Fixed>,
    pub naive: Vec<Fixed>,
    pub entropy_upper: Fixed,
    pub witness_lower: Option<Fixed>,
}

impl GrowthEstimate {
    pub fn upper(&self, n: usize) -> &Fixed {
        &self.upper[n - 1]
    }

    pub fn naive(&self, n: usize) -> &Fixed {
        &self.naive[n - 1]
    }

    pub fn radius(&self) -> usize {
        self.upper.len()
    }
}

pub fn omega_bounds(t: &GrowthTable) -> Result<GrowthEstimate> {
    omega_bounds_with_digits(t, hp::DEFAULT_DIGITS)
}

pub fn omega_bounds_with_digits(t: &GrowthTable, digits: u32) -> Result<GrowthEstimate> {
    if t.radius() < 1 {
        return Err(Error::Precondition("omega bounds need radius >= 1".into()));
    }
    let bits = hp::bits_for_digits(digits.max(12));
    let mut upper = Vec::with_capacity(t.radius());
    let mut naive = Vec::with_capacity(t.radius());
    let mut best_log: Option<Fixed> = None;
    for n in 1..=t.radius() {
        let log_root = Fixed::ln(t.gamma(n), bits).div_int(&BigUint::from(n));
        naive.push(log_root.exp());
        if best_log.as_ref().is_none_or(|b| log_root < *b) {
            best_log = Some(log_root);
        }
        upper.push(best_log.as_ref().expect("set above").exp());
    }
    Ok(GrowthEstimate {
        upper,
        naive,
        entropy_upper: best_log.expect("radius >= 1"),
        witness_lower: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubmultViolation {
    pub m: usize,
    pub n: usize,
    pub gamma_sum: String,
    pub product: String,
}

/// All pairs `1 ≤ m ≤ n`, `m + n ≤ radius` with `γ(m+n) > γ(m)·γ(n)`.
/// A correct table never produces one.
pub fn check_submultiplicative(t: &GrowthTable) -> Vec<SubmultViolation> {
    let r = t.radius();
    let mut out = Vec::new();
    for m in 1..=r / 2 {
        for n in m..=r - m {
            let product = t.gamma(m) * t.gamma(n);
            if *t.gamma(m + n) > product {
                out.push(SubmultViolation {
                    m,
                    n,
                    gamma_sum: t.gamma(m + n).to_string(),
                    product: product.to_string(),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub gamma_group: String,
    pub gamma_quotient: String,
    pub pointwise_ok: bool,
    pub upper_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    /// Radii where `γ_{G/R}(n) > γ_G(n)`.
    pub violations: Vec<usize>,
    pub holds: bool,
}

/// Compares a group against a declared quotient with matching generator
/// images: `γ_{G/R}(n) ≤ γ_G(n)` and hence `upper_{G/R}(n) ≤ upper_G(n)`.
pub fn compare_quotient(group: &GrowthTable, quotient: &GrowthTable) -> Result<ComparisonReport> {
    if group.radius() != quotient.radius() {
        return Err(Error::Mismatch(format!(
            "radius {} vs {}",
            group.radius(),
            quotient.radius()
        )));
    }
    let bounds = if group.radius() >= 1 {
        Some((omega_bounds(group)?, omega_bounds(quotient)?))
    } else {
        None
    };
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for n in 0..=group.radius() {
        let pointwise_ok = quotient.gamma(n) <= group.gamma(n);
        let upper_ok = match (&bounds, n) {
            (Some((g, q)), n) if n >= 1 => q.upper(n) <= g.upper(n),
            _ => true,
        };
        if !pointwise_ok {
            violations.push(n);
        }
        rows.push(ComparisonRow {
            n,
            gamma_group: group.gamma(n).to_string(),
            gamma_quotient: quotient.gamma(n).to_string(),
            pointwise_ok,
            upper_ok,
        });
    }
    let holds = violations.is_empty() && rows.iter().all(|r| r.upper_ok);
    Ok(ComparisonReport { rows, violations, holds })
}
