use log::info;
use num_bigint::BigUint;
use serde::Serialize;

use super::marked::{balls_isomorphic, marked_from_ball, MarkedBall};
use crate::cli::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::groups::{make_realization, Realization};
use crate::growth::{enumerate_ball_with, growth_table, EnumConfig, GrowthTable};
use crate::hp::{self, Fixed};

/// Largest `n ≤ max_radius` such that the radius-`n` balls are isomorphic,
/// or −1 when they already differ at radius 0.
pub fn convergence_radius_of(a: &MarkedBall, b: &MarkedBall) -> Result<i64> {
    let max = a.radius().min(b.radius());
    let mut last = -1;
    for n in 0..=max {
        if !balls_isomorphic(&a.restrict(n), &b.restrict(n))? {
            break;
        }
        last = n as i64;
    }
    Ok(last)
}

pub fn convergence_radius(a: &GroupSpec, b: &GroupSpec, max_radius: usize, config: EnumConfig) -> Result<i64> {
    let (ra, rb) = (make_realization(a)?, make_realization(b)?);
    same_alphabet(&ra, &rb)?;
    let ba = marked_from_ball(&enumerate_ball_with(&ra, max_radius, config)?);
    let bb = marked_from_ball(&enumerate_ball_with(&rb, max_radius, config)?);
    convergence_radius_of(&ba, &bb)
}

fn same_alphabet(a: &Realization, b: &Realization) -> Result<()> {
    if a.generator_count() != b.generator_count() {
        return Err(Error::Mismatch(format!(
            "{} has {} generators, {} has {}",
            a.label(),
            a.generator_count(),
            b.label(),
            b.generator_count()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximationRow {
    pub i: usize,
    pub group: String,
    pub conv_radius: i64,
    pub gamma_i_m: String,
    pub gamma_lim_m: String,
    /// `γ_i(m)^{1/m}` to 12 places.
    pub upper_i_m: String,
    /// The convergence radius is below `m`, so equality of γ is not implied.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproximationTable {
    pub limit: String,
    pub m: usize,
    pub rows: Vec<ApproximationRow>,
}

impl ApproximationTable {
    /// Rows whose convergence radius reaches `m` but whose γ differ.
    /// Always empty for correct ball enumeration.
    pub fn contradictions(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.conv_radius >= self.m as i64 && r.gamma_i_m != r.gamma_lim_m)
            .map(|r| r.i)
            .collect()
    }
}

/// For each group of the sequence: its convergence radius to the limit
/// (measured up to `m`), `γ_i(m)`, `γ_limit(m)` and `γ_i(m)^{1/m}`.
pub fn approximation_experiment(
    limit: &GroupSpec,
    sequence: &[GroupSpec],
    m: usize,
    config: EnumConfig,
) -> Result<ApproximationTable> {
    if m < 1 {
        return Err(Error::Precondition("m must be >= 1".into()));
    }
    let rl = make_realization(limit)?;
    let lim_ball = enumerate_ball_with(&rl, m, config)?;
    let lim_marked = marked_from_ball(&lim_ball);
    let gamma_lim = growth_table(&lim_ball).gamma(m).clone();
    let bits = hp::bits_for_digits(hp::DEFAULT_DIGITS);
    let mut rows = Vec::with_capacity(sequence.len());
    for (idx, spec) in sequence.iter().enumerate() {
        let r = make_realization(spec)?;
        same_alphabet(&rl, &r)?;
        let ball = enumerate_ball_with(&r, m, config)?;
        let conv_radius = convergence_radius_of(&marked_from_ball(&ball), &lim_marked)?;
        let table: GrowthTable = growth_table(&ball);
        let gamma = table.gamma(m).clone();
        let upper = Fixed::root(&gamma, &BigUint::from(m), bits);
        info!("{spec}: conv radius {conv_radius}, gamma({m}) = {gamma}");
        rows.push(ApproximationRow {
            i: idx + 1,
            group: spec.to_string(),
            conv_radius,
            gamma_i_m: gamma.to_string(),
            gamma_lim_m: gamma_lim.to_string(),
            upper_i_m: upper.to_decimal(12),
            flagged: conv_radius < m as i64,
        });
    }
    Ok(ApproximationTable { limit: limit.to_string(), m, rows })
}

/// `grigorchuk:` specs whose sequence agrees with `(012)*` on the first
/// `3i` symbols and continues with `0`.
pub fn grigorchuk_approximants(count: usize) -> Vec<GroupSpec> {
    (1..=count)
        .map(|i| GroupSpec::Grigorchuk { prefix: [0, 1, 2].repeat(i), period: vec![0] })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::spec::parse_spec;

    fn spec(s: &str) -> GroupSpec {
        parse_spec(s).unwrap()
    }

    #[test]
    fn z_versus_cycles() {
        let cfg = EnumConfig::default();
        assert_eq!(convergence_radius(&spec("z:1"), &spec("cyclic:6"), 5, cfg).unwrap(), 2);
        assert_eq!(convergence_radius(&spec("z:1"), &spec("cyclic:8"), 5, cfg).unwrap(), 3);
        assert_eq!(convergence_radius(&spec("z:1"), &spec("z:1"), 5, cfg).unwrap(), 5);
        assert_eq!(convergence_radius(&spec("z:1"), &spec("cyclic:1"), 3, cfg).unwrap(), -1);
        assert!(convergence_radius(&spec("z:1"), &spec("z:2"), 3, cfg).is_err());
    }

    #[test]
    fn constant_sequence_rows_identical() {
        let lim = spec("lamplighter:2");
        let t = approximation_experiment(&lim, &[lim.clone(), lim.clone()], 4, EnumConfig::default()).unwrap();
        assert_eq!(t.rows[0].conv_radius, 4);
        assert_eq!(
            (&t.rows[0].gamma_i_m, &t.rows[0].upper_i_m),
            (&t.rows[1].gamma_i_m, &t.rows[1].upper_i_m)
        );
        assert!(t.contradictions().is_empty());
        assert!(!t.rows[0].flagged);
    }

    #[test]
    fn approximant_specs() {
        let s = grigorchuk_approximants(2);
        assert_eq!(s[1].to_string(), "grigorchuk:012012(0)*");
    }
}
