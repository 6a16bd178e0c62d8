use log::{debug, info};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Element, ElementSet, GeneratorWord, Realization};
use crate::growth::GrowthTable;
use crate::hp::{self, Fixed};
use crate::word::Letter;

/// Default cap on the number of evaluated witness words.
pub const DEFAULT_WITNESS_BUDGET: usize = 1 << 22;

/// Label attached to `omega_lower`: injectivity was verified only up to
/// `p_verified`, so the rate bound holds if the semigroup is free.
pub const OMEGA_LOWER_LABEL: &str = "certified-if-free";

/// Outcome of checking `t(α) = w^{α₁} v ⋯ w^{α_p} v` for injectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub v: GeneratorWord,
    pub w: GeneratorWord,
    /// `‖v‖ + ‖w‖` over freely reduced words.
    pub cost: usize,
    /// Largest `p` for which every `t(α)` with `|α| ≤ p` was distinct.
    pub p_verified: usize,
    pub injective: bool,
    /// `2^{1/cost}`; present only for injective certificates.
    pub omega_lower: Option<Fixed>,
    /// Largest `n` at which `gamma_lower(n) ≤ γ(n)` was checked against a
    /// measured table; 0 until [`WitnessCertificate::check_against`] runs.
    pub gamma_lower_checked: usize,
    /// First colliding pair `(α, β)` in generation order.
    pub collision: Option<(Vec<bool>, Vec<bool>)>,
}

impl WitnessCertificate {
    /// `2^{⌊n/cost⌋}`, valid for `n ≤ p_verified·cost`.
    pub fn gamma_lower(&self, n: usize) -> Option<BigUint> {
        if self.cost == 0 || n > self.p_verified * self.cost {
            return None;
        }
        Some(BigUint::one() << (n / self.cost))
    }

    /// Compares `gamma_lower` with a measured table and returns the radii
    /// where it exceeds `γ(n)`. On success `gamma_lower_checked` records the
    /// largest radius compared.
    pub fn check_against(&mut self, table: &GrowthTable) -> Vec<usize> {
        let mut bad = Vec::new();
        let mut last = 0;
        for n in 0..=table.radius() {
            if let Some(lb) = self.gamma_lower(n) {
                if lb > *table.gamma(n) {
                    bad.push(n);
                }
                last = n;
            }
        }
        if bad.is_empty() {
            self.gamma_lower_checked = self.gamma_lower_checked.max(last);
        }
        bad
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let bits = |a: &[bool]| a.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        let omega = self
            .omega_lower
            .as_ref()
            .map(|x| serde_json::Value::Number(x.to_decimal(12).parse().expect("decimal literal")));
        serde_json::to_value(CertificateJson {
            v: self.v.render(names),
            w: self.w.render(names),
            cost: self.cost,
            p_verified: self.p_verified,
            injective: self.injective,
            omega_lower: omega,
            omega_lower_label: self.omega_lower.as_ref().map(|_| OMEGA_LOWER_LABEL),
            gamma_lower_checked: self.gamma_lower_checked,
            collision: self.collision.as_ref().map(|(a, b)| [bits(a), bits(b)]),
        })
        .expect("serializable")
    }
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    v: String,
    w: String,
    cost: usize,
    p_verified: usize,
    injective: bool,
    omega_lower: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_lower_label: Option<&'a str>,
    gamma_lower_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    collision: Option<[String; 2]>,
}

/// Evaluates `t(α)` for a nonempty bit sequence.
pub fn t_alpha(r: &Realization, v: &GeneratorWord, w: &GeneratorWord, alpha: &[bool]) -> Result<Element> {
    if alpha.is_empty() {
        return Err(Error::Precondition("t(alpha) needs |alpha| >= 1".into()));
    }
    let ev = r.evaluate_word(v)?;
    let ewv = r.mul(&r.evaluate_word(w)?, &ev);
    Ok(alpha.iter().fold(r.identity(), |acc, &b| r.mul(&acc, if b { &ewv } else { &ev })))
}

pub fn verify_witness(r: &Realization, v: &GeneratorWord, w: &GeneratorWord, p_max: usize) -> Result<WitnessCertificate> {
    verify_witness_with_budget(r, v, w, p_max, DEFAULT_WITNESS_BUDGET)
}

/// Evaluates every `t(α)` with `1 ≤ |α| ≤ p_max` (lexicographic within each
/// length) and checks that all of them are pairwise distinct.
pub fn verify_witness_with_budget(
    r: &Realization,
    v: &GeneratorWord,
    w: &GeneratorWord,
    p_max: usize,
    budget: usize,
) -> Result<WitnessCertificate> {
    if p_max < 1 {
        return Err(Error::Precondition("p_max must be >= 1".into()));
    }
    let total = 1usize.checked_shl(p_max as u32 + 1).map(|x| x - 2).unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let ev = r.evaluate_word(v)?;
    let ewv = r.mul(&r.evaluate_word(w)?, &ev);
    let cost = v.reduced().len() + w.reduced().len();

    let mut seen = ElementSet::new(r);
    // parallel to `seen`: α of each stored element
    let mut alphas: Vec<Vec<bool>> = Vec::with_capacity(total);
    let mut level: Vec<usize> = vec![usize::MAX];
    let mut collision = None;
    let mut p_verified = 0;
    'grow: for p in 1..=p_max {
        let mut next = Vec::with_capacity(level.len() * 2);
        for &parent in &level {
            for bit in [false, true] {
                let (base, mut alpha) = if parent == usize::MAX {
                    (r.identity(), Vec::new())
                } else {
                    (seen.get(parent).clone(), alphas[parent].clone())
                };
                alpha.push(bit);
                let x = r.mul(&base, if bit { &ewv } else { &ev });
                match seen.insert(x) {
                    Ok(i) => {
                        alphas.push(alpha);
                        next.push(i);
                    }
                    Err(j) => {
                        debug!("t({:?}) collides with t({:?})", alpha, alphas[j]);
                        collision = Some((alphas[j].clone(), alpha));
                        break 'grow;
                    }
                }
            }
        }
        level = next;
        p_verified = p;
    }
    let injective = collision.is_none();
    let omega_lower = (injective && cost > 0).then(|| {
        Fixed::root(&BigUint::from(2u32), &BigUint::from(cost), hp::bits_for_digits(hp::DEFAULT_DIGITS))
    });
    Ok(WitnessCertificate {
        v: v.clone(),
        w: w.clone(),
        cost,
        p_verified,
        injective,
        omega_lower,
        gamma_lower_checked: 0,
        collision,
    })
}

/// Reduced nonempty words of length ≤ `max_len` in shortlex order over the
/// alphabet `x₀, x₀⁻¹, x₁, …`.
pub fn reduced_words(generators: usize, max_len: usize) -> Vec<GeneratorWord> {
    let alphabet: Vec<Letter> = (0..generators as u16).flat_map(|i| [Letter::pos(i), Letter::neg(i)]).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.last().is_some_and(|&last| last.cancels(l)) {
                    continue;
                }
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned().map(GeneratorWord));
        layer = next;
    }
    out
}

/// Searches pairs `(v, w)` of reduced words by increasing cost, ties broken
/// by shortlex position of `v` then `w`, and returns the first pair whose
/// `t(α)` stay distinct up to `p_max`.
pub fn witness_search(r: &Realization, max_word_len: usize, p_max: usize) -> Result<Option<WitnessCertificate>> {
    if max_word_len < 1 {
        return Err(Error::Precondition("max_word_len must be >= 1".into()));
    }
    let words = reduced_words(r.generator_count(), max_word_len);
    for cost in 2..=2 * max_word_len {
        for v in &words {
            let Some(wl) = cost.checked_sub(v.len()) else { continue };
            for w in words.iter().filter(|w| w.len() == wl) {
                let cert = verify_witness(r, v, w, p_max)?;
                if cert.injective {
                    info!("witness found: v = {}, w = {}", v.render(r.names()), w.render(r.names()));
                    return Ok(Some(cert));
                }
            }
        }
    }
    Ok(None)
}
