use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freecalc::f_bound;
use crate::hp::{self, Fixed};

/// Uniform lower bounds for groups whose relevant quotient is nilpotent of
/// class `d`: `ω ≥ 2^{1/α}` with `α = 3·4^{d+1}`, derived from the sharper
/// witness cost `β = 2f(2s)`, `s = d + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateBound {
    pub d: u32,
    pub s: u32,
    pub alpha: BigUint,
    pub beta: BigUint,
    pub omega_alpha: Fixed,
    pub omega_beta: Fixed,
}

#[derive(Serialize)]
struct RateBoundJson {
    d: u32,
    s: u32,
    alpha: serde_json::Number,
    beta: serde_json::Number,
    omega_alpha: serde_json::Number,
    omega_beta: serde_json::Number,
}

pub fn rate_bound(d: u32) -> Result<RateBound> {
    if d < 1 {
        return Err(Error::Precondition("nilpotency degree d must be >= 1".into()));
    }
    let s = d + 1;
    let alpha = BigUint::from(3u32) * (BigUint::one() << (2 * (d as usize + 1)));
    let beta = f_bound(2 * s) * 2u32;
    assert!(beta <= alpha, "beta = 2f(2s) must not exceed 3*4^(d+1)");
    let bits = hp::bits_for_digits(hp::DEFAULT_DIGITS);
    let two = BigUint::from(2u32);
    let omega_alpha = Fixed::root(&two, &alpha, bits);
    let omega_beta = Fixed::root(&two, &beta, bits);
    Ok(RateBound { d, s, alpha, beta, omega_alpha, omega_beta })
}

impl RateBound {
    pub fn to_json(&self) -> serde_json::Value {
        let num = |s: String| s.parse::<serde_json::Number>().expect("decimal literal");
        serde_json::to_value(RateBoundJson {
            d: self.d,
            s: self.s,
            alpha: num(self.alpha.to_string()),
            beta: num(self.beta.to_string()),
            omega_alpha: num(self.omega_alpha.to_decimal(12)),
            omega_beta: num(self.omega_beta.to_decimal(12)),
        })
        .expect("serializable")
    }
}
