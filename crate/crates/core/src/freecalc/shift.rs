use std::fmt;

use log::debug;

use super::{commutator, FreeWord};
use crate::error::{Error, Result};
use crate::word::Letter;

const A: u16 = 0;
const B: u16 = 1;

/// Largest tower height accepted by [`commutator_tower`].
const MAX_TOWER: usize = 24;

/// The letter `a_l^{±1}` where `a_l = b^{-l} a b^{l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShiftLetter {
    pub index: i64,
    pub inverse: bool,
}

/// A reduced word in the letters `a_l`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ShiftWord(pub Vec<ShiftLetter>);

impl ShiftWord {
    pub fn max_index(&self) -> i64 {
        self.0.iter().map(|l| l.index.abs()).max().unwrap_or(0)
    }

    /// Substitutes `a_l ↦ b^{-l} a b^{l}` and freely reduces.
    pub fn substitute(&self) -> FreeWord {
        let b = FreeWord::new(vec![Letter::pos(B)]);
        let mut out = FreeWord::empty();
        for l in &self.0 {
            let a = FreeWord::new(vec![Letter::new(A, l.inverse)]);
            let conj = b.pow(-l.index).mul(&a).mul(&b.pow(l.index));
            out = out.mul(&conj);
        }
        out
    }
}

impl fmt::Display for ShiftWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| format!("a_{}{}", l.index, if l.inverse { "^-1" } else { "" }))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Rewrites `c`, an element of the normal closure of `a` in `F(a, b)`
/// (symbols 0 and 1), as a word in the conjugates `a_l`. Fails if the
/// exponent sum of `b` is nonzero or some `|l|` exceeds `window`.
pub fn shift_expand(c: &FreeWord, window: i64) -> Result<ShiftWord> {
    if let Some(l) = c.letters().iter().find(|l| l.symbol > B) {
        return Err(Error::Precondition(format!("symbol {} outside the alphabet {{a, b}}", l.symbol)));
    }
    if c.exponent_sum(B) != 0 {
        return Err(Error::Precondition("exponent sum of b is nonzero".into()));
    }
    // a letter preceded by b-height h equals b^h a b^{-h} = a_{-h}
    let mut height = 0i64;
    let mut out: Vec<ShiftLetter> = Vec::new();
    for l in c.reduced().letters() {
        if l.symbol == B {
            height += l.sign();
            continue;
        }
        let index = -height;
        if index.abs() > window {
            return Err(Error::WindowExceeded { window, index });
        }
        let letter = ShiftLetter { index, inverse: l.inverse };
        match out.last() {
            Some(last) if last.index == index && last.inverse != l.inverse => {
                out.pop();
            }
            _ => out.push(letter),
        }
    }
    Ok(ShiftWord(out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub level: usize,
    pub words: Vec<FreeWord>,
    /// Freely trivial commutators excluded at this level.
    pub dropped: usize,
}

/// `(a, b^{±1})_1 = {[a,b], [a,b⁻¹]}` and
/// `(a, b^{±1})_{i+1} = {[c,b], [c,b⁻¹] : c ∈ (a, b^{±1})_i}` in `F(a, b)`.
pub fn commutator_tower(n: usize) -> Result<Vec<TowerLevel>> {
    if n == 0 {
        return Err(Error::Precondition("tower height must be >= 1".into()));
    }
    if n > MAX_TOWER {
        return Err(Error::CombinatorialCap { cap: 1 << MAX_TOWER, what: format!("tower of height {n}") });
    }
    let b = FreeWord::new(vec![Letter::pos(B)]);
    let bi = b.inverse();
    let mut levels: Vec<TowerLevel> = Vec::with_capacity(n);
    let mut current = vec![FreeWord::new(vec![Letter::pos(A)])];
    for level in 1..=n {
        let mut words = Vec::with_capacity(2 * current.len());
        let mut dropped = 0;
        for c in &current {
            for y in [&b, &bi] {
                let w = commutator(c, y);
                if w.is_empty() {
                    debug!("tower level {level}: dropped trivial commutator of {c}");
                    dropped += 1;
                } else {
                    words.push(w);
                }
            }
        }
        current = words.clone();
        levels.push(TowerLevel { level, words, dropped });
    }
    Ok(levels)
}
