//! Symbolic free-group calculus: reduction, commutators `[u,v] = u⁻¹v⁻¹uv`,
//! the weight sets `W_i(X)` with their depths, the shift expansion of
//! iterated commutators `(a, b^{±1})_n`, and collection of a letter.

mod collect;
mod shift;
mod weights;

use std::fmt;

use crate::word::{self, Letter};

pub use collect::{collect_letter, commutator_factors, CollectionResult, CollectionStep};
pub use shift::{commutator_tower, shift_expand, ShiftLetter, ShiftWord, TowerLevel};
pub use weights::{
    depth_of_set, f_bound, verify_depth_bound, weight_sets, weight_sets_with_cap, DepthReport, DepthRow,
    WeightLevel, WeightSets, DEFAULT_WEIGHT_CAP,
};

/// A word over an abstract alphabet, not necessarily reduced.
///
/// Equality is letter-for-letter; compare [`FreeWord::reduced`] forms for
/// equality in the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn new(letters: Vec<Letter>) -> FreeWord {
        FreeWord(letters)
    }

    pub fn empty() -> FreeWord {
        FreeWord(Vec::new())
    }

    pub fn symbol(s: u16) -> FreeWord {
        FreeWord(vec![Letter::pos(s)])
    }

    /// Builds a word from signed exponents: `+s` is symbol `s-1`, `-s` its inverse.
    pub fn from_signed(xs: &[i32]) -> FreeWord {
        FreeWord(
            xs.iter()
                .map(|&x| {
                    assert!(x != 0);
                    Letter::new((x.unsigned_abs() - 1) as u16, x < 0)
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Letter count of this word as written.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        word::is_reduced(&self.0)
    }

    pub fn reduced(&self) -> FreeWord {
        FreeWord(word::reduce(&self.0))
    }

    /// `‖w‖`, the length of the reduced form.
    pub fn reduced_len(&self) -> usize {
        self.reduced().len()
    }

    pub fn is_trivial(&self) -> bool {
        self.reduced().is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(word::invert(&self.0))
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }

    /// Reduced product.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut v = word::reduce(&self.0);
        word::push_reduced(&mut v, other.0.iter().copied());
        FreeWord(v)
    }

    pub fn pow(&self, e: i64) -> FreeWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::new();
        for _ in 0..e.unsigned_abs() {
            word::push_reduced(&mut v, base.0.iter().copied());
        }
        FreeWord(v)
    }

    /// Signed number of occurrences of `s`.
    pub fn exponent_sum(&self, s: u16) -> i64 {
        self.0.iter().filter(|l| l.symbol == s).map(|l| l.sign()).sum()
    }

    pub fn render(&self, names: &[String]) -> String {
        word::render(&self.0, names)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "v{}", l.symbol)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

pub fn free_reduce(w: &FreeWord) -> FreeWord {
    w.reduced()
}

/// Reduced form of `u⁻¹v⁻¹uv`.
pub fn commutator(u: &FreeWord, v: &FreeWord) -> FreeWord {
    let mut out = word::reduce(&word::invert(&u.0));
    word::push_reduced(&mut out, word::invert(&v.0));
    word::push_reduced(&mut out, u.0.iter().copied());
    word::push_reduced(&mut out, v.0.iter().copied());
    FreeWord(out)
}

/// `λ_s(w)`: occurrences of `s^{±1}` in the word as written.
pub fn lambda_count(w: &FreeWord, s: u16) -> usize {
    w.0.iter().filter(|l| l.symbol == s).count()
}

/// The word `v⁻¹ w v`, written out letter for letter.
pub fn canonical_form(v: &FreeWord, w: &FreeWord) -> FreeWord {
    v.inverse().concat(w).concat(v)
}
