//! Letters and words over `X ∪ X⁻¹`, shared by the concrete realizations
//! and the symbolic free-group calculus.

use std::fmt;

/// A generator (or abstract symbol) together with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub symbol: u16,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(symbol: u16, inverse: bool) -> Self {
        Letter { symbol, inverse }
    }

    pub const fn pos(symbol: u16) -> Self {
        Letter { symbol, inverse: false }
    }

    pub const fn neg(symbol: u16) -> Self {
        Letter { symbol, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { symbol: self.symbol, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.symbol == other.symbol && self.inverse != other.inverse
    }

    /// Packs the letter into a single `u32`, used for canonical keys and ordering.
    pub fn code(self) -> u32 {
        (u32::from(self.symbol) << 1) | u32::from(self.inverse)
    }
}

/// Appends `letters` to an already reduced word, cancelling at the seam.
pub fn push_reduced(out: &mut Vec<Letter>, letters: impl IntoIterator<Item = Letter>) {
    for l in letters {
        match out.last() {
            Some(&last) if last.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
}

pub fn reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(letters.len());
    push_reduced(&mut out, letters.iter().copied());
    out
}

pub fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| !w[0].cancels(w[1]))
}

pub fn invert(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

/// Renders letters using the supplied symbol names; inverses become `name^-1`.
pub fn render(letters: &[Letter], names: &[String]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut s = String::new();
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        match names.get(usize::from(l.symbol)) {
            Some(n) => s.push_str(n),
            None => s.push_str(&format!("s{}", l.symbol)),
        }
        if l.inverse {
            s.push_str("^-1");
        }
    }
    s
}

pub struct Display<'a>(pub &'a [Letter], pub &'a [String]);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.0, self.1))
    }
}
