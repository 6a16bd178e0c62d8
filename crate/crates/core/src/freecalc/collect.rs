use super::{commutator, FreeWord};
use crate::error::{Error, Result};
use crate::word::Letter;

/// One non-target letter `a_i` and the factor `b_i` it picks up while the
/// target letters are moved past it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionStep {
    pub letter: Letter,
    /// Signed count `E_i` of target letters to the right of `a_i`.
    pub exponent: i64,
    /// `b_i = [a_i, v^{E_i}]`, reduced.
    pub factor: FreeWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionResult {
    pub target: u16,
    pub sigma: i64,
    /// `a_1 b_1 a_2 b_2 ⋯`, reduced.
    pub tail: FreeWord,
    pub trace: Vec<CollectionStep>,
}

impl CollectionResult {
    /// `v^σ · a_1 b_1 ⋯ a_m b_m`, reduced; equals the input in the free group.
    pub fn reassemble(&self) -> FreeWord {
        let v = FreeWord::symbol(self.target);
        let mut out = v.pow(self.sigma);
        for step in &self.trace {
            out = out.mul(&FreeWord::new(vec![step.letter])).mul(&step.factor);
        }
        out
    }
}

/// Moves every occurrence of `target^{±1}` to the left using
/// `xy = yx[x,y]`, scanning from right to left.
///
/// Writing `w = v^{e_0} a_1 v^{e_1} ⋯ a_m v^{e_m}` and
/// `E_i = e_i + ⋯ + e_m`, the result is
/// `w = v^{E_0} · a_1^{v^{E_1}} ⋯ a_m^{v^{E_m}}` with
/// `a^{v^E} = a·[a, v^E]`.
pub fn collect_letter(w: &FreeWord, target: u16) -> CollectionResult {
    let v = FreeWord::symbol(target);
    let mut suffix = 0i64;
    let mut trace = Vec::new();
    for &l in w.letters().iter().rev() {
        if l.symbol == target {
            suffix += l.sign();
        } else {
            let a = FreeWord::new(vec![l]);
            let factor = commutator(&a, &v.pow(suffix));
            trace.push(CollectionStep { letter: l, exponent: suffix, factor });
        }
    }
    trace.reverse();
    let mut tail = FreeWord::empty();
    for step in &trace {
        tail = tail.mul(&FreeWord::new(vec![step.letter])).mul(&step.factor);
    }
    CollectionResult { target, sigma: suffix, tail, trace }
}

/// Expands `[a, v^e]` as a product of iterated commutators: returns
/// `(height, c)` pairs with `c ∈ (a, v^{±1})_height`, `height ≤ |e|`,
/// whose product in order is `[a, v^e]`.
///
/// Uses `x^v = x[x,v]`, so `a^{v^e} = a · ∏ factors` with `2^{|e|} − 1`
/// factors; `limit` bounds that count.
pub fn commutator_factors(a: &FreeWord, target: u16, e: i64, limit: usize) -> Result<Vec<(usize, FreeWord)>> {
    let count = 1usize.checked_shl(e.unsigned_abs() as u32).map(|c| c - 1).unwrap_or(usize::MAX);
    if count > limit {
        return Err(Error::CombinatorialCap { cap: limit, what: format!("{count} factors for exponent {e}") });
    }
    let v = FreeWord::symbol(target).pow(e.signum());
    let mut factors: Vec<(usize, FreeWord)> = Vec::new();
    for _ in 0..e.unsigned_abs() {
        let mut next = vec![(1, commutator(a, &v))];
        for (h, f) in &factors {
            next.push((*h, f.clone()));
            next.push((h + 1, commutator(f, &v)));
        }
        factors = next;
    }
    Ok(factors)
}
