//! Finite generation of `H_{v,w} = ⟨v^{-l} w v^l : l ∈ ℤ⟩`.
//!
//! Write `c_l = v^{-l} w v^l` and `H_L = ⟨c_l : |l| ≤ L⟩`. If both `c_{L+1}`
//! and `c_{-L-1}` lie in `H_L`, conjugating by `v^{±1}` shows every `c_l` does,
//! so `H_{v,w} = H_L`.
//!
//! When `w` is a lamp-only element of a lamplighter group every `c_l` is
//! lamp-only, `H_L` is a subgroup of the abelian group `(ℤ/m)^{(ℤ)}`, and
//! membership is decided exactly by echelon reduction over ℤ modulo `m`.
//! Otherwise a bounded closure search can only prove stabilization.

use std::collections::BTreeSet;

use log::debug;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Element, ElementSet, GeneratorWord, Realization, WreathElement};

/// Default element budget per window for the closure search.
pub const DEFAULT_CLOSURE_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum StabilizationStatus {
    /// `H_{v,w} = H_L`, proven.
    Stabilized { at: usize },
    /// No window up to `up_to` was shown to contain its neighbours.
    NotStabilized { up_to: usize, budget_hit: bool },
    /// `H_{v,w}` is an infinite torsion abelian group, hence not finitely
    /// generated.
    ExactInfinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub v: GeneratorWord,
    pub w: GeneratorWord,
    pub l_tested: usize,
    pub mode: CheckMode,
    pub status: StabilizationStatus,
}

impl StabilizationReport {
    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        serde_json::json!({
            "v": self.v.render(names),
            "w": self.w.render(names),
            "l_tested": self.l_tested,
            "mode": self.mode,
            "result": self.status,
        })
    }
}

pub fn hvw_stabilization(r: &Realization, v: &GeneratorWord, w: &GeneratorWord, l_max: usize) -> Result<StabilizationReport> {
    hvw_stabilization_with(r, v, w, l_max, DEFAULT_CLOSURE_BUDGET, false)
}

/// Runs the exact procedure when it applies (unless `force_heuristic`) and
/// the closure search with `budget` elements per window otherwise.
pub fn hvw_stabilization_with(
    r: &Realization,
    v: &GeneratorWord,
    w: &GeneratorWord,
    l_max: usize,
    budget: usize,
    force_heuristic: bool,
) -> Result<StabilizationReport> {
    if l_max < 1 {
        return Err(Error::Precondition("L_max must be >= 1".into()));
    }
    let ev = r.evaluate_word(v)?;
    let ew = r.evaluate_word(w)?;
    let exact = match (&ev, &ew, r.modulus()) {
        (Element::Wreath(a), Element::Wreath(b), Some(m)) if b.is_lamp_only() && !force_heuristic => {
            Some(exact_status(a, b, m, l_max))
        }
        _ => None,
    };
    let (mode, status, l_tested) = match exact {
        Some((status, l)) => (CheckMode::Exact, status, l),
        None => {
            let (status, l) = closure_status(r, &ev, &ew, l_max, budget);
            (CheckMode::Heuristic, status, l)
        }
    };
    Ok(StabilizationReport { v: v.clone(), w: w.clone(), l_tested, mode, status })
}

fn conjugates(r: &Realization, v: &Element, w: &Element, l_max: usize) -> (Vec<Element>, Vec<Element>) {
    // pos[l] = c_l, neg[l] = c_{-l}, for l ≤ l_max + 1
    let vi = r.invert(v).expect("same realization");
    let (mut pos, mut neg) = (vec![w.clone()], vec![w.clone()]);
    for l in 1..=l_max + 1 {
        pos.push(r.mul(&r.mul(&vi, &pos[l - 1]), v));
        neg.push(r.mul(&r.mul(v, &neg[l - 1]), &vi));
    }
    (pos, neg)
}

fn lamp_vector(x: &Element) -> &WreathElement {
    match x {
        Element::Wreath(w) => w,
        _ => unreachable!("lamp vectors come from wreath elements"),
    }
}

fn exact_status(v: &WreathElement, w: &WreathElement, m: u32, l_max: usize) -> (StabilizationStatus, usize) {
    let r = Realization::lamplighter("hvw", m);
    let (pos, neg) = conjugates(&r, &Element::Wreath(v.clone()), &Element::Wreath(w.clone()), l_max);
    for l in 0..=l_max {
        let window: Vec<&WreathElement> = (0..=l)
            .map(|i| lamp_vector(&pos[i]))
            .chain((1..=l).map(|i| lamp_vector(&neg[i])))
            .collect();
        let up = lamp_span_contains(&window, lamp_vector(&pos[l + 1]), m);
        let down = lamp_span_contains(&window, lamp_vector(&neg[l + 1]), m);
        debug!("window {l}: c_{} in H: {up}, c_-{} in H: {down}", l + 1, l + 1);
        if up && down {
            return (StabilizationStatus::Stabilized { at: l }, l);
        }
    }
    // the conjugates are the translates of w by multiples of v's shift
    if v.shift != 0 && !w.lamps.is_empty() {
        (StabilizationStatus::ExactInfinite, l_max)
    } else {
        (StabilizationStatus::NotStabilized { up_to: l_max, budget_hit: false }, l_max)
    }
}

/// Whether `target` lies in the subgroup of `(ℤ/m)^{(ℤ)}` generated by the
/// lamp vectors of `gens`.
///
/// The subgroup is the image of the integer lattice spanned by `gens` and
/// `m·e_i`; the reduction eliminates one coordinate at a time, keeping the
/// gcd pivot and folding `(m/g)·pivot` back into the remaining rows.
pub fn lamp_span_contains(gens: &[&WreathElement], target: &WreathElement, m: u32) -> bool {
    let cols: Vec<i64> = gens
        .iter()
        .chain(std::iter::once(&target))
        .flat_map(|g| g.lamps.iter().map(|&(p, _)| p))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let m = i128::from(m);
    let dense = |w: &WreathElement| -> Vec<i128> {
        let mut row = vec![0i128; cols.len()];
        for &(p, val) in &w.lamps {
            row[cols.binary_search(&p).expect("column present")] = i128::from(val);
        }
        row
    };
    let mut rows: Vec<Vec<i128>> = gens.iter().map(|g| dense(g)).collect();
    let mut t = dense(target);
    let reduce = |row: &mut Vec<i128>, from: usize| {
        for x in &mut row[from..] {
            *x = x.rem_euclid(m);
        }
    };
    for j in 0..cols.len() {
        let mut pivot = vec![0i128; cols.len()];
        pivot[j] = m;
        let mut rest = Vec::with_capacity(rows.len() + 1);
        for mut row in rows {
            if row[j] == 0 {
                rest.push(row);
                continue;
            }
            let e = pivot[j].extended_gcd(&row[j]);
            let (pj, rj) = (pivot[j] / e.gcd, row[j] / e.gcd);
            let combined: Vec<i128> = pivot.iter().zip(&row).map(|(p, q)| e.x * p + e.y * q).collect();
            let mut killed: Vec<i128> = pivot.iter().zip(&row).map(|(p, q)| rj * p - pj * q).collect();
            pivot = combined;
            reduce(&mut pivot, j + 1);
            debug_assert_eq!(killed[j], 0);
            reduce(&mut killed, j + 1);
            row = killed;
            rest.push(row);
        }
        let g = pivot[j];
        let mut folded: Vec<i128> = pivot.iter().map(|p| p * (m / g)).collect();
        folded[j] = 0;
        reduce(&mut folded, j + 1);
        rest.push(folded);
        if t[j].rem_euclid(g) != 0 {
            return false;
        }
        let q = t[j] / g;
        for (x, p) in t.iter_mut().zip(&pivot) {
            *x -= q * p;
        }
        reduce(&mut t, j + 1);
        debug_assert_eq!(t[j], 0);
        rows = rest.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    }
    true
}

fn closure_status(r: &Realization, v: &Element, w: &Element, l_max: usize, budget: usize) -> (StabilizationStatus, usize) {
    let (pos, neg) = conjugates(r, v, w, l_max);
    let mut budget_hit = false;
    for l in 0..=l_max {
        let gens: Vec<Element> = (0..=l).map(|i| pos[i].clone()).chain((1..=l).map(|i| neg[i].clone())).collect();
        let targets = [&pos[l + 1], &neg[l + 1]];
        match closure_contains(r, &gens, &targets, budget) {
            Closure::Found => return (StabilizationStatus::Stabilized { at: l }, l),
            Closure::Exhausted => {}
            Closure::Budget => budget_hit = true,
        }
    }
    (StabilizationStatus::NotStabilized { up_to: l_max, budget_hit }, l_max)
}

enum Closure {
    Found,
    /// The generated subgroup is finite and misses a target.
    Exhausted,
    Budget,
}

/// Breadth-first closure of `⟨gens⟩` until every target is seen, the
/// subgroup is exhausted, or `budget` elements are stored.
fn closure_contains(r: &Realization, gens: &[Element], targets: &[&Element], budget: usize) -> Closure {
    let mut steps: Vec<Element> = Vec::with_capacity(2 * gens.len());
    for g in gens {
        steps.push(g.clone());
        steps.push(r.invert(g).expect("same realization"));
    }
    let mut set = ElementSet::new(r);
    let _ = set.insert(r.identity());
    let mut frontier = 0;
    let mut found = vec![false; targets.len()];
    loop {
        for (k, t) in targets.iter().enumerate() {
            found[k] = found[k] || set.find(t).is_some();
        }
        if found.iter().all(|&f| f) {
            return Closure::Found;
        }
        let end = set.len();
        if frontier == end {
            return Closure::Exhausted;
        }
        for i in frontier..end {
            for s in &steps {
                let y = r.mul(set.get(i), s);
                if set.insert(y).is_ok() && set.len() > budget {
                    return Closure::Budget;
                }
            }
        }
        frontier = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::spec::parse_spec;
    use crate::groups::make_realization;

    fn realize(s: &str) -> Realization {
        make_realization(&parse_spec(s).unwrap()).unwrap()
    }

    fn word(r: &Realization, s: &str) -> GeneratorWord {
        GeneratorWord::parse(s, r.names()).unwrap()
    }

    fn lamps(xs: &[(i64, u32)]) -> WreathElement {
        WreathElement { lamps: xs.to_vec(), shift: 0 }
    }

    #[test]
    fn span_membership_mod_2() {
        let a = lamps(&[(0, 1), (1, 1)]);
        let b = lamps(&[(1, 1), (2, 1)]);
        assert!(lamp_span_contains(&[&a, &b], &lamps(&[(0, 1), (2, 1)]), 2));
        assert!(!lamp_span_contains(&[&a, &b], &lamps(&[(0, 1)]), 2));
        assert!(lamp_span_contains(&[], &lamps(&[]), 2));
    }

    #[test]
    fn span_membership_composite_modulus() {
        // 2·e0 generates {0, 2} in ℤ/4; 3·e0 generates everything
        let two = lamps(&[(0, 2)]);
        assert!(!lamp_span_contains(&[&two], &lamps(&[(0, 1)]), 4));
        assert!(lamp_span_contains(&[&two], &lamps(&[(0, 2)]), 4));
        let mixed = lamps(&[(0, 2), (1, 1)]);
        // 2·(2,1) = (0,2)
        assert!(lamp_span_contains(&[&mixed], &lamps(&[(1, 2)]), 4));
        assert!(!lamp_span_contains(&[&mixed], &lamps(&[(1, 1)]), 4));
        let three = lamps(&[(0, 3)]);
        assert!(lamp_span_contains(&[&three], &lamps(&[(0, 1)]), 4));
    }

    #[test]
    fn lamplighter_is_infinite() {
        let r = realize("lamplighter:2");
        let rep = hvw_stabilization(&r, &word(&r, "t"), &word(&r, "a"), 10).unwrap();
        assert_eq!(rep.mode, CheckMode::Exact);
        assert_eq!(rep.status, StabilizationStatus::ExactInfinite);
    }

    #[test]
    fn identity_conjugator() {
        for spec in ["lamplighter:3", "free:2", "heisenberg", "grigorchuk:(012)*"] {
            let r = realize(spec);
            let w = GeneratorWord::new(vec![crate::word::Letter::pos(0)]);
            let rep = hvw_stabilization(&r, &GeneratorWord::empty(), &w, 3).unwrap();
            assert_eq!(rep.status, StabilizationStatus::Stabilized { at: 0 }, "{spec}");
        }
    }

    #[test]
    fn central_element() {
        let r = realize("heisenberg");
        let rep = hvw_stabilization(&r, &word(&r, "x"), &word(&r, "x^-1 y^-1 x y"), 4).unwrap();
        assert_eq!(rep.mode, CheckMode::Heuristic);
        assert_eq!(rep.status, StabilizationStatus::Stabilized { at: 0 });
    }

    #[test]
    fn heuristic_never_contradicts_exact() {
        let r = realize("lamplighter:2");
        let rep = hvw_stabilization_with(&r, &word(&r, "t"), &word(&r, "a"), 4, 2000, true).unwrap();
        assert_eq!(rep.mode, CheckMode::Heuristic);
        assert!(matches!(rep.status, StabilizationStatus::NotStabilized { .. }));
        let rep = hvw_stabilization_with(&r, &word(&r, "a"), &word(&r, "a"), 2, 2000, true).unwrap();
        assert_eq!(rep.status, StabilizationStatus::Stabilized { at: 0 });
    }

    #[test]
    fn free_group_is_not_stabilized() {
        let r = realize("free:2");
        let rep = hvw_stabilization_with(&r, &word(&r, "x"), &word(&r, "y"), 2, 5000, false).unwrap();
        assert_eq!(rep.status, StabilizationStatus::NotStabilized { up_to: 2, budget_hit: true });
    }
}
