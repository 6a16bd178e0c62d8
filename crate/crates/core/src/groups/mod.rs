//! Concrete realizations of finitely generated groups with exact arithmetic.
//!
//! Four payload families are supported:
//!
//! * invertible matrices over ℚ (`z`, `cyclic`, `heisenberg`, `bs`, `matrix`),
//! * lamplighter pairs `(f, k)` in ℤ/m ≀ ℤ,
//! * freely reduced words (`free`),
//! * reduced words in the Grigorchuk family `G_ω`.
//!
//! For the first three, payload equality is group equality and
//! [`Realization::canonical_key`] is injective. Grigorchuk elements are
//! compared by the contraction recursion and their key is only a coarse
//! portrait; callers must resolve key collisions with [`Realization::equal`].

pub mod grigorchuk;
pub mod matrix;
pub mod set;
pub mod wreath;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Deserialize;

use crate::cli::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::word::{self, Letter};

pub use grigorchuk::Sequence;
pub use matrix::Matrix;
pub use set::ElementSet;
pub use wreath::WreathElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Matrix(Matrix),
    Wreath(WreathElement),
    Free(Vec<Letter>),
    Tree(Vec<u8>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindTag {
    Matrix,
    Wreath,
    Free,
    Tree,
}

#[derive(Clone, Debug)]
enum Body {
    Matrix { dim: usize },
    Wreath { modulus: u32 },
    Free { rank: usize },
    Tree { seq: Sequence, offset: usize },
}

/// A word over generator indices and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorWord(pub Vec<Letter>);

impl GeneratorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GeneratorWord(letters)
    }

    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reduced(&self) -> GeneratorWord {
        GeneratorWord(word::reduce(&self.0))
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord(word::invert(&self.0))
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GeneratorWord(v)
    }

    pub fn pow(&self, e: i64) -> GeneratorWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        GeneratorWord(out)
    }

    /// Parses whitespace-separated tokens `name`, `name^e`; when every
    /// name is a single character, tokens may also be runs of names
    /// (`"abab"`). `"1"` and the empty string denote the identity.
    pub fn parse(text: &str, names: &[String]) -> Result<GeneratorWord> {
        let single = names.iter().all(|n| n.chars().count() == 1);
        let lookup = |name: &str| names.iter().position(|n| n == name);
        let mut letters = Vec::new();
        let mut pos = 0;
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            let start = pos;
            pos += token.len() + 1;
            if token.is_empty() || token == "1" {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Syntax { pos: start, msg: format!("bad exponent in {token:?}") })?;
                    (b, e)
                }
                None => (token, 1),
            };
            let symbols: Vec<usize> = match lookup(base) {
                Some(i) => vec![i],
                None if single => base
                    .chars()
                    .map(|c| {
                        lookup(&c.to_string()).ok_or_else(|| Error::Syntax {
                            pos: start,
                            msg: format!("unknown generator {c:?}"),
                        })
                    })
                    .collect::<Result<_>>()?,
                None => {
                    return Err(Error::Syntax { pos: start, msg: format!("unknown generator {base:?}") });
                }
            };
            let chunk: Vec<Letter> = symbols.iter().map(|&s| Letter::pos(s as u16)).collect();
            letters.extend(GeneratorWord(chunk).pow(exp).0);
        }
        Ok(GeneratorWord(letters))
    }

    pub fn render(&self, names: &[String]) -> String {
        word::render(&self.0, names)
    }
}

/// A finitely generated group with exact element arithmetic.
#[derive(Clone, Debug)]
pub struct Realization {
    label: String,
    names: Vec<String>,
    body: Body,
    gens: Vec<Element>,
    gen_inverses: Vec<Element>,
}

fn letter_names(k: usize) -> Vec<String> {
    match k {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (0..k).map(|i| format!("x{i}")).collect(),
    }
}

#[derive(Deserialize)]
struct MatrixFile {
    generators: Vec<Vec<String>>,
}

/// Builds the realization described by `spec`.
pub fn make_realization(spec: &GroupSpec) -> Result<Realization> {
    spec.validate()?;
    let label = spec.to_string();
    let r = match spec {
        GroupSpec::Z(d) => {
            let d = *d as usize;
            let gens = (0..d)
                .map(|i| {
                    let mut m = Matrix::identity(d + 1).rationals();
                    m[i * (d + 1) + d] = BigRational::from_integer(1.into());
                    Matrix::from_rationals(d + 1, &m)
                })
                .collect();
            Realization::from_matrices(label, letter_names(d), gens)?
        }
        GroupSpec::Cyclic(n) => {
            let n = *n as usize;
            let mut perm = vec![0i64; n * n];
            for i in 0..n {
                perm[i * n + (i + 1) % n] = 1;
            }
            Realization::from_matrices(label, letter_names(1), vec![Matrix::from_integers(n, perm)])?
        }
        GroupSpec::Heisenberg => {
            let x = Matrix::from_integers(3, vec![1, 1, 0, 0, 1, 0, 0, 0, 1]);
            let y = Matrix::from_integers(3, vec![1, 0, 0, 0, 1, 1, 0, 0, 1]);
            Realization::from_matrices(label, letter_names(2), vec![x, y])?
        }
        GroupSpec::Bs(_, q) => {
            let a = Matrix::from_integers(2, vec![1, 1, 0, 1]);
            let t = Matrix::from_integers(2, vec![*q, 0, 0, 1]);
            Realization::from_matrices(label, vec!["a".into(), "t".into()], vec![a, t])?
        }
        GroupSpec::Matrix(path) => {
            let gens = read_matrix_file(path)?;
            let names = (0..gens.len()).map(|i| format!("g{i}")).collect();
            Realization::from_matrices(label, names, gens)?
        }
        GroupSpec::Free(k) => Realization::free(label, *k as usize),
        GroupSpec::Lamplighter(m) => Realization::lamplighter(label, *m),
        GroupSpec::Grigorchuk { prefix, period } => {
            let seq = Sequence::new(prefix.clone(), period.clone())
                .ok_or_else(|| Error::InvalidParameters("grigorchuk sequence symbols must lie in {0,1,2}".into()))?;
            Realization::grigorchuk(label, seq, 0)
        }
    };
    Ok(r)
}

pub fn read_matrix_file(path: &Path) -> Result<Vec<Matrix>> {
    let text = std::fs::read_to_string(path)?;
    let file: MatrixFile = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
    if file.generators.is_empty() {
        return Err(Error::InvalidParameters("matrix file lists no generators".into()));
    }
    file.generators
        .iter()
        .enumerate()
        .map(|(g, entries)| {
            let dim = (entries.len() as f64).sqrt().round() as usize;
            if dim == 0 || dim * dim != entries.len() {
                return Err(Error::InvalidParameters(format!(
                    "generator {g} has {} entries, not a square count",
                    entries.len()
                )));
            }
            let qs = entries
                .iter()
                .map(|s| {
                    BigRational::from_str(s.trim())
                        .map_err(|_| Error::InvalidParameters(format!("generator {g}: bad rational {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_rationals(dim, &qs))
        })
        .collect()
}

impl Realization {
    pub fn from_matrices(label: impl Into<String>, names: Vec<String>, gens: Vec<Matrix>) -> Result<Realization> {
        let dim = gens
            .first()
            .ok_or_else(|| Error::InvalidParameters("empty generator list".into()))?
            .dim();
        if gens.iter().any(|g| g.dim() != dim) {
            return Err(Error::InvalidParameters("generators have different dimensions".into()));
        }
        let gen_inverses = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                g.inverse()
                    .map(Element::Matrix)
                    .ok_or_else(|| Error::InvalidParameters(format!("generator {i} is singular")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Realization {
            label: label.into(),
            names,
            body: Body::Matrix { dim },
            gens: gens.into_iter().map(Element::Matrix).collect(),
            gen_inverses,
        })
    }

    pub fn free(label: impl Into<String>, rank: usize) -> Realization {
        assert!(rank >= 1 && rank <= usize::from(u16::MAX));
        Realization {
            label: label.into(),
            names: letter_names(rank),
            body: Body::Free { rank },
            gens: (0..rank).map(|i| Element::Free(vec![Letter::pos(i as u16)])).collect(),
            gen_inverses: (0..rank).map(|i| Element::Free(vec![Letter::neg(i as u16)])).collect(),
        }
    }

    pub fn lamplighter(label: impl Into<String>, modulus: u32) -> Realization {
        assert!(modulus >= 2);
        let a = WreathElement::lamp(0, 1, modulus);
        let t = WreathElement::shift(1);
        Realization {
            label: label.into(),
            names: vec!["a".into(), "t".into()],
            body: Body::Wreath { modulus },
            gen_inverses: vec![Element::Wreath(a.inverse(modulus)), Element::Wreath(t.inverse(modulus))],
            gens: vec![Element::Wreath(a), Element::Wreath(t)],
        }
    }

    /// `G_{σ^offset ω}` marked by `(a, b, c, d)`.
    pub fn grigorchuk(label: impl Into<String>, seq: Sequence, offset: usize) -> Realization {
        let gens: Vec<Element> = (0..4u8).map(|l| Element::Tree(vec![l])).collect();
        Realization {
            label: label.into(),
            names: ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
            body: Body::Tree { seq, offset },
            gen_inverses: gens.clone(),
            gens,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn kind(&self) -> KindTag {
        match self.body {
            Body::Matrix { .. } => KindTag::Matrix,
            Body::Wreath { .. } => KindTag::Wreath,
            Body::Free { .. } => KindTag::Free,
            Body::Tree { .. } => KindTag::Tree,
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        match self.body {
            Body::Wreath { modulus } => Some(modulus),
            _ => None,
        }
    }

    pub fn tree_sequence(&self) -> Option<(&Sequence, usize)> {
        match &self.body {
            Body::Tree { seq, offset } => Some((seq, *offset)),
            _ => None,
        }
    }

    /// Whether `canonical_key` is injective on elements.
    pub fn key_is_exact(&self) -> bool {
        !matches!(self.body, Body::Tree { .. })
    }

    pub fn identity(&self) -> Element {
        match &self.body {
            Body::Matrix { dim } => Element::Matrix(Matrix::identity(*dim)),
            Body::Wreath { .. } => Element::Wreath(WreathElement::identity()),
            Body::Free { .. } => Element::Free(Vec::new()),
            Body::Tree { .. } => Element::Tree(Vec::new()),
        }
    }

    pub fn generator(&self, i: usize) -> &Element {
        &self.gens[i]
    }

    /// Element of a single letter `s` or `s⁻¹`.
    pub fn letter(&self, l: Letter) -> Result<&Element> {
        let i = usize::from(l.symbol);
        if i >= self.gens.len() {
            return Err(Error::InvalidIndex { index: i, count: self.gens.len() });
        }
        Ok(if l.inverse { &self.gen_inverses[i] } else { &self.gens[i] })
    }

    /// All letters of `X ∪ X⁻¹` in the fixed expansion order
    /// `x₀, x₀⁻¹, x₁, x₁⁻¹, …`.
    pub fn alphabet(&self) -> Vec<Letter> {
        (0..self.gens.len() as u16).flat_map(|i| [Letter::pos(i), Letter::neg(i)]).collect()
    }

    pub fn belongs(&self, x: &Element) -> bool {
        match (&self.body, x) {
            (Body::Matrix { dim }, Element::Matrix(m)) => m.dim() == *dim,
            (Body::Wreath { modulus }, Element::Wreath(w)) => w.lamps.iter().all(|&(_, v)| v != 0 && v < *modulus),
            (Body::Free { rank }, Element::Free(w)) => w.iter().all(|l| usize::from(l.symbol) < *rank),
            (Body::Tree { .. }, Element::Tree(w)) => w.iter().all(|&l| l < 4),
            _ => false,
        }
    }

    fn check(&self, x: &Element) -> Result<()> {
        if self.belongs(x) {
            Ok(())
        } else {
            Err(Error::MixedRealizations)
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Product without membership checks; panics on mixed payload kinds.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        match (x, y) {
            (Element::Matrix(a), Element::Matrix(b)) => Element::Matrix(a.mul(b)),
            (Element::Wreath(a), Element::Wreath(b)) => {
                let Body::Wreath { modulus } = self.body else { panic!("mixed realizations") };
                Element::Wreath(a.mul(b, modulus))
            }
            (Element::Free(a), Element::Free(b)) => {
                let mut out = a.clone();
                word::push_reduced(&mut out, b.iter().copied());
                Element::Free(out)
            }
            (Element::Tree(a), Element::Tree(b)) => {
                let mut out = a.clone();
                grigorchuk::push_reduced(&mut out, b.iter().copied());
                Element::Tree(out)
            }
            _ => panic!("mixed realizations"),
        }
    }

    pub fn invert(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(match x {
            Element::Matrix(m) => Element::Matrix(m.inverse().expect("group elements are invertible")),
            Element::Wreath(w) => Element::Wreath(w.inverse(self.modulus().unwrap_or(2))),
            Element::Free(w) => Element::Free(word::invert(w)),
            Element::Tree(w) => Element::Tree(w.iter().rev().copied().collect()),
        })
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        match (x, &self.body) {
            (Element::Tree(w), Body::Tree { seq, offset }) => grigorchuk::is_trivial(w, seq, *offset),
            _ => *x == self.identity(),
        }
    }

    pub fn equal(&self, x: &Element, y: &Element) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.eq_unchecked(x, y))
    }

    pub(crate) fn eq_unchecked(&self, x: &Element, y: &Element) -> bool {
        match (x, y, &self.body) {
            (Element::Tree(a), Element::Tree(b), Body::Tree { seq, offset }) => {
                if a == b {
                    return true;
                }
                let mut w: Vec<u8> = a.iter().rev().copied().collect();
                grigorchuk::push_reduced(&mut w, b.iter().copied());
                grigorchuk::is_trivial(&w, seq, *offset)
            }
            _ => x == y,
        }
    }

    /// Injective serialization of the normal form, or for the Grigorchuk
    /// family the portrait of the action down to level 6.
    pub fn canonical_key(&self, x: &Element) -> Vec<u8> {
        match (x, &self.body) {
            (Element::Matrix(m), _) => m.key(),
            (Element::Wreath(w), _) => w.key(),
            (Element::Free(w), Body::Free { rank }) => {
                if *rank < 1 << 7 {
                    w.iter().map(|l| l.code() as u8).collect()
                } else {
                    w.iter().flat_map(|l| l.code().to_le_bytes()).collect()
                }
            }
            (Element::Tree(w), Body::Tree { seq, offset }) => grigorchuk::portrait(w, seq, *offset),
            _ => panic!("mixed realizations"),
        }
    }

    pub fn evaluate_word(&self, w: &GeneratorWord) -> Result<Element> {
        let mut acc = self.identity();
        for &l in w.letters() {
            let g = self.letter(l)?;
            acc = self.mul(&acc, g);
        }
        Ok(acc)
    }

    /// Human-readable rendering of an element's payload.
    pub fn render(&self, x: &Element) -> String {
        match x {
            Element::Matrix(m) => m.to_string(),
            Element::Wreath(w) => {
                let lamps: Vec<String> = w.lamps.iter().map(|(p, v)| format!("{p}:{v}")).collect();
                format!("({{{}}}, {})", lamps.join(","), w.shift)
            }
            Element::Free(w) => word::render(w, &self.names),
            Element::Tree(w) => grigorchuk::render(w),
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <{}>", self.label, self.names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::spec::parse_spec;

    fn real(s: &str) -> Realization {
        make_realization(&parse_spec(s).unwrap()).unwrap()
    }

    fn w(r: &Realization, s: &str) -> Element {
        r.evaluate_word(&GeneratorWord::parse(s, r.names()).unwrap()).unwrap()
    }

    #[test]
    fn free_word_evaluation() {
        let r = real("free:2");
        assert_eq!(r.generator_count(), 2);
        let x = w(&r, "x y x^-1");
        assert_eq!(x, Element::Free(vec![Letter::pos(0), Letter::pos(1), Letter::neg(0)]));
        assert_eq!(r.invert(&w(&r, "x y")).unwrap(), w(&r, "y^-1 x^-1"));
        assert_eq!(w(&r, ""), r.identity());
    }

    #[test]
    fn lamplighter_relations() {
        let r = real("lamplighter:2");
        assert!(r.is_identity(&w(&r, "a a")));
        assert_eq!(w(&r, "t a"), Element::Wreath(WreathElement { lamps: vec![(1, 1)], shift: 1 }));
        assert!(!r.equal(&w(&r, "a t"), &w(&r, "t a")).unwrap());
        assert_eq!(
            r.canonical_key(&r.identity()),
            WreathElement { lamps: vec![], shift: 0 }.key()
        );
    }

    #[test]
    fn grigorchuk_relations() {
        let r = real("grigorchuk:(012)*");
        for s in ["aa", "bb", "cc", "dd", "bcd"] {
            assert!(r.is_identity(&w(&r, s)), "{s}");
        }
        // abab = (baba)^-1 since every letter is an involution
        let x = w(&r, "abab");
        let y = r.invert(&w(&r, "baba")).unwrap();
        assert!(r.equal(&x, &y).unwrap());
        assert!(!r.equal(&x, &w(&r, "baba")).unwrap());
    }

    #[test]
    fn matrix_inverse_pair() {
        let r = real("bs:1,2");
        let a = w(&r, "a");
        let ai = w(&r, "a^-1");
        assert!(r.is_identity(&r.multiply(&a, &ai).unwrap()));
        // t a t^-1 = a^2
        assert_eq!(w(&r, "t a t^-1"), w(&r, "a a"));
    }

    #[test]
    fn errors() {
        let r = real("free:2");
        let bad = GeneratorWord(vec![Letter::pos(5)]);
        assert!(matches!(r.evaluate_word(&bad), Err(Error::InvalidIndex { index: 5, count: 2 })));
        let l = real("lamplighter:2");
        assert_eq!(r.multiply(&r.identity(), &l.identity()), Err(Error::MixedRealizations));
        assert!(matches!(
            make_realization(&GroupSpec::Lamplighter(1)),
            Err(Error::InvalidParameters(_))
        ));
        let singular = Matrix::from_integers(2, vec![1, 2, 2, 4]);
        assert!(Realization::from_matrices("m", vec!["g".into()], vec![singular]).is_err());
    }

    #[test]
    fn word_parsing() {
        let names: Vec<String> = ["a", "t"].iter().map(|s| s.to_string()).collect();
        let p = GeneratorWord::parse("ta t^-2", &names).unwrap();
        assert_eq!(p.0, vec![Letter::pos(1), Letter::pos(0), Letter::neg(1), Letter::neg(1)]);
        assert!(GeneratorWord::parse("q", &names).is_err());
        assert!(GeneratorWord::parse("1", &names).unwrap().is_empty());
    }
}
