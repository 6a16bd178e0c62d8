//! Textual group specs.
//!
//! ```text
//! spec := "z:" d | "cyclic:" N | "free:" k | "lamplighter:" m | "heisenberg"
//!       | "bs:" p "," q | "grigorchuk:" prefix "(" period ")*" | "matrix:" path
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// ℤ^d with its standard basis.
    Z(u32),
    /// ℤ/N with generator 1.
    Cyclic(u32),
    Free(u32),
    /// ℤ/m ≀ ℤ with generators `a` (lamp at the origin) and `t` (shift).
    Lamplighter(u32),
    /// Integer Heisenberg group with generators `x = I + e₁₂`, `y = I + e₂₃`.
    Heisenberg,
    /// Baumslag–Solitar group BS(p, q); only `p = 1` is realizable.
    Bs(i64, i64),
    Grigorchuk { prefix: Vec<u8>, period: Vec<u8> },
    Matrix(PathBuf),
}

const KINDS: [&str; 8] = ["z", "cyclic", "free", "lamplighter", "heisenberg", "bs", "grigorchuk", "matrix"];

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn parse_uint(s: &str, pos: usize) -> Result<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(pos, format!("expected a non-negative integer, found {s:?}")));
    }
    s.parse().map_err(|_| syntax(pos, format!("integer {s:?} out of range")))
}

fn parse_int(s: &str, pos: usize) -> Result<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(pos, format!("expected an integer, found {s:?}")));
    }
    s.parse().map_err(|_| syntax(pos, format!("integer {s:?} out of range")))
}

fn parse_symbols(s: &str, pos: usize) -> Result<Vec<u8>> {
    s.char_indices()
        .map(|(i, c)| match c.to_digit(10) {
            Some(d) => Ok(d as u8),
            None => Err(syntax(pos + i, format!("expected a digit, found {c:?}"))),
        })
        .collect()
}

/// Parses a group spec, reporting syntax errors with a character position
/// and rejecting invalid parameters.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let text = text.trim();
    let (kind, args) = match text.find(':') {
        Some(i) => (&text[..i], Some((&text[i + 1..], i + 1))),
        None => (text, None),
    };
    if !KINDS.contains(&kind) {
        return Err(Error::UnknownKind(kind.to_string()));
    }
    let spec = match (kind, args) {
        ("heisenberg", None) => GroupSpec::Heisenberg,
        ("heisenberg", Some((_, pos))) => return Err(syntax(pos - 1, "heisenberg takes no arguments")),
        (_, None) => return Err(syntax(text.len(), format!("{kind} requires arguments after ':'"))),
        ("z", Some((a, pos))) => GroupSpec::Z(parse_uint(a, pos)?),
        ("cyclic", Some((a, pos))) => GroupSpec::Cyclic(parse_uint(a, pos)?),
        ("free", Some((a, pos))) => GroupSpec::Free(parse_uint(a, pos)?),
        ("lamplighter", Some((a, pos))) => GroupSpec::Lamplighter(parse_uint(a, pos)?),
        ("bs", Some((a, pos))) => {
            let comma = a.find(',').ok_or_else(|| syntax(pos + a.len(), "expected ',' in bs:p,q"))?;
            let p = parse_int(&a[..comma], pos)?;
            let q = parse_int(&a[comma + 1..], pos + comma + 1)?;
            GroupSpec::Bs(p, q)
        }
        ("grigorchuk", Some((a, pos))) => {
            let open = a.find('(').ok_or_else(|| syntax(pos + a.len(), "expected '(' before the period"))?;
            let rest = &a[open + 1..];
            let close = rest
                .strip_suffix(")*")
                .ok_or_else(|| syntax(pos + a.len(), "expected ')*' after the period"))?;
            if close.is_empty() {
                return Err(syntax(pos + open + 1, "empty period"));
            }
            let prefix = parse_symbols(&a[..open], pos)?;
            let period = parse_symbols(close, pos + open + 1)?;
            GroupSpec::Grigorchuk { prefix, period }
        }
        ("matrix", Some((a, pos))) => {
            if a.is_empty() {
                return Err(syntax(pos, "empty matrix path"));
            }
            GroupSpec::Matrix(PathBuf::from(a))
        }
        _ => unreachable!(),
    };
    spec.validate()?;
    Ok(spec)
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameters(m));
        match self {
            GroupSpec::Z(0) => bad("z:d requires d >= 1".into()),
            GroupSpec::Cyclic(0) => bad("cyclic:N requires N >= 1".into()),
            GroupSpec::Free(0) => bad("free:k requires k >= 1".into()),
            GroupSpec::Lamplighter(m) if *m < 2 => bad(format!("lamplighter:m requires m >= 2, got {m}")),
            GroupSpec::Bs(p, q) if *p != 1 || *q == 0 => {
                bad(format!("bs:{p},{q} is not realizable by exact rational matrices; use bs:1,q with q != 0"))
            }
            GroupSpec::Grigorchuk { prefix, period } if prefix.iter().chain(period).any(|&s| s > 2) => {
                bad("grigorchuk sequence symbols must lie in {0,1,2}".into())
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Z(d) => write!(f, "z:{d}"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Free(k) => write!(f, "free:{k}"),
            GroupSpec::Lamplighter(m) => write!(f, "lamplighter:{m}"),
            GroupSpec::Heisenberg => f.write_str("heisenberg"),
            GroupSpec::Bs(p, q) => write!(f, "bs:{p},{q}"),
            GroupSpec::Grigorchuk { prefix, period } => {
                f.write_str("grigorchuk:")?;
                for s in prefix {
                    write!(f, "{s}")?;
                }
                f.write_str("(")?;
                for s in period {
                    write!(f, "{s}")?;
                }
                f.write_str(")*")
            }
            GroupSpec::Matrix(p) => write!(f, "matrix:{}", p.display()),
        }
    }
}
