//! Elements of the lamplighter groups ℤ/m ≀ ℤ.
//!
//! Convention: `(f, k)(g, l) = (f + shift_k(g), k + l)` where
//! `shift_k(g)(x) = g(x - k)`, i.e. the support of `g` moves by `k`.

/// A finitely supported lamp configuration and a cursor shift.
///
/// `lamps` is sorted by position and never stores a zero value, so
/// structural equality is group equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub lamps: Vec<(i64, u32)>,
    pub shift: i64,
}

impl WreathElement {
    pub fn identity() -> WreathElement {
        WreathElement { lamps: Vec::new(), shift: 0 }
    }

    pub fn lamp(position: i64, value: u32, modulus: u32) -> WreathElement {
        let v = value % modulus;
        let lamps = if v == 0 { Vec::new() } else { vec![(position, v)] };
        WreathElement { lamps, shift: 0 }
    }

    pub fn shift(k: i64) -> WreathElement {
        WreathElement { lamps: Vec::new(), shift: k }
    }

    pub fn mul(&self, other: &WreathElement, modulus: u32) -> WreathElement {
        let k = self.shift;
        let mut out = Vec::with_capacity(self.lamps.len() + other.lamps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.lamps.len() || j < other.lamps.len() {
            let left = self.lamps.get(i).copied();
            let right = other.lamps.get(j).map(|&(p, v)| (p + k, v));
            match (left, right) {
                (Some((p, v)), Some((q, _))) if p < q => {
                    out.push((p, v));
                    i += 1;
                }
                (Some((p, _)), Some((q, w))) if q < p => {
                    out.push((q, w));
                    j += 1;
                }
                (Some((p, v)), Some((_, w))) => {
                    let s = ((u64::from(v) + u64::from(w)) % u64::from(modulus)) as u32;
                    if s != 0 {
                        out.push((p, s));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(pv), None) => {
                    out.push(pv);
                    i += 1;
                }
                (None, Some(qw)) => {
                    out.push(qw);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        WreathElement { lamps: out, shift: k + other.shift }
    }

    /// `(f, k)⁻¹ = (-shift_{-k}(f), -k)`.
    pub fn inverse(&self, modulus: u32) -> WreathElement {
        let lamps = self
            .lamps
            .iter()
            .map(|&(p, v)| (p - self.shift, (modulus - v) % modulus))
            .collect();
        WreathElement { lamps, shift: -self.shift }
    }

    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 12 * self.lamps.len());
        out.extend_from_slice(&self.shift.to_le_bytes());
        for &(p, v) in &self.lamps {
            out.extend_from_slice(&p.to_le_bytes());
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn is_lamp_only(&self) -> bool {
        self.shift == 0
    }
}
