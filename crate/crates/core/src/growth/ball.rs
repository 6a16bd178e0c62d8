use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::{Element, Realization};
use crate::word::Letter;

/// Default element cap for ball enumeration.
pub const DEFAULT_CAP: usize = 8_000_000;

/// Parent elements handed to one worker task. Fixed so the candidate
/// order never depends on the number of workers.
const CHUNK: usize = 512;

#[derive(Clone, Copy, Debug)]
pub struct EnumConfig {
    pub cap: usize,
    pub workers: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { cap: DEFAULT_CAP, workers: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct Member {
    pub element: Element,
    pub distance: usize,
}

#[derive(Clone, Debug)]
enum Slot {
    One(u32),
    Many(Vec<u32>),
}

/// The ball of radius `radius` around the identity in the Cayley graph.
///
/// Members are stored layer by layer (BFS order); inside a layer they are
/// sorted by canonical key, with discovery order breaking ties between
/// distinct elements sharing a coarse key.
#[derive(Clone, Debug)]
pub struct Ball {
    realization: Realization,
    radius: usize,
    members: Vec<Member>,
    layer_starts: Vec<usize>,
    index: HashMap<Box<[u8]>, Slot>,
}

impl Ball {
    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// Members at distance exactly `d`.
    pub fn layer(&self, d: usize) -> &[Member] {
        if d > self.radius {
            return &[];
        }
        let end = self.layer_starts.get(d + 1).copied().unwrap_or(self.members.len());
        &self.members[self.layer_starts[d]..end]
    }

    /// Number of members at distance ≤ `d`.
    pub fn count_within(&self, d: usize) -> usize {
        self.layer_starts.get(d + 1).copied().unwrap_or(self.members.len())
    }

    pub fn key(&self, i: usize) -> Vec<u8> {
        self.realization.canonical_key(&self.members[i].element)
    }

    /// Index of the member equal to `x`, if any.
    pub fn find(&self, x: &Element) -> Option<usize> {
        let key = self.realization.canonical_key(x);
        self.find_keyed(&key, x)
    }

    fn find_keyed(&self, key: &[u8], x: &Element) -> Option<usize> {
        let exact = self.realization.key_is_exact();
        let hit = |i: u32| exact || self.realization.eq_unchecked(&self.members[i as usize].element, x);
        match self.index.get(key)? {
            Slot::One(i) => hit(*i).then_some(*i as usize),
            Slot::Many(v) => v.iter().copied().find(|&i| hit(i)).map(|i| i as usize),
        }
    }

    fn insert(&mut self, key: Box<[u8]>, member: Member) {
        let i = self.members.len() as u32;
        self.members.push(member);
        match self.index.get_mut(&key) {
            None => {
                self.index.insert(key, Slot::One(i));
            }
            Some(slot) => match slot {
                Slot::One(j) => *slot = Slot::Many(vec![*j, i]),
                Slot::Many(v) => v.push(i),
            },
        }
    }
}

fn expand_chunk(ball: &Ball, alphabet: &[(Letter, Element)], parents: &[Member]) -> Vec<(Vec<u8>, Element)> {
    let r = &ball.realization;
    let mut out = Vec::new();
    for p in parents {
        for (_, g) in alphabet {
            let y = r.mul(&p.element, g);
            let key = r.canonical_key(&y);
            if ball.find_keyed(&key, &y).is_none() {
                out.push((key, y));
            }
        }
    }
    out
}

/// Breadth-first enumeration of the ball of radius `radius`, closing under
/// right multiplication by `X ∪ X⁻¹`.
pub fn enumerate_ball(r: &Realization, radius: usize) -> Result<Ball> {
    enumerate_ball_with(r, radius, EnumConfig::default())
}

pub fn enumerate_ball_with(r: &Realization, radius: usize, config: EnumConfig) -> Result<Ball> {
    let mut ball = Ball {
        realization: r.clone(),
        radius,
        members: Vec::new(),
        layer_starts: vec![0],
        index: HashMap::new(),
    };
    let id = r.identity();
    ball.insert(r.canonical_key(&id).into_boxed_slice(), Member { element: id, distance: 0 });
    if ball.members.len() > config.cap {
        return Err(Error::CapExceeded { cap: config.cap, radius: 0 });
    }

    let alphabet: Vec<(Letter, Element)> = r
        .alphabet()
        .into_iter()
        .map(|l| (l, r.letter(l).expect("alphabet letters are valid").clone()))
        .collect();
    let pool = if config.workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(config.workers)
                .build()
                .map_err(|e| Error::Io(e.to_string()))?,
        )
    } else {
        None
    };

    for d in 1..=radius {
        let start = ball.layer_starts[d - 1];
        let prev = &ball.members[start..];
        let batches: Vec<Vec<(Vec<u8>, Element)>> = match &pool {
            Some(pool) => pool.install(|| {
                prev.par_chunks(CHUNK).map(|c| expand_chunk(&ball, &alphabet, c)).collect()
            }),
            None => prev.chunks(CHUNK).map(|c| expand_chunk(&ball, &alphabet, c)).collect(),
        };

        // dedupe within the new layer, keeping first discovery
        let mut fresh: Vec<(Vec<u8>, Element)> = Vec::new();
        let mut seen: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
        for (key, y) in batches.into_iter().flatten() {
            let same = seen.entry(key.clone()).or_default();
            let dup = if r.key_is_exact() {
                !same.is_empty()
            } else {
                same.iter().any(|&i| r.eq_unchecked(&fresh[i].1, &y))
            };
            if !dup {
                same.push(fresh.len());
                fresh.push((key, y));
            }
        }
        fresh.sort_by(|a, b| a.0.cmp(&b.0));

        if ball.members.len() + fresh.len() > config.cap {
            return Err(Error::CapExceeded { cap: config.cap, radius: d });
        }
        ball.layer_starts.push(ball.members.len());
        for (key, element) in fresh {
            ball.insert(key.into_boxed_slice(), Member { element, distance: d });
        }
    }
    Ok(ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::spec::parse_spec;
    use crate::groups::make_realization;

    fn ball(spec: &str, radius: usize) -> Ball {
        enumerate_ball(&make_realization(&parse_spec(spec).unwrap()).unwrap(), radius).unwrap()
    }

    #[test]
    fn small_balls() {
        assert_eq!(ball("free:2", 2).len(), 17);
        assert_eq!(ball("z:2", 3).len(), 25);
        let b = ball("lamplighter:2", 2);
        assert_eq!(b.layer(0).len(), 1);
        assert_eq!(b.layer(1).len(), 3);
        assert_eq!(b.count_within(1), 4);
    }

    #[test]
    fn radius_zero_is_identity() {
        for s in ["free:3", "heisenberg", "grigorchuk:(012)*", "cyclic:5"] {
            let b = ball(s, 0);
            assert_eq!(b.len(), 1);
            assert!(b.realization().is_identity(&b.members()[0].element));
        }
    }

    #[test]
    fn cap_is_reported() {
        let r = make_realization(&parse_spec("free:2").unwrap()).unwrap();
        let err = enumerate_ball_with(&r, 6, EnumConfig { cap: 100, workers: 1 }).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 100, radius: 4 });
    }

    #[test]
    fn find_uses_exact_equality() {
        let b = ball("grigorchuk:(012)*", 3);
        let r = b.realization();
        // bc and d are different words for the same element
        let i = b.find(&Element::Tree(vec![3])).unwrap();
        assert_eq!(b.members()[i].distance, 1);
        assert!(r.is_identity(&b.members()[0].element));
    }
}
