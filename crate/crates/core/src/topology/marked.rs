use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::groups::Realization;
use crate::growth::{enumerate_ball_with, Ball, EnumConfig};
use crate::word::Letter;

/// A Cayley ball as a rooted digraph with one out-edge per generator where
/// `g·s` stays inside the ball. Vertex 0 is the identity; vertices follow
/// the ball's BFS order, so every restriction is a prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedBall {
    radius: usize,
    generators: usize,
    depth: Vec<usize>,
    out: Vec<Vec<Option<u32>>>,
    inward: Vec<Vec<Option<u32>>>,
}

impl MarkedBall {
    /// Builds a ball from explicit out-edges. `out[u][s]` is the target of
    /// the `s`-labelled edge leaving `u`; vertex 0 is the root.
    pub fn from_edges(radius: usize, generators: usize, out: Vec<Vec<Option<u32>>>) -> Result<MarkedBall> {
        let n = out.len();
        if n == 0 {
            return Err(Error::Precondition("a marked ball has at least the root".into()));
        }
        let mut inward = vec![vec![None; generators]; n];
        for (u, row) in out.iter().enumerate() {
            if row.len() != generators {
                return Err(Error::Mismatch(format!("vertex {u} has {} labels, expected {generators}", row.len())));
            }
            for (s, t) in row.iter().enumerate() {
                if let Some(t) = *t {
                    let slot = inward
                        .get_mut(t as usize)
                        .ok_or_else(|| Error::Precondition(format!("edge target {t} out of range")))?;
                    if slot[s].replace(u as u32).is_some() {
                        return Err(Error::Precondition(format!("vertex {t} has two incoming {s}-edges")));
                    }
                }
            }
        }
        // BFS over edges in both directions gives the depths
        let mut depth = vec![usize::MAX; n];
        depth[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for t in out[u].iter().chain(&inward[u]).flatten() {
                let t = *t as usize;
                if depth[t] == usize::MAX {
                    depth[t] = depth[u] + 1;
                    queue.push_back(t);
                }
            }
        }
        if depth.iter().any(|&d| d > radius) {
            return Err(Error::Precondition("some vertex lies outside the radius".into()));
        }
        Ok(MarkedBall { radius, generators, depth, out, inward })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().flatten().flatten().count()
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn target(&self, v: usize, generator: usize) -> Option<usize> {
        self.out[v][generator].map(|t| t as usize)
    }

    /// `(source, generator, target)` triples in vertex order.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().enumerate().filter_map(move |(s, t)| t.map(|t| (u, s, t as usize))))
            .collect()
    }

    /// The sub-ball of radius `n ≤ radius`.
    pub fn restrict(&self, n: usize) -> MarkedBall {
        assert!(n <= self.radius, "cannot restrict to a larger radius");
        let keep = self.depth.iter().take_while(|&&d| d <= n).count();
        let cut = |rows: &[Vec<Option<u32>>]| -> Vec<Vec<Option<u32>>> {
            rows[..keep]
                .iter()
                .map(|row| row.iter().map(|t| t.filter(|&t| (t as usize) < keep)).collect())
                .collect()
        };
        MarkedBall {
            radius: n,
            generators: self.generators,
            depth: self.depth[..keep].to_vec(),
            out: cut(&self.out),
            inward: cut(&self.inward),
        }
    }

    /// Graphviz rendering with edges labelled by generator name.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(s, "  v0 [shape=doublecircle];");
        for (u, g, t) in self.edges() {
            let label = labels.get(g).cloned().unwrap_or_else(|| g.to_string());
            let _ = writeln!(s, "  v{u} -> v{t} [label=\"{label}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Marked ball of radius `radius` for the generators of `r` (inverse edges
/// are implied by the out-edges).
pub fn extract_marked_ball(r: &Realization, radius: usize, config: EnumConfig) -> Result<MarkedBall> {
    let ball = enumerate_ball_with(r, radius, config)?;
    Ok(marked_from_ball(&ball))
}

pub fn marked_from_ball(ball: &Ball) -> MarkedBall {
    let r = ball.realization();
    let k = r.generator_count();
    let gens: Vec<_> = (0..k as u16).map(|s| r.letter(Letter::pos(s)).expect("valid").clone()).collect();
    let out: Vec<Vec<Option<u32>>> = ball
        .members()
        .iter()
        .map(|m| gens.iter().map(|g| ball.find(&r.mul(&m.element, g)).map(|i| i as u32)).collect())
        .collect();
    let mut inward = vec![vec![None; k]; out.len()];
    for (u, row) in out.iter().enumerate() {
        for (s, t) in row.iter().enumerate() {
            if let Some(t) = t {
                inward[*t as usize][s] = Some(u as u32);
            }
        }
    }
    MarkedBall {
        radius: ball.radius(),
        generators: k,
        depth: ball.members().iter().map(|m| m.distance).collect(),
        out,
        inward,
    }
}

/// Root- and label-preserving isomorphism test. Labels determine the only
/// candidate map, which is grown from the root along in- and out-edges and
/// then checked for bijectivity and edge agreement.
pub fn balls_isomorphic(a: &MarkedBall, b: &MarkedBall) -> Result<bool> {
    if a.generators != b.generators {
        return Err(Error::Mismatch(format!("{} vs {} generators", a.generators, b.generators)));
    }
    if a.radius != b.radius {
        return Err(Error::Mismatch(format!("radius {} vs {}", a.radius, b.radius)));
    }
    Ok(label_map(a, b).is_some())
}

/// The unique label-preserving isomorphism `a → b`, if it exists.
pub fn label_map(a: &MarkedBall, b: &MarkedBall) -> Option<Vec<usize>> {
    if a.vertex_count() != b.vertex_count() || a.generators != b.generators {
        return None;
    }
    let n = a.vertex_count();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    phi[0] = 0;
    used[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let u2 = phi[u];
        for (ta, tb) in [(&a.out, &b.out), (&a.inward, &b.inward)] {
            for s in 0..a.generators {
                match (ta[u][s], tb[u2][s]) {
                    (None, None) => {}
                    (Some(x), Some(y)) => {
                        let (x, y) = (x as usize, y as usize);
                        if phi[x] == usize::MAX {
                            if used[y] {
                                return None;
                            }
                            phi[x] = y;
                            used[y] = true;
                            queue.push_back(x);
                        } else if phi[x] != y {
                            return None;
                        }
                    }
                    _ => return None,
                }
            }
        }
    }
    phi.iter().all(|&p| p != usize::MAX).then_some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::spec::parse_spec;
    use crate::groups::make_realization;

    fn ball(spec: &str, radius: usize) -> MarkedBall {
        let r = make_realization(&parse_spec(spec).unwrap()).unwrap();
        extract_marked_ball(&r, radius, EnumConfig::default()).unwrap()
    }

    #[test]
    fn line_and_cycle() {
        let z = ball("z:1", 2);
        assert_eq!((z.vertex_count(), z.edge_count()), (5, 4));
        let c = ball("cyclic:6", 3);
        assert_eq!((c.vertex_count(), c.edge_count()), (6, 6));
    }

    #[test]
    fn trivial_generator_loops() {
        let b = ball("cyclic:1", 0);
        assert_eq!(b.edges(), vec![(0, 0, 0)]);
        assert_eq!(ball("z:1", 0).edge_count(), 0);
    }

    #[test]
    fn z_versus_cycle() {
        assert!(balls_isomorphic(&ball("z:1", 2), &ball("cyclic:6", 2)).unwrap());
        assert!(!balls_isomorphic(&ball("z:1", 3), &ball("cyclic:6", 3)).unwrap());
        assert!(balls_isomorphic(&ball("z:1", 3).restrict(2), &ball("cyclic:6", 3).restrict(2)).unwrap());
    }

    #[test]
    fn mismatches() {
        assert!(balls_isomorphic(&ball("z:1", 2), &ball("z:2", 2)).is_err());
        assert!(balls_isomorphic(&ball("z:1", 2), &ball("z:1", 3)).is_err());
    }

    #[test]
    fn restriction_matches_direct_extraction() {
        let big = ball("lamplighter:2", 4);
        for n in 0..=4 {
            let small = ball("lamplighter:2", n);
            assert_eq!(big.restrict(n), small);
        }
    }

    #[test]
    fn from_edges_round_trip() {
        let b = ball("free:2", 2);
        let rebuilt = MarkedBall::from_edges(2, 2, b.out.clone()).unwrap();
        assert_eq!(rebuilt, b);
    }

    #[test]
    fn dot_output() {
        let dot = ball("z:1", 1).to_dot("z", &["x".into()]);
        assert!(dot.starts_with("digraph \"z\" {"));
        assert_eq!(dot.matches("->").count(), 2);
    }
}
