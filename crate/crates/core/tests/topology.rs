//! Marked balls: isomorphism properties, an exhaustive-search oracle for
//! small radii, and convergence radii of related marked groups.

use growthlab::cli::{parse_spec, GroupSpec};
use growthlab::groups::{make_realization, Realization};
use growthlab::topology::{
    balls_isomorphic, convergence_radius, convergence_radius_of, extract_marked_ball, label_map, MarkedBall,
};
use growthlab::growth::EnumConfig;
use growthlab::Error;

const SPECS: [&str; 9] = [
    "z:2",
    "free:2",
    "lamplighter:2",
    "lamplighter:3",
    "heisenberg",
    "bs:1,2",
    "bs:1,-2",
    "cyclic:2",
    "grigorchuk:(012)*",
];

fn realize(s: &str) -> Realization {
    make_realization(&parse_spec(s).unwrap()).unwrap()
}

fn ball(s: &str, radius: usize) -> MarkedBall {
    extract_marked_ball(&realize(s), radius, EnumConfig::default()).unwrap()
}

/// Number of root- and label-preserving bijections `a → b`, found by
/// trying every assignment.
fn count_isomorphisms(a: &MarkedBall, b: &MarkedBall) -> usize {
    fn extend(a: &MarkedBall, b: &MarkedBall, phi: &mut Vec<usize>, used: &mut Vec<bool>) -> usize {
        let u = phi.len();
        if u == a.vertex_count() {
            return 1;
        }
        let mut total = 0;
        for y in 0..b.vertex_count() {
            if used[y] || (u == 0) != (y == 0) {
                continue;
            }
            let consistent = (0..a.generator_count()).all(|s| {
                (0..=u).all(|x| {
                    let fx = if x == u { y } else { phi[x] };
                    (a.target(u, s) == Some(x)) == (b.target(y, s) == Some(fx))
                        && (a.target(x, s) == Some(u)) == (b.target(fx, s) == Some(y))
                })
            });
            if consistent {
                phi.push(y);
                used[y] = true;
                total += extend(a, b, phi, used);
                phi.pop();
                used[y] = false;
            }
        }
        total
    }
    if a.vertex_count() != b.vertex_count() || a.generator_count() != b.generator_count() {
        return 0;
    }
    extend(a, b, &mut Vec::new(), &mut vec![false; b.vertex_count()])
}

#[test]
fn reflexive_and_symmetric() {
    for s in SPECS {
        let b = ball(s, 4);
        assert!(balls_isomorphic(&b, &b).unwrap(), "{s}");
        let identity: Vec<usize> = (0..b.vertex_count()).collect();
        assert_eq!(label_map(&b, &b), Some(identity));
    }
    for a in SPECS {
        for c in SPECS {
            let (x, y) = (ball(a, 3), ball(c, 3));
            if x.generator_count() == y.generator_count() {
                assert_eq!(balls_isomorphic(&x, &y).unwrap(), balls_isomorphic(&y, &x).unwrap(), "{a} / {c}");
            }
        }
    }
}

#[test]
fn exhaustive_search_agrees() {
    for radius in 0..=2 {
        for a in SPECS {
            for c in SPECS {
                let (x, y) = (ball(a, radius), ball(c, radius));
                if x.generator_count() != y.generator_count() {
                    continue;
                }
                let count = count_isomorphisms(&x, &y);
                assert!(count <= 1, "{a} / {c} at radius {radius}: {count} isomorphisms");
                assert_eq!(count == 1, balls_isomorphic(&x, &y).unwrap(), "{a} / {c} at radius {radius}");
            }
        }
    }
}

#[test]
fn restriction_matches_extraction() {
    for s in SPECS {
        let big = ball(s, 5);
        for n in 0..=5 {
            let small = ball(s, n);
            assert_eq!(big.restrict(n), small, "{s} at {n}");
        }
    }
}

#[test]
fn mismatches_are_errors() {
    assert!(matches!(balls_isomorphic(&ball("z:1", 2), &ball("z:2", 2)), Err(Error::Mismatch(_))));
    assert!(matches!(balls_isomorphic(&ball("z:2", 2), &ball("z:2", 3)), Err(Error::Mismatch(_))));
}

#[test]
fn small_balls_of_related_groups() {
    // ℤ² and the Heisenberg group first differ where the commutator loop closes
    let r = convergence_radius(&parse_spec("z:2").unwrap(), &parse_spec("heisenberg").unwrap(), 6, EnumConfig::default()).unwrap();
    assert_eq!(r, 1);
    // BS(1,2) and BS(1,-2) share the relator length but not the relator
    let a = ball("bs:1,2", 4);
    let b = ball("bs:1,-2", 4);
    assert_eq!(convergence_radius_of(&a, &b).unwrap(), convergence_radius_of(&b, &a).unwrap());
}

fn grigorchuk_with_prefix(k: usize) -> GroupSpec {
    let limit = [0u8, 1, 2];
    let prefix: Vec<u8> = (0..k).map(|i| limit[i % 3]).collect();
    // any continuation that differs from the limit at position k
    let other = (limit[k % 3] + 1) % 3;
    GroupSpec::Grigorchuk { prefix, period: vec![other] }
}

#[test]
fn grigorchuk_convergence_monotone_in_prefix() {
    let limit = parse_spec("grigorchuk:(012)*").unwrap();
    let radii: Vec<i64> = (0..=5)
        .map(|k| convergence_radius(&limit, &grigorchuk_with_prefix(k), 10, EnumConfig::default()).unwrap())
        .collect();
    assert!(radii.windows(2).all(|w| w[0] <= w[1]), "radii {radii:?}");
    assert!(radii[0] < radii[5], "radii {radii:?}");
}

#[test]
fn dot_output() {
    let r = realize("cyclic:3");
    let b = extract_marked_ball(&r, 1, EnumConfig::default()).unwrap();
    let dot = b.to_dot("cyclic:3", r.names());
    assert!(dot.starts_with("digraph \"cyclic:3\" {\n"));
    assert_eq!(dot.matches("->").count(), b.edge_count());
    assert!(dot.ends_with("}\n"));
}
