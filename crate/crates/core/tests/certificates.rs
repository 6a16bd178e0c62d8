//! Witness certificates, subgroup stabilization and the rate bound.

use num_bigint::BigUint;

use growthlab::certificates::{
    crosscheck_metabelian, hvw_stabilization, hvw_stabilization_with, lamp_span_contains, rate_bound, reduced_words,
    t_alpha, verify_witness, verify_witness_with_budget, witness_search, CheckMode, CrosscheckStatus,
    StabilizationStatus,
};
use growthlab::cli::parse_spec;
use growthlab::groups::{make_realization, GeneratorWord, Realization, WreathElement};
use growthlab::growth::{enumerate_ball, growth_table, EnumConfig};
use growthlab::Error;

fn realize(s: &str) -> Realization {
    make_realization(&parse_spec(s).unwrap()).unwrap()
}

fn word(r: &Realization, s: &str) -> GeneratorWord {
    GeneratorWord::parse(s, r.names()).unwrap()
}

#[test]
fn collisions_reproduce() {
    for (spec, v, w) in [("z:2", "x", "y"), ("heisenberg", "x", "y"), ("cyclic:5", "x", "x"), ("lamplighter:2", "a", "a")] {
        let r = realize(spec);
        let (v, w) = (word(&r, v), word(&r, w));
        let cert = verify_witness(&r, &v, &w, 8).unwrap();
        assert!(!cert.injective, "{spec}");
        assert!(cert.omega_lower.is_none());
        let (a, b) = cert.collision.clone().unwrap();
        assert_ne!(a, b);
        let (ta, tb) = (t_alpha(&r, &v, &w, &a).unwrap(), t_alpha(&r, &v, &w, &b).unwrap());
        assert!(r.equal(&ta, &tb).unwrap(), "{spec}: reported collision does not reproduce");
    }
}

#[test]
fn free_witnesses_are_injective() {
    let r = realize("free:2");
    let cert = verify_witness(&r, &word(&r, "x"), &word(&r, "y"), 12).unwrap();
    assert!(cert.injective);
    assert_eq!((cert.cost, cert.p_verified), (2, 12));
    assert_eq!(cert.omega_lower.unwrap().to_decimal(12), "1.414213562373");
}

#[test]
fn witness_lower_bound_against_balls() {
    let r = realize("lamplighter:2");
    let mut cert = verify_witness(&r, &word(&r, "t"), &word(&r, "a"), 10).unwrap();
    assert_eq!(cert.gamma_lower(6), Some(BigUint::from(8u32)));
    let table = growth_table(&enumerate_ball(&r, 10).unwrap());
    assert!(cert.check_against(&table).is_empty());
    assert_eq!(cert.gamma_lower_checked, 10);
}

#[test]
fn witness_budget_and_preconditions() {
    let r = realize("free:2");
    let (v, w) = (word(&r, "x"), word(&r, "y"));
    let err = verify_witness_with_budget(&r, &v, &w, 10, 1000).unwrap_err();
    assert_eq!(err, Error::BudgetExceeded { budget: 1000 });
    assert_eq!(err.exit_code(), 4);
    // 2^11 - 2 = 2046 evaluations fit exactly
    assert!(verify_witness_with_budget(&r, &v, &w, 10, 2046).is_ok());
    assert!(matches!(verify_witness(&r, &v, &w, 0), Err(Error::Precondition(_))));
}

#[test]
fn shortlex_reduced_words() {
    let ws = reduced_words(2, 3);
    // 4 + 12 + 36
    assert_eq!(ws.len(), 52);
    assert!(ws.windows(2).all(|p| p[0].len() <= p[1].len()));
    assert!(ws.iter().all(|w| w.reduced() == *w));
}

#[test]
fn search_prefers_cheapest() {
    let r = realize("bs:1,3");
    let cert = witness_search(&r, 2, 8).unwrap().unwrap();
    assert!(cert.injective);
    assert_eq!(cert.cost, 2);
    assert!(witness_search(&realize("heisenberg"), 2, 8).unwrap().is_none());
}

#[test]
fn crosscheck_statuses() {
    let cfg = EnumConfig::default();
    let rep = crosscheck_metabelian(&realize("z:2"), 8, 2, 8, cfg).unwrap();
    assert_eq!(rep.status, CrosscheckStatus::NotApplicable);
    assert!(rep.witness.is_none());
    let rep = crosscheck_metabelian(&realize("lamplighter:3"), 8, 2, 8, cfg).unwrap();
    assert_eq!(rep.status, CrosscheckStatus::Pass);
    assert!(rep.upper_margin().to_f64() > 0.0);
    let json = rep.to_json(realize("lamplighter:3").names());
    assert_eq!(json["status"], "PASS");
}

#[test]
fn rate_bound_ordering() {
    let mut prev = None;
    for d in 1..=12 {
        let b = rate_bound(d).unwrap();
        assert!(b.beta <= b.alpha);
        assert!(b.omega_alpha.to_f64() > 1.0);
        if let Some(p) = prev {
            // constants grow with d, so the certified rate shrinks
            assert!(b.omega_alpha < p);
        }
        prev = Some(b.omega_alpha.clone());
    }
    assert!(rate_bound(0).is_err());
    assert_eq!(
        rate_bound(1).unwrap().to_json().to_string(),
        r#"{"d":1,"s":2,"alpha":48,"beta":44,"omega_alpha":1.014545334938,"omega_beta":1.015878083106}"#
    );
}

#[test]
fn hvw_exact_lamplighter() {
    let r = realize("lamplighter:2");
    // conjugates of a lamp by t are its translates: infinitely many independent lamps
    let rep = hvw_stabilization(&r, &word(&r, "t"), &word(&r, "a"), 6).unwrap();
    assert_eq!(rep.mode, CheckMode::Exact);
    assert_eq!(rep.status, StabilizationStatus::ExactInfinite);
    // v without shift fixes w
    let rep = hvw_stabilization(&r, &word(&r, "a"), &word(&r, "a"), 6).unwrap();
    assert_eq!(rep.status, StabilizationStatus::Stabilized { at: 0 });
    // w = t^-1 a t a has lamps at 0 and 1; translates are never in a finite window
    let rep = hvw_stabilization(&r, &word(&r, "t"), &word(&r, "t^-1 a t a"), 5).unwrap();
    assert_eq!(rep.status, StabilizationStatus::ExactInfinite);
}

#[test]
fn hvw_modes_agree() {
    for (spec, v, w) in [("lamplighter:2", "a", "a"), ("lamplighter:3", "a t a^-1 t^-1", "a"), ("lamplighter:2", "t", "a")] {
        let r = realize(spec);
        let (v, w) = (word(&r, v), word(&r, w));
        let exact = hvw_stabilization_with(&r, &v, &w, 3, 20_000, false).unwrap();
        let heur = hvw_stabilization_with(&r, &v, &w, 3, 20_000, true).unwrap();
        assert_eq!(exact.mode, CheckMode::Exact);
        assert_eq!(heur.mode, CheckMode::Heuristic);
        match exact.status {
            StabilizationStatus::Stabilized { at } => {
                assert_eq!(heur.status, StabilizationStatus::Stabilized { at }, "{spec}");
            }
            // the closure search can never prove stabilization of an infinitely generated subgroup
            _ => assert!(!matches!(heur.status, StabilizationStatus::Stabilized { .. }), "{spec}"),
        }
    }
}

#[test]
fn lamp_spans() {
    let m = 4;
    let two_at_0 = WreathElement::lamp(0, 2, m);
    let one_at_0 = WreathElement::lamp(0, 1, m);
    let one_at_1 = WreathElement::lamp(1, 1, m);
    assert!(!lamp_span_contains(&[&two_at_0], &one_at_0, m));
    assert!(lamp_span_contains(&[&one_at_0], &two_at_0, m));
    let sum = one_at_0.mul(&one_at_1, m);
    assert!(lamp_span_contains(&[&sum, &one_at_1], &one_at_0, m));
    assert!(!lamp_span_contains(&[&sum], &one_at_0, m));
    assert!(lamp_span_contains(&[], &WreathElement::identity(), m));
}
