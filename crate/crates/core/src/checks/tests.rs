use super::*;
use crate::brauer::QuaternionSymbol;
use crate::field_tower::SquareClass;
use crate::quadform::QuadForm;

fn tower(spec: &str) -> FieldTower {
    FieldTower::parse(spec).unwrap()
}

fn params(field: Option<&str>, n: Option<u32>, samples: usize) -> CheckParams {
    CheckParams { field: field.map(tower), n, samples, ..CheckParams::default() }
}

fn run(id: &str, p: &CheckParams) -> CheckReport {
    CheckRegistry::default().run(id, p).unwrap()
}

#[test]
fn registry_lookup() {
    let reg = CheckRegistry::default();
    assert_eq!(reg.ids(), vec!["trace", "so2s", "thm1", "propL", "thm2", "optimality", "st"]);
    assert!(matches!(reg.get("nope"), Err(Error::UnknownName(_))));
    let mut reg = CheckRegistry::empty();
    reg.register(Box::new(TraceIdentityCheck));
    reg.register(Box::new(TraceIdentityCheck));
    assert_eq!(reg.ids(), vec!["trace"]);
}

#[test]
fn trace_on_several_bases() {
    for spec in ["R", "C((t1))((t2))", "F3((t))"] {
        let r = run("trace", &params(Some(spec), None, 100));
        assert_eq!((r.run, r.passed, r.verdict), (100, 100, Verdict::Pass), "{spec}");
    }
}

#[test]
fn so2s_named_instance() {
    let f = tower("C((t1))((t2))((t3))");
    let (t1, t2, t3) = (f.variable_class(0), f.variable_class(1), f.variable_class(2));
    let algebra = [QuaternionSymbol::new(&f, t1, t2).unwrap(), QuaternionSymbol::new(&f, t1, t3).unwrap()];
    assert!(!crate::brauer::is_division_tensor(&f, &algebra).unwrap());
    assert!(QuadForm::pfister(&f, &[t1, t2, t1, t3]).unwrap().is_hyperbolic());
    let r = run("so2s", &params(None, Some(1), 50));
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.run, 50);
}

#[test]
fn so2s_real_tower_skips_and_passes() {
    let r = run("so2s", &params(Some("R((t1))((t2))((t3))"), Some(1), 50));
    assert_eq!((r.run, r.verdict), (50, Verdict::Pass));
    assert!(r.skipped > 0);
}

#[test]
fn thm1_complex_depth_three() {
    let r = run("thm1", &params(None, None, 1));
    assert_eq!(r.verdict, Verdict::Pass);
    // 330 four-fold multisets over 8 classes, plus ⟨⟨t1,t2,t3⟩⟩
    assert_eq!(r.run, 331);
    assert!(r.witnesses.iter().any(|w| w["pfister"] == "<<t1,t2,t3>>"));
}

#[test]
fn thm1_trivial_and_violated() {
    let r = run("thm1", &params(Some("C"), Some(0), 1));
    assert_eq!((r.run, r.verdict), (1, Verdict::Pass));
    let err = CheckRegistry::default().run("thm1", &params(Some("C((t1))((t2))((t3))"), Some(0), 1));
    assert!(matches!(err, Err(Error::HypothesisViolated(_))));
}

#[test]
fn thm1_finite_base_uses_extension() {
    let r = run("thm1", &params(Some("F3((t))"), Some(1), 1));
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.run > 0);
}

#[test]
fn prop_l_default() {
    let r = run("propL", &params(None, None, 30));
    assert_eq!((r.run, r.verdict), (30, Verdict::Pass));
    for w in r.witnesses.iter().filter(|w| w["kind"] == "pfister_witness") {
        assert_eq!(w["scale_power"], 2);
    }
}

#[test]
fn prop_l_complex_tower_is_trivial() {
    let r = run("propL", &params(Some("C((t1))((t2))"), Some(1), 20));
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn thm2_named_instances() {
    use super::eightfold::{eightfold_witness, EightfoldOutcome};
    let f = tower("R((t1))((t2))((t3))");
    let m1 = f.minus_one();
    match eightfold_witness(&f, &[m1; 4], DEFAULT_BUDGET).unwrap() {
        EightfoldOutcome::Found { theta, eightfold } => {
            assert!(eightfold);
            assert!(theta.pfister().is_isometric(&QuadForm::pfister(&f, &[m1; 3]).unwrap()).unwrap());
        }
        EightfoldOutcome::NotFound(r) => panic!("{r}"),
    }
    let slots = [f.variable_class(0), f.variable_class(1), f.variable_class(2), m1];
    assert!(matches!(
        eightfold_witness(&f, &slots, DEFAULT_BUDGET).unwrap(),
        EightfoldOutcome::Found { eightfold: true, .. }
    ));
}

#[test]
fn thm2_sampled() {
    let r = run("thm2", &CheckParams { n: Some(2), samples: 10, seed: 7, ..CheckParams::default() });
    assert_eq!((r.run, r.verdict), (10, Verdict::Pass));
    assert_eq!(r.field, "R((t1))((t2))((t3))");
}

#[test]
fn optimality_is_partial() {
    let r = run("optimality", &params(None, None, 1));
    assert_eq!(r.verdict, Verdict::Partial);
    assert!(r.witnesses.iter().any(|w| w["kind"] == "weak_refutation" && w["candidates"] == "136"));
    let r = run("optimality", &params(None, Some(1), 1));
    assert_eq!(r.verdict, Verdict::Partial);
    assert_eq!(r.field, "R((t1))");
}

#[test]
fn stability_default() {
    let r = run("st", &params(None, None, 10));
    assert_eq!((r.run, r.verdict), (10, Verdict::Pass));
}

#[test]
fn reports_are_reproducible() {
    let p = CheckParams { samples: 20, seed: 3, ..CheckParams::default() };
    for id in ["trace", "so2s", "propL"] {
        assert_eq!(run(id, &p).to_json(), run(id, &p).to_json());
    }
    let other = CheckParams { seed: 4, ..p.clone() };
    assert_ne!(run("trace", &p).to_json(), run("trace", &other).to_json());
}

#[test]
fn lambda_prime_sources() {
    assert_eq!(lambda_prime(&tower("C((t1))((t2))((t3))"), DEFAULT_BUDGET).unwrap(), 1);
    assert_eq!(lambda_prime(&tower("R((t1))((t2))((t3))"), DEFAULT_BUDGET).unwrap(), 2);
    // (-1,-1)(x)(t1,t2) is division: its Albert form <1,1,1,-t1,-t2,t1t2> is anisotropic
    let f = tower("R((t1))((t2))");
    let albert =
        QuadForm::diag(&f, [0b000, 0b000, 0b000, 0b011, 0b101, 0b110].map(SquareClass::from_bits).to_vec()).unwrap();
    assert!(albert.is_anisotropic());
    assert_eq!(lambda_prime(&f, DEFAULT_BUDGET).unwrap(), 2);
}
