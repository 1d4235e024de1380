//! The desk-scale acceptance battery: axiom regression, the worked
//! validities, the theorem library with semantic re-checks, the
//! non-adjunction suite, the cat model, the negation square, the hook
//! equivalence, and the enumerator oracle count.

use crate::formula::{Formula, Signature};
use crate::kripke::{cat_model, check_frame_class, Frame, FrameClass, Model};
use crate::proofs::{check_proof, instantiate_axiom, theorem_library, SchemaId};
use crate::qdeduction::check_nonadjunction;
use crate::validity::{
    check_validity, entails, is_satisfiable, ModelEnumerator, SearchBound,
};

use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn result(id: usize, name: &'static str, passed: bool, detail: impl Into<String>) -> CriterionResult {
    CriterionResult {
        id,
        name,
        passed,
        detail: detail.into(),
    }
}

fn axiom_instances() -> Vec<(SchemaId, Formula)> {
    let a = Formula::atom("a");
    let b = Formula::atom("b");
    let two = |schema| {
        instantiate_axiom(
            schema,
            &BTreeMap::from([("alpha".to_string(), a.clone()), ("beta".to_string(), b.clone())]),
        )
        .expect("axiom instance")
    };
    vec![
        (SchemaId::QS1, two(SchemaId::QS1)),
        (
            SchemaId::QS2,
            instantiate_axiom(SchemaId::QS2, &BTreeMap::from([("alpha".to_string(), a.clone())]))
                .expect("axiom instance"),
        ),
        (SchemaId::QS3, two(SchemaId::QS3)),
        (SchemaId::QS4, two(SchemaId::QS4)),
    ]
}

/// Criterion 1: the four superposition axioms are valid up to 3 worlds
/// over S4 and T frames; the fourth needs not even reflexivity.
pub fn criterion_1() -> CriterionResult {
    let sig = Signature::with_atoms(["a", "b"]);
    let mut failures = Vec::new();
    for (schema, instance) in axiom_instances() {
        for class in [FrameClass::S4, FrameClass::T] {
            let verdict = check_validity(&instance, &sig, &SearchBound::new(3, class))
                .expect("bounded search");
            if !verdict.is_valid() {
                failures.push(format!("{schema} not valid at (3, {class})"));
            }
        }
    }
    let (schema, qs4) = axiom_instances().pop().expect("QS4 instance");
    let verdict = check_validity(&qs4, &sig, &SearchBound::new(3, FrameClass::K))
        .expect("bounded search");
    if !verdict.is_valid() {
        failures.push(format!("{schema} not valid at (3, K)"));
    }
    result(
        1,
        "axiom regression",
        failures.is_empty(),
        if failures.is_empty() {
            "QS1-QS4 valid at (3, S4) and (3, T); QS4 also at (3, K)".to_string()
        } else {
            failures.join("; ")
        },
    )
}

/// Criterion 2: the four worked validities hold up to 3 worlds.
pub fn criterion_2() -> CriterionResult {
    let sig = Signature::with_atoms(["psi1", "psi2"]);
    let psi1 = Formula::atom("psi1");
    let psi2 = Formula::atom("psi2");
    let star = Formula::star(psi1.clone(), psi2.clone());
    let cases: Vec<(&str, Formula, FrameClass)> = vec![
        (
            "star excludes components",
            Formula::hook(
                star.clone(),
                Formula::and(Formula::neg(psi1.clone()), Formula::neg(psi2.clone())),
            ),
            FrameClass::T,
        ),
        (
            "measurement factivity",
            Formula::hook(Formula::meas(psi1.clone()), psi1.clone()),
            FrameClass::T,
        ),
        (
            "measured star excludes joint possibility",
            Formula::hook(
                Formula::meas(star.clone()),
                Formula::neg(Formula::diamond(Formula::and(psi1.clone(), psi2.clone()))),
            ),
            FrameClass::K,
        ),
        (
            "measured star makes a component possible",
            Formula::hook(
                Formula::and(star.clone(), Formula::meas(star.clone())),
                Formula::or(Formula::diamond(psi1.clone()), Formula::diamond(psi2.clone())),
            ),
            FrameClass::K,
        ),
    ];
    let mut failures = Vec::new();
    for (name, formula, class) in cases {
        let verdict = check_validity(&formula, &sig, &SearchBound::new(3, class))
            .expect("bounded search");
        if !verdict.is_valid() {
            failures.push(format!("{name} not valid at (3, {class})"));
        }
    }
    result(
        2,
        "worked validities",
        failures.is_empty(),
        if failures.is_empty() {
            "all four formulas valid up to 3 worlds".to_string()
        } else {
            failures.join("; ")
        },
    )
}

/// Criterion 3: every bundled theorem passes the proof checker and the
/// cross-module semantic re-check.
pub fn criterion_3() -> CriterionResult {
    let mut failures = Vec::new();
    let library = theorem_library();
    let expected = ["thm-3.1", "thm-3.2", "cor-3.1", "thm-3.3", "thm-3.4", "thm-3.5", "thm-4.1"];
    for name in expected {
        if !library.iter().any(|s| s.name == name) {
            failures.push(format!("{name} missing from the library"));
        }
    }
    for script in &library {
        if let Err(report) = check_proof(script) {
            failures.push(format!("{}: {report}", script.name));
            continue;
        }
        let conclusion = script.conclusion().expect("nonempty script").clone();
        let bound = SearchBound::new(3, script.class);
        match entails(&script.hypotheses, &conclusion, &script.sig, &bound) {
            Ok(verdict) if verdict.is_valid() => {}
            Ok(_) => failures.push(format!("{}: semantic re-check found a countermodel", script.name)),
            Err(e) => failures.push(format!("{}: {e}", script.name)),
        }
    }
    result(
        3,
        "theorem library",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} scripts checked and semantically re-verified", library.len())
        } else {
            failures.join("; ")
        },
    )
}

/// Criterion 4: the non-adjunction suite at (2, S5).
pub fn criterion_4() -> CriterionResult {
    let mut sig = Signature::new();
    sig.add_perp("a", "a_perp").expect("distinct atoms");
    let bound = SearchBound::new(2, FrameClass::S5);
    let report = check_nonadjunction(&sig, &bound).expect("bounded search");
    let failures: Vec<String> = report
        .iter()
        .filter(|p| !p.passed)
        .map(|p| format!("{}: {}", p.name, p.detail))
        .collect();
    result(
        4,
        "non-adjunction suite",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} properties hold at (2, S5)", report.len())
        } else {
            failures.join("; ")
        },
    )
}

/// Criterion 5: the bundled cat model behaves as drawn, and the
/// Euclidean closure is detected.
pub fn criterion_5() -> CriterionResult {
    let model = cat_model();
    let mut failures = Vec::new();
    if model.check_acceptability().is_err() {
        failures.push("cat model fails acceptability".to_string());
    }
    let m_star = Formula::meas(Formula::star(Formula::atom("alive"), Formula::atom("dead")));
    match model.eval_at("w0", &m_star) {
        Ok(true) => {}
        _ => failures.push("M(alive * dead) not true at w0".to_string()),
    }
    let report = check_frame_class(model.frame(), FrameClass::T);
    if !report.ok() {
        failures.push("cat frame is not reflexive".to_string());
    }
    if report.properties.euclidean {
        failures.push("cat frame reported Euclidean".to_string());
    }
    // closing the frame under the Euclidean property forces the two
    // outcome worlds to access each other (w1 <-> w2)
    let mut rel: std::collections::BTreeSet<(usize, usize)> =
        model.frame().rel().iter().copied().collect();
    loop {
        let mut added = false;
        let snapshot: Vec<(usize, usize)> = rel.iter().copied().collect();
        for &(x, y) in &snapshot {
            for &(x2, z) in &snapshot {
                if x == x2 && rel.insert((y, z)) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let closed = Frame::new(model.frame().worlds().to_vec(), rel.iter().copied().collect())
        .expect("closed frame");
    if !closed.is_euclidean() {
        failures.push("Euclidean closure not detected".to_string());
    }
    if !(closed.related(1, 2) && closed.related(2, 1)) {
        failures.push("closure does not connect the outcome worlds".to_string());
    }
    if model.frame().related(1, 2) || model.frame().related(2, 1) {
        failures.push("original cat frame already connects the outcome worlds".to_string());
    }
    result(
        5,
        "cat model",
        failures.is_empty(),
        if failures.is_empty() {
            "acceptable, M(alive * dead) true at w0, frame T and non-Euclidean; closure detected"
                .to_string()
        } else {
            failures.join("; ")
        },
    )
}

/// Criterion 6: the negation square over a declared perp pair with
/// orthogonality on.
pub fn criterion_6() -> CriterionResult {
    let mut sig = Signature::new();
    sig.add_perp("a", "a_perp").expect("distinct atoms");
    let a = Formula::atom("a");
    let a_perp = Formula::atom("a_perp");
    let bound = SearchBound::new(2, FrameClass::T);
    let mut failures = Vec::new();

    // contrariety: never both true
    if is_satisfiable(&[a.clone(), a_perp.clone()], &sig, &bound)
        .expect("bounded search")
        .is_sat()
    {
        failures.push("found a world with a and a_perp both true".to_string());
    }
    // both may fail: the superposition world
    let star = Formula::star(a.clone(), a_perp.clone());
    if !is_satisfiable(
        &[star, Formula::neg(a.clone()), Formula::neg(a_perp.clone())],
        &sig,
        &bound,
    )
    .expect("bounded search")
    .is_sat()
    {
        failures.push("no superposition world with both components false".to_string());
    }
    // subcontrariety upper bound: f \/ ~3 f valid on reflexive frames
    let lem3 = Formula::or(a.clone(), Formula::neg3(a.clone()));
    if !check_validity(&lem3, &sig, &bound)
        .expect("bounded search")
        .is_valid()
    {
        failures.push("a \\/ ~3 a fails on some reflexive model".to_string());
    }
    // subcontrariety both-true witness
    if !is_satisfiable(&[a.clone(), Formula::neg3(a)], &sig, &bound)
        .expect("bounded search")
        .is_sat()
    {
        failures.push("no world with a and ~3 a both true".to_string());
    }
    result(
        6,
        "negation square",
        failures.is_empty(),
        if failures.is_empty() {
            "contrariety, both-false witness, subcontrariety bound and both-true witness hold"
                .to_string()
        } else {
            failures.join("; ")
        },
    )
}

/// Criterion 7: the Sasaki hook evaluates like material implication
/// over all valuations of two atoms at a single world.
pub fn criterion_7() -> CriterionResult {
    let sig = Signature::with_atoms(["a", "b"]);
    let a = Formula::atom("a");
    let b = Formula::atom("b");
    let hook = Formula::hook(a.clone(), b.clone());
    let material = Formula::or(Formula::neg(a.clone()), b.clone());
    let frame = Frame::new(vec!["w0".into()], vec![(0, 0)]).expect("one world");
    let mut failures = Vec::new();
    for mask in 0u8..4 {
        let val = BTreeMap::from([
            (a.clone(), vec![mask & 1 == 1]),
            (b.clone(), vec![mask & 2 == 2]),
        ]);
        let model = Model::new(
            frame.clone(),
            FrameClass::T,
            sig.clone(),
            vec![a.clone(), b.clone()],
            val,
            false,
        )
        .expect("one-world model");
        let h = model.eval(0, &hook).expect("eval");
        let m = model.eval(0, &material).expect("eval");
        if h != m {
            failures.push(format!("valuation a={} b={}", mask & 1 == 1, mask & 2 == 2));
        }
    }
    result(
        7,
        "Sasaki hook equivalence",
        failures.is_empty(),
        if failures.is_empty() {
            "hook and material implication agree on all 4 valuations".to_string()
        } else {
            format!("disagreement at: {}", failures.join(", "))
        },
    )
}

/// Criterion 8: the enumerator matches the independent brute-force
/// count on {a, b, a*b} over one reflexive world.
pub fn criterion_8() -> CriterionResult {
    let sig = Signature::with_atoms(["a", "b"]);
    let star = Formula::star(Formula::atom("a"), Formula::atom("b"));
    let bound = SearchBound::new(1, FrameClass::T);
    let enumerated = ModelEnumerator::new(&[star], &sig, &bound)
        .expect("bounded search")
        .count();
    // oracle: filter all 8 raw assignments by the acceptability rule
    let oracle = (0u8..8)
        .filter(|m| {
            let (a, b, s) = (m & 1 == 1, m & 2 == 2, m & 4 == 4);
            !(s && (a || b))
        })
        .count();
    result(
        8,
        "enumerator oracle count",
        enumerated == 5 && oracle == 5,
        format!("enumerated {enumerated}, brute force {oracle}, expected 5"),
    )
}

/// Runs all eight criteria.
pub fn run_acceptance_suite() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ]
}
