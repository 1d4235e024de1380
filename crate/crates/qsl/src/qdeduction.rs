//! The three negations and the non-adjunctive quantum deduction
//! relation.
//!
//! `~1` is classical exclusion negation, `~2` maps a state atom to its
//! declared orthocomplement partner (contrary/choice negation), and
//! `~3` is the paraconsistent `~[]` (subcontrary negation).
//!
//! `quantum_derives` decides the non-adjunctive consequence: alpha
//! follows from gamma if it is a member of gamma, a thesis of the
//! system, or classically entailed by a non-trivial subset of gamma.
//! Theses and entailments are bound-relative; verdicts say so.

use std::fmt;

use crate::formula::{Formula, ParseError, Signature};
use crate::proofs::theorem_library;
use crate::validity::{
    check_validity, entails, is_satisfiable, SatVerdict, SearchBound, SearchError, Verdict,
};

/// The three negations of the square of opposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegationKind {
    /// Exclusion (classical) negation.
    Neg1,
    /// Contrary / choice negation: the declared orthocomplement atom.
    Neg2,
    /// Subcontrary (paraconsistent) negation: ~[].
    Neg3,
}

pub fn apply_negation(
    kind: NegationKind,
    f: &Formula,
    sig: &Signature,
) -> Result<Formula, ParseError> {
    match kind {
        NegationKind::Neg1 => Ok(Formula::neg(f.clone())),
        NegationKind::Neg2 => {
            let Formula::Atom(name) = f else {
                return Err(ParseError::Neg2OnNonAtom);
            };
            match sig.perp(name) {
                Some(partner) => Ok(Formula::atom(partner)),
                None => Err(ParseError::Neg2Undeclared { atom: name.clone() }),
            }
        }
        NegationKind::Neg3 => Ok(Formula::neg3(f.clone())),
    }
}

/// Which clause of the quantum deduction definition fired, with enough
/// detail to replay the decision.
#[derive(Debug, Clone)]
pub enum QDeductionTrace {
    Membership,
    Thesis(ThesisKind),
    Subset {
        delta: Vec<Formula>,
        /// world name of the non-triviality witness
        witness_world: String,
        entailment_bound: usize,
    },
    /// All subsets failed with definitive entailment countermodels.
    Refuted,
    /// Bound exhaustion blocked a definitive answer somewhere.
    BoundExhausted,
}

#[derive(Debug, Clone)]
pub enum ThesisKind {
    /// Conclusion of a hypothesis-free script in the theorem library.
    Library(String),
    /// No countermodel up to the stated bound.
    ValidUpToBound(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivability {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Derivability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Derivability::Yes => "yes",
            Derivability::No => "no",
            Derivability::Unknown => "unknown",
        })
    }
}

/// Decides whether `alpha` is quantum-deducible from `gamma`.
///
/// Subsets of `gamma` are searched smallest first, then in ascending
/// index-mask order, so the reported trace is deterministic.
pub fn quantum_derives(
    gamma: &[Formula],
    alpha: &Formula,
    sig: &Signature,
    bound: &SearchBound,
) -> Result<(Derivability, QDeductionTrace), SearchError> {
    // clause 1: membership
    if gamma.contains(alpha) {
        return Ok((Derivability::Yes, QDeductionTrace::Membership));
    }

    // clause 2: thesis of the system
    for script in theorem_library() {
        if script.hypotheses.is_empty() && script.conclusion() == Some(alpha) {
            return Ok((
                Derivability::Yes,
                QDeductionTrace::Thesis(ThesisKind::Library(script.name)),
            ));
        }
    }
    if let Verdict::ValidUpToBound(b) = check_validity(alpha, sig, bound)? {
        return Ok((
            Derivability::Yes,
            QDeductionTrace::Thesis(ThesisKind::ValidUpToBound(b)),
        ));
    }

    // clause 3: a non-trivial subset that classically entails alpha
    let n = gamma.len();
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut exhausted = false;
    for mask in masks {
        let delta: Vec<Formula> = gamma
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| f.clone())
            .collect();
        match entails(&delta, alpha, sig, bound)? {
            Verdict::Countermodel { .. } => continue, // definitive failure
            Verdict::Unknown => {
                exhausted = true;
                continue;
            }
            Verdict::ValidUpToBound(b) => {
                let mut with_alpha = delta.clone();
                with_alpha.push(alpha.clone());
                match is_satisfiable(&with_alpha, sig, bound)? {
                    SatVerdict::Witness { model, world } => {
                        let _ = model;
                        return Ok((
                            Derivability::Yes,
                            QDeductionTrace::Subset {
                                delta,
                                witness_world: world,
                                entailment_bound: b,
                            },
                        ));
                    }
                    // the set may still be satisfiable beyond the bound
                    SatVerdict::UnsatUpToBound(_) => exhausted = true,
                }
            }
        }
    }
    if exhausted {
        Ok((Derivability::Unknown, QDeductionTrace::BoundExhausted))
    } else {
        Ok((Derivability::No, QDeductionTrace::Refuted))
    }
}

/// One line of the non-adjunction report.
#[derive(Debug, Clone)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Verifies the signature non-adjunction properties: a formula and its
/// subcontrary negation are jointly deducible, yet they explode into
/// neither an arbitrary formula nor its exclusion negation; and no
/// sampled satisfiable premise set yields `p & ~1 p` or, with
/// orthogonality, `a & ~2 a`.
pub fn check_nonadjunction(
    sig: &Signature,
    bound: &SearchBound,
) -> Result<Vec<PropertyResult>, SearchError> {
    let mut sig = sig.clone();
    sig.add_atom("p");
    sig.add_atom("q");
    let p = Formula::atom("p");
    let q = Formula::atom("q");
    let n3p = Formula::neg3(p.clone());
    let premises = vec![p.clone(), n3p.clone()];

    let mut results = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        results.push(PropertyResult {
            name: name.to_string(),
            passed,
            detail,
        });
    };

    let sat = is_satisfiable(&premises, &sig, bound)?;
    push(
        "p, ~3 p satisfiable",
        sat.is_sat(),
        match &sat {
            SatVerdict::Witness { world, .. } => format!("witness at world {world}"),
            SatVerdict::UnsatUpToBound(b) => format!("unsat up to {b} worlds"),
        },
    );

    let (d, _) = quantum_derives(&premises, &Formula::and(p.clone(), n3p.clone()), &sig, bound)?;
    push(
        "p, ~3 p |~ p & ~3 p",
        d == Derivability::Yes,
        format!("derivability: {d}"),
    );

    let (d, _) = quantum_derives(&premises, &q, &sig, bound)?;
    push(
        "p, ~3 p |/~ q",
        d == Derivability::No,
        format!("derivability: {d}"),
    );

    let (d, _) = quantum_derives(&premises, &Formula::neg(q.clone()), &sig, bound)?;
    push(
        "p, ~3 p |/~ ~1 q",
        d == Derivability::No,
        format!("derivability: {d}"),
    );

    // sampled satisfiable premise sets must never yield p & ~1 p
    let contradiction = Formula::and(p.clone(), Formula::neg(p.clone()));
    let samples: Vec<Vec<Formula>> = vec![
        vec![p.clone()],
        vec![q.clone()],
        vec![Formula::neg(p.clone())],
        vec![p.clone(), n3p.clone()],
        vec![Formula::diamond(p.clone()), q.clone()],
    ];
    let mut all_blocked = true;
    let mut detail = String::from("all sampled premise sets blocked");
    for gamma in &samples {
        if !is_satisfiable(gamma, &sig, bound)?.is_sat() {
            continue;
        }
        let (d, _) = quantum_derives(gamma, &contradiction, &sig, bound)?;
        if d == Derivability::Yes {
            all_blocked = false;
            detail = format!("derived p & ~1 p from a satisfiable premise set");
        }
    }
    push("no Gamma |~ p & ~1 p", all_blocked, detail);

    // with orthogonality: a & ~2 a never derivable from the samples
    if let Some((a, a_perp)) = sig.perp_pairs().into_iter().next() {
        let pair = Formula::and(Formula::atom(a.clone()), Formula::atom(a_perp.clone()));
        let mut all_blocked = true;
        let mut detail = String::from("all sampled premise sets blocked");
        for gamma in &samples {
            if !is_satisfiable(gamma, &sig, bound)?.is_sat() {
                continue;
            }
            let (d, _) = quantum_derives(gamma, &pair, &sig, bound)?;
            if d == Derivability::Yes {
                all_blocked = false;
                detail = format!("derived |{a}> & |{a_perp}> from a satisfiable premise set");
            }
        }
        push("no Gamma |~ a & ~2 a", all_blocked, detail);

        let sat = is_satisfiable(&[pair], &sig, bound)?;
        push(
            "a & ~2 a unsatisfiable under orthogonality",
            !sat.is_sat() == bound.orthogonality,
            format!("orthogonality {}", if bound.orthogonality { "on" } else { "off" }),
        );
    }

    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_with;
    use crate::kripke::FrameClass;

    fn f(text: &str, sig: &mut Signature) -> Formula {
        parse_with(text, sig, true).unwrap()
    }

    #[test]
    fn neg2_maps_to_the_declared_partner() {
        let mut sig = Signature::new();
        sig.add_perp("cat_alive", "cat_dead").unwrap();
        let alive = Formula::atom("cat_alive");
        assert_eq!(
            apply_negation(NegationKind::Neg2, &alive, &sig).unwrap(),
            Formula::atom("cat_dead")
        );
        assert!(matches!(
            apply_negation(NegationKind::Neg2, &Formula::neg(alive), &sig),
            Err(ParseError::Neg2OnNonAtom)
        ));
    }

    #[test]
    fn neg3_is_neg_box() {
        let p = Formula::atom("p");
        let sig = Signature::with_atoms(["p"]);
        assert_eq!(
            apply_negation(NegationKind::Neg3, &p, &sig).unwrap(),
            Formula::neg(Formula::boxed(p))
        );
    }

    #[test]
    fn double_neg1_is_eval_equivalent_not_structurally_collapsed() {
        let p = Formula::atom("p");
        let sig = Signature::with_atoms(["p"]);
        let nn = apply_negation(
            NegationKind::Neg1,
            &apply_negation(NegationKind::Neg1, &p, &sig).unwrap(),
            &sig,
        )
        .unwrap();
        assert_ne!(nn, p);
        let m = crate::kripke::cat_model();
        let alive = Formula::atom("alive");
        let nn_alive = Formula::neg(Formula::neg(alive.clone()));
        for w in 0..3 {
            assert_eq!(m.eval(w, &alive).unwrap(), m.eval(w, &nn_alive).unwrap());
        }
    }

    #[test]
    fn membership_clause() {
        let sig = Signature::with_atoms(["p"]);
        let p = Formula::atom("p");
        let bound = SearchBound::new(2, FrameClass::S5);
        let (d, trace) = quantum_derives(&[p.clone()], &p, &sig, &bound).unwrap();
        assert_eq!(d, Derivability::Yes);
        assert!(matches!(trace, QDeductionTrace::Membership));
    }

    #[test]
    fn membership_is_monotone() {
        let sig = Signature::with_atoms(["p", "q"]);
        let p = Formula::atom("p");
        let q = Formula::atom("q");
        let bound = SearchBound::new(2, FrameClass::S5);
        let (d, _) = quantum_derives(&[p.clone(), q], &p, &sig, &bound).unwrap();
        assert_eq!(d, Derivability::Yes);
    }

    #[test]
    fn explosion_fails_from_p_and_neg3_p() {
        let mut sig = Signature::new();
        let p = f("|p>", &mut sig);
        let n3p = f("~3 |p>", &mut sig);
        let q = f("|q>", &mut sig);
        let bound = SearchBound::new(2, FrameClass::S5);
        let (d, trace) = quantum_derives(&[p.clone(), n3p.clone()], &q, &sig, &bound).unwrap();
        assert_eq!(d, Derivability::No);
        assert!(matches!(trace, QDeductionTrace::Refuted));
        let (d, _) =
            quantum_derives(&[p, n3p], &Formula::neg(q), &sig, &bound).unwrap();
        assert_eq!(d, Derivability::No);
    }

    #[test]
    fn subcontrary_conjunction_is_derivable() {
        let mut sig = Signature::new();
        let p = f("|p>", &mut sig);
        let n3p = f("~3 |p>", &mut sig);
        let both = Formula::and(p.clone(), n3p.clone());
        let bound = SearchBound::new(2, FrameClass::S5);
        let (d, trace) = quantum_derives(&[p.clone(), n3p.clone()], &both, &sig, &bound).unwrap();
        assert_eq!(d, Derivability::Yes);
        match trace {
            QDeductionTrace::Subset { delta, .. } => assert_eq!(delta, vec![p, n3p]),
            other => panic!("expected the subset clause, got {other:?}"),
        }
    }

    #[test]
    fn thesis_clause_via_library_and_validity() {
        let mut sig = Signature::new();
        let thm = theorem_library()
            .into_iter()
            .find(|s| s.name == "thm-3.1")
            .unwrap();
        let alpha = thm.conclusion().unwrap().clone();
        let bound = SearchBound::new(2, FrameClass::S4);
        let (d, trace) = quantum_derives(&[], &alpha, &thm.sig, &bound).unwrap();
        assert_eq!(d, Derivability::Yes);
        assert!(matches!(
            trace,
            QDeductionTrace::Thesis(ThesisKind::Library(_))
        ));

        let valid = f("~(|p> & ~|p>)", &mut sig);
        let (d, trace) = quantum_derives(&[], &valid, &sig, &bound).unwrap();
        assert_eq!(d, Derivability::Yes);
        assert!(matches!(
            trace,
            QDeductionTrace::Thesis(ThesisKind::ValidUpToBound(_))
        ));
    }

    #[test]
    fn thm_3_4_conclusion_is_derivable_from_psi1() {
        let mut sig = Signature::new();
        let psi1 = f("|psi1>", &mut sig);
        let not_star = f("~(|psi1> * |psi2>)", &mut sig);
        let bound = SearchBound::new(3, FrameClass::S4);
        let (d, _) = quantum_derives(&[psi1], &not_star, &sig, &bound).unwrap();
        assert_eq!(d, Derivability::Yes);
    }

    #[test]
    fn nonadjunction_report_passes() {
        let mut sig = Signature::new();
        sig.add_perp("a", "a_perp").unwrap();
        let bound = SearchBound::new(2, FrameClass::S5);
        let report = check_nonadjunction(&sig, &bound).unwrap();
        for property in &report {
            assert!(property.passed, "{}: {}", property.name, property.detail);
        }
    }
}
