//! Hilbert-style proof checker for S4 plus the four superposition
//! axioms, and a bundled machine-checked theorem library.
//!
//! The propositional base is handled by a tautology-instance rule: a
//! line may be justified as a propositional tautology, verified by
//! truth table with modal and basic subformulas treated as opaque
//! letters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse_with, Formula, ParseError, Signature};
use crate::kripke::FrameClass;

/// Axiom schemata available to proofs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchemaId {
    /// Any propositional tautology (verified by truth table).
    #[serde(rename = "PC-taut")]
    PcTaut,
    /// Distribution: [](A -> B) -> ([]A -> []B).
    K,
    /// Reflexivity: []A -> A.
    T,
    /// Transitivity: []A -> [][]A.
    #[serde(rename = "4")]
    Four,
    /// Superposition excludes components: (a * b) -> ~(a \/ b).
    QS1,
    /// Measurement factivity on atoms: M a -> a.
    QS2,
    /// Measured superposition collapses: M(a*b) & (a*b) -> (<>a \/ <>b).
    QS3,
    /// No joint evolution: M(a*b) -> ~<>(a & b).
    QS4,
}

impl SchemaId {
    /// The weakest frame class whose proofs may use this schema.
    pub fn minimum_class(&self) -> FrameClass {
        match self {
            SchemaId::T => FrameClass::T,
            SchemaId::Four => FrameClass::S4,
            _ => FrameClass::K,
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemaId::PcTaut => "PC-taut",
            SchemaId::K => "K",
            SchemaId::T => "T",
            SchemaId::Four => "4",
            SchemaId::QS1 => "QS1",
            SchemaId::QS2 => "QS2",
            SchemaId::QS3 => "QS3",
            SchemaId::QS4 => "QS4",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("schema {schema} needs metavariable {name}")]
    MissingMetavariable { schema: SchemaId, name: String },
    #[error("metavariable {name} of {schema} requires a basic formula, got {got}")]
    NotBasic {
        schema: SchemaId,
        name: String,
        got: String,
    },
    #[error("metavariable {name} of {schema} requires an atom, got {got}")]
    NotAtom {
        schema: SchemaId,
        name: String,
        got: String,
    },
    #[error("instantiation is not well-formed: {0}")]
    IllFormedInstance(String),
    #[error("schema {0} takes no substitution")]
    NoSubstitution(SchemaId),
    #[error("too many propositional letters for a truth-table check: {0}")]
    TautologyTooLarge(usize),
}

fn lookup<'a>(
    schema: SchemaId,
    subst: &'a BTreeMap<String, Formula>,
    name: &str,
) -> Result<&'a Formula, ProofError> {
    subst.get(name).ok_or_else(|| ProofError::MissingMetavariable {
        schema,
        name: name.to_string(),
    })
}

fn basic(schema: SchemaId, subst: &BTreeMap<String, Formula>, name: &str) -> Result<Formula, ProofError> {
    let f = lookup(schema, subst, name)?;
    if !f.is_basic() {
        return Err(ProofError::NotBasic {
            schema,
            name: name.to_string(),
            got: f.render(),
        });
    }
    Ok(f.clone())
}

/// Instantiates an axiom schema. Metavariables are `A`/`B` for the
/// modal schemata (arbitrary formulas) and `alpha`/`beta` for the
/// superposition schemata (basic formulas; `QS2` takes an atom).
pub fn instantiate_axiom(
    schema: SchemaId,
    subst: &BTreeMap<String, Formula>,
) -> Result<Formula, ProofError> {
    let f = match schema {
        SchemaId::PcTaut => return Err(ProofError::NoSubstitution(schema)),
        SchemaId::K => {
            let a = lookup(schema, subst, "A")?.clone();
            let b = lookup(schema, subst, "B")?.clone();
            Formula::hook(
                Formula::boxed(Formula::hook(a.clone(), b.clone())),
                Formula::hook(Formula::boxed(a), Formula::boxed(b)),
            )
        }
        SchemaId::T => {
            let a = lookup(schema, subst, "A")?.clone();
            Formula::hook(Formula::boxed(a.clone()), a)
        }
        SchemaId::Four => {
            let a = lookup(schema, subst, "A")?.clone();
            Formula::hook(
                Formula::boxed(a.clone()),
                Formula::boxed(Formula::boxed(a)),
            )
        }
        SchemaId::QS1 => {
            let a = basic(schema, subst, "alpha")?;
            let b = basic(schema, subst, "beta")?;
            Formula::hook(
                Formula::star(a.clone(), b.clone()),
                Formula::neg(Formula::or(a, b)),
            )
        }
        SchemaId::QS2 => {
            let a = lookup(schema, subst, "alpha")?.clone();
            if !matches!(a, Formula::Atom(_)) {
                return Err(ProofError::NotAtom {
                    schema,
                    name: "alpha".into(),
                    got: a.render(),
                });
            }
            Formula::hook(Formula::meas(a.clone()), a)
        }
        SchemaId::QS3 => {
            let a = basic(schema, subst, "alpha")?;
            let b = basic(schema, subst, "beta")?;
            let star = Formula::star(a.clone(), b.clone());
            Formula::hook(
                Formula::and(Formula::meas(star.clone()), star),
                Formula::or(Formula::diamond(a), Formula::diamond(b)),
            )
        }
        SchemaId::QS4 => {
            let a = basic(schema, subst, "alpha")?;
            let b = basic(schema, subst, "beta")?;
            Formula::hook(
                Formula::meas(Formula::star(a.clone(), b.clone())),
                Formula::neg(Formula::diamond(Formula::and(a, b))),
            )
        }
    };
    if let Err(violations) = f.well_formed() {
        return Err(ProofError::IllFormedInstance(violations[0].to_string()));
    }
    Ok(f)
}

/// Truth-table tautology check. Maximal subformulas that are not built
/// from `~`, `&`, `\/` (atoms, stars, diamonds, measurements) are
/// treated as opaque propositional letters.
pub fn is_pc_tautology(f: &Formula) -> Result<bool, ProofError> {
    fn letters(f: &Formula, out: &mut Vec<Formula>) {
        match f {
            Formula::Neg(a) => letters(a, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                letters(a, out);
                letters(b, out);
            }
            _ => {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
        }
    }
    fn truth(f: &Formula, letters: &[Formula], assignment: u32) -> bool {
        match f {
            Formula::Neg(a) => !truth(a, letters, assignment),
            Formula::And(a, b) => truth(a, letters, assignment) && truth(b, letters, assignment),
            Formula::Or(a, b) => truth(a, letters, assignment) || truth(b, letters, assignment),
            _ => {
                let i = letters.iter().position(|l| l == f).expect("collected letter");
                assignment >> i & 1 == 1
            }
        }
    }
    let mut lets = Vec::new();
    letters(f, &mut lets);
    if lets.len() > 20 {
        return Err(ProofError::TautologyTooLarge(lets.len()));
    }
    Ok((0u32..1 << lets.len()).all(|a| truth(f, &lets, a)))
}

/// How a proof line is justified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Hypothesis,
    AxiomInstance {
        schema: SchemaId,
        subst: BTreeMap<String, Formula>,
    },
    /// The line itself is a propositional tautology.
    PcTautology,
    /// From antecedent line `i` and implication line `j`.
    ModusPonens(usize, usize),
    Necessitation(usize),
    /// `~<>F <-> []~F` and `~[]F <-> <>~F`, at top level or under one
    /// negation.
    DualityRewrite(usize),
    /// Restates line `i`; surface definitions are already expanded by
    /// the parser, so this is a canonical-form equality check.
    Definition(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

/// A numbered Hilbert-style proof with hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub name: String,
    pub class: FrameClass,
    pub sig: Signature,
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

impl ProofScript {
    /// The theorem statement: the final line.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

/// First-bad-line report from [`check_proof`].
#[derive(Debug, Clone, Error)]
#[error("line {line}: {reason}")]
pub struct BadLine {
    pub line: usize,
    pub reason: String,
}

fn fail(line: usize, reason: impl Into<String>) -> BadLine {
    BadLine {
        line,
        reason: reason.into(),
    }
}

// Decomposes an implication with a given antecedent: either the Sasaki
// hook ~A \/ (A & B) or the material ~A \/ B.
fn consequent_of(implication: &Formula, antecedent: &Formula) -> Option<Formula> {
    let Formula::Or(lhs, rhs) = implication else {
        return None;
    };
    let Formula::Neg(a) = lhs.as_ref() else {
        return None;
    };
    if a.as_ref() != antecedent {
        return None;
    }
    if let Formula::And(a2, b) = rhs.as_ref() {
        if a2.as_ref() == antecedent {
            return Some(b.as_ref().clone());
        }
    }
    Some(rhs.as_ref().clone())
}

// One duality rewrite step: ~<>F <-> []~F, or ~[]F <-> <>~F (on the
// canonical box-free AST these insert or remove a double negation).
fn dual_step(from: &Formula, to: &Formula) -> bool {
    fn forward(from: &Formula, to: &Formula) -> bool {
        // ~<>F  =>  []~F  (i.e. ~<>~~F)
        if let (Formula::Neg(d1), Formula::Neg(d2)) = (from, to) {
            if let (Formula::Diamond(p), Formula::Diamond(q)) = (d1.as_ref(), d2.as_ref()) {
                if let Formula::Neg(inner) = q.as_ref() {
                    if let Formula::Neg(inner2) = inner.as_ref() {
                        if inner2.as_ref() == p.as_ref() {
                            return true;
                        }
                    }
                }
            }
        }
        // ~[]F (= ~~<>~F)  =>  <>~F
        if let Formula::Neg(n1) = from {
            if let Formula::Neg(d) = n1.as_ref() {
                if matches!(d.as_ref(), Formula::Diamond(p) if matches!(p.as_ref(), Formula::Neg(_)))
                    && d.as_ref() == to
                {
                    return true;
                }
            }
        }
        false
    }
    forward(from, to) || forward(to, from)
}

fn duality_related(from: &Formula, to: &Formula) -> bool {
    if dual_step(from, to) {
        return true;
    }
    if let (Formula::Neg(a), Formula::Neg(b)) = (from, to) {
        return dual_step(a, b);
    }
    false
}

/// Verifies every line of a proof against its justification. Returns
/// the first bad line on failure.
pub fn check_proof(script: &ProofScript) -> Result<(), BadLine> {
    let mut depends_on_hypotheses = vec![false; script.lines.len()];
    for (idx, line) in script.lines.iter().enumerate() {
        let number = idx + 1;
        if let Err(violations) = line.formula.well_formed() {
            return Err(fail(number, violations[0].to_string()));
        }
        let cite = |n: usize| -> Result<&ProofLine, BadLine> {
            if n == 0 || n > idx {
                return Err(fail(
                    number,
                    format!("cited line {n} does not precede line {number}"),
                ));
            }
            Ok(&script.lines[n - 1])
        };
        match &line.justification {
            Justification::Hypothesis => {
                if !script.hypotheses.contains(&line.formula) {
                    return Err(fail(number, "formula is not among the hypotheses"));
                }
                depends_on_hypotheses[idx] = true;
            }
            Justification::AxiomInstance { schema, subst } => {
                if script.class < schema.minimum_class() {
                    return Err(fail(
                        number,
                        format!(
                            "schema {schema} needs frame class {} but the script assumes {}",
                            schema.minimum_class(),
                            script.class
                        ),
                    ));
                }
                let expected = instantiate_axiom(*schema, subst)
                    .map_err(|e| fail(number, e.to_string()))?;
                if expected != line.formula {
                    return Err(fail(
                        number,
                        format!("formula differs from the {schema} instance {expected}"),
                    ));
                }
            }
            Justification::PcTautology => {
                let ok = is_pc_tautology(&line.formula).map_err(|e| fail(number, e.to_string()))?;
                if !ok {
                    return Err(fail(number, "formula is not a propositional tautology"));
                }
            }
            Justification::ModusPonens(i, j) => {
                let antecedent = cite(*i)?;
                let implication = cite(*j)?;
                match consequent_of(&implication.formula, &antecedent.formula) {
                    Some(conclusion) if conclusion == line.formula => {}
                    Some(conclusion) => {
                        return Err(fail(
                            number,
                            format!("modus ponens yields {conclusion}, not {}", line.formula),
                        ))
                    }
                    None => {
                        return Err(fail(
                            number,
                            format!(
                                "line {j} is not an implication with line {i} as antecedent"
                            ),
                        ))
                    }
                }
                depends_on_hypotheses[idx] =
                    depends_on_hypotheses[*i - 1] || depends_on_hypotheses[*j - 1];
            }
            Justification::Necessitation(i) => {
                let premise = cite(*i)?;
                if depends_on_hypotheses[*i - 1] {
                    return Err(fail(
                        number,
                        format!("necessitation applied to hypothesis-dependent line {i}"),
                    ));
                }
                if line.formula != Formula::boxed(premise.formula.clone()) {
                    return Err(fail(number, "formula is not the box of the cited line"));
                }
            }
            Justification::DualityRewrite(i) => {
                let premise = cite(*i)?;
                if !duality_related(&premise.formula, &line.formula) {
                    return Err(fail(
                        number,
                        format!("no duality rewrite relates line {i} to this line"),
                    ));
                }
                depends_on_hypotheses[idx] = depends_on_hypotheses[*i - 1];
            }
            Justification::Definition(i) => {
                let premise = cite(*i)?;
                if premise.formula != line.formula {
                    return Err(fail(
                        number,
                        format!("line does not restate line {i} in canonical form"),
                    ));
                }
                depends_on_hypotheses[idx] = depends_on_hypotheses[*i - 1];
            }
        }
    }
    Ok(())
}

fn subst(pairs: &[(&str, Formula)]) -> BTreeMap<String, Formula> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn axiom(schema: SchemaId, pairs: &[(&str, Formula)]) -> ProofLine {
    let map = subst(pairs);
    ProofLine {
        formula: instantiate_axiom(schema, &map).expect("library axiom instance"),
        justification: Justification::AxiomInstance { schema, subst: map },
    }
}

fn taut(f: Formula) -> ProofLine {
    ProofLine {
        formula: f,
        justification: Justification::PcTautology,
    }
}

fn hyp(f: Formula) -> ProofLine {
    ProofLine {
        formula: f,
        justification: Justification::Hypothesis,
    }
}

fn mp(f: Formula, i: usize, j: usize) -> ProofLine {
    ProofLine {
        formula: f,
        justification: Justification::ModusPonens(i, j),
    }
}

/// The bundled theorem library. Every script passes [`check_proof`];
/// the acceptance suite re-verifies each one semantically.
pub fn theorem_library() -> Vec<ProofScript> {
    let psi1 = Formula::atom("psi1");
    let psi2 = Formula::atom("psi2");
    let star = Formula::star(psi1.clone(), psi2.clone());
    let sig = Signature::with_atoms(["psi1", "psi2"]);

    let mut library = Vec::new();

    // Thm 3.1: |- (psi1 * psi2) -> (~psi1 & ~psi2)
    {
        let goal = Formula::hook(
            star.clone(),
            Formula::and(Formula::neg(psi1.clone()), Formula::neg(psi2.clone())),
        );
        let ax = instantiate_axiom(
            SchemaId::QS1,
            &subst(&[("alpha", psi1.clone()), ("beta", psi2.clone())]),
        )
        .unwrap();
        library.push(ProofScript {
            name: "thm-3.1".into(),
            class: FrameClass::K,
            sig: sig.clone(),
            hypotheses: vec![],
            lines: vec![
                axiom(SchemaId::QS1, &[("alpha", psi1.clone()), ("beta", psi2.clone())]),
                taut(Formula::hook(ax.clone(), goal.clone())),
                mp(goal, 1, 2),
            ],
        });
    }

    // Thm 3.2: |- (psi1 * psi2) -> ~(psi1 & psi2)
    {
        let goal = Formula::hook(
            star.clone(),
            Formula::neg(Formula::and(psi1.clone(), psi2.clone())),
        );
        let ax = instantiate_axiom(
            SchemaId::QS1,
            &subst(&[("alpha", psi1.clone()), ("beta", psi2.clone())]),
        )
        .unwrap();
        library.push(ProofScript {
            name: "thm-3.2".into(),
            class: FrameClass::K,
            sig: sig.clone(),
            hypotheses: vec![],
            lines: vec![
                axiom(SchemaId::QS1, &[("alpha", psi1.clone()), ("beta", psi2.clone())]),
                taut(Formula::hook(ax.clone(), goal.clone())),
                mp(goal, 1, 2),
            ],
        });
    }

    // Cor 3.1: the perp instance |psi> * |psi_perp> -> ~(|psi> & |psi_perp>)
    {
        let psi = Formula::atom("psi");
        let perp = Formula::atom("psi_perp");
        let mut cor_sig = Signature::new();
        cor_sig.add_perp("psi", "psi_perp").unwrap();
        let star_p = Formula::star(psi.clone(), perp.clone());
        let goal = Formula::hook(
            star_p,
            Formula::neg(Formula::and(psi.clone(), perp.clone())),
        );
        let ax = instantiate_axiom(
            SchemaId::QS1,
            &subst(&[("alpha", psi.clone()), ("beta", perp.clone())]),
        )
        .unwrap();
        library.push(ProofScript {
            name: "cor-3.1".into(),
            class: FrameClass::K,
            sig: cor_sig,
            hypotheses: vec![],
            lines: vec![
                axiom(SchemaId::QS1, &[("alpha", psi), ("beta", perp)]),
                taut(Formula::hook(ax.clone(), goal.clone())),
                mp(goal, 1, 2),
            ],
        });
    }

    // Thm 3.3: M(psi1 * psi2) |- ~(psi1 & psi2), on reflexive frames.
    // The hypothesis carries the measurement operator; without it the
    // modus ponens with QS4 would not go through.
    {
        let m_star = Formula::meas(star.clone());
        let not_diamond = Formula::neg(Formula::diamond(Formula::and(
            psi1.clone(),
            psi2.clone(),
        )));
        let not_conj = Formula::neg(Formula::and(psi1.clone(), psi2.clone()));
        let boxed = Formula::boxed(not_conj.clone());
        let t_ax = instantiate_axiom(SchemaId::T, &subst(&[("A", not_conj.clone())])).unwrap();
        library.push(ProofScript {
            name: "thm-3.3".into(),
            class: FrameClass::T,
            sig: sig.clone(),
            hypotheses: vec![m_star.clone()],
            lines: vec![
                hyp(m_star),
                axiom(SchemaId::QS4, &[("alpha", psi1.clone()), ("beta", psi2.clone())]),
                mp(not_diamond, 1, 2),
                ProofLine {
                    formula: boxed,
                    justification: Justification::DualityRewrite(3),
                },
                ProofLine {
                    formula: t_ax,
                    justification: Justification::AxiomInstance {
                        schema: SchemaId::T,
                        subst: subst(&[("A", not_conj.clone())]),
                    },
                },
                mp(not_conj, 4, 5),
            ],
        });
    }

    // Thm 3.4: psi1 |- ~(psi1 * psi2)
    {
        let not_star = Formula::neg(star.clone());
        let ax = instantiate_axiom(
            SchemaId::QS1,
            &subst(&[("alpha", psi1.clone()), ("beta", psi2.clone())]),
        )
        .unwrap();
        let bridge = Formula::hook(psi1.clone(), not_star.clone());
        library.push(ProofScript {
            name: "thm-3.4".into(),
            class: FrameClass::K,
            sig: sig.clone(),
            hypotheses: vec![psi1.clone()],
            lines: vec![
                hyp(psi1.clone()),
                axiom(SchemaId::QS1, &[("alpha", psi1.clone()), ("beta", psi2.clone())]),
                taut(Formula::hook(ax.clone(), bridge.clone())),
                mp(bridge, 2, 3),
                mp(not_star, 1, 4),
            ],
        });
    }

    // Thm 3.5: psi1 & psi2 |- ~(psi1 * psi2)
    {
        let both = Formula::and(psi1.clone(), psi2.clone());
        let not_star = Formula::neg(star.clone());
        let ax = instantiate_axiom(
            SchemaId::QS1,
            &subst(&[("alpha", psi1.clone()), ("beta", psi2.clone())]),
        )
        .unwrap();
        let bridge = Formula::hook(both.clone(), not_star.clone());
        library.push(ProofScript {
            name: "thm-3.5".into(),
            class: FrameClass::K,
            sig: sig.clone(),
            hypotheses: vec![both.clone()],
            lines: vec![
                hyp(both),
                axiom(SchemaId::QS1, &[("alpha", psi1.clone()), ("beta", psi2.clone())]),
                taut(Formula::hook(ax.clone(), bridge.clone())),
                mp(bridge, 2, 3),
                mp(not_star, 1, 4),
            ],
        });
    }

    // Thm 4.1 (S5): |psi> * |psi_perp> -> ~[](|psi> & |psi_perp>);
    // the conclusion uses the paraconsistent negation ~3 C = ~[]C.
    {
        let psi = Formula::atom("psi");
        let perp = Formula::atom("psi_perp");
        let mut thm_sig = Signature::new();
        thm_sig.add_perp("psi", "psi_perp").unwrap();
        let star_p = Formula::star(psi.clone(), perp.clone());
        let conj = Formula::and(psi.clone(), perp.clone());
        let not_conj = Formula::neg(conj.clone());
        let not_box = Formula::neg3(conj.clone());
        let qs1 = instantiate_axiom(
            SchemaId::QS1,
            &subst(&[("alpha", psi.clone()), ("beta", perp.clone())]),
        )
        .unwrap();
        let step3 = Formula::hook(star_p.clone(), not_conj.clone());
        let t_ax = instantiate_axiom(SchemaId::T, &subst(&[("A", conj.clone())])).unwrap();
        let contra = Formula::hook(not_conj.clone(), not_box.clone());
        let chain = Formula::hook(
            step3.clone(),
            Formula::hook(contra.clone(), Formula::hook(star_p.clone(), not_box.clone())),
        );
        let tail = Formula::hook(contra.clone(), Formula::hook(star_p.clone(), not_box.clone()));
        let goal = Formula::hook(star_p, not_box);
        library.push(ProofScript {
            name: "thm-4.1".into(),
            class: FrameClass::S5,
            sig: thm_sig,
            hypotheses: vec![],
            lines: vec![
                axiom(SchemaId::QS1, &[("alpha", psi), ("beta", perp)]),
                taut(Formula::hook(qs1.clone(), step3.clone())),
                mp(step3, 1, 2),
                ProofLine {
                    formula: t_ax.clone(),
                    justification: Justification::AxiomInstance {
                        schema: SchemaId::T,
                        subst: subst(&[("A", conj)]),
                    },
                },
                taut(Formula::hook(t_ax, contra.clone())),
                mp(contra, 4, 5),
                taut(chain),
                mp(tail, 3, 7),
                mp(goal, 6, 8),
            ],
        });
    }

    library
}

// ---------------------------------------------------------------------
// Proof script file format
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScriptFile {
    pub name: String,
    pub class: FrameClass,
    #[serde(default)]
    pub hypotheses: Vec<String>,
    #[serde(default)]
    pub perp: Vec<[String; 2]>,
    pub lines: Vec<ScriptLine>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScriptLine {
    pub index: usize,
    pub formula: String,
    pub justification: String,
    #[serde(default)]
    pub cites: Vec<usize>,
    #[serde(default)]
    pub schema: Option<SchemaId>,
    #[serde(default)]
    pub subst: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Error)]
pub enum ScriptError {
    #[error("script file: {0}")]
    Format(String),
    #[error("line {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error("line {index}: justification {justification:?} expects {expected} cited line(s)")]
    Cites {
        index: usize,
        justification: String,
        expected: usize,
    },
    #[error("line {index}: unknown justification {justification:?}")]
    UnknownJustification { index: usize, justification: String },
    #[error("line {index}: axiom justification needs a schema")]
    MissingSchema { index: usize },
    #[error("lines must be numbered 1..n in order, found {found} at position {position}")]
    BadNumbering { found: usize, position: usize },
    #[error(transparent)]
    Perp(#[from] ParseError),
}

impl ScriptFile {
    pub fn from_json(text: &str) -> Result<ScriptFile, ScriptError> {
        serde_json::from_str(text).map_err(|e| ScriptError::Format(e.to_string()))
    }

    /// Parses all surface formulas (atoms auto-registered) and builds a
    /// checkable script.
    pub fn into_script(self) -> Result<ProofScript, ScriptError> {
        let mut sig = Signature::new();
        for [a, b] in &self.perp {
            sig.add_perp(a.clone(), b.clone())?;
        }
        let mut hypotheses = Vec::new();
        for (i, h) in self.hypotheses.iter().enumerate() {
            hypotheses.push(parse_with(h, &mut sig, true).map_err(|source| ScriptError::Parse {
                index: i + 1,
                source,
            })?);
        }
        let mut lines = Vec::new();
        for (pos, line) in self.lines.iter().enumerate() {
            if line.index != pos + 1 {
                return Err(ScriptError::BadNumbering {
                    found: line.index,
                    position: pos + 1,
                });
            }
            let formula =
                parse_with(&line.formula, &mut sig, true).map_err(|source| ScriptError::Parse {
                    index: line.index,
                    source,
                })?;
            let expect_cites = |n: usize| -> Result<(), ScriptError> {
                if line.cites.len() != n {
                    Err(ScriptError::Cites {
                        index: line.index,
                        justification: line.justification.clone(),
                        expected: n,
                    })
                } else {
                    Ok(())
                }
            };
            let justification = match line.justification.as_str() {
                "hypothesis" => Justification::Hypothesis,
                "pc-taut" => Justification::PcTautology,
                "axiom" => {
                    let schema = line.schema.ok_or(ScriptError::MissingSchema {
                        index: line.index,
                    })?;
                    let mut map = BTreeMap::new();
                    for (k, v) in &line.subst {
                        let f = parse_with(v, &mut sig, true).map_err(|source| {
                            ScriptError::Parse {
                                index: line.index,
                                source,
                            }
                        })?;
                        map.insert(k.clone(), f);
                    }
                    Justification::AxiomInstance { schema, subst: map }
                }
                "modus-ponens" => {
                    expect_cites(2)?;
                    Justification::ModusPonens(line.cites[0], line.cites[1])
                }
                "necessitation" => {
                    expect_cites(1)?;
                    Justification::Necessitation(line.cites[0])
                }
                "duality" => {
                    expect_cites(1)?;
                    Justification::DualityRewrite(line.cites[0])
                }
                "definition" => {
                    expect_cites(1)?;
                    Justification::Definition(line.cites[0])
                }
                other => {
                    return Err(ScriptError::UnknownJustification {
                        index: line.index,
                        justification: other.to_string(),
                    })
                }
            };
            lines.push(ProofLine {
                formula,
                justification,
            });
        }
        Ok(ProofScript {
            name: self.name,
            class: self.class,
            sig,
            hypotheses,
            lines,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qs1_instantiation() {
        let f = instantiate_axiom(
            SchemaId::QS1,
            &subst(&[("alpha", Formula::atom("a")), ("beta", Formula::atom("b"))]),
        )
        .unwrap();
        let star = Formula::star(Formula::atom("a"), Formula::atom("b"));
        assert_eq!(
            f,
            Formula::hook(
                star,
                Formula::neg(Formula::or(Formula::atom("a"), Formula::atom("b")))
            )
        );
    }

    #[test]
    fn qs1_rejects_equal_operands() {
        let err = instantiate_axiom(
            SchemaId::QS1,
            &subst(&[("alpha", Formula::atom("a")), ("beta", Formula::atom("a"))]),
        )
        .unwrap_err();
        assert!(matches!(err, ProofError::IllFormedInstance(_)));
    }

    #[test]
    fn qs2_requires_an_atom() {
        let star = Formula::star(Formula::atom("a"), Formula::atom("b"));
        assert!(matches!(
            instantiate_axiom(SchemaId::QS2, &subst(&[("alpha", star)])),
            Err(ProofError::NotAtom { .. })
        ));
    }

    #[test]
    fn qs4_perp_instance() {
        let f = instantiate_axiom(
            SchemaId::QS4,
            &subst(&[
                ("alpha", Formula::atom("psi")),
                ("beta", Formula::atom("psi_perp")),
            ]),
        )
        .unwrap();
        assert!(f.well_formed().is_ok());
        assert!(f.render().contains("M ((|psi> * |psi_perp>))"));
    }

    #[test]
    fn tautology_checker_basics() {
        let p = Formula::atom("p");
        assert!(is_pc_tautology(&Formula::or(p.clone(), Formula::neg(p.clone()))).unwrap());
        assert!(!is_pc_tautology(&p).unwrap());
        // modal subformulas are opaque: <>p \/ ~<>p is a tautology,
        // <>p \/ <>~p is not
        let dp = Formula::diamond(p.clone());
        assert!(is_pc_tautology(&Formula::or(dp.clone(), Formula::neg(dp.clone()))).unwrap());
        assert!(!is_pc_tautology(&Formula::or(
            dp,
            Formula::diamond(Formula::neg(p))
        ))
        .unwrap());
    }

    #[test]
    fn library_checks() {
        let library = theorem_library();
        let names: Vec<&str> = library.iter().map(|s| s.name.as_str()).collect();
        for expected in ["thm-3.1", "thm-3.2", "cor-3.1", "thm-3.3", "thm-3.4", "thm-3.5", "thm-4.1"] {
            assert!(names.contains(&expected), "missing {expected}");
        }
        for script in &library {
            check_proof(script).unwrap_or_else(|e| panic!("{}: {e}", script.name));
        }
    }

    #[test]
    fn modus_ponens_on_non_implication_is_reported() {
        let p = Formula::atom("p");
        let script = ProofScript {
            name: "bad".into(),
            class: FrameClass::K,
            sig: Signature::with_atoms(["p"]),
            hypotheses: vec![p.clone()],
            lines: vec![
                hyp(p.clone()),
                mp(p, 1, 1),
            ],
        };
        let report = check_proof(&script).unwrap_err();
        assert_eq!(report.line, 2);
        assert!(report.reason.contains("not an implication"));
    }

    #[test]
    fn necessitation_guard_rejects_hypothesis_dependent_lines() {
        let p = Formula::atom("p");
        let script = ProofScript {
            name: "bad-nec".into(),
            class: FrameClass::S4,
            sig: Signature::with_atoms(["p"]),
            hypotheses: vec![p.clone()],
            lines: vec![
                hyp(p.clone()),
                ProofLine {
                    formula: Formula::boxed(p),
                    justification: Justification::Necessitation(1),
                },
            ],
        };
        let report = check_proof(&script).unwrap_err();
        assert!(report.reason.contains("hypothesis-dependent"));
    }

    #[test]
    fn necessitation_accepts_axiom_derived_lines() {
        let p = Formula::atom("p");
        let tautology = Formula::or(p.clone(), Formula::neg(p));
        let script = ProofScript {
            name: "nec-ok".into(),
            class: FrameClass::S4,
            sig: Signature::with_atoms(["p"]),
            hypotheses: vec![],
            lines: vec![
                taut(tautology.clone()),
                ProofLine {
                    formula: Formula::boxed(tautology),
                    justification: Justification::Necessitation(1),
                },
            ],
        };
        check_proof(&script).unwrap();
    }

    #[test]
    fn axiom_t_is_rejected_in_class_k() {
        let p = Formula::atom("p");
        let map = subst(&[("A", p)]);
        let script = ProofScript {
            name: "t-in-k".into(),
            class: FrameClass::K,
            sig: Signature::with_atoms(["p"]),
            hypotheses: vec![],
            lines: vec![ProofLine {
                formula: instantiate_axiom(SchemaId::T, &map).unwrap(),
                justification: Justification::AxiomInstance {
                    schema: SchemaId::T,
                    subst: map,
                },
            }],
        };
        let report = check_proof(&script).unwrap_err();
        assert!(report.reason.contains("frame class"));
    }

    #[test]
    fn schemata_closed_under_atom_renaming() {
        for (a, b) in [("x", "y"), ("fresh1", "fresh2"), ("u_1", "u_2")] {
            for schema in [SchemaId::QS1, SchemaId::QS3, SchemaId::QS4] {
                let f = instantiate_axiom(
                    schema,
                    &subst(&[("alpha", Formula::atom(a)), ("beta", Formula::atom(b))]),
                )
                .unwrap();
                assert!(f.well_formed().is_ok());
            }
        }
    }

    #[test]
    fn script_file_round_trips_thm_33() {
        let json = r#"{
            "name": "thm-3.3",
            "class": "T",
            "hypotheses": ["M (|psi1> * |psi2>)"],
            "lines": [
                {"index": 1, "formula": "M (|psi1> * |psi2>)", "justification": "hypothesis"},
                {"index": 2, "formula": "M (|psi1> * |psi2>) -> ~<>(|psi1> & |psi2>)",
                 "justification": "axiom", "schema": "QS4",
                 "subst": {"alpha": "|psi1>", "beta": "|psi2>"}},
                {"index": 3, "formula": "~<>(|psi1> & |psi2>)",
                 "justification": "modus-ponens", "cites": [1, 2]},
                {"index": 4, "formula": "[] ~(|psi1> & |psi2>)",
                 "justification": "duality", "cites": [3]},
                {"index": 5, "formula": "[] ~(|psi1> & |psi2>) -> ~(|psi1> & |psi2>)",
                 "justification": "axiom", "schema": "T",
                 "subst": {"A": "~(|psi1> & |psi2>)"}},
                {"index": 6, "formula": "~(|psi1> & |psi2>)",
                 "justification": "modus-ponens", "cites": [4, 5]}
            ]
        }"#;
        let script = ScriptFile::from_json(json).unwrap().into_script().unwrap();
        check_proof(&script).unwrap();
        let bundled = theorem_library()
            .into_iter()
            .find(|s| s.name == "thm-3.3")
            .unwrap();
        assert_eq!(script.conclusion(), bundled.conclusion());
    }
}
