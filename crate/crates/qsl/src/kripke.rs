//! Frames, models, the acceptability filter and the truth-evaluation
//! semantics.
//!
//! A model fixes a finite frame, a frame-class tag, and a valuation over
//! a subformula-closed domain of basic formulas. Valuations are filtered
//! by the acceptability constraint: a true superposition at a world
//! forces every subformula of its operands false at that world.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse, Formula, ParseError, Signature};

/// A finite Kripke frame: ordered worlds plus an accessibility relation
/// over world indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    worlds: Vec<String>,
    rel: Vec<(usize, usize)>,
}

impl Frame {
    pub fn new(worlds: Vec<String>, mut rel: Vec<(usize, usize)>) -> Result<Frame, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::EmptyFrame);
        }
        let n = worlds.len();
        if rel.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(ModelError::RelationOutOfRange);
        }
        rel.sort_unstable();
        rel.dedup();
        Ok(Frame { worlds, rel })
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn rel(&self) -> &[(usize, usize)] {
        &self.rel
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rel.binary_search(&(a, b)).is_ok()
    }

    pub fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.rel
            .iter()
            .filter(move |&&(a, _)| a == w)
            .map(|&(_, b)| b)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.world_count()).all(|w| self.related(w, w))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rel.iter().all(|&(a, b)| self.related(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.rel
            .iter()
            .all(|&(a, b)| self.successors(b).all(|c| self.related(a, c)))
    }

    /// wRw' and wRw'' imply w'Rw''.
    pub fn is_euclidean(&self) -> bool {
        self.rel.iter().all(|&(a, b)| {
            self.successors(a)
                .collect::<Vec<_>>()
                .iter()
                .all(|&c| self.related(b, c))
        })
    }

    /// Which of the four frame properties hold.
    pub fn properties(&self) -> FrameProperties {
        FrameProperties {
            reflexive: self.is_reflexive(),
            transitive: self.is_transitive(),
            symmetric: self.is_symmetric(),
            euclidean: self.is_euclidean(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameProperties {
    pub reflexive: bool,
    pub transitive: bool,
    pub symmetric: bool,
    pub euclidean: bool,
}

/// Frame classes the workbench supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrameClass {
    /// No condition.
    K,
    /// Reflexive.
    T,
    /// Reflexive and transitive.
    S4,
    /// Reflexive, transitive and symmetric.
    S5,
}

impl FrameClass {
    pub fn required(&self) -> &'static [&'static str] {
        match self {
            FrameClass::K => &[],
            FrameClass::T => &["reflexive"],
            FrameClass::S4 => &["reflexive", "transitive"],
            FrameClass::S5 => &["reflexive", "transitive", "symmetric"],
        }
    }

    /// The frame properties of `cls` that `frame` is missing.
    pub fn missing(&self, frame: &Frame) -> Vec<&'static str> {
        let props = frame.properties();
        self.required()
            .iter()
            .copied()
            .filter(|&name| match name {
                "reflexive" => !props.reflexive,
                "transitive" => !props.transitive,
                "symmetric" => !props.symmetric,
                _ => unreachable!(),
            })
            .collect()
    }

    pub fn admits(&self, frame: &Frame) -> bool {
        self.missing(frame).is_empty()
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameClass::K => "K",
            FrameClass::T => "T",
            FrameClass::S4 => "S4",
            FrameClass::S5 => "S5",
        })
    }
}

impl FromStr for FrameClass {
    type Err = String;

    fn from_str(s: &str) -> Result<FrameClass, String> {
        match s {
            "K" | "k" => Ok(FrameClass::K),
            "T" | "t" => Ok(FrameClass::T),
            "S4" | "s4" => Ok(FrameClass::S4),
            "S5" | "s5" => Ok(FrameClass::S5),
            other => Err(format!("unknown frame class {other:?} (use K, T, S4 or S5)")),
        }
    }
}

/// Report of [`check_frame_class`]: the four properties plus what the
/// requested class is missing.
#[derive(Debug, Clone)]
pub struct FrameClassReport {
    pub properties: FrameProperties,
    pub missing: Vec<&'static str>,
}

impl FrameClassReport {
    pub fn ok(&self) -> bool {
        self.missing.is_empty()
    }
}

pub fn check_frame_class(frame: &Frame, cls: FrameClass) -> FrameClassReport {
    FrameClassReport {
        properties: frame.properties(),
        missing: cls.missing(frame),
    }
}

/// An acceptability violation: a star true at a world together with a
/// true subformula of one of its operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptabilityViolation {
    pub world: String,
    pub star: Formula,
    pub offending: Formula,
}

impl fmt::Display for AcceptabilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at world {}: {} is true but its component subformula {} is also true",
            self.world, self.star, self.offending
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a frame needs at least one world")]
    EmptyFrame,
    #[error("accessibility pair references a world out of range")]
    RelationOutOfRange,
    #[error("domain is not closed under subformula: {0} is missing")]
    DomainNotClosed(String),
    #[error("domain entry is not a basic formula: {0}")]
    DomainNotBasic(String),
    #[error("valuation is not total: no value for {formula} at world {world}")]
    ValuationNotTotal { formula: String, world: String },
    #[error("basic subformula outside the model domain: {0}")]
    UnknownBasicFormula(String),
    #[error("unknown world {0}")]
    UnknownWorld(String),
    #[error("model file: {0}")]
    File(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A Kripke model over a subformula-closed domain of basic formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    class: FrameClass,
    sig: Signature,
    orthogonality: bool,
    domain: Vec<Formula>,
    // per-formula truth vector indexed by world
    val: BTreeMap<Formula, Vec<bool>>,
}

impl Model {
    /// Builds a model, checking domain closure and valuation totality.
    /// Basic formulas absent from `val` default to false everywhere.
    pub fn new(
        frame: Frame,
        class: FrameClass,
        sig: Signature,
        domain: Vec<Formula>,
        val: BTreeMap<Formula, Vec<bool>>,
        orthogonality: bool,
    ) -> Result<Model, ModelError> {
        let domain = close_domain(domain)?;
        let n = frame.world_count();
        let mut table = BTreeMap::new();
        for f in &domain {
            match val.get(f) {
                Some(v) if v.len() == n => {
                    table.insert(f.clone(), v.clone());
                }
                Some(_) => {
                    return Err(ModelError::ValuationNotTotal {
                        formula: f.render(),
                        world: "?".into(),
                    })
                }
                None => {
                    table.insert(f.clone(), vec![false; n]);
                }
            }
        }
        Ok(Model {
            frame,
            class,
            sig,
            orthogonality,
            domain,
            val: table,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn class(&self) -> FrameClass {
        self.class
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn orthogonality(&self) -> bool {
        self.orthogonality
    }

    pub fn domain(&self) -> &[Formula] {
        &self.domain
    }

    pub fn value(&self, f: &Formula, world: usize) -> Option<bool> {
        self.val.get(f).map(|v| v[world])
    }

    /// Checks the acceptability constraint: whenever a star is true at a
    /// world, every subformula of either operand (the operands included)
    /// is false there. Also enforces the orthogonality constraint on
    /// declared perp pairs when the model has it enabled.
    pub fn check_acceptability(&self) -> Result<(), Vec<AcceptabilityViolation>> {
        let mut violations = Vec::new();
        for (f, truths) in &self.val {
            let Formula::Star(a, b) = f else { continue };
            let mut components = a.subformulas();
            components.extend(b.subformulas());
            for (w, &t) in truths.iter().enumerate() {
                if !t {
                    continue;
                }
                for gamma in &components {
                    if self.value(gamma, w) == Some(true) {
                        violations.push(AcceptabilityViolation {
                            world: self.frame.worlds[w].clone(),
                            star: f.clone(),
                            offending: gamma.clone(),
                        });
                    }
                }
            }
        }
        if self.orthogonality {
            for (a, b) in self.sig.perp_pairs() {
                let (fa, fb) = (Formula::atom(a), Formula::atom(b));
                for w in 0..self.frame.world_count() {
                    if self.value(&fa, w) == Some(true) && self.value(&fb, w) == Some(true) {
                        violations.push(AcceptabilityViolation {
                            world: self.frame.worlds[w].clone(),
                            star: fa.clone(),
                            offending: fb.clone(),
                        });
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Truth at a world. Atoms and stars read from the valuation; `M` on
    /// an atom needs the atom true here plus a distinct accessible world
    /// where it is true; `M` on a star needs every distinct accessible
    /// world to value the operands differently, and at least one such
    /// world to exist.
    pub fn eval(&self, world: usize, f: &Formula) -> Result<bool, ModelError> {
        match f {
            Formula::Atom(_) | Formula::Star(_, _) => self
                .value(f, world)
                .ok_or_else(|| ModelError::UnknownBasicFormula(f.render())),
            Formula::Neg(a) => Ok(!self.eval(world, a)?),
            Formula::And(a, b) => Ok(self.eval(world, a)? && self.eval(world, b)?),
            Formula::Or(a, b) => Ok(self.eval(world, a)? || self.eval(world, b)?),
            Formula::Diamond(a) => {
                for w in self.frame.successors(world) {
                    if self.eval(w, a)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Meas(inner) => match inner.as_ref() {
                Formula::Star(a, b) => {
                    let mut witness = false;
                    for w in self.frame.successors(world) {
                        if w == world {
                            // The measured world itself is exempt from the
                            // distinct-values requirement (there the operands
                            // are typically both false, as in the superposed
                            // world of the cat model), but it must not carry
                            // both operands at once or the measurement could
                            // still reach their conjunction.
                            if self.eval(w, a)? && self.eval(w, b)? {
                                return Ok(false);
                            }
                            continue;
                        }
                        if self.eval(w, a)? == self.eval(w, b)? {
                            return Ok(false);
                        }
                        witness = true;
                    }
                    Ok(witness)
                }
                psi => {
                    if !self
                        .value(psi, world)
                        .ok_or_else(|| ModelError::UnknownBasicFormula(psi.render()))?
                    {
                        return Ok(false);
                    }
                    for w in self.frame.successors(world) {
                        if w != world && self.eval(w, psi)? {
                            return Ok(true);
                        }
                    }
                    Ok(false)
                }
            },
        }
    }

    pub fn eval_at(&self, world: &str, f: &Formula) -> Result<bool, ModelError> {
        let w = self
            .frame
            .world_index(world)
            .ok_or_else(|| ModelError::UnknownWorld(world.to_string()))?;
        self.eval(w, f)
    }

    pub fn holds_everywhere(&self, f: &Formula) -> Result<bool, ModelError> {
        for w in 0..self.frame.world_count() {
            if !self.eval(w, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serializes to the JSON model file format.
    pub fn to_file(&self) -> ModelFile {
        let mut valuation = BTreeMap::new();
        for (w, name) in self.frame.worlds.iter().enumerate() {
            let mut trues = Vec::new();
            for f in &self.domain {
                if self.value(f, w) == Some(true) {
                    trues.push(f.render());
                }
            }
            valuation.insert(name.clone(), trues);
        }
        ModelFile {
            worlds: self.frame.worlds.clone(),
            rel: self
                .frame
                .rel
                .iter()
                .map(|&(a, b)| {
                    [
                        self.frame.worlds[a].clone(),
                        self.frame.worlds[b].clone(),
                    ]
                })
                .collect(),
            frame_class: self.class,
            atoms: self.sig.atoms().map(str::to_string).collect(),
            perp: self
                .sig
                .perp_pairs()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
            valuation,
            orthogonality: self.orthogonality,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serialization")
    }

    pub fn from_json(text: &str) -> Result<Model, ModelError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| ModelError::File(e.to_string()))?;
        file.into_model()
    }
}

fn close_domain(domain: Vec<Formula>) -> Result<Vec<Formula>, ModelError> {
    let mut closed = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for f in &domain {
        if !f.is_basic() {
            return Err(ModelError::DomainNotBasic(f.render()));
        }
        for sub in f.subformulas() {
            if seen.insert(sub.clone()) {
                closed.push(sub);
            }
        }
    }
    Ok(closed)
}

/// On-disk model representation. Basic formulas absent from a world's
/// list are false there.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    pub rel: Vec<[String; 2]>,
    pub frame_class: FrameClass,
    #[serde(default)]
    pub atoms: Vec<String>,
    #[serde(default)]
    pub perp: Vec<[String; 2]>,
    pub valuation: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub orthogonality: bool,
}

impl ModelFile {
    pub fn into_model(self) -> Result<Model, ModelError> {
        let mut sig = Signature::with_atoms(self.atoms.iter().cloned());
        for [a, b] in &self.perp {
            sig.add_perp(a.clone(), b.clone())?;
        }
        let index: BTreeMap<&String, usize> = self
            .worlds
            .iter()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut rel = Vec::new();
        for [a, b] in &self.rel {
            let ia = *index
                .get(a)
                .ok_or_else(|| ModelError::UnknownWorld(a.clone()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| ModelError::UnknownWorld(b.clone()))?;
            rel.push((ia, ib));
        }
        let frame = Frame::new(self.worlds.clone(), rel)?;
        let n = frame.world_count();

        let mut domain: Vec<Formula> = sig.atoms().map(Formula::atom).collect();
        let mut val: BTreeMap<Formula, Vec<bool>> = BTreeMap::new();
        for (world, trues) in &self.valuation {
            let w = *index
                .get(world)
                .ok_or_else(|| ModelError::UnknownWorld(world.clone()))?;
            for text in trues {
                let f = parse(text, &sig)?;
                if !f.is_basic() {
                    return Err(ModelError::DomainNotBasic(f.render()));
                }
                domain.push(f.clone());
                val.entry(f).or_insert_with(|| vec![false; n])[w] = true;
            }
        }
        Model::new(frame, self.frame_class, sig, domain, val, self.orthogonality)
    }
}

/// The Schrödinger's cat model: a superposed actual world w0 that
/// accesses two post-measurement worlds w1 (alive) and w2 (dead), with
/// self-loops everywhere and no edge between w1 and w2.
pub fn cat_model() -> Model {
    let mut sig = Signature::new();
    sig.add_perp("alive", "dead").expect("distinct atoms");
    let frame = Frame::new(
        vec!["w0".into(), "w1".into(), "w2".into()],
        vec![(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)],
    )
    .expect("valid frame");
    let star = Formula::star(Formula::atom("alive"), Formula::atom("dead"));
    let mut val = BTreeMap::new();
    val.insert(Formula::atom("alive"), vec![false, true, false]);
    val.insert(Formula::atom("dead"), vec![false, false, true]);
    val.insert(star.clone(), vec![true, false, false]);
    Model::new(frame, FrameClass::T, sig, vec![star], val, true).expect("valid cat model")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_with;

    fn f(text: &str) -> Formula {
        let mut sig = Signature::new();
        parse_with(text, &mut sig, true).unwrap()
    }

    #[test]
    fn cat_frame_is_t_but_not_euclidean() {
        let m = cat_model();
        let report = check_frame_class(m.frame(), FrameClass::T);
        assert!(report.ok());
        assert!(!report.properties.euclidean);
    }

    #[test]
    fn empty_rel_misses_reflexivity() {
        let frame = Frame::new(vec!["w0".into()], vec![]).unwrap();
        let report = check_frame_class(&frame, FrameClass::T);
        assert_eq!(report.missing, vec!["reflexive"]);
    }

    #[test]
    fn universal_relation_is_an_equivalence() {
        let frame =
            Frame::new(vec!["w0".into(), "w1".into()], vec![(0, 0), (0, 1), (1, 0), (1, 1)])
                .unwrap();
        assert!(check_frame_class(&frame, FrameClass::S5).ok());
        assert!(frame.is_euclidean());
    }

    #[test]
    fn cat_model_is_acceptable() {
        assert!(cat_model().check_acceptability().is_ok());
    }

    #[test]
    fn acceptability_flags_true_star_with_true_component() {
        let m = cat_model();
        let mut bad = m.clone();
        // force |alive> true at w0 where the star is true
        bad.val
            .insert(Formula::atom("alive"), vec![true, true, false]);
        let violations = bad.check_acceptability().unwrap_err();
        assert!(violations
            .iter()
            .any(|v| v.world == "w0" && v.offending == Formula::atom("alive")));
    }

    #[test]
    fn vacuous_acceptability_without_stars() {
        let frame = Frame::new(vec!["w0".into()], vec![(0, 0)]).unwrap();
        let mut val = BTreeMap::new();
        val.insert(Formula::atom("p"), vec![true]);
        let m = Model::new(
            frame,
            FrameClass::T,
            Signature::with_atoms(["p"]),
            vec![Formula::atom("p")],
            val,
            false,
        )
        .unwrap();
        assert!(m.check_acceptability().is_ok());
    }

    #[test]
    fn meas_star_true_at_superposed_world() {
        let m = cat_model();
        assert!(m.eval_at("w0", &f("M (|alive> * |dead>)")).unwrap());
    }

    #[test]
    fn axiom1_instance_true_at_w0_and_everywhere() {
        let m = cat_model();
        let ax = f("|alive> * |dead> -> ~(|alive> \\/ |dead>)");
        assert!(m.eval_at("w0", &ax).unwrap());
        assert!(m.holds_everywhere(&ax).unwrap());
    }

    #[test]
    fn atom_fails_somewhere_in_cat_model() {
        let m = cat_model();
        assert!(!m.holds_everywhere(&Formula::atom("alive")).unwrap());
    }

    #[test]
    fn meas_atom_needs_a_distinct_witness() {
        // one reflexive world with p true: M|p> is false (no w' != w)
        let frame = Frame::new(vec!["w0".into()], vec![(0, 0)]).unwrap();
        let mut val = BTreeMap::new();
        val.insert(Formula::atom("p"), vec![true]);
        let m = Model::new(
            frame,
            FrameClass::T,
            Signature::with_atoms(["p"]),
            vec![Formula::atom("p")],
            val,
            false,
        )
        .unwrap();
        assert!(!m.eval(0, &f("M |p>")).unwrap());
        // tautology still holds at the single world
        assert!(m.holds_everywhere(&f("~(|p> & ~|p>)")).unwrap());
    }

    #[test]
    fn eval_unknown_basic_formula_errors() {
        let m = cat_model();
        assert!(matches!(
            m.eval(0, &Formula::atom("ghost")),
            Err(ModelError::UnknownBasicFormula(_))
        ));
    }

    #[test]
    fn box_diamond_duality() {
        let m = cat_model();
        for w in 0..3 {
            for text in ["|alive>", "|alive> & |dead>", "<> |dead>"] {
                let inner = f(text);
                let boxed = Formula::boxed(inner.clone());
                let dual = Formula::neg(Formula::diamond(Formula::neg(inner)));
                assert_eq!(m.eval(w, &boxed).unwrap(), m.eval(w, &dual).unwrap());
            }
        }
    }

    #[test]
    fn model_file_round_trip() {
        let m = cat_model();
        let json = m.to_json();
        let back = Model::from_json(&json).unwrap();
        assert_eq!(back.frame(), m.frame());
        assert!(back.eval_at("w0", &f("M (|alive> * |dead>)")).unwrap());
        assert_eq!(back.to_json(), json);
    }
}
