//! Bounded enumeration of frames and acceptable valuations, validity
//! verdicts, countermodel search and semantic entailment.
//!
//! Verdicts are explicitly bound-relative: `ValidUpToBound(n)` says no
//! countermodel exists with at most `n` worlds, nothing more. Models are
//! enumerated in a fixed canonical order (world count ascending, then
//! relation, then valuation), so the first countermodel found is the
//! deterministic tie-break minimum.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Formula, Signature};
use crate::kripke::{Frame, FrameClass, Model, ModelError};

/// Default cap on the number of valuations per frame.
pub const DEFAULT_SAFETY_LIMIT: u64 = 1 << 24;

/// Parameters of a bounded countermodel search.
#[derive(Debug, Clone)]
pub struct SearchBound {
    pub max_worlds: usize,
    pub class: FrameClass,
    pub orthogonality: bool,
    pub safety_limit: u64,
}

impl SearchBound {
    pub fn new(max_worlds: usize, class: FrameClass) -> SearchBound {
        SearchBound {
            max_worlds,
            class,
            orthogonality: true,
            safety_limit: DEFAULT_SAFETY_LIMIT,
        }
    }

    pub fn orthogonality(mut self, on: bool) -> SearchBound {
        self.orthogonality = on;
        self
    }
}

#[derive(Debug, Clone, Error)]
pub enum SearchError {
    #[error(
        "search space too large: {states} valuations per frame exceeds the safety limit {limit}"
    )]
    BoundTooLarge { states: u128, limit: u64 },
    #[error("search bound needs at least one world")]
    ZeroWorlds,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Result of a bounded validity check.
#[derive(Debug, Clone)]
pub enum Verdict {
    ValidUpToBound(usize),
    Countermodel { model: Box<Model>, world: String },
    Unknown,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::ValidUpToBound(_))
    }
}

/// Result of a bounded satisfiability search.
#[derive(Debug, Clone)]
pub enum SatVerdict {
    Witness { model: Box<Model>, world: String },
    UnsatUpToBound(usize),
}

impl SatVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatVerdict::Witness { .. })
    }
}

/// Streams every model of the frame class with at most `max_worlds`
/// worlds over the given domain, acceptability-filtered (and
/// orthogonality-filtered when enabled).
pub struct ModelEnumerator {
    domain: Vec<Formula>,
    sig: Signature,
    class: FrameClass,
    orthogonality: bool,
    max_worlds: usize,
    // star index -> indices of all subformulas of its operands
    star_constraints: Vec<(usize, Vec<usize>)>,
    // pairs of atom indices that may never be true together
    ortho_pairs: Vec<(usize, usize)>,
    n: usize,
    frames: Vec<Frame>,
    frame_idx: usize,
    val_mask: u64,
    val_count: u64,
}

impl ModelEnumerator {
    pub fn new(
        domain: &[Formula],
        sig: &Signature,
        bound: &SearchBound,
    ) -> Result<ModelEnumerator, SearchError> {
        if bound.max_worlds == 0 {
            return Err(SearchError::ZeroWorlds);
        }
        let domain = close(domain);
        let states = (1u128) << ((domain.len() * bound.max_worlds) as u32);
        if states > bound.safety_limit as u128 {
            return Err(SearchError::BoundTooLarge {
                states,
                limit: bound.safety_limit,
            });
        }
        let index: BTreeMap<&Formula, usize> =
            domain.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut star_constraints = Vec::new();
        for (i, f) in domain.iter().enumerate() {
            if let Formula::Star(a, b) = f {
                let mut comps = Vec::new();
                for sub in a.subformulas().into_iter().chain(b.subformulas()) {
                    comps.push(index[&sub]);
                }
                star_constraints.push((i, comps));
            }
        }
        let mut ortho_pairs = Vec::new();
        if bound.orthogonality {
            for (a, b) in sig.perp_pairs() {
                let (fa, fb) = (Formula::atom(a), Formula::atom(b));
                if let (Some(&ia), Some(&ib)) = (index.get(&fa), index.get(&fb)) {
                    ortho_pairs.push((ia, ib));
                }
            }
        }
        let mut it = ModelEnumerator {
            domain,
            sig: sig.clone(),
            class: bound.class,
            orthogonality: bound.orthogonality,
            max_worlds: bound.max_worlds,
            star_constraints,
            ortho_pairs,
            n: 0,
            frames: Vec::new(),
            frame_idx: 0,
            val_mask: 0,
            val_count: 0,
        };
        it.advance_world_count();
        Ok(it)
    }

    fn advance_world_count(&mut self) {
        loop {
            self.n += 1;
            if self.n > self.max_worlds {
                self.frames.clear();
                return;
            }
            self.frames = frames_of(self.n, self.class);
            self.frame_idx = 0;
            self.val_mask = 0;
            self.val_count = 1u64 << (self.domain.len() * self.n);
            if !self.frames.is_empty() {
                return;
            }
        }
    }

    fn acceptable(&self, mask: u64) -> bool {
        let n = self.n;
        let bit = |fi: usize, w: usize| mask >> (fi * n + w) & 1 == 1;
        for (star, comps) in &self.star_constraints {
            for w in 0..n {
                if bit(*star, w) && comps.iter().any(|&c| c != *star && bit(c, w)) {
                    return false;
                }
            }
        }
        for &(a, b) in &self.ortho_pairs {
            for w in 0..n {
                if bit(a, w) && bit(b, w) {
                    return false;
                }
            }
        }
        true
    }

    fn build(&self, frame: Frame, mask: u64) -> Model {
        let n = self.n;
        let mut val = BTreeMap::new();
        for (fi, f) in self.domain.iter().enumerate() {
            let truths = (0..n).map(|w| mask >> (fi * n + w) & 1 == 1).collect();
            val.insert(f.clone(), truths);
        }
        Model::new(
            frame,
            self.class,
            self.sig.clone(),
            self.domain.clone(),
            val,
            self.orthogonality,
        )
        .expect("enumerated model is structurally valid")
    }
}

impl Iterator for ModelEnumerator {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        loop {
            if self.n > self.max_worlds {
                return None;
            }
            if self.frame_idx >= self.frames.len() {
                self.advance_world_count();
                continue;
            }
            if self.val_mask >= self.val_count {
                self.frame_idx += 1;
                self.val_mask = 0;
                continue;
            }
            let mask = self.val_mask;
            self.val_mask += 1;
            if self.acceptable(mask) {
                let frame = self.frames[self.frame_idx].clone();
                return Some(self.build(frame, mask));
            }
        }
    }
}

/// All frames on `n` canonically labeled worlds satisfying the class,
/// ordered by relation bitmask (pair (i,j) at bit i*n+j).
fn frames_of(n: usize, class: FrameClass) -> Vec<Frame> {
    let worlds: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << (n * n)) {
        let rel: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| mask >> (i * n + j) & 1 == 1)
            .collect();
        let frame = Frame::new(worlds.clone(), rel).expect("canonical frame");
        if class.admits(&frame) {
            out.push(frame);
        }
    }
    out
}

fn close(domain: &[Formula]) -> Vec<Formula> {
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for f in domain {
        for sub in f.subformulas() {
            if sub.is_basic() && seen.insert(sub.clone()) {
                out.push(sub);
            }
        }
    }
    out.sort();
    out
}

/// Re-verifies a countermodel before it is handed out.
fn verify_countermodel(model: &Model, world: &str, f: &Formula) {
    assert!(
        model.check_acceptability().is_ok(),
        "countermodel fails acceptability"
    );
    assert!(
        model.class().admits(model.frame()),
        "countermodel frame violates its class"
    );
    assert_eq!(
        model.eval_at(world, f).expect("countermodel evaluates"),
        false,
        "countermodel does not falsify the target"
    );
}

/// Bounded validity: true at every world of every enumerated model over
/// the basic subformulas of `f`, or the canonical minimal countermodel.
pub fn check_validity(
    f: &Formula,
    sig: &Signature,
    bound: &SearchBound,
) -> Result<Verdict, SearchError> {
    let domain = f.basic_subformulas();
    for model in ModelEnumerator::new(&domain, sig, bound)? {
        for w in 0..model.frame().world_count() {
            if !model.eval(w, f)? {
                let world = model.frame().worlds()[w].clone();
                verify_countermodel(&model, &world, f);
                return Ok(Verdict::Countermodel {
                    model: Box::new(model),
                    world,
                });
            }
        }
    }
    Ok(Verdict::ValidUpToBound(bound.max_worlds))
}

/// Bounded semantic entailment: validity of the material implication
/// from the conjunction of `gamma` to `f` (truth-functionally the Sasaki
/// hook). A countermodel is a model and world where all of `gamma` hold
/// and `f` fails.
pub fn entails(
    gamma: &[Formula],
    f: &Formula,
    sig: &Signature,
    bound: &SearchBound,
) -> Result<Verdict, SearchError> {
    let target = match Formula::conj(gamma.to_vec()) {
        Some(conj) => Formula::or(Formula::neg(conj), f.clone()),
        None => f.clone(),
    };
    check_validity(&target, sig, bound)
}

/// Bounded satisfiability of a set: a model and world where every
/// formula holds, or exhaustion up to the bound.
pub fn is_satisfiable(
    formulas: &[Formula],
    sig: &Signature,
    bound: &SearchBound,
) -> Result<SatVerdict, SearchError> {
    let domain: Vec<Formula> = formulas
        .iter()
        .flat_map(|f| f.basic_subformulas())
        .collect();
    for model in ModelEnumerator::new(&domain, sig, bound)? {
        for w in 0..model.frame().world_count() {
            let mut all = true;
            for f in formulas {
                if !model.eval(w, f)? {
                    all = false;
                    break;
                }
            }
            if all {
                let world = model.frame().worlds()[w].clone();
                return Ok(SatVerdict::Witness {
                    model: Box::new(model),
                    world,
                });
            }
        }
    }
    Ok(SatVerdict::UnsatUpToBound(bound.max_worlds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_with;

    fn f(text: &str, sig: &mut Signature) -> Formula {
        parse_with(text, sig, true).unwrap()
    }

    fn count_models(domain: &[Formula], sig: &Signature, bound: &SearchBound) -> usize {
        ModelEnumerator::new(domain, sig, bound).unwrap().count()
    }

    #[test]
    fn one_world_one_atom_t_gives_two_models() {
        let sig = Signature::with_atoms(["p"]);
        let bound = SearchBound::new(1, FrameClass::T);
        assert_eq!(count_models(&[Formula::atom("p")], &sig, &bound), 2);
    }

    #[test]
    fn acceptability_prunes_star_valuations() {
        // domain {a, b, a*b} on one reflexive world: 8 raw assignments,
        // 3 violate acceptability, 5 remain
        let mut sig = Signature::new();
        let star = f("|a> * |b>", &mut sig);
        let bound = SearchBound::new(1, FrameClass::T);
        assert_eq!(count_models(&[star.clone()], &sig, &bound), 5);

        // brute-force oracle: filter all 8 assignments directly
        let naive = (0u8..8)
            .filter(|m| {
                let (a, b, s) = (m & 1 == 1, m & 2 == 2, m & 4 == 4);
                !(s && (a || b))
            })
            .count();
        assert_eq!(naive, 5);
    }

    #[test]
    fn two_world_k_model_count() {
        let sig = Signature::with_atoms(["p"]);
        let bound = SearchBound::new(2, FrameClass::K);
        let exactly_two = ModelEnumerator::new(&[Formula::atom("p")], &sig, &bound)
            .unwrap()
            .filter(|m| m.frame().world_count() == 2)
            .count();
        // 16 relations x 4 valuations
        assert_eq!(exactly_two, 64);
        // plus 2 relations x 2 valuations on one world
        assert_eq!(count_models(&[Formula::atom("p")], &sig, &bound), 68);
    }

    #[test]
    fn bound_too_large_is_reported() {
        let sig = Signature::with_atoms(["p"]);
        let bound = SearchBound {
            safety_limit: 2,
            ..SearchBound::new(2, FrameClass::K)
        };
        assert!(matches!(
            ModelEnumerator::new(&[Formula::atom("p")], &sig, &bound),
            Err(SearchError::BoundTooLarge { .. })
        ));
    }

    #[test]
    fn m_factivity_is_valid() {
        let mut sig = Signature::new();
        let target = f("M |psi> -> |psi>", &mut sig);
        let verdict = check_validity(&target, &sig, &SearchBound::new(3, FrameClass::T)).unwrap();
        assert!(verdict.is_valid());
    }

    #[test]
    fn star_excludes_components_is_valid() {
        let mut sig = Signature::new();
        let target = f("|psi1> * |psi2> -> (~|psi1> & ~|psi2>)", &mut sig);
        let verdict = check_validity(&target, &sig, &SearchBound::new(3, FrameClass::T)).unwrap();
        assert!(verdict.is_valid());
    }

    #[test]
    fn measured_star_excludes_joint_possibility_even_in_k() {
        let mut sig = Signature::new();
        let target = f("M (|psi1> * |psi2>) -> ~<>(|psi1> & |psi2>)", &mut sig);
        let verdict = check_validity(&target, &sig, &SearchBound::new(3, FrameClass::K)).unwrap();
        assert!(verdict.is_valid());
    }

    #[test]
    fn diamond_p_implies_p_has_a_two_world_countermodel() {
        let mut sig = Signature::new();
        let target = f("<>|p> -> |p>", &mut sig);
        match check_validity(&target, &sig, &SearchBound::new(2, FrameClass::K)).unwrap() {
            Verdict::Countermodel { model, world } => {
                assert_eq!(model.frame().world_count(), 2);
                assert_eq!(world, "w0");
                // p true only at the successor
                assert!(!model.eval_at("w0", &Formula::atom("p")).unwrap());
                assert!(model.eval_at("w1", &Formula::atom("p")).unwrap());
            }
            other => panic!("expected a countermodel, got {other:?}"),
        }
    }

    #[test]
    fn countermodels_are_reproducible_at_larger_bounds() {
        let mut sig = Signature::new();
        let target = f("<>|p> -> |p>", &mut sig);
        for bound in 2..=3 {
            let verdict =
                check_validity(&target, &sig, &SearchBound::new(bound, FrameClass::K)).unwrap();
            assert!(matches!(verdict, Verdict::Countermodel { .. }));
        }
    }

    #[test]
    fn entailment_theorems_3_4_and_3_5() {
        let mut sig = Signature::new();
        let star = f("|psi1> * |psi2>", &mut sig);
        let bound = SearchBound::new(3, FrameClass::S4);
        let v = entails(
            &[Formula::atom("psi1")],
            &Formula::neg(star.clone()),
            &sig,
            &bound,
        )
        .unwrap();
        assert!(v.is_valid());
        let both = f("|psi1> & |psi2>", &mut sig);
        let v = entails(&[both], &Formula::neg(star), &sig, &bound).unwrap();
        assert!(v.is_valid());
    }

    #[test]
    fn p_and_neg3_p_do_not_entail_q() {
        let mut sig = Signature::new();
        let p = f("|p>", &mut sig);
        let n3p = f("~3 |p>", &mut sig);
        let q = f("|q>", &mut sig);
        let bound = SearchBound::new(2, FrameClass::S5);
        match entails(&[p.clone(), n3p.clone()], &q, &sig, &bound).unwrap() {
            Verdict::Countermodel { model, world } => {
                assert!(model.eval_at(&world, &p).unwrap());
                assert!(model.eval_at(&world, &n3p).unwrap());
                assert!(!model.eval_at(&world, &q).unwrap());
            }
            other => panic!("expected a countermodel, got {other:?}"),
        }
    }

    #[test]
    fn p_and_neg3_p_is_satisfiable_in_s5() {
        let mut sig = Signature::new();
        let p = f("|p>", &mut sig);
        let n3p = f("~3 |p>", &mut sig);
        let bound = SearchBound::new(2, FrameClass::S5);
        match is_satisfiable(&[p, n3p], &sig, &bound).unwrap() {
            SatVerdict::Witness { model, .. } => {
                assert_eq!(model.frame().world_count(), 2);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn classical_contradiction_is_unsat() {
        let mut sig = Signature::new();
        let p = f("|p>", &mut sig);
        let np = f("~|p>", &mut sig);
        let bound = SearchBound::new(2, FrameClass::K);
        assert!(!is_satisfiable(&[p, np], &sig, &bound).unwrap().is_sat());
    }

    #[test]
    fn star_with_true_component_is_unsat() {
        let mut sig = Signature::new();
        let star = f("|a> * |b>", &mut sig);
        let a = f("|a>", &mut sig);
        let bound = SearchBound::new(2, FrameClass::K);
        assert!(!is_satisfiable(&[star, a], &sig, &bound).unwrap().is_sat());
    }

    #[test]
    fn euclidean_separation_between_s4_and_s5() {
        // the S5-characteristic <>p -> []<>p fails on S4 frames
        let mut sig = Signature::new();
        let target = f("<>|p> -> []<>|p>", &mut sig);
        let s4 = check_validity(&target, &sig, &SearchBound::new(3, FrameClass::S4)).unwrap();
        assert!(matches!(s4, Verdict::Countermodel { .. }));
        let s5 = check_validity(&target, &sig, &SearchBound::new(3, FrameClass::S5)).unwrap();
        assert!(s5.is_valid());
    }
}
