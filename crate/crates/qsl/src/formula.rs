//! Object-language formulas: AST, surface-syntax parser, printer and
//! well-formedness checks.
//!
//! The canonical AST keeps only the primitive connectives: atoms (kets),
//! the superposition connective `*`, negation `~`, conjunction `&`,
//! disjunction `\/`, possibility `<>` and the measurement operator `M`.
//! Implication, biconditional, box, and the choice/paraconsistent
//! negations are surface syntax expanded at parse time:
//!
//! * `A -> B`   becomes `~A \/ (A & B)` (Sasaki hook)
//! * `A <-> B`  becomes `(A -> B) & (B -> A)`
//! * `[]A`      becomes `~<>~A`
//! * `~3 A`     becomes `~[]A`
//! * `~2 |a>`   becomes the ket of the declared orthocomplement partner

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// The canonical formula AST.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Star(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Diamond(Box<Formula>),
    Meas(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn star(a: Formula, b: Formula) -> Formula {
        Formula::Star(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn diamond(a: Formula) -> Formula {
        Formula::Diamond(Box::new(a))
    }

    pub fn meas(a: Formula) -> Formula {
        Formula::Meas(Box::new(a))
    }

    /// Sasaki hook: `A -> B` is `~A \/ (A & B)`.
    pub fn hook(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::neg(a.clone()), Formula::and(a, b))
    }

    /// `A <-> B` as the conjunction of both hooks.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::hook(a.clone(), b.clone()), Formula::hook(b, a))
    }

    /// `[]A` as `~<>~A`.
    pub fn boxed(a: Formula) -> Formula {
        Formula::neg(Formula::diamond(Formula::neg(a)))
    }

    /// Subcontrary negation `~3 A`, i.e. `~[]A`.
    pub fn neg3(a: Formula) -> Formula {
        Formula::neg(Formula::boxed(a))
    }

    /// Conjunction of a nonempty list, folded to the left.
    pub fn conj(mut formulas: Vec<Formula>) -> Option<Formula> {
        let first = if formulas.is_empty() {
            return None;
        } else {
            formulas.remove(0)
        };
        Some(formulas.into_iter().fold(first, Formula::and))
    }

    /// True iff the formula is basic: an atom, or a star of basic formulas.
    pub fn is_basic(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Star(a, b) => a.is_basic() && b.is_basic(),
            _ => false,
        }
    }

    /// All subformulas including `self`, deduplicated, in post-order.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        self.collect_subformulas(&mut out, &mut seen);
        out
    }

    fn collect_subformulas(&self, out: &mut Vec<Formula>, seen: &mut BTreeSet<Formula>) {
        match self {
            Formula::Atom(_) => {}
            Formula::Star(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_subformulas(out, seen);
                b.collect_subformulas(out, seen);
            }
            Formula::Neg(a) | Formula::Diamond(a) | Formula::Meas(a) => {
                a.collect_subformulas(out, seen);
            }
        }
        if seen.insert(self.clone()) {
            out.push(self.clone());
        }
    }

    /// The basic subformulas of `self`, closed under subformula, post-order.
    pub fn basic_subformulas(&self) -> Vec<Formula> {
        self.subformulas()
            .into_iter()
            .filter(Formula::is_basic)
            .collect()
    }

    /// Atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut set = BTreeSet::new();
        for sub in self.subformulas() {
            if let Formula::Atom(name) = sub {
                set.insert(name);
            }
        }
        set
    }

    /// Checks the structural side conditions on `*` and `M`.
    ///
    /// Star operands must be basic and must share no subformula at all
    /// (this subsumes rejecting `|a> * |a>`). `M` applies to basic
    /// formulas only.
    pub fn well_formed(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        for sub in self.subformulas() {
            match &sub {
                Formula::Star(a, b) => {
                    if !a.is_basic() || !b.is_basic() {
                        violations.push(Violation::StarOperandNotBasic(sub.clone()));
                        continue;
                    }
                    let left: BTreeSet<Formula> = a.subformulas().into_iter().collect();
                    if b.subformulas().iter().any(|g| left.contains(g)) {
                        violations.push(Violation::DuplicateStarOperand(sub.clone()));
                    }
                }
                Formula::Meas(a) => {
                    if !a.is_basic() {
                        violations.push(Violation::MOnMolecular(sub.clone()));
                    }
                }
                _ => {}
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Fully parenthesized surface text; `parse(render(f))` yields `f` back.
    pub fn render(&self) -> String {
        fn wrap(f: &Formula) -> String {
            match f {
                Formula::Atom(_) => f.render(),
                _ => format!("({})", f.render()),
            }
        }
        match self {
            Formula::Atom(name) => format!("|{name}>"),
            Formula::Star(a, b) => format!("({} * {})", a.render(), b.render()),
            Formula::And(a, b) => format!("({} & {})", a.render(), b.render()),
            Formula::Or(a, b) => format!("({} \\/ {})", a.render(), b.render()),
            Formula::Neg(a) => format!("~{}", wrap(a)),
            Formula::Diamond(a) => format!("<>{}", wrap(a)),
            Formula::Meas(a) => format!("M {}", wrap(a)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A structural side-condition violation found by [`Formula::well_formed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The two star operands share a subformula.
    DuplicateStarOperand(Formula),
    /// A star operand is not a basic formula.
    StarOperandNotBasic(Formula),
    /// `M` applied to a molecular formula.
    MOnMolecular(Formula),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateStarOperand(s) => {
                write!(f, "star operands share a subformula in {s}")
            }
            Violation::StarOperandNotBasic(s) => {
                write!(f, "star operand is not a basic formula in {s}")
            }
            Violation::MOnMolecular(s) => write!(f, "M applied to a molecular formula in {s}"),
        }
    }
}

/// Atom inventory plus declared orthocomplement (perp) pairs.
///
/// Perp pairs back the choice negation `~2`: `~2 |a>` parses to the ket
/// of `perp(a)`. The map is involutive and irreflexive.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    atoms: BTreeSet<String>,
    perp: BTreeMap<String, String>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn with_atoms<I, S>(atoms: I) -> Signature
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut sig = Signature::new();
        for a in atoms {
            sig.add_atom(a);
        }
        sig
    }

    pub fn add_atom(&mut self, name: impl Into<String>) {
        self.atoms.insert(name.into());
    }

    pub fn contains(&self, name: &str) -> bool {
        self.atoms.contains(name)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(String::as_str)
    }

    /// Declares `a` and `b` as orthocomplements of each other.
    pub fn add_perp(
        &mut self,
        a: impl Into<String>,
        b: impl Into<String>,
    ) -> Result<(), ParseError> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(ParseError::ReflexivePerp { atom: a });
        }
        self.atoms.insert(a.clone());
        self.atoms.insert(b.clone());
        self.perp.insert(a.clone(), b.clone());
        self.perp.insert(b, a);
        Ok(())
    }

    pub fn perp(&self, name: &str) -> Option<&str> {
        self.perp.get(name).map(String::as_str)
    }

    /// Declared perp pairs, each reported once with the lesser name first.
    pub fn perp_pairs(&self) -> Vec<(String, String)> {
        self.perp
            .iter()
            .filter(|(a, b)| a < b)
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect()
    }
}

/// Errors produced while parsing surface syntax.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("the two * operands share a subformula: {formula}")]
    DuplicateStarOperand { formula: String },
    #[error("* operand is not a basic formula: {formula}")]
    StarOperandNotBasic { formula: String },
    #[error("M applied to a molecular formula: {formula}")]
    MOnMolecular { formula: String },
    #[error("~2 applied to a non-atomic formula")]
    Neg2OnNonAtom,
    #[error("no orthocomplement declared for atom |{atom}>")]
    Neg2Undeclared { atom: String },
    #[error("unknown atom |{name}> (not in the signature)")]
    UnknownAtom { name: String },
    #[error("an atom cannot be its own orthocomplement: |{atom}>")]
    ReflexivePerp { atom: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ket(String),
    Neg,
    Neg2,
    Neg3,
    Diamond,
    Box,
    Meas,
    Star,
    And,
    Or,
    Arrow,
    Iff,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '&' => {
                tokens.push((i, Token::And));
                i += 1;
            }
            '\\' => {
                if bytes.get(i + 1) == Some(&b'/') {
                    tokens.push((i, Token::Or));
                    i += 2;
                } else {
                    return Err(ParseError::Syntax {
                        position: i,
                        message: "expected \\/".into(),
                    });
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push((i, Token::Arrow));
                    i += 2;
                } else {
                    return Err(ParseError::Syntax {
                        position: i,
                        message: "expected ->".into(),
                    });
                }
            }
            '<' => match (bytes.get(i + 1), bytes.get(i + 2)) {
                (Some(b'-'), Some(b'>')) => {
                    tokens.push((i, Token::Iff));
                    i += 3;
                }
                (Some(b'>'), _) => {
                    tokens.push((i, Token::Diamond));
                    i += 2;
                }
                _ => {
                    return Err(ParseError::Syntax {
                        position: i,
                        message: "expected <> or <->".into(),
                    })
                }
            },
            '[' => {
                if bytes.get(i + 1) == Some(&b']') {
                    tokens.push((i, Token::Box));
                    i += 2;
                } else {
                    return Err(ParseError::Syntax {
                        position: i,
                        message: "expected []".into(),
                    });
                }
            }
            '~' => match bytes.get(i + 1) {
                Some(b'2') => {
                    tokens.push((i, Token::Neg2));
                    i += 2;
                }
                Some(b'3') => {
                    tokens.push((i, Token::Neg3));
                    i += 2;
                }
                _ => {
                    tokens.push((i, Token::Neg));
                    i += 1;
                }
            },
            'M' => {
                tokens.push((i, Token::Meas));
                i += 1;
            }
            '|' => {
                let start = i;
                i += 1;
                let name_start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                if i == name_start {
                    return Err(ParseError::Syntax {
                        position: start,
                        message: "empty ket name".into(),
                    });
                }
                if bytes.get(i) != Some(&b'>') {
                    return Err(ParseError::Syntax {
                        position: i,
                        message: "unterminated ket, expected >".into(),
                    });
                }
                let name = text[name_start..i].to_string();
                i += 1;
                tokens.push((start, Token::Ket(name)));
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: i,
                    message: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    sig: &'a mut Signature,
    auto_register: bool,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                position: self.position(),
                message: format!("expected {what}"),
            })
        }
    }

    // <-> (loosest, right-associative)
    fn parse_iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_arrow()?;
        if self.peek() == Some(&Token::Iff) {
            self.pos += 1;
            let rhs = self.parse_iff()?;
            Ok(Formula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    // -> (right-associative)
    fn parse_arrow(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.parse_or()?;
        if self.peek() == Some(&Token::Arrow) {
            self.pos += 1;
            let rhs = self.parse_arrow()?;
            Ok(Formula::hook(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_and()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            let rhs = self.parse_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_star()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            let rhs = self.parse_star()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_star(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.parse_unary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let rhs = self.parse_unary()?;
            lhs = Formula::star(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Token::Neg) => {
                self.pos += 1;
                Ok(Formula::neg(self.parse_unary()?))
            }
            Some(Token::Neg2) => {
                self.pos += 1;
                let inner = self.parse_unary()?;
                let Formula::Atom(name) = inner else {
                    return Err(ParseError::Neg2OnNonAtom);
                };
                match self.sig.perp(&name) {
                    Some(partner) => Ok(Formula::atom(partner)),
                    None => Err(ParseError::Neg2Undeclared { atom: name }),
                }
            }
            Some(Token::Neg3) => {
                self.pos += 1;
                Ok(Formula::neg3(self.parse_unary()?))
            }
            Some(Token::Diamond) => {
                self.pos += 1;
                Ok(Formula::diamond(self.parse_unary()?))
            }
            Some(Token::Box) => {
                self.pos += 1;
                Ok(Formula::boxed(self.parse_unary()?))
            }
            Some(Token::Meas) => {
                self.pos += 1;
                Ok(Formula::meas(self.parse_unary()?))
            }
            _ => self.parse_primary(),
        }
    }

    fn parse_primary(&mut self) -> Result<Formula, ParseError> {
        let position = self.position();
        match self.bump() {
            Some(Token::Ket(name)) => {
                if !self.sig.contains(&name) {
                    if self.auto_register {
                        self.sig.add_atom(name.clone());
                    } else {
                        return Err(ParseError::UnknownAtom { name });
                    }
                }
                Ok(Formula::atom(name))
            }
            Some(Token::LParen) => {
                let inner = self.parse_iff()?;
                self.expect(Token::RParen, ")")?;
                Ok(inner)
            }
            other => Err(ParseError::Syntax {
                position,
                message: match other {
                    Some(_) => "expected a ket or (".into(),
                    None => "unexpected end of input".into(),
                },
            }),
        }
    }
}

fn finish_parse(f: Formula) -> Result<Formula, ParseError> {
    if let Err(violations) = f.well_formed() {
        return Err(match &violations[0] {
            Violation::DuplicateStarOperand(s) => ParseError::DuplicateStarOperand {
                formula: s.render(),
            },
            Violation::StarOperandNotBasic(s) => ParseError::StarOperandNotBasic {
                formula: s.render(),
            },
            Violation::MOnMolecular(s) => ParseError::MOnMolecular {
                formula: s.render(),
            },
        });
    }
    Ok(f)
}

/// Parses surface syntax against a fixed signature. Every ket must name a
/// declared atom.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut sig = sig.clone();
    parse_with(text, &mut sig, false)
}

/// Parses surface syntax, registering unseen kets in the signature when
/// `auto_register` is set.
pub fn parse_with(
    text: &str,
    sig: &mut Signature,
    auto_register: bool,
) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        sig,
        auto_register,
        end: text.len(),
    };
    let f = parser.parse_iff()?;
    if parser.pos != parser.tokens.len() {
        return Err(ParseError::Syntax {
            position: parser.position(),
            message: "trailing input".into(),
        });
    }
    finish_parse(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::with_atoms(["psi", "phi", "omega", "a", "b", "c", "p", "q"])
    }

    fn p(text: &str) -> Formula {
        parse(text, &sig()).unwrap()
    }

    #[test]
    fn parses_star_of_kets() {
        assert_eq!(
            p("|psi> * |phi>"),
            Formula::star(Formula::atom("psi"), Formula::atom("phi"))
        );
    }

    #[test]
    fn rejects_star_of_equal_kets() {
        assert!(matches!(
            parse("|psi> * |psi>", &sig()),
            Err(ParseError::DuplicateStarOperand { .. })
        ));
    }

    #[test]
    fn rejects_star_sharing_a_subformula() {
        // |a> is a subformula of both operands of the outer star
        assert!(matches!(
            parse("|a> * (|a> * |b>)", &sig()),
            Err(ParseError::DuplicateStarOperand { .. })
        ));
    }

    #[test]
    fn rejects_m_on_molecular() {
        assert!(matches!(
            parse("M (|psi> & |phi>)", &sig()),
            Err(ParseError::MOnMolecular { .. })
        ));
    }

    #[test]
    fn arrow_expands_to_sasaki_hook() {
        let a = Formula::atom("a");
        let b = Formula::atom("b");
        assert_eq!(
            p("|a> -> |b>"),
            Formula::or(Formula::neg(a.clone()), Formula::and(a, b))
        );
    }

    #[test]
    fn box_expands_to_neg_diamond_neg() {
        assert_eq!(
            p("[] |p>"),
            Formula::neg(Formula::diamond(Formula::neg(Formula::atom("p"))))
        );
    }

    #[test]
    fn neg3_expands_to_neg_box() {
        assert_eq!(p("~3 |p>"), Formula::neg(p("[] |p>")));
    }

    #[test]
    fn neg2_resolves_declared_perp() {
        let mut s = Signature::new();
        s.add_perp("cat_alive", "cat_dead").unwrap();
        assert_eq!(
            parse("~2 |cat_alive>", &s).unwrap(),
            Formula::atom("cat_dead")
        );
        // involution
        assert_eq!(
            parse("~2 ~2 |cat_alive>", &s).unwrap(),
            Formula::atom("cat_alive")
        );
    }

    #[test]
    fn neg2_requires_declaration_and_an_atom() {
        assert!(matches!(
            parse("~2 |p>", &sig()),
            Err(ParseError::Neg2Undeclared { .. })
        ));
        let mut s = Signature::new();
        s.add_perp("a", "b").unwrap();
        assert!(matches!(
            parse("~2 (|a> & |b>)", &s),
            Err(ParseError::Neg2OnNonAtom)
        ));
    }

    #[test]
    fn atomic_parse() {
        assert_eq!(p("|psi>"), Formula::atom("psi"));
    }

    #[test]
    fn unknown_atom_is_an_error_without_auto_register() {
        assert!(matches!(
            parse("|zeta>", &sig()),
            Err(ParseError::UnknownAtom { .. })
        ));
        let mut s = Signature::new();
        assert!(parse_with("|zeta>", &mut s, true).is_ok());
        assert!(s.contains("zeta"));
    }

    #[test]
    fn precedence_star_binds_tighter_than_and() {
        assert_eq!(p("|a> * |b> & |c>"), p("(|a> * |b>) & |c>"));
    }

    #[test]
    fn arrow_is_right_associative() {
        assert_eq!(p("|a> -> |b> -> |c>"), p("|a> -> (|b> -> |c>)"));
    }

    #[test]
    fn render_examples() {
        assert_eq!(
            Formula::star(Formula::atom("psi"), Formula::atom("phi")).render(),
            "(|psi> * |phi>)"
        );
        assert_eq!(
            Formula::neg(Formula::diamond(Formula::neg(Formula::atom("p")))).render(),
            "~(<>(~|p>))"
        );
    }

    #[test]
    fn subformulas_post_order() {
        let a = Formula::atom("a");
        let b = Formula::atom("b");
        let c = Formula::atom("c");
        let ab = Formula::star(a.clone(), b.clone());
        let abc = Formula::star(ab.clone(), c.clone());
        assert_eq!(abc.subformulas(), vec![a, b, ab, c.clone(), abc.clone()]);
        assert_eq!(c.subformulas(), vec![c]);
    }

    #[test]
    fn is_basic_cases() {
        assert!(p("|p>").is_basic());
        assert!(p("(|a> * |b>) * |c>").is_basic());
        assert!(!p("~|p>").is_basic());
        assert!(!p("M |p>").is_basic());
    }

    #[test]
    fn well_formed_cases() {
        let a = Formula::atom("a");
        let b = Formula::atom("b");
        // Star(a, Star(a, b)) shares |a>
        let bad = Formula::star(a.clone(), Formula::star(a.clone(), b.clone()));
        assert!(matches!(
            bad.well_formed().unwrap_err()[0],
            Violation::DuplicateStarOperand(_)
        ));
        assert!(Formula::meas(Formula::star(a.clone(), b.clone()))
            .well_formed()
            .is_ok());
        assert!(
            Formula::and(Formula::meas(a), Formula::neg(b))
                .well_formed()
                .is_ok()
        );
    }
}
