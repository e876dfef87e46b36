//! Propositional formulas over `bot`, atoms, `&`, `|` and `->`, together with
//! axiom-scheme templates whose leaves may be metavariables.
//!
//! Concrete syntax:
//!
//! ```text
//! formula := impl
//! impl    := or ( "->" impl )?          right associative
//! or      := and ( "|" and )*           left associative
//! and     := unary ( "&" unary )*       left associative
//! unary   := "~" unary | atomic
//! atomic  := "bot" | "top" | atom | META | "(" formula ")"
//! atom    := [a-z][a-z0-9_]*
//! META    := [A-Z][A-Z0-9_]*            (template mode only)
//! ```
//!
//! `top` is sugar for `bot -> bot` and `~f` for `f -> bot`; neither has a node
//! of its own in the tree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("metavariable `{name}` at position {pos} is only allowed in scheme templates")]
    MetaOutsideScheme { name: String, pos: usize },
    #[error("no formula assigned to metavariable `{0}`")]
    MissingMetavariable(String),
    #[error("formula assigned to `{0}` still contains metavariables")]
    NonGroundAssignment(String),
    #[error("invalid {what} name `{name}`")]
    InvalidName { what: &'static str, name: String },
}

/// A propositional formula, or a scheme template when it contains [`Formula::Meta`] leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "repr::Json", into = "repr::Json")]
pub enum Formula {
    Bot,
    Atom(String),
    Meta(String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
}

pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
        && !matches!(name, "bot" | "top")
}

pub fn is_meta_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('A'..='Z'))
        && chars.all(|c| matches!(c, 'A'..='Z' | '0'..='9' | '_'))
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn meta(name: impl Into<String>) -> Self {
        Formula::Meta(name.into())
    }

    /// `bot -> bot`.
    pub fn top() -> Self {
        Formula::implies(Formula::Bot, Formula::Bot)
    }

    /// `f -> bot`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::implies(f, Formula::Bot)
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Impl(Box::new(l), Box::new(r))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Impl(l, r) if **l == Formula::Bot && **r == Formula::Bot)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Formula::Bot | Formula::Atom(_) => true,
            Formula::Meta(_) => false,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                l.is_ground() && r.is_ground()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Atom(_) | Formula::Meta(_) => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_leaves(&mut |leaf| {
            if let Formula::Atom(a) = leaf {
                out.insert(a.clone());
            }
        });
        out
    }

    /// Metavariable names in order of first occurrence (left to right).
    pub fn metavariables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        self.visit_leaves(&mut |leaf| {
            if let Formula::Meta(m) = leaf {
                if !out.contains(m) {
                    out.push(m.clone());
                }
            }
        });
        out
    }

    fn visit_leaves(&self, visit: &mut impl FnMut(&Formula)) {
        match self {
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
                l.visit_leaves(visit);
                r.visit_leaves(visit);
            }
            leaf => visit(leaf),
        }
    }

    /// Simultaneous substitution of every metavariable by its assigned ground formula.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<String, Formula>,
    ) -> Result<Formula, FormulaError> {
        Ok(match self {
            Formula::Bot => Formula::Bot,
            Formula::Atom(a) => Formula::Atom(a.clone()),
            Formula::Meta(m) => {
                let f = assignment
                    .get(m)
                    .ok_or_else(|| FormulaError::MissingMetavariable(m.clone()))?;
                if !f.is_ground() {
                    return Err(FormulaError::NonGroundAssignment(m.clone()));
                }
                f.clone()
            }
            Formula::And(l, r) => {
                Formula::and(l.substitute(assignment)?, r.substitute(assignment)?)
            }
            Formula::Or(l, r) => Formula::or(l.substitute(assignment)?, r.substitute(assignment)?),
            Formula::Impl(l, r) => {
                Formula::implies(l.substitute(assignment)?, r.substitute(assignment)?)
            }
        })
    }

    /// Minimally parenthesized text; `parse(&f.render()) == Ok(f)` for ground `f`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        write_formula(&mut out, self);
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::str::FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

// Binding strength of the rendered form.
const PREC_IMPL: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;
const PREC_ATOMIC: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Bot | Formula::Atom(_) | Formula::Meta(_) => PREC_ATOMIC,
        _ if f.is_top() => PREC_ATOMIC,
        Formula::Impl(_, r) if **r == Formula::Bot => PREC_UNARY,
        Formula::And(..) => PREC_AND,
        Formula::Or(..) => PREC_OR,
        Formula::Impl(..) => PREC_IMPL,
    }
}

fn write_operand(out: &mut String, f: &Formula, parens: bool) {
    if parens {
        out.push('(');
        write_formula(out, f);
        out.push(')');
    } else {
        write_formula(out, f);
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Bot => out.push_str("bot"),
        Formula::Atom(a) | Formula::Meta(a) => out.push_str(a),
        _ if f.is_top() => out.push_str("top"),
        Formula::Impl(l, r) if **r == Formula::Bot => {
            out.push('~');
            write_operand(out, l, precedence(l) < PREC_UNARY);
        }
        Formula::And(l, r) => {
            write_operand(out, l, precedence(l) < PREC_AND);
            out.push_str(" & ");
            write_operand(out, r, precedence(r) <= PREC_AND);
        }
        Formula::Or(l, r) => {
            write_operand(out, l, precedence(l) < PREC_OR);
            out.push_str(" | ");
            write_operand(out, r, precedence(r) <= PREC_OR);
        }
        Formula::Impl(l, r) => {
            write_operand(out, l, precedence(l) <= PREC_IMPL);
            out.push_str(" -> ");
            write_operand(out, r, precedence(r) < PREC_IMPL);
        }
    }
}

/// Parses a ground formula. Uppercase identifiers are rejected.
pub fn parse(text: &str) -> Result<Formula, FormulaError> {
    Parser::new(text, false)?.parse_all()
}

/// Parses a scheme template: uppercase identifiers become metavariables.
pub fn parse_template(text: &str) -> Result<Formula, FormulaError> {
    Parser::new(text, true)?.parse_all()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Meta(String),
    Tilde,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) | Token::Meta(s) => write!(f, "`{s}`"),
            Token::Tilde => f.write_str("`~`"),
            Token::Amp => f.write_str("`&`"),
            Token::Bar => f.write_str("`|`"),
            Token::Arrow => f.write_str("`->`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FormulaError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Token::Tilde,
            b'&' => Token::Amp,
            b'|' => Token::Bar,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Arrow
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len()
                    && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_')
                {
                    i += 1;
                }
                Token::Ident(text[start..=i].to_string())
            }
            b'A'..=b'Z' => {
                while i + 1 < bytes.len()
                    && matches!(bytes[i + 1], b'A'..=b'Z' | b'0'..=b'9' | b'_')
                {
                    i += 1;
                }
                Token::Meta(text[start..=i].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(FormulaError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        tokens.push((start, token));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    allow_meta: bool,
}

impl Parser {
    fn new(text: &str, allow_meta: bool) -> Result<Self, FormulaError> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            end: text.len(),
            allow_meta,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> FormulaError {
        FormulaError::Syntax {
            pos: self.offset(),
            message: message.into(),
        }
    }

    fn parse_all(mut self) -> Result<Formula, FormulaError> {
        if self.tokens.is_empty() {
            return Err(self.error("empty formula"));
        }
        let f = self.parse_impl()?;
        match self.peek() {
            None => Ok(f),
            Some(t) => Err(self.error(format!("unexpected {t}"))),
        }
    }

    fn parse_impl(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.parse_or()?;
        if self.eat(&Token::Arrow) {
            let rhs = self.parse_impl()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.parse_and()?;
        while self.eat(&Token::Bar) {
            let rhs = self.parse_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula, FormulaError> {
        let mut lhs = self.parse_unary()?;
        while self.eat(&Token::Amp) {
            let rhs = self.parse_unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Formula, FormulaError> {
        if self.eat(&Token::Tilde) {
            return Ok(Formula::not(self.parse_unary()?));
        }
        self.parse_atomic()
    }

    fn parse_atomic(&mut self) -> Result<Formula, FormulaError> {
        let offset = self.offset();
        let Some(token) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        match token {
            Token::Ident(name) => Ok(match name.as_str() {
                "bot" => Formula::Bot,
                "top" => Formula::top(),
                _ => Formula::Atom(name),
            }),
            Token::Meta(name) if self.allow_meta => Ok(Formula::Meta(name)),
            Token::Meta(name) => Err(FormulaError::MetaOutsideScheme { name, pos: offset }),
            Token::LParen => {
                let inner = self.parse_impl()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("expected a formula, found {other}")))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Axiom,
    Rule,
}

/// The result of instantiating a [`Scheme`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Axiom(Formula),
    Rule {
        premises: Vec<Formula>,
        conclusion: Formula,
    },
}

impl Instance {
    pub fn render(&self) -> String {
        match self {
            Instance::Axiom(f) => f.render(),
            Instance::Rule {
                premises,
                conclusion,
            } => {
                let premises: Vec<String> = premises.iter().map(Formula::render).collect();
                format!("{} / {}", premises.join(" ; "), conclusion.render())
            }
        }
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A named axiom or rule template over metavariables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    name: String,
    premises: Vec<Formula>,
    conclusion: Formula,
    kind: SchemeKind,
    metavariables: Vec<String>,
}

impl Scheme {
    pub fn axiom(name: impl Into<String>, body: Formula) -> Self {
        let metavariables = body.metavariables();
        Scheme {
            name: name.into(),
            premises: Vec::new(),
            conclusion: body,
            kind: SchemeKind::Axiom,
            metavariables,
        }
    }

    pub fn rule(name: impl Into<String>, premises: Vec<Formula>, conclusion: Formula) -> Self {
        let mut metavariables: Vec<String> = Vec::new();
        for f in premises.iter().chain(std::iter::once(&conclusion)) {
            for m in f.metavariables() {
                if !metavariables.contains(&m) {
                    metavariables.push(m);
                }
            }
        }
        Scheme {
            name: name.into(),
            premises,
            conclusion,
            kind: SchemeKind::Rule,
            metavariables,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    /// Axiom body, or the conclusion of a rule.
    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    /// Empty for axioms.
    pub fn premises(&self) -> &[Formula] {
        &self.premises
    }

    pub fn metavariables(&self) -> &[String] {
        &self.metavariables
    }

    pub fn instantiate(
        &self,
        assignment: &BTreeMap<String, Formula>,
    ) -> Result<Instance, FormulaError> {
        let conclusion = self.conclusion.substitute(assignment)?;
        Ok(match self.kind {
            SchemeKind::Axiom => Instance::Axiom(conclusion),
            SchemeKind::Rule => Instance::Rule {
                premises: self
                    .premises
                    .iter()
                    .map(|p| p.substitute(assignment))
                    .collect::<Result<_, _>>()?,
                conclusion,
            },
        })
    }

    /// Instantiates metavariables positionally: the i-th metavariable gets `formulas[i]`.
    pub fn instantiate_with(&self, formulas: &[Formula]) -> Result<Instance, FormulaError> {
        let assignment = self
            .metavariables
            .iter()
            .cloned()
            .zip(formulas.iter().cloned())
            .collect();
        self.instantiate(&assignment)
    }

    pub fn render(&self) -> String {
        match self.kind {
            SchemeKind::Axiom => self.conclusion.render(),
            SchemeKind::Rule => Instance::Rule {
                premises: self.premises.clone(),
                conclusion: self.conclusion.clone(),
            }
            .render(),
        }
    }
}

mod repr {
    use serde::{Deserialize, Serialize};

    use super::{is_atom_name, is_meta_name, Formula, FormulaError};

    #[derive(Serialize, Deserialize)]
    #[serde(rename_all = "lowercase", deny_unknown_fields)]
    pub enum Json {
        Bot(bool),
        Atom(String),
        Meta(String),
        And(Box<Formula>, Box<Formula>),
        Or(Box<Formula>, Box<Formula>),
        Impl(Box<Formula>, Box<Formula>),
    }

    impl From<Formula> for Json {
        fn from(f: Formula) -> Self {
            match f {
                Formula::Bot => Json::Bot(true),
                Formula::Atom(a) => Json::Atom(a),
                Formula::Meta(m) => Json::Meta(m),
                Formula::And(l, r) => Json::And(l, r),
                Formula::Or(l, r) => Json::Or(l, r),
                Formula::Impl(l, r) => Json::Impl(l, r),
            }
        }
    }

    impl TryFrom<Json> for Formula {
        type Error = FormulaError;

        fn try_from(j: Json) -> Result<Self, Self::Error> {
            Ok(match j {
                Json::Bot(true) => Formula::Bot,
                Json::Bot(false) => {
                    return Err(FormulaError::InvalidName {
                        what: "constant",
                        name: "bot:false".into(),
                    })
                }
                Json::Atom(a) if is_atom_name(&a) => Formula::Atom(a),
                Json::Atom(a) => {
                    return Err(FormulaError::InvalidName {
                        what: "atom",
                        name: a,
                    })
                }
                Json::Meta(m) if is_meta_name(&m) => Formula::Meta(m),
                Json::Meta(m) => {
                    return Err(FormulaError::InvalidName {
                        what: "metavariable",
                        name: m,
                    })
                }
                Json::And(l, r) => Formula::And(l, r),
                Json::Or(l, r) => Formula::Or(l, r),
                Json::Impl(l, r) => Formula::Impl(l, r),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(p(), Formula::implies(q(), r()))
        );
    }

    #[test]
    fn tilde_is_implication_into_bot() {
        assert_eq!(parse("~p").unwrap(), Formula::implies(p(), Formula::Bot));
        assert_eq!(parse("~~p").unwrap(), Formula::not(Formula::not(p())));
    }

    #[test]
    fn conjunction_binds_tighter_than_implication() {
        assert_eq!(
            parse("p & q -> r").unwrap(),
            Formula::implies(Formula::and(p(), q()), r())
        );
    }

    #[test]
    fn precedence_ladder() {
        // ~ > & > | > ->
        assert_eq!(
            parse("~p & q | r -> p").unwrap(),
            Formula::implies(Formula::or(Formula::and(Formula::not(p()), q()), r()), p())
        );
        assert_eq!(
            parse("p | q | r").unwrap(),
            Formula::or(Formula::or(p(), q()), r())
        );
        assert_eq!(
            parse("p & q & r").unwrap(),
            Formula::and(Formula::and(p(), q()), r())
        );
    }

    #[test]
    fn top_desugars() {
        assert_eq!(
            parse("top").unwrap(),
            Formula::implies(Formula::Bot, Formula::Bot)
        );
        assert!(parse("top").unwrap().is_top());
    }

    #[test]
    fn render_examples() {
        assert_eq!(
            Formula::implies(Formula::and(p(), q()), r()).render(),
            "p & q -> r"
        );
        assert_eq!(Formula::implies(Formula::Bot, Formula::Bot).render(), "top");
        assert_eq!(
            Formula::implies(p(), Formula::implies(q(), r())).render(),
            "p -> q -> r"
        );
        assert_eq!(
            Formula::implies(Formula::implies(p(), q()), r()).render(),
            "(p -> q) -> r"
        );
        assert_eq!(Formula::not(Formula::and(p(), q())).render(), "~(p & q)");
        assert_eq!(
            Formula::and(p(), Formula::and(q(), r())).render(),
            "p & (q & r)"
        );
        assert_eq!(
            Formula::or(p(), Formula::and(q(), r())).render(),
            "p | q & r"
        );
        assert_eq!(
            Formula::implies(Formula::Bot, Formula::top()).render(),
            "bot -> top"
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("p & & q") {
            Err(FormulaError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse("(p -> q") {
            Err(FormulaError::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse(""),
            Err(FormulaError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse("p $ q"),
            Err(FormulaError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("p q"),
            Err(FormulaError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("p -"),
            Err(FormulaError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn meta_requires_template_mode() {
        assert_eq!(
            parse("p -> PHI"),
            Err(FormulaError::MetaOutsideScheme {
                name: "PHI".into(),
                pos: 5
            })
        );
        assert_eq!(
            parse_template("p -> PHI").unwrap(),
            Formula::implies(p(), Formula::meta("PHI"))
        );
    }

    #[test]
    fn metavariables_in_first_occurrence_order() {
        let f = parse_template("(PSI -> PHI) -> THETA & PSI").unwrap();
        assert_eq!(f.metavariables(), vec!["PSI", "PHI", "THETA"]);
    }

    #[test]
    fn substitution_reports_missing_metavariable() {
        let s = Scheme::axiom("X", parse_template("PHI -> PSI").unwrap());
        let mut a = BTreeMap::new();
        a.insert("PHI".to_string(), p());
        assert_eq!(
            s.instantiate(&a),
            Err(FormulaError::MissingMetavariable("PSI".into()))
        );
        a.insert("PSI".to_string(), Formula::meta("THETA"));
        assert_eq!(
            s.instantiate(&a),
            Err(FormulaError::NonGroundAssignment("PSI".into()))
        );
    }

    #[test]
    fn rule_collects_metavariables_across_premises() {
        let mp = Scheme::rule(
            "MP",
            vec![Formula::meta("PHI"), parse_template("PHI -> PSI").unwrap()],
            Formula::meta("PSI"),
        );
        assert_eq!(mp.metavariables(), ["PHI", "PSI"]);
        let inst = mp.instantiate_with(&[p(), q()]).unwrap();
        assert_eq!(
            inst,
            Instance::Rule {
                premises: vec![p(), Formula::implies(p(), q())],
                conclusion: q()
            }
        );
    }

    #[test]
    fn json_encoding() {
        let f = parse("p & bot -> ~q | r").unwrap();
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(
            j,
            r#"{"impl":[{"and":[{"atom":"p"},{"bot":true}]},{"or":[{"impl":[{"atom":"q"},{"bot":true}]},{"atom":"r"}]}]}"#
        );
        let back: Formula = serde_json::from_str(&j).unwrap();
        assert_eq!(back, f);
        let m: Formula = serde_json::from_str(r#"{"meta":"PHI"}"#).unwrap();
        assert_eq!(m, Formula::meta("PHI"));
        assert!(serde_json::from_str::<Formula>(r#"{"bot":false}"#).is_err());
        assert!(serde_json::from_str::<Formula>(r#"{"atom":"P"}"#).is_err());
    }
}
