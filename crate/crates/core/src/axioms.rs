//! The fixed registry: the BL axioms A1-A7, Modus Ponens, the idempotence
//! axiom of Gödel logic and Dummett's linearity axiom.

use std::sync::LazyLock;

use thiserror::Error;

use crate::formula::{parse_template, Formula, Scheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown scheme `{name}` (expected one of: {})", NAMES.join(", "))]
pub struct UnknownScheme {
    pub name: String,
}

pub const NAMES: [&str; 11] = [
    "A1", "A2", "A3", "A4", "A5a", "A5b", "A6", "A7", "MP", "GODEL", "LIN",
];

const BODIES: [(&str, &str); 10] = [
    ("A1", "(PHI -> PSI) -> ((PSI -> THETA) -> (PHI -> THETA))"),
    ("A2", "(PHI & PSI) -> PHI"),
    ("A3", "(PHI & PSI) -> (PSI & PHI)"),
    ("A4", "(PHI & (PHI -> PSI)) -> (PSI & (PSI -> PHI))"),
    ("A5a", "(PHI -> (PSI -> THETA)) -> ((PHI & PSI) -> THETA)"),
    ("A5b", "((PHI & PSI) -> THETA) -> (PHI -> (PSI -> THETA))"),
    (
        "A6",
        "((PHI -> PSI) -> THETA) -> (((PSI -> PHI) -> THETA) -> THETA)",
    ),
    ("A7", "bot -> PHI"),
    ("GODEL", "PHI -> (PHI & PHI)"),
    ("LIN", "(PHI -> PSI) | (PSI -> PHI)"),
];

static REGISTRY: LazyLock<Vec<Scheme>> = LazyLock::new(|| {
    let template = |text: &str| parse_template(text).expect("registry templates parse");
    let mut schemes: Vec<Scheme> = BODIES
        .iter()
        .map(|(name, body)| Scheme::axiom(*name, template(body)))
        .collect();
    schemes.insert(
        8,
        Scheme::rule(
            "MP",
            vec![Formula::meta("PHI"), template("PHI -> PSI")],
            Formula::meta("PSI"),
        ),
    );
    schemes
});

/// All schemes, in the order of [`NAMES`].
pub fn all() -> &'static [Scheme] {
    &REGISTRY
}

/// Case-insensitive lookup.
pub fn get_scheme(name: &str) -> Result<&'static Scheme, UnknownScheme> {
    REGISTRY
        .iter()
        .find(|s| s.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| UnknownScheme {
            name: name.to_string(),
        })
}

/// The BL axioms and rule: A1 through A7 and MP.
pub fn basic_logic() -> impl Iterator<Item = &'static Scheme> {
    REGISTRY.iter().take(9)
}
