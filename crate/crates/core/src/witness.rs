//! Structural defects of frames and models, and the countermodels that turn
//! each defect into a failing instance of the corresponding axiom or rule.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::get_scheme;
use crate::formula::{Formula, Instance};
use crate::kripke::{Frame, NodeSet};
use crate::semantics::{Model, SemanticsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("condition `{0}` needs a model, not just a frame")]
    NeedsModel(Condition),
    #[error("theorem `{theorem}` expects a `{expected}` witness, got `{found}`")]
    Mismatch {
        theorem: Theorem,
        expected: Condition,
        found: Condition,
    },
    #[error("witness does not describe a `{0}` defect of this frame")]
    InvalidWitness(Condition),
    #[error("theorem `{0}` needs a reflexive and transitive frame")]
    PreconditionUnmet(Theorem),
    #[error("unknown theorem `{0}` (expected one of: mp, a1, a4-reflexivity, a4-persistency, a5a, a5b-transitivity, a5b-persistency, a6)")]
    UnknownTheorem(String),
    #[error("constructed model for `{0}` does not refute the instance")]
    Unsound(Theorem),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// The defects the correspondence proofs start from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// some `k` with `not k R k`
    NonReflexiveNode,
    /// `k1 R k2 R k3`, `not k1 R k3`, all in `R+[k0]`
    NonTransitiveTripleInRplus,
    /// `k` in `R^2[k0]` with `not k R k`
    NonReflexiveInR2,
    /// `k1` in `R+[k0]` with `not k1 R k1`
    NonReflexiveInRplus,
    /// a definable set true at `k1` and false at `k2`, `k1 R k2`, `k1` in `R+[k0]`
    PersistencyBreakRplus,
    /// as above with `k1` in `R++[k0]`
    PersistencyBreakRplusplus,
    /// `k', k''` in `R+[k]` with neither `k' R k''` nor `k'' R k'`
    NonConnectedPair,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::NonReflexiveNode,
        Condition::NonTransitiveTripleInRplus,
        Condition::NonReflexiveInR2,
        Condition::NonReflexiveInRplus,
        Condition::PersistencyBreakRplus,
        Condition::PersistencyBreakRplusplus,
        Condition::NonConnectedPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::NonReflexiveNode => "non-reflexive-node",
            Condition::NonTransitiveTripleInRplus => "non-transitive-triple-in-rplus",
            Condition::NonReflexiveInR2 => "non-reflexive-in-r2",
            Condition::NonReflexiveInRplus => "non-reflexive-in-rplus",
            Condition::PersistencyBreakRplus => "persistency-break-rplus",
            Condition::PersistencyBreakRplusplus => "persistency-break-rplusplus",
            Condition::NonConnectedPair => "non-connected-pair",
        }
    }

    pub fn needs_model(self) -> bool {
        matches!(
            self,
            Condition::PersistencyBreakRplus | Condition::PersistencyBreakRplusplus
        )
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The "only if" halves of the correspondence theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    Mp,
    A1,
    A4Reflexivity,
    A4Persistency,
    A5a,
    A5bTransitivity,
    A5bPersistency,
    A6,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::Mp,
        Theorem::A1,
        Theorem::A4Reflexivity,
        Theorem::A4Persistency,
        Theorem::A5a,
        Theorem::A5bTransitivity,
        Theorem::A5bPersistency,
        Theorem::A6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Mp => "mp",
            Theorem::A1 => "a1",
            Theorem::A4Reflexivity => "a4-reflexivity",
            Theorem::A4Persistency => "a4-persistency",
            Theorem::A5a => "a5a",
            Theorem::A5bTransitivity => "a5b-transitivity",
            Theorem::A5bPersistency => "a5b-persistency",
            Theorem::A6 => "a6",
        }
    }

    pub fn scheme_name(self) -> &'static str {
        match self {
            Theorem::Mp => "MP",
            Theorem::A1 => "A1",
            Theorem::A4Reflexivity | Theorem::A4Persistency => "A4",
            Theorem::A5a => "A5a",
            Theorem::A5bTransitivity | Theorem::A5bPersistency => "A5b",
            Theorem::A6 => "A6",
        }
    }

    pub fn condition(self) -> Condition {
        match self {
            Theorem::Mp => Condition::NonReflexiveNode,
            Theorem::A1 | Theorem::A5bTransitivity => Condition::NonTransitiveTripleInRplus,
            Theorem::A4Reflexivity => Condition::NonReflexiveInRplus,
            Theorem::A4Persistency => Condition::PersistencyBreakRplus,
            Theorem::A5a => Condition::NonReflexiveInR2,
            Theorem::A5bPersistency => Condition::PersistencyBreakRplusplus,
            Theorem::A6 => Condition::NonConnectedPair,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = WitnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| WitnessError::UnknownTheorem(s.to_string()))
    }
}

/// What a violation search runs on.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Frame(&'a Frame),
    Model(&'a Model),
}

impl<'a> Subject<'a> {
    pub fn frame(self) -> &'a Frame {
        match self {
            Subject::Frame(f) => f,
            Subject::Model(m) => m.frame(),
        }
    }
}

impl<'a> From<&'a Frame> for Subject<'a> {
    fn from(f: &'a Frame) -> Self {
        Subject::Frame(f)
    }
}

impl<'a> From<&'a Model> for Subject<'a> {
    fn from(m: &'a Model) -> Self {
        Subject::Model(m)
    }
}

/// A located defect.
///
/// `anchor` is `k0` (or `k` for non-connectedness), `offending` holds the nodes
/// the defect is about (`[k]`, `[k1, k2, k3]`, `[k1]`, `[k1, k2]` or
/// `[k', k'']`), and `chain` the interior nodes `l1..ln` of the shortest walk
/// `k0 R l1 R .. R ln R offending[0]`. Non-reflexive nodes and non-connected
/// pairs carry no chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationWitness {
    pub kind: Condition,
    pub anchor: usize,
    pub offending: Vec<usize>,
    pub chain: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub breaking_set: Option<NodeSet>,
}

impl ViolationWitness {
    /// `l_n`, or `k0` when the chain is empty.
    pub fn last_link(&self) -> usize {
        self.chain.last().copied().unwrap_or(self.anchor)
    }

    /// `l_{n-1}`: the node before the last link (`k0` when `n = 1`).
    pub fn second_to_last_link(&self) -> Option<usize> {
        match self.chain.len() {
            0 => None,
            1 => Some(self.anchor),
            n => Some(self.chain[n - 2]),
        }
    }

    /// Checks that the witness describes a genuine defect of `frame`.
    pub fn is_valid_for(&self, frame: &Frame) -> bool {
        let n = frame.size();
        let in_range = std::iter::once(self.anchor)
            .chain(self.offending.iter().copied())
            .chain(self.chain.iter().copied())
            .all(|k| k < n);
        if !in_range {
            return false;
        }
        let chain_ok = |min_len: usize| {
            let mut walk = vec![self.anchor];
            walk.extend(&self.chain);
            walk.push(self.offending[0]);
            walk.len() > min_len && walk.windows(2).all(|w| frame.related(w[0], w[1]))
        };
        let k0 = self.anchor;
        match (self.kind, self.offending.as_slice()) {
            (Condition::NonReflexiveNode, &[k]) => k == k0 && !frame.related(k, k),
            (Condition::NonTransitiveTripleInRplus, &[k1, k2, k3]) => {
                chain_ok(1)
                    && frame.related(k1, k2)
                    && frame.related(k2, k3)
                    && !frame.related(k1, k3)
            }
            (Condition::NonReflexiveInRplus, &[k1]) => chain_ok(1) && !frame.related(k1, k1),
            (Condition::NonReflexiveInR2, &[k]) => {
                self.chain.len() == 1 && chain_ok(2) && !frame.related(k, k)
            }
            (
                Condition::PersistencyBreakRplus | Condition::PersistencyBreakRplusplus,
                &[k1, k2],
            ) => {
                let min_len = if self.kind == Condition::PersistencyBreakRplus {
                    1
                } else {
                    2
                };
                let broken = self
                    .breaking_set
                    .is_some_and(|a| a.contains(k1) && !a.contains(k2));
                chain_ok(min_len) && frame.related(k1, k2) && broken
            }
            (Condition::NonConnectedPair, &[a, b]) => {
                let reach = frame.plus(k0);
                reach.contains(a)
                    && reach.contains(b)
                    && !frame.related(a, b)
                    && !frame.related(b, a)
            }
            _ => false,
        }
    }
}

/// Lexicographically least witness of `condition`, or `None` when the
/// frame (or model) has no such defect.
pub fn find_violation<'a>(
    subject: impl Into<Subject<'a>>,
    condition: Condition,
) -> Result<Option<ViolationWitness>, WitnessError> {
    let subject = subject.into();
    let frame = subject.frame();
    let n = frame.size();
    let plain = |anchor: usize, offending: Vec<usize>, chain: Vec<usize>| ViolationWitness {
        kind: condition,
        anchor,
        offending,
        chain,
        breaking_set: None,
    };
    let walk = |from: usize, to: usize, min_len: usize| {
        frame.walk(from, to, min_len).expect("target is reachable")
    };
    Ok(match condition {
        Condition::NonReflexiveNode => (0..n)
            .find(|&k| !frame.related(k, k))
            .map(|k| plain(k, vec![k], Vec::new())),
        Condition::NonTransitiveTripleInRplus => (0..n).find_map(|k0| {
            let reach = frame.plus(k0);
            reach.iter().find_map(|k1| {
                let row1 = frame.row(k1);
                row1.iter().find_map(|k2| {
                    frame
                        .row(k2)
                        .difference(row1)
                        .first()
                        .map(|k3| plain(k0, vec![k1, k2, k3], walk(k0, k1, 1)))
                })
            })
        }),
        Condition::NonReflexiveInRplus => (0..n).find_map(|k0| {
            frame
                .plus(k0)
                .iter()
                .find(|&k1| !frame.related(k1, k1))
                .map(|k1| plain(k0, vec![k1], walk(k0, k1, 1)))
        }),
        Condition::NonReflexiveInR2 => (0..n).find_map(|k0| {
            frame
                .two_step(k0)
                .iter()
                .find(|&k| !frame.related(k, k))
                .map(|k| {
                    let mid = frame
                        .row(k0)
                        .iter()
                        .find(|&m| frame.related(m, k))
                        .expect("k is two steps away");
                    plain(k0, vec![k], vec![mid])
                })
        }),
        Condition::PersistencyBreakRplus | Condition::PersistencyBreakRplusplus => {
            let Subject::Model(model) = subject else {
                return Err(WitnessError::NeedsModel(condition));
            };
            let plus_plus = condition == Condition::PersistencyBreakRplusplus;
            let alg = model.definable_sets();
            (0..n).find_map(|k0| {
                let region = if plus_plus {
                    frame.plusplus(k0)
                } else {
                    frame.plus(k0)
                };
                region.iter().find_map(|k1| {
                    frame.row(k1).iter().find_map(|k2| {
                        alg.separating(k1, k2).map(|a| ViolationWitness {
                            kind: condition,
                            anchor: k0,
                            offending: vec![k1, k2],
                            chain: walk(k0, k1, if plus_plus { 2 } else { 1 }),
                            breaking_set: Some(a),
                        })
                    })
                })
            })
        }
        Condition::NonConnectedPair => (0..n).find_map(|k| {
            let reach = frame.plus(k);
            reach.iter().find_map(|a| {
                reach
                    .iter()
                    .filter(|&b| b >= a)
                    .find(|&b| !frame.related(a, b) && !frame.related(b, a))
                    .map(|b| plain(k, vec![a, b], Vec::new()))
            })
        }),
    })
}

/// A model, a node and an instance of the target scheme that fails there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub theorem: Theorem,
    pub model: Model,
    pub failing_node: usize,
    pub failing_instance: Instance,
}

impl Countermodel {
    /// Re-evaluates the instance with direct forcing.
    pub fn refutes(&self) -> Result<bool, SemanticsError> {
        self.model
            .instance_fails_at(self.failing_node, &self.failing_instance)
    }
}

fn fresh_atom(model: &Model) -> String {
    let taken = |name: &str| model.valuation().contains_key(name);
    if !taken("phi") {
        return "phi".to_string();
    }
    (1..)
        .map(|i| format!("phi{i}"))
        .find(|name| !taken(name))
        .expect("unbounded supply of names")
}

fn valuation(pairs: &[(&str, NodeSet)]) -> BTreeMap<String, NodeSet> {
    pairs.iter().map(|(a, s)| (a.to_string(), *s)).collect()
}

/// Builds the countermodel the proof of `theorem` prescribes for `w`.
pub fn build_countermodel<'a>(
    theorem: Theorem,
    w: &ViolationWitness,
    base: impl Into<Subject<'a>>,
) -> Result<Countermodel, WitnessError> {
    let base = base.into();
    let expected = theorem.condition();
    if w.kind != expected {
        return Err(WitnessError::Mismatch {
            theorem,
            expected,
            found: w.kind,
        });
    }
    let frame = base.frame();
    if !w.is_valid_for(frame) {
        return Err(WitnessError::InvalidWitness(w.kind));
    }
    let scheme = get_scheme(theorem.scheme_name()).expect("registry scheme");
    let (p, q, r) = (Formula::atom("p"), Formula::atom("q"), Formula::atom("r"));
    let all = frame.nodes();
    let row = |k: usize| frame.row(k);

    let (model, failing_node, instance) = match theorem {
        Theorem::Mp => {
            let k = w.offending[0];
            let v = valuation(&[("p", all), ("q", row(k))]);
            (
                Model::new(frame.clone(), v)?,
                k,
                scheme.instantiate_with(&[p, q]),
            )
        }
        Theorem::A1 => {
            let (k1, k2) = (w.offending[0], w.offending[1]);
            let v = valuation(&[
                ("p", all),
                ("q", row(k1)),
                ("r", row(k1).intersection(row(k2))),
            ]);
            (
                Model::new(frame.clone(), v)?,
                w.last_link(),
                scheme.instantiate_with(&[p, q, r]),
            )
        }
        Theorem::A4Reflexivity => {
            let v = valuation(&[("p", NodeSet::singleton(w.offending[0]))]);
            (
                Model::new(frame.clone(), v)?,
                w.last_link(),
                scheme.instantiate_with(&[p, q]),
            )
        }
        Theorem::A5a => {
            let k = NodeSet::singleton(w.offending[0]);
            let v = valuation(&[("p", k), ("q", k)]);
            (
                Model::new(frame.clone(), v)?,
                w.anchor,
                scheme.instantiate_with(&[p, q, r]),
            )
        }
        Theorem::A5bTransitivity => {
            let (k1, k2, k3) = (w.offending[0], w.offending[1], w.offending[2]);
            let v = valuation(&[
                ("r", row(k1)),
                ("p", NodeSet::singleton(k2)),
                ("q", NodeSet::singleton(k3)),
            ]);
            (
                Model::new(frame.clone(), v)?,
                w.last_link(),
                scheme.instantiate_with(&[p, q, r]),
            )
        }
        Theorem::A4Persistency | Theorem::A5bPersistency => {
            let Subject::Model(original) = base else {
                return Err(WitnessError::NeedsModel(w.kind));
            };
            let name = fresh_atom(original);
            let phi = Formula::atom(name.clone());
            let breaking = w.breaking_set.expect("validated above");
            let model = original.clone().with_atom(name, breaking)?;
            if theorem == Theorem::A4Persistency {
                (
                    model,
                    w.last_link(),
                    scheme.instantiate_with(&[phi, Formula::top()]),
                )
            } else {
                let node = w
                    .second_to_last_link()
                    .expect("R++ walks have an interior node");
                (
                    model,
                    node,
                    scheme.instantiate_with(&[phi.clone(), Formula::top(), phi]),
                )
            }
        }
        Theorem::A6 => {
            if !(frame.is_reflexive() && frame.is_transitive()) {
                return Err(WitnessError::PreconditionUnmet(theorem));
            }
            let k = w.anchor;
            let (k1, k2) = (w.offending[0], w.offending[1]);
            let not_back: NodeSet = (0..frame.size())
                .filter(|&l| !frame.related(l, k))
                .collect();
            let v = valuation(&[
                ("p", row(k1)),
                ("q", row(k2)),
                ("r", row(k).intersection(not_back)),
            ]);
            (
                Model::new(frame.clone(), v)?,
                k,
                scheme.instantiate_with(&[p, q, r]),
            )
        }
    };
    let countermodel = Countermodel {
        theorem,
        model,
        failing_node,
        failing_instance: instance.expect("arity matches the scheme"),
    };
    if !countermodel.refutes()? {
        return Err(WitnessError::Unsound(theorem));
    }
    Ok(countermodel)
}

/// Finds the defect `theorem` needs and builds its countermodel.
pub fn witness<'a>(
    theorem: Theorem,
    subject: impl Into<Subject<'a>>,
) -> Result<Option<Countermodel>, WitnessError> {
    let subject = subject.into();
    if theorem == Theorem::A6 {
        let f = subject.frame();
        if !(f.is_reflexive() && f.is_transitive()) {
            return Err(WitnessError::PreconditionUnmet(theorem));
        }
    }
    match find_violation(subject, theorem.condition())? {
        None => Ok(None),
        Some(w) => build_countermodel(theorem, &w, subject).map(Some),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn frame(n: usize, edges: &[(usize, usize)]) -> Frame {
        Frame::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn set(items: &[usize]) -> NodeSet {
        items.iter().copied().collect()
    }

    #[test]
    fn chain_without_triples() {
        let f = frame(3, &[(0, 1), (1, 2)]);
        // R+[0] = {1, 2} has no broken triple, but R+ of nothing else does either
        assert_eq!(
            find_violation(&f, Condition::NonTransitiveTripleInRplus).unwrap(),
            None
        );
    }

    #[test]
    fn long_chain_triple() {
        let f = frame(4, &[(0, 1), (1, 2), (2, 3)]);
        let w = find_violation(&f, Condition::NonTransitiveTripleInRplus)
            .unwrap()
            .unwrap();
        assert_eq!(w.anchor, 0);
        assert_eq!(w.offending, vec![1, 2, 3]);
        assert!(w.chain.is_empty());
        assert_eq!(w.last_link(), 0);
    }

    #[test]
    fn persistency_break_needs_reachable_source() {
        let frame_only = frame(2, &[(0, 1)]);
        let m = Model::new(frame_only.clone(), [("p".to_string(), set(&[0]))].into()).unwrap();
        assert_eq!(
            find_violation(&m, Condition::PersistencyBreakRplus).unwrap(),
            None
        );
        assert_eq!(
            find_violation(&frame_only, Condition::PersistencyBreakRplus),
            Err(WitnessError::NeedsModel(Condition::PersistencyBreakRplus))
        );
        let looped = Model::new(
            frame(2, &[(0, 1), (0, 0)]),
            [("p".to_string(), set(&[0]))].into(),
        )
        .unwrap();
        let w = find_violation(&looped, Condition::PersistencyBreakRplus)
            .unwrap()
            .unwrap();
        assert_eq!((w.anchor, w.offending.as_slice()), (0, &[0, 1][..]));
        assert_eq!(w.breaking_set, Some(set(&[0])));
    }

    #[test]
    fn mp_countermodel() {
        let f = frame(2, &[(0, 1)]);
        let cm = witness(Theorem::Mp, &f).unwrap().unwrap();
        assert_eq!(cm.failing_node, 0);
        assert_eq!(cm.model.atom("p"), set(&[0, 1]));
        assert_eq!(cm.model.atom("q"), set(&[1]));
        let m = &cm.model;
        assert!(m.forces(0, &parse("p").unwrap()).unwrap());
        assert!(m.forces(0, &parse("p -> q").unwrap()).unwrap());
        assert!(!m.forces(0, &parse("q").unwrap()).unwrap());
    }

    #[test]
    fn a4_reflexivity_countermodel() {
        let f = frame(2, &[(0, 1)]);
        let cm = witness(Theorem::A4Reflexivity, &f).unwrap().unwrap();
        assert_eq!(cm.model.valuation(), &valuation(&[("p", set(&[1]))]));
        assert_eq!(cm.failing_node, 0);
        assert_eq!(
            cm.failing_instance,
            Instance::Axiom(parse("(p & (p->q)) -> (q & (q->p))").unwrap())
        );
    }

    #[test]
    fn a6_countermodel_on_fork() {
        let f = frame(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]);
        let w = find_violation(&f, Condition::NonConnectedPair)
            .unwrap()
            .unwrap();
        assert_eq!((w.anchor, w.offending.as_slice()), (0, &[1, 2][..]));
        let cm = build_countermodel(Theorem::A6, &w, &f).unwrap();
        assert_eq!(cm.model.atom("p"), set(&[1]));
        assert_eq!(cm.model.atom("q"), set(&[2]));
        assert_eq!(cm.model.atom("r"), set(&[1, 2]));
        assert_eq!(cm.failing_node, 0);
        assert!(cm.model.is_atom_persistent(f.nodes()));
        assert!(cm.model.is_formula_persistent(f.nodes()));
    }

    #[test]
    fn a6_requires_reflexive_transitive_frame() {
        let f = frame(3, &[(0, 1), (0, 2)]);
        assert_eq!(
            witness(Theorem::A6, &f),
            Err(WitnessError::PreconditionUnmet(Theorem::A6))
        );
    }

    #[test]
    fn a5b_persistency_uses_walk_of_length_two() {
        // 0 R 1 directly and 0 R 2 R 1, break between 1 and 3
        let f = frame(4, &[(0, 1), (0, 2), (2, 1), (1, 3)]);
        let m = Model::new(f, [("p".to_string(), set(&[1]))].into()).unwrap();
        let w = find_violation(&m, Condition::PersistencyBreakRplusplus)
            .unwrap()
            .unwrap();
        assert_eq!(w.anchor, 0);
        assert_eq!(w.offending, vec![1, 3]);
        assert_eq!(w.chain, vec![2]);
        let cm = build_countermodel(Theorem::A5bPersistency, &w, &m).unwrap();
        assert_eq!(cm.failing_node, 0);
        assert_eq!(cm.model.atom("phi"), w.breaking_set.unwrap());
        assert_eq!(cm.model.atom("p"), set(&[1]));
    }

    #[test]
    fn mismatched_or_forged_witnesses_are_rejected() {
        let f = frame(2, &[(0, 1)]);
        let w = find_violation(&f, Condition::NonReflexiveNode)
            .unwrap()
            .unwrap();
        assert!(matches!(
            build_countermodel(Theorem::A1, &w, &f),
            Err(WitnessError::Mismatch { .. })
        ));
        let forged = ViolationWitness {
            offending: vec![1],
            anchor: 1,
            ..w.clone()
        };
        let looped = frame(2, &[(0, 1), (1, 1)]);
        assert_eq!(
            build_countermodel(Theorem::Mp, &forged, &looped),
            Err(WitnessError::InvalidWitness(Condition::NonReflexiveNode))
        );
    }

    #[test]
    fn build_is_deterministic() {
        let f = frame(4, &[(0, 1), (1, 2), (2, 3), (3, 3)]);
        for t in [
            Theorem::Mp,
            Theorem::A1,
            Theorem::A4Reflexivity,
            Theorem::A5a,
            Theorem::A5bTransitivity,
        ] {
            let a = witness(t, &f).unwrap();
            let b = witness(t, &f).unwrap();
            assert_eq!(a, b);
            assert!(a.is_some(), "{t}");
        }
    }

    #[test]
    fn theorem_names_parse() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!("a7".parse::<Theorem>().is_err());
    }
}
