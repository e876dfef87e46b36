//! Forcing, truth sets, persistency and scheme validity.
//!
//! Truth sets compose: `ext(f & g) = ext f ∩ ext g`, `ext(f | g) = ext f ∪ ext g`
//! and `ext(f -> g) = {k : R[k] ∩ ext f ⊆ ext g}`. Quantifying over "all
//! formulas" of a model therefore reduces to quantifying over the finite family
//! of definable sets, and quantifying over all models on a frame reduces to
//! quantifying over all subsets of its nodes.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::formula::{Formula, Instance, Scheme};
use crate::kripke::{Frame, KripkeError, NodeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("cannot evaluate metavariable `{0}` in a model")]
    MetaInFormula(String),
    #[error("scheme templates may only use metavariables, found atom `{0}`")]
    AtomInTemplate(String),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error("valuation of `{atom}` mentions node {node}, but the frame has {size} nodes")]
    ValuationOutOfRange {
        atom: String,
        node: usize,
        size: usize,
    },
    #[error(
        "frame-level checks enumerate node subsets and are limited to {limit} nodes, got {size}"
    )]
    FrameTooLarge { size: usize, limit: usize },
}

/// Frame-level checks enumerate `2^n` node sets per metavariable.
pub const FRAME_CHECK_LIMIT: usize = 16;

/// A frame with an atom valuation. Atoms missing from the map are forced nowhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<String, NodeSet>,
}

impl Model {
    pub fn new(frame: Frame, valuation: BTreeMap<String, NodeSet>) -> Result<Self, SemanticsError> {
        for (atom, set) in &valuation {
            if let Some(node) = set.difference(frame.nodes()).first() {
                return Err(SemanticsError::ValuationOutOfRange {
                    atom: atom.clone(),
                    node,
                    size: frame.size(),
                });
            }
        }
        Ok(Model { frame, valuation })
    }

    pub fn empty(frame: Frame) -> Self {
        Model {
            frame,
            valuation: BTreeMap::new(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, NodeSet> {
        &self.valuation
    }

    pub fn atom(&self, name: &str) -> NodeSet {
        self.valuation.get(name).copied().unwrap_or_default()
    }

    pub fn with_atom(
        mut self,
        name: impl Into<String>,
        set: NodeSet,
    ) -> Result<Self, SemanticsError> {
        let name = name.into();
        if let Some(node) = set.difference(self.frame.nodes()).first() {
            return Err(SemanticsError::ValuationOutOfRange {
                atom: name,
                node,
                size: self.frame.size(),
            });
        }
        self.valuation.insert(name, set);
        Ok(self)
    }

    /// `k ⊩ f`, evaluated directly by recursion on `f`.
    pub fn forces(&self, k: usize, f: &Formula) -> Result<bool, SemanticsError> {
        self.frame.check(k)?;
        self.forces_at(k, f)
    }

    fn forces_at(&self, k: usize, f: &Formula) -> Result<bool, SemanticsError> {
        Ok(match f {
            Formula::Bot => false,
            Formula::Atom(a) => self.atom(a).contains(k),
            Formula::Meta(m) => return Err(SemanticsError::MetaInFormula(m.clone())),
            Formula::And(l, r) => self.forces_at(k, l)? & self.forces_at(k, r)?,
            Formula::Or(l, r) => self.forces_at(k, l)? | self.forces_at(k, r)?,
            Formula::Impl(l, r) => {
                for next in self.frame.row(k).iter() {
                    if self.forces_at(next, l)? && !self.forces_at(next, r)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// `{k : k ⊩ f}`, computed compositionally.
    pub fn extension(&self, f: &Formula) -> Result<NodeSet, SemanticsError> {
        Ok(match f {
            Formula::Bot => NodeSet::EMPTY,
            Formula::Atom(a) => self.atom(a),
            Formula::Meta(m) => return Err(SemanticsError::MetaInFormula(m.clone())),
            Formula::And(l, r) => self.extension(l)?.intersection(self.extension(r)?),
            Formula::Or(l, r) => self.extension(l)?.union(self.extension(r)?),
            Formula::Impl(l, r) => self.frame.arrow(self.extension(l)?, self.extension(r)?),
        })
    }

    /// Whether the rule instance fails at `k`: every premise forced, conclusion not.
    pub fn instance_fails_at(&self, k: usize, instance: &Instance) -> Result<bool, SemanticsError> {
        match instance {
            Instance::Axiom(f) => Ok(!self.forces(k, f)?),
            Instance::Rule {
                premises,
                conclusion,
            } => {
                for p in premises {
                    if !self.forces(k, p)? {
                        return Ok(false);
                    }
                }
                Ok(!self.forces(k, conclusion)?)
            }
        }
    }

    /// Atom persistency with sources restricted to `region`.
    pub fn is_atom_persistent(&self, region: NodeSet) -> bool {
        self.valuation
            .values()
            .all(|&a| is_persistent_set(&self.frame, a, region))
    }

    pub fn definable_sets(&self) -> DefinableAlgebra {
        DefinableAlgebra::generate(
            &self.frame,
            self.valuation
                .iter()
                .map(|(name, &set)| (set, Formula::atom(name.clone()))),
        )
    }

    /// The definable algebra generated by the listed atoms only.
    pub fn definable_sets_over(&self, atoms: &[&str]) -> DefinableAlgebra {
        DefinableAlgebra::generate(
            &self.frame,
            atoms.iter().map(|&a| (self.atom(a), Formula::atom(a))),
        )
    }

    /// Formula persistency with sources restricted to `region`.
    pub fn is_formula_persistent(&self, region: NodeSet) -> bool {
        self.definable_sets().is_persistent_on(&self.frame, region)
    }

    pub fn validates(&self, scheme: &Scheme) -> Result<SchemeVerdict, SemanticsError> {
        model_validates_scheme(self, scheme)
    }
}

/// `∀k ∈ region ∩ a, ∀k' (k R k' ⇒ k' ∈ a)`.
pub fn is_persistent_set(frame: &Frame, a: NodeSet, region: NodeSet) -> bool {
    a.intersection(region)
        .iter()
        .all(|k| frame.row(k).is_subset(a))
}

/// Successor-closed subsets of the frame, in increasing bit order.
pub fn up_sets(frame: &Frame) -> Result<Vec<NodeSet>, SemanticsError> {
    let n = frame.size();
    if n > FRAME_CHECK_LIMIT {
        return Err(SemanticsError::FrameTooLarge {
            size: n,
            limit: FRAME_CHECK_LIMIT,
        });
    }
    Ok((0..1u64 << n)
        .map(NodeSet::from_bits)
        .filter(|&s| frame.is_successor_closed(s))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    Bot,
    Generator(usize),
    And(usize, usize),
    Or(usize, usize),
    Impl(usize, usize),
}

/// The least family of node sets containing `∅` and the generators, closed
/// under `∩`, `∪` and `A ⇒ B = {k : R[k] ∩ A ⊆ B}`.
///
/// Each member remembers how it was first produced, so a formula with that
/// truth set can be recovered.
#[derive(Debug, Clone)]
pub struct DefinableAlgebra {
    entries: Vec<(NodeSet, Origin)>,
    generators: Vec<Formula>,
    index: HashMap<NodeSet, usize>,
    sorted: Vec<NodeSet>,
}

impl DefinableAlgebra {
    pub fn generate<I>(frame: &Frame, generators: I) -> Self
    where
        I: IntoIterator<Item = (NodeSet, Formula)>,
    {
        let mut alg = DefinableAlgebra {
            entries: Vec::new(),
            generators: Vec::new(),
            index: HashMap::new(),
            sorted: Vec::new(),
        };
        alg.push(NodeSet::EMPTY, Origin::Bot);
        for (set, formula) in generators {
            let g = alg.generators.len();
            alg.generators.push(formula);
            alg.push(set, Origin::Generator(g));
        }
        let mut i = 0;
        while i < alg.entries.len() {
            for j in 0..=i {
                let (a, b) = (alg.entries[i].0, alg.entries[j].0);
                alg.push(a.intersection(b), Origin::And(i, j));
                alg.push(a.union(b), Origin::Or(i, j));
                alg.push(frame.arrow(a, b), Origin::Impl(i, j));
                alg.push(frame.arrow(b, a), Origin::Impl(j, i));
            }
            i += 1;
        }
        let mut sorted: Vec<NodeSet> = alg.entries.iter().map(|e| e.0).collect();
        sorted.sort_unstable();
        alg.sorted = sorted;
        alg
    }

    fn push(&mut self, set: NodeSet, origin: Origin) {
        if !self.index.contains_key(&set) {
            self.index.insert(set, self.entries.len());
            self.entries.push((set, origin));
        }
    }

    /// Members in increasing bit order.
    pub fn sets(&self) -> &[NodeSet] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn contains(&self, set: NodeSet) -> bool {
        self.index.contains_key(&set)
    }

    /// A formula over the generators whose truth set is `set`.
    pub fn witness(&self, set: NodeSet) -> Option<Formula> {
        self.index.get(&set).map(|&i| self.formula_of(i))
    }

    fn formula_of(&self, i: usize) -> Formula {
        match self.entries[i].1 {
            Origin::Bot => Formula::Bot,
            Origin::Generator(g) => self.generators[g].clone(),
            Origin::And(a, b) => Formula::and(self.formula_of(a), self.formula_of(b)),
            Origin::Or(a, b) => Formula::or(self.formula_of(a), self.formula_of(b)),
            Origin::Impl(a, b) => Formula::implies(self.formula_of(a), self.formula_of(b)),
        }
    }

    pub fn is_persistent_on(&self, frame: &Frame, region: NodeSet) -> bool {
        self.sorted
            .iter()
            .all(|&a| is_persistent_set(frame, a, region))
    }

    /// Least member `A` (bit order) with `k1 ∈ A` and `k2 ∉ A`.
    pub fn separating(&self, k1: usize, k2: usize) -> Option<NodeSet> {
        self.sorted
            .iter()
            .copied()
            .find(|a| a.contains(k1) && !a.contains(k2))
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Bot,
    Meta(usize),
    And,
    Or,
    Impl,
}

/// A scheme compiled to postfix programs over metavariable slots.
#[derive(Debug, Clone)]
pub struct CompiledScheme {
    premises: Vec<Vec<Op>>,
    conclusion: Vec<Op>,
    arity: usize,
}

impl CompiledScheme {
    /// Atoms inside a template are rejected since their value depends on a valuation.
    pub fn new(scheme: &Scheme) -> Result<Self, SemanticsError> {
        let metas = scheme.metavariables();
        let compile = |f: &Formula| -> Result<Vec<Op>, SemanticsError> {
            let mut ops = Vec::new();
            compile_into(f, metas, &mut ops)?;
            Ok(ops)
        };
        Ok(CompiledScheme {
            premises: scheme
                .premises()
                .iter()
                .map(compile)
                .collect::<Result<_, _>>()?,
            conclusion: compile(scheme.conclusion())?,
            arity: metas.len(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Nodes where the scheme fails when metavariable `i` denotes `values[i]`.
    pub fn failing_nodes(
        &self,
        frame: &Frame,
        values: &[NodeSet],
        stack: &mut Vec<NodeSet>,
    ) -> NodeSet {
        let mut holds_premises = frame.nodes();
        for p in &self.premises {
            holds_premises = holds_premises.intersection(run(p, frame, values, stack));
        }
        holds_premises.difference(run(&self.conclusion, frame, values, stack))
    }

    /// First assignment (odometer order, first metavariable most significant)
    /// under which the scheme fails somewhere, with the least failing node.
    pub fn first_failure(
        &self,
        frame: &Frame,
        candidates: &[NodeSet],
    ) -> Option<(Vec<usize>, usize)> {
        let mut stack = Vec::with_capacity(16);
        if self.arity == 0 {
            return self
                .failing_nodes(frame, &[], &mut stack)
                .first()
                .map(|k| (Vec::new(), k));
        }
        if candidates.is_empty() {
            return None;
        }
        let mut idx = vec![0usize; self.arity];
        let mut values = vec![candidates[0]; self.arity];
        loop {
            if let Some(k) = self.failing_nodes(frame, &values, &mut stack).first() {
                return Some((idx, k));
            }
            let mut pos = self.arity;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < candidates.len() {
                    values[pos] = candidates[idx[pos]];
                    break;
                }
                idx[pos] = 0;
                values[pos] = candidates[0];
            }
        }
    }

    pub fn holds_for_all(&self, frame: &Frame, candidates: &[NodeSet]) -> bool {
        self.first_failure(frame, candidates).is_none()
    }
}

fn compile_into(f: &Formula, metas: &[String], ops: &mut Vec<Op>) -> Result<(), SemanticsError> {
    match f {
        Formula::Bot => ops.push(Op::Bot),
        Formula::Atom(a) => return Err(SemanticsError::AtomInTemplate(a.clone())),
        Formula::Meta(m) => {
            let i = metas
                .iter()
                .position(|x| x == m)
                .expect("metavariable list is complete");
            ops.push(Op::Meta(i));
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Impl(l, r) => {
            compile_into(l, metas, ops)?;
            compile_into(r, metas, ops)?;
            ops.push(match f {
                Formula::And(..) => Op::And,
                Formula::Or(..) => Op::Or,
                _ => Op::Impl,
            });
        }
    }
    Ok(())
}

fn run(ops: &[Op], frame: &Frame, values: &[NodeSet], stack: &mut Vec<NodeSet>) -> NodeSet {
    stack.clear();
    for op in ops {
        let v = match *op {
            Op::Bot => NodeSet::EMPTY,
            Op::Meta(i) => values[i],
            Op::And | Op::Or | Op::Impl => {
                let b = stack.pop().expect("well-formed program");
                let a = stack.pop().expect("well-formed program");
                match op {
                    Op::And => a.intersection(b),
                    Op::Or => a.union(b),
                    _ => frame.arrow(a, b),
                }
            }
        };
        stack.push(v);
    }
    stack.pop().expect("well-formed program")
}

/// Outcome of a scheme check. When `holds` is false every `failing_*` field is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeVerdict {
    pub holds: bool,
    pub failing_node: Option<usize>,
    /// Truth set assigned to each metavariable.
    pub failing_assignment: Option<BTreeMap<String, NodeSet>>,
    /// A concrete instance that fails at `failing_node` under `failing_valuation`.
    pub failing_instance: Option<Instance>,
    pub failing_valuation: Option<BTreeMap<String, NodeSet>>,
}

impl SchemeVerdict {
    fn holds() -> Self {
        SchemeVerdict {
            holds: true,
            failing_node: None,
            failing_assignment: None,
            failing_instance: None,
            failing_valuation: None,
        }
    }
}

/// Scheme validity in a model: every metavariable ranges over the definable
/// sets of the model. For rules, premises and conclusion are compared nodewise.
/// Fails only when the scheme body mentions atoms instead of metavariables.
pub fn model_validates_scheme(m: &Model, s: &Scheme) -> Result<SchemeVerdict, SemanticsError> {
    let compiled = CompiledScheme::new(s)?;
    let alg = m.definable_sets();
    Ok(verdict_from_algebra(
        m.frame(),
        s,
        &compiled,
        &alg,
        m.valuation().clone(),
    ))
}

fn verdict_from_algebra(
    frame: &Frame,
    s: &Scheme,
    compiled: &CompiledScheme,
    alg: &DefinableAlgebra,
    valuation: BTreeMap<String, NodeSet>,
) -> SchemeVerdict {
    let Some((idx, node)) = compiled.first_failure(frame, alg.sets()) else {
        return SchemeVerdict::holds();
    };
    let sets: Vec<NodeSet> = idx.iter().map(|&i| alg.sets()[i]).collect();
    let formulas: Vec<Formula> = sets
        .iter()
        .map(|&a| alg.witness(a).expect("member of the algebra"))
        .collect();
    failing_verdict(s, node, &sets, &formulas, valuation)
}

fn failing_verdict(
    s: &Scheme,
    node: usize,
    sets: &[NodeSet],
    formulas: &[Formula],
    valuation: BTreeMap<String, NodeSet>,
) -> SchemeVerdict {
    let assignment = s
        .metavariables()
        .iter()
        .cloned()
        .zip(sets.iter().copied())
        .collect();
    let instance = s
        .instantiate_with(formulas)
        .expect("every metavariable has a ground formula");
    SchemeVerdict {
        holds: false,
        failing_node: Some(node),
        failing_assignment: Some(assignment),
        failing_instance: Some(instance),
        failing_valuation: Some(valuation),
    }
}

/// Atom names used when a frame-level check reports a failing valuation.
pub fn fresh_atom_names(count: usize) -> Vec<String> {
    const BASE: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    (0..count)
        .map(|i| match BASE.get(i) {
            Some(b) => b.to_string(),
            None => format!("p{i}"),
        })
        .collect()
}

/// Scheme validity on a frame, i.e. in every model on it.
///
/// Without `persistent_only` each metavariable ranges over all node subsets,
/// since every subset is the valuation of some atom. With `persistent_only` the
/// check covers exactly the models with atom-persistent valuations: on
/// reflexive transitive frames their definable sets are the successor-closed
/// subsets; otherwise the algebra generated by all successor-closed subsets is
/// used.
pub fn frame_validates_scheme(
    f: &Frame,
    s: &Scheme,
    persistent_only: bool,
) -> Result<SchemeVerdict, SemanticsError> {
    let n = f.size();
    if n > FRAME_CHECK_LIMIT {
        return Err(SemanticsError::FrameTooLarge {
            size: n,
            limit: FRAME_CHECK_LIMIT,
        });
    }
    let compiled = CompiledScheme::new(s)?;
    let candidates = if persistent_only {
        let ups = up_sets(f)?;
        if !(f.is_reflexive() && f.is_transitive()) {
            let alg = universal_persistent_algebra(f, &ups);
            let valuation = universal_valuation(&ups);
            return Ok(verdict_from_algebra(f, s, &compiled, &alg, valuation));
        }
        ups
    } else {
        (0..1u64 << n).map(NodeSet::from_bits).collect()
    };
    let Some((idx, node)) = compiled.first_failure(f, &candidates) else {
        return Ok(SchemeVerdict::holds());
    };
    let names = fresh_atom_names(compiled.arity());
    let sets: Vec<NodeSet> = idx.iter().map(|&i| candidates[i]).collect();
    let formulas: Vec<Formula> = names.iter().map(|a| Formula::atom(a.clone())).collect();
    let valuation = names.iter().cloned().zip(sets.iter().copied()).collect();
    Ok(failing_verdict(s, node, &sets, &formulas, valuation))
}

fn universal_valuation(ups: &[NodeSet]) -> BTreeMap<String, NodeSet> {
    ups.iter()
        .filter(|s| !s.is_empty())
        .map(|&s| (format!("u{}", s.bits()), s))
        .collect()
}

/// Definable sets of the model that gives one atom to every successor-closed
/// subset. Every persistent model on the frame has its definable sets inside it.
pub fn universal_persistent_algebra(f: &Frame, ups: &[NodeSet]) -> DefinableAlgebra {
    DefinableAlgebra::generate(
        f,
        universal_valuation(ups)
            .into_iter()
            .map(|(name, set)| (set, Formula::atom(name))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::get_scheme;
    use crate::formula::parse;

    fn set(items: &[usize]) -> NodeSet {
        items.iter().copied().collect()
    }

    fn model(n: usize, edges: &[(usize, usize)], val: &[(&str, &[usize])]) -> Model {
        let frame = Frame::from_edges(n, edges.iter().copied()).unwrap();
        let valuation = val.iter().map(|(a, s)| (a.to_string(), set(s))).collect();
        Model::new(frame, valuation).unwrap()
    }

    #[test]
    fn bot_and_top() {
        let m = model(3, &[(0, 1), (1, 1), (2, 0)], &[("p", &[1])]);
        for k in 0..3 {
            assert!(!m.forces(k, &Formula::Bot).unwrap());
            assert!(m.forces(k, &Formula::top()).unwrap());
        }
        assert_eq!(m.extension(&Formula::top()).unwrap(), m.frame().nodes());
    }

    #[test]
    fn a4_instance_fails_on_dead_end() {
        let m = model(2, &[(0, 1)], &[("p", &[1])]);
        let f = parse("(p & (p->q)) -> (q & (q->p))").unwrap();
        assert!(!m.forces(0, &f).unwrap());
        assert!(m.forces(1, &f).unwrap());
    }

    #[test]
    fn implication_is_vacuous_without_successors() {
        let m = model(2, &[(0, 1)], &[("p", &[0])]);
        for text in ["p -> bot", "top -> bot", "q | p -> p & q"] {
            assert!(m.forces(1, &parse(text).unwrap()).unwrap());
        }
    }

    #[test]
    fn negation_extension() {
        let m = model(2, &[(0, 1)], &[("p", &[0])]);
        let f = parse("p -> bot").unwrap();
        assert_eq!(m.extension(&f).unwrap(), set(&[0, 1]));
        for k in 0..2 {
            assert!(m.forces(k, &f).unwrap());
        }
    }

    #[test]
    fn evaluation_errors() {
        let m = model(1, &[], &[]);
        assert_eq!(
            m.forces(0, &Formula::meta("PHI")),
            Err(SemanticsError::MetaInFormula("PHI".into()))
        );
        assert!(matches!(
            m.forces(1, &Formula::Bot),
            Err(SemanticsError::Kripke(_))
        ));
        let frame = Frame::new(2).unwrap();
        let bad = [("p".to_string(), set(&[2]))].into_iter().collect();
        assert!(matches!(
            Model::new(frame, bad),
            Err(SemanticsError::ValuationOutOfRange { node: 2, .. })
        ));
    }

    #[test]
    fn atom_persistency() {
        let closed = model(3, &[(0, 1), (1, 2)], &[("p", &[1, 2]), ("q", &[2])]);
        assert!(closed.is_atom_persistent(closed.frame().nodes()));
        let broken = model(2, &[(0, 1)], &[("p", &[0])]);
        assert!(!broken.is_atom_persistent(broken.frame().nodes()));
        assert!(broken.is_atom_persistent(set(&[1])));
        let a4 = model(2, &[(0, 1)], &[("p", &[1])]);
        assert!(a4.is_atom_persistent(a4.frame().nodes()));
    }

    #[test]
    fn algebra_of_single_reflexive_node() {
        let m = model(1, &[(0, 0)], &[("p", &[0])]);
        assert_eq!(m.definable_sets().sets(), &[NodeSet::EMPTY, set(&[0])]);
    }

    #[test]
    fn algebra_of_empty_valuation_on_v_frame() {
        // {∅, {a}, {b}} ordered by inclusion
        let m = model(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)], &[]);
        assert_eq!(
            m.definable_sets().sets(),
            &[NodeSet::EMPTY, set(&[0, 1, 2])]
        );
    }

    #[test]
    fn witnesses_have_the_right_extension() {
        let m = model(3, &[(0, 1), (1, 2), (2, 0)], &[("p", &[0]), ("q", &[1, 2])]);
        let alg = m.definable_sets();
        for &a in alg.sets() {
            let f = alg.witness(a).unwrap();
            assert_eq!(m.extension(&f).unwrap(), a, "{f}");
        }
    }

    #[test]
    fn formula_persistency() {
        // transitive, atom persistent
        let m = model(3, &[(0, 1), (1, 2), (0, 2)], &[("p", &[1, 2])]);
        assert!(m.is_formula_persistent(m.frame().nodes()));
        assert!(m.is_formula_persistent(NodeSet::EMPTY));
        // atom persistent but not transitive: p -> bot is true at 1, false at... none
        // here ~p holds at 2 only if 2 has no p-successor
        let n = model(3, &[(0, 1), (1, 2)], &[("p", &[2])]);
        assert!(n.is_atom_persistent(n.frame().nodes()));
        // ~p: {k : R[k] ∩ {2} = ∅} = {0, 2}; 0 R 1 and 1 is outside
        assert!(!n.is_formula_persistent(n.frame().nodes()));
    }

    #[test]
    fn universal_axioms_hold_in_models() {
        let m = model(3, &[(0, 1), (1, 2), (2, 0)], &[("p", &[0]), ("q", &[1, 2])]);
        for name in ["A2", "A3", "A7", "GODEL"] {
            assert!(
                m.validates(get_scheme(name).unwrap()).unwrap().holds,
                "{name}"
            );
        }
    }

    #[test]
    fn a6_holds_on_non_connected_empty_model() {
        let m = model(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)], &[]);
        assert!(m.validates(get_scheme("A6").unwrap()).unwrap().holds);
        assert!(!m.frame().is_connected());
    }

    #[test]
    fn a4_countermodel_verdict() {
        let m = model(2, &[(0, 1)], &[("p", &[1])]);
        let v = m.validates(get_scheme("A4").unwrap()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failing_node, Some(0));
        let inst = v.failing_instance.clone().unwrap();
        assert!(m.instance_fails_at(0, &inst).unwrap());
        let assignment = v.failing_assignment.unwrap();
        assert_eq!(assignment["PHI"], set(&[1]));
    }

    #[test]
    fn frame_level_checks() {
        let lp = Frame::from_edges(1, [(0, 0)]).unwrap();
        for s in crate::axioms::all() {
            if s.name() == "LIN" {
                continue;
            }
            assert!(
                frame_validates_scheme(&lp, s, false).unwrap().holds,
                "{}",
                s.name()
            );
        }
        let f = Frame::from_edges(2, [(0, 1), (1, 1)]).unwrap();
        let v = frame_validates_scheme(&f, get_scheme("MP").unwrap(), false).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failing_node, Some(0));
        let fork = Frame::from_edges(3, [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)]).unwrap();
        let a6 = get_scheme("A6").unwrap();
        assert!(!frame_validates_scheme(&fork, a6, true).unwrap().holds);
    }

    #[test]
    fn failing_valuation_reproduces_frame_failure() {
        let f = Frame::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        for name in ["A1", "A4", "A5a", "A5b", "MP"] {
            let v = frame_validates_scheme(&f, get_scheme(name).unwrap(), false).unwrap();
            assert!(!v.holds, "{name}");
            let m = Model::new(f.clone(), v.failing_valuation.unwrap()).unwrap();
            assert!(m
                .instance_fails_at(v.failing_node.unwrap(), &v.failing_instance.unwrap())
                .unwrap());
        }
    }

    #[test]
    fn persistent_check_on_non_transitive_frame_uses_generated_algebra() {
        // 0 -> 1 -> 2, loops everywhere, no 0 -> 2
        let f = Frame::from_edges(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).unwrap();
        let v = frame_validates_scheme(&f, get_scheme("A1").unwrap(), true).unwrap();
        assert!(!v.holds);
        let m = Model::new(f.clone(), v.failing_valuation.unwrap()).unwrap();
        assert!(m.is_atom_persistent(f.nodes()));
        assert!(m
            .instance_fails_at(v.failing_node.unwrap(), &v.failing_instance.unwrap())
            .unwrap());
    }

    #[test]
    fn frame_check_refuses_large_frames() {
        let f = Frame::new(17).unwrap();
        assert!(matches!(
            frame_validates_scheme(&f, get_scheme("A2").unwrap(), false),
            Err(SemanticsError::FrameTooLarge { .. })
        ));
    }
}
