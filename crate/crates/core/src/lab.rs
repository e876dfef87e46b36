//! Exhaustive and sampled sweeps that check each correspondence claim on
//! every small frame (or model) and report where the two sides disagree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::get_scheme;
use crate::document::ModelDocument;
use crate::formula::{Formula, Instance};
use crate::kripke::{Frame, NodeSet};
use crate::semantics::{
    fresh_atom_names, universal_persistent_algebra, up_sets, CompiledScheme, DefinableAlgebra,
    Model,
};
use crate::witness::{witness, Countermodel, Theorem};

/// Exhaustive sweeps refuse to go past this many nodes unless overridden.
pub const EXHAUSTIVE_NODE_BUDGET: usize = 4;
/// Exhaustive model sweeps refuse to go past this many atoms unless overridden.
pub const EXHAUSTIVE_ATOM_BUDGET: usize = 3;
/// Largest frame the relation-mask encoding supports.
pub const MASK_NODE_LIMIT: usize = 8;
/// How many mismatch or finding examples a report keeps.
pub const EXAMPLE_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("unknown theorem `{0}`; expected one of {names}", names = TheoremId::ALL.map(|t| t.name()).join(", "))]
    UnknownTheorem(String),
    #[error(
        "an exhaustive sweep over {nodes} nodes with {atoms} atoms exceeds the budget of \
         {EXHAUSTIVE_NODE_BUDGET} nodes and {EXHAUSTIVE_ATOM_BUDGET} atoms; allow large sweeps to override"
    )]
    Budget { nodes: usize, atoms: usize },
    #[error("node count must be between 1 and {MASK_NODE_LIMIT}, got {0}")]
    NodeCount(usize),
    #[error("{atoms} atoms on {nodes} nodes do not fit in a 64-bit valuation code")]
    AtomCount { nodes: usize, atoms: usize },
    #[error("a sampled sweep needs a seed")]
    MissingSeed,
    #[error("could not start the worker pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

/// The claims a sweep can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    ThmMp,
    ThmA1,
    ThmA4,
    ThmA5a,
    ThmA5b,
    ThmA6,
    LemmaTrans,
    PropPersist,
    PropTrivial,
    CorBl,
    CorBlMixed,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::ThmMp,
        TheoremId::ThmA1,
        TheoremId::ThmA4,
        TheoremId::ThmA5a,
        TheoremId::ThmA5b,
        TheoremId::ThmA6,
        TheoremId::LemmaTrans,
        TheoremId::PropPersist,
        TheoremId::PropTrivial,
        TheoremId::CorBl,
        TheoremId::CorBlMixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::ThmMp => "thm-mp",
            TheoremId::ThmA1 => "thm-a1",
            TheoremId::ThmA4 => "thm-a4",
            TheoremId::ThmA5a => "thm-a5a",
            TheoremId::ThmA5b => "thm-a5b",
            TheoremId::ThmA6 => "thm-a6",
            TheoremId::LemmaTrans => "lemma-trans",
            TheoremId::PropPersist => "prop-persist",
            TheoremId::PropTrivial => "prop-trivial",
            TheoremId::CorBl => "cor-bl",
            TheoremId::CorBlMixed => "cor-bl-mixed",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::ThmMp => "a frame validates MP iff R is reflexive",
            TheoremId::ThmA1 => "a frame validates A1 iff R restricted to R+[k] is transitive for every k",
            TheoremId::ThmA4 => {
                "a model validates A4 if R restricted to R+[k] is reflexive and the model is \
                 persistent on R+[k] for every k; validity forces that persistency, and frame \
                 validity forces that reflexivity"
            }
            TheoremId::ThmA5a => "a frame validates A5a iff R restricted to R^2[k] is reflexive for every k",
            TheoremId::ThmA5b => {
                "a model validates A5b if R restricted to R+[k] is transitive and the model is \
                 persistent on R++[k] for every k; validity forces that persistency, and frame \
                 validity forces that transitivity"
            }
            TheoremId::ThmA6 => {
                "a reflexive transitive frame validates A6 over persistent valuations iff it is connected"
            }
            TheoremId::LemmaTrans => {
                "a reflexive frame whose restriction to every R+[k] is transitive is transitive"
            }
            TheoremId::PropPersist => {
                "if R restricted to R+[k] is transitive and atoms are persistent on R+[k], every formula is"
            }
            TheoremId::PropTrivial => "A2, A3, A7 and the Godel axiom hold on every frame",
            TheoremId::CorBl => {
                "a frame validates A1..A7 and MP over persistent valuations iff it is reflexive, \
                 transitive and connected"
            }
            TheoremId::CorBlMixed => {
                "a frame validates MP and A1 over all valuations and every BL scheme over persistent \
                 valuations iff it is reflexive, transitive and connected"
            }
        }
    }

    /// Whether the sweep ranges over valuations as well as frames.
    pub fn uses_valuations(self) -> bool {
        matches!(
            self,
            TheoremId::ThmA4 | TheoremId::ThmA5b | TheoremId::ThmA6 | TheoremId::PropPersist
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| LabError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    /// Every frame on `1..=max_nodes` nodes.
    Exhaustive,
    /// `samples` seeded random frames on exactly `max_nodes` nodes.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_nodes: usize,
    /// Atoms per valuation for model-level sweeps.
    pub atoms: usize,
    pub mode: SweepMode,
    pub samples: usize,
    pub seed: Option<u64>,
    pub allow_large: bool,
}

impl SweepConfig {
    pub fn exhaustive(max_nodes: usize) -> Self {
        SweepConfig {
            max_nodes,
            atoms: 3,
            mode: SweepMode::Exhaustive,
            samples: 0,
            seed: None,
            allow_large: false,
        }
    }

    pub fn sampled(nodes: usize, samples: usize, seed: u64) -> Self {
        SweepConfig {
            max_nodes: nodes,
            atoms: 3,
            mode: SweepMode::Sampled,
            samples,
            seed: Some(seed),
            allow_large: false,
        }
    }

    pub fn with_atoms(mut self, atoms: usize) -> Self {
        self.atoms = atoms;
        self
    }

    pub fn allowing_large(mut self) -> Self {
        self.allow_large = true;
        self
    }

    fn validate(&self) -> Result<(), LabError> {
        if self.max_nodes == 0 || self.max_nodes > MASK_NODE_LIMIT {
            return Err(LabError::NodeCount(self.max_nodes));
        }
        if self.atoms * self.max_nodes > 64 {
            return Err(LabError::AtomCount {
                nodes: self.max_nodes,
                atoms: self.atoms,
            });
        }
        match self.mode {
            SweepMode::Exhaustive => {
                let over =
                    self.max_nodes > EXHAUSTIVE_NODE_BUDGET || self.atoms > EXHAUSTIVE_ATOM_BUDGET;
                if over && !self.allow_large {
                    return Err(LabError::Budget {
                        nodes: self.max_nodes,
                        atoms: self.atoms,
                    });
                }
            }
            SweepMode::Sampled => {
                if self.seed.is_none() {
                    return Err(LabError::MissingSeed);
                }
            }
        }
        Ok(())
    }
}

/// All `2^(n^2)` frames on `n` nodes, in relation-mask order.
pub fn enumerate_frames(
    n: usize,
    allow_large: bool,
) -> Result<impl Iterator<Item = Frame>, LabError> {
    if n == 0 || n > MASK_NODE_LIMIT || (n > EXHAUSTIVE_NODE_BUDGET && n * n >= 64) {
        return Err(LabError::NodeCount(n));
    }
    if n > EXHAUSTIVE_NODE_BUDGET && !allow_large {
        return Err(LabError::Budget { nodes: n, atoms: 0 });
    }
    Ok((0..1u64 << (n * n)).map(move |mask| Frame::from_mask(n, mask)))
}

/// One disagreement (or finding) with a model that exhibits it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example {
    pub clause: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node: Option<String>,
    pub model: ModelDocument,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// Frames visited, per node count starting at 1.
    pub frames_by_size: Vec<u64>,
    pub frames: u64,
    /// Cases the main claim was evaluated on (frames or models).
    pub instances: u64,
    /// Cases where the structural side of the claim held.
    pub condition_true: u64,
    /// Cases where the scheme (or the consequent) held.
    pub axiom_valid: u64,
    /// Auxiliary implications evaluated alongside the main claim.
    pub side_checks: u64,
    pub mismatches: u64,
    /// Cases outside the claim that are worth knowing about, such as the
    /// converse of a one-directional claim failing.
    pub findings: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub statement: String,
    pub config: SweepConfig,
    pub counts: Counts,
    pub mismatches: Vec<Example>,
    pub findings: Vec<Example>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counts.mismatches == 0
    }

    /// JSON with the timing zeroed, for comparing runs.
    pub fn deterministic_json(&self) -> String {
        let mut copy = self.clone();
        copy.elapsed_ms = 0;
        serde_json::to_string_pretty(&copy).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.counts;
        let sizes: Vec<String> = c
            .frames_by_size
            .iter()
            .rev()
            .filter(|&&x| x > 0)
            .map(u64::to_string)
            .collect();
        writeln!(
            f,
            "{}: {} frames, {} mismatches",
            self.theorem,
            sizes.join("+"),
            c.mismatches
        )?;
        writeln!(f, "  claim: {}", self.statement)?;
        match self.config.mode {
            SweepMode::Exhaustive => writeln!(
                f,
                "  mode: exhaustive up to {} nodes, {} atoms",
                self.config.max_nodes, self.config.atoms
            )?,
            SweepMode::Sampled => writeln!(
                f,
                "  mode: {} samples on {} nodes, {} atoms, seed {}",
                self.config.samples,
                self.config.max_nodes,
                self.config.atoms,
                self.config.seed.unwrap_or_default()
            )?,
        }
        writeln!(
            f,
            "  instances: {}, condition true: {}, valid: {}, side checks: {}, findings: {}",
            c.instances, c.condition_true, c.axiom_valid, c.side_checks, c.findings
        )?;
        for (label, list) in [("mismatch", &self.mismatches), ("finding", &self.findings)] {
            for ex in list {
                let model = serde_json::to_string(&ex.model).expect("documents serialize");
                match &ex.node {
                    Some(node) => writeln!(f, "  {label}: {} at {node}: {model}", ex.clause)?,
                    None => writeln!(f, "  {label}: {}: {model}", ex.clause)?,
                }
            }
        }
        write!(f, "  elapsed: {} ms", self.elapsed_ms)
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    frames: u64,
    instances: u64,
    condition_true: u64,
    axiom_valid: u64,
    side_checks: u64,
    mismatch_count: u64,
    finding_count: u64,
    mismatches: Vec<Example>,
    findings: Vec<Example>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.frames += other.frames;
        self.instances += other.instances;
        self.condition_true += other.condition_true;
        self.axiom_valid += other.axiom_valid;
        self.side_checks += other.side_checks;
        self.mismatch_count += other.mismatch_count;
        self.finding_count += other.finding_count;
        extend_capped(&mut self.mismatches, other.mismatches);
        extend_capped(&mut self.findings, other.findings);
        self
    }

    fn record(&mut self, condition: bool, valid: bool) {
        self.instances += 1;
        self.condition_true += u64::from(condition);
        self.axiom_valid += u64::from(valid);
    }

    fn mismatch(&mut self, example: impl FnOnce() -> Example) {
        self.mismatch_count += 1;
        if self.mismatches.len() < EXAMPLE_CAP {
            self.mismatches.push(example());
        }
    }

    fn finding(&mut self, example: impl FnOnce() -> Example) {
        self.finding_count += 1;
        if self.findings.len() < EXAMPLE_CAP {
            self.findings.push(example());
        }
    }
}

fn extend_capped(list: &mut Vec<Example>, more: Vec<Example>) {
    let room = EXAMPLE_CAP.saturating_sub(list.len());
    list.extend(more.into_iter().take(room));
}

/// Runs `f` on a pool of `threads` workers, or on the global pool when `threads` is 0.
pub fn run_in_pool<T, F>(threads: usize, f: F) -> Result<T, LabError>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?;
    Ok(pool.install(f))
}

/// Valuation codes: atom `i` gets bits `i*n .. (i+1)*n` of the code.
#[derive(Debug, Clone, Copy)]
enum Valuations {
    All,
    One(u64),
}

fn valuation_codes(vals: Valuations, atoms: usize, n: usize) -> std::ops::RangeInclusive<u64> {
    match vals {
        Valuations::One(v) => v..=v,
        Valuations::All => {
            let bits = atoms * n;
            let last = if bits >= 64 {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            };
            0..=last
        }
    }
}

fn decode_valuation(code: u64, atoms: usize, n: usize) -> Vec<NodeSet> {
    let row = NodeSet::full(n).bits();
    (0..atoms)
        .map(|i| NodeSet::from_bits(code >> (i * n) & row))
        .collect()
}

/// Per-frame reachability data.
struct Regions {
    plus: Vec<NodeSet>,
    plusplus: Vec<NodeSet>,
    two: Vec<NodeSet>,
}

impl Regions {
    fn new(f: &Frame) -> Self {
        let n = f.size();
        Regions {
            plus: (0..n).map(|k| f.plus(k)).collect(),
            plusplus: (0..n).map(|k| f.plusplus(k)).collect(),
            two: (0..n).map(|k| f.two_step(k)).collect(),
        }
    }

    fn reflexive_on_plus(&self, f: &Frame) -> bool {
        self.plus.iter().all(|&c| f.is_reflexive_on(c))
    }

    fn transitive_on_plus(&self, f: &Frame) -> bool {
        self.plus.iter().all(|&c| f.is_transitive_on(c))
    }

    fn reflexive_on_two(&self, f: &Frame) -> bool {
        self.two.iter().all(|&c| f.is_reflexive_on(c))
    }
}

struct Checker {
    atoms: usize,
    atom_names: Vec<String>,
    mp: CompiledScheme,
    a1: CompiledScheme,
    a4: CompiledScheme,
    a5a: CompiledScheme,
    a5b: CompiledScheme,
    a6: CompiledScheme,
    trivial: Vec<(&'static str, CompiledScheme)>,
    bl: Vec<(&'static str, CompiledScheme)>,
    subsets: Vec<Vec<NodeSet>>,
}

fn compiled(name: &str) -> CompiledScheme {
    CompiledScheme::new(get_scheme(name).expect("registry scheme"))
        .expect("registry schemes are templates")
}

impl Checker {
    fn new(atoms: usize, max_nodes: usize) -> Self {
        let named = |names: &[&'static str]| names.iter().map(|&n| (n, compiled(n))).collect();
        Checker {
            atoms,
            atom_names: fresh_atom_names(atoms),
            mp: compiled("MP"),
            a1: compiled("A1"),
            a4: compiled("A4"),
            a5a: compiled("A5a"),
            a5b: compiled("A5b"),
            a6: compiled("A6"),
            trivial: named(&["A2", "A3", "A7", "GODEL"]),
            bl: named(&["A1", "A2", "A3", "A4", "A5a", "A5b", "A6", "A7", "MP"]),
            subsets: (0..=max_nodes)
                .map(|n| (0..1u64 << n).map(NodeSet::from_bits).collect())
                .collect(),
        }
    }

    fn model(&self, f: &Frame, sets: &[NodeSet]) -> Model {
        let valuation = self
            .atom_names
            .iter()
            .cloned()
            .zip(sets.iter().copied())
            .collect();
        Model::new(f.clone(), valuation).expect("decoded sets fit the frame")
    }

    fn algebra(&self, f: &Frame, sets: &[NodeSet]) -> DefinableAlgebra {
        DefinableAlgebra::generate(
            f,
            sets.iter()
                .zip(&self.atom_names)
                .map(|(&s, name)| (s, Formula::atom(name.clone()))),
        )
    }

    fn check(&self, theorem: TheoremId, f: &Frame, vals: Valuations) -> Tally {
        let mut t = Tally {
            frames: 1,
            ..Tally::default()
        };
        let all = &self.subsets[f.size()];
        let regions = Regions::new(f);
        match theorem {
            TheoremId::ThmMp => self.frame_claim(
                &mut t,
                f,
                "MP",
                &self.mp,
                f.is_reflexive(),
                "R is reflexive",
            ),
            TheoremId::ThmA1 => self.frame_claim(
                &mut t,
                f,
                "A1",
                &self.a1,
                regions.transitive_on_plus(f),
                "R is transitive on every R+[k]",
            ),
            TheoremId::ThmA5a => self.frame_claim(
                &mut t,
                f,
                "A5a",
                &self.a5a,
                regions.reflexive_on_two(f),
                "R is reflexive on every R^2[k]",
            ),
            TheoremId::ThmA4 => self.model_claim(
                &mut t,
                f,
                vals,
                ("A4", &self.a4),
                (
                    regions.reflexive_on_plus(f),
                    "R is reflexive on every R+[k]",
                ),
                (&regions.plus, "R+[k]"),
            ),
            TheoremId::ThmA5b => self.model_claim(
                &mut t,
                f,
                vals,
                ("A5b", &self.a5b),
                (
                    regions.transitive_on_plus(f),
                    "R is transitive on every R+[k]",
                ),
                (&regions.plusplus, "R++[k]"),
            ),
            TheoremId::ThmA6 => self.a6_claim(&mut t, f, vals),
            TheoremId::LemmaTrans => {
                let hyp = f.is_reflexive() && regions.transitive_on_plus(f);
                let concl = f.is_transitive();
                t.record(hyp, concl);
                if hyp && !concl {
                    t.mismatch(|| {
                        example(
                            "reflexive and transitive on every R+[k] but not transitive",
                            f,
                            None,
                        )
                    });
                }
            }
            TheoremId::PropPersist => {
                for code in valuation_codes(vals, self.atoms, f.size()) {
                    let sets = decode_valuation(code, self.atoms, f.size());
                    let alg = self.algebra(f, &sets);
                    for (k, &region) in regions.plus.iter().enumerate() {
                        let hyp = f.is_transitive_on(region)
                            && sets
                                .iter()
                                .all(|&a| crate::semantics::is_persistent_set(f, a, region));
                        let concl = alg.is_persistent_on(f, region);
                        t.record(hyp, concl);
                        if hyp && !concl {
                            t.mismatch(|| Example {
                                clause: "atoms persistent on R+[k] but some formula is not".into(),
                                node: Some(format!("k{k}")),
                                model: model_doc(&self.model(f, &sets)),
                            });
                        }
                    }
                }
            }
            TheoremId::PropTrivial => {
                let mut every = true;
                for (name, scheme) in &self.trivial {
                    if let Some((_, node)) = scheme.first_failure(f, all) {
                        every = false;
                        t.mismatch(|| example(&format!("{name} fails"), f, Some(node)));
                    }
                }
                t.record(true, every);
            }
            TheoremId::CorBl => self.bl_claim(&mut t, f, false),
            TheoremId::CorBlMixed => self.bl_claim(&mut t, f, true),
        }
        t
    }

    fn frame_claim(
        &self,
        t: &mut Tally,
        f: &Frame,
        name: &str,
        scheme: &CompiledScheme,
        condition: bool,
        condition_text: &str,
    ) {
        let failure = scheme.first_failure(f, &self.subsets[f.size()]);
        let valid = failure.is_none();
        t.record(condition, valid);
        match (condition, failure) {
            (true, Some((_, node))) => t.mismatch(|| {
                example(
                    &format!("{condition_text} but the frame does not validate {name}"),
                    f,
                    Some(node),
                )
            }),
            (false, None) => t.mismatch(|| {
                example(
                    &format!(
                        "the frame validates {name} but it is not the case that {condition_text}"
                    ),
                    f,
                    None,
                )
            }),
            _ => {}
        }
    }

    /// Model-level sufficiency, model-level necessity of persistency and
    /// frame-level necessity of the structural condition.
    fn model_claim(
        &self,
        t: &mut Tally,
        f: &Frame,
        vals: Valuations,
        (name, scheme): (&str, &CompiledScheme),
        (structural, structural_text): (bool, &str),
        (regions, region_text): (&[NodeSet], &str),
    ) {
        let frame_valid = scheme.holds_for_all(f, &self.subsets[f.size()]);
        t.side_checks += 1;
        if frame_valid && !structural {
            t.mismatch(|| {
                example(
                    &format!(
                        "the frame validates {name} but it is not the case that {structural_text}"
                    ),
                    f,
                    None,
                )
            });
        }
        for code in valuation_codes(vals, self.atoms, f.size()) {
            let sets = decode_valuation(code, self.atoms, f.size());
            let alg = self.algebra(f, &sets);
            let failure = scheme.first_failure(f, alg.sets());
            let valid = failure.is_none();
            let persistent = regions.iter().all(|&r| alg.is_persistent_on(f, r));
            let condition = structural && persistent;
            t.record(condition, valid);
            if let (true, Some((_, node))) = (condition, failure) {
                t.mismatch(|| Example {
                    clause: format!("{structural_text} and every formula is persistent on {region_text}, but {name} fails"),
                    node: Some(format!("k{node}")),
                    model: model_doc(&self.model(f, &sets)),
                });
            }
            if valid && !persistent {
                t.mismatch(|| Example {
                    clause: format!("the model validates {name} but some formula is not persistent on {region_text}"),
                    node: None,
                    model: model_doc(&self.model(f, &sets)),
                });
            }
            if valid && !structural {
                t.finding(|| Example {
                    clause: format!("the model validates {name} although it is not the case that {structural_text}"),
                    node: None,
                    model: model_doc(&self.model(f, &sets)),
                });
            }
        }
    }

    fn a6_claim(&self, t: &mut Tally, f: &Frame, vals: Valuations) {
        let connected = f.is_connected();
        if f.is_reflexive() && f.is_transitive() {
            let ups = up_sets(f).expect("sweep frames are small");
            let failure = self.a6.first_failure(f, &ups);
            t.record(connected, failure.is_none());
            match (connected, failure) {
                (true, Some((_, node))) => t.mismatch(|| {
                    example(
                        "connected but A6 fails for a persistent valuation",
                        f,
                        Some(node),
                    )
                }),
                (false, None) => t.mismatch(|| {
                    example(
                        "A6 holds for every persistent valuation but the frame is not connected",
                        f,
                        None,
                    )
                }),
                _ => {}
            }
        }
        // On any frame, connectedness plus persistency of every formula gives A6.
        if !connected {
            return;
        }
        for code in valuation_codes(vals, self.atoms, f.size()) {
            let sets = decode_valuation(code, self.atoms, f.size());
            let alg = self.algebra(f, &sets);
            if !alg.is_persistent_on(f, f.nodes()) {
                continue;
            }
            t.side_checks += 1;
            if let Some((_, node)) = self.a6.first_failure(f, alg.sets()) {
                t.mismatch(|| Example {
                    clause: "connected with every formula persistent, but A6 fails".into(),
                    node: Some(format!("k{node}")),
                    model: model_doc(&self.model(f, &sets)),
                });
            }
        }
    }

    /// With `unrestricted`, MP and A1 must also hold for arbitrary valuations.
    fn bl_claim(&self, t: &mut Tally, f: &Frame, unrestricted: bool) {
        let all = &self.subsets[f.size()];
        let rtc = f.is_reflexive() && f.is_transitive() && f.is_connected();
        let ups = up_sets(f).expect("sweep frames are small");
        let persistent_sets = if f.is_reflexive() && f.is_transitive() {
            ups
        } else {
            universal_persistent_algebra(f, &ups).sets().to_vec()
        };
        let failing = if unrestricted && !self.mp.holds_for_all(f, all) {
            Some("MP")
        } else if unrestricted && !self.a1.holds_for_all(f, all) {
            Some("A1")
        } else {
            self.bl
                .iter()
                .find(|(_, s)| !s.holds_for_all(f, &persistent_sets))
                .map(|(name, _)| *name)
        };
        let valid = failing.is_none();
        t.record(rtc, valid);
        match (rtc, failing) {
            (true, Some(name)) => t.mismatch(|| {
                example(&format!("reflexive, transitive and connected but {name} fails"), f, None)
            }),
            (false, None) => t.mismatch(|| {
                example("every BL scheme holds but the frame is not reflexive, transitive and connected", f, None)
            }),
            _ => {}
        }
    }
}

fn model_doc(m: &Model) -> ModelDocument {
    ModelDocument::from_model(m, &crate::document::NodeNames::numbered(m.frame().size()))
}

fn example(clause: &str, f: &Frame, node: Option<usize>) -> Example {
    Example {
        clause: clause.to_string(),
        node: node.map(|k| format!("k{k}")),
        model: ModelDocument::from_frame(f),
    }
}

/// Draws `(frame mask, valuation code)` pairs. The frame sequence depends only
/// on the seed, node count and atom count.
fn draw_samples(cfg: &SweepConfig) -> Vec<(u64, u64)> {
    let n = cfg.max_nodes;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or_default());
    let frame_bits = n * n;
    let val_bits = cfg.atoms * n;
    let mask = |bits: usize| {
        if bits >= 64 {
            u64::MAX
        } else {
            (1u64 << bits) - 1
        }
    };
    (0..cfg.samples)
        .map(|_| {
            let frame = rng.gen::<u64>() & mask(frame_bits);
            let vals = rng.gen::<u64>() & mask(val_bits);
            (frame, vals)
        })
        .collect()
}

/// Runs a sweep on the global rayon pool.
pub fn verify_theorem(
    theorem: TheoremId,
    cfg: &SweepConfig,
) -> Result<VerificationReport, LabError> {
    verify_theorem_with(theorem, cfg, 0)
}

/// Runs a sweep on `threads` workers (0 picks the global pool). The report
/// does not depend on the worker count apart from `elapsed_ms`.
pub fn verify_theorem_with(
    theorem: TheoremId,
    cfg: &SweepConfig,
    threads: usize,
) -> Result<VerificationReport, LabError> {
    cfg.validate()?;
    let start = Instant::now();
    let checker = Checker::new(cfg.atoms, cfg.max_nodes);
    let mut frames_by_size = vec![0u64; cfg.max_nodes];
    let tally = run_in_pool(threads, || match cfg.mode {
        SweepMode::Exhaustive => (1..=cfg.max_nodes)
            .map(|n| {
                (0..1u64 << (n * n))
                    .into_par_iter()
                    .map(|mask| checker.check(theorem, &Frame::from_mask(n, mask), Valuations::All))
                    .reduce(Tally::default, Tally::merge)
            })
            .fold(Tally::default(), Tally::merge),
        SweepMode::Sampled => draw_samples(cfg)
            .into_par_iter()
            .map(|(mask, code)| {
                checker.check(
                    theorem,
                    &Frame::from_mask(cfg.max_nodes, mask),
                    Valuations::One(code),
                )
            })
            .reduce(Tally::default, Tally::merge),
    })?;
    match cfg.mode {
        SweepMode::Exhaustive => {
            for (i, slot) in frames_by_size.iter_mut().enumerate() {
                let n = i + 1;
                *slot = 1u64 << (n * n);
            }
        }
        SweepMode::Sampled => frames_by_size[cfg.max_nodes - 1] = cfg.samples as u64,
    }
    Ok(VerificationReport {
        theorem: theorem.name().to_string(),
        statement: theorem.statement().to_string(),
        config: cfg.clone(),
        counts: Counts {
            frames_by_size,
            frames: tally.frames,
            instances: tally.instances,
            condition_true: tally.condition_true,
            axiom_valid: tally.axiom_valid,
            side_checks: tally.side_checks,
            mismatches: tally.mismatch_count,
            findings: tally.finding_count,
        },
        mismatches: tally.mismatches,
        findings: tally.findings,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Countermodels built over a whole sweep and how many survived re-checking.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSweepReport {
    pub max_nodes: usize,
    pub atoms: usize,
    pub frames: u64,
    pub models: u64,
    /// Countermodels built, per witness theorem.
    pub built: BTreeMap<String, u64>,
    pub verified: u64,
    pub failures: u64,
    pub failure_examples: Vec<String>,
}

impl WitnessSweepReport {
    pub fn built_total(&self) -> u64 {
        self.built.values().sum()
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.verified == self.built_total()
    }

    fn merge(mut self, other: Self) -> Self {
        self.frames += other.frames;
        self.models += other.models;
        for (k, v) in other.built {
            *self.built.entry(k).or_default() += v;
        }
        self.verified += other.verified;
        self.failures += other.failures;
        let room = EXAMPLE_CAP.saturating_sub(self.failure_examples.len());
        self.failure_examples
            .extend(other.failure_examples.into_iter().take(room));
        self
    }

    fn fail(&mut self, message: String) {
        self.failures += 1;
        if self.failure_examples.len() < EXAMPLE_CAP {
            self.failure_examples.push(message);
        }
    }
}

/// Re-evaluates a countermodel compositionally, independent of the forcing
/// recursion the builder used.
pub fn countermodel_holds_up(cm: &Countermodel) -> bool {
    let ext = |f: &Formula| cm.model.extension(f);
    let fails = match &cm.failing_instance {
        Instance::Axiom(f) => ext(f).map(|s| !s.contains(cm.failing_node)),
        Instance::Rule {
            premises,
            conclusion,
        } => premises
            .iter()
            .try_fold(cm.model.frame().nodes(), |acc, p| {
                ext(p).map(|s| acc.intersection(s))
            })
            .and_then(|prem| {
                ext(conclusion)
                    .map(|c| prem.contains(cm.failing_node) && !c.contains(cm.failing_node))
            }),
    };
    let persistent_ok =
        cm.theorem != Theorem::A6 || cm.model.is_atom_persistent(cm.model.frame().nodes());
    matches!(fails, Ok(true)) && persistent_ok && matches!(cm.refutes(), Ok(true))
}

const FRAME_WITNESSES: [Theorem; 5] = [
    Theorem::Mp,
    Theorem::A1,
    Theorem::A4Reflexivity,
    Theorem::A5a,
    Theorem::A5bTransitivity,
];

/// Builds and re-checks a countermodel for every defective frame on up to
/// `max_nodes` nodes and for every persistency break in every model with
/// `atoms` atoms on up to `model_nodes` nodes.
pub fn witness_sweep(
    max_nodes: usize,
    model_nodes: usize,
    atoms: usize,
    threads: usize,
) -> Result<WitnessSweepReport, LabError> {
    let top = max_nodes.max(model_nodes);
    if top == 0 || top > EXHAUSTIVE_NODE_BUDGET {
        return Err(LabError::Budget { nodes: top, atoms });
    }
    if atoms > EXHAUSTIVE_ATOM_BUDGET {
        return Err(LabError::Budget { nodes: top, atoms });
    }
    let names = fresh_atom_names(atoms);
    let per_frame = |n: usize, mask: u64| {
        let f = Frame::from_mask(n, mask);
        let mut r = WitnessSweepReport::default();
        let attempt =
            |r: &mut WitnessSweepReport, t: Theorem, result: Result<Option<Countermodel>, _>| {
                match result {
                    Ok(None) => {}
                    Ok(Some(cm)) => {
                        *r.built.entry(t.name().to_string()).or_default() += 1;
                        if countermodel_holds_up(&cm) {
                            r.verified += 1;
                        } else {
                            r.fail(format!("{t}: countermodel does not refute on {f:?}"));
                        }
                    }
                    Err(e) => r.fail(format!("{t}: {e} on {f:?}")),
                }
            };
        if n <= max_nodes {
            r.frames += 1;
            for t in FRAME_WITNESSES {
                attempt(&mut r, t, witness(t, &f));
            }
            if f.is_reflexive() && f.is_transitive() {
                attempt(&mut r, Theorem::A6, witness(Theorem::A6, &f));
            }
        }
        if n <= model_nodes {
            for code in valuation_codes(Valuations::All, atoms, n) {
                let sets = decode_valuation(code, atoms, n);
                let valuation = names.iter().cloned().zip(sets).collect();
                let m = Model::new(f.clone(), valuation).expect("decoded sets fit the frame");
                r.models += 1;
                for t in [Theorem::A4Persistency, Theorem::A5bPersistency] {
                    attempt(&mut r, t, witness(t, &m));
                }
            }
        }
        r
    };
    let report = run_in_pool(threads, || {
        (1..=top)
            .map(|n| {
                (0..1u64 << (n * n))
                    .into_par_iter()
                    .map(|mask| per_frame(n, mask))
                    .reduce(WitnessSweepReport::default, WitnessSweepReport::merge)
            })
            .fold(WitnessSweepReport::default(), WitnessSweepReport::merge)
    })?;
    Ok(WitnessSweepReport {
        max_nodes,
        atoms,
        ..report
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_names_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.name().parse::<TheoremId>().unwrap(), t);
        }
        assert!(matches!(
            "thm-a9".parse::<TheoremId>(),
            Err(LabError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn frame_counts() {
        for n in 1..=3 {
            assert_eq!(enumerate_frames(n, false).unwrap().count(), 1 << (n * n));
        }
        assert!(matches!(
            enumerate_frames(5, false),
            Err(LabError::Budget { .. })
        ));
        assert!(enumerate_frames(0, false).is_err());
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            verify_theorem(TheoremId::ThmMp, &SweepConfig::exhaustive(5)),
            Err(LabError::Budget { .. })
        ));
        assert!(matches!(
            verify_theorem(TheoremId::ThmA4, &SweepConfig::exhaustive(2).with_atoms(4)),
            Err(LabError::Budget { .. })
        ));
        let mut cfg = SweepConfig::sampled(3, 10, 1);
        cfg.seed = None;
        assert!(matches!(
            verify_theorem(TheoremId::ThmMp, &cfg),
            Err(LabError::MissingSeed)
        ));
    }

    #[test]
    fn mp_sweep_counts() {
        let r = verify_theorem(TheoremId::ThmMp, &SweepConfig::exhaustive(2)).unwrap();
        assert_eq!(r.counts.frames_by_size, vec![2, 16]);
        assert_eq!(r.counts.frames, 18);
        // reflexive frames: 2^(n^2 - n)
        assert_eq!(r.counts.condition_true, 1 + 4);
        assert_eq!(r.counts.axiom_valid, r.counts.condition_true);
        assert!(r.passed());
        assert!(r
            .to_string()
            .starts_with("thm-mp: 16+2 frames, 0 mismatches"));
    }

    #[test]
    fn thread_count_does_not_change_reports() {
        let cfg = SweepConfig::sampled(3, 200, 7);
        let a = verify_theorem_with(TheoremId::ThmA4, &cfg, 1).unwrap();
        let b = verify_theorem_with(TheoremId::ThmA4, &cfg, 3).unwrap();
        assert_eq!(a.deterministic_json(), b.deterministic_json());
    }

    #[test]
    fn samples_depend_only_on_the_seed() {
        let cfg = SweepConfig::sampled(4, 50, 99);
        assert_eq!(draw_samples(&cfg), draw_samples(&cfg));
        assert_ne!(
            draw_samples(&cfg),
            draw_samples(&SweepConfig::sampled(4, 50, 100))
        );
    }

    #[test]
    fn valuation_decoding() {
        let sets = decode_valuation(0b110_001, 2, 3);
        assert_eq!(
            sets,
            vec![NodeSet::from_bits(0b001), NodeSet::from_bits(0b110)]
        );
        assert_eq!(valuation_codes(Valuations::All, 2, 3).count(), 64);
    }

    #[test]
    fn small_witness_sweep() {
        let r = witness_sweep(2, 2, 1, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.built_total() > 0);
    }
}
