//! The JSON model format:
//!
//! ```json
//! {"nodes":["k0","k1"],"edges":[["k0","k1"]],"valuation":{"p":["k1"]}}
//! ```
//!
//! Node names map to indices in the order they are listed.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{is_atom_name, Instance};
use crate::kripke::{Frame, KripkeError, NodeSet};
use crate::semantics::Model;
use crate::witness::Countermodel;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),
    #[error("empty node name")]
    EmptyName,
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error(transparent)]
    Frame(#[from] KripkeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub nodes: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

/// Index ↔ name mapping for the nodes of a loaded model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeNames {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl NodeNames {
    pub fn new(names: Vec<String>) -> Result<Self, DocumentError> {
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(DocumentError::EmptyName);
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(DocumentError::DuplicateNode(name.clone()));
            }
        }
        Ok(NodeNames { names, index })
    }

    /// `k0, k1, ..`.
    pub fn numbered(n: usize) -> Self {
        NodeNames::new((0..n).map(|i| format!("k{i}")).collect()).expect("distinct names")
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn index(&self, name: &str) -> Result<usize, DocumentError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| DocumentError::UnknownNode(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn format_set(&self, s: NodeSet) -> String {
        let members: Vec<&str> = s.iter().map(|k| self.name(k)).collect();
        format!("{{{}}}", members.join(", "))
    }
}

impl ModelDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_model(&self) -> Result<(Model, NodeNames), DocumentError> {
        let names = NodeNames::new(self.nodes.clone())?;
        let mut frame = Frame::new(names.len())?;
        for (a, b) in &self.edges {
            frame.add_edge(names.index(a)?, names.index(b)?)?;
        }
        let mut valuation = BTreeMap::new();
        for (atom, members) in &self.valuation {
            if !is_atom_name(atom) {
                return Err(DocumentError::InvalidAtom(atom.clone()));
            }
            let set = members
                .iter()
                .map(|m| names.index(m))
                .collect::<Result<NodeSet, _>>()?;
            valuation.insert(atom.clone(), set);
        }
        let model = Model::new(frame, valuation).expect("indices come from the name table");
        Ok((model, names))
    }

    pub fn from_model(model: &Model, names: &NodeNames) -> Self {
        let name = |k: usize| names.name(k).to_string();
        ModelDocument {
            nodes: names.names().to_vec(),
            edges: model
                .frame()
                .edges()
                .map(|(a, b)| (name(a), name(b)))
                .collect(),
            valuation: model
                .valuation()
                .iter()
                .map(|(atom, set)| (atom.clone(), set.iter().map(name).collect()))
                .collect(),
        }
    }

    pub fn from_frame(frame: &Frame) -> Self {
        let model = Model::empty(frame.clone());
        ModelDocument::from_model(&model, &NodeNames::numbered(frame.size()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingBlock {
    pub theorem: String,
    pub scheme: String,
    pub node: String,
    pub instance: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<String>,
}

/// A model document with a `"failing"` block naming the refuted instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountermodelDocument {
    #[serde(flatten)]
    pub model: ModelDocument,
    pub failing: FailingBlock,
}

impl CountermodelDocument {
    pub fn new(cm: &Countermodel, names: &NodeNames) -> Self {
        let (instance, premises) = match &cm.failing_instance {
            Instance::Axiom(f) => (f.render(), Vec::new()),
            Instance::Rule {
                premises,
                conclusion,
            } => (
                conclusion.render(),
                premises.iter().map(|p| p.render()).collect(),
            ),
        };
        CountermodelDocument {
            model: ModelDocument::from_model(&cm.model, names),
            failing: FailingBlock {
                theorem: cm.theorem.name().to_string(),
                scheme: cm.theorem.scheme_name().to_string(),
                node: names.name(cm.failing_node).to_string(),
                instance,
                premises,
            },
        }
    }
}
