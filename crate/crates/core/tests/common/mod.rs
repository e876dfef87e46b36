#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use kfl::{Formula, Frame, Model, NodeSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn load_fixture(name: &str) -> (Model, kfl::NodeNames) {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    kfl::ModelDocument::from_json(&text)
        .unwrap()
        .to_model()
        .unwrap()
}

/// Adjacency matrix of a frame, read through `related` only.
pub fn matrix(f: &Frame) -> Vec<Vec<bool>> {
    let n = f.size();
    (0..n)
        .map(|a| (0..n).map(|b| f.related(a, b)).collect())
        .collect()
}

/// Transitive closure by Warshall's algorithm.
pub fn warshall(mut m: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let n = m.len();
    for via in 0..n {
        for a in 0..n {
            if m[a][via] {
                for b in 0..n {
                    if m[via][b] {
                        m[a][b] = true;
                    }
                }
            }
        }
    }
    m
}

pub fn row_set(row: &[bool]) -> NodeSet {
    row.iter()
        .enumerate()
        .filter(|(_, &x)| x)
        .map(|(i, _)| i)
        .collect()
}

/// Truth sets of every formula of depth at most `depth` over `atoms`, found by
/// building formulas and evaluating them with `forces`. One representative is
/// kept per truth set.
pub fn brute_force_extensions(m: &Model, atoms: &[&str], depth: usize) -> BTreeSet<NodeSet> {
    let n = m.frame().size();
    let ext = |f: &Formula| -> NodeSet { (0..n).filter(|&k| m.forces(k, f).unwrap()).collect() };
    let mut reps: BTreeMap<NodeSet, Formula> = BTreeMap::new();
    for leaf in std::iter::once(Formula::Bot).chain(atoms.iter().map(|a| Formula::atom(*a))) {
        reps.entry(ext(&leaf)).or_insert(leaf);
    }
    for _ in 0..depth {
        let current: Vec<Formula> = reps.values().cloned().collect();
        for a in &current {
            for b in &current {
                for f in [
                    Formula::and(a.clone(), b.clone()),
                    Formula::or(a.clone(), b.clone()),
                    Formula::implies(a.clone(), b.clone()),
                ] {
                    let e = ext(&f);
                    reps.entry(e).or_insert(f);
                }
            }
        }
    }
    reps.into_keys().collect()
}

/// A seeded random model on 1..=max_nodes nodes with the given atoms.
pub fn random_model(rng: &mut ChaCha8Rng, max_nodes: usize, atoms: &[&str]) -> Model {
    let n = rng.gen_range(1..=max_nodes);
    let frame = Frame::from_mask(n, rng.gen::<u64>() & ((1u64 << (n * n)) - 1));
    let full = NodeSet::full(n).bits();
    let valuation = atoms
        .iter()
        .map(|a| (a.to_string(), NodeSet::from_bits(rng.gen::<u64>() & full)))
        .collect();
    Model::new(frame, valuation).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
