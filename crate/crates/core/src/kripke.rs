//! Finite Kripke frames: a node count and an accessibility relation stored as
//! one bitset row per node.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest frame a [`NodeSet`] can describe.
pub const MAX_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("node {node} is out of range for a frame with {size} nodes")]
    NodeOutOfRange { node: usize, size: usize },
    #[error("a frame needs at least one node")]
    Empty,
    #[error("frames are limited to {MAX_NODES} nodes, got {0}")]
    TooLarge(usize),
    #[error("step count must be at least 1")]
    ZeroSteps,
}

/// A subset of the nodes `0..n` of some frame, one bit per node.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_NODES);
        if n >= 64 {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(k: usize) -> Self {
        NodeSet(1u64 << k)
    }

    pub fn contains(self, k: usize) -> bool {
        k < 64 && self.0 >> k & 1 == 1
    }

    pub fn insert(&mut self, k: usize) {
        self.0 |= 1u64 << k;
    }

    pub fn remove(&mut self, k: usize) {
        self.0 &= !(1u64 << k);
    }

    pub fn with(mut self, k: usize) -> Self {
        self.insert(k);
        self
    }

    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> Self {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k)
            }
        })
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = NodeSet::EMPTY;
        for k in iter {
            s.insert(k);
        }
        s
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite directed graph `<K, R>` on nodes `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    rows: Vec<NodeSet>,
}

impl Frame {
    /// The edgeless frame on `n` nodes.
    pub fn new(n: usize) -> Result<Self, KripkeError> {
        if n == 0 {
            return Err(KripkeError::Empty);
        }
        if n > MAX_NODES {
            return Err(KripkeError::TooLarge(n));
        }
        Ok(Frame {
            rows: vec![NodeSet::EMPTY; n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, KripkeError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut frame = Frame::new(n)?;
        for (a, b) in edges {
            frame.add_edge(a, b)?;
        }
        Ok(frame)
    }

    /// Decodes a row-major relation mask: bit `i * n + j` set means `i R j`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n >= 1 && n * n <= 64, "mask encoding needs 1 <= n <= 8");
        let row_mask = (1u64 << n) - 1;
        let rows = (0..n)
            .map(|i| NodeSet::from_bits(mask >> (i * n) & row_mask))
            .collect();
        Frame { rows }
    }

    /// Inverse of [`Frame::from_mask`].
    pub fn mask(&self) -> u64 {
        let n = self.size();
        assert!(n * n <= 64, "mask encoding needs n <= 8");
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, row)| acc | row.bits() << (i * n))
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), KripkeError> {
        self.check(a)?;
        self.check(b)?;
        self.rows[a].insert(b);
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn nodes(&self) -> NodeSet {
        NodeSet::full(self.size())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
    }

    pub fn check(&self, k: usize) -> Result<(), KripkeError> {
        if k < self.size() {
            Ok(())
        } else {
            Err(KripkeError::NodeOutOfRange {
                node: k,
                size: self.size(),
            })
        }
    }

    pub fn check_set(&self, s: NodeSet) -> Result<(), KripkeError> {
        match s.difference(self.nodes()).first() {
            None => Ok(()),
            Some(node) => Err(KripkeError::NodeOutOfRange {
                node,
                size: self.size(),
            }),
        }
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    /// `R[k]` without a range check. Panics if `k` is out of range.
    pub fn row(&self, k: usize) -> NodeSet {
        self.rows[k]
    }

    /// `R[k] = {x : k R x}`.
    pub fn image(&self, k: usize) -> Result<NodeSet, KripkeError> {
        self.check(k)?;
        Ok(self.rows[k])
    }

    /// `R[s]`, the union of the rows of every member of `s`.
    pub fn image_of_set(&self, s: NodeSet) -> NodeSet {
        s.iter()
            .fold(NodeSet::EMPTY, |acc, k| acc.union(self.rows[k]))
    }

    /// Endpoints of the length-`steps` paths from `k`.
    pub fn n_step_image(&self, k: usize, steps: usize) -> Result<NodeSet, KripkeError> {
        self.check(k)?;
        if steps == 0 {
            return Err(KripkeError::ZeroSteps);
        }
        let mut frontier = self.rows[k];
        for _ in 1..steps {
            frontier = self.image_of_set(frontier);
        }
        Ok(frontier)
    }

    /// `R+[k]`: nodes reachable in one or more steps.
    pub fn reach_plus(&self, k: usize) -> Result<NodeSet, KripkeError> {
        self.check(k)?;
        Ok(self.plus(k))
    }

    /// `R++[k]`: nodes reachable in two or more steps.
    pub fn reach_plusplus(&self, k: usize) -> Result<NodeSet, KripkeError> {
        self.check(k)?;
        Ok(self.plusplus(k))
    }

    pub(crate) fn plus(&self, k: usize) -> NodeSet {
        let mut seen = self.rows[k];
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.image_of_set(frontier).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    pub(crate) fn plusplus(&self, k: usize) -> NodeSet {
        self.rows[k]
            .iter()
            .fold(NodeSet::EMPTY, |acc, j| acc.union(self.plus(j)))
    }

    /// `R^2[k]`, used by the A5a correspondence.
    pub(crate) fn two_step(&self, k: usize) -> NodeSet {
        self.image_of_set(self.rows[k])
    }

    /// `{x : R[x] ∩ a ⊆ b}`, the truth set of an implication.
    pub fn arrow(&self, a: NodeSet, b: NodeSet) -> NodeSet {
        let bad = a.difference(b);
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, row)| row.intersection(bad).is_empty())
            .map(|(k, _)| k)
            .collect()
    }

    /// `true` when every member of `s` sends all its successors back into `s`.
    pub fn is_successor_closed(&self, s: NodeSet) -> bool {
        s.iter().all(|k| self.rows[k].is_subset(s))
    }

    pub fn restrict(&self, carrier: NodeSet) -> Restriction<'_> {
        Restriction {
            frame: self,
            carrier,
        }
    }

    pub fn is_reflexive(&self) -> bool {
        self.restrict(self.nodes()).is_reflexive()
    }

    pub fn is_transitive(&self) -> bool {
        self.restrict(self.nodes()).is_transitive()
    }

    pub fn is_reflexive_on(&self, c: NodeSet) -> bool {
        self.restrict(c).is_reflexive()
    }

    pub fn is_transitive_on(&self, c: NodeSet) -> bool {
        self.restrict(c).is_transitive()
    }

    /// For every `k` and every `k', k''` in `R+[k]` (not necessarily
    /// distinct) either `k' R k''` or `k'' R k'`.
    pub fn is_connected(&self) -> bool {
        (0..self.size()).all(|k| {
            let reach = self.plus(k);
            reach.iter().all(|a| {
                // every b in reach must be a successor or a predecessor of a
                reach
                    .iter()
                    .all(|b| self.related(a, b) || self.related(b, a))
            })
        })
    }

    /// Shortest walk `k0 R l1 R .. R ln R target` with `n + 1 >= min_len`
    /// edges, returned as the interior nodes `l1..ln`. Ties go to the
    /// smallest node index.
    pub fn walk(&self, from: usize, target: usize, min_len: usize) -> Option<Vec<usize>> {
        let n = self.size();
        let min_len = min_len.max(1);
        // state = (node, steps taken capped at min_len)
        let idx = |node: usize, steps: usize| node * (min_len + 1) + steps;
        let mut parent: Vec<Option<usize>> = vec![None; n * (min_len + 1)];
        let mut visited = vec![false; n * (min_len + 1)];
        let mut queue = VecDeque::new();
        visited[idx(from, 0)] = true;
        queue.push_back((from, 0));
        while let Some((node, steps)) = queue.pop_front() {
            for next in self.rows[node].iter() {
                let s = (steps + 1).min(min_len);
                let id = idx(next, s);
                if visited[id] {
                    continue;
                }
                visited[id] = true;
                parent[id] = Some(idx(node, steps));
                if next == target && s == min_len {
                    let mut path = Vec::new();
                    let mut cur = parent[id];
                    while let Some(c) = cur {
                        if c == idx(from, 0) {
                            break;
                        }
                        path.push(c / (min_len + 1));
                        cur = parent[c];
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back((next, s));
            }
        }
        None
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame")
            .field("n", &self.size())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// `R|_C = R ∩ (C × K)`: the carrier restricts sources only.
#[derive(Debug, Clone, Copy)]
pub struct Restriction<'a> {
    frame: &'a Frame,
    carrier: NodeSet,
}

impl Restriction<'_> {
    pub fn carrier(&self) -> NodeSet {
        self.carrier
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.carrier.contains(a) && self.frame.related(a, b)
    }

    pub fn is_reflexive(&self) -> bool {
        self.carrier.iter().all(|k| self.frame.related(k, k))
    }

    /// `k R k'` and `k' R k''` imply `k R k''` for `k, k'` in the carrier.
    pub fn is_transitive(&self) -> bool {
        self.carrier.iter().all(|k| {
            let row = self.frame.row(k);
            let via = self.frame.image_of_set(row.intersection(self.carrier));
            via.is_subset(row)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(n: usize, edges: &[(usize, usize)]) -> Frame {
        Frame::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn set(items: &[usize]) -> NodeSet {
        items.iter().copied().collect()
    }

    #[test]
    fn images() {
        let chain = frame(3, &[(0, 1), (1, 2)]);
        assert_eq!(chain.image(0).unwrap(), set(&[1]));
        assert_eq!(frame(3, &[]).image(2).unwrap(), NodeSet::EMPTY);
        assert_eq!(frame(1, &[(0, 0)]).image(0).unwrap(), set(&[0]));
        assert_eq!(
            chain.image(3),
            Err(KripkeError::NodeOutOfRange { node: 3, size: 3 })
        );
    }

    #[test]
    fn n_step_images() {
        let chain = frame(3, &[(0, 1), (1, 2)]);
        assert_eq!(chain.n_step_image(0, 2).unwrap(), set(&[2]));
        assert_eq!(chain.n_step_image(0, 3).unwrap(), NodeSet::EMPTY);
        let lp = frame(1, &[(0, 0)]);
        for n in 1..6 {
            assert_eq!(lp.n_step_image(0, n).unwrap(), set(&[0]));
        }
        let cycle = frame(2, &[(0, 1), (1, 0)]);
        assert_eq!(cycle.n_step_image(0, 2).unwrap(), set(&[0]));
        assert_eq!(cycle.n_step_image(0, 0), Err(KripkeError::ZeroSteps));
    }

    #[test]
    fn reach_sets() {
        let chain = frame(3, &[(0, 1), (1, 2)]);
        assert_eq!(chain.reach_plus(0).unwrap(), set(&[1, 2]));
        assert_eq!(chain.reach_plusplus(0).unwrap(), set(&[2]));
        let lp = frame(1, &[(0, 0)]);
        assert_eq!(lp.reach_plus(0).unwrap(), set(&[0]));
        assert_eq!(lp.reach_plusplus(0).unwrap(), set(&[0]));
        let cycle = frame(2, &[(0, 1), (1, 0)]);
        assert_eq!(cycle.reach_plus(0).unwrap(), set(&[0, 1]));
    }

    #[test]
    fn restricted_properties() {
        let chain = frame(3, &[(0, 1), (1, 2)]);
        assert!(chain.is_transitive_on(set(&[1, 2])));
        assert!(chain.is_transitive_on(chain.reach_plus(0).unwrap()));
        assert!(!chain.is_transitive_on(set(&[0, 1, 2])));
        assert!(!chain.is_transitive());

        let loops = frame(3, &[(0, 0), (1, 1), (2, 2)]);
        for bits in 0..8 {
            let c = NodeSet::from_bits(bits);
            assert!(loops.is_reflexive_on(c));
            assert!(loops.is_transitive_on(c));
        }
        // the conclusion k R k'' is read in the full relation
        let r = chain.restrict(set(&[0]));
        assert!(r.contains(0, 1));
        assert!(!r.contains(1, 2));
    }

    #[test]
    fn connectedness() {
        assert!(frame(2, &[(0, 1), (0, 0), (1, 1)]).is_connected());
        assert!(!frame(3, &[(0, 1), (0, 2), (1, 1), (2, 2)]).is_connected());
        assert!(frame(4, &[]).is_connected());
        // R+[0] = {1} and 1 has no loop
        assert!(!frame(2, &[(0, 1)]).is_connected());
    }

    #[test]
    fn mask_round_trip() {
        for mask in 0..512u64 {
            let f = Frame::from_mask(3, mask);
            assert_eq!(f.mask(), mask);
        }
        let f = Frame::from_mask(2, 0b0010);
        assert!(f.related(0, 1));
        assert_eq!(f.edges().count(), 1);
    }

    #[test]
    fn walks() {
        let f = frame(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]);
        assert_eq!(f.walk(0, 2, 1), Some(vec![]));
        assert_eq!(f.walk(0, 2, 2), Some(vec![1]));
        assert_eq!(f.walk(0, 3, 1), Some(vec![2]));
        assert_eq!(f.walk(3, 0, 1), None);
        let lp = frame(1, &[(0, 0)]);
        assert_eq!(lp.walk(0, 0, 1), Some(vec![]));
        assert_eq!(lp.walk(0, 0, 2), Some(vec![0]));
    }

    #[test]
    fn arrow_matches_definition() {
        let f = frame(3, &[(0, 1), (1, 2), (2, 2)]);
        for a in 0..8 {
            for b in 0..8 {
                let (a, b) = (NodeSet::from_bits(a), NodeSet::from_bits(b));
                let expected: NodeSet = (0..3)
                    .filter(|&k| f.row(k).iter().all(|x| !a.contains(x) || b.contains(x)))
                    .collect();
                assert_eq!(f.arrow(a, b), expected);
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Frame::new(0), Err(KripkeError::Empty));
        assert_eq!(Frame::new(65), Err(KripkeError::TooLarge(65)));
        assert!(Frame::from_edges(2, [(0, 2)]).is_err());
        assert!(Frame::new(64).is_ok());
        assert_eq!(NodeSet::full(64).len(), 64);
    }
}
