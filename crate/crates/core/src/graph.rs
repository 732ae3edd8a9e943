//! Immutable weighted graphs, vertex sets and the cut/volume primitives.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Undirected graph with strictly positive edge weights and no self-loops.
///
/// Edges are stored once, with `u < v`, sorted by `(u, v)`. Parallel edges
/// given at construction are merged by summing their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<(usize, f64)>,
    degrees: Vec<f64>,
    total_volume: f64,
}

impl Graph {
    pub fn new(n: usize, edge_list: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for &(u, v, w) in edge_list {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::BadWeight { u, v, weight: w });
            }
            *merged.entry((u.min(v), u.max(v))).or_insert(0.0) += w;
        }
        let edges: Vec<Edge> = merged
            .into_iter()
            .map(|((u, v), w)| Edge { u, v, w })
            .collect();

        let mut counts = vec![0usize; n + 1];
        for e in &edges {
            counts[e.u + 1] += 1;
            counts[e.v + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts;
        let mut fill = offsets.clone();
        let mut adjacency = vec![(0usize, 0.0f64); 2 * edges.len()];
        let mut degrees = vec![0.0f64; n];
        for e in &edges {
            adjacency[fill[e.u]] = (e.v, e.w);
            fill[e.u] += 1;
            adjacency[fill[e.v]] = (e.u, e.w);
            fill[e.v] += 1;
            degrees[e.u] += e.w;
            degrees[e.v] += e.w;
        }
        let total_volume = degrees.iter().sum();
        Ok(Graph {
            n,
            edges,
            offsets,
            adjacency,
            degrees,
            total_volume,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> f64 {
        self.degrees[v]
    }

    /// Vol(G), the sum of all degrees.
    pub fn total_volume(&self) -> f64 {
        self.total_volume
    }

    /// Neighbours of `v` with the connecting edge weight.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0).len() == self.n
    }

    /// Vertices reachable from `start`, in ascending id order.
    pub fn component_of(&self, start: usize) -> VertexSet {
        let mut seen = VertexSet::empty(self.n);
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for &(u, _) in self.neighbors(v) {
                if !seen.contains(u) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen
    }

    pub fn volume(&self, set: &VertexSet) -> f64 {
        set.members().map(|v| self.degrees[v]).sum()
    }

    /// |∂S|, the total weight of edges with exactly one endpoint in `set`.
    pub fn cut_weight(&self, set: &VertexSet) -> f64 {
        self.edges
            .iter()
            .filter(|e| set.contains(e.u) != set.contains(e.v))
            .map(|e| e.w)
            .sum()
    }

    /// φ(S) = |∂S| / min{Vol(S), Vol(S̄)}.
    ///
    /// Both volumes are summed directly, so `conductance(S)` and
    /// `conductance(S̄)` are bitwise equal.
    pub fn conductance(&self, set: &VertexSet) -> Result<f64> {
        self.check_set(set)?;
        let k = set.len();
        if k == 0 || k == self.n {
            return Err(Error::TrivialSet);
        }
        let inside = self.volume(set);
        let outside = self.volume(&set.complement());
        let denom = inside.min(outside);
        if denom <= 0.0 {
            return Err(Error::ZeroVolume);
        }
        Ok(self.cut_weight(set) / denom)
    }

    /// xᵀLx = Σ_{uv ∈ E} w(u,v) (x_u − x_v)².
    pub fn laplacian_quadratic(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        Ok(self
            .edges
            .iter()
            .map(|e| {
                let diff = x[e.u] - x[e.v];
                e.w * diff * diff
            })
            .sum())
    }

    /// xᵀDx.
    pub fn degree_norm_sq(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        Ok(x.iter().zip(&self.degrees).map(|(xi, d)| d * xi * xi).sum())
    }

    /// xᵀd.
    pub fn degree_dot(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        Ok(x.iter().zip(&self.degrees).map(|(xi, d)| d * xi).sum())
    }

    /// y = Lx.
    pub fn laplacian_apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let mut out = vec![0.0; self.n];
        for e in &self.edges {
            let diff = e.w * (x[e.u] - x[e.v]);
            out[e.u] += diff;
            out[e.v] -= diff;
        }
        Ok(out)
    }

    pub(crate) fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: set.universe(),
            });
        }
        Ok(())
    }
}

/// A subset of `0..n` stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        Self::empty(n).complement()
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let mut set = Self::empty(n);
        for v in members {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.insert(v);
        }
        Ok(set)
    }

    /// Builds a set from the low `n` bits of `mask` (`n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        let mut set = Self::empty(n);
        if n > 0 {
            let keep = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            set.words[0] = mask & keep;
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && (self.words[v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range");
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = self.n % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        VertexSet { n: self.n, words }
    }

    /// Members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    /// The 0/1 vertex function 1_S.
    pub fn indicator(&self) -> Vec<f64> {
        (0..self.n)
            .map(|v| if self.contains(v) { 1.0 } else { 0.0 })
            .collect()
    }

    /// Witness order: smaller cardinality first, then lexicographic order of
    /// the sorted member lists.
    pub fn witness_cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // With equal cardinality the list holding the lowest differing
        // vertex is lexicographically smaller.
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return if a & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}
