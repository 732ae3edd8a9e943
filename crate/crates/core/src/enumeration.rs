//! Exact conductance and μ-conductance by exhaustive subset enumeration.
//!
//! Subsets are visited in Gray-code order over the first `n - 1` vertices, so
//! each unordered pair `{S, S̄}` is seen once (the last vertex always sits in
//! `S̄`) and moving to the next subset flips a single vertex. The cut weight
//! and the volume are maintained incrementally; every subset that could beat
//! the current best is then re-evaluated from scratch, which makes the result
//! bitwise identical to naive per-subset recomputation.
//!
//! The index range is split into fixed-size chunks that each rebuild their
//! incremental state from scratch. Chunks are independent, and their results
//! merge under a total order, so any chunk schedule gives the same answer.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_CAP: usize = 24;
pub const HARD_CAP: usize = 30;

/// Relative slack applied to both ends of the volume window.
pub const WINDOW_SLACK: f64 = 1e-9;

const CHUNK_BITS: u32 = 12;
// Upper bound on the drift of incrementally maintained sums within one chunk,
// relative to Vol(G).
const DRIFT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Largest vertex count accepted. Values above [`HARD_CAP`] are clamped.
    pub cap: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { cap: DEFAULT_CAP }
    }
}

/// A vertex set together with its conductance.
#[derive(Debug, Clone, PartialEq)]
pub struct Cut {
    pub value: f64,
    pub witness: VertexSet,
}

impl Cut {
    /// Total order used to pick witnesses: value, then cardinality, then
    /// lexicographic member order.
    pub fn cmp_rank(&self, other: &Cut) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| self.witness.witness_cmp(&other.witness))
    }
}

/// Keeps the better of two optional cuts under [`Cut::cmp_rank`].
pub fn better(a: Option<Cut>, b: Option<Cut>) -> Option<Cut> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.cmp_rank(&a) == Ordering::Less {
            b
        } else {
            a
        }),
        (a, None) => a,
        (None, b) => b,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MuConductanceResult {
    pub mu: f64,
    /// `None` when no set satisfies the volume window.
    pub best: Option<Cut>,
}

impl MuConductanceResult {
    pub fn feasible(&self) -> bool {
        self.best.is_some()
    }

    pub fn value(&self) -> Option<f64> {
        self.best.as_ref().map(|c| c.value)
    }

    pub fn witness(&self) -> Option<&VertexSet> {
        self.best.as_ref().map(|c| &c.witness)
    }
}

pub fn check_mu(mu: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&mu) {
        return Err(Error::InvalidMu(mu));
    }
    Ok(())
}

/// Volume window `[μVol(G), (1−μ)Vol(G)]` widened by [`WINDOW_SLACK`]`·Vol(G)`.
pub fn volume_window(g: &Graph, mu: f64) -> (f64, f64) {
    let vol = g.total_volume();
    let slack = WINDOW_SLACK * vol;
    (mu * vol - slack, (1.0 - mu) * vol + slack)
}

pub fn in_window(window: (f64, f64), volume: f64) -> bool {
    window.0 <= volume && volume <= window.1
}

/// Exact conductance of a set for which it is defined and which lies in the
/// window, or `None`.
pub fn evaluate(g: &Graph, window: (f64, f64), set: &VertexSet) -> Option<Cut> {
    if !in_window(window, g.volume(set)) {
        return None;
    }
    g.conductance(set).ok().map(|value| Cut {
        value,
        witness: set.clone(),
    })
}

/// φ(G) = φ₀(G).
pub fn exact_conductance(g: &Graph) -> Result<MuConductanceResult> {
    exact_mu_conductance(g, 0.0)
}

pub fn exact_mu_conductance(g: &Graph, mu: f64) -> Result<MuConductanceResult> {
    exact_mu_conductance_with(g, mu, EnumerationOptions::default())
}

pub fn exact_mu_conductance_with(
    g: &Graph,
    mu: f64,
    options: EnumerationOptions,
) -> Result<MuConductanceResult> {
    let search = SubsetSearch::new(g, mu, options)?;
    let best = (0..search.chunks()).fold(None, |acc, c| better(acc, search.search_chunk(c)));
    Ok(search.finish(best))
}

/// A prepared enumeration, split into independently searchable chunks.
#[derive(Debug, Clone)]
pub struct SubsetSearch<'g> {
    g: &'g Graph,
    mu: f64,
    window: (f64, f64),
    bits: u32,
}

impl<'g> SubsetSearch<'g> {
    pub fn new(g: &'g Graph, mu: f64, options: EnumerationOptions) -> Result<Self> {
        check_mu(mu)?;
        let cap = options.cap.min(HARD_CAP);
        if options.cap > DEFAULT_CAP {
            log::warn!("enumeration cap raised to {cap}; expect long run times");
        }
        if g.n() > cap {
            return Err(Error::TooLarge { n: g.n(), cap });
        }
        Ok(SubsetSearch {
            g,
            mu,
            window: volume_window(g, mu),
            bits: (g.n() - 1) as u32,
        })
    }

    pub fn chunks(&self) -> usize {
        let total = 1u64 << self.bits;
        total.div_ceil(1 << CHUNK_BITS) as usize
    }

    /// Number of unordered pairs `{S, S̄}` visited, `2^(n−1) − 1`.
    pub fn subsets_examined(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    pub fn finish(&self, best: Option<Cut>) -> MuConductanceResult {
        MuConductanceResult { mu: self.mu, best }
    }

    pub fn search_chunk(&self, chunk: usize) -> Option<Cut> {
        let g = self.g;
        let n = g.n();
        let total = 1u64 << self.bits;
        let start = ((chunk as u64) << CHUNK_BITS).max(1);
        let end = ((chunk as u64 + 1) << CHUNK_BITS).min(total);
        if start >= end {
            return None;
        }
        let vol_g = g.total_volume();
        let drift = DRIFT * vol_g;
        let loose = (self.window.0 - drift, self.window.1 + drift);
        let degrees = g.degrees();

        let mut mask = start ^ (start >> 1);
        let mut vol: f64 = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| degrees[v])
            .sum();
        let mut cut: f64 = g
            .edges()
            .iter()
            .filter(|e| (mask >> e.u & 1) != (mask >> e.v & 1))
            .map(|e| e.w)
            .sum();

        let mut best: Option<Cut> = None;
        let mut best_value = f64::INFINITY;
        for i in start..end {
            if i != start {
                let v = i.trailing_zeros() as usize;
                let was_in = mask >> v & 1 == 1;
                let mut delta = 0.0;
                for &(u, w) in g.neighbors(v) {
                    let same_side = (mask >> u & 1 == 1) == was_in;
                    delta += if same_side { w } else { -w };
                }
                cut += delta;
                if was_in {
                    vol -= degrees[v];
                } else {
                    vol += degrees[v];
                }
                mask ^= 1 << v;
            }
            if !(loose.0 <= vol && vol <= loose.1) {
                continue;
            }
            let small = vol.min(vol_g - vol);
            if small + drift <= 0.0 {
                continue;
            }
            // Candidates whose cut clearly exceeds best · min-volume cannot win.
            if best_value.is_finite() && cut > best_value * small + drift * (1.0 + best_value) {
                continue;
            }
            let set = VertexSet::from_mask(n, mask);
            let complement = set.complement();
            for candidate in [set, complement] {
                if let Some(c) = evaluate(g, self.window, &candidate) {
                    if c.value <= best_value {
                        best_value = c.value;
                        best = better(best, Some(c));
                    }
                }
            }
        }
        best
    }
}

/// Whether some vertex set has its volume inside the μ window.
pub fn mu_feasible(g: &Graph, mu: f64) -> Result<bool> {
    check_mu(mu)?;
    let (lo, hi) = volume_window(g, mu);
    if lo <= 0.0 {
        return Ok(true);
    }
    let mut degrees: Vec<f64> = g.degrees().iter().copied().filter(|&d| d > 0.0).collect();
    degrees.sort_by(|a, b| b.total_cmp(a));

    // Greedy prefix: the first prefix to reach `lo` overshoots by less than
    // one degree.
    let mut acc = 0.0;
    for &d in &degrees {
        acc += d;
        if acc >= lo {
            if acc <= hi {
                return Ok(true);
            }
            break;
        }
    }

    // Exact subset-sum search over descending degrees with suffix-sum pruning.
    let mut suffix = alloc::vec![0.0; degrees.len() + 1];
    for i in (0..degrees.len()).rev() {
        suffix[i] = suffix[i + 1] + degrees[i];
    }
    fn search(degrees: &[f64], suffix: &[f64], i: usize, acc: f64, lo: f64, hi: f64) -> bool {
        if lo <= acc && acc <= hi {
            return true;
        }
        if acc > hi || i == degrees.len() || acc + suffix[i] < lo {
            return false;
        }
        search(degrees, suffix, i + 1, acc + degrees[i], lo, hi)
            || search(degrees, suffix, i + 1, acc, lo, hi)
    }
    Ok(search(&degrees, &suffix, 0, 0.0, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn set(n: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_members(n, members.iter().copied()).unwrap()
    }

    #[test]
    fn exact_conductance_examples() {
        let p4 = generate(Family::Path(4), 0).unwrap();
        let r = exact_conductance(&p4).unwrap();
        assert_eq!(r.value(), Some(1.0 / 3.0));
        assert_eq!(r.witness(), Some(&set(4, &[0, 1])));

        let k4 = generate(Family::Complete(4), 0).unwrap();
        let r = exact_conductance(&k4).unwrap();
        assert_eq!(r.value(), Some(2.0 / 3.0));
        assert_eq!(r.witness(), Some(&set(4, &[0, 1])));

        let bb = generate(Family::Barbell(3, 3), 0).unwrap();
        let r = exact_conductance(&bb).unwrap();
        assert_eq!(r.value(), Some(1.0 / 7.0));
        assert_eq!(r.witness(), Some(&set(6, &[0, 1, 2])));
    }

    #[test]
    fn exact_mu_conductance_examples() {
        let p4 = generate(Family::Path(4), 0).unwrap();
        let r = exact_mu_conductance(&p4, 0.4).unwrap();
        assert_eq!(r.value(), Some(1.0 / 3.0));
        assert_eq!(r.witness(), Some(&set(4, &[0, 1])));

        let lp = generate(Family::Lollipop(6, 2), 0).unwrap();
        let r = exact_mu_conductance(&lp, 0.2).unwrap();
        assert_eq!(r.value(), Some(5.0 / 9.0));
        assert_eq!(r.witness(), Some(&set(8, &[5, 6, 7])));
        assert_eq!(exact_conductance(&lp).unwrap().value(), Some(1.0 / 3.0));

        let bb = generate(Family::Barbell(3, 3), 0).unwrap();
        for mu in [0.0, 0.1, 0.2, 0.3, 0.4, 0.5] {
            assert_eq!(
                exact_mu_conductance(&bb, mu).unwrap().value(),
                Some(1.0 / 7.0),
                "mu {mu}"
            );
        }
    }

    #[test]
    fn mu_zero_matches_plain_conductance() {
        let g = generate(Family::Gnp(9, 0.4), 11).unwrap();
        assert_eq!(
            exact_mu_conductance(&g, 0.0).unwrap(),
            exact_conductance(&g).unwrap()
        );
    }

    #[test]
    fn disconnected_graph_has_zero_conductance() {
        let g = Graph::new(4, &[(0, 1, 1.0), (2, 3, 2.0)]).unwrap();
        let r = exact_conductance(&g).unwrap();
        assert_eq!(r.value(), Some(0.0));
        assert_eq!(r.witness(), Some(&set(4, &[0, 1])));
        // The μ window excludes both components, so φ_μ is positive.
        let r = exact_mu_conductance(&g, 0.4).unwrap();
        assert_eq!(r.value(), Some(1.0));
        assert_eq!(r.witness(), Some(&set(4, &[0, 2])));
    }

    #[test]
    fn infeasible_window_is_reported_not_raised() {
        // Star K_{1,3}: volumes are multiples of 1 with a centre of degree 3.
        let g = Graph::new(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        assert!(mu_feasible(&g, 0.5).unwrap());
        // Degrees 5, 7, 2 with Vol 14: only {1} and its complement balance.
        let skew = Graph::new(3, &[(0, 1, 5.0), (1, 2, 2.0)]).unwrap();
        assert!(mu_feasible(&skew, 0.5).unwrap());
        // Degrees 2, 2, 2: no subset has volume 3.
        let odd = Graph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        assert!(!mu_feasible(&odd, 0.5).unwrap());
        assert!(!exact_mu_conductance(&odd, 0.5).unwrap().feasible());
        assert!(exact_mu_conductance(&odd, 1.0 / 3.0).unwrap().feasible());
    }

    #[test]
    fn mu_feasible_examples() {
        let p4 = generate(Family::Path(4), 0).unwrap();
        assert!(mu_feasible(&p4, 0.4).unwrap());
        assert!(mu_feasible(&p4, 0.0).unwrap());
        let p2 = generate(Family::Path(2), 0).unwrap();
        assert!(mu_feasible(&p2, 0.5).unwrap());
        assert_eq!(mu_feasible(&p2, 0.6), Err(Error::InvalidMu(0.6)));
    }

    #[test]
    fn rejects_bad_mu_and_large_graphs() {
        let p4 = generate(Family::Path(4), 0).unwrap();
        assert_eq!(exact_mu_conductance(&p4, -0.1), Err(Error::InvalidMu(-0.1)));
        assert_eq!(exact_mu_conductance(&p4, 0.51), Err(Error::InvalidMu(0.51)));
        let big = generate(Family::Path(25), 0).unwrap();
        assert_eq!(
            exact_conductance(&big),
            Err(Error::TooLarge { n: 25, cap: 24 })
        );
        let opts = EnumerationOptions { cap: 40 };
        let huge = generate(Family::Path(31), 0).unwrap();
        assert_eq!(
            exact_mu_conductance_with(&huge, 0.0, opts),
            Err(Error::TooLarge { n: 31, cap: 30 })
        );
    }

    #[test]
    fn chunk_schedule_does_not_matter() {
        let g = generate(Family::Gnp(14, 0.35), 5).unwrap();
        let search = SubsetSearch::new(&g, 0.2, EnumerationOptions::default()).unwrap();
        assert_eq!(search.subsets_examined(), (1 << 13) - 1);
        let forward = (0..search.chunks()).fold(None, |acc, c| better(acc, search.search_chunk(c)));
        let backward = (0..search.chunks())
            .rev()
            .fold(None, |acc, c| better(search.search_chunk(c), acc));
        assert_eq!(forward, backward);
    }

    #[test]
    fn single_vertex_graph_is_infeasible() {
        let g = Graph::new(1, &[]).unwrap();
        assert!(!exact_conductance(&g).unwrap().feasible());
    }
}
