//! Sweep sets of an embedding and the indices used to analyse them.
//!
//! Vertices are ordered by non-increasing embedding value (ties by ascending
//! id) and `S_j` is the set of the first `j` vertices. Three indices locate
//! the sweep against the volume scale:
//!
//! * `h`: largest `j` with `Vol(S_j) ≤ Vol(G)/2`,
//! * `u`: largest `j` with `Vol(S_j) < μ·Vol(G)` (0 if none),
//! * `z`: largest `j` with `x(v_j) > 0` (0 if none).

use alloc::vec::Vec;

use crate::enumeration::{better, check_mu, evaluate, volume_window, Cut, MuConductanceResult};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepProfile {
    pub mu: f64,
    /// Vertices by non-increasing value, ties by ascending id.
    pub order: Vec<usize>,
    /// `prefix_volume[j-1] = Vol(S_j)` for `j = 1..=n`.
    pub prefix_volume: Vec<f64>,
    /// `prefix_cut[j-1] = |∂S_j|` for `j = 1..n`.
    pub prefix_cut: Vec<f64>,
    pub h: usize,
    pub u: usize,
    pub z: usize,
    /// `p[i-1] = g₊(v_i)²`.
    pub p: Vec<f64>,
    /// `delta[i-1] = p_i − p_{i+1}` for `i = 1..n`.
    pub delta: Vec<f64>,
    pub total_volume: f64,
}

impl SweepProfile {
    /// Vol(S_j), with `Vol(S_0) = 0`.
    pub fn volume(&self, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            self.prefix_volume[j - 1]
        }
    }

    /// The sweep set `S_j`.
    pub fn set(&self, j: usize) -> VertexSet {
        let mut s = VertexSet::empty(self.order.len());
        for &v in &self.order[..j] {
            s.insert(v);
        }
        s
    }
}

/// Vertex order by non-increasing `x`, ties by ascending id.
pub fn sweep_order(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[b].total_cmp(&x[a]).then(a.cmp(&b)));
    order
}

/// Adds `v` to the set described by `inside` and returns the new cut weight.
fn grow_cut(g: &Graph, inside: &mut [bool], cut: f64, v: usize) -> f64 {
    let mut delta = 0.0;
    for &(u, w) in g.neighbors(v) {
        delta += if inside[u] { -w } else { w };
    }
    inside[v] = true;
    cut + delta
}

pub fn sweep_profile(g: &Graph, x: &[f64], mu: f64) -> Result<SweepProfile> {
    check_mu(mu)?;
    g.check_len(x)?;
    let n = g.n();
    let order = sweep_order(x);
    let vol_g = g.total_volume();

    let mut inside = alloc::vec![false; n];
    let mut prefix_volume = Vec::with_capacity(n);
    let mut prefix_cut = Vec::with_capacity(n.saturating_sub(1));
    let (mut vol, mut cut) = (0.0, 0.0);
    for (j, &v) in order.iter().enumerate() {
        vol += g.degree(v);
        cut = grow_cut(g, &mut inside, cut, v);
        prefix_volume.push(vol);
        if j + 1 < n {
            prefix_cut.push(cut);
        }
    }

    let last_index = |pred: &dyn Fn(usize) -> bool| (1..=n).rev().find(|&j| pred(j)).unwrap_or(0);
    let h = last_index(&|j| prefix_volume[j - 1] <= vol_g / 2.0);
    let u = last_index(&|j| prefix_volume[j - 1] < mu * vol_g);
    let z = last_index(&|j| x[order[j - 1]] > 0.0);

    let p: Vec<f64> = order
        .iter()
        .map(|&v| {
            let pos = if x[v] > 0.0 { x[v] } else { 0.0 };
            pos * pos
        })
        .collect();
    let delta = p.windows(2).map(|w| w[0] - w[1]).collect();

    Ok(SweepProfile {
        mu,
        order,
        prefix_volume,
        prefix_cut,
        h,
        u,
        z,
        p,
        delta,
        total_volume: vol_g,
    })
}

/// Outcome of the index relations `u ≤ h`, `Vol(S_z)` inside the μ window,
/// and `u < z`. The last two are only asserted for feasible embeddings with
/// μ > 0 and are `None` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexRelations {
    pub u_le_h: bool,
    pub z_in_window: Option<bool>,
    pub u_lt_z: Option<bool>,
    pub volume_z: f64,
}

impl IndexRelations {
    pub fn holds(&self) -> bool {
        self.u_le_h && self.z_in_window.unwrap_or(true) && self.u_lt_z.unwrap_or(true)
    }
}

pub fn verify_index_relations(profile: &SweepProfile, feasible: bool) -> IndexRelations {
    let volume_z = profile.volume(profile.z);
    let u_le_h = profile.u <= profile.h;
    if !feasible || profile.mu == 0.0 {
        return IndexRelations {
            u_le_h,
            z_in_window: None,
            u_lt_z: None,
            volume_z,
        };
    }
    let vol = profile.total_volume;
    let slack = crate::enumeration::WINDOW_SLACK * vol;
    let window = (profile.mu * vol - slack, (1.0 - profile.mu) * vol + slack);
    IndexRelations {
        u_le_h,
        z_in_window: Some(window.0 <= volume_z && volume_z <= window.1),
        u_lt_z: Some(profile.u < profile.z),
        volume_z,
    }
}

/// Proper prefixes of the `x` and `−x` sweeps whose volume lies in the μ window.
pub fn window_prefixes(g: &Graph, x: &[f64], mu: f64) -> Result<Vec<VertexSet>> {
    check_mu(mu)?;
    g.check_len(x)?;
    let window = volume_window(g, mu);
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    let mut out = Vec::new();
    for values in [x, &neg[..]] {
        let order = sweep_order(values);
        let mut set = VertexSet::empty(g.n());
        for &v in &order[..g.n().saturating_sub(1)] {
            set.insert(v);
            let vol = g.volume(&set);
            if window.0 <= vol && vol <= window.1 && !out.contains(&set) {
                out.push(set.clone());
            }
        }
    }
    Ok(out)
}

/// Best prefix of the `x` and `−x` sweeps under the μ volume window. Values
/// are recomputed from scratch, so they never undercut the exact φ_μ.
pub fn constrained_sweep_cut(g: &Graph, x: &[f64], mu: f64) -> Result<MuConductanceResult> {
    check_mu(mu)?;
    g.check_len(x)?;
    let n = g.n();
    let window = volume_window(g, mu);
    let vol_g = g.total_volume();
    let drift = 1e-10 * vol_g;
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();

    let mut best: Option<Cut> = None;
    for values in [x, &neg[..]] {
        let order = sweep_order(values);
        let mut inside = alloc::vec![false; n];
        let mut set = VertexSet::empty(n);
        let (mut vol, mut cut) = (0.0, 0.0);
        for &v in &order[..n.saturating_sub(1)] {
            vol += g.degree(v);
            cut = grow_cut(g, &mut inside, cut, v);
            set.insert(v);
            if vol < window.0 - drift || vol > window.1 + drift {
                continue;
            }
            let small = vol.min(vol_g - vol);
            if let Some(b) = &best {
                if cut > b.value * small + drift * (1.0 + b.value) {
                    continue;
                }
            }
            best = better(best, evaluate(g, window, &set));
        }
    }
    Ok(MuConductanceResult { mu, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};
    use crate::spectral::{lambda2, set_embedding};
    use alloc::vec;

    fn set(n: usize, members: &[usize]) -> VertexSet {
        VertexSet::from_members(n, members.iter().copied()).unwrap()
    }

    #[test]
    fn profile_examples() {
        let p4 = generate(Family::Path(4), 0).unwrap();
        let psi = set_embedding(&p4, &set(4, &[0, 1])).unwrap();
        let prof = sweep_profile(&p4, &psi, 0.4).unwrap();
        assert_eq!(prof.order, vec![0, 1, 2, 3]);
        assert_eq!((prof.h, prof.u, prof.z), (2, 1, 2));
        assert_eq!(prof.prefix_volume, vec![1.0, 3.0, 5.0, 6.0]);
        assert_eq!(prof.prefix_cut, vec![1.0, 1.0, 1.0]);

        let k5 = generate(Family::Complete(5), 0).unwrap();
        let prof = sweep_profile(&k5, &[1.0; 5], 0.0).unwrap();
        assert_eq!((prof.z, prof.u), (5, 0));

        let p2 = generate(Family::Path(2), 0).unwrap();
        let prof = sweep_profile(&p2, &[1.0, -1.0], 0.5).unwrap();
        assert_eq!((prof.h, prof.u, prof.z), (1, 0, 1));
    }

    #[test]
    fn ties_broken_by_ascending_id() {
        assert_eq!(sweep_order(&[0.5, 1.0, 0.5, 1.0]), vec![1, 3, 0, 2]);
    }

    #[test]
    fn p_and_delta_shapes() {
        let p4 = generate(Family::Path(4), 0).unwrap();
        let prof = sweep_profile(&p4, &[0.5, -0.2, 0.1, 0.0], 0.1).unwrap();
        assert_eq!(prof.order, vec![0, 2, 3, 1]);
        assert_eq!(prof.p, vec![0.25, 0.010000000000000002, 0.0, 0.0]);
        assert!(prof.delta.iter().all(|d| *d >= 0.0));
        assert_eq!(prof.z, 2);
    }

    #[test]
    fn index_relations_examples() {
        let p4 = generate(Family::Path(4), 0).unwrap();
        let psi = set_embedding(&p4, &set(4, &[0, 1])).unwrap();
        let rel = verify_index_relations(&sweep_profile(&p4, &psi, 0.4).unwrap(), true);
        assert_eq!(rel.z_in_window, Some(true));
        assert_eq!(rel.u_lt_z, Some(true));
        assert!(rel.holds());

        let rel = verify_index_relations(&sweep_profile(&p4, &psi, 0.0).unwrap(), true);
        assert_eq!((rel.z_in_window, rel.u_lt_z), (None, None));
        assert!(rel.u_le_h);
    }

    #[test]
    fn sweep_cut_examples() {
        let p4 = generate(Family::Path(4), 0).unwrap();
        let (_, x) = lambda2(&p4).unwrap();
        let r = constrained_sweep_cut(&p4, &x, 0.4).unwrap();
        assert_eq!(r.value(), Some(1.0 / 3.0));
        assert_eq!(r.witness(), Some(&set(4, &[0, 1])));

        let bb = generate(Family::Barbell(3, 3), 0).unwrap();
        let (_, x) = lambda2(&bb).unwrap();
        let r = constrained_sweep_cut(&bb, &x, 0.3).unwrap();
        assert_eq!(r.value(), Some(1.0 / 7.0));

        let lp = generate(Family::Lollipop(6, 2), 0).unwrap();
        let target = set(8, &[5, 6, 7]);
        let psi = set_embedding(&lp, &target).unwrap();
        let r = constrained_sweep_cut(&lp, &psi, 0.2).unwrap();
        assert!(r.value().unwrap() <= lp.conductance(&target).unwrap());
    }

    #[test]
    fn sweep_cut_reports_empty_window() {
        let k3 = generate(Family::Complete(3), 0).unwrap();
        let r = constrained_sweep_cut(&k3, &[1.0, 0.0, -1.0], 0.5).unwrap();
        assert!(!r.feasible());
    }

    #[test]
    fn window_prefixes_are_in_window() {
        let lp = generate(Family::Lollipop(6, 2), 0).unwrap();
        let (_, x) = lambda2(&lp).unwrap();
        let sets = window_prefixes(&lp, &x, 0.2).unwrap();
        assert!(!sets.is_empty());
        for s in sets {
            let v = lp.volume(&s);
            assert!((0.2 * 34.0..=0.8 * 34.0).contains(&v));
        }
    }
}
