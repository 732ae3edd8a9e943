//! Rayleigh quotients, the normalized-Laplacian value λ₂, set embeddings and
//! the feasibility box of the μ-constrained spectral program
//!
//! ```text
//! minimize xᵀLx  subject to  xᵀd = 0,  xᵀDx = 1,  lo ≤ |x_i| ≤ hi
//! lo = sqrt(μ / ((1−μ) Vol(G))),  hi = sqrt((1−μ) / (μ Vol(G)))
//! ```

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::symmetric_eigen;
use crate::enumeration::{check_mu, in_window, volume_window};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A real value per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding(Vec<f64>);

impl Embedding {
    pub fn new(values: Vec<f64>) -> Self {
        Embedding(values)
    }

    pub fn zeros(n: usize) -> Self {
        Embedding(vec![0.0; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn negated(&self) -> Self {
        Embedding(self.0.iter().map(|x| -x).collect())
    }
}

impl Deref for Embedding {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Embedding {
    fn from(values: Vec<f64>) -> Self {
        Embedding(values)
    }
}

/// Entry-magnitude bounds. At μ = 0 the box is vacuous (`lo = 0`, `hi = ∞`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityBox {
    pub mu: f64,
    pub lo: f64,
    pub hi: f64,
}

impl FeasibilityBox {
    pub fn new(g: &Graph, mu: f64) -> Result<Self> {
        check_mu(mu)?;
        if mu == 0.0 {
            return Ok(FeasibilityBox {
                mu,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        let vol = g.total_volume();
        Ok(FeasibilityBox {
            mu,
            lo: libm::sqrt(mu / ((1.0 - mu) * vol)),
            hi: libm::sqrt((1.0 - mu) / (mu * vol)),
        })
    }

    pub fn is_vacuous(&self) -> bool {
        self.mu == 0.0
    }
}

/// R(x) = xᵀLx / xᵀDx.
pub fn rayleigh(g: &Graph, x: &[f64]) -> Result<f64> {
    let norm = g.degree_norm_sq(x)?;
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(g.laplacian_quadratic(x)? / norm)
}

/// Removes the component along the constant vector in the D inner product,
/// so that `xᵀd = 0` afterwards.
pub fn deflate(g: &Graph, x: &mut [f64]) {
    let shift = g.degree_dot(x).unwrap_or(0.0) / g.total_volume();
    for xi in x.iter_mut() {
        *xi -= shift;
    }
}

/// Scales `x` to `xᵀDx = 1`. Returns false when `x` has zero D-norm.
pub fn normalize(g: &Graph, x: &mut [f64]) -> bool {
    let norm = g.degree_norm_sq(x).unwrap_or(0.0);
    if !(norm > 0.0) || !norm.is_finite() {
        return false;
    }
    let scale = 1.0 / libm::sqrt(norm);
    for xi in x.iter_mut() {
        *xi *= scale;
    }
    true
}

/// Second-smallest eigenvalue of `D^{-1/2} L D^{-1/2}` with an embedding
/// `x = D^{-1/2} v` satisfying `xᵀd = 0` and `xᵀDx = 1`.
///
/// The trivial eigenvector `D^{1/2}1` is shifted out of the way before the
/// dense eigensolve, so repeated zero eigenvalues of disconnected graphs still
/// give an embedding orthogonal to `d`.
pub fn lambda2(g: &Graph) -> Result<(f64, Embedding)> {
    let n = g.n();
    if let Some(v) = g.degrees().iter().position(|&d| d <= 0.0) {
        return Err(Error::IsolatedVertex(v));
    }
    if n == 1 {
        return Err(Error::Precondition(
            "lambda2 needs at least two vertices".into(),
        ));
    }
    let vol = g.total_volume();
    let inv_sqrt: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / libm::sqrt(d)).collect();
    let trivial: Vec<f64> = g.degrees().iter().map(|&d| libm::sqrt(d / vol)).collect();

    // Spectrum of the normalized Laplacian lies in [0, 2]; lift the trivial
    // direction to 3.
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = 3.0 * trivial[i] * trivial[j];
        }
        m[i * n + i] += 1.0;
    }
    for e in g.edges() {
        let off = e.w * inv_sqrt[e.u] * inv_sqrt[e.v];
        m[e.u * n + e.v] -= off;
        m[e.v * n + e.u] -= off;
    }
    let eig = symmetric_eigen(&m, n);
    let value = eig.values[0].max(0.0);
    let v = eig.vector(0);
    let mut x: Vec<f64> = v.iter().zip(&inv_sqrt).map(|(vi, s)| vi * s).collect();
    deflate(g, &mut x);
    normalize(g, &mut x);
    if let Some(&first) = x.iter().find(|xi| **xi != 0.0) {
        if first < 0.0 {
            x.iter_mut().for_each(|xi| *xi = -*xi);
        }
    }
    Ok((value, Embedding(x)))
}

/// The two-valued embedding ψ_S, positive on `S` and negative on `S̄`, with
/// `ψᵀd = 0`, `ψᵀDψ = 1` and `ψᵀLψ = |∂S|·Vol(G) / (Vol(S)·Vol(S̄))`.
pub fn set_embedding(g: &Graph, set: &VertexSet) -> Result<Embedding> {
    g.check_set(set)?;
    let k = set.len();
    if k == 0 || k == g.n() {
        return Err(Error::TrivialSet);
    }
    let vol_in = g.volume(set);
    let vol_out = g.volume(&set.complement());
    if vol_in <= 0.0 || vol_out <= 0.0 {
        return Err(Error::ZeroVolume);
    }
    let vol = g.total_volume();
    let pos = libm::sqrt(vol_out / (vol_in * vol));
    let neg = libm::sqrt(vol_in / (vol_out * vol));
    Ok(Embedding(
        (0..g.n())
            .map(|v| if set.contains(v) { pos } else { -neg })
            .collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// `|xᵀd|` above `tol·sqrt(Vol(G))`.
    Orthogonality {
        dot: f64,
    },
    /// `|xᵀDx − 1|` above `tol`.
    Norm {
        norm_sq: f64,
    },
    BelowFloor {
        vertex: usize,
        magnitude: f64,
    },
    AboveCeiling {
        vertex: usize,
        magnitude: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feasibility {
    pub feasible: bool,
    pub violations: Vec<Violation>,
    /// `xᵀd`.
    pub dot: f64,
    /// `xᵀDx − 1`.
    pub norm_residual: f64,
    /// Largest entry-wise box excess, relative to `hi` (0 when inside).
    pub box_residual: f64,
}

/// Checks every constraint of the μ program and lists each violation.
pub fn check_feasible(g: &Graph, x: &[f64], mu: f64, tol: f64) -> Result<Feasibility> {
    let bounds = FeasibilityBox::new(g, mu)?;
    let dot = g.degree_dot(x)?;
    let norm_sq = g.degree_norm_sq(x)?;
    let mut violations = Vec::new();
    if !(dot.abs() <= tol * libm::sqrt(g.total_volume())) {
        violations.push(Violation::Orthogonality { dot });
    }
    if !((norm_sq - 1.0).abs() <= tol) {
        violations.push(Violation::Norm { norm_sq });
    }
    let mut box_residual: f64 = 0.0;
    if !bounds.is_vacuous() {
        let slack = tol * bounds.hi;
        for (vertex, xi) in x.iter().enumerate() {
            let magnitude = xi.abs();
            let below = bounds.lo - magnitude;
            let above = magnitude - bounds.hi;
            box_residual = box_residual.max(below.max(above) / bounds.hi);
            if !(magnitude >= bounds.lo - slack) {
                violations.push(Violation::BelowFloor { vertex, magnitude });
            } else if !(magnitude <= bounds.hi + slack) {
                violations.push(Violation::AboveCeiling { vertex, magnitude });
            }
        }
    }
    Ok(Feasibility {
        feasible: violations.is_empty(),
        violations,
        dot,
        norm_residual: norm_sq - 1.0,
        box_residual: box_residual.max(0.0),
    })
}

/// Splits `x` into `(g₊, g₋)` with `x = g₊ − g₋`, both non-negative and with
/// disjoint supports. Zero entries land in neither part.
pub fn decompose_pos_neg(x: &[f64]) -> (Embedding, Embedding) {
    let pos = x.iter().map(|&v| if v > 0.0 { v } else { 0.0 }).collect();
    let neg = x.iter().map(|&v| if v < 0.0 { -v } else { 0.0 }).collect();
    (Embedding(pos), Embedding(neg))
}

/// Tolerance used by [`random_feasible`] for its own acceptance test.
pub const SAMPLER_TOL: f64 = 1e-8;
const SAMPLER_ATTEMPTS: usize = 64;
const BLEND_HALVINGS: usize = 40;
const ENUMERATE_WINDOW_UP_TO: usize = 20;

/// Draws a feasible point of the μ program, deterministically per seed.
///
/// For μ > 0 the positive support of any feasible point is a set whose volume
/// lies in the μ window, so the sampler first draws such a set `S`, then
/// perturbs the entry magnitudes of ψ_S towards a random profile and restores
/// `xᵀd = 0` and `xᵀDx = 1` by rescaling each side. The perturbation is
/// halved until the box holds, falling back to ψ_S itself.
pub fn random_feasible(g: &Graph, mu: f64, seed: u64) -> Result<Embedding> {
    let bounds = FeasibilityBox::new(g, mu)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLER_ATTEMPTS {
        let candidate = if bounds.is_vacuous() {
            let mut x: Vec<f64> = (0..g.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            deflate(g, &mut x);
            if !normalize(g, &mut x) {
                continue;
            }
            Embedding(x)
        } else {
            let Some(set) = random_window_set(g, mu, &mut rng) else {
                continue;
            };
            match perturbed_set_embedding(g, &bounds, &set, &mut rng) {
                Some(x) => x,
                None => continue,
            }
        };
        if check_feasible(g, &candidate, mu, SAMPLER_TOL)?.feasible {
            return Ok(candidate);
        }
    }
    Err(Error::SamplerFailed(SAMPLER_ATTEMPTS))
}

pub(crate) fn random_window_set(g: &Graph, mu: f64, rng: &mut ChaCha8Rng) -> Option<VertexSet> {
    let n = g.n();
    let window = volume_window(g, mu);
    let proper = |s: &VertexSet| !s.is_empty() && s.len() < n;
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..8 {
        order.shuffle(rng);
        let mut set = VertexSet::empty(n);
        let mut vol = 0.0;
        for &v in &order {
            set.insert(v);
            vol += g.degree(v);
            if vol >= window.0 {
                break;
            }
        }
        if proper(&set) && in_window(window, g.volume(&set)) {
            return Some(set);
        }
        let coin = VertexSet::from_members(n, (0..n).filter(|_| rng.gen::<bool>())).ok()?;
        if proper(&coin) && in_window(window, g.volume(&coin)) {
            return Some(coin);
        }
    }
    if n <= ENUMERATE_WINDOW_UP_TO {
        let all: Vec<VertexSet> = (1..(1u64 << n) - 1)
            .map(|mask| VertexSet::from_mask(n, mask))
            .filter(|s| in_window(window, g.volume(s)))
            .collect();
        if !all.is_empty() {
            return Some(all[rng.gen_range(0..all.len())].clone());
        }
    }
    None
}

fn perturbed_set_embedding(
    g: &Graph,
    bounds: &FeasibilityBox,
    set: &VertexSet,
    rng: &mut ChaCha8Rng,
) -> Option<Embedding> {
    let psi = set_embedding(g, set).ok()?;
    let target: Vec<f64> = (0..g.n())
        .map(|_| rng.gen_range(bounds.lo..=bounds.hi))
        .collect();
    let degrees = g.degrees();
    let mut t = 1.0;
    for _ in 0..BLEND_HALVINGS {
        let shape: Vec<f64> = psi
            .iter()
            .zip(&target)
            .map(|(p, r)| (1.0 - t) * p.abs() + t * r)
            .collect();
        let (mut pos1, mut neg1, mut pos2, mut neg2) = (0.0, 0.0, 0.0, 0.0);
        for v in 0..g.n() {
            let (s, d) = (shape[v], degrees[v]);
            if set.contains(v) {
                pos1 += d * s;
                pos2 += d * s * s;
            } else {
                neg1 += d * s;
                neg2 += d * s * s;
            }
        }
        if neg1 > 0.0 {
            let ratio = pos1 / neg1;
            let a = 1.0 / libm::sqrt(pos2 + ratio * ratio * neg2);
            let b = a * ratio;
            let x: Vec<f64> = (0..g.n())
                .map(|v| {
                    if set.contains(v) {
                        a * shape[v]
                    } else {
                        -b * shape[v]
                    }
                })
                .collect();
            if x.iter()
                .all(|xi| bounds.lo <= xi.abs() && xi.abs() <= bounds.hi)
            {
                return Some(Embedding(x));
            }
        }
        t *= 0.5;
    }
    Some(psi)
}
