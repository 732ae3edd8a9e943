//! Seeded multi-start local search for the μ-constrained spectral program.
//!
//! The program has no known direct solver, so the reported value is always an
//! upper bound on its optimum: the objective of a point that passes
//! [`check_feasible`]. Seeds are set embeddings ψ_S of sets in the μ volume
//! window (all of them for small graphs), optionally extended by caller
//! supplied points. Each selected seed is refined by projected descent that
//! stays inside the seed's sign orthant and only ever accepts feasible points
//! with a strictly smaller objective, so the result never exceeds the best
//! seed.
//!
//! Work is split into a [`SolverPlan`] and per-start [`refine`] calls so that
//! the starts can run on any number of workers; [`SolverPlan::finish`] merges
//! them by value, ties by start index.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enumeration::{
    check_mu, exact_mu_conductance_with, in_window, mu_feasible, volume_window, EnumerationOptions,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectral::{
    check_feasible, deflate, lambda2, normalize, random_window_set, set_embedding, Embedding,
    FeasibilityBox,
};
use crate::sweep::window_prefixes;

/// Largest `n` for which every window set seeds the search.
pub const ALL_SETS_UP_TO: usize = 16;
/// Largest `n` for which [`Effort::ExhaustiveSigns`] refines every seed.
pub const EXHAUSTIVE_SIGNS_UP_TO: usize = 12;
/// Largest `n` for which μ = 1/2 is solved by enumerating balanced sets.
pub const BALANCED_SIGNS_UP_TO: usize = 24;

const PROJECTION_ROUNDS: usize = 200;
const PROJECTION_TOL: f64 = 1e-10;
const STEP_HALVINGS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Effort {
    /// Refine the `max_starts` best seeds.
    Fast,
    /// Refine every seed, one per feasible sign orthant, for `n ≤ 12`.
    ExhaustiveSigns,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub max_starts: usize,
    pub iteration_cap: usize,
    /// Feasibility tolerance handed to [`check_feasible`].
    pub tol: f64,
    pub seed: u64,
    pub effort: Effort,
    /// Random window sets added as seeds when `n > 16`.
    pub random_sets: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_starts: 8,
            iteration_cap: 100,
            tol: 1e-9,
            seed: 0,
            effort: Effort::Fast,
            random_sets: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeedOrigin {
    /// ψ_S of a set in the volume window.
    WindowSet(VertexSet),
    /// ψ_S of a window prefix of the λ₂ sweep.
    SweepSet(VertexSet),
    /// ψ_S of a randomly drawn window set.
    RandomSet(VertexSet),
    /// The λ₂ embedding, or its projection into the box.
    Lambda2,
    /// Caller-supplied point, by position.
    Provided(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Seed {
    pub origin: SeedOrigin,
    pub embedding: Embedding,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refined {
    pub start: usize,
    pub embedding: Embedding,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub mu: f64,
    pub best: Embedding,
    /// Feasible objective `xᵀLx` of `best`; an upper bound on λ_μ.
    pub value: f64,
    /// Objective of every seed, in seed order.
    pub seed_values: Vec<f64>,
    /// Seed from which `best` was reached.
    pub best_seed: usize,
    pub best_origin: SeedOrigin,
    pub starts_refined: usize,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct SolverPlan {
    pub mu: f64,
    pub config: SolverConfig,
    pub bounds: FeasibilityBox,
    pub seeds: Vec<Seed>,
    /// Seed indices to refine.
    pub starts: Vec<usize>,
}

impl SolverPlan {
    pub fn new(g: &Graph, mu: f64, config: SolverConfig, extra: &[Embedding]) -> Result<Self> {
        check_mu(mu)?;
        if let Some(v) = g.degrees().iter().position(|&d| d <= 0.0) {
            return Err(Error::IsolatedVertex(v));
        }
        let bounds = FeasibilityBox::new(g, mu)?;
        let mut seeds = Vec::new();
        let push = |origin: SeedOrigin, x: Embedding, seeds: &mut Vec<Seed>| -> Result<()> {
            if check_feasible(g, &x, mu, config.tol)?.feasible {
                let value = g.laplacian_quadratic(&x)?;
                seeds.push(Seed {
                    origin,
                    embedding: x,
                    value,
                });
            }
            Ok(())
        };

        if mu == 0.0 {
            let (_, x) = lambda2(g)?;
            push(SeedOrigin::Lambda2, x, &mut seeds)?;
        } else if mu == 0.5 {
            // Feasible points are ±1/sqrt(Vol) sign vectors of balanced sets.
            if g.n() <= BALANCED_SIGNS_UP_TO {
                let opts = EnumerationOptions {
                    cap: BALANCED_SIGNS_UP_TO,
                };
                let exact = exact_mu_conductance_with(g, mu, opts)?;
                let Some(cut) = exact.best else {
                    return Err(Error::Infeasible(mu));
                };
                let x = set_embedding(g, &cut.witness)?;
                push(SeedOrigin::WindowSet(cut.witness), x, &mut seeds)?;
            } else {
                let (_, fiedler) = lambda2(g)?;
                for set in window_prefixes(g, &fiedler, mu)? {
                    let x = set_embedding(g, &set)?;
                    push(SeedOrigin::SweepSet(set), x, &mut seeds)?;
                }
                if seeds.is_empty() && extra.is_empty() {
                    return Err(Error::Unsupported(alloc::format!(
                        "mu = 1/2 with n > {BALANCED_SIGNS_UP_TO} needs a balanced seed set"
                    )));
                }
            }
        } else {
            if !mu_feasible(g, mu)? {
                return Err(Error::Infeasible(mu));
            }
            let window = volume_window(g, mu);
            let n = g.n();
            if n <= ALL_SETS_UP_TO {
                for mask in 1..(1u64 << (n - 1)) {
                    let set = VertexSet::from_mask(n, mask);
                    if in_window(window, g.volume(&set)) {
                        let x = set_embedding(g, &set)?;
                        push(SeedOrigin::WindowSet(set), x, &mut seeds)?;
                    }
                }
            } else {
                let (_, fiedler) = lambda2(g)?;
                for set in window_prefixes(g, &fiedler, mu)? {
                    let x = set_embedding(g, &set)?;
                    push(SeedOrigin::SweepSet(set), x, &mut seeds)?;
                }
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                for _ in 0..config.random_sets {
                    if let Some(set) = random_window_set(g, mu, &mut rng) {
                        let x = set_embedding(g, &set)?;
                        push(SeedOrigin::RandomSet(set), x, &mut seeds)?;
                    }
                }
            }
            let (_, fiedler) = lambda2(g)?;
            if let Some(x) = project(g, &bounds, &fiedler, &signs(&fiedler)) {
                push(SeedOrigin::Lambda2, x, &mut seeds)?;
            }
        }
        for (i, x) in extra.iter().enumerate() {
            g.check_len(x)?;
            push(SeedOrigin::Provided(i), x.clone(), &mut seeds)?;
        }
        if seeds.is_empty() {
            return Err(Error::Infeasible(mu));
        }

        let refinable = mu > 0.0 && mu < 0.5;
        let mut ranked: Vec<usize> = (0..seeds.len()).collect();
        ranked.sort_by(|&a, &b| seeds[a].value.total_cmp(&seeds[b].value).then(a.cmp(&b)));
        let exhaustive =
            config.effort == Effort::ExhaustiveSigns && g.n() <= EXHAUSTIVE_SIGNS_UP_TO;
        if config.effort == Effort::ExhaustiveSigns && !exhaustive {
            log::warn!("exhaustive sign search is limited to n <= {EXHAUSTIVE_SIGNS_UP_TO}");
        }
        let starts = match (refinable, exhaustive) {
            (false, _) => Vec::new(),
            (true, true) => ranked,
            (true, false) => ranked.into_iter().take(config.max_starts).collect(),
        };
        Ok(SolverPlan {
            mu,
            config,
            bounds,
            seeds,
            starts,
        })
    }

    /// Merges refined starts with the raw seeds. The lowest value wins; ties
    /// go to the lower seed index.
    pub fn finish(&self, refined: Vec<Refined>) -> SolverResult {
        let mut best_seed = 0;
        for (i, s) in self.seeds.iter().enumerate() {
            if s.value < self.seeds[best_seed].value {
                best_seed = i;
            }
        }
        let mut best = self.seeds[best_seed].embedding.clone();
        let mut value = self.seeds[best_seed].value;
        let mut iterations = 0;
        let mut converged = true;
        for r in &refined {
            iterations += r.iterations;
            converged &= r.converged;
            if r.value < value || (r.value == value && r.start < best_seed) {
                value = r.value;
                best = r.embedding.clone();
                best_seed = r.start;
            }
        }
        SolverResult {
            mu: self.mu,
            best,
            value,
            seed_values: self.seeds.iter().map(|s| s.value).collect(),
            best_seed,
            best_origin: self.seeds[best_seed].origin.clone(),
            starts_refined: refined.len(),
            iterations,
            converged,
        }
    }
}

/// Solves serially. Identical to running [`refine`] on every planned start on
/// any number of workers and merging with [`SolverPlan::finish`].
pub fn solve_lambda_mu(
    g: &Graph,
    mu: f64,
    config: SolverConfig,
    extra: &[Embedding],
) -> Result<SolverResult> {
    let plan = SolverPlan::new(g, mu, config, extra)?;
    let refined = plan.starts.iter().map(|&s| refine(g, &plan, s)).collect();
    Ok(plan.finish(refined))
}

fn signs(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| if v < 0.0 { -1.0 } else { 1.0 })
        .collect()
}

/// Pulls `y` onto the program's constraint set inside the orthant `sign` by
/// alternating sign-preserving magnitude clamping, D-weighted removal of the
/// constant component and D-norm rescaling.
pub fn project(g: &Graph, bounds: &FeasibilityBox, y: &[f64], sign: &[f64]) -> Option<Embedding> {
    let mut x = y.to_vec();
    let slack = PROJECTION_TOL * bounds.hi;
    for _ in 0..PROJECTION_ROUNDS {
        for (xi, s) in x.iter_mut().zip(sign) {
            *xi = s * (s * *xi).clamp(bounds.lo, bounds.hi);
        }
        deflate(g, &mut x);
        if !normalize(g, &mut x) {
            return None;
        }
        let inside = x.iter().zip(sign).all(|(xi, s)| {
            let m = s * xi;
            m >= bounds.lo - slack && m <= bounds.hi + slack
        });
        if inside {
            return Some(Embedding::new(x));
        }
    }
    None
}

/// Projected descent from seed `start`, along the D-metric gradient of the
/// Rayleigh quotient with an exact line search of the quotient.
pub fn refine(g: &Graph, plan: &SolverPlan, start: usize) -> Refined {
    let seed = &plan.seeds[start];
    let mut x = seed.embedding.clone().into_vec();
    let mut value = seed.value;
    let sign = signs(&x);
    let degrees = g.degrees();
    let mut iterations = 0;
    let mut converged = false;

    while iterations < plan.config.iteration_cap {
        iterations += 1;
        let lx = g.laplacian_apply(&x).expect("length checked at plan time");
        // x is D-normalized, so R(x) = xᵀLx and the tangent direction
        // −(D⁻¹Lx − R(x)x) is orthogonal to d and to Dx.
        let a = value;
        let p: Vec<f64> = (0..g.n()).map(|v| a * x[v] - lx[v] / degrees[v]).collect();
        let lp = g.laplacian_apply(&p).expect("length checked at plan time");
        let b: f64 = x.iter().zip(&lp).map(|(xi, li)| xi * li).sum();
        let c: f64 = p.iter().zip(&lp).map(|(pi, li)| pi * li).sum();
        let q = g.degree_norm_sq(&p).expect("length checked at plan time");
        if !(q > 0.0) || !(b < 0.0) {
            converged = true;
            break;
        }
        let shape = c - a * q;
        let mut t = (shape - libm::sqrt(shape * shape + 4.0 * b * b * q)) / (2.0 * b * q);
        if !t.is_finite() || t <= 0.0 {
            converged = true;
            break;
        }

        let mut accepted = None;
        for _ in 0..STEP_HALVINGS {
            let trial: Vec<f64> = x.iter().zip(&p).map(|(xi, pi)| xi + t * pi).collect();
            if let Some(y) = project(g, &plan.bounds, &trial, &sign) {
                let fy = g
                    .laplacian_quadratic(&y)
                    .expect("length checked at plan time");
                let ok = check_feasible(g, &y, plan.mu, plan.config.tol)
                    .map(|f| f.feasible)
                    .unwrap_or(false);
                if ok && fy < value {
                    accepted = Some((y, fy));
                    break;
                }
            }
            t *= 0.5;
        }
        match accepted {
            Some((y, fy)) => {
                let gain = value - fy;
                x = y.into_vec();
                value = fy;
                if gain <= 1e-13 * value.max(1e-300) {
                    converged = true;
                    break;
                }
            }
            None => {
                converged = true;
                break;
            }
        }
    }
    Refined {
        start,
        embedding: Embedding::new(x),
        value,
        iterations,
        converged,
    }
}
