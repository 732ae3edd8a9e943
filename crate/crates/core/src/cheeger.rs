//! The two-sided μ-conductance Cheeger inequality
//!
//! ```text
//! 2·φ_μ ≥ λ_μ ≥ ½·max{ min{ (μ/(1−μ)·φ_μ)², ((μ²φ_μ + (1−2μ)φ₀)/(1−μ−μ²))² }, φ₀² }
//! ```
//!
//! and numeric checks of it on concrete graphs. λ_μ itself is only known
//! through the solver, whose value is an upper bound, so "lower ≤ value"
//! confirms consistency and "value ≤ 2φ_μ" is what the seeding guarantees.

use alloc::vec::Vec;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumeration::{
    check_mu, exact_conductance, exact_mu_conductance_with, mu_feasible, Cut, EnumerationOptions,
    MuConductanceResult, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{solve_lambda_mu, SeedOrigin, SolverConfig, SolverResult};
use crate::spectral::{check_feasible, lambda2, random_feasible, set_embedding, Embedding};
use crate::sweep::{constrained_sweep_cut, sweep_profile, verify_index_relations};

/// Which term of the inner minimum is smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinBranch {
    /// `(μ/(1−μ)·φ_μ)²`.
    Ratio,
    /// `((μ²φ_μ + (1−2μ)φ₀)/(1−μ−μ²))²`.
    Mixed,
}

/// Which term of the outer maximum is larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxBranch {
    Min,
    Phi0,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBound {
    pub value: f64,
    pub ratio_term: f64,
    pub mixed_term: f64,
    pub min_branch: MinBranch,
    pub max_branch: MaxBranch,
}

/// Evaluates the lower bound and records the active branches. Ties go to
/// [`MinBranch::Ratio`] and [`MaxBranch::Phi0`].
pub fn mu_lower_bound_detail(phi0: f64, phi_mu: f64, mu: f64) -> Result<LowerBound> {
    check_mu(mu)?;
    if !(phi0 >= 0.0 && phi0.is_finite() && phi_mu.is_finite()) {
        return Err(Error::Precondition(alloc::format!(
            "conductances must be finite and non-negative, got {phi0} and {phi_mu}"
        )));
    }
    if phi0 > phi_mu {
        return Err(Error::Precondition(alloc::format!(
            "phi0 = {phi0} exceeds phi_mu = {phi_mu}; the constrained minimum cannot be smaller"
        )));
    }
    let r = mu / (1.0 - mu) * phi_mu;
    let ratio_term = r * r;
    let t = (mu * mu * phi_mu + (1.0 - 2.0 * mu) * phi0) / (1.0 - mu - mu * mu);
    let mixed_term = t * t;
    let (inner, min_branch) = if ratio_term <= mixed_term {
        (ratio_term, MinBranch::Ratio)
    } else {
        (mixed_term, MinBranch::Mixed)
    };
    let floor = phi0 * phi0;
    let (outer, max_branch) = if inner > floor {
        (inner, MaxBranch::Min)
    } else {
        (floor, MaxBranch::Phi0)
    };
    Ok(LowerBound {
        value: 0.5 * outer,
        ratio_term,
        mixed_term,
        min_branch,
        max_branch,
    })
}

pub fn mu_lower_bound(phi0: f64, phi_mu: f64, mu: f64) -> Result<f64> {
    mu_lower_bound_detail(phi0, phi_mu, mu).map(|b| b.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exhaustive enumeration; all checks are certified.
    Exact,
    /// Constrained sweep of the λ₂ embedding; φ values are upper estimates
    /// and the checks are heuristic.
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub volume: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Signed slack of the inequality; negative when it fails. `None` for
    /// combinatorial checks.
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheegerReport {
    pub graph: GraphSummary,
    pub mu: f64,
    /// False when no set lies in the μ volume window.
    pub feasible: bool,
    pub method: Method,
    pub phi0: Cut,
    pub phi_mu: Option<Cut>,
    pub lambda2: f64,
    pub lambda_mu_upper: Option<SolverResult>,
    pub bound_lower: Option<LowerBound>,
    /// `2·φ_μ`.
    pub bound_upper: Option<f64>,
    pub checks: Vec<Check>,
}

impl CheegerReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn certified(&self) -> bool {
        self.method == Method::Exact
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Absolute slack for every inequality in the report.
    pub tol: f64,
    /// Largest `n` verified by enumeration; larger graphs use sweeps.
    pub cap: usize,
    pub solver: SolverConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: 1e-9,
            cap: DEFAULT_CAP,
            solver: SolverConfig::default(),
        }
    }
}

/// Precomputed ingredients of a report, so callers can produce them in
/// parallel and then call [`assemble_report`].
#[derive(Debug, Clone)]
pub struct SandwichParts {
    pub method: Method,
    pub lambda2: f64,
    pub phi0: Cut,
    pub phi_mu: MuConductanceResult,
    /// Absent when μ is infeasible.
    pub solver: Option<SolverResult>,
}

/// Extra solver seeds for a sandwich check: ψ of the μ-conductance witness,
/// which guarantees the solver value stays below `2·φ_μ`.
pub fn witness_seeds(g: &Graph, phi_mu: &MuConductanceResult) -> Result<Vec<Embedding>> {
    match phi_mu.witness() {
        Some(w) => Ok(alloc::vec![set_embedding(g, w)?]),
        None => Ok(Vec::new()),
    }
}

/// φ₀ and φ_μ by enumeration when `n ≤ cap`, else by sweeping `fiedler`.
pub fn conductances(
    g: &Graph,
    mu: f64,
    cap: usize,
    fiedler: &[f64],
) -> Result<(Method, Cut, MuConductanceResult)> {
    if g.n() <= cap {
        let opts = EnumerationOptions { cap };
        let phi0 = exact_mu_conductance_with(g, 0.0, opts)?;
        let phi_mu = exact_mu_conductance_with(g, mu, opts)?;
        let phi0 = phi0.best.ok_or(Error::TrivialSet)?;
        Ok((Method::Exact, phi0, phi_mu))
    } else {
        let phi0 = constrained_sweep_cut(g, fiedler, 0.0)?
            .best
            .ok_or(Error::TrivialSet)?;
        let phi_mu = constrained_sweep_cut(g, fiedler, mu)?;
        Ok((Method::Sweep, phi0, phi_mu))
    }
}

/// Computes every quantity of the inequality for `g` at `mu` and checks
/// both sides.
pub fn verify_sandwich(g: &Graph, mu: f64, options: &VerifyOptions) -> Result<CheegerReport> {
    check_mu(mu)?;
    let (lambda2_value, fiedler) = lambda2(g)?;
    let (method, phi0, phi_mu) = conductances(g, mu, options.cap, &fiedler)?;
    let solver = if phi_mu.feasible() {
        let extra = witness_seeds(g, &phi_mu)?;
        Some(solve_lambda_mu(g, mu, options.solver, &extra)?)
    } else if method == Method::Sweep && mu_feasible(g, mu)? {
        return Err(Error::Unsupported(alloc::format!(
            "no sweep prefix of the second eigenvector lies in the mu = {mu} window"
        )));
    } else {
        None
    };
    let parts = SandwichParts {
        method,
        lambda2: lambda2_value,
        phi0,
        phi_mu,
        solver,
    };
    assemble_report(g, mu, options.tol, parts)
}

/// Runs the checks on precomputed parts.
pub fn assemble_report(
    g: &Graph,
    mu: f64,
    tol: f64,
    parts: SandwichParts,
) -> Result<CheegerReport> {
    let SandwichParts {
        method,
        lambda2,
        phi0,
        phi_mu,
        solver,
    } = parts;
    let graph = GraphSummary {
        n: g.n(),
        m: g.m(),
        volume: g.total_volume(),
    };
    let mut checks = Vec::new();

    let upper_side = 2.0 * phi0.value - lambda2;
    let lower_side = lambda2 - 0.5 * phi0.value * phi0.value;
    checks.push(Check {
        name: "classical_cheeger",
        passed: upper_side >= -tol && lower_side >= -tol,
        margin: Some(upper_side.min(lower_side)),
    });

    let Some(phi_mu) = phi_mu.best else {
        return Ok(CheegerReport {
            graph,
            mu,
            feasible: false,
            method,
            phi0,
            phi_mu: None,
            lambda2,
            lambda_mu_upper: None,
            bound_lower: None,
            bound_upper: None,
            checks,
        });
    };
    let solver =
        solver.ok_or_else(|| Error::Precondition("feasible mu needs a solver result".into()))?;
    let value = solver.value;
    let bound_upper = 2.0 * phi_mu.value;
    let bound_lower = mu_lower_bound_detail(phi0.value, phi_mu.value, mu)?;

    checks.push(Check {
        name: "monotone_conductance",
        passed: phi_mu.value >= phi0.value,
        margin: Some(phi_mu.value - phi0.value),
    });
    checks.push(Check {
        name: "upper_bound",
        passed: value <= bound_upper + tol,
        margin: Some(bound_upper - value),
    });
    checks.push(Check {
        name: "lower_bound",
        passed: bound_lower.value <= value + tol,
        margin: Some(value - bound_lower.value),
    });

    let feas = check_feasible(g, &solver.best, mu, tol)?;
    let residual = (feas.dot.abs() / libm::sqrt(graph.volume))
        .max(feas.norm_residual.abs())
        .max(feas.box_residual);
    checks.push(Check {
        name: "solution_feasible",
        passed: feas.feasible,
        margin: Some(-residual),
    });

    let psi = set_embedding(g, &phi_mu.witness)?;
    let psi_value = g.laplacian_quadratic(&psi)?;
    let psi_ok = check_feasible(g, &psi, mu, tol)?.feasible && psi_value <= bound_upper + tol;
    checks.push(Check {
        name: "witness_embedding",
        passed: psi_ok,
        margin: Some(bound_upper - psi_value),
    });

    let profile = sweep_profile(g, &solver.best, mu)?;
    let relations = verify_index_relations(&profile, feas.feasible);
    checks.push(Check {
        name: "index_relations",
        passed: relations.holds(),
        margin: None,
    });

    Ok(CheegerReport {
        graph,
        mu,
        feasible: true,
        method,
        phi0,
        phi_mu: Some(phi_mu),
        lambda2,
        lambda_mu_upper: Some(solver),
        bound_lower: Some(bound_lower),
        bound_upper: Some(bound_upper),
        checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalCheck {
    pub passed: bool,
    pub phi: f64,
    pub lambda2: f64,
    /// `2φ − λ₂`.
    pub upper_margin: f64,
    /// `λ₂ − φ²/2`.
    pub lower_margin: f64,
}

/// `2φ(G) ≥ λ₂ ≥ φ(G)²/2` with φ by enumeration.
pub fn classical_cheeger_check(g: &Graph, tol: f64) -> Result<ClassicalCheck> {
    let phi = exact_conductance(g)?.value().ok_or(Error::TrivialSet)?;
    let (lambda2, _) = lambda2(g)?;
    let upper_margin = 2.0 * phi - lambda2;
    let lower_margin = lambda2 - 0.5 * phi * phi;
    Ok(ClassicalCheck {
        passed: upper_margin >= -tol && lower_margin >= -tol,
        phi,
        lambda2,
        upper_margin,
        lower_margin,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasiblePointCheck {
    pub passed: bool,
    pub bound: f64,
    pub samples: usize,
    pub violations: usize,
    /// Smallest `xᵀLx − bound` over the samples.
    pub worst_margin: f64,
}

/// Draws `samples` random feasible points and checks that each objective
/// stays above the lower bound, since any feasible objective dominates λ_μ.
pub fn feasible_point_bound_check(
    g: &Graph,
    mu: f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<FeasiblePointCheck> {
    let phi0 = exact_conductance(g)?.value().ok_or(Error::TrivialSet)?;
    let phi_mu = exact_mu_conductance_with(g, mu, EnumerationOptions::default())?
        .value()
        .ok_or(Error::Infeasible(mu))?;
    let bound = mu_lower_bound(phi0, phi_mu, mu)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_margin = f64::INFINITY;
    let mut violations = 0;
    for _ in 0..samples {
        let x = random_feasible(g, mu, rng.next_u64())?;
        let margin = g.laplacian_quadratic(&x)? - bound;
        if margin < -tol {
            violations += 1;
        }
        worst_margin = worst_margin.min(margin);
    }
    Ok(FeasiblePointCheck {
        passed: violations == 0,
        bound,
        samples,
        violations,
        worst_margin,
    })
}

/// Largest allowed gap between the chain's μ = 0 value and λ₂.
pub const LAMBDA2_MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneProfileCheck {
    pub passed: bool,
    pub monotone: bool,
    /// Solver values in grid order.
    pub values: Vec<f64>,
    /// Seed origin of each value in grid order.
    pub origins: Vec<SeedOrigin>,
    pub lambda2: f64,
    /// `|value(0) − λ₂|` when the grid contains 0.
    pub lambda2_gap: Option<f64>,
}

/// Solves from the largest μ down, handing every solution found so far to
/// the next solve as extra seeds. A point feasible for some μ is feasible for
/// every smaller μ, so the computed values are non-decreasing in μ.
pub fn monotone_profile_check(
    g: &Graph,
    grid: &[f64],
    config: SolverConfig,
) -> Result<MonotoneProfileCheck> {
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Precondition(
            "grid must be strictly ascending".into(),
        ));
    }
    let (lambda2, _) = lambda2(g)?;
    let mut extra: Vec<Embedding> = Vec::new();
    let mut solved: Vec<SolverResult> = Vec::with_capacity(grid.len());
    for &mu in grid.iter().rev() {
        let r = solve_lambda_mu(g, mu, config, &extra)?;
        extra.push(r.best.clone());
        solved.push(r);
    }
    solved.reverse();
    let values: Vec<f64> = solved.iter().map(|r| r.value).collect();
    let origins = solved.into_iter().map(|r| r.best_origin).collect();
    let monotone = values.windows(2).all(|w| w[0] <= w[1]);
    let lambda2_gap = (grid.first() == Some(&0.0)).then(|| (values[0] - lambda2).abs());
    let passed = monotone && lambda2_gap.is_none_or(|gap| gap <= LAMBDA2_MATCH_TOL);
    Ok(MonotoneProfileCheck {
        passed,
        monotone,
        values,
        origins,
        lambda2,
        lambda2_gap,
    })
}
