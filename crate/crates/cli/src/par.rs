//! Multi-threaded drivers over the core's chunked enumeration and per-start
//! solver plans. Results are merged under the same total orders as the serial
//! versions, so they do not depend on the thread count.

use mucheeger_core::cheeger::{
    assemble_report, conductances, witness_seeds, CheegerReport, Method, SandwichParts,
    VerifyOptions,
};
use mucheeger_core::enumeration::{
    better, check_mu, mu_feasible, Cut, EnumerationOptions, MuConductanceResult, SubsetSearch,
};
use mucheeger_core::solver::{refine, SolverConfig, SolverPlan, SolverResult};
use mucheeger_core::spectral::{lambda2, Embedding};
use mucheeger_core::{Error, Graph, Result};
use rayon::prelude::*;

pub fn par_exact_mu_conductance(
    g: &Graph,
    mu: f64,
    options: EnumerationOptions,
) -> Result<MuConductanceResult> {
    let search = SubsetSearch::new(g, mu, options)?;
    let best = (0..search.chunks())
        .into_par_iter()
        .map(|c| search.search_chunk(c))
        .reduce(|| None, better);
    Ok(search.finish(best))
}

pub fn par_solve(
    g: &Graph,
    mu: f64,
    config: SolverConfig,
    extra: &[Embedding],
) -> Result<SolverResult> {
    let plan = SolverPlan::new(g, mu, config, extra)?;
    let refined = plan
        .starts
        .par_iter()
        .map(|&s| refine(g, &plan, s))
        .collect();
    Ok(plan.finish(refined))
}

/// φ₀ and φ_μ, by parallel enumeration when `n ≤ cap`, else by sweeps.
pub fn par_conductances(
    g: &Graph,
    mu: f64,
    cap: usize,
    fiedler: &[f64],
) -> Result<(Method, Cut, MuConductanceResult)> {
    if g.n() > cap {
        return conductances(g, mu, cap, fiedler);
    }
    let opts = EnumerationOptions { cap };
    let (phi0, phi_mu) = rayon::join(
        || par_exact_mu_conductance(g, 0.0, opts),
        || par_exact_mu_conductance(g, mu, opts),
    );
    let phi0 = phi0?.best.ok_or(Error::TrivialSet)?;
    Ok((Method::Exact, phi0, phi_mu?))
}

/// Parallel counterpart of the core's sandwich verification.
pub fn par_verify(g: &Graph, mu: f64, options: &VerifyOptions) -> Result<CheegerReport> {
    check_mu(mu)?;
    let (lambda2_value, fiedler) = lambda2(g)?;
    let (method, phi0, phi_mu) = par_conductances(g, mu, options.cap, &fiedler)?;
    let solver = if phi_mu.feasible() {
        let extra = witness_seeds(g, &phi_mu)?;
        Some(par_solve(g, mu, options.solver, &extra)?)
    } else if method == Method::Sweep && mu_feasible(g, mu)? {
        return Err(Error::Unsupported(format!(
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
