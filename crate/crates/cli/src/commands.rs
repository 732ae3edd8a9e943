//! Subcommand bodies. Each returns the text for stdout and an exit code.

use std::path::Path;
use std::time::Instant;

use mucheeger_core::cheeger::{
    mu_lower_bound, witness_seeds, CheegerReport, MaxBranch, Method, MinBranch, VerifyOptions,
};
use mucheeger_core::enumeration::{Cut, EnumerationOptions, MuConductanceResult, HARD_CAP};
use mucheeger_core::generate::{generate, Family};
use mucheeger_core::solver::{SeedOrigin, SolverResult};
use mucheeger_core::spectral::{check_feasible, lambda2};
use mucheeger_core::sweep::constrained_sweep_cut;
use mucheeger_core::{Graph, VertexSet};
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, ExactArgs, SolverArgs};
use crate::edgelist::{parse_edge_list, serialize_edge_list, ParsedGraph};
use crate::error::CliError;
use crate::grid::{parse_grid, snap};
use crate::output::{fmt_f64, num, nums};
use crate::par::{par_conductances, par_exact_mu_conductance, par_solve, par_verify};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let seed = cli.seed;
    match &cli.command {
        Command::Gen {
            family,
            params,
            out,
        } => cmd_gen(family, params, seed, out.as_deref()),
        Command::Phi { graph, exact } => {
            let g = read_graph(graph)?;
            conductance_json("phi", &g, 0.0, *exact, started)
        }
        Command::Phimu { graph, mu, exact } => {
            let g = read_graph(graph)?;
            conductance_json("phimu", &g, check_mu(*mu)?, *exact, started)
        }
        Command::Lambdamu { graph, mu, solver } => {
            let g = read_graph(graph)?;
            cmd_lambdamu(&g, check_mu(*mu)?, solver, seed, started)
        }
        Command::Verify {
            graph,
            mu,
            tol,
            exact,
            solver,
        } => {
            let g = read_graph(graph)?;
            cmd_verify(&g, check_mu(*mu)?, *tol, *exact, solver, seed, started)
        }
        Command::Profile {
            graph,
            grid,
            out,
            exact,
            solver,
        } => {
            let mus = parse_grid(grid)?;
            let g = read_graph(graph)?;
            cmd_profile(&g, &mus, out.as_deref(), *exact, solver, seed, started)
        }
    }
}

fn check_mu(mu: f64) -> Result<f64, CliError> {
    if (0.0..=0.5).contains(&mu) {
        Ok(mu)
    } else {
        Err(CliError::Input(format!(
            "--mu must lie in [0, 0.5], got {mu}"
        )))
    }
}

pub fn read_graph(path: &Path) -> Result<ParsedGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_family(name: &str, params: &[String]) -> Result<Family, CliError> {
    let bad = || {
        CliError::Input(format!(
            "family {name:?} with parameters {params:?}; expected one of: path N, cycle N, \
             complete N, barbell A B, lollipop K T, gnp N P"
        ))
    };
    let int = |s: &String| s.parse::<usize>().map_err(|_| bad());
    let family = match (name, params) {
        ("path", [n]) => Family::Path(int(n)?),
        ("cycle", [n]) => Family::Cycle(int(n)?),
        ("complete", [n]) => Family::Complete(int(n)?),
        ("barbell", [a, b]) => Family::Barbell(int(a)?, int(b)?),
        ("lollipop", [k, t]) => Family::Lollipop(int(k)?, int(t)?),
        ("gnp", [n, p]) => Family::Gnp(int(n)?, p.parse().map_err(|_| bad())?),
        _ => return Err(bad()),
    };
    Ok(family)
}

fn cmd_gen(
    name: &str,
    params: &[String],
    seed: u64,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let family = parse_family(name, params)?;
    let g = generate(family, seed).map_err(|e| CliError::Input(e.to_string()))?;
    let text = serialize_edge_list(&g, None);
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome {
                stdout: String::new(),
                code: EXIT_OK,
            })
        }
        None => Ok(Outcome {
            stdout: text,
            code: EXIT_OK,
        }),
    }
}

fn enumeration_cap(exact: ExactArgs) -> Result<usize, CliError> {
    if exact.cap > HARD_CAP {
        return Err(CliError::Input(format!("--cap must be at most {HARD_CAP}")));
    }
    Ok(exact.cap)
}

/// Enforces the cap up front so the message can point at `--sweep`.
fn require_within_cap(g: &Graph, exact: ExactArgs) -> Result<usize, CliError> {
    let cap = enumeration_cap(exact)?;
    if !exact.sweep && g.n() > cap {
        return Err(CliError::SizeCap(format!(
            "graph has {} vertices, above the enumeration cap of {cap}; \
             rerun with --sweep for a heuristic answer or raise --cap (at most {HARD_CAP})",
            g.n()
        )));
    }
    Ok(if exact.sweep { 0 } else { cap })
}

fn finish(mut obj: Map<String, Value>, started: Instant, code: u8) -> Outcome {
    obj.insert(
        "timing_ms".into(),
        num(started.elapsed().as_secs_f64() * 1e3),
    );
    let mut stdout =
        serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values serialize");
    stdout.push('\n');
    Outcome { stdout, code }
}

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "m": g.m(), "volume": num(g.total_volume()) })
}

fn set_json(set: &VertexSet, labels: &[String]) -> (Value, Value) {
    let ids = set.to_vec();
    let names: Vec<&str> = ids.iter().map(|&v| labels[v].as_str()).collect();
    (json!(ids), json!(names))
}

fn cut_json(cut: &Cut, labels: &[String]) -> Value {
    let (ids, names) = set_json(&cut.witness, labels);
    json!({
        "value": num(cut.value),
        "witness": ids,
        "witness_labels": names,
        "witness_size": cut.witness.len(),
    })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Exact => "exact",
        Method::Sweep => "sweep",
    }
}

fn phi_mu_of(g: &Graph, mu: f64, cap: usize) -> Result<(Method, MuConductanceResult), CliError> {
    if g.n() <= cap {
        Ok((
            Method::Exact,
            par_exact_mu_conductance(g, mu, EnumerationOptions { cap })?,
        ))
    } else {
        let (_, fiedler) = lambda2(g)?;
        Ok((Method::Sweep, constrained_sweep_cut(g, &fiedler, mu)?))
    }
}

fn conductance_json(
    command: &str,
    parsed: &ParsedGraph,
    mu: f64,
    exact: ExactArgs,
    started: Instant,
) -> Result<Outcome, CliError> {
    let g = &parsed.graph;
    let cap = require_within_cap(g, exact)?;
    let (method, result) = phi_mu_of(g, mu, cap)?;
    let mut obj = Map::new();
    obj.insert("command".into(), json!(command));
    obj.insert("graph".into(), graph_json(g));
    obj.insert("mu".into(), num(mu));
    obj.insert("method".into(), json!(method_name(method)));
    obj.insert("feasible".into(), json!(result.feasible()));
    let code = match &result.best {
        Some(cut) => {
            if let Value::Object(fields) = cut_json(cut, &parsed.labels) {
                obj.extend(fields);
            }
            EXIT_OK
        }
        // A sweep that misses the window says nothing about feasibility.
        None if method == Method::Sweep => {
            return Err(CliError::SizeCap(format!(
                "no sweep cut lies in the mu = {mu} window; lower --mu or raise --cap"
            )))
        }
        None => {
            obj.insert("value".into(), Value::Null);
            EXIT_INFEASIBLE
        }
    };
    Ok(finish(obj, started, code))
}

fn origin_json(origin: &SeedOrigin, labels: &[String]) -> Value {
    let with_set = |kind: &str, set: &VertexSet| {
        let (ids, names) = set_json(set, labels);
        json!({ "kind": kind, "set": ids, "set_labels": names })
    };
    match origin {
        SeedOrigin::WindowSet(s) => with_set("window_set", s),
        SeedOrigin::SweepSet(s) => with_set("sweep_set", s),
        SeedOrigin::RandomSet(s) => with_set("random_set", s),
        SeedOrigin::Lambda2 => json!({ "kind": "lambda2" }),
        SeedOrigin::Provided(i) => json!({ "kind": "provided", "index": i }),
    }
}

fn solver_json(g: &Graph, mu: f64, r: &SolverResult, labels: &[String]) -> Result<Value, CliError> {
    let feas = check_feasible(g, &r.best, mu, 1e-9)?;
    Ok(json!({
        "upper_bound": num(r.value),
        "seed": { "index": r.best_seed, "origin": origin_json(&r.best_origin, labels) },
        "seeds": r.seed_values.len(),
        "best_seed_value": num(r.seed_values[r.best_seed]),
        "starts_refined": r.starts_refined,
        "iterations": r.iterations,
        "converged": r.converged,
        "feasibility": {
            "feasible": feas.feasible,
            "dot": num(feas.dot),
            "norm_residual": num(feas.norm_residual),
            "box_residual": num(feas.box_residual),
        },
        "embedding": nums(&r.best),
    }))
}

fn cmd_lambdamu(
    parsed: &ParsedGraph,
    mu: f64,
    solver: &SolverArgs,
    seed: u64,
    started: Instant,
) -> Result<Outcome, CliError> {
    let g = &parsed.graph;
    let mut obj = Map::new();
    obj.insert("command".into(), json!("lambdamu"));
    obj.insert("graph".into(), graph_json(g));
    obj.insert("mu".into(), num(mu));
    match par_solve(g, mu, solver.config(seed), &[]).map_err(CliError::from) {
        Ok(r) => {
            obj.insert("feasible".into(), json!(true));
            obj.insert("label".into(), json!("upper bound on lambda_mu"));
            if let Value::Object(fields) = solver_json(g, mu, &r, &parsed.labels)? {
                obj.extend(fields);
            }
            Ok(finish(obj, started, EXIT_OK))
        }
        Err(CliError::Infeasible(_)) => {
            obj.insert("feasible".into(), json!(false));
            obj.insert("upper_bound".into(), Value::Null);
            Ok(finish(obj, started, EXIT_INFEASIBLE))
        }
        Err(e) => Err(e),
    }
}

fn report_json(
    g: &Graph,
    r: &CheegerReport,
    labels: &[String],
) -> Result<Map<String, Value>, CliError> {
    let mut obj = Map::new();
    obj.insert("command".into(), json!("verify"));
    obj.insert(
        "graph".into(),
        json!({ "n": r.graph.n, "m": r.graph.m, "volume": num(r.graph.volume) }),
    );
    obj.insert("mu".into(), num(r.mu));
    obj.insert("feasible".into(), json!(r.feasible));
    obj.insert("method".into(), json!(method_name(r.method)));
    obj.insert("certified".into(), json!(r.certified()));
    obj.insert("passed".into(), json!(r.passed()));
    obj.insert("phi0".into(), cut_json(&r.phi0, labels));
    obj.insert(
        "phi_mu".into(),
        r.phi_mu
            .as_ref()
            .map_or(Value::Null, |c| cut_json(c, labels)),
    );
    obj.insert("lambda2".into(), num(r.lambda2));
    let upper = match &r.lambda_mu_upper {
        Some(s) => {
            let mut v = solver_json(g, r.mu, s, labels)?;
            v["value"] = num(s.value);
            v["label"] = json!("upper bound on lambda_mu");
            v
        }
        None => Value::Null,
    };
    obj.insert("lambda_mu_upper".into(), upper);
    let lower = match &r.bound_lower {
        Some(b) => json!({
            "value": num(b.value),
            "ratio_term": num(b.ratio_term),
            "mixed_term": num(b.mixed_term),
            "min_branch": match b.min_branch { MinBranch::Ratio => "ratio", MinBranch::Mixed => "mixed" },
            "max_branch": match b.max_branch { MaxBranch::Min => "min", MaxBranch::Phi0 => "phi0" },
        }),
        None => Value::Null,
    };
    obj.insert("bound_lower".into(), lower);
    obj.insert("bound_upper".into(), r.bound_upper.map_or(Value::Null, num));
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "margin": c.margin.map_or(Value::Null, num),
            })
        })
        .collect();
    obj.insert("checks".into(), Value::Array(checks));
    Ok(obj)
}

fn cmd_verify(
    parsed: &ParsedGraph,
    mu: f64,
    tol: f64,
    exact: ExactArgs,
    solver: &SolverArgs,
    seed: u64,
    started: Instant,
) -> Result<Outcome, CliError> {
    let g = &parsed.graph;
    let cap = require_within_cap(g, exact)?;
    let options = VerifyOptions {
        tol,
        cap,
        solver: solver.config(seed),
    };
    let report = par_verify(g, mu, &options)?;
    let code = if !report.feasible {
        EXIT_INFEASIBLE
    } else if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok(finish(
        report_json(g, &report, &parsed.labels)?,
        started,
        code,
    ))
}

pub const PROFILE_COLUMNS: [&str; 8] = [
    "mu",
    "phi_mu",
    "witness_size",
    "lambda_mu_upper",
    "bound_lower",
    "bound_upper",
    "method",
    "feasible",
];

fn cmd_profile(
    parsed: &ParsedGraph,
    mus: &[f64],
    out: Option<&Path>,
    exact: ExactArgs,
    solver: &SolverArgs,
    seed: u64,
    started: Instant,
) -> Result<Outcome, CliError> {
    let g = &parsed.graph;
    let cap = require_within_cap(g, exact)?;
    let (_, fiedler) = lambda2(g)?;
    let config = solver.config(seed);
    let mut csv = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    csv.write_record(PROFILE_COLUMNS).map_err(csv_err)?;
    let mut rows = 0;
    for &mu in mus {
        let (method, phi0, phi_mu) = par_conductances(g, mu, cap, &fiedler)?;
        // Infeasible grid points have no row.
        let Some(cut) = &phi_mu.best else { continue };
        let extra = witness_seeds(g, &phi_mu)?;
        let solved = par_solve(g, mu, config, &extra)?;
        let lower = mu_lower_bound(phi0.value, cut.value, mu)?;
        csv.write_record([
            fmt_f64(snap(mu)),
            fmt_f64(cut.value),
            cut.witness.len().to_string(),
            fmt_f64(solved.value),
            fmt_f64(lower),
            fmt_f64(2.0 * cut.value),
            method_name(method).to_string(),
            "true".to_string(),
        ])
        .map_err(csv_err)?;
        rows += 1;
    }
    let bytes = csv
        .into_inner()
        .map_err(|e| CliError::Input(format!("csv: {e}")))?;
    let text = String::from_utf8(bytes).expect("CSV of ASCII fields is UTF-8");
    match out {
        Some(path) => {
            write_file(path, &text)?;
            let mut obj = Map::new();
            obj.insert("command".into(), json!("profile"));
            obj.insert("out".into(), json!(path.display().to_string()));
            obj.insert("rows".into(), json!(rows));
            Ok(finish(obj, started, EXIT_OK))
        }
        None => Ok(Outcome {
            stdout: text,
            code: EXIT_OK,
        }),
    }
}
