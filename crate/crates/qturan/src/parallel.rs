//! Thread-parallel drivers over the core search routines.

use std::time::{Duration, Instant};

use qturan_core::extremal::{forbidden_configs, ForbiddenHypergraph, Solver, DEFAULT_GROUND_CAP};
use qturan_core::robust::{chi1_trial, experiment_report, ExperimentReport};
use qturan_core::{Budget, Error, PatternGraph, SearchResult};
use rayon::prelude::*;

/// `jobs = 0` means one worker per available core.
pub fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool")
}

/// Node and wall-clock limits; `None` is unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Limits {
    pub nodes: Option<u64>,
    pub seconds: Option<f64>,
}

/// Solves with root branches spread over `jobs` workers.
pub fn solve(hg: &ForbiddenHypergraph, limits: Limits, jobs: usize) -> Result<SearchResult, Error> {
    if let Some(s) = limits.seconds {
        if s.is_nan() || s <= 0.0 {
            return Err(Error::Parameter(format!("time budget must be positive, got {s}")));
        }
    }
    let deadline = limits.seconds.map(|s| Instant::now() + Duration::from_secs_f64(s));
    let expired = move || deadline.is_some_and(|d| Instant::now() >= d);
    let budget = Budget {
        max_nodes: limits.nodes.unwrap_or(u64::MAX),
        expired: deadline.is_some().then_some(&expired as &(dyn Fn() -> bool + Sync)),
    };
    let solver = Solver::new(hg, budget)?;
    let outcomes: Vec<_> =
        pool(jobs).install(|| (0..solver.root_branches()).into_par_iter().map(|i| solver.run_branch(i)).collect());
    Ok(solver.finish(outcomes))
}

pub fn extremal_number(
    n: usize,
    f: &PatternGraph,
    q: u32,
    s: u32,
    limits: Limits,
    jobs: usize,
) -> Result<SearchResult, Error> {
    let hg = forbidden_configs(n, q, f, s, DEFAULT_GROUND_CAP)?;
    solve(&hg, limits, jobs)
}

/// Trials in parallel; the report does not depend on `jobs`.
pub fn chi1_experiment(
    m: usize,
    r: usize,
    p: f64,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<ExperimentReport, Error> {
    let log = pool(jobs)
        .install(|| (0..trials).into_par_iter().map(|t| chi1_trial(m, r, p, seed, t)).collect::<Result<Vec<_>, _>>())?;
    Ok(experiment_report(m, r, p, seed, log))
}
