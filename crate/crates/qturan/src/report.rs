//! JSON payloads shared by the command line and its tests.

use qturan_core::robust::{ExperimentReport, RobustWitness};
use qturan_core::wstar::{StarViolation, WeightFunction};
use qturan_core::{Embedding, SearchResult};
use serde::Serialize;
use serde_json::{json, Value};

use crate::formats::{EmbeddingJson, QGraphJson, WStarJson};

/// One command invocation: what ran, with which parameters, and its result.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
}

pub fn search_result(r: &SearchResult, seconds: f64) -> Value {
    json!({
        "value": r.value,
        "status": r.status.as_str(),
        "witness": QGraphJson::from(&r.witness),
        "nodes": r.nodes,
        "seconds": seconds,
    })
}

pub fn embeddings(found: &[Embedding]) -> Value {
    json!({
        "found": !found.is_empty(),
        "count": found.len(),
        "embeddings": found.iter().map(EmbeddingJson::from).collect::<Vec<_>>(),
    })
}

pub fn verification(free: bool, copy: Option<&Embedding>) -> Value {
    json!({ "free": free, "embedding": copy.map(EmbeddingJson::from) })
}

pub fn robust(w: &RobustWitness) -> Value {
    json!({
        "chi1": w.chi1,
        "colouring": w.colouring,
        "removal_set": w.removal.edges.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
    })
}

pub fn experiment(r: &ExperimentReport) -> Value {
    json!({
        "m": r.m,
        "r": r.r,
        "p": r.p,
        "trials": r.trials,
        "seed": r.seed,
        "rng": r.rng,
        "frequency": r.frequency,
        "log": r.log.iter().map(|t| json!({
            "trial": t.trial, "edges": t.edges, "chi": t.chi, "chi1": t.chi1,
        })).collect::<Vec<_>>(),
    })
}

pub fn experiment_csv(r: &ExperimentReport) -> String {
    let mut out = String::from("trial,edges,chi,chi1\n");
    for t in &r.log {
        out.push_str(&format!("{},{},{},{}\n", t.trial, t.edges, t.chi, t.chi1));
    }
    out
}

pub fn wstar_max(k: usize, value: usize, w: &WeightFunction) -> Value {
    json!({ "k": k, "max": value, "witness": WStarJson::from(w) })
}

pub fn wstar_check(w: &WeightFunction) -> Value {
    let violation = match w.check_star() {
        Ok(()) => Value::Null,
        Err(StarViolation::Triangle(t)) => json!({ "kind": "triangle", "vertices": t }),
        Err(StarViolation::Square(c)) => json!({ "kind": "square", "cycle": c }),
    };
    json!({
        "k": w.k(),
        "star": violation.is_null(),
        "violation": violation,
        "total_weight": w.total_weight(),
        "degrees": (1..=w.k()).map(|v| w.degree(v)).collect::<Vec<_>>(),
    })
}
