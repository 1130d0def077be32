//! JSON-lines report records. Each record is one line with a `record` field naming its
//! kind; field names are stable. See `docs/report-format.md`.

use serde_json::{json, Value};

use super::OrbitGraph;
use crate::upperbound::{GeneratorPresentation, MembershipReport};
use crate::verify::SuiteResult;

pub fn membership(seed: Option<&str>, expression: &str, r: &MembershipReport) -> Value {
    json!({
        "record": "membership",
        "seed": seed,
        "expression": expression,
        "verdict": r.verdict,
        "w_laurent": r.w_laurent,
        "w_witness": r.w_witness,
        "directions": r.directions,
    })
}

pub fn generators(seed: Option<&str>, p: &GeneratorPresentation) -> Value {
    json!({
        "record": "generators",
        "seed": seed,
        "shape": p.shape,
        "k": p.k,
        "coordinate_change": p.coordinate_change.as_ref().map(|m| m.as_rows().to_vec()),
        "generators": p.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "labels": p.labels,
    })
}

pub fn orbit(g: &OrbitGraph) -> Value {
    json!({
        "record": "orbit",
        "nodes": g.nodes,
        "edges": g.edges,
        "depth_bound": g.depth_bound,
        "depth_reached": g.depth_reached,
        "truncated": g.truncated,
    })
}

pub fn verify(r: &SuiteResult) -> Value {
    json!({
        "record": "verify",
        "suite": r.suite,
        "cases": r.cases,
        "passed": r.passed,
        "failures": r.failures,
    })
}

/// Serializes a record as a single line.
pub fn line(v: &Value) -> String {
    serde_json::to_string(v).expect("json values serialize")
}
