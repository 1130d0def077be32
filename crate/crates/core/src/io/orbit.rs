use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use serde::Serialize;

use crate::algebra::BinomialRationalFn;
use crate::lattice::{LatticeVector, SkewForm};
use crate::mutation::{fn_mutate, ExchangeCollection, MutationError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitNode {
    /// Exact canonical encoding used for deduplication.
    pub key: String,
    /// Collection summary.
    pub label: String,
    pub depth: usize,
    #[serde(skip)]
    pub collection: ExchangeCollection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitEdge {
    pub from: usize,
    pub direction: LatticeVector,
    pub to: usize,
}

/// Breadth-first mutation graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitGraph {
    pub nodes: Vec<OrbitNode>,
    pub edges: Vec<OrbitEdge>,
    pub depth_bound: usize,
    pub depth_reached: usize,
    /// Some node at the depth bound has a mutation leading outside the graph.
    pub truncated: bool,
}

#[derive(Clone)]
struct State {
    collection: ExchangeCollection,
    potential: Option<BinomialRationalFn>,
}

fn key(form: &SkewForm, s: &State) -> String {
    let mut k = format!("{}|{}", form.matrix(), s.collection);
    if let Some(p) = &s.potential {
        let _ = write!(k, "|{p}");
    }
    k
}

fn successors(form: &SkewForm, s: &State) -> Result<Vec<(LatticeVector, State)>, MutationError> {
    let mut out = Vec::new();
    for (d, _) in s.collection.iter() {
        let collection = s.collection.mutate(d, form)?;
        let potential = match &s.potential {
            Some(p) => Some(fn_mutate(p, d, form)?),
            None => None,
        };
        out.push((d.clone(), State { collection, potential }));
    }
    Ok(out)
}

/// Explores collection mutations from `collection` up to `depth` steps. With a potential
/// the nodes carry it too, and two nodes coincide only when their potentials render alike.
pub fn explore_orbit(
    form: &SkewForm,
    collection: &ExchangeCollection,
    potential: Option<&BinomialRationalFn>,
    depth: usize,
) -> Result<OrbitGraph, MutationError> {
    let start = State { collection: collection.clone(), potential: potential.cloned() };
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut nodes = Vec::new();
    let mut states = Vec::new();
    let k0 = key(form, &start);
    index.insert(k0.clone(), 0);
    nodes.push(OrbitNode { key: k0, label: start.collection.to_string(), depth: 0, collection: start.collection.clone() });
    states.push(start);

    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    while let Some(i) = queue.pop_front() {
        let here = nodes[i].depth;
        for (d, next) in successors(form, &states[i])? {
            let k = key(form, &next);
            if here == depth {
                truncated |= !index.contains_key(&k);
                continue;
            }
            let j = match index.get(&k) {
                Some(&j) => j,
                None => {
                    let j = nodes.len();
                    index.insert(k.clone(), j);
                    nodes.push(OrbitNode {
                        key: k,
                        label: next.collection.to_string(),
                        depth: here + 1,
                        collection: next.collection.clone(),
                    });
                    states.push(next);
                    queue.push_back(j);
                    j
                }
            };
            edges.push(OrbitEdge { from: i, direction: d, to: j });
        }
    }
    let depth_reached = nodes.iter().map(|n| n.depth).max().unwrap_or(0);
    Ok(OrbitGraph { nodes, edges, depth_bound: depth, depth_reached, truncated })
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. Output depends only on the graph.
pub fn to_dot(g: &OrbitGraph) -> String {
    let mut out = String::from("digraph orbit {\n");
    for (i, n) in g.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&n.label));
    }
    for e in &g.edges {
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, escape(&e.direction.to_string()));
    }
    out.push_str("}\n");
    out
}
