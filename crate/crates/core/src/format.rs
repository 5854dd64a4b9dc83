//! External file formats and renderings.
//!
//! One JSON problem format binds all modules; models travel as a JSON
//! object listing nodes and one function per node. Node names map to
//! 0-based indices in declaration order, and that order fixes the literal
//! order, all tie-breaking, and every configuration/hypercube string
//! rendering. Validation errors carry a diagnostic code and a field path.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bn::{BooleanNetwork, Clause, InfluenceGraph, MonotoneDnf, SignedLiteral};
use crate::candidates::ClauseBound;
use crate::error::{Error, Result};
use crate::synthesis::{Observation, Solution, SynthesisProblem};

#[derive(Debug, Serialize, Deserialize)]
struct LiteralJson {
    var: String,
    sign: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum FunctionJson {
    Const {
        #[serde(rename = "const")]
        value: u8,
    },
    Clauses {
        clauses: Vec<Vec<LiteralJson>>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ModelJson {
    nodes: Vec<String>,
    functions: BTreeMap<String, FunctionJson>,
}

fn resolve(names: &[String], name: &str, path: &str) -> Result<usize> {
    names.iter().position(|n| n == name).ok_or_else(|| {
        Error::validation("unknown_node", path.to_string(), format!("unknown node {name:?}"))
    })
}

fn check_unique_names(names: &[String], path: &str) -> Result<()> {
    for (i, a) in names.iter().enumerate() {
        if names[i + 1..].contains(a) {
            return Err(Error::validation(
                "duplicate_node",
                path.to_string(),
                format!("node {a:?} declared twice"),
            ));
        }
    }
    Ok(())
}

fn sign_from_str(s: &str, path: &str) -> Result<bool> {
    match s {
        "+" => Ok(true),
        "-" => Ok(false),
        _ => Err(Error::validation(
            "bad_sign",
            path.to_string(),
            format!("sign must be \"+\" or \"-\", got {s:?}"),
        )),
    }
}

/// Parses a model file into its node names and network.
pub fn parse_model(text: &str) -> Result<(Vec<String>, BooleanNetwork)> {
    let model: ModelJson = serde_json::from_str(text)?;
    model_from_json(&model)
}

pub fn parse_model_path(path: impl AsRef<Path>) -> Result<(Vec<String>, BooleanNetwork)> {
    parse_model(&std::fs::read_to_string(path)?)
}

fn model_from_json(model: &ModelJson) -> Result<(Vec<String>, BooleanNetwork)> {
    check_unique_names(&model.nodes, "nodes")?;
    for name in model.functions.keys() {
        resolve(&model.nodes, name, "functions")?;
    }
    let mut locals = Vec::with_capacity(model.nodes.len());
    for name in &model.nodes {
        let path = format!("functions.{name}");
        let f = model.functions.get(name).ok_or_else(|| {
            Error::validation("missing_function", path.clone(), "no function for this node")
        })?;
        locals.push(function_from_json(f, &model.nodes, &path)?);
    }
    Ok((model.nodes.clone(), BooleanNetwork::new(locals)?))
}

fn function_from_json(f: &FunctionJson, names: &[String], path: &str) -> Result<MonotoneDnf> {
    match f {
        FunctionJson::Const { value } => match value {
            0 => Ok(MonotoneDnf::Const(false)),
            1 => Ok(MonotoneDnf::Const(true)),
            _ => Err(Error::validation("bad_value", path.to_string(), "constant must be 0 or 1")),
        },
        FunctionJson::Clauses { clauses } => {
            let mut out = Vec::with_capacity(clauses.len());
            for (k, lits) in clauses.iter().enumerate() {
                let cpath = format!("{path}.clauses[{k}]");
                let mut literals = Vec::with_capacity(lits.len());
                for l in lits {
                    literals.push(SignedLiteral::new(
                        resolve(names, &l.var, &cpath)?,
                        sign_from_str(&l.sign, &cpath)?,
                    ));
                }
                out.push(Clause::new(literals).map_err(|e| match e {
                    Error::Validation { code, message, .. } => Error::Validation {
                        code,
                        path: cpath.clone(),
                        message,
                    },
                    other => other,
                })?);
            }
            MonotoneDnf::new(out).map_err(|e| match e {
                Error::Validation { code, message, .. } => Error::Validation {
                    code,
                    path: path.to_string(),
                    message,
                },
                other => other,
            })
        }
    }
}

/// Serializes a network with its node names.
pub fn model_to_json(names: &[String], f: &BooleanNetwork) -> serde_json::Value {
    serde_json::json!({
        "nodes": names,
        "functions": functions_to_json(names, f),
    })
}

pub fn functions_to_json(names: &[String], f: &BooleanNetwork) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (i, name) in names.iter().enumerate() {
        map.insert(name.clone(), function_to_json(names, f.local(i)));
    }
    serde_json::Value::Object(map)
}

fn function_to_json(names: &[String], dnf: &MonotoneDnf) -> serde_json::Value {
    match dnf {
        MonotoneDnf::Const(v) => serde_json::json!({ "const": *v as u8 }),
        MonotoneDnf::Clauses(clauses) => serde_json::json!({
            "clauses": clauses
                .iter()
                .map(|c| {
                    c.literals()
                        .iter()
                        .map(|l| serde_json::json!({
                            "var": names[l.var],
                            "sign": if l.positive { "+" } else { "-" },
                        }))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
        }),
    }
}

/// Human rendering of one local function, clauses in canonical order:
/// `a := (!b & c) | d`.
pub fn render_function(names: &[String], target: &str, dnf: &MonotoneDnf) -> String {
    let body = match dnf {
        MonotoneDnf::Const(v) => (*v as u8).to_string(),
        MonotoneDnf::Clauses(clauses) => clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c
                    .literals()
                    .iter()
                    .map(|l| format!("{}{}", if l.positive { "" } else { "!" }, names[l.var]))
                    .collect();
                if lits.len() == 1 {
                    lits[0].clone()
                } else {
                    format!("({})", lits.join(" & "))
                }
            })
            .collect::<Vec<_>>()
            .join(" | "),
    };
    format!("{target} := {body}")
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeJson {
    from: String,
    to: String,
    sign: String,
}

/// Observation values: a map node → 0|1, or a pair list that can also
/// express (and therefore report) contradictory bindings.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ObservationJson {
    Map(BTreeMap<String, u8>),
    Pairs(Vec<(String, u8)>),
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct ConstraintsJson {
    #[serde(default)]
    reach: Vec<(String, String)>,
    #[serde(default)]
    nonreach: Vec<(String, String)>,
    #[serde(default)]
    fixpoint: Vec<String>,
    #[serde(default)]
    trap: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ClauseBoundJson {
    Max(String),
    Limit(u64),
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct OptionsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_clauses: Option<ClauseBoundJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    max_clauses_per_node: BTreeMap<String, ClauseBoundJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    distinct: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProblemJson {
    nodes: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeJson>,
    #[serde(default)]
    observations: BTreeMap<String, ObservationJson>,
    #[serde(default)]
    constraints: Option<ConstraintsJson>,
    #[serde(default)]
    options: Option<OptionsJson>,
}

fn bound_from_json(b: &ClauseBoundJson, path: &str) -> Result<ClauseBound> {
    match b {
        ClauseBoundJson::Max(s) if s == "max" => Ok(ClauseBound::Max),
        ClauseBoundJson::Max(s) => Err(Error::validation(
            "bad_clause_bound",
            path.to_string(),
            format!("expected \"max\" or an integer, got {s:?}"),
        )),
        ClauseBoundJson::Limit(k) => Ok(ClauseBound::Limit(*k as usize)),
    }
}

/// Parses and validates a problem file; returns the node names (defining
/// all external orderings) and the problem.
pub fn parse_problem(text: &str) -> Result<(Vec<String>, SynthesisProblem)> {
    let pj: ProblemJson = serde_json::from_str(text)?;
    problem_from_json(&pj)
}

pub fn parse_problem_path(path: impl AsRef<Path>) -> Result<(Vec<String>, SynthesisProblem)> {
    parse_problem(&std::fs::read_to_string(path)?)
}

fn problem_from_json(pj: &ProblemJson) -> Result<(Vec<String>, SynthesisProblem)> {
    check_unique_names(&pj.nodes, "nodes")?;
    let n = pj.nodes.len();
    let mut graph = InfluenceGraph::empty(n);
    for (k, e) in pj.edges.iter().enumerate() {
        let path = format!("edges[{k}]");
        let from = resolve(&pj.nodes, &e.from, &path)?;
        let to = resolve(&pj.nodes, &e.to, &path)?;
        graph.add_edge(from, to, sign_from_str(&e.sign, &path)?);
    }

    let mut observations = Vec::new();
    for (name, values) in &pj.observations {
        let path = format!("observations.{name}");
        let pairs: Vec<(String, u8)> = match values {
            ObservationJson::Map(m) => m.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            ObservationJson::Pairs(p) => p.clone(),
        };
        let mut resolved = Vec::with_capacity(pairs.len());
        for (node, v) in pairs {
            if v > 1 {
                return Err(Error::validation(
                    "bad_value",
                    format!("{path}.{node}"),
                    format!("observed value must be 0 or 1, got {v}"),
                ));
            }
            resolved.push((resolve(&pj.nodes, &node, &path)?, v == 1));
        }
        observations.push(Observation::new(name.clone(), resolved)?);
    }

    let obs_index = |name: &str, path: &str| -> Result<usize> {
        observations
            .iter()
            .position(|o| o.name() == name)
            .ok_or_else(|| {
                Error::validation(
                    "unknown_observation",
                    path.to_string(),
                    format!("unknown observation {name:?}"),
                )
            })
    };

    let default_constraints = ConstraintsJson::default();
    let c = pj.constraints.as_ref().unwrap_or(&default_constraints);
    let mut pr = Vec::new();
    for (a, b) in &c.reach {
        pr.push((obs_index(a, "constraints.reach")?, obs_index(b, "constraints.reach")?));
    }
    let mut nr = Vec::new();
    for (a, b) in &c.nonreach {
        nr.push((obs_index(a, "constraints.nonreach")?, obs_index(b, "constraints.nonreach")?));
    }
    let mut fp = Vec::new();
    for a in &c.fixpoint {
        fp.push(obs_index(a, "constraints.fixpoint")?);
    }
    let mut tp = Vec::new();
    for (a, node) in &c.trap {
        tp.push((
            obs_index(a, "constraints.trap")?,
            resolve(&pj.nodes, node, "constraints.trap")?,
        ));
    }

    let mut distinct_groups = Vec::new();
    if let Some(options) = &pj.options {
        for (k, g) in options.distinct.iter().enumerate() {
            let mut group = Vec::with_capacity(g.len());
            for name in g {
                group.push(obs_index(name, &format!("options.distinct[{k}]"))?);
            }
            distinct_groups.push(group);
        }
    }

    let mut problem = SynthesisProblem::new(graph, observations, pr, nr, fp, tp)?
        .with_distinct(distinct_groups)?;
    if let Some(options) = &pj.options {
        if let Some(b) = &options.max_clauses {
            problem = problem.with_default_bound(bound_from_json(b, "options.max_clauses")?);
        }
        for (node, b) in &options.max_clauses_per_node {
            let path = format!("options.max_clauses_per_node.{node}");
            let idx = resolve(&pj.nodes, node, &path)?;
            problem = problem.with_node_bound(idx, bound_from_json(b, &path)?);
        }
    }
    Ok((pj.nodes.clone(), problem))
}

/// Serializes a problem back to the file format.
pub fn problem_to_json(names: &[String], problem: &SynthesisProblem) -> serde_json::Value {
    let obs_name = |m: usize| problem.observations()[m].name().to_string();
    let edges: Vec<_> = problem
        .graph()
        .positive_edges()
        .map(|(j, i)| (j, i, "+"))
        .chain(problem.graph().negative_edges().map(|(j, i)| (j, i, "-")))
        .map(|(j, i, s)| serde_json::json!({ "from": names[j], "to": names[i], "sign": s }))
        .collect();
    let mut observations = serde_json::Map::new();
    for o in problem.observations() {
        let mut values = serde_json::Map::new();
        for (&i, &v) in o.values() {
            values.insert(names[i].clone(), serde_json::json!(v as u8));
        }
        observations.insert(o.name().to_string(), serde_json::Value::Object(values));
    }
    let bound_json = |b: ClauseBound| match b {
        ClauseBound::Max => serde_json::json!("max"),
        ClauseBound::Limit(k) => serde_json::json!(k),
    };
    let mut options = serde_json::Map::new();
    options.insert("max_clauses".into(), bound_json(problem.default_bound()));
    let per_node: serde_json::Map<String, serde_json::Value> = (0..problem.dimension())
        .filter(|&i| problem.bound_for(i) != problem.default_bound())
        .map(|i| (names[i].clone(), bound_json(problem.bound_for(i))))
        .collect();
    if !per_node.is_empty() {
        options.insert("max_clauses_per_node".into(), serde_json::Value::Object(per_node));
    }
    if !problem.distinct().is_empty() {
        options.insert(
            "distinct".into(),
            serde_json::json!(problem
                .distinct()
                .iter()
                .map(|g| g.iter().map(|&m| obs_name(m)).collect::<Vec<_>>())
                .collect::<Vec<_>>()),
        );
    }
    serde_json::json!({
        "nodes": names,
        "edges": edges,
        "observations": observations,
        "constraints": {
            "reach": problem.pr().iter().map(|&(a, b)| (obs_name(a), obs_name(b))).collect::<Vec<_>>(),
            "nonreach": problem.nr().iter().map(|&(a, b)| (obs_name(a), obs_name(b))).collect::<Vec<_>>(),
            "fixpoint": problem.fp().iter().map(|&m| obs_name(m)).collect::<Vec<_>>(),
            "trap": problem.tp().iter().map(|&(m, i)| (obs_name(m), names[i].clone())).collect::<Vec<_>>(),
        },
        "options": options,
    })
}

/// One JSON-lines record per solution: the model "functions" payload plus
/// an optional witness map observation name → configuration string.
pub fn solution_to_json(names: &[String], problem: &SynthesisProblem, s: &Solution, with_witness: bool) -> serde_json::Value {
    let mut obj = serde_json::Map::new();
    obj.insert("functions".into(), functions_to_json(names, &s.network));
    if with_witness {
        if let Some(witness) = &s.witness {
            let mut map = serde_json::Map::new();
            for (o, x) in problem.observations().iter().zip(witness) {
                map.insert(o.name().to_string(), serde_json::json!(x.to_string()));
            }
            obj.insert("witness".into(), serde_json::Value::Object(map));
        }
    }
    serde_json::Value::Object(obj)
}
