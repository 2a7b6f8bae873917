//! Command implementations behind the `gkm` binary.
//!
//! Every command returns an [`Outcome`]: the JSON document to print, the exit
//! code and any diagnostics for the error stream. Input problems (unreadable
//! files, malformed JSON, graphs failing the axioms where a valid graph is
//! required) always give code 2.

use std::path::Path;

use gkm_core::cohomology::{corollary_check, graded_bases, key_lemma_check, pq_witness, thom_class};
use gkm_core::graph::ValidationReport;
use gkm_core::rigidity::{
    find_graph_isomorphism, find_table_isomorphism, max_r, reconstruct_table, AlgebraData, PqTable,
};
use gkm_core::transport::{find_transport, is_gkm};
use gkm_core::{GkmGraph, VertexId};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub output: Option<Value>,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn result(holds: bool, output: Value) -> Self {
        Outcome { code: if holds { EXIT_OK } else { EXIT_FAILS }, output: Some(output), diagnostics: vec![] }
    }

    fn input_error(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_INPUT, output: None, diagnostics: vec![message.into()] }
    }

    fn note(mut self, message: impl Into<String>) -> Self {
        self.diagnostics.push(message.into());
        self
    }

    /// Pretty JSON with a trailing newline, or nothing.
    pub fn rendered(&self) -> Option<String> {
        self.output.as_ref().map(|v| {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
            s.push('\n');
            s
        })
    }
}

fn load(path: &Path) -> Result<GkmGraph, Outcome> {
    GkmGraph::load(path).map_err(|e| Outcome::input_error(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<GkmGraph, Outcome> {
    let g = load(path)?;
    let report = g.validate();
    if !report.is_valid() {
        return Err(Outcome::input_error(format!(
            "{}: graph fails the axioms ({})",
            path.display(),
            report.conditions().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
        )));
    }
    Ok(g)
}

fn load_gkm(path: &Path) -> Result<GkmGraph, Outcome> {
    let g = load_valid(path)?;
    if !is_gkm(&g) {
        return Err(Outcome::input_error(format!("{}: graph admits no transport, so it is not GKM", path.display())));
    }
    Ok(g)
}

fn report_json(g: &GkmGraph, report: &ValidationReport) -> Value {
    let issues: Vec<Value> = report
        .issues
        .iter()
        .map(|i| {
            json!({
                "condition": i.condition.to_string(),
                "vertices": i.vertices.iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
                "darts": i.darts.iter().map(|d| d.0).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "valid": report.is_valid(), "issues": issues })
}

pub fn cmd_validate(path: &Path) -> Outcome {
    let g = match load(path) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let report = g.validate();
    Outcome::result(report.is_valid(), report_json(&g, &report))
}

pub fn cmd_transport(path: &Path) -> Outcome {
    let g = match load_valid(path) {
        Ok(g) => g,
        Err(o) => return o,
    };
    match find_transport(&g) {
        Ok(Some(t)) => Outcome::result(true, json!({ "transport": t.records() })),
        Ok(None) => Outcome::result(false, json!({ "transport": null })).note("no parallel transport exists"),
        Err(e) => Outcome::input_error(e.to_string()),
    }
}

/// `max_cohdeg` is a cohomological (even) degree; `None` means `2n`.
pub fn cmd_cohomology(path: &Path, max_cohdeg: Option<u32>) -> Outcome {
    if let Some(d) = max_cohdeg.filter(|d| d % 2 == 1) {
        return Outcome::input_error(format!("--max-cohdeg must be even, got {d}"));
    }
    let g = match load_valid(path) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let max_degree = max_cohdeg.map_or(g.valence() as u32, |d| d / 2);
    match graded_bases(&g, max_degree) {
        Ok(bases) => Outcome::result(
            true,
            json!({
                "ranks": bases.iter().map(|b| b.rank()).collect::<Vec<_>>(),
                "pieces": bases.iter().map(|b| b.to_json(&g)).collect::<Vec<_>>(),
            }),
        ),
        Err(e) => Outcome::input_error(e.to_string()),
    }
}

pub fn cmd_thom(path: &Path) -> Outcome {
    let g = match load_valid(path) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let mut classes = Vec::new();
    for p in g.vertices() {
        match thom_class(&g, p) {
            Ok(t) => classes.push(json!({
                "vertex": g.name(p),
                "degree": 2 * t.degree(),
                "value": t.value(p).to_string(),
            })),
            Err(e) => return Outcome::input_error(e.to_string()),
        }
    }
    Outcome::result(true, json!({ "classes": classes }))
}

fn audit_pair(g: &GkmGraph, p: VertexId, q: VertexId) -> gkm_core::Result<(bool, Value)> {
    let adjacent = g.adjacent(p, q)?;
    let mut key_lemma = Value::Null;
    let mut corollary = Value::Null;
    let mut holds = true;
    if adjacent {
        let mut all = true;
        for (a, b) in [(p, q), (q, p)] {
            for e in g.darts_between(a, b)? {
                all &= key_lemma_check(g, a, b, e)?;
            }
        }
        let cor = corollary_check(g, p, q)? && corollary_check(g, q, p)?;
        holds &= all && cor;
        key_lemma = Value::Bool(all);
        corollary = Value::Bool(cor);
    }
    let witness = pq_witness(g, p, q).is_ok();
    let expected = g.p_poly(p, q)?.normalize_sign().body;
    let found = max_r(g, p, q)?.product;
    let characterization = found == expected;
    holds &= witness && characterization;
    let record = json!({
        "p": g.name(p),
        "q": g.name(q),
        "adjacent": adjacent,
        "key_lemma": key_lemma,
        "corollary": corollary,
        "witness_identity": witness,
        "p_pq": expected.to_string(),
        "max_r": found.to_string(),
        "characterization": characterization,
    });
    Ok((holds, record))
}

pub fn cmd_audit(path: &Path) -> Outcome {
    let g = match load_gkm(path) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let mut pairs = Vec::new();
    let mut holds = true;
    for p in g.vertices() {
        for q in g.vertices().filter(|&q| q > p) {
            match audit_pair(&g, p, q) {
                Ok((ok, record)) => {
                    holds &= ok;
                    pairs.push(record);
                }
                Err(e) => return Outcome::input_error(e.to_string()),
            }
        }
    }
    Outcome::result(holds, json!({ "holds": holds, "pairs": pairs }))
}

fn witness_json(a: &GkmGraph, b: &GkmGraph, map: Option<&[usize]>) -> Value {
    match map {
        Some(m) => {
            let obj: Map<String, Value> = m
                .iter()
                .enumerate()
                .map(|(i, &j)| (a.name(VertexId(i)).to_string(), Value::String(b.name(VertexId(j)).to_string())))
                .collect();
            Value::Object(obj)
        }
        None => Value::Null,
    }
}

/// Direct search for a graph isomorphism `a -> b`.
pub fn cmd_iso(a_path: &Path, b_path: &Path) -> Outcome {
    let (a, b) = match (load_valid(a_path), load_valid(b_path)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    match find_graph_isomorphism(&a, &b) {
        Ok(iso) => {
            let map: Option<Vec<usize>> = iso.map(|i| i.as_slice().iter().map(|v| v.0).collect());
            Outcome::result(
                map.is_some(),
                json!({ "isomorphic": map.is_some(), "witness": witness_json(&a, &b, map.as_deref()) }),
            )
        }
        Err(e) => Outcome::input_error(e.to_string()),
    }
}

fn table_json(t: &PqTable) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|(&(p, q), e)| {
            json!({
                "points": [p, q],
                "factors": e.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "product": e.product.to_string(),
            })
        })
        .collect();
    json!({ "points": t.points, "entries": entries })
}

/// Decides isomorphism from the two cohomology rings alone.
pub fn cmd_rigidity(a_path: &Path, b_path: &Path) -> Outcome {
    let (a, b) = match (load_gkm(a_path), load_gkm(b_path)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    let run = || -> gkm_core::Result<Value> {
        let (da, db) = (AlgebraData::from_graph(&a)?, AlgebraData::from_graph(&b)?);
        let (map, tables) = if da.rank == db.rank && da.points == db.points {
            let (ta, tb) = (reconstruct_table(&da)?, reconstruct_table(&db)?);
            (find_table_isomorphism(&ta, &tb), json!([table_json(&ta), table_json(&tb)]))
        } else {
            (None, Value::Null)
        };
        Ok(json!({
            "isomorphic": map.is_some(),
            "witness": witness_json(&a, &b, map.as_deref()),
            "tables": tables,
        }))
    };
    match run() {
        Ok(v) => Outcome::result(v["isomorphic"] == Value::Bool(true), v),
        Err(e) => Outcome::input_error(e.to_string()),
    }
}
