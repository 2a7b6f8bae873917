//! Small example graphs shipped with the crate (also available as JSON under `fixtures/`).
//!
//! * `segment`: two vertices, one edge labelled `x1` both ways.
//! * `doubled`: two vertices joined by edges labelled `x1` and `x2`, reverse signs `+1`.
//! * `doubled-mixed-signs`: as `doubled` with the second reverse label negated; has no transport.
//! * `cp2`, `cp3`: the complete graphs of the projective plane and 3-space.
//! * `hirz{a}`: 4-cycles of the Hirzebruch surfaces, `a = 0..=3`.
//! * `hirz1-flipped`: `hirz1` with one reverse label flipped; has no transport.
//! * `two-segments`: disjoint union of two segments.
//! * `corrupted`: a triangle with labels `x1` and `2*x1` at one vertex.

use crate::graph::GkmGraph;

pub const SOURCES: &[(&str, &str)] = &[
    ("segment", include_str!("../fixtures/segment.json")),
    ("doubled", include_str!("../fixtures/doubled.json")),
    ("doubled-mixed-signs", include_str!("../fixtures/doubled-mixed-signs.json")),
    ("cp2", include_str!("../fixtures/cp2.json")),
    ("cp2-relabel", include_str!("../fixtures/cp2-relabel.json")),
    ("cp3", include_str!("../fixtures/cp3.json")),
    ("hirz0", include_str!("../fixtures/hirz0.json")),
    ("hirz1", include_str!("../fixtures/hirz1.json")),
    ("hirz2", include_str!("../fixtures/hirz2.json")),
    ("hirz3", include_str!("../fixtures/hirz3.json")),
    ("hirz1-flipped", include_str!("../fixtures/hirz1-flipped.json")),
    ("two-segments", include_str!("../fixtures/two-segments.json")),
    ("corrupted", include_str!("../fixtures/corrupted.json")),
];

/// Names of the fixtures that are GKM graphs.
pub const GKM_NAMES: &[&str] = &[
    "segment",
    "doubled",
    "cp2",
    "cp2-relabel",
    "cp3",
    "hirz0",
    "hirz1",
    "hirz2",
    "hirz3",
    "two-segments",
];

pub fn by_name(name: &str) -> Option<GkmGraph> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| GkmGraph::from_json(src).expect("bundled fixture parses"))
}

fn get(name: &str) -> GkmGraph {
    by_name(name).expect("bundled fixture exists")
}

pub fn segment() -> GkmGraph {
    get("segment")
}

pub fn doubled() -> GkmGraph {
    get("doubled")
}

pub fn doubled_mixed() -> GkmGraph {
    get("doubled-mixed-signs")
}

pub fn cp2() -> GkmGraph {
    get("cp2")
}

pub fn cp3() -> GkmGraph {
    get("cp3")
}

pub fn hirz(a: u32) -> GkmGraph {
    get(&format!("hirz{a}"))
}

pub fn two_segments() -> GkmGraph {
    get("two-segments")
}

pub fn corrupted() -> GkmGraph {
    get("corrupted")
}

pub fn all_gkm() -> Vec<(&'static str, GkmGraph)> {
    GKM_NAMES.iter().map(|&n| (n, get(n))).collect()
}
