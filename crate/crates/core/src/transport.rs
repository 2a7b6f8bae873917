//! Parallel transports.
//!
//! A transport assigns to each dart `e` a bijection from the darts leaving
//! `i(e)` to the darts leaving `t(e)` with `P_e(e) = rev(e)`, `P_rev(e) = P_e^-1`
//! and `alpha(P_e(e')) - alpha(e')` an integer multiple of `alpha(e)`.
//!
//! Search works one undirected edge at a time. Compatibility is symmetric:
//! if `alpha(e'') - alpha(e') = d * alpha(e)` then `alpha(e') - alpha(e'') = -d * alpha(e)`,
//! and `alpha(rev(e)) = +/- alpha(e)` generates the same multiples. So the
//! inverse of any valid bijection along `e` is valid along `rev(e)`, and a
//! transport exists iff each edge admits a perfect matching of its
//! compatibility graph. The matching is the lexicographically least one in
//! dart-id order for the lower dart of the pair; the other dart gets the
//! inverse.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DartId, GkmGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    maps: Vec<BTreeMap<DartId, DartId>>,
}

/// JSON shape of one dart's bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportRecord {
    pub dart: usize,
    pub maps: Vec<[usize; 2]>,
}

impl Transport {
    /// One map per dart, indexed by dart id.
    pub fn from_maps(maps: Vec<BTreeMap<DartId, DartId>>) -> Self {
        Transport { maps }
    }

    pub fn map(&self, e: DartId) -> &BTreeMap<DartId, DartId> {
        &self.maps[e.0]
    }

    pub fn apply(&self, e: DartId, e_prime: DartId) -> Option<DartId> {
        self.maps.get(e.0)?.get(&e_prime).copied()
    }

    pub fn records(&self) -> Vec<TransportRecord> {
        self.maps
            .iter()
            .enumerate()
            .map(|(dart, m)| TransportRecord { dart, maps: m.iter().map(|(a, b)| [a.0, b.0]).collect() })
            .collect()
    }

    pub fn from_records(records: &[TransportRecord]) -> Self {
        let len = records.iter().map(|r| r.dart + 1).max().unwrap_or(0);
        let mut maps = vec![BTreeMap::new(); len];
        for r in records {
            maps[r.dart] = r.maps.iter().map(|&[a, b]| (DartId(a), DartId(b))).collect();
        }
        Transport { maps }
    }
}

/// The integer `d` with `alpha(e'') - alpha(e') = d * alpha(e)`, if any.
pub fn compat_coefficient(g: &GkmGraph, e: DartId, e_prime: DartId, e_second: DartId) -> Result<Option<i64>> {
    let dart = g.dart(e);
    for (x, owner) in [(e_prime, dart.from), (e_second, dart.to)] {
        if x.0 >= g.darts().len() || g.dart(x).from != owner {
            return Err(Error::DartNotInSet { dart: x.0 });
        }
    }
    let diff = g.alpha(e_second).sub(g.alpha(e_prime));
    Ok(diff.integer_multiple_of(g.alpha(e)))
}

fn compatible(g: &GkmGraph, e: DartId, a: DartId, b: DartId) -> bool {
    g.alpha(b).sub(g.alpha(a)).integer_multiple_of(g.alpha(e)).is_some()
}

/// Kuhn's augmenting path step.
fn augment(u: usize, adj: &[Vec<usize>], used: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &w in &adj[u] {
        if used[w] {
            continue;
        }
        used[w] = true;
        if match_right[w].is_none_or(|other| augment(other, adj, used, match_right)) {
            match_right[w] = Some(u);
            return true;
        }
    }
    false
}

/// Every left vertex can be matched simultaneously.
fn saturates_left(adj: &[Vec<usize>], right_len: usize) -> bool {
    let mut match_right = vec![None; right_len];
    (0..adj.len()).all(|u| augment(u, adj, &mut vec![false; right_len], &mut match_right))
}

/// Lexicographically least perfect matching, or `None`.
fn least_perfect_matching(adj: &[Vec<usize>], right_len: usize) -> Option<Vec<usize>> {
    if adj.len() != right_len || !saturates_left(adj, right_len) {
        return None;
    }
    let mut taken = vec![false; right_len];
    let mut chosen = Vec::with_capacity(adj.len());
    for u in 0..adj.len() {
        let pick = adj[u].iter().copied().find(|&w| {
            if taken[w] {
                return false;
            }
            taken[w] = true;
            let rest: Vec<Vec<usize>> = adj[u + 1..]
                .iter()
                .map(|nbrs| nbrs.iter().copied().filter(|&x| !taken[x]).collect())
                .collect();
            let ok = saturates_left(&rest, right_len);
            taken[w] = false;
            ok
        })?;
        taken[pick] = true;
        chosen.push(pick);
    }
    Some(chosen)
}

/// Finds a parallel transport, or `None` if the graph admits none.
/// The graph must pass validation.
pub fn find_transport(g: &GkmGraph) -> Result<Option<Transport>> {
    g.ensure_valid()?;
    let mut maps = vec![BTreeMap::new(); g.darts().len()];
    for e in g.undirected_edges() {
        let dart = g.dart(e);
        let rev = dart.reverse;
        let left: Vec<DartId> = g.darts_from(dart.from)?.iter().copied().filter(|&x| x != e).collect();
        let right: Vec<DartId> = g.darts_from(dart.to)?.iter().copied().filter(|&x| x != rev).collect();
        let adj: Vec<Vec<usize>> = left
            .iter()
            .map(|&a| (0..right.len()).filter(|&j| compatible(g, e, a, right[j])).collect())
            .collect();
        let Some(matching) = least_perfect_matching(&adj, right.len()) else {
            return Ok(None);
        };
        let mut forward = BTreeMap::new();
        forward.insert(e, rev);
        for (i, &j) in matching.iter().enumerate() {
            forward.insert(left[i], right[j]);
        }
        let backward: BTreeMap<DartId, DartId> = forward.iter().map(|(&a, &b)| (b, a)).collect();
        maps[e.0] = forward;
        maps[rev.0] = backward;
    }
    Ok(Some(Transport { maps }))
}

/// Checks all three transport conditions on every dart.
pub fn check_transport(g: &GkmGraph, t: &Transport) -> bool {
    if t.maps.len() != g.darts().len() {
        return false;
    }
    g.darts().iter().all(|dart| {
        let e = dart.id;
        let map = &t.maps[e.0];
        let (Ok(src), Ok(dst)) = (g.darts_from(dart.from), g.darts_from(dart.to)) else {
            return false;
        };
        // bijection E_{i(e)} -> E_{t(e)}
        let domain_ok = map.len() == src.len() && src.iter().all(|x| map.contains_key(x));
        let mut image: Vec<DartId> = map.values().copied().collect();
        image.sort();
        let mut target = dst.to_vec();
        target.sort();
        if !domain_ok || image != target {
            return false;
        }
        let inverse_ok = map.iter().all(|(a, b)| t.maps[dart.reverse.0].get(b) == Some(a))
            && t.maps[dart.reverse.0].len() == map.len();
        let fixes_self = map.get(&e) == Some(&dart.reverse);
        let compat_ok = map.iter().all(|(&a, &b)| compatible(g, e, a, b));
        inverse_ok && fixes_self && compat_ok
    })
}

/// The coefficients `d_{e,e'}` with `alpha(P_e(e')) - alpha(e') = d_{e,e'} * alpha(e)`.
pub fn transport_coefficients(g: &GkmGraph, t: &Transport, e: DartId) -> Result<BTreeMap<DartId, i64>> {
    let mut out = BTreeMap::new();
    for &e_prime in g.darts_from(g.dart(e).from)? {
        let image = t
            .apply(e, e_prime)
            .ok_or_else(|| Error::Invariant(format!("transport has no image for {e_prime} along {e}")))?;
        let d = compat_coefficient(g, e, e_prime, image)?
            .ok_or_else(|| Error::Invariant(format!("{e_prime} -> {image} along {e} is not compatible")))?;
        out.insert(e_prime, d);
    }
    Ok(out)
}

/// Valid axial function and at least one parallel transport.
pub fn is_gkm(g: &GkmGraph) -> bool {
    g.validate().is_valid() && matches!(find_transport(g), Ok(Some(_)))
}
