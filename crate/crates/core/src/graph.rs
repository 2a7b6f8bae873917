//! GKM graph data model.
//!
//! Darts (directed edges) are the primitive objects. Each undirected edge of
//! the file format becomes two darts `e` and its reverse; edge `k` of a file
//! yields dart `2k` in the listed direction and dart `2k + 1` reversed.
//! Both darts keep their own label, since the axial condition only fixes the
//! reverse label up to sign.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{product_of, IntPolynomial, LinearForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DartId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dart {
    pub id: DartId,
    pub from: VertexId,
    pub to: VertexId,
    pub reverse: DartId,
    pub alpha: LinearForm,
}

/// On-disk graph description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub rank: usize,
    pub valence: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub from: String,
    pub to: String,
    pub alpha: Vec<i64>,
    pub alpha_rev: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmGraph {
    rank: usize,
    valence: usize,
    names: Vec<String>,
    darts: Vec<Dart>,
    outgoing: Vec<Vec<DartId>>,
}

/// Which axiom a validation issue refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Valence,
    Involution,
    NoLoop,
    Sign,
    GkmIndependence,
    Primitivity,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Valence => "valence",
            Condition::Involution => "involution",
            Condition::NoLoop => "no-loop",
            Condition::Sign => "sign",
            Condition::GkmIndependence => "gkm-independence",
            Condition::Primitivity => "primitivity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub condition: Condition,
    pub vertices: Vec<VertexId>,
    pub darts: Vec<DartId>,
}

/// One entry per failed axiom; empty when every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn conditions(&self) -> Vec<Condition> {
        self.issues.iter().map(|i| i.condition).collect()
    }

    fn summary(&self) -> String {
        self.issues.iter().map(|i| i.condition.to_string()).collect::<Vec<_>>().join(", ")
    }
}

impl GkmGraph {
    /// Assembles a graph from explicit dart tables. Only index ranges and
    /// label lengths are checked here; the axioms are left to [`GkmGraph::validate`].
    pub fn from_parts(rank: usize, valence: usize, names: Vec<String>, darts: Vec<Dart>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut outgoing = vec![Vec::new(); names.len()];
        for (i, d) in darts.iter().enumerate() {
            if d.id.0 != i {
                return Err(Error::DartOutOfRange(d.id.0));
            }
            if d.reverse.0 >= darts.len() {
                return Err(Error::DartOutOfRange(d.reverse.0));
            }
            for v in [d.from, d.to] {
                if v.0 >= names.len() {
                    return Err(Error::VertexOutOfRange(v.0));
                }
            }
            if d.alpha.rank() != rank {
                return Err(Error::WrongLength { expected: rank, found: d.alpha.rank() });
            }
            outgoing[d.from.0].push(d.id);
        }
        Ok(GkmGraph { rank, valence, names, darts, outgoing })
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, name) in file.vertices.iter().enumerate() {
            if index.insert(name.as_str(), VertexId(i)).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()));
        let mut darts = Vec::with_capacity(2 * file.edges.len());
        for (k, edge) in file.edges.iter().enumerate() {
            let from = lookup(&edge.from)?;
            let to = lookup(&edge.to)?;
            if from == to {
                return Err(Error::Loop(k));
            }
            for v in [&edge.alpha, &edge.alpha_rev] {
                if v.len() != file.rank {
                    return Err(Error::WrongLength { expected: file.rank, found: v.len() });
                }
            }
            let alpha = LinearForm::new(edge.alpha.clone());
            let alpha_rev = LinearForm::new(edge.alpha_rev.clone());
            if alpha_rev != alpha && alpha_rev != alpha.negated() {
                return Err(Error::ReverseSign {
                    edge: k,
                    alpha: alpha.to_string(),
                    alpha_rev: alpha_rev.to_string(),
                });
            }
            let (fwd, back) = (DartId(2 * k), DartId(2 * k + 1));
            darts.push(Dart { id: fwd, from, to, reverse: back, alpha });
            darts.push(Dart { id: back, from: to, to: from, reverse: fwd, alpha: alpha_rev });
        }
        Self::from_parts(file.rank, file.valence, file.vertices.clone(), darts)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// File representation: one record per dart pair, listed from the lower dart id.
    pub fn to_file(&self) -> GraphFile {
        let edges = self
            .undirected_edges()
            .map(|d| {
                let dart = self.dart(d);
                EdgeRecord {
                    from: self.names[dart.from.0].clone(),
                    to: self.names[dart.to.0].clone(),
                    alpha: dart.alpha.coeffs().to_vec(),
                    alpha_rev: self.dart(dart.reverse).alpha.coeffs().to_vec(),
                }
            })
            .collect();
        GraphFile { rank: self.rank, valence: self.valence, vertices: self.names.clone(), edges }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len()).map(VertexId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(VertexId)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, e: DartId) -> &Dart {
        &self.darts[e.0]
    }

    pub fn alpha(&self, e: DartId) -> &LinearForm {
        &self.darts[e.0].alpha
    }

    /// One representative dart per undirected edge (the lower id of each pair).
    pub fn undirected_edges(&self) -> impl Iterator<Item = DartId> + '_ {
        self.darts.iter().filter(|d| d.id <= d.reverse).map(|d| d.id)
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 >= self.names.len() {
            return Err(Error::VertexOutOfRange(v.0));
        }
        Ok(())
    }

    /// `+1` if the reverse dart carries the same label, `-1` if the negated one.
    pub fn reverse_sign(&self, e: DartId) -> Option<i8> {
        let d = self.dart(e);
        let rev = &self.dart(d.reverse).alpha;
        if *rev == d.alpha {
            Some(1)
        } else if *rev == d.alpha.negated() {
            Some(-1)
        } else {
            None
        }
    }

    /// Darts leaving `p`, in id order.
    pub fn darts_from(&self, p: VertexId) -> Result<&[DartId]> {
        self.check_vertex(p)?;
        Ok(&self.outgoing[p.0])
    }

    /// Darts from `p` to `q`, in id order.
    pub fn darts_between(&self, p: VertexId, q: VertexId) -> Result<Vec<DartId>> {
        self.check_vertex(q)?;
        if p == q {
            return Err(Error::SameVertex);
        }
        Ok(self.darts_from(p)?.iter().copied().filter(|&e| self.dart(e).to == q).collect())
    }

    pub fn adjacent(&self, p: VertexId, q: VertexId) -> Result<bool> {
        Ok(!self.darts_between(p, q)?.is_empty())
    }

    fn labels(&self, darts: &[DartId]) -> Vec<LinearForm> {
        darts.iter().map(|&e| self.alpha(e).clone()).collect()
    }

    /// Product of the labels of all darts from `p` to `q`; 1 when not adjacent.
    pub fn p_poly(&self, p: VertexId, q: VertexId) -> Result<IntPolynomial> {
        let between = self.darts_between(p, q)?;
        Ok(product_of(self.rank, &self.labels(&between)))
    }

    /// Product of all labels at `p`, the value of the Thom class at its vertex.
    pub fn vertex_weight(&self, p: VertexId) -> Result<IntPolynomial> {
        let out = self.darts_from(p)?;
        Ok(product_of(self.rank, &self.labels(out)))
    }

    /// Number of other darts parallel to `e` whose reverse label is the exact negation.
    pub fn c_count(&self, e: DartId) -> usize {
        let d = self.dart(e);
        self.outgoing[d.from.0]
            .iter()
            .filter(|&&other| other != e && self.dart(other).to == d.to)
            .filter(|&&other| self.reverse_sign(other) == Some(-1))
            .count()
    }

    /// Splits the darts from `p` to `q` by parity of [`GkmGraph::c_count`]: (even, odd).
    pub fn eo_partition(&self, p: VertexId, q: VertexId) -> Result<(Vec<DartId>, Vec<DartId>)> {
        let between = self.darts_between(p, q)?;
        if between.is_empty() {
            return Err(Error::NotAdjacent(p.0, q.0));
        }
        Ok(between.into_iter().partition(|&e| self.c_count(e).is_multiple_of(2)))
    }

    /// Products of the labels at `p` and at `q` that do not run between `p` and `q`.
    pub fn pq_local(&self, p: VertexId, q: VertexId) -> Result<(IntPolynomial, IntPolynomial)> {
        self.check_vertex(p)?;
        self.check_vertex(q)?;
        if p == q {
            return Err(Error::SameVertex);
        }
        let away = |from: VertexId, to: VertexId| -> Vec<LinearForm> {
            self.outgoing[from.0]
                .iter()
                .filter(|&&e| self.dart(e).to != to)
                .map(|&e| self.alpha(e).clone())
                .collect()
        };
        Ok((product_of(self.rank, &away(p, q)), product_of(self.rank, &away(q, p))))
    }

    /// Connected components of the underlying graph.
    pub fn num_components(&self) -> usize {
        let n = self.names.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for d in &self.darts {
            let (a, b) = (find(&mut parent, d.from.0), find(&mut parent, d.to.0));
            parent[a] = b;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Checks every axiom and collects the offenders per condition.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut push = |condition, vertices: BTreeSet<VertexId>, darts: BTreeSet<DartId>| {
            if !vertices.is_empty() || !darts.is_empty() {
                report.issues.push(Issue {
                    condition,
                    vertices: vertices.into_iter().collect(),
                    darts: darts.into_iter().collect(),
                });
            }
        };

        let bad_valence: BTreeSet<VertexId> =
            self.vertices().filter(|v| self.outgoing[v.0].len() != self.valence).collect();
        push(Condition::Valence, bad_valence, BTreeSet::new());

        let bad_involution: BTreeSet<DartId> = self
            .darts
            .iter()
            .filter(|d| {
                let r = self.dart(d.reverse);
                d.reverse == d.id || r.reverse != d.id || r.from != d.to || r.to != d.from
            })
            .map(|d| d.id)
            .collect();
        push(Condition::Involution, BTreeSet::new(), bad_involution);

        let loops: BTreeSet<DartId> = self.darts.iter().filter(|d| d.from == d.to).map(|d| d.id).collect();
        push(Condition::NoLoop, BTreeSet::new(), loops);

        let bad_sign: BTreeSet<DartId> =
            self.darts.iter().filter(|d| self.reverse_sign(d.id).is_none()).map(|d| d.id).collect();
        push(Condition::Sign, BTreeSet::new(), bad_sign);

        let mut dep_vertices = BTreeSet::new();
        let mut dep_darts = BTreeSet::new();
        for v in self.vertices() {
            let out = &self.outgoing[v.0];
            for (i, &a) in out.iter().enumerate() {
                for &b in &out[i + 1..] {
                    if !self.alpha(a).has_nonzero_minor(self.alpha(b)) {
                        dep_vertices.insert(v);
                        dep_darts.insert(a);
                        dep_darts.insert(b);
                    }
                }
            }
        }
        push(Condition::GkmIndependence, dep_vertices, dep_darts);

        let imprimitive: BTreeSet<DartId> =
            self.darts.iter().filter(|d| d.alpha.gcd() != 1).map(|d| d.id).collect();
        push(Condition::Primitivity, BTreeSet::new(), imprimitive);

        report
    }

    /// Fails with [`Error::InvalidGraph`] unless every axiom holds.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report.summary()))
        }
    }
}
