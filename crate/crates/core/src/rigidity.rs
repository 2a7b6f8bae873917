//! Isomorphisms of GKM graphs and their recovery from cohomology.
//!
//! Two graphs over the same torus are isomorphic when a vertex bijection
//! matches every pair product `P_pq` up to sign. Since labels are primitive
//! and primitive linear forms are prime, that is the same as matching the
//! multisets of sign-normalized labels between every pair, which is what
//! [`PqTable`] stores.
//!
//! The reconstruction side works from [`AlgebraData`]: integer bases of the
//! graded pieces with vertex names dropped. It recovers one Thom class per
//! point as the generator of the singly supported classes of least degree,
//! then recovers `+/- P_pq` as the largest `R` for which
//! `R^2 g = tau_p^2 + tau_q^2` has a solution `g` in the algebra. The tables
//! obtained this way are compared with the same search as for graphs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::cohomology::{graded_bases, is_class, CohClass, Coordinates};
use crate::error::{Error, Result};
use crate::graph::{GkmGraph, VertexId};
use crate::lattice::{integer_kernel, IntVector, Lattice};
use crate::poly::{div_exact_product, product_of, split_linear_factors, IntPolynomial, LinearForm};

/// Vertex bijection `V' -> V`, stored as `map[p'] = p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphIso {
    map: Vec<VertexId>,
}

impl GraphIso {
    pub fn new(map: Vec<VertexId>) -> Self {
        GraphIso { map }
    }

    pub fn identity(points: usize) -> Self {
        GraphIso { map: (0..points).map(VertexId).collect() }
    }

    pub fn image(&self, p: VertexId) -> VertexId {
        self.map[p.0]
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.map
    }

    /// `self` after `first`: `p'' -> self(first(p''))`.
    pub fn compose(&self, first: &GraphIso) -> GraphIso {
        GraphIso { map: first.map.iter().map(|&p| self.map[p.0]).collect() }
    }
}

/// Sign-normalized label multiset between two vertices, with its product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PqEntry {
    pub factors: Vec<LinearForm>,
    pub product: IntPolynomial,
}

impl PqEntry {
    pub fn from_factors(nvars: usize, factors: &[LinearForm]) -> Self {
        let mut factors: Vec<LinearForm> = factors.iter().map(LinearForm::normalized).collect();
        factors.sort();
        let product = product_of(nvars, &factors);
        PqEntry { factors, product }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }
}

/// Nonempty pair entries, keyed by `(p, q)` with `p < q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqTable {
    pub rank: usize,
    pub points: usize,
    pub entries: BTreeMap<(usize, usize), PqEntry>,
}

impl PqTable {
    pub fn get(&self, p: usize, q: usize) -> Option<&PqEntry> {
        let key = if p < q { (p, q) } else { (q, p) };
        self.entries.get(&key)
    }

    /// Sorted multiset of the entries touching `p`.
    fn invariant(&self, p: usize) -> Vec<&PqEntry> {
        let mut inv: Vec<&PqEntry> = (0..self.points).filter(|&q| q != p).filter_map(|q| self.get(p, q)).collect();
        inv.sort();
        inv
    }
}

pub fn pq_table(g: &GkmGraph) -> Result<PqTable> {
    g.ensure_valid()?;
    let mut entries = BTreeMap::new();
    for p in g.vertices() {
        for q in g.vertices().filter(|q| *q > p) {
            let between = g.darts_between(p, q)?;
            if !between.is_empty() {
                let labels: Vec<LinearForm> = between.iter().map(|&e| g.alpha(e).clone()).collect();
                entries.insert((p.0, q.0), PqEntry::from_factors(g.rank(), &labels));
            }
        }
    }
    Ok(PqTable { rank: g.rank(), points: g.num_vertices(), entries })
}

/// Bijection `a -> b` matching every pair entry, found by backtracking.
///
/// Points of `a` are visited in order of their invariant (sorted incident
/// entries) and candidates in `b` must carry the same invariant.
pub fn find_table_isomorphism(a: &PqTable, b: &PqTable) -> Option<Vec<usize>> {
    if a.rank != b.rank || a.points != b.points || a.entries.len() != b.entries.len() {
        return None;
    }
    let inv_a: Vec<Vec<&PqEntry>> = (0..a.points).map(|p| a.invariant(p)).collect();
    let inv_b: Vec<Vec<&PqEntry>> = (0..b.points).map(|p| b.invariant(p)).collect();
    let mut sorted_a = inv_a.clone();
    let mut sorted_b = inv_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }
    let mut order: Vec<usize> = (0..a.points).collect();
    order.sort_by(|&x, &y| inv_a[x].cmp(&inv_a[y]).then(x.cmp(&y)));

    struct Search<'s, 'e> {
        a: &'s PqTable,
        b: &'s PqTable,
        inv_a: &'s [Vec<&'e PqEntry>],
        inv_b: &'s [Vec<&'e PqEntry>],
        order: &'s [usize],
        map: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_, '_> {
        fn extend(&mut self, depth: usize) -> bool {
            let Some(&p) = self.order.get(depth) else {
                return true;
            };
            for w in 0..self.b.points {
                if self.used[w] || self.inv_a[p] != self.inv_b[w] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&u| {
                    let image = self.map[u].expect("assigned earlier");
                    self.a.get(u, p) == self.b.get(image, w)
                });
                if !consistent {
                    continue;
                }
                self.map[p] = Some(w);
                self.used[w] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.map[p] = None;
                self.used[w] = false;
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        inv_a: &inv_a,
        inv_b: &inv_b,
        order: &order,
        map: vec![None; a.points],
        used: vec![false; b.points],
    };
    if search.extend(0) {
        Some(search.map.into_iter().map(|m| m.expect("complete assignment")).collect())
    } else {
        None
    }
}

/// An isomorphism `g_prime -> g`, if one exists.
pub fn find_graph_isomorphism(g_prime: &GkmGraph, g: &GkmGraph) -> Result<Option<GraphIso>> {
    let (a, b) = (pq_table(g_prime)?, pq_table(g)?);
    Ok(find_table_isomorphism(&a, &b).map(|m| GraphIso::new(m.into_iter().map(VertexId).collect())))
}

/// Checks the defining condition directly: `P_{phi(p') phi(q')} = +/- P_{p'q'}` for all pairs.
pub fn is_graph_isomorphism(g_prime: &GkmGraph, g: &GkmGraph, iso: &GraphIso) -> Result<bool> {
    if g_prime.rank() != g.rank() || g_prime.num_vertices() != g.num_vertices() {
        return Ok(false);
    }
    let mut seen = BTreeSet::new();
    if !iso.map.iter().all(|v| v.0 < g.num_vertices() && seen.insert(*v)) || iso.map.len() != g.num_vertices() {
        return Ok(false);
    }
    for p in g_prime.vertices() {
        for q in g_prime.vertices().filter(|q| *q != p) {
            let lhs = g.p_poly(iso.image(p), iso.image(q))?.normalize_sign().body;
            let rhs = g_prime.p_poly(p, q)?.normalize_sign().body;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(phi^* f)(p') = f(phi(p'))`, checked to be a class on `g_prime`.
pub fn pullback(iso: &GraphIso, f: &CohClass, g_prime: &GkmGraph) -> Result<CohClass> {
    let values: Vec<IntPolynomial> = iso.map.iter().map(|&p| f.value(p).clone()).collect();
    let out = CohClass::new(values, f.degree())?;
    if !is_class(g_prime, out.values())? {
        return Err(Error::Invariant("pullback is not a class".into()));
    }
    Ok(out)
}

/// Candidate `R` from the factor list of `tau_p(p)`: all sub-multisets,
/// leading degree first and then in increasing product order.
fn r_candidates(nvars: usize, factors: &[LinearForm]) -> Vec<PqEntry> {
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1u64 << factors.len()) {
        let chosen: Vec<LinearForm> =
            (0..factors.len()).filter(|i| mask >> i & 1 == 1).map(|i| factors[i].clone()).collect();
        seen.insert(PqEntry::from_factors(nvars, &chosen));
    }
    let mut out: Vec<PqEntry> = seen.into_iter().collect();
    out.sort_by(|x, y| y.degree().cmp(&x.degree()).then_with(|| x.product.cmp(&y.product)));
    out
}

/// The family `g` with `R^2 g = tau_p^2 + tau_q^2`, if `R` divides both values.
fn witness_for(
    r: &PqEntry,
    points: usize,
    p: usize,
    q: usize,
    tp: &IntPolynomial,
    tq: &IntPolynomial,
) -> Option<Vec<IntPolynomial>> {
    let gp = div_exact_product(&r.factors, tp).ok()?;
    let gq = div_exact_product(&r.factors, tq).ok()?;
    let mut values = vec![IntPolynomial::zero(tp.nvars()); points];
    values[p] = gp.pow(2);
    values[q] = gq.pow(2);
    Some(values)
}

/// Every candidate `R` for the pair with whether it admits a class `g`.
pub fn r_candidates_with_validity(g: &GkmGraph, p: VertexId, q: VertexId) -> Result<Vec<(PqEntry, bool)>> {
    if p == q {
        return Err(Error::SameVertex);
    }
    let labels: Vec<LinearForm> = g.darts_from(p)?.iter().map(|&e| g.alpha(e).clone()).collect();
    let (tp, tq) = (g.vertex_weight(p)?, g.vertex_weight(q)?);
    r_candidates(g.rank(), &labels)
        .into_iter()
        .map(|r| {
            let ok = match witness_for(&r, g.num_vertices(), p.0, q.0, &tp, &tq) {
                Some(values) => is_class(g, &values).unwrap_or(false),
                None => false,
            };
            Ok((r, ok))
        })
        .collect()
}

/// The largest `R` (sign-normalized; least product among ties) with
/// `R^2 g = tau_p^2 + tau_q^2` for some class `g`. Equals `+/- P_pq` on GKM graphs.
pub fn max_r(g: &GkmGraph, p: VertexId, q: VertexId) -> Result<PqEntry> {
    r_candidates_with_validity(g, p, q)?
        .into_iter()
        .find(|(_, ok)| *ok)
        .map(|(r, _)| r)
        .ok_or_else(|| Error::Invariant("no valid R, not even 1".into()))
}

/// Graded bases of a cohomology ring with the vertices replaced by anonymous points.
///
/// `pieces[d]` lists integer generators of the classes of polynomial degree
/// `d`; each class is a vector of values indexed by point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    pub rank: usize,
    pub points: usize,
    pub pieces: Vec<Vec<Vec<IntPolynomial>>>,
}

impl AlgebraData {
    /// Degrees needed by the reconstruction: up to `max(n, 2n - 2)` for valence `n`.
    pub fn required_degree(valence: usize) -> u32 {
        let n = valence as u32;
        n.max((2 * n).saturating_sub(2))
    }

    pub fn from_graph(g: &GkmGraph) -> Result<Self> {
        Self::from_graph_to_degree(g, Self::required_degree(g.valence()))
    }

    pub fn from_graph_to_degree(g: &GkmGraph, max_degree: u32) -> Result<Self> {
        let pieces = graded_bases(g, max_degree)?
            .into_iter()
            .map(|b| b.classes.into_iter().map(|c| c.values().to_vec()).collect())
            .collect();
        Ok(AlgebraData { rank: g.rank(), points: g.num_vertices(), pieces })
    }

    /// Moves the values at point `i` to point `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..self.points).collect::<Vec<_>>() {
            return Err(Error::MalformedAlgebra("relabeling is not a permutation".into()));
        }
        let pieces = self
            .pieces
            .iter()
            .map(|piece| {
                piece
                    .iter()
                    .map(|class| {
                        let mut out = vec![IntPolynomial::zero(self.rank); self.points];
                        for (i, v) in class.iter().enumerate() {
                            out[perm[i]] = v.clone();
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        Ok(AlgebraData { rank: self.rank, points: self.points, pieces })
    }

    fn check(&self) -> Result<()> {
        for (d, piece) in self.pieces.iter().enumerate() {
            for class in piece {
                if class.len() != self.points {
                    return Err(Error::MalformedAlgebra(format!("degree {d} class has {} values", class.len())));
                }
                for v in class {
                    if v.nvars() != self.rank {
                        return Err(Error::MalformedAlgebra("value over the wrong number of variables".into()));
                    }
                    if v.degree().is_some_and(|e| e as usize != d) || !v.is_homogeneous() {
                        return Err(Error::MalformedAlgebra(format!("value {v} in degree {d} piece")));
                    }
                }
            }
        }
        Ok(())
    }

    fn piece_vectors(&self, degree: usize) -> Result<(Coordinates, Vec<IntVector>)> {
        let coords = Coordinates::new(self.rank, self.points, degree as u32);
        let vectors = self.pieces[degree].iter().map(|c| coords.to_vector(c)).collect::<Result<_>>()?;
        Ok((coords, vectors))
    }

    /// Generators of the degree-`degree` classes that vanish away from `point`.
    fn supported_at(&self, degree: usize, point: usize) -> Result<Vec<Vec<IntPolynomial>>> {
        let (coords, vectors) = self.piece_vectors(degree)?;
        let block = coords.monomials().len();
        let others: Vec<usize> =
            (0..coords.len()).filter(|&j| j / block.max(1) != point).collect();
        let system: Vec<IntVector> =
            others.iter().map(|&j| vectors.iter().map(|v| v[j].clone()).collect()).collect();
        let combos = integer_kernel(&system, vectors.len());
        Ok(combos
            .iter()
            .map(|c| {
                let mut sum = vec![BigInt::zero(); coords.len()];
                for (k, v) in c.iter().zip(&vectors) {
                    for (s, x) in sum.iter_mut().zip(v) {
                        *s += k * x;
                    }
                }
                coords.to_values(&sum)
            })
            .filter(|vals| vals.iter().any(|v| !v.is_zero()))
            .collect())
    }
}

/// A recovered Thom class: the point it is supported at and its value there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThomRep {
    pub point: usize,
    pub degree: u32,
    pub value: IntPolynomial,
    pub scalar: BigInt,
    pub factors: Vec<LinearForm>,
}

impl ThomRep {
    /// The class as a vector of point values.
    pub fn class_values(&self, points: usize) -> Vec<IntPolynomial> {
        let mut out = vec![IntPolynomial::zero(self.value.nvars()); points];
        out[self.point] = self.value.clone();
        out
    }

    /// `f / self.value`, if it is a polynomial.
    fn divide(&self, f: &IntPolynomial) -> Option<IntPolynomial> {
        let q = div_exact_product(&self.factors, f).ok()?;
        let terms: Vec<_> = q
            .terms()
            .map(|(m, c)| {
                let (d, r) = c.div_rem(&self.scalar);
                r.is_zero().then(|| (m.clone(), d))
            })
            .collect::<Option<_>>()?;
        Some(IntPolynomial::from_terms(f.nvars(), terms))
    }
}

/// Recovers one Thom class per point, up to sign.
///
/// For every point the singly supported classes of least degree form a rank
/// one lattice; its generator is returned. Each generator is checked to
/// divide every singly supported class at its point in all available degrees,
/// and the family is checked to be pairwise annihilating.
pub fn recover_vertices(data: &AlgebraData) -> Result<Vec<ThomRep>> {
    data.check()?;
    let mut reps = Vec::with_capacity(data.points);
    for point in 0..data.points {
        let mut found = None;
        for degree in 0..data.pieces.len() {
            let gens = data.supported_at(degree, point)?;
            if gens.is_empty() {
                continue;
            }
            if gens.len() != 1 {
                return Err(Error::MalformedAlgebra(format!(
                    "point {point}: {} independent singly supported classes in degree {degree}",
                    gens.len()
                )));
            }
            found = Some((degree, gens[0][point].clone()));
            break;
        }
        let (degree, value) = found.ok_or_else(|| {
            Error::MalformedAlgebra(format!("point {point} supports no class in the available degrees"))
        })?;
        let (scalar, factors) = split_linear_factors(&value)?;
        reps.push(ThomRep { point, degree: degree as u32, value, scalar, factors });
    }

    for rep in &reps {
        for degree in rep.degree as usize..data.pieces.len() {
            for class in data.supported_at(degree, rep.point)? {
                if rep.divide(&class[rep.point]).is_none() {
                    return Err(Error::Invariant(format!(
                        "singly supported class at point {} is not a multiple of the recovered generator",
                        rep.point
                    )));
                }
            }
        }
    }
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            let prod = a.class_values(data.points).iter().zip(b.class_values(data.points)).all(|(x, y)| (x * &y).is_zero());
            if !prod {
                return Err(Error::Invariant("recovered classes do not annihilate each other".into()));
            }
        }
    }
    Ok(reps)
}

/// Rebuilds the pair table from algebra data alone.
pub fn reconstruct_table(data: &AlgebraData) -> Result<PqTable> {
    let reps = recover_vertices(data)?;
    let lattices: Vec<Lattice> = (0..data.pieces.len())
        .map(|d| {
            let (coords, vectors) = data.piece_vectors(d)?;
            Ok(Lattice::from_generators(coords.len(), &vectors))
        })
        .collect::<Result<_>>()?;

    let mut entries = BTreeMap::new();
    for p in 0..data.points {
        for q in p + 1..data.points {
            let best = reconstruct_pair(data, &lattices, &reps[p], &reps[q])?;
            if best.degree() > 0 {
                entries.insert((p, q), best);
            }
        }
    }
    Ok(PqTable { rank: data.rank, points: data.points, entries })
}

fn reconstruct_pair(data: &AlgebraData, lattices: &[Lattice], rp: &ThomRep, rq: &ThomRep) -> Result<PqEntry> {
    let (p, q) = (rp.point, rq.point);
    for r in r_candidates(data.rank, &rp.factors) {
        if r.degree() == 0 {
            // tau_p^2 + tau_q^2 is a sum of products
            return Ok(r);
        }
        let Some(values) = witness_for(&r, data.points, p, q, &rp.value, &rq.value) else {
            continue;
        };
        let Some(degree) = CohClass::from_values(values.clone()).ok().map(|c| c.degree() as usize) else {
            continue;
        };
        let lattice = lattices.get(degree).ok_or_else(|| {
            Error::MalformedAlgebra(format!("membership test needs degree {degree}, data stops at {}", lattices.len() - 1))
        })?;
        let coords = Coordinates::new(data.rank, data.points, degree as u32);
        if lattice.contains(&coords.to_vector(&values)?) {
            return Ok(r);
        }
    }
    Ok(PqEntry::from_factors(data.rank, &[]))
}

/// A point bijection `a -> b` realizing an isomorphism of the underlying
/// graphs, decided from the algebras alone.
pub fn algebras_isomorphic(a: &AlgebraData, b: &AlgebraData) -> Result<Option<Vec<usize>>> {
    if a.rank != b.rank || a.points != b.points {
        return Ok(None);
    }
    let (ta, tb) = (reconstruct_table(a)?, reconstruct_table(b)?);
    Ok(find_table_isomorphism(&ta, &tb))
}

/// Convenience check used by tests and the CLI: the reconstructed table of
/// `g` equals its pair table.
pub fn reconstruction_matches(g: &GkmGraph) -> Result<bool> {
    let data = AlgebraData::from_graph(g)?;
    Ok(reconstruct_table(&data)? == pq_table(g)?)
}
