//! Graph equivariant cohomology.
//!
//! A class assigns a polynomial to every vertex such that along every edge
//! the difference of the endpoint values is divisible by the edge label.
//! Checking one dart per undirected edge suffices since `alpha(rev(e))` is
//! `+/- alpha(e)` and so generates the same ideal.
//!
//! Degrees here are polynomial degrees; a class of degree `d` lives in
//! cohomological degree `2d`.

use serde_json::{Map, Value};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{DartId, GkmGraph, VertexId};
use crate::lattice::{integer_kernel, IntVector, Lattice};
use crate::poly::{
    div_exact_product, divides_linear, monomials_of_degree, unimodular_to_first, IntPolynomial, Monomial,
};

/// A vertex-indexed family of homogeneous polynomials of a common degree.
/// Zero values are allowed at any vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohClass {
    values: Vec<IntPolynomial>,
    degree: u32,
}

impl CohClass {
    pub fn new(values: Vec<IntPolynomial>, degree: u32) -> Result<Self> {
        for v in &values {
            if !v.is_homogeneous() {
                return Err(Error::NotHomogeneous(v.to_string()));
            }
            if let Some(d) = v.degree() {
                if d != degree {
                    return Err(Error::MixedDegrees(degree, d));
                }
            }
        }
        Ok(CohClass { values, degree })
    }

    /// Infers the degree from the nonzero values; the zero family gets degree 0.
    pub fn from_values(values: Vec<IntPolynomial>) -> Result<Self> {
        let degree = common_degree(&values)?.unwrap_or(0);
        Self::new(values, degree)
    }

    pub fn zero(nvars: usize, points: usize, degree: u32) -> Self {
        CohClass { values: vec![IntPolynomial::zero(nvars); points], degree }
    }

    pub fn values(&self) -> &[IntPolynomial] {
        &self.values
    }

    pub fn value(&self, v: VertexId) -> &IntPolynomial {
        &self.values[v.0]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(IntPolynomial::is_zero)
    }

    /// Vertices with nonzero value.
    pub fn support(&self) -> Vec<VertexId> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).map(VertexId).collect()
    }
}

fn common_degree(values: &[IntPolynomial]) -> Result<Option<u32>> {
    let mut degree = None;
    for v in values {
        if !v.is_homogeneous() {
            return Err(Error::NotHomogeneous(v.to_string()));
        }
        match (degree, v.degree()) {
            (Some(a), Some(b)) if a != b => return Err(Error::MixedDegrees(a, b)),
            (None, Some(b)) => degree = Some(b),
            _ => {}
        }
    }
    Ok(degree)
}

/// Whether `values` satisfies every edge divisibility condition of `g`.
pub fn is_class(g: &GkmGraph, values: &[IntPolynomial]) -> Result<bool> {
    if values.len() != g.num_vertices() {
        return Err(Error::Invariant(format!(
            "class has {} values for {} vertices",
            values.len(),
            g.num_vertices()
        )));
    }
    common_degree(values)?;
    for e in g.undirected_edges() {
        let d = g.dart(e);
        let diff = values[d.from.0].try_sub(&values[d.to.0])?;
        if !divides_linear(&d.alpha, &diff)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ensure_class(g: &GkmGraph, f: &CohClass, what: &str) -> Result<()> {
    if is_class(g, f.values())? {
        Ok(())
    } else {
        Err(Error::Invariant(format!("{what} is not a class")))
    }
}

/// Coordinates of degree-`d` classes: vertex-major, monomials leading first.
#[derive(Clone, Debug)]
pub struct Coordinates {
    nvars: usize,
    points: usize,
    degree: u32,
    monomials: Vec<Monomial>,
}

impl Coordinates {
    pub fn new(nvars: usize, points: usize, degree: u32) -> Self {
        Coordinates { nvars, points, degree, monomials: monomials_of_degree(nvars, degree) }
    }

    pub fn len(&self) -> usize {
        self.points * self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn to_vector(&self, values: &[IntPolynomial]) -> Result<IntVector> {
        if values.len() != self.points {
            return Err(Error::Invariant("wrong number of values".into()));
        }
        let mut out = Vec::with_capacity(self.len());
        for v in values {
            if v.degree().is_some_and(|d| d != self.degree) {
                return Err(Error::MixedDegrees(self.degree, v.degree().unwrap_or(0)));
            }
            out.extend(self.monomials.iter().map(|m| v.coefficient(m)));
        }
        Ok(out)
    }

    pub fn to_values(&self, vector: &[BigInt]) -> Vec<IntPolynomial> {
        let k = self.monomials.len();
        (0..self.points)
            .map(|p| {
                IntPolynomial::from_terms(
                    self.nvars,
                    self.monomials.iter().cloned().zip(vector[p * k..(p + 1) * k].iter().cloned()),
                )
            })
            .collect()
    }
}

/// Integer linear conditions cutting out degree-`degree` classes inside the
/// coordinate space of [`Coordinates`].
///
/// For an edge labelled `a`, the substitution `x -> U x` sends `a` to `x1`;
/// the transformed difference must have no monomial free of `x1`.
pub fn edge_conditions(g: &GkmGraph, degree: u32) -> Result<Vec<IntVector>> {
    let coords = Coordinates::new(g.rank(), g.num_vertices(), degree);
    let k = coords.monomials().len();
    let mut rows = Vec::new();
    for e in g.undirected_edges() {
        let d = g.dart(e);
        let u = unimodular_to_first(&d.alpha)?;
        let images: Vec<IntPolynomial> = coords
            .monomials()
            .iter()
            .map(|m| u.apply(&IntPolynomial::monomial(g.rank(), m.clone(), 1)))
            .collect::<Result<_>>()?;
        for beta in coords.monomials().iter().filter(|m| m.exponents()[0] == 0) {
            let mut row = vec![BigInt::zero(); coords.len()];
            for (j, img) in images.iter().enumerate() {
                let c = img.coefficient(beta);
                if c.is_zero() {
                    continue;
                }
                row[d.from.0 * k + j] += &c;
                row[d.to.0 * k + j] -= &c;
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// An integer basis of the degree-`degree` classes, in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: u32,
    pub classes: Vec<CohClass>,
}

impl GradedBasis {
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn lattice(&self, nvars: usize, points: usize) -> Result<Lattice> {
        let coords = Coordinates::new(nvars, points, self.degree);
        let rows: Vec<IntVector> =
            self.classes.iter().map(|c| coords.to_vector(c.values())).collect::<Result<_>>()?;
        Ok(Lattice::from_generators(coords.len(), &rows))
    }

    /// `{ "degree": 2d, "rank": k, "basis": [ { vertex: poly, ... }, ... ] }`
    pub fn to_json(&self, g: &GkmGraph) -> Value {
        let basis: Vec<Value> = self
            .classes
            .iter()
            .map(|c| {
                let obj: Map<String, Value> = g
                    .vertices()
                    .map(|v| (g.name(v).to_string(), Value::String(c.value(v).to_string())))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::json!({ "degree": 2 * self.degree, "rank": self.rank(), "basis": basis })
    }
}

pub fn graded_basis(g: &GkmGraph, degree: u32) -> Result<GradedBasis> {
    g.ensure_valid()?;
    let coords = Coordinates::new(g.rank(), g.num_vertices(), degree);
    let conditions = edge_conditions(g, degree)?;
    let kernel = integer_kernel(&conditions, coords.len());
    let classes = kernel
        .iter()
        .map(|v| CohClass::new(coords.to_values(v), degree))
        .collect::<Result<_>>()?;
    Ok(GradedBasis { degree, classes })
}

/// Graded bases for degrees `0..=max_degree`.
pub fn graded_bases(g: &GkmGraph, max_degree: u32) -> Result<Vec<GradedBasis>> {
    (0..=max_degree).map(|d| graded_basis(g, d)).collect()
}

/// The class equal to the product of the labels at `p` there and zero elsewhere.
pub fn thom_class(g: &GkmGraph, p: VertexId) -> Result<CohClass> {
    let mut values = vec![IntPolynomial::zero(g.rank()); g.num_vertices()];
    values[p.0] = g.vertex_weight(p)?;
    let f = CohClass::new(values, g.darts_from(p)?.len() as u32)?;
    ensure_class(g, &f, "Thom class")?;
    Ok(f)
}

pub fn class_add(f: &CohClass, h: &CohClass) -> Result<CohClass> {
    if f.degree != h.degree {
        return Err(Error::MixedDegrees(f.degree, h.degree));
    }
    pointwise(f, h, f.degree, |a, b| a.try_add(b))
}

pub fn class_sub(f: &CohClass, h: &CohClass) -> Result<CohClass> {
    if f.degree != h.degree {
        return Err(Error::MixedDegrees(f.degree, h.degree));
    }
    pointwise(f, h, f.degree, |a, b| a.try_sub(b))
}

pub fn class_mul(f: &CohClass, h: &CohClass) -> Result<CohClass> {
    pointwise(f, h, f.degree + h.degree, |a, b| a.try_mul(b))
}

/// Action of a homogeneous polynomial on a class.
pub fn class_scale(s: &IntPolynomial, f: &CohClass) -> Result<CohClass> {
    if !s.is_homogeneous() {
        return Err(Error::NotHomogeneous(s.to_string()));
    }
    let values = f.values.iter().map(|v| s.try_mul(v)).collect::<Result<_>>()?;
    CohClass::new(values, f.degree + s.degree().unwrap_or(0))
}

fn pointwise(
    f: &CohClass,
    h: &CohClass,
    degree: u32,
    op: impl Fn(&IntPolynomial, &IntPolynomial) -> Result<IntPolynomial>,
) -> Result<CohClass> {
    if f.values.len() != h.values.len() {
        return Err(Error::Invariant("classes live on different vertex sets".into()));
    }
    let values = f.values.iter().zip(&h.values).map(|(a, b)| op(a, b)).collect::<Result<_>>()?;
    CohClass::new(values, degree)
}

/// Divisibility of `P - (-1)^c(e) Q` by `alpha(e)` for a dart `e` from `p` to `q`.
pub fn key_lemma_check(g: &GkmGraph, p: VertexId, q: VertexId, e: DartId) -> Result<bool> {
    if !g.darts_between(p, q)?.contains(&e) {
        return Err(Error::DartNotInSet { dart: e.0 });
    }
    let (big_p, big_q) = g.pq_local(p, q)?;
    let signed_q = if g.c_count(e).is_multiple_of(2) { big_q } else { -&big_q };
    divides_linear(g.alpha(e), &big_p.try_sub(&signed_q)?)
}

/// `P - Q` divisible by the labels of the even set and `P + Q` by those of the odd set.
pub fn corollary_check(g: &GkmGraph, p: VertexId, q: VertexId) -> Result<bool> {
    let (even, odd) = g.eo_partition(p, q)?;
    let (big_p, big_q) = g.pq_local(p, q)?;
    let labels = |ds: &[DartId]| ds.iter().map(|&e| g.alpha(e).clone()).collect::<Vec<_>>();
    let minus_ok = div_exact_product(&labels(&even), &big_p.try_sub(&big_q)?).is_ok();
    let plus_ok = div_exact_product(&labels(&odd), &big_p.try_add(&big_q)?).is_ok();
    Ok(minus_ok && plus_ok)
}

/// The class `f` with `f(p) = P^2`, `f(q) = Q^2` and zero elsewhere, checked
/// for membership and for `P_pq^2 f = tau_p^2 + tau_q^2`.
pub fn pq_witness(g: &GkmGraph, p: VertexId, q: VertexId) -> Result<CohClass> {
    let (big_p, big_q) = g.pq_local(p, q)?;
    let mut values = vec![IntPolynomial::zero(g.rank()); g.num_vertices()];
    values[p.0] = big_p.pow(2);
    values[q.0] = big_q.pow(2);
    let f = CohClass::from_values(values)?;
    ensure_class(g, &f, "witness")?;

    let pqq = g.p_poly(p, q)?.pow(2);
    let lhs = class_scale(&pqq, &f)?;
    let (tp, tq) = (thom_class(g, p)?, thom_class(g, q)?);
    let rhs = class_add(&class_mul(&tp, &tp)?, &class_mul(&tq, &tq)?)?;
    if lhs.values != rhs.values {
        return Err(Error::Invariant(format!(
            "P_pq^2 f != tau_p^2 + tau_q^2 for {} and {}",
            g.name(p),
            g.name(q)
        )));
    }
    Ok(f)
}
