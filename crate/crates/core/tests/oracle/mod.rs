//! Independent brute-force computations used as test oracles.
//!
//! Nothing here calls the library's divisibility, lattice or matching code.
//! Divisibility by a linear form is decided by substituting a rational
//! parametrization of its zero set; kernels are computed densely over `Q`;
//! saturation is checked through a Smith-style diagonalization.

#![allow(dead_code)]

use std::collections::BTreeMap;

use gkm_core::graph::GkmGraph;
use gkm_core::poly::{IntPolynomial, Monomial};
use gkm_core::{DartId, VertexId};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type QPoly = BTreeMap<Vec<u32>, BigRational>;

fn to_q(p: &IntPolynomial) -> QPoly {
    p.terms().map(|(m, c)| (m.exponents().to_vec(), BigRational::from_integer(c.clone()))).collect()
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = QPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `p` restricted to the hyperplane `a = 0`, eliminating the first variable with a nonzero coefficient.
fn restrict(p: &QPoly, a: &[i64]) -> QPoly {
    let r = a.len();
    let k = a.iter().position(|&x| x != 0).expect("nonzero form");
    let mut image = QPoly::new();
    for (j, &c) in a.iter().enumerate() {
        if j != k && c != 0 {
            let mut m = vec![0; r];
            m[j] = 1;
            image.insert(m, BigRational::new(BigInt::from(-c), BigInt::from(a[k])));
        }
    }
    let mut out = QPoly::new();
    for (m, c) in p {
        let mut term: QPoly = [(
            m.iter().enumerate().map(|(j, &e)| if j == k { 0 } else { e }).collect::<Vec<u32>>(),
            c.clone(),
        )]
        .into();
        for _ in 0..m[k] {
            term = q_mul(&term, &image);
        }
        for (mm, cc) in term {
            *out.entry(mm).or_insert_with(BigRational::zero) += cc;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn divisible(a: &[i64], p: &IntPolynomial) -> bool {
    restrict(&to_q(p), a).is_empty()
}

/// Edge differences divisible by the edge labels, for every dart.
pub fn is_class(g: &GkmGraph, values: &[IntPolynomial]) -> bool {
    g.darts().iter().all(|d| {
        let diff = &values[d.from.0] - &values[d.to.0];
        divisible(d.alpha.coeffs(), &diff)
    })
}

/// Exponent vectors of degree `d` in `r` variables, in some fixed order.
pub fn monomials(r: usize, d: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in monomials(r - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Dense linear conditions over `Q` on vertex-major coordinates.
pub fn conditions(g: &GkmGraph, d: u32) -> (Vec<Vec<u32>>, Vec<Vec<BigRational>>) {
    let mons = monomials(g.rank(), d);
    let m = mons.len();
    let width = m * g.num_vertices();
    let mut rows = Vec::new();
    for dart in g.darts() {
        let images: Vec<QPoly> = mons
            .iter()
            .map(|e| restrict(&[(e.clone(), BigRational::one())].into(), dart.alpha.coeffs()))
            .collect();
        let mut targets: Vec<&Vec<u32>> = images.iter().flat_map(|i| i.keys()).collect();
        targets.sort();
        targets.dedup();
        for t in targets {
            let mut row = vec![BigRational::zero(); width];
            for (i, img) in images.iter().enumerate() {
                if let Some(c) = img.get(t) {
                    row[dart.from.0 * m + i] += c;
                    row[dart.to.0 * m + i] -= c;
                }
            }
            rows.push(row);
        }
    }
    (mons, rows)
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut Vec<Vec<BigRational>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, i);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rational_rank(rows: &[Vec<BigRational>], width: usize) -> usize {
    rref(&mut rows.to_vec(), width).len()
}

/// A basis of the rational kernel, each vector scaled to a primitive integer vector.
pub fn rational_kernel(rows: &[Vec<BigRational>], width: usize) -> Vec<Vec<BigInt>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); width];
            v[f] = BigRational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.into_iter().map(|x| x / &g).collect()
        })
        .collect()
}

/// Diagonal entries after unimodular row and column operations.
pub fn smith_diagonal(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a = rows.to_vec();
    let (h, w) = (a.len(), a.first().map_or(0, Vec::len));
    let mut diag = Vec::new();
    for t in 0..h.min(w) {
        loop {
            let best = (t..h)
                .flat_map(|i| (t..w).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = best else {
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..h {
                let f = a[i][t].div_floor(&a[t][t]);
                if !f.is_zero() {
                    let pivot = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..w {
                let f = a[t][j].div_floor(&a[t][t]);
                if !f.is_zero() {
                    for row in a.iter_mut() {
                        let y = row[t].clone();
                        row[j] -= &f * y;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                diag.push(a[t][t].clone());
                break;
            }
        }
    }
    diag
}

pub fn vector_of(mons: &[Vec<u32>], values: &[IntPolynomial]) -> Vec<BigInt> {
    values
        .iter()
        .flat_map(|v| mons.iter().map(move |m| v.coefficient(&Monomial::new(m.clone()))))
        .collect()
}

pub fn values_of(r: usize, mons: &[Vec<u32>], v: &[BigInt]) -> Vec<IntPolynomial> {
    v.chunks(mons.len().max(1))
        .map(|chunk| {
            IntPolynomial::from_terms(r, mons.iter().zip(chunk).map(|(m, c)| (Monomial::new(m.clone()), c.clone())))
        })
        .collect()
}

fn satisfies(rows: &[Vec<BigRational>], v: &[BigInt]) -> bool {
    rows.iter().all(|row| {
        row.iter().zip(v).fold(BigRational::zero(), |acc, (c, x)| acc + c * BigRational::from_integer(x.clone())).is_zero()
    })
}

/// Checks that `basis` spans exactly the integer points of the rational
/// class space in degree `d`; returns the rank.
pub fn check_lattice(g: &GkmGraph, d: u32, basis: &[Vec<IntPolynomial>]) -> Result<usize, String> {
    let (mons, rows) = conditions(g, d);
    let width = mons.len() * g.num_vertices();
    let expected = width - rational_rank(&rows, width);
    let vectors: Vec<Vec<BigInt>> = basis.iter().map(|b| vector_of(&mons, b)).collect();
    if let Some(i) = vectors.iter().position(|v| !satisfies(&rows, v)) {
        return Err(format!("basis vector {i} violates an edge condition"));
    }
    let as_q: Vec<Vec<BigRational>> =
        vectors.iter().map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let independent = rational_rank(&as_q, width);
    if independent != vectors.len() || independent != expected {
        return Err(format!("rank {} ({} independent), rational kernel has dimension {expected}", vectors.len(), independent));
    }
    let diag = smith_diagonal(&vectors);
    if diag.len() != vectors.len() || diag.iter().any(|x| !x.abs().is_one()) {
        return Err(format!("not saturated: diagonal {diag:?}"));
    }
    Ok(expected)
}

/// Integer generators of the degree-`d` classes vanishing away from `p`.
pub fn supported_generators(g: &GkmGraph, p: VertexId, d: u32) -> Vec<Vec<IntPolynomial>> {
    let (mons, mut rows) = conditions(g, d);
    let m = mons.len();
    let width = m * g.num_vertices();
    for j in (0..width).filter(|j| j / m.max(1) != p.0) {
        let mut row = vec![BigRational::zero(); width];
        row[j] = BigRational::one();
        rows.push(row);
    }
    rational_kernel(&rows, width).iter().map(|v| values_of(g.rank(), &mons, v)).collect()
}

/// Product of the raw labels of darts from `p` to `q`, read off the edge list.
pub fn p_pq(g: &GkmGraph, p: VertexId, q: VertexId) -> IntPolynomial {
    let file = g.to_file();
    let (np, nq) = (g.name(p), g.name(q));
    let mut out = IntPolynomial::one(g.rank());
    for e in &file.edges {
        let label = if e.from == np && e.to == nq {
            &e.alpha
        } else if e.from == nq && e.to == np {
            &e.alpha_rev
        } else {
            continue;
        };
        out = &out * &linear(g.rank(), label);
    }
    out
}

pub fn vertex_weight(g: &GkmGraph, p: VertexId) -> IntPolynomial {
    g.vertices().filter(|&q| q != p).fold(IntPolynomial::one(g.rank()), |acc, q| &acc * &p_pq(g, p, q))
}

/// `f / r` by trial: the unique `h` with `r h = f`, found over the coefficient
/// space of the right degree.
pub fn quotient(f: &IntPolynomial, r: &IntPolynomial) -> Option<IntPolynomial> {
    if f.is_zero() {
        return Some(IntPolynomial::zero(f.nvars()));
    }
    let d = f.degree()?.checked_sub(r.degree()?)?;
    let mons = monomials(f.nvars(), d);
    let targets = monomials(f.nvars(), f.degree()?);
    let products: Vec<IntPolynomial> =
        mons.iter().map(|m| &IntPolynomial::monomial(f.nvars(), Monomial::new(m.clone()), 1) * r).collect();
    let mut rows: Vec<Vec<BigRational>> = targets
        .iter()
        .map(|t| {
            let tm = Monomial::new(t.clone());
            let mut row: Vec<BigRational> =
                products.iter().map(|p| BigRational::from_integer(p.coefficient(&tm))).collect();
            row.push(-BigRational::from_integer(f.coefficient(&tm)));
            row
        })
        .collect();
    let width = mons.len() + 1;
    let pivots = rref(&mut rows, width);
    if pivots.contains(&mons.len()) {
        return None;
    }
    let mut coeffs = vec![BigRational::zero(); mons.len()];
    for (row, &p) in rows.iter().zip(&pivots) {
        coeffs[p] = -row[mons.len()].clone();
    }
    if coeffs.iter().any(|c| !c.is_integer()) {
        return None;
    }
    let h = IntPolynomial::from_terms(
        f.nvars(),
        mons.iter().zip(coeffs).map(|(m, c)| (Monomial::new(m.clone()), c.to_integer())),
    );
    (&h * r == *f).then_some(h)
}

/// Every product of a subset of the labels at `p` with whether it admits a
/// class `g` satisfying `R^2 g = tau_p^2 + tau_q^2`.
pub fn all_r(g: &GkmGraph, p: VertexId, q: VertexId) -> Vec<(IntPolynomial, bool)> {
    let labels: Vec<IntPolynomial> =
        g.darts_from(p).unwrap().iter().map(|&e| g.alpha(e).to_poly()).collect();
    let (tp, tq) = (vertex_weight(g, p), vertex_weight(g, q));
    (0u32..1 << labels.len())
        .map(|mask| {
            let r = (0..labels.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(IntPolynomial::one(g.rank()), |acc, i| &acc * &labels[i]);
            let valid = match (quotient(&tp, &r), quotient(&tq, &r)) {
                (Some(a), Some(b)) => {
                    let mut values = vec![IntPolynomial::zero(g.rank()); g.num_vertices()];
                    values[p.0] = a.pow(2);
                    values[q.0] = b.pow(2);
                    let homogeneous = values[p.0].degree() == values[q.0].degree();
                    homogeneous && is_class(g, &values)
                }
                _ => false,
            };
            (r, valid)
        })
        .collect()
}

/// Per-dart transport existence with inverse maps; conditions (ii), (iii) checked directly.
pub fn transport_exists_per_dart(g: &GkmGraph) -> bool {
    (0..g.darts().len()).all(|e| least_dart_map(g, e).is_some())
}

pub fn least_dart_map(g: &GkmGraph, e: usize) -> Option<Vec<usize>> {
    let (src, dst) = outgoing(g, e);
    permutations(&dst).into_iter().find(|p| dart_ok(g, e, &src, p))
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// `u - v` as an integer multiple of `w`, coordinatewise.
pub fn multiple(u: &[i64], v: &[i64], w: &[i64]) -> Option<i64> {
    let diff: Vec<i64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    let k = w.iter().position(|&x| x != 0)?;
    if diff[k] % w[k] != 0 {
        return None;
    }
    let d = diff[k] / w[k];
    diff.iter().zip(w).all(|(&x, &y)| x == d * y).then_some(d)
}

pub fn label(g: &GkmGraph, e: usize) -> &[i64] {
    g.alpha(DartId(e)).coeffs()
}

pub fn dart_ok(g: &GkmGraph, e: usize, source: &[usize], image: &[usize]) -> bool {
    let d = &g.darts()[e];
    source.iter().zip(image).all(|(&s, &t)| {
        let forced = s != e || t == d.reverse.0;
        forced && multiple(label(g, t), label(g, s), label(g, e)).is_some()
    })
}

pub fn outgoing(g: &GkmGraph, e: usize) -> (Vec<usize>, Vec<usize>) {
    let d = &g.darts()[e];
    let ids = |v| g.darts_from(v).unwrap().iter().map(|x: &DartId| x.0).collect::<Vec<_>>();
    (ids(d.from), ids(d.to))
}

/// Transport existence by enumerating every family of per-dart bijections.
pub fn transport_exists_globally(g: &GkmGraph) -> bool {
    let candidates: Vec<(Vec<usize>, Vec<Vec<usize>>)> = (0..g.darts().len())
        .map(|e| {
            let (src, dst) = outgoing(g, e);
            (src, permutations(&dst))
        })
        .collect();
    let mut choice = vec![0usize; candidates.len()];
    loop {
        let maps: Vec<BTreeMap<usize, usize>> = candidates
            .iter()
            .zip(&choice)
            .map(|((src, perms), &c)| src.iter().copied().zip(perms[c].iter().copied()).collect())
            .collect();
        let all_ok = (0..maps.len()).all(|e| {
            let (src, perms) = &candidates[e];
            let rev = g.darts()[e].reverse.0;
            let inverse_ok = maps[e].iter().all(|(s, t)| maps[rev].get(t) == Some(s));
            inverse_ok && dart_ok(g, e, src, &perms[choice[e]])
        });
        if all_ok {
            return true;
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].1.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

pub fn global_search_size(g: &GkmGraph) -> f64 {
    let fact: f64 = (1..=g.valence()).map(|k| k as f64).product();
    fact.powi(g.darts().len() as i32)
}

/// Darts from `p` to `q` read off the edge list: each label with its reverse label.
fn raw_darts(g: &GkmGraph, p: VertexId, q: VertexId) -> Vec<(Vec<i64>, Vec<i64>)> {
    let file = g.to_file();
    let (np, nq) = (g.name(p), g.name(q));
    let mut out = Vec::new();
    for e in &file.edges {
        if e.from == np && e.to == nq {
            out.push((e.alpha.clone(), e.alpha_rev.clone()));
        }
        if e.from == nq && e.to == np {
            out.push((e.alpha_rev.clone(), e.alpha.clone()));
        }
    }
    out
}

pub fn linear(r: usize, c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_terms(r, c.iter().enumerate().map(|(i, &x)| (Monomial::var(r, i), BigInt::from(x))))
}

/// `(P, Q, [(alpha(e), c(e)) for e in E_pq])` for an adjacent pair.
pub fn local_data(g: &GkmGraph, p: VertexId, q: VertexId) -> (IntPolynomial, IntPolynomial, Vec<(Vec<i64>, usize)>) {
    let r = g.rank();
    let away = |a: VertexId, b: VertexId| {
        g.vertices()
            .filter(|&v| v != a && v != b)
            .flat_map(|v| raw_darts(g, a, v))
            .fold(IntPolynomial::one(r), |acc, (l, _)| &acc * &linear(r, &l))
    };
    let between = raw_darts(g, p, q);
    let with_c = between
        .iter()
        .enumerate()
        .map(|(i, (l, _))| {
            let c = between
                .iter()
                .enumerate()
                .filter(|(j, (l2, rev2))| *j != i && rev2.iter().zip(l2).all(|(a, b)| *a == -*b))
                .count();
            (l.clone(), c)
        })
        .collect();
    (away(p, q), away(q, p), with_c)
}
