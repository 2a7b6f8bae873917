//! Exact polynomial arithmetic over the integers.
//!
//! [`IntPolynomial`] models the graded ring `Z[x1, ..., xr]` where each
//! variable has cohomological degree 2. Terms are kept sparse and sorted in
//! graded-lexicographic order with `x1 > x2 > ... > xr`; the text form lists
//! them from the leading term down.
//!
//! Divisibility by a primitive linear form `a` is decided through an integer
//! change of variables `x -> U x` with `det U = +/-1` that sends `a` to `x1`
//! (see [`Unimodular`]). After the substitution a polynomial lies in the
//! ideal `(a)` exactly when every monomial contains `x1`, so the test never
//! leaves the integers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order, `x1 > x2 > ... > xr`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `degree` in `nvars` variables, leading first.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), degree, nvars, &mut out);
    out
}

/// Sparse polynomial with integer coefficients in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero(nvars: usize) -> Self {
        IntPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::monomial(nvars, Monomial::var(nvars, i), 1)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(m.0.len(), nvars, "monomial length does not match variable count");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        IntPolynomial { nvars, terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = IntPolynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial length does not match variable count");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Constant term, or `None` if the polynomial has positive-degree terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.degree() {
            None => Some(BigInt::zero()),
            Some(0) => Some(self.coefficient(&Monomial::one(self.nvars))),
            Some(_) => None,
        }
    }

    fn check_rank(&self, other: &IntPolynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RankMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        self.check_rank(other)?;
        let mut out = IntPolynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero(self.nvars);
        }
        IntPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.nvars {
            return Err(Error::RankMismatch { left: self.nvars, right: point.len() });
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes `x_i -> images[i]`; all images must share one variable count.
    pub fn substitute(&self, images: &[IntPolynomial]) -> Result<IntPolynomial> {
        if images.len() != self.nvars {
            return Err(Error::RankMismatch { left: self.nvars, right: images.len() });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::RankMismatch { left: target, right: bad.nvars });
        }
        // powers[i][k] = images[i]^k
        let mut powers: Vec<Vec<IntPolynomial>> = Vec::with_capacity(self.nvars);
        for (i, img) in images.iter().enumerate() {
            let top = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            let mut row = vec![IntPolynomial::one(target)];
            for k in 1..=top as usize {
                let next = &row[k - 1] * img;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = IntPolynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = IntPolynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Linear substitution `x_i -> sum_j matrix[i][j] * x_j`.
    pub fn substitute_linear(&self, matrix: &[Vec<BigInt>]) -> Result<IntPolynomial> {
        let images: Vec<IntPolynomial> = matrix
            .iter()
            .map(|row| linear_poly(row))
            .collect();
        self.substitute(&images)
    }

    /// gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Splits off the sign so that the leading coefficient becomes positive.
    pub fn normalize_sign(&self) -> SignNormalized {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => SignNormalized { sign: -1, body: -self },
            _ => SignNormalized { sign: 1, body: self.clone() },
        }
    }

    /// Parses the canonical text form, e.g. `x1^2 - 2*x1*x2 + x2^2`.
    pub fn parse(text: &str, nvars: usize) -> Result<IntPolynomial> {
        parse_poly(text, nvars)
    }
}

fn linear_poly(coeffs: &[BigInt]) -> IntPolynomial {
    let n = coeffs.len();
    IntPolynomial::from_terms(
        n,
        coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())),
    )
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.try_add(rhs).expect("polynomial rank mismatch")
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.try_sub(rhs).expect("polynomial rank mismatch")
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.try_mul(rhs).expect("polynomial rank mismatch")
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

fn parse_poly(text: &str, nvars: usize) -> Result<IntPolynomial> {
    let err = |reason: &str| Error::PolyParse { text: text.to_string(), reason: reason.to_string() };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    // split into signed terms
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if !current.is_empty() {
                pieces.push((negative, std::mem::take(&mut current)));
            } else if prev.is_some() && prev != Some('+') && prev != Some('-') {
                return Err(err("dangling operator"));
            }
            if (prev == Some('+') || prev == Some('-')) && current.is_empty() && !pieces.is_empty() {
                return Err(err("repeated sign"));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    if current.is_empty() {
        return Err(err("trailing operator"));
    }
    pieces.push((negative, current));

    let mut out = IntPolynomial::zero(nvars);
    for (neg, body) in pieces {
        let mut coeff = BigInt::one();
        let mut exps = vec![0u32; nvars];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (rest, 1),
                };
                let i: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                if i == 0 || i > nvars {
                    return Err(err("variable index out of range"));
                }
                exps[i - 1] += exp;
            } else {
                let c: BigInt = factor.parse().map_err(|_| err("bad coefficient"))?;
                coeff *= c;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.add_term(Monomial(exps), coeff);
    }
    Ok(out)
}

/// A polynomial split as `sign * body` with the body's leading coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignNormalized {
    pub sign: i8,
    pub body: IntPolynomial,
}

impl SignNormalized {
    pub fn recombine(&self) -> IntPolynomial {
        if self.sign < 0 {
            -&self.body
        } else {
            self.body.clone()
        }
    }
}

/// A degree-2 class `c1*x1 + ... + cr*xr`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// gcd of the coefficients.
    pub fn gcd(&self) -> u64 {
        self.coeffs.iter().fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()))
    }

    pub fn is_primitive(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(self.gcd() == 1)
    }

    /// True iff the 2 x r matrix `[self; other]` has rank 2.
    pub fn independent(&self, other: &LinearForm) -> Result<bool> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(self.has_nonzero_minor(other))
    }

    /// Some 2x2 minor is nonzero. Zero forms are never independent.
    pub(crate) fn has_nonzero_minor(&self, other: &LinearForm) -> bool {
        let (a, b) = (&self.coeffs, &other.coeffs);
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                let minor = a[i] as i128 * b[j] as i128 - a[j] as i128 * b[i] as i128;
                if minor != 0 {
                    return true;
                }
            }
        }
        false
    }

    pub fn negated(&self) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Sign representative whose first nonzero coefficient is positive
    /// (the leading coefficient under the fixed term order).
    pub fn normalized(&self) -> LinearForm {
        match self.coeffs.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => self.negated(),
            _ => self.clone(),
        }
    }

    pub fn big_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn to_poly(&self) -> IntPolynomial {
        linear_poly(&self.big_coeffs())
    }

    /// Returns `d` with `self == d * base`, if such an integer exists.
    pub fn integer_multiple_of(&self, base: &LinearForm) -> Option<i64> {
        let pivot = base.coeffs.iter().position(|&c| c != 0)?;
        if self.coeffs.len() != base.coeffs.len() {
            return None;
        }
        let (num, den) = (self.coeffs[pivot], base.coeffs[pivot]);
        if num % den != 0 {
            return None;
        }
        let d = num / den;
        let fits = self
            .coeffs
            .iter()
            .zip(&base.coeffs)
            .all(|(&s, &b)| s as i128 == d as i128 * b as i128);
        fits.then_some(d)
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Integer change of coordinates sending a primitive linear form to `x1`.
///
/// Convention: `forward` is the matrix `U` with `a^T U = e1^T`, so the
/// substitution `x -> U x` turns `a(x)` into `x1`; `inverse` is `U^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unimodular {
    pub forward: Vec<Vec<BigInt>>,
    pub inverse: Vec<Vec<BigInt>>,
}

impl Unimodular {
    /// `p(U x)`.
    pub fn apply(&self, p: &IntPolynomial) -> Result<IntPolynomial> {
        p.substitute_linear(&self.forward)
    }

    /// `p(U^{-1} x)`, undoing [`Unimodular::apply`].
    pub fn unapply(&self, p: &IntPolynomial) -> Result<IntPolynomial> {
        p.substitute_linear(&self.inverse)
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Column-reduces the row vector `a` to `e1` with extended-gcd steps.
pub fn unimodular_to_first(a: &LinearForm) -> Result<Unimodular> {
    if !a.is_primitive()? {
        return Err(Error::NotPrimitive(a.to_string()));
    }
    let n = a.rank();
    let mut w = a.big_coeffs();
    let mut u = identity(n);
    let mut uinv = identity(n);
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !w[i].is_zero()).collect();
        if nonzero.len() == 1 {
            break;
        }
        let k = *nonzero
            .iter()
            .min_by(|&&i, &&j| w[i].abs().cmp(&w[j].abs()).then(i.cmp(&j)))
            .expect("nonzero entries");
        for &j in &nonzero {
            if j == k {
                continue;
            }
            let q = w[j].div_floor(&w[k]);
            if q.is_zero() {
                continue;
            }
            // column_j -= q * column_k
            let wk = w[k].clone();
            w[j] -= &q * wk;
            for row in u.iter_mut() {
                let t = &q * &row[k];
                row[j] -= t;
            }
            // inverse: row_k += q * row_j
            let rj = uinv[j].clone();
            for (dst, src) in uinv[k].iter_mut().zip(&rj) {
                *dst += &q * src;
            }
        }
    }
    let k = (0..n).find(|&i| !w[i].is_zero()).expect("primitive form is nonzero");
    if k != 0 {
        w.swap(0, k);
        for row in u.iter_mut() {
            row.swap(0, k);
        }
        uinv.swap(0, k);
    }
    if w[0].is_negative() {
        for row in u.iter_mut() {
            row[0] = -&row[0];
        }
        for c in uinv[0].iter_mut() {
            *c = -&*c;
        }
    }
    Ok(Unimodular { forward: u, inverse: uinv })
}

/// Whether the primitive form `a` divides `p` in `Z[x]`.
pub fn divides_linear(a: &LinearForm, p: &IntPolynomial) -> Result<bool> {
    if a.rank() != p.nvars() {
        return Err(Error::RankMismatch { left: a.rank(), right: p.nvars() });
    }
    if p.is_zero() {
        return Ok(true);
    }
    let u = unimodular_to_first(a)?;
    let t = u.apply(p)?;
    Ok(t.terms.keys().all(|m| m.0[0] > 0))
}

/// Exact quotient `p / a`; errors if `a` does not divide `p`.
pub fn div_exact_linear(a: &LinearForm, p: &IntPolynomial) -> Result<IntPolynomial> {
    if a.rank() != p.nvars() {
        return Err(Error::RankMismatch { left: a.rank(), right: p.nvars() });
    }
    if p.is_zero() {
        return Ok(p.clone());
    }
    let u = unimodular_to_first(a)?;
    let t = u.apply(p)?;
    let mut shifted = IntPolynomial::zero(p.nvars());
    for (m, c) in &t.terms {
        if m.0[0] == 0 {
            return Err(Error::NotDivisible { divisor: a.to_string(), dividend: p.to_string() });
        }
        let mut e = m.0.clone();
        e[0] -= 1;
        shifted.terms.insert(Monomial(e), c.clone());
    }
    u.unapply(&shifted)
}

/// Divides `p` by the product of `factors`, one factor at a time.
pub fn div_exact_product(factors: &[LinearForm], p: &IntPolynomial) -> Result<IntPolynomial> {
    factors.iter().try_fold(p.clone(), |acc, a| div_exact_linear(a, &acc))
}

pub fn product_of(nvars: usize, factors: &[LinearForm]) -> IntPolynomial {
    factors
        .iter()
        .fold(IntPolynomial::one(nvars), |acc, a| &acc * &a.to_poly())
}

/// Writes a homogeneous polynomial that splits over `Z` into linear forms as
/// `constant * prod(factors)`, each factor primitive and sign-normalized.
///
/// The factors are sorted. Polynomials that do not split are rejected.
pub fn split_linear_factors(p: &IntPolynomial) -> Result<(BigInt, Vec<LinearForm>)> {
    if p.is_zero() {
        return Err(Error::NoLinearSplit(p.to_string()));
    }
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous(p.to_string()));
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        let f = find_linear_factor(&rest)?;
        rest = div_exact_linear(&f, &rest)?;
        factors.push(f);
    }
    factors.sort();
    let c = rest.as_constant().expect("degree zero remainder");
    Ok((c, factors))
}

fn find_linear_factor(f: &IntPolynomial) -> Result<LinearForm> {
    let nvars = f.nvars();
    let no_split = || Error::NoLinearSplit(f.to_string());
    if nvars == 1 {
        return Ok(LinearForm::new(vec![1]));
    }
    let m = f.degree().ok_or_else(no_split)?;
    let v = nonvanishing_point(f)?;
    let u = unimodular_to_first(&v)?;
    // T = (U^{-1})^T has first column v, so g(y) = f(T y) has y1^m coefficient f(v) != 0.
    let t: Vec<Vec<BigInt>> = (0..nvars)
        .map(|i| (0..nvars).map(|j| u.inverse[j][i].clone()).collect())
        .collect();
    let g = f.substitute_linear(&t)?;

    // roots of g restricted to the (y1, yj) plane, as ratios y1/yj
    let mut root_sets: Vec<Vec<(BigInt, BigInt)>> = Vec::with_capacity(nvars - 1);
    for j in 1..nvars {
        let mut h = vec![BigInt::zero(); m as usize + 1];
        for (mono, c) in &g.terms {
            let e = &mono.0;
            if e.iter().enumerate().all(|(k, &x)| x == 0 || k == 0 || k == j) {
                h[e[0] as usize] += c;
            }
        }
        let roots = rational_roots(&h)?;
        if roots.is_empty() {
            return Err(no_split());
        }
        root_sets.push(roots);
    }

    let mut choice = vec![0usize; nvars - 1];
    loop {
        // candidate  y1 - sum_j rho_j y_j  with rho_j = num/den
        let lcm = choice
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (j, &c)| acc.lcm(&root_sets[j][c].1));
        let mut coeffs = vec![lcm.clone()];
        for (j, &c) in choice.iter().enumerate() {
            let (num, den) = &root_sets[j][c];
            coeffs.push(-(num * (&lcm / den)));
        }
        let g0 = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let prim: Vec<BigInt> = coeffs.iter().map(|c| c / &g0).collect();
        let cand = to_form(&prim).ok_or_else(no_split)?;
        if divides_linear(&cand, &g)? {
            // back to x coordinates: c = U * c'
            let back: Vec<BigInt> = (0..nvars)
                .map(|i| (0..nvars).map(|k| &u.forward[i][k] * &prim[k]).sum())
                .collect();
            let form = to_form(&back).ok_or_else(no_split)?.normalized();
            if divides_linear(&form, f)? {
                return Ok(form);
            }
        }
        // next combination
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Err(no_split());
            }
            choice[k] += 1;
            if choice[k] < root_sets[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn to_form(v: &[BigInt]) -> Option<LinearForm> {
    v.iter().map(|c| c.to_i64()).collect::<Option<Vec<_>>>().map(LinearForm::new)
}

/// Smallest primitive integer point (by max-norm, then lexicographic) where `f` is nonzero.
fn nonvanishing_point(f: &IntPolynomial) -> Result<LinearForm> {
    let n = f.nvars();
    for bound in 1i64..=64 {
        let width = (2 * bound + 1) as usize;
        let total = width.pow(n as u32);
        for idx in 0..total {
            let mut rest = idx;
            let mut v = vec![0i64; n];
            for slot in v.iter_mut().rev() {
                *slot = (rest % width) as i64 - bound;
                rest /= width;
            }
            if v.iter().all(|c| c.abs() < bound) {
                continue;
            }
            let form = LinearForm::new(v);
            if form.gcd() == 1 && !f.eval(&form.big_coeffs())?.is_zero() {
                return Ok(form);
            }
        }
    }
    Err(Error::NoLinearSplit(f.to_string()))
}

/// Distinct rational roots `num/den` (den > 0, reduced) of `sum h[k] z^k`.
/// The leading coefficient must be nonzero.
fn rational_roots(h: &[BigInt]) -> Result<Vec<(BigInt, BigInt)>> {
    let m = h.len() - 1;
    let lead = &h[m];
    let low = h.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    if low > 0 {
        roots.push((BigInt::zero(), BigInt::one()));
    }
    let trail = &h[low];
    let nums = divisors(trail)?;
    let dens = divisors(lead)?;
    for a in &nums {
        for b in &dens {
            if !a.gcd(b).is_one() {
                continue;
            }
            for num in [a.clone(), -a] {
                // sum h_k num^k den^(m-k)
                let mut acc = BigInt::zero();
                for (k, c) in h.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    acc += c * num_traits::pow(num.clone(), k) * num_traits::pow(b.clone(), m - k);
                }
                if acc.is_zero() && !roots.contains(&(num.clone(), b.clone())) {
                    roots.push((num, b.clone()));
                }
            }
        }
    }
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs().to_u64().ok_or_else(|| Error::NoLinearSplit(format!("coefficient {n} too large to factor")))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}
