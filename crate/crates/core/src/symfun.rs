//! Symmetric polynomials in the monomial basis and truncated symmetric power
//! series evaluated on the diagonal.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jack::JackTable;
use crate::partition::{enumerate_up_to, Partition};
use crate::rational::{factorial, pochhammer, pow, Q};

/// A symmetric polynomial Σ c_λ m_λ in `r` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    r: usize,
    coeffs: BTreeMap<Partition, Q>,
}

impl SymPoly {
    pub fn zero(r: usize) -> Self {
        SymPoly {
            r,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(r: usize) -> Self {
        Self::monomial(Partition::empty(r), Q::one())
    }

    pub fn monomial(lambda: Partition, c: Q) -> Self {
        let r = lambda.r();
        let mut p = Self::zero(r);
        p.add_term(lambda, c);
        p
    }

    /// Power sum p_1 = m_(1).
    pub fn p1(r: usize) -> Self {
        let mut parts = vec![0; r];
        parts[0] = 1;
        Self::monomial(Partition::from_sorted_unchecked(parts), Q::one())
    }

    pub fn from_terms(r: usize, terms: impl IntoIterator<Item = (Partition, Q)>) -> Result<Self> {
        let mut p = Self::zero(r);
        for (k, v) in terms {
            if k.r() != r {
                return Err(Error::LengthMismatch {
                    left: r,
                    right: k.r(),
                });
            }
            p.add_term(k, v);
        }
        Ok(p)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> Q {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|k| k.weight()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, lambda: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(lambda) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.r);
        }
        SymPoly {
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    fn check_r(&self, other: &SymPoly) -> Result<()> {
        if self.r != other.r {
            return Err(Error::LengthMismatch {
                left: self.r,
                right: other.r,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SymPoly) -> Result<SymPoly> {
        self.check_r(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &SymPoly) -> Result<SymPoly> {
        sym_mul(self, other)
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        sym_eval(self, point)
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        self.try_add(rhs).expect("ambient length mismatch")
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        self.try_add(&-rhs).expect("ambient length mismatch")
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        sym_mul(self, rhs).expect("ambient length mismatch")
    }
}

/// Structure constants of m_λ · m_μ: the coefficient of m_ν is
/// orbit(μ)/orbit(ν) · #{a a rearrangement of λ : sort(a + μ) = ν}.
pub fn monomial_product(lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, Q> {
    let (lambda, mu) = if lambda.orbit_size() <= mu.orbit_size() {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for a in lambda.distinct_permutations() {
        let sum: Vec<u32> = a.iter().zip(mu.parts()).map(|(x, y)| x + y).collect();
        *counts.entry(Partition::from_exponents(&sum)).or_insert(0) += 1;
    }
    let om = mu.orbit_size();
    counts
        .into_iter()
        .map(|(nu, n)| {
            let on = nu.orbit_size();
            let c = Q::new(BigInt::from(n) * BigInt::from(om), BigInt::from(on));
            (nu, c)
        })
        .collect()
}

/// Exact product in the monomial basis.
pub fn sym_mul(p: &SymPoly, q: &SymPoly) -> Result<SymPoly> {
    p.check_r(q)?;
    let mut out = SymPoly::zero(p.r);
    for (l, a) in &p.coeffs {
        for (m, b) in &q.coeffs {
            let ab = a * b;
            for (nu, c) in monomial_product(l, m) {
                out.add_term(nu, &ab * c);
            }
        }
    }
    Ok(out)
}

/// Value of m_λ at a point.
pub fn monomial_eval(lambda: &Partition, point: &[Q]) -> Q {
    let maxp = lambda.parts().first().copied().unwrap_or(0);
    let powers: Vec<Vec<Q>> = point
        .iter()
        .map(|x| {
            let mut v = vec![Q::one()];
            for e in 1..=maxp as usize {
                let next = &v[e - 1] * x;
                v.push(next);
            }
            v
        })
        .collect();
    let mut total = Q::zero();
    for a in lambda.distinct_permutations() {
        let mut t = Q::one();
        for (i, &e) in a.iter().enumerate() {
            t *= &powers[i][e as usize];
        }
        total += t;
    }
    total
}

pub fn sym_eval(p: &SymPoly, point: &[Q]) -> Result<Q> {
    if point.len() != p.r {
        return Err(Error::LengthMismatch {
            left: p.r,
            right: point.len(),
        });
    }
    Ok(p.coeffs
        .iter()
        .map(|(l, c)| c * monomial_eval(l, point))
        .fold(Q::zero(), |a, b| a + b))
}

/// A symmetric power series in z_1..z_r, truncated at total degree D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    r: usize,
    max_degree: u32,
    coeffs: BTreeMap<Partition, Q>,
}

impl TruncatedSeries {
    pub fn zero(r: usize, max_degree: u32) -> Self {
        TruncatedSeries {
            r,
            max_degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(r: usize, max_degree: u32) -> Self {
        Self::from_poly(&SymPoly::one(r), max_degree)
    }

    /// Truncates a polynomial at degree D.
    pub fn from_poly(p: &SymPoly, max_degree: u32) -> Self {
        TruncatedSeries {
            r: p.r,
            max_degree,
            coeffs: p
                .coeffs
                .iter()
                .filter(|(k, _)| k.weight() <= max_degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn to_poly(&self) -> SymPoly {
        SymPoly {
            r: self.r,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> Q {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Q::zero)
    }

    fn insert(&mut self, k: Partition, v: Q) {
        if k.weight() > self.max_degree || v.is_zero() {
            return;
        }
        match self.coeffs.entry(k) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += v;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.r, self.max_degree);
        for (k, v) in &self.coeffs {
            out.insert(k.clone(), v * c);
        }
        out
    }

    /// Sum, truncated at the smaller of the two degrees.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::LengthMismatch {
                left: self.r,
                right: other.r,
            });
        }
        let mut out = Self::zero(self.r, self.max_degree.min(other.max_degree));
        for (k, v) in self.coeffs.iter().chain(&other.coeffs) {
            out.insert(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Product, truncated at the smaller of the two degrees.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::LengthMismatch {
                left: self.r,
                right: other.r,
            });
        }
        let d = self.max_degree.min(other.max_degree);
        let mut out = Self::zero(self.r, d);
        for (l, a) in &self.coeffs {
            for (m, b) in &other.coeffs {
                if l.weight() + m.weight() > d {
                    continue;
                }
                let ab = a * b;
                for (nu, c) in monomial_product(l, m) {
                    out.insert(nu, &ab * c);
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by a polynomial, keeping this series' truncation degree.
    pub fn mul_poly(&self, p: &SymPoly) -> Result<Self> {
        self.try_mul(&TruncatedSeries::from_poly(p, self.max_degree))
    }
}

/// Univariate truncated series helpers; index k holds the coefficient of z^k.
pub mod uni {
    use super::*;

    pub fn mul(a: &[Q], b: &[Q], d: u32) -> Vec<Q> {
        let n = d as usize + 1;
        let mut out = vec![Q::zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn one(d: u32) -> Vec<Q> {
        let mut v = vec![Q::zero(); d as usize + 1];
        v[0] = Q::one();
        v
    }

    /// Coefficients of (1 − t z)^β.
    pub fn binomial(beta: &Q, t: &Q, d: u32) -> Vec<Q> {
        let neg = -beta.clone();
        (0..=d)
            .map(|k| pochhammer(&neg, k) / factorial(k) * pow(t, k))
            .collect()
    }

    /// Coefficients of exp(t z).
    pub fn exp(t: &Q, d: u32) -> Vec<Q> {
        (0..=d).map(|k| pow(t, k) / factorial(k)).collect()
    }

    /// Coefficients of c_0 + c_1 z with the remaining terms zero.
    pub fn linear(c0: Q, c1: Q, d: u32) -> Vec<Q> {
        let mut v = vec![Q::zero(); d as usize + 1];
        v[0] = c0;
        if d >= 1 {
            v[1] = c1;
        }
        v
    }

    /// Coefficients of (1 − c z)/(1 − z) = 1 + (1 − c)(z + z² + …).
    pub fn moebius(c_inv: &Q, d: u32) -> Vec<Q> {
        let tail = Q::one() - c_inv;
        (0..=d)
            .map(|k| if k == 0 { Q::one() } else { tail.clone() })
            .collect()
    }

    /// The first `max_e + 1` powers g^0, g^1, ….
    pub fn powers(g: &[Q], max_e: u32, d: u32) -> Vec<Vec<Q>> {
        let mut out = vec![one(d)];
        for e in 1..=max_e as usize {
            let next = mul(&out[e - 1], g, d);
            out.push(next);
        }
        out
    }
}

/// The diagonal product ∏_i f(z_i): the coefficient of m_λ is ∏_i f_{λ_i}.
pub fn diagonal_product(f: &[Q], r: usize, d: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(r, d);
    let get = |k: u32| f.get(k as usize).cloned().unwrap_or_else(Q::zero);
    for lambda in enumerate_up_to(r, d) {
        let c = lambda.parts().iter().fold(Q::one(), |acc, &k| acc * get(k));
        out.insert(lambda, c);
    }
    out
}

/// ∏_i f(z_i) · p(g(z_1), …, g(z_r)), truncated at degree D, for univariate
/// series f (default 1) and g.
pub fn substitute(p: &SymPoly, g: &[Q], prefactor: Option<&[Q]>, d: u32) -> TruncatedSeries {
    let r = p.r;
    let max_e = p
        .coeffs
        .keys()
        .map(|k| k.parts().first().copied().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let mut gd = g.to_vec();
    gd.resize(d as usize + 1, Q::zero());
    let f = match prefactor {
        Some(f) => {
            let mut f = f.to_vec();
            f.resize(d as usize + 1, Q::zero());
            f
        }
        None => uni::one(d),
    };
    let table: Vec<Vec<Q>> = uni::powers(&gd, max_e, d)
        .iter()
        .map(|ge| uni::mul(&f, ge, d))
        .collect();
    let perms: Vec<(Q, Vec<Vec<u32>>)> = p
        .coeffs
        .iter()
        .map(|(l, c)| (c.clone(), l.distinct_permutations()))
        .collect();
    let mut out = TruncatedSeries::zero(r, d);
    for nu in enumerate_up_to(r, d) {
        let mut total = Q::zero();
        for (c, ps) in &perms {
            let mut s = Q::zero();
            for a in ps {
                let mut t = Q::one();
                for (i, &e) in a.iter().enumerate() {
                    let v = &table[e as usize][nu.parts()[i] as usize];
                    if v.is_zero() {
                        t = Q::zero();
                        break;
                    }
                    t *= v;
                }
                s += t;
            }
            total += c * s;
        }
        out.insert(nu, total);
    }
    out
}

/// Degree-≤D expansion of ∏_i (1 − t z_i)^β.
pub fn series_prod_binomial(beta: &Q, t: &Q, r: usize, d: u32) -> TruncatedSeries {
    diagonal_product(&uni::binomial(beta, t, d), r, d)
}

/// Degree-≤D expansion of exp(t (z_1 + … + z_r)).
pub fn series_exp_trace(t: &Q, r: usize, d: u32) -> TruncatedSeries {
    diagonal_product(&uni::exp(t, d), r, d)
}

/// Degree-≤D expansion of Φ_x((1 − c_inv z_i)/(1 − z_i)).
pub fn series_phi_of_moebius(
    x: &Partition,
    c_inv: &Q,
    jack: &JackTable,
    d: u32,
) -> Result<TruncatedSeries> {
    let phi = jack.phi(x)?;
    Ok(substitute(&phi, &uni::moebius(c_inv, d), None, d))
}
