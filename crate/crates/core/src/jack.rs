//! Jack polynomials P_λ^{(α)} with α = 2/d, their normalisations
//! Φ_λ = P_λ / P_λ(1, …, 1), and conversion into the Φ basis.
//!
//! P_λ is the eigenfunction of the Laplace–Beltrami operator
//!
//! D = (α/2) Σ x_i² ∂_i² + Σ_{i<j} (x_i² ∂_i − x_j² ∂_j)/(x_i − x_j)
//!
//! that is unitriangular in the monomial basis with respect to dominance.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_up_to, partitions_of, Partition};
use crate::rational::{format_rational, parse_rational, Q};
use crate::symfun::{SymPoly, TruncatedSeries};

#[derive(Clone, Debug)]
pub struct JackTable {
    r: usize,
    d: Q,
    alpha: Q,
    table: BTreeMap<Partition, SymPoly>,
    principal: BTreeMap<Partition, Q>,
    built_degree: u32,
}

/// On-disk form: partition → list of (monomial partition, coefficient).
pub type JackDump = BTreeMap<String, Vec<(String, String)>>;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    r: usize,
    d: String,
    max_degree: u32,
    table: JackDump,
}

impl JackTable {
    pub fn build(r: usize, d: &Q, max_degree: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::Parameter("r must be at least 1".into()));
        }
        if !d.is_positive() {
            return Err(Error::Parameter(format!(
                "d must be positive, got {}",
                format_rational(d)
            )));
        }
        let mut t = JackTable {
            r,
            d: d.clone(),
            alpha: Q::from_integer(2.into()) / d,
            table: BTreeMap::new(),
            principal: BTreeMap::new(),
            built_degree: 0,
        };
        t.insert(Partition::empty(r), SymPoly::one(r));
        t.extend(max_degree);
        Ok(t)
    }

    /// Adds every weight up to `max_degree`; existing entries are untouched.
    pub fn extend(&mut self, max_degree: u32) {
        for w in (self.built_degree + 1)..=max_degree {
            self.build_weight(w);
        }
        self.built_degree = self.built_degree.max(max_degree);
    }

    fn insert(&mut self, lambda: Partition, p: SymPoly) {
        let principal = p
            .coeffs()
            .iter()
            .map(|(k, c)| c * Q::from_integer(k.orbit_size().into()))
            .fold(Q::zero(), |a, b| a + b);
        self.principal.insert(lambda.clone(), principal);
        self.table.insert(lambda, p);
    }

    fn build_weight(&mut self, w: u32) {
        let parts = partitions_of(w, self.r);
        let ops: BTreeMap<Partition, BTreeMap<Partition, Q>> = parts
            .iter()
            .map(|nu| (nu.clone(), laplace_beltrami(nu, &self.alpha)))
            .collect();
        let diag = |mu: &Partition| ops[mu].get(mu).cloned().unwrap_or_else(Q::zero);
        for (li, lambda) in parts.iter().enumerate() {
            let e_lambda = diag(lambda);
            let mut u: BTreeMap<Partition, Q> = BTreeMap::new();
            u.insert(lambda.clone(), Q::one());
            // lex-descending order: every ν ▷ μ is seen before μ
            for mu in &parts[li + 1..] {
                if !mu.dominated_by(lambda) {
                    continue;
                }
                let mut s = Q::zero();
                for (nu, un) in &u {
                    if let Some(c) = ops[nu].get(mu) {
                        s += c * un;
                    }
                }
                if !s.is_zero() {
                    u.insert(mu.clone(), s / (&e_lambda - diag(mu)));
                }
            }
            let poly = SymPoly::from_terms(self.r, u).expect("consistent length");
            self.insert(lambda.clone(), poly);
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> &Q {
        &self.d
    }

    pub fn alpha(&self) -> &Q {
        &self.alpha
    }

    pub fn built_degree(&self) -> u32 {
        self.built_degree
    }

    fn check(&self, m: &Partition) -> Result<()> {
        if m.r() != self.r {
            return Err(Error::LengthMismatch {
                left: self.r,
                right: m.r(),
            });
        }
        if m.weight() > self.built_degree {
            return Err(Error::DegreeExceeded {
                requested: m.weight(),
                built: self.built_degree,
            });
        }
        Ok(())
    }

    /// P_m in the monomial basis.
    pub fn jack_p(&self, m: &Partition) -> Result<&SymPoly> {
        self.check(m)?;
        Ok(&self.table[m])
    }

    /// P_m(1, …, 1).
    pub fn principal(&self, m: &Partition) -> Result<&Q> {
        self.check(m)?;
        Ok(&self.principal[m])
    }

    /// Φ_m = P_m / P_m(1, …, 1).
    pub fn phi(&self, m: &Partition) -> Result<SymPoly> {
        self.check(m)?;
        Ok(self.table[m].scale(&(Q::one() / &self.principal[m])))
    }

    /// Coefficients c_m with p = Σ c_m Φ_m.
    pub fn to_phi_basis(&self, p: &SymPoly) -> Result<BTreeMap<Partition, Q>> {
        if p.r() != self.r {
            return Err(Error::LengthMismatch {
                left: self.r,
                right: p.r(),
            });
        }
        let deg = p.degree();
        if deg > self.built_degree {
            return Err(Error::DegreeExceeded {
                requested: deg,
                built: self.built_degree,
            });
        }
        let mut rem: BTreeMap<Partition, Q> = p.coeffs().clone();
        let mut out = BTreeMap::new();
        for mu in enumerate_up_to(self.r, deg) {
            let c = match rem.remove(&mu) {
                Some(c) if !c.is_zero() => c,
                _ => continue,
            };
            let scale = &c * &self.principal[&mu];
            for (nu, v) in self.table[&mu].coeffs() {
                if nu == &mu {
                    continue;
                }
                let e = rem.entry(nu.clone()).or_insert_with(Q::zero);
                *e -= &c * v;
            }
            out.insert(mu, scale);
        }
        Ok(out)
    }

    pub fn series_to_phi_basis(&self, s: &TruncatedSeries) -> Result<BTreeMap<Partition, Q>> {
        self.to_phi_basis(&s.to_poly())
    }

    /// ã_j(m) with m_(1) Φ_m = Σ_j ã_j(m) Φ_{m+ε_j}, by basis expansion.
    pub fn pieri_coeffs(&self, m: &Partition) -> Result<BTreeMap<usize, Q>> {
        self.check(m)?;
        if m.weight() + 1 > self.built_degree {
            return Err(Error::DegreeExceeded {
                requested: m.weight() + 1,
                built: self.built_degree,
            });
        }
        let prod = &SymPoly::p1(self.r) * &self.phi(m)?;
        let expansion = self.to_phi_basis(&prod)?;
        let mut out = BTreeMap::new();
        for (k, c) in expansion {
            let j = (1..=self.r)
                .find(|&j| m.box_move(j, 1).as_ref() == Some(&k))
                .ok_or_else(|| {
                    Error::Internal(format!("Pieri expansion of Φ_{m} reached Φ_{k}"))
                })?;
            out.insert(j, c);
        }
        Ok(out)
    }

    pub fn dump(&self) -> JackDump {
        self.table
            .iter()
            .map(|(k, p)| {
                (
                    k.to_string(),
                    p.coeffs()
                        .iter()
                        .map(|(m, c)| (m.to_string(), format_rational(c)))
                        .collect(),
                )
            })
            .collect()
    }

    pub fn from_dump(r: usize, d: &Q, max_degree: u32, dump: &JackDump) -> Result<Self> {
        let mut t = JackTable {
            r,
            d: d.clone(),
            alpha: Q::from_integer(2.into()) / d,
            table: BTreeMap::new(),
            principal: BTreeMap::new(),
            built_degree: max_degree,
        };
        for lambda in enumerate_up_to(r, max_degree) {
            let entry = dump
                .get(&lambda.to_string())
                .ok_or_else(|| Error::Parse(format!("table dump lacks {lambda}")))?;
            let mut terms = Vec::with_capacity(entry.len());
            for (m, c) in entry {
                let m: Partition = m.parse()?;
                terms.push((m, parse_rational(c)?));
            }
            t.insert(lambda, SymPoly::from_terms(r, terms)?);
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let f = CacheFile {
            r: self.r,
            d: format_rational(&self.d),
            max_degree: self.built_degree,
            table: self.dump(),
        };
        serde_json::to_string(&f).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: CacheFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("table cache: {e}")))?;
        let d = parse_rational(&f.d)?;
        Self::from_dump(f.r, &d, f.max_degree, &f.table)
    }

    /// Loads `(r, d, degree)` from `dir` when cached, else builds and stores it.
    pub fn cached(dir: &std::path::Path, r: usize, d: &Q, max_degree: u32) -> Result<Self> {
        let name = format!(
            "jack-r{}-d{}-deg{}.json",
            r,
            format_rational(d).replace('/', "_"),
            max_degree
        );
        let path = dir.join(name);
        if let Ok(s) = std::fs::read_to_string(&path) {
            if let Ok(t) = Self::from_json(&s) {
                if t.r == r && &t.d == d && t.built_degree == max_degree {
                    return Ok(t);
                }
            }
        }
        let t = Self::build(r, d, max_degree)?;
        if std::fs::create_dir_all(dir).is_ok() {
            let tmp = path.with_extension("tmp");
            if std::fs::write(&tmp, t.to_json()).is_ok() {
                let _ = std::fs::rename(&tmp, &path);
            }
        }
        Ok(t)
    }
}

/// D applied to m_ν, collected in the monomial basis.
fn laplace_beltrami(nu: &Partition, alpha: &Q) -> BTreeMap<Partition, Q> {
    let r = nu.r();
    let half_alpha = alpha / Q::from_integer(2.into());
    let mut out: BTreeMap<Partition, Q> = BTreeMap::new();
    let mut add = |v: &[u32], c: Q| {
        if v.windows(2).all(|w| w[0] >= w[1]) {
            let e = out
                .entry(Partition::from_exponents(v))
                .or_insert_with(Q::zero);
            *e += c;
        }
    };
    for a in nu.distinct_permutations() {
        let diag: u64 = a
            .iter()
            .map(|&e| (e as u64) * (e as u64).saturating_sub(1))
            .sum();
        if diag > 0 {
            add(&a, &half_alpha * Q::from_integer(diag.into()));
        }
        for i in 0..r {
            for j in (i + 1)..r {
                let (p, q) = (a[i], a[j]);
                if p < q {
                    continue;
                }
                let mut v = a.clone();
                if p == q {
                    if p > 0 {
                        v[i] = p;
                        v[j] = p;
                        add(&v, Q::from_integer(p.into()));
                    }
                    continue;
                }
                // this term and its (i,j)-swap together give
                // p·[x_i^{p+1} x_j^q]_alt − q·[x_i^p x_j^{q+1}]_alt over (x_i − x_j)
                for (coef, hi, lo) in [(p as i64, p + 1, q), (-(q as i64), p, q + 1)] {
                    if coef == 0 || hi <= lo {
                        continue;
                    }
                    for k in 0..(hi - lo) {
                        v[i] = lo + (hi - lo - 1 - k);
                        v[j] = lo + k;
                        add(&v, Q::from_integer(coef.into()));
                    }
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}
