//! Cone constants for rank r and multiplicity d: ρ, n/r, generalized
//! Pochhammer symbols, dimensions d_m, generalized binomial coefficients,
//! γ_k at partition arguments and the Pieri coefficients ã_j.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::jack::JackTable;
use crate::partition::{enumerate_up_to, Partition};
use crate::rational::{factorial, pochhammer, q, to_f64, Q};
use crate::symfun::{substitute, uni, SymPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct ConeParams {
    pub r: usize,
    pub d: Q,
    /// n = r + (d/2) r (r−1).
    pub n: Q,
    /// n/r = 1 + (d/2)(r−1).
    pub rank_ratio: Q,
    /// ρ_j = (d/4)(2j − r − 1), j = 1..r.
    pub rho: Vec<Q>,
}

impl ConeParams {
    pub fn new(r: usize, d: &Q) -> Result<Self> {
        if r == 0 {
            return Err(Error::Parameter("r must be at least 1".into()));
        }
        if !d.is_positive() {
            return Err(Error::Parameter(format!("d must be positive, got {d}")));
        }
        let half = d / q(2);
        let rq = q(r as i64);
        let rank_ratio = Q::one() + &half * (&rq - Q::one());
        let n = &rank_ratio * &rq;
        let rho = (1..=r)
            .map(|j| d / q(4) * q(2 * j as i64 - r as i64 - 1))
            .collect();
        Ok(ConeParams {
            r,
            d: d.clone(),
            n,
            rank_ratio,
            rho,
        })
    }

    pub fn half_d(&self) -> Q {
        &self.d / q(2)
    }

    /// True when the identities are known theorems for (r, d): d ∈ {1, 2, 4},
    /// r = 2 with integral d, r = 3 with d = 8, or the scalar case r = 1.
    pub fn is_classical(&self) -> bool {
        let d = &self.d;
        let int = d.is_integer();
        self.r == 1
            || *d == q(1)
            || *d == q(2)
            || *d == q(4)
            || (self.r == 2 && int)
            || (self.r == 3 && *d == q(8))
    }
}

/// (s)_m = Π_j (s − (d/2)(j−1))_{m_j}.
pub fn gen_pochhammer(s: &Q, m: &Partition, params: &ConeParams) -> Q {
    let half = params.half_d();
    m.parts()
        .iter()
        .enumerate()
        .fold(Q::one(), |acc, (j, &mj)| {
            acc * pochhammer(&(s - &half * q(j as i64)), mj)
        })
}

/// Floating-point evaluation of the Γ-product formula for d_m.
pub fn dim_partition_gamma_check(m: &Partition, params: &ConeParams) -> f64 {
    let h = to_f64(&params.d) / 2.0;
    let r = params.r;
    let mut log = 0.0;
    for j in 1..=r {
        let jf = j as f64;
        log += ln_gamma(h) - ln_gamma(h * jf) - ln_gamma(h * (jf - 1.0) + 1.0);
    }
    let parts = m.parts();
    for p in 0..r {
        for qq in (p + 1)..r {
            let diff = parts[p] as f64 - parts[qq] as f64;
            let gap = (qq - p) as f64;
            log += (diff + h * gap).ln();
            log += ln_gamma(diff + h * (gap + 1.0)) - ln_gamma(diff + h * (gap - 1.0) + 1.0);
        }
    }
    log.exp()
}

/// ã_j(x) = Π_{k≠j} (x_j − x_k − (d/2)(j−k−1)) / (x_j − x_k − (d/2)(j−k)).
pub fn a_tilde(j: usize, x: &[Q], params: &ConeParams) -> Result<Q> {
    a_product(j, x, params, -1)
}

/// a_j(ρ − y) = Π_{k≠j} (y_j − y_k − (d/2)(j−k+1)) / (y_j − y_k − (d/2)(j−k)):
/// the coefficient that the reflected Pieri term carries at s = y − ρ.
pub fn a_tilde_reflected(j: usize, y: &[Q], params: &ConeParams) -> Result<Q> {
    a_product(j, y, params, 1)
}

fn a_product(j: usize, x: &[Q], params: &ConeParams, shift: i64) -> Result<Q> {
    if x.len() != params.r {
        return Err(Error::LengthMismatch {
            left: params.r,
            right: x.len(),
        });
    }
    if j == 0 || j > params.r {
        return Err(Error::Domain(format!(
            "index j = {j} outside 1..={}",
            params.r
        )));
    }
    let half = params.half_d();
    let mut acc = Q::one();
    for k in 1..=params.r {
        if k == j {
            continue;
        }
        let diff = &x[j - 1] - &x[k - 1];
        let jk = j as i64 - k as i64;
        let den = &diff - &half * q(jk);
        if den.is_zero() {
            return Err(Error::Singular { j, k });
        }
        acc *= (diff - &half * q(jk + shift)) / den;
    }
    Ok(acc)
}

/// A Jack table together with memoized cone constants.
#[derive(Debug)]
pub struct Cone {
    params: ConeParams,
    jack: JackTable,
    dims: Mutex<HashMap<Partition, Q>>,
    binomials: Mutex<HashMap<Partition, Arc<BTreeMap<Partition, Q>>>>,
}

impl Cone {
    pub fn new(r: usize, d: &Q, max_degree: u32) -> Result<Self> {
        Ok(Self::from_table(JackTable::build(r, d, max_degree)?))
    }

    pub fn from_table(jack: JackTable) -> Self {
        let params = ConeParams::new(jack.r(), jack.d()).expect("table parameters are valid");
        Cone {
            params,
            jack,
            dims: Mutex::new(HashMap::new()),
            binomials: Mutex::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &ConeParams {
        &self.params
    }

    pub fn jack(&self) -> &JackTable {
        &self.jack
    }

    pub fn r(&self) -> usize {
        self.params.r
    }

    pub fn d(&self) -> &Q {
        &self.params.d
    }

    pub fn built_degree(&self) -> u32 {
        self.jack.built_degree()
    }

    /// Extends the Jack table; memoized values stay valid.
    pub fn ensure_degree(&mut self, degree: u32) {
        if degree > self.jack.built_degree() {
            self.jack.extend(degree);
        }
    }

    pub fn gen_pochhammer(&self, s: &Q, m: &Partition) -> Q {
        gen_pochhammer(s, m, &self.params)
    }

    pub fn a_tilde(&self, j: usize, x: &[Q]) -> Result<Q> {
        a_tilde(j, x, &self.params)
    }

    pub fn a_tilde_reflected(&self, j: usize, y: &[Q]) -> Result<Q> {
        a_tilde_reflected(j, y, &self.params)
    }

    fn check(&self, m: &Partition) -> Result<()> {
        if m.r() != self.params.r {
            return Err(Error::LengthMismatch {
                left: self.params.r,
                right: m.r(),
            });
        }
        if m.weight() > self.jack.built_degree() {
            return Err(Error::DegreeExceeded {
                requested: m.weight(),
                built: self.jack.built_degree(),
            });
        }
        Ok(())
    }

    /// d_m = (n/r)_m · [Φ_m] p_1^{|m|} / |m|!.
    pub fn dim_partition(&self, m: &Partition) -> Result<Q> {
        self.check(m)?;
        if let Some(v) = self.dims.lock().expect("dims lock").get(m) {
            return Ok(v.clone());
        }
        let w = m.weight();
        let power = SymPoly::from_terms(
            self.params.r,
            crate::partition::partitions_of(w, self.params.r)
                .into_iter()
                .map(|l| {
                    let den = l.parts().iter().fold(Q::one(), |a, &p| a * factorial(p));
                    (l, factorial(w) / den)
                }),
        )?;
        let expansion = self.jack.to_phi_basis(&power)?;
        let fw = factorial(w);
        let mut dims = self.dims.lock().expect("dims lock");
        for (k, c) in expansion {
            let dk = self.gen_pochhammer(&self.params.rank_ratio, &k) * c / &fw;
            dims.insert(k, dk);
        }
        dims.get(m)
            .cloned()
            .ok_or_else(|| Error::Internal(format!("dimension of {m} missing from expansion")))
    }

    /// Φ_m(1 + λ) in the Φ basis: k ↦ binom(m, k).
    pub fn binomial_expansion(&self, m: &Partition) -> Result<Arc<BTreeMap<Partition, Q>>> {
        self.check(m)?;
        if let Some(v) = self.binomials.lock().expect("binomial lock").get(m) {
            return Ok(v.clone());
        }
        let phi = self.jack.phi(m)?;
        let shifted = substitute(
            &phi,
            &uni::linear(Q::one(), Q::one(), m.weight()),
            None,
            m.weight(),
        );
        let exp = Arc::new(self.jack.series_to_phi_basis(&shifted)?);
        self.binomials
            .lock()
            .expect("binomial lock")
            .insert(m.clone(), exp.clone());
        Ok(exp)
    }

    /// Generalized binomial coefficient binom(m, k).
    pub fn binomial(&self, m: &Partition, k: &Partition) -> Result<Q> {
        if k.r() != m.r() {
            return Err(Error::LengthMismatch {
                left: m.r(),
                right: k.r(),
            });
        }
        if !k.contained_in(m)? {
            return Ok(Q::zero());
        }
        Ok(self
            .binomial_expansion(m)?
            .get(k)
            .cloned()
            .unwrap_or_else(Q::zero))
    }

    /// γ_k(m − ρ) = (n/r)_k / d_k · binom(m, k).
    pub fn gamma_k(&self, k: &Partition, m: &Partition) -> Result<Q> {
        let b = self.binomial(m, k)?;
        if b.is_zero() {
            return Ok(b);
        }
        let dk = self.dim_partition(k)?;
        Ok(self.gen_pochhammer(&self.params.rank_ratio, k) / dk * b)
    }

    /// binom((N, …, N), k) = d_k/(n/r)_k · (−1)^{|k|} (−N)_k.
    pub fn binomial_rectangle(&self, big_n: u32, k: &Partition) -> Result<Q> {
        let dk = self.dim_partition(k)?;
        let sign = if k.weight().is_multiple_of(2) {
            q(1)
        } else {
            q(-1)
        };
        Ok(dk / self.gen_pochhammer(&self.params.rank_ratio, k)
            * sign
            * self.gen_pochhammer(&-q(big_n as i64), k))
    }

    /// All ã_j(m) from the Pieri expansion of the Jack table.
    pub fn pieri_coeffs(&self, m: &Partition) -> Result<BTreeMap<usize, Q>> {
        self.jack.pieri_coeffs(m)
    }

    /// All partitions of weight ≤ D, for convenience.
    pub fn partitions(&self, max_weight: u32) -> Vec<Partition> {
        enumerate_up_to(self.params.r, max_weight)
    }
}

/// The coordinates of a partition as rationals.
pub fn as_point(m: &Partition) -> Vec<Q> {
    m.parts().iter().map(|&p| q(p as i64)).collect()
}
