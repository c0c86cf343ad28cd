//! Orthogonality relations: the finite Krawtchouk sum checked exactly, and the
//! infinite Meixner and Charlier sums checked by truncation.

use num_traits::{One, ToPrimitive, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::families::{charlier, krawtchouk, meixner};
use crate::partition::{enumerate_up_to, Partition};
use crate::rational::{format_rational, is_integer, pow, to_f64, Q};
use crate::verify::report::{relative_gap, Case, Num, VerificationReport};

/// Default tolerances for truncated checks.
pub const REL_TOL: f64 = 1e-8;
pub const ABS_TOL: f64 = 1e-10;

/// Σ_{x⊂N} binom(N,x) p^{|x|}(1−p)^{rN−|x|} K_m(x)K_n(x) = ((1−p)/p)^{|m|}/binom(N,m)·δ.
pub fn orthogonality_krawtchouk(cone: &Cone, big_n: u32, p: &Q) -> Result<VerificationReport> {
    if !(p > &Q::zero() && p < &Q::one()) {
        return Err(Error::Domain(format!(
            "krawtchouk orthogonality needs 0 < p < 1, got {}",
            format_rational(p)
        )));
    }
    let r = cone.r();
    let box_n = Partition::rectangle(big_n, r);
    let inside: Vec<Partition> = enumerate_up_to(r, big_n * r as u32)
        .into_iter()
        .filter(|x| x.contained_in(&box_n).unwrap_or(false))
        .collect();
    let one_minus = Q::one() - p;
    let rn = big_n * r as u32;
    let mut weights = Vec::with_capacity(inside.len());
    for x in &inside {
        let w = cone.binomial_rectangle(big_n, x)?
            * pow(p, x.weight())
            * pow(&one_minus, rn - x.weight());
        weights.push(w);
    }
    let mut values = Vec::with_capacity(inside.len());
    for m in &inside {
        let row: Result<Vec<Q>> = inside
            .iter()
            .map(|x| krawtchouk(m, x, p, big_n, cone))
            .collect();
        values.push(row?);
    }
    let mut rep = VerificationReport::new("orthogonality-krawtchouk")
        .param("family", "krawtchouk")
        .param("d", format_rational(cone.d()))
        .param("r", r)
        .param("N", big_n)
        .param("p", format_rational(p));
    rep.truncation.degree = Some(rn);
    let ratio = &one_minus / p;
    for (i, m) in inside.iter().enumerate() {
        for (k, n) in inside.iter().enumerate().skip(i) {
            let mut lhs = Q::zero();
            for (xi, w) in weights.iter().enumerate() {
                lhs += w * &values[i][xi] * &values[k][xi];
            }
            let rhs = if i == k {
                pow(&ratio, m.weight()) / cone.binomial_rectangle(big_n, m)?
            } else {
                Q::zero()
            };
            rep.push(Case::exact(lhs, rhs).with_m(m).with_n(n));
        }
    }
    Ok(rep.finish())
}

/// Which truncated relation to check.
#[derive(Clone, Debug)]
pub enum Truncated {
    Meixner { alpha: Q, c: Q },
    Charlier { a: Q },
}

/// Options for the truncated orthogonality checks.
#[derive(Clone, Debug)]
pub struct TruncationPlan {
    pub max_index_weight: u32,
    pub weights: Vec<u32>,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl TruncationPlan {
    pub fn new(max_index_weight: u32, weights: &[u32]) -> Self {
        TruncationPlan {
            max_index_weight,
            weights: weights.to_vec(),
            rel_tol: REL_TOL,
            abs_tol: ABS_TOL,
        }
    }
}

/// Partial sums of the Meixner or Charlier orthogonality relation at each
/// truncation weight, compared against the closed-form norm.
pub fn orthogonality_truncated(
    cone: &Cone,
    which: &Truncated,
    plan: &TruncationPlan,
) -> Result<VerificationReport> {
    let r = cone.r();
    let nr = cone.params().rank_ratio.clone();
    let levels = plan.weights.clone();
    if levels.is_empty() {
        return Err(Error::Parameter(
            "at least one truncation weight is required".into(),
        ));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(
            "truncation weights must be increasing".into(),
        ));
    }
    let top = *levels.last().expect("nonempty");

    let mut rep = match which {
        Truncated::Meixner { alpha, c } => {
            let floor = &nr - Q::one();
            if alpha <= &floor || c <= &Q::zero() || c >= &Q::one() {
                return Err(Error::Domain(format!(
                    "meixner orthogonality needs alpha > n/r - 1 = {} and 0 < c < 1",
                    format_rational(&floor)
                )));
            }
            VerificationReport::new("orthogonality-meixner")
                .param("family", "meixner")
                .param("alpha", format_rational(alpha))
                .param("c", format_rational(c))
        }
        Truncated::Charlier { a } => {
            if a <= &Q::zero() {
                return Err(Error::Domain("charlier orthogonality needs a > 0".into()));
            }
            VerificationReport::new("orthogonality-charlier")
                .param("family", "charlier")
                .param("a", format_rational(a))
        }
    };
    rep.set_param("d", format_rational(cone.d()));
    rep.set_param("r", r);
    rep.set_param("max_index_weight", plan.max_index_weight);
    rep.set_param("rel_tol", plan.rel_tol);
    rep.set_param("abs_tol", plan.abs_tol);
    rep.truncation.weights = levels.clone();

    let indices = enumerate_up_to(r, plan.max_index_weight);
    let eval = |m: &Partition, x: &Partition| match which {
        Truncated::Meixner { alpha, c } => meixner(m, x, alpha, c, cone),
        Truncated::Charlier { a } => charlier(m, x, a, cone),
    };
    let weight = |x: &Partition| -> Result<Q> {
        let dx = cone.dim_partition(x)?;
        Ok(match which {
            Truncated::Meixner { alpha, c } => {
                dx * cone.gen_pochhammer(alpha, x) / cone.gen_pochhammer(&nr, x)
                    * pow(c, x.weight())
            }
            Truncated::Charlier { a } => dx * pow(a, x.weight()) / cone.gen_pochhammer(&nr, x),
        })
    };

    // shell sums: shell[w][pair] is the exact contribution of all |x| = w
    let pairs: Vec<(usize, usize)> = (0..indices.len())
        .flat_map(|i| (i..indices.len()).map(move |k| (i, k)))
        .collect();
    let mut shells: Vec<Vec<Q>> = Vec::with_capacity(top as usize + 1);
    for w in 0..=top {
        let mut acc = vec![Q::zero(); pairs.len()];
        for x in crate::partition::partitions_of(w, r) {
            let wx = weight(&x)?;
            let vals: Result<Vec<Q>> = indices.iter().map(|m| eval(m, &x)).collect();
            let vals = vals?;
            for (slot, (i, k)) in pairs.iter().enumerate() {
                acc[slot] += &wx * &vals[*i] * &vals[*k];
            }
        }
        shells.push(acc);
    }

    let mut tail = 0.0f64;
    for (slot, (i, k)) in pairs.iter().enumerate() {
        let m = &indices[*i];
        let n = &indices[*k];
        let rhs = if i == k {
            norm(cone, which, m)?
        } else {
            Num::Exact(Q::zero())
        };
        let rhs_f = rhs.to_f64();
        let mut partial = Q::zero();
        let mut next_level = 0;
        let mut residuals = Vec::with_capacity(levels.len());
        let mut lhs_last = Q::zero();
        for (w, shell) in shells.iter().enumerate() {
            partial += &shell[slot];
            if next_level < levels.len() && w as u32 == levels[next_level] {
                let lhs_f = to_f64(&partial);
                residuals.push(if i == k {
                    relative_gap(lhs_f, rhs_f)
                } else {
                    lhs_f.abs()
                });
                lhs_last = partial.clone();
                next_level += 1;
            }
        }
        let last_shell = to_f64(&shells[top as usize][slot]).abs();
        let scale = if i == k {
            rhs_f.abs().max(f64::MIN_POSITIVE)
        } else {
            1.0
        };
        tail = tail.max(last_shell / scale);
        let final_res = *residuals.last().expect("nonempty");
        let tol = if i == k { plan.rel_tol } else { plan.abs_tol };
        let monotone = residuals.windows(2).all(|w| w[1] <= w[0]);
        let lhs_f = to_f64(&lhs_last);
        rep.push(Case {
            m: Some(m.to_string()),
            n: Some(n.to_string()),
            detail: Some(if i == k { "relative" } else { "absolute" }.to_string()),
            lhs: Some(Num::Float(lhs_f)),
            rhs: Some(rhs),
            residual: Some(Num::Float(final_res)),
            pass: final_res <= tol && monotone,
            levels: residuals,
            ..Case::default()
        });
    }
    rep.truncation.tail_estimate = Some(tail);
    Ok(rep.finish())
}

/// The closed-form squared norm; exact when it is rational.
fn norm(cone: &Cone, which: &Truncated, m: &Partition) -> Result<Num> {
    let r = cone.r();
    let nr = &cone.params().rank_ratio;
    let dm = cone.dim_partition(m)?;
    match which {
        Truncated::Meixner { alpha, c } => {
            let base = pow(&(Q::one() / c), m.weight()) * cone.gen_pochhammer(nr, m)
                / (dm * cone.gen_pochhammer(alpha, m));
            let exponent = alpha * Q::from_integer((r as i64).into());
            let one_minus = Q::one() - c;
            if is_integer(&exponent) {
                let e = exponent.to_integer().to_i64().unwrap_or(0);
                let f = if e >= 0 {
                    Q::one() / pow(&one_minus, e as u32)
                } else {
                    pow(&one_minus, (-e) as u32)
                };
                Ok(Num::Exact(base * f))
            } else {
                let f = (-(to_f64(&exponent)) * to_f64(&one_minus).ln()).exp();
                Ok(Num::Float(to_f64(&base) * f))
            }
        }
        Truncated::Charlier { a } => {
            let base = pow(&(Q::one() / a), m.weight()) * cone.gen_pochhammer(nr, m) / dm;
            let f = (r as f64 * to_f64(a)).exp();
            Ok(Num::Float(to_f64(&base) * f))
        }
    }
}
