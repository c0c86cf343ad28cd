//! Generating-function identities, compared coefficientwise in the Φ basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::families::{charlier, inside_rectangle, krawtchouk, meixner, FamilyParams};
use crate::partition::{enumerate_up_to, Partition};
use crate::rational::{format_rational, pow, q, to_f64, Q};
use crate::symfun::{series_exp_trace, substitute, uni, SymPoly, TruncatedSeries};
use crate::verify::orthogonality::{ABS_TOL, REL_TOL};
use crate::verify::report::{relative_gap, Case, Num, VerificationReport};

fn sign(k: &Partition) -> Q {
    if k.weight().is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

fn need_degree(cone: &Cone, deg: u32) -> Result<()> {
    if cone.built_degree() < deg {
        return Err(Error::DegreeExceeded {
            requested: deg,
            built: cone.built_degree(),
        });
    }
    Ok(())
}

/// Φ-basis coefficients of prefactor(z)·Φ_x(g(z_1), …, g(z_r)) up to degree D.
fn phi_coefficients(
    cone: &Cone,
    x: &Partition,
    g: &[Q],
    prefactor: &[Q],
    degree: u32,
) -> Result<BTreeMap<Partition, Q>> {
    let phi = cone.jack().phi(x)?;
    let series = substitute(&phi, g, Some(prefactor), degree);
    cone.jack().series_to_phi_basis(&series)
}

/// Sign convention that matched the Krawtchouk generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KrawtchoukSign {
    /// Coefficient of Φ_n(z) is binom(N,n) K_n(x).
    Plus,
    /// Coefficient of Φ_n(z) is (−1)^{|n|} binom(N,n) K_n(x), i.e. the series is in Φ_n(−z).
    Minus,
    Neither,
}

impl KrawtchoukSign {
    pub fn label(self) -> &'static str {
        match self {
            KrawtchoukSign::Plus => "phi(z)",
            KrawtchoukSign::Minus => "phi(-z)",
            KrawtchoukSign::Neither => "none",
        }
    }
}

/// The generating function of one family in z, at fixed x, to degree D.
pub fn genfunc_family(
    fp: &FamilyParams,
    cone: &Cone,
    x: &Partition,
    degree: u32,
) -> Result<VerificationReport> {
    need_degree(cone, degree.max(x.weight()))?;
    let nr = cone.params().rank_ratio.clone();
    let mut rep = VerificationReport::new("genfunc")
        .param("family", fp.family())
        .param("d", format_rational(cone.d()))
        .param("r", cone.r())
        .param("x", x);
    for (k, v) in fp.echo() {
        rep.set_param(k, v);
    }
    rep.truncation.degree = Some(degree);
    let grid = enumerate_up_to(cone.r(), degree);
    match fp {
        FamilyParams::Meixner { alpha, c } => {
            let pre = uni::binomial(&-alpha.clone(), &q(1), degree);
            let g = uni::moebius(&(Q::one() / c), degree);
            let got = phi_coefficients(cone, x, &g, &pre, degree)?;
            for n in &grid {
                let expected = cone.dim_partition(n)? * cone.gen_pochhammer(alpha, n)
                    / cone.gen_pochhammer(&nr, n)
                    * meixner(n, x, alpha, c, cone)?;
                let lhs = got.get(n).cloned().unwrap_or_else(Q::zero);
                rep.push(Case::exact(lhs, expected).with_n(n).with_x(x));
            }
        }
        FamilyParams::Charlier { a } => {
            let pre = uni::exp(&q(1), degree);
            let g = uni::linear(Q::one(), -(Q::one() / a), degree);
            let got = phi_coefficients(cone, x, &g, &pre, degree)?;
            for n in &grid {
                let expected =
                    cone.dim_partition(n)? / cone.gen_pochhammer(&nr, n) * charlier(n, x, a, cone)?;
                let lhs = got.get(n).cloned().unwrap_or_else(Q::zero);
                rep.push(Case::exact(lhs, expected).with_n(n).with_x(x));
            }
        }
        FamilyParams::Krawtchouk { p, n: big_n } => {
            if !inside_rectangle(x, *big_n) {
                return Err(Error::Domain(format!(
                    "x = {x} is not contained in N = {big_n}"
                )));
            }
            let pre = uni::binomial(&q(*big_n as i64), &q(-1), degree);
            let inv = uni::binomial(&q(-1), &q(-1), degree);
            let t = (Q::one() - p) / p;
            let g = uni::mul(&uni::linear(Q::one(), -t, degree), &inv, degree);
            let got = phi_coefficients(cone, x, &g, &pre, degree)?;
            let mut plain = Vec::with_capacity(grid.len());
            for n in &grid {
                let v = if inside_rectangle(n, *big_n) {
                    cone.binomial_rectangle(*big_n, n)? * krawtchouk(n, x, p, *big_n, cone)?
                } else {
                    Q::zero()
                };
                plain.push(v);
            }
            let lhs_of = |n: &Partition| got.get(n).cloned().unwrap_or_else(Q::zero);
            let plus = grid.iter().zip(&plain).all(|(n, v)| &lhs_of(n) == v);
            let minus = grid
                .iter()
                .zip(&plain)
                .all(|(n, v)| lhs_of(n) == sign(n) * v);
            let convention = if plus {
                KrawtchoukSign::Plus
            } else if minus {
                KrawtchoukSign::Minus
            } else {
                KrawtchoukSign::Neither
            };
            rep.sign_convention = Some(convention.label().to_string());
            for (n, v) in grid.iter().zip(plain) {
                let expected = match convention {
                    KrawtchoukSign::Minus => sign(n) * v,
                    _ => v,
                };
                rep.push(
                    Case::exact(lhs_of(n), expected)
                        .with_n(n)
                        .with_x(x)
                        .with_detail(convention.label()),
                );
            }
        }
        FamilyParams::Laguerre { .. } => {
            return Err(Error::Parameter(
                "no generating function check for Laguerre".into(),
            ))
        }
    }
    Ok(rep.finish())
}

/// genfunc_family over every x of weight ≤ D (x ⊂ N for Krawtchouk).
pub fn genfunc_grid(fp: &FamilyParams, cone: &Cone, degree: u32) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("genfunc")
        .param("family", fp.family())
        .param("d", format_rational(cone.d()))
        .param("r", cone.r());
    for (k, v) in fp.echo() {
        rep.set_param(k, v);
    }
    rep.truncation.degree = Some(degree);
    let mut conventions = Vec::new();
    for x in enumerate_up_to(cone.r(), degree) {
        if let FamilyParams::Krawtchouk { n, .. } = fp {
            if !inside_rectangle(&x, *n) {
                continue;
            }
        }
        let sub = genfunc_family(fp, cone, &x, degree)?;
        if let Some(s) = &sub.sign_convention {
            conventions.push(s.clone());
        }
        rep.cases.extend(sub.cases);
    }
    if !conventions.is_empty() {
        conventions.dedup();
        rep.sign_convention = Some(if conventions.len() == 1 {
            conventions.remove(0)
        } else {
            "mixed".to_string()
        });
    }
    Ok(rep.finish())
}

/// Which master generating function to check.
#[derive(Clone, Debug)]
pub enum Master {
    Meixner { alpha: Q, c: Q },
    Charlier { a: Q },
}

/// Coefficientwise check of the master generating function: for each m of
/// weight ≤ D_z, the Φ_x coefficients (|x| ≤ D_w) of the w-series.
pub fn master_genfunc(which: &Master, cone: &Cone, dz: u32, dw: u32) -> Result<VerificationReport> {
    need_degree(cone, dz.max(dw))?;
    let r = cone.r();
    let nr = cone.params().rank_ratio.clone();
    let mut rep = match which {
        Master::Meixner { alpha, c } => VerificationReport::new("master-genfunc")
            .param("family", "meixner")
            .param("alpha", format_rational(alpha))
            .param("c", format_rational(c)),
        Master::Charlier { a } => VerificationReport::new("master-genfunc")
            .param("family", "charlier")
            .param("a", format_rational(a)),
    };
    rep.set_param("d", format_rational(cone.d()));
    rep.set_param("r", r);
    rep.set_param("D_z", dz);
    rep.set_param("D_w", dw);
    rep.truncation.degree = Some(dz.max(dw));
    let exp_w = series_exp_trace(&q(1), r, dw);
    let xs = enumerate_up_to(r, dw);
    for m in enumerate_up_to(r, dz) {
        let dm = cone.dim_partition(&m)?;
        let (inner, scale) = match which {
            Master::Meixner { alpha, c } => {
                // L_m((1/c − 1)w) = d_m(α)_m/(n/r)_m Σ_k (−1)^{|k|} binom(m,k)/(α)_k (1/c − 1)^{|k|} Φ_k(w)
                let t = Q::one() / c - Q::one();
                let mut poly = SymPoly::zero(r);
                for (k, b) in cone.binomial_expansion(&m)?.iter() {
                    let ak = cone.gen_pochhammer(alpha, k);
                    if ak.is_zero() {
                        return Err(Error::Pole {
                            param: format!("alpha = {}", format_rational(alpha)),
                            k: k.clone(),
                        });
                    }
                    let coef = sign(k) * b / ak * pow(&t, k.weight());
                    poly = &poly + &cone.jack().phi(k)?.scale(&coef);
                }
                let pre = &dm * cone.gen_pochhammer(alpha, &m) / cone.gen_pochhammer(&nr, &m);
                (poly.scale(&pre), pre)
            }
            Master::Charlier { a } => {
                let phi = cone.jack().phi(&m)?;
                let g = uni::linear(Q::one(), -(Q::one() / a), dw);
                (substitute(&phi, &g, None, dw).to_poly(), Q::one())
            }
        };
        let series = exp_w.mul_poly(&inner)?;
        let got = cone.jack().series_to_phi_basis(&series)?;
        for x in &xs {
            let dx = cone.dim_partition(x)?;
            let expected = match which {
                Master::Meixner { alpha, c } => {
                    &scale * &dx / cone.gen_pochhammer(&nr, x) * meixner(&m, x, alpha, c, cone)?
                }
                Master::Charlier { a } => {
                    &dx / cone.gen_pochhammer(&nr, x) * charlier(&m, x, a, cone)?
                }
            };
            let lhs = got.get(x).cloned().unwrap_or_else(Q::zero);
            rep.push(Case::exact(lhs, expected).with_m(&m).with_x(x));
        }
    }
    Ok(rep.finish())
}

/// The kernel K_x(w) = Π(1 − c w_i)^{−α} Φ_x((1 − w_i)/(1 − c w_i)) to degree D.
fn kernel_series(
    cone: &Cone,
    x: &Partition,
    alpha: &Q,
    c: &Q,
    degree: u32,
) -> Result<TruncatedSeries> {
    let pre = uni::binomial(&-alpha.clone(), c, degree);
    let inv = uni::binomial(&q(-1), c, degree);
    let g = uni::mul(&uni::linear(Q::one(), q(-1), degree), &inv, degree);
    let phi = cone.jack().phi(x)?;
    Ok(substitute(&phi, &g, Some(&pre), degree))
}

/// The Meixner-weighted kernel expansion behind the orthogonality relation.
///
/// Part (a) checks exactly that K_x(w) has Φ_n coefficient
/// d_n(α)_n/(n/r)_n·M_n(x)·c^{|n|}. Part (b) forms the truncated double sum
/// (1−c)^{rα} Σ_{|x|≤T} d_x(α)_x c^{|x|}/(n/r)_x · M_m(x) · [Φ_n]K_x and
/// compares it with δ_{m,n}, which is the diagonal kernel after dividing out
/// d_m(α)_m/(n/r)_m.
pub fn orthogonality_generator(
    cone: &Cone,
    alpha: &Q,
    c: &Q,
    degree: u32,
    weights: &[u32],
) -> Result<VerificationReport> {
    if !(c > &Q::zero() && c < &Q::one()) {
        return Err(Error::Domain(
            "orthogonality generator needs 0 < c < 1".into(),
        ));
    }
    if weights.is_empty() || weights.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(
            "truncation weights must be nonempty and increasing".into(),
        ));
    }
    let top = *weights.last().expect("nonempty");
    need_degree(cone, top.max(degree))?;
    let r = cone.r();
    let nr = cone.params().rank_ratio.clone();
    let mut rep = VerificationReport::new("orthogonality-generator")
        .param("family", "meixner")
        .param("alpha", format_rational(alpha))
        .param("c", format_rational(c))
        .param("d", format_rational(cone.d()))
        .param("r", r)
        .param("D", degree);
    rep.truncation.degree = Some(degree);
    rep.truncation.weights = weights.to_vec();

    let ns = enumerate_up_to(r, degree);
    // [Φ_n] K_x for every x up to the top weight
    let mut kernel: Vec<(Partition, BTreeMap<Partition, Q>)> = Vec::new();
    for x in enumerate_up_to(r, top) {
        let coeffs = cone
            .jack()
            .series_to_phi_basis(&kernel_series(cone, &x, alpha, c, degree)?)?;
        if x.weight() <= degree {
            for n in &ns {
                let expected = cone.dim_partition(n)? * cone.gen_pochhammer(alpha, n)
                    / cone.gen_pochhammer(&nr, n)
                    * meixner(n, &x, alpha, c, cone)?
                    * pow(c, n.weight());
                let lhs = coeffs.get(n).cloned().unwrap_or_else(Q::zero);
                rep.push(
                    Case::exact(lhs, expected)
                        .with_n(n)
                        .with_x(&x)
                        .with_detail("kernel coefficient"),
                );
            }
        }
        kernel.push((x, coeffs));
    }

    let front = (-(to_f64(alpha) * r as f64) * (1.0 - to_f64(c)).ln())
        .exp()
        .recip();
    let mut weighted = Vec::with_capacity(kernel.len());
    for (x, _) in &kernel {
        weighted.push(
            cone.dim_partition(x)? * cone.gen_pochhammer(alpha, x) / cone.gen_pochhammer(&nr, x)
                * pow(c, x.weight()),
        );
    }
    let mut tail = 0.0f64;
    for m in &ns {
        let mut mvals = Vec::with_capacity(kernel.len());
        for (x, _) in &kernel {
            mvals.push(meixner(m, x, alpha, c, cone)?);
        }
        for n in &ns {
            let mut shells = vec![Q::zero(); top as usize + 1];
            for (i, (x, coeffs)) in kernel.iter().enumerate() {
                if let Some(kn) = coeffs.get(n) {
                    shells[x.weight() as usize] += &weighted[i] * &mvals[i] * kn;
                }
            }
            let target = if m == n { 1.0 } else { 0.0 };
            let mut partial = Q::zero();
            let mut levels = Vec::with_capacity(weights.len());
            for (w, sh) in shells.iter().enumerate() {
                partial += sh;
                if weights.contains(&(w as u32)) {
                    let v = front * to_f64(&partial);
                    levels.push(if m == n {
                        relative_gap(v, target)
                    } else {
                        v.abs()
                    });
                }
            }
            tail = tail.max(front * to_f64(&shells[top as usize]).abs());
            let res = *levels.last().expect("nonempty");
            let tol = if m == n { REL_TOL } else { ABS_TOL };
            let monotone = levels.windows(2).all(|w| w[1] <= w[0]);
            rep.push(Case {
                m: Some(m.to_string()),
                n: Some(n.to_string()),
                detail: Some("truncated double sum".into()),
                lhs: Some(Num::Float(front * to_f64(&partial))),
                rhs: Some(Num::Exact(if m == n { Q::one() } else { Q::zero() })),
                residual: Some(Num::Float(res)),
                pass: res <= tol && monotone,
                levels,
                ..Case::default()
            });
        }
    }
    rep.truncation.tail_estimate = Some(tail);
    Ok(rep.finish())
}

/// Both spherical Taylor expansions, coefficientwise to degree D:
/// (α)_k Π(1−w_i)^{−α} Φ_k(w/(1−w)) = Σ_x d_x(α)_x/(n/r)_x γ_k(x−ρ) Φ_x(w), and
/// e^{tr w} Φ_k(w) = Σ_x d_x/(n/r)_x γ_k(x−ρ) Φ_x(w).
pub fn spherical_taylor(cone: &Cone, alpha: &Q, degree: u32) -> Result<VerificationReport> {
    need_degree(cone, degree)?;
    let r = cone.r();
    let nr = cone.params().rank_ratio.clone();
    let mut rep = VerificationReport::new("spherical-taylor")
        .param("alpha", format_rational(alpha))
        .param("d", format_rational(cone.d()))
        .param("r", r)
        .param("D", degree);
    rep.truncation.degree = Some(degree);
    let grid = enumerate_up_to(r, degree);
    let pre = uni::binomial(&-alpha.clone(), &q(1), degree);
    // w/(1 − w) = w + w² + …
    let g: Vec<Q> = (0..=degree)
        .map(|k| if k == 0 { Q::zero() } else { Q::one() })
        .collect();
    let exp = uni::exp(&q(1), degree);
    let ident = uni::linear(Q::zero(), Q::one(), degree);
    for k in &grid {
        let ak = cone.gen_pochhammer(alpha, k);
        let first = cone
            .jack()
            .series_to_phi_basis(&phi_coefficients_series(cone, k, &g, &pre, degree)?)?;
        let second = cone
            .jack()
            .series_to_phi_basis(&phi_coefficients_series(cone, k, &ident, &exp, degree)?)?;
        for x in &grid {
            let gk = cone.gamma_k(k, x)?;
            let dx = cone.dim_partition(x)?;
            let px = cone.gen_pochhammer(&nr, x);
            let lhs1 = &ak * first.get(x).cloned().unwrap_or_else(Q::zero);
            let rhs1 = &dx * cone.gen_pochhammer(alpha, x) / &px * &gk;
            rep.push(
                Case::exact(lhs1, rhs1)
                    .with_m(k)
                    .with_x(x)
                    .with_detail("rational"),
            );
            let lhs2 = second.get(x).cloned().unwrap_or_else(Q::zero);
            let rhs2 = dx / px * gk;
            rep.push(
                Case::exact(lhs2, rhs2)
                    .with_m(k)
                    .with_x(x)
                    .with_detail("exponential"),
            );
        }
    }
    Ok(rep.finish())
}

fn phi_coefficients_series(
    cone: &Cone,
    k: &Partition,
    g: &[Q],
    pre: &[Q],
    degree: u32,
) -> Result<TruncatedSeries> {
    let phi = cone.jack().phi(k)?;
    Ok(substitute(&phi, g, Some(pre), degree))
}
