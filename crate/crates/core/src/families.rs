//! The polynomial families: multivariate Meixner, Charlier, Krawtchouk and
//! Laguerre polynomials, their univariate counterparts, and the d = 2
//! determinant formulas.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::partition::{subpartitions, Partition};
use crate::rational::{binomial_int, factorial, format_rational, pochhammer, pow, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Meixner,
    Charlier,
    Krawtchouk,
    Laguerre,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Meixner => "meixner",
            Family::Charlier => "charlier",
            Family::Krawtchouk => "krawtchouk",
            Family::Laguerre => "laguerre",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "meixner" => Ok(Family::Meixner),
            "charlier" => Ok(Family::Charlier),
            "krawtchouk" => Ok(Family::Krawtchouk),
            "laguerre" => Ok(Family::Laguerre),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// Family together with the parameters it uses.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyParams {
    Meixner { alpha: Q, c: Q },
    Charlier { a: Q },
    Krawtchouk { p: Q, n: u32 },
    Laguerre { alpha: Q },
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::Meixner { .. } => Family::Meixner,
            FamilyParams::Charlier { .. } => Family::Charlier,
            FamilyParams::Krawtchouk { .. } => Family::Krawtchouk,
            FamilyParams::Laguerre { .. } => Family::Laguerre,
        }
    }

    /// Builds parameters from optional pieces, failing on a missing one.
    pub fn from_parts(
        family: Family,
        alpha: Option<Q>,
        c: Option<Q>,
        a: Option<Q>,
        p: Option<Q>,
        n: Option<u32>,
    ) -> Result<Self> {
        let need = |v: Option<Q>, name: &str| {
            v.ok_or_else(|| Error::Parameter(format!("{family} requires --{name}")))
        };
        let fp = match family {
            Family::Meixner => FamilyParams::Meixner {
                alpha: need(alpha, "alpha")?,
                c: need(c, "c")?,
            },
            Family::Charlier => FamilyParams::Charlier { a: need(a, "a")? },
            Family::Krawtchouk => FamilyParams::Krawtchouk {
                p: need(p, "p")?,
                n: n.ok_or_else(|| Error::Parameter("krawtchouk requires --N".into()))?,
            },
            Family::Laguerre => FamilyParams::Laguerre {
                alpha: need(alpha, "alpha")?,
            },
        };
        fp.validate()?;
        Ok(fp)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilyParams::Meixner { c, .. } if c.is_zero() => {
                Err(Error::Parameter("c must be nonzero".into()))
            }
            FamilyParams::Charlier { a } if a.is_zero() => {
                Err(Error::Parameter("a must be nonzero".into()))
            }
            FamilyParams::Krawtchouk { p, .. } if p.is_zero() => {
                Err(Error::Parameter("p must be nonzero".into()))
            }
            _ => Ok(()),
        }
    }

    /// Name/value pairs for reports.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        match self {
            FamilyParams::Meixner { alpha, c } => {
                vec![("alpha", format_rational(alpha)), ("c", format_rational(c))]
            }
            FamilyParams::Charlier { a } => vec![("a", format_rational(a))],
            FamilyParams::Krawtchouk { p, n } => {
                vec![("p", format_rational(p)), ("N", n.to_string())]
            }
            FamilyParams::Laguerre { alpha } => vec![("alpha", format_rational(alpha))],
        }
    }
}

/// Componentwise minimum: the largest partition inside both.
fn meet(m: &Partition, x: &Partition) -> Partition {
    let v: Vec<u32> = m
        .parts()
        .iter()
        .zip(x.parts())
        .map(|(a, b)| *a.min(b))
        .collect();
    Partition::from_exponents(&v)
}

fn check_pair(m: &Partition, x: &Partition, cone: &Cone) -> Result<()> {
    for p in [m, x] {
        if p.r() != cone.r() {
            return Err(Error::LengthMismatch {
                left: cone.r(),
                right: p.r(),
            });
        }
    }
    Ok(())
}

/// Σ_{k ⊂ m∩x} d_k γ_k(m−ρ) γ_k(x−ρ) / ((n/r)_k · den(k)) · t^{|k|}.
fn core_sum(
    m: &Partition,
    x: &Partition,
    cone: &Cone,
    t: &Q,
    den: impl Fn(&Partition) -> Option<Q>,
    pole_param: &str,
) -> Result<Q> {
    check_pair(m, x, cone)?;
    let nr = &cone.params().rank_ratio;
    let mut total = Q::zero();
    for k in subpartitions(&meet(m, x)) {
        let extra = match den(&k) {
            Some(v) if v.is_zero() => {
                return Err(Error::Pole {
                    param: pole_param.to_string(),
                    k,
                })
            }
            Some(v) => v,
            None => Q::one(),
        };
        let gm = cone.gamma_k(&k, m)?;
        if gm.is_zero() {
            continue;
        }
        let gx = cone.gamma_k(&k, x)?;
        if gx.is_zero() {
            continue;
        }
        let dk = cone.dim_partition(&k)?;
        total += dk * gm * gx / (cone.gen_pochhammer(nr, &k) * extra) * pow(t, k.weight());
    }
    Ok(total)
}

/// M_m(x; α, c).
pub fn meixner(m: &Partition, x: &Partition, alpha: &Q, c: &Q, cone: &Cone) -> Result<Q> {
    if c.is_zero() {
        return Err(Error::Parameter("c must be nonzero".into()));
    }
    let t = Q::one() - Q::one() / c;
    core_sum(
        m,
        x,
        cone,
        &t,
        |k| Some(cone.gen_pochhammer(alpha, k)),
        &format!("alpha = {}", format_rational(alpha)),
    )
}

/// C_m(x; a).
pub fn charlier(m: &Partition, x: &Partition, a: &Q, cone: &Cone) -> Result<Q> {
    if a.is_zero() {
        return Err(Error::Parameter("a must be nonzero".into()));
    }
    let t = -(Q::one() / a);
    core_sum(m, x, cone, &t, |_| None, "a")
}

/// K_m(x; p, N), defined for m ⊂ (N, …, N).
pub fn krawtchouk(m: &Partition, x: &Partition, p: &Q, n: u32, cone: &Cone) -> Result<Q> {
    if p.is_zero() {
        return Err(Error::Parameter("p must be nonzero".into()));
    }
    check_pair(m, x, cone)?;
    if m.parts().first().copied().unwrap_or(0) > n {
        return Err(Error::Domain(format!(
            "m = {m} is not contained in N = {n}"
        )));
    }
    let t = Q::one() / p;
    let neg_n = -q(n as i64);
    core_sum(
        m,
        x,
        cone,
        &t,
        |k| Some(cone.gen_pochhammer(&neg_n, k)),
        &format!("-N = -{n}"),
    )
}

/// L_m^{(α − n/r)}(u) at the diagonal point u.
pub fn laguerre(m: &Partition, u: &[Q], alpha: &Q, cone: &Cone) -> Result<Q> {
    if m.r() != cone.r() {
        return Err(Error::LengthMismatch {
            left: cone.r(),
            right: m.r(),
        });
    }
    let nr = &cone.params().rank_ratio;
    let pre = cone.dim_partition(m)? * cone.gen_pochhammer(alpha, m) / cone.gen_pochhammer(nr, m);
    let mut total = Q::zero();
    for k in subpartitions(m) {
        let ak = cone.gen_pochhammer(alpha, &k);
        if ak.is_zero() {
            return Err(Error::Pole {
                param: format!("alpha = {}", format_rational(alpha)),
                k,
            });
        }
        let b = cone.binomial(m, &k)?;
        if b.is_zero() {
            continue;
        }
        let sign = if k.weight() % 2 == 0 { q(1) } else { q(-1) };
        total += sign * b / ak * cone.jack().phi(&k)?.eval(u)?;
    }
    Ok(pre * total)
}

/// Evaluates the family named by `params` at (m, x).
pub fn evaluate(params: &FamilyParams, m: &Partition, x: &Partition, cone: &Cone) -> Result<Q> {
    match params {
        FamilyParams::Meixner { alpha, c } => meixner(m, x, alpha, c, cone),
        FamilyParams::Charlier { a } => charlier(m, x, a, cone),
        FamilyParams::Krawtchouk { p, n } => krawtchouk(m, x, p, *n, cone),
        FamilyParams::Laguerre { alpha } => {
            let u: Vec<Q> = x.parts().iter().map(|&v| q(v as i64)).collect();
            laguerre(m, &u, alpha, cone)
        }
    }
}

/// The classical one-variable polynomials as finite hypergeometric sums.
pub mod univariate {
    use super::*;

    fn sum(m: u32, x: u32, t: &Q, den: impl Fn(u32) -> Q, param: &str) -> Result<Q> {
        let mut total = Q::zero();
        for k in 0..=m.min(x) {
            let dk = den(k);
            if dk.is_zero() {
                return Err(Error::Pole {
                    param: param.to_string(),
                    k: Partition::from_exponents(&[k]),
                });
            }
            total += factorial(k) * binomial_int(m, k) * binomial_int(x, k) / dk * pow(t, k);
        }
        Ok(total)
    }

    pub fn meixner(m: u32, x: u32, alpha: &Q, c: &Q) -> Result<Q> {
        if c.is_zero() {
            return Err(Error::Parameter("c must be nonzero".into()));
        }
        sum(
            m,
            x,
            &(Q::one() - Q::one() / c),
            |k| pochhammer(alpha, k),
            &format!("alpha = {}", format_rational(alpha)),
        )
    }

    pub fn charlier(m: u32, x: u32, a: &Q) -> Result<Q> {
        if a.is_zero() {
            return Err(Error::Parameter("a must be nonzero".into()));
        }
        sum(m, x, &-(Q::one() / a), |_| Q::one(), "a")
    }

    pub fn krawtchouk(m: u32, x: u32, p: &Q, n: u32) -> Result<Q> {
        if p.is_zero() {
            return Err(Error::Parameter("p must be nonzero".into()));
        }
        let neg = -q(n as i64);
        sum(
            m,
            x,
            &(Q::one() / p),
            |k| pochhammer(&neg, k),
            &format!("-N = -{n}"),
        )
    }
}

/// One-variable polynomial of the given family.
pub fn univariate(params: &FamilyParams, m: u32, x: u32) -> Result<Q> {
    match params {
        FamilyParams::Meixner { alpha, c } => univariate::meixner(m, x, alpha, c),
        FamilyParams::Charlier { a } => univariate::charlier(m, x, a),
        FamilyParams::Krawtchouk { p, n } => univariate::krawtchouk(m, x, p, *n),
        FamilyParams::Laguerre { .. } => Err(Error::Parameter(
            "no discrete univariate Laguerre polynomial".into(),
        )),
    }
}

fn determinant(mut a: Vec<Vec<Q>>) -> Q {
    let n = a.len();
    let mut det = Q::one();
    for col in 0..n {
        let piv = match (col..n).find(|&i| !a[i][col].is_zero()) {
            Some(p) => p,
            None => return Q::zero(),
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= &a[col][col];
        for i in (col + 1)..n {
            let f = &a[i][col] / &a[col][col];
            if f.is_zero() {
                continue;
            }
            let (top, rest) = a.split_at_mut(i);
            for (aij, pj) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *aij -= &f * pj;
            }
        }
    }
    det
}

type EntryFn = Box<dyn Fn(u32, u32) -> Result<Q>>;

/// The d = 2 determinant expression of the family at (m, x).
pub fn determinant_formula(
    params: &FamilyParams,
    m: &Partition,
    x: &Partition,
    cone: &Cone,
) -> Result<Q> {
    if cone.d() != &q(2) {
        return Err(Error::Domain("determinant formulas require d = 2".into()));
    }
    check_pair(m, x, cone)?;
    let r = cone.r();
    let pairs = (r * (r - 1) / 2) as u32;
    let delta_fact = (1..=r).fold(Q::one(), |a, j| a * factorial((r - j) as u32));
    let sm = cone.jack().principal(m)?.clone();
    let sx = cone.jack().principal(x)?.clone();
    let shift = |p: &Partition, i: usize| p.parts()[i] + (r - 1 - i) as u32;
    let (prefactor, entry): (Q, EntryFn) = match params {
        FamilyParams::Meixner { alpha, c } => {
            if alpha.is_integer() && alpha <= &q(r as i64 - 1) {
                return Err(Error::Domain(format!(
                    "determinant formula excludes integral alpha <= {}",
                    r - 1
                )));
            }
            let a2 = alpha - q(r as i64 - 1);
            let t = Q::one() - Q::one() / c;
            let prod = (1..=r).fold(Q::one(), |acc, j| acc * pochhammer(&a2, (j - 1) as u32));
            let c = c.clone();
            (
                prod / pow(&t, pairs),
                Box::new(move |mm, xx| univariate::meixner(mm, xx, &a2, &c)),
            )
        }
        FamilyParams::Charlier { a } => {
            let a = a.clone();
            (
                pow(&-a.clone(), pairs),
                Box::new(move |mm, xx| univariate::charlier(mm, xx, &a)),
            )
        }
        FamilyParams::Krawtchouk { p, n } => {
            let top = *n;
            for v in [m, x] {
                if v.parts().first().copied().unwrap_or(0) > top {
                    return Err(Error::Domain(format!("{v} is not contained in N = {top}")));
                }
            }
            let neg = -q(top as i64 + r as i64 - 1);
            let prod = (1..=r).fold(Q::one(), |acc, j| acc * pochhammer(&neg, (j - 1) as u32));
            let p = p.clone();
            let big = top + r as u32 - 1;
            (
                pow(&p, pairs) * prod,
                Box::new(move |mm, xx| univariate::krawtchouk(mm, xx, &p, big)),
            )
        }
        FamilyParams::Laguerre { .. } => {
            return Err(Error::Parameter(
                "no determinant formula for Laguerre".into(),
            ))
        }
    };
    let mut mat = Vec::with_capacity(r);
    for mu in 0..r {
        let mut row = Vec::with_capacity(r);
        for nu in 0..r {
            row.push(entry(shift(m, mu), shift(x, nu))?);
        }
        mat.push(row);
    }
    let den = delta_fact * sm * sx;
    Ok(prefactor / den * determinant(mat))
}

/// True when m ⊂ (N, …, N).
pub fn inside_rectangle(m: &Partition, n: u32) -> bool {
    m.parts().first().copied().unwrap_or(0) <= n
}

/// Convenience: the sign of a rational as −1, 0 or 1.
pub fn signum(v: &Q) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_up_to;
    use crate::rational::qr;
    use proptest::prelude::*;

    fn p(parts: &[u32], r: usize) -> Partition {
        Partition::new(parts, r).unwrap()
    }

    #[test]
    fn normalisation() {
        let cone = Cone::new(2, &qr(5, 2), 4).unwrap();
        let e = Partition::empty(2);
        for x in cone.partitions(4) {
            assert_eq!(meixner(&e, &x, &qr(7, 2), &qr(1, 3), &cone).unwrap(), q(1));
            assert_eq!(meixner(&x, &e, &qr(7, 2), &qr(1, 3), &cone).unwrap(), q(1));
            assert_eq!(charlier(&e, &x, &q(2), &cone).unwrap(), q(1));
            assert_eq!(krawtchouk(&x, &e, &qr(1, 3), 4, &cone).unwrap(), q(1));
        }
    }

    #[test]
    fn scalar_examples() {
        let cone = Cone::new(1, &q(1), 3).unwrap();
        let one = p(&[1], 1);
        assert_eq!(
            meixner(&one, &one, &q(2), &qr(1, 2), &cone).unwrap(),
            qr(1, 2)
        );
        for x in 0..4u32 {
            assert_eq!(
                charlier(&one, &p(&[x], 1), &q(3), &cone).unwrap(),
                q(1) - q(x as i64) / q(3)
            );
        }
        assert_eq!(krawtchouk(&one, &one, &qr(1, 2), 2, &cone).unwrap(), q(0));
        assert_eq!(univariate::charlier(2, 1, &q(1)).unwrap(), q(-1));
        assert_eq!(univariate::meixner(0, 5, &q(2), &q(3)).unwrap(), q(1));
        assert_eq!(univariate::krawtchouk(0, 5, &q(2), 3).unwrap(), q(1));
    }

    #[test]
    fn errors() {
        let cone = Cone::new(2, &q(2), 4).unwrap();
        let m = p(&[2, 1], 2);
        assert!(matches!(
            meixner(&m, &m, &q(0), &qr(1, 2), &cone),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            charlier(&m, &m, &q(0), &cone),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            krawtchouk(&p(&[3], 2), &m, &qr(1, 3), 2, &cone),
            Err(Error::Domain(_))
        ));
        // (−1)_k vanishes first at k = (2)
        assert!(matches!(
            meixner(&p(&[2], 2), &p(&[2], 2), &q(-1), &qr(1, 2), &cone),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn laguerre_examples() {
        let cone = Cone::new(2, &qr(5, 2), 3).unwrap();
        let alpha = qr(9, 2);
        let zero = vec![q(0), q(0)];
        let e = Partition::empty(2);
        assert_eq!(laguerre(&e, &[q(3), q(1)], &alpha, &cone).unwrap(), q(1));
        for m in cone.partitions(3) {
            let nr = cone.params().rank_ratio.clone();
            let expected = cone.dim_partition(&m).unwrap() * cone.gen_pochhammer(&alpha, &m)
                / cone.gen_pochhammer(&nr, &m);
            assert_eq!(laguerre(&m, &zero, &alpha, &cone).unwrap(), expected);
        }
        // r = 1: classical L_m^{(α−1)}(u) = Σ_k (α)_m/(α)_k · (−u)^k/(k!(m−k)!)
        let c1 = Cone::new(1, &q(2), 4).unwrap();
        let u = qr(3, 2);
        for m in 0..=4u32 {
            let classical = (0..=m).fold(Q::zero(), |acc, k| {
                acc + pochhammer(&alpha, m) / pochhammer(&alpha, k) * pow(&-u.clone(), k)
                    / (factorial(k) * factorial(m - k))
            });
            assert_eq!(
                laguerre(&p(&[m], 1), std::slice::from_ref(&u), &alpha, &c1).unwrap(),
                classical
            );
        }
    }

    #[test]
    fn scalar_case_is_classical() {
        let cone = Cone::new(1, &qr(5, 2), 6).unwrap();
        for m in 0..=6u32 {
            for x in 0..=6u32 {
                let (pm, px) = (p(&[m], 1), p(&[x], 1));
                assert_eq!(
                    meixner(&pm, &px, &q(2), &qr(1, 2), &cone).unwrap(),
                    univariate::meixner(m, x, &q(2), &qr(1, 2)).unwrap()
                );
                assert_eq!(
                    charlier(&pm, &px, &q(1), &cone).unwrap(),
                    univariate::charlier(m, x, &q(1)).unwrap()
                );
                if m <= 4 {
                    assert_eq!(
                        krawtchouk(&pm, &px, &qr(1, 3), 4, &cone).unwrap(),
                        univariate::krawtchouk(m, x, &qr(1, 3), 4).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let c1 = Cone::new(1, &q(2), 4).unwrap();
        let mx = FamilyParams::Meixner {
            alpha: qr(7, 2),
            c: qr(1, 3),
        };
        for m in 0..=4u32 {
            for x in 0..=4u32 {
                assert_eq!(
                    determinant_formula(&mx, &p(&[m], 1), &p(&[x], 1), &c1).unwrap(),
                    univariate(&mx, m, x).unwrap()
                );
            }
        }
        let cone = Cone::new(2, &q(2), 4).unwrap();
        let fams = [
            mx,
            FamilyParams::Charlier { a: q(2) },
            FamilyParams::Krawtchouk { p: qr(1, 3), n: 4 },
        ];
        for fp in &fams {
            for m in cone.partitions(3) {
                for x in cone.partitions(3) {
                    assert_eq!(
                        determinant_formula(fp, &m, &x, &cone).unwrap(),
                        evaluate(fp, &m, &x, &cone).unwrap(),
                        "{fp:?} {m:?} {x:?}"
                    );
                }
            }
        }
        let bad = FamilyParams::Meixner {
            alpha: q(1),
            c: qr(1, 3),
        };
        assert!(matches!(
            determinant_formula(&bad, &p(&[1], 2), &p(&[1], 2), &cone),
            Err(Error::Domain(_))
        ));
        let c3 = Cone::new(2, &q(3), 2).unwrap();
        assert!(determinant_formula(&fams[1], &p(&[1], 2), &p(&[1], 2), &c3).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn duality_and_krawtchouk_relation(
            r in 1usize..4,
            dn in 1i64..6,
            pn in 1i64..5,
            big_n in 2u32..4,
        ) {
            let d = qr(dn, 2);
            let cone = Cone::new(r, &d, 3).unwrap();
            let alpha = qr(7, 2);
            let c = qr(1, 3);
            let pp = qr(pn, 7);
            let ms = enumerate_up_to(r, 3);
            for m in &ms {
                for x in &ms {
                    prop_assert_eq!(
                        meixner(m, x, &alpha, &c, &cone).unwrap(),
                        meixner(x, m, &alpha, &c, &cone).unwrap()
                    );
                    prop_assert_eq!(
                        charlier(m, x, &q(2), &cone).unwrap(),
                        charlier(x, m, &q(2), &cone).unwrap()
                    );
                    if inside_rectangle(m, big_n) && inside_rectangle(x, big_n) {
                        let k = krawtchouk(m, x, &pp, big_n, &cone).unwrap();
                        prop_assert_eq!(&k, &krawtchouk(x, m, &pp, big_n, &cone).unwrap());
                        let cm = &pp / (&pp - q(1));
                        let viam = meixner(m, x, &-q(big_n as i64), &cm, &cone).unwrap();
                        prop_assert_eq!(k, viam);
                    }
                }
            }
        }
    }
}
