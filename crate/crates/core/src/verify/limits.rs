//! Degenerate limits towards Charlier, with a fitted convergence order.

use num_traits::Zero;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::families::{charlier, krawtchouk, meixner};
use crate::partition::enumerate_up_to;
use crate::rational::{format_rational, q, to_f64, Q};
use crate::verify::report::{Case, Num, VerificationReport};

pub const MIN_ORDER: f64 = 0.9;

/// Which limit to follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    /// M_m(x; α, a/(a+α)) → C_m(x; a) as α → ∞.
    MeixnerToCharlier,
    /// K_m(x; a/N, N) → C_m(x; a) as N → ∞.
    KrawtchoukToCharlier,
}

impl Limit {
    pub fn label(self) -> &'static str {
        match self {
            Limit::MeixnerToCharlier => "meixner-to-charlier",
            Limit::KrawtchoukToCharlier => "krawtchouk-to-charlier",
        }
    }
}

/// Least-squares slope of ln(gap) against ln(parameter), negated.
pub fn fitted_order(params: &[f64], gaps: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = params
        .iter()
        .zip(gaps)
        .filter(|(_, g)| **g > 0.0)
        .map(|(p, g)| (p.ln(), g.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(-sxy / sxx)
}

/// Gaps along `sequence` for all m, x of weight ≤ `max_weight`.
pub fn limit_check(
    cone: &Cone,
    limit: Limit,
    a: &Q,
    max_weight: u32,
    sequence: &[u64],
) -> Result<VerificationReport> {
    if a.is_zero() {
        return Err(Error::Parameter("a must be nonzero".into()));
    }
    if sequence.len() < 2 {
        return Err(Error::Parameter(
            "need at least two points in the sequence".into(),
        ));
    }
    let mut rep = VerificationReport::new("limits")
        .param("limit", limit.label())
        .param("a", format_rational(a))
        .param("d", format_rational(cone.d()))
        .param("r", cone.r())
        .param("max_weight", max_weight)
        .param(
            "sequence",
            sequence
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(","),
        )
        .param("min_order", MIN_ORDER);
    let grid = enumerate_up_to(cone.r(), max_weight);
    let xs: Vec<f64> = sequence.iter().map(|&s| s as f64).collect();
    for m in &grid {
        for x in &grid {
            let target = charlier(m, x, a, cone)?;
            let mut gaps = Vec::with_capacity(sequence.len());
            let mut last = Q::zero();
            for &s in sequence {
                let big = q(s as i64);
                let v = match limit {
                    Limit::MeixnerToCharlier => {
                        let c = a / (a + &big);
                        meixner(m, x, &big, &c, cone)?
                    }
                    Limit::KrawtchoukToCharlier => {
                        let n = u32::try_from(s)
                            .map_err(|_| Error::Parameter(format!("N = {s} too large")))?;
                        krawtchouk(m, x, &(a / &big), n, cone)?
                    }
                };
                let gap = &v - &target;
                gaps.push(to_f64(&gap).abs());
                last = v;
            }
            let all_zero = gaps.iter().all(|g| *g == 0.0);
            let order = fitted_order(&xs, &gaps);
            let pass = all_zero || order.is_some_and(|o| o >= MIN_ORDER);
            let residual = *gaps.last().expect("nonempty");
            rep.push(Case {
                m: Some(m.to_string()),
                x: Some(x.to_string()),
                detail: Some(match order {
                    Some(o) => format!("order {o:.4}"),
                    None if all_zero => "identically zero gap".to_string(),
                    None => "order undetermined".to_string(),
                }),
                lhs: Some(Num::Exact(last)),
                rhs: Some(Num::Exact(target)),
                residual: Some(Num::Float(residual)),
                levels: gaps,
                pass,
                ..Case::default()
            });
        }
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn slope_of_power_law() {
        let xs = [1e2, 1e4, 1e6];
        let gs: Vec<f64> = xs.iter().map(|x: &f64| 3.0 / x).collect();
        assert!((fitted_order(&xs, &gs).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(fitted_order(&xs, &[0.0, 0.0, 0.0]), None);
    }

    #[test]
    fn both_limits_first_order() {
        let cone = Cone::new(2, &q(2), 2).unwrap();
        for limit in [Limit::MeixnerToCharlier, Limit::KrawtchoukToCharlier] {
            let rep = limit_check(&cone, limit, &q(1), 2, &[100, 10_000, 1_000_000]).unwrap();
            assert!(rep.passed(), "{}", rep.to_json());
        }
        let c1 = Cone::new(1, &qr(5, 2), 2).unwrap();
        let rep = limit_check(&c1, Limit::MeixnerToCharlier, &qr(1, 2), 2, &[100, 1000]).unwrap();
        assert!(rep.passed());
    }
}
