//! Three-term difference equations in x and the dual recurrences in m.

use num_traits::{One, Zero};

use crate::cone::{as_point, Cone};
use crate::error::{Error, Result};
use crate::families::{evaluate, inside_rectangle, FamilyParams};
use crate::partition::{enumerate_up_to, Partition};
use crate::rational::{format_rational, q, Q};
use crate::verify::report::{Case, VerificationReport};

/// Which index moves: x for the difference equation, m for the recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Moving {
    X,
    M,
}

impl Moving {
    fn identity(self) -> &'static str {
        match self {
            Moving::X => "difference",
            Moving::M => "recurrence",
        }
    }
}

struct Coeffs {
    lhs: Q,
    up: Q,
    mid: Q,
    down: Q,
}

/// Family-specific scalars at moving index y, fixed-index weight w, slot j.
fn coeffs(fp: &FamilyParams, cone: &Cone, y: &Partition, w: u32, j: usize) -> Result<Coeffs> {
    let h = cone.params().half_d();
    let r = cone.r();
    let yj = q(y.parts()[j - 1] as i64);
    let down = &yj + &h * q((r - j) as i64);
    let lower = &h * q(j as i64 - 1);
    let w = q(w as i64);
    Ok(match fp {
        FamilyParams::Meixner { alpha, c } => Coeffs {
            lhs: (c - Q::one()) * w,
            up: (&yj + alpha - lower) * c,
            mid: -(&yj + (&yj + alpha) * c),
            down,
        },
        FamilyParams::Charlier { a } => Coeffs {
            lhs: -w,
            up: a.clone(),
            mid: -(&yj + a),
            down,
        },
        FamilyParams::Krawtchouk { p, n } => {
            let nq = q(*n as i64);
            let one_minus = Q::one() - p;
            Coeffs {
                lhs: -w,
                up: (&nq - &yj + lower) * p,
                mid: -(p * (&nq - &yj) + &yj * &one_minus),
                down: down * one_minus,
            }
        }
        FamilyParams::Laguerre { .. } => {
            return Err(Error::Parameter(
                "no difference equation for the Laguerre family".into(),
            ))
        }
    })
}

/// (lhs, rhs) of the three-term relation with `y` moving and `fixed` fixed.
///
/// Terms at y ± ε_j that are not partitions are dropped. The raising term
/// carries ã_j(−y−ε_j) read as a_j(ρ − (y+ε_j)).
pub fn three_term(
    fp: &FamilyParams,
    cone: &Cone,
    moving: Moving,
    fixed: &Partition,
    y: &Partition,
) -> Result<(Q, Q)> {
    let f = |v: &Partition| match moving {
        Moving::X => evaluate(fp, fixed, v, cone),
        Moving::M => evaluate(fp, v, fixed, cone),
    };
    let r = cone.r();
    let dy = cone.dim_partition(y)?;
    let fy = f(y)?;
    let lhs_c = coeffs(fp, cone, y, fixed.weight(), 1)?.lhs;
    let lhs = &dy * lhs_c * &fy;
    let mut rhs = Q::zero();
    for j in 1..=r {
        let c = coeffs(fp, cone, y, fixed.weight(), j)?;
        rhs += &dy * c.mid * &fy;
        if let Some(up) = y.box_move(j, 1) {
            if !c.up.is_zero() {
                let a = cone.a_tilde_reflected(j, &as_point(&up))?;
                rhs += cone.dim_partition(&up)? * a * c.up * f(&up)?;
            }
        }
        if let Some(dn) = y.box_move(j, -1) {
            if !c.down.is_zero() {
                let a = cone.a_tilde(j, &as_point(&dn))?;
                rhs += cone.dim_partition(&dn)? * a * c.down * f(&dn)?;
            }
        }
    }
    Ok((lhs, rhs))
}

fn header(fp: &FamilyParams, cone: &Cone, moving: Moving, max_weight: u32) -> VerificationReport {
    let mut rep = VerificationReport::new(moving.identity())
        .param("family", fp.family())
        .param("d", format_rational(cone.d()))
        .param("r", cone.r())
        .param("max_weight", max_weight);
    for (k, v) in fp.echo() {
        rep.set_param(k, v);
    }
    rep.truncation.degree = Some(max_weight);
    rep
}

fn in_domain(fp: &FamilyParams, m: &Partition, x: &Partition) -> bool {
    match fp {
        FamilyParams::Krawtchouk { n, .. } => inside_rectangle(m, *n) && inside_rectangle(x, *n),
        _ => true,
    }
}

/// Checks the relation over all m, x with weight ≤ `max_weight`.
pub fn three_term_report(
    fp: &FamilyParams,
    cone: &Cone,
    moving: Moving,
    max_weight: u32,
) -> Result<VerificationReport> {
    let mut rep = header(fp, cone, moving, max_weight);
    let grid = enumerate_up_to(cone.r(), max_weight);
    for m in &grid {
        for x in &grid {
            if !in_domain(fp, m, x) {
                continue;
            }
            let (fixed, y) = match moving {
                Moving::X => (m, x),
                Moving::M => (x, m),
            };
            let (lhs, rhs) = three_term(fp, cone, moving, fixed, y)?;
            rep.push(Case::exact(lhs, rhs).with_m(m).with_x(x));
        }
    }
    Ok(rep.finish())
}

pub fn difference_equation(
    fp: &FamilyParams,
    cone: &Cone,
    max_weight: u32,
) -> Result<VerificationReport> {
    three_term_report(fp, cone, Moving::X, max_weight)
}

pub fn recurrence(fp: &FamilyParams, cone: &Cone, max_weight: u32) -> Result<VerificationReport> {
    three_term_report(fp, cone, Moving::M, max_weight)
}

/// Single-pair report, as used by the CLI.
pub fn three_term_single(
    fp: &FamilyParams,
    cone: &Cone,
    moving: Moving,
    m: &Partition,
    x: &Partition,
) -> Result<VerificationReport> {
    let mut rep = header(fp, cone, moving, m.weight().max(x.weight()));
    let (fixed, y) = match moving {
        Moving::X => (m, x),
        Moving::M => (x, m),
    };
    let (lhs, rhs) = three_term(fp, cone, moving, fixed, y)?;
    rep.push(Case::exact(lhs, rhs).with_m(m).with_x(x));
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::univariate;
    use crate::rational::qr;

    fn fams() -> Vec<FamilyParams> {
        vec![
            FamilyParams::Meixner {
                alpha: qr(7, 2),
                c: qr(1, 3),
            },
            FamilyParams::Charlier { a: qr(3, 2) },
            FamilyParams::Krawtchouk { p: qr(2, 5), n: 3 },
        ]
    }

    #[test]
    fn classical_scalar_equation() {
        // (c−1) m M_m(x) = c(x+α)M_m(x+1) − (x+(x+α)c)M_m(x) + x M_m(x−1)
        let (alpha, c) = (q(2), qr(1, 2));
        let cone = Cone::new(1, &q(2), 5).unwrap();
        let fp = FamilyParams::Meixner {
            alpha: alpha.clone(),
            c: c.clone(),
        };
        for m in 0..=3u32 {
            for x in 0..=3u32 {
                let mm = |y: u32| univariate::meixner(m, y, &alpha, &c).unwrap();
                let xq = q(x as i64);
                let mut expected =
                    &c * (&xq + &alpha) * mm(x + 1) - (&xq + (&xq + &alpha) * &c) * mm(x);
                if x > 0 {
                    expected += &xq * mm(x - 1);
                }
                let (lhs, rhs) = three_term(
                    &fp,
                    &cone,
                    Moving::X,
                    &Partition::new(&[m], 1).unwrap(),
                    &Partition::new(&[x], 1).unwrap(),
                )
                .unwrap();
                assert_eq!(rhs, expected);
                assert_eq!(lhs, (&c - q(1)) * q(m as i64) * mm(x));
            }
        }
    }

    #[test]
    fn exact_zero_over_grid() {
        for (r, d) in [
            (1usize, q(2)),
            (2, q(2)),
            (2, qr(5, 2)),
            (3, q(1)),
            (2, qr(1, 2)),
        ] {
            let cone = Cone::new(r, &d, 4).unwrap();
            for fp in fams() {
                for moving in [Moving::X, Moving::M] {
                    let rep = three_term_report(&fp, &cone, moving, 3).unwrap();
                    assert!(rep.passed(), "r={r} d={d} {fp:?} {moving:?}");
                }
            }
        }
    }

    #[test]
    fn duality_swap_maps_cases() {
        let cone = Cone::new(2, &q(2), 3).unwrap();
        let fp = &fams()[0];
        let grid = enumerate_up_to(2, 2);
        for m in &grid {
            for x in &grid {
                let a = three_term(fp, &cone, Moving::X, m, x).unwrap();
                let b = three_term(fp, &cone, Moving::M, m, x).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn empty_index_cases() {
        let cone = Cone::new(2, &q(3), 3).unwrap();
        let e = Partition::empty(2);
        for fp in fams() {
            for y in enumerate_up_to(2, 2) {
                let (lhs, rhs) = three_term(&fp, &cone, Moving::X, &e, &y).unwrap();
                assert!(lhs.is_zero());
                assert_eq!(lhs, rhs);
            }
        }
        let lag = FamilyParams::Laguerre { alpha: q(2) };
        assert!(three_term_report(&lag, &cone, Moving::X, 1).is_err());
    }
}
