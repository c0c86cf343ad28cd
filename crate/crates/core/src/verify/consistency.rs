//! Cross-checks between independent routes to the same cone constants.

use crate::cone::{as_point, dim_partition_gamma_check, Cone};
use crate::error::Result;
use crate::partition::enumerate_up_to;
use crate::rational::{format_rational, to_f64};
use crate::verify::report::{relative_gap, Case, Num, VerificationReport};

/// d_m from the p_1-power expansion against the Gamma-product formula, in floats.
pub fn dimension_check(cone: &Cone, max_weight: u32, tol: f64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("dimension")
        .param("d", format_rational(cone.d()))
        .param("r", cone.r())
        .param("max_weight", max_weight)
        .param("tol", tol);
    rep.truncation.degree = Some(max_weight);
    for m in enumerate_up_to(cone.r(), max_weight) {
        let exact = cone.dim_partition(&m)?;
        let float = dim_partition_gamma_check(&m, cone.params());
        let gap = relative_gap(float, to_f64(&exact));
        rep.push(Case {
            m: Some(m.to_string()),
            lhs: Some(Num::Exact(exact)),
            rhs: Some(Num::Float(float)),
            residual: Some(Num::Float(gap)),
            pass: gap <= tol,
            ..Case::default()
        });
    }
    Ok(rep.finish())
}

/// Closed-form ã_j(m) against the Pieri coefficients of p_1·Φ_m.
pub fn pieri_check(cone: &Cone, max_weight: u32) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("pieri")
        .param("d", format_rational(cone.d()))
        .param("r", cone.r())
        .param("max_weight", max_weight);
    rep.truncation.degree = Some(max_weight);
    for m in enumerate_up_to(cone.r(), max_weight) {
        let pieri = cone.pieri_coeffs(&m)?;
        for j in 1..=cone.r() {
            let Some(up) = m.box_move(j, 1) else { continue };
            let closed = cone.a_tilde(j, &as_point(&m))?;
            let expanded = pieri.get(&j).cloned().unwrap_or_default();
            rep.push(
                Case::exact(closed, expanded)
                    .with_m(&m)
                    .with_x(&up)
                    .with_detail(format!("j = {j}")),
            );
        }
    }
    Ok(rep.finish())
}
