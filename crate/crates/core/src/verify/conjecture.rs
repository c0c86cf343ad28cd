//! The combined evidence suite for arbitrary multiplicity d.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::error::Result;
use crate::families::{Family, FamilyParams};
use crate::rational::{format_rational, q, qr};
use crate::verify::equations::{three_term_report, Moving};
use crate::verify::genfunc::genfunc_grid;
use crate::verify::orthogonality::{
    orthogonality_krawtchouk, orthogonality_truncated, Truncated, TruncationPlan,
};
use crate::verify::report::VerificationReport;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Random parameters for a family, kept away from every pole:
/// α exceeds (r−1)d/2, c and p lie in (0, 1), a > 0, N ∈ {2, 3, 4}.
pub fn random_params(family: Family, cone: &Cone, rng: &mut impl Rng) -> FamilyParams {
    let unit = |rng: &mut dyn rand::RngCore| {
        let den: i64 = rng.gen_range(2..=9);
        qr(rng.gen_range(1..den), den)
    };
    match family {
        Family::Meixner | Family::Laguerre => {
            let floor = cone.params().half_d() * q(cone.r() as i64 - 1);
            let alpha = floor + qr(rng.gen_range(1..=12), 3);
            if family == Family::Laguerre {
                FamilyParams::Laguerre { alpha }
            } else {
                FamilyParams::Meixner {
                    alpha,
                    c: unit(rng),
                }
            }
        }
        Family::Charlier => FamilyParams::Charlier {
            a: qr(rng.gen_range(1..=12), 4),
        },
        Family::Krawtchouk => FamilyParams::Krawtchouk {
            p: unit(rng),
            n: rng.gen_range(2..=4),
        },
    }
}

/// Seeded generator used everywhere parameters are drawn.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Truncation weights used by the suite's Meixner and Charlier checks.
pub fn truncation_levels(budget: u32) -> Vec<u32> {
    vec![budget + 9, budget + 11, budget + 13]
}

/// Jack degree the suite needs.
pub fn required_degree(budget: u32) -> u32 {
    *truncation_levels(budget).last().expect("nonempty") + 1
}

/// Difference equation or recurrence at `draws` seeded random parameter sets.
pub fn seeded_three_term(
    family: Family,
    cone: &Cone,
    moving: Moving,
    max_weight: u32,
    draws: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut rng = rng_from_seed(seed);
    let mut rep = VerificationReport::new(match moving {
        Moving::X => "difference",
        Moving::M => "recurrence",
    })
    .param("family", family)
    .param("d", format_rational(cone.d()))
    .param("r", cone.r())
    .param("max_weight", max_weight)
    .param("draws", draws);
    rep.seed = Some(seed);
    rep.truncation.degree = Some(max_weight);
    for _ in 0..draws {
        let fp = random_params(family, cone, &mut rng);
        let tag: Vec<String> = fp
            .echo()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let sub = three_term_report(&fp, cone, moving, max_weight)?;
        for mut c in sub.cases {
            c.detail = Some(tag.join(" "));
            rep.push(c);
        }
    }
    Ok(rep.finish())
}

/// Generating functions, exact Krawtchouk orthogonality, truncated Meixner
/// and Charlier orthogonality, difference equations and recurrences, all at
/// weight ≤ `budget`, merged into one report.
pub fn conjecture_suite(cone: &Cone, budget: u32, seed: u64) -> Result<VerificationReport> {
    let r = cone.r();
    let mut rep = VerificationReport::new("conjecture-evidence")
        .param("d", format_rational(cone.d()))
        .param("r", r)
        .param("degree_budget", budget);
    rep.seed = Some(seed);
    rep.classical = Some(cone.params().is_classical());
    rep.truncation.degree = Some(budget);

    let nr = cone.params().rank_ratio.clone();
    let fixed = [
        FamilyParams::Meixner {
            alpha: &nr + q(1),
            c: qr(1, 2),
        },
        FamilyParams::Charlier { a: q(2) },
        FamilyParams::Krawtchouk { p: qr(1, 3), n: 2 },
    ];
    for fp in &fixed {
        rep.absorb(genfunc_grid(fp, cone, budget)?);
    }

    rep.absorb(orthogonality_krawtchouk(cone, 2, &qr(1, 3))?);

    let levels = truncation_levels(budget);
    rep.truncation.weights = levels.clone();
    let plan = TruncationPlan::new(budget, &levels);
    let meixner = Truncated::Meixner {
        alpha: &nr + q(1),
        c: qr(1, 100),
    };
    rep.absorb(orthogonality_truncated(cone, &meixner, &plan)?);
    let charlier = Truncated::Charlier { a: qr(1, 10) };
    rep.absorb(orthogonality_truncated(cone, &charlier, &plan)?);

    let mut rng = rng_from_seed(seed);
    for family in [Family::Meixner, Family::Charlier, Family::Krawtchouk] {
        let fp = random_params(family, cone, &mut rng);
        for moving in [Moving::X, Moving::M] {
            let mut sub = three_term_report(&fp, cone, moving, budget)?;
            let tag: Vec<String> = fp
                .echo()
                .into_iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            for c in &mut sub.cases {
                c.detail = Some(format!("{family} {}", tag.join(" ")));
            }
            rep.absorb(sub);
        }
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_seeded_and_pole_free() {
        let cone = Cone::new(3, &qr(5, 2), 2).unwrap();
        let mut a = rng_from_seed(7);
        let mut b = rng_from_seed(7);
        for _ in 0..20 {
            for fam in [Family::Meixner, Family::Charlier, Family::Krawtchouk] {
                let x = random_params(fam, &cone, &mut a);
                assert_eq!(x, random_params(fam, &cone, &mut b));
                if let FamilyParams::Meixner { alpha, c } = &x {
                    assert!(*alpha > qr(5, 2));
                    assert!(*c > q(0) && *c < q(1));
                }
            }
        }
    }

    #[test]
    fn classical_sanity_gate() {
        let cone = Cone::new(2, &q(2), required_degree(2)).unwrap();
        let rep = conjecture_suite(&cone, 2, DEFAULT_SEED).unwrap();
        assert_eq!(rep.classical, Some(true));
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn half_integer_multiplicity() {
        let cone = Cone::new(2, &qr(1, 2), required_degree(2)).unwrap();
        let rep = conjecture_suite(&cone, 2, 1).unwrap();
        assert_eq!(rep.classical, Some(false));
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
