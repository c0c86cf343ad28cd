//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use mdop::families::{determinant_formula, evaluate, inside_rectangle, FamilyParams};
use mdop::partition::{enumerate_up_to, Partition};
use mdop::rational::{parse_rational, Q};
use mdop::verify::conjecture::{conjecture_suite, seeded_three_term, DEFAULT_SEED};
use mdop::verify::consistency::{dimension_check, pieri_check};
use mdop::verify::equations::Moving;
use mdop::verify::{
    genfunc_grid, limit_check, master_genfunc, orthogonality_krawtchouk, orthogonality_truncated,
    spherical_taylor, Limit, Master, Truncated, TruncationPlan, VerificationReport,
};
use mdop::{Cone, Family};

fn q(s: &str) -> Q {
    parse_rational(s).unwrap()
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn from_reports(reps: &[VerificationReport]) -> Self {
        let total: usize = reps.iter().map(|r| r.summary.total).sum();
        let passed: usize = reps.iter().map(|r| r.summary.passed).sum();
        let max_res = reps
            .iter()
            .map(|r| r.summary.max_residual)
            .fold(0.0, f64::max);
        Outcome {
            pass: total > 0 && passed == total,
            detail: format!("{passed}/{total} cases, max residual {max_res:.3e}"),
        }
    }
}

fn cone(r: usize, d: &str, deg: u32) -> Cone {
    Cone::new(r, &q(d), deg).unwrap()
}

fn poch(s: &Q, k: u32) -> Q {
    (0..k).fold(Q::one(), |acc, i| acc * (s + qi(i as i64)))
}

/// Σ_k (−m)_k (−x)_k / ((b)_k k!) t^k, with b = None meaning no lower parameter.
fn hyp(m: u32, x: u32, b: Option<&Q>, t: &Q) -> Q {
    let mut sum = Q::zero();
    for k in 0..=m.min(x) {
        let mut term = poch(&qi(-(m as i64)), k) * poch(&qi(-(x as i64)), k) / poch(&qi(1), k);
        if let Some(b) = b {
            term /= poch(b, k);
        }
        let mut tk = Q::one();
        for _ in 0..k {
            tk *= t;
        }
        sum += term * tk;
    }
    sum
}

fn criterion_1() -> Outcome {
    let cone = cone(1, "1", 6);
    let alpha = qi(2);
    let c = q("1/2");
    let a = qi(1);
    let p = q("1/3");
    let n = 4u32;
    let mut cases = 0;
    let mut bad = Vec::new();
    for m in 0..=6u32 {
        for x in 0..=6u32 {
            let pm = Partition::new(&[m], 1).unwrap();
            let px = Partition::new(&[x], 1).unwrap();
            let mut checks = vec![
                (
                    "meixner",
                    FamilyParams::Meixner {
                        alpha: alpha.clone(),
                        c: c.clone(),
                    },
                    hyp(m, x, Some(&alpha), &(Q::one() - c.recip())),
                ),
                (
                    "charlier",
                    FamilyParams::Charlier { a: a.clone() },
                    hyp(m, x, None, &-a.recip()),
                ),
            ];
            if m <= n {
                checks.push((
                    "krawtchouk",
                    FamilyParams::Krawtchouk { p: p.clone(), n },
                    hyp(m, x, Some(&qi(-(n as i64))), &p.recip()),
                ));
            }
            for (name, fp, oracle) in checks {
                cases += 1;
                if evaluate(&fp, &pm, &px, &cone).unwrap() != oracle {
                    bad.push(format!("{name}({m},{x})"));
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{}/{cases} exact matches{}", cases - bad.len(), list(&bad)),
    }
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!(
            "; mismatches: {}",
            v.iter().take(8).cloned().collect::<Vec<_>>().join(" ")
        )
    }
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    let n = 4u32;
    for r in 1..=3 {
        for d in ["1", "2", "5/2", "4"] {
            let cone = cone(r, d, 4);
            let grid = enumerate_up_to(r, 4);
            let fams = [
                FamilyParams::Meixner {
                    alpha: q("7/2"),
                    c: q("1/3"),
                },
                FamilyParams::Charlier { a: qi(2) },
                FamilyParams::Krawtchouk { p: q("1/3"), n },
            ];
            for fp in &fams {
                for m in &grid {
                    for x in &grid {
                        if matches!(fp, FamilyParams::Krawtchouk { .. })
                            && !(inside_rectangle(m, n) && inside_rectangle(x, n))
                        {
                            continue;
                        }
                        cases += 1;
                        let mx = evaluate(fp, m, x, &cone).unwrap();
                        let xm = evaluate(fp, x, m, &cone).unwrap();
                        if mx != xm {
                            bad.push(format!("{} r={r} d={d} m={m} x={x}", fp.family()));
                        }
                    }
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{}/{cases} symmetric pairs{}",
            cases - bad.len(),
            list(&bad)
        ),
    }
}

fn criterion_3() -> Outcome {
    let reps: Vec<_> = ["1", "2", "4"]
        .iter()
        .map(|d| orthogonality_krawtchouk(&cone(2, d, 6), 3, &q("1/3")).unwrap())
        .collect();
    let exact = reps
        .iter()
        .flat_map(|r| &r.cases)
        .all(|c| c.residual.as_ref().is_some_and(|x| x.is_exact_zero()));
    let mut o = Outcome::from_reports(&reps);
    o.pass &= exact;
    o
}

fn criterion_4() -> Outcome {
    let cone = cone(2, "2", 14);
    let plan = TruncationPlan::new(2, &[10, 12, 14]);
    let mei = orthogonality_truncated(
        &cone,
        &Truncated::Meixner {
            alpha: q("7/2"),
            c: q("1/3"),
        },
        &plan,
    )
    .unwrap();
    let cha = orthogonality_truncated(&cone, &Truncated::Charlier { a: qi(2) }, &plan).unwrap();
    let mut o = Outcome::from_reports(&[mei.clone(), cha.clone()]);
    let monotone = [&mei, &cha]
        .iter()
        .flat_map(|r| &r.cases)
        .all(|c| c.levels.windows(2).all(|w| w[1] <= w[0]));
    o.detail = format!(
        "{}; meixner max {:.3e}, charlier max {:.3e} at T=14; monotone in T: {monotone}",
        o.detail, mei.summary.max_residual, cha.summary.max_residual
    );
    o
}

fn criterion_5() -> Outcome {
    let mut reps = Vec::new();
    for r in 1..=3 {
        for d in ["1", "2", "5/2", "4"] {
            let cone = cone(r, d, 4);
            for fam in [Family::Meixner, Family::Charlier, Family::Krawtchouk] {
                for moving in [Moving::X, Moving::M] {
                    reps.push(seeded_three_term(fam, &cone, moving, 3, 20, DEFAULT_SEED).unwrap());
                }
            }
        }
    }
    let exact = reps
        .iter()
        .flat_map(|r| &r.cases)
        .all(|c| c.residual.as_ref().is_some_and(|x| x.is_exact_zero()));
    let mut o = Outcome::from_reports(&reps);
    o.pass &= exact;
    o
}

fn criterion_6() -> Outcome {
    let mut reps = Vec::new();
    let mut signs = Vec::new();
    for d in ["2", "3"] {
        let cone = cone(2, d, 4);
        for fp in [
            FamilyParams::Meixner {
                alpha: qi(3),
                c: q("1/2"),
            },
            FamilyParams::Charlier { a: qi(2) },
            FamilyParams::Krawtchouk { p: q("1/3"), n: 2 },
        ] {
            let rep = genfunc_grid(&fp, &cone, 4).unwrap();
            if let Some(s) = &rep.sign_convention {
                signs.push(format!("d={d}: {s}"));
            }
            reps.push(rep);
        }
        reps.push(
            master_genfunc(
                &Master::Meixner {
                    alpha: qi(3),
                    c: q("1/2"),
                },
                &cone,
                3,
                3,
            )
            .unwrap(),
        );
        reps.push(master_genfunc(&Master::Charlier { a: qi(2) }, &cone, 3, 3).unwrap());
    }
    let mut o = Outcome::from_reports(&reps);
    o.pass &= signs.len() == 2
        && signs
            .iter()
            .all(|s| !s.ends_with("none") && !s.ends_with("mixed"));
    o.detail = format!(
        "{}; krawtchouk sign convention {}",
        o.detail,
        signs.join(", ")
    );
    o
}

fn criterion_7() -> Outcome {
    let n = 4u32;
    let mut cases = 0;
    let mut bad = Vec::new();
    for r in [2, 3] {
        let cone = cone(r, "2", 4);
        let grid = enumerate_up_to(r, 4);
        for fp in [
            FamilyParams::Meixner {
                alpha: q("7/2"),
                c: q("1/3"),
            },
            FamilyParams::Charlier { a: qi(2) },
            FamilyParams::Krawtchouk { p: q("1/3"), n },
        ] {
            for m in &grid {
                for x in &grid {
                    if matches!(fp, FamilyParams::Krawtchouk { .. })
                        && !(inside_rectangle(m, n) && inside_rectangle(x, n))
                    {
                        continue;
                    }
                    cases += 1;
                    let def = evaluate(&fp, m, x, &cone).unwrap();
                    let det = determinant_formula(&fp, m, x, &cone).unwrap();
                    if def != det {
                        bad.push(format!("{} r={r} m={m} x={x}", fp.family()));
                    }
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{}/{cases} determinant matches{}",
            cases - bad.len(),
            list(&bad)
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut reps = Vec::new();
    for r in 1..=3 {
        for d in ["1", "2", "3", "4"] {
            let cone = cone(r, d, 6);
            reps.push(dimension_check(&cone, 5, 1e-9).unwrap());
            reps.push(pieri_check(&cone, 5).unwrap());
            reps.push(spherical_taylor(&cone, &qi(3), 5).unwrap());
        }
    }
    Outcome::from_reports(&reps)
}

fn criterion_9() -> Outcome {
    let reps: Vec<_> = [(2, "5/2"), (3, "3")]
        .iter()
        .map(|(r, d)| {
            let cone = cone(*r, d, mdop::verify::conjecture::required_degree(3));
            conjecture_suite(&cone, 3, DEFAULT_SEED).unwrap()
        })
        .collect();
    let non_classical = reps.iter().all(|r| r.classical == Some(false));
    let mut o = Outcome::from_reports(&reps);
    o.pass &= non_classical;
    o
}

fn criterion_10() -> Outcome {
    let cone = cone(2, "2", 2);
    let seq = [100, 10_000, 1_000_000];
    let reps: Vec<_> = [Limit::MeixnerToCharlier, Limit::KrawtchoukToCharlier]
        .into_iter()
        .map(|l| limit_check(&cone, l, &qi(1), 2, &seq).unwrap())
        .collect();
    let min_order = reps
        .iter()
        .flat_map(|r| &r.cases)
        .filter_map(|c| {
            c.detail
                .as_deref()?
                .strip_prefix("order ")?
                .parse::<f64>()
                .ok()
        })
        .fold(f64::INFINITY, f64::min);
    let mut o = Outcome::from_reports(&reps);
    o.detail = format!("{}; minimum fitted order {min_order:.4}", o.detail);
    o
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 10] = [
        ("classical reduction", criterion_1, Duration::from_secs(1)),
        ("duality", criterion_2, Duration::from_secs(30)),
        (
            "krawtchouk orthogonality",
            criterion_3,
            Duration::from_secs(120),
        ),
        (
            "meixner and charlier orthogonality",
            criterion_4,
            Duration::from_secs(300),
        ),
        (
            "difference equations and recurrences",
            criterion_5,
            Duration::from_secs(180),
        ),
        (
            "generating functions",
            criterion_6,
            Duration::from_secs(300),
        ),
        (
            "d=2 determinant formulas",
            criterion_7,
            Duration::from_secs(120),
        ),
        (
            "internal consistency",
            criterion_8,
            Duration::from_secs(120),
        ),
        (
            "arbitrary multiplicity evidence",
            criterion_9,
            Duration::from_secs(600),
        ),
        ("limit relations", criterion_10, Duration::from_secs(60)),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = Vec::new();
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let k = i + 1;
        if only.is_some_and(|o| o != k) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= *budget;
        let pass = out.pass && in_time;
        println!(
            "criterion {k:>2} {}: {name}: {} ({:.2} s of {} s budget{})",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", over budget" },
        );
        if !pass {
            failed.push(k);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
