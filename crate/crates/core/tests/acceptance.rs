//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//! Criterion 8 runs the compiled `properties` test binary next to this one.

use std::f64::consts::{FRAC_PI_3, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zalcman::cli::{eval_report, gmax_report, search_report, EvalArgs, SearchArgs};
use zalcman::extremal_algebra::manifold_grid_max;
use zalcman::functionals::gradient;
use zalcman::loewner::{evolve_with, DrivingFunction, EvolveOptions};
use zalcman::quaddiff::{
    gamma_trajectories, half_plane_check, real_axis_report, QuadDiffT1, TraceConfig,
};
use zalcman::schiffer::{
    center_imaginary, check_reciprocal_symmetry, double_root_fit, matching_residuals,
    relation_check, rhs_polynomial, schaeffer_spencer,
};
use zalcman::{koebe_rotation, CoefficientVector, Complex64};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit: Duration, mut o: Outcome) -> Outcome {
    if elapsed > limit {
        o.pass = false;
    }
    o.detail = format!("{} [{:.2?} / limit {:.0?}]", o.detail, elapsed, limit);
    o
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let o = f();
    within(t.elapsed(), limit, o)
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let mut worst: f64 = 0.0;
        let mut all_attained = true;
        for k in 0..8 {
            let theta = k as f64 * TAU / 8.0 + 0.1;
            let r = eval_report(&EvalArgs {
                theta,
                lambda: 3.0,
                n: 2,
                m: 3,
            })
            .expect("eval runs");
            worst = worst.max((r.modulus - 14.0).abs());
            all_attained &= r.attained && r.bound == 14.0;
        }
        check(
            worst <= 1e-10 && all_attained,
            format!("8 rotations, max ||3a2a3-a4| - 14| = {worst:.2e}"),
        )
    })
}

fn criterion_2() -> Outcome {
    timed(Duration::from_secs(30), || {
        let g = gmax_report();
        let (grid, _, _) = manifold_grid_max(2000, 2000);
        let ok = (g.g_max - 21.0).abs() <= 1e-9
            && (g.bound - 14.0).abs() <= 1e-9
            && (g.critical_r - 1.0 / 12.0).abs() <= 1e-8
            && grid <= 21.0 + 1e-9;
        check(
            ok,
            format!(
                "gMax = {}, bound = {}, critical R = {:.10}, 2000x2000 grid max = {:.12}",
                g.g_max, g.bound, g.critical_r, grid
            ),
        )
    })
}

fn criterion_3() -> Outcome {
    timed(Duration::from_secs(1), || {
        let expected_e = [
            Some(Complex64::new(-1.0, 0.0)),
            Some(-Complex64::from_polar(1.0, -FRAC_PI_3)),
            None,
        ];
        let mut pass = true;
        let mut parts = Vec::new();
        for (theta, want) in [0.0, FRAC_PI_3, 1.2].into_iter().zip(expected_e) {
            let f = koebe_rotation(theta, 4).unwrap();
            let g = rhs_polynomial(3.0, &f).unwrap();
            let sym = check_reciprocal_symmetry(&g).unwrap();
            let mut ok = sym < 1e-12;
            let mut note = format!(
                "theta={theta:.4}: symmetry {sym:.1e}, Im R {:.1e}",
                center_imaginary(&g)
            );
            match double_root_fit(&g) {
                Ok(fac) => {
                    let m = matching_residuals(&fac, &f, 3.0).unwrap();
                    let (dr, cr) = relation_check(&fac);
                    let mmax = m.iter().copied().fold(0.0, f64::max);
                    ok &= fac.residual < 1e-9
                        && (fac.e.norm() - 1.0).abs() < 1e-9
                        && mmax < 1e-8
                        && dr < 1e-8
                        && cr < 1e-8;
                    if let Some(w) = want {
                        ok &= (fac.e - w).norm() < 1e-9;
                    }
                    note += &format!(
                        ", E = {:.9}, residual {:.1e}, matching {mmax:.1e}, relations {dr:.1e}/{cr:.1e}",
                        fac.e, fac.residual
                    );
                }
                Err(e) => {
                    ok = false;
                    note += &format!(", no double zero ({})", short(&e.to_string()));
                }
            }
            pass &= ok;
            parts.push(format!("{note} -> {}", if ok { "ok" } else { "FAIL" }));
        }
        check(pass, parts.join("; "))
    })
}

fn short(s: &str) -> String {
    s.split(", roots").next().unwrap_or(s).to_string()
}

fn random_vector(rng: &mut ChaCha8Rng) -> CoefficientVector {
    let tail: Vec<_> = (2..=4)
        .map(|k| Complex64::from_polar(rng.random_range(0.0..k as f64), rng.random_range(0.0..TAU)))
        .collect();
    CoefficientVector::from_tail(&tail).unwrap()
}

fn criterion_4() -> Outcome {
    timed(Duration::from_secs(5), || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let f = random_vector(&mut rng);
            let lambda: f64 = rng.random_range(0.1..6.0);
            let (a2, a3, a4) = (f.a(2), f.a(3), f.a(4));
            let d = schaeffer_spencer(&gradient(lambda, &f).unwrap().to_vec(), &f, 4).unwrap();
            let one = Complex64::new(1.0, 0.0);
            let pairs = [
                (
                    d.a_v(2),
                    (2.0 - lambda) * a3 + (1.0 - 2.0 * lambda) * a2 * a2,
                ),
                (d.a_v(3), (3.0 - lambda) * a2),
                (d.a_v(4), one),
                (d.b_v(1), one),
                (d.b_v(2), (2.0 - lambda) * a2),
                (d.b_v(3), (3.0 - lambda) * a3 - 2.0 * lambda * a2 * a2),
                (d.b, 3.0 * (a4 - lambda * a2 * a3)),
            ];
            for (got, want) in pairs {
                worst = worst.max((got - want).norm());
            }
        }
        check(
            worst <= 1e-12,
            format!("100 vectors, max deviation {worst:.2e}"),
        )
    })
}

fn criterion_5() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut failures = Vec::new();
        let mut worst_re: f64 = 0.0;
        let mut total_crossings = 0;
        for i in 0..50 {
            let x: f64 = 2.0 - rng.random_range(0.0..2.0);
            let mut y: f64 = rng.random_range(-1.0..=1.0);
            while y == 0.0 {
                y = rng.random_range(-1.0..=1.0);
            }
            let a2 = Complex64::new(x, y);
            let qd = QuadDiffT1::new(a2).unwrap();
            let axis = real_axis_report(&qd);
            let re_err = (axis.re_direct - axis.re_at_xi_star).abs();
            worst_re = worst_re.max(re_err);
            let mut ok = axis.im_sign_changes == (0, 1) && re_err <= 1e-12 && axis.re_direct < 0.0;
            match gamma_trajectories(&qd, &TraceConfig::default()) {
                Ok(lines) => {
                    let v = half_plane_check(&lines, 1e-3);
                    total_crossings += v.crossings;
                    ok &= v.verdict;
                }
                Err(e) => {
                    ok = false;
                    failures.push(format!("#{i} a2={a2}: {e}"));
                }
            }
            if !ok
                && failures
                    .last()
                    .is_none_or(|f| !f.starts_with(&format!("#{i} ")))
            {
                failures.push(format!("#{i} a2={a2}"));
            }
        }
        check(
            failures.is_empty(),
            format!(
                "50 a2 values, max |Re Q - closed form| = {worst_re:.1e}, crossings {total_crossings}, failures {:?}",
                failures
            ),
        )
    })
}

fn criterion_6() -> Outcome {
    timed(Duration::from_secs(30), || {
        let theta = 0.7;
        let d = DrivingFunction::constant(theta, 1.0).unwrap();
        let evo = evolve_with(&d, 8, &EvolveOptions::default()).unwrap();
        let k = koebe_rotation(theta, 8).unwrap();
        let err = max_diff(evo.coeffs.as_slice(), k.as_slice());

        // discretization error against a fine reference at a fixed horizon
        let fixed = |dt: f64| {
            let opts = EvolveOptions {
                dt,
                horizon: 10.0,
                tolerance: 1.0,
                max_extension: 0,
            };
            evolve_with(&d, 8, &opts).unwrap().coeffs
        };
        let reference = fixed(1e-4);
        let e1 = max_diff(fixed(2e-3).as_slice(), reference.as_slice());
        let e2 = max_diff(fixed(1e-3).as_slice(), reference.as_slice());
        let ratio = e1 / e2;
        check(
            err <= 1e-6 && (8.0..=32.0).contains(&ratio),
            format!(
                "N=8 Koebe error {err:.2e} (stopped at t={}), dt 2e-3 -> 1e-3 error ratio {ratio:.2}",
                evo.horizon_used
            ),
        )
    })
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn criterion_7() -> Outcome {
    timed(Duration::from_secs(600), || {
        let run = |lambda: f64, n: usize, m: usize| {
            search_report(&SearchArgs {
                lambda,
                n,
                m,
                k: 4,
                starts: 16,
                seed: 20240611,
                dt: 1e-3,
                out: None,
            })
            .expect("search runs")
        };
        let a = run(3.0, 2, 3);
        let b = run(1.0, 2, 2);
        let ok = (13.99..=14.001).contains(&a.best_value)
            && a.red_flag.is_none()
            && a.best_value <= 14.05
            && (0.999..=1.0001).contains(&b.best_value);
        check(
            ok,
            format!(
                "(3,2,3): {:.10} ({} evals, red flag {}); (1,2,2): {:.10} ({} evals)",
                a.best_value,
                a.evals,
                a.red_flag.is_some(),
                b.best_value,
                b.evals
            ),
        )
    })
}

fn criterion_8() -> Outcome {
    timed(Duration::from_secs(900), || {
        let Some(bin) = sibling_test_binary("properties") else {
            return check(
                false,
                "properties test binary not found next to the acceptance binary",
            );
        };
        let out = std::process::Command::new(&bin)
            .arg("--test-threads=1")
            .output()
            .expect("properties binary runs");
        let stdout = String::from_utf8_lossy(&out.stdout);
        let summary = stdout
            .lines()
            .find(|l| l.starts_with("test result:"))
            .unwrap_or("no summary")
            .to_string();
        check(
            out.status.success(),
            format!("{summary} (100 cases per property)"),
        )
    })
}

/// Newest `deps/<name>-<hash>` executable beside the running test binary.
fn sibling_test_binary(name: &str) -> Option<std::path::PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?;
    let prefix = format!("{name}-");
    std::fs::read_dir(dir)
        .ok()?
        .filter_map(|e| e.ok())
        .filter(|e| {
            let f = e.file_name();
            let f = f.to_string_lossy();
            f.starts_with(&prefix) && !f.contains('.')
        })
        .filter_map(|e| Some((e.metadata().ok()?.modified().ok()?, e.path())))
        .max_by_key(|(t, _)| *t)
        .map(|(_, p)| p)
}

fn main() {
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let criteria: [Criterion; 8] = [
        ("1 equality case of the 14 bound", criterion_1),
        ("2 maximum of G", criterion_2),
        ("3 double-zero factorization", criterion_3),
        ("4 Schaeffer-Spencer closed forms", criterion_4),
        ("5 quadratic differential diagnostics", criterion_5),
        ("6 Loewner evolution against Koebe", criterion_6),
        ("7 empirical extremality", criterion_7),
        ("8 property suites", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|p| name.split(' ').next() == Some(p.as_str()))
        {
            continue;
        }
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {name}: {} - {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if failed > 0 {
        println!("acceptance: {failed} criterion(s) failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
