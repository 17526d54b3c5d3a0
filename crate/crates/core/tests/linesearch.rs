use proptest::prelude::*;
use sdcg::linalg;
use sdcg::linesearch::{armijo_backtrack, LineSearchConfig, LineSearchError};
use sdcg::problems::{quadratic, CountedProblem, ProblemInstance, QuadraticMatrix};

/// Enumerates `alpha_bar, alpha_bar*rho, ...` (same multiplication order as the search)
/// and returns the first step passing the decrease test, with its index.
fn brute_force(
    p: &ProblemInstance,
    x: &[f64],
    d: &[f64],
    alpha_bar: f64,
    cfg: &LineSearchConfig,
) -> Option<(f64, u32)> {
    let f_x = p.value(x).unwrap();
    let dg = linalg::dot(&p.gradient(x).unwrap(), d);
    let mut alpha = alpha_bar;
    let mut i = 0;
    while alpha >= cfg.step_floor {
        if let Ok(f) = p.value(&linalg::step(x, alpha, d)) {
            if f <= f_x + cfg.c1 * alpha * dg {
                return Some((alpha, i));
            }
        }
        alpha *= cfg.rho;
        i += 1;
    }
    None
}

fn instance() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>, f64, f64, f64)> {
    (2usize..12).prop_flat_map(|n| {
        (
            prop::collection::vec(0.01f64..100.0, n),
            prop::collection::vec(-10.0f64..10.0, n),
            prop::collection::vec(-1.0f64..1.0, n),
            1e-3f64..1e3,
            prop::sample::select(vec![0.5, 0.1, 0.3, 0.9]),
            prop::sample::select(vec![1e-4, 1e-2, 0.3]),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn accepted_step_is_the_largest_admissible((diag, x, mix, alpha_bar, rho, c1) in instance()) {
        let p = quadratic("DIAGQ", QuadraticMatrix::Diagonal(diag.clone()), x.clone());
        let g = p.gradient(&x).unwrap();
        prop_assume!(linalg::norm(&g) > 1e-8);
        // a descent direction: -g perturbed by a bounded mix
        let gn = linalg::norm(&g);
        let d: Vec<f64> = g.iter().zip(&mix).map(|(gi, m)| -gi + 0.5 * gn * m / (mix.len() as f64).sqrt()).collect();
        prop_assume!(linalg::dot(&d, &g) < 0.0);
        let cfg = LineSearchConfig { c1, rho, ..LineSearchConfig::default() };
        let f_x = p.value(&x).unwrap();
        let mut cp = CountedProblem::new(&p);
        let got = armijo_backtrack(&mut cp, &x, f_x, &g, &d, alpha_bar, &cfg);
        match brute_force(&p, &x, &d, alpha_bar, &cfg) {
            Some((alpha, i)) => {
                let out = got.unwrap();
                prop_assert_eq!(out.alpha.to_bits(), alpha.to_bits());
                prop_assert_eq!(out.backtracks, i);
                prop_assert_eq!(cp.counter().f_evals, u64::from(i) + 1);
                prop_assert_eq!(out.x_new, linalg::step(&x, alpha, &d));
            }
            None => {
                let is_floor = matches!(got, Err(LineSearchError::StepFloorReached { .. }));
                prop_assert!(is_floor);
            }
        }
    }
}

#[test]
fn quadratic_along_steepest_descent_hits_exact_halving() {
    // f = x^2 from x = 3 along d = -6: trials 4, 2, 1 land at -21, -9, -3 (no decrease)
    let p = quadratic("ID", QuadraticMatrix::Diagonal(vec![2.0]), vec![3.0]);
    let cfg = LineSearchConfig::default();
    let mut cp = CountedProblem::new(&p);
    let f_x = p.value(&[3.0]).unwrap();
    let out = armijo_backtrack(&mut cp, &[3.0], f_x, &[6.0], &[-6.0], 4.0, &cfg).unwrap();
    assert_eq!(out.alpha, 0.5);
    assert_eq!(out.backtracks, 3);
    assert_eq!(out.f_new, 0.0);
}
