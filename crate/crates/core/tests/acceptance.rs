//! Acceptance suite. Runs every criterion, prints one `[PASS]`/`[FAIL]` line
//! each, and exits non-zero if any failed.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use l1frac::asymptotics::EMDecomposition;
use l1frac::experiments::{default_n_list, em_sweep, operator_rate_sweep, residue_sweep, Which};
use l1frac::oracle::{remainder_constant_r, zeta_series};
use l1frac::{
    caputo_l1, compose_direct, compose_kernel, em_error, frac_integral_l1, gamma_fn, kernel_s, kernel_table,
    weight_sequence, zeta_fn, FracOrder, GridFunction, QuadratureSpec, TestFunction, UniformMesh,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn order(a: f64) -> FracOrder {
    FracOrder::new(a).unwrap()
}

fn ok_if(pass: bool, detail: String) -> Outcome {
    if pass {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn interchange_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let alphas = [0.1, 0.3, 0.5, 0.7, 0.9];
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let o = order(alphas[trial % alphas.len()]);
        let n = rng.gen_range(1..=200);
        let h = rng.gen_range(1e-3..1.0);
        let mesh = UniformMesh::new(h, n).unwrap();
        let samples: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let y = GridFunction::new(mesh, samples).unwrap();
        let direct = compose_direct(&y, o).unwrap();
        let kernel = compose_kernel(&y, o).unwrap();
        // relative to the magnitude of the summed terms
        let s = kernel_table(n, o).unwrap();
        let dy: Vec<f64> = y.samples().windows(2).map(|w| w[1] - w[0]).collect();
        for k in 1..=n {
            let scale: f64 = (0..k).map(|j| (s.values()[k - j - 1] * dy[j]).abs()).sum::<f64>() / s.limit();
            let rel = (direct.samples()[k] - kernel.samples()[k]).abs() / scale;
            worst = worst.max(rel);
        }
    }
    ok_if(worst <= 1e-12, format!("worst relative difference {worst:.2e} (tol 1e-12)"))
}

fn em_closure() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for a in [0.25, 0.5, 0.75] {
        for m in [10, 50, 100] {
            let d = EMDecomposition::compute(m, order(a), &spec).map_err(|e| e.to_string())?;
            let defect = (kernel_s(m, order(a)).unwrap() - (d.integral_term + d.endpoint_term + d.remainder_term)).abs();
            worst = worst.max(defect);
        }
    }
    ok_if(worst <= 1e-8, format!("worst closure defect {worst:.2e} (tol 1e-8)"))
}

fn em_integral_rate() -> Outcome {
    let spec = QuadratureSpec::default();
    let ms = [100, 1_000, 10_000, 100_000];
    let report = em_sweep(order(0.75), &ms, &spec).map_err(|e| e.to_string())?;
    let slope = report.slope().ok_or("degenerate report")?;
    let mut worst = 0.0f64;
    for m in ms {
        let lo = em_error(m, order(0.25), &spec).map_err(|e| e.to_string())?;
        worst = worst.max((lo - em_error(m, order(0.75), &spec).unwrap()).abs());
    }
    ok_if(
        (slope + 0.25).abs() <= 0.07 && worst <= 2.0 * spec.abs_tol,
        format!("slope {slope:.4} (want -0.25 ± 0.07), alpha swap difference {worst:.2e} (tol {:.0e})", 2.0 * spec.abs_tol),
    )
}

fn residue_rate() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for func in [TestFunction::cubic(), TestFunction::sine(), TestFunction::kink()] {
        let r = residue_sweep(&func, order(0.5), 1.0, &default_n_list()).map_err(|e| e.to_string())?;
        let slope = r.slope().ok_or("degenerate report")?;
        pass &= (0.38..=0.65).contains(&slope);
        parts.push(format!("{} {slope:.3}", func.name()));
    }
    ok_if(pass, format!("slopes {} (want [0.38, 0.65])", parts.join(", ")))
}

fn kernel_limit() -> Outcome {
    let mut worst_ratio = 0.0f64;
    for a in [0.25, 0.5, 0.75] {
        let o = order(a);
        for m in [10, 100, 1_000, 10_000, 100_000] {
            let gap = (kernel_s(m, o).unwrap() - o.kernel_limit()).abs();
            worst_ratio = worst_ratio.max(gap / (2.0 * (m as f64).powf(-o.beta())));
        }
    }
    let quarter_pi = gamma_fn(1.5).unwrap() * gamma_fn(1.5).unwrap();
    let limit_err = (order(0.5).kernel_limit() - PI / 4.0).abs();
    ok_if(
        worst_ratio <= 1.0 && limit_err <= 1e-15 && (quarter_pi - PI / 4.0).abs() <= 1e-15,
        format!("max |S_m - L| / (2 m^-beta) = {worst_ratio:.3e}, |L(0.5) - pi/4| = {limit_err:.1e}"),
    )
}

fn remainder_rates() -> Outcome {
    let spec = QuadratureSpec::default();
    let ns: Vec<usize> = (6..=12).map(|k| 1 << k).collect();
    let half_square = TestFunction::scaled_monomial("half-square", 2.0, 0.5).unwrap();
    let d = operator_rate_sweep(&half_square, order(0.5), 1.0, &ns, Which::Derivative, &spec)
        .map_err(|e| e.to_string())?;
    let d_slope = d.slope().ok_or("degenerate derivative report")?;
    let scaled = d.errors.last().unwrap() / d.abscissae.last().unwrap().powf(1.5);
    let r = remainder_constant_r(order(0.5));
    let linear = TestFunction::monomial(1.0).unwrap();
    let i = operator_rate_sweep(&linear, order(0.5), 1.0, &ns, Which::Integral, &spec).map_err(|e| e.to_string())?;
    let i_slope = i.slope().ok_or("degenerate integral report")?;
    ok_if(
        (d_slope - 1.5).abs() <= 0.1 && (scaled - r).abs() <= 0.1 * r && (i_slope - 1.0).abs() <= 0.1,
        format!(
            "derivative slope {d_slope:.4}, error/h^1.5 {scaled:.4} vs R {r:.4}, integral slope {i_slope:.4}"
        ),
    )
}

fn exactness() -> Outcome {
    let mut worst_const_d = 0.0f64;
    let mut worst_const_j = 0.0f64;
    let mut worst_linear_d = 0.0f64;
    for a in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let o = order(a);
        for (h, n) in [(0.01, 100), (1.0 / 64.0, 64), (0.3, 7)] {
            let mesh = UniformMesh::new(h, n).unwrap();
            let c = GridFunction::sample(mesh, |_| 2.5).unwrap();
            worst_const_d = caputo_l1(&c, o).unwrap().samples().iter().fold(worst_const_d, |w, v| w.max(v.abs()));
            let j = frac_integral_l1(&c, o).unwrap();
            let g1 = gamma_fn(1.0 + a).unwrap();
            for k in 1..=n {
                let exact = 2.5 * mesh.t(k).powf(a) / g1;
                worst_const_j = worst_const_j.max((j.samples()[k] - exact).abs());
            }
            let lin = GridFunction::sample(mesh, |t| t).unwrap();
            let d = caputo_l1(&lin, o).unwrap();
            let g2 = gamma_fn(2.0 - a).unwrap();
            for k in 1..=n {
                let exact = mesh.t(k).powf(1.0 - a) / g2;
                worst_linear_d = worst_linear_d.max((d.samples()[k] - exact).abs());
            }
        }
    }
    let mut worst_tele = 0.0f64;
    for beta in [0.05, 0.25, 0.5, 0.75, 0.95] {
        let seq = weight_sequence(10_000, beta).unwrap();
        for n in [1usize, 10, 100, 1_000, 10_000] {
            let partial: f64 = seq.values()[..n].iter().sum();
            let target = (n as f64).powf(beta);
            worst_tele = worst_tele.max((partial - target).abs() / target);
        }
        worst_tele = worst_tele.max((seq.sum() - 10_000f64.powf(beta)).abs() / 10_000f64.powf(beta));
    }
    ok_if(
        worst_const_d == 0.0 && worst_const_j <= 1e-13 && worst_linear_d <= 1e-13 && worst_tele <= 1e-12,
        format!(
            "delta(const) max {worst_const_d:.1e}, J(const) err {worst_const_j:.1e}, delta(t) err {worst_linear_d:.1e}, telescoping rel {worst_tele:.1e}"
        ),
    )
}

fn special_functions() -> Outcome {
    let mut worst_gamma = 0.0f64;
    let mut x = 0.1;
    while x <= 20.0 {
        let lhs = gamma_fn(x + 1.0).unwrap();
        worst_gamma = worst_gamma.max((lhs - x * gamma_fn(x).unwrap()).abs() / lhs);
        x += 0.01;
    }
    let mut worst_zeta = 0.0f64;
    for (s, expected) in [(-1.0, -1.0 / 12.0), (0.0, -0.5)] {
        for v in [zeta_fn(s).unwrap(), zeta_series(s).unwrap()] {
            worst_zeta = worst_zeta.max((v - expected).abs());
        }
    }
    ok_if(
        worst_gamma <= 1e-13 && worst_zeta <= 1e-10,
        format!("gamma recurrence residual {worst_gamma:.1e}, zeta error {worst_zeta:.1e} over both routes"),
    )
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "interchange identity",
            budget: Some(Duration::from_secs(5)),
            run: interchange_identity,
        },
        Criterion {
            id: 2,
            name: "Euler-Maclaurin closure",
            budget: Some(Duration::from_secs(10)),
            run: em_closure,
        },
        Criterion {
            id: 3,
            name: "integral term rate and symmetry",
            budget: Some(Duration::from_secs(30)),
            run: em_integral_rate,
        },
        Criterion {
            id: 4,
            name: "residue rate",
            budget: Some(Duration::from_secs(60)),
            run: residue_rate,
        },
        Criterion {
            id: 5,
            name: "kernel limit",
            budget: None,
            run: kernel_limit,
        },
        Criterion {
            id: 6,
            name: "L1 remainder rates",
            budget: None,
            run: remainder_rates,
        },
        Criterion {
            id: 7,
            name: "exactness invariants",
            budget: None,
            run: exactness,
        },
        Criterion {
            id: 8,
            name: "special functions",
            budget: None,
            run: special_functions,
        },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (mut pass, mut detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if let Some(budget) = c.budget {
            if elapsed > budget {
                pass = false;
                detail.push_str(&format!("; over the {}s budget", budget.as_secs()));
            }
        }
        println!(
            "[{}] criterion {}: {} ({:.2}s): {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            detail
        );
        if !pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
