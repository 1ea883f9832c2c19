//! Acceptance run: every criterion at its pinned tolerance and runtime
//! budget, one PASS/FAIL line each.
//!
//! The process exits with status 0 so the rest of the test suite still runs;
//! set `ACCEPTANCE_STRICT=1` to turn any FAIL into a nonzero exit.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use harnack_lab::analysis::{
    dyadic_increments, growth_exponent, ratio_profile, sumdiv_subsequence, threshold_verdict, weiss_at, weiss_trace,
    SumDivCase, WeissTrace,
};
use harnack_lab::elliptic::{
    assemble, read_binary, solve, solve_pair, solve_pair_with, CoefficientField, Dirichlet, PairOptions, RhsSpec,
    ScalarField,
};
use harnack_lab::geometry::{make_ball, make_lipschitz_graph, make_polygon, make_sector, rasterize, DomainSpec};
use harnack_lab::heleshaw::wets_corner;
use harnack_lab::runner::{self, ExperimentConfig};
use harnack_lab::spectral::{alpha_axisymmetric, alpha_sector, critical_aperture, fredholm_residual};

type Outcome = Result<(bool, String), String>;

struct Report {
    failures: usize,
}

impl Report {
    fn criterion(&mut self, id: &str, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) {
        let t0 = Instant::now();
        let res = f();
        let el = t0.elapsed();
        let (ok, detail) = match res {
            Ok((ok, d)) => (ok, d),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = el <= budget;
        let pass = ok && in_time;
        if !pass {
            self.failures += 1;
        }
        let timing = if in_time { String::new() } else { " over budget".to_string() };
        println!(
            "{} [{id}] {name}: {detail} ({:.2}s / {}s{timing})",
            if pass { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            budget.as_secs()
        );
    }
}

fn e(err: harnack_lab::Error) -> String {
    err.to_string()
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn exponents(r: &mut Report) {
    r.criterion("1a", "sector exponents are π/ω", secs(1), || {
        let mut worst = 0.0f64;
        for k in 1..=40 {
            let w = k as f64 * 2.0 * PI / 41.0;
            worst = worst.max((alpha_sector(w, 1).map_err(e)? - PI / w).abs());
            worst = worst.max((alpha_sector(w, 3).map_err(e)? - 3.0 * PI / w).abs());
        }
        Ok((worst == 0.0, format!("max deviation {worst:e}")))
    });
    r.criterion("1b", "half-space cone in R³ has α₁ = 1", secs(1), || {
        let a = alpha_axisymmetric(3, PI / 2.0, 1).map_err(e)?.alpha1;
        Ok(((a - 1.0).abs() <= 1e-6, format!("α₁ = {a:.12}")))
    });
    r.criterion("1c", "critical aperture in R³ is arccos(1/√3)", secs(1), || {
        let c = critical_aperture(3).map_err(e)?;
        let exact = (1.0 / 3f64.sqrt()).acos();
        Ok(((c - exact).abs() <= 1e-4, format!("θ = {c:.10}, |Δ| = {:.2e}", (c - exact).abs())))
    });
}

fn sector_harmonic(omega: f64) -> impl Fn(&[f64; 3]) -> f64 + Send + Sync + Clone + 'static {
    let a = PI / omega;
    move |x: &[f64; 3]| {
        let r = x[0].hypot(x[1]);
        let t = x[1].atan2(x[0]) - (PI / 2.0 - omega / 2.0);
        r.powf(a) * (a * t).sin()
    }
}

fn solve_dirichlet(spec: &DomainSpec, h: f64, f: impl Fn(&[f64; 3]) -> f64 + Send + Sync + 'static) -> Result<ScalarField, String> {
    let g = Arc::new(rasterize(spec, h).map_err(e)?);
    let data = Dirichlet::function("exact", move |x, _| f(x));
    let sys = assemble(g, &CoefficientField::identity(), &RhsSpec::zero(), data).map_err(e)?;
    solve(&sys, 1e-12).map_err(e)
}

/// Largest difference between `coarse` and `fine` at the coarse unknowns.
fn level_difference(coarse: &ScalarField, fine: &ScalarField) -> f64 {
    let (gc, gf) = (&*coarse.grid, &*fine.grid);
    (0..gc.num_unknowns())
        .filter_map(|k| {
            let x = gc.point(k);
            let lin = gf.nearest_lattice(&x[..gc.dim])?;
            let j = gf.unknown_at(lin)?;
            Some((coarse.values[k] - fine.values[j]).abs())
        })
        .fold(0.0, f64::max)
}

fn solver(r: &mut Report) {
    r.criterion("2a", "disk Poisson center value", secs(30), || {
        let h = 1.0 / 128.0;
        let g = Arc::new(rasterize(&make_ball(2, 1.0).map_err(e)?, h).map_err(e)?);
        let sys = assemble(g, &CoefficientField::identity(), &RhsSpec::constant(-1.0), Dirichlet::Zero).map_err(e)?;
        let u = solve(&sys, 1e-12).map_err(e)?;
        let c = u.interpolate(&[0.0; 3]);
        Ok(((c - 0.25).abs() <= 2.0 * h * h, format!("u(0) = {c:.12}, tolerance {:.2e}", 2.0 * h * h)))
    });
    r.criterion("2b", "sector harmonic self-convergence", secs(30), || {
        let omega = 0.75 * PI;
        let spec = make_sector(omega).map_err(e)?;
        let f = sector_harmonic(omega);
        let fields = [1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0]
            .iter()
            .map(|&h| solve_dirichlet(&spec, h, f.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let d1 = level_difference(&fields[0], &fields[1]);
        let d2 = level_difference(&fields[1], &fields[2]);
        let order = (d1 / d2).log2();
        Ok((order >= 1.0, format!("differences {d1:.3e}, {d2:.3e}; order {order:.3}")))
    });
}

fn threshold(r: &mut Report) {
    r.criterion("3", "threshold reproduction at h = 1/256", secs(300), || {
        let h = 1.0 / 256.0;
        let anchor = [0.0, 0.5, 0.0];
        let (u, v) = solve_pair(&make_sector(0.75 * PI).map_err(e)?, 0.0, h).map_err(e)?;
        let wide = ratio_profile(&u, &v, &anchor, 8).map_err(e)?;
        let (u, v) = solve_pair(&make_sector(0.25 * PI).map_err(e)?, 0.0, h).map_err(e)?;
        let narrow = ratio_profile(&u, &v, &anchor, 8).map_err(e)?;
        let rate = narrow.log2_rate(1.0).ok_or("too few levels for a rate")?;
        let inc = dyadic_increments(&u, &v, &anchor, 4.0, 12).map_err(e)?;
        let plateau = inc.plateau(0.05);
        let ok = wide.spread() < 2.0 && (rate - 2.0).abs() <= 0.3 && plateau.is_none() && inc.a.len() >= 3;
        Ok((
            ok,
            format!(
                "3π/4 spread {:.3} over {} levels; π/4 rate {rate:.3}, {} increments, plateau {plateau:?}",
                wide.spread(),
                wide.radii.len(),
                inc.a.len()
            ),
        ))
    });
}

fn weiss_radii(h_coarse: f64) -> Vec<f64> {
    (0..40).map(|k| 0.45 * 2f64.powf(-0.25 * k as f64)).take_while(|&r| r >= 8.0 * h_coarse).collect()
}

/// Closed-form eigenfunction of the critical cap and its weight.
fn fredholm_oracle(dim: usize) -> f64 {
    let (theta_c, f, s): (f64, Box<dyn Fn(f64) -> f64>, f64) = match dim {
        2 => (PI / 4.0, Box::new(|t: f64| (2.0 * t).cos()), 2.0),
        3 => ((1.0 / 3f64.sqrt()).acos(), Box::new(|t: f64| 1.5 * t.cos().powi(2) - 0.5), 2.0 * PI),
        _ => unreachable!(),
    };
    let w = |t: f64| t.sin().powi(dim as i32 - 2);
    // composite Simpson
    let n = 20_000;
    let dt = theta_c / n as f64;
    let (mut ip, mut nrm) = (0.0, 0.0);
    for i in 0..=n {
        let t = i as f64 * dt;
        let c = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        ip += c * w(t) * f(t);
        nrm += c * w(t) * f(t) * f(t);
    }
    (s * ip * dt / 3.0).abs() / (s * nrm * dt / 3.0).sqrt()
}

fn critical(r: &mut Report) {
    r.criterion("4a", "Weiss trace monotone within quadrature tolerance", secs(120), || {
        let spec = make_sector(PI / 2.0).map_err(e)?;
        let radii = weiss_radii(1.0 / 128.0);
        let trace = |h: f64| -> Result<WeissTrace, String> {
            let (_, v) = solve_pair(&spec, 0.0, h).map_err(e)?;
            weiss_trace(&v, &radii).map_err(e)
        };
        let coarse = trace(1.0 / 128.0)?;
        let fine = trace(1.0 / 256.0)?;
        if coarse.radii != fine.radii {
            return Err("radii dropped on one grid only".into());
        }
        let eps = coarse.w.iter().zip(&fine.w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let ok = fine.min_increment() >= -eps && coarse.min_increment() >= -eps;
        Ok((
            ok,
            format!(
                "{} radii, min increment {:.3e} (h=1/256), {:.3e} (h=1/128), ε_quad {eps:.3e}",
                fine.radii.len(),
                fine.min_increment(),
                coarse.min_increment()
            ),
        ))
    });
    r.criterion("4b", "Weiss scaling identity", secs(120), || {
        let (_, v) = solve_pair(&make_sector(PI / 2.0).map_err(e)?, 0.0, 1.0 / 128.0).map_err(e)?;
        let mut worst = 0.0f64;
        let mut n = 0;
        for s in [0.5, 0.25] {
            let vs = v.rescaled(s, 2.0).map_err(e)?;
            for rho in [0.2, 0.25, 0.3, 0.35, 0.4, 0.45] {
                if let (Some(a), Some(b)) = (weiss_at(&v, rho * s).map_err(e)?, weiss_at(&vs, rho).map_err(e)?) {
                    worst = worst.max((a - b).abs());
                    n += 1;
                }
            }
        }
        Ok((n >= 8 && worst <= 1e-8, format!("{n} pairs, max |W(ρr,v) − W(ρ,v_r)| = {worst:.2e}")))
    });
    r.criterion("4c", "Fredholm obstruction in dims 2 and 3", secs(120), || {
        let mut ok = true;
        let mut parts = vec![];
        for dim in [2, 3] {
            let rep = fredholm_residual(dim).map_err(e)?;
            let oracle = fredholm_oracle(dim);
            let rel = (rep.residual - oracle).abs() / oracle;
            let diffs: Vec<f64> = rep.refinement.windows(2).map(|p| (p[1].1 - p[0].1).abs()).collect();
            let converging = diffs.windows(2).all(|d| d[1] <= d[0] * 1.01 + 1e-12);
            ok &= rel <= 0.02 && converging;
            parts.push(format!("n={dim}: {:.8} vs {oracle:.8} (rel {rel:.1e})", rep.residual));
        }
        Ok((ok, parts.join("; ")))
    });
}

fn lipschitz(r: &mut Report) {
    r.criterion("5", "Lipschitz wedge graph L = 0.5", secs(180), || {
        let spec = make_lipschitz_graph(&[[-1.0, 0.5], [0.0, 0.0], [1.0, 0.5]], 1.0).map_err(e)?;
        let (u, v) = solve_pair(&spec, 0.0, 1.0 / 256.0).map_err(e)?;
        let prof = ratio_profile(&u, &v, &[0.0, 0.5, 0.0], 8).map_err(e)?;
        let fit = growth_exponent(&u, &[0.0; 3], 8).map_err(e)?;
        let cone = alpha_sector(PI - 2.0 * 0.5f64.atan(), 1).map_err(e)?;
        let ok = prof.spread() < 2.0 && (fit.fitted_exponent - cone).abs() <= 0.05;
        Ok((
            ok,
            format!("spread {:.3}; growth {:.4} vs cone α₁ {cone:.4}", prof.spread(), fit.fitted_exponent),
        ))
    });
}

fn divergence_form(r: &mut Report) {
    r.criterion("6a", "checkerboard maximum and comparison principles (100 instances)", secs(300), || {
        let spec = make_sector(0.75 * PI).map_err(e)?;
        let h = 1.0 / 32.0;
        let grid = Arc::new(rasterize(&spec, h).map_err(e)?);
        let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
        let tol = 1e-9;
        let mut violations = 0usize;
        for _ in 0..100 {
            let block = rng.gen_range(1.0 / 16.0..0.25);
            let c = if rng.gen_bool(0.5) { 0.0 } else { -0.5 };
            let coeffs = CoefficientField::checkerboard(block, 0.5, 2.0, [0.0; 3], c).map_err(e)?;
            let gamma = rng.gen_range(-0.5..1.0);
            let a1 = -rng.gen_range(0.0..2.0);
            let a2 = a1 - rng.gen_range(0.0..2.0);
            let (l1, o1) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..2.0));
            let (l2, o2) = (l1 + rng.gen_range(0.0..1.0), o1 + rng.gen_range(0.0..1.0));
            let run = |rhs: RhsSpec, l: f64, o: f64| -> Result<ScalarField, String> {
                let sys = assemble(grid.clone(), &coeffs, &rhs, Dirichlet::lateral_outer(l, o)).map_err(e)?;
                solve(&sys, 1e-12).map_err(e)
            };
            let u = run(RhsSpec::zero(), l1, o1)?;
            let w1 = run(RhsSpec::radial_power(a1, gamma), l1, o1)?;
            let w2 = run(RhsSpec::radial_power(a2, gamma), l2, o2)?;
            let top = l1.max(o1);
            for k in 0..u.values.len() {
                let bad = u.values[k] < -tol
                    || u.values[k] > top + tol
                    || w1.values[k] < u.values[k] - tol
                    || w1.values[k] > w2.values[k] + tol;
                violations += bad as usize;
            }
        }
        Ok((violations == 0, format!("{violations} violating cells over 100 instances")))
    });
    r.criterion("6b", "checkerboard ratio profile bounded", secs(300), || {
        let spec = make_sector(0.75 * PI).map_err(e)?;
        let mut spreads = vec![];
        for c in [0.0, -0.5] {
            let mut opts = PairOptions::new(0.0, 1.0 / 256.0);
            opts.coefficients = CoefficientField::checkerboard(1.0 / 16.0, 0.5, 2.0, [0.0; 3], c).map_err(e)?;
            let (u, v) = solve_pair_with(&spec, &opts).map_err(e)?;
            spreads.push(ratio_profile(&u, &v, &[0.0, 0.5, 0.0], 8).map_err(e)?.spread());
        }
        Ok((spreads.iter().all(|&s| s < 2.0), format!("spreads {spreads:.3?} for c = 0, −0.5")))
    });
}

fn sumdiv(r: &mut Report) {
    r.criterion("7", "subsequence construction", secs(1), || {
        let horizon = 100_000;
        let harmonic: Vec<f64> = (1..=horizon).map(|k| 1.0 / k as f64).collect();
        let res = sumdiv_subsequence(&harmonic, 5).map_err(e)?;
        let tail: Vec<f64> = (1..=5).map(|j| res.tail_sup(j, horizon / 2).unwrap_or(f64::INFINITY)).collect();
        let ok_h = tail.iter().enumerate().all(|(j, &t)| t <= (j + 1) as f64 * 1.05);

        let ones = vec![1.0; 1000];
        let res = sumdiv_subsequence(&ones, 5).map_err(e)?;
        let ok_c = res.subsequence_indices == (1..=1000).collect::<Vec<_>>()
            && (1..=5).all(|j| {
                res.ratio_table[j - 1].iter().zip(&res.subsequence_indices).all(|(r, &k)| match r {
                    Some(x) => k > j && *x == j as f64,
                    None => k <= j,
                })
            });

        let squares: Vec<f64> =
            (1..=10_000usize).map(|k| if ((k as f64).sqrt() as usize).pow(2) == k { 1.0 } else { 0.0 }).collect();
        let res = sumdiv_subsequence(&squares, 5).map_err(e)?;
        let on_squares = res.subsequence_indices.iter().all(|&k| squares[k - 1] == 1.0);
        let ok_s = on_squares && (1..=5).all(|j| res.tail_sup(j, 100) == Some(0.0));

        Ok((
            ok_h && ok_c && ok_s && res.case != SumDivCase::Unbounded,
            format!("1/k tail sups {tail:.4?}; constant exact: {ok_c}; squares exact: {ok_s}"),
        ))
    });
}

fn heleshaw(r: &mut Report) {
    r.criterion("8", "Hele-Shaw corner wetting", secs(300), || {
        let square = make_polygon(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]).map_err(e)?;
        let ell = make_polygon(&[[-1.0, -1.0], [0.0, -1.0], [0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [-1.0, 1.0]])
            .map_err(e)?;
        let mut square_dry = true;
        let mut ell_t = vec![];
        let mut balance_ok = true;
        let mut parts = vec![];
        for h in [1.0 / 64.0, 1.0 / 128.0] {
            let t_max = 1e3 * PI * (8.0 * h) * (8.0 * h);
            let sq = wets_corner(&square, &[1.0, 1.0], &[0.0, 0.0], t_max, 14, h).map_err(e)?;
            let l = wets_corner(&ell, &[0.0, 0.0], &[-0.5, 0.5], t_max, 14, h).map_err(e)?;
            square_dry &= !sq.wet;
            ell_t.push(l.first_wet_t);
            balance_ok &= sq.volume_balance_error <= 5.0 * h && l.volume_balance_error <= 5.0 * h;
            parts.push(format!(
                "h=1/{}: t_max {t_max:.2}, square first wet {:?}, L first wet {:?}, balance {:.1e}/{:.1e}",
                (1.0 / h).round(),
                sq.first_wet_t.map(|t| (t * 1e3).round() / 1e3),
                l.first_wet_t.map(|t| (t * 1e3).round() / 1e3),
                sq.volume_balance_error,
                l.volume_balance_error
            ));
        }
        let ell_ok = match (ell_t[0], ell_t[1]) {
            (Some(a), Some(b)) => a.max(b) / a.min(b) <= 2.0,
            _ => false,
        };
        Ok((square_dry && ell_ok && balance_ok, parts.join("; ")))
    });
}

fn configs_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn properties(r: &mut Report) {
    r.criterion("9", "property suites", secs(600), || {
        let mut failures: Vec<String> = vec![];
        let mut check = |name: &str, ok: bool| {
            if !ok {
                failures.push(name.to_string());
            }
        };

        // maximum and comparison principles on every model domain
        let domains = [
            make_sector(0.75 * PI).map_err(e)?,
            make_sector(0.25 * PI).map_err(e)?,
            make_lipschitz_graph(&[[-1.0, 0.3], [0.0, 0.0], [0.4, 0.1], [1.0, -0.2]], 1.0).map_err(e)?,
            harnack_lab::geometry::make_cone(3, 1.0).map_err(e)?,
        ];
        let mut pairs = vec![];
        for (i, d) in domains.iter().enumerate() {
            let h = if d.dim() == 3 { 1.0 / 16.0 } else { 1.0 / 64.0 };
            let (u, v) = solve_pair(d, 0.5, h).map_err(e)?;
            let ok = u.values.iter().zip(&v.values).all(|(a, b)| *a > 0.0 && *a < 1.0 + 1e-10 && *b >= *a - 1e-10);
            check(&format!("principles on domain {i}"), ok);
            pairs.push((u, v));
        }

        // scale equivariance
        let (u, v) = &pairs[0];
        let p = ratio_profile(u, v, &[0.0, 0.5, 0.0], 8).map_err(e)?;
        let c = 3.7;
        let q = ratio_profile(&u.scaled(c), v, &[0.0, 0.5, 0.0], 8).map_err(e)?;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
        check(
            "ratio profile scale equivariance",
            p.normalized().iter().zip(q.normalized()).all(|(a, b)| close(*a, b))
                && p.sup_ratio.iter().zip(&q.sup_ratio).all(|(a, b)| close(a / c, *b)),
        );
        let g1 = growth_exponent(&pairs[0].0, &[0.0; 3], 4).ok();
        let g2 = growth_exponent(&pairs[0].0.scaled(c), &[0.0; 3], 4).ok();
        if let (Some(g1), Some(g2)) = (&g1, &g2) {
            check(
                "growth exponent scale invariance",
                (g1.fitted_exponent - g2.fitted_exponent).abs() <= 1e-9 && close(g1.intercept * c, g2.intercept),
            );
        }
        let mut shift_ok = true;
        for a in [0.5, 1.25, 3.0, 4.5] {
            for g in [-0.75, 0.0, 0.5, 2.0] {
                for t in [0.25, 1.0, -0.125] {
                    if a + t > 0.0 {
                        shift_ok &= threshold_verdict(a, g).map_err(e)? == threshold_verdict(a + t, g + t).map_err(e)?;
                    }
                }
            }
        }
        check("threshold verdict shift invariance", shift_ok);

        // round trips
        let mut buf = vec![];
        u.write_binary(&mut buf).map_err(e)?;
        let back = read_binary(buf.as_slice()).map_err(e)?;
        let dense_ok = back.h == u.grid.h
            && back.values.iter().filter(|x| **x != 0.0).count() == u.values.iter().filter(|x| **x != 0.0).count();
        check("binary field round trip", dense_ok);
        for d in &domains {
            let j = serde_json::to_string(d).map_err(|x| x.to_string())?;
            let d2: DomainSpec = serde_json::from_str(&j).map_err(|x| x.to_string())?;
            check("domain JSON round trip", &d2 == d);
        }
        let mut paths: Vec<_> = std::fs::read_dir(configs_dir()).map_err(|x| x.to_string())?.flatten().map(|x| x.path()).collect();
        paths.sort();
        for p in &paths {
            let text = std::fs::read_to_string(p).map_err(|x| x.to_string())?;
            if text.contains("\"parameters\"") {
                check("sweep config parses", runner::SweepConfig::from_json(&text).is_ok());
                continue;
            }
            match ExperimentConfig::from_json(&text) {
                Ok(cfg) => check("config echo re-validates", ExperimentConfig::from_value(cfg.echo()).map(|c| c == cfg).unwrap_or(false)),
                Err(_) => check(&format!("config {} validates", p.display()), false),
            }
        }

        // byte reproducibility of manifests and artifacts
        let tmp = tempfile::tempdir().map_err(|x| x.to_string())?;
        for name in ["alpha_sector", "threshold_sweep", "sumdiv_harmonic", "fredholm", "holder_checkerboard", "ratio_subcritical"] {
            let mut cfg = ExperimentConfig::load(&configs_dir().join(format!("{name}.json"))).map_err(e)?;
            if name == "ratio_subcritical" {
                cfg = cfg.with_h(1.0 / 64.0);
            }
            let mut manifests = vec![];
            for rep in 0..2 {
                cfg.out_dir = Some(tmp.path().join(format!("{name}-{rep}")));
                let out = runner::run(&cfg).map_err(e)?;
                let bytes = std::fs::read(out.out_dir.join("manifest.json")).map_err(|x| x.to_string())?;
                let files_ok = out.manifest.files.iter().all(|f| {
                    std::fs::read(out.out_dir.join(&f.name)).map(|b| runner::sha256_hex(&b) == f.sha256).unwrap_or(false)
                });
                check(&format!("{name} manifest matches files"), files_ok);
                manifests.push(bytes);
            }
            check(&format!("{name} byte reproducible"), manifests[0] == manifests[1]);
        }

        Ok((failures.is_empty(), if failures.is_empty() { "all properties hold".into() } else { format!("failed: {}", failures.join(", ")) }))
    });
}

fn main() {
    let t0 = Instant::now();
    let mut r = Report { failures: 0 };
    exponents(&mut r);
    solver(&mut r);
    threshold(&mut r);
    critical(&mut r);
    lipschitz(&mut r);
    divergence_form(&mut r);
    sumdiv(&mut r);
    heleshaw(&mut r);
    properties(&mut r);
    println!("acceptance: {} failing, {:.1}s total", r.failures, t0.elapsed().as_secs_f64());
    if r.failures > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
        std::process::exit(1);
    }
}
