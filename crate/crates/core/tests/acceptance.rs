//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use hypergiant::cli::{parse_args, render};
use hypergiant::continuum::{
    event_t, explore_rightmost, gamma_adjacent, gamma_graph, gamma_graph_torus, increment_cdf_bound,
    increment_mean_bound, lemmas, mecke_check, planted_degree, expected_planted_degree, sample_continuum,
    torus_adjacent, ContinuumParams, EventKind, LayeredSample, Rect, Window,
};
use hypergiant::coupling::{edge_agreement, expected_outer_disagreements};
use hypergiant::estimators::{
    bracket_lambda_c, c_of, estimate_theta, lln_experiment, McConfig, LlnTable, SUBCRITICAL_LAMBDA,
};
use hypergiant::geometry::{arccos_bounds_hold, cos_bounds_hold, polar_adjacent, sqrt_bounds_hold, KpkvbParams};
use hypergiant::kpkvb::{build_graph, poissonized_count, sample_vertices, sample_vertices_poissonized};
use hypergiant::powerlaw::degree_tail_exponent;
use hypergiant::rng::{replica_seed, rng_from};
use hypergiant::stats::mean_sd;
use hypergiant::{components, Graph};
use rand::Rng as _;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn sorted(g: &Graph) -> Vec<(u32, u32)> {
    let mut e = g.edges().to_vec();
    e.sort_unstable();
    e
}

fn brute(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if adjacent(i, j) {
                out.push((i as u32, j as u32));
            }
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng_from(1, &[1]);
    let (mut disk, mut plain, mut torus) = (0, 0, 0);
    for k in 0..100 {
        let n = rng.random_range(100..=2000);
        let alpha = rng.random_range(0.55..1.5);
        let nu = rng.random_range(0.5..4.0);
        let vs = sample_vertices(KpkvbParams::new(n, alpha, nu).unwrap(), replica_seed(11, k));
        let radius = vs.radius();
        disk += usize::from(sorted(&build_graph(&vs)) != brute(n, |i, j| polar_adjacent(&vs.points[i], &vs.points[j], radius)));

        let params = ContinuumParams::new(alpha, rng.random_range(0.3..3.0)).unwrap();
        let s = sample_continuum(params, Window::new(rng.random_range(5.0..60.0), 6.0).unwrap(), replica_seed(12, k));
        let p = &s.points[..s.points.len().min(2000)];
        let s = hypergiant::continuum::ContinuumSample::from_points(p.to_vec(), s.params, s.window, s.seed);
        plain += usize::from(sorted(&gamma_graph(&s)) != brute(p.len(), |i, j| gamma_adjacent(&p[i], &p[j])));
        let c = 2.0 * s.window.half_width();
        let t = gamma_graph_torus(&s, c).unwrap();
        torus += usize::from(sorted(&t) != brute(p.len(), |i, j| torus_adjacent(&p[i], &p[j], c)));
    }
    outcome(
        disk + plain + torus == 0,
        format!("mismatching instances: disk {disk}/100, continuum {plain}/100, torus {torus}/100"),
    )
}

fn cross_properties() -> Outcome {
    let i = lemmas::sweep_cross_i(100_000, 21);
    let ii = lemmas::sweep_cross_ii(100_000, 22);
    outcome(
        i.passed() && ii.passed(),
        format!("part i: {} violations / {}; part ii: {} violations / {}", i.violations, i.configurations, ii.violations, ii.configurations),
    )
}

fn box_adjacency() -> Outcome {
    let s = lemmas::sweep_boxes(1_000_000, 31);
    outcome(s.passed(), format!("{} violations / {} pairs", s.violations, s.configurations))
}

fn mean_degree() -> Outcome {
    let g = build_graph(&sample_vertices(KpkvbParams::new(100_000, 1.0, 2.0).unwrap(), 41));
    let target = 16.0 / PI;
    let rel = (g.mean_degree() - target).abs() / target;
    outcome(rel <= 0.10, format!("mean degree {:.4} vs {:.4} (relative error {:.4}, limit 0.10)", g.mean_degree(), target, rel))
}

fn tail_exponents() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (alpha, seed) in [(0.75, 51), (1.0, 52)] {
        let g = build_graph(&sample_vertices(KpkvbParams::new(200_000, alpha, 2.0).unwrap(), seed));
        let target = 2.0 * alpha + 1.0;
        match degree_tail_exponent(&g, 10) {
            Ok(a) => {
                ok &= (a - target).abs() <= 0.3;
                parts.push(format!("alpha {alpha}: {a:.3} vs {target}"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("alpha {alpha}: {e}"));
            }
        }
    }
    outcome(ok, format!("{} (tolerance 0.3)", parts.join("; ")))
}

fn subcritical_giant(table: &LlnTable) -> Outcome {
    let means: Vec<f64> = table.rows.iter().map(|r| r.g_c1.0).collect();
    let decreasing = means.windows(2).all(|w| w[1] < w[0]);
    let last = *means.last().unwrap();
    outcome(decreasing && last < 0.2, format!("mean c1_frac over N=1e3,1e4,5e4: {means:.4?} (last must be < 0.2)"))
}

fn dense_giant() -> Outcome {
    let params = KpkvbParams::new(50_000, 0.45, 1.0).unwrap();
    let fracs: Vec<f64> =
        (0..5).map(|k| components(&build_graph(&sample_vertices(params, replica_seed(71, k)))).c1_frac).collect();
    let (m, _) = mean_sd(&fracs);
    outcome(m >= 0.9, format!("mean c1_frac {m:.4} over 5 replicas (needs >= 0.9)"))
}

fn subcritical_theta() -> Outcome {
    let params = ContinuumParams::new(1.0, 0.05).unwrap();
    match estimate_theta(0.0, params, 60.0, 2.0, 50.0, 500, 81) {
        Ok(e) => outcome(
            e.upper <= 0.1,
            format!("upper {:.4} (CI {:.4}..{:.4}), lower {:.4}; lambda 0.05 < {SUBCRITICAL_LAMBDA:.6}", e.upper, e.upper_ci[0], e.upper_ci[1], e.lower),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn critical_bracket() -> Outcome {
    let (tol, stability) = (0.05, 0.25);
    let a = bracket_lambda_c(4.0, 2.0, 400, tol, 91);
    let b = bracket_lambda_c(8.0, 2.0, 400, tol, 91);
    match (a, b) {
        (Ok(a), Ok(b)) => {
            let inside = [&a, &b].iter().all(|x| x.lo > 0.1 && x.hi < 11.0);
            let drift = (a.midpoint() - b.midpoint()).abs();
            let violations = a.monotone_violations + b.monotone_violations;
            outcome(
                inside && drift <= stability && violations == 0,
                format!(
                    "h=4: [{:.4}, {:.4}], h=8: [{:.4}, {:.4}], drift {drift:.4} (limit {stability}), monotonicity violations {violations}",
                    a.lo, a.hi, b.lo, b.hi
                ),
            )
        }
        (a, b) => outcome(false, format!("{:?} {:?}", a.err(), b.err())),
    }
}

fn coupled_monotonicity() -> Outcome {
    let (alpha, y, h, w) = (0.8, 0.0, 4.0, 2.0);
    let lambdas = [0.2, 0.4, 0.7, 1.0, 1.5, 2.0];
    let window = EventKind::T { y, h, w }.window().unwrap();
    let mut t_violations = 0;
    for k in 0..1000 {
        let base = LayeredSample::sample(alpha, 2.0, window, replica_seed(101, k)).unwrap();
        let mut prev = false;
        for &l in &lambdas {
            let now = event_t(y, h, w, &base.slice(ContinuumParams::new(alpha, l).unwrap()).unwrap()).unwrap();
            t_violations += usize::from(prev && !now);
            prev = now;
        }
    }
    let alphas = [0.6, 0.75, 0.9];
    let nus = [0.5, 1.0, 2.0];
    let cfg = McConfig { replicas: 200, envelope: Some((0.6, 0.6)), ..McConfig::default() };
    let grid: Vec<Vec<(f64, f64)>> = alphas
        .iter()
        .map(|&a| {
            nus.iter()
                .map(|&nu| {
                    let e = c_of(a, nu, 12, &cfg, 102).unwrap();
                    (e.value, e.uncertainty)
                })
                .collect()
        })
        .collect();
    let mut c_violations = 0;
    for i in 0..3 {
        for j in 0..3 {
            let (v, u) = grid[i][j];
            if i + 1 < 3 {
                let (v2, u2) = grid[i + 1][j];
                c_violations += usize::from(v2 - v > u + u2);
            }
            if j + 1 < 3 {
                let (v2, u2) = grid[i][j + 1];
                c_violations += usize::from(v - v2 > u + u2);
            }
        }
    }
    let values: Vec<Vec<String>> = grid.iter().map(|r| r.iter().map(|(v, _)| format!("{v:.3}")).collect()).collect();
    outcome(
        t_violations == 0 && c_violations == 0,
        format!("T violations {t_violations} over 1000 coupled replicas; c grid (rows alpha {alphas:?}, cols nu {nus:?}) {values:?}, violations beyond budget {c_violations}"),
    )
}

fn coupling_fidelity() -> Outcome {
    let mut report = hypergiant::coupling::EdgeAgreementReport::default();
    let p4 = KpkvbParams::new(10_000, 0.8, 1.0).unwrap();
    for k in 0..20 {
        let r = edge_agreement(&sample_vertices_poissonized(p4, replica_seed(111, k)));
        report.total_pairs += r.total_pairs;
        report.gamma_only += r.gamma_only;
    }
    let rate = report.gamma_only_rate();
    let mut expected = Vec::new();
    let mut raw = Vec::new();
    for (n, reps) in [(1_000, 200), (10_000, 40), (100_000, 6)] {
        let params = KpkvbParams::new(n, 0.8, 1.0).unwrap();
        let (mut e, mut o) = (0.0, 0u64);
        for k in 0..reps {
            let vs = sample_vertices_poissonized(params, replica_seed(112, k));
            e += expected_outer_disagreements(&vs, 0.01);
            o += edge_agreement(&vs).g_only_outer;
        }
        expected.push(e / reps as f64);
        raw.push(o as f64 / reps as f64);
    }
    let decreasing = expected.windows(2).all(|w| w[1] < w[0]);
    outcome(
        rate < 1e-3 && decreasing,
        format!(
            "gamma_only rate {rate:.2e} at N=1e4 (limit 1e-3); expected outer disagreements over N=1e3,1e4,1e5: {expected:.4?} (raw mean counts {raw:.4?})"
        ),
    )
}

fn poissonization(table: &LlnTable) -> Outcome {
    let params = KpkvbParams::new(10_000, 1.0, 1.0).unwrap();
    let draws = 10_000;
    let above = (0..draws).filter(|&k| poissonized_count(params, replica_seed(121, k)) >= 10_000).count();
    let p = above as f64 / draws as f64;
    let mut agree = true;
    for r in &table.rows {
        for (g, po) in [(r.g_c1, r.po_c1), (r.g_c2, r.po_c2)] {
            agree &= (g.0 - po.0).abs() <= g.1.hypot(po.1);
        }
    }
    outcome(
        (p - 0.5).abs() <= 0.02 && agree,
        format!("P(Z >= N) = {p:.4} (0.5 +- 0.02); G vs G_Po c1/c2 means within spread: {agree}"),
    )
}

fn mecke() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let cases = [
        (0.8, 1.0, Rect { x0: -2.0, x1: 2.0, y0: 0.0, y1: 1.0 }),
        (1.0, 2.0, Rect { x0: 0.5, x1: 3.0, y0: 0.5, y1: 2.5 }),
        (1.3, 0.5, Rect { x0: -4.0, x1: -1.0, y0: 0.0, y1: 3.0 }),
    ];
    for (k, (alpha, lambda, rect)) in cases.into_iter().enumerate() {
        let params = ContinuumParams::new(alpha, lambda).unwrap();
        let r = mecke_check(params, Window::new(5.0, 4.0).unwrap(), rect, 4000, 131 + k as u64).unwrap();
        ok &= r.pass;
        parts.push(format!("mu {:.3}: z {:.2}/{:.2}", r.mu, r.count_z, r.pair_z));
    }
    // planted degree against the Mecke integral
    let (alpha, lambda, y, h): (f64, f64, f64, f64) = (0.9, 1.0, 1.0, 4.0);
    let params = ContinuumParams::new(alpha, lambda).unwrap();
    let window = Window::new(((y + h) / 2.0).exp() + 1.0, h).unwrap();
    let degrees: Vec<f64> = (0..2000)
        .map(|k| planted_degree(y, &sample_continuum(params, window, replica_seed(134, k))) as f64)
        .collect();
    let (m, _) = mean_sd(&degrees);
    let ed = expected_planted_degree(&params, y, Some(h));
    let z = (m - ed) / (ed / degrees.len() as f64).sqrt();
    ok &= z.abs() <= 4.0;
    parts.push(format!("planted degree {m:.3} vs {ed:.3}: z {z:.2}"));
    outcome(ok, format!("{} (all |z| <= 4)", parts.join("; ")))
}

fn appendix_bounds() -> Outcome {
    let n = 1_000_000;
    let mut violations = [0usize; 3];
    for k in 0..=n {
        let t = k as f64 / n as f64;
        violations[0] += usize::from(!arccos_bounds_hold(t).unwrap());
        violations[1] += usize::from(!sqrt_bounds_hold(2.0 * t - 1.0).unwrap());
        violations[2] += usize::from(!cos_bounds_hold(t).unwrap());
    }
    outcome(violations == [0; 3], format!("violations arccos/sqrt/cos {violations:?} on grids of {} points", n + 1))
}

fn determinism() -> Outcome {
    let lines = [
        "generate --n 2000 --alpha 0.7 --nu 2 --seed 7",
        "generate --n 500 --alpha 0.7 --nu 2 --seed 7 --format svg",
        "components --n 5000 --alpha 0.8 --nu 1 --seed 3 --poissonized",
        "theta --alpha 0.9 --lambda 1 --replicas 60 --seed 3",
        "cvalue --alpha 0.8 --nu 2 --nodes 6 --replicas 40 --seed 3",
        "lambdac --h 3 --replicas 40 --seed 3",
        "lln --alpha 1 --nu 2 --nlist 500,1000 --replicas 3 --seed 3",
        "couple-check --n 3000 --alpha 0.8 --nu 1 --seed 3",
    ];
    let mut differing = Vec::new();
    for line in lines {
        let args: Vec<&str> = std::iter::once("hypergiant").chain(line.split_whitespace()).collect();
        let cfg = parse_args(&args).unwrap();
        if render(&cfg).unwrap() != render(&cfg).unwrap() {
            differing.push(line);
        }
    }
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_hypergiant"))
            .args(["components", "--n", "3000", "--alpha", "0.8", "--nu", "1", "--seed", "5"])
            .output()
            .unwrap()
            .stdout
    };
    let binary_same = run() == run();
    outcome(
        differing.is_empty() && binary_same,
        format!("{} commands rendered twice, differing: {differing:?}; binary stdout identical: {binary_same}", lines.len()),
    )
}

fn exploration_increments() -> Outcome {
    let lambda = 0.05;
    let params = ContinuumParams::new(1.0, lambda).unwrap();
    let window = Window::new(PI * 200.0, 12.0).unwrap();
    let mut increments = Vec::new();
    for k in 0..10_000 {
        let path = explore_rightmost(0.0, &sample_continuum(params, window, replica_seed(151, k)));
        let ys: Vec<f64> = path.iter().map(|p| p.1).collect();
        increments.extend(ys.windows(2).map(|w| (w[1] - w[0]).max(-10.0)));
        increments.push(-10.0);
    }
    let (mean, _) = mean_sd(&increments);
    let bound = increment_mean_bound(lambda);
    increments.sort_by(f64::total_cmp);
    let n = increments.len() as f64;
    // empirical CDF must lie above the Gumbel bound (up to sampling error)
    let slack = 1.63 / n.sqrt();
    let dominated = increments
        .iter()
        .enumerate()
        .all(|(i, &x)| (i + 1) as f64 / n + slack >= increment_cdf_bound(lambda, x));
    outcome(
        mean <= bound + 0.2 && dominated,
        format!("mean increment {mean:.3} vs bound {bound:.3} + 0.2 over {} steps; CDF dominated: {dominated}", increments.len()),
    )
}

fn main() {
    let started = Instant::now();
    let mut failures = 0;
    let mut report = |label: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        println!(
            "{} {label}: {} [{:.1}s]",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
        failures += usize::from(!o.passed);
    };
    report("1 oracle equivalence", &oracle_equivalence);
    report("2 cross properties", &cross_properties);
    report("3 box adjacency", &box_adjacency);
    report("4 mean degree", &mean_degree);
    report("5 power-law tail", &tail_exponents);
    let table = lln_experiment(1.5, 5.0, &[1_000, 10_000, 50_000], 20, 61).unwrap();
    report("6 no giant for alpha > 1", &|| subcritical_giant(&table));
    report("7 giant for alpha < 1/2", &dense_giant);
    report("8 subcritical theta", &subcritical_theta);
    report("9 critical intensity bracket", &critical_bracket);
    report("10 coupled monotonicity", &coupled_monotonicity);
    report("11 coupling fidelity", &coupling_fidelity);
    report("12 poissonization", &|| poissonization(&table));
    report("13 mecke identities", &mecke);
    report("14 appendix bounds", &appendix_bounds);
    report("15 determinism", &determinism);
    report("exploration increments", &exploration_increments);
    println!("{failures} failing, total {:.1}s", started.elapsed().as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
