//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see the lines for passing tests).
//!
//! Two criteria (07 and 10) and one clause of criterion 08 are red by
//! construction on this artifact: at their stated densities the strong
//! 4-core of the sampled graphs is empty, so the surrogate `mu'`
//! degenerates into the NP-hard whole-graph minimum path cover, which the
//! library deliberately rejects with a capacity error instead of
//! approximating; and the literal `t_i > 10n` floor sits above the spider
//! extinction time for every feasible `n`. The corresponding tests state
//! the criteria verbatim, fail honestly, and print the diagnosis; the
//! `supplementary_*` tests demonstrate the same machinery meeting the same
//! tolerances at densities where the strong core exists.

use rayon::prelude::*;

use hamu::completion::{complete_graph, verify_certificate, BuildConfig, EngineMode};
use hamu::error::Error;
use hamu::graph::{gen_gnp, rng_from_seed, trial_seed, EdgeStream, Vertex};
use hamu::local::{eval_f_approx, mu_k_estimate, phi_k_prime};
use hamu::motifs::count_motifs;
use hamu::oracle;
use hamu::path_cover::{
    a_component, a_exhaustive, a_formula_small, a_tree_dp, mu_prime,
    verify_witness,
};
use hamu::process::{detect_equalities, run_process, MuMode, RunSpec};
use hamu::strong_core::{ab_components, strong_core, ABComponent};

use rand::Rng;

fn line(id: &str, pass: bool, detail: &str) {
    println!("ACCEPTANCE {id}: {} - {detail}", if pass { "PASS" } else { "FAIL" });
}

fn mk_component(a: Vec<Vertex>, b: Vec<Vertex>, edges: Vec<(Vertex, Vertex)>) -> ABComponent {
    let mut vertices: Vec<Vertex> = a.iter().chain(&b).copied().collect();
    vertices.sort_unstable();
    let is_tree = edges.len() + 1 == vertices.len();
    ABComponent { vertices, a_vertices: a, b_vertices: b, edges, is_tree }
}

fn random_labeled_tree(n: usize, rng: &mut impl Rng) -> ABComponent {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u as Vertex, v as Vertex));
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for v in 0..n as Vertex {
        if rng.random_bool(0.5) {
            a.push(v);
        } else {
            b.push(v);
        }
    }
    mk_component(a, b, edges)
}

/// Criterion 1: tree-DP vs exhaustive cover equivalence on 10^4 random
/// labeled trees of at most 14 vertices, and formula agreement whenever it
/// applies. Exact equality, under 2 minutes.
#[test]
fn criterion_01_cover_equivalence() {
    let start = std::time::Instant::now();
    let bad: u64 = (0..10_000u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng_from_seed(trial_seed(0xC1, trial));
            let n = rng.random_range(1..=14);
            let comp = random_labeled_tree(n, &mut rng);
            let dp = a_tree_dp(&comp).unwrap();
            let ex = a_exhaustive(&comp).unwrap();
            let formula_ok = comp.a_vertices.len() > 3
                || a_formula_small(&comp).unwrap().a_value == dp.a_value;
            let ok = dp.a_value == ex.a_value
                && formula_ok
                && verify_witness(&comp, &dp.witness, dp.a_value)
                && verify_witness(&comp, &ex.witness, ex.a_value);
            u64::from(!ok)
        })
        .sum();
    let secs = start.elapsed().as_secs_f64();
    let pass = bad == 0 && secs < 120.0;
    line("01 cover-equivalence", pass, &format!("{bad}/10000 mismatches, {secs:.1}s"));
    assert!(pass);
}

/// Criterion 2: mu >= mu' and mu >= n0 + ceil(n1/2) on 10^3 random
/// non-Hamiltonian graphs with n <= 10, p in {0.2, 0.4, 0.6}. Exact,
/// under 5 minutes.
#[test]
fn criterion_02_observation_bound() {
    let start = std::time::Instant::now();
    let results: Vec<(u64, u64)> = (0..3u64)
        .into_par_iter()
        .map(|lane| {
            let p = [0.2, 0.4, 0.6][lane as usize];
            let mut rng = rng_from_seed(trial_seed(0xC2, lane));
            let mut tested = 0u64;
            let mut bad = 0u64;
            while tested < 334 {
                let n = rng.random_range(3..=10usize);
                let g = gen_gnp(n, p, rng.random()).unwrap();
                if oracle::brute_hamiltonian(&g).unwrap() {
                    continue;
                }
                tested += 1;
                let mu = oracle::brute_mu(&g).unwrap() as u64;
                let mp = mu_prime(&g).unwrap();
                let n0 = g.degree_count(0) as u64;
                let n1 = g.degree_count(1) as u64;
                if mu < mp.mu_prime || mu < n0 + n1.div_ceil(2) {
                    bad += 1;
                }
            }
            (tested, bad)
        })
        .collect();
    let tested: u64 = results.iter().map(|r| r.0).sum();
    let bad: u64 = results.iter().map(|r| r.1).sum();
    let secs = start.elapsed().as_secs_f64();
    let pass = bad == 0 && tested >= 1000 && secs < 300.0;
    line("02 observation-bound", pass, &format!("{bad}/{tested} violations, {secs:.1}s"));
    assert!(pass);
}

/// Criterion 3: the closed-formula spot values, all matching exhaustive
/// covers exactly.
#[test]
fn criterion_03_formula_spot_values() {
    let isolated = mk_component(vec![0], vec![], vec![]);
    let edge = mk_component(vec![0], vec![1], vec![(0, 1)]);
    let star = mk_component(vec![0], vec![1, 2, 3], vec![(0, 1), (0, 2), (0, 3)]);
    let spider = mk_component(
        vec![1, 2, 3],
        vec![0, 4, 5, 6],
        vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)],
    );
    let mut pass = true;
    for (name, comp, want) in [
        ("isolated-A", &isolated, 2u64),
        ("AB-edge", &edge, 1),
        ("S-star", &star, 0),
        ("7-spider", &spider, 1),
    ] {
        let f = a_formula_small(comp).unwrap().a_value;
        let x = a_exhaustive(comp).unwrap().a_value;
        let d = a_tree_dp(comp).unwrap().a_value;
        if f != want || x != want || d != want {
            pass = false;
            println!("  {name}: formula={f} exhaustive={x} dp={d} want={want}");
        }
    }
    line("03 formula-spot-values", pass, "isolated=2 edge=1 star=0 spider=1");
    assert!(pass);
}

/// Criterion 4: algebraic consistency of the two closed forms,
/// f(d) = e^{-d} + d e^{-d}/2 + prespider-term(d)/2, to 1e-12 relative
/// for d in 1..=40.
#[test]
fn criterion_04_closed_form_consistency() {
    let mut worst: f64 = 0.0;
    for d in 1..=40 {
        let d = d as f64;
        let lhs = eval_f_approx(d);
        let prespider =
            ((d.powi(3) + 3.0 * d.powi(4) + 3.0 * d.powi(5) + d.powi(6)) / 6.0) * (-3.0 * d).exp();
        let rhs = (-d).exp() + 0.5 * d * (-d).exp() + 0.5 * prespider;
        worst = worst.max((lhs - rhs).abs() / rhs.abs());
    }
    let pass = worst <= 1e-12;
    line("04 closed-form-consistency", pass, &format!("worst relative deviation {worst:.3e}"));
    assert!(pass);
}

/// Criterion 5: Monte Carlo expectation at n = 10^5, d = 6 over 100 seeds:
/// the sample mean of (2 n0 + n1 + s3')/n within 5 standard errors of
/// 0.0200181. Under 10 minutes.
#[test]
fn criterion_05_monte_carlo_expectation() {
    let start = std::time::Instant::now();
    let n = 100_000usize;
    let d = 6.0;
    let vals: Vec<f64> = (0..100u64)
        .into_par_iter()
        .map(|trial| {
            let g = gen_gnp(n, d / n as f64, trial_seed(0xC5, trial)).unwrap();
            let c = count_motifs(&g);
            (2 * c.n_i[0] + c.n_i[1] + c.s3_pre) as f64 / n as f64
        })
        .collect();
    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
    let sd = (vals.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (vals.len() - 1) as f64).sqrt();
    let se = sd / (vals.len() as f64).sqrt();
    let want = 0.0200181;
    let z = (mean - want).abs() / se;
    let secs = start.elapsed().as_secs_f64();
    let pass = z <= 5.0 && secs < 600.0;
    line(
        "05 monte-carlo-expectation",
        pass,
        &format!("mean={mean:.7} want={want} se={se:.2e} z={z:.2}, {secs:.1}s"),
    );
    assert!(pass);
}

/// Criterion 6: local stabilisation, phi_k'(v) = phi(v) whenever
/// |T^{AB}(v)| <= k-1, exactly, over 10^3 graphs with n <= 200.
#[test]
fn criterion_06_estimator_stabilisation() {
    let start = std::time::Instant::now();
    let results: Vec<(u64, u64)> = (0..1000u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng_from_seed(trial_seed(0xC6, trial));
            let n = rng.random_range(20..=200);
            let d = *[0.5, 2.0, 6.0, 12.0, 16.0].get(trial as usize % 5).unwrap();
            let g = gen_gnp(n, (d / n as f64).min(1.0), rng.random()).unwrap();
            let part = strong_core(&g);
            let comps = ab_components(&g, &part);
            // global phi for vertices in small components only; the lemma
            // precondition |T| <= k-1 <= 3 never touches larger ones
            let mut hits = 0u64;
            let mut bad = 0u64;
            for comp in comps.iter().filter(|c| c.len() <= 3) {
                let cover = a_component(comp, false).unwrap();
                for &v in &comp.vertices {
                    for k in 2..=4usize {
                        if comp.len() as u64 <= (k - 1) as u64 {
                            let local = phi_k_prime(&g, v, k).unwrap();
                            if local != (cover.a_value, comp.len() as u64) {
                                bad += 1;
                            }
                            hits += 1;
                        }
                    }
                }
            }
            // core vertices stabilise to (0, 1)
            for v in 0..g.n() as Vertex {
                if part.in_c(v) {
                    if phi_k_prime(&g, v, 2).unwrap() != (0, 1) {
                        bad += 1;
                    }
                    hits += 1;
                    break; // one per graph keeps this cheap
                }
            }
            (hits, bad)
        })
        .collect();
    let hits: u64 = results.iter().map(|r| r.0).sum();
    let bad: u64 = results.iter().map(|r| r.1).sum();
    let secs = start.elapsed().as_secs_f64();
    let pass = bad == 0 && hits > 10_000 && secs < 300.0;
    line(
        "06 estimator-stabilisation",
        pass,
        &format!("{bad}/{hits} mismatches across 1000 graphs, {secs:.1}s"),
    );
    assert!(pass);
}

/// Criterion 7 as stated: n = 10^5, d = 6, k in {2, 3}:
/// |mu_k - mu'|/n <= e^{-0.1 k d} + 3e-3 on at least 95% of 100 seeds.
///
/// Red by construction: at d = 6 the strong 4-core of G(n, 6/n) is empty,
/// the whole graph is one non-tree component of 10^5 vertices, and mu'
/// is a capacity error on every seed (see the module decision to abort
/// rather than approximate the NP-hard general cover). The supplementary
/// test below runs the identical check at d = 12 where the core exists.
#[test]
fn criterion_07_estimator_error_trend() {
    let n = 100_000usize;
    let d = 6.0;
    let seeds = 100u64;
    let outcomes: Vec<[bool; 2]> = (0..seeds)
        .into_par_iter()
        .map(|trial| {
            let g = gen_gnp(n, d / n as f64, trial_seed(0xC7, trial)).unwrap();
            let mp = match mu_prime(&g) {
                Ok(mp) => mp,
                Err(Error::Capacity { .. }) => return [false, false],
                Err(e) => panic!("unexpected error {e}"),
            };
            let mut ok = [false, false];
            for (i, k) in [2usize, 3].into_iter().enumerate() {
                let bound = (-0.1 * k as f64 * d).exp() + 3e-3;
                if let Ok(rep) = mu_k_estimate(&g, k, d) {
                    ok[i] = (rep.mu_k - mp.mu_prime as f64).abs() / n as f64 <= bound;
                }
            }
            ok
        })
        .collect();
    let pass_k2 = outcomes.iter().filter(|o| o[0]).count();
    let pass_k3 = outcomes.iter().filter(|o| o[1]).count();
    let need = (0.95 * seeds as f64).ceil() as usize;
    let pass = pass_k2 >= need && pass_k3 >= need;
    line(
        "07 estimator-error-trend",
        pass,
        &format!(
            "k=2: {pass_k2}/{seeds} within bound, k=3: {pass_k3}/{seeds} (need {need}); \
             mu' is a capacity error on every seed because the strong 4-core of \
             G(10^5, 6/n) is empty (empirical core threshold d ~ 9.5), so the bound \
             is unattainable at the stated density"
        ),
    );
    assert!(pass, "criterion 7 is unattainable at d=6: mu' cannot be computed (see ledger)");
}

/// Criterion 8: process events. Three clauses:
/// (a) t_1* in [n^{2/3}/10, 10 n^{2/3}] for >= 95% of 20 seeds at each of
///     n = 10^4, 10^5, 10^6;
/// (b) at n = 10^4 the median t_1 within +-25% of 3.754e4;
/// (c) spider-count monotonicity after t^- reported.
///
/// Clause (b) is red by construction: t_i is defined (paper and spec
/// alike) as the minimum t > 10n with fewer than i spiders, and at
/// n = 10^4 the floor 10n = 10^5 already exceeds the spider extinction
/// time ~3.75e4 (the floor drops below the reference window only for
/// n >= ~1e25), so the literal t_1 is always 10n + 1. The unfloored
/// extinction diagnostic lands inside the stated window.
#[test]
fn criterion_08_process_events() {
    let start = std::time::Instant::now();
    // clause (a)
    let mut clause_a = true;
    for &n in &[10_000usize, 100_000, 1_000_000] {
        let win_lo = (n as f64).powf(2.0 / 3.0) / 10.0;
        let win_hi = (n as f64).powf(2.0 / 3.0) * 10.0;
        let spec = RunSpec {
            star_cap: 1,
            spider_cap: 0,
            t_max: Some((2.0 * win_hi) as u64),
            ..Default::default()
        };
        let in_window: usize = (0..20u64)
            .into_par_iter()
            .map(|trial| {
                let tr = run_process(n, trial_seed(0xC8, trial), &spec).unwrap();
                match tr.t_star.get(&1) {
                    Some(&t) => usize::from((t as f64) >= win_lo && (t as f64) <= win_hi),
                    None => 0,
                }
            })
            .sum();
        let ok = in_window >= 19;
        println!("  t1* window at n={n}: {in_window}/20 in [{win_lo:.0}, {win_hi:.0}]");
        clause_a &= ok;
    }
    // clauses (b) and (c) from full runs at n = 10^4
    let n = 10_000usize;
    let spec = RunSpec { star_cap: 1, spider_cap: 1, ..Default::default() };
    let traces: Vec<_> = (0..20u64)
        .into_par_iter()
        .map(|trial| run_process(n, trial_seed(0xC8F, trial), &spec).unwrap())
        .collect();
    let mut t1: Vec<u64> = traces.iter().filter_map(|t| t.t_spider.get(&1).copied()).collect();
    t1.sort_unstable();
    let median = t1.get(t1.len() / 2).copied().unwrap_or(0);
    let reference = 3.754e4;
    let clause_b = (median as f64) >= 0.75 * reference && (median as f64) <= 1.25 * reference;
    let mut unfloored: Vec<u64> =
        traces.iter().filter_map(|t| t.t_spider_unfloored.get(&1).copied()).collect();
    unfloored.sort_unstable();
    let unfloored_median = unfloored.get(unfloored.len() / 2).copied().unwrap_or(0);
    // clause (c): report
    let viol: u64 = traces.iter().map(|t| t.s3_violations_after_tminus).sum();
    let steps: u64 = traces.iter().map(|t| t.s3_steps_after_tminus).sum();
    println!(
        "  s3 monotonicity after t^-: {viol}/{steps} violating steps (rate {:.2e})",
        viol as f64 / steps.max(1) as f64
    );
    let secs = start.elapsed().as_secs_f64();
    let pass = clause_a && clause_b && secs < 1800.0;
    line(
        "08 process-events",
        pass,
        &format!(
            "t1* windows {}; floored median t1 = {median} vs reference {reference:.0} +-25% \
             (definitional floor 10n+1 = {} binds at every feasible n; unfloored extinction \
             median = {unfloored_median}, which is inside the window); {secs:.1}s",
            if clause_a { "ok" } else { "VIOLATED" },
            10 * n + 1,
        ),
    );
    assert!(
        pass,
        "criterion 8 median clause is unattainable under the literal t_i definition (see ledger)"
    );
}

/// Criterion 9: incremental motif counts equal from-scratch counts at
/// every checkpoint of 10^2 random processes with n = 10^3. Exact.
#[test]
fn criterion_09_incremental_motifs() {
    let start = std::time::Instant::now();
    let n = 1000usize;
    let checkpoints: Vec<u64> = vec![0, 50, 100, 250, 500, 1000, 2000, 4000, 8000];
    let bad: u64 = (0..100u64)
        .into_par_iter()
        .map(|trial| {
            let seed = trial_seed(0xC9, trial);
            let spec = RunSpec {
                checkpoints: checkpoints.clone(),
                mu_mode: MuMode::Off,
                star_cap: 0,
                spider_cap: 0,
                t_max: Some(8000),
            };
            let trace = run_process(n, seed, &spec).unwrap();
            let mut bad = 0u64;
            for r in &trace.records {
                let g = EdgeStream::prefix_graph(n, seed, r.t).unwrap();
                let c = count_motifs(&g);
                if (r.n0, r.n1, r.stars3, r.s3) != (c.n_i[0], c.n_i[1], c.stars3, c.s3) {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    let secs = start.elapsed().as_secs_f64();
    let pass = bad == 0;
    line("09 incremental-motifs", pass, &format!("{bad} checkpoint mismatches, {secs:.1}s"));
    assert!(pass);
}

/// Criterion 10 as stated: completion certificates at n = 800, d = 7 over
/// 50 seeds with heuristic budget 10^6: success rate >= 90%, and on every
/// success |F| = mu'(G) with all witnesses verifying.
///
/// Red by construction: the strong 4-core of G(800, 7/800) is empty on
/// every seed (the colouring cascade wipes the graph below d ~ 9.5; the
/// paper works at d >= 20), so the cover computation aborts with a
/// capacity error on the giant non-tree component and no certificate can
/// be built. The supplementary test runs the identical check at d = 12.
#[test]
fn criterion_10_completion_certificates() {
    let start = std::time::Instant::now();
    let n = 800usize;
    let d = 7.0;
    let outcomes: Vec<Result<bool, String>> = (0..50u64)
        .into_par_iter()
        .map(|trial| {
            let g = gen_gnp(n, d / n as f64, trial_seed(0xCA, trial)).unwrap();
            let cfg = BuildConfig { mode: EngineMode::Heuristic, budget: 1_000_000, seed: trial };
            match complete_graph(&g, &cfg) {
                Ok(cert) if cert.is_success() => {
                    let ok = verify_certificate(&g, &cert)
                        && cert.f_edges().len() as u64 == cert.mu_prime;
                    Ok(ok)
                }
                Ok(cert) => Err(format!("{:?}", cert.status)),
                Err(e) => Err(e.to_string()),
            }
        })
        .collect();
    let successes = outcomes.iter().filter(|o| matches!(o, Ok(true))).count();
    let broken = outcomes.iter().filter(|o| matches!(o, Ok(false))).count();
    let mut reasons: std::collections::BTreeMap<&str, usize> = Default::default();
    for o in &outcomes {
        if let Err(e) = o {
            let key = if e.contains("capacity") { "capacity error (empty strong core)" } else { "other" };
            *reasons.entry(key).or_default() += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let rate = successes as f64 / 50.0;
    let pass = rate >= 0.90 && broken == 0 && secs < 1200.0;
    line(
        "10 completion-certificates",
        pass,
        &format!(
            "success {successes}/50 ({:.0}%), invalid {broken}, failures: {reasons:?}; \
             the strong 4-core of G(800, 7/800) is empty on every seed, so the \
             construction cannot start at the stated density; {secs:.1}s",
            rate * 100.0
        ),
    );
    assert!(pass, "criterion 10 is unattainable at d=7: empty strong core (see ledger)");
}

/// Criterion 11: mu_hat >= mu on 200 random graphs with n <= 7. Exact.
#[test]
fn criterion_11_pancyclic_dominates() {
    let start = std::time::Instant::now();
    let bad: u64 = (0..200u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = rng_from_seed(trial_seed(0xCB, trial));
            let n = rng.random_range(3..=7usize);
            let p = rng.random_range(0.2..0.8);
            let g = gen_gnp(n, p, rng.random()).unwrap();
            let mu = oracle::brute_mu(&g).unwrap();
            let mu_hat = oracle::brute_mu_hat(&g).unwrap();
            u64::from(mu_hat < mu)
        })
        .sum();
    let secs = start.elapsed().as_secs_f64();
    let pass = bad == 0;
    line("11 pancyclic-dominates", pass, &format!("{bad}/200 violations, {secs:.1}s"));
    assert!(pass);
}

/// Supplementary: criterion 10's exact check at d = 12, where the strong
/// 4-core spans the graph. Demonstrates the completion construction and
/// engine meet the stated tolerances when the structural preconditions
/// hold.
#[test]
fn supplementary_completion_d12() {
    let start = std::time::Instant::now();
    let n = 800usize;
    let d = 12.0;
    let outcomes: Vec<Result<bool, String>> = (0..50u64)
        .into_par_iter()
        .map(|trial| {
            let g = gen_gnp(n, d / n as f64, trial_seed(0xD0, trial)).unwrap();
            let cfg = BuildConfig { mode: EngineMode::Heuristic, budget: 1_000_000, seed: trial };
            match complete_graph(&g, &cfg) {
                Ok(cert) if cert.is_success() => Ok(verify_certificate(&g, &cert)
                    && cert.f_edges().len() as u64 == cert.mu_prime),
                Ok(cert) => Err(format!("{:?}", cert.status)),
                Err(e) => Err(e.to_string()),
            }
        })
        .collect();
    let successes = outcomes.iter().filter(|o| matches!(o, Ok(true))).count();
    let broken = outcomes.iter().filter(|o| matches!(o, Ok(false))).count();
    let failures: Vec<&Result<bool, String>> =
        outcomes.iter().filter(|o| o.is_err()).collect();
    let secs = start.elapsed().as_secs_f64();
    let rate = successes as f64 / 50.0;
    let pass = rate >= 0.90 && broken == 0 && secs < 1200.0;
    line(
        "supplementary completion-d12",
        pass,
        &format!(
            "success {successes}/50 ({:.0}%), invalid {broken}, failures {failures:?}, {secs:.1}s",
            rate * 100.0
        ),
    );
    assert!(pass);
}

/// Supplementary: criterion 7's exact check at n = 10^4, d = 12 (strong
/// core present). Same tolerance shape |mu_k - mu'|/n <= e^{-0.1kd} + 3e-3.
#[test]
fn supplementary_estimator_d12() {
    let start = std::time::Instant::now();
    let n = 10_000usize;
    let d = 12.0;
    let seeds = 10u64;
    let outcomes: Vec<[bool; 2]> = (0..seeds)
        .into_par_iter()
        .map(|trial| {
            let g = gen_gnp(n, d / n as f64, trial_seed(0xD1, trial)).unwrap();
            let mp = mu_prime(&g).expect("strong core spans at d=12");
            let mut ok = [false, false];
            for (i, k) in [2usize, 3].into_iter().enumerate() {
                let bound = (-0.1 * k as f64 * d).exp() + 3e-3;
                let rep = mu_k_estimate(&g, k, d).unwrap();
                ok[i] = (rep.mu_k - mp.mu_prime as f64).abs() / n as f64 <= bound;
            }
            ok
        })
        .collect();
    let pass_k2 = outcomes.iter().filter(|o| o[0]).count() as u64;
    let pass_k3 = outcomes.iter().filter(|o| o[1]).count() as u64;
    let need = (0.95 * seeds as f64).ceil() as u64;
    let secs = start.elapsed().as_secs_f64();
    let pass = pass_k2 >= need && pass_k3 >= need;
    line(
        "supplementary estimator-d12",
        pass,
        &format!("k=2: {pass_k2}/{seeds}, k=3: {pass_k3}/{seeds} within bound, {secs:.1}s"),
    );
    assert!(pass);
}

/// Supplementary: the late-regime process equality mu' = n0 +
/// ceil((n1+s3)/2) at computable checkpoints, the early-regime equality
/// with the trivial bound, and a positive lower-bound gap in the middle
/// regime.
#[test]
fn supplementary_process_equalities() {
    let n = 10_000usize;
    // two early-regime checkpoints below n^{2/3}/10 ~ 46, two middle-regime
    // ones above 10 n^{2/3} ~ 4642, and late-regime checkpoints at
    // densities where the strong core is present
    let mut checkpoints: Vec<u64> = vec![10, 46, 5_000, 10_000];
    for d in [12.0f64, 14.0, 16.0] {
        checkpoints.push((d * n as f64 / 2.0) as u64);
    }
    let spec = RunSpec {
        checkpoints,
        mu_mode: MuMode::AtCheckpoints,
        star_cap: 0,
        spider_cap: 0,
        t_max: Some(80_000),
    };
    let summaries: Vec<_> = (0..10u64)
        .into_par_iter()
        .map(|trial| {
            let tr = run_process(n, trial_seed(0xD2, trial), &spec).unwrap();
            detect_equalities(&tr)
        })
        .collect();
    let early_checked: u64 = summaries.iter().map(|s| s.early_checked).sum();
    let early_equal: u64 = summaries.iter().map(|s| s.early_equal).sum();
    let late_checked: u64 = summaries.iter().map(|s| s.late_checked).sum();
    let late_equal: u64 = summaries.iter().map(|s| s.late_equal).sum();
    let middle_checked: u64 = summaries.iter().map(|s| s.middle_checked).sum();
    let middle_gap: u64 = summaries.iter().map(|s| s.middle_gap_positive).sum();
    let anomalies: u64 = summaries.iter().map(|s| s.anomalies_lb_gt_mu).sum();
    let pass = early_checked > 0
        && early_equal == early_checked
        && late_checked > 0
        && late_equal == late_checked
        && middle_checked > 0
        && middle_gap == middle_checked
        && anomalies == 0;
    line(
        "supplementary process-equalities",
        pass,
        &format!(
            "early {early_equal}/{early_checked}, middle gap positive \
             {middle_gap}/{middle_checked}, late {late_equal}/{late_checked}, \
             lb>mu' anomalies {anomalies}"
        ),
    );
    assert!(pass);
}
