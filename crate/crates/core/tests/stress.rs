//! Long-running robustness sweep of the completion builder across the
//! marginal density band where the strong core is just emerging. Run with
//! `cargo test -p hamu --test stress -- --ignored --nocapture`.

use hamu::completion::{complete_graph, verify_certificate, BuildConfig, CompletionStatus, EngineMode};
use hamu::graph::{gen_gnp, trial_seed};
use rayon::prelude::*;

#[test]
#[ignore = "several-minute sweep; all successes must verify"]
fn completion_sweep_marginal_densities() {
    for &n in &[300usize, 500, 800] {
        for &d10 in &[100u32, 105, 110, 120, 140] {
            let d = d10 as f64 / 10.0;
            let statuses: Vec<&'static str> = (0..20u64)
                .into_par_iter()
                .map(|trial| {
                    let g = gen_gnp(n, d / n as f64, trial_seed(0xEE00 + n as u64, trial)).unwrap();
                    let cfg =
                        BuildConfig { mode: EngineMode::Heuristic, budget: 400_000, seed: trial };
                    match complete_graph(&g, &cfg) {
                        Ok(cert) => match cert.status {
                            CompletionStatus::Success => {
                                assert!(
                                    verify_certificate(&g, &cert),
                                    "invalid certificate n={n} d={d} trial={trial}"
                                );
                                assert_eq!(cert.f_edges().len() as u64, cert.mu_prime);
                                "ok"
                            }
                            CompletionStatus::EngineFailure => "engine",
                            CompletionStatus::StructuralFailure(_) => "structural",
                        },
                        Err(_) => "capacity",
                    }
                })
                .collect();
            let ok = statuses.iter().filter(|s| **s == "ok").count();
            println!("n={n} d={d}: ok {ok}/20, rest {statuses:?}");
        }
    }
}
