//! The random graph process: single-pass edge insertion with incremental
//! motif counts, event-time detection and mu' checkpoints.
//!
//! Event times follow the convention that `t_i` is the minimum `t`
//! strictly greater than `10n` (that is, `t >= 10n + 1`) with fewer than
//! `i` 3-spiders, and `t_i*` is the minimum `t` with at least `i` 3-star
//! copies. Star counts only grow, so `t_i*` is recorded on first hit;
//! spider counts fluctuate, so `t_i` is recorded per index the first time
//! the count dips below it after `10n`.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::Error;
use crate::graph::{n_choose_2, EdgeStream, Graph, Vertex};
use crate::motifs::{IncrementalMotifs, MotifCounts};
use crate::path_cover;
use crate::strong_core;

/// Largest spider/star index whose event times are tracked.
pub const SPIDER_CAP: u32 = 64;

/// Whether checkpoints recompute mu'.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuMode {
    Off,
    AtCheckpoints,
}

/// One checkpoint record.
#[derive(Debug, Clone, Serialize)]
pub struct ProcessRecord {
    pub t: u64,
    pub n0: u64,
    pub n1: u64,
    pub stars3: u64,
    pub s3: u64,
    /// `mu'(G_t)`; absent when mu recomputation is off or the component
    /// structure exceeds the exact caps.
    pub mu_prime: Option<u64>,
    /// `n0 + ceil((n1 + s3)/2)`.
    pub lb: u64,
    /// `mu' == lb`, when mu' is available.
    pub equal: Option<bool>,
}

/// Full trace of one process run.
#[derive(Debug, Clone, Serialize)]
pub struct ProcessTrace {
    pub n: usize,
    pub seed: u64,
    pub records: Vec<ProcessRecord>,
    /// `i -> t_i*`: first time with at least `i` 3-stars.
    pub t_star: BTreeMap<u32, u64>,
    /// `i -> t_i`: first time after `10n` with fewer than `i` 3-spiders.
    pub t_spider: BTreeMap<u32, u64>,
    /// Diagnostic variant of `t_i` without the `10n` floor: the first time
    /// the spider count drops below `i` after having reached `i`. At desk
    /// scale the spider population is extinct well before `10n`, so the
    /// floored `t_i` collapses to `10n + 1` while this variant tracks the
    /// actual extinction.
    pub t_spider_unfloored: BTreeMap<u32, u64>,
    /// First time the trivial bound admits a Hamilton path:
    /// `n0 = 0` and `n1 <= 2`.
    pub hitting_n1_le_2: Option<u64>,
    /// Steps after `t_minus` where the spider count increased.
    pub s3_violations_after_tminus: u64,
    pub s3_steps_after_tminus: u64,
    pub t_minus: u64,
    pub t_plus: u64,
    pub final_t: u64,
}

/// The slowly growing function used in the process time boundaries,
/// `max(1, ln ln ln n)`.
pub fn g_slow(n: usize) -> f64 {
    let x = (n as f64).ln().ln().ln();
    if x.is_nan() || x < 1.0 {
        1.0
    } else {
        x
    }
}

/// Reference location of the spider-extinction times:
/// `n (ln n / 6 + ln ln n)`.
pub fn t_reference(n: usize) -> f64 {
    let nf = n as f64;
    nf * (nf.ln() / 6.0 + nf.ln().ln())
}

/// `t^- = n (ln n / 6 + ln ln n - g)`.
pub fn t_minus(n: usize) -> u64 {
    let nf = n as f64;
    (nf * (nf.ln() / 6.0 + nf.ln().ln() - g_slow(n))).max(0.0) as u64
}

/// `t^+ = n (ln n / 6 + ln ln n + g)`.
pub fn t_plus(n: usize) -> u64 {
    let nf = n as f64;
    (nf * (nf.ln() / 6.0 + nf.ln().ln() + g_slow(n))) as u64
}

/// Run configuration.
#[derive(Debug, Clone)]
pub struct RunSpec {
    /// Sorted checkpoint times within `[0, C(n,2)]`.
    pub checkpoints: Vec<u64>,
    pub mu_mode: MuMode,
    /// Track `t_i*` for `i <= star_cap`.
    pub star_cap: u32,
    /// Track `t_i` for `i <= spider_cap` (requires running past `10n`
    /// until the spider count drains).
    pub spider_cap: u32,
    /// Hard stop; `None` runs until all tracked events and checkpoints are
    /// done (or the stream is exhausted).
    pub t_max: Option<u64>,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            checkpoints: Vec::new(),
            mu_mode: MuMode::Off,
            star_cap: SPIDER_CAP,
            spider_cap: SPIDER_CAP,
            t_max: None,
        }
    }
}

/// Runs the random graph process for `(n, seed)`.
pub fn run_process(n: usize, seed: u64, spec: &RunSpec) -> Result<ProcessTrace, Error> {
    let stream = EdgeStream::new(n, seed)?;
    run_with_edges(n, seed, stream, spec)
}

/// Same, over an explicit edge sequence (the stream abstracted for tests).
pub fn run_with_edges<I>(n: usize, seed: u64, edges: I, spec: &RunSpec) -> Result<ProcessTrace, Error>
where
    I: IntoIterator<Item = (Vertex, Vertex)>,
{
    let mut checkpoints = spec.checkpoints.clone();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let total = n_choose_2(n);
    if checkpoints.last().is_some_and(|&c| c > total) {
        return Err(Error::Parameter(format!(
            "checkpoint beyond C({n},2) = {total}"
        )));
    }

    let mut g = Graph::empty(n);
    let mut inc = IncrementalMotifs::new(n);
    let mut trace = ProcessTrace {
        n,
        seed,
        records: Vec::with_capacity(checkpoints.len()),
        t_star: BTreeMap::new(),
        t_spider: BTreeMap::new(),
        t_spider_unfloored: BTreeMap::new(),
        hitting_n1_le_2: None,
        s3_violations_after_tminus: 0,
        s3_steps_after_tminus: 0,
        t_minus: t_minus(n),
        t_plus: t_plus(n),
        final_t: 0,
    };

    let mut next_star: u32 = 1;
    let mut spider_pending: u32 = spec.spider_cap; // largest unrecorded index
    debug_assert!(spec.spider_cap <= 64, "spider cap bounded by the pending bitmask");
    // bit i-1 set = unfloored t_i still unrecorded; eligibility requires the
    // count to have reached i first
    let mut unfloored_pending: u64 = if spec.spider_cap == 64 {
        u64::MAX
    } else {
        (1u64 << spec.spider_cap) - 1
    };
    let mut high_water: u64 = 0;
    let ten_n = 10 * n as u64;
    let mut cp_iter = checkpoints.into_iter().peekable();
    let mut t: u64 = 0;

    let record_checkpoint =
        |t: u64, g: &Graph, counts: &MotifCounts, trace: &mut ProcessTrace| -> Result<(), Error> {
            let mu_prime = match spec.mu_mode {
                MuMode::Off => None,
                MuMode::AtCheckpoints => {
                    let part = strong_core::strong_core(g);
                    match path_cover::mu_prime_of(g, &part) {
                        Ok(mp) => Some(mp.mu_prime),
                        Err(Error::Capacity { .. }) => None,
                        Err(e) => return Err(e),
                    }
                }
            };
            let lb = counts.lower_bound();
            trace.records.push(ProcessRecord {
                t,
                n0: counts.n0(),
                n1: counts.n1(),
                stars3: counts.stars3,
                s3: counts.s3,
                mu_prime,
                lb,
                equal: mu_prime.map(|m| m == lb),
            });
            Ok(())
        };

    if cp_iter.peek() == Some(&0) {
        cp_iter.next();
        record_checkpoint(0, &g, inc.counts(), &mut trace)?;
    }

    let mut edges = edges.into_iter();
    loop {
        let events_done = next_star > spec.star_cap && spider_pending == 0;
        let checkpoints_done = cp_iter.peek().is_none();
        if events_done && checkpoints_done {
            break;
        }
        if spec.t_max.is_some_and(|m| t >= m) {
            break;
        }
        let Some((u, v)) = edges.next() else { break };
        let prev_s3 = inc.counts().s3;
        inc.insert_edge_update(&mut g, u, v)?;
        t += 1;
        let counts = inc.counts();

        while next_star <= spec.star_cap && counts.stars3 >= u64::from(next_star) {
            trace.t_star.insert(next_star, t);
            next_star += 1;
        }
        if t > ten_n {
            while spider_pending >= 1 && counts.s3 < u64::from(spider_pending) {
                trace.t_spider.insert(spider_pending, t);
                spider_pending -= 1;
            }
        }
        high_water = high_water.max(counts.s3);
        let hi = high_water.min(u64::from(spec.spider_cap));
        if counts.s3 < hi {
            // bits for indices in (s3, hi]
            let lo_mask = if counts.s3 >= 64 { u64::MAX } else { (1u64 << counts.s3) - 1 };
            let hi_mask = if hi >= 64 { u64::MAX } else { (1u64 << hi) - 1 };
            let mut to_record = unfloored_pending & hi_mask & !lo_mask;
            unfloored_pending &= !to_record;
            while to_record != 0 {
                let i = to_record.trailing_zeros() + 1;
                trace.t_spider_unfloored.insert(i, t);
                to_record &= to_record - 1;
            }
        }
        if t > trace.t_minus {
            trace.s3_steps_after_tminus += 1;
            if counts.s3 > prev_s3 {
                trace.s3_violations_after_tminus += 1;
            }
        }
        if trace.hitting_n1_le_2.is_none() && counts.n0() == 0 && counts.n1() <= 2 {
            trace.hitting_n1_le_2 = Some(t);
        }
        if cp_iter.peek() == Some(&t) {
            cp_iter.next();
            record_checkpoint(t, &g, counts, &mut trace)?;
        }
    }
    trace.final_t = t;
    Ok(trace)
}

impl ProcessTrace {
    /// Checkpoint records as delimiter-separated values with the stable
    /// header `t,n0,n1,stars3,s3,mu_prime,lb,equal`.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "t,n0,n1,stars3,s3,mu_prime,lb,equal")?;
        for r in &self.records {
            let mu = r.mu_prime.map_or(String::new(), |x| x.to_string());
            let eq = r.equal.map_or(String::new(), |x| u8::from(x).to_string());
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                r.t, r.n0, r.n1, r.stars3, r.s3, mu, r.lb, eq
            )?;
        }
        Ok(())
    }

    /// Event times as a key-value document, deterministic order.
    pub fn write_events<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "n={}", self.n)?;
        writeln!(w, "seed={}", self.seed)?;
        writeln!(w, "final_t={}", self.final_t)?;
        writeln!(w, "t_minus={}", self.t_minus)?;
        writeln!(w, "t_plus={}", self.t_plus)?;
        for (i, t) in &self.t_star {
            writeln!(w, "t_star[{i}]={t}")?;
        }
        for (i, t) in &self.t_spider {
            writeln!(w, "t_spider[{i}]={t}")?;
        }
        for (i, t) in &self.t_spider_unfloored {
            writeln!(w, "t_spider_unfloored[{i}]={t}")?;
        }
        if let Some(t) = self.hitting_n1_le_2 {
            writeln!(w, "hitting_n1_le_2={t}")?;
        }
        writeln!(
            w,
            "s3_violations_after_tminus={}/{}",
            self.s3_violations_after_tminus, self.s3_steps_after_tminus
        )?;
        Ok(())
    }
}

/// Per-regime tallies of the checkpoint equalities plus the spider
/// monotonicity report.
#[derive(Debug, Clone, Default, Serialize)]
pub struct EqualitySummary {
    /// `t <= n^{2/3}/10`: mu' should equal `n0 + ceil(n1/2)`.
    pub early_checked: u64,
    pub early_equal: u64,
    /// `t >= t^-`: mu' should equal `n0 + ceil((n1+s3)/2)`.
    pub late_checked: u64,
    pub late_equal: u64,
    /// `10 n^{2/3} <= t <= t^-`: the lower-bound gap should be positive.
    pub middle_checked: u64,
    pub middle_gap_positive: u64,
    pub middle_mean_gap: f64,
    /// Checkpoints where mu' was requested but not computable.
    pub mu_unavailable: u64,
    /// Checkpoints where mu' < lb; possible only when spiders share
    /// vertices, which dies out in the late regime.
    pub anomalies_lb_gt_mu: u64,
    pub s3_violations_after_tminus: u64,
    pub s3_steps_after_tminus: u64,
}

/// Classifies each checkpoint of a trace into the theorem regimes and
/// tallies the equalities, with `s3` standing in for the spider index.
pub fn detect_equalities(trace: &ProcessTrace) -> EqualitySummary {
    let n = trace.n as f64;
    let window = 10.0;
    let early_end = n.powf(2.0 / 3.0) / window;
    let middle_start = n.powf(2.0 / 3.0) * window;
    let mut s = EqualitySummary {
        s3_violations_after_tminus: trace.s3_violations_after_tminus,
        s3_steps_after_tminus: trace.s3_steps_after_tminus,
        ..Default::default()
    };
    let mut gap_sum = 0.0;
    for r in &trace.records {
        let trivial = r.n0 + r.n1.div_ceil(2);
        let tf = r.t as f64;
        if r.mu_prime.is_none() {
            s.mu_unavailable += 1;
        }
        if let Some(mu) = r.mu_prime {
            if mu < r.lb {
                s.anomalies_lb_gt_mu += 1;
            }
        }
        if tf <= early_end {
            if let Some(mu) = r.mu_prime {
                s.early_checked += 1;
                if mu == trivial {
                    s.early_equal += 1;
                }
            }
        } else if tf >= middle_start && r.t <= trace.t_minus {
            s.middle_checked += 1;
            let gap = r.lb - trivial;
            gap_sum += gap as f64;
            if gap > 0 {
                s.middle_gap_positive += 1;
            }
        } else if r.t >= trace.t_minus {
            if let Some(mu) = r.mu_prime {
                s.late_checked += 1;
                if mu == r.lb {
                    s.late_equal += 1;
                }
            }
        }
    }
    if s.middle_checked > 0 {
        s.middle_mean_gap = gap_sum / s.middle_checked as f64;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeStream;
    use crate::motifs::count_motifs;

    #[test]
    fn forced_first_star() {
        // first three edges share vertex 0: t_1* = 3
        let edges = vec![(0u32, 1u32), (0, 2), (0, 3), (1, 2), (3, 4)];
        let spec = RunSpec { star_cap: 1, spider_cap: 0, t_max: Some(5), ..Default::default() };
        let trace = run_with_edges(6, 0, edges, &spec).unwrap();
        assert_eq!(trace.t_star.get(&1), Some(&3));
    }

    #[test]
    fn complete_graph_endpoint() {
        let n = 9;
        let spec = RunSpec {
            checkpoints: vec![n_choose_2(n)],
            mu_mode: MuMode::AtCheckpoints,
            star_cap: 0,
            spider_cap: 0,
            t_max: Some(n_choose_2(n)),
        };
        let trace = run_process(n, 3, &spec).unwrap();
        let r = trace.records.last().unwrap();
        assert_eq!((r.n0, r.n1, r.s3, r.lb), (0, 0, 0, 0));
        assert_eq!(r.mu_prime, Some(0));
        assert_eq!(r.equal, Some(true));
    }

    #[test]
    fn deterministic_per_seed() {
        let spec = RunSpec { star_cap: 4, spider_cap: 2, ..Default::default() };
        let a = run_process(200, 77, &spec).unwrap();
        let b = run_process(200, 77, &spec).unwrap();
        assert_eq!(a.t_star, b.t_star);
        assert_eq!(a.t_spider, b.t_spider);
        assert_eq!(a.final_t, b.final_t);
    }

    #[test]
    fn spider_times_are_after_10n_and_monotone() {
        for seed in 0..5u64 {
            let spec = RunSpec { star_cap: 0, spider_cap: 8, ..Default::default() };
            let trace = run_process(400, seed, &spec).unwrap();
            let ten_n = 10 * 400u64;
            let mut prev: Option<u64> = None;
            // t_i nonincreasing in i: larger i recorded earlier
            for i in 1..=8u32 {
                let t = trace.t_spider[&i];
                assert!(t > ten_n, "t_{i} = {t} not after 10n");
                if let Some(p) = prev {
                    assert!(t >= p, "t_i must be nonincreasing in i");
                }
                prev = Some(t);
            }
        }
    }

    #[test]
    fn incremental_counts_match_scratch_at_checkpoints() {
        let n = 150;
        let checkpoints: Vec<u64> = vec![0, 10, 75, 150, 300, 600, 900];
        let spec = RunSpec {
            checkpoints: checkpoints.clone(),
            mu_mode: MuMode::Off,
            star_cap: 0,
            spider_cap: 0,
            t_max: Some(900),
        };
        for seed in 0..10u64 {
            let trace = run_process(n, seed, &spec).unwrap();
            assert_eq!(trace.records.len(), checkpoints.len());
            for r in &trace.records {
                let g = EdgeStream::prefix_graph(n, seed, r.t).unwrap();
                let c = count_motifs(&g);
                assert_eq!((r.n0, r.n1), (c.n_i[0], c.n_i[1]));
                assert_eq!(r.stars3, c.stars3);
                assert_eq!(r.s3, c.s3);
            }
        }
    }

    #[test]
    fn csv_and_events_are_stable() {
        let spec = RunSpec {
            checkpoints: vec![0, 50, 200],
            mu_mode: MuMode::AtCheckpoints,
            star_cap: 2,
            spider_cap: 0,
            t_max: Some(200),
        };
        let trace = run_process(60, 5, &spec).unwrap();
        let mut csv = Vec::new();
        trace.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("t,n0,n1,stars3,s3,mu_prime,lb,equal\n"));
        assert_eq!(text.lines().count(), 1 + trace.records.len());
        let mut ev = Vec::new();
        trace.write_events(&mut ev).unwrap();
        assert!(String::from_utf8(ev).unwrap().contains("t_minus="));
    }

    #[test]
    fn equality_summary_regimes() {
        // synthetic trace: early checkpoint equal, late checkpoint equal,
        // middle gap positive
        let trace = ProcessTrace {
            n: 1000,
            seed: 0,
            records: vec![
                ProcessRecord { t: 5, n0: 900, n1: 80, stars3: 0, s3: 0, mu_prime: Some(940), lb: 940, equal: Some(true) },
                ProcessRecord { t: 2000, n0: 50, n1: 300, stars3: 40, s3: 12, mu_prime: None, lb: 50 + 156, equal: None },
                ProcessRecord { t: 4000, n0: 0, n1: 10, stars3: 900, s3: 3, mu_prime: Some(7), lb: 7, equal: Some(true) },
            ],
            t_star: BTreeMap::new(),
            t_spider: BTreeMap::new(),
            t_spider_unfloored: BTreeMap::new(),
            hitting_n1_le_2: None,
            s3_violations_after_tminus: 0,
            s3_steps_after_tminus: 100,
            t_minus: 3000,
            t_plus: 5000,
            final_t: 4000,
        };
        let s = detect_equalities(&trace);
        assert_eq!((s.early_checked, s.early_equal), (1, 1));
        assert_eq!((s.middle_checked, s.middle_gap_positive), (1, 1));
        assert_eq!((s.late_checked, s.late_equal), (1, 1));
        assert_eq!(s.mu_unavailable, 1);
    }
}
