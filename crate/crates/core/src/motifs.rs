//! Degree classes, 3-stars, 3-prespiders and 3-spiders, with incremental
//! maintenance under single-edge insertion.
//!
//! Conventions. `stars3` counts `K_{1,3}` copies, `sum_v C(d(v), 3)`.
//! A 3-prespider is a pair (centre `w`, unordered triple of neighbours of
//! `w` of degree at most 2); degrees are degrees in the whole graph. A
//! 3-spider is a triple of degree-exactly-2 vertices sharing a neighbour
//! `w`, whose second neighbours are distinct from each other, from `w` and
//! from the triple, so the six incident edges span a tree on 7 vertices.

use serde::Serialize;

use crate::error::Error;
use crate::graph::{Graph, Vertex};

/// Exact motif counts of one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MotifCounts {
    /// Number of vertices of degree `i`, for `i` in `0..=3`.
    pub n_i: [u64; 4],
    /// `K_{1,3}` copies.
    pub stars3: u64,
    /// 3-prespiders as (centre, triple) pairs.
    pub s3_pre: u64,
    /// 3-spiders.
    pub s3: u64,
}

impl MotifCounts {
    pub fn n0(&self) -> u64 {
        self.n_i[0]
    }

    pub fn n1(&self) -> u64 {
        self.n_i[1]
    }

    /// The process lower bound `n0 + ceil((n1 + s3)/2)`.
    pub fn lower_bound(&self) -> u64 {
        self.n_i[0] + (self.n_i[1] + self.s3).div_ceil(2)
    }
}

fn choose3(d: u64) -> u64 {
    if d < 3 {
        0
    } else {
        d * (d - 1) * (d - 2) / 6
    }
}

/// Number of valid spider triples centred at `w`.
fn spiders_at(g: &Graph, w: Vertex) -> u64 {
    // legs: degree-2 neighbours of w with their second endpoint
    let mut legs: Vec<(Vertex, Vertex)> = Vec::new();
    for &a in g.neighbors(w) {
        if g.degree(a) == 2 {
            let &b = g.neighbors(a).iter().find(|&&x| x != w).expect("degree 2");
            legs.push((a, b));
        }
    }
    if legs.len() < 3 {
        return 0;
    }
    let mut count = 0u64;
    for i in 0..legs.len() {
        for j in (i + 1)..legs.len() {
            for k in (j + 1)..legs.len() {
                let (a1, b1) = legs[i];
                let (a2, b2) = legs[j];
                let (a3, b3) = legs[k];
                if b1 == b2 || b1 == b3 || b2 == b3 {
                    continue;
                }
                let tri = [a1, a2, a3];
                if tri.contains(&b1) || tri.contains(&b2) || tri.contains(&b3) {
                    continue;
                }
                count += 1;
            }
        }
    }
    count
}

fn low_neighbors(g: &Graph, w: Vertex) -> u64 {
    g.neighbors(w).iter().filter(|&&x| g.degree(x) <= 2).count() as u64
}

/// Exact counts by a full pass over the graph.
pub fn count_motifs(g: &Graph) -> MotifCounts {
    let mut n_i = [0u64; 4];
    let mut stars3 = 0u64;
    let mut s3_pre = 0u64;
    let mut s3 = 0u64;
    for v in 0..g.n() as Vertex {
        let d = g.degree(v) as u64;
        if d <= 3 {
            n_i[d as usize] += 1;
        }
        stars3 += choose3(d);
        s3_pre += choose3(low_neighbors(g, v));
        s3 += spiders_at(g, v);
    }
    MotifCounts { n_i, stars3, s3_pre, s3 }
}

/// Per-vertex normalisation of `E(2 n0 + n1 + s3')` in `G(n, d/n)`:
/// `2 e^{-d} + d e^{-d} + ((d^3 + 3d^4 + 3d^5 + d^6)/6) e^{-3d}`.
pub fn expected_lb_closed_form(d: f64) -> f64 {
    let prespider = (d.powi(3) + 3.0 * d.powi(4) + 3.0 * d.powi(5) + d.powi(6)) / 6.0;
    2.0 * (-d).exp() + d * (-d).exp() + prespider * (-3.0 * d).exp()
}

/// Motif counts maintained under edge insertion, for the process simulator.
///
/// Each insertion touches only the close neighbourhoods of the endpoints:
/// the degree histogram and star count are O(1) deltas, prespiders update
/// through per-centre low-degree-neighbour counters, and spider counts are
/// recomputed for the affected centres (the endpoints and their
/// neighbours).
#[derive(Debug, Clone)]
pub struct IncrementalMotifs {
    low_count: Vec<u32>,
    spider_at: Vec<u64>,
    counts: MotifCounts,
}

impl IncrementalMotifs {
    /// State for the edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        IncrementalMotifs {
            low_count: vec![0; n],
            spider_at: vec![0; n],
            counts: MotifCounts { n_i: [n as u64, 0, 0, 0], stars3: 0, s3_pre: 0, s3: 0 },
        }
    }

    /// Rebuilds the state from an arbitrary graph.
    pub fn from_graph(g: &Graph) -> Self {
        let low_count: Vec<u32> = (0..g.n() as Vertex).map(|v| low_neighbors(g, v) as u32).collect();
        let spider_at: Vec<u64> = (0..g.n() as Vertex).map(|v| spiders_at(g, v)).collect();
        IncrementalMotifs { low_count, spider_at, counts: count_motifs(g) }
    }

    pub fn counts(&self) -> &MotifCounts {
        &self.counts
    }

    /// Inserts `(u, v)` into `g` and brings the counts to `count_motifs` of
    /// the grown graph. Rejects duplicate edges.
    pub fn insert_edge_update(&mut self, g: &mut Graph, u: Vertex, v: Vertex) -> Result<(), Error> {
        if u == v {
            return Err(Error::Contract(format!("self-loop at {u}")));
        }
        if g.has_edge(u, v) {
            return Err(Error::Contract(format!("edge ({u},{v}) already present")));
        }
        let du = g.degree(u) as u64;
        let dv = g.degree(v) as u64;
        g.insert_edge(u, v);

        for (_, dx) in [(u, du), (v, dv)] {
            if dx <= 3 {
                self.counts.n_i[dx as usize] -= 1;
            }
            if dx < 3 {
                self.counts.n_i[(dx + 1) as usize] += 1;
            }
            self.counts.stars3 += choose3(dx + 1) - choose3(dx);
        }

        // prespiders: x's low status may end (degree crossing 2 -> 3), and
        // each endpoint joins the other's neighbourhood
        for (x, y, dx) in [(u, v, du), (v, u, dv)] {
            let was_low = dx <= 2;
            let is_low = dx < 2;
            if was_low && !is_low {
                for &w in g.neighbors(x) {
                    if w != y {
                        self.bump_low(w, -1);
                    }
                }
            }
            if is_low {
                self.bump_low(y, 1);
            }
        }

        // spiders: recompute every centre whose count can have changed
        let mut affected: Vec<Vertex> = Vec::with_capacity(g.degree(u) + g.degree(v) + 2);
        affected.push(u);
        affected.push(v);
        affected.extend_from_slice(g.neighbors(u));
        affected.extend_from_slice(g.neighbors(v));
        affected.sort_unstable();
        affected.dedup();
        for w in affected {
            let fresh = spiders_at(g, w);
            let old = std::mem::replace(&mut self.spider_at[w as usize], fresh);
            self.counts.s3 = self.counts.s3 + fresh - old;
        }
        Ok(())
    }

    fn bump_low(&mut self, w: Vertex, delta: i64) {
        let c = &mut self.low_count[w as usize];
        let old = u64::from(*c);
        *c = (*c as i64 + delta) as u32;
        self.counts.s3_pre = self.counts.s3_pre + choose3(u64::from(*c)) - choose3(old);
    }
}
