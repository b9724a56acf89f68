//! Radius-`k` local core partitions, the `mu_k` estimator and the
//! closed-form density approximations.
//!
//! `C(v,k)` is the maximal `S` inside `N^{<k}(v)` such that every vertex of
//! `S` and every `N^{<k}`-neighbour of `S` has at least 4 neighbours in
//! `S ∪ N^k(v)`; it is computed by the strong-core colouring restricted to
//! the ball, with the boundary sphere pinned black. `phi_k'(v)` is then 0
//! if `v` lands in `C(v,k)` and otherwise `a(T)/|T|` for the component `T`
//! of `v` in the local `A ∪ B` graph, and `phi_k` zeroes vertices whose
//! ball exceeds the size threshold `2 d^k e^{kd}`.

#![allow(clippy::needless_range_loop)]

use rayon::prelude::*;

use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::path_cover;
use crate::strong_core::ABComponent;

/// Local core partition around one vertex.
#[derive(Debug, Clone)]
pub struct LocalCore {
    pub v: Vertex,
    pub k: usize,
    /// The local core `C(v,k)`, sorted.
    pub c_vk: Vec<Vertex>,
    /// Local border: non-core ball interior adjacent to the core.
    pub b_vk: Vec<Vertex>,
    /// The rest of the ball interior.
    pub a_vk: Vec<Vertex>,
    /// `|N^{<=k}(v)|`.
    pub ball_size: usize,
    /// `T^{AB}(v,k)`, the component of `v` in the local `A ∪ B` graph;
    /// `None` iff `v` is in the local core.
    pub component: Option<ABComponent>,
}

/// Estimator output for one graph.
#[derive(Debug, Clone)]
pub struct EstimatorReport {
    pub k: usize,
    pub d: f64,
    /// `mu_k(G) = (1/2) * sum_v phi_k(v)`.
    pub mu_k: f64,
    /// Vertices zeroed by the ball-size threshold.
    pub truncated_count: u64,
}

/// Series approximation of the completion density:
/// `f(d) ~ (1/2) d e^{-d} + e^{-d} + (d^6/12 + d^5/4 + d^4/4 + d^3/12) e^{-3d}`.
/// The remainder term of order `d^12 e^{-4d}` is not modelled.
pub fn eval_f_approx(d: f64) -> f64 {
    let poly = d.powi(6) / 12.0 + d.powi(5) / 4.0 + d.powi(4) / 4.0 + d.powi(3) / 12.0;
    0.5 * d * (-d).exp() + (-d).exp() + poly * (-3.0 * d).exp()
}

/// Computes the local core partition of radius `k >= 1` around `v`.
pub fn local_core(g: &Graph, v: Vertex, k: usize) -> LocalCore {
    let mut scratch = Scratch::new(g.n());
    scratch.local_core(g, v, k)
}

/// `phi_k'(v)` as an exact rational `(a(T), |T|)`; `(0, 1)` when `v` lies in
/// the local core. Errors only if the local component exceeds the
/// exhaustive cap while not being a tree.
pub fn phi_k_prime(g: &Graph, v: Vertex, k: usize) -> Result<(u64, u64), Error> {
    let lc = local_core(g, v, k);
    phi_of(&lc)
}

fn phi_of(lc: &LocalCore) -> Result<(u64, u64), Error> {
    match &lc.component {
        None => Ok((0, 1)),
        Some(comp) => {
            let r = path_cover::a_component(comp, false)?;
            Ok((r.a_value, comp.len() as u64))
        }
    }
}

/// Ball-size threshold `2 d^k e^{kd}`.
pub fn ball_threshold(d: f64, k: usize) -> f64 {
    2.0 * d.powi(k as i32) * (k as f64 * d).exp()
}

/// `phi_k(v)`: the local value, zeroed when `|N^{<=k}(v)|` exceeds the
/// threshold. Requires `d > 0`.
pub fn phi_k(g: &Graph, v: Vertex, k: usize, d: f64) -> Result<f64, Error> {
    if d <= 0.0 {
        return Err(Error::Parameter(format!("density d={d} must be positive")));
    }
    let lc = local_core(g, v, k);
    if lc.ball_size as f64 > ball_threshold(d, k) {
        return Ok(0.0);
    }
    let (a, t) = phi_of(&lc)?;
    Ok(a as f64 / t as f64)
}

/// Exact evaluation of the estimator `mu_k(G)`, parallel over vertices.
/// Deterministic: per-vertex values are reduced in vertex order.
pub fn mu_k_estimate(g: &Graph, k: usize, d: f64) -> Result<EstimatorReport, Error> {
    if d <= 0.0 {
        return Err(Error::Parameter(format!("density d={d} must be positive")));
    }
    if k == 0 {
        return Err(Error::Parameter("radius k must be at least 1".into()));
    }
    let threshold = ball_threshold(d, k);
    let values: Vec<Result<(f64, bool), Error>> = (0..g.n() as Vertex)
        .into_par_iter()
        .map_init(
            || Scratch::new(g.n()),
            |scratch, v| {
                let lc = scratch.local_core(g, v, k);
                if lc.ball_size as f64 > threshold {
                    return Ok((0.0, true));
                }
                let (a, t) = phi_of(&lc)?;
                Ok((a as f64 / t as f64, false))
            },
        )
        .collect();
    let mut sum = 0.0;
    let mut truncated = 0u64;
    for r in values {
        let (phi, cut) = r?;
        debug_assert!((0.0..=2.0).contains(&phi));
        sum += phi;
        truncated += u64::from(cut);
    }
    Ok(EstimatorReport { k, d, mu_k: 0.5 * sum, truncated_count: truncated })
}

/// Reusable buffers for ball extraction and local colouring.
struct Scratch {
    // epoch-stamped ball membership with local ids
    stamp: Vec<u32>,
    local_id: Vec<u32>,
    epoch: u32,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { stamp: vec![0; n], local_id: vec![0; n], epoch: 0 }
    }

    fn local_core(&mut self, g: &Graph, v: Vertex, k: usize) -> LocalCore {
        assert!(k >= 1, "local core needs radius k >= 1");
        self.epoch += 1;
        let epoch = self.epoch;

        // BFS to depth k; inner = N^{<k}, boundary = N^k
        let mut ball: Vec<Vertex> = vec![v];
        let mut depth_end = Vec::with_capacity(k); // ball prefix length per depth
        self.stamp[v as usize] = epoch;
        self.local_id[v as usize] = 0;
        let mut lo = 0usize;
        for _ in 1..=k {
            let hi = ball.len();
            depth_end.push(hi);
            for i in lo..hi {
                let u = ball[i];
                for &w in g.neighbors(u) {
                    if self.stamp[w as usize] != epoch {
                        self.stamp[w as usize] = epoch;
                        self.local_id[w as usize] = ball.len() as u32;
                        ball.push(w);
                    }
                }
            }
            lo = hi;
        }
        let inner_len = depth_end[k - 1];
        let total = ball.len();

        // adjacency rows for inner vertices (other rows are never walked)
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(inner_len);
        for &u in ball.iter().take(inner_len) {
            let row: Vec<u32> = g
                .neighbors(u)
                .iter()
                .filter(|&&w| self.stamp[w as usize] == epoch)
                .map(|&w| self.local_id[w as usize])
                .collect();
            rows.push(row);
        }

        // colouring with the boundary sphere pinned black
        const BLACK: u8 = 0;
        const BLUE: u8 = 1;
        const RED: u8 = 2;
        let mut color = vec![BLACK; inner_len];
        let mut black_deg: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
        let mut queue: std::collections::VecDeque<u32> =
            (0..inner_len as u32).filter(|&x| black_deg[x as usize] < 4).collect();
        while let Some(x) = queue.pop_front() {
            let xi = x as usize;
            if color[xi] == RED || black_deg[xi] >= 4 {
                continue;
            }
            let was_black = color[xi] == BLACK;
            color[xi] = RED;
            if was_black {
                for &w in &rows[xi] {
                    if (w as usize) < inner_len {
                        black_deg[w as usize] -= 1;
                        if black_deg[w as usize] == 3 && color[w as usize] != RED {
                            queue.push_back(w);
                        }
                    }
                }
            }
            for i in 0..rows[xi].len() {
                let u = rows[xi][i];
                let ui = u as usize;
                if ui >= inner_len || color[ui] != BLACK {
                    continue;
                }
                color[ui] = BLUE;
                for j in 0..rows[ui].len() {
                    let w = rows[ui][j];
                    if (w as usize) < inner_len {
                        black_deg[w as usize] -= 1;
                        if black_deg[w as usize] == 3 && color[w as usize] != RED {
                            queue.push_back(w);
                        }
                    }
                }
            }
        }

        // derive the (C, B, A) split of the ball interior from the core set
        let in_core: Vec<bool> = (0..inner_len).map(|i| color[i] == BLACK).collect();
        let mut c_vk = Vec::new();
        let mut b_vk = Vec::new();
        let mut a_vk = Vec::new();
        let mut is_b = vec![false; inner_len];
        for i in 0..inner_len {
            if in_core[i] {
                c_vk.push(ball[i]);
            } else if rows[i].iter().any(|&w| (w as usize) < inner_len && in_core[w as usize]) {
                is_b[i] = true;
                b_vk.push(ball[i]);
            } else {
                a_vk.push(ball[i]);
            }
        }
        c_vk.sort_unstable();
        b_vk.sort_unstable();
        a_vk.sort_unstable();

        let component = if in_core[0] {
            None
        } else {
            // component of v in the local A ∪ B graph (ball interior only)
            let mut seen = vec![false; inner_len];
            let mut comp_ids = vec![0u32];
            seen[0] = true;
            let mut head = 0;
            while head < comp_ids.len() {
                let x = comp_ids[head] as usize;
                head += 1;
                for &w in &rows[x] {
                    let wi = w as usize;
                    if wi < inner_len && !in_core[wi] && !seen[wi] {
                        seen[wi] = true;
                        comp_ids.push(w);
                    }
                }
            }
            let mut vertices: Vec<Vertex> = comp_ids.iter().map(|&i| ball[i as usize]).collect();
            vertices.sort_unstable();
            let mut a_vertices = Vec::new();
            let mut b_vertices = Vec::new();
            let mut edges = Vec::new();
            for &i in &comp_ids {
                let gi = ball[i as usize];
                if is_b[i as usize] {
                    b_vertices.push(gi);
                } else {
                    a_vertices.push(gi);
                }
                for &w in &rows[i as usize] {
                    let wi = w as usize;
                    if wi < inner_len && !in_core[wi] {
                        let gw = ball[wi];
                        if gw > gi {
                            edges.push((gi, gw));
                        }
                    }
                }
            }
            a_vertices.sort_unstable();
            b_vertices.sort_unstable();
            edges.sort_unstable();
            let is_tree = edges.len() + 1 == vertices.len();
            Some(ABComponent { vertices, a_vertices, b_vertices, edges, is_tree })
        };

        LocalCore { v, k, c_vk, b_vk, a_vk, ball_size: total, component }
    }
}
