//! Disjoint path covers of `G[A ∪ B]` components minimising the number of
//! `A`-endpoints, the per-component value `a(T)`, and the aggregate
//! `a(G)` and `mu'(G) = ceil(a(G) / 2)`.
//!
//! A cover is any set of vertex-disjoint paths (length 0 allowed) covering
//! the component. Its cost is the number of path endpoints lying in `A`,
//! with a singleton `A`-vertex counted twice, once as the start and once as
//! the end. Equivalently the cost is `sum over v in A of (2 - deg_Q(v))`
//! where `deg_Q` is the degree in the cover's edge set, which is what the
//! tree DP maximises. Edges joining two `B`-vertices are deleted before
//! covering; this does not change the minimum, because dropping such an edge
//! from a cover only creates `B`-endpoints.

use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::strong_core::{self, ABComponent, CorePartition};

/// Largest non-tree component the exhaustive enumerator accepts.
pub const EXHAUSTIVE_CAP: usize = 16;

/// How a cover value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMethod {
    Formula,
    TreeDp,
    Exhaustive,
}

/// Result of covering one component.
#[derive(Debug, Clone)]
pub struct CoverResult {
    /// Minimum number of `A`-endpoints over disjoint path covers.
    pub a_value: u64,
    /// A witness cover as vertex paths (empty when `method` is `Formula`).
    pub witness: Vec<Vec<Vertex>>,
    pub method: CoverMethod,
}

/// Aggregate of all components: `a(G)` and `mu'(G)`.
#[derive(Debug, Clone)]
pub struct MuPrime {
    pub a_total: u64,
    pub mu_prime: u64,
    pub per_component: Vec<CoverResult>,
}

/// Exact `a(T)` for a tree component, by linear dynamic programming.
///
/// Deletes `B`-`B` edges, then maximises the total weight of an edge subset
/// with all degrees at most 2 (automatically a union of paths inside a
/// forest), where an edge weighs one per `A`-endpoint. Children of a vertex
/// are merged by bounded convolution: each either donates its subtree
/// optimum or connects up, and at most two (one under a used parent edge)
/// may connect.
pub fn a_tree_dp(comp: &ABComponent) -> Result<CoverResult, Error> {
    if !comp.is_tree {
        return Err(Error::Contract("a_tree_dp requires a tree component".into()));
    }
    let local = LocalView::new(comp, true);
    Ok(local.tree_dp())
}

/// `a(T) = 2*n0(T) + n1(T) + s3'(T)` for tree components with at most three
/// `A`-vertices. `n_i` counts `A`-vertices of degree `i` in the component
/// and `s3'` counts (centre, triple) pairs where the triple consists of
/// `A`-vertices of degree at most 2 sharing the centre as a neighbour.
pub fn a_formula_small(comp: &ABComponent) -> Result<CoverResult, Error> {
    if !comp.is_tree {
        return Err(Error::Contract("a_formula_small requires a tree component".into()));
    }
    if comp.a_vertices.len() > 3 {
        return Err(Error::Contract(format!(
            "a_formula_small requires |A| <= 3, got {}",
            comp.a_vertices.len()
        )));
    }
    let mut deg = std::collections::HashMap::new();
    for &(u, v) in &comp.edges {
        *deg.entry(u).or_insert(0usize) += 1;
        *deg.entry(v).or_insert(0usize) += 1;
    }
    let d = |v: Vertex| deg.get(&v).copied().unwrap_or(0);
    let n0 = comp.a_vertices.iter().filter(|&&v| d(v) == 0).count() as u64;
    let n1 = comp.a_vertices.iter().filter(|&&v| d(v) == 1).count() as u64;
    let s3p = s3_prime_of_component(comp) as u64;
    Ok(CoverResult {
        a_value: 2 * n0 + n1 + s3p,
        witness: Vec::new(),
        method: CoverMethod::Formula,
    })
}

/// Number of 3-prespiders of the component whose low-degree triple lies in
/// `A`: pairs of a centre vertex and an unordered triple of `A`-vertices of
/// component-degree at most 2, all adjacent to the centre.
pub fn s3_prime_of_component(comp: &ABComponent) -> usize {
    let mut deg = std::collections::HashMap::new();
    let mut adj: std::collections::HashMap<Vertex, Vec<Vertex>> = std::collections::HashMap::new();
    for &(u, v) in &comp.edges {
        *deg.entry(u).or_insert(0usize) += 1;
        *deg.entry(v).or_insert(0usize) += 1;
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut count = 0usize;
    for &w in &comp.vertices {
        let Some(nbrs) = adj.get(&w) else { continue };
        let low = nbrs
            .iter()
            .filter(|&&x| comp.contains_a(x) && deg[&x] <= 2)
            .count();
        if low >= 3 {
            count += low * (low - 1) * (low - 2) / 6;
        }
    }
    count
}

/// Exact `a` over all disjoint path covers by subset dynamic programming,
/// for components of at most [`EXHAUSTIVE_CAP`] vertices, trees or not.
/// Unlike the tree DP this enumerates covers of the component as given,
/// `B`-`B` edges included, so agreement between the two routes also
/// validates the edge-deletion step.
pub fn a_exhaustive(comp: &ABComponent) -> Result<CoverResult, Error> {
    if comp.len() > EXHAUSTIVE_CAP {
        return Err(Error::Capacity {
            what: "non-tree component",
            size: comp.len(),
            cap: EXHAUSTIVE_CAP,
        });
    }
    let local = LocalView::new(comp, false);
    Ok(local.exhaustive())
}

/// Dispatching cover computation for one component: formula where it
/// applies (unless a witness is requested), tree DP for trees, exhaustive
/// search for small non-trees, and a capacity error beyond the cap.
pub fn a_component(comp: &ABComponent, want_witness: bool) -> Result<CoverResult, Error> {
    if comp.is_tree {
        if !want_witness && comp.a_vertices.len() <= 3 {
            a_formula_small(comp)
        } else {
            a_tree_dp(comp)
        }
    } else {
        a_exhaustive(comp)
    }
}

/// Witness cover that never uses a `B`-`B` edge, as the completion
/// construction requires. Same minimum as [`a_component`].
pub fn a_component_no_bb(comp: &ABComponent) -> Result<CoverResult, Error> {
    if comp.is_tree {
        a_tree_dp(comp)
    } else {
        if comp.len() > EXHAUSTIVE_CAP {
            return Err(Error::Capacity {
                what: "non-tree component",
                size: comp.len(),
                cap: EXHAUSTIVE_CAP,
            });
        }
        Ok(LocalView::new(comp, true).exhaustive())
    }
}

/// `a(G)` and `mu'(G) = ceil(a(G)/2)` over all components of `G[A ∪ B]`.
pub fn mu_prime(g: &Graph) -> Result<MuPrime, Error> {
    let part = strong_core::strong_core(g);
    let comps = strong_core::ab_components(g, &part);
    mu_prime_parts(&comps, false)
}

/// As [`mu_prime`], reusing a precomputed partition and requesting witness
/// covers when needed downstream.
pub fn mu_prime_parts(comps: &[ABComponent], want_witness: bool) -> Result<MuPrime, Error> {
    let mut per_component = Vec::with_capacity(comps.len());
    let mut a_total = 0u64;
    for comp in comps {
        let r = a_component(comp, want_witness)?;
        a_total += r.a_value;
        per_component.push(r);
    }
    Ok(MuPrime {
        a_total,
        mu_prime: a_total.div_ceil(2),
        per_component,
    })
}

/// Recomputes mu' for a graph given its partition (convenience used by the
/// process simulator at checkpoints).
pub fn mu_prime_of(g: &Graph, part: &CorePartition) -> Result<MuPrime, Error> {
    let comps = strong_core::ab_components(g, part);
    mu_prime_parts(&comps, false)
}

/// Checks a witness cover: paths vertex-disjoint, covering the whole
/// component, consecutive vertices adjacent in the component, and the
/// `A`-endpoint count (singletons doubled) equal to `expect_a`.
pub fn verify_witness(comp: &ABComponent, witness: &[Vec<Vertex>], expect_a: u64) -> bool {
    let mut seen = std::collections::HashSet::new();
    let edge_set: std::collections::HashSet<(Vertex, Vertex)> = comp
        .edges
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    let mut a_count = 0u64;
    for path in witness {
        if path.is_empty() {
            return false;
        }
        for w in path.windows(2) {
            if !edge_set.contains(&(w[0].min(w[1]), w[0].max(w[1]))) {
                return false;
            }
        }
        for &v in path {
            if !seen.insert(v) {
                return false;
            }
        }
        let mult = if path.len() == 1 { 2 } else { 1 };
        a_count += mult * u64::from(comp.contains_a(path[0]));
        if path.len() > 1 {
            a_count += u64::from(comp.contains_a(*path.last().unwrap()));
        }
    }
    seen.len() == comp.len() && a_count == expect_a
}

/// A component relabelled to `0..s` with an `A`-membership mask.
struct LocalView {
    verts: Vec<Vertex>,
    adj: Vec<Vec<u32>>,
    in_a: Vec<bool>,
}

impl LocalView {
    /// `drop_bb`: delete edges with both endpoints in `B`.
    fn new(comp: &ABComponent, drop_bb: bool) -> Self {
        let verts = comp.vertices.clone();
        let index = |v: Vertex| verts.binary_search(&v).unwrap() as u32;
        let in_a: Vec<bool> = verts.iter().map(|&v| comp.contains_a(v)).collect();
        let mut adj = vec![Vec::new(); verts.len()];
        for &(u, v) in &comp.edges {
            let (lu, lv) = (index(u), index(v));
            if drop_bb && !in_a[lu as usize] && !in_a[lv as usize] {
                continue;
            }
            adj[lu as usize].push(lv);
            adj[lv as usize].push(lu);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        LocalView { verts, adj, in_a }
    }

    fn s(&self) -> usize {
        self.verts.len()
    }

    fn w(&self, u: u32, v: u32) -> i64 {
        i64::from(self.in_a[u as usize]) + i64::from(self.in_a[v as usize])
    }

    fn a_size(&self) -> u64 {
        self.in_a.iter().filter(|&&x| x).count() as u64
    }

    /// Maximum-weight degree-<=2 edge subset over the (forest) view, then
    /// `a = 2|A| - weight`, with path reconstruction.
    fn tree_dp(&self) -> CoverResult {
        let s = self.s();
        let mut visited = vec![false; s];
        // dp[v] = (best with 2 child slots, best with 1 child slot)
        let mut dp = vec![(0i64, 0i64); s];
        const NO_PARENT: u32 = u32::MAX;
        let mut parent: Vec<u32> = vec![NO_PARENT; s];
        let mut chosen: Vec<(u32, u32)> = Vec::new();

        for root in 0..s as u32 {
            if visited[root as usize] {
                continue;
            }
            // iterative post-order
            let mut order = Vec::new();
            let mut stack = vec![root];
            visited[root as usize] = true;
            while let Some(v) = stack.pop() {
                order.push(v);
                for &c in &self.adj[v as usize] {
                    if !visited[c as usize] {
                        visited[c as usize] = true;
                        parent[c as usize] = v;
                        stack.push(c);
                    }
                }
            }
            for &v in order.iter().rev() {
                let gains = self.child_gains(v, &parent, &dp);
                dp[v as usize] = (
                    gains.base + gains.top2,
                    gains.base + gains.top1,
                );
            }
            // reconstruct: walk top-down re-deriving the selected children
            let mut walk = vec![(root, 2u8)];
            while let Some((v, avail)) = walk.pop() {
                let gains = self.child_gains(v, &parent, &dp);
                let take = gains.pick(avail);
                for &c in &self.adj[v as usize] {
                    if parent[c as usize] == v {
                        if take.contains(&c) {
                            chosen.push((v, c));
                            walk.push((c, 1));
                        } else {
                            walk.push((c, 2));
                        }
                    }
                }
            }
        }

        let weight: i64 = chosen.iter().map(|&(u, v)| self.w(u, v)).sum();
        let a_value = (2 * self.a_size() as i64 - weight) as u64;
        let witness = self.paths_from_edges(&chosen);
        CoverResult { a_value, witness, method: CoverMethod::TreeDp }
    }

    fn child_gains(&self, v: u32, parent: &[u32], dp: &[(i64, i64)]) -> Gains {
        let mut base = 0i64;
        let mut list: Vec<(i64, u32)> = Vec::new();
        for &c in &self.adj[v as usize] {
            if parent[c as usize] != v {
                continue;
            }
            let (free, held) = dp[c as usize];
            base += free;
            let gain = held + self.w(v, c) - free;
            if gain > 0 {
                list.push((gain, c));
            }
        }
        // deterministic tie-break: larger gain first, then smaller index
        list.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Gains {
            base,
            top1: list.first().map_or(0, |x| x.0),
            top2: list.iter().take(2).map(|x| x.0).sum(),
            list,
        }
    }

    /// Exact minimum by subset DP over `(mask, endpoint)` states.
    fn exhaustive(&self) -> CoverResult {
        let s = self.s();
        debug_assert!(s <= EXHAUSTIVE_CAP);
        let full: u32 = if s == 32 { u32::MAX } else { (1 << s) - 1 };
        let adjm: Vec<u32> = (0..s)
            .map(|v| self.adj[v].iter().fold(0u32, |m, &c| m | 1 << c))
            .collect();
        const INF: u8 = u8::MAX;
        // gcost[mask][v]: min cost of the far endpoint over paths spanning
        // mask and ending at v
        let mut gcost = vec![INF; (full as usize + 1) * s];
        let at = |mask: u32, v: usize| mask as usize * s + v;
        for v in 0..s {
            gcost[at(1 << v, v)] = u8::from(self.in_a[v]);
        }
        for mask in 1..=full {
            for v in 0..s {
                if mask >> v & 1 == 0 {
                    continue;
                }
                let cur = gcost[at(mask, v)];
                if cur == INF {
                    continue;
                }
                let mut ext = adjm[v] & !mask;
                while ext != 0 {
                    let w = ext.trailing_zeros() as usize;
                    ext &= ext - 1;
                    let slot = at(mask | 1 << w, w);
                    if cur < gcost[slot] {
                        gcost[slot] = cur;
                    }
                }
            }
        }
        // best single-path cost and endpoint per coverable mask
        let mut bc_cost = vec![INF; full as usize + 1];
        let mut bc_end = vec![u8::MAX; full as usize + 1];
        for mask in 1..=full {
            for v in 0..s {
                if mask >> v & 1 == 1 && gcost[at(mask, v)] != INF {
                    let total = gcost[at(mask, v)] + u8::from(self.in_a[v]);
                    if total < bc_cost[mask as usize] {
                        bc_cost[mask as usize] = total;
                        bc_end[mask as usize] = v as u8;
                    }
                }
            }
        }
        let mut f = vec![u32::MAX; full as usize + 1];
        let mut pick: Vec<u32> = vec![0; full as usize + 1];
        f[0] = 0;
        for mask in 1..=full {
            let low = mask & mask.wrapping_neg();
            let rest = mask & !low;
            let mut sub = rest;
            loop {
                let piece = sub | low;
                if bc_cost[piece as usize] != INF && f[(mask & !piece) as usize] != u32::MAX {
                    let total = f[(mask & !piece) as usize] + bc_cost[piece as usize] as u32;
                    if total < f[mask as usize] {
                        f[mask as usize] = total;
                        pick[mask as usize] = piece;
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        // reconstruct pieces, then each piece's path by walking gcost back
        let mut witness = Vec::new();
        let mut mask = full;
        while mask != 0 {
            let piece = pick[mask as usize];
            let end = bc_end[piece as usize] as usize;
            debug_assert!(end != u8::MAX as usize, "picked piece is coverable");
            let mut path = vec![end as u32];
            let mut m = piece;
            let mut v = end;
            while m.count_ones() > 1 {
                let prev_mask = m & !(1 << v);
                let target = gcost[at(m, v)];
                let mut found = None;
                let mut cand = adjm[v] & prev_mask;
                while cand != 0 {
                    let u = cand.trailing_zeros() as usize;
                    cand &= cand - 1;
                    if gcost[at(prev_mask, u)] == target {
                        found = Some(u);
                        break;
                    }
                }
                let u = found.expect("gcost chain is consistent");
                path.push(u as u32);
                m = prev_mask;
                v = u;
            }
            witness.push(path);
            mask &= !piece;
        }
        witness.reverse();
        let a_value = u64::from(f[full as usize]);
        let witness = witness
            .into_iter()
            .map(|p| p.into_iter().map(|l| self.verts[l as usize]).collect())
            .collect();
        CoverResult { a_value, witness, method: CoverMethod::Exhaustive }
    }

    fn paths_from_edges(&self, chosen: &[(u32, u32)]) -> Vec<Vec<Vertex>> {
        let s = self.s();
        let mut cadj: Vec<Vec<u32>> = vec![Vec::new(); s];
        for &(u, v) in chosen {
            cadj[u as usize].push(v);
            cadj[v as usize].push(u);
        }
        for l in &mut cadj {
            l.sort_unstable();
        }
        let mut used = vec![false; s];
        let mut paths = Vec::new();
        for v in 0..s as u32 {
            if used[v as usize] || cadj[v as usize].len() > 1 {
                continue;
            }
            // v is a path endpoint or a singleton
            let mut path = vec![v];
            used[v as usize] = true;
            let mut cur = v;
            loop {
                let next = cadj[cur as usize].iter().find(|&&x| !used[x as usize]).copied();
                match next {
                    Some(x) => {
                        used[x as usize] = true;
                        path.push(x);
                        cur = x;
                    }
                    None => break,
                }
            }
            paths.push(path.into_iter().map(|l| self.verts[l as usize]).collect());
        }
        debug_assert!(used.iter().all(|&x| x), "chosen edges must form paths in a forest");
        paths
    }
}

struct Gains {
    base: i64,
    top1: i64,
    top2: i64,
    list: Vec<(i64, u32)>,
}

impl Gains {
    fn pick(&self, avail: u8) -> Vec<u32> {
        self.list.iter().take(avail as usize).map(|x| x.1).collect()
    }
}
