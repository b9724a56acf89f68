//! The strong 4-core tripartition and the component structure of `G[A ∪ B]`.
//!
//! The strong `k`-core of `G` is the maximal `S ⊆ V(G)` such that every
//! vertex of `S ∪ N(S)` has at least `k` neighbours in `S`. It is computed
//! by a red/blue/black colouring fixpoint: start all black; while some black
//! or blue vertex has fewer than `k` black neighbours, recolour it red and
//! its black neighbours blue. Red is `A`, blue is `B = N(C)`, black is the
//! core `C`.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Graph, Vertex};

/// Colour classes of the strong-core partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreColor {
    /// Red: outside the core and not adjacent to it.
    A,
    /// Blue: the border `N(C)`.
    B,
    /// Black: the strong core itself.
    C,
}

/// The `(A, B, C)` vertex tripartition induced by the strong 4-core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorePartition {
    color: Vec<CoreColor>,
}

impl CorePartition {
    pub fn color(&self, v: Vertex) -> CoreColor {
        self.color[v as usize]
    }

    pub fn in_a(&self, v: Vertex) -> bool {
        self.color[v as usize] == CoreColor::A
    }

    pub fn in_b(&self, v: Vertex) -> bool {
        self.color[v as usize] == CoreColor::B
    }

    pub fn in_c(&self, v: Vertex) -> bool {
        self.color[v as usize] == CoreColor::C
    }

    /// Vertex not in the core, i.e. in `A ∪ B`.
    pub fn in_ab(&self, v: Vertex) -> bool {
        !self.in_c(v)
    }

    pub fn n(&self) -> usize {
        self.color.len()
    }

    pub fn a_vertices(&self) -> Vec<Vertex> {
        self.collect(CoreColor::A)
    }

    pub fn b_vertices(&self) -> Vec<Vertex> {
        self.collect(CoreColor::B)
    }

    pub fn c_vertices(&self) -> Vec<Vertex> {
        self.collect(CoreColor::C)
    }

    fn collect(&self, c: CoreColor) -> Vec<Vertex> {
        (0..self.color.len() as Vertex).filter(|&v| self.color[v as usize] == c).collect()
    }

    /// `(|A|, |B|, |C|)`.
    pub fn sizes(&self) -> (usize, usize, usize) {
        let mut s = (0, 0, 0);
        for c in &self.color {
            match c {
                CoreColor::A => s.0 += 1,
                CoreColor::B => s.1 += 1,
                CoreColor::C => s.2 += 1,
            }
        }
        s
    }
}

/// Computes the strong 4-core partition of `g`.
pub fn strong_core(g: &Graph) -> CorePartition {
    strong_core_k(g, 4)
}

/// Strong `k`-core colouring with a work queue keyed by black-neighbour
/// count; counts are updated incrementally, so the extraction is linear in
/// the graph size.
pub fn strong_core_k(g: &Graph, k: usize) -> CorePartition {
    let n = g.n();
    let k = k as u32;
    let mut color = vec![CoreColor::C; n];
    let mut black_deg: Vec<u32> = (0..n).map(|v| g.degree(v as Vertex) as u32).collect();
    let mut queue: VecDeque<Vertex> = (0..n as Vertex).filter(|&v| black_deg[v as usize] < k).collect();

    // Demotion of u from black decrements the black-degree of u's
    // neighbours; a vertex is (re-)enqueued when it first drops below k.
    while let Some(v) = queue.pop_front() {
        let vi = v as usize;
        if color[vi] == CoreColor::A || black_deg[vi] >= k {
            continue;
        }
        let was_black = color[vi] == CoreColor::C;
        color[vi] = CoreColor::A;
        if was_black {
            for &w in g.neighbors(v) {
                black_deg[w as usize] -= 1;
                if black_deg[w as usize] == k - 1 && color[w as usize] != CoreColor::A {
                    queue.push_back(w);
                }
            }
        }
        // neighbours that are still black become blue and stop counting
        // as black for their own neighbours
        for &u in g.neighbors(v) {
            let ui = u as usize;
            if color[ui] != CoreColor::C {
                continue;
            }
            color[ui] = CoreColor::B;
            for &w in g.neighbors(u) {
                black_deg[w as usize] -= 1;
                if black_deg[w as usize] == k - 1 && color[w as usize] != CoreColor::A {
                    queue.push_back(w);
                }
            }
        }
    }
    CorePartition { color }
}

/// One connected component of `G[A ∪ B]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ABComponent {
    /// All component vertices, sorted.
    pub vertices: Vec<Vertex>,
    /// The subset lying in `A`, sorted.
    pub a_vertices: Vec<Vertex>,
    /// The subset lying in `B`, sorted.
    pub b_vertices: Vec<Vertex>,
    /// Component edges of `G[A ∪ B]` as `(u, v)` with `u < v`.
    pub edges: Vec<(Vertex, Vertex)>,
    /// True iff the component spans exactly `|vertices| - 1` edges.
    pub is_tree: bool,
}

impl ABComponent {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_a(&self, v: Vertex) -> bool {
        self.a_vertices.binary_search(&v).is_ok()
    }

    /// Degree of `v` within the component.
    pub fn degree_in(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// Exact connected-component decomposition of `G[A ∪ B]`.
pub fn ab_components(g: &Graph, part: &CorePartition) -> Vec<ABComponent> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n as Vertex {
        if !part.in_ab(s) || seen[s as usize] {
            continue;
        }
        let mut verts = Vec::new();
        seen[s as usize] = true;
        stack.push(s);
        while let Some(v) = stack.pop() {
            verts.push(v);
            for &u in g.neighbors(v) {
                if part.in_ab(u) && !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        verts.sort_unstable();
        let mut edges = Vec::new();
        let mut a_vertices = Vec::new();
        let mut b_vertices = Vec::new();
        for &v in &verts {
            if part.in_a(v) {
                a_vertices.push(v);
            } else {
                b_vertices.push(v);
            }
            for &u in g.neighbors(v) {
                if u > v && part.in_ab(u) {
                    edges.push((v, u));
                }
            }
        }
        let is_tree = edges.len() == verts.len() - 1;
        comps.push(ABComponent { vertices: verts, a_vertices, b_vertices, edges, is_tree });
    }
    comps
}

/// Membership in `S(G)`: exactly one vertex in `A` and three in `B`.
pub fn classify_s(comp: &ABComponent) -> bool {
    comp.a_vertices.len() == 1 && comp.b_vertices.len() == 3
}

/// `|S(G)|` over a component decomposition.
pub fn count_s(comps: &[ABComponent]) -> usize {
    comps.iter().filter(|c| classify_s(c)).count()
}

/// The event `E_1`: either `G[A ∪ B]` has at least two two-vertex components
/// with one `A`-vertex and one `B`-vertex, or it has no component with two
/// or more `A`-vertices and no isolated vertices.
pub fn detect_e1(comps: &[ABComponent]) -> bool {
    let two_vertex_ab = comps
        .iter()
        .filter(|c| c.len() == 2 && c.a_vertices.len() == 1 && c.b_vertices.len() == 1)
        .count();
    if two_vertex_ab >= 2 {
        return true;
    }
    let multi_a = comps.iter().any(|c| c.a_vertices.len() >= 2);
    let isolated = comps.iter().any(|c| c.len() == 1);
    !multi_a && !isolated
}

/// `max(3, floor(log log n))` in natural logarithms: the short-cycle bound.
pub fn kmax_for(n: usize) -> usize {
    if n < 3 {
        return 3;
    }
    let ll = (n as f64).ln().ln();
    if ll.is_nan() || ll < 3.0 {
        3
    } else {
        ll.floor() as usize
    }
}

/// If the component is the caterpillar shape (one `B`-vertex `b` adjacent to
/// `a1, a2, a3`, with `a3 a4 ... ak` a path), returns `k`, the number of
/// `A`-vertices.
pub fn caterpillar_k(comp: &ABComponent) -> Option<usize> {
    if !comp.is_tree || comp.b_vertices.len() != 1 || comp.a_vertices.len() < 3 {
        return None;
    }
    let b = comp.b_vertices[0];
    let k = comp.a_vertices.len();
    let mut deg = std::collections::HashMap::new();
    for &(u, v) in &comp.edges {
        *deg.entry(u).or_insert(0usize) += 1;
        *deg.entry(v).or_insert(0usize) += 1;
    }
    if deg.get(&b) != Some(&3) {
        return None;
    }
    if comp.a_vertices.iter().any(|a| deg.get(a).copied().unwrap_or(0) > 2) {
        return None;
    }
    // with b of degree 3 and all A-degrees <= 2, the component is a spider
    // with three legs; the caterpillar needs two legs of length exactly 1
    let leaves = comp
        .edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .filter(|&x| x != b && deg[&x] == 1 && comp.edges.iter().any(|&(p, q)| (p == b && q == x) || (q == b && p == x)))
        .count();
    if k == 3 {
        // all three legs are single vertices
        (leaves == 3).then_some(3)
    } else {
        (leaves == 2).then_some(k)
    }
}

/// The events `E_k` for `k` in `[2, kmax]`: `k` is reported iff `G` contains
/// a `k`-cycle or `G[A ∪ B]` has a caterpillar component with `k`
/// `A`-vertices.
pub fn detect_ek(g: &Graph, comps: &[ABComponent], kmax: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for k in 3..=kmax {
        if find_cycle_of_length(g, k).is_some() {
            out.insert(k);
        }
    }
    for comp in comps {
        if let Some(k) = caterpillar_k(comp) {
            if (3..=kmax).contains(&k) {
                out.insert(k);
            }
        }
    }
    out
}

/// The event `E(G)`: every length in `[3, kmax]` is covered by a cycle of
/// `G` or a caterpillar component.
pub fn event_e(g: &Graph, comps: &[ABComponent], kmax: usize) -> bool {
    let found = detect_ek(g, comps, kmax);
    (3..=kmax).all(|k| found.contains(&k))
}

/// Exact search for a cycle of length exactly `k`, by canonical DFS from
/// each start vertex (only vertices above the start are explored, so each
/// cycle is attempted once). Intended for small `k`; cost is `O(n * d^(k-1))`.
pub fn find_cycle_of_length(g: &Graph, k: usize) -> Option<Vec<Vertex>> {
    if k < 3 || k > g.n() {
        return None;
    }
    fn dfs(g: &Graph, s: Vertex, k: usize, path: &mut Vec<Vertex>, on: &mut [bool]) -> bool {
        let last = *path.last().unwrap();
        if path.len() == k {
            return g.has_edge(last, s);
        }
        for &w in g.neighbors(last) {
            if w > s && !on[w as usize] {
                path.push(w);
                on[w as usize] = true;
                if dfs(g, s, k, path, on) {
                    return true;
                }
                path.pop();
                on[w as usize] = false;
            }
        }
        false
    }
    let mut on = vec![false; g.n()];
    let mut path = Vec::with_capacity(k);
    for s in 0..g.n() as Vertex {
        if g.degree(s) < 2 {
            continue;
        }
        path.push(s);
        on[s as usize] = true;
        if dfs(g, s, k, &mut path, &mut on) {
            return Some(path);
        }
        path.pop();
        on[s as usize] = false;
    }
    None
}
