//! Sparse undirected graphs, random generators and the edge stream of the
//! random graph process.
//!
//! Vertices are `0..n` as `u32`. Adjacency lists are kept sorted, so
//! membership tests are binary searches and iteration order is
//! deterministic. All randomness in the crate flows through [`DetRng`]
//! (a counter-based generator), seeded per trial via [`trial_seed`], which
//! makes every experiment bit-reproducible.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};

use crate::error::Error;

/// Vertex id. The paper's `[n]` maps to `0..n-1`.
pub type Vertex = u32;

/// The one deterministic generator used across the whole crate.
pub type DetRng = rand_chacha::ChaCha8Rng;

/// Builds the crate RNG from a seed.
pub fn rng_from_seed(seed: u64) -> DetRng {
    DetRng::seed_from_u64(seed)
}

/// Derives the seed of one trial from a base seed and the trial index.
pub fn trial_seed(base: u64, trial: u64) -> u64 {
    base ^ trial
}

/// `C(n, 2)` as `u64`.
pub fn n_choose_2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Colexicographic index of the pair `{u, v}` with `u < v`: `C(v,2) + u`.
pub fn pair_index(u: Vertex, v: Vertex) -> u64 {
    debug_assert!(u < v);
    n_choose_2(v as usize) + u as u64
}

/// Inverse of [`pair_index`].
pub fn pair_at(idx: u64) -> (Vertex, Vertex) {
    // v is the largest integer with C(v,2) <= idx.
    let mut v = ((1.0 + (1.0 + 8.0 * idx as f64).sqrt()) / 2.0) as u64;
    while n_choose_2(v as usize) > idx {
        v -= 1;
    }
    while n_choose_2(v as usize + 1) <= idx {
        v += 1;
    }
    let u = idx - n_choose_2(v as usize);
    (u as Vertex, v as Vertex)
}

/// Immutable sparse undirected graph with sorted adjacency lists.
///
/// Invariants: no self-loops, no parallel edges, symmetric adjacency and
/// `m` equal to half the degree sum. Construction through [`Graph::from_edges`]
/// enforces them; generator code paths produce them by construction.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, validating all invariants.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_checked(u, v)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Builds a graph from pairs already known to be distinct, in-range and
    /// loop-free (generator output).
    pub(crate) fn from_pairs_unchecked(n: usize, pairs: &[(Vertex, Vertex)]) -> Self {
        let mut deg = vec![0u32; n];
        for &(u, v) in pairs {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut adj: Vec<Vec<Vertex>> = deg.iter().map(|&d| Vec::with_capacity(d as usize)).collect();
        for &(u, v) in pairs {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
        }
        Graph { adj, m: pairs.len() }
    }

    fn insert_checked(&mut self, u: Vertex, v: Vertex) -> Result<(), Error> {
        let n = self.n();
        if u as usize >= n || v as usize >= n {
            return Err(Error::Parameter(format!(
                "edge ({u},{v}) out of range for n={n}"
            )));
        }
        if u == v {
            return Err(Error::Parameter(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) || self.adj[u as usize].contains(&v) {
            return Err(Error::Parameter(format!("duplicate edge ({u},{v})")));
        }
        self.adj[u as usize].push(v);
        self.adj[v as usize].push(u);
        self.m += 1;
        Ok(())
    }

    /// Inserts a new edge, keeping adjacency sorted. Process-simulation use.
    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v && !self.has_edge(u, v));
        let pos = self.adj[u as usize].partition_point(|&x| x < v);
        self.adj[u as usize].insert(pos, v);
        let pos = self.adj[v as usize].partition_point(|&x| x < u);
        self.adj[v as usize].insert(pos, u);
        self.m += 1;
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n() as Vertex)
            .flat_map(move |u| self.adj[u as usize].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n() as Vertex
    }

    /// Degree histogram entry: number of vertices of degree exactly `i`.
    pub fn degree_count(&self, i: usize) -> usize {
        self.adj.iter().filter(|l| l.len() == i).count()
    }

    /// Writes the graph text format: `n m` on the first line, then one
    /// `u v` pair per line with `u < v`, 0-indexed, newline-terminated.
    pub fn write_text<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.n(), self.m())?;
        for (u, v) in self.edges() {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    /// Reads the graph text format, rejecting malformed, duplicate or
    /// out-of-range pairs with the offending line number.
    pub fn read_text<R: BufRead>(r: &mut R) -> Result<Self, Error> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let header = header?;
        let mut it = header.split_whitespace();
        let parse = |tok: Option<&str>, line: usize| -> Result<u64, Error> {
            tok.ok_or(Error::Parse { line, msg: "expected two integers".into() })?
                .parse::<u64>()
                .map_err(|e| Error::Parse { line, msg: e.to_string() })
        };
        let n = parse(it.next(), 1)? as usize;
        let m = parse(it.next(), 1)? as usize;
        if it.next().is_some() {
            return Err(Error::Parse { line: 1, msg: "trailing tokens in header".into() });
        }
        let mut g = Graph::empty(n);
        let mut count = 0usize;
        for (i, line) in lines {
            let lineno = i + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let u = parse(it.next(), lineno)?;
            let v = parse(it.next(), lineno)?;
            if it.next().is_some() {
                return Err(Error::Parse { line: lineno, msg: "trailing tokens".into() });
            }
            if u >= v {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("pair must satisfy u < v, got {u} {v}"),
                });
            }
            g.insert_checked(u as Vertex, v as Vertex).map_err(|e| Error::Parse {
                line: lineno,
                msg: e.to_string(),
            })?;
            count += 1;
        }
        if count != m {
            return Err(Error::Parse {
                line: count + 1,
                msg: format!("header declares {m} edges, found {count}"),
            });
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }
}

/// Samples `G(n, p)`: every pair present independently with probability `p`.
///
/// Uses geometric skipping over the colexicographic pair sequence, so the
/// expected cost is `O(m)` rather than `O(n^2)`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, Error> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::Parameter(format!("probability p={p} outside [0,1]")));
    }
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let total = n_choose_2(n);
    if p == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        let pairs: Vec<_> = (0..total).map(pair_at).collect();
        return Ok(Graph::from_pairs_unchecked(n, &pairs));
    }
    let mut rng = rng_from_seed(seed);
    let lq = (1.0 - p).ln();
    let mut pairs = Vec::new();
    let mut pos: u64 = 0;
    loop {
        let u: f64 = rng.random();
        let gap = ((1.0 - u).ln() / lq).floor();
        pos = pos.saturating_add(if gap >= total as f64 { total } else { gap as u64 });
        if pos >= total {
            break;
        }
        pairs.push(pair_at(pos));
        pos += 1;
        if pos >= total {
            break;
        }
    }
    Ok(Graph::from_pairs_unchecked(n, &pairs))
}

/// Samples `G(n, m)`: a uniformly random graph with exactly `m` edges.
///
/// Floyd's sampling draws `m` distinct pair indices without replacement in
/// `O(m)` expected time and memory.
pub fn gen_gnm(n: usize, m: usize, seed: u64) -> Result<Graph, Error> {
    let total = n_choose_2(n);
    if m as u64 > total {
        return Err(Error::Parameter(format!(
            "m={m} exceeds C({n},2)={total}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut chosen: std::collections::HashSet<u64> = std::collections::HashSet::with_capacity(m * 2);
    let mut pairs = Vec::with_capacity(m);
    for j in (total - m as u64)..total {
        let t = rng.random_range(0..=j);
        let idx = if chosen.insert(t) { t } else {
            chosen.insert(j);
            j
        };
        pairs.push(pair_at(idx));
    }
    Ok(Graph::from_pairs_unchecked(n, &pairs))
}

/// The random graph process on `[n]`: a uniformly random permutation of all
/// `C(n,2)` vertex pairs, produced lazily.
///
/// The permutation is materialised on demand by Fisher-Yates with stored
/// swap state, so memory grows with the number of drawn edges, not with
/// `C(n,2)`. A prefix of length `t` induces exactly the process graph `G_t`,
/// and two streams with equal `(n, seed)` are identical.
pub struct EdgeStream {
    n: usize,
    total: u64,
    t: u64,
    swaps: HashMap<u64, u64>,
    rng: DetRng,
    seed: u64,
}

impl EdgeStream {
    pub fn new(n: usize, seed: u64) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::Parameter(format!("process needs n >= 2, got {n}")));
        }
        Ok(EdgeStream {
            n,
            total: n_choose_2(n),
            t: 0,
            swaps: HashMap::new(),
            rng: rng_from_seed(seed),
            seed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of edges drawn so far.
    pub fn position(&self) -> u64 {
        self.t
    }

    /// Total number of pairs, `C(n,2)`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Draws the next edge of the process, or `None` when exhausted.
    pub fn next_edge(&mut self) -> Option<(Vertex, Vertex)> {
        if self.t >= self.total {
            return None;
        }
        let j = self.rng.random_range(self.t..self.total);
        let idx = if j == self.t {
            self.swaps.remove(&j).unwrap_or(j)
        } else {
            let vj = self.swaps.remove(&j).unwrap_or(j);
            let vt = self.swaps.remove(&self.t).unwrap_or(self.t);
            self.swaps.insert(j, vt);
            vj
        };
        self.t += 1;
        Some(pair_at(idx))
    }

    /// Materialises the process graph `G_t` for a fresh `(n, seed)` stream.
    pub fn prefix_graph(n: usize, seed: u64, t: u64) -> Result<Graph, Error> {
        let mut s = EdgeStream::new(n, seed)?;
        if t > s.total() {
            return Err(Error::Parameter(format!(
                "prefix length {t} exceeds C({n},2)={}",
                s.total()
            )));
        }
        let mut pairs = Vec::with_capacity(t as usize);
        for _ in 0..t {
            pairs.push(s.next_edge().expect("within total"));
        }
        Ok(Graph::from_pairs_unchecked(n, &pairs))
    }
}

impl Iterator for EdgeStream {
    type Item = (Vertex, Vertex);

    fn next(&mut self) -> Option<(Vertex, Vertex)> {
        self.next_edge()
    }
}

/// Breadth-first layers around `v`: element `j` is the set of vertices at
/// distance exactly `j`, for `j` in `0..=k`. Layers are sorted.
pub fn bfs_layers(g: &Graph, v: Vertex, k: usize) -> Vec<Vec<Vertex>> {
    let mut dist: Vec<i32> = vec![-1; g.n()];
    let mut layers: Vec<Vec<Vertex>> = Vec::with_capacity(k + 1);
    dist[v as usize] = 0;
    let mut frontier = vec![v];
    layers.push(frontier.clone());
    for depth in 1..=k {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if dist[w as usize] < 0 {
                    dist[w as usize] = depth as i32;
                    next.push(w);
                }
            }
        }
        next.sort_unstable();
        layers.push(next.clone());
        frontier = next;
    }
    layers
}
