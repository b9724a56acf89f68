//! Brute-force ground truth on small instances.
//!
//! Everything here is exact and deliberately simple: subset dynamic
//! programming over `(mask, endpoint)` states, with hard size caps. These
//! routines are the reference that the scalable algorithms are tested
//! against; they share no code with them.

// index loops double as vertex ids inside the bitmask DP
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::{Graph, Vertex};

/// Size cap for [`brute_mu`] and [`brute_hamiltonian`].
pub const MU_CAP: usize = 16;
/// Size cap for [`brute_spectrum`].
pub const SPECTRUM_CAP: usize = 14;
/// Size cap for [`brute_mu_hat`].
pub const MU_HAT_CAP: usize = 7;

/// Exact small-instance summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// Exact Hamiltonicity completion number.
    pub mu: usize,
    pub hamiltonian: bool,
    /// All cycle lengths achieved by the graph.
    pub spectrum: BTreeSet<usize>,
    /// Exact pancyclicity completion number, when `n` is small enough.
    pub mu_hat: Option<usize>,
}

/// Computes the full report for `n <= 14` (with `mu_hat` for `n <= 7`).
pub fn report(g: &Graph) -> Result<OracleReport, Error> {
    Ok(OracleReport {
        mu: brute_mu(g)?,
        hamiltonian: brute_hamiltonian(g)?,
        spectrum: brute_spectrum(g)?,
        mu_hat: if g.n() <= MU_HAT_CAP { Some(brute_mu_hat(g)?) } else { None },
    })
}

fn adj_masks(g: &Graph) -> Vec<u32> {
    let mut masks = vec![0u32; g.n()];
    for v in 0..g.n() {
        for &u in g.neighbors(v as Vertex) {
            masks[v] |= 1 << u;
        }
    }
    masks
}

fn check_cap(n: usize, cap: usize, what: &'static str) -> Result<(), Error> {
    if n > cap {
        return Err(Error::Capacity { what, size: n, cap });
    }
    Ok(())
}

/// Exact Hamiltonicity test for `n <= 16`. Graphs with fewer than three
/// vertices are not Hamiltonian (cycles need at least three vertices).
pub fn brute_hamiltonian(g: &Graph) -> Result<bool, Error> {
    let n = g.n();
    check_cap(n, MU_CAP, "hamiltonicity instance")?;
    if n < 3 {
        return Ok(false);
    }
    let adj = adj_masks(g);
    if adj.contains(&0) {
        return Ok(false);
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    // ends[mask] = endpoints of paths that start at vertex 0 and span mask.
    let mut ends = vec![0u16; 1 << n];
    ends[1] = 1;
    for mask in 1u32..=full {
        if mask & 1 == 0 || ends[mask as usize] == 0 {
            continue;
        }
        let e = ends[mask as usize];
        for v in 0..n {
            if e >> v & 1 == 0 {
                continue;
            }
            let mut ext = adj[v] & !mask;
            while ext != 0 {
                let w = ext.trailing_zeros();
                ends[(mask | 1 << w) as usize] |= 1 << w;
                ext &= ext - 1;
            }
        }
    }
    let closers = ends[full as usize] & (adj[0] as u16);
    Ok(closers != 0)
}

/// Exact cycle spectrum for `n <= 14`: all lengths in `[3, n]` realised by
/// some cycle of `g`.
pub fn brute_spectrum(g: &Graph) -> Result<BTreeSet<usize>, Error> {
    let n = g.n();
    check_cap(n, SPECTRUM_CAP, "spectrum instance")?;
    let adj = adj_masks(g);
    Ok(spectrum_masks(&adj, n))
}

fn spectrum_masks(adj: &[u32], n: usize) -> BTreeSet<usize> {
    let mut spectrum = BTreeSet::new();
    if n < 3 {
        return spectrum;
    }
    // ends[mask] = endpoints of paths spanning mask that start at min(mask);
    // extensions only add vertices above the start, so every cycle is
    // enumerated once from its smallest vertex.
    let full = (1usize << n) - 1;
    let mut ends = vec![0u16; full + 1];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        let start = mask.trailing_zeros() as usize;
        let size = mask.count_ones() as usize;
        if size >= 3 {
            let mut closers = e & (adj[start] as u16);
            closers &= !(1 << start);
            if closers != 0 {
                spectrum.insert(size);
            }
        }
        for v in 0..n {
            if e >> v & 1 == 0 {
                continue;
            }
            let mut ext = adj[v] as usize & !mask & !((1 << (start + 1)) - 1);
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ends[mask | 1 << w] |= 1 << w;
                ext &= ext - 1;
            }
        }
    }
    spectrum
}

/// Exact completion number for `n <= 16`: `0` for Hamiltonian graphs, and
/// otherwise the minimum size of a disjoint path cover of `V(g)`.
///
/// For `n <= 2` the value is undefined (there is no cycle to complete to)
/// and a parameter error is returned.
pub fn brute_mu(g: &Graph) -> Result<usize, Error> {
    let n = g.n();
    check_cap(n, MU_CAP, "completion-number instance")?;
    if n <= 2 {
        return Err(Error::Parameter(format!("mu undefined for n = {n} <= 2")));
    }
    if brute_hamiltonian(g)? {
        return Ok(0);
    }
    Ok(min_path_cover(&adj_masks(g), n))
}

/// Minimum number of vertex-disjoint paths (length 0 allowed) covering all
/// vertices, by subset DP.
fn min_path_cover(adj: &[u32], n: usize) -> usize {
    let full = (1usize << n) - 1;
    // span[mask] = endpoints v such that one path covers exactly mask.
    let mut span = vec![0u32; full + 1];
    for v in 0..n {
        span[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut s = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if span[mask & !(1 << v)] & adj[v] != 0 {
                s |= 1 << v;
            }
        }
        span[mask] = s;
    }
    let mut best = vec![u32::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        // enumerate submasks of mask containing the lowest set bit
        let rest = mask & !low;
        let mut sub = rest;
        loop {
            let piece = sub | low;
            if (piece.count_ones() == 1 || span[piece] != 0) && best[mask & !piece] != u32::MAX {
                best[mask] = best[mask].min(best[mask & !piece] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full] as usize
}

/// Exact pancyclicity completion number for `n <= 7`, by breadth-first
/// search over added-edge subsets ordered by size.
pub fn brute_mu_hat(g: &Graph) -> Result<usize, Error> {
    let n = g.n();
    check_cap(n, MU_HAT_CAP, "pancyclicity instance")?;
    if n <= 2 {
        return Err(Error::Parameter(format!("mu_hat undefined for n = {n} <= 2")));
    }
    let base = adj_masks(g);
    let mut non_edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if base[u] >> v & 1 == 0 {
                non_edges.push((u, v));
            }
        }
    }
    let want: BTreeSet<usize> = (3..=n).collect();
    let is_pancyclic = |extra: &[usize]| {
        let mut adj = base.clone();
        for &i in extra {
            let (u, v) = non_edges[i];
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        spectrum_masks(&adj, n) == want
    };
    for k in 0..=non_edges.len() {
        let mut found = false;
        combinations(non_edges.len(), k, &mut |chosen| {
            if !found && is_pancyclic(chosen) {
                found = true;
            }
        });
        if found {
            return Ok(k);
        }
    }
    unreachable!("the complete graph is pancyclic for n >= 3")
}

/// Calls `f` on every k-subset of `0..n`, in lexicographic order.
fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=(n - need) {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    if k > n {
        return;
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_gnp, trial_seed};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| {
            let j = (i + 1) % n;
            (i.min(j) as Vertex, i.max(j) as Vertex)
        }))
        .unwrap()
    }

    fn star13() -> Graph {
        Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5u32 {
            e.push((i.min((i + 1) % 5), i.max((i + 1) % 5)));
            e.push((i, i + 5));
            let j = 5 + (i + 2) % 5;
            e.push(((i + 5).min(j), (i + 5).max(j)));
        }
        Graph::from_edges(10, e).unwrap()
    }

    #[test]
    fn mu_spot_values() {
        assert_eq!(brute_mu(&cycle(5)).unwrap(), 0);
        assert_eq!(brute_mu(&star13()).unwrap(), 2);
        assert_eq!(brute_mu(&Graph::empty(4)).unwrap(), 4);
        assert!(brute_mu(&Graph::empty(2)).is_err());
        assert!(brute_mu(&Graph::empty(17)).is_err());
    }

    #[test]
    fn spectrum_spot_values() {
        let k5 = gen_gnp(5, 1.0, 0).unwrap();
        assert_eq!(brute_spectrum(&k5).unwrap(), BTreeSet::from([3, 4, 5]));
        assert_eq!(brute_spectrum(&cycle(6)).unwrap(), BTreeSet::from([6]));
        assert!(brute_hamiltonian(&k5).unwrap());
    }

    #[test]
    fn petersen_is_not_hamiltonian() {
        let p = petersen();
        assert!(!brute_hamiltonian(&p).unwrap());
        // hypomatchable classic: it does have a Hamilton path, so mu = 1
        assert_eq!(brute_mu(&p).unwrap(), 1);
        assert!(brute_spectrum(&p).unwrap().contains(&5));
        assert!(!brute_spectrum(&p).unwrap().contains(&3));
    }

    #[test]
    fn mu_hat_spot_values() {
        let k5 = gen_gnp(5, 1.0, 0).unwrap();
        assert_eq!(brute_mu_hat(&k5).unwrap(), 0);
        // C6 needs two chords for lengths 3,4,5
        assert_eq!(brute_mu_hat(&cycle(6)).unwrap(), 2);
        let mh = brute_mu_hat(&Graph::empty(4)).unwrap();
        assert!(mh >= brute_mu(&Graph::empty(4)).unwrap());
    }

    #[test]
    fn mu_monotone_under_edge_addition() {
        // adding one edge reduces the cover need by at most 1
        let mut checked = 0;
        for seed in 0..300u64 {
            let g = gen_gnp(8, 0.25, trial_seed(777, seed)).unwrap();
            let mu = brute_mu(&g).unwrap();
            let mut pairs = Vec::new();
            for u in 0..8u32 {
                for v in (u + 1)..8 {
                    if !g.has_edge(u, v) {
                        pairs.push((u, v));
                    }
                }
            }
            if let Some(&(u, v)) = pairs.first() {
                let mut edges: Vec<_> = g.edges().collect();
                edges.push((u, v));
                let g2 = Graph::from_edges(8, edges).unwrap();
                let mu2 = brute_mu(&g2).unwrap();
                assert!(mu2 >= mu.saturating_sub(1), "mu {mu} -> {mu2}");
                assert!(mu2 <= mu);
                checked += 1;
            }
        }
        assert!(checked > 200);
    }

    #[test]
    fn mu_on_linear_forests_counts_components() {
        // a disjoint union of paths needs exactly one edge per component
        let mut rng_seed = 0u64;
        for _ in 0..50 {
            rng_seed += 1;
            use rand::Rng;
            let mut rng = crate::graph::rng_from_seed(rng_seed);
            let n = rng.random_range(3..14usize);
            let mut edges = Vec::new();
            let mut comps = 0;
            let mut i = 0;
            while i < n {
                let len = rng.random_range(1..=(n - i).min(4));
                for j in 0..len - 1 {
                    edges.push(((i + j) as Vertex, (i + j + 1) as Vertex));
                }
                comps += 1;
                i += len;
            }
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(brute_mu(&g).unwrap(), comps, "n={n} comps={comps}");
        }
    }

    #[test]
    fn mu_hat_dominates_mu() {
        for seed in 0..60u64 {
            let g = gen_gnp(6, 0.4, trial_seed(31337, seed)).unwrap();
            let mu = brute_mu(&g).unwrap();
            let mu_hat = brute_mu_hat(&g).unwrap();
            assert!(mu_hat >= mu);
        }
    }
}
