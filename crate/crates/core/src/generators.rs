//! Deterministic synthetic graph constructors used as fixtures and
//! benchmark inputs. All edges are tagged `Original`.

use crate::error::{Error, Result};
use crate::graph::{Graph, RelationTag};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn param(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

fn add_clique(g: &mut Graph, lo: usize, hi: usize) {
    for i in lo..hi {
        for j in (i + 1)..hi {
            g.add_edge(i, j, RelationTag::Original).unwrap();
        }
    }
}

/// Two cliques K_c joined by a path of `path_len` edges between node 0
/// of the first clique and node 0 of the second (`path_len - 1` fresh
/// intermediate nodes). n = 2c + l - 1, m = c(c-1) + l.
pub fn dumbbell(clique_size: usize, path_len: usize) -> Result<Graph> {
    param(clique_size >= 2, "dumbbell clique size must be >= 2")?;
    param(path_len >= 1, "dumbbell path length must be >= 1")?;
    let c = clique_size;
    let n = 2 * c + path_len - 1;
    let mut g = Graph::empty(n);
    add_clique(&mut g, 0, c);
    add_clique(&mut g, c, 2 * c);
    // path 0 -> 2c, 2c+1, ..., 2c+l-2 -> c
    let mut prev = 0;
    for i in 0..(path_len - 1) {
        let mid = 2 * c + i;
        g.add_edge(prev, mid, RelationTag::Original).unwrap();
        prev = mid;
    }
    g.add_edge(prev, c, RelationTag::Original).unwrap();
    Ok(g)
}

/// `num_cliques` disjoint K_c cliques chained by single bridge edges
/// (last node of clique i to first node of clique i+1).
pub fn path_of_cliques(num_cliques: usize, clique_size: usize) -> Result<Graph> {
    param(num_cliques >= 2, "path_of_cliques needs >= 2 cliques")?;
    param(clique_size >= 2, "path_of_cliques clique size must be >= 2")?;
    let (q, c) = (num_cliques, clique_size);
    let mut g = Graph::empty(q * c);
    for b in 0..q {
        add_clique(&mut g, b * c, (b + 1) * c);
    }
    for b in 0..(q - 1) {
        g.add_edge((b + 1) * c - 1, (b + 1) * c, RelationTag::Original)
            .unwrap();
    }
    Ok(g)
}

/// Each pair `(u, v)` included independently with probability `p`,
/// deterministic per seed. Pairs are visited in lexicographic order.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    param(n >= 2, "erdos_renyi needs n >= 2")?;
    param(p > 0.0 && p <= 1.0, "erdos_renyi needs 0 < p <= 1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                g.add_edge(u, v, RelationTag::Original).unwrap();
            }
        }
    }
    Ok(g)
}

/// Edge probability used by the timing benchmarks: p = 5 ln(n) / n.
pub fn er_paper_probability(n: usize) -> f64 {
    (5.0 * (n as f64).ln() / n as f64).min(1.0)
}

/// Erdos-Renyi graph with p = 5 ln(n) / n.
pub fn er_paper(n: usize, seed: u64) -> Result<Graph> {
    erdos_renyi(n, er_paper_probability(n), seed)
}

pub fn complete(n: usize) -> Result<Graph> {
    param(n >= 2, "complete graph needs n >= 2")?;
    let mut g = Graph::empty(n);
    add_clique(&mut g, 0, n);
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph> {
    param(n >= 2, "path needs n >= 2")?;
    let mut g = Graph::empty(n);
    for i in 0..(n - 1) {
        g.add_edge(i, i + 1, RelationTag::Original).unwrap();
    }
    Ok(g)
}

pub fn ring(n: usize) -> Result<Graph> {
    param(n >= 3, "ring needs n >= 3")?;
    let mut g = Graph::empty(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, RelationTag::Original).unwrap();
    }
    Ok(g)
}

/// Hub (node 0) connected to `leaves` leaf nodes; n = leaves + 1.
pub fn star(leaves: usize) -> Result<Graph> {
    param(leaves >= 1, "star needs >= 1 leaf")?;
    let mut g = Graph::empty(leaves + 1);
    for i in 1..=leaves {
        g.add_edge(0, i, RelationTag::Original).unwrap();
    }
    Ok(g)
}
