//! Normalized-adjacency operators, power iteration with deflation, exact
//! dense eigensolving, Dirichlet energy, and Cheeger-constant machinery.
//!
//! The normalized adjacency is A_N = D^(-1/2) A D^(-1/2); the normalized
//! Laplacian is L = I - A_N with spectrum in [0, 2] and kernel spanned by
//! sqrt(d) on connected graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Default node-count guard for O(n^3) dense eigensolves.
pub const DEFAULT_DENSE_GUARD: usize = 2000;

/// Dense-solver guard, overridable via SPECTRAL_REWIRE_DENSE_GUARD.
pub fn dense_guard() -> usize {
    std::env::var("SPECTRAL_REWIRE_DENSE_GUARD")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_DENSE_GUARD)
}

fn check_guard(n: usize) -> Result<()> {
    let guard = dense_guard();
    if n > guard {
        Err(Error::GraphTooLarge { n, guard })
    } else {
        Ok(())
    }
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if len != n {
        Err(Error::DimensionMismatch {
            expected: n,
            got: len,
        })
    } else {
        Ok(())
    }
}

/// Entry-wise square root of the degree vector (the Perron direction of
/// A_N, with squared norm 2m).
pub fn sqrt_degrees(g: &Graph) -> Vec<f64> {
    g.degrees().iter().map(|&d| (d as f64).sqrt()).collect()
}

/// y = A_N x in one sparse pass: y_i = sum over j in N(i) of
/// x_j / sqrt(d_i d_j).
pub fn normalized_adjacency_apply(g: &Graph, x: &[f64]) -> Result<Vec<f64>> {
    g.check_no_isolated()?;
    let n = g.node_count();
    check_len(n, x.len())?;
    let inv_sqrt_d: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for &j in g.neighbors(i) {
            acc += x[j] * inv_sqrt_d[j];
        }
        y[i] = acc * inv_sqrt_d[i];
    }
    Ok(y)
}

/// One power-iteration step in the deflated subspace: applies A_N,
/// subtracts the projection onto sqrt(d) (using <sqrt(d), sqrt(d)> = 2m),
/// and renormalizes.
pub fn deflate_and_normalize(g: &Graph, x: &[f64]) -> Result<Vec<f64>> {
    let mut y = normalized_adjacency_apply(g, x)?;
    let sq = sqrt_degrees(g);
    let two_m = 2.0 * g.edge_count() as f64;
    let proj = dot(x, &sq) / two_m;
    for (yi, si) in y.iter_mut().zip(&sq) {
        *yi -= proj * si;
    }
    let norm = norm2(&y);
    if norm < 1e-14 {
        return Err(Error::DegenerateVector(norm));
    }
    for yi in y.iter_mut() {
        *yi /= norm;
    }
    Ok(y)
}

/// Power-iteration approximation of the second eigenvector of A_N.
#[derive(Debug, Clone)]
pub struct SpectralEstimate {
    /// Unit vector approximating the dominant deflated eigenvector.
    pub x: Vec<f64>,
    /// x' A_N x.
    pub rayleigh: f64,
    /// Norm of the deflated residual A_N x - rayleigh x.
    pub residual: f64,
    /// Power steps performed.
    pub iterations: usize,
}

/// Initial vector for power iteration.
#[derive(Debug, Clone)]
pub enum PowerInit {
    /// Standard-normal entries from a seeded PRNG, then deflated and
    /// normalized.
    Seed(u64),
    Vector(Vec<f64>),
}

/// Draws a standard-normal vector, removes the sqrt(d) component, and
/// normalizes.
pub fn seeded_start(g: &Graph, seed: u64) -> Result<Vec<f64>> {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let sq = sqrt_degrees(g);
    let two_m = 2.0 * g.edge_count() as f64;
    if two_m > 0.0 {
        let proj = dot(&x, &sq) / two_m;
        for (xi, si) in x.iter_mut().zip(&sq) {
            *xi -= proj * si;
        }
    }
    let norm = norm2(&x);
    if norm < 1e-14 {
        return Err(Error::DegenerateVector(norm));
    }
    for xi in x.iter_mut() {
        *xi /= norm;
    }
    Ok(x)
}

/// Runs `iters` deflated power steps. A degenerate start triggers one
/// automatic reseed before the error propagates.
pub fn second_eigen_power(g: &Graph, iters: usize, init: PowerInit) -> Result<SpectralEstimate> {
    g.check_no_isolated()?;
    let (x0, reseed) = match init {
        PowerInit::Seed(s) => (seeded_start(g, s)?, s.wrapping_add(1)),
        PowerInit::Vector(v) => {
            check_len(g.node_count(), v.len())?;
            (v, 1)
        }
    };
    match power_loop(g, iters, &x0) {
        Err(Error::DegenerateVector(_)) => {
            let retry = seeded_start(g, reseed)?;
            power_loop(g, iters, &retry)
        }
        other => other,
    }
}

fn power_loop(g: &Graph, iters: usize, x0: &[f64]) -> Result<SpectralEstimate> {
    let mut x = x0.to_vec();
    for _ in 0..iters {
        x = deflate_and_normalize(g, &x)?;
    }
    let ax = normalized_adjacency_apply(g, &x)?;
    let rayleigh = dot(&x, &ax);
    // residual measured inside the deflated subspace
    let sq = sqrt_degrees(g);
    let two_m = 2.0 * g.edge_count() as f64;
    let proj = dot(&ax, &sq) / two_m;
    let mut r = ax;
    for ((ri, &xi), &si) in r.iter_mut().zip(&x).zip(&sq) {
        *ri -= rayleigh * xi + proj * si;
    }
    Ok(SpectralEstimate {
        x,
        rayleigh,
        residual: norm2(&r),
        iterations: iters,
    })
}

/// Dense A_N.
pub fn normalized_adjacency_dense(g: &Graph) -> Result<DMatrix<f64>> {
    g.check_no_isolated()?;
    let n = g.node_count();
    let inv_sqrt_d: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut a = DMatrix::zeros(n, n);
    for &(u, v, _) in g.edges() {
        let w = inv_sqrt_d[u] * inv_sqrt_d[v];
        a[(u, v)] = w;
        a[(v, u)] = w;
    }
    Ok(a)
}

/// Dense L = I - A_N.
pub fn normalized_laplacian_dense(g: &Graph) -> Result<DMatrix<f64>> {
    let mut l = -normalized_adjacency_dense(g)?;
    for i in 0..g.node_count() {
        l[(i, i)] += 1.0;
    }
    Ok(l)
}

/// Eigenvalues (ascending) and matching eigenvector columns of a dense
/// symmetric matrix.
pub fn symmetric_eigen_sorted(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Ascending spectrum of the normalized Laplacian.
pub fn laplacian_spectrum(g: &Graph) -> Result<Vec<f64>> {
    check_guard(g.node_count())?;
    let (values, _) = symmetric_eigen_sorted(normalized_laplacian_dense(g)?);
    Ok(values)
}

/// Exact spectral gap lambda_2(L) via a dense symmetric eigensolve.
/// Returns 0 for disconnected graphs (tiny negative round-off clamped).
pub fn spectral_gap_exact(g: &Graph) -> Result<f64> {
    let values = laplacian_spectrum(g)?;
    Ok(values[1].max(0.0))
}

/// Second-largest eigenpair of A_N (the eigenvalue Alg-style power
/// iteration targets), from the dense solver.
pub fn adjacency_second_eigenpair(g: &Graph) -> Result<(f64, Vec<f64>)> {
    check_guard(g.node_count())?;
    let n = g.node_count();
    let (values, vectors) = symmetric_eigen_sorted(normalized_adjacency_dense(g)?);
    let lambda = values[n - 2];
    let x = vectors.column(n - 2).iter().copied().collect();
    Ok((lambda, x))
}

/// Dirichlet energy tr(X' L X), computed edge-wise.
pub fn dirichlet_energy(g: &Graph, x: &DMatrix<f64>) -> Result<f64> {
    g.check_no_isolated()?;
    check_len(g.node_count(), x.nrows())?;
    let inv_sqrt_d: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut energy = 0.0;
    for &(i, j, _) in g.edges() {
        for k in 0..x.ncols() {
            let diff = x[(i, k)] * inv_sqrt_d[i] - x[(j, k)] * inv_sqrt_d[j];
            energy += diff * diff;
        }
    }
    Ok(energy)
}

/// Exact Cheeger constant of a small connected graph.
#[derive(Debug, Clone)]
pub struct CheegerReport {
    /// min over nonempty proper subsets of |boundary| / min(vol, vol-bar).
    pub h: f64,
    /// A minimizing subset (sorted node indices).
    pub cut: Vec<usize>,
    /// Spectral gap lambda_2(L).
    pub lambda2: f64,
    /// lambda2/2 <= h <= sqrt(2 lambda2).
    pub bounds_ok: bool,
}

/// Brute-force Cheeger constant over the 2^(n-1) subsets containing
/// node 0 (complement symmetry covers the rest).
pub fn cheeger_bruteforce(g: &Graph) -> Result<CheegerReport> {
    let n = g.node_count();
    if n > 20 {
        return Err(Error::GraphTooLarge { n, guard: 20 });
    }
    if n < 2 || !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let adj_mask: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let deg = g.degrees();
    let vol_total: usize = 2 * g.edge_count();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    let mut best = f64::INFINITY;
    let mut best_set: u32 = 0;
    // subsets containing node 0, excluding the full set
    for rest in 0..(1u32 << (n - 1)) {
        let s = (rest << 1) | 1;
        if s == full {
            continue;
        }
        let mut boundary = 0u32;
        let mut vol = 0usize;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            boundary += (adj_mask[v] & !s).count_ones();
            vol += deg[v];
        }
        let ratio = boundary as f64 / vol.min(vol_total - vol) as f64;
        if ratio < best {
            best = ratio;
            best_set = s;
        }
    }
    let cut: Vec<usize> = (0..n).filter(|&v| best_set & (1 << v) != 0).collect();
    let lambda2 = spectral_gap_exact(g)?;
    let bounds_ok = lambda2 / 2.0 <= best + 1e-9 && best <= (2.0 * lambda2).sqrt() + 1e-9;
    Ok(CheegerReport {
        h: best,
        cut,
        lambda2,
        bounds_ok,
    })
}

/// Rayleigh quotient x' L x / x' x for a vector already orthogonal to
/// sqrt(d); an upper-bound certificate for lambda_2(L).
pub fn variational_gap_check(g: &Graph, x: &[f64]) -> Result<f64> {
    g.check_no_isolated()?;
    let n = g.node_count();
    check_len(n, x.len())?;
    let xx = dot(x, x);
    if xx == 0.0 {
        return Err(Error::ZeroVector);
    }
    let sq = sqrt_degrees(g);
    let overlap = dot(x, &sq).abs();
    let scale = xx.sqrt() * norm2(&sq);
    if overlap > 1e-10 * scale {
        return Err(Error::NotDeflated(overlap));
    }
    let inv_sqrt_d: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut num = 0.0;
    for &(i, j, _) in g.edges() {
        let diff = x[i] * inv_sqrt_d[i] - x[j] * inv_sqrt_d[j];
        num += diff * diff;
    }
    Ok(num / xx)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[allow(dead_code)]
pub(crate) fn to_dvector(x: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(x)
}
