//! Linear relational convolution layers, the rate-of-smoothing
//! functional, and its verification on the alpha-construction
//! phi = I - alpha L.

use crate::error::{Error, Result};
use crate::graph::{Graph, RelationTag};
use crate::spectral::{
    self, normalized_laplacian_dense, symmetric_eigen_sorted,
};
use nalgebra::{DMatrix, DVector};
use std::collections::BTreeMap;

/// Threshold below which a Laplacian eigenvalue counts as kernel.
const KERNEL_TOL: f64 = 1e-9;

/// Weights of a linear relational layer
/// phi(X) = X Theta + sum_r D^(-1/2) A_r D^(-1/2) X Theta_r,
/// with D the degree matrix of the full graph.
#[derive(Debug, Clone)]
pub struct LinearLayerSpec {
    pub theta: DMatrix<f64>,
    pub theta_r: BTreeMap<RelationTag, DMatrix<f64>>,
    /// Set for the alpha-construction Theta = (1-alpha) I,
    /// Theta_1 = Theta_2 = alpha I.
    pub alpha: Option<f64>,
}

impl LinearLayerSpec {
    pub fn new(theta: DMatrix<f64>, theta_r: BTreeMap<RelationTag, DMatrix<f64>>) -> Self {
        LinearLayerSpec {
            theta,
            theta_r,
            alpha: None,
        }
    }

    /// Theta = (1-alpha) I with Theta_1 = Theta_2 = alpha I, the weights
    /// realizing smoothing rate alpha * lambda_2.
    pub fn alpha_construction(width: usize, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        let eye = DMatrix::identity(width, width);
        let mut theta_r = BTreeMap::new();
        theta_r.insert(RelationTag::Original, alpha * &eye);
        theta_r.insert(RelationTag::Added, alpha * &eye);
        Ok(LinearLayerSpec {
            theta: (1.0 - alpha) * eye,
            theta_r,
            alpha: Some(alpha),
        })
    }
}

/// Suprema defining the rate of smoothing of a linear layer, plus the
/// spectral gap of the underlying graph.
#[derive(Debug, Clone)]
pub struct SmoothingReport {
    /// sup of E(phi(X)) / E(X) over X with nonzero Dirichlet energy.
    pub energy_ratio_sup: f64,
    /// sup of the squared Frobenius gain, i.e. lambda_max(M' M).
    pub norm_ratio_sup: f64,
    /// 1 - sqrt(energy_ratio_sup / norm_ratio_sup).
    pub rate: f64,
    pub lambda2: f64,
}

/// Applies the linear relational layer. The degree normalization uses
/// the full graph's degrees for every relation.
pub fn rgcn_linear_apply(
    g: &Graph,
    x: &DMatrix<f64>,
    spec: &LinearLayerSpec,
) -> Result<DMatrix<f64>> {
    g.check_no_isolated()?;
    let n = g.node_count();
    if x.nrows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.nrows(),
        });
    }
    let p = x.ncols();
    if spec.theta.nrows() != p || spec.theta.ncols() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            got: spec.theta.nrows(),
        });
    }
    let inv_sqrt_d: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();

    let mut out = x * &spec.theta;
    // one normalized-adjacency pass per relation present in the graph
    let mut per_relation: BTreeMap<RelationTag, DMatrix<f64>> = BTreeMap::new();
    for &(u, v, tag) in g.edges() {
        let acc = per_relation
            .entry(tag)
            .or_insert_with(|| DMatrix::zeros(n, p));
        let w = inv_sqrt_d[u] * inv_sqrt_d[v];
        for k in 0..p {
            acc[(u, k)] += w * x[(v, k)];
            acc[(v, k)] += w * x[(u, k)];
        }
    }
    for (tag, prop) in per_relation {
        let theta_r = spec
            .theta_r
            .get(&tag)
            .ok_or(Error::UnknownRelation(tag.as_u8()))?;
        if theta_r.nrows() != p || theta_r.ncols() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                got: theta_r.nrows(),
            });
        }
        out += prop * theta_r;
    }
    Ok(out)
}

/// Rate of smoothing of the linear map X -> M X with respect to `g`.
///
/// Both suprema are computed analytically: the norm supremum is the top
/// eigenvalue of M'M, and the energy supremum is the top eigenvalue of
/// the pencil (M'LM, L) restricted to the complement of ker(L),
/// evaluated in L's eigenbasis. M must map ker(L) into ker(L); otherwise
/// the energy supremum is unbounded and `EnergyBlowup` is returned.
pub fn rate_of_smoothing(g: &Graph, m: &DMatrix<f64>) -> Result<SmoothingReport> {
    let n = g.node_count();
    let guard = spectral::dense_guard();
    if n > guard {
        return Err(Error::GraphTooLarge { n, guard });
    }
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.nrows(),
        });
    }
    let l = normalized_laplacian_dense(g)?;
    let (evals, u) = symmetric_eigen_sorted(l.clone());
    let lambda2 = evals[1].max(0.0);

    let kernel_dim = evals.iter().take_while(|&&v| v < KERNEL_TOL).count().max(1);
    let m_norm = m.norm();
    for k in 0..kernel_dim {
        let uk: DVector<f64> = u.column(k).into();
        let image = m * &uk;
        // E(M u_k) must vanish or the ratio sup is infinite
        let energy = (image.transpose() * &l * &image)[(0, 0)];
        if energy > 1e-12 * m_norm.powi(2).max(1.0) {
            return Err(Error::EnergyBlowup);
        }
    }

    // norm supremum: top eigenvalue of M'M
    let (mtm_vals, _) = symmetric_eigen_sorted(m.transpose() * m);
    let norm_ratio_sup = mtm_vals[n - 1].max(0.0);

    // energy supremum over the complement of ker(L): with X = U_+ S^(-1/2) c,
    // E(X) = |c|^2 and E(MX) = c' B c for
    // B = S^(-1/2) U_+' M' L M U_+ S^(-1/2)
    let r = n - kernel_dim;
    let energy_ratio_sup = if r == 0 {
        0.0
    } else {
        let u_plus = u.columns(kernel_dim, r).clone_owned();
        let inv_sqrt: Vec<f64> = evals[kernel_dim..].iter().map(|&v| 1.0 / v.sqrt()).collect();
        let mu = m * &u_plus;
        let mut b = mu.transpose() * &l * mu;
        for i in 0..r {
            for j in 0..r {
                b[(i, j)] *= inv_sqrt[i] * inv_sqrt[j];
            }
        }
        let (b_vals, _) = symmetric_eigen_sorted(b);
        b_vals[r - 1].max(0.0)
    };

    let rate = 1.0 - (energy_ratio_sup / norm_ratio_sup).sqrt();
    Ok(SmoothingReport {
        energy_ratio_sup,
        norm_ratio_sup,
        rate,
        lambda2,
    })
}

/// Builds the rewired graph, forms M = I - alpha L, and compares the
/// computed rate against alpha * lambda_2. The boolean reports whether
/// they agree within 1e-8.
pub fn verify_theorem1(
    g1: &Graph,
    added_edges: &[(usize, usize)],
    alpha: f64,
) -> Result<(SmoothingReport, bool)> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    let mut g2 = g1.clone();
    for &(u, v) in added_edges {
        g2.add_edge(u, v, RelationTag::Added)?;
    }
    if !g2.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let l = normalized_laplacian_dense(&g2)?;
    let m = DMatrix::identity(g2.node_count(), g2.node_count()) - alpha * l;
    let report = rate_of_smoothing(&g2, &m)?;
    let pass = (report.rate - alpha * report.lambda2).abs() <= 1e-8;
    Ok((report, pass))
}
