//! Gauss–Legendre and Gauss–Hermite rules via Golub–Welsch.
//!
//! Nodes come from the symmetric tridiagonal Jacobi matrix of the weight;
//! weights from the first eigenvector components. Orders stay modest
//! (≤ a few hundred), accuracy over speed.

use nalgebra::{DMatrix, SymmetricEigen};

/// A one-dimensional quadrature rule.
#[derive(Debug, Clone)]
pub struct Rule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> Rule1D {
    let n = diag.len();
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = diag[i];
        if i + 1 < n {
            j[(i, i + 1)] = offdiag[i];
            j[(i + 1, i)] = offdiag[i];
        }
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let x = eig.eigenvalues[k];
            let v0 = eig.eigenvectors[(0, k)];
            (x, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Rule1D {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> Rule1D {
    assert!(n >= 1);
    let diag = vec![0.0; n];
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    golub_welsch(&diag, &offdiag, 2.0)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Rule1D {
    let base = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Rule1D {
        nodes: base.nodes.iter().map(|x| mid + half * x).collect(),
        weights: base.weights.iter().map(|w| w * half).collect(),
    }
}

/// Gauss–Hermite rule for the weight exp(-x²) on the whole line.
pub fn gauss_hermite(n: usize) -> Rule1D {
    assert!(n >= 1);
    let diag = vec![0.0; n];
    let offdiag: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    golub_welsch(&diag, &offdiag, std::f64::consts::PI.sqrt())
}

/// Tensor product of a 1-D rule over `dim` axes.
///
/// Returns flattened nodes (dim coordinates each) with combined weights.
pub fn tensor(rule: &Rule1D, dim: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = rule.nodes.len();
    let total = n.pow(dim as u32);
    let mut nodes = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    for flat in 0..total {
        let mut idx = flat;
        let mut pt = Vec::with_capacity(dim);
        let mut w = 1.0;
        for _ in 0..dim {
            let i = idx % n;
            idx /= n;
            pt.push(rule.nodes[i]);
            w *= rule.weights[i];
        }
        nodes.push(pt);
        weights.push(w);
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(8);
        // ∫_{-1}^{1} x^6 dx = 2/7
        let v: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(6)).sum();
        assert!((v - 2.0 / 7.0).abs() < 1e-13);
    }

    #[test]
    fn hermite_gaussian_moments() {
        let r = gauss_hermite(32);
        // ∫ x² e^{-x²} dx = √π/2
        let v: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x * x).sum();
        assert!((v - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn hermite_handles_exponential_growth() {
        let r = gauss_hermite(64);
        // ∫ e^{2x} e^{-x²} dx = √π e
        let v: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * (2.0 * x).exp()).sum();
        let exact = std::f64::consts::PI.sqrt() * std::f64::consts::E;
        assert!((v - exact).abs() / exact < 1e-12);
    }
}
