//! Matrix exponentials, logarithms and determinant helpers for the small
//! (≤ 8×8) dense matrices that appear in the catalog groups.
//!
//! Exponential: scaling and squaring with a Padé(13) rational approximant.
//! Logarithm: symmetric eigendecomposition for SPD matrices, inverse
//! scaling-and-squaring via Denman–Beavers square roots otherwise; only
//! matrices with spectrum off the closed negative real axis are accepted.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type RMat = DMatrix<f64>;

/// Promote a real matrix to a complex one.
pub fn to_complex(m: &RMat) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| Complex64::new(m[(i, j)], 0.0))
}

/// 1-norm of a complex matrix.
fn norm1(m: &CMat) -> f64 {
    let mut best = 0.0_f64;
    for j in 0..m.ncols() {
        let s: f64 = (0..m.nrows()).map(|i| m[(i, j)].norm()).sum();
        best = best.max(s);
    }
    best
}

/// Matrix exponential by scaling-and-squaring with Padé(13).
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let nrm = norm1(a);
    let mut s = 0u32;
    // theta_13 ≈ 5.37 for double precision
    if nrm > 5.37 {
        s = ((nrm / 5.37).log2().ceil()).max(0.0) as u32;
    }
    let scale = Complex64::new(0.5f64.powi(s as i32), 0.0);
    let a = a.map(|x| x * scale);

    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let id = CMat::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let u_inner = &a6 * (a6.map(|x| x * B[13]) + a4.map(|x| x * B[11]) + a2.map(|x| x * B[9]))
        + a6.map(|x| x * B[7])
        + a4.map(|x| x * B[5])
        + a2.map(|x| x * B[3])
        + id.map(|x| x * B[1]);
    let u = &a * &u_inner;
    let v = &a6 * (a6.map(|x| x * B[12]) + a4.map(|x| x * B[10]) + a2.map(|x| x * B[8]))
        + a6.map(|x| x * B[6])
        + a4.map(|x| x * B[4])
        + a2.map(|x| x * B[2])
        + id.map(|x| x * B[0]);
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .expect("Padé denominator must be invertible");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Real matrix exponential.
pub fn expm_real(a: &RMat) -> RMat {
    let e = expm(&to_complex(a));
    RMat::from_fn(a.nrows(), a.ncols(), |i, j| e[(i, j)].re)
}

/// Log of a symmetric positive definite matrix via eigendecomposition.
pub fn logm_spd(a: &RMat) -> Result<RMat> {
    let sym = 0.5 * (a + a.transpose());
    let eig = SymmetricEigen::new(sym);
    for &l in eig.eigenvalues.iter() {
        if l <= 0.0 {
            return Err(Error::MatrixLog(format!(
                "non-positive eigenvalue {l:.3e} in SPD log"
            )));
        }
    }
    let d = RMat::from_diagonal(&eig.eigenvalues.map(|l| l.ln()));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.transpose())
}

/// Log of a Hermitian positive definite matrix.
pub fn logm_hpd(a: &CMat) -> Result<CMat> {
    let herm = (a + a.adjoint()).map(|x| x * Complex64::new(0.5, 0.0));
    let eig = SymmetricEigen::new(herm);
    for &l in eig.eigenvalues.iter() {
        if l <= 0.0 {
            return Err(Error::MatrixLog(format!(
                "non-positive eigenvalue {l:.3e} in HPD log"
            )));
        }
    }
    let d = CMat::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(l.ln(), 0.0)));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.adjoint())
}

/// Principal matrix square root by the Denman–Beavers iteration.
fn sqrtm_db(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = CMat::identity(n, n);
    for _ in 0..60 {
        let yi = y
            .clone()
            .lu()
            .try_inverse()
            .ok_or_else(|| Error::MatrixLog("singular iterate in sqrt".into()))?;
        let zi = z
            .clone()
            .lu()
            .try_inverse()
            .ok_or_else(|| Error::MatrixLog("singular iterate in sqrt".into()))?;
        let y_next = (&y + &zi).map(|x| x * Complex64::new(0.5, 0.0));
        let z_next = (&z + &yi).map(|x| x * Complex64::new(0.5, 0.0));
        let delta = norm1(&(&y_next - &y));
        y = y_next;
        z = z_next;
        if delta < 1e-15 * norm1(&y).max(1.0) {
            break;
        }
    }
    Ok(y)
}

/// Principal matrix logarithm by inverse scaling-and-squaring.
///
/// Requires the spectrum to avoid the closed negative real axis; the caller
/// sees a `MatrixLog` error otherwise (surfaced as a singular DB iterate or
/// a residual failure).
pub fn logm(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    let id = CMat::identity(n, n);
    let mut b = a.clone();
    let mut k = 0u32;
    while norm1(&(&b - &id)) > 0.3 {
        b = sqrtm_db(&b)?;
        k += 1;
        if k > 40 {
            return Err(Error::MatrixLog("inverse scaling did not contract".into()));
        }
    }
    // log(I + X) by the Mercator series, |X| small after scaling
    let x = &b - &id;
    let mut term = x.clone();
    let mut log = CMat::zeros(n, n);
    for j in 1..=40 {
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        log += term.map(|v| v * Complex64::new(sign / j as f64, 0.0));
        term = &term * &x;
        if norm1(&term) < 1e-18 {
            break;
        }
    }
    let result = log.map(|v| v * Complex64::new(2f64.powi(k as i32), 0.0));
    // residual check
    let back = expm(&result);
    if norm1(&(&back - a)) > 1e-8 * norm1(a).max(1.0) {
        return Err(Error::MatrixLog("exp(log) residual too large".into()));
    }
    Ok(result)
}

/// Determinant of a complex matrix via LU.
pub fn det(m: &CMat) -> Complex64 {
    m.clone().lu().determinant()
}

/// Coefficients of det(I - s M) as a polynomial in s, via Newton identities.
///
/// Returns c[0..=n] with det(I - sM) = Σ c[k] s^k, c[k] = (-1)^k tr Λ^k M.
pub fn charpoly_one_minus(m: &CMat) -> Vec<Complex64> {
    let n = m.nrows();
    // power sums p_j = tr(M^j)
    let mut pows = Vec::with_capacity(n + 1);
    let mut cur = CMat::identity(n, n);
    pows.push(Complex64::new(n as f64, 0.0));
    for _ in 1..=n {
        cur = &cur * m;
        pows.push(cur.trace());
    }
    // e_k via Newton: k e_k = Σ_{j=1}^{k} (-1)^{j-1} e_{k-j} p_j
    let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            acc += e[k - j] * pows[j] * Complex64::new(sign, 0.0);
        }
        e[k] = acc / Complex64::new(k as f64, 0.0);
    }
    // det(I - sM) = Σ (-1)^k e_k s^k
    (0..=n)
        .map(|k| e[k] * Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: usize, v: &[f64]) -> CMat {
        CMat::from_fn(rows, rows, |i, j| Complex64::new(v[i * rows + j], 0.0))
    }

    #[test]
    fn expm_rotation() {
        // exp of [[0,θ],[-θ,0]] is the rotation by θ
        let th = 0.7;
        let a = cm(2, &[0.0, th, -th, 0.0]);
        let e = expm(&a);
        assert!((e[(0, 0)].re - th.cos()).abs() < 1e-14);
        assert!((e[(0, 1)].re - th.sin()).abs() < 1e-14);
    }

    #[test]
    fn expm_large_norm() {
        let a = cm(2, &[3.0, 1.0, 0.0, 3.0]);
        let e = expm(&a);
        // exp([[3,1],[0,3]]) = e^3 [[1,1],[0,1]]
        let e3 = 3f64.exp();
        assert!((e[(0, 0)].re - e3).abs() < 1e-10 * e3);
        assert!((e[(0, 1)].re - e3).abs() < 1e-10 * e3);
    }

    #[test]
    fn log_roundtrip() {
        let a = cm(2, &[0.2, 0.5, -0.4, 0.1]);
        let e = expm(&a);
        let l = logm(&e).unwrap();
        assert!(norm1(&(&l - &a)) < 1e-10);
    }

    #[test]
    fn spd_log_roundtrip() {
        let a = RMat::from_row_slice(2, 2, &[0.3, 0.1, 0.1, -0.2]);
        let sym = 0.5 * (&a + &a.transpose());
        let e = expm_real(&sym);
        let l = logm_spd(&e).unwrap();
        assert!((&l - &sym).norm() < 1e-11);
    }

    #[test]
    fn charpoly_matches_det() {
        let m = cm(3, &[0.5, 0.2, 0.0, -0.1, 0.3, 0.4, 0.2, 0.0, -0.6]);
        let c = charpoly_one_minus(&m);
        let s = Complex64::new(0.8, 0.3);
        let poly: Complex64 = c
            .iter()
            .enumerate()
            .map(|(k, ck)| ck * s.powu(k as u32))
            .sum();
        let id = CMat::identity(3, 3);
        let direct = det(&(&id - &m.map(|x| x * s)));
        assert!((poly - direct).norm() < 1e-12);
    }
}
