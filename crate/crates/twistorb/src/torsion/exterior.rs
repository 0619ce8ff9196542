//! Dense bigraded exterior algebra Λ(p*) ⊗ Λ(p̂*) with complex scalars.
//!
//! Basis elements are indexed by a pair of bit masks (unhatted, hatted);
//! signs come from permutation parity tables built once per dimension. With
//! r ≤ 3 generators per factor the whole algebra has at most 64 entries, so
//! dense storage is trivially correct and fast enough.

use num_complex::Complex64;

/// Element of Λ(R^r)* ⊗ Λ(R̂^r)* with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorElement {
    pub r: usize,
    /// coeff[mask_e + (mask_h << r)]
    pub coeff: Vec<Complex64>,
}

/// Parity of merging two disjoint masks: the sign of sorting a⌢b.
fn merge_sign(a: u32, b: u32) -> f64 {
    let mut inversions = 0u32;
    let mut bi = b;
    while bi != 0 {
        let low = bi & bi.wrapping_neg();
        let pos = low.trailing_zeros();
        // bits of a strictly above pos must jump over this generator
        inversions += (a >> (pos + 1)).count_ones();
        bi ^= low;
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl ExteriorElement {
    pub fn zero(r: usize) -> Self {
        ExteriorElement { r, coeff: vec![Complex64::new(0.0, 0.0); 1 << (2 * r)] }
    }

    pub fn scalar(r: usize, c: Complex64) -> Self {
        let mut e = Self::zero(r);
        e.coeff[0] = c;
        e
    }

    /// Generator e^i (unhatted).
    pub fn e(r: usize, i: usize) -> Self {
        let mut out = Self::zero(r);
        out.coeff[1 << i] = Complex64::new(1.0, 0.0);
        out
    }

    /// Generator ê^i (hatted).
    pub fn e_hat(r: usize, i: usize) -> Self {
        let mut out = Self::zero(r);
        out.coeff[1 << (r + i)] = Complex64::new(1.0, 0.0);
        out
    }

    fn split(&self, idx: usize) -> (u32, u32) {
        let m = (1u32 << self.r) - 1;
        ((idx as u32) & m, (idx as u32) >> self.r)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeff.iter_mut().zip(&other.coeff) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.coeff.iter_mut() {
            *a *= c;
        }
        out
    }

    /// Graded product; hatted and unhatted generators anticommute.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r);
        let mut out = Self::zero(self.r);
        for (i, a) in self.coeff.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let (ae, ah) = self.split(i);
            for (j, b) in other.coeff.iter().enumerate() {
                if b.norm_sqr() == 0.0 {
                    continue;
                }
                let (be, bh) = other.split(j);
                if ae & be != 0 || ah & bh != 0 {
                    continue;
                }
                let sign = merge_sign(ae, be)
                    * merge_sign(ah, bh)
                    * if (ah.count_ones() * be.count_ones()) % 2 == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                let idx = ((ae | be) as usize) | (((ah | bh) as usize) << self.r);
                out.coeff[idx] += a * b * Complex64::new(sign, 0.0);
            }
        }
        out
    }

    /// exp of an element whose nonscalar part is nilpotent (even elements in
    /// practice). The series terminates once powers vanish.
    pub fn exp(&self) -> Self {
        let s = self.coeff[0];
        let mut nil = self.clone();
        nil.coeff[0] = Complex64::new(0.0, 0.0);
        let mut out = Self::scalar(self.r, Complex64::new(1.0, 0.0));
        let mut term = Self::scalar(self.r, Complex64::new(1.0, 0.0));
        for k in 1..=(2 * self.r + 1) {
            term = term.mul(&nil).scale(Complex64::new(1.0 / k as f64, 0.0));
            if term.coeff.iter().all(|c| c.norm_sqr() == 0.0) {
                break;
            }
            out = out.add(&term);
        }
        out.scale(s.exp())
    }

    /// Coefficient of the top hatted form ê^1∧…∧ê^r at unhatted mask `mask_e`.
    pub fn hat_top_coeff(&self, mask_e: u32) -> Complex64 {
        let top = ((1usize << self.r) - 1) << self.r;
        self.coeff[(mask_e as usize) | top]
    }

    /// Coefficient of the full top form e^1∧…∧e^r ∧ ê^1∧…∧ê^r.
    pub fn full_top_coeff(&self) -> Complex64 {
        self.hat_top_coeff((1u32 << self.r) - 1)
    }

    /// Coefficient of the unhatted top form with no hatted part.
    pub fn e_top_coeff(&self) -> Complex64 {
        self.coeff[(1 << self.r) - 1]
    }
}

/// Commutative ring of even unhatted forms, used by the index densities:
/// det, sqrt, log and friends over Λ^{even}(R^p).
pub mod even {
    use super::*;

    /// Product in the even subalgebra (commutative).
    pub fn mul(a: &ExteriorElement, b: &ExteriorElement) -> ExteriorElement {
        a.mul(b)
    }

    /// Square root of an even element with nonzero scalar part, by the
    /// binomial series on the nilpotent part; the scalar branch is the
    /// caller's choice of `sqrt_scalar`.
    pub fn sqrt(a: &ExteriorElement, sqrt_scalar: Complex64) -> ExteriorElement {
        let s = a.coeff[0];
        let mut nil = a.scale(Complex64::new(1.0, 0.0) / s);
        nil.coeff[0] = Complex64::new(0.0, 0.0);
        // (1+x)^{1/2} = Σ C(1/2,k) x^k: terminating
        let mut out = ExteriorElement::scalar(a.r, Complex64::new(1.0, 0.0));
        let mut term = ExteriorElement::scalar(a.r, Complex64::new(1.0, 0.0));
        let mut coef = 1.0_f64;
        for k in 1..=(a.r + 1) {
            coef *= (0.5 - (k as f64 - 1.0)) / k as f64;
            term = term.mul(&nil);
            if term.coeff.iter().all(|c| c.norm_sqr() == 0.0) {
                break;
            }
            out = out.add(&term.scale(Complex64::new(coef, 0.0)));
        }
        out.scale(sqrt_scalar)
    }

    /// Determinant of a square matrix with even-form entries, by Leibniz
    /// expansion (n ≤ 6 in the catalog).
    pub fn det(m: &[Vec<ExteriorElement>]) -> ExteriorElement {
        let n = m.len();
        let r = if n == 0 { 0 } else { m[0][0].r };
        if n == 0 {
            return ExteriorElement::scalar(r, Complex64::new(1.0, 0.0));
        }
        // permutations by Heap's algorithm
        let mut perm: Vec<usize> = (0..n).collect();
        let mut c = vec![0usize; n];
        let mut out = ExteriorElement::zero(r);
        let mut sign = 1.0_f64;
        let term_of = |perm: &[usize], sign: f64, out: &mut ExteriorElement| {
            let mut t = ExteriorElement::scalar(r, Complex64::new(sign, 0.0));
            for (i, &j) in perm.iter().enumerate() {
                t = t.mul(&m[i][j]);
            }
            *out = out.add(&t);
        };
        term_of(&perm, sign, &mut out);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                sign = -sign;
                term_of(&perm, sign, &mut out);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        out
    }

    /// Pfaffian of an antisymmetric matrix of even forms, by recursive
    /// expansion along the first row.
    pub fn pfaffian(m: &[Vec<ExteriorElement>]) -> ExteriorElement {
        let n = m.len();
        let r = if n == 0 { 0 } else { m[0][0].r };
        if n == 0 {
            return ExteriorElement::scalar(r, Complex64::new(1.0, 0.0));
        }
        if n % 2 == 1 {
            return ExteriorElement::zero(r);
        }
        if n == 2 {
            return m[0][1].clone();
        }
        let mut out = ExteriorElement::zero(r);
        for j in 1..n {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            // minor removing rows/cols 0 and j
            let keep: Vec<usize> = (0..n).filter(|&x| x != 0 && x != j).collect();
            let minor: Vec<Vec<ExteriorElement>> = keep
                .iter()
                .map(|&a| keep.iter().map(|&b| m[a][b].clone()).collect())
                .collect();
            let sub = pfaffian(&minor);
            out = out.add(&m[0][j].mul(&sub).scale(Complex64::new(sign, 0.0)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn anticommutativity() {
        let r = 3;
        let e0 = ExteriorElement::e(r, 0);
        let e1 = ExteriorElement::e(r, 1);
        let a = e0.mul(&e1);
        let b = e1.mul(&e0);
        assert_eq!(a.coeff[0b011], -b.coeff[0b011]);
        let h0 = ExteriorElement::e_hat(r, 0);
        let m = e0.mul(&h0);
        let m2 = h0.mul(&e0);
        let idx = 1 | (1 << r);
        assert_eq!(m.coeff[idx], -m2.coeff[idx]);
    }

    #[test]
    fn squares_vanish() {
        let r = 2;
        let e0 = ExteriorElement::e(r, 0);
        assert!(e0.mul(&e0).coeff.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn exp_of_two_form() {
        // exp(c e⁰e¹) = 1 + c e⁰e¹ exactly
        let r = 2;
        let x = ExteriorElement::e(r, 0).mul(&ExteriorElement::e(r, 1)).scale(c(0.7));
        let e = x.exp();
        assert!((e.coeff[0] - c(1.0)).norm() < 1e-15);
        assert!((e.coeff[0b11] - c(0.7)).norm() < 1e-15);
    }

    #[test]
    fn berezin_reads_top_hat() {
        let r = 2;
        let x = ExteriorElement::e_hat(r, 0).mul(&ExteriorElement::e_hat(r, 1));
        assert!((x.hat_top_coeff(0) - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn even_sqrt_squares_back() {
        let r = 3;
        let mut a = ExteriorElement::scalar(r, c(4.0));
        let two_form = ExteriorElement::e(r, 0).mul(&ExteriorElement::e(r, 1)).scale(c(0.3));
        a = a.add(&two_form);
        let s = even::sqrt(&a, c(2.0));
        let sq = s.mul(&s);
        for (x, y) in sq.coeff.iter().zip(&a.coeff) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn pfaffian_squares_to_det() {
        let r = 3;
        // antisymmetric 4x4 with form entries of degree 0 (scalars) for the check
        let vals = [
            [0.0, 1.3, -0.2, 0.7],
            [-1.3, 0.0, 0.5, -0.1],
            [0.2, -0.5, 0.0, 0.9],
            [-0.7, 0.1, -0.9, 0.0],
        ];
        let m: Vec<Vec<ExteriorElement>> = (0..4)
            .map(|i| (0..4).map(|j| ExteriorElement::scalar(r, c(vals[i][j]))).collect())
            .collect();
        let pf = even::pfaffian(&m).coeff[0];
        let d = even::det(&m).coeff[0];
        assert!((pf * pf - d).norm() < 1e-12, "{pf} vs {d}");
    }
}
