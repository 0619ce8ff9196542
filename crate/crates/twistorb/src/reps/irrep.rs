//! Symmetric-power matrix models Sym^d of the defining representation, with
//! σ-extensions, Casimir scalars and twisted characters.
//!
//! The model uses the Fock-normalised monomial basis x^α/√(α!), on which the
//! compact form u = i·p ⊕ k acts by anti-Hermitian matrices. Characters are
//! always evaluated through the matrix model; the Weyl character formula
//! only appears in tests as an oracle.

use num_complex::Complex64;

use super::compact::{rho_combination, weight_data, CompactForm};
use crate::error::{Error, Result};
use crate::liecore::{casimir_constants, Automorphism, GroupElement, GroupMap, ReductiveAlgebra, SigmaOrder};
use crate::numerics::matfun::{expm, CMat};

/// A matrix model of an irreducible unitary representation with σ-structure.
#[derive(Debug, Clone)]
pub struct Irrep {
    /// Highest weight in Cartan coordinates (2π-convention).
    pub highest_weight: Vec<f64>,
    /// Family degree: the model is Sym^degree of the defining representation.
    pub degree: u32,
    pub dim: usize,
    /// ρ(e_i) for the algebra basis.
    pub rho_basis: Vec<CMat>,
    /// ρ(σ), normalised by the extension constant.
    pub rho_sigma: CMat,
    /// The extension constant c_τ actually used (1 for σ = id).
    pub c_tau: Complex64,
    /// Scalar of the Casimir C^{g,E}.
    pub casimir_g: f64,
    /// C^{k,E} = Σ_k ρ(e_i)² as a matrix.
    pub casimir_k: CMat,
    /// |ρ_u + λ|² in the B*-metric.
    pub rho_plus_lambda_sq: f64,
    /// Whether the restriction to K stays irreducible (twisted characters of
    /// K-reducible σ-irreducibles vanish identically).
    pub k_irreducible: bool,
    /// Multi-index exponents of the monomial basis.
    exponents: Vec<Vec<u32>>,
    /// Which matrix model realises the group-level action.
    model: RepModel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum RepModel {
    /// Sym^d of the defining representation.
    Sym,
    /// The SO(2)-doublet χ_w ⊕ χ_{-w} (K^σ-representation of sl2r only).
    So2Doublet { w: i32 },
}

fn gen_exponents(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, degree: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
        if nvars == 1 {
            cur.push(degree);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for d in 0..=degree {
            cur.push(d);
            rec(nvars - 1, degree - d, out, cur);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, degree, &mut out, &mut Vec::new());
    out
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Derivation action of a defining-representation matrix A on the
/// Fock-normalised monomial basis of Sym^d.
fn sym_derivation(exponents: &[Vec<u32>], a: &CMat) -> CMat {
    let dim = exponents.len();
    let nvars = a.nrows();
    let index_of = |e: &[u32]| -> usize {
        exponents
            .iter()
            .position(|x| x.as_slice() == e)
            .expect("exponent in range")
    };
    let mut m = CMat::zeros(dim, dim);
    for (col, alpha) in exponents.iter().enumerate() {
        for i in 0..nvars {
            if alpha[i] == 0 {
                continue;
            }
            for j in 0..nvars {
                let aji = a[(j, i)];
                if aji.norm() == 0.0 {
                    continue;
                }
                if i == j {
                    m[(col, col)] += aji * Complex64::new(alpha[i] as f64, 0.0);
                } else {
                    let mut beta = alpha.clone();
                    beta[i] -= 1;
                    beta[j] += 1;
                    let row = index_of(&beta);
                    // Fock normalisation: coefficient √(α_i (α_j + 1))
                    let c = ((alpha[i] as f64) * (alpha[j] as f64 + 1.0)).sqrt();
                    m[(row, col)] += aji * Complex64::new(c, 0.0);
                }
            }
        }
    }
    m
}

/// Sym^d of a group element on the Fock-normalised basis, by expanding the
/// substituted monomials.
fn sym_group(exponents: &[Vec<u32>], g: &CMat) -> CMat {
    let dim = exponents.len();
    let nvars = g.nrows();
    // polynomial representation: map from exponent index to coefficient
    let index_of = |e: &[u32]| -> usize {
        exponents
            .iter()
            .position(|x| x.as_slice() == e)
            .expect("exponent in range")
    };
    let mut m = CMat::zeros(dim, dim);
    for (col, alpha) in exponents.iter().enumerate() {
        // expand Π_i (Σ_j g_{ji} x_j)^{α_i} in raw monomial coefficients
        let mut poly: Vec<(Vec<u32>, Complex64)> =
            vec![(vec![0; nvars], Complex64::new(1.0, 0.0))];
        for i in 0..nvars {
            for _ in 0..alpha[i] {
                let mut next: std::collections::HashMap<Vec<u32>, Complex64> =
                    std::collections::HashMap::new();
                for (e, c) in &poly {
                    for j in 0..nvars {
                        let gj = g[(j, i)];
                        if gj.norm() == 0.0 {
                            continue;
                        }
                        let mut e2 = e.clone();
                        e2[j] += 1;
                        *next.entry(e2).or_insert(Complex64::new(0.0, 0.0)) += c * gj;
                    }
                }
                poly = next.into_iter().collect();
            }
        }
        // convert raw coefficients to the Fock-normalised frame:
        // x^α/√α! ↦ Σ c_β x^β = Σ c_β √β! · (x^β/√β!), source scaled by √α!
        let ln_a: f64 = alpha.iter().map(|&x| ln_factorial(x)).sum();
        for (e, c) in poly {
            let ln_b: f64 = e.iter().map(|&x| ln_factorial(x)).sum();
            let row = index_of(&e);
            m[(row, col)] += c * Complex64::new(((ln_b - ln_a) * 0.5).exp(), 0.0);
        }
    }
    m
}

impl Irrep {
    /// ρ of an algebra coordinate vector (real combination of the basis).
    pub fn rho(&self, coords: &[f64]) -> CMat {
        rho_combination(&self.rho_basis, coords, &vec![0.0; coords.len()])
    }

    /// ρ of a complexified coordinate vector.
    pub fn rho_complex(&self, re: &[f64], im: &[f64]) -> CMat {
        rho_combination(&self.rho_basis, re, im)
    }

    /// Whether the model carries a full G-action (flat-bundle contexts need
    /// this; the SO(2)-doublet is a K^σ-representation only).
    pub fn is_g_rep(&self) -> bool {
        matches!(self.model, RepModel::Sym)
    }

    /// ρ of a group element: Sym^d of the defining matrix, or the explicit
    /// torus character for the SO(2)-doublet.
    pub fn rho_group(&self, g: &GroupElement) -> CMat {
        match self.model {
            RepModel::Sym => sym_group(&self.exponents, &g.matrix),
            RepModel::So2Doublet { w } => {
                // k(θ) = [[cos θ, sin θ], [-sin θ, cos θ]]
                let theta = g.matrix[(0, 1)].re.atan2(g.matrix[(0, 0)].re);
                let z = Complex64::from_polar(1.0, w as f64 * theta);
                CMat::from_fn(2, 2, |i, j| {
                    if i == j {
                        if i == 0 {
                            z
                        } else {
                            z.conj()
                        }
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            }
        }
    }
}

/// Build the Sym^d model of a catalog algebra with a σ-extension.
///
/// The σ-extension requires the highest weight to be σ-fixed; otherwise an
/// explicit error is returned (the K-restriction would change its class).
pub fn build_sym_irrep(
    alg: &ReductiveAlgebra,
    d: u32,
    sigma: &Automorphism,
) -> Result<Irrep> {
    let exponents = gen_exponents(alg.rep_dim, d);
    let dim = exponents.len();
    let rho_basis: Vec<CMat> = alg
        .basis
        .iter()
        .map(|b| sym_derivation(&exponents, b))
        .collect();

    // representation property on a few basis pairs
    for (a, b) in [(0usize, 1usize), (0, alg.dim()), (1, alg.dim() + 1)] {
        let (a, b) = (a % alg.dim(), b % alg.dim());
        let ea: Vec<f64> = (0..alg.dim()).map(|i| (i == a) as u8 as f64).collect();
        let eb: Vec<f64> = (0..alg.dim()).map(|i| (i == b) as u8 as f64).collect();
        let br = alg.bracket(&ea, &eb);
        let lhs = rho_combination(&rho_basis, &br, &vec![0.0; alg.dim()]);
        let rhs = &rho_basis[a] * &rho_basis[b] - &rho_basis[b] * &rho_basis[a];
        if (&lhs - &rhs).norm() > 1e-10 * (1.0 + rhs.norm()) {
            return Err(Error::Invariant("Sym^d model is not a homomorphism".into()));
        }
    }

    // Casimir: C^{g,E} = -(Σ_p ρ² - Σ_k ρ²); must be scalar on an irreducible
    let n = dim;
    let mut cas = CMat::zeros(n, n);
    for i in 0..alg.dim_p {
        cas -= &rho_basis[i] * &rho_basis[i];
    }
    for i in alg.dim_p..alg.dim() {
        cas += &rho_basis[i] * &rho_basis[i];
    }
    let scalar = cas.trace() / Complex64::new(n as f64, 0.0);
    let dev = (&cas - CMat::identity(n, n).map(|x| x * scalar)).norm();
    if dev > 1e-8 * (1.0 + cas.norm()) {
        return Err(Error::Invariant(format!(
            "Casimir not scalar on Sym^{d} (deviation {dev:.2e})"
        )));
    }
    let casimir_g = scalar.re;

    let mut casimir_k = CMat::zeros(n, n);
    for i in alg.dim_p..alg.dim() {
        casimir_k += &rho_basis[i] * &rho_basis[i];
    }

    // weights and the Casimir cross-check -C - ¼B*(κ,κ) = 4π²|ρ_u + λ|²
    let u = CompactForm::new(alg)?;
    let wd = weight_data(alg, &u, &rho_basis)?;
    let rl: Vec<f64> = wd
        .rho_u
        .iter()
        .zip(&wd.highest)
        .map(|(a, b)| a + b)
        .collect();
    let rho_plus_lambda_sq: f64 = rl.iter().map(|x| x * x).sum();
    let bstar = casimir_constants(alg).bstar_kappa;
    let lhs = -casimir_g - 0.25 * bstar;
    let rhs = 4.0 * std::f64::consts::PI.powi(2) * rho_plus_lambda_sq;
    if (lhs - rhs).abs() > 1e-8 * (1.0 + rhs.abs()) {
        return Err(Error::Invariant(format!(
            "Casimir/weight relation violated: {lhs:.12e} vs {rhs:.12e}"
        )));
    }

    // σ-extension
    let mut irrep = Irrep {
        highest_weight: wd.highest,
        degree: d,
        dim,
        rho_basis,
        rho_sigma: CMat::identity(n, n),
        c_tau: Complex64::new(1.0, 0.0),
        casimir_g,
        casimir_k,
        rho_plus_lambda_sq,
        k_irreducible: true,
        exponents,
        model: RepModel::Sym,
    };
    if !sigma.is_identity() {
        let (c, a) = sigma_extension_constant(alg, &irrep, sigma)?;
        irrep.rho_sigma = a.map(|x| x * c);
        irrep.c_tau = c;
    }
    Ok(irrep)
}

/// The 2-dimensional K^σ-representation χ_w ⊕ χ_{-w} of sl2r with the
/// σ-swap, for σ reversing the rotation direction of K = SO(2).
///
/// Irreducible under K^σ but reducible under K, so all its twisted
/// characters vanish identically; the p-directions do not act (this is a
/// K^σ-representation only, Casimir data is zeroed).
pub fn build_so2_doublet(
    alg: &ReductiveAlgebra,
    w: i32,
    sigma: &Automorphism,
) -> Result<Irrep> {
    if alg.name != "sl2r" {
        return Err(Error::UnknownCatalog(format!(
            "SO(2)-doublet only defined for sl2r, got {}",
            alg.name
        )));
    }
    if w == 0 {
        return Err(Error::InvalidInput("doublet weight must be nonzero".into()));
    }
    // σ must reverse the k-orientation for the swap to intertwine
    if (sigma.algebra_matrix[(2, 2)] + 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(
            "doublet extension needs σ acting by -1 on k".into(),
        ));
    }
    let dim = alg.dim();
    let mut rho_basis = vec![CMat::zeros(2, 2); dim];
    // k(θ) = exp(θ√2·e₃) has χ_w(k(θ)) = e^{iwθ}, so ρ(e₃) = diag(iw,-iw)/√2
    let lam = Complex64::new(0.0, w as f64 / 2f64.sqrt());
    rho_basis[2] = CMat::from_fn(2, 2, |i, j| {
        if i == j {
            if i == 0 {
                lam
            } else {
                -lam
            }
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let swap = CMat::from_fn(2, 2, |i, j| {
        Complex64::new(if i != j { 1.0 } else { 0.0 }, 0.0)
    });
    Ok(Irrep {
        highest_weight: vec![w as f64 * 2f64.sqrt() / (4.0 * std::f64::consts::PI)],
        degree: w.unsigned_abs(),
        dim: 2,
        rho_basis,
        rho_sigma: swap,
        c_tau: Complex64::new(1.0, 0.0),
        casimir_g: 0.0,
        casimir_k: CMat::from_diagonal_element(2, 2, Complex64::new(-(w * w) as f64 / 2.0, 0.0)),
        rho_plus_lambda_sq: 0.0,
        k_irreducible: false,
        exponents: vec![vec![1, 0], vec![0, 1]],
        model: RepModel::So2Doublet { w },
    })
}

/// Find the intertwiner A with A ρ(k) A^{-1} = ρ(σ(k)) on K, and the unit
/// constant c_τ normalising (cA)^{N₀} = Id.
///
/// The candidate A comes from the catalog structure: Sym^d of the
/// conjugating matrix for inner σ, and Sym^d of the symplectic J for the
/// transpose-inverse / complex-conjugation twists of the 2×2 groups. When no
/// candidate intertwines, the highest weight is not σ-fixed and the
/// extension is refused.
pub fn sigma_extension_constant(
    alg: &ReductiveAlgebra,
    irrep: &Irrep,
    sigma: &Automorphism,
) -> Result<(Complex64, CMat)> {
    let j2 = || -> CMat {
        CMat::from_fn(2, 2, |i, j| {
            Complex64::new(
                match (i, j) {
                    (0, 1) => 1.0,
                    (1, 0) => -1.0,
                    _ => 0.0,
                },
                0.0,
            )
        })
    };
    let candidate: CMat = match &sigma.group_map {
        GroupMap::Identity => CMat::identity(alg.rep_dim, alg.rep_dim),
        GroupMap::ConjBy(m) => m.clone(),
        GroupMap::Theta | GroupMap::ComplexConj => {
            if alg.rep_dim != 2 {
                return Err(Error::InvalidInput(format!(
                    "highest weight of Sym^{} not σ-fixed for {} with this σ",
                    irrep.degree, alg.name
                )));
            }
            j2()
        }
        GroupMap::Power(_, _) => {
            return Err(Error::InvalidInput(
                "σ-extension expects a primitive automorphism, not a power".into(),
            ))
        }
    };
    let a = sym_group(&irrep.exponents, &candidate);

    // verify the intertwining property on sample k-elements
    for seed in 0..3 {
        let mut y = vec![0.0; alg.dim()];
        for (i, yi) in y.iter_mut().enumerate().skip(alg.dim_p) {
            *yi = 0.3 * ((seed * 5 + i) as f64).sin();
        }
        let k = GroupElement::new(alg.exp_vec(&y), alg.name.clone());
        let sk = sigma.apply_group(&k);
        let lhs = &a * irrep.rho_group(&k);
        let rhs = irrep.rho_group(&sk) * &a;
        if (&lhs - &rhs).norm() > 1e-8 * (1.0 + rhs.norm()) {
            return Err(Error::InvalidInput(format!(
                "highest weight of Sym^{} not σ-fixed: no K-intertwiner",
                irrep.degree
            )));
        }
    }

    let n0 = match sigma.order {
        SigmaOrder::Finite(n) => n,
        SigmaOrder::Infinite => {
            return Err(Error::InvalidInput(
                "σ-extension constant needs finite σ-order".into(),
            ))
        }
    };
    // A^{N₀} must be scalar (Schur); then pick c with (cA)^{N₀} = Id,
    // smallest-argument root, ties broken lexicographically by (re, im).
    let mut pw = CMat::identity(irrep.dim, irrep.dim);
    for _ in 0..n0 {
        pw = &pw * &a;
    }
    let zeta = pw.trace() / Complex64::new(irrep.dim as f64, 0.0);
    let dev = (&pw - CMat::identity(irrep.dim, irrep.dim).map(|x| x * zeta)).norm();
    if dev > 1e-8 * (1.0 + pw.norm()) {
        return Err(Error::InvalidInput(
            "A^{N₀} is not scalar: σ-extension refused".into(),
        ));
    }
    // roots of c^{N₀} = 1/ζ
    let target = zeta.powf(-1.0 / n0 as f64);
    let mut best: Option<Complex64> = None;
    for k in 0..n0 {
        let root = target
            * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n0 as f64);
        let better = match best {
            None => true,
            Some(b) => {
                let (ra, rb) = (root.arg().abs(), b.arg().abs());
                ra < rb - 1e-12
                    || ((ra - rb).abs() <= 1e-12
                        && (root.re > b.re + 1e-12
                            || ((root.re - b.re).abs() <= 1e-12 && root.im > b.im)))
            }
        };
        if better {
            best = Some(root);
        }
    }
    Ok((best.unwrap(), a))
}

/// Twisted character Tr^E[ρ(k^{-1})ρ(σ) exp(-iρ(Y))] for a complexified
/// k-vector Y (given as re + i·im coordinate pairs).
pub fn twisted_character(
    irrep: &Irrep,
    k: &GroupElement,
    y_re: &[f64],
    y_im: &[f64],
) -> Complex64 {
    let rho_y = irrep.rho_complex(y_re, y_im);
    let minus_i = Complex64::new(0.0, -1.0);
    let e = expm(&rho_y.map(|x| x * minus_i));
    (irrep.rho_group(&k.inverse()) * &irrep.rho_sigma * e).trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::build_catalog;
    use crate::oracles::su2_weyl_character;

    #[test]
    fn trivial_and_defining_reps() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let triv = build_sym_irrep(&alg, 0, &sigma).unwrap();
        assert_eq!(triv.dim, 1);
        assert!(triv.casimir_g.abs() < 1e-12);
        let def = build_sym_irrep(&alg, 1, &sigma).unwrap();
        assert_eq!(def.dim, 2);
        assert!((def.casimir_g - (-1.5)).abs() < 1e-10);
    }

    #[test]
    fn casimir_relation_high_degree() {
        // the constructor itself enforces the 4π²|ρ+λ|² relation to 1e-8
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let r = build_sym_irrep(&alg, 10, &sigma).unwrap();
        assert_eq!(r.dim, 11);
        // independent weight-sum oracle for sl2r: weights of Sym^d on e₃ are
        // (d-2j)·(defining weight 1/(2π√2)): |λ| = d/(2π√2), ρ_u = 1/(2π√2)·1
        let unit = 1.0 / (2.0 * std::f64::consts::PI * 2f64.sqrt());
        let expect = ((10.0 + 1.0) * unit).powi(2);
        assert!((r.rho_plus_lambda_sq - expect).abs() < 1e-10);
    }

    #[test]
    fn sl3r_defining_rep() {
        let alg = build_catalog("sl3r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let r = build_sym_irrep(&alg, 1, &sigma).unwrap();
        assert_eq!(r.dim, 3);
        let r2 = build_sym_irrep(&alg, 2, &sigma).unwrap();
        assert_eq!(r2.dim, 6);
    }

    #[test]
    fn skew_adjointness_of_u_directions() {
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let r = build_sym_irrep(&alg, 3, &sigma).unwrap();
        // k-directions: ρ skew-Hermitian; p-directions: ρ Hermitian
        for i in 0..alg.dim() {
            let m = &r.rho_basis[i];
            if i < alg.dim_p {
                assert!((m - m.adjoint()).norm() < 1e-10, "p-direction {i} not Hermitian");
            } else {
                assert!((m + m.adjoint()).norm() < 1e-10, "k-direction {i} not skew");
            }
        }
    }

    #[test]
    fn character_at_identity_is_dimension() {
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let r = build_sym_irrep(&alg, 4, &sigma).unwrap();
        let id = GroupElement::identity(&alg);
        let z = vec![0.0; alg.dim()];
        let chi = twisted_character(&r, &id, &z, &z);
        assert!((chi - Complex64::new(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn character_matches_weyl_oracle_on_torus() {
        // SU(2)-compact-picture character at a torus rotation: the k-rotation
        // exp(t·e₃) has defining eigenvalues e^{±it/√2}, so the Weyl angle is
        // θ = t/√2.
        let alg = build_catalog("sl2r", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        for d in [1u32, 2, 5, 9] {
            let r = build_sym_irrep(&alg, d, &sigma).unwrap();
            let t = 0.83;
            let k = GroupElement::new(alg.exp_vec(&[0.0, 0.0, t]), "sl2r");
            let z = vec![0.0; 3];
            let chi = twisted_character(&r, &k.inverse(), &z, &z);
            let oracle = su2_weyl_character(d, t / 2f64.sqrt());
            assert!(
                (chi.re - oracle).abs() < 1e-10 * (1.0 + oracle.abs()),
                "d={d}: {chi} vs {oracle}"
            );
            assert!(chi.im.abs() < 1e-10);
        }
    }

    #[test]
    fn character_exp_of_algebra_consistency() {
        // Tr[ρ(k)] computed via Sym^d(k) must match exp of the derivation
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let sigma = Automorphism::identity(&alg);
        let r = build_sym_irrep(&alg, 3, &sigma).unwrap();
        let y = vec![0.0, 0.0, 0.0, 0.2, -0.4, 0.1];
        let k = GroupElement::new(alg.exp_vec(&y), "sl2c_real");
        let via_group = r.rho_group(&k);
        let via_exp = expm(&r.rho(&y));
        assert!((via_group - via_exp).norm() < 1e-9);
    }

    #[test]
    fn theta_extension_on_sl3r_refused() {
        // Sym^d of the defining rep of SL(3,R) is not self-dual for d ≥ 1:
        // λ is not θ-fixed and the extension must fail loudly.
        let alg = build_catalog("sl3r", 1.0).unwrap();
        let sigma = Automorphism::new(&alg, GroupMap::Theta).unwrap();
        assert!(build_sym_irrep(&alg, 1, &sigma).is_err());
        // the trivial rep extends fine
        assert!(build_sym_irrep(&alg, 0, &sigma).is_ok());
    }

    #[test]
    fn complex_conj_extension_on_sl2c() {
        let alg = build_catalog("sl2c_real", 1.0).unwrap();
        let sigma = Automorphism::new(&alg, GroupMap::ComplexConj).unwrap();
        for d in [1u32, 2, 4] {
            let r = build_sym_irrep(&alg, d, &sigma).unwrap();
            // extension contract: ρ(σ)ρ(x)ρ(σ)^{-1} = ρ(σx) on k-directions
            let inv = r
                .rho_sigma
                .clone()
                .lu()
                .try_inverse()
                .unwrap();
            for i in alg.dim_p..alg.dim() {
                let mut e = vec![0.0; alg.dim()];
                e[i] = 1.0;
                let sx = sigma.apply_algebra(&e);
                let lhs = &r.rho_sigma * &r.rho_basis[i] * &inv;
                let rhs = r.rho(&sx);
                assert!((lhs - rhs).norm() < 1e-9, "conjugation contract d={d} i={i}");
            }
            // (ρσ)² = ρ(σ²) = Id
            let sq = &r.rho_sigma * &r.rho_sigma;
            assert!((sq - CMat::identity(r.dim, r.dim)).norm() < 1e-9);
        }
    }
}
