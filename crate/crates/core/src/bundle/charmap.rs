//! The embeddings `ψ₁, ψ₂`, the characteristic map `χ = ψ₁⁻¹ ∘ ψ₂` on the
//! equator `Re(z_k) = 0`, its projection to the first basis vector, and the
//! quadratic/twisted descriptions of `M₊`.
//!
//! Points are flat real vectors: `z ∈ 𝔸^k` occupies `D·k` reals, slot by slot.
//! For `m ∈ {1, 2}` the twist index is irrelevant and fixed to `p = k − 1`.

use nalgebra::DMatrix;

use crate::cayley::{CayleyElement, Dim};
use crate::clifford::{build_clifford_system, CliffordSystem};
use crate::error::{Error, Result};
use crate::twisted::{star_p, twisted_inner, twisted_inner_short, CayleyVector, TwistIndex};

/// Below this distance from the excluded pole `ψ₁`/`ψ₂` refuse to evaluate.
pub const SINGULAR_TOL: f64 = 1e-8;
/// Tolerance on `| |z| − 1 |` for sphere inputs.
pub const SPHERE_TOL: f64 = 1e-12;
/// Tolerance on `|Re(z_k)|` for equator inputs.
pub const EQUATOR_TOL: f64 = 1e-12;

/// Algebra of the bundle construction: `m ↦ 𝔸` of dimension `m`.
pub fn bundle_dim(m: usize) -> Result<Dim> {
    match m {
        1 | 2 | 4 | 8 => Dim::new(m),
        _ => Err(Error::UnsupportedM(m)),
    }
}

fn twist_for(m: usize, k: usize, p: usize) -> Result<TwistIndex> {
    let t = TwistIndex::new(k, p)?;
    if k < 2 {
        return Err(Error::InvalidParameters(format!("k = {k}; the characteristic map needs k ≥ 2")));
    }
    if m <= 2 {
        return TwistIndex::definite(k);
    }
    Ok(t)
}

fn check_len(v: &[f64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    Ok(())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn check_unit(v: &[f64], what: &str) -> Result<()> {
    let r = norm(v);
    if (r - 1.0).abs() > SPHERE_TOL {
        return Err(Error::Domain(format!("{what} has norm {r}, expected 1")));
    }
    Ok(())
}

fn check_equator(dim: Dim, k: usize, z: &[f64]) -> Result<()> {
    let re = z[dim.size() * (k - 1)];
    if re.abs() > EQUATOR_TOL {
        return Err(Error::Domain(format!("Re(z_k) = {re}; point is off the equator")));
    }
    Ok(())
}

fn last_slot(dim: Dim, z: &[f64]) -> CayleyElement {
    let d = dim.size();
    CayleyElement::from_slice(dim, &z[z.len() - d..]).expect("slot size")
}

/// `(1 + s·z_k)` and its conjugate inverse, checked against the pole.
fn pole_factors(dim: Dim, z_k: &CayleyElement, s: f64) -> Result<(CayleyElement, CayleyElement)> {
    let one = CayleyElement::one(dim);
    let plus = one + z_k.scale(s);
    if plus.norm() <= SINGULAR_TOL {
        let pole = if s > 0.0 { "−N" } else { "N" };
        return Err(Error::Singular(format!("z is within {SINGULAR_TOL} of {pole}")));
    }
    let alpha = plus.conj().inverse()?;
    Ok((plus, alpha))
}

/// `Y = (X − (⟨X,W⟩_p α) ∗_p W, ∓⟨X,W⟩_p b)`; `s = +1` gives `ψ₁`, `s = −1` gives `ψ₂`.
fn psi_twisted(dim: Dim, t: TwistIndex, z: &[f64], x: &[f64], s: f64) -> Result<Vec<f64>> {
    let zv = CayleyVector::from_reals(dim, z)?;
    let (w, z_k) = zv.split_last().expect("k ≥ 2");
    let (plus, alpha) = pole_factors(dim, &z_k, s)?;
    let b = plus * alpha;
    let xv = CayleyVector::from_reals(dim, x)?;
    let xw = twisted_inner_short(&xv, &w, t)?;
    let head = xv.sub(&star_p(&(xw * alpha), &w, t)?);
    let tail = (xw * b).scale(-s);
    Ok(head.with_last(tail).to_reals())
}

/// Complex row-vector form `Y = X (I − W̄ᵗW/(1 ± z̄_k), ∓W̄ᵗ b)`.
fn psi_complex(k: usize, z: &[f64], x: &[f64], s: f64) -> Result<Vec<f64>> {
    let dim = Dim::Complex;
    let zv = CayleyVector::from_reals(dim, z)?;
    let xv = CayleyVector::from_reals(dim, x)?;
    let (w, z_k) = zv.split_last().expect("k ≥ 2");
    let (plus, alpha) = pole_factors(dim, &z_k, s)?;
    let b = plus * alpha;
    let n = k - 1;
    let mut y = vec![CayleyElement::zero(dim); k];
    for i in 0..n {
        let wbar_i = w.entries()[i].conj();
        for (j, yj) in y.iter_mut().enumerate().take(n) {
            let mut a_ij = (wbar_i * w.entries()[j] * alpha).scale(-1.0);
            if i == j {
                a_ij += CayleyElement::one(dim);
            }
            *yj += xv.entries()[i] * a_ij;
        }
        y[n] += xv.entries()[i] * (wbar_i * b).scale(-s);
    }
    Ok(CayleyVector::new(dim, y)?.to_reals())
}

/// Stereographic form on `V₂(ℝᵏ)`; `ψ₁` uses the chart from `N`, `ψ₂` from `−N`.
fn psi_real(k: usize, z: &[f64], t_vec: &[f64], s: f64) -> Result<Vec<f64>> {
    let z_k = z[k - 1];
    let denom = 1.0 - s * z_k;
    if denom.abs() <= SINGULAR_TOL {
        let pole = if s > 0.0 { "N" } else { "−N" };
        return Err(Error::Singular(format!("z is within {SINGULAR_TOL} of {pole}")));
    }
    let x: Vec<f64> = z[..k - 1].iter().map(|v| v / denom).collect();
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let xt: f64 = x.iter().zip(t_vec).map(|(a, b)| a * b).sum();
    let mut y: Vec<f64> = t_vec.iter().zip(&x).map(|(ti, xi)| ((1.0 + r2) * ti - 2.0 * xt * xi) / (1.0 + r2)).collect();
    y.push(s * 2.0 * xt / (1.0 + r2));
    Ok(y)
}

fn psi(m: usize, k: usize, p: usize, z: &[f64], x: &[f64], s: f64) -> Result<Vec<f64>> {
    let dim = bundle_dim(m)?;
    let t = twist_for(m, k, p)?;
    let d = dim.size();
    check_len(z, d * k)?;
    check_len(x, d * (k - 1))?;
    check_unit(z, "z")?;
    match m {
        1 => psi_real(k, z, x, s),
        2 => psi_complex(k, z, x, s),
        _ => psi_twisted(dim, t, z, x, s),
    }
}

/// `ψ₁(z, X) = Y`; defined away from `−N` (away from `N` for `m = 1`).
pub fn psi1(m: usize, k: usize, p: usize, z: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    psi(m, k, p, z, x, 1.0)
}

/// `ψ₂(z, X) = Y`; defined away from `N` (away from `−N` for `m = 1`).
pub fn psi2(m: usize, k: usize, p: usize, z: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    psi(m, k, p, z, x, -1.0)
}

/// The isometric embedding `X ↦ Y` of `ψ₁` or `ψ₂` at fixed `z`, column by column.
pub fn psi_matrix(which: u8, m: usize, k: usize, p: usize, z: &[f64]) -> Result<DMatrix<f64>> {
    let s = match which {
        1 => 1.0,
        2 => -1.0,
        _ => return Err(Error::InvalidParameters(format!("no embedding ψ{which}"))),
    };
    let d = bundle_dim(m)?.size();
    let n = d * (k - 1);
    let mut mat = DMatrix::zeros(d * k, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = psi(m, k, p, z, &e, s)?;
        mat.set_column(j, &nalgebra::DVector::from_vec(col));
        e[j] = 0.0;
    }
    Ok(mat)
}

/// `ψ₁⁻¹(z, Y)`: the transpose of the isometry `X ↦ Y` applied to `Y`.
pub fn psi1_inverse(m: usize, k: usize, p: usize, z: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let mat = psi_matrix(1, m, k, p, z)?;
    check_len(y, mat.nrows())?;
    Ok((mat.transpose() * nalgebra::DVector::from_column_slice(y)).as_slice().to_vec())
}

/// Characteristic map of `η` for `(m, k, p)`, `m ∈ {1, 2, 4, 8}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharMap {
    m: usize,
    k: usize,
    p: usize,
    dim: Dim,
    twist: TwistIndex,
}

impl CharMap {
    pub fn new(m: usize, k: usize, p: usize) -> Result<Self> {
        let dim = bundle_dim(m)?;
        let twist = twist_for(m, k, p)?;
        Ok(CharMap { m, k, p, dim, twist })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn p(&self) -> usize {
        self.p
    }
    pub fn dim(&self) -> Dim {
        self.dim
    }
    pub fn twist(&self) -> TwistIndex {
        self.twist
    }

    /// Matrix size `D(k − 1)`.
    pub fn size(&self) -> usize {
        self.dim.size() * (self.k - 1)
    }

    /// Real dimension of the ambient `𝔸^k` of `z`.
    pub fn domain_len(&self) -> usize {
        self.dim.size() * self.k
    }

    /// `false` for `m = 1`, where `χ` lands in `O(k − 1)` with determinant `−1`.
    pub fn lands_in_so(&self) -> bool {
        self.m != 1
    }

    pub fn check_domain(&self, z: &[f64]) -> Result<()> {
        check_len(z, self.domain_len())?;
        check_unit(z, "z")?;
        check_equator(self.dim, self.k, z)
    }

    /// `χ(z)X` without domain checks.
    pub fn apply_unchecked(&self, z: &[f64], x: &[f64]) -> Result<Vec<f64>> {
        let d = self.dim.size();
        let n = self.k - 1;
        match self.m {
            1 => {
                let w = &z[..n];
                let xw: f64 = x.iter().zip(w).map(|(a, b)| a * b).sum();
                Ok(x.iter().zip(w).map(|(xi, wi)| xi - 2.0 * xw * wi).collect())
            }
            2 => {
                let zv = CayleyVector::from_reals(self.dim, z)?;
                let xv = CayleyVector::from_reals(self.dim, x)?;
                let (w, z_k) = zv.split_last().expect("k ≥ 2");
                let one = CayleyElement::one(self.dim);
                let c = ((one + z_k) * (one + z_k)).inverse()?;
                let mut out = xv.entries().to_vec();
                for i in 0..n {
                    let xi_wbar = xv.entries()[i] * w.entries()[i].conj();
                    for (j, o) in out.iter_mut().enumerate() {
                        *o -= (xi_wbar * w.entries()[j] * c).scale(2.0);
                    }
                }
                Ok(CayleyVector::new(self.dim, out)?.to_reals())
            }
            _ => {
                let zv = CayleyVector::from_reals(self.dim, z)?;
                let xv = CayleyVector::from_reals(self.dim, x)?;
                let (w, z_k) = zv.split_last().expect("k ≥ 2");
                let one = CayleyElement::one(self.dim);
                let c = ((one + z_k) * (one + z_k)).inverse()?;
                let eps = (twisted_inner_short(&xv, &w, self.twist)? * c).scale(2.0);
                debug_assert_eq!(x.len(), d * n);
                Ok(xv.sub(&star_p(&eps, &w, self.twist)?).to_reals())
            }
        }
    }

    /// `χ(z)X` for an equator point `z`.
    pub fn apply(&self, z: &[f64], x: &[f64]) -> Result<Vec<f64>> {
        self.check_domain(z)?;
        check_len(x, self.size())?;
        self.apply_unchecked(z, x)
    }

    /// `χ(z)` as a real matrix: column `j` is the image of the `j`-th basis vector.
    pub fn evaluate(&self, z: &[f64]) -> Result<DMatrix<f64>> {
        self.check_domain(z)?;
        let n = self.size();
        let mut mat = DMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.apply_unchecked(z, &e)?;
            mat.set_column(j, &nalgebra::DVector::from_vec(col));
            e[j] = 0.0;
        }
        Ok(mat)
    }
}

/// `max |χᵀχ − I|`.
pub fn orthogonality_defect(mat: &DMatrix<f64>) -> f64 {
    let n = mat.ncols();
    (mat.transpose() * mat - DMatrix::<f64>::identity(n, n)).amax()
}

/// `max_j |χ(z)e_j − ψ₁⁻¹(ψ₂(z, e_j))|`, together with the distance of each
/// `ψ₂(z, e_j)` from the image of `ψ₁(z, ·)`.
pub fn chi_consistency(cm: &CharMap, z: &[f64]) -> Result<f64> {
    let chi = cm.evaluate(z)?;
    let m1 = psi_matrix(1, cm.m, cm.k, cm.p, z)?;
    let m2 = psi_matrix(2, cm.m, cm.k, cm.p, z)?;
    let back = m1.transpose() * &m2;
    let off_image = (&m1 * &back - &m2).amax();
    Ok((back - chi).amax().max(off_image))
}

/// `π ∘ χ` in closed form: `ι` (`m = 1`), `ς` (`m = 2`), `σ_{k,p}` (`m = 4`), `g_{k,p}` (`m = 8`).
pub fn projected_map(m: usize, k: usize, p: usize, z: &[f64]) -> Result<Vec<f64>> {
    let cm = CharMap::new(m, k, p)?;
    cm.check_domain(z)?;
    let dim = cm.dim;
    let n = k - 1;
    if m == 1 {
        let mut out: Vec<f64> = z[..n].iter().map(|w| -2.0 * z[0] * w).collect();
        out[0] += 1.0;
        return Ok(out);
    }
    let zv = CayleyVector::from_reals(dim, z)?;
    let e = zv.entries();
    let z1 = e[0];
    let z_k = e[k - 1];
    let one = CayleyElement::one(dim);
    let c_plus = ((one + z_k) * (one + z_k)).inverse()?;
    let c_minus = ((one - z_k) * (one - z_k)).inverse()?;
    let mut out = Vec::with_capacity(n);
    if m == 2 {
        for (j, zj) in e[..n].iter().enumerate() {
            let mut v = (z1.conj() * *zj * c_plus).scale(-2.0);
            if j == 0 {
                v += one;
            }
            out.push(v);
        }
    } else if p >= 1 {
        let lead = z1.conj() * c_plus;
        let trail = c_minus * z1;
        out.push(one - (lead * z1).scale(2.0));
        for (i, zi) in e[1..n].iter().enumerate() {
            let coeff = if i + 1 < p { lead } else { trail };
            out.push((coeff * *zi).scale(-2.0));
        }
    } else {
        let coeff = c_minus * z1.conj();
        out.push(one - c_minus.scale(2.0 * z1.norm_sqr()));
        for zi in &e[1..n] {
            out.push((coeff * *zi).scale(-2.0));
        }
    }
    Ok(CayleyVector::new(dim, out)?.to_reals())
}

/// `−(1 + z₂)²(1 − z₂)⁻²`, the value of `π ∘ χ` for `k = 2, p = 0`.
pub fn projected_k2_p0(z2: &CayleyElement) -> Result<CayleyElement> {
    let one = CayleyElement::one(z2.dim());
    let num = (one + *z2) * (one + *z2);
    let den = ((one - *z2) * (one - *z2)).inverse()?;
    Ok(-(num * den))
}

/// Cases with an explicit nullhomotopy of `π ∘ χ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NullhomotopyCase {
    M4K2P0,
    M8K2P0,
}

impl NullhomotopyCase {
    pub fn dim(self) -> Dim {
        match self {
            NullhomotopyCase::M4K2P0 => Dim::Quaternion,
            NullhomotopyCase::M8K2P0 => Dim::Octonion,
        }
    }
}

impl std::str::FromStr for NullhomotopyCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m4_k2_p0" => Ok(NullhomotopyCase::M4K2P0),
            "m8_k2_p0" => Ok(NullhomotopyCase::M8K2P0),
            _ => Err(Error::UnknownId { kind: "nullhomotopy case", id: s.into() }),
        }
    }
}

/// `F(z, t) = −(1 + t z₂)²(1 − t z₂)⁻²` for `Re(z₂) = 0`.
pub fn nullhomotopy_eval(case: NullhomotopyCase, z: &[f64], t: f64) -> Result<CayleyElement> {
    let dim = case.dim();
    check_len(z, 2 * dim.size())?;
    let z2 = last_slot(dim, z);
    if z2.re().abs() > EQUATOR_TOL {
        return Err(Error::Domain("Re(z₂) must vanish".into()));
    }
    projected_k2_p0(&z2.scale(t))
}

/// Scale convention of the `(z, w)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// `|z| = |w| = 1`
    Unit,
    /// `|z| = |w| = 1/√2`, on the unit sphere of `ℝ^{2l}`
    Focal,
}

/// Outcome of the two membership tests for `M₊`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Membership {
    pub is_member: bool,
    /// `max(||z|−1|, ||w|−1|, |⟨z,w⟩_p|)` at unit scale; for `m = 3` the last
    /// term is `|Im⟨z,w⟩_ℍ|`.
    pub twisted_residual: f64,
    /// `max(||x|−1|, max_i |⟨P_i x, x⟩|)` at focal scale.
    pub quadratic_residual: f64,
    /// Both characterizations give the same verdict.
    pub agree: bool,
}

/// Tests `x ∈ M₊` by the twisted-product and the quadratic description.
pub fn m_plus_membership_with(sys: &CliffordSystem, x: &[f64], scale: Scale, tol: f64) -> Result<Membership> {
    let l = sys.l();
    check_len(x, 2 * l)?;
    let to_focal = match scale {
        Scale::Unit => std::f64::consts::FRAC_1_SQRT_2,
        Scale::Focal => 1.0,
    };
    let focal: Vec<f64> = x.iter().map(|v| v * to_focal).collect();
    let unit: Vec<f64> = focal.iter().map(|v| v * std::f64::consts::SQRT_2).collect();

    let dim = sys.dim();
    let z = CayleyVector::from_reals(dim, &unit[..l])?;
    let w = CayleyVector::from_reals(dim, &unit[l..])?;
    let pairing = if sys.m() == 3 {
        z.hermitian(&w)?.im().norm()
    } else {
        let t = twist_for(sys.m(), sys.k(), sys.p()).or_else(|_| TwistIndex::new(sys.k(), sys.p()))?;
        twisted_inner(&z, &w, t)?.norm()
    };
    let twisted_residual = (z.norm() - 1.0).abs().max((w.norm() - 1.0).abs()).max(pairing);

    let quadratic_residual =
        sys.projections(&focal).into_iter().fold((norm(&focal) - 1.0).abs(), |acc, q| acc.max(q.abs()));

    let a = twisted_residual <= tol;
    let b = quadratic_residual <= tol;
    Ok(Membership { is_member: a && b, twisted_residual, quadratic_residual, agree: a == b })
}

/// [`m_plus_membership_with`] for the standard system of `(m, k, p)`.
pub fn m_plus_membership(m: usize, k: usize, p: usize, x: &[f64], scale: Scale, tol: f64) -> Result<Membership> {
    m_plus_membership_with(&build_clifford_system(m, k, p)?, x, scale, tol)
}

/// A point of `M₊` at focal scale: `(z, ψ₁(z, X)) / √2`.
pub fn m_plus_point(m: usize, k: usize, p: usize, z: &[f64], x: &[f64]) -> Result<Vec<f64>> {
    let y = psi1(m, k, p, z, x)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(z.iter().chain(&y).map(|v| v * s).collect())
}
