//! The cohomogeneity-one description of `M₊` for `m = 3`: `Sp(k)` acts on
//! row vectors from the right, `Φ(A, z) = (A₁, zA)/√2` parametrizes `M₊`, and
//! `f(x, y) = 2⟨x, y⟩` is the invariant isoparametric function.

use rand::Rng;

use crate::bundle::charmap::{m_plus_membership, Scale};
use crate::bundle::sample::gaussian_vec;
use crate::cayley::{CayleyElement, Dim};
use crate::error::{Error, Result};
use crate::twisted::CayleyVector;

const H: Dim = Dim::Quaternion;

/// Unitarity tolerance for inputs of [`phi_cohomogeneity`].
pub const UNITARY_TOL: f64 = 1e-10;

/// Membership tolerance for inputs of [`isoparametric_f`].
pub const MEMBER_TOL: f64 = 1e-9;

/// Square quaternionic matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatMatrix {
    n: usize,
    data: Vec<CayleyElement>,
}

impl QuatMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![CayleyElement::zero(H); n * n];
        for i in 0..n {
            data[i * n + i] = CayleyElement::one(H);
        }
        QuatMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<CayleyVector>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.dim() != H || r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
            data.extend_from_slice(r.entries());
        }
        Ok(QuatMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> CayleyElement {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> CayleyVector {
        CayleyVector::new(H, self.data[i * self.n..(i + 1) * self.n].to_vec()).expect("quaternion row")
    }

    /// `Āᵗ`, the inverse of a unitary matrix.
    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).conj());
            }
        }
        QuatMatrix { n, data }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut data = vec![CayleyElement::zero(H); n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = (0..n).fold(CayleyElement::zero(H), |acc, t| acc + self.get(i, t) * rhs.get(t, j));
            }
        }
        QuatMatrix { n, data }
    }

    /// `max |AĀᵗ − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.mul(&self.conj_transpose());
        let id = QuatMatrix::identity(self.n);
        prod.data.iter().zip(&id.data).map(|(a, b)| a.dist(b)).fold(0.0, f64::max)
    }

    /// Random element of `Sp(n)`: Gaussian rows, Gram–Schmidt for `Σ a_i b̄_i`.
    pub fn random_sp<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        loop {
            let mut rows: Vec<CayleyVector> = Vec::with_capacity(n);
            let mut ok = true;
            for _ in 0..n {
                let mut v = CayleyVector::from_reals(H, &gaussian_vec(rng, 4 * n)).expect("4n reals");
                for r in &rows {
                    let c = v.hermitian(r).expect("same shape");
                    let proj = CayleyVector::new(H, r.entries().iter().map(|e| c * *e).collect()).expect("same dim");
                    v = v.sub(&proj);
                }
                let len = v.norm();
                if len < 1e-6 {
                    ok = false;
                    break;
                }
                rows.push(v.scale(1.0 / len));
            }
            if ok {
                return QuatMatrix::from_rows(rows).expect("square");
            }
        }
    }
}

/// Row vector times matrix: `(xA)_j = Σ_i x_i A_ij`.
pub fn act(x: &CayleyVector, a: &QuatMatrix) -> Result<CayleyVector> {
    if x.len() != a.n {
        return Err(Error::DimensionMismatch { expected: a.n, found: x.len() });
    }
    let out = (0..a.n)
        .map(|j| x.entries().iter().enumerate().fold(CayleyElement::zero(H), |acc, (i, xi)| acc + *xi * a.get(i, j)))
        .collect();
    CayleyVector::new(H, out)
}

/// `Φ(A, z) = (A₁, zA)/√2 ∈ ℝ^{8k}` for unitary `A` and unit `z` with real `z₁`.
pub fn phi_cohomogeneity(a: &QuatMatrix, z: &CayleyVector) -> Result<Vec<f64>> {
    let defect = a.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(Error::Domain(format!("matrix is not unitary (defect {defect:e})")));
    }
    if (z.norm() - 1.0).abs() > 1e-12 || z.entries().first().is_none_or(|z1| z1.im().norm() > 1e-12) {
        return Err(Error::Domain("z must be a unit vector with real first entry".into()));
    }
    let y = act(z, a)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(a.row(0).to_reals().into_iter().chain(y.to_reals()).map(|v| v * s).collect())
}

/// `f(x, y) = 2 Re Σ x_i ȳ_i` on `M₊ ⊂ ℍ^k ⊕ ℍ^k` (focal scale).
pub fn isoparametric_f(x: &CayleyVector, y: &CayleyVector) -> Result<f64> {
    let k = x.len();
    let pt: Vec<f64> = x.to_reals().into_iter().chain(y.to_reals()).collect();
    let mem = m_plus_membership(3, k, 0, &pt, Scale::Focal, MEMBER_TOL)?;
    if !mem.is_member {
        return Err(Error::Domain(format!(
            "point is not on M₊ (residual {:e})",
            mem.twisted_residual.max(mem.quadratic_residual)
        )));
    }
    Ok(2.0 * x.dot(y))
}

/// Splits an `ℝ^{8k}` point into its two `ℍ^k` halves.
pub fn split_point(pt: &[f64]) -> Result<(CayleyVector, CayleyVector)> {
    let half = pt.len() / 2;
    Ok((CayleyVector::from_reals(H, &pt[..half])?, CayleyVector::from_reals(H, &pt[half..])?))
}
