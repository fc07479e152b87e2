//! Twisted inner products `⟨·,·⟩_p` and the `∗_p` action on ℍᵏ and 𝕆ᵏ.
//!
//! Vectors are row vectors of algebra elements. With 0-based slots the twisted
//! product of two `k`-vectors is
//!
//! ```text
//! ⟨z, w⟩_p = Σ_{i<p} z_i w̄_i + Σ_{p≤j<k−1} w_j z̄_j + z_{k−1} w̄_{k−1}
//! ```
//!
//! and for `p = k − 1` it is the usual Hermitian product. The `(k−1)`-vector
//! form used for `X, W` is the same product with a zero last slot.

use crate::cayley::{CayleyElement, Dim};
use crate::error::{Error, Result};

/// Twist parameters `(k, p)` with `0 ≤ p ≤ k − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistIndex {
    k: usize,
    p: usize,
}

impl TwistIndex {
    pub fn new(k: usize, p: usize) -> Result<Self> {
        if k == 0 || p >= k {
            return Err(Error::InvalidTwist { k, p });
        }
        Ok(TwistIndex { k, p })
    }

    /// The untwisted (definite) index `p = k − 1`.
    pub fn definite(k: usize) -> Result<Self> {
        Self::new(k, k.saturating_sub(1))
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn is_definite(&self) -> bool {
        self.p + 1 == self.k
    }
}

/// A row vector of algebra elements sharing one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyVector {
    dim: Dim,
    entries: Vec<CayleyElement>,
}

impl CayleyVector {
    pub fn new(dim: Dim, entries: Vec<CayleyElement>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim.size(), found: bad.dim().size() });
        }
        Ok(CayleyVector { dim, entries })
    }

    pub fn zeros(dim: Dim, len: usize) -> Self {
        CayleyVector { dim, entries: vec![CayleyElement::zero(dim); len] }
    }

    /// Unit vector with `1` in slot `index`.
    pub fn unit(dim: Dim, len: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim, len);
        v.entries[index] = CayleyElement::one(dim);
        v
    }

    /// Reads `len` consecutive blocks of `dim` real coordinates.
    pub fn from_reals(dim: Dim, coords: &[f64]) -> Result<Self> {
        let d = dim.size();
        if !coords.len().is_multiple_of(d) {
            return Err(Error::DimensionMismatch { expected: d * coords.len().div_ceil(d), found: coords.len() });
        }
        let entries = coords.chunks_exact(d).map(|c| CayleyElement::from_slice(dim, c)).collect::<Result<Vec<_>>>()?;
        Ok(CayleyVector { dim, entries })
    }

    pub fn to_reals(&self) -> Vec<f64> {
        self.entries.iter().flat_map(|e| e.coords().iter().copied()).collect()
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[CayleyElement] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [CayleyElement] {
        &mut self.entries
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product `Re⟨z, w⟩`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.dot(b)).sum()
    }

    /// Hermitian product `Σ z_i w̄_i`.
    pub fn hermitian(&self, other: &Self) -> Result<CayleyElement> {
        self.check_same(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(CayleyElement::zero(self.dim), |acc, (a, b)| acc + *a * b.conj()))
    }

    pub fn scale(&self, s: f64) -> Self {
        CayleyVector { dim: self.dim, entries: self.entries.iter().map(|e| e.scale(s)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CayleyVector { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| *a - *b).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        CayleyVector { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| *a + *b).collect() }
    }

    /// Appends a zero slot.
    pub fn padded(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.push(CayleyElement::zero(self.dim));
        CayleyVector { dim: self.dim, entries }
    }

    /// Appends `last`.
    pub fn with_last(&self, last: CayleyElement) -> Self {
        let mut entries = self.entries.clone();
        entries.push(last);
        CayleyVector { dim: self.dim, entries }
    }

    /// Splits off the last slot: `(W, z_k)`.
    pub fn split_last(&self) -> Option<(CayleyVector, CayleyElement)> {
        let (last, rest) = self.entries.split_last()?;
        Some((CayleyVector { dim: self.dim, entries: rest.to_vec() }, *last))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim.size(), found: other.dim.size() });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }
}

/// `⟨z, w⟩_p` on full `k`-vectors.
pub fn twisted_inner(z: &CayleyVector, w: &CayleyVector, t: TwistIndex) -> Result<CayleyElement> {
    z.check_same(w)?;
    if z.len() != t.k() {
        return Err(Error::DimensionMismatch { expected: t.k(), found: z.len() });
    }
    let k = t.k();
    let p = t.p();
    let mut acc = CayleyElement::zero(z.dim());
    for (i, (a, b)) in z.entries().iter().zip(w.entries()).enumerate() {
        if i < p || i == k - 1 {
            acc += *a * b.conj();
        } else {
            acc += *b * a.conj();
        }
    }
    Ok(acc)
}

/// `⟨X, W⟩_p` for `(k−1)`-vectors (last slot taken as zero).
pub fn twisted_inner_short(x: &CayleyVector, w: &CayleyVector, t: TwistIndex) -> Result<CayleyElement> {
    if x.len() + 1 != t.k() {
        return Err(Error::DimensionMismatch { expected: t.k() - 1, found: x.len() });
    }
    twisted_inner(&x.padded(), &w.padded(), t)
}

/// `ε ∗_p W = (εw₁, …, εw_p, ε̄w_{p+1}, …, ε̄w_{k−1})`.
pub fn star_p(eps: &CayleyElement, w: &CayleyVector, t: TwistIndex) -> Result<CayleyVector> {
    if w.len() + 1 != t.k() {
        return Err(Error::DimensionMismatch { expected: t.k() - 1, found: w.len() });
    }
    if eps.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim().size(), found: eps.dim().size() });
    }
    let eps_bar = eps.conj();
    let entries =
        w.entries().iter().enumerate().map(|(i, wi)| if i < t.p() { *eps * *wi } else { eps_bar * *wi }).collect();
    CayleyVector::new(w.dim(), entries)
}

/// `|⟨ε ∗_p W, W⟩_p − ε|W|²|`.
pub fn lemma_star_inner(eps: &CayleyElement, w: &CayleyVector, t: TwistIndex) -> Result<f64> {
    let lhs = twisted_inner_short(&star_p(eps, w, t)?, w, t)?;
    let rhs = eps.scale(w.norm_sqr());
    Ok(lhs.dist(&rhs))
}

/// Below this `|1 + z_k|` the factor `α = (1 + z̄_k)⁻¹` is treated as singular.
pub const ALPHA_SINGULAR_TOL: f64 = 1e-12;

/// `|⟨X, ε ∗_p W⟩ − Re(α)|⟨X, W⟩_p|²|` with `α = (1 + z̄_k)⁻¹`, `ε = ⟨X, W⟩_p α`.
pub fn lemma_real_part(x: &CayleyVector, w: &CayleyVector, z_k: &CayleyElement, t: TwistIndex) -> Result<f64> {
    let one = CayleyElement::one(z_k.dim());
    let one_plus = one + z_k.conj();
    if one_plus.norm() <= ALPHA_SINGULAR_TOL {
        return Err(Error::Singular("1 + z_k vanishes; α undefined".into()));
    }
    let alpha = one_plus.inverse()?;
    let xw = twisted_inner_short(x, w, t)?;
    let eps = xw * alpha;
    let lhs = x.dot(&star_p(&eps, w, t)?);
    let rhs = alpha.re() * xw.norm_sqr();
    Ok((lhs - rhs).abs())
}

/// `(Re⟨z,w⟩, |Im(Σ_{i<p} z_i w̄_i − Σ_{p≤j<k−1} z_j w̄_j + z_{k−1} w̄_{k−1})|)`.
pub fn orthogonality_split(z: &CayleyVector, w: &CayleyVector, t: TwistIndex) -> Result<(f64, f64)> {
    z.check_same(w)?;
    if z.len() != t.k() {
        return Err(Error::DimensionMismatch { expected: t.k(), found: z.len() });
    }
    let k = t.k();
    let mut signed = CayleyElement::zero(z.dim());
    for (i, (a, b)) in z.entries().iter().zip(w.entries()).enumerate() {
        let term = *a * b.conj();
        if i < t.p() || i == k - 1 {
            signed += term;
        } else {
            signed -= term;
        }
    }
    Ok((z.dot(w), signed.im().norm()))
}
