//! Normed division algebras ℝ, ℂ, ℍ, 𝕆 via the Cayley–Dickson doubling.
//!
//! Elements are stored as a fixed array of eight coordinates together with the
//! algebra dimension, so every level shares one value type. The coefficient
//! layout follows the doubling `𝔸 ⊕ 𝔸`: for octonions `e₄ = (0, 1)`,
//! `e₅ = (0, i)`, `e₆ = (0, j)`, `e₇ = (0, k)`.
//!
//! Two scalar backends are provided: `f64` for sampling work and
//! [`Rational64`] for exact identity checks on basis elements.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dimension of one of the four normed algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Real = 1,
    Complex = 2,
    Quaternion = 4,
    Octonion = 8,
}

impl Dim {
    pub fn new(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Dim::Real),
            2 => Ok(Dim::Complex),
            4 => Ok(Dim::Quaternion),
            8 => Ok(Dim::Octonion),
            _ => Err(Error::InvalidDimension(n)),
        }
    }

    #[inline]
    pub fn size(self) -> usize {
        self as usize
    }
}

/// Scalar field for Cayley–Dickson arithmetic.
pub trait Scalar:
    Copy
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;
}

impl Scalar for f64 {
    #[inline]
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for i64 {
    #[inline]
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for Rational64 {
    #[inline]
    fn from_i64(v: i64) -> Self {
        Rational64::from_integer(v)
    }
}

/// An element of ℝ, ℂ, ℍ or 𝕆 over the scalar `T`.
#[derive(Clone, Copy, PartialEq)]
pub struct Cayley<T> {
    dim: Dim,
    coords: [T; 8],
}

/// Floating-point algebra element.
pub type CayleyElement = Cayley<f64>;
/// Exact rational algebra element.
pub type ExactCayley = Cayley<Rational64>;

impl<T: Scalar> fmt::Debug for Cayley<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Cayley").field(&self.coords()).finish()
    }
}

impl<T: Scalar> Cayley<T> {
    pub fn zero(dim: Dim) -> Self {
        Cayley { dim, coords: [T::zero(); 8] }
    }

    pub fn one(dim: Dim) -> Self {
        Self::real(dim, T::one())
    }

    pub fn real(dim: Dim, value: T) -> Self {
        let mut out = Self::zero(dim);
        out.coords[0] = value;
        out
    }

    /// Basis element `e_index` (`e₀ = 1`).
    pub fn basis(dim: Dim, index: usize) -> Result<Self> {
        if index >= dim.size() {
            return Err(Error::InvalidBasisIndex { index, dim: dim.size() });
        }
        let mut out = Self::zero(dim);
        out.coords[index] = T::one();
        Ok(out)
    }

    pub fn from_slice(dim: Dim, coords: &[T]) -> Result<Self> {
        if coords.len() != dim.size() {
            return Err(Error::DimensionMismatch { expected: dim.size(), found: coords.len() });
        }
        let mut out = Self::zero(dim);
        out.coords[..coords.len()].copy_from_slice(coords);
        Ok(out)
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn coords(&self) -> &[T] {
        &self.coords[..self.dim.size()]
    }

    #[inline]
    pub fn coords_mut(&mut self) -> &mut [T] {
        let n = self.dim.size();
        &mut self.coords[..n]
    }

    #[inline]
    pub fn re(&self) -> T {
        self.coords[0]
    }

    /// Imaginary part (real coordinate zeroed).
    pub fn im(&self) -> Self {
        let mut out = *self;
        out.coords[0] = T::zero();
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for c in out.coords_mut().iter_mut().skip(1) {
            *c = -*c;
        }
        out
    }

    pub fn norm_sqr(&self) -> T {
        self.coords().iter().fold(T::zero(), |acc, &c| acc + c * c)
    }

    /// Euclidean inner product `Re(a b̄)`.
    pub fn dot(&self, other: &Self) -> T {
        self.coords().iter().zip(other.coords()).fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = *self;
        for c in out.coords_mut() {
            *c = *c * s;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    /// Cayley–Dickson product; fails on mismatched dimensions.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim.size(), found: rhs.dim.size() });
        }
        Ok(self.mul_unchecked(rhs))
    }

    #[inline]
    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.dim.size();
        let table = mul_table(self.dim);
        let mut out = Self::zero(self.dim);
        for i in 0..n {
            let a = self.coords[i];
            if a.is_zero() {
                continue;
            }
            let row = &table[i * n..(i + 1) * n];
            for (j, &(sign, k)) in row.iter().enumerate() {
                let term = a * rhs.coords[j];
                if sign > 0 {
                    out.coords[k as usize] = out.coords[k as usize] + term;
                } else {
                    out.coords[k as usize] = out.coords[k as usize] - term;
                }
            }
        }
        out
    }

    /// `e₁(e₂(⋯(e₇ z)⋯))`; equals `−z` on the octonions.
    pub fn seven_fold_left_mult(&self) -> Result<Self> {
        if self.dim != Dim::Octonion {
            return Err(Error::DimensionMismatch { expected: 8, found: self.dim.size() });
        }
        let mut acc = *self;
        for alpha in (1..8).rev() {
            acc = Self::basis(Dim::Octonion, alpha)?.mul_unchecked(&acc);
        }
        Ok(acc)
    }
}

impl CayleyElement {
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `conj(a) / |a|²`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl ExactCayley {
    /// Lift an integer-coordinate float element into exact arithmetic.
    pub fn from_integers(dim: Dim, coords: &[i64]) -> Result<Self> {
        let c: Vec<Rational64> = coords.iter().map(|&v| Rational64::from_integer(v)).collect();
        Self::from_slice(dim, &c)
    }
}

impl<T: Scalar> Add for Cayley<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "Cayley dimension mismatch");
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a = *a + b;
        }
        self
    }
}

impl<T: Scalar> AddAssign for Cayley<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Scalar> Sub for Cayley<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "Cayley dimension mismatch");
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a = *a - b;
        }
        self
    }
}

impl<T: Scalar> SubAssign for Cayley<T> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<T: Scalar> Neg for Cayley<T> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for a in self.coords.iter_mut() {
            *a = -*a;
        }
        self
    }
}

/// Panics on mismatched dimensions; use [`Cayley::try_mul`] for a checked product.
impl<T: Scalar> Mul for Cayley<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "Cayley dimension mismatch");
        self.mul_unchecked(&rhs)
    }
}

/// The doubling formula `(a,b)(c,d) = (ac − d̄b, da + bc̄)` evaluated recursively
/// on coordinate slices whose length is a power of two.
pub fn cayley_dickson_mul<T: Scalar>(x: &[T], y: &[T]) -> Vec<T> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    assert!(n.is_power_of_two());
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let conj = |v: &[T]| -> Vec<T> { v.iter().enumerate().map(|(i, &t)| if i == 0 { t } else { -t }).collect() };
    let ac = cayley_dickson_mul(a, c);
    let dbar_b = cayley_dickson_mul(&conj(d), b);
    let da = cayley_dickson_mul(d, a);
    let b_cbar = cayley_dickson_mul(b, &conj(c));
    ac.iter().zip(&dbar_b).map(|(&p, &q)| p - q).chain(da.iter().zip(&b_cbar).map(|(&p, &q)| p + q)).collect()
}

type Table = Vec<(i8, u8)>;

/// Signed-permutation multiplication table `e_i e_j = sign · e_k`, built once
/// per dimension from [`cayley_dickson_mul`].
fn mul_table(dim: Dim) -> &'static Table {
    static TABLES: [OnceLock<Table>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = match dim {
        Dim::Real => 0,
        Dim::Complex => 1,
        Dim::Quaternion => 2,
        Dim::Octonion => 3,
    };
    TABLES[slot].get_or_init(|| build_table(dim.size()))
}

fn build_table(n: usize) -> Table {
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut x = vec![0i64; n];
            let mut y = vec![0i64; n];
            x[i] = 1;
            y[j] = 1;
            let prod = cayley_dickson_mul(
                &x.iter().map(|&v| Rational64::from_integer(v)).collect::<Vec<_>>(),
                &y.iter().map(|&v| Rational64::from_integer(v)).collect::<Vec<_>>(),
            );
            let (k, v) =
                prod.iter().enumerate().find(|(_, v)| !v.is_zero()).expect("basis product is a signed basis element");
            table.push((if *v > Rational64::zero() { 1 } else { -1 }, k as u8));
        }
    }
    table
}

/// Signed multiplication table as `±(k+1)` entries, row `i`, column `j`.
pub fn signed_table(dim: Dim) -> Vec<Vec<i32>> {
    let n = dim.size();
    let t = mul_table(dim);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (s, k) = t[i * n + j];
                    s as i32 * (k as i32 + 1)
                })
                .collect()
        })
        .collect()
}

/// Algebraic identities the well-definedness proofs rely on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `Re(ab) = Re(ba)`
    ReCommute,
    /// `Re(a(bc)) = Re((ab)c)`
    ReAssociate,
    /// `(ab)b̄ = a|b|²`
    NormCancel,
    /// `⟨ab, c⟩ = ⟨a, c b̄⟩`
    AdjointShift,
    /// `a(ab) = (aa)b`
    ArtinLeftAlternative,
    /// `(ab)c = a(bc)`, false on the octonions.
    Associativity,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::ReCommute,
        Identity::ReAssociate,
        Identity::NormCancel,
        Identity::AdjointShift,
        Identity::ArtinLeftAlternative,
        Identity::Associativity,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Identity::ReCommute => "re-commute",
            Identity::ReAssociate => "re-associate",
            Identity::NormCancel => "norm-cancel",
            Identity::AdjointShift => "adjoint-shift",
            Identity::ArtinLeftAlternative => "artin-left-alternative",
            Identity::Associativity => "associativity",
        }
    }

    /// `LHS − RHS` as an algebra element (scalar identities land in the real slot).
    pub fn defect<T: Scalar>(self, a: &Cayley<T>, b: &Cayley<T>, c: &Cayley<T>) -> Result<Cayley<T>> {
        let dim = a.dim();
        if b.dim() != dim || c.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim.size(),
                found: if b.dim() != dim { b.dim().size() } else { c.dim().size() },
            });
        }
        let (a, b, c) = (*a, *b, *c);
        Ok(match self {
            Identity::ReCommute => Cayley::real(dim, (a * b).re() - (b * a).re()),
            Identity::ReAssociate => Cayley::real(dim, (a * (b * c)).re() - ((a * b) * c).re()),
            Identity::NormCancel => (a * b) * b.conj() - a.scale(b.norm_sqr()),
            Identity::AdjointShift => Cayley::real(dim, (a * b).dot(&c) - a.dot(&(c * b.conj()))),
            Identity::ArtinLeftAlternative => a * (a * b) - (a * a) * b,
            Identity::Associativity => (a * b) * c - a * (b * c),
        })
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .iter()
            .copied()
            .find(|id| id.id() == s)
            .ok_or_else(|| Error::UnknownId { kind: "identity", id: s.to_string() })
    }
}

/// `|LHS − RHS|` of the named identity in floating point.
pub fn check_identity(id: Identity, a: &CayleyElement, b: &CayleyElement, c: &CayleyElement) -> Result<f64> {
    Ok(id.defect(a, b, c)?.norm())
}

/// Squared defect of the named identity, computed exactly.
pub fn check_identity_exact(id: Identity, a: &ExactCayley, b: &ExactCayley, c: &ExactCayley) -> Result<Rational64> {
    Ok(id.defect(a, b, c)?.norm_sqr())
}
