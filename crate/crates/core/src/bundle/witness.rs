//! Non-vanishing witnesses: for pairs `(A, B)` of maps `S^{Dk−2} → S^{D(k−1)−1}`
//! the sum `A + B` never vanishes, so `A ≃ B` (straight-line homotopy after
//! normalizing). Sampling gives evidence, not proof.

use std::f64::consts::PI;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bundle::charmap::projected_map;
use crate::bundle::sample::{equator_point, sample_rng, slice_point};
use crate::cayley::{CayleyElement, Dim};
use crate::error::{Error, Result};
use crate::twisted::CayleyVector;

/// Inside `|z₁| < Z1_GUARD` maps with a `1/|z₁|` factor use their `z₁ = 0` branch.
pub const Z1_GUARD: f64 = 1e-8;

fn entries(dim: Dim, z: &[f64]) -> Result<Vec<CayleyElement>> {
    Ok(CayleyVector::from_reals(dim, z)?.entries().to_vec())
}

fn pack(dim: Dim, v: Vec<CayleyElement>) -> Vec<f64> {
    CayleyVector::new(dim, v).expect("shared dim").to_reals()
}

/// `(z̄₁ z_k z₁)/|z₁|`, zero inside the guard band.
fn conj_term(z1: &CayleyElement, zk: &CayleyElement) -> CayleyElement {
    let r = z1.norm();
    if r < Z1_GUARD {
        CayleyElement::zero(z1.dim())
    } else {
        ((z1.conj() * *zk) * *z1).scale(1.0 / r)
    }
}

/// `(1 − 2|z₁|² + 2|z₁|z_k, −2z̄₁z₂, …, −2z̄₁z_{k−1})`, the Hopf construction of
/// `(z₁, (z₂, …, z_k)) ↦ (z_k, −z̄₁z₂, …, −z̄₁z_{k−1})`.
pub fn hopf_p0(dim: Dim, k: usize, z: &[f64]) -> Result<Vec<f64>> {
    let e = entries(dim, z)?;
    let (z1, zk) = (e[0], e[k - 1]);
    let one = CayleyElement::one(dim);
    let mut out = vec![one - CayleyElement::real(dim, 2.0 * z1.norm_sqr()) + zk.scale(2.0 * z1.norm())];
    out.extend(e[1..k - 1].iter().map(|zi| (z1.conj() * *zi).scale(-2.0)));
    Ok(pack(dim, out))
}

/// `θ` (`m = 4`) / `Υ` (`m = 8`):
/// `(1 − 2(z̄₁(1+z_k)⁻²)z₁, −2z̄₁z_i/(1+|z_k|²) for i ≤ p, −2z₁z_i/(1+|z_k|²) for i > p)`.
pub fn theta(dim: Dim, k: usize, p: usize, z: &[f64]) -> Result<Vec<f64>> {
    let e = entries(dim, z)?;
    let (z1, zk) = (e[0], e[k - 1]);
    let one = CayleyElement::one(dim);
    let c = ((one + zk) * (one + zk)).inverse()?;
    let s = -2.0 / (1.0 + zk.norm_sqr());
    let mut out = vec![one - ((z1.conj() * c) * z1).scale(2.0)];
    for (i, zi) in e[1..k - 1].iter().enumerate() {
        let lead = if i + 1 < p { z1.conj() } else { z1 };
        out.push((lead * *zi).scale(s));
    }
    Ok(pack(dim, out))
}

/// `φ` (`m = 4`) / `Ψ` (`m = 8`):
/// `(1 − 2|z₁|² + 2z̄₁z_kz₁/|z₁|, −2z̄₁z_i for i ≤ p, −2z₁z_i for i > p)`,
/// with the `z₁ = 0` branch `(1 − 2|z₁|², …)`. At `p = k − 1` this is `ψ` / `Φ`.
pub fn phi(dim: Dim, k: usize, p: usize, z: &[f64]) -> Result<Vec<f64>> {
    let e = entries(dim, z)?;
    let (z1, zk) = (e[0], e[k - 1]);
    let one = CayleyElement::one(dim);
    let mut out = vec![one - CayleyElement::real(dim, 2.0 * z1.norm_sqr()) + conj_term(&z1, &zk).scale(2.0)];
    for (i, zi) in e[1..k - 1].iter().enumerate() {
        let lead = if i + 1 < p { z1.conj() } else { z1 };
        out.push((lead * *zi).scale(-2.0));
    }
    Ok(pack(dim, out))
}

/// `τ(z₁, z₂) = 2|z₂|² − 1 + 2z̄₁z₂z₁/|z₁|` (`k = 2`).
pub fn tau(dim: Dim, z: &[f64]) -> Result<Vec<f64>> {
    let e = entries(dim, z)?;
    let (z1, z2) = (e[0], e[1]);
    let v = CayleyElement::real(dim, 2.0 * z2.norm_sqr() - 1.0) + conj_term(&z1, &z2).scale(2.0);
    Ok(v.coords().to_vec())
}

/// `sin(πr)/r`, continuous at `r = 0`.
fn sin_pi_over(r: f64) -> f64 {
    if r < 1e-8 {
        PI * (1.0 - (PI * r).powi(2) / 6.0)
    } else {
        (PI * r).sin() / r
    }
}

/// `b′(z₁, z₂) = −b(z̄₁, −z₂) = −cos(π|z₂|) + sin(π|z₂|)·z̄₁z₂z₁/(|z₂||z₁|²)`,
/// and `1` on `z₁ = 0`.
pub fn bprime(dim: Dim, z: &[f64]) -> Result<Vec<f64>> {
    let e = entries(dim, z)?;
    let (z1, z2) = (e[0], e[1]);
    let r1 = z1.norm();
    let v = if r1 < Z1_GUARD {
        CayleyElement::one(dim)
    } else {
        let r2 = z2.norm();
        let conj = (z1.conj() * z2) * z1;
        CayleyElement::real(dim, -(PI * r2).cos()) + conj.scale(sin_pi_over(r2) / (r1 * r1))
    };
    Ok(v.coords().to_vec())
}

/// Registered witness pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessPair {
    /// `(σ_{k,0}, H(f))`, `m = 4`, `k ≥ 3`
    SigmaHopf,
    /// `(σ_{k,p}, θ)`, `m = 4`, `p ≥ 1`
    SigmaTheta,
    /// `(φ, θ)`, `m = 4`, `p ≥ 1`
    PhiTheta,
    /// `(g₂, τ)`, `m = 8`, `k = 2` definite
    G2Tau,
    /// `(τ, b′)`, `m = 8`, `k = 2`
    TauBprime,
    /// `(Φ, g_k)`, `m = 8` definite
    PhiGk,
    /// `(g_{k,0}, H(f))`, `m = 8`, `k ≥ 3`
    GHopf,
    /// `(g_{k,p}, Υ)`, `m = 8`, `p ≥ 1`
    GUpsilon,
    /// `(Υ, Ψ)`, `m = 8`, `p ≥ 1`
    UpsilonPsi,
}

impl WitnessPair {
    pub const ALL: [WitnessPair; 9] = [
        WitnessPair::SigmaHopf,
        WitnessPair::SigmaTheta,
        WitnessPair::PhiTheta,
        WitnessPair::G2Tau,
        WitnessPair::TauBprime,
        WitnessPair::PhiGk,
        WitnessPair::GHopf,
        WitnessPair::GUpsilon,
        WitnessPair::UpsilonPsi,
    ];

    pub fn id(self) -> &'static str {
        match self {
            WitnessPair::SigmaHopf => "sigma-hopf",
            WitnessPair::SigmaTheta => "sigma-theta",
            WitnessPair::PhiTheta => "phi-theta",
            WitnessPair::G2Tau => "g2-tau",
            WitnessPair::TauBprime => "tau-bprime",
            WitnessPair::PhiGk => "Phi-gk",
            WitnessPair::GHopf => "g-hopf",
            WitnessPair::GUpsilon => "g-upsilon",
            WitnessPair::UpsilonPsi => "upsilon-psi",
        }
    }

    pub fn m(self) -> usize {
        match self {
            WitnessPair::SigmaHopf | WitnessPair::SigmaTheta | WitnessPair::PhiTheta => 4,
            _ => 8,
        }
    }

    pub fn dim(self) -> Dim {
        if self.m() == 4 {
            Dim::Quaternion
        } else {
            Dim::Octonion
        }
    }

    /// Whether the pair is defined for `(k, p)`.
    pub fn applicable(self, k: usize, p: usize) -> bool {
        if k < 2 || p >= k {
            return false;
        }
        match self {
            // At k = 2 the phases of σ and H(f) cross, so the sum has zeros.
            WitnessPair::SigmaHopf | WitnessPair::GHopf => p == 0 && k >= 3,
            WitnessPair::SigmaTheta | WitnessPair::PhiTheta | WitnessPair::GUpsilon | WitnessPair::UpsilonPsi => p >= 1,
            WitnessPair::G2Tau | WitnessPair::TauBprime => k == 2 && p == 1,
            WitnessPair::PhiGk => p + 1 == k,
        }
    }

    /// A default `(k, p)` for the pair.
    pub fn default_params(self) -> (usize, usize) {
        match self {
            WitnessPair::SigmaHopf | WitnessPair::GHopf => (3, 0),
            WitnessPair::G2Tau | WitnessPair::TauBprime => (2, 1),
            WitnessPair::PhiGk => (3, 2),
            _ => (3, 1),
        }
    }

    fn check(self, k: usize, p: usize) -> Result<()> {
        if self.applicable(k, p) {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("witness {} is not defined for k = {k}, p = {p}", self.id())))
        }
    }

    /// `(A(z), B(z))` for an equator point `z`.
    pub fn components(self, k: usize, p: usize, z: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        self.check(k, p)?;
        let dim = self.dim();
        let m = self.m();
        Ok(match self {
            WitnessPair::SigmaHopf | WitnessPair::GHopf => (projected_map(m, k, 0, z)?, hopf_p0(dim, k, z)?),
            WitnessPair::SigmaTheta | WitnessPair::GUpsilon => (projected_map(m, k, p, z)?, theta(dim, k, p, z)?),
            WitnessPair::PhiTheta | WitnessPair::UpsilonPsi => (phi(dim, k, p, z)?, theta(dim, k, p, z)?),
            WitnessPair::G2Tau => (projected_map(8, 2, 1, z)?, tau(dim, z)?),
            WitnessPair::TauBprime => (tau(dim, z)?, bprime(dim, z)?),
            WitnessPair::PhiGk => (phi(dim, k, k - 1, z)?, projected_map(8, k, k - 1, z)?),
        })
    }

    /// `|A(z) + B(z)|`.
    pub fn sum_norm(self, k: usize, p: usize, z: &[f64]) -> Result<f64> {
        let (a, b) = self.components(k, p, z)?;
        Ok(a.iter().zip(&b).map(|(x, y)| (x + y) * (x + y)).sum::<f64>().sqrt())
    }
}

impl FromStr for WitnessPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        WitnessPair::ALL
            .into_iter()
            .find(|w| w.id() == s)
            .ok_or_else(|| Error::UnknownId { kind: "witness pair", id: s.into() })
    }
}

/// Minimum of `|A + B|` over a sample set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessResult {
    pub min: f64,
    pub n: usize,
}

fn min_over(
    pair: WitnessPair,
    k: usize,
    p: usize,
    points: impl ParallelIterator<Item = Vec<f64>>,
) -> Result<WitnessResult> {
    pair.check(k, p)?;
    let (min, n) = points
        .map(|z| {
            let v = pair.sum_norm(k, p, &z).unwrap_or(f64::NAN);
            (if v.is_nan() { 0.0 } else { v }, 1usize)
        })
        .reduce(|| (f64::INFINITY, 0), |a, b| (a.0.min(b.0), a.1 + b.1));
    Ok(WitnessResult { min, n })
}

/// `min |A(z) + B(z)|` over `n_samples` uniform equator points.
pub fn witness_min_norm(pair: WitnessPair, k: usize, p: usize, n_samples: usize, seed: u64) -> Result<WitnessResult> {
    let dim = pair.dim();
    min_over(pair, k, p, (0..n_samples as u64).into_par_iter().map(|i| equator_point(&mut sample_rng(seed, i), dim, k)))
}

/// Targeted points on and near `z₁ = 0`: signed basis directions of every
/// admissible slot, `n_random` seeded slice points, and copies of those with
/// `|z₁| ∈ {10⁻⁹, 10⁻⁷, 10⁻⁴}` straddling the guard band.
pub fn slice_grid(dim: Dim, k: usize, n_random: usize, seed: u64) -> Vec<Vec<f64>> {
    let d = dim.size();
    let mut grid = Vec::new();
    for slot in 1..k {
        for b in 0..d {
            if slot == k - 1 && b == 0 {
                continue;
            }
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; d * k];
                v[slot * d + b] = s;
                grid.push(v);
            }
        }
    }
    for i in 0..n_random as u64 {
        let mut rng = sample_rng(seed, i);
        let base = slice_point(&mut rng, dim, k);
        let dir = crate::bundle::sample::uniform_sphere(&mut rng, d);
        for eps in [1e-9f64, 1e-7, 1e-4] {
            let scale = (1.0 - eps * eps).sqrt();
            let mut v: Vec<f64> = base.iter().map(|x| x * scale).collect();
            v[..d].iter_mut().zip(&dir).for_each(|(a, b)| *a = eps * b);
            grid.push(v);
        }
        grid.push(base);
    }
    grid
}

/// `min |A + B|` over [`slice_grid`].
pub fn witness_slice_min(pair: WitnessPair, k: usize, p: usize, n_random: usize, seed: u64) -> Result<WitnessResult> {
    min_over(pair, k, p, slice_grid(pair.dim(), k, n_random, seed).into_par_iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse() {
        for w in WitnessPair::ALL {
            assert_eq!(w.id().parse::<WitnessPair>().unwrap(), w);
        }
        assert!("unknown".parse::<WitnessPair>().is_err());
    }

    #[test]
    fn tau_plus_bprime_on_slice_is_two() {
        let mut z = vec![0.0; 16];
        z[9] = 1.0;
        let s = WitnessPair::TauBprime.sum_norm(2, 1, &z).unwrap();
        assert!((s - 2.0).abs() < 1e-15);
    }

    #[test]
    fn hopf_at_vanishing_rest() {
        // z₂ = … = z_{k−1} = 0 and z_k = 0 is impossible on the unit sphere;
        // z₁ unit with z_k = 0 is fine.
        let mut z = vec![0.0; 12];
        z[0] = 1.0;
        let v = hopf_p0(Dim::Quaternion, 3, &z).unwrap();
        assert_eq!(v[0], -1.0);
    }

    #[test]
    fn inapplicable_pairs_rejected() {
        assert!(WitnessPair::G2Tau.sum_norm(3, 2, &[0.0; 24]).is_err());
        assert!(!WitnessPair::SigmaTheta.applicable(3, 0));
    }
}
