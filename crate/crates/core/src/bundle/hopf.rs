//! Hopf constructions of the registered maps `f: S^a × S^b → S^b` and the
//! harmonic seed maps.
//!
//! `H(f)(cos t·x, sin t·y) = (−cos²t + sin²t, 2 sin t cos t · f(x, y))`.
//!
//! Inputs `y` are laid out like `(z₂, …, z_k)`. For every map except
//! [`HopfMap::SplitJ`] the last slot is purely imaginary, and so is the last
//! slot of `f(x, y)`; folding the leading real coordinate into that slot and
//! rotating it to the front identifies the target sphere with the unit sphere
//! of `𝔸^{k−1}`, the codomain of `π ∘ χ`.

use std::f64::consts::FRAC_PI_2;
use std::str::FromStr;

use crate::cayley::{CayleyElement, Dim};
use crate::error::{Error, Result};
use crate::twisted::CayleyVector;

const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HopfMap {
    /// `(x₁, (x₂, …, x_k)) ↦ (−x̄₁x₂, …, −x̄₁x_{k−1}, x_k)`
    PropF,
    /// `ω` / `Ω`: `(−x̄₁x₂, …, −x̄₁x_{k−1}, x̄₁x_kx₁)`
    Omega,
    /// `ω₀` / `Ω₀`: `(x₂, …, x_{k−1}, x̄₁x_kx₁)`
    OmegaZero,
    /// `ω_i` / `Ω_i`, `1 ≤ i ≤ k − 2`: slot `x_{i+1}` replaced by `−x̄₁x_{i+1}`
    OmegaI(usize),
    /// `(x, y) ↦ x y x̄` with `y` imaginary (`k = 2`)
    XyConj,
    /// `(x₁, (x₂, …, x_k)) ↦ (x₁x₂, …, x₁x_{j+1}, x̄₁x_{j+2}, …, x̄₁x_k)`
    SplitJ(usize),
}

impl HopfMap {
    pub fn id(&self) -> String {
        match self {
            HopfMap::PropF => "prop-f".into(),
            HopfMap::Omega => "omega".into(),
            HopfMap::OmegaZero => "omega-0".into(),
            HopfMap::OmegaI(i) => format!("omega-{i}"),
            HopfMap::XyConj => "xy-conj".into(),
            HopfMap::SplitJ(j) => format!("split-{j}"),
        }
    }

    /// Whether the last slot of `y` and of `f(x, y)` is purely imaginary.
    pub fn imaginary_last(&self) -> bool {
        !matches!(self, HopfMap::SplitJ(_))
    }
}

impl FromStr for HopfMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownId { kind: "hopf map", id: s.into() };
        match s {
            "prop-f" => Ok(HopfMap::PropF),
            "omega" => Ok(HopfMap::Omega),
            "omega-0" => Ok(HopfMap::OmegaZero),
            "xy-conj" => Ok(HopfMap::XyConj),
            _ => {
                if let Some(i) = s.strip_prefix("omega-") {
                    let i: usize = i.parse().map_err(|_| unknown())?;
                    Ok(HopfMap::OmegaI(i))
                } else if let Some(j) = s.strip_prefix("split-") {
                    Ok(HopfMap::SplitJ(j.parse().map_err(|_| unknown())?))
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

/// A registered map bound to an algebra and a length `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HopfSpec {
    pub map: HopfMap,
    pub dim: Dim,
    pub k: usize,
}

impl HopfSpec {
    pub fn new(map: HopfMap, dim: Dim, k: usize) -> Result<Self> {
        if dim.size() < 4 || k < 2 {
            return Err(Error::InvalidParameters(format!("hopf map {} needs 𝔸 ∈ {{ℍ, 𝕆}} and k ≥ 2", map.id())));
        }
        match map {
            HopfMap::XyConj if k != 2 => {
                return Err(Error::InvalidParameters("xy-conj is defined for k = 2".into()));
            }
            HopfMap::OmegaI(i) if i == 0 || i + 2 > k => {
                return Err(Error::InvalidParameters(format!("omega-{i} needs 1 ≤ i ≤ k − 2")));
            }
            HopfMap::SplitJ(j) if j >= k => {
                return Err(Error::InvalidParameters(format!("split-{j} needs 0 ≤ j ≤ k − 1")));
            }
            _ => {}
        }
        Ok(HopfSpec { map, dim, k })
    }

    /// Real length of `y` (and of `f(x, y)`).
    pub fn fiber_len(&self) -> usize {
        self.dim.size() * (self.k - 1)
    }

    fn check_inputs(&self, x: &CayleyElement, y: &CayleyVector) -> Result<()> {
        if x.dim() != self.dim || y.dim() != self.dim || y.len() != self.k - 1 {
            return Err(Error::DimensionMismatch { expected: self.fiber_len(), found: y.len() * y.dim().size() });
        }
        if (x.norm() - 1.0).abs() > UNIT_TOL || (y.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::Domain("Hopf construction inputs must be unit".into()));
        }
        if self.map.imaginary_last() && y.entries()[self.k - 2].re().abs() > UNIT_TOL {
            return Err(Error::Domain("last slot of y must be imaginary".into()));
        }
        Ok(())
    }

    /// `f(x, y)` in the layout of `y`.
    pub fn apply(&self, x: &CayleyElement, y: &CayleyVector) -> Result<CayleyVector> {
        self.check_inputs(x, y)?;
        let ys = y.entries();
        let xb = x.conj();
        let n = ys.len();
        let conj_by = |v: &CayleyElement| (xb * *v) * *x;
        let out: Vec<CayleyElement> = match self.map {
            HopfMap::PropF => (0..n).map(|i| if i + 1 < n { -(xb * ys[i]) } else { ys[i] }).collect(),
            HopfMap::Omega => (0..n).map(|i| if i + 1 < n { -(xb * ys[i]) } else { conj_by(&ys[i]) }).collect(),
            HopfMap::OmegaZero => (0..n).map(|i| if i + 1 < n { ys[i] } else { conj_by(&ys[i]) }).collect(),
            HopfMap::OmegaI(i) => (0..n).map(|s| if s + 1 == i { -(xb * ys[s]) } else { ys[s] }).collect(),
            HopfMap::XyConj => vec![(*x * ys[0]) * xb],
            HopfMap::SplitJ(j) => (0..n).map(|s| if s < j { *x * ys[s] } else { xb * ys[s] }).collect(),
        };
        CayleyVector::new(self.dim, out)
    }

    /// Angle form: `(−cos²t + sin²t, 2 sin t cos t · f(x, y))` in `ℝ ⊕ ℝ^{D(k−1)}`.
    pub fn construct(&self, x: &CayleyElement, y: &CayleyVector, t: f64) -> Result<Vec<f64>> {
        if !(0.0..=FRAC_PI_2).contains(&t) {
            return Err(Error::Domain(format!("angle {t} outside [0, π/2]")));
        }
        let (s, c) = t.sin_cos();
        let f = self.apply(x, y)?;
        let mut out = Vec::with_capacity(1 + self.fiber_len());
        out.push(s * s - c * c);
        out.extend(f.to_reals().into_iter().map(|v| 2.0 * s * c * v));
        Ok(out)
    }

    /// Identifies the angle-form output with a point of `𝔸^{k−1}` (see module docs).
    pub fn fold(&self, raw: &[f64]) -> Result<Vec<f64>> {
        if !self.map.imaginary_last() {
            return Err(Error::InvalidParameters(format!("{} has no imaginary slot to fold into", self.map.id())));
        }
        let d = self.dim.size();
        let n = self.fiber_len();
        let mut out = Vec::with_capacity(n);
        let last = &raw[1 + n - d..];
        out.push(raw[0] + last[0]);
        out.extend_from_slice(&last[1..]);
        out.extend_from_slice(&raw[1..1 + n - d]);
        Ok(out)
    }

    /// Point form: `H(f)(u, v)` for `(u, v) ∈ 𝔸 ⊕ 𝔸^{k−1}` on the unit sphere,
    /// folded when the map has an imaginary last slot.
    pub fn point(&self, z: &[f64]) -> Result<Vec<f64>> {
        let d = self.dim.size();
        if z.len() != d * self.k {
            return Err(Error::DimensionMismatch { expected: d * self.k, found: z.len() });
        }
        let (u, v) = z.split_at(d);
        let ru = u.iter().map(|a| a * a).sum::<f64>().sqrt();
        let rv = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        let t = rv.atan2(ru);
        // On the degenerate fibres the factor sin t cos t kills f; any unit input works.
        let x = if ru > 0.0 {
            CayleyElement::from_slice(self.dim, &u.iter().map(|a| a / ru).collect::<Vec<_>>())?
        } else {
            CayleyElement::one(self.dim)
        };
        let y = if rv > 0.0 {
            CayleyVector::from_reals(self.dim, &v.iter().map(|a| a / rv).collect::<Vec<_>>())?
        } else {
            let mut e = vec![0.0; self.fiber_len()];
            e[self.fiber_len() - d + 1] = 1.0;
            CayleyVector::from_reals(self.dim, &e)?
        };
        let raw = self.construct(&x, &y, t)?;
        if self.map.imaginary_last() {
            self.fold(&raw)
        } else {
            Ok(raw)
        }
    }
}

/// `f(x, y) = x y x̄` for a unit `x` and a unit imaginary `y`.
pub fn xy_conj(x: &CayleyElement, y: &CayleyElement) -> Result<CayleyElement> {
    if (x.norm() - 1.0).abs() > UNIT_TOL || (y.norm() - 1.0).abs() > UNIT_TOL || y.re().abs() > UNIT_TOL {
        return Err(Error::Domain("xy-conj needs unit x and unit imaginary y".into()));
    }
    Ok((*x * *y) * x.conj())
}

/// `f(x₁, …, x_k) = (x₁x₂, …, x₁x_{j+1}, x̄₁x_{j+2}, …, x̄₁x_k)`.
pub fn split_j(x1: &CayleyElement, rest: &CayleyVector, j: usize) -> Result<CayleyVector> {
    if j > rest.len() {
        return Err(Error::Domain(format!("j = {j} exceeds k − 1 = {}", rest.len())));
    }
    if (x1.norm() - 1.0).abs() > UNIT_TOL || (rest.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::Domain("split-j needs unit inputs".into()));
    }
    let xb = x1.conj();
    let out = rest.entries().iter().enumerate().map(|(s, v)| if s < j { *x1 * *v } else { xb * *v }).collect();
    CayleyVector::new(rest.dim(), out)
}

/// Inputs for [`harmonic_seed_map`].
#[derive(Clone, Debug, PartialEq)]
pub enum HarmonicSeed {
    XyConj { x: CayleyElement, y: CayleyElement },
    SplitJ { x1: CayleyElement, rest: CayleyVector, j: usize },
}

/// The seed maps whose Hopf constructions carry harmonic representatives.
pub fn harmonic_seed_map(seed: &HarmonicSeed) -> Result<Vec<f64>> {
    match seed {
        HarmonicSeed::XyConj { x, y } => Ok(xy_conj(x, y)?.coords().to_vec()),
        HarmonicSeed::SplitJ { x1, rest, j } => Ok(split_j(x1, rest, *j)?.to_reals()),
    }
}

/// Finite-difference spherical Laplacian of `g` at a unit point `x`, via the
/// degree-0 homogeneous extension.
pub fn spherical_laplacian_fd(g: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> f64 {
    let ext = |v: &[f64]| {
        let r = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        g(&v.iter().map(|a| a / r).collect::<Vec<_>>())
    };
    let g0 = ext(x);
    let mut v = x.to_vec();
    let mut acc = 0.0;
    for i in 0..x.len() {
        v[i] = x[i] + h;
        let gp = ext(&v);
        v[i] = x[i] - h;
        let gm = ext(&v);
        v[i] = x[i];
        acc += (gp - 2.0 * g0 + gm) / (h * h);
    }
    acc
}

/// Measured ratios `(−Δ_x f_c / f_c, −Δ_y f_c / f_c)` for the component `c` of
/// `f(x, y) = x y x̄` largest in magnitude at `(x, y)`. Reported, not asserted.
pub fn xy_conj_eigen_ratios_fd(x: &CayleyElement, y: &CayleyElement, h: f64) -> Result<(f64, f64)> {
    let f = xy_conj(x, y)?;
    let dim = x.dim();
    let c = (0..dim.size()).max_by(|&a, &b| f.coords()[a].abs().total_cmp(&f.coords()[b].abs())).expect("nonempty");
    let fc = f.coords()[c];
    let in_x = |v: &[f64]| {
        let xv = CayleyElement::from_slice(dim, v).expect("size");
        ((xv * *y) * xv.conj()).coords()[c]
    };
    // y ranges over the unit sphere of Im 𝔸.
    let y_im = &y.coords()[1..];
    let in_y = |v: &[f64]| {
        let mut full = vec![0.0];
        full.extend_from_slice(v);
        let yv = CayleyElement::from_slice(dim, &full).expect("size");
        ((*x * yv) * x.conj()).coords()[c]
    };
    let lx = spherical_laplacian_fd(in_x, x.coords(), h);
    let ly = spherical_laplacian_fd(in_y, y_im, h);
    Ok((-lx / fc, -ly / fc))
}
