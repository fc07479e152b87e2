//! Run configuration and tolerances.

use serde::Serialize;

use crate::bundle::sample::RNG_ALGORITHM;
use crate::error::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 10_000;

/// Tolerances of the floating-point checks. Integer checks are always exact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// `max |χᵗχ − I|`
    pub orthogonality: f64,
    /// `|det χ − 1|`
    pub determinant: f64,
    /// `χ` against `ψ₁⁻¹ ∘ ψ₂`
    pub consistency: f64,
    /// closed-form projected maps against `χ(z)e₁`
    pub projected: f64,
    /// `||Y| − 1|` and `|⟨Y, z⟩_p|`
    pub embedding: f64,
    /// both descriptions of `M₊`, and membership of `Φ(A, z)` for `m = 3`
    pub membership: f64,
    /// `|F − 1|` on `M₊`
    pub fkm: f64,
    /// `||∇F|² − 16|x|⁶|`
    pub cartan_munzner: f64,
    /// `|ΔF − c|x|²|`
    pub laplacian: f64,
    /// relative error of `∇F` against central differences
    pub gradient_fd: f64,
    /// octonion identity residuals
    pub octonion: f64,
    /// equivariance and invariance under `Sp(k)`
    pub cohomogeneity: f64,
    /// floor for witness minima
    pub witness: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            orthogonality: 1e-10,
            determinant: 1e-8,
            consistency: 1e-9,
            projected: 1e-11,
            embedding: 1e-11,
            membership: 1e-10,
            fkm: 1e-11,
            cartan_munzner: 1e-9,
            laplacian: 1e-8,
            gradient_fd: 1e-6,
            octonion: 1e-13,
            cohomogeneity: 1e-10,
            witness: 1e-6,
        }
    }
}

/// Parameters of one run. `jobs` and `timings` do not appear in reports.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub m: usize,
    pub k: usize,
    pub p: usize,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub inject_fault: bool,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(m: usize, k: usize, p: usize) -> Self {
        RunConfig {
            m,
            k,
            p,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            tolerances: Tolerances::default(),
            inject_fault: false,
            timings: false,
        }
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.samples = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Range checks done before any computation.
    pub fn validate(&self) -> Result<()> {
        if !matches!(self.m, 1 | 2 | 3 | 4 | 8) {
            return Err(Error::UnsupportedM(self.m));
        }
        if self.k < 2 {
            return Err(Error::InvalidParameters(format!("k = {} must be at least 2", self.k)));
        }
        if self.p >= self.k {
            return Err(Error::InvalidTwist { k: self.k, p: self.p });
        }
        if self.m <= 3 && self.p != 0 {
            return Err(Error::InvalidParameters(format!("p must be 0 for m = {}", self.m)));
        }
        Ok(())
    }

    pub fn report_config(&self, command: &str) -> ReportConfig {
        ReportConfig {
            command: command.into(),
            m: self.m,
            k: self.k,
            p: self.p,
            pair: None,
            seed: self.seed,
            rng: RNG_ALGORITHM.into(),
            samples: self.samples,
            inject_fault: self.inject_fault,
            tolerances: self.tolerances,
        }
    }
}

/// The `config` block of a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportConfig {
    pub command: String,
    pub m: usize,
    pub k: usize,
    pub p: usize,
    pub pair: Option<String>,
    pub seed: u64,
    pub rng: String,
    pub samples: usize,
    pub inject_fault: bool,
    pub tolerances: Tolerances,
}
