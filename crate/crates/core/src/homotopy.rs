//! Homotopy classes of the projected characteristic maps, cross-section
//! predicates and the J-homomorphism bookkeeping behind them.
//!
//! Everything here is exact integer arithmetic; no homotopy theory is computed,
//! only the linear rewriting the classifications need.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::clifford::extend_clifford;
use crate::error::{Error, Result};

/// James number annotation `c₄ = 2⁷·3⁴·5·7`; informational only.
pub const C4: u64 = 2u64.pow(7) * 3u64.pow(4) * 5 * 7;

/// Status reported for `k = 2` cases outside the stable range that have no
/// closed form.
pub const UNSTABLE_STATUS: &str = "unstable range, not classified";

/// Order of the ambient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Modulus {
    /// `ℤ`
    Infinite,
    /// `ℤ_n`
    Finite(u32),
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Infinite => f.write_str("Z"),
            Modulus::Finite(n) => write!(f, "Z{n}"),
        }
    }
}

/// An element of a cyclic homotopy group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HomotopyClass {
    pub modulus: Modulus,
    /// Canonical residue in `[0, n)` for `ℤ_n`; the integer itself for `ℤ`.
    pub value: i64,
    pub generator: bool,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl HomotopyClass {
    pub fn integer(value: i64) -> Self {
        HomotopyClass { modulus: Modulus::Infinite, value, generator: value.abs() == 1 }
    }

    /// `value mod n`, canonical residue.
    pub fn cyclic(value: i64, n: u32) -> Self {
        let r = value.rem_euclid(n as i64);
        HomotopyClass { modulus: Modulus::Finite(n), value: r, generator: gcd(r, n as i64) == 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for HomotopyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            Modulus::Infinite => write!(f, "{} in Z", self.value),
            Modulus::Finite(n) => write!(f, "{} mod {n}", self.value),
        }
    }
}

fn validate(m: usize, k: usize, p: usize) -> Result<()> {
    if !matches!(m, 1 | 2 | 4 | 8) {
        return Err(Error::UnsupportedM(m));
    }
    if k < 2 || p >= k {
        return Err(Error::InvalidTwist { k, p });
    }
    Ok(())
}

fn stable_modulus(m: usize) -> u32 {
    if m == 4 {
        24
    } else {
        240
    }
}

/// Class of the projected characteristic map of the `(m, k, p)` bundle.
///
/// `m = 1`: degree `1 + (−1)^{k−1}`; `m = 2`: `k mod 2`; `m ∈ {4, 8}`:
/// `k − 2 − 2p` modulo 24 resp. 240 for `k ≥ 3`. For `k = 2` only the definite
/// case (a generator of `ℤ₁₂` resp. `ℤ₁₂₀`) and `p = 0` (nullhomotopic) are
/// classified; other `k = 2` cases return [`Error::UnstableLevel`]. For
/// `m ∈ {1, 2}` the twist `p` is ignored.
pub fn homotopy_class(m: usize, k: usize, p: usize) -> Result<HomotopyClass> {
    validate(m, k, p)?;
    let kk = k as i64;
    Ok(match m {
        1 => HomotopyClass::integer(1 + if (k - 1).is_multiple_of(2) { 1 } else { -1 }),
        2 => HomotopyClass::cyclic(kk, 2),
        _ if k == 2 && p == 1 => HomotopyClass::cyclic(1, stable_modulus(m) / 2),
        _ if k == 2 && p == 0 => HomotopyClass::cyclic(0, stable_modulus(m) / 2),
        _ if k == 2 => return Err(Error::UnstableLevel(UNSTABLE_STATUS.into())),
        _ => HomotopyClass::cyclic(kk - 2 - 2 * p as i64, stable_modulus(m)),
    })
}

/// Whether the sphere bundle of `(m, k, p)` admits a cross-section.
pub fn cross_section_exists(m: usize, k: usize, p: usize) -> Result<bool> {
    validate(m, k, p)?;
    Ok(match m {
        1 | 2 => k.is_multiple_of(2),
        _ => (k as i64 - 2 - 2 * p as i64).rem_euclid(stable_modulus(m) as i64) == 0,
    })
}

/// Checks "an extension `P_{m+1}` exists ⟹ a cross-section exists".
pub fn extension_implies_section(m: usize, k: usize, p: usize) -> Result<bool> {
    let extended = extend_clifford(m, k, p)?.is_extended();
    Ok(!extended || cross_section_exists(m, k, p)?)
}

/// `|π_{4k−2} Sp(k−1)|`: `(2k−1)!` for odd `k`, `2(2k−1)!` for even `k`.
pub fn sp_homotopy_order(k: usize) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!("k = {k} < 2")));
    }
    let fact = (1..=2 * k - 1).fold(BigUint::one(), |acc, i| acc * BigUint::from(i));
    Ok(if k.is_multiple_of(2) { fact * 2u32 } else { fact })
}

/// `(2j − k + 1) mod 240`, the harmonically represented class of `π_{8k−2}S^{8k−9}`.
pub fn harmonic_class(k: usize, j: usize) -> Result<HomotopyClass> {
    if k <= 2 || j >= k {
        return Err(Error::InvalidParameters(format!("need k > 2 and 0 ≤ j ≤ k−1, got k = {k}, j = {j}")));
    }
    Ok(HomotopyClass::cyclic(2 * j as i64 - k as i64 + 1, 240))
}

/// Generators entering the J-homomorphism rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `H(ζ)`, quaternionic, stable generator of `ℤ₂₄`
    Zeta,
    /// `H(ϱ)`, quaternionic, `[Σ²H(ϱ)] = 2[ΣH(ζ)]`
    Varrho,
    /// `H(σ)`, octonionic, stable generator of `ℤ₂₄₀`
    Sigma,
    /// `H(ρ)`, octonionic, `[Σ²H(ρ)] = 2[ΣH(σ)]`
    Rho,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::Zeta => "zeta",
            Generator::Varrho => "varrho",
            Generator::Sigma => "sigma",
            Generator::Rho => "rho",
        }
    }

    /// Stable order of the family.
    pub fn modulus(self) -> u32 {
        match self {
            Generator::Zeta | Generator::Varrho => 24,
            Generator::Sigma | Generator::Rho => 240,
        }
    }

    /// `(base generator, factor, level shift)` after applying the relation.
    fn reduce(self) -> (Generator, i64, i64) {
        match self {
            Generator::Varrho => (Generator::Zeta, 2, -1),
            Generator::Rho => (Generator::Sigma, 2, -1),
            g => (g, 1, 0),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "zeta" | "ζ" => Generator::Zeta,
            "varrho" | "ϱ" => Generator::Varrho,
            "sigma" | "σ" => Generator::Sigma,
            "rho" | "ρ" => Generator::Rho,
            _ => return Err(Error::UnknownId { kind: "generator", id: s.into() }),
        })
    }
}

/// `coeff · [Σ^level H(gen)]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JTerm {
    pub coeff: i64,
    pub gen: Generator,
    pub level: i64,
}

/// A formal integer combination of suspended generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JExpression {
    terms: Vec<JTerm>,
}

impl JExpression {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, coeff: i64, gen: Generator, level: i64) -> Self {
        self.terms.push(JTerm { coeff, gen, level });
        self
    }

    /// Adds a term by generator name.
    pub fn named(self, coeff: i64, gen: &str, level: i64) -> Result<Self> {
        Ok(self.term(coeff, gen.parse()?, level))
    }

    pub fn terms(&self) -> &[JTerm] {
        &self.terms
    }

    /// `[σ_k] = −(k−2)[Σ^{4k−9}H(ζ)] − [Σ^{4k−8}H(ϱ)]`.
    pub fn sigma_k(k: usize) -> Self {
        let k = k as i64;
        JExpression::new().term(-(k - 2), Generator::Zeta, 4 * k - 9).term(-1, Generator::Varrho, 4 * k - 8)
    }

    /// `[σ_{k,p}] = −[Σ^{4k−8}H(ϱ)] − (p−1)[Σ^{4k−9}H(ζ)] + (k−1−p)[Σ^{4k−9}H(ζ)]`.
    pub fn sigma_kp(k: usize, p: usize) -> Self {
        let (k, p) = (k as i64, p as i64);
        JExpression::new().term(-1, Generator::Varrho, 4 * k - 8).term(-(p - 1), Generator::Zeta, 4 * k - 9).term(
            k - 1 - p,
            Generator::Zeta,
            4 * k - 9,
        )
    }

    /// `[g_k] = −(k−2)[Σ^{8k−17}H(σ)] − [Σ^{8k−16}H(ρ)]`.
    pub fn g_k(k: usize) -> Self {
        let k = k as i64;
        JExpression::new().term(-(k - 2), Generator::Sigma, 8 * k - 17).term(-1, Generator::Rho, 8 * k - 16)
    }

    /// `[g_{k,p}] = −[Σ^{8k−16}H(ρ)] − (p−1)[Σ^{8k−17}H(σ)] + (k−1−p)[Σ^{8k−17}H(σ)]`.
    pub fn g_kp(k: usize, p: usize) -> Self {
        let (k, p) = (k as i64, p as i64);
        JExpression::new().term(-1, Generator::Rho, 8 * k - 16).term(-(p - 1), Generator::Sigma, 8 * k - 17).term(
            k - 1 - p,
            Generator::Sigma,
            8 * k - 17,
        )
    }

    /// `[H(f)] = j[Σ^{8k−16}H(σ)] − (k−j−1)[Σ^{8k−16}H(σ)]` for the split map.
    pub fn split_hopf(k: usize, j: usize) -> Self {
        let (k, j) = (k as i64, j as i64);
        JExpression::new().term(j, Generator::Sigma, 8 * k - 16).term(-(k - j - 1), Generator::Sigma, 8 * k - 16)
    }
}

/// Rewrites `expr` with the generator relations and reduces modulo `modulus`,
/// which must divide the stable order of the generator family.
pub fn j_reduce(expr: &JExpression, modulus: u32) -> Result<HomotopyClass> {
    let Some(first) = expr.terms.first() else {
        return Ok(HomotopyClass::cyclic(0, modulus.max(1)));
    };
    let family = first.gen.modulus();
    if modulus == 0 || family % modulus != 0 {
        return Err(Error::InvalidParameters(format!("modulus {modulus} does not divide {family}")));
    }
    let mut base: Option<(Generator, i64)> = None;
    let mut total = 0i64;
    for t in &expr.terms {
        let (g, factor, shift) = t.gen.reduce();
        let level = t.level + shift;
        match base {
            None => base = Some((g, level)),
            Some((bg, bl)) if bg == g && bl == level => {}
            Some((bg, bl)) => {
                return Err(Error::UnstableLevel(format!(
                    "cannot combine [Σ^{bl}H({})] with [Σ^{level}H({})]",
                    bg.name(),
                    g.name()
                )))
            }
        }
        total += t.coeff * factor;
    }
    Ok(HomotopyClass::cyclic(total, modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m1_degree() {
        assert_eq!(homotopy_class(1, 3, 0).unwrap().value, 2);
        assert_eq!(homotopy_class(1, 4, 0).unwrap().value, 0);
    }

    #[test]
    fn unstable_k2() {
        assert!(matches!(
            homotopy_class(4, 2, 1).unwrap(),
            HomotopyClass { modulus: Modulus::Finite(12), value: 1, generator: true }
        ));
        assert!(homotopy_class(8, 2, 0).unwrap().is_zero());
    }

    #[test]
    fn c4_value() {
        assert_eq!(C4, 362880);
    }

    #[test]
    fn mixed_levels_rejected() {
        let e = JExpression::new().term(1, Generator::Zeta, 3).term(1, Generator::Zeta, 4);
        assert!(j_reduce(&e, 24).is_err());
        assert!(j_reduce(&JExpression::sigma_k(3), 7).is_err());
    }
}
