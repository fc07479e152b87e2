//! Symmetric Clifford systems `{P₀, …, P_m}` on `ℝ^{2l}` in standard form and
//! the OT-FKM polynomial they define.
//!
//! Every operator here is block-monomial on `𝔸^n` (`𝔸` of dimension `δ(m)`):
//! block `i` of the image is `s_i · e_{b_i} · x_{π(i)}`. Application is linear
//! in `l`; dense integer matrices are materialized only for certification.

use crate::cayley::{Cayley, Dim, Scalar};
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

/// Dense materialization cap on `l`.
pub const MAX_DENSE_L: usize = 4096;

/// Dimension of the irreducible module of `C_{m−1}`: `δ(1)=1, δ(2)=2, δ(3)=δ(4)=4, δ(8)=8`.
pub fn delta(m: usize) -> Result<usize> {
    match m {
        1 => Ok(1),
        2 => Ok(2),
        3 | 4 => Ok(4),
        8 => Ok(8),
        _ => Err(Error::UnsupportedM(m)),
    }
}

fn algebra_dim(m: usize) -> Result<Dim> {
    Dim::new(delta(m)?)
}

/// Block-monomial operator: `(T x)_i = s_i · e_{b_i} · x_{π(i)}` on `𝔸^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOperator {
    dim: Dim,
    perm: Vec<usize>,
    signs: Vec<i8>,
    mults: Vec<usize>,
}

/// Skew-symmetric orthogonal operator `E_α` on `ℝ^l`.
pub type SkewOperator = BlockOperator;

impl BlockOperator {
    pub fn new(dim: Dim, perm: Vec<usize>, signs: Vec<i8>, mults: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n || mults.len() != n {
            return Err(Error::InvalidParameters("block operator arrays differ in length".into()));
        }
        let mut seen = vec![false; n];
        for &j in &perm {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParameters("block map is not a permutation".into()));
            }
        }
        if signs.iter().any(|s| s.abs() != 1) || mults.iter().any(|&b| b >= dim.size()) {
            return Err(Error::InvalidParameters("bad sign or multiplier".into()));
        }
        Ok(BlockOperator { dim, perm, signs, mults })
    }

    /// Blockwise left multiplication by `e_basis` with the given signs.
    pub fn left_mult(dim: Dim, basis: usize, signs: Vec<i8>) -> Self {
        let n = signs.len();
        BlockOperator { dim, perm: (0..n).collect(), signs, mults: vec![basis; n] }
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn blocks(&self) -> usize {
        self.perm.len()
    }

    /// Size of the underlying real space.
    #[inline]
    pub fn real_size(&self) -> usize {
        self.perm.len() * self.dim.size()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn apply<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        let d = self.dim.size();
        assert_eq!(x.len(), self.real_size(), "operator/vector size mismatch");
        let mut out = Vec::with_capacity(x.len());
        for i in 0..self.blocks() {
            let src = &x[self.perm[i] * d..(self.perm[i] + 1) * d];
            let mut block = Cayley::<T>::from_slice(self.dim, src).expect("block size");
            if self.mults[i] != 0 {
                block = Cayley::<T>::basis(self.dim, self.mults[i]).expect("basis") * block;
            }
            if self.signs[i] < 0 {
                block = -block;
            }
            out.extend_from_slice(block.coords());
        }
        out
    }

    /// Image of a vector supported on block `src`: its target block and value.
    pub fn apply_block<T: Scalar>(&self, src: usize, x: &Cayley<T>) -> (usize, Cayley<T>) {
        let i = self.perm.iter().position(|&j| j == src).expect("source block in range");
        let mut block = *x;
        if self.mults[i] != 0 {
            block = Cayley::<T>::basis(self.dim, self.mults[i]).expect("basis") * block;
        }
        if self.signs[i] < 0 {
            block = -block;
        }
        (i, block)
    }

    /// Exact matrix with entries in `{−1, 0, 1}`.
    pub fn to_matrix(&self) -> Result<IntMatrix> {
        let n = self.real_size();
        if n > 2 * MAX_DENSE_L {
            return Err(Error::TooLarge { size: n, limit: 2 * MAX_DENSE_L });
        }
        let mut mat = IntMatrix::zeros(n);
        let mut unit = vec![0i64; n];
        for j in 0..n {
            unit[j] = 1;
            for (i, v) in self.apply(&unit).into_iter().enumerate() {
                mat.set(i, j, v);
            }
            unit[j] = 0;
        }
        Ok(mat)
    }

    /// Trace, from the block structure.
    pub fn trace(&self) -> i64 {
        (0..self.blocks())
            .filter(|&i| self.perm[i] == i && self.mults[i] == 0)
            .map(|i| self.signs[i] as i64 * self.dim.size() as i64)
            .sum()
    }

    /// Flips the sign of one block (fault injection).
    pub fn flip_sign(&mut self, block: usize) {
        self.signs[block] = -self.signs[block];
    }

    /// `(z, w) ↦ (E w, −E z)` on `𝔸^{2n}`.
    fn twist(e: &BlockOperator) -> BlockOperator {
        let n = e.blocks();
        let mut perm = Vec::with_capacity(2 * n);
        let mut signs = Vec::with_capacity(2 * n);
        let mut mults = Vec::with_capacity(2 * n);
        for i in 0..n {
            perm.push(n + e.perm[i]);
            signs.push(e.signs[i]);
            mults.push(e.mults[i]);
        }
        for i in 0..n {
            perm.push(e.perm[i]);
            signs.push(-e.signs[i]);
            mults.push(e.mults[i]);
        }
        BlockOperator { dim: e.dim, perm, signs, mults }
    }
}

fn validate(m: usize, k: usize, p: usize) -> Result<()> {
    delta(m)?;
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    if p >= k {
        return Err(Error::InvalidTwist { k, p });
    }
    Ok(())
}

/// Sign pattern of the twisted family: `+` on the first `p` slots and the
/// last slot, `−` on slots `p+1, …, k−1`.
fn twist_signs(k: usize, p: usize) -> Vec<i8> {
    (0..k).map(|i| if i < p || i == k - 1 { 1 } else { -1 }).collect()
}

/// The anticommuting skew family `{E_α}` on `ℝ^l`, `l = k·δ(m)`.
///
/// `m = 4, 8`: `E_α z = (e_α z₁, …, e_α z_p, −e_α z_{p+1}, …, −e_α z_{k−1}, e_α z_k)`.
/// `m = 3`: left multiplication by `i, j, k`. `m = 2`: left multiplication by `i`.
/// `m = 1`: empty.
pub fn build_e_family(m: usize, k: usize, p: usize) -> Result<Vec<SkewOperator>> {
    validate(m, k, p)?;
    let dim = algebra_dim(m)?;
    Ok(match m {
        1 => Vec::new(),
        2 => vec![BlockOperator::left_mult(dim, 1, vec![1; k])],
        3 => (1..4).map(|b| BlockOperator::left_mult(dim, b, vec![1; k])).collect(),
        _ => (1..m).map(|b| BlockOperator::left_mult(dim, b, twist_signs(k, p))).collect(),
    })
}

/// A symmetric Clifford system in standard form.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordSystem {
    m: usize,
    k: usize,
    p: usize,
    dim: Dim,
    skew: Vec<SkewOperator>,
    ops: Vec<BlockOperator>,
}

impl CliffordSystem {
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }
    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }
    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }
    /// `l = k·δ(m)`.
    #[inline]
    pub fn l(&self) -> usize {
        self.k * self.dim.size()
    }
    pub fn operators(&self) -> &[BlockOperator] {
        &self.ops
    }
    pub fn skew_family(&self) -> &[SkewOperator] {
        &self.skew
    }

    /// Multiplicity pair `(m₁, m₂) = (m, l − m − 1)`.
    pub fn multiplicities(&self) -> (i64, i64) {
        (self.m as i64, self.l() as i64 - self.m as i64 - 1)
    }

    /// Dense exact matrices of `P₀, …, P_m`.
    pub fn matrix_form(&self) -> Result<Vec<IntMatrix>> {
        if self.l() > MAX_DENSE_L {
            return Err(Error::TooLarge { size: self.l(), limit: MAX_DENSE_L });
        }
        self.ops.iter().map(BlockOperator::to_matrix).collect()
    }

    /// Flips the sign of the first block of the last operator.
    pub fn inject_sign_fault(&mut self) {
        if let Some(op) = self.ops.last_mut() {
            op.flip_sign(0);
        }
    }

    /// `⟨P_i x, x⟩` for every operator.
    pub fn projections(&self, x: &[f64]) -> Vec<f64> {
        self.ops.iter().map(|op| dot(&op.apply(x), x)).collect()
    }

    fn with_skew(m: usize, k: usize, p: usize, dim: Dim, skew: Vec<SkewOperator>) -> Self {
        let n = 2 * k;
        let p0 = BlockOperator {
            dim,
            perm: (0..n).collect(),
            signs: (0..n).map(|i| if i < k { 1 } else { -1 }).collect(),
            mults: vec![0; n],
        };
        let mut ops = vec![p0];
        if m != 3 {
            ops.push(BlockOperator {
                dim,
                perm: (0..n).map(|i| (i + k) % n).collect(),
                signs: vec![1; n],
                mults: vec![0; n],
            });
        }
        ops.extend(skew.iter().map(BlockOperator::twist));
        CliffordSystem { m, k, p, dim, skew, ops }
    }
}

/// `P₀(z,w) = (z,−w)`, `P₁(z,w) = (w,z)`, `P_{1+α}(z,w) = (E_α w, −E_α z)`;
/// for `m = 3` the system is `P₀` and `(z,w) ↦ (e w, −e z)` for `e = i, j, k`.
pub fn build_clifford_system(m: usize, k: usize, p: usize) -> Result<CliffordSystem> {
    let skew = build_e_family(m, k, p)?;
    Ok(CliffordSystem::with_skew(m, k, p, algebra_dim(m)?, skew))
}

/// Exact residuals of a Clifford system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CliffordResidual {
    /// `max |P_iP_j + P_jP_i − 2δ_ij I|`
    pub anticommutation: i64,
    /// `max |P_i − P_iᵀ|`
    pub symmetry: i64,
    /// `max |P_iᵀP_i − I|`
    pub orthogonality: i64,
}

impl CliffordResidual {
    pub fn is_exact(&self) -> bool {
        self.anticommutation == 0 && self.symmetry == 0 && self.orthogonality == 0
    }

    pub fn max(&self) -> i64 {
        self.anticommutation.max(self.symmetry).max(self.orthogonality)
    }
}

/// Integer-mode certification of all Clifford relations.
pub fn verify_clifford(sys: &CliffordSystem) -> Result<CliffordResidual> {
    certify_matrices(&sys.matrix_form()?)
}

/// Certification of an arbitrary family of integer matrices.
pub fn certify_matrices(mats: &[IntMatrix]) -> Result<CliffordResidual> {
    let Some(first) = mats.first() else {
        return Ok(CliffordResidual::default());
    };
    let id = IntMatrix::identity(first.size());
    let two_id = id.scale(2);
    let mut res = CliffordResidual::default();
    for (i, a) in mats.iter().enumerate() {
        let at = a.transpose();
        res.symmetry = res.symmetry.max((a - &at).max_abs());
        res.orthogonality = res.orthogonality.max((&(&at * a) - &id).max_abs());
        for b in &mats[i..] {
            let mut s = &(a * b) + &(b * a);
            if std::ptr::eq(a, b) {
                s = &s - &two_id;
            }
            res.anticommutation = res.anticommutation.max(s.max_abs());
        }
    }
    Ok(res)
}

/// Exact product `P₀P₁⋯P_m`.
pub fn product_matrix(sys: &CliffordSystem) -> Result<IntMatrix> {
    let mats = sys.matrix_form()?;
    let mut acc = IntMatrix::identity(2 * sys.l());
    for m in &mats {
        acc = &acc * m;
    }
    Ok(acc)
}

/// `Tr(P₀P₁⋯P_m)` for `m ∈ {4, 8}`.
pub fn product_trace(sys: &CliffordSystem) -> Result<i64> {
    if sys.m != 4 && sys.m != 8 {
        return Err(Error::UnsupportedM(sys.m));
    }
    Ok(product_matrix(sys)?.trace())
}

/// Columns of `P₀P₁⋯P_m` on the block basis, without dense matrices:
/// entry `(j, b)` is the target block and value of `P₀⋯P_m (e_b in block j)`.
fn structured_product(sys: &CliffordSystem) -> Vec<Vec<(usize, Cayley<i64>)>> {
    let blocks = 2 * sys.k;
    (0..blocks)
        .map(|j| {
            (0..sys.dim.size())
                .map(|b| {
                    let start = (j, Cayley::<i64>::basis(sys.dim, b).expect("basis"));
                    sys.ops.iter().rev().fold(start, |(blk, v), op| op.apply_block(blk, &v))
                })
                .collect()
        })
        .collect()
}

/// [`product_trace`] from the block structure; no size limit.
pub fn product_trace_structured(sys: &CliffordSystem) -> Result<i64> {
    if sys.m != 4 && sys.m != 8 {
        return Err(Error::UnsupportedM(sys.m));
    }
    Ok(structured_product(sys)
        .iter()
        .enumerate()
        .flat_map(|(j, cols)| cols.iter().enumerate().map(move |(b, (i, v))| if *i == j { v.coords()[b] } else { 0 }))
        .sum())
}

/// [`classify_definiteness`] from the block structure; no size limit.
pub fn classify_definiteness_structured(sys: &CliffordSystem) -> Result<Definiteness> {
    if !sys.m.is_multiple_of(4) {
        return Ok(Definiteness::NotApplicable);
    }
    let cols = structured_product(sys);
    let is = |sign: i64| {
        cols.iter().enumerate().all(|(j, c)| {
            c.iter().enumerate().all(|(b, (i, v))| {
                *i == j && v.coords().iter().enumerate().all(|(t, &x)| x == if t == b { sign } else { 0 })
            })
        })
    };
    Ok(if is(1) {
        Definiteness::DefinitePlus
    } else if is(-1) {
        Definiteness::DefiniteMinus
    } else {
        Definiteness::Indefinite
    })
}

/// Closed form `−8(2p−k+2)` (`m = 4`) or `−16(2p−k+2)` (`m = 8`).
pub fn product_trace_closed_form(m: usize, k: usize, p: usize) -> Result<i64> {
    let base = 2 * p as i64 - k as i64 + 2;
    match m {
        4 => Ok(-8 * base),
        8 => Ok(-16 * base),
        _ => Err(Error::UnsupportedM(m)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    DefinitePlus,
    DefiniteMinus,
    Indefinite,
    NotApplicable,
}

/// Compares `P₀⋯P_m` with `±I` when `m ≡ 0 (mod 4)`.
pub fn classify_definiteness(sys: &CliffordSystem) -> Result<Definiteness> {
    if !sys.m.is_multiple_of(4) {
        return Ok(Definiteness::NotApplicable);
    }
    let prod = product_matrix(sys)?;
    let id = IntMatrix::identity(prod.size());
    Ok(if prod == id {
        Definiteness::DefinitePlus
    } else if prod == -&id {
        Definiteness::DefiniteMinus
    } else {
        Definiteness::Indefinite
    })
}

/// Result of trying to extend `{P₀, …, P_m}` by one operator.
#[derive(Clone, Debug, PartialEq)]
pub enum Extension {
    /// The certified extension operator and the enlarged system.
    Extended {
        operator: SkewOperator,
        system: CliffordSystem,
    },
    NotExtendable {
        reason: String,
    },
}

impl Extension {
    pub fn is_extended(&self) -> bool {
        matches!(self, Extension::Extended { .. })
    }
}

/// For `k = 2p + 2`, the operator
/// `E(z) = (z_{p+1}, …, z_{2p}, −z₁, …, −z_p, z_{2p+2}, −z_{2p+1})`
/// anticommutes with the twisted family; it is certified exactly before return.
pub fn extend_clifford(m: usize, k: usize, p: usize) -> Result<Extension> {
    if m != 4 && m != 8 {
        return Err(Error::UnsupportedM(m));
    }
    validate(m, k, p)?;
    if k != 2 * p + 2 {
        return Ok(Extension::NotExtendable { reason: "k ≠ 2p+2".into() });
    }
    let dim = algebra_dim(m)?;
    let mut perm = Vec::with_capacity(k);
    let mut signs = Vec::with_capacity(k);
    for i in 0..p {
        perm.push(p + i);
        signs.push(1);
    }
    for i in 0..p {
        perm.push(i);
        signs.push(-1);
    }
    perm.extend([2 * p + 1, 2 * p]);
    signs.extend([1, -1]);
    let operator = BlockOperator::new(dim, perm, signs, vec![0; k])?;

    let skew = build_e_family(m, k, p)?;
    let e_new = operator.to_matrix()?;
    let id = IntMatrix::identity(e_new.size());
    if !(&(&e_new * &e_new) + &id).is_zero() || !(&e_new + &e_new.transpose()).is_zero() {
        return Err(Error::InvalidParameters("extension operator failed E² = −I or skewness".into()));
    }
    for e in &skew {
        let em = e.to_matrix()?;
        if !(&(&e_new * &em) + &(&em * &e_new)).is_zero() {
            return Err(Error::InvalidParameters("extension operator failed anticommutation".into()));
        }
    }
    let mut all = skew;
    all.push(operator.clone());
    let system = CliffordSystem::with_skew(m + 1, k, p, dim, all);
    Ok(Extension::Extended { operator, system })
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `F(x) = |x|⁴ − 2 Σ ⟨P_i x, x⟩²`.
pub fn fkm_polynomial(sys: &CliffordSystem, x: &[f64]) -> f64 {
    let r2 = dot(x, x);
    r2 * r2 - 2.0 * sys.projections(x).iter().map(|q| q * q).sum::<f64>()
}

/// `∇F(x) = 4|x|²x − 8 Σ ⟨P_i x, x⟩ P_i x`.
pub fn fkm_gradient(sys: &CliffordSystem, x: &[f64]) -> Vec<f64> {
    let r2 = dot(x, x);
    let mut g: Vec<f64> = x.iter().map(|v| 4.0 * r2 * v).collect();
    for op in sys.operators() {
        let px = op.apply(x);
        let q = dot(&px, x);
        for (gi, pi) in g.iter_mut().zip(&px) {
            *gi -= 8.0 * q * pi;
        }
    }
    g
}

/// `ΔF(x) = 4(n+2)|x|² − 2 Σ (8|P_i x|² + 4⟨P_i x, x⟩ tr P_i)` with `n = 2l`.
pub fn fkm_laplacian(sys: &CliffordSystem, x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let r2 = dot(x, x);
    let mut lap = 4.0 * (n + 2.0) * r2;
    for op in sys.operators() {
        let px = op.apply(x);
        lap -= 2.0 * (8.0 * dot(&px, &px) + 4.0 * dot(&px, x) * op.trace() as f64);
    }
    lap
}

/// The constant `c` in `ΔF = c|x|²`, namely `8(m₂ − m₁)`.
pub fn laplacian_constant(sys: &CliffordSystem) -> f64 {
    let (m1, m2) = sys.multiplicities();
    8.0 * (m2 - m1) as f64
}

/// `(| |∇F|² − 16|x|⁶ |, |ΔF − c|x|²|)`.
pub fn verify_cartan_munzner(sys: &CliffordSystem, x: &[f64]) -> (f64, f64) {
    let r2 = dot(x, x);
    let g = fkm_gradient(sys, x);
    let grad = (dot(&g, &g) - 16.0 * r2 * r2 * r2).abs();
    let lap = (fkm_laplacian(sys, x) - laplacian_constant(sys) * r2).abs();
    (grad, lap)
}
