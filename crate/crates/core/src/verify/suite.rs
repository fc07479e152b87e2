//! Check suites behind `verify`, `witness` and `sample`.
//!
//! Every sampled check draws point `i` from its own stream
//! `sample_rng(seed, STREAM·2³² + i)` and reduces with `max` (or `min`), so the
//! result does not depend on the thread count.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::charmap::{
    bundle_dim, chi_consistency, m_plus_membership_with, m_plus_point, orthogonality_defect, projected_map, psi1, psi2,
    CharMap, Scale,
};
use crate::bundle::cohomogeneity::{act, isoparametric_f, phi_cohomogeneity, split_point, QuatMatrix};
use crate::bundle::sample::{basepoint, equator_point, gaussian_vec, sample_rng, uniform_sphere};
use crate::bundle::witness::{witness_min_norm, witness_slice_min, WitnessPair};
use crate::cayley::{check_identity, CayleyElement, Dim, Identity};
use crate::clifford::{
    build_clifford_system, classify_definiteness_structured, fkm_gradient, fkm_polynomial, product_trace_closed_form,
    product_trace_structured, verify_cartan_munzner, verify_clifford, CliffordSystem, Definiteness,
};
use crate::error::{Error, Result};
use crate::twisted::{twisted_inner, CayleyVector, TwistIndex};
use crate::verify::classify::classify;
use crate::verify::config::{ReportConfig, RunConfig};
use crate::verify::report::{timed_check, Bound, CheckRecord, VerificationReport};

/// Basepoint samples for the `χ(0, z_k) = I` check.
pub const BASEPOINT_SAMPLES: usize = 100;
/// Upper bound on finite-difference gradient samples.
pub const FD_SAMPLES_MAX: usize = 1_000;
/// Random points added to the `z₁ = 0` slice grid.
pub const SLICE_RANDOM: usize = 200;

const FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy)]
enum Stream {
    Embedding = 1,
    Membership,
    CharMap,
    Basepoint,
    CartanMunzner,
    GradientFd,
    Octonion,
    Cohomogeneity,
}

fn rng_for(seed: u64, stream: Stream, i: usize) -> ChaCha8Rng {
    sample_rng(seed, ((stream as u64) << 32) | i as u64)
}

/// NaN counts as an infinite residual.
fn clean(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn par_max<const N: usize>(n: usize, f: impl Fn(usize) -> [f64; N] + Sync) -> [f64; N] {
    (0..n).into_par_iter().map(|i| f(i).map(clean)).reduce(|| [0.0; N], |a, b| std::array::from_fn(|j| a[j].max(b[j])))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    checks: Vec<CheckRecord>,
}

impl Ctx<'_> {
    fn push(&mut self, f: impl FnOnce(&RunConfig) -> CheckRecord) {
        let cfg = self.cfg;
        self.checks.push(timed_check(cfg.timings, || f(cfg)));
    }

    /// Runs one sampled pass producing several records.
    fn push_many<const N: usize>(
        &mut self,
        ids: [&str; N],
        bounds: [Bound; N],
        n: usize,
        f: impl Fn(usize) -> [f64; N] + Sync,
    ) {
        let start = std::time::Instant::now();
        let res = par_max(n, f);
        let secs = self.cfg.timings.then(|| start.elapsed().as_secs_f64());
        for j in 0..N {
            let mut rec = CheckRecord::new(ids[j], res[j], bounds[j], n);
            rec.seconds = secs;
            self.checks.push(rec);
        }
    }
}

fn clifford_checks(ctx: &mut Ctx, sys: &CliffordSystem) -> Result<()> {
    let res = verify_clifford(sys)?;
    ctx.push(|_| CheckRecord::new("clifford-exact", res.max() as f64, Bound::Exact, sys.operators().len()));
    let (m, k, p) = (sys.m(), sys.k(), sys.p());
    if matches!(m, 4 | 8) {
        let t = product_trace_structured(sys)?;
        let c = product_trace_closed_form(m, k, p)?;
        ctx.push(|_| CheckRecord::new("trace-formula", (t - c).abs() as f64, Bound::Exact, 1));
        if p + 1 == k {
            let def = classify_definiteness_structured(sys)?;
            let ok = matches!(def, Definiteness::DefinitePlus | Definiteness::DefiniteMinus);
            ctx.push(|_| CheckRecord::new("definite-product", if ok { 0.0 } else { 1.0 }, Bound::Exact, 1));
        }
    }
    Ok(())
}

fn embedding_checks(ctx: &mut Ctx, sys: &CliffordSystem) -> Result<()> {
    let cfg = ctx.cfg;
    let (m, k, p) = (cfg.m, cfg.k, cfg.p);
    let dim = bundle_dim(m)?;
    let d = dim.size();
    let tol = cfg.tolerances;
    if matches!(m, 4 | 8) {
        let t = TwistIndex::new(k, p)?;
        ctx.push_many(["psi-embedding"], [Bound::AtMost(tol.embedding)], cfg.samples, |i| {
            let mut rng = rng_for(cfg.seed, Stream::Embedding, i);
            let z = uniform_sphere(&mut rng, d * k);
            let x = uniform_sphere(&mut rng, d * (k - 1));
            let zv = CayleyVector::from_reals(dim, &z).expect("length");
            let mut r: f64 = 0.0;
            for y in [psi1(m, k, p, &z, &x), psi2(m, k, p, &z, &x)] {
                // Only the measure-zero poles fail.
                let Ok(y) = y else { continue };
                let yv = CayleyVector::from_reals(dim, &y).expect("length");
                let pair = twisted_inner(&yv, &zv, t).map(|c| c.norm()).unwrap_or(f64::NAN);
                r = r.max((yv.norm() - 1.0).abs()).max(pair);
            }
            [r]
        });
    }
    ctx.push_many(
        ["m-plus-membership", "fkm-on-m-plus"],
        [Bound::AtMost(tol.membership), Bound::AtMost(tol.fkm)],
        cfg.samples,
        |i| {
            let mut rng = rng_for(cfg.seed, Stream::Membership, i);
            let z = uniform_sphere(&mut rng, d * k);
            let x = uniform_sphere(&mut rng, d * (k - 1));
            let Ok(pt) = m_plus_point(m, k, p, &z, &x) else { return [0.0, 0.0] };
            let mem = match m_plus_membership_with(sys, &pt, Scale::Focal, tol.membership) {
                Ok(mem) if mem.agree => mem.twisted_residual.max(mem.quadratic_residual),
                _ => f64::INFINITY,
            };
            [mem, (fkm_polynomial(sys, &pt) - 1.0).abs()]
        },
    );
    Ok(())
}

fn charmap_checks(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.cfg;
    let (m, k, p) = (cfg.m, cfg.k, cfg.p);
    let cm = CharMap::new(m, k, p)?;
    let dim = cm.dim();
    let tol = cfg.tolerances;
    let det_target = if cm.lands_in_so() { 1.0 } else { -1.0 };
    ctx.push_many(
        ["chi-orthogonality", "chi-determinant", "chi-consistency", "projected-closed-form"],
        [
            Bound::AtMost(tol.orthogonality),
            Bound::AtMost(tol.determinant),
            Bound::AtMost(tol.consistency),
            Bound::AtMost(tol.projected),
        ],
        cfg.samples,
        |i| {
            let mut rng = rng_for(cfg.seed, Stream::CharMap, i);
            let z = equator_point(&mut rng, dim, k);
            let Ok(chi) = cm.evaluate(&z) else { return [0.0; 4] };
            let cons = chi_consistency(&cm, &z).unwrap_or(0.0);
            let first: Vec<f64> = chi.column(0).iter().copied().collect();
            let proj = projected_map(m, k, p, &z).map(|v| max_diff(&v, &first)).unwrap_or(f64::NAN);
            [orthogonality_defect(&chi), (chi.determinant() - det_target).abs(), cons, proj]
        },
    );
    if cm.lands_in_so() {
        ctx.push_many(["chi-basepoint"], [Bound::Exact], BASEPOINT_SAMPLES, |i| {
            let mut rng = rng_for(cfg.seed, Stream::Basepoint, i);
            let z = basepoint(&mut rng, dim, k);
            match cm.evaluate(&z) {
                Ok(chi) => [(chi.clone() - nalgebra::DMatrix::identity(chi.nrows(), chi.ncols())).abs().max()],
                Err(_) => [f64::INFINITY],
            }
        });
    }
    Ok(())
}

fn fkm_checks(ctx: &mut Ctx, sys: &CliffordSystem) {
    let cfg = ctx.cfg;
    let tol = cfg.tolerances;
    let n = 2 * sys.l();
    ctx.push_many(
        ["cartan-munzner-gradient", "cartan-munzner-laplacian"],
        [Bound::AtMost(tol.cartan_munzner), Bound::AtMost(tol.laplacian)],
        cfg.samples,
        |i| {
            let x = uniform_sphere(&mut rng_for(cfg.seed, Stream::CartanMunzner, i), n);
            let (g, l) = verify_cartan_munzner(sys, &x);
            [g.abs(), l.abs()]
        },
    );
    let n_fd = cfg.samples.min(FD_SAMPLES_MAX);
    ctx.push_many(["fkm-gradient-fd"], [Bound::AtMost(tol.gradient_fd)], n_fd, |i| {
        let mut x = uniform_sphere(&mut rng_for(cfg.seed, Stream::GradientFd, i), n);
        let g = fkm_gradient(sys, &x);
        let mut fd = vec![0.0; n];
        for j in 0..n {
            let x0 = x[j];
            x[j] = x0 + FD_STEP;
            let fp = fkm_polynomial(sys, &x);
            x[j] = x0 - FD_STEP;
            let fm = fkm_polynomial(sys, &x);
            x[j] = x0;
            fd[j] = (fp - fm) / (2.0 * FD_STEP);
        }
        let diff: Vec<f64> = g.iter().zip(&fd).map(|(a, b)| a - b).collect();
        [norm(&diff) / norm(&g)]
    });
}

fn random_octonion(rng: &mut ChaCha8Rng) -> CayleyElement {
    CayleyElement::from_slice(Dim::Octonion, &uniform_sphere(rng, 8)).expect("8 coordinates")
}

fn octonion_checks(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.cfg;
    let ids = [
        Identity::ReCommute,
        Identity::ReAssociate,
        Identity::NormCancel,
        Identity::AdjointShift,
        Identity::ArtinLeftAlternative,
    ];
    ctx.push_many(["octonion-identities"], [Bound::AtMost(cfg.tolerances.octonion)], cfg.samples, |i| {
        let mut rng = rng_for(cfg.seed, Stream::Octonion, i);
        let (a, b, c) = (random_octonion(&mut rng), random_octonion(&mut rng), random_octonion(&mut rng));
        [ids.iter()
            .map(|&id| check_identity(id, &a, &b, &c).unwrap_or(f64::NAN))
            .fold(0.0, |x, y| clean(x).max(clean(y)))]
    });
    let mut seven = 0.0f64;
    for b in 0..8 {
        let e = CayleyElement::basis(Dim::Octonion, b)?;
        seven = seven.max((e.seven_fold_left_mult()? + e).max_abs());
    }
    ctx.push(|_| CheckRecord::new("seven-fold-left", seven, Bound::Exact, 8));
    let (e1, e2, e4) = (
        CayleyElement::basis(Dim::Octonion, 1)?,
        CayleyElement::basis(Dim::Octonion, 2)?,
        CayleyElement::basis(Dim::Octonion, 4)?,
    );
    let witness = check_identity(Identity::Associativity, &e1, &e2, &e4)?;
    ctx.push(|_| CheckRecord::new("non-associativity", witness, Bound::Above(0.0), 1));
    Ok(())
}

/// A unit vector of `ℝ ⊕ ℍ^{k−1}` (real first entry).
fn cohomogeneity_z(rng: &mut ChaCha8Rng, k: usize) -> CayleyVector {
    let mut v = gaussian_vec(rng, 4 * k);
    v[1..4].iter_mut().for_each(|x| *x = 0.0);
    let r = norm(&v);
    v.iter_mut().for_each(|x| *x /= r);
    CayleyVector::from_reals(Dim::Quaternion, &v).expect("4k reals")
}

fn cohomogeneity_checks(ctx: &mut Ctx, sys: &CliffordSystem) {
    let cfg = ctx.cfg;
    let k = cfg.k;
    let tol = cfg.tolerances;
    ctx.push_many(
        ["phi-membership", "phi-equivariance", "f-invariance", "f-value", "f-range", "fkm-on-m-plus"],
        [
            Bound::AtMost(tol.membership),
            Bound::AtMost(tol.cohomogeneity),
            Bound::AtMost(tol.cohomogeneity),
            Bound::AtMost(tol.cohomogeneity),
            Bound::AtMost(1e-12),
            Bound::AtMost(tol.fkm),
        ],
        cfg.samples,
        |i| {
            let mut rng = rng_for(cfg.seed, Stream::Cohomogeneity, i);
            let a = QuatMatrix::random_sp(&mut rng, k);
            let g = QuatMatrix::random_sp(&mut rng, k);
            let z = cohomogeneity_z(&mut rng, k);
            let Ok(pt) = phi_cohomogeneity(&a, &z) else { return [f64::INFINITY; 6] };
            let mem = match m_plus_membership_with(sys, &pt, Scale::Focal, tol.membership) {
                Ok(m) if m.agree => m.twisted_residual.max(m.quadratic_residual),
                _ => f64::INFINITY,
            };
            let (x, y) = split_point(&pt).expect("even length");
            let g_inv = g.conj_transpose();
            let (xg, yg) = (act(&x, &g_inv).expect("k"), act(&y, &g_inv).expect("k"));
            let moved = phi_cohomogeneity(&a.mul(&g_inv), &z).unwrap_or_default();
            let expected: Vec<f64> = xg.to_reals().into_iter().chain(yg.to_reals()).collect();
            let equi = if moved.len() == expected.len() { max_diff(&moved, &expected) } else { f64::INFINITY };
            let (f, f_moved) = match (isoparametric_f(&x, &y), isoparametric_f(&xg, &yg)) {
                (Ok(f), Ok(fm)) => (f, fm),
                _ => return [mem, equi, f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY],
            };
            let z1 = z.entries()[0].re();
            [
                mem,
                equi,
                (f - f_moved).abs(),
                (f - z1).abs(),
                (f.abs() - 1.0).max(0.0),
                (fkm_polynomial(sys, &pt) - 1.0).abs(),
            ]
        },
    );
}

fn run_in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// The full check suite for `(m, k, p)`, in a fixed order.
pub fn run_verify(cfg: &RunConfig, jobs: Option<usize>) -> Result<VerificationReport> {
    cfg.validate()?;
    run_in_pool(jobs, || {
        let mut sys = build_clifford_system(cfg.m, cfg.k, cfg.p)?;
        if cfg.inject_fault {
            sys.inject_sign_fault();
        }
        let mut ctx = Ctx { cfg, checks: Vec::new() };
        clifford_checks(&mut ctx, &sys)?;
        if cfg.m == 3 {
            cohomogeneity_checks(&mut ctx, &sys);
        } else {
            embedding_checks(&mut ctx, &sys)?;
            charmap_checks(&mut ctx)?;
        }
        fkm_checks(&mut ctx, &sys);
        octonion_checks(&mut ctx)?;
        Ok(VerificationReport {
            config: cfg.report_config("verify"),
            checks: ctx.checks,
            classification: Some(classify(cfg.m, cfg.k, cfg.p)?),
        })
    })?
}

/// Classification with its exact consistency checks.
pub fn run_classify(cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let cl = classify(cfg.m, cfg.k, cfg.p)?;
    Ok(VerificationReport { config: cfg.report_config("classify"), checks: cl.checks(), classification: Some(cl) })
}

/// `min |A + B|` over seeded equator samples and over the `z₁ = 0` slice grid.
pub fn run_witness(pair: WitnessPair, cfg: &RunConfig, jobs: Option<usize>) -> Result<VerificationReport> {
    let floor = Bound::Above(cfg.tolerances.witness);
    let (k, p) = (cfg.k, cfg.p);
    if !pair.applicable(k, p) {
        return Err(Error::InvalidParameters(format!("witness {} is not defined for k = {k}, p = {p}", pair.id())));
    }
    let checks = run_in_pool(jobs, || -> Result<Vec<CheckRecord>> {
        let sampled = timed_check(cfg.timings, || match witness_min_norm(pair, k, p, cfg.samples, cfg.seed) {
            Ok(r) => CheckRecord::new("witness-samples", r.min, floor, r.n),
            Err(_) => CheckRecord::new("witness-samples", f64::NAN, floor, 0),
        });
        let slice = timed_check(cfg.timings, || match witness_slice_min(pair, k, p, SLICE_RANDOM, cfg.seed) {
            Ok(r) => CheckRecord::new("witness-slice", r.min, floor, r.n),
            Err(_) => CheckRecord::new("witness-slice", f64::NAN, floor, 0),
        });
        Ok(vec![sampled, slice])
    })??;
    let mut config = cfg.report_config("witness");
    config.m = pair.m();
    config.pair = Some(pair.id().into());
    Ok(VerificationReport { config, checks, classification: None })
}

/// Kinds of points emitted by `sample`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    /// `S^{Dk−1}`
    Sphere,
    /// `Re z_k = 0` in `S^{Dk−1}`
    Equator,
    /// `(0, …, 0, z_k)` with `z_k` unit imaginary
    Basepoint,
    /// `M₊ ⊂ S^{2l−1}` at focal scale
    MPlus,
}

impl std::str::FromStr for SampleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sphere" => SampleKind::Sphere,
            "equator" => SampleKind::Equator,
            "basepoint" => SampleKind::Basepoint,
            "m-plus" => SampleKind::MPlus,
            _ => return Err(Error::UnknownId { kind: "sample kind", id: s.into() }),
        })
    }
}

#[derive(Debug, Serialize)]
pub struct SampleSet {
    pub config: ReportConfig,
    pub kind: String,
    pub points: Vec<Vec<f64>>,
}

/// Seeded points of the requested kind; point `i` depends only on `(seed, i)`.
pub fn run_sample(cfg: &RunConfig, kind: SampleKind) -> Result<SampleSet> {
    cfg.validate()?;
    let (m, k, p) = (cfg.m, cfg.k, cfg.p);
    if m == 3 && kind != SampleKind::Sphere {
        return Err(Error::InvalidParameters("m = 3 only supports sphere samples".into()));
    }
    let dim = if m == 3 { Dim::Quaternion } else { bundle_dim(m)? };
    let d = dim.size();
    let points = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(cfg.seed, i as u64);
            Ok(match kind {
                SampleKind::Sphere => uniform_sphere(&mut rng, d * k),
                SampleKind::Equator => equator_point(&mut rng, dim, k),
                SampleKind::Basepoint => basepoint(&mut rng, dim, k),
                SampleKind::MPlus => loop {
                    let z = uniform_sphere(&mut rng, d * k);
                    let x = uniform_sphere(&mut rng, d * (k - 1));
                    if let Ok(pt) = m_plus_point(m, k, p, &z, &x) {
                        break pt;
                    }
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let name = match kind {
        SampleKind::Sphere => "sphere",
        SampleKind::Equator => "equator",
        SampleKind::Basepoint => "basepoint",
        SampleKind::MPlus => "m-plus",
    };
    Ok(SampleSet { config: cfg.report_config("sample"), kind: name.into(), points })
}
