//! Sampling the moment-angle complex `Z_K = ⋃_{α∈K} (D²)^α × (S¹)^{[m]∖α}` and
//! numerically auditing the equivariant isomorphism `ν ⊕ ℂ^{s−1} → η` for a
//! color class `S` of size `s`.
//!
//! Over a point `z`, the fiber map sends `(y, x)` with `Σ_{k∈S} x_k = 0` to
//! `u_j = y·∏_{k∈S, k≠j} z̄_k + z_j x_j`. With the hyperplane basis
//! `b_k = e_k − e_s` it is the `s × s` matrix returned by [`fiber_matrix`].
//!
//! Every sample draws from its own ChaCha stream keyed by `(seed, purpose,
//! class, index)`, so reports do not depend on the rayon pool size.

use std::f64::consts::TAU;

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{self, Coloring};
use crate::complex::{ComplexError, Face, SimplicialComplex};

pub type C64 = Complex<f64>;

/// Modulus tolerance for membership of sampled points.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentAngleError {
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
    #[error("not a valid coloring of the complex")]
    InvalidColoring,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A point of `Z_K` together with a face `α` witnessing its stratum.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentAnglePoint {
    pub z: Vec<C64>,
    pub witness: Face,
}

#[derive(Clone, Copy)]
enum Purpose {
    Point = 0,
    Injectivity = 1,
    Adversarial = 2,
    Equivariance = 3,
    Zeros = 4,
}

fn stream_rng(seed: u64, purpose: Purpose, class: usize, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((purpose as u64) << 56 | (class as u64) << 40 | index as u64);
    rng
}

fn unit(rng: &mut impl Rng) -> C64 {
    C64::from_polar(1.0, rng.gen::<f64>() * TAU)
}

fn disk(rng: &mut impl Rng) -> C64 {
    C64::from_polar(rng.gen::<f64>().sqrt(), rng.gen::<f64>() * TAU)
}

fn point_in(m: usize, witness: Face, rng: &mut impl Rng) -> MomentAnglePoint {
    let z = (1..=m)
        .map(|j| if witness.contains(j) { disk(rng) } else { unit(rng) })
        .collect();
    MomentAnglePoint { z, witness }
}

/// `z_j` uniform on the closed disk for `j ∈ α`, uniform on the circle otherwise.
pub fn sample_point(
    complex: &SimplicialComplex,
    witness: Face,
    seed: u64,
) -> Result<MomentAnglePoint, MomentAngleError> {
    if !complex.contains_face(witness) {
        return Err(MomentAngleError::NotAFace(witness));
    }
    let mut rng = stream_rng(seed, Purpose::Point, 0, 0);
    Ok(point_in(complex.vertex_count(), witness, &mut rng))
}

/// Whether `z ∈ Z_K` up to `tol` on the moduli.
pub fn contains(complex: &SimplicialComplex, z: &[C64], tol: f64) -> bool {
    if z.len() != complex.vertex_count() || z.iter().any(|c| !c.norm().is_finite() || c.norm() > 1.0 + tol) {
        return false;
    }
    let interior = z
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() < 1.0 - tol)
        .fold(0u64, |acc, (j, _)| acc | 1 << j);
    complex.contains_face(Face::from_mask(interior))
}

/// `∏_{k∈S, k≠j} z̄_k` for every `j ∈ S`, in the order of `S`.
fn conjugate_cofactors(class: &[usize], z: &[C64]) -> Vec<C64> {
    class
        .iter()
        .map(|&j| {
            class
                .iter()
                .filter(|&&k| k != j)
                .fold(C64::new(1.0, 0.0), |acc, &k| acc * z[k - 1].conj())
        })
        .collect()
}

/// Matrix of `(y, c) ↦ u` where `x = Σ_k c_k (e_k − e_s)`. `class` lists
/// 1-indexed vertices of `S` in increasing order.
pub fn fiber_matrix(class: &[usize], z: &[C64]) -> DMatrix<C64> {
    let s = class.len();
    assert!(s > 0, "color class must be nonempty");
    let cof = conjugate_cofactors(class, z);
    let last = z[class[s - 1] - 1];
    DMatrix::from_fn(s, s, |row, col| match col {
        0 => cof[row],
        k if row == k - 1 => z[class[row] - 1],
        _ if row == s - 1 => -last,
        _ => C64::new(0.0, 0.0),
    })
}

/// `u_j = y·∏_{k≠j} z̄_k + z_j x_j` evaluated directly.
pub fn apply_fiber_map(class: &[usize], z: &[C64], y: C64, x: &[C64]) -> Vec<C64> {
    conjugate_cofactors(class, z)
        .into_iter()
        .zip(class)
        .zip(x)
        .map(|((cof, &j), &xj)| y * cof + z[j - 1] * xj)
        .collect()
}

/// Hyperplane vector `Σ_k c_k (e_k − e_s)` for coordinates `c ∈ ℂ^{s−1}`.
pub fn hyperplane_vector(coords: &[C64]) -> Vec<C64> {
    let mut x = coords.to_vec();
    x.push(-coords.iter().sum::<C64>());
    x
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditConfig {
    pub samples: usize,
    pub seed: u64,
    /// Injectivity passes when `σ_min > injectivity_tol · σ_max`.
    pub injectivity_tol: f64,
    /// Equivariance passes when the relative residual is below this.
    pub equivariance_tol: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            samples: 1000,
            seed: 0,
            injectivity_tol: 1e-9,
            equivariance_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub sample: usize,
    pub adversarial: bool,
    pub z: Vec<[f64; 2]>,
    pub value: f64,
}

fn failure(sample: usize, adversarial: bool, z: &[C64], value: f64) -> Failure {
    Failure {
        sample,
        adversarial,
        z: z.iter().map(|c| [c.re, c.im]).collect(),
        value,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InjectivityAudit {
    pub samples: usize,
    pub adversarial_cases: usize,
    pub min_singular_value: f64,
    /// `min σ_min / σ_max`.
    pub min_inverse_condition: f64,
    /// `min σ_min / max_{a,b} |M_ab|`.
    pub min_singular_over_maxnorm: f64,
    pub pass: bool,
    pub failure: Option<Failure>,
}

struct SvdSample {
    sigma_min: f64,
    sigma_max: f64,
    max_entry: f64,
}

fn svd_sample(class: &[usize], z: &[C64]) -> SvdSample {
    let matrix = fiber_matrix(class, z);
    let max_entry = matrix.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let sv = matrix.singular_values();
    SvdSample {
        sigma_min: sv.iter().copied().fold(f64::INFINITY, f64::min),
        sigma_max: sv.iter().copied().fold(0.0, f64::max),
        max_entry,
    }
}

/// Points over every nonempty face `α ⊆ S` with `z_α = 0` exactly; the other
/// coordinates lie on the circle.
fn adversarial_points(
    complex: &SimplicialComplex,
    class: Face,
    seed: u64,
    tag: usize,
) -> Result<Vec<Vec<C64>>, MomentAngleError> {
    let m = complex.vertex_count();
    Ok(complex
        .faces()?
        .iter()
        .filter(|f| !f.is_empty() && f.is_subset(&class))
        .enumerate()
        .map(|(i, &face)| {
            let mut rng = stream_rng(seed, Purpose::Adversarial, tag, i);
            (1..=m)
                .map(|j| {
                    if face.contains(j) {
                        C64::new(0.0, 0.0)
                    } else {
                        unit(&mut rng)
                    }
                })
                .collect()
        })
        .collect())
}

/// Smallest singular value of the fiber matrix of `class` over random points
/// of `Z_K` (faces drawn uniformly) and over the adversarial zero strata.
///
/// Does not require `class` to be independent in `K`; an improper class shows
/// up as a singular matrix.
pub fn injectivity_audit(
    complex: &SimplicialComplex,
    class: Face,
    tag: usize,
    cfg: &AuditConfig,
) -> Result<InjectivityAudit, MomentAngleError> {
    let faces = complex.faces()?;
    let m = complex.vertex_count();
    let members = class.vertices();
    let random: Vec<(Vec<C64>, SvdSample)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, Purpose::Injectivity, tag, i);
            let face = faces[rng.gen_range(0..faces.len())];
            let p = point_in(m, face, &mut rng);
            let s = svd_sample(&members, &p.z);
            (p.z, s)
        })
        .collect();
    let adversarial: Vec<(Vec<C64>, SvdSample)> = adversarial_points(complex, class, cfg.seed, tag)?
        .into_par_iter()
        .map(|z| {
            let s = svd_sample(&members, &z);
            (z, s)
        })
        .collect();

    let mut audit = InjectivityAudit {
        samples: random.len(),
        adversarial_cases: adversarial.len(),
        min_singular_value: f64::INFINITY,
        min_inverse_condition: f64::INFINITY,
        min_singular_over_maxnorm: f64::INFINITY,
        pass: true,
        failure: None,
    };
    let tagged = random
        .iter()
        .map(|r| (false, r))
        .chain(adversarial.iter().map(|r| (true, r)));
    for (idx, (is_adv, (z, s))) in tagged.enumerate() {
        audit.min_singular_value = audit.min_singular_value.min(s.sigma_min);
        audit.min_inverse_condition = audit.min_inverse_condition.min(s.sigma_min / s.sigma_max);
        audit.min_singular_over_maxnorm = audit.min_singular_over_maxnorm.min(s.sigma_min / s.max_entry);
        let ok = s.sigma_min > cfg.injectivity_tol * s.sigma_max;
        if !ok && audit.pass {
            audit.pass = false;
            let sample = if is_adv { idx - random.len() } else { idx };
            audit.failure = Some(failure(sample, is_adv, z, s.sigma_min));
        }
    }
    Ok(audit)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivarianceAudit {
    pub samples: usize,
    pub max_equivariance_residual: f64,
    pub pass: bool,
    pub failure: Option<Failure>,
}

/// Checks `f(t·(y, x, z)) = t·f(y, x, z)` where `t ∈ T^m` acts by
/// `∏_{j∈S} t_j` on `y`, trivially on `x`, and coordinatewise on `z` and `u`.
///
/// Sample 0 uses `t = 1`, sample 1 uses `t = (−1, 1, …, 1)`.
pub fn equivariance_audit(
    complex: &SimplicialComplex,
    class: Face,
    tag: usize,
    cfg: &AuditConfig,
) -> Result<EquivarianceAudit, MomentAngleError> {
    let faces = complex.faces()?;
    let m = complex.vertex_count();
    let members = class.vertices();
    let s = members.len();
    let residuals: Vec<(Vec<C64>, f64)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, Purpose::Equivariance, tag, i);
            let face = faces[rng.gen_range(0..faces.len())];
            let z = point_in(m, face, &mut rng).z;
            let t: Vec<C64> = match i {
                0 => vec![C64::new(1.0, 0.0); m],
                1 => (0..m).map(|j| C64::new(if j == 0 { -1.0 } else { 1.0 }, 0.0)).collect(),
                _ => (0..m).map(|_| unit(&mut rng)).collect(),
            };
            let y = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let coords: Vec<C64> = (0..s - 1)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let x = hyperplane_vector(&coords);

            let u = apply_fiber_map(&members, &z, y, &x);
            let tz: Vec<C64> = z.iter().zip(&t).map(|(a, b)| a * b).collect();
            let ty = members.iter().fold(y, |acc, &j| acc * t[j - 1]);
            let moved = apply_fiber_map(&members, &tz, ty, &x);
            let num: f64 = moved
                .iter()
                .zip(&u)
                .zip(&members)
                .map(|((a, b), &j)| (a - t[j - 1] * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let den: f64 = u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            (z, if den > 0.0 { num / den } else { num })
        })
        .collect();

    let mut audit = EquivarianceAudit {
        samples: residuals.len(),
        max_equivariance_residual: 0.0,
        pass: true,
        failure: None,
    };
    for (i, (z, r)) in residuals.iter().enumerate() {
        audit.max_equivariance_residual = audit.max_equivariance_residual.max(*r);
        if audit.pass && r.partial_cmp(&cfg.equivariance_tol) != Some(std::cmp::Ordering::Less) {
            audit.pass = false;
            audit.failure = Some(failure(i, false, z, *r));
        }
    }
    Ok(audit)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroAudit {
    pub samples: usize,
    pub max_zeros_in_class: usize,
    /// Every 2-subset of the class is a non-face.
    pub pairs_are_non_faces: bool,
    pub pass: bool,
}

/// Samples the deepest point of each drawn stratum (`z_α = 0`) and counts the
/// zero coordinates inside `class`.
pub fn zero_audit(
    complex: &SimplicialComplex,
    class: Face,
    tag: usize,
    cfg: &AuditConfig,
) -> Result<ZeroAudit, MomentAngleError> {
    let faces = complex.faces()?;
    let m = complex.vertex_count();
    let max_zeros = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(cfg.seed, Purpose::Zeros, tag, i);
            let face = faces[rng.gen_range(0..faces.len())];
            let z: Vec<C64> = (1..=m)
                .map(|j| {
                    if face.contains(j) {
                        C64::new(0.0, 0.0)
                    } else {
                        unit(&mut rng)
                    }
                })
                .collect();
            class.iter().filter(|&j| z[j - 1] == C64::new(0.0, 0.0)).count()
        })
        .max()
        .unwrap_or(0);
    let members = class.vertices();
    let pairs_are_non_faces = members.iter().enumerate().all(|(i, &j)| {
        members[i + 1..]
            .iter()
            .all(|&k| !complex.contains_face(Face::from_mask(1 << (j - 1) | 1 << (k - 1))))
    });
    Ok(ZeroAudit {
        samples: cfg.samples,
        max_zeros_in_class: max_zeros,
        pairs_are_non_faces,
        pass: max_zeros <= 1 && pairs_are_non_faces,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport<A> {
    pub color: usize,
    pub class: Vec<usize>,
    #[serde(flatten)]
    pub audit: A,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<A> {
    pub config: AuditConfig,
    pub classes: Vec<ClassReport<A>>,
    pub pass: bool,
}

fn per_class<A, F>(
    complex: &SimplicialComplex,
    g: &Coloring,
    cfg: &AuditConfig,
    audit: F,
) -> Result<Vec<ClassReport<A>>, MomentAngleError>
where
    F: Fn(&SimplicialComplex, Face, usize, &AuditConfig) -> Result<A, MomentAngleError>,
{
    g.classes()
        .into_iter()
        .enumerate()
        .filter(|(_, class)| !class.is_empty())
        .map(|(i, class)| {
            Ok(ClassReport {
                color: i + 1,
                class: class.vertices(),
                audit: audit(complex, class, i, cfg)?,
            })
        })
        .collect()
}

fn require_coloring(complex: &SimplicialComplex, g: &Coloring) -> Result<(), MomentAngleError> {
    if coloring::is_coloring(complex, g) {
        Ok(())
    } else {
        Err(MomentAngleError::InvalidColoring)
    }
}

pub fn verify_fiberwise_mono(
    complex: &SimplicialComplex,
    g: &Coloring,
    cfg: &AuditConfig,
) -> Result<Report<InjectivityAudit>, MomentAngleError> {
    require_coloring(complex, g)?;
    let classes = per_class(complex, g, cfg, injectivity_audit)?;
    let pass = classes.iter().all(|c| c.audit.pass);
    Ok(Report {
        config: *cfg,
        classes,
        pass,
    })
}

pub fn verify_equivariance(
    complex: &SimplicialComplex,
    g: &Coloring,
    cfg: &AuditConfig,
) -> Result<Report<EquivarianceAudit>, MomentAngleError> {
    require_coloring(complex, g)?;
    let classes = per_class(complex, g, cfg, equivariance_audit)?;
    let pass = classes.iter().all(|c| c.audit.pass);
    Ok(Report {
        config: *cfg,
        classes,
        pass,
    })
}

pub fn at_most_one_zero(
    complex: &SimplicialComplex,
    g: &Coloring,
    cfg: &AuditConfig,
) -> Result<Report<ZeroAudit>, MomentAngleError> {
    require_coloring(complex, g)?;
    let classes = per_class(complex, g, cfg, zero_audit)?;
    let pass = classes.iter().all(|c| c.audit.pass);
    Ok(Report {
        config: *cfg,
        classes,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaAudit {
    pub samples: usize,
    pub adversarial_cases: usize,
    pub min_singular_value: f64,
    pub min_inverse_condition: f64,
    pub min_singular_over_maxnorm: f64,
    pub max_equivariance_residual: f64,
    pub max_zeros_in_class: usize,
    pub pairs_are_non_faces: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injectivity_failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivariance_failure: Option<Failure>,
}

/// All three audits per color class. Runs on any assignment, valid or not, so
/// that a bad coloring is reported rather than refused.
pub fn audit_lemma(
    complex: &SimplicialComplex,
    g: &Coloring,
    cfg: &AuditConfig,
) -> Result<Report<LemmaAudit>, MomentAngleError> {
    let classes = per_class(complex, g, cfg, |k, class, tag, cfg| {
        let inj = injectivity_audit(k, class, tag, cfg)?;
        let eq = equivariance_audit(k, class, tag, cfg)?;
        let zeros = zero_audit(k, class, tag, cfg)?;
        Ok(LemmaAudit {
            samples: inj.samples,
            adversarial_cases: inj.adversarial_cases,
            min_singular_value: inj.min_singular_value,
            min_inverse_condition: inj.min_inverse_condition,
            min_singular_over_maxnorm: inj.min_singular_over_maxnorm,
            max_equivariance_residual: eq.max_equivariance_residual,
            max_zeros_in_class: zeros.max_zeros_in_class,
            pairs_are_non_faces: zeros.pairs_are_non_faces,
            pass: inj.pass && eq.pass && zeros.pass,
            injectivity_failure: inj.failure,
            equivariance_failure: eq.failure,
        })
    })?;
    let pass = coloring::is_coloring(complex, g) && classes.iter().all(|c| c.audit.pass);
    Ok(Report {
        config: *cfg,
        classes,
        pass,
    })
}
