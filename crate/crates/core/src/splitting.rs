//! Splitting certificates: `r` degree-2 classes `x_1, …, x_r ∈ ℤ[K]` with
//! `∏(1 + x_i) = ∏_j (1 + v_j)` (Chern form) or `∏(1 − x_i²) = ∏_j (1 − v_j²)`
//! (Pontrjagin form).
//!
//! A coloring `g` yields the certificate `x_i = Σ_{j ∈ g⁻¹(i)} v_j`. Conversely a
//! certificate whose coefficient matrix has one `±1` per vertex column defines
//! a vertex map, and the identity holding forces it to be injective on faces.
//! These are identities in `ℤ[K]`, the characteristic-class shadow of a bundle
//! splitting; they say nothing further about bundle isomorphism.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, AlgebraError, Polynomial, SrElement};
use crate::coloring::{self, Coloring, ColoringError};
use crate::complex::{ComplexError, Face, SimplicialComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Chern,
    Pontrjagin,
    #[default]
    Both,
}

impl Mode {
    pub fn checks_chern(self) -> bool {
        matches!(self, Mode::Chern | Mode::Both)
    }

    pub fn checks_pontrjagin(self) -> bool {
        matches!(self, Mode::Pontrjagin | Mode::Both)
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Chern => "chern",
            Mode::Pontrjagin => "pontrjagin",
            Mode::Both => "both",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chern" => Ok(Mode::Chern),
            "pontrjagin" => Ok(Mode::Pontrjagin),
            "both" => Ok(Mode::Both),
            other => Err(format!("unknown mode `{other}` (expected chern, pontrjagin or both)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error("not a valid coloring of the complex: collapses face {0}")]
    InvalidColoring(Face),
    #[error("class {class} is not homogeneous of degree 2")]
    NotLinear { class: usize },
    #[error("{count} classes exceed the vertex count {m}")]
    TooManyClasses { count: usize, m: usize },
    #[error("trivial rank {found} does not equal m - r = {expected}")]
    TrivialRank { expected: usize, found: usize },
    #[error("certificate vertex {vertex} outside [1, {m}]")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Why a list of classes does not determine a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error("class {class} is not homogeneous of degree 2")]
    NotLinear { class: usize },
    #[error("class {class} is zero")]
    ZeroClass { class: usize },
    #[error("vertex {vertex} appears in no class")]
    ZeroColumn { vertex: usize },
    #[error("vertex {vertex} appears in several classes {classes:?}")]
    MultipleEntries { vertex: usize, classes: Vec<usize> },
    #[error("vertex {vertex} has coefficient {coef} in class {class}; {mode} mode requires {allowed}")]
    BadEntry {
        vertex: usize,
        class: usize,
        coef: i64,
        mode: Mode,
        allowed: &'static str,
    },
    #[error("{mode} identity fails at face {face} (monomial {monomial}: expected {expected}, got {found})")]
    IdentityFails {
        mode: Mode,
        face: Face,
        monomial: String,
        expected: i64,
        found: i64,
    },
    #[error("extracted map collapses face {face}")]
    Improper { face: Face },
    #[error("restriction to face {face} does not split as a coordinate inclusion")]
    FaceRestriction { face: Face },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

impl ExtractionError {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            ExtractionError::NotLinear { .. } => "not_linear",
            ExtractionError::ZeroClass { .. } => "zero_class",
            ExtractionError::ZeroColumn { .. } => "zero_column",
            ExtractionError::MultipleEntries { .. } => "multiple_entries",
            ExtractionError::BadEntry { .. } => "bad_entry",
            ExtractionError::IdentityFails { .. } => "identity_fails",
            ExtractionError::Improper { .. } => "improper",
            ExtractionError::FaceRestriction { .. } => "face_restriction",
            ExtractionError::Algebra(_) => "algebra",
            ExtractionError::Complex(_) => "complex",
        }
    }

    /// The vertex or face the error is about, if any.
    pub fn location(&self) -> Option<serde_json::Value> {
        use serde_json::json;
        match self {
            ExtractionError::ZeroColumn { vertex }
            | ExtractionError::MultipleEntries { vertex, .. }
            | ExtractionError::BadEntry { vertex, .. } => Some(json!({ "vertex": vertex })),
            ExtractionError::IdentityFails { face, .. }
            | ExtractionError::Improper { face }
            | ExtractionError::FaceRestriction { face } => Some(json!({ "face": face.vertices() })),
            ExtractionError::NotLinear { class } | ExtractionError::ZeroClass { class } => {
                Some(json!({ "class": class }))
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingCertificate {
    classes: Vec<SrElement>,
    trivial_rank: usize,
    mode: Mode,
}

impl SplittingCertificate {
    /// Checks the shape invariants: degree-2 classes, `r ≤ m`.
    pub fn new(complex: &SimplicialComplex, classes: Vec<SrElement>, mode: Mode) -> Result<Self, SplittingError> {
        let m = complex.vertex_count();
        if classes.len() > m {
            return Err(SplittingError::TooManyClasses {
                count: classes.len(),
                m,
            });
        }
        for (i, x) in classes.iter().enumerate() {
            if x.complex() != complex {
                return Err(AlgebraError::MixedAmbient.into());
            }
            if !x.is_homogeneous(2) {
                return Err(SplittingError::NotLinear { class: i + 1 });
            }
        }
        Ok(SplittingCertificate {
            trivial_rank: m - classes.len(),
            classes,
            mode,
        })
    }

    pub fn classes(&self) -> &[SrElement] {
        &self.classes
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn trivial_rank(&self) -> usize {
        self.trivial_rank
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            mode: self.mode,
            trivial_rank: self.trivial_rank,
            classes: self
                .classes
                .iter()
                .map(|x| {
                    let m = x.complex().vertex_count();
                    x.polynomial()
                        .linear_coefficients(m)
                        .unwrap_or_default()
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .map(|(j, coef)| ClassEntry { vertex: j + 1, coef })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(complex: &SimplicialComplex, doc: &CertificateJson) -> Result<Self, SplittingError> {
        let classes = classes_from_json(complex, &doc.classes)?;
        let cert = SplittingCertificate::new(complex, classes, doc.mode)?;
        if cert.trivial_rank != doc.trivial_rank {
            return Err(SplittingError::TrivialRank {
                expected: cert.trivial_rank,
                found: doc.trivial_rank,
            });
        }
        Ok(cert)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub vertex: usize,
    pub coef: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub mode: Mode,
    pub trivial_rank: usize,
    pub classes: Vec<Vec<ClassEntry>>,
}

/// Builds linear classes from `[{vertex, coef}, …]` lists; repeated vertices add up.
pub fn classes_from_json(
    complex: &SimplicialComplex,
    classes: &[Vec<ClassEntry>],
) -> Result<Vec<SrElement>, SplittingError> {
    let m = complex.vertex_count();
    classes
        .iter()
        .map(|entries| {
            let mut coefs = vec![0i64; m];
            for e in entries {
                if e.vertex == 0 || e.vertex > m {
                    return Err(SplittingError::VertexOutOfRange { vertex: e.vertex, m });
                }
                coefs[e.vertex - 1] = coefs[e.vertex - 1]
                    .checked_add(e.coef)
                    .ok_or(AlgebraError::CoefficientOverflow)?;
            }
            Ok(SrElement::linear(complex, &coefs)?)
        })
        .collect()
}

/// `x_i = Σ_{j ∈ g⁻¹(i)} v_j` for `i = 1..=r`, without checking validity of `g`.
pub fn classes_from_assignment(complex: &SimplicialComplex, g: &Coloring) -> Result<Vec<SrElement>, SplittingError> {
    let m = complex.vertex_count();
    if g.len() != m {
        return Err(ColoringError::LengthMismatch {
            expected: m,
            found: g.len(),
        }
        .into());
    }
    g.classes()
        .into_iter()
        .map(|class| {
            let coefs: Vec<i64> = (1..=m).map(|j| class.contains(j) as i64).collect();
            Ok(SrElement::linear(complex, &coefs)?)
        })
        .collect()
}

/// The certificate of a valid coloring: `c_1(ν_i) = Σ_{j∈S_i} v_j`, trivial rank `m − r`.
pub fn certificate_from_coloring(
    complex: &SimplicialComplex,
    g: &Coloring,
) -> Result<SplittingCertificate, SplittingError> {
    if g.len() != complex.vertex_count() {
        return Err(ColoringError::LengthMismatch {
            expected: complex.vertex_count(),
            found: g.len(),
        }
        .into());
    }
    if !coloring::is_coloring(complex, g) {
        let face = coloring::first_collapsed_face(complex, g).unwrap_or_default();
        return Err(SplittingError::InvalidColoring(face));
    }
    SplittingCertificate::new(complex, classes_from_assignment(complex, g)?, Mode::Both)
}

/// `∏_i (1 + x_i)` in `ℤ[K]`.
pub fn chern_product(complex: &SimplicialComplex, classes: &[SrElement]) -> Result<SrElement, AlgebraError> {
    let one = SrElement::one(complex);
    let factors = classes
        .iter()
        .map(|x| one.checked_add(x))
        .collect::<Result<Vec<_>, _>>()?;
    SrElement::product(complex, &factors)
}

/// `∏_i (1 − x_i²)` in `ℤ[K]`.
pub fn pontrjagin_product(complex: &SimplicialComplex, classes: &[SrElement]) -> Result<SrElement, AlgebraError> {
    let one = SrElement::one(complex);
    let factors = classes
        .iter()
        .map(|x| one.checked_sub(&x.checked_mul(x)?))
        .collect::<Result<Vec<_>, _>>()?;
    SrElement::product(complex, &factors)
}

/// Holds `c(λ)` and `p(λ_ℝ)` of one complex so repeated checks don't recompute them.
pub struct SplittingVerifier {
    complex: SimplicialComplex,
    chern: SrElement,
    pontrjagin: SrElement,
}

impl SplittingVerifier {
    pub fn new(complex: &SimplicialComplex) -> Result<Self, AlgebraError> {
        Ok(SplittingVerifier {
            complex: complex.clone(),
            chern: algebra::total_chern(complex)?,
            pontrjagin: algebra::total_pontrjagin(complex)?,
        })
    }

    pub fn total_chern(&self) -> &SrElement {
        &self.chern
    }

    pub fn total_pontrjagin(&self) -> &SrElement {
        &self.pontrjagin
    }

    pub fn chern(&self, classes: &[SrElement]) -> Result<bool, AlgebraError> {
        Ok(chern_product(&self.complex, classes)? == self.chern)
    }

    pub fn pontrjagin(&self, classes: &[SrElement]) -> Result<bool, AlgebraError> {
        Ok(pontrjagin_product(&self.complex, classes)? == self.pontrjagin)
    }

    /// The least monomial (canonical order) where `product` and `target` differ.
    fn discrepancy(product: &SrElement, target: &SrElement) -> Result<Option<(Face, String, i64, i64)>, AlgebraError> {
        let diff = product.checked_sub(target)?;
        let first = diff.terms().next().map(|(mono, _)| {
            (
                mono.support(),
                mono.to_string(),
                target.coefficient(mono),
                product.coefficient(mono),
            )
        });
        Ok(first)
    }
}

pub fn verify_chern_splitting(
    complex: &SimplicialComplex,
    cert: &SplittingCertificate,
) -> Result<bool, SplittingError> {
    check_ambient(complex, cert)?;
    Ok(SplittingVerifier::new(complex)?.chern(&cert.classes)?)
}

pub fn verify_pontrjagin_splitting(
    complex: &SimplicialComplex,
    cert: &SplittingCertificate,
) -> Result<bool, SplittingError> {
    check_ambient(complex, cert)?;
    Ok(SplittingVerifier::new(complex)?.pontrjagin(&cert.classes)?)
}

fn check_ambient(complex: &SimplicialComplex, cert: &SplittingCertificate) -> Result<(), SplittingError> {
    if cert.classes.iter().any(|x| x.complex() != complex) {
        return Err(AlgebraError::MixedAmbient.into());
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExtractOptions {
    pub mode: Mode,
    /// Also restrict to every face and check that each restriction is a
    /// coordinate inclusion (up to signs) satisfying the identity on its own.
    pub verify_faces: bool,
}

impl ExtractOptions {
    pub fn mode(mode: Mode) -> Self {
        ExtractOptions {
            mode,
            verify_faces: false,
        }
    }
}

/// Reads a coloring off the coefficient columns of `classes` and verifies it.
///
/// In Chern mode each vertex column must be a single `+1`; in Pontrjagin mode a
/// single `±1` (a sign is complex conjugation of that coordinate). Ghost
/// vertices have zero columns and get color 1.
pub fn extract_coloring(
    complex: &SimplicialComplex,
    classes: &[SrElement],
    opts: ExtractOptions,
) -> Result<Coloring, ExtractionError> {
    let m = complex.vertex_count();
    let mut matrix = Vec::with_capacity(classes.len());
    for (i, x) in classes.iter().enumerate() {
        if x.complex() != complex {
            return Err(AlgebraError::MixedAmbient.into());
        }
        let row = x
            .polynomial()
            .linear_coefficients(m)
            .ok_or(ExtractionError::NotLinear { class: i + 1 })?;
        if row.iter().all(|&c| c == 0) {
            return Err(ExtractionError::ZeroClass { class: i + 1 });
        }
        matrix.push(row);
    }

    let ghosts = complex.ghost_vertices();
    let mut colors = Vec::with_capacity(m);
    for j in 1..=m {
        let nonzero: Vec<usize> = (0..matrix.len()).filter(|&i| matrix[i][j - 1] != 0).collect();
        match nonzero.as_slice() {
            [] if ghosts.contains(&j) => colors.push(1),
            [] => return Err(ExtractionError::ZeroColumn { vertex: j }),
            [i] => {
                let coef = matrix[*i][j - 1];
                let ok = match opts.mode {
                    Mode::Pontrjagin => coef.abs() == 1,
                    Mode::Chern | Mode::Both => coef == 1,
                };
                if !ok {
                    let allowed = if opts.mode == Mode::Pontrjagin { "±1" } else { "+1" };
                    return Err(ExtractionError::BadEntry {
                        vertex: j,
                        class: i + 1,
                        coef,
                        mode: opts.mode,
                        allowed,
                    });
                }
                colors.push(i + 1);
            }
            several => {
                return Err(ExtractionError::MultipleEntries {
                    vertex: j,
                    classes: several.iter().map(|i| i + 1).collect(),
                })
            }
        }
    }
    let g = Coloring::new(classes.len().max(1), colors).expect("colors come from class indices");

    let verifier = SplittingVerifier::new(complex)?;
    type Product = fn(&SimplicialComplex, &[SrElement]) -> Result<SrElement, AlgebraError>;
    let checks: [(bool, Mode, Product, &SrElement); 2] = [
        (
            opts.mode.checks_chern(),
            Mode::Chern,
            chern_product,
            verifier.total_chern(),
        ),
        (
            opts.mode.checks_pontrjagin(),
            Mode::Pontrjagin,
            pontrjagin_product,
            verifier.total_pontrjagin(),
        ),
    ];
    for (enabled, mode, product, target) in checks {
        if !enabled {
            continue;
        }
        let got = product(complex, classes)?;
        if let Some((face, monomial, expected, found)) = SplittingVerifier::discrepancy(&got, target)? {
            return Err(ExtractionError::IdentityFails {
                mode,
                face,
                monomial,
                expected,
                found,
            });
        }
    }
    if let Some(face) = coloring::first_collapsed_face(complex, &g) {
        return Err(ExtractionError::Improper { face });
    }
    if opts.verify_faces {
        verify_face_restrictions(complex, classes, opts.mode)?;
    }
    Ok(g)
}

/// On every face `α`, the restricted classes must send each vertex of `α` to a
/// distinct class, and the restricted identity must hold in the free ring `ℤ[α]`.
fn verify_face_restrictions(
    complex: &SimplicialComplex,
    classes: &[SrElement],
    mode: Mode,
) -> Result<(), ExtractionError> {
    for &face in complex.faces()? {
        let restricted = classes
            .iter()
            .map(|x| x.restrict_to_face(face))
            .collect::<Result<Vec<Polynomial>, _>>()?;
        let mut hit = vec![false; classes.len()];
        for j in face.iter() {
            let owners: Vec<usize> = restricted
                .iter()
                .enumerate()
                .filter(|(_, p)| {
                    p.linear_coefficients(complex.vertex_count())
                        .is_some_and(|c| c[j - 1] != 0)
                })
                .map(|(i, _)| i)
                .collect();
            match owners.as_slice() {
                [i] if !hit[*i] => hit[*i] = true,
                _ => return Err(ExtractionError::FaceRestriction { face }),
            }
        }
        let one = Polynomial::one();
        let vars: Vec<Polynomial> = face.iter().map(Polynomial::var).collect::<Result<_, _>>()?;
        if mode.checks_chern() {
            let lhs = fold_product(restricted.iter().map(|x| one.checked_add(x)))?;
            let rhs = fold_product(vars.iter().map(|v| one.checked_add(v)))?;
            if lhs != rhs {
                return Err(ExtractionError::FaceRestriction { face });
            }
        }
        if mode.checks_pontrjagin() {
            let lhs = fold_product(restricted.iter().map(|x| one.checked_sub(&x.checked_mul(x)?)))?;
            let rhs = fold_product(vars.iter().map(|v| one.checked_sub(&v.checked_mul(v)?)))?;
            if lhs != rhs {
                return Err(ExtractionError::FaceRestriction { face });
            }
        }
    }
    Ok(())
}

fn fold_product<I>(factors: I) -> Result<Polynomial, AlgebraError>
where
    I: IntoIterator<Item = Result<Polynomial, AlgebraError>>,
{
    factors
        .into_iter()
        .try_fold(Polynomial::one(), |acc, f| acc.checked_mul(&f?))
}

/// Machine-readable summary of the coloring / splitting equivalence for one complex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub evidence: &'static str,
    pub m: usize,
    pub dim: isize,
    pub clique_lower_bound: usize,
    pub chromatic_number: usize,
    pub coloring: crate::coloring::ColoringJson,
    pub certificate: CertificateJson,
    pub chern_identity: bool,
    pub pontrjagin_identity: bool,
    pub round_trip: RoundTrip,
    /// No coloring with one color fewer exists (trivially true when `r* = 1`).
    pub minimal: bool,
    pub conditions: Conditions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub chern: bool,
    pub pontrjagin: bool,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conditions {
    #[serde(rename = "(i)")]
    pub coloring: bool,
    #[serde(rename = "(ii)")]
    pub complex_split: bool,
    #[serde(rename = "(iii)")]
    pub real_split: bool,
    #[serde(rename = "(iv)")]
    pub complex_stable: bool,
    #[serde(rename = "(v)")]
    pub real_stable: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.coloring && self.complex_split && self.real_split && self.complex_stable && self.real_stable
    }
}

pub fn equivalence_report(complex: &SimplicialComplex) -> Result<EquivalenceReport, SplittingError> {
    let r = coloring::chromatic_number(complex);
    let g = coloring::find_coloring(complex, r).expect("chromatic number admits a coloring");
    let minimal = r == 1 || coloring::find_coloring(complex, r - 1).is_none();
    let cert = certificate_from_coloring(complex, &g)?;
    let verifier = SplittingVerifier::new(complex)?;
    let chern_identity = verifier.chern(cert.classes())?;
    let pontrjagin_identity = verifier.pontrjagin(cert.classes())?;

    let back_chern = extract_coloring(complex, cert.classes(), ExtractOptions::mode(Mode::Chern));
    let back_pont = extract_coloring(complex, cert.classes(), ExtractOptions::mode(Mode::Pontrjagin));
    let round_trip = RoundTrip {
        chern: back_chern.is_ok(),
        pontrjagin: back_pont.is_ok(),
        exact: back_chern.as_ref().ok() == Some(&g) && back_pont.as_ref().ok() == Some(&g),
    };

    let is_col = coloring::is_coloring(complex, &g);
    let split = chern_identity && cert.trivial_rank() == complex.vertex_count() - r;
    Ok(EquivalenceReport {
        evidence: "cohomological certificate",
        m: complex.vertex_count(),
        dim: complex.dimension(),
        clique_lower_bound: complex.max_facet_size(),
        chromatic_number: r,
        coloring: g.to_json(),
        certificate: cert.to_json(),
        chern_identity,
        pontrjagin_identity,
        round_trip,
        minimal,
        conditions: Conditions {
            coloring: is_col,
            complex_split: split,
            real_split: split,
            complex_stable: chern_identity,
            real_stable: chern_identity,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cross_polytope_boundary, cycle, edgeless, simplex, simplex_boundary};

    fn lin(k: &SimplicialComplex, coefs: &[i64]) -> SrElement {
        SrElement::linear(k, coefs).unwrap()
    }

    fn col(r: usize, c: &[usize]) -> Coloring {
        Coloring::new(r, c.to_vec()).unwrap()
    }

    #[test]
    fn certificate_examples() {
        let c4 = cycle(4).unwrap();
        let cert = certificate_from_coloring(&c4, &col(2, &[1, 2, 1, 2])).unwrap();
        let shown: Vec<String> = cert.classes().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["v1 + v3", "v2 + v4"]);
        assert_eq!(cert.trivial_rank(), 2);

        let d3 = simplex(3).unwrap();
        let cert = certificate_from_coloring(&d3, &Coloring::identity(3)).unwrap();
        let shown: Vec<String> = cert.classes().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["v1", "v2", "v3"]);
        assert_eq!(cert.trivial_rank(), 0);

        let e3 = edgeless(3).unwrap();
        let cert = certificate_from_coloring(&e3, &col(1, &[1, 1, 1])).unwrap();
        assert_eq!(cert.classes()[0].to_string(), "v1 + v2 + v3");
        assert_eq!(cert.trivial_rank(), 2);

        assert!(matches!(
            certificate_from_coloring(&c4, &col(2, &[1, 1, 2, 2])),
            Err(SplittingError::InvalidColoring(_))
        ));
    }

    #[test]
    fn chern_verification_examples() {
        let c4 = cycle(4).unwrap();
        let good = SplittingCertificate::new(&c4, vec![lin(&c4, &[1, 0, 1, 0]), lin(&c4, &[0, 1, 0, 1])], Mode::Chern)
            .unwrap();
        assert!(verify_chern_splitting(&c4, &good).unwrap());
        let bad = SplittingCertificate::new(&c4, vec![lin(&c4, &[1, 1, 0, 0]), lin(&c4, &[0, 0, 1, 1])], Mode::Chern)
            .unwrap();
        assert!(!verify_chern_splitting(&c4, &bad).unwrap());
        for k in [
            c4.clone(),
            simplex_boundary(4).unwrap(),
            cross_polytope_boundary(2).unwrap(),
        ] {
            let classes = (1..=k.vertex_count()).map(|j| SrElement::var(&k, j).unwrap()).collect();
            let cert = SplittingCertificate::new(&k, classes, Mode::Chern).unwrap();
            assert!(verify_chern_splitting(&k, &cert).unwrap());
        }
    }

    #[test]
    fn pontrjagin_verification_examples() {
        let c4 = cycle(4).unwrap();
        let cert = certificate_from_coloring(&c4, &col(2, &[1, 2, 1, 2])).unwrap();
        assert!(verify_pontrjagin_splitting(&c4, &cert).unwrap());

        let k = simplex_boundary(4).unwrap();
        let negated = (1..=4)
            .map(|j| {
                lin(&k, &{
                    let mut c = [0; 4];
                    c[j - 1] = -1;
                    c
                })
            })
            .collect();
        let cert = SplittingCertificate::new(&k, negated, Mode::Pontrjagin).unwrap();
        assert!(verify_pontrjagin_splitting(&k, &cert).unwrap());
        assert!(!verify_chern_splitting(&k, &cert).unwrap());

        let d2 = simplex(2).unwrap();
        let cert = SplittingCertificate::new(&d2, vec![lin(&d2, &[1, 1])], Mode::Pontrjagin).unwrap();
        assert!(!verify_pontrjagin_splitting(&d2, &cert).unwrap());
    }

    #[test]
    fn extraction_examples() {
        let c4 = cycle(4).unwrap();
        let classes = vec![lin(&c4, &[1, 0, 1, 0]), lin(&c4, &[0, 1, 0, 1])];
        let g = extract_coloring(&c4, &classes, ExtractOptions::mode(Mode::Chern)).unwrap();
        assert_eq!(g.colors(), &[1, 2, 1, 2]);

        let signed = vec![lin(&c4, &[1, 0, -1, 0]), lin(&c4, &[0, 1, 0, 1])];
        let g = extract_coloring(&c4, &signed, ExtractOptions::mode(Mode::Pontrjagin)).unwrap();
        assert_eq!(g.colors(), &[1, 2, 1, 2]);
        assert!(matches!(
            extract_coloring(&c4, &signed, ExtractOptions::mode(Mode::Chern)).unwrap_err(),
            ExtractionError::BadEntry {
                vertex: 3,
                class: 1,
                coef: -1,
                ..
            }
        ));

        let bad = vec![lin(&c4, &[1, 1, 0, 0]), lin(&c4, &[0, 0, 1, 1])];
        for mode in [Mode::Chern, Mode::Pontrjagin, Mode::Both] {
            match extract_coloring(&c4, &bad, ExtractOptions::mode(mode)).unwrap_err() {
                ExtractionError::IdentityFails { face, .. } => assert_eq!(face.vertices(), vec![1, 2]),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn extraction_rejections() {
        let c4 = cycle(4).unwrap();
        let opts = ExtractOptions::mode(Mode::Pontrjagin);
        let e = extract_coloring(&c4, &[lin(&c4, &[1, 0, 1, 0]), lin(&c4, &[0, 0, 0, 0])], opts).unwrap_err();
        assert_eq!(e, ExtractionError::ZeroClass { class: 2 });
        let e = extract_coloring(&c4, &[lin(&c4, &[1, 0, 1, 0]), lin(&c4, &[0, 1, 0, 0])], opts).unwrap_err();
        assert_eq!(e, ExtractionError::ZeroColumn { vertex: 4 });
        let e = extract_coloring(&c4, &[lin(&c4, &[1, 1, 1, 0]), lin(&c4, &[0, 1, 0, 1])], opts).unwrap_err();
        assert_eq!(
            e,
            ExtractionError::MultipleEntries {
                vertex: 2,
                classes: vec![1, 2]
            }
        );
        let e = extract_coloring(&c4, &[lin(&c4, &[2, 0, 1, 0]), lin(&c4, &[0, 1, 0, 1])], opts).unwrap_err();
        assert!(matches!(e, ExtractionError::BadEntry { vertex: 1, coef: 2, .. }));
        let quad = SrElement::var(&c4, 1)
            .unwrap()
            .checked_mul(&SrElement::var(&c4, 1).unwrap())
            .unwrap();
        let e = extract_coloring(&c4, &[quad], opts).unwrap_err();
        assert_eq!(e, ExtractionError::NotLinear { class: 1 });
    }

    #[test]
    fn face_restriction_check_agrees() {
        let oct = cross_polytope_boundary(3).unwrap();
        let g = col(3, &[1, 1, 2, 2, 3, 3]);
        let cert = certificate_from_coloring(&oct, &g).unwrap();
        let opts = ExtractOptions {
            mode: Mode::Both,
            verify_faces: true,
        };
        assert_eq!(extract_coloring(&oct, cert.classes(), opts).unwrap(), g);
        let signed = vec![
            lin(&oct, &[1, -1, 0, 0, 0, 0]),
            lin(&oct, &[0, 0, -1, 1, 0, 0]),
            lin(&oct, &[0, 0, 0, 0, 1, 1]),
        ];
        let opts = ExtractOptions {
            mode: Mode::Pontrjagin,
            verify_faces: true,
        };
        assert_eq!(extract_coloring(&oct, &signed, opts).unwrap(), g);
    }

    #[test]
    fn certificate_json_round_trip() {
        let c4 = cycle(4).unwrap();
        let cert = certificate_from_coloring(&c4, &col(2, &[1, 2, 1, 2])).unwrap();
        let text = serde_json::to_string(&cert.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"mode":"both","trivial_rank":2,"classes":[[{"vertex":1,"coef":1},{"vertex":3,"coef":1}],[{"vertex":2,"coef":1},{"vertex":4,"coef":1}]]}"#
        );
        let doc: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(SplittingCertificate::from_json(&c4, &doc).unwrap(), cert);
        let mut wrong = doc.clone();
        wrong.trivial_rank = 1;
        assert!(matches!(
            SplittingCertificate::from_json(&c4, &wrong),
            Err(SplittingError::TrivialRank { .. })
        ));
    }

    #[test]
    fn reports() {
        let r = equivalence_report(&cycle(4).unwrap()).unwrap();
        assert_eq!(r.chromatic_number, 2);
        assert!(r.chern_identity && r.pontrjagin_identity && r.round_trip.exact && r.minimal);
        assert!(r.conditions.all());

        let r = equivalence_report(&simplex_boundary(5).unwrap()).unwrap();
        assert_eq!((r.chromatic_number, r.certificate.trivial_rank), (5, 0));

        let r = equivalence_report(&cross_polytope_boundary(3).unwrap()).unwrap();
        assert_eq!((r.chromatic_number, r.certificate.trivial_rank), (3, 3));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["conditions"]["(iii)"], json["conditions"]["(ii)"]);
        assert_eq!(json["evidence"], "cohomological certificate");
    }
}
