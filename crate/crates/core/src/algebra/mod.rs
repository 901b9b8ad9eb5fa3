//! Exact arithmetic in the Stanley–Reisner ring `ℤ[K] = ℤ[v_1, …, v_m] / I_K`.
//!
//! `I_K` is generated by the monomials `v_μ` with `μ` a non-face, so a
//! monomial vanishes in `ℤ[K]` exactly when its support is not a face. Every
//! [`SrElement`] is kept reduced. Degrees are cohomological: `deg v_j = 2`.

mod monomial;
mod polynomial;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex};

pub use monomial::Monomial;
pub use polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("coefficient overflow (exceeds signed 64-bit)")]
    CoefficientOverflow,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("vertex {0} is outside the supported range")]
    VertexOutOfRange(usize),
    #[error("monomial uses vertex {vertex} but the complex has m = {m}")]
    VertexNotInComplex { vertex: usize, m: usize },
    #[error("operands live in different Stanley-Reisner rings")]
    MixedAmbient,
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("invalid element JSON: {0}")]
    Json(String),
}

/// A reduced element of `ℤ[K]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SrElement {
    complex: SimplicialComplex,
    poly: Polynomial,
}

impl std::fmt::Debug for SrElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(&self.poly, f)
    }
}

impl std::fmt::Display for SrElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(&self.poly, f)
    }
}

/// Maps a free polynomial to `ℤ[K]` by dropping every term whose support is a
/// non-face.
pub fn reduce(raw: &Polynomial, complex: &SimplicialComplex) -> Result<SrElement, AlgebraError> {
    check_vertices(raw, complex)?;
    Ok(SrElement {
        complex: complex.clone(),
        poly: raw.retain_support(|mask| complex.is_face_mask(mask)),
    })
}

fn check_vertices(raw: &Polynomial, complex: &SimplicialComplex) -> Result<(), AlgebraError> {
    let m = complex.vertex_count();
    for (mono, _) in raw.terms() {
        if let Some(v) = mono.support().max_vertex() {
            if v > m {
                return Err(AlgebraError::VertexNotInComplex { vertex: v, m });
            }
        }
    }
    Ok(())
}

impl SrElement {
    pub fn zero(complex: &SimplicialComplex) -> Self {
        SrElement {
            complex: complex.clone(),
            poly: Polynomial::zero(),
        }
    }

    pub fn one(complex: &SimplicialComplex) -> Self {
        SrElement {
            complex: complex.clone(),
            poly: Polynomial::one(),
        }
    }

    /// The generator `v_j`, which is zero when `j` is a ghost vertex.
    pub fn var(complex: &SimplicialComplex, vertex: usize) -> Result<Self, AlgebraError> {
        reduce(&Polynomial::var(vertex)?, complex)
    }

    /// `Σ_j coefs[j−1]·v_j`.
    pub fn linear(complex: &SimplicialComplex, coefs: &[i64]) -> Result<Self, AlgebraError> {
        let terms = coefs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| Monomial::var(i + 1).map(|m| (m, c)))
            .collect::<Result<Vec<_>, _>>()?;
        reduce(&Polynomial::from_terms(terms)?, complex)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> + '_ {
        self.poly.terms()
    }

    pub fn coefficient(&self, mono: &Monomial) -> i64 {
        self.poly.coefficient(mono)
    }

    fn same_ring(&self, other: &SrElement) -> Result<(), AlgebraError> {
        if self.complex == other.complex {
            Ok(())
        } else {
            Err(AlgebraError::MixedAmbient)
        }
    }

    pub fn checked_add(&self, other: &SrElement) -> Result<SrElement, AlgebraError> {
        self.same_ring(other)?;
        Ok(SrElement {
            complex: self.complex.clone(),
            poly: self.poly.checked_add(&other.poly)?,
        })
    }

    pub fn checked_sub(&self, other: &SrElement) -> Result<SrElement, AlgebraError> {
        self.same_ring(other)?;
        Ok(SrElement {
            complex: self.complex.clone(),
            poly: self.poly.checked_sub(&other.poly)?,
        })
    }

    /// Product in `ℤ[K]`; terms with non-face support are never materialized.
    pub fn checked_mul(&self, other: &SrElement) -> Result<SrElement, AlgebraError> {
        self.same_ring(other)?;
        let complex = &self.complex;
        Ok(SrElement {
            complex: complex.clone(),
            poly: self.poly.mul_filtered(&other.poly, |mask| complex.is_face_mask(mask))?,
        })
    }

    /// Product of a sequence, reducing after every factor.
    pub fn product<'a, I>(complex: &SimplicialComplex, factors: I) -> Result<SrElement, AlgebraError>
    where
        I: IntoIterator<Item = &'a SrElement>,
    {
        factors
            .into_iter()
            .try_fold(SrElement::one(complex), |acc, f| acc.checked_mul(f))
    }

    pub fn homogeneous_part(&self, degree: u64) -> SrElement {
        SrElement {
            complex: self.complex.clone(),
            poly: self.poly.homogeneous_part(degree),
        }
    }

    pub fn is_homogeneous(&self, degree: u64) -> bool {
        self.poly.is_homogeneous(degree)
    }

    /// Image under `ℤ[K] → ℤ[α]`, `v_j ↦ 0` for `j ∉ α`. The codomain is a free
    /// polynomial ring because the full simplex on `α` has no relations.
    pub fn restrict_to_face(&self, face: Face) -> Result<Polynomial, AlgebraError> {
        if !self.complex.contains_face(face) {
            return Err(AlgebraError::NotAFace(face));
        }
        let keep = face.mask();
        Ok(self.poly.retain_support(|mask| mask & !keep == 0))
    }

    /// Canonical JSON: `[{"coef": c, "mono": {"j": e, …}}, …]`.
    pub fn to_json(&self) -> Vec<TermJson> {
        self.poly
            .terms()
            .map(|(m, c)| TermJson {
                coef: c,
                mono: m.exponents().map(|(v, e)| (v.to_string(), e)).collect(),
            })
            .collect()
    }

    pub fn from_json(complex: &SimplicialComplex, terms: &[TermJson]) -> Result<SrElement, AlgebraError> {
        let mut raw = Polynomial::zero();
        for t in terms {
            let mut pairs = Vec::with_capacity(t.mono.len());
            for (k, &e) in &t.mono {
                let v: usize = k
                    .parse()
                    .map_err(|_| AlgebraError::Json(format!("bad vertex key `{k}`")))?;
                pairs.push((v, e));
            }
            raw.add_term(Monomial::from_exponents(pairs)?, t.coef)?;
        }
        reduce(&raw, complex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coef: i64,
    pub mono: BTreeMap<String, u32>,
}

/// `c(λ) = ∏_j (1 + v_j)`, computed as a reduced product.
pub fn total_chern(complex: &SimplicialComplex) -> Result<SrElement, AlgebraError> {
    complex.faces()?;
    let factors = (1..=complex.vertex_count())
        .map(|j| SrElement::one(complex).checked_add(&SrElement::var(complex, j)?))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    SrElement::product(complex, &factors)
}

/// `p = ∏_j (1 − v_j²)`, computed as a reduced product.
pub fn total_pontrjagin(complex: &SimplicialComplex) -> Result<SrElement, AlgebraError> {
    complex.faces()?;
    let factors = (1..=complex.vertex_count())
        .map(|j| {
            let v = SrElement::var(complex, j)?;
            SrElement::one(complex).checked_sub(&v.checked_mul(&v)?)
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    SrElement::product(complex, &factors)
}

/// `c_i(λ) = σ_i(v_1, …, v_m)`, the degree-`2i` part of [`total_chern`].
pub fn elementary_symmetric_class(complex: &SimplicialComplex, i: usize) -> Result<SrElement, AlgebraError> {
    Ok(total_chern(complex)?.homogeneous_part(2 * i as u64))
}
