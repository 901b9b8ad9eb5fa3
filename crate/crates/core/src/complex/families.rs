use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ComplexError, Face, SimplicialComplex};

/// Named complexes used as a test corpus and by `djsplit gen`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `∂Δ[m]`: all `(m−1)`-subsets of `[m]`.
    SimplexBoundary,
    /// Boundary of the `d`-dimensional cross-polytope on `2d` vertices.
    CrossPolytope,
    /// The `k`-gon.
    Cycle,
    /// The full simplex `Δ[m]`.
    Simplex,
    /// `m` isolated vertices.
    Edgeless,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::SimplexBoundary,
        Family::CrossPolytope,
        Family::Cycle,
        Family::Simplex,
        Family::Edgeless,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SimplexBoundary => "simplex-boundary",
            Family::CrossPolytope => "cross-polytope",
            Family::Cycle => "cycle",
            Family::Simplex => "simplex",
            Family::Edgeless => "edgeless",
        }
    }

    pub fn generate(self, param: usize) -> Result<SimplicialComplex, ComplexError> {
        match self {
            Family::SimplexBoundary => simplex_boundary(param),
            Family::CrossPolytope => cross_polytope_boundary(param),
            Family::Cycle => cycle(param),
            Family::Simplex => simplex(param),
            Family::Edgeless => edgeless(param),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ComplexError::FamilyParameter(format!("unknown family `{s}`")))
    }
}

pub fn simplex(m: usize) -> Result<SimplicialComplex, ComplexError> {
    SimplicialComplex::from_faces(m, [Face::from_mask(super::full_mask(m))])
}

pub fn simplex_boundary(m: usize) -> Result<SimplicialComplex, ComplexError> {
    if m < 2 {
        return Err(ComplexError::FamilyParameter("simplex-boundary needs m >= 2".into()));
    }
    if m > super::MAX_VERTICES {
        return Err(ComplexError::UnsupportedVertexCount(m as u64));
    }
    let full = super::full_mask(m);
    SimplicialComplex::from_faces(m, (0..m).map(|v| Face::from_mask(full & !(1 << v))))
}

/// Vertices `2i−1` and `2i` are antipodal; facets pick one of each pair.
pub fn cross_polytope_boundary(d: usize) -> Result<SimplicialComplex, ComplexError> {
    if d == 0 {
        return Err(ComplexError::FamilyParameter("cross-polytope needs d >= 1".into()));
    }
    if 2 * d > super::MAX_VERTICES || d > 24 {
        return Err(ComplexError::UnsupportedVertexCount(2 * d as u64));
    }
    let facets = (0u64..1 << d).map(|choice| {
        let mask = (0..d).fold(0u64, |acc, i| acc | 1 << (2 * i + (choice >> i & 1) as usize));
        Face::from_mask(mask)
    });
    SimplicialComplex::from_faces(2 * d, facets)
}

pub fn cycle(k: usize) -> Result<SimplicialComplex, ComplexError> {
    if k < 3 {
        return Err(ComplexError::FamilyParameter("cycle needs k >= 3".into()));
    }
    if k > super::MAX_VERTICES {
        return Err(ComplexError::UnsupportedVertexCount(k as u64));
    }
    SimplicialComplex::from_faces(k, (0..k).map(|i| Face::from_mask(1 << i | 1 << ((i + 1) % k))))
}

pub fn edgeless(m: usize) -> Result<SimplicialComplex, ComplexError> {
    if m > super::MAX_VERTICES {
        return Err(ComplexError::UnsupportedVertexCount(m as u64));
    }
    SimplicialComplex::from_faces(m, (0..m).map(|v| Face::from_mask(1 << v)))
}

/// A seeded random complex on `[m]` generated by `num_facets` random nonempty
/// faces. Vertices that land in no generator become ghost vertices.
pub fn random_complex(m: usize, num_facets: usize, seed: u64) -> SimplicialComplex {
    assert!((1..=super::MAX_VERTICES).contains(&m));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces = Vec::with_capacity(num_facets);
    for _ in 0..num_facets {
        let size = rng.gen_range(1..=m.min(4));
        let mut mask = 0u64;
        while (mask.count_ones() as usize) < size {
            mask |= 1 << rng.gen_range(0..m);
        }
        faces.push(Face::from_mask(mask));
    }
    SimplicialComplex::from_faces(m, faces).expect("vertices are in range")
}
