//! Finite abstract simplicial complexes on the vertex set `[m] = {1, …, m}`.
//!
//! A complex is stored by its facets. Faces are bitmasks over the vertex set,
//! which caps `m` at [`MAX_VERTICES`]. All public I/O is 1-indexed.

mod face;
mod families;
mod parse;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use face::Face;
pub use families::{cross_polytope_boundary, cycle, edgeless, random_complex, simplex, simplex_boundary, Family};
pub use parse::{parse_complex, parse_facets, parse_json};

/// Largest supported vertex count (faces are `u64` bitmasks).
pub const MAX_VERTICES: usize = 64;

/// Face enumeration is refused beyond this many faces.
pub const FACE_CAP: usize = 1 << 24;

/// Vertex counts up to this size get an O(1) face lookup table.
const LOOKUP_TABLE_MAX_M: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("empty document: no faces listed")]
    Empty,
    #[error("line {line}: malformed token `{token}`")]
    MalformedToken { line: usize, token: String },
    #[error("line {line}: malformed header `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: duplicate `m=` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: vertex {vertex} is outside [1, {m}]")]
    VertexOutOfRange { line: usize, vertex: u64, m: u64 },
    #[error("line {line}: vertex {vertex} listed twice in one face")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("vertex count {0} is not supported (must be between 1 and {MAX_VERTICES})")]
    UnsupportedVertexCount(u64),
    #[error("face enumeration refused: more than {FACE_CAP} faces")]
    FaceCapExceeded,
    #[error("incidence matrix is empty")]
    EmptyIncidence,
    #[error("incidence matrix is ragged: row {row} has {len} entries, expected {expected}")]
    RaggedIncidence { row: usize, len: usize, expected: usize },
    #[error("polytope is not simple: vertex {vertex} lies on {degree} facets, vertex 1 lies on {expected}")]
    NotSimple {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("invalid JSON complex: {0}")]
    Json(String),
    #[error("invalid family parameters: {0}")]
    FamilyParameter(String),
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
}

struct ComplexData {
    m: usize,
    facets: Vec<Face>,
    faces: OnceLock<Result<Vec<Face>, ComplexError>>,
    lookup: OnceLock<Option<Vec<u64>>>,
}

/// A finite abstract simplicial complex, given by an antichain of facets.
///
/// Cloning is cheap; derived data (faces, lookup table) is computed lazily
/// and shared between clones.
#[derive(Clone)]
pub struct SimplicialComplex(Arc<ComplexData>);

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.m == other.0.m && self.0.facets == other.0.facets)
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("m", &self.0.m)
            .field("facets", &self.0.facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// Builds the complex generated by `faces` on `[m]`.
    ///
    /// The listed faces need not form an antichain; only the inclusion-maximal
    /// ones are kept. An empty list yields the complex `{∅}`.
    pub fn from_faces<I>(m: usize, faces: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Face>,
    {
        if m == 0 || m > MAX_VERTICES {
            return Err(ComplexError::UnsupportedVertexCount(m as u64));
        }
        let mut listed: Vec<Face> = faces.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for face in &listed {
            if let Some(v) = face.max_vertex() {
                if v > m {
                    return Err(ComplexError::VertexOutOfRange {
                        line: 0,
                        vertex: v as u64,
                        m: m as u64,
                    });
                }
            }
        }
        // Larger faces first so a single pass keeps only maximal ones.
        listed.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let mut facets: Vec<Face> = Vec::new();
        for face in listed {
            if !facets.iter().any(|f| face.is_subset(f)) {
                facets.push(face);
            }
        }
        if facets.is_empty() {
            facets.push(Face::empty());
        }
        facets.sort();
        Ok(Self(Arc::new(ComplexData {
            m,
            facets,
            faces: OnceLock::new(),
            lookup: OnceLock::new(),
        })))
    }

    /// Convenience constructor from 1-indexed vertex lists.
    pub fn from_vertex_lists(m: usize, lists: &[&[usize]]) -> Result<Self, ComplexError> {
        let faces = lists
            .iter()
            .map(|l| Face::from_vertices(l.iter().copied()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_faces(m, faces)
    }

    pub fn vertex_count(&self) -> usize {
        self.0.m
    }

    pub fn facets(&self) -> &[Face] {
        &self.0.facets
    }

    /// `max facet size − 1`; the complex `{∅}` has dimension −1.
    pub fn dimension(&self) -> isize {
        self.max_facet_size() as isize - 1
    }

    pub fn max_facet_size(&self) -> usize {
        self.0.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// Whether `face` lies in the complex. Does not require face enumeration.
    pub fn contains_face(&self, face: Face) -> bool {
        self.is_face_mask(face.mask())
    }

    pub(crate) fn is_face_mask(&self, mask: u64) -> bool {
        if let Some(table) = self.lookup_table() {
            return table[(mask >> 6) as usize] >> (mask & 63) & 1 == 1;
        }
        self.0.facets.iter().any(|f| mask & !f.mask() == 0)
    }

    fn lookup_table(&self) -> Option<&Vec<u64>> {
        self.0
            .lookup
            .get_or_init(|| {
                if self.0.m > LOOKUP_TABLE_MAX_M {
                    return None;
                }
                let faces = self.faces().ok()?;
                let words = (1usize << self.0.m).div_ceil(64);
                let mut table = vec![0u64; words];
                for face in faces {
                    let bit = face.mask();
                    table[(bit >> 6) as usize] |= 1 << (bit & 63);
                }
                Some(table)
            })
            .as_ref()
    }

    /// All faces including `∅`, sorted by size and then lexicographically.
    pub fn faces(&self) -> Result<&[Face], ComplexError> {
        self.0
            .faces
            .get_or_init(|| enumerate_faces(&self.0.facets))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// `f_{-1}, f_0, …, f_{dim}`; the leading entry counts the empty face.
    pub fn f_vector(&self) -> Result<Vec<u64>, ComplexError> {
        let mut f = vec![0u64; self.max_facet_size() + 1];
        for face in self.faces()? {
            f[face.len()] += 1;
        }
        Ok(f)
    }

    /// Inclusion-minimal subsets of `[m]` that are not faces.
    pub fn minimal_non_faces(&self) -> Result<Vec<Face>, ComplexError> {
        let faces = self.faces()?;
        let full = full_mask(self.0.m);
        let mut found: HashSet<u64> = HashSet::new();
        for face in faces {
            let mut rest = full & !face.mask();
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let candidate = face.mask() | bit;
                if found.contains(&candidate) || self.is_face_mask(candidate) {
                    continue;
                }
                let mut minimal = true;
                let mut inner = candidate;
                while inner != 0 {
                    let b = inner & inner.wrapping_neg();
                    inner &= inner - 1;
                    if !self.is_face_mask(candidate & !b) {
                        minimal = false;
                        break;
                    }
                }
                if minimal {
                    found.insert(candidate);
                }
            }
        }
        let mut out: Vec<Face> = found.into_iter().map(Face::from_mask).collect();
        out.sort();
        Ok(out)
    }

    /// Edges of the 1-skeleton as 1-indexed pairs `(j, k)` with `j < k`.
    pub fn one_skeleton(&self) -> Vec<(usize, usize)> {
        let mut edges = BTreeSet::new();
        for facet in &self.0.facets {
            let vs = facet.vertices();
            for (i, &j) in vs.iter().enumerate() {
                for &k in &vs[i + 1..] {
                    edges.insert((j, k));
                }
            }
        }
        edges.into_iter().collect()
    }

    /// Adjacency bitmasks of the 1-skeleton, indexed 0-based.
    pub(crate) fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.0.m];
        for facet in &self.0.facets {
            let mask = facet.mask();
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                adj[v] |= mask & !(1 << v);
            }
        }
        adj
    }

    /// Elements `j ∈ [m]` with `{j}` not a face.
    pub fn ghost_vertices(&self) -> Vec<usize> {
        let used = self.0.facets.iter().fold(0u64, |acc, f| acc | f.mask());
        (1..=self.0.m).filter(|&v| used >> (v - 1) & 1 == 0).collect()
    }

    /// Whether every minimal non-face has exactly two elements.
    pub fn is_flag_like(&self) -> Result<bool, ComplexError> {
        Ok(self.minimal_non_faces()?.iter().all(|f| f.len() == 2))
    }

    /// The join `K * L` on `[m_K + m_L]`, with the vertices of `L` shifted by `m_K`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        let shift = self.0.m;
        let m = shift + other.0.m;
        if m > MAX_VERTICES {
            return Err(ComplexError::UnsupportedVertexCount(m as u64));
        }
        let mut facets = Vec::with_capacity(self.0.facets.len() * other.0.facets.len());
        for f in &self.0.facets {
            for g in &other.0.facets {
                facets.push(Face::from_mask(f.mask() | g.mask() << shift));
            }
        }
        SimplicialComplex::from_faces(m, facets)
    }

    /// The dual complex of a simple polytope.
    ///
    /// `incidence[v][f]` says whether polytope vertex `v` lies on facet `f`. The
    /// result lives on the facet set, with one facet per polytope vertex.
    pub fn dual_of_simple_polytope(incidence: &[Vec<bool>]) -> Result<SimplicialComplex, ComplexError> {
        let width = incidence.first().map(Vec::len).unwrap_or(0);
        if incidence.is_empty() || width == 0 {
            return Err(ComplexError::EmptyIncidence);
        }
        if width > MAX_VERTICES {
            return Err(ComplexError::UnsupportedVertexCount(width as u64));
        }
        let mut expected = None;
        let mut faces = Vec::with_capacity(incidence.len());
        for (row, flags) in incidence.iter().enumerate() {
            if flags.len() != width {
                return Err(ComplexError::RaggedIncidence {
                    row: row + 1,
                    len: flags.len(),
                    expected: width,
                });
            }
            let mask = flags
                .iter()
                .enumerate()
                .filter(|(_, &on)| on)
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            let degree = mask.count_ones() as usize;
            match expected {
                None => expected = Some(degree),
                Some(n) if n != degree => {
                    return Err(ComplexError::NotSimple {
                        vertex: row + 1,
                        degree,
                        expected: n,
                    });
                }
                _ => {}
            }
            faces.push(Face::from_mask(mask));
        }
        SimplicialComplex::from_faces(width, faces)
    }

    /// Facet-list text with an `m=` header; parses back to the same complex.
    pub fn to_facet_text(&self) -> String {
        let mut out = format!("m={}\n", self.0.m);
        for facet in &self.0.facets {
            let line: Vec<String> = facet.vertices().iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            m: self.0.m,
            facets: self.0.facets.iter().map(|f| f.vertices()).collect(),
        }
    }
}

/// JSON mirror of the facet-list format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

pub(crate) fn full_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn enumerate_faces(facets: &[Face]) -> Result<Vec<Face>, ComplexError> {
    let mut seen: HashSet<u64> = HashSet::new();
    for facet in facets {
        if facet.len() > 24 {
            return Err(ComplexError::FaceCapExceeded);
        }
        let top = facet.mask();
        // Walk all submasks of the facet, including 0.
        let mut sub = top;
        loop {
            if seen.insert(sub) && seen.len() > FACE_CAP {
                return Err(ComplexError::FaceCapExceeded);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & top;
        }
    }
    let mut faces: Vec<Face> = seen.into_iter().map(Face::from_mask).collect();
    faces.sort();
    Ok(faces)
}
