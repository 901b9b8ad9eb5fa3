use std::cmp::Ordering;
use std::fmt;

use super::{ComplexError, MAX_VERTICES};

/// A subset of `[m]`, stored as a bitmask (bit `j − 1` is vertex `j`).
///
/// Ordering is by size, then lexicographic on the sorted vertex list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const fn empty() -> Self {
        Face(0)
    }

    pub const fn from_mask(mask: u64) -> Self {
        Face(mask)
    }

    /// Builds a face from 1-indexed vertices; rejects 0, indices above
    /// [`MAX_VERTICES`] and repeats.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self, ComplexError> {
        let mut mask = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return Err(ComplexError::VertexOutOfRange {
                    line: 0,
                    vertex: v as u64,
                    m: MAX_VERTICES as u64,
                });
            }
            let bit = 1u64 << (v - 1);
            if mask & bit != 0 {
                return Err(ComplexError::DuplicateVertex { line: 0, vertex: v });
            }
            mask |= bit;
        }
        Ok(Face(mask))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Sorted 1-indexed vertices.
    pub fn vertices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            Some(v)
        })
    }

    pub fn contains(self, vertex: usize) -> bool {
        (1..=MAX_VERTICES).contains(&vertex) && self.0 >> (vertex - 1) & 1 == 1
    }

    pub const fn is_subset(self, other: &Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
