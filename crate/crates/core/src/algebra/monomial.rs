use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::AlgebraError;
use crate::complex::{Face, MAX_VERTICES};

/// A monomial `∏ v_j^{e_j}` with all `e_j ≥ 1`, stored sparsely.
///
/// Ordered by cohomological degree, then by dense exponent vector in
/// descending lexicographic order, so `v₁ < v₂ < v₁² < v₁v₂ < v₂²`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    // (0-based vertex, exponent), sorted by vertex
    exps: SmallVec<[(u8, u16); 8]>,
    support: u64,
    total: u64,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// `v_j` for a 1-indexed vertex `j`.
    pub fn var(vertex: usize) -> Result<Self, AlgebraError> {
        Self::from_exponents([(vertex, 1)])
    }

    /// `v_α = ∏_{j∈α} v_j`.
    pub fn squarefree(face: Face) -> Self {
        let exps: SmallVec<[(u8, u16); 8]> = face.iter().map(|v| ((v - 1) as u8, 1)).collect();
        Monomial {
            total: exps.len() as u64,
            exps,
            support: face.mask(),
        }
    }

    /// From `(vertex, exponent)` pairs (1-indexed); zero exponents are dropped,
    /// repeated vertices have their exponents added.
    pub fn from_exponents<I>(pairs: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, u32)>,
    {
        let mut dense: BTreeMap<u8, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if v == 0 || v > MAX_VERTICES {
                return Err(AlgebraError::VertexOutOfRange(v));
            }
            if e == 0 {
                continue;
            }
            let slot = dense.entry((v - 1) as u8).or_insert(0);
            *slot = slot.checked_add(e).ok_or(AlgebraError::ExponentOverflow)?;
        }
        let exps = dense
            .into_iter()
            .map(|(v, e)| {
                u16::try_from(e)
                    .map(|e| (v, e))
                    .map_err(|_| AlgebraError::ExponentOverflow)
            })
            .collect::<Result<SmallVec<[(u8, u16); 8]>, _>>()?;
        let support = exps.iter().fold(0u64, |acc, &(v, _)| acc | 1 << v);
        let total = exps.iter().map(|&(_, e)| e as u64).sum();
        Ok(Monomial { exps, support, total })
    }

    pub fn support(&self) -> Face {
        Face::from_mask(self.support)
    }

    pub(crate) fn support_mask(&self) -> u64 {
        self.support
    }

    /// Polynomial degree `Σ e_j`.
    pub fn total_exponent(&self) -> u64 {
        self.total
    }

    /// Cohomological degree `2·Σ e_j`.
    pub fn degree(&self) -> u64 {
        2 * self.total
    }

    /// Exponent of the 1-indexed vertex.
    pub fn exponent(&self, vertex: usize) -> u32 {
        self.exps
            .iter()
            .find(|&&(v, _)| v as usize + 1 == vertex)
            .map_or(0, |&(_, e)| e as u32)
    }

    /// `(vertex, exponent)` pairs, 1-indexed, sorted by vertex.
    pub fn exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize + 1, e as u32))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, AlgebraError> {
        let mut exps: SmallVec<[(u8, u16); 8]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a.1.checked_add(b.1).ok_or(AlgebraError::ExponentOverflow)?;
                    exps.push((a.0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Ok(Monomial {
            exps,
            support: self.support | other.support,
            total: self.total + other.total,
        })
    }

    /// Dense lexicographic comparison of exponent vectors `(e_1, e_2, …)`.
    fn dense_cmp(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // `self` has a nonzero exponent where `other` has 0.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total.cmp(&other.total).then_with(|| other.dense_cmp(self))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.exponents().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "v{v}")?;
            } else {
                write!(f, "v{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
