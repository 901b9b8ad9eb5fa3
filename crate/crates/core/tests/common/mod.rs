#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use djsplit::complex::{cross_polytope_boundary, cycle, random_complex, simplex_boundary};
use djsplit::{Coloring, SimplicialComplex, SrElement};

pub struct Named {
    pub name: String,
    pub complex: SimplicialComplex,
}

/// Parameters of the random part of the corpus: `(m, generators, seed)`.
pub fn random_params() -> Vec<(usize, usize, u64)> {
    (0..200u64)
        .map(|i| {
            let m = 1 + (i % 10) as usize;
            let generators = 1 + ((i * 7) % 9) as usize;
            (m, generators, 1000 + i)
        })
        .collect()
}

/// ∂Δ[m] for m ≤ 7, cross-polytope boundaries d ≤ 4, cycles up to 12 and 200
/// seeded random complexes with m ≤ 10.
pub fn corpus() -> Vec<Named> {
    let mut out = Vec::new();
    for m in 2..=7 {
        out.push(Named {
            name: format!("simplex-boundary {m}"),
            complex: simplex_boundary(m).unwrap(),
        });
    }
    for d in 1..=4 {
        out.push(Named {
            name: format!("cross-polytope {d}"),
            complex: cross_polytope_boundary(d).unwrap(),
        });
    }
    for k in 3..=12 {
        out.push(Named {
            name: format!("cycle {k}"),
            complex: cycle(k).unwrap(),
        });
    }
    for (m, g, seed) in random_params() {
        out.push(Named {
            name: format!("random m={m} g={g} seed={seed}"),
            complex: random_complex(m, g, seed),
        });
    }
    out
}

/// Facets as sorted vertex lists.
pub fn facet_lists(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    k.facets().iter().map(|f| f.vertices()).collect()
}

/// Downward closure of the facets, by enumerating subsets of each facet list.
pub fn oracle_faces(k: &SimplicialComplex) -> BTreeSet<Vec<usize>> {
    let mut faces = BTreeSet::new();
    for facet in facet_lists(k) {
        let n = facet.len();
        for pick in 0u32..(1 << n) {
            let face: Vec<usize> = (0..n).filter(|i| pick >> i & 1 == 1).map(|i| facet[i]).collect();
            faces.insert(face);
        }
    }
    faces
}

pub type Terms = BTreeMap<Vec<(usize, u32)>, i64>;

pub fn terms_of(x: &SrElement) -> Terms {
    x.terms().map(|(mono, c)| (mono.exponents().collect(), c)).collect()
}

/// `Σ_{α∈K} v_α`.
pub fn oracle_chern(k: &SimplicialComplex) -> Terms {
    oracle_faces(k)
        .into_iter()
        .map(|face| (face.into_iter().map(|v| (v, 1)).collect(), 1))
        .collect()
}

/// `Σ_{α∈K} (−1)^{|α|} ∏_{j∈α} v_j²`.
pub fn oracle_pontrjagin(k: &SimplicialComplex) -> Terms {
    oracle_faces(k)
        .into_iter()
        .map(|face| {
            let sign = if face.len() % 2 == 0 { 1 } else { -1 };
            (face.into_iter().map(|v| (v, 2)).collect(), sign)
        })
        .collect()
}

/// No two vertices of a facet share a color.
pub fn oracle_proper(k: &SimplicialComplex, colors: &[usize]) -> bool {
    facet_lists(k).iter().all(|facet| {
        facet
            .iter()
            .enumerate()
            .all(|(i, &a)| facet[i + 1..].iter().all(|&b| colors[a - 1] != colors[b - 1]))
    })
}

/// Smallest `r` with a proper assignment, by plain enumeration.
pub fn oracle_chromatic(k: &SimplicialComplex) -> usize {
    let m = k.vertex_count();
    for r in 1..=m {
        let mut colors = vec![1usize; m];
        loop {
            if oracle_proper(k, &colors) {
                return r;
            }
            let mut i = 0;
            while i < m && colors[i] == r {
                colors[i] = 1;
                i += 1;
            }
            if i == m {
                break;
            }
            colors[i] += 1;
        }
    }
    m.max(1)
}

/// Both colorings induce the same partition of `[m]`.
pub fn same_partition(a: &Coloring, b: &Coloring) -> bool {
    a.colors().len() == b.colors().len() && a.normalized().colors() == b.normalized().colors()
}

/// All `r^m` assignments in odometer order.
pub fn assignments(m: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (r as u64).pow(m as u32);
    (0..total).map(move |mut idx| {
        let mut colors = vec![0; m];
        for c in colors.iter_mut() {
            *c = (idx % r as u64) as usize + 1;
            idx /= r as u64;
        }
        colors
    })
}
