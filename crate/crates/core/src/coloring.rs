//! Regular `r`-paint colorings: vertex maps `[m] → [r]` that are injective on
//! every face, i.e. non-degenerate simplicial maps `K → Δ[r]`.
//!
//! Exact search comes in two independent flavours: a lexicographic
//! backtracking search that returns the canonical coloring for a fixed `r`,
//! and a DSATUR branch-and-bound for the chromatic number. A brute-force
//! enumerator serves as the oracle for both on small complexes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex};

/// The brute-force oracle refuses complexes with more vertices than this.
pub const BRUTE_FORCE_MAX_M: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("palette size must be at least 1")]
    EmptyPalette,
    #[error("vertex {vertex} has color {color}, outside the palette [1, {r}]")]
    ColorOutOfRange { vertex: usize, color: usize, r: usize },
    #[error("coloring has {found} entries but the complex has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("brute-force oracle limited to m <= {BRUTE_FORCE_MAX_M}, got m = {0}")]
    OracleTooLarge(usize),
}

/// An assignment `g: [m] → [r]`. Validity against a complex is checked
/// separately by [`is_coloring`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    r: usize,
    colors: Vec<usize>,
}

impl Coloring {
    /// `colors[j−1]` is the color of vertex `j`.
    pub fn new(r: usize, colors: Vec<usize>) -> Result<Self, ColoringError> {
        if r == 0 {
            return Err(ColoringError::EmptyPalette);
        }
        if let Some((i, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > r) {
            return Err(ColoringError::ColorOutOfRange {
                vertex: i + 1,
                color: c,
                r,
            });
        }
        Ok(Coloring { r, colors })
    }

    /// The `m`-coloring given by `K ⊆ Δ[m]`.
    pub fn identity(m: usize) -> Self {
        Coloring {
            r: m.max(1),
            colors: (1..=m).collect(),
        }
    }

    pub fn palette_size(&self) -> usize {
        self.r
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, vertex: usize) -> usize {
        self.colors[vertex - 1]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut seen = vec![false; self.r + 1];
        self.colors.iter().for_each(|&c| seen[c] = true);
        seen.iter().filter(|&&s| s).count()
    }

    /// Color classes `S_i = g⁻¹(i)` for `i = 1..=r` (possibly empty).
    pub fn classes(&self) -> Vec<Face> {
        let mut masks = vec![0u64; self.r];
        for (i, &c) in self.colors.iter().enumerate() {
            masks[c - 1] |= 1 << i;
        }
        masks.into_iter().map(Face::from_mask).collect()
    }

    /// Relabels colors in order of first use, shrinking the palette to the used count.
    pub fn normalized(&self) -> Coloring {
        let mut map = vec![0usize; self.r + 1];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == 0 {
                    next += 1;
                    map[c] = next;
                }
                map[c]
            })
            .collect();
        Coloring { r: next.max(1), colors }
    }

    pub fn to_json(&self) -> ColoringJson {
        ColoringJson {
            r: self.r,
            colors: self.colors.clone(),
        }
    }

    pub fn from_json(doc: &ColoringJson) -> Result<Self, ColoringError> {
        Coloring::new(doc.r, doc.colors.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub r: usize,
    pub colors: Vec<usize>,
}

/// Whether `g` is injective on every facet (hence on every face).
pub fn is_coloring(complex: &SimplicialComplex, g: &Coloring) -> bool {
    if g.len() != complex.vertex_count() {
        return false;
    }
    complex.facets().iter().all(|facet| {
        let mut seen: Vec<usize> = facet.iter().map(|v| g.color(v)).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    })
}

/// Whether `g` is a proper coloring of the 1-skeleton.
pub fn skeleton_proper(complex: &SimplicialComplex, g: &Coloring) -> bool {
    g.len() == complex.vertex_count() && complex.one_skeleton().iter().all(|&(j, k)| g.color(j) != g.color(k))
}

/// The first face (in face order) on which `g` is not injective.
pub fn first_collapsed_face(complex: &SimplicialComplex, g: &Coloring) -> Option<Face> {
    complex
        .one_skeleton()
        .into_iter()
        .filter(|&(j, k)| g.color(j) == g.color(k))
        .map(|(j, k)| Face::from_mask(1 << (j - 1) | 1 << (k - 1)))
        .min()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderPolicy {
    /// Highest saturation, then highest degree, then lowest index.
    #[default]
    Dsatur,
    /// Vertices `1..=m` in order.
    Natural,
    /// Highest degree first, ties by lowest index.
    LargestFirst,
}

/// A valid coloring built greedily; ghost vertices get color 1.
pub fn greedy_color(complex: &SimplicialComplex, policy: OrderPolicy) -> Coloring {
    let graph = Graph::new(complex);
    let colors = match policy {
        OrderPolicy::Dsatur => graph.dsatur_greedy(),
        OrderPolicy::Natural => graph.greedy_in_order((0..graph.m).collect()),
        OrderPolicy::LargestFirst => {
            let mut order: Vec<usize> = (0..graph.m).collect();
            order.sort_by_key(|&v| (std::cmp::Reverse(graph.adj[v].count_ones()), v));
            graph.greedy_in_order(order)
        }
    };
    graph.finish(&colors)
}

/// The lexicographically least valid `r`-coloring, if one exists.
///
/// Runs on the current rayon pool; the answer does not depend on the number of
/// worker threads.
pub fn find_coloring(complex: &SimplicialComplex, r: usize) -> Option<Coloring> {
    if r == 0 || complex.max_facet_size() > r {
        return None;
    }
    let graph = Graph::new(complex);
    let palette = r.min(graph.m.max(1));
    let search = LexSearch { graph: &graph, palette };
    let colors = search.run(rayon::current_num_threads())?;
    let mut g = graph.finish(&colors);
    g.r = r;
    Some(g)
}

/// Least `r` admitting a coloring, by DSATUR branch-and-bound seeded with the
/// clique bound (largest facet) and the greedy DSATUR palette.
pub fn chromatic_number(complex: &SimplicialComplex) -> usize {
    let graph = Graph::new(complex);
    let lower = complex.max_facet_size().max(1);
    let greedy = graph.dsatur_greedy();
    let upper = greedy.iter().copied().max().unwrap_or(1) as usize;
    if lower >= upper {
        return upper;
    }
    let mut bnb = BranchAndBound {
        graph: &graph,
        lower,
        best: upper,
        colors: vec![0; graph.m],
    };
    bnb.descend(0);
    bnb.best
}

/// Exhaustive minimum over all `r^m` assignments, `r = 1, 2, …`.
pub fn brute_force_chromatic(complex: &SimplicialComplex) -> Result<usize, ColoringError> {
    let m = complex.vertex_count();
    if m > BRUTE_FORCE_MAX_M {
        return Err(ColoringError::OracleTooLarge(m));
    }
    for r in 1..=m {
        let mut colors = vec![1usize; m];
        loop {
            let g = Coloring {
                r,
                colors: colors.clone(),
            };
            if is_coloring(complex, &g) {
                return Ok(r);
            }
            // odometer
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
    Ok(m)
}

struct Graph {
    m: usize,
    adj: Vec<u64>,
    active: u64,
}

impl Graph {
    fn new(complex: &SimplicialComplex) -> Self {
        let active = complex.facets().iter().fold(0u64, |acc, f| acc | f.mask());
        Graph {
            m: complex.vertex_count(),
            adj: complex.adjacency(),
            active,
        }
    }

    fn is_active(&self, v: usize) -> bool {
        self.active >> v & 1 == 1
    }

    /// Bitmask (bit `c−1`) of colors on colored neighbours of `v`.
    fn saturation(&self, v: usize, colors: &[u8]) -> u64 {
        let mut rest = self.adj[v];
        let mut sat = 0u64;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if colors[u] != 0 {
                sat |= 1 << (colors[u] - 1);
            }
        }
        sat
    }

    fn greedy_in_order(&self, order: Vec<usize>) -> Vec<u8> {
        let mut colors = vec![0u8; self.m];
        for v in order.into_iter().filter(|&v| self.is_active(v)) {
            colors[v] = (!self.saturation(v, &colors)).trailing_zeros() as u8 + 1;
        }
        colors
    }

    /// Next DSATUR vertex: highest saturation, then degree, then lowest index.
    fn dsatur_pick(&self, colors: &[u8]) -> Option<usize> {
        let mut best: Option<(u32, u32, usize)> = None;
        for v in (0..self.m).filter(|&v| self.is_active(v) && colors[v] == 0) {
            let key = (self.saturation(v, colors).count_ones(), self.adj[v].count_ones());
            match best {
                Some((s, d, _)) if (s, d) >= key => {}
                _ => best = Some((key.0, key.1, v)),
            }
        }
        best.map(|(_, _, v)| v)
    }

    fn dsatur_greedy(&self) -> Vec<u8> {
        let mut colors = vec![0u8; self.m];
        while let Some(v) = self.dsatur_pick(&colors) {
            colors[v] = (!self.saturation(v, &colors)).trailing_zeros() as u8 + 1;
        }
        colors
    }

    fn finish(&self, colors: &[u8]) -> Coloring {
        let colors: Vec<usize> = colors.iter().map(|&c| (c as usize).max(1)).collect();
        let r = colors.iter().copied().max().unwrap_or(1);
        Coloring { r, colors }
    }
}

struct BranchAndBound<'a> {
    graph: &'a Graph,
    lower: usize,
    best: usize,
    colors: Vec<u8>,
}

impl BranchAndBound<'_> {
    fn descend(&mut self, used: usize) {
        let Some(v) = self.graph.dsatur_pick(&self.colors) else {
            self.best = used.max(1);
            return;
        };
        let sat = self.graph.saturation(v, &self.colors);
        let limit = (used + 1).min(self.best - 1);
        for c in 1..=limit {
            if sat >> (c - 1) & 1 == 1 {
                continue;
            }
            self.colors[v] = c as u8;
            self.descend(used.max(c));
            self.colors[v] = 0;
            if self.best <= self.lower {
                return;
            }
            // Colors above the current best can no longer help.
            if c + 1 > self.best - 1 {
                break;
            }
        }
    }
}

#[derive(Clone)]
struct LexState {
    next: usize,
    used: usize,
    colors: Vec<u8>,
    // bit c-1 set: color c is taken by a neighbour
    blocked: Vec<u64>,
}

struct LexSearch<'a> {
    graph: &'a Graph,
    palette: usize,
}

impl LexSearch<'_> {
    fn full(&self) -> u64 {
        if self.palette >= 64 {
            u64::MAX
        } else {
            (1u64 << self.palette) - 1
        }
    }

    fn initial(&self) -> LexState {
        LexState {
            next: 0,
            used: 0,
            colors: vec![0; self.graph.m],
            blocked: vec![0; self.graph.m],
        }
    }

    /// Colors vertex `state.next` with `c`; `None` if a later vertex is left
    /// with no color at all.
    fn assign(&self, state: &LexState, c: usize) -> Option<LexState> {
        let v = state.next;
        let mut s = state.clone();
        s.colors[v] = c as u8;
        s.used = s.used.max(c);
        s.next += 1;
        let bit = 1u64 << (c - 1);
        let full = self.full();
        let mut rest = self.graph.adj[v] & !((2u64 << v).wrapping_sub(1));
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            s.blocked[u] |= bit;
            if s.blocked[u] & full == full {
                return None;
            }
        }
        Some(s)
    }

    /// Children of `state` in increasing color order.
    fn children(&self, state: &LexState) -> Vec<LexState> {
        let v = state.next;
        if !self.graph.is_active(v) {
            return self.assign(state, 1).into_iter().collect();
        }
        let limit = (state.used + 1).min(self.palette);
        (1..=limit)
            .filter(|&c| state.blocked[v] >> (c - 1) & 1 == 0)
            .filter_map(|c| self.assign(state, c))
            .collect()
    }

    fn dfs(&self, state: LexState) -> Option<Vec<u8>> {
        if state.next == self.graph.m {
            return Some(state.colors);
        }
        self.children(&state).into_iter().find_map(|child| self.dfs(child))
    }

    fn run(&self, threads: usize) -> Option<Vec<u8>> {
        let root = self.initial();
        if threads <= 1 {
            return self.dfs(root);
        }
        // Expand breadth-first, preserving lexicographic order, until there is
        // enough independent work; the first successful subtree is the answer.
        let mut frontier = vec![root];
        while frontier.len() < 8 * threads {
            if frontier.iter().any(|s| s.next == self.graph.m) {
                break;
            }
            let expanded: Vec<LexState> = frontier.iter().flat_map(|s| self.children(s)).collect();
            if expanded.is_empty() {
                return None;
            }
            frontier = expanded;
        }
        frontier.into_par_iter().find_map_first(|s| self.dfs(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cross_polytope_boundary, cycle, edgeless, random_complex, simplex_boundary};

    fn g(r: usize, colors: &[usize]) -> Coloring {
        Coloring::new(r, colors.to_vec()).unwrap()
    }

    #[test]
    fn validity_examples() {
        let c4 = cycle(4).unwrap();
        assert!(is_coloring(&c4, &g(2, &[1, 2, 1, 2])));
        assert!(!is_coloring(&c4, &g(2, &[1, 1, 2, 2])));
        assert!(is_coloring(&c4, &Coloring::identity(4)));
        assert!(skeleton_proper(&c4, &g(2, &[1, 2, 1, 2])));
        assert!(!skeleton_proper(&c4, &g(2, &[1, 1, 2, 2])));
        assert!(skeleton_proper(&c4, &Coloring::identity(4)));
        assert_eq!(
            first_collapsed_face(&c4, &g(2, &[1, 1, 2, 2])).unwrap().vertices(),
            vec![1, 2]
        );
        // wrong length is never a coloring
        assert!(!is_coloring(&c4, &g(2, &[1, 2, 1])));
    }

    #[test]
    fn constructor_rejects_bad_palettes() {
        assert_eq!(Coloring::new(0, vec![]).unwrap_err(), ColoringError::EmptyPalette);
        assert_eq!(
            Coloring::new(2, vec![1, 3]).unwrap_err(),
            ColoringError::ColorOutOfRange {
                vertex: 2,
                color: 3,
                r: 2
            }
        );
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_color(&cycle(4).unwrap(), OrderPolicy::Dsatur).palette_size(), 2);
        assert_eq!(
            greedy_color(&simplex_boundary(2).unwrap(), OrderPolicy::Dsatur).palette_size(),
            1
        );
        for m in 3..8 {
            let k = simplex_boundary(m).unwrap();
            assert_eq!(greedy_color(&k, OrderPolicy::Dsatur).palette_size(), m);
        }
        assert_eq!(
            greedy_color(&edgeless(5).unwrap(), OrderPolicy::Dsatur).palette_size(),
            1
        );
        for policy in [OrderPolicy::Dsatur, OrderPolicy::Natural, OrderPolicy::LargestFirst] {
            let k = random_complex(10, 8, 5);
            assert!(is_coloring(&k, &greedy_color(&k, policy)));
        }
    }

    #[test]
    fn find_coloring_examples() {
        let oct = cross_polytope_boundary(3).unwrap();
        let found = find_coloring(&oct, 3).unwrap();
        assert_eq!(found.colors(), &[1, 1, 2, 2, 3, 3]);
        assert!(find_coloring(&oct, 2).is_none());
        for m in 2..7 {
            let k = simplex_boundary(m).unwrap();
            // dim K = m-2, so r = dim K is never enough
            assert!(find_coloring(&k, m - 2).is_none());
        }
        assert_eq!(find_coloring(&cycle(4).unwrap(), 2).unwrap().colors(), &[1, 2, 1, 2]);
        assert_eq!(find_coloring(&cycle(5).unwrap(), 3).unwrap().colors(), &[1, 2, 1, 2, 3]);
        // palette larger than needed keeps r but uses fewer colors
        let wide = find_coloring(&cycle(4).unwrap(), 5).unwrap();
        assert_eq!((wide.palette_size(), wide.used_colors()), (5, 2));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&cycle(4).unwrap()), 2);
        assert_eq!(chromatic_number(&cycle(7).unwrap()), 3);
        assert_eq!(chromatic_number(&simplex_boundary(5).unwrap()), 5);
        assert_eq!(chromatic_number(&cross_polytope_boundary(3).unwrap()), 3);
        assert_eq!(chromatic_number(&edgeless(3).unwrap()), 1);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_chromatic(&cycle(4).unwrap()).unwrap(), 2);
        assert_eq!(brute_force_chromatic(&simplex_boundary(4).unwrap()).unwrap(), 4);
        assert_eq!(brute_force_chromatic(&edgeless(5).unwrap()).unwrap(), 1);
        assert_eq!(
            brute_force_chromatic(&cycle(11).unwrap()).unwrap_err(),
            ColoringError::OracleTooLarge(11)
        );
    }

    #[test]
    fn parallel_frontier_matches_sequential() {
        for seed in 0..30 {
            let k = random_complex(10, 12, seed);
            let graph = Graph::new(&k);
            for r in 1..5 {
                let search = LexSearch {
                    graph: &graph,
                    palette: r,
                };
                assert_eq!(search.run(1), search.run(4), "seed {seed} r {r}");
            }
        }
    }

    #[test]
    fn ghosts_get_color_one() {
        let k = SimplicialComplex::from_vertex_lists(4, &[&[2, 3]]).unwrap();
        assert_eq!(find_coloring(&k, 2).unwrap().colors(), &[1, 1, 2, 1]);
        assert_eq!(greedy_color(&k, OrderPolicy::Dsatur).colors()[3], 1);
    }

    #[test]
    fn normalization() {
        let h = g(4, &[3, 3, 1, 4]).normalized();
        assert_eq!((h.palette_size(), h.colors()), (3, &[1, 1, 2, 3][..]));
    }
}
