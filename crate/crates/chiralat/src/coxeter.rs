//! Coxeter graphs of root systems: construction from root vectors, exact
//! classification of subdiagrams by inertia, subdiagram enumeration, graph
//! automorphisms, and DOT output.
//!
//! Vertices are roots; a 2-root is drawn white and a 6-root black.  The edge
//! weight between roots v, w is m = 4 (v.w)^2 / (v^2 w^2), always a
//! non-negative integer here: 0 means orthogonal (no edge), 1 a plain edge,
//! 3 an edge labelled 6, 4 a thick edge (parallel walls), and larger values a
//! dotted edge (ultra-parallel walls).  Weight 2 cannot occur for these root
//! norms, and weight 3 only joins a white vertex to a black one.

use crate::lattice::{Lattice, Vector};
use crate::linalg::{self, IMat, Int, Rat};
use crate::roots::{gram_restrict, root_norm_of};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone)]
pub struct CoxeterGraph {
    /// Norm (2 or 6) of each vertex root.
    pub norms: Vec<u8>,
    /// Symmetric edge weight matrix with zero diagonal.
    pub weights: Vec<Vec<Int>>,
    /// Display label of each vertex.
    pub labels: Vec<String>,
    /// The underlying root vectors in lattice coordinates.
    pub roots: Vec<Vector>,
    /// Cached pairwise inner products of the roots.
    pub gram: IMat,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CoxeterError {
    #[error("vector at index {0} is not a root")]
    NotARoot(usize),
    #[error("edge weight 2 between vertices {0} and {1}")]
    ForbiddenWeight(usize, usize),
    #[error("weight-3 edge between two vertices of equal norm ({0}, {1})")]
    BadTripleEdge(usize, usize),
}

/// Build the Coxeter graph on the given roots, checking the structural
/// constraints on weights as it goes.
pub fn coxeter_graph(
    lat: &Lattice,
    roots: &[Vector],
    labels: &[String],
) -> Result<CoxeterGraph, CoxeterError> {
    let n = roots.len();
    assert_eq!(labels.len(), n);
    let mut norms = Vec::with_capacity(n);
    for (i, v) in roots.iter().enumerate() {
        norms.push(root_norm_of(lat, v).ok_or(CoxeterError::NotARoot(i))?);
    }
    let gram = gram_restrict(&lat.gram, roots);
    let mut weights = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let ip = &gram[i][j];
            let num = Int::from(4) * ip * ip;
            let den = Int::from(norms[i] as i64 * norms[j] as i64);
            // 4 (v.w)^2 is divisible by v^2 w^2 for 2- and 6-roots.
            assert!((&num % &den).is_zero(), "non-integral edge weight");
            let m = num / den;
            if m == Int::from(2) {
                return Err(CoxeterError::ForbiddenWeight(i, j));
            }
            if m == Int::from(3) && norms[i] == norms[j] {
                return Err(CoxeterError::BadTripleEdge(i, j));
            }
            weights[i][j] = m.clone();
            weights[j][i] = m;
        }
    }
    Ok(CoxeterGraph {
        norms,
        weights,
        labels: labels.to_vec(),
        roots: roots.to_vec(),
        gram,
    })
}

/// Classification of a subdiagram by the inertia of its Gram submatrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdiagramClass {
    /// Positive definite: a finite (spherical) diagram of the given rank
    /// (= number of vertices).
    Elliptic(usize),
    /// Positive semidefinite with every connected component degenerate: a
    /// disjoint union of affine diagrams, of rank vertices - components.
    Parabolic(usize),
    /// Indefinite and non-degenerate with every proper subdiagram elliptic.
    /// In this root setting these are exactly the dotted edges.
    Lanner,
    /// Positive semidefinite mixing elliptic and affine components.
    SemiDefinite,
    /// Indefinite and not critical.
    Indefinite,
}

/// Connected components (by nonzero off-diagonal entries) of a symmetric
/// matrix on `n` vertices, as sorted index lists.
pub fn components_of(g: &IMat, n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && i != j && !g[i][j].is_zero() {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Incremental fraction-free (Bareiss) factorization of a growing principal
/// submatrix of a fixed symmetric integer matrix.  The pivots are the leading
/// principal minors along the insertion order, so a growing subset stays
/// positive definite iff every pushed pivot is positive.  All arithmetic is
/// exact in i128; `reduce` reports overflow as None so callers can fall back
/// to arbitrary precision.
struct MinorFactor {
    g: Vec<Vec<i128>>,
    cur: Vec<usize>,
    /// cols[t] = reduced column of cur[t] against cur[0..t].
    cols: Vec<Vec<i128>>,
    /// pivots[s] = leading principal minor of order s + 1.
    pivots: Vec<i128>,
}

impl MinorFactor {
    fn new(gram: &IMat) -> Option<MinorFactor> {
        let g: Vec<Vec<i128>> = gram
            .iter()
            .map(|r| r.iter().map(i128::try_from).collect::<Result<_, _>>().ok())
            .collect::<Option<_>>()?;
        Some(MinorFactor {
            g,
            cur: Vec::new(),
            cols: Vec::new(),
            pivots: Vec::new(),
        })
    }

    /// Reduced column and new pivot for appending vertex v, or None on
    /// overflow.  The new pivot is the principal minor of the extended
    /// subset, so v extends a positive definite subset iff it is positive.
    fn reduce(&self, v: usize) -> Option<(Vec<i128>, i128)> {
        let k = self.cur.len();
        let mut y: Vec<i128> = (0..k).map(|t| self.g[self.cur[t]][v]).collect();
        let mut p = self.g[v][v];
        for s in 0..k {
            let div = if s == 0 { 1 } else { self.pivots[s - 1] };
            let ds = self.pivots[s];
            for t in (s + 1)..k {
                y[t] = ds
                    .checked_mul(y[t])?
                    .checked_sub(self.cols[t][s].checked_mul(y[s])?)?
                    / div;
            }
            p = ds.checked_mul(p)?.checked_sub(y[s].checked_mul(y[s])?)? / div;
        }
        Some((y, p))
    }

    fn push(&mut self, v: usize, y: Vec<i128>, p: i128) {
        self.cur.push(v);
        self.cols.push(y);
        self.pivots.push(p);
    }

    fn pop(&mut self) {
        self.cur.pop();
        self.cols.pop();
        self.pivots.pop();
    }
}

impl CoxeterGraph {
    pub fn vertex_count(&self) -> usize {
        self.norms.len()
    }

    /// Gram submatrix of a vertex subset.
    pub fn subgram(&self, subset: &[usize]) -> IMat {
        subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.gram[i][j].clone()).collect())
            .collect()
    }

    /// Inertia (positive, zero, negative) of the subset's Gram submatrix.
    pub fn subset_inertia(&self, subset: &[usize]) -> (usize, usize, usize) {
        linalg::inertia_int(&self.subgram(subset))
    }

    /// Rank of the span of the subset's roots.
    pub fn subset_rank(&self, subset: &[usize]) -> usize {
        let (p, _, n) = self.subset_inertia(subset);
        p + n
    }

    /// Classify the subdiagram on `subset` by exact definiteness.
    pub fn classify_subdiagram(&self, subset: &[usize]) -> SubdiagramClass {
        let k = subset.len();
        let (_, zero, neg) = self.subset_inertia(subset);
        if neg > 0 {
            // Critical (Lanner) diagrams are non-degenerate and have every
            // proper subdiagram elliptic; they have at most 5 vertices.
            if zero == 0 && k <= 5 {
                let critical = (0..k).all(|drop| {
                    let sub: Vec<usize> = subset
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    sub.is_empty()
                        || matches!(self.classify_subdiagram(&sub), SubdiagramClass::Elliptic(_))
                });
                if critical {
                    return SubdiagramClass::Lanner;
                }
            }
            return SubdiagramClass::Indefinite;
        }
        if zero == 0 {
            return SubdiagramClass::Elliptic(k);
        }
        // Positive semidefinite: parabolic iff every connected component is
        // itself degenerate (affine).
        let g = self.subgram(subset);
        let comps = components_of(&g, k);
        let mut affine_rank = 0;
        for comp in &comps {
            let sub: Vec<usize> = comp.iter().map(|&t| subset[t]).collect();
            let (p, z, n) = self.subset_inertia(&sub);
            debug_assert_eq!(n, 0);
            if z == 0 {
                return SubdiagramClass::SemiDefinite;
            }
            affine_rank += p;
        }
        SubdiagramClass::Parabolic(affine_rank)
    }

    /// Connected components of the graph (positive edge weights).
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(&self.weights, self.vertex_count())
    }

    /// Components of the subgraph induced on `subset`.
    pub fn subgraph_components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let g: IMat = subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.weights[i][j].clone()).collect())
            .collect();
        components_of(&g, subset.len())
            .into_iter()
            .map(|comp| comp.into_iter().map(|k| subset[k]).collect())
            .collect()
    }

    /// True if some edge weight exceeds 4 (ultra-parallel walls).
    pub fn has_dotted_edge(&self) -> bool {
        let four = Int::from(4);
        let n = self.vertex_count();
        (0..n).any(|i| ((i + 1)..n).any(|j| self.weights[i][j] > four))
    }

    /// All elliptic vertex subsets of exactly `size` vertices, found by
    /// backtracking over increasing indices; definiteness is hereditary, so
    /// non-elliptic partial subsets are pruned immediately.
    pub fn elliptic_subsets_of_size(&self, size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_elliptic_subset_of_size(size, |s| {
            out.push(s.to_vec());
            true
        });
        out
    }

    /// Visit each elliptic subset of exactly `size` vertices; the visitor
    /// returns false to abort the search.  Returns false if aborted.
    pub fn for_each_elliptic_subset_of_size(
        &self,
        size: usize,
        mut f: impl FnMut(&[usize]) -> bool,
    ) -> bool {
        self.for_each_elliptic_subset_with_tester(size, |s, _| f(s))
    }

    /// Like `for_each_elliptic_subset_of_size`, but the visitor also receives
    /// a tester deciding whether one more vertex keeps the subset elliptic,
    /// which reuses the factorization built during the search instead of
    /// refactoring the extended subset from scratch.  Positive definiteness
    /// is checked incrementally, one pivot per added vertex; the fixed-width
    /// integer path falls back to arbitrary precision on overflow.
    pub fn for_each_elliptic_subset_with_tester(
        &self,
        size: usize,
        mut f: impl FnMut(&[usize], &mut dyn FnMut(usize) -> bool) -> bool,
    ) -> bool {
        let n = self.vertex_count();
        if let Some(mut factor) = MinorFactor::new(&self.gram) {
            match self.elliptic_int_rec(0, size, n, &mut factor, &mut f) {
                Some(keep) => return keep,
                None => {} // overflow: redo in arbitrary precision
            }
        }
        let mut cur: Vec<usize> = Vec::new();
        let mut cols: Vec<Vec<Rat>> = Vec::new();
        let mut pivots: Vec<Rat> = Vec::new();
        self.elliptic_rec(0, size, n, &mut cur, &mut cols, &mut pivots, &mut f)
    }

    /// Fixed-width integer subset search; None reports i128 overflow.
    fn elliptic_int_rec(
        &self,
        next: usize,
        size: usize,
        n: usize,
        factor: &mut MinorFactor,
        f: &mut impl FnMut(&[usize], &mut dyn FnMut(usize) -> bool) -> bool,
    ) -> Option<bool> {
        if factor.cur.len() == size {
            let shared = &*factor;
            let mut tester = |v: usize| -> bool {
                match shared.reduce(v) {
                    Some((_, p)) => p > 0,
                    None => {
                        let mut ext = shared.cur.clone();
                        ext.push(v);
                        ext.sort();
                        matches!(
                            self.classify_subdiagram(&ext),
                            SubdiagramClass::Elliptic(r) if r == size + 1
                        )
                    }
                }
            };
            return Some(f(&shared.cur, &mut tester));
        }
        if factor.cur.len() + n.saturating_sub(next) < size {
            return Some(true);
        }
        for v in next..n {
            let (y, p) = factor.reduce(v)?;
            if p > 0 {
                factor.push(v, y, p);
                let keep = self.elliptic_int_rec(v + 1, size, n, factor, f);
                factor.pop();
                if keep? == false {
                    return Some(false);
                }
            }
        }
        Some(true)
    }

    fn elliptic_rec(
        &self,
        next: usize,
        size: usize,
        n: usize,
        cur: &mut Vec<usize>,
        cols: &mut Vec<Vec<Rat>>,
        pivots: &mut Vec<Rat>,
        f: &mut impl FnMut(&[usize], &mut dyn FnMut(usize) -> bool) -> bool,
    ) -> bool {
        if cur.len() == size {
            let snapshot = cur.clone();
            let mut tester = |v: usize| -> bool {
                let mut ext = snapshot.clone();
                ext.push(v);
                ext.sort();
                matches!(
                    self.classify_subdiagram(&ext),
                    SubdiagramClass::Elliptic(r) if r == size + 1
                )
            };
            return f(cur, &mut tester);
        }
        // Not enough vertices left to reach the target size.
        if cur.len() + n.saturating_sub(next) < size {
            return true;
        }
        for v in next..n {
            // Extend the decomposition by vertex v: column of Gram products
            // against the current subset, reduced by the existing factor.
            let k = cur.len();
            let mut col: Vec<Rat> = (0..k)
                .map(|t| Rat::from(self.gram[cur[t]][v].clone()))
                .collect();
            for t in 0..k {
                let reduced = (0..t)
                    .map(|s| &cols[t][s] * &col[s] / &pivots[s])
                    .fold(col[t].clone(), |acc, x| acc - x);
                col[t] = reduced;
            }
            let mut pivot = Rat::from(self.gram[v][v].clone());
            for s in 0..k {
                let d = &col[s] * &col[s] / &pivots[s];
                pivot -= d;
            }
            if pivot.is_positive() {
                cur.push(v);
                cols.push(col);
                pivots.push(pivot);
                let keep = self.elliptic_rec(v + 1, size, n, cur, cols, pivots, f);
                cur.pop();
                cols.pop();
                pivots.pop();
                if !keep {
                    return false;
                }
            }
        }
        true
    }

    /// All connected parabolic (affine) subdiagrams, as sorted supports.
    /// Grown one adjacent vertex at a time through connected elliptic
    /// subsets; a connected affine diagram admits no larger connected
    /// positive semidefinite extension, so growth stops there.
    pub fn connected_parabolic_subdiagrams(&self) -> Vec<Vec<usize>> {
        use std::collections::HashSet;
        let n = self.vertex_count();
        assert!(n <= 64, "bitmask subset search supports at most 64 walls");
        let adj: Vec<u64> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| w != v && !self.weights[v][w].is_zero())
                    .fold(0u64, |m, w| m | (1 << w))
            })
            .collect();
        let unpack = |mask: u64| -> Vec<usize> {
            (0..n).filter(|&v| mask & (1 << v) != 0).collect()
        };
        let mut found: HashSet<u64> = HashSet::new();
        let mut seen_elliptic: HashSet<u64> = HashSet::new();
        let mut stack: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
        while let Some(cur) = stack.pop() {
            let frontier = unpack(cur).iter().fold(0u64, |m, &v| m | adj[v]) & !cur;
            for w in unpack(frontier) {
                let bigger = cur | (1 << w);
                if seen_elliptic.contains(&bigger) || found.contains(&bigger) {
                    continue;
                }
                let (_, zero, neg) = self.subset_inertia(&unpack(bigger));
                if neg > 0 {
                    continue;
                }
                if zero > 0 {
                    found.insert(bigger);
                } else if seen_elliptic.insert(bigger) {
                    stack.push(bigger);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().map(unpack).collect();
        out.sort();
        out
    }

    /// All parabolic subdiagram supports of exactly rank `target`: unions of
    /// pairwise orthogonal connected affine pieces whose ranks sum to
    /// `target`, deduplicated by support.
    pub fn parabolic_supports_of_rank(&self, target: usize) -> Vec<Vec<usize>> {
        use std::collections::BTreeSet;
        let pieces = self.connected_parabolic_subdiagrams();
        let ranks: Vec<usize> = pieces.iter().map(|p| p.len() - 1).collect();
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut chosen: Vec<usize> = Vec::new();
        self.parabolic_union_rec(0, 0, target, &pieces, &ranks, &mut chosen, &mut out);
        out.into_iter().collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn parabolic_union_rec(
        &self,
        next: usize,
        rank: usize,
        target: usize,
        pieces: &[Vec<usize>],
        ranks: &[usize],
        chosen: &mut Vec<usize>,
        out: &mut std::collections::BTreeSet<Vec<usize>>,
    ) {
        if rank == target {
            let mut support: Vec<usize> = chosen
                .iter()
                .flat_map(|&i| pieces[i].iter().copied())
                .collect();
            support.sort();
            out.insert(support);
            return;
        }
        for i in next..pieces.len() {
            if rank + ranks[i] > target {
                continue;
            }
            let orthogonal = chosen.iter().all(|&j| {
                pieces[j]
                    .iter()
                    .all(|&v| pieces[i].iter().all(|&w| self.weights[v][w].is_zero()))
            });
            if !orthogonal {
                continue;
            }
            chosen.push(i);
            self.parabolic_union_rec(i + 1, rank + ranks[i], target, pieces, ranks, chosen, out);
            chosen.pop();
        }
    }

    /// All vertex permutations of the whole graph preserving norms and edge
    /// weights.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.subset_automorphisms(&all)
    }

    /// All permutations of `subset` preserving norms and the induced edge
    /// weights, returned as maps with `perm[t] = s` meaning vertex subset[t]
    /// goes to vertex subset[s].
    pub fn subset_automorphisms(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let k = subset.len();
        // Invariant used to cut the search: norm plus sorted multiset of
        // (incident weight, neighbour norm) within the subset.
        let profile: Vec<(u8, Vec<(Int, u8)>)> = (0..k)
            .map(|t| {
                let i = subset[t];
                let mut inc: Vec<(Int, u8)> = subset
                    .iter()
                    .filter(|&&j| j != i && !self.weights[i][j].is_zero())
                    .map(|&j| (self.weights[i][j].clone(), self.norms[j]))
                    .collect();
                inc.sort();
                (self.norms[i], inc)
            })
            .collect();
        let mut perm = vec![usize::MAX; k];
        let mut used = vec![false; k];
        let mut out = Vec::new();
        self.extend_automorphism(0, subset, &profile, &mut perm, &mut used, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_automorphism(
        &self,
        t: usize,
        subset: &[usize],
        profile: &[(u8, Vec<(Int, u8)>)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = subset.len();
        if t == k {
            out.push(perm.clone());
            return;
        }
        for cand in 0..k {
            if used[cand] || profile[cand] != profile[t] {
                continue;
            }
            if (0..t).any(|j| {
                self.weights[subset[t]][subset[j]] != self.weights[subset[cand]][subset[perm[j]]]
            }) {
                continue;
            }
            perm[t] = cand;
            used[cand] = true;
            self.extend_automorphism(t + 1, subset, profile, perm, used, out);
            used[cand] = false;
            perm[t] = usize::MAX;
        }
    }

    /// Name of a connected elliptic component in this setting: A_n, D_n, E_n,
    /// or G2 (the only multiply-laced type that can occur).
    pub fn component_type(&self, comp: &[usize]) -> String {
        let k = comp.len();
        let deg = |i: usize| {
            comp.iter()
                .filter(|&&j| j != comp[i] && !self.weights[comp[i]][j].is_zero())
                .count()
        };
        let has_triple = comp.iter().any(|&i| {
            comp.iter()
                .any(|&j| j != i && self.weights[i][j] == Int::from(3))
        });
        if has_triple {
            debug_assert_eq!(k, 2);
            return "G2".into();
        }
        let degrees: Vec<usize> = (0..k).map(deg).collect();
        if degrees.iter().all(|&d| d <= 2) && degrees.iter().filter(|&&d| d <= 1).count() <= 2 {
            return format!("A{k}");
        }
        // One branch vertex of degree 3: D or E by branch lengths.
        let branch = (0..k).position(|i| degrees[i] == 3).expect("ADE shape");
        let mut arms: Vec<usize> = Vec::new();
        let mut seen = vec![false; k];
        seen[branch] = true;
        for s in 0..k {
            if seen[s] || self.weights[comp[s]][comp[branch]].is_zero() {
                continue;
            }
            let mut len = 1;
            let mut prev = branch;
            let mut cur = s;
            seen[cur] = true;
            loop {
                let next = (0..k).find(|&t| {
                    t != prev && t != cur && !self.weights[comp[cur]][comp[t]].is_zero()
                });
                match next {
                    Some(t) => {
                        prev = cur;
                        cur = t;
                        seen[cur] = true;
                        len += 1;
                    }
                    None => break,
                }
            }
            arms.push(len);
        }
        arms.sort();
        match arms.as_slice() {
            [1, 1, _] => format!("D{k}"),
            [1, 2, _] => format!("E{k}"),
            _ => format!("T{arms:?}"),
        }
    }

    /// Render the graph in Graphviz DOT format.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph coxeter {\n  node [shape=circle, style=filled];\n");
        for (i, label) in self.labels.iter().enumerate() {
            let fill = if self.norms[i] == 6 { "black" } else { "white" };
            let font = if self.norms[i] == 6 { "white" } else { "black" };
            s.push_str(&format!(
                "  \"{label}\" [fillcolor={fill}, fontcolor={font}];\n"
            ));
        }
        let n = self.vertex_count();
        for i in 0..n {
            for j in (i + 1)..n {
                let w = &self.weights[i][j];
                if w.is_zero() {
                    continue;
                }
                let attrs = if *w == Int::from(1) {
                    String::new()
                } else if *w == Int::from(3) {
                    " [label=\"6\"]".into()
                } else if *w == Int::from(4) {
                    " [style=bold]".into()
                } else {
                    format!(" [style=dashed, label=\"{w}\"]")
                };
                s.push_str(&format!(
                    "  \"{}\" -- \"{}\"{};\n",
                    self.labels[i], self.labels[j], attrs
                ));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vec_i64;
    use crate::linalg::{RMat, Rat};
    use num_traits::{One, Signed};

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{}", i + 1)).collect()
    }

    fn graph_of(name: &str, roots: &[Vec<i64>]) -> CoxeterGraph {
        let lat = Lattice::from_name(name).unwrap();
        let vecs: Vec<Vector> = roots.iter().map(|r| vec_i64(r)).collect();
        coxeter_graph(&lat, &vecs, &labels(vecs.len())).unwrap()
    }

    #[test]
    fn a3_chain_classification() {
        let g = graph_of("A3", &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(
            g.classify_subdiagram(&[0, 1, 2]),
            SubdiagramClass::Elliptic(3)
        );
        assert_eq!(g.component_type(&[0, 1, 2]), "A3");
        assert_eq!(g.weights[0][1], Int::one());
        assert!(g.weights[0][2].is_zero());
    }

    #[test]
    fn affine_a2_is_parabolic() {
        // Simple roots of A2 plus the lowest root -(a1 + a2).
        let g = graph_of(
            "A2+A1",
            &[vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 0], vec![0, 0, 1]],
        );
        assert_eq!(
            g.classify_subdiagram(&[0, 1, 2]),
            SubdiagramClass::Parabolic(2)
        );
        // Adding the disjoint A1 vertex mixes in an elliptic component.
        assert_eq!(
            g.classify_subdiagram(&[0, 1, 2, 3]),
            SubdiagramClass::SemiDefinite
        );
        assert_eq!(g.subset_rank(&[0, 1, 2]), 2);
    }

    #[test]
    fn dotted_edge_is_lanner() {
        // Two 2-roots of U+A2 with inner product -3: ultra-parallel walls.
        let lat = Lattice::from_name("U+A2").unwrap();
        let a = vec_i64(&[0, 0, 0, 1]);
        let b = vec_i64(&[1, -2, 1, -1]);
        assert_eq!(root_norm_of(&lat, &a), Some(2));
        assert_eq!(root_norm_of(&lat, &b), Some(2));
        let g = coxeter_graph(&lat, &[a, b], &labels(2)).unwrap();
        assert_eq!(g.gram[0][1], Int::from(-3));
        assert_eq!(g.weights[0][1], Int::from(9));
        assert!(g.has_dotted_edge());
        assert_eq!(g.classify_subdiagram(&[0, 1]), SubdiagramClass::Lanner);
    }

    #[test]
    fn e8_and_d4_shape_recognition() {
        let basis8: Vec<Vec<i64>> = (0..8)
            .map(|i| {
                let mut v = vec![0i64; 8];
                v[i] = 1;
                v
            })
            .collect();
        let g = graph_of("E8", &basis8);
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.component_type(&(0..8).collect::<Vec<_>>()), "E8");

        let basis4: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                let mut v = vec![0i64; 4];
                v[i] = 1;
                v
            })
            .collect();
        let g4 = graph_of("D4", &basis4);
        assert_eq!(g4.component_type(&[0, 1, 2, 3]), "D4");
    }

    #[test]
    fn g2_pair_and_triple_edge_rule() {
        let g = graph_of("A2", &[vec![0, 1], vec![1, -1]]);
        assert_eq!(g.norms, vec![2, 6]);
        assert_eq!(g.weights[0][1], Int::from(3));
        assert_eq!(g.component_type(&[0, 1]), "G2");
        assert_eq!(g.classify_subdiagram(&[0, 1]), SubdiagramClass::Elliptic(2));
    }

    #[test]
    fn automorphisms_of_a3_chain() {
        let g = graph_of("A3", &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let autos = g.automorphisms();
        // Identity and the end-to-end flip.
        assert_eq!(autos.len(), 2);
        assert!(autos.contains(&vec![0, 1, 2]));
        assert!(autos.contains(&vec![2, 1, 0]));
        // Restricting to the two end vertices leaves the swap.
        let sub = g.subset_automorphisms(&[0, 2]);
        assert_eq!(sub.len(), 2);
    }

    #[test]
    fn automorphisms_of_d4_triality() {
        let basis4: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                let mut v = vec![0i64; 4];
                v[i] = 1;
                v
            })
            .collect();
        let g = graph_of("D4", &basis4);
        // The D4 diagram has S3 symmetry on its three leaves.
        assert_eq!(g.automorphisms().len(), 6);
    }

    #[test]
    fn automorphism_group_closure() {
        let basis4: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                let mut v = vec![0i64; 4];
                v[i] = 1;
                v
            })
            .collect();
        let g = graph_of("D4", &basis4);
        let autos = g.automorphisms();
        let set: std::collections::HashSet<Vec<usize>> = autos.iter().cloned().collect();
        assert!(set.contains(&vec![0, 1, 2, 3]));
        for a in &autos {
            for b in &autos {
                let comp: Vec<usize> = (0..4).map(|i| a[b[i]]).collect();
                assert!(set.contains(&comp), "not closed under composition");
            }
            let mut inv = vec![0; 4];
            for (i, &ai) in a.iter().enumerate() {
                inv[ai] = i;
            }
            assert!(set.contains(&inv), "not closed under inverse");
        }
    }

    #[test]
    fn elliptic_subset_enumeration() {
        let basis4: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                let mut v = vec![0i64; 4];
                v[i] = 1;
                v
            })
            .collect();
        let g = graph_of("D4", &basis4);
        // Every subset of a definite lattice's basis is elliptic.
        assert_eq!(g.elliptic_subsets_of_size(2).len(), 6);
        assert_eq!(g.elliptic_subsets_of_size(4).len(), 1);
    }

    #[test]
    fn connected_parabolic_enumeration() {
        // Affine A2 triangle plus an isolated vertex: exactly one connected
        // parabolic subdiagram, and one parabolic support of rank 2.
        let g = graph_of(
            "A2+A1",
            &[vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 0], vec![0, 0, 1]],
        );
        let paras = g.connected_parabolic_subdiagrams();
        assert_eq!(paras, vec![vec![0, 1, 2]]);
        assert_eq!(g.parabolic_supports_of_rank(2), vec![vec![0, 1, 2]]);
        assert!(g.parabolic_supports_of_rank(3).is_empty());
    }

    #[test]
    fn dot_output_shape() {
        let g = graph_of("A2", &[vec![0, 1], vec![1, -1]]);
        let dot = g.to_dot();
        assert!(dot.starts_with("graph coxeter {"));
        assert!(dot.contains("\"v2\" [fillcolor=black"));
        assert!(dot.contains("[label=\"6\"]"));
    }

    #[test]
    fn inertia_agrees_with_charpoly_signs() {
        // Oracle: for a symmetric integer matrix all eigenvalues are real, so
        // the counts of positive/zero/negative eigenvalues can be read off
        // the characteristic polynomial by Descartes' rule of signs.
        fn charpoly(m: &IMat) -> Vec<Rat> {
            // Faddeev-LeVerrier: exact coefficients of det(xI - M).
            let n = m.len();
            let rm = linalg::imat_to_rmat(m);
            let mut coeffs = vec![Rat::one()];
            let mut mk: RMat = rm.clone();
            for k in 1..=n {
                let tr: Rat = (0..n).map(|i| mk[i][i].clone()).sum();
                let c = -tr / Rat::from(Int::from(k as i64));
                coeffs.push(c.clone());
                if k < n {
                    for (i, row) in mk.iter_mut().enumerate() {
                        row[i] += &c;
                    }
                    mk = linalg::rmat_mul(&rm, &mk);
                }
            }
            coeffs
        }
        fn sign_counts(coeffs: &[Rat]) -> (usize, usize, usize) {
            let n = coeffs.len() - 1;
            let zeros = coeffs.iter().rev().take_while(|c| c.is_zero()).count();
            let nonzero: Vec<i8> = coeffs
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| if c.is_positive() { 1 } else { -1 })
                .collect();
            let pos = nonzero.windows(2).filter(|w| w[0] != w[1]).count();
            (pos, zeros, n - zeros - pos)
        }
        let lat = Lattice::from_name("U+A2+A1").unwrap();
        let candidates: Vec<Vector> = vec![
            vec_i64(&[1, 1, 0, 0, 0]),
            vec_i64(&[0, 0, 0, 1, 0]),
            vec_i64(&[0, 0, 1, -1, 0]),
            vec_i64(&[0, 0, 0, 0, 1]),
            vec_i64(&[0, -1, -1, -1, 0]),
            vec_i64(&[0, -1, 0, 0, -1]),
        ];
        // Exhaustive over all nonempty subsets of six roots.
        for mask in 1u32..(1 << 6) {
            let subset: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
            let vecs: Vec<Vector> = subset.iter().map(|&i| candidates[i].clone()).collect();
            let g = gram_restrict(&lat.gram, &vecs);
            let inertia = linalg::inertia_int(&g);
            assert_eq!(inertia, sign_counts(&charpoly(&g)), "subset {subset:?}");
        }
    }
}
