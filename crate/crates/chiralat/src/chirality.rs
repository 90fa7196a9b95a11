//! Lattice isometries lifted from Coxeter-graph symmetries, their action on
//! the discriminant group, and the chirality classification of the supported
//! lattice families.

use crate::coxeter::{coxeter_graph, CoxeterGraph};
use crate::discriminant::{discriminant_group, discriminant_group_of_gram, DiscriminantGroup};
use crate::lattice::{build_lattice, Lattice, LatticeSpec, Summand, SummandKind, Vector};
use crate::linalg::{self, IMat, Int, Rat};
use crate::presets::{labels_for, preset_options};
use crate::roots::root_norm_of;
use crate::vinberg::{vinberg_run, TerminationStatus, VinbergRun};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// An isometry of a lattice given by an integer matrix acting on column
/// vectors in the lattice basis: (M x)_i = sum_j M[i][j] x_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    pub matrix: IMat,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum ChiralityError {
    #[error("vector is not a root of the lattice")]
    NotARoot,
    #[error("the 3-primary part of the discriminant group is not Z/3")]
    BadThreePart,
    #[error("isometry does not fix the given root")]
    NotFixed,
    #[error("restricted map is not integral on the orthogonal sublattice")]
    NotIntegral,
}

impl Isometry {
    pub fn identity(n: usize) -> Self {
        Isometry {
            matrix: linalg::imat_identity(n),
        }
    }

    pub fn neg_identity(n: usize) -> Self {
        let mut m = linalg::imat_identity(n);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = -row[i].clone();
        }
        Isometry { matrix: m }
    }

    pub fn apply(&self, x: &[Int]) -> Vector {
        linalg::imat_vec(&self.matrix, x)
    }

    pub fn apply_rat(&self, x: &[Rat]) -> Vec<Rat> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .map(|(m, xi)| Rat::from(m.clone()) * xi)
                    .sum()
            })
            .collect()
    }

    /// Exact check that the matrix preserves the bilinear form and is
    /// invertible over the integers.
    pub fn is_isometry_of(&self, gram: &IMat) -> bool {
        let mt = linalg::imat_transpose(&self.matrix);
        let prod = linalg::imat_mul(&mt, &linalg::imat_mul(gram, &self.matrix));
        if &prod != gram {
            return false;
        }
        linalg::imat_det(&self.matrix).abs() == Int::one()
    }
}

/// Reflection in a 2-root (x -> x - (x.v) v) or anti-reflection in a 6-root
/// (x -> -(x - 2 (x.v)/6 v)); `anti` negates the result in either case.
/// Integrality holds exactly because v is a root: for 6-roots the products
/// x.v are divisible by 3.
pub fn reflection_matrix(lat: &Lattice, v: &Vector, anti: bool) -> Result<Isometry, ChiralityError> {
    let Some(k) = root_norm_of(lat, v) else {
        return Err(ChiralityError::NotARoot);
    };
    let gv = linalg::imat_vec(&lat.gram, v);
    let k = Int::from(k as i64);
    let mut m = linalg::imat_identity(lat.rank);
    for i in 0..lat.rank {
        for j in 0..lat.rank {
            let num = Int::from(2) * &v[i] * &gv[j];
            debug_assert!((&num % &k).is_zero());
            m[i][j] -= num / &k;
        }
    }
    if anti {
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let iso = Isometry { matrix: m };
    debug_assert!(iso.is_isometry_of(&lat.gram));
    Ok(iso)
}

/// Lift a permutation of a spanning set of roots to a lattice isometry:
/// `perm[i] = j` sends `roots[i]` to `roots[j]`.  Returns the unique linear
/// map agreeing with the permutation if it exists, is integral, and
/// preserves the Gram matrix; None otherwise.
pub fn symmetry_to_isometry(
    lat: &Lattice,
    roots: &[Vector],
    perm: &[usize],
) -> Option<Isometry> {
    assert_eq!(roots.len(), perm.len());
    // Select a column basis among the roots.
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (i, r) in roots.iter().enumerate() {
        let cand: Vec<Rat> = r.iter().map(|x| Rat::from(x.clone())).collect();
        rows.push(cand);
        if linalg::rmat_rank(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
        if chosen.len() == lat.rank {
            break;
        }
    }
    if chosen.len() < lat.rank {
        return None;
    }
    // M * V = W with V the chosen roots as columns and W their images.
    let v: Vec<Vec<Rat>> = (0..lat.rank)
        .map(|r| {
            chosen
                .iter()
                .map(|&i| Rat::from(roots[i][r].clone()))
                .collect()
        })
        .collect();
    let w: Vec<Vec<Rat>> = (0..lat.rank)
        .map(|r| {
            chosen
                .iter()
                .map(|&i| Rat::from(roots[perm[i]][r].clone()))
                .collect()
        })
        .collect();
    let vinv = linalg::rmat_inverse(&v)?;
    let m_rat = linalg::rmat_mul(&w, &vinv);
    let mut m = Vec::with_capacity(lat.rank);
    for row in &m_rat {
        let mut irow = Vec::with_capacity(lat.rank);
        for x in row {
            if !x.is_integer() {
                return None;
            }
            irow.push(x.to_integer());
        }
        m.push(irow);
    }
    let iso = Isometry { matrix: m };
    if !iso.is_isometry_of(&lat.gram) {
        return None;
    }
    // The lift must agree with the permutation on every root, not just the
    // basis columns.
    for (i, r) in roots.iter().enumerate() {
        if iso.apply(r) != roots[perm[i]] {
            return None;
        }
    }
    Some(iso)
}

/// Image of each discriminant-group generator under the isometry, in
/// invariant-factor coordinates.
pub fn discr_action(dg: &DiscriminantGroup, f: &Isometry) -> Vec<Vec<Int>> {
    dg.generator_lifts
        .iter()
        .map(|lift| dg.class_of(&f.apply_rat(lift)))
        .collect()
}

/// Sign of the induced action on the 3-primary part of the discriminant
/// group, which must be Z/3: +1 when the action is the identity, -1 when it
/// is negation.
pub fn delta3_sign(dg: &DiscriminantGroup, f: &Isometry) -> Result<i8, ChiralityError> {
    let three = Int::from(3);
    if dg.primary_part(&three) != vec![three.clone()] {
        return Err(ChiralityError::BadThreePart);
    }
    // The unique invariant factor divisible by 3 contributes the Z/3; its
    // generator scaled by d/3 generates that part.
    let k = dg
        .invariant_factors
        .iter()
        .position(|d| (d % &three).is_zero())
        .expect("checked by primary_part");
    let mut class = vec![Int::zero(); dg.invariant_factors.len()];
    class[k] = &dg.invariant_factors[k] / &three;
    let t = dg.lift(&class);
    let image = dg.class_of(&f.apply_rat(&t));
    if image == class {
        Ok(1)
    } else if image == dg.neg(&class) {
        Ok(-1)
    } else {
        Err(ChiralityError::BadThreePart)
    }
}

/// Index of the distinguished summand carrying the Z/3 of the discriminant:
/// the first summand copy whose block determinant is divisible by 3.
pub fn distinguished_summand(lat: &Lattice) -> Option<usize> {
    lat.summand_offsets.iter().position(|(_, s)| {
        s.gram_block()
            .map(|g| (linalg::imat_det(&g) % Int::from(3)).is_zero())
            .unwrap_or(false)
    })
}

/// Fast congruence test from the wall permutation alone: the symmetry is
/// Z/3-reversing iff some 6-root wall and its image have distinguished-block
/// components that differ outside 3 times the block.  Diagnostic companion
/// to `delta3_sign`, which is authoritative.
pub fn z3_shortcut(lat: &Lattice, roots: &[Vector], perm: &[usize]) -> Option<i8> {
    let block = distinguished_summand(lat)?;
    let three = Int::from(3);
    for (i, v) in roots.iter().enumerate() {
        if root_norm_of(lat, v) != Some(6) {
            continue;
        }
        let a = lat.summand_component(block, v).ok()?;
        let b = lat.summand_component(block, &roots[perm[i]]).ok()?;
        if a.iter().zip(&b).any(|(x, y)| !(&(x - y) % &three).is_zero()) {
            return Some(-1);
        }
    }
    Some(1)
}

/// Orthogonal sublattice of a fixed 2-root together with the restricted
/// isometry: returns the Gram matrix of v-perp in an integral basis and the
/// matrix of f in that basis.
pub fn restrict_to_orthogonal(
    lat: &Lattice,
    f: &Isometry,
    v: &Vector,
) -> Result<(IMat, Isometry), ChiralityError> {
    if root_norm_of(lat, v) != Some(2) {
        return Err(ChiralityError::NotARoot);
    }
    if &f.apply(v) != v {
        return Err(ChiralityError::NotFixed);
    }
    let gv = linalg::imat_vec(&lat.gram, v);
    let (_, _, kernel) = linalg::functional_kernel(&gv);
    let gram_v = crate::roots::gram_restrict(&lat.gram, &kernel);
    // Solve B c = f(k_i) for each kernel basis vector, with B the basis
    // matrix; the solution must be integral since f preserves v-perp.
    let rows: Vec<Vec<Rat>> = (0..lat.rank)
        .map(|r| kernel.iter().map(|k| Rat::from(k[r].clone())).collect())
        .collect();
    let mut cols: Vec<Vec<Int>> = Vec::with_capacity(kernel.len());
    for k in &kernel {
        let img = f.apply(k);
        let rhs: Vec<Rat> = img.iter().map(|x| Rat::from(x.clone())).collect();
        let c = linalg::solve_affine(&rows, &rhs).ok_or(ChiralityError::NotIntegral)?;
        if c.iter().any(|x| !x.is_integer()) {
            return Err(ChiralityError::NotIntegral);
        }
        cols.push(c.iter().map(|x| x.to_integer()).collect());
    }
    let dim = kernel.len();
    let mut m = linalg::imat_zero(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..dim {
            m[i][j] = col[i].clone();
        }
    }
    let iso = Isometry { matrix: m };
    debug_assert!(iso.is_isometry_of(&gram_v));
    Ok((gram_v, iso))
}

/// Extend a lattice by an orthogonal A1 summand and the isometry by the
/// identity on the new generator.
pub fn extend_by_orthogonal_a1(gram: &IMat, f: &Isometry) -> (IMat, Isometry) {
    let n = gram.len();
    let mut g = linalg::imat_zero(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            g[i][j] = gram[i][j].clone();
        }
    }
    g[n][n] = Int::from(2);
    let mut m = linalg::imat_zero(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            m[i][j] = f.matrix[i][j].clone();
        }
    }
    m[n][n] = Int::one();
    (g, Isometry { matrix: m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Chiral,
    Achiral,
    Unknown,
}

/// Achirality witness: a wall permutation, the lattice isometry inducing it,
/// and (when available) a 6-root wall whose distinguished component moves to
/// an incongruent one, certifying the Z/3-reversing action.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub permutation: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
    pub black_vertex: Option<String>,
    pub image_vertex: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ChiralityOutcome {
    pub verdict: Verdict,
    pub reason: String,
    pub witness: Option<Witness>,
    pub run: Option<VinbergRun>,
}

#[derive(Debug, Clone, Default)]
pub struct ClassifyOptions {
    pub deadline: Option<Instant>,
    pub max_level: Option<i64>,
}

fn matrix_to_i64(m: &IMat) -> Vec<Vec<i64>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| i64::try_from(x).expect("isometry entries fit in i64"))
                .collect()
        })
        .collect()
}

/// Witness data for a reversing lift: locate a 6-root wall moved to a wall
/// with an incongruent distinguished component, if one exists.
fn black_pair(
    lat: &Lattice,
    roots: &[Vector],
    labels: &[String],
    perm: &[usize],
) -> (Option<String>, Option<String>) {
    let Some(block) = distinguished_summand(lat) else {
        return (None, None);
    };
    let three = Int::from(3);
    for (i, v) in roots.iter().enumerate() {
        if root_norm_of(lat, v) != Some(6) {
            continue;
        }
        let (Ok(a), Ok(b)) = (
            lat.summand_component(block, v),
            lat.summand_component(block, &roots[perm[i]]),
        ) else {
            continue;
        };
        if a.iter().zip(&b).any(|(x, y)| !(&(x - y) % &three).is_zero()) {
            return (Some(labels[i].clone()), Some(labels[perm[i]].clone()));
        }
    }
    (None, None)
}

/// Wall-set permutation induced by an isometry, if the isometry maps every
/// wall root to a wall root.
fn induced_wall_permutation(roots: &[Vector], iso: &Isometry) -> Option<Vec<usize>> {
    let mut perm = Vec::with_capacity(roots.len());
    for r in roots {
        let img = iso.apply(r);
        perm.push(roots.iter().position(|w| *w == img)?);
    }
    Some(perm)
}

/// Search for a Z/3-reversing isometry among lifted symmetries of the full
/// Coxeter graph and of a designated spanning subset.  Every actual symmetry
/// of the polytope preserves the exact Gram matrix of the walls, so it
/// appears among the weight-preserving permutations and lifts; permutations
/// that fail to lift are spurious and can be ignored.
fn search_reversing(
    lat: &Lattice,
    dg: &DiscriminantGroup,
    graph: &CoxeterGraph,
    subset: Option<&[usize]>,
) -> Option<Witness> {
    let roots = &graph.roots;
    let labels = &graph.labels;
    for perm in graph.automorphisms() {
        if perm.iter().enumerate().all(|(i, &j)| i == j) {
            continue;
        }
        let Some(iso) = symmetry_to_isometry(lat, roots, &perm) else {
            continue;
        };
        if matches!(delta3_sign(dg, &iso), Ok(-1)) {
            let (black, image) = black_pair(lat, roots, labels, &perm);
            return Some(Witness {
                permutation: perm,
                matrix: matrix_to_i64(&iso.matrix),
                black_vertex: black,
                image_vertex: image,
            });
        }
    }
    // Subset route: symmetries of a designated spanning subgraph can lift to
    // isometries that permute the full wall set even when the full graph is
    // asymmetric under the naive vertex-profile search.
    if let Some(subset) = subset {
        let sub_roots: Vec<Vector> = subset.iter().map(|&i| roots[i].clone()).collect();
        for sub_perm in graph.subset_automorphisms(subset) {
            if sub_perm.iter().enumerate().all(|(i, &j)| i == j) {
                continue;
            }
            let Some(iso) = symmetry_to_isometry(lat, &sub_roots, &sub_perm) else {
                continue;
            };
            let Some(full_perm) = induced_wall_permutation(roots, &iso) else {
                continue;
            };
            if matches!(delta3_sign(dg, &iso), Ok(-1)) {
                let (black, image) = black_pair(lat, roots, labels, &full_perm);
                return Some(Witness {
                    permutation: full_perm,
                    matrix: matrix_to_i64(&iso.matrix),
                    black_vertex: black,
                    image_vertex: image,
                });
            }
        }
    }
    None
}

/// Designated spanning subset for symmetry search: all 2-root walls.  This
/// is the subgraph used for the known achiral families (the 2-root hexagon
/// in rank 20, the symmetric rank-13 fragment).
fn designated_subset(graph: &CoxeterGraph) -> Vec<usize> {
    (0..graph.vertex_count())
        .filter(|&i| graph.norms[i] == 2)
        .collect()
}

/// Copies of the lattice's summands as an explicit per-copy list.
fn summand_list(lat: &Lattice) -> Vec<Summand> {
    lat.summand_offsets.iter().map(|(_, s)| s.clone()).collect()
}

fn is_positive_a1(s: &Summand) -> bool {
    match s.kind {
        SummandKind::A => s.n == Some(1) && s.scale == 1 && s.sign == 1,
        SummandKind::Diag => s.entries.as_deref() == Some(&[2]),
        _ => false,
    }
}

fn is_negative_a1(s: &Summand) -> bool {
    match s.kind {
        SummandKind::A => s.n == Some(1) && s.scale == 1 && s.sign == -1,
        SummandKind::Diag => s.entries.as_deref() == Some(&[-2]),
        _ => false,
    }
}

/// Decide deformation chirality.  Tries the orthogonal-A1 reduction and the
/// hyperbolic-plane replacement reduction before the direct search on the
/// lattice's own fundamental polytope.
pub fn classify_chirality(lat: &Lattice, opts: &ClassifyOptions) -> ChiralityOutcome {
    classify_inner(lat, opts, 0)
}

fn classify_inner(lat: &Lattice, opts: &ClassifyOptions, depth: usize) -> ChiralityOutcome {
    let dg = discriminant_group(lat);
    let three = Int::from(3);
    if dg.primary_part(&three) != vec![three.clone()] {
        return ChiralityOutcome {
            verdict: Verdict::Unknown,
            reason: "3-primary part of the discriminant group is not Z/3".into(),
            witness: None,
            run: None,
        };
    }

    if depth < 3 {
        // Reduction: a trailing orthogonal A1 summand preserves achirality
        // (the isometry extends by the identity on the new generator).
        let summands = summand_list(lat);
        if summands.len() > 1 && is_positive_a1(summands.last().unwrap()) {
            let parent_spec = LatticeSpec {
                summands: summands[..summands.len() - 1].to_vec(),
            };
            if let Ok(parent) = build_lattice(&parent_spec) {
                let parent_out = classify_inner(&parent, opts, depth + 1);
                if parent_out.verdict == Verdict::Achiral {
                    return extend_parent_witness(lat, &parent, parent_out);
                }
            }
        }
        // Reduction: a leading negative A1 summand realizes the lattice as
        // the orthogonal complement of a 2-root u1+u2 in the lattice with
        // the negative A1 replaced by a hyperbolic plane; a reversing
        // isometry there that fixes that 2-root restricts to one here.
        if summands.len() > 1 && is_negative_a1(&summands[0]) {
            let mut parent_summands = vec![Summand::simple(SummandKind::U, 2)];
            parent_summands.extend_from_slice(&summands[1..]);
            let parent_spec = LatticeSpec {
                summands: parent_summands,
            };
            if let Ok(parent) = build_lattice(&parent_spec) {
                if let Some(out) = reduce_via_fixed_wall(lat, &parent, opts, depth) {
                    return out;
                }
            }
        }
    }

    classify_direct(lat, opts)
}

/// Extend a parent achirality witness across an orthogonal A1 summand.
fn extend_parent_witness(
    lat: &Lattice,
    parent: &Lattice,
    parent_out: ChiralityOutcome,
) -> ChiralityOutcome {
    let witness = parent_out.witness.map(|w| {
        let pm: IMat = w
            .matrix
            .iter()
            .map(|row| row.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let f = Isometry { matrix: pm };
        let (_, ext) = extend_by_orthogonal_a1(&parent.gram, &f);
        debug_assert!(ext.is_isometry_of(&lat.gram));
        Witness {
            permutation: Vec::new(),
            matrix: matrix_to_i64(&ext.matrix),
            black_vertex: w.black_vertex,
            image_vertex: w.image_vertex,
        }
    });
    ChiralityOutcome {
        verdict: Verdict::Achiral,
        reason: format!(
            "orthogonal A1 extension of an achiral lattice ({})",
            parent_out.reason
        ),
        witness,
        run: None,
    }
}

/// Reduction through Lemma-style restriction: find a Z/3-reversing isometry
/// of `parent` fixing the 2-root u1+u2 of its leading hyperbolic plane, and
/// restrict it to the orthogonal sublattice, which is isometric to `lat`.
fn reduce_via_fixed_wall(
    lat: &Lattice,
    parent: &Lattice,
    opts: &ClassifyOptions,
    _depth: usize,
) -> Option<ChiralityOutcome> {
    let mut run_opts = preset_options(parent);
    run_opts.max_level = opts.max_level.or(run_opts.max_level);
    run_opts.deadline = opts.deadline;
    let run = vinberg_run(parent, &run_opts).ok()?;
    if run.termination.status != TerminationStatus::Terminated {
        return None;
    }
    let labels = labels_for(parent, &run);
    let vecs: Vec<Vector> = run.roots.iter().map(|r| r.coords.clone()).collect();
    let graph = coxeter_graph(parent, &vecs, &labels).ok()?;
    let dg = discriminant_group(parent);
    // The 2-root u1+u2 of the leading hyperbolic plane.
    let mut fixed = vec![Int::zero(); parent.rank];
    fixed[0] = Int::one();
    fixed[1] = Int::one();
    let fixed_idx = vecs.iter().position(|v| *v == fixed)?;
    let subset = designated_subset(&graph);
    // Look for reversing lifts fixing the distinguished wall, over full and
    // subset symmetries.
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for perm in graph.automorphisms() {
        if perm[fixed_idx] == fixed_idx {
            candidates.push(perm);
        }
    }
    let sub_roots: Vec<Vector> = subset.iter().map(|&i| vecs[i].clone()).collect();
    let sub_fixed = subset.iter().position(|&i| i == fixed_idx);
    let mut sub_candidates: Vec<Vec<usize>> = Vec::new();
    if let Some(sf) = sub_fixed {
        for perm in graph.subset_automorphisms(&subset) {
            if perm[sf] == sf {
                sub_candidates.push(perm);
            }
        }
    }
    let lifted = candidates
        .into_iter()
        .filter_map(|perm| symmetry_to_isometry(parent, &vecs, &perm))
        .chain(
            sub_candidates
                .into_iter()
                .filter_map(|perm| symmetry_to_isometry(parent, &sub_roots, &perm)),
        );
    for iso in lifted {
        if !matches!(delta3_sign(&dg, &iso), Ok(-1)) {
            continue;
        }
        let Ok((gram_v, f_v)) = restrict_to_orthogonal(parent, &iso, &fixed) else {
            continue;
        };
        let dg_v = discriminant_group_of_gram(&gram_v);
        if !matches!(delta3_sign(&dg_v, &f_v), Ok(-1)) {
            continue;
        }
        // Sanity: the restricted lattice has the discriminant of `lat`.
        debug_assert_eq!(dg_v.order(), discriminant_group(lat).order());
        return Some(ChiralityOutcome {
            verdict: Verdict::Achiral,
            reason:
                "restriction of a Z/3-reversing isometry of the hyperbolic-plane extension to the orthogonal complement of a fixed 2-root"
                    .into(),
            witness: Some(Witness {
                permutation: Vec::new(),
                matrix: matrix_to_i64(&f_v.matrix),
                black_vertex: None,
                image_vertex: None,
            }),
            run: None,
        });
    }
    None
}

/// Direct route: certify the fundamental polytope, then search for a
/// reversing symmetry of its wall system.
fn classify_direct(lat: &Lattice, opts: &ClassifyOptions) -> ChiralityOutcome {
    let mut run_opts = preset_options(lat);
    run_opts.max_level = opts.max_level.or(run_opts.max_level);
    run_opts.deadline = opts.deadline;
    let run = match vinberg_run(lat, &run_opts) {
        Ok(run) => run,
        Err(e) => {
            return ChiralityOutcome {
                verdict: Verdict::Unknown,
                reason: format!("run failed: {e}"),
                witness: None,
                run: None,
            }
        }
    };
    if run.roots.is_empty() {
        return ChiralityOutcome {
            verdict: Verdict::Unknown,
            reason: "empty root system".into(),
            witness: None,
            run: Some(run),
        };
    }
    if run.termination.status != TerminationStatus::Terminated {
        return ChiralityOutcome {
            verdict: Verdict::Unknown,
            reason: format!("walls not certified finite ({})", run.termination.detail),
            witness: None,
            run: Some(run),
        };
    }
    let labels = labels_for(lat, &run);
    let vecs: Vec<Vector> = run.roots.iter().map(|r| r.coords.clone()).collect();
    let graph = match coxeter_graph(lat, &vecs, &labels) {
        Ok(g) => g,
        Err(e) => {
            return ChiralityOutcome {
                verdict: Verdict::Unknown,
                reason: format!("graph construction failed: {e}"),
                witness: None,
                run: Some(run),
            }
        }
    };
    let dg = discriminant_group(lat);
    let subset = designated_subset(&graph);
    if let Some(witness) = search_reversing(lat, &dg, &graph, Some(&subset)) {
        return ChiralityOutcome {
            verdict: Verdict::Achiral,
            reason: "Z/3-reversing symmetry of the wall system".into(),
            witness: Some(witness),
            run: Some(run),
        };
    }
    // Chirality needs the walls to span rationally so that every polytope
    // symmetry shows up as a graph symmetry.
    let rank = linalg::rmat_rank(
        &vecs
            .iter()
            .map(|v| v.iter().map(|x| Rat::from(x.clone())).collect())
            .collect::<Vec<_>>(),
    );
    if rank == lat.rank {
        ChiralityOutcome {
            verdict: Verdict::Chiral,
            reason: "all wall-system symmetries are Z/3-direct".into(),
            witness: None,
            run: Some(run),
        }
    } else {
        ChiralityOutcome {
            verdict: Verdict::Unknown,
            reason: "wall system does not span the lattice rationally".into(),
            witness: None,
            run: Some(run),
        }
    }
}
