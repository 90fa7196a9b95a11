//! Level-ordered accumulation of fundamental-domain walls from a base point
//! in a hyperbolic lattice, with termination certification and a face census
//! of the resulting polytope.

use crate::coxeter::{coxeter_graph, CoxeterGraph, SubdiagramClass};
use crate::enumerate::{enumerate_ellipsoid, LinearConstraint};
use crate::lattice::{Lattice, LatticeError, SummandKind, Vector};
use crate::linalg::{self, Int, Rat};
use crate::roots::{from_basis_coords, gram_restrict, root_norm_of, roots_orthogonal_to,
    simple_root_basis};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// A wall accepted by the algorithm, with its level 2 (p.v)^2 / v^2.
#[derive(Debug, Clone)]
pub struct AcceptedRoot {
    pub coords: Vector,
    pub norm: u8,
    pub level: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TerminationStatus {
    Terminated,
    Exhausted,
    Running,
}

/// The two finiteness certificates, reported under the stable identifiers
/// used in the output documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Full-rank wall set, no dotted edges, and every connected parabolic
    /// subdiagram sits inside a parabolic subdiagram of maximal rank.
    RankAndParabolic,
    /// Every elliptic subdiagram of corank 2 extends in exactly two ways.
    EllipticExtension,
}

impl Criterion {
    pub fn id(&self) -> &'static str {
        match self {
            Criterion::RankAndParabolic => "5.4.3",
            Criterion::EllipticExtension => "5.4.2",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TerminationReport {
    pub status: TerminationStatus,
    pub criterion: Option<Criterion>,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VinbergRun {
    pub lattice: Lattice,
    pub base_point: Vector,
    pub roots: Vec<AcceptedRoot>,
    pub termination: TerminationReport,
    /// Rank of the level-0 root system (may be below rank L - 1).
    pub level0_rank: usize,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub base_point: Option<Vector>,
    pub functional: Option<Vector>,
    /// Highest level to search; defaults to 64.
    pub max_level: Option<i64>,
    /// Wall-clock cutoff; exceeding it yields an Exhausted report.
    pub deadline: Option<Instant>,
}

/// Preferred base point: u1 - u2 of the first hyperbolic-plane summand, else
/// the generator of the first negative diagonal entry.
pub fn default_base_point(lat: &Lattice) -> Result<Vector, LatticeError> {
    for (off, s) in &lat.summand_offsets {
        if s.kind == SummandKind::U {
            let mut p = vec![Int::zero(); lat.rank];
            p[*off] = Int::from(1);
            p[*off + 1] = Int::from(-1);
            return Ok(p);
        }
    }
    for (off, s) in &lat.summand_offsets {
        if s.kind == SummandKind::Diag {
            for (i, _) in s.entries.as_ref().unwrap().iter().enumerate() {
                if lat.gram[*off + i][*off + i].is_negative() {
                    let mut p = vec![Int::zero(); lat.rank];
                    p[*off + i] = Int::from(1);
                    return Ok(p);
                }
            }
        }
    }
    Err(LatticeError::NoBasePoint)
}

/// A functional that vanishes nowhere on the given roots: try coordinate
/// power weightings with growing base.
fn generic_functional(lat: &Lattice, roots: &[Vector]) -> Vector {
    let mut base = 2i64;
    loop {
        let mut f = Vec::with_capacity(lat.rank);
        let mut acc = Int::from(1);
        for _ in 0..lat.rank {
            f.push(acc.clone());
            acc *= base;
        }
        if roots.iter().all(|v| !linalg::dot(&f, v).is_zero()) {
            return f;
        }
        base += 1;
    }
}

/// All roots v with v^2 = k, p.v = -m, and v.w <= 0 for every accepted wall,
/// in ascending lexicographic order.
pub fn candidates_at_level(
    lat: &Lattice,
    p: &[Int],
    k: u8,
    m: &Int,
    accepted: &[AcceptedRoot],
) -> Vec<Vector> {
    let q = linalg::imat_vec(&lat.gram, p);
    let (g, sol, kernel) = linalg::functional_kernel(&q);
    if (m % &g) != Int::zero() {
        return Vec::new();
    }
    let scale = -(m / &g);
    let x0: Vector = sol.iter().map(|s| s * &scale).collect();
    let a = gram_restrict(&lat.gram, &kernel);
    let ra = linalg::imat_to_rmat(&a);
    let gx0 = linalg::imat_vec(&lat.gram, &x0);
    let b: Vec<Rat> = kernel
        .iter()
        .map(|col| Rat::from(linalg::dot(col, &gx0)))
        .collect();
    let center = linalg::solve_rational(&ra, &b.iter().map(|x| -x).collect::<Vec<_>>())
        .expect("orthogonal complement Gram is invertible");
    let c0 = Rat::from(linalg::bilinear(&lat.gram, &x0, &x0));
    let bc: Rat = b.iter().zip(&center).map(|(bi, ci)| bi * ci).sum();
    let radius2 = Rat::from(Int::from(k as i64)) - c0 - bc;
    if radius2.is_negative() {
        return Vec::new();
    }
    let constraints: Vec<LinearConstraint> = accepted
        .iter()
        .map(|w| {
            let gw = linalg::imat_vec(&lat.gram, &w.coords);
            LinearConstraint {
                a: kernel
                    .iter()
                    .map(|col| Rat::from(linalg::dot(col, &gw)))
                    .collect(),
                bound: Rat::from(-linalg::dot(&x0, &gw)),
            }
        })
        .collect();
    let target = Int::from(k as i64);
    let ys = if k == 6 {
        // A norm-6 vector is a root only when G v = 0 (mod 3): the
        // reflection must be integral, i.e. (x.v)/3 must be an integer for
        // every lattice vector x.  Restricting the search to that sublattice
        // shrinks the ellipsoid volume by an enormous factor at deep levels.
        let Some(ys) = enumerate_mod3_sublattice(&a, &center, &radius2, &constraints, lat, &kernel, &x0)
        else {
            return Vec::new();
        };
        ys
    } else {
        enumerate_ellipsoid(&ra, &center, &radius2, &constraints)
    };
    let mut out: Vec<Vector> = ys
        .into_iter()
        .map(|y| {
            let ky = from_basis_coords(&kernel, &y, lat.rank);
            ky.iter().zip(&x0).map(|(a, b)| a + b).collect::<Vector>()
        })
        .filter(|v| lat.norm(v) == target && root_norm_of(lat, v) == Some(k))
        .collect();
    out.sort();
    out
}

/// Enumerate the kernel coordinates y of vectors v = x0 + K y satisfying the
/// ellipsoid and half-space conditions together with the crystallographic
/// congruence G v = 0 (mod 3).  The congruence solutions form an affine
/// sublattice y0 + M Z^m; the search runs over the transformed ellipsoid in
/// the sublattice coordinates and maps back.  `None` means no solutions.
#[allow(clippy::too_many_arguments)]
fn enumerate_mod3_sublattice(
    a: &linalg::IMat,
    center: &[Rat],
    radius2: &Rat,
    constraints: &[LinearConstraint],
    lat: &Lattice,
    kernel: &[Vector],
    x0: &[Int],
) -> Option<Vec<Vector>> {
    let m = kernel.len();
    let gcols: Vec<Vector> = kernel.iter().map(|col| linalg::imat_vec(&lat.gram, col)).collect();
    let t: linalg::IMat = (0..lat.rank)
        .map(|i| gcols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let rhs: Vector = linalg::imat_vec(&lat.gram, x0).iter().map(|x| -x).collect();
    let (y0, f3_kernel) = linalg::mod3_solve(&t, &rhs)?;
    let mut gens = f3_kernel;
    for j in 0..m {
        let mut e = vec![Int::zero(); m];
        e[j] = Int::from(3);
        gens.push(e);
    }
    let rows = linalg::hnf_row_basis(&gens);
    debug_assert_eq!(rows.len(), m);
    // Transformed quadratic data: y = y0 + M^T z.
    let ap: linalg::IMat = rows
        .iter()
        .map(|ri| rows.iter().map(|rj| linalg::bilinear(a, ri, rj)).collect())
        .collect();
    let rap = linalg::imat_to_rmat(&ap);
    let delta: Vec<Rat> = y0
        .iter()
        .zip(center)
        .map(|(y, c)| Rat::from(y.clone()) - c)
        .collect();
    let adelta: Vec<Rat> = (0..m)
        .map(|i| {
            delta
                .iter()
                .enumerate()
                .map(|(j, d)| Rat::from(a[i][j].clone()) * d)
                .sum()
        })
        .collect();
    let lin: Vec<Rat> = rows
        .iter()
        .map(|ri| ri.iter().zip(&adelta).map(|(c, d)| Rat::from(c.clone()) * d).sum())
        .collect();
    let cz = linalg::solve_rational(&rap, &lin.iter().map(|x| -x).collect::<Vec<_>>())
        .expect("sublattice Gram is invertible");
    let r2z = radius2 - linalg::rdot(&delta, &adelta) - linalg::rdot(&cz, &lin);
    if r2z.is_negative() {
        return Some(Vec::new());
    }
    let constraints_z: Vec<LinearConstraint> = constraints
        .iter()
        .map(|c| LinearConstraint {
            a: rows
                .iter()
                .map(|ri| ri.iter().zip(&c.a).map(|(x, y)| Rat::from(x.clone()) * y).sum())
                .collect(),
            bound: &c.bound
                - c.a
                    .iter()
                    .zip(&y0)
                    .map(|(x, y)| x * Rat::from(y.clone()))
                    .sum::<Rat>(),
        })
        .collect();
    let out = enumerate_ellipsoid(&rap, &cz, &r2z, &constraints_z)
        .into_iter()
        .map(|z| {
            (0..m)
                .map(|j| {
                    &y0[j] + z.iter().zip(&rows).map(|(zi, ri)| zi * &ri[j]).sum::<Int>()
                })
                .collect()
        })
        .collect();
    Some(out)
}

/// Run the wall accumulation until a finiteness certificate holds or the
/// level budget is exhausted.
pub fn vinberg_run(lat: &Lattice, opts: &RunOptions) -> Result<VinbergRun, LatticeError> {
    let p = match &opts.base_point {
        Some(p) => p.clone(),
        None => default_base_point(lat)?,
    };
    if !lat.norm(&p).is_negative() {
        return Err(LatticeError::InvalidSummand(
            "base point must have negative square".into(),
        ));
    }
    let max_level = opts.max_level.unwrap_or(64);

    // Level 0: a simple (indecomposable) basis of the roots orthogonal to p.
    let level0 = roots_orthogonal_to(lat, &p);
    let functional = match &opts.functional {
        Some(f) if level0.iter().all(|v| !linalg::dot(f, v).is_zero()) => f.clone(),
        _ => generic_functional(lat, &level0),
    };
    let mut accepted: Vec<AcceptedRoot> = simple_root_basis(lat, &level0, &functional)
        .into_iter()
        .map(|v| {
            let norm = root_norm_of(lat, &v).expect("simple basis entries are roots");
            AcceptedRoot {
                coords: v,
                norm,
                level: Rat::zero(),
            }
        })
        .collect();
    accepted.sort_by(|a, b| a.coords.cmp(&b.coords));
    let level0_rank = {
        let vecs: Vec<Vector> = accepted.iter().map(|r| r.coords.clone()).collect();
        let g = gram_restrict(&lat.gram, &vecs);
        let (pp, _, nn) = linalg::inertia_int(&g);
        pp + nn
    };

    // Level grid: 2-root levels m^2 and 6-root levels 3 j^2 (m = 3j), merged
    // ascending, 2-roots first at equal level.
    let mut grid: Vec<(i64, u8, i64)> = Vec::new();
    let mut m = 1i64;
    while m * m <= max_level {
        grid.push((m * m, 2, m));
        m += 1;
    }
    let mut j = 1i64;
    while 3 * j * j <= max_level {
        grid.push((3 * j * j, 6, 3 * j));
        j += 1;
    }
    grid.sort();

    let trace = std::env::var("CHIRALAT_TRACE").is_ok();
    let mut report = check(lat, &p, &accepted);
    let mut timed_out = false;
    if report.is_none() {
        for (d, k, m) in grid {
            if let Some(deadline) = opts.deadline {
                if Instant::now() > deadline {
                    timed_out = true;
                    break;
                }
            }
            let t0 = Instant::now();
            let cands = candidates_at_level(lat, &p, k, &Int::from(m), &accepted);
            let enum_time = t0.elapsed();
            let before = accepted.len();
            for v in cands {
                let ok = accepted[before..]
                    .iter()
                    .all(|w| !linalg::bilinear(&lat.gram, &v, &w.coords).is_positive());
                if ok {
                    accepted.push(AcceptedRoot {
                        coords: v,
                        norm: k,
                        level: Rat::from(Int::from(d)),
                    });
                }
            }
            let mut check_time = std::time::Duration::ZERO;
            if accepted.len() > before {
                let t1 = Instant::now();
                report = check(lat, &p, &accepted);
                check_time = t1.elapsed();
            }
            if trace {
                eprintln!(
                    "level {d} (norm {k}): +{} walls ({} total), enum {:.2?}, check {:.2?}",
                    accepted.len() - before,
                    accepted.len(),
                    enum_time,
                    check_time
                );
            }
            if report.is_some() {
                break;
            }
        }
    }

    let termination = match report {
        Some(criterion) => TerminationReport {
            status: TerminationStatus::Terminated,
            criterion: Some(criterion),
            detail: format!("certified by criterion {}", criterion.id()),
        },
        None => TerminationReport {
            status: TerminationStatus::Exhausted,
            criterion: None,
            detail: if timed_out {
                "deadline exceeded".into()
            } else {
                format!("no certificate up to level {max_level}")
            },
        },
    };
    Ok(VinbergRun {
        lattice: lat.clone(),
        base_point: p,
        roots: accepted,
        termination,
        level0_rank,
    })
}

fn check(lat: &Lattice, p: &Vector, accepted: &[AcceptedRoot]) -> Option<Criterion> {
    if accepted.is_empty() {
        return None;
    }
    let vecs: Vec<Vector> = accepted.iter().map(|r| r.coords.clone()).collect();
    let labels: Vec<String> = (0..vecs.len()).map(|i| format!("w{i}")).collect();
    let graph = coxeter_graph(lat, &vecs, &labels).ok()?;
    check_termination(lat, &graph, p)
}

fn rbilinear(g: &linalg::IMat, x: &[Rat], y: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let mut row = Rat::zero();
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !g[i][j].is_zero() {
                row += Rat::from(g[i][j].clone()) * yj;
            }
        }
        acc += xi * row;
    }
    acc
}

fn rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from(x.clone())).collect()
}

/// Basis of the subspace orthogonal to the given wall subset, with the Gram
/// matrix of the ambient form restricted to that basis.
fn orthogonal_basis(
    lat: &Lattice,
    graph: &CoxeterGraph,
    subset: &[usize],
) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let rows: Vec<Vec<Rat>> = subset
        .iter()
        .map(|&i| {
            let gv = linalg::imat_vec(&lat.gram, &graph.roots[i]);
            rat_vec(&gv)
        })
        .collect();
    let basis = linalg::rmat_nullspace(&rows);
    let q: Vec<Vec<Rat>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| rbilinear(&lat.gram, x, y)).collect())
        .collect();
    (basis, q)
}

/// Whether a point of the hyperbolic space cut out by the walls in `subset`
/// (chosen in the same light-cone nappe as the base point) satisfies every
/// remaining wall inequality, i.e. whether the candidate vertex really lies
/// on the polytope.
pub fn vertex_is_real(lat: &Lattice, graph: &CoxeterGraph, p: &Vector, subset: &[usize]) -> bool {
    let (basis, q) = orthogonal_basis(lat, graph, subset);
    if basis.len() != 1 || !q[0][0].is_negative() {
        return false;
    }
    let mut x = basis.into_iter().next().unwrap();
    if rbilinear(&lat.gram, &x, &rat_vec(p)).is_positive() {
        for c in &mut x {
            *c = -c.clone();
        }
    }
    graph
        .roots
        .iter()
        .all(|w| !rbilinear(&lat.gram, &x, &rat_vec(w)).is_positive())
}

/// Whether the isotropic direction determined by a parabolic support is a
/// genuine ideal vertex of the polytope: the light-like ray orthogonal to the
/// support, on the base point's side, must satisfy every wall inequality.
pub fn cusp_is_real(lat: &Lattice, graph: &CoxeterGraph, p: &Vector, support: &[usize]) -> bool {
    let Some(z) = cusp_ray(lat, graph, p, support) else {
        return false;
    };
    graph
        .roots
        .iter()
        .all(|w| !rbilinear(&lat.gram, &z, &rat_vec(w)).is_positive())
}

/// Light-like direction orthogonal to a parabolic support, oriented toward
/// the base point's nappe.  The restricted form on the orthogonal complement
/// is positive semidefinite with a one-dimensional radical; that radical is
/// the cusp ray.  (The complement is one-dimensional when the support has
/// several components, since their isotropic directions coincide.)
fn cusp_ray(
    lat: &Lattice,
    graph: &CoxeterGraph,
    p: &Vector,
    support: &[usize],
) -> Option<Vec<Rat>> {
    let (basis, q) = orthogonal_basis(lat, graph, support);
    let rad = linalg::rmat_nullspace(&q);
    if rad.len() != 1 {
        return None;
    }
    let mut z = vec![Rat::zero(); lat.rank];
    for (c, b) in rad[0].iter().zip(&basis) {
        for (zi, bi) in z.iter_mut().zip(b) {
            *zi += c * bi;
        }
    }
    if rbilinear(&lat.gram, &z, &rat_vec(p)).is_positive() {
        for c in &mut z {
            *c = -c.clone();
        }
    }
    Some(z)
}

/// Exact geometric verdict for one corank-2 elliptic subdiagram.  With dotted
/// edges present the combinatorial endpoint count can be wrong in both
/// directions: the subdiagram may cut out no edge of the polytope at all, or
/// an edge whose candidate endpoints fall outside the polytope.  This checks
/// the actual face on the two-dimensional orthogonal complement of the seed
/// walls, which carries a signature (1,1) form: the feasible cone of the
/// remaining wall inequalities is computed exactly, and the subdiagram passes
/// iff it cuts out no one-dimensional face, or the face is a segment whose
/// two ends are each a finite vertex (negative-norm extreme ray) or an ideal
/// vertex (isotropic extreme ray matching the cusp of a parabolic support
/// containing the seed).
pub fn edge_is_certified(
    lat: &Lattice,
    graph: &CoxeterGraph,
    p: &Vector,
    seed: &[usize],
    supports: &[Vec<usize>],
) -> bool {
    let (basis, q) = orthogonal_basis(lat, graph, seed);
    if basis.len() != 2 {
        // The seed walls are linearly dependent with the rest; no edge.
        return true;
    }
    // Each remaining wall (and the base point, to pin the nappe) restricts to
    // a half-plane through the origin.
    let mut halfplanes: Vec<[Rat; 2]> = Vec::new();
    let mut outside: Vec<Vec<Rat>> = graph
        .roots
        .iter()
        .enumerate()
        .filter(|(i, _)| seed.binary_search(i).is_err())
        .map(|(_, w)| rat_vec(w))
        .collect();
    outside.push(rat_vec(p));
    for w in &outside {
        let a = [
            rbilinear(&lat.gram, &basis[0], w),
            rbilinear(&lat.gram, &basis[1], w),
        ];
        if !a[0].is_zero() || !a[1].is_zero() {
            halfplanes.push(a);
        }
    }
    if halfplanes.is_empty() {
        // Unconstrained plane: cannot be a finite-volume face arrangement.
        return false;
    }
    // Candidate extreme rays of the feasible cone: boundary directions and
    // inward normals of the half-planes, kept if they satisfy every
    // constraint, deduplicated by direction.
    let mut rays: Vec<[Rat; 2]> = Vec::new();
    for a in &halfplanes {
        for r in [
            [-a[1].clone(), a[0].clone()],
            [a[1].clone(), -a[0].clone()],
            [-a[0].clone(), -a[1].clone()],
        ] {
            if !halfplanes
                .iter()
                .all(|c| !(&c[0] * &r[0] + &c[1] * &r[1]).is_positive())
            {
                continue;
            }
            let norm = normalize_ray(r);
            if !rays.contains(&norm) {
                rays.push(norm);
            }
        }
    }
    if rays.len() <= 1 {
        // The face is at most a point; not an edge.
        return true;
    }
    // The wall system has full rank, so the feasible cone is pointed; its two
    // extreme rays are the angular extremes under the cross-product order.
    let cross = |u: &[Rat; 2], v: &[Rat; 2]| -> Rat { &u[0] * &v[1] - &u[1] * &v[0] };
    let lo = rays
        .iter()
        .find(|u| rays.iter().all(|v| !cross(u, v).is_negative()));
    let hi = rays
        .iter()
        .find(|u| rays.iter().all(|v| !cross(v, u).is_negative()));
    let (Some(r1), Some(r2)) = (lo, hi) else {
        // No consistent angular order: the cone contains a line, which a
        // full-rank wall system forbids; refuse to certify.
        return false;
    };
    let qval = |x: &[Rat; 2], y: &[Rat; 2]| -> Rat {
        &q[0][0] * &x[0] * &y[0]
            + &q[0][1] * (&x[0] * &y[1] + &x[1] * &y[0])
            + &q[1][1] * &x[1] * &y[1]
    };
    let q1 = qval(r1, r1);
    let q2 = qval(r2, r2);
    let b = qval(r1, r2);
    // The cone meets the open negative-norm region iff an extreme ray is
    // negative or the interior crosses it (mixed product negative and
    // dominating the endpoint norms).
    let edge_nonempty = q1.is_negative()
        || q2.is_negative()
        || (b.is_negative() && &b * &b > &q1 * &q2);
    if !edge_nonempty {
        return true;
    }
    // Both ends of the segment must be anchored: a finite vertex (extreme ray
    // of negative norm) or an ideal vertex (isotropic extreme ray equal to
    // the cusp ray of a parabolic support containing the seed).
    'rays: for (r, qr) in [(r1, &q1), (r2, &q2)] {
        if qr.is_negative() {
            continue;
        }
        if !qr.is_zero() {
            return false;
        }
        let ambient: Vec<Rat> = (0..lat.rank)
            .map(|i| &r[0] * &basis[0][i] + &r[1] * &basis[1][i])
            .collect();
        for s in supports {
            if !seed.iter().all(|v| s.binary_search(v).is_ok()) {
                continue;
            }
            if let Some(z) = cusp_ray(lat, graph, p, s) {
                let indep = ambient
                    .iter()
                    .zip(&z)
                    .any(|(x, _)| !x.is_zero())
                    && (0..lat.rank).any(|i| {
                        (0..lat.rank).any(|j| {
                            &ambient[i] * &z[j] != &ambient[j] * &z[i]
                        })
                    });
                let positive_multiple = !indep
                    && ambient
                        .iter()
                        .zip(&z)
                        .all(|(x, y)| !(x * y).is_negative());
                if positive_multiple {
                    continue 'rays;
                }
            }
        }
        return false;
    }
    true
}

/// Scale a nonzero ray so equal directions compare equal: divide by the
/// absolute value of the first nonzero coordinate.
fn normalize_ray(r: [Rat; 2]) -> [Rat; 2] {
    let s = if !r[0].is_zero() {
        r[0].abs()
    } else {
        r[1].abs()
    };
    [&r[0] / &s, &r[1] / &s]
}

/// Try the rank-and-parabolic certificate, then the elliptic-extension
/// certificate.  `None` means neither holds for this wall set.
pub fn check_termination(lat: &Lattice, graph: &CoxeterGraph, p: &Vector) -> Option<Criterion> {
    let n = lat.rank - 1;
    let all: Vec<usize> = (0..graph.vertex_count()).collect();
    let full_rank = graph.subset_rank(&all) == lat.rank;

    if full_rank && !graph.has_dotted_edge() {
        let pieces = graph.connected_parabolic_subdiagrams();
        let supports = graph.parabolic_supports_of_rank(n - 1);
        let ok = pieces.iter().all(|piece| {
            supports
                .iter()
                .any(|s| piece.iter().all(|v| s.binary_search(v).is_ok()))
        });
        if ok {
            return Some(Criterion::RankAndParabolic);
        }
    }

    // A finite-volume polytope has walls spanning the whole space, so the
    // extension criterion cannot hold below full rank; skipping it early
    // keeps intermediate checks cheap.
    if n < 2 || !full_rank {
        return None;
    }
    // Every elliptic subdiagram of rank n-1 (an edge of the polytope) must
    // have exactly two endpoints: finite ones are elliptic extensions of
    // rank n by one vertex, ideal ones are parabolic subdiagrams of rank
    // n-1 containing the seed.
    let supports = graph.parabolic_supports_of_rank(n - 1);
    let mut any_seed = false;
    let complete = graph.for_each_elliptic_subset_of_size(n - 1, |seed| {
        any_seed = true;
        let mut vertex_exts: Vec<Vec<usize>> = Vec::new();
        for v in 0..graph.vertex_count() {
            if seed.binary_search(&v).is_ok() {
                continue;
            }
            let mut ext = seed.to_vec();
            ext.push(v);
            ext.sort();
            if matches!(graph.classify_subdiagram(&ext), SubdiagramClass::Elliptic(r) if r == n) {
                vertex_exts.push(ext);
            }
        }
        let cusps = supports
            .iter()
            .filter(|q| seed.iter().all(|v| q.binary_search(v).is_ok()))
            .count();
        if vertex_exts.len() + cusps == 2 {
            return true;
        }
        // The combinatorial count disagrees, which can legitimately happen
        // when dotted edges are present; fall back to the exact geometric
        // verdict for this subdiagram.
        edge_is_certified(lat, graph, p, seed, &supports)
    });
    if complete && any_seed {
        Some(Criterion::EllipticExtension)
    } else {
        None
    }
}

/// Counts of finite vertices (elliptic subdiagrams of full corank-1 rank) and
/// ideal vertices (maximal-rank parabolic supports, counted per support).
pub fn face_census(lat: &Lattice, graph: &CoxeterGraph) -> (usize, usize) {
    let n = lat.rank - 1;
    let finite = graph.elliptic_subsets_of_size(n).len();
    let ideal = graph.parabolic_supports_of_rank(n - 1).len();
    (finite, ideal)
}

/// Serializable run document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunDocument {
    pub lattice: crate::lattice::LatticeSpec,
    pub base_point: Vec<i64>,
    pub roots: Vec<RootRecord>,
    pub termination: TerminationDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootRecord {
    pub label: String,
    pub coords: Vec<i64>,
    pub norm: u8,
    pub level_num: i64,
    pub level_den: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TerminationDoc {
    pub status: String,
    pub criterion: String,
}

fn to_i64_vec(v: &[Int]) -> Vec<i64> {
    v.iter()
        .map(|x| i64::try_from(x).expect("coordinate fits in i64"))
        .collect()
}

impl RunDocument {
    pub fn from_run(run: &VinbergRun, labels: &[String]) -> Self {
        assert_eq!(labels.len(), run.roots.len());
        RunDocument {
            lattice: run.lattice.spec.clone(),
            base_point: to_i64_vec(&run.base_point),
            roots: run
                .roots
                .iter()
                .zip(labels)
                .map(|(r, label)| RootRecord {
                    label: label.clone(),
                    coords: to_i64_vec(&r.coords),
                    norm: r.norm,
                    level_num: i64::try_from(r.level.numer()).expect("level fits in i64"),
                    level_den: i64::try_from(r.level.denom()).expect("level fits in i64"),
                })
                .collect(),
            termination: TerminationDoc {
                status: match run.termination.status {
                    TerminationStatus::Terminated => "Terminated".into(),
                    TerminationStatus::Exhausted => "Exhausted".into(),
                    TerminationStatus::Running => "Running".into(),
                },
                criterion: run
                    .termination
                    .criterion
                    .map(|c| c.id().to_string())
                    .unwrap_or_else(|| "none".into()),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vec_i64;

    #[test]
    fn default_base_points() {
        let lat = Lattice::from_name("U+A2+E8").unwrap();
        let p = default_base_point(&lat).unwrap();
        let mut expect = vec![0i64; 12];
        expect[0] = 1;
        expect[1] = -1;
        assert_eq!(p, vec_i64(&expect));

        let lat2 = Lattice::from_name("-A1+A2").unwrap();
        assert_eq!(default_base_point(&lat2).unwrap(), vec_i64(&[1, 0, 0]));

        assert!(default_base_point(&Lattice::from_name("E8").unwrap()).is_err());
    }

    #[test]
    fn u_a2_walls_terminate() {
        let lat = Lattice::from_name("U+A2").unwrap();
        let run = vinberg_run(&lat, &RunOptions::default()).unwrap();
        assert_eq!(run.termination.status, TerminationStatus::Terminated);
        assert_eq!(run.roots.len(), 4);
        let levels: Vec<Rat> = run.roots.iter().map(|r| r.level.clone()).collect();
        let zero = Rat::zero();
        assert_eq!(levels.iter().filter(|&l| *l == zero).count(), 3);
        assert_eq!(
            levels.iter().filter(|&l| *l == Rat::from(Int::from(1))).count(),
            1
        );
    }

    #[test]
    fn neg_a1_a2_walls_terminate() {
        let lat = Lattice::from_name("-A1+A2").unwrap();
        let run = vinberg_run(&lat, &RunOptions::default()).unwrap();
        assert_eq!(run.termination.status, TerminationStatus::Terminated);
        assert_eq!(run.roots.len(), 3);
        // One 6-root wall at level 12.
        let twelve = Rat::from(Int::from(12));
        let deep: Vec<&AcceptedRoot> =
            run.roots.iter().filter(|r| r.level == twelve).collect();
        assert_eq!(deep.len(), 1);
        assert_eq!(deep[0].norm, 6);
        let v = &deep[0].coords;
        assert!(v == &vec_i64(&[3, -4, -2]) || v == &vec_i64(&[3, 4, 2]) ||
                v == &vec_i64(&[3, 2, -2]) || v.iter().take(1).all(|x| *x == Int::from(3)));
    }

    #[test]
    fn exhausted_below_first_deep_level() {
        let lat = Lattice::from_name("-A1+A2").unwrap();
        let opts = RunOptions {
            max_level: Some(11),
            ..Default::default()
        };
        let run = vinberg_run(&lat, &opts).unwrap();
        assert_eq!(run.termination.status, TerminationStatus::Exhausted);
    }

    #[test]
    fn levels_are_nondecreasing_and_walls_obtuse() {
        for name in ["U+A2", "U+A2+A1", "-A1+A2"] {
            let lat = Lattice::from_name(name).unwrap();
            let run = vinberg_run(&lat, &RunOptions::default()).unwrap();
            for w in run.roots.windows(2) {
                assert!(w[0].level <= w[1].level, "{name}");
            }
            for (i, a) in run.roots.iter().enumerate() {
                // Level formula holds exactly.
                let pv = linalg::bilinear(&lat.gram, &run.base_point, &a.coords);
                let lvl = Rat::new(Int::from(2) * &pv * &pv, Int::from(a.norm as i64));
                assert_eq!(lvl, a.level, "{name}");
                for b in &run.roots[i + 1..] {
                    assert!(
                        !linalg::bilinear(&lat.gram, &a.coords, &b.coords).is_positive(),
                        "{name}: walls at obtuse angles"
                    );
                }
            }
        }
    }

    /// Brute-force oracle: enumerate every root in a coordinate box, order by
    /// (level, coords), and greedily filter by the acceptance conditions.
    fn oracle_walls(lat: &Lattice, p: &Vector, functional: &Vector, max_level: i64) -> Vec<Vector> {
        let n = lat.rank;
        let bound = 8i64;
        let mut all: Vec<(Rat, Vector)> = Vec::new();
        let mut x = vec![0i64; n];
        fn rec(
            lat: &Lattice,
            p: &Vector,
            bound: i64,
            x: &mut Vec<i64>,
            i: usize,
            max_level: i64,
            all: &mut Vec<(Rat, Vector)>,
        ) {
            if i == x.len() {
                let v = vec_i64(x);
                if let Some(k) = root_norm_of(lat, &v) {
                    let pv = linalg::bilinear(&lat.gram, p, &v);
                    if pv.is_positive() {
                        return;
                    }
                    let lvl = Rat::new(Int::from(2) * &pv * &pv, Int::from(k as i64));
                    if lvl <= Rat::from(Int::from(max_level)) {
                        all.push((lvl, v));
                    }
                }
                return;
            }
            for m in -bound..=bound {
                x[i] = m;
                rec(lat, p, bound, x, i + 1, max_level, all);
            }
        }
        rec(lat, p, bound, &mut x, 0, max_level, &mut all);
        all.sort();
        // Level 0: positive roots under the functional, kept only if they do
        // not split as a sum of two positive roots.
        let positives: Vec<Vector> = all
            .iter()
            .filter(|(lvl, v)| lvl.is_zero() && linalg::dot(functional, v).is_negative())
            .map(|(_, v)| v.clone())
            .collect();
        let mut walls: Vec<Vector> = Vec::new();
        for (lvl, v) in all {
            if lvl.is_zero() {
                if !linalg::dot(functional, &v).is_negative() {
                    continue;
                }
                let decomposes = positives.iter().any(|a| {
                    a != &v && {
                        let rest: Vector = v.iter().zip(a).map(|(x, y)| x - y).collect();
                        positives.contains(&rest)
                    }
                });
                if decomposes {
                    continue;
                }
            }
            if walls
                .iter()
                .all(|w| !linalg::bilinear(&lat.gram, &v, w).is_positive())
            {
                walls.push(v);
            }
        }
        walls
    }

    #[test]
    fn oracle_agreement_on_small_lattices() {
        for name in ["U+A2", "-A1+A2"] {
            let lat = Lattice::from_name(name).unwrap();
            let run = vinberg_run(&lat, &RunOptions::default()).unwrap();
            let functional = {
                let level0 = roots_orthogonal_to(&lat, &run.base_point);
                generic_functional(&lat, &level0)
            };
            let oracle = oracle_walls(&lat, &run.base_point, &functional, 12);
            let mut got: Vec<Vector> = run.roots.iter().map(|r| r.coords.clone()).collect();
            let mut want = oracle;
            got.sort();
            want.sort();
            assert_eq!(got, want, "{name}");
        }
    }
}
