//! Canonical run presets for the supported lattice families: designated
//! level-0 simple roots, the functional that selects them, vertex labels,
//! and frozen reference wall lists used to validate full runs.

use crate::lattice::{Lattice, SummandKind, Vector};
use crate::linalg::{self, solve_affine, Int, Rat};
use crate::roots::root_norm_of;
use crate::vinberg::{vinberg_run, AcceptedRoot, RunOptions, VinbergRun};
use num_traits::Zero;

/// The designated simple roots at level 0, one block per summand, in summand
/// order.  For a hyperbolic-plane summand this is u1 + u2; for a root-system
/// summand the standard basis roots; for an A2 summand the short root a2 and
/// the long (norm 6) root a1 - a2; basis vectors that are not roots of the
/// ambient lattice are skipped.
pub fn designated_simple_roots(lat: &Lattice) -> Vec<Vector> {
    let mut out = Vec::new();
    for (off, s) in &lat.summand_offsets {
        let r = s.rank().expect("summand validated at build time");
        match s.kind {
            SummandKind::U => {
                let mut v = vec![Int::zero(); lat.rank];
                v[*off] = Int::from(1);
                v[*off + 1] = Int::from(1);
                if root_norm_of(lat, &v).is_some() {
                    out.push(v);
                }
            }
            SummandKind::A if r == 2 => {
                let mut a2 = vec![Int::zero(); lat.rank];
                a2[*off + 1] = Int::from(1);
                let mut long = vec![Int::zero(); lat.rank];
                long[*off] = Int::from(1);
                long[*off + 1] = Int::from(-1);
                for v in [a2, long] {
                    if root_norm_of(lat, &v).is_some() {
                        out.push(v);
                    }
                }
            }
            _ => {
                for i in 0..r {
                    let mut v = vec![Int::zero(); lat.rank];
                    v[*off + i] = Int::from(1);
                    if root_norm_of(lat, &v).is_some() {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

/// Integer functional with f . p = 0 and f . s = -1 on every designated
/// simple root, so those roots come out positive and indecomposable.
pub fn designated_functional(_lat: &Lattice, p: &[Int], designated: &[Vector]) -> Option<Vector> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    rows.push(p.iter().map(|x| Rat::from(x.clone())).collect());
    rhs.push(Rat::zero());
    for s in designated {
        rows.push(s.iter().map(|x| Rat::from(x.clone())).collect());
        rhs.push(-Rat::from(Int::from(1)));
    }
    let f = solve_affine(&rows, &rhs)?;
    let denom = f
        .iter()
        .fold(Int::from(1), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    Some(f.iter().map(|x| (x * Rat::from(denom.clone())).to_integer()).collect())
}

/// Run options carrying the preset functional for this lattice.
pub fn preset_options(lat: &Lattice) -> RunOptions {
    let p = crate::vinberg::default_base_point(lat).ok();
    let functional = p
        .as_ref()
        .and_then(|p| designated_functional(lat, p, &designated_simple_roots(lat)));
    // The unscaled families need levels well beyond the generic default of
    // 64 (the deepest certified wall to date sits at level 144); runs stop
    // at the first certified level, so the headroom costs nothing there.
    // Scaled lattices have no 2- or 6-roots at all, so every level is
    // scanned in full and the budget must stay small.
    let scaled = lat.summand_offsets.iter().any(|(_, s)| s.scale != 1);
    RunOptions {
        base_point: None,
        functional,
        max_level: if scaled { None } else { Some(300) },
        deadline: None,
    }
}

/// Convenience wrapper: run with the preset options.
pub fn run_preset(lat: &Lattice) -> Result<VinbergRun, crate::lattice::LatticeError> {
    vinberg_run(lat, &preset_options(lat))
}

/// Indices of unscaled positive E8 summand copies.
fn e8_copies(lat: &Lattice) -> Vec<usize> {
    lat.summand_offsets
        .iter()
        .enumerate()
        .filter(|(_, (_, s))| {
            s.kind == SummandKind::E && s.n == Some(8) && s.scale == 1 && s.sign == 1
        })
        .map(|(i, _)| i)
        .collect()
}

/// Swap the coordinate blocks of the two E8 copies; identity otherwise.
fn e8_swap(lat: &Lattice, v: &[Int]) -> Vector {
    let copies = e8_copies(lat);
    let mut out = v.to_vec();
    if copies.len() == 2 {
        let a = lat.summand_offsets[copies[0]].0;
        let b = lat.summand_offsets[copies[1]].0;
        for i in 0..8 {
            out.swap(a + i, b + i);
        }
    }
    out
}

/// Deterministic vertex labels for a run: level-0 basis roots of E8 copies
/// get e1..e8 (second copy e1p..e8p); everything else gets v1, v2, ... with
/// designated roots first, then deeper walls in acceptance order.  A wall
/// whose E8-swap mirror was already labeled at the same level gets the
/// mirror's label with a "p" suffix.
pub fn labels_for(lat: &Lattice, run: &VinbergRun) -> Vec<String> {
    let n = run.roots.len();
    let mut labels = vec![String::new(); n];
    let copies = e8_copies(lat);
    // e-labels for level-0 basis roots of E8 copies.
    for (ci, &summand) in copies.iter().enumerate() {
        let off = lat.summand_offsets[summand].0;
        let suffix = if ci == 1 { "p" } else { "" };
        for i in 0..8 {
            let mut basis = vec![Int::zero(); lat.rank];
            basis[off + i] = Int::from(1);
            if let Some(k) = run
                .roots
                .iter()
                .position(|r| r.level.is_zero() && r.coords == basis)
            {
                labels[k] = format!("e{}{}", i + 1, suffix);
            }
        }
    }
    // v-labels: designated level-0 roots in designated order first.
    let designated = designated_simple_roots(lat);
    let mut counter = 1usize;
    for d in &designated {
        if let Some(k) = run
            .roots
            .iter()
            .position(|r| r.level.is_zero() && &r.coords == d)
        {
            if labels[k].is_empty() {
                labels[k] = format!("v{counter}");
                counter += 1;
            }
        }
    }
    // Remaining level-0 roots, then deeper walls in acceptance order.
    for i in 0..n {
        if !labels[i].is_empty() {
            continue;
        }
        let mirror = e8_swap(lat, &run.roots[i].coords);
        if mirror != run.roots[i].coords {
            if let Some(k) = run.roots.iter().position(|r| r.coords == mirror) {
                if !labels[k].is_empty() && run.roots[k].level == run.roots[i].level {
                    labels[i] = format!("{}p", labels[k]);
                    continue;
                }
            }
        }
        labels[i] = format!("v{counter}");
        counter += 1;
    }
    labels
}

/// One wall of a frozen reference run.
#[derive(Debug, Clone)]
pub struct ReferenceRoot {
    pub coords: Vector,
    pub norm: u8,
    pub level: i64,
}

fn dual_scaled(lat: &Lattice, summand: usize, i: usize, scale: i64) -> Vector {
    let w = lat
        .dual_basis_vector_int(summand, i)
        .expect("dual basis vector is integral");
    w.iter().map(|x| x * Int::from(scale)).collect()
}

fn add(a: &mut Vector, b: &[Int]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Build a reference wall from per-summand integer blocks plus scaled dual
/// vectors, computing its norm and level from the lattice data.
fn make_root(
    lat: &Lattice,
    p: &[Int],
    blocks: &[(usize, &[i64])],
    duals: &[(usize, usize, i64)],
) -> ReferenceRoot {
    let mut v = vec![Int::zero(); lat.rank];
    for (summand, coords) in blocks {
        let off = lat.summand_offsets[*summand].0;
        for (i, &c) in coords.iter().enumerate() {
            v[off + i] += Int::from(c);
        }
    }
    for (summand, i, scale) in duals {
        add(&mut v, &dual_scaled(lat, *summand, *i, *scale));
    }
    let norm = root_norm_of(lat, &v).expect("reference wall must be a root");
    let pv = linalg::bilinear(&lat.gram, p, &v);
    let level = Rat::new(Int::from(2) * &pv * &pv, Int::from(norm as i64));
    assert!(level.is_integer());
    ReferenceRoot {
        coords: v,
        norm,
        level: i64::try_from(level.to_integer()).unwrap(),
    }
}

/// The frozen wall lists for the nine catalog lattices whose runs are pinned
/// exactly, keyed by lattice name.  Returns None for other names.
pub fn reference_walls(name: &str) -> Option<Vec<ReferenceRoot>> {
    let lat = Lattice::from_name(name).ok()?;
    let p = crate::vinberg::default_base_point(&lat).ok()?;
    let mk = |blocks: &[(usize, &[i64])], duals: &[(usize, usize, i64)]| {
        make_root(&lat, &p, blocks, duals)
    };
    let e8_block = |summand: usize, out: &mut Vec<ReferenceRoot>| {
        for i in 0..8usize {
            let mut coords = [0i64; 8];
            coords[i] = 1;
            out.push(mk(&[(summand, &coords[..])], &[]));
        }
    };
    let mut out: Vec<ReferenceRoot> = Vec::new();
    match name {
        "U+A2" => {
            out.push(mk(&[(0, &[1, 1])], &[]));
            out.push(mk(&[(1, &[0, 1])], &[]));
            out.push(mk(&[(1, &[1, -1])], &[]));
            out.push(mk(&[(0, &[0, -1]), (1, &[-1, -1])], &[]));
        }
        "U+A2+E8" => {
            out.push(mk(&[(0, &[1, 1])], &[]));
            out.push(mk(&[(1, &[0, 1])], &[]));
            out.push(mk(&[(1, &[1, -1])], &[]));
            e8_block(2, &mut out);
            out.push(mk(&[(0, &[0, -1]), (1, &[-1, -1])], &[]));
            out.push(mk(&[(0, &[0, -1])], &[(2, 7, -1)]));
        }
        "U+A2+2E8" => {
            out.push(mk(&[(0, &[1, 1])], &[]));
            out.push(mk(&[(1, &[0, 1])], &[]));
            out.push(mk(&[(1, &[1, -1])], &[]));
            e8_block(2, &mut out);
            e8_block(3, &mut out);
            out.push(mk(&[(0, &[0, -1]), (1, &[-1, -1])], &[]));
            out.push(mk(&[(0, &[0, -1])], &[(2, 7, -1)]));
            out.push(mk(&[(0, &[0, -1])], &[(3, 7, -1)]));
            out.push(mk(&[(0, &[2, -2]), (1, &[-1, -1])], &[(2, 0, -1), (3, 0, -1)]));
            out.push(mk(&[(0, &[3, -3]), (1, &[-2, -1])], &[(2, 6, -1), (3, 1, -1)]));
            out.push(mk(&[(0, &[3, -3]), (1, &[-2, -1])], &[(2, 1, -1), (3, 6, -1)]));
            out.push(mk(&[(0, &[6, -6]), (1, &[-4, -2])], &[(2, 7, -3), (3, 0, -3)]));
            out.push(mk(&[(0, &[6, -6]), (1, &[-4, -2])], &[(2, 0, -3), (3, 7, -3)]));
        }
        "-A1+A2" => {
            out.push(mk(&[(1, &[0, 1])], &[]));
            out.push(mk(&[(1, &[1, -1])], &[]));
            out.push(mk(&[(0, &[3]), (1, &[-4, -2])], &[]));
        }
        "U+A2+A1" => {
            out.push(mk(&[(0, &[1, 1])], &[]));
            out.push(mk(&[(1, &[0, 1])], &[]));
            out.push(mk(&[(1, &[1, -1])], &[]));
            out.push(mk(&[(2, &[1])], &[]));
            out.push(mk(&[(0, &[0, -1]), (1, &[-1, -1])], &[]));
            out.push(mk(&[(0, &[0, -1]), (2, &[-1])], &[]));
        }
        "-A1+A2+E8" => {
            out.push(mk(&[(1, &[0, 1])], &[]));
            out.push(mk(&[(1, &[1, -1])], &[]));
            e8_block(2, &mut out);
            out.push(mk(&[(0, &[1])], &[(2, 0, -1)]));
            out.push(mk(&[(0, &[1]), (1, &[-1, -1])], &[(2, 7, -1)]));
            out.push(mk(&[(0, &[3]), (1, &[-4, -2])], &[]));
        }
        "U+A2+A1+E8" => {
            out.push(mk(&[(0, &[1, 1])], &[]));
            out.push(mk(&[(1, &[0, 1])], &[]));
            out.push(mk(&[(1, &[1, -1])], &[]));
            out.push(mk(&[(2, &[1])], &[]));
            e8_block(3, &mut out);
            out.push(mk(&[(0, &[0, -1]), (1, &[-1, -1])], &[]));
            out.push(mk(&[(0, &[0, -1]), (2, &[-1])], &[]));
            out.push(mk(&[(0, &[0, -1])], &[(3, 7, -1)]));
            out.push(mk(&[(0, &[6, -6]), (1, &[-4, -2]), (2, &[-3])], &[(3, 0, -3)]));
        }
        _ => return None,
    }
    Some(out)
}

/// Compare a run against a frozen reference: same multiset of
/// (coords, norm, level).  Returns a description of the first mismatch.
pub fn diff_against_reference(run: &VinbergRun, reference: &[ReferenceRoot]) -> Option<String> {
    let norm_key = |coords: &Vector, norm: u8, level: &Rat| {
        (level.clone(), norm, coords.clone())
    };
    let mut got: Vec<_> = run
        .roots
        .iter()
        .map(|r: &AcceptedRoot| norm_key(&r.coords, r.norm, &r.level))
        .collect();
    let mut want: Vec<_> = reference
        .iter()
        .map(|r| norm_key(&r.coords, r.norm, &Rat::from(Int::from(r.level))))
        .collect();
    got.sort();
    want.sort();
    // The reference lists are known to be partial: a run may legitimately
    // produce further walls at deeper levels, but every reference wall must
    // be present with its exact level and norm.
    for w in &want {
        if got.binary_search(w).is_err() {
            return Some(format!(
                "missing reference wall {:?} (norm {}) at level {}",
                w.2, w.1, w.0
            ));
        }
    }
    None
}
