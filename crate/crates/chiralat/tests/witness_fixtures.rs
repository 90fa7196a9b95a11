//! Pinned achirality witnesses for the two deep rank families: an explicit
//! involution of a spanning 2-root subgraph lifts to a lattice isometry that
//! reverses the discriminant Z/3, moving the level-0 long root to a deep
//! 6-root wall with an incongruent A2-component.

use chiralat::chirality::{delta3_sign, symmetry_to_isometry};
use chiralat::coxeter::coxeter_graph;
use chiralat::discriminant::discriminant_group;
use chiralat::lattice::Lattice;
use chiralat::linalg::Int;
use chiralat::presets::reference_walls;
use chiralat::roots::root_norm_of;
use num_traits::Zero;

fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// A2-component of a vector of the given lattice, as plain integers.
fn a2_component(lat: &Lattice, summand: usize, v: &[Int]) -> Vec<Int> {
    lat.summand_component(summand, v).unwrap()
}

fn congruent_mod3(a: &[Int], b: &[Int]) -> bool {
    let three = Int::from(3);
    a.iter().zip(b).all(|(x, y)| ((x - y) % &three).is_zero())
}

/// The hexagonal 2-root subgraph of the rank-20 family: some involution of
/// the 2-root walls lifts to an isometry that reverses the Z/3 and carries
/// the level-0 long root to a level-48 wall with A2-component (-4,-2).
#[test]
fn rank20_two_root_involution_reverses_z3() {
    let lat = Lattice::from_name("U+A2+2E8").unwrap();
    let walls = reference_walls("U+A2+2E8").unwrap();
    let vecs: Vec<Vec<Int>> = walls.iter().map(|w| w.coords.clone()).collect();
    let labels: Vec<String> = (0..vecs.len()).map(|i| format!("w{i}")).collect();
    let graph = coxeter_graph(&lat, &vecs, &labels).unwrap();
    let dg = discriminant_group(&lat);

    let two_roots: Vec<usize> = (0..vecs.len())
        .filter(|&i| walls[i].norm == 2)
        .collect();
    assert_eq!(two_roots.len(), 24, "the hexagonal subgraph has 24 vertices");
    let sub_roots: Vec<Vec<Int>> = two_roots.iter().map(|&i| vecs[i].clone()).collect();

    // The level-0 long root and the two level-48 walls.
    let mut v3 = vec![Int::zero(); lat.rank];
    v3[2] = Int::from(1);
    v3[3] = Int::from(-1);
    let deep: Vec<&Vec<Int>> = walls
        .iter()
        .filter(|w| w.norm == 6 && w.level == 48)
        .map(|w| &w.coords)
        .collect();
    assert_eq!(deep.len(), 2);

    let mut found = false;
    for perm in graph.subset_automorphisms(&two_roots) {
        if perm.iter().enumerate().all(|(i, &j)| i == j) {
            continue;
        }
        let Some(iso) = symmetry_to_isometry(&lat, &sub_roots, &perm) else {
            continue;
        };
        if !matches!(delta3_sign(&dg, &iso), Ok(-1)) {
            continue;
        }
        let img = iso.apply(&v3);
        if !deep.iter().any(|d| **d == img) {
            continue;
        }
        // The moved 6-root certifies the reversal by component congruence.
        let a = a2_component(&lat, 1, &v3);
        let b = a2_component(&lat, 1, &img);
        assert_eq!(a, int_vec(&[1, -1]));
        assert_eq!(b, int_vec(&[-4, -2]));
        assert!(!congruent_mod3(&a, &b));
        found = true;
        break;
    }
    assert!(found, "no reversing hexagon involution moving the long root");
}

/// The symmetric rank-13 fragment: the involution fixing v7 and swapping
/// v2 with e1 lifts to a reversing isometry with an explicitly pinned image
/// of the long root.
#[test]
fn rank13_fragment_involution_reverses_z3() {
    let lat = Lattice::from_name("U+A2+A1+E8").unwrap();
    let walls = reference_walls("U+A2+A1+E8").unwrap();
    let vecs: Vec<Vec<Int>> = walls.iter().map(|w| w.coords.clone()).collect();
    let labels: Vec<String> = (0..vecs.len()).map(|i| format!("w{i}")).collect();
    let graph = coxeter_graph(&lat, &vecs, &labels).unwrap();
    let dg = discriminant_group(&lat);

    // Reference order: v1, v2, v3, v4, e1..e8, v5, v6, v7, v8.
    let (v1, v2, v3, _v4) = (0usize, 1usize, 2usize, 3usize);
    let e = |i: usize| 3 + i; // e1 = 4, ..., e8 = 11
    let (v5, v6, v7) = (12usize, 13usize, 14usize);
    assert_eq!(walls[v3].norm, 6);
    assert_eq!(walls[v7].level, 1);

    // Spanning symmetric fragment: e1..e8, v1, v2, v5, v6, v7.
    let subset: Vec<usize> = (1..=8)
        .map(e)
        .chain([v1, v2, v5, v6, v7])
        .collect();
    let sub_roots: Vec<Vec<Int>> = subset.iter().map(|&i| vecs[i].clone()).collect();
    let pos = |i: usize| subset.iter().position(|&j| j == i).unwrap();

    let mut found = false;
    for perm in graph.subset_automorphisms(&subset) {
        let swaps = perm[pos(v2)] == pos(e(1)) && perm[pos(e(1))] == pos(v2);
        if !swaps {
            continue;
        }
        assert_eq!(perm[pos(e(7))], pos(e(7)), "the involution fixes e7");
        let Some(iso) = symmetry_to_isometry(&lat, &sub_roots, &perm) else {
            continue;
        };
        assert!(matches!(delta3_sign(&dg, &iso), Ok(-1)));
        // Image of the long root, written in the fragment basis:
        // -e3 - 2 e1 + e5 + 2 e6 + 3 e7 + 4 e8 + 5 v7 + 6 v1 + 4 v5 + 3 v6 + 2 v2.
        let mut expect = vec![Int::zero(); lat.rank];
        for (idx, c) in [
            (e(3), -1i64),
            (e(1), -2),
            (e(5), 1),
            (e(6), 2),
            (e(7), 3),
            (e(8), 4),
            (v7, 5),
            (v1, 6),
            (v5, 4),
            (v6, 3),
            (v2, 2),
        ] {
            for (x, y) in expect.iter_mut().zip(&vecs[idx]) {
                *x += y * Int::from(c);
            }
        }
        let img = iso.apply(&vecs[v3]);
        assert_eq!(img, expect, "pinned image of the long root");
        assert_eq!(root_norm_of(&lat, &img), Some(6));
        assert_eq!(a2_component(&lat, 1, &img), int_vec(&[-4, -2]));
        assert!(!congruent_mod3(
            &a2_component(&lat, 1, &vecs[v3]),
            &a2_component(&lat, 1, &img)
        ));
        found = true;
        break;
    }
    assert!(found, "the fragment involution did not lift");
}
