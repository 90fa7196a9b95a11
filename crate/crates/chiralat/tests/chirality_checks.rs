//! Checks for reflection isometries, discriminant actions, and the chirality
//! classification of the fast lattice families.

use chiralat::chirality::{
    classify_chirality, delta3_sign, discr_action, extend_by_orthogonal_a1, reflection_matrix,
    restrict_to_orthogonal, symmetry_to_isometry, z3_shortcut, Isometry, Verdict,
};
use chiralat::coxeter::coxeter_graph;
use chiralat::discriminant::{discriminant_group, discriminant_group_of_gram};
use chiralat::lattice::Lattice;
use chiralat::linalg::{self, Int};
use chiralat::presets::{labels_for, run_preset};
use chiralat::roots::root_norm_of;
use num_traits::Zero;

type ChiralityOpts = chiralat::chirality::ClassifyOptions;

fn wall_vectors(lat: &Lattice) -> Vec<Vec<Int>> {
    let run = run_preset(lat).expect("preset run");
    run.roots.iter().map(|r| r.coords.clone()).collect()
}

#[test]
fn reflections_are_involutive_isometries_with_expected_delta3() {
    for name in ["U+A2", "-A1+A2", "U+A2+A1"] {
        let lat = Lattice::from_name(name).unwrap();
        let dg = discriminant_group(&lat);
        for v in wall_vectors(&lat) {
            let norm = root_norm_of(&lat, &v).expect("wall is a root");
            let r = reflection_matrix(&lat, &v, false).unwrap();
            assert!(r.is_isometry_of(&lat.gram), "{name}: not an isometry");
            let square = linalg::imat_mul(&r.matrix, &r.matrix);
            assert_eq!(square, linalg::imat_identity(lat.rank), "{name}: not involutive");
            // Reflections in 2-roots act trivially on the discriminant Z/3;
            // reflections in 6-roots negate it.
            let expected = if norm == 2 { 1 } else { -1 };
            assert_eq!(delta3_sign(&dg, &r).unwrap(), expected, "{name}: wrong sign");
        }
    }
}

#[test]
fn anti_reflection_flips_the_delta3_sign() {
    let lat = Lattice::from_name("U+A2").unwrap();
    let dg = discriminant_group(&lat);
    for v in wall_vectors(&lat) {
        let r = reflection_matrix(&lat, &v, false).unwrap();
        let ar = reflection_matrix(&lat, &v, true).unwrap();
        assert!(ar.is_isometry_of(&lat.gram));
        assert_eq!(
            delta3_sign(&dg, &ar).unwrap(),
            -delta3_sign(&dg, &r).unwrap()
        );
    }
}

#[test]
fn negation_reverses_the_discriminant() {
    for name in ["U+A2", "-A1+A2", "U+A2+E8"] {
        let lat = Lattice::from_name(name).unwrap();
        let dg = discriminant_group(&lat);
        let neg = Isometry::neg_identity(lat.rank);
        assert_eq!(delta3_sign(&dg, &neg).unwrap(), -1, "{name}");
        let id = Isometry::identity(lat.rank);
        assert_eq!(delta3_sign(&dg, &id).unwrap(), 1, "{name}");
    }
}

#[test]
fn discr_action_of_identity_fixes_all_generators() {
    let lat = Lattice::from_name("U+A2+A1").unwrap();
    let dg = discriminant_group(&lat);
    let id = Isometry::identity(lat.rank);
    let action = discr_action(&dg, &id);
    for (k, img) in action.iter().enumerate() {
        let mut expected = vec![Int::zero(); dg.invariant_factors.len()];
        expected[k] = Int::from(1) % &dg.invariant_factors[k];
        assert_eq!(img, &expected);
    }
}

#[test]
fn lifted_wall_symmetries_agree_with_the_component_congruence_test() {
    for name in ["U+A2", "-A1+A2", "U+A2+A1"] {
        let lat = Lattice::from_name(name).unwrap();
        let dg = discriminant_group(&lat);
        let run = run_preset(&lat).unwrap();
        let labels = labels_for(&lat, &run);
        let vecs: Vec<Vec<Int>> = run.roots.iter().map(|r| r.coords.clone()).collect();
        let graph = coxeter_graph(&lat, &vecs, &labels).unwrap();
        for perm in graph.automorphisms() {
            let Some(iso) = symmetry_to_isometry(&lat, &vecs, &perm) else {
                continue;
            };
            let exact = delta3_sign(&dg, &iso).unwrap();
            if let Some(fast) = z3_shortcut(&lat, &vecs, &perm) {
                assert_eq!(fast, exact, "{name}: congruence shortcut disagrees");
            }
        }
    }
}

#[test]
fn restriction_to_a_fixed_wall_preserves_the_delta3_sign() {
    // In U+A2+A1 the reflection in one wall fixes every orthogonal wall, so
    // restricting it to the orthogonal complement must keep the sign.
    let lat = Lattice::from_name("U+A2+A1").unwrap();
    let dg = discriminant_group(&lat);
    let walls = wall_vectors(&lat);
    let mut checked = 0usize;
    for v in &walls {
        if root_norm_of(&lat, v) != Some(2) {
            continue;
        }
        for w in &walls {
            if w == v || !linalg::bilinear(&lat.gram, v, w).is_zero() {
                continue;
            }
            let anti = root_norm_of(&lat, w) == Some(2);
            // Compose so the map reverses the discriminant but fixes v.
            let f = reflection_matrix(&lat, w, anti).unwrap();
            if f.apply(v) != *v {
                continue;
            }
            let sign = delta3_sign(&dg, &f).unwrap();
            let (gram_v, f_v) = restrict_to_orthogonal(&lat, &f, v).unwrap();
            let dg_v = discriminant_group_of_gram(&gram_v);
            assert_eq!(delta3_sign(&dg_v, &f_v).unwrap(), sign);
            checked += 1;
        }
    }
    assert!(checked > 0, "no orthogonal wall pairs exercised");
}

#[test]
fn a1_extension_preserves_isometries() {
    let lat = Lattice::from_name("U+A2").unwrap();
    let big = Lattice::from_name("U+A2+A1").unwrap();
    let neg = Isometry::neg_identity(lat.rank);
    let (gram, ext) = extend_by_orthogonal_a1(&lat.gram, &neg);
    assert_eq!(gram, big.gram);
    assert!(ext.is_isometry_of(&big.gram));
    let dg = discriminant_group(&big);
    assert_eq!(delta3_sign(&dg, &ext).unwrap(), -1);
}

fn classify(name: &str) -> chiralat::chirality::ChiralityOutcome {
    let lat = Lattice::from_name(name).unwrap();
    classify_chirality(&lat, &ChiralityOpts::default())
}

#[test]
fn small_families_are_chiral() {
    for name in ["U+A2", "-A1+A2", "U+A2+A1", "U+A2+E8", "-A1+A2+E8"] {
        let out = classify(name);
        assert_eq!(out.verdict, Verdict::Chiral, "{name}: {}", out.reason);
        assert!(out.witness.is_none());
    }
}

#[test]
fn rootless_lattice_is_unknown() {
    let out = classify("U(2)+E6(2)");
    assert_eq!(out.verdict, Verdict::Unknown, "{}", out.reason);
    assert_eq!(out.reason, "empty root system");
}
