use chiralat::chirality::symmetry_to_isometry;
use chiralat::coxeter::coxeter_graph;
use chiralat::lattice::Lattice;
use chiralat::linalg::{self, Int, Rat};
use chiralat::presets::reference_walls;
use chiralat::roots::root_norm_of;
use chiralat::vinberg::default_base_point;
use std::collections::BTreeSet;

fn main() {
    let lat = Lattice::from_name("U+A2+2E8").unwrap();
    let walls = reference_walls("U+A2+2E8").unwrap();
    let vecs: Vec<Vec<Int>> = walls.iter().map(|w| w.coords.clone()).collect();
    let labels: Vec<String> = (0..vecs.len()).map(|i| format!("w{i}")).collect();
    let graph = coxeter_graph(&lat, &vecs, &labels).unwrap();
    let p = default_base_point(&lat).unwrap();
    let two_roots: Vec<usize> = (0..vecs.len()).filter(|&i| walls[i].norm == 2).collect();
    let sub_roots: Vec<Vec<Int>> = two_roots.iter().map(|&i| vecs[i].clone()).collect();
    let sixes: Vec<Vec<Int>> = walls.iter().filter(|w| w.norm == 6).map(|w| w.coords.clone()).collect();
    let mut images: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut lifts = 0;
    for perm in graph.subset_automorphisms(&two_roots) {
        let Some(iso) = symmetry_to_isometry(&lat, &sub_roots, &perm) else { continue; };
        lifts += 1;
        for s in &sixes {
            images.insert(iso.apply(s));
        }
    }
    println!("{} lifted symmetries, {} distinct 6-root images", lifts, images.len());
    for v in &images {
        let norm = root_norm_of(&lat, v).unwrap();
        let pv = linalg::bilinear(&lat.gram, &p, v);
        let level = Rat::new(Int::from(2) * &pv * &pv, Int::from(norm as i64));
        let known = vecs.contains(v);
        println!("level {:>5} pv {:>4} known {} {:?}", level.to_string(), pv.to_string(), known, v.iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>());
    }
}
