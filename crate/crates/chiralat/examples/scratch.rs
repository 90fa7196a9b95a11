use chiralat::coxeter::coxeter_graph;
use chiralat::lattice::Lattice;
use chiralat::linalg::{self, Int};
use chiralat::vinberg::{candidates_at_level, check_termination, default_base_point, vinberg_run,
    AcceptedRoot, RunOptions};
use num_rational::BigRational as Rat;
use num_traits::Signed;
use std::time::Instant;

fn main() {
    let name = std::env::args().nth(1).unwrap();
    let max: i64 = std::env::args().nth(2).unwrap().parse().unwrap();
    let lat = Lattice::from_name(&name).unwrap();

    // Accumulate walls up to `max` without any termination checks.
    let p = default_base_point(&lat).unwrap();
    let opts = RunOptions { max_level: Some(0), ..Default::default() };
    let run0 = vinberg_run(&lat, &opts).unwrap();
    let mut accepted: Vec<AcceptedRoot> = run0.roots.clone();
    let mut grid: Vec<(i64, u8, i64)> = Vec::new();
    let mut m = 1i64;
    while m * m <= max {
        grid.push((m * m, 2, m));
        m += 1;
    }
    let mut j = 1i64;
    while 3 * j * j <= max {
        grid.push((3 * j * j, 6, 3 * j));
        j += 1;
    }
    grid.sort();
    for (d, k, m) in grid {
        let t0 = Instant::now();
        let cands = candidates_at_level(&lat, &p, k, &Int::from(m), &accepted);
        let before = accepted.len();
        for v in cands {
            let ok = accepted[before..]
                .iter()
                .all(|w| !linalg::bilinear(&lat.gram, &v, &w.coords).is_positive());
            if ok {
                accepted.push(AcceptedRoot { coords: v, norm: k, level: Rat::from(Int::from(d)) });
            }
        }
        if accepted.len() > before {
            eprintln!("level {d}: +{} walls ({} total), enum {:.2?}", accepted.len() - before,
                accepted.len(), t0.elapsed());
        }
    }
    eprintln!("total {} walls", accepted.len());
    for r in &accepted {
        if r.level > Rat::from(Int::from(40)) {
            eprintln!("  level {:4} norm {} coords {}", r.level, r.norm,
                r.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
        }
    }

    // Profile the termination check phases on the final wall set.
    let vecs: Vec<_> = accepted.iter().map(|r| r.coords.clone()).collect();
    let labels: Vec<String> = (0..vecs.len()).map(|i| format!("w{i}")).collect();
    let t0 = Instant::now();
    let graph = coxeter_graph(&lat, &vecs, &labels).unwrap();
    eprintln!("graph build: {:.2?}", t0.elapsed());
    let t0 = Instant::now();
    let pieces = graph.connected_parabolic_subdiagrams();
    eprintln!("connected parabolic pieces: {} in {:.2?}", pieces.len(), t0.elapsed());
    let t0 = Instant::now();
    let supports = graph.parabolic_supports_of_rank(lat.rank - 2);
    eprintln!("rank-{} supports: {} in {:.2?}", lat.rank - 2, supports.len(), t0.elapsed());
    let t0 = Instant::now();
    let mut seeds = 0usize;
    graph.for_each_elliptic_subset_of_size(lat.rank - 2, |_| {
        seeds += 1;
        true
    });
    eprintln!("elliptic seeds of size {}: {} in {:.2?}", lat.rank - 2, seeds, t0.elapsed());
    let t0 = Instant::now();
    let crit = check_termination(&lat, &graph, &p);
    eprintln!("check_termination: {:?} in {:.2?}", crit, t0.elapsed());
}
