//! Root vectors of even lattices: recognition of 2-roots and 6-roots, short
//! vector enumeration, and extraction of a simple (indecomposable) root basis
//! with respect to a linear functional.

use crate::enumerate::enumerate_ellipsoid;
use crate::lattice::{Lattice, Vector};
use crate::linalg::{self, IMat, Int, Rat};
use num_integer::Integer;
use num_traits::Zero;
use std::collections::HashSet;

/// Norm of `v` if it is a root of the even lattice: 2, or 6 when additionally
/// v has inner product divisible by 3 with every lattice vector.  Roots are
/// exactly the primitive vectors whose reflections preserve the lattice.
pub fn root_norm_of(lat: &Lattice, v: &[Int]) -> Option<u8> {
    let norm = lat.norm(v);
    if norm == Int::from(2) {
        return Some(2);
    }
    if norm == Int::from(6) {
        let three = Int::from(3);
        let gv_div_3 = lat
            .gram
            .iter()
            .all(|row| linalg::dot(row, v).mod_floor(&three).is_zero());
        if gv_div_3 {
            return Some(6);
        }
    }
    None
}

pub fn is_root(lat: &Lattice, v: &[Int]) -> bool {
    root_norm_of(lat, v).is_some()
}

/// All vectors of squared norm exactly `norm` in a positive definite integer
/// Gram matrix, in lexicographic coordinate order.
pub fn vectors_of_norm(gram: &IMat, norm: &Int) -> Vec<Vector> {
    let n = gram.len();
    let g = linalg::imat_to_rmat(gram);
    let center = vec![Rat::zero(); n];
    let radius2 = Rat::from(norm.clone());
    enumerate_ellipsoid(&g, &center, &radius2, &[])
        .into_iter()
        .filter(|v| &linalg::bilinear(gram, v, v) == norm)
        .collect()
}

/// Gram matrix of the sublattice spanned by the given column vectors.
pub fn gram_restrict(gram: &IMat, basis: &[Vector]) -> IMat {
    basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|w| linalg::bilinear(gram, u, w))
                .collect()
        })
        .collect()
}

/// Map coordinates in a sublattice basis back to ambient coordinates.
pub fn from_basis_coords(basis: &[Vector], y: &[Int], rank: usize) -> Vector {
    let mut out = vec![Int::zero(); rank];
    for (col, coeff) in basis.iter().zip(y) {
        for (o, c) in out.iter_mut().zip(col) {
            *o += coeff * c;
        }
    }
    out
}

/// All roots orthogonal to `p` (a vector of negative squared norm), i.e. the
/// roots of the positive definite lattice p-perp intersect L.
pub fn roots_orthogonal_to(lat: &Lattice, p: &[Int]) -> Vec<Vector> {
    let q = linalg::imat_vec(&lat.gram, p);
    let (_, _, kernel) = linalg::functional_kernel(&q);
    let kg = gram_restrict(&lat.gram, &kernel);
    let g = linalg::imat_to_rmat(&kg);
    let center = vec![Rat::zero(); kernel.len()];
    let radius2 = Rat::from(Int::from(6));
    let mut out: Vec<Vector> = enumerate_ellipsoid(&g, &center, &radius2, &[])
        .into_iter()
        .map(|y| from_basis_coords(&kernel, &y, lat.rank))
        .filter(|v| is_root(lat, v))
        .collect();
    out.sort();
    out
}

/// Positive roots with respect to a functional f (those with f . v < 0) that
/// are indecomposable: not the sum of two positive roots from the same set.
/// The functional must be nonzero on every root in the input.
pub fn simple_root_basis(lat: &Lattice, roots: &[Vector], functional: &[Int]) -> Vec<Vector> {
    let positive: Vec<&Vector> = roots
        .iter()
        .filter(|v| {
            let s = linalg::dot(functional, v);
            assert!(!s.is_zero(), "functional vanishes on a root");
            s < Int::zero()
        })
        .collect();
    let pos_set: HashSet<&Vector> = positive.iter().copied().collect();
    positive
        .iter()
        .filter(|v| {
            !positive.iter().any(|a| {
                if a == *v {
                    return false;
                }
                let diff: Vector = v.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                pos_set.contains(&diff) && is_root(lat, &diff)
            })
        })
        .map(|v| (*v).clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::vec_i64;
    use crate::linalg::rmat_inverse;

    #[test]
    fn e8_has_240_roots() {
        let e8 = Lattice::from_name("E8").unwrap();
        assert_eq!(vectors_of_norm(&e8.gram, &Int::from(2)).len(), 240);
    }

    #[test]
    fn a2_has_6_roots_and_d4_has_24() {
        let a2 = Lattice::from_name("A2").unwrap();
        assert_eq!(vectors_of_norm(&a2.gram, &Int::from(2)).len(), 6);
        let d4 = Lattice::from_name("D4").unwrap();
        assert_eq!(vectors_of_norm(&d4.gram, &Int::from(2)).len(), 24);
    }

    #[test]
    fn six_root_divisibility() {
        // In <6> the generator is a 6-root; in A1+A1 the vector (1,1) has
        // norm 4 and the norm-6 vectors of A2(3)... use diag(6): generator ok.
        let l6 = Lattice::from_name("<6>").unwrap();
        assert_eq!(root_norm_of(&l6, &vec_i64(&[1])), Some(6));
        // In diag(2,4), (1,1) has norm 6 but inner product with e2 is 4,
        // not divisible by 3, so it is not a 6-root.
        let l = Lattice::from_name("<2>+<4>").unwrap();
        assert_eq!(l.norm(&vec_i64(&[1, 1])), Int::from(6));
        assert_eq!(root_norm_of(&l, &vec_i64(&[1, 1])), None);
        assert_eq!(root_norm_of(&l, &vec_i64(&[1, 0])), Some(2));
    }

    #[test]
    fn orthogonal_roots_in_hyperbolic_lattice() {
        // In U+A2 with p = e - f (norm -2), the orthogonal roots are the six
        // A2 roots together with +/-(e + f).
        let lat = Lattice::from_name("U+A2").unwrap();
        let p = vec_i64(&[1, -1, 0, 0]);
        assert_eq!(lat.norm(&p), Int::from(-2));
        // Eight 2-roots (+/-(e + f) and the six A2 roots) plus the six
        // 6-roots of the A2 summand, which form a G2 system with them.
        let roots = roots_orthogonal_to(&lat, &p);
        assert_eq!(roots.len(), 14);
        assert!(roots.contains(&vec_i64(&[1, 1, 0, 0])));
        assert!(roots.contains(&vec_i64(&[0, 0, 0, 1])));
        assert!(roots.contains(&vec_i64(&[0, 0, 1, -1])));
        assert_eq!(root_norm_of(&lat, &vec_i64(&[0, 0, 1, -1])), Some(6));
    }

    #[test]
    fn simple_basis_of_a2_summand() {
        // All roots of A2 (2-roots and 6-roots) form a G2 system whose simple
        // basis is one short root and one long root.
        let a2 = Lattice::from_name("A2").unwrap();
        let g = linalg::imat_to_rmat(&a2.gram);
        let roots: Vec<Vector> = enumerate_ellipsoid(
            &g,
            &[Rat::zero(), Rat::zero()],
            &Rat::from(Int::from(6)),
            &[],
        )
        .into_iter()
        .filter(|v| is_root(&a2, v))
        .collect();
        assert_eq!(roots.len(), 12);
        let f = vec_i64(&[-2, -1]);
        let simple = simple_root_basis(&a2, &roots, &f);
        assert_eq!(simple.len(), 2);
        assert!(simple.contains(&vec_i64(&[0, 1])));
        assert!(simple.contains(&vec_i64(&[1, -1])));
    }

    #[test]
    fn simple_basis_of_e8_has_8_roots() {
        let e8 = Lattice::from_name("E8").unwrap();
        let roots = vectors_of_norm(&e8.gram, &Int::from(2));
        // Generic functional separating all roots: powers of a large base.
        let big = Int::from(7);
        let mut f = Vec::new();
        let mut acc = Int::from(1);
        for _ in 0..8 {
            f.push(acc.clone());
            acc *= &big;
        }
        let simple = simple_root_basis(&e8, &roots, &f);
        assert_eq!(simple.len(), 8);
        // Simple roots pairwise meet at angle >= 90 degrees.
        for a in &simple {
            for b in &simple {
                if a != b {
                    assert!(linalg::bilinear(&e8.gram, a, b) <= Int::zero());
                }
            }
        }
    }

    /// Deterministic linear congruential generator for oracle case sampling.
    struct Lcg(u64);
    impl Lcg {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            self.0 >> 33
        }
        fn pick(&mut self, lo: i64, hi: i64) -> i64 {
            lo + (self.next() % ((hi - lo + 1) as u64)) as i64
        }
    }

    /// Brute-force ellipsoid points over a provably covering integer box.
    fn box_oracle(gram: &IMat, radius2: &Int) -> Vec<Vector> {
        let n = gram.len();
        let ginv = rmat_inverse(&linalg::imat_to_rmat(gram)).unwrap();
        let bounds: Vec<i64> = (0..n)
            .map(|i| {
                let b2 = &ginv[i][i] * Rat::from(radius2.clone());
                i64::try_from(&linalg::rat_sqrt_floor(&b2)).unwrap() + 1
            })
            .collect();
        // Exponential in the box size; callers skip oversized draws.
        if bounds.iter().map(|&b| 2 * b + 1).product::<i64>() > 200_000 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        fn rec(
            gram: &IMat,
            radius2: &Int,
            bounds: &[i64],
            x: &mut Vec<i64>,
            i: usize,
            out: &mut Vec<Vector>,
        ) {
            if i == bounds.len() {
                let v = vec_i64(x);
                if &linalg::bilinear(gram, &v, &v) <= radius2 {
                    out.push(v);
                }
                return;
            }
            for m in -bounds[i]..=bounds[i] {
                x[i] = m;
                rec(gram, radius2, bounds, x, i + 1, out);
            }
        }
        rec(gram, radius2, &bounds, &mut x, 0, &mut out);
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_box_oracle() {
        let mut rng = Lcg(0x5eed);
        let mut cases = 0;
        while cases < 60 {
            let n = rng.pick(1, 4) as usize;
            let b: IMat = (0..n)
                .map(|_| (0..n).map(|_| Int::from(rng.pick(-2, 2))).collect())
                .collect();
            // B^T B is positive semidefinite; keep only nonsingular draws.
            let bt = linalg::imat_transpose(&b);
            let g = linalg::imat_mul(&bt, &b);
            if linalg::imat_det(&g).is_zero() {
                continue;
            }
            let target = Int::from(rng.pick(1, 8));
            let expected = box_oracle(&g, &target);
            if expected.is_empty() {
                continue;
            }
            let center = vec![Rat::zero(); n];
            let got = enumerate_ellipsoid(
                &linalg::imat_to_rmat(&g),
                &center,
                &Rat::from(target.clone()),
                &[],
            );
            assert_eq!(got, expected, "case {cases} gram {g:?} target {target}");
            cases += 1;
        }
    }

    #[test]
    fn constrained_enumeration_matches_filtered_oracle() {
        let mut rng = Lcg(0xfeed);
        let mut cases = 0;
        while cases < 30 {
            let n = rng.pick(2, 4) as usize;
            let b: IMat = (0..n)
                .map(|_| (0..n).map(|_| Int::from(rng.pick(-2, 2))).collect())
                .collect();
            let g = linalg::imat_mul(&linalg::imat_transpose(&b), &b);
            if linalg::imat_det(&g).is_zero() {
                continue;
            }
            let target = Int::from(rng.pick(2, 8));
            let all = box_oracle(&g, &target);
            if all.is_empty() {
                continue;
            }
            let a: Vec<i64> = (0..n).map(|_| rng.pick(-3, 3)).collect();
            let bound = rng.pick(-2, 2);
            let expected: Vec<Vector> = all
                .into_iter()
                .filter(|v| {
                    let s: i64 = v
                        .iter()
                        .zip(&a)
                        .map(|(x, &c)| i64::try_from(x).unwrap() * c)
                        .sum();
                    s <= bound
                })
                .collect();
            let cons = crate::enumerate::LinearConstraint {
                a: a.iter().map(|&c| Rat::from(Int::from(c))).collect(),
                bound: Rat::from(Int::from(bound)),
            };
            let got = enumerate_ellipsoid(
                &linalg::imat_to_rmat(&g),
                &vec![Rat::zero(); n],
                &Rat::from(target.clone()),
                &[cons],
            );
            assert_eq!(got, expected, "case {cases}");
            cases += 1;
        }
    }
}
