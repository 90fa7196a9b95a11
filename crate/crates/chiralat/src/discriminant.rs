//! Discriminant group L*/L of a nondegenerate even lattice, computed from the
//! Smith normal form of the Gram matrix, together with the discriminant
//! quadratic form and the induced action of lattice isometries.

use crate::lattice::Lattice;
use crate::linalg::{self, IMat, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The finite abelian group L*/L presented as a direct sum of cyclic groups
/// Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... | d_k (trivial factors dropped).
#[derive(Debug, Clone)]
pub struct DiscriminantGroup {
    /// Invariant factors d_i > 1, each dividing the next.
    pub invariant_factors: Vec<Int>,
    /// For each invariant factor, a rational vector in L* (coordinates in the
    /// lattice basis) whose class generates the corresponding cyclic summand.
    pub generator_lifts: Vec<Vec<Rat>>,
    /// Row transform U with U * G * V = D; used to compute classes.
    u: IMat,
    gram: IMat,
}

/// Element of the discriminant group in invariant-factor coordinates:
/// component i is taken modulo `invariant_factors[i]`.
pub type Class = Vec<Int>;

/// Compute the discriminant group of a lattice via Smith normal form.
pub fn discriminant_group(lat: &Lattice) -> DiscriminantGroup {
    discriminant_group_of_gram(&lat.gram)
}

/// Discriminant group of an arbitrary nondegenerate integer Gram matrix.
pub fn discriminant_group_of_gram(gram: &IMat) -> DiscriminantGroup {
    let (u, d, v) = linalg::smith_normal_form(gram);
    let n = gram.len();
    let mut invariant_factors = Vec::new();
    let mut generator_lifts = Vec::new();
    for i in 0..n {
        let di = d[i][i].abs();
        assert!(!di.is_zero(), "nondegenerate lattice has full-rank Gram");
        if di > Int::one() {
            invariant_factors.push(di.clone());
            // Column i of V, divided by d_i, is a vector x with G x integral
            // of order exactly d_i in L*/L.
            let lift: Vec<Rat> = (0..n)
                .map(|r| Rat::new(v[r][i].clone(), di.clone()))
                .collect();
            generator_lifts.push(lift);
        }
    }
    DiscriminantGroup {
        invariant_factors,
        generator_lifts,
        u,
        gram: gram.clone(),
    }
}

impl DiscriminantGroup {
    /// Group order = product of invariant factors = |det G|.
    pub fn order(&self) -> Int {
        self.invariant_factors
            .iter()
            .fold(Int::one(), |acc, d| acc * d)
    }

    /// Class of a rational vector r in L* (coordinates in the lattice basis).
    /// Panics if r is not in the dual lattice (G r not integral).
    pub fn class_of(&self, r: &[Rat]) -> Class {
        let n = self.gram.len();
        assert_eq!(r.len(), n);
        // G r must be integral for r to lie in L*.
        let gr: Vec<Int> = (0..n)
            .map(|i| {
                let s: Rat = (0..n)
                    .map(|j| Rat::from(self.gram[i][j].clone()) * &r[j])
                    .sum();
                assert!(s.is_integer(), "vector is not in the dual lattice");
                s.to_integer()
            })
            .collect();
        // In SNF coordinates y = U G r, the class is (y_i mod d_i) over the
        // nontrivial factors.
        let y = linalg::imat_vec(&self.u, &gr);
        let n_trivial = n - self.invariant_factors.len();
        self.invariant_factors
            .iter()
            .enumerate()
            .map(|(k, d)| y[n_trivial + k].mod_floor(d))
            .collect()
    }

    /// A rational lift in L* of a class given in invariant-factor coordinates.
    pub fn lift(&self, c: &Class) -> Vec<Rat> {
        let n = self.gram.len();
        let mut out = vec![Rat::zero(); n];
        for (k, coeff) in c.iter().enumerate() {
            for i in 0..n {
                out[i] += Rat::from(coeff.clone()) * &self.generator_lifts[k][i];
            }
        }
        out
    }

    /// Discriminant quadratic form q(x) = x.x mod 2Z, as a rational in [0, 2).
    pub fn qform(&self, c: &Class) -> Rat {
        let r = self.lift(c);
        let n = self.gram.len();
        let val: Rat = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| &r[i] * Rat::from(self.gram[i][j].clone()) * &r[j])
            .sum();
        let two = Rat::from(Int::from(2));
        let q = &val - (&val / &two).floor() * &two;
        q
    }

    /// Negate a class componentwise.
    pub fn neg(&self, c: &Class) -> Class {
        c.iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| (-x).mod_floor(d))
            .collect()
    }

    /// True if every invariant factor is coprime to p except those recorded,
    /// i.e. return the p-primary invariant factors p^a dividing each d_i.
    pub fn primary_part(&self, p: &Int) -> Vec<Int> {
        self.invariant_factors
            .iter()
            .filter_map(|d| {
                let mut rem = d.clone();
                let mut pk = Int::one();
                while (&rem % p).is_zero() {
                    rem /= p;
                    pk *= p;
                }
                (pk > Int::one()).then_some(pk)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{catalog_names, Lattice};
    fn from_name(n: &str) -> Result<Lattice, crate::lattice::LatticeError> {
        Lattice::from_name(n)
    }

    fn factors(name: &str) -> Vec<i64> {
        let lat = from_name(name).unwrap();
        discriminant_group(&lat)
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn small_discriminant_groups() {
        assert_eq!(factors("A2"), vec![3]);
        assert_eq!(factors("U+A2+E8"), vec![3]);
        assert_eq!(factors("-A1+A2"), vec![6]);
        assert_eq!(factors("U+A2+2E8"), vec![3]);
        assert_eq!(factors("U"), Vec::<i64>::new());
        assert_eq!(factors("E8"), Vec::<i64>::new());
    }

    #[test]
    fn two_primary_part_of_u2() {
        let lat = from_name("U(2)").unwrap();
        let dg = discriminant_group(&lat);
        assert_eq!(dg.primary_part(&Int::from(2)), vec![Int::from(2); 2]);
    }

    #[test]
    fn order_matches_det_over_catalog() {
        for name in catalog_names() {
            let lat = from_name(&name).unwrap();
            let dg = discriminant_group(&lat);
            assert_eq!(dg.order(), lat.det().abs(), "{name}");
        }
    }

    #[test]
    fn generator_classes_are_standard_basis() {
        for name in ["-A1+A2", "U(2)+A2+D4", "U+A2+2E8+A1"] {
            let lat = from_name(name).unwrap();
            let dg = discriminant_group(&lat);
            for (k, lift) in dg.generator_lifts.iter().enumerate() {
                let c = dg.class_of(lift);
                for (i, x) in c.iter().enumerate() {
                    let expect = if i == k { Int::one() } else { Int::zero() };
                    assert_eq!(*x, expect, "{name} generator {k}");
                }
            }
        }
    }

    #[test]
    fn qform_on_a2_generator() {
        // discr(A2) = Z/3 with q(generator) = 4/3 mod 2Z (generator is a
        // fundamental weight of squared norm 2/3 or its negative 4/3 class).
        let lat = from_name("A2").unwrap();
        let dg = discriminant_group(&lat);
        let g = dg.generator_lifts[0].clone();
        let q = dg.qform(&dg.class_of(&g));
        let ok = q == Rat::new(Int::from(2), Int::from(3))
            || q == Rat::new(Int::from(4), Int::from(3));
        assert!(ok, "q = {q}");
        // q is invariant under negation of the class.
        assert_eq!(dg.qform(&dg.neg(&dg.class_of(&g))), q);
    }

    #[test]
    fn qform_independent_of_lift() {
        // Adding any lattice vector to a lift leaves q unchanged mod 2Z,
        // because the lattice is even.
        let lat = from_name("-A1+A2+E8").unwrap();
        let dg = discriminant_group(&lat);
        let g = &dg.generator_lifts[0];
        let base = dg.qform(&dg.class_of(g));
        for shift in 0..lat.rank {
            let mut r = g.clone();
            r[shift] += Rat::one();
            assert_eq!(dg.class_of(&r), dg.class_of(g));
            assert_eq!(dg.qform(&dg.class_of(&r)), base);
        }
    }

    #[test]
    fn class_arithmetic_mod_factors() {
        let lat = from_name("-A1+A2").unwrap();
        let dg = discriminant_group(&lat);
        assert_eq!(dg.invariant_factors, vec![Int::from(6)]);
        let g = dg.generator_lifts[0].clone();
        // 6 * generator is the identity class.
        let six: Vec<Rat> = g.iter().map(|x| x * Rat::from(Int::from(6))).collect();
        assert_eq!(dg.class_of(&six), vec![Int::zero()]);
    }
}
