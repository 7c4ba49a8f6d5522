//! Real tori through their cocharacter lattices.
//!
//! A torus defined over the reals is captured by its cocharacter
//! lattice together with the Galois involution: a split line is a fixed
//! line, a compact (anisotropic) line is a negated line, and a line
//! restricted from the complex numbers is a swapped pair. The first
//! cohomology of the torus is the degree-1 Tate quotient of the
//! lattice, its 2-torsion real points are the mod-2 fixed vectors, and
//! the connecting map between them halves the anti-symmetrization of an
//! integer lift. The convention is pinned by the three rank-one cases:
//! cohomology sizes 1, 1, 2 for split, restricted, compact.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::f2::{self, F2Space, F2Vector};
use crate::mat::IntMatrix;
use crate::zc2lat::{InvolutiveLattice, Sign};

/// Real torus, i.e. an involutive cocharacter lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealTorus {
    lattice: InvolutiveLattice,
}

/// Selector for the two canonical subtori.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusPart {
    /// Largest anisotropic subtorus: the negated eigenlattice.
    Compact,
    /// Largest split subtorus: the fixed eigenlattice.
    Split,
}

/// Cohomology class of a real torus, held by its canonical mod-2
/// representative inside the degree-1 Tate space of the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusClass {
    parent: RealTorus,
    vector: F2Vector,
}

impl TorusClass {
    pub fn parent(&self) -> &RealTorus {
        &self.parent
    }

    pub fn vector(&self) -> &F2Vector {
        &self.vector
    }

    pub fn is_trivial(&self) -> bool {
        f2::is_zero(&self.vector)
    }
}

/// Sizes reported by [`RealTorus::compact_intersection_counts`]: the
/// 2-torsion count of the compact part, the size of its overlap with
/// the split part's 2-torsion, and the cohomology size. The quotient of
/// the first two always equals the third.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompactIntersectionCounts {
    pub compact_points2: u128,
    pub intersection: u128,
    pub h1: u128,
}

impl RealTorus {
    pub fn new(lattice: InvolutiveLattice) -> RealTorus {
        RealTorus { lattice }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &InvolutiveLattice {
        &self.lattice
    }

    /// Elements of order dividing 2 in the real points: the fixed
    /// subspace of the involution acting mod 2.
    pub fn points2(&self) -> F2Space {
        let n = self.rank();
        let one = IntMatrix::identity(n);
        let gens = f2::nullspace(n, &self.lattice.involution().add(&one).mod2());
        F2Space::subspace(n, gens)
    }

    /// First cohomology of the torus as a mod-2 quotient space.
    pub fn h1(&self) -> F2Space {
        self.lattice.tate(1)
    }

    /// Connecting map from 2-torsion points to cohomology: the class of
    /// (x - sigma(x))/2 for any integer lift of the point. Changing the
    /// lift moves the numerator by twice a lattice vector, which lands
    /// in the quotient part, so the class is lift-independent.
    pub fn class_of_point2(&self, x: &[u8]) -> Result<TorusClass> {
        let lift: Vec<BigInt> = check_point2(self, x)?;
        let image = self.lattice.involution().mul_vec(&lift);
        let halved: F2Vector = lift
            .iter()
            .zip(&image)
            .map(|(a, b)| {
                let diff = a - b;
                debug_assert!(!diff.bit(0), "difference of a 2-point and its image is even");
                u8::from((diff >> 1u32).bit(0))
            })
            .collect();
        let vector = self
            .h1()
            .canonicalize(&halved)
            .expect("halved difference lies in the anti-fixed kernel");
        Ok(TorusClass {
            parent: self.clone(),
            vector,
        })
    }

    /// The compact or split subtorus, together with the matrix
    /// embedding its cocharacter lattice into this one.
    pub fn part(&self, kind: TorusPart) -> (RealTorus, IntMatrix) {
        let (sign, diag) = match kind {
            TorusPart::Compact => (Sign::Minus, -1),
            TorusPart::Split => (Sign::Plus, 1),
        };
        let inclusion = self.lattice.eigenlattice(sign);
        let k = inclusion.cols();
        let sigma = IntMatrix::from_fn(k, k, |i, j| if i == j { diag.into() } else { 0.into() });
        let sub = InvolutiveLattice::new(sigma).expect("scalar matrix is an involution");
        (RealTorus::new(sub), inclusion)
    }

    /// Pushes a 2-torsion point of the compact part into the torus and
    /// takes its class. Ranging over all such points hits every class.
    pub fn compact_class(&self, x: &[u8]) -> Result<TorusClass> {
        let (compact, inclusion) = self.part(TorusPart::Compact);
        check_point2(&compact, x)?;
        let ambient: F2Vector = f2::matvec(&inclusion.mod2(), x);
        self.class_of_point2(&ambient)
    }

    /// Mod-2 image of the 2-torsion of the chosen part inside the
    /// 2-torsion of the torus. The eigenlattice basis is saturated, so
    /// the columns stay independent mod 2.
    pub fn part_points2_image(&self, kind: TorusPart) -> F2Space {
        let (_, inclusion) = self.part(kind);
        F2Space::subspace(self.rank(), inclusion.columns_mod2())
    }

    /// Size bookkeeping for the compact and split 2-torsion: the
    /// compact count divided by the overlap equals the cohomology size.
    pub fn compact_intersection_counts(&self) -> CompactIntersectionCounts {
        let compact = self.part_points2_image(TorusPart::Compact);
        let split = self.part_points2_image(TorusPart::Split);
        let overlap = f2::intersect(self.rank(), compact.span(), split.span());
        let counts = CompactIntersectionCounts {
            compact_points2: compact.size(),
            intersection: 1u128 << overlap.dim(),
            h1: self.h1().size(),
        };
        assert_eq!(
            counts.compact_points2 / counts.intersection * counts.intersection,
            counts.compact_points2
        );
        assert_eq!(counts.compact_points2 / counts.intersection, counts.h1);
        counts
    }

    /// Number of 2-torsion points with trivial class, by enumeration.
    pub fn class_kernel_size(&self) -> u128 {
        let pts = self.points2();
        pts.members()
            .filter(|x| {
                self.class_of_point2(x)
                    .expect("member of points2 is a 2-point")
                    .is_trivial()
            })
            .count() as u128
    }
}

fn check_point2(torus: &RealTorus, x: &[u8]) -> Result<Vec<BigInt>> {
    if x.len() != torus.rank() || !torus.points2().contains(x) {
        return Err(Error::NotAPoint2);
    }
    Ok(x.iter().map(|&b| BigInt::from(b & 1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::IntMatrix;

    fn torus(rows: &[Vec<i64>]) -> RealTorus {
        RealTorus::new(InvolutiveLattice::new(IntMatrix::from_rows(rows)).unwrap())
    }

    fn split() -> RealTorus {
        torus(&[vec![1]])
    }

    fn compact() -> RealTorus {
        torus(&[vec![-1]])
    }

    fn restricted() -> RealTorus {
        torus(&[vec![0, 1], vec![1, 0]])
    }

    #[test]
    fn two_torsion_of_base_types() {
        assert_eq!(split().points2().size(), 2);
        assert_eq!(compact().points2().size(), 2);
        let r = restricted().points2();
        assert_eq!(r.size(), 2);
        assert_eq!(r.basis(), &[vec![1, 1]]);
    }

    #[test]
    fn cohomology_of_base_types() {
        assert_eq!(split().h1().size(), 1);
        assert_eq!(restricted().h1().size(), 1);
        assert_eq!(compact().h1().size(), 2);
    }

    #[test]
    fn connecting_map_on_base_types() {
        assert!(split().class_of_point2(&[1]).unwrap().is_trivial());
        assert!(!compact().class_of_point2(&[1]).unwrap().is_trivial());
        assert!(restricted().class_of_point2(&[1, 1]).unwrap().is_trivial());
    }

    #[test]
    fn rejects_non_torsion_point() {
        assert!(matches!(
            restricted().class_of_point2(&[1, 0]),
            Err(Error::NotAPoint2)
        ));
        assert!(matches!(
            compact().class_of_point2(&[1, 1]),
            Err(Error::NotAPoint2)
        ));
    }

    #[test]
    fn class_is_lift_independent() {
        // Recompute the connecting map with a lift shifted by twice a
        // lattice vector; the class must not move.
        let t = compact();
        let class = t.class_of_point2(&[1]).unwrap();
        let shifted_lift = BigInt::from(3); // 1 + 2*1
        let sigma_image = t.lattice().involution().mul_vec(std::slice::from_ref(&shifted_lift));
        let halved: BigInt = (&shifted_lift - &sigma_image[0]) >> 1u32;
        let vector = t
            .h1()
            .canonicalize(&[u8::from(halved.bit(0))])
            .unwrap();
        assert_eq!(&vector, class.vector());
    }

    #[test]
    fn parts_of_base_types() {
        let (c, _) = restricted().part(TorusPart::Compact);
        let (s, _) = restricted().part(TorusPart::Split);
        assert_eq!((c.rank(), s.rank()), (1, 1));
        assert_eq!(compact().part(TorusPart::Split).0.rank(), 0);
        assert_eq!(split().part(TorusPart::Compact).0.rank(), 0);
    }

    #[test]
    fn compact_classes_cover_cohomology() {
        assert!(!compact().compact_class(&[1]).unwrap().is_trivial());
        assert!(compact().compact_class(&[0]).unwrap().is_trivial());

        // Fixed line plus negated line: the negated generator carries
        // the nontrivial class.
        let t = torus(&[vec![1, 0], vec![0, -1]]);
        assert!(!t.compact_class(&[1]).unwrap().is_trivial());
        assert_eq!(t.h1().size(), 2);
    }

    #[test]
    fn intersection_counts_match_known_values() {
        let counts = |t: &RealTorus| {
            let c = t.compact_intersection_counts();
            (c.compact_points2, c.intersection, c.h1)
        };
        assert_eq!(counts(&restricted()), (2, 2, 1));
        assert_eq!(counts(&compact()), (2, 1, 2));
        assert_eq!(counts(&split()), (1, 1, 1));
    }

    #[test]
    fn kernel_of_connecting_map_is_split_image() {
        for t in [split(), compact(), restricted(), torus(&[vec![1, 0], vec![0, -1]])] {
            let split_image = t.part_points2_image(TorusPart::Split);
            assert_eq!(t.class_kernel_size(), split_image.size());
        }
    }

    #[test]
    fn compact_two_torsion_bijects_onto_cohomology() {
        // Negated line plus swapped pair: classes of the compact
        // 2-torsion are pairwise distinct and exhaust the cohomology.
        let t = torus(&[vec![-1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        let (c, _) = t.part(TorusPart::Compact);
        let mut seen = std::collections::BTreeSet::new();
        for x in c.points2().members() {
            seen.insert(t.compact_class(&x).unwrap().vector().clone());
        }
        assert_eq!(seen.len() as u128, t.h1().size());
    }
}
