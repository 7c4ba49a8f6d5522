//! Real-form data on top of a root datum.
//!
//! A real form enters the computation as three ingredients: an
//! involution of the cocharacter lattice describing the Galois action
//! on a fundamental torus, a set of Weyl elements generating the small
//! Weyl group that acts on that torus, and one cohomology class per
//! generator (the shift, the class of n⁻¹·conjugate(n) for a choice of
//! normalizer representative). The shift is input data: there is no
//! recipe for it in terms of the root datum alone. Compact forms use
//! the negated identity and zero shifts.
//!
//! The involution must leave no root identically zero on the compact
//! cocharacter sublattice; that is what makes the torus fundamental
//! and its centralizer a torus, and everything downstream depends on
//! it.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::f2::{self, F2Space, F2Vector};
use crate::mat::{self, solve, IntMatrix};
use crate::rootdata::{pairing, RootDatum, WeylElement};
use crate::torus::RealTorus;
use crate::zc2lat::{InvolutiveLattice, Sign};

/// Validated input for one real form.
#[derive(Clone, Debug)]
pub struct RealFormSpec {
    datum: RootDatum,
    sigma_star: IntMatrix,
    generators: Vec<WeylElement>,
    shifts: Vec<F2Vector>,
    label: String,
}

/// Shift classes for every element of the small Weyl group, indexed by
/// the element's matrix. Values are canonical representatives in the
/// cohomology space of the fundamental torus.
#[derive(Clone, Debug)]
pub struct CocycleTable {
    entries: BTreeMap<IntMatrix, F2Vector>,
}

impl CocycleTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value_of(&self, element: &IntMatrix) -> Option<&F2Vector> {
        self.entries.get(element)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntMatrix, &F2Vector)> {
        self.entries.iter()
    }
}

impl RealFormSpec {
    /// Builds and validates a real form. Checks, in order: the
    /// involution axiom, stability of the coroot set, fundamentality
    /// (no root vanishes identically on the compact cocharacter
    /// sublattice), commutation of every generator with the involution,
    /// effectiveness (no nonidentity generator acts trivially on that
    /// sublattice), and membership of each shift in the cohomology
    /// space.
    pub fn new(
        datum: RootDatum,
        sigma_star: IntMatrix,
        generators: Vec<WeylElement>,
        shifts: Vec<F2Vector>,
        label: impl Into<String>,
    ) -> Result<RealFormSpec> {
        mat::require_square(&sigma_star)?;
        if sigma_star.rows() != datum.rank() {
            return Err(Error::Shape(format!(
                "involution is {}x{} but the datum has rank {}",
                sigma_star.rows(),
                sigma_star.cols(),
                datum.rank()
            )));
        }
        if !sigma_star.mul(&sigma_star).is_identity() {
            return Err(Error::NotInvolution);
        }
        let stable = datum
            .coroots()
            .iter()
            .all(|c| datum.coroots().contains(&sigma_star.mul_vec(c)));
        if !stable {
            return Err(Error::NotCorootStable);
        }

        let lattice = InvolutiveLattice::new(sigma_star.clone()).expect("checked above");
        let compact_sublattice = lattice.eigenlattice(Sign::Minus);
        for (i, root) in datum.roots().iter().enumerate() {
            let vanishes = (0..compact_sublattice.cols())
                .all(|j| pairing(root, &compact_sublattice.column(j)) == 0.into());
            if vanishes {
                return Err(Error::FundamentalityViolation { root_index: i });
            }
        }

        for (i, g) in generators.iter().enumerate() {
            if g.matrix().mul(&sigma_star) != sigma_star.mul(g.matrix()) {
                return Err(Error::NotCommuting { index: i });
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.matrix().is_identity()
                && g.matrix().mul(&compact_sublattice) == compact_sublattice
            {
                return Err(Error::NotEffective { index: i });
            }
        }

        if shifts.len() != generators.len() {
            return Err(Error::Shape(format!(
                "{} generators but {} shift classes",
                generators.len(),
                shifts.len()
            )));
        }
        let h1 = lattice.tate(1);
        let mut canonical_shifts = Vec::with_capacity(shifts.len());
        for (i, s) in shifts.iter().enumerate() {
            if s.len() != datum.rank() {
                return Err(Error::ShiftOutsideH1 { index: i });
            }
            match h1.canonicalize(s) {
                Some(v) => canonical_shifts.push(v),
                None => return Err(Error::ShiftOutsideH1 { index: i }),
            }
        }

        Ok(RealFormSpec {
            datum,
            sigma_star,
            generators,
            shifts: canonical_shifts,
            label: label.into(),
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn sigma_star(&self) -> &IntMatrix {
        &self.sigma_star
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// Shift classes, one per generator, as canonical representatives.
    pub fn shifts(&self) -> &[F2Vector] {
        &self.shifts
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The fundamental torus: the full cocharacter lattice with the
    /// Galois involution of this form.
    pub fn fundamental_torus(&self) -> RealTorus {
        RealTorus::new(InvolutiveLattice::new(self.sigma_star.clone()).expect("validated"))
    }

    /// Cohomology space of the fundamental torus; the orbit computation
    /// runs inside this space.
    pub fn h1_space(&self) -> F2Space {
        self.fundamental_torus().h1()
    }

    /// Extends the generator shifts to the whole group they generate,
    /// breadth-first. Every product is reached along several paths;
    /// any disagreement between paths means the shifts do not satisfy
    /// the composition rule c(v w) = w⁻¹ c(v) + c(w) and is reported
    /// with the offending element. A table that passes is a genuine
    /// cocycle: agreement on all (element, generator) edges propagates
    /// to arbitrary products by induction on word length.
    pub fn extend_cocycle(&self, cutoff: usize) -> Result<CocycleTable> {
        assert!(cutoff >= 1, "cutoff must allow at least the identity");
        let h1 = self.h1_space();
        let rank = self.datum.rank();
        let gen_data: Vec<(IntMatrix, Vec<Vec<u8>>, &F2Vector)> = self
            .generators
            .iter()
            .zip(&self.shifts)
            .map(|(g, s)| {
                let inv = mat::inverse_unimodular(g.matrix());
                let inv_mod2 = inv.mod2();
                (g.matrix().clone(), inv_mod2, s)
            })
            .collect();

        let mut entries: BTreeMap<IntMatrix, F2Vector> = BTreeMap::new();
        entries.insert(IntMatrix::identity(rank), vec![0u8; rank]);
        let mut frontier = VecDeque::new();
        frontier.push_back(IntMatrix::identity(rank));
        while let Some(v) = frontier.pop_front() {
            let value = entries[&v].clone();
            for (g_matrix, g_inv_mod2, shift) in &gen_data {
                let product = v.mul(g_matrix);
                let mut moved = f2::matvec(g_inv_mod2, &value);
                f2::xor_into(&mut moved, shift);
                let expected = h1
                    .canonicalize(&moved)
                    .expect("cohomology space is stable under the group");
                match entries.get(&product) {
                    None => {
                        if entries.len() >= cutoff {
                            return Err(Error::CutoffExceeded {
                                reached: entries.len(),
                            });
                        }
                        entries.insert(product.clone(), expected);
                        frontier.push_back(product);
                    }
                    Some(existing) => {
                        if *existing != expected {
                            return Err(Error::InconsistentCocycle {
                                element: Box::new(product),
                                left: existing.clone(),
                                right: expected,
                            });
                        }
                    }
                }
            }
        }
        Ok(CocycleTable { entries })
    }
}

/// The compact real form: negated-identity involution, simple
/// reflections as generators, zero shifts.
pub fn compact_form(datum: RootDatum) -> RealFormSpec {
    let rank = datum.rank();
    let sigma_star = IntMatrix::from_fn(rank, rank, |i, j| {
        if i == j {
            (-1).into()
        } else {
            0.into()
        }
    });
    let generators = datum.simple_reflections();
    let shifts = vec![vec![0u8; rank]; generators.len()];
    RealFormSpec::new(datum, sigma_star, generators, shifts, "compact")
        .expect("the compact form of a valid datum always validates")
}

/// Elements of the Weyl group stabilizing the compact cocharacter
/// sublattice of the involution. Each one is checked to commute with
/// the involution; a counterexample would break the theory this
/// computation rests on, so it is surfaced as an error rather than
/// filtered out.
pub fn w0_stabilizer(
    datum: &RootDatum,
    sigma_star: &IntMatrix,
    cutoff: usize,
) -> Result<Vec<WeylElement>> {
    let lattice = InvolutiveLattice::new(sigma_star.clone())?;
    let sub = lattice.eigenlattice(Sign::Minus);
    let mut kept = Vec::new();
    for w in datum.weyl_elements(cutoff)? {
        let image = w.matrix().mul(&sub);
        let stable = match solve(&sub, &image) {
            Some(coords) => mat::is_unimodular(&coords),
            None => false,
        };
        if stable {
            if w.matrix().mul(sigma_star) != sigma_star.mul(w.matrix()) {
                return Err(Error::StabilizerNotCommuting);
            }
            kept.push(w);
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn minus_identity(rank: usize) -> IntMatrix {
        IntMatrix::from_fn(rank, rank, |i, j| {
            if i == j {
                (-1).into()
            } else {
                0.into()
            }
        })
    }

    /// Product of two rank-one simply connected factors. Note the
    /// difference with so(4): there the roots are the sums and
    /// differences of coordinates, and the swap involution would fail
    /// fundamentality because e1 + e2 vanishes on (1, -1).
    fn a1xa1() -> RootDatum {
        RootDatum::new(
            2,
            vec![
                vec![2.into(), 0.into()],
                vec![(-2).into(), 0.into()],
                vec![0.into(), 2.into()],
                vec![0.into(), (-2).into()],
            ],
            vec![
                vec![1.into(), 0.into()],
                vec![(-1).into(), 0.into()],
                vec![0.into(), 1.into()],
                vec![0.into(), (-1).into()],
            ],
            vec![0, 2],
        )
        .unwrap()
    }

    fn swap2() -> IntMatrix {
        IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])
    }

    #[test]
    fn compact_forms_validate_with_full_h1() {
        for (datum, dim) in [(catalog::su(2), 1), (catalog::su(3), 2), (catalog::sp(2), 2)] {
            let form = compact_form(datum);
            assert_eq!(form.h1_space().dim(), dim);
        }
    }

    #[test]
    fn split_involution_on_a1_is_not_fundamental() {
        let err = RealFormSpec::new(
            catalog::su(2),
            IntMatrix::identity(1),
            vec![],
            vec![],
            "a1 split sigma",
        )
        .unwrap_err();
        assert!(matches!(err, Error::FundamentalityViolation { root_index: 0 }));
    }

    #[test]
    fn swap_form_on_a1xa1_validates() {
        let datum = a1xa1();
        let ss = datum.simple_reflections();
        let rotation = WeylElement::new(&datum, ss[0].matrix().mul(ss[1].matrix())).unwrap();
        let form = RealFormSpec::new(
            datum,
            swap2(),
            vec![rotation],
            vec![vec![0, 0]],
            "a1xa1 swap",
        )
        .unwrap();
        assert_eq!(form.h1_space().dim(), 0);
    }

    #[test]
    fn coroot_stability_is_checked() {
        let err = RealFormSpec::new(
            a1xa1(),
            IntMatrix::from_rows(&[vec![1, 1], vec![0, -1]]),
            vec![],
            vec![],
            "skewed",
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotCorootStable));
    }

    #[test]
    fn noncommuting_generator_is_rejected() {
        let datum = a1xa1();
        let s1 = datum.simple_reflections().remove(0);
        let err = RealFormSpec::new(datum, swap2(), vec![s1], vec![vec![0, 0]], "bad")
            .unwrap_err();
        assert!(matches!(err, Error::NotCommuting { index: 0 }));
    }

    #[test]
    fn ineffective_generator_is_rejected() {
        // Rank-two datum with a single root line: the second axis is
        // central, so negating it alone is a valid Weyl element that
        // fixes the compact sublattice pointwise.
        let datum = RootDatum::new(
            2,
            vec![
                vec![2.into(), 0.into()],
                vec![(-2).into(), 0.into()],
            ],
            vec![
                vec![1.into(), 0.into()],
                vec![(-1).into(), 0.into()],
            ],
            vec![0],
        )
        .unwrap();
        let sigma = IntMatrix::from_rows(&[vec![-1, 0], vec![0, 1]]);
        let flip_center = WeylElement::new(&datum, IntMatrix::from_rows(&[vec![1, 0], vec![0, -1]]))
            .unwrap();
        let err = RealFormSpec::new(datum, sigma, vec![flip_center], vec![vec![0, 0]], "bad")
            .unwrap_err();
        assert!(matches!(err, Error::NotEffective { index: 0 }));
    }

    #[test]
    fn shift_must_lie_in_cohomology_space() {
        let datum = a1xa1();
        let ss = datum.simple_reflections();
        let rotation = WeylElement::new(&datum, ss[0].matrix().mul(ss[1].matrix())).unwrap();
        let err = RealFormSpec::new(
            datum,
            swap2(),
            vec![rotation],
            vec![vec![1, 0]],
            "bad shift",
        )
        .unwrap_err();
        assert!(matches!(err, Error::ShiftOutsideH1 { index: 0 }));
    }

    #[test]
    fn stabilizer_of_swap_has_order_two() {
        let datum = a1xa1();
        let w0 = w0_stabilizer(&datum, &swap2(), 100).unwrap();
        assert_eq!(w0.len(), 2);
        let nontrivial = w0.iter().find(|w| !w.matrix().is_identity()).unwrap();
        assert_eq!(nontrivial.matrix(), &minus_identity(2));
    }

    #[test]
    fn stabilizer_of_minus_identity_is_everything() {
        let datum = catalog::su(3);
        assert_eq!(w0_stabilizer(&datum, &minus_identity(2), 100).unwrap().len(), 6);
    }

    #[test]
    fn zero_shifts_extend_to_zero_table() {
        let form = compact_form(catalog::sp(2));
        let table = form.extend_cocycle(1000).unwrap();
        assert_eq!(table.len(), 8);
        assert!(table.iter().all(|(_, v)| f2::is_zero(v)));
    }

    #[test]
    fn order_two_shift_on_a1_is_consistent() {
        // c(s) = 1 extends: the order-two relation gives
        // c(1) = s⁻¹c(s) + c(s) = 1 + 1 = 0.
        let datum = catalog::su(2);
        let gens = datum.simple_reflections();
        let form = RealFormSpec::new(
            datum,
            minus_identity(1),
            gens,
            vec![vec![1]],
            "a1 shifted",
        )
        .unwrap();
        let table = form.extend_cocycle(100).unwrap();
        assert_eq!(table.len(), 2);
        let s = IntMatrix::from_rows(&[vec![-1]]);
        assert_eq!(table.value_of(&s), Some(&vec![1]));
        assert_eq!(
            table.value_of(&IntMatrix::identity(1)),
            Some(&vec![0])
        );
    }

    #[test]
    fn cocycle_law_holds_on_all_pairs() {
        let datum = catalog::su(2);
        let gens = datum.simple_reflections();
        let form =
            RealFormSpec::new(datum, minus_identity(1), gens, vec![vec![1]], "a1 shifted")
                .unwrap();
        let table = form.extend_cocycle(100).unwrap();
        let h1 = form.h1_space();
        for (v, cv) in table.iter() {
            for (w, cw) in table.iter() {
                let vw = v.mul(w);
                let w_inv = mat::inverse_unimodular(w);
                let mut rhs = f2::matvec(&w_inv.mod2(), cv);
                f2::xor_into(&mut rhs, cw);
                let rhs = h1.canonicalize(&rhs).unwrap();
                assert_eq!(table.value_of(&vw), Some(&rhs));
            }
        }
    }

    #[test]
    fn inconsistent_assignment_is_caught() {
        // On the compact A2 form, give the first generator the class of
        // its own coroot line and the second generator zero. Extension
        // must hit a clash.
        let datum = catalog::su(3);
        let gens = datum.simple_reflections();
        let form = RealFormSpec::new(
            datum,
            minus_identity(2),
            gens,
            vec![vec![1, 1], vec![0, 0]],
            "bad a2",
        )
        .unwrap();
        assert!(matches!(
            form.extend_cocycle(1000),
            Err(Error::InconsistentCocycle { .. })
        ));
    }
}
