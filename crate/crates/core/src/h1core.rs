//! The main computation: first Galois cohomology of a reductive group
//! as the orbit set of an affine action.
//!
//! Classes over the fundamental torus are acted on by the small Weyl
//! group from the right: a group element w sends a class to its image
//! under w⁻¹ plus the shift class of w. Each generator therefore
//! becomes an invertible affine map on the cohomology space, and the
//! cohomology set of the group is the set of orbits of those maps on
//! all 2^d points. The group itself may be enormous; only the space
//! needs to be small, which the dimension bound enforces.
//!
//! The right-action composition c(v w) = w⁻¹ c(v) + c(w) is kept
//! exactly as stated; do not flip it to a left action when editing.

use crate::error::{Error, Result};
use crate::f2::{self, F2Space, F2Vector, OrbitPartition, PackedAffineMap};
use crate::mat::inverse_unimodular;
use crate::realform::RealFormSpec;

/// Invertible affine map in cohomology coordinates: x -> linear x + translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineF2Map {
    linear: Vec<F2Vector>,
    translation: F2Vector,
}

impl AffineF2Map {
    pub fn new(linear: Vec<F2Vector>, translation: F2Vector) -> AffineF2Map {
        assert_eq!(linear.len(), translation.len());
        assert!(
            f2::inverse(&linear).is_some(),
            "linear part must be invertible"
        );
        AffineF2Map {
            linear,
            translation,
        }
    }

    pub fn linear(&self) -> &[F2Vector] {
        &self.linear
    }

    pub fn translation(&self) -> &F2Vector {
        &self.translation
    }

    pub fn apply(&self, x: &[u8]) -> F2Vector {
        let mut y = f2::matvec(&self.linear, x);
        f2::xor_into(&mut y, &self.translation);
        y
    }
}

/// Bounds for the orbit computation.
#[derive(Clone, Copy, Debug)]
pub struct H1Options {
    /// Largest allowed dimension of the cohomology space; the orbit
    /// engine enumerates all 2^d points.
    pub dim_bound: usize,
    /// Group-enumeration budget for reporting the small Weyl group
    /// order and for Burnside counting.
    pub order_cutoff: usize,
}

impl Default for H1Options {
    fn default() -> H1Options {
        H1Options {
            dim_bound: 24,
            order_cutoff: 10_000,
        }
    }
}

/// Orbit summary: one canonical (lexicographically least) representative
/// per orbit, in ambient coordinates, orbits sorted by representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisH1Result {
    pub representatives: Vec<F2Vector>,
    pub orbit_sizes: Vec<u128>,
    pub cardinality: u128,
    /// Order of the group generated by the form's generators, when it
    /// was enumerable within the configured cutoff.
    pub w0_order: Option<u128>,
}

/// One affine map per generator: the inverse matrix descended to
/// cohomology coordinates, translated by the generator's shift class.
pub fn build_action(form: &RealFormSpec) -> Result<Vec<AffineF2Map>> {
    let h1 = form.h1_space();
    form.generators()
        .iter()
        .zip(form.shifts())
        .map(|(g, shift)| {
            let inv = inverse_unimodular(g.matrix());
            let linear = h1
                .coord_matrix_of(&inv.mod2())
                .ok_or(Error::NotInvariant)?;
            let translation = h1.coords(shift).expect("shifts are validated members");
            Ok(AffineF2Map::new(linear, translation))
        })
        .collect()
}

/// Full orbit partition of the cohomology space under the generator
/// maps, together with the space itself.
pub fn h1_partition(
    form: &RealFormSpec,
    options: &H1Options,
) -> Result<(F2Space, OrbitPartition)> {
    let h1 = form.h1_space();
    f2::check_dim(h1.dim(), options.dim_bound.min(31))?;
    let maps: Vec<PackedAffineMap> = build_action(form)?
        .iter()
        .map(|m| PackedAffineMap::new(&h1, m.linear(), m.translation()))
        .collect();
    let partition = f2::affine_orbits(&h1, &maps);
    Ok((h1, partition))
}

pub fn h1_group(form: &RealFormSpec) -> Result<GaloisH1Result> {
    h1_group_with(form, &H1Options::default())
}

/// Orbit computation plus a group-order probe. The probe also verifies
/// the shift data is a genuine cocycle whenever the group is small
/// enough to enumerate; an inconsistency is a hard error, while an
/// oversized group only downgrades the order to unknown.
pub fn h1_group_with(form: &RealFormSpec, options: &H1Options) -> Result<GaloisH1Result> {
    let (_, partition) = h1_partition(form, options)?;
    let w0_order = match form.extend_cocycle(options.order_cutoff) {
        Ok(table) => Some(table.len() as u128),
        Err(Error::CutoffExceeded { .. }) => None,
        Err(other) => return Err(other),
    };
    Ok(GaloisH1Result {
        cardinality: partition.orbit_count(),
        representatives: partition.representatives.clone(),
        orbit_sizes: partition.sizes.clone(),
        w0_order,
    })
}

/// Class of a 2-torsion real point of the fundamental torus: its torus
/// class, canonicalized to its orbit representative.
pub fn class_of_real_point(form: &RealFormSpec, point: &[u8]) -> Result<F2Vector> {
    let class = form.fundamental_torus().class_of_point2(point)?;
    let (space, partition) = h1_partition(form, &H1Options::default())?;
    let packed = space
        .packed_of_vector(class.vector())
        .expect("torus classes live in the cohomology space");
    Ok(partition.representatives[partition.orbit_of_packed(packed)].clone())
}

/// Replaces every shift c(g) by g⁻¹ ζ + c(g) + ζ: the conjugate of the
/// action by translation along ζ. Orbit structure translates by ζ, so
/// counts are preserved.
///
/// The base class ζ must lie in the cohomology space.
pub fn twist(form: &RealFormSpec, zeta: &[u8]) -> RealFormSpec {
    let h1 = form.h1_space();
    let zeta = h1
        .canonicalize(zeta)
        .expect("twist base class must lie in the cohomology space");
    let shifts = form
        .generators()
        .iter()
        .zip(form.shifts())
        .map(|(g, shift)| {
            let inv = inverse_unimodular(g.matrix());
            let mut moved = f2::matvec(&inv.mod2(), &zeta);
            f2::xor_into(&mut moved, shift);
            f2::xor_into(&mut moved, &zeta);
            moved
        })
        .collect();
    RealFormSpec::new(
        form.datum().clone(),
        form.sigma_star().clone(),
        form.generators().to_vec(),
        shifts,
        form.label(),
    )
    .expect("twisting preserves validity")
}

/// Independent count of orbits through the fixed-point average over
/// the whole group: orbits = (1/|W|) Σ_w |Fix(w)|, with fixed points of
/// an affine map counted by solving (A + I) x = b.
pub fn burnside_count(form: &RealFormSpec, cutoff: usize) -> Result<u128> {
    let table = form.extend_cocycle(cutoff)?;
    let h1 = form.h1_space();
    let mut total: u128 = 0;
    for (w, shift) in table.iter() {
        let inv = inverse_unimodular(w);
        let linear = h1
            .coord_matrix_of(&inv.mod2())
            .ok_or(Error::NotInvariant)?;
        let translation = h1.coords(shift).expect("table values are members");
        total += f2::affine_fixed_points(&linear, &translation);
    }
    let order = table.len() as u128;
    assert_eq!(total % order, 0, "fixed-point average must be integral");
    Ok(total / order)
}
