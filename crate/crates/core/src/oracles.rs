//! Brute-force cross-checks. Everything here recomputes results the
//! slow, obviously-correct way and is only ever called from tests; the
//! main code paths must not depend on this module.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::Result;
use crate::f2::{self, F2Vector};
use crate::mat::{inverse_unimodular, IntMatrix};
use crate::realform::RealFormSpec;
use crate::zc2lat::{normal_form, InvolutiveLattice};

/// Cohomology size read off the structure theory instead of the
/// kernel/image subquotient: decompose into lines and swap planes,
/// multiply the per-summand sizes 1, 2, 1.
pub fn torus_h1_by_types(lattice: &InvolutiveLattice) -> Result<u128> {
    let report = lattice.decompose()?;
    Ok(1u128 << report.sign)
}

/// Orbit count by full-group enumeration: tabulate the cocycle on every
/// group element, apply every element to every point, and collect the
/// resulting orbit sets. No generator closure, no union-find.
pub fn orbit_count_bruteforce(form: &RealFormSpec, cutoff: usize) -> Result<u128> {
    let table = form.extend_cocycle(cutoff)?;
    let h1 = form.h1_space();
    let maps: Vec<(Vec<F2Vector>, &F2Vector)> = table
        .iter()
        .map(|(w, shift)| (inverse_unimodular(w).mod2(), shift))
        .collect();
    let mut orbits: BTreeSet<BTreeSet<F2Vector>> = BTreeSet::new();
    for point in h1.members() {
        let orbit = maps
            .iter()
            .map(|(inv, shift)| {
                let mut image = f2::matvec(inv, &point);
                f2::xor_into(&mut image, shift);
                h1.canonicalize(&image)
                    .expect("the action preserves the cohomology space")
            })
            .collect();
        orbits.insert(orbit);
    }
    let covered: u128 = orbits.iter().map(|o| o.len() as u128).sum();
    assert_eq!(covered, h1.size(), "orbit sets must partition the space");
    Ok(orbits.len() as u128)
}

/// Product of at most `ops` elementary matrices: transvections with
/// coefficient bounded by 3, swaps, and sign flips. Keeps entry growth
/// tame enough for exact arithmetic downstream.
pub fn random_unimodular(rng: &mut impl Rng, rank: usize, ops: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(rank);
    if rank < 2 {
        return m;
    }
    for _ in 0..rng.gen_range(0..=ops) {
        let i = rng.gen_range(0..rank);
        let mut j = rng.gen_range(0..rank - 1);
        if j >= i {
            j += 1;
        }
        let e = match rng.gen_range(0..4u8) {
            0 | 1 => transvection(rank, i, j, rng.gen_range(-3i64..=3)),
            2 => swap(rank, i, j),
            _ => flip(rank, i),
        };
        m = m.mul(&e);
    }
    m
}

fn transvection(rank: usize, i: usize, j: usize, c: i64) -> IntMatrix {
    IntMatrix::from_fn(rank, rank, |a, b| {
        if a == b {
            1.into()
        } else if (a, b) == (i, j) {
            c.into()
        } else {
            0.into()
        }
    })
}

fn swap(rank: usize, i: usize, j: usize) -> IntMatrix {
    IntMatrix::from_fn(rank, rank, |a, b| {
        let hit = (a, b) == (i, j) || (a, b) == (j, i) || (a == b && a != i && a != j);
        if hit {
            1.into()
        } else {
            0.into()
        }
    })
}

fn flip(rank: usize, i: usize) -> IntMatrix {
    IntMatrix::from_fn(rank, rank, |a, b| {
        if a != b {
            0.into()
        } else if a == i {
            (-1).into()
        } else {
            1.into()
        }
    })
}

/// Random involution with known structure: pick multiplicities fitting
/// in `max_rank`, then hide the block-diagonal normal form behind a
/// random basis change. Returns the lattice and the multiplicities it
/// was built from.
pub fn random_involutive_lattice(
    rng: &mut impl Rng,
    max_rank: usize,
) -> (InvolutiveLattice, (usize, usize, usize)) {
    let target = rng.gen_range(0..=max_rank);
    let (mut trivial, mut sign, mut regular) = (0usize, 0usize, 0usize);
    let mut used = 0usize;
    while used < target {
        match rng.gen_range(0..3u8) {
            0 => {
                trivial += 1;
                used += 1;
            }
            1 => {
                sign += 1;
                used += 1;
            }
            _ if used + 2 <= target => {
                regular += 1;
                used += 2;
            }
            _ => {
                sign += 1;
                used += 1;
            }
        }
    }
    let rank = trivial + sign + 2 * regular;
    let basis = random_unimodular(rng, rank, 20);
    let sigma = basis
        .mul(&normal_form(trivial, sign, regular))
        .mul(&inverse_unimodular(&basis));
    let lattice = InvolutiveLattice::new(sigma).expect("conjugate of an involution");
    (lattice, (trivial, sign, regular))
}
