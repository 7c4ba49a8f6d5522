//! Root data and Weyl group machinery.
//!
//! A root datum is stored concretely: the cocharacter side carries all
//! group actions, the character side only enters through the pairing,
//! and both sides are written in dual coordinates so the pairing is the
//! dot product. Weyl elements are lattice automorphisms, not abstract
//! words; the twisted actions downstream need nothing more.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::f2::{self, F2Space, OrbitPartition, PackedAffineMap};
use crate::mat::{self, is_unimodular, IntMatrix, IntVec};

/// Roots in character coordinates, coroots in cocharacter coordinates,
/// index-matched, with a chosen set of simple indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<IntVec>,
    coroots: Vec<IntVec>,
    simple: Vec<usize>,
}

/// Weyl group element as its action on the cocharacter lattice. The
/// optional word lists positions into the simple index set, multiplied
/// left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    matrix: IntMatrix,
    word: Option<Vec<usize>>,
}

impl WeylElement {
    /// Validates that the matrix is a lattice automorphism permuting
    /// the coroot set.
    pub fn new(datum: &RootDatum, matrix: IntMatrix) -> Result<WeylElement> {
        mat::require_square(&matrix)?;
        if matrix.rows() != datum.rank {
            return Err(Error::Shape(format!(
                "matrix is {}x{} but the datum has rank {}",
                matrix.rows(),
                matrix.cols(),
                datum.rank
            )));
        }
        if !is_unimodular(&matrix) {
            return Err(Error::NotUnimodular);
        }
        if !permutes(&datum.coroots, &matrix) {
            return Err(Error::CorootsNotPermuted);
        }
        Ok(WeylElement { matrix, word: None })
    }

    pub fn identity(rank: usize) -> WeylElement {
        WeylElement {
            matrix: IntMatrix::identity(rank),
            word: Some(Vec::new()),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn word(&self) -> Option<&[usize]> {
        self.word.as_deref()
    }
}

/// True when the invertible `map` sends every listed vector to a listed
/// vector; on a finite set that makes it a permutation.
fn permutes(vectors: &[IntVec], map: &IntMatrix) -> bool {
    let set: BTreeSet<&IntVec> = vectors.iter().collect();
    vectors.iter().all(|v| set.contains(&map.mul_vec(v)))
}

pub fn pairing(root: &[BigInt], coroot: &[BigInt]) -> BigInt {
    debug_assert_eq!(root.len(), coroot.len());
    root.iter().zip(coroot).map(|(a, b)| a * b).sum()
}

impl RootDatum {
    /// Validates the root-datum axioms: every root pairs with its
    /// coroot to 2, the list is closed under negation with matched
    /// indices, and every reflection permutes both lists.
    pub fn new(
        rank: usize,
        roots: Vec<IntVec>,
        coroots: Vec<IntVec>,
        simple: Vec<usize>,
    ) -> Result<RootDatum> {
        if roots.len() != coroots.len() {
            return Err(Error::Shape(format!(
                "{} roots but {} coroots",
                roots.len(),
                coroots.len()
            )));
        }
        if let Some(v) = roots.iter().chain(&coroots).find(|v| v.len() != rank) {
            return Err(Error::Shape(format!(
                "vector of length {} in a datum of rank {}",
                v.len(),
                rank
            )));
        }
        let mut distinct = BTreeSet::new();
        if !roots.iter().all(|r| distinct.insert(r)) {
            return Err(Error::Shape("duplicate root".into()));
        }
        for (i, &s) in simple.iter().enumerate() {
            if s >= roots.len() {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    len: roots.len(),
                });
            }
            if simple[..i].contains(&s) {
                return Err(Error::Shape(format!("simple index {s} repeated")));
            }
        }
        let datum = RootDatum {
            rank,
            roots,
            coroots,
            simple,
        };
        for i in 0..datum.roots.len() {
            let value = pairing(&datum.roots[i], &datum.coroots[i]);
            if value != BigInt::from(2) {
                return Err(Error::PairingNotTwo { index: i, value });
            }
        }
        for i in 0..datum.roots.len() {
            let neg_root: IntVec = datum.roots[i].iter().map(|a| -a).collect();
            let neg_coroot: IntVec = datum.coroots[i].iter().map(|a| -a).collect();
            let matched = datum
                .roots
                .iter()
                .zip(&datum.coroots)
                .any(|(r, c)| *r == neg_root && *c == neg_coroot);
            if !matched {
                return Err(Error::UnmatchedNegatives { index: i });
            }
        }
        for i in 0..datum.roots.len() {
            let refl = datum.reflection_matrix(i);
            // The same element acts on characters through the
            // transpose (reflections are involutions, so the inverse
            // transpose is just the transpose).
            if !permutes(&datum.coroots, &refl) || !permutes(&datum.roots, &refl.transpose()) {
                return Err(Error::ReflectionNotClosed { index: i });
            }
        }
        Ok(datum)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[IntVec] {
        &self.roots
    }

    pub fn coroots(&self) -> &[IntVec] {
        &self.coroots
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let root = &self.roots[i];
        let coroot = &self.coroots[i];
        IntMatrix::from_fn(self.rank, self.rank, |k, j| {
            let mut v = -(&coroot[k] * &root[j]);
            if k == j {
                v += 1;
            }
            v
        })
    }

    /// Reflection in the i-th root, acting on cocharacters by
    /// v -> v - <root, v> coroot.
    pub fn reflection(&self, i: usize) -> Result<WeylElement> {
        if i >= self.roots.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.roots.len(),
            });
        }
        let word = self.simple.iter().position(|&s| s == i).map(|p| vec![p]);
        Ok(WeylElement {
            matrix: self.reflection_matrix(i),
            word,
        })
    }

    /// Reflections in the simple roots, in simple-index order.
    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        self.simple
            .iter()
            .map(|&i| self.reflection(i).expect("simple indices are validated"))
            .collect()
    }

    /// The full Weyl group by breadth-first closure of the simple
    /// reflections, sorted by matrix. Fails once more than `cutoff`
    /// distinct elements appear.
    pub fn weyl_elements(&self, cutoff: usize) -> Result<Vec<WeylElement>> {
        assert!(cutoff >= 1, "cutoff must allow at least the identity");
        let gens = self.simple_reflections();
        let mut seen: BTreeMap<IntMatrix, Vec<usize>> = BTreeMap::new();
        seen.insert(IntMatrix::identity(self.rank), Vec::new());
        let mut frontier = std::collections::VecDeque::new();
        frontier.push_back(IntMatrix::identity(self.rank));
        while let Some(current) = frontier.pop_front() {
            let word = seen[&current].clone();
            for (pos, g) in gens.iter().enumerate() {
                let next = current.mul(&g.matrix);
                if !seen.contains_key(&next) {
                    if seen.len() >= cutoff {
                        return Err(Error::CutoffExceeded { reached: seen.len() });
                    }
                    let mut w = word.clone();
                    w.push(pos);
                    seen.insert(next.clone(), w);
                    frontier.push_back(next);
                }
            }
        }
        Ok(seen
            .into_iter()
            .map(|(matrix, word)| WeylElement {
                matrix,
                word: Some(word),
            })
            .collect())
    }
}

/// Orbits of the group generated by `generators` on the classes of
/// `space`, all matrices taken mod 2.
///
/// Representatives are lexicographically least members and orbits are
/// ordered by representative, so the partition does not depend on the
/// order of the generators.
pub fn orbits_mod2(generators: &[WeylElement], space: &F2Space) -> Result<OrbitPartition> {
    f2::check_dim(space.dim(), 31)?;
    let zero = vec![0u8; space.dim()];
    let maps = generators
        .iter()
        .map(|g| {
            let coords = space
                .coord_matrix_of(&g.matrix.mod2())
                .ok_or(Error::NotInvariant)?;
            Ok(PackedAffineMap::new(space, &coords, &zero))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(f2::affine_orbits(space, &maps))
}
