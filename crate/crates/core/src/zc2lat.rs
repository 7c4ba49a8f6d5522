//! Lattices with an involution.
//!
//! A finite-rank free abelian group together with an order-two
//! automorphism decomposes as a direct sum of three indecomposable
//! pieces: rank-one fixed lines (trivial), rank-one negated lines
//! (sign), and rank-two swapped pairs (regular). [`decompose`] finds
//! such a decomposition constructively and verifies it, so the
//! multiplicities it reports are certified rather than inferred.
//!
//! Tate cohomology in degrees 0 and 1 is the kernel-mod-image quotient
//! of the two eigenprojections. Both groups are elementary 2-groups,
//! and [`tate`] hands them back as subquotients of the mod-2 reduction
//! of the lattice: reducing a saturated kernel basis mod 2 is injective
//! on classes, because any kernel element congruent mod 2 to an image
//! element already lies in the image.
//!
//! [`decompose`]: InvolutiveLattice::decompose
//! [`tate`]: InvolutiveLattice::tate

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::f2::F2Space;
use crate::mat::{
    self, image_basis, inverse_unimodular, is_unimodular, kernel, smith, solve, IntMatrix, IntVec,
};

/// Eigenvalue selector for the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Free abelian group of finite rank with an involutive automorphism,
/// stored as the matrix of the involution in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutiveLattice {
    rank: usize,
    sigma: IntMatrix,
}

/// Certified multiplicities of the three indecomposable summand types,
/// together with a basis exhibiting them.
///
/// The columns of `basis_change` list `trivial` fixed vectors, then
/// `sign` negated vectors, then `regular` swapped pairs; conjugating
/// the involution by this matrix yields the block normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub trivial: usize,
    pub sign: usize,
    pub regular: usize,
    pub basis_change: IntMatrix,
}

impl DecompositionReport {
    pub fn multiplicities(&self) -> (usize, usize, usize) {
        (self.trivial, self.sign, self.regular)
    }
}

/// Block normal form: identity, negated identity, then swap blocks.
pub fn normal_form(trivial: usize, sign: usize, regular: usize) -> IntMatrix {
    let n = trivial + sign + 2 * regular;
    let mut m = IntMatrix::zero(n, n);
    for i in 0..trivial {
        m.set(i, i, 1.into());
    }
    for i in trivial..trivial + sign {
        m.set(i, i, (-1).into());
    }
    for k in 0..regular {
        let base = trivial + sign + 2 * k;
        m.set(base, base + 1, 1.into());
        m.set(base + 1, base, 1.into());
    }
    m
}

impl InvolutiveLattice {
    pub fn new(sigma: IntMatrix) -> Result<InvolutiveLattice> {
        mat::require_square(&sigma)?;
        if !sigma.mul(&sigma).is_identity() {
            return Err(Error::NotInvolution);
        }
        Ok(InvolutiveLattice {
            rank: sigma.rows(),
            sigma,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn involution(&self) -> &IntMatrix {
        &self.sigma
    }

    /// Basis (as columns) of the full eigenlattice for the chosen sign.
    /// The result is saturated: it extends to a basis of the lattice.
    pub fn eigenlattice(&self, sign: Sign) -> IntMatrix {
        let one = IntMatrix::identity(self.rank);
        match sign {
            Sign::Plus => kernel(&self.sigma.sub(&one)),
            Sign::Minus => kernel(&self.sigma.add(&one)),
        }
    }

    /// Tate cohomology in degree 0 or 1 as a mod-2 subquotient.
    ///
    /// Degree 0 is fixed vectors modulo norms, degree 1 is negated
    /// vectors modulo twisted norms (images of 1 - sigma).
    pub fn tate(&self, degree: usize) -> F2Space {
        assert!(degree <= 1, "Tate degree must be 0 or 1");
        let one = IntMatrix::identity(self.rank);
        let (knl, img) = match degree {
            0 => (self.eigenlattice(Sign::Plus), self.sigma.add(&one)),
            _ => (self.eigenlattice(Sign::Minus), one.sub(&self.sigma)),
        };
        F2Space::subquotient(self.rank, knl.columns_mod2(), img.columns_mod2())
    }

    /// Direct sum, stacking the two involutions block-diagonally.
    pub fn direct_sum(&self, other: &InvolutiveLattice) -> InvolutiveLattice {
        InvolutiveLattice {
            rank: self.rank + other.rank,
            sigma: self.sigma.block_diag(&other.sigma),
        }
    }

    /// Finds a basis splitting the lattice into trivial, sign, and
    /// regular summands, and certifies it.
    ///
    /// Trivial and sign lines are peeled off one at a time: a trivial
    /// summand exists exactly when some invariant functional takes the
    /// value 1 on a fixed vector, which is read off the Smith form of
    /// the pairing between invariant functionals and the fixed
    /// eigenlattice (and dually for sign lines). What remains is a sum
    /// of regular pairs and is split by halving preimages of a basis of
    /// the norm sublattice. The assembled basis is then checked to be
    /// unimodular and to conjugate the involution into block normal
    /// form; failure of any check is reported as
    /// [`Error::DecompositionFailure`].
    pub fn decompose(&self) -> Result<DecompositionReport> {
        let (fixed, negated, pairs) = split_columns(&self.sigma)?;
        let (p, q, r) = (fixed.len(), negated.len(), pairs.len());
        let mut cols: Vec<IntVec> = fixed;
        cols.extend(negated);
        for (y, sy) in pairs {
            cols.push(y);
            cols.push(sy);
        }
        let basis_change = IntMatrix::from_cols(self.rank, &cols);
        if !is_unimodular(&basis_change) {
            return Err(Error::DecompositionFailure);
        }
        let conjugated = inverse_unimodular(&basis_change)
            .mul(&self.sigma)
            .mul(&basis_change);
        if conjugated != normal_form(p, q, r) {
            return Err(Error::DecompositionFailure);
        }
        // Independent count check through cohomology dimensions.
        if self.tate(0).dim() != p || self.tate(1).dim() != q {
            return Err(Error::DecompositionFailure);
        }
        Ok(DecompositionReport {
            trivial: p,
            sign: q,
            regular: r,
            basis_change,
        })
    }
}

type ColumnGroups = (Vec<IntVec>, Vec<IntVec>, Vec<(IntVec, IntVec)>);

/// Recursive peeling; returns basis columns grouped by summand type,
/// in the coordinates of the current sublattice.
fn split_columns(sigma: &IntMatrix) -> Result<ColumnGroups> {
    let n = sigma.rows();
    if n == 0 {
        return Ok((Vec::new(), Vec::new(), Vec::new()));
    }
    let one = IntMatrix::identity(n);

    if let Some((x, f)) = split_line(sigma, &sigma.sub(&one)) {
        let (mut fixed, negated, pairs) = recurse_on_complement(sigma, &x, &f)?;
        fixed.insert(0, x);
        return Ok((fixed, negated, pairs));
    }
    if let Some((x, f)) = split_line(sigma, &sigma.add(&one)) {
        let (fixed, mut negated, pairs) = recurse_on_complement(sigma, &x, &f)?;
        negated.insert(0, x);
        return Ok((fixed, negated, pairs));
    }

    // No rank-one summand remains: the lattice is a sum of regular
    // pairs. Each basis vector d of the norm sublattice (1 + sigma)L
    // is split as d = y + sigma(y) with the pair (y, sigma(y)) free.
    let plus = sigma.add(&one);
    let norms = image_basis(&plus);
    let anti = kernel(&plus);
    let r = norms.cols();
    if anti.cols() != r || n != 2 * r {
        return Err(Error::DecompositionFailure);
    }
    let halves = solve(&plus, &norms).ok_or(Error::DecompositionFailure)?;
    // Adjusting a preimage y by an anti-fixed vector changes
    // (1 - sigma)y by twice that vector, so only the mod-2 coordinates
    // below are pinned. Any unimodular integer matrix congruent to
    // them produces preimages whose pairs assemble a basis.
    let skew = one.sub(sigma).mul(&halves);
    let coords = solve(&anti, &skew).ok_or(Error::DecompositionFailure)?;
    let lift = unimodular_lift_mod2(&coords.mod2()).ok_or(Error::DecompositionFailure)?;
    let shifted = norms.add(&anti.mul(&lift));
    let two = num_bigint::BigInt::from(2);
    let mut pairs = Vec::with_capacity(r);
    for j in 0..r {
        let mut y = IntVec::with_capacity(n);
        for i in 0..n {
            let (half, rem) = shifted.at(i, j).div_rem(&two);
            if !rem.is_zero() {
                return Err(Error::DecompositionFailure);
            }
            y.push(half);
        }
        let sy = sigma.mul_vec(&y);
        pairs.push((y, sy));
    }
    Ok((Vec::new(), Vec::new(), pairs))
}

/// Looks for a vector in the kernel of `eigen_map` on which some
/// functional with the matching equivariance takes the value 1. Returns
/// the vector and the functional; the lattice then splits as the line
/// through the vector plus the kernel of the functional.
fn split_line(sigma: &IntMatrix, eigen_map: &IntMatrix) -> Option<(IntVec, IntVec)> {
    let vectors = kernel(eigen_map);
    // Functionals with the same equivariance type satisfy the
    // transposed eigenvalue equation.
    let functionals = kernel(&eigen_map.transpose());
    if vectors.cols() == 0 || functionals.cols() == 0 {
        return None;
    }
    let pairing = functionals.transpose().mul(&vectors);
    let sm = smith(&pairing);
    if !sm.diagonal().first().is_some_and(|d| d.is_one()) {
        return None;
    }
    // With u * pairing * v diagonal and leading entry 1, the first
    // transformed functional evaluates to 1 on the first transformed
    // vector.
    let x = vectors.mul_vec(&sm.v.column(0));
    let f = functionals.mul_vec(&sm.u.transpose().column(0));
    debug_assert!(sigma.mul_vec(&x) == x || sigma.mul_vec(&x) == x.iter().map(|a| -a).collect::<Vec<_>>());
    Some((x, f))
}

/// Splits off the line through `x` against the kernel of the functional
/// `f` (which satisfies f(x) = 1), recurses on the kernel, and maps the
/// resulting columns back to ambient coordinates.
fn recurse_on_complement(sigma: &IntMatrix, x: &IntVec, f: &IntVec) -> Result<ColumnGroups> {
    let n = sigma.rows();
    debug_assert!({
        let val: num_bigint::BigInt = f.iter().zip(x).map(|(a, b)| a * b).sum();
        val.is_one()
    });
    let frow = IntMatrix::from_fn(1, n, |_, j| f[j].clone());
    let complement = kernel(&frow);
    let restricted = solve(&complement, &sigma.mul(&complement)).ok_or(Error::DecompositionFailure)?;
    let (fixed, negated, pairs) = split_columns(&restricted)?;
    let up = |w: &IntVec| complement.mul_vec(w);
    Ok((
        fixed.iter().map(&up).collect(),
        negated.iter().map(&up).collect(),
        pairs.iter().map(|(a, b)| (up(a), up(b))).collect(),
    ))
}

/// Unimodular integer matrix congruent mod 2 to the given invertible
/// 0/1 matrix, or `None` if that matrix is singular mod 2.
///
/// Row-reduces over the two-element field while mirroring every
/// elementary step on an integer identity; the mirrored product `a`
/// then satisfies `a * m = 1` mod 2, so the inverse of `a` works.
fn unimodular_lift_mod2(m: &[Vec<u8>]) -> Option<IntMatrix> {
    let n = m.len();
    let mut w: Vec<Vec<u8>> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix must be square");
            row.iter().map(|b| b & 1).collect()
        })
        .collect();
    let mut a = IntMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&i| w[i][col] == 1)?;
        w.swap(col, pivot);
        a.swap_rows(col, pivot);
        let pivot_row = w[col].clone();
        for (i, row) in w.iter_mut().enumerate() {
            if i != col && row[col] == 1 {
                for (entry, p) in row.iter_mut().zip(&pivot_row) {
                    *entry ^= p;
                }
                a.row_add(i, col);
            }
        }
    }
    Some(inverse_unimodular(&a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn lat(rows: &[Vec<i64>]) -> InvolutiveLattice {
        InvolutiveLattice::new(IntMatrix::from_rows(rows)).unwrap()
    }

    fn conjugate(inner: &InvolutiveLattice, g: &[Vec<i64>]) -> InvolutiveLattice {
        let g = IntMatrix::from_rows(g);
        let sigma = g.mul(inner.involution()).mul(&inverse_unimodular(&g));
        InvolutiveLattice::new(sigma).unwrap()
    }

    #[test]
    fn base_types() {
        let split = lat(&[vec![1]]);
        assert_eq!(split.decompose().unwrap().multiplicities(), (1, 0, 0));
        assert_eq!((split.tate(0).dim(), split.tate(1).dim()), (1, 0));

        let sign = lat(&[vec![-1]]);
        assert_eq!(sign.decompose().unwrap().multiplicities(), (0, 1, 0));
        assert_eq!((sign.tate(0).dim(), sign.tate(1).dim()), (0, 1));

        let swap = lat(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.decompose().unwrap().multiplicities(), (0, 0, 1));
        assert_eq!((swap.tate(0).dim(), swap.tate(1).dim()), (0, 0));
    }

    #[test]
    fn rank_zero_lattice() {
        let l = InvolutiveLattice::new(IntMatrix::zero(0, 0)).unwrap();
        assert_eq!(l.decompose().unwrap().multiplicities(), (0, 0, 0));
        assert_eq!(l.tate(1).size(), 1);
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(matches!(
            InvolutiveLattice::new(IntMatrix::from_rows(&[vec![2]])),
            Err(Error::NotInvolution)
        ));
        assert!(matches!(
            InvolutiveLattice::new(IntMatrix::zero(1, 2)),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn decomposition_in_skewed_bases() {
        // Conjugation hides the block structure; the certified report
        // must still recover the multiplicities.
        let mixed = lat(&[vec![1]])
            .direct_sum(&lat(&[vec![-1]]))
            .direct_sum(&lat(&[vec![0, 1], vec![1, 0]]));
        let gs: &[&[Vec<i64>]] = &[
            &[
                vec![1, 1, 0, 2],
                vec![0, 1, 1, 0],
                vec![0, 0, 1, 3],
                vec![0, 0, 0, 1],
            ],
            &[
                vec![1, 0, 0, 0],
                vec![5, 1, 0, 0],
                vec![1, -2, 1, 0],
                vec![0, 7, 3, 1],
            ],
            &[
                vec![2, 1, 0, 0],
                vec![1, 1, 0, 0],
                vec![0, 4, 1, -1],
                vec![1, 0, -1, 2],
            ],
        ];
        for g in gs {
            let skewed = conjugate(&mixed, g);
            let report = skewed.decompose().unwrap();
            assert_eq!(report.multiplicities(), (1, 1, 1));
            assert!(is_unimodular(&report.basis_change));
        }
    }

    #[test]
    fn anti_diagonal_swap_is_regular() {
        // Swap conjugated into a basis where the naive halving of norm
        // preimages would produce a proper sublattice.
        let skewed = conjugate(&lat(&[vec![0, 1], vec![1, 0]]), &[vec![1, 1], vec![0, 1]]);
        assert_eq!(skewed.decompose().unwrap().multiplicities(), (0, 0, 1));
    }

    #[test]
    fn doubled_summands() {
        let ts = lat(&[vec![1]]).direct_sum(&lat(&[vec![-1]]));
        assert_eq!(ts.decompose().unwrap().multiplicities(), (1, 1, 0));

        let sign2 = lat(&[vec![-1]]).direct_sum(&lat(&[vec![-1]]));
        assert_eq!(sign2.tate(1).dim(), 2);
        assert_eq!(sign2.tate(1).size(), 4);

        let swap = lat(&[vec![0, 1], vec![1, 0]]);
        let reg2 = swap.direct_sum(&swap);
        assert_eq!(reg2.decompose().unwrap().multiplicities(), (0, 0, 2));
        assert_eq!(reg2.tate(0).dim(), 0);
        assert_eq!(reg2.tate(1).dim(), 0);
    }

    #[test]
    fn eigenlattices_are_saturated() {
        let l = lat(&[vec![0, 1], vec![1, 0]]);
        let plus = l.eigenlattice(Sign::Plus);
        assert_eq!(plus.cols(), 1);
        // (1, 1) generates the full fixed sublattice; (2, 2) would not.
        assert!(plus.at(0, 0).abs().is_one());
    }
}
