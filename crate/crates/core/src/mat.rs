//! Dense matrices over the integers with exact arithmetic.
//!
//! Everything downstream (eigenlattices, Tate quotients, the three-type
//! decomposition) reduces to Smith normal form, so this module keeps the
//! transform matrices around: `smith` returns unimodular `u`, `v` with
//! `u * a * v = s` diagonal and a divisibility chain on the diagonal.
//! Entries are `BigInt`; no intermediate result is ever rounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Column vector with integer entries.
pub type IntVec = Vec<BigInt>;

/// Row-major matrix of `BigInt` entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must match dimensions");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix::new(rows, cols, data)
    }

    /// Builds from rows of machine integers; rows must be rectangular.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(rows: usize, cols: &[IntVec]) -> Self {
        assert!(cols.iter().all(|c| c.len() == rows), "column length mismatch");
        IntMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..self.cols {
                acc += self.at(i, k) * other.at(k, j);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVec {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (k, entry) in v.iter().enumerate() {
                    acc += self.at(i, k) * entry;
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// Block-diagonal sum; off-diagonal blocks are zero.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.at(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.at(i - self.rows, j - self.cols).clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Entries reduced mod 2 as 0/1 bytes.
    pub fn mod2(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| if self.at(i, j).is_odd() { 1 } else { 0 })
                    .collect()
            })
            .collect()
    }

    /// Columns reduced mod 2 as 0/1 bytes.
    pub fn columns_mod2(&self) -> Vec<Vec<u8>> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| if self.at(i, j).is_odd() { 1 } else { 0 })
                    .collect()
            })
            .collect()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row_i -= q * row_t
    fn row_sub_mul(&mut self, i: usize, t: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.at(i, j) - q * self.at(t, j);
            self.set(i, j, v);
        }
    }

    /// col_j -= q * col_t
    fn col_sub_mul(&mut self, j: usize, t: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.at(i, j) - q * self.at(i, t);
            self.set(i, j, v);
        }
    }

    /// row_t += row_i
    pub(crate) fn row_add(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let v = self.at(t, j) + self.at(i, j);
            self.set(t, j, v);
        }
    }
}

/// Result of `smith`: `u * a * v = s` with `u`, `v` unimodular and `s`
/// diagonal, nonnegative, each diagonal entry dividing the next.
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s.at(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

fn min_abs_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if !s.at(i, j).is_zero() {
                match best {
                    Some((bi, bj)) if s.at(bi, bj).abs() <= s.at(i, j).abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
    }
    best
}

/// Smith normal form with transforms.
///
/// Pivot selection takes the least absolute nonzero entry of the trailing
/// block, so every elimination round either clears the pivot's row and
/// column or strictly shrinks the pivot; termination is immediate.
pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        if s.at(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        let mut dirty = false;
        let pivot = s.at(t, t).clone();
        for i in t + 1..m {
            if !s.at(i, t).is_zero() {
                let q = s.at(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    s.row_sub_mul(i, t, &q);
                    u.row_sub_mul(i, t, &q);
                }
                if !s.at(i, t).is_zero() {
                    dirty = true; // remainder < pivot, next round picks it up
                }
            }
        }
        for j in t + 1..n {
            if !s.at(t, j).is_zero() {
                let q = s.at(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    s.col_sub_mul(j, t, &q);
                    v.col_sub_mul(j, t, &q);
                }
                if !s.at(t, j).is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue;
        }
        // Pivot isolated; enforce the divisibility chain.
        let mut fixed = true;
        'scan: for i in t + 1..m {
            for j in t + 1..n {
                if !(s.at(i, j) % &pivot).is_zero() {
                    s.row_add(t, i);
                    u.row_add(t, i);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }
    Smith { u, s, v }
}

/// Basis of the integer kernel of `a`, as columns. Always saturated.
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    let sm = smith(a);
    let k = a.rows().min(a.cols());
    let cols: Vec<IntVec> = (0..a.cols())
        .filter(|&j| j >= k || sm.s.at(j, j).is_zero())
        .map(|j| sm.v.column(j))
        .collect();
    IntMatrix::from_cols(a.cols(), &cols)
}

/// Basis of the lattice spanned by the columns of `a`, as columns.
///
/// With `u * a * v = s`, the column span equals the span of `u^-1 * s`,
/// whose nonzero columns are independent.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    let sm = smith(a);
    let uinv = inverse_unimodular(&sm.u);
    let cols: Vec<IntVec> = (0..a.rows().min(a.cols()))
        .filter(|&i| !sm.s.at(i, i).is_zero())
        .map(|i| {
            uinv.column(i)
                .into_iter()
                .map(|x| x * sm.s.at(i, i))
                .collect()
        })
        .collect();
    IntMatrix::from_cols(a.rows(), &cols)
}

/// Solves `a * x = b` exactly over the integers (multiple right-hand sides
/// as columns of `b`). Returns `None` when no integral solution exists.
/// Free coordinates are set to zero, so the answer is deterministic.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "right-hand side height mismatch");
    let sm = smith(a);
    let y = sm.u.mul(b);
    let k = a.rows().min(a.cols());
    let mut xp = IntMatrix::zero(a.cols(), b.cols());
    for i in 0..a.rows() {
        let d = if i < k { sm.s.at(i, i).clone() } else { BigInt::zero() };
        for j in 0..b.cols() {
            let yi = y.at(i, j);
            if d.is_zero() {
                if !yi.is_zero() {
                    return None;
                }
            } else {
                let (q, r) = yi.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                xp.set(i, j, q);
            }
        }
    }
    Some(sm.v.mul(&xp))
}

/// True when `a` is square with determinant of absolute value one.
pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.is_square() && smith(a).diagonal().iter().all(|d| d.is_one())
}

/// Inverse of a unimodular matrix. Panics if `a` is not unimodular.
pub fn inverse_unimodular(a: &IntMatrix) -> IntMatrix {
    solve(a, &IntMatrix::identity(a.rows())).expect("matrix must be unimodular")
}

/// Requires `a` square; used by validators before anything else runs.
pub fn require_square(a: &IntMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// Basis of `lat` adapted to the finite-index sublattice spanned by `sub`:
/// returns `(basis, divisors)` where `basis` has the same span as `lat` and
/// `{divisors[i] * basis_i}` is a basis of the span of `sub`.
///
/// `lat` columns must be a lattice basis and `sub` must span a sublattice
/// of the same rank.
pub fn adapted_basis(lat: &IntMatrix, sub: &IntMatrix) -> (IntMatrix, Vec<BigInt>) {
    let coords = solve(lat, sub).expect("sub must lie in the span of lat");
    let sm = smith(&coords);
    let basis = lat.mul(&inverse_unimodular(&sm.u));
    (basis, sm.diagonal())
}
