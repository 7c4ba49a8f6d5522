//! Linear algebra over the two-element field.
//!
//! The central type is [`F2Space`], a subquotient V/U of the mod-2 ambient
//! space: V and U are row-reduced spans, a class is the coset of a member
//! of V, and every class owns one canonical representative, the unique
//! coset member vanishing on all pivot columns of U. That representative
//! is also the lexicographically least 0/1 vector of the coset, which
//! pins down all reported output independently of basis choices.
//!
//! Orbit enumeration packs class coordinates into machine words with the
//! first basis coordinate in the most significant bit, so integer order on
//! packed points coincides with lexicographic order on canonical
//! representatives.

use crate::error::{Error, Result};

/// Mod-2 vector with 0/1 entries.
pub type F2Vector = Vec<u8>;

pub fn xor_into(acc: &mut [u8], v: &[u8]) {
    debug_assert_eq!(acc.len(), v.len());
    for (a, b) in acc.iter_mut().zip(v) {
        *a ^= b & 1;
    }
}

pub fn is_zero(v: &[u8]) -> bool {
    v.iter().all(|&b| b & 1 == 0)
}

pub fn matvec(m: &[Vec<u8>], v: &[u8]) -> F2Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u8, |acc, (a, b)| acc ^ (a & b & 1))
        })
        .collect()
}

/// Row-reduced span: rows in reduced echelon form, strictly increasing
/// pivots, zero rows dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    width: usize,
    rows: Vec<F2Vector>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn new(width: usize, gens: impl IntoIterator<Item = F2Vector>) -> Rref {
        let mut rows: Vec<F2Vector> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for g in gens {
            assert_eq!(g.len(), width, "generator width mismatch");
            let mut v: F2Vector = g.iter().map(|b| b & 1).collect();
            for (row, &p) in rows.iter().zip(&pivots) {
                if v[p] == 1 {
                    xor_into(&mut v, row);
                }
            }
            if let Some(p) = v.iter().position(|&b| b == 1) {
                for (row, &q) in rows.iter_mut().zip(&pivots) {
                    let _ = q;
                    if row[p] == 1 {
                        xor_into(row, &v);
                    }
                }
                let at = pivots.iter().position(|&q| q > p).unwrap_or(pivots.len());
                rows.insert(at, v);
                pivots.insert(at, p);
            }
        }
        Rref { width, rows, pivots }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Clears the pivot coordinates of `v` in place.
    pub fn reduce(&self, v: &mut F2Vector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] == 1 {
                xor_into(v, row);
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w: F2Vector = v.iter().map(|b| b & 1).collect();
        self.reduce(&mut w);
        is_zero(&w)
    }
}

/// Subquotient of the ambient mod-2 space, with one canonical 0/1
/// representative per class and an ordered representative basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Space {
    ambient: usize,
    span: Rref,
    modsub: Rref,
    basis: Vec<F2Vector>,
    basis_pivots: Vec<usize>,
}

impl F2Space {
    /// V/U from generators of V and of U; U must lie inside V.
    pub fn subquotient(
        ambient: usize,
        span_gens: Vec<F2Vector>,
        mod_gens: Vec<F2Vector>,
    ) -> F2Space {
        let span = Rref::new(ambient, span_gens);
        let modsub = Rref::new(ambient, mod_gens);
        for row in modsub.rows() {
            assert!(span.contains(row), "quotient subspace must lie in the span");
        }
        // Canonical representatives form a subspace: reduction by the
        // U-pivots is linear, so reduce the V-basis and re-echelonize.
        let canon = Rref::new(
            ambient,
            span.rows().iter().map(|r| {
                let mut v = r.clone();
                modsub.reduce(&mut v);
                v
            }),
        );
        assert_eq!(canon.dim(), span.dim() - modsub.dim());
        let basis = canon.rows().to_vec();
        let basis_pivots = canon.pivots().to_vec();
        F2Space {
            ambient,
            span,
            modsub,
            basis,
            basis_pivots,
        }
    }

    pub fn subspace(ambient: usize, span_gens: Vec<F2Vector>) -> F2Space {
        F2Space::subquotient(ambient, span_gens, Vec::new())
    }

    pub fn full(ambient: usize) -> F2Space {
        let gens = (0..ambient)
            .map(|i| {
                let mut v = vec![0u8; ambient];
                v[i] = 1;
                v
            })
            .collect();
        F2Space::subspace(ambient, gens)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of classes, 2^dim.
    pub fn size(&self) -> u128 {
        assert!(self.dim() < 128, "class count does not fit in u128");
        1u128 << self.dim()
    }

    /// Canonical representatives of the basis classes.
    pub fn basis(&self) -> &[F2Vector] {
        &self.basis
    }

    pub fn span(&self) -> &Rref {
        &self.span
    }

    pub fn quotient_part(&self) -> &Rref {
        &self.modsub
    }

    /// Canonical (lex-least) representative of the class of `v`, or `None`
    /// when `v` does not lie in the span.
    pub fn canonicalize(&self, v: &[u8]) -> Option<F2Vector> {
        assert_eq!(v.len(), self.ambient, "ambient width mismatch");
        let mut w: F2Vector = v.iter().map(|b| b & 1).collect();
        self.modsub.reduce(&mut w);
        // Membership: w must rebuild from the representative basis.
        let mut check = vec![0u8; self.ambient];
        for (b, &p) in self.basis.iter().zip(&self.basis_pivots) {
            if w[p] == 1 {
                xor_into(&mut check, b);
            }
        }
        if check == w {
            Some(w)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.canonicalize(v).is_some()
    }

    /// Coordinates of the class of `v` in the representative basis.
    pub fn coords(&self, v: &[u8]) -> Option<F2Vector> {
        let w = self.canonicalize(v)?;
        Some(self.basis_pivots.iter().map(|&p| w[p]).collect())
    }

    /// Canonical representative with the given basis coordinates.
    pub fn vector_of_coords(&self, coords: &[u8]) -> F2Vector {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![0u8; self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c & 1 == 1 {
                xor_into(&mut v, b);
            }
        }
        v
    }

    /// Packs coordinates with the first basis coordinate in the top bit,
    /// so packed order equals lex order on canonical representatives.
    pub fn pack(&self, coords: &[u8]) -> u32 {
        let d = self.dim();
        assert!(d <= 31, "packed coordinates limited to 31 bits");
        let mut x = 0u32;
        for (i, c) in coords.iter().enumerate() {
            if c & 1 == 1 {
                x |= 1 << (d - 1 - i);
            }
        }
        x
    }

    pub fn unpack(&self, point: u32) -> F2Vector {
        let d = self.dim();
        (0..d)
            .map(|i| ((point >> (d - 1 - i)) & 1) as u8)
            .collect()
    }

    pub fn packed_of_vector(&self, v: &[u8]) -> Option<u32> {
        self.coords(v).map(|c| self.pack(&c))
    }

    pub fn vector_of_packed(&self, point: u32) -> F2Vector {
        let coords = self.unpack(point);
        self.vector_of_coords(&coords)
    }

    /// All canonical representatives, in lexicographic order.
    pub fn members(&self) -> impl Iterator<Item = F2Vector> + '_ {
        (0..self.size() as u64).map(|p| self.vector_of_packed(p as u32))
    }

    /// Matrix (in representative-basis coordinates) of an ambient linear
    /// map, or `None` when the map does not descend to the subquotient.
    pub fn coord_matrix_of(&self, ambient_map: &[Vec<u8>]) -> Option<Vec<F2Vector>> {
        for row in self.modsub.rows() {
            let img = matvec(ambient_map, row);
            if !self.modsub.contains(&img) {
                return None;
            }
        }
        let mut cols: Vec<F2Vector> = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let img = matvec(ambient_map, b);
            cols.push(self.coords(&img)?);
        }
        // Store row-major d x d.
        let d = self.dim();
        Some((0..d).map(|i| (0..d).map(|j| cols[j][i]).collect()).collect())
    }
}

/// Basis of the right nullspace of a matrix given by rows.
pub fn nullspace(width: usize, rows: &[F2Vector]) -> Vec<F2Vector> {
    let r = Rref::new(width, rows.iter().cloned());
    let pivots = r.pivots();
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u8; width];
            v[free] = 1;
            for (row, &p) in r.rows().iter().zip(pivots) {
                v[p] = row[free];
            }
            v
        })
        .collect()
}

/// Basis of the intersection of two spans (Zassenhaus doubling trick).
pub fn intersect(width: usize, a: &Rref, b: &Rref) -> Rref {
    let doubled = a
        .rows()
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.extend_from_slice(r);
            v
        })
        .chain(b.rows().iter().map(|r| {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(0u8, width));
            v
        }));
    let big = Rref::new(2 * width, doubled);
    let gens = big
        .rows()
        .iter()
        .filter(|r| is_zero(&r[..width]))
        .map(|r| r[width..].to_vec());
    Rref::new(width, gens)
}

/// Inverse of a square mod-2 matrix, or `None` if singular.
pub fn inverse(m: &[Vec<u8>]) -> Option<Vec<F2Vector>> {
    let n = m.len();
    let mut work: Vec<F2Vector> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix must be square");
            row.iter().map(|b| b & 1).collect()
        })
        .collect();
    let mut inv: Vec<F2Vector> = (0..n)
        .map(|i| {
            let mut r = vec![0u8; n];
            r[i] = 1;
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| work[r][col] == 1)?;
        work.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..n {
            if r != col && work[r][col] == 1 {
                let (wr, wc) = split_two(&mut work, r, col);
                xor_into(wr, wc);
                let (ir, ic) = split_two(&mut inv, r, col);
                xor_into(ir, ic);
            }
        }
    }
    Some(inv)
}

fn split_two(v: &mut [F2Vector], a: usize, b: usize) -> (&mut [u8], &[u8]) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

/// Number of solutions of `(A + I) x = b` in coordinates: 2^(free rank)
/// when consistent, zero otherwise.
pub fn affine_fixed_points(linear: &[Vec<u8>], translation: &[u8]) -> u128 {
    let d = linear.len();
    let mut rows: Vec<F2Vector> = Vec::with_capacity(d);
    for i in 0..d {
        let mut row: F2Vector = (0..d)
            .map(|j| (linear[i][j] & 1) ^ u8::from(i == j))
            .collect();
        row.push(translation[i] & 1);
        rows.push(row);
    }
    let r = Rref::new(d + 1, rows);
    // A pivot in the last column marks the inconsistent row 0 = 1.
    if r.pivots().contains(&d) {
        0
    } else {
        1u128 << (d - r.dim())
    }
}

/// Affine map on packed points: columns of the linear part and the
/// translation are packed the same way as points.
#[derive(Clone, Debug)]
pub struct PackedAffineMap {
    pub cols: Vec<u32>,
    pub trans: u32,
    pub dim: usize,
}

impl PackedAffineMap {
    /// Packs a coordinate-level map. `linear` is row-major d x d.
    pub fn new(space: &F2Space, linear: &[Vec<u8>], translation: &[u8]) -> PackedAffineMap {
        let d = space.dim();
        assert_eq!(linear.len(), d);
        assert_eq!(translation.len(), d);
        let cols = (0..d)
            .map(|j| {
                let col: F2Vector = (0..d).map(|i| linear[i][j]).collect();
                space.pack(&col)
            })
            .collect();
        PackedAffineMap {
            cols,
            trans: space.pack(translation),
            dim: d,
        }
    }

    pub fn apply(&self, x: u32) -> u32 {
        let d = self.dim;
        let mut y = self.trans;
        for (j, &c) in self.cols.iter().enumerate() {
            if (x >> (d - 1 - j)) & 1 == 1 {
                y ^= c;
            }
        }
        y
    }
}

/// Orbits of a finite set of invertible affine maps on all 2^dim points.
///
/// Representatives are the lex-least members; orbits are listed in lex
/// order of their representatives, which makes the output independent of
/// generator order.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub representatives: Vec<F2Vector>,
    pub sizes: Vec<u128>,
    point_orbit: Vec<u32>,
    dim: usize,
}

impl OrbitPartition {
    pub fn orbit_count(&self) -> u128 {
        self.representatives.len() as u128
    }

    pub fn orbit_of_packed(&self, point: u32) -> usize {
        self.point_orbit[point as usize] as usize
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Packed members of one orbit, ascending.
    pub fn members_of(&self, orbit: usize) -> Vec<u32> {
        (0..self.point_orbit.len() as u32)
            .filter(|&p| self.point_orbit[p as usize] as usize == orbit)
            .collect()
    }
}

struct DisjointSet {
    parent: Vec<u32>,
}

impl DisjointSet {
    fn new(n: usize) -> DisjointSet {
        DisjointSet {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    /// Union keeping the least point as root, so roots double as
    /// lex-least representatives.
    fn unite(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
    }
}

pub fn affine_orbits(space: &F2Space, maps: &[PackedAffineMap]) -> OrbitPartition {
    let d = space.dim();
    assert!(d <= 31, "orbit enumeration limited to 31 coordinate bits");
    let n = 1usize << d;
    let mut ds = DisjointSet::new(n);
    for m in maps {
        debug_assert_eq!(m.dim, d);
        for x in 0..n as u32 {
            ds.unite(x, m.apply(x));
        }
    }
    let mut root_index: std::collections::BTreeMap<u32, u32> = Default::default();
    let mut point_orbit = vec![0u32; n];
    let mut sizes: Vec<u128> = Vec::new();
    for x in 0..n as u32 {
        let r = ds.find(x);
        let next = root_index.len() as u32;
        let idx = *root_index.entry(r).or_insert(next);
        if idx as usize == sizes.len() {
            sizes.push(0);
        }
        point_orbit[x as usize] = idx;
        sizes[idx as usize] += 1;
    }
    // Roots appear in ascending packed order, which is lex order on
    // representatives, so no re-sort is needed.
    let representatives = root_index
        .keys()
        .map(|&r| space.vector_of_packed(r))
        .collect();
    OrbitPartition {
        representatives,
        sizes,
        point_orbit,
        dim: d,
    }
}

/// Guard for enumeration dimensions; mirrors the default action bound.
pub fn check_dim(dim: usize, bound: usize) -> Result<()> {
    if dim > bound {
        Err(Error::DimensionTooLarge { dim, bound })
    } else {
        Ok(())
    }
}
