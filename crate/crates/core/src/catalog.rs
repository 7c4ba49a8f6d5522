//! Ready-made root data for the classical and exceptional series.
//!
//! Simply connected groups are built from their Cartan matrices on the
//! coroot basis; the orthogonal and symplectic series are given
//! explicitly on the standard lattice so their Weyl groups act by
//! signed permutations. Every constructor funnels through
//! [`RootDatum::new`], so the axioms are re-checked on each call.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::mat::IntVec;
use crate::rootdata::{pairing, RootDatum};

fn vec_i64(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn unit(rank: usize, i: usize, scale: i64) -> IntVec {
    let mut v = vec![BigInt::from(0); rank];
    v[i] = BigInt::from(scale);
    v
}

fn neg(v: &IntVec) -> IntVec {
    v.iter().map(|a| -a).collect()
}

/// Root datum of the simply connected group with the given Cartan
/// matrix, on the coroot basis: simple coroots are unit vectors and
/// simple roots are the Cartan rows. The full system is the closure of
/// the simple pairs under all simple reflections.
pub fn from_cartan(cartan: &[Vec<i64>]) -> Result<RootDatum> {
    let rank = cartan.len();
    if cartan.iter().any(|row| row.len() != rank) {
        return Err(Error::Shape("Cartan matrix must be square".into()));
    }
    let simple_roots: Vec<IntVec> = cartan.iter().map(|r| vec_i64(r)).collect();
    let simple_coroots: Vec<IntVec> = (0..rank).map(|i| unit(rank, i, 1)).collect();

    let mut closed: BTreeSet<(IntVec, IntVec)> = simple_roots
        .iter()
        .cloned()
        .zip(simple_coroots.iter().cloned())
        .collect();
    let mut frontier: Vec<(IntVec, IntVec)> = closed.iter().cloned().collect();
    while let Some((root, coroot)) = frontier.pop() {
        for (sr, sc) in simple_roots.iter().zip(&simple_coroots) {
            // Reflect the pair in a simple root: the coroot moves by
            // the pairing with the simple root, the root dually.
            let a = pairing(sr, &coroot);
            let b = pairing(&root, sc);
            let new_coroot: IntVec = coroot
                .iter()
                .zip(sc)
                .map(|(c, s)| c - &a * s)
                .collect();
            let new_root: IntVec = root
                .iter()
                .zip(sr)
                .map(|(r, s)| r - &b * s)
                .collect();
            let pair = (new_root, new_coroot);
            if closed.insert(pair.clone()) {
                if closed.len() > 1000 {
                    return Err(Error::CutoffExceeded { reached: closed.len() });
                }
                frontier.push(pair);
            }
        }
    }

    let (roots, coroots): (Vec<IntVec>, Vec<IntVec>) = closed.into_iter().unzip();
    let simple = simple_roots
        .iter()
        .map(|sr| roots.iter().position(|r| r == sr).expect("simple root survives closure"))
        .collect();
    RootDatum::new(rank, roots, coroots, simple)
}

/// Special unitary group SU(n), n >= 2: the simply connected datum of
/// the A-series Cartan matrix of rank n - 1.
pub fn su(n: usize) -> RootDatum {
    assert!(n >= 2, "SU(n) needs n >= 2");
    let rank = n - 1;
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    if i == j {
                        2
                    } else if i.abs_diff(j) == 1 {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    from_cartan(&cartan).expect("A-series Cartan matrix is valid")
}

/// Compact symplectic group Sp(n), n >= 1, on the standard lattice:
/// roots are the differences, sums, and doubles of coordinates.
pub fn sp(n: usize) -> RootDatum {
    assert!(n >= 1, "Sp(n) needs n >= 1");
    let mut roots: Vec<IntVec> = Vec::new();
    let mut coroots: Vec<IntVec> = Vec::new();
    let mut push_pair = |r: IntVec, c: IntVec| {
        roots.push(neg(&r));
        coroots.push(neg(&c));
        roots.push(r);
        coroots.push(c);
    };
    for i in 0..n {
        for j in i + 1..n {
            let mut diff = unit(n, i, 1);
            diff[j] = BigInt::from(-1);
            push_pair(diff.clone(), diff);
            let mut sum = unit(n, i, 1);
            sum[j] = BigInt::from(1);
            push_pair(sum.clone(), sum);
        }
        push_pair(unit(n, i, 2), unit(n, i, 1));
    }
    let mut simple: Vec<usize> = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut diff = unit(n, i, 1);
        diff[i + 1] = BigInt::from(-1);
        simple.push(roots.iter().position(|r| *r == diff).unwrap());
    }
    simple.push(roots.iter().position(|r| *r == unit(n, n - 1, 2)).unwrap());
    RootDatum::new(n, roots, coroots, simple).expect("C-series datum is valid")
}

/// Special orthogonal group SO(n), n >= 3, on the standard lattice of
/// rank floor(n/2). Odd n gives the short-root series, even n the
/// simply laced one.
pub fn so(n: usize) -> RootDatum {
    assert!(n >= 3, "SO(n) needs n >= 3");
    let m = n / 2;
    let odd = n % 2 == 1;
    let mut roots: Vec<IntVec> = Vec::new();
    let mut coroots: Vec<IntVec> = Vec::new();
    let mut push_pair = |r: IntVec, c: IntVec| {
        roots.push(neg(&r));
        coroots.push(neg(&c));
        roots.push(r);
        coroots.push(c);
    };
    for i in 0..m {
        for j in i + 1..m {
            let mut diff = unit(m, i, 1);
            diff[j] = BigInt::from(-1);
            push_pair(diff.clone(), diff);
            let mut sum = unit(m, i, 1);
            sum[j] = BigInt::from(1);
            push_pair(sum.clone(), sum);
        }
        if odd {
            push_pair(unit(m, i, 1), unit(m, i, 2));
        }
    }
    let mut simple: Vec<usize> = Vec::new();
    for i in 0..m.saturating_sub(1) {
        let mut diff = unit(m, i, 1);
        diff[i + 1] = BigInt::from(-1);
        simple.push(roots.iter().position(|r| *r == diff).unwrap());
    }
    if odd {
        simple.push(roots.iter().position(|r| *r == unit(m, m - 1, 1)).unwrap());
    } else if m >= 2 {
        let mut sum = unit(m, m - 2, 1);
        sum[m - 1] = BigInt::from(1);
        simple.push(roots.iter().position(|r| *r == sum).unwrap());
    }
    RootDatum::new(m, roots, coroots, simple).expect("orthogonal datum is valid")
}

pub fn g2() -> RootDatum {
    from_cartan(&[vec![2, -1], vec![-3, 2]]).expect("G2 Cartan matrix is valid")
}

pub fn f4() -> RootDatum {
    from_cartan(&[
        vec![2, -1, 0, 0],
        vec![-1, 2, -1, 0],
        vec![0, -2, 2, -1],
        vec![0, 0, -1, 2],
    ])
    .expect("F4 Cartan matrix is valid")
}

pub fn e8() -> RootDatum {
    // Nodes numbered 1..=8; node 2 is the branch attached to node 4.
    let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
    let cartan: Vec<Vec<i64>> = (1..=8)
        .map(|i| {
            (1..=8)
                .map(|j| {
                    if i == j {
                        2
                    } else if edges.contains(&(i, j)) || edges.contains(&(j, i)) {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    from_cartan(&cartan).expect("E8 Cartan matrix is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        assert_eq!(su(2).roots().len(), 2);
        assert_eq!(su(3).roots().len(), 6);
        assert_eq!(su(4).roots().len(), 12);
        assert_eq!(sp(2).roots().len(), 8);
        assert_eq!(sp(3).roots().len(), 18);
        assert_eq!(so(5).roots().len(), 8);
        assert_eq!(so(7).roots().len(), 18);
        assert_eq!(so(4).roots().len(), 4);
        assert_eq!(so(8).roots().len(), 24);
        assert_eq!(g2().roots().len(), 12);
        assert_eq!(f4().roots().len(), 48);
    }

    #[test]
    fn e8_has_240_roots() {
        assert_eq!(e8().roots().len(), 240);
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(su(3).weyl_elements(100).unwrap().len(), 6);
        assert_eq!(sp(2).weyl_elements(100).unwrap().len(), 8);
        assert_eq!(g2().weyl_elements(100).unwrap().len(), 12);
        assert_eq!(so(8).weyl_elements(1000).unwrap().len(), 192);
    }

    #[test]
    fn low_rank_coincidences() {
        // Sp(1) and SU(2) share the rank-one simply connected datum.
        assert_eq!(sp(1).roots(), su(2).roots());
        assert_eq!(sp(1).coroots(), su(2).coroots());
        // SO(3) is the adjoint rank-one datum: root is primitive.
        assert_eq!(so(3).roots()[so(3).simple_indices()[0]], vec_i64(&[1]));
    }

    #[test]
    fn closure_rejects_indefinite_cartan() {
        // Affine A1 Cartan matrix generates infinitely many roots.
        assert!(matches!(
            from_cartan(&[vec![2, -2], vec![-2, 2]]),
            Err(Error::CutoffExceeded { .. })
        ));
    }
}
