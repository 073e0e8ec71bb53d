//! Minimal fixed-size matrix helpers over commutative rings.
//!
//! The crate needs 3x3 determinants, adjugates and products over both a base
//! field and a quadratic extension of it (which is a mere ring when the
//! radicand is a square), so the matrix code is written once against the
//! small [`Ring`] trait. Scalars get a blanket impl with trivial involution;
//! quadratic extensions use conjugation, which is what makes
//! [`Mat3::conj_transpose`] the Hermitian adjoint there.

use std::fmt;

use crate::field::Scalar;

/// A commutative ring element with a distinguished involution.
///
/// Constants are minted from a witness element (`zero_like`) because ring
/// elements carry their context (prime modulus, radicand) at runtime.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    fn r_is_zero(&self) -> bool;
    /// Ring involution: identity on scalars, conjugation on quadratic
    /// extensions.
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl<F: Scalar> Ring for F {
    fn zero_like(&self) -> Self {
        F::zero(&self.context())
    }
    fn one_like(&self) -> Self {
        F::one(&self.context())
    }
    fn radd(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn rsub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn rmul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn rneg(&self) -> Self {
        -self.clone()
    }
    fn r_is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

/// A 3x3 matrix over a commutative ring, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3<T: Ring> {
    pub rows: [[T; 3]; 3],
}

impl<T: Ring> Mat3<T> {
    pub fn new(rows: [[T; 3]; 3]) -> Self {
        Mat3 { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Mat3 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn identity_like(witness: &T) -> Self {
        let z = witness.zero_like();
        let o = witness.one_like();
        Mat3::from_fn(|i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn zero_like(witness: &T) -> Self {
        let z = witness.zero_like();
        Mat3::from_fn(|_, _| z.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat3::from_fn(|i, j| self.rows[i][j].radd(&o.rows[i][j]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat3::from_fn(|i, j| self.rows[i][j].rsub(&o.rows[i][j]))
    }

    pub fn neg(&self) -> Self {
        Mat3::from_fn(|i, j| self.rows[i][j].rneg())
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat3::from_fn(|i, j| self.rows[i][j].rmul(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat3::from_fn(|i, j| {
            let mut acc = self.rows[i][0].rmul(&o.rows[0][j]);
            for k in 1..3 {
                acc = acc.radd(&self.rows[i][k].rmul(&o.rows[k][j]));
            }
            acc
        })
    }

    pub fn apply(&self, v: &[T; 3]) -> [T; 3] {
        std::array::from_fn(|i| {
            let mut acc = self.rows[i][0].rmul(&v[0]);
            for (m, vk) in self.rows[i].iter().zip(v.iter()).skip(1) {
                acc = acc.radd(&m.rmul(vk));
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Mat3::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Mat3::from_fn(|i, j| self.rows[j][i].conj())
    }

    pub fn map(&self, mut f: impl FnMut(&T) -> T) -> Self {
        Mat3::from_fn(|i, j| f(&self.rows[i][j]))
    }

    pub fn trace(&self) -> T {
        self.rows[0][0]
            .radd(&self.rows[1][1])
            .radd(&self.rows[2][2])
    }

    pub fn det(&self) -> T {
        let m = &self.rows;
        let t1 = m[0][0].rmul(&m[1][1].rmul(&m[2][2]).rsub(&m[1][2].rmul(&m[2][1])));
        let t2 = m[0][1].rmul(&m[1][0].rmul(&m[2][2]).rsub(&m[1][2].rmul(&m[2][0])));
        let t3 = m[0][2].rmul(&m[1][0].rmul(&m[2][1]).rsub(&m[1][1].rmul(&m[2][0])));
        t1.rsub(&t2).radd(&t3)
    }

    /// Sum of the principal 2x2 minors — the second elementary symmetric
    /// function of the eigenvalues, i.e. the quadratic coefficient of the
    /// characteristic polynomial.
    pub fn second_invariant(&self) -> T {
        let m = &self.rows;
        let m12 = m[1][1].rmul(&m[2][2]).rsub(&m[1][2].rmul(&m[2][1]));
        let m02 = m[0][0].rmul(&m[2][2]).rsub(&m[0][2].rmul(&m[2][0]));
        let m01 = m[0][0].rmul(&m[1][1]).rsub(&m[0][1].rmul(&m[1][0]));
        m12.radd(&m02).radd(&m01)
    }

    /// Classical adjoint: `self.mul(&self.adjugate()) == det * identity`.
    pub fn adjugate(&self) -> Self {
        let m = &self.rows;
        let cof = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let minor = m[r[0]][c[0]]
                .rmul(&m[r[1]][c[1]])
                .rsub(&m[r[0]][c[1]].rmul(&m[r[1]][c[0]]));
            if (i + j) % 2 == 0 {
                minor
            } else {
                minor.rneg()
            }
        };
        // adj(A)_{ij} = cofactor_{ji}
        Mat3::from_fn(|i, j| cof(j, i))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.r_is_zero())
    }
}

/// A 2x2 matrix over a commutative ring, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2<T: Ring> {
    pub rows: [[T; 2]; 2],
}

impl<T: Ring> Mat2<T> {
    pub fn new(rows: [[T; 2]; 2]) -> Self {
        Mat2 { rows }
    }

    pub fn det(&self) -> T {
        self.rows[0][0]
            .rmul(&self.rows[1][1])
            .rsub(&self.rows[0][1].rmul(&self.rows[1][0]))
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| self.rows[i][j].radd(&o.rows[i][j]))
            }),
        }
    }
}
