//! Shared two-route oracle for integration tests: an independent 2x2x2
//! tensor model of the split cube space, with the tensor action of one
//! 2x2 matrix per axis and the classical slicing discriminant. Nothing
//! here calls the structured formulas under test.
#![allow(dead_code)]

use cubecomp::cube::Cube;
use cubecomp::etale::CubicElem;
use cubecomp::field::Scalar;

/// Raw 2x2x2 tensor of scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<F: Scalar>(pub [[[F; 2]; 2]; 2]);

impl<F: Scalar> Tensor<F> {
    pub fn from_cube(v: &Cube<F>) -> Self {
        let c = |i: usize, j: usize, k: usize| -> F {
            match (i, j, k) {
                (0, 0, 0) => v.a.clone(),
                (1, 0, 0) => v.e.0[0].clone(),
                (0, 1, 0) => v.e.0[1].clone(),
                (0, 0, 1) => v.e.0[2].clone(),
                (0, 1, 1) => v.f.0[0].clone(),
                (1, 0, 1) => v.f.0[1].clone(),
                (1, 1, 0) => v.f.0[2].clone(),
                (1, 1, 1) => v.b.clone(),
                _ => unreachable!(),
            }
        };
        Tensor(std::array::from_fn(|i| {
            std::array::from_fn(|j| std::array::from_fn(|k| c(i, j, k)))
        }))
    }

    pub fn to_cube(&self) -> Cube<F> {
        let t = &self.0;
        Cube::new(
            t[0][0][0].clone(),
            CubicElem([
                t[1][0][0].clone(),
                t[0][1][0].clone(),
                t[0][0][1].clone(),
            ]),
            CubicElem([
                t[0][1][1].clone(),
                t[1][0][1].clone(),
                t[1][1][0].clone(),
            ]),
            t[1][1][1].clone(),
        )
    }

    /// Tensor action of one 2x2 matrix per axis:
    /// `(g1 (x) g2 (x) g3) c`.
    pub fn act(&self, g: &[[[F; 2]; 2]; 3]) -> Self {
        let zero = {
            let some = &self.0[0][0][0];
            some.clone() - some.clone()
        };
        let mut out: [[[F; 2]; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| zero.clone())));
        #[allow(clippy::needless_range_loop)]
        for ip in 0..2 {
            for jp in 0..2 {
                for kp in 0..2 {
                    let mut s = zero.clone();
                    for i in 0..2 {
                        for j in 0..2 {
                            for k in 0..2 {
                                s = s + g[0][ip][i].clone()
                                    * g[1][jp][j].clone()
                                    * g[2][kp][k].clone()
                                    * self.0[i][j][k].clone();
                            }
                        }
                    }
                    out[ip][jp][kp] = s;
                }
            }
        }
        Tensor(out)
    }

    pub fn scale(&self, s: &F) -> Self {
        Tensor(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                std::array::from_fn(|k| self.0[i][j][k].clone() * s.clone())
            })
        }))
    }

    /// Permute the axes: axis `m` of the result is axis `perm[m]` of the
    /// input.
    pub fn permute_axes(&self, perm: [usize; 3]) -> Self {
        Tensor(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                std::array::from_fn(|k| {
                    let idx = [i, j, k];
                    let src: [usize; 3] = std::array::from_fn(|m| idx[perm[m]]);
                    self.0[src[0]][src[1]][src[2]].clone()
                })
            })
        }))
    }

    /// Classical cube discriminant from the slicing along `axis`:
    /// the discriminant of the binary form `-det(A x + B y)` where `A, B`
    /// are the two slices.
    pub fn disc_along(&self, ctx: &F::Ctx, axis: usize) -> F {
        let at = |s: usize, j: usize, k: usize| -> F {
            match axis {
                0 => self.0[s][j][k].clone(),
                1 => self.0[j][s][k].clone(),
                _ => self.0[j][k][s].clone(),
            }
        };
        let det = |s0: [F; 4], s1: [F; 4], x: i64, y: i64| -> F {
            // det(A x + B y) with A, B given flat.
            let fx = F::from_i64(ctx, x);
            let fy = F::from_i64(ctx, y);
            let m: Vec<F> = (0..4)
                .map(|t| s0[t].clone() * fx.clone() + s1[t].clone() * fy.clone())
                .collect();
            m[0].clone() * m[3].clone() - m[1].clone() * m[2].clone()
        };
        let a: [F; 4] = [at(0, 0, 0), at(0, 0, 1), at(0, 1, 0), at(0, 1, 1)];
        let b: [F; 4] = [at(1, 0, 0), at(1, 0, 1), at(1, 1, 0), at(1, 1, 1)];
        // -det(Ax + By) = qa x^2 + qb xy + qc y^2 by interpolation at
        // (1,0), (0,1), (1,1).
        let qa = -det(a.clone(), b.clone(), 1, 0);
        let qc = -det(a.clone(), b.clone(), 0, 1);
        let q11 = -det(a, b, 1, 1);
        let qb = q11 - qa.clone() - qc.clone();
        qb.clone() * qb - F::from_i64(ctx, 4) * qa * qc
    }
}

pub fn diag<F: Scalar>(ctx: &F::Ctx, x: &F, y: &F) -> [[F; 2]; 2] {
    [
        [x.clone(), F::zero(ctx)],
        [F::zero(ctx), y.clone()],
    ]
}

pub fn lower<F: Scalar>(ctx: &F::Ctx, w: &F) -> [[F; 2]; 2] {
    [
        [F::one(ctx), F::zero(ctx)],
        [w.clone(), F::one(ctx)],
    ]
}

pub fn upper<F: Scalar>(ctx: &F::Ctx, w: &F) -> [[F; 2]; 2] {
    [
        [F::one(ctx), w.clone()],
        [F::zero(ctx), F::one(ctx)],
    ]
}

pub fn swap<F: Scalar>(ctx: &F::Ctx) -> [[F; 2]; 2] {
    [
        [F::zero(ctx), F::one(ctx)],
        [F::one(ctx), F::zero(ctx)],
    ]
}

