//! Pairs and 2x2 matrices with entries in a cubic algebra `E`.
//!
//! These are the change-of-basis data for rank-2 twisted composition
//! algebras: a basis change is an invertible 2x2 matrix over `E`, and the
//! group elements acting on cubes also carry such a matrix. Multiplication
//! in `E` needs the algebra's structure constants, so every operation takes
//! the algebra as an argument instead of pretending the entries form a
//! context-free ring.

use crate::etale::{CubicAlg, CubicElem};
use crate::field::{FieldError, Scalar};

/// An element of `E^2`, written as a column `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec2E<F: Scalar> {
    pub x: CubicElem<F>,
    pub y: CubicElem<F>,
}

impl<F: Scalar> Vec2E<F> {
    pub fn new(x: CubicElem<F>, y: CubicElem<F>) -> Self {
        Vec2E { x, y }
    }

    pub fn add(&self, o: &Self) -> Self {
        Vec2E::new(self.x.add(&o.x), self.y.add(&o.y))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Vec2E::new(self.x.sub(&o.x), self.y.sub(&o.y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "x": self.x.to_json(), "y": self.y.to_json() })
    }

    pub fn from_json<C>(ctx: &C, v: &serde_json::Value) -> Result<Self, FieldError>
    where
        F: Scalar<Ctx = C>,
    {
        let obj = v
            .as_object()
            .ok_or_else(|| FieldError::Encoding(format!("expected object with x, y, got {v}")))?;
        let get = |k: &str| {
            obj.get(k)
                .ok_or_else(|| FieldError::Encoding(format!("missing key '{k}'")))
        };
        Ok(Vec2E::new(
            CubicElem::from_json(ctx, get("x")?)?,
            CubicElem::from_json(ctx, get("y")?)?,
        ))
    }
}

/// A 2x2 matrix over `E`, in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2E<F: Scalar> {
    pub m: [[CubicElem<F>; 2]; 2],
}

impl<F: Scalar> Mat2E<F> {
    pub fn new(m: [[CubicElem<F>; 2]; 2]) -> Self {
        Mat2E { m }
    }

    pub fn identity(alg: &CubicAlg<F>) -> Self {
        Mat2E::new([
            [alg.unit(), alg.zero()],
            [alg.zero(), alg.unit()],
        ])
    }

    pub fn apply(&self, alg: &CubicAlg<F>, v: &Vec2E<F>) -> Vec2E<F> {
        Vec2E::new(
            alg.mul(&self.m[0][0], &v.x).add(&alg.mul(&self.m[0][1], &v.y)),
            alg.mul(&self.m[1][0], &v.x).add(&alg.mul(&self.m[1][1], &v.y)),
        )
    }

    /// `self * o` (composition: apply `o` first).
    pub fn mul(&self, alg: &CubicAlg<F>, o: &Self) -> Self {
        let p = |i: usize, j: usize| {
            alg.mul(&self.m[i][0], &o.m[0][j])
                .add(&alg.mul(&self.m[i][1], &o.m[1][j]))
        };
        Mat2E::new([[p(0, 0), p(0, 1)], [p(1, 0), p(1, 1)]])
    }

    pub fn transpose(&self) -> Self {
        Mat2E::new([
            [self.m[0][0].clone(), self.m[1][0].clone()],
            [self.m[0][1].clone(), self.m[1][1].clone()],
        ])
    }

    pub fn det(&self, alg: &CubicAlg<F>) -> CubicElem<F> {
        alg.mul(&self.m[0][0], &self.m[1][1])
            .sub(&alg.mul(&self.m[0][1], &self.m[1][0]))
    }

    /// Inverse when the determinant is invertible in `E`.
    pub fn inverse(&self, alg: &CubicAlg<F>) -> Option<Self> {
        let di = alg.inv(&self.det(alg))?;
        Some(Mat2E::new([
            [
                alg.mul(&self.m[1][1], &di),
                alg.mul(&self.m[0][1], &di).neg(),
            ],
            [
                alg.mul(&self.m[1][0], &di).neg(),
                alg.mul(&self.m[0][0], &di),
            ],
        ]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{QCtx, Rat};

    #[test]
    fn inverse_and_composition() {
        let alg = CubicAlg::<Rat>::split(&QCtx);
        let q = Rat::from_int;
        let g = Mat2E::new([
            [CubicElem([q(1), q(2), q(1)]), CubicElem([q(0), q(1), q(3)])],
            [CubicElem([q(1), q(0), q(0)]), CubicElem([q(2), q(1), q(1)])],
        ]);
        let gi = g.inverse(&alg).expect("invertible");
        assert_eq!(g.mul(&alg, &gi), Mat2E::identity(&alg));
        assert_eq!(gi.mul(&alg, &g), Mat2E::identity(&alg));

        let v = Vec2E::new(CubicElem([q(3), q(1), q(4)]), CubicElem([q(1), q(5), q(9)]));
        let w = g.apply(&alg, &v);
        assert_eq!(gi.apply(&alg, &w), v);
    }
}
