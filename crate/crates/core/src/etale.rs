//! Etale cubic algebras over an exact field.
//!
//! An etale cubic algebra `E` over `F` is a commutative associative unital
//! `F`-algebra of rank 3 with nondegenerate trace form. Three presentations
//! are supported, each realized as structure constants on a fixed basis
//! `b0, b1, b2` so that every later computation (characteristic invariants,
//! adjoint, cross product, discriminant) runs through a single code path:
//!
//! * [`Shape::Split`] — `F x F x F`, coordinatewise operations;
//! * [`Shape::QuadPair`] — `F x F(sqrt d)` on the basis `(1,0), (0,1),
//!   (0, sqrt d)`;
//! * [`Shape::CubicPoly`] — `F[x]/(x^3 + c2 x^2 + c1 x + c0)` on the basis
//!   `1, theta, theta^2` (the cubic must be separable).
//!
//! Every element satisfies `a^3 - T(a) a^2 + S(a) a - N(a) = 1` ... more
//! precisely `a^3 - T(a)a^2 + S(a)a - N(a)*1 = 0`, where `(T, S, N)` are the
//! trace, quadratic invariant, and norm, read off the characteristic
//! polynomial of the multiplication matrix of `a`. The adjoint
//! `a# = a^2 - T(a)a + S(a)*1` satisfies `a * a# = N(a) * 1`, and its
//! polarization `x (cross) y = (x+y)# - x# - y#` is the bilinear cross
//! product used throughout the cube machinery.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldError, Scalar, SquareClass};
use crate::linalg::Mat3;

/// Errors from algebra construction and structural searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cubic polynomial is not separable (discriminant is zero)")]
    NotSeparable,
    #[error("quadratic radicand must be nonzero")]
    ZeroRadicand,
    #[error("trace form is degenerate; the algebra is not etale")]
    DegenerateTraceForm,
    #[error("{0}")]
    Field(#[from] FieldError),
    #[error("automorphism search requires a prime field with p <= {0}")]
    AutomorphismSearchTooLarge(u64),
}

/// Presentation of the algebra. The radicand / polynomial coefficients are
/// kept for reporting; arithmetic always goes through structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape<F: Scalar> {
    Split,
    QuadPair { d: F },
    /// `x^3 + c2 x^2 + c1 x + c0`, stored as `[c0, c1, c2]`.
    CubicPoly { c: [F; 3] },
}

/// An element of a cubic algebra: coordinates on the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicElem<F: Scalar>(pub [F; 3]);

impl<F: Scalar> CubicElem<F> {
    pub fn add(&self, o: &Self) -> Self {
        CubicElem(std::array::from_fn(|i| {
            self.0[i].clone() + o.0[i].clone()
        }))
    }

    pub fn sub(&self, o: &Self) -> Self {
        CubicElem(std::array::from_fn(|i| {
            self.0[i].clone() - o.0[i].clone()
        }))
    }

    pub fn neg(&self) -> Self {
        CubicElem(std::array::from_fn(|i| -self.0[i].clone()))
    }

    pub fn scale(&self, s: &F) -> Self {
        CubicElem(std::array::from_fn(|i| self.0[i].clone() * s.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.0.iter().map(|c| c.to_json()).collect())
    }

    pub fn from_json(ctx: &F::Ctx, v: &serde_json::Value) -> Result<Self, FieldError> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| FieldError::Encoding(format!("expected 3-element array, got {v}")))?;
        Ok(CubicElem([
            F::from_json(ctx, &arr[0])?,
            F::from_json(ctx, &arr[1])?,
            F::from_json(ctx, &arr[2])?,
        ]))
    }
}

impl<F: Scalar> fmt::Display for CubicElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// An etale cubic algebra with precomputed structure constants, unit, trace
/// vector and trace Gram matrix.
#[derive(Debug, Clone)]
pub struct CubicAlg<F: Scalar> {
    ctx: F::Ctx,
    shape: Shape<F>,
    /// `sc[i][j]` = coordinates of `b_i * b_j`.
    sc: [[CubicElem<F>; 3]; 3],
    unit: CubicElem<F>,
    /// `trvec[i] = Tr(b_i)`.
    trvec: [F; 3],
    /// `gram[i][j] = Tr(b_i b_j)`.
    gram: Mat3<F>,
    gram_det: F,
}

impl<F: Scalar> CubicAlg<F> {
    /// `F x F x F` with coordinatewise operations.
    pub fn split(ctx: &F::Ctx) -> Self {
        let z = || F::zero(ctx);
        let o = || F::one(ctx);
        let sc = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                CubicElem(std::array::from_fn(|k| {
                    if i == j && j == k {
                        o()
                    } else {
                        z()
                    }
                }))
            })
        });
        let unit = CubicElem([o(), o(), o()]);
        Self::finish(ctx.clone(), Shape::Split, sc, unit)
            .expect("the split algebra is always etale")
    }

    /// `F x F(sqrt d)` on the basis `(1,0), (0,1), (0, sqrt d)`; `d != 0`.
    pub fn quad_pair(ctx: &F::Ctx, d: F) -> Result<Self, AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::ZeroRadicand);
        }
        let z = || F::zero(ctx);
        let o = || F::one(ctx);
        let el = |c: [F; 3]| CubicElem(c);
        let sc = [
            [
                el([o(), z(), z()]),
                el([z(), z(), z()]),
                el([z(), z(), z()]),
            ],
            [
                el([z(), z(), z()]),
                el([z(), o(), z()]),
                el([z(), z(), o()]),
            ],
            [
                el([z(), z(), z()]),
                el([z(), z(), o()]),
                el([z(), d.clone(), z()]),
            ],
        ];
        let unit = el([o(), o(), z()]);
        Self::finish(ctx.clone(), Shape::QuadPair { d }, sc, unit)
    }

    /// `F[x]/(x^3 + c2 x^2 + c1 x + c0)` on the basis `1, theta, theta^2`.
    /// The polynomial must be separable.
    pub fn cubic_poly(ctx: &F::Ctx, c: [F; 3]) -> Result<Self, AlgebraError> {
        let [c0, c1, c2] = c.clone();
        // disc = 18 c2 c1 c0 - 4 c2^3 c0 + c2^2 c1^2 - 4 c1^3 - 27 c0^2
        let k = |n: i64| F::from_i64(ctx, n);
        let disc = k(18) * c2.clone() * c1.clone() * c0.clone()
            - k(4) * c2.clone() * c2.clone() * c2.clone() * c0.clone()
            + c2.sq() * c1.sq()
            - k(4) * c1.clone() * c1.clone() * c1.clone()
            - k(27) * c0.sq();
        if disc.is_zero() {
            return Err(AlgebraError::NotSeparable);
        }
        let z = || F::zero(ctx);
        let o = || F::one(ctx);
        let el = |c: [F; 3]| CubicElem(c);
        // theta^3 = -c0 - c1 theta - c2 theta^2
        let t3 = el([-c0.clone(), -c1.clone(), -c2.clone()]);
        // theta^4 = theta * theta^3 = c2 c0 + (c2 c1 - c0) theta + (c2^2 - c1) theta^2
        let t4 = el([
            c2.clone() * c0.clone(),
            c2.clone() * c1.clone() - c0.clone(),
            c2.sq() - c1.clone(),
        ]);
        let sc = [
            [
                el([o(), z(), z()]),
                el([z(), o(), z()]),
                el([z(), z(), o()]),
            ],
            [el([z(), o(), z()]), el([z(), z(), o()]), t3.clone()],
            [el([z(), z(), o()]), t3, t4],
        ];
        let unit = el([o(), z(), z()]);
        Self::finish(ctx.clone(), Shape::CubicPoly { c }, sc, unit)
    }

    fn finish(
        ctx: F::Ctx,
        shape: Shape<F>,
        sc: [[CubicElem<F>; 3]; 3],
        unit: CubicElem<F>,
    ) -> Result<Self, AlgebraError> {
        let mut alg = CubicAlg {
            ctx: ctx.clone(),
            shape,
            sc,
            unit,
            trvec: std::array::from_fn(|_| F::zero(&ctx)),
            gram: Mat3::zero_like(&F::zero(&ctx)),
            gram_det: F::zero(&ctx),
        };
        alg.trvec = std::array::from_fn(|i| alg.mul_matrix(&alg.basis(i)).trace());
        alg.gram = Mat3::from_fn(|i, j| {
            let prod = alg.mul(&alg.basis(i), &alg.basis(j));
            alg.trace(&prod)
        });
        alg.gram_det = alg.gram.det();
        if alg.gram_det.is_zero() {
            return Err(AlgebraError::DegenerateTraceForm);
        }
        Ok(alg)
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn shape(&self) -> &Shape<F> {
        &self.shape
    }

    pub fn unit(&self) -> CubicElem<F> {
        self.unit.clone()
    }

    /// `s * 1`.
    pub fn scalar(&self, s: F) -> CubicElem<F> {
        self.unit.scale(&s)
    }

    pub fn from_i64(&self, n: i64) -> CubicElem<F> {
        self.scalar(F::from_i64(&self.ctx, n))
    }

    pub fn zero(&self) -> CubicElem<F> {
        CubicElem(std::array::from_fn(|_| F::zero(&self.ctx)))
    }

    pub fn basis(&self, i: usize) -> CubicElem<F> {
        CubicElem(std::array::from_fn(|k| {
            if k == i {
                F::one(&self.ctx)
            } else {
                F::zero(&self.ctx)
            }
        }))
    }

    pub fn mul(&self, a: &CubicElem<F>, b: &CubicElem<F>) -> CubicElem<F> {
        let mut out = self.zero();
        for i in 0..3 {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if b.0[j].is_zero() {
                    continue;
                }
                let coef = a.0[i].clone() * b.0[j].clone();
                out = out.add(&self.sc[i][j].scale(&coef));
            }
        }
        out
    }

    /// Matrix of left multiplication by `a` on the basis.
    pub fn mul_matrix(&self, a: &CubicElem<F>) -> Mat3<F> {
        let cols: [CubicElem<F>; 3] = std::array::from_fn(|j| self.mul(a, &self.basis(j)));
        Mat3::from_fn(|i, j| cols[j].0[i].clone())
    }

    /// `(T, S, N)`: the coefficients of the characteristic polynomial
    /// `x^3 - T x^2 + S x - N` of the multiplication matrix of `a`.
    pub fn char_invariants(&self, a: &CubicElem<F>) -> (F, F, F) {
        let m = self.mul_matrix(a);
        (m.trace(), m.second_invariant(), m.det())
    }

    pub fn trace(&self, a: &CubicElem<F>) -> F {
        let mut t = F::zero(&self.ctx);
        for i in 0..3 {
            t = t + a.0[i].clone() * self.trvec[i].clone();
        }
        t
    }

    pub fn norm(&self, a: &CubicElem<F>) -> F {
        self.mul_matrix(a).det()
    }

    /// Adjoint `a# = a^2 - T(a) a + S(a) * 1`; satisfies `a * a# = N(a) * 1`.
    pub fn sharp(&self, a: &CubicElem<F>) -> CubicElem<F> {
        let (t, s, _) = self.char_invariants(a);
        let a2 = self.mul(a, a);
        a2.sub(&a.scale(&t)).add(&self.scalar(s))
    }

    /// Polarized adjoint `x (cross) y = (x+y)# - x# - y#`.
    pub fn cross(&self, x: &CubicElem<F>, y: &CubicElem<F>) -> CubicElem<F> {
        self.sharp(&x.add(y)).sub(&self.sharp(x)).sub(&self.sharp(y))
    }

    /// `a^{-1} = a# / N(a)` when the norm is nonzero.
    pub fn inv(&self, a: &CubicElem<F>) -> Option<CubicElem<F>> {
        let n = self.norm(a);
        let ni = n.inv()?;
        Some(self.sharp(a).scale(&ni))
    }

    pub fn is_invertible(&self, a: &CubicElem<F>) -> bool {
        !self.norm(a).is_zero()
    }

    /// `Some(s)` iff `a = s * 1`.
    pub fn as_scalar(&self, a: &CubicElem<F>) -> Option<F> {
        let i = self
            .unit
            .0
            .iter()
            .position(|c| !c.is_zero())
            .expect("unit is nonzero");
        let s = a.0[i].div(&self.unit.0[i]).ok()?;
        (*a == self.unit.scale(&s)).then_some(s)
    }

    pub fn trace_gram(&self) -> &Mat3<F> {
        &self.gram
    }

    pub fn gram_det(&self) -> &F {
        &self.gram_det
    }

    /// Square class of the trace-form determinant: the discriminant algebra
    /// of `E` as a class in `F^x / F^{x2}`.
    pub fn discriminant_class(&self) -> Result<SquareClass<F>, FieldError> {
        SquareClass::of(&self.ctx, &self.gram_det)
    }

    /// Trace pairing `Tr(a b)`.
    pub fn trace_pairing(&self, a: &CubicElem<F>, b: &CubicElem<F>) -> F {
        self.trace(&self.mul(a, b))
    }

    /// True if `m` (acting on coordinates) is a unital algebra automorphism.
    pub fn is_automorphism(&self, m: &Mat3<F>) -> bool {
        if m.det().is_zero() {
            return false;
        }
        if m.apply(&self.unit.0) != self.unit.0 {
            return false;
        }
        for i in 0..3 {
            for j in i..3 {
                let lhs = m.apply(&self.sc[i][j].0);
                let rhs = self.mul(
                    &CubicElem(m.apply(&self.basis(i).0)),
                    &CubicElem(m.apply(&self.basis(j).0)),
                );
                if lhs != rhs.0 {
                    return false;
                }
            }
        }
        true
    }

    /// Apply a coordinate matrix to an element.
    pub fn apply_aut(&self, m: &Mat3<F>, a: &CubicElem<F>) -> CubicElem<F> {
        CubicElem(m.apply(&a.0))
    }

    /// The automorphism group of `E` as coordinate matrices.
    ///
    /// * split: the six coordinate permutations;
    /// * quadratic pair: identity and conjugation on the quadratic factor;
    /// * cubic polynomial over `F_p`, `p <= 97`: exhaustive search for roots
    ///   of the cubic in `E` whose power basis is invertible;
    /// * cubic polynomial over `Q`: identity only (no bounded search can be
    ///   exhaustive there, so nothing beyond the guaranteed element is
    ///   claimed).
    pub fn automorphisms(&self) -> Result<Vec<Mat3<F>>, AlgebraError> {
        let one = F::one(&self.ctx);
        match &self.shape {
            Shape::Split => {
                let perms: [[usize; 3]; 6] = [
                    [0, 1, 2],
                    [0, 2, 1],
                    [1, 0, 2],
                    [1, 2, 0],
                    [2, 0, 1],
                    [2, 1, 0],
                ];
                Ok(perms
                    .iter()
                    .map(|p| {
                        // Send basis vector j to basis vector p[j].
                        Mat3::from_fn(|i, j| {
                            if p[j] == i {
                                one.clone()
                            } else {
                                F::zero(&self.ctx)
                            }
                        })
                    })
                    .collect())
            }
            Shape::QuadPair { .. } => {
                let id = Mat3::identity_like(&one);
                let mut conj = id.clone();
                conj.rows[2][2] = -one;
                Ok(vec![id, conj])
            }
            Shape::CubicPoly { c } => {
                let id = Mat3::identity_like(&one);
                let p = match F::describe(&self.ctx) {
                    crate::field::FieldCtx::Fp(p) => p,
                    crate::field::FieldCtx::Q => return Ok(vec![id]),
                };
                if p > 97 {
                    return Err(AlgebraError::AutomorphismSearchTooLarge(97));
                }
                let eval = |x: &CubicElem<F>| -> CubicElem<F> {
                    // x^3 + c2 x^2 + c1 x + c0
                    let x2 = self.mul(x, x);
                    let x3 = self.mul(&x2, x);
                    x3.add(&x2.scale(&c[2]))
                        .add(&x.scale(&c[1]))
                        .add(&self.scalar(c[0].clone()))
                };
                let mut auts = Vec::new();
                let els: Vec<F> = (0..p).map(|v| F::from_i64(&self.ctx, v as i64)).collect();
                for u0 in &els {
                    for u1 in &els {
                        for u2 in &els {
                            let root =
                                CubicElem([u0.clone(), u1.clone(), u2.clone()]);
                            if !eval(&root).is_zero() {
                                continue;
                            }
                            // theta |-> root extends to the matrix with
                            // columns 1, root, root^2; keep it if bijective.
                            let r2 = self.mul(&root, &root);
                            let m = Mat3::from_fn(|i, j| match j {
                                0 => self.unit.0[i].clone(),
                                1 => root.0[i].clone(),
                                _ => r2.0[i].clone(),
                            });
                            if !m.det().is_zero() {
                                debug_assert!(self.is_automorphism(&m));
                                auts.push(m);
                            }
                        }
                    }
                }
                Ok(auts)
            }
        }
    }

    /// Random element with coordinates of bounded height.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R, height: u64) -> CubicElem<F> {
        CubicElem(std::array::from_fn(|_| {
            F::sample(&self.ctx, rng, height)
        }))
    }

    /// Checks the composition rule `(f x y) y + f y# = Tr(f y#) * 1`
    /// (the identity that makes the cube formulas close up).
    pub fn curious_identity_holds(&self, f: &CubicElem<F>, y: &CubicElem<F>) -> bool {
        let ysharp = self.sharp(y);
        let fy_sharp = self.mul(f, &ysharp);
        let lhs = self.mul(&self.cross(f, y), y).add(&fy_sharp);
        let rhs = self.scalar(self.trace(&fy_sharp));
        lhs == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, FpCtx, QCtx, Rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn rat_algebras() -> Vec<CubicAlg<Rat>> {
        vec![
            CubicAlg::<Rat>::split(&QCtx),
            CubicAlg::<Rat>::quad_pair(&QCtx, q(5)).unwrap(),
            CubicAlg::<Rat>::cubic_poly(&QCtx, [q(-2), q(0), q(0)]).unwrap(),
            CubicAlg::<Rat>::cubic_poly(&QCtx, [q(-1), q(-1), q(0)]).unwrap(),
        ]
    }

    #[test]
    fn split_char_invariants_and_sharp() {
        let alg = CubicAlg::<Rat>::split(&QCtx);
        let a = CubicElem([q(2), q(3), q(5)]);
        let (t, s, n) = alg.char_invariants(&a);
        assert_eq!((t, s, n), (q(10), q(31), q(30)));
        assert_eq!(alg.sharp(&a), CubicElem([q(15), q(10), q(6)]));
        // a * a# = N(a) * 1 and (a#)# = N(a) a.
        assert_eq!(alg.mul(&a, &alg.sharp(&a)), alg.scalar(q(30)));
        assert_eq!(alg.sharp(&alg.sharp(&a)), a.scale(&q(30)));
    }

    #[test]
    fn split_cross_product() {
        let alg = CubicAlg::<Rat>::split(&QCtx);
        let e1 = alg.basis(0);
        let e2 = alg.basis(1);
        assert_eq!(alg.cross(&e1, &e2), alg.basis(2));
    }

    #[test]
    fn cubic_poly_theta_invariants() {
        // x^3 - 2: theta has (T, S, N) = (0, 0, 2) and theta# = theta^2.
        let alg = CubicAlg::<Rat>::cubic_poly(&QCtx, [q(-2), q(0), q(0)]).unwrap();
        let theta = alg.basis(1);
        assert_eq!(alg.char_invariants(&theta), (q(0), q(0), q(2)));
        assert_eq!(alg.sharp(&theta), alg.basis(2));
    }

    #[test]
    fn discriminant_classes() {
        let split = CubicAlg::<Rat>::split(&QCtx);
        assert!(split.discriminant_class().unwrap().is_trivial(&QCtx));

        let qp = CubicAlg::<Rat>::quad_pair(&QCtx, q(5)).unwrap();
        assert_eq!(qp.discriminant_class().unwrap().rep(), &q(5));

        // x^3 - 2 has discriminant -108, of square class -3.
        let cp = CubicAlg::<Rat>::cubic_poly(&QCtx, [q(-2), q(0), q(0)]).unwrap();
        assert_eq!(cp.gram_det(), &q(-108));
        assert_eq!(cp.discriminant_class().unwrap().rep(), &q(-3));
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(matches!(
            CubicAlg::<Rat>::quad_pair(&QCtx, q(0)),
            Err(AlgebraError::ZeroRadicand)
        ));
        // x^3 has a triple root.
        assert!(matches!(
            CubicAlg::<Rat>::cubic_poly(&QCtx, [q(0), q(0), q(0)]),
            Err(AlgebraError::NotSeparable)
        ));
        // x^3 - 3x + 2 = (x-1)^2 (x+2).
        assert!(matches!(
            CubicAlg::<Rat>::cubic_poly(&QCtx, [q(2), q(-3), q(0)]),
            Err(AlgebraError::NotSeparable)
        ));
    }

    #[test]
    fn adjoint_identities_all_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for alg in rat_algebras() {
            for _ in 0..50 {
                let a = alg.sample(&mut rng, 9);
                let n = alg.norm(&a);
                assert_eq!(alg.mul(&a, &alg.sharp(&a)), alg.scalar(n.clone()));
                assert_eq!(alg.sharp(&alg.sharp(&a)), a.scale(&n));
                // Cayley-Hamilton for the element itself.
                let (t, s, nn) = alg.char_invariants(&a);
                let a2 = alg.mul(&a, &a);
                let a3 = alg.mul(&a2, &a);
                let ch = a3
                    .sub(&a2.scale(&t))
                    .add(&a.scale(&s))
                    .sub(&alg.scalar(nn));
                assert!(ch.is_zero());
            }
        }
    }

    #[test]
    fn curious_identity_fuzz() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for alg in rat_algebras() {
            for _ in 0..50 {
                let f = alg.sample(&mut rng, 9);
                let y = alg.sample(&mut rng, 9);
                assert!(alg.curious_identity_holds(&f, &y));
            }
        }
        let ctx = FpCtx::new(7).unwrap();
        let alg = CubicAlg::<Fp>::cubic_poly(&ctx, [ctx.el(-2), ctx.el(0), ctx.el(0)]).unwrap();
        for _ in 0..200 {
            let f = alg.sample(&mut rng, 0);
            let y = alg.sample(&mut rng, 0);
            assert!(alg.curious_identity_holds(&f, &y));
        }
    }

    #[test]
    fn norm_and_trace_multiplicativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for alg in rat_algebras() {
            for _ in 0..30 {
                let a = alg.sample(&mut rng, 9);
                let b = alg.sample(&mut rng, 9);
                assert_eq!(
                    alg.norm(&alg.mul(&a, &b)),
                    alg.norm(&a) * alg.norm(&b)
                );
                assert_eq!(
                    alg.trace(&a.add(&b)),
                    alg.trace(&a) + alg.trace(&b)
                );
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let split = CubicAlg::<Rat>::split(&QCtx);
        let auts = split.automorphisms().unwrap();
        assert_eq!(auts.len(), 6);
        for m in &auts {
            assert!(split.is_automorphism(m));
        }

        let qp = CubicAlg::<Rat>::quad_pair(&QCtx, q(5)).unwrap();
        let auts = qp.automorphisms().unwrap();
        assert_eq!(auts.len(), 2);
        for m in &auts {
            assert!(qp.is_automorphism(m));
        }

        // x^3 - x - 1 over Q (discriminant -23): identity only.
        let cp = CubicAlg::<Rat>::cubic_poly(&QCtx, [q(-1), q(-1), q(0)]).unwrap();
        assert_eq!(cp.automorphisms().unwrap().len(), 1);

        // x^3 - 2 over F_7 is irreducible (2 is not a cube mod 7): the
        // algebra is the field F_343 with cyclic automorphism group of
        // order 3.
        let f7 = FpCtx::new(7).unwrap();
        let cp7 =
            CubicAlg::<Fp>::cubic_poly(&f7, [f7.el(-2), f7.el(0), f7.el(0)]).unwrap();
        let auts = cp7.automorphisms().unwrap();
        assert_eq!(auts.len(), 3);
        for m in &auts {
            assert!(cp7.is_automorphism(m));
        }

        // x^3 - 2 over F_5 splits as (x - 3)(x^2 + 3x + 4) with the
        // quadratic irreducible: F_5 x F_25 has 2 automorphisms.
        let f5 = FpCtx::new(5).unwrap();
        let cp5 =
            CubicAlg::<Fp>::cubic_poly(&f5, [f5.el(-2), f5.el(0), f5.el(0)]).unwrap();
        assert_eq!(cp5.automorphisms().unwrap().len(), 2);
    }

    #[test]
    fn as_scalar_detects_multiples_of_one() {
        for alg in rat_algebras() {
            assert_eq!(alg.as_scalar(&alg.scalar(q(7))), Some(q(7)));
            assert_eq!(alg.as_scalar(&alg.zero()), Some(q(0)));
            // basis(1) alone is never a multiple of the unit in these
            // presentations.
            assert_eq!(alg.as_scalar(&alg.basis(1)), None);
        }
    }
}
