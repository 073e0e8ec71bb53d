//! Rank-2 twisted composition algebras and their correspondence with cubes.
//!
//! A rank-2 twisted composition algebra over the cubic algebra `E` is the
//! free module `C = E^2` equipped with
//!
//! * an `E`-quadratic form `Q : C -> E` (so `Q(lambda v) = lambda^2 Q(v)`),
//! * an `F`-quadratic map `beta : C -> C` that is sharp-semilinear:
//!   `beta(lambda v) = lambda# beta(v)`,
//!
//! subject to `Q(beta(v)) = Q(v)#` and `b_Q(v, beta(v))` scalar, where
//! `b_Q(v, w) = Q(v + w) - Q(v) - Q(w)`. The scalar `N(v)` with
//! `b_Q(v, beta(v)) = N(v) * 1` is the norm of `v`.
//!
//! Every twisted cube `(a, e, f, b)` gives such a structure on `E^2` by the
//! closed forms
//!
//! ```text
//! Q(x, y)    = (e# - a f) x^2 + (-a b * 1 - 2 e f + Tr(e f) * 1) x y
//!              + (f# - b e) y^2
//! beta(x, y) = (-e x# - b y# - (f x) x y,   a x# + f y# + (e y) x x)
//! ```
//!
//! (`x` between parenthesized factors is the cross product of `E`), and
//! this assignment is the bijection between cubes and composition algebras
//! with a chosen good basis. [`CompAlg2`] stores the cube parameters of the
//! current basis; [`CompAlg2::change_basis`] transports the structure to
//! another basis, recovers the new parameters by reading `beta` off the
//! basis vectors, and verifies the result against the transported maps on a
//! determining set of points, rejecting bases in which the structure does
//! not take the cube shape.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cube::Cube;
use crate::emat::{Mat2E, Vec2E};
use crate::etale::{AlgebraError, CubicAlg, CubicElem};
use crate::field::{FieldError, Scalar, SquareClass};
use crate::linalg::Mat3;
use crate::quad::QuadExt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompError {
    #[error("basis change matrix is not invertible over E")]
    BasisNotInvertible,
    #[error("structure does not take the cube shape in this basis: {0}")]
    NotGoodBasis(String),
    #[error("operation requires a reduced presentation (a = 1, e = 0)")]
    NotReduced,
    #[error("element of E is not invertible")]
    NotInvertibleElement,
    #[error("cube is degenerate (Delta = 0)")]
    DegenerateCube,
    #[error("norm condition N_E(e) = N_K(nu) fails")]
    NormMismatch,
    #[error("no vector with nonzero discriminant found")]
    WitnessSearchExhausted,
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Field(#[from] FieldError),
}

/// A rank-2 twisted composition algebra presented by cube parameters in the
/// current basis of `E^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompAlg2<F: Scalar> {
    params: Cube<F>,
}

impl<F: Scalar> CompAlg2<F> {
    /// The bijection from cubes: the structure on `E^2` defined by the
    /// closed forms above.
    pub fn from_cube(v: Cube<F>) -> Self {
        CompAlg2 { params: v }
    }

    /// The distinguished algebra `C_E`, image of the base point
    /// `(1, 0, 0, -1)`: `Q(x, y) = xy`, `beta(x, y) = (y#, x#)`,
    /// `N(x, y) = N_E(x) + N_E(y)`.
    pub fn distinguished(alg: &CubicAlg<F>) -> Self {
        CompAlg2::from_cube(Cube::base_point(alg))
    }

    /// The cube parameters of the current basis (inverse of
    /// [`CompAlg2::from_cube`]).
    pub fn cube(&self) -> &Cube<F> {
        &self.params
    }

    /// Recompute the cube parameters from `beta` on the basis vectors:
    /// `beta(e1) = (-e, a * 1)` and `beta(e2) = (-b * 1, f)`. Always equals
    /// [`CompAlg2::cube`]; exposed so that the read-off itself is testable.
    pub fn read_off_cube(&self, alg: &CubicAlg<F>) -> Cube<F> {
        let b1 = self.beta(alg, &basis1(alg));
        let b2 = self.beta(alg, &basis2(alg));
        let a = alg.as_scalar(&b1.y).expect("cube structure: beta(e1).y is scalar");
        let b = alg.as_scalar(&b2.x).expect("cube structure: beta(e2).x is scalar");
        Cube::new(a, b1.x.neg(), b2.y, -b)
    }

    /// Coefficients `(Q(e1), b_Q(e1, e2), Q(e2))` of the quadratic form.
    /// The middle coefficient is a general element of `E`; it is scalar
    /// exactly in good bases of reduced type.
    pub fn q_coeffs(&self, alg: &CubicAlg<F>) -> [CubicElem<F>; 3] {
        let p = &self.params;
        let ef = alg.mul(&p.e, &p.f);
        let qa = alg.sharp(&p.e).sub(&p.f.scale(&p.a));
        let qb = alg
            .scalar(-(p.a.clone() * p.b.clone()) + alg.trace(&ef))
            .sub(&ef.scale(&F::from_i64(alg.ctx(), 2)));
        let qc = alg.sharp(&p.f).sub(&p.e.scale(&p.b));
        [qa, qb, qc]
    }

    /// `Q(v)` by the closed form.
    pub fn q(&self, alg: &CubicAlg<F>, v: &Vec2E<F>) -> CubicElem<F> {
        let [qa, qb, qc] = self.q_coeffs(alg);
        let xx = alg.mul(&v.x, &v.x);
        let xy = alg.mul(&v.x, &v.y);
        let yy = alg.mul(&v.y, &v.y);
        alg.mul(&qa, &xx)
            .add(&alg.mul(&qb, &xy))
            .add(&alg.mul(&qc, &yy))
    }

    /// Polarization `b_Q(v, w) = Q(v + w) - Q(v) - Q(w)`.
    pub fn bq(&self, alg: &CubicAlg<F>, v: &Vec2E<F>, w: &Vec2E<F>) -> CubicElem<F> {
        self.q(alg, &v.add(w))
            .sub(&self.q(alg, v))
            .sub(&self.q(alg, w))
    }

    /// `beta(v)` by the closed form.
    pub fn beta(&self, alg: &CubicAlg<F>, v: &Vec2E<F>) -> Vec2E<F> {
        let p = &self.params;
        let xs = alg.sharp(&v.x);
        let ys = alg.sharp(&v.y);
        let fx_cross_y = alg.cross(&alg.mul(&p.f, &v.x), &v.y);
        let ey_cross_x = alg.cross(&alg.mul(&p.e, &v.y), &v.x);
        Vec2E::new(
            alg.mul(&p.e, &xs)
                .neg()
                .sub(&ys.scale(&p.b))
                .sub(&fx_cross_y),
            xs.scale(&p.a).add(&alg.mul(&p.f, &ys)).add(&ey_cross_x),
        )
    }

    /// The norm `N(v)`, the scalar with `b_Q(v, beta(v)) = N(v) * 1`.
    pub fn norm(&self, alg: &CubicAlg<F>, v: &Vec2E<F>) -> F {
        let bv = self.beta(alg, v);
        alg.as_scalar(&self.bq(alg, v, &bv))
            .expect("cube structure: b_Q(v, beta(v)) is scalar")
    }

    /// Pointwise discriminant `Delta(v) = N(v)^2 - 4 N_E(Q(v))`.
    pub fn disc_at(&self, alg: &CubicAlg<F>, v: &Vec2E<F>) -> F {
        let n = self.norm(alg, v);
        n.sq() - F::from_i64(alg.ctx(), 4) * alg.norm(&self.q(alg, v))
    }

    /// The square class of `Delta(v)` over vectors with `Delta(v) != 0`.
    /// This is the discriminant class of the algebra, and it matches the
    /// class of the cube invariant.
    pub fn disc_class(&self, alg: &CubicAlg<F>) -> Result<SquareClass<F>, CompError> {
        let v = self.disc_witness(alg)?;
        Ok(SquareClass::of(alg.ctx(), &self.disc_at(alg, &v))?)
    }

    /// Deterministic search for `v` with `Delta(v) != 0`.
    pub fn disc_witness(&self, alg: &CubicAlg<F>) -> Result<Vec2E<F>, CompError> {
        let mut candidates: Vec<Vec2E<F>> = vec![basis1(alg), basis2(alg)];
        for i in 0..3 {
            candidates.push(Vec2E::new(alg.basis(i), alg.zero()));
            candidates.push(Vec2E::new(alg.zero(), alg.basis(i)));
            for j in 0..3 {
                candidates.push(Vec2E::new(alg.basis(i), alg.basis(j)));
            }
        }
        candidates.push(Vec2E::new(alg.unit(), alg.unit()));
        for v in candidates {
            if v.is_zero() {
                continue;
            }
            if !self.disc_at(alg, &v).is_zero() {
                return Ok(v);
            }
        }
        let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0xD15C);
        for round in 0..6u32 {
            let h = 2u64 << round;
            for _ in 0..200 {
                let v = Vec2E::new(alg.sample(&mut rng, h), alg.sample(&mut rng, h));
                if !v.is_zero() && !self.disc_at(alg, &v).is_zero() {
                    return Ok(v);
                }
            }
        }
        Err(CompError::WitnessSearchExhausted)
    }

    /// Transport the structure to a new basis. `h` maps old coordinates to
    /// new coordinates, so the transported maps are `Q' = Q o h^{-1}` and
    /// `beta' = h o beta o h^{-1}`. The new cube parameters are read off
    /// `beta'` on the basis vectors and then verified against the
    /// transported maps on a determining set (the six `F`-basis vectors of
    /// `E^2` and their pairwise sums, which pin down any pair of
    /// `F`-quadratic maps away from characteristic 2).
    pub fn change_basis(
        &self,
        alg: &CubicAlg<F>,
        h: &Mat2E<F>,
    ) -> Result<CompAlg2<F>, CompError> {
        let hinv = h.inverse(alg).ok_or(CompError::BasisNotInvertible)?;
        let qp = |v: &Vec2E<F>| self.q(alg, &hinv.apply(alg, v));
        let bp = |v: &Vec2E<F>| h.apply(alg, &self.beta(alg, &hinv.apply(alg, v)));

        let b1 = bp(&basis1(alg));
        let b2 = bp(&basis2(alg));
        let a = alg
            .as_scalar(&b1.y)
            .ok_or_else(|| CompError::NotGoodBasis("beta(e1).y is not scalar".into()))?;
        let b = alg
            .as_scalar(&b2.x)
            .ok_or_else(|| CompError::NotGoodBasis("beta(e2).x is not scalar".into()))?;
        let cand = CompAlg2::from_cube(Cube::new(a, b1.x.neg(), b2.y, -b));

        for v in determining_set(alg) {
            if cand.q(alg, &v) != qp(&v) {
                return Err(CompError::NotGoodBasis(
                    "quadratic form does not take the cube shape".into(),
                ));
            }
            if cand.beta(alg, &v) != bp(&v) {
                return Err(CompError::NotGoodBasis(
                    "beta does not take the cube shape".into(),
                ));
            }
        }
        Ok(cand)
    }

    /// Conjugate the structure by an algebra automorphism acting
    /// diagonally on `E^2`: the image of the cube `(a, e, f, b)` under
    /// `sigma` is `(a, sigma e, sigma f, b)`, and the structure maps
    /// conjugate accordingly.
    pub fn apply_aut(&self, alg: &CubicAlg<F>, m: &Mat3<F>) -> CompAlg2<F> {
        let p = &self.params;
        CompAlg2::from_cube(Cube::new(
            p.a.clone(),
            alg.apply_aut(m, &p.e),
            alg.apply_aut(m, &p.f),
            p.b.clone(),
        ))
    }

    /// For a reduced presentation (`a = 1`, `e = 0`) and a new witness
    /// `w = (x, y)`, the transition matrix whose columns are `w` and
    /// `beta(w)`; its determinant is the scalar
    /// `N_E(x) - N_E(y) N(e1) - Tr(Q(e1) x y#)`. When invertible, changing
    /// basis by its inverse lands in the reduced presentation with
    /// parameters `(1, 0, -Q(w), -N(w))`.
    pub fn witness_transition(
        &self,
        alg: &CubicAlg<F>,
        w: &Vec2E<F>,
    ) -> Result<Mat2E<F>, CompError> {
        if !self.params.is_reduced(alg) {
            return Err(CompError::NotReduced);
        }
        let q1 = self.q(alg, &basis1(alg));
        let n1 = self.norm(alg, &basis1(alg));
        let xs = alg.sharp(&w.x);
        let ys = alg.sharp(&w.y);
        // beta(w) via the composition identity in the basis (e1, beta(e1)):
        // (y# N(e1) - (-Q(e1) x) x y, x# - Q(e1) y#).
        let col2 = Vec2E::new(
            ys.scale(&n1)
                .sub(&alg.cross(&alg.mul(&q1, &w.x).neg(), &w.y)),
            xs.sub(&alg.mul(&q1, &ys)),
        );
        Ok(Mat2E::new([
            [w.x.clone(), col2.x],
            [w.y.clone(), col2.y],
        ]))
    }

    pub fn to_json(&self, alg: &CubicAlg<F>) -> serde_json::Value {
        let [qa, qb, qc] = self.q_coeffs(alg);
        serde_json::json!({
            "cube": self.params.to_json(),
            "q": { "xx": qa.to_json(), "xy": qb.to_json(), "yy": qc.to_json() },
            "beta_e1": self.beta(alg, &basis1(alg)).to_json(),
            "beta_e2": self.beta(alg, &basis2(alg)).to_json(),
        })
    }
}

/// `e1 = (1, 0)` in `E^2`.
pub fn basis1<F: Scalar>(alg: &CubicAlg<F>) -> Vec2E<F> {
    Vec2E::new(alg.unit(), alg.zero())
}

/// `e2 = (0, 1)` in `E^2`.
pub fn basis2<F: Scalar>(alg: &CubicAlg<F>) -> Vec2E<F> {
    Vec2E::new(alg.zero(), alg.unit())
}

/// The 21 points that pin down an `F`-quadratic map on `E^2`: the six
/// `F`-basis vectors and their 15 pairwise sums.
fn determining_set<F: Scalar>(alg: &CubicAlg<F>) -> Vec<Vec2E<F>> {
    let mut basis: Vec<Vec2E<F>> = Vec::with_capacity(6);
    for i in 0..3 {
        basis.push(Vec2E::new(alg.basis(i), alg.zero()));
    }
    for i in 0..3 {
        basis.push(Vec2E::new(alg.zero(), alg.basis(i)));
    }
    let mut pts = basis.clone();
    for i in 0..6 {
        for j in (i + 1)..6 {
            pts.push(basis[i].add(&basis[j]));
        }
    }
    pts
}

// ---------------------------------------------------------------------------
// Axiom checking against arbitrary structure maps

/// A reproducible witness that one of the defining axioms fails.
#[derive(Debug, Clone)]
pub struct Counterexample<F: Scalar> {
    pub axiom: &'static str,
    pub v: Vec2E<F>,
    pub lambda: Option<CubicElem<F>>,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
}

impl<F: Scalar> Counterexample<F> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "axiom": self.axiom,
            "v": self.v.to_json(),
            "lambda": self.lambda.as_ref().map(|l| l.to_json()),
            "lhs": self.lhs,
            "rhs": self.rhs,
        })
    }
}

/// Check the defining axioms of a twisted composition algebra for
/// arbitrary structure maps given as evaluators. Returns the first
/// counterexample found, so a failure can be replayed exactly.
///
/// Axioms, per random `v` and scaling `lambda`:
/// 1. `Q(lambda v) = lambda^2 Q(v)`;
/// 2. `beta(lambda v) = lambda# beta(v)`;
/// 3. `Q(beta(v)) = Q(v)#`;
/// 4. `b_Q(v, beta(v))` is a scalar multiple of `1`.
pub fn check_axioms<F: Scalar, R: Rng + ?Sized>(
    alg: &CubicAlg<F>,
    q: &dyn Fn(&Vec2E<F>) -> CubicElem<F>,
    beta: &dyn Fn(&Vec2E<F>) -> Vec2E<F>,
    rng: &mut R,
    samples: usize,
    height: u64,
) -> Result<(), Box<Counterexample<F>>> {
    let bq = |v: &Vec2E<F>, w: &Vec2E<F>| q(&v.add(w)).sub(&q(v)).sub(&q(w));
    for _ in 0..samples {
        let v = Vec2E::new(alg.sample(rng, height), alg.sample(rng, height));
        let lambda = alg.sample(rng, height);
        let lv = Vec2E::new(alg.mul(&lambda, &v.x), alg.mul(&lambda, &v.y));

        let lhs = q(&lv);
        let rhs = alg.mul(&alg.mul(&lambda, &lambda), &q(&v));
        if lhs != rhs {
            return Err(Box::new(Counterexample {
                axiom: "q_quadratic_over_e",
                v,
                lambda: Some(lambda),
                lhs: lhs.to_json(),
                rhs: rhs.to_json(),
            }));
        }

        let lhs = beta(&lv);
        let ls = alg.sharp(&lambda);
        let bv = beta(&v);
        let rhs = Vec2E::new(alg.mul(&ls, &bv.x), alg.mul(&ls, &bv.y));
        if lhs != rhs {
            return Err(Box::new(Counterexample {
                axiom: "beta_sharp_semilinear",
                v,
                lambda: Some(lambda),
                lhs: lhs.to_json(),
                rhs: rhs.to_json(),
            }));
        }

        let lhs = q(&bv);
        let rhs = alg.sharp(&q(&v));
        if lhs != rhs {
            return Err(Box::new(Counterexample {
                axiom: "q_of_beta_is_sharp",
                v,
                lambda: None,
                lhs: lhs.to_json(),
                rhs: rhs.to_json(),
            }));
        }

        let pairing = bq(&v, &bv);
        if alg.as_scalar(&pairing).is_none() {
            let j = pairing.to_json();
            return Err(Box::new(Counterexample {
                axiom: "norm_pairing_is_scalar",
                v,
                lambda: None,
                lhs: j.clone(),
                rhs: j,
            }));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Tits-style presentation of reduced nondegenerate cubes

/// A pair `(e, nu)` with `e` in `E` and `nu` in the quadratic extension
/// `K = F(sqrt Delta)`, subject to `N_E(e) = N_K(nu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsPair<F: Scalar> {
    pub e: CubicElem<F>,
    pub nu: QuadExt<F>,
}

impl<F: Scalar> TitsPair<F> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "e": self.e.to_json(), "nu": self.nu.to_json() })
    }

    pub fn from_json<C>(ctx: &C, v: &serde_json::Value) -> Result<Self, FieldError>
    where
        F: Scalar<Ctx = C>,
    {
        let obj = v.as_object().ok_or_else(|| {
            FieldError::Encoding(format!("expected object with e, nu, got {v}"))
        })?;
        let get = |k: &str| {
            obj.get(k)
                .ok_or_else(|| FieldError::Encoding(format!("missing key '{k}'")))
        };
        Ok(TitsPair {
            e: CubicElem::from_json(ctx, get("e")?)?,
            nu: QuadExt::from_json(ctx, get("nu")?)?,
        })
    }
}

/// Present a reduced nondegenerate cube `(1, 0, f, b)` with `f` invertible
/// as the pair `(e, nu) = (-f, (-b - sqrt Delta) / 2)` over
/// `K = F(sqrt Delta)`, `Delta = b^2 + 4 N(f)`. The norm condition
/// `N_K(nu) = (b^2 - Delta)/4 = -N(f) = N_E(e)` holds by construction and
/// is asserted.
pub fn to_tits<F: Scalar>(alg: &CubicAlg<F>, v: &Cube<F>) -> Result<TitsPair<F>, CompError> {
    if !v.is_reduced(alg) {
        return Err(CompError::NotReduced);
    }
    if !alg.is_invertible(&v.f) {
        return Err(CompError::NotInvertibleElement);
    }
    let ctx = alg.ctx();
    let delta = v.b.sq() + F::from_i64(ctx, 4) * alg.norm(&v.f);
    if delta.is_zero() {
        return Err(CompError::DegenerateCube);
    }
    let half = F::from_i64(ctx, 2).inv().expect("2 is invertible");
    let nu = QuadExt::new(
        -v.b.clone() * half.clone(),
        -half,
        delta,
    );
    let pair = TitsPair { e: v.f.neg(), nu };
    debug_assert_eq!(alg.norm(&pair.e), pair.nu.norm());
    Ok(pair)
}

/// Rebuild a reduced cube from a pair `(e, nu)`: validates the norm
/// condition `N_E(e) = N_K(nu)` and returns `(1, 0, -e, -Tr_K(nu))`.
pub fn from_tits<F: Scalar>(alg: &CubicAlg<F>, p: &TitsPair<F>) -> Result<Cube<F>, CompError> {
    if alg.norm(&p.e) != p.nu.norm() {
        return Err(CompError::NormMismatch);
    }
    Ok(Cube::new(
        F::one(alg.ctx()),
        alg.zero(),
        p.e.neg(),
        -p.nu.trace(),
    ))
}
