//! Degree-3 Jordan algebras and the Springer decomposition.
//!
//! Two families are implemented exactly:
//!
//! * [`JordanKind::FullMatrix`]: all of `M_3(F)` under `a o b = (ab+ba)/2`;
//! * [`JordanKind::Hermitian`]: 3x3 matrices over `K = F(sqrt d)` fixed by
//!   conjugate transpose (diagonal entries in `F`).
//!
//! In both, the diagonal is a split etale cubic `E = F^3`, and its trace
//! orthogonal complement `C` (the off-diagonal part) carries a rank-2
//! twisted composition structure read off the adjoint: for `v` in `C`,
//!
//! ```text
//! v# = (-Q(v)) on the diagonal  +  beta(v) off the diagonal,
//! ```
//!
//! with the `E`-module action `lambda . v = -(i(lambda) x v)` given by the
//! Jordan cross product against the embedded diagonal. Reducing `C` at a
//! witness vector `w` produces the cube `(1, 0, -Q(w), -N(w))`, which is
//! checked coefficient-exactly against the closed-form structure of that
//! cube on a determining set of points.

use rand::Rng;
use thiserror::Error;

use crate::comp::CompAlg2;
use crate::cube::Cube;
use crate::emat::Vec2E;
use crate::etale::{CubicAlg, CubicElem};
use crate::field::{FieldError, Scalar, SquareClass};
use crate::linalg::Mat3;
use crate::quad::QuadExt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JordanError {
    #[error("radicand must be nonzero")]
    ZeroRadicand,
    #[error("matrix is not Hermitian with scalar diagonal")]
    NotHermitian,
    #[error("element does not lie in the stated component")]
    WrongComponent,
    #[error("value expected in the base field but has a radical part")]
    NotBase,
    #[error("no witness with nonzero discriminant found")]
    WitnessSearchExhausted,
    #[error("composition structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("{0}")]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JordanKind<F: Scalar> {
    FullMatrix,
    Hermitian { d: F },
}

/// An element, stored as the underlying associative matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JElem<F: Scalar> {
    Full(Mat3<F>),
    Herm(Mat3<QuadExt<F>>),
}

#[derive(Debug, Clone)]
pub struct JordanAlg<F: Scalar> {
    ctx: F::Ctx,
    kind: JordanKind<F>,
}

impl<F: Scalar> JordanAlg<F> {
    pub fn full_matrix(ctx: &F::Ctx) -> Self {
        JordanAlg {
            ctx: ctx.clone(),
            kind: JordanKind::FullMatrix,
        }
    }

    pub fn hermitian(ctx: &F::Ctx, d: F) -> Result<Self, JordanError> {
        if d.is_zero() {
            return Err(JordanError::ZeroRadicand);
        }
        Ok(JordanAlg {
            ctx: ctx.clone(),
            kind: JordanKind::Hermitian { d },
        })
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn kind(&self) -> &JordanKind<F> {
        &self.kind
    }

    /// The split cubic algebra sitting on the diagonal.
    pub fn diagonal_algebra(&self) -> CubicAlg<F> {
        CubicAlg::split(&self.ctx)
    }

    fn herm_d(&self) -> Option<&F> {
        match &self.kind {
            JordanKind::FullMatrix => None,
            JordanKind::Hermitian { d } => Some(d),
        }
    }

    /// Validate membership: Hermitian elements must equal their conjugate
    /// transpose and have diagonal in the base field.
    pub fn validate(&self, a: &JElem<F>) -> Result<(), JordanError> {
        match (a, &self.kind) {
            (JElem::Full(_), JordanKind::FullMatrix) => Ok(()),
            (JElem::Herm(m), JordanKind::Hermitian { d }) => {
                if *m != m.conj_transpose() {
                    return Err(JordanError::NotHermitian);
                }
                for i in 0..3 {
                    if !m.rows[i][i].is_base() {
                        return Err(JordanError::NotHermitian);
                    }
                    for j in 0..3 {
                        if m.rows[i][j].d() != d {
                            return Err(JordanError::NotHermitian);
                        }
                    }
                }
                Ok(())
            }
            _ => Err(JordanError::WrongComponent),
        }
    }

    pub fn zero(&self) -> JElem<F> {
        let z = F::zero(&self.ctx);
        match self.herm_d() {
            None => JElem::Full(Mat3::zero_like(&z)),
            Some(d) => JElem::Herm(Mat3::zero_like(&QuadExt::from_scalar(z, d.clone()))),
        }
    }

    pub fn unit(&self) -> JElem<F> {
        let o = F::one(&self.ctx);
        match self.herm_d() {
            None => JElem::Full(Mat3::identity_like(&o)),
            Some(d) => JElem::Herm(Mat3::identity_like(&QuadExt::from_scalar(o, d.clone()))),
        }
    }

    pub fn add(&self, a: &JElem<F>, b: &JElem<F>) -> JElem<F> {
        match (a, b) {
            (JElem::Full(x), JElem::Full(y)) => JElem::Full(x.add(y)),
            (JElem::Herm(x), JElem::Herm(y)) => JElem::Herm(x.add(y)),
            _ => panic!("mixed Jordan components"),
        }
    }

    pub fn sub(&self, a: &JElem<F>, b: &JElem<F>) -> JElem<F> {
        match (a, b) {
            (JElem::Full(x), JElem::Full(y)) => JElem::Full(x.sub(y)),
            (JElem::Herm(x), JElem::Herm(y)) => JElem::Herm(x.sub(y)),
            _ => panic!("mixed Jordan components"),
        }
    }

    pub fn neg(&self, a: &JElem<F>) -> JElem<F> {
        match a {
            JElem::Full(x) => JElem::Full(x.neg()),
            JElem::Herm(x) => JElem::Herm(x.neg()),
        }
    }

    pub fn scale(&self, a: &JElem<F>, s: &F) -> JElem<F> {
        match a {
            JElem::Full(x) => JElem::Full(x.scale(s)),
            JElem::Herm(x) => {
                let d = x.rows[0][0].d().clone();
                JElem::Herm(x.scale(&QuadExt::from_scalar(s.clone(), d)))
            }
        }
    }

    fn assoc_mul(&self, a: &JElem<F>, b: &JElem<F>) -> JElem<F> {
        match (a, b) {
            (JElem::Full(x), JElem::Full(y)) => JElem::Full(x.mul(y)),
            (JElem::Herm(x), JElem::Herm(y)) => JElem::Herm(x.mul(y)),
            _ => panic!("mixed Jordan components"),
        }
    }

    /// Jordan product `a o b = (ab + ba) / 2`.
    pub fn jordan_mul(&self, a: &JElem<F>, b: &JElem<F>) -> JElem<F> {
        let half = F::from_i64(&self.ctx, 2).inv().expect("2 invertible");
        self.scale(
            &self.add(&self.assoc_mul(a, b), &self.assoc_mul(b, a)),
            &half,
        )
    }

    fn base_value(&self, x: &QuadExt<F>) -> F {
        debug_assert!(x.is_base(), "invariant of a Hermitian matrix must be in F");
        x.x().clone()
    }

    /// Generic trace `T(a)`.
    pub fn trace(&self, a: &JElem<F>) -> F {
        match a {
            JElem::Full(m) => m.trace(),
            JElem::Herm(m) => self.base_value(&m.trace()),
        }
    }

    /// Quadratic invariant `S(a)` (sum of principal 2x2 minors).
    pub fn second_invariant(&self, a: &JElem<F>) -> F {
        match a {
            JElem::Full(m) => m.second_invariant(),
            JElem::Herm(m) => self.base_value(&m.second_invariant()),
        }
    }

    /// Generic norm `N(a)` (determinant).
    pub fn norm(&self, a: &JElem<F>) -> F {
        match a {
            JElem::Full(m) => m.det(),
            JElem::Herm(m) => self.base_value(&m.det()),
        }
    }

    /// Adjoint `a#` (classical adjugate; equals `a^2 - T(a) a + S(a) 1`).
    pub fn sharp(&self, a: &JElem<F>) -> JElem<F> {
        match a {
            JElem::Full(m) => JElem::Full(m.adjugate()),
            JElem::Herm(m) => JElem::Herm(m.adjugate()),
        }
    }

    /// Polarized adjoint `a x b = (a+b)# - a# - b#`.
    pub fn cross(&self, a: &JElem<F>, b: &JElem<F>) -> JElem<F> {
        self.sub(
            &self.sub(&self.sharp(&self.add(a, b)), &self.sharp(a)),
            &self.sharp(b),
        )
    }

    /// Trace bilinear form `T(a o b)`.
    pub fn trace_form(&self, a: &JElem<F>, b: &JElem<F>) -> F {
        self.trace(&self.jordan_mul(a, b))
    }

    /// An `F`-basis of the algebra (9 elements).
    pub fn basis(&self) -> Vec<JElem<F>> {
        let z = F::zero(&self.ctx);
        let o = F::one(&self.ctx);
        match self.herm_d() {
            None => {
                let mut out = Vec::with_capacity(9);
                for i in 0..3 {
                    for j in 0..3 {
                        let mut m = Mat3::zero_like(&z);
                        m.rows[i][j] = o.clone();
                        out.push(JElem::Full(m));
                    }
                }
                out
            }
            Some(d) => {
                let qz = QuadExt::from_scalar(z.clone(), d.clone());
                let mut out = Vec::with_capacity(9);
                for i in 0..3 {
                    let mut m = Mat3::zero_like(&qz);
                    m.rows[i][i] = QuadExt::from_scalar(o.clone(), d.clone());
                    out.push(JElem::Herm(m));
                }
                for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                    // E_ij + E_ji and sqrt(d) (E_ij - E_ji).
                    let mut sym = Mat3::zero_like(&qz);
                    sym.rows[i][j] = QuadExt::from_scalar(o.clone(), d.clone());
                    sym.rows[j][i] = QuadExt::from_scalar(o.clone(), d.clone());
                    out.push(JElem::Herm(sym));
                    let mut skew = Mat3::zero_like(&qz);
                    skew.rows[i][j] = QuadExt::new(z.clone(), o.clone(), d.clone());
                    skew.rows[j][i] = QuadExt::new(z.clone(), -o.clone(), d.clone());
                    out.push(JElem::Herm(skew));
                }
                out
            }
        }
    }

    /// Discriminant class of the trace form on the whole algebra,
    /// normalized so the full matrix algebra is trivial (the raw Gram
    /// determinant is negated before taking the square class).
    pub fn disc_class(&self) -> Result<SquareClass<F>, JordanError> {
        let basis = self.basis();
        let n = basis.len();
        let gram: Vec<Vec<F>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.trace_form(&basis[i], &basis[j]))
                    .collect()
            })
            .collect();
        let det = det_n(&self.ctx, gram);
        Ok(SquareClass::of(&self.ctx, &-det)?)
    }

    /// Random element (Hermitian elements are built from random coordinates).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> JElem<F> {
        let mut acc = self.zero();
        for b in self.basis() {
            let c = F::sample(&self.ctx, rng, height);
            acc = self.add(&acc, &self.scale(&b, &c));
        }
        acc
    }

    // -- Springer decomposition ------------------------------------------

    /// Embed `lambda` in `E = F^3` as the diagonal matrix `i(lambda)`.
    pub fn embed_diag(&self, lambda: &CubicElem<F>) -> JElem<F> {
        match self.herm_d() {
            None => {
                let mut m = Mat3::zero_like(&F::zero(&self.ctx));
                for i in 0..3 {
                    m.rows[i][i] = lambda.0[i].clone();
                }
                JElem::Full(m)
            }
            Some(d) => {
                let qz = QuadExt::from_scalar(F::zero(&self.ctx), d.clone());
                let mut m = Mat3::zero_like(&qz);
                for i in 0..3 {
                    m.rows[i][i] = QuadExt::from_scalar(lambda.0[i].clone(), d.clone());
                }
                JElem::Herm(m)
            }
        }
    }

    /// Diagonal part as an element of `E = F^3`.
    pub fn diag_part(&self, a: &JElem<F>) -> CubicElem<F> {
        match a {
            JElem::Full(m) => CubicElem(std::array::from_fn(|i| m.rows[i][i].clone())),
            JElem::Herm(m) => {
                CubicElem(std::array::from_fn(|i| self.base_value(&m.rows[i][i])))
            }
        }
    }

    /// Off-diagonal part (the component in `C`).
    pub fn offdiag_part(&self, a: &JElem<F>) -> JElem<F> {
        let diag = self.embed_diag(&self.diag_part(a));
        self.sub(a, &diag)
    }

    pub fn is_offdiag(&self, a: &JElem<F>) -> bool {
        self.diag_part(a).is_zero()
    }

    /// `Q(v) = -diag(v#)` for `v` in `C`.
    pub fn springer_q(&self, v: &JElem<F>) -> CubicElem<F> {
        debug_assert!(self.is_offdiag(v));
        self.diag_part(&self.sharp(v)).neg()
    }

    /// `beta(v) = offdiag(v#)` for `v` in `C`.
    pub fn springer_beta(&self, v: &JElem<F>) -> JElem<F> {
        debug_assert!(self.is_offdiag(v));
        self.offdiag_part(&self.sharp(v))
    }

    /// The `E`-module action on `C`: `lambda . v = -(i(lambda) x v)`.
    pub fn e_act(&self, lambda: &CubicElem<F>, v: &JElem<F>) -> JElem<F> {
        self.neg(&self.cross(&self.embed_diag(lambda), v))
    }

    /// Polarization of `springer_q`: `b_Q(v, w) = -diag(v x w)`.
    pub fn springer_bq(&self, v: &JElem<F>, w: &JElem<F>) -> CubicElem<F> {
        self.diag_part(&self.cross(v, w)).neg()
    }

    /// The norm `N(v)`: the scalar with `b_Q(v, beta(v)) = N(v) * (1,1,1)`.
    pub fn springer_norm(&self, v: &JElem<F>) -> Result<F, JordanError> {
        let e = self.diagonal_algebra();
        let bq = self.springer_bq(v, &self.springer_beta(v));
        e.as_scalar(&bq).ok_or_else(|| {
            JordanError::StructureMismatch("norm pairing is not scalar".into())
        })
    }

    /// Pointwise discriminant `N(v)^2 - 4 N_E(Q(v))`.
    pub fn springer_disc(&self, v: &JElem<F>) -> Result<F, JordanError> {
        let e = self.diagonal_algebra();
        let n = self.springer_norm(v)?;
        Ok(n.sq() - F::from_i64(&self.ctx, 4) * e.norm(&self.springer_q(v)))
    }

    /// The cube `(1, 0, -Q(w), -N(w))` presented by a witness `w` in `C`.
    pub fn derived_cube(&self, w: &JElem<F>) -> Result<Cube<F>, JordanError> {
        Ok(Cube::new(
            F::one(&self.ctx),
            self.diagonal_algebra().zero(),
            self.springer_q(w).neg(),
            -self.springer_norm(w)?,
        ))
    }

    /// Deterministic witness `w` in `C` with nonzero pointwise discriminant.
    pub fn disc_witness(&self) -> Result<JElem<F>, JordanError> {
        let basis = self.basis();
        // Off-diagonal basis elements and small combinations of them.
        let off: Vec<JElem<F>> = basis
            .into_iter()
            .filter(|b| self.is_offdiag(b))
            .collect();
        let mut candidates: Vec<JElem<F>> = off.to_vec();
        for i in 0..off.len() {
            for j in (i + 1)..off.len() {
                candidates.push(self.add(&off[i], &off[j]));
            }
        }
        let mut all = self.zero();
        for b in &off {
            all = self.add(&all, b);
        }
        for b in &off {
            candidates.push(self.sub(&all, b));
        }
        candidates.push(all);
        for w in candidates {
            if !self.springer_disc(&w)?.is_zero() {
                return Ok(w);
            }
        }
        Err(JordanError::WitnessSearchExhausted)
    }

    /// Discriminant class of the composition structure on `C`.
    pub fn springer_disc_class(&self) -> Result<SquareClass<F>, JordanError> {
        let w = self.disc_witness()?;
        Ok(SquareClass::of(&self.ctx, &self.springer_disc(&w)?)?)
    }

    /// Check that in the basis `(w, beta(w))` the Springer structure on `C`
    /// agrees coefficient-exactly with the closed-form structure of the
    /// derived cube: both `Q` and `beta` are compared on the images of the
    /// 21 determining points of `E^2`, with `(x, y)` mapped to
    /// `x . w + y . beta(w)` through the `E`-action. Returns the derived
    /// cube on success.
    pub fn verify_cube_match(&self, w: &JElem<F>) -> Result<Cube<F>, JordanError> {
        let e = self.diagonal_algebra();
        let cube = self.derived_cube(w)?;
        let c = CompAlg2::from_cube(cube.clone());
        let bw = self.springer_beta(w);
        let lift = |p: &Vec2E<F>| {
            self.add(&self.e_act(&p.x, w), &self.e_act(&p.y, &bw))
        };
        let mut pts: Vec<Vec2E<F>> = Vec::new();
        let mut base: Vec<Vec2E<F>> = Vec::new();
        for i in 0..3 {
            base.push(Vec2E::new(e.basis(i), e.zero()));
        }
        for i in 0..3 {
            base.push(Vec2E::new(e.zero(), e.basis(i)));
        }
        pts.extend(base.iter().cloned());
        for i in 0..6 {
            for j in (i + 1)..6 {
                pts.push(base[i].add(&base[j]));
            }
        }
        for p in &pts {
            let lifted = lift(p);
            if self.springer_q(&lifted) != c.q(&e, p) {
                return Err(JordanError::StructureMismatch(format!(
                    "Q mismatch at ({}, {})",
                    p.x, p.y
                )));
            }
            let lhs = self.springer_beta(&lifted);
            let pred = c.beta(&e, p);
            let rhs = lift(&pred);
            if lhs != rhs {
                return Err(JordanError::StructureMismatch(format!(
                    "beta mismatch at ({}, {})",
                    p.x, p.y
                )));
            }
        }
        Ok(cube)
    }

    // -- Hermitian coordinates -------------------------------------------

    /// Build the off-diagonal Hermitian element with coordinates
    /// `(z1, z2, z3)` in `K^3`:
    /// rows `[[0, conj z3, z2], [z3, 0, conj z1], [conj z2, z1, 0]]`.
    pub fn herm_from_coords(&self, z: &[QuadExt<F>; 3]) -> Result<JElem<F>, JordanError> {
        let d = self.herm_d().ok_or(JordanError::WrongComponent)?;
        for zi in z {
            if zi.d() != d {
                return Err(JordanError::NotHermitian);
            }
        }
        let zero = QuadExt::from_scalar(F::zero(&self.ctx), d.clone());
        Ok(JElem::Herm(Mat3::new([
            [zero.clone(), z[2].conj(), z[1].clone()],
            [z[2].clone(), zero.clone(), z[0].conj()],
            [z[1].conj(), z[0].clone(), zero],
        ])))
    }

    /// Coordinates of an off-diagonal Hermitian element.
    pub fn herm_coords(&self, v: &JElem<F>) -> Result<[QuadExt<F>; 3], JordanError> {
        match v {
            JElem::Herm(m) if self.is_offdiag(v) => Ok([
                m.rows[2][1].clone(),
                m.rows[0][2].clone(),
                m.rows[1][0].clone(),
            ]),
            _ => Err(JordanError::WrongComponent),
        }
    }
}

/// Exact determinant of a small square matrix by fraction-free Gaussian
/// elimination would need divisions; cofactor expansion is fine at n = 9.
fn det_n<F: Scalar>(ctx: &F::Ctx, m: Vec<Vec<F>>) -> F {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = F::zero(ctx);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<F>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&k| k != j)
                    .map(|k| m[i][k].clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].clone() * det_n(ctx, minor);
        det = if j % 2 == 0 { det + term } else { det - term };
    }
    det
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

    fn algebras() -> Vec<JordanAlg<Rat>> {
        vec![
            JordanAlg::full_matrix(&QCtx),
            JordanAlg::hermitian(&QCtx, q(5)).unwrap(),
            JordanAlg::hermitian(&QCtx, q(-1)).unwrap(),
        ]
    }

    #[test]
    fn adjoint_and_invariant_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(307);
        for j in algebras() {
            for _ in 0..15 {
                let a = j.sample(&mut rng, 5);
                j.validate(&a).unwrap();
                let t = j.trace(&a);
                let s = j.second_invariant(&a);
                let n = j.norm(&a);
                // a# = a^2 - T a + S 1 (squares via the Jordan product
                // coincide with associative squares).
                let a2 = j.jordan_mul(&a, &a);
                let sharp = j.add(
                    &j.sub(&a2, &j.scale(&a, &t)),
                    &j.scale(&j.unit(), &s),
                );
                assert_eq!(j.sharp(&a), sharp);
                // a o a# = N 1 (for commuting elements the Jordan product
                // is the associative one).
                assert_eq!(
                    j.jordan_mul(&a, &j.sharp(&a)),
                    j.scale(&j.unit(), &n)
                );
                // (a#)# = N a.
                assert_eq!(j.sharp(&j.sharp(&a)), j.scale(&a, &n));
            }
        }
    }

    #[test]
    fn diagonal_is_trace_orthogonal_to_offdiagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(311);
        for j in algebras() {
            let e = j.diagonal_algebra();
            for _ in 0..15 {
                let lambda = e.sample(&mut rng, 5);
                let v = j.offdiag_part(&j.sample(&mut rng, 5));
                assert!(j.is_offdiag(&v));
                assert!(j.trace_form(&j.embed_diag(&lambda), &v).is_zero());
                // The diagonal embedding is an algebra map onto E.
                let mu = e.sample(&mut rng, 5);
                assert_eq!(
                    j.jordan_mul(&j.embed_diag(&lambda), &j.embed_diag(&mu)),
                    j.embed_diag(&e.mul(&lambda, &mu))
                );
                assert_eq!(j.norm(&j.embed_diag(&lambda)), e.norm(&lambda));
            }
        }
    }

    #[test]
    fn springer_axioms_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(313);
        for j in algebras() {
            let e = j.diagonal_algebra();
            for _ in 0..15 {
                let v = j.offdiag_part(&j.sample(&mut rng, 4));
                let lambda = e.sample(&mut rng, 4);
                let lv = j.e_act(&lambda, &v);
                assert!(j.is_offdiag(&lv));
                // Q(lambda . v) = lambda^2 Q(v).
                assert_eq!(
                    j.springer_q(&lv),
                    e.mul(&e.mul(&lambda, &lambda), &j.springer_q(&v))
                );
                // beta(lambda . v) = lambda# . beta(v).
                assert_eq!(
                    j.springer_beta(&lv),
                    j.e_act(&e.sharp(&lambda), &j.springer_beta(&v))
                );
                // Q(beta(v)) = Q(v)#.
                assert_eq!(
                    j.springer_q(&j.springer_beta(&v)),
                    e.sharp(&j.springer_q(&v))
                );
                // The norm pairing is scalar.
                j.springer_norm(&v).unwrap();
            }
        }
    }

    #[test]
    fn e_action_is_a_module_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(317);
        for j in algebras() {
            let e = j.diagonal_algebra();
            for _ in 0..10 {
                let v = j.offdiag_part(&j.sample(&mut rng, 4));
                let l = e.sample(&mut rng, 4);
                let m = e.sample(&mut rng, 4);
                assert_eq!(j.e_act(&e.unit(), &v), v);
                assert_eq!(
                    j.e_act(&l, &j.e_act(&m, &v)),
                    j.e_act(&e.mul(&l, &m), &v)
                );
            }
        }
    }

    #[test]
    fn hermitian_closed_forms() {
        let j = JordanAlg::hermitian(&QCtx, q(5)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(331);
        for _ in 0..20 {
            let z: [QuadExt<Rat>; 3] = std::array::from_fn(|_| {
                QuadExt::new(
                    Rat::sample(&QCtx, &mut rng, 6),
                    Rat::sample(&QCtx, &mut rng, 6),
                    q(5),
                )
            });
            let v = j.herm_from_coords(&z).unwrap();
            j.validate(&v).unwrap();
            // Q(z) = (z1 conj z1, z2 conj z2, z3 conj z3).
            assert_eq!(
                j.springer_q(&v),
                CubicElem([z[0].norm(), z[1].norm(), z[2].norm()])
            );
            // beta(z) = (conj z2 conj z3, conj z3 conj z1, conj z1 conj z2).
            let bz = [
                z[1].conj().mul(&z[2].conj()),
                z[2].conj().mul(&z[0].conj()),
                z[0].conj().mul(&z[1].conj()),
            ];
            assert_eq!(
                j.springer_beta(&v),
                j.herm_from_coords(&bz).unwrap()
            );
            // Coordinates round-trip.
            let back = j.herm_coords(&v).unwrap();
            assert_eq!(back, z);
            // N(v) = Tr_K(z1 z2 z3).
            let p = z[0].mul(&z[1]).mul(&z[2]);
            assert_eq!(j.springer_norm(&v).unwrap(), p.trace());
        }
    }

    #[test]
    fn derived_cube_matches_composition_structure() {
        for j in algebras() {
            let w = j.disc_witness().unwrap();
            let cube = j.verify_cube_match(&w).unwrap();
            assert!(cube.is_reduced(&j.diagonal_algebra()));
        }
        let f7 = FpCtx::new(7).unwrap();
        for d in [3i64, 2, 6] {
            let j = JordanAlg::<Fp>::hermitian(&f7, f7.el(d)).unwrap();
            let w = j.disc_witness().unwrap();
            j.verify_cube_match(&w).unwrap();
        }
    }

    #[test]
    fn class_product_is_trivial() {
        // [K_C][K_E][K_J] = 1 for the Hermitian family and the matrix
        // algebra.
        let cases: Vec<(JordanAlg<Rat>, Rat)> = vec![
            (JordanAlg::full_matrix(&QCtx), q(1)),
            (JordanAlg::hermitian(&QCtx, q(5)).unwrap(), q(5)),
            (JordanAlg::hermitian(&QCtx, q(-1)).unwrap(), q(-1)),
            (JordanAlg::hermitian(&QCtx, q(2)).unwrap(), q(2)),
        ];
        for (j, expect_kc) in cases {
            let e = j.diagonal_algebra();
            let kc = j.springer_disc_class().unwrap();
            let ke = e.discriminant_class().unwrap();
            let kj = j.disc_class().unwrap();
            assert!(ke.is_trivial(&QCtx));
            assert_eq!(kc.rep(), SquareClass::of(&QCtx, &expect_kc).unwrap().rep());
            let prod = kc.mul(&QCtx, &ke).unwrap().mul(&QCtx, &kj).unwrap();
            assert!(
                prod.is_trivial(&QCtx),
                "class product not trivial"
            );
        }
    }

    #[test]
    fn hermitian_validation_rejects_bad_matrices() {
        let j = JordanAlg::hermitian(&QCtx, q(5)).unwrap();
        // Non-Hermitian: (0,1) entry not conjugate of (1,0).
        let d = q(5);
        let sc = |n: i64| QuadExt::from_scalar(q(n), d.clone());
        let m = Mat3::new([
            [sc(1), sc(2), sc(0)],
            [sc(3), sc(1), sc(0)],
            [sc(0), sc(0), sc(1)],
        ]);
        assert!(matches!(
            j.validate(&JElem::Herm(m)),
            Err(JordanError::NotHermitian)
        ));
        // Radical part on the diagonal.
        let mut m = Mat3::zero_like(&sc(0));
        m.rows[0][0] = QuadExt::new(q(1), q(1), d.clone());
        assert!(matches!(
            j.validate(&JElem::Herm(m)),
            Err(JordanError::NotHermitian)
        ));
    }
}
