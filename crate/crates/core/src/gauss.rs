//! Integral structure over `Z`: oriented modules for a quadratic order and
//! the balanced triple of modules attached to a reduced integer cube.
//!
//! For a reduced cube `(1, 0, f, b)` with integer entries, nonzero corner
//! coefficients `f_i`, and non-square discriminant `D = b^2 + 4 f1 f2 f3`,
//! the three off-diagonal slices correspond to the modules
//! `M_i = Z + Z w_i`, `w_i = (b - sqrt D) / (2 f_i)`, inside `K = Q(sqrt D)`,
//! oriented by their ordered bases. Their product is the principal module
//! generated by `delta = (b - sqrt D) / (2 f1 f2 f3)` (equivalently
//! `-2 / (b + sqrt D)`), and the rank-3 module `M_1 (+) M_2 (+) M_3`
//! carries the integral quadratic data
//!
//! ```text
//! Q(z)_i = -f_i N(z_i),
//! beta(z)_i = delta f_{i+1} f_{i+2} conj(z_{i+1}) conj(z_{i+2}),
//! N(z) = Tr(z_1 z_2 z_3 / delta),
//! ```
//!
//! all of which take integer values (respectively land back in the
//! modules) on module points. Everything here is verified rather than
//! assumed: module norms are checked multiplicative on concrete bases, and
//! `beta` is computed both through module arithmetic in `K` and through
//! bilinear integer coordinate formulas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cube::Cube;
use crate::field::{Rat, Scalar};
use crate::quad::QuadExt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("cube must be in reduced position (1, 0, f, b)")]
    NotReduced,
    #[error("cube entries must be integers")]
    NotIntegral,
    #[error("all three corner coefficients must be nonzero")]
    ZeroCorner,
    #[error("discriminant must be nonzero and congruent to 0 or 1 mod 4")]
    BadDiscriminant,
    #[error("discriminant must not be a perfect square")]
    SquareDiscriminant,
    #[error("basis does not span a rank-2 lattice")]
    DegenerateBasis,
    #[error("element does not lie in the module")]
    NotInModule,
    #[error("value expected to be an integer is not")]
    NonIntegralValue,
    #[error("radicand mismatch between element and order")]
    WrongField,
}

fn bigint_is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn rat_of(n: &BigInt) -> Rat {
    Rat::from_bigint(n.clone())
}

fn rat_frac(n: BigInt, d: BigInt) -> Rat {
    Rat::new(BigRational::new(n, d))
}

/// The quadratic order of discriminant `D` (non-square, `D = 0, 1 mod 4`),
/// with `Z`-basis `{1, (D + sqrt D) / 2}` inside `Q(sqrt D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadOrder {
    delta: BigInt,
}

impl QuadOrder {
    pub fn new(delta: BigInt) -> Result<Self, GaussError> {
        if delta.is_zero() || delta.mod_floor(&BigInt::from(4)) > BigInt::one() {
            return Err(GaussError::BadDiscriminant);
        }
        if bigint_is_square(&delta) {
            return Err(GaussError::SquareDiscriminant);
        }
        Ok(QuadOrder { delta })
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.delta
    }

    /// The radicand as a rational number, for building field elements.
    pub fn radicand(&self) -> Rat {
        rat_of(&self.delta)
    }

    /// `omega = (D + sqrt D) / 2`.
    pub fn omega(&self) -> QuadExt<Rat> {
        QuadExt::new(
            rat_frac(self.delta.clone(), BigInt::from(2)),
            Rat::from_frac(1, 2),
            self.radicand(),
        )
    }

    pub fn one(&self) -> QuadExt<Rat> {
        QuadExt::from_scalar(Rat::from_int(1), self.radicand())
    }

    /// Determinant of the basis matrix of the order in `{1, sqrt D}`
    /// coordinates.
    fn basis_det(&self) -> Rat {
        Rat::from_frac(1, 2)
    }

    /// Does `x` lie in the order?
    pub fn contains(&self, x: &QuadExt<Rat>) -> bool {
        if x.d() != &self.radicand() {
            return false;
        }
        // x = m + n omega with n = 2 y, m = x0 - n D / 2.
        let n = Rat::from_int(2) * x.y().clone();
        let m = x.x().clone() - n.clone() * rat_frac(self.delta.clone(), BigInt::from(2));
        n.is_integer() && m.is_integer()
    }
}

/// Hermite normal form of the column span of an integer 2 x n matrix.
/// Returns columns `(a, 0)` and `(c, d)` with `a, d > 0`, `0 <= c < a`,
/// or `None` if the columns do not span a rank-2 lattice.
fn hnf_int(mut cols: Vec<[BigInt; 2]>) -> Option<[[BigInt; 2]; 2]> {
    loop {
        let nz: Vec<usize> = (0..cols.len())
            .filter(|&i| !cols[i][1].is_zero())
            .collect();
        if nz.len() <= 1 {
            break;
        }
        let piv = *nz
            .iter()
            .min_by(|&&i, &&j| cols[i][1].abs().cmp(&cols[j][1].abs()))
            .unwrap();
        for &i in &nz {
            if i == piv {
                continue;
            }
            let q = cols[i][1].div_floor(&cols[piv][1]);
            let t0 = &cols[i][0] - &q * &cols[piv][0];
            let t1 = &cols[i][1] - &q * &cols[piv][1];
            cols[i] = [t0, t1];
        }
    }
    let piv = (0..cols.len()).find(|&i| !cols[i][1].is_zero())?;
    let mut t = cols[piv][0].clone();
    let mut d = cols[piv][1].clone();
    if d.is_negative() {
        t = -t;
        d = -d;
    }
    let mut a = BigInt::zero();
    for (i, col) in cols.iter().enumerate() {
        if i != piv {
            a = a.gcd(&col[0]);
        }
    }
    if a.is_zero() {
        return None;
    }
    let c = t.mod_floor(&a);
    Some([[a, c], [BigInt::zero(), d]])
}

/// Hermite normal form for rational columns: scale by the common
/// denominator, normalize, and scale back.
fn hnf_rat(cols: &[(Rat, Rat)]) -> Option<[[Rat; 2]; 2]> {
    let mut l = BigInt::one();
    for (x, y) in cols {
        l = l.lcm(x.denom());
        l = l.lcm(y.denom());
    }
    let scaled: Vec<[BigInt; 2]> = cols
        .iter()
        .map(|(x, y)| {
            let sx = x.clone() * rat_of(&l);
            let sy = y.clone() * rat_of(&l);
            [sx.to_bigint().unwrap(), sy.to_bigint().unwrap()]
        })
        .collect();
    let h = hnf_int(scaled)?;
    Some([
        [
            rat_frac(h[0][0].clone(), l.clone()),
            rat_frac(h[0][1].clone(), l.clone()),
        ],
        [Rat::from_int(0), rat_frac(h[1][1].clone(), l)],
    ])
}

/// A full-rank lattice in `Q(sqrt D)` together with an orientation sign.
/// The lattice is stored in Hermite normal form (columns in `{1, sqrt D}`
/// coordinates), so equality of modules is literal equality of the data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedModule {
    order: QuadOrder,
    hnf: [[Rat; 2]; 2],
    eps: i8,
}

impl OrientedModule {
    /// Module spanned by an ordered basis `(b1, b2)`; the orientation is
    /// the sign of the base change from the order's basis.
    pub fn from_basis(
        order: &QuadOrder,
        b1: &QuadExt<Rat>,
        b2: &QuadExt<Rat>,
    ) -> Result<Self, GaussError> {
        if b1.d() != &order.radicand() || b2.d() != &order.radicand() {
            return Err(GaussError::WrongField);
        }
        let det = b1.x().clone() * b2.y().clone() - b2.x().clone() * b1.y().clone();
        if det.is_zero() {
            return Err(GaussError::DegenerateBasis);
        }
        let eps = if det.numer().is_negative() { -1 } else { 1 };
        let cols = vec![
            (b1.x().clone(), b1.y().clone()),
            (b2.x().clone(), b2.y().clone()),
        ];
        let hnf = hnf_rat(&cols).ok_or(GaussError::DegenerateBasis)?;
        Ok(OrientedModule {
            order: order.clone(),
            hnf,
            eps,
        })
    }

    /// The principal module `delta R` with orientation `sign(N(delta))`.
    pub fn principal(order: &QuadOrder, delta: &QuadExt<Rat>) -> Result<Self, GaussError> {
        let b1 = delta.clone();
        let b2 = delta.mul(&order.omega());
        Self::from_basis(order, &b1, &b2)
    }

    pub fn order(&self) -> &QuadOrder {
        &self.order
    }

    pub fn orientation(&self) -> i8 {
        self.eps
    }

    /// The two canonical basis elements.
    pub fn basis(&self) -> [QuadExt<Rat>; 2] {
        let d = self.order.radicand();
        [
            QuadExt::new(self.hnf[0][0].clone(), self.hnf[1][0].clone(), d.clone()),
            QuadExt::new(self.hnf[0][1].clone(), self.hnf[1][1].clone(), d),
        ]
    }

    /// Oriented module norm: signed covolume relative to the order.
    pub fn norm(&self) -> Rat {
        let det = self.hnf[0][0].clone() * self.hnf[1][1].clone();
        let signed = if self.eps >= 0 { det } else { -det };
        signed
            .div(&self.order.basis_det())
            .expect("order covolume is nonzero")
    }

    /// Module product: the lattice generated by pairwise products, with
    /// multiplied orientations.
    pub fn mul(&self, other: &Self) -> Result<Self, GaussError> {
        let mut cols = Vec::with_capacity(4);
        for x in self.basis() {
            for y in other.basis() {
                let p = x.mul(&y);
                cols.push((p.x().clone(), p.y().clone()));
            }
        }
        let hnf = hnf_rat(&cols).ok_or(GaussError::DegenerateBasis)?;
        Ok(OrientedModule {
            order: self.order.clone(),
            hnf,
            eps: self.eps * other.eps,
        })
    }

    /// Coordinates of `z` in the canonical basis, if `z` lies in the
    /// module.
    pub fn coords(&self, z: &QuadExt<Rat>) -> Option<(BigInt, BigInt)> {
        if z.d() != &self.order.radicand() {
            return None;
        }
        let n = z.y().div(&self.hnf[1][1]).ok()?;
        let m = (z.x().clone() - self.hnf[0][1].clone() * n.clone())
            .div(&self.hnf[0][0])
            .ok()?;
        match (m.to_bigint(), n.to_bigint()) {
            (Some(m), Some(n)) => Some((m, n)),
            _ => None,
        }
    }

    pub fn contains(&self, z: &QuadExt<Rat>) -> bool {
        self.coords(z).is_some()
    }
}

/// The balanced triple of oriented modules attached to a reduced integer
/// cube `(1, 0, f, b)`.
#[derive(Debug, Clone)]
pub struct ModuleTriple {
    order: QuadOrder,
    modules: [OrientedModule; 3],
    omegas: [QuadExt<Rat>; 3],
    delta_elem: QuadExt<Rat>,
    f: [BigInt; 3],
    b: BigInt,
}

impl ModuleTriple {
    pub fn from_cube(cube: &Cube<Rat>) -> Result<Self, GaussError> {
        if cube.a != Rat::from_int(1) || !cube.e.is_zero() {
            return Err(GaussError::NotReduced);
        }
        let b = cube.b.to_bigint().ok_or(GaussError::NotIntegral)?;
        let mut f = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (fi, ci) in f.iter_mut().zip(&cube.f.0) {
            *fi = ci.to_bigint().ok_or(GaussError::NotIntegral)?;
            if fi.is_zero() {
                return Err(GaussError::ZeroCorner);
            }
        }
        let nf = &f[0] * &f[1] * &f[2];
        let delta = &b * &b + BigInt::from(4) * &nf;
        let order = QuadOrder::new(delta)?;
        let rad = order.radicand();
        let omegas: [QuadExt<Rat>; 3] = std::array::from_fn(|i| {
            QuadExt::new(
                rat_frac(b.clone(), BigInt::from(2) * &f[i]),
                rat_frac(BigInt::from(-1), BigInt::from(2) * &f[i]),
                rad.clone(),
            )
        });
        let modules: [OrientedModule; 3] = std::array::from_fn(|i| {
            OrientedModule::from_basis(&order, &order.one(), &omegas[i])
                .expect("module basis is nondegenerate")
        });
        let delta_elem = QuadExt::new(
            rat_frac(b.clone(), BigInt::from(2) * &nf),
            rat_frac(BigInt::from(-1), BigInt::from(2) * &nf),
            rad,
        );
        Ok(ModuleTriple {
            order,
            modules,
            omegas,
            delta_elem,
            f,
            b,
        })
    }

    pub fn order(&self) -> &QuadOrder {
        &self.order
    }

    pub fn modules(&self) -> &[OrientedModule; 3] {
        &self.modules
    }

    pub fn delta_elem(&self) -> &QuadExt<Rat> {
        &self.delta_elem
    }

    pub fn omega(&self, i: usize) -> &QuadExt<Rat> {
        &self.omegas[i]
    }

    /// The module point with coordinates `(x, y)` in the basis
    /// `{1, w_i}` of `M_i`.
    pub fn elem(&self, i: usize, x: &BigInt, y: &BigInt) -> QuadExt<Rat> {
        let one = self.order.one();
        one.scale(&rat_of(x))
            .add(&self.omegas[i].scale(&rat_of(y)))
    }

    /// Coordinates of `z` in the basis `{1, w_i}`, if `z` lies in `M_i`.
    pub fn coords(&self, i: usize, z: &QuadExt<Rat>) -> Result<(BigInt, BigInt), GaussError> {
        if z.d() != &self.order.radicand() {
            return Err(GaussError::WrongField);
        }
        let y = z
            .y()
            .div(self.omegas[i].y())
            .expect("module generator has nonzero radical part");
        let x = z.x().clone() - y.clone() * self.omegas[i].x().clone();
        match (x.to_bigint(), y.to_bigint()) {
            (Some(x), Some(y)) => Ok((x, y)),
            _ => Err(GaussError::NotInModule),
        }
    }

    /// `Q(z)_i = -f_i N(z_i)`, an integer vector on module points.
    pub fn q(&self, z: &[QuadExt<Rat>; 3]) -> Result<[BigInt; 3], GaussError> {
        let mut out = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for i in 0..3 {
            let v = -(rat_of(&self.f[i]) * z[i].norm());
            out[i] = v.to_bigint().ok_or(GaussError::NonIntegralValue)?;
        }
        Ok(out)
    }

    /// `beta(z)_i = delta f_{i+1} f_{i+2} conj(z_{i+1}) conj(z_{i+2})`,
    /// computed by module arithmetic in `K`; membership in `M_i` is
    /// checked.
    pub fn beta(&self, z: &[QuadExt<Rat>; 3]) -> Result<[QuadExt<Rat>; 3], GaussError> {
        let out: [QuadExt<Rat>; 3] = std::array::from_fn(|i| {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            let scale = rat_of(&self.f[j]) * rat_of(&self.f[k]);
            self.delta_elem
                .mul(&z[j].conj())
                .mul(&z[k].conj())
                .scale(&scale)
        });
        for (i, v) in out.iter().enumerate() {
            self.coords(i, v)?;
        }
        Ok(out)
    }

    /// The same map through integer bilinear coordinate formulas: with
    /// `z_i = (x_i, y_i)` in the basis `{1, w_i}`,
    ///
    /// ```text
    /// x'_i = - z_{i+2}^T [[0, f_{i+2}], [f_{i+1}, b]] z_{i+1}
    /// y'_i =   z_{i+2}^T [[1, 0], [0, f_i]]            z_{i+1}
    /// ```
    pub fn beta_coords(
        &self,
        z: &[QuadExt<Rat>; 3],
    ) -> Result<[(BigInt, BigInt); 3], GaussError> {
        let mut c = Vec::with_capacity(3);
        for (i, zi) in z.iter().enumerate() {
            c.push(self.coords(i, zi)?);
        }
        let out: [(BigInt, BigInt); 3] = std::array::from_fn(|i| {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            let (xj, yj) = &c[j];
            let (xk, yk) = &c[k];
            let xp = -(&self.f[k] * xk * yj + &self.f[j] * xj * yk + &self.b * yk * yj);
            let yp = xk * xj + &self.f[i] * yk * yj;
            (xp, yp)
        });
        Ok(out)
    }

    /// `N(z) = Tr(z_1 z_2 z_3 / delta)`, an integer on module points.
    pub fn norm_c(&self, z: &[QuadExt<Rat>; 3]) -> Result<BigInt, GaussError> {
        let inv = self
            .delta_elem
            .inv()
            .expect("delta has nonzero norm");
        let t = z[0].mul(&z[1]).mul(&z[2]).mul(&inv).trace();
        t.to_bigint().ok_or(GaussError::NonIntegralValue)
    }

    /// `M_1 M_2 M_3 = delta R` as oriented modules.
    pub fn colinearity_holds(&self) -> Result<bool, GaussError> {
        let prod = self.modules[0]
            .mul(&self.modules[1])?
            .mul(&self.modules[2])?;
        let principal = OrientedModule::principal(&self.order, &self.delta_elem)?;
        Ok(prod == principal)
    }

    /// Contents of the three slice forms `-f_i x^2 - b x y +
    /// f_{i+1} f_{i+2} y^2`; the triple is primitive when all are 1.
    pub fn slice_contents(&self) -> [BigInt; 3] {
        std::array::from_fn(|i| {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            self.f[i].gcd(&self.b).gcd(&(&self.f[j] * &self.f[k]))
        })
    }

    pub fn is_primitive(&self) -> bool {
        self.slice_contents().iter().all(|g| g.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::slice_form;
    use crate::etale::{CubicAlg, CubicElem};
    use crate::field::{QCtx, Scalar};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn reduced_cube(f: [i64; 3], b: i64) -> Cube<Rat> {
        Cube::new(
            q(1),
            CubicElem([q(0), q(0), q(0)]),
            CubicElem([q(f[0]), q(f[1]), q(f[2])]),
            q(b),
        )
    }

    fn random_triple(rng: &mut ChaCha8Rng) -> ModuleTriple {
        loop {
            let f: [i64; 3] = std::array::from_fn(|_| loop {
                let v = rng.gen_range(-6i64..=6);
                if v != 0 {
                    break v;
                }
            });
            let b = rng.gen_range(-6i64..=6);
            if let Ok(t) = ModuleTriple::from_cube(&reduced_cube(f, b)) {
                // Only projective (primitive) triples: the module-theoretic
                // identities are theorems exactly in that case.
                if t.is_primitive() {
                    return t;
                }
            }
        }
    }

    fn random_points(t: &ModuleTriple, rng: &mut ChaCha8Rng) -> [QuadExt<Rat>; 3] {
        std::array::from_fn(|i| {
            t.elem(
                i,
                &BigInt::from(rng.gen_range(-5i64..=5)),
                &BigInt::from(rng.gen_range(-5i64..=5)),
            )
        })
    }

    #[test]
    fn order_membership() {
        let order = QuadOrder::new(BigInt::from(5)).unwrap();
        assert!(order.contains(&order.omega()));
        assert!(order.contains(&order.one()));
        // (1 - sqrt 5) / 2 = 1 + 2 omega - omega... check directly: it is
        // 3 - omega minus 2 = ...; simplest: conj(omega) = D/2 - sqrt(D)/2
        // lies in the order since Tr(omega) = D is an integer.
        assert!(order.contains(&order.omega().conj()));
        // sqrt(5)/5 does not.
        assert!(!order.contains(&QuadExt::new(
            q(0),
            Rat::from_frac(1, 5),
            q(5)
        )));
        // Discriminant 2 mod 4 or squares are rejected.
        assert!(matches!(
            QuadOrder::new(BigInt::from(6)),
            Err(GaussError::BadDiscriminant)
        ));
        assert!(matches!(
            QuadOrder::new(BigInt::from(9)),
            Err(GaussError::SquareDiscriminant)
        ));
        assert!(QuadOrder::new(BigInt::from(-4)).is_ok());
    }

    #[test]
    fn hnf_is_basis_independent() {
        let order = QuadOrder::new(BigInt::from(13)).unwrap();
        let b1 = QuadExt::new(q(2), q(1), q(13));
        let b2 = QuadExt::new(q(1), q(3), q(13));
        let m = OrientedModule::from_basis(&order, &b1, &b2).unwrap();
        // Unimodular change of basis with positive determinant: same
        // module.
        let c1 = b1.add(&b2.scale(&q(4)));
        let c2 = b2.clone();
        let m2 = OrientedModule::from_basis(&order, &c1, &c2).unwrap();
        assert_eq!(m, m2);
        // Swapping the basis flips only the orientation.
        let m3 = OrientedModule::from_basis(&order, &b2, &b1).unwrap();
        assert_eq!(m3.hnf, m.hnf);
        assert_eq!(m3.eps, -m.eps);
        assert_eq!(m3.norm(), -m.norm());
    }

    #[test]
    fn module_norms_are_multiplicative() {
        // Multiplicativity of the oriented norm is a theorem for
        // invertible modules, so it is exercised on the two families the
        // crate actually produces: principal modules and the proper
        // modules attached to primitive cubes.
        let mut rng = ChaCha8Rng::seed_from_u64(401);
        let mut done = 0;
        while done < 25 {
            let d = rng.gen_range(-30i64..60);
            let order = match QuadOrder::new(BigInt::from(d)) {
                Ok(o) => o,
                Err(_) => continue,
            };
            let rad = order.radicand();
            let el = |rng: &mut ChaCha8Rng| {
                QuadExt::new(
                    Rat::sample(&QCtx, rng, 8),
                    Rat::sample(&QCtx, rng, 8),
                    rad.clone(),
                )
            };
            let g = el(&mut rng);
            let h = el(&mut rng);
            if g.norm().is_zero() || h.norm().is_zero() {
                continue;
            }
            let pg = OrientedModule::principal(&order, &g).unwrap();
            let ph = OrientedModule::principal(&order, &h).unwrap();
            assert_eq!(pg.norm(), g.norm());
            // (g R)(h R) = (g h) R as oriented modules, norms included.
            let prod = pg.mul(&ph).unwrap();
            assert_eq!(prod, OrientedModule::principal(&order, &g.mul(&h)).unwrap());
            assert_eq!(prod.norm(), g.norm() * h.norm());
            done += 1;
        }
        for _ in 0..15 {
            let t = random_triple(&mut rng);
            let m = t.modules();
            for i in 0..3 {
                for j in 0..3 {
                    let p = m[i].mul(&m[j]).unwrap();
                    assert_eq!(p.norm(), m[i].norm() * m[j].norm());
                }
            }
            let triple = m[0].mul(&m[1]).unwrap().mul(&m[2]).unwrap();
            assert_eq!(
                triple.norm(),
                m[0].norm() * m[1].norm() * m[2].norm()
            );
        }
    }

    #[test]
    fn golden_discriminant_five_triple() {
        let t = ModuleTriple::from_cube(&reduced_cube([1, 1, 1], 1)).unwrap();
        assert_eq!(t.order().discriminant(), &BigInt::from(5));
        // omega_i = (1 - sqrt 5) / 2 for every i, delta likewise.
        let w = QuadExt::new(Rat::from_frac(1, 2), Rat::from_frac(-1, 2), q(5));
        for i in 0..3 {
            assert_eq!(t.omega(i), &w);
            assert_eq!(t.modules()[i].norm(), q(-1));
        }
        assert_eq!(t.delta_elem(), &w);
        assert_eq!(t.delta_elem().norm(), q(-1));
        assert!(t.colinearity_holds().unwrap());
        assert!(t.is_primitive());
        // N((1,1,1)) = Tr(1/delta) = -1.
        let ones = [t.order().one(), t.order().one(), t.order().one()];
        assert_eq!(t.norm_c(&ones).unwrap(), BigInt::from(-1));
        let beta = t.beta(&ones).unwrap();
        for b in &beta {
            assert_eq!(*b, w);
        }
    }

    #[test]
    fn colinearity_and_norms_on_random_cubes() {
        let mut rng = ChaCha8Rng::seed_from_u64(409);
        for _ in 0..25 {
            let t = random_triple(&mut rng);
            assert!(t.colinearity_holds().unwrap());
            for i in 0..3 {
                // N(M_i) = -1 / f_i.
                let expect = rat_frac(BigInt::from(-1), t.f[i].clone());
                assert_eq!(t.modules()[i].norm(), expect);
            }
            // N(delta) = -1 / (f1 f2 f3).
            let nf = &t.f[0] * &t.f[1] * &t.f[2];
            assert_eq!(t.delta_elem().norm(), rat_frac(BigInt::from(-1), nf));
        }
    }

    #[test]
    fn quadratic_data_is_integral_and_matches_slices() {
        let alg = CubicAlg::<Rat>::split(&QCtx);
        let mut rng = ChaCha8Rng::seed_from_u64(419);
        for _ in 0..20 {
            let t = random_triple(&mut rng);
            let cube = reduced_cube(
                [
                    i64::try_from(&t.f[0]).unwrap(),
                    i64::try_from(&t.f[1]).unwrap(),
                    i64::try_from(&t.f[2]).unwrap(),
                ],
                i64::try_from(&t.b).unwrap(),
            );
            let z = random_points(&t, &mut rng);
            let qv = t.q(&z).unwrap();
            // Each Q(z)_i agrees with the i-th slice form at the
            // coordinates of z_i.
            for i in 0..3 {
                let (x, y) = t.coords(i, &z[i]).unwrap();
                let form = slice_form(&alg, &cube, i).unwrap();
                let val = form.eval(&rat_of(&x), &rat_of(&y));
                assert_eq!(val, rat_of(&qv[i]));
            }
            // N is an integer.
            let n = t.norm_c(&z).unwrap();
            // beta lands in the modules and the coordinate formulas agree
            // with module arithmetic.
            let bm = t.beta(&z).unwrap();
            let bc = t.beta_coords(&z).unwrap();
            for i in 0..3 {
                let (x, y) = &bc[i];
                assert_eq!(t.elem(i, x, y), bm[i]);
            }
            // Composition identities: Q(beta(z))_i = Q_j Q_k and
            // beta(beta(z))_i = N z_i - Q_i beta(z)_i.
            let qb = t.q(&bm).unwrap();
            for i in 0..3 {
                assert_eq!(qb[i], &qv[(i + 1) % 3] * &qv[(i + 2) % 3]);
            }
            let bb = t.beta(&bm).unwrap();
            for i in 0..3 {
                let rhs = z[i]
                    .scale(&rat_of(&n))
                    .sub(&bm[i].scale(&rat_of(&qv[i])));
                assert_eq!(bb[i], rhs);
            }
        }
    }

    #[test]
    fn validation_rejects_bad_cubes() {
        // Not reduced.
        let mut c = reduced_cube([1, 1, 1], 1);
        c.a = q(2);
        assert!(matches!(
            ModuleTriple::from_cube(&c),
            Err(GaussError::NotReduced)
        ));
        // Zero corner.
        assert!(matches!(
            ModuleTriple::from_cube(&reduced_cube([1, 0, 1], 1)),
            Err(GaussError::ZeroCorner)
        ));
        // Square discriminant: 3^2 + 4 * 4 = 25.
        assert!(matches!(
            ModuleTriple::from_cube(&reduced_cube([1, 1, 4], 3)),
            Err(GaussError::SquareDiscriminant)
        ));
        // Non-integral entry.
        let mut c = reduced_cube([1, 1, 1], 1);
        c.f.0[0] = Rat::from_frac(1, 2);
        assert!(matches!(
            ModuleTriple::from_cube(&c),
            Err(GaussError::NotIntegral)
        ));
    }
}
