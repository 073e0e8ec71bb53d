//! Split diagonal tori: the norm-one torus, its similitude extension, the
//! coboundary homomorphism between them, and the stabilizer of the base
//! point.
//!
//! All of this is specific to the split cubic algebra `E = F^3`, where a
//! pair `(a, b)` of invertible diagonal triples acts through the torus
//! generator `t_{a,b}`. Two subgroups matter:
//!
//! * `T` (norm-one): `a_i b_i = 1` for all `i` and `a_1 a_2 a_3 = 1`;
//! * `T'` (similitude pairs): `a_1 b_1 = a_2 b_2 = a_3 b_3 != 0`.
//!
//! The coboundary map
//!
//! ```text
//! f(a; b) = (a2/a3, a3/a1, a1/a2; b2/b3, b3/b1, b1/b2)
//! ```
//!
//! is a homomorphism `T' -> T` whose kernel is exactly the scalar pairs;
//! over a finite field it is onto `T`, which is the concrete form of
//! Hilbert's theorem 90 for this torus. The stabilizer of the base point
//! `(1, 0, 0, -1)` in the split similitude group is the union of the
//! norm-one diagonal torus and its Weyl translate; membership of a word is
//! decidable either by acting on the base point or by a normal-form test
//! on its 2x2 matrix, and the two routes are kept as independent checks.

use thiserror::Error;

use crate::cube::{apply_word, Cube, CubeError, Gen, Word};
use crate::emat::Mat2E;
use crate::etale::{CubicAlg, CubicElem, Shape};
use crate::field::{Fp, FpCtx, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToriError {
    #[error("operation requires the split cubic algebra")]
    NotSplit,
    #[error("pair is not a similitude pair (products differ or vanish)")]
    NotSimilitude,
    #[error("{0}")]
    Cube(#[from] CubeError),
}

fn require_split<F: Scalar>(alg: &CubicAlg<F>) -> Result<(), ToriError> {
    match alg.shape() {
        Shape::Split => Ok(()),
        _ => Err(ToriError::NotSplit),
    }
}

/// An ordered pair of diagonal triples, the raw data of a torus point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPair<F: Scalar> {
    pub a: CubicElem<F>,
    pub b: CubicElem<F>,
}

impl<F: Scalar> TorusPair<F> {
    pub fn new(a: CubicElem<F>, b: CubicElem<F>) -> Self {
        TorusPair { a, b }
    }

    pub fn identity(alg: &CubicAlg<F>) -> Self {
        TorusPair {
            a: alg.unit(),
            b: alg.unit(),
        }
    }

    /// Componentwise product (the group law of the diagonal torus).
    pub fn mul(&self, alg: &CubicAlg<F>, other: &Self) -> Self {
        TorusPair {
            a: alg.mul(&self.a, &other.a),
            b: alg.mul(&self.b, &other.b),
        }
    }

    /// The common value `a_i b_i` if the pair is a similitude pair.
    pub fn common_value(&self, alg: &CubicAlg<F>) -> Option<F> {
        let prod = alg.mul(&self.a, &self.b);
        let c = alg.as_scalar(&prod)?;
        if c.is_zero() {
            None
        } else {
            Some(c)
        }
    }

    /// Is the pair in the similitude torus `T'`?
    pub fn is_similitude(&self, alg: &CubicAlg<F>) -> bool {
        self.common_value(alg).is_some()
    }

    /// Is the pair in the norm-one torus `T`?
    pub fn is_norm_one(&self, alg: &CubicAlg<F>) -> bool {
        self.common_value(alg)
            .map(|c| c.is_one(alg.ctx()))
            .unwrap_or(false)
            && alg.norm(&self.a).is_one(alg.ctx())
    }

    /// Is the pair a pair of scalar triples?
    pub fn is_scalar(&self, alg: &CubicAlg<F>) -> bool {
        alg.as_scalar(&self.a).is_some() && alg.as_scalar(&self.b).is_some()
    }

    /// The torus group generator acting on cubes, for similitude pairs.
    pub fn to_gen(&self, alg: &CubicAlg<F>) -> Result<Gen<F>, ToriError> {
        if !self.is_similitude(alg) {
            return Err(ToriError::NotSimilitude);
        }
        Ok(Gen::torus(alg, self.a.clone(), self.b.clone())?)
    }
}

/// The coboundary homomorphism `T' -> T`.
pub fn h90_map<F: Scalar>(
    alg: &CubicAlg<F>,
    p: &TorusPair<F>,
) -> Result<TorusPair<F>, ToriError> {
    require_split(alg)?;
    if !p.is_similitude(alg) {
        return Err(ToriError::NotSimilitude);
    }
    let cyc = |v: &CubicElem<F>| -> CubicElem<F> {
        let inv: Vec<F> = v.0.iter().map(|x| x.inv().expect("nonzero")).collect();
        CubicElem([
            v.0[1].clone() * inv[2].clone(),
            v.0[2].clone() * inv[0].clone(),
            v.0[0].clone() * inv[1].clone(),
        ])
    };
    Ok(TorusPair {
        a: cyc(&p.a),
        b: cyc(&p.b),
    })
}

/// All points of the norm-one torus `T` over a prime field; there are
/// `(p - 1)^2` of them.
pub fn enumerate_norm_one(alg: &CubicAlg<Fp>) -> Result<Vec<TorusPair<Fp>>, ToriError> {
    require_split(alg)?;
    let ctx: FpCtx = *alg.ctx();
    let mut out = Vec::new();
    for x in ctx.all() {
        if x.is_zero() {
            continue;
        }
        for y in ctx.all() {
            if y.is_zero() {
                continue;
            }
            let z = (x * y).inv().expect("nonzero");
            let a = CubicElem([x, y, z]);
            let b = CubicElem([
                x.inv().unwrap(),
                y.inv().unwrap(),
                (x * y),
            ]);
            out.push(TorusPair::new(a, b));
        }
    }
    Ok(out)
}

/// All points of the similitude torus `T'` over a prime field; there are
/// `(p - 1)^4` of them.
pub fn enumerate_similitude(alg: &CubicAlg<Fp>) -> Result<Vec<TorusPair<Fp>>, ToriError> {
    require_split(alg)?;
    let ctx: FpCtx = *alg.ctx();
    let units: Vec<Fp> = ctx.all().filter(|x| !x.is_zero()).collect();
    let mut out = Vec::new();
    for &a1 in &units {
        for &a2 in &units {
            for &a3 in &units {
                for &c in &units {
                    let b = CubicElem([
                        c * a1.inv().unwrap(),
                        c * a2.inv().unwrap(),
                        c * a3.inv().unwrap(),
                    ]);
                    out.push(TorusPair::new(CubicElem([a1, a2, a3]), b));
                }
            }
        }
    }
    Ok(out)
}

/// Exhaustive census of the coboundary map over a prime field: returns
/// `(domain size, kernel size, image size)` and checks on the way that the
/// image is exactly the norm-one torus.
pub fn h90_census(alg: &CubicAlg<Fp>) -> Result<(usize, usize, usize), ToriError> {
    let domain = enumerate_similitude(alg)?;
    let mut kernel = 0usize;
    let mut image: Vec<TorusPair<Fp>> = Vec::new();
    let id = TorusPair::identity(alg);
    for p in &domain {
        let fp = h90_map(alg, p)?;
        assert!(fp.is_norm_one(alg), "image point must lie in T");
        if fp == id {
            kernel += 1;
            assert!(p.is_scalar(alg), "kernel point must be a scalar pair");
        }
        if !image.contains(&fp) {
            image.push(fp);
        }
    }
    let torus = enumerate_norm_one(alg)?;
    for t in &torus {
        assert!(image.contains(t), "coboundary map must be onto T");
    }
    Ok((domain.len(), kernel, image.len()))
}

/// The stabilizer of the base point `(1, 0, 0, -1)` in the split
/// similitude group, as explicit one- and two-letter words: the norm-one
/// diagonal torus together with its Weyl translate, `2 (p - 1)^2` elements.
pub fn base_stabilizer_words(alg: &CubicAlg<Fp>) -> Result<Vec<Word<Fp>>, ToriError> {
    let mut out = Vec::new();
    for p in enumerate_norm_one(alg)? {
        let t = p.to_gen(alg)?;
        out.push(vec![t.clone()]);
        out.push(vec![t, Gen::Weyl]);
    }
    Ok(out)
}

/// Normal-form membership test for the base-point stabilizer on the level
/// of 2x2 matrices: diagonal `diag(alpha, alpha^{-1})` with `N(alpha) = 1`,
/// or antidiagonal with lower entry `alpha`, upper entry `alpha^{-1}`,
/// `N(alpha) = 1`.
pub fn matrix_stabilizes_base<F: Scalar>(alg: &CubicAlg<F>, m: &Mat2E<F>) -> bool {
    let [[p, q], [r, s]] = &m.m;
    if q.is_zero() && r.is_zero() {
        if let Some(pi) = alg.inv(p) {
            return *s == pi && alg.norm(p).is_one(alg.ctx());
        }
        return false;
    }
    if p.is_zero() && s.is_zero() {
        if let Some(ri) = alg.inv(r) {
            return *q == ri && alg.norm(r).is_one(alg.ctx());
        }
        return false;
    }
    false
}

/// Does a word fix the base point? Decided by acting on it.
pub fn word_stabilizes_base<F: Scalar>(alg: &CubicAlg<F>, w: &Word<F>) -> bool {
    let v0 = Cube::base_point(alg);
    apply_word(alg, w, &v0) == v0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{sample_word, word_matrix2};
    use crate::field::{QCtx, Rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn coboundary_frozen_value() {
        let alg = CubicAlg::<Rat>::split(&QCtx);
        let p = TorusPair::new(
            CubicElem([q(2), q(1), q(1)]),
            CubicElem([q(1), q(2), q(2)]),
        );
        assert!(p.is_similitude(&alg));
        assert_eq!(p.common_value(&alg), Some(q(2)));
        let f = h90_map(&alg, &p).unwrap();
        assert_eq!(
            f.a,
            CubicElem([q(1), Rat::from_frac(1, 2), q(2)])
        );
        assert_eq!(
            f.b,
            CubicElem([q(1), q(2), Rat::from_frac(1, 2)])
        );
        assert!(f.is_norm_one(&alg));
    }

    #[test]
    fn coboundary_is_a_homomorphism() {
        let alg = CubicAlg::<Rat>::split(&QCtx);
        let mut rng = ChaCha8Rng::seed_from_u64(433);
        let sample_pair = |rng: &mut ChaCha8Rng| loop {
            let a = CubicElem([
                Rat::sample_nonzero(&QCtx, rng, 6),
                Rat::sample_nonzero(&QCtx, rng, 6),
                Rat::sample_nonzero(&QCtx, rng, 6),
            ]);
            let c = Rat::sample_nonzero(&QCtx, rng, 6);
            let b = CubicElem(std::array::from_fn(|i| {
                c.clone() * a.0[i].inv().unwrap()
            }));
            let p = TorusPair::new(a, b);
            if p.is_similitude(&alg) {
                return p;
            }
        };
        for _ in 0..50 {
            let x = sample_pair(&mut rng);
            let y = sample_pair(&mut rng);
            let lhs = h90_map(&alg, &x.mul(&alg, &y)).unwrap();
            let rhs = h90_map(&alg, &x)
                .unwrap()
                .mul(&alg, &h90_map(&alg, &y).unwrap());
            assert_eq!(lhs, rhs);
            // Images always land in T.
            assert!(lhs.is_norm_one(&alg));
            // Scalar pairs map to the identity, and conversely.
            let s = TorusPair::new(
                alg.scalar(Rat::sample_nonzero(&QCtx, &mut rng, 6)),
                alg.scalar(Rat::sample_nonzero(&QCtx, &mut rng, 6)),
            );
            assert_eq!(h90_map(&alg, &s).unwrap(), TorusPair::identity(&alg));
            let fx = h90_map(&alg, &x).unwrap();
            if fx == TorusPair::identity(&alg) {
                assert!(x.is_scalar(&alg));
            }
        }
    }

    #[test]
    fn census_over_f7() {
        let ctx = FpCtx::new(7).unwrap();
        let alg = CubicAlg::<Fp>::split(&ctx);
        let (domain, kernel, image) = h90_census(&alg).unwrap();
        assert_eq!(domain, 1296);
        assert_eq!(kernel, 36);
        assert_eq!(image, 36);
        assert_eq!(enumerate_norm_one(&alg).unwrap().len(), 36);
    }

    #[test]
    fn stabilizer_words_fix_base_point_and_are_distinct() {
        let ctx = FpCtx::new(5).unwrap();
        let alg = CubicAlg::<Fp>::split(&ctx);
        let words = base_stabilizer_words(&alg).unwrap();
        assert_eq!(words.len(), 32);
        let mut matrices: Vec<Mat2E<Fp>> = Vec::new();
        for w in &words {
            assert!(word_stabilizes_base(&alg, w));
            let m = word_matrix2(&alg, w).unwrap();
            assert!(matrix_stabilizes_base(&alg, &m));
            assert!(!matrices.contains(&m), "stabilizer words must be distinct");
            matrices.push(m);
        }
    }

    #[test]
    fn torus_fixes_base_point_iff_norm_one() {
        let ctx = FpCtx::new(5).unwrap();
        let alg = CubicAlg::<Fp>::split(&ctx);
        let units: Vec<Fp> = ctx.all().filter(|x| !x.is_zero()).collect();
        for &x in &units {
            for &y in &units {
                for &z in &units {
                    let a = CubicElem([x, y, z]);
                    let b = CubicElem([
                        x.inv().unwrap(),
                        y.inv().unwrap(),
                        z.inv().unwrap(),
                    ]);
                    let p = TorusPair::new(a.clone(), b);
                    let w = vec![p.to_gen(&alg).unwrap()];
                    let fixes = word_stabilizes_base(&alg, &w);
                    assert_eq!(fixes, alg.norm(&a).is_one(&ctx));
                }
            }
        }
    }

    #[test]
    fn normal_form_agrees_with_action_on_random_words() {
        let ctx = FpCtx::new(7).unwrap();
        let alg = CubicAlg::<Fp>::split(&ctx);
        let mut rng = ChaCha8Rng::seed_from_u64(439);
        let mut stabilizing = 0usize;
        let stab_words = base_stabilizer_words(&alg).unwrap();
        for i in 0..200 {
            // Mix random words with known stabilizer words, sometimes
            // composed with a random word and its inverse-free tail.
            let w: Word<Fp> = if i % 3 == 0 {
                stab_words[i % stab_words.len()].clone()
            } else {
                sample_word(&alg, &mut rng, 1 + i % 5, 4, &[])
            };
            let m = word_matrix2(&alg, &w).expect("word is E-linear");
            let by_action = word_stabilizes_base(&alg, &w);
            let by_matrix = matrix_stabilizes_base(&alg, &m);
            assert_eq!(by_action, by_matrix);
            if by_action {
                stabilizing += 1;
            }
        }
        assert!(stabilizing >= 60, "stabilizer cases must be exercised");
    }
}
