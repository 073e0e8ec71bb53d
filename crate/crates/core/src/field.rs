//! Exact base-field scalars: arbitrary-precision rationals and prime fields.
//!
//! Everything in this crate is generic over [`Scalar`], an *exact* field
//! element type. Two implementations are provided:
//!
//! * [`Rat`] — the rational numbers, backed by `num_rational::BigRational`;
//! * [`Fp`] — a prime field `F_p` with runtime modulus `p >= 5` (the cubic
//!   and quadratic machinery divides by 2 and 3, so characteristics 2 and 3
//!   are rejected at context construction).
//!
//! A scalar on its own cannot mint constants for `F_p` (it would not know the
//! modulus), so each implementation declares a context type [`Scalar::Ctx`]
//! — trivial for `Rat`, the validated prime for `Fp` — and constructors take
//! the context explicitly. The runtime-tagged [`FieldCtx`] descriptor is the
//! serializable form used by the CLI and JSON documents.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intfactor;

/// Errors arising from scalar arithmetic, encoding, and context validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested prime-field modulus is composite or smaller than 5.
    #[error("modulus {0} is not a prime >= 5")]
    BadModulus(u64),
    /// Division by zero or by a non-invertible element.
    #[error("division by a non-invertible element")]
    NonInvertible,
    /// Square-class canonicalization over Q could not finish factoring.
    #[error("square-class factoring exceeded trial bound {0}")]
    FactorBound(u64),
    /// A scalar (or element built from scalars) failed to decode.
    #[error("invalid scalar encoding: {0}")]
    Encoding(String),
    /// An element of F_p was combined with an element of F_q, p != q,
    /// or a quadratic extension element with a different radicand.
    #[error("mixed incompatible field contexts: {0}")]
    MixedContext(String),
}

/// Runtime descriptor of a base field, as carried by CLI flags and JSON
/// documents (`"Q"` or `{"Fp": p}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldCtx {
    Q,
    Fp(u64),
}

impl FieldCtx {
    /// Parse the CLI spelling `Q` or `Fp:<p>`.
    pub fn parse_flag(s: &str) -> Result<Self, FieldError> {
        if s == "Q" {
            return Ok(FieldCtx::Q);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| FieldError::Encoding(format!("bad prime in field flag `{s}`")))?;
            FpCtx::new(p)?;
            return Ok(FieldCtx::Fp(p));
        }
        Err(FieldError::Encoding(format!(
            "unknown field `{s}` (expected `Q` or `Fp:<p>`)"
        )))
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Q => write!(f, "Q"),
            FieldCtx::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact field element.
///
/// Arithmetic is by owned `std::ops` (implementations are cheap to clone:
/// `Fp` is `Copy`, `Rat` clones a reference-counted big integer pair), and
/// constants are minted through the associated context.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Context needed to construct constants: `()`-like for Q, the validated
    /// prime for F_p.
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    /// Recover the context an element was built with.
    fn context(&self) -> Self::Ctx;
    /// The serializable descriptor for this context.
    fn describe(ctx: &Self::Ctx) -> FieldCtx;

    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Canonical square-class representative of a scalar (see [`SquareClass`]).
    fn square_class(ctx: &Self::Ctx, x: &Self) -> Result<SquareClass<Self>, FieldError>;

    /// Random element for fuzzing. Over Q this bounds numerator and
    /// denominator by `height`; over F_p it is uniform and ignores `height`.
    fn sample<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R, height: u64) -> Self;

    /// JSON encoding: `"n/d"` strings over Q, plain integers over F_p.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(ctx: &Self::Ctx, v: &serde_json::Value) -> Result<Self, FieldError>;

    fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        rhs.inv()
            .map(|i| self.clone() * i)
            .ok_or(FieldError::NonInvertible)
    }

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }

    fn is_one(&self, ctx: &Self::Ctx) -> bool {
        *self == Self::one(ctx)
    }

    /// Nonzero random element.
    fn sample_nonzero<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R, height: u64) -> Self {
        loop {
            let x = Self::sample(ctx, rng, height);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

/// The square class of a field element, held by a canonical representative.
///
/// Over Q the representative is the squarefree integer `sign(x) * prod(p : p
/// divides x to an odd power)`; over F_p it is `0`, `1`, or the smallest
/// quadratic nonresidue. The zero class is its own marker (`rep == 0`), kept
/// distinct so degenerate discriminants are never silently conflated with
/// trivial ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareClass<F: Scalar>(F);

impl<F: Scalar> SquareClass<F> {
    /// Canonicalize the class of `x`.
    pub fn of(ctx: &F::Ctx, x: &F) -> Result<Self, FieldError> {
        F::square_class(ctx, x)
    }

    /// Build from an already-canonical representative (used by the `Scalar`
    /// impls; not checked).
    pub(crate) fn from_canonical(rep: F) -> Self {
        SquareClass(rep)
    }

    pub fn rep(&self) -> &F {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The trivial (square) class.
    pub fn is_trivial(&self, ctx: &F::Ctx) -> bool {
        self.0 == F::one(ctx)
    }

    /// Class multiplication: canonicalize the product of representatives.
    /// Multiplying by the zero class yields the zero class.
    pub fn mul(&self, ctx: &F::Ctx, other: &Self) -> Result<Self, FieldError> {
        F::square_class(ctx, &(self.0.clone() * other.0.clone()))
    }
}

impl<F: Scalar> fmt::Display for SquareClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Context for [`Rat`]; carries no data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QCtx;

/// An exact rational number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(value: BigRational) -> Self {
        Rat(value)
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    /// `n / d`; panics if `d == 0`.
    pub fn from_frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// The rational is an integer (denominator 1).
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Integer value if the denominator is 1.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.numer().clone())
    }

    pub fn parse(s: &str) -> Result<Self, FieldError> {
        s.parse::<BigRational>()
            .map(Rat)
            .map_err(|e| FieldError::Encoding(format!("bad rational `{s}`: {e}")))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Scalar for Rat {
    type Ctx = QCtx;

    fn zero(_: &QCtx) -> Self {
        Rat(BigRational::zero())
    }

    fn one(_: &QCtx) -> Self {
        Rat(BigRational::one())
    }

    fn from_i64(_: &QCtx, n: i64) -> Self {
        Rat::from_int(n)
    }

    fn context(&self) -> QCtx {
        QCtx
    }

    fn describe(_: &QCtx) -> FieldCtx {
        FieldCtx::Q
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rat(self.0.recip()))
    }

    fn square_class(_: &QCtx, x: &Self) -> Result<SquareClass<Self>, FieldError> {
        if x.0.is_zero() {
            return Ok(SquareClass::from_canonical(Rat(BigRational::zero())));
        }
        // x = n/d has the square class of n*d.
        let nd = x.0.numer() * x.0.denom();
        let rep = intfactor::squarefree_part(&nd)?;
        Ok(SquareClass::from_canonical(Rat::from_bigint(rep)))
    }

    fn sample<R: Rng + ?Sized>(_: &QCtx, rng: &mut R, height: u64) -> Self {
        let h = height.max(1) as i64;
        let n = rng.gen_range(-h..=h);
        let d = rng.gen_range(1..=h);
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.0.to_string())
    }

    fn from_json(_: &QCtx, v: &serde_json::Value) -> Result<Self, FieldError> {
        match v {
            serde_json::Value::String(s) => Rat::parse(s),
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| FieldError::Encoding(format!("non-integer number {n}")))?;
                Ok(Rat::from_int(i))
            }
            other => Err(FieldError::Encoding(format!(
                "expected rational string, got {other}"
            ))),
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// A validated prime-field context: `p` prime, `p >= 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpCtx {
    p: u64,
}

impl FpCtx {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 5 && intfactor::is_prime_u64(p) {
            Ok(FpCtx { p })
        } else {
            Err(FieldError::BadModulus(p))
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn el(&self, n: i64) -> Fp {
        Fp::from_i64(self, n)
    }

    /// Smallest quadratic nonresidue mod p (exists for every odd prime).
    pub fn smallest_nonresidue(&self) -> Fp {
        for a in 2..self.p {
            let x = Fp { p: self.p, v: a };
            if !x.is_square() {
                return x;
            }
        }
        unreachable!("every odd prime has a nonresidue below p")
    }

    /// All field elements, in order `0, 1, ..., p-1`.
    pub fn all(&self) -> impl Iterator<Item = Fp> + '_ {
        let p = self.p;
        (0..p).map(move |v| Fp { p, v })
    }
}

/// An element of F_p. Carries its modulus; mixing moduli panics, since it is
/// always a programming error (document-level mismatches are caught at
/// decode time).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
    v: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn check(self, rhs: Fp) -> (u64, u64, u64) {
        assert_eq!(
            self.p, rhs.p,
            "mixed prime-field moduli {} and {}",
            self.p, rhs.p
        );
        (self.p, self.v, rhs.v)
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { p: self.p, v: 1 };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Euler's criterion; 0 counts as a square.
    pub fn is_square(self) -> bool {
        self.v == 0 || self.pow((self.p - 1) / 2).v == 1
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (p, a, b) = self.check(rhs);
        let mut s = a + b; // p < 2^63, no overflow
        if s >= p {
            s -= p;
        }
        Fp { p, v: s }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (p, a, b) = self.check(rhs);
        Fp {
            p,
            v: if a >= b { a - b } else { a + p - b },
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (p, a, b) = self.check(rhs);
        Fp {
            p,
            v: ((a as u128 * b as u128) % p as u128) as u64,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            p: self.p,
            v: if self.v == 0 { 0 } else { self.p - self.v },
        }
    }
}

impl Scalar for Fp {
    type Ctx = FpCtx;

    fn zero(ctx: &FpCtx) -> Self {
        Fp { p: ctx.p, v: 0 }
    }

    fn one(ctx: &FpCtx) -> Self {
        Fp { p: ctx.p, v: 1 }
    }

    fn from_i64(ctx: &FpCtx, n: i64) -> Self {
        let p = ctx.p as i128;
        let v = ((n as i128 % p) + p) % p;
        Fp {
            p: ctx.p,
            v: v as u64,
        }
    }

    fn context(&self) -> FpCtx {
        FpCtx { p: self.p }
    }

    fn describe(ctx: &FpCtx) -> FieldCtx {
        FieldCtx::Fp(ctx.p)
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn inv(&self) -> Option<Self> {
        (self.v != 0).then(|| self.pow(self.p - 2))
    }

    fn square_class(ctx: &FpCtx, x: &Self) -> Result<SquareClass<Self>, FieldError> {
        let rep = if x.v == 0 {
            Fp { p: ctx.p, v: 0 }
        } else if x.is_square() {
            Fp { p: ctx.p, v: 1 }
        } else {
            ctx.smallest_nonresidue()
        };
        Ok(SquareClass::from_canonical(rep))
    }

    fn sample<R: Rng + ?Sized>(ctx: &FpCtx, rng: &mut R, _height: u64) -> Self {
        Fp {
            p: ctx.p,
            v: rng.gen_range(0..ctx.p),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Number(self.v.into())
    }

    fn from_json(ctx: &FpCtx, v: &serde_json::Value) -> Result<Self, FieldError> {
        match v {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| FieldError::Encoding(format!("non-integer number {n}")))?;
                Ok(Fp::from_i64(ctx, i))
            }
            // Accept digit strings too, so documents written for Q with
            // integer entries can be reinterpreted mod p.
            serde_json::Value::String(s) => {
                let i: i64 = s
                    .parse()
                    .map_err(|_| FieldError::Encoding(format!("bad F_p element `{s}`")))?;
                Ok(Fp::from_i64(ctx, i))
            }
            other => Err(FieldError::Encoding(format!(
                "expected F_p element, got {other}"
            ))),
        }
    }
}
