//! Quadratic extension elements `x + y*sqrt(d)` over an exact base field.
//!
//! The radicand `d` rides along with each element; operations insist both
//! operands carry the same `d`. When `d` is a nonzero square the "extension"
//! splits as F x F — that is a perfectly good quadratic etale algebra, so it
//! is not rejected, but such elements can be non-invertible with nonzero
//! coordinates (norm zero), which is why [`QuadExt::inv`] is fallible.

use std::fmt;

use serde::Serialize;

use crate::field::{FieldError, Scalar};
use crate::linalg::Ring;

/// `x + y*sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt<F: Scalar> {
    x: F,
    y: F,
    d: F,
}

impl<F: Scalar> QuadExt<F> {
    pub fn new(x: F, y: F, d: F) -> Self {
        QuadExt { x, y, d }
    }

    pub fn from_scalar(s: F, d: F) -> Self {
        let zero = F::zero(&s.context());
        QuadExt { x: s, y: zero, d }
    }

    /// `sqrt(d)` itself.
    pub fn radical(ctx: &F::Ctx, d: F) -> Self {
        QuadExt {
            x: F::zero(ctx),
            y: F::one(ctx),
            d,
        }
    }

    pub fn x(&self) -> &F {
        &self.x
    }

    pub fn y(&self) -> &F {
        &self.y
    }

    pub fn d(&self) -> &F {
        &self.d
    }

    fn check(&self, o: &Self) {
        assert_eq!(
            self.d, o.d,
            "mixed quadratic extensions: sqrt({}) vs sqrt({})",
            self.d, o.d
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        QuadExt {
            x: self.x.clone() + o.x.clone(),
            y: self.y.clone() + o.y.clone(),
            d: self.d.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        QuadExt {
            x: self.x.clone() - o.x.clone(),
            y: self.y.clone() - o.y.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        // (x + y√d)(u + v√d) = (xu + d yv) + (xv + yu)√d
        QuadExt {
            x: self.x.clone() * o.x.clone() + self.d.clone() * self.y.clone() * o.y.clone(),
            y: self.x.clone() * o.y.clone() + self.y.clone() * o.x.clone(),
            d: self.d.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        QuadExt {
            x: -self.x.clone(),
            y: -self.y.clone(),
            d: self.d.clone(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        QuadExt {
            x: self.x.clone() * s.clone(),
            y: self.y.clone() * s.clone(),
            d: self.d.clone(),
        }
    }

    /// Galois conjugate `x - y*sqrt(d)`.
    pub fn conj(&self) -> Self {
        QuadExt {
            x: self.x.clone(),
            y: -self.y.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm `x^2 - d y^2`.
    pub fn norm(&self) -> F {
        self.x.sq() - self.d.clone() * self.y.sq()
    }

    /// Field trace `2x`.
    pub fn trace(&self) -> F {
        self.x.clone() + self.x.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// True if the element lies in the base field (`y == 0`).
    pub fn is_base(&self) -> bool {
        self.y.is_zero()
    }

    /// `conj(self) / norm(self)`. `None` when the norm vanishes, which for a
    /// split radicand happens on nonzero elements too.
    pub fn inv(&self) -> Result<Self, FieldError> {
        let n = self.norm();
        let ni = n.inv().ok_or(FieldError::NonInvertible)?;
        Ok(self.conj().scale(&ni))
    }

    pub fn div(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "d": self.d.to_json(),
        })
    }

    pub fn from_json(ctx: &F::Ctx, v: &serde_json::Value) -> Result<Self, FieldError> {
        let obj = v
            .as_object()
            .ok_or_else(|| FieldError::Encoding(format!("expected {{x,y,d}} object, got {v}")))?;
        let field = |k: &str| {
            obj.get(k)
                .ok_or_else(|| FieldError::Encoding(format!("missing `{k}` in quadratic element")))
                .and_then(|j| F::from_json(ctx, j))
        };
        Ok(QuadExt {
            x: field("x")?,
            y: field("y")?,
            d: field("d")?,
        })
    }
}

impl<F: Scalar> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.x, self.y, self.d)
    }
}

impl<F: Scalar> Serialize for QuadExt<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<F: Scalar> Ring for QuadExt<F> {
    fn zero_like(&self) -> Self {
        let ctx = self.x.context();
        QuadExt {
            x: F::zero(&ctx),
            y: F::zero(&ctx),
            d: self.d.clone(),
        }
    }
    fn one_like(&self) -> Self {
        let ctx = self.x.context();
        QuadExt {
            x: F::one(&ctx),
            y: F::zero(&ctx),
            d: self.d.clone(),
        }
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn rneg(&self) -> Self {
        self.neg()
    }
    fn r_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn conj(&self) -> Self {
        QuadExt::conj(self)
    }
}
