//! Riordan elements `(f, g)` and their product
//! `(f, g)(f', g') = (f * (f' o g), g' o g)`.
//!
//! One type covers both the semigroup of all pairs (`f` any series, `g` any
//! formal map) and the group of invertible pairs; invertibility is a runtime
//! predicate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal_map::FormalMap;
use crate::ring::Ring;
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiordanElement {
    f: Series,
    g: FormalMap,
}

impl RiordanElement {
    pub fn new(f: Series, g: FormalMap) -> Result<RiordanElement> {
        g.check_series(&f)?;
        Ok(RiordanElement { f, g })
    }

    pub fn identity(dim: usize, trunc: u32, ring: Ring) -> RiordanElement {
        RiordanElement {
            f: Series::one(dim, trunc, ring),
            g: FormalMap::identity(dim, trunc, ring),
        }
    }

    /// `(f, id)`.
    pub fn appell(f: Series) -> RiordanElement {
        let g = FormalMap::identity(f.dim(), f.trunc(), f.ring());
        RiordanElement { f, g }
    }

    /// `(1, g)`.
    pub fn lagrange(g: FormalMap) -> RiordanElement {
        let f = Series::one(g.dim(), g.trunc(), g.ring());
        RiordanElement { f, g }
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn g(&self) -> &FormalMap {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn trunc(&self) -> u32 {
        self.f.trunc()
    }

    pub fn ring(&self) -> Ring {
        self.f.ring()
    }

    pub fn is_appell(&self) -> bool {
        self.g.is_identity()
    }

    pub fn is_lagrange(&self) -> bool {
        self.f == Series::one(self.dim(), self.trunc(), self.ring())
    }

    pub fn lower_truncation(&self, j: u32) -> Result<RiordanElement> {
        Ok(RiordanElement {
            f: self.f.lower_truncation(j)?,
            g: self.g.lower_truncation(j)?,
        })
    }

    pub(crate) fn check(&self, o: &RiordanElement) -> Result<()> {
        self.f.check_compatible(&o.f)
    }

    /// `(f * (f' o g), g' o g)`.
    pub fn mul(&self, o: &RiordanElement) -> Result<RiordanElement> {
        self.check(o)?;
        Ok(RiordanElement {
            f: self.f.mul(&self.g.compose_series(&o.f)?)?,
            g: o.g.compose(&self.g)?,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.f.is_unit() && self.g.is_invertible()
    }

    /// `(f^-1 o g^-1, g^-1)`, checked by multiplying back on both sides.
    pub fn inverse(&self) -> Result<RiordanElement> {
        let g_inv = self.g.inverse()?;
        let f_inv = g_inv.compose_series(&self.f.inverse()?)?;
        let inv = RiordanElement { f: f_inv, g: g_inv };
        let id = RiordanElement::identity(self.dim(), self.trunc(), self.ring());
        if self.mul(&inv)? != id || inv.mul(self)? != id {
            return Err(Error::Internal(format!(
                "Riordan inverse failed to round-trip for f = {}",
                self.f
            )));
        }
        Ok(inv)
    }

    /// The action `u -> f * (u o g)`.
    pub fn apply(&self, u: &Series) -> Result<Series> {
        self.f.mul(&self.g.compose_series(u)?)
    }
}

#[derive(Deserialize)]
struct RiordanJson {
    f: Series,
    g: FormalMap,
}

impl<'de> Deserialize<'de> for RiordanElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<RiordanElement, D::Error> {
        let j = RiordanJson::deserialize(d)?;
        RiordanElement::new(j.f, j.g).map_err(serde::de::Error::custom)
    }
}
