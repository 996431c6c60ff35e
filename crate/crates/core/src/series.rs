//! Truncated formal power series in `d` variables.
//!
//! A [`Series`] with truncation `k` is an exact element of
//! `K[[x1..xd]] / M^(k+1)`: every coefficient of total degree `<= k` is
//! known, nothing above it is represented. Arithmetic between series of
//! different truncation (or ring, or dimension) is an error; use
//! [`Series::lower_truncation`] to move down the tower explicitly.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::monomial::Monomial;
use crate::ring::{Elem, Ring};

#[derive(Clone)]
pub struct Series {
    ring: Ring,
    layout: Arc<Layout>,
    /// Dense by grlex rank; zero coefficients are stored as the ring zero,
    /// so equality is structural.
    coeffs: Vec<Elem>,
}

impl PartialEq for Series {
    fn eq(&self, o: &Series) -> bool {
        self.ring == o.ring
            && self.dim() == o.dim()
            && self.trunc() == o.trunc()
            && self.coeffs == o.coeffs
    }
}

impl Eq for Series {}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{} d={} k={}]({})", self.ring, self.dim(), self.trunc(), self)
    }
}

impl Series {
    pub fn zero(dim: usize, trunc: u32, ring: Ring) -> Series {
        let layout = Layout::get(dim, trunc);
        let coeffs = vec![ring.zero(); layout.len()];
        Series {
            ring,
            layout,
            coeffs,
        }
    }

    pub fn constant(dim: usize, trunc: u32, c: Elem) -> Series {
        let mut s = Series::zero(dim, trunc, c.ring());
        s.coeffs[0] = c;
        s
    }

    pub fn one(dim: usize, trunc: u32, ring: Ring) -> Series {
        Series::constant(dim, trunc, ring.one())
    }

    /// `x_{j+1}` (zero-based `j`).
    pub fn variable(dim: usize, j: usize, trunc: u32, ring: Ring) -> Series {
        let mut s = Series::zero(dim, trunc, ring);
        if let Some(r) = s.layout.var_rank(j) {
            s.coeffs[r] = ring.one();
        }
        s
    }

    /// Builds `sum c_m m`, projecting away terms of degree above `trunc`.
    /// Repeated monomials accumulate.
    pub fn from_terms<I>(dim: usize, trunc: u32, ring: Ring, terms: I) -> Result<Series>
    where
        I: IntoIterator<Item = (Monomial, Elem)>,
    {
        let mut s = Series::zero(dim, trunc, ring);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch(dim, m.dim()));
            }
            if c.ring() != ring {
                return Err(Error::ContextMismatch(ring.to_string(), c.ring().to_string()));
            }
            if let Some(r) = s.layout.rank(&m) {
                s.coeffs[r] = &s.coeffs[r] + &c;
            }
        }
        Ok(s)
    }

    pub(crate) fn from_dense(ring: Ring, layout: Arc<Layout>, coeffs: Vec<Elem>) -> Series {
        debug_assert_eq!(coeffs.len(), layout.len());
        Series {
            ring,
            layout,
            coeffs,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn trunc(&self) -> u32 {
        self.layout.trunc()
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    /// Coefficients by grlex rank.
    pub fn dense(&self) -> &[Elem] {
        &self.coeffs
    }

    /// `f_m`. Monomials above the truncation are unknown, not zero.
    pub fn coeff(&self, m: &Monomial) -> Result<Elem> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), m.dim()));
        }
        match self.layout.rank(m) {
            Some(r) => Ok(self.coeffs[r].clone()),
            None => Err(Error::TruncationExceeded {
                degree: m.degree(),
                trunc: self.trunc(),
            }),
        }
    }

    pub fn constant_term(&self) -> &Elem {
        &self.coeffs[0]
    }

    /// Nonzero terms in grlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.layout.monomial(i), c))
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms().map(|(m, _)| m.clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Elem::is_zero)
    }

    /// Membership in the ideal `M` of series without constant term.
    pub fn in_maximal_ideal(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn order(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.layout.degree(i))
    }

    pub(crate) fn check_compatible(&self, o: &Series) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::ContextMismatch(self.ring.to_string(), o.ring.to_string()));
        }
        if self.dim() != o.dim() {
            return Err(Error::DimensionMismatch(self.dim(), o.dim()));
        }
        if self.trunc() != o.trunc() {
            return Err(Error::TruncationMismatch(self.trunc(), o.trunc()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Series) -> Result<Series> {
        self.check_compatible(o)?;
        Ok(self.zip_with(o, |a, b| a + b))
    }

    pub fn sub(&self, o: &Series) -> Result<Series> {
        self.check_compatible(o)?;
        Ok(self.zip_with(o, |a, b| a - b))
    }

    fn zip_with(&self, o: &Series, op: impl Fn(&Elem, &Elem) -> Elem) -> Series {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| op(a, b)).collect();
        Series::from_dense(self.ring, self.layout.clone(), coeffs)
    }

    pub fn neg(&self) -> Series {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        Series::from_dense(self.ring, self.layout.clone(), coeffs)
    }

    pub fn scale(&self, c: &Elem) -> Result<Series> {
        if c.ring() != self.ring {
            return Err(Error::ContextMismatch(self.ring.to_string(), c.ring().to_string()));
        }
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Ok(Series::from_dense(self.ring, self.layout.clone(), coeffs))
    }

    /// Truncated convolution `(fg)_m = sum_{p | m} f_p g_{m/p}`.
    pub fn mul(&self, o: &Series) -> Result<Series> {
        self.check_compatible(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &Series) -> Series {
        let l = &self.layout;
        let mut out = vec![self.ring.zero(); l.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (&t, b) in l.products(i).iter().zip(&o.coeffs) {
                if !b.is_zero() {
                    out[t as usize].add_mul(a, b);
                }
            }
        }
        Series::from_dense(self.ring, l.clone(), out)
    }

    pub fn pow(&self, mut e: u32) -> Series {
        let mut acc = Series::one(self.dim(), self.trunc(), self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `v(f)`, the highest common factor of the support.
    pub fn vertex(&self) -> Result<Monomial> {
        let support = self.support();
        if support.is_empty() {
            return Err(Error::VertexOfZero);
        }
        Monomial::hcf(&support)
    }

    /// `(v(f), f / v(f))`. The quotient has vertex `1` and truncation
    /// `trunc - deg v(f)`, the range on which it is still exact.
    pub fn factor_out_vertex(&self) -> Result<(Monomial, Series)> {
        let v = self.vertex()?;
        let h = self.div_by_monomial(&v)?;
        Ok((v, h))
    }

    /// `f / p` for a monomial `p` dividing every support monomial. Known on
    /// degrees `<= trunc - deg p`.
    pub fn div_by_monomial(&self, p: &Monomial) -> Result<Series> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), p.dim()));
        }
        if let Some((m, _)) = self.terms().find(|(m, _)| !p.divides(m)) {
            return Err(Error::NotAFactor(p.to_string(), m.to_string()));
        }
        let trunc = self.trunc().checked_sub(p.degree()).ok_or(Error::TruncationExceeded {
            degree: p.degree(),
            trunc: self.trunc(),
        })?;
        let terms = self
            .terms()
            .map(|(m, c)| (m.quotient(p).expect("checked divisibility"), c.clone()));
        Series::from_terms(self.dim(), trunc, self.ring, terms.collect::<Vec<_>>())
    }

    /// `p * f`, known on degrees `<= trunc + deg p`.
    pub fn mul_monomial(&self, p: &Monomial) -> Result<Series> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), p.dim()));
        }
        let trunc = self
            .trunc()
            .checked_add(p.degree())
            .ok_or(Error::ExponentOverflow)?;
        let terms = self
            .terms()
            .map(|(m, c)| Ok((m.mul(p)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Series::from_terms(self.dim(), trunc, self.ring, terms)
    }

    /// A series is a unit iff its constant term is a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.coeffs[0].is_unit()
    }

    /// Multiplicative inverse. With `a = 1/f_1` and `a f = 1 + h`, the
    /// inverse is `a (1 - h + h^2 - ...)`; `h^r` vanishes mod `M^(k+1)` for
    /// `r > k`, so the sum is finite.
    pub fn inverse(&self) -> Result<Series> {
        let alpha = self
            .coeffs[0]
            .unit_inverse()
            .map_err(|_| Error::NotAUnit(self.to_string()))?;
        let one = Series::one(self.dim(), self.trunc(), self.ring);
        let h = self.scale(&alpha)?.sub(&one)?;
        let mut acc = one.clone();
        for _ in 0..self.trunc() {
            acc = one.sub(&h.mul_unchecked(&acc))?;
        }
        acc.scale(&alpha)
    }

    /// The projection `pi_j` onto `K[[x]] / M^(j+1)`.
    pub fn lower_truncation(&self, j: u32) -> Result<Series> {
        if j > self.trunc() {
            return Err(Error::TruncationExceeded {
                degree: j,
                trunc: self.trunc(),
            });
        }
        let layout = Layout::get(self.dim(), j);
        let coeffs = self.coeffs[..layout.len()].to_vec();
        Ok(Series::from_dense(self.ring, layout, coeffs))
    }

    /// Lowers `self` to `trunc` if needed (no-op when equal).
    pub(crate) fn at_trunc(&self, trunc: u32) -> Result<Series> {
        if trunc == self.trunc() {
            Ok(self.clone())
        } else {
            self.lower_truncation(trunc)
        }
    }
}

macro_rules! series_op {
    ($tr:ident, $method:ident) => {
        /// Panics on incompatible operands; use the inherent method for a
        /// `Result`.
        impl std::ops::$tr<&Series> for &Series {
            type Output = Series;

            fn $method(self, o: &Series) -> Series {
                Series::$method(self, o).expect("incompatible series")
            }
        }
    };
}

series_op!(Add, add);
series_op!(Sub, sub);
series_op!(Mul, mul);

impl fmt::Display for Series {
    /// Renders as a polynomial in the expression grammar, e.g.
    /// `1 - x1 + 3/2*x1^2`; the zero series is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (m.is_one(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Vec<u32>,
    c: String,
}

/// Wire form: `{"d", "trunc", "ring", "terms": [{"e", "c"}]}` with terms
/// in grlex order and coefficients as strings.
#[derive(Serialize, Deserialize)]
pub(crate) struct SeriesJson {
    d: usize,
    trunc: u32,
    ring: Ring,
    terms: Vec<TermJson>,
}

impl From<&Series> for SeriesJson {
    fn from(s: &Series) -> SeriesJson {
        SeriesJson {
            d: s.dim(),
            trunc: s.trunc(),
            ring: s.ring,
            terms: s
                .terms()
                .map(|(m, c)| TermJson {
                    e: m.exps().to_vec(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesJson> for Series {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Series> {
        let mut s = Series::zero(j.d, j.trunc, j.ring);
        for t in j.terms {
            let m = Monomial::new(t.e);
            if m.dim() != j.d {
                return Err(Error::Format(format!("exponent vector {m} has wrong length")));
            }
            let r = s.layout.rank(&m).ok_or_else(|| {
                Error::Format(format!("term {m} lies above truncation {}", j.trunc))
            })?;
            if !s.coeffs[r].is_zero() {
                return Err(Error::Format(format!("duplicate term {m}")));
            }
            s.coeffs[r] = j.ring.parse_elem(&t.c)?;
        }
        Ok(s)
    }
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Series, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        Series::try_from(j).map_err(serde::de::Error::custom)
    }
}
