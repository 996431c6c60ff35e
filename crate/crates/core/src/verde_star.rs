//! Laurent series with support bounded below, the coordinatewise product on
//! tuples of series, the subgroup `K = {x*h : h_j units}` of formal maps,
//! and the group of pairs `(f, x*h)` with `f` a Laurent unit.
//!
//! A [`LaurentSeries`] is `x^v * body` with `body` an ordinary [`Series`].
//! Its accuracy is the body's truncation: the coefficient at `x^v * m` is
//! exact for `deg m <= accuracy` and unknown beyond.
//!
//! Over an integral domain the vertex is multiplicative (look at the lowest
//! power of each `x_j` separately), so products add vertices and never need
//! renormalising.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal_map::FormalMap;
use crate::monomial::{Monomial, SignedMonomial};
use crate::ring::{Elem, Ring};
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    vertex: SignedMonomial,
    body: Series,
}

impl LaurentSeries {
    /// `x^vertex * body`. The body is taken as given; use
    /// [`LaurentSeries::normalize`] to pull its vertex out.
    pub fn new(vertex: SignedMonomial, body: Series) -> Result<LaurentSeries> {
        if vertex.dim() != body.dim() {
            return Err(Error::DimensionMismatch(body.dim(), vertex.dim()));
        }
        Ok(LaurentSeries { vertex, body })
    }

    /// Builds from finitely many terms: the vertex is the infimum of the
    /// support and the body is the shifted polynomial, kept to `accuracy`.
    /// An empty (or all-zero) term list gives zero.
    pub fn normalize<I>(dim: usize, ring: Ring, accuracy: u32, terms: I) -> Result<LaurentSeries>
    where
        I: IntoIterator<Item = (SignedMonomial, Elem)>,
    {
        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Ok(LaurentSeries::zero(dim, accuracy, ring));
        }
        let vertex = SignedMonomial::inf(terms.iter().map(|(m, _)| m))?;
        let shifted = terms
            .into_iter()
            .map(|(m, c)| {
                let e = m.div(&vertex)?.to_monomial().expect("vertex is the infimum");
                Ok((e, c))
            })
            .collect::<Result<Vec<_>>>()?;
        let body = Series::from_terms(dim, accuracy, ring, shifted)?;
        LaurentSeries::new(vertex, body)
    }

    /// An ordinary series viewed in the Laurent algebra, with its vertex
    /// factored out (accuracy drops by the vertex degree).
    pub fn from_series(f: &Series) -> Result<LaurentSeries> {
        if f.is_zero() {
            return Ok(LaurentSeries::zero(f.dim(), f.trunc(), f.ring()));
        }
        let (v, body) = f.factor_out_vertex()?;
        let exps = v.exps().iter().map(|&e| e as i32).collect();
        LaurentSeries::new(SignedMonomial::new(exps), body)
    }

    pub fn zero(dim: usize, accuracy: u32, ring: Ring) -> LaurentSeries {
        LaurentSeries {
            vertex: SignedMonomial::one(dim),
            body: Series::zero(dim, accuracy, ring),
        }
    }

    pub fn one(dim: usize, accuracy: u32, ring: Ring) -> LaurentSeries {
        LaurentSeries {
            vertex: SignedMonomial::one(dim),
            body: Series::one(dim, accuracy, ring),
        }
    }

    /// The monomial `x^m`.
    pub fn monomial(m: SignedMonomial, accuracy: u32, ring: Ring) -> LaurentSeries {
        let body = Series::one(m.dim(), accuracy, ring);
        LaurentSeries { vertex: m, body }
    }

    pub fn vertex(&self) -> &SignedMonomial {
        &self.vertex
    }

    pub fn body(&self) -> &Series {
        &self.body
    }

    pub fn accuracy(&self) -> u32 {
        self.body.trunc()
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn ring(&self) -> Ring {
        self.body.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Coefficient at `x^m`: zero below the vertex, an error beyond the
    /// accuracy window.
    pub fn coeff(&self, m: &SignedMonomial) -> Result<Elem> {
        let offset = m.div(&self.vertex)?;
        let Some(e) = offset.to_monomial() else {
            return Ok(self.ring().zero());
        };
        if e.degree() > self.accuracy() {
            return Err(Error::AccuracyExceeded {
                degree: e.degree(),
                accuracy: self.accuracy(),
            });
        }
        self.body.coeff(&e)
    }

    /// Nonzero known terms, as `(x^v * m, c)`.
    pub fn terms(&self) -> Vec<(SignedMonomial, Elem)> {
        self.body
            .terms()
            .map(|(m, c)| (shift(&self.vertex, m), c.clone()))
            .collect()
    }

    pub fn lower_accuracy(&self, o: u32) -> Result<LaurentSeries> {
        Ok(LaurentSeries {
            vertex: self.vertex.clone(),
            body: self.body.at_trunc(o)?,
        })
    }

    fn check(&self, o: &LaurentSeries) -> Result<()> {
        if self.ring() != o.ring() {
            return Err(Error::ContextMismatch(self.ring().to_string(), o.ring().to_string()));
        }
        if self.dim() != o.dim() {
            return Err(Error::DimensionMismatch(self.dim(), o.dim()));
        }
        Ok(())
    }

    /// Product; accuracy is the smaller of the two.
    pub fn mul(&self, o: &LaurentSeries) -> Result<LaurentSeries> {
        self.check(o)?;
        let acc = self.accuracy().min(o.accuracy());
        let body = self.body.at_trunc(acc)?.mul(&o.body.at_trunc(acc)?)?;
        if body.is_zero() {
            return Ok(LaurentSeries::zero(self.dim(), acc, self.ring()));
        }
        LaurentSeries::new(self.vertex.mul(&o.vertex)?, body)
    }

    /// A unit iff the coefficient at the vertex is a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.body.is_unit()
    }

    /// `x^-v * body^-1`.
    pub fn inverse(&self) -> Result<LaurentSeries> {
        let body = self.body.inverse().map_err(|_| Error::NotAUnit(self.to_string()))?;
        LaurentSeries::new(self.vertex.inv()?, body)
    }
}

fn shift(v: &SignedMonomial, m: &Monomial) -> SignedMonomial {
    SignedMonomial::new(v.exps().iter().zip(m.exps()).map(|(a, &b)| a + b as i32).collect())
}

impl fmt::Display for LaurentSeries {
    /// `x1^-1*(1 + x1)`; a trivial vertex is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vertex.is_one() || self.is_zero() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "{}*({})", self.vertex, self.body)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    vertex: Vec<i32>,
    body: Series,
    accuracy: u32,
}

impl Serialize for LaurentSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson {
            vertex: self.vertex.exps().to_vec(),
            body: self.body.clone(),
            accuracy: self.accuracy(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<LaurentSeries, D::Error> {
        use serde::de::Error as _;
        let j = LaurentJson::deserialize(d)?;
        if j.accuracy != j.body.trunc() {
            return Err(D::Error::custom("accuracy must equal the body truncation"));
        }
        LaurentSeries::new(SignedMonomial::new(j.vertex), j.body).map_err(D::Error::custom)
    }
}

/// A `d`-tuple of series under the coordinatewise product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Series>", into = "Vec<Series>")]
pub struct StarTuple {
    comps: Vec<Series>,
}

impl TryFrom<Vec<Series>> for StarTuple {
    type Error = Error;

    fn try_from(comps: Vec<Series>) -> Result<StarTuple> {
        StarTuple::new(comps)
    }
}

impl From<StarTuple> for Vec<Series> {
    fn from(t: StarTuple) -> Vec<Series> {
        t.comps
    }
}

impl StarTuple {
    pub fn new(comps: Vec<Series>) -> Result<StarTuple> {
        let first = comps.first().ok_or(Error::DimensionMismatch(0, 0))?;
        if comps.len() != first.dim() {
            return Err(Error::DimensionMismatch(first.dim(), comps.len()));
        }
        for c in &comps {
            first.check_compatible(c)?;
        }
        Ok(StarTuple { comps })
    }

    /// `(1, ..., 1)`, the identity for `*`.
    pub fn ones(dim: usize, trunc: u32, ring: Ring) -> StarTuple {
        StarTuple {
            comps: vec![Series::one(dim, trunc, ring); dim],
        }
    }

    pub fn components(&self) -> &[Series] {
        &self.comps
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn trunc(&self) -> u32 {
        self.comps[0].trunc()
    }

    pub fn ring(&self) -> Ring {
        self.comps[0].ring()
    }

    pub fn lower_truncation(&self, j: u32) -> Result<StarTuple> {
        let comps = self.comps.iter().map(|c| c.at_trunc(j)).collect::<Result<_>>()?;
        Ok(StarTuple { comps })
    }

    /// `(f1 f1', ..., fd fd')`.
    pub fn mul(&self, o: &StarTuple) -> Result<StarTuple> {
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<_>>()?;
        Ok(StarTuple { comps })
    }

    pub fn is_unit(&self) -> bool {
        self.comps.iter().all(Series::is_unit)
    }

    fn check_units(&self) -> Result<()> {
        match self.comps.iter().position(|c| !c.is_unit()) {
            Some(j) => Err(Error::NotInK(j)),
            None => Ok(()),
        }
    }

    /// `x*h = (x1 h1, ..., xd hd)`, exact to truncation `trunc + 1`.
    pub fn k_map(&self) -> Result<FormalMap> {
        self.check_units()?;
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(j, c)| c.mul_monomial(&Monomial::var(self.dim(), j)))
            .collect::<Result<_>>()?;
        FormalMap::new(comps)
    }

    /// Inverse of [`StarTuple::k_map`]: divides each `g_j` by `x_j`.
    pub fn from_k_map(g: &FormalMap) -> Result<StarTuple> {
        let comps = g
            .components()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                c.div_by_monomial(&Monomial::var(g.dim(), j))
                    .map_err(|_| Error::NotInK(j))
            })
            .collect::<Result<_>>()?;
        let t = StarTuple { comps };
        t.check_units()?;
        Ok(t)
    }

    /// `x*h` as a map at this tuple's own truncation.
    fn k_map_here(&self) -> Result<FormalMap> {
        self.k_map()?.lower_truncation(self.trunc())
    }

    /// `prod_j h_j^(n_j)`, negative exponents through inverses.
    fn signed_power(&self, n: &SignedMonomial) -> Result<Series> {
        let mut acc = Series::one(self.dim(), self.trunc(), self.ring());
        for (h, &e) in self.comps.iter().zip(n.exps()) {
            let p = if e >= 0 {
                h.pow(e as u32)
            } else {
                h.inverse()?.pow(e.unsigned_abs())
            };
            acc = acc.mul(&p)?;
        }
        Ok(acc)
    }
}

/// `m o (x*h) = prod_j (x_j h_j)^(m_j)`; its vertex is `m`.
pub fn compose_signed(m: &SignedMonomial, h: &StarTuple) -> Result<LaurentSeries> {
    if m.dim() != h.dim() {
        return Err(Error::DimensionMismatch(h.dim(), m.dim()));
    }
    h.check_units()?;
    LaurentSeries::new(m.clone(), h.signed_power(m)?)
}

/// `f o (x*h)`. With `f = x^v * b`, this is
/// `x^v * (prod_j h_j^(v_j)) * (b o (x*h))`, so the vertex is kept.
pub fn compose_laurent(f: &LaurentSeries, h: &StarTuple) -> Result<LaurentSeries> {
    if f.ring() != h.ring() {
        return Err(Error::ContextMismatch(f.ring().to_string(), h.ring().to_string()));
    }
    if f.dim() != h.dim() {
        return Err(Error::DimensionMismatch(f.dim(), h.dim()));
    }
    h.check_units()?;
    let acc = f.accuracy().min(h.trunc());
    let h = h.lower_truncation(acc)?;
    let b = f.body.at_trunc(acc)?;
    let body = h.signed_power(&f.vertex)?.mul(&h.k_map_here()?.compose_series(&b)?)?;
    LaurentSeries::new(f.vertex.clone(), body)
}

/// Order of the second slot in the product `(f, g)(f', g')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `g' o g`, matching the ordinary Riordan product.
    Eq4,
    /// `g o g'`.
    Sec54,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Eq4 => "eq4",
            Convention::Sec54 => "sec54",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Convention> {
        match s {
            "eq4" => Ok(Convention::Eq4),
            "sec54" => Ok(Convention::Sec54),
            _ => Err(Error::Format(format!("unknown convention {s:?}"))),
        }
    }
}

/// A pair `(f, x*h)` with `f` a Laurent unit and every `h_j` a unit series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VsrElement {
    f: LaurentSeries,
    h: StarTuple,
}

#[derive(Deserialize)]
struct VsrJson {
    f: LaurentSeries,
    h: StarTuple,
}

impl<'de> Deserialize<'de> for VsrElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<VsrElement, D::Error> {
        let j = VsrJson::deserialize(d)?;
        VsrElement::new(j.f, j.h).map_err(serde::de::Error::custom)
    }
}

impl VsrElement {
    pub fn new(f: LaurentSeries, h: StarTuple) -> Result<VsrElement> {
        if f.ring() != h.ring() {
            return Err(Error::ContextMismatch(f.ring().to_string(), h.ring().to_string()));
        }
        if f.dim() != h.dim() {
            return Err(Error::DimensionMismatch(f.dim(), h.dim()));
        }
        if !f.is_unit() {
            return Err(Error::NotAUnit(f.to_string()));
        }
        h.check_units()?;
        Ok(VsrElement { f, h })
    }

    pub fn identity(dim: usize, accuracy: u32, ring: Ring) -> VsrElement {
        VsrElement {
            f: LaurentSeries::one(dim, accuracy, ring),
            h: StarTuple::ones(dim, accuracy, ring),
        }
    }

    pub fn f(&self) -> &LaurentSeries {
        &self.f
    }

    pub fn h(&self) -> &StarTuple {
        &self.h
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn ring(&self) -> Ring {
        self.h.ring()
    }

    pub fn accuracy(&self) -> u32 {
        self.f.accuracy().min(self.h.trunc())
    }

    /// `(f (f' o g), second)` with `g = x*h`; the second slot follows
    /// `conv`.
    pub fn mul(&self, o: &VsrElement, conv: Convention) -> Result<VsrElement> {
        let acc = self.accuracy().min(o.accuracy());
        let a = self.h.lower_truncation(acc)?;
        let b = o.h.lower_truncation(acc)?;
        let f = self.f.lower_accuracy(acc)?.mul(&compose_laurent(&o.f, &a)?)?;
        // (x*q) o (x*p) = x*(p . (q o x*p)) componentwise
        let (outer, inner) = match conv {
            Convention::Eq4 => (&b, &a),
            Convention::Sec54 => (&a, &b),
        };
        let k = inner.k_map_here()?;
        let comps = inner
            .comps
            .iter()
            .zip(&outer.comps)
            .map(|(p, q)| p.mul(&k.compose_series(q)?))
            .collect::<Result<_>>()?;
        VsrElement::new(f, StarTuple::new(comps)?)
    }

    /// `(f^-1 o g^-1, g^-1)`; the same under both conventions.
    pub fn inverse(&self) -> Result<VsrElement> {
        let g_inv = self.h.k_map()?.inverse()?;
        let h_inv = StarTuple::from_k_map(&g_inv)?;
        let f_inv = compose_laurent(&self.f.inverse()?, &h_inv)?;
        VsrElement::new(f_inv, h_inv)
    }

    /// Column `n` as a body: `M_mn` is its coefficient at `m / (v n)`.
    fn column_body(&self, n: &SignedMonomial) -> Result<Series> {
        let acc = self.accuracy();
        self.f.body.at_trunc(acc)?.mul(&self.h.lower_truncation(acc)?.signed_power(n)?)
    }

    /// Entries of `M(f, g)` on `rows x cols`; `None` marks an entry beyond
    /// the accuracy window.
    fn window_entries(&self, rows: &SignedBox, cols: &SignedBox) -> Result<Vec<Vec<Option<Elem>>>> {
        let acc = self.accuracy();
        let rows = rows.points();
        let mut out = vec![Vec::new(); rows.len()];
        for n in cols.points() {
            let col = self.column_body(&n)?;
            let base = self.f.vertex.mul(&n)?;
            for (r, m) in rows.iter().enumerate() {
                let entry = match m.div(&base)?.to_monomial() {
                    None => Some(self.ring().zero()),
                    Some(e) if e.degree() > acc => None,
                    Some(e) => Some(col.coeff(&e)?),
                };
                out[r].push(entry);
            }
        }
        Ok(out)
    }

    /// The finite block of `M(f, g)` on a box of exponents.
    pub fn window_matrix(&self, bx: &SignedBox) -> Result<WindowMatrix> {
        let entries = self.window_entries(bx, bx)?;
        let acc = self.accuracy();
        let entries = entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| {
                        e.ok_or(Error::AccuracyExceeded {
                            degree: acc + 1,
                            accuracy: acc,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(WindowMatrix {
            basis: bx.points(),
            entries,
        })
    }
}

/// All `m` with `lo <= m <= hi`, ordered by grlex on `m / lo`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedBox {
    pub lo: Vec<i32>,
    pub hi: Vec<i32>,
}

impl SignedBox {
    pub fn new(lo: Vec<i32>, hi: Vec<i32>) -> Result<SignedBox> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch(lo.len(), hi.len()));
        }
        Ok(SignedBox { lo, hi })
    }

    /// `[-r, r]^d`.
    pub fn radius(dim: usize, r: i32) -> SignedBox {
        SignedBox {
            lo: vec![-r; dim],
            hi: vec![r; dim],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(a, b)| a > b)
    }

    pub fn contains(&self, m: &SignedMonomial) -> bool {
        m.exps().iter().zip(&self.lo).zip(&self.hi).all(|((e, a), b)| a <= e && e <= b)
    }

    pub fn points(&self) -> Vec<SignedMonomial> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut shifted: Vec<Monomial> = vec![Monomial::one(self.lo.len())];
        for (j, (a, b)) in self.lo.iter().zip(&self.hi).enumerate() {
            let width = (b - a) as u32;
            shifted = shifted
                .into_iter()
                .flat_map(|m| {
                    (0..=width).map(move |e| {
                        let mut x = m.exps().to_vec();
                        x[j] = e;
                        Monomial::new(x)
                    })
                })
                .collect();
        }
        shifted.sort();
        let lo = SignedMonomial::new(self.lo.clone());
        shifted.iter().map(|m| shift(&lo, m)).collect()
    }
}

/// A finite block of a Laurent-indexed matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowMatrix {
    pub basis: Vec<SignedMonomial>,
    pub entries: Vec<Vec<Elem>>,
}

/// Outcome of one homomorphism/injectivity trial on a box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub convention: Convention,
    pub homomorphism_ok: bool,
    pub injectivity_ok: bool,
    pub certified_pairs: usize,
    pub total_pairs: usize,
    #[serde(rename = "box")]
    pub bx: SignedBox,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.homomorphism_ok && self.injectivity_ok
    }
}

/// Compares `M(ab)` with `M(a) M(b)` on `bx x bx`.
///
/// For `m, n` in the box, `M(a)_mp M(b)_pn` can only be nonzero when
/// `v(b) n <= p <= m / v(a)`, so the inner sum runs over the finite box
/// `[lo v(b), hi / v(a)]`. A pair is certified when every entry it needs
/// lies inside the accuracy window; uncertified pairs are counted but never
/// reported as failures.
///
/// Injectivity is probed through the columns of `1` and `x_j`, which must
/// reproduce `f` and `f (x_j o g)` computed independently, and `a != b`
/// must give different windows whenever that visible data differs.
pub fn conjecture_trial(
    a: &VsrElement,
    b: &VsrElement,
    bx: &SignedBox,
    conv: Convention,
) -> Result<ConjectureReport> {
    let ab = a.mul(b, conv)?;
    let va = a.f.vertex.exps();
    let vb = b.f.vertex.exps();
    let inner = SignedBox::new(
        bx.lo.iter().zip(vb).map(|(l, v)| l + v).collect(),
        bx.hi.iter().zip(va).map(|(h, v)| h - v).collect(),
    )?;
    let w_ab = ab.window_entries(bx, bx)?;
    let w_a = a.window_entries(bx, &inner)?;
    let w_b = b.window_entries(&inner, bx)?;
    let n = bx.points().len();
    let np = inner.points().len();
    let ring = a.ring();
    let mut certified = 0;
    let mut homomorphism_ok = true;
    for r in 0..n {
        for c in 0..n {
            let Some(lhs) = &w_ab[r][c] else { continue };
            let mut sum = ring.zero();
            let mut known = true;
            for p in 0..np {
                match (&w_a[r][p], &w_b[p][c]) {
                    (Some(x), Some(y)) => sum.add_mul(x, y),
                    _ => {
                        known = false;
                        break;
                    }
                }
            }
            if known {
                certified += 1;
                homomorphism_ok &= *lhs == sum;
            }
        }
    }
    let (recon_a, vis_a) = probe_columns(a, bx)?;
    let (recon_b, vis_b) = probe_columns(b, bx)?;
    let differ = a.window_entries(bx, bx)? != b.window_entries(bx, bx)?;
    let injectivity_ok = recon_a && recon_b && (vis_a == vis_b || differ);
    Ok(ConjectureReport {
        convention: conv,
        homomorphism_ok,
        injectivity_ok,
        certified_pairs: certified,
        total_pairs: n * n,
        bx: bx.clone(),
    })
}

/// Checks the columns of `1` and `x_j` (those inside the box) against `f`
/// and `f (x_j o g)`; returns the visible coefficients as well.
fn probe_columns(a: &VsrElement, bx: &SignedBox) -> Result<(bool, Vec<Option<Elem>>)> {
    let d = a.dim();
    let acc = a.accuracy();
    let mut expected = vec![(SignedMonomial::one(d), a.f.lower_accuracy(acc)?)];
    for j in 0..d {
        let mut e = vec![0; d];
        e[j] = 1;
        let xj = SignedMonomial::new(e);
        let col = a.f.mul(&compose_signed(&xj, &a.h.lower_truncation(acc)?)?)?;
        expected.push((xj, col));
    }
    let rows = bx.points();
    let mut ok = true;
    let mut visible = Vec::new();
    for (n, series) in expected.iter().filter(|(n, _)| bx.contains(n)) {
        let single = SignedBox::new(n.exps().to_vec(), n.exps().to_vec())?;
        let col = a.window_entries(bx, &single)?;
        for (m, entry) in rows.iter().zip(col) {
            let want = series.coeff(m).ok();
            if let (Some(x), Some(y)) = (&entry[0], &want) {
                ok &= x == y;
            }
            visible.push(want);
        }
    }
    Ok((ok, visible))
}
