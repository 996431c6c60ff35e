//! Formal maps `g = (g1, ..., gd)` with every `gi` in `M` (no constant
//! term): substitution, the composition monoid, linear parts, and
//! compositional inversion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::{Elem, Ring};
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalMap {
    comps: Vec<Series>,
}

impl FormalMap {
    /// Validates that there is one component per variable, that all
    /// components share a context, and that none has a constant term.
    pub fn new(comps: Vec<Series>) -> Result<FormalMap> {
        let first = comps.first().ok_or(Error::DimensionMismatch(0, 0))?;
        if comps.len() != first.dim() {
            return Err(Error::DimensionMismatch(first.dim(), comps.len()));
        }
        for (i, c) in comps.iter().enumerate() {
            first.check_compatible(c)?;
            if !c.in_maximal_ideal() {
                return Err(Error::ConstantTerm(i));
            }
        }
        Ok(FormalMap { comps })
    }

    /// `(x1, ..., xd)`.
    pub fn identity(dim: usize, trunc: u32, ring: Ring) -> FormalMap {
        FormalMap {
            comps: (0..dim).map(|j| Series::variable(dim, j, trunc, ring)).collect(),
        }
    }

    /// The linear map `x_i -> sum_j T_ij x_j`.
    pub fn linear(t: &LinearPart, trunc: u32) -> FormalMap {
        let n = t.size();
        let comps = (0..n)
            .map(|i| {
                Series::from_terms(
                    n,
                    trunc,
                    t.ring,
                    (0..n).map(|j| (Monomial::var(n, j), t.get(i, j).clone())),
                )
                .expect("consistent context")
            })
            .collect();
        FormalMap { comps }
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

    pub fn is_identity(&self) -> bool {
        *self == FormalMap::identity(self.dim(), self.trunc(), self.ring())
    }

    pub fn lower_truncation(&self, j: u32) -> Result<FormalMap> {
        let comps = self
            .comps
            .iter()
            .map(|c| c.lower_truncation(j))
            .collect::<Result<_>>()?;
        Ok(FormalMap { comps })
    }

    /// Lowest degree at which some component has a nonzero coefficient;
    /// `None` for the zero map.
    pub fn order(&self) -> Option<u32> {
        self.comps.iter().filter_map(Series::order).min()
    }

    pub(crate) fn check_series(&self, f: &Series) -> Result<()> {
        self.comps[0].check_compatible(f)
    }

    fn zip_with(&self, o: &FormalMap, op: impl Fn(&Series, &Series) -> Result<Series>) -> Result<FormalMap> {
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(a, b)| op(a, b))
            .collect::<Result<_>>()?;
        Ok(FormalMap { comps })
    }

    /// `m o g = g1^i1 ... gd^id`.
    pub fn compose_monomial(&self, m: &Monomial) -> Result<Series> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim(), m.dim()));
        }
        let layout = self.comps[0].layout();
        match layout.rank(m) {
            Some(r) => {
                let mut c = Composer::new(self);
                c.ensure(r);
                Ok(c.powers[r].clone())
            }
            // every g_j lies in M, so m o g lies in M^deg(m)
            None => Ok(Series::zero(self.dim(), self.trunc(), self.ring())),
        }
    }

    /// `f o g = sum_m f_m (m o g)`.
    pub fn compose_series(&self, f: &Series) -> Result<Series> {
        self.check_series(f)?;
        Ok(Composer::new(self).compose(f))
    }

    /// `self o g = (self_1 o g, ..., self_d o g)`.
    pub fn compose(&self, g: &FormalMap) -> Result<FormalMap> {
        g.check_series(&self.comps[0])?;
        let mut c = Composer::new(g);
        Ok(FormalMap {
            comps: self.comps.iter().map(|f| c.compose(f)).collect(),
        })
    }

    /// `L(g)_ij` = coefficient of `x_j` in `g_i`. Needs `trunc >= 1`.
    pub fn linear_part(&self) -> Result<LinearPart> {
        if self.trunc() == 0 {
            return Err(Error::TruncationExceeded { degree: 1, trunc: 0 });
        }
        let n = self.dim();
        let entries = self
            .comps
            .iter()
            .flat_map(|c| (0..n).map(move |j| c.dense()[1 + j].clone()))
            .collect();
        Ok(LinearPart {
            ring: self.ring(),
            n,
            entries,
        })
    }

    /// `g` is invertible iff `det L(g)` is a unit. At truncation 0 the monoid
    /// is trivial and every map is invertible.
    pub fn is_invertible(&self) -> bool {
        match self.linear_part() {
            Ok(l) => l.is_invertible(),
            Err(_) => true,
        }
    }

    /// The compositional inverse. See [`FormalMap::inverse_traced`].
    pub fn inverse(&self) -> Result<FormalMap> {
        self.inverse_traced().map(|(m, _)| m)
    }

    /// Compositional inverse plus the number of fixed-point updates used.
    ///
    /// With `H = L(g)^-1` as a linear map, `u = H o g` has identity linear
    /// part, `u = id + h`. Its inverse solves `v = id - h o v`; starting
    /// from `v = id` each update fixes one more degree because `h` starts
    /// in degree 2, so at most `trunc` updates are needed. Then
    /// `g^-1 = v o H`.
    pub fn inverse_traced(&self) -> Result<(FormalMap, u32)> {
        let k = self.trunc();
        let id = FormalMap::identity(self.dim(), k, self.ring());
        if k == 0 {
            return Ok((id, 0));
        }
        let l = self.linear_part()?;
        let h_lin = FormalMap::linear(&l.inverse()?, k);
        let u = h_lin.compose(self)?;
        let h = u.zip_with(&id, Series::sub)?;
        let mut v = id.clone();
        let mut updates = 0;
        for _ in 0..k {
            let next = id.zip_with(&h.compose(&v)?, Series::sub)?;
            if next == v {
                break;
            }
            v = next;
            updates += 1;
        }
        Ok((v.compose(&h_lin)?, updates))
    }

    /// `g^<r>`, the r-fold composition; `g^<0>` is the identity.
    pub fn power(&self, r: u32) -> FormalMap {
        let mut acc = FormalMap::identity(self.dim(), self.trunc(), self.ring());
        for _ in 0..r {
            acc = acc.compose(self).expect("same context");
        }
        acc
    }

    /// Componentwise sum.
    pub fn add(&self, o: &FormalMap) -> Result<FormalMap> {
        self.zip_with(o, Series::add)
    }

    /// Componentwise difference.
    pub fn sub(&self, o: &FormalMap) -> Result<FormalMap> {
        self.zip_with(o, Series::sub)
    }
}

/// Caches the powers `m o g` for monomials in grlex order, each built from
/// its parent `m / x_j` with one multiplication.
pub(crate) struct Composer<'a> {
    g: &'a FormalMap,
    pub(crate) powers: Vec<Series>,
}

impl<'a> Composer<'a> {
    pub(crate) fn new(g: &'a FormalMap) -> Composer<'a> {
        let one = Series::one(g.dim(), g.trunc(), g.ring());
        Composer {
            g,
            powers: vec![one],
        }
    }

    pub(crate) fn ensure(&mut self, rank: usize) {
        let layout = self.g.comps[0].layout().clone();
        while self.powers.len() <= rank {
            let i = self.powers.len();
            let (j, parent) = layout.parent(i);
            let next = self.powers[parent].mul_unchecked(&self.g.comps[j]);
            self.powers.push(next);
        }
    }

    pub(crate) fn compose(&mut self, f: &Series) -> Series {
        let dense = f.dense();
        let Some(last) = dense.iter().rposition(|c| !c.is_zero()) else {
            return Series::zero(f.dim(), f.trunc(), f.ring());
        };
        self.ensure(last);
        let mut out = vec![f.ring().zero(); dense.len()];
        for (c, p) in dense.iter().zip(&self.powers) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(p.dense()) {
                if !x.is_zero() {
                    o.add_mul(c, x);
                }
            }
        }
        Series::from_dense(f.ring(), f.layout().clone(), out)
    }
}

/// A square matrix over the coefficient ring: the linear part of a map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPart {
    ring: Ring,
    n: usize,
    entries: Vec<Elem>,
}

impl LinearPart {
    pub fn new(ring: Ring, n: usize, entries: Vec<Elem>) -> Result<LinearPart> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(n * n, entries.len()));
        }
        if let Some(e) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::ContextMismatch(ring.to_string(), e.ring().to_string()));
        }
        Ok(LinearPart { ring, n, entries })
    }

    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> LinearPart {
        let n = rows.len();
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| ring.from_i64(v))).collect();
        LinearPart { ring, n, entries }
    }

    pub fn identity(ring: Ring, n: usize) -> LinearPart {
        let entries = (0..n * n)
            .map(|i| if i / n == i % n { ring.one() } else { ring.zero() })
            .collect();
        LinearPart { ring, n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &LinearPart) -> Result<LinearPart> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(self.n, o.n));
        }
        let n = self.n;
        let mut entries = vec![self.ring.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    entries[i * n + j].add_mul(self.get(i, k), o.get(k, j));
                }
            }
        }
        Ok(LinearPart {
            ring: self.ring,
            n,
            entries,
        })
    }

    fn minor(&self, row: usize, col: usize) -> LinearPart {
        let n = self.n;
        let entries = (0..n)
            .filter(|&i| i != row)
            .flat_map(|i| (0..n).filter(move |&j| j != col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        LinearPart {
            ring: self.ring,
            n: n - 1,
            entries,
        }
    }

    /// Determinant: cofactor expansion up to 4x4, fraction-free Bareiss
    /// elimination beyond.
    pub fn det(&self) -> Elem {
        if self.n <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    pub fn det_cofactor(&self) -> Elem {
        match self.n {
            0 => self.ring.one(),
            1 => self.entries[0].clone(),
            n => {
                let mut acc = self.ring.zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j).det_cofactor();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Bareiss elimination; every division is exact over an integral domain.
    pub fn det_bareiss(&self) -> Elem {
        let n = self.n;
        if n == 0 {
            return self.ring.one();
        }
        let mut m: Vec<Vec<Elem>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut prev = self.ring.one();
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        negate = !negate;
                    }
                    None => return self.ring.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = t.div_exact(&prev);
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// Transposed cofactor matrix.
    pub fn adjugate(&self) -> LinearPart {
        let n = self.n;
        if n == 1 {
            return LinearPart::identity(self.ring, 1);
        }
        let mut entries = vec![self.ring.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                entries[j * n + i] = if (i + j) % 2 == 0 { c } else { -&c };
            }
        }
        LinearPart {
            ring: self.ring,
            n,
            entries,
        }
    }

    /// `adj(T) / det(T)`, defined when the determinant is a unit.
    pub fn inverse(&self) -> Result<LinearPart> {
        let d = self.det();
        let dinv = d.unit_inverse().map_err(|_| Error::NotInvertible(d.to_string()))?;
        let adj = self.adjugate();
        Ok(LinearPart {
            ring: self.ring,
            n: self.n,
            entries: adj.entries.iter().map(|e| e * &dinv).collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    components: Vec<Series>,
}

impl Serialize for FormalMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapJson {
            components: self.comps.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<FormalMap, D::Error> {
        let j = MapJson::deserialize(d)?;
        FormalMap::new(j.components).map_err(serde::de::Error::custom)
    }
}
