//! Matrices whose rows and columns are indexed by monomials.
//!
//! The Riordan matrix of `(f, g)` has entry `(m, n)` equal to the
//! coefficient of `m` in `f * (n o g)`. We materialise the finite window of
//! all monomials of degree `<= k`. That window is enough to test the
//! homomorphism `M(ab) = M(a) M(b)` exactly: entry `(m, p)` vanishes when
//! `deg p > deg m`, so the inner sum for `(m, n)` only runs over `p` with
//! `deg n <= deg p <= deg m <= k`, all of which lie in the window.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal_map::{Composer, FormalMap};
use crate::layout::Layout;
use crate::monomial::Monomial;
use crate::ring::{Elem, Ring};
use crate::riordan::RiordanElement;
use crate::series::Series;

/// Dense square matrix on the grlex basis of monomials of degree `<= k`.
#[derive(Debug, Clone)]
pub struct MonomialMatrix {
    ring: Ring,
    layout: Arc<Layout>,
    entries: Vec<Elem>,
}

impl PartialEq for MonomialMatrix {
    fn eq(&self, o: &MonomialMatrix) -> bool {
        self.ring == o.ring
            && self.dim() == o.dim()
            && self.trunc() == o.trunc()
            && self.entries == o.entries
    }
}

impl Eq for MonomialMatrix {}

impl MonomialMatrix {
    pub fn identity(dim: usize, trunc: u32, ring: Ring) -> MonomialMatrix {
        let layout = Layout::get(dim, trunc);
        let n = layout.len();
        let entries = (0..n * n)
            .map(|i| if i / n == i % n { ring.one() } else { ring.zero() })
            .collect();
        MonomialMatrix {
            ring,
            layout,
            entries,
        }
    }

    /// `M(f, g)`; defined for every pair, invertible or not.
    pub fn riordan(a: &RiordanElement) -> MonomialMatrix {
        let layout = a.f().layout().clone();
        let n = layout.len();
        let mut composer = Composer::new(a.g());
        composer.ensure(n - 1);
        let mut entries = vec![a.ring().zero(); n * n];
        for (col, power) in composer.powers.iter().enumerate() {
            let c = a.f().mul_unchecked(power);
            for (row, e) in c.dense().iter().enumerate() {
                entries[row * n + col] = e.clone();
            }
        }
        MonomialMatrix {
            ring: a.ring(),
            layout,
            entries,
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

    /// Number of rows (= columns).
    pub fn size(&self) -> usize {
        self.layout.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        self.layout.monomials()
    }

    /// Entry by grlex rank.
    pub fn get(&self, row: usize, col: usize) -> &Elem {
        &self.entries[row * self.size() + col]
    }

    /// Entry indexed by monomials.
    pub fn entry(&self, m: &Monomial, n: &Monomial) -> Result<&Elem> {
        let rank = |x: &Monomial| {
            self.layout.rank(x).ok_or(Error::TruncationExceeded {
                degree: x.degree(),
                trunc: self.trunc(),
            })
        };
        Ok(self.get(rank(m)?, rank(n)?))
    }

    /// The column indexed by the monomial of rank `col`, as a series.
    pub fn column(&self, col: usize) -> Series {
        let n = self.size();
        let coeffs = (0..n).map(|r| self.entries[r * n + col].clone()).collect();
        Series::from_dense(self.ring, self.layout.clone(), coeffs)
    }

    fn check(&self, o: &MonomialMatrix) -> Result<()> {
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

    /// `c_mn = sum_p a_mp b_pn`.
    pub fn mul(&self, o: &MonomialMatrix) -> Result<MonomialMatrix> {
        self.check(o)?;
        let n = self.size();
        let mut entries = vec![self.ring.zero(); n * n];
        let row = |m: usize, out: &mut [Elem]| {
            for p in 0..n {
                let a = &self.entries[m * n + p];
                if a.is_zero() {
                    continue;
                }
                for (c, b) in out.iter_mut().zip(&o.entries[p * n..(p + 1) * n]) {
                    if !b.is_zero() {
                        c.add_mul(a, b);
                    }
                }
            }
        };
        #[cfg(feature = "parallel")]
        if n >= PAR_ROWS {
            use rayon::prelude::*;
            entries
                .par_chunks_mut(n)
                .enumerate()
                .for_each(|(m, out)| row(m, out));
            return Ok(MonomialMatrix {
                ring: self.ring,
                layout: self.layout.clone(),
                entries,
            });
        }
        for (m, out) in entries.chunks_mut(n).enumerate() {
            row(m, out);
        }
        Ok(MonomialMatrix {
            ring: self.ring,
            layout: self.layout.clone(),
            entries,
        })
    }

    /// Matrix-vector product against the coefficient vector of `u`:
    /// `(M u)_m = sum_n M_mn u_n`.
    pub fn apply(&self, u: &Series) -> Result<Series> {
        if u.ring() != self.ring || u.dim() != self.dim() || u.trunc() != self.trunc() {
            return Err(Error::Format(format!(
                "vector context {}/{}/{} does not match matrix",
                u.ring(),
                u.dim(),
                u.trunc()
            )));
        }
        let n = self.size();
        let mut out = vec![self.ring.zero(); n];
        for (m, o) in out.iter_mut().enumerate() {
            for (a, b) in self.entries[m * n..(m + 1) * n].iter().zip(u.dense()) {
                if !a.is_zero() && !b.is_zero() {
                    o.add_mul(a, b);
                }
            }
        }
        Ok(Series::from_dense(self.ring, self.layout.clone(), out))
    }

    /// Entry `(m, n)` is zero whenever `deg n > deg m`.
    pub fn is_graded_lower_triangular(&self) -> bool {
        let n = self.size();
        (0..n).all(|r| {
            (0..n)
                .filter(|&c| self.layout.degree(c) > self.layout.degree(r))
                .all(|c| self.entries[r * n + c].is_zero())
        })
    }

    /// Recovers `(f, g)`: column `1` is `f`, column `x_j` is `f * g_j`.
    /// Requires `f` to be a unit. At `k = 0` every `g_j` is zero.
    pub fn reconstruct(&self) -> Result<RiordanElement> {
        let f = self.column(0);
        let f_inv = f.inverse()?;
        let comps = (0..self.dim())
            .map(|j| match self.layout.var_rank(j) {
                Some(col) => self.column(col).mul(&f_inv),
                None => Ok(Series::zero(self.dim(), 0, self.ring)),
            })
            .collect::<Result<Vec<_>>>()?;
        RiordanElement::new(f, FormalMap::new(comps)?)
    }

    /// CSV with the grlex labels as header row and first column; the
    /// corner cell is the literal `m\n`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(vec![]);
        let labels: Vec<String> = self.basis().iter().map(|m| m.to_string()).collect();
        let header = std::iter::once("m\\n".to_string()).chain(labels.iter().cloned());
        w.write_record(header).expect("in-memory write");
        let n = self.size();
        for (r, label) in labels.iter().enumerate() {
            let row = std::iter::once(label.clone())
                .chain(self.entries[r * n..(r + 1) * n].iter().map(|e| e.to_string()));
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }

    pub fn from_csv(text: &str, dim: usize, ring: Ring) -> Result<MonomialMatrix> {
        let bad = |why: String| Error::Format(format!("matrix csv: {why}"));
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(text.as_bytes());
        let mut records = rdr.records();
        let header = records
            .next()
            .ok_or_else(|| bad("empty input".into()))?
            .map_err(|e| bad(e.to_string()))?;
        if header.get(0) != Some("m\\n") {
            return Err(bad("corner cell must be m\\n".into()));
        }
        let labels: Vec<&str> = header.iter().skip(1).collect();
        let layout = layout_for_labels(&labels, dim).map_err(bad)?;
        let n = layout.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, rec) in records.enumerate() {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            if r >= n || rec.get(0) != Some(labels[r]) {
                return Err(bad(format!("unexpected row {}", r + 1)));
            }
            if rec.len() != n + 1 {
                return Err(bad(format!("row {} has {} cells", r + 1, rec.len())));
            }
            for cell in rec.iter().skip(1) {
                entries.push(ring.parse_elem(cell)?);
            }
        }
        if entries.len() != n * n {
            return Err(bad("missing rows".into()));
        }
        Ok(MonomialMatrix {
            ring,
            layout,
            entries,
        })
    }

    /// Human-readable aligned rendering (not a wire format).
    pub fn render(&self) -> String {
        let n = self.size();
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for r in 0..n {
            let row: Vec<String> = cells[r * n..(r + 1) * n]
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

#[cfg(feature = "parallel")]
const PAR_ROWS: usize = 128;

fn layout_for_labels(labels: &[&str], dim: usize) -> std::result::Result<Arc<Layout>, String> {
    let last = labels.last().ok_or("no column labels")?;
    let k = Monomial::parse(last, dim).map_err(|e| e.to_string())?.degree();
    let layout = Layout::get(dim, k);
    let expected: Vec<String> = layout.monomials().iter().map(|m| m.to_string()).collect();
    if expected.len() != labels.len() || expected.iter().zip(labels).any(|(a, b)| a != b) {
        return Err("labels are not the grlex basis".into());
    }
    Ok(layout)
}

/// `M(ab) == M(a) M(b)` on the full degree-`<= k` window.
pub fn homomorphism_check(a: &RiordanElement, b: &RiordanElement) -> Result<bool> {
    a.check(b)?;
    let lhs = MonomialMatrix::riordan(&a.mul(b)?);
    let rhs = MonomialMatrix::riordan(a).mul(&MonomialMatrix::riordan(b))?;
    Ok(lhs == rhs)
}

/// Distinct invertible elements have distinct matrices. Both matrices are
/// also decoded back to their elements (column `1` gives `f`, columns `x_j`
/// give `g`); a decoding mismatch is an internal error.
pub fn injectivity_probe(a: &RiordanElement, b: &RiordanElement) -> Result<bool> {
    a.check(b)?;
    let ma = MonomialMatrix::riordan(a);
    let mb = MonomialMatrix::riordan(b);
    for (m, x) in [(&ma, a), (&mb, b)] {
        if m.reconstruct()? != *x {
            return Err(Error::Internal("matrix columns do not decode to (f, g)".into()));
        }
    }
    Ok(ma != mb)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    d: usize,
    trunc: u32,
    ring: Ring,
    basis: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Serialize for MonomialMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.size();
        MatrixJson {
            d: self.dim(),
            trunc: self.trunc(),
            ring: self.ring,
            basis: self.basis().iter().map(|m| m.to_string()).collect(),
            rows: (0..n)
                .map(|r| self.entries[r * n..(r + 1) * n].iter().map(|e| e.to_string()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<MonomialMatrix, D::Error> {
        use serde::de::Error as _;
        let j = MatrixJson::deserialize(d)?;
        let layout = Layout::get(j.d, j.trunc);
        let expected: Vec<String> = layout.monomials().iter().map(|m| m.to_string()).collect();
        if expected != j.basis {
            return Err(D::Error::custom("basis is not the grlex basis"));
        }
        let n = layout.len();
        if j.rows.len() != n || j.rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("matrix is not square on its basis"));
        }
        let entries = j
            .rows
            .iter()
            .flatten()
            .map(|c| j.ring.parse_elem(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(MonomialMatrix {
            ring: j.ring,
            layout,
            entries,
        })
    }
}
