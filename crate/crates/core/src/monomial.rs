//! Monic monomials `x^i` (nonnegative exponents) and their group completion
//! with signed exponents.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A monic monomial `x1^i1 * ... * xd^id` with `i >= 0`.
///
/// `Ord` is graded-lexicographic: total degree first, then the exponent
/// vectors lexicographically with `x1` most significant, larger exponents
/// first. So for two variables the order starts `1, x1, x2, x1^2, x1*x2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn one(dim: usize) -> Monomial {
        Monomial { exps: vec![0; dim] }
    }

    /// The variable `x_{j+1}` (zero-based `j`).
    pub fn var(dim: usize, j: usize) -> Monomial {
        let mut exps = vec![0; dim];
        exps[j] = 1;
        Monomial { exps }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Result<Monomial> {
        same_dim(self.dim(), o.dim())?;
        let exps = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { exps })
    }

    /// `self | p`. Monomials of different dimension never divide each other.
    pub fn divides(&self, p: &Monomial) -> bool {
        self.dim() == p.dim() && self.exps.iter().zip(&p.exps).all(|(a, b)| a <= b)
    }

    /// `self / m`, defined when `m | self`.
    pub fn quotient(&self, m: &Monomial) -> Result<Monomial> {
        same_dim(self.dim(), m.dim())?;
        if !m.divides(self) {
            return Err(Error::NotAFactor(m.to_string(), self.to_string()));
        }
        Ok(Monomial {
            exps: self.exps.iter().zip(&m.exps).map(|(a, b)| a - b).collect(),
        })
    }

    /// Highest common factor: the componentwise minimum.
    pub fn hcf<'a, I: IntoIterator<Item = &'a Monomial>>(set: I) -> Result<Monomial> {
        let mut it = set.into_iter();
        let mut acc = it.next().ok_or(Error::EmptySet)?.clone();
        for m in it {
            same_dim(acc.dim(), m.dim())?;
            for (a, b) in acc.exps.iter_mut().zip(&m.exps) {
                *a = (*a).min(*b);
            }
        }
        Ok(acc)
    }

    /// Parses the textual form (`1`, `x1^2*x2`, ...) in `dim` variables.
    pub fn parse(s: &str, dim: usize) -> Result<Monomial> {
        let signed = SignedMonomial::parse(s, dim)?;
        signed
            .to_monomial()
            .ok_or_else(|| Error::Format(format!("negative exponent in monomial {s:?}")))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Monomial) -> Ordering {
        grlex_cmp(self, o)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Monomial) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Graded-lex comparison, see [`Monomial`].
pub fn grlex_cmp(m: &Monomial, n: &Monomial) -> Ordering {
    m.degree()
        .cmp(&n.degree())
        .then_with(|| n.exps.cmp(&m.exps))
}

/// All monomials of degree at most `k` in `dim` variables, in grlex order.
/// There are `C(dim + k, dim)` of them.
pub fn enumerate_upto(dim: usize, k: u32) -> Vec<Monomial> {
    fn fill(rest: u32, prefix: &mut Vec<u32>, dim: usize, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == dim {
            prefix.push(rest);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=rest).rev() {
            prefix.push(e);
            fill(rest - e, prefix, dim, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        out.push(Monomial::one(0));
        return out;
    }
    for deg in 0..=k {
        fill(deg, &mut Vec::with_capacity(dim), dim, &mut out);
    }
    out
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(a, b))
    }
}

/// An element of the free abelian group on `x1..xd`: exponents may be
/// negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedMonomial {
    exps: Vec<i32>,
}

impl SignedMonomial {
    pub fn new(exps: Vec<i32>) -> SignedMonomial {
        SignedMonomial { exps }
    }

    pub fn one(dim: usize) -> SignedMonomial {
        SignedMonomial { exps: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Sum of exponents.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, o: &SignedMonomial) -> Result<SignedMonomial> {
        same_dim(self.dim(), o.dim())?;
        let exps = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(SignedMonomial { exps })
    }

    pub fn inv(&self) -> Result<SignedMonomial> {
        let exps = self
            .exps
            .iter()
            .map(|a| a.checked_neg().ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(SignedMonomial { exps })
    }

    /// `self / o` in the group.
    pub fn div(&self, o: &SignedMonomial) -> Result<SignedMonomial> {
        self.mul(&o.inv()?)
    }

    /// The partial order `x^i <= x^j` iff `i_k <= j_k` for all `k`.
    pub fn le(&self, o: &SignedMonomial) -> bool {
        self.dim() == o.dim() && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// Greatest lower bound of a finite (hence bounded-below) set.
    pub fn inf<'a, I: IntoIterator<Item = &'a SignedMonomial>>(set: I) -> Result<SignedMonomial> {
        let mut it = set.into_iter();
        let mut acc = it.next().ok_or(Error::EmptySet)?.clone();
        for m in it {
            same_dim(acc.dim(), m.dim())?;
            for (a, b) in acc.exps.iter_mut().zip(&m.exps) {
                *a = (*a).min(*b);
            }
        }
        Ok(acc)
    }

    /// The monomial when all exponents are nonnegative.
    pub fn to_monomial(&self) -> Option<Monomial> {
        self.exps
            .iter()
            .map(|&e| u32::try_from(e).ok())
            .collect::<Option<Vec<_>>>()
            .map(Monomial::new)
    }

    /// Parses `1`, `x1^-2*x2`, ... in `dim` variables. Repeated variables
    /// multiply (`x1*x1` is `x1^2`).
    pub fn parse(s: &str, dim: usize) -> Result<SignedMonomial> {
        let bad = |why: &str| Error::Format(format!("bad monomial {s:?}: {why}"));
        let s = s.trim();
        let mut exps = vec![0i32; dim];
        if s == "1" {
            return Ok(SignedMonomial { exps });
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let body = factor.strip_prefix('x').ok_or_else(|| bad("expected x<i>"))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i32>().map_err(|_| bad("bad exponent"))?),
                None => (body, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
            if idx == 0 || idx > dim {
                return Err(bad("variable index out of range"));
            }
            exps[idx - 1] = exps[idx - 1].checked_add(exp).ok_or(Error::ExponentOverflow)?;
        }
        Ok(SignedMonomial { exps })
    }
}

impl From<&Monomial> for SignedMonomial {
    fn from(m: &Monomial) -> SignedMonomial {
        SignedMonomial {
            exps: m.exps.iter().map(|&e| e as i32).collect(),
        }
    }
}

fn write_exps(f: &mut fmt::Formatter<'_>, exps: impl Iterator<Item = i64>) -> fmt::Result {
    let mut first = true;
    for (j, e) in exps.enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "x{}", j + 1)?;
        } else {
            write!(f, "x{}^{}", j + 1, e)?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_exps(f, self.exps.iter().map(|&e| e as i64))
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_exps(f, self.exps.iter().map(|&e| e as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn s(e: &[i32]) -> SignedMonomial {
        SignedMonomial::new(e.to_vec())
    }

    #[test]
    fn multiply() {
        assert_eq!(m(&[1, 0]).mul(&m(&[0, 1])).unwrap(), m(&[1, 1]));
        assert_eq!(m(&[2, 1]).mul(&m(&[1, 3])).unwrap(), m(&[3, 4]));
        assert!(s(&[-1, 0]).mul(&s(&[1, 0])).unwrap().is_one());
        assert_eq!(m(&[1]).mul(&m(&[1, 0])), Err(Error::DimensionMismatch(1, 2)));
        assert_eq!(m(&[u32::MAX]).mul(&m(&[1])), Err(Error::ExponentOverflow));
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 1]).divides(&m(&[2, 3])));
        assert_eq!(m(&[2, 3]).quotient(&m(&[1, 1])).unwrap(), m(&[1, 2]));
        assert!(!m(&[2, 0]).divides(&m(&[1, 1])));
        assert!(Monomial::one(3).divides(&m(&[4, 0, 1])));
        assert!(matches!(m(&[1, 1]).quotient(&m(&[2, 0])), Err(Error::NotAFactor(..))));
    }

    #[test]
    fn highest_common_factor() {
        assert_eq!(Monomial::hcf(&[m(&[2, 1]), m(&[1, 3])]).unwrap(), m(&[1, 1]));
        assert_eq!(Monomial::hcf(&[m(&[3, 2])]).unwrap(), m(&[3, 2]));
        assert_eq!(Monomial::hcf(&[m(&[1, 0]), m(&[0, 1])]).unwrap(), Monomial::one(2));
        assert_eq!(Monomial::hcf(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn infimum() {
        assert_eq!(SignedMonomial::inf(&[s(&[-2, 1]), s(&[1, -3])]).unwrap(), s(&[-2, -3]));
        let a = [m(&[2, 1]), m(&[1, 3])];
        let signed: Vec<SignedMonomial> = a.iter().map(SignedMonomial::from).collect();
        assert_eq!(
            SignedMonomial::inf(&signed).unwrap(),
            SignedMonomial::from(&Monomial::hcf(&a).unwrap())
        );
        assert_eq!(SignedMonomial::inf(&[s(&[5, -1])]).unwrap(), s(&[5, -1]));
    }

    #[test]
    fn degrees() {
        assert_eq!(Monomial::one(2).degree(), 0);
        assert_eq!(m(&[1, 2]).degree(), 3);
        assert_eq!(m(&[3]).degree(), 3);
    }

    #[test]
    fn grlex_enumeration() {
        let got: Vec<String> = enumerate_upto(2, 2).iter().map(|m| m.to_string()).collect();
        assert_eq!(got, ["1", "x1", "x2", "x1^2", "x1*x2", "x2^2"]);
        assert_eq!(grlex_cmp(&m(&[0, 1]), &m(&[2, 0])), Ordering::Less);
        assert_eq!(enumerate_upto(3, 6).len(), 84);
        assert_eq!(enumerate_upto(1, 0), vec![m(&[0])]);
    }

    #[test]
    fn text_form() {
        assert_eq!(m(&[2, 1]).to_string(), "x1^2*x2");
        assert_eq!(Monomial::one(3).to_string(), "1");
        assert_eq!(s(&[-2, 1]).to_string(), "x1^-2*x2");
        assert_eq!(SignedMonomial::parse("x1^-2*x2", 2).unwrap(), s(&[-2, 1]));
        assert_eq!(Monomial::parse("x1^2*x2", 2).unwrap(), m(&[2, 1]));
        assert_eq!(Monomial::parse("1", 2).unwrap(), Monomial::one(2));
        assert!(Monomial::parse("x1^-1", 2).is_err());
        assert!(Monomial::parse("x3", 2).is_err());
    }
}
