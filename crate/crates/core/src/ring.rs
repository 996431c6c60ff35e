//! Coefficient rings.
//!
//! Three exact rings ship with the crate: the integers, the rationals and
//! the integers modulo a prime. A [`Ring`] is the runtime context, an
//! [`Elem`] is a value tagged with the context it lives in. Integers and
//! rationals keep an `i64` fast path and spill into `num-bigint` on
//! overflow, so arithmetic never rounds and never wraps.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The coefficient ring `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Integer,
    Rational,
    ModPrime(u64),
}

impl Ring {
    /// `Z/p`; rejects composite `p` so that the ring is always a domain.
    pub fn mod_prime(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::ModPrime(p))
        } else {
            Err(Error::CompositeModulus(p))
        }
    }

    pub fn zero(self) -> Elem {
        self.from_i64(0)
    }

    pub fn one(self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Elem {
        match self {
            Ring::Integer => Elem::Int(Int::Small(n)),
            Ring::Rational => Elem::Rat(Rat::Small(n, 1)),
            Ring::ModPrime(p) => Elem::Mod {
                v: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Elem {
        match self {
            Ring::Integer => Elem::Int(Int::from_big(n.clone())),
            Ring::Rational => Elem::Rat(Rat::from_big(BigRational::from_integer(n.clone()))),
            Ring::ModPrime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Elem::Mod {
                    v: r.to_u64().expect("residue fits"),
                    p,
                }
            }
        }
    }

    /// Parses a coefficient in its serialized form: a decimal integer, `a/b`
    /// for rationals, a residue (any integer, reduced) for `Z/p`.
    pub fn parse_elem(self, s: &str) -> Result<Elem> {
        let bad = || Error::Format(format!("bad {self} coefficient {s:?}"));
        match self {
            Ring::Integer => BigInt::from_str(s).map(|n| self.from_bigint(&n)).map_err(|_| bad()),
            Ring::ModPrime(_) => BigInt::from_str(s).map(|n| self.from_bigint(&n)).map_err(|_| bad()),
            Ring::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((a, b)) => (a, b),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num).map_err(|_| bad())?;
                let den = BigInt::from_str(den).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Elem::Rat(Rat::from_big(BigRational::new(num, den))))
            }
        }
    }

    /// True iff `a` has a multiplicative inverse in this ring.
    pub fn is_unit(self, a: &Elem) -> bool {
        a.is_unit()
    }

    pub fn unit_inverse(self, a: &Elem) -> Result<Elem> {
        a.unit_inverse()
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integer)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integer => f.write_str("int"),
            Ring::Rational => f.write_str("rational"),
            Ring::ModPrime(p) => write!(f, "modp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s {
            "int" => Ok(Ring::Integer),
            "rational" => Ok(Ring::Rational),
            _ => {
                let p = s
                    .strip_prefix("modp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::UnknownRing(s.to_string()))?;
                Ring::mod_prime(p)
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Ring, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Integer with an `i64` fast path. `Big` only holds values outside `i64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    fn from_big(n: BigInt) -> Int {
        match n.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(n)),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    fn add(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() + o.to_big())
    }

    fn sub(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_sub(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() - o.to_big())
    }

    fn mul(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Int {
        match self {
            Int::Small(a) => match a.checked_neg() {
                Some(c) => Int::Small(c),
                None => Int::from_big(-BigInt::from(*a)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }

    fn div_exact(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(c) = a.checked_div(*b) {
                debug_assert_eq!(a % b, 0);
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() / o.to_big())
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

/// Rational in lowest terms with positive denominator. `Small(n, d)` keeps
/// both parts in `i64`; anything larger lives in `Big`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    /// Reduces `n/d` (with `d > 0`) computed in `i128`.
    fn from_i128(n: i128, d: i128) -> Rat {
        let g = n.gcd(&d);
        let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn add(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Rat::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let Some(n) = (a * d).checked_add(c * b) {
                return Rat::from_i128(n, b * d);
            }
        }
        Rat::from_big(self.to_big() + o.to_big())
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) if *n != i64::MIN => Rat::Small(-n, *d),
            _ => Rat::from_big(-self.to_big()),
        }
    }

    fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a, b), Rat::Small(c, d)) = (self, o) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Rat::Small(p, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            let g1 = a.gcd(&d).max(1);
            let g2 = c.gcd(&b).max(1);
            return Rat::from_i128((a / g1) * (c / g2), (b / g2) * (d / g1));
        }
        Rat::from_big(self.to_big() * o.to_big())
    }

    fn recip(&self) -> Rat {
        match self {
            Rat::Small(n, d) if *n > 0 => Rat::Small(*d, *n),
            Rat::Small(n, d) if *n < 0 && *n != i64::MIN => Rat::Small(-d, -n),
            _ => Rat::from_big(self.to_big().recip()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

/// A coefficient together with its ring context.
///
/// The operator impls assume both operands share a context and panic
/// otherwise; the `try_*` methods check first. Containers such as
/// [`crate::Series`] validate contexts once at their boundary and then use
/// the unchecked operators internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(Int),
    Rat(Rat),
    Mod { v: u64, p: u64 },
}

/// The four ring operations, for [`Elem::ring_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl Elem {
    pub fn ring(&self) -> Ring {
        match self {
            Elem::Int(_) => Ring::Integer,
            Elem::Rat(_) => Ring::Rational,
            Elem::Mod { p, .. } => Ring::ModPrime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Int(a) => a.is_zero(),
            Elem::Rat(a) => a.is_zero(),
            Elem::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Elem::Int(a) => *a == Int::Small(1),
            Elem::Rat(a) => *a == Rat::Small(1, 1),
            Elem::Mod { v, .. } => *v == 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Elem::Int(Int::Small(v)) => *v == 1 || *v == -1,
            Elem::Int(Int::Big(_)) => false,
            Elem::Rat(_) | Elem::Mod { .. } => !self.is_zero(),
        }
    }

    pub fn unit_inverse(&self) -> Result<Elem> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(match self {
            Elem::Int(a) => Elem::Int(a.clone()),
            Elem::Rat(a) => Elem::Rat(a.recip()),
            Elem::Mod { v, p } => Elem::Mod {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    fn check(&self, o: &Elem) -> Result<()> {
        if self.ring() == o.ring() {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ring().to_string(), o.ring().to_string()))
        }
    }

    /// Checked ring operation; the second operand is ignored for `Neg`.
    pub fn ring_arith(&self, o: &Elem, op: RingOp) -> Result<Elem> {
        self.check(o)?;
        Ok(match op {
            RingOp::Add => self + o,
            RingOp::Sub => self - o,
            RingOp::Mul => self * o,
            RingOp::Neg => -self,
        })
    }

    pub fn try_add(&self, o: &Elem) -> Result<Elem> {
        self.ring_arith(o, RingOp::Add)
    }

    pub fn try_sub(&self, o: &Elem) -> Result<Elem> {
        self.ring_arith(o, RingOp::Sub)
    }

    pub fn try_mul(&self, o: &Elem) -> Result<Elem> {
        self.ring_arith(o, RingOp::Mul)
    }

    /// `self += a * b`.
    #[inline]
    pub fn add_mul(&mut self, a: &Elem, b: &Elem) {
        match (&mut *self, a, b) {
            (Elem::Mod { v, p }, Elem::Mod { v: x, .. }, Elem::Mod { v: y, .. }) => {
                *v = ((*v as u128 + *x as u128 * *y as u128) % *p as u128) as u64;
            }
            (Elem::Int(Int::Small(c)), Elem::Int(Int::Small(x)), Elem::Int(Int::Small(y))) => {
                if let Some(s) = x.checked_mul(*y).and_then(|m| m.checked_add(*c)) {
                    *c = s;
                } else {
                    *self = &*self + &(a * b);
                }
            }
            _ => *self = &*self + &(a * b),
        }
    }

    /// Exact quotient; `o` must divide `self` in the ring (always true for
    /// nonzero `o` in a field).
    pub fn div_exact(&self, o: &Elem) -> Elem {
        match (self, o) {
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a.div_exact(b)),
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a.mul(&b.recip())),
            (Elem::Mod { v, p }, Elem::Mod { v: w, .. }) => Elem::Mod {
                v: mul_mod(*v, pow_mod(*w, p - 2, *p), *p),
                p: *p,
            },
            _ => panic!("ring context mismatch in div_exact"),
        }
    }

    /// Integer value when the element is an integer of the ring (used by
    /// the tests to compare with `i64` oracles).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Elem::Int(Int::Small(v)) => Some(*v),
            Elem::Rat(Rat::Small(n, 1)) => Some(*n),
            Elem::Mod { v, .. } => i64::try_from(*v).ok(),
            _ => None,
        }
    }

    /// Sign of an integer or rational; residues are never negative. Used
    /// when rendering polynomials.
    pub fn is_negative(&self) -> bool {
        match self {
            Elem::Int(Int::Small(v)) => *v < 0,
            Elem::Int(Int::Big(b)) => b.is_negative(),
            Elem::Rat(Rat::Small(n, _)) => *n < 0,
            Elem::Rat(Rat::Big(b)) => b.is_negative(),
            Elem::Mod { .. } => false,
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $int:ident, $rat:ident, $modop:expr) => {
        #[allow(clippy::suspicious_arithmetic_impl)]
        impl std::ops::$tr<&Elem> for &Elem {
            type Output = Elem;

            fn $method(self, o: &Elem) -> Elem {
                match (self, o) {
                    (Elem::Int(a), Elem::Int(b)) => Elem::Int(a.$int(b)),
                    (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a.$rat(b)),
                    (Elem::Mod { v, p }, Elem::Mod { v: w, p: q }) if p == q => Elem::Mod {
                        v: $modop(*v, *w, *p),
                        p: *p,
                    },
                    _ => panic!("ring context mismatch: {} vs {}", self.ring(), o.ring()),
                }
            }
        }
    };
}

binop!(Add, add, add, add, |a: u64, b: u64, p: u64| ((a as u128 + b as u128) % p as u128) as u64);
binop!(Sub, sub, sub, sub, |a: u64, b: u64, p: u64| ((a as u128 + (p - b) as u128) % p as u128) as u64);
binop!(Mul, mul, mul, mul, mul_mod);

impl std::ops::Neg for &Elem {
    type Output = Elem;

    fn neg(self) -> Elem {
        match self {
            Elem::Int(a) => Elem::Int(a.neg()),
            Elem::Rat(a) => Elem::Rat(a.neg()),
            Elem::Mod { v, p } => Elem::Mod {
                v: (p - v) % p,
                p: *p,
            },
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(a) => a.fmt(f),
            Elem::Rat(a) => a.fmt(f),
            Elem::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> Elem {
        Ring::Integer.from_i64(n)
    }

    #[test]
    fn integer_arith() {
        assert_eq!(&z(2) + &z(3), z(5));
        assert!(z(1).is_unit());
        assert!(z(-1).is_unit());
        assert!(!z(2).is_unit());
        assert_eq!(z(-1).unit_inverse().unwrap(), z(-1));
        assert!(matches!(z(2).unit_inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn mod_seven() {
        let r = Ring::mod_prime(7).unwrap();
        assert_eq!(&r.from_i64(5) * &r.from_i64(3), r.from_i64(1));
        assert!(r.from_i64(3).is_unit());
        assert_eq!(r.from_i64(3).unit_inverse().unwrap(), r.from_i64(5));
        assert_eq!(r.from_i64(-1), r.from_i64(6));
        assert_eq!(-&r.from_i64(0), r.zero());
    }

    #[test]
    fn rationals() {
        let q = Ring::Rational;
        let half = q.parse_elem("1/2").unwrap();
        let third = q.parse_elem("1/3").unwrap();
        assert_eq!((&half + &third).to_string(), "5/6");
        assert!(third.is_unit());
        let tt = q.parse_elem("2/3").unwrap();
        assert_eq!(tt.unit_inverse().unwrap().to_string(), "3/2");
        assert_eq!(q.parse_elem("4/-6").unwrap().to_string(), "-2/3");
        assert!(!q.zero().is_unit());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(Ring::mod_prime(9), Err(Error::CompositeModulus(9)));
        assert_eq!("modp:1".parse::<Ring>(), Err(Error::CompositeModulus(1)));
        assert!("modp:x".parse::<Ring>().is_err());
        assert_eq!("modp:7".parse::<Ring>().unwrap().to_string(), "modp:7");
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = z(1);
        let b = Ring::Rational.one();
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch(..))));
        let c = Ring::mod_prime(5).unwrap().one();
        let d = Ring::mod_prime(7).unwrap().one();
        assert!(c.try_mul(&d).is_err());
    }

    #[test]
    fn overflow_spills_to_bignum() {
        let big = z(i64::MAX);
        let s = &big + &z(1);
        assert_eq!(s.to_string(), "9223372036854775808");
        assert_eq!(&s - &z(1), big);
        let sq = &big * &big;
        let oracle = num_bigint::BigInt::from(i64::MAX) * num_bigint::BigInt::from(i64::MAX);
        assert_eq!(sq.to_string(), oracle.to_string());
        let mut acc = z(i64::MAX);
        acc.add_mul(&z(2), &z(3));
        assert_eq!(acc.to_string(), "9223372036854775813");
        let q = Ring::Rational;
        let a = q.parse_elem(&format!("{}/3", i64::MAX)).unwrap();
        let b = &a * &a;
        assert_eq!(&b * &q.parse_elem("9").unwrap(), &(&a * &a) * &q.from_i64(9));
        assert_eq!((&b - &b), q.zero());
    }

    #[test]
    fn miller_rabin() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }
}
