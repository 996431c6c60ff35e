//! Seeded generators for random test elements.
//!
//! Invertible elements are built to be invertible, with no rejection
//! sampling: `f` gets a unit constant term and the linear part of `g` is a
//! product of elementary matrices, so its determinant is `+-1`.

use rand::Rng;

use crate::formal_map::{FormalMap, LinearPart};
use crate::layout::Layout;
use crate::monomial::SignedMonomial;
use crate::riordan::RiordanElement;
use crate::ring::{Elem, Ring};
use crate::series::Series;
use crate::verde_star::{LaurentSeries, StarTuple, VsrElement};

/// Up to this many random terms are added to a series.
pub const MAX_TERMS: usize = 5;
/// Up to this many higher-order terms per map component.
pub const MAX_MAP_TERMS: usize = 3;
/// Random coefficients lie in `[-COEFF, COEFF]`.
pub const COEFF: i64 = 3;

/// A nonzero coefficient in the small window.
pub fn coeff<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> Elem {
    loop {
        let c = ring.from_i64(rng.random_range(-COEFF..=COEFF));
        if !c.is_zero() {
            return c;
        }
    }
}

/// A unit of the ring: `+-1` over the integers, any nonzero small value
/// over a field.
pub fn unit<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> Elem {
    if ring.is_field() {
        coeff(rng, ring)
    } else if rng.random_bool(0.5) {
        ring.one()
    } else {
        -&ring.one()
    }
}

/// A constant that is not a unit: `0` always qualifies; over the integers
/// `+-2` and `+-3` are used too.
pub fn non_unit<R: Rng + ?Sized>(rng: &mut R, ring: Ring) -> Elem {
    if ring.is_field() {
        return ring.zero();
    }
    ring.from_i64([0, 2, -2, 3, -3][rng.random_range(0..5)])
}

/// `c` plus up to `max_terms` random terms of degree `min_deg..=trunc`.
pub fn sparse_series<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    trunc: u32,
    ring: Ring,
    c: Elem,
    min_deg: u32,
    max_terms: usize,
) -> Series {
    let layout = Layout::get(dim, trunc);
    let lo = if min_deg == 0 { 0 } else { layout.prefix(min_deg - 1) };
    let mut terms = vec![(layout.monomial(0).clone(), c)];
    if min_deg <= trunc && lo < layout.len() {
        for _ in 0..rng.random_range(0..=max_terms) {
            let i = rng.random_range(lo..layout.len());
            terms.push((layout.monomial(i).clone(), coeff(rng, ring)));
        }
    }
    Series::from_terms(dim, trunc, ring, terms).expect("consistent context")
}

/// A unit series.
pub fn unit_series<R: Rng + ?Sized>(rng: &mut R, dim: usize, trunc: u32, ring: Ring) -> Series {
    let c = unit(rng, ring);
    sparse_series(rng, dim, trunc, ring, c, 1, MAX_TERMS)
}

/// A product of random elementary matrices: row additions, swaps and sign
/// flips.
pub fn unimodular<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..2 * dim {
        let i = rng.random_range(0..dim);
        let j = rng.random_range(0..dim);
        match rng.random_range(0..3) {
            0 if i != j => {
                let c = rng.random_range(-2..=2);
                let src = m[j].clone();
                m[i].iter_mut().zip(src).for_each(|(x, y)| *x += c * y);
            }
            1 => m.swap(i, j),
            _ => m[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    m
}

/// Makes a matrix singular: one row becomes zero or a multiple of another.
fn make_singular<R: Rng + ?Sized>(rng: &mut R, m: &mut [Vec<i64>]) {
    let d = m.len();
    let i = rng.random_range(0..d);
    if d == 1 || rng.random_bool(0.5) {
        m[i].iter_mut().for_each(|x| *x = 0);
    } else {
        let j = (i + rng.random_range(1..d)) % d;
        let c = rng.random_range(-2..=2);
        m[i] = m[j].iter().map(|x| c * x).collect();
    }
}

fn map_with_linear<R: Rng + ?Sized>(rng: &mut R, lin: &[Vec<i64>], trunc: u32, ring: Ring) -> FormalMap {
    let dim = lin.len();
    let rows: Vec<&[i64]> = lin.iter().map(Vec::as_slice).collect();
    let base = FormalMap::linear(&LinearPart::from_i64(ring, &rows), trunc);
    let comps = base
        .components()
        .iter()
        .map(|c| {
            let extra = sparse_series(rng, dim, trunc, ring, ring.zero(), 2, MAX_MAP_TERMS);
            c.add(&extra).expect("same context")
        })
        .collect();
    FormalMap::new(comps).expect("no constant terms")
}

/// A random invertible formal map.
pub fn invertible_map<R: Rng + ?Sized>(rng: &mut R, dim: usize, trunc: u32, ring: Ring) -> FormalMap {
    let lin = unimodular(rng, dim);
    map_with_linear(rng, &lin, trunc, ring)
}

/// A random formal map whose linear part is singular.
pub fn singular_map<R: Rng + ?Sized>(rng: &mut R, dim: usize, trunc: u32, ring: Ring) -> FormalMap {
    let mut lin = unimodular(rng, dim);
    make_singular(rng, &mut lin);
    map_with_linear(rng, &lin, trunc, ring)
}

/// A random element of the Riordan group.
pub fn invertible<R: Rng + ?Sized>(rng: &mut R, dim: usize, trunc: u32, ring: Ring) -> RiordanElement {
    let f = unit_series(rng, dim, trunc, ring);
    let g = invertible_map(rng, dim, trunc, ring);
    RiordanElement::new(f, g).expect("consistent context")
}

/// A random pair that is not invertible: non-unit `f`, singular `g`, or
/// both.
pub fn non_invertible<R: Rng + ?Sized>(rng: &mut R, dim: usize, trunc: u32, ring: Ring) -> RiordanElement {
    let mode = if trunc == 0 { 0 } else { rng.random_range(0..3) };
    let f = if mode != 1 {
        let c = non_unit(rng, ring);
        sparse_series(rng, dim, trunc, ring, c, 1, MAX_TERMS)
    } else {
        unit_series(rng, dim, trunc, ring)
    };
    let g = if mode != 0 {
        singular_map(rng, dim, trunc, ring)
    } else {
        invertible_map(rng, dim, trunc, ring)
    };
    RiordanElement::new(f, g).expect("consistent context")
}

/// A random monomial with exponents in `[-r, r]`.
pub fn signed_monomial<R: Rng + ?Sized>(rng: &mut R, dim: usize, r: i32) -> SignedMonomial {
    SignedMonomial::new((0..dim).map(|_| rng.random_range(-r..=r)).collect())
}

/// `x^v * body` with `v` in `[-1, 1]^d` and `body` a unit series.
pub fn laurent_unit<R: Rng + ?Sized>(rng: &mut R, dim: usize, accuracy: u32, ring: Ring) -> LaurentSeries {
    let v = signed_monomial(rng, dim, 1);
    LaurentSeries::new(v, unit_series(rng, dim, accuracy, ring)).expect("same dimension")
}

/// Like [`laurent_unit`] but the coefficient at the vertex is drawn from
/// the whole small window, so it may or may not be a unit.
pub fn laurent_any<R: Rng + ?Sized>(rng: &mut R, dim: usize, accuracy: u32, ring: Ring) -> LaurentSeries {
    let v = signed_monomial(rng, dim, 1);
    let c = if rng.random_bool(0.5) { unit(rng, ring) } else { non_unit(rng, ring) };
    let body = sparse_series(rng, dim, accuracy, ring, c, 1, MAX_TERMS);
    LaurentSeries::normalize(dim, ring, accuracy, LaurentSeries::new(v, body).expect("same dimension").terms())
        .expect("finite support")
}

/// A random element `(f, x*h)` of the Verde-Star-Riordan group.
pub fn vsr<R: Rng + ?Sized>(rng: &mut R, dim: usize, accuracy: u32, ring: Ring) -> VsrElement {
    let f = laurent_unit(rng, dim, accuracy, ring);
    let h = (0..dim).map(|_| unit_series(rng, dim, accuracy, ring)).collect();
    VsrElement::new(f, StarTuple::new(h).expect("consistent context")).expect("units by construction")
}
