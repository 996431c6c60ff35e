//! The truncation tower. A [`Series`] at truncation `k` already is an
//! element of `K[x]_k` with truncated multiplication, so the level-`k`
//! action and its matrix are thin wrappers over lowering the truncation.

use crate::error::{Error, Result};
use crate::matrix::MonomialMatrix;
use crate::riordan::RiordanElement;
use crate::series::Series;

/// `P_k(f, g)(p) = pi_k(f (p o g))` at the truncation of `p`.
pub fn pk_action(a: &RiordanElement, p: &Series) -> Result<Series> {
    let k = p.trunc();
    if k > a.trunc() {
        return Err(Error::TruncationExceeded {
            degree: k,
            trunc: a.trunc(),
        });
    }
    a.lower_truncation(k)?.apply(p)
}

/// `M_k(f, g)`: the matrix of [`pk_action`] on the monomials of degree
/// `<= k`.
pub fn level_matrix(a: &RiordanElement, k: u32) -> Result<MonomialMatrix> {
    Ok(MonomialMatrix::riordan(&a.lower_truncation(k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal_map::FormalMap;
    use crate::monomial::Monomial;
    use crate::ring::Ring;

    const Z: Ring = Ring::Integer;

    fn sample() -> RiordanElement {
        let s = |t: &[(&[u32], i64)]| {
            Series::from_terms(2, 5, Z, t.iter().map(|(e, c)| (Monomial::new(e.to_vec()), Z.from_i64(*c)))).unwrap()
        };
        let f = s(&[(&[0, 0], 1), (&[0, 1], 2), (&[2, 1], -3)]);
        let g = FormalMap::new(vec![
            s(&[(&[0, 1], 1), (&[1, 1], 1)]),
            s(&[(&[1, 0], -1), (&[0, 1], 1), (&[0, 3], 2)]),
        ])
        .unwrap();
        RiordanElement::new(f, g).unwrap()
    }

    #[test]
    fn identity_action() {
        let p = Series::from_terms(2, 3, Z, [(Monomial::new(vec![1, 2]), Z.from_i64(4))]).unwrap();
        let id = RiordanElement::identity(2, 5, Z);
        assert_eq!(pk_action(&id, &p).unwrap(), p);
        assert_eq!(level_matrix(&id, 3).unwrap(), MonomialMatrix::identity(2, 3, Z));
    }

    #[test]
    fn basis_action_is_a_column() {
        let a = sample();
        let m = level_matrix(&a, 3).unwrap();
        for (c, n) in m.basis().to_vec().iter().enumerate() {
            let p = Series::from_terms(2, 3, Z, [(n.clone(), Z.one())]).unwrap();
            assert_eq!(pk_action(&a, &p).unwrap(), m.column(c));
        }
    }

    #[test]
    fn nested_levels() {
        let a = sample();
        let big = level_matrix(&a, 5).unwrap();
        for k in 0..5 {
            let small = level_matrix(&a, k).unwrap();
            for r in 0..small.size() {
                for c in 0..small.size() {
                    assert_eq!(small.get(r, c), big.get(r, c));
                }
            }
        }
        assert!(level_matrix(&a, 6).is_err());
    }
}
