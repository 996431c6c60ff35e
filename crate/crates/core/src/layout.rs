//! Shared index tables for the monomials of degree `<= k` in `d` variables.
//!
//! Every [`crate::Series`] at a given `(d, k)` stores its coefficients
//! densely by grlex rank and points at one cached `Layout`. The layout holds
//! the product table used by convolution: because the monomials of degree
//! `<= j` form a prefix of the grlex list, row `i` of the table only needs
//! entries for the prefix of partners whose degree keeps the product within
//! `k`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::monomial::{enumerate_upto, Monomial};

#[derive(Debug)]
pub struct Layout {
    dim: usize,
    trunc: u32,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    degree: Vec<u32>,
    /// `prefix[j]` = number of monomials of degree `<= j`.
    prefix: Vec<usize>,
    /// For `i > 0`: a variable `j` dividing `monos[i]` and the rank of
    /// `monos[i] / x_j`.
    parent: Vec<(usize, usize)>,
    /// `products[i][j]` = rank of `monos[i] * monos[j]`, for `j < prefix[k - deg i]`.
    products: Vec<Vec<u32>>,
}

type Cache = Mutex<HashMap<(usize, u32), Arc<Layout>>>;

impl Layout {
    /// The cached layout for `(dim, trunc)`.
    pub fn get(dim: usize, trunc: u32) -> Arc<Layout> {
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(l) = cache.lock().expect("layout cache poisoned").get(&(dim, trunc)) {
            return l.clone();
        }
        let built = Arc::new(Layout::build(dim, trunc));
        cache
            .lock()
            .expect("layout cache poisoned")
            .entry((dim, trunc))
            .or_insert(built)
            .clone()
    }

    fn build(dim: usize, trunc: u32) -> Layout {
        let monos = enumerate_upto(dim, trunc);
        let index: HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let degree: Vec<u32> = monos.iter().map(Monomial::degree).collect();
        let mut prefix = vec![0usize; trunc as usize + 1];
        for &d in &degree {
            for p in prefix.iter_mut().skip(d as usize) {
                *p += 1;
            }
        }
        let parent = monos
            .iter()
            .map(|m| match m.exps().iter().position(|&e| e > 0) {
                None => (0, 0),
                Some(j) => {
                    let mut e = m.exps().to_vec();
                    e[j] -= 1;
                    (j, index[&Monomial::new(e)])
                }
            })
            .collect();
        let products = monos
            .iter()
            .zip(&degree)
            .map(|(a, &da)| {
                monos[..prefix[(trunc - da) as usize]]
                    .iter()
                    .map(|b| index[&a.mul(b).expect("same dimension")] as u32)
                    .collect()
            })
            .collect();
        Layout {
            dim,
            trunc,
            monos,
            index,
            degree,
            prefix,
            parent,
            products,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monos[i]
    }

    pub fn rank(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degree[i]
    }

    /// Number of monomials of degree `<= j` (clamped to the layout).
    pub fn prefix(&self, j: u32) -> usize {
        self.prefix[j.min(self.trunc) as usize]
    }

    pub fn parent(&self, i: usize) -> (usize, usize) {
        self.parent[i]
    }

    pub fn products(&self, i: usize) -> &[u32] {
        &self.products[i]
    }

    /// Rank of the variable `x_{j+1}`, if `trunc >= 1`.
    pub fn var_rank(&self, j: usize) -> Option<usize> {
        (self.trunc >= 1).then_some(1 + j)
    }
}
