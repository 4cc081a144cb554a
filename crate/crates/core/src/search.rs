//! Bounded enumeration shared by the representation, splitting and isotropy searches.

use alloc::vec;
use alloc::vec::Vec;

use crate::fields::{Field, DEFAULT_DEGREE_BOUND};

/// Limits for the semi-decision searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Budget {
    /// Maximal coefficient degree over function fields.
    pub degree_bound: u32,
    /// Maximal number of candidates examined by one search.
    pub max_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            degree_bound: DEFAULT_DEGREE_BOUND,
            max_candidates: 1 << 20,
        }
    }
}

impl Budget {
    pub fn with_degree(degree_bound: u32) -> Self {
        Budget {
            degree_bound,
            ..Budget::default()
        }
    }

    pub fn zero() -> Self {
        Budget {
            degree_bound: 0,
            max_candidates: 0,
        }
    }
}

/// Visits vectors of length `n` with entries from `elems`, in shells of
/// increasing maximal entry index and lexicographically within a shell.
/// Stops at the first vector for which `visit` returns `Some`, or after
/// `budget.max_candidates` vectors.
pub fn search_vectors<F: Field, T>(
    f: F,
    n: usize,
    budget: Budget,
    mut visit: impl FnMut(&[F::Elem]) -> Option<T>,
) -> Option<T> {
    let elems = f.elements(budget.degree_bound);
    let mut seen = 0u64;
    if n == 0 {
        return None;
    }
    let mut idx = vec![0usize; n];
    for m in 0..elems.len() {
        let base = (m + 1) as u64;
        let total = base.saturating_pow(n as u32);
        for code in 0..total {
            let mut c = code;
            for slot in idx.iter_mut().rev() {
                *slot = (c % base) as usize;
                c /= base;
            }
            if !idx.contains(&m) {
                continue;
            }
            if seen >= budget.max_candidates {
                return None;
            }
            seen += 1;
            let v: Vec<F::Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
            if let Some(t) = visit(&v) {
                return Some(t);
            }
        }
    }
    None
}
