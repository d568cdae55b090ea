//! Concrete (para-)cocyclic and cyclic modules built from presentations.

pub mod cm;
pub mod coalgebra;
pub mod diagonal;
pub mod hopf_cat;
pub mod nerve;

pub use cm::cm_complex;
pub use coalgebra::{coalgebra_cochain, CoalgebraCochain};
pub use diagonal::diagonal_complex;
pub use hopf_cat::{certify_coinvariance, hopf_cyclic_chain, hopf_cyclic_cochain, HopfCyclicChain, HopfCyclicCochain};
pub use nerve::{cyclic_nerve, twisted_nerve, NerveBasis};

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::scalar::Field;

/// Largest basis a builder will enumerate unless told otherwise.
pub const DEFAULT_MAX_BASIS: usize = 20000;

pub(crate) fn check_budget(what: &str, needed: usize, budget: usize) -> Result<()> {
    if needed > budget {
        return Err(Error::Budget { what: what.into(), needed, budget });
    }
    Ok(())
}

/// `v_0 ⊗ … ⊗ v_k` with the first factor most significant.
pub(crate) fn tensor_vecs<F: Field>(slots: &[SparseVec<F>]) -> SparseVec<F> {
    let mut out = SparseVec::from_entries(1, [(0, F::one())]);
    for s in slots {
        out = out.kron(s);
    }
    out
}

/// Mixed-radix digits of `k` with constant base, most significant first.
pub fn digits(mut k: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for i in (0..len).rev() {
        out[i] = k % base;
        k /= base;
    }
    out
}

/// Labels of `prefix ⊗ B^{⊗len}` with `⊗` between factors.
pub(crate) fn tensor_labels(prefix: Option<&[String]>, base: &[String], len: usize) -> Vec<String> {
    let mut cur: Vec<String> = match prefix {
        Some(p) => p.to_vec(),
        None => vec![String::new()],
    };
    for _ in 0..len {
        cur = cur
            .iter()
            .flat_map(|a| base.iter().map(move |b| if a.is_empty() { b.clone() } else { format!("{a}⊗{b}") }))
            .collect();
    }
    if cur.len() == 1 && cur[0].is_empty() {
        cur[0] = "1".into();
    }
    cur
}
