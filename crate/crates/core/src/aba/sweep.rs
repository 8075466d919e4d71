use std::collections::BTreeMap;

use super::spin::pow3;
use super::state::StateVector;
use crate::field::{Ring, Scalar};
use crate::rmatrix::RMat;

/// Operator on `auxiliary ⊗ site`, with the site a spin-1 space, grouped by input labels.
#[derive(Clone, Debug)]
pub struct LocalOp<T> {
    dim_aux: usize,
    by_input: Vec<Vec<(usize, usize, T)>>,
}

impl<T: Ring> LocalOp<T> {
    /// Entries `(aux_out, site_out, aux_in, site_in, value)`.
    pub fn from_entries(
        dim_aux: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, usize, T)>,
    ) -> Self {
        let mut by_input = vec![Vec::new(); dim_aux * 3];
        for (ao, so, ai, si, v) in entries {
            if !v.is_zero() {
                by_input[ai * 3 + si].push((ao, so, v));
            }
        }
        LocalOp { dim_aux, by_input }
    }

    pub fn dim_aux(&self) -> usize {
        self.dim_aux
    }
}

impl LocalOp<Scalar> {
    /// An R-matrix whose left factor is the auxiliary space.
    pub fn from_rmat(r: &RMat) -> Self {
        assert_eq!(r.dim_right(), 3, "site space must be spin-1");
        LocalOp::from_entries(r.dim_left(), r.nonzeros())
    }
}

/// Applies `ops[N-1] ⋯ ops[0]` (site 1 first) to a vector carrying an auxiliary label.
pub fn sweep<T: Ring>(
    n: usize,
    mut comps: Vec<BTreeMap<u32, T>>,
    ops: &[LocalOp<T>],
) -> Vec<BTreeMap<u32, T>> {
    assert_eq!(ops.len(), n, "one local operator per site");
    for (j, op) in ops.iter().enumerate() {
        assert_eq!(comps.len(), op.dim_aux);
        let p = pow3(n - 1 - j);
        let mut next: Vec<BTreeMap<u32, T>> = vec![BTreeMap::new(); op.dim_aux];
        for (ai, comp) in comps.iter().enumerate() {
            for (&key, val) in comp {
                let si = ((key / p) % 3) as usize;
                let base = key - si as u32 * p;
                for (ao, so, c) in &op.by_input[ai * 3 + si] {
                    let target = base + *so as u32 * p;
                    let term = val.mul_ref(c);
                    next[*ao]
                        .entry(target)
                        .and_modify(|x| x.add_assign_ref(&term))
                        .or_insert(term);
                }
            }
        }
        for comp in &mut next {
            comp.retain(|_, v| !v.is_zero());
        }
        comps = next;
    }
    comps
}

/// `⟨a_out| ops[N-1] ⋯ ops[0] |a_in⟩` applied to `v`.
pub fn aux_element<T: Ring>(
    ops: &[LocalOp<T>],
    a_out: usize,
    a_in: usize,
    v: &StateVector<T>,
    sector_shift: i32,
) -> StateVector<T> {
    let dim = ops.first().map_or(1, |o| o.dim_aux);
    let mut comps = vec![BTreeMap::new(); dim];
    comps[a_in] = v.raw().clone();
    let mut out = sweep(v.n(), comps, ops);
    let sector = v.sector().map(|m| m + sector_shift);
    StateVector::from_map(v.n(), std::mem::take(&mut out[a_out]), sector)
}
