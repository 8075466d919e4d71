use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::spin::{pow3, Spin, SpinState};
use crate::field::{Ring, Scalar};

/// Sparse vector on the spin-1 chain. Zero entries are never stored.
#[derive(Clone, Debug)]
pub struct StateVector<T = Scalar> {
    n: usize,
    entries: BTreeMap<u32, T>,
    sector: Option<i32>,
}

impl<T: Ring> StateVector<T> {
    pub fn zero(n: usize) -> Self {
        StateVector {
            n,
            entries: BTreeMap::new(),
            sector: None,
        }
    }

    pub fn basis(state: SpinState) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(state.index(), T::one());
        StateVector {
            n: state.n(),
            entries,
            sector: Some(state.magnetisation()),
        }
    }

    /// `|⇑ … ⇑⟩`.
    pub fn reference(n: usize) -> Self {
        StateVector::basis(SpinState::uniform(n, Spin::Up))
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (SpinState, T)>) -> Self {
        let mut v = StateVector::zero(n);
        for (s, x) in pairs {
            v.add_at(s.index(), &x);
        }
        v.retag();
        v
    }

    pub(crate) fn from_map(n: usize, mut entries: BTreeMap<u32, T>, sector: Option<i32>) -> Self {
        entries.retain(|_, v| !v.is_zero());
        StateVector { n, entries, sector }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sector(&self) -> Option<i32> {
        self.sector
    }

    /// Recomputes the sector tag from the stored keys.
    pub fn retag(&mut self) {
        let mut mags = self
            .entries
            .keys()
            .map(|&k| SpinState::from_index(self.n, k).magnetisation());
        self.sector = match mags.next() {
            Some(m) if mags.all(|x| x == m) => Some(m),
            _ => None,
        };
    }

    /// True when every stored key has the tagged magnetisation.
    pub fn sector_consistent(&self) -> bool {
        match self.sector {
            None => true,
            Some(m) => self
                .keys()
                .all(|s| s.magnetisation() == m),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, state: &SpinState) -> T {
        self.entries
            .get(&state.index())
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub(crate) fn raw(&self) -> &BTreeMap<u32, T> {
        &self.entries
    }

    pub fn keys(&self) -> impl Iterator<Item = SpinState> + '_ {
        self.entries.keys().map(|&k| SpinState::from_index(self.n, k))
    }

    /// Components in base-3 index order.
    pub fn iter(&self) -> impl Iterator<Item = (SpinState, &T)> + '_ {
        self.entries
            .iter()
            .map(|(&k, v)| (SpinState::from_index(self.n, k), v))
    }

    pub(crate) fn add_at(&mut self, key: u32, x: &T) {
        if x.is_zero() {
            return;
        }
        match self.entries.get_mut(&key) {
            Some(v) => {
                v.add_assign_ref(x);
                if v.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, x.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "site counts differ");
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            out.add_at(k, v);
        }
        out.sector = if self.is_zero() {
            other.sector
        } else if other.is_zero() || self.sector == other.sector {
            self.sector
        } else {
            None
        };
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg_ref())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return StateVector::zero(self.n);
        }
        self.map(|v| v.mul_ref(c))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> StateVector<U> {
        StateVector::from_map(
            self.n,
            self.entries.iter().map(|(&k, v)| (k, f(v))).collect(),
            self.sector,
        )
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<StateVector<U>, E> {
        let mut entries = BTreeMap::new();
        for (&k, v) in &self.entries {
            entries.insert(k, f(v)?);
        }
        Ok(StateVector::from_map(self.n, entries, self.sector))
    }

    /// Bilinear pairing `Σ_σ u_σ v_σ` (no conjugation).
    pub fn dot(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for (k, v) in &self.entries {
            if let Some(w) = other.entries.get(k) {
                acc.add_assign_ref(&v.mul_ref(w));
            }
        }
        acc
    }

    /// `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &Self) -> Self {
        let shift = pow3(other.n);
        let mut entries = BTreeMap::new();
        for (&a, x) in &self.entries {
            for (&b, y) in &other.entries {
                entries.insert(a * shift + b, x.mul_ref(y));
            }
        }
        let sector = match (self.sector, other.sector) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        StateVector::from_map(self.n + other.n, entries, sector)
    }

    /// Applies `f` to every basis label, summing coefficients that collide.
    pub fn relabel(&self, f: impl Fn(SpinState) -> (SpinState, T)) -> Self {
        let mut out = StateVector::zero(self.n);
        for (s, v) in self.iter() {
            let (t, c) = f(s);
            out.add_at(t.index(), &v.mul_ref(&c));
        }
        out.retag();
        out
    }

    /// Applies a two-site operator, given by its nonzero entries `(out_j, out_k, in_j, in_k, c)`,
    /// to 0-based sites `j` and `k`.
    pub fn apply_pair(&self, j: usize, k: usize, op: &[(usize, usize, usize, usize, T)]) -> Self {
        let mut out = StateVector::zero(self.n);
        for (s, v) in self.iter() {
            let (sj, sk) = (s.site(j).index(), s.site(k).index());
            for (oj, ok, ij, ik, c) in op {
                if *ij == sj && *ik == sk {
                    let t = s
                        .with_site(j, Spin::from_index(*oj))
                        .with_site(k, Spin::from_index(*ok));
                    out.add_at(t.index(), &v.mul_ref(c));
                }
            }
        }
        out.sector = self.sector;
        if !out.sector_consistent() {
            out.retag();
        }
        out
    }

    /// Spin reversal `⇑ ↔ ⇓` on every site.
    pub fn reversed(&self) -> Self {
        self.relabel(|s| (s.reversed(), T::one()))
    }

    /// Dense coordinates in the given basis order.
    pub fn coords(&self, basis: &[SpinState]) -> Vec<T> {
        basis.iter().map(|s| self.get(s)).collect()
    }
}

/// Equality of components; the sector tag is bookkeeping and is ignored.
impl<T: PartialEq> PartialEq for StateVector<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

/// A component of a state, keyed by its spin string.
#[derive(Serialize)]
pub struct Component<'a, T> {
    pub state: SpinState,
    pub value: &'a T,
}

impl<T: Ring + Serialize> Serialize for StateVector<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for (state, value) in self.iter() {
            seq.serialize_element(&Component { state, value })?;
        }
        seq.end()
    }
}
