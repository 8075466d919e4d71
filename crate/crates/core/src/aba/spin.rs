use std::fmt;

use serde::{Serialize, Serializer};

/// Spin-1 basis state of one site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Up,
    Zero,
    Down,
}

impl Spin {
    pub const ALL: [Spin; 3] = [Spin::Up, Spin::Zero, Spin::Down];

    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Zero => 1,
            Spin::Down => 2,
        }
    }

    pub fn from_index(k: usize) -> Spin {
        match k {
            0 => Spin::Up,
            1 => Spin::Zero,
            2 => Spin::Down,
            _ => panic!("spin-1 index {k} out of range"),
        }
    }

    /// Eigenvalue of `s³`.
    pub fn weight(self) -> i32 {
        1 - self.index() as i32
    }

    pub fn reversed(self) -> Spin {
        Spin::from_index(2 - self.index())
    }

    pub fn symbol(self) -> char {
        match self {
            Spin::Up => 'U',
            Spin::Zero => '0',
            Spin::Down => 'D',
        }
    }

    pub fn from_symbol(c: char) -> Option<Spin> {
        match c {
            'U' | 'u' | '⇑' => Some(Spin::Up),
            '0' => Some(Spin::Zero),
            'D' | 'd' | '⇓' => Some(Spin::Down),
            _ => None,
        }
    }
}

/// Basis state `|σ₁ … σ_N⟩`, stored as its base-3 index with site 1 most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinState {
    n: usize,
    index: u32,
}

pub(crate) fn pow3(k: usize) -> u32 {
    3u32.pow(k as u32)
}

impl SpinState {
    pub fn from_index(n: usize, index: u32) -> Self {
        assert!(index < pow3(n), "index {index} out of range for {n} sites");
        SpinState { n, index }
    }

    pub fn from_spins(spins: &[Spin]) -> Self {
        let index = spins
            .iter()
            .fold(0u32, |acc, s| 3 * acc + s.index() as u32);
        SpinState {
            n: spins.len(),
            index,
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        let spins: Option<Vec<Spin>> = text.chars().map(Spin::from_symbol).collect();
        spins.map(|s| SpinState::from_spins(&s))
    }

    pub fn uniform(n: usize, s: Spin) -> Self {
        SpinState::from_spins(&vec![s; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Spin at 0-based site `j`.
    pub fn site(&self, j: usize) -> Spin {
        Spin::from_index(((self.index / pow3(self.n - 1 - j)) % 3) as usize)
    }

    pub fn spins(&self) -> Vec<Spin> {
        (0..self.n).map(|j| self.site(j)).collect()
    }

    pub fn magnetisation(&self) -> i32 {
        self.spins().iter().map(|s| s.weight()).sum()
    }

    pub fn with_site(&self, j: usize, s: Spin) -> SpinState {
        let p = pow3(self.n - 1 - j);
        let old = (self.index / p) % 3;
        SpinState {
            n: self.n,
            index: self.index - old * p + s.index() as u32 * p,
        }
    }

    pub fn without_site(&self, j: usize) -> SpinState {
        let mut spins = self.spins();
        spins.remove(j);
        SpinState::from_spins(&spins)
    }

    pub fn reversed(&self) -> SpinState {
        SpinState::from_spins(&self.spins().into_iter().map(Spin::reversed).collect::<Vec<_>>())
    }

    pub fn all(n: usize) -> impl Iterator<Item = SpinState> {
        (0..pow3(n)).map(move |index| SpinState { n, index })
    }

    pub fn sector(n: usize, m: i32) -> Vec<SpinState> {
        SpinState::all(n).filter(|s| s.magnetisation() == m).collect()
    }
}

impl fmt::Display for SpinState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.spins() {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl Serialize for SpinState {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_three_encoding() {
        let s = SpinState::parse("U0D").unwrap();
        assert_eq!(s.index(), 5);
        assert_eq!(s.to_string(), "U0D");
        assert_eq!(s.magnetisation(), 0);
        assert_eq!(s.site(0), Spin::Up);
        assert_eq!(s.with_site(2, Spin::Up).to_string(), "U0U");
        assert_eq!(s.reversed().to_string(), "D0U");
        assert_eq!(s.without_site(1).to_string(), "UD");
    }

    #[test]
    fn sector_sizes() {
        assert_eq!(SpinState::sector(3, 0).len(), 7);
        assert_eq!(SpinState::sector(4, 0).len(), 19);
    }
}
