//! The shape of the unit space: `r` roots, each carrying the product of `n`
//! one-sided full shifts over alphabets of sizes `k_1, ..., k_n`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest alphabet the text formats can spell (`0-9`, `A-Z`).
pub const MAX_ALPHABET: u32 = 36;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpaceSpec {
    kbar: Vec<u32>,
    r: u32,
    g: u32,
}

impl SpaceSpec {
    pub fn new(kbar: Vec<u32>, r: u32) -> Result<Self> {
        if kbar.is_empty() {
            return Err(Error::InvalidSpace("need at least one dimension".into()));
        }
        if r == 0 {
            return Err(Error::InvalidSpace("root count must be at least 1".into()));
        }
        if let Some(&k) = kbar.iter().find(|&&k| !(2..=MAX_ALPHABET).contains(&k)) {
            return Err(Error::InvalidSpace(format!(
                "alphabet size {k} outside 2..={MAX_ALPHABET}"
            )));
        }
        let g = kbar.iter().fold(0, |acc, &k| gcd(acc, k - 1));
        Ok(SpaceSpec { kbar, r, g })
    }

    /// `nV_{k,r}`: `n` copies of the same alphabet.
    pub fn uniform(n: usize, k: u32, r: u32) -> Result<Self> {
        Self::new(vec![k; n], r)
    }

    pub fn n(&self) -> usize {
        self.kbar.len()
    }

    pub fn kbar(&self) -> &[u32] {
        &self.kbar
    }

    pub fn k(&self, dim: usize) -> u32 {
        self.kbar[dim]
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `gcd(k_1 - 1, ..., k_n - 1)`, the order of degree-zero homology.
    pub fn g(&self) -> u32 {
        self.g
    }

    /// Common alphabet size when every dimension uses the same one.
    pub fn uniform_k(&self) -> Option<u32> {
        let k = self.kbar[0];
        self.kbar.iter().all(|&x| x == k).then_some(k)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim < self.n() {
            Ok(())
        } else {
            Err(Error::DimensionOutOfRange { dim, n: self.n() })
        }
    }

    pub fn ensure_same(&self, other: &SpaceSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    /// The header fields shared by every text format, e.g. `n=2 k=2,3 r=1`.
    pub fn fields(&self) -> String {
        let ks: Vec<String> = self.kbar.iter().map(u32::to_string).collect();
        format!("n={} k={} r={}", self.n(), ks.join(","), self.r)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fields())
    }
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_gcd() {
        assert_eq!(SpaceSpec::uniform(1, 3, 1).unwrap().g(), 2);
        assert_eq!(SpaceSpec::new(vec![2, 3], 1).unwrap().g(), 1);
        assert_eq!(SpaceSpec::new(vec![3, 5], 4).unwrap().g(), 2);
        assert_eq!(SpaceSpec::new(vec![4, 7, 10], 1).unwrap().g(), 3);
    }

    #[test]
    fn rejects_degenerate_spaces() {
        assert!(SpaceSpec::new(vec![], 1).is_err());
        assert!(SpaceSpec::new(vec![1], 1).is_err());
        assert!(SpaceSpec::new(vec![2], 0).is_err());
        assert!(SpaceSpec::new(vec![37], 1).is_err());
    }

    #[test]
    fn header_fields() {
        let s = SpaceSpec::new(vec![2, 3], 5).unwrap();
        assert_eq!(s.fields(), "n=2 k=2,3 r=5");
        assert_eq!(s.uniform_k(), None);
    }
}
