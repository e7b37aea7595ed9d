//! Closed-form invariants of `nV_{k̄,r}`: groupoid homology (Künneth over the
//! factors, independent of `r`), the abelianization table for equal slopes,
//! the proper characters it induces, and perfectness.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::SpaceSpec;

/// A finitely generated abelian group `Z_{q_1} ⊕ ... ⊕ Z_{q_m}` kept in
/// primary decomposition (prime powers ascending, then `0` for each `Z`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct AbelianGroupDesc {
    factors: Vec<u64>,
}

fn prime_powers(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut q = 1;
        while m.is_multiple_of(p) {
            m /= p;
            q *= p;
        }
        if q > 1 {
            out.push(q);
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn smallest_prime(q: u64) -> u64 {
    (2..=q).find(|p| q.is_multiple_of(*p)).unwrap_or(q)
}

impl AbelianGroupDesc {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// The direct sum of cyclic groups of the given orders; `0` means `Z`
    /// and `1` contributes nothing.
    pub fn from_cyclic(orders: &[u64]) -> Self {
        let mut factors: Vec<u64> = orders
            .iter()
            .flat_map(|&m| if m == 0 { vec![0] } else { prime_powers(m) })
            .collect();
        factors.sort_by_key(|&q| if q == 0 { (u64::MAX, 0) } else { (smallest_prime(q), q) });
        AbelianGroupDesc { factors }
    }

    pub fn cyclic(m: u64) -> Self {
        Self::from_cyclic(&[m])
    }

    /// `Z_m^e`.
    pub fn power(m: u64, e: usize) -> Self {
        Self::from_cyclic(&vec![m; e])
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut all = self.factors.clone();
        all.extend(&other.factors);
        Self::from_cyclic(&all)
    }

    pub fn primary_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// `None` for an infinite group.
    pub fn order(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &q| if q == 0 { None } else { Some(acc * q) })
    }

    /// Invariant factors `d_1 | d_2 | ... | d_m`, followed by `0` for each `Z`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let finite: Vec<u64> = self.factors.iter().copied().filter(|&q| q != 0).collect();
        let mut by_prime: Vec<Vec<u64>> = Vec::new();
        for q in finite {
            match by_prime.last_mut() {
                Some(group) if smallest_prime(group[0]) == smallest_prime(q) => group.push(q),
                _ => by_prime.push(vec![q]),
            }
        }
        let len = by_prime.iter().map(Vec::len).max().unwrap_or(0);
        // Largest powers go into the last invariant factor.
        let mut out = vec![1u64; len];
        for group in &by_prime {
            for (i, &q) in group.iter().rev().enumerate() {
                out[len - 1 - i] *= q;
            }
        }
        out.extend(self.factors.iter().filter(|&&q| q == 0));
        out
    }

    /// The character group; a finite abelian group is isomorphic to its dual.
    pub fn dual(&self) -> AbelianGroupDesc {
        self.clone()
    }
}

impl fmt::Display for AbelianGroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .invariant_factors()
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z_{d}") })
            .collect();
        f.write_str(&parts.join(" x "))
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `H_i = (Z/gZ)^{C(n-1, i)}` with `g = gcd(k_j - 1)`.
pub fn homology(space: &SpaceSpec, degree: usize) -> AbelianGroupDesc {
    AbelianGroupDesc::power(u64::from(space.g()), binomial(space.n() - 1, degree))
}

/// Which row of the equal-slope table applies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[allow(clippy::upper_case_acronyms)]
enum Row {
    /// No proper characters: `k = 2`, or `k` even with `n = 1`.
    I,
    /// `Z_{k-1}^{n-1}`: `k > 2` even with `n > 1`, or `k ≡ 3 (4)` with `n > 2`.
    II,
    /// `Z_2`: `k` odd, `n = 1`.
    III,
    /// `Z_2 ⊕ Z_{k-1}^{n-1}`: `k ≡ 1 (4)`, `n > 1`.
    IV,
    /// `Z_{2k-2}`: `k ≡ 3 (4)`, `n = 2`.
    V,
}

fn row(n: usize, k: u64) -> Row {
    match (k, n) {
        (2, _) => Row::I,
        (k, 1) if k % 2 == 0 => Row::I,
        (_, 1) => Row::III,
        (k, _) if k % 2 == 0 => Row::II,
        (k, _) if k % 4 == 1 => Row::IV,
        (_, 2) => Row::V,
        _ => Row::II,
    }
}

/// `None` for mixed slopes with `g = 1` (the group is acyclic), and an error
/// for mixed slopes with `g > 1`.
fn classify(space: &SpaceSpec) -> Result<Option<(Row, usize, u64)>> {
    match space.uniform_k() {
        Some(k) => Ok(Some((row(space.n(), k.into()), space.n(), k.into()))),
        None if space.g() == 1 => Ok(None),
        None => Err(Error::NotDetermined(format!(
            "abelianization for slopes {:?} with gcd {} is not covered by the closed-form table",
            space.kbar(),
            space.g()
        ))),
    }
}

pub fn abelianization(space: &SpaceSpec) -> Result<AbelianGroupDesc> {
    let Some((row, n, k)) = classify(space)? else {
        return Ok(AbelianGroupDesc::trivial());
    };
    Ok(match row {
        Row::I => AbelianGroupDesc::trivial(),
        Row::II => AbelianGroupDesc::power(k - 1, n - 1),
        Row::III => AbelianGroupDesc::cyclic(2),
        Row::IV => AbelianGroupDesc::cyclic(2).direct_sum(&AbelianGroupDesc::power(k - 1, n - 1)),
        Row::V => AbelianGroupDesc::cyclic(2 * k - 2),
    })
}

/// A family of `count` proper characters, each of order `order`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CharacterFamily {
    pub count: u64,
    pub order: u64,
}

/// Proper characters listed as the cyclic generators of the dual of the
/// abelianization, together with the full dual group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacterDesc {
    /// Roman numeral of the matching row of the table, or `"acyclic"`.
    pub item: &'static str,
    pub families: Vec<CharacterFamily>,
    pub dual: AbelianGroupDesc,
}

impl CharacterDesc {
    pub fn count(&self) -> u64 {
        self.families.iter().map(|f| f.count).sum()
    }
}

pub fn proper_characters(space: &SpaceSpec) -> Result<CharacterDesc> {
    let dual = abelianization(space)?.dual();
    let fam = |count: u64, order: u64| CharacterFamily { count, order };
    let Some((row, n, k)) = classify(space)? else {
        return Ok(CharacterDesc { item: "acyclic", families: Vec::new(), dual });
    };
    let n = n as u64;
    let (item, families) = match row {
        Row::I => ("i", Vec::new()),
        Row::II => ("ii", vec![fam(n - 1, k - 1)]),
        Row::III => ("iii", vec![fam(1, 2)]),
        Row::IV => ("iv", vec![fam(1, 2), fam(n - 1, k - 1)]),
        Row::V => ("v", vec![fam(1, 2 * k - 2)]),
    };
    Ok(CharacterDesc { item, families, dual })
}

/// Trivial abelianization. For mixed slopes with `g > 1`, `H_1` is a
/// nonzero quotient of the abelianization, so the group is not perfect.
pub fn is_perfect(space: &SpaceSpec) -> bool {
    match abelianization(space) {
        Ok(a) => a.is_trivial(),
        Err(_) => false,
    }
}
