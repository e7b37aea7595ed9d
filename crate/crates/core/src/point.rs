//! Ultimately periodic points: `preperiod · period^∞` in every dimension.

use std::fmt;

use crate::brick::{Brick, Word};
use crate::clopen::Clopen;
use crate::error::{Error, Result};
use crate::space::SpaceSpec;

/// One coordinate `preperiod · period · period · ...`.
///
/// Stored normalized: the period is primitive and the preperiod is as short
/// as possible (its last letter differs from the period's last letter), so two
/// coordinates denote the same sequence iff they are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Periodic {
    pre: Word,
    period: Word,
}

impl Periodic {
    pub fn new(pre: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidPoint("period must be nonempty".into()));
        }
        let mut p = Periodic { pre, period };
        p.normalize();
        Ok(p)
    }

    pub fn pre(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    fn normalize(&mut self) {
        let len = self.period.len();
        let root = (1..=len)
            .find(|&d| len.is_multiple_of(d) && (d..len).all(|i| self.period[i] == self.period[i - d]))
            .unwrap_or(len);
        self.period.truncate(root);
        while let Some(&last) = self.pre.last() {
            if last != *self.period.last().unwrap() {
                break;
            }
            self.pre.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn letter(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn starts_with(&self, word: &[u8]) -> bool {
        word.iter().enumerate().all(|(i, &a)| self.letter(i) == a)
    }

    /// Drops the first `len` letters, then prepends `word`.
    pub fn replace_prefix(&self, len: usize, word: &[u8]) -> Periodic {
        let (mut pre, period) = if len <= self.pre.len() {
            (self.pre[len..].to_vec(), self.period.clone())
        } else {
            let mut period = self.period.clone();
            period.rotate_left((len - self.pre.len()) % self.period.len());
            (Vec::new(), period)
        };
        let mut out = word.to_vec();
        out.append(&mut pre);
        let mut p = Periodic { pre: out, period };
        p.normalize();
        p
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RationalPoint {
    pub root: u32,
    pub coords: Vec<Periodic>,
}

impl RationalPoint {
    pub fn new(space: &SpaceSpec, root: u32, coords: Vec<Periodic>) -> Result<Self> {
        let p = RationalPoint { root, coords };
        p.validate(space)?;
        Ok(p)
    }

    pub fn validate(&self, space: &SpaceSpec) -> Result<()> {
        if self.root >= space.r() {
            return Err(Error::InvalidPoint(format!("root {} not below r", self.root)));
        }
        if self.coords.len() != space.n() {
            return Err(Error::InvalidPoint(format!(
                "{} coordinates given for n={}",
                self.coords.len(),
                space.n()
            )));
        }
        for (j, c) in self.coords.iter().enumerate() {
            if c.pre.iter().chain(&c.period).any(|&a| u32::from(a) >= space.k(j)) {
                return Err(Error::InvalidPoint(format!("letter outside alphabet in dimension {j}")));
            }
        }
        Ok(())
    }

    /// The constant point `a^∞` in every dimension.
    pub fn constant(space: &SpaceSpec, root: u32, letter: u8) -> Result<Self> {
        let coords = (0..space.n())
            .map(|_| Periodic::new(Vec::new(), vec![letter]))
            .collect::<Result<_>>()?;
        Self::new(space, root, coords)
    }

    pub fn in_brick(&self, b: &Brick) -> bool {
        self.root == b.root
            && self
                .coords
                .iter()
                .zip(&b.words)
                .all(|(c, w)| c.starts_with(w))
    }

    pub fn in_clopen(&self, x: &Clopen) -> Result<bool> {
        self.validate(x.space())?;
        Ok(x.bricks().iter().any(|b| self.in_brick(b)))
    }

    /// The brick fixing the first `depth` letters in every dimension.
    pub fn neighborhood(&self, depth: usize) -> Brick {
        Brick {
            root: self.root,
            words: self
                .coords
                .iter()
                .map(|c| (0..depth).map(|i| c.letter(i)).collect())
                .collect(),
        }
    }

    /// Image under the cylinder map `from·t ↦ to·t`; `self` must lie in `from`.
    pub fn transplant(&self, from: &Brick, to: &Brick) -> RationalPoint {
        debug_assert!(self.in_brick(from));
        RationalPoint {
            root: to.root,
            coords: self
                .coords
                .iter()
                .zip(&from.words)
                .zip(&to.words)
                .map(|((c, f), t)| c.replace_prefix(f.len(), t))
                .collect(),
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_point(self))
    }
}

/// `point_in` of the clopen algebra.
pub fn point_in(p: &RationalPoint, x: &Clopen) -> Result<bool> {
    p.in_clopen(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn per(pre: &[u8], period: &[u8]) -> Periodic {
        Periodic::new(pre.to_vec(), period.to_vec()).unwrap()
    }

    #[test]
    fn normal_form() {
        assert_eq!(per(&[], &[0, 1, 0, 1]), per(&[], &[0, 1]));
        assert_eq!(per(&[1, 0, 1], &[0, 1]), per(&[1], &[0, 1]));
        assert_eq!(per(&[0], &[1, 0]), per(&[], &[0, 1]));
        assert_eq!(per(&[0, 0], &[0]), per(&[], &[0]));
        assert!(Periodic::new(vec![1], vec![]).is_err());
    }

    #[test]
    fn membership_examples() {
        let s = SpaceSpec::uniform(1, 2, 1).unwrap();
        let c = |ws: &[&[u8]]| {
            Clopen::from_disjoint(
                &s,
                ws.iter()
                    .map(|w| Brick { root: 0, words: vec![w.to_vec()] })
                    .collect(),
            )
            .unwrap()
        };
        let zero = RationalPoint::new(&s, 0, vec![per(&[], &[0])]).unwrap();
        assert!(point_in(&zero, &c(&[&[0, 0]])).unwrap());
        let alt = RationalPoint::new(&s, 0, vec![per(&[], &[0, 1])]).unwrap();
        assert!(!point_in(&alt, &c(&[&[0, 0]])).unwrap());
        // 1·0^∞ expands to 100..., which extends 10.
        let p = RationalPoint::new(&s, 0, vec![per(&[1], &[0])]).unwrap();
        assert!(point_in(&p, &c(&[&[1, 0], &[1, 1]])).unwrap());
    }

    #[test]
    fn prefix_replacement() {
        // (10)^∞ with its first letter replaced by "01" is 01·(01)^∞
        let p = per(&[], &[1, 0]);
        assert_eq!(p.replace_prefix(1, &[0, 1]), per(&[], &[0, 1]));
        assert_eq!(p.replace_prefix(3, &[]), per(&[], &[0, 1]));
        // 0·(10)^∞ = (01)^∞
        assert_eq!(p.replace_prefix(0, &[0]), per(&[], &[0, 1]));
        assert_eq!(p.replace_prefix(0, &[1]), per(&[1, 1], &[0, 1]));
    }
}
