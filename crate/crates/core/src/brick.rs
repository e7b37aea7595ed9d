//! Cylinder sets of the product shift: a root plus one finite word per
//! dimension.

use crate::error::{Error, Result};
use crate::space::SpaceSpec;

pub type Word = Vec<u8>;

/// The set of points at `root` whose coordinate in dimension `j` begins with
/// `words[j]`.
///
/// The derived order (root, then dimension-major lexicographic, a prefix
/// sorting before its extensions) is the canonical order used everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Brick {
    pub root: u32,
    pub words: Vec<Word>,
}

pub(crate) fn is_prefix(a: &[u8], b: &[u8]) -> bool {
    a.len() <= b.len() && b[..a.len()] == *a
}

fn comparable(a: &[u8], b: &[u8]) -> bool {
    is_prefix(a, b) || is_prefix(b, a)
}

impl Brick {
    pub fn new(space: &SpaceSpec, root: u32, words: Vec<Word>) -> Result<Self> {
        let b = Brick { root, words };
        b.validate(space)?;
        Ok(b)
    }

    /// The cylinder of a whole root.
    pub fn root_cylinder(space: &SpaceSpec, root: u32) -> Self {
        Brick {
            root,
            words: vec![Vec::new(); space.n()],
        }
    }

    pub fn validate(&self, space: &SpaceSpec) -> Result<()> {
        if self.root >= space.r() {
            return Err(Error::InvalidBrick(format!(
                "root {} not below r={}",
                self.root,
                space.r()
            )));
        }
        if self.words.len() != space.n() {
            return Err(Error::InvalidBrick(format!(
                "{} words given for n={}",
                self.words.len(),
                space.n()
            )));
        }
        for (j, w) in self.words.iter().enumerate() {
            if let Some(&a) = w.iter().find(|&&a| u32::from(a) >= space.k(j)) {
                return Err(Error::InvalidBrick(format!(
                    "letter {a} not in alphabet of size {} (dimension {j})",
                    space.k(j)
                )));
            }
        }
        Ok(())
    }

    pub fn depth(&self, dim: usize) -> usize {
        self.words[dim].len()
    }

    pub fn max_depth(&self) -> usize {
        self.words.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_disjoint(&self, other: &Brick) -> bool {
        self.root != other.root
            || self
                .words
                .iter()
                .zip(&other.words)
                .any(|(a, b)| !comparable(a, b))
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &Brick) -> bool {
        self.root == other.root
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| is_prefix(a, b))
    }

    pub fn intersect(&self, other: &Brick) -> Option<Brick> {
        if self.is_disjoint(other) {
            return None;
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| if a.len() >= b.len() { a.clone() } else { b.clone() })
            .collect();
        Some(Brick {
            root: self.root,
            words,
        })
    }

    pub fn child(&self, dim: usize, letter: u8) -> Brick {
        let mut c = self.clone();
        c.words[dim].push(letter);
        c
    }

    /// The `k_dim` one-letter extensions along `dim`, in letter order.
    pub fn subdivide(&self, space: &SpaceSpec, dim: usize) -> Result<Vec<Brick>> {
        space.check_dim(dim)?;
        Ok((0..space.k(dim) as u8).map(|a| self.child(dim, a)).collect())
    }

    /// The `k_dim^depth` extensions along `dim` of length `depth`, in
    /// lexicographic order.
    pub fn subdivide_to(&self, space: &SpaceSpec, dim: usize, depth: usize) -> Result<Vec<Brick>> {
        let mut out = vec![self.clone()];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(out.len() * space.k(dim) as usize);
            for b in &out {
                next.extend(b.subdivide(space, dim)?);
            }
            out = next;
        }
        Ok(out)
    }

    /// For `self ⊆ from`, the brick obtained by replacing the `from` prefix
    /// with `to` in every dimension.
    pub fn transplant(&self, from: &Brick, to: &Brick) -> Brick {
        debug_assert!(from.contains(self));
        let words = self
            .words
            .iter()
            .zip(&from.words)
            .zip(&to.words)
            .map(|((w, f), t)| {
                let mut out = t.clone();
                out.extend_from_slice(&w[f.len()..]);
                out
            })
            .collect();
        Brick {
            root: to.root,
            words,
        }
    }

    /// `self \ other` as disjoint bricks, obtained by splitting `self` only
    /// along the path towards `other`.
    pub fn subtract(&self, space: &SpaceSpec, other: &Brick) -> Vec<Brick> {
        if self.is_disjoint(other) {
            return vec![self.clone()];
        }
        if other.contains(self) {
            return Vec::new();
        }
        // Intersecting but not contained: some word of `self` is a proper
        // prefix of the matching word of `other`.
        let dim = (0..space.n())
            .find(|&j| self.words[j].len() < other.words[j].len())
            .expect("intersecting, not contained");
        let next = other.words[dim][self.words[dim].len()];
        let mut out = Vec::new();
        for a in 0..space.k(dim) as u8 {
            let c = self.child(dim, a);
            if a == next {
                out.extend(c.subtract(space, other));
            } else {
                out.push(c);
            }
        }
        out
    }
}
