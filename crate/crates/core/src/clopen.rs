//! Compact open subsets of the unit space as finite unions of bricks.
//!
//! A [`Clopen`] always holds its canonical form. The canonical form is built
//! dimension by dimension: the coordinate in dimension 0 is cut along the
//! coarsest prefix code on whose cylinders the cross-section (the set of
//! remaining coordinates) is constant, and each cross-section is canonicalized
//! recursively over the remaining dimensions. The result depends only on the
//! point set, so set equality is syntactic equality. For `n = 1` it is the
//! usual minimal prefix code, with no complete sibling family left unmerged.

use std::fmt;

use crate::brick::{Brick, Word};
use crate::error::{Error, Result};
use crate::space::SpaceSpec;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clopen {
    space: SpaceSpec,
    bricks: Vec<Brick>,
}

/// Whether a brick list is pairwise disjoint.
pub fn pairwise_disjoint(bricks: &[Brick]) -> bool {
    for (i, a) in bricks.iter().enumerate() {
        for b in &bricks[i + 1..] {
            if !a.is_disjoint(b) {
                return false;
            }
        }
    }
    true
}

impl Clopen {
    pub fn empty(space: &SpaceSpec) -> Self {
        Clopen {
            space: space.clone(),
            bricks: Vec::new(),
        }
    }

    pub fn full(space: &SpaceSpec) -> Self {
        Clopen {
            space: space.clone(),
            bricks: (0..space.r())
                .map(|i| Brick::root_cylinder(space, i))
                .collect(),
        }
    }

    pub fn from_brick(space: &SpaceSpec, brick: Brick) -> Result<Self> {
        brick.validate(space)?;
        Ok(Clopen {
            space: space.clone(),
            bricks: vec![brick],
        })
    }

    /// Builds a clopen from pairwise disjoint bricks.
    pub fn from_disjoint(space: &SpaceSpec, bricks: Vec<Brick>) -> Result<Self> {
        for b in &bricks {
            b.validate(space)?;
        }
        if !pairwise_disjoint(&bricks) {
            return Err(Error::Overlap("clopen bricks must be pairwise disjoint".into()));
        }
        Ok(Self::from_disjoint_unchecked(space, bricks))
    }

    pub(crate) fn from_disjoint_unchecked(space: &SpaceSpec, bricks: Vec<Brick>) -> Self {
        Clopen {
            space: space.clone(),
            bricks: canonical_bricks(space, &bricks),
        }
    }

    /// Builds a clopen from arbitrary, possibly overlapping bricks.
    pub fn from_bricks(space: &SpaceSpec, bricks: Vec<Brick>) -> Result<Self> {
        let mut acc = Clopen::empty(space);
        for b in bricks {
            acc = acc.union(&Clopen::from_brick(space, b)?)?;
        }
        Ok(acc)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn bricks(&self) -> &[Brick] {
        &self.bricks
    }

    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Clopen::full(&self.space)
    }

    pub fn max_depth(&self) -> usize {
        self.bricks.iter().map(Brick::max_depth).max().unwrap_or(0)
    }

    pub fn intersect(&self, other: &Clopen) -> Result<Clopen> {
        self.space.ensure_same(&other.space)?;
        let mut out = Vec::new();
        for a in &self.bricks {
            for b in &other.bricks {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        Ok(Self::from_disjoint_unchecked(&self.space, out))
    }

    pub fn difference(&self, other: &Clopen) -> Result<Clopen> {
        self.space.ensure_same(&other.space)?;
        Ok(Self::from_disjoint_unchecked(
            &self.space,
            subtract_all(&self.space, &self.bricks, &other.bricks),
        ))
    }

    pub fn union(&self, other: &Clopen) -> Result<Clopen> {
        self.space.ensure_same(&other.space)?;
        let mut out = self.bricks.clone();
        out.extend(subtract_all(&self.space, &other.bricks, &self.bricks));
        Ok(Self::from_disjoint_unchecked(&self.space, out))
    }

    pub fn complement(&self) -> Clopen {
        Clopen::full(&self.space)
            .difference(self)
            .expect("same space")
    }

    pub fn is_subset(&self, other: &Clopen) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn is_disjoint(&self, other: &Clopen) -> Result<bool> {
        self.space.ensure_same(&other.space)?;
        Ok(self
            .bricks
            .iter()
            .all(|a| other.bricks.iter().all(|b| a.is_disjoint(b))))
    }

    /// The class in `H_0 ≅ Z/gZ`: brick count modulo `g`.
    pub fn h0_class(&self) -> u32 {
        (self.bricks.len() as u64 % u64::from(self.space.g())) as u32
    }

    /// Applies `op` to the two operands.
    pub fn apply_op(&self, other: &Clopen, op: SetOp) -> Result<SetOpResult> {
        Ok(match op {
            SetOp::Union => SetOpResult::Set(self.union(other)?),
            SetOp::Intersect => SetOpResult::Set(self.intersect(other)?),
            SetOp::Difference => SetOpResult::Set(self.difference(other)?),
            SetOp::Complement => {
                self.space.ensure_same(&other.space)?;
                SetOpResult::Set(self.complement())
            }
            SetOp::SubsetTest => SetOpResult::Bool(self.is_subset(other)?),
        })
    }
}

/// The Boolean operations of [`Clopen::apply_op`]. `Complement` ignores the
/// second operand apart from the space check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
    Complement,
    SubsetTest,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SetOpResult {
    Set(Clopen),
    Bool(bool),
}

fn subtract_all(space: &SpaceSpec, from: &[Brick], remove: &[Brick]) -> Vec<Brick> {
    let mut out = Vec::new();
    for x in from {
        let mut pieces = vec![x.clone()];
        for y in remove {
            if pieces.is_empty() {
                break;
            }
            pieces = pieces
                .into_iter()
                .flat_map(|p| p.subtract(space, y))
                .collect();
        }
        out.extend(pieces);
    }
    out
}

impl fmt::Display for Clopen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_clopen(self))
    }
}

/// A tail of a brick: words for dimensions `d..n`.
type Tail = Vec<Word>;

enum Node {
    Leaf(Vec<Tail>),
    Split(Vec<Node>),
}

/// Canonical brick list for a pairwise disjoint input.
pub(crate) fn canonical_bricks(space: &SpaceSpec, bricks: &[Brick]) -> Vec<Brick> {
    let mut out = Vec::new();
    for root in 0..space.r() {
        let tails: Vec<&[Word]> = bricks
            .iter()
            .filter(|b| b.root == root)
            .map(|b| b.words.as_slice())
            .collect();
        for words in canonical_tails(space, 0, &tails) {
            out.push(Brick { root, words });
        }
    }
    out.sort();
    out
}

fn canonical_tails(space: &SpaceSpec, dim: usize, items: &[&[Word]]) -> Vec<Tail> {
    if items.is_empty() {
        return Vec::new();
    }
    if dim == space.n() {
        return vec![Vec::new()];
    }
    let mut prefix = Vec::new();
    let node = section_tree(space, dim, &mut prefix, items);
    let mut out = Vec::new();
    emit(&node, &mut prefix, &mut out);
    out.sort();
    out
}

fn section_tree(space: &SpaceSpec, dim: usize, prefix: &mut Word, items: &[&[Word]]) -> Node {
    let depth = prefix.len();
    if items.iter().all(|t| t[0].len() <= depth) {
        let rest: Vec<&[Word]> = items.iter().map(|t| &t[1..]).collect();
        return Node::Leaf(canonical_tails(space, dim + 1, &rest));
    }
    let mut children = Vec::with_capacity(space.k(dim) as usize);
    for a in 0..space.k(dim) as u8 {
        let sub: Vec<&[Word]> = items
            .iter()
            .copied()
            .filter(|t| t[0].len() <= depth || t[0][depth] == a)
            .collect();
        prefix.push(a);
        children.push(section_tree(space, dim, prefix, &sub));
        prefix.pop();
    }
    let merged = match &children[0] {
        Node::Leaf(first) => children
            .iter()
            .all(|c| matches!(c, Node::Leaf(s) if s == first))
            .then(|| first.clone()),
        Node::Split(_) => None,
    };
    match merged {
        Some(section) => Node::Leaf(section),
        None => Node::Split(children),
    }
}

fn emit(node: &Node, prefix: &mut Word, out: &mut Vec<Tail>) {
    match node {
        Node::Leaf(section) => {
            for t in section {
                let mut words = Vec::with_capacity(t.len() + 1);
                words.push(prefix.clone());
                words.extend(t.iter().cloned());
                out.push(words);
            }
        }
        Node::Split(children) => {
            for (a, c) in children.iter().enumerate() {
                prefix.push(a as u8);
                emit(c, prefix, out);
                prefix.pop();
            }
        }
    }
}
