//! Thompson's group `V` inside `nV_{k̄,r}`.
//!
//! Given a proper clopen `X`, we enlarge it to a clopen `Y` of class zero
//! and split `Y = Y0 ⊔ Y1` into two class-zero pieces. The bisections
//! `s_i: Y → Y_i` behave like the two branches of the binary tree: a binary
//! word `u` names the cell `s_u(Y)`, and a tree pair `u_i ↦ w_i` acts on
//! `s_{u_i}(Y)` by `s_{w_i} ∘ s_{u_i}⁻¹`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::bisection::PrefixBijection;
use crate::brick::{Brick, Word};
use crate::clopen::Clopen;
use crate::element::TableElement;
use crate::error::{Error, Result};
use crate::space::SpaceSpec;
use crate::witness::{bisection_between, vigor_witness};

/// The binary Cantor set `{0,1}^ℕ` with one root, on which `V` acts.
pub fn binary_space() -> SpaceSpec {
    SpaceSpec::uniform(1, 2, 1).expect("valid space")
}

fn binary_brick(w: Word) -> Brick {
    Brick { root: 0, words: vec![w] }
}

/// An element of Thompson's group `V`, stored as its reduced tree pair.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VElement(TableElement);

impl VElement {
    /// Builds the element from matched leaves `dom ↦ ran`. Both leaf sets
    /// must be complete binary prefix codes. The result is reduced.
    pub fn from_pairs(pairs: Vec<(Word, Word)>) -> Result<Self> {
        let space = binary_space();
        let cells = pairs
            .into_iter()
            .map(|(d, r)| (binary_brick(d), binary_brick(r)))
            .collect();
        Ok(VElement(TableElement::new(&space, cells)?.canonicalize()))
    }

    pub fn from_table(t: &TableElement) -> Result<Self> {
        t.space().ensure_same(&binary_space())?;
        Ok(VElement(t.canonicalize()))
    }

    pub fn identity() -> Self {
        VElement(TableElement::identity(&binary_space()))
    }

    /// Leaf pairs of the reduced tree pair, in canonical order.
    pub fn pairs(&self) -> Vec<(Word, Word)> {
        self.0
            .cells()
            .iter()
            .map(|(d, r)| (d.words[0].clone(), r.words[0].clone()))
            .collect()
    }

    pub fn as_table(&self) -> &TableElement {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VElement) -> VElement {
        VElement(self.0.compose(&other.0).expect("same space"))
    }

    pub fn invert(&self) -> VElement {
        VElement(self.0.invert())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }
}

impl fmt::Display for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_vpair(self))
    }
}

/// A class-zero clopen `Y` with two bisections `s0, s1` from `Y` onto the
/// halves of a partition `Y = Y0 ⊔ Y1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VEmbedding {
    pub space: SpaceSpec,
    pub y: Clopen,
    pub s0: PrefixBijection,
    pub s1: PrefixBijection,
}

/// Breadth-first subdivision along dimension 0 until at least `need` bricks.
fn split_until(space: &SpaceSpec, bricks: &[Brick], need: usize) -> Vec<Brick> {
    let mut queue: std::collections::VecDeque<Brick> = bricks.iter().cloned().collect();
    while queue.len() < need {
        let b = queue.pop_front().expect("nonempty");
        queue.extend(b.subdivide(space, 0).expect("dimension 0 exists"));
    }
    let mut out: Vec<Brick> = queue.into();
    out.sort();
    out
}

pub fn build_v_embedding(space: &SpaceSpec, x: &Clopen) -> Result<VEmbedding> {
    space.ensure_same(x.space())?;
    if x.is_full() {
        return Err(Error::Precondition("X must be a proper subset of the unit space".into()));
    }
    if x.is_empty() {
        return Err(Error::EmptyClopen("embedding support"));
    }
    let g = space.g() as usize;
    let missing = (g - x.h0_class() as usize) % g;
    let y = if missing == 0 {
        x.clone()
    } else {
        // Keep at least one complement brick out so that Y stays proper.
        let spare = split_until(space, x.complement().bricks(), missing + 1);
        let extra = Clopen::from_disjoint(space, spare[..missing].to_vec())?;
        x.union(&extra)?
    };
    debug_assert_eq!(y.h0_class(), 0);
    let pieces = split_until(space, y.bricks(), g + 1);
    let y0 = Clopen::from_disjoint(space, pieces[..g].to_vec())?;
    let y1 = Clopen::from_disjoint(space, pieces[g..].to_vec())?;
    Ok(VEmbedding {
        space: space.clone(),
        s0: bisection_between(&y, &y0)?,
        s1: bisection_between(&y, &y1)?,
        y,
    })
}

impl VEmbedding {
    /// `s_u = s_{u_1} ∘ ... ∘ s_{u_m}`, the identity on `Y` for the empty word.
    pub fn word_bisection(&self, u: &[u8]) -> Result<PrefixBijection> {
        let mut acc = PrefixBijection::identity_on(&self.y);
        for &a in u {
            acc = acc.compose(self.letter(a)?)?;
        }
        Ok(acc)
    }

    fn letter(&self, a: u8) -> Result<&PrefixBijection> {
        match a {
            0 => Ok(&self.s0),
            1 => Ok(&self.s1),
            _ => Err(Error::InvalidBrick(format!("binary letter expected, found {a}"))),
        }
    }

    /// The cell `s_u(Y)`.
    pub fn cell(&self, u: &[u8]) -> Result<Clopen> {
        Ok(self.word_bisection(u)?.range())
    }

    /// Image in `Y` of a clopen of the binary Cantor set.
    pub fn transport(&self, b: &Clopen) -> Result<Clopen> {
        b.space().ensure_same(&binary_space())?;
        let mut bricks = Vec::new();
        for br in b.bricks() {
            bricks.extend(self.cell(&br.words[0])?.bricks().iter().cloned());
        }
        Clopen::from_disjoint(&self.space, bricks)
    }
}

/// The image of `v` under the embedding: identity off `Y`.
pub fn evaluate_embedding(emb: &VEmbedding, v: &VElement) -> Result<TableElement> {
    let mut memo: BTreeMap<Word, PrefixBijection> = BTreeMap::new();
    let mut word = |u: &Word| -> Result<PrefixBijection> {
        if let Some(b) = memo.get(u) {
            return Ok(b.clone());
        }
        let b = emb.word_bisection(u)?;
        memo.insert(u.clone(), b.clone());
        Ok(b)
    };
    let mut cells = Vec::new();
    for (u, w) in v.pairs() {
        let piece = word(&w)?.compose(&word(&u)?.inverse())?;
        cells.extend(piece.into_cells());
    }
    cells.extend(
        emb.y
            .complement()
            .bricks()
            .iter()
            .map(|b| (b.clone(), b.clone())),
    );
    Ok(TableElement::new(&emb.space, cells)?.canonicalize())
}

/// One vigor instance posed on the binary side and checked on the image.
#[derive(Clone, Debug)]
pub struct VigorTrial {
    pub x: Clopen,
    pub y1: Clopen,
    pub y2: Clopen,
    /// The binary witness, when the construction succeeded.
    pub witness: Option<VElement>,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct VigorReport {
    pub trials: Vec<VigorTrial>,
}

impl VigorReport {
    pub fn successes(&self) -> usize {
        self.trials.iter().filter(|t| t.ok).count()
    }

    pub fn failures(&self) -> usize {
        self.trials.len() - self.successes()
    }
}

/// Solves the vigor problem for binary clopens `x ⊋ y1` and `y2 ⊆ x` on the
/// binary side, then checks on the image that the element is supported in
/// the transported `x` and maps the transported `y1` into the transported
/// `y2`.
pub fn check_vigor_instance(
    emb: &VEmbedding,
    x: &Clopen,
    y1: &Clopen,
    y2: &Clopen,
) -> Result<(VElement, bool)> {
    let w = vigor_witness(x, y1, y2)?;
    let v = VElement::from_table(&w.gamma)?;
    let image = evaluate_embedding(emb, &v)?;
    let (tx, ty1, ty2) = (emb.transport(x)?, emb.transport(y1)?, emb.transport(y2)?);
    let ok = tx.is_subset(&emb.y)?
        && tx != emb.y
        && image.closed_support().is_subset(&tx)?
        && image.image(&ty1)?.is_subset(&ty2)?;
    Ok((v, ok))
}

fn binary_clopen(words: &[Word]) -> Clopen {
    let bricks = words.iter().cloned().map(binary_brick).collect();
    Clopen::from_disjoint(&binary_space(), bricks).expect("distinct words of equal length")
}

/// Random vigor instances built from depth-`depth` binary cells, with
/// `Y1', Y2' ⊆ X' ≠ Y` and `Y2' \ Y1' ≠ ∅`.
pub fn image_vigor_check<R: Rng>(
    emb: &VEmbedding,
    trials: usize,
    depth: usize,
    rng: &mut R,
) -> VigorReport {
    let depth = depth.max(1);
    let words: Vec<Word> = (0..1usize << depth)
        .map(|i| (0..depth).rev().map(|b| ((i >> b) & 1) as u8).collect())
        .collect();
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        // X': a nonempty proper set of cells.
        let mut x: Vec<Word> = words.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if x.is_empty() {
            x.push(words[rng.gen_range(0..words.len())].clone());
        }
        if x.len() == words.len() {
            x.remove(rng.gen_range(0..x.len()));
        }
        // A cell of X' kept out of Y1' and put into Y2'.
        let fresh = rng.gen_range(0..x.len());
        let y1: Vec<Word> = x
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != fresh && rng.gen_bool(0.5))
            .map(|(_, w)| w.clone())
            .collect();
        let y2: Vec<Word> = x
            .iter()
            .enumerate()
            .filter(|&(i, _)| i == fresh || rng.gen_bool(0.5))
            .map(|(_, w)| w.clone())
            .collect();
        let (x, y1, y2) = (binary_clopen(&x), binary_clopen(&y1), binary_clopen(&y2));
        let (witness, ok) = match check_vigor_instance(emb, &x, &y1, &y2) {
            Ok((v, ok)) => (Some(v), ok),
            Err(_) => (None, false),
        };
        out.push(VigorTrial { x, y1, y2, witness, ok });
    }
    VigorReport { trials: out }
}
