//! Constructive witnesses for pure infiniteness, vigor, infinite conjugacy
//! classes and compressibility of the full group.
//!
//! Every constructor subdivides along dimension 0 when it needs room, and
//! matches bricks in canonical order, so outputs are deterministic.

use crate::bisection::PrefixBijection;
use crate::brick::Brick;
use crate::clopen::Clopen;
use crate::element::{Multisection, TableElement};
use crate::error::{Error, Result};
use crate::point::RationalPoint;
use crate::space::SpaceSpec;

/// A bisection with source exactly `a` and range a proper subset of `b`.
///
/// The first brick of `b` is cut along dimension 0 into `k_0^m` pieces with
/// `k_0^m > |a|`; the bricks of `a` are matched to the first `|a|` pieces.
pub fn compress(a: &Clopen, b: &Clopen) -> Result<PrefixBijection> {
    a.space().ensure_same(b.space())?;
    if a.is_empty() {
        return Err(Error::EmptyClopen("compress source"));
    }
    if b.is_empty() {
        return Err(Error::EmptyClopen("compress target"));
    }
    let space = a.space();
    let need = a.len() + 1;
    let k0 = space.k(0) as usize;
    let (mut depth, mut count) = (0, 1usize);
    while count < need {
        depth += 1;
        count *= k0;
    }
    let pieces = b.bricks()[0].subdivide_to(space, 0, depth)?;
    let cells = a.bricks().iter().cloned().zip(pieces).collect();
    Ok(PrefixBijection::new_unchecked(space, cells))
}

/// Two bisections with source `x` and disjoint ranges inside `x`.
pub fn doubling_witness(x: &Clopen) -> Result<(PrefixBijection, PrefixBijection)> {
    if x.is_empty() {
        return Err(Error::EmptyClopen("doubling set"));
    }
    let space = x.space();
    let halves = x.bricks()[0].subdivide(space, 0)?;
    let left = Clopen::from_brick(space, halves[0].clone())?;
    let right = Clopen::from_brick(space, halves[1].clone())?;
    Ok((compress(x, &left)?, compress(x, &right)?))
}

/// Nonnegative solution of `a + Σ x_j m_j = b + Σ y_j m_j` with the smallest
/// common total, where `m_j = k_j - 1`. Requires `a ≡ b (mod g)`.
fn subdivision_plan(space: &SpaceSpec, a: usize, b: usize) -> (Vec<usize>, Vec<usize>) {
    let steps: Vec<usize> = space.kbar().iter().map(|&k| k as usize - 1).collect();
    let g = space.g() as usize;
    let mut total = a.max(b);
    loop {
        if let (Some(x), Some(y)) = (
            nonneg_combination(&steps, total - a),
            nonneg_combination(&steps, total - b),
        ) {
            return (x, y);
        }
        total += g;
    }
}

/// Writes `target` as `Σ c_j steps[j]` with `c_j ≥ 0`, preferring low
/// dimension indices, or `None` if impossible.
fn nonneg_combination(steps: &[usize], target: usize) -> Option<Vec<usize>> {
    // reachable[t] = index of the last step used to reach t
    let mut last: Vec<Option<usize>> = vec![None; target + 1];
    let mut reachable = vec![false; target + 1];
    reachable[0] = true;
    for t in 1..=target {
        for (j, &s) in steps.iter().enumerate() {
            if s <= t && reachable[t - s] {
                reachable[t] = true;
                last[t] = Some(j);
                break;
            }
        }
    }
    if !reachable[target] {
        return None;
    }
    let mut counts = vec![0; steps.len()];
    let mut t = target;
    while t > 0 {
        let j = last[t].expect("reachable");
        counts[j] += 1;
        t -= steps[j];
    }
    Some(counts)
}

/// Splits bricks of `x` breadth-first: `plan[j]` subdivisions along `j`.
fn refine(space: &SpaceSpec, x: &Clopen, plan: &[usize]) -> Vec<Brick> {
    let mut queue: std::collections::VecDeque<Brick> = x.bricks().iter().cloned().collect();
    for (dim, &times) in plan.iter().enumerate() {
        for _ in 0..times {
            let b = queue.pop_front().expect("nonempty");
            queue.extend(b.subdivide(space, dim).expect("valid dimension"));
        }
    }
    let mut out: Vec<Brick> = queue.into();
    out.sort();
    out
}

/// A bisection with source exactly `a` and range exactly `b`; exists iff the
/// two sets have the same class in `H_0 ≅ Z/gZ` (and are both empty or both
/// nonempty).
pub fn bisection_between(a: &Clopen, b: &Clopen) -> Result<PrefixBijection> {
    a.space().ensure_same(b.space())?;
    let space = a.space();
    let (ca, cb) = (a.h0_class(), b.h0_class());
    if ca != cb {
        return Err(Error::ClassMismatch {
            left: ca.into(),
            right: cb.into(),
            modulus: space.g().into(),
        });
    }
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return Ok(PrefixBijection::empty(space)),
        (true, false) | (false, true) => {
            return Err(Error::EmptyClopen("exactly one side of the bisection"))
        }
        _ => {}
    }
    let (plan_a, plan_b) = subdivision_plan(space, a.len(), b.len());
    let dom = refine(space, a, &plan_a);
    let ran = refine(space, b, &plan_b);
    debug_assert_eq!(dom.len(), ran.len());
    Ok(PrefixBijection::new_unchecked(space, dom.into_iter().zip(ran).collect()))
}

/// `bisection_between` when the classes agree, `compress` otherwise.
fn move_into(a: &Clopen, b: &Clopen) -> Result<PrefixBijection> {
    if a.h0_class() == b.h0_class() {
        bisection_between(a, b)
    } else {
        compress(a, b)
    }
}

/// Assembles `b1 ∪ b2 ∪ (b2 b1)⁻¹ ∪ id` for `b1: X0 → X1`, `b2: X1 → X2`.
fn three_cycle(b1: &PrefixBijection, b2: &PrefixBijection) -> Result<Multisection> {
    let closing = b2.compose(b1)?.inverse();
    let sets = [b1.source(), b1.range(), b2.range()];
    let moved = b1.union(b2)?.union(&closing)?;
    let support = sets[0].union(&sets[1])?.union(&sets[2])?;
    let fixed = PrefixBijection::identity_on(&support.complement());
    let element = TableElement::from_bisection(moved.union(&fixed)?)?.canonicalize();
    Ok(Multisection { element, sets })
}

/// The order-3 element cycling `x0 → x1 → x2 → x0`, identity elsewhere.
pub fn multisection(x0: &Clopen, x1: &Clopen, x2: &Clopen) -> Result<Multisection> {
    x0.space().ensure_same(x1.space())?;
    x0.space().ensure_same(x2.space())?;
    if x0.is_empty() || x1.is_empty() || x2.is_empty() {
        return Err(Error::EmptyClopen("multisection set"));
    }
    for (p, q) in [(x0, x1), (x1, x2), (x0, x2)] {
        if !p.is_disjoint(q)? {
            return Err(Error::Overlap("multisection sets must be pairwise disjoint".into()));
        }
    }
    let b1 = bisection_between(x0, x1)?;
    let b2 = bisection_between(x1, x2)?;
    three_cycle(&b1, &b2)
}

/// Which branch of the vigor construction produced a witness.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VigorCase {
    /// `Y1 ⊆ Y2`: the identity.
    Contained,
    /// `Y2 \ Y1 ≠ ∅`: a single order-3 element.
    Cycle,
    /// `Y2 ⊊ Y1 ⊊ X`: a product of two order-3 elements.
    TwoStep,
}

/// An element `gamma` supported in `X` with `gamma(Y1) ⊆ Y2`, together with
/// its factorization into multisections (`gamma = factors[last] ∘ ... ∘
/// factors[0]`).
#[derive(Clone, Debug)]
pub struct VigorWitness {
    pub gamma: TableElement,
    pub factors: Vec<Multisection>,
    pub case: VigorCase,
}

/// Order-3 element moving nonempty `y1` into `z`, which is disjoint from
/// `y1`: `y1 → Z21 → Z22 → y1` for a split `z = Z21 ⊔ Z22`.
fn cycle_into(y1: &Clopen, z: &Clopen) -> Result<Multisection> {
    let space = z.space();
    let (z21, z22) = if z.len() >= 2 {
        let first = Clopen::from_brick(space, z.bricks()[0].clone())?;
        let rest = z.difference(&first)?;
        (first, rest)
    } else {
        let parts = z.bricks()[0].subdivide(space, 0)?;
        let first = Clopen::from_brick(space, parts[0].clone())?;
        let rest = Clopen::from_disjoint(space, parts[1..].to_vec())?;
        (first, rest)
    };
    let b1 = move_into(y1, &z21)?;
    let b2 = move_into(&b1.range(), &z22)?;
    three_cycle(&b1, &b2)
}

pub fn vigor_witness(x: &Clopen, y1: &Clopen, y2: &Clopen) -> Result<VigorWitness> {
    let space = x.space();
    space.ensure_same(y1.space())?;
    space.ensure_same(y2.space())?;
    if x.is_full() {
        return Err(Error::Precondition("X must be a proper subset of the unit space".into()));
    }
    if y2.is_empty() {
        return Err(Error::EmptyClopen("Y2"));
    }
    if !y1.is_subset(x)? || !y2.is_subset(x)? {
        return Err(Error::Precondition("Y1 and Y2 must lie inside X".into()));
    }
    if y1.is_subset(y2)? {
        return Ok(VigorWitness {
            gamma: TableElement::identity(space),
            factors: Vec::new(),
            case: VigorCase::Contained,
        });
    }
    let z = y2.difference(y1)?;
    if !z.is_empty() {
        let m = cycle_into(y1, &z)?;
        return Ok(VigorWitness {
            gamma: m.element.clone(),
            factors: vec![m],
            case: VigorCase::Cycle,
        });
    }
    // Y2 ⊊ Y1.
    if y1 == x {
        return Err(Error::Precondition(
            "Y1 = X with Y2 a proper subset: no homeomorphism fixing the complement of X maps X into a proper subset"
                .into(),
        ));
    }
    let w = x.difference(y1)?;
    let first = cycle_into(y1, &w)?;
    let parked = first.element.image(y1)?;
    let second = cycle_into(&parked, y2)?;
    let gamma = second.element.compose(&first.element)?;
    Ok(VigorWitness {
        gamma,
        factors: vec![first, second],
        case: VigorCase::TwoStep,
    })
}

/// One member `h g h⁻¹` of a conjugate family.
#[derive(Clone, Debug)]
pub struct Conjugate {
    pub h: VigorWitness,
    pub conjugate: TableElement,
    /// `conjugate(Y1) ⊆ target`; targets are pairwise disjoint.
    pub target: Clopen,
}

#[derive(Clone, Debug)]
pub struct ConjugateFamily {
    pub y1: Clopen,
    pub members: Vec<Conjugate>,
}

/// A brick `Y` with `g(Y) ∩ Y = ∅` inside a cell of `g` that moves its brick.
fn wandering_brick(g: &TableElement) -> Option<Brick> {
    let (d, r) = g.cells().iter().find(|(d, r)| d != r)?;
    if d.is_disjoint(r) {
        return Some(d.clone());
    }
    // Same root, all words comparable, some dimension differs in length.
    let dim = (0..d.words.len()).find(|&j| d.words[j] != r.words[j])?;
    let (dw, rw) = (&d.words[dim], &r.words[dim]);
    let longer = if rw.len() > dw.len() { rw } else { dw };
    let next = longer[dw.len().min(rw.len())];
    let letter = if next == 0 { 1 } else { 0 };
    Some(d.child(dim, letter))
}

/// `count` pairwise distinct conjugates `h_m g h_m⁻¹`, each `h_m` a product
/// of multisections supported off `Y1`.
pub fn distinct_conjugates(g: &TableElement, count: usize) -> Result<ConjugateFamily> {
    let g = g.canonicalize();
    if g.is_identity() {
        return Err(Error::Precondition("the identity has a trivial conjugacy class".into()));
    }
    let space = g.space().clone();
    let y = wandering_brick(&g).expect("non-identity element has a moving cell");
    // One extra level keeps Y1 ∪ g(Y1) away from the whole space.
    let y1 = Clopen::from_brick(&space, y.child(0, 0))?;
    let gy = g.image(&y1)?;
    debug_assert!(gy.is_disjoint(&y1)?);
    let x = y1.complement();
    let free = x.difference(&gy)?;
    let base = free.bricks()[0].clone();
    let top = (space.k(0) - 1) as u8;
    let mut members = Vec::with_capacity(count);
    for m in 0..count {
        let mut w = base.clone();
        w.words[0].extend(std::iter::repeat_n(top, m));
        w.words[0].push(0);
        let target = Clopen::from_brick(&space, w)?;
        let h = vigor_witness(&x, &gy, &target)?;
        let conjugate = g.conjugate_by(&h.gamma)?;
        members.push(Conjugate { h, conjugate, target });
    }
    Ok(ConjugateFamily { y1, members })
}

/// Inputs of the three compressibility conditions at a point `x0`. The
/// subbase is the family of clopens not containing `x0`.
#[derive(Clone, Debug)]
pub enum CompressibilityArgs {
    /// Condition 1: an element fixing a neighbourhood of `x0`.
    Support(TableElement),
    /// Condition 2: `U1, U2`.
    Compress(Clopen, Clopen),
    /// Condition 3: `U1, U2, U3` with `U1 ∩ U2 = ∅`.
    Separate(Clopen, Clopen, Clopen),
}

impl CompressibilityArgs {
    pub fn condition(&self) -> u8 {
        match self {
            CompressibilityArgs::Support(_) => 1,
            CompressibilityArgs::Compress(..) => 2,
            CompressibilityArgs::Separate(..) => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub enum CompressibilityWitness {
    /// `closed_support(g) ⊆ u` and `x0 ∉ u`.
    Support { u: Clopen, neighborhood: Clopen },
    /// `gamma(U1) ⊆ U2`, `gamma` fixing `neighborhood ∋ x0` pointwise.
    Compress { gamma: VigorWitness, neighborhood: Clopen },
    /// `gamma(U1) ∩ U3 = ∅`, `closed_support(gamma) ∩ U2 = ∅`, `gamma`
    /// fixing `neighborhood ∋ x0` pointwise.
    Separate { gamma: VigorWitness, neighborhood: Clopen },
}

/// Smallest `n` whose depth-`n` brick around `x0` misses `set`.
fn avoiding_depth(x0: &RationalPoint, set: &Clopen) -> usize {
    (0..)
        .find(|&n| {
            let nb = x0.neighborhood(n);
            set.bricks().iter().all(|b| b.is_disjoint(&nb))
        })
        .expect("x0 outside a clopen has a disjoint brick neighbourhood")
}

fn require_outside(x0: &RationalPoint, u: &Clopen, name: &str) -> Result<()> {
    if x0.in_clopen(u)? {
        return Err(Error::Precondition(format!("x0 lies in {name}")));
    }
    Ok(())
}

pub fn compressibility_witness(
    x0: &RationalPoint,
    args: &CompressibilityArgs,
) -> Result<CompressibilityWitness> {
    let nb = |space: &SpaceSpec, n: usize| Clopen::from_brick(space, x0.neighborhood(n));
    match args {
        CompressibilityArgs::Support(g) => {
            let space = g.space();
            x0.validate(space)?;
            let supp = g.closed_support();
            require_outside(x0, &supp, "the closed support")?;
            let n = avoiding_depth(x0, &supp);
            let neighborhood = nb(space, n)?;
            Ok(CompressibilityWitness::Support {
                u: neighborhood.complement(),
                neighborhood,
            })
        }
        CompressibilityArgs::Compress(u1, u2) => {
            let space = u1.space();
            require_outside(x0, u1, "U1")?;
            require_outside(x0, u2, "U2")?;
            let n = avoiding_depth(x0, &u1.union(u2)?);
            let neighborhood = nb(space, n + 1)?;
            let gamma = vigor_witness(&neighborhood.complement(), u1, u2)?;
            Ok(CompressibilityWitness::Compress { gamma, neighborhood })
        }
        CompressibilityArgs::Separate(u1, u2, u3) => {
            let space = u1.space();
            require_outside(x0, u1, "U1")?;
            require_outside(x0, u2, "U2")?;
            require_outside(x0, u3, "U3")?;
            if !u1.is_disjoint(u2)? {
                return Err(Error::Precondition("U1 and U2 must be disjoint".into()));
            }
            let n = avoiding_depth(x0, &u1.union(u2)?.union(u3)?);
            let outer = nb(space, n)?;
            let neighborhood = nb(space, n + 1)?;
            let ring = outer.difference(&neighborhood)?;
            let x = u1.union(&ring)?;
            let gamma = vigor_witness(&x, u1, &ring)?;
            Ok(CompressibilityWitness::Separate { gamma, neighborhood })
        }
    }
}
