//! Elements of `nV_{k̄,r}`: bisections whose source and range are the whole
//! unit space.

use std::collections::BTreeMap;
use std::fmt;

use crate::bisection::PrefixBijection;
use crate::brick::Brick;
use crate::clopen::Clopen;
use crate::error::{Error, Result};
use crate::point::RationalPoint;
use crate::space::SpaceSpec;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TableElement {
    table: PrefixBijection,
}

/// Result of [`TableElement::order`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    Finite(u64),
    ExceedsBound,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::ExceedsBound => f.write_str("exceeds bound"),
        }
    }
}

impl TableElement {
    pub fn new(space: &SpaceSpec, cells: Vec<(Brick, Brick)>) -> Result<Self> {
        Self::from_bisection(PrefixBijection::new(space, cells)?)
    }

    pub fn from_bisection(table: PrefixBijection) -> Result<Self> {
        if !table.source().is_full() {
            return Err(Error::NotFull("domain bricks do not cover the unit space".into()));
        }
        if !table.range().is_full() {
            return Err(Error::NotFull("range bricks do not cover the unit space".into()));
        }
        Ok(TableElement { table })
    }

    /// Completes a bisection with the identity on the complement of its
    /// source. Requires `s(b) = r(b)` as sets.
    pub fn extend_by_identity(b: &PrefixBijection) -> Result<Self> {
        let src = b.source();
        if src != b.range() {
            return Err(Error::Precondition("source and range differ".into()));
        }
        let rest = PrefixBijection::identity_on(&src.complement());
        Ok(Self::from_bisection(b.union(&rest)?)?.canonicalize())
    }

    pub fn identity(space: &SpaceSpec) -> Self {
        TableElement {
            table: PrefixBijection::identity_on(&Clopen::full(space)),
        }
    }

    pub fn space(&self) -> &SpaceSpec {
        self.table.space()
    }

    pub fn cells(&self) -> &[(Brick, Brick)] {
        self.table.cells()
    }

    pub fn as_bisection(&self) -> &PrefixBijection {
        &self.table
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &TableElement) -> Result<TableElement> {
        let table = self.table.compose(&g.table)?;
        Ok(TableElement { table }.canonicalize())
    }

    pub fn invert(&self) -> TableElement {
        TableElement {
            table: self.table.inverse(),
        }
        .canonicalize()
    }

    /// Merges complete sibling families of cells whose ranges are the
    /// matching sibling family, scanning dimensions in increasing order until
    /// nothing changes. For `n = 1` this is the reduced tree pair.
    pub fn canonicalize(&self) -> TableElement {
        let space = self.space().clone();
        let mut cells = self.table.cells().to_vec();
        loop {
            let mut changed = false;
            for dim in 0..space.n() {
                while merge_pass(&space, dim, &mut cells) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        TableElement {
            table: PrefixBijection::new_unchecked(&space, cells),
        }
    }

    /// Every cell maps its domain brick to itself. A cell with `D ≠ R` moves
    /// every point of `D` except for a nowhere dense set, so this decides the
    /// word problem without any normal form.
    pub fn is_identity(&self) -> bool {
        self.table.cells().iter().all(|(d, r)| d == r)
    }

    pub fn equals(&self, other: &TableElement) -> Result<bool> {
        self.space().ensure_same(other.space())?;
        let q = self.table.compose(&other.table.inverse())?;
        Ok(q.cells().iter().all(|(d, r)| d == r))
    }

    pub fn apply(&self, p: &RationalPoint) -> Result<RationalPoint> {
        p.validate(self.space())?;
        Ok(self
            .table
            .apply_point(p)
            .expect("a full bisection covers every point"))
    }

    pub fn image(&self, x: &Clopen) -> Result<Clopen> {
        self.table.image(x)
    }

    /// Closure of `{x : g(x) ≠ x}`: the union of the domain bricks of all
    /// cells that move their brick.
    pub fn closed_support(&self) -> Clopen {
        let bricks = self
            .table
            .cells()
            .iter()
            .filter(|(d, r)| d != r)
            .map(|(d, _)| d.clone())
            .collect();
        Clopen::from_disjoint_unchecked(self.space(), bricks)
    }

    pub fn pow(&self, m: u64) -> TableElement {
        let mut acc = TableElement::identity(self.space());
        for _ in 0..m {
            acc = self.compose(&acc).expect("same space");
        }
        acc
    }

    /// Least `m ≤ bound` with `self^m = id`.
    pub fn order(&self, bound: u64) -> Order {
        let mut acc = self.canonicalize();
        for m in 1..=bound {
            if acc.is_identity() {
                return Order::Finite(m);
            }
            acc = self.compose(&acc).expect("same space");
        }
        Order::ExceedsBound
    }

    /// `f g f⁻¹ g⁻¹`.
    pub fn commutator(&self, g: &TableElement) -> Result<TableElement> {
        self.compose(g)?
            .compose(&self.invert())?
            .compose(&g.invert())
    }

    /// `h self h⁻¹`.
    pub fn conjugate_by(&self, h: &TableElement) -> Result<TableElement> {
        h.compose(self)?.compose(&h.invert())
    }

    pub fn max_dom_depth(&self) -> usize {
        self.table.max_dom_depth()
    }

    pub fn max_ran_depth(&self) -> usize {
        self.table.max_ran_depth()
    }
}

impl fmt::Display for TableElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_table(self))
    }
}

/// Convenience wrappers mirroring the operation names.
pub fn compose(f: &TableElement, g: &TableElement) -> Result<TableElement> {
    f.compose(g)
}

pub fn invert(g: &TableElement) -> TableElement {
    g.invert()
}

pub fn equals(f: &TableElement, g: &TableElement) -> Result<bool> {
    f.equals(g)
}

pub fn commutator(f: &TableElement, g: &TableElement) -> Result<TableElement> {
    f.commutator(g)
}

fn merge_pass(space: &SpaceSpec, dim: usize, cells: &mut Vec<(Brick, Brick)>) -> bool {
    let k = space.k(dim) as usize;
    let mut families: BTreeMap<(Brick, Brick), Vec<usize>> = BTreeMap::new();
    for (i, (d, r)) in cells.iter().enumerate() {
        let (Some(&a), Some(&b)) = (d.words[dim].last(), r.words[dim].last()) else {
            continue;
        };
        if a != b {
            continue;
        }
        let mut pd = d.clone();
        pd.words[dim].pop();
        let mut pr = r.clone();
        pr.words[dim].pop();
        families.entry((pd, pr)).or_default().push(i);
    }
    let mut drop = vec![false; cells.len()];
    let mut merged = Vec::new();
    for (parent, members) in families {
        if members.len() == k {
            for i in members {
                drop[i] = true;
            }
            merged.push(parent);
        }
    }
    if merged.is_empty() {
        return false;
    }
    let mut kept: Vec<(Brick, Brick)> = cells
        .drain(..)
        .zip(drop)
        .filter_map(|(c, d)| (!d).then_some(c))
        .collect();
    kept.extend(merged);
    kept.sort();
    *cells = kept;
    true
}

/// An order-3 element cycling `X_0 → X_1 → X_2 → X_0` and fixing the rest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multisection {
    pub element: TableElement,
    pub sets: [Clopen; 3],
}
