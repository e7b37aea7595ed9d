//! Compact open bisections of the groupoid: finite matchings of disjoint
//! domain bricks to disjoint range bricks. A cell `(D, R)` sends the point
//! `D·t` to `R·t`, transplanting the suffix dimension by dimension.

use crate::brick::Brick;
use crate::clopen::{pairwise_disjoint, Clopen};
use crate::error::{Error, Result};
use crate::point::RationalPoint;
use crate::space::SpaceSpec;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrefixBijection {
    space: SpaceSpec,
    cells: Vec<(Brick, Brick)>,
}

impl PrefixBijection {
    pub fn new(space: &SpaceSpec, cells: Vec<(Brick, Brick)>) -> Result<Self> {
        for (d, r) in &cells {
            d.validate(space)?;
            r.validate(space)?;
        }
        let doms: Vec<Brick> = cells.iter().map(|c| c.0.clone()).collect();
        let rans: Vec<Brick> = cells.iter().map(|c| c.1.clone()).collect();
        if !pairwise_disjoint(&doms) {
            return Err(Error::Overlap("domain bricks overlap".into()));
        }
        if !pairwise_disjoint(&rans) {
            return Err(Error::Overlap("range bricks overlap".into()));
        }
        Ok(Self::new_unchecked(space, cells))
    }

    pub(crate) fn new_unchecked(space: &SpaceSpec, mut cells: Vec<(Brick, Brick)>) -> Self {
        cells.sort();
        PrefixBijection {
            space: space.clone(),
            cells,
        }
    }

    pub fn empty(space: &SpaceSpec) -> Self {
        Self::new_unchecked(space, Vec::new())
    }

    /// The identity bisection on `x`.
    pub fn identity_on(x: &Clopen) -> Self {
        let cells = x.bricks().iter().map(|b| (b.clone(), b.clone())).collect();
        Self::new_unchecked(x.space(), cells)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn cells(&self) -> &[(Brick, Brick)] {
        &self.cells
    }

    pub fn source(&self) -> Clopen {
        Clopen::from_disjoint_unchecked(&self.space, self.cells.iter().map(|c| c.0.clone()).collect())
    }

    pub fn range(&self) -> Clopen {
        Clopen::from_disjoint_unchecked(&self.space, self.cells.iter().map(|c| c.1.clone()).collect())
    }

    pub fn inverse(&self) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|(d, r)| (r.clone(), d.clone()))
            .collect();
        Self::new_unchecked(&self.space, cells)
    }

    /// `self ∘ other` (apply `other` first), defined on
    /// `other⁻¹(s(self) ∩ r(other))`. Cells are intersected pairwise, which
    /// is the coarsest common refinement of `other`'s ranges and `self`'s
    /// domains.
    pub fn compose(&self, other: &PrefixBijection) -> Result<PrefixBijection> {
        self.space.ensure_same(&other.space)?;
        let mut cells = Vec::new();
        for (gd, gr) in &other.cells {
            for (fd, fr) in &self.cells {
                if let Some(i) = gr.intersect(fd) {
                    cells.push((i.transplant(gr, gd), i.transplant(fd, fr)));
                }
            }
        }
        Ok(Self::new_unchecked(&self.space, cells))
    }

    /// Disjoint union of bisections with disjoint sources and disjoint ranges.
    pub fn union(&self, other: &PrefixBijection) -> Result<PrefixBijection> {
        self.space.ensure_same(&other.space)?;
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Self::new(&self.space, cells)
    }

    /// Restriction to `s(self) ∩ x`.
    pub fn restrict(&self, x: &Clopen) -> Result<PrefixBijection> {
        self.compose(&PrefixBijection::identity_on(x))
    }

    /// Exact image of `x ∩ s(self)`.
    pub fn image(&self, x: &Clopen) -> Result<Clopen> {
        self.space.ensure_same(x.space())?;
        let mut out = Vec::new();
        for b in x.bricks() {
            for (d, r) in &self.cells {
                if let Some(i) = b.intersect(d) {
                    out.push(i.transplant(d, r));
                }
            }
        }
        Ok(Clopen::from_disjoint_unchecked(&self.space, out))
    }

    /// The cell containing `p`, if any.
    pub fn cell_of(&self, p: &RationalPoint) -> Option<&(Brick, Brick)> {
        self.cells.iter().find(|(d, _)| p.in_brick(d))
    }

    pub fn apply_point(&self, p: &RationalPoint) -> Option<RationalPoint> {
        self.cell_of(p).map(|(d, r)| p.transplant(d, r))
    }

    pub fn max_dom_depth(&self) -> usize {
        self.cells.iter().map(|c| c.0.max_depth()).max().unwrap_or(0)
    }

    pub fn max_ran_depth(&self) -> usize {
        self.cells.iter().map(|c| c.1.max_depth()).max().unwrap_or(0)
    }

    pub(crate) fn into_cells(self) -> Vec<(Brick, Brick)> {
        self.cells
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(w: &[u8]) -> Brick {
        Brick { root: 0, words: vec![w.to_vec()] }
    }

    #[test]
    fn composition_refines_ranges_against_domains() {
        let s = SpaceSpec::uniform(1, 2, 1).unwrap();
        // g: e -> 0 ; f: 00 -> 1, 01 -> 00
        let g = PrefixBijection::new(&s, vec![(br(&[]), br(&[0]))]).unwrap();
        let f = PrefixBijection::new(&s, vec![(br(&[0, 0]), br(&[1])), (br(&[0, 1]), br(&[0, 0]))])
            .unwrap();
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.cells(), &[(br(&[0]), br(&[1])), (br(&[1]), br(&[0, 0]))]);
        assert!(fg.source().is_full());
    }

    #[test]
    fn overlapping_cells_rejected() {
        let s = SpaceSpec::uniform(1, 2, 1).unwrap();
        assert!(PrefixBijection::new(&s, vec![(br(&[0]), br(&[0])), (br(&[0, 1]), br(&[1]))]).is_err());
        assert!(PrefixBijection::new(&s, vec![(br(&[0]), br(&[1])), (br(&[1]), br(&[1, 1]))]).is_err());
    }

    #[test]
    fn image_and_restriction() {
        let s = SpaceSpec::uniform(1, 2, 1).unwrap();
        let b = PrefixBijection::new(&s, vec![(br(&[0]), br(&[1, 1])), (br(&[1]), br(&[0]))]).unwrap();
        let x = Clopen::from_disjoint(&s, vec![br(&[0, 1])]).unwrap();
        assert_eq!(b.image(&x).unwrap(), Clopen::from_disjoint(&s, vec![br(&[1, 1, 1])]).unwrap());
        let r = b.restrict(&x).unwrap();
        assert_eq!(r.cells(), &[(br(&[0, 1]), br(&[1, 1, 1]))]);
    }
}
