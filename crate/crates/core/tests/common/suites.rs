//! Random instances for the witness constructors, each checked against the
//! brick-level oracles. A check returns `Err` with a description on failure.

use bht_core::random::{random_element, random_multisection, random_partition, random_point_in, Rng64};
use bht_core::{
    bisection_between, compress, compressibility_witness, distinct_conjugates, doubling_witness,
    vigor_witness, Brick, Clopen, CompressibilityArgs, CompressibilityWitness, Order,
    RationalPoint, SpaceSpec, TableElement, VigorCase,
};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{brick_subset, fixes_outside, maps_into, oracle_equal, oracle_image, oracle_product, pieces_fixed};

pub type Check = std::result::Result<(), String>;

fn ensure(cond: bool, what: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Bricks of a random partition, refined so that there are at least `min`.
fn pieces(space: &SpaceSpec, rng: &mut Rng64, min: usize) -> Vec<Brick> {
    let splits = rng.gen_range(1..=5);
    let mut p = random_partition(space, rng, splits, 4);
    while p.len() < min {
        let b = p.remove(0);
        p.extend(b.subdivide(space, 0).unwrap());
    }
    p.shuffle(rng);
    p
}

fn clopen(space: &SpaceSpec, bricks: &[Brick]) -> Clopen {
    Clopen::from_disjoint(space, bricks.to_vec()).unwrap()
}

fn nonempty_subset(space: &SpaceSpec, rng: &mut Rng64) -> Clopen {
    let p = pieces(space, rng, 1);
    let take = rng.gen_range(1..=p.len());
    clopen(space, &p[..take])
}

pub fn compress_instance(space: &SpaceSpec, rng: &mut Rng64) -> Check {
    let a = nonempty_subset(space, rng);
    let b = nonempty_subset(space, rng);
    let c = compress(&a, &b).map_err(err)?;
    ensure(c.source() == a, "source differs from A")?;
    ensure(brick_subset(&c.range(), &b), "range not inside B")?;
    ensure(!b.difference(&c.range()).unwrap().is_empty(), "range not a proper subset of B")?;
    ensure(c.cells().iter().all(|(d, r)| d.validate(space).is_ok() && r.validate(space).is_ok()), "invalid brick")
}

pub fn doubling_instance(space: &SpaceSpec, rng: &mut Rng64) -> Check {
    let x = nonempty_subset(space, rng);
    let (b, c) = doubling_witness(&x).map_err(err)?;
    ensure(b.source() == x && c.source() == x, "sources differ from X")?;
    ensure(b.range().is_disjoint(&c.range()).unwrap(), "ranges overlap")?;
    let both = b.range().union(&c.range()).unwrap();
    ensure(brick_subset(&both, &x), "ranges leave X")?;
    ensure(both != x, "ranges fill X")
}

pub fn between_instance(space: &SpaceSpec, rng: &mut Rng64) -> Check {
    let a = nonempty_subset(space, rng);
    let b = nonempty_subset(space, rng);
    match bisection_between(&a, &b) {
        Ok(c) => {
            ensure(a.h0_class() == b.h0_class(), "classes differ but a bisection was returned")?;
            ensure(c.source() == a && c.range() == b, "source or range not exact")
        }
        Err(_) => ensure(a.h0_class() != b.h0_class(), "classes agree but no bisection was found"),
    }
}

pub fn multisection_instance(space: &SpaceSpec, rng: &mut Rng64) -> Check {
    let splits = rng.gen_range(2..=5);
    let m = random_multisection(space, rng, splits, 4);
    let id = TableElement::identity(space);
    ensure(m.element.order(10) == Order::Finite(3), "order is not 3")?;
    let cube = oracle_product(&oracle_product(&m.element, &m.element), &m.element);
    ensure(oracle_equal(&cube, &id), "cube is not the identity by the oracle")?;
    let union = m.sets[0].union(&m.sets[1]).unwrap().union(&m.sets[2]).unwrap();
    ensure(m.element.closed_support() == union, "support is not X0 ∪ X1 ∪ X2")?;
    ensure(fixes_outside(&m.element, &union), "moves points outside the cycle sets")?;
    for j in 0..3 {
        ensure(maps_into(&m.element, &m.sets[j], &m.sets[(j + 1) % 3]), "X_j not mapped into X_{j+1}")?;
    }
    for _ in 0..10 {
        let b = m.sets[0].bricks().choose(rng).unwrap().clone();
        let p = random_point_in(space, rng, &b);
        let q = (0..3).fold(p.clone(), |q, _| m.element.apply(&q).unwrap());
        ensure(p == q, "three applications do not return a point")?;
    }
    Ok(())
}

/// A vigor problem `(X, Y1, Y2)` with `X` proper, `Y1, Y2 ⊆ X`, `Y2 ≠ ∅`
/// and never the unsatisfiable `Y1 = X ⊄ Y2`. The three shapes cover the
/// three cases of the construction.
pub fn vigor_problem(space: &SpaceSpec, rng: &mut Rng64) -> (Clopen, Clopen, Clopen) {
    let all = pieces(space, rng, 3);
    let xn = rng.gen_range(2..all.len());
    let mut inside = all[..xn].to_vec();
    // Refine some bricks of X so Y1 and Y2 can cut across them.
    for _ in 0..rng.gen_range(0..3) {
        let i = rng.gen_range(0..inside.len());
        let b = inside.swap_remove(i);
        inside.extend(b.subdivide(space, rng.gen_range(0..space.n())).unwrap());
    }
    inside.shuffle(rng);
    let x = clopen(space, &inside);
    let y1n = rng.gen_range(0..inside.len());
    let y1 = clopen(space, &inside[..y1n]);
    let y2 = match rng.gen_range(0..3) {
        // Something outside Y1: the cycle case.
        0 => {
            let lo = y1n;
            let hi = rng.gen_range(lo + 1..=inside.len());
            let start = rng.gen_range(0..=lo);
            clopen(space, &inside[start..hi])
        }
        // A proper part of Y1: the two-step case.
        1 if y1n >= 1 => {
            let b = inside[rng.gen_range(0..y1n)].clone();
            let sub = b.subdivide(space, 0).unwrap();
            clopen(space, &sub[..1])
        }
        // Containing Y1.
        _ => clopen(space, &inside[..(y1n + 1).min(inside.len())]),
    };
    (x, y1, y2)
}

pub fn vigor_instance(space: &SpaceSpec, rng: &mut Rng64) -> Check {
    let (x, y1, y2) = vigor_problem(space, rng);
    let w = vigor_witness(&x, &y1, &y2).map_err(err)?;
    ensure(fixes_outside(&w.gamma, &x), "support not inside X")?;
    ensure(w.gamma.closed_support().is_subset(&x).unwrap(), "closed support not inside X")?;
    ensure(maps_into(&w.gamma, &y1, &y2), "gamma(Y1) not inside Y2")?;
    match w.case {
        VigorCase::Contained => ensure(w.gamma.is_identity(), "contained case is not the identity"),
        VigorCase::Cycle => ensure(w.gamma.order(10) == Order::Finite(3), "cycle case is not of order 3"),
        VigorCase::TwoStep => {
            ensure(w.factors.len() == 2, "two-step case needs two factors")?;
            ensure(w.factors.iter().all(|m| m.element.order(10) == Order::Finite(3)), "factor not of order 3")?;
            let prod = oracle_product(&w.factors[1].element, &w.factors[0].element);
            ensure(oracle_equal(&prod, &w.gamma), "factors do not multiply to gamma")
        }
    }
}

pub fn conjugates_instance(space: &SpaceSpec, rng: &mut Rng64, count: usize) -> Check {
    let g = loop {
        let g = random_element(space, rng, 2);
        if !g.is_identity() {
            break g;
        }
    };
    let fam = distinct_conjugates(&g, count).map_err(err)?;
    ensure(fam.members.len() == count, "wrong number of conjugates")?;
    for (i, a) in fam.members.iter().enumerate() {
        let h = &a.h.gamma;
        let expected = oracle_product(&oracle_product(h, &g), &h.invert());
        ensure(oracle_equal(&a.conjugate, &expected), "member is not h g h^-1")?;
        ensure(a.h.factors.iter().all(|m| m.element.order(10) == Order::Finite(3)), "h has a factor not of order 3")?;
        let img = Clopen::from_bricks(space, oracle_image(&a.conjugate, &fam.y1)).unwrap();
        ensure(brick_subset(&img, &a.target), "conjugate does not move Y1 into its target")?;
        for b in &fam.members[i + 1..] {
            ensure(a.target.is_disjoint(&b.target).unwrap(), "targets overlap")?;
            ensure(!a.conjugate.equals(&b.conjugate).unwrap(), "two conjugates coincide")?;
        }
    }
    Ok(())
}

pub fn zero_point(space: &SpaceSpec) -> RationalPoint {
    RationalPoint::constant(space, 0, 0).unwrap()
}

/// A nonempty clopen missing `x0`.
fn avoiding(space: &SpaceSpec, rng: &mut Rng64, x0: &RationalPoint) -> Clopen {
    loop {
        let c = nonempty_subset(space, rng);
        let depth = rng.gen_range(1..=3);
        let nb = Clopen::from_brick(space, x0.neighborhood(depth)).unwrap();
        let c = c.difference(&nb).unwrap();
        if !c.is_empty() {
            return c;
        }
    }
}

fn check_neighborhood(gamma: &TableElement, nb: &Clopen, x0: &RationalPoint) -> Check {
    ensure(x0.in_clopen(nb).unwrap(), "neighbourhood misses x0")?;
    ensure(pieces_fixed(gamma, nb), "neighbourhood of x0 not fixed")
}

pub fn compressibility_instance(space: &SpaceSpec, rng: &mut Rng64, condition: u8) -> Check {
    let x0 = zero_point(space);
    match condition {
        1 => {
            let region = avoiding(space, rng, &x0);
            let mut bricks: Vec<Brick> = region.bricks().to_vec();
            while bricks.len() < 3 {
                let b = bricks.remove(0);
                bricks.extend(b.subdivide(space, 0).unwrap());
            }
            bricks.shuffle(rng);
            let m = bht_core::multisection(
                &clopen(space, &bricks[..1]),
                &clopen(space, &bricks[1..2]),
                &clopen(space, &bricks[2..3]),
            )
            .map_err(err)?;
            let w = compressibility_witness(&x0, &CompressibilityArgs::Support(m.element.clone())).map_err(err)?;
            let CompressibilityWitness::Support { u, neighborhood } = w else {
                return Err("wrong witness kind".into());
            };
            ensure(!x0.in_clopen(&u).unwrap(), "U contains x0")?;
            ensure(brick_subset(&m.element.closed_support(), &u), "support not inside U")?;
            check_neighborhood(&m.element, &neighborhood, &x0)
        }
        2 => {
            let u1 = avoiding(space, rng, &x0);
            let u2 = avoiding(space, rng, &x0);
            let w = compressibility_witness(&x0, &CompressibilityArgs::Compress(u1.clone(), u2.clone())).map_err(err)?;
            let CompressibilityWitness::Compress { gamma, neighborhood } = w else {
                return Err("wrong witness kind".into());
            };
            ensure(maps_into(&gamma.gamma, &u1, &u2), "gamma(U1) not inside U2")?;
            check_neighborhood(&gamma.gamma, &neighborhood, &x0)
        }
        _ => {
            let u1 = avoiding(space, rng, &x0);
            // Rejection sampling, falling back to a ring around x0 outside U1
            // when U1 already fills the complement of a small neighbourhood.
            let u2 = (0..20)
                .map(|_| avoiding(space, rng, &x0).difference(&u1).unwrap())
                .find(|u| !u.is_empty())
                .unwrap_or_else(|| {
                    let d = u1.max_depth() + 1;
                    let outer = Clopen::from_brick(space, x0.neighborhood(d)).unwrap();
                    let inner = Clopen::from_brick(space, x0.neighborhood(d + 1)).unwrap();
                    outer.difference(&inner).unwrap()
                });
            let u3 = avoiding(space, rng, &x0);
            let args = CompressibilityArgs::Separate(u1.clone(), u2.clone(), u3.clone());
            let w = compressibility_witness(&x0, &args).map_err(err)?;
            let CompressibilityWitness::Separate { gamma, neighborhood } = w else {
                return Err("wrong witness kind".into());
            };
            let img = Clopen::from_bricks(space, oracle_image(&gamma.gamma, &u1)).unwrap();
            ensure(img.is_disjoint(&u3).unwrap(), "gamma(U1) meets U3")?;
            ensure(pieces_fixed(&gamma.gamma, &u2), "support meets U2")?;
            check_neighborhood(&gamma.gamma, &neighborhood, &x0)
        }
    }
}
