//! Seeded random generators for clopens, points and group elements, used by
//! the property suites and by the randomized CLI commands.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::brick::{Brick, Word};
use crate::clopen::Clopen;
use crate::element::{Multisection, TableElement};
use crate::embedding::VElement;
use crate::point::{Periodic, RationalPoint};
use crate::space::SpaceSpec;
use crate::witness::multisection;

pub type Rng64 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A partition of the unit space: start from the root cylinders and split a
/// random brick along a random dimension `splits` times. Bricks deeper than
/// `max_depth` in the chosen dimension are not split further.
pub fn random_partition<R: Rng>(space: &SpaceSpec, rng: &mut R, splits: usize, max_depth: usize) -> Vec<Brick> {
    let dims: Vec<usize> = (0..splits).map(|_| rng.gen_range(0..space.n())).collect();
    partition_with_dims(space, rng, &dims, max_depth)
}

/// Splits along the prescribed dimensions in order, so two calls with the
/// same `dims` give partitions with the same number of bricks.
fn partition_with_dims<R: Rng>(space: &SpaceSpec, rng: &mut R, dims: &[usize], max_depth: usize) -> Vec<Brick> {
    let mut bricks: Vec<Brick> = (0..space.r()).map(|i| Brick::root_cylinder(space, i)).collect();
    for &dim in dims {
        let open: Vec<usize> = (0..bricks.len()).filter(|&i| bricks[i].depth(dim) < max_depth).collect();
        // With nothing splittable the shallowest brick is split anyway, to
        // keep counts in step.
        let i = match open.choose(rng) {
            Some(&i) => i,
            None => (0..bricks.len()).min_by_key(|&i| bricks[i].depth(dim)).expect("nonempty"),
        };
        let b = bricks.swap_remove(i);
        bricks.extend(b.subdivide(space, dim).expect("valid dimension"));
    }
    bricks.sort();
    bricks
}

/// An element matching two random partitions with equal brick counts by a
/// random bijection.
pub fn random_table<R: Rng>(space: &SpaceSpec, rng: &mut R, splits: usize, max_depth: usize) -> TableElement {
    let dims: Vec<usize> = (0..splits).map(|_| rng.gen_range(0..space.n())).collect();
    let dom = partition_with_dims(space, rng, &dims, max_depth);
    let mut ran = partition_with_dims(space, rng, &dims, max_depth);
    ran.shuffle(rng);
    TableElement::new(space, dom.into_iter().zip(ran).collect())
        .expect("two partitions")
        .canonicalize()
}

/// A permutation of the bricks of one random partition.
pub fn random_brick_permutation<R: Rng>(space: &SpaceSpec, rng: &mut R, splits: usize, max_depth: usize) -> TableElement {
    let dom = random_partition(space, rng, splits, max_depth);
    let mut ran = dom.clone();
    ran.shuffle(rng);
    TableElement::new(space, dom.into_iter().zip(ran).collect())
        .expect("a partition")
        .canonicalize()
}

/// A nonempty clopen: a random nonempty subset of a random partition.
pub fn random_clopen<R: Rng>(space: &SpaceSpec, rng: &mut R, splits: usize, max_depth: usize) -> Clopen {
    let mut parts = random_partition(space, rng, splits, max_depth);
    parts.shuffle(rng);
    let take = rng.gen_range(1..=parts.len());
    parts.truncate(take);
    Clopen::from_disjoint(space, parts).expect("disjoint bricks")
}

/// A proper nonempty clopen.
pub fn random_proper_clopen<R: Rng>(space: &SpaceSpec, rng: &mut R, splits: usize, max_depth: usize) -> Clopen {
    let mut parts = random_partition(space, rng, splits.max(1), max_depth.max(1));
    parts.shuffle(rng);
    let take = rng.gen_range(1..parts.len());
    parts.truncate(take);
    Clopen::from_disjoint(space, parts).expect("disjoint bricks")
}

/// Three pairwise disjoint clopens with the same brick count, so the same
/// `H_0` class, and the multisection cycling them.
pub fn random_multisection<R: Rng>(space: &SpaceSpec, rng: &mut R, splits: usize, max_depth: usize) -> Multisection {
    let mut parts = random_partition(space, rng, splits, max_depth);
    while parts.len() < 3 {
        let b = parts.remove(0);
        parts.extend(b.subdivide(space, 0).expect("dimension 0"));
    }
    parts.shuffle(rng);
    let size = rng.gen_range(1..=parts.len() / 3);
    let set = |i: usize| Clopen::from_disjoint(space, parts[i * size..(i + 1) * size].to_vec()).expect("disjoint");
    multisection(&set(0), &set(1), &set(2)).expect("equal classes and disjoint sets")
}

/// A product of `factors` random brick permutations, multisections and
/// partition matchings.
pub fn random_element<R: Rng>(space: &SpaceSpec, rng: &mut R, factors: usize) -> TableElement {
    let mut acc = TableElement::identity(space);
    for _ in 0..factors {
        let splits = rng.gen_range(1..=4);
        let f = match rng.gen_range(0..3) {
            0 => random_brick_permutation(space, rng, splits, 3),
            1 => random_multisection(space, rng, splits, 3).element,
            _ => random_table(space, rng, splits, 3),
        };
        acc = acc.compose(&f).expect("same space");
    }
    acc
}

fn random_word<R: Rng>(rng: &mut R, k: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..k) as u8).collect()
}

/// A random ultimately periodic point with preperiods of length at most
/// `max_pre` and periods of length `1..=max_period`.
pub fn random_point<R: Rng>(space: &SpaceSpec, rng: &mut R, max_pre: usize, max_period: usize) -> RationalPoint {
    let root = rng.gen_range(0..space.r());
    let coords = (0..space.n())
        .map(|j| {
            let k = space.k(j);
            let pre = random_word(rng, k, max_pre);
            let mut period = random_word(rng, k, max_period.max(1) - 1);
            period.push(rng.gen_range(0..k) as u8);
            Periodic::new(pre, period).expect("nonempty period")
        })
        .collect();
    RationalPoint::new(space, root, coords).expect("letters in range")
}

/// A random point inside the brick `b`.
pub fn random_point_in<R: Rng>(space: &SpaceSpec, rng: &mut R, b: &Brick) -> RationalPoint {
    let p = random_point(space, rng, 3, 3);
    let from = Brick::root_cylinder(space, p.root);
    p.transplant(&from, b)
}

/// A complete binary prefix code with `leaves` words of length at most
/// `max_depth` (`leaves ≤ 2^max_depth`).
fn random_antichain<R: Rng>(rng: &mut R, leaves: usize, max_depth: usize) -> Vec<Word> {
    let mut code: Vec<Word> = vec![Vec::new()];
    while code.len() < leaves {
        let open: Vec<usize> = (0..code.len()).filter(|&i| code[i].len() < max_depth).collect();
        let i = *open.choose(rng).expect("room below max_depth");
        let w = code.swap_remove(i);
        for a in 0..2 {
            let mut c = w.clone();
            c.push(a);
            code.push(c);
        }
    }
    code
}

/// A random element of `V` whose tree pair has leaves of depth at most
/// `max_depth`.
pub fn random_velement<R: Rng>(rng: &mut R, max_depth: usize) -> VElement {
    let leaves = rng.gen_range(1..=(1usize << max_depth).min(12));
    let dom = random_antichain(rng, leaves, max_depth);
    let mut ran = random_antichain(rng, leaves, max_depth);
    ran.shuffle(rng);
    VElement::from_pairs(dom.into_iter().zip(ran).collect()).expect("complete prefix codes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_cover_the_space() {
        let mut rng = seeded(7);
        for space in [SpaceSpec::uniform(1, 3, 2).unwrap(), SpaceSpec::new(vec![2, 3], 1).unwrap()] {
            for _ in 0..20 {
                let p = random_partition(&space, &mut rng, 6, 4);
                assert!(Clopen::from_disjoint(&space, p).unwrap().is_full());
            }
        }
    }

    #[test]
    fn same_seed_same_output() {
        let s = SpaceSpec::uniform(2, 2, 1).unwrap();
        let a = random_element(&s, &mut seeded(3), 4);
        let b = random_element(&s, &mut seeded(3), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn points_land_in_their_brick() {
        let s = SpaceSpec::new(vec![2, 3], 2).unwrap();
        let mut rng = seeded(11);
        let b = Brick { root: 1, words: vec![vec![1, 0], vec![2]] };
        for _ in 0..20 {
            assert!(random_point_in(&s, &mut rng, &b).in_brick(&b));
        }
    }
}
