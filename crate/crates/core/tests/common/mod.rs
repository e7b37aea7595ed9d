//! Oracles that work directly on letters and bricks, sharing no code paths
//! with composition, canonical forms or the clopen algebra.
#![allow(dead_code)]

pub mod suites;

use bht_core::{Brick, Clopen, RationalPoint, SpaceSpec, TableElement};

pub fn v(n: usize, k: u32, r: u32) -> SpaceSpec {
    SpaceSpec::uniform(n, k, r).unwrap()
}

pub fn mixed(kbar: &[u32], r: u32) -> SpaceSpec {
    SpaceSpec::new(kbar.to_vec(), r).unwrap()
}

/// The four spaces of the group-law suite: `V_2`, `V_3`, `2V_2`, `V_{(2,3),1}`.
pub fn suite_spaces() -> Vec<(&'static str, SpaceSpec)> {
    vec![
        ("V_2", v(1, 2, 1)),
        ("V_3", v(1, 3, 1)),
        ("2V_2", v(2, 2, 1)),
        ("V_(2,3)", mixed(&[2, 3], 1)),
    ]
}

pub fn expand(p: &RationalPoint, len: usize) -> Vec<Vec<u8>> {
    p.coords
        .iter()
        .map(|c| {
            let (pre, per) = (c.pre(), c.period());
            (0..len)
                .map(|i| if i < pre.len() { pre[i] } else { per[(i - pre.len()) % per.len()] })
                .collect()
        })
        .collect()
}

fn starts(word: &[u8], prefix: &[u8]) -> bool {
    word.len() >= prefix.len() && &word[..prefix.len()] == prefix
}

/// Point membership by expanding the point letter by letter.
pub fn member(p: &RationalPoint, bricks: &[Brick]) -> bool {
    let len = bricks.iter().flat_map(|b| b.words.iter().map(Vec::len)).max().unwrap_or(0);
    let e = expand(p, len);
    bricks
        .iter()
        .any(|b| b.root == p.root && b.words.iter().zip(&e).all(|(w, x)| starts(x, w)))
}

/// The first letters of `t(p)` obtained by matching a `len`-letter expansion
/// against the domain words: `(root, per-dimension prefix)`.
pub fn image_prefix(t: &TableElement, p: &RationalPoint, len: usize) -> (u32, Vec<Vec<u8>>) {
    let e = expand(p, len);
    let (d, r) = t
        .cells()
        .iter()
        .find(|(d, _)| d.root == p.root && d.words.iter().zip(&e).all(|(w, x)| starts(x, w)))
        .expect("a full table covers every point");
    let words = r
        .words
        .iter()
        .zip(&d.words)
        .zip(&e)
        .map(|((rw, dw), x)| {
            let mut out = rw.clone();
            out.extend_from_slice(&x[dw.len()..]);
            out
        })
        .collect();
    (r.root, words)
}

/// `t.apply(p)` agrees with the letter-level image on its known prefix.
pub fn apply_matches_oracle(t: &TableElement, p: &RationalPoint, len: usize) -> bool {
    let (root, prefix) = image_prefix(t, p, len);
    let q = t.apply(p).unwrap();
    if q.root != root {
        return false;
    }
    let longest = prefix.iter().map(Vec::len).max().unwrap_or(0);
    let got = expand(&q, longest);
    prefix.iter().zip(&got).all(|(want, have)| starts(have, want))
}

fn comparable(a: &[u8], b: &[u8]) -> bool {
    starts(a, b) || starts(b, a)
}

fn meets(d: &Brick, b: &Brick) -> bool {
    d.root == b.root && d.words.iter().zip(&b.words).all(|(x, y)| comparable(x, y))
}

fn covers(d: &Brick, b: &Brick) -> bool {
    d.root == b.root && d.words.iter().zip(&b.words).all(|(x, y)| starts(y, x))
}

/// Image of `b` when a single cell's domain contains it.
pub fn brick_image(t: &TableElement, b: &Brick) -> Option<Brick> {
    let (d, r) = t.cells().iter().find(|(d, _)| covers(d, b))?;
    Some(Brick {
        root: r.root,
        words: r
            .words
            .iter()
            .zip(&d.words)
            .zip(&b.words)
            .map(|((rw, dw), bw)| {
                let mut out = rw.clone();
                out.extend_from_slice(&bw[dw.len()..]);
                out
            })
            .collect(),
    })
}

/// Decides `f = g` by refining the root cylinders until each piece sits
/// inside one domain cell of both tables, then comparing brick images.
pub fn oracle_equal(f: &TableElement, g: &TableElement) -> bool {
    let space = f.space();
    let mut stack: Vec<Brick> = (0..space.r()).map(|i| Brick::root_cylinder(space, i)).collect();
    while let Some(b) = stack.pop() {
        if let (Some(x), Some(y)) = (brick_image(f, &b), brick_image(g, &b)) {
            if x != y {
                return false;
            }
            continue;
        }
        let deeper = f
            .cells()
            .iter()
            .chain(g.cells())
            .filter(|(d, _)| meets(d, &b) && !covers(d, &b))
            .find_map(|(d, _)| (0..space.n()).find(|&j| d.words[j].len() > b.words[j].len()))
            .expect("some overlapping domain is finer");
        for a in 0..space.k(deeper) as u8 {
            let mut c = b.clone();
            c.words[deeper].push(a);
            stack.push(c);
        }
    }
    true
}

/// Cells of `f ∘ g` found by refining root cylinders until each piece is
/// carried by one cell of `g` and then one cell of `f`.
pub fn oracle_compose(f: &TableElement, g: &TableElement) -> Vec<(Brick, Brick)> {
    let space = f.space();
    let mut out = Vec::new();
    let mut stack: Vec<Brick> = (0..space.r()).map(|i| Brick::root_cylinder(space, i)).collect();
    while let Some(b) = stack.pop() {
        if let Some(gb) = brick_image(g, &b) {
            if let Some(fgb) = brick_image(f, &gb) {
                out.push((b, fgb));
                continue;
            }
        }
        // Split along a dimension that separates b under g or g(b) under f.
        let j = match brick_image(g, &b) {
            None => g
                .cells()
                .iter()
                .filter(|(d, _)| meets(d, &b) && !covers(d, &b))
                .find_map(|(d, _)| (0..space.n()).find(|&j| d.words[j].len() > b.words[j].len()))
                .unwrap(),
            Some(gb) => f
                .cells()
                .iter()
                .filter(|(d, _)| meets(d, &gb) && !covers(d, &gb))
                .find_map(|(d, _)| (0..space.n()).find(|&j| d.words[j].len() > gb.words[j].len()))
                .unwrap(),
        };
        for a in 0..space.k(j) as u8 {
            let mut c = b.clone();
            c.words[j].push(a);
            stack.push(c);
        }
    }
    out
}

/// `f ∘ g` as a table built by the oracle.
pub fn oracle_product(f: &TableElement, g: &TableElement) -> TableElement {
    TableElement::new(f.space(), oracle_compose(f, g)).unwrap()
}

/// `a ⊆ b`, decided by refining the bricks of `a` against those of `b`.
pub fn brick_subset(a: &Clopen, b: &Clopen) -> bool {
    a.bricks().iter().all(|x| {
        // x ⊆ b iff every refinement piece of x lies under some brick of b.
        let space = a.space();
        let mut stack = vec![x.clone()];
        while let Some(p) = stack.pop() {
            if b.bricks().iter().any(|y| covers(y, &p)) {
                continue;
            }
            let Some(j) = b
                .bricks()
                .iter()
                .filter(|y| meets(y, &p))
                .find_map(|y| (0..space.n()).find(|&j| y.words[j].len() > p.words[j].len()))
            else {
                return false;
            };
            for letter in 0..space.k(j) as u8 {
                let mut c = p.clone();
                c.words[j].push(letter);
                stack.push(c);
            }
        }
        true
    })
}

/// Bricks making up `t(x)`, computed piece by piece.
pub fn oracle_image(t: &TableElement, x: &Clopen) -> Vec<Brick> {
    let space = x.space();
    let mut out = Vec::new();
    let mut stack: Vec<Brick> = x.bricks().to_vec();
    while let Some(b) = stack.pop() {
        if let Some(i) = brick_image(t, &b) {
            out.push(i);
            continue;
        }
        let j = t
            .cells()
            .iter()
            .filter(|(d, _)| meets(d, &b) && !covers(d, &b))
            .find_map(|(d, _)| (0..space.n()).find(|&j| d.words[j].len() > b.words[j].len()))
            .unwrap();
        for a in 0..space.k(j) as u8 {
            let mut c = b.clone();
            c.words[j].push(a);
            stack.push(c);
        }
    }
    out
}

/// `t` is the identity on the complement of `x`, i.e. its closed support
/// lies in `x`.
pub fn fixes_outside(t: &TableElement, x: &Clopen) -> bool {
    pieces_fixed(t, &x.complement())
}

pub fn pieces_fixed(t: &TableElement, x: &Clopen) -> bool {
    let space = x.space();
    let mut stack: Vec<Brick> = x.bricks().to_vec();
    while let Some(b) = stack.pop() {
        if let Some(i) = brick_image(t, &b) {
            if i != b {
                return false;
            }
            continue;
        }
        let j = t
            .cells()
            .iter()
            .filter(|(d, _)| meets(d, &b) && !covers(d, &b))
            .find_map(|(d, _)| (0..space.n()).find(|&j| d.words[j].len() > b.words[j].len()))
            .unwrap();
        for a in 0..space.k(j) as u8 {
            let mut c = b.clone();
            c.words[j].push(a);
            stack.push(c);
        }
    }
    true
}

/// Image of `x` lands inside `y`, brick by brick.
pub fn maps_into(t: &TableElement, x: &Clopen, y: &Clopen) -> bool {
    let img = Clopen::from_bricks(x.space(), oracle_image(t, x)).unwrap();
    brick_subset(&img, y)
}
