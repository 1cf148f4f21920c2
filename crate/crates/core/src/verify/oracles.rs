use crate::diagram::{Partition, UnionFind};
use crate::error::{Error, Result};
use crate::rep::{image, is_block_union, preimage, subset_string};

/// Largest middle row scanned by [`intertwining_sets`].
pub const MAX_MIDDLE_ROW: usize = 24;

/// A composable pair `a ∈ P_{m,n}`, `b ∈ P_{n,t}` with `X ⊆ [m]`, `Y ⊆ [t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwineQuery {
    pub a: Partition,
    pub b: Partition,
    pub x: u32,
    pub y: u32,
}

impl IntertwineQuery {
    pub fn new(a: Partition, b: Partition, x: u32, y: u32) -> Result<Self> {
        if a.n() != b.m() {
            return Err(Error::CompositionShape {
                m1: a.m(),
                n1: a.n(),
                m2: b.m(),
                n2: b.n(),
            });
        }
        let fits = |s: u32, k: usize| k >= 32 || u64::from(s) < 1u64 << k;
        if !fits(x, a.m()) || !fits(y, b.n()) {
            return Err(Error::IndexOutOfRange(format!(
                "X = {} or Y = {} outside [{}], [{}]",
                subset_string(x),
                subset_string(y),
                a.m(),
                b.n()
            )));
        }
        Ok(IntertwineQuery { a, b, x, y })
    }

    pub fn describe(&self) -> String {
        format!(
            "a = {}, b = {}, X = {}, Y = {}",
            self.a,
            self.b,
            subset_string(self.x),
            subset_string(self.y)
        )
    }
}

/// Every `Z ⊆ [n]` with `φ(a)_{X,Z} = 1 = φ(b)_{Z,Y}`, by exhaustive scan
/// in ascending bitmask order.
pub fn intertwining_sets(q: &IntertwineQuery) -> Result<Vec<u32>> {
    let n = q.a.n();
    if n > MAX_MIDDLE_ROW {
        return Err(Error::GuardExceeded {
            size: n,
            limit: MAX_MIDDLE_ROW,
        });
    }
    let (ba, bb) = (q.a.block_masks(), q.b.block_masks());
    Ok((0..1u32 << n)
        .filter(|&z| is_block_union(&ba, q.x, z) && is_block_union(&bb, z, q.y))
        .collect())
}

/// Classes of the join of `coker(a)` and `ker(b)` on the middle row `[n]`,
/// as bitmasks.
pub fn middle_classes(a: &Partition, b: &Partition) -> Vec<u32> {
    let n = a.n();
    let mut uf = UnionFind::new(n);
    for (_, l) in a.block_masks() {
        join_mask(&mut uf, l);
    }
    for (u, _) in b.block_masks() {
        join_mask(&mut uf, u);
    }
    let mut classes = vec![0u32; n];
    for j in 0..n {
        classes[uf.find(j)] |= 1 << j;
    }
    classes.retain(|&c| c != 0);
    classes.sort_unstable();
    classes
}

fn join_mask(uf: &mut UnionFind, mask: u64) {
    let bits: Vec<usize> = (0..64).filter(|j| mask >> j & 1 == 1).collect();
    for w in bits.windows(2) {
        uf.union(w[0], w[1]);
    }
}

/// `Z₀`: the union of the middle classes meeting `Xa ∪ bY`.
pub fn z_zero(q: &IntertwineQuery) -> u32 {
    let touched = image(&q.a, q.x) | preimage(&q.b, q.y);
    middle_classes(&q.a, &q.b)
        .into_iter()
        .filter(|c| c & touched != 0)
        .fold(0, |acc, c| acc | c)
}

/// Middle-row classes touching neither the upper row of `a` nor the lower
/// row of `b`: the floating components of the product graph.
pub fn floating_components(a: &Partition, b: &Partition) -> Vec<u32> {
    let mut reach = 0u64;
    for (u, l) in a.block_masks() {
        if u != 0 {
            reach |= l;
        }
    }
    for (u, l) in b.block_masks() {
        if l != 0 {
            reach |= u;
        }
    }
    middle_classes(a, b)
        .into_iter()
        .filter(|&c| u64::from(c) & reach == 0)
        .collect()
}

/// The three equivalent descriptions of `φ(a)_{X,Y} = 1`.
pub fn ones_conditions(a: &Partition, x: u32, y: u32) -> [bool; 3] {
    let blocks = a.block_masks();
    let union_of = |s: u64, parts: &[u64]| parts.iter().all(|&p| s & p == p || s & p == 0);
    let (x64, y64) = (u64::from(x), u64::from(y));
    let direct = is_block_union(&blocks, x, y);

    // X a union of ker-classes, Y = Xa ∪ P with P' a union of lower blocks.
    let xa = u64::from(image(a, x));
    let lower_only: Vec<u64> = blocks
        .iter()
        .filter(|(u, _)| *u == 0)
        .map(|(_, l)| *l)
        .collect();
    let rest = y64 & !xa;
    let uppers: Vec<u64> = blocks.iter().map(|(u, _)| *u).collect();
    let second = union_of(x64, &uppers)
        && y64 & xa == xa
        && union_of(rest, &lower_only)
        && rest & !lower_only.iter().fold(0, |acc, l| acc | l) == 0;

    // Y a union of coker-classes, X = aY ∪ Q with Q a union of upper blocks.
    let ay = u64::from(preimage(a, y));
    let upper_only: Vec<u64> = blocks
        .iter()
        .filter(|(_, l)| *l == 0)
        .map(|(u, _)| *u)
        .collect();
    let rest = x64 & !ay;
    let lowers: Vec<u64> = blocks.iter().map(|(_, l)| *l).collect();
    let third = union_of(y64, &lowers)
        && x64 & ay == ay
        && union_of(rest, &upper_only)
        && rest & !upper_only.iter().fold(0, |acc, u| acc | u) == 0;

    [direct, second, third]
}
