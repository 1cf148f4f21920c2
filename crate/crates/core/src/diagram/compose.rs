use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// The product `ab` together with the number of floating components `Φ(a,b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompositionOutcome {
    pub product: Partition,
    pub floats: usize,
}

/// Joins every vertex of a block to the first vertex of that block.
fn join_blocks(uf: &mut UnionFind, labels: &[u16], node: impl Fn(usize) -> usize) {
    let mut first: Vec<usize> = Vec::with_capacity(labels.len());
    for (i, &l) in labels.iter().enumerate() {
        let l = l as usize;
        if l == first.len() {
            first.push(node(i));
        } else {
            uf.union(first[l], node(i));
        }
    }
}

/// Composes `a ∈ P_{m,n}` with `b ∈ P_{n,t}` through the product graph.
///
/// Nodes `0..m` are the upper row of `a`, `m..m+n` the shared middle row and
/// `m+n..m+n+t` the lower row of `b`. Components without an outer vertex are
/// the floating components.
pub fn compose(a: &Partition, b: &Partition) -> Result<CompositionOutcome> {
    let (m, n) = a.shape();
    let (n2, t) = b.shape();
    if n != n2 {
        return Err(Error::CompositionShape {
            m1: m,
            n1: n,
            m2: n2,
            n2: t,
        });
    }
    let mut uf = UnionFind::new(m + n + t);
    join_blocks(&mut uf, a.labels(), |i| i);
    join_blocks(&mut uf, b.labels(), |i| m + i);

    let outer: Vec<usize> = (0..m).chain(m + n..m + n + t).map(|v| uf.find(v)).collect();
    let mut is_outer = vec![false; m + n + t];
    for &r in &outer {
        is_outer[r] = true;
    }
    let mut floating = vec![false; m + n + t];
    let mut floats = 0;
    for v in m..m + n {
        let r = uf.find(v);
        if !is_outer[r] && !floating[r] {
            floating[r] = true;
            floats += 1;
        }
    }
    let product =
        Partition::from_raw_labels(m, t, &outer).expect("composition yields a valid partition");
    Ok(CompositionOutcome { product, floats })
}
