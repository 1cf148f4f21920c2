use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A signed vertex: `+i` is upper vertex `i`, `-j` is lower vertex `j'`.
pub type Vertex = i32;

/// A set partition of `[m] ∪ [n]'`.
///
/// Stored as a restricted growth string over the vertices in the order
/// `+1 < … < +m < -1 < … < -n`: each vertex carries the index of its block,
/// and blocks are numbered by first appearance. Blocks are therefore ordered
/// by least vertex, and two partitions are equal iff their labels are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct Partition {
    m: usize,
    n: usize,
    labels: Vec<u16>,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    m: usize,
    n: usize,
    blocks: Vec<Vec<Vertex>>,
}

impl TryFrom<PartitionRepr> for Partition {
    type Error = Error;

    fn try_from(repr: PartitionRepr) -> Result<Self> {
        Partition::from_blocks(repr.m, repr.n, &repr.blocks)
    }
}

impl From<Partition> for PartitionRepr {
    fn from(p: Partition) -> Self {
        PartitionRepr {
            m: p.m,
            n: p.n,
            blocks: p.blocks(),
        }
    }
}

/// Rank, (co)domain and (co)kernel of a partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramStatistics {
    pub rank: usize,
    pub dom: Vec<usize>,
    pub codom: Vec<usize>,
    pub ker: Vec<Vec<usize>>,
    pub coker: Vec<Vec<usize>>,
}

/// Kind of a block relative to the two rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Upper,
    Lower,
    Transversal,
}

const MAX_VERTICES: usize = u16::MAX as usize;

impl Partition {
    /// Builds a partition from arbitrary per-vertex block ids, canonicalising them.
    pub fn from_raw_labels<T: Copy + Eq + std::hash::Hash>(
        m: usize,
        n: usize,
        raw: &[T],
    ) -> Result<Self> {
        if raw.len() != m + n {
            return Err(Error::InvalidPartition(format!(
                "expected {} vertex labels, found {}",
                m + n,
                raw.len()
            )));
        }
        if m + n > MAX_VERTICES {
            return Err(Error::InvalidPartition(format!(
                "too many vertices: {}",
                m + n
            )));
        }
        let mut seen: HashMap<T, u16> = HashMap::new();
        let labels = raw
            .iter()
            .map(|r| {
                let next = seen.len() as u16;
                *seen.entry(*r).or_insert(next)
            })
            .collect();
        Ok(Partition { m, n, labels })
    }

    /// Builds a partition from blocks of signed vertices.
    pub fn from_blocks<B: AsRef<[Vertex]>>(m: usize, n: usize, blocks: &[B]) -> Result<Self> {
        let mut raw: Vec<Option<usize>> = vec![None; m + n];
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                let idx = vertex_index(m, n, v).ok_or_else(|| {
                    Error::InvalidPartition(format!(
                        "vertex {} out of range for shape ({m},{n})",
                        fmt_vertex(v)
                    ))
                })?;
                if raw[idx].is_some() {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {} appears twice",
                        fmt_vertex(v)
                    )));
                }
                raw[idx] = Some(b);
            }
        }
        let raw: Vec<usize> = raw
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                b.ok_or_else(|| {
                    Error::InvalidPartition(format!(
                        "vertex {} not covered",
                        fmt_vertex(index_vertex(m, i))
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Self::from_raw_labels(m, n, &raw)
    }

    /// The identity `ι_n = {{1,1'},…,{n,n'}}`.
    pub fn identity(n: usize) -> Self {
        let labels = (0..n as u16).chain(0..n as u16).collect();
        Partition { m: n, n, labels }
    }

    pub(crate) fn from_canonical_labels(m: usize, n: usize, labels: Vec<u16>) -> Self {
        debug_assert!(is_restricted_growth(&labels));
        Partition { m, n, labels }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Per-vertex block indices (upper row first, then lower row).
    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels
            .iter()
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Block index of the upper vertex `i` (1-based).
    pub fn upper_label(&self, i: usize) -> u16 {
        self.labels[i - 1]
    }

    /// Block index of the lower vertex `j'` (1-based).
    pub fn lower_label(&self, j: usize) -> u16 {
        self.labels[self.m + j - 1]
    }

    /// Blocks in canonical order, each listed in vertex order.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(index_vertex(self.m, i));
        }
        blocks
    }

    /// Classifies each block as upper, lower or transversal, indexed by block.
    pub fn block_kinds(&self) -> Vec<BlockKind> {
        let k = self.block_count();
        let mut up = vec![false; k];
        let mut down = vec![false; k];
        for &l in &self.labels[..self.m] {
            up[l as usize] = true;
        }
        for &l in &self.labels[self.m..] {
            down[l as usize] = true;
        }
        up.into_iter()
            .zip(down)
            .map(|(u, d)| match (u, d) {
                (true, true) => BlockKind::Transversal,
                (true, false) => BlockKind::Upper,
                _ => BlockKind::Lower,
            })
            .collect()
    }

    /// Block sizes, indexed by block.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.block_count()];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// `a*`: swaps the rows.
    pub fn involution(&self) -> Partition {
        let raw: Vec<u16> = self.labels[self.m..]
            .iter()
            .chain(&self.labels[..self.m])
            .copied()
            .collect();
        Partition::from_raw_labels(self.n, self.m, &raw).expect("involution preserves validity")
    }

    /// `a ⊕ b`: side-by-side placement with `a` on the left.
    pub fn tensor_sum(&self, other: &Partition) -> Partition {
        let offset = self.block_count() as u32;
        let raw: Vec<u32> = self.labels[..self.m]
            .iter()
            .map(|&l| l as u32)
            .chain(other.labels[..other.m].iter().map(|&l| l as u32 + offset))
            .chain(self.labels[self.m..].iter().map(|&l| l as u32))
            .chain(other.labels[other.m..].iter().map(|&l| l as u32 + offset))
            .collect();
        Partition::from_raw_labels(self.m + other.m, self.n + other.n, &raw)
            .expect("tensor sum of valid partitions")
    }

    pub fn statistics(&self) -> DiagramStatistics {
        let kinds = self.block_kinds();
        let rank = kinds
            .iter()
            .filter(|k| **k == BlockKind::Transversal)
            .count();
        let dom = (1..=self.m)
            .filter(|&i| kinds[self.upper_label(i) as usize] == BlockKind::Transversal)
            .collect();
        let codom = (1..=self.n)
            .filter(|&j| kinds[self.lower_label(j) as usize] == BlockKind::Transversal)
            .collect();
        DiagramStatistics {
            rank,
            dom,
            codom,
            ker: classes(&self.labels[..self.m]),
            coker: classes(&self.labels[self.m..]),
        }
    }

    pub fn rank(&self) -> usize {
        self.block_kinds()
            .iter()
            .filter(|k| **k == BlockKind::Transversal)
            .count()
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.shape() != other.shape() {
            return Err(shape_mismatch(other.shape(), self.shape()));
        }
        let mut target: Vec<Option<u16>> = vec![None; self.block_count()];
        for (&mine, &theirs) in self.labels.iter().zip(&other.labels) {
            match target[mine as usize] {
                None => target[mine as usize] = Some(theirs),
                Some(t) if t != theirs => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }

    /// True iff every block has exactly two vertices.
    pub fn is_brauer(&self) -> bool {
        self.block_sizes().iter().all(|&s| s == 2)
    }

    /// True iff the partition is a Brauer diagram whose blocks are
    /// non-crossing chords around the boundary `1,…,m,n',…,1'`.
    pub fn is_temperley_lieb(&self) -> bool {
        if !self.is_brauer() {
            return false;
        }
        let mut chords = vec![(usize::MAX, usize::MAX); self.block_count()];
        for (i, &l) in self.labels.iter().enumerate() {
            let p = self.boundary_position(i);
            let c = &mut chords[l as usize];
            if c.0 == usize::MAX {
                c.0 = p;
            } else {
                c.1 = p;
            }
        }
        let chords: Vec<(usize, usize)> = chords
            .into_iter()
            .map(|(x, y)| (x.min(y), x.max(y)))
            .collect();
        for (k, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[k + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return false;
                }
            }
        }
        true
    }

    /// Position of vertex index `i` on the boundary cycle `1,…,m,n',…,1'`.
    pub(crate) fn boundary_position(&self, i: usize) -> usize {
        if i < self.m {
            i
        } else {
            let j = i - self.m; // lower vertex j+1
            self.m + (self.n - 1 - j)
        }
    }

    /// Blocks as `(upper_mask, lower_mask)` with upper vertex `i` on bit `i-1`
    /// and lower vertex `j'` on bit `j-1`. Requires `m, n ≤ 64`.
    pub fn block_masks(&self) -> Vec<(u64, u64)> {
        assert!(
            self.m <= 64 && self.n <= 64,
            "block masks need rows of at most 64 vertices"
        );
        let mut masks = vec![(0u64, 0u64); self.block_count()];
        for i in 0..self.m {
            masks[self.labels[i] as usize].0 |= 1 << i;
        }
        for j in 0..self.n {
            masks[self.labels[self.m + j] as usize].1 |= 1 << j;
        }
        masks
    }
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn shape_mismatch(expected: (usize, usize), found: (usize, usize)) -> Error {
    Error::ShapeMismatch {
        expected_m: expected.0,
        expected_n: expected.1,
        found_m: found.0,
        found_n: found.1,
    }
}

fn classes(labels: &[u16]) -> Vec<Vec<usize>> {
    let mut order: Vec<u16> = Vec::new();
    let mut groups: HashMap<u16, Vec<usize>> = HashMap::new();
    for (i, &l) in labels.iter().enumerate() {
        groups
            .entry(l)
            .or_insert_with(|| {
                order.push(l);
                Vec::new()
            })
            .push(i + 1);
    }
    order
        .into_iter()
        .map(|l| groups.remove(&l).unwrap())
        .collect()
}

fn is_restricted_growth(labels: &[u16]) -> bool {
    let mut next = 0u16;
    for &l in labels {
        if l > next {
            return false;
        }
        if l == next {
            next += 1;
        }
    }
    true
}

pub(crate) fn vertex_index(m: usize, n: usize, v: Vertex) -> Option<usize> {
    if v > 0 && (v as usize) <= m {
        Some(v as usize - 1)
    } else if v < 0 && ((-v) as usize) <= n {
        Some(m + (-v) as usize - 1)
    } else {
        None
    }
}

pub(crate) fn index_vertex(m: usize, i: usize) -> Vertex {
    if i < m {
        (i + 1) as Vertex
    } else {
        -((i - m + 1) as Vertex)
    }
}

pub(crate) fn fmt_vertex(v: Vertex) -> String {
    if v < 0 {
        format!("{}'", -v)
    } else {
        v.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_a() -> Partition {
        Partition::from_blocks(
            4,
            6,
            &[vec![1, 4], vec![2, 3, -4, -5], vec![-1, -2, -6], vec![-3]],
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_ignores_block_order() {
        let a = fig1_a();
        let b = Partition::from_blocks(
            4,
            6,
            &[vec![-3], vec![-6, -2, -1], vec![-5, 3, -4, 2], vec![4, 1]],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.blocks(),
            vec![vec![1, 4], vec![2, 3, -4, -5], vec![-1, -2, -6], vec![-3]]
        );
    }

    #[test]
    fn rejects_invalid_blocks() {
        assert!(Partition::from_blocks(2, 1, &[vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(2, 1, &[vec![1, 2], vec![-1, 1]]).is_err());
        assert!(Partition::from_blocks(2, 1, &[vec![1, 2, -2]]).is_err());
        assert!(Partition::from_blocks(1, 1, &[vec![1, -1], vec![]]).is_err());
    }

    #[test]
    fn empty_partition() {
        let e = Partition::from_blocks::<Vec<Vertex>>(0, 0, &[]).unwrap();
        assert_eq!(e, Partition::identity(0));
        assert_eq!(e.block_count(), 0);
    }

    #[test]
    fn involution_of_figure_one() {
        let star = Partition::from_blocks(
            6,
            4,
            &[vec![1, 2, 6], vec![3], vec![4, 5, -2, -3], vec![-1, -4]],
        )
        .unwrap();
        assert_eq!(fig1_a().involution(), star);
        assert_eq!(star.involution(), fig1_a());
        assert_eq!(Partition::identity(3).involution(), Partition::identity(3));
    }

    #[test]
    fn statistics_of_figure_one() {
        let s = fig1_a().statistics();
        assert_eq!(s.rank, 1);
        assert_eq!(s.dom, vec![2, 3]);
        assert_eq!(s.codom, vec![4, 5]);
        assert_eq!(s.ker, vec![vec![1, 4], vec![2, 3]]);
        assert_eq!(s.coker, vec![vec![1, 2, 6], vec![3], vec![4, 5]]);

        let id = Partition::identity(3).statistics();
        assert_eq!(id.rank, 3);
        assert_eq!(id.dom, vec![1, 2, 3]);
        assert_eq!(id.ker, vec![vec![1], vec![2], vec![3]]);

        let one = Partition::from_blocks(2, 2, &[vec![1, 2, -1, -2]])
            .unwrap()
            .statistics();
        assert_eq!(one.rank, 1);
        assert_eq!(one.ker, vec![vec![1, 2]]);
    }

    #[test]
    fn tensor_sum_display_example() {
        let a = Partition::from_blocks(4, 3, &[vec![1, 2, -1, -3], vec![3, 4], vec![-2]]).unwrap();
        let b = Partition::from_blocks(
            4,
            6,
            &[vec![1, 2, 3, 4, -4, -5, -6], vec![-1, -2], vec![-3]],
        )
        .unwrap();
        let expected = Partition::from_blocks(
            8,
            9,
            &[
                vec![1, 2, -1, -3],
                vec![3, 4],
                vec![-2],
                vec![5, 6, 7, 8, -7, -8, -9],
                vec![-4, -5],
                vec![-6],
            ],
        )
        .unwrap();
        assert_eq!(a.tensor_sum(&b), expected);
        assert_eq!(a.tensor_sum(&Partition::identity(0)), a);
        assert_eq!(
            Partition::identity(2).tensor_sum(&Partition::identity(3)),
            Partition::identity(5)
        );
    }

    #[test]
    fn refinement() {
        let one = Partition::from_blocks(2, 2, &[vec![1, 2, -1, -2]]).unwrap();
        let id = Partition::identity(2);
        assert!(id.refines(&id).unwrap());
        assert!(id.refines(&one).unwrap());
        assert!(!one.refines(&id).unwrap());
        assert!(id.refines(&Partition::identity(3)).is_err());
    }

    #[test]
    fn planarity_of_displayed_pair() {
        let tl = Partition::from_blocks(
            10,
            8,
            &[
                vec![1, -3],
                vec![8, -8],
                vec![3, 4],
                vec![5, 6],
                vec![9, 10],
                vec![2, 7],
                vec![-1, -2],
                vec![-5, -6],
                vec![-4, -7],
            ],
        )
        .unwrap();
        let crossing = Partition::from_blocks(
            10,
            8,
            &[
                vec![2, -3],
                vec![8, -8],
                vec![3, 4],
                vec![5, 6],
                vec![9, 10],
                vec![1, 7],
                vec![-1, -2],
                vec![-5, -6],
                vec![-4, -7],
            ],
        )
        .unwrap();
        assert!(tl.is_temperley_lieb());
        assert!(crossing.is_brauer());
        assert!(!crossing.is_temperley_lieb());
    }
}
