use std::collections::{BTreeMap, BTreeSet};

use super::labels::Labels;
use super::matrix::IndexedMatrix;
use crate::diagram::Partition;
use crate::error::{Error, Result};
use crate::semiring::{Boolean, Semiring};

/// A zero-one matrix stored as the set of label pairs `(X, Y)` it relates.
///
/// Equality compares ground sets, label sets and pairs, ignoring the order
/// in which labels are listed.
#[derive(Clone, Debug)]
pub struct Relation {
    rows: Labels,
    cols: Labels,
    pairs: BTreeSet<(u32, u32)>,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        let set = |l: &Labels| l.masks().iter().copied().collect::<BTreeSet<u32>>();
        self.rows.ground() == other.rows.ground()
            && self.cols.ground() == other.cols.ground()
            && set(&self.rows) == set(&other.rows)
            && set(&self.cols) == set(&other.cols)
            && self.pairs == other.pairs
    }
}

impl Eq for Relation {}

impl Relation {
    pub fn from_matrix<S: Semiring>(a: &IndexedMatrix<S>) -> Self {
        Relation {
            rows: a.rows().clone(),
            cols: a.cols().clone(),
            pairs: a.support().into_iter().collect(),
        }
    }

    /// `φ(a)` as a relation on all subsets, built from unions of blocks
    /// rather than by testing every pair.
    pub fn phi(a: &Partition) -> Result<Self> {
        let blocks = a.block_masks();
        if blocks.len() > 24 {
            return Err(Error::GuardExceeded {
                size: blocks.len(),
                limit: 24,
            });
        }
        let mut pairs = BTreeSet::new();
        for choice in 0u32..1 << blocks.len() {
            let (mut x, mut y) = (0u64, 0u64);
            for (k, (u, l)) in blocks.iter().enumerate() {
                if choice >> k & 1 == 1 {
                    x |= u;
                    y |= l;
                }
            }
            pairs.insert((x as u32, y as u32));
        }
        Ok(Relation {
            rows: Labels::binary(a.m())?,
            cols: Labels::binary(a.n())?,
            pairs,
        })
    }

    pub fn rows(&self) -> &Labels {
        &self.rows
    }

    pub fn cols(&self) -> &Labels {
        &self.cols
    }

    pub fn pairs(&self) -> &BTreeSet<(u32, u32)> {
        &self.pairs
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        self.pairs.contains(&(x, y))
    }

    /// Relational composition, the Boolean matrix product.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        if self.cols != other.rows {
            return Err(Error::LabelMismatch(
                "relation composition on mismatched labels".into(),
            ));
        }
        let mut forward: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &(z, y) in &other.pairs {
            forward.entry(z).or_default().push(y);
        }
        let mut pairs = BTreeSet::new();
        for &(x, z) in &self.pairs {
            if let Some(ys) = forward.get(&z) {
                pairs.extend(ys.iter().map(|&y| (x, y)));
            }
        }
        Ok(Relation {
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            pairs,
        })
    }

    pub fn to_matrix(&self) -> IndexedMatrix<Boolean> {
        IndexedMatrix::from_fn(Boolean, self.rows.clone(), self.cols.clone(), |x, y| {
            self.contains(x, y)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{compose, enumerate, Family};
    use crate::rep::phi;

    #[test]
    fn agrees_with_dense_phi() {
        for a in enumerate(Family::Partition, 2, 2).unwrap() {
            let dense = phi(&a, &Boolean).unwrap();
            assert_eq!(Relation::phi(&a).unwrap(), Relation::from_matrix(&dense));
            assert_eq!(Relation::phi(&a).unwrap().to_matrix(), dense);
        }
    }

    #[test]
    fn composition_matches_product() {
        let all = enumerate(Family::Partition, 1, 2).unwrap();
        let right = enumerate(Family::Partition, 2, 1).unwrap();
        for a in &all {
            for b in &right {
                let ab = compose(a, b).unwrap().product;
                let lhs = Relation::phi(a)
                    .unwrap()
                    .compose(&Relation::phi(b).unwrap())
                    .unwrap();
                assert_eq!(lhs, Relation::phi(&ab).unwrap());
            }
        }
    }
}
