use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diagram::{enumerate_with_limit, Family, DEFAULT_MAX_SIZE};
use crate::error::Result;
use crate::rep::phi;
use crate::semiring::Integer;

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            let factor = rows[r][col].clone();
            for c in col..width {
                let v = (&pivot * &rows[r][c] - &factor * &rows[rank][c]) / &prev;
                rows[r][c] = v;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank over the rationals of the flattened images `φ(a)` for all `a` in
/// the hom-set; full rank means the images are linearly independent.
pub fn independence_rank(family: Family, m: usize, n: usize) -> Result<usize> {
    independence_rank_with_limit(family, m, n, DEFAULT_MAX_SIZE)
}

pub fn independence_rank_with_limit(
    family: Family,
    m: usize,
    n: usize,
    max_size: usize,
) -> Result<usize> {
    let rows = enumerate_with_limit(family, m, n, max_size)?
        .iter()
        .map(|a| phi(a, &Integer).map(|x| x.data().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(integer_rank(rows))
}

/// A subspace of `Q^dim` kept as a reduced row echelon basis.
#[derive(Clone, Debug, Default)]
pub struct RationalSubspace {
    dim: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RationalSubspace {
    pub fn new(dim: usize) -> Self {
        RationalSubspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.dim, "vector of the wrong length");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = r[p].clone();
        for x in r.iter_mut() {
            *x /= &lead;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(integer_rank(ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(integer_rank(ints(&[&[0, 2, 1], &[1, 0, 0], &[3, 4, 2]])), 2);
        assert_eq!(
            integer_rank(ints(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]])),
            3
        );
        assert_eq!(integer_rank(Vec::new()), 0);
        assert_eq!(integer_rank(ints(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn subspace_membership() {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let mut s = RationalSubspace::new(3);
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(!s.insert(&[q(2), q(2), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(s.contains(&[q(1), q(0), q(-1)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn bareiss_agrees_with_rational_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(-2..3)).collect())
                .collect();
            let mut s = RationalSubspace::new(c);
            for row in &rows {
                s.insert(
                    &row.iter()
                        .map(|&v| BigRational::from_integer(BigInt::from(v)))
                        .collect::<Vec<_>>(),
                );
            }
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            assert_eq!(integer_rank(ints(&refs)), s.dim(), "{rows:?}");
        }
    }

    #[test]
    fn small_ranks() {
        assert_eq!(independence_rank(Family::TemperleyLieb, 2, 2).unwrap(), 2);
        assert!(independence_rank(Family::Partition, 2, 2).unwrap() < 15);
    }
}
