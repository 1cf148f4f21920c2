use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{enumerate, Family, Partition};
use crate::error::Result;

/// A random set partition of `[m] ∪ [n]'`; each vertex joins an existing
/// block or opens a new one with equal probability among the options.
pub fn random_partition<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Partition {
    let mut raw = Vec::with_capacity(m + n);
    let mut blocks = 0usize;
    for _ in 0..m + n {
        let l = rng.gen_range(0..=blocks);
        if l == blocks {
            blocks += 1;
        }
        raw.push(l);
    }
    Partition::from_raw_labels(m, n, &raw).expect("labels index blocks")
}

/// A uniformly random perfect matching of `[m] ∪ [n]'` (`m + n` even).
pub fn random_brauer<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Partition {
    assert!((m + n) % 2 == 0, "Brauer hom-sets need m + n even");
    let mut order: Vec<usize> = (0..m + n).collect();
    order.shuffle(rng);
    let mut raw = vec![0; m + n];
    for pair in order.chunks(2) {
        raw[pair[0]] = pair[0].min(pair[1]);
        raw[pair[1]] = pair[0].min(pair[1]);
    }
    Partition::from_raw_labels(m, n, &raw).expect("matching is a partition")
}

/// A random element of the family's hom-set, or `None` when it is empty.
pub fn random_diagram<R: Rng + ?Sized>(
    family: Family,
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<Option<Partition>> {
    if !family.is_inhabited(m, n) {
        return Ok(None);
    }
    Ok(Some(match family {
        Family::Partition => random_partition(m, n, rng),
        Family::Brauer => random_brauer(m, n, rng),
        Family::TemperleyLieb => enumerate(family, m, n)?
            .choose(rng)
            .cloned()
            .expect("inhabited"),
    }))
}

/// Random row sizes `m, n, t ≤ max` for which both hom-sets are inhabited.
pub fn random_composable_shape<R: Rng + ?Sized>(
    family: Family,
    max: usize,
    rng: &mut R,
) -> (usize, usize, usize) {
    loop {
        let (m, n, t) = (
            rng.gen_range(0..=max),
            rng.gen_range(0..=max),
            rng.gen_range(0..=max),
        );
        if family.is_inhabited(m, n) && family.is_inhabited(n, t) {
            return (m, n, t);
        }
    }
}

/// All hom-sets `F_{m,n}` with `m, n ≤ max`, indexed `[m][n]`.
pub fn hom_sets(family: Family, max: usize) -> Result<Vec<Vec<Vec<Partition>>>> {
    (0..=max)
        .map(|m| (0..=max).map(|n| enumerate(family, m, n)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_diagrams_lie_in_their_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let (m, n) = (rng.gen_range(0..5), rng.gen_range(0..5));
            for family in [Family::Partition, Family::Brauer, Family::TemperleyLieb] {
                match random_diagram(family, m, n, &mut rng).unwrap() {
                    Some(a) => assert!(family.contains(&a) && a.shape() == (m, n)),
                    None => assert!(!family.is_inhabited(m, n)),
                }
            }
        }
    }

    #[test]
    fn random_partitions_cover_small_hom_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let seen: std::collections::HashSet<Partition> = (0..2000)
            .map(|_| random_partition(2, 1, &mut rng))
            .collect();
        assert_eq!(seen.len(), 5);
    }
}
