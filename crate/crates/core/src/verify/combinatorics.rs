use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracles::{
    floating_components, intertwining_sets, ones_conditions, z_zero, IntertwineQuery,
};
use super::report::{run_batches, Batch, VerificationReport};
use super::sample::{hom_sets, random_diagram};
use crate::diagram::{
    compose, enumerate, evaluate_word, factorize_temperley_lieb, generator, Family, GeneratorKind,
    Partition, UnionFind,
};
use crate::error::Result;
use crate::rep::{brauer_h, brauer_h_positional, is_block_union, phi, subset_string, Relation};
use crate::semiring::Boolean;

/// Checks the intertwining-set count `2^Φ(a,b)` or `0`, the minimality of
/// `Z₀` and the description of all sets as `Z₀ ∪ F`, over every
/// `a ∈ P_{m,n}`, `b ∈ P_{n,t}`, `X ⊆ [m]`, `Y ⊆ [t]`.
pub fn check_count_formula(m: usize, n: usize, t: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "count-formula",
        format!("P_{{{m},{n}}} x P_{{{n},{t}}}, all X, Y"),
    );
    let left = enumerate(Family::Partition, m, n)?;
    let right = enumerate(Family::Partition, n, t)?;
    let items: Vec<(usize, usize)> = (0..left.len())
        .flat_map(|i| (0..right.len()).map(move |j| (i, j)))
        .collect();
    let batch = run_batches(&items, |&(i, j), batch: &mut Batch| {
        let (a, b) = (&left[i], &right[j]);
        let outcome = compose(a, b).expect("shapes agree");
        let blocks = outcome.product.block_masks();
        let floats = floating_components(a, b);
        for x in 0..1u32 << m {
            for y in 0..1u32 << t {
                let q = IntertwineQuery::new(a.clone(), b.clone(), x, y).expect("valid query");
                batch.check(count_case(&q, &blocks, outcome.floats, &floats));
            }
        }
    });
    report.absorb(batch);
    Ok(report.finish(started))
}

/// One query of the intertwining count check; `None` when all claims hold.
pub fn count_case(
    q: &IntertwineQuery,
    product_blocks: &[(u64, u64)],
    phi_count: usize,
    floats: &[u32],
) -> Option<String> {
    let sets = match intertwining_sets(q) {
        Ok(s) => s,
        Err(e) => return Some(e.to_string()),
    };
    let related = is_block_union(product_blocks, q.x, q.y);
    let expected = if related { 1usize << phi_count } else { 0 };
    if floats.len() != phi_count {
        return Some(format!(
            "{}: {} floating classes but Phi = {phi_count}",
            q.describe(),
            floats.len()
        ));
    }
    if sets.len() != expected {
        return Some(format!(
            "{}: {} intertwining sets, expected {expected}",
            q.describe(),
            sets.len()
        ));
    }
    if sets.is_empty() {
        return None;
    }
    let z0 = z_zero(q);
    if !sets.contains(&z0) || sets.iter().any(|&z| z & z0 != z0) {
        return Some(format!(
            "{}: Z0 = {} is not the least intertwining set",
            q.describe(),
            subset_string(z0)
        ));
    }
    let predicted: BTreeSet<u32> = (0..1u32 << floats.len())
        .map(|choice| {
            floats
                .iter()
                .enumerate()
                .filter(|(k, _)| choice >> k & 1 == 1)
                .fold(z0, |acc, (_, f)| acc | f)
        })
        .collect();
    let found: BTreeSet<u32> = sets.into_iter().collect();
    (predicted != found).then(|| {
        format!(
            "{}: intertwining sets are not Z0 plus unions of floats",
            q.describe()
        )
    })
}

/// Composition tables over every hom-set with row sizes at most `max`.
struct Tables {
    elements: Vec<Vec<Vec<Partition>>>,
    /// `products[m][n][t][i * |F_{n,t}| + j] = (index of a_i b_j, Φ)`.
    products: Vec<Vec<Vec<Vec<(u32, u8)>>>>,
}

impl Tables {
    fn build(family: Family, max: usize) -> Result<Self> {
        let elements = hom_sets(family, max)?;
        let index: Vec<Vec<HashMap<&Partition, u32>>> = elements
            .iter()
            .map(|row| {
                row.iter()
                    .map(|set| set.iter().enumerate().map(|(i, a)| (a, i as u32)).collect())
                    .collect()
            })
            .collect();
        let mut products = vec![vec![vec![Vec::new(); max + 1]; max + 1]; max + 1];
        for (m, by_m) in products.iter_mut().enumerate() {
            for (n, by_n) in by_m.iter_mut().enumerate() {
                for (t, table) in by_n.iter_mut().enumerate() {
                    let (left, right) = (&elements[m][n], &elements[n][t]);
                    let pairs: Vec<(usize, usize)> = (0..left.len())
                        .flat_map(|i| (0..right.len()).map(move |j| (i, j)))
                        .collect();
                    use rayon::prelude::*;
                    *table = pairs
                        .par_iter()
                        .map(|&(i, j)| {
                            let out = compose(&left[i], &right[j]).expect("composable");
                            (index[m][t][&out.product], out.floats as u8)
                        })
                        .collect();
                }
            }
        }
        Ok(Tables { elements, products })
    }

    fn product(&self, m: usize, n: usize, t: usize, i: usize, j: usize) -> (usize, usize) {
        let (k, f) = self.products[m][n][t][i * self.elements[n][t].len() + j];
        (k as usize, f as usize)
    }
}

/// Checks `Φ(a,b) + Φ(ab,c) = Φ(a,bc) + Φ(b,c)` together with associativity:
/// exhaustively over composable triples with row sizes up to `exhaustive_max`,
/// then on `random` seeded triples with row sizes up to `random_max`.
pub fn check_twisting_identity(
    family: Family,
    exhaustive_max: usize,
    random: usize,
    random_max: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "twisting-identity",
        format!(
            "family {family}, exhaustive at row sizes <= {exhaustive_max}, {random} random triples at row sizes <= {random_max}"
        ),
    );
    let tables = Tables::build(family, exhaustive_max)?;
    let k = exhaustive_max;
    let mut items = Vec::new();
    for m in 0..=k {
        for n in 0..=k {
            for t in 0..=k {
                for u in 0..=k {
                    for i in 0..tables.elements[m][n].len() {
                        items.push((m, n, t, u, i));
                    }
                }
            }
        }
    }
    let batch = run_batches(&items, |&(m, n, t, u, i), batch: &mut Batch| {
        let el = &tables.elements;
        for j in 0..el[n][t].len() {
            let (ab, f_ab) = tables.product(m, n, t, i, j);
            for l in 0..el[t][u].len() {
                let (bc, f_bc) = tables.product(n, t, u, j, l);
                let (left, f_ab_c) = tables.product(m, t, u, ab, l);
                let (right, f_a_bc) = tables.product(m, n, u, i, bc);
                batch.check((left != right || f_ab + f_ab_c != f_a_bc + f_bc).then(|| {
                    format!(
                        "a = {}, b = {}, c = {}",
                        el[m][n][i], el[n][t][j], el[t][u][l]
                    )
                }));
            }
        }
    });
    report.absorb(batch);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::with_capacity(random);
    while triples.len() < random {
        let dims: [usize; 4] = std::array::from_fn(|_| rng.gen_range(0..=random_max));
        let a = random_diagram(family, dims[0], dims[1], &mut rng)?;
        let b = random_diagram(family, dims[1], dims[2], &mut rng)?;
        let c = random_diagram(family, dims[2], dims[3], &mut rng)?;
        if let (Some(a), Some(b), Some(c)) = (a, b, c) {
            triples.push((a, b, c));
        }
    }
    let batch = run_batches(&triples, |(a, b, c), batch: &mut Batch| {
        let ab = compose(a, b).expect("composable");
        let bc = compose(b, c).expect("composable");
        let ab_c = compose(&ab.product, c).expect("composable");
        let a_bc = compose(a, &bc.product).expect("composable");
        let ok = ab_c.product == a_bc.product && ab.floats + ab_c.floats == a_bc.floats + bc.floats;
        batch.check((!ok).then(|| format!("a = {a}, b = {b}, c = {c}")));
    });
    report.absorb(batch);
    Ok(report.with_seed(seed).finish(started))
}

/// Checks that the three descriptions of `φ(a)_{X,Y} = 1` agree on every
/// `a ∈ P_{m,n}` and all `X, Y`.
pub fn check_ones_lemma(m: usize, n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("ones-lemma", format!("P_{{{m},{n}}}, all X, Y"));
    for a in enumerate(Family::Partition, m, n)? {
        for x in 0..1u32 << m {
            for y in 0..1u32 << n {
                let c = ones_conditions(&a, x, y);
                report.check((c[0] != c[1] || c[0] != c[2]).then(|| {
                    format!(
                        "a = {a}, X = {}, Y = {}: conditions {c:?}",
                        subset_string(x),
                        subset_string(y)
                    )
                }));
            }
        }
    }
    Ok(report.finish(started))
}

/// Checks that `a` refines `b` exactly when the support of `φ(b)` lies in
/// the support of `φ(a)`, over all pairs in `P_{m,n}`.
pub fn check_order_correspondence(m: usize, n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("refinement-order", format!("P_{{{m},{n}}}"));
    let all = enumerate(Family::Partition, m, n)?;
    let images = all
        .iter()
        .map(|a| phi(a, &Boolean))
        .collect::<Result<Vec<_>>>()?;
    for (a, pa) in all.iter().zip(&images) {
        for (b, pb) in all.iter().zip(&images) {
            let refines = a.refines(b)?;
            let below = pa.support_contains(pb);
            report.check((refines != below).then(|| {
                format!("a = {a}, b = {b}: refines {refines}, entrywise phi(b) <= phi(a) {below}")
            }));
        }
    }
    Ok(report.finish(started))
}

/// Orbits of subsets of `[n]` under the relations `φ(a)`, `a ∈ F_n`.
pub fn orbits(family: Family, n: usize) -> Result<(Vec<Vec<u32>>, BTreeSet<(u32, u32)>)> {
    let mut related = BTreeSet::new();
    for a in enumerate(family, n, n)? {
        related.extend(Relation::phi(&a)?.pairs().iter().copied());
    }
    let mut uf = UnionFind::new(1 << n);
    for &(x, y) in &related {
        uf.union(x as usize, y as usize);
    }
    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut root_of: HashMap<usize, usize> = HashMap::new();
    for x in 0..1u32 << n {
        let r = uf.find(x as usize);
        let k = *root_of.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(x);
    }
    Ok((classes, related))
}

/// Checks the orbit structure of `2^[n]` under the Boolean image of `F_n`:
/// a single orbit reached in one step for the partition monoid, the two
/// parity orbits for the Brauer monoid. Temperley–Lieb orbits are only listed.
pub fn check_orbits(family: Family, n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let params = format!("family {family}, n = {n}");
    let (classes, related) = orbits(family, n)?;
    let listing = classes
        .iter()
        .map(|c| {
            format!(
                "{{{}}}",
                c.iter()
                    .map(|&x| subset_string(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            )
        })
        .collect::<Vec<_>>()
        .join(", ");
    let key = |x: u32| -> u32 {
        match family {
            Family::Partition => 0,
            _ => x.count_ones() % 2,
        }
    };
    if family == Family::TemperleyLieb {
        let mut r = VerificationReport::inapplicable(
            "orbits",
            params,
            "no orbit prediction for Temperley-Lieb",
        );
        r.note(format!("{} orbits: {listing}", classes.len()));
        return Ok(r.finish(started));
    }
    let mut report = VerificationReport::new("orbits", params);
    for x in 0..1u32 << n {
        for y in 0..1u32 << n {
            let expect = key(x) == key(y);
            let found = related.contains(&(x, y));
            report.check((expect != found).then(|| {
                format!(
                    "({}, {}) related: {found}, expected {expect}",
                    subset_string(x),
                    subset_string(y)
                )
            }));
        }
    }
    report.note(format!("{} orbits: {listing}", classes.len()));
    Ok(report.finish(started))
}

/// Checks that every `a ∈ TL_{m,n}` with `m + n ≤ max_total` is the product
/// of its generator word, and `h_{i,n} = e_{i,n} e*_{i,n}` for `n ≤ max_h`.
pub fn check_generators(max_total: usize, max_h: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "generators",
        format!("TL_{{m,n}} with m+n <= {max_total}, h for n <= {max_h}"),
    );
    let mut longest = 0;
    for m in 0..=max_total {
        for n in 0..=max_total - m {
            for a in enumerate(Family::TemperleyLieb, m, n)? {
                let word = factorize_temperley_lieb(&a)?;
                longest = longest.max(word.len());
                let back = evaluate_word(&word, m)?;
                let only_e = word.iter().all(|g| g.kind != GeneratorKind::H);
                report.check((back != a || !only_e).then(|| {
                    let w: Vec<String> = word.iter().map(|g| g.to_string()).collect();
                    format!("a = {a}: word [{}] evaluates to {back}", w.join(" "))
                }));
            }
        }
    }
    for n in 2..=max_h {
        for i in 1..n {
            let e = generator(GeneratorKind::E, i, n)?;
            let es = generator(GeneratorKind::EStar, i, n)?;
            let h = generator(GeneratorKind::H, i, n)?;
            let prod = compose(&e, &es)?;
            report.check(
                (prod.product != h || prod.floats != 0)
                    .then(|| format!("e[{i},{n}] e*[{i},{n}] != h[{i},{n}]")),
            );
        }
    }
    report.note(format!("longest word has {longest} generators"));
    Ok(report.finish(started))
}

/// Compares `φ(h_{i,n})` with the label-level Kronecker form and with both
/// positional readings of `I ⊗ M ⊗ I`, for `1 ≤ i < n ≤ max_n`.
///
/// Passes when the label-level form always matches and, wherever the two
/// positional readings differ, exactly one of them matches and it is the
/// same reading throughout.
pub fn check_h_resolution(max_n: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("h-resolution", format!("1 <= i < n <= {max_n}"));
    let (mut stated_hits, mut mirrored_hits, mut distinct) = (0, 0, 0);
    for n in 2..=max_n {
        for i in 1..n {
            let target = phi(&generator(GeneratorKind::H, i, n)?, &Boolean)?;
            let label_level = brauer_h(i, n, &Boolean)?;
            report.check(
                (label_level != target)
                    .then(|| format!("label-level form differs from phi(h[{i},{n}])")),
            );
            let (stated, mirrored) = brauer_h_positional(i, n, &Boolean)?;
            if stated == mirrored {
                report.check(
                    (stated != target)
                        .then(|| format!("coinciding readings differ from phi(h[{i},{n}])")),
                );
                continue;
            }
            distinct += 1;
            let (s, m) = (stated == target, mirrored == target);
            stated_hits += usize::from(s);
            mirrored_hits += usize::from(m);
            report.check(
                (s == m).then(|| format!("h[{i},{n}]: stated matches {s}, mirrored matches {m}")),
            );
        }
    }
    let uniform = stated_hits == 0 || mirrored_hits == 0;
    report.check(
        (!uniform).then(|| format!("mixed: stated {stated_hits}, mirrored {mirrored_hits}")),
    );
    report.note(format!(
        "{distinct} (i,n) with distinct readings: I_(n-i-1) (x) M (x) I_(i-1) matches {mirrored_hits}, I_(i-1) (x) M (x) I_(n-i-1) matches {stated_hits}"
    ));
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::report::Status;

    #[test]
    fn count_formula_small() {
        let r = check_count_formula(1, 2, 1).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.cases, 5 * 5 * 2 * 2);
    }

    #[test]
    fn twisting_identity_small() {
        let r = check_twisting_identity(Family::Partition, 2, 200, 4, 0).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.seed, Some(0));
    }

    #[test]
    fn lemma_and_order() {
        assert!(check_ones_lemma(2, 2).unwrap().passed());
        assert!(check_order_correspondence(2, 2).unwrap().passed());
    }

    #[test]
    fn orbit_counts() {
        let (classes, _) = orbits(Family::Partition, 2).unwrap();
        assert_eq!(classes, vec![vec![0, 1, 2, 3]]);
        let (classes, _) = orbits(Family::Brauer, 3).unwrap();
        assert_eq!(classes, vec![vec![0, 3, 5, 6], vec![1, 2, 4, 7]]);
        assert_eq!(orbits(Family::Partition, 0).unwrap().0, vec![vec![0]]);
        assert!(check_orbits(Family::Brauer, 2).unwrap().passed());
        assert_eq!(
            check_orbits(Family::TemperleyLieb, 2).unwrap().status,
            Status::Inapplicable
        );
    }

    #[test]
    fn generators_and_h() {
        assert!(check_generators(6, 4).unwrap().passed());
        let r = check_h_resolution(4).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}
