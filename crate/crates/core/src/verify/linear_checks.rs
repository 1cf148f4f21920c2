use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{run_batches, Batch, VerificationReport};
use super::sample::{random_composable_shape, random_partition};
use crate::diagram::{cap_element, enumerate, Family, Partition, TwistedElement};
use crate::error::Result;
use crate::linear::{
    independence_rank, linear_compose, minus_basis, module_action, phi_linear, plus_basis,
    submodule_closure, LinearCombination, ModuleClosure, ModuleVector,
};
use crate::rep::subset_string;
use crate::semiring::Rational;

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

fn random_combination(m: usize, n: usize, rng: &mut ChaCha8Rng) -> LinearCombination {
    let mut u = LinearCombination::zero(m, n);
    for _ in 0..rng.gen_range(1..=3) {
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)));
        u.add_term(random_partition(m, n, rng), c)
            .expect("shape matches");
    }
    u
}

/// Checks that the linear extension of `φ` turns `⋆` at `δ = 2` into matrix
/// products and the involution into transposition: on every pair of diagrams
/// with row sizes up to `max_size`, then on `random` seeded pairs of random
/// combinations with row sizes up to `random_max`.
pub fn check_linear_morphism(
    max_size: usize,
    random: usize,
    random_max: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "linear-morphism",
        format!("delta = 2, diagrams with row sizes <= {max_size}, {random} random combinations at row sizes <= {random_max}"),
    );
    let delta = two();
    let case = |u: &LinearCombination, v: &LinearCombination| -> Option<String> {
        let run = || -> Result<bool> {
            let lhs = phi_linear(&linear_compose(u, v, &delta)?, &Rational)?;
            let rhs = phi_linear(u, &Rational)?.mat_mul(&phi_linear(v, &Rational)?)?;
            let star =
                phi_linear(&u.involution(), &Rational)? == phi_linear(u, &Rational)?.transpose();
            Ok(lhs == rhs && star)
        };
        match run() {
            Ok(true) => None,
            Ok(false) => Some(format!("u = {u}, v = {v}")),
            Err(e) => Some(format!("u = {u}, v = {v}: {e}")),
        }
    };
    let mut items = Vec::new();
    for m in 0..=max_size {
        for n in 0..=max_size {
            for t in 0..=max_size {
                items.push((m, n, t));
            }
        }
    }
    let batch = run_batches(&items, |&(m, n, t), batch: &mut Batch| {
        let left = enumerate(Family::Partition, m, n).expect("within guard");
        let right = enumerate(Family::Partition, n, t).expect("within guard");
        for a in &left {
            let u = LinearCombination::from_diagram(a.clone());
            for b in &right {
                batch.check(case(&u, &LinearCombination::from_diagram(b.clone())));
            }
        }
    });
    report.absorb(batch);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(LinearCombination, LinearCombination)> = (0..random)
        .map(|_| {
            let (m, n, t) = random_composable_shape(Family::Partition, random_max, &mut rng);
            (
                random_combination(m, n, &mut rng),
                random_combination(n, t, &mut rng),
            )
        })
        .collect();
    let batch = run_batches(&pairs, |(u, v), batch: &mut Batch| batch.check(case(u, v)));
    report.absorb(batch);
    Ok(report.with_seed(seed).finish(started))
}

/// Checks `c* ⋆ c = 2^k ι_n` at `δ = 2` for the cap elements
/// `c ∈ TL_{n+2k,n}` with `n + 2k ≤ max_m`.
pub fn check_cap_identity(max_m: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("cap-identity", format!("delta = 2, m <= {max_m}"));
    for m in 0..=max_m {
        for n in (m % 2..=m).step_by(2) {
            let k = (m - n) / 2;
            let c = LinearCombination::from_diagram(cap_element(m, n)?);
            let got = linear_compose(&c.involution(), &c, &two())?;
            let want = LinearCombination::from_terms(
                n,
                n,
                [(
                    Partition::identity(n),
                    BigRational::from_integer(BigInt::one() << k),
                )],
            )?;
            report.check((got != want).then(|| format!("m = {m}, n = {n}: c* c = {got}")));
        }
    }
    Ok(report.finish(started))
}

/// Compares the rank of `{φ(a) : a ∈ F_{n,n}}` with `|F_{n,n}|`: full rank is
/// expected for Temperley–Lieb with `n ≤ max_tl`, and a deficient rank for
/// `P_{2,2}` and `B_{3,3}`.
pub fn check_independence(max_tl: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report =
        VerificationReport::new("independence", format!("TL_n for n <= {max_tl}, P_2, B_3"));
    for n in 0..=max_tl {
        let size = enumerate(Family::TemperleyLieb, n, n)?.len();
        let rank = independence_rank(Family::TemperleyLieb, n, n)?;
        report.note(format!("TL_{n}: rank {rank} of {size}"));
        report.check(
            (rank != size).then(|| format!("TL_{n} images are dependent: rank {rank} < {size}")),
        );
    }
    for (family, n) in [(Family::Partition, 2), (Family::Brauer, 3)] {
        let size = enumerate(family, n, n)?.len();
        let rank = independence_rank(family, n, n)?;
        report.note(format!(
            "{}_{n}: rank {rank} of {size}",
            family.short_name()
        ));
        report.check(
            (rank >= size).then(|| format!("{}_{n} images are independent", family.short_name())),
        );
    }
    Ok(report.finish(started))
}

/// Checks that every `(0, a)`, `a ∈ P_{m,n}` with `m, n ≤ max_size`, maps
/// the spanning vectors of `V_n^+` into `V_m^+` and those of `V_n^-` into `V_m^-`.
pub fn check_submodule_invariance(max_size: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "submodule-invariance",
        format!("P_{{m,n}} with m, n <= {max_size}"),
    );
    for m in 0..=max_size {
        for n in 0..=max_size {
            let (plus, minus) = (plus_basis(n), minus_basis(n));
            for a in enumerate(Family::Partition, m, n)? {
                let x = TwistedElement::new(0, a.clone());
                for v in &plus {
                    let w = module_action(&x, v)?;
                    report.check(
                        (!w.is_symmetric())
                            .then(|| format!("a = {a}, v = {v}: image {w} leaves V^+")),
                    );
                }
                for v in &minus {
                    let w = module_action(&x, v)?;
                    report.check(
                        (!w.is_antisymmetric())
                            .then(|| format!("a = {a}, v = {v}: image {w} leaves V^-")),
                    );
                }
            }
        }
    }
    Ok(report.finish(started))
}

fn contains_all(closure: &ModuleClosure, vectors: &[ModuleVector]) -> bool {
    vectors.iter().all(|v| closure.contains(v))
}

/// `v_{m,[m]} + v_{m,∅}` (`plus`) or `v_{m,[m]} - v_{m,∅}`.
pub fn canonical_seed(m: usize, plus: bool) -> Result<ModuleVector> {
    let full = ((1u64 << m) - 1) as u32;
    let mut v = ModuleVector::basis(m, full)?;
    let sign = if plus {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    v.add_coord(0, sign)?;
    Ok(v)
}

/// Checks that the submodule generated by `v_{m,[m]} ± v_{m,∅}` has slices
/// exactly `V_n^±` for `n ≤ max_size`, then that each of `random` seeded
/// nonzero vectors in `V_2` and in `V_3` generates a submodule containing
/// all of `V_n^+` or all of `V_n^-`, `n ≤ max_size`.
pub fn check_closures(max_size: usize, random: usize, seed: u64) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "submodule-closure",
        format!(
            "slices n <= {max_size}, canonical seeds, {random} random seeds in each of V_2, V_3"
        ),
    );
    for m in 0..=max_size {
        for plus in [true, false] {
            if !plus && m == 0 {
                continue;
            }
            let seed_vector = canonical_seed(m, plus)?;
            let closure = submodule_closure(&seed_vector, max_size)?;
            for n in 0..=max_size {
                let target = if plus { plus_basis(n) } else { minus_basis(n) };
                report.check((!closure.slice_equals(n, &target)).then(|| {
                    format!(
                        "seed {seed_vector}: slice {n} has dimension {}, expected {}",
                        closure.dim(n),
                        target.len()
                    )
                }));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seeds = Vec::new();
    for n in [2usize, 3].into_iter().filter(|&n| n <= max_size) {
        let mut made = 0;
        while made < random {
            let dense: Vec<BigRational> = (0..1 << n)
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
                .collect();
            let v = ModuleVector::from_dense(n, &dense);
            if !v.is_zero() {
                seeds.push(v);
                made += 1;
            }
        }
    }
    let (mut got_plus, mut got_minus) = (0, 0);
    let outcomes: Vec<Result<(bool, bool)>> = seeds
        .iter()
        .map(|v| {
            let closure = submodule_closure(v, max_size)?;
            let plus = (0..=max_size).all(|n| contains_all(&closure, &plus_basis(n)));
            let minus = (0..=max_size).all(|n| contains_all(&closure, &minus_basis(n)));
            Ok((plus, minus))
        })
        .collect();
    for (v, outcome) in seeds.iter().zip(outcomes) {
        let (plus, minus) = outcome?;
        got_plus += usize::from(plus);
        got_minus += usize::from(minus);
        report.check((!plus && !minus).then(|| format!("seed {v} generates neither V^+ nor V^-")));
    }
    report.note(format!(
        "random seeds: {got_plus} contain V^+, {got_minus} contain V^-"
    ));
    Ok(report.with_seed(seed).finish(started))
}

/// The four partitions of `P_n` built from `∅ ⊂ Y ⊂ [n]`: `a` with transversals
/// `Y ∪ Y'`, `Y^c ∪ Y^c'`; `b` with `Y ∪ Y^c'`, `Y^c ∪ Y'`; `c` with the four
/// one-row blocks `Y, Y^c, Y', Y^c'`; `d` with `Y`, `Y^c` and `[n]'`.
pub fn decomposition_witnesses(n: usize, y: u32) -> Result<[Partition; 4]> {
    let full = ((1u64 << n) - 1) as u32;
    let yc = full ^ y;
    let up = |s: u32| -> Vec<i32> {
        (0..n)
            .filter(|j| s >> j & 1 == 1)
            .map(|j| j as i32 + 1)
            .collect()
    };
    let down = |s: u32| -> Vec<i32> { up(s).into_iter().map(|j| -j).collect() };
    let join = |x: Vec<i32>, y: Vec<i32>| -> Vec<i32> { x.into_iter().chain(y).collect() };
    Ok([
        Partition::from_blocks(n, n, &[join(up(y), down(y)), join(up(yc), down(yc))])?,
        Partition::from_blocks(n, n, &[join(up(y), down(yc)), join(up(yc), down(y))])?,
        Partition::from_blocks(n, n, &[up(y), up(yc), down(y), down(yc)])?,
        Partition::from_blocks(n, n, &[up(y), up(yc), down(full)])?,
    ])
}

/// Checks that `(i,a)` and `(i,b)` act identically on `V_n^+`, and `(i,c)`
/// and `(i,d)` on `V_n^-`, for every `∅ ⊂ Y ⊂ [n]`, `n` in `sizes` and
/// `i ≤ max_twist`.
pub fn check_decomposition_witnesses(
    sizes: &[usize],
    max_twist: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(
        "decomposition-witnesses",
        format!("n in {sizes:?}, twists <= {max_twist}"),
    );
    for &n in sizes {
        let full = ((1u64 << n) - 1) as u32;
        for y in 1..full {
            let [a, b, c, d] = decomposition_witnesses(n, y)?;
            for i in 0..=max_twist {
                let act = |p: &Partition, v: &ModuleVector| {
                    module_action(&TwistedElement::new(i, p.clone()), v)
                };
                for v in plus_basis(n) {
                    let same = act(&a, &v)? == act(&b, &v)?;
                    report.check((!same).then(|| {
                        format!(
                            "n = {n}, Y = {}, i = {i}: a, b differ on {v}",
                            subset_string(y)
                        )
                    }));
                }
                for v in minus_basis(n) {
                    let same = act(&c, &v)? == act(&d, &v)?;
                    report.check((!same).then(|| {
                        format!(
                            "n = {n}, Y = {}, i = {i}: c, d differ on {v}",
                            subset_string(y)
                        )
                    }));
                }
                // The pairs must still be told apart on the whole of V_n.
                let separated = |p: &Partition, q: &Partition| -> Result<bool> {
                    for x in 0..=full {
                        let v = ModuleVector::basis(n, x)?;
                        if act(p, &v)? != act(q, &v)? {
                            return Ok(true);
                        }
                    }
                    Ok(false)
                };
                report.check((!separated(&a, &b)? || !separated(&c, &d)?).then(|| {
                    format!(
                        "n = {n}, Y = {}, i = {i}: witnesses act identically on all of V_n",
                        subset_string(y)
                    )
                }));
            }
        }
    }
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_linear_checks() {
        assert!(check_linear_morphism(1, 20, 2, 0).unwrap().passed());
        assert!(check_cap_identity(5).unwrap().passed());
        let r = check_independence(3).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn witness_shapes() {
        let [a, b, c, d] = decomposition_witnesses(2, 0b01).unwrap();
        assert_eq!(a, Partition::identity(2));
        assert_eq!(
            b.to_string(),
            Partition::from_blocks(2, 2, &[vec![1, -2], vec![2, -1]])
                .unwrap()
                .to_string()
        );
        assert_eq!(c.block_count(), 4);
        assert_eq!(d.block_count(), 3);
    }

    #[test]
    fn small_decomposition() {
        assert!(check_submodule_invariance(2).unwrap().passed());
        assert!(check_decomposition_witnesses(&[2], 1).unwrap().passed());
        let r = check_closures(2, 3, 0).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}
