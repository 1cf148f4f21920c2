use std::fmt;
use std::str::FromStr;

use super::labels::{Labels, SubsetOrdering};
use super::matrix::IndexedMatrix;
use crate::diagram::{generator, GeneratorKind, Partition, TwistedElement};
use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// Whether `X ∪ Y'` is a (possibly empty) union of blocks, given the
/// block masks of the diagram.
pub fn is_block_union(blocks: &[(u64, u64)], x: u32, y: u32) -> bool {
    let (x, y) = (u64::from(x), u64::from(y));
    blocks.iter().all(|&(u, l)| {
        let inside = x & u == u && y & l == l;
        let outside = x & u == 0 && y & l == 0;
        inside || outside
    })
}

fn row_sizes_fit(a: &Partition) -> Result<()> {
    let too_big = a.m().max(a.n());
    if too_big > super::labels::MAX_GROUND {
        return Err(Error::GuardExceeded {
            size: too_big,
            limit: super::labels::MAX_GROUND,
        });
    }
    Ok(())
}

/// The zero-one matrix `φ(a)` on the given row and column labels.
pub fn phi_on<S: Semiring>(
    a: &Partition,
    s: &S,
    rows: &Labels,
    cols: &Labels,
) -> Result<IndexedMatrix<S>> {
    row_sizes_fit(a)?;
    if rows.ground() != a.m() || cols.ground() != a.n() {
        return Err(Error::LabelMismatch(format!(
            "labels over ([{}],[{}]) for a diagram of shape {:?}",
            rows.ground(),
            cols.ground(),
            a.shape()
        )));
    }
    let blocks = a.block_masks();
    let (one, zero) = (s.one(), s.zero());
    Ok(IndexedMatrix::from_fn(
        s.clone(),
        rows.clone(),
        cols.clone(),
        |x, y| {
            if is_block_union(&blocks, x, y) {
                one.clone()
            } else {
                zero.clone()
            }
        },
    ))
}

pub fn phi_ordered<S: Semiring>(
    a: &Partition,
    s: &S,
    ordering: SubsetOrdering,
) -> Result<IndexedMatrix<S>> {
    row_sizes_fit(a)?;
    phi_on(
        a,
        s,
        &Labels::ordered(ordering, a.m())?,
        &Labels::ordered(ordering, a.n())?,
    )
}

/// `φ(a)` with both axes in ascending bitmask order.
pub fn phi<S: Semiring>(a: &Partition, s: &S) -> Result<IndexedMatrix<S>> {
    phi_ordered(a, s, SubsetOrdering::BinaryLsb)
}

/// `Xa`: lower points sharing a block with some point of `X`.
pub fn image(a: &Partition, x: u32) -> u32 {
    a.block_masks()
        .iter()
        .filter(|(u, _)| u & u64::from(x) != 0)
        .fold(0, |acc, (_, l)| acc | *l as u32)
}

/// `aY`: upper points sharing a block with some point of `Y'`.
pub fn preimage(a: &Partition, y: u32) -> u32 {
    a.block_masks()
        .iter()
        .filter(|(_, l)| l & u64::from(y) != 0)
        .fold(0, |acc, (u, _)| acc | *u as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    fn bit(self) -> u32 {
        match self {
            Parity::Odd => 1,
            Parity::Even => 0,
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" | "1" => Ok(Parity::Odd),
            "even" | "0" => Ok(Parity::Even),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown parity `{s}`"),
            }),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// The restriction of `φ(a)` to subsets of one cardinality parity, for Brauer `a`.
pub fn reduced<S: Semiring>(a: &Partition, parity: Parity, s: &S) -> Result<IndexedMatrix<S>> {
    if !a.is_brauer() {
        return Err(Error::WrongFamily(format!("{a} is not a Brauer diagram")));
    }
    row_sizes_fit(a)?;
    phi_on(
        a,
        s,
        &Labels::with_parity(a.m(), parity.bit())?,
        &Labels::with_parity(a.n(), parity.bit())?,
    )
}

/// The restriction of `φ(a)` to even-gap subsets, for Temperley–Lieb `a`.
pub fn mu<S: Semiring>(a: &Partition, s: &S) -> Result<IndexedMatrix<S>> {
    if !a.is_temperley_lieb() {
        return Err(Error::WrongFamily(format!(
            "{a} is not a Temperley-Lieb diagram"
        )));
    }
    phi_ordered(a, s, SubsetOrdering::EvenGap)
}

/// `(i, a) ↦ 2^i φ(a)` over a semiring of characteristic 0.
pub fn rho<S: Semiring>(x: &TwistedElement, s: &S) -> Result<IndexedMatrix<S>> {
    let desc = s.descriptor();
    if !desc.is_char_zero() {
        return Err(Error::Inapplicable(format!(
            "rho needs a semiring of characteristic 0, {} has characteristic {}",
            desc.name, desc.characteristic
        )));
    }
    match x {
        TwistedElement::Twisted { twist, diagram } => Ok(phi(diagram, s)?.scale(&s.pow2(*twist))),
        TwistedElement::Zero { .. } => Err(Error::Inapplicable(
            "the zero morphism only exists in a truncated category".into(),
        )),
    }
}

/// `(i, a) ↦ 2^i φ(a)` and `0_{m,n} ↦ O` over a ring of characteristic `2^{d+1}`.
pub fn rho_d<S: Semiring>(x: &TwistedElement, d: u32, s: &S) -> Result<IndexedMatrix<S>> {
    let desc = s.descriptor();
    if !desc.is_ring_of_char_pow2(d) {
        return Err(Error::Inapplicable(format!(
            "rho_d with d={d} needs a ring of characteristic 2^{}, {} has characteristic {}",
            d + 1,
            desc.name,
            desc.characteristic
        )));
    }
    match x {
        TwistedElement::Twisted { twist, .. } if *twist > u64::from(d) => Err(
            Error::IndexOutOfRange(format!("twist {twist} exceeds truncation bound {d}")),
        ),
        TwistedElement::Twisted { twist, diagram } => Ok(phi(diagram, s)?.scale(&s.pow2(*twist))),
        TwistedElement::Zero { m, n } => Ok(IndexedMatrix::zeros(
            s.clone(),
            Labels::binary(*m)?,
            Labels::binary(*n)?,
        )),
    }
}

/// Brauer's matrix for `h_{i,n}`: the label-level Kronecker product
/// `I_{[i-1]} ⊗ M ⊗ I_{[n-i-1]}` with `M = φ(h_{1,2})`.
pub fn brauer_h<S: Semiring>(i: usize, n: usize, s: &S) -> Result<IndexedMatrix<S>> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::IndexOutOfRange(format!(
            "H needs 1 <= i <= n-1, got i={i}, n={n}"
        )));
    }
    let m = phi(&generator(GeneratorKind::H, 1, 2)?, s)?;
    let left = IndexedMatrix::identity(s.clone(), Labels::binary(i - 1)?);
    let right = IndexedMatrix::identity(s.clone(), Labels::binary(n - i - 1)?);
    left.kronecker(&m)?.kronecker(&right)
}

/// The two positional readings of `I ⊗ M ⊗ I` for `h_{i,n}`:
/// `(I_{2^{i-1}} ⊗ M ⊗ I_{2^{n-i-1}}, I_{2^{n-i-1}} ⊗ M ⊗ I_{2^{i-1}})`,
/// with the leftmost factor as the major (slowest-varying) index.
pub fn brauer_h_positional<S: Semiring>(
    i: usize,
    n: usize,
    s: &S,
) -> Result<(IndexedMatrix<S>, IndexedMatrix<S>)> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::IndexOutOfRange(format!(
            "H needs 1 <= i <= n-1, got i={i}, n={n}"
        )));
    }
    let m = phi(&generator(GeneratorKind::H, 1, 2)?, s)?;
    let id = |k: usize| -> Result<IndexedMatrix<S>> {
        Ok(IndexedMatrix::identity(s.clone(), Labels::binary(k)?))
    };
    let stated = id(i - 1)?
        .kronecker_positional(&m)?
        .kronecker_positional(&id(n - i - 1)?)?;
    let mirrored = id(n - i - 1)?
        .kronecker_positional(&m)?
        .kronecker_positional(&id(i - 1)?)?;
    Ok((stated, mirrored))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{compose, enumerate, Family};
    use crate::semiring::{Boolean, Integer, IntegerMod, MaxPlus, Natural};
    use num_bigint::BigInt;

    fn p(m: usize, n: usize, blocks: &[&[i32]]) -> Partition {
        Partition::from_blocks(m, n, blocks).unwrap()
    }

    fn fig1() -> (Partition, Partition) {
        (
            p(4, 6, &[&[1, 4], &[2, 3, -4, -5], &[-1, -2, -6], &[-3]]),
            p(6, 5, &[&[1, 2], &[3, 4, -1], &[5, -4, -5], &[6], &[-2, -3]]),
        )
    }

    fn rows01(m: &IndexedMatrix<Boolean>) -> Vec<String> {
        let (_, c) = m.dims();
        m.data()
            .chunks(c)
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }

    fn set(xs: &[usize]) -> u32 {
        xs.iter().map(|i| 1u32 << (i - 1)).sum()
    }

    #[test]
    fn p2_matrices() {
        let a = p(2, 2, &[&[1, 2, -1], &[-2]]);
        let b = p(2, 2, &[&[1, 2, -2], &[-1]]);
        let c = p(2, 2, &[&[1], &[2], &[-1, -2]]);
        assert_eq!(
            rows01(&phi(&a, &Boolean).unwrap()),
            ["1010", "0000", "0000", "0101"]
        );
        assert_eq!(
            rows01(&phi(&b, &Boolean).unwrap()),
            ["1100", "0000", "0000", "0011"]
        );
        assert_eq!(
            rows01(&phi(&c, &Boolean).unwrap()),
            ["1001", "1001", "1001", "1001"]
        );
    }

    #[test]
    fn fig1_products() {
        let (a, b) = fig1();
        let ab = compose(&a, &b).unwrap().product;
        let pb = phi(&a, &Boolean)
            .unwrap()
            .mat_mul(&phi(&b, &Boolean).unwrap())
            .unwrap();
        assert_eq!(pb, phi(&ab, &Boolean).unwrap());
        let pi = phi(&a, &Integer)
            .unwrap()
            .mat_mul(&phi(&b, &Integer).unwrap())
            .unwrap();
        assert_eq!(pi, phi(&ab, &Integer).unwrap().scale(&BigInt::from(2)));
        let pt = phi(&a, &MaxPlus)
            .unwrap()
            .mat_mul(&phi(&b, &MaxPlus).unwrap())
            .unwrap();
        assert_eq!(pt, phi(&ab, &MaxPlus).unwrap());
    }

    #[test]
    fn identity_and_empty_union() {
        for n in 0..5 {
            let i = IndexedMatrix::identity(Natural, Labels::binary(n).unwrap());
            assert_eq!(phi(&Partition::identity(n), &Natural).unwrap(), i);
        }
        for a in enumerate(Family::Partition, 2, 3).unwrap() {
            assert!(*phi(&a, &Boolean).unwrap().get(0, 0));
        }
    }

    #[test]
    fn image_and_preimage() {
        let (a, b) = fig1();
        assert_eq!(image(&a, set(&[2, 3])), set(&[4, 5]));
        assert_eq!(preimage(&b, set(&[1])), set(&[3, 4]));
        assert_eq!(image(&Partition::identity(3), 0b101), 0b101);
    }

    #[test]
    fn tensor_and_involution() {
        for a in enumerate(Family::Partition, 1, 1).unwrap() {
            for b in enumerate(Family::Partition, 1, 2).unwrap() {
                let lhs = phi(&a, &Boolean)
                    .unwrap()
                    .kronecker(&phi(&b, &Boolean).unwrap())
                    .unwrap();
                assert_eq!(lhs, phi(&a.tensor_sum(&b), &Boolean).unwrap());
            }
        }
        for a in enumerate(Family::Partition, 2, 2).unwrap() {
            assert_eq!(
                phi(&a, &Boolean).unwrap().transpose(),
                phi(&a.involution(), &Boolean).unwrap()
            );
        }
    }

    #[test]
    fn reduced_examples() {
        let id = Partition::identity(3);
        let even = reduced(&id, Parity::Even, &Boolean).unwrap();
        assert_eq!(
            even,
            IndexedMatrix::identity(Boolean, Labels::with_parity(3, 0).unwrap())
        );
        assert_eq!(even.dims(), (4, 4));
        let rank0 = p(2, 2, &[&[1, 2], &[-1, -2]]);
        let odd = reduced(&rank0, Parity::Odd, &Boolean).unwrap();
        assert_eq!(odd.dims(), (2, 2));
        assert!(odd.is_zero_matrix());
        let a = p(4, 4, &[&[1, -1], &[2, -2], &[3, 4], &[-3, -4]]);
        let b = p(4, 4, &[&[1, -2], &[2, -1], &[3, 4], &[-3, -4]]);
        assert_eq!(
            reduced(&a, Parity::Even, &Boolean).unwrap(),
            reduced(&b, Parity::Even, &Boolean).unwrap()
        );
        assert_ne!(
            reduced(&a, Parity::Odd, &Boolean).unwrap(),
            reduced(&b, Parity::Odd, &Boolean).unwrap()
        );
        let cap = p(0, 2, &[&[-1, -2]]);
        assert_eq!(reduced(&cap, Parity::Odd, &Boolean).unwrap().dims(), (0, 2));
        assert!(reduced(&p(1, 1, &[&[1], &[-1]]), Parity::Odd, &Boolean).is_err());
    }

    #[test]
    fn mu_examples() {
        let order = [
            0,
            set(&[1, 4]),
            set(&[1, 2, 3, 4]),
            set(&[1, 2]),
            set(&[3, 4]),
        ];
        let labels = Labels::new(4, order.to_vec()).unwrap();
        let a = p(4, 4, &[&[1, 4], &[2, 3], &[-1, -4], &[-2, -3]]);
        let b = p(4, 4, &[&[1, -1], &[4, -4], &[2, 3], &[-2, -3]]);
        let ma = mu(&a, &Boolean)
            .unwrap()
            .restrict(&labels, &labels)
            .unwrap();
        assert_eq!(rows01(&ma), ["11100", "11100", "11100", "00000", "00000"]);
        let mb = mu(&b, &Boolean)
            .unwrap()
            .restrict(&labels, &labels)
            .unwrap();
        assert_eq!(rows01(&mb), ["10000", "01100", "01100", "00000", "00000"]);
        let mbi = mu(&b, &Integer)
            .unwrap()
            .restrict(&labels, &labels)
            .unwrap();
        let sq = mbi.mat_mul(&mbi).unwrap();
        let expect: Vec<i64> = vec![
            1, 0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
        ];
        assert_eq!(
            sq.data(),
            &expect.into_iter().map(BigInt::from).collect::<Vec<_>>()[..]
        );
        let mai = mu(&a, &Integer).unwrap();
        assert_eq!(mai.mat_mul(&mai).unwrap(), mai.scale(&BigInt::from(3)));
        for n in 0..6 {
            let labels = Labels::ordered(SubsetOrdering::EvenGap, n).unwrap();
            assert_eq!(
                mu(&Partition::identity(n), &Boolean).unwrap(),
                IndexedMatrix::identity(Boolean, labels)
            );
        }
    }

    #[test]
    fn twisted_reps() {
        let (a, b) = fig1();
        let ab = compose(&a, &b).unwrap().product;
        let ra = rho(&TwistedElement::new(0, a.clone()), &Integer).unwrap();
        let rb = rho(&TwistedElement::new(0, b.clone()), &Integer).unwrap();
        assert_eq!(
            ra.mat_mul(&rb).unwrap(),
            rho(&TwistedElement::new(1, ab), &Integer).unwrap()
        );
        assert!(matches!(
            rho(&TwistedElement::identity(1), &Boolean),
            Err(Error::Inapplicable(_))
        ));
        let z4 = IntegerMod::pow2(2).unwrap();
        let xa = rho_d(&TwistedElement::new(1, a), 1, &z4).unwrap();
        let xb = rho_d(&TwistedElement::new(1, b), 1, &z4).unwrap();
        assert!(xa.mat_mul(&xb).unwrap().is_zero_matrix());
        assert!(rho_d(&TwistedElement::identity(1), 2, &z4).is_err());
        assert!(rho_d(&TwistedElement::new(2, Partition::identity(1)), 1, &z4).is_err());
    }

    #[test]
    fn brauer_h_matches_phi() {
        let h = generator(GeneratorKind::H, 1, 2).unwrap();
        assert_eq!(
            brauer_h(1, 2, &Boolean).unwrap(),
            phi(&h, &Boolean).unwrap()
        );
        for n in 2..=6 {
            for i in 1..n {
                let hin = phi(&generator(GeneratorKind::H, i, n).unwrap(), &Boolean).unwrap();
                let built = brauer_h(i, n, &Boolean).unwrap();
                assert_eq!(built, hin);
                assert_eq!(built.transpose(), built);
                assert_eq!(built.mat_mul(&built).unwrap(), built);
            }
        }
        assert!(brauer_h(2, 2, &Boolean).is_err());
    }
}
