use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::rank::RationalSubspace;
use crate::diagram::{enumerate, Family, Partition, TwistedElement};
use crate::error::{Error, Result};
use crate::rep::subset_string;

/// Largest row size for which closures are computed.
pub const MAX_CLOSURE_SIZE: usize = 4;

/// A vector `Σ λ_X v_{n,X}` of the module `V_n`, with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    n: usize,
    coords: BTreeMap<u32, BigRational>,
}

impl ModuleVector {
    pub fn zero(n: usize) -> Self {
        ModuleVector {
            n,
            coords: BTreeMap::new(),
        }
    }

    /// The basis vector `v_{n,X}`.
    pub fn basis(n: usize, x: u32) -> Result<Self> {
        let mut v = Self::zero(n);
        v.add_coord(x, BigRational::one())?;
        Ok(v)
    }

    pub fn from_coords(
        n: usize,
        coords: impl IntoIterator<Item = (u32, BigRational)>,
    ) -> Result<Self> {
        let mut v = Self::zero(n);
        for (x, c) in coords {
            v.add_coord(x, c)?;
        }
        Ok(v)
    }

    pub fn from_dense(n: usize, dense: &[BigRational]) -> Self {
        let coords = dense
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(x, c)| (x as u32, c.clone()))
            .collect();
        ModuleVector { n, coords }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &BTreeMap<u32, BigRational> {
        &self.coords
    }

    pub fn get(&self, x: u32) -> BigRational {
        self.coords
            .get(&x)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn add_coord(&mut self, x: u32, c: BigRational) -> Result<()> {
        if self.n > 31 || x > self.full() {
            return Err(Error::IndexOutOfRange(format!(
                "{} is not a subset of [{}]",
                subset_string(x),
                self.n
            )));
        }
        let e = self.coords.entry(x).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(&x);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch {
                expected_m: self.n,
                expected_n: 1,
                found_m: other.n,
                found_n: 1,
            });
        }
        let mut out = self.clone();
        for (&x, c) in &other.coords {
            out.add_coord(x, c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.n);
        }
        ModuleVector {
            n: self.n,
            coords: self.coords.iter().map(|(&x, c)| (x, c * q)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn to_dense(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); 1 << self.n];
        for (&x, c) in &self.coords {
            out[x as usize] = c.clone();
        }
        out
    }

    /// `λ_X = λ_{X^c}` for all `X`.
    pub fn is_symmetric(&self) -> bool {
        self.coords
            .iter()
            .all(|(&x, c)| self.get(self.full() ^ x) == *c)
    }

    /// `λ_X = -λ_{X^c}` for all `X`.
    pub fn is_antisymmetric(&self) -> bool {
        self.coords
            .iter()
            .all(|(&x, c)| self.get(self.full() ^ x) == -c)
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}:", self.n)?;
        if self.coords.is_empty() {
            return f.write_str(" 0");
        }
        for (k, (&x, c)) in self.coords.iter().enumerate() {
            f.write_str(if k == 0 { " " } else { " + " })?;
            write!(f, "{c}*v{}", subset_string(x))?;
        }
        Ok(())
    }
}

/// `(i, a) · v = 2^i φ(a) v`.
pub fn module_action(x: &TwistedElement, v: &ModuleVector) -> Result<ModuleVector> {
    let TwistedElement::Twisted { twist, diagram } = x else {
        return Err(Error::Inapplicable(
            "the module is defined for the untruncated twisted category".into(),
        ));
    };
    let mut out = diagram_action(diagram, v)?;
    if *twist > 0 {
        out = out.scale(&BigRational::from_integer(BigInt::one() << *twist));
    }
    Ok(out)
}

fn diagram_action(a: &Partition, v: &ModuleVector) -> Result<ModuleVector> {
    if a.n() != v.n {
        return Err(Error::ShapeMismatch {
            expected_m: a.m(),
            expected_n: v.n,
            found_m: a.m(),
            found_n: a.n(),
        });
    }
    let blocks = a.block_masks();
    let free: Vec<u32> = blocks
        .iter()
        .filter(|(_, l)| *l == 0)
        .map(|(u, _)| *u as u32)
        .collect();
    let mut out = ModuleVector::zero(a.m());
    'outer: for (&y, c) in &v.coords {
        let y = u64::from(y);
        let mut forced = 0u32;
        for &(u, l) in &blocks {
            if l == 0 {
                continue;
            }
            if y & l == l {
                forced |= u as u32;
            } else if y & l != 0 {
                continue 'outer;
            }
        }
        for choice in 0u32..1 << free.len() {
            let mut x = forced;
            for (k, u) in free.iter().enumerate() {
                if choice >> k & 1 == 1 {
                    x |= u;
                }
            }
            out.add_coord(x, c.clone())?;
        }
    }
    Ok(out)
}

/// `v = v⁺ + v⁻` with `v⁺` complement-symmetric and `v⁻` antisymmetric.
pub fn plus_minus_split(v: &ModuleVector) -> (ModuleVector, ModuleVector) {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut plus = ModuleVector::zero(v.n);
    let mut minus = ModuleVector::zero(v.n);
    for (&x, c) in &v.coords {
        let xc = v.full() ^ x;
        let h = c * &half;
        plus.add_coord(x, h.clone()).unwrap();
        plus.add_coord(xc, h.clone()).unwrap();
        minus.add_coord(x, h.clone()).unwrap();
        minus.add_coord(xc, -h).unwrap();
    }
    (plus, minus)
}

/// Spanning vectors `v_X ± v_{X^c}` of `V_n^±`, one per complementary pair.
pub fn plus_basis(n: usize) -> Vec<ModuleVector> {
    complement_pairs(n, true)
}

pub fn minus_basis(n: usize) -> Vec<ModuleVector> {
    complement_pairs(n, false)
}

fn complement_pairs(n: usize, plus: bool) -> Vec<ModuleVector> {
    let full = ((1u64 << n) - 1) as u32;
    let sign = if plus {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    (0..=full)
        .filter(|&x| x <= full ^ x)
        .map(|x| {
            let mut v = ModuleVector::basis(n, x).unwrap();
            v.add_coord(full ^ x, sign.clone()).unwrap();
            v
        })
        .filter(|v| !v.is_zero())
        .collect()
}

/// The smallest family of subspaces `W_k ⊆ V_k` (`k ≤ max_m`) containing the
/// seed and closed under every `(0, a)` with `a ∈ P_{k,l}`, `k, l ≤ max_m`.
#[derive(Clone, Debug)]
pub struct ModuleClosure {
    spaces: Vec<RationalSubspace>,
}

impl ModuleClosure {
    pub fn max_m(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n].dim()
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        v.n <= self.max_m() && self.spaces[v.n].contains(&v.to_dense())
    }

    pub fn basis(&self, n: usize) -> Vec<ModuleVector> {
        self.spaces[n]
            .basis()
            .iter()
            .map(|row| ModuleVector::from_dense(n, row))
            .collect()
    }

    /// Whether slice `n` is exactly the span of `vectors`.
    pub fn slice_equals(&self, n: usize, vectors: &[ModuleVector]) -> bool {
        let mut span = RationalSubspace::new(1 << n);
        for v in vectors {
            span.insert(&v.to_dense());
        }
        span.dim() == self.dim(n) && vectors.iter().all(|v| self.contains(v))
    }
}

pub fn submodule_closure(seed: &ModuleVector, max_m: usize) -> Result<ModuleClosure> {
    if max_m > MAX_CLOSURE_SIZE {
        return Err(Error::GuardExceeded {
            size: max_m,
            limit: MAX_CLOSURE_SIZE,
        });
    }
    if seed.n > max_m {
        return Err(Error::IndexOutOfRange(format!(
            "seed lives in V_{} beyond max_m = {max_m}",
            seed.n
        )));
    }
    let hom: Vec<Vec<Vec<Partition>>> = (0..=max_m)
        .map(|m| {
            (0..=max_m)
                .map(|n| enumerate(Family::Partition, m, n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut spaces: Vec<RationalSubspace> =
        (0..=max_m).map(|k| RationalSubspace::new(1 << k)).collect();
    let mut queue = VecDeque::new();
    if spaces[seed.n].insert(&seed.to_dense()) {
        queue.push_back(seed.clone());
    }
    while let Some(v) = queue.pop_front() {
        for m in 0..=max_m {
            let images: Vec<ModuleVector> = hom[m][v.n]
                .par_iter()
                .map(|a| diagram_action(a, &v))
                .collect::<Result<_>>()?;
            for w in images {
                if !w.is_zero() && spaces[m].insert(&w.to_dense()) {
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(ModuleClosure { spaces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn identity_acts_trivially() {
        let v = ModuleVector::from_coords(3, [(0b101, q(2)), (0b010, q(-1))]).unwrap();
        assert_eq!(module_action(&TwistedElement::identity(3), &v).unwrap(), v);
        assert_eq!(
            module_action(&TwistedElement::new(2, Partition::identity(3)), &v).unwrap(),
            v.scale(&q(4))
        );
    }

    #[test]
    fn two_block_partition_doubles() {
        for (m, n) in [(1, 1), (2, 3), (3, 2)] {
            let upper: Vec<i32> = (1..=n as i32).collect();
            let lower: Vec<i32> = (1..=m as i32).map(|j| -j).collect();
            let a = Partition::from_blocks(n, m, &[upper, lower]).unwrap();
            let full_m = ((1u32 << m) - 1, 0);
            let w = ModuleVector::from_coords(m, [(full_m.0, q(1)), (full_m.1, q(1))]).unwrap();
            let out = module_action(&TwistedElement::new(0, a), &w).unwrap();
            let expect =
                ModuleVector::from_coords(n, [((1u32 << n) - 1, q(2)), (0, q(2))]).unwrap();
            assert_eq!(out, expect);
        }
    }

    #[test]
    fn split_of_basis_vector() {
        let v = ModuleVector::basis(3, 0b001).unwrap();
        let (p, m) = plus_minus_split(&v);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(
            p,
            ModuleVector::from_coords(3, [(0b001, half.clone()), (0b110, half.clone())]).unwrap()
        );
        assert_eq!(
            m,
            ModuleVector::from_coords(3, [(0b001, half.clone()), (0b110, -half)]).unwrap()
        );
        assert!(p.is_symmetric() && m.is_antisymmetric());
        let sym = plus_basis(3)[1].clone();
        assert_eq!(plus_minus_split(&sym), (sym.clone(), ModuleVector::zero(3)));
        for n in 1..5 {
            assert_eq!(plus_basis(n).len(), 1 << (n - 1));
            assert_eq!(minus_basis(n).len(), 1 << (n - 1));
        }
        assert_eq!(minus_basis(0).len(), 0);
    }

    #[test]
    fn closure_of_symmetric_seed() {
        let seed = ModuleVector::from_coords(2, [(0b11, q(1)), (0, q(1))]).unwrap();
        let c = submodule_closure(&seed, 3).unwrap();
        for n in 0..=3 {
            assert!(c.slice_equals(n, &plus_basis(n)), "n={n}");
        }
        let seed = ModuleVector::from_coords(2, [(0b11, q(1)), (0, q(-1))]).unwrap();
        let c = submodule_closure(&seed, 3).unwrap();
        for n in 0..=3 {
            assert!(c.slice_equals(n, &minus_basis(n)), "n={n}");
        }
        assert!(submodule_closure(&seed, 5).is_err());
    }
}
