//! Exact commutative semirings with structural flags.
//!
//! Each instance declares its characteristic instead of probing for it:
//! a finite number of additions can never certify characteristic 0.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Characteristic {
    Zero,
    Finite(u64),
    /// `1 + 1 = 1`; the additive submonoid generated by 1 is `{0, 1}`.
    Idempotent,
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Zero => f.write_str("0"),
            Characteristic::Finite(c) => write!(f, "{c}"),
            Characteristic::Idempotent => f.write_str("idempotent"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiringDescriptor {
    pub name: String,
    pub is_idempotent: bool,
    pub characteristic: Characteristic,
    pub supports_negation: bool,
}

impl SemiringDescriptor {
    pub fn is_char_zero(&self) -> bool {
        self.characteristic == Characteristic::Zero
    }

    /// True for rings of characteristic exactly `2^{d+1}`.
    pub fn is_ring_of_char_pow2(&self, d: u32) -> bool {
        self.supports_negation
            && d < 63
            && self.characteristic == Characteristic::Finite(1u64 << (d + 1))
    }
}

/// A commutative semiring with exact arithmetic on `Self::Elem`.
pub trait Semiring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn descriptor(&self) -> SemiringDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// A pseudo-random element for law sampling.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Every element, when the carrier is small enough to list.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn render(&self, a: &Self::Elem) -> String;

    fn to_json(&self, a: &Self::Elem) -> Value {
        Value::String(self.render(a))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn from_bool(&self, b: bool) -> Self::Elem {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }

    /// `1 + ⋯ + 1` (`k` terms), by double-and-add.
    fn embed_natural(&self, k: u64) -> Self::Elem {
        let mut acc = self.zero();
        let mut power = self.one();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &power);
            }
            k >>= 1;
            if k > 0 {
                power = self.add(&power, &power);
            }
        }
        acc
    }

    /// The element `2^i = (1+1)^i`.
    fn pow2(&self, i: u64) -> Self::Elem {
        let two = self.add(&self.one(), &self.one());
        let mut acc = self.one();
        for _ in 0..i {
            acc = self.mul(&acc, &two);
        }
        acc
    }
}

/// Semirings that can represent (some) rational coefficients.
pub trait ExactRing: Semiring {
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Boolean;

impl Semiring for Boolean {
    type Elem = bool;

    fn descriptor(&self) -> SemiringDescriptor {
        SemiringDescriptor {
            name: "boolean".into(),
            is_idempotent: true,
            characteristic: Characteristic::Idempotent,
            supports_negation: false,
        }
    }
    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        rng.gen()
    }
    fn elements(&self) -> Option<Vec<bool>> {
        Some(vec![false, true])
    }
    fn render(&self, a: &bool) -> String {
        u8::from(*a).to_string()
    }
    fn to_json(&self, a: &bool) -> Value {
        Value::from(u8::from(*a))
    }
    fn embed_natural(&self, k: u64) -> bool {
        k > 0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Natural;

impl Semiring for Natural {
    type Elem = BigUint;

    fn descriptor(&self) -> SemiringDescriptor {
        SemiringDescriptor {
            name: "nat".into(),
            is_idempotent: false,
            characteristic: Characteristic::Zero,
            supports_negation: false,
        }
    }
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a + b
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        sample_magnitude(rng)
    }
    fn render(&self, a: &BigUint) -> String {
        a.to_string()
    }
    fn to_json(&self, a: &BigUint) -> Value {
        a.to_u64()
            .map(Value::from)
            .unwrap_or_else(|| Value::String(a.to_string()))
    }
    fn embed_natural(&self, k: u64) -> BigUint {
        BigUint::from(k)
    }
    fn pow2(&self, i: u64) -> BigUint {
        BigUint::one() << i
    }
}

impl ExactRing for Natural {
    fn from_rational(&self, q: &BigRational) -> Option<BigUint> {
        (q.is_integer() && q.numer().sign() != Sign::Minus).then(|| q.numer().magnitude().clone())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integer;

impl Semiring for Integer {
    type Elem = BigInt;

    fn descriptor(&self) -> SemiringDescriptor {
        SemiringDescriptor {
            name: "int".into(),
            is_idempotent: false,
            characteristic: Characteristic::Zero,
            supports_negation: true,
        }
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigInt {
        let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
        BigInt::from_biguint(sign, sample_magnitude(rng))
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn to_json(&self, a: &BigInt) -> Value {
        a.to_i64()
            .map(Value::from)
            .unwrap_or_else(|| Value::String(a.to_string()))
    }
    fn embed_natural(&self, k: u64) -> BigInt {
        BigInt::from(k)
    }
    fn pow2(&self, i: u64) -> BigInt {
        BigInt::one() << i
    }
}

impl ExactRing for Integer {
    fn from_rational(&self, q: &BigRational) -> Option<BigInt> {
        q.is_integer().then(|| q.numer().clone())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rational;

impl Semiring for Rational {
    type Elem = BigRational;

    fn descriptor(&self) -> SemiringDescriptor {
        SemiringDescriptor {
            name: "rational".into(),
            is_idempotent: false,
            characteristic: Characteristic::Zero,
            supports_negation: true,
        }
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num = Integer.sample(rng);
        let den = BigInt::from(rng.gen_range(1u32..=64));
        BigRational::new(num, den)
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn to_json(&self, a: &BigRational) -> Value {
        match (a.is_integer(), a.numer().to_i64()) {
            (true, Some(v)) => Value::from(v),
            _ => Value::String(a.to_string()),
        }
    }
    fn embed_natural(&self, k: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(k))
    }
    fn pow2(&self, i: u64) -> BigRational {
        BigRational::from_integer(BigInt::one() << i)
    }
}

impl ExactRing for Rational {
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
}

/// The ring `Z/2^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegerMod {
    exponent: u32,
}

impl IntegerMod {
    /// `Z/2^exponent`, with `1 ≤ exponent ≤ 62`.
    pub fn pow2(exponent: u32) -> Result<Self> {
        if exponent == 0 || exponent > 62 {
            return Err(Error::Inapplicable(format!(
                "modulus 2^{exponent} unsupported (need 1 <= k <= 62; 2^0 is the trivial ring)"
            )));
        }
        Ok(IntegerMod { exponent })
    }

    /// The ring of characteristic `2^{d+1}` used by the truncated twisted representation.
    pub fn for_truncation(d: u32) -> Result<Self> {
        Self::pow2(d + 1)
    }

    pub fn modulus(&self) -> u64 {
        1u64 << self.exponent
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }
}

impl Semiring for IntegerMod {
    type Elem = u64;

    fn descriptor(&self) -> SemiringDescriptor {
        SemiringDescriptor {
            name: format!("mod:2^{}", self.exponent),
            is_idempotent: false,
            characteristic: Characteristic::Finite(self.modulus()),
            supports_negation: true,
        }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) & (self.modulus() - 1)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) & (self.modulus() as u128 - 1)) as u64
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.modulus())
    }
    fn elements(&self) -> Option<Vec<u64>> {
        (self.exponent <= 4).then(|| (0..self.modulus()).collect())
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn to_json(&self, a: &u64) -> Value {
        Value::from(*a)
    }
    fn embed_natural(&self, k: u64) -> u64 {
        k & (self.modulus() - 1)
    }
}

impl ExactRing for IntegerMod {
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        if !q.is_integer() {
            return None;
        }
        let m = BigInt::from(self.modulus());
        let r = ((q.numer() % &m) + &m) % &m;
        r.to_u64()
    }
}

/// A max-plus value over the naturals; `NegInf` is the additive zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tropical {
    NegInf,
    Finite(u64),
}

/// The max-plus semiring `(ℕ ∪ {−∞}, max, +)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MaxPlus;

impl Semiring for MaxPlus {
    type Elem = Tropical;

    fn descriptor(&self) -> SemiringDescriptor {
        SemiringDescriptor {
            name: "tropical".into(),
            is_idempotent: true,
            characteristic: Characteristic::Idempotent,
            supports_negation: false,
        }
    }
    fn zero(&self) -> Tropical {
        Tropical::NegInf
    }
    fn one(&self) -> Tropical {
        Tropical::Finite(0)
    }
    fn add(&self, a: &Tropical, b: &Tropical) -> Tropical {
        *a.max(b)
    }
    fn mul(&self, a: &Tropical, b: &Tropical) -> Tropical {
        match (a, b) {
            (Tropical::Finite(x), Tropical::Finite(y)) => {
                Tropical::Finite(x.checked_add(*y).expect("tropical value overflow"))
            }
            _ => Tropical::NegInf,
        }
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Tropical {
        if rng.gen_ratio(1, 8) {
            Tropical::NegInf
        } else {
            Tropical::Finite(rng.gen_range(0..1000))
        }
    }
    fn render(&self, a: &Tropical) -> String {
        match a {
            Tropical::NegInf => "-inf".into(),
            Tropical::Finite(x) => x.to_string(),
        }
    }
    fn to_json(&self, a: &Tropical) -> Value {
        match a {
            Tropical::NegInf => Value::String("-inf".into()),
            Tropical::Finite(x) => Value::from(*x),
        }
    }
    fn embed_natural(&self, k: u64) -> Tropical {
        self.from_bool(k > 0)
    }
}

fn sample_magnitude<R: Rng + ?Sized>(rng: &mut R) -> BigUint {
    match rng.gen_range(0..4) {
        0 => BigUint::from(rng.gen_range(0u32..3)),
        1 | 2 => BigUint::from(rng.gen_range(0u64..1000)),
        _ => (BigUint::from(rng.gen::<u64>()) << 64u32) + BigUint::from(rng.gen::<u64>()),
    }
}

/// CLI selector strings: `boolean`, `nat`, `int`, `rational`, `tropical`, `mod:2^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemiringSelector {
    Boolean,
    Natural,
    Integer,
    Rational,
    Tropical,
    Mod(IntegerMod),
}

impl FromStr for SemiringSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse {
            position: 0,
            message: msg,
        };
        Ok(match s {
            "boolean" | "bool" => SemiringSelector::Boolean,
            "nat" | "natural" => SemiringSelector::Natural,
            "int" | "integer" => SemiringSelector::Integer,
            "rational" | "rat" => SemiringSelector::Rational,
            "tropical" | "maxplus" => SemiringSelector::Tropical,
            _ => {
                let rest = s
                    .strip_prefix("mod:")
                    .ok_or_else(|| bad(format!("unknown semiring `{s}`")))?;
                let exponent = if let Some(k) = rest.strip_prefix("2^") {
                    k.parse::<u32>()
                        .map_err(|_| bad(format!("bad exponent in `{s}`")))?
                } else {
                    let m: u64 = rest
                        .parse()
                        .map_err(|_| bad(format!("bad modulus in `{s}`")))?;
                    if !m.is_power_of_two() {
                        return Err(bad(format!("modulus {m} is not a power of two")));
                    }
                    m.trailing_zeros()
                };
                SemiringSelector::Mod(IntegerMod::pow2(exponent)?)
            }
        })
    }
}

impl fmt::Display for SemiringSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringSelector::Boolean => f.write_str("boolean"),
            SemiringSelector::Natural => f.write_str("nat"),
            SemiringSelector::Integer => f.write_str("int"),
            SemiringSelector::Rational => f.write_str("rational"),
            SemiringSelector::Tropical => f.write_str("tropical"),
            SemiringSelector::Mod(r) => write!(f, "mod:2^{}", r.exponent()),
        }
    }
}

/// Runs `$body` with `$s` bound to a reference to the selected semiring.
#[macro_export]
macro_rules! with_semiring {
    ($sel:expr, |$s:ident| $body:expr) => {
        match $sel {
            $crate::semiring::SemiringSelector::Boolean => {
                let $s = &$crate::semiring::Boolean;
                $body
            }
            $crate::semiring::SemiringSelector::Natural => {
                let $s = &$crate::semiring::Natural;
                $body
            }
            $crate::semiring::SemiringSelector::Integer => {
                let $s = &$crate::semiring::Integer;
                $body
            }
            $crate::semiring::SemiringSelector::Rational => {
                let $s = &$crate::semiring::Rational;
                $body
            }
            $crate::semiring::SemiringSelector::Tropical => {
                let $s = &$crate::semiring::MaxPlus;
                $body
            }
            $crate::semiring::SemiringSelector::Mod(ring) => {
                let $s = &ring;
                $body
            }
        }
    };
}

/// Outcome of [`semiring_laws_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub semiring: String,
    pub triples_checked: usize,
    pub exhaustive: bool,
    pub violations: Vec<String>,
    /// Measured `1 + 1 == 1`.
    pub measured_idempotent: bool,
    /// Whether the measured additive behaviour of 1 agrees with the descriptor.
    pub flags_consistent: bool,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.flags_consistent
    }
}

/// Checks the semiring axioms on sampled (or, for small carriers, all) triples
/// and compares the descriptor flags with the measured behaviour of `1`.
pub fn semiring_laws_check<S: Semiring>(s: &S, samples: usize, seed: u64) -> LawReport {
    let desc = s.descriptor();
    let mut violations = Vec::new();
    let mut triples = 0;

    let mut check = |a: &S::Elem, b: &S::Elem, c: &S::Elem| {
        triples += 1;
        let r = |x: &S::Elem| s.render(x);
        let mut fail = |law: &str| {
            if violations.len() < 32 {
                violations.push(format!("{law} fails at ({}, {}, {})", r(a), r(b), r(c)));
            }
        };
        let (zero, one) = (s.zero(), s.one());
        if s.add(&s.add(a, b), c) != s.add(a, &s.add(b, c)) {
            fail("additive associativity");
        }
        if s.add(a, b) != s.add(b, a) {
            fail("additive commutativity");
        }
        if s.add(a, &zero) != *a {
            fail("additive identity");
        }
        if s.mul(&s.mul(a, b), c) != s.mul(a, &s.mul(b, c)) {
            fail("multiplicative associativity");
        }
        if s.mul(a, &one) != *a || s.mul(&one, a) != *a {
            fail("multiplicative identity");
        }
        if s.mul(a, &s.add(b, c)) != s.add(&s.mul(a, b), &s.mul(a, c)) {
            fail("left distributivity");
        }
        if s.mul(&s.add(a, b), c) != s.add(&s.mul(a, c), &s.mul(b, c)) {
            fail("right distributivity");
        }
        if !s.is_zero(&s.mul(a, &zero)) || !s.is_zero(&s.mul(&zero, a)) {
            fail("zero annihilation");
        }
        if s.mul(a, b) != s.mul(b, a) {
            fail("multiplicative commutativity");
        }
    };

    let exhaustive = match s.elements() {
        Some(all) => {
            for a in &all {
                for b in &all {
                    for c in &all {
                        check(a, b, c);
                    }
                }
            }
            true
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let special = [s.zero(), s.one()];
            for k in 0..samples {
                let pick = |rng: &mut ChaCha8Rng, j: usize| {
                    if k < 9 {
                        special[(k / [1, 3, 9][j]) % 3 % 2].clone()
                    } else {
                        s.sample(rng)
                    }
                };
                let (a, b, c) = (pick(&mut rng, 0), pick(&mut rng, 1), pick(&mut rng, 2));
                check(&a, &b, &c);
            }
            false
        }
    };

    if s.zero() == s.one() {
        violations.push("trivial semiring: 0 = 1".into());
    }
    let one = s.one();
    let measured_idempotent = s.add(&one, &one) == one;
    let flags_consistent = measured_idempotent == desc.is_idempotent
        && match desc.characteristic {
            Characteristic::Idempotent => measured_idempotent,
            Characteristic::Zero => {
                let mut seen = std::collections::HashSet::new();
                let mut acc = s.zero();
                seen.insert(acc.clone());
                (1..=64).all(|_| {
                    acc = s.add(&acc, &one);
                    seen.insert(acc.clone())
                })
            }
            Characteristic::Finite(c) => {
                let limit = c.min(1 << 16);
                let mut acc = s.zero();
                let mut ok = true;
                for k in 1..=limit {
                    acc = s.add(&acc, &one);
                    let is_zero = s.is_zero(&acc);
                    if (k == c) != is_zero {
                        ok = false;
                        break;
                    }
                }
                ok && (!desc.supports_negation || c >= 2)
            }
        };

    LawReport {
        semiring: desc.name,
        triples_checked: triples,
        exhaustive,
        violations,
        measured_idempotent,
        flags_consistent,
    }
}
