use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{compose, Cursor, Partition, Vertex};
use crate::error::{Error, Result};
use crate::rep::{phi, IndexedMatrix, Labels};
use crate::semiring::ExactRing;

/// A formal rational combination of diagrams of one shape `(m, n)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "CombinationRepr", into = "CombinationRepr")]
pub struct LinearCombination {
    m: usize,
    n: usize,
    terms: BTreeMap<Partition, BigRational>,
}

impl LinearCombination {
    pub fn zero(m: usize, n: usize) -> Self {
        LinearCombination {
            m,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(a: Partition) -> Self {
        Self::from_terms(a.m(), a.n(), [(a, BigRational::one())])
            .expect("shape taken from the diagram")
    }

    pub fn from_terms(
        m: usize,
        n: usize,
        terms: impl IntoIterator<Item = (Partition, BigRational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(m, n);
        for (a, c) in terms {
            out.add_term(a, c)?;
        }
        Ok(out)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &Partition) -> BigRational {
        self.terms.get(a).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, a: Partition, c: BigRational) -> Result<()> {
        if a.shape() != (self.m, self.n) {
            return Err(crate::diagram::shape_mismatch((self.m, self.n), a.shape()));
        }
        let entry = self.terms.entry(a).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.m, self.n);
        }
        let terms = self.terms.iter().map(|(a, c)| (a.clone(), c * q)).collect();
        LinearCombination {
            m: self.m,
            n: self.n,
            terms,
        }
    }

    pub fn involution(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.involution(), c.clone()))
            .collect();
        LinearCombination {
            m: self.n,
            n: self.m,
            terms,
        }
    }
}

/// `u ⋆ v` in the linear category with parameter `δ`: `a ⋆ b = δ^{Φ(a,b)} ab`.
pub fn linear_compose(
    u: &LinearCombination,
    v: &LinearCombination,
    delta: &BigRational,
) -> Result<LinearCombination> {
    if u.n != v.m {
        return Err(Error::CompositionShape {
            m1: u.m,
            n1: u.n,
            m2: v.m,
            n2: v.n,
        });
    }
    let mut out = LinearCombination::zero(u.m, v.n);
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            let prod = compose(a, b)?;
            let weight = Pow::pow(delta, prod.floats);
            out.add_term(prod.product, x * y * weight)?;
        }
    }
    Ok(out)
}

/// `Σ c_a φ(a)` over an exact ring of characteristic 0.
pub fn phi_linear<S: ExactRing>(u: &LinearCombination, s: &S) -> Result<IndexedMatrix<S>> {
    let desc = s.descriptor();
    if !(desc.is_char_zero() && desc.supports_negation) {
        return Err(Error::Inapplicable(format!(
            "the linear representation needs a ring of characteristic 0, not {}",
            desc.name
        )));
    }
    let mut acc = IndexedMatrix::zeros(s.clone(), Labels::binary(u.m)?, Labels::binary(u.n)?);
    for (a, c) in &u.terms {
        let coefficient = s.from_rational(c).ok_or_else(|| {
            Error::Inapplicable(format!(
                "coefficient {c} is not an element of {}",
                desc.name
            ))
        })?;
        acc = acc.add(&phi(a, s)?.scale(&coefficient))?;
    }
    Ok(acc)
}

impl fmt::Display for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}:", self.m, self.n)?;
        if self.terms.is_empty() {
            return f.write_str(" 0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            f.write_str(if k == 0 { " " } else { " + " })?;
            write!(f, "{c}*{}", crate::diagram::format_blocks(a))?;
        }
        Ok(())
    }
}

impl FromStr for LinearCombination {
    type Err = Error;

    /// Accepts an optional `m,n:` header followed by terms `[c*]{…}{…}`
    /// joined by `+` or `-`. Terms may carry their own header; without a
    /// global header the first term's header fixes the shape.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut shape = cur.try_header()?;
        cur.skip_ws();
        let mut pending: Vec<(usize, usize, usize, Vec<Vec<Vertex>>, BigRational)> = Vec::new();
        if cur.rest().trim() == "0" {
            let (m, n) =
                shape.ok_or_else(|| cur.error("the zero combination needs an `m,n:` header"))?;
            return Ok(LinearCombination::zero(m, n));
        }
        let mut sign = BigRational::one();
        loop {
            cur.skip_ws();
            while let Some(c @ ('+' | '-')) = cur.peek() {
                cur.bump();
                if c == '-' {
                    sign = -sign;
                }
                cur.skip_ws();
            }
            let start = cur.position();
            let mut coefficient = BigRational::one();
            let mut header = cur.try_header()?;
            let explicit = header.is_none() && cur.peek().is_some_and(|c| c.is_ascii_digit());
            if explicit {
                coefficient = rational(&mut cur)?;
                cur.expect('*')?;
                header = cur.try_header()?;
            }
            let blocks = cur.blocks()?;
            if blocks.is_empty() && header.is_none() && !explicit {
                return Err(cur.error("expected a term"));
            }
            if let (Some(h), None) = (header, shape) {
                shape = Some(h);
            }
            let (m, n) = header.or(shape).ok_or_else(|| Error::Parse {
                position: start,
                message: "term without a shape header".into(),
            })?;
            pending.push((start, m, n, blocks, sign.clone() * coefficient));
            sign = BigRational::one();
            cur.skip_ws();
            if cur.at_end() {
                break;
            }
            if !matches!(cur.peek(), Some('+' | '-')) {
                return Err(cur.error("expected `+` or `-` between terms"));
            }
        }
        let (m, n) = shape.expect("at least one term was parsed");
        let mut out = LinearCombination::zero(m, n);
        for (position, tm, tn, blocks, c) in pending {
            let a = Partition::from_blocks(tm, tn, &blocks).map_err(|e| Error::Parse {
                position,
                message: e.to_string(),
            })?;
            out.add_term(a, c).map_err(|e| Error::Parse {
                position,
                message: e.to_string(),
            })?;
        }
        Ok(out)
    }
}

fn rational(cur: &mut Cursor<'_>) -> Result<BigRational> {
    let digits = |cur: &mut Cursor<'_>| -> Result<BigInt> {
        let start = cur.position();
        while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            cur.bump();
        }
        cur.source()[start..cur.position()]
            .parse::<BigInt>()
            .map_err(|_| Error::Parse {
                position: start,
                message: "expected digits".into(),
            })
    };
    let num = digits(cur)?;
    if cur.peek() == Some('/') {
        cur.bump();
        let position = cur.position();
        let den = digits(cur)?;
        if den.is_zero() {
            return Err(Error::Parse {
                position,
                message: "zero denominator".into(),
            });
        }
        return Ok(BigRational::new(num, den));
    }
    Ok(BigRational::from_integer(num))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let mut cur = Cursor::new(body);
    let q = rational(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing characters in coefficient"));
    }
    Ok(if negative { -q } else { q })
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coefficient: String,
    blocks: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct CombinationRepr {
    m: usize,
    n: usize,
    terms: Vec<TermRepr>,
}

impl From<LinearCombination> for CombinationRepr {
    fn from(u: LinearCombination) -> Self {
        let terms = u
            .terms
            .iter()
            .map(|(a, c)| TermRepr {
                coefficient: c.to_string(),
                blocks: a.blocks(),
            })
            .collect();
        CombinationRepr {
            m: u.m,
            n: u.n,
            terms,
        }
    }
}

impl TryFrom<CombinationRepr> for LinearCombination {
    type Error = Error;

    fn try_from(r: CombinationRepr) -> Result<Self> {
        let mut out = LinearCombination::zero(r.m, r.n);
        for t in r.terms {
            let c = parse_rational(&t.coefficient)?;
            out.add_term(Partition::from_blocks(r.m, r.n, &t.blocks)?, c)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{cap_element, generator, GeneratorKind};
    use crate::semiring::{Integer, Rational};

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn text_round_trip() {
        let u: LinearCombination = "2,2: 3*{1,2}{1',2'} + -1*{1,1'}{2,2'}".parse().unwrap();
        assert_eq!(u.terms().len(), 2);
        let again: LinearCombination = u.to_string().parse().unwrap();
        assert_eq!(again, u);
        let v: LinearCombination = "2,2:{1,2}{1',2'} - 1/2*2,2:{1,1'}{2,2'} - {1,2}{1',2'}"
            .parse()
            .unwrap();
        assert_eq!(v.terms().len(), 1);
        assert_eq!(
            v.coefficient(&Partition::identity(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        let empty = LinearCombination::from_diagram(Partition::identity(0));
        assert_eq!(
            empty.to_string().parse::<LinearCombination>().unwrap(),
            empty
        );
        let zero: LinearCombination = "1,3: 0".parse().unwrap();
        assert!(zero.is_zero() && zero.shape() == (1, 3));
        assert_eq!(zero.to_string().parse::<LinearCombination>().unwrap(), zero);
        let json = serde_json::to_string(&u).unwrap();
        assert_eq!(serde_json::from_str::<LinearCombination>(&json).unwrap(), u);
    }

    #[test]
    fn parse_errors() {
        assert!("{1,2}{1',2'}".parse::<LinearCombination>().is_err());
        assert!("2,2: 3*{1,2}{1',2'} 4*{1,1'}{2,2'}"
            .parse::<LinearCombination>()
            .is_err());
        assert!("2,2: 3*{1,2}{1',2'} + 2,1:{1,2}{1'}"
            .parse::<LinearCombination>()
            .is_err());
        assert!("2,2: 1/0*{1,2}{1',2'}"
            .parse::<LinearCombination>()
            .is_err());
    }

    #[test]
    fn h_squared_is_twice_h() {
        let h = LinearCombination::from_diagram(generator(GeneratorKind::H, 1, 2).unwrap());
        assert_eq!(linear_compose(&h, &h, &q(2)).unwrap(), h.scale(&q(2)));
        let id = LinearCombination::from_diagram(Partition::identity(2));
        assert_eq!(linear_compose(&id, &h, &q(5)).unwrap(), h);
    }

    #[test]
    fn caps_collapse() {
        for (m, n) in [(2, 0), (4, 2), (5, 1), (6, 2)] {
            let c = LinearCombination::from_diagram(cap_element(m, n).unwrap());
            let k = ((m - n) / 2) as u32;
            let lhs = linear_compose(&c.involution(), &c, &q(2)).unwrap();
            let id = LinearCombination::from_diagram(Partition::identity(n));
            assert_eq!(lhs, id.scale(&q(1 << k)));
        }
    }

    #[test]
    fn linear_phi_hypotheses() {
        let u: LinearCombination = "1,1: 1/2*{1,1'}".parse().unwrap();
        assert!(phi_linear(&u, &Integer).is_err());
        assert!(phi_linear(&u, &Rational).is_ok());
        assert!(phi_linear(&LinearCombination::zero(2, 1), &Integer)
            .unwrap()
            .is_zero_matrix());
        assert!(phi_linear(&u, &crate::semiring::Natural).is_err());
    }
}
