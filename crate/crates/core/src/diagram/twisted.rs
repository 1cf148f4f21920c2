use std::fmt;

use serde::{Deserialize, Serialize};

use super::compose::compose;
use super::partition::Partition;
use crate::error::{Error, Result};

/// A morphism of the twisted category `P^Φ`, or of its `d`-truncation
/// `P^{Φ,d}` when the distinguished zero is involved.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TwistedElement {
    Twisted { twist: u64, diagram: Partition },
    Zero { m: usize, n: usize },
}

impl TwistedElement {
    pub fn new(twist: u64, diagram: Partition) -> Self {
        TwistedElement::Twisted { twist, diagram }
    }

    pub fn identity(n: usize) -> Self {
        TwistedElement::new(0, Partition::identity(n))
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            TwistedElement::Twisted { diagram, .. } => diagram.shape(),
            TwistedElement::Zero { m, n } => (*m, *n),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TwistedElement::Zero { .. })
    }

    fn check_bound(&self, d: Option<u64>) -> Result<()> {
        match (self, d) {
            (TwistedElement::Twisted { twist, .. }, Some(d)) if *twist > d => Err(
                Error::IndexOutOfRange(format!("twist {twist} exceeds truncation bound {d}")),
            ),
            (TwistedElement::Zero { .. }, None) => Err(Error::Inapplicable(
                "the zero morphism only exists in a truncated category".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Truncates to `P^{Φ,d}`: twists above `d` become zero.
    pub fn truncate(self, d: u64) -> Self {
        match self {
            TwistedElement::Twisted { twist, diagram } if twist > d => {
                let (m, n) = diagram.shape();
                TwistedElement::Zero { m, n }
            }
            other => other,
        }
    }

    pub fn involution(&self) -> Self {
        match self {
            TwistedElement::Twisted { twist, diagram } => {
                TwistedElement::new(*twist, diagram.involution())
            }
            TwistedElement::Zero { m, n } => TwistedElement::Zero { m: *n, n: *m },
        }
    }

    /// `(i,a) ⊕ (j,b) = (i+j, a⊕b)`, truncated when `d` is given.
    pub fn tensor_sum(&self, other: &Self, d: Option<u64>) -> Result<Self> {
        self.check_bound(d)?;
        other.check_bound(d)?;
        let ((m1, n1), (m2, n2)) = (self.shape(), other.shape());
        let out = match (self, other) {
            (
                TwistedElement::Twisted {
                    twist: i,
                    diagram: a,
                },
                TwistedElement::Twisted {
                    twist: j,
                    diagram: b,
                },
            ) => TwistedElement::new(i + j, a.tensor_sum(b)),
            _ => TwistedElement::Zero {
                m: m1 + m2,
                n: n1 + n2,
            },
        };
        Ok(match d {
            Some(d) => out.truncate(d),
            None => out,
        })
    }
}

impl fmt::Display for TwistedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistedElement::Twisted { twist, diagram } => write!(f, "({twist}, {diagram})"),
            TwistedElement::Zero { m, n } => write!(f, "zero[{m},{n}]"),
        }
    }
}

/// `(i,a)(j,b) = (i+j+Φ(a,b), ab)`; with `d` present, results with twist
/// above `d` and products involving zero are the zero of shape `(m(x), n(y))`.
pub fn twisted_compose(
    x: &TwistedElement,
    y: &TwistedElement,
    d: Option<u64>,
) -> Result<TwistedElement> {
    x.check_bound(d)?;
    y.check_bound(d)?;
    let ((m, n), (n2, t)) = (x.shape(), y.shape());
    if n != n2 {
        return Err(Error::CompositionShape {
            m1: m,
            n1: n,
            m2: n2,
            n2: t,
        });
    }
    match (x, y) {
        (
            TwistedElement::Twisted {
                twist: i,
                diagram: a,
            },
            TwistedElement::Twisted {
                twist: j,
                diagram: b,
            },
        ) => {
            let out = compose(a, b)?;
            let product = TwistedElement::new(i + j + out.floats as u64, out.product);
            Ok(match d {
                Some(d) => product.truncate(d),
                None => product,
            })
        }
        _ => Ok(TwistedElement::Zero { m, n: t }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> (Partition, Partition) {
        (
            Partition::from_blocks(
                4,
                6,
                &[vec![1, 4], vec![2, 3, -4, -5], vec![-1, -2, -6], vec![-3]],
            )
            .unwrap(),
            Partition::from_blocks(
                6,
                5,
                &[
                    vec![1, 2],
                    vec![3, 4, -1],
                    vec![5, -4, -5],
                    vec![6],
                    vec![-2, -3],
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn untruncated_product() {
        let (a, b) = fig1();
        let ab = compose(&a, &b).unwrap().product;
        let out = twisted_compose(
            &TwistedElement::new(0, a),
            &TwistedElement::new(0, b.clone()),
            None,
        )
        .unwrap();
        assert_eq!(out, TwistedElement::new(1, ab));
        let y = TwistedElement::new(3, b);
        assert_eq!(
            twisted_compose(&TwistedElement::identity(6), &y, None).unwrap(),
            y
        );
    }

    #[test]
    fn truncated_overflow_is_zero() {
        let (a, b) = fig1();
        let out = twisted_compose(
            &TwistedElement::new(1, a.clone()),
            &TwistedElement::new(1, b.clone()),
            Some(1),
        )
        .unwrap();
        assert_eq!(out, TwistedElement::Zero { m: 4, n: 5 });
        let z = TwistedElement::Zero { m: 4, n: 6 };
        assert_eq!(
            twisted_compose(&z, &TwistedElement::new(0, b), Some(3)).unwrap(),
            TwistedElement::Zero { m: 4, n: 5 }
        );
        assert!(
            twisted_compose(&TwistedElement::new(2, a.clone()), &z.involution(), Some(1)).is_err()
        );
    }

    #[test]
    fn zero_requires_truncation() {
        let z = TwistedElement::Zero { m: 1, n: 1 };
        assert!(twisted_compose(&z, &TwistedElement::identity(1), None).is_err());
    }

    #[test]
    fn tensor_truncation() {
        let x = TwistedElement::new(1, Partition::identity(1));
        assert_eq!(
            x.tensor_sum(&x, Some(1)).unwrap(),
            TwistedElement::Zero { m: 2, n: 2 }
        );
        assert_eq!(
            x.tensor_sum(&x, None).unwrap(),
            TwistedElement::new(2, Partition::identity(2))
        );
    }
}
