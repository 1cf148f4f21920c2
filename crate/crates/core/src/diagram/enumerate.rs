use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};

/// Default bound on `m + n` for exhaustive enumeration.
pub const DEFAULT_MAX_SIZE: usize = 16;

/// The three diagram families, ordered from finest to coarsest class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TemperleyLieb,
    Brauer,
    Partition,
}

impl Family {
    pub fn contains(self, a: &Partition) -> bool {
        match self {
            Family::Partition => true,
            Family::Brauer => a.is_brauer(),
            Family::TemperleyLieb => a.is_temperley_lieb(),
        }
    }

    /// Whether the hom-set `(m, n)` of this family is nonempty.
    pub fn is_inhabited(self, m: usize, n: usize) -> bool {
        match self {
            Family::Partition => true,
            _ => (m + n) % 2 == 0,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Family::Partition => "P",
            Family::Brauer => "B",
            Family::TemperleyLieb => "TL",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Partition => "partition",
            Family::Brauer => "brauer",
            Family::TemperleyLieb => "temperley_lieb",
        };
        f.write_str(name)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p" | "partition" => Ok(Family::Partition),
            "b" | "brauer" => Ok(Family::Brauer),
            "tl" | "temperley_lieb" | "temperley-lieb" => Ok(Family::TemperleyLieb),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown family `{s}` (expected P, B or TL)"),
            }),
        }
    }
}

/// The finest family containing `a`.
pub fn classify(a: &Partition) -> Family {
    if a.is_temperley_lieb() {
        Family::TemperleyLieb
    } else if a.is_brauer() {
        Family::Brauer
    } else {
        Family::Partition
    }
}

/// All diagrams of the family in `P_{m,n}`, sorted in canonical order.
pub fn enumerate(family: Family, m: usize, n: usize) -> Result<Vec<Partition>> {
    enumerate_with_limit(family, m, n, DEFAULT_MAX_SIZE)
}

pub fn enumerate_with_limit(
    family: Family,
    m: usize,
    n: usize,
    max_size: usize,
) -> Result<Vec<Partition>> {
    if m + n > max_size {
        return Err(Error::GuardExceeded {
            size: m + n,
            limit: max_size,
        });
    }
    let mut out = match family {
        Family::Partition => return Ok(SetPartitions::new(m, n).collect()),
        Family::Brauer => brauer(m, n),
        Family::TemperleyLieb => temperley_lieb(m, n),
    };
    out.sort();
    Ok(out)
}

/// Lazy enumeration of `P_{m,n}` in lexicographic order of block labels.
pub struct SetPartitions {
    m: usize,
    n: usize,
    labels: Vec<u16>,
    // maxima[i] = max(labels[..i]) + 1, i.e. the number of blocks opened before i
    maxima: Vec<u16>,
    done: bool,
}

impl SetPartitions {
    pub fn new(m: usize, n: usize) -> Self {
        let len = m + n;
        let mut maxima = vec![1u16; len];
        if len > 0 {
            maxima[0] = 0;
        }
        SetPartitions {
            m,
            n,
            labels: vec![0; len],
            maxima,
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition::from_canonical_labels(self.m, self.n, self.labels.clone());
        let len = self.labels.len();
        let mut i = len;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.labels[i] < self.maxima[i] {
                self.labels[i] += 1;
                let top = self.maxima[i].max(self.labels[i] + 1);
                for k in i + 1..len {
                    self.labels[k] = 0;
                    self.maxima[k] = top;
                }
                break;
            }
        }
        Some(current)
    }
}

fn brauer(m: usize, n: usize) -> Vec<Partition> {
    let len = m + n;
    if len % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut mate = vec![usize::MAX; len];
    fn go(mate: &mut Vec<usize>, m: usize, n: usize, out: &mut Vec<Partition>) {
        let Some(first) = mate.iter().position(|&x| x == usize::MAX) else {
            let raw: Vec<usize> = (0..mate.len()).map(|i| i.min(mate[i])).collect();
            out.push(Partition::from_raw_labels(m, n, &raw).unwrap());
            return;
        };
        for other in first + 1..mate.len() {
            if mate[other] == usize::MAX {
                mate[first] = other;
                mate[other] = first;
                go(mate, m, n, out);
                mate[first] = usize::MAX;
                mate[other] = usize::MAX;
            }
        }
    }
    go(&mut mate, m, n, &mut out);
    out
}

/// Non-crossing perfect matchings of the boundary `1,…,m,n',…,1'`.
fn temperley_lieb(m: usize, n: usize) -> Vec<Partition> {
    let len = m + n;
    if len % 2 == 1 {
        return Vec::new();
    }
    // boundary position -> vertex index
    let vertex_at = |p: usize| if p < m { p } else { m + (n - 1 - (p - m)) };
    let mut out = Vec::new();
    for matching in noncrossing(0, len) {
        let mut raw = vec![0usize; len];
        for (x, y) in matching {
            let (vx, vy) = (vertex_at(x), vertex_at(y));
            let id = vx.min(vy);
            raw[vx] = id;
            raw[vy] = id;
        }
        out.push(Partition::from_raw_labels(m, n, &raw).unwrap());
    }
    out
}

/// All non-crossing perfect matchings of positions `lo..hi`.
fn noncrossing(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut partner = lo + 1;
    while partner < hi {
        let inner = noncrossing(lo + 1, partner);
        let outer = noncrossing(partner + 1, hi);
        for i in &inner {
            for o in &outer {
                let mut v = Vec::with_capacity(i.len() + o.len() + 1);
                v.push((lo, partner));
                v.extend_from_slice(i);
                v.extend_from_slice(o);
                out.push(v);
            }
        }
        partner += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(Family::Partition, 2, 2).unwrap().len(), 15);
        assert_eq!(enumerate(Family::Brauer, 3, 3).unwrap().len(), 15);
        assert_eq!(enumerate(Family::TemperleyLieb, 4, 4).unwrap().len(), 14);
        assert_eq!(
            enumerate(Family::Partition, 0, 0).unwrap(),
            vec![Partition::identity(0)]
        );
        assert!(enumerate(Family::Brauer, 2, 1).unwrap().is_empty());
    }

    #[test]
    fn guard() {
        assert!(matches!(
            enumerate(Family::Partition, 9, 8),
            Err(Error::GuardExceeded {
                size: 17,
                limit: 16
            })
        ));
        assert!(enumerate_with_limit(Family::Partition, 2, 2, 3).is_err());
    }

    #[test]
    fn canonical_order_and_distinct() {
        for family in [Family::Partition, Family::Brauer, Family::TemperleyLieb] {
            let all = enumerate(family, 2, 4).unwrap();
            assert!(all.windows(2).all(|w| w[0] < w[1]), "{family}");
            assert!(all.iter().all(|a| family.contains(a)));
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&Partition::identity(3)), Family::TemperleyLieb);
        let one = Partition::from_blocks(2, 2, &[vec![1, 2, -1, -2]]).unwrap();
        assert_eq!(classify(&one), Family::Partition);
        let swap = Partition::from_blocks(2, 2, &[vec![1, -2], vec![2, -1]]).unwrap();
        assert_eq!(classify(&swap), Family::Brauer);
    }

    #[test]
    fn family_names() {
        assert_eq!("TL".parse::<Family>().unwrap(), Family::TemperleyLieb);
        assert_eq!("b".parse::<Family>().unwrap(), Family::Brauer);
        assert!("Q".parse::<Family>().is_err());
    }
}
