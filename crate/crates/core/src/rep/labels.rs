use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set for which subset labels are materialised.
pub const MAX_GROUND: usize = 24;

/// How the subsets of `[n]` are listed along a matrix axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetOrdering {
    /// All subsets by ascending bitmask, element `i` on bit `i-1`.
    BinaryLsb,
    /// Odd-cardinality subsets first, then even; ascending bitmask within each.
    ParitySplit,
    /// Only the even-gap subsets, ascending bitmask.
    EvenGap,
}

impl FromStr for SubsetOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" | "binary_lsb" => Ok(SubsetOrdering::BinaryLsb),
            "parity" | "parity_split" => Ok(SubsetOrdering::ParitySplit),
            "evengap" | "even_gap" => Ok(SubsetOrdering::EvenGap),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown ordering `{s}` (expected binary, parity or evengap)"),
            }),
        }
    }
}

impl fmt::Display for SubsetOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubsetOrdering::BinaryLsb => "binary",
            SubsetOrdering::ParitySplit => "parity",
            SubsetOrdering::EvenGap => "evengap",
        })
    }
}

/// A sequence of distinct subsets of `[ground]`, stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labels {
    ground: usize,
    masks: Vec<u32>,
}

impl Labels {
    pub fn new(ground: usize, masks: Vec<u32>) -> Result<Self> {
        check_ground(ground)?;
        let limit = 1u64 << ground;
        let mut seen = std::collections::HashSet::with_capacity(masks.len());
        for &x in &masks {
            if u64::from(x) >= limit {
                return Err(Error::LabelMismatch(format!(
                    "label {x:#b} is not a subset of [{ground}]"
                )));
            }
            if !seen.insert(x) {
                return Err(Error::LabelMismatch(format!(
                    "duplicate label {}",
                    subset_string(x)
                )));
            }
        }
        Ok(Labels { ground, masks })
    }

    pub fn ordered(kind: SubsetOrdering, n: usize) -> Result<Self> {
        check_ground(n)?;
        let masks = match kind {
            SubsetOrdering::BinaryLsb => (0..1u32 << n).collect(),
            SubsetOrdering::ParitySplit => {
                let (mut odd, even): (Vec<u32>, Vec<u32>) =
                    (0..1u32 << n).partition(|x| x.count_ones() % 2 == 1);
                odd.extend(even);
                odd
            }
            SubsetOrdering::EvenGap => even_gap_subsets(n)?,
        };
        Ok(Labels { ground: n, masks })
    }

    pub fn binary(n: usize) -> Result<Self> {
        Self::ordered(SubsetOrdering::BinaryLsb, n)
    }

    /// Subsets of `[n]` whose cardinality has the given parity (`1` odd, `0` even).
    pub fn with_parity(n: usize, parity: u32) -> Result<Self> {
        check_ground(n)?;
        let masks = (0..1u32 << n)
            .filter(|x| x.count_ones() % 2 == parity)
            .collect();
        Ok(Labels { ground: n, masks })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// True when the labels are `0, 1, …, 2^ground − 1` in order.
    pub fn is_complete_binary(&self) -> bool {
        self.masks.len() == 1 << self.ground
            && self.masks.iter().enumerate().all(|(i, &x)| x as usize == i)
    }

    pub fn index_map(&self) -> HashMap<u32, usize> {
        self.masks
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i))
            .collect()
    }

    pub fn position(&self, mask: u32) -> Option<usize> {
        if self.is_complete_binary() {
            ((mask as usize) < self.masks.len()).then_some(mask as usize)
        } else {
            self.masks.iter().position(|&x| x == mask)
        }
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        Err(Error::GuardExceeded {
            size: n,
            limit: MAX_GROUND,
        })
    } else {
        Ok(())
    }
}

/// `{1,3}`-style rendering of a bitmask.
pub fn subset_string(x: u32) -> String {
    let items: Vec<String> = subset_elements(x).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Elements (1-based) of a bitmask subset.
pub fn subset_elements(x: u32) -> Vec<usize> {
    (0..32).filter(|i| x >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Whether `[n] \ X` splits into maximal intervals of even length.
pub fn is_even_gap(x: u32, n: usize) -> bool {
    let mut run = 0;
    for i in 0..n {
        if x >> i & 1 == 1 {
            if run % 2 == 1 {
                return false;
            }
            run = 0;
        } else {
            run += 1;
        }
    }
    run % 2 == 0
}

/// The even-gap subsets of `[n]` by ascending bitmask.
pub fn even_gap_subsets(n: usize) -> Result<Vec<u32>> {
    check_ground(n)?;
    // Members and gaps alternate along 1..n; build by prefix then sort.
    fn go(pos: usize, n: usize, acc: u32, out: &mut Vec<u32>) {
        if pos == n {
            out.push(acc);
            return;
        }
        go(pos + 1, n, acc | 1 << pos, out);
        if pos + 2 <= n {
            go(pos + 2, n, acc, out);
        }
    }
    let mut out = Vec::new();
    go(0, n, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}
