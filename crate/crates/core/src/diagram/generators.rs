use std::fmt;
use std::str::FromStr;

use super::compose::compose;
use super::partition::Partition;
use crate::error::{Error, Result};

/// The named Temperley–Lieb generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `e_{i,n} ∈ TL_{n,n-2}`: upper cap `{i,i+1}`, straight strands elsewhere.
    E,
    /// `e_{i,n}^* ∈ TL_{n-2,n}`.
    EStar,
    /// `h_{i,n} ∈ TL_n`: caps `{i,i+1}` and `{i',(i+1)'}`.
    H,
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(GeneratorKind::E),
            "e_star" | "e*" => Ok(GeneratorKind::EStar),
            "h" => Ok(GeneratorKind::H),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown generator `{s}`"),
            }),
        }
    }
}

/// A generator applied at position `i` of `n` strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub i: usize,
    pub n: usize,
}

impl Generator {
    pub fn diagram(&self) -> Partition {
        generator(self.kind, self.i, self.n).expect("generator built from a validated index")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GeneratorKind::E => "e",
            GeneratorKind::EStar => "e*",
            GeneratorKind::H => "h",
        };
        write!(f, "{name}[{},{}]", self.i, self.n)
    }
}

pub fn generator(kind: GeneratorKind, i: usize, n: usize) -> Result<Partition> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::IndexOutOfRange(format!(
            "generator index i={i} requires 1 <= i <= n-1 with n={n}"
        )));
    }
    match kind {
        GeneratorKind::E => Ok(cap_at(i, n)),
        GeneratorKind::EStar => Ok(cap_at(i, n).involution()),
        GeneratorKind::H => {
            let mut blocks: Vec<Vec<i32>> = Vec::with_capacity(n);
            for j in 1..=n {
                if j != i && j != i + 1 {
                    blocks.push(vec![j as i32, -(j as i32)]);
                }
            }
            blocks.push(vec![i as i32, i as i32 + 1]);
            blocks.push(vec![-(i as i32), -(i as i32 + 1)]);
            Partition::from_blocks(n, n, &blocks)
        }
    }
}

fn cap_at(i: usize, n: usize) -> Partition {
    let mut blocks: Vec<Vec<i32>> = Vec::with_capacity(n - 1);
    for j in 1..=n {
        if j < i {
            blocks.push(vec![j as i32, -(j as i32)]);
        } else if j > i + 1 {
            blocks.push(vec![j as i32, -(j as i32 - 2)]);
        }
    }
    blocks.push(vec![i as i32, i as i32 + 1]);
    Partition::from_blocks(n, n - 2, &blocks).unwrap()
}

/// The element of `TL_{m,n}` (`m ≥ n`, `m ≡ n mod 2`) with strands `{j,j'}`
/// for `j ≤ n` and caps `{n+1,n+2},…,{m-1,m}`.
pub fn cap_element(m: usize, n: usize) -> Result<Partition> {
    if m < n || (m - n) % 2 == 1 {
        return Err(Error::IndexOutOfRange(format!(
            "cap element needs m >= n and m = n mod 2, got ({m},{n})"
        )));
    }
    let mut blocks: Vec<Vec<i32>> = (1..=n as i32).map(|j| vec![j, -j]).collect();
    let mut j = n as i32 + 1;
    while j < m as i32 {
        blocks.push(vec![j, j + 1]);
        j += 2;
    }
    Partition::from_blocks(m, n, &blocks)
}

/// Writes a Temperley–Lieb diagram as a word in the generators `e_{i,n}`
/// and `e_{i,n}^*` by repeatedly stripping adjacent caps.
///
/// An upper cap `{i,i+1}` of `a ∈ TL_{m,n}` gives `a = e_{i,m} · a'`, a lower
/// cap gives `a = a' · e_{j,n}^*`; a diagram with no caps is an identity and
/// contributes the empty word.
pub fn factorize_temperley_lieb(a: &Partition) -> Result<Vec<Generator>> {
    if !a.is_temperley_lieb() {
        return Err(Error::WrongFamily(format!(
            "{a} is not a Temperley-Lieb diagram"
        )));
    }
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    let mut current = a.clone();
    loop {
        let (m, n) = current.shape();
        if let Some(i) = (1..m).find(|&i| current.upper_label(i) == current.upper_label(i + 1)) {
            prefix.push(Generator {
                kind: GeneratorKind::E,
                i,
                n: m,
            });
            current = remove_cap(&current, i, true);
        } else if let Some(j) =
            (1..n).find(|&j| current.lower_label(j) == current.lower_label(j + 1))
        {
            suffix.push(Generator {
                kind: GeneratorKind::EStar,
                i: j,
                n,
            });
            current = remove_cap(&current, j, false);
        } else {
            debug_assert_eq!(current, Partition::identity(m));
            break;
        }
    }
    suffix.reverse();
    prefix.extend(suffix);
    Ok(prefix)
}

fn remove_cap(a: &Partition, i: usize, upper: bool) -> Partition {
    let m = a.m();
    let skip = if upper {
        [i - 1, i]
    } else {
        [m + i - 1, m + i]
    };
    let raw: Vec<u16> = a
        .labels()
        .iter()
        .enumerate()
        .filter(|(k, _)| !skip.contains(k))
        .map(|(_, &l)| l)
        .collect();
    let (m2, n2) = if upper {
        (m - 2, a.n())
    } else {
        (m, a.n() - 2)
    };
    Partition::from_raw_labels(m2, n2, &raw).unwrap()
}

/// Composes a generator word; the empty word is `ι_n`.
pub fn evaluate_word(word: &[Generator], n: usize) -> Result<Partition> {
    let mut acc = Partition::identity(n);
    for g in word {
        acc = compose(&acc, &g.diagram())?.product;
    }
    Ok(acc)
}
