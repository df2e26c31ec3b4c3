//! Partitions, triples and elementary statistics.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of non-negative parts, zero-padded to its
/// declared length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates `parts` and pads it with zeros to `declared_length`.
    pub fn new(parts: &[u32], declared_length: usize) -> Result<Partition> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::NonDecreasing {
                    prev: w[0] as u64,
                    next: w[1] as u64,
                });
            }
        }
        let nonzero = parts.iter().take_while(|&&p| p > 0).count();
        if nonzero > declared_length {
            return Err(Error::LengthExceeded {
                found: nonzero,
                limit: declared_length,
            });
        }
        let mut padded = parts[..nonzero].to_vec();
        padded.resize(declared_length, 0);
        Ok(Partition { parts: padded })
    }

    /// Partition whose declared length is its number of nonzero parts (at least 1).
    pub fn from_parts(parts: &[u32]) -> Result<Partition> {
        let len = parts.iter().filter(|&&p| p > 0).count().max(1);
        Partition::new(parts, len)
    }

    pub fn empty(declared_length: usize) -> Partition {
        Partition {
            parts: vec![0; declared_length],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The `i`-th part, 1-based; zero beyond the declared length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            panic!("parts are indexed from 1");
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn declared_length(&self) -> usize {
        self.parts.len()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn nonzero(&self) -> &[u32] {
        &self.parts[..self.length()]
    }

    pub fn padded(&self, declared_length: usize) -> Result<Partition> {
        Partition::new(&self.parts, declared_length)
    }

    pub fn conjugate(&self) -> Vec<u32> {
        let first = self.parts.first().copied().unwrap_or(0);
        (1..=first)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&text.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses comma- or whitespace-separated parts and pads to `declared_length`.
pub fn parse_partition(text: &str, declared_length: usize) -> Result<Partition> {
    let mut parts = Vec::new();
    for tok in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        if tok.starts_with('-') && tok[1..].parse::<u64>().is_ok() {
            return Err(Error::NegativePart(tok.to_string()));
        }
        let v: u32 = tok.parse().map_err(|_| Error::Parse(tok.to_string()))?;
        parts.push(v);
    }
    Partition::new(&parts, declared_length)
}

/// The staircase `(k-1, k-2, ..., 1, 0)`.
pub fn staircase(k: usize) -> Partition {
    assert!(k >= 1, "staircase needs k >= 1");
    Partition {
        parts: (0..k as u32).rev().collect(),
    }
}

/// Product of the hook lengths of all boxes.
pub fn hook_product(p: &Partition) -> BigUint {
    let conj = p.conjugate();
    let mut prod = BigUint::one();
    for (i, &row) in p.nonzero().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj[j] as usize - i - 1;
            prod *= (arm + leg + 1) as u64;
        }
    }
    prod
}

pub fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of standard Young tableaux, `|p|! / hook_product(p)`.
pub fn dimension(p: &Partition) -> BigUint {
    factorial(p.size()) / hook_product(p)
}

/// All partitions of `size` with at most `max_len` parts, in decreasing
/// lexicographic order, each padded to `max_len`.
pub fn partitions_of(size: u32, max_len: usize) -> Vec<Partition> {
    fn rec(rem: u32, cap: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if left == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, size, max_len, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|p| Partition::new(&p, max_len.max(1)).expect("generated partitions are valid"))
        .collect()
}

/// Partitions `lambda`, `mu`, `nu` padded to lengths `mn`, `m`, `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PartitionTriple {
    pub m: usize,
    pub n: usize,
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

impl PartitionTriple {
    pub fn new(
        m: usize,
        n: usize,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<PartitionTriple> {
        if m == 0 || n == 0 {
            return Err(Error::LengthBound("m and n must be positive".into()));
        }
        let pad = |p: &Partition, len: usize, name: &str| {
            p.padded(len).map_err(|_| {
                Error::LengthBound(format!(
                    "{name} has {} parts, shape ({m},{n}) allows {len}",
                    p.length()
                ))
            })
        };
        Ok(PartitionTriple {
            m,
            n,
            lambda: pad(lambda, m * n, "lambda")?,
            mu: pad(mu, m, "mu")?,
            nu: pad(nu, n, "nu")?,
        })
    }

    /// Builds a triple from raw part lists.
    pub fn from_parts(
        m: usize,
        n: usize,
        lambda: &[u32],
        mu: &[u32],
        nu: &[u32],
    ) -> Result<PartitionTriple> {
        PartitionTriple::new(
            m,
            n,
            &Partition::from_parts(lambda)?,
            &Partition::from_parts(mu)?,
            &Partition::from_parts(nu)?,
        )
    }

    /// Parses three partitions in canonical text form.
    pub fn parse(m: usize, n: usize, lambda: &str, mu: &str, nu: &str) -> Result<PartitionTriple> {
        if m == 0 || n == 0 {
            return Err(Error::LengthBound("m and n must be positive".into()));
        }
        let lambda = parse_partition(lambda, m * n);
        let mu = parse_partition(mu, m);
        let nu = parse_partition(nu, n);
        let relabel = |e: Error, name: &str| match e {
            Error::LengthExceeded { found, limit } => Error::LengthBound(format!(
                "{name} has {found} parts, shape ({m},{n}) allows {limit}"
            )),
            other => other,
        };
        Ok(PartitionTriple {
            m,
            n,
            lambda: lambda.map_err(|e| relabel(e, "lambda"))?,
            mu: mu.map_err(|e| relabel(e, "mu"))?,
            nu: nu.map_err(|e| relabel(e, "nu"))?,
        })
    }

    pub fn is_equal_size(&self) -> bool {
        let s = self.lambda.size();
        s == self.mu.size() && s == self.nu.size()
    }

    /// The common size, or `SizeMismatch`.
    pub fn common_size(&self) -> Result<u64> {
        if self.is_equal_size() {
            Ok(self.lambda.size())
        } else {
            Err(Error::SizeMismatch {
                lambda: self.lambda.size(),
                mu: self.mu.size(),
                nu: self.nu.size(),
            })
        }
    }

    /// The same partitions viewed at shape `(m, n)`.
    pub fn reshaped(&self, m: usize, n: usize) -> Result<PartitionTriple> {
        PartitionTriple::new(m, n, &self.lambda, &self.mu, &self.nu)
    }

    /// Swaps the roles of `mu` and `nu` (and of `m` and `n`).
    pub fn transposed(&self) -> PartitionTriple {
        PartitionTriple {
            m: self.n,
            n: self.m,
            lambda: self.lambda.clone(),
            mu: self.nu.clone(),
            nu: self.mu.clone(),
        }
    }

    /// `self + k * dir`, partwise.
    pub fn add_scaled(&self, dir: &PartitionTriple, k: u32) -> Result<PartitionTriple> {
        if (self.m, self.n) != (dir.m, dir.n) {
            return Err(Error::DimensionMismatch {
                expected: self.m * self.n,
                found: dir.m * dir.n,
            });
        }
        let comb = |a: &Partition, b: &Partition| -> Result<Partition> {
            let parts: Option<Vec<u32>> = a
                .parts()
                .iter()
                .zip(b.parts())
                .map(|(&x, &y)| y.checked_mul(k).and_then(|v| v.checked_add(x)))
                .collect();
            let parts = parts.ok_or(Error::Overflow)?;
            Partition::new(&parts, a.declared_length())
        };
        Ok(PartitionTriple {
            m: self.m,
            n: self.n,
            lambda: comb(&self.lambda, &dir.lambda)?,
            mu: comb(&self.mu, &dir.mu)?,
            nu: comb(&self.nu, &dir.nu)?,
        })
    }
}

impl fmt::Display for PartitionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}),({}),({}) at ({},{})",
            self.lambda, self.mu, self.nu, self.m, self.n
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_pads_and_validates() {
        let p = parse_partition("12,7,4,1", 6).unwrap();
        assert_eq!(p.parts(), &[12, 7, 4, 1, 0, 0]);
        assert_eq!(parse_partition("", 3).unwrap().parts(), &[0, 0, 0]);
        assert!(matches!(
            parse_partition("3,5", 2),
            Err(Error::NonDecreasing { .. })
        ));
        assert!(matches!(
            parse_partition("3,-1", 2),
            Err(Error::NegativePart(_))
        ));
        assert!(matches!(
            parse_partition("3,2,1", 2),
            Err(Error::LengthExceeded { .. })
        ));
        assert!(matches!(parse_partition("3,x", 2), Err(Error::Parse(_))));
        assert_eq!(parse_partition("4 2  1", 4).unwrap().to_string(), "4,2,1,0");
    }

    #[test]
    fn staircase_values() {
        assert_eq!(staircase(4).parts(), &[3, 2, 1, 0]);
        assert_eq!(staircase(1).parts(), &[0]);
        assert_eq!(staircase(6).parts(), &[5, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn hooks() {
        let hp = |p: &[u32]| hook_product(&Partition::from_parts(p).unwrap());
        assert_eq!(hp(&[2, 1]), BigUint::from(3u32));
        assert_eq!(hp(&[1]), BigUint::from(1u32));
        assert_eq!(hp(&[3, 2, 1]), BigUint::from(45u32));
        assert_eq!(hp(&[]), BigUint::from(1u32));
        assert_eq!(
            dimension(&Partition::from_parts(&[3, 2, 1]).unwrap()),
            BigUint::from(16u32)
        );
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions_of(n, n as usize).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(partitions_of(6, 2).len(), 4);
        assert_eq!(partitions_of(4, 4)[0].parts(), &[4, 0, 0, 0]);
    }

    #[test]
    fn triple_padding() {
        let t = PartitionTriple::parse(2, 4, "6,4,4,1", "12,3", "5,4,3,3").unwrap();
        assert_eq!(t.lambda.declared_length(), 8);
        assert_eq!(t.common_size().unwrap(), 15);
        assert!(matches!(
            PartitionTriple::parse(2, 2, "1,1,1,1,1", "5", "5"),
            Err(Error::LengthBound(_))
        ));
    }
}
