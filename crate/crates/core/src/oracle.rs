//! Kronecker coefficients from symmetric group characters.
//!
//! `g(lambda, mu, nu) = (1/N!) sum_rho |C_rho| chi^lambda(rho) chi^mu(rho) chi^nu(rho)`,
//! with characters from the Murnaghan-Nakayama rule on beta-sets. Nothing
//! here touches the partition function path, so it serves as an independent
//! check of the engine.

use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::{factorial, partitions_of, Partition, PartitionTriple};

/// Largest size accepted by [`kronecker_by_characters`].
pub const DEFAULT_SIZE_LIMIT: u64 = 14;

/// Largest size for which [`CharacterTable::build`] materializes a table.
pub const TABLE_SIZE_LIMIT: u64 = 10;

type Key = (Box<[u32]>, Box<[u32]>);

/// Character values memoized by `(shape, remaining cycle type)`.
#[derive(Default)]
pub struct CharacterOracle {
    memo: DashMap<Key, i64>,
}

fn nonzero(p: &[u32]) -> Vec<u32> {
    p.iter().copied().filter(|&x| x > 0).collect()
}

impl CharacterOracle {
    pub fn new() -> CharacterOracle {
        CharacterOracle::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `chi^lambda(rho)`.
    pub fn value(&self, lambda: &Partition, rho: &Partition) -> Result<i64> {
        if lambda.size() != rho.size() {
            return Err(Error::SizeMismatch {
                lambda: lambda.size(),
                mu: rho.size(),
                nu: rho.size(),
            });
        }
        let mut rho = nonzero(rho.parts());
        rho.sort_unstable_by(|a, b| b.cmp(a));
        Ok(self.rec(&nonzero(lambda.parts()), &rho))
    }

    fn rec(&self, shape: &[u32], rho: &[u32]) -> i64 {
        let Some((&r, rest)) = rho.split_first() else {
            return 1;
        };
        let key: Key = (shape.into(), rho.into());
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        // Beta-set of the shape: distinct first-column hook lengths.
        let k = shape.len();
        let beta: Vec<i64> = shape
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 + (k - 1 - i) as i64)
            .collect();
        let r = r as i64;
        let mut total = 0i64;
        for (i, &b) in beta.iter().enumerate() {
            let target = b - r;
            if target < 0 || beta.contains(&target) {
                continue;
            }
            let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut next = beta.clone();
            next[i] = target;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let len = next.len();
            let smaller: Vec<u32> = next
                .iter()
                .enumerate()
                .map(|(j, &x)| (x - (len - 1 - j) as i64) as u32)
                .filter(|&p| p > 0)
                .collect();
            let v = self.rec(&smaller, rest);
            if crossed % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.insert(key, total);
        total
    }
}

fn shared() -> &'static CharacterOracle {
    static ORACLE: OnceLock<CharacterOracle> = OnceLock::new();
    ORACLE.get_or_init(CharacterOracle::new)
}

/// `chi^lambda(rho)` using a process-wide memo.
pub fn character_value(lambda: &Partition, rho: &Partition) -> Result<i64> {
    shared().value(lambda, rho)
}

/// `N! / z_rho`, the number of permutations with cycle type `rho`.
pub fn class_size(rho: &Partition) -> BigUint {
    let mut z = BigUint::one();
    let parts = nonzero(rho.parts());
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        let mult = (j - i) as u64;
        z *= num_traits::pow(BigUint::from(parts[i]), mult as usize) * factorial(mult);
        i = j;
    }
    factorial(rho.size()) / z
}

/// The full character table of `S_N`; rows and columns follow
/// [`partitions_of`] order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub size: u64,
    pub partitions: Vec<Partition>,
    /// `values[i][j] = chi^{partitions[i]}(partitions[j])`.
    pub values: Vec<Vec<i64>>,
    pub class_sizes: Vec<BigUint>,
}

impl CharacterTable {
    pub fn build(size: u64) -> Result<CharacterTable> {
        if size > TABLE_SIZE_LIMIT {
            return Err(Error::SizeLimit {
                size,
                limit: TABLE_SIZE_LIMIT,
            });
        }
        let partitions = partitions_of(size as u32, size.max(1) as usize);
        let values = partitions
            .iter()
            .map(|l| {
                partitions
                    .iter()
                    .map(|r| character_value(l, r))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let class_sizes = partitions.iter().map(class_size).collect();
        Ok(CharacterTable {
            size,
            partitions,
            values,
            class_sizes,
        })
    }

    /// Row orthogonality `sum_rho |C_rho| chi^a chi^b = N! delta_ab` and
    /// column orthogonality `sum_lambda chi(rho) chi(sigma) = (N!/|C_rho|) delta`.
    pub fn check_orthogonality(&self) -> bool {
        let nf = BigInt::from(factorial(self.size));
        let k = self.partitions.len();
        for a in 0..k {
            for b in 0..k {
                let s: BigInt = (0..k)
                    .map(|r| {
                        BigInt::from(self.class_sizes[r].clone())
                            * self.values[a][r]
                            * self.values[b][r]
                    })
                    .sum();
                let want = if a == b { nf.clone() } else { BigInt::zero() };
                if s != want {
                    return false;
                }
            }
        }
        for r in 0..k {
            for q in 0..k {
                let s: i128 = (0..k)
                    .map(|l| self.values[l][r] as i128 * self.values[l][q] as i128)
                    .sum();
                let want = if r == q {
                    nf.clone() / BigInt::from(self.class_sizes[r].clone())
                } else {
                    BigInt::zero()
                };
                if BigInt::from(s) != want {
                    return false;
                }
            }
        }
        true
    }
}

/// `g(lambda, mu, nu)` by the character inner product, for sizes up to
/// [`DEFAULT_SIZE_LIMIT`].
pub fn kronecker_by_characters(t: &PartitionTriple) -> Result<BigUint> {
    kronecker_by_characters_limited(t, DEFAULT_SIZE_LIMIT)
}

pub fn kronecker_by_characters_limited(t: &PartitionTriple, limit: u64) -> Result<BigUint> {
    let size = t.common_size()?;
    if size > limit {
        return Err(Error::SizeLimit { size, limit });
    }
    let oracle = shared();
    let mut total = BigInt::zero();
    for rho in partitions_of(size as u32, size.max(1) as usize) {
        let a = oracle.value(&t.lambda, &rho)?;
        if a == 0 {
            continue;
        }
        let b = oracle.value(&t.mu, &rho)?;
        let c = oracle.value(&t.nu, &rho)?;
        total += BigInt::from(class_size(&rho)) * BigInt::from(a) * b * c;
    }
    let nf = BigInt::from(factorial(size));
    let (q, r) = total.div_rem(&nf);
    assert!(r.is_zero(), "character sum {total} is not divisible by {size}!");
    assert!(!q.is_negative(), "character sum {total} is negative");
    Ok(q.to_biguint().unwrap_or_default())
}

/// Signed variant used where the sign is itself under test.
pub fn character_sum(t: &PartitionTriple) -> Result<BigInt> {
    let size = t.common_size()?;
    let mut total = BigInt::zero();
    for rho in partitions_of(size as u32, size.max(1) as usize) {
        let v = BigInt::from(character_value(&t.lambda, &rho)?)
            * character_value(&t.mu, &rho)?
            * character_value(&t.nu, &rho)?;
        total += BigInt::from_biguint(Sign::Plus, class_size(&rho)) * v;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::dimension;

    fn p(s: &str) -> Partition {
        let v: Vec<u32> = s.split(',').map(|x| x.parse().unwrap()).collect();
        Partition::from_parts(&v).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(character_value(&p("2,1"), &p("1,1,1")).unwrap(), 2);
        assert_eq!(character_value(&p("3"), &p("2,1")).unwrap(), 1);
        assert_eq!(character_value(&p("1,1,1"), &p("2,1")).unwrap(), -1);
        assert_eq!(character_value(&p("2,1"), &p("3")).unwrap(), -1);
        assert!(character_value(&p("2,1"), &p("2")).is_err());
    }

    #[test]
    fn tables_are_orthogonal() {
        for n in 0..=7 {
            let t = CharacterTable::build(n).unwrap();
            assert!(t.check_orthogonality(), "N = {n}");
            let ones = t.partitions.len() - 1;
            for (i, l) in t.partitions.iter().enumerate() {
                if n > 0 {
                    assert_eq!(BigUint::from(t.values[i][ones] as u64), dimension(l));
                }
            }
        }
        assert!(CharacterTable::build(11).is_err());
    }

    #[test]
    fn basic_coefficients() {
        let t = PartitionTriple::parse(2, 2, "1,1", "1,1", "1,1").unwrap();
        assert_eq!(kronecker_by_characters(&t).unwrap(), BigUint::zero());
        let t = PartitionTriple::parse(2, 2, "2,2", "2,2", "2,2").unwrap();
        assert_eq!(kronecker_by_characters(&t).unwrap(), BigUint::one());
        let t = PartitionTriple::parse(2, 2, "8,7", "8,7", "8,7").unwrap();
        assert!(matches!(
            kronecker_by_characters(&t),
            Err(Error::SizeLimit { size: 15, .. })
        ));
    }
}
