//! The face of the Kronecker polyhedron cut out by `b(lambda, mu, nu; Id) = 0`.
//!
//! On this face `mu` and `nu` are determined by `lambda`, the partition
//! function is evaluated at the origin, and `g = g~ = 1`.

use serde::Serialize;

use crate::bounds::identity_b;
use crate::error::{Error, Result};
use crate::linalg::integer_rank;
use crate::linear_forms::identity_forms;
use crate::partition::{Partition, PartitionTriple};
use crate::substitution::build_degree_table;

fn to_partition(what: &'static str, v: Vec<i128>) -> Result<Partition> {
    if v.windows(2).any(|w| w[0] < w[1]) || v.iter().any(|&x| x < 0 || x > u32::MAX as i128) {
        return Err(Error::NotAPartition { what, parts: v });
    }
    let parts: Vec<u32> = v.iter().map(|&x| x as u32).collect();
    Partition::new(&parts, parts.len())
}

/// The unique `(mu, nu)` with `b(lambda, mu, nu; Id) = 0`:
/// `mu_u = lambda_u + sum of lambda_i for m+(u-1)(n-1) < i <= m+u(n-1)`,
/// `nu_1 = lambda_1 + ... + lambda_m`, and
/// `nu_v = sum_{i<m} lambda_{m+(n-1)i+v-1}` for `v >= 2`.
pub fn stable_mu_nu(lambda: &Partition, m: usize, n: usize) -> Result<(Partition, Partition)> {
    if m == 0 || n == 0 {
        return Err(Error::LengthBound("m and n must be positive".into()));
    }
    let lambda = lambda.padded(m * n)?;
    let l = |i: usize| lambda.part(i) as i128;
    let mu: Vec<i128> = (1..=m)
        .map(|u| l(u) + (m + (u - 1) * (n - 1) + 1..=m + u * (n - 1)).map(l).sum::<i128>())
        .collect();
    let mut nu = vec![(1..=m).map(l).sum::<i128>()];
    for v in 2..=n {
        nu.push((0..m).map(|i| l(m + (n - 1) * i + v - 1)).sum());
    }
    Ok((to_partition("mu", mu)?, to_partition("nu", nu)?))
}

/// The triple `(lambda, mu, nu)` with `(mu, nu) = stable_mu_nu(lambda)`.
pub fn stable_triple(lambda: &Partition, m: usize, n: usize) -> Result<PartitionTriple> {
    let (mu, nu) = stable_mu_nu(lambda, m, n)?;
    PartitionTriple::new(m, n, lambda, &mu, &nu)
}

/// Whether the triple lies on the face. For `m, n >= 2` this is decided both
/// by `b(Id) = 0` and by the explicit equations, and the two must agree.
pub fn is_stable_face_member(t: &PartitionTriple) -> bool {
    if !t.is_equal_size() {
        return false;
    }
    let by_equations = match stable_mu_nu(&t.lambda, t.m, t.n) {
        Ok((mu, nu)) => mu.parts() == t.mu.parts() && nu.parts() == t.nu.parts(),
        Err(_) => false,
    };
    if t.m >= 2 && t.n >= 2 {
        let by_b = identity_b(t).iter().all(|&x| x == 0);
        assert_eq!(by_b, by_equations, "face tests disagree on {t}");
    }
    by_equations
}

/// An `m x n` standard tableau whose entry order agrees with the order of
/// `x_i + y_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditiveTableau {
    pub m: usize,
    pub n: usize,
    /// `entries[i][j]` is `T(i+1, j+1)`.
    pub entries: Vec<Vec<usize>>,
    pub x_seq: Vec<i64>,
    pub y_seq: Vec<i64>,
}

impl AdditiveTableau {
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.entries[i - 1][j - 1]
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.m * self.n + 1];
        for &e in self.entries.iter().flatten() {
            if e == 0 || e > self.m * self.n || seen[e] {
                return false;
            }
            seen[e] = true;
        }
        true
    }

    /// `T(i,j) < T(k,l)` exactly when `x_i + y_j < x_k + y_l`, over all pairs.
    pub fn is_additive(&self) -> bool {
        let cells: Vec<(usize, i64)> = (0..self.m)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .map(|(i, j)| (self.entries[i][j], self.x_seq[i] + self.y_seq[j]))
            .collect();
        cells.iter().all(|&(t1, s1)| {
            cells
                .iter()
                .all(|&(t2, s2)| (t1 < t2) == (s1 < s2))
        })
    }

    /// Row sums `a_T(lambda)_i = sum_j lambda_{T(i,j)}`.
    pub fn a_t(&self, lambda: &Partition) -> Vec<u64> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&e| lambda.part(e) as u64).sum())
            .collect()
    }

    /// Column sums `b_T(lambda)_j = sum_i lambda_{T(i,j)}`.
    pub fn b_t(&self, lambda: &Partition) -> Vec<u64> {
        (0..self.n)
            .map(|j| self.entries.iter().map(|row| lambda.part(row[j]) as u64).sum())
            .collect()
    }
}

/// First column `1..m`, then each row continues with the next `n - 1`
/// integers. Realized by `x_i = (i-1)(n-1)` and `y_1 = 0`,
/// `y_j = (m-1)(n-1) + j - 1`.
pub fn build_additive_tableau(m: usize, n: usize) -> AdditiveTableau {
    assert!(m >= 1 && n >= 1, "tableau needs m, n >= 1");
    let entries = (1..=m)
        .map(|i| {
            (1..=n)
                .map(|j| if j == 1 { i } else { m + (i - 1) * (n - 1) + (j - 1) })
                .collect()
        })
        .collect();
    // With a single column the x gaps only need to be positive.
    let step = (n as i64 - 1).max(1);
    let x_seq = (0..m as i64).map(|i| i * step).collect();
    let y_seq = (1..=n as i64)
        .map(|j| if j == 1 { 0 } else { (m as i64 - 1) * (n as i64 - 1) + j - 1 })
        .collect();
    let t = AdditiveTableau {
        m,
        n,
        entries,
        x_seq,
        y_seq,
    };
    assert!(t.is_bijection() && t.is_additive(), "tableau ({m},{n}) is not additive");
    t
}

/// Ranks of the linear systems describing the face, over the variables
/// `lambda_1..lambda_mn, mu_1..mu_m, nu_1..nu_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCondition {
    pub m: usize,
    pub n: usize,
    /// Size equalities together with `b(Id) = 0`.
    pub rank_q: usize,
    /// The same rows restricted to the `mu` and `nu` columns.
    pub rank_q_prime: usize,
    /// The explicit equations of [`stable_mu_nu`].
    pub rank_equations: usize,
    /// Both systems stacked.
    pub rank_combined: usize,
}

impl RankCondition {
    pub fn holds(&self) -> bool {
        let target = self.m + self.n;
        self.rank_q == target
            && self.rank_q_prime == target
            && self.rank_equations == target
            && self.rank_combined == target
    }
}

pub fn rank_condition(m: usize, n: usize) -> Result<RankCondition> {
    if m < 2 || n < 2 {
        return Err(Error::UnsupportedShape { m, n });
    }
    let mn = m * n;
    let width = mn + m + n;
    let mut q: Vec<Vec<i64>> = Vec::new();
    for (off, len) in [(mn, m), (mn + m, n)] {
        let mut row = vec![0i64; width];
        row[..mn].iter_mut().for_each(|c| *c = -1);
        row[off..off + len].iter_mut().for_each(|c| *c = 1);
        q.push(row);
    }
    for f in identity_forms(&build_degree_table(m, n)) {
        q.push(
            f.coeff_lambda
                .iter()
                .chain(&f.coeff_mu)
                .chain(&f.coeff_nu)
                .copied()
                .collect(),
        );
    }
    let q_prime: Vec<Vec<i64>> = q.iter().map(|r| r[mn..].to_vec()).collect();

    let mut eqs: Vec<Vec<i64>> = Vec::new();
    for u in 1..=m {
        let mut row = vec![0i64; width];
        row[mn + u - 1] = 1;
        row[u - 1] -= 1;
        for i in m + (u - 1) * (n - 1) + 1..=m + u * (n - 1) {
            row[i - 1] -= 1;
        }
        eqs.push(row);
    }
    for v in 1..=n {
        let mut row = vec![0i64; width];
        row[mn + m + v - 1] = 1;
        if v == 1 {
            row[..m].iter_mut().for_each(|c| *c = -1);
        } else {
            for i in 0..m {
                row[m + (n - 1) * i + v - 2] -= 1;
            }
        }
        eqs.push(row);
    }
    let combined: Vec<Vec<i64>> = q.iter().chain(&eqs).cloned().collect();
    Ok(RankCondition {
        m,
        n,
        rank_q: integer_rank(&q),
        rank_q_prime: integer_rank(&q_prime),
        rank_equations: integer_rank(&eqs),
        rank_combined: integer_rank(&combined),
    })
}

/// Whether the face equations have rank `m + n` and cut out the same
/// subspace as the explicit parametrization.
pub fn verify_rank_condition(m: usize, n: usize) -> bool {
    rank_condition(m, n).is_ok_and(|r| r.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::from_parts(crate::parse_partition(s, 16).unwrap().nonzero()).unwrap()
    }

    #[test]
    fn worked_face_triple() {
        let (mu, nu) = stable_mu_nu(&p("10,8,5,3,2,2"), 2, 3).unwrap();
        assert_eq!(mu.to_string(), "18,12");
        assert_eq!(nu.to_string(), "18,7,5");
        let t = PartitionTriple::new(2, 3, &p("10,8,5,3,2,2"), &mu, &nu).unwrap();
        assert!(is_stable_face_member(&t));
    }

    #[test]
    fn rectangular_and_zero() {
        let (mu, nu) = stable_mu_nu(&p("3,3,3,3,3,3"), 2, 3).unwrap();
        assert_eq!((mu.to_string(), nu.to_string()), ("9,9".into(), "6,6,6".into()));
        let (mu, nu) = stable_mu_nu(&Partition::empty(6), 2, 3).unwrap();
        assert_eq!((mu.size(), nu.size()), (0, 0));
    }

    #[test]
    fn non_members() {
        let t = PartitionTriple::parse(2, 2, "2,1,1", "2,2", "2,2").unwrap();
        assert!(!is_stable_face_member(&t));
        let t = PartitionTriple::parse(2, 2, "3,1", "3,1", "4").unwrap();
        assert!(is_stable_face_member(&t));
    }

    #[test]
    fn outputs_are_always_partitions() {
        // Each part of mu and nu is a termwise-dominated sum, so a decreasing
        // lambda always gives decreasing mu and nu.
        for (m, n) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            for size in 0..=7 {
                for lambda in crate::partition::partitions_of(size, m * n) {
                    assert!(stable_mu_nu(&lambda, m, n).is_ok());
                }
            }
        }
        let err = to_partition("mu", vec![1, 2]).unwrap_err();
        assert!(matches!(err, Error::NotAPartition { what: "mu", .. }));
    }

    #[test]
    fn tableau_two_by_three() {
        let t = build_additive_tableau(2, 3);
        assert_eq!(t.entries, vec![vec![1, 3, 4], vec![2, 5, 6]]);
        assert_eq!((t.x_seq.clone(), t.y_seq.clone()), (vec![0, 2], vec![0, 3, 4]));
        assert_eq!(build_additive_tableau(3, 1).entries, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn ranks() {
        for (m, n) in [(2, 2), (2, 3), (3, 3)] {
            let r = rank_condition(m, n).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }
}
