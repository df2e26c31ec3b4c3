//! Linear inequalities whose failure forces a Kronecker coefficient to vanish.
//!
//! A nonzero coefficient needs a nonzero atomic coefficient, which in turn
//! needs `b(lambda, mu, nu; Id) >= 0`. [`check_vanishing`] states these
//! conditions directly on the parts, using `|lambda| = |mu| = |nu|`;
//! [`check_atomic_vanishing`] tests the coordinates of `b` itself.

use serde::Serialize;

use crate::bounds::identity_b;
use crate::partition::{Partition, PartitionTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    MayBeNonzero,
    ForcedZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub label: String,
    pub left: i128,
    pub right: i128,
    pub holds: bool,
}

impl Inequality {
    fn new(label: String, left: i128, right: i128) -> Inequality {
        Inequality {
            label,
            left,
            right,
            holds: left >= right,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub triple: PartitionTriple,
    pub inequalities: Vec<Inequality>,
    pub conclusion: Conclusion,
}

impl VanishingReport {
    pub fn forced_zero(&self) -> bool {
        self.conclusion == Conclusion::ForcedZero
    }
}

fn sum(p: &Partition, range: std::ops::RangeInclusive<usize>) -> i128 {
    range.map(|k| p.part(k) as i128).sum()
}

/// Evaluates the `m + n - 2` part inequalities. The first is
/// `sum_{k<=m} lambda_k >= nu_1`; the `a`-family (`1 <= a < m`) reads
/// `sum_{k<=a} lambda_k - sum_{k>m+a(n-1)} lambda_k >= nu_1 - sum_{k>a} mu_k`;
/// the `b`-family (`1 <= b <= n-2`) weighs the parts of `lambda` by their row
/// in the `m x n` reading order.
pub fn check_vanishing(t: &PartitionTriple) -> VanishingReport {
    let (m, n) = (t.m, t.n);
    let (l, mu, nu) = (&t.lambda, &t.mu, &t.nu);
    let mn = m * n;
    let mut ineqs = vec![Inequality::new(
        "s0".into(),
        sum(l, 1..=m),
        nu.part(1) as i128,
    )];
    for a in 1..m {
        let left = sum(l, 1..=a) - sum(l, m + a * (n - 1) + 1..=mn);
        let right = nu.part(1) as i128 - sum(mu, a + 1..=m);
        ineqs.push(Inequality::new(format!("a{a}"), left, right));
    }
    for b in 1..=n.saturating_sub(2) {
        let mut left = m as i128 * l.part(1) as i128;
        for k in 2..=m {
            left += (m - k + 1) as i128 * l.part(k) as i128;
        }
        left += sum(l, m + 1..=m + b);
        for i in 1..m {
            for j in 1..=b {
                left -= (i - 1) as i128 * l.part(m + i * (n - 1) + j) as i128;
            }
            for j in b + 1..n {
                left -= i as i128 * l.part(m + i * (n - 1) + j) as i128;
            }
        }
        let mut right = m as i128 * nu.part(1) as i128 + sum(nu, 2..=b + 1);
        for k in 2..=m {
            right -= (k - 1) as i128 * mu.part(k) as i128;
        }
        ineqs.push(Inequality::new(format!("b{b}"), left, right));
    }
    let conclusion = if ineqs.iter().all(|q| q.holds) {
        Conclusion::MayBeNonzero
    } else {
        Conclusion::ForcedZero
    };
    VanishingReport {
        triple: t.clone(),
        inequalities: ineqs,
        conclusion,
    }
}

/// True when some coordinate of `b(lambda, mu, nu; Id)` is negative, so the
/// atomic coefficient, and with it the coefficient, is zero.
pub fn check_atomic_vanishing(t: &PartitionTriple) -> bool {
    identity_b(t).iter().any(|&x| x < 0)
}

/// One instance `N + lambda_1 + lambda_{e+j} <= mu_1 + nu_1 + nu_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RessayreInstance {
    pub j: usize,
    pub left: u64,
    pub right: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RessayreReport {
    pub e: usize,
    pub f: usize,
    /// Whether the length hypotheses hold.
    pub applicable: bool,
    pub instances: Vec<RessayreInstance>,
    /// The inequality family claims the coefficient is zero.
    pub predicts_zero: bool,
}

/// Evaluates the `(e, f)` inequality family for partitions of a common size.
/// Only a diagnostic: it is known to misclassify some triples.
pub fn ressayre_check(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    e: usize,
    f: usize,
) -> RessayreReport {
    let applicable = e >= 1
        && f >= 1
        && mu.length() <= e + 1
        && nu.length() <= f + 1
        && lambda.length() <= e + f + 1
        && lambda.size() == mu.size()
        && lambda.size() == nu.size();
    let size = lambda.size();
    let instances: Vec<RessayreInstance> = (2..=f + 1)
        .map(|j| {
            let left = size + lambda.part(1) as u64 + lambda.part(e + j) as u64;
            let right = mu.part(1) as u64 + nu.part(1) as u64 + nu.part(j) as u64;
            RessayreInstance {
                j,
                left,
                right,
                holds: left <= right,
            }
        })
        .collect();
    let predicts_zero = applicable && instances.iter().any(|i| !i.holds);
    RessayreReport {
        e,
        f,
        applicable,
        instances,
        predicts_zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_face_triple_holds_with_equality_in_b() {
        let t = PartitionTriple::parse(2, 3, "10,8,5,3,2,2", "18,12", "18,7,5").unwrap();
        let r = check_vanishing(&t);
        assert_eq!(r.conclusion, Conclusion::MayBeNonzero);
        assert_eq!(r.inequalities.len(), 3);
        assert!(!check_atomic_vanishing(&t));
    }

    #[test]
    fn rectangular_holds() {
        let t = PartitionTriple::parse(2, 2, "3,3,3,3", "6,6", "6,6").unwrap();
        assert!(!check_vanishing(&t).forced_zero());
    }

    #[test]
    fn ressayre_counterexamples() {
        let p = |s: &str| Partition::from_parts(crate::parse_partition(s, 8).unwrap().parts()).unwrap();
        let r = ressayre_check(&p("1,1,1,1"), &p("2,2"), &p("2,2"), 1, 3);
        assert!(r.applicable && r.predicts_zero);
        assert_eq!((r.instances[2].left, r.instances[2].right), (5, 4));
        let r = ressayre_check(&p("4"), &p("2,2"), &p("2,2"), 1, 3);
        assert!(r.predicts_zero);
    }
}
