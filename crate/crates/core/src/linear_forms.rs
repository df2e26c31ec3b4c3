//! Linear forms in the parts of `(lambda, mu, nu)` and the partition function
//! input `b(lambda, mu, nu; sigma) = r(mu, nu) + (alpha, beta) - l(lambda; sigma)`.
//!
//! Coordinates are ordered `s_0..s_{m-1}, t_1..t_{n-2}` throughout.

use std::ops::{Add, Sub};
use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;

use crate::partition::{Partition, PartitionTriple};
use crate::permutation::Permutation;
use crate::substitution::{build_degree_table, DegreeTable};

/// Integer coefficients over `lambda_1..lambda_mn, mu_1..mu_m, nu_1..nu_n`
/// plus a constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearForm {
    pub coeff_lambda: Vec<i64>,
    pub coeff_mu: Vec<i64>,
    pub coeff_nu: Vec<i64>,
    pub constant: i64,
}

impl LinearForm {
    pub fn zero(m: usize, n: usize) -> LinearForm {
        LinearForm {
            coeff_lambda: vec![0; m * n],
            coeff_mu: vec![0; m],
            coeff_nu: vec![0; n],
            constant: 0,
        }
    }

    pub fn eval(&self, t: &PartitionTriple) -> i128 {
        fn dot(c: &[i64], p: &Partition) -> i128 {
            c.iter()
                .zip(p.parts())
                .map(|(&c, &x)| c as i128 * x as i128)
                .sum()
        }
        dot(&self.coeff_lambda, &t.lambda)
            + dot(&self.coeff_mu, &t.mu)
            + dot(&self.coeff_nu, &t.nu)
            + self.constant as i128
    }

    pub fn is_constant(&self) -> bool {
        self.coeff_lambda
            .iter()
            .chain(&self.coeff_mu)
            .chain(&self.coeff_nu)
            .all(|&c| c == 0)
    }

    /// Whether the form is `>= 0` at every partition `lambda`, given that it
    /// does not involve `mu` or `nu`: all prefix sums of the `lambda`
    /// coefficients and the constant must be non-negative.
    pub fn nonnegative_on_partitions(&self) -> bool {
        if self.coeff_mu.iter().chain(&self.coeff_nu).any(|&c| c != 0) {
            return false;
        }
        let mut prefix = 0i64;
        for &c in &self.coeff_lambda {
            prefix += c;
            if prefix < 0 {
                return false;
            }
        }
        self.constant >= 0
    }
}

impl<'a> Add for &'a LinearForm {
    type Output = LinearForm;

    fn add(self, rhs: &'a LinearForm) -> LinearForm {
        let zip = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        LinearForm {
            coeff_lambda: zip(&self.coeff_lambda, &rhs.coeff_lambda),
            coeff_mu: zip(&self.coeff_mu, &rhs.coeff_mu),
            coeff_nu: zip(&self.coeff_nu, &rhs.coeff_nu),
            constant: self.constant + rhs.constant,
        }
    }
}

impl<'a> Sub for &'a LinearForm {
    type Output = LinearForm;

    fn sub(self, rhs: &'a LinearForm) -> LinearForm {
        let zip = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect();
        LinearForm {
            coeff_lambda: zip(&self.coeff_lambda, &rhs.coeff_lambda),
            coeff_mu: zip(&self.coeff_mu, &rhs.coeff_mu),
            coeff_nu: zip(&self.coeff_nu, &rhs.coeff_nu),
            constant: self.constant - rhs.constant,
        }
    }
}

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn binom3(k: i64) -> i64 {
    k * (k - 1) * (k - 2) / 6
}

/// `(alpha_0..alpha_{m-1}, beta_1..beta_{n-2})`.
pub fn alpha_beta(m: usize, n: usize) -> Vec<i64> {
    assert!(m >= 2 && n >= 2, "alpha_beta needs m,n >= 2");
    let (mi, ni) = (m as i64, n as i64);
    let mut out = Vec::with_capacity(m + n - 2);
    out.push((ni * mi + ni - mi - 2) * (ni - 1) * (mi - 1) / 2);
    for u in 1..mi {
        let v = (u * u * ni - 2 * u * ni * mi + 2 * ni * mi * mi - u * u + u - ni - 2 * mi + 2)
            * (ni - 1);
        debug_assert_eq!(v % 2, 0);
        out.push(v / 2);
    }
    for v in 1..=ni - 2 {
        let p = (8 * ni * ni * mi * mi - 6 * v * ni * mi + 5 * ni * ni * mi - 10 * ni * mi * mi
            + 6 * v * v
            - 12 * v * ni
            + 6 * v * mi
            - 19 * ni * mi
            + 2 * mi * mi
            + 18 * v
            + 14 * mi)
            * (mi - 1);
        debug_assert_eq!(p % 12, 0);
        out.push(p / 12);
    }
    out
}

/// `(r_s, r_t)` as linear forms in `mu, nu`.
pub fn rs_rt_forms(m: usize, n: usize) -> Vec<LinearForm> {
    assert!(m >= 2 && n >= 2, "rs_rt needs m,n >= 2");
    let (mi, ni) = (m as i64, n as i64);
    let mut out = Vec::with_capacity(m + n - 2);
    let nu_tail = |f: &mut LinearForm| {
        for j in 1..n {
            f.coeff_nu[j] += 1;
        }
    };
    let mut f0 = LinearForm::zero(m, n);
    nu_tail(&mut f0);
    f0.constant = binom2(ni - 1);
    out.push(f0);
    for u in 1..m {
        let mut f = LinearForm::zero(m, n);
        for i in u..m {
            f.coeff_mu[i] += 1;
        }
        nu_tail(&mut f);
        f.constant = binom2(mi - u as i64) + binom2(ni - 1);
        out.push(f);
    }
    for v in 1..=n.saturating_sub(2) {
        let mut f = LinearForm::zero(m, n);
        for i in 2..=m {
            f.coeff_mu[i - 1] += i as i64 - 1;
        }
        for j in 2..=v + 1 {
            f.coeff_nu[j - 1] += mi - 1;
        }
        for j in v + 2..=n {
            f.coeff_nu[j - 1] += mi;
        }
        f.constant = binom3(mi) + (mi - 1) * binom2(ni - 1) + binom2(ni - v as i64 - 1);
        out.push(f);
    }
    out
}

fn eval_all(forms: &[LinearForm], t: &PartitionTriple) -> Vec<i64> {
    forms
        .iter()
        .map(|f| i64::try_from(f.eval(t)).expect("coordinate fits in i64"))
        .collect()
}

pub fn rs_rt(mu: &Partition, nu: &Partition, m: usize, n: usize) -> Vec<i64> {
    let t = PartitionTriple {
        m,
        n,
        lambda: Partition::empty(m * n),
        mu: mu.padded(m).expect("mu fits"),
        nu: nu.padded(n).expect("nu fits"),
    };
    eval_all(&rs_rt_forms(m, n), &t)
}

/// `(l_s, l_t)(lambda; sigma)` as linear forms: coordinate `k` is
/// `sum_z (lambda_{sigma(z)} + mn - sigma(z)) deg_k(z)` with 1-based `sigma(z)`.
pub fn ls_lt_forms(sigma: &Permutation, table: &DegreeTable) -> Vec<LinearForm> {
    let (m, n) = (table.m, table.n);
    let mn = m * n;
    assert_eq!(sigma.len(), mn, "sigma must permute 1..mn");
    let mut out = vec![LinearForm::zero(m, n); table.coordinates()];
    for z in 0..mn {
        let v = sigma.apply(z);
        for (k, &d) in table.degree(z).iter().enumerate() {
            out[k].coeff_lambda[v] += d as i64;
            out[k].constant += (mn - 1 - v) as i64 * d as i64;
        }
    }
    out
}

pub fn ls_lt(
    lambda: &Partition,
    sigma: &Permutation,
    m: usize,
    n: usize,
    table: &DegreeTable,
) -> Vec<i64> {
    debug_assert_eq!((table.m, table.n), (m, n));
    let t = PartitionTriple {
        m,
        n,
        lambda: lambda.padded(m * n).expect("lambda fits"),
        mu: Partition::empty(m),
        nu: Partition::empty(n),
    };
    eval_all(&ls_lt_forms(sigma, table), &t)
}

/// The forms `b(.; sigma) = r + (alpha, beta) - l(.; sigma)`.
pub fn b_forms(sigma: &Permutation, table: &DegreeTable) -> Vec<LinearForm> {
    let r = rs_rt_forms(table.m, table.n);
    let ab = alpha_beta(table.m, table.n);
    let l = ls_lt_forms(sigma, table);
    r.iter()
        .zip(&ab)
        .zip(&l)
        .map(|((r, &a), l)| {
            let mut f = r - l;
            f.constant += a;
            f
        })
        .collect()
}

/// Argument of the partition function for one alternant term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VpfInput {
    pub coords: Vec<i64>,
    pub sigma: Permutation,
    pub sign: i8,
}

pub fn vpf_input(t: &PartitionTriple, sigma: &Permutation) -> VpfInput {
    vpf_input_with(&build_degree_table(t.m, t.n), t, sigma)
}

pub fn vpf_input_with(table: &DegreeTable, t: &PartitionTriple, sigma: &Permutation) -> VpfInput {
    debug_assert_eq!((table.m, table.n), (t.m, t.n));
    VpfInput {
        coords: eval_all(&b_forms(sigma, table), t),
        sigma: sigma.clone(),
        sign: sigma.sign(),
    }
}

/// `b(.; Id)`, whose constants all vanish.
pub fn identity_forms(table: &DegreeTable) -> Vec<LinearForm> {
    b_forms(&Permutation::identity(table.m * table.n), table)
}

/// Lazily filled per-permutation cache of `(l_s, l_t)` forms.
pub struct FormCache {
    table: DegreeTable,
    cache: DashMap<Permutation, Arc<Vec<LinearForm>>>,
}

impl FormCache {
    pub fn new(m: usize, n: usize) -> FormCache {
        FormCache {
            table: build_degree_table(m, n),
            cache: DashMap::new(),
        }
    }

    pub fn table(&self) -> &DegreeTable {
        &self.table
    }

    pub fn l_forms(&self, sigma: &Permutation) -> Arc<Vec<LinearForm>> {
        if let Some(hit) = self.cache.get(sigma) {
            return Arc::clone(&hit);
        }
        let forms = Arc::new(ls_lt_forms(sigma, &self.table));
        self.cache.insert(sigma.clone(), Arc::clone(&forms));
        forms
    }

    /// Whether `l(sigma2) - l(sigma1) >= 0` coordinatewise for all `lambda`,
    /// i.e. `sigma1 >= sigma2` in the term poset.
    pub fn dominates(&self, sigma1: &Permutation, sigma2: &Permutation) -> bool {
        let (a, b) = (self.l_forms(sigma1), self.l_forms(sigma2));
        a.iter()
            .zip(b.iter())
            .all(|(f1, f2)| (f2 - f1).nonnegative_on_partitions())
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::lex_permutations;
    use crate::substitution::Variable;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    /// The sigma-generic expressions written out per coordinate, with sigma
    /// applied to every summand.
    fn explicit_l(lambda: &Partition, sigma: &Permutation, m: usize, n: usize) -> Vec<i64> {
        let mn = m * n;
        let w = |i: usize| -> i64 {
            let v = sigma.apply(i - 1) + 1;
            lambda.part(v) as i64 + (mn - v) as i64
        };
        let mut out = Vec::new();
        out.push((m + 1..=mn).map(w).sum());
        for u in 1..m {
            let cut = m + u * (n - 1);
            out.push((u + 1..=cut).map(w).sum::<i64>() + 2 * (cut + 1..=mn).map(w).sum::<i64>());
        }
        for v in 1..=n - 2 {
            let mut s: i64 = (2..=m).map(|i| (i as i64 - 1) * w(i)).sum();
            s += (m as i64 - 1) * (m + 1..=m + v).map(w).sum::<i64>();
            s += m as i64 * (m + v + 1..=m + n - 1).map(w).sum::<i64>();
            for i in 1..m {
                for j in 1..=v {
                    s += (i + m - 1) as i64 * w(m + i * (n - 1) + j);
                }
                for j in v + 1..n {
                    s += (i + m) as i64 * w(m + i * (n - 1) + j);
                }
            }
            out.push(s);
        }
        out
    }

    /// Closed-form constants of `l(.; Id)`.
    fn explicit_identity_constants(m: i64, n: i64) -> Vec<i64> {
        let mut out = vec![(n * m - m - 1) * (n - 1) * m / 2];
        for u in 1..m {
            let twice = (m - u) * (2 * m * n - u - m - 1)
                + 2 * ((n - 1) * (n - 1) * m - n * (n - 1) / 2)
                + (n - 1) * (m - 1) * (n * (m - 1) - m)
                + (n - 1) * (m - u) * (m * n - u * (n - 1) - m - 1);
            out.push(twice / 2);
        }
        for v in 1..=n - 2 {
            let inner = (8 * m * m - 3 * m + 1) * n * n - (m + 1) * (10 * m + 6 * v - 1) * n
                + 2 * (3 * v * v + 3 * v * m + 2 * m * m + 6 * v + 3 * m + 1);
            assert_eq!(m * inner % 12, 0);
            out.push(m * inner / 12);
        }
        out
    }

    /// `alpha` and the constants of `r` read off the degree table: a cross
    /// pair `(z_a, z_b)` contributes `deg(z_a)` to `alpha`.
    fn degree_route_alpha(m: usize, n: usize) -> Vec<i64> {
        let table = build_degree_table(m, n);
        let matrix = crate::substitution::build_matrix(m, n).unwrap();
        let mut alpha = vec![0i64; table.coordinates()];
        for c in matrix.columns() {
            let lower = table.position(c.provenance.unwrap().lower);
            for (k, &d) in table.degree(lower).iter().enumerate() {
                alpha[k] += d as i64;
            }
        }
        alpha
    }

    fn degree_route_r(mu: &Partition, nu: &Partition, m: usize, n: usize) -> Vec<i64> {
        let table = build_degree_table(m, n);
        let mut r = vec![0i64; table.coordinates()];
        for i in 0..m {
            let z = table.position(if i == 0 { Variable::One } else { Variable::X(i) });
            for (k, &d) in table.degree(z).iter().enumerate() {
                r[k] += (mu.part(i + 1) as i64 + (m - 1 - i) as i64) * d as i64;
            }
        }
        for j in 0..n {
            let z = table.position(if j == 0 { Variable::One } else { Variable::Y(j) });
            for (k, &d) in table.degree(z).iter().enumerate() {
                r[k] += (nu.part(j + 1) as i64 + (n - 1 - j) as i64) * d as i64;
            }
        }
        r
    }

    fn random_partition<R: Rng>(rng: &mut R, len: usize, max: u32) -> Partition {
        let mut parts: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=max)).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(&parts, len).unwrap()
    }

    #[test]
    fn alpha_beta_values() {
        assert_eq!(alpha_beta(2, 2), vec![1, 3]);
        assert_eq!(alpha_beta(2, 3), vec![5, 10, 12]);
        assert_eq!(alpha_beta(2, 4), vec![12, 21, 28, 24]);
        assert_eq!(alpha_beta(3, 3), vec![14, 32, 21, 59]);
    }

    #[test]
    fn alpha_beta_and_r_agree_with_degree_route() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for m in 2..=4 {
            for n in 2..=4 {
                assert_eq!(alpha_beta(m, n), degree_route_alpha(m, n), "({m},{n})");
                for _ in 0..20 {
                    let mu = random_partition(&mut rng, m, 20);
                    let nu = random_partition(&mut rng, n, 20);
                    assert_eq!(rs_rt(&mu, &nu, m, n), degree_route_r(&mu, &nu, m, n));
                }
            }
        }
    }

    #[test]
    fn r_example() {
        let mu = Partition::from_parts(&[12, 3]).unwrap();
        let nu = Partition::from_parts(&[5, 4, 3]).unwrap();
        assert_eq!(rs_rt(&mu, &nu, 2, 3), vec![8, 11, 14]);
        let z2 = Partition::empty(2);
        assert_eq!(rs_rt(&z2, &Partition::empty(4), 2, 4)[0], 3);
    }

    #[test]
    fn identity_constants_cancel() {
        for m in 2..=4 {
            for n in 2..=4 {
                let table = build_degree_table(m, n);
                for f in identity_forms(&table) {
                    assert_eq!(f.constant, 0, "({m},{n})");
                }
                let l = ls_lt_forms(&Permutation::identity(m * n), &table);
                let consts: Vec<i64> = l.iter().map(|f| f.constant).collect();
                assert_eq!(consts, explicit_identity_constants(m as i64, n as i64));
            }
        }
    }

    #[test]
    fn routes_agree_exhaustively_small() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let table = build_degree_table(m, n);
            let lambda = random_partition(&mut rng, m * n, 30);
            for (sigma, _) in lex_permutations(m * n) {
                assert_eq!(
                    ls_lt(&lambda, &sigma, m, n, &table),
                    explicit_l(&lambda, &sigma, m, n)
                );
            }
        }
    }

    #[test]
    fn routes_agree_random() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(13);
        for (m, n) in [(2, 3), (2, 4), (3, 3), (4, 2)] {
            let table = build_degree_table(m, n);
            for _ in 0..200 {
                let lambda = random_partition(&mut rng, m * n, 50);
                let mut img: Vec<u8> = (0..(m * n) as u8).collect();
                img.shuffle(&mut rng);
                let sigma = Permutation::from_images(img).unwrap();
                assert_eq!(
                    ls_lt(&lambda, &sigma, m, n, &table),
                    explicit_l(&lambda, &sigma, m, n)
                );
            }
        }
    }

    #[test]
    fn identity_b_examples() {
        let t = PartitionTriple::parse(2, 3, "6,4,4,1", "12,3", "5,4,3").unwrap();
        let b = vpf_input(&t, &Permutation::identity(6));
        assert_eq!(b.coords, vec![2, 1, 3]);
        assert_eq!(b.sign, 1);
        let t = PartitionTriple::parse(2, 2, "12,7,4,1", "12,12", "12,12").unwrap();
        assert_eq!(vpf_input(&t, &Permutation::identity(4)).coords, vec![7, 11]);
        let t = PartitionTriple::parse(2, 3, "12,7,4,1", "12,12", "12,12").unwrap();
        assert_eq!(vpf_input(&t, &Permutation::identity(6)).coords, vec![7, 12, 11]);
        let t = PartitionTriple::parse(3, 3, "15,15,15,10,10,10,10,10,5", "35,35,30", "40,30,30")
            .unwrap();
        assert_eq!(vpf_input(&t, &Permutation::identity(9)).coords, vec![5, 5, 5, 15]);
    }

    #[test]
    fn identity_b_matches_two_by_three_formula() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        let table = build_degree_table(2, 3);
        for _ in 0..100 {
            let l = random_partition(&mut rng, 6, 20);
            let mu = random_partition(&mut rng, 2, 40);
            let nu = random_partition(&mut rng, 3, 40);
            let t = PartitionTriple::new(2, 3, &l, &mu, &nu).unwrap();
            let p = |i| l.part(i) as i64;
            let (m2, n2, n3) = (mu.part(2) as i64, nu.part(2) as i64, nu.part(3) as i64);
            let expect = vec![
                n2 + n3 - p(3) - p(4) - p(5) - p(6),
                m2 + n2 + n3 - p(2) - p(3) - p(4) - 2 * p(5) - 2 * p(6),
                m2 + n2 + 2 * n3 - p(2) - p(3) - 2 * p(4) - 2 * p(5) - 3 * p(6),
            ];
            assert_eq!(vpf_input_with(&table, &t, &Permutation::identity(6)).coords, expect);
        }
    }

    #[test]
    fn identity_is_minimal() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let cache = FormCache::new(m, n);
            let id = Permutation::identity(m * n);
            for (sigma, _) in lex_permutations(m * n) {
                assert!(cache.dominates(&id, &sigma), "{sigma}");
            }
        }
    }

    #[test]
    fn prefix_criterion() {
        let mut f = LinearForm::zero(1, 3);
        f.coeff_lambda = vec![1, -1, 0];
        assert!(f.nonnegative_on_partitions());
        f.coeff_lambda = vec![0, 1, -2];
        assert!(!f.nonnegative_on_partitions());
        f.coeff_lambda = vec![0, 0, 0];
        f.constant = -1;
        assert!(!f.nonnegative_on_partitions());
    }
}
