//! Upper bounds for atomic and ordinary Kronecker coefficients.
//!
//! Every column of `A^{m,n}` can be swapped for a standard basis vector `e_k`
//! at which it is positive without decreasing `p_A`. Once all columns are
//! swapped, `p_A(b)` is a product of multiset coefficients, one per
//! coordinate. [`replacement_accounting`] performs the swap on the actual
//! columns; [`atomic_binomial_bound`] uses the closed-form tallies.

use std::fmt;

use num_bigint::BigUint;
use num_integer::{binomial, Integer};
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear_forms::vpf_input_with;
use crate::partition::{dimension, factorial, PartitionTriple};
use crate::permutation::Permutation;
use crate::substitution::{build_degree_table, build_matrix, Column, Factor};
use crate::vpf::multichoose;

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn choose2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// The closed-form constants `c_1, c_2, c_3, f_1, f_2` for shape `(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundConstants {
    pub m: usize,
    pub n: usize,
}

impl BoundConstants {
    pub fn new(m: usize, n: usize) -> BoundConstants {
        BoundConstants { m, n }
    }

    pub fn c1(&self) -> i64 {
        let (m, n) = (self.m as i64, self.n as i64);
        (m * m - 1) * (n - 1) - 1
    }

    pub fn c2(&self) -> i64 {
        let (m, n) = (self.m as i64, self.n as i64);
        (m - 1) * (n - 1) * (n - 1) - 1
    }

    pub fn c3(&self) -> i64 {
        let (m, n) = (self.m as i64, self.n as i64);
        choose2(m - 1) * (n - 1) + (m - 1) - 1
    }

    pub fn f1(&self, i: usize) -> i64 {
        2 * choose2(self.n as i64 - 1) * (i as i64 - 2) - 1
    }

    pub fn f2(&self, j: usize) -> i64 {
        (self.n as i64 - j as i64 - 1) * (self.m as i64 - 1) - 1
    }

    /// `(label, 0-based coordinate, constant)` for every binomial factor, in
    /// the order they appear in the product.
    pub fn factors(&self) -> Vec<(String, usize, i64)> {
        let (m, n) = (self.m, self.n);
        let mut out = vec![
            ("c1".to_string(), 0, self.c1()),
            ("c2".to_string(), 1, self.c2()),
            ("c3".to_string(), m + n - 3, self.c3()),
        ];
        for i in 3..=m {
            out.push((format!("f1({i})"), i - 1, self.f1(i)));
        }
        for j in 1..n.saturating_sub(2) {
            out.push((format!("f2({j})"), m + j - 1, self.f2(j)));
        }
        out
    }

    /// Whether two factors of the printed product share a coordinate.
    pub fn has_collisions(&self) -> bool {
        let mut idx: Vec<usize> = self.factors().iter().map(|f| f.1).collect();
        idx.sort_unstable();
        idx.windows(2).any(|w| w[0] == w[1])
    }
}

/// `C(b + c, b)` read as "b balls in c + 1 boxes".
fn neg_binomial(b: u64, c: i64) -> BigUint {
    if c < -1 {
        return BigUint::zero();
    }
    multichoose(b, (c + 1) as u64)
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(Error::UnsupportedShape { m, n });
    }
    Ok(())
}

/// `b(lambda, mu, nu; Id)`.
pub fn identity_b(t: &PartitionTriple) -> Vec<i64> {
    let table = build_degree_table(t.m, t.n);
    vpf_input_with(&table, t, &Permutation::identity(t.m * t.n)).coords
}

/// Product of the printed binomial factors at the point `b`.
pub fn closed_form_product(m: usize, n: usize, b: &[u64]) -> BigUint {
    BoundConstants::new(m, n)
        .factors()
        .into_iter()
        .fold(BigUint::one(), |acc, (_, k, c)| acc * neg_binomial(b[k], c))
}

/// `prod_k C(b_k + t_k - 1, b_k)` for per-coordinate column tallies `t`.
pub fn tally_product(tally: &[u64], b: &[u64]) -> BigUint {
    tally
        .iter()
        .zip(b)
        .fold(BigUint::one(), |acc, (&t, &bk)| acc * multichoose(bk, t))
}

/// Evaluates the binomial bound at a non-negative point. Shapes whose printed
/// factors collide (`n = 2`, `m >= 3`) use the legal tally of the column walk.
fn binomial_bound_at(m: usize, n: usize, b: &[u64]) -> Result<BigUint> {
    if n == 2 && m >= 3 {
        let acc = replacement_tally(m, n)?;
        return Ok(tally_product(&acc.legal_tally(), b));
    }
    Ok(closed_form_product(m, n, b))
}

/// Binomial upper bound on the atomic coefficient. Zero when `b(Id)` has a
/// negative coordinate, since then the atomic coefficient vanishes.
pub fn atomic_binomial_bound(t: &PartitionTriple) -> Result<BigUint> {
    check_shape(t.m, t.n)?;
    let b = identity_b(t);
    if b.iter().any(|&x| x < 0) {
        return Ok(BigUint::zero());
    }
    let b: Vec<u64> = b.iter().map(|&x| x as u64).collect();
    binomial_bound_at(t.m, t.n, &b)
}

/// `(mn)! / 2`, the number of positive-sign terms.
pub fn half_factorial(m: usize, n: usize) -> BigUint {
    factorial((m * n) as u64) / 2u32
}

/// `(mn)!/2` times the atomic binomial bound.
pub fn kron_factorial_bound(t: &PartitionTriple) -> Result<BigUint> {
    Ok(half_factorial(t.m, t.n) * atomic_binomial_bound(t)?)
}

/// `(mn)!/2` times an exactly computed atomic coefficient.
pub fn kron_factorial_bound_from_atomic(m: usize, n: usize, atomic: &BigUint) -> BigUint {
    half_factorial(m, n) * atomic
}

/// The atomic bound with `b_1 -> N`, `b_i -> 2N`, `b_{m+j} -> (2m-1)N`.
pub fn n_only_atomic_bound(m: usize, n: usize, size: u64) -> Result<BigUint> {
    check_shape(m, n)?;
    let mut b = vec![2 * size; m + n - 2];
    b[0] = size;
    for v in b.iter_mut().skip(m) {
        *v = (2 * m as u64 - 1) * size;
    }
    binomial_bound_at(m, n, &b)
}

/// `(mn)!/2` times [`n_only_atomic_bound`].
pub fn n_only_bound(t: &PartitionTriple) -> Result<BigUint> {
    let size = t.common_size()?;
    Ok(half_factorial(t.m, t.n) * n_only_atomic_bound(t.m, t.n, size)?)
}

/// The three comparison bounds: the product of binomials over the parts of
/// `lambda`, the contingency-table bound, and the least dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PakPanova {
    #[serde(serialize_with = "as_string")]
    pub bound1: BigUint,
    #[serde(serialize_with = "as_string")]
    pub bound2: BigUint,
    #[serde(serialize_with = "as_string")]
    pub hook_bound: BigUint,
}

/// Comparison bounds with `lambda` treated as having at most `l` parts.
pub fn pak_panova_bounds(t: &PartitionTriple, l: usize) -> Result<PakPanova> {
    let mn = t.m * t.n;
    if t.lambda.length() > l {
        return Err(Error::LengthExceeded {
            found: t.lambda.length(),
            limit: l,
        });
    }
    if l > mn {
        return Err(Error::LengthBound(format!("l = {l} exceeds mn = {mn}")));
    }
    let size = t.common_size()?;

    let mut bound1 = BigUint::one();
    for i in 1..=l {
        let top = t.lambda.part(i) as u64 + (mn - i) as u64;
        bound1 *= binomial(BigUint::from(top), BigUint::from((mn - i) as u64));
    }

    let cells = (l * mn) as u64;
    let bound2 = if size == 0 {
        BigUint::one()
    } else {
        let total = BigUint::from(size + cells);
        let num = Pow::pow(&total, size + cells);
        let den = Pow::pow(BigUint::from(size), size) * Pow::pow(BigUint::from(cells), cells);
        num.div_ceil(&den)
    };

    let hook_bound = [&t.lambda, &t.mu, &t.nu]
        .iter()
        .map(|p| dimension(p))
        .min()
        .expect("three partitions");

    Ok(PakPanova {
        bound1,
        bound2,
        hook_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub label: String,
    /// `None` stands for an infinite or unavailable bound.
    #[serde(serialize_with = "opt_string")]
    pub value: Option<BigUint>,
    pub display: String,
}

fn opt_string<S: serde::Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_str("inf"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub triple: PartitionTriple,
    pub entries: Vec<BoundEntry>,
    pub best: String,
}

impl BoundReport {
    pub fn get(&self, label: &str) -> Option<&BigUint> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .and_then(|e| e.value.as_ref())
    }

    pub fn to_table(&self) -> String {
        let width = self.entries.iter().map(|e| e.label.len()).max().unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            let mark = if e.label == self.best { "  *" } else { "" };
            out.push_str(&format!("{:<width$}  {:>10}{mark}\n", e.label, e.display));
        }
        out
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_table())
    }
}

pub const LABEL_FACTORIAL: &str = "factorial-binomial";
pub const LABEL_N_ONLY: &str = "size-only";
pub const LABEL_PP1: &str = "pak-panova-1";
pub const LABEL_PP2: &str = "pak-panova-2";
pub const LABEL_HOOK: &str = "hook";

/// Evaluates every bound family and flags the smallest.
pub fn compare_bounds(t: &PartitionTriple) -> Result<BoundReport> {
    let l = t.lambda.length().max(1);
    let pp = pak_panova_bounds(t, l)?;
    let values = vec![
        (LABEL_FACTORIAL, Some(kron_factorial_bound(t)?)),
        (LABEL_N_ONLY, Some(n_only_bound(t)?)),
        (LABEL_PP1, Some(pp.bound1)),
        (LABEL_PP2, Some(pp.bound2)),
        (LABEL_HOOK, Some(pp.hook_bound)),
    ];
    let best = values
        .iter()
        .filter_map(|(l, v)| v.as_ref().map(|v| (l, v)))
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(l, _)| l.to_string())
        .unwrap_or_default();
    let entries = values
        .into_iter()
        .map(|(label, value)| BoundEntry {
            label: label.to_string(),
            display: value.as_ref().map_or("inf".to_string(), |v| scientific_ceil(v, 3)),
            value,
        })
        .collect();
    Ok(BoundReport {
        triple: t.clone(),
        entries,
        best,
    })
}

/// `v` in scientific notation with `digits` significant figures, rounded up
/// so that the display remains an upper bound. Small values print exactly.
pub fn scientific_ceil(v: &BigUint, digits: usize) -> String {
    let s = v.to_string();
    if s.len() <= digits.max(3) {
        return s;
    }
    let exp = s.len() - digits;
    let scale = Pow::pow(BigUint::from(10u32), exp);
    let mut mant = v.div_ceil(&scale).to_u64().expect("mantissa fits");
    let mut exp10 = s.len() - 1;
    if mant.to_string().len() > digits {
        mant /= 10;
        exp10 += 1;
    }
    let ms = mant.to_string();
    format!("{}.{}e{}", &ms[..1], &ms[1..], exp10)
}

/// One column of `A^{m,n}` with its chosen replacement.
#[derive(Clone, Debug, Serialize)]
pub struct Replacement {
    pub column: Vec<u32>,
    pub provenance: String,
    /// 0-based coordinate of the chosen `e_k`.
    pub target: usize,
    pub legal: bool,
    /// The highest positive coordinate, used when `target` is illegal.
    pub fallback: usize,
}

/// Expected against found tally for one coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TallyCheck {
    pub coordinate: usize,
    pub labels: Vec<String>,
    pub expected: u64,
    pub found: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplacementAccounting {
    pub m: usize,
    pub n: usize,
    pub replacements: Vec<Replacement>,
    /// Columns replaced by each `e_k`, 0-based.
    pub tally: Vec<u64>,
    pub checks: Vec<TallyCheck>,
}

impl ReplacementAccounting {
    pub fn total(&self) -> u64 {
        self.tally.iter().sum()
    }

    pub fn all_legal(&self) -> bool {
        self.replacements.iter().all(|r| r.legal)
    }

    pub fn mismatches(&self) -> Vec<&TallyCheck> {
        self.checks.iter().filter(|c| c.expected != c.found).collect()
    }

    /// Tally after redirecting illegal targets to their fallback.
    pub fn legal_tally(&self) -> Vec<u64> {
        let mut t = vec![0; self.tally.len()];
        for r in &self.replacements {
            t[if r.legal { r.target } else { r.fallback }] += 1;
        }
        t
    }

    pub fn is_consistent(&self) -> bool {
        self.all_legal() && self.mismatches().is_empty()
    }
}

fn target_for(col: &Column, m: usize, n: usize) -> usize {
    let factor = col.provenance.expect("built matrices carry provenance").factor;
    let e = &col.entries;
    match factor {
        Factor::A | Factor::B | Factor::C2 | Factor::D1 => 0,
        Factor::C1 | Factor::D2 => 1,
        Factor::E => (0..m).rev().find(|&k| e[k] > 0).unwrap_or(0),
        Factor::F1 => m + n - 3,
        Factor::F2 => (m..e.len()).find(|&k| e[k] > 0).unwrap_or(m + n - 3),
    }
}

/// Walks the columns of `A^{m,n}` and applies the fixed replacement choice
/// per factor family, without comparing to the closed forms.
pub fn replacement_tally(m: usize, n: usize) -> Result<ReplacementAccounting> {
    check_shape(m, n)?;
    let a = build_matrix(m, n)?;
    let rows = a.rows();
    let mut tally = vec![0u64; rows];
    let mut replacements = Vec::with_capacity(a.cols());
    for col in a.columns() {
        let target = target_for(col, m, n);
        let fallback = (0..rows).rev().find(|&k| col.entries[k] > 0).unwrap_or(0);
        tally[target] += 1;
        replacements.push(Replacement {
            column: col.entries.clone(),
            provenance: col.provenance.map(|p| p.to_string()).unwrap_or_default(),
            target,
            legal: col.entries[target] > 0,
            fallback,
        });
    }
    let mut checks: Vec<TallyCheck> = Vec::new();
    for (label, k, c) in BoundConstants::new(m, n).factors() {
        let expected = (c + 1).max(0) as u64;
        match checks.iter_mut().find(|ch| ch.coordinate == k) {
            Some(ch) => {
                ch.labels.push(label);
                ch.expected += expected;
            }
            None => checks.push(TallyCheck {
                coordinate: k,
                labels: vec![label],
                expected,
                found: tally[k],
            }),
        }
    }
    checks.sort_by_key(|c| c.coordinate);
    Ok(ReplacementAccounting {
        m,
        n,
        replacements,
        tally,
        checks,
    })
}

/// [`replacement_tally`], failing when a tally differs from its closed form
/// or a chosen target is not positive in its column.
pub fn replacement_accounting(m: usize, n: usize) -> Result<ReplacementAccounting> {
    let acc = replacement_tally(m, n)?;
    let mut problems: Vec<String> = acc
        .mismatches()
        .iter()
        .map(|c| {
            format!(
                "e{} ({}): expected {}, found {}",
                c.coordinate + 1,
                c.labels.join("+"),
                c.expected,
                c.found
            )
        })
        .collect();
    let illegal = acc.replacements.iter().filter(|r| !r.legal).count();
    if illegal > 0 {
        problems.push(format!("{illegal} illegal targets"));
    }
    if problems.is_empty() {
        Ok(acc)
    } else {
        Err(Error::AccountingMismatch(format!(
            "({m},{n}): {}",
            problems.join("; ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1() -> PartitionTriple {
        PartitionTriple::parse(3, 3, "15,15,15,10,10,10,10,10,5", "35,35,30", "40,30,30").unwrap()
    }

    #[test]
    fn constants_for_three_by_three() {
        let c = BoundConstants::new(3, 3);
        assert_eq!((c.c1(), c.c2(), c.f1(3), c.c3()), (15, 7, 1, 3));
        assert!(c.f2(1) >= -1);
    }

    #[test]
    fn scientific_rounds_up() {
        assert_eq!(scientific_ceil(&BigUint::from(5u32), 3), "5");
        assert_eq!(scientific_ceil(&BigUint::from(12345u32), 3), "1.24e4");
        assert_eq!(scientific_ceil(&BigUint::from(12300u32), 3), "1.23e4");
        assert_eq!(scientific_ceil(&BigUint::from(99999u32), 3), "1.00e5");
    }

    #[test]
    fn table1_values() {
        let t = table1();
        assert_eq!(identity_b(&t), vec![5, 5, 5, 15]);
        let r = compare_bounds(&t).unwrap();
        assert_eq!(r.entries[1].display, "5.38e45");
        assert_eq!(r.entries[2].display, "2.84e27");
        assert_eq!(r.entries[3].display, "1.13e54");
        assert_eq!(r.best, LABEL_FACTORIAL);
    }

    #[test]
    fn stable_face_bounds() {
        let t = PartitionTriple::parse(2, 3, "10,8,5,3,2,2", "18,12", "18,7,5").unwrap();
        assert_eq!(atomic_binomial_bound(&t).unwrap(), BigUint::one());
        assert_eq!(kron_factorial_bound(&t).unwrap(), half_factorial(2, 3));
        let z = PartitionTriple::parse(2, 3, "", "", "").unwrap();
        assert_eq!(n_only_bound(&z).unwrap(), half_factorial(2, 3));
    }

    #[test]
    fn accounting_small_shapes() {
        let a = replacement_accounting(2, 3).unwrap();
        assert_eq!(a.tally, vec![6, 4, 1]);
        for (m, n) in [(2, 4), (3, 3), (3, 4), (4, 4), (2, 5), (4, 3)] {
            let a = replacement_accounting(m, n).unwrap();
            assert_eq!(a.total() as usize, build_matrix(m, n).unwrap().cols());
        }
        assert_eq!(replacement_tally(3, 3).unwrap().total(), 30);
    }
}
