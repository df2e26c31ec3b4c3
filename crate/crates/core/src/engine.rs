//! Kronecker coefficients as signed sums over `S_mn`, atomic coefficients and
//! term analytics.
//!
//! Every `b(sigma)` is dominated by `b(Id)`, so one table of `p_A` over the
//! box `[0, b(Id)]` answers all terms. Permutations are enumerated
//! depth-first in lexicographic order; since every summand of
//! `l(lambda; sigma)` is non-negative, a prefix whose partial `l` already
//! exceeds `r + (alpha, beta)` in some coordinate is pruned together with all
//! its completions.

use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{is_feasible, Constraint, System};
use crate::linear_forms::{alpha_beta, b_forms, rs_rt, FormCache, LinearForm};
use crate::partition::PartitionTriple;
use crate::permutation::{lex_permutations, Permutation};
use crate::scalar::{signed, Field, Width};
use crate::substitution::{build_degree_table, matrix_from_table, DegreeTable, VpfMatrix};
use crate::vpf::{box_cells, width_for, DenseTable, MemoTable};

/// How `p_A` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Dense table when it fits the byte limit, memoized recursion otherwise.
    Auto,
    Dense,
    Memo,
}

#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub strategy: Strategy,
    /// Keep one [`TermReport`] per permutation, including skipped ones.
    pub collect_terms: bool,
    pub table_byte_limit: usize,
    /// Largest `mn` accepted by [`KronEngine::kronecker`].
    pub max_mn: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            strategy: Strategy::Auto,
            collect_terms: false,
            table_byte_limit: 3 << 30,
            max_mn: 12,
        }
    }
}

/// One alternant term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermReport {
    pub sigma: Permutation,
    pub sign: i8,
    pub b: Vec<i64>,
    #[serde(serialize_with = "as_string")]
    pub count: BigUint,
    pub skipped: bool,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct KronResult {
    #[serde(serialize_with = "as_string")]
    pub g: BigUint,
    #[serde(serialize_with = "as_string")]
    pub atomic: BigUint,
    /// Terms whose input had no negative coordinate.
    pub terms_evaluated: u64,
    pub terms_skipped: u64,
    /// Terms with `p_A(b) > 0`.
    pub nonzero_terms: u64,
    /// Terms with `sgn(sigma) p_A(b) > 0`.
    pub positive_terms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermReport>>,
}

enum Evaluator {
    Dense64(DenseTable<u64>),
    Dense128(DenseTable<u128>),
    DenseBig(DenseTable<BigUint>),
    Memo64(Arc<MemoTable<u64>>),
    Memo128(Arc<MemoTable<u128>>),
    MemoBig(Arc<MemoTable<BigUint>>),
}

impl Evaluator {
    fn count(&self, b: &[i64]) -> Result<BigUint> {
        Ok(match self {
            Evaluator::Dense64(t) => BigUint::from(t.get(b)),
            Evaluator::Dense128(t) => BigUint::from(t.get(b)),
            Evaluator::DenseBig(t) => t.get(b),
            Evaluator::Memo64(m) => BigUint::from(m.eval(b)?),
            Evaluator::Memo128(m) => BigUint::from(m.eval(b)?),
            Evaluator::MemoBig(m) => m.eval(b)?,
        })
    }

    fn covers(&self, b: &[i64]) -> bool {
        match self {
            Evaluator::Dense64(t) => t.contains(b),
            Evaluator::Dense128(t) => t.contains(b),
            Evaluator::DenseBig(t) => t.contains(b),
            _ => false,
        }
    }
}

/// Computes coefficients for one shape `(m, n)`, reusing its matrix, tables
/// and memos across calls.
pub struct KronEngine {
    m: usize,
    n: usize,
    table: DegreeTable,
    matrix: VpfMatrix,
    options: EngineOptions,
    dense: Mutex<Option<Arc<Evaluator>>>,
    memo64: OnceLock<Arc<MemoTable<u64>>>,
    memo128: OnceLock<Arc<MemoTable<u128>>>,
    memo_big: OnceLock<Arc<MemoTable<BigUint>>>,
}

impl KronEngine {
    pub fn new(m: usize, n: usize) -> Result<KronEngine> {
        KronEngine::with_options(m, n, EngineOptions::default())
    }

    pub fn with_options(m: usize, n: usize, options: EngineOptions) -> Result<KronEngine> {
        if m < 2 || n < 2 {
            return Err(Error::UnsupportedShape { m, n });
        }
        let table = build_degree_table(m, n);
        let matrix = matrix_from_table(&table);
        Ok(KronEngine {
            m,
            n,
            table,
            matrix,
            options,
            dense: Mutex::new(None),
            memo64: OnceLock::new(),
            memo128: OnceLock::new(),
            memo_big: OnceLock::new(),
        })
    }

    pub fn matrix(&self) -> &VpfMatrix {
        &self.matrix
    }

    pub fn degree_table(&self) -> &DegreeTable {
        &self.table
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    /// Shared memo for 128-bit counts, created on first use.
    pub fn memo_u128(&self) -> &Arc<MemoTable<u128>> {
        self.memo128.get_or_init(|| Arc::new(MemoTable::new(&self.matrix)))
    }

    pub fn memo_big(&self) -> &Arc<MemoTable<BigUint>> {
        self.memo_big.get_or_init(|| Arc::new(MemoTable::new(&self.matrix)))
    }

    pub fn memo_u64(&self) -> &Arc<MemoTable<u64>> {
        self.memo64.get_or_init(|| Arc::new(MemoTable::new(&self.matrix)))
    }

    fn memo_paths(&self, dir: &Path) -> [PathBuf; 3] {
        let hash = self.matrix.hash();
        let short = &hash[..hash.len().min(16)];
        ["u64", "u128", "big"].map(|w| dir.join(format!("memo-{}x{}-{short}-{w}.txt", self.m, self.n)))
    }

    /// Loads any memo files saved for this matrix under `dir`; returns the
    /// number of entries read.
    pub fn load_memos(&self, dir: &Path) -> Result<usize> {
        let [p64, p128, pbig] = self.memo_paths(dir);
        let mut count = 0;
        if p64.exists() {
            count += self.memo_u64().load(&p64)?;
        }
        if p128.exists() {
            count += self.memo_u128().load(&p128)?;
        }
        if pbig.exists() {
            count += self.memo_big().load(&pbig)?;
        }
        Ok(count)
    }

    /// Writes every non-empty memo under `dir`, creating it if needed.
    pub fn save_memos(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let [p64, p128, pbig] = self.memo_paths(dir);
        if let Some(m) = self.memo64.get().filter(|m| !m.is_empty()) {
            m.save(&p64)?;
        }
        if let Some(m) = self.memo128.get().filter(|m| !m.is_empty()) {
            m.save(&p128)?;
        }
        if let Some(m) = self.memo_big.get().filter(|m| !m.is_empty()) {
            m.save(&pbig)?;
        }
        Ok(())
    }

    fn check(&self, t: &PartitionTriple) -> Result<()> {
        if (t.m, t.n) != (self.m, self.n) {
            return Err(Error::LengthBound(format!(
                "triple has shape ({},{}), engine has ({},{})",
                t.m, t.n, self.m, self.n
            )));
        }
        t.common_size()?;
        Ok(())
    }

    /// `r(mu, nu) + (alpha, beta)`.
    fn base(&self, t: &PartitionTriple) -> Vec<i64> {
        rs_rt(&t.mu, &t.nu, self.m, self.n)
            .iter()
            .zip(alpha_beta(self.m, self.n))
            .map(|(r, a)| r + a)
            .collect()
    }

    /// `b(lambda, mu, nu; Id)`.
    pub fn identity_input(&self, t: &PartitionTriple) -> Vec<i64> {
        let base = self.base(t);
        let weights = self.weights(t);
        let mut b = base;
        for (z, &w) in weights.iter().enumerate() {
            for (k, &d) in self.table.degree(z).iter().enumerate() {
                b[k] -= w * d as i64;
            }
        }
        b
    }

    /// `lambda_v + mn - v` for 1-based `v`.
    fn weights(&self, t: &PartitionTriple) -> Vec<i64> {
        let mn = self.m * self.n;
        t.lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(v, &p)| p as i64 + (mn - 1 - v) as i64)
            .collect()
    }

    fn evaluator(&self, b_id: &[i64]) -> Result<Arc<Evaluator>> {
        let mut guard = self.dense.lock().expect("dense cache lock");
        if let Some(ev) = guard.as_ref() {
            if ev.covers(b_id) {
                return Ok(Arc::clone(ev));
            }
        }
        let width = width_for(&self.matrix, b_id);
        let cells = box_cells(b_id).unwrap_or(usize::MAX);
        let dense_fits = cells.saturating_mul(width.bytes()) <= self.options.table_byte_limit;
        let dense = match self.options.strategy {
            Strategy::Dense => true,
            Strategy::Memo => false,
            Strategy::Auto => dense_fits,
        };
        let ev = if dense {
            *guard = None;
            let limit = self.options.table_byte_limit;
            let ev = Arc::new(match width {
                Width::U64 => Evaluator::Dense64(DenseTable::build(&self.matrix, b_id, limit)?),
                Width::U128 => Evaluator::Dense128(DenseTable::build(&self.matrix, b_id, limit)?),
                Width::Big => Evaluator::DenseBig(DenseTable::build(&self.matrix, b_id, limit)?),
            });
            *guard = Some(Arc::clone(&ev));
            ev
        } else {
            Arc::new(match width {
                Width::U64 => Evaluator::Memo64(Arc::clone(self.memo_u64())),
                Width::U128 => Evaluator::Memo128(Arc::clone(self.memo_u128())),
                Width::Big => Evaluator::MemoBig(Arc::clone(self.memo_big())),
            })
        };
        Ok(ev)
    }

    /// `p_A(b(lambda, mu, nu; Id))`.
    pub fn atomic(&self, t: &PartitionTriple) -> Result<BigUint> {
        self.check(t)?;
        let b = self.identity_input(t);
        if b.iter().any(|&x| x < 0) {
            return Ok(BigUint::zero());
        }
        self.evaluator(&b)?.count(&b)
    }

    /// `p_A(b)` for an arbitrary input of this shape.
    pub fn partition_function(&self, b: &[i64]) -> Result<BigUint> {
        if b.len() != self.matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.rows(),
                found: b.len(),
            });
        }
        if b.iter().any(|&x| x < 0) {
            return Ok(BigUint::zero());
        }
        self.evaluator(b)?.count(b)
    }

    /// The signed sum over all permutations.
    pub fn kronecker(&self, t: &PartitionTriple) -> Result<KronResult> {
        self.check(t)?;
        let mn = self.m * self.n;
        if mn > self.options.max_mn.min(20) {
            return Err(Error::ResourceGuard(format!(
                "mn = {mn} exceeds the permutation limit {}",
                self.options.max_mn
            )));
        }
        let base = self.base(t);
        let b_id = self.identity_input(t);
        let evaluator = if b_id.iter().all(|&x| x >= 0) {
            Some(self.evaluator(&b_id)?)
        } else {
            None
        };
        let walk = Walk {
            base: &base,
            weights: self.weights(t),
            degrees: self
                .table
                .degrees()
                .iter()
                .map(|r| r.iter().map(|&d| d as i64).collect())
                .collect(),
            evaluator: evaluator.as_deref(),
            collect: self.options.collect_terms,
            factorials: (0..=mn as u64).scan(1u64, |f, k| {
                let out = *f;
                *f *= k + 1;
                Some(out)
            })
            .collect(),
        };
        let chunks: Vec<Result<Tally>> = (0..mn)
            .into_par_iter()
            .map(|first| walk.run(first))
            .collect();
        let mut total = Tally::default();
        for c in chunks {
            total.absorb(c?);
        }
        assert!(
            !total.sum.is_negative(),
            "negative signed sum {} for {t}",
            total.sum
        );
        let atomic = match &evaluator {
            Some(ev) => ev.count(&b_id)?,
            None => BigUint::zero(),
        };
        let evaluated = total.evaluated;
        let all: u64 = walk.factorials[mn];
        Ok(KronResult {
            g: total.sum.to_biguint().expect("non-negative"),
            atomic,
            terms_evaluated: evaluated,
            terms_skipped: all - evaluated,
            nonzero_terms: total.nonzero,
            positive_terms: total.positive,
            terms: self.options.collect_terms.then_some(total.terms),
        })
    }

    /// Number of permutations whose term is nonzero.
    pub fn count_contributing_terms(&self, t: &PartitionTriple) -> Result<u64> {
        Ok(self.kronecker(t)?.nonzero_terms)
    }

    /// `[g(base + k * direction) for k in 0..=k_max]`.
    pub fn stability_sequence(
        &self,
        base: &PartitionTriple,
        direction: &PartitionTriple,
        k_max: u32,
    ) -> Result<Vec<BigUint>> {
        (0..=k_max)
            .map(|k| Ok(self.kronecker(&base.add_scaled(direction, k)?)?.g))
            .collect()
    }
}

#[derive(Default)]
struct Tally {
    sum: BigInt,
    evaluated: u64,
    nonzero: u64,
    positive: u64,
    terms: Vec<TermReport>,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.sum += other.sum;
        self.evaluated += other.evaluated;
        self.nonzero += other.nonzero;
        self.positive += other.positive;
        self.terms.extend(other.terms);
    }
}

struct Walk<'a> {
    base: &'a [i64],
    weights: Vec<i64>,
    degrees: Vec<Vec<i64>>,
    evaluator: Option<&'a Evaluator>,
    collect: bool,
    factorials: Vec<u64>,
}

impl Walk<'_> {
    /// All permutations with `sigma(1) = first + 1`.
    fn run(&self, first: usize) -> Result<Tally> {
        let k = self.weights.len();
        let mut tally = Tally::default();
        let mut image = vec![0u8; k];
        let mut l = vec![0i64; self.base.len()];
        let used = 0u64;
        self.step(0, first, used, 1, &mut image, &mut l, &mut tally)?;
        Ok(tally)
    }

    #[allow(clippy::too_many_arguments)]
    fn step(
        &self,
        z: usize,
        v: usize,
        used: u64,
        sign: i8,
        image: &mut [u8],
        l: &mut [i64],
        tally: &mut Tally,
    ) -> Result<()> {
        let k = self.weights.len();
        let below = (!used & ((1u64 << v) - 1)).count_ones();
        let sign = if below % 2 == 1 { -sign } else { sign };
        let used = used | (1 << v);
        image[z] = v as u8;
        let w = self.weights[v];
        let mut over = false;
        for ((lk, &d), &bk) in l.iter_mut().zip(&self.degrees[z]).zip(self.base) {
            *lk += w * d;
            over |= *lk > bk;
        }
        if over && !self.collect {
            for (lk, &d) in l.iter_mut().zip(&self.degrees[z]) {
                *lk -= w * d;
            }
            return Ok(());
        }
        if z + 1 == k {
            self.leaf(sign, image, l, tally)?;
        } else {
            for next in 0..k {
                if used & (1 << next) == 0 {
                    self.step(z + 1, next, used, sign, image, l, tally)?;
                }
            }
        }
        for (lk, &d) in l.iter_mut().zip(&self.degrees[z]) {
            *lk -= w * d;
        }
        Ok(())
    }

    fn leaf(&self, sign: i8, image: &[u8], l: &[i64], tally: &mut Tally) -> Result<()> {
        let b: Vec<i64> = self.base.iter().zip(l).map(|(x, y)| x - y).collect();
        let skipped = b.iter().any(|&x| x < 0);
        let count = if skipped {
            BigUint::zero()
        } else {
            tally.evaluated += 1;
            let ev = self
                .evaluator
                .expect("a non-negative term implies a non-negative identity input");
            ev.count(&b)?
        };
        if !count.is_zero() {
            tally.nonzero += 1;
            if sign > 0 {
                tally.positive += 1;
            }
            tally.sum += signed(count.clone(), sign);
        }
        if self.collect {
            tally.terms.push(TermReport {
                sigma: Permutation::from_images(image.to_vec())?,
                sign,
                b,
                count,
                skipped,
            });
        }
        Ok(())
    }
}

fn shortcut(t: &PartitionTriple) -> Option<BigUint> {
    let eq = |a: &crate::Partition, b: &crate::Partition| a.nonzero() == b.nonzero();
    if t.m == 1 {
        Some(BigUint::from(u8::from(eq(&t.lambda, &t.nu))))
    } else if t.n == 1 {
        Some(BigUint::from(u8::from(eq(&t.lambda, &t.mu))))
    } else {
        None
    }
}

/// `g(lambda, mu, nu)` at the triple's shape with default options.
pub fn kronecker(t: &PartitionTriple) -> Result<BigUint> {
    t.common_size()?;
    if let Some(g) = shortcut(t) {
        return Ok(g);
    }
    Ok(KronEngine::new(t.m, t.n)?.kronecker(t)?.g)
}

/// The identity term `p_A(b(lambda, mu, nu; Id))` at the triple's shape.
pub fn atomic(t: &PartitionTriple) -> Result<BigUint> {
    KronEngine::new(t.m, t.n)?.atomic(t)
}

/// Number of permutations whose term is nonzero.
pub fn count_contributing_terms(t: &PartitionTriple) -> Result<u64> {
    KronEngine::new(t.m, t.n)?.count_contributing_terms(t)
}

pub fn stability_sequence(
    base: &PartitionTriple,
    direction: &PartitionTriple,
    k_max: u32,
) -> Result<Vec<BigUint>> {
    if shortcut(base).is_some() {
        return (0..=k_max)
            .map(|k| kronecker(&base.add_scaled(direction, k)?))
            .collect();
    }
    KronEngine::new(base.m, base.n)?.stability_sequence(base, direction, k_max)
}

/// Row limit for the elimination in [`feasible_sigma_set`].
pub const FEASIBILITY_ROW_LIMIT: usize = 200_000;

/// The inequalities `b(.; sigma) >= 0`, partition conditions and optionally
/// equal sizes, over coordinates `c` with `lambda_i = sum_{k >= i} c_k` (and
/// likewise for `mu`, `nu`), so that the partition conditions read `c >= 0`.
pub fn feasibility_system<F: Field>(
    forms: &[LinearForm],
    m: usize,
    n: usize,
    include_size_equality: bool,
) -> System<F> {
    let mn = m * n;
    let nvars = mn + m + n;
    let prefix = |c: &[i64]| -> Vec<i64> {
        c.iter()
            .scan(0i64, |s, &x| {
                *s += x;
                Some(*s)
            })
            .collect()
    };
    let mut system = System::new(nvars).nonnegative();
    for f in forms {
        let mut coeffs = prefix(&f.coeff_lambda);
        coeffs.extend(prefix(&f.coeff_mu));
        coeffs.extend(prefix(&f.coeff_nu));
        system.inequalities.push(Constraint::from_ints(&coeffs, f.constant));
    }
    if include_size_equality {
        let weight = |len: usize| (1..=len as i64).collect::<Vec<_>>();
        let (wl, wm, wn) = (weight(mn), weight(m), weight(n));
        let mut e1 = wl.clone();
        e1.extend(wm.iter().map(|x| -x));
        e1.extend(vec![0; n]);
        let mut e2 = wl;
        e2.extend(vec![0; m]);
        e2.extend(wn.iter().map(|x| -x));
        system.equalities.push(Constraint::from_ints(&e1, 0));
        system.equalities.push(Constraint::from_ints(&e2, 0));
    }
    system
}

/// Permutations whose term can be nonzero for some triple, decided exactly.
pub fn feasible_sigma_set(
    m: usize,
    n: usize,
    include_size_equality: bool,
) -> Result<Vec<Permutation>> {
    feasible_sigma_set_in::<BigRational>(m, n, include_size_equality)
}

pub fn feasible_sigma_set_in<F: Field>(
    m: usize,
    n: usize,
    include_size_equality: bool,
) -> Result<Vec<Permutation>> {
    if m < 2 || n < 2 {
        return Err(Error::UnsupportedShape { m, n });
    }
    if m * n > 8 {
        return Err(Error::ResourceGuard(format!(
            "feasibility analysis is limited to mn <= 8, got {}",
            m * n
        )));
    }
    let table = build_degree_table(m, n);
    let perms: Vec<Permutation> = lex_permutations(m * n).map(|(p, _)| p).collect();
    let verdicts: Vec<Result<bool>> = perms
        .par_iter()
        .map(|sigma| {
            let forms = b_forms(sigma, &table);
            let system = feasibility_system::<F>(&forms, m, n, include_size_equality);
            is_feasible(&system, FEASIBILITY_ROW_LIMIT)
        })
        .collect();
    let mut out = Vec::new();
    for (p, v) in perms.into_iter().zip(verdicts) {
        if v? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Hasse diagram of the dominance order on alternant terms.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaPoset {
    /// Classes of permutations with identical forms.
    pub elements: Vec<Vec<Permutation>>,
    /// `(upper, lower)` index pairs of covering relations.
    pub covers: Vec<(usize, usize)>,
    /// `ge[i][j]` iff element `i` is above or equal to element `j`.
    #[serde(skip)]
    pub ge: Vec<Vec<bool>>,
}

impl SigmaPoset {
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| (0..self.elements.len()).all(|j| j == i || !self.ge[j][i]))
            .collect()
    }

    pub fn index_of(&self, sigma: &Permutation) -> Option<usize> {
        self.elements.iter().position(|c| c.contains(sigma))
    }

    /// Labels of the elements covered by `sigma`.
    pub fn covered_by(&self, sigma: &Permutation) -> Vec<String> {
        let Some(i) = self.index_of(sigma) else {
            return Vec::new();
        };
        let mut out: Vec<String> = self
            .covers
            .iter()
            .filter(|(u, _)| *u == i)
            .map(|&(_, l)| self.elements[l][0].to_string())
            .collect();
        out.sort();
        out
    }
}

/// Largest number of elements [`build_sigma_poset`] compares pairwise.
pub const POSET_ELEMENT_LIMIT: usize = 6_000;

pub fn build_sigma_poset(
    m: usize,
    n: usize,
    restrict_to: Option<&[Permutation]>,
) -> Result<SigmaPoset> {
    if m < 2 || n < 2 {
        return Err(Error::UnsupportedShape { m, n });
    }
    let perms: Vec<Permutation> = match restrict_to {
        Some(r) => {
            let mut v = r.to_vec();
            v.sort();
            v.dedup();
            v
        }
        None => {
            if m * n > 8 {
                return Err(Error::ResourceGuard("poset needs mn <= 8".into()));
            }
            lex_permutations(m * n).map(|(p, _)| p).collect()
        }
    };
    if perms.len() > POSET_ELEMENT_LIMIT {
        return Err(Error::ResourceGuard(format!(
            "{} elements exceed the poset limit {POSET_ELEMENT_LIMIT}",
            perms.len()
        )));
    }
    let cache = FormCache::new(m, n);
    let mut elements: Vec<Vec<Permutation>> = Vec::new();
    let mut forms: Vec<Arc<Vec<LinearForm>>> = Vec::new();
    for p in perms {
        if p.len() != m * n {
            return Err(Error::DimensionMismatch {
                expected: m * n,
                found: p.len(),
            });
        }
        let f = cache.l_forms(&p);
        match forms.iter().position(|g| **g == *f) {
            Some(i) => elements[i].push(p),
            None => {
                forms.push(f);
                elements.push(vec![p]);
            }
        }
    }
    let k = elements.len();
    let ge: Vec<Vec<bool>> = (0..k)
        .into_par_iter()
        .map(|i| {
            (0..k)
                .map(|j| {
                    forms[i]
                        .iter()
                        .zip(forms[j].iter())
                        .all(|(fi, fj)| (fj - fi).nonnegative_on_partitions())
                })
                .collect()
        })
        .collect();
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j || !ge[i][j] {
                continue;
            }
            let between = (0..k).any(|c| c != i && c != j && ge[i][c] && ge[c][j]);
            if !between {
                covers.push((i, j));
            }
        }
    }
    Ok(SigmaPoset {
        elements,
        covers,
        ge,
    })
}
