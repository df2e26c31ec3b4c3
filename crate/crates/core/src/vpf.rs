//! Exact evaluation of the vector partition function
//! `p_A(b) = #{x in N^d : A x = b}`.
//!
//! Three evaluators share one contract:
//! * [`MemoTable`], a memoized column recursion usable from many threads;
//! * [`DenseTable`], a bottom-up table over a whole box `[0, b]`, which answers
//!   every query dominated by `b` in O(1);
//! * [`brute_force_vpf`], plain backtracking used as an oracle.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use dashmap::DashMap;
use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{one_if, Count, Width};
use crate::substitution::VpfMatrix;

/// Number of ways to place `balls` balls into `boxes` boxes.
pub fn multichoose(balls: u64, boxes: u64) -> BigUint {
    if boxes == 0 {
        return if balls == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(BigUint::from(balls + boxes - 1), BigUint::from(boxes - 1))
}

fn multichoose_in<C: Count>(balls: u64, boxes: u64) -> Result<C> {
    if boxes <= 1 {
        return Ok(one_if(boxes == 1 || balls == 0));
    }
    let mut r: u128 = 1;
    for i in 1..boxes {
        match r.checked_mul((balls + i) as u128) {
            Some(v) => r = v / i as u128,
            None => return C::from_big(&multichoose(balls, boxes)).ok_or(Error::Overflow),
        }
    }
    C::from_u128(r).ok_or(Error::Overflow)
}

fn check_dims(a: &VpfMatrix, b: &[i64]) -> Result<()> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    Ok(())
}

/// Columns split into a branching part and a tail of standard basis vectors.
#[derive(Clone, Debug)]
struct Plan {
    branch: Vec<Vec<i64>>,
    tail: Vec<u64>,
}

impl Plan {
    fn new(a: &VpfMatrix) -> Plan {
        let mut branch: Vec<Vec<i64>> = Vec::new();
        let mut tail = vec![0u64; a.rows()];
        for c in a.columns() {
            match c.basis_index() {
                Some(k) => tail[k] += 1,
                None => branch.push(c.entries.iter().map(|&e| e as i64).collect()),
            }
        }
        branch.sort_by_key(|c| std::cmp::Reverse(c.iter().sum::<i64>()));
        Plan { branch, tail }
    }

    fn tail_count<C: Count>(&self, b: &[i64]) -> Result<C> {
        let mut acc = C::one();
        for (&bk, &k) in b.iter().zip(&self.tail) {
            let f: C = multichoose_in(bk as u64, k)?;
            if f.is_zero() {
                return Ok(C::zero());
            }
            acc = acc.checked_mul(&f).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }
}

/// Shared memo for the column recursion of one matrix, keyed by
/// `(column index, residual)`.
pub struct MemoTable<C> {
    matrix_hash: String,
    plan: Plan,
    entries: DashMap<(u16, Box<[i64]>), C>,
}

impl<C: Count> MemoTable<C> {
    pub fn new(a: &VpfMatrix) -> MemoTable<C> {
        MemoTable {
            matrix_hash: a.hash(),
            plan: Plan::new(a),
            entries: DashMap::new(),
        }
    }

    pub fn matrix_hash(&self) -> &str {
        &self.matrix_hash
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `p_A(b)` for the matrix this table was built for.
    pub fn eval(&self, b: &[i64]) -> Result<C> {
        if b.len() != self.plan.tail.len() {
            return Err(Error::DimensionMismatch {
                expected: self.plan.tail.len(),
                found: b.len(),
            });
        }
        if b.iter().any(|&x| x < 0) {
            return Ok(C::zero());
        }
        self.rec(0, b)
    }

    fn rec(&self, j: usize, b: &[i64]) -> Result<C> {
        if j == self.plan.branch.len() {
            return self.plan.tail_count(b);
        }
        let key = (j as u16, Box::<[i64]>::from(b));
        if let Some(hit) = self.entries.get(&key) {
            return Ok(hit.clone());
        }
        let col = &self.plan.branch[j];
        let mut residual = b.to_vec();
        let mut total = C::zero();
        loop {
            let part = self.rec(j + 1, &residual)?;
            if !total.checked_add_assign(&part) {
                return Err(Error::Overflow);
            }
            let mut ok = true;
            for (r, &c) in residual.iter_mut().zip(col) {
                *r -= c;
                ok &= *r >= 0;
            }
            if !ok {
                break;
            }
        }
        self.entries.insert(key, total.clone());
        Ok(total)
    }

    /// Writes the memo as text, sorted for reproducibility.
    pub fn save(&self, path: &Path) -> Result<()> {
        let sorted: BTreeMap<(u16, Vec<i64>), String> = self
            .entries
            .iter()
            .map(|e| ((e.key().0, e.key().1.to_vec()), e.value().to_string()))
            .collect();
        let mut out = format!("memo {}\n", self.matrix_hash);
        for ((j, r), v) in sorted {
            let r: Vec<String> = r.iter().map(i64::to_string).collect();
            out.push_str(&format!("{j} {} : {v}\n", r.join(" ")));
        }
        fs::write(path, out).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Loads entries saved for the same matrix; a different hash is an error.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        let found = header
            .strip_prefix("memo ")
            .ok_or_else(|| Error::Format(format!("bad memo header {header:?}")))?;
        if found != self.matrix_hash {
            return Err(Error::CacheMismatch {
                expected: self.matrix_hash.clone(),
                found: found.to_string(),
            });
        }
        let mut count = 0;
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let bad = || Error::Format(format!("bad memo line {line:?}"));
            let (key, value) = line.split_once(':').ok_or_else(bad)?;
            let mut nums = key.split_whitespace().map(str::parse::<i64>);
            let j = nums.next().ok_or_else(bad)?.map_err(|_| bad())?;
            let r: Vec<i64> = nums.collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
            let v: BigUint = value.trim().parse().map_err(|_| bad())?;
            let v = C::from_big(&v).ok_or(Error::Overflow)?;
            self.entries.insert((j as u16, r.into_boxed_slice()), v);
            count += 1;
        }
        Ok(count)
    }
}

/// `p_A(b)` via the shared memo.
pub fn vpf<C: Count>(a: &VpfMatrix, b: &[i64], memo: &MemoTable<C>) -> Result<C> {
    check_dims(a, b)?;
    debug_assert_eq!(memo.matrix_hash, a.hash());
    memo.eval(b)
}

/// Partial-state budget of [`brute_force_vpf`].
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// `p_A(b)` by backtracking over the columns in their given order.
pub fn brute_force_vpf(a: &VpfMatrix, b: &[i64]) -> Result<BigUint> {
    check_dims(a, b)?;
    if b.iter().any(|&x| x < 0) {
        return Ok(BigUint::zero());
    }
    let cols: Vec<Vec<i64>> = a
        .columns()
        .iter()
        .map(|c| c.entries.iter().map(|&e| e as i64).collect())
        .collect();
    fn rec(cols: &[Vec<i64>], r: &mut [i64], states: &mut u64) -> Result<u64> {
        *states += 1;
        if *states > BRUTE_FORCE_LIMIT {
            return Err(Error::TooLarge(format!(
                "more than {BRUTE_FORCE_LIMIT} partial states"
            )));
        }
        let Some((col, rest)) = cols.split_first() else {
            return Ok(u64::from(r.iter().all(|&x| x == 0)));
        };
        let mut total = 0u64;
        let mut k = 0i64;
        loop {
            total += rec(rest, r, states)?;
            let fits = r.iter().zip(col).all(|(&x, &c)| x >= c);
            if !fits {
                break;
            }
            for (x, &c) in r.iter_mut().zip(col) {
                *x -= c;
            }
            k += 1;
        }
        for (x, &c) in r.iter_mut().zip(col) {
            *x += k * c;
        }
        Ok(total)
    }
    let mut states = 0;
    Ok(BigUint::from(rec(&cols, &mut b.to_vec(), &mut states)?))
}

/// Degree of the generic quasi-polynomial pieces, `cols(A) - rank(A)`.
pub fn vpf_polynomial_degree(a: &VpfMatrix) -> usize {
    a.cols() - a.rank()
}

/// Upper bound for `p_A(b)` obtained by replacing every column with a
/// standard basis vector at one of its positive coordinates.
pub fn replacement_bound(a: &VpfMatrix, b: &[i64]) -> BigUint {
    if b.iter().any(|&x| x < 0) {
        return BigUint::zero();
    }
    let mut tally = vec![0u64; a.rows()];
    for c in a.columns() {
        let k = c.entries.iter().position(|&e| e > 0).expect("columns are nonzero");
        tally[k] += 1;
    }
    b.iter()
        .zip(&tally)
        .map(|(&bk, &k)| multichoose(bk as u64, k))
        .product()
}

/// The smallest count width guaranteed to hold `p_A(v)` for all `v <= b`.
pub fn width_for(a: &VpfMatrix, b: &[i64]) -> Width {
    Width::for_bound(&replacement_bound(a, b))
}

/// Number of cells of the box `[0, b]`, if it fits in `usize`.
pub fn box_cells(b: &[i64]) -> Option<usize> {
    b.iter()
        .try_fold(1usize, |acc, &x| acc.checked_mul(usize::try_from(x).ok()? + 1))
}

/// `p_A(v)` for every `v` in the box `[0, b]`.
pub struct DenseTable<C> {
    extent: Vec<i64>,
    strides: Vec<usize>,
    cells: Vec<C>,
}

impl<C: Count> DenseTable<C> {
    /// Builds the table, refusing when it would take more than `byte_limit`.
    pub fn build(a: &VpfMatrix, b: &[i64], byte_limit: usize) -> Result<DenseTable<C>> {
        check_dims(a, b)?;
        let b: Vec<i64> = b.iter().map(|&x| x.max(0)).collect();
        let total = box_cells(&b)
            .ok_or_else(|| Error::ResourceGuard("box volume overflows".into()))?;
        let per_cell = std::mem::size_of::<C>().max(8);
        if total.saturating_mul(per_cell) > byte_limit {
            return Err(Error::ResourceGuard(format!(
                "dense table of {total} cells exceeds {byte_limit} bytes"
            )));
        }
        let d = b.len();
        let mut strides = vec![1usize; d];
        for k in (0..d.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * (b[k + 1] as usize + 1);
        }
        let mut cells = vec![C::zero(); total];
        cells[0] = C::one();
        let mut table = DenseTable {
            extent: b.to_vec(),
            strides,
            cells,
        };
        for c in a.columns() {
            table.add_column(&c.entries)?;
        }
        Ok(table)
    }

    fn add_column(&mut self, col: &[u32]) -> Result<()> {
        let d = self.extent.len();
        if col.iter().zip(&self.extent).any(|(&c, &e)| c as i64 > e) {
            return Ok(());
        }
        if d == 0 {
            return Ok(());
        }
        let offset: usize = col.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum();
        let inner_lo = col[d - 1] as usize;
        let inner_hi = self.extent[d - 1] as usize;
        let mut outer: Vec<i64> = col[..d - 1].iter().map(|&c| c as i64).collect();
        loop {
            let base: usize = outer.iter().zip(&self.strides).map(|(&v, &s)| v as usize * s).sum();
            for i in base + inner_lo..=base + inner_hi {
                let src = self.cells[i - offset].clone();
                if !self.cells[i].checked_add_assign(&src) {
                    return Err(Error::Overflow);
                }
            }
            let mut k = d - 1;
            loop {
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
                outer[k] += 1;
                if outer[k] <= self.extent[k] {
                    break;
                }
                outer[k] = col[k] as i64;
            }
        }
    }

    pub fn extent(&self) -> &[i64] {
        &self.extent
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.extent.len() && v.iter().zip(&self.extent).all(|(&x, &e)| x <= e)
    }

    /// `p_A(v)`; zero when some coordinate is negative. Panics if `v` lies
    /// beyond the box.
    pub fn get(&self, v: &[i64]) -> C {
        if v.iter().any(|&x| x < 0) {
            return C::zero();
        }
        assert!(self.contains(v), "{v:?} lies outside the tabulated box");
        let idx: usize = v.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum();
        self.cells[idx].clone()
    }
}
