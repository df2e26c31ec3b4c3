//! Exact elimination: rank and Fourier-Motzkin feasibility.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Rank of a dense matrix given by rows.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_negligible()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..a.len() {
            if i == r || a[i][c].is_negligible() {
                continue;
            }
            let factor = a[i][c].clone() / pivot.clone();
            for j in c..ncols {
                let delta = factor.clone() * a[r][j].clone();
                a[i][j] = a[i][j].clone() - delta;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Rank over the rationals of an integer matrix.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let q: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    rank(&q)
}

/// `coeffs . x + constant`, compared against zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint<F> {
    pub coeffs: Vec<F>,
    pub constant: F,
}

impl<F: Field> Constraint<F> {
    pub fn from_ints(coeffs: &[i64], constant: i64) -> Constraint<F> {
        Constraint {
            coeffs: coeffs.iter().map(|&c| F::from_int(c)).collect(),
            constant: F::from_int(constant),
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Field::is_negligible)
    }

    fn axpy(&self, factor: &F, other: &Constraint<F>) -> Constraint<F> {
        Constraint {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + factor.clone() * b.clone())
                .collect(),
            constant: self.constant.clone() + factor.clone() * other.constant.clone(),
        }
    }

    fn normalized(mut self) -> Constraint<F> {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_negligible()) {
            let scale = lead.abs();
            for c in &mut self.coeffs {
                *c = c.clone() / scale.clone();
            }
            self.constant = self.constant.clone() / scale;
        }
        self
    }
}

/// A system of inequalities `row >= 0` and equalities `row = 0`.
#[derive(Clone, Debug)]
pub struct System<F> {
    pub nvars: usize,
    pub inequalities: Vec<Constraint<F>>,
    pub equalities: Vec<Constraint<F>>,
}

impl<F: Field> System<F> {
    pub fn new(nvars: usize) -> System<F> {
        System {
            nvars,
            inequalities: Vec::new(),
            equalities: Vec::new(),
        }
    }

    /// Adds `x_v >= 0` for every variable.
    pub fn nonnegative(mut self) -> System<F> {
        for v in 0..self.nvars {
            let mut coeffs = vec![0i64; self.nvars];
            coeffs[v] = 1;
            self.inequalities.push(Constraint::from_ints(&coeffs, 0));
        }
        self
    }
}

fn cmp_rows<F: Field>(a: &Constraint<F>, b: &Constraint<F>) -> Ordering {
    for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => {}
            Some(o) => return o,
        }
    }
    a.constant
        .partial_cmp(&b.constant)
        .unwrap_or(Ordering::Equal)
}

/// Drops trivial rows and duplicates, keeping the tightest constant.
/// Returns `false` when a trivial row is violated.
fn tidy<F: Field>(rows: &mut Vec<Constraint<F>>) -> bool {
    let mut kept = Vec::with_capacity(rows.len());
    for r in rows.drain(..) {
        if r.is_trivial() {
            if r.constant < F::zero() && !r.constant.is_negligible() {
                return false;
            }
        } else {
            kept.push(r.normalized());
        }
    }
    kept.sort_by(cmp_rows);
    kept.dedup_by(|later, earlier| {
        later
            .coeffs
            .iter()
            .zip(&earlier.coeffs)
            .all(|(a, b)| (a.clone() - b.clone()).is_negligible())
    });
    *rows = kept;
    true
}

/// Decides whether the system has a real solution by Fourier-Motzkin
/// elimination. Fails with `ResourceGuard` if more than `row_limit` rows
/// accumulate.
pub fn is_feasible<F: Field>(system: &System<F>, row_limit: usize) -> Result<bool> {
    let mut ineqs = system.inequalities.clone();
    let mut eqs = system.equalities.clone();

    while let Some(eq) = eqs.pop() {
        let Some(v) = eq.coeffs.iter().position(|c| !c.is_negligible()) else {
            if eq.constant.is_negligible() {
                continue;
            }
            return Ok(false);
        };
        let pivot = eq.coeffs[v].clone();
        for row in eqs.iter_mut().chain(ineqs.iter_mut()) {
            if !row.coeffs[v].is_negligible() {
                let factor = -(row.coeffs[v].clone() / pivot.clone());
                *row = row.axpy(&factor, &eq);
                row.coeffs[v] = F::zero();
            }
        }
    }

    if !tidy(&mut ineqs) {
        return Ok(false);
    }
    loop {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..system.nvars {
            let pos = ineqs.iter().filter(|r| r.coeffs[v] > F::zero() && !r.coeffs[v].is_negligible()).count();
            let neg = ineqs.iter().filter(|r| r.coeffs[v] < F::zero() && !r.coeffs[v].is_negligible()).count();
            if pos + neg == 0 {
                continue;
            }
            let cost = pos * neg;
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some((v, cost));
            }
        }
        let Some((v, _)) = best else {
            return Ok(true);
        };
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in ineqs.drain(..) {
            if r.coeffs[v].is_negligible() {
                rest.push(r);
            } else if r.coeffs[v] > F::zero() {
                pos.push(r);
            } else {
                neg.push(r);
            }
        }
        if rest.len() + pos.len() * neg.len() > row_limit {
            return Err(Error::ResourceGuard(format!(
                "Fourier-Motzkin elimination exceeded {row_limit} rows"
            )));
        }
        for p in &pos {
            for q in &neg {
                let factor = p.coeffs[v].clone() / -q.coeffs[v].clone();
                let mut combined = p.axpy(&factor, q);
                combined.coeffs[v] = F::zero();
                rest.push(combined);
            }
        }
        ineqs = rest;
        if !tidy(&mut ineqs) {
            return Ok(false);
        }
    }
}
