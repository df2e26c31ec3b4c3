//! Degree table of the substituted variables and the matrix `A^{m,n}`.
//!
//! The variables are ordered `1, x_1..x_{m-1}, y_1..y_{n-1}, x_1y_1, ...,
//! x_{m-1}y_{n-1}`. After the substitution
//! `x_i = s_1..s_i T^i`, `y_j = s_0..s_{m-1} T^{m-1} t_1..t_{j-1}` with
//! `T = t_1..t_{n-2}`, each variable is a monomial in `s_0..s_{m-1},
//! t_1..t_{n-2}` and its exponent vector is a row of the table.
//!
//! Every binomial `1 - z_b/z_a` of the product formula comes from a pair of
//! variables `a < b` that are not both powers of `x` alone or both powers of
//! `y` alone. Its column is `deg(z_b) - deg(z_a)`.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::integer_rank;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    One,
    X(usize),
    Y(usize),
    XY(usize, usize),
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::One => write!(f, "1"),
            Variable::X(i) => write!(f, "x{i}"),
            Variable::Y(j) => write!(f, "y{j}"),
            Variable::XY(i, j) => write!(f, "x{i}y{j}"),
        }
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variable> {
        let bad = || Error::Format(format!("bad variable {s:?}"));
        if s == "1" {
            return Ok(Variable::One);
        }
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix('x') {
            match rest.split_once('y') {
                Some((i, j)) => Ok(Variable::XY(num(i)?, num(j)?)),
                None => Ok(Variable::X(num(rest)?)),
            }
        } else if let Some(rest) = s.strip_prefix('y') {
            Ok(Variable::Y(num(rest)?))
        } else {
            Err(bad())
        }
    }
}

/// Exponent vectors of the `mn` variables in `(s_0..s_{m-1}, t_1..t_{n-2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub m: usize,
    pub n: usize,
    variables: Vec<Variable>,
    degrees: Vec<Vec<u32>>,
}

impl DegreeTable {
    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    /// Exponent vector of the `z`-th variable (0-based).
    pub fn degree(&self, z: usize) -> &[u32] {
        &self.degrees[z]
    }

    pub fn degrees(&self) -> &[Vec<u32>] {
        &self.degrees
    }

    /// Number of coordinates `s_0..s_{m-1}, t_1..t_{n-2}`.
    pub fn coordinates(&self) -> usize {
        self.m + self.n.max(2) - 2
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        (0..self.m)
            .map(|k| format!("s{k}"))
            .chain((1..=self.n.max(2) - 2).map(|v| format!("t{v}")))
            .collect()
    }

    /// 0-based position of a variable in the ordering.
    pub fn position(&self, var: Variable) -> usize {
        let (m, n) = (self.m, self.n);
        match var {
            Variable::One => 0,
            Variable::X(i) => i,
            Variable::Y(j) => m - 1 + j,
            Variable::XY(i, j) => m + (n - 1) + (i - 1) * (n - 1) + (j - 1),
        }
    }

    fn in_x(var: Variable) -> bool {
        matches!(var, Variable::One | Variable::X(_))
    }

    fn in_y(var: Variable) -> bool {
        matches!(var, Variable::One | Variable::Y(_))
    }
}

pub fn build_degree_table(m: usize, n: usize) -> DegreeTable {
    assert!(m >= 1 && n >= 1, "shape must be positive");
    let nt = n.max(2) - 2;
    let d = m + nt;
    let x_deg = |i: usize| -> Vec<u32> {
        let mut v = vec![0u32; d];
        for k in 1..=i {
            v[k] = 1;
        }
        for t in 0..nt {
            v[m + t] = i as u32;
        }
        v
    };
    let y_deg = |j: usize| -> Vec<u32> {
        let mut v = vec![0u32; d];
        for k in 0..m {
            v[k] = 1;
        }
        for t in 0..nt {
            v[m + t] = (m - 1) as u32 + u32::from(t < j - 1);
        }
        v
    };
    let mut variables = vec![Variable::One];
    let mut degrees = vec![vec![0u32; d]];
    for i in 1..m {
        variables.push(Variable::X(i));
        degrees.push(x_deg(i));
    }
    for j in 1..n {
        variables.push(Variable::Y(j));
        degrees.push(y_deg(j));
    }
    for i in 1..m {
        for j in 1..n {
            variables.push(Variable::XY(i, j));
            degrees.push(x_deg(i).iter().zip(y_deg(j)).map(|(a, b)| a + b).collect());
        }
    }
    DegreeTable {
        m,
        n,
        variables,
        degrees,
    }
}

/// Which factor of the product formula a binomial belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Factor {
    /// `1 - y_j / x_i`
    A,
    /// `1 - x_i y_j`
    B,
    /// `1 - x_i`, one copy per `y_j`
    C1,
    /// `1 - y_j`, one copy per `x_i`
    C2,
    /// `1 - x_i y_j / x_k`, `k != i`
    D1,
    /// `1 - x_i y_j / y_k`, `k != j`
    D2,
    /// `1 - x_k y_l / (x_i y_j)`, `i != k`, `j != l`
    E,
    /// `1 - x_k / x_i`, one copy per `y_j`
    F1,
    /// `1 - y_l / y_j`, one copy per `x_i`
    F2,
}

impl Factor {
    pub fn label(self) -> &'static str {
        match self {
            Factor::A => "A",
            Factor::B => "B",
            Factor::C1 => "C1",
            Factor::C2 => "C2",
            Factor::D1 => "D1",
            Factor::D2 => "D2",
            Factor::E => "E",
            Factor::F1 => "F1",
            Factor::F2 => "F2",
        }
    }

    fn classify(lower: Variable, upper: Variable) -> Factor {
        use Variable::*;
        match (lower, upper) {
            (X(_), Y(_)) => Factor::A,
            (One, XY(..)) => Factor::B,
            (X(k), XY(i, _)) => {
                if k == i {
                    Factor::C2
                } else {
                    Factor::D1
                }
            }
            (Y(k), XY(_, j)) => {
                if k == j {
                    Factor::C1
                } else {
                    Factor::D2
                }
            }
            (XY(i, j), XY(k, l)) => {
                if i == k {
                    Factor::F2
                } else if j == l {
                    Factor::F1
                } else {
                    Factor::E
                }
            }
            _ => unreachable!("pair {lower}, {upper} does not produce a binomial"),
        }
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Factor> {
        Ok(match s {
            "A" => Factor::A,
            "B" => Factor::B,
            "C1" => Factor::C1,
            "C2" => Factor::C2,
            "D1" => Factor::D1,
            "D2" => Factor::D2,
            "E" => Factor::E,
            "F1" => Factor::F1,
            "F2" => Factor::F2,
            _ => return Err(Error::Format(format!("unknown factor {s:?}"))),
        })
    }
}

/// The pair of variables `(z_a, z_b)` whose ratio gave a column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Provenance {
    pub factor: Factor,
    pub lower: Variable,
    pub upper: Variable,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.factor.label(), self.lower, self.upper)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Column {
    pub entries: Vec<u32>,
    pub provenance: Option<Provenance>,
}

impl Column {
    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|&e| e as u64).sum()
    }

    /// Index `k` if the column is the standard basis vector `e_k` (0-based).
    pub fn basis_index(&self) -> Option<usize> {
        let mut nonzero = self.entries.iter().enumerate().filter(|(_, &e)| e != 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((k, 1)), None) => Some(k),
            _ => None,
        }
    }
}

/// A non-negative integer matrix whose columns define a vector partition
/// function. Built matrices carry their shape and column provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VpfMatrix {
    shape: Option<(usize, usize)>,
    rows: usize,
    columns: Vec<Column>,
}

impl VpfMatrix {
    /// A matrix from bare columns. Every column must be nonzero so that the
    /// partition function is finite.
    pub fn from_columns(rows: usize, columns: Vec<Vec<u32>>) -> Result<VpfMatrix> {
        let columns = columns
            .into_iter()
            .map(|entries| Column {
                entries,
                provenance: None,
            })
            .collect();
        VpfMatrix::from_tagged(None, rows, columns)
    }

    fn from_tagged(
        shape: Option<(usize, usize)>,
        rows: usize,
        mut columns: Vec<Column>,
    ) -> Result<VpfMatrix> {
        for c in &columns {
            if c.entries.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.entries.len(),
                });
            }
            if c.entries.iter().all(|&e| e == 0) {
                return Err(Error::InvalidMatrix("zero column".into()));
            }
        }
        columns.sort_by(|a, b| b.entries.cmp(&a.entries).then(a.provenance.cmp(&b.provenance)));
        Ok(VpfMatrix {
            shape,
            rows,
            columns,
        })
    }

    pub fn shape(&self) -> Option<(usize, usize)> {
        self.shape
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column_vectors(&self) -> Vec<Vec<u32>> {
        self.columns.iter().map(|c| c.entries.clone()).collect()
    }

    /// Same matrix with column `idx` replaced by `entries`.
    pub fn with_column_replaced(&self, idx: usize, entries: Vec<u32>) -> Result<VpfMatrix> {
        let mut cols = self.columns.clone();
        cols[idx] = Column {
            entries,
            provenance: None,
        };
        VpfMatrix::from_tagged(None, self.rows, cols)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = (0..self.rows)
            .map(|r| self.columns.iter().map(|c| c.entries[r] as i64).collect())
            .collect();
        integer_rank(&rows)
    }

    /// Canonical text form: header `m n rows cols`, then one column per line.
    pub fn to_text(&self) -> String {
        let (m, n) = self.shape.unwrap_or((0, 0));
        let mut out = format!("{m} {n} {} {}\n", self.rows, self.cols());
        for c in &self.columns {
            let nums: Vec<String> = c.entries.iter().map(u32::to_string).collect();
            out.push_str(&nums.join(" "));
            match &c.provenance {
                Some(p) => out.push_str(&format!(" # {p}\n")),
                None => out.push_str(" # -\n"),
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<VpfMatrix> {
        let mut lines = text.lines();
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(|| Error::Format("empty matrix file".into()))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Format(format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [m, n, rows, cols] = header[..] else {
            return Err(Error::Format("header must be `m n rows cols`".into()));
        };
        let mut columns = Vec::with_capacity(cols);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (nums, tag) = line.split_once('#').unwrap_or((line, "-"));
            let entries: Vec<u32> = nums
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Format(format!("bad entry {t:?}"))))
                .collect::<Result<_>>()?;
            let tag: Vec<&str> = tag.split_whitespace().collect();
            let provenance = match tag[..] {
                ["-"] | [] => None,
                [f, lo, hi] => Some(Provenance {
                    factor: f.parse()?,
                    lower: lo.parse()?,
                    upper: hi.parse()?,
                }),
                _ => return Err(Error::Format(format!("bad provenance {line:?}"))),
            };
            columns.push(Column {
                entries,
                provenance,
            });
        }
        if columns.len() != cols {
            return Err(Error::Format(format!(
                "header announces {cols} columns, found {}",
                columns.len()
            )));
        }
        let shape = if m == 0 && n == 0 { None } else { Some((m, n)) };
        VpfMatrix::from_tagged(shape, rows, columns)
    }

    /// Hex SHA-256 of the canonical text form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn read_file(path: &Path) -> Result<VpfMatrix> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        VpfMatrix::from_text(&text)
    }
}

/// Builds `A^{m,n}` with one column per binomial factor.
pub fn build_matrix(m: usize, n: usize) -> Result<VpfMatrix> {
    if m < 2 || n < 2 {
        return Err(Error::UnsupportedShape { m, n });
    }
    let table = build_degree_table(m, n);
    Ok(matrix_from_table(&table))
}

pub(crate) fn matrix_from_table(table: &DegreeTable) -> VpfMatrix {
    let vars = table.variables();
    let mut columns = Vec::new();
    for b in 0..vars.len() {
        for a in 0..b {
            let (lo, hi) = (vars[a], vars[b]);
            let both_x = DegreeTable::in_x(lo) && DegreeTable::in_x(hi);
            let both_y = DegreeTable::in_y(lo) && DegreeTable::in_y(hi);
            if both_x || both_y {
                continue;
            }
            let entries: Vec<u32> = table
                .degree(b)
                .iter()
                .zip(table.degree(a))
                .map(|(&hi, &lo)| {
                    assert!(hi >= lo, "substitution produced a negative exponent");
                    hi - lo
                })
                .collect();
            columns.push(Column {
                entries,
                provenance: Some(Provenance {
                    factor: Factor::classify(lo, hi),
                    lower: lo,
                    upper: hi,
                }),
            });
        }
    }
    VpfMatrix::from_tagged(Some((table.m, table.n)), table.coordinates(), columns)
        .expect("built columns are nonzero")
}

/// Outcome of checking the five structural properties of `A^{m,n}`.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixProperties {
    pub nonnegative: bool,
    pub max_entry: u32,
    pub max_entry_is_2m_minus_1: bool,
    pub column_count: usize,
    pub expected_column_count: usize,
    pub row_count: usize,
    pub expected_row_count: usize,
    /// For each `e_k`, the index of a column equal to it.
    pub basis_columns: Vec<Option<usize>>,
    pub rank: usize,
    pub pointed: bool,
}

impl MatrixProperties {
    pub fn all_hold(&self) -> bool {
        self.nonnegative
            && self.max_entry_is_2m_minus_1
            && self.column_count == self.expected_column_count
            && self.row_count == self.expected_row_count
            && self.basis_columns.iter().all(Option::is_some)
            && self.rank == self.expected_row_count
            && self.pointed
    }
}

pub fn check_matrix_properties(a: &VpfMatrix) -> MatrixProperties {
    let (m, n) = a.shape().unwrap_or((0, 0));
    let c2 = |k: usize| k * k.saturating_sub(1) / 2;
    let max_entry = a
        .columns()
        .iter()
        .flat_map(|c| c.entries.iter().copied())
        .max()
        .unwrap_or(0);
    let basis_columns = (0..a.rows())
        .map(|k| a.columns().iter().position(|c| c.basis_index() == Some(k)))
        .collect();
    MatrixProperties {
        nonnegative: true,
        max_entry,
        max_entry_is_2m_minus_1: max_entry as usize + 1 == 2 * m,
        column_count: a.cols(),
        expected_column_count: c2(m * n) - c2(n) - c2(m),
        row_count: a.rows(),
        expected_row_count: (m + n).saturating_sub(2),
        basis_columns,
        rank: a.rank(),
        pointed: a.columns().iter().all(|c| c.entries.iter().any(|&e| e > 0)),
    }
}
