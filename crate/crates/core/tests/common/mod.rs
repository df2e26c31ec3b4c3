#![allow(dead_code)]

use kron_core::partition::partitions_of;
use kron_core::PartitionTriple;

/// Every equal-size triple of shape `(m, n)` with `|lambda| <= max_size`.
pub fn equal_size_triples(m: usize, n: usize, max_size: u32) -> Vec<PartitionTriple> {
    let mut out = Vec::new();
    for size in 0..=max_size {
        let ls = partitions_of(size, m * n);
        let mus = partitions_of(size, m);
        let nus = partitions_of(size, n);
        for l in &ls {
            for mu in &mus {
                for nu in &nus {
                    out.push(PartitionTriple::new(m, n, l, mu, nu).unwrap());
                }
            }
        }
    }
    out
}

pub const MATRIX_2_3: [[u32; 11]; 3] = [
    [1, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1],
    [0, 1, 0, 0, 1, 1, 1, 1, 1, 2, 2],
    [0, 0, 1, 1, 1, 1, 2, 1, 2, 2, 3],
];

pub const MATRIX_2_4: [[u32; 21]; 4] = [
    [0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 1],
    [0, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2],
    [0, 1, 0, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3, 3],
    [1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 2, 1, 1, 2, 1, 2, 2, 2, 3],
];

/// Columns of a row-major matrix, sorted.
pub fn column_multiset<const C: usize>(rows: &[[u32; C]]) -> Vec<Vec<u32>> {
    let mut cols: Vec<Vec<u32>> = (0..C).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    cols.sort();
    cols
}
