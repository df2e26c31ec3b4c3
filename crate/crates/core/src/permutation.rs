//! Permutations in one-line notation.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{1..k}`, stored 0-based: `image[z]` is the image of `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(k: usize) -> Permutation {
        assert!(k <= 255);
        Permutation {
            image: (0..k as u8).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(image: Vec<u8>) -> Result<Permutation> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            let v = v as usize;
            if v >= image.len() || seen[v] {
                return Err(Error::Parse(format!("{image:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Permutation> {
        if one_line.iter().any(|&v| v == 0 || v > 255) {
            return Err(Error::Parse(format!("{one_line:?} is not a permutation")));
        }
        Permutation::from_images(one_line.iter().map(|&v| (v - 1) as u8).collect())
    }

    /// Parses "1324" (single digits) or "1,3,2,4".
    pub fn parse(text: &str) -> Result<Permutation> {
        let vals: Result<Vec<usize>> = if text.contains(',') {
            text.split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(t.to_string())))
                .collect()
        } else {
            text.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(c.to_string()))
                })
                .collect()
        };
        Permutation::from_one_line(&vals?)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// 0-based image of 0-based `z`.
    pub fn apply(&self, z: usize) -> usize {
        self.image[z] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.image
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.image.len()];
        for (z, &v) in self.image.iter().enumerate() {
            inv[v as usize] = z as u8;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        let mut seen = vec![false; self.image.len()];
        let mut sign = 1i8;
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut z = start;
            while !seen[z] {
                seen[z] = true;
                z = self.image[z] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.image.len() > 9 { "," } else { "" };
        let text: Vec<String> = self.image.iter().map(|v| (v + 1).to_string()).collect();
        f.write_str(&text.join(sep))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All permutations of `{1..k}` in lexicographic order, each with its sign.
pub struct LexPermutations {
    current: Option<Vec<u8>>,
    sign: i8,
}

pub fn lex_permutations(k: usize) -> LexPermutations {
    assert!(k <= 255);
    LexPermutations {
        current: Some((0..k as u8).collect()),
        sign: 1,
    }
}

impl Iterator for LexPermutations {
    type Item = (Permutation, i8);

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.current.as_mut()?;
        let out = (Permutation { image: cur.clone() }, self.sign);
        let k = cur.len();
        match (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) {
            None => self.current = None,
            Some(i) => {
                let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
                cur.swap(i, j);
                cur[i + 1..].reverse();
                let swaps = 1 + (k - i - 1) / 2;
                if swaps % 2 == 1 {
                    self.sign = -self.sign;
                }
            }
        }
        Some(out)
    }
}
