//! Partitions of bounded length: the index set for every polynomial family,
//! every basis, and every discrete argument in the crate.
//!
//! A [`Partition`] always carries its ambient length `r`; trailing zeros are
//! stored, so `(2,1)` in rank three is `(2,1,0)`. Ordering is by weight, then
//! reverse-lexicographic within a weight, which is also the order produced by
//! [`enumerate_up_to`] and used by every report and table.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition of ambient length `r`, padding with zeros.
    pub fn new(parts: &[u32], r: usize) -> Result<Self> {
        let trimmed: Vec<u32> = {
            let mut v = parts.to_vec();
            while v.len() > r && v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        if trimmed.len() > r {
            return Err(Error::Domain(format!(
                "partition {:?} has more than {r} nonzero parts",
                parts
            )));
        }
        if trimmed.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "{:?} is not weakly decreasing",
                parts
            )));
        }
        let mut padded = trimmed;
        padded.resize(r, 0);
        Ok(Partition { parts: padded })
    }

    pub fn empty(r: usize) -> Self {
        Partition { parts: vec![0; r] }
    }

    /// The rectangle (n, n, ..., n) of length r.
    pub fn rectangle(n: u32, r: usize) -> Self {
        Partition { parts: vec![n; r] }
    }

    /// From an already padded, weakly decreasing vector. Callers guarantee the
    /// invariant.
    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts }
    }

    /// Sorts an arbitrary exponent vector into a partition.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v = exps.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: v }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    /// Part j, 1-based as in the formulas.
    pub fn part(&self, j: usize) -> u32 {
        self.parts[j - 1]
    }

    /// Componentwise containment `self ⊂ other`.
    pub fn contained_in(&self, other: &Partition) -> Result<bool> {
        check_same_r(self, other)?;
        Ok(self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b))
    }

    /// `self ⊴ other` in dominance order (same weight, partial sums bounded).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for (x, y) in self.parts.iter().zip(&other.parts) {
            a += x;
            b += y;
            if a > b {
                return false;
            }
        }
        true
    }

    /// `self ± ε_j` when the result is still a partition.
    pub fn box_move(&self, j: usize, direction: i32) -> Option<Partition> {
        if j == 0 || j > self.r() {
            return None;
        }
        let i = j - 1;
        let mut v = self.parts.clone();
        match direction {
            1 => {
                if i > 0 && v[i - 1] == v[i] {
                    return None;
                }
                v[i] += 1;
            }
            -1 => {
                if v[i] == 0 || (i + 1 < v.len() && v[i + 1] == v[i]) {
                    return None;
                }
                v[i] -= 1;
            }
            _ => return None,
        }
        Some(Partition { parts: v })
    }

    /// Multiplicity count `r! / Π mult!`: the number of distinct
    /// rearrangements, i.e. the value of the monomial symmetric function at
    /// the all-ones point.
    pub fn orbit_size(&self) -> u64 {
        let mut total = 1u64;
        let mut seen = 0u64;
        let mut i = 0;
        while i < self.parts.len() {
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == self.parts[i] {
                j += 1;
                seen += 1;
                total = total * seen / (j - i) as u64;
            }
            i = j;
        }
        total
    }

    /// All distinct rearrangements of the padded parts.
    pub fn distinct_permutations(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<u32> = self.parts.clone();
        v.sort_unstable();
        let mut out = vec![v.clone()];
        while next_permutation(&mut v) {
            out.push(v.clone());
        }
        out
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_same_r(a: &Partition, b: &Partition) -> Result<()> {
    if a.r() != b.r() {
        return Err(Error::LengthMismatch {
            left: a.r(),
            right: b.r(),
        });
    }
    Ok(())
}

/// `k ⊂ m`.
pub fn contains(k: &Partition, m: &Partition) -> Result<bool> {
    k.contained_in(m)
}

pub fn box_move(m: &Partition, j: usize, direction: i32) -> Option<Partition> {
    m.box_move(j, direction)
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"2,1,0"`; the ambient length is the number of fields.
    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_parts(s)?;
        let r = parts.len();
        Partition::new(&parts, r)
    }
}

/// Parses a comma-joined list of nonnegative integers.
pub fn parse_parts(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
        })
        .collect()
}

/// Parses a partition and pads it to length `r`.
pub fn parse_partition(s: &str, r: usize) -> Result<Partition> {
    Partition::new(&parse_parts(s)?, r)
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Partitions of exactly `weight` with at most `r` parts, reverse-lex order.
pub fn partitions_of(weight: u32, r: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fill(weight, weight, r, &mut cur, &mut out);
    out
}

fn fill(rem: u32, max_part: u32, r: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        let mut v = cur.clone();
        v.resize(r, 0);
        out.push(Partition { parts: v });
        return;
    }
    if cur.len() == r {
        return;
    }
    for p in (1..=rem.min(max_part)).rev() {
        cur.push(p);
        fill(rem - p, p, r, cur, out);
        cur.pop();
    }
}

/// Every partition of length ≤ r and weight ≤ max_weight, ordered by weight
/// then reverse-lexicographically.
pub fn enumerate_up_to(r: usize, max_weight: u32) -> Vec<Partition> {
    (0..=max_weight).flat_map(|w| partitions_of(w, r)).collect()
}

/// Every partition contained in `m`, in enumeration order.
pub fn subpartitions(m: &Partition) -> Vec<Partition> {
    let r = m.r();
    let mut out = Vec::new();
    let mut cur = vec![0u32; r];
    sub_fill(m, 0, u32::MAX, &mut cur, &mut out);
    out.sort();
    out
}

fn sub_fill(m: &Partition, i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if i == m.r() {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in 0..=m.parts[i].min(cap) {
        cur[i] = p;
        sub_fill(m, i + 1, p, cur, out);
    }
    cur[i] = 0;
}
