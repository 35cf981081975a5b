//! Partitions, Young tableaux and permutations.
//!
//! Tableau cells are numbered row-major: the first row holds cells
//! `0..λ_1`, the second `λ_1..λ_1+λ_2`, and so on. All enumerations are
//! deterministic; tableaux come out in lexicographic order of their row words.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty partition is
/// the unique partition of `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row shape `(h)`.
    pub fn row(h: usize) -> Self {
        if h == 0 {
            Self::empty()
        } else {
            Partition(vec![h])
        }
    }

    /// The one-column shape `(1^h)`.
    pub fn column(h: usize) -> Self {
        Partition(vec![1; h])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of the first row, `0` for the empty partition.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.first();
        Partition((0..first).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// Product of all hook lengths.
    pub fn hook_number(&self) -> u64 {
        let conj = self.conjugate();
        let mut prod = 1u64;
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = conj.0[c] - r - 1;
                prod *= (arm + leg + 1) as u64;
            }
        }
        prod
    }

    /// Offset of the first cell of row `r` in row-major numbering.
    pub fn row_start(&self, r: usize) -> usize {
        self.0[..r].iter().sum()
    }

    /// Row-major cell indices of column `c`, top to bottom.
    pub fn column_cells(&self, c: usize) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .take_while(|(_, &len)| len > c)
            .map(|(r, _)| self.row_start(r) + c)
            .collect()
    }

    /// `(row, column)` of every cell, row-major.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect()
    }

    /// All partitions of `h`, largest first in lexicographic order.
    pub fn all(h: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(h, h, &mut Vec::new(), &mut out);
        out
    }

    /// Parses `"2,1"`; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A bijection of `{0, .., h-1}`, stored by images. Displayed and parsed
/// 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// From 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(images.to_vec()));
        }
        Permutation::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(h: usize) -> Self {
        Permutation((0..h).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v] = k;
        }
        Permutation(inv)
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for a in 0..self.0.len() {
            for b in a + 1..self.0.len() {
                if self.0[a] > self.0[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        crate::rational::sign_pow(self.inversions())
    }

    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.0.len()];
        let mut lens = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.0[k];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition(lens)
    }

    /// `(s_{σ(1)}, .., s_{σ(h)})`.
    pub fn permute<T: Clone>(&self, seq: &[T]) -> Vec<T> {
        self.0.iter().map(|&k| seq[k].clone()).collect()
    }

    /// All permutations of degree `h` in lexicographic order of images.
    pub fn all(h: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = (0..h).collect::<Vec<_>>();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..h).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..h).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Permutations of `0..h` preserving each block of `blocks` setwise.
    pub fn stabilizer(h: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(h)];
        for block in blocks {
            let local = Permutation::all(block.len());
            let mut next = Vec::with_capacity(out.len() * local.len());
            for base in &out {
                for p in &local {
                    let mut images = base.0.clone();
                    for (a, &cell) in block.iter().enumerate() {
                        images[cell] = block[p.0[a]];
                    }
                    next.push(Permutation(images));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", imgs.join(" "))
    }
}

/// A filling of a Young diagram by positive integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungTableau {
    shape: Partition,
    entries: Vec<usize>,
}

impl YoungTableau {
    pub fn new(shape: Partition, entries: Vec<usize>) -> Result<Self> {
        if shape.weight() != entries.len() {
            return Err(Error::InvalidTableau(format!(
                "{} entries for shape {}",
                entries.len(),
                shape
            )));
        }
        if entries.contains(&0) {
            return Err(Error::InvalidTableau("entries must be positive".into()));
        }
        Ok(YoungTableau { shape, entries })
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())
            .map_err(|_| Error::InvalidTableau(format!("row lengths of {rows:?}")))?;
        YoungTableau::new(shape, rows.into_iter().flatten().collect())
    }

    /// A single column `(s_1, .., s_h)`.
    pub fn column(entries: &[usize]) -> Result<Self> {
        YoungTableau::new(Partition::column(entries.len()), entries.to_vec())
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn weight(&self) -> usize {
        self.entries.len()
    }

    /// Entries in row-major cell order; this is also the tableau word `w(T)`.
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn word(&self) -> &[usize] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[usize] {
        let start = self.shape.row_start(r);
        &self.entries[start..start + self.shape.parts()[r]]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.shape.len()).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn max_entry(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Multiplicity of every symbol.
    pub fn content(&self) -> BTreeMap<usize, usize> {
        let mut c = BTreeMap::new();
        for &e in &self.entries {
            *c.entry(e).or_insert(0) += 1;
        }
        c
    }

    pub fn is_row_strict(&self) -> bool {
        (0..self.shape.len()).all(|r| self.row(r).windows(2).all(|w| w[0] < w[1]))
    }

    /// Rows strictly increasing and columns weakly increasing.
    pub fn is_standard(&self) -> bool {
        if !self.is_row_strict() {
            return false;
        }
        (0..self.shape.first()).all(|c| {
            self.shape
                .column_cells(c)
                .windows(2)
                .all(|w| self.entries[w[0]] <= self.entries[w[1]])
        })
    }

    /// Entries are exactly `1..=h`.
    pub fn is_multilinear(&self) -> bool {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        sorted.iter().enumerate().all(|(k, &e)| e == k + 1)
    }

    /// Every tableau obtained by permuting each column independently, with
    /// multiplicity: `∏ (column length)!` tableaux.
    pub fn column_permuted_family(&self) -> Vec<YoungTableau> {
        let columns: Vec<Vec<usize>> =
            (0..self.shape.first()).map(|c| self.shape.column_cells(c)).collect();
        Permutation::stabilizer(self.weight(), &columns)
            .into_iter()
            .map(|p| YoungTableau {
                shape: self.shape.clone(),
                entries: p.permute(&self.entries),
            })
            .collect()
    }

    /// Every tableau obtained by permuting each row independently, paired with
    /// the product of the row permutation signs.
    pub fn row_permuted_family(&self) -> Vec<(i64, YoungTableau)> {
        let rows: Vec<Vec<usize>> = (0..self.shape.len())
            .map(|r| {
                let s = self.shape.row_start(r);
                (s..s + self.shape.parts()[r]).collect()
            })
            .collect();
        Permutation::stabilizer(self.weight(), &rows)
            .into_iter()
            .map(|p| {
                (
                    p.sign(),
                    YoungTableau {
                        shape: self.shape.clone(),
                        entries: p.permute(&self.entries),
                    },
                )
            })
            .collect()
    }

    /// Parses a JSON array of rows, e.g. `[[1,2],[1]]`.
    pub fn parse_json(s: &str) -> Result<Self> {
        let rows: Vec<Vec<usize>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("tableau {s:?}: {e}")))?;
        YoungTableau::from_rows(rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.rows()).expect("rows serialize")
    }
}

impl fmt::Display for YoungTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl Serialize for YoungTableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for YoungTableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(d)?;
        YoungTableau::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Strictly increasing `k`-subsets of `1..=n`, lexicographic.
fn increasing_words(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, from: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(k, v + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, 1, n, &mut Vec::new(), &mut out);
    out
}

/// Tableaux of shape `shape` over `1..=n` with strictly increasing rows.
pub fn enumerate_row_strict(shape: &Partition, n: usize) -> Vec<YoungTableau> {
    let mut out = vec![Vec::new()];
    for &len in shape.parts() {
        let words = increasing_words(len, n);
        let mut next = Vec::with_capacity(out.len() * words.len());
        for prefix in &out {
            for w in &words {
                let mut e: Vec<usize> = prefix.clone();
                e.extend_from_slice(w);
                next.push(e);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|entries| YoungTableau {
            shape: shape.clone(),
            entries,
        })
        .collect()
}

/// Standard tableaux (rows strict, columns weak) of shape `shape` over `1..=n`.
pub fn enumerate_standard(shape: &Partition, n: usize) -> Vec<YoungTableau> {
    enumerate_row_strict(shape, n)
        .into_iter()
        .filter(YoungTableau::is_standard)
        .collect()
}

/// Weak compositions `(h_1, .., h_n)` of `h`, lexicographic.
pub fn enumerate_compositions(h: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=rest {
            cur.push(v);
            rec(rest - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return if h == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(h, n, &mut Vec::new(), &mut out);
    out
}

/// The non-decreasing sequence `1^{h_1} 2^{h_2} .. n^{h_n}`.
pub fn diagonal_sequence(composition: &[usize]) -> Vec<usize> {
    composition
        .iter()
        .enumerate()
        .flat_map(|(p, &m)| std::iter::repeat_n(p + 1, m))
        .collect()
}

/// All sequences in `{1..=n}^h`, lexicographic.
pub fn all_sequences(h: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..h {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (1..=n).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn tab(rows: &[&[usize]]) -> YoungTableau {
        YoungTableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(part(&[2, 1]).conjugate(), part(&[2, 1]));
        assert_eq!(part(&[3]).conjugate(), part(&[1, 1, 1]));
        assert_eq!(part(&[4, 2, 1]).conjugate(), part(&[3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn hook_numbers() {
        assert_eq!(part(&[2, 1]).hook_number(), 3);
        assert_eq!(part(&[1]).hook_number(), 1);
        assert_eq!(part(&[2, 2]).hook_number(), 12);
        assert_eq!(Partition::empty().hook_number(), 1);
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::parse("2,x").is_err());
        assert_eq!(Partition::parse("3,1").unwrap(), part(&[3, 1]));
    }

    #[test]
    fn standardness_uses_strict_rows_and_weak_columns() {
        assert!(tab(&[&[1, 2], &[1]]).is_standard());
        assert!(!tab(&[&[1, 1], &[2]]).is_standard());
        assert!(!tab(&[&[2], &[1]]).is_standard());
    }

    #[test]
    fn standard_enumeration() {
        let got = enumerate_standard(&part(&[2, 1]), 2);
        assert_eq!(got, vec![tab(&[&[1, 2], &[1]]), tab(&[&[1, 2], &[2]])]);
        assert_eq!(enumerate_standard(&part(&[1]), 3).len(), 3);
        let cols = enumerate_standard(&part(&[1, 1, 1]), 2);
        let words: Vec<_> = cols.iter().map(|t| t.word().to_vec()).collect();
        assert_eq!(words, vec![vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]);
    }

    #[test]
    fn standard_enumeration_matches_exhaustive_filter() {
        // brute force over all fillings
        for shape in [part(&[2, 1]), part(&[2, 2]), part(&[3, 1]), part(&[1, 1, 1])] {
            for n in 1..=3 {
                let mut brute: Vec<YoungTableau> = all_sequences(shape.weight(), n)
                    .into_iter()
                    .map(|e| YoungTableau::new(shape.clone(), e).unwrap())
                    .filter(|t| t.is_standard())
                    .collect();
                brute.sort_by(|a, b| a.word().cmp(b.word()));
                assert_eq!(enumerate_standard(&shape, n), brute);
            }
        }
    }

    #[test]
    fn row_strict_enumeration() {
        let got = enumerate_row_strict(&part(&[2, 1]), 2);
        assert_eq!(got, vec![tab(&[&[1, 2], &[1]]), tab(&[&[1, 2], &[2]])]);
        assert_eq!(enumerate_row_strict(&part(&[2]), 2).len(), 1);
        assert_eq!(enumerate_row_strict(&part(&[2, 2]), 3).len(), 9);
        assert!(enumerate_row_strict(&part(&[3]), 2).is_empty());
    }

    #[test]
    fn column_permuted_family_multiplicities() {
        let t = tab(&[&[1, 2], &[1, 3]]);
        let fam = t.column_permuted_family();
        assert_eq!(fam.len(), 4);
        assert_eq!(fam.iter().filter(|x| **x == t).count(), 2);
        assert_eq!(fam.iter().filter(|x| **x == tab(&[&[1, 3], &[1, 2]])).count(), 2);
        assert_eq!(tab(&[&[3, 1, 2]]).column_permuted_family().len(), 1);
        let col = tab(&[&[1], &[2], &[3]]).column_permuted_family();
        let mut distinct = col.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn compositions() {
        assert_eq!(
            enumerate_compositions(3, 2),
            vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]
        );
        assert_eq!(enumerate_compositions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(enumerate_compositions(2, 3).len(), 6);
        assert_eq!(diagonal_sequence(&[2, 0, 1]), vec![1, 1, 3]);
    }

    #[test]
    fn permutations() {
        let all = Permutation::all(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all.iter().filter(|p| p.sign() == -1).count(), 3);
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(p.cycle_type(), part(&[3]));
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn tableau_json() {
        let t = YoungTableau::parse_json("[[1,2],[1]]").unwrap();
        assert_eq!(t.to_json(), "[[1,2],[1]]");
        assert!(YoungTableau::parse_json("[[1],[1,2]]").is_err());
    }
}
