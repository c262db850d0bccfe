//! Sparse vectors over GF(p): sorted `(index, coefficient)` pairs.

use crate::fp;

/// A sparse vector with strictly increasing indices and nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    pub entries: Vec<(usize, u64)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, 1)] }
    }

    pub fn single(i: usize, c: u64, p: u64) -> Self {
        let c = c % p;
        if c == 0 {
            Self::zero()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Build from possibly unsorted, repeated terms.
    pub fn from_terms(mut terms: Vec<(usize, u64)>, p: u64) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut entries: Vec<(usize, u64)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            let c = c % p;
            match entries.last_mut() {
                Some(last) if last.0 == i => last.1 = fp::add(last.1, c, p),
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|&(_, c)| c != 0);
        SparseVec { entries }
    }

    pub fn from_dense(v: &[u64]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<u64> {
        let mut v = vec![0u64; len];
        for &(i, c) in &self.entries {
            v[i] = c;
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Index of the first nonzero entry, if any.
    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|t| t.0)
    }

    pub fn get(&self, i: usize) -> u64 {
        match self.entries.binary_search_by_key(&i, |t| t.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => 0,
        }
    }

    pub fn scale(&self, c: u64, p: u64) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|&(i, a)| (i, fp::mul(a, c, p)))
                .collect(),
        }
    }

    pub fn neg(&self, p: u64) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|&(i, a)| (i, p - a)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: u64, other: &SparseVec, p: u64) -> Self {
        let c = c % p;
        if c == 0 {
            return self.clone();
        }
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|t| t.0);
            let ib = other.entries.get(b).map(|t| t.0);
            match (ia, ib) {
                (Some(i), Some(j)) if i == j => {
                    let v = fp::add(self.entries[a].1, fp::mul(c, other.entries[b].1, p), p);
                    if v != 0 {
                        entries.push((i, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(i), Some(j)) if i < j => {
                    entries.push(self.entries[a]);
                    a += 1;
                    let _ = i;
                    let _ = j;
                }
                (Some(_), Some(_)) | (None, Some(_)) => {
                    entries.push((other.entries[b].0, fp::mul(c, other.entries[b].1, p)));
                    b += 1;
                }
                (Some(_), None) => {
                    entries.push(self.entries[a]);
                    a += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries }
    }

    pub fn add(&self, other: &SparseVec, p: u64) -> Self {
        self.axpy(1, other, p)
    }

    pub fn sub(&self, other: &SparseVec, p: u64) -> Self {
        self.axpy(p - 1, other, p)
    }

    /// Dot product with another sparse vector.
    pub fn dot(&self, other: &SparseVec, p: u64) -> u64 {
        let mut acc = 0u64;
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = self.entries[a];
            let (j, y) = other.entries[b];
            if i == j {
                acc = (acc + x * y) % p;
                a += 1;
                b += 1;
            } else if i < j {
                a += 1;
            } else {
                b += 1;
            }
        }
        acc
    }

    /// Apply an index map, dropping entries mapped to `None`.
    pub fn map_indices(&self, f: impl Fn(usize) -> Option<usize>, p: u64) -> Self {
        let terms: Vec<(usize, u64)> = self
            .entries
            .iter()
            .filter_map(|&(i, c)| f(i).map(|j| (j, c)))
            .collect();
        SparseVec::from_terms(terms, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let p = 5;
        let v = SparseVec::from_terms(vec![(0, 2), (3, 1)], p);
        let w = SparseVec::from_terms(vec![(0, 1), (2, 4)], p);
        let r = v.axpy(3, &w, p); // 2+3=5=0 at index 0
        assert_eq!(r.entries, vec![(2, 2), (3, 1)]);
    }

    #[test]
    fn from_terms_merges() {
        let v = SparseVec::from_terms(vec![(1, 3), (1, 4), (0, 5)], 5);
        assert_eq!(v.entries, vec![(1, 2)]);
    }
}
