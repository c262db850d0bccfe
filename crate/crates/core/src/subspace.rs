//! Row-echelon subspaces of GF(p)^n with sparse rows.
//!
//! `Subspace` maintains a reduced row echelon basis (unit pivots, pivot
//! columns cleared) with deterministic pivoting, so two equal subspaces have
//! byte-identical bases.  With coefficient tracking enabled it doubles as a
//! solver that expresses vectors as combinations of the inserted spanning
//! vectors.

use std::collections::BTreeMap;

use crate::fp;
use crate::sparse::SparseVec;

#[derive(Clone, Debug)]
pub struct Subspace {
    pub amb: usize,
    pub p: u64,
    /// Echelon rows, in insertion order; `by_pivot` imposes the pivot order.
    rows: Vec<SparseVec>,
    /// Pivot column -> index into `rows`.
    by_pivot: BTreeMap<usize, usize>,
    /// When tracking, `combos[i]` expresses `rows[i]` over the original
    /// inserted vectors (indexed by insertion count).
    combos: Option<Vec<SparseVec>>,
    /// Number of `insert` calls so far (tracking index space).
    pub inserted: usize,
}

impl Subspace {
    pub fn new(amb: usize, p: u64) -> Self {
        Subspace { amb, p, rows: Vec::new(), by_pivot: BTreeMap::new(), combos: None, inserted: 0 }
    }

    pub fn new_tracking(amb: usize, p: u64) -> Self {
        Subspace { combos: Some(Vec::new()), ..Subspace::new(amb, p) }
    }

    pub fn from_vectors(amb: usize, p: u64, vecs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Subspace::new(amb, p);
        for v in vecs {
            s.insert(&v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    /// Echelon basis rows in pivot order.
    pub fn basis(&self) -> Vec<&SparseVec> {
        self.by_pivot.values().map(|&i| &self.rows[i]).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.by_pivot.keys().copied().collect()
    }

    /// Fully reduce `v` against the echelon rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tracked(v).0
    }

    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let p = self.p;
        let mut residue = v.clone();
        let mut combo = SparseVec::zero();
        let mut i = 0usize;
        while i < residue.entries.len() {
            let (idx, c) = residue.entries[i];
            if let Some(&ri) = self.by_pivot.get(&idx) {
                residue = residue.axpy(p - c, &self.rows[ri], p);
                if let Some(combos) = &self.combos {
                    combo = combo.axpy(c, &combos[ri], p);
                }
            } else {
                i += 1;
            }
        }
        (residue, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.rank() == other.rank() && self.contains_subspace(other)
    }

    /// Express `v` over the inserted spanning vectors (requires tracking).
    /// Returns `None` when `v` is outside the span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.combos.is_some(), "express requires a tracking subspace");
        let (residue, combo) = self.reduce_tracked(v);
        residue.is_zero().then_some(combo)
    }

    /// Insert a vector, returning `true` when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let p = self.p;
        let gen_idx = self.inserted;
        self.inserted += 1;
        let (residue, combo) = self.reduce_tracked(v);
        let Some(pivot) = residue.leading() else {
            return false;
        };
        assert!(pivot < self.amb, "vector exceeds ambient dimension");
        let lead = residue.get(pivot);
        let inv = fp::inv(lead, p);
        let row = residue.scale(inv, p);
        // residue = v - combo·gens  =>  row = inv·(v - combo·gens).
        let new_combo = self.combos.as_ref().map(|_| {
            SparseVec::unit(gen_idx)
                .axpy(p - 1, &combo, p)
                .scale(inv, p)
        });
        // Clear the new pivot column from existing rows to keep RREF.
        let affected: Vec<usize> = self
            .by_pivot
            .values()
            .copied()
            .filter(|&ri| self.rows[ri].get(pivot) != 0)
            .collect();
        for ri in affected {
            let c = self.rows[ri].get(pivot);
            self.rows[ri] = self.rows[ri].axpy(p - c, &row, p);
            if let (Some(combos), Some(nc)) = (&mut self.combos, &new_combo) {
                combos[ri] = combos[ri].axpy(p - c, nc, p);
            }
        }
        self.rows.push(row);
        if let (Some(combos), Some(nc)) = (&mut self.combos, new_combo) {
            combos.push(nc);
        }
        self.by_pivot.insert(pivot, self.rows.len() - 1);
        true
    }

    /// Vectors from `self`'s basis that extend `sub` to a basis of `self`.
    /// `sub` must be contained in `self`.
    pub fn complete_from(&self, sub: &Subspace) -> Vec<SparseVec> {
        let mut work = Subspace::new(self.amb, self.p);
        for v in sub.basis() {
            work.insert(v);
        }
        let mut reps = Vec::new();
        for v in self.basis() {
            if work.insert(v) {
                reps.push(v.clone());
            }
        }
        reps
    }

    /// Intersection with the coordinate subspace spanned by the unit vectors
    /// whose index satisfies `keep`.
    pub fn intersect_coords(&self, keep: impl Fn(usize) -> bool) -> Subspace {
        // Order columns so that the dropped ("low") coordinates come first,
        // then the echelon rows whose pivot is a kept coordinate and whose
        // support avoids dropped coordinates form the intersection.  Rather
        // than permuting columns we solve directly: combinations of basis rows
        // with zero low part = null space of the low-coordinate block.
        let basis = self.basis();
        let low_cols: BTreeMap<usize, usize> = (0..self.amb)
            .filter(|&i| !keep(i))
            .enumerate()
            .map(|(k, i)| (i, k))
            .collect();
        let images: Vec<SparseVec> = basis
            .iter()
            .map(|v| v.map_indices(|i| low_cols.get(&i).copied(), self.p))
            .collect();
        let kernel = kernel_of_images(low_cols.len(), self.p, &images);
        let mut out = Subspace::new(self.amb, self.p);
        for combo in kernel {
            let mut w = SparseVec::zero();
            for &(k, c) in &combo.entries {
                w = w.axpy(c, basis[k], self.p);
            }
            out.insert(&w);
        }
        out
    }
}

/// Given the images of generators `0..images.len()` under a linear map into
/// GF(p)^amb, return a basis (as combinations of the generators) of the kernel.
pub fn kernel_of_images(amb: usize, p: u64, images: &[SparseVec]) -> Vec<SparseVec> {
    let mut solver = Subspace::new_tracking(amb, p);
    let mut kernel = Vec::new();
    for (k, img) in images.iter().enumerate() {
        if let Some(combo) = solver.express(img) {
            // img = combo·previous images, so e_k - combo is in the kernel.
            kernel.push(SparseVec::unit(k).axpy(p - 1, &combo, p));
            solver.inserted += 1; // keep generator indices aligned
        } else {
            solver.insert(img);
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[u64], p: u64) -> SparseVec {
        let _ = p;
        SparseVec::from_dense(v)
    }

    #[test]
    fn rank_and_membership() {
        let p = 5;
        let mut s = Subspace::new(4, p);
        assert!(s.insert(&sv(&[1, 2, 0, 0], p)));
        assert!(s.insert(&sv(&[0, 1, 1, 0], p)));
        assert!(!s.insert(&sv(&[1, 3, 1, 0], p))); // sum of the two
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&sv(&[2, 4, 0, 0], p)));
        assert!(!s.contains(&sv(&[0, 0, 0, 1], p)));
    }

    #[test]
    fn express_recovers_coefficients() {
        let p = 7;
        let mut s = Subspace::new_tracking(3, p);
        let a = sv(&[1, 1, 0], p);
        let b = sv(&[0, 1, 1], p);
        s.insert(&a);
        s.insert(&b);
        let v = a.scale(3, p).axpy(5, &b, p);
        let combo = s.express(&v).unwrap();
        let mut rebuilt = SparseVec::zero();
        for &(i, c) in &combo.entries {
            rebuilt = rebuilt.axpy(c, if i == 0 { &a } else { &b }, p);
        }
        assert_eq!(rebuilt, v);
        assert_eq!(combo.get(0), 3);
        assert_eq!(combo.get(1), 5);
    }

    #[test]
    fn equality_is_basis_independent() {
        let p = 3;
        let s = Subspace::from_vectors(3, p, vec![sv(&[1, 1, 0], p), sv(&[0, 1, 1], p)]);
        let t = Subspace::from_vectors(3, p, vec![sv(&[1, 2, 1], p), sv(&[1, 0, 2], p)]);
        assert!(s.equals(&t));
    }

    #[test]
    fn kernel_of_images_works() {
        let p = 5;
        // g0 -> (1,0), g1 -> (0,1), g2 -> (1,1): kernel spanned by g2-g0-g1.
        let images = vec![sv(&[1, 0], p), sv(&[0, 1], p), sv(&[1, 1], p)];
        let ker = kernel_of_images(2, p, &images);
        assert_eq!(ker.len(), 1);
        let k = &ker[0];
        let mut img = SparseVec::zero();
        for &(i, c) in &k.entries {
            img = img.axpy(c, &images[i], p);
        }
        assert!(img.is_zero());
        assert_ne!(k.get(2), 0);
    }

    #[test]
    fn intersect_coords() {
        let p = 5;
        let s = Subspace::from_vectors(
            4,
            p,
            vec![sv(&[1, 0, 1, 0], p), sv(&[0, 1, 0, 1], p), sv(&[0, 0, 1, 1], p)],
        );
        let t = s.intersect_coords(|i| i >= 2);
        assert_eq!(t.rank(), 1);
        assert!(t.contains(&sv(&[0, 0, 1, 1], p)));
    }
}
