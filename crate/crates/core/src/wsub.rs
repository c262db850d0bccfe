//! Subalgebras of W(m;n) kept in ambient W-coordinates.
//!
//! `WittSubalgebra` stores a chosen basis together with a tracking echelon
//! solver, so brackets (computed by the generalized Witt bracket in the
//! ambient space) can be expressed back in basis coordinates.  On top of that
//! it provides the descending filtration induced by the grading of W, and the
//! associated graded algebra realized inside W by homogeneous representatives.

use std::collections::BTreeMap;

use crate::dpalg::{witt_bracket, Shape};
use crate::liecore::{LieAlgebra, LieOps};
use crate::sparse::SparseVec;
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct WittSubalgebra {
    pub shape: Shape,
    /// Basis vectors in W-coordinates, in construction order.
    pub basis: Vec<SparseVec>,
    solver: Subspace,
    /// Insertion index in the solver -> position in `basis`.
    remap: BTreeMap<usize, usize>,
    /// Degrees of the basis vectors, when each is homogeneous for the grading
    /// the family carries (the W-degree for W, S, H; the contact degree for K).
    pub degrees: Option<Vec<i64>>,
}

impl WittSubalgebra {
    /// Keep a maximal independent subset of `spanning`, in order.
    pub fn from_spanning(shape: &Shape, spanning: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut solver = Subspace::new_tracking(shape.dim_w(), shape.p);
        let mut basis = Vec::new();
        let mut remap = BTreeMap::new();
        for v in spanning {
            let idx = solver.inserted;
            if solver.insert(&v) {
                remap.insert(idx, basis.len());
                basis.push(v);
            }
        }
        let mut out = WittSubalgebra { shape: shape.clone(), basis, solver, remap, degrees: None };
        out.degrees = out.w_degrees();
        out
    }

    /// Degrees when every basis vector is W-homogeneous.
    fn w_degrees(&self) -> Option<Vec<i64>> {
        let mut degs = Vec::with_capacity(self.basis.len());
        for v in &self.basis {
            let mut it = v.entries.iter().map(|&(w, _)| self.shape.w_degree(w));
            let d = it.next()?;
            if it.any(|e| e != d) {
                return None;
            }
            degs.push(d);
        }
        Some(degs)
    }

    pub fn span(&self) -> &Subspace {
        &self.solver
    }

    /// Structure-constant form with recomputed brackets; carries the stored
    /// grading when present.
    pub fn to_lie_algebra(&self) -> Result<LieAlgebra, String> {
        let n = self.basis.len();
        let labels = self.basis.iter().map(|v| w_label(&self.shape, v)).collect();
        let mut alg = LieAlgebra::new(self.shape.p, labels);
        for i in 0..n {
            for j in (i + 1)..n {
                let z = witt_bracket(&self.shape, &self.basis[i], &self.basis[j]);
                let coords = self
                    .express(&z)
                    .ok_or_else(|| format!("not closed under the bracket at ({i},{j})"))?;
                alg.set_bracket(i, j, coords);
            }
        }
        alg.grading = self.degrees.clone();
        Ok(alg)
    }

    /// The filtration component L ∩ (sum of W-degrees >= j).
    pub fn filtration_layer(&self, j: i64) -> Subspace {
        self.solver.intersect_coords(|w| self.shape.w_degree(w) >= j)
    }

    /// Descending filtration (j, L_(j)) from the lowest occupied W-degree up
    /// to the last j with L_(j) nonzero.  Returns the list together with the
    /// depth s (L = L_(-s)) and height h (L_(h) != 0, L_(h+1) = 0).
    pub fn filtration(&self) -> (Vec<(i64, Subspace)>, i64, i64) {
        let min_deg = self
            .basis
            .iter()
            .flat_map(|v| v.entries.iter().map(|&(w, _)| self.shape.w_degree(w)))
            .min()
            .expect("nontrivial algebra required");
        let mut layers = Vec::new();
        let mut j = min_deg;
        loop {
            let layer = self.filtration_layer(j);
            if layer.is_trivial() {
                break;
            }
            layers.push((j, layer));
            j += 1;
        }
        let s = -layers
            .iter()
            .rev()
            .find(|(_, l)| l.rank() == self.basis.len())
            .expect("the lowest layer is everything")
            .0;
        let h = layers.last().unwrap().0;
        (layers, s, h)
    }

    /// Associated graded algebra of the filtration, realized inside W: the
    /// degree-j part is spanned by the degree-j components of representatives
    /// of L_(j) modulo L_(j+1).  Because W itself is graded, brackets of the
    /// homogeneous representatives are again homogeneous and land in the
    /// graded algebra, which is therefore a `WittSubalgebra` in its own right.
    pub fn gr_subalgebra(&self) -> WittSubalgebra {
        let (layers, _, _) = self.filtration();
        let mut reps: Vec<(i64, SparseVec)> = Vec::new();
        for (k, (j, layer)) in layers.iter().enumerate() {
            let next = layers
                .get(k + 1)
                .map(|(_, l)| l.clone())
                .unwrap_or_else(|| Subspace::new(self.shape.dim_w(), self.shape.p));
            for rep in layer.complete_from(&next) {
                let proj = rep.map_indices(
                    |w| (self.shape.w_degree(w) == *j).then_some(w),
                    self.shape.p,
                );
                reps.push((*j, proj));
            }
        }
        let mut out = WittSubalgebra::from_spanning(&self.shape, reps.iter().map(|(_, v)| v.clone()));
        assert_eq!(out.basis.len(), self.basis.len(), "gr must preserve dimension");
        out.degrees = Some(reps.iter().map(|&(j, _)| j).collect());
        out
    }
}

impl LieOps for WittSubalgebra {
    fn p(&self) -> u64 {
        self.shape.p
    }
    fn dim(&self) -> usize {
        self.basis.len()
    }
    fn amb(&self) -> usize {
        self.shape.dim_w()
    }
    fn basis_vec(&self, i: usize) -> SparseVec {
        self.basis[i].clone()
    }
    fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        witt_bracket(&self.shape, x, y)
    }
    fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        // Combos only ever mention insertion indices that enlarged the span,
        // so the remap is total on the support.
        self.solver
            .express(v)
            .map(|combo| combo.map_indices(|i| Some(self.remap[&i]), self.shape.p))
    }
}

/// Human-readable label for a W-coordinate vector, e.g. `X^(2,1)d1 + 3d2`.
pub fn w_label(shape: &Shape, v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = v
        .entries
        .iter()
        .map(|&(w, c)| {
            let (a_code, j) = shape.decode_w(w);
            let mut s = String::new();
            if c != 1 {
                s.push_str(&c.to_string());
            }
            if a_code != 0 {
                let a = shape.decode(a_code);
                let digits: Vec<String> = a.iter().map(|d| d.to_string()).collect();
                s.push_str(&format!("X^({})", digits.join(",")));
            }
            s.push_str(&format!("d{}", j + 1));
            s
        })
        .collect();
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpalg::{derivation_from_coeff, dp_mono, partial_derivation};

    /// W(1;1) over GF(5) as a subalgebra of itself.
    fn witt11() -> WittSubalgebra {
        let shape = Shape::new(5, &[1]);
        WittSubalgebra::from_spanning(&shape, (0..shape.dim_w()).map(SparseVec::unit))
    }

    #[test]
    fn witt11_structure() {
        let w = witt11();
        assert_eq!(w.dim(), 5);
        let alg = w.to_lie_algebra().unwrap();
        alg.validate_jacobi(10, 0, 0).unwrap();
        let info = alg.verify_grading().unwrap();
        assert_eq!((info.depth, info.height), (1, 3));
        let (_, s, h) = w.filtration();
        assert_eq!((s, h), (1, 3));
    }

    #[test]
    fn express_roundtrip() {
        let w = witt11();
        let shape = &w.shape.clone();
        let v = derivation_from_coeff(shape, &dp_mono(shape, &[2]), 0)
            .axpy(3, &partial_derivation(shape, 0), 5);
        let coords = w.express(&v).unwrap();
        assert_eq!(w.from_coords(&coords), v);
    }

    #[test]
    fn gr_of_graded_algebra_is_itself() {
        let w = witt11();
        let gr = w.gr_subalgebra();
        assert!(gr.span().equals(w.span()));
        assert_eq!(gr.degrees, w.degrees);
    }
}
