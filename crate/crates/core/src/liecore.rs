//! Finite-dimensional Lie algebras over GF(p) given by structure constants,
//! together with the linear-algebra toolkit used throughout: generated
//! subalgebras, derived series, centers, gradings, filtrations and associated
//! graded algebras, quotients, matrix representations, restricted closures
//! and p-envelopes.

use std::collections::BTreeMap;

use crate::fp;
use crate::mat::Mat;
use crate::sparse::SparseVec;
use crate::subspace::Subspace;

/// A Lie algebra with an explicit basis and structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub p: u64,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `sc[(i,j)]` with `i < j` holds the coordinates of `[b_i, b_j]`.
    /// Missing keys mean zero brackets.
    pub sc: BTreeMap<(usize, usize), SparseVec>,
    /// Degrees of the basis elements when the algebra is graded.
    pub grading: Option<Vec<i64>>,
}

/// Interface shared by structure-constant algebras and algebras realized as
/// subalgebras of a larger coordinate space (e.g. subalgebras of W(m;n)).
///
/// `amb` is the dimension of the ambient coordinate space; the algebra itself
/// is the span of `basis_vec(0..dim)` inside it.
pub trait LieOps {
    fn p(&self) -> u64;
    fn dim(&self) -> usize;
    fn amb(&self) -> usize;
    fn basis_vec(&self, i: usize) -> SparseVec;
    /// Bracket of two ambient vectors lying in the algebra.
    fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec;
    /// Coordinates of an ambient vector relative to the basis, if it lies in
    /// the algebra.
    fn express(&self, v: &SparseVec) -> Option<SparseVec>;

    fn basis_vecs(&self) -> Vec<SparseVec> {
        (0..self.dim()).map(|i| self.basis_vec(i)).collect()
    }

    /// The operator ad(x) on ambient vectors.  Implementations backed by a
    /// precomputable action may override this with something faster than the
    /// generic bracket.
    fn ad_op<'a>(&'a self, x: &SparseVec) -> Box<dyn Fn(&SparseVec) -> SparseVec + 'a> {
        let x = x.clone();
        Box::new(move |v| self.bracket(&x, v))
    }

    /// Ambient vector of an element given in basis coordinates.
    fn from_coords(&self, x: &SparseVec) -> SparseVec {
        let mut v = SparseVec::zero();
        for &(i, c) in &x.entries {
            v = v.axpy(c, &self.basis_vec(i), self.p());
        }
        v
    }

    /// Dense matrix of ad(x) relative to the basis (x in ambient coords).
    fn ad_matrix(&self, x: &SparseVec) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n, self.p());
        for j in 0..n {
            let img = self.bracket(x, &self.basis_vec(j));
            let coords = self
                .express(&img)
                .expect("ad image must stay inside the algebra");
            for &(i, c) in &coords.entries {
                m.set(i, j, c);
            }
        }
        m
    }
}

impl LieAlgebra {
    pub fn new(p: u64, labels: Vec<String>) -> Self {
        let dim = labels.len();
        LieAlgebra { p, dim, labels, sc: BTreeMap::new(), grading: None }
    }

    /// Record `[b_i, b_j] = v` (requires i < j); the opposite order is
    /// derived by antisymmetry.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec) {
        assert!(i < j && j < self.dim);
        if v.is_zero() {
            self.sc.remove(&(i, j));
        } else {
            self.sc.insert((i, j), v);
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => SparseVec::zero(),
            Less => self.sc.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .sc
                .get(&(j, i))
                .map(|v| v.neg(self.p))
                .unwrap_or_default(),
        }
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let p = self.p;
        let mut acc = SparseVec::zero();
        for &(i, a) in &x.entries {
            for &(j, b) in &y.entries {
                if i == j {
                    continue;
                }
                let row = self.bracket_basis(i, j);
                if !row.is_zero() {
                    acc = acc.axpy(fp::mul(a, b, p), &row, p);
                }
            }
        }
        acc
    }

    /// Check the Jacobi identity. Exhaustive over all basis triples when
    /// `dim <= exhaustive_limit`, otherwise on `samples` seeded random triples.
    pub fn validate_jacobi(&self, exhaustive_limit: usize, samples: usize, seed: u64) -> Result<(), String> {
        let jacobi = |i: usize, j: usize, k: usize| -> bool {
            let a = self.bracket_vec(&self.bracket_basis(i, j), &SparseVec::unit(k));
            let b = self.bracket_vec(&self.bracket_basis(j, k), &SparseVec::unit(i));
            let c = self.bracket_vec(&self.bracket_basis(k, i), &SparseVec::unit(j));
            a.add(&b, self.p).add(&c, self.p).is_zero()
        };
        if self.dim <= exhaustive_limit {
            for i in 0..self.dim {
                for j in (i + 1)..self.dim {
                    for k in (j + 1)..self.dim {
                        if !jacobi(i, j, k) {
                            return Err(format!("Jacobi fails on basis triple ({i},{j},{k})"));
                        }
                    }
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let i = rng.gen_range(0..self.dim);
                let j = rng.gen_range(0..self.dim);
                let k = rng.gen_range(0..self.dim);
                if i == j || j == k || i == k {
                    continue;
                }
                if !jacobi(i, j, k) {
                    return Err(format!("Jacobi fails on basis triple ({i},{j},{k})"));
                }
            }
        }
        Ok(())
    }

    /// Check antisymmetry conventions: structure constants are only stored
    /// for i < j and diagonal brackets vanish by construction, so this always
    /// holds; kept for clarity of intent in tests.
    pub fn full_space(&self) -> Subspace {
        Subspace::from_vectors(self.dim, self.p, (0..self.dim).map(SparseVec::unit))
    }

    /// Span of all brackets [S, T].
    pub fn bracket_span(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut out = Subspace::new(self.dim, self.p);
        for x in s.basis() {
            for y in t.basis() {
                out.insert(&self.bracket_vec(x, y));
            }
        }
        out
    }

    pub fn derived_subspace(&self) -> Subspace {
        let full = self.full_space();
        self.bracket_span(&full, &full)
    }

    /// Derived series L ⊇ L^(1) ⊇ L^(2) ⊇ ... until stable; first entry is L.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![self.full_space()];
        loop {
            let last = out.last().unwrap();
            let next = {
                let mut s = Subspace::new(self.dim, self.p);
                let basis = last.basis();
                for (a, x) in basis.iter().enumerate() {
                    for y in basis.iter().skip(a + 1) {
                        s.insert(&self.bracket_vec(x, y));
                    }
                }
                s
            };
            if next.rank() == last.rank() {
                break;
            }
            let stop = next.is_trivial();
            out.push(next);
            if stop {
                break;
            }
        }
        out
    }

    /// The center {x : [x, L] = 0}, via the kernel of x -> (ad x applied to
    /// all basis vectors).
    pub fn center(&self) -> Subspace {
        let p = self.p;
        let images: Vec<SparseVec> = (0..self.dim)
            .map(|i| {
                // Image of b_i under x -> ([x,b_0], [x,b_1], ...), flattened.
                let mut terms = Vec::new();
                for j in 0..self.dim {
                    let v = self.bracket_basis(i, j);
                    for &(k, c) in &v.entries {
                        terms.push((j * self.dim + k, c));
                    }
                }
                SparseVec::from_terms(terms, p)
            })
            .collect();
        let kernel = crate::subspace::kernel_of_images(self.dim * self.dim, p, &images);
        Subspace::from_vectors(self.dim, p, kernel)
    }

    /// Verify a stored grading and summarize it.
    pub fn verify_grading(&self) -> Result<GradingInfo, String> {
        let degs = self
            .grading
            .as_ref()
            .ok_or_else(|| "algebra carries no grading".to_string())?;
        for (&(i, j), v) in &self.sc {
            let d = degs[i] + degs[j];
            for &(k, _) in &v.entries {
                if degs[k] != d {
                    return Err(format!(
                        "bracket [b{i}, b{j}] has a component in degree {} != {d}",
                        degs[k]
                    ));
                }
            }
        }
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for &d in degs {
            *dims.entry(d).or_insert(0) += 1;
        }
        let min = *dims.keys().next().unwrap();
        let max = *dims.keys().last().unwrap();
        Ok(GradingInfo { depth: -min, height: max, dims })
    }

    /// Homogeneous layer of a graded algebra as a subspace.
    pub fn layer(&self, d: i64) -> Subspace {
        let degs = self.grading.as_ref().expect("graded algebra required");
        Subspace::from_vectors(
            self.dim,
            self.p,
            (0..self.dim).filter(|&i| degs[i] == d).map(SparseVec::unit),
        )
    }

    /// Extract a bracket-closed subspace as a standalone algebra with
    /// recomputed structure constants; fails if the subspace is not closed.
    pub fn subalgebra(&self, s: &Subspace, label_prefix: &str) -> Result<LieAlgebra, String> {
        let p = self.p;
        let mut solver = Subspace::new_tracking(self.dim, p);
        let basis: Vec<SparseVec> = s.basis().into_iter().cloned().collect();
        for v in &basis {
            solver.insert(v);
        }
        let n = basis.len();
        let labels = (0..n).map(|i| format!("{label_prefix}{i}")).collect();
        let mut out = LieAlgebra::new(p, labels);
        for i in 0..n {
            for j in (i + 1)..n {
                let z = self.bracket_vec(&basis[i], &basis[j]);
                let coords = solver
                    .express(&z)
                    .ok_or_else(|| format!("subspace not closed under bracket at ({i},{j})"))?;
                out.set_bracket(i, j, coords);
            }
        }
        if let Some(degs) = &self.grading {
            // Induce degrees when every basis row is homogeneous.
            let mut new_degs = Vec::with_capacity(n);
            for v in &basis {
                let ds: Vec<i64> = v.entries.iter().map(|&(k, _)| degs[k]).collect();
                if ds.windows(2).all(|w| w[0] == w[1]) {
                    new_degs.push(ds[0]);
                } else {
                    new_degs.clear();
                    break;
                }
            }
            if new_degs.len() == n {
                out.grading = Some(new_degs);
            }
        }
        Ok(out)
    }

    /// Quotient by an ideal; fails if the subspace is not an ideal.
    pub fn quotient(&self, ideal: &Subspace, label_prefix: &str) -> Result<LieAlgebra, String> {
        let p = self.p;
        let full = self.full_space();
        for x in ideal.basis() {
            for j in 0..self.dim {
                let z = self.bracket_vec(x, &SparseVec::unit(j));
                if !ideal.contains(&z) {
                    return Err("subspace is not an ideal".to_string());
                }
            }
        }
        let reps = full.complete_from(ideal);
        let mut solver = Subspace::new_tracking(self.dim, p);
        for v in ideal.basis() {
            solver.insert(v);
        }
        let ideal_gens = solver.inserted;
        for v in &reps {
            solver.insert(v);
        }
        let n = reps.len();
        let labels = (0..n).map(|i| format!("{label_prefix}{i}")).collect();
        let mut out = LieAlgebra::new(p, labels);
        for i in 0..n {
            for j in (i + 1)..n {
                let z = self.bracket_vec(&reps[i], &reps[j]);
                let combo = solver.express(&z).expect("bracket must lie in L");
                // Drop the ideal components, reindex the rest.
                let coords = combo.map_indices(
                    |k| (k >= ideal_gens).then(|| k - ideal_gens),
                    p,
                );
                out.set_bracket(i, j, coords);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingInfo {
    /// s: the negative of the lowest occupied degree (0 for nonnegative gradings).
    pub depth: i64,
    /// h: the highest occupied degree.
    pub height: i64,
    pub dims: BTreeMap<i64, usize>,
}

impl LieOps for LieAlgebra {
    fn p(&self) -> u64 {
        self.p
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn amb(&self) -> usize {
        self.dim
    }
    fn basis_vec(&self, i: usize) -> SparseVec {
        SparseVec::unit(i)
    }
    fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.bracket_vec(x, y)
    }
    fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        Some(v.clone())
    }
}

/// Subspace generated by `gens` under repeated bracketing, computed with
/// left-normed words: the generated subalgebra is spanned by
/// [g_{i1},[g_{i2},[...,g_{ik}]]], so each new element only needs to be
/// bracketed with the generators.
pub fn lie_closure<L: LieOps>(alg: &L, gens: &[SparseVec]) -> Subspace {
    let mut span = Subspace::new(alg.amb(), alg.p());
    let mut queue: Vec<SparseVec> = Vec::new();
    for g in gens {
        if span.insert(g) {
            queue.push(g.clone());
        }
    }
    let ops: Vec<_> = gens.iter().map(|g| alg.ad_op(g)).collect();
    while let Some(w) = queue.pop() {
        for op in &ops {
            let z = op(&w);
            let r = span.reduce(&z);
            if !r.is_zero() {
                span.insert(&r);
                queue.push(r);
            }
        }
    }
    span
}

/// Decide whether ad(x) is nilpotent on the whole algebra, by iterated
/// images: with V_0 = L and V_{k+1} = ad(x)(V_k), the rank must strictly
/// decrease until it reaches zero, and a stall at positive rank certifies a
/// nonzero eigenspace of a power (so ad(x) is not nilpotent).  Returns the
/// number of steps to zero, or `None` when not nilpotent.
pub fn operator_nilpotency<L: LieOps>(alg: &L, x: &SparseVec) -> Option<usize> {
    let op = alg.ad_op(x);
    let mut current: Vec<SparseVec> = alg.basis_vecs();
    let mut rank = current.len();
    let mut steps = 0usize;
    while rank > 0 {
        let mut next = Subspace::new(alg.amb(), alg.p());
        for v in &current {
            next.insert(&op(v));
        }
        steps += 1;
        if next.rank() >= rank {
            return None;
        }
        rank = next.rank();
        current = next.basis().into_iter().cloned().collect();
    }
    Some(steps)
}

// --- Matrix representations, restricted closures, p-envelopes ---

/// A matrix representation given on the basis of an algebra.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub p: u64,
    /// Dimension of the module.
    pub deg: usize,
    /// `images[i]` is the matrix of the i-th basis element.
    pub images: Vec<Mat>,
}

impl MatrixRep {
    /// The adjoint representation of a structure-constant algebra.
    pub fn adjoint(alg: &LieAlgebra) -> Self {
        let images = (0..alg.dim)
            .map(|i| alg.ad_matrix(&SparseVec::unit(i)))
            .collect();
        MatrixRep { p: alg.p, deg: alg.dim, images }
    }

    /// Matrix of an element given in basis coordinates.
    pub fn matrix_of(&self, x: &SparseVec) -> Mat {
        let mut m = Mat::zeros(self.deg, self.deg, self.p);
        for &(i, c) in &x.entries {
            m = m.add(&self.images[i].scale(c));
        }
        m
    }

    /// Check the homomorphism property against the structure constants.
    pub fn validate(&self, alg: &LieAlgebra) -> Result<(), String> {
        for i in 0..alg.dim {
            for j in (i + 1)..alg.dim {
                let lhs = self.images[i]
                    .mul(&self.images[j])
                    .sub(&self.images[j].mul(&self.images[i]));
                let rhs = self.matrix_of(&alg.bracket_basis(i, j));
                if lhs != rhs {
                    return Err(format!("rep fails homomorphism on ({i},{j})"));
                }
            }
        }
        Ok(())
    }

    /// Injectivity: the images must be linearly independent.
    pub fn is_faithful(&self) -> bool {
        let mut s = Subspace::new(self.deg * self.deg, self.p);
        self.images
            .iter()
            .all(|m| s.insert(&SparseVec::from_dense(&m.data)))
    }
}

fn flatten(m: &Mat) -> SparseVec {
    SparseVec::from_dense(&m.data)
}

/// Smallest subspace of matrices containing `gens` and closed under
/// commutators and p-th powers.
///
/// Strategy: Lie-closure by left-normed commutator words, then saturate under
/// p-th powers of the accumulated spanning elements.  Powers of arbitrary
/// elements of the span are then automatically inside: Jacobson's formula
/// reduces the p-power of a sum to p-powers of the summands plus Lie terms,
/// and commutators involving p-powers fold back via ad(x^q) = ad(x)^q.
pub fn restricted_closure(p: u64, deg: usize, gens: &[Mat]) -> Vec<Mat> {
    let mut span = Subspace::new(deg * deg, p);
    let mut elems: Vec<Mat> = Vec::new();
    let mut queue: Vec<Mat> = Vec::new();
    for g in gens {
        if span.insert(&flatten(g)) {
            elems.push(g.clone());
            queue.push(g.clone());
        }
    }
    // Lie closure.
    while let Some(w) = queue.pop() {
        for g in gens {
            let z = g.mul(&w).sub(&w.mul(g));
            if span.insert(&flatten(&z)) {
                elems.push(z.clone());
                queue.push(z);
            }
        }
    }
    // p-power saturation. New powers can create new commutators only through
    // expressions already inside the span (see above), so bracketing is not
    // repeated; powers of new elements are.
    let mut next = 0usize;
    while next < elems.len() {
        let m = elems[next].pow(p);
        next += 1;
        if span.insert(&flatten(&m)) {
            elems.push(m);
        }
    }
    elems
}

/// Dimension and basis of the p-envelope of `alg` inside a faithful rep.
pub fn p_envelope(rep: &MatrixRep) -> Vec<Mat> {
    restricted_closure(rep.p, rep.deg, &rep.images)
}

/// Express the p-th power of an element (basis coordinates) back in the
/// algebra through a faithful rep; `None` if the power leaves the image.
pub fn p_power_coords(alg: &LieAlgebra, rep: &MatrixRep, x: &SparseVec) -> Option<SparseVec> {
    let mut solver = Subspace::new_tracking(rep.deg * rep.deg, rep.p);
    for m in &rep.images {
        solver.insert(&flatten(m));
    }
    let _ = alg;
    solver.express(&flatten(&rep.matrix_of(x).pow(rep.p)))
}

// --- Fixtures ---

/// sl_n over GF(p): basis e_ij (i != j) then h_i = e_ii - e_{i+1,i+1}.
pub fn sl(n: usize, p: u64) -> (LieAlgebra, Vec<Mat>) {
    let mut mats: Vec<Mat> = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Mat::zeros(n, n, p);
                m.set(i, j, 1);
                mats.push(m);
                labels.push(format!("e{}{}", i + 1, j + 1));
            }
        }
    }
    for i in 0..n - 1 {
        let mut m = Mat::zeros(n, n, p);
        m.set(i, i, 1);
        m.set(i + 1, i + 1, p - 1);
        mats.push(m);
        labels.push(format!("h{}", i + 1));
    }
    let mut solver = Subspace::new_tracking(n * n, p);
    for m in &mats {
        assert!(solver.insert(&flatten(m)));
    }
    let dim = mats.len();
    let mut alg = LieAlgebra::new(p, labels);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let z = mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i]));
            let coords = solver.express(&flatten(&z)).expect("sl is closed");
            alg.set_bracket(i, j, coords);
        }
    }
    (alg, mats)
}

/// psl_n = sl_n / center (the scalar matrices, when p divides n).
pub fn psl(n: usize, p: u64) -> LieAlgebra {
    let (alg, _) = sl(n, p);
    let center = alg.center();
    alg.quotient(&center, "x").expect("center is an ideal")
}

/// The three-dimensional restricted counterexample algebra at p = 2:
/// [e,f] = h, [h,e] = e, [h,f] = f.
pub fn rumynin_algebra() -> LieAlgebra {
    let mut alg = LieAlgebra::new(2, vec!["e~".into(), "f~".into(), "h~".into()]);
    alg.set_bracket(0, 1, SparseVec::unit(2)); // [e,f] = h
    alg.set_bracket(0, 2, SparseVec::unit(0)); // [e,h] = -e = e (p=2)
    alg.set_bracket(1, 2, SparseVec::unit(1)); // [f,h] = f
    alg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_structure() {
        let (alg, _) = sl(2, 5);
        assert_eq!(alg.dim, 3);
        alg.validate_jacobi(10, 0, 0).unwrap();
        assert!(alg.center().is_trivial());
        let ds = alg.derived_series();
        assert_eq!(ds.len(), 1, "sl2 is perfect away from p=2");
    }

    #[test]
    fn sl3_center_at_p3() {
        let (alg, _) = sl(3, 3);
        assert_eq!(alg.dim, 8);
        assert_eq!(alg.center().rank(), 1);
        let q = psl(3, 3);
        assert_eq!(q.dim, 7);
        q.validate_jacobi(10, 0, 0).unwrap();
        assert!(q.center().is_trivial());
    }

    #[test]
    fn rumynin_is_closed_and_centerless() {
        let alg = rumynin_algebra();
        alg.validate_jacobi(10, 0, 0).unwrap();
        assert!(alg.center().is_trivial());
        assert_eq!(alg.derived_series().len(), 1);
        let rep = MatrixRep::adjoint(&alg);
        rep.validate(&alg).unwrap();
        assert!(rep.is_faithful());
        // ad(L) is not restricted inside gl_3: ad(e~)^2 sends f~ to e~, a
        // matrix slot no combination of ad(e~), ad(f~), ad(h~) reaches, and
        // likewise for ad(f~)^2. The closure adds exactly those two squares.
        let env = p_envelope(&rep);
        assert_eq!(env.len(), 5);
        let mut span = Subspace::new(9, 2);
        for m in &rep.images {
            span.insert(&SparseVec::from_dense(&m.data));
        }
        let sq = rep.images[0].mul(&rep.images[0]);
        assert!(!span.contains(&SparseVec::from_dense(&sq.data)));
    }

    #[test]
    fn closure_of_sl2_generators() {
        let (alg, _) = sl(2, 7);
        // e and f generate sl2.
        let gens = vec![SparseVec::unit(0), SparseVec::unit(1)];
        assert_eq!(lie_closure(&alg, &gens).rank(), 3);
    }

    #[test]
    fn restricted_closure_matches_naive() {
        // Naive oracle: alternate full pairwise bracketing and p-powers.
        fn naive(p: u64, deg: usize, gens: &[Mat]) -> usize {
            let mut span = Subspace::new(deg * deg, p);
            let mut elems: Vec<Mat> = Vec::new();
            for g in gens {
                if span.insert(&flatten(g)) {
                    elems.push(g.clone());
                }
            }
            loop {
                let mut grew = false;
                let snapshot = elems.clone();
                for a in &snapshot {
                    for b in &snapshot {
                        let z = a.mul(b).sub(&b.mul(a));
                        if span.insert(&flatten(&z)) {
                            elems.push(z);
                            grew = true;
                        }
                    }
                    let q = a.pow(p);
                    if span.insert(&flatten(&q)) {
                        elems.push(q);
                        grew = true;
                    }
                }
                if !grew {
                    return elems.len();
                }
            }
        }
        let (alg, _) = sl(2, 3);
        let rep = MatrixRep::adjoint(&alg);
        let fast = restricted_closure(3, 3, &rep.images).len();
        let slow = naive(3, 3, &rep.images);
        assert_eq!(fast, slow);
        // And from a partial generating set.
        let part = vec![rep.images[0].clone(), rep.images[1].clone()];
        assert_eq!(
            restricted_closure(3, 3, &part).len(),
            naive(3, 3, &part)
        );
    }

    #[test]
    fn quotient_brackets_are_well_defined() {
        let (alg, _) = sl(3, 3);
        let q = alg.quotient(&alg.center(), "x").unwrap();
        q.validate_jacobi(10, 0, 0).unwrap();
    }
}
