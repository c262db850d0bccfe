//! The Melikian algebras M(n1;n2) over GF(5): M = A(2;n) + W(2;n) + W(2;n)~,
//! with the brackets
//!   [D, E]            the Witt bracket,
//!   [D, E~]         = [D,E]~ + 2 div(D) E~,
//!   [D, f]          = D(f) - 2 div(D) f,
//!   [f1 d1~ + f2 d2~, g1 d1~ + g2 d2~] = f1 g2 - f2 g1,
//!   [f, E~]         = f E,
//!   [f, g]          = 2 (g d2(f) - f d2(g)) d1~ + 2 (f d1(g) - g d1(f)) d2~,
//! graded by deg(X^(a) d_i) = 3|a| - 3, deg(X^(a)) = 3|a| - 2,
//! deg(X^(a) d_i~) = 3|a| - 1.

use crate::dpalg::{
    apply_derivation, divergence, dp_mul, partial, scale_derivation, witt_bracket, Shape,
};
use crate::liecore::LieAlgebra;
use crate::sparse::SparseVec;

#[derive(Clone, Debug)]
pub struct Melikian {
    pub shape: Shape,
}

impl Melikian {
    pub fn new(n1: u32, n2: u32) -> Self {
        Melikian { shape: Shape::new(5, &[n1, n2]) }
    }

    /// dim A(2;n) = 5^(n1+n2).
    pub fn q(&self) -> usize {
        self.shape.dim_a()
    }

    /// dim M = 5 q.
    pub fn dim(&self) -> usize {
        5 * self.q()
    }

    // Coordinate blocks: [ A | W | W~ ].
    pub fn a_index(&self, a_code: usize) -> usize {
        a_code
    }
    pub fn w_index(&self, w_code: usize) -> usize {
        self.q() + w_code
    }
    pub fn t_index(&self, w_code: usize) -> usize {
        self.q() + 2 * self.q() + w_code
    }

    /// Split a vector into its A, W and W~ components (each in its own
    /// natural coordinates).
    pub fn split(&self, v: &SparseVec) -> (SparseVec, SparseVec, SparseVec) {
        let q = self.q();
        let mut a = Vec::new();
        let mut w = Vec::new();
        let mut t = Vec::new();
        for &(i, c) in &v.entries {
            if i < q {
                a.push((i, c));
            } else if i < 3 * q {
                w.push((i - q, c));
            } else {
                t.push((i - 3 * q, c));
            }
        }
        (
            SparseVec { entries: a },
            SparseVec { entries: w },
            SparseVec { entries: t },
        )
    }

    pub fn join(&self, a: &SparseVec, w: &SparseVec, t: &SparseVec) -> SparseVec {
        let q = self.q();
        let mut entries = a.entries.clone();
        entries.extend(w.entries.iter().map(|&(i, c)| (i + q, c)));
        entries.extend(t.entries.iter().map(|&(i, c)| (i + 3 * q, c)));
        SparseVec { entries }
    }

    pub fn degree(&self, idx: usize) -> i64 {
        let q = self.q();
        if idx < q {
            3 * self.shape.mono_degree(idx) - 2
        } else if idx < 3 * q {
            3 * (self.shape.w_degree(idx - q) + 1) - 3
        } else {
            3 * (self.shape.w_degree(idx - 3 * q) + 1) - 1
        }
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let shape = &self.shape;
        let p = shape.p;
        let (xa, xw, xt) = self.split(x);
        let (ya, yw, yt) = self.split(y);
        let mut ra = SparseVec::zero();
        let mut rw = SparseVec::zero();
        let mut rt = SparseVec::zero();

        // [W, W] -> W.
        if !xw.is_zero() && !yw.is_zero() {
            rw = rw.add(&witt_bracket(shape, &xw, &yw), p);
        }
        // [D, f] = D(f) - 2 div(D) f  (W x A -> A), both orders.
        let wa = |d: &SparseVec, f: &SparseVec, sign_neg: bool| {
            if d.is_zero() || f.is_zero() {
                return SparseVec::zero();
            }
            let mut out = apply_derivation(shape, d, f);
            let t = dp_mul(shape, &divergence(shape, d), f).scale(2, p);
            out = out.sub(&t, p);
            if sign_neg {
                out.neg(p)
            } else {
                out
            }
        };
        ra = ra.add(&wa(&xw, &ya, false), p);
        ra = ra.add(&wa(&yw, &xa, true), p);
        // [D, E~] = [D,E]~ + 2 div(D) E~  (W x W~ -> W~), both orders.
        let wt = |d: &SparseVec, e: &SparseVec, sign_neg: bool| {
            if d.is_zero() || e.is_zero() {
                return SparseVec::zero();
            }
            let mut out = witt_bracket(shape, d, e);
            let t = scale_derivation(shape, &divergence(shape, d), e).scale(2, p);
            out = out.add(&t, p);
            if sign_neg {
                out.neg(p)
            } else {
                out
            }
        };
        rt = rt.add(&wt(&xw, &yt, false), p);
        rt = rt.add(&wt(&yw, &xt, true), p);
        // [W~, W~] -> A: f1 g2 - f2 g1.
        if !xt.is_zero() && !yt.is_zero() {
            let f1 = crate::dpalg::derivation_coeff(shape, &xt, 0);
            let f2 = crate::dpalg::derivation_coeff(shape, &xt, 1);
            let g1 = crate::dpalg::derivation_coeff(shape, &yt, 0);
            let g2 = crate::dpalg::derivation_coeff(shape, &yt, 1);
            ra = ra.add(&dp_mul(shape, &f1, &g2).sub(&dp_mul(shape, &f2, &g1), p), p);
        }
        // [f, E~] = f E  (A x W~ -> W), both orders.
        if !xa.is_zero() && !yt.is_zero() {
            rw = rw.add(&scale_derivation(shape, &xa, &yt), p);
        }
        if !ya.is_zero() && !xt.is_zero() {
            rw = rw.sub(&scale_derivation(shape, &ya, &xt), p);
        }
        // [f, g] -> W~.
        if !xa.is_zero() && !ya.is_zero() {
            let f = &xa;
            let g = &ya;
            let c1 = dp_mul(shape, g, &partial(shape, 1, f))
                .sub(&dp_mul(shape, f, &partial(shape, 1, g)), p)
                .scale(2, p);
            let c2 = dp_mul(shape, f, &partial(shape, 0, g))
                .sub(&dp_mul(shape, g, &partial(shape, 0, f)), p)
                .scale(2, p);
            rt = rt.add(&crate::dpalg::derivation_from_coeff(shape, &c1, 0), p);
            rt = rt.add(&crate::dpalg::derivation_from_coeff(shape, &c2, 1), p);
        }
        self.join(&ra, &rw, &rt)
    }

    /// Structure-constant form with the grading attached.
    pub fn to_lie_algebra(&self) -> LieAlgebra {
        let shape = &self.shape;
        let q = self.q();
        let dim = self.dim();
        let mono = |a_code: usize| -> String {
            let a = shape.decode(a_code);
            let digits: Vec<String> = a.iter().map(|d| d.to_string()).collect();
            format!("X^({})", digits.join(","))
        };
        let labels: Vec<String> = (0..dim)
            .map(|i| {
                if i < q {
                    mono(i)
                } else if i < 3 * q {
                    let (a, j) = shape.decode_w(i - q);
                    if a == 0 {
                        format!("d{}", j + 1)
                    } else {
                        format!("{}d{}", mono(a), j + 1)
                    }
                } else {
                    let (a, j) = shape.decode_w(i - 3 * q);
                    if a == 0 {
                        format!("d{}~", j + 1)
                    } else {
                        format!("{}d{}~", mono(a), j + 1)
                    }
                }
            })
            .collect();
        let mut alg = LieAlgebra::new(5, labels);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let z = self.bracket(&SparseVec::unit(i), &SparseVec::unit(j));
                alg.set_bracket(i, j, z);
            }
        }
        alg.grading = Some((0..dim).map(|i| self.degree(i)).collect());
        alg
    }
}

/// Computed height of the grading of M(n1;n2): the top layer is
/// X^(tau) d_i~ of degree 3(|tau| + 1) - 1 = 3 (5^n1 + 5^n2) - 7.
pub fn melikian_height(n1: u32, n2: u32) -> i64 {
    3 * (5i64.pow(n1) + 5i64.pow(n2)) - 7
}

/// The closed-form height 3 * 5^(n1+n2) - 7 that circulates for this family.
/// It disagrees with the computed height (already 68 vs 23 at n1 = n2 = 1);
/// the discrepancy is surfaced as an open-question flag by the reporting
/// layer.
pub fn melikian_height_closed_form(n1: u32, n2: u32) -> i64 {
    3 * 5i64.pow(n1 + n2) - 7
}
