//! Artin-Hasse exponentials, truncated Witt vectors over GF(p), and the
//! induced exponential maps a -> prod_i e_p(a_i X^{p^i}) on nilpotent
//! matrices, together with sandwich-style conjugation stability checks.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::fp;
use crate::mat::Mat;
use crate::sparse::SparseVec;
use crate::subspace::Subspace;

// --- Artin-Hasse series ---

/// Coefficients 0..=deg of e_p(T) = exp(sum_{i>=0} T^{p^i} / p^i), as exact
/// rationals.
pub fn artin_hasse_coeffs(p: u64, deg: usize) -> Vec<BigRational> {
    let zero = BigRational::zero();
    let mut s = vec![zero.clone(); deg + 1];
    let mut q: u64 = 1;
    while (q as usize) <= deg {
        s[q as usize] = BigRational::new(BigInt::one(), BigInt::from(q));
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    // exp(s) = sum_k s^k / k!; s has no constant term, so s^k starts at T^k.
    let mul_trunc = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); deg + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if i + j > deg {
                    break;
                }
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        out
    };
    let mut result = vec![BigRational::zero(); deg + 1];
    result[0] = BigRational::one();
    let mut term = result.clone();
    for k in 1..=deg {
        term = mul_trunc(&term, &s);
        let kk = BigRational::from(BigInt::from(k as u64));
        for t in &mut term {
            *t /= kk.clone();
        }
        for (r, t) in result.iter_mut().zip(&term) {
            *r += t;
        }
    }
    result
}

/// Whether every coefficient of e_p(T) through `deg` is p-integral.
pub fn artin_hasse_is_p_integral(p: u64, deg: usize) -> bool {
    let pb = BigInt::from(p);
    artin_hasse_coeffs(p, deg)
        .iter()
        .all(|c| !(c.denom().abs() % &pb).is_zero())
}

/// The series reduced mod p (requires p-integrality).
pub fn artin_hasse_mod_p(p: u64, deg: usize) -> Vec<u64> {
    let pb = BigInt::from(p);
    artin_hasse_coeffs(p, deg)
        .iter()
        .map(|c| {
            let num = ((c.numer() % &pb) + &pb) % &pb;
            let den = ((c.denom() % &pb) + &pb) % &pb;
            let num: u64 = num.try_into().unwrap();
            let den: u64 = den.try_into().unwrap();
            fp::mul(num, fp::inv(den, p), p)
        })
        .collect()
}

// --- Truncated Witt vectors ---

fn ghost(p: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    let n = v.len();
    (0..n)
        .map(|k| {
            let mut acc = BigInt::zero();
            for (i, vi) in v.iter().enumerate().take(k + 1) {
                let e = p.pow((k - i) as u32);
                let e: u64 = (&e).try_into().unwrap();
                acc += p.pow(i as u32) * vi.pow(e as u32);
            }
            acc
        })
        .collect()
}

/// Addition in the truncated Witt ring W_n(GF(p)), via integer ghost
/// components: lift, add the ghosts, and recover the (integral) sum
/// coordinates by the exact triangular divisions.
pub fn witt_add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let pb = BigInt::from(p);
    let lift = |v: &[u64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x % p)).collect() };
    let (x, y) = (lift(a), lift(b));
    let g: Vec<BigInt> = ghost(&pb, &x)
        .into_iter()
        .zip(ghost(&pb, &y))
        .map(|(u, v)| u + v)
        .collect();
    let mut z: Vec<BigInt> = Vec::with_capacity(n);
    for k in 0..n {
        let mut rem = g[k].clone();
        for (i, zi) in z.iter().enumerate() {
            let e = pb.pow((k - i) as u32);
            let e: u64 = (&e).try_into().unwrap();
            rem -= pb.pow(i as u32) * zi.pow(e as u32);
        }
        let (q, r) = num::Integer::div_rem(&rem, &pb.pow(k as u32));
        assert!(r.is_zero(), "ghost recovery must divide exactly");
        z.push(q);
    }
    z.iter()
        .map(|zi| {
            let m = ((zi % &pb) + &pb) % &pb;
            (&m).try_into().unwrap()
        })
        .collect()
}

/// The additive inverse in W_n(GF(p)), by exhausting the p^n candidates.
pub fn witt_neg(p: u64, a: &[u64]) -> Vec<u64> {
    let n = a.len();
    let total = p.pow(n as u32);
    for code in 0..total {
        let mut b = vec![0u64; n];
        let mut c = code;
        for slot in b.iter_mut() {
            *slot = c % p;
            c /= p;
        }
        if witt_add(p, a, &b).iter().all(|&x| x == 0) {
            return b;
        }
    }
    unreachable!("Witt vectors form a group");
}

/// All Witt vectors of length n over GF(p), in odometer order.
pub fn witt_elements(p: u64, n: usize) -> Vec<Vec<u64>> {
    let total = p.pow(n as u32);
    (0..total)
        .map(|code| {
            let mut v = vec![0u64; n];
            let mut c = code;
            for slot in v.iter_mut() {
                *slot = c % p;
                c /= p;
            }
            v
        })
        .collect()
}

// --- Exponential maps on nilpotent matrices ---

/// e_p(Y) for a nilpotent matrix Y, truncated at the nilpotency index.
pub fn ep_of_matrix(p: u64, y: &Mat) -> Mat {
    let deg = y.rows;
    let coeffs = artin_hasse_mod_p(p, deg);
    let mut acc = Mat::identity(deg, p);
    let mut pw = Mat::identity(deg, p);
    for c in coeffs.iter().skip(1) {
        pw = pw.mul(y);
        if pw.is_zero() {
            break;
        }
        acc = acc.add(&pw.scale(*c));
    }
    assert!(pw.mul(y).is_zero(), "argument must be nilpotent");
    acc
}

/// f_X(a) = prod_i e_p(a_i X^{p^i}) for a Witt vector a and nilpotent X.
pub fn exp_map(p: u64, x: &Mat, a: &[u64]) -> Mat {
    let mut acc = Mat::identity(x.rows, p);
    let mut xq = x.clone();
    for (i, &ai) in a.iter().enumerate() {
        if i > 0 {
            xq = xq.pow(p);
        }
        acc = acc.mul(&ep_of_matrix(p, &xq.scale(ai % p)));
    }
    acc
}

/// Exhaustive check that a -> f_X(a) is a homomorphism from (W_n(GF(p)), +)
/// to the group of unipotent matrices, with commuting images.
pub fn check_fx_homomorphism(p: u64, n: usize, x: &Mat) -> bool {
    let elems = witt_elements(p, n);
    let images: Vec<Mat> = elems.iter().map(|a| exp_map(p, x, a)).collect();
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let sum = witt_add(p, a, b);
            let expect = exp_map(p, x, &sum);
            if images[i].mul(&images[j]) != expect {
                return false;
            }
            if images[i].mul(&images[j]) != images[j].mul(&images[i]) {
                return false;
            }
        }
    }
    true
}

// --- Dual numbers: first-order behavior of f_X ---

/// A matrix over GF(p)[eps]/(eps^2), as re + eps * d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMat {
    pub re: Mat,
    pub d: Mat,
}

impl DualMat {
    pub fn identity(n: usize, p: u64) -> Self {
        DualMat { re: Mat::identity(n, p), d: Mat::zeros(n, n, p) }
    }

    pub fn mul(&self, other: &DualMat) -> DualMat {
        DualMat {
            re: self.re.mul(&other.re),
            d: self.re.mul(&other.d).add(&self.d.mul(&other.re)),
        }
    }
}

/// f_X evaluated at dual Witt coordinates a_i + eps b_i; the eps-part is the
/// directional derivative of f_X at a in direction b.
pub fn exp_map_dual(p: u64, x: &Mat, a: &[(u64, u64)]) -> DualMat {
    let n = x.rows;
    let coeffs = artin_hasse_mod_p(p, n);
    let mut acc = DualMat::identity(n, p);
    let mut xq = x.clone();
    for (i, &(u, v)) in a.iter().enumerate() {
        if i > 0 {
            xq = xq.pow(p);
        }
        // e_p((u + eps v) Y) = sum_k c_k (u^k + eps k u^(k-1) v) Y^k.
        let mut factor = DualMat::identity(n, p);
        let mut pw = Mat::identity(n, p);
        for (k, c) in coeffs.iter().enumerate().skip(1) {
            pw = pw.mul(&xq);
            if pw.is_zero() {
                break;
            }
            let uk = fp::pow(u % p, k as u64, p);
            let duk = fp::mul(
                fp::mul(fp::reduce_i64(k as i64, p), fp::pow(u % p, k as u64 - 1, p), p),
                v % p,
                p,
            );
            factor.re = factor.re.add(&pw.scale(fp::mul(*c, uk, p)));
            factor.d = factor.d.add(&pw.scale(fp::mul(*c, duk, p)));
        }
        acc = acc.mul(&factor);
    }
    acc
}

// --- Conjugation stability ---

/// Sandwich-style stability of a square-zero element D inside the span G of
/// `basis`: D^2 = 0, D lies in G, and for every basis element A both [A, D]
/// and D A D lie back in G.
pub fn conjugation_stability(p: u64, d: &Mat, basis: &[Mat]) -> bool {
    if !d.mul(d).is_zero() {
        return false;
    }
    let nn = d.rows * d.cols;
    let mut span = Subspace::new(nn, p);
    for m in basis {
        span.insert(&SparseVec::from_dense(&m.data));
    }
    if !span.contains(&SparseVec::from_dense(&d.data)) {
        return false;
    }
    for a in basis {
        let comm = a.mul(d).sub(&d.mul(a));
        if !span.contains(&SparseVec::from_dense(&comm.data)) {
            return false;
        }
        let sand = d.mul(a).mul(d);
        if !span.contains(&SparseVec::from_dense(&sand.data)) {
            return false;
        }
    }
    true
}

/// Nilpotent Jordan block of size k.
pub fn jordan_block(k: usize, p: u64) -> Mat {
    let mut m = Mat::zeros(k, k, p);
    for i in 0..k - 1 {
        m.set(i, i + 1, 1);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artin_hasse_prefixes() {
        assert_eq!(artin_hasse_mod_p(2, 4), vec![1, 1, 1, 0, 0]);
        assert_eq!(artin_hasse_mod_p(3, 3), vec![1, 1, 2, 2]);
    }

    #[test]
    fn artin_hasse_p_integrality() {
        for p in [2u64, 3, 5, 7] {
            assert!(artin_hasse_is_p_integral(p, 64), "p = {p}");
        }
        // The plain exponential is not p-integral: 1/p! has a p in the
        // denominator, and it shows in e_p only through cancellation.
        let coeffs = artin_hasse_coeffs(2, 4);
        assert_eq!(coeffs[2], BigRational::new(BigInt::from(1), BigInt::from(1)));
    }

    #[test]
    fn witt_vectors_form_cyclic_groups() {
        for (p, n) in [(2u64, 2usize), (2, 3), (3, 2), (5, 1)] {
            // (1, 0, ..) generates a cyclic group of order p^n.
            let one: Vec<u64> = (0..n).map(|i| u64::from(i == 0)).collect();
            let mut acc = vec![0u64; n];
            let mut order = 0u64;
            loop {
                acc = witt_add(p, &acc, &one);
                order += 1;
                if acc.iter().all(|&x| x == 0) {
                    break;
                }
                assert!(order <= p.pow(n as u32));
            }
            assert_eq!(order, p.pow(n as u32), "p = {p}, n = {n}");
            // Commutativity and a sampled associativity.
            let elems = witt_elements(p, n);
            for a in elems.iter().take(6) {
                for b in elems.iter().take(6) {
                    assert_eq!(witt_add(p, a, b), witt_add(p, b, a));
                    for c in elems.iter().take(4) {
                        let l = witt_add(p, &witt_add(p, a, b), c);
                        let r = witt_add(p, a, &witt_add(p, b, c));
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn exp_maps_are_homomorphisms() {
        let grid = [
            (2u64, 1usize, 2usize),
            (2, 2, 4),
            (3, 1, 3),
            (5, 1, 5),
        ];
        for (p, n, k) in grid {
            let x = jordan_block(k, p);
            assert!(check_fx_homomorphism(p, n, &x), "p = {p}, n = {n}");
        }
    }

    #[test]
    fn exp_map_inverse_property() {
        let p = 2;
        let x = jordan_block(4, p);
        for a in witt_elements(p, 2) {
            let neg = witt_neg(p, &a);
            let prod = exp_map(p, &x, &a).mul(&exp_map(p, &x, &neg));
            assert_eq!(prod, Mat::identity(4, p));
        }
    }

    #[test]
    fn truncated_plain_exp_is_not_a_homomorphism() {
        // Replacing e_p by its naive truncation 1 + T breaks the
        // homomorphism property at p = 2, n = 2 (the T^3 terms disagree).
        let p = 2;
        let x = jordan_block(4, p);
        let g = |a: &[u64]| -> Mat {
            // exp truncated below degree p, applied to a_0 X + a_1 X^2.
            let mut acc = Mat::identity(4, p);
            let mut xq = x.clone();
            for (i, &ai) in a.iter().enumerate() {
                if i > 0 {
                    xq = xq.pow(p);
                }
                acc = acc.add(&xq.scale(ai));
            }
            acc
        };
        let mut broken = false;
        for a in witt_elements(p, 2) {
            for b in witt_elements(p, 2) {
                if g(&witt_add(p, &a, &b)) != g(&a).mul(&g(&b)) {
                    broken = true;
                }
            }
        }
        assert!(broken);
    }

    #[test]
    fn dual_numbers_first_order() {
        // At a = 0 with direction e_i: f = I + eps X^{p^i}.
        for (p, n, k) in [(3u64, 2usize, 9usize), (5, 1, 5)] {
            let x = jordan_block(k, p);
            for i in 0..n {
                let a: Vec<(u64, u64)> = (0..n).map(|j| (0, u64::from(j == i))).collect();
                let got = exp_map_dual(p, &x, &a);
                assert_eq!(got.re, Mat::identity(k, p));
                assert_eq!(got.d, x.pow(p.pow(i as u32)));
            }
            // And the real part always agrees with exp_map.
            let a: Vec<(u64, u64)> = (0..n).map(|j| ((j as u64 + 1) % p, 1)).collect();
            let re_only: Vec<u64> = a.iter().map(|&(u, _)| u).collect();
            assert_eq!(exp_map_dual(p, &x, &a).re, exp_map(p, &x, &re_only));
        }
    }

    #[test]
    fn conjugation_stability_in_witt_1_1() {
        // Positive control: ad(X^(4) d) is square-zero and sandwich-stable in
        // ad(W(1;1)) over GF(5).
        use crate::cartan::build_witt;
        use crate::dpalg::Shape;
        use crate::liecore::MatrixRep;
        let shape = Shape::new(5, &[1]);
        let alg = build_witt(&shape).to_lie_algebra().unwrap();
        let rep = MatrixRep::adjoint(&alg);
        let top = rep.images.last().unwrap();
        assert!(conjugation_stability(5, top, &rep.images));
        // Negative arm: ad(d) is not square-zero.
        assert!(!conjugation_stability(5, &rep.images[0], &rep.images));
    }
}
