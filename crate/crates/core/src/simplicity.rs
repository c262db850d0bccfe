//! Simplicity testing via the adjoint module: a Lie algebra is simple iff it
//! is non-abelian and its adjoint module has no submodule other than 0 and L
//! (submodules of the adjoint module are exactly the ideals).
//!
//! The decision procedure is a seeded randomized MeatAxe. For a singular
//! element theta of the acting (associative) algebra, Norton's criterion is
//! decisive once every line of null(theta) has been spun: either some null
//! line generates a proper submodule (a witness ideal), or all spin to the
//! full module and a single null line of the transpose decides through the
//! dual module — a full dual spin proves irreducibility, a proper one yields
//! a witness as its annihilator.
//!
//! When every random word has a large null space (uniform eigenvalue
//! multiplicities), the criterion is refined through the minimal polynomial:
//! an irreducible factor f with null(f(theta)) of dimension deg f has a
//! cyclic primary component, and a single null vector of f(theta) plus one of
//! its transpose decide as above.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::liecore::LieOps;
use crate::mat::Mat;
use crate::sparse::SparseVec;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// A proper nonzero ideal, as a basis in algebra coordinates.
    NotSimple { witness: Vec<SparseVec> },
    /// Randomized search exhausted its budget without a decision.
    Inconclusive,
}

impl Simplicity {
    pub fn verdict(&self) -> &'static str {
        match self {
            Simplicity::Simple => "Simple",
            Simplicity::NotSimple { .. } => "NotSimple",
            Simplicity::Inconclusive => "Inconclusive",
        }
    }
}

/// Greedy generating set for the algebra: basis vectors added until the Lie
/// closure is everything. Returns indices into the basis.
pub fn greedy_generators<L: LieOps>(alg: &L) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut gen_vecs: Vec<SparseVec> = Vec::new();
    let mut span = Subspace::new(alg.amb(), alg.p());
    for i in 0..alg.dim() {
        let v = alg.basis_vec(i);
        if span.contains(&v) {
            continue;
        }
        gens.push(i);
        gen_vecs.push(v);
        span = crate::liecore::lie_closure(alg, &gen_vecs);
        if span.rank() == alg.dim() {
            break;
        }
    }
    gens
}

/// Spin a vector under a set of action matrices; returns the submodule it
/// generates.
fn spin(p: u64, dim: usize, mats: &[Mat], v: &[u64]) -> Subspace {
    let mut sub = Subspace::new(dim, p);
    let mut queue: Vec<Vec<u64>> = Vec::new();
    if sub.insert(&SparseVec::from_dense(v)) {
        queue.push(v.to_vec());
    }
    while let Some(w) = queue.pop() {
        for m in mats {
            let img = m.mul_vec(&w);
            let r = sub.reduce(&SparseVec::from_dense(&img));
            if !r.is_zero() {
                let dense = r.to_dense(dim);
                sub.insert(&r);
                queue.push(dense);
            }
        }
    }
    sub
}

/// All lines (one representative each) of the span of `basis`.
fn lines(p: u64, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let nu = basis.len();
    let dim = basis[0].len();
    let mut out = Vec::new();
    // Representatives: first nonzero coefficient equals 1.
    let mut combo = vec![0u64; nu];
    loop {
        // advance odometer
        let mut k = 0;
        while k < nu {
            combo[k] += 1;
            if combo[k] < p {
                break;
            }
            combo[k] = 0;
            k += 1;
        }
        if k == nu {
            break;
        }
        if combo.iter().rev().find(|&&c| c != 0) != Some(&1) {
            // not monic in the last nonzero position; skip duplicates of lines
            continue;
        }
        let mut v = vec![0u64; dim];
        for (c, b) in combo.iter().zip(basis) {
            if *c != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + c * bi) % p;
                }
            }
        }
        out.push(v);
    }
    out
}

/// Decide simplicity. Deterministic for a fixed seed; `budget` bounds the
/// number of random singular-element trials.
pub fn is_simple<L: LieOps>(alg: &L, seed: u64, budget: usize) -> Simplicity {
    let p = alg.p();
    let dim = alg.dim();
    if dim == 0 {
        return Simplicity::NotSimple { witness: vec![] };
    }
    // Derived subalgebra must be everything.
    let basis: Vec<SparseVec> = alg.basis_vecs();
    let mut derived = Subspace::new(alg.amb(), p);
    'outer: for i in 0..dim {
        for j in (i + 1)..dim {
            derived.insert(&alg.bracket(&basis[i], &basis[j]));
            if derived.rank() == dim {
                break 'outer;
            }
        }
    }
    if derived.rank() < dim {
        let witness = if derived.is_trivial() {
            // Abelian (or one-dimensional): any line is an ideal.
            vec![SparseVec::unit(0)]
        } else {
            derived
                .basis()
                .iter()
                .map(|v| alg.express(v).expect("derived lies in L"))
                .collect()
        };
        return Simplicity::NotSimple { witness };
    }
    // MeatAxe on the adjoint module with a small generating set.
    let gen_idx = greedy_generators(alg);
    let mats: Vec<Mat> = gen_idx
        .iter()
        .map(|&i| alg.ad_matrix(&alg.basis_vec(i)))
        .collect();
    let tmats: Vec<Mat> = mats.iter().map(|m| m.transpose()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_lines = 200usize;
    // Factors above this degree are never evaluated at theta (the evaluation
    // costs deg matrix multiplications); a decisive small factor almost
    // always exists for theta = ad of a random element.
    let max_factor_deg = 6usize;
    let mut fallback_kernels: Vec<Vec<Vec<u64>>> = Vec::new();
    fn rand_ad<L: LieOps>(alg: &L, basis: &[SparseVec], rng: &mut ChaCha8Rng) -> Mat {
        let p = alg.p();
        let mut x = SparseVec::zero();
        for b in basis {
            let c = rng.gen_range(0..p);
            if c != 0 {
                x = x.add(&b.scale(c, p), p);
            }
        }
        alg.ad_matrix(&x)
    }
    for trial in 0..budget {
        // Two kinds of random word theta in the enveloping algebra of the
        // generator actions.  ad(x) has the centralizer of x as null space:
        // small for most of the algebras of interest, but every eigenvalue
        // can have uniform multiplicity > 1, in which case no trial of this
        // kind is decisive.  A quadratic word ad(x)ad(y) + ad(z)ad(w) behaves
        // like a generic element of the envelope (the full endomorphism
        // algebra when the module is irreducible), so its nullity is
        // frequently 0 or 1.
        let theta = if trial % 2 == 0 {
            rand_ad(alg, &basis, &mut rng)
        } else {
            let a = rand_ad(alg, &basis, &mut rng);
            let b = rand_ad(alg, &basis, &mut rng);
            let c = rand_ad(alg, &basis, &mut rng);
            let d = rand_ad(alg, &basis, &mut rng);
            a.mul(&b).add(&c.mul(&d))
        };
        if theta.is_zero() {
            continue;
        }
        let kernel = theta.nullspace();
        let nu = kernel.len();
        if nu == 0 || nu == dim {
            continue;
        }
        if line_count(p, nu) <= max_lines {
            // Small null space: Norton's criterion over every null line.
            let mut proper: Option<Subspace> = None;
            for v in lines(p, &kernel) {
                let sub = spin(p, dim, &mats, &v);
                if sub.rank() < dim {
                    proper = Some(sub);
                    break;
                }
            }
            if let Some(sub) = proper {
                let witness = sub.basis().into_iter().cloned().collect();
                return Simplicity::NotSimple { witness };
            }
            // One null line of the transpose decides via the dual module.
            let tkernel = theta.transpose().nullspace();
            return decide_dual(p, dim, &tmats, &tkernel[0]);
        }
        // Large null space: refine through the characteristic structure of
        // theta.  For an irreducible factor f of its (local) minimal
        // polynomial with null(f(theta)) of dimension exactly deg f, the
        // f-primary component is cyclic and a single null vector of f(theta)
        // is decisive: a proper spin is a witness ideal, otherwise one null
        // vector of the transpose decides through the dual module.
        let probe: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
        let minpoly = local_min_poly(&theta, &probe, p);
        let mut factors = distinct_irreducible_factors(&minpoly, p, max_factor_deg, &mut rng);
        factors.sort_by_key(|f| f.len());
        for f in factors {
            let d = f.len() - 1;
            let ftheta = eval_poly_at_matrix(&f, &theta);
            let fkernel = ftheta.nullspace();
            if fkernel.len() != d {
                continue;
            }
            let sub = spin(p, dim, &mats, &fkernel[0]);
            if sub.rank() < dim {
                let witness = sub.basis().into_iter().cloned().collect();
                return Simplicity::NotSimple { witness };
            }
            let tkernel = ftheta.transpose().nullspace();
            return decide_dual(p, dim, &tmats, &tkernel[0]);
        }
        if fallback_kernels.len() < 5 {
            fallback_kernels.push(kernel);
        }
    }
    // Exhaustive fallback: spin every null-space basis vector of the retained
    // singular elements.  This can still exhibit a witness ideal; it cannot
    // certify simplicity.
    for kernel in &fallback_kernels {
        for v in kernel {
            let sub = spin(p, dim, &mats, v);
            if sub.rank() < dim {
                let witness = sub.basis().into_iter().cloned().collect();
                return Simplicity::NotSimple { witness };
            }
        }
    }
    Simplicity::Inconclusive
}

/// Number of lines in an F_p-space of dimension nu, saturating at a large
/// sentinel.
fn line_count(p: u64, nu: usize) -> usize {
    let mut count = 0u64;
    for _ in 0..nu {
        count = count.saturating_mul(p).saturating_add(1); // 1 + p + p^2 + ...
        if count > 1_000_000 {
            return usize::MAX;
        }
    }
    count as usize
}

/// Finish a decisive Norton trial through the dual module: spin one null
/// vector of the transposed word under the transposed generators.  A full
/// spin certifies irreducibility; a proper one yields a witness ideal as its
/// annihilator.
fn decide_dual(p: u64, dim: usize, tmats: &[Mat], w: &[u64]) -> Simplicity {
    let dual_sub = spin(p, dim, tmats, w);
    if dual_sub.rank() == dim {
        return Simplicity::Simple;
    }
    let rows: Vec<Vec<u64>> = dual_sub.basis().iter().map(|f| f.to_dense(dim)).collect();
    let perp = Mat::from_rows(rows, p).nullspace();
    let witness = perp.iter().map(|v| SparseVec::from_dense(v)).collect();
    Simplicity::NotSimple { witness }
}

/// Minimal polynomial of theta on the cyclic subspace generated by v, as
/// monic coefficients low-to-high.  It divides the true minimal polynomial.
fn local_min_poly(theta: &Mat, v: &[u64], p: u64) -> Vec<u64> {
    let dim = v.len();
    let mut span = Subspace::new(dim, p);
    let mut krylov: Vec<Vec<u64>> = Vec::new();
    let mut cur = v.to_vec();
    while span.insert(&SparseVec::from_dense(&cur)) {
        krylov.push(cur.clone());
        cur = theta.mul_vec(&cur);
    }
    // cur = theta^k v is the first dependent power; solve for the relation.
    krylov.push(cur);
    let k = krylov.len() - 1;
    let relations = Mat::from_rows(krylov, p).transpose().nullspace();
    let rel = relations
        .iter()
        .find(|c| c[k] != 0)
        .expect("first dependent Krylov power yields a relation");
    let lead_inv = crate::fp::inv(rel[k], p);
    // Sum rel[i] theta^i v = 0; normalize monic of degree k.
    (0..=k).map(|i| crate::fp::mul(rel[i], lead_inv, p)).collect()
}

/// Horner evaluation of a polynomial (low-to-high coefficients) at a matrix.
fn eval_poly_at_matrix(f: &[u64], m: &Mat) -> Mat {
    let n = m.rows;
    let p = m.p;
    let mut acc = Mat::zeros(n, n, p);
    for &c in f.iter().rev() {
        acc = acc.mul(m);
        if c != 0 {
            acc = acc.add(&Mat::identity(n, p).scale(c));
        }
    }
    acc
}

/// The distinct irreducible factors of f over F_p with degree at most
/// max_deg, each monic with coefficients low-to-high.  Larger factors are
/// discarded.  Randomized (equal-degree splitting) but seeded by the caller.
fn distinct_irreducible_factors(
    f: &[u64],
    p: u64,
    max_deg: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<u64>> {
    let rad = polys::radical(f.to_vec(), p);
    let mut out = Vec::new();
    let mut u = rad;
    // Distinct-degree splitting: h runs over x^(p^d) mod u.
    let mut h = vec![0, 1]; // x
    let mut d = 0usize;
    while polys::deg(&u) > 0 {
        d += 1;
        if d > max_deg || 2 * d > polys::deg(&u) {
            // Whatever remains is irreducible of degree deg(u) > d (or d was
            // capped); keep it only if small enough.
            if polys::deg(&u) <= max_deg {
                out.push(u.clone());
            }
            break;
        }
        h = polys::powmod(&h, p as u128, &u, p);
        let g = polys::gcd(&polys::sub(&h, &[0, 1], p), &u, p);
        if polys::deg(&g) > 0 {
            equal_degree_split(&g, d, p, rng, &mut out);
            u = polys::quot(&u, &g, p);
            h = polys::rem(&h, &u, p);
        }
    }
    out
}

/// Split a product of distinct irreducible factors all of degree d
/// (Cantor-Zassenhaus for odd p; the trace map for p = 2).
fn equal_degree_split(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    if polys::deg(g) == d {
        out.push(polys::monic(g.to_vec(), p));
        return;
    }
    loop {
        let a: Vec<u64> = (0..polys::deg(g)).map(|_| rng.gen_range(0..p)).collect();
        let a = polys::trim(a);
        if polys::deg(&a) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)) mod g.
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = polys::mulmod(&t, &t, g, p);
                acc = polys::add(&acc, &t, p);
            }
            acc
        } else {
            let e = (p as u128).pow(d as u32) / 2; // (p^d - 1) / 2
            let pw = polys::powmod(&a, e, g, p);
            polys::sub(&pw, &[1], p)
        };
        let h = polys::gcd(&b, g, p);
        let dh = if h.is_empty() { 0 } else { polys::deg(&h) };
        if dh > 0 && dh < polys::deg(g) {
            equal_degree_split(&h, d, p, rng, out);
            equal_degree_split(&polys::quot(g, &h, p), d, p, rng, out);
            return;
        }
    }
}

/// Dense univariate polynomial arithmetic over F_p.  Coefficients are stored
/// low-to-high; the empty vector is zero and all results are trimmed.
mod polys {
    use crate::fp;

    pub fn trim(mut f: Vec<u64>) -> Vec<u64> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    /// Degree of a nonzero polynomial.
    pub fn deg(f: &[u64]) -> usize {
        debug_assert!(!f.is_empty());
        f.len() - 1
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] = fp::add(out[i], c, p);
        }
        trim(out)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] = fp::sub(out[i], c, p);
        }
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = fp::add(out[i + j], fp::mul(x, y, p), p);
            }
        }
        trim(out)
    }

    pub fn monic(f: Vec<u64>, p: u64) -> Vec<u64> {
        let f = trim(f);
        match f.last() {
            None | Some(1) => f,
            Some(&lead) => {
                let inv = fp::inv(lead, p);
                f.iter().map(|&c| fp::mul(c, inv, p)).collect()
            }
        }
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![0u64; r.len() - b.len() + 1];
        let lead_inv = fp::inv(*b.last().unwrap(), p);
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = fp::mul(*r.last().unwrap(), lead_inv, p);
            q[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = fp::sub(r[shift + i], fp::mul(c, bc, p), p);
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        (trim(q), r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divmod(a, b, p).1
    }

    pub fn quot(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divmod(a, b, p).0
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(a, p)
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(a: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(f.len().saturating_sub(1));
        for (i, &c) in f.iter().enumerate().skip(1) {
            out.push(fp::mul(c, (i as u64) % p, p));
        }
        trim(out)
    }

    /// Product of the distinct irreducible factors of f (monic).
    pub fn radical(f: Vec<u64>, p: u64) -> Vec<u64> {
        let f = monic(f, p);
        if f.len() <= 1 {
            return f;
        }
        let d = derivative(&f, p);
        if d.is_empty() {
            // f = g(x^p): same distinct factors as its p-th root.
            let root: Vec<u64> = f.iter().step_by(p as usize).copied().collect();
            return radical(root, p);
        }
        let g = gcd(&f, &d, p);
        if deg(&g) == 0 {
            return f; // already squarefree
        }
        // f / gcd(f, f') is squarefree and carries the factors of
        // multiplicity not divisible by p; the rest live in g.
        let u = quot(&f, &g, p);
        let r = radical(g, p);
        let common = gcd(&u, &r, p);
        mul(&u, &quot(&r, &common, p), p)
    }
}
