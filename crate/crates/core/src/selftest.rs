//! The self-test grid: ten property groups covering dimensions, gradings,
//! Jacobi identities, simplicity verdicts, the valuation calculus, the
//! truncated exponential maps, p-envelopes, the criterion grid and the two
//! counterexamples.  Each row is deterministic for a fixed seed, and the
//! serialized report contains no timing data, so identical (seed, version)
//! inputs produce byte-identical JSON.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cartan::{build_witt, d_valuation};
use crate::criterion::{reproduce_counterexample, verify, FamilySpec};
use crate::dpalg::{witt_bracket, Shape};
use crate::liecore::{p_envelope, rumynin_algebra, sl, LieOps, MatrixRep};
use crate::report::{build_algebra, invariants, to_lie_algebra, TOOL_VERSION};
use crate::simplicity::{is_simple, Simplicity};
use crate::sparse::SparseVec;
use crate::wittexp::{
    artin_hasse_is_p_integral, artin_hasse_mod_p, check_fx_homomorphism, exp_map_dual,
    jordan_block,
};

#[derive(Serialize, Clone, Debug)]
pub struct SelfTestRow {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct SelfTestReport {
    pub tool_version: String,
    pub seed: u64,
    pub rows: Vec<SelfTestRow>,
    pub passed: bool,
}

impl SelfTestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("selftest serialization cannot fail")
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let verdict = if row.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("[{verdict}] {}: {}\n", row.id, row.description));
            for d in &row.details {
                out.push_str(&format!("       - {d}\n"));
            }
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.passed { "pass" } else { "FAIL" }
        ));
        out
    }
}

struct RowBuilder {
    passed: bool,
    details: Vec<String>,
}

impl RowBuilder {
    fn new() -> Self {
        RowBuilder { passed: true, details: Vec::new() }
    }

    fn check(&mut self, label: &str, ok: bool) {
        if !ok {
            self.passed = false;
            self.details.push(format!("FAILED: {label}"));
        }
    }

    fn note(&mut self, line: String) {
        self.details.push(line);
    }

    fn into_row(self, id: &str, description: &str) -> SelfTestRow {
        SelfTestRow {
            id: id.into(),
            description: description.into(),
            passed: self.passed,
            details: self.details,
        }
    }
}

/// The (p, n) grid shared by the dimension and Jacobi rows.
fn witt_grid() -> Vec<(u64, Vec<u32>)> {
    let mut grid = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for n in [vec![1u32], vec![2], vec![1, 1]] {
            grid.push((p, n));
        }
    }
    grid
}

/// The named algebras of the grid beyond plain Witt algebras.
fn named_specs() -> Vec<FamilySpec> {
    vec![
        FamilySpec::S { p: 5, n: vec![1, 1, 1] },
        FamilySpec::H { p: 5, n: vec![1, 1] },
        FamilySpec::K { p: 5, n: vec![1, 1, 1] },
        FamilySpec::K { p: 3, n: vec![1, 1, 1] },
        FamilySpec::M { n1: 1, n2: 1 },
    ]
}

fn row_dimensions() -> SelfTestRow {
    let mut b = RowBuilder::new();
    for (p, n) in witt_grid() {
        let shape = Shape::new(p, &n);
        let expect_a = p.pow(n.iter().sum::<u32>()) as usize;
        b.check(
            &format!("dim A({};{:?}) at p={p}", n.len(), n),
            shape.dim_a() == expect_a,
        );
        let w = build_witt(&shape);
        b.check(
            &format!("dim W({};{:?}) at p={p}", n.len(), n),
            w.dim() == n.len() * expect_a,
        );
    }
    for (spec, expect) in [
        (FamilySpec::S { p: 5, n: vec![1, 1, 1] }, 248usize),
        (FamilySpec::H { p: 5, n: vec![1, 1] }, 23),
        (FamilySpec::K { p: 5, n: vec![1, 1, 1] }, 125),
        (FamilySpec::K { p: 3, n: vec![1, 1, 1] }, 26),
        (FamilySpec::M { n1: 1, n2: 1 }, 125),
    ] {
        let dim = build_algebra(&spec, None).dim();
        b.check(
            &format!("dim {} {} = {expect}, got {dim}", spec.family_tag(), spec.shape_desc()),
            dim == expect,
        );
    }
    b.into_row("1-dimensions", "exact dimensions across the family grid")
}

fn row_gradings() -> SelfTestRow {
    let mut b = RowBuilder::new();
    for (spec, s_expect, h_expect) in [
        (FamilySpec::W { p: 5, n: vec![1] }, 1i64, 3i64),
        (FamilySpec::S { p: 5, n: vec![1, 1, 1] }, 1, 10),
        (FamilySpec::H { p: 5, n: vec![1, 1] }, 1, 5),
        (FamilySpec::K { p: 5, n: vec![1, 1, 1] }, 2, 14),
        (FamilySpec::M { n1: 1, n2: 1 }, 3, 23),
    ] {
        let alg = build_algebra(&spec, None);
        let (s, h, _) = invariants(&alg);
        let tag = format!("{} {}", spec.family_tag(), spec.shape_desc());
        b.check(&format!("{tag} (s,h) = ({s_expect},{h_expect}), got ({s},{h})"),
            (s, h) == (s_expect, h_expect));
        let sc = to_lie_algebra(&alg).expect("grid families have labels");
        match sc.verify_grading() {
            Ok(info) => b.check(
                &format!("{tag} grading info agrees"),
                (info.depth, info.height) == (s_expect, h_expect),
            ),
            Err(e) => b.check(&format!("{tag} grading valid ({e})"), false),
        }
        for flag in crate::report::family_flags(&spec, Some(h)) {
            b.note(flag);
        }
    }
    b.into_row("2-gradings", "graded structure and frozen (depth, height) pairs")
}

fn row_jacobi(seed: u64) -> SelfTestRow {
    let mut b = RowBuilder::new();
    for (p, n) in witt_grid() {
        let alg = build_algebra(&FamilySpec::W { p, n: n.clone() }, None);
        if alg.dim() <= 130 {
            let sc = to_lie_algebra(&alg).unwrap();
            b.check(
                &format!("Jacobi exhaustive on W p={p} n={n:?}"),
                sc.validate_jacobi(130, 0, seed).is_ok(),
            );
        }
    }
    for spec in named_specs() {
        let alg = build_algebra(&spec, None);
        let sc = to_lie_algebra(&alg).unwrap();
        let tag = format!("{} {}", spec.family_tag(), spec.shape_desc());
        if sc.dim <= 130 {
            b.check(&format!("Jacobi exhaustive on {tag}"), sc.validate_jacobi(130, 0, seed).is_ok());
        } else {
            b.check(
                &format!("Jacobi 10^4 random triples on {tag}"),
                sc.validate_jacobi(0, 10_000, seed).is_ok(),
            );
        }
    }
    b.into_row("3-jacobi", "Jacobi identity: exhaustive below dim 130, sampled above")
}

fn row_simplicity(seed: u64) -> SelfTestRow {
    let mut b = RowBuilder::new();
    let simple_specs: Vec<FamilySpec> = vec![
        FamilySpec::W { p: 3, n: vec![1] },
        FamilySpec::W { p: 5, n: vec![1] },
        FamilySpec::W { p: 7, n: vec![1] },
        FamilySpec::S { p: 5, n: vec![1, 1, 1] },
        FamilySpec::H { p: 5, n: vec![1, 1] },
        FamilySpec::K { p: 5, n: vec![1, 1, 1] },
        FamilySpec::K { p: 3, n: vec![1, 1, 1] },
        FamilySpec::STau { p: 5, n: vec![1, 1, 1] },
        FamilySpec::SPhi { p: 5, n: vec![1, 1, 1], l: 0 },
        FamilySpec::HOmega { p: 5, n: vec![1, 1], alpha: vec![((0, 1), 1)] },
        FamilySpec::HSecond { p: 5, n: vec![1, 1], l: 0 },
        FamilySpec::M { n1: 1, n2: 1 },
    ];
    for spec in simple_specs {
        let alg = build_algebra(&spec, None);
        let verdict = is_simple(&alg, seed, 200);
        b.check(
            &format!("{} {} Simple, got {}", spec.family_tag(), spec.shape_desc(), verdict.verdict()),
            verdict == Simplicity::Simple,
        );
    }
    // Negative cases with witnesses.
    let w2 = to_lie_algebra(&build_algebra(&FamilySpec::W { p: 2, n: vec![1] }, None)).unwrap();
    match is_simple(&w2, seed, 200) {
        Simplicity::NotSimple { witness } => {
            // The witness ideal must contain d (basis index 0, lowest degree).
            let span = crate::subspace::Subspace::from_vectors(w2.dim, 2, witness);
            b.check(
                "W(1;1) p=2 witness ideal contains the translation",
                span.contains(&SparseVec::unit(0)),
            );
        }
        other => b.check(&format!("W(1;1) p=2 NotSimple, got {}", other.verdict()), false),
    }
    let (sl3, _) = sl(3, 3);
    match is_simple(&sl3, seed, 200) {
        Simplicity::NotSimple { witness } => {
            let span = crate::subspace::Subspace::from_vectors(sl3.dim, 3, witness);
            let center = sl3.center();
            b.check(
                "sl_3 p=3 witness ideal is the center",
                span.rank() == 1 && center.basis().iter().all(|v| span.contains(v)),
            );
        }
        other => b.check(&format!("sl_3 p=3 NotSimple, got {}", other.verdict()), false),
    }
    b.into_row("4-simplicity", "simplicity verdicts with witnesses for the non-simple cases")
}

fn check_valuation_pair(
    b: &mut RowBuilder,
    shape: &Shape,
    wbasis: &[SparseVec],
    d: &SparseVec,
    e: &SparseVec,
    tag: &str,
) {
    let p = shape.p;
    let sum = d.add(e, p);
    let br = witt_bracket(shape, d, e);
    for i in 0..shape.m() {
        let pn = shape.bound(i) as i64;
        let vd = d_valuation(shape, i, d);
        let ve = d_valuation(shape, i, e);
        // (2) subadditivity under addition.
        if d_valuation(shape, i, &sum) < vd.min(ve) {
            b.check(&format!("{tag}: d_{i}(D+E) >= min"), false);
        }
        // (3) bracket estimate.
        if d_valuation(shape, i, &br) < pn.min(vd + ve) {
            b.check(&format!("{tag}: d_{i}([D,E]) >= min(p^n, d+d)"), false);
        }
        // (4) sandwich vanishing.
        if vd + ve - 1 >= pn {
            let ok = wbasis
                .iter()
                .all(|w| witt_bracket(shape, d, &witt_bracket(shape, e, w)).is_zero());
            if !ok {
                b.check(&format!("{tag}: ad(D)ad(E) = 0 when d+d-1 >= p^n"), false);
            }
        }
    }
}

fn row_valuations(seed: u64) -> SelfTestRow {
    let mut b = RowBuilder::new();
    for (p, n) in [(5u64, vec![1u32]), (3, vec![2])] {
        let shape = Shape::new(p, &n);
        let w = build_witt(&shape);
        let basis = w.basis_vecs();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                check_valuation_pair(
                    &mut b,
                    &shape,
                    &basis,
                    &basis[i],
                    &basis[j],
                    &format!("W p={p} n={n:?} pair ({i},{j})"),
                );
            }
        }
    }
    let shape = Shape::new(5, &[1, 1]);
    let basis = build_witt(&shape).basis_vecs();
    let dim_w = shape.dim_w();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_d1ca);
    for t in 0..1000 {
        let rand_vec = |rng: &mut ChaCha8Rng| {
            SparseVec::from_dense(&(0..dim_w).map(|_| rng.gen_range(0..5u64)).collect::<Vec<_>>())
        };
        let d = rand_vec(&mut rng);
        let e = rand_vec(&mut rng);
        check_valuation_pair(&mut b, &shape, &basis, &d, &e, &format!("W(2;(1,1)) random pair {t}"));
    }
    b.into_row(
        "5-valuations",
        "the d_i calculus: subadditivity, bracket bound, sandwich vanishing",
    )
}

fn row_artin_hasse() -> SelfTestRow {
    let mut b = RowBuilder::new();
    for p in [2u64, 3, 5, 7] {
        b.check(
            &format!("coefficients p-integral through degree 64 at p={p}"),
            artin_hasse_is_p_integral(p, 64),
        );
    }
    b.check("mod-2 prefix", artin_hasse_mod_p(2, 4) == vec![1, 1, 1, 0, 0]);
    b.check("mod-3 prefix", artin_hasse_mod_p(3, 3) == vec![1, 1, 2, 2]);
    b.into_row("6-artin-hasse", "p-integrality and mod-p prefixes of the exponential")
}

fn row_exponential_maps() -> SelfTestRow {
    let mut b = RowBuilder::new();
    let grid: [(u64, usize, usize); 4] = [(2, 1, 2), (2, 2, 4), (3, 1, 3), (5, 1, 5)];
    for (p, n, k) in grid {
        let x = jordan_block(k, p);
        b.check(
            &format!("f_X homomorphism exhaustive at p={p}, n={n}, J{k}"),
            check_fx_homomorphism(p, n, &x),
        );
        // First-order check: the differential in slot i is X^{p^i}.
        for i in 0..n {
            let mut a = vec![(0u64, 0u64); n];
            a[i] = (0, 1);
            let f = exp_map_dual(p, &x, &a);
            let expect = x.pow(p.pow(i as u32));
            b.check(
                &format!("df in slot {i} equals X^(p^{i}) at p={p}, J{k}"),
                f.re == crate::mat::Mat::identity(k, p) && f.d == expect,
            );
        }
    }
    b.into_row("7-exponentials", "truncated exponential one-parameter subgroups")
}

fn row_p_envelopes() -> SelfTestRow {
    let mut b = RowBuilder::new();
    for (spec, expect) in [
        (FamilySpec::W { p: 5, n: vec![1] }, 5usize),
        (FamilySpec::W { p: 5, n: vec![2] }, 26),
    ] {
        let alg = build_algebra(&spec, None);
        let sc = to_lie_algebra(&alg).unwrap();
        let rep = MatrixRep::adjoint(&sc);
        let dim = p_envelope(&rep).len();
        b.check(
            &format!("{} {} p-envelope dim {expect}, got {dim}", spec.family_tag(), spec.shape_desc()),
            dim == expect,
        );
    }
    // The p = 2 example: its adjoint p-envelope honestly has dimension 5
    // (ad(e)^2 and ad(f)^2 are new); the value 3 sometimes quoted for it
    // counts only ad(L) itself.
    let rum = rumynin_algebra();
    let dim = p_envelope(&MatrixRep::adjoint(&rum)).len();
    b.check(&format!("rumynin p-envelope dim 5, got {dim}"), dim == 5);
    b.note("rumynin envelope: honest dimension 5; the quoted value 3 is ad(L) alone".into());
    // Generation property on K(3;1) at p=5: the recipe subspaces generate.
    let k_report = verify(&FamilySpec::K { p: 5, n: vec![1, 1, 1] });
    b.check(
        "K(3;1) p=5 recipe generates (condition I)",
        k_report.condition("I").map(|c| c.passed) == Some(true),
    );
    b.into_row("8-p-envelopes", "restricted envelope dimensions and the generation property")
}

fn row_criterion_grid() -> SelfTestRow {
    let mut b = RowBuilder::new();
    let pass_specs: Vec<FamilySpec> = vec![
        FamilySpec::W { p: 5, n: vec![1] },
        FamilySpec::W { p: 5, n: vec![2] },
        FamilySpec::W { p: 5, n: vec![1, 1] },
        FamilySpec::S { p: 5, n: vec![1, 1, 1] },
        FamilySpec::H { p: 5, n: vec![1, 1] },
        FamilySpec::H { p: 5, n: vec![1, 1, 1, 1] },
        FamilySpec::M { n1: 1, n2: 1 },
        FamilySpec::K { p: 5, n: vec![1, 1, 1] },
        FamilySpec::STau { p: 5, n: vec![1, 1, 1] },
        FamilySpec::SPhi { p: 5, n: vec![1, 1, 1], l: 0 },
        FamilySpec::HOmega { p: 5, n: vec![2, 1, 1, 1], alpha: vec![] },
        FamilySpec::HOmega { p: 5, n: vec![2, 1, 1, 1], alpha: vec![((0, 1), 1), ((2, 3), 1)] },
        FamilySpec::HSecond { p: 5, n: vec![1, 1, 1, 1], l: 0 },
    ];
    for spec in pass_specs {
        let report = verify(&spec);
        b.check(
            &format!(
                "{} {} {} mode passes, failures {:?}",
                report.family, report.shape, report.mode, report.failed_conditions()
            ),
            report.passed,
        );
    }
    // Exclusion 1: W(1;1) at p = 3 fails exactly (G III).
    let w3 = verify(&FamilySpec::W { p: 3, n: vec![1] });
    b.check(
        &format!("W(1;1) p=3 fails exactly (G III), failures {:?}", w3.failed_conditions()),
        !w3.passed && w3.failed_conditions() == vec!["G III"],
    );
    // Exclusion 2: H(4;1;omega(alpha)) at p = 5 lies outside the valuation
    // estimate behind condition (III).  The directly computed squares
    // nevertheless vanish, so the honest verdict is a flagged pass.
    let h1 = verify(&FamilySpec::HOmega {
        p: 5,
        n: vec![1, 1, 1, 1],
        alpha: vec![((0, 1), 1), ((2, 3), 1)],
    });
    b.check(
        &format!(
            "H1st p=5 n=1 flagged outside the (III) estimate, flags {:?}",
            h1.flags
        ),
        h1.flags.iter().any(|f| f.contains("h1st-p5-n1")),
    );
    b.check(
        "H1st p=5 n=1 computed squares vanish (honest pass)",
        h1.passed,
    );
    b.note(
        "H1st at p=5, n=1: the family criterion's estimate cannot certify (III); \
         direct computation shows the squares vanish, so the verdict is pass + flag"
            .into(),
    );
    b.into_row("9-criterion", "generator recipes across the family grid, with the two exclusions")
}

fn row_counterexamples() -> SelfTestRow {
    let mut b = RowBuilder::new();
    for name in ["rumynin", "contact_p3"] {
        match reproduce_counterexample(name) {
            Ok(report) => {
                b.check(&format!("{name} reproduced"), report.reproduced);
                for c in report.checks.iter().filter(|c| !c.passed) {
                    b.note(format!("{name}: failed {}", c.name));
                }
            }
            Err(e) => b.check(&format!("{name}: {e}"), false),
        }
    }
    b.into_row("10-counterexamples", "both stock counterexamples replay exactly")
}

/// Run the whole grid.  Rows are executed in a fixed order, and all
/// randomized parts derive from `seed`.
pub fn run(seed: u64) -> SelfTestReport {
    let rows = vec![
        row_dimensions(),
        row_gradings(),
        row_jacobi(seed),
        row_simplicity(seed),
        row_valuations(seed),
        row_artin_hasse(),
        row_exponential_maps(),
        row_p_envelopes(),
        row_criterion_grid(),
        row_counterexamples(),
    ];
    let passed = rows.iter().all(|r| r.passed);
    SelfTestReport { tool_version: TOOL_VERSION.into(), seed, rows, passed }
}
