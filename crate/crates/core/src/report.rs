//! Report assembly shared by the CLI commands: build a family, compute its
//! invariants, and serialize a schema-stable JSON document.
//!
//! Timings are kept out of the JSON payload so that identical job
//! specifications (including the seed) produce byte-identical reports; the
//! text format prints them separately.

use serde::Serialize;

use crate::cartan::{
    build_contact, build_hamiltonian, build_special, build_witt, contact_height_formula,
};
use crate::criterion::{CriterionReport, FamilySpec, Realized};
use crate::deform::{build_h_omega, build_h_second, build_s_phi_l, build_s_phi_tau, OmegaAlpha};
use crate::dpalg::Shape;
use crate::liecore::{p_envelope, LieAlgebra, LieOps, MatrixRep};
use crate::melikian::{melikian_height_closed_form, Melikian};
use crate::simplicity::is_simple;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest dimension for which dense adjoint matrices (p-envelopes,
/// simplicity certificates on the structure-constant form) are computed in
/// reports.
pub const DENSE_LIMIT: usize = 260;

#[derive(Serialize, Clone, Debug)]
pub struct ConditionJson {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct CriterionJson {
    pub mode: String,
    pub recipe: String,
    pub conditions: Vec<ConditionJson>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_expectation: Option<bool>,
}

impl CriterionJson {
    pub fn from_report(r: &CriterionReport) -> Self {
        CriterionJson {
            mode: r.mode.to_string(),
            recipe: r.recipe.clone(),
            conditions: r
                .conditions
                .iter()
                .map(|c| ConditionJson {
                    name: c.name.clone(),
                    passed: c.passed,
                    witness: c.witness.clone(),
                })
                .collect(),
            passed: r.passed,
            expected: None,
            matches_expectation: None,
        }
    }
}

/// The report document; field order is the serialization order.
#[derive(Serialize, Clone, Debug)]
pub struct Report {
    pub tool_version: String,
    pub seed: u64,
    pub command: String,
    pub family: String,
    pub shape: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<i64>,
    /// Per-degree dimensions (graded families) or per-level dimensions of
    /// the associated graded algebra (filtered families).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layer_dims: Option<Vec<(i64, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplicity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_envelope_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<CriterionJson>,
    pub flags: Vec<String>,
    #[serde(skip)]
    pub timings_ms: Vec<(String, u128)>,
}

impl Report {
    pub fn new(command: &str, spec: &FamilySpec, seed: u64) -> Self {
        Report {
            tool_version: TOOL_VERSION.into(),
            seed,
            command: command.into(),
            family: spec.family_tag().into(),
            shape: spec.shape_desc(),
            dim: 0,
            depth: None,
            height: None,
            layer_dims: None,
            simplicity: None,
            p_envelope_dim: None,
            criterion: None,
            flags: Vec::new(),
            timings_ms: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(&format!("{k:<16} {v}\n"));
        };
        line("family", format!("{} [{}]", self.family, self.shape));
        line("dim", self.dim.to_string());
        if let (Some(s), Some(h)) = (self.depth, self.height) {
            line("depth/height", format!("s = {s}, h = {h}"));
        }
        if let Some(layers) = &self.layer_dims {
            let parts: Vec<String> =
                layers.iter().map(|(d, n)| format!("{d}:{n}")).collect();
            line("layer dims", parts.join(" "));
        }
        if let Some(s) = &self.simplicity {
            line("simplicity", s.clone());
        }
        if let Some(d) = self.p_envelope_dim {
            line("p-envelope dim", d.to_string());
        }
        if let Some(c) = &self.criterion {
            line("criterion", format!("{} mode, recipe: {}", c.mode, c.recipe));
            for cond in &c.conditions {
                let verdict = if cond.passed { "pass" } else { "FAIL" };
                let extra = cond
                    .witness
                    .as_ref()
                    .map(|w| format!(" ({w})"))
                    .unwrap_or_default();
                line(&format!("  ({})", cond.name), format!("{verdict}{extra}"));
            }
            line("criterion pass", c.passed.to_string());
            if let (Some(e), Some(m)) = (&c.expected, c.matches_expectation) {
                line("expected", format!("{e} -> {}", if m { "as expected" } else { "MISMATCH" }));
            }
        }
        for f in &self.flags {
            line("flag", f.clone());
        }
        for (k, ms) in &self.timings_ms {
            line("timing", format!("{k}: {ms} ms"));
        }
        line("seed", self.seed.to_string());
        line("version", self.tool_version.clone());
        out
    }
}

/// Construct the family in the realization used for invariants (the Witt
/// realization for all subalgebras of W, the structure-constant form for
/// Melikian).
pub fn build_algebra(spec: &FamilySpec, level: Option<usize>) -> Realized {
    match spec {
        FamilySpec::W { p, n } => Realized::Witt(build_witt(&Shape::new(*p, n))),
        FamilySpec::S { p, n } => {
            Realized::Witt(build_special(&Shape::new(*p, n), level.unwrap_or(1)))
        }
        FamilySpec::H { p, n } => {
            Realized::Witt(build_hamiltonian(&Shape::new(*p, n), level.unwrap_or(2)))
        }
        FamilySpec::K { p, n } => Realized::Witt(build_contact(&Shape::new(*p, n))),
        FamilySpec::M { n1, n2 } => Realized::Sc(Melikian::new(*n1, *n2).to_lie_algebra()),
        FamilySpec::STau { p, n } => Realized::Witt(build_s_phi_tau(&Shape::new(*p, n))),
        FamilySpec::SPhi { p, n, l } => Realized::Witt(build_s_phi_l(&Shape::new(*p, n), *l)),
        FamilySpec::HOmega { p, n, alpha } => {
            Realized::Witt(build_h_omega(&OmegaAlpha::new(&Shape::new(*p, n), alpha)))
        }
        FamilySpec::HSecond { p, n, l } => {
            Realized::Witt(build_h_second(&Shape::new(*p, n), *l))
        }
    }
}

/// Canonical cache key, e.g. `S_p5_n111_level1` or `SPhi_p5_n111_l0`.
pub fn cache_key(spec: &FamilySpec, level: Option<usize>) -> String {
    fn nk(n: &[u32]) -> String {
        n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
    }
    let base = match spec {
        FamilySpec::W { p, n } => format!("W_p{p}_n{}", nk(n)),
        FamilySpec::S { p, n } => format!("S_p{p}_n{}", nk(n)),
        FamilySpec::H { p, n } => format!("H_p{p}_n{}", nk(n)),
        FamilySpec::K { p, n } => format!("K_p{p}_n{}", nk(n)),
        FamilySpec::M { n1, n2 } => format!("M_n{n1}{n2}"),
        FamilySpec::STau { p, n } => format!("STau_p{p}_n{}", nk(n)),
        FamilySpec::SPhi { p, n, l } => format!("SPhi_p{p}_n{}_l{l}", nk(n)),
        FamilySpec::HOmega { p, n, alpha } => {
            let a: Vec<String> = alpha
                .iter()
                .map(|((i, j), c)| format!("{i}{j}x{c}"))
                .collect();
            format!("H1st_p{p}_n{}_alpha{}", nk(n), a.join("_"))
        }
        FamilySpec::HSecond { p, n, l } => format!("H2nd_p{p}_n{}_l{l}", nk(n)),
    };
    match level {
        Some(lv) => format!("{base}_level{lv}"),
        None => base,
    }
}

/// Depth, height and per-degree dims.  Graded realizations read their
/// grading; filtered ones use the induced filtration (layer dimensions are
/// the successive quotients).
pub fn invariants(alg: &Realized) -> (i64, i64, Vec<(i64, usize)>) {
    let degrees: Option<Vec<i64>> = match alg {
        Realized::Witt(w) => w.degrees.clone(),
        Realized::Sc(a) => a.grading.clone(),
        Realized::Func(_) => None,
    };
    if let Some(degs) = degrees {
        let s = -degs.iter().min().copied().unwrap();
        let h = degs.iter().max().copied().unwrap();
        let mut layers = Vec::new();
        for d in -s..=h {
            let count = degs.iter().filter(|&&g| g == d).count();
            if count > 0 {
                layers.push((d, count));
            }
        }
        return (s, h, layers);
    }
    let Realized::Witt(w) = alg else {
        panic!("filtered invariants need the Witt realization");
    };
    let (layers, s, h) = w.filtration();
    let mut dims = Vec::new();
    for (k, (j, layer)) in layers.iter().enumerate() {
        let next_rank = layers.get(k + 1).map(|(_, l)| l.rank()).unwrap_or(0);
        let d = layer.rank() - next_rank;
        if d > 0 {
            dims.push((*j, d));
        }
    }
    (s, h, dims)
}

/// Family-specific caveat flags for reports.
pub fn family_flags(spec: &FamilySpec, height: Option<i64>) -> Vec<String> {
    let mut flags = Vec::new();
    match spec {
        FamilySpec::M { n1, n2 } => {
            let cf = melikian_height_closed_form(*n1, *n2);
            if let Some(h) = height {
                if cf != h {
                    flags.push(format!(
                        "melikian-height-closed-form-mismatch: closed form {cf} vs computed {h}"
                    ));
                }
            }
        }
        FamilySpec::K { p, n } => {
            let formula = contact_height_formula(&Shape::new(*p, n));
            if let Some(h) = height {
                if formula == h {
                    flags.push(format!("contact-height-formula-agrees: {formula}"));
                } else {
                    flags.push(format!(
                        "contact-height-formula-mismatch: formula {formula} vs computed {h}"
                    ));
                }
            }
        }
        _ => {}
    }
    flags
}

/// The structure-constant form of a realization (used for caching and the
/// dense computations).
pub fn to_lie_algebra(alg: &Realized) -> Result<LieAlgebra, String> {
    match alg {
        Realized::Witt(w) => w.to_lie_algebra(),
        Realized::Sc(a) => Ok(a.clone()),
        Realized::Func(_) => Err("function realization has no label set".into()),
    }
}

/// Simplicity verdict string for a realization.
pub fn simplicity_verdict(alg: &Realized, seed: u64) -> String {
    is_simple(alg, seed, 200).verdict().to_string()
}

/// Dimension of the p-envelope in the adjoint representation, for
/// moderate-sized algebras.
pub fn p_envelope_dim(alg: &Realized) -> Option<usize> {
    if alg.dim() > DENSE_LIMIT {
        return None;
    }
    let sc = to_lie_algebra(alg).ok()?;
    let rep = MatrixRep::adjoint(&sc);
    Some(p_envelope(&rep).len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_report_fields() {
        let spec = FamilySpec::W { p: 5, n: vec![1] };
        let alg = build_algebra(&spec, None);
        let (s, h, layers) = invariants(&alg);
        assert_eq!((s, h), (1, 3));
        assert_eq!(layers, vec![(-1, 1), (0, 1), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(p_envelope_dim(&alg), Some(5));
        assert_eq!(simplicity_verdict(&alg, 42), "Simple");
        assert_eq!(cache_key(&spec, None), "W_p5_n1");
    }

    #[test]
    fn filtered_invariants_match_frozen_values() {
        let spec = FamilySpec::STau { p: 5, n: vec![1, 1, 1] };
        let alg = build_algebra(&spec, None);
        let (s, h, layers) = invariants(&alg);
        assert_eq!((s, h), (1, 10));
        assert_eq!(layers.iter().map(|&(_, d)| d).sum::<usize>(), 248);
        assert_eq!(layers.first(), Some(&(-1, 3)));
    }

    #[test]
    fn report_json_is_deterministic() {
        let spec = FamilySpec::M { n1: 1, n2: 1 };
        let mut report = Report::new("construct", &spec, 7);
        let alg = build_algebra(&spec, None);
        report.dim = alg.dim();
        let (s, h, layers) = invariants(&alg);
        report.depth = Some(s);
        report.height = Some(h);
        report.layer_dims = Some(layers);
        report.flags = family_flags(&spec, Some(h));
        assert!(report
            .flags
            .iter()
            .any(|f| f.contains("melikian-height-closed-form-mismatch")));
        let a = report.to_json();
        report.timings_ms.push(("construct".into(), 123));
        let b = report.to_json();
        assert_eq!(a, b, "timings must not influence the JSON payload");
        assert!(report.to_text().contains("construct: 123 ms"));
    }
}
