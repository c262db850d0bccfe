//! Command-line front end: construct algebras, compute invariants, run the
//! generator-criterion verifications and counterexample replays, and emit
//! deterministic JSON or text reports.
//!
//! Exit codes: 0 success (or an outcome matching the built-in expectation
//! grid), 1 verification mismatch, 2 usage error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cartanlab::cache;
use cartanlab::criterion::{reproduce_counterexample, verify, FamilySpec};
use cartanlab::report::{
    build_algebra, cache_key, family_flags, invariants, p_envelope_dim, simplicity_verdict,
    to_lie_algebra, CriterionJson, Report,
};
use cartanlab::selftest;

#[derive(Parser)]
#[command(name = "cartanlab", version, about = "Exact-arithmetic engine for modular Lie algebras of Cartan and Melikian type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionMode {
    Theorem,
    Corollary,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family tag: W, S, H, K, M, STau, SPhi, H1st, H2nd.
    #[arg(long)]
    family: String,
    /// The prime (ignored for M, which lives at p = 5).
    #[arg(long)]
    p: Option<u64>,
    /// Number of variables; optional when implied by the length of --n.
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated shape exponents, e.g. 1,1,2.  A single value with
    /// --m given is repeated m times.
    #[arg(long)]
    n: Option<String>,
    /// 0-based distinguished index for SPhi / H2nd.
    #[arg(long)]
    l: Option<usize>,
    /// Upper-triangular alpha entries for H1st as i,j,c triples separated by
    /// semicolons, e.g. "0,1,1;2,3,1".  Omit for alpha = 0.
    #[arg(long)]
    alpha: Option<String>,
    /// Derived-series level override where a family supports one.
    #[arg(long)]
    level: Option<usize>,
}

#[derive(Args)]
struct OutputArgs {
    /// Seed for the randomized certifications embedded in reports.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cache directory (else CARTANLAB_CACHE, else ./cache).
    #[arg(long)]
    cache_dir: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra, write its structure-constant dump to the cache and
    /// print a report.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print dimension, depth, height and layer dimensions.
    Invariants {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide simplicity (seeded randomized certification).
    Simplicity {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the family's generator criterion and compare against the built-in
    /// expectation grid.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Which criterion to run; defaults to the family's standard mode.
        #[arg(long, value_enum)]
        criterion: Option<CriterionMode>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Replay a stock counterexample: rumynin or contact_p3.
    Counterexample {
        name: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full self-test grid and print a summary.
    Selftest {
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_shape(args: &FamilyArgs) -> Result<Vec<u32>, String> {
    let text = args.n.as_deref().ok_or("--n is required for this family")?;
    let mut n: Vec<u32> = Vec::new();
    for part in text.split(',') {
        let v: u32 = part
            .trim()
            .parse()
            .map_err(|_| format!("invalid shape entry '{part}' in --n"))?;
        if v == 0 {
            return Err("shape entries in --n must be positive".into());
        }
        n.push(v);
    }
    if let Some(m) = args.m {
        if n.len() == 1 && m > 1 {
            n = vec![n[0]; m];
        } else if n.len() != m {
            return Err(format!("--m {} conflicts with --n of length {}", m, n.len()));
        }
    }
    Ok(n)
}

fn parse_alpha(text: &str) -> Result<Vec<((usize, usize), u64)>, String> {
    let mut out = Vec::new();
    for entry in text.split(';') {
        let parts: Vec<&str> = entry.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("alpha entry '{entry}' is not an i,j,c triple"));
        }
        let i: usize = parts[0].parse().map_err(|_| format!("bad index in '{entry}'"))?;
        let j: usize = parts[1].parse().map_err(|_| format!("bad index in '{entry}'"))?;
        let c: u64 = parts[2].parse().map_err(|_| format!("bad value in '{entry}'"))?;
        if i >= j {
            return Err(format!("alpha entry '{entry}' must have i < j (upper triangle)"));
        }
        out.push(((i, j), c));
    }
    Ok(out)
}

fn parse_spec(args: &FamilyArgs) -> Result<FamilySpec, String> {
    let need_p = || args.p.ok_or_else(|| "--p is required for this family".to_string());
    let spec = match args.family.as_str() {
        "W" => FamilySpec::W { p: need_p()?, n: parse_shape(args)? },
        "S" => FamilySpec::S { p: need_p()?, n: parse_shape(args)? },
        "H" => FamilySpec::H { p: need_p()?, n: parse_shape(args)? },
        "K" => FamilySpec::K { p: need_p()?, n: parse_shape(args)? },
        "M" => {
            if let Some(p) = args.p {
                if p != 5 {
                    return Err("family M exists only at p = 5".into());
                }
            }
            let n = parse_shape(args)?;
            if n.len() != 2 {
                return Err("family M takes --n n1,n2".into());
            }
            FamilySpec::M { n1: n[0], n2: n[1] }
        }
        "STau" => FamilySpec::STau { p: need_p()?, n: parse_shape(args)? },
        "SPhi" => FamilySpec::SPhi {
            p: need_p()?,
            n: parse_shape(args)?,
            l: args.l.ok_or("--l is required for SPhi")?,
        },
        "H1st" => FamilySpec::HOmega {
            p: need_p()?,
            n: parse_shape(args)?,
            alpha: match args.alpha.as_deref() {
                Some(text) => parse_alpha(text)?,
                None => Vec::new(),
            },
        },
        "H2nd" => FamilySpec::HSecond {
            p: need_p()?,
            n: parse_shape(args)?,
            l: args.l.ok_or("--l is required for H2nd")?,
        },
        other => return Err(format!("unknown family '{other}' (expected W, S, H, K, M, STau, SPhi, H1st, H2nd)")),
    };
    validate_spec(&spec)?;
    Ok(spec)
}

fn validate_spec(spec: &FamilySpec) -> Result<(), String> {
    let prime_ok = |p: u64| cartanlab::fp::is_prime(p);
    match spec {
        FamilySpec::W { p, n } => {
            if !prime_ok(*p) {
                return Err(format!("{p} is not prime"));
            }
            if n.is_empty() {
                return Err("W needs at least one variable".into());
            }
        }
        FamilySpec::S { p, n } | FamilySpec::STau { p, n } => {
            if !prime_ok(*p) {
                return Err(format!("{p} is not prime"));
            }
            if n.len() < 2 {
                return Err("S-type families need m >= 2".into());
            }
        }
        FamilySpec::SPhi { p, n, l } => {
            if !prime_ok(*p) {
                return Err(format!("{p} is not prime"));
            }
            if n.len() < 2 {
                return Err("S-type families need m >= 2".into());
            }
            if *l >= n.len() {
                return Err(format!("--l {l} out of range for m = {}", n.len()));
            }
        }
        FamilySpec::H { p, n } | FamilySpec::HOmega { p, n, .. } => {
            if !prime_ok(*p) {
                return Err(format!("{p} is not prime"));
            }
            if n.len() < 2 || n.len() % 2 != 0 {
                return Err("H-type families need even m = 2r >= 2".into());
            }
        }
        FamilySpec::HSecond { p, n, l } => {
            if !prime_ok(*p) {
                return Err(format!("{p} is not prime"));
            }
            if n.len() < 2 || n.len() % 2 != 0 {
                return Err("H-type families need even m = 2r >= 2".into());
            }
            if *l >= n.len() / 2 {
                return Err(format!("--l {l} out of range for r = {}", n.len() / 2));
            }
        }
        FamilySpec::K { p, n } => {
            if !prime_ok(*p) {
                return Err(format!("{p} is not prime"));
            }
            if *p == 2 {
                return Err("K requires p > 2".into());
            }
            if n.len() < 3 || n.len() % 2 == 0 {
                return Err("K needs odd m = 2r+1 >= 3".into());
            }
        }
        FamilySpec::M { .. } => {}
    }
    if let FamilySpec::HOmega { alpha, n, .. } = spec {
        for ((i, j), c) in alpha {
            if *j >= n.len() {
                return Err(format!("alpha index ({i},{j}) out of range for m = {}", n.len()));
            }
            if *c == 0 {
                return Err("alpha entries must be nonzero".into());
            }
        }
    }
    Ok(())
}

fn print_report(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
}

/// Fill the structural fields shared by construct/invariants/simplicity.
fn structural_report(
    command: &str,
    spec: &FamilySpec,
    level: Option<usize>,
    output: &OutputArgs,
) -> Report {
    let mut report = Report::new(command, spec, output.seed);
    let t0 = std::time::Instant::now();
    let alg = build_algebra(spec, level);
    report.timings_ms.push(("construct".into(), t0.elapsed().as_millis()));
    report.dim = cartanlab::liecore::LieOps::dim(&alg);
    let t1 = std::time::Instant::now();
    let (s, h, layers) = invariants(&alg);
    report.timings_ms.push(("invariants".into(), t1.elapsed().as_millis()));
    report.depth = Some(s);
    report.height = Some(h);
    report.layer_dims = Some(layers);
    report.flags = family_flags(spec, report.height);
    report
}

/// What the built-in grid expects of a family's criterion run.
enum Expectation {
    Pass,
    /// The run must fail with exactly these conditions.
    FailExactly(&'static [&'static str]),
    /// The run must pass and carry a flag with this prefix.
    FlaggedPass(&'static str),
}

/// The expectation grid for `verify`.  Everything passes except W(1;1) at
/// p = 3, which fails (G III) alone, and H1st at p = 5 with every exponent 1,
/// where the family estimate is silent and the direct computation passes
/// with an explanatory flag.
fn expectation_for(spec: &FamilySpec) -> Expectation {
    match spec {
        FamilySpec::W { p: 3, n } if n.as_slice() == [1] => {
            Expectation::FailExactly(&["G III"])
        }
        FamilySpec::HOmega { p: 5, n, .. } if n.iter().all(|&x| x == 1) => {
            Expectation::FlaggedPass("h1st-p5-n1-outside-recipe-estimate")
        }
        _ => Expectation::Pass,
    }
}

fn cmd_construct(family: &FamilyArgs, output: &OutputArgs) -> ExitCode {
    let spec = match parse_spec(family) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let mut report = structural_report("construct", &spec, family.level, output);
    let alg = build_algebra(&spec, family.level);
    let sc = match to_lie_algebra(&alg) {
        Ok(sc) => sc,
        Err(e) => return usage_error(&e),
    };
    let dir = cache::cache_dir(output.cache_dir.as_deref());
    let key = cache_key(&spec, family.level);
    let t0 = std::time::Instant::now();
    match cache::store(&dir, &key, &sc) {
        Ok(path) => eprintln!("cached {}", path.display()),
        Err(e) => {
            eprintln!("error: cannot write cache: {e}");
            return ExitCode::from(1);
        }
    }
    report.timings_ms.push(("cache".into(), t0.elapsed().as_millis()));
    print_report(&report, output.format);
    ExitCode::SUCCESS
}

fn cmd_invariants(family: &FamilyArgs, output: &OutputArgs) -> ExitCode {
    let spec = match parse_spec(family) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let report = structural_report("invariants", &spec, family.level, output);
    print_report(&report, output.format);
    ExitCode::SUCCESS
}

fn cmd_simplicity(family: &FamilyArgs, output: &OutputArgs) -> ExitCode {
    let spec = match parse_spec(family) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let mut report = structural_report("simplicity", &spec, family.level, output);
    let alg = build_algebra(&spec, family.level);
    let t0 = std::time::Instant::now();
    report.simplicity = Some(simplicity_verdict(&alg, output.seed));
    report.p_envelope_dim = p_envelope_dim(&alg);
    report.timings_ms.push(("simplicity".into(), t0.elapsed().as_millis()));
    print_report(&report, output.format);
    ExitCode::SUCCESS
}

fn cmd_verify(
    family: &FamilyArgs,
    criterion: Option<CriterionMode>,
    output: &OutputArgs,
) -> ExitCode {
    let spec = match parse_spec(family) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let t0 = std::time::Instant::now();
    let crit = verify(&spec);
    if let Some(requested) = criterion {
        let requested = match requested {
            CriterionMode::Theorem => "theorem",
            CriterionMode::Corollary => "corollary",
        };
        if requested != crit.mode {
            return usage_error(&format!(
                "family {} uses the {} criterion; --criterion {requested} is not available for it",
                spec.family_tag(),
                crit.mode
            ));
        }
    }
    let mut report = Report::new("verify", &spec, output.seed);
    report.dim = crit.dim;
    report.flags = crit.flags.clone();
    let mut json = CriterionJson::from_report(&crit);
    let expectation = expectation_for(&spec);
    let (expected_desc, matches) = match &expectation {
        Expectation::Pass => ("pass".to_string(), crit.passed),
        Expectation::FailExactly(conds) => (
            format!("fail exactly {conds:?}"),
            !crit.passed && crit.failed_conditions() == *conds,
        ),
        Expectation::FlaggedPass(prefix) => (
            format!("pass with flag {prefix}"),
            crit.passed && crit.flags.iter().any(|f| f.starts_with(prefix)),
        ),
    };
    json.expected = Some(expected_desc);
    json.matches_expectation = Some(matches);
    report.criterion = Some(json);
    report.timings_ms.push(("verify".into(), t0.elapsed().as_millis()));
    print_report(&report, output.format);
    if matches {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_counterexample(name: &str, output: &OutputArgs) -> ExitCode {
    let report = match reproduce_counterexample(name) {
        Ok(r) => r,
        Err(e) => return usage_error(&e),
    };
    match output.format {
        Format::Json => {
            let doc = serde_json::json!({
                "tool_version": cartanlab::report::TOOL_VERSION,
                "seed": output.seed,
                "command": "counterexample",
                "name": report.name,
                "checks": report.checks.iter().map(|c| serde_json::json!({
                    "name": c.name,
                    "passed": c.passed,
                    "witness": c.witness,
                })).collect::<Vec<_>>(),
                "flags": report.flags,
                "reproduced": report.reproduced,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serialization cannot fail"));
        }
        Format::Text => {
            println!("counterexample {}", report.name);
            for c in &report.checks {
                let verdict = if c.passed { "pass" } else { "FAIL" };
                let extra = c.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default();
                println!("  [{verdict}] {}{extra}", c.name);
            }
            for f in &report.flags {
                println!("  flag: {f}");
            }
            println!("reproduced: {}", report.reproduced);
        }
    }
    if report.reproduced {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_selftest(output: &OutputArgs) -> ExitCode {
    let report = selftest::run(output.seed);
    match output.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.summary_table()),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Construct { family, output } => cmd_construct(family, output),
        Command::Invariants { family, output } => cmd_invariants(family, output),
        Command::Simplicity { family, output } => cmd_simplicity(family, output),
        Command::Verify { family, criterion, output } => cmd_verify(family, *criterion, output),
        Command::Counterexample { name, output } => cmd_counterexample(name, output),
        Command::Selftest { output } => cmd_selftest(output),
    }
}
