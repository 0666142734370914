use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cusptorsion::assembler::{theorem_terms, CuspGeometry, TheoremReport, Y_TOLERANCE};
use cusptorsion::cusp::{compare_trace, CuspModelParams};
use cusptorsion::kostant::{boundary_profile, kostant_data_closed_form, kostant_data_enumerated};
use cusptorsion::nilcoh::{build_rep, kostant_prediction, nil_cohomology, CohomologyReport};
use cusptorsion::problem::ProblemSpec;
use cusptorsion::rational::{format_rational, format_rational_list, parse_rational_list};
use cusptorsion::torsion::{cohomology_dims, reidemeister_torsion, BasedCochainComplex};
use cusptorsion::weights::{
    build_root_system, is_strongly_acyclic, theta_twist, weyl_dimension, Flavor, GroupDatum,
    HighestWeight, WeightContext,
};
use cusptorsion::{Error, ErrorKind, Result};

/// `println!` that exits quietly when stdout is closed early (e.g. `| head`).
macro_rules! outln {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_fmt(args).and_then(|_| out.write_all(b"\n")) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(1);
    }
}

#[derive(Parser)]
#[command(name = "cusptorsion", version, about = "Explicit terms of the cusp gluing formula for analytic torsion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kostant table and boundary cohomology of a highest weight.
    Weights(WeightArgs),
    /// Compare brute-force nilradical cohomology with Kostant's theorem.
    VerifyKostant(VerifyArgs),
    /// Explicit terms of the gluing formula.
    Theorem(TheoremArgs),
    /// Compare the truncated model heat trace with its closed asymptotic.
    HeatCheck(HeatArgs),
    /// Reidemeister torsion of a based cochain complex given as JSON.
    Torsion(TorsionArgs),
    /// Run the built-in worked examples.
    Selftest(OutputArgs),
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Emit JSON.
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Emit a plain-text table (default).
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct GroupArgs {
    /// Odd dimension d of the hyperbolic manifold.
    #[arg(long)]
    d: Option<i64>,
    /// Highest weight as comma-separated rationals, e.g. 2,1 or 5/2,3/2,1/2.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// SO0 or Spin.
    #[arg(long, default_value = "SO0")]
    flavor: String,
}

#[derive(Args)]
struct WeightArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Number of cusps.
    #[arg(long, default_value_t = 1)]
    kappa: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TheoremArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Number of cusps; defaults to the number of volumes.
    #[arg(long)]
    kappa: Option<u64>,
    /// Torus volumes, comma-separated; defaults to 1 per cusp.
    #[arg(long, value_delimiter = ',')]
    volumes: Vec<f64>,
    /// Truncation height (repeatable).
    #[arg(long = "Y", value_name = "Y")]
    ys: Vec<f64>,
    /// Problem description JSON; replaces the group and cusp flags.
    #[arg(long, conflicts_with_all = ["d", "weight", "kappa", "volumes", "ys"])]
    problem: Option<PathBuf>,
    /// Tolerance for truncation independence.
    #[arg(long)]
    tolerance: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct HeatArgs {
    /// Odd dimension d.
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Heat time (repeatable); defaults to 0.25, 1, 4.
    #[arg(long = "t", value_name = "T")]
    ts: Vec<f64>,
    /// Dirichlet cut height.
    #[arg(long, default_value_t = 1.0)]
    u: f64,
    /// Truncation height (repeatable); defaults to log(Y/u) = 10√t.
    #[arg(long = "Y", value_name = "Y")]
    ys: Vec<f64>,
    /// Relative tolerance on top of the tail bound.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TorsionArgs {
    /// Path to the complex JSON, or - for standard input.
    path: PathBuf,
    #[command(flatten)]
    out: OutputArgs,
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Validation => 2,
        ErrorKind::Consistency | ErrorKind::Numerics => 3,
        ErrorKind::Resource => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Weights(a) => cmd_weights(a),
        Command::VerifyKostant(a) => cmd_verify_kostant(a),
        Command::Theorem(a) => cmd_theorem(a),
        Command::HeatCheck(a) => cmd_heat_check(a),
        Command::Torsion(a) => cmd_torsion(a),
        Command::Selftest(a) => cmd_selftest(a),
    }
}

fn parse_group(g: &GroupArgs) -> Result<(GroupDatum, HighestWeight)> {
    let flavor: Flavor = g.flavor.parse()?;
    let d = g
        .d
        .ok_or_else(|| Error::Precondition("--d is required".into()))?;
    let group = GroupDatum::new(d, flavor)?;
    let text = g
        .weight
        .as_deref()
        .ok_or_else(|| Error::Precondition("--weight is required".into()))?;
    let comps = parse_rational_list(text)?;
    if comps.len() != group.n() + 1 {
        return Err(Error::DimensionMismatch {
            expected: group.n() + 1,
            found: comps.len(),
        });
    }
    let weight = HighestWeight::new(comps, WeightContext::G, flavor)?;
    Ok((group, weight))
}

fn print_json(v: &serde_json::Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn cmd_weights(a: WeightArgs) -> Result<u8> {
    let (group, weight) = parse_group(&a.group)?;
    let n = group.n();
    let data = kostant_data_closed_form(&weight, n)?;
    let mut enumerated = kostant_data_enumerated(&weight, n)?;
    let mut sorted = data.clone();
    sorted.sort();
    enumerated.sort();
    if sorted != enumerated {
        return Err(Error::ConsistencyFailure(
            "closed-form Kostant data disagree with W¹ enumeration".into(),
        ));
    }
    let profile = boundary_profile(&weight, n, a.kappa)?;
    profile.check_invariants()?;
    let rs = build_root_system(n as i64)?;
    let acyclic = is_strongly_acyclic(&weight);
    let mut rows = Vec::new();
    for datum in &data {
        let dim_sigma = weyl_dimension(&rs, &datum.sigma)?;
        rows.push((datum, dim_sigma));
    }
    if a.out.json {
        let table: Vec<_> = rows
            .iter()
            .map(|(datum, dim_sigma)| {
                json!({
                    "length": datum.length,
                    "lambda": format_rational(&datum.lambda),
                    "sigma": datum.sigma.components().iter().map(format_rational).collect::<Vec<_>>(),
                    "dim_sigma": dim_sigma,
                })
            })
            .collect();
        print_json(&json!({
            "d": group.d(),
            "n": n,
            "flavor": group.flavor().to_string(),
            "highest_weight": weight.to_string(),
            "kappa": a.kappa,
            "strongly_acyclic": acyclic,
            "kostant": table,
            "profile": profile,
        }));
    } else {
        if !acyclic {
            outln!(
                "*** not strongly acyclic: {} equals its theta-twist {} ***",
                weight,
                theta_twist(&weight)?
            );
        }
        outln!("d = {}, n = {n}, Λ = {weight}, κ = {}", group.d(), a.kappa);
        outln!("l(w) |     λ | σ            | dim σ | κ·dim σ");
        for (datum, dim_sigma) in &rows {
            outln!(
                "{:>4} | {:>5} | {:<12} | {:>5} | {:>7}",
                datum.length,
                format_rational(&datum.lambda),
                format_rational_list(datum.sigma.components()),
                dim_sigma,
                a.kappa * dim_sigma
            );
        }
        let dims: Vec<String> = profile.degrees.iter().map(|p| p.dim.to_string()).collect();
        outln!("dim H^k(∂X̄) = ({})", dims.join(","));
    }
    Ok(0)
}

fn report_json(r: &CohomologyReport) -> serde_json::Value {
    serde_json::to_value(r).expect("json")
}

fn weights_text(r: &CohomologyReport, k: usize) -> String {
    let parts: Vec<String> = r.degrees[k]
        .a_weights
        .iter()
        .map(|w| format!("{}×{}", format_rational(&w.weight), w.multiplicity))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_verify_kostant(a: VerifyArgs) -> Result<u8> {
    let (group, weight) = parse_group(&a.group)?;
    let n = group.n();
    let rep = build_rep(group.d(), &weight)?;
    let oracle = nil_cohomology(&rep)?;
    let predicted = kostant_prediction(&weight, n)?;
    let pass = oracle == predicted;
    if a.out.json {
        print_json(&json!({
            "d": group.d(),
            "highest_weight": weight.to_string(),
            "dim_V": rep.dim_v(),
            "oracle": report_json(&oracle),
            "kostant": report_json(&predicted),
            "pass": pass,
        }));
    } else {
        outln!("d = {}, Λ = {}, dim V = {}", group.d(), weight, rep.dim_v());
        outln!(" k | oracle dim | Kostant dim | oracle a-weights | Kostant a-weights");
        for k in 0..oracle.degrees.len() {
            outln!(
                "{:>2} | {:>10} | {:>11} | {} | {}",
                k,
                oracle.degrees[k].dim,
                predicted.degrees[k].dim,
                weights_text(&oracle, k),
                weights_text(&predicted, k)
            );
        }
        outln!("{}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 3 })
}

fn cmd_theorem(a: TheoremArgs) -> Result<u8> {
    let (group, weight, geom, tol) = if let Some(path) = &a.problem {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
        let problem = ProblemSpec::from_json(&text)?.validate()?;
        let tol = a
            .tolerance
            .or(problem.options.tolerance)
            .unwrap_or(Y_TOLERANCE);
        (problem.group, problem.weight, problem.geometry, tol)
    } else {
        let (group, weight) = parse_group(&a.group)?;
        let kappa = a.kappa.unwrap_or(a.volumes.len().max(1) as u64);
        let volumes = if a.volumes.is_empty() {
            vec![1.0; kappa as usize]
        } else {
            a.volumes.clone()
        };
        let geom = CuspGeometry::new(kappa, volumes, a.ys.clone())?;
        (group, weight, geom, a.tolerance.unwrap_or(Y_TOLERANCE))
    };
    let report: TheoremReport = theorem_terms(&weight, &group, &geom, tol)?;
    if a.out.json {
        outln!("{}", report.to_json());
    } else {
        outln!("{}", report.to_table().trim_end_matches('\n'));
    }
    Ok(0)
}

fn cmd_heat_check(a: HeatArgs) -> Result<u8> {
    let ts = if a.ts.is_empty() {
        vec![0.25, 1.0, 4.0]
    } else {
        a.ts.clone()
    };
    let mut rows = Vec::new();
    let mut all_pass = true;
    for &t in &ts {
        let ys = if a.ys.is_empty() {
            vec![a.u * (10.0 * t.sqrt()).exp()]
        } else {
            a.ys.clone()
        };
        for y in ys {
            let p = CuspModelParams::new(a.d, a.u, t, y)?;
            let c = compare_trace(&p)?;
            let pass = c.within(a.tolerance);
            all_pass &= pass;
            rows.push((t, y, c, pass));
        }
    }
    if a.out.json {
        let v: Vec<_> = rows
            .iter()
            .map(|(t, y, c, pass)| {
                json!({"d": a.d, "t": t, "u": a.u, "Y": y, "comparison": c, "pass": pass})
            })
            .collect();
        print_json(&json!({"rows": v, "pass": all_pass}));
    } else {
        outln!("d = {}, u = {}", a.d, a.u);
        outln!("     t |            Y |   quadrature |   asymptotic |    tail bound |   residual | ok");
        for (t, y, c, pass) in &rows {
            outln!(
                "{:>6} | {:>12.6e} | {:>12.9} | {:>12.9} | {:>13.6e} | {:>10.3e} | {}",
                t,
                y,
                c.quadrature,
                c.asymptotic,
                c.tail_bound,
                c.residual,
                if *pass { "yes" } else { "NO" }
            );
        }
        outln!("{}", if all_pass { "PASS" } else { "FAIL" });
    }
    Ok(if all_pass { 0 } else { 3 })
}

const TORSION_CONVENTION: &str = "tau = prod_q |det omega_q|^((-1)^(q+1)), omega_q = [d theta_(q-1) | theta_q | nu_q] \
against the declared bases; 0 -> Q -(a)-> Q -> 0 in degrees 0,1 has tau = |a|";

fn cmd_torsion(a: TorsionArgs) -> Result<u8> {
    let text = if a.path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| Error::Precondition(format!("cannot read standard input: {e}")))?
    } else {
        std::fs::read_to_string(&a.path)
            .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", a.path.display())))?
    };
    let complex = BasedCochainComplex::from_json(&text)?;
    let tau = reidemeister_torsion(&complex)?;
    let dims = cohomology_dims(&complex);
    if a.out.json {
        print_json(&json!({
            "degrees": [complex.first_degree(), complex.last_degree()],
            "dims": complex.dims(),
            "cohomology_dims": dims,
            "tau": format_rational(&tau),
            "convention": TORSION_CONVENTION,
        }));
    } else {
        outln!("degrees [{}, {}]", complex.first_degree(), complex.last_degree());
        outln!("dims C^q = {:?}, dims H^q = {:?}", complex.dims(), dims);
        outln!("tau = {}", format_rational(&tau));
        outln!("convention: {TORSION_CONVENTION}");
    }
    Ok(0)
}

fn selftest_checks() -> Vec<(&'static str, Result<bool>)> {
    let g = |c: &[i64]| HighestWeight::from_i64(c, WeightContext::G);
    let mut out: Vec<(&'static str, Result<bool>)> = Vec::new();
    out.push((
        "anomaly constant c(1) = -1/(8π)",
        cusptorsion::assembler::anomaly_constant(1)
            .map(|c| (c + 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-15),
    ));
    out.push(("worked case S(Y) = ½ log 3", (|| {
        let group = GroupDatum::new(3, Flavor::SO0)?;
        let geom = CuspGeometry::new(1, vec![1.0], vec![1.0, std::f64::consts::E, 10.0, 100.0])?;
        let r = theorem_terms(&g(&[2, 1])?, &group, &geom, Y_TOLERANCE)?;
        Ok((r.y_independence.cohomology_correction - 0.5 * 3f64.ln()).abs() < 1e-12 && r.rk_e == 8)
    })()));
    out.push(("two-term torsion 0→ℚ→5ℚ→0 is 5", (|| {
        let c = BasedCochainComplex::from_json(r#"{"degrees":[0,1],"d":[[["5"]]]}"#)?;
        Ok(format_rational(&reidemeister_torsion(&c)?) == "5")
    })()));
    out.push(("heat trace d=3, t=1, log(Y/u)=10", (|| {
        let p = CuspModelParams::new(3, 1.0, 1.0, 10f64.exp())?;
        Ok(compare_trace(&p)?.within(1e-6))
    })()));
    out.push(("nilradical cohomology of the standard rep, d=3", (|| {
        let w = g(&[1, 0])?;
        let rep = build_rep(3, &w)?;
        let report = nil_cohomology(&rep)?;
        Ok(report.dims() == vec![1, 2, 1] && report == kostant_prediction(&w, 1)?)
    })()));
    out
}

fn cmd_selftest(a: OutputArgs) -> Result<u8> {
    let checks = selftest_checks();
    let mut all = true;
    let mut rows = Vec::new();
    for (name, res) in checks {
        let (pass, detail) = match res {
            Ok(p) => (p, String::new()),
            Err(e) => (false, e.to_string()),
        };
        all &= pass;
        rows.push((name, pass, detail));
    }
    if a.json {
        let v: Vec<_> = rows
            .iter()
            .map(|(n, p, d)| json!({"check": n, "pass": p, "detail": d}))
            .collect();
        print_json(&json!({"checks": v, "pass": all}));
    } else {
        for (name, pass, detail) in &rows {
            let tag = if *pass { "PASS" } else { "FAIL" };
            if detail.is_empty() {
                outln!("{tag} {name}");
            } else {
                outln!("{tag} {name}: {detail}");
            }
        }
    }
    Ok(if all { 0 } else { 3 })
}
