use std::path::{Path, PathBuf};
use std::process::ExitCode;

use affine_frt::aff::{self, CaseLabel};
use affine_frt::config::{ConfigError, Resolved, RunConfig, SuiteName};
use affine_frt::report::{diff_reports, Check, Report};
use affine_frt::rmatrix::{AffineSl2, FreeFermion, GammaElement};
use affine_frt::scalar::{Sampler, Scalar};
use affine_frt::suite::{self, sub_seed};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "affrt", version, about = "Exact checks for parametrized R-matrices, FRT bialgebras and their comodules")]
struct Cli {
    /// TOML run configuration; unknown keys are rejected.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Yang-Baxter checks for the three families and the group Γ.
    Ybe {
        #[command(subcommand)]
        op: YbeOp,
    },
    /// The FRT bialgebra: relations, graded components, subcomodules.
    Frt {
        #[command(subcommand)]
        op: FrtOp,
    },
    /// The pairing with the quantum affine algebra.
    Duality {
        #[command(subcommand)]
        op: DualityOp,
    },
    /// The quantum loop group: evaluation comodules and their structure.
    Slqhat {
        #[command(subcommand)]
        op: SlqOp,
    },
    /// The free-fermionic bialgebra.
    Aff {
        #[command(subcommand)]
        op: AffOp,
    },
    /// Every suite selected by the configuration.
    All,
    /// Verdict-level difference between two JSON reports.
    Diff { before: PathBuf, after: PathBuf },
}

#[derive(Subcommand)]
enum YbeOp {
    Check {
        #[arg(long, value_enum)]
        family: Option<Family>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    AffineSl2,
    FreeFermion,
    PerkSchultz,
}

#[derive(Args, Clone)]
struct PairArgs {
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    /// JSON list of Γ elements; switches to the free-fermionic family.
    #[arg(long)]
    points: Option<String>,
}

#[derive(Subcommand)]
enum FrtOp {
    Relations(PairArgs),
    Component(PairArgs),
    Subcomodules(PairArgs),
}

#[derive(Subcommand)]
enum DualityOp {
    Pair(PairArgs),
    WellDefined(PairArgs),
    CheckRep(SlqArgs),
}

#[derive(Args, Clone)]
struct SlqArgs {
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Args, Clone)]
struct ScanArgs {
    #[arg(long)]
    q: Option<String>,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Extra ratios to test beside the predicted ones.
    #[arg(long, value_delimiter = ',')]
    ratios: Vec<String>,
}

#[derive(Subcommand)]
enum SlqOp {
    BuildW(SlqArgs),
    DualAction(SlqArgs),
    /// --a is the spectral point x.
    Antipode(SlqArgs),
    /// --a is the spectral point x.
    Detq(SlqArgs),
    ReduceScan(ScanArgs),
    DualComodule(SlqArgs),
}

#[derive(Args, Clone)]
struct PointsArgs {
    /// JSON list of Γ elements, each {"a1": "..", ..., "c2": ".."}.
    #[arg(long)]
    points: Option<String>,
}

#[derive(Subcommand)]
enum AffOp {
    Classify(PointsArgs),
    /// Points x, y (with x⁻¹∘y in the both-zero case) and w.
    Braiding(PointsArgs),
    TensorIrr(PointsArgs),
    ProbePow2 {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
}

#[derive(Debug)]
struct UsageError(String);

impl From<ConfigError> for UsageError {
    fn from(e: ConfigError) -> Self {
        UsageError(e.to_string())
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, UsageError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn resolve(cfg: &RunConfig, q: &Option<String>) -> Result<Resolved, UsageError> {
    let mut cfg = cfg.clone();
    if q.is_some() {
        cfg.q = q.clone();
    }
    Ok(cfg.resolve()?)
}

fn scalar(r: &Resolved, text: &str, what: &str) -> Result<Scalar, UsageError> {
    let v = Scalar::parse_in(text, r.config.field).map_err(|e| UsageError(format!("--{what}: {e}")))?;
    if v.is_zero() {
        return Err(UsageError(format!("--{what}: spectral points are nonzero")));
    }
    Ok(v)
}

fn scalar_or_sample(r: &Resolved, text: &Option<String>, what: &str, tag: &str) -> Result<Scalar, UsageError> {
    match text {
        Some(t) => scalar(r, t, what),
        None => Ok(Sampler::new(sub_seed(r.config.seed, tag)).generic_point(Some(r.q.q()), &[])),
    }
}

fn gamma_points(text: &str) -> Result<Vec<GammaElement>, UsageError> {
    serde_json::from_str(text).map_err(|e| UsageError(format!("--points: {e}")))
}

fn points_or_sample(text: &Option<String>, seed: u64, sample: impl FnOnce(&mut Sampler) -> Vec<GammaElement>) -> Result<Vec<GammaElement>, UsageError> {
    match text {
        Some(t) => gamma_points(t),
        None => Ok(sample(&mut Sampler::new(sub_seed(seed, "cli.points")))),
    }
}

fn pair(r: &Resolved, args: &PairArgs) -> Result<(Scalar, Scalar), UsageError> {
    let x = scalar_or_sample(r, &args.x, "x", "cli.x")?;
    let y = match &args.y {
        Some(t) => scalar(r, t, "y")?,
        None => Sampler::new(sub_seed(r.config.seed, "cli.y")).generic_point(Some(r.q.q()), std::slice::from_ref(&x)),
    };
    Ok((x, y))
}

fn frt_op(cfg: &RunConfig, op: &FrtOp) -> Result<(String, Resolved, Vec<Check>), UsageError> {
    let (name, args) = match op {
        FrtOp::Relations(a) => ("relations", a),
        FrtOp::Component(a) => ("component", a),
        FrtOp::Subcomodules(a) => ("subcomodules", a),
    };
    let r = resolve(cfg, &args.q)?;
    let checks = if let Some(text) = &args.points {
        let pts = gamma_points(text)?;
        let inputs = json!({"points": pts});
        match name {
            "component" if pts.len() == 2 => vec![component_check(suite::frt_component(&FreeFermion, &pts[0], &pts[1]), inputs)],
            "subcomodules" => vec![suite::frt_subcomodules_check(&FreeFermion, &pts, inputs)],
            _ => return Err(UsageError(format!("frt {name} with --points needs the component or subcomodules op and, for component, two points"))),
        }
    } else {
        let (x, y) = pair(&r, args)?;
        let fam = AffineSl2 { q: r.q.clone() };
        let inputs = json!({"q": r.q.q().to_string(), "x": x.to_string(), "y": y.to_string()});
        match name {
            "relations" => suite::commutation_checks(&r.q, &x),
            "component" => vec![component_check(suite::frt_component(&fam, &x, &y), inputs)],
            _ => vec![suite::frt_subcomodules_check(&fam, &[x, y], inputs)],
        }
    };
    Ok((format!("frt.{name}"), r, checks))
}

fn component_check(res: Result<(usize, bool), affine_frt::frt::FrtError>, inputs: serde_json::Value) -> Check {
    let ok = matches!(res, Ok((16, true)));
    Check::pass_fail("frt.component", suite::anchor::FRT, inputs, ok, json!({"result": format!("{res:?}"), "expected": "(16, braiding is a comodule map)"}))
}

fn duality_op(cfg: &RunConfig, op: &DualityOp) -> Result<(String, Resolved, Vec<Check>), UsageError> {
    let (name, q) = match op {
        DualityOp::Pair(a) => ("pair", &a.q),
        DualityOp::WellDefined(a) => ("well-defined", &a.q),
        DualityOp::CheckRep(a) => ("check-rep", &a.q),
    };
    let r = resolve(cfg, q)?;
    let all = suite::duality_checks(&r);
    let keep: &[&str] = match name {
        "pair" => &["duality.pairing.sample_relation", "duality.pairing.coproduct_expansion"],
        "well-defined" => &["duality.pairing.well_defined"],
        _ => &[],
    };
    let checks = if let DualityOp::CheckRep(a) = op {
        let av = scalar_or_sample(&r, &a.a, "a", "cli.a")?;
        let rr = a.r.unwrap_or(2);
        let rep = affine_frt::uq::eval_rep(&av, rr, &r.q).map_err(|e| UsageError(e.to_string()))?;
        let rel = affine_frt::uq::check_uq_relations(&rep.matrices, &r.q);
        vec![Check::pass_fail(
            "duality.eval_rep.relations",
            suite::anchor::EVAL_REP,
            json!({"q": r.q.q().to_string(), "a": av.to_string(), "r": rr}),
            rel.pass && rel.type_one,
            json!({"failed": rel.failed(), "type_one": rel.type_one}),
        )]
    } else {
        all.into_iter().filter(|c| keep.contains(&c.id.as_str())).collect()
    };
    Ok((format!("duality.{name}"), r, checks))
}

fn slq_op(cfg: &RunConfig, op: &SlqOp) -> Result<(String, Resolved, Vec<Check>), UsageError> {
    if let SlqOp::ReduceScan(a) = op {
        let r = resolve(cfg, &a.q)?;
        if a.m == 0 || a.n == 0 || a.m + a.n > 6 {
            return Err(UsageError("reduce-scan needs 1 <= m, n and m + n <= 6".into()));
        }
        let controls = a.ratios.iter().map(|t| scalar(&r, t, "ratios")).collect::<Result<Vec<_>, _>>()?;
        return Ok(("slqhat.reduce-scan".into(), r.clone(), vec![suite::reducibility_check(a.m, a.n, &controls, &r.q)]));
    }
    let (name, a) = match op {
        SlqOp::BuildW(a) => ("build-w", a),
        SlqOp::DualAction(a) => ("dual-action", a),
        SlqOp::Antipode(a) => ("antipode", a),
        SlqOp::Detq(a) => ("detq", a),
        SlqOp::DualComodule(a) => ("dual-comodule", a),
        SlqOp::ReduceScan(_) => unreachable!(),
    };
    let r = resolve(cfg, &a.q)?;
    let av = scalar_or_sample(&r, &a.a, "a", "cli.a")?;
    let rr = a.r.unwrap_or(2);
    if rr > 4 {
        return Err(UsageError("--r is capped at 4".into()));
    }
    let q = &r.q;
    let deg = r.config.probe_degree;
    let checks = match name {
        "build-w" => vec![suite::build_w_check(&av, rr, q)],
        "dual-action" => vec![suite::dual_action_check(&av, rr, q)],
        "antipode" => vec![suite::antipode_check(&av, q, deg, 1)],
        "detq" => vec![suite::detq_check(&av, q, deg.min(3), 1)],
        _ if rr == 0 => return Err(UsageError("dual-comodule needs --r >= 1".into())),
        _ => suite::dual_comodule_checks(&av, rr, q),
    };
    Ok((format!("slqhat.{name}"), r, checks))
}

fn aff_op(cfg: &RunConfig, op: &AffOp) -> Result<(String, Resolved, Vec<Check>), UsageError> {
    let r = resolve(cfg, &None)?;
    let seed = r.config.seed;
    let (name, checks) = match op {
        AffOp::Classify(p) => {
            let pts = points_or_sample(&p.points, seed, |sm| vec![aff::gamma_generic(sm), aff::gamma_generic(sm)])?;
            if pts.len() != 2 {
                return Err(UsageError("classify takes two points".into()));
            }
            ("classify", vec![suite::classify_check(&pts[0], &pts[1])])
        }
        AffOp::Braiding(p) => {
            let pts = points_or_sample(&p.points, seed, |sm| {
                let (x, y) = aff::pair_with_ratio(&aff::gamma_generic(sm), &aff::gamma_in_case(sm, CaseLabel::BothZero));
                vec![x, y, aff::gamma_generic(sm)]
            })?;
            if pts.len() != 3 {
                return Err(UsageError("braiding takes three points x, y, w".into()));
            }
            let all = suite::both_zero_checks(&pts[0], &pts[1], &pts[2]);
            ("braiding", all.into_iter().filter(|c| c.id.starts_with("aff.braiding")).collect())
        }
        AffOp::TensorIrr(p) => {
            let pts = points_or_sample(&p.points, seed, |sm| (0..3).map(|_| aff::gamma_generic(sm)).collect())?;
            if pts.is_empty() || pts.len() > 8 {
                return Err(UsageError("tensor-irr takes 1 to 8 points".into()));
            }
            ("tensor-irr", vec![suite::tensor_irreducibility_check(&[pts])])
        }
        AffOp::ProbePow2 { max_n } => {
            if !(2..=3).contains(max_n) {
                return Err(UsageError("--max-n must be 2 or 3".into()));
            }
            let c = match aff::power_of_two_probe(sub_seed(seed, "aff.pow2"), *max_n) {
                Ok(rep) => Check::info("aff.power_of_two", suite::anchor::POW2, json!({"max_n": max_n}), json!(rep)),
                Err(e) => Check::pass_fail("aff.power_of_two", suite::anchor::POW2, json!({"max_n": max_n}), false, json!({"error": e.to_string()})),
            };
            ("probe-pow2", vec![c])
        }
    };
    Ok((format!("aff.{name}"), r, checks))
}

fn emit(cli: &Cli, text: &str) -> Result<(), UsageError> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| UsageError(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(cli: &Cli, report: &Report) -> String {
    match cli.format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    }
}

fn read_report(p: &Path) -> Result<Report, UsageError> {
    let text = std::fs::read_to_string(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))?;
    Report::from_json(&text).map_err(|e| UsageError(format!("{}: {e}", p.display())))
}

fn run(cli: &Cli) -> Result<u8, UsageError> {
    if let Command::Diff { before, after } = &cli.command {
        let d = diff_reports(&read_report(before)?, &read_report(after)?).map_err(|e| UsageError(e.to_string()))?;
        let mut text = serde_json::to_string_pretty(&d).expect("diff serializes");
        text.push('\n');
        emit(cli, &text)?;
        return Ok(if d.is_empty() { 0 } else { 1 });
    }
    let cfg = load_config(cli)?;
    let report = match &cli.command {
        Command::All => suite::run_suite(&cfg.resolve()?),
        Command::Ybe { op: YbeOp::Check { family } } => {
            let mut one = cfg.clone();
            one.suites = vec![SuiteName::Ybe];
            let r = one.resolve()?;
            let prefix = family.map(|f| match f {
                Family::AffineSl2 => "ybe.affine_sl2",
                Family::FreeFermion => "ybe.free_fermion",
                Family::PerkSchultz => "ybe.perk_schultz",
            });
            let checks = suite::ybe_checks(&r).into_iter().filter(|c| prefix.is_none_or(|p| c.id.starts_with(p))).collect();
            Report::new("ybe", r.echo(), checks)
        }
        Command::Frt { op } => op_report(frt_op(&cfg, op)?),
        Command::Duality { op } => op_report(duality_op(&cfg, op)?),
        Command::Slqhat { op } => op_report(slq_op(&cfg, op)?),
        Command::Aff { op } => op_report(aff_op(&cfg, op)?),
        Command::Diff { .. } => unreachable!(),
    };
    let out = cli.out.clone().or_else(|| cfg.out.as_ref().map(PathBuf::from));
    let text = render(cli, &report);
    match out {
        Some(p) => std::fs::write(&p, text).map_err(|e| UsageError(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(report.exit_code() as u8)
}

fn op_report((name, r, checks): (String, Resolved, Vec<Check>)) -> Report {
    Report::new(name, r.echo(), checks)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("affrt: {msg}");
            ExitCode::from(2)
        }
    }
}
