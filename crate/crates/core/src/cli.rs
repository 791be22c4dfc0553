//! The `hzoo` command line.
//!
//! Exit codes: 0 when every requested certificate passed, 1 when one failed,
//! 2 on a usage error (bad flags, unparsable input, invalid parameters) or
//! an I/O failure.

use std::ffi::OsString;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::SystemTime;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{
    exp_vandermonde, morphism_power_family, odd_morphism, odd_squared_vandermonde, planar_vanisher,
    quadratic_morphism, squared_vandermonde, strip_exp_sin, strip_sinh_sin, vandermonde, HalfStrip,
    MorphismPair, TrigProduct,
};
use crate::diffops::ExpPoly;
use crate::expr::parse_poly;
use crate::numerics::{
    boundary_scan, cloud_is_sound, halton_points, nodal_sample, poly_field, residual_scan, write_csv,
    BoundaryReport, GridSpec, ResidualReport, Segment, FD_RESIDUAL_BOUND, FD_STEP, TOL_BOUNDARY,
};
use crate::polyring::{format_rational, ratio, GaussRational, Poly, Rational};
use crate::verify::{
    check_composition, check_conformality, check_divides_family, check_eigen, check_harmonic,
    check_linear_independence, check_skeleton_vanishing, common_zero_witness, Certificate, Subcase,
};

pub const TOOL_VERSION: &str = concat!("hzoo ", env!("CARGO_PKG_VERSION"));

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "HZOO_THREADS";

#[derive(Parser, Debug)]
#[command(name = "hzoo", version, about = "Generate and verify harmonic functions with prescribed zero sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
    /// Omit the timestamp so that reports are byte-for-byte reproducible.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a construction, optionally checking it.
    Gen(GenArgs),
    /// Check that a polynomial (or exp-weighted polynomial) is harmonic or an eigenfunction.
    Verify(VerifyArgs),
    /// Check vanishing on every k-face of the centred unit cube.
    Skeleton(SkeletonArgs),
    /// Check exact divisibility of a family by one divisor.
    Divides(DividesArgs),
    /// Check linear independence of a family over Q.
    Independent(FamilyArgs),
    /// Check that a map into the plane is a harmonic morphism.
    Conformal(ConformalArgs),
    /// Check that a planar harmonic polynomial composed with a morphism is harmonic.
    Compose(ComposeArgs),
    /// Sample the nodal set of a polynomial on a grid.
    Nodal(NodalArgs),
    /// Numeric checks for the half-strip function.
    Halfstrip(HalfstripArgs),
    /// Numeric checks for the strip functions.
    Strip(StripArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GenKind {
    Fd,
    Gd,
    Hd,
    Vandermonde,
    Phi,
    Pk,
    OddMorphism,
    Psi,
    Planar,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CheckKind {
    Harmonic,
    Eigen,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Ansatz polynomial in x1 (standing for z); repeat once per entry.
    #[arg(long = "g", allow_hyphen_values = true)]
    g: Vec<String>,
    /// Prism frequencies, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Vec<String>,
    /// Prescribed zero `RE,IM`; repeat per point.
    #[arg(long = "point", allow_hyphen_values = true)]
    points: Vec<String>,
    #[arg(long, value_enum)]
    check: Option<CheckKind>,
    /// Eigenvalue for `--check eigen` (defaults to the dimension for hd).
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    arity: usize,
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    /// Check `Δh = λh` instead of harmonicity.
    #[arg(long, allow_hyphen_values = true)]
    eigen: Option<String>,
    /// Exponential weight `w` (comma separated) for `h = exp(w·x)·p`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weight: Option<Vec<String>>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SkeletonPoly {
    Fd,
    Gd,
}

#[derive(Args, Debug)]
struct SkeletonArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, conflicts_with = "expr")]
    poly: Option<SkeletonPoly>,
    #[arg(long, allow_hyphen_values = true)]
    expr: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Use the power family `P_0..P_kmax` on `R^{2n}`.
    #[arg(long, requires = "kmax")]
    n: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    arity: Option<usize>,
    /// Explicit family member; repeat per member.
    #[arg(long = "member", allow_hyphen_values = true)]
    members: Vec<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct DividesArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Divisor (defaults to phi1 for the power family).
    #[arg(long, allow_hyphen_values = true)]
    divisor: Option<String>,
    /// Generate this many probe points on the divisor's zero set (power family only).
    #[arg(long)]
    probes: Option<usize>,
    /// Explicit probe point, comma separated rationals; repeat per point.
    #[arg(long = "probe", allow_hyphen_values = true)]
    probe: Vec<String>,
}

#[derive(Args, Debug)]
struct MorphismArgs {
    /// Quadratic morphism on `R^{2n}`.
    #[arg(long)]
    n: Option<usize>,
    /// Odd-dimensional morphism on `R^m`.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long = "g", allow_hyphen_values = true)]
    g: Vec<String>,
    #[arg(long)]
    arity: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    phi1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi2: Option<String>,
}

#[derive(Args, Debug)]
struct ConformalArgs {
    #[command(flatten)]
    morphism: MorphismArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ComposeArgs {
    #[command(flatten)]
    morphism: MorphismArgs,
    /// Planar polynomial in x1, x2 to compose with.
    #[arg(long, default_value = "x1^2 - x2^2", allow_hyphen_values = true)]
    outer: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct NodalArgs {
    #[arg(long, value_enum, conflicts_with = "expr")]
    poly: Option<SkeletonPoly>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    expr: Option<String>,
    #[arg(long)]
    arity: Option<usize>,
    #[arg(long, default_value_t = 41)]
    resolution: usize,
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    lo: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    hi: f64,
    /// Also write the cloud as CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct HalfstripArgs {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 50)]
    interior: usize,
    #[arg(long, default_value_t = HalfStrip::DEFAULT_EPS_DEN)]
    eps_den: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum StripFunction {
    ExpSin,
    SinhSin,
}

#[derive(Args, Debug)]
struct StripArgs {
    #[arg(long = "function", value_enum, default_value = "exp-sin")]
    function: StripFunction,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 50)]
    interior: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(msg.to_string())
}

type CliResult<T> = Result<T, CliError>;

#[derive(Serialize)]
struct Report<'a> {
    #[serde(flatten)]
    certificate: &'a Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    outputs: Option<&'a [String]>,
    tool_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<String>,
}

#[derive(Serialize)]
struct GenReport<'a> {
    construction: &'a str,
    outputs: &'a [String],
    tool_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<String>,
}

/// What a command produced.
struct Outcome {
    outputs: Vec<String>,
    certificate: Option<Certificate>,
    construction: &'static str,
    /// Replaces the default text rendering.
    text: Option<String>,
}

impl Outcome {
    fn certified(certificate: Certificate) -> Self {
        Self { outputs: vec![], certificate: Some(certificate), construction: "", text: None }
    }
}

fn timestamp(out: &OutputArgs) -> Option<String> {
    (!out.no_timestamp).then(|| humantime::format_rfc3339_seconds(SystemTime::now()).to_string())
}

fn render_certificate(c: &Certificate) -> String {
    let mut s = format!("{}: {}\ninputs: {}\n", c.claim_id, c.verdict, c.inputs_digest);
    if let Some(w) = &c.witness {
        s.push_str(&format!("witness: {w}\n"));
    }
    for sub in &c.subcases {
        match &sub.detail {
            Some(d) => s.push_str(&format!("  {} {} ({d})\n", sub.verdict, sub.label)),
            None => s.push_str(&format!("  {} {}\n", sub.verdict, sub.label)),
        }
    }
    s
}

fn render(outcome: &Outcome, out: &OutputArgs) -> CliResult<String> {
    let ts = timestamp(out);
    if out.json {
        let json = match &outcome.certificate {
            Some(c) => serde_json::to_string_pretty(&Report {
                certificate: c,
                outputs: (!outcome.outputs.is_empty()).then_some(outcome.outputs.as_slice()),
                tool_version: TOOL_VERSION,
                timestamp: ts,
            }),
            None => serde_json::to_string_pretty(&GenReport {
                construction: outcome.construction,
                outputs: &outcome.outputs,
                tool_version: TOOL_VERSION,
                timestamp: ts,
            }),
        }
        .map_err(|e| CliError::Io(e.into()))?;
        return Ok(json + "\n");
    }
    if let Some(t) = &outcome.text {
        return Ok(t.clone());
    }
    let mut s = String::new();
    for o in &outcome.outputs {
        s.push_str(o);
        s.push('\n');
    }
    if let Some(c) = &outcome.certificate {
        if !s.is_empty() {
            s.push('\n');
        }
        s.push_str(&render_certificate(c));
    }
    Ok(s)
}

fn parse_rational(s: &str) -> CliResult<Rational> {
    Rational::from_str(s.trim()).map_err(|_| usage(format!("invalid rational {s:?}")))
}

fn parse_rationals(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

fn parse_expr(src: &str, arity: usize) -> CliResult<Poly> {
    parse_poly(src, arity).map_err(|e| usage(format!("{src:?}: {e}")))
}

fn need<T>(value: Option<T>, flag: &str, what: &str) -> CliResult<T> {
    value.ok_or_else(|| usage(format!("{what} requires --{flag}")))
}

/// Runs one check per labelled item and folds the results into one
/// certificate whose subcase labels carry the item label.
fn merge(claim_id: &str, parts: Vec<(String, Certificate)>) -> Certificate {
    let inputs: Vec<String> = parts.iter().map(|(l, c)| format!("{l}:{}", c.inputs_digest)).collect();
    let subcases = parts
        .into_iter()
        .flat_map(|(label, c)| {
            c.subcases
                .into_iter()
                .map(move |s| Subcase { label: format!("{label}: {}", s.label), ..s })
        })
        .collect();
    Certificate::assemble(claim_id, &inputs, subcases, None)
}

fn trig_check(psi: &TrigProduct, claim: &str, lambda: &Rational) -> Certificate {
    let ev = psi.eigenvalue();
    let ok = &ev == lambda;
    Certificate::assemble(
        claim,
        &[psi.to_string(), format_rational(lambda)],
        vec![Subcase::new(
            format!("eigenvalue == {}", format_rational(lambda)),
            ok,
            Some(format!("eigenvalue {}", format_rational(&ev))),
        )],
        None,
    )
}

fn gen(args: &GenArgs) -> CliResult<Outcome> {
    let lambda = args.lambda.as_deref().map(parse_rational).transpose()?;
    let construction = match args.kind {
        GenKind::Fd => "fd",
        GenKind::Gd => "gd",
        GenKind::Hd => "hd",
        GenKind::Vandermonde => "vandermonde",
        GenKind::Phi => "phi",
        GenKind::Pk => "pk",
        GenKind::OddMorphism => "odd-morphism",
        GenKind::Psi => "psi",
        GenKind::Planar => "planar",
    };
    let dim = || need(args.dim, "dim", construction);
    let bad = |e: crate::constructions::ConstructionError| usage(e);

    // Non-polynomial constructions first.
    match args.kind {
        GenKind::Hd => {
            let d = dim()?;
            let h = exp_vandermonde(d).map_err(bad)?;
            let cert = args.check.map(|c| {
                let l = match c {
                    CheckKind::Harmonic => Rational::from_integer(0.into()),
                    CheckKind::Eigen => lambda.clone().unwrap_or_else(|| Rational::from_integer(d.into())),
                };
                check_eigen(&h, &l)
            });
            return Ok(Outcome { outputs: vec![h.to_string()], certificate: cert, construction, text: None });
        }
        GenKind::Psi => {
            if args.a.is_empty() {
                return Err(usage("psi requires --a"));
            }
            let a = args.a.iter().map(|s| parse_rational(s)).collect::<CliResult<Vec<_>>>()?;
            let psi = TrigProduct::prism(&a).map_err(bad)?;
            let cert = match args.check {
                None => None,
                Some(CheckKind::Harmonic) => Some(trig_check(&psi, "harmonic", &Rational::from_integer(0.into()))),
                Some(CheckKind::Eigen) => Some(trig_check(&psi, "eigen", &need(lambda, "lambda", "psi --check eigen")?)),
            };
            return Ok(Outcome { outputs: vec![psi.to_string()], certificate: cert, construction, text: None });
        }
        _ => {}
    }

    let named: Vec<(String, Poly)> = match args.kind {
        GenKind::Fd => vec![("fd".into(), squared_vandermonde(dim()?).map_err(bad)?)],
        GenKind::Gd => vec![("gd".into(), odd_squared_vandermonde(dim()?).map_err(bad)?)],
        GenKind::Vandermonde => vec![("vandermonde".into(), vandermonde(dim()?).map_err(bad)?)],
        GenKind::Phi => {
            let pair = quadratic_morphism(need(args.n, "n", "phi")?).map_err(bad)?;
            vec![("phi1".into(), pair.phi1), ("phi2".into(), pair.phi2)]
        }
        GenKind::Pk => {
            let fam = morphism_power_family(need(args.n, "n", "pk")?, need(args.kmax, "kmax", "pk")?).map_err(bad)?;
            fam.into_iter().enumerate().map(|(k, p)| (format!("P_{k}"), p)).collect()
        }
        GenKind::OddMorphism => {
            let pair = odd_from_args(need(args.m, "m", "odd-morphism")?, &args.g)?;
            vec![("phi1".into(), pair.phi1), ("phi2".into(), pair.phi2)]
        }
        GenKind::Planar => {
            if args.points.is_empty() {
                return Err(usage("planar requires --point"));
            }
            let pts = args
                .points
                .iter()
                .map(|s| match parse_rationals(s)?.as_slice() {
                    [re, im] => Ok(GaussRational::new(re.clone(), im.clone())),
                    _ => Err(usage(format!("point {s:?} must be RE,IM"))),
                })
                .collect::<CliResult<Vec<_>>>()?;
            let (re, im) = planar_vanisher(&pts);
            vec![("re".into(), re), ("im".into(), im)]
        }
        GenKind::Hd | GenKind::Psi => unreachable!("handled above"),
    };

    let certificate = match args.check {
        None => None,
        Some(kind) => {
            let parts = named
                .iter()
                .map(|(label, p)| {
                    let c = match (kind, &lambda) {
                        (CheckKind::Harmonic, _) => check_harmonic(p),
                        (CheckKind::Eigen, Some(l)) => check_eigen(&ExpPoly::plain(p.clone()), l),
                        (CheckKind::Eigen, None) => return Err(usage("--check eigen requires --lambda")),
                    };
                    Ok((label.clone(), c))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let claim = match kind {
                CheckKind::Harmonic => "harmonic",
                CheckKind::Eigen => "eigen",
            };
            Some(merge(claim, parts))
        }
    };
    Ok(Outcome {
        outputs: named.into_iter().map(|(_, p)| p.to_string()).collect(),
        certificate,
        construction,
        text: None,
    })
}

fn odd_from_args(m: usize, g: &[String]) -> CliResult<MorphismPair> {
    let g = g
        .iter()
        .map(|s| parse_expr(s, 1).map(|p| p.to_gaussian()))
        .collect::<CliResult<Vec<_>>>()?;
    odd_morphism(m, &g).map_err(usage)
}

fn morphism(args: &MorphismArgs) -> CliResult<MorphismPair> {
    match (args.n, args.m, &args.phi1, &args.phi2) {
        (Some(n), None, None, None) => quadratic_morphism(n).map_err(usage),
        (None, Some(m), None, None) => odd_from_args(m, &args.g),
        (None, None, Some(p1), Some(p2)) => {
            let arity = need(args.arity, "arity", "--phi1/--phi2")?;
            MorphismPair::new(parse_expr(p1, arity)?, parse_expr(p2, arity)?).map_err(usage)
        }
        _ => Err(usage("give exactly one of --n, --m (with --g), or --phi1 and --phi2 (with --arity)")),
    }
}

fn verify_cmd(args: &VerifyArgs) -> CliResult<Outcome> {
    let p = parse_expr(&args.expr, args.arity)?;
    let lambda = args.eigen.as_deref().map(parse_rational).transpose()?;
    let cert = match (&args.weight, lambda) {
        (None, None) => check_harmonic(&p),
        (weight, lambda) => {
            let h = match weight {
                Some(w) => {
                    let w = w.iter().map(|s| parse_rational(s)).collect::<CliResult<Vec<_>>>()?;
                    ExpPoly::new(w, p).map_err(usage)?
                }
                None => ExpPoly::plain(p),
            };
            check_eigen(&h, &lambda.unwrap_or_else(|| Rational::from_integer(0.into())))
        }
    };
    Ok(Outcome::certified(cert))
}

fn skeleton_poly(poly: Option<SkeletonPoly>, expr: Option<&str>, dim: usize) -> CliResult<Poly> {
    match (poly, expr) {
        (Some(SkeletonPoly::Fd), None) => squared_vandermonde(dim).map_err(usage),
        (Some(SkeletonPoly::Gd), None) => odd_squared_vandermonde(dim).map_err(usage),
        (None, Some(e)) => parse_expr(e, dim),
        _ => Err(usage("give --poly or --expr")),
    }
}

fn skeleton_cmd(args: &SkeletonArgs) -> CliResult<Outcome> {
    let p = skeleton_poly(args.poly, args.expr.as_deref(), args.dim)?;
    check_skeleton_vanishing(&p, args.dim, args.k).map(Outcome::certified).map_err(usage)
}

/// The family plus the default divisor (phi1) when it is the power family.
fn family(args: &FamilyArgs) -> CliResult<(Vec<Poly>, Option<Poly>)> {
    match (args.n, args.members.is_empty()) {
        (Some(n), true) => {
            let kmax = need(args.kmax, "kmax", "--n")?;
            let fam = morphism_power_family(n, kmax).map_err(usage)?;
            Ok((fam, Some(quadratic_morphism(n).map_err(usage)?.phi1)))
        }
        (None, false) => {
            let arity = need(args.arity, "arity", "--member")?;
            let fam = args.members.iter().map(|m| parse_expr(m, arity)).collect::<CliResult<_>>()?;
            Ok((fam, None))
        }
        _ => Err(usage("give either --n with --kmax, or --member (with --arity)")),
    }
}

/// Points `(t_1, ±t_1, t_2, ±t_2, …)`, which lie on `{φ1 = 0}` for the
/// quadratic morphism.
fn diagonal_probes(n: usize, count: usize) -> Vec<Vec<Rational>> {
    (1..=count as i64)
        .map(|j| {
            (0..n as i64)
                .flat_map(|i| {
                    let t = ratio(j + 2 * i, i + 3);
                    let sign = if (j + i) % 2 == 0 { 1 } else { -1 };
                    [t.clone(), t * Rational::from_integer(sign.into())]
                })
                .collect()
        })
        .collect()
}

fn divides_cmd(args: &DividesArgs) -> CliResult<Outcome> {
    let (fam, default_divisor) = family(&args.family)?;
    let arity = fam.first().map(Poly::arity).ok_or_else(|| usage("empty family"))?;
    let divisor = match (&args.divisor, default_divisor) {
        (Some(d), _) => parse_expr(d, arity)?,
        (None, Some(d)) => d,
        (None, None) => return Err(usage("explicit families need --divisor")),
    };
    let mut probes = args.probe.iter().map(|s| parse_rationals(s)).collect::<CliResult<Vec<_>>>()?;
    if let Some(count) = args.probes {
        let n = args.family.n.ok_or_else(|| usage("--probes needs the power family (--n)"))?;
        if args.divisor.is_some() {
            return Err(usage("--probes generates points for phi1 only; use --probe with --divisor"));
        }
        probes.extend(diagonal_probes(n, count));
    }
    let div = check_divides_family(&divisor, &fam).map_err(usage)?;
    if probes.is_empty() {
        return Ok(Outcome::certified(div));
    }
    let zero = common_zero_witness(&divisor, &fam, &probes).map_err(usage)?;
    Ok(Outcome::certified(merge(
        "divides-family",
        vec![("divides".into(), div), ("common-zero".into(), zero)],
    )))
}

fn independent_cmd(args: &FamilyArgs) -> CliResult<Outcome> {
    let (fam, _) = family(args)?;
    check_linear_independence(&fam).map(Outcome::certified).map_err(usage)
}

fn nodal_cmd(args: &NodalArgs) -> CliResult<Outcome> {
    let (p, id) = match (args.poly, &args.expr) {
        (Some(kind), None) => {
            let d = need(args.dim, "dim", "--poly")?;
            let name = match kind {
                SkeletonPoly::Fd => "fd",
                SkeletonPoly::Gd => "gd",
            };
            (skeleton_poly(Some(kind), None, d)?, format!("{name}(d={d})"))
        }
        (None, Some(e)) => {
            let arity = need(args.arity, "arity", "--expr")?;
            let p = parse_expr(e, arity)?;
            let id = p.to_string();
            (p, id)
        }
        _ => return Err(usage("give --poly (with --dim) or --expr (with --arity)")),
    };
    let grid = GridSpec::cube(p.arity(), args.lo, args.hi, args.resolution);
    let f = poly_field(&p);
    let cloud = nodal_sample(&f, &grid, &id).map_err(usage)?;
    let mut csv = Vec::new();
    write_csv(&cloud, &mut csv)?;
    if let Some(path) = &args.csv {
        File::create(path)?.write_all(&csv)?;
    }
    let n = cloud.points.len();
    let cert = Certificate::assemble(
        "nodal-cloud",
        &[id, format!("{grid:?}")],
        vec![
            Subcase::new("cloud nonempty", n > 0, Some(format!("{n} points"))),
            Subcase::new("sign changes reproduce", cloud_is_sound(&f, &cloud), None),
        ],
        None,
    );
    let text = String::from_utf8(csv).expect("csv is ascii");
    Ok(Outcome { outputs: vec![], certificate: Some(cert), construction: "", text: Some(text) })
}

fn boundary_case(label: &str, rep: &BoundaryReport) -> Subcase {
    Subcase::new(
        label,
        rep.passed,
        Some(format!(
            "max |f| = {:e} (tol {:e}), evaluated {}, skipped {}",
            rep.max_abs, rep.tol, rep.evaluated, rep.skipped
        )),
    )
}

fn residual_case(rep: &ResidualReport) -> Subcase {
    Subcase::new(
        format!("fd laplacian at h = {:e}", rep.h),
        rep.passed,
        Some(format!(
            "max residual {:e} (bound {:e}), richardson ratio in [{:.4}, {:.4}], evaluated {}, skipped {}",
            rep.max_residual, rep.bound, rep.min_ratio, rep.max_ratio, rep.evaluated, rep.skipped
        )),
    )
}

fn numeric_certificate<F>(
    claim: &str,
    f: &F,
    pieces: &[Segment],
    samples: usize,
    tol: f64,
    interior: &[Vec<f64>],
    inputs: &[String],
) -> CliResult<Certificate>
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    let mut subcases = Vec::new();
    for seg in pieces {
        let rep = boundary_scan(f, std::slice::from_ref(seg), samples, tol).map_err(usage)?;
        subcases.push(boundary_case(&seg.label, &rep));
    }
    let rep = residual_scan(f, interior, FD_STEP, FD_RESIDUAL_BOUND).map_err(usage)?;
    subcases.push(residual_case(&rep));
    let mut all_inputs = inputs.to_vec();
    all_inputs.push(format!("samples={samples} interior={}", interior.len()));
    Ok(Certificate::assemble(claim, &all_inputs, subcases, None))
}

/// Boundary pieces of the half-strip on which the closed form is defined.
pub fn halfstrip_pieces() -> Vec<Segment> {
    vec![
        Segment::new("x1 = pi/2, x2 in [0, 3]", vec![FRAC_PI_2, 0.0], vec![FRAC_PI_2, 3.0]),
        Segment::new("x2 = 0, x1 in [0, pi/2]", vec![0.0, 0.0], vec![FRAC_PI_2, 0.0]),
    ]
}

/// Interior sample box for the half-strip residual checks.
pub const HALFSTRIP_BOX: ([f64; 2], [f64; 2]) = ([-1.4, 0.1], [1.5, 3.0]);

fn halfstrip_cmd(args: &HalfstripArgs) -> CliResult<Outcome> {
    let f0 = HalfStrip { eps_den: args.eps_den };
    let f = |x: &[f64]| f0.sample(x);
    let interior = halton_points(args.interior, &HALFSTRIP_BOX.0, &HALFSTRIP_BOX.1);
    let cert = numeric_certificate(
        "halfstrip",
        &f,
        &halfstrip_pieces(),
        args.samples,
        TOL_BOUNDARY,
        &interior,
        &[format!("eps_den={:e}", args.eps_den)],
    )?;
    Ok(Outcome::certified(cert))
}

/// Boundary tolerance for the strip functions: `|sin(fl(π))|` times the
/// largest prefactor on `x1 ∈ [-2, 2]`, with headroom.
pub fn strip_tolerance() -> f64 {
    1e-12 * 2f64.exp()
}

pub fn strip_pieces(sinh: bool) -> Vec<Segment> {
    let mut pieces = vec![
        Segment::new("x2 = 0, x1 in [-2, 2]", vec![-2.0, 0.0], vec![2.0, 0.0]),
        Segment::new("x2 = pi, x1 in [-2, 2]", vec![-2.0, PI], vec![2.0, PI]),
    ];
    if sinh {
        pieces.push(Segment::new("x1 = 0, x2 in [0, pi]", vec![0.0, 0.0], vec![0.0, PI]));
    }
    pieces
}

/// Interior sample box for the strip residual checks. It is offset so that no
/// sample lands on `x1 = 0`, where `sinh(x1)·sin(x2)` has no truncation error
/// and the convergence ratio is undefined.
pub const STRIP_BOX: ([f64; 2], [f64; 2]) = ([-1.9, 0.1], [2.1, PI - 0.1]);

fn strip_cmd(args: &StripArgs) -> CliResult<Outcome> {
    let interior = halton_points(args.interior, &STRIP_BOX.0, &STRIP_BOX.1);
    let cert = match args.function {
        StripFunction::ExpSin => {
            let f = |x: &[f64]| Some(strip_exp_sin(x[0], x[1]));
            numeric_certificate("strip", &f, &strip_pieces(false), args.samples, strip_tolerance(), &interior, &["exp(x1)*sin(x2)".into()])?
        }
        StripFunction::SinhSin => {
            let f = |x: &[f64]| Some(strip_sinh_sin(x[0], x[1]));
            numeric_certificate("strip", &f, &strip_pieces(true), args.samples, strip_tolerance(), &interior, &["sinh(x1)*sin(x2)".into()])?
        }
    };
    Ok(Outcome::certified(cert))
}

fn dispatch(cmd: &Command) -> CliResult<(Outcome, &OutputArgs)> {
    Ok(match cmd {
        Command::Gen(a) => (gen(a)?, &a.output),
        Command::Verify(a) => (verify_cmd(a)?, &a.output),
        Command::Skeleton(a) => (skeleton_cmd(a)?, &a.output),
        Command::Divides(a) => (divides_cmd(a)?, &a.family.output),
        Command::Independent(a) => (independent_cmd(a)?, &a.output),
        Command::Conformal(a) => (Outcome::certified(check_conformality(&morphism(&a.morphism)?)), &a.output),
        Command::Compose(a) => {
            let outer = parse_expr(&a.outer, 2)?;
            let m = morphism(&a.morphism)?;
            (Outcome::certified(check_composition(&outer, &m).map_err(usage)?), &a.output)
        }
        Command::Nodal(a) => (nodal_cmd(a)?, &a.output),
        Command::Halfstrip(a) => (halfstrip_cmd(a)?, &a.output),
        Command::Strip(a) => (strip_cmd(a)?, &a.output),
    })
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => builder = builder.num_threads(n),
            _ => return Err(format!("{THREADS_ENV} must be a positive integer, got {v:?}")),
        }
    }
    builder.build().map_err(|e| e.to_string())
}

/// Rendered output, its destination and whether every certificate passed.
fn execute(cli: &Cli) -> CliResult<(String, Option<PathBuf>, bool)> {
    let (outcome, output) = dispatch(&cli.command)?;
    let text = render(&outcome, output)?;
    let passed = outcome.certificate.as_ref().is_none_or(Certificate::passed);
    Ok((text, output.out.clone(), passed))
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    let result = pool
        .install(|| execute(&cli))
        .and_then(|(text, out, passed)| Ok(emit(&text, out.as_ref(), stdout).map(|_| passed)?));
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
