use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use torickit::curve::{
    avoidance_verify, interpolate_avoiding, interpolate_through_points, Ideal, Param, PointSpec,
    Verdict, DEFAULT_SEED,
};
use torickit::divisor::{ft_certificate, InvariantDivisor};
use torickit::document::{parse_as, Document, DocumentKind};
use torickit::fan::{list_orbits, validate_fan};
use torickit::isogeny::{reverse_isogeny, smoothing_isogeny, Isogeny};
use torickit::plan::{main_lemma_plan, main_theorem_plan, CurveOptions, LocusSpec};
use torickit::refine::{qfactorialize, resolve_marked, resolve_to_smooth};
use torickit::{Error, Fan};

#[derive(Parser)]
#[command(
    name = "torickit",
    version,
    about = "Exact toolkit for complete toric varieties"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Compact,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fan axioms.
    Validate { fan: PathBuf },
    /// List all torus orbits.
    Orbits { fan: PathBuf },
    /// Simplicialize without adding rays.
    Qfactorialize { fan: PathBuf },
    /// Resolve singularities, or only those at the marked fixed points.
    Resolve {
        fan: PathBuf,
        #[arg(long, value_parser = parse_cone)]
        marked: Vec<ConeArg>,
    },
    #[command(subcommand)]
    Isogeny(IsogenyCommand),
    /// Fano-type certificate for an ample divisor.
    FtCert { fan: PathBuf, divisor: PathBuf },
    #[command(subcommand)]
    Curve(CurveCommand),
    #[command(subcommand)]
    Plan(PlanCommand),
}

#[derive(Subcommand)]
enum IsogenyCommand {
    /// Isogeny making the given cone smooth.
    Smooth {
        fan: PathBuf,
        #[arg(value_parser = parse_cone)]
        cone: ConeArg,
    },
    /// Isogeny in the opposite direction.
    Reverse { isogeny: PathBuf },
}

#[derive(Args)]
struct PointArgs {
    /// Cox coordinates, e.g. `1,0,2`.
    #[arg(long = "point", value_parser = PointSpec::parse)]
    points: Vec<PointSpec>,
    /// Parameter `s:t` for the matching point.
    #[arg(long = "param", value_parser = Param::parse)]
    params: Vec<Param>,
    #[arg(long)]
    degree: Option<usize>,
    /// Falls back to `TORICKIT_SEED`.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Curve through points at given parameters.
    Interpolate {
        fan: PathBuf,
        #[command(flatten)]
        args: PointArgs,
    },
    /// Intersect a curve with ideals.
    Verify {
        curve: PathBuf,
        ideals: Vec<PathBuf>,
        /// Allowed hit `s:t=x0,x1,…`.
        #[arg(long = "allow", value_parser = parse_allowed)]
        allowed: Vec<(Param, PointSpec)>,
    },
    /// Curve through points meeting the ideals nowhere else.
    Avoid {
        fan: PathBuf,
        ideals: Vec<PathBuf>,
        #[command(flatten)]
        args: PointArgs,
    },
}

#[derive(Subcommand)]
enum PlanCommand {
    /// Two-point scaffold; the locus defaults to all codimension-two orbits.
    MainLemma {
        fan: PathBuf,
        #[arg(long = "point", value_parser = PointSpec::parse, num_args = 1)]
        points: Vec<PointSpec>,
        #[arg(long = "orbit", value_parser = parse_cone, conflicts_with = "ideals")]
        orbits: Vec<ConeArg>,
        #[arg(long = "ideal")]
        ideals: Vec<PathBuf>,
    },
    /// Many-point scaffold.
    MainTheorem {
        fan: PathBuf,
        #[arg(long = "ideal")]
        ideals: Vec<PathBuf>,
        #[command(flatten)]
        args: PointArgs,
    },
}

/// Ray indices `i,j,…` of a cone.
#[derive(Clone)]
struct ConeArg(Vec<usize>);

fn parse_cone(s: &str) -> Result<ConeArg, String> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(ConeArg)
}

fn cones(args: Vec<ConeArg>) -> Vec<Vec<usize>> {
    args.into_iter().map(|c| c.0).collect()
}

fn parse_allowed(s: &str) -> Result<(Param, PointSpec), Error> {
    let (p, q) = s
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("{s:?} is not of the form s:t=point")))?;
    Ok((Param::parse(p)?, PointSpec::parse(q)?))
}

enum Failure {
    Verdict(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAmple | Error::AvoidanceRetryExceeded { .. } => {
                Failure::Verdict(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Output {
    doc: Document,
    verdict: bool,
}

fn read<T: DeserializeOwned>(path: &Path, kind: DocumentKind) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_as(&text, kind).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_fan(path: &Path) -> Result<Fan, Failure> {
    let fan: Fan = read(path, DocumentKind::Fan)?;
    if let Some(v) = validate_fan(&fan).violations.first() {
        return Err(Failure::Input(v.to_string()));
    }
    Ok(fan)
}

fn read_ideals(paths: &[PathBuf]) -> Result<Vec<Ideal>, Failure> {
    paths.iter().map(|p| read(p, DocumentKind::Ideal)).collect()
}

fn doc<T: Serialize>(kind: DocumentKind, payload: &T) -> Result<Output, Failure> {
    Ok(Output {
        doc: Document::new(kind, payload)?,
        verdict: true,
    })
}

fn seed(arg: Option<u64>) -> Result<u64, Failure> {
    match arg {
        Some(s) => Ok(s),
        None => match std::env::var("TORICKIT_SEED") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|e| Failure::Input(format!("TORICKIT_SEED={v:?}: {e}"))),
            Err(_) => Ok(DEFAULT_SEED),
        },
    }
}

fn params_for(args: &PointArgs) -> Vec<Param> {
    if args.params.is_empty() {
        torickit::plan::default_params(args.points.len())
    } else {
        args.params.clone()
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Validate { fan } => {
            let fan: Fan = read(&fan, DocumentKind::Fan)?;
            let report = validate_fan(&fan);
            if let Some(v) = report.violations.first() {
                return Err(Failure::Input(v.to_string()));
            }
            doc(DocumentKind::Report, &report)
        }
        Command::Orbits { fan } => doc(DocumentKind::Report, &list_orbits(&read_fan(&fan)?)),
        Command::Qfactorialize { fan } => {
            doc(DocumentKind::Report, &qfactorialize(&read_fan(&fan)?)?)
        }
        Command::Resolve { fan, marked } => {
            let fan = read_fan(&fan)?;
            let r = if marked.is_empty() {
                let q = qfactorialize(&fan)?;
                let mut r = resolve_to_smooth(&q.fan)?;
                r.steps.splice(0..0, q.steps);
                r
            } else {
                resolve_marked(&fan, &cones(marked))?
            };
            doc(DocumentKind::Report, &r)
        }
        Command::Isogeny(IsogenyCommand::Smooth { fan, cone }) => doc(
            DocumentKind::Isogeny,
            &smoothing_isogeny(&read_fan(&fan)?, &cone.0)?,
        ),
        Command::Isogeny(IsogenyCommand::Reverse { isogeny }) => {
            let iso: Isogeny = read(&isogeny, DocumentKind::Isogeny)?;
            doc(DocumentKind::Isogeny, &reverse_isogeny(&iso))
        }
        Command::FtCert { fan, divisor } => {
            let fan = read_fan(&fan)?;
            let d: InvariantDivisor = read(&divisor, DocumentKind::Divisor)?;
            doc(DocumentKind::Certificate, &ft_certificate(&fan, &d)?)
        }
        Command::Curve(CurveCommand::Interpolate { fan, args }) => {
            let fan = read_fan(&fan)?;
            let params = params_for(&args);
            let d = args.degree.unwrap_or(args.points.len().max(1));
            let c = interpolate_through_points(&fan, &args.points, &params, d, seed(args.seed)?)?;
            doc(DocumentKind::Curve, &c)
        }
        Command::Curve(CurveCommand::Verify {
            curve,
            ideals,
            allowed,
        }) => {
            let c = read(&curve, DocumentKind::Curve)?;
            let report = avoidance_verify(&c, &read_ideals(&ideals)?, &allowed)?;
            let mut out = doc(DocumentKind::Report, &report)?;
            out.verdict = report.verdict == Verdict::Disjoint;
            Ok(out)
        }
        Command::Curve(CurveCommand::Avoid { fan, ideals, args }) => {
            let fan = read_fan(&fan)?;
            let params = params_for(&args);
            let d = args.degree.unwrap_or(args.points.len().max(1));
            let (c, _) = interpolate_avoiding(
                &fan,
                &args.points,
                &params,
                &read_ideals(&ideals)?,
                d,
                seed(args.seed)?,
            )?;
            doc(DocumentKind::Curve, &c)
        }
        Command::Plan(PlanCommand::MainLemma {
            fan,
            points,
            orbits,
            ideals,
        }) => {
            let fan = read_fan(&fan)?;
            let [p, q] = points.as_slice() else {
                return Err(Failure::Input(format!(
                    "expected two --point values, found {}",
                    points.len()
                )));
            };
            let locus = if !orbits.is_empty() {
                LocusSpec::Orbits {
                    cones: cones(orbits),
                }
            } else if !ideals.is_empty() {
                LocusSpec::Ideals {
                    components: read_ideals(&ideals)?,
                }
            } else {
                LocusSpec::InvariantLocus
            };
            doc(DocumentKind::Plan, &main_lemma_plan(&fan, p, q, &locus)?)
        }
        Command::Plan(PlanCommand::MainTheorem { fan, ideals, args }) => {
            let fan = read_fan(&fan)?;
            let opts = CurveOptions {
                degree: args.degree,
                seed: seed(args.seed)?,
            };
            doc(
                DocumentKind::Plan,
                &main_theorem_plan(&fan, &args.points, &read_ideals(&ideals)?, &opts)?,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let text = match format {
                Format::Json => out.doc.emit(),
                Format::Compact => out.doc.emit_compact(),
            };
            print!("{text}");
            if out.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Verdict(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
