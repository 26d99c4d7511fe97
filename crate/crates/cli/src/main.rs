//! `canalsym`: symmetries of canal surfaces and Dupin cyclides, symmetric
//! blends and meshes from JSON descriptions.

mod report;
mod spec;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use canalsym::blend::{hermite_blend, symmetric_blend, Blend};
use canalsym::canal::{sym_canal, CanalSurface};
use canalsym::dupin::{dupin_symmetries, is_super_symmetric};
use canalsym::mesh::{export_obj, sample_surface};
use canalsym::ratpoly::{int, Rat};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use spec::{pair_json, rat_json, rational, PairJson, Spec, SpecError};

#[derive(Parser)]
#[command(name = "canalsym", version, about = "Symmetries of rational canal surfaces and Dupin cyclides")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON description, or `-` for standard input.
    spec: PathBuf,
    /// Write the output here instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetries of a canal surface.
    Symmetries {
        #[command(flatten)]
        common: Common,
        /// Machine-readable report.
        #[arg(long)]
        json: bool,
    },
    /// Type, super-symmetry and symmetry group of a Dupin cyclide.
    Dupin {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        json: bool,
    },
    /// Blend patch between two canal surfaces, written as a canal description.
    Blend {
        #[command(flatten)]
        common: Common,
        /// Order of contact at both junctions (overrides the description).
        #[arg(long)]
        continuity: Option<usize>,
    },
    /// Triangle mesh in OBJ format.
    Mesh {
        #[command(flatten)]
        common: Common,
        #[arg(long, num_args = 2, value_names = ["T_LO", "T_HI"], allow_hyphen_values = true)]
        window: Option<Vec<String>>,
        #[arg(long, num_args = 2, value_names = ["NT", "NS"], default_values_t = [48, 24])]
        grid: Vec<usize>,
        #[arg(long)]
        continuity: Option<usize>,
    },
}

enum Failure {
    Spec(String),
    Kernel(canalsym::Error),
    Output(io::Error),
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::Spec(e.0)
    }
}

impl From<canalsym::Error> for Failure {
    fn from(e: canalsym::Error) -> Self {
        match e {
            canalsym::Error::Parse(m) | canalsym::Error::InvalidParams(m) => Failure::Spec(m),
            e => Failure::Kernel(e),
        }
    }
}

type Run<T> = Result<T, Failure>;

fn load(path: &Path) -> Run<Spec> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(path)
    }
    .map_err(|e| Failure::Spec(format!("{}: {e}", path.display())))?;
    Ok(spec::parse(&text)??)
}

fn emit(output: &Option<PathBuf>, bytes: &[u8]) -> Run<()> {
    match output {
        Some(p) => fs::write(p, bytes),
        None => io::stdout().write_all(bytes),
    }
    .map_err(Failure::Output)
}

fn pretty<T: Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s.into_bytes()
}

fn symmetries(common: &Common, json: bool) -> Run<()> {
    let Spec::Canal { surface, .. } = load(&common.spec)? else {
        return Err(Failure::Spec("kind: `symmetries` expects a canal description".into()));
    };
    let rep = sym_canal(&surface)?;
    let out = if json {
        pretty(&report::report_json(&rep, None))
    } else {
        report::report_text(&rep, None).into_bytes()
    };
    emit(&common.output, &out)
}

fn dupin(common: &Common, json: bool) -> Run<()> {
    let Spec::Dupin(d) = load(&common.spec)? else {
        return Err(Failure::Spec("kind: `dupin` expects a dupin description".into()));
    };
    let rep = dupin_symmetries(&d)?;
    let sup = is_super_symmetric(&d);
    let out = if json {
        pretty(&report::report_json(&rep, Some((&d, sup))))
    } else {
        report::report_text(&rep, Some((&d, sup))).into_bytes()
    };
    emit(&common.output, &out)
}

fn build_blend(req: &spec::BlendRequest, continuity: Option<usize>) -> Run<Blend> {
    let n = continuity.or(req.continuity).unwrap_or(1);
    let [s1, s2] = &req.surfaces;
    Ok(match &req.symmetry {
        Some(f) => symmetric_blend(s1, &req.t1, s2, &req.t2, f, n)?,
        None => hermite_blend(s1, &req.t1, s2, &req.t2, n)?,
    })
}

#[derive(Serialize)]
struct BlendOut {
    kind: &'static str,
    #[serde(flatten)]
    pair: PairJson,
    window: [String; 2],
    control_points: Vec<[String; 3]>,
    radius_bernstein: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    moebius: Option<[String; 4]>,
}

fn blend(common: &Common, continuity: Option<usize>) -> Run<()> {
    let Spec::Blend(req) = load(&common.spec)? else {
        return Err(Failure::Spec("kind: `blend` expects a blend description".into()));
    };
    let b = build_blend(&req, continuity)?;
    let out = BlendOut {
        kind: "canal",
        pair: pair_json(&b.surface.spine, &b.surface.radius),
        window: ["0".into(), "1".into()],
        control_points: b.spine.control_points.iter().map(|p| p.clone().map(|x| rat_json(&x))).collect(),
        radius_bernstein: b.radius.radius.coefficients.iter().map(rat_json).collect(),
        moebius: b.moebius.as_ref().map(report::moebius_json),
    };
    emit(&common.output, &pretty(&out))?;
    if common.output.is_some() {
        println!("blend spine of degree {}, r(t) = {}", b.spine.degree(), b.surface.radius);
    }
    Ok(())
}

fn mesh(common: &Common, window: &Option<Vec<String>>, grid: &[usize], continuity: Option<usize>) -> Run<()> {
    let (surface, default): (CanalSurface, Option<(Rat, Rat)>) = match load(&common.spec)? {
        Spec::Canal { surface, window } => (surface, window),
        Spec::Dupin(d) => (CanalSurface::new(d.pair1.0.clone(), d.pair1.1.clone()), None),
        Spec::Blend(req) => (build_blend(&req, continuity)?.surface, Some((int(0), int(1)))),
    };
    let (lo, hi) = match window {
        Some(w) => (rational("--window", &w[0])?, rational("--window", &w[1])?),
        None => default.unwrap_or((int(-1), int(1))),
    };
    let m = sample_surface(&surface, (&lo, &hi), grid[0], grid[1])?;
    let mut buf = Vec::new();
    export_obj(&m, &mut buf)?;
    emit(&common.output, &buf)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Symmetries { common, json } => symmetries(common, *json),
        Command::Dupin { common, json } => dupin(common, *json),
        Command::Blend { common, continuity } => blend(common, *continuity),
        Command::Mesh { common, window, grid, continuity } => mesh(common, window, grid, *continuity),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Spec(m)) => {
            eprintln!("canalsym: invalid description: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Kernel(e)) => {
            eprintln!("canalsym: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Output(e)) => {
            eprintln!("canalsym: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}
