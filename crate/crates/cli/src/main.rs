//! `nilproj` command-line front end. Results go to stdout as JSON,
//! diagnostics to stderr. Exit codes: 0 success, 1 mathematical
//! violation, 2 input error.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilproj::catalog::{self, CatalogEntry, CirclePoint};
use nilproj::grassmann::{beta_basis, jump_indices, CellDomain, Flag, JumpSet};
use nilproj::io::{parse_vector, AlgebraFile, SubspaceFile};
use nilproj::lie::{bch_multiply, DEFAULT_MAX_DIM};
use nilproj::nlproj::{factorize, linear_projection, smoothness_probe, NonlinearProjector};
use nilproj::probe::Grid;
use nilproj::{Error, LieAlgebra, Rational, Scalar, Subspace, Vector};
use serde_json::{json, Value};

use report::{scalars, vector, vectors, CliError};

#[derive(Parser, Debug)]
#[command(
    name = "nilproj",
    version,
    about = "Oblique projections along subalgebras of nilpotent Lie algebras"
)]
struct Cli {
    /// Use floating point arithmetic instead of exact rationals.
    #[arg(long, global = true)]
    float: bool,

    /// Relative tolerance for float checks (ignored by the exact backend).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Algebra file (JSON).
    algebra: PathBuf,

    /// Flag basis as a subspace file with m columns; defaults to the algebra's basis.
    #[arg(long)]
    flag: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an algebra and its flag.
    Verify {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Group product X·Y.
    Bch {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated coordinates or @file with a JSON array.
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Second factor, same format.
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Jump indices of a subspace with respect to the flag.
    Jump {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Subspace file (JSON).
        subspace: PathBuf,
    },
    /// Adapted basis of a subspace.
    Beta {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Subspace file (JSON).
        subspace: PathBuf,
        /// Jump set to use instead of the computed one, e.g. "1,3".
        #[arg(long)]
        jump_set: Option<String>,
        /// Accept any subspace transversal to U_e.
        #[arg(long)]
        extended: bool,
    },
    /// Project a point along a subalgebra.
    Project {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Subalgebra file (JSON).
        subalgebra: PathBuf,
        /// Point to project, comma-separated or @file.
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// Linear oblique projection onto g_e along the subalgebra.
        #[arg(long, conflicts_with = "nonlinear")]
        linear: bool,
        /// Nonlinear projection (the default).
        #[arg(long)]
        nonlinear: bool,
    },
    /// Write a point as a product of block sums.
    Factorize {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Point to factorize, comma-separated or @file.
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// Blocks of 1-based flag indices, e.g. "1,3;2".
        #[arg(long)]
        blocks: String,
    },
    /// Divided-difference smoothness probe of θ ↦ Π(X, h_θ); always runs in floats.
    Probe {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// "hz" for the circle family, or a subspace file for a constant family.
        #[arg(long)]
        family: String,
        /// Base point, comma-separated or @file.
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// "start,end,intervals".
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Print a built-in algebra in the file format, or list the names.
    Catalog {
        /// Catalog name such as heisenberg, five-dim, abelian-4, threadlike-5.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Evaluate the recorded facts at eight exact circle points instead.
        #[arg(long)]
        facts: bool,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn max_dim() -> Result<usize, CliError> {
    match std::env::var("NILPROJ_MAX_DIM") {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::Lib(Error::Parse(format!("NILPROJ_MAX_DIM={v:?}")))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn load<S: Scalar>(args: &AlgebraArgs) -> Result<(LieAlgebra<S>, Flag<S>), CliError> {
    let file = AlgebraFile::from_json(&read(&args.algebra)?)?;
    let alg = file.to_algebra_with_cap(max_dim()?)?;
    let flag = match &args.flag {
        Some(p) => SubspaceFile::from_json(&read(p)?)?.to_flag()?,
        None => Flag::standard(alg.dim()),
    };
    if flag.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: flag.dim(),
        }
        .into());
    }
    Ok((alg, flag))
}

fn load_subspace<S: Scalar>(path: &Path) -> Result<Subspace<S>, CliError> {
    Ok(SubspaceFile::from_json(&read(path)?)?.to_subspace()?)
}

fn load_vector<S: Scalar>(text: &str, dim: usize) -> Result<Vector<S>, CliError> {
    let v = match text.strip_prefix('@') {
        Some(path) => {
            let items: Vec<String> = serde_json::from_str(&read(Path::new(path))?)
                .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            parse_vector(&items.join(","))?
        }
        None => parse_vector(text)?,
    };
    if v.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.dim(),
        }
        .into());
    }
    Ok(v)
}

fn parse_indices(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Lib(Error::Parse(format!("bad index {s:?}"))))
        })
        .collect()
}

fn jump_json(e: &JumpSet) -> Value {
    json!(e.indices())
}

fn run<S: Scalar>(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Verify { alg } => {
            let (alg, flag) = load::<S>(alg)?;
            if !alg.is_jordan_holder_basis(flag.vectors())? {
                return Err(Error::NotJordanHolderFlag.into());
            }
            Ok(json!({
                "valid": true,
                "dim": alg.dim(),
                "nilpotency_class": alg.nilpotency_class(),
                "center_dim": alg.center().dim(),
                "derived_dim": alg.derived_algebra().dim(),
                "jordan_holder_flag": true,
            }))
        }
        Command::Bch { alg, x, y } => {
            let (alg, _) = load::<S>(alg)?;
            let x = load_vector(x, alg.dim())?;
            let y = load_vector(y, alg.dim())?;
            Ok(json!({ "product": vector(&bch_multiply(&alg, &x, &y)?) }))
        }
        Command::Jump { alg, subspace } => {
            let (alg, flag) = load::<S>(alg)?;
            let w = load_subspace::<S>(subspace)?;
            alg.check_subspace(&w)?;
            let e = jump_indices(&flag, &w)?;
            Ok(json!({
                "jump_set": jump_json(&e),
                "complement": jump_json(&e.complement()),
                "dim": w.dim(),
                "codim": w.codim(),
                "is_subalgebra": alg.is_subalgebra(&w)?,
            }))
        }
        Command::Beta {
            alg,
            subspace,
            jump_set,
            extended,
        } => {
            let (alg, flag) = load::<S>(alg)?;
            let w = load_subspace::<S>(subspace)?;
            alg.check_subspace(&w)?;
            let e = match jump_set {
                Some(t) => JumpSet::new(flag.dim(), parse_indices(t)?)?,
                None => jump_indices(&flag, &w)?,
            };
            let domain = if *extended {
                CellDomain::Extended
            } else {
                CellDomain::Strict
            };
            let b = beta_basis(&flag, &e, &w, domain)?;
            Ok(json!({ "jump_set": jump_json(&e), "basis": vectors(&b.vectors) }))
        }
        Command::Project {
            alg,
            subalgebra,
            point,
            linear,
            ..
        } => {
            let (alg, flag) = load::<S>(alg)?;
            let h = load_subspace::<S>(subalgebra)?;
            alg.check_subspace(&h)?;
            let x = load_vector(point, alg.dim())?;
            if *linear {
                let e = jump_indices(&flag, &h)?;
                let p = linear_projection(&flag, &h, &x)?;
                let h_part = &x - &p;
                return Ok(json!({
                    "mode": "linear",
                    "jump_set": jump_json(&e),
                    "projection": vector(&p),
                    "h_part": vector(&h_part),
                }));
            }
            let p = NonlinearProjector::with_tolerance(&alg, &flag, &h, cli.tol)?;
            let out = p.project(&x)?;
            Ok(json!({
                "mode": "nonlinear",
                "jump_set": jump_json(p.jump_set()),
                "projection": vector(&out.projection),
                "h_part": vector(&out.h_part),
                "t": scalars(&out.t),
                "membership_residual": out.residual,
                "membership_verified": true,
            }))
        }
        Command::Factorize { alg, point, blocks } => {
            let (alg, flag) = load::<S>(alg)?;
            let y = load_vector(point, alg.dim())?;
            let blocks = blocks
                .split(';')
                .map(parse_indices)
                .collect::<Result<Vec<_>, _>>()?;
            let f = factorize(&alg, flag.vectors(), &blocks, &y)?;
            Ok(json!({ "t": scalars(&f.t), "factors": vectors(&f.factors) }))
        }
        Command::Probe {
            alg,
            family,
            point,
            grid,
        } => {
            let (alg, flag) = load::<f64>(alg)?;
            let x = load_vector::<f64>(point, alg.dim())?;
            let (a, b, n) = parse_grid(grid)?;
            let g = Grid::new(a, b, n)?;
            let rep = if family == "hz" {
                let entry = CatalogEntry {
                    algebra: alg.clone(),
                    flag: flag.clone(),
                    family: catalog::Family::Custom,
                };
                smoothness_probe(
                    &alg,
                    &flag,
                    |t| entry.hz_subalgebra(&CirclePoint::from_angle(t)),
                    &x,
                    &g,
                )?
            } else {
                let h = load_subspace::<f64>(Path::new(family))?;
                smoothness_probe(&alg, &flag, |_| Ok(h.clone()), &x, &g)?
            };
            Ok(json!({
                "jump_set": jump_json(&rep.jump_set),
                "max_second_difference": rep.study.max_second_difference,
                "refinement_gaps": rep.study.refinement_gaps,
                "observed_order": rep.study.observed_order,
                "smooth": rep.study.smooth,
            }))
        }
        Command::Catalog { name, list, facts } => {
            if *list {
                return Ok(json!(catalog::names()));
            }
            let name = name.as_deref().expect("clap requires a name");
            let entry = catalog::by_name::<S>(name)?;
            if *facts {
                let points = catalog::sample_circle_points::<S>();
                let out = entry.check_facts(&points)?;
                let all = out.iter().all(|f| f.holds);
                let facts: Vec<Value> = out
                    .iter()
                    .map(|f| json!({ "fact": f.description, "holds": f.holds }))
                    .collect();
                return Ok(json!({ "name": entry.name(), "all_hold": all, "facts": facts }));
            }
            let file = AlgebraFile::from_algebra(&entry.algebra);
            Ok(serde_json::to_value(file).expect("plain data serializes"))
        }
    }
}

fn parse_grid(text: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || {
        CliError::Lib(Error::Parse(format!(
            "grid must be start,end,intervals: {text:?}"
        )))
    };
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, b, n] = parts[..] else {
        return Err(bad());
    };
    let num = |s: &str| -> Result<f64, CliError> { Ok(nilproj::io::parse_scalar::<f64>(s)?) };
    Ok((num(a)?, num(b)?, n.parse().map_err(|_| bad())?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return report::fail(CliError::Lib(Error::BadParameter(format!(
            "tolerance must be positive, got {}",
            cli.tol
        ))));
    }
    let result = if cli.float {
        run::<f64>(&cli)
    } else {
        run::<Rational>(&cli)
    };
    match result {
        Ok(v) => {
            report::emit(&v);
            ExitCode::SUCCESS
        }
        Err(e) => report::fail(e),
    }
}
