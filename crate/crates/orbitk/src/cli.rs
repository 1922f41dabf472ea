//! Argument parsing and dispatch.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use orbitk_core::abgroup::parse_int_vector;
use orbitk_core::cluster::{cluster_k0, cluster_triangle, kleinian_k0, kleinian_matrix};
use orbitk_core::dgcore::{
    check_h0_equivalence, comparison_map_check, epsilon_quasi_iso_check, h0_category, orbit_n,
    orbit_z, square_zero, DgEndofunctor, FiniteDgCategory,
};
use orbitk_core::exactla::{cokernel_presentation, snf};
use orbitk_core::field::{Field, PrimeField, Rationals};
use orbitk_core::mukai::{
    builtin_model, curve_orbit_kh0, line_bundle_hp, line_bundle_hp_map, spherical_hp,
    spherical_k0_map, spherical_k0_orbit, spherical_projection, CohomologyModel, CurveK0,
};
use orbitk_core::orbit_triangle::{
    fundamental_split, hp_sixterm_over, orbit_groups, suspension_orbit, FieldKind,
};
use orbitk_core::warning::Warning;
use orbitk_core::{Error, Quiver};
use serde_json::{json, Value};

use crate::report::{InputDigest, RunReport, WarningJson};
use crate::schema::{
    self, field_matrix, int_matrix, matrix_line, render_int_matrix, render_matrix, CategoryJson,
    DegreeResultJson, FunctorJson, MatrixJson, ModelJson, QuiverJson, SpecJson,
};
use crate::selfcheck;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 1,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInvariant(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "orbitk", version, about = "Exact invariants of dg orbit categories")]
pub struct Cli {
    /// Print the machine-readable report instead of the human summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct QuiverSource {
    /// Preset: A<s>, D<s>, E6, E7, E8, kronecker<m>.
    #[arg(long)]
    quiver: Option<String>,
    /// JSON file with "vertices" and "arrows".
    #[arg(long)]
    quiver_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ModelSource {
    /// JSON cohomology model.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Built-in model: point, P1, genus<g>, k3.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DgCheck {
    All,
    Orbit,
    OrbitZ,
    Epsilon,
    Comparison,
    SquareZero,
    H0,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// K₀ of the Kleinian singularity of type A_s.
    Kleinian {
        #[arg(long)]
        s: usize,
    },
    /// K₀ of the n-cluster category of a quiver.
    ClusterK0 {
        #[command(flatten)]
        quiver: QuiverSource,
        #[arg(long)]
        n: u64,
    },
    /// Orbit long exact sequence for E(kQ) under τ⁻¹Σⁿ.
    ClusterTriangle {
        #[command(flatten)]
        quiver: QuiverSource,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Invariant spec whose groups give E(k).
        #[arg(long)]
        template: PathBuf,
    },
    /// Cartan, Euler and Coxeter matrices of a quiver.
    Coxeter {
        #[command(flatten)]
        quiver: QuiverSource,
    },
    /// Degreewise groups of the orbit category from an invariant spec.
    OrbitTriangle {
        #[arg(long)]
        spec: PathBuf,
        /// Replace every automorphism by (−1)^n·Id.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "identity")]
        suspension: Option<i64>,
        /// Replace every automorphism by the identity.
        #[arg(long)]
        identity: bool,
    },
    /// Dimensions of HP± of the orbit from HP±(F).
    HpSixterm {
        /// Matrix of HP⁺(F), e.g. "[[1,0],[2,1]]".
        #[arg(long)]
        f_even: String,
        /// Matrix of HP⁻(F).
        #[arg(long)]
        f_odd: String,
        /// Q or F<p>.
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// HP± of the orbit by − ⊗ L ∘ Σⁿ on a cohomology model.
    HpLineBundle {
        #[command(flatten)]
        model: ModelSource,
        /// deg L for built-in curve models.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// K₀ of the orbit by a spherical twist.
    SphericalK0 {
        /// Euler characteristics χ(E_i, E), comma separated.
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        /// Coordinates of [E], comma separated.
        #[arg(long, allow_hyphen_values = true)]
        e: String,
    },
    /// HP± of the orbit by a spherical twist, via the Mukai projection.
    SphericalHp {
        #[command(flatten)]
        model: ModelSource,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        degree: i64,
    },
    /// KH₀ of the orbit of a curve by − ⊗ L ∘ Σⁿ.
    CurveKh0 {
        /// Pic(C) as a group, e.g. "Z" or "Z (+) Z/2".
        #[arg(long)]
        pic: String,
        /// Coordinates of [L] in the generators of Pic(C).
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Build orbit categories of a finite dg category and run the checks.
    DgOrbit {
        #[arg(long)]
        cat: PathBuf,
        /// Defaults to the identity functor.
        #[arg(long)]
        functor: Option<PathBuf>,
        #[arg(long = "N", default_value_t = 4)]
        bound: usize,
        #[arg(long = "P", default_value_t = 4)]
        stages: usize,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        check: Vec<DgCheck>,
    },
    /// Smith normal form and cokernel of an integer matrix.
    Snf {
        /// Matrix, e.g. "[[-2,1],[-1,-1]]".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Randomized property checks, seeded by ORBITK_SEED.
    Selfcheck {
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

/// Result of a subcommand before it is rendered.
#[derive(Debug, Default)]
pub struct Outcome {
    pub human: String,
    pub results: Value,
    pub warnings: Vec<Warning>,
}

struct Inputs {
    digest: InputDigest,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        self.digest.file(&path.display().to_string(), text.as_bytes());
        Ok(text)
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Input(format!("invalid JSON in {}: {e}", path.display())))
    }
}

fn inline_matrix(s: &str) -> Result<MatrixJson> {
    serde_json::from_str(s).map_err(|e| CliError::Input(format!("invalid matrix {s:?}: {e}")))
}

/// Parses `args` (without the program name), runs the command and returns
/// the report together with the human-readable output.
pub fn dispatch(args: &[String]) -> (RunReport, String, bool) {
    let argv = std::iter::once("orbitk".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let report = RunReport {
                command: args.to_vec(),
                inputs_digest: InputDigest::new(args).finish(),
                results: Value::Null,
                warnings: Vec::new(),
                error: (code != 0).then(|| e.kind().to_string()),
                exit_status: code,
            };
            return (report, e.render().to_string(), false);
        }
    };
    let mut inputs = Inputs { digest: InputDigest::new(args) };
    let outcome = run(&cli.command, &mut inputs);
    let digest = inputs.digest.finish();
    let report = match outcome {
        Ok(o) => {
            let report = RunReport {
                command: args.to_vec(),
                inputs_digest: digest,
                results: o.results,
                warnings: o.warnings.iter().map(WarningJson::from).collect(),
                error: None,
                exit_status: 0,
            };
            let mut human = o.human;
            for w in &o.warnings {
                let _ = writeln!(human, "warning[{}]: {}", w.code, w.message);
            }
            return (report, human, cli.json);
        }
        Err(e) => RunReport {
            command: args.to_vec(),
            inputs_digest: digest,
            results: Value::Null,
            warnings: Vec::new(),
            error: Some(e.to_string()),
            exit_status: e.exit_code(),
        },
    };
    let human = format!("error: {}\n", report.error.as_deref().unwrap_or_default());
    (report, human, cli.json)
}

fn quiver(src: &QuiverSource, inputs: &mut Inputs) -> Result<Quiver> {
    match (&src.quiver, &src.quiver_file) {
        (Some(name), None) => Ok(Quiver::preset(name)?),
        (None, Some(path)) => Ok(inputs.json::<QuiverJson>(path)?.to_core()?),
        _ => Err(CliError::Usage("give exactly one of --quiver, --quiver-file".into())),
    }
}

fn model(src: &ModelSource, degree: i64, inputs: &mut Inputs) -> Result<CohomologyModel> {
    match (&src.model, &src.builtin) {
        (Some(path), None) => Ok(inputs.json::<ModelJson>(path)?.to_core()?),
        (None, Some(name)) => Ok(builtin_model(name, degree)?),
        _ => Err(CliError::Usage("give exactly one of --model, --builtin".into())),
    }
}

fn degree_lines(results: &[DegreeResultJson]) -> String {
    let mut out = String::new();
    for r in results {
        let middle = r.resolved.as_deref().unwrap_or("ambiguous extension");
        let _ = writeln!(out, "n={}: {}  [coker {} | ker {}]", r.degree, middle, r.coker, r.ker);
    }
    out
}

fn run(cmd: &Command, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        Command::Kleinian { s } => {
            let g = kleinian_k0(*s)?;
            let m = render_int_matrix(&kleinian_matrix(*s));
            Ok(Outcome {
                human: format!("{g}\n"),
                results: json!({ "s": s, "group": g.to_string(), "matrix": m }),
                warnings: Vec::new(),
            })
        }
        Command::ClusterK0 { quiver: src, n } => {
            let q = quiver(src, inputs)?;
            let c = cluster_k0(&q, *n);
            let m = render_int_matrix(&c.matrix);
            Ok(Outcome {
                human: format!("{}\nmatrix: {}\n", c.group, matrix_line(&m)),
                results: json!({
                    "vertices": q.vertices(),
                    "n": n,
                    "group": c.group.to_string(),
                    "matrix": m,
                }),
                warnings: c.warnings,
            })
        }
        Command::ClusterTriangle { quiver: src, n, template } => {
            let q = quiver(src, inputs)?;
            let spec = inputs.json::<SpecJson>(template)?.to_core()?;
            let rows: Vec<DegreeResultJson> =
                cluster_triangle(&q, *n, &spec)?.iter().map(DegreeResultJson::from).collect();
            Ok(Outcome {
                human: degree_lines(&rows),
                results: json!({ "n": n, "degrees": rows }),
                warnings: Vec::new(),
            })
        }
        Command::Coxeter { quiver: src } => {
            let q = quiver(src, inputs)?;
            let (c, e, phi) = (
                render_int_matrix(&q.cartan_matrix()),
                render_int_matrix(&q.euler_form()),
                render_int_matrix(&q.coxeter_matrix()),
            );
            Ok(Outcome {
                human: format!(
                    "cartan: {}\neuler: {}\ncoxeter: {}\n",
                    matrix_line(&c),
                    matrix_line(&e),
                    matrix_line(&phi)
                ),
                results: json!({ "vertices": q.vertices(), "cartan": c, "euler": e, "coxeter": phi }),
                warnings: Vec::new(),
            })
        }
        Command::OrbitTriangle { spec, suspension, identity } => {
            let spec = inputs.json::<SpecJson>(spec)?.to_core()?;
            let results = match (suspension, identity) {
                (Some(n), _) => suspension_orbit(&spec, *n)?,
                (None, true) => fundamental_split(&spec)?,
                (None, false) => orbit_groups(&spec)?,
            };
            let rows: Vec<DegreeResultJson> = results.iter().map(DegreeResultJson::from).collect();
            let mut warnings = Vec::new();
            if spec.flags().regular {
                warnings.push(Warning::new(
                    "regularity-assumed",
                    "degree-0 results read as KH_0 rely on the caller's regularity assertion",
                ));
            }
            Ok(Outcome {
                human: degree_lines(&rows),
                results: json!({ "degrees": rows, "regular": spec.flags().regular }),
                warnings,
            })
        }
        Command::HpSixterm { f_even, f_odd, field } => {
            let (fe, fo) = (inline_matrix(f_even)?, inline_matrix(f_odd)?);
            let dims = match schema::parse_field(field)? {
                FieldKind::Rationals => sixterm(&Rationals, &fe, &fo)?,
                FieldKind::Prime(p) => sixterm(&PrimeField::new(p)?, &fe, &fo)?,
            };
            Ok(Outcome {
                human: format!("HP+ {}  HP- {}\n", dims.0, dims.1),
                results: json!({ "plus": dims.0, "minus": dims.1 }),
                warnings: Vec::new(),
            })
        }
        Command::HpLineBundle { model: src, degree, n } => {
            let m = model(src, *degree, inputs)?;
            let (even, odd) = line_bundle_hp_map(&m, *n)?;
            let dims = line_bundle_hp(&m, *n)?;
            Ok(Outcome {
                human: format!("HP+ {}  HP- {}\n", dims.plus, dims.minus),
                results: json!({
                    "plus": dims.plus,
                    "minus": dims.minus,
                    "even_map": render_matrix(&even),
                    "odd_map": render_matrix(&odd),
                }),
                warnings: Vec::new(),
            })
        }
        Command::SphericalK0 { chi, e } => {
            let (chi, e) = (parse_int_vector(chi)?, parse_int_vector(e)?);
            let map = spherical_k0_map(&chi, &e)?;
            let g = spherical_k0_orbit(&chi, &e)?;
            Ok(Outcome {
                human: format!("{g}\n"),
                results: json!({ "group": g.to_string(), "map": render_int_matrix(map.matrix()) }),
                warnings: Vec::new(),
            })
        }
        Command::SphericalHp { model: src, degree } => {
            let m = model(src, *degree, inputs)?;
            let p = spherical_projection(&m)?;
            let dims = spherical_hp(&m)?;
            Ok(Outcome {
                human: format!("HP+ {}  HP- {}\n", dims.plus, dims.minus),
                results: json!({ "plus": dims.plus, "minus": dims.minus, "projection": render_matrix(&p) }),
                warnings: Vec::new(),
            })
        }
        Command::CurveKh0 { pic, l, n } => {
            let c = CurveK0::new(schema::pic_presentation(pic)?, parse_int_vector(l)?)?;
            let r = curve_orbit_kh0(&c, *n)?;
            Ok(Outcome {
                human: format!("{}\n", r.computed),
                results: json!({
                    "group": r.computed.to_string(),
                    "product_formula": r.product_formula.to_string(),
                    "twist": render_int_matrix(&c.twist_matrix()),
                }),
                warnings: r.warnings,
            })
        }
        Command::DgOrbit { cat, functor, bound, stages, check } => {
            let cat_json: CategoryJson = inputs.json(cat)?;
            let functor_json: Option<FunctorJson> = functor.as_deref().map(|p| inputs.json(p)).transpose()?;
            let checks = DgChecks::from(check.as_slice());
            match cat_json.field_kind()? {
                FieldKind::Rationals => dg_orbit(Rationals, &cat_json, functor_json.as_ref(), *bound, *stages, checks),
                FieldKind::Prime(p) => {
                    dg_orbit(PrimeField::new(p)?, &cat_json, functor_json.as_ref(), *bound, *stages, checks)
                }
            }
        }
        Command::Snf { matrix } => {
            let a = int_matrix(&inline_matrix(matrix)?, None)?;
            let s = snf(&a);
            let g = cokernel_presentation(&a);
            let diag: Vec<String> = s.diagonal().iter().map(BigInt::to_string).collect();
            Ok(Outcome {
                human: format!("diagonal: [{}]\ncokernel: {g}\n", diag.join(", ")),
                results: json!({
                    "u": render_int_matrix(&s.u),
                    "d": render_int_matrix(&s.d),
                    "v": render_int_matrix(&s.v),
                    "cokernel": g.to_string(),
                }),
                warnings: Vec::new(),
            })
        }
        Command::Selfcheck { cases } => {
            let seed = match std::env::var("ORBITK_SEED") {
                Ok(s) => s
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Input(format!("ORBITK_SEED must be an unsigned integer, got {s:?}")))?,
                Err(_) => 0,
            };
            inputs.digest.file("ORBITK_SEED", seed.to_string().as_bytes());
            let summary = selfcheck::run(seed, *cases);
            let human = summary.render();
            let results = serde_json::to_value(&summary).expect("summary serializes");
            if let Some(f) = summary.first_failure() {
                return Err(CliError::Internal(format!("selfcheck {f} failed (seed {seed})")));
            }
            Ok(Outcome { human, results, warnings: Vec::new() })
        }
    }
}

fn sixterm<F: Field>(k: &F, fe: &MatrixJson, fo: &MatrixJson) -> Result<(usize, usize)> {
    let (e, o) = (field_matrix(k, fe, None)?, field_matrix(k, fo, None)?);
    let d = hp_sixterm_over(k, e.rows(), o.rows(), &e, &o)?;
    Ok((d.plus, d.minus))
}

#[derive(Clone, Copy, Debug, Default)]
struct DgChecks {
    orbit: bool,
    orbit_z: bool,
    epsilon: bool,
    comparison: bool,
    square_zero: bool,
    h0: bool,
}

impl From<&[DgCheck]> for DgChecks {
    fn from(v: &[DgCheck]) -> Self {
        let all = v.contains(&DgCheck::All);
        let has = |c| all || v.contains(&c);
        Self {
            orbit: has(DgCheck::Orbit),
            orbit_z: has(DgCheck::OrbitZ),
            epsilon: has(DgCheck::Epsilon),
            comparison: has(DgCheck::Comparison),
            square_zero: has(DgCheck::SquareZero),
            h0: has(DgCheck::H0),
        }
    }
}

fn dims_json(d: &std::collections::BTreeMap<i64, usize>) -> Value {
    Value::Object(d.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn pair_dims<F: Field>(cat: &FiniteDgCategory<F>) -> Vec<Value> {
    let n = cat.object_count();
    let names = cat.objects();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| json!({ "source": names[x], "target": names[y], "dims": dims_json(&cat.hom(x, y).dims_by_degree()) }))
        .collect()
}

fn dg_orbit<F: Field>(
    k: F,
    cat_json: &CategoryJson,
    functor_json: Option<&FunctorJson>,
    bound: usize,
    stages: usize,
    checks: DgChecks,
) -> Result<Outcome> {
    let a = cat_json.to_core(k)?;
    let f = match functor_json {
        Some(j) => j.to_core(&a)?,
        None => DgEndofunctor::identity(&a),
    };
    if checks.epsilon {
        check_h0_equivalence(&a, &f)?;
    }
    if checks.comparison && bound < 2 {
        return Err(Error::TruncationTooSmall { bound, required: 2 }.into());
    }
    let names = a.objects().to_vec();
    let mut results = serde_json::Map::new();
    let mut human = String::new();
    let mut all_passed = true;

    if checks.orbit {
        let o = orbit_n(&a, &f, bound)?;
        o.category().validate()?;
        let n = a.object_count();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                pairs.push(json!({
                    "source": names[x],
                    "target": names[y],
                    "weight_dims": o.weight_dims(x, y),
                    "dims": dims_json(&o.category().hom(x, y).dims_by_degree()),
                }));
            }
        }
        let _ = writeln!(human, "orbit N={bound}: valid");
        for p in &pairs {
            let _ = writeln!(human, "  {}->{} weights {}", p["source"], p["target"], p["weight_dims"]);
        }
        results.insert("orbit".into(), json!({ "bound": bound, "valid": true, "pairs": pairs }));
    }
    if checks.orbit_z {
        let z = orbit_z(&a, &f, bound, stages)?;
        let reports: Vec<Value> = z
            .reports()
            .iter()
            .map(|r| {
                json!({
                    "source": names[r.x],
                    "target": names[r.y],
                    "stage_dims": r.stage_dims.iter().map(dims_json).collect::<Vec<_>>(),
                    "transitions_injective": r.transitions_injective,
                    "stabilized": r.stabilized,
                })
            })
            .collect();
        let stable = z.reports().iter().filter(|r| r.stabilized).count();
        let _ = writeln!(human, "orbit-z N={bound} P={stages}: {stable}/{} homs stabilized", reports.len());
        results.insert("orbit_z".into(), json!({ "window": bound, "stages": stages, "homs": reports }));
    }
    if checks.epsilon {
        let r = epsilon_quasi_iso_check(&a, &f, bound, stages)?;
        all_passed &= r.passed();
        let objects: Vec<Value> = r
            .objects
            .iter()
            .map(|o| json!({ "object": names[o.object], "passed": o.passed, "first_failing_degree": o.first_failing_degree }))
            .collect();
        let _ = writeln!(human, "epsilon: {}", if r.passed() { "PASS" } else { "FAIL" });
        results.insert("epsilon".into(), json!({ "passed": r.passed(), "objects": objects }));
    }
    if checks.comparison {
        let r = comparison_map_check(&a, &f, bound)?;
        all_passed &= r.passed();
        let pairs: Vec<Value> = r
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "source": names[p.x],
                    "target": names[p.y],
                    "d_minus1_injective": p.d_minus1_injective,
                    "commutes": p.commutes,
                    "iso": { "H-1": p.iso[0], "H0": p.iso[1], "H1": p.iso[2] },
                    "first_failure": p.first_failure.map(|(g, h)| json!({ "strand": g, "degree": h })),
                })
            })
            .collect();
        let _ = writeln!(human, "comparison: {}", if r.passed() { "PASS" } else { "FAIL" });
        results.insert("comparison".into(), json!({ "passed": r.passed(), "pairs": pairs }));
    }
    if checks.square_zero {
        let s = square_zero(&a, &f)?;
        s.validate()?;
        let _ = writeln!(human, "square-zero: valid");
        results.insert("square_zero".into(), json!({ "valid": true, "pairs": pair_dims(&s) }));
    }
    if checks.h0 {
        let h = h0_category(&a);
        let _ = writeln!(human, "h0 dims: {:?}", h.dims);
        results.insert("h0".into(), json!({ "objects": h.objects, "dims": h.dims }));
    }
    results.insert("passed".into(), json!(all_passed));
    Ok(Outcome {
        human,
        results: Value::Object(results),
        warnings: Vec::new(),
    })
}
