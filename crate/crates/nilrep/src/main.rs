//! Command line front end: verify the decomposition theorem, classify
//! coadjoint orbits, evaluate representation operators, and factor
//! automorphism matrices.
//!
//! Exit codes: 0 on success (and a passing verdict), 1 when the
//! verifier finds a failing check, 2 for unusable input or
//! configuration.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nilrep::aut::{decompose_aut0, is_automorphism, m_as_semidirect, AutMatrix};
use nilrep::coadjoint::{
    b_lambda, classify_orbit, coadjoint_action, maximal_isotropic, standard_polarization,
    verify_polarization, Covector,
};
use nilrep::grid::{apply_to_grid, GridFunction, GridParams};
use nilrep::lie::NPoint;
use nilrep::linalg::Mat4;
use num::complex::Complex64;
use nilrep::rep::{intertwine_defect, omega, rho, RepCase};
use nilrep::scalar::Scalar;
use nilrep::verify::{character_at, verify_theorem, FaultMode, VerifyConfig};
use nilrep::aut::KParams;

#[derive(Parser)]
#[command(name = "nilrep", version, about = "Exact checks for a 3-step nilpotent group's orbits, representations, and their multiplicity-free decomposition")]
struct Cli {
    /// Seed for the randomized checks; NILREP_SEED is the fallback,
    /// then 7.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized verifier and report a verdict.
    Verify(VerifyArgs),
    /// Classify the coadjoint orbit of a covector.
    Orbit(OrbitArgs),
    /// Evaluate representation and twisting operators.
    Rep(RepArgs),
    /// Check a matrix against the automorphism family and factor it.
    Decompose(DecomposeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseKind {
    Generic,
    #[value(name = "nongeneric")]
    NonGeneric,
    Trivial,
    /// The default spread of cases; only meaningful for verify.
    All,
}

#[derive(Args)]
struct CaseArgs {
    /// alpha for a generic case.
    #[arg(long, default_value = "0")]
    alpha: Scalar,

    /// lambda for a generic case; must be nonzero.
    #[arg(long, default_value = "1")]
    lambda: Scalar,

    /// nu for a nongeneric case.
    #[arg(long, default_value = "1")]
    nu: Scalar,
}

impl CaseArgs {
    fn build(&self, kind: CaseKind) -> Result<RepCase, String> {
        match kind {
            CaseKind::Generic => RepCase::generic(self.alpha.clone(), self.lambda.clone())
                .map_err(|e| e.to_string()),
            CaseKind::NonGeneric => Ok(RepCase::non_generic(self.nu.clone())),
            CaseKind::Trivial => Ok(RepCase::trivial()),
            CaseKind::All => {
                Err("'all' selects the verify spread; pick one case here".to_string())
            }
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify one case instead of the default spread.
    #[arg(long, value_enum)]
    case: Option<CaseKind>,

    #[command(flatten)]
    params: CaseArgs,

    /// Use this many trials for every randomized check.
    #[arg(long)]
    trials: Option<usize>,

    /// Number of spectral sample points for the character checks.
    #[arg(long, default_value_t = 101)]
    u_samples: usize,

    /// Sabotage one primitive to demonstrate a detectable failure.
    #[arg(long, value_name = "MODE")]
    inject_fault: Option<FaultMode>,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, default_value = "0")]
    alpha: Scalar,
    #[arg(long, default_value = "0")]
    mu: Scalar,
    #[arg(long, default_value = "0")]
    nu: Scalar,
    #[arg(long, default_value = "0")]
    lambda: Scalar,

    /// Also act by this group element, given as "s,x,y,t".
    #[arg(long, value_parser = parse_point, value_name = "S,X,Y,T")]
    act: Option<NPoint>,
}

#[derive(Args)]
struct RepArgs {
    /// Which representation to evaluate.
    #[arg(long, value_enum, default_value = "generic")]
    case: CaseKind,

    #[command(flatten)]
    params: CaseArgs,

    /// Group element "s,x,y,t" to send through rho.
    #[arg(long, value_parser = parse_point, value_name = "S,X,Y,T")]
    element: Option<NPoint>,

    /// Twisting pair "k1,k2" to send through omega.
    #[arg(long, value_parser = parse_kpair, value_name = "K1,K2")]
    k: Option<KParams>,

    /// Also report the character at this spectral point.
    #[arg(long, value_name = "U")]
    at: Option<Scalar>,

    /// Apply the operator to a sampled Gaussian and report norms.
    #[arg(long)]
    grid_demo: bool,

    /// Grid size for the demo; must be a power of two.
    #[arg(long, default_value_t = 1024)]
    grid_n: usize,

    /// Half-width of the demo grid, sampled over [-L, L).
    #[arg(long, value_name = "L", default_value = "16")]
    grid_width: Scalar,

    /// Relative norm defect the demo tolerates.
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Matrix rows separated by ';', entries by ',', e.g.
    /// "4,1,0,0;0,1/2,0,0;1,1,2,0;1,1,-1/2,1".
    #[arg(long, value_parser = parse_matrix, value_name = "ROWS")]
    matrix: Mat4,
}

fn parse_scalar_list(s: &str, want: usize) -> Result<Vec<Scalar>, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != want {
        return Err(format!("expected {want} comma-separated rationals, got {}", parts.len()));
    }
    parts
        .iter()
        .map(|p| p.trim().parse::<Scalar>().map_err(|e| e.to_string()))
        .collect()
}

fn parse_point(s: &str) -> Result<NPoint, String> {
    let v = parse_scalar_list(s, 4)?;
    Ok(NPoint::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
}

fn parse_kpair(s: &str) -> Result<KParams, String> {
    let v = parse_scalar_list(s, 2)?;
    Ok(KParams::new(v[0].clone(), v[1].clone()))
}

fn parse_matrix(s: &str) -> Result<Mat4, String> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 4 {
        return Err(format!("expected 4 rows separated by ';', got {}", rows.len()));
    }
    let mut m = Mat4::zero();
    for (i, row) in rows.iter().enumerate() {
        let v = parse_scalar_list(row, 4)?;
        for (j, entry) in v.into_iter().enumerate() {
            m[(i, j)] = entry;
        }
    }
    Ok(m)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("NILREP_SEED") {
        Ok(value) => value
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("NILREP_SEED must be an unsigned integer, got {value:?}")),
        Err(_) => Ok(7),
    }
}

fn emit(cli: &Cli, text: String, json: impl Serialize) -> Result<(), String> {
    let payload = match cli.format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
    };
    match &cli.out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<u8, String> {
    let mut config = VerifyConfig {
        seed: resolve_seed(cli.seed)?,
        u_sample_count: args.u_samples,
        fault: args.inject_fault,
        ..VerifyConfig::default()
    };
    if let Some(kind) = args.case {
        if !matches!(kind, CaseKind::All) {
            config.cases = vec![args.params.build(kind)?];
        }
    }
    if let Some(t) = args.trials {
        config.trials_algebra = t;
        config.trials_homomorphism = t;
        config.trials_true_rep = t;
        config.trials_intertwine = t;
        config.trials_character = t;
        config.trials_orbit = t;
    }
    let report = verify_theorem(&config).map_err(|e| e.to_string())?;
    emit(cli, report.render_text(), &report)?;
    Ok(if report.passed() { 0 } else { 1 })
}

#[derive(Serialize)]
struct ActOutput {
    by: String,
    moved: String,
    same_orbit: bool,
}

#[derive(Serialize)]
struct OrbitOutput {
    covector: String,
    orbit: String,
    skew_form: String,
    rank: usize,
    radical: String,
    maximal_isotropic: String,
    standard_polarization_applies: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    acted: Option<ActOutput>,
}

/// One-line matrix rendering, rows ';'-separated, in the same syntax
/// `decompose --matrix` accepts.
fn matrix_line(m: &Mat4) -> String {
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| m[(i, j)].to_string())
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn run_orbit(cli: &Cli, args: &OrbitArgs) -> Result<u8, String> {
    let lam = Covector::new(
        args.alpha.clone(),
        args.mu.clone(),
        args.nu.clone(),
        args.lambda.clone(),
    );
    let orbit = classify_orbit(&lam);
    let b = b_lambda(&lam);
    let iso = maximal_isotropic(&lam);
    let polarization = verify_polarization(&standard_polarization(), &lam);
    let acted = args.act.as_ref().map(|n| {
        let moved = coadjoint_action(n, &lam);
        ActOutput {
            by: n.to_string(),
            same_orbit: classify_orbit(&moved) == orbit,
            moved: moved.to_string(),
        }
    });

    let mut text = String::new();
    text.push_str(&format!("covector (alpha, mu, nu, lambda) = {lam}\n"));
    text.push_str(&format!("orbit: {orbit}\n"));
    text.push_str(&format!("skew form B = [{}]\n", matrix_line(b.matrix())));
    text.push_str(&format!("skew form rank: {}\n", b.rank()));
    text.push_str(&format!("radical: {}\n", b.radical()));
    text.push_str(&format!("maximal isotropic: {iso}\n"));
    text.push_str(&format!(
        "standard polarization span{{e1, e3, e4}} applies: {polarization}\n"
    ));
    if let Some(a) = &acted {
        text.push_str(&format!(
            "acted by {}: {} (same orbit: {})\n",
            a.by, a.moved, a.same_orbit
        ));
    }

    let json = OrbitOutput {
        covector: lam.to_string(),
        orbit: orbit.to_string(),
        skew_form: matrix_line(b.matrix()),
        rank: b.rank(),
        radical: b.radical().to_string(),
        maximal_isotropic: iso.to_string(),
        standard_polarization_applies: polarization,
        acted,
    };
    emit(cli, text, json)?;
    Ok(0)
}

#[derive(Serialize)]
struct OpOutput {
    input: String,
    operator: String,
}

#[derive(Serialize)]
struct IntertwineOutput {
    lhs: String,
    rhs: String,
    equal: bool,
}

#[derive(Serialize)]
struct GridDemoOutput {
    n: usize,
    half_width: String,
    norm_before: f64,
    norm_after: f64,
    relative_defect: f64,
    tolerance: f64,
    within_tolerance: bool,
}

#[derive(Serialize)]
struct RepOutput {
    case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<OpOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<OpOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    character: Option<OpOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    intertwining: Option<IntertwineOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<GridDemoOutput>,
}

fn run_rep(cli: &Cli, args: &RepArgs) -> Result<u8, String> {
    let case = args.params.build(args.case)?;
    if args.element.is_none() && args.k.is_none() && args.at.is_none() {
        return Err("nothing to evaluate: pass --element, --k, or --at".to_string());
    }

    let mut text = String::new();
    let mut output = RepOutput {
        case: case.to_string(),
        rho: None,
        omega: None,
        character: None,
        intertwining: None,
        grid: None,
    };

    if let Some(n) = &args.element {
        let op = rho(&case, n);
        text.push_str(&format!("{case}{n} = {op}\n"));
        output.rho = Some(OpOutput {
            input: n.to_string(),
            operator: op.to_string(),
        });
    }
    if let Some(k) = &args.k {
        let op = omega(&case, k);
        text.push_str(&format!("omega{k} = {op}\n"));
        output.omega = Some(OpOutput {
            input: k.to_string(),
            operator: op.to_string(),
        });
    }
    if let Some(u) = &args.at {
        let chi = character_at(&case, u);
        text.push_str(&format!("character at u = {u}: {chi}\n"));
        output.character = Some(OpOutput {
            input: u.to_string(),
            operator: chi.to_string(),
        });
    }
    if let (Some(n), Some(k)) = (&args.element, &args.k) {
        let report = intertwine_defect(&case, k, n);
        text.push_str(&format!(
            "intertwining rho(k n) omega(k) = omega(k) rho(n): lhs = {}, rhs = {}, equal: {}\n",
            report.lhs,
            report.rhs,
            report.equal()
        ));
        output.intertwining = Some(IntertwineOutput {
            lhs: report.lhs.to_string(),
            rhs: report.rhs.to_string(),
            equal: report.equal(),
        });
    }

    let mut exit = 0;
    if args.grid_demo {
        let op = if let Some(n) = &args.element {
            rho(&case, n)
        } else if let Some(k) = &args.k {
            omega(&case, k)
        } else {
            return Err("the grid demo needs --element or --k".to_string());
        };
        if !(args.tolerance > 0.0) {
            return Err("tolerance must be positive".to_string());
        }
        let params = GridParams::new(args.grid_n, args.grid_width.clone())
            .map_err(|e| e.to_string())?;
        let values = (0..params.n())
            .map(|j| {
                let u = params.point(j).to_f64();
                Complex64::new((-u * u / 2.0).exp(), 0.0)
            })
            .collect();
        let f = GridFunction::from_values(params.clone(), values);
        let moved = apply_to_grid(&op, &f).map_err(|e| e.to_string())?;
        let before = f.norm();
        let after = moved.norm();
        let defect = (after - before).abs() / before;
        let within = defect <= args.tolerance;
        text.push_str(&format!(
            "grid demo: n = {}, half-width = {}\n\
             gaussian norm before = {before:.12}, after = {after:.12}\n\
             relative defect = {defect:.3e} (tolerance {:.0e}, within: {within})\n",
            params.n(),
            params.half_width(),
            args.tolerance
        ));
        output.grid = Some(GridDemoOutput {
            n: params.n(),
            half_width: params.half_width().to_string(),
            norm_before: before,
            norm_after: after,
            relative_defect: defect,
            tolerance: args.tolerance,
            within_tolerance: within,
        });
        if !within {
            exit = 1;
        }
    }
    emit(cli, text, output)?;
    Ok(exit)
}

#[derive(Serialize)]
struct DecomposeOutput {
    automorphism: bool,
    r: String,
    scale_rho: String,
    m: [String; 5],
    heisenberg: [String; 2],
    translation: [String; 3],
}

fn run_decompose(cli: &Cli, args: &DecomposeArgs) -> Result<u8, String> {
    let k = AutMatrix::from_mat(args.matrix.clone());
    let auto = is_automorphism(&k).map_err(|e| e.to_string())?;
    if !auto {
        return Err("matrix does not preserve brackets and the center".to_string());
    }
    let (a, m) = decompose_aut0(&k).map_err(|e| e.to_string())?;
    let (h, v) = m_as_semidirect(&m);

    let text = format!(
        "automorphism: true\n\
         scale part: {a} (rho = {})\n\
         unipotent part: m = (a, b, c, d, e) = {m}\n\
         heisenberg factor (d, e) = ({}, {})\n\
         translation factor (a, b, c) = ({}, {}, {})\n",
        a.rho(),
        h.d,
        h.e,
        v.a,
        v.b,
        v.c
    );
    let json = DecomposeOutput {
        automorphism: true,
        r: a.r().to_string(),
        scale_rho: a.rho().to_string(),
        m: [
            m.a.to_string(),
            m.b.to_string(),
            m.c.to_string(),
            m.d.to_string(),
            m.e.to_string(),
        ],
        heisenberg: [h.d.to_string(), h.e.to_string()],
        translation: [v.a.to_string(), v.b.to_string(), v.c.to_string()],
    };
    emit(cli, text, json)?;
    Ok(0)
}

fn fail(msg: impl Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => run_verify(&cli, args),
        Command::Orbit(args) => run_orbit(&cli, args),
        Command::Rep(args) => run_rep(&cli, args),
        Command::Decompose(args) => run_decompose(&cli, args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => fail(msg),
    }
}
