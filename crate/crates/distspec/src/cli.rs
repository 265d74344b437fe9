//! The `distspec` command line.
//!
//! Exit codes: 0 success, 1 violation / refutation / mismatch, 2 usage,
//! 3 input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use distspec_core::enumeration::{
    judge, LemmaConclusionReport, ScanAccumulator, ScanReport, TheoremCheck, TheoremVerdict, DEFAULT_TIE_TOL,
    MAX_CANONICAL_ORDER,
};
use distspec_core::families::{
    make_complete, make_k_ab, make_k_double_prime, make_k_prime, make_path, make_tree_t, FamilySpec,
};
use distspec_core::graph::{parse_graph6, write_graph6, Graph};
use distspec_core::poly::{decimal_width, rational_to_f64, IntPolynomial, RootBracket};
use distspec_core::quotient::{
    self, default_grid, sign_regime_check, DiffSource, PolyCheck, QuotientError, QuotientMatrix, SignRegime,
};
use distspec_core::spectra::{
    char_poly_exact, symmetric_eigenvalues, verify_complement_identity, ComplementIdentity, Matrix, CHAR_POLY_MAX_DIM,
};
use distspec_core::transforms::{local_search_max, SearchStep, TransformError};

use crate::campaigns::{identity_campaign, monotone_campaign, MoveLemma};
use crate::formats::{csv_field, ranking_csv, FormatError, Graph6Stream};
use crate::json::{format_f64, to_string_line, to_string_pretty};
use crate::parallel::{parallel_lemma_scan, parallel_scan, worker_count};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Width of exact root brackets in reports.
const ROOT_WIDTH_DIGITS: u32 = 12;
/// Quotient roots must sit this close to eigenvalues of the full matrix.
const CONTAINMENT_TOL: f64 = 1e-7;
/// Least quotient root against `λ_n` of the full matrix.
const LEAST_ROOT_TOL: f64 = 1e-8;
/// Largest order for which `polycheck` also diagonalizes the full matrices.
const FULL_SPECTRUM_MAX_N: usize = 12;
/// Largest order for which `verify-theorem` also runs the reduction-lemma scan.
const LEMMA_SCAN_MAX_N: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser, Serialize)]
#[command(name = "distspec", version, about = "Least distance eigenvalues of complements of graphs with diameter greater than three")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized campaigns.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum FamilyArg {
    #[value(name = "kprime")]
    #[serde(rename = "kprime")]
    KPrime,
    #[value(name = "kdprime")]
    #[serde(rename = "kdprime")]
    KDoublePrime,
    #[value(name = "kab")]
    #[serde(rename = "kab")]
    KAb,
    #[value(name = "treeT")]
    #[serde(rename = "treeT")]
    TreeT,
    #[value(name = "path")]
    #[serde(rename = "path")]
    Path,
    #[value(name = "complete")]
    #[serde(rename = "complete")]
    Complete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum IdentityLemma {
    #[value(name = "2.1")]
    #[serde(rename = "2.1")]
    ComplementDistance,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Distance spectrum of a graph or of its complement.
    Spectrum {
        #[arg(long)]
        graph6: String,
        #[arg(long)]
        complement: bool,
        /// Also compute the characteristic polynomial exactly (order <= 16).
        #[arg(long)]
        exact_poly: bool,
    },
    /// Build one of the extremal constructions.
    Family {
        #[arg(long, value_enum)]
        kind: FamilyArg,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Random check of D(G^c) = J - I + A(G).
    Identity {
        #[arg(long, value_enum)]
        lemma: IdentityLemma,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Closed-form polynomials, difference identities and sign regimes.
    Polycheck {
        #[arg(long, default_value_t = 7)]
        min: usize,
        #[arg(long, default_value_t = 40)]
        max: usize,
    },
    /// Random check of an edge-move monotonicity lemma.
    Monotone {
        #[arg(long, value_enum)]
        lemma: MoveLemma,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Greedy ascent of the least eigenvalue from a start graph.
    Localsearch {
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
    },
    /// Extremal scan over labeled graphs or a graph6 stream.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// graph6 file, one graph per line; `-` reads standard input.
        #[arg(long)]
        stream: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long, default_value_t = DEFAULT_TIE_TOL)]
        tie_tol: f64,
    },
    /// Exhaustive check of the extremal graph at order n.
    VerifyTheorem {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Serialize)]
struct Timing {
    wall_seconds: f64,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    config: &'a Cli,
    result: &'a T,
    timing: Timing,
}

/// A command's result, its exit code and its renderings.
struct Outcome {
    code: i32,
    json_result: serde_json::Value,
    text: String,
    csv: Option<String>,
}

impl Outcome {
    fn new<T: Serialize>(code: i32, result: &T, text: String, csv: Option<String>) -> Result<Self, CliError> {
        // Round-trip through the 17-digit writer so the stored value keeps full precision.
        let json_result = serde_json::from_str(&to_string_pretty(result).map_err(input)?).map_err(input)?;
        Ok(Outcome { code, json_result, text, csv })
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli).and_then(|out| {
        let body = match cli.format {
            Format::Json => {
                let env = Envelope {
                    tool: env!("CARGO_PKG_NAME"),
                    version: env!("CARGO_PKG_VERSION"),
                    config: &cli,
                    result: &out.json_result,
                    timing: Timing { wall_seconds: start.elapsed().as_secs_f64() },
                };
                to_string_pretty(&env).map_err(input)?
            }
            Format::Text => out.text.clone(),
            Format::Csv => out
                .csv
                .clone()
                .ok_or_else(|| CliError::Usage(String::from("csv output is available for enumerate, verify-theorem and localsearch")))?,
        };
        emit(&cli, &body)?;
        Ok(out.code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("usage error: {m}"),
                CliError::Input(m) => eprintln!("input error: {m}"),
            }
            e.code()
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(input)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Spectrum { graph6, complement, exact_poly } => spectrum(graph6, *complement, *exact_poly),
        Command::Family { kind, n, a, b } => family(*kind, *n, *a, *b),
        Command::Identity { trials, max_n, .. } => identity(*trials, *max_n, cli.seed),
        Command::Polycheck { min, max } => polycheck(*min, *max),
        Command::Monotone { lemma, trials, max_n } => monotone(*lemma, *trials, *max_n, cli.seed),
        Command::Localsearch { start, max_steps } => localsearch(start, *max_steps),
        Command::Enumerate { n, stream, top, tie_tol } => enumerate(*n, stream.as_ref(), *top, *tie_tol),
        Command::VerifyTheorem { n } => verify_theorem(*n),
    }
}

#[derive(Serialize)]
pub struct PolyJson {
    /// Coefficients from the leading term down, as decimal strings.
    pub descending: Vec<String>,
    pub display: String,
}

impl From<&IntPolynomial> for PolyJson {
    fn from(p: &IntPolynomial) -> Self {
        PolyJson {
            descending: p.coeffs().iter().rev().map(BigInt::to_string).collect(),
            display: p.to_display_string(),
        }
    }
}

#[derive(Serialize)]
pub struct RootJson {
    pub lo: String,
    pub hi: String,
    pub midpoint: f64,
}

impl From<&RootBracket> for RootJson {
    fn from(r: &RootBracket) -> Self {
        RootJson { lo: r.lo.to_string(), hi: r.hi.to_string(), midpoint: r.midpoint() }
    }
}

fn parse_g6(s: &str) -> Result<Graph, CliError> {
    parse_graph6(s).map_err(input)
}

#[derive(Serialize)]
struct SpectrumResult {
    graph6: String,
    n: usize,
    matrix: &'static str,
    eigenvalues: Vec<f64>,
    residual_bound: f64,
    least: f64,
    char_poly: Option<PolyJson>,
    least_root: Option<RootJson>,
}

fn spectrum(g6: &str, complement: bool, exact_poly: bool) -> Result<Outcome, CliError> {
    let g = parse_g6(g6)?;
    let target = if complement { g.complement() } else { g.clone() };
    let m = Matrix::distance(&target).map_err(input)?;
    let s = symmetric_eigenvalues(&m).map_err(input)?;
    let (mut char_poly, mut least_root) = (None, None);
    if exact_poly {
        if g.order() > CHAR_POLY_MAX_DIM {
            return Err(CliError::Input(format!("--exact-poly supports order <= {CHAR_POLY_MAX_DIM}")));
        }
        let ints = target.bfs_distances().map_err(input)?.to_i64();
        let p = char_poly_exact(g.order(), &ints).map_err(input)?;
        least_root = p.least_real_root(&decimal_width(ROOT_WIDTH_DIGITS)).as_ref().map(RootJson::from);
        char_poly = Some(PolyJson::from(&p));
    }
    let r = SpectrumResult {
        graph6: write_graph6(&g).map_err(input)?,
        n: g.order(),
        matrix: if complement { "D(G^c)" } else { "D(G)" },
        least: s.least(),
        eigenvalues: s.values.clone(),
        residual_bound: s.residual_bound,
        char_poly,
        least_root,
    };
    let mut text = format!("{} of {} (n = {})\n", r.matrix, r.graph6, r.n);
    for v in &r.eigenvalues {
        text.push_str(&format!("{}\n", format_f64(*v)));
    }
    if let Some(p) = &r.char_poly {
        text.push_str(&format!("char poly: {}\n", p.display));
    }
    Outcome::new(EXIT_OK, &r, text, None)
}

#[derive(Serialize)]
struct FamilyResult {
    #[serde(flatten)]
    spec: FamilySpec,
    graph6: String,
    edges: Vec<(usize, usize)>,
    diameter: u32,
    /// `λ_n(D(G))`.
    lambda_n_graph: f64,
    /// `λ_n(D(G^c))`, absent when the complement is disconnected.
    lambda_n_complement: Option<f64>,
    complement_identity: Option<ComplementIdentity>,
}

fn family(kind: FamilyArg, n: Option<usize>, a: Option<usize>, b: Option<usize>) -> Result<Outcome, CliError> {
    let need_n = || n.ok_or_else(|| CliError::Usage(String::from("--n is required for this family")));
    let fam = |r: Result<FamilySpec, distspec_core::families::FamilyError>| r.map_err(|e| CliError::Usage(e.to_string()));
    let spec = match kind {
        FamilyArg::KPrime => fam(make_k_prime(need_n()?))?,
        FamilyArg::KDoublePrime => fam(make_k_double_prime(need_n()?))?,
        FamilyArg::Path => fam(make_path(need_n()?))?,
        FamilyArg::Complete => fam(make_complete(need_n()?))?,
        FamilyArg::TreeT => {
            if n.is_some_and(|n| n != 5) {
                return Err(CliError::Usage(String::from("the tree T has order 5")));
            }
            make_tree_t()
        }
        FamilyArg::KAb => {
            let (Some(a), Some(b)) = (a, b) else {
                return Err(CliError::Usage(String::from("kab needs --a and --b")));
            };
            if n.is_some_and(|n| n != a + b) {
                return Err(CliError::Usage(format!("--n must equal a + b = {}", a + b)));
            }
            fam(make_k_ab(a, b))?
        }
    };
    let g = &spec.graph;
    let gm = Matrix::distance(g).map_err(input)?;
    let lambda_n_graph = symmetric_eigenvalues(&gm).map_err(input)?.least();
    let lambda_n_complement = match Matrix::distance(&g.complement()) {
        Ok(m) => Some(symmetric_eigenvalues(&m).map_err(input)?.least()),
        Err(_) => None,
    };
    let r = FamilyResult {
        graph6: write_graph6(g).map_err(input)?,
        edges: g.edges(),
        diameter: g.diameter().map_err(input)?,
        lambda_n_graph,
        lambda_n_complement,
        complement_identity: verify_complement_identity(g).ok(),
        spec: spec.clone(),
    };
    let text = format!(
        "{:?} n={} graph6={} diameter={} lambda_n(D(G))={} lambda_n(D(G^c))={}\n",
        spec.kind,
        spec.n,
        r.graph6,
        r.diameter,
        format_f64(lambda_n_graph),
        lambda_n_complement.map_or_else(|| String::from("n/a"), format_f64)
    );
    Outcome::new(EXIT_OK, &r, text, None)
}

fn identity(trials: u64, max_n: usize, seed: u64) -> Result<Outcome, CliError> {
    if !(5..=crate::MAX_CAMPAIGN_ORDER).contains(&max_n) {
        return Err(CliError::Usage(format!("--max-n must be in 5..={}", crate::MAX_CAMPAIGN_ORDER)));
    }
    let r = identity_campaign(trials, max_n, seed);
    let text = format!(
        "identity: {} equal, {} dominated, {} violations\n",
        r.equal,
        r.dominates,
        r.violations.len()
    );
    Outcome::new(if r.holds() { EXIT_OK } else { EXIT_VIOLATION }, &r, text, None)
}

fn monotone(lemma: MoveLemma, trials: u64, max_n: usize, seed: u64) -> Result<Outcome, CliError> {
    if !(5..=crate::MAX_CAMPAIGN_ORDER).contains(&max_n) {
        return Err(CliError::Usage(format!("--max-n must be in 5..={}", crate::MAX_CAMPAIGN_ORDER)));
    }
    let r = monotone_campaign(lemma, trials, max_n, seed);
    let u = &r.hypothesis_unmet;
    let text = format!(
        "monotone {:?}: {} checks, {} confirmed, {} violations, unmet: {} no move, {} diameter, {} disconnected, {} placement\n",
        lemma,
        r.checks,
        r.confirmed,
        r.violations.len(),
        u.no_candidate,
        u.result_diameter,
        u.disconnected,
        u.placement
    );
    Outcome::new(if r.holds() { EXIT_OK } else { EXIT_VIOLATION }, &r, text, None)
}

#[derive(Serialize)]
struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
}

#[derive(Serialize)]
struct IdentityRow {
    identity: &'static str,
    params: Params,
    status: &'static str,
    /// Rows marked informational do not affect the exit code.
    informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    printed: Option<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    computed: Option<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diff: Option<PolyJson>,
}

fn identity_row(identity: &'static str, params: Params, check: PolyCheck, informational: bool) -> IdentityRow {
    match check {
        PolyCheck::Match => IdentityRow { identity, params, status: "match", informational, printed: None, computed: None, diff: None },
        PolyCheck::Mismatch { printed, computed, diff } => IdentityRow {
            identity,
            params,
            status: "mismatch",
            informational,
            printed: Some(PolyJson::from(&printed)),
            computed: Some(PolyJson::from(&computed)),
            diff: Some(PolyJson::from(&diff)),
        },
    }
}

#[derive(Serialize)]
struct SignRow {
    regime: SignRegime,
    source: DiffSource,
    difference: PolyJson,
    points: usize,
    violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_witness_lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_witness_value: Option<String>,
}

#[derive(Serialize)]
struct QuotientSpectrumRow {
    family: &'static str,
    params: Params,
    /// Every quotient root lies within 1e-7 of a distinct eigenvalue of the full matrix.
    roots_in_spectrum: bool,
    least_root: f64,
    lambda_n: f64,
    /// `|least_root - λ_n| <= 1e-8`.
    least_root_is_lambda_n: bool,
}

#[derive(Serialize)]
struct PolycheckSummary {
    identities_checked: usize,
    mismatches: usize,
    informational_mismatches: usize,
    sign_regimes_checked: usize,
    sign_regime_violations: usize,
    quotient_spectrum_failures: usize,
}

#[derive(Serialize)]
struct PolycheckResult {
    notes: Vec<&'static str>,
    min: usize,
    max: usize,
    identities: Vec<IdentityRow>,
    sign_regimes: Vec<SignRow>,
    quotient_spectra: Vec<QuotientSpectrumRow>,
    summary: PolycheckSummary,
}

const POLYCHECK_NOTES: [&str; 4] = [
    "Every coefficient of each polynomial is affine in n (resp. in p and q, plus a pq term), so agreement on three or more values of each parameter implies the identity for all parameters.",
    "The difference psi_{p,q} - phi uses phi at n = p + q.",
    "diff_210 takes the subscripts (p-1, q-1) literally and evaluates the psi formula there even outside p >= 3, q >= 2; diff_210_same_order compares the same printed right-hand side with psi_{p,q} - psi_{p-1,q+1} and is informational.",
    "Sign regimes are evaluated exactly on the grid bound - k/16 above -10n; 'printed' uses the printed low-degree difference, 'computed' the difference of the printed full polynomials.",
];

fn sign_row(regime: SignRegime, source: DiffSource) -> Result<SignRow, CliError> {
    let r = sign_regime_check(regime, source, &default_grid(&regime)).map_err(input)?;
    let first = r.violations.first();
    Ok(SignRow {
        regime,
        source,
        difference: PolyJson::from(&r.difference),
        points: r.points_checked,
        violations: r.violations.len(),
        first_witness_lambda: first.map(|v| v.lambda.to_string()),
        first_witness_value: first.map(|v| v.value.to_string()),
    })
}

fn quotient_row(family: &'static str, params: Params, q: &QuotientMatrix, full: &Graph) -> Result<QuotientSpectrumRow, CliError> {
    let roots: Vec<f64> = q
        .char_poly()
        .real_roots(&decimal_width(ROOT_WIDTH_DIGITS))
        .iter()
        .map(RootBracket::midpoint)
        .collect();
    let spec = symmetric_eigenvalues(&Matrix::distance(&full.complement()).map_err(input)?).map_err(input)?;
    let mut used = vec![false; spec.values.len()];
    let mut contained = roots.len() == 5;
    for r in &roots {
        let best = (0..spec.values.len())
            .filter(|&i| !used[i])
            .min_by(|&i, &j| (spec.values[i] - r).abs().total_cmp(&(spec.values[j] - r).abs()));
        match best {
            Some(i) if (spec.values[i] - r).abs() <= CONTAINMENT_TOL => used[i] = true,
            _ => contained = false,
        }
    }
    let least_root = roots.first().copied().unwrap_or(f64::NAN);
    Ok(QuotientSpectrumRow {
        family,
        params,
        roots_in_spectrum: contained,
        least_root,
        lambda_n: spec.least(),
        least_root_is_lambda_n: (least_root - spec.least()).abs() <= LEAST_ROOT_TOL,
    })
}

fn qerr(e: QuotientError) -> CliError {
    CliError::Usage(e.to_string())
}

fn polycheck(min: usize, max: usize) -> Result<Outcome, CliError> {
    if min < 7 || max < min {
        return Err(CliError::Usage(String::from("need 7 <= min <= max")));
    }
    let mut identities = Vec::new();
    let mut signs = Vec::new();
    let mut spectra = Vec::new();
    for n in min..=max {
        let pn = || Params { n: Some(n), p: None, q: None };
        identities.push(identity_row("eq3", pn(), quotient::check_eq3(n).map_err(qerr)?, false));
        identities.push(identity_row("eq4", pn(), quotient::check_eq4(n).map_err(qerr)?, false));
        identities.push(identity_row("diff_26", pn(), quotient::diff_identity_26(n).map_err(qerr)?, false));
        for source in [DiffSource::Printed, DiffSource::Computed] {
            signs.push(sign_row(SignRegime::Lemma26 { n }, source)?);
        }
        if n <= FULL_SPECTRUM_MAX_N {
            spectra.push(quotient_row("kprime", pn(), &quotient::quotient_kprime(n).map_err(qerr)?, &make_k_prime(n).map_err(input)?.graph)?);
            spectra.push(quotient_row(
                "kdprime",
                pn(),
                &quotient::quotient_kdoubleprime(n).map_err(qerr)?,
                &make_k_double_prime(n).map_err(input)?.graph,
            )?);
        }
        for q in 2..=n / 2 {
            let p = n - q;
            let pq = || Params { n: None, p: Some(p), q: Some(q) };
            identities.push(identity_row("eq5", pq(), quotient::check_eq5(p, q).map_err(qerr)?, false));
            identities.push(identity_row("diff_29", pq(), quotient::diff_identity_29(p, q).map_err(qerr)?, false));
            identities.push(identity_row("diff_210", pq(), quotient::diff_identity_210(p, q).map_err(qerr)?, false));
            identities.push(identity_row(
                "diff_210_same_order",
                pq(),
                quotient::diff_identity_210_same_order(p, q).map_err(qerr)?,
                true,
            ));
            for source in [DiffSource::Printed, DiffSource::Computed] {
                if p >= 4 {
                    signs.push(sign_row(SignRegime::Lemma29 { p, q }, source)?);
                }
                if p > q {
                    signs.push(sign_row(SignRegime::Lemma210 { p, q }, source)?);
                }
            }
            if n <= FULL_SPECTRUM_MAX_N {
                spectra.push(quotient_row("kab", pq(), &quotient::quotient_kpq(p, q).map_err(qerr)?, &make_k_ab(p, q).map_err(input)?.graph)?);
            }
        }
    }
    let mismatches = identities.iter().filter(|r| r.status == "mismatch" && !r.informational).count();
    let summary = PolycheckSummary {
        identities_checked: identities.len(),
        mismatches,
        informational_mismatches: identities.iter().filter(|r| r.status == "mismatch" && r.informational).count(),
        sign_regimes_checked: signs.len(),
        sign_regime_violations: signs.iter().filter(|s| s.violations > 0).count(),
        quotient_spectrum_failures: spectra.iter().filter(|s| !s.roots_in_spectrum || !s.least_root_is_lambda_n).count(),
    };
    let ok = summary.mismatches == 0 && summary.sign_regime_violations == 0 && summary.quotient_spectrum_failures == 0;
    let mut text = String::new();
    for r in identities.iter().filter(|r| r.status == "mismatch") {
        text.push_str(&format!(
            "{} {} n={:?} p={:?} q={:?}: printed {} vs computed {}\n",
            r.identity,
            if r.informational { "(informational) mismatch" } else { "mismatch" },
            r.params.n,
            r.params.p,
            r.params.q,
            r.printed.as_ref().map_or("", |p| &p.display),
            r.computed.as_ref().map_or("", |p| &p.display),
        ));
    }
    text.push_str(&format!(
        "{} identities, {} mismatches ({} informational); {} sign regimes, {} with violations; {} quotient spectrum failures\n",
        summary.identities_checked,
        summary.mismatches,
        summary.informational_mismatches,
        summary.sign_regimes_checked,
        summary.sign_regime_violations,
        summary.quotient_spectrum_failures
    ));
    let r = PolycheckResult {
        notes: POLYCHECK_NOTES.to_vec(),
        min,
        max,
        identities,
        sign_regimes: signs,
        quotient_spectra: spectra,
        summary,
    };
    Outcome::new(if ok { EXIT_OK } else { EXIT_VIOLATION }, &r, text, None)
}

#[derive(Serialize)]
struct LocalSearchResult {
    steps: Vec<SearchStep>,
    local_maximum: bool,
}

fn localsearch(start: &str, max_steps: usize) -> Result<Outcome, CliError> {
    let g = parse_g6(start)?;
    let t = local_search_max(&g, max_steps).map_err(|e| match e {
        TransformError::Disconnected | TransformError::DiameterTooSmall(_) => input(e),
        other => input(other),
    })?;
    let mut text = String::new();
    for s in &t.steps {
        text.push_str(&to_string_line(s).map_err(input)?);
        text.push('\n');
    }
    let mut csv = String::from("step,graph6,lambda_n,move\n");
    for s in &t.steps {
        let mv = s.applied.map_or_else(String::new, |m| {
            let (i, j) = m.edge();
            match m {
                distspec_core::transforms::SearchMove::AddWithin(_) => format!("add_within {i}-{j}"),
                distspec_core::transforms::SearchMove::DeleteAcross(_) => format!("delete_across {i}-{j}"),
            }
        });
        csv.push_str(&format!("{},{},{},{}\n", s.step, csv_field(&s.graph6), format_f64(s.lambda_n), mv));
    }
    let r = LocalSearchResult { steps: t.steps, local_maximum: t.local_maximum };
    Outcome::new(EXIT_OK, &r, text, Some(csv))
}

fn scan_text(r: &ScanReport) -> String {
    let mut text = format!(
        "n={} candidates={} max_lambda={} maximizers={}\n",
        r.n,
        r.candidates_examined,
        format_f64(r.max_lambda),
        r.maximizers.join(" ")
    );
    if let (Some(ru), Some(m)) = (r.runner_up, r.margin) {
        text.push_str(&format!("runner_up={} margin={}\n", format_f64(ru), format_f64(m)));
    }
    for (i, e) in r.ranking.iter().enumerate() {
        text.push_str(&format!("{:>3} {} {}\n", i + 1, e.graph6, format_f64(e.lambda_n)));
    }
    text
}

fn enumerate(n: usize, stream: Option<&PathBuf>, top: usize, tie_tol: f64) -> Result<Outcome, CliError> {
    if !(tie_tol >= 0.0) {
        return Err(CliError::Usage(String::from("--tie-tol must be non-negative")));
    }
    let report = match stream {
        None => parallel_scan(n, top, tie_tol, worker_count()).map_err(|e| CliError::Usage(e.to_string()))?,
        Some(path) => {
            let start = Instant::now();
            if n > MAX_CANONICAL_ORDER {
                eprintln!("note: order {n} exceeds the canonical-form limit; classes are keyed by labeled graph6");
            }
            let mut acc = ScanAccumulator::new(n, top, tie_tol);
            let reader = crate::formats::open_input(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            for g in Graph6Stream::new(reader) {
                let g = g.map_err(|e: FormatError| input(e))?;
                acc.observe_graph(&g).map_err(input)?;
            }
            acc.finish(start.elapsed().as_secs_f64()).map_err(input)?
        }
    };
    let text = scan_text(&report);
    let csv = ranking_csv(&report);
    Outcome::new(EXIT_OK, &report, text, Some(csv))
}

#[derive(Serialize)]
struct RootCheck {
    p: usize,
    q: usize,
    least_root: RootJson,
    /// `|max_lambda - least root of ψ_{p,q}| <= 1e-8`.
    matches_max_lambda: bool,
}

#[derive(Serialize)]
struct VerifyResult {
    note: &'static str,
    scan: ScanReport,
    check: TheoremCheck,
    psi_root: Option<RootCheck>,
    lemma_conclusions: Option<LemmaConclusionReport>,
    workers: usize,
}

const LITERAL_READING_NOTE: &str = "Read literally the strict inequality would also apply to K(ceil(n/2), floor(n/2)) itself; the check is for a unique maximizing class equal to it, strictly above every other class.";

fn verify_theorem(n: usize) -> Result<Outcome, CliError> {
    let workers = worker_count();
    let scan = parallel_scan(n, distspec_core::enumeration::DEFAULT_TOP_K, DEFAULT_TIE_TOL, workers)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let check = judge(&scan).map_err(input)?;
    let psi_root = if n >= 7 {
        let (p, q) = (n.div_ceil(2), n / 2);
        let psi = quotient::psi(p, q).map_err(qerr)?;
        let root = psi.least_real_root(&decimal_width(ROOT_WIDTH_DIGITS)).ok_or_else(|| input("ψ has no real root"))?;
        let mid = rational_to_f64(&((&root.lo + &root.hi) / BigRational::from_integer(BigInt::from(2))));
        Some(RootCheck { p, q, matches_max_lambda: (mid - scan.max_lambda).abs() <= LEAST_ROOT_TOL, least_root: RootJson::from(&root) })
    } else {
        None
    };
    let lemma_conclusions = if (7..=LEMMA_SCAN_MAX_N).contains(&n) {
        Some(parallel_lemma_scan(n, workers).map_err(input)?)
    } else {
        None
    };
    let code = match check.verdict {
        TheoremVerdict::Refuted { .. } => EXIT_VIOLATION,
        TheoremVerdict::Verified | TheoremVerdict::ReportOnly => EXIT_OK,
    };
    let mut text = scan_text(&scan);
    text.push_str(&match &check.verdict {
        TheoremVerdict::Verified => format!("verified: unique maximizer {}\n", check.expected),
        TheoremVerdict::Refuted { witness, reason } => format!("refuted: witness {witness}; {reason}\n"),
        TheoremVerdict::ReportOnly => String::from("report only: n < 7\n"),
    });
    if let Some(l) = &lemma_conclusions {
        text.push_str(&format!(
            "q=1 bound: {} checked, {} violations; q>=2 bound: {} checked, {} violations\n",
            l.checked_q1, l.violations_q1, l.checked_q2, l.violations_q2
        ));
    }
    let csv = ranking_csv(&scan);
    let r = VerifyResult { note: LITERAL_READING_NOTE, scan, check, psi_root, lemma_conclusions, workers };
    Outcome::new(code, &r, text, Some(csv))
}
