//! Command-line front end. [`run`] parses arguments and returns the exit
//! status with the text that goes to stdout and stderr, so the binary is a
//! thin wrapper and the whole surface is testable in-process.
//!
//! Exit status: 0 on success, 1 on a domain error, 2 on a usage error.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::diagram::{braid_to_diagram, parse_braid, parse_pd_json, BraidWord, PlanarDiagram};
use crate::doublecover::{determinant, jones_determinant_check};
use crate::error::Error;
use crate::f2homalg::{compute_pages, oracle_pages, Complex, Degree, FilteredComplex};
use crate::khovanov::{build_reduced_complex, cube_homology, graded_euler_characteristic, kh_homology};
use crate::pagesolver::{result_json, solve_pages, tensor_pages, vk_polynomial, SolverConstraints, SolverResult, SolverStatus};
use crate::transverse::{fillability_report, psi_chain, psi_class, Fate};

pub const THREADS_ENV: &str = "KHPAGES_THREADS";

#[derive(Debug, Parser)]
#[command(name = "khpages", version, about = "Reduced Khovanov homology over F2 and its higher pages")]
struct Cli {
    /// Worker threads for cube construction (also KHPAGES_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced Khovanov homology as a Poincaré polynomial.
    Kh(Common),
    /// Higher pages E^k from E^2 = Kh by constraint search.
    Pages(SolverArgs),
    /// The transverse invariant ψ of a braid closure.
    Psi(PsiArgs),
    /// Link determinant by Goeritz matrix, checked against the Jones value.
    Det(Common),
    /// Reduced Jones polynomial (graded Euler characteristic).
    Jones(Common),
    /// V^k polynomials of the solver pages.
    Vk(SolverArgs),
    /// Bundled property checks.
    Check {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Braid `s=3; w=1,2,...`, PD JSON `{"pd": ...}`, or a file containing either.
    input: String,
    #[arg(long)]
    json: bool,
    /// Edge label carrying the reduction point.
    #[arg(long, value_name = "E")]
    marked_edge: Option<u64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Target {
    /// Total rank of E^∞.
    #[arg(long, value_name = "N")]
    einf_rank: Option<usize>,
    /// Use the link determinant as the E^∞ rank (valid when the branched
    /// double cover is an L-space).
    #[arg(long)]
    lspace: bool,
    /// No E^∞ target; the result may be ambiguous.
    #[arg(long)]
    no_einf_target: bool,
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[command(flatten)]
    common: Common,
    /// Acknowledge that D^k shifts (h, q) by (k, 2k - 2).
    #[arg(long)]
    assume_delta_shift: bool,
    #[command(flatten)]
    target: Target,
    #[arg(long, value_name = "K", default_value_t = crate::pagesolver::DEFAULT_MAX_PAGE)]
    max_page: usize,
    /// Extra bigrading `H,Q` that must survive to E^∞ (repeatable).
    #[arg(long, value_name = "H,Q", value_parser = parse_pair, allow_hyphen_values = true)]
    survivor: Vec<(i64, i64)>,
}

#[derive(Debug, Args)]
struct PsiArgs {
    #[command(flatten)]
    common: Common,
    /// Follow ψ through solver pages (requires an E^∞ target).
    #[arg(long)]
    assume_delta_shift: bool,
    #[arg(long, value_name = "N")]
    einf_rank: Option<usize>,
    #[arg(long)]
    lspace: bool,
    #[arg(long, value_name = "K", default_value_t = crate::pagesolver::DEFAULT_MAX_PAGE)]
    max_page: usize,
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected H,Q but got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self { code: 2, stdout: String::new(), stderr: msg.into() }
    }

    fn domain(e: Error) -> Self {
        Self { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Output::usage(text) } else { Output::ok(text) };
        }
    };
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) => Some(n),
                Err(_) => return Output::usage(format!("error: {THREADS_ENV}={v} is not a thread count\n")),
            },
            Err(_) => None,
        },
    };
    let work = || match dispatch(cli.command) {
        Ok(text) => Output::ok(text),
        Err(Failure::Usage(m)) => Output::usage(m),
        Err(Failure::Domain(e)) => Output::domain(e),
    };
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Output::domain(Error::Internal(format!("thread pool: {e}"))),
        },
        None => work(),
    }
}

enum Input {
    Braid(BraidWord),
    Pd(PlanarDiagram),
}

impl Input {
    fn diagram(&self) -> PlanarDiagram {
        match self {
            Input::Braid(b) => braid_to_diagram(b),
            Input::Pd(d) => d.clone(),
        }
    }
}

fn classify(text: &str) -> Option<Res<Input>> {
    let t = text.trim_start();
    if t.starts_with("s=") {
        Some(parse_braid(t).map(Input::Braid).map_err(Failure::from))
    } else if t.starts_with('{') {
        Some(parse_pd_json(t).map(Input::Pd).map_err(Failure::from))
    } else {
        None
    }
}

fn read_input(text: &str) -> Res<Input> {
    if let Some(r) = classify(text) {
        return r;
    }
    let path = Path::new(text);
    if path.is_file() {
        let content = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("error: cannot read {text}: {e}\n")))?;
        if let Some(r) = classify(&content) {
            return r;
        }
        return Err(Failure::Usage(format!("error: {text} holds neither a braid word nor PD JSON\n")));
    }
    Err(Failure::Usage(format!(
        "error: input `{text}` is not a braid word (s=..; w=..), PD JSON, or a readable file\n"
    )))
}

fn diagram_of(common: &Common) -> Res<(Input, PlanarDiagram)> {
    let input = read_input(&common.input)?;
    let mut d = input.diagram();
    if let Some(e) = common.marked_edge {
        d = d.with_marked_label(e)?;
    }
    Ok((input, d))
}

fn line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn dispatch(cmd: Command) -> Res<String> {
    match cmd {
        Command::Kh(c) => {
            let (_, d) = diagram_of(&c)?;
            let kh = kh_homology(&d);
            Ok(if c.json {
                line(&serde_json::to_value(kh.entries()).expect("entries serialize"))
            } else {
                format!("{}\n", kh.poincare())
            })
        }
        Command::Pages(a) => {
            let (r, constraints, source) = solve(&a)?;
            if a.common.json {
                return Ok(line(&result_json(&r, &constraints, source)));
            }
            Ok(pages_text(&r, &constraints, source, false))
        }
        Command::Vk(a) => {
            let (r, constraints, source) = solve(&a)?;
            if a.common.json {
                return Ok(line(&result_json(&r, &constraints, source)));
            }
            Ok(pages_text(&r, &constraints, source, true))
        }
        Command::Psi(a) => psi(a),
        Command::Det(c) => {
            let (_, d) = diagram_of(&c)?;
            let goeritz = determinant(&d)?;
            let jones = jones_determinant_check(&d)?;
            if goeritz != jones {
                return Err(Error::Inconsistent(format!("Goeritz determinant {goeritz} but |V(i)| = {jones}")).into());
            }
            Ok(if c.json {
                line(&json!({"determinant": goeritz, "goeritz": goeritz, "jones": jones}))
            } else {
                format!("{goeritz}\n")
            })
        }
        Command::Jones(c) => {
            let (_, d) = diagram_of(&c)?;
            let v = graded_euler_characteristic(&build_reduced_complex(&d));
            let at_i = jones_determinant_check(&d)?;
            Ok(if c.json {
                line(&json!({"jones": v.to_string(), "abs_at_i": at_i}))
            } else {
                format!("{v}\n")
            })
        }
        Command::Check { json } => check(json),
    }
}

fn einf_target(t: &Target, d: &PlanarDiagram) -> Res<(Option<usize>, &'static str)> {
    if let Some(n) = t.einf_rank {
        Ok((Some(n), "user"))
    } else if t.lspace {
        Ok((Some(determinant(d)? as usize), "determinant"))
    } else {
        Ok((None, "none"))
    }
}

fn solve(a: &SolverArgs) -> Res<(SolverResult, SolverConstraints, &'static str)> {
    if !a.assume_delta_shift {
        return Err(Failure::Usage(
            "error: the page solver needs --assume-delta-shift (D^k shifts (h,q) by (k, 2k-2))\n".into(),
        ));
    }
    let (input, d) = diagram_of(&a.common)?;
    let (einf, source) = einf_target(&a.target, &d)?;
    let mut c = SolverConstraints::new(einf).with_max_page(a.max_page);
    // ψ of a positive braid is nonzero in every page.
    if let Input::Braid(b) = &input {
        if b.is_positive() && a.common.marked_edge.is_none() {
            let (h, q) = psi_chain(b).bigrading;
            c = c.with_survivor(h, q);
        }
    }
    for &(h, q) in &a.survivor {
        c = c.with_survivor(h, q);
    }
    let e2 = kh_homology(&d);
    let r = solve_pages(&e2, &c)?;
    Ok((r, c, source))
}

fn pages_text(r: &SolverResult, c: &SolverConstraints, source: &str, vk: bool) -> String {
    let mut s = String::new();
    let einf = c.einf_rank.map_or("none".to_string(), |n| format!("{n} ({source})"));
    let survivors: Vec<String> = c.survivors.iter().map(|(h, q)| format!("({h},{q})")).collect();
    let _ = writeln!(
        s,
        "assumptions: delta_shift, einf_rank={einf}{}, survivors=[{}], max_page={}",
        if r.einf_enforced { "" } else { " (not enforced: max page below the homological span)" },
        survivors.join(","),
        c.max_page
    );
    let show = |s: &mut String, pages: &[crate::khovanov::BigradedRanks], indent: &str| {
        for (i, p) in pages.iter().enumerate() {
            let tag = match (i + 1 == pages.len(), vk) {
                (false, _) => "",
                (true, false) => " = E^∞",
                (true, true) => " (E^∞)",
            };
            let body = if vk { vk_polynomial(p).to_string() } else { p.poincare() };
            let name = if vk { "V" } else { "E" };
            let _ = writeln!(s, "{indent}{name}^{}{tag}: {body}", i + 2);
        }
    };
    match &r.status {
        SolverStatus::Unique => {
            let _ = writeln!(s, "status: unique");
            show(&mut s, &r.pages, "");
        }
        SolverStatus::Ambiguous { count, capped } => {
            let _ = writeln!(s, "status: ambiguous ({count}{} page sequences)", if *capped { "+" } else { "" });
            for (i, alt) in r.solutions.iter().enumerate() {
                let _ = writeln!(s, "option {}:", i + 1);
                show(&mut s, &alt.pages, "  ");
            }
        }
        SolverStatus::Infeasible { page, reason } => {
            let _ = writeln!(s, "status: infeasible from E^{page}: {reason}");
        }
    }
    s
}

fn psi(a: PsiArgs) -> Res<String> {
    let input = read_input(&a.common.input)?;
    let Input::Braid(b) = input else {
        return Err(Error::InvalidDiagram("ψ is defined for braid closures only; give a braid word".into()).into());
    };
    if a.common.marked_edge.is_some() {
        return Err(Failure::Usage("error: psi uses the braid's own marked edge\n".into()));
    }
    let pages = if a.einf_rank.is_some() || a.lspace {
        if !a.assume_delta_shift {
            return Err(Failure::Usage("error: following ψ through pages needs --assume-delta-shift\n".into()));
        }
        if a.einf_rank.is_some() && a.lspace {
            return Err(Failure::Usage("error: give at most one of --einf-rank and --lspace\n".into()));
        }
        let args = SolverArgs {
            common: Common { input: a.common.input.clone(), json: false, marked_edge: None },
            assume_delta_shift: true,
            target: Target { einf_rank: a.einf_rank, lspace: a.lspace, no_einf_target: false },
            max_page: a.max_page,
            survivor: Vec::new(),
        };
        let (r, _, _) = solve(&args)?;
        (r.status == SolverStatus::Unique).then_some(r.pages)
    } else {
        None
    };
    let report = fillability_report(&b, pages.as_deref())?;
    if a.common.json {
        return Ok(line(&report.to_json()));
    }
    let mut s = String::new();
    let _ = writeln!(s, "bigrading: ({},{})", report.bigrading.0, report.bigrading.1);
    let _ = writeln!(s, "e2_nonzero: {}", report.e2_nonzero);
    for f in &report.page_fates {
        let status = match f.status {
            Fate::Survives => "survives",
            Fate::Dead => "dead",
            Fate::Unknown => "unknown",
        };
        let _ = writeln!(s, "E^{}: {status}", f.k);
    }
    let _ = writeln!(s, "fillability_obstruction: {}", report.fillability_obstruction);
    Ok(s)
}

struct CheckResult {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

fn braid_diagram(text: &str) -> PlanarDiagram {
    braid_to_diagram(&parse_braid(text).expect("built-in braid"))
}

const CORPUS: &[&str] = &[
    "s=2; w=1,1,1",
    "s=2; w=-1,-1,-1",
    "s=3; w=1,-2,1,-2",
    "s=2; w=1,1,1,1,1",
    "s=3; w=1,1,1,2,-1,2",
    "s=3; w=1,2,1,2,1,2,1,2",
    "s=4; w=1,2,3,1,2,3",
    "s=3; w=1,-2,1,-2,1,-2",
];

fn check_reidemeister() -> CheckResult {
    let mut failures = Vec::new();
    let mut cases = 0;
    for text in CORPUS.iter().take(5) {
        let b = parse_braid(text).expect("built-in braid");
        let kh = kh_homology(&braid_to_diagram(&b));
        let s = b.strands() as i32;
        let mut moves = vec![
            ("positive stabilization", b.positive_stabilization()),
            ("negative stabilization", b.negative_stabilization()),
            ("conjugation", b.rotate(1)),
        ];
        if let Ok(r2) = b.insert(0, &[1, -1]) {
            moves.push(("R2", r2));
        }
        if s >= 3 {
            if let Ok(r3) = b.insert(1, &[1, 2, 1, -2, -1, -2]) {
                moves.push(("R3 word", r3));
            }
        }
        for (name, other) in moves {
            cases += 1;
            if kh_homology(&braid_to_diagram(&other)) != kh {
                failures.push(format!("{name} of {text}"));
            }
        }
    }
    CheckResult { name: "reidemeister", cases, failures }
}

fn check_connected_sum() -> CheckResult {
    let mut failures = Vec::new();
    let pairs = [(0, 0), (0, 1), (0, 2), (2, 3)];
    for &(i, j) in &pairs {
        let (a, b) = (braid_diagram(CORPUS[i]), braid_diagram(CORPUS[j]));
        let sum = crate::diagram::connected_sum(&a, &b);
        if kh_homology(&sum) != tensor_pages(&kh_homology(&a), &kh_homology(&b)) {
            failures.push(format!("{} # {}", CORPUS[i], CORPUS[j]));
        }
    }
    CheckResult { name: "connected-sum", cases: pairs.len(), failures }
}

fn check_determinants() -> CheckResult {
    let mut failures = Vec::new();
    for text in CORPUS {
        let d = braid_diagram(text);
        match (determinant(&d), jones_determinant_check(&d)) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => failures.push(format!("{text}: {a:?} vs {b:?}")),
        }
    }
    CheckResult { name: "determinant", cases: CORPUS.len(), failures }
}

/// Page engine against the subquotient oracle, on cubes refiltered by
/// `f = floor(h / 2)` and on a small handmade complex.
fn check_page_engine() -> CheckResult {
    let mut failures = Vec::new();
    let mut cases = 0;
    for text in CORPUS.iter().take(4) {
        let cube = build_reduced_complex(&braid_diagram(text));
        for div in [1, 2, 3] {
            cases += 1;
            let filt = cube.complex().degrees().iter().map(|g| g.h.div_euclid(div)).collect();
            let f = FilteredComplex::new(cube.complex().clone(), filt).expect("coarsening keeps the filtration");
            if !engine_matches_oracle(&f, 4) {
                failures.push(format!("{text} with f = h/{div}"));
            }
        }
        if cube_homology(&cube).total_rank() == 0 {
            failures.push(format!("{text}: empty homology"));
        }
    }
    cases += 1;
    let staircase = Complex::from_arrows(
        vec![Degree::new(0, 0), Degree::new(1, 0), Degree::new(0, 0), Degree::new(1, 0)],
        &[(0, 1), (0, 3), (2, 3)],
    )
    .expect("valid complex");
    let f = FilteredComplex::new(staircase, vec![0, 1, 1, 2]).expect("valid filtration");
    if !engine_matches_oracle(&f, 4) {
        failures.push("staircase".into());
    }
    CheckResult { name: "page-engine", cases, failures }
}

fn engine_matches_oracle(f: &FilteredComplex, max_page: usize) -> bool {
    let engine = compute_pages(f, max_page);
    let oracle = oracle_pages(f, max_page);
    (1..=max_page).all(|k| crate::f2homalg::ranks_at(&engine, k) == Some(&oracle[k - 1]))
}

fn check_psi() -> CheckResult {
    let mut failures = Vec::new();
    for text in CORPUS {
        let b = parse_braid(text).expect("built-in braid");
        let chain = psi_chain(&b);
        let expected = (0, b.writhe() - b.strands() as i64 + 1);
        if !chain.is_cycle || chain.bigrading != expected {
            failures.push(format!("{text}: ψ at {:?}", chain.bigrading));
        }
        if b.is_positive() && !psi_class(&b).map(|c| c.nonzero).unwrap_or(false) {
            failures.push(format!("{text}: ψ vanishes on a positive braid"));
        }
    }
    CheckResult { name: "psi", cases: CORPUS.len(), failures }
}

fn check(json_out: bool) -> Res<String> {
    let results =
        [check_reidemeister(), check_connected_sum(), check_determinants(), check_page_engine(), check_psi()];
    let all_ok = results.iter().all(|r| r.failures.is_empty());
    let text = if json_out {
        let rows: Vec<Value> = results
            .iter()
            .map(|r| json!({"name": r.name, "cases": r.cases, "passed": r.failures.is_empty(), "failures": r.failures}))
            .collect();
        line(&json!({"passed": all_ok, "checks": rows}))
    } else {
        let mut s = String::new();
        for r in &results {
            let verdict = if r.failures.is_empty() { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{verdict} {} ({} cases)", r.name, r.cases);
            for f in &r.failures {
                let _ = writeln!(s, "  {f}");
            }
        }
        s
    };
    if all_ok {
        Ok(text)
    } else {
        Err(Error::Inconsistent(format!("property checks failed\n{text}")).into())
    }
}
