//! The `setfam` command line.
//!
//! Every subcommand renders either plain text or JSON carrying the same
//! fields. Exit codes: 0 success, 1 verification failed, 2 usage, parse,
//! unsupported or too-large input, 3 search budget exhausted.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, BoundReport, Condition};
use crate::constructions::{self as cons, verify_design, verify_quasi_symmetric};
use crate::error::{Error, Result};
use crate::family::{
    find_common_element, find_hitting_pair, intersection_spectrum, parse_family, validate_family,
    write_family, Allowed, IntersectionConstraint, SetFamily, Violation, ViolationKind,
};
use crate::search::{
    max_family, threshold_scan_with, triple_cover, ScanKind, ScanRow, SearchOptions, SearchResult,
    SearchStatus, TripleCover,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "setfam",
    version,
    about = "Exact toolkit for intersecting set families"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the rendering to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Known admissible family used as the initial incumbent.
    #[arg(long, global = true, value_name = "PATH")]
    pub seed_family: Option<PathBuf>,
    /// Wall-clock budget in seconds for search and scan (per row).
    #[arg(long, global = true, value_name = "SECONDS")]
    pub time_budget: Option<f64>,
    /// Worker threads for search and scan.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a bound with its hypotheses.
    Bound(BoundArgs),
    /// Generate a family.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a family file against a constraint or design property.
    Verify(VerifyArgs),
    /// Intersection and size spectra of a family file.
    Spectrum { file: PathBuf },
    /// Exact maximum admissible family.
    Search(SearchArgs),
    /// Triple cover of an intersecting family without a hitting pair.
    Triples { file: PathBuf },
    /// Exact maxima against the bound over a range of ground sizes.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Ekr,
    Rcw,
    FranklWilson,
    Snevily,
    Thm15,
    Thm16,
    /// Proof inequalities for `(n, s, k)`.
    Inequalities,
    /// Least `n` with `n^(k−1) ≥ s^(2k−1)`.
    Op1,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    pub theorem: BoundKind,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub s: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    ProjectivePlane {
        #[arg(long)]
        q: u64,
    },
    FanoComplement,
    PaleyBiplane,
    Residual {
        #[arg(long)]
        family: PathBuf,
        /// 0-based index of the deleted block.
        #[arg(long)]
        block: usize,
    },
    SteinerAugment {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        k: u64,
    },
    DConstruction {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
    },
    AllKSubsets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Debug, Args, Default)]
pub struct IntersectionFlags {
    #[arg(long, conflicts_with = "lset")]
    pub lmin: Option<usize>,
    #[arg(long, conflicts_with = "lset")]
    pub lmax: Option<usize>,
    /// Explicit allowed intersection sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub lset: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub inter: IntersectionFlags,
    #[arg(long)]
    pub smin: Option<usize>,
    #[arg(long)]
    pub smax: Option<usize>,
    /// `t,λ`: every t-subset lies in exactly λ members.
    #[arg(long, value_name = "T,LAMBDA", conflicts_with_all = ["lmin", "lmax", "lset", "smin", "smax", "quasi_symmetric"])]
    pub design: Option<String>,
    #[arg(long, conflicts_with_all = ["lmin", "lmax", "lset", "smin", "smax"])]
    pub quasi_symmetric: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub smin: usize,
    #[arg(long)]
    pub smax: usize,
    #[command(flatten)]
    pub inter: IntersectionFlags,
    /// Disable anchoring of the first member.
    #[arg(long)]
    pub no_symmetry: bool,
    #[arg(long)]
    pub node_budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanKindArg {
    Uniform,
    Mixed,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n_from: usize,
    #[arg(long)]
    pub n_to: usize,
    #[arg(long, value_enum, default_value_t = ScanKindArg::Uniform)]
    pub kind: ScanKindArg,
    #[arg(long)]
    pub no_symmetry: bool,
    /// Node budget per row.
    #[arg(long)]
    pub node_budget: Option<u64>,
}

/// Rendered output plus the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub body: String,
    pub code: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::DesignFailed(_) | Error::Hypothesis(_) => EXIT_FALSE,
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI and returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(out) => match &cli.output {
            Some(path) => match std::fs::write(path, &out.body) {
                Ok(()) => out.code,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    EXIT_USAGE
                }
            },
            None => {
                print!("{}", out.body);
                out.code
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Rendered> {
    let json = cli.json;
    match &cli.command {
        Command::Bound(args) => cmd_bound(args, json),
        Command::Construct(c) => cmd_construct(c, json),
        Command::Verify(args) => cmd_verify(args, json),
        Command::Spectrum { file } => cmd_spectrum(&read_family(file)?, json),
        Command::Search(args) => cmd_search(cli, args),
        Command::Triples { file } => cmd_triples(&read_family(file)?, json),
        Command::Scan(args) => cmd_scan(cli, args),
    }
}

fn read_family(path: &Path) -> Result<SetFamily> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    parse_family(&text)
}

fn ok(body: String) -> Result<Rendered> {
    Ok(Rendered {
        body,
        code: EXIT_OK,
    })
}

fn json_line(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn need(v: Option<u64>, name: &str, what: BoundKind) -> Result<u64> {
    v.ok_or_else(|| Error::InvalidParameter(format!("{what:?} needs --{name}").to_lowercase()))
}

fn cmd_bound(args: &BoundArgs, json: bool) -> Result<Rendered> {
    let kind = args.theorem;
    let n = || need(args.n, "n", kind);
    let s = || need(args.s, "s", kind);
    let k = || need(args.k, "k", kind);
    let report = match kind {
        BoundKind::Ekr => bounds::ekr_bound(n()?, s()?)?,
        BoundKind::Rcw => bounds::rcw_bound(n()?, k()?)?,
        BoundKind::FranklWilson => bounds::frankl_wilson_bound(n()?, k()?)?,
        BoundKind::Snevily => bounds::snevily_bound(n()?, k()?)?,
        BoundKind::Thm15 => bounds::thm15_bound(n()?, s()?, k()?)?,
        BoundKind::Thm16 => bounds::thm16_bound(n()?, s()?, k()?)?,
        BoundKind::Inequalities => {
            let (n, s, k) = (n()?, s()?, k()?);
            let ineqs = bounds::check_proof_inequalities(n, s, k)?;
            return ok(render_inequalities(n, s, k, &ineqs, json));
        }
        BoundKind::Op1 => {
            let (s, k) = (s()?, k()?);
            let t = bounds::op1_conjectured_threshold(s, k)?;
            return ok(if json {
                json_line(&json!({"s": s, "k": k, "threshold": t.to_string()}))
            } else {
                format!("s: {s}\nk: {k}\nthreshold: {t}\n")
            });
        }
    };
    ok(render_bound(&report, json))
}

pub fn render_bound(r: &BoundReport, json: bool) -> String {
    if json {
        return json_line(r);
    }
    let mut out = format!("theorem: {}\nn: {}\n", r.theorem.as_str(), r.params.n);
    if let Some(s) = r.params.s {
        let _ = writeln!(out, "s: {s}");
    }
    if let Some(k) = r.params.k {
        let _ = writeln!(out, "k: {k}");
    }
    let _ = writeln!(out, "value: {}/{}", r.value.numer(), r.value.denom());
    let _ = writeln!(out, "floor: {}", r.value_floor);
    for c in &r.conditions {
        let _ = writeln!(out, "condition[{}]: {}", c.name, c.holds);
    }
    let _ = writeln!(out, "applicable: {}", r.applicable);
    out
}

fn render_inequalities(n: u64, s: u64, k: u64, ineqs: &[Condition], json: bool) -> String {
    if json {
        return json_line(&json!({"n": n, "s": s, "k": k, "inequalities": ineqs}));
    }
    let mut out = format!("n: {n}\ns: {s}\nk: {k}\n");
    for c in ineqs {
        let _ = writeln!(out, "inequality[{}]: {}", c.name, c.holds);
    }
    out
}

fn self_check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DesignFailed(format!(
            "self-check failed: {}",
            what()
        )))
    }
}

fn check_valid(f: &SetFamily, c: &IntersectionConstraint) -> Result<()> {
    let report = validate_family(f, c)?;
    match report.first_violation {
        None => Ok(()),
        Some(v) => self_check(false, || describe_violation(&v)),
    }
}

/// Every emitted family is re-checked against the property it advertises.
fn build_construction(c: &Construct) -> Result<SetFamily> {
    let f = match c {
        Construct::ProjectivePlane { q } => {
            let f = cons::projective_plane(*q)?;
            let (q, size) = (*q as usize, *q as usize + 1);
            self_check(f.len() == q * q + q + 1, || "wrong block count".into())?;
            check_valid(&f, &IntersectionConstraint::explicit([1], size, size)?)?;
            self_check(verify_design(&f, 2, 1)?.holds, || {
                "not a 2-(n,q+1,1) design".into()
            })?;
            f
        }
        Construct::FanoComplement => {
            let f = cons::fano_complement();
            self_check(f.len() == 7, || "wrong block count".into())?;
            check_valid(&f, &IntersectionConstraint::explicit([2], 4, 4)?)?;
            f
        }
        Construct::PaleyBiplane => {
            let f = cons::paley_biplane();
            check_valid(&f, &IntersectionConstraint::explicit([2], 5, 5)?)?;
            self_check(verify_design(&f, 2, 2)?.holds, || {
                "not a 2-(11,5,2) design".into()
            })?;
            f
        }
        Construct::Residual { family, block } => {
            let src = read_family(family)?;
            certify_symmetric(&src)?;
            let f = cons::residual(&src, *block)?;
            let removed = src.members()[*block].len();
            self_check(f.n() + removed == src.n(), || "wrong ground size".into())?;
            self_check(f.len() + 1 == src.len(), || "wrong block count".into())?;
            check_distinct(&f)?;
            f
        }
        Construct::SteinerAugment { family, k } => {
            let f = cons::steiner_augment(&read_family(family)?, *k)?;
            let s = f.uniform_size().unwrap_or(0);
            check_valid(&f, &IntersectionConstraint::interval(1, *k as usize, s, s)?)?;
            f
        }
        Construct::DConstruction { k, d } => {
            let f = cons::d_construction(*k, *d)?;
            let (n, s) = cons::d_construction_params(*k, *d)?;
            let expected = bounds::binom(n - 1, k - 1) + *d;
            self_check(num_bigint::BigUint::from(f.len()) == expected, || {
                "wrong member count".into()
            })?;
            let k = *k as usize;
            check_valid(
                &f,
                &IntersectionConstraint::interval(1, k - 1, k, s as usize)?,
            )?;
            self_check(find_common_element(&f)?.is_none(), || {
                "common element present".into()
            })?;
            f
        }
        Construct::AllKSubsets { n, k } => {
            let f = cons::all_k_subsets(*n, *k)?;
            self_check(
                num_bigint::BigUint::from(f.len()) == bounds::binom(*n as u64, *k as u64),
                || "wrong member count".into(),
            )?;
            check_distinct(&f)?;
            f
        }
        Construct::Star { n, s } => {
            let f = cons::star_family(*n, *s)?;
            self_check(
                num_bigint::BigUint::from(f.len()) == bounds::binom(*n as u64 - 1, *s as u64 - 1),
                || "wrong member count".into(),
            )?;
            self_check(find_common_element(&f)? == Some(1), || {
                "1 is not common".into()
            })?;
            check_distinct(&f)?;
            f
        }
    };
    Ok(f)
}

/// A symmetric 2-design: `n` blocks of one size `s` on `n` points with every
/// pair in `λ = s(s−1)/(n−1)` blocks.
fn certify_symmetric(f: &SetFamily) -> Result<()> {
    let n = f.n();
    let s = f.uniform_size().ok_or(Error::NotUniform)?;
    let fail = |why: String| Error::DesignFailed(format!("input is not a symmetric design: {why}"));
    if f.len() != n || n < 2 {
        return Err(fail(format!("{} blocks on {n} points", f.len())));
    }
    if !(s * (s - 1)).is_multiple_of(n - 1) {
        return Err(fail(format!(
            "s(s−1) = {} is not a multiple of n−1 = {}",
            s * (s - 1),
            n - 1
        )));
    }
    let lambda = (s * (s - 1) / (n - 1)) as u64;
    match verify_design(f, 2, lambda)?.witness {
        None => Ok(()),
        Some(w) => Err(fail(format!(
            "pair {{{}}} lies in {} blocks, expected {lambda}",
            w.subset.iter().join(","),
            w.count
        ))),
    }
}

fn check_distinct(f: &SetFamily) -> Result<()> {
    let Some((lo, hi)) = f.size_range() else {
        return Ok(());
    };
    check_valid(
        f,
        &IntersectionConstraint::interval(0, hi, lo.max(1), hi.max(1))?,
    )
}

fn cmd_construct(c: &Construct, json: bool) -> Result<Rendered> {
    let f = build_construction(c)?;
    ok(if json {
        json_line(&f)
    } else {
        write_family(&f)
    })
}

fn describe_violation(v: &Violation) -> String {
    match v.kind {
        ViolationKind::Duplicate => format!("duplicate member at indices ({}, {})", v.i, v.j),
        ViolationKind::MemberSize => format!("member size out of window at index {}", v.i),
        ViolationKind::IntersectionSize => {
            format!("inadmissible intersection at indices ({}, {})", v.i, v.j)
        }
    }
}

fn constraint_from(
    inter: &IntersectionFlags,
    smin: usize,
    smax: usize,
) -> Result<IntersectionConstraint> {
    let allowed = match &inter.lset {
        Some(set) => Allowed::Explicit(set.iter().copied().collect()),
        None => Allowed::Interval {
            lmin: inter.lmin.unwrap_or(0),
            lmax: inter.lmax.unwrap_or(smax),
        },
    };
    IntersectionConstraint::new(allowed, smin, smax)
}

fn parse_design(spec: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidParameter(format!("--design expects t,lambda (got {spec:?})"));
    let (t, l) = spec.split_once(',').ok_or_else(bad)?;
    Ok((
        t.trim().parse().map_err(|_| bad())?,
        l.trim().parse().map_err(|_| bad())?,
    ))
}

fn cmd_verify(args: &VerifyArgs, json: bool) -> Result<Rendered> {
    let f = read_family(&args.file)?;
    if let Some(spec) = &args.design {
        let (t, lambda) = parse_design(spec)?;
        let check = verify_design(&f, t, lambda)?;
        let body = if json {
            json_line(&json!({"mode": "design", "t": t, "lambda": lambda,
                "holds": check.holds, "witness": check.witness}))
        } else {
            let mut out = format!(
                "mode: design\nt: {t}\nlambda: {lambda}\nholds: {}\n",
                check.holds
            );
            if let Some(w) = &check.witness {
                let _ = writeln!(
                    out,
                    "witness: {{{}}} lies in {} members",
                    w.subset.iter().join(","),
                    w.count
                );
            }
            out
        };
        return Ok(Rendered {
            body,
            code: if check.holds { EXIT_OK } else { EXIT_FALSE },
        });
    }
    if args.quasi_symmetric {
        let q = verify_quasi_symmetric(&f)?;
        let body = if json {
            json_line(
                &json!({"mode": "quasi-symmetric", "quasi_symmetric": q.is_quasi_symmetric,
                "mu1": q.mu1, "mu2": q.mu2}),
            )
        } else {
            let opt = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
            format!(
                "mode: quasi-symmetric\nquasi_symmetric: {}\nmu1: {}\nmu2: {}\n",
                q.is_quasi_symmetric,
                opt(q.mu1),
                opt(q.mu2)
            )
        };
        return Ok(Rendered {
            body,
            code: if q.is_quasi_symmetric {
                EXIT_OK
            } else {
                EXIT_FALSE
            },
        });
    }
    if args.inter.lmin.is_none()
        && args.inter.lmax.is_none()
        && args.inter.lset.is_none()
        && args.smin.is_none()
        && args.smax.is_none()
    {
        return Err(Error::InvalidParameter(
            "verify needs intersection/size flags, --design or --quasi-symmetric".into(),
        ));
    }
    let (lo, hi) = f.size_range().unwrap_or((1, f.n()));
    let smin = args.smin.unwrap_or(lo.max(1));
    let smax = args.smax.unwrap_or(hi.max(smin));
    let c = constraint_from(&args.inter, smin, smax)?;
    let report = validate_family(&f, &c)?;
    let body = if json {
        json_line(&json!({"mode": "constraint", "valid": report.valid,
            "first_violation": report.first_violation}))
    } else {
        let mut out = format!("mode: constraint\nvalid: {}\n", report.valid);
        if let Some(v) = &report.first_violation {
            let _ = writeln!(out, "violation: {}", describe_violation(v));
        }
        out
    };
    Ok(Rendered {
        body,
        code: if report.valid { EXIT_OK } else { EXIT_FALSE },
    })
}

fn cmd_spectrum(f: &SetFamily, json: bool) -> Result<Rendered> {
    let spec = intersection_spectrum(f);
    let (common, pair) = if f.is_empty() {
        (None, None)
    } else {
        (find_common_element(f)?, find_hitting_pair(f)?)
    };
    if json {
        return ok(json_line(&json!({
            "members": f.len(),
            "pairs": spec.pair_total(),
            "counts": spec.counts,
            "size_histogram": spec.size_histogram,
            "common_element": common,
            "hitting_pair": pair.map(|(u, v)| [u, v]),
        })));
    }
    let mut out = format!("members: {}\npairs: {}\n", f.len(), spec.pair_total());
    for (l, c) in &spec.counts {
        let _ = writeln!(out, "intersection {l}: {c}");
    }
    for (s, c) in &spec.size_histogram {
        let _ = writeln!(out, "size {s}: {c}");
    }
    let _ = writeln!(
        out,
        "common_element: {}",
        common.map_or("none".into(), |e| e.to_string())
    );
    let _ = writeln!(
        out,
        "hitting_pair: {}",
        pair.map_or("none".into(), |(u, v)| format!("{u} {v}"))
    );
    ok(out)
}

fn search_options(cli: &Cli, no_symmetry: bool, node_budget: Option<u64>) -> Result<SearchOptions> {
    let time_budget = match cli.time_budget {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            return Err(Error::InvalidParameter(format!("bad time budget {t}")));
        }
        t => t.map(Duration::from_secs_f64),
    };
    if cli.threads == 0 {
        return Err(Error::InvalidParameter("--threads must be ≥ 1".into()));
    }
    Ok(SearchOptions {
        symmetry_breaking: !no_symmetry,
        time_budget,
        node_budget,
        parallel: cli.threads > 1,
        lower_bound_seed: cli.seed_family.as_deref().map(read_family).transpose()?,
        ..SearchOptions::default()
    })
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn cmd_search(cli: &Cli, args: &SearchArgs) -> Result<Rendered> {
    let c = constraint_from(&args.inter, args.smin, args.smax)?;
    let opts = search_options(cli, args.no_symmetry, args.node_budget)?;
    let r = in_pool(cli.threads, || max_family(args.n, &c, &opts))??;
    Ok(Rendered {
        body: render_search(&r, cli.json),
        code: status_code(r.status),
    })
}

fn status_code(s: SearchStatus) -> i32 {
    match s {
        SearchStatus::Exact => EXIT_OK,
        SearchStatus::BudgetExhausted => EXIT_BUDGET,
    }
}

pub fn render_search(r: &SearchResult, json: bool) -> String {
    if json {
        return json_line(r);
    }
    format!(
        "max_size: {}\nstatus: {}\nnodes: {}\nms: {}\nwitness:\n{}",
        r.max_size,
        r.status.as_str(),
        r.nodes_explored,
        r.elapsed.as_millis(),
        write_family(&r.witness)
    )
}

fn cmd_triples(f: &SetFamily, json: bool) -> Result<Rendered> {
    let cover = triple_cover(f)?;
    self_check(cover.covers(f), || {
        "triple cover does not cover the family".into()
    })?;
    ok(render_triples(&cover, json))
}

pub fn render_triples(c: &TripleCover, json: bool) -> String {
    if json {
        return json_line(c);
    }
    let mut out = format!(
        "start_index: {}\ns: {}\ntriples: {}\n",
        c.start_index,
        c.s,
        c.triples.len()
    );
    for t in c.triples.members() {
        let _ = writeln!(out, "{}", t.elements().join(" "));
    }
    let _ = writeln!(out, "trace: {}", c.trace.len());
    for r in &c.trace {
        let _ = writeln!(
            out,
            "a={} b_index={} b={} c_index={} c={}",
            r.a, r.b_index, r.b, r.c_index, r.c
        );
    }
    out
}

fn cmd_scan(cli: &Cli, args: &ScanArgs) -> Result<Rendered> {
    let opts = search_options(cli, args.no_symmetry, args.node_budget)?;
    let kind = match args.kind {
        ScanKindArg::Uniform => ScanKind::Uniform,
        ScanKindArg::Mixed => ScanKind::Mixed,
    };
    let rows = in_pool(cli.threads, || {
        threshold_scan_with(kind, args.s, args.k, args.n_from, args.n_to, &opts)
    })??;
    let exhausted = rows
        .iter()
        .any(|r| r.status == SearchStatus::BudgetExhausted);
    Ok(Rendered {
        body: render_scan(&rows, cli.json),
        code: if exhausted { EXIT_BUDGET } else { EXIT_OK },
    })
}

fn holds_str(h: Option<bool>) -> &'static str {
    match h {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    }
}

fn scan_row_json(r: &ScanRow) -> Value {
    json!({
        "n": r.n,
        "max_size": r.max_size,
        "bound_floor": r.bound_floor,
        "holds": holds_str(r.holds),
        "status": r.status.as_str(),
        "nodes": r.nodes,
        "ms": r.ms,
    })
}

/// Aligned table, or one JSON object per line.
pub fn render_scan(rows: &[ScanRow], json: bool) -> String {
    if json {
        return rows.iter().map(|r| json_line(&scan_row_json(r))).collect();
    }
    let header = [
        "n",
        "max_size",
        "bound_floor",
        "holds",
        "status",
        "nodes",
        "ms",
    ];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.max_size.to_string(),
                r.bound_floor.to_string(),
                holds_str(r.holds).to_string(),
                r.status.as_str().to_string(),
                r.nodes.to_string(),
                r.ms.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..7)
        .map(|i| {
            cells
                .iter()
                .map(|c| c[i].chars().count())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |vals: &[&str]| {
        let mut s = vals
            .iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:>w$}"))
            .join("  ");
        s.push('\n');
        s
    };
    let mut out = line(&header);
    for c in &cells {
        out.push_str(&line(&c.iter().map(String::as_str).collect::<Vec<_>>()));
    }
    out
}
