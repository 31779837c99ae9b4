//! Command-line front end.
//!
//! Exit codes: `0` success, `1` usage or input error, `2` a computed
//! identity failed. Artifacts go to standard output, diagnostics to
//! standard error.

use std::io::Write;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::crystal::{crystal_graph_dot, string_lengths, Crystal, OrZero};
use crate::expansions::{
    classify_svt, default_degree_cap, expand_in_G, expand_in_g, key_expansion_G_with, key_expansion_g, schur_expansion,
    Expansion, ExpansionError, IdentityViolation, PsiTable, Source,
};
use crate::insertion::{biword_of_matrix, burge, burge_inverse, flag_trace, psi, uncrowd, uncrowd_inverse, Biword};
use crate::shape::{Composition, Flag, SkewShape};
use crate::tableau::{RecordingTableau, SetValuedTableau, SvtEnumerator, SvtFilter, TableauJson};

#[derive(Parser, Debug)]
#[command(name = "setvalued", version, about = "Set-valued tableaux, crystals and Grothendieck expansions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a generating function of a skew shape in a basis.
    Expand(ExpandArgs),
    /// Print the classification of flagged SVT as JSON.
    Classify(ShapeArgs),
    /// Print the crystal graph on flagged SVT in DOT.
    CrystalGraph(GraphArgs),
    /// Uncrowd a set-valued tableau given as JSON.
    Uncrowd(UncrowdArgs),
    /// Run the Burge correspondence on a matrix or a biword.
    Burge(BurgeArgs),
    /// Run the invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Key,
    Schur,
    #[value(name = "G")]
    StableG,
    #[value(name = "g")]
    DualG,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceArg {
    Grothendieck,
    Dual,
}

impl From<SourceArg> for Source {
    fn from(s: SourceArg) -> Source {
        match s {
            SourceArg::Grothendieck => Source::Grothendieck,
            SourceArg::Dual => Source::Dual,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct ShapeArgs {
    /// Outer partition, comma separated.
    #[arg(long, value_parser = parse_list)]
    outer: List,
    /// Inner partition, comma separated.
    #[arg(long, value_parser = parse_list, default_value = "")]
    inner: List,
    /// Row bounds; defaults to n in every row.
    #[arg(long, value_parser = parse_list)]
    flag: Option<List>,
    /// Number of variables; defaults to the largest flag entry, or the
    /// number of rows.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(value_enum)]
    basis: Target,
    #[command(flatten)]
    shape: ShapeArgs,
    /// Generating function to expand.
    #[arg(long, value_enum, default_value = "grothendieck")]
    source: SourceArg,
    /// Largest total degree kept by the G-basis expansion.
    #[arg(long)]
    degree_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Restrict to this excess.
    #[arg(long, value_parser = parse_list)]
    excess: Option<List>,
}

#[derive(Args, Debug)]
struct UncrowdArgs {
    /// Tableau JSON: {"outer":[..],"inner":[..],"cells":[[row,col,[entries]],..]}.
    #[arg(long, conflicts_with = "input")]
    tableau: Option<String>,
    /// File holding the tableau JSON.
    #[arg(long)]
    input: Option<std::path::PathBuf>,
    /// Flag whose evolution Φ^(0), …, Φ^(l) is reported.
    #[arg(long, value_parser = parse_list)]
    flag: Option<List>,
}

#[derive(Args, Debug)]
struct BurgeArgs {
    /// Matrix as JSON rows, or rows separated by ';' and entries by ','.
    #[arg(long, conflicts_with_all = ["top", "bottom"])]
    matrix: Option<String>,
    /// Top row of a biword, weakly decreasing.
    #[arg(long, value_parser = parse_list, requires = "bottom")]
    top: Option<List>,
    /// Bottom row of a biword, weakly increasing under equal top letters.
    #[arg(long, value_parser = parse_list, requires = "top")]
    bottom: Option<List>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Largest |outer| of the skew shapes checked.
    #[arg(long, default_value_t = 6)]
    max_size: usize,
    /// Number of variables.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Seed for the randomized Burge round trips.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Comma-separated non-negative integers; empty means `[]`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct List(Vec<usize>);

fn parse_list(s: &str) -> Result<List, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(List(Vec::new()));
    }
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(List)
}

/// A malformed request, reported with exit code 1.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Validated shape, flag and variable count.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub shape: SkewShape,
    pub flag: Flag,
    pub flag_given: bool,
}

impl RunConfig {
    fn from_args(a: &ShapeArgs) -> Result<RunConfig> {
        let shape = SkewShape::from_parts(a.outer.0.clone(), a.inner.0.clone()).map_err(|e| usage(e.to_string()))?;
        let rows = shape.rows();
        let n = match (a.n, &a.flag) {
            (Some(n), _) => n,
            (None, Some(f)) => f.0.iter().copied().max().unwrap_or(1),
            (None, None) => rows.max(1),
        };
        if n == 0 {
            return Err(usage("n must be positive"));
        }
        let flag = match &a.flag {
            Some(f) => Flag::new(f.0.clone()).map_err(|e| usage(e.to_string()))?,
            None => Flag::full(n, rows),
        };
        flag.check_rows(rows).map_err(|e| usage(e.to_string()))?;
        if Flag::max(&flag) > n {
            return Err(usage(format!("flag {flag} exceeds n = {n}")));
        }
        Ok(RunConfig { n, shape, flag, flag_given: a.flag.is_some() })
    }
}

/// Parse `argv` (including the program name), run, and return the exit
/// code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) if is_broken_pipe(&e) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .any(|c| matches!(c.downcast_ref::<std::io::Error>(), Some(io) if io.kind() == std::io::ErrorKind::BrokenPipe))
}

fn exit_code(e: &anyhow::Error) -> i32 {
    let identity = e.chain().any(|c| {
        c.downcast_ref::<IdentityViolation>().is_some()
            || matches!(c.downcast_ref::<ExpansionError>(), Some(ExpansionError::Identity(_)))
    });
    if identity {
        2
    } else {
        1
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Expand(a) => expand(a, out),
        Command::Classify(a) => classify(a, out),
        Command::CrystalGraph(a) => graph(a, out),
        Command::Uncrowd(a) => uncrowd_cmd(a, out),
        Command::Burge(a) => burge_cmd(a, out),
        Command::Selftest(a) => selftest(a, out, err),
    }
}

fn emit_expansion(e: &Expansion, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => writeln!(out, "{e}")?,
        Format::Latex => writeln!(out, "{}", e.to_latex())?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&e.to_json())?)?,
    }
    Ok(())
}

fn expand(a: ExpandArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = RunConfig::from_args(&a.shape)?;
    let source = Source::from(a.source);
    if !matches!(a.basis, Target::Key) && cfg.flag_given && cfg.flag != Flag::full(cfg.n, cfg.shape.rows()) {
        return Err(usage("only the key expansion accepts a flag other than (n, …, n)"));
    }
    let e = match a.basis {
        Target::Key => match source {
            Source::Grothendieck => {
                let table = PsiTable::for_flag(&cfg.shape, &cfg.flag)?;
                key_expansion_G_with(&table, &cfg.flag, cfg.n)?
            }
            Source::Dual => key_expansion_g(&cfg.shape, &cfg.flag, cfg.n)?,
        },
        Target::Schur => schur_expansion(&cfg.shape, cfg.n, source)?,
        Target::DualG => expand_in_g(&cfg.shape, cfg.n, source)?,
        Target::StableG => {
            let cap = a.degree_cap.unwrap_or_else(|| default_degree_cap(&cfg.shape));
            if cap < cfg.shape.outer().size() {
                return Err(usage(format!("--degree-cap must be at least |outer| = {}", cfg.shape.outer().size())));
            }
            expand_in_G(&cfg.shape, cfg.n, source, cap)?
        }
    };
    emit_expansion(&e, a.format, out)
}

#[derive(Serialize)]
struct ClassJson {
    excess: Vec<usize>,
    evolved_shape: ShapeJson,
    evolved_flag: Vec<usize>,
    recording: TableauJson,
    compatible: Vec<Vec<u32>>,
    label: Vec<usize>,
    members: Vec<TableauJson>,
}

#[derive(Serialize)]
struct ShapeJson {
    outer: Vec<usize>,
    inner: Vec<usize>,
}

impl From<&SkewShape> for ShapeJson {
    fn from(s: &SkewShape) -> ShapeJson {
        ShapeJson { outer: s.outer().parts().to_vec(), inner: s.inner().padded(s.rows()).parts().to_vec() }
    }
}

#[derive(Serialize)]
struct ClassificationJson {
    shape: ShapeJson,
    flag: Vec<usize>,
    n: usize,
    classes: Vec<ClassJson>,
}

fn classify(a: ShapeArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = RunConfig::from_args(&a)?;
    let c = classify_svt(&cfg.shape, &cfg.flag, cfg.n)?;
    let classes = c
        .classes
        .iter()
        .map(|k| ClassJson {
            excess: k.key.excess.padded(cfg.shape.rows()).into_vec(),
            evolved_shape: (&k.key.shape).into(),
            evolved_flag: k.evolved_flag.bounds().to_vec(),
            recording: k.key.recording.to_json(k.key.shape.outer(), k.key.shape.inner()),
            compatible: k.key.compatible.rows().to_vec(),
            label: k.label.entries().to_vec(),
            members: k.members.iter().map(SetValuedTableau::to_json).collect(),
        })
        .collect();
    let j = ClassificationJson { shape: (&cfg.shape).into(), flag: cfg.flag.bounds().to_vec(), n: cfg.n, classes };
    writeln!(out, "{}", serde_json::to_string_pretty(&j)?)?;
    Ok(())
}

fn graph(a: GraphArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = RunConfig::from_args(&a.shape)?;
    let filter = SvtFilter { excess: a.excess.map(|l| Composition::new(l.0)), ..SvtFilter::default() };
    let elements = SvtEnumerator::new(&cfg.shape, &cfg.flag, filter)?.collect();
    write!(out, "{}", crystal_graph_dot(&elements, cfg.n))?;
    Ok(())
}

#[derive(Serialize)]
struct UncrowdJson {
    input: TableauJson,
    output_shape: ShapeJson,
    recording: TableauJson,
    straightened: TableauJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    flag_trace: Option<Vec<Vec<usize>>>,
}

fn uncrowd_cmd(a: UncrowdArgs, out: &mut dyn Write) -> Result<()> {
    let text = match (&a.tableau, &a.input) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        (None, None) => return Err(usage("give --tableau or --input")),
    };
    let j: TableauJson = serde_json::from_str(&text).map_err(|e| usage(format!("tableau JSON: {e}")))?;
    let t = SetValuedTableau::from_json(&j).map_err(|e| usage(e.to_string()))?;
    let flag = a.flag.map(|l| Flag::new(l.0)).transpose().map_err(|e| usage(e.to_string()))?;
    let result = if t.shape().is_connected() {
        let rec = uncrowd(t.shape(), t.shape(), &RecordingTableau::new(), &t)?;
        let back = uncrowd_inverse(t.shape(), &rec.output_shape, &rec.recording, &rec.straightened)?;
        if back != t {
            bail!(IdentityViolation {
                what: "uncrowding is not inverted by its inverse".into(),
                counterexample: text.trim().into(),
            });
        }
        let trace = flag.map(|f| flag_trace(&rec, &f)).transpose()?;
        UncrowdJson {
            input: t.to_json(),
            output_shape: (&rec.output_shape).into(),
            recording: rec.recording.to_json(rec.output_shape.outer(), rec.output_shape.inner()),
            straightened: rec.straightened.to_json(),
            flag_trace: trace.map(|v| v.iter().map(|f| f.bounds().to_vec()).collect()),
        }
    } else {
        let rec = psi(&t)?;
        let trace = flag.map(|f| crate::insertion::psi_flag(&t, &rec, &f)).transpose()?;
        UncrowdJson {
            input: t.to_json(),
            output_shape: (&rec.shape).into(),
            recording: rec.recording.to_json(rec.shape.outer(), rec.shape.inner()),
            straightened: rec.image.to_json(),
            flag_trace: trace.map(|f| vec![f.bounds().to_vec()]),
        }
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?;
    Ok(())
}

#[derive(Serialize)]
struct BurgeJson {
    top: Vec<u32>,
    bottom: Vec<u32>,
    p: Vec<Vec<u32>>,
    q: Vec<Vec<u32>>,
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<u32>>> {
    if s.trim_start().starts_with('[') {
        return serde_json::from_str(s).map_err(|e| usage(format!("matrix: {e}")));
    }
    s.split(';')
        .map(|row| {
            parse_list(row)
                .map(|v| v.0.into_iter().map(|x| x as u32).collect())
                .map_err(|e| usage(format!("matrix: {e}")))
        })
        .collect()
}

fn burge_cmd(a: BurgeArgs, out: &mut dyn Write) -> Result<()> {
    let bw = match (&a.matrix, &a.top, &a.bottom) {
        (Some(m), _, _) => {
            let m = parse_matrix(m)?;
            if m.iter().any(|r| r.len() != m[0].len()) {
                return Err(usage("matrix rows have different lengths"));
            }
            biword_of_matrix(&m)
        }
        (None, Some(t), Some(b)) => {
            let cv = |v: &[usize]| v.iter().map(|&x| x as u32).collect::<Vec<u32>>();
            Biword::new(cv(&t.0), cv(&b.0)).map_err(|e| usage(e.to_string()))?
        }
        _ => return Err(usage("give --matrix or both --top and --bottom")),
    };
    let (p, q) = burge(&bw);
    if burge_inverse(&p, &q)? != bw {
        bail!(IdentityViolation { what: "Burge correspondence did not invert".into(), counterexample: bw.to_string() });
    }
    let j =
        BurgeJson { top: bw.top().to_vec(), bottom: bw.bottom().to_vec(), p: p.rows().to_vec(), q: q.rows().to_vec() };
    writeln!(out, "{}", serde_json::to_string_pretty(&j)?)?;
    Ok(())
}

#[derive(Serialize, Default)]
struct SelftestReport {
    crystal_elements: usize,
    key_expansions: usize,
    dual_key_expansions: usize,
    uncrowd_round_trips: usize,
    burge_round_trips: usize,
    basis_expansions: usize,
}

fn violation(what: impl Into<String>, counterexample: impl std::fmt::Display) -> anyhow::Error {
    IdentityViolation { what: what.into(), counterexample: counterexample.to_string() }.into()
}

fn selftest(a: SelftestArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    if a.n == 0 {
        return Err(usage("n must be positive"));
    }
    let n = a.n;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut report = SelftestReport::default();

    writeln!(err, "crystal axioms")?;
    for shape in SkewShape::all_compact(a.max_size.min(5)) {
        let all = SvtEnumerator::new(&shape, &Flag::full(n, shape.rows()), SvtFilter::default())?.collect();
        for t in &all {
            report.crystal_elements += 1;
            for i in 1..n {
                let (eps, phi) = t.string_counts(i);
                if string_lengths(t, i) != (eps, phi) {
                    return Err(violation(format!("string lengths for i = {i}"), t));
                }
                if let OrZero::Elem(u) = t.lower(i) {
                    if u.raise(i) != OrZero::Elem(t.clone()) || u.excess() != t.excess() {
                        return Err(violation(format!("e_{i} f_{i} is not the identity"), t));
                    }
                }
            }
        }
    }

    writeln!(err, "key expansions of flagged Grothendieck polynomials")?;
    for shape in SkewShape::all_up_to(a.max_size) {
        let table = PsiTable::build(&shape, n)?;
        for phi in Flag::all(shape.rows(), n) {
            key_expansion_G_with(&table, &phi, n)?;
            report.key_expansions += 1;
        }
    }

    writeln!(err, "key expansions of flagged dual Grothendieck polynomials")?;
    for shape in SkewShape::all_up_to(a.max_size.min(6)) {
        for phi in Flag::all(shape.rows(), n) {
            key_expansion_g(&shape, &phi, n)?;
            report.dual_key_expansions += 1;
        }
    }

    writeln!(err, "uncrowding round trips")?;
    for shape in SkewShape::all_compact(a.max_size.min(6)).into_iter().filter(SkewShape::is_connected) {
        let filter = SvtFilter { max_entries: Some(shape.size() + 2), ..SvtFilter::default() };
        let all = SvtEnumerator::new(&shape, &Flag::full(n, shape.rows()), filter)?.collect();
        for t in all {
            let rec = uncrowd(&shape, &shape, &RecordingTableau::new(), &t)?;
            let back = uncrowd_inverse(&shape, &rec.output_shape, &rec.recording, &rec.straightened)?;
            if back != t {
                return Err(violation("uncrowding round trip", &t));
            }
            report.uncrowd_round_trips += 1;
        }
    }

    writeln!(err, "Burge round trips")?;
    for _ in 0..200 {
        let rows = rng.random_range(1..=4);
        let cols = rng.random_range(1..=4);
        let m: Vec<Vec<u32>> = (0..rows).map(|_| (0..cols).map(|_| rng.random_range(0..=3)).collect()).collect();
        let bw = biword_of_matrix(&m);
        let (p, q) = burge(&bw);
        if burge_inverse(&p, &q)? != bw {
            return Err(violation("Burge round trip", &bw));
        }
        report.burge_round_trips += 1;
    }

    writeln!(err, "g and G basis expansions")?;
    let nb = n.min(3);
    for shape in SkewShape::all_up_to(a.max_size.min(4)) {
        for source in [Source::Grothendieck, Source::Dual] {
            expand_in_g(&shape, nb, source)?;
            expand_in_G(&shape, nb, source, shape.outer().size() + 2)?;
            report.basis_expansions += 2;
        }
    }

    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}
