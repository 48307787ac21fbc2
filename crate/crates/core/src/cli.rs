//! The `orderly` command line.
//!
//! Thin argument handling over the library: every subcommand parses its
//! inputs, calls one library entry point, and reports through
//! [`crate::report`]. Exit codes are uniform — `0` for a positive outcome
//! (orderly, found, no violations), `1` for a negative one (non-orderly,
//! exhausted or timed out, violations found), `2` for unusable input.
//! Input-shaped flags accept either a file path or the literal content.

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{reduce_sequence, AlgebraSpec, AssignmentPrefix};
use crate::coloring::{Coloring, TupleColoring};
use crate::enumerate::TermBounds;
use crate::orderly::{OrderlyAlgebraView, ViewKind};
use crate::report::{emit_stdout, RunManifest};
use crate::search::{
    check_injectivity, find_constant_reduction, find_homogeneous_reduction,
    find_tuple_homogeneous, verify_one_to_one_obstruction, SearchConfig, SearchOutcome, Side,
    TupleSearchOutcome,
};
use crate::sharp::{check_claim_1010a, check_theorem_0107b, pair_witness, split_term, wrap_witness};
use crate::signature::Signature;
use crate::term::{AdmissiblePrefix, OrderlyTerm, Term};

#[derive(Parser)]
#[command(
    name = "orderly",
    version,
    about = "Orderly terms, reductions of sequences, and homogeneous searches"
)]
struct Cli {
    /// Worker threads for parallel scans.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term and report whether it is orderly.
    Validate(ValidateArgs),
    /// Evaluate a witness under an algebra and assignment.
    Reduce(ReduceArgs),
    /// Search for homogeneous or constant reductions.
    Search {
        #[command(subcommand)]
        what: SearchCommand,
    },
    /// Split terms and transform witnesses by index doubling.
    Sharp {
        #[command(subcommand)]
        what: SharpCommand,
    },
    /// Run a bulk check and report its violations.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
}

#[derive(Args)]
struct ValidateArgs {
    /// The term text, e.g. "f v0 f v1 v2".
    term: String,
    #[command(flatten)]
    signature: SignatureArg,
}

#[derive(Args)]
struct SignatureArg {
    /// Signature as JSON ({"symbols":[{"name":"f","arity":2}]}) or a file;
    /// defaults to the single binary symbol f.
    #[arg(long)]
    signature: Option<String>,
}

#[derive(Args)]
struct ReduceArgs {
    /// Algebra: a selector (nat-add, variable-words:<letters>,
    /// pair:<inner>), JSON, or a file.
    #[arg(long)]
    algebra: String,
    /// Assignment prefix as a JSON array or a file.
    #[arg(long)]
    assignment: String,
    /// Witness: comma-separated terms, a JSON array of terms, or a file.
    #[arg(long)]
    witness: String,
}

#[derive(Args)]
struct ViewArgs {
    /// Full view descriptor as JSON or a file; alternative to
    /// --algebra/--assignment.
    #[arg(long, conflicts_with_all = ["algebra", "assignment"])]
    view: Option<String>,
    /// Algebra for an induced view (see `reduce --algebra`).
    #[arg(long, requires = "assignment")]
    algebra: Option<String>,
    /// Assignment for an induced view.
    #[arg(long, requires = "algebra")]
    assignment: Option<String>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Largest term size to enumerate.
    #[arg(long, default_value_t = 4)]
    max_size: usize,
    /// Largest variable index to enumerate; defaults to the assignment's
    /// coverage for induced views and to 5 otherwise.
    #[arg(long)]
    max_index: Option<u32>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    view: ViewArgs,
    /// Witness length k; probes use variables v0 … v(k-1).
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Largest witness entry size.
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    /// Largest variable index in witness entries; defaults like
    /// `check --max-index`.
    #[arg(long)]
    max_index: Option<u32>,
    /// Largest probe size defining the finite reduction set.
    #[arg(long, default_value_t = 3)]
    fr_size: usize,
    /// Wall-clock budget in milliseconds.
    #[arg(long)]
    time_budget_ms: Option<u64>,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Search against a residue coloring of natural values.
    Hindman {
        #[command(flatten)]
        search: SearchArgs,
        /// Residue modulus (at least 2).
        #[arg(long = "mod")]
        modulus: u64,
        /// Accepted residues, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        accept: Vec<u64>,
    },
    /// Search against an arbitrary coloring.
    Homogeneous {
        #[command(flatten)]
        search: SearchArgs,
        /// Coloring as JSON or a file.
        #[arg(long)]
        coloring: String,
    },
    /// Search for a reduction with a single value.
    Constant {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search n-tuples of the reduction against a component coloring.
    Tuples {
        #[command(flatten)]
        search: SearchArgs,
        /// Tuple length.
        #[arg(long)]
        n: usize,
        /// Which tuple component the coloring applies to.
        #[arg(long, default_value_t = 0)]
        component: usize,
        /// Coloring for the selected component, as JSON or a file.
        #[arg(long)]
        coloring: String,
    },
}

#[derive(Subcommand)]
enum SharpCommand {
    /// Split a term into its doubled-index parts.
    Split {
        term: String,
        #[command(flatten)]
        signature: SignatureArg,
    },
    /// Replace each witness entry by f applied to the entry's parts.
    WrapWitness {
        #[arg(long)]
        witness: String,
        #[command(flatten)]
        signature: SignatureArg,
    },
    /// Join consecutive witness entries pairwise under f.
    PairWitness {
        #[arg(long)]
        witness: String,
        #[command(flatten)]
        signature: SignatureArg,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Equal value tuples must yield equal application values.
    Congruence {
        #[command(flatten)]
        view: ViewArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Associativity over <-chains plus value dependence on variable sets.
    Semigroup {
        #[command(flatten)]
        view: ViewArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Equal variable sets must land on one side of the coloring.
    Prehomogeneous {
        #[command(flatten)]
        view: ViewArgs,
        /// Coloring as JSON or a file.
        #[arg(long)]
        coloring: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// The two witness-transform identities and the reduction chain
    /// they induce.
    #[command(name = "claim-1010a")]
    Claim1010a {
        #[command(flatten)]
        view: ViewArgs,
        /// The witness t⃗ to wrap.
        #[arg(long)]
        witness: String,
        /// The even-length witness u⃗ to pair.
        #[arg(long)]
        second_witness: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Inducing over paired values equals sharpening over interleaved ones.
    #[command(name = "thm-0107b")]
    Thm0107b {
        /// The component algebra (its paired form is built here).
        #[arg(long)]
        algebra: String,
        /// Assignment of value pairs, as a JSON array or a file.
        #[arg(long)]
        assignment: String,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Leading-parity values obstruct every reduction.
    Obstruction {
        #[command(flatten)]
        view: ViewArgs,
        /// Largest witness length to check (from 2 up).
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Distinct terms must take distinct values.
    Injectivity {
        #[command(flatten)]
        view: ViewArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

/// A user-facing failure: printed as a plain message, never a backtrace.
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError(e.to_string())
    }
}

/// What a successful dispatch hands back: the stdout document, the human
/// summary, and the exit code.
struct Report {
    doc: serde_json::Value,
    summary: String,
    exit: u8,
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let mut manifest = RunManifest::new(std::env::args());
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| dispatch(&cli.command, &mut manifest)) {
        Ok(report) => {
            emit_stdout(&report.doc);
            manifest.set_outcome(report.summary.clone());
            manifest.emit(&report.summary);
            ExitCode::from(report.exit)
        }
        Err(CliError(message)) => {
            manifest.set_outcome(format!("error: {message}"));
            manifest.emit(&format!("error: {message}"));
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: &Command, manifest: &mut RunManifest) -> Result<Report, CliError> {
    match command {
        Command::Validate(args) => validate(args, manifest),
        Command::Reduce(args) => reduce(args, manifest),
        Command::Search { what } => search(what, manifest),
        Command::Sharp { what } => sharp(what, manifest),
        Command::Check { what } => check(what, manifest),
    }
}

// === Input plumbing ===

/// Resolve a flag that is either a file path or the literal content, and
/// record whichever bytes were used in the manifest.
fn source(raw: &str, label: &str, manifest: &mut RunManifest) -> Result<String, CliError> {
    if Path::new(raw).is_file() {
        let bytes = fs::read(raw).map_err(|e| CliError(format!("reading {raw}: {e}")))?;
        manifest.record_input(raw, &bytes);
        String::from_utf8(bytes).map_err(|_| CliError(format!("{raw} is not UTF-8")))
    } else {
        manifest.record_input(format!("arg:{label}"), raw.as_bytes());
        Ok(raw.to_string())
    }
}

fn parse_json(text: &str, what: &str) -> Result<serde_json::Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError(format!("{what}: invalid JSON: {e}")))
}

fn parse_signature(
    arg: &SignatureArg,
    manifest: &mut RunManifest,
) -> Result<Signature, CliError> {
    match &arg.signature {
        None => Ok(Signature::single_binary()),
        Some(raw) => {
            let text = source(raw, "--signature", manifest)?;
            Ok(Signature::from_json(&parse_json(&text, "signature")?)?)
        }
    }
}

fn parse_algebra(raw: &str, manifest: &mut RunManifest) -> Result<AlgebraSpec, CliError> {
    let text = source(raw, "--algebra", manifest)?;
    if text.trim_start().starts_with('{') {
        Ok(AlgebraSpec::from_json(&parse_json(&text, "algebra")?)?)
    } else {
        Ok(AlgebraSpec::from_selector(text.trim())?)
    }
}

fn parse_assignment(
    raw: &str,
    alg: &AlgebraSpec,
    manifest: &mut RunManifest,
) -> Result<AssignmentPrefix, CliError> {
    let text = source(raw, "--assignment", manifest)?;
    Ok(AssignmentPrefix::from_json(&parse_json(&text, "assignment")?, alg)?)
}

fn parse_witness(
    raw: &str,
    sig: &Signature,
    label: &str,
    manifest: &mut RunManifest,
) -> Result<AdmissiblePrefix, CliError> {
    let text = source(raw, label, manifest)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let json = parse_json(&text, "witness")?;
        let json = if json.is_array() {
            serde_json::json!({ "terms": json })
        } else {
            json
        };
        Ok(AdmissiblePrefix::from_json(&json, sig)?)
    } else {
        let texts: Vec<&str> = text.split(',').map(str::trim).collect();
        Ok(AdmissiblePrefix::parse(&texts, sig)?)
    }
}

fn parse_coloring(raw: &str, manifest: &mut RunManifest) -> Result<Coloring, CliError> {
    let text = source(raw, "--coloring", manifest)?;
    Ok(Coloring::from_json(&parse_json(&text, "coloring")?)?)
}

fn build_view(
    args: &ViewArgs,
    manifest: &mut RunManifest,
) -> Result<OrderlyAlgebraView, CliError> {
    if let Some(raw) = &args.view {
        let text = source(raw, "--view", manifest)?;
        return Ok(OrderlyAlgebraView::from_json(&parse_json(&text, "view")?)?);
    }
    match (&args.algebra, &args.assignment) {
        (Some(alg_raw), Some(a_raw)) => {
            let alg = parse_algebra(alg_raw, manifest)?;
            let a = parse_assignment(a_raw, &alg, manifest)?;
            Ok(OrderlyAlgebraView::induced(alg, a))
        }
        _ => Err(CliError(
            "a view is required: pass --view, or --algebra with --assignment".to_string(),
        )),
    }
}

/// Default the index bound to the view's natural coverage when the flag is
/// omitted: an induced view covers its assignment, anything else gets a
/// small fixed window.
fn resolve_bounds(bounds: &BoundsArgs, view: &OrderlyAlgebraView) -> TermBounds {
    resolve_index_bounds(bounds.max_size, bounds.max_index, view)
}

fn resolve_index_bounds(
    max_size: usize,
    max_index: Option<u32>,
    view: &OrderlyAlgebraView,
) -> TermBounds {
    let max_index = max_index.unwrap_or_else(|| match view.kind() {
        ViewKind::Induced { assignment, .. } => assignment.len().saturating_sub(1) as u32,
        _ => 5,
    });
    TermBounds::new(max_size, max_index)
}

fn witness_texts(terms: &[OrderlyTerm]) -> Vec<String> {
    terms.iter().map(|t| t.to_string()).collect()
}

fn bounds_json(bounds: &TermBounds) -> serde_json::Value {
    serde_json::json!({ "max_size": bounds.max_size, "max_index": bounds.max_index })
}

// === Subcommands ===

fn validate(args: &ValidateArgs, manifest: &mut RunManifest) -> Result<Report, CliError> {
    let sig = parse_signature(&args.signature, manifest)?;
    manifest.record_input("arg:term", args.term.as_bytes());
    let term = Term::parse(&args.term, &sig)?;
    let orderly = term.is_orderly();
    let doc = serde_json::json!({
        "term": term.to_string(),
        "orderly": orderly,
        "size": term.size(),
        "variables": term.variables(),
    });
    Ok(Report {
        doc,
        summary: if orderly {
            format!("orderly: {term}")
        } else {
            format!("not orderly: {term}")
        },
        exit: if orderly { 0 } else { 1 },
    })
}

fn reduce(args: &ReduceArgs, manifest: &mut RunManifest) -> Result<Report, CliError> {
    let alg = parse_algebra(&args.algebra, manifest)?;
    let a = parse_assignment(&args.assignment, &alg, manifest)?;
    let witness = parse_witness(&args.witness, &alg.signature(), "--witness", manifest)?;
    let values = reduce_sequence(&alg, &a, &witness)?;
    let doc = serde_json::json!({
        "witness": witness_texts(witness.terms()),
        "values": values.to_json(),
    });
    Ok(Report {
        doc,
        summary: format!("reduced {} entries: {values}", witness.len()),
        exit: 0,
    })
}

fn search(command: &SearchCommand, manifest: &mut RunManifest) -> Result<Report, CliError> {
    let (args, kind) = match command {
        SearchCommand::Hindman { search, .. } => (search, "hindman"),
        SearchCommand::Homogeneous { search, .. } => (search, "homogeneous"),
        SearchCommand::Constant { search } => (search, "constant"),
        SearchCommand::Tuples { search, .. } => (search, "tuples"),
    };
    let view = build_view(&args.view, manifest)?;
    let entry_bounds = resolve_index_bounds(args.max_size, args.max_index, &view);
    let mut config = SearchConfig::new(
        args.k,
        entry_bounds.max_size,
        entry_bounds.max_index,
        args.fr_size,
    );
    if let Some(ms) = args.time_budget_ms {
        config = config.with_time_budget(Duration::from_millis(ms));
    }

    let (doc, summary, exit) = match command {
        SearchCommand::Hindman { modulus, accept, .. } => {
            let coloring = Coloring::residue(*modulus, accept.iter().copied())?;
            manifest.set_config(serde_json::json!({
                "search": kind, "config": config.to_json(), "coloring": coloring.to_json(),
            }));
            scalar_outcome(
                kind,
                Some(&coloring),
                &config,
                find_homogeneous_reduction(&view, &coloring, &config)?,
            )
        }
        SearchCommand::Homogeneous { coloring, .. } => {
            let coloring = parse_coloring(coloring, manifest)?;
            manifest.set_config(serde_json::json!({
                "search": kind, "config": config.to_json(), "coloring": coloring.to_json(),
            }));
            scalar_outcome(
                kind,
                Some(&coloring),
                &config,
                find_homogeneous_reduction(&view, &coloring, &config)?,
            )
        }
        SearchCommand::Constant { .. } => {
            manifest.set_config(
                serde_json::json!({ "search": kind, "config": config.to_json() }),
            );
            scalar_outcome(kind, None, &config, find_constant_reduction(&view, &config)?)
        }
        SearchCommand::Tuples { n, component, coloring, .. } => {
            let inner = parse_coloring(coloring, manifest)?;
            let coloring = TupleColoring::component(*component, inner);
            manifest.set_config(serde_json::json!({
                "search": kind, "config": config.to_json(), "n": n,
                "coloring": coloring.to_json(),
            }));
            let outcome = find_tuple_homogeneous(&view, &coloring, *n, &config)?;
            tuple_outcome(kind, &coloring, *n, &config, outcome)
        }
    };
    Ok(Report { doc, summary, exit })
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Contained => "contained",
        Side::Disjoint => "disjoint",
        Side::Constant => "constant",
    }
}

fn scalar_outcome(
    kind: &str,
    coloring: Option<&Coloring>,
    config: &SearchConfig,
    outcome: SearchOutcome,
) -> (serde_json::Value, String, u8) {
    let mut doc = serde_json::json!({ "search": kind, "config": config.to_json() });
    if let Some(c) = coloring {
        doc["coloring"] = c.to_json();
    }
    match outcome {
        SearchOutcome::Found { witness, side, certificate } => {
            doc["outcome"] = "found".into();
            doc["witness"] = witness_texts(witness.terms()).into();
            doc["side"] = serde_json::to_value(side).expect("side serializes");
            doc["certificate"] =
                serde_json::to_value(&certificate).expect("certificate serializes");
            let summary = format!("found {witness} ({})", side_name(side));
            (doc, summary, 0)
        }
        SearchOutcome::Exhausted { stats } => {
            doc["outcome"] = "exhausted".into();
            doc["stats"] = serde_json::to_value(stats).expect("stats serialize");
            let summary = format!(
                "exhausted after {} witnesses, {} probes",
                stats.prefixes_examined, stats.probes_examined
            );
            (doc, summary, 1)
        }
        SearchOutcome::TimedOut { stats } => {
            doc["outcome"] = "timed-out".into();
            doc["stats"] = serde_json::to_value(stats).expect("stats serialize");
            let summary = format!(
                "timed out after {} witnesses, {} probes",
                stats.prefixes_examined, stats.probes_examined
            );
            (doc, summary, 1)
        }
    }
}

fn tuple_outcome(
    kind: &str,
    coloring: &TupleColoring,
    n: usize,
    config: &SearchConfig,
    outcome: TupleSearchOutcome,
) -> (serde_json::Value, String, u8) {
    let mut doc = serde_json::json!({
        "search": kind,
        "config": config.to_json(),
        "n": n,
        "coloring": coloring.to_json(),
    });
    match outcome {
        TupleSearchOutcome::Found { witness, side, certificate } => {
            doc["outcome"] = "found".into();
            doc["witness"] = witness_texts(witness.terms()).into();
            doc["side"] = serde_json::to_value(side).expect("side serializes");
            doc["certificate"] =
                serde_json::to_value(&certificate).expect("certificate serializes");
            let summary = format!("found {witness} ({})", side_name(side));
            (doc, summary, 0)
        }
        TupleSearchOutcome::Exhausted { stats } => {
            doc["outcome"] = "exhausted".into();
            doc["stats"] = serde_json::to_value(stats).expect("stats serialize");
            let summary = format!(
                "exhausted after {} witnesses, {} tuples",
                stats.prefixes_examined, stats.probes_examined
            );
            (doc, summary, 1)
        }
        TupleSearchOutcome::TimedOut { stats } => {
            doc["outcome"] = "timed-out".into();
            doc["stats"] = serde_json::to_value(stats).expect("stats serialize");
            let summary = format!(
                "timed out after {} witnesses, {} tuples",
                stats.prefixes_examined, stats.probes_examined
            );
            (doc, summary, 1)
        }
    }
}

fn sharp(command: &SharpCommand, manifest: &mut RunManifest) -> Result<Report, CliError> {
    match command {
        SharpCommand::Split { term, signature } => {
            let sig = parse_signature(signature, manifest)?;
            manifest.record_input("arg:term", term.as_bytes());
            let term = OrderlyTerm::parse(term, &sig)?;
            let (x, y) = split_term(&term, &sig)?;
            Ok(Report {
                doc: serde_json::json!({
                    "term": term.to_string(),
                    "x": x.to_string(),
                    "y": y.to_string(),
                }),
                summary: format!("split {term} into {x} and {y}"),
                exit: 0,
            })
        }
        SharpCommand::WrapWitness { witness, signature } => {
            let sig = parse_signature(signature, manifest)?;
            let witness = parse_witness(witness, &sig, "--witness", manifest)?;
            let wrapped = wrap_witness(&witness, &sig)?;
            Ok(Report {
                doc: serde_json::json!({
                    "witness": witness_texts(witness.terms()),
                    "wrapped": witness_texts(wrapped.terms()),
                }),
                summary: format!("wrapped {} entries", witness.len()),
                exit: 0,
            })
        }
        SharpCommand::PairWitness { witness, signature } => {
            let sig = parse_signature(signature, manifest)?;
            let witness = parse_witness(witness, &sig, "--witness", manifest)?;
            let paired = pair_witness(&witness, &sig)?;
            Ok(Report {
                doc: serde_json::json!({
                    "witness": witness_texts(witness.terms()),
                    "paired": witness_texts(paired.terms()),
                }),
                summary: format!(
                    "paired {} entries into {}",
                    witness.len(),
                    paired.len()
                ),
                exit: 0,
            })
        }
    }
}

fn check(command: &CheckCommand, manifest: &mut RunManifest) -> Result<Report, CliError> {
    let (name, checked, violations, bounds, extra): (
        &str,
        u64,
        Vec<serde_json::Value>,
        TermBounds,
        Option<(&str, serde_json::Value)>,
    ) = match command {
        CheckCommand::Congruence { view, bounds } => {
            let view = build_view(view, manifest)?;
            let bounds = resolve_bounds(bounds, &view);
            let report = view.check_congruence(&bounds)?;
            ("congruence", report.checked, to_json_list(&report.violations), bounds, None)
        }
        CheckCommand::Semigroup { view, bounds } => {
            let view = build_view(view, manifest)?;
            let bounds = resolve_bounds(bounds, &view);
            let report = view.check_semigroup(&bounds)?;
            let mut violations = Vec::new();
            for v in &report.associativity_violations {
                let mut json = serde_json::to_value(v).expect("violation serializes");
                json["kind"] = "associativity".into();
                violations.push(json);
            }
            for v in &report.variable_set_violations {
                let mut json = serde_json::to_value(v).expect("violation serializes");
                json["kind"] = "variable-set".into();
                violations.push(json);
            }
            (
                "semigroup",
                report.associativity_checked + report.variable_set_checked,
                violations,
                bounds,
                None,
            )
        }
        CheckCommand::Prehomogeneous { view, coloring, bounds } => {
            let view = build_view(view, manifest)?;
            let coloring = parse_coloring(coloring, manifest)?;
            let bounds = resolve_bounds(bounds, &view);
            let report = view.check_prehomogeneous(&coloring, &bounds)?;
            (
                "prehomogeneous",
                report.checked,
                to_json_list(&report.violations),
                bounds,
                Some(("coloring", coloring.to_json())),
            )
        }
        CheckCommand::Claim1010a { view, witness, second_witness, bounds } => {
            let view = build_view(view, manifest)?;
            let sig = view.signature().clone();
            let tvec = parse_witness(witness, &sig, "--witness", manifest)?;
            let uvec = parse_witness(second_witness, &sig, "--second-witness", manifest)?;
            let bounds = resolve_bounds(bounds, &view);
            let report = check_claim_1010a(&view, &tvec, &uvec, &bounds)?;
            (
                "claim-1010a",
                report.checked,
                to_json_list(&report.violations),
                bounds,
                Some(("claim", "1010a".into())),
            )
        }
        CheckCommand::Thm0107b { algebra, assignment, bounds } => {
            let inner = parse_algebra(algebra, manifest)?;
            let paired = AlgebraSpec::pair(inner.clone())?;
            let b = parse_assignment(assignment, &paired, manifest)?;
            let bounds = TermBounds::new(
                bounds.max_size,
                bounds.max_index.unwrap_or(b.len().saturating_sub(1) as u32),
            );
            let report = check_theorem_0107b(&inner, &b, &bounds)?;
            (
                "thm-0107b",
                report.checked,
                to_json_list(&report.violations),
                bounds,
                Some(("claim", "0107b".into())),
            )
        }
        CheckCommand::Obstruction { view, k, bounds } => {
            let view = build_view(view, manifest)?;
            let bounds = resolve_bounds(bounds, &view);
            let report = verify_one_to_one_obstruction(&view, *k, &bounds)?;
            (
                "obstruction",
                report.checked,
                to_json_list(&report.violations),
                bounds,
                Some(("coloring", report.coloring.to_json())),
            )
        }
        CheckCommand::Injectivity { view, bounds } => {
            let view = build_view(view, manifest)?;
            let bounds = resolve_bounds(bounds, &view);
            let report = check_injectivity(&view, &bounds)?;
            ("injectivity", report.checked, to_json_list(&report.collisions), bounds, None)
        }
    };

    let mut doc = serde_json::json!({ "check": name });
    if let Some((key, value)) = extra {
        doc[key] = value;
    }
    doc["checked"] = checked.into();
    doc["violations"] = violations.clone().into();
    doc["bounds"] = bounds_json(&bounds);
    manifest.set_config(serde_json::json!({ "check": name, "bounds": bounds_json(&bounds) }));
    let exit = if violations.is_empty() { 0 } else { 1 };
    Ok(Report {
        doc,
        summary: format!("{name}: {checked} checked, {} violations", violations.len()),
        exit,
    })
}

fn to_json_list<T: serde::Serialize>(items: &[T]) -> Vec<serde_json::Value> {
    items
        .iter()
        .map(|item| serde_json::to_value(item).expect("violations serialize"))
        .collect()
}
