//! Command-line driver: sequence generation and counting, design
//! construction, variant corpora with manifests, corpus censuses, and the
//! bound-threshold table. Every file written is re-read and re-validated
//! before the command reports success, and identical configuration plus
//! identical inputs produce byte-identical outputs.
//!
//! Exit codes: 0 success; 1 usage or operational error; 2 principled
//! nonexistence or unsupported parameters; 3 a recipe that is only
//! transcribed as printed was refused or failed validation without a
//! search fallback.

use clap::{Args, Parser, Subcommand};
use cyclesys::construct::{
    admissible, assemble_ck_modk, c5_mod1, c5_mod5, ck_mod1_printed, search_fallback,
    searched_system, sts_from_split, ConstructError, ConstructedSystem, SearchBudget,
    SearchOutcome, SearchShape,
};
use cyclesys::cyclic::validate_cycle_system;
use cyclesys::equivalence::census;
use cyclesys::files::{
    parse_config, parse_design_file, parse_manifest, parse_sequence_file,
    write_design_file, write_manifest, write_sequence_file, DesignHeader, DesignRole, Manifest,
    ManifestEntry, RunConfig, SequenceFile, CONFIG_ENV,
};
use cyclesys::skolem::{
    construct_sequence, count_sequences_parallel, enumerate_sequences, quick_sequence, Family,
    SkolemError, SkolemKind, SkolemSequence,
};
use cyclesys::variants::{
    class_variant, format_class_vector, format_sign_vector, parse_class_vector,
    parse_sign_vector,
};
use cyclesys::{CycleSystem, DifferenceSystem};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cyclesys",
    version,
    about = "Construct and analyze cyclic k-cycle systems of complete graphs",
    propagate_version = true
)]
struct Cli {
    /// Run configuration file (key=value lines); overrides the CYCLESYS_CONFIG
    /// environment variable. Without either, built-in defaults apply.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate, enumerate, or count Skolem-type sequences
    #[command(subcommand)]
    Skolem(SkolemCmd),
    /// Build a cyclic k-cycle system on v vertices and emit it as a design file
    Construct(ConstructArgs),
    /// Expand one difference system into a corpus of sign or class variants
    Variants(VariantsArgs),
    /// Verify a variant corpus against its manifest and report census bounds
    Census(CensusArgs),
    /// Evaluate the growth-rate bound formulas
    #[command(subcommand)]
    Bounds(BoundsCmd),
}

#[derive(Subcommand)]
enum SkolemCmd {
    /// Emit one sequence of the given order and family
    Gen(SkolemGenArgs),
    /// Emit every sequence of the given order and family, lexicographically
    Enum(SkolemEnumArgs),
    /// Print the exact number of sequences of the given order and family
    Count(SkolemCountArgs),
}

#[derive(Args)]
struct SkolemGenArgs {
    /// Sequence order n
    #[arg(long)]
    order: u32,
    /// Sequence family: skolem | split
    #[arg(long)]
    family: String,
    /// Use the fast randomized-restart search instead of the
    /// lexicographically least sequence (recommended past order 16)
    #[arg(long)]
    quick: bool,
    /// Write the sequence file here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SkolemEnumArgs {
    /// Sequence order n (capped by the n_enum configuration limit)
    #[arg(long)]
    order: u32,
    /// Sequence family: skolem | split
    #[arg(long)]
    family: String,
    /// Write the sequence file here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SkolemCountArgs {
    /// Sequence order n (capped by the n_enum configuration limit)
    #[arg(long)]
    order: u32,
    /// Sequence family: skolem | split
    #[arg(long)]
    family: String,
    /// Emit a JSON object instead of the bare count
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// Number of vertices (odd, with v(v-1) divisible by 2k)
    #[arg(long)]
    v: u64,
    /// Cycle length (odd, 3 <= k <= v)
    #[arg(long)]
    k: u64,
    /// Sequence file supplying the Skolem-type sequence the recipe consumes
    /// (first sequence in the file); without it a deterministic built-in
    /// search provides one
    #[arg(long, value_name = "FILE")]
    sequence: Option<PathBuf>,
    /// Permit the backtracking search: directly where no formula recipe
    /// applies, and as a substitute when an as-printed recipe fails
    #[arg(long)]
    allow_search: bool,
    /// Permit recipes whose source is transcribed as printed and may fail
    /// validation (v = 2nk+1 for k >= 7, and the k = 15 assembly)
    #[arg(long)]
    allow_as_printed: bool,
    /// Write the design file here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VariantsArgs {
    /// Input design file holding a difference system
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Sign vectors over the type-1 starters: "all" or one '+'/'-' string
    #[arg(long, value_name = "all|VEC")]
    signs: Option<String>,
    /// Class vectors over the type-1 starters (k = 5 only): "all" or one
    /// comma-separated list of indices in 1..=24
    #[arg(long, value_name = "all|VEC")]
    classes: Option<String>,
    /// Cap on the number of variants written (0 = unlimited)
    #[arg(long, default_value_t = 0)]
    limit: usize,
    /// Directory receiving the variant files and manifest.json
    #[arg(long, value_name = "DIR")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct CensusArgs {
    /// Corpus directory containing manifest.json and the files it lists
    #[arg(long, value_name = "DIR")]
    corpus: PathBuf,
    /// Emit the census as JSON instead of plain text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Check every cataloged threshold over a finite window of orders
    Verify(BoundsVerifyArgs),
}

#[derive(Args)]
struct BoundsVerifyArgs {
    /// Orders checked past each threshold (default: bound_window from the
    /// run configuration)
    #[arg(long)]
    window: Option<u32>,
    /// Emit one JSON object per claim instead of the plain table
    #[arg(long)]
    json: bool,
}

/// An error carrying its process exit code.
struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<(), Failure>;

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive here as non-error renderings.
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let cfg = load_config(cli)?;
    if cfg.parallelism > 0 {
        // A competing global pool (only possible in-process, e.g. tests) is
        // not worth failing over.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.parallelism).build_global();
    }
    match &cli.command {
        Command::Skolem(SkolemCmd::Gen(a)) => cmd_skolem_gen(a),
        Command::Skolem(SkolemCmd::Enum(a)) => cmd_skolem_enum(a, &cfg),
        Command::Skolem(SkolemCmd::Count(a)) => cmd_skolem_count(a, &cfg),
        Command::Construct(a) => cmd_construct(a, &cfg),
        Command::Variants(a) => cmd_variants(a),
        Command::Census(a) => cmd_census(a),
        Command::Bounds(BoundsCmd::Verify(a)) => cmd_bounds_verify(a, &cfg),
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| fail(1, format!("cannot read config {}: {e}", p.display())))?;
            parse_config(&text)
                .map_err(|e| fail(1, format!("config {}: {e}", p.display())))?
        }
        None => RunConfig::default(),
    };
    if cfg.n_enum == 0
        || cfg.search_node_limit == 0
        || cfg.search_time_limit_ms == 0
        || cfg.bound_window == 0
    {
        return Err(fail(1, "all configured limits must be positive"));
    }
    Ok(cfg)
}

fn budget_from(cfg: &RunConfig) -> SearchBudget {
    SearchBudget { node_limit: cfg.search_node_limit, time_limit_ms: cfg.search_time_limit_ms }
}

fn parse_family(s: &str) -> Result<Family, Failure> {
    s.parse::<Family>()
        .map_err(|_| fail(1, format!("unknown family {s:?}: expected skolem or split")))
}

/// Existence errors exit 2, everything else about a sequence request is a
/// usage problem.
fn skolem_code(e: &SkolemError) -> u8 {
    match e {
        SkolemError::NoSequence { .. } => 2,
        _ => 1,
    }
}

/// Write a sequence file (or print it), re-read what was written, and
/// insist it round-trips to the same sequences before reporting success.
fn finish_sequence_output(
    out: Option<&Path>,
    file: &SequenceFile,
    summary: &str,
) -> CmdResult {
    let text = write_sequence_file(file);
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
            let back = std::fs::read_to_string(path)
                .map_err(|e| fail(1, format!("cannot re-read {}: {e}", path.display())))?;
            check_sequence_text(&back, file)?;
            println!("{summary}");
        }
        None => {
            check_sequence_text(&text, file)?;
            print!("{text}");
        }
    }
    Ok(())
}

fn check_sequence_text(text: &str, expected: &SequenceFile) -> CmdResult {
    let parsed = parse_sequence_file(text)
        .map_err(|e| fail(1, format!("written sequence file does not re-parse: {e}")))?;
    if &parsed != expected {
        return Err(fail(1, "written sequence file does not round-trip"));
    }
    Ok(())
}

fn cmd_skolem_gen(a: &SkolemGenArgs) -> CmdResult {
    let family = parse_family(&a.family)?;
    let seq = if a.quick { quick_sequence(a.order, family) } else { construct_sequence(a.order, family) }
        .map_err(|e| fail(skolem_code(&e), e.to_string()))?;
    let file = SequenceFile { n: seq.order(), kind: seq.kind(), sequences: vec![seq] };
    let summary = format!(
        "wrote {}: one {} sequence of order {}",
        a.out.as_deref().map_or_else(|| "-".into(), |p| p.display().to_string()),
        file.kind,
        file.n
    );
    finish_sequence_output(a.out.as_deref(), &file, &summary)
}

fn enum_gate(order: u32, cfg: &RunConfig) -> CmdResult {
    if order > cfg.n_enum {
        return Err(fail(
            1,
            format!(
                "order {order} exceeds the configured enumeration limit (n_enum = {}); \
                 raise n_enum in the run configuration to go further",
                cfg.n_enum
            ),
        ));
    }
    Ok(())
}

fn cmd_skolem_enum(a: &SkolemEnumArgs, cfg: &RunConfig) -> CmdResult {
    let family = parse_family(&a.family)?;
    enum_gate(a.order, cfg)?;
    let kind = SkolemKind::for_family(family, a.order);
    let mut sequences = Vec::new();
    let count = enumerate_sequences(a.order, kind, |seq| sequences.push(seq.clone()))
        .map_err(|e| fail(skolem_code(&e), e.to_string()))?;
    if sequences.is_empty() {
        return Err(fail(2, format!("no {kind} sequence of order {} exists", a.order)));
    }
    let file = SequenceFile { n: a.order, kind, sequences };
    let summary = format!(
        "wrote {}: all {} {} sequences of order {}",
        a.out.as_deref().map_or_else(|| "-".into(), |p| p.display().to_string()),
        count.count,
        kind,
        a.order
    );
    finish_sequence_output(a.out.as_deref(), &file, &summary)
}

fn cmd_skolem_count(a: &SkolemCountArgs, cfg: &RunConfig) -> CmdResult {
    let family = parse_family(&a.family)?;
    enum_gate(a.order, cfg)?;
    let kind = SkolemKind::for_family(family, a.order);
    let result = count_sequences_parallel(a.order, kind)
        .map_err(|e| fail(skolem_code(&e), e.to_string()))?;
    if a.json {
        #[derive(Serialize)]
        struct CountReport<'a> {
            order: u32,
            family: &'a str,
            kind: String,
            count: String,
        }
        let report = CountReport {
            order: a.order,
            family: &a.family,
            kind: kind.to_string(),
            count: result.count.to_string(),
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("{}", result.count);
    }
    Ok(())
}

/// The sequence a recipe consumes: the first one in the user's file, or a
/// deterministic built-in search result.
fn recipe_sequence(
    a: &ConstructArgs,
    n: u32,
    family: Family,
) -> Result<SkolemSequence, Failure> {
    match &a.sequence {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail(1, format!("cannot read {}: {e}", path.display())))?;
            let file = parse_sequence_file(&text)
                .map_err(|e| fail(1, format!("sequence file {}: {e}", path.display())))?;
            if file.n != n {
                return Err(fail(
                    1,
                    format!(
                        "sequence file has order {} but v = {} with k = {} needs order {n}",
                        file.n, a.v, a.k
                    ),
                ));
            }
            file.sequences
                .into_iter()
                .next()
                .ok_or_else(|| fail(1, format!("sequence file {} is empty", path.display())))
        }
        None => quick_sequence(n, family).map_err(|e| fail(skolem_code(&e), e.to_string())),
    }
}

fn construct_code(e: &ConstructError) -> u8 {
    match e {
        ConstructError::Inadmissible { .. }
        | ConstructError::UnsupportedPrimePower { .. }
        | ConstructError::ShortSystemUnavailable { .. }
        | ConstructError::ProvedNonexistent => 2,
        ConstructError::Skolem(inner) => skolem_code(inner),
        ConstructError::CandidateInvalid => 3,
        _ => 1,
    }
}

fn map_construct(e: ConstructError) -> Failure {
    fail(construct_code(&e), e.to_string())
}

fn cmd_construct(a: &ConstructArgs, cfg: &RunConfig) -> CmdResult {
    let (v, k) = (a.v, a.k);
    if !admissible(v, k) {
        return Err(fail(
            2,
            format!("(v, k) = ({v}, {k}) is not admissible: need odd v >= 3, odd k with 3 <= k <= v, and v(v-1) divisible by 2k"),
        ));
    }
    if k % 2 == 0 {
        return Err(fail(2, format!("even cycle length k = {k} is out of scope")));
    }
    let budget = budget_from(cfg);

    if (v, k) == (9, 3) {
        if a.allow_search {
            let outcome = search_fallback(9, 3, &SearchShape::default(), &budget)
                .map_err(map_construct)?;
            return match outcome {
                SearchOutcome::Nonexistent { nodes } => Err(fail(
                    2,
                    format!(
                        "no cyclic 3-cycle system on 9 vertices exists; exhaustive search \
                         closed the whole tree in {nodes} nodes"
                    ),
                )),
                other => Err(fail(
                    1,
                    format!("exhaustive (9,3) search ended unexpectedly: {other:?}"),
                )),
            };
        }
        return Err(fail(
            2,
            "no cyclic 3-cycle system on 9 vertices exists; rerun with --allow-search \
             for the exhaustive certificate",
        ));
    }

    let mut notes: Vec<String> = Vec::new();
    let made = route_construction(a, cfg, &budget, &mut notes)?;
    let header = DesignHeader {
        v,
        k: k as usize,
        role: DesignRole::DifferenceSystem,
        recipe: Some(made.recipe.to_string()),
        trust: Some(made.trust.to_string()),
        signs: None,
        classes: None,
    };
    let text = write_design_file(&header, made.system.starters());
    for note in &notes {
        eprintln!("note: {note}");
    }
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
            let back = std::fs::read_to_string(path)
                .map_err(|e| fail(1, format!("cannot re-read {}: {e}", path.display())))?;
            revalidate_design(&back)?;
            println!(
                "wrote {}: v={v} k={k} starters={} recipe={} trust={}",
                path.display(),
                made.system.starters().len(),
                made.recipe,
                made.trust
            );
        }
        None => {
            revalidate_design(&text)?;
            print!("{text}");
        }
    }
    Ok(())
}

fn route_construction(
    a: &ConstructArgs,
    cfg: &RunConfig,
    budget: &SearchBudget,
    notes: &mut Vec<String>,
) -> Result<ConstructedSystem, Failure> {
    let (v, k) = (a.v, a.k);

    if k == 3 && v % 6 == 3 {
        let n = ((v - 3) / 6) as u32;
        let seq = recipe_sequence(a, n, Family::Split)?;
        return sts_from_split(&seq).map_err(map_construct);
    }
    if k == 5 && v % 10 == 1 {
        let n = ((v - 1) / 10) as u32;
        let seq = if n >= 2 { Some(recipe_sequence(a, n, Family::Skolem)?) } else { None };
        return c5_mod1(n, seq.as_ref()).map_err(map_construct);
    }
    if k == 5 && v % 10 == 5 {
        let n = ((v - 5) / 10) as u32;
        let seq = if n >= 2 { Some(recipe_sequence(a, n, Family::Split)?) } else { None };
        return c5_mod5(n, seq.as_ref()).map_err(map_construct);
    }
    if k >= 7 && v % (2 * k) == 1 {
        return printed_route(a, budget, notes);
    }
    if k >= 7 && v % k == 0 && (v / k) % 2 == 1 {
        return assemble_route(a, budget, notes);
    }

    // Admissible parameters with no formula recipe (e.g. k = 3, v = 1 mod 6).
    if a.allow_search {
        return search_route(v, k, budget, notes);
    }
    Err(fail(
        2,
        format!(
            "no formula recipe applies to (v, k) = ({v}, {k}); rerun with --allow-search \
             to look for a system by backtracking (budget: {} nodes, {} ms)",
            cfg.search_node_limit, cfg.search_time_limit_ms
        ),
    ))
}

fn search_route(
    v: u64,
    k: u64,
    budget: &SearchBudget,
    notes: &mut Vec<String>,
) -> Result<ConstructedSystem, Failure> {
    let (outcome, system) = searched_system(v, k, budget).map_err(map_construct)?;
    match (outcome, system) {
        (SearchOutcome::Found { nodes, .. }, Some(made)) => {
            notes.push(format!("search found a system in {nodes} nodes"));
            Ok(made)
        }
        (SearchOutcome::Nonexistent { nodes }, _) => Err(fail(
            2,
            format!(
                "no cyclic {k}-cycle system on {v} vertices exists; exhaustive search \
                 closed the whole tree in {nodes} nodes"
            ),
        )),
        (SearchOutcome::BudgetExhausted { nodes }, _) => Err(fail(
            1,
            format!(
                "search exhausted its budget after {nodes} nodes without a verdict; \
                 raise search_node_limit / search_time_limit_ms in the run configuration"
            ),
        )),
        (SearchOutcome::Found { .. }, None) => unreachable!("found outcome always carries a system"),
    }
}

fn printed_route(
    a: &ConstructArgs,
    budget: &SearchBudget,
    notes: &mut Vec<String>,
) -> Result<ConstructedSystem, Failure> {
    let (v, k) = (a.v, a.k);
    let n = ((v - 1) / (2 * k)) as u32;
    if !a.allow_as_printed {
        if a.allow_search {
            // The user trusts the search but not the transcribed formula:
            // skip straight to the fallback.
            return search_route(v, k, budget, notes);
        }
        return Err(fail(
            3,
            format!(
                "the only formula recipe for v = 2nk+1 with k = {k} is transcribed as \
                 printed and routinely fails validation; rerun with --allow-as-printed \
                 to try it (add --allow-search to substitute a searched system when it \
                 fails), or with --allow-search alone to skip it"
            ),
        ));
    }
    if n < 2 {
        if a.allow_search {
            return search_route(v, k, budget, notes);
        }
        return Err(fail(
            2,
            format!("the printed recipe needs order n >= 2, but v = {v} gives n = {n}; rerun with --allow-search"),
        ));
    }
    let seq = recipe_sequence(a, n, Family::Skolem)?;
    let cand = ck_mod1_printed(&seq, k).map_err(map_construct)?;
    if cand.valid() {
        return cand.into_system().map_err(map_construct);
    }
    let why = if cand.simple() {
        "its differences do not cover Z_v - {0}"
    } else {
        "a cycle repeats a vertex"
    };
    if a.allow_search {
        notes.push(format!("as-printed candidate for v={v} failed validation ({why})"));
        return search_route(v, k, budget, notes);
    }
    Err(fail(
        3,
        format!(
            "as-printed candidate for (v, k) = ({v}, {k}) failed validation: {why}; \
             rerun with --allow-search to substitute a searched system"
        ),
    ))
}

fn assemble_route(
    a: &ConstructArgs,
    budget: &SearchBudget,
    notes: &mut Vec<String>,
) -> Result<ConstructedSystem, Failure> {
    let (v, k) = (a.v, a.k);
    let m = v / k;
    let n = ((m - 1) / 2) as u32;
    if k == 15 && !a.allow_as_printed {
        return Err(fail(
            3,
            "the k = 15 assembly is transcribed as printed (its short-orbit complement \
             comes from a search); rerun with --allow-as-printed to accept it",
        ));
    }
    if n < 2 {
        // m = 3 needs a split-family sequence of order 1, which does not exist.
        if a.allow_search {
            return search_route(v, k, budget, notes);
        }
        return Err(fail(
            2,
            format!(
                "the v = {k}m assembly needs m >= 5 (no split-family sequence of order 1 \
                 exists, so m = 3 is unreachable); rerun with --allow-search"
            ),
        ));
    }
    let seq = recipe_sequence(a, n, Family::Split)?;
    match assemble_ck_modk(&seq, k, None, budget) {
        Ok(made) => Ok(made),
        Err(e @ (ConstructError::UnsupportedPrimePower { .. }
        | ConstructError::ShortSystemUnavailable { .. }))
            if a.allow_search =>
        {
            notes.push(format!("{e}; falling back to the search"));
            search_route(v, k, budget, notes)
        }
        Err(e) => Err(map_construct(e)),
    }
}

/// Parse a just-written design file, rebuild the difference system (which
/// runs the validator), and check its expansion partitions the edge set.
fn revalidate_design(text: &str) -> CmdResult {
    let parsed = parse_design_file(text)
        .map_err(|e| fail(1, format!("written design file does not re-parse: {e}")))?;
    let ds = parsed
        .to_difference_system()
        .map_err(|e| fail(1, format!("written design file does not re-validate: {e}")))?;
    if !validate_cycle_system(&ds.expand()).is_valid() {
        return Err(fail(1, "written design file expands to an invalid system"));
    }
    Ok(())
}

enum VariantPlan {
    Signs(Vec<Vec<i8>>),
    Classes(Vec<Vec<usize>>),
}

impl VariantPlan {
    fn kind(&self) -> &'static str {
        match self {
            VariantPlan::Signs(_) => "signs",
            VariantPlan::Classes(_) => "classes",
        }
    }

    fn len(&self) -> usize {
        match self {
            VariantPlan::Signs(v) => v.len(),
            VariantPlan::Classes(v) => v.len(),
        }
    }
}

/// All sign vectors of length s in lexicographic order ('+' before '-').
fn all_sign_vectors(s: usize) -> Vec<Vec<i8>> {
    (0u64..1 << s)
        .map(|mask| (0..s).map(|i| if mask >> (s - 1 - i) & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

/// Class vectors of length s in lexicographic order, stopping at `cap`
/// vectors when cap > 0.
fn all_class_vectors(s: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![1usize; s];
    loop {
        out.push(current.clone());
        if cap > 0 && out.len() == cap {
            return out;
        }
        let mut pos = s;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < 24 {
                current[pos] += 1;
                for later in current.iter_mut().skip(pos + 1) {
                    *later = 1;
                }
                break;
            }
        }
    }
}

fn variant_plan(a: &VariantsArgs, s: usize) -> Result<VariantPlan, Failure> {
    match (&a.signs, &a.classes) {
        (Some(_), Some(_)) => {
            Err(fail(1, "choose one of --signs and --classes per invocation"))
        }
        (None, None) => Err(fail(1, "one of --signs or --classes is required")),
        (Some(spec), None) => {
            let mut vectors = if spec == "all" {
                if s >= 24 {
                    return Err(fail(1, format!("2^{s} sign variants is too many to write")));
                }
                all_sign_vectors(s)
            } else {
                let sigma = parse_sign_vector(spec).map_err(|e| fail(1, e.to_string()))?;
                vec![sigma]
            };
            if a.limit > 0 {
                vectors.truncate(a.limit);
            }
            Ok(VariantPlan::Signs(vectors))
        }
        (None, Some(spec)) => {
            let vectors = if spec == "all" {
                if a.limit == 0 && 24usize.saturating_pow(s as u32) > 100_000 {
                    return Err(fail(
                        1,
                        format!("24^{s} class variants is too many to write; pass --limit"),
                    ));
                }
                all_class_vectors(s, a.limit)
            } else {
                // Accept dotted compact strings as well as the canonical
                // comma-separated form.
                let normalized = spec.replace('.', ",");
                let phi =
                    parse_class_vector(&normalized).map_err(|e| fail(1, e.to_string()))?;
                vec![phi]
            };
            Ok(VariantPlan::Classes(vectors))
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

fn cmd_variants(a: &VariantsArgs) -> CmdResult {
    let text = std::fs::read_to_string(&a.input)
        .map_err(|e| fail(1, format!("cannot read {}: {e}", a.input.display())))?;
    let parsed = parse_design_file(&text)
        .map_err(|e| fail(1, format!("input {}: {e}", a.input.display())))?;
    let ds = parsed
        .to_difference_system()
        .map_err(|e| fail(1, format!("input {}: {e}", a.input.display())))?;
    let s = ds.type1_indices().len();
    if s == 0 {
        return Err(fail(1, "the input system has no type-1 starters to vary"));
    }
    let plan = variant_plan(a, s)?;

    std::fs::create_dir_all(&a.out_dir)
        .map_err(|e| fail(1, format!("cannot create {}: {e}", a.out_dir.display())))?;

    let mut entries = Vec::with_capacity(plan.len());
    let mut write_variant = |name: String, header: DesignHeader, variant: &DifferenceSystem| -> CmdResult {
        let body = write_design_file(&header, variant.starters());
        let path = a.out_dir.join(&name);
        std::fs::write(&path, &body)
            .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
        let back = std::fs::read_to_string(&path)
            .map_err(|e| fail(1, format!("cannot re-read {}: {e}", path.display())))?;
        revalidate_design(&back)?;
        entries.push(ManifestEntry { path: name, sha256: sha256_hex(back.as_bytes()) });
        Ok(())
    };

    let base_header = |ds: &DifferenceSystem| DesignHeader {
        v: ds.modulus(),
        k: ds.k(),
        role: DesignRole::DifferenceSystem,
        recipe: parsed.header.recipe.clone(),
        trust: parsed.header.trust.clone(),
        signs: None,
        classes: None,
    };

    match &plan {
        VariantPlan::Signs(vectors) => {
            for sigma in vectors {
                let variant = sign_variant_checked(&ds, sigma)?;
                let compact = format_sign_vector(sigma);
                let mut header = base_header(&variant);
                header.signs = Some(compact.clone());
                write_variant(format!("sign-{compact}.design"), header, &variant)?;
            }
        }
        VariantPlan::Classes(vectors) => {
            for phi in vectors {
                let variant = class_variant(&ds, phi).map_err(|e| fail(1, e.to_string()))?;
                let mut header = base_header(&variant);
                header.classes = Some(format_class_vector(phi));
                let name: Vec<String> = phi.iter().map(|x| format!("{x:02}")).collect();
                write_variant(format!("class-{}.design", name.join("-")), header, &variant)?;
            }
        }
    }

    entries.sort_by(|a, b| a.path.cmp(&b.path));
    let manifest = Manifest {
        v: ds.modulus(),
        k: ds.k(),
        recipe: parsed.header.recipe.clone(),
        variant_kind: Some(plan.kind().to_string()),
        files: entries,
    };
    let manifest_text = write_manifest(&manifest);
    let manifest_path = a.out_dir.join("manifest.json");
    std::fs::write(&manifest_path, &manifest_text)
        .map_err(|e| fail(1, format!("cannot write {}: {e}", manifest_path.display())))?;
    let back = std::fs::read_to_string(&manifest_path)
        .map_err(|e| fail(1, format!("cannot re-read {}: {e}", manifest_path.display())))?;
    parse_manifest(&back)
        .map_err(|e| fail(1, format!("written manifest does not re-parse: {e}")))?;

    println!(
        "wrote {} {} variants of the v={} k={} system and manifest.json to {}",
        manifest.files.len(),
        plan.kind(),
        manifest.v,
        manifest.k,
        a.out_dir.display()
    );
    Ok(())
}

fn sign_variant_checked(ds: &DifferenceSystem, sigma: &[i8]) -> Result<DifferenceSystem, Failure> {
    cyclesys::variants::sign_variant(ds, sigma).map_err(|e| fail(1, e.to_string()))
}

fn cmd_census(a: &CensusArgs) -> CmdResult {
    let manifest_path = a.corpus.join("manifest.json");
    let manifest_text = std::fs::read_to_string(&manifest_path)
        .map_err(|e| fail(1, format!("cannot read {}: {e}", manifest_path.display())))?;
    let manifest = parse_manifest(&manifest_text)
        .map_err(|e| fail(1, format!("{}: {e}", manifest_path.display())))?;
    if manifest.files.is_empty() {
        return Err(fail(1, "the manifest lists no files"));
    }

    let mut systems: Vec<CycleSystem> = Vec::with_capacity(manifest.files.len());
    for entry in &manifest.files {
        let path = a.corpus.join(&entry.path);
        let body = std::fs::read_to_string(&path)
            .map_err(|e| fail(1, format!("cannot read {}: {e}", path.display())))?;
        let digest = sha256_hex(body.as_bytes());
        if digest != entry.sha256 {
            return Err(fail(
                1,
                format!(
                    "hash mismatch for {}: manifest says {}, file hashes to {digest}; \
                     the corpus was modified after generation",
                    entry.path, entry.sha256
                ),
            ));
        }
        let parsed = parse_design_file(&body)
            .map_err(|e| fail(1, format!("{}: {e}", entry.path)))?;
        let system = parsed.expand().map_err(|e| fail(1, format!("{}: {e}", entry.path)))?;
        if !validate_cycle_system(&system).is_valid() {
            return Err(fail(1, format!("{}: not a valid cycle system", entry.path)));
        }
        systems.push(system);
    }

    let report = census(&systems).map_err(|e| fail(1, e.to_string()))?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("census serializes"));
    } else {
        println!(
            "corpus {}: {} files, every hash verified",
            a.corpus.display(),
            manifest.files.len()
        );
        println!(
            "v={} k={} total={} distinct={} affine-classes={} phi={}",
            report.v, report.k, report.total, report.distinct, report.affine_classes, report.phi
        );
        println!(
            "ceiling bound: ceil({}/{}) = {}",
            report.distinct, report.phi, report.ceiling_bound
        );
        println!("NC({},{}) >= {}", report.v, report.k, report.nonisomorphic_lower_bound);
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundRow {
    #[serde(flatten)]
    report: cyclesys::bounds::ThresholdReport,
    min_crossing: Option<u32>,
    margin_at_threshold: f64,
}

fn cmd_bounds_verify(a: &BoundsVerifyArgs, cfg: &RunConfig) -> CmdResult {
    let window = a.window.unwrap_or(cfg.bound_window);
    if window == 0 {
        return Err(fail(1, "the window must be positive"));
    }
    let mut rows = Vec::new();
    for claim in cyclesys::bounds::catalog() {
        let report = claim.verify_threshold(window);
        let min_crossing = claim.min_crossing(claim.threshold + window);
        // The stated threshold need not itself be an applicable order; the
        // margin is reported at the first applicable order at or past it.
        let first_applicable = (claim.threshold..=claim.threshold + window)
            .find(|&n| claim.id.applicable(n))
            .expect("every formula has an applicable order within the window");
        let margin_at_threshold = claim
            .margin(first_applicable)
            .expect("applicable order evaluates")
            .to_f64();
        rows.push(BoundRow { report, min_crossing, margin_at_threshold });
    }
    let all_pass = rows.iter().all(|r| r.report.pass);
    if a.json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
    } else {
        println!(
            "{:<22} {:>7} {:>9} {:>8} {:>9} {:>16} {:>6}",
            "formula", "rhs", "threshold", "crossing", "checked", "margin@threshold", "pass"
        );
        for row in &rows {
            println!(
                "{:<22} {:>7.3} {:>9} {:>8} {:>9} {:>16.6} {:>6}",
                row.report.id.to_string(),
                row.report.rhs_milli as f64 / 1000.0,
                row.report.threshold,
                row.min_crossing.map_or_else(|| "-".into(), |c| c.to_string()),
                row.report.checked,
                row.margin_at_threshold,
                if row.report.pass { "yes" } else { "NO" }
            );
        }
        println!(
            "{} of {} claims hold over [threshold, threshold+{window}]",
            rows.iter().filter(|r| r.report.pass).count(),
            rows.len()
        );
    }
    if !all_pass {
        return Err(fail(1, "at least one bound claim failed its window verification"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    // ---------------------------------------------------------------
    // vector enumeration order
    // ---------------------------------------------------------------

    #[test]
    fn sign_vectors_come_out_lexicographic() {
        let all = all_sign_vectors(2);
        assert_eq!(all, vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]);
    }

    #[test]
    fn class_vectors_cover_the_grid_in_order() {
        let all = all_class_vectors(2, 0);
        assert_eq!(all.len(), 576);
        assert_eq!(all[0], vec![1, 1]);
        assert_eq!(all[23], vec![1, 24]);
        assert_eq!(all[24], vec![2, 1]);
        assert_eq!(all[575], vec![24, 24]);
        let capped = all_class_vectors(2, 10);
        assert_eq!(capped.len(), 10);
        assert_eq!(capped[9], vec![1, 10]);
    }

    #[test]
    fn default_config_text_round_trips() {
        let cfg = RunConfig::default();
        assert_eq!(parse_config(&cyclesys::files::format_config(&cfg)).unwrap(), cfg);
    }
}
