//! On-disk formats, all plain text and deterministic: sequence files
//! (shared header plus one sequence per line), design files (a JSON
//! header line followed by one JSON vertex array per cycle), census
//! reports (a single JSON object), key=value run configuration, and the
//! corpus manifest. Writers and parsers round-trip bit-exactly so files
//! can be re-read, re-validated, and hashed reproducibly.

use crate::cyclic::{Cycle, CycleSystem, CyclicError, DifferenceSystem, Zv};
use crate::skolem::{SkolemError, SkolemKind, SkolemSequence};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FileError {
    #[error("missing or malformed header line: {0}")]
    Header(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("JSON: {0}")]
    Json(String),
    #[error("file holds a {got}, expected a {expected}")]
    WrongRole { expected: DesignRole, got: DesignRole },
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error(transparent)]
    Skolem(#[from] SkolemError),
    #[error("unknown config key: {0}")]
    UnknownConfigKey(String),
    #[error("config key {key} has an invalid value")]
    BadConfigValue { key: String },
}

fn json_err(e: serde_json::Error) -> FileError {
    FileError::Json(e.to_string())
}

/// A batch of same-order, same-kind sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub n: u32,
    pub kind: SkolemKind,
    pub sequences: Vec<SkolemSequence>,
}

pub fn write_sequence_file(file: &SequenceFile) -> String {
    let mut out = format!("# n={} kind={}\n", file.n, file.kind);
    for seq in &file.sequences {
        let line: Vec<String> = seq.values().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_sequence_file(s: &str) -> Result<SequenceFile, FileError> {
    let mut lines = s.lines().enumerate();
    let (_, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| FileError::Header("empty file".into()))?;
    let rest = header
        .strip_prefix("# ")
        .ok_or_else(|| FileError::Header(format!("expected '# n=<n> kind=<kind>', got {header:?}")))?;
    let mut n = None;
    let mut kind = None;
    for token in rest.split_whitespace() {
        if let Some(val) = token.strip_prefix("n=") {
            n = Some(val.parse::<u32>().map_err(|_| FileError::Header(format!("bad order {val:?}")))?);
        } else if let Some(val) = token.strip_prefix("kind=") {
            kind = Some(val.parse::<SkolemKind>()?);
        } else {
            return Err(FileError::Header(format!("unexpected token {token:?}")));
        }
    }
    let n = n.ok_or_else(|| FileError::Header("missing n=".into()))?;
    let kind = kind.ok_or_else(|| FileError::Header("missing kind=".into()))?;
    let mut sequences = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let values: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|e| FileError::Line { line: idx + 1, msg: e.to_string() })?;
        sequences.push(SkolemSequence::new(n, kind, values)?);
    }
    Ok(SequenceFile { n, kind, sequences })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DesignRole {
    DifferenceSystem,
    CycleSystem,
}

impl std::fmt::Display for DesignRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DesignRole::DifferenceSystem => "difference-system",
            DesignRole::CycleSystem => "cycle-system",
        })
    }
}

/// First line of a design file. Constructors record recipe and trust;
/// the variant generator records the sign or class vector that produced
/// the file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignHeader {
    pub v: u64,
    pub k: usize,
    pub role: DesignRole,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub recipe: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trust: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub signs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classes: Option<String>,
}

impl DesignHeader {
    pub fn new(v: u64, k: usize, role: DesignRole) -> Self {
        DesignHeader { v, k, role, recipe: None, trust: None, signs: None, classes: None }
    }
}

/// Serialize a design: header line, then each cycle's vertex list in its
/// stored order (stored order carries orientation, which matters to the
/// variant machinery; canonical forms are recomputed on read).
pub fn write_design_file(header: &DesignHeader, cycles: &[Cycle]) -> String {
    let mut out = serde_json::to_string(header).expect("header always serializes");
    out.push('\n');
    for c in cycles {
        out.push_str(&serde_json::to_string(c.vertices()).expect("vertex lists always serialize"));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone)]
pub struct ParsedDesign {
    pub header: DesignHeader,
    pub cycles: Vec<Cycle>,
}

pub fn parse_design_file(s: &str) -> Result<ParsedDesign, FileError> {
    let mut lines = s.lines().enumerate();
    let (_, header_line) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| FileError::Header("empty file".into()))?;
    let header: DesignHeader = serde_json::from_str(header_line).map_err(json_err)?;
    let zv = Zv::new(header.v)?;
    let mut cycles = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let verts: Vec<u64> = serde_json::from_str(line).map_err(json_err)?;
        let cycle = Cycle::from_residues(zv, verts)
            .map_err(|e| FileError::Line { line: idx + 1, msg: e.to_string() })?;
        if cycle.len() != header.k {
            return Err(FileError::Line {
                line: idx + 1,
                msg: format!("cycle length {} does not match header k={}", cycle.len(), header.k),
            });
        }
        cycles.push(cycle);
    }
    Ok(ParsedDesign { header, cycles })
}

impl ParsedDesign {
    /// Reassemble as a set of starters; runs the full difference-system
    /// validator.
    pub fn to_difference_system(&self) -> Result<DifferenceSystem, FileError> {
        if self.header.role != DesignRole::DifferenceSystem {
            return Err(FileError::WrongRole {
                expected: DesignRole::DifferenceSystem,
                got: self.header.role,
            });
        }
        let zv = Zv::new(self.header.v)?;
        Ok(DifferenceSystem::new(zv, self.header.k, self.cycles.clone())?)
    }

    /// Reassemble as a full cycle system (validation is the caller's
    /// separate step so invalid systems can still be inspected).
    pub fn to_cycle_system(&self) -> Result<CycleSystem, FileError> {
        if self.header.role != DesignRole::CycleSystem {
            return Err(FileError::WrongRole {
                expected: DesignRole::CycleSystem,
                got: self.header.role,
            });
        }
        let zv = Zv::new(self.header.v)?;
        Ok(CycleSystem::from_cycles(zv, self.header.k, self.cycles.clone())?)
    }

    /// Difference-system files expand to their full system; cycle-system
    /// files are taken as-is.
    pub fn expand(&self) -> Result<CycleSystem, FileError> {
        match self.header.role {
            DesignRole::DifferenceSystem => Ok(self.to_difference_system()?.expand()),
            DesignRole::CycleSystem => self.to_cycle_system(),
        }
    }
}

/// Run-wide knobs, stored as `key=value` lines ('#' starts a comment).
/// `parallelism = 0` leaves the thread count to the runtime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n_enum: u32,
    pub search_node_limit: u64,
    pub search_time_limit_ms: u64,
    pub bound_window: u32,
    pub parallelism: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_enum: 12,
            search_node_limit: 20_000_000,
            search_time_limit_ms: 60_000,
            bound_window: 5000,
            parallelism: 0,
        }
    }
}

/// Environment variable naming the config file to load.
pub const CONFIG_ENV: &str = "CYCLESYS_CONFIG";

pub fn format_config(c: &RunConfig) -> String {
    format!(
        "n_enum={}\nsearch_node_limit={}\nsearch_time_limit_ms={}\nbound_window={}\nparallelism={}\n",
        c.n_enum, c.search_node_limit, c.search_time_limit_ms, c.bound_window, c.parallelism
    )
}

pub fn parse_config(s: &str) -> Result<RunConfig, FileError> {
    let mut config = RunConfig::default();
    for raw in s.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| FileError::Header(format!("expected key=value, got {line:?}")))?;
        let key = key.trim();
        let value = value.trim();
        let bad = || FileError::BadConfigValue { key: key.to_string() };
        match key {
            "n_enum" => config.n_enum = value.parse().map_err(|_| bad())?,
            "search_node_limit" => config.search_node_limit = value.parse().map_err(|_| bad())?,
            "search_time_limit_ms" => {
                config.search_time_limit_ms = value.parse().map_err(|_| bad())?
            }
            "bound_window" => config.bound_window = value.parse().map_err(|_| bad())?,
            "parallelism" => config.parallelism = value.parse().map_err(|_| bad())?,
            other => return Err(FileError::UnknownConfigKey(other.to_string())),
        }
    }
    Ok(config)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub path: String,
    pub sha256: String,
}

/// Index of a generated corpus: the shared parameters plus each file's
/// content hash, sorted by path. No timestamps — regenerating the same
/// corpus yields the same manifest byte for byte.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub v: u64,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub recipe: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variant_kind: Option<String>,
    pub files: Vec<ManifestEntry>,
}

pub fn write_manifest(m: &Manifest) -> String {
    let mut s = serde_json::to_string_pretty(m).expect("manifest always serializes");
    s.push('\n');
    s
}

pub fn parse_manifest(s: &str) -> Result<Manifest, FileError> {
    serde_json::from_str(s).map_err(json_err)
}
