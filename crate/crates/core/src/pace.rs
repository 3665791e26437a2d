//! PACE 2022 DFVS text format, solution output, and the benchmark harness.
//!
//! Input grammar: lines starting with `%` are comments and may appear
//! anywhere. The first other line is `n m t`. The next `n` non-comment lines
//! list the out-neighbors of vertices `1..=n`, one line per vertex (an empty
//! line means no out-neighbors).

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::AtomicBool;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::VertexId;
use crate::instance::Instance;
use crate::oracle::is_valid_dfvs;
use crate::solver::{solve, BestSolution, SolverConfig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("no header line found")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}, expected `n m t`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: invalid vertex id {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: vertex id {id} outside 1..={n}")]
    NeighborOutOfRange { line: usize, id: u64, n: usize },
    #[error("expected {expected} adjacency lines, found {found}")]
    MissingLines { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    DuplicateEdge { line: usize, from: u32, to: u32 },
    EdgeCountMismatch { declared: usize, actual: usize },
    NonzeroHeaderField { line: usize, value: u64 },
    TrailingContent { line: usize },
}

impl std::fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseWarning::DuplicateEdge { line, from, to } => {
                write!(f, "line {line}: duplicate edge {from} -> {to} collapsed")
            }
            ParseWarning::EdgeCountMismatch { declared, actual } => {
                write!(f, "header declares {declared} edges, found {actual}")
            }
            ParseWarning::NonzeroHeaderField { line, value } => {
                write!(f, "line {line}: third header field is {value}, ignored")
            }
            ParseWarning::TrailingContent { line } => {
                write!(
                    f,
                    "line {line}: content after the last adjacency line ignored"
                )
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub instance: Instance,
    pub warnings: Vec<ParseWarning>,
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    parse_instance_with_warnings(text).map(|p| p.instance)
}

pub fn parse_instance_with_warnings(text: &str) -> Result<Parsed, ParseError> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim_start().starts_with('%'));
    let mut warnings = Vec::new();

    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(ParseError::MissingHeader)?;
    let malformed = || ParseError::MalformedHeader {
        line: hline,
        text: header.to_string(),
    };
    let fields: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| malformed())?;
    let [n, m, t] = fields[..] else {
        return Err(malformed());
    };
    if t != 0 {
        warnings.push(ParseWarning::NonzeroHeaderField {
            line: hline,
            value: t,
        });
    }
    let n = usize::try_from(n)
        .ok()
        .filter(|&n| n < u32::MAX as usize)
        .ok_or_else(malformed)?;

    let mut out: Vec<Vec<VertexId>> = Vec::with_capacity(n);
    let mut listed = 0usize;
    for (line, text) in lines.by_ref().take(n) {
        let mut succ = Vec::new();
        for token in text.split_whitespace() {
            let id: u64 = token.parse().map_err(|_| ParseError::InvalidToken {
                line,
                token: token.to_string(),
            })?;
            if id == 0 || id > n as u64 {
                return Err(ParseError::NeighborOutOfRange { line, id, n });
            }
            succ.push(VertexId(id as u32 - 1));
        }
        let before = succ.len();
        let mut sorted = succ.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != before {
            let from = out.len() as u32 + 1;
            let mut seen = std::collections::HashSet::new();
            for v in &succ {
                if !seen.insert(*v) {
                    warnings.push(ParseWarning::DuplicateEdge {
                        line,
                        from,
                        to: v.external(),
                    });
                }
            }
        }
        listed += sorted.len();
        out.push(sorted);
    }
    if out.len() < n {
        return Err(ParseError::MissingLines {
            expected: n,
            found: out.len(),
        });
    }
    if let Some((line, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        warnings.push(ParseWarning::TrailingContent { line });
    }
    if listed as u64 != m {
        warnings.push(ParseWarning::EdgeCountMismatch {
            declared: m as usize,
            actual: listed,
        });
    }
    let instance = Instance::from_adjacency(out).with_declared_edges(m as usize);
    Ok(Parsed { instance, warnings })
}

/// Serializes `inst` in the input format.
pub fn to_pace_string(inst: &Instance) -> String {
    let mut s = String::new();
    writeln!(s, "{} {} 0", inst.vertex_count(), inst.edge_count()).unwrap();
    for v in inst.vertices() {
        let line: Vec<String> = inst
            .successors(v)
            .iter()
            .map(|w| w.external().to_string())
            .collect();
        writeln!(s, "{}", line.join(" ")).unwrap();
    }
    s
}

/// One external id per line, ascending.
pub fn write_solution<W: Write>(best: &BestSolution, sink: &mut W) -> io::Result<()> {
    for v in best.vertices() {
        writeln!(sink, "{}", v.external())?;
    }
    sink.flush()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkRow {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub size: Option<usize>,
    pub valid: bool,
    pub wall: Duration,
    pub iterations: u64,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchmarkSummary {
    pub instances: usize,
    pub failed: usize,
    pub invalid: usize,
    pub total_size: usize,
    pub total_wall: Duration,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchmarkReport {
    pub rows: Vec<BenchmarkRow>,
}

impl BenchmarkReport {
    pub fn summary(&self) -> BenchmarkSummary {
        let mut s = BenchmarkSummary {
            instances: self.rows.len(),
            ..Default::default()
        };
        for row in &self.rows {
            match row.size {
                None => s.failed += 1,
                Some(size) => {
                    s.total_size += size;
                    if !row.valid {
                        s.invalid += 1;
                    }
                }
            }
            s.total_wall += row.wall;
        }
        s
    }

    /// Tab-separated report with a header row.
    pub fn write_tsv<W: Write>(&self, sink: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new().delimiter(b'\t').from_writer(sink);
        w.write_record([
            "instance",
            "vertices",
            "edges",
            "size",
            "valid",
            "wall_ms",
            "iterations",
            "status",
        ])?;
        for row in &self.rows {
            w.write_record([
                row.name.clone(),
                row.vertices.to_string(),
                row.edges.to_string(),
                row.size.map_or_else(String::new, |s| s.to_string()),
                row.valid.to_string(),
                row.wall.as_millis().to_string(),
                row.iterations.to_string(),
                row.error.clone().unwrap_or_else(|| "ok".to_string()),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn bench_one(path: &Path, config: &SolverConfig, cancel: Option<&AtomicBool>) -> BenchmarkRow {
    let name = path
        .file_name()
        .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
    let start = Instant::now();
    let mut row = BenchmarkRow {
        name,
        vertices: 0,
        edges: 0,
        size: None,
        valid: false,
        wall: Duration::ZERO,
        iterations: 0,
        error: None,
    };
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            row.error = Some(format!("read error: {e}"));
            return row;
        }
    };
    let inst = match parse_instance(&text) {
        Ok(i) => i,
        Err(e) => {
            row.error = Some(format!("parse error: {e}"));
            return row;
        }
    };
    row.vertices = inst.vertex_count();
    row.edges = inst.edge_count();
    let out = solve(&inst, config, cancel);
    row.wall = start.elapsed();
    row.size = Some(out.best.size());
    row.iterations = out.stats.iterations;
    row.valid = is_valid_dfvs(&inst, out.best.vertices());
    if !row.valid {
        row.error = Some("invalid solution".to_string());
    }
    row
}

/// Solves every regular file in `dir` (sorted by name) as an independent job.
/// Per-instance failures become report rows; only an unreadable directory is
/// an error.
pub fn run_benchmark(
    dir: &Path,
    config: &SolverConfig,
    cancel: Option<&AtomicBool>,
) -> io::Result<BenchmarkReport> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let rows = files
        .par_iter()
        .map(|p| bench_one(p, config, cancel))
        .collect();
    Ok(BenchmarkReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arcs(inst: &Instance) -> Vec<(u32, u32)> {
        inst.arcs()
            .map(|(u, v)| (u.external(), v.external()))
            .collect()
    }

    #[test]
    fn parse_examples() {
        let tri = parse_instance("3 3 0\n2\n3\n1\n").unwrap();
        assert_eq!(arcs(&tri), vec![(1, 2), (2, 3), (3, 1)]);
        let two = parse_instance("2 2 0\n2\n1\n").unwrap();
        assert_eq!(arcs(&two), vec![(1, 2), (2, 1)]);
        let one = parse_instance("1 0 0\n\n").unwrap();
        assert_eq!(one.vertex_count(), 1);
        assert_eq!(one.edge_count(), 0);
        let one = parse_instance("1 0 0\n").unwrap();
        assert_eq!(one.vertex_count(), 1);
    }

    #[test]
    fn comments_anywhere() {
        let text = "% leading\n3 3 0\n% between\n2\n3\n%\n1\n% trailing\n";
        assert_eq!(
            arcs(&parse_instance(text).unwrap()),
            vec![(1, 2), (2, 3), (3, 1)]
        );
    }

    #[test]
    fn crlf_lines() {
        assert_eq!(
            parse_instance("2 2 0\r\n2\r\n1\r\n").unwrap().edge_count(),
            2
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_instance(""), Err(ParseError::MissingHeader));
        assert_eq!(parse_instance("% only\n"), Err(ParseError::MissingHeader));
        assert!(matches!(
            parse_instance("garbage\n"),
            Err(ParseError::MalformedHeader { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("3 3\n"),
            Err(ParseError::MalformedHeader { line: 1, .. })
        ));
        assert_eq!(
            parse_instance("2 1 0\n% c\n3\n\n"),
            Err(ParseError::NeighborOutOfRange {
                line: 3,
                id: 3,
                n: 2
            })
        );
        assert_eq!(
            parse_instance("2 1 0\n0\n\n"),
            Err(ParseError::NeighborOutOfRange {
                line: 2,
                id: 0,
                n: 2
            })
        );
        assert!(matches!(
            parse_instance("2 1 0\nx\n\n"),
            Err(ParseError::InvalidToken { line: 2, .. })
        ));
        assert_eq!(
            parse_instance("3 3 0\n2\n3"),
            Err(ParseError::MissingLines {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn warnings_are_collected() {
        let p = parse_instance_with_warnings("2 3 7\n2 2\n1\nextra\n").unwrap();
        assert_eq!(p.instance.edge_count(), 2);
        assert_eq!(p.instance.declared_edges(), 3);
        assert!(p
            .warnings
            .contains(&ParseWarning::NonzeroHeaderField { line: 1, value: 7 }));
        assert!(p.warnings.contains(&ParseWarning::DuplicateEdge {
            line: 2,
            from: 1,
            to: 2
        }));
        assert!(p
            .warnings
            .contains(&ParseWarning::TrailingContent { line: 4 }));
        assert!(p.warnings.contains(&ParseWarning::EdgeCountMismatch {
            declared: 3,
            actual: 2
        }));
    }

    #[test]
    fn solution_output() {
        let mut buf = Vec::new();
        write_solution(&BestSolution::new(vec![VertexId(2), VertexId(0)]), &mut buf).unwrap();
        assert_eq!(buf, b"1\n3\n");
        let mut buf = Vec::new();
        write_solution(&BestSolution::default(), &mut buf).unwrap();
        assert!(buf.is_empty());
        let mut buf = Vec::new();
        write_solution(&BestSolution::new(vec![VertexId(41)]), &mut buf).unwrap();
        assert_eq!(buf, b"42\n");
    }

    #[test]
    fn serialization_matches_format() {
        let inst = Instance::from_external_arcs(3, &[(1, 2), (1, 3), (3, 1)]);
        assert_eq!(to_pace_string(&inst), "3 3 0\n2 3\n\n1\n");
    }
}
