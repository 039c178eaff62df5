//! Line-oriented text format.
//!
//! ```text
//! tdgraph 1 <constant|linear> <static|periodic>
//! division <K> <τ_0> ... <τ_K>
//! nodes <n>
//! arcs <m>
//! arc <from> <to> <d> <s_0> ... <s_{K-1}>      # constant
//! arc <from> <to> <d> <s_0> ... <s_K>          # linear
//! ```
//!
//! Times are seconds, lengths meters, speeds m/s. `#` starts a comment; blank
//! lines are ignored. Numbers are written in their shortest round-trip decimal
//! form, so `load(save(g)) == g` holds exactly.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::model::{
    validate_arc, Arc, HorizonPolicy, ModelError, ProfileKind, SpeedProfile, TdGraph, TimeDivision,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoadErrorKind {
    #[error("cannot read file: {0}")]
    Io(String),
    #[error("unexpected end of file, expected {0} line")]
    UnexpectedEof(&'static str),
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed {0} line: {1}")]
    Malformed(&'static str, String),
    #[error("invalid number '{0}'")]
    InvalidNumber(String),
    #[error("breakpoint count mismatch: {intervals} intervals need {expected} breakpoints, found {found}")]
    BreakpointCount {
        intervals: usize,
        expected: usize,
        found: usize,
    },
    #[error("arc count mismatch: declared {declared}, found {found}")]
    ArcCount { declared: usize, found: usize },
    #[error(transparent)]
    Invalid(#[from] ModelError),
}

/// A diagnostic tied to a 1-based line number (0 when no line applies).
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct LoadError {
    pub line: usize,
    pub kind: LoadErrorKind,
}

impl LoadError {
    fn new(line: usize, kind: impl Into<LoadErrorKind>) -> Self {
        Self {
            line,
            kind: kind.into(),
        }
    }
}

struct Header {
    kind: ProfileKind,
    policy: HorizonPolicy,
    division: TimeDivision,
    nodes: usize,
    arcs: usize,
}

/// Content lines with comments stripped, paired with their line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, LoadError> {
    match tok.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(LoadError::new(
            line,
            LoadErrorKind::InvalidNumber(tok.to_string()),
        )),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, LoadError> {
    tok.parse::<usize>()
        .map_err(|_| LoadError::new(line, LoadErrorKind::InvalidNumber(tok.to_string())))
}

fn expect_line<'a, I>(
    lines: &mut I,
    what: &'static str,
    last_line: usize,
) -> Result<(usize, Vec<&'a str>), LoadError>
where
    I: Iterator<Item = (usize, Vec<&'a str>)>,
{
    lines
        .next()
        .ok_or_else(|| LoadError::new(last_line, LoadErrorKind::UnexpectedEof(what)))
}

fn keyed<'a>(
    (line, tokens): (usize, Vec<&'a str>),
    keyword: &'static str,
    arity: Option<usize>,
) -> Result<(usize, Vec<&'a str>), LoadError> {
    if tokens[0] != keyword || arity.is_some_and(|n| tokens.len() != n) {
        return Err(LoadError::new(
            line,
            LoadErrorKind::Malformed(keyword, tokens.join(" ")),
        ));
    }
    Ok((line, tokens))
}

fn parse_header<'a, I>(lines: &mut I, total_lines: usize) -> Result<Header, LoadError>
where
    I: Iterator<Item = (usize, Vec<&'a str>)>,
{
    let (line, tokens) = expect_line(lines, "header", total_lines)?;
    let bad = |msg: String| LoadError::new(line, LoadErrorKind::MalformedHeader(msg));
    if tokens.len() != 4 || tokens[0] != "tdgraph" {
        return Err(bad(format!(
            "expected 'tdgraph 1 <kind> <policy>', got '{}'",
            tokens.join(" ")
        )));
    }
    if tokens[1] != FORMAT_VERSION.to_string() {
        return Err(bad(format!("unsupported version '{}'", tokens[1])));
    }
    let kind: ProfileKind = tokens[2].parse().map_err(bad)?;
    let policy: HorizonPolicy = tokens[3].parse().map_err(bad)?;

    let (line, tokens) = keyed(
        expect_line(lines, "division", total_lines)?,
        "division",
        None,
    )?;
    if tokens.len() < 2 {
        return Err(LoadError::new(
            line,
            LoadErrorKind::Malformed("division", tokens.join(" ")),
        ));
    }
    let intervals = parse_usize(tokens[1], line)?;
    let breakpoints = tokens[2..]
        .iter()
        .map(|t| parse_f64(t, line))
        .collect::<Result<Vec<_>, _>>()?;
    if breakpoints.len() != intervals + 1 {
        return Err(LoadError::new(
            line,
            LoadErrorKind::BreakpointCount {
                intervals,
                expected: intervals + 1,
                found: breakpoints.len(),
            },
        ));
    }
    let division = TimeDivision::new(breakpoints).map_err(|e| LoadError::new(line, e))?;

    let (line, tokens) = keyed(expect_line(lines, "nodes", total_lines)?, "nodes", Some(2))?;
    let nodes = parse_usize(tokens[1], line)?;
    let (line, tokens) = keyed(expect_line(lines, "arcs", total_lines)?, "arcs", Some(2))?;
    let arcs = parse_usize(tokens[1], line)?;

    Ok(Header {
        kind,
        policy,
        division,
        nodes,
        arcs,
    })
}

fn parse_arc(header: &Header, line: usize, tokens: &[&str]) -> Result<Arc, LoadError> {
    if tokens[0] != "arc" || tokens.len() < 5 {
        return Err(LoadError::new(
            line,
            LoadErrorKind::Malformed("arc", tokens.join(" ")),
        ));
    }
    let from = parse_usize(tokens[1], line)?;
    let to = parse_usize(tokens[2], line)?;
    let length = parse_f64(tokens[3], line)?;
    let speeds = tokens[4..]
        .iter()
        .map(|t| parse_f64(t, line))
        .collect::<Result<Vec<_>, _>>()?;
    let profile = match header.kind {
        ProfileKind::Constant => SpeedProfile::Constant(speeds),
        ProfileKind::Linear => SpeedProfile::Linear(speeds),
    };
    let arc = Arc::new(from, to, length, profile);
    validate_arc(
        &arc,
        header.nodes,
        header.kind,
        &header.division,
        header.policy,
    )
    .map_err(|e| LoadError::new(line, e))?;
    Ok(arc)
}

/// Parses the whole text, collecting one diagnostic per bad arc line. Header
/// errors stop the scan.
fn parse(text: &str, stop_at_first: bool) -> Result<TdGraph, Vec<LoadError>> {
    let total_lines = text.lines().count();
    let mut lines = content_lines(text);
    let header = parse_header(&mut lines, total_lines).map_err(|e| vec![e])?;

    let mut errors = Vec::new();
    let mut arcs = Vec::with_capacity(header.arcs);
    let mut seen = HashSet::new();
    let mut found = 0usize;
    let mut count_line = total_lines;
    for (line, tokens) in lines {
        found += 1;
        if found == header.arcs + 1 {
            count_line = line;
        }
        let parsed = parse_arc(&header, line, &tokens).and_then(|arc| {
            if seen.insert((arc.from, arc.to)) {
                Ok(arc)
            } else {
                Err(LoadError::new(
                    line,
                    ModelError::DuplicateArc {
                        from: arc.from,
                        to: arc.to,
                    },
                ))
            }
        });
        match parsed {
            Ok(arc) => arcs.push(arc),
            Err(e) => {
                errors.push(e);
                if stop_at_first {
                    return Err(errors);
                }
            }
        }
    }
    if found != header.arcs {
        errors.push(LoadError::new(
            count_line,
            LoadErrorKind::ArcCount {
                declared: header.arcs,
                found,
            },
        ));
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    TdGraph::new(
        header.nodes,
        header.kind,
        header.division,
        header.policy,
        arcs,
    )
    .map_err(|e| vec![LoadError::new(0, e)])
}

/// Parses a graph, reporting the first violation.
pub fn parse_graph(text: &str) -> Result<TdGraph, LoadError> {
    parse(text, true).map_err(|mut e| e.swap_remove(0))
}

/// Every violation found in `text`, empty when it loads cleanly.
pub fn validate_text(text: &str) -> Vec<LoadError> {
    match parse(text, false) {
        Ok(_) => Vec::new(),
        Err(errors) => errors,
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<TdGraph, LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::new(0, LoadErrorKind::Io(e.to_string())))?;
    parse_graph(&text)
}

pub fn write_graph(graph: &TdGraph) -> String {
    let mut out = String::new();
    let div = graph.division();
    let _ = writeln!(
        out,
        "tdgraph {FORMAT_VERSION} {} {}",
        graph.kind(),
        graph.policy()
    );
    let _ = write!(out, "division {}", div.intervals());
    for b in div.breakpoints() {
        let _ = write!(out, " {b}");
    }
    out.push('\n');
    let _ = writeln!(out, "nodes {}", graph.node_count());
    let _ = writeln!(out, "arcs {}", graph.arc_count());
    for arc in graph.arcs() {
        let _ = write!(out, "arc {} {} {}", arc.from, arc.to, arc.length);
        for s in arc.profile.values() {
            let _ = write!(out, " {s}");
        }
        out.push('\n');
    }
    out
}

pub fn save(graph: &TdGraph, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, write_graph(graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "tdgraph 1 constant static\ndivision 4 0 10 15 30 40\nnodes 2\narcs 1\narc 0 1 170 10 6 8 10\n";

    #[test]
    fn worked_example_round_trip() {
        let g = parse_graph(EXAMPLE).unwrap();
        assert_eq!(g.arc_count(), 1);
        assert_eq!(g.arc(0).length, 170.0);
        assert_eq!(
            g.arc(0).profile,
            SpeedProfile::Constant(vec![10.0, 6.0, 8.0, 10.0])
        );
        assert_eq!(g.division().breakpoints(), &[0.0, 10.0, 15.0, 30.0, 40.0]);
        assert_eq!(write_graph(&g), EXAMPLE);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# worked example\ntdgraph 1 constant static  # header\n\ndivision 1 0 10\nnodes 3\narcs 0\n";
        let g = parse_graph(text).unwrap();
        assert_eq!((g.node_count(), g.arc_count()), (3, 0));
    }

    fn first_error(text: &str) -> LoadError {
        parse_graph(text).unwrap_err()
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let e = first_error("tdgraph 2 constant static\n");
        assert_eq!(e.line, 1);
        assert!(matches!(e.kind, LoadErrorKind::MalformedHeader(_)));

        let e = first_error("tdgraph 1 constant static\ndivision 2 0 10\nnodes 1\narcs 0\n");
        assert_eq!(e.line, 2);
        assert!(matches!(
            e.kind,
            LoadErrorKind::BreakpointCount {
                expected: 3,
                found: 2,
                ..
            }
        ));

        let e = first_error("tdgraph 1 constant static\ndivision 2 0 10 10\nnodes 1\narcs 0\n");
        assert!(e.to_string().contains("non-increasing breakpoints"), "{e}");

        let e = first_error(
            "tdgraph 1 constant static\ndivision 1 0 10\nnodes 2\narcs 1\n\narc 0 1 5 0\n",
        );
        assert_eq!(e.line, 6);
        assert!(matches!(
            e.kind,
            LoadErrorKind::Invalid(ModelError::NonPositiveSpeed { .. })
        ));

        let e = first_error(
            "tdgraph 1 constant static\ndivision 1 0 10\nnodes 2\narcs 2\narc 0 1 5 1\n",
        );
        assert!(matches!(
            e.kind,
            LoadErrorKind::ArcCount {
                declared: 2,
                found: 1
            }
        ));

        let e = first_error("tdgraph 1 constant static\ndivision 1 0 10\nnodes 2\n");
        assert_eq!(e.kind, LoadErrorKind::UnexpectedEof("arcs"));
    }

    #[test]
    fn validate_collects_every_arc_error() {
        let text = "tdgraph 1 constant static\ndivision 1 0 10\nnodes 2\narcs 3\narc 0 1 -5 1\narc 0 0 5 1\narc 1 0 5 1 2\n";
        let errors = validate_text(text);
        let lines: Vec<_> = errors.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![5, 6, 7]);
    }
}
