use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One trace line: the move, its arguments and the black counts after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub step: usize,
    pub op: String,
    /// Argument tokens; plain integers are simplex ids, `w12`/`b12` whiten or
    /// blacken triangle 12, `we3`/`be3` edge 3, `wv1`/`bv1` vertex 1.
    pub args: Vec<String>,
    pub black_triangles: usize,
    pub black_edges: usize,
    pub black_vertices: usize,
    pub chi: i64,
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args = if self.args.is_empty() { "-".to_string() } else { self.args.join(",") };
        write!(
            f,
            "{} {} {} | bt={} be={} bv={} chi={}",
            self.step, self.op, args, self.black_triangles, self.black_edges, self.black_vertices, self.chi
        )
    }
}

impl FromStr for TraceRecord {
    type Err = Error;
    fn from_str(line: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Syntax {
            line: 1,
            column: 1,
            message: format!("trace record {line:?}: {msg}"),
        };
        let (head, tail) = line.split_once(" | ").ok_or_else(|| bad("missing ' | '"))?;
        let mut parts = head.split(' ');
        let step = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad step"))?;
        let op = parts.next().ok_or_else(|| bad("missing op"))?.to_string();
        let args = match parts.next() {
            Some("-") | None => Vec::new(),
            Some(a) => a.split(',').map(str::to_string).collect(),
        };
        if parts.next().is_some() {
            return Err(bad("extra fields"));
        }
        let mut counts = [0i64; 4];
        let keys = ["bt=", "be=", "bv=", "chi="];
        let fields: Vec<&str> = tail.split(' ').collect();
        if fields.len() != 4 {
            return Err(bad("expected four counts"));
        }
        for (k, (field, key)) in fields.iter().zip(keys).enumerate() {
            counts[k] = field
                .strip_prefix(key)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(&format!("bad {key} field")))?;
        }
        let nonneg = |x: i64| usize::try_from(x).map_err(|_| bad("negative count"));
        Ok(TraceRecord {
            step,
            op,
            args,
            black_triangles: nonneg(counts[0])?,
            black_edges: nonneg(counts[1])?,
            black_vertices: nonneg(counts[2])?,
            chi: counts[3],
        })
    }
}

/// Append-only move log.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveTrace {
    pub records: Vec<TraceRecord>,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }

    /// All records, one per line, each terminated by a newline.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut records = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let r = line.parse::<TraceRecord>().map_err(|e| match e {
                Error::Syntax { message, .. } => Error::Syntax {
                    line: i + 1,
                    column: 1,
                    message,
                },
                e => e,
            })?;
            records.push(r);
        }
        Ok(MoveTrace { records })
    }
}

/// A repaint token parsed from a trace argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaintToken {
    Triangle(usize, bool),
    Edge(usize, bool),
    Vertex(usize, bool),
}

impl PaintToken {
    /// `None` for plain integer arguments.
    pub fn parse(token: &str) -> Option<Result<Self>> {
        let (kind, black, rest): (u8, bool, &str) = if let Some(r) = token.strip_prefix("we") {
            (1, false, r)
        } else if let Some(r) = token.strip_prefix("be") {
            (1, true, r)
        } else if let Some(r) = token.strip_prefix("wv") {
            (0, false, r)
        } else if let Some(r) = token.strip_prefix("bv") {
            (0, true, r)
        } else if let Some(r) = token.strip_prefix('w') {
            (2, false, r)
        } else {
            let r = token.strip_prefix('b')?;
            (2, true, r)
        };
        Some(
            rest.parse::<usize>()
                .map(|i| match kind {
                    0 => PaintToken::Vertex(i, black),
                    1 => PaintToken::Edge(i, black),
                    _ => PaintToken::Triangle(i, black),
                })
                .map_err(|_| Error::InvalidParameters(format!("bad paint token {token:?}"))),
        )
    }
}

impl fmt::Display for PaintToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |black: bool| if black { "b" } else { "w" };
        match *self {
            PaintToken::Triangle(i, b) => write!(f, "{}{i}", c(b)),
            PaintToken::Edge(i, b) => write!(f, "{}e{i}", c(b)),
            PaintToken::Vertex(i, b) => write!(f, "{}v{i}", c(b)),
        }
    }
}
