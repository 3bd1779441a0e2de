//! Text form of gluing tables.
//!
//! ```text
//! tetrahedra 2
//! tet 0: 1/0123 1/0123 1/0123 1/0123
//! tet 1: 0/0123 0/0123 0/0123 0/0123
//! ```
//!
//! `%` starts a comment; blank lines are ignored. An unglued (boundary) face is
//! written `-`; such tables parse but fail validation.

use std::fmt::Write;

use super::{FaceGluing, Triangulation};
use crate::error::{Error, Result};
use crate::perm::Perm4;

struct Cursor<'a> {
    line_no: usize,
    line: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line_no,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.line.len() && self.line.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next whitespace-delimited token with its starting column.
    fn token(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        if self.pos >= self.line.len() {
            return None;
        }
        let start = self.pos;
        while self.pos < self.line.len() && !self.line.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        Some((start, &self.line[start..self.pos]))
    }

    fn expect_token(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let here = self.pos;
        self.token().ok_or_else(|| {
            let mut c = Cursor { pos: here, ..*self };
            c.skip_ws();
            c.err(format!("expected {what}"))
        })
    }

    fn number_at(&self, col: usize, s: &str, what: &str) -> Result<usize> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Syntax {
                line: self.line_no,
                column: col + 1,
                message: format!("expected {what}, found `{s}`"),
            });
        }
        s.parse().map_err(|_| Error::Syntax {
            line: self.line_no,
            column: col + 1,
            message: format!("{what} out of range"),
        })
    }
}

pub(crate) fn parse(text: &str) -> Result<Triangulation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('%').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    let Some((line_no, header)) = lines.next() else {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "missing `tetrahedra <N>` header".into(),
        });
    };
    let mut cur = Cursor {
        line_no,
        line: header,
        pos: 0,
    };
    let (col, kw) = cur.expect_token("`tetrahedra`")?;
    if kw != "tetrahedra" {
        return Err(Error::Syntax {
            line: line_no,
            column: col + 1,
            message: format!("expected `tetrahedra`, found `{kw}`"),
        });
    }
    let (col, n_tok) = cur.expect_token("tetrahedron count")?;
    let n = cur.number_at(col, n_tok, "tetrahedron count")?;
    if let Some((col, extra)) = cur.token() {
        return Err(Error::Syntax {
            line: line_no,
            column: col + 1,
            message: format!("unexpected `{extra}` after header"),
        });
    }
    if n == 0 {
        return Err(Error::EmptyTriangulation);
    }

    let mut rows: Vec<Option<[Option<FaceGluing>; 4]>> = vec![None; n];
    for (line_no, line) in lines {
        let mut cur = Cursor { line_no, line, pos: 0 };
        let (col, kw) = cur.expect_token("`tet`")?;
        if kw != "tet" {
            return Err(Error::Syntax {
                line: line_no,
                column: col + 1,
                message: format!("expected `tet`, found `{kw}`"),
            });
        }
        let (col, label) = cur.expect_token("tetrahedron index")?;
        let Some(idx) = label.strip_suffix(':') else {
            return Err(Error::Syntax {
                line: line_no,
                column: col + label.len() + 1,
                message: "expected `:` after tetrahedron index".into(),
            });
        };
        let i = cur.number_at(col, idx, "tetrahedron index")?;
        if i >= n {
            return Err(Error::Syntax {
                line: line_no,
                column: col + 1,
                message: format!("tetrahedron index {i} out of range 0..{n}"),
            });
        }
        if rows[i].is_some() {
            return Err(Error::Syntax {
                line: line_no,
                column: col + 1,
                message: format!("duplicate line for tetrahedron {i}"),
            });
        }
        let mut row = [None; 4];
        for (face, slot) in row.iter_mut().enumerate() {
            let (col, tok) = cur.expect_token(&format!("gluing for face {face}"))?;
            if tok == "-" {
                continue;
            }
            let Some((j, p)) = tok.split_once('/') else {
                return Err(Error::Syntax {
                    line: line_no,
                    column: col + 1,
                    message: format!("expected `<tet>/<perm>`, found `{tok}`"),
                });
            };
            let target = cur.number_at(col, j, "target tetrahedron")?;
            let pcol = col + j.len() + 1;
            let digits: Vec<u8> = p.bytes().map(|b| b.wrapping_sub(b'0')).collect();
            let perm = (digits.len() == 4)
                .then(|| Perm4::from_images([digits[0], digits[1], digits[2], digits[3]]))
                .flatten()
                .ok_or(Error::Syntax {
                    line: line_no,
                    column: pcol + 1,
                    message: format!("`{p}` is not a permutation of 0123"),
                })?;
            *slot = Some(FaceGluing { tet: target, perm });
        }
        if let Some((col, extra)) = cur.token() {
            return Err(Error::Syntax {
                line: line_no,
                column: col + 1,
                message: format!("unexpected `{extra}` after four gluings"),
            });
        }
        rows[i] = Some(row);
    }
    let mut table = Vec::with_capacity(n);
    for (i, row) in rows.into_iter().enumerate() {
        table.push(row.ok_or(Error::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: format!("missing line for tetrahedron {i}"),
        })?);
    }
    Triangulation::from_gluings(table)
}

pub(crate) fn serialize(t: &Triangulation) -> String {
    let mut out = String::new();
    writeln!(out, "tetrahedra {}", t.tet_count()).unwrap();
    for (i, row) in t.gluings().iter().enumerate() {
        write!(out, "tet {i}:").unwrap();
        for g in row {
            match g {
                Some(g) => write!(out, " {}/{}", g.tet, g.perm).unwrap(),
                None => out.push_str(" -"),
            }
        }
        out.push('\n');
    }
    out
}
