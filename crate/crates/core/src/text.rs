//! The line-based lattice file format.
//!
//! ```text
//! lattice <name>
//! elements <n>
//! covers
//! <a> <b>      # a is covered by b
//! end
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{build_lattice, FiniteLattice};

/// A parsed lattice file.
#[derive(Debug, Clone)]
pub struct NamedLattice {
    pub name: String,
    pub lattice: FiniteLattice,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_count(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| {
        parse_err(
            line,
            format!("expected a non-negative integer, found `{tok}`"),
        )
    })
}

pub fn parse_lattice(src: &str) -> Result<NamedLattice> {
    #[derive(PartialEq)]
    enum State {
        Header,
        Elements,
        CoversKeyword,
        Covers,
        Done,
    }
    let mut state = State::Header;
    let mut name = String::new();
    let mut n = 0usize;
    let mut covers = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match state {
            State::Header => {
                if toks[0] != "lattice" || toks.len() > 2 {
                    return Err(parse_err(line_no, "expected `lattice <name>`"));
                }
                name = toks.get(1).copied().unwrap_or("").to_string();
                state = State::Elements;
            }
            State::Elements => {
                if toks.len() != 2 || toks[0] != "elements" {
                    return Err(parse_err(line_no, "expected `elements <n>`"));
                }
                n = parse_count(line_no, toks[1])?;
                state = State::CoversKeyword;
            }
            State::CoversKeyword => {
                if toks != ["covers"] {
                    return Err(parse_err(line_no, "expected `covers`"));
                }
                state = State::Covers;
            }
            State::Covers => {
                if toks == ["end"] {
                    state = State::Done;
                    continue;
                }
                if toks.len() != 2 {
                    return Err(parse_err(
                        line_no,
                        "expected a cover pair `<a> <b>` or `end`",
                    ));
                }
                let a = parse_count(line_no, toks[0])?;
                let b = parse_count(line_no, toks[1])?;
                for x in [a, b] {
                    if x >= n {
                        return Err(parse_err(line_no, format!("element {x} is not in 0..{n}")));
                    }
                }
                covers.push((a, b));
            }
            State::Done => {
                return Err(parse_err(line_no, "unexpected content after `end`"));
            }
        }
    }
    if state != State::Done {
        return Err(parse_err(
            last_line.max(1),
            "unexpected end of input, missing `end`",
        ));
    }
    Ok(NamedLattice {
        name,
        lattice: build_lattice(n, &covers)?,
    })
}

pub fn write_lattice(name: &str, lattice: &FiniteLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lattice {name}");
    let _ = writeln!(out, "elements {}", lattice.len());
    out.push_str("covers\n");
    for (a, b) in lattice.covers() {
        let _ = writeln!(out, "{a} {b}");
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_spacing() {
        let src =
            "# a diamond\nlattice  B2\n elements 4 \ncovers\n0 1 # left\n0\t2\n\n1 3\n2 3\nend\n";
        let parsed = parse_lattice(src).unwrap();
        assert_eq!(parsed.name, "B2");
        assert_eq!(parsed.lattice.len(), 4);
        assert_eq!(parsed.lattice.join(1, 2), 3);
        let again = parse_lattice(&write_lattice("B2", &parsed.lattice)).unwrap();
        assert_eq!(again.lattice.covers(), parsed.lattice.covers());
    }

    #[test]
    fn reports_line_numbers() {
        let bad = "lattice x\nelements 3\ncovers\n0 1\n1 two\nend\n";
        match parse_lattice(bad).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 5),
            e => panic!("unexpected {e:?}"),
        }
        let out_of_range = "lattice x\nelements 2\ncovers\n0 2\nend\n";
        assert!(matches!(
            parse_lattice(out_of_range),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_lattice("lattice x\nelements 2\ncovers\n0 1\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn lattice_errors_pass_through() {
        let src = "lattice v\nelements 3\ncovers\n0 1\n0 2\nend\n";
        assert_eq!(parse_lattice(src).unwrap_err().name(), "NotALattice");
    }
}
