//! The line-oriented group definition format.
//!
//! ```text
//! # comment
//! name heis27
//! p 3
//! degree 27
//! gen (0 1 2)(3 4 5)
//! ```
//!
//! Points are 0-based; `#` starts a comment anywhere on a line. The writer
//! emits cycles sorted by their minimal point with fixed points omitted, so
//! write-then-load round trips bit-exactly.

use std::fs;
use std::path::Path;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

pub fn group_to_text(g: &Group) -> String {
    let mut out = String::new();
    out.push_str(&format!("name {}\n", g.name()));
    out.push_str(&format!("p {}\n", g.p()));
    out.push_str(&format!("degree {}\n", g.degree()));
    for &gi in g.gens() {
        out.push_str(&format!("gen {}\n", g.element(gi)));
    }
    out
}

pub fn write_group_file(g: &Group, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, group_to_text(g)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_group_file(path: impl AsRef<Path>, caps: &Caps) -> Result<Group> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_group_text(&text, caps)
}

pub fn parse_group_text(text: &str, caps: &Caps) -> Result<Group> {
    let mut name: Option<String> = None;
    let mut p: Option<u32> = None;
    let mut degree: Option<usize> = None;
    let mut gens: Vec<Perm> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        match key {
            "name" => {
                if name.is_some() {
                    return parse_err(line, "duplicate name line");
                }
                if rest.is_empty() || rest.split_whitespace().count() != 1 {
                    return parse_err(line, "name takes exactly one identifier");
                }
                name = Some(rest.to_string());
            }
            "p" => {
                if p.is_some() {
                    return parse_err(line, "duplicate p line");
                }
                p = Some(rest.parse().map_err(|_| Error::GroupFileParse {
                    line,
                    msg: format!("invalid prime '{rest}'"),
                })?);
            }
            "degree" => {
                if degree.is_some() {
                    return parse_err(line, "duplicate degree line");
                }
                let d: usize = rest.parse().map_err(|_| Error::GroupFileParse {
                    line,
                    msg: format!("invalid degree '{rest}'"),
                })?;
                if d == 0 || d > u16::MAX as usize {
                    return parse_err(line, "degree out of range");
                }
                degree = Some(d);
            }
            "gen" => {
                let d = match degree {
                    Some(d) => d,
                    None => return parse_err(line, "degree must precede gen lines"),
                };
                let cycles = parse_cycles(rest, line)?;
                let perm = Perm::from_cycles(d, &cycles).map_err(|e| Error::GroupFileParse {
                    line,
                    msg: e.to_string(),
                })?;
                gens.push(perm);
            }
            other => {
                return parse_err(line, &format!("unknown directive '{other}'"));
            }
        }
    }

    let p = p.ok_or_else(|| Error::GroupFileParse {
        line: text.lines().count() + 1,
        msg: "missing p line".into(),
    })?;
    let degree = degree.ok_or_else(|| Error::GroupFileParse {
        line: text.lines().count() + 1,
        msg: "missing degree line".into(),
    })?;
    if gens.is_empty() {
        // Pin the declared degree for the trivial group.
        gens.push(Perm::identity(degree));
    }
    Group::enumerate(name.unwrap_or_else(|| "unnamed".into()), p, gens, caps)
}

fn parse_err<T>(line: usize, msg: &str) -> Result<T> {
    Err(Error::GroupFileParse {
        line,
        msg: msg.to_string(),
    })
}

/// Parses `(0 1 2)(3 4 5)`; whitespace between tokens is free; `()` and an
/// empty string both denote the identity.
fn parse_cycles(text: &str, line: usize) -> Result<Vec<Vec<u16>>> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<u16>> = None;
    let mut token = String::new();

    let flush_token = |current: &mut Option<Vec<u16>>, token: &mut String| -> Result<()> {
        if token.is_empty() {
            return Ok(());
        }
        let pt: u16 = token.parse().map_err(|_| Error::GroupFileParse {
            line,
            msg: format!("invalid point '{token}'"),
        })?;
        match current {
            Some(c) => c.push(pt),
            None => return parse_err(line, "point outside of a cycle"),
        }
        token.clear();
        Ok(())
    };

    for ch in text.chars() {
        match ch {
            '(' => {
                flush_token(&mut current, &mut token)?;
                if current.is_some() {
                    return parse_err(line, "nested '(' in cycle");
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush_token(&mut current, &mut token)?;
                match current.take() {
                    Some(c) => {
                        if !c.is_empty() {
                            cycles.push(c);
                        }
                    }
                    None => return parse_err(line, "unmatched ')'"),
                }
            }
            c if c.is_whitespace() => flush_token(&mut current, &mut token)?,
            c if c.is_ascii_digit() => token.push(c),
            other => {
                return parse_err(line, &format!("unexpected character '{other}'"));
            }
        }
    }
    flush_token(&mut current, &mut token)?;
    if current.is_some() {
        return parse_err(line, "unbalanced '(' at end of line");
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Family, GroupSpec};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn parse_minimal_file() {
        let g = parse_group_text("name t\np 3\ndegree 3\ngen (0 1 2)\n", &caps()).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.name(), "t");
    }

    #[test]
    fn comments_and_whitespace() {
        let text = "# a header\nname t # trailing\np 3\ndegree 6\n\ngen (0 1 2) ( 3 4 5 )\n";
        let g = parse_group_text(text, &caps()).unwrap();
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn unbalanced_cycle_reports_line() {
        let err = parse_group_text("p 3\ndegree 3\ngen (0 1\n", &caps()).unwrap_err();
        match err {
            Error::GroupFileParse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn assorted_parse_errors() {
        for bad in [
            "p 3\ngen (0 1 2)\n",             // gen before degree
            "p 3\ndegree 3\nbogus 1\n",       // unknown directive
            "p x\ndegree 3\n",                // bad prime
            "p 3\ndegree 3\ngen (0 1 9)\n",   // point out of range
            "p 3\ndegree 3\ngen (0 1)(1 2)\n",// repeated point
            "degree 3\n",                     // missing p
            "p 3\n",                          // missing degree
            "p 3\ndegree 3\ngen 0 1 2\n",     // points outside cycle
        ] {
            assert!(
                matches!(parse_group_text(bad, &caps()), Err(Error::GroupFileParse { .. })),
                "should reject {bad:?}"
            );
        }
    }

    #[test]
    fn heisenberg_round_trip_is_bit_exact() {
        let g = corpus::build(
            &GroupSpec::new("heis27", Family::ExtraspecialExpP { p: 3 }),
            &caps(),
        )
        .unwrap();
        let text = group_to_text(&g);
        let g2 = parse_group_text(&text, &caps()).unwrap();
        assert_eq!(g.order(), g2.order());
        assert_eq!(g.elements(), g2.elements());
        assert_eq!(group_to_text(&g2), text);
    }

    #[test]
    fn trivial_group_round_trip_keeps_degree() {
        let g = parse_group_text("name t\np 3\ndegree 4\ngen ()\n", &caps()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.degree(), 4);
        let text = group_to_text(&g);
        let g2 = parse_group_text(&text, &caps()).unwrap();
        assert_eq!(g2.degree(), 4);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("wr3.grp");
        let g = corpus::build(
            &GroupSpec::new("wr3", Family::WreathCpCp { p: 3 }),
            &caps(),
        )
        .unwrap();
        write_group_file(&g, &path).unwrap();
        let g2 = load_group_file(&path, &caps()).unwrap();
        assert_eq!(g.elements(), g2.elements());
    }
}
