//! Line-oriented text format for tangle words.
//!
//! ```text
//! # unknot
//! mod 0
//! left:
//! L 1 -1
//! R 1
//! ```

use super::word::{Letter, TangleWord};
use crate::complex::points::GradedPointSet;
use crate::error::{CyError, Result};

fn err(line: usize, col: usize, msg: impl Into<String>) -> CyError {
    CyError::Parse { line, col, msg: msg.into() }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((s[..b].chars().count() + 1, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

fn int<T: std::str::FromStr>(line: usize, tok: (usize, &str), what: &str) -> Result<T> {
    tok.1.parse().map_err(|_| err(line, tok.0, format!("expected {what}, found `{}`", tok.1)))
}

fn arity(line: usize, toks: &[(usize, &str)], n: usize) -> Result<()> {
    if toks.len() != n + 1 {
        let col = toks.get(n + 1).map_or(toks[0].0, |t| t.0);
        return Err(err(line, col, format!("`{}` takes {n} argument(s), got {}", toks[0].1, toks.len() - 1)));
    }
    Ok(())
}

pub fn parse_tangle(text: &str) -> Result<TangleWord> {
    let mut m: Option<u32> = None;
    let mut word: Option<TangleWord> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body);
        let Some(&(col, head)) = toks.first() else { continue };
        match head {
            "mod" => {
                if m.is_some() {
                    return Err(err(line, col, "duplicate `mod` statement"));
                }
                arity(line, &toks, 1)?;
                let n: i64 = int(line, toks[1], "grading modulus")?;
                if n < 0 || n % 2 != 0 {
                    return Err(err(line, toks[1].0, format!("grading modulus must be even and non-negative, got {n}")));
                }
                m = Some((n / 2) as u32);
            }
            "left:" => {
                let Some(m) = m else {
                    return Err(err(line, col, "`left:` before `mod`"));
                };
                if word.is_some() {
                    return Err(err(line, col, "`left:` must come once, before any letter"));
                }
                let degs = toks[1..].iter().map(|&t| int(line, t, "degree")).collect::<Result<Vec<i64>>>()?;
                word = Some(TangleWord::identity(GradedPointSet::new(m, degs)));
            }
            "L" | "R" | "X" => {
                let Some(mm) = m else {
                    return Err(err(line, col, "letter before `mod`"));
                };
                let w = word.get_or_insert_with(|| TangleWord::identity(GradedPointSet::empty(mm)));
                let kind = match head {
                    "L" => {
                        arity(line, &toks, 2)?;
                        Letter::LeftCusp { i: int(line, toks[1], "position")?, upper: int(line, toks[2], "degree")? }
                    }
                    "R" => {
                        arity(line, &toks, 1)?;
                        Letter::RightCusp { i: int(line, toks[1], "position")? }
                    }
                    _ => {
                        arity(line, &toks, 1)?;
                        Letter::Crossing { k: int(line, toks[1], "position")? }
                    }
                };
                w.push(kind).map_err(|e| match e {
                    CyError::Grading(msg) => err(line, col, msg),
                    other => other,
                })?;
            }
            other => return Err(err(line, col, format!("unknown statement `{other}`"))),
        }
    }
    let Some(m) = m else {
        return Err(err(1, 1, "missing `mod` statement"));
    };
    Ok(word.unwrap_or_else(|| TangleWord::identity(GradedPointSet::empty(m))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot() {
        let w = parse_tangle("mod 0\nleft:\nL 1 -1\nR 1\n").unwrap();
        assert!(w.is_closed());
        assert_eq!(w.letters[0].right.degrees, vec![0, -1]);
    }

    #[test]
    fn identity_two_strands() {
        let w = parse_tangle("mod 0\nleft: 0 -1\n").unwrap();
        assert!(w.letters.is_empty());
        assert_eq!(w.right().degrees, vec![0, -1]);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_tangle("mod 3\n").unwrap_err();
        assert!(matches!(e, CyError::Parse { line: 1, col: 5, .. }), "{e}");
        let e = parse_tangle("mod 0\nleft:\nL 1 0\nX 1\n  R   1  # bad\n").unwrap_err();
        match e {
            CyError::Parse { line, col, msg } => {
                assert_eq!((line, col), (5, 3));
                assert!(msg.contains("strands 1,2"), "{msg}");
            }
            other => panic!("{other}"),
        }
        let e = parse_tangle("mod 0\nY 2\n").unwrap_err();
        assert!(matches!(e, CyError::Parse { line: 2, col: 1, .. }));
        let e = parse_tangle("mod 0\nleft: 0 x\n").unwrap_err();
        assert!(matches!(e, CyError::Parse { line: 2, col: 9, .. }));
    }

    #[test]
    fn dsl_round_trip() {
        let src = "mod 4\nleft: 1 0\nL 1 2\nX 2\nX 2\nR 1\n";
        let w = parse_tangle(src).unwrap();
        assert_eq!(parse_tangle(&w.to_dsl()).unwrap(), w);
    }
}
