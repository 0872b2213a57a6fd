//! Plain-text hypertree files.
//!
//! ```text
//! p m n
//! v v v      <- m lines of p vertex ids
//! ```
//!
//! A file may hold several hypertrees separated by blank lines. Writing always
//! produces the normal form with `\n` line endings.

use std::fmt;

use thiserror::Error;

use super::{Hypertree, HypertreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: expected header `p m n`")]
    Header { line: usize },
    #[error("line {line}: expected {expected} vertex ids")]
    Edge { line: usize, expected: usize },
    #[error("block starting at line {line}: header declares {expected} edges, found {found}")]
    EdgeCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("no hypertree found")]
    Empty,
    #[error("expected one hypertree, found {0}")]
    MultipleBlocks(usize),
    #[error("block starting at line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: HypertreeError,
    },
}

impl fmt::Display for Hypertree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.p, self.m(), self.n)?;
        for edge in &self.edges {
            let mut first = true;
            for v in edge {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Serialises several hypertrees, separated by blank lines.
pub fn write_hypertrees<'a>(trees: impl IntoIterator<Item = &'a Hypertree>) -> String {
    let blocks: Vec<String> = trees.into_iter().map(Hypertree::to_string).collect();
    blocks.join("\n")
}

fn parse_numbers(line: &str) -> Option<Vec<usize>> {
    line.split_whitespace().map(|w| w.parse().ok()).collect()
}

/// Parses every blank-line-separated hypertree in `input`.
pub fn parse_hypertrees(input: &str) -> Result<Vec<Hypertree>, TextError> {
    let mut trees = Vec::new();
    let mut lines = input.lines().enumerate().peekable();
    loop {
        while lines.next_if(|(_, l)| l.trim().is_empty()).is_some() {}
        let Some((idx, header)) = lines.next() else {
            break;
        };
        let line = idx + 1;
        let [p, m, n] = parse_numbers(header)
            .and_then(|v| <[usize; 3]>::try_from(v).ok())
            .ok_or(TextError::Header { line })?;
        let mut edges = Vec::with_capacity(m);
        while let Some((j, text)) = lines.next_if(|(_, l)| !l.trim().is_empty()) {
            let edge = parse_numbers(text).ok_or(TextError::Edge {
                line: j + 1,
                expected: p,
            })?;
            edges.push(edge);
        }
        if edges.len() != m {
            return Err(TextError::EdgeCount {
                line,
                expected: m,
                found: edges.len(),
            });
        }
        trees.push(
            Hypertree::new(p, n, edges).map_err(|source| TextError::Invalid { line, source })?,
        );
    }
    Ok(trees)
}

/// Parses a single hypertree; extra blocks are an error.
pub fn parse_hypertree(input: &str) -> Result<Hypertree, TextError> {
    let mut trees = parse_hypertrees(input)?;
    match trees.len() {
        0 => Err(TextError::Empty),
        1 => Ok(trees.pop().unwrap()),
        count => Err(TextError::MultipleBlocks(count)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypertree::{enumerate_hypertrees, random_hypertree};
    use proptest::prelude::*;

    #[test]
    fn writes_normal_form() {
        let t = Hypertree::new(3, 5, vec![vec![4, 2, 3], vec![1, 0, 2]]).unwrap();
        assert_eq!(t.to_string(), "3 2 5\n0 1 2\n2 3 4\n");
    }

    #[test]
    fn reads_multiple_blocks() {
        let trees: Vec<_> = enumerate_hypertrees(2, 4).collect();
        let text = write_hypertrees(&trees);
        assert_eq!(parse_hypertrees(&text).unwrap(), trees);
        assert_eq!(parse_hypertree(&text), Err(TextError::MultipleBlocks(3)));
    }

    #[test]
    fn reports_bad_input() {
        assert_eq!(parse_hypertree("3 2\n"), Err(TextError::Header { line: 1 }));
        assert_eq!(
            parse_hypertree("3 2 5\n0 1 2\n"),
            Err(TextError::EdgeCount {
                line: 1,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            parse_hypertree("3 1 3\n0 x 2\n"),
            Err(TextError::Edge {
                line: 2,
                expected: 3
            })
        );
        assert!(matches!(
            parse_hypertree("3 2 4\n0 1 2\n1 2 3\n"),
            Err(TextError::Invalid { line: 1, .. })
        ));
        assert_eq!(parse_hypertree("\n\n"), Err(TextError::Empty));
    }

    proptest! {
        #[test]
        fn text_round_trip_is_lossless(p in 2usize..6, m in 1usize..12, seed in any::<u64>()) {
            let t = random_hypertree(p, m, seed);
            let text = t.to_string();
            let back = parse_hypertree(&text).unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, t);
        }
    }
}
