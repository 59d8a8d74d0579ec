//! Path addresses `r.2.0*1-3.4`: `.m` steps to successor `m`, `*i-j` steps
//! to the vertex subdividing the edge between successors `i` and `j`.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Up(u32),
    Sub(u32, u32),
}

impl Ord for Token {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Token::Up(a), Token::Up(b)) => a.cmp(b),
            (Token::Up(_), Token::Sub(..)) => Ordering::Less,
            (Token::Sub(..), Token::Up(_)) => Ordering::Greater,
            (Token::Sub(a, b), Token::Sub(c, d)) => (a, b).cmp(&(c, d)),
        }
    }
}

impl PartialOrd for Token {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Token {
    pub fn sub(i: u32, j: u32) -> Token {
        Token::Sub(i.min(j), i.max(j))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Up(m) => write!(f, ".{m}"),
            Token::Sub(i, j) => write!(f, "*{i}-{j}"),
        }
    }
}

fn number(s: &str) -> Option<u32> {
    if s.is_empty() || (s.len() > 1 && s.starts_with('0')) || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses a token string such as `.0*1-2.3` (no root marker).
pub fn parse_tokens(s: &str) -> Option<Vec<Token>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let kind = bytes[i];
        let start = i + 1;
        let mut end = start;
        while end < bytes.len() && bytes[end] != b'.' && bytes[end] != b'*' {
            end += 1;
        }
        let body = &s[start..end];
        match kind {
            b'.' => out.push(Token::Up(number(body)?)),
            b'*' => {
                let (a, b) = body.split_once('-')?;
                let (a, b) = (number(a)?, number(b)?);
                if a >= b {
                    return None;
                }
                out.push(Token::Sub(a, b));
            }
            _ => return None,
        }
        i = end;
    }
    Some(out)
}

/// Parses a vertex address `r<tokens>`.
pub fn parse_address(v: &VertexId, family: &str) -> Result<Vec<Token>> {
    v.as_str()
        .strip_prefix('r')
        .and_then(parse_tokens)
        .ok_or_else(|| Error::address(v.as_str(), family))
}

pub fn format_tokens(tokens: &[Token]) -> String {
    let mut s = String::new();
    for t in tokens {
        let _ = write!(s, "{t}");
    }
    s
}

pub fn address(tokens: &[Token]) -> VertexId {
    VertexId::from(format!("r{}", format_tokens(tokens)))
}

pub fn child(v: &VertexId, t: Token) -> VertexId {
    VertexId::from(format!("{v}{t}"))
}

/// The address with its last token removed.
pub fn parent_str(s: &str) -> Option<&str> {
    s.rfind(['.', '*']).map(|p| &s[..p])
}

pub fn parent(v: &VertexId) -> Option<VertexId> {
    parent_str(v.as_str()).map(VertexId::new)
}

/// Whether `a` is `b` or an ancestor of `b` in the address tree.
pub fn is_prefix(a: &str, b: &str) -> bool {
    b.starts_with(a) && (b.len() == a.len() || matches!(b.as_bytes()[a.len()], b'.' | b'*'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let t = parse_tokens(".2.0*1-3.4").unwrap();
        assert_eq!(t, vec![Token::Up(2), Token::Up(0), Token::Sub(1, 3), Token::Up(4)]);
        assert_eq!(format_tokens(&t), ".2.0*1-3.4");
        assert_eq!(address(&t).as_str(), "r.2.0*1-3.4");
    }

    #[test]
    fn rejects_malformed() {
        for bad in [".", ".01", "*3-1", "*1-1", ".a", "x", "*1", ".1*2-"] {
            assert!(parse_tokens(bad).is_none(), "{bad}");
        }
        assert!(parse_address(&VertexId::new("q.1"), "t").is_err());
    }

    #[test]
    fn prefixes() {
        assert!(is_prefix("r.1", "r.1*0-2"));
        assert!(is_prefix("r.1", "r.1"));
        assert!(!is_prefix("r.1", "r.12"));
        assert_eq!(parent_str("r.1*0-2"), Some("r.1"));
        assert_eq!(parent_str("r"), None);
    }
}
