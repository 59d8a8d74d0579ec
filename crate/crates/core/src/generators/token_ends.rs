//! Eventually periodic ends of address-tree families, written
//! `prefix(period)` in token notation, e.g. `.1(.0*0-2)`.

use crate::ends::EndId;
use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet};

use super::cone::prefix_closure;
use super::tokens::{self, format_tokens, parse_tokens, Token};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TokenEnd {
    pub prefix: Vec<Token>,
    pub period: Vec<Token>,
}

fn primitive_len(period: &[Token]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&d| n % d == 0 && (d..n).all(|i| period[i] == period[i - d]))
        .unwrap_or(n)
}

impl TokenEnd {
    pub fn canonical(mut prefix: Vec<Token>, mut period: Vec<Token>) -> Self {
        period.truncate(primitive_len(&period));
        while !period.is_empty() && prefix.last() == period.last() {
            prefix.pop();
            period.rotate_right(1);
        }
        TokenEnd { prefix, period }
    }

    pub fn is_canonical(&self) -> bool {
        primitive_len(&self.period) == self.period.len()
            && (self.prefix.is_empty() || self.prefix.last() != self.period.last())
    }

    pub fn parse(s: &str, family: &str, valid: impl Fn(Token) -> bool) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed end {s:?} for family {family}"));
        let (pre, rest) = s.split_once('(').ok_or_else(bad)?;
        let per = rest.strip_suffix(')').ok_or_else(bad)?;
        let prefix = parse_tokens(pre).ok_or_else(bad)?;
        let period = parse_tokens(per).ok_or_else(bad)?;
        if period.is_empty() || !prefix.iter().chain(&period).all(|&t| valid(t)) {
            return Err(bad());
        }
        Ok(TokenEnd::canonical(prefix, period))
    }

    pub fn id(&self) -> EndId {
        EndId::new(format!(
            "{}({})",
            format_tokens(&self.prefix),
            format_tokens(&self.period)
        ))
    }

    pub fn token(&self, n: usize) -> Token {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.period[(n - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn tokens(&self, n: usize) -> Vec<Token> {
        (0..n).map(|i| self.token(i)).collect()
    }

    /// Ray vertices, each flagged when it is a full token prefix. With
    /// `via_sibling`, a `*i-j` step is reached through successor `i`.
    pub fn ray(&self, n: usize, via_sibling: bool) -> Vec<(VertexId, bool)> {
        let mut out = Vec::with_capacity(n);
        let mut cur = tokens::address(&[]);
        out.push((cur.clone(), true));
        let mut t = 0;
        while out.len() < n {
            let tok = self.token(t);
            t += 1;
            if let (Token::Sub(i, _), true) = (tok, via_sibling) {
                out.push((tokens::child(&cur, Token::Up(i)), false));
            }
            cur = tokens::child(&cur, tok);
            out.push((cur.clone(), true));
        }
        out.truncate(n);
        out
    }

    /// First full-prefix ray vertex outside the prefix closure of `sep`:
    /// its cone contains the rest of the ray and avoids `sep`.
    pub fn tail_start(&self, sep: &VertexSet, via_sibling: bool) -> usize {
        let d = prefix_closure(sep);
        let depth = sep
            .iter()
            .map(|s| s.as_str().matches(['.', '*']).count())
            .max()
            .unwrap_or(0);
        let ray = self.ray(2 * depth + 4, via_sibling);
        ray.iter()
            .position(|(v, full)| *full && !d.contains(v.as_str()))
            .expect("the ray leaves the prefix closure of a finite set")
    }
}

/// Canonical ends over `alphabet`, by total length, then split, then
/// lexicographically.
pub(crate) struct TokenEndIter {
    alphabet: Vec<Token>,
    len: usize,
    split: usize,
    counter: Vec<usize>,
    done_current: bool,
}

impl TokenEndIter {
    pub fn new(mut alphabet: Vec<Token>) -> Self {
        alphabet.sort();
        TokenEndIter {
            alphabet,
            len: 1,
            split: 0,
            counter: vec![0],
            done_current: false,
        }
    }

    fn advance(&mut self) {
        let a = self.alphabet.len();
        for i in (0..self.len).rev() {
            self.counter[i] += 1;
            if self.counter[i] < a {
                return;
            }
            self.counter[i] = 0;
        }
        self.split += 1;
        if self.split == self.len {
            self.len += 1;
            self.split = 0;
            self.counter = vec![0; self.len];
        }
    }
}

impl Iterator for TokenEndIter {
    type Item = EndId;

    fn next(&mut self) -> Option<EndId> {
        if self.alphabet.is_empty() {
            return None;
        }
        loop {
            if self.done_current {
                self.advance();
            }
            self.done_current = true;
            let seq: Vec<Token> = self.counter.iter().map(|&c| self.alphabet[c]).collect();
            let end = TokenEnd {
                prefix: seq[..self.split].to_vec(),
                period: seq[self.split..].to_vec(),
            };
            if end.is_canonical() {
                return Some(end.id());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let e = TokenEnd::parse(".1.0(.1.0.1.0)", "t", |_| true).unwrap();
        assert_eq!(e.id().as_str(), "(.1.0)");
        let e = TokenEnd::parse(".2.0(.1.0)", "t", |_| true).unwrap();
        assert_eq!(e.id().as_str(), ".2(.0.1)");
        assert!(TokenEnd::parse(".2", "t", |_| true).is_err());
        assert!(TokenEnd::parse("()", "t", |_| true).is_err());
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let ends: Vec<EndId> = TokenEndIter::new(vec![Token::Up(0), Token::Up(1)]).take(40).collect();
        assert_eq!(ends[0].as_str(), "(.0)");
        assert_eq!(ends[1].as_str(), "(.1)");
        let set: std::collections::BTreeSet<_> = ends.iter().collect();
        assert_eq!(set.len(), ends.len());
        for e in &ends {
            let back = TokenEnd::parse(e.as_str(), "t", |_| true).unwrap();
            assert_eq!(&back.id(), e);
        }
    }

    #[test]
    fn ray_through_siblings() {
        let e = TokenEnd::parse("(*0-1)", "t", |_| true).unwrap();
        let ray: Vec<String> = e.ray(5, true).into_iter().map(|(v, _)| v.to_string()).collect();
        assert_eq!(ray, ["r", "r.0", "r*0-1", "r*0-1.0", "r*0-1*0-1"]);
    }
}
