//! Parsing element descriptions against a constructed group.
//!
//! A description is an index, a tuple (for products and matrices), or text:
//! an element label, cycle notation for permutation groups, a matrix such
//! as `[[0,1],[-1,0]]`, or a word over the named generators such as
//! `zyz^-1y` or `z^2`.

use super::{Element, FiniteGroup, Kind, Permutation};
use crate::error::{arg, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSpec {
    Index(i64),
    Text(String),
    Tuple(Vec<ElementSpec>),
}

impl From<&str> for ElementSpec {
    fn from(s: &str) -> Self {
        ElementSpec::Text(s.to_owned())
    }
}

impl From<usize> for ElementSpec {
    fn from(i: usize) -> Self {
        ElementSpec::Index(i as i64)
    }
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

impl FiniteGroup {
    pub fn resolve(&self, spec: &ElementSpec) -> Result<Element> {
        match spec {
            ElementSpec::Index(i) => {
                if *i < 0 || *i as usize >= self.order() {
                    return arg(format!("element index {i} out of range 0..{}", self.order()));
                }
                Ok(*i as usize)
            }
            ElementSpec::Tuple(parts) => self.resolve_tuple(parts),
            ElementSpec::Text(text) => self.resolve_str(text),
        }
    }

    pub fn resolve_str(&self, text: &str) -> Result<Element> {
        let key = squash(text);
        if let Some(i) = self.labels().iter().position(|l| squash(l) == key) {
            return Ok(i);
        }
        match self.kind() {
            Kind::Permutations { degree, perms } if key.starts_with('(') => {
                let p = Permutation::parse_cycles(&key, *degree)?;
                return perms.iter().position(|q| *q == p).ok_or_else(|| {
                    Error::Argument(format!("permutation {text} is not in {}", self.name()))
                });
            }
            Kind::Matrices { .. } if key.starts_with('[') => {
                return self.resolve_tuple(&parse_nested(&key)?);
            }
            Kind::Product(..) | Kind::Semidirect(..) if key.starts_with('(') => {
                if let Some(parts) = split_pair(&key) {
                    return self.resolve_tuple(&parts);
                }
            }
            _ => {}
        }
        if let Ok(i) = key.parse::<i64>() {
            return self.resolve(&ElementSpec::Index(i));
        }
        self.eval_word(&key)
    }

    fn resolve_tuple(&self, parts: &[ElementSpec]) -> Result<Element> {
        match self.kind() {
            Kind::Product(a, b) | Kind::Semidirect(a, b) => {
                let [x, y] = parts else {
                    return arg(format!("expected a pair, got {} components", parts.len()));
                };
                Ok(a.resolve(x)? * b.order() + b.resolve(y)?)
            }
            Kind::Matrices { modulus, entries } => {
                let rows: Vec<&[ElementSpec]> = parts
                    .iter()
                    .filter_map(|r| match r {
                        ElementSpec::Tuple(row) => Some(row.as_slice()),
                        _ => None,
                    })
                    .collect();
                let flat: Vec<&ElementSpec> = if rows.len() == 2 {
                    rows.iter().flat_map(|r| r.iter()).collect()
                } else {
                    parts.iter().collect()
                };
                if flat.len() != 4 {
                    return arg("expected a 2x2 matrix");
                }
                let mut m = [0u32; 4];
                for (slot, e) in m.iter_mut().zip(flat) {
                    let ElementSpec::Index(x) = e else {
                        return arg("matrix entries must be integers");
                    };
                    *slot = x.rem_euclid(*modulus as i64) as u32;
                }
                entries.iter().position(|e| *e == m).ok_or_else(|| {
                    Error::Argument(format!("matrix {m:?} is not in {}", self.name()))
                })
            }
            _ => arg(format!("{} has no tuple element syntax", self.name())),
        }
    }

    /// Evaluates a word over the named generators. `e` denotes the identity
    /// unless it is itself a generator name.
    pub fn eval_word(&self, word: &str) -> Result<Element> {
        let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = WordParser { group: self, chars: &chars, pos: 0 };
        let value = parser.word()?;
        if parser.pos != chars.len() {
            return arg(format!("unexpected {:?} in word {word:?}", chars[parser.pos]));
        }
        Ok(value)
    }
}

struct WordParser<'a> {
    group: &'a FiniteGroup,
    chars: &'a [char],
    pos: usize,
}

impl WordParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Element> {
        let mut acc = 0;
        let mut any = false;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '(' => {
                    let f = self.factor()?;
                    acc = self.group.mul(acc, f);
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return arg("empty word");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        let base = if self.peek() == Some('(') {
            self.pos += 1;
            let w = self.word()?;
            if self.peek() != Some(')') {
                return arg("unbalanced parenthesis in word");
            }
            self.pos += 1;
            w
        } else {
            let start = self.pos;
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            match self.group.named_generators().iter().find(|(n, _)| *n == name) {
                Some((_, g)) => *g,
                None if name == "e" => 0,
                None => return arg(format!("unknown generator {name:?}")),
            }
        };
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let exp: i64 = text.parse().map_err(|_| Error::Argument(format!("bad exponent {text:?}")))?;
        if braced {
            if self.peek() != Some('}') {
                return arg("unclosed exponent brace");
            }
            self.pos += 1;
        }
        Ok(self.group.pow(base, exp))
    }
}

/// Splits `(a, b)` at its single top-level comma.
fn split_pair(s: &str) -> Option<Vec<ElementSpec>> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    let mut cut = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                if cut.is_some() {
                    return None;
                }
                cut = Some(i);
            }
            _ => {}
        }
    }
    let i = cut?;
    Some(vec![to_spec(&inner[..i]), to_spec(&inner[i + 1..])])
}

fn to_spec(s: &str) -> ElementSpec {
    match s.parse::<i64>() {
        Ok(i) => ElementSpec::Index(i),
        Err(_) => ElementSpec::Text(s.to_owned()),
    }
}

/// Parses `[[a,b],[c,d]]`-style integer nests.
fn parse_nested(s: &str) -> Result<Vec<ElementSpec>> {
    fn value(chars: &[char], pos: &mut usize) -> Result<ElementSpec> {
        if chars.get(*pos) == Some(&'[') {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                items.push(value(chars, pos)?);
                match chars.get(*pos) {
                    Some(',') => *pos += 1,
                    Some(']') => {
                        *pos += 1;
                        return Ok(ElementSpec::Tuple(items));
                    }
                    _ => return arg("malformed matrix"),
                }
            }
        }
        let start = *pos;
        if chars.get(*pos) == Some(&'-') {
            *pos += 1;
        }
        while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
            *pos += 1;
        }
        let text: String = chars[start..*pos].iter().collect();
        text.parse()
            .map(ElementSpec::Index)
            .map_err(|_| Error::Argument(format!("bad matrix entry {text:?}")))
    }
    let chars: Vec<char> = s.chars().collect();
    let mut pos = 0;
    match value(&chars, &mut pos)? {
        ElementSpec::Tuple(items) if pos == chars.len() => Ok(items),
        _ => arg(format!("malformed matrix {s:?}")),
    }
}
