//! Canonical element values.
//!
//! Every object handled by the workbench (base sets, functor images, products,
//! kernel classes) is built out of [`Elem`] values. The derived ordering is a
//! strict total order: variants compare in declaration order, atoms by label,
//! and compound values by structural recursion. Set-kind collections store a
//! [`FinSet`], so they are always sorted and duplicate free.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finset::FinSet;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Atom(Arc<str>),
    Pair(Arc<(Elem, Elem)>),
    Node(Arc<str>, Arc<[Elem]>),
    Set(FinSet),
    List(Arc<[Elem]>),
}

impl Elem {
    pub fn atom(label: impl AsRef<str>) -> Self {
        Elem::Atom(Arc::from(label.as_ref()))
    }

    pub fn pair(left: Elem, right: Elem) -> Self {
        Elem::Pair(Arc::new((left, right)))
    }

    pub fn node(tag: impl AsRef<str>, children: impl IntoIterator<Item = Elem>) -> Self {
        Elem::Node(Arc::from(tag.as_ref()), children.into_iter().collect())
    }

    pub fn set(items: impl IntoIterator<Item = Elem>) -> Self {
        Elem::Set(FinSet::new(items))
    }

    pub fn list(items: impl IntoIterator<Item = Elem>) -> Self {
        Elem::List(items.into_iter().collect())
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    pub fn as_node(&self) -> Option<(&str, &[Elem])> {
        match self {
            Elem::Node(tag, children) => Some((tag, children)),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&FinSet> {
        match self {
            Elem::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Elem]> {
        match self {
            Elem::List(items) => Some(items),
            _ => None,
        }
    }

    /// Number of constructors in the value; atoms count as one.
    pub fn size(&self) -> usize {
        match self {
            Elem::Atom(_) => 1,
            Elem::Pair(p) => 1 + p.0.size() + p.1.size(),
            Elem::Node(_, cs) | Elem::List(cs) => 1 + cs.iter().map(Elem::size).sum::<usize>(),
            Elem::Set(s) => 1 + s.iter().map(Elem::size).sum::<usize>(),
        }
    }
}

fn write_seq<'a>(
    f: &mut fmt::Formatter<'_>,
    open: &str,
    items: impl Iterator<Item = &'a Elem>,
    close: &str,
) -> fmt::Result {
    f.write_str(open)?;
    for (i, item) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str(close)
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(label) => f.write_str(label),
            Elem::Pair(p) => write!(f, "({},{})", p.0, p.1),
            Elem::Node(tag, children) => {
                f.write_str(tag)?;
                write_seq(f, "(", children.iter(), ")")
            }
            Elem::Set(s) => write_seq(f, "{", s.iter(), "}"),
            Elem::List(items) => write_seq(f, "[", items.iter(), "]"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

const DELIMS: &[char] = &['(', ')', '{', '}', '[', ']', ','];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            _ => Err(self.err(&format!("expected '{want}'"))),
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || DELIMS.contains(&c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn items(&mut self, close: char) -> Result<Vec<Elem>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            self.pos += close.len_utf8();
            return Ok(out);
        }
        loop {
            out.push(self.elem()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += c.len_utf8();
                    return Ok(out);
                }
                _ => return Err(self.err(&format!("expected ',' or '{close}'"))),
            }
        }
    }

    fn elem(&mut self) -> Result<Elem> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let left = self.elem()?;
                self.expect(',')?;
                let right = self.elem()?;
                self.expect(')')?;
                Ok(Elem::pair(left, right))
            }
            Some('{') => {
                self.pos += 1;
                Ok(Elem::set(self.items('}')?))
            }
            Some('[') => {
                self.pos += 1;
                Ok(Elem::list(self.items(']')?))
            }
            Some(c) if DELIMS.contains(&c) => Err(self.err(&format!("unexpected '{c}'"))),
            Some(_) => {
                let label = self.ident();
                if self.peek() == Some('(') {
                    self.pos += 1;
                    let children = self.items(')')?;
                    Ok(Elem::node(label, children))
                } else {
                    Ok(Elem::atom(label))
                }
            }
        }
    }
}

impl FromStr for Elem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.elem()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

impl Serialize for Elem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Elem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Elem {
        s.parse().unwrap()
    }

    #[test]
    fn parses_every_literal_form() {
        assert_eq!(e("a"), Elem::atom("a"));
        assert_eq!(e("(a, b)"), Elem::pair(Elem::atom("a"), Elem::atom("b")));
        assert_eq!(e("{b,a,b}"), Elem::set([Elem::atom("a"), Elem::atom("b")]));
        assert_eq!(e("[b,a,b]").as_list().unwrap().len(), 3);
        assert_eq!(e("some(a)"), Elem::node("some", [Elem::atom("a")]));
        assert_eq!(e("none()"), Elem::node("none", []));
        assert_eq!(e("{}"), Elem::set([]));
        assert_eq!(e("[]"), Elem::list([]));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(e("{ (b,a) , (a,b) }").to_string(), "{(a,b),(b,a)}");
        assert_eq!(e("tag( [x], {y} )").to_string(), "tag([x],{y})");
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "(a)", "(a,b,c)", "{a,", "a b", "[a}", ")", "f(a"] {
            assert!(bad.parse::<Elem>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn order_is_atoms_then_structure() {
        assert!(e("a") < e("b"));
        assert!(e("z") < e("(a,a)"));
        assert!(e("(a,b)") < e("(b,a)"));
        assert!(e("(a,b)") < e("bot()"));
        assert!(e("{a}") < e("{a,b}"));
    }
}
