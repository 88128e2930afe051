//! Concrete syntax shared by rational, lasso and ω-expressions.
//!
//! ```text
//! sum     ::= cat ('+' cat)*
//! cat     ::= postfix ('.'? postfix)*
//! postfix ::= atom ('*' | '@' | '$')*
//! atom    ::= '0' | '1' | 'a'..'z' | '(' sum ')'
//! ```
//!
//! `+` and concatenation associate to the right. Whitespace is ignored.
//! The parser produces an untyped tree; each expression module checks sorts.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

pub(crate) const MAX_DEPTH: usize = 512;

#[derive(Debug, Clone)]
pub(crate) enum Node {
    Zero,
    One,
    Letter(char),
    Concat(Box<Syn>, Box<Syn>),
    Sum(Box<Syn>, Box<Syn>),
    Star(Box<Syn>),
    Circle(Box<Syn>),
    Omega(Box<Syn>),
}

#[derive(Debug, Clone)]
pub(crate) struct Syn {
    pub pos: usize,
    depth: usize,
    pub node: Node,
}

impl Syn {
    fn leaf(pos: usize, node: Node) -> Syn {
        Syn { pos, depth: 1, node }
    }

    fn wrap(pos: usize, inner: Syn, make: fn(Box<Syn>) -> Node) -> Result<Syn> {
        let depth = inner.depth + 1;
        check_depth(pos, depth)?;
        Ok(Syn { pos, depth, node: make(Box::new(inner)) })
    }

    fn pair(l: Syn, r: Syn, make: fn(Box<Syn>, Box<Syn>) -> Node) -> Result<Syn> {
        let depth = l.depth.max(r.depth) + 1;
        let pos = l.pos;
        check_depth(pos, depth)?;
        Ok(Syn { pos, depth, node: make(Box::new(l), Box::new(r)) })
    }
}

fn check_depth(pos: usize, depth: usize) -> Result<()> {
    if depth > MAX_DEPTH {
        return Err(Error::Syntax { pos, msg: "expression nested too deeply".into() });
    }
    Ok(())
}

struct Parser<'a> {
    toks: Vec<(usize, char)>,
    at: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

pub(crate) fn parse(text: &str, alphabet: &Alphabet) -> Result<Syn> {
    let toks: Vec<(usize, char)> =
        text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { toks, at: 0, end: text.chars().count(), alphabet };
    let e = p.sum(0)?;
    match p.peek() {
        None => Ok(e),
        Some((pos, c)) => Err(Error::Syntax { pos, msg: format!("unexpected '{c}'") }),
    }
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.toks.get(self.at).copied()
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| p)
    }

    fn sum(&mut self, parens: usize) -> Result<Syn> {
        let mut terms = vec![self.cat(parens)?];
        while let Some((_, '+')) = self.peek() {
            self.at += 1;
            terms.push(self.cat(parens)?);
        }
        fold_right(terms, Node::Sum)
    }

    fn cat(&mut self, parens: usize) -> Result<Syn> {
        let mut factors = vec![self.postfix(parens)?];
        loop {
            match self.peek() {
                Some((_, '.')) => {
                    self.at += 1;
                    factors.push(self.postfix(parens)?);
                }
                Some((_, c)) if starts_atom(c) => factors.push(self.postfix(parens)?),
                _ => break,
            }
        }
        fold_right(factors, Node::Concat)
    }

    fn postfix(&mut self, parens: usize) -> Result<Syn> {
        let mut e = self.atom(parens)?;
        while let Some((pos, c)) = self.peek() {
            let make: fn(Box<Syn>) -> Node = match c {
                '*' => Node::Star,
                '@' => Node::Circle,
                '$' => Node::Omega,
                _ => break,
            };
            self.at += 1;
            e = Syn::wrap(pos, e, make)?;
        }
        Ok(e)
    }

    fn atom(&mut self, parens: usize) -> Result<Syn> {
        let Some((pos, c)) = self.peek() else {
            return Err(Error::Syntax { pos: self.end, msg: "unexpected end of input".into() });
        };
        self.at += 1;
        match c {
            '0' => Ok(Syn::leaf(pos, Node::Zero)),
            '1' => Ok(Syn::leaf(pos, Node::One)),
            'a'..='z' => {
                if !self.alphabet.contains(c) {
                    return Err(Error::UnknownLetter { pos, letter: c });
                }
                Ok(Syn::leaf(pos, Node::Letter(c)))
            }
            '(' => {
                check_depth(pos, parens + 1)?;
                let mut inner = self.sum(parens + 1)?;
                match self.peek() {
                    Some((_, ')')) => self.at += 1,
                    _ => {
                        return Err(Error::Syntax { pos: self.pos(), msg: "expected ')'".into() })
                    }
                }
                inner.pos = pos;
                Ok(inner)
            }
            _ => Err(Error::Syntax { pos, msg: format!("unexpected '{c}'") }),
        }
    }
}

fn starts_atom(c: char) -> bool {
    matches!(c, '0' | '1' | '(' | 'a'..='z')
}

fn fold_right(items: Vec<Syn>, make: fn(Box<Syn>, Box<Syn>) -> Node) -> Result<Syn> {
    let mut it = items.into_iter().rev();
    let mut acc = it.next().expect("at least one item");
    for l in it {
        acc = Syn::pair(l, acc, make)?;
    }
    Ok(acc)
}
