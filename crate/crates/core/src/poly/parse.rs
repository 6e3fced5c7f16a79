//! Parser for the usual human notation, e.g. `(x+5)^56(x-13)^4(x^2-29x+202)`
//! or `2932848x^3-374976x^2+9513x-53`.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{FactoredPoly, IntPoly};
use crate::error::{Error, Result};

#[derive(Debug)]
enum Node {
    Num(BigInt),
    X,
    Sum(Vec<(bool, Node)>),
    Product(Vec<Node>),
    Pow(Box<Node>, u32),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '−' | '–' => '-',
                '·' | '⋅' => '*',
                other => other,
            })
            .collect();
        Parser { chars, pos: 0, src }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{} at position {} in {:?}", what, self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Node> {
        let mut terms = Vec::new();
        let mut neg = false;
        match self.peek() {
            Some('-') => {
                neg = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        terms.push((neg, self.term()?));
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                terms.push((c == '-', self.term()?));
            } else {
                break;
            }
        }
        if terms.len() == 1 && !terms[0].0 {
            Ok(terms.pop().unwrap().1)
        } else {
            Ok(Node::Sum(terms))
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                Some(c) if c == '(' || c == 'x' || c.is_ascii_digit() => {
                    factors.push(self.factor()?);
                }
                _ => break,
            }
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            Ok(Node::Product(factors))
        }
    }

    fn factor(&mut self) -> Result<Node> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let k = digits.parse::<u32>().map_err(|_| self.err("bad exponent"))?;
            return Ok(Node::Pow(Box::new(atom), k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Node::X)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                Ok(Node::Num(digits.parse().map_err(|_| self.err("bad integer"))?))
            }
            _ => Err(self.err("unexpected input")),
        }
    }

    fn finish(mut self) -> Result<Node> {
        let node = self.expr()?;
        if self.pos != self.chars.len() {
            return Err(self.err("trailing input"));
        }
        self.pos = 0;
        Ok(node)
    }
}

fn eval(node: &Node) -> IntPoly {
    match node {
        Node::Num(n) => IntPoly::constant(n.clone()),
        Node::X => IntPoly::x(),
        Node::Sum(terms) => terms.iter().fold(IntPoly::zero(), |acc, (neg, t)| {
            let v = eval(t);
            if *neg {
                &acc - &v
            } else {
                &acc + &v
            }
        }),
        Node::Product(fs) => fs.iter().fold(IntPoly::one(), |acc, f| &acc * &eval(f)),
        Node::Pow(b, k) => eval(b).pow(*k),
    }
}

impl FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(eval(&Parser::new(s).finish()?))
    }
}

impl FromStr for FactoredPoly {
    type Err = Error;

    /// Each top-level factor becomes one entry; a plain expression becomes a
    /// single factor.
    fn from_str(s: &str) -> Result<Self> {
        let node = Parser::new(s).finish()?;
        let parts: Vec<&Node> = match &node {
            Node::Product(fs) => fs.iter().collect(),
            other => vec![other],
        };
        let mut factors = Vec::new();
        for part in parts {
            let (base, k) = match part {
                Node::Pow(b, k) => (eval(b), *k as usize),
                other => (eval(other), 1),
            };
            factors.push((base, k));
        }
        FactoredPoly::new(factors)
    }
}
