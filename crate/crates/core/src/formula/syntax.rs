use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Formula, FormulaError, LinEq, Node, Pos, PpAtom};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(char),
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(n) => format!("`{n}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, FormulaError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Num(s.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|&c| c.is_alphanumeric() || c == '_') {
                s.push(bump(&mut chars));
            }
            out.push((Tok::Ident(s), pos));
        } else if ";()&|!:=+-*/".contains(c) {
            out.push((Tok::Sym(bump(&mut chars)), pos));
        } else {
            return Err(FormulaError::Syntax { pos, message: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

/// A linear form over the visible variables plus a constant.
#[derive(Clone)]
struct Lin {
    coeffs: Vec<Rat>,
    constant: Rat,
}

impl Lin {
    fn constant(width: usize, c: Rat) -> Lin {
        Lin { coeffs: vec![Rat::zero(); width], constant: c }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn scale(mut self, k: &Rat) -> Lin {
        self.coeffs.iter_mut().for_each(|c| *c *= k);
        self.constant *= k;
        self
    }

    fn add(mut self, other: &Lin, sign: i64) -> Lin {
        let s = Rat::from_integer(sign.into());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * &s;
        }
        self.constant += &other.constant * &s;
        self
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    ambient: usize,
    bound: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, FormulaError> {
        Err(FormulaError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn expect_sym(&mut self, c: char) -> Result<(), FormulaError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", describe(self.peek())))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn width(&self) -> usize {
        self.ambient + self.bound.len()
    }

    fn expr(&mut self) -> Result<Node, FormulaError> {
        let mut parts = vec![self.conj()?];
        while self.eat_sym('|') {
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Node::Or(parts) })
    }

    fn conj(&mut self) -> Result<Node, FormulaError> {
        let mut parts = vec![self.unary()?];
        while self.eat_sym('&') {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Node::And(parts) })
    }

    fn unary(&mut self) -> Result<Node, FormulaError> {
        if self.eat_sym('!') {
            return Ok(Node::Not(Box::new(self.unary()?)));
        }
        if self.eat_sym('(') {
            let e = self.expr()?;
            self.expect_sym(')')?;
            return Ok(e);
        }
        match self.peek().clone() {
            Tok::Ident(s) if s == "pp" => {
                let pos = self.pos();
                self.next();
                self.expect_sym('(')?;
                let atom = self.pp_body(pos)?;
                self.expect_sym(')')?;
                Ok(Node::Pp(atom))
            }
            t => self.error(format!("expected `pp(`, `!` or `(`, found {}", describe(&t))),
        }
    }

    fn pp_body(&mut self, pos: Pos) -> Result<PpAtom, FormulaError> {
        let mut bound = Vec::new();
        if *self.peek() == Tok::Ident("E".into()) {
            self.next();
            while let Tok::Ident(name) = self.peek().clone() {
                if ambient_index(&name).is_some() || name == "E" || name == "pp" {
                    return self.error(format!("`{name}` cannot name a bound variable"));
                }
                if bound.contains(&name) {
                    return self.error(format!("`{name}` is bound twice"));
                }
                bound.push(name);
                self.next();
            }
            if bound.is_empty() {
                return self.error("expected a bound variable after `E`");
            }
            self.expect_sym(':')?;
        }
        self.bound = bound;
        let equations = self.equations();
        let bound = std::mem::take(&mut self.bound);
        let equations = equations?;
        Ok(PpAtom { bound, equations, pos })
    }

    fn equations(&mut self) -> Result<Vec<LinEq>, FormulaError> {
        let mut equations = vec![self.equation()?];
        while self.eat_sym('&') {
            equations.push(self.equation()?);
        }
        Ok(equations)
    }

    fn equation(&mut self) -> Result<LinEq, FormulaError> {
        let lhs = self.lin()?;
        self.expect_sym('=')?;
        let rhs = self.lin()?;
        let d = lhs.add(&rhs, -1);
        Ok(LinEq { coeffs: d.coeffs, constant: -d.constant })
    }

    fn lin(&mut self) -> Result<Lin, FormulaError> {
        let mut acc = if self.eat_sym('-') {
            self.term()?.scale(&-Rat::one())
        } else {
            self.eat_sym('+');
            self.term()?
        };
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.term()?, 1);
            } else if self.eat_sym('-') {
                acc = acc.add(&self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Lin, FormulaError> {
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            if self.eat_sym('*') {
                let f = self.factor()?;
                acc = match (acc.is_constant(), f.is_constant()) {
                    (true, _) => f.scale(&acc.constant),
                    (false, true) => acc.scale(&f.constant),
                    (false, false) => return Err(FormulaError::Nonlinear { pos }),
                };
            } else if self.eat_sym('/') {
                let f = self.factor()?;
                if !f.is_constant() {
                    return Err(FormulaError::Nonlinear { pos });
                }
                if f.constant.is_zero() {
                    return Err(FormulaError::Syntax { pos, message: "division by zero".into() });
                }
                acc = acc.scale(&f.constant.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Lin, FormulaError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Num(n) => Ok(Lin::constant(self.width(), Rat::from_integer(n))),
            Tok::Sym('-') => Ok(self.factor()?.scale(&-Rat::one())),
            Tok::Sym('(') => {
                let inner = self.lin()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let slot = match ambient_index(&name) {
                    Some(i) if (1..=self.ambient).contains(&i) => i - 1,
                    Some(_) => {
                        return Err(FormulaError::OutOfRange { pos, name, ambient: self.ambient });
                    }
                    None => match self.bound.iter().position(|b| *b == name) {
                        Some(j) => self.ambient + j,
                        None => {
                            return Err(FormulaError::Syntax { pos, message: format!("unknown variable `{name}`") })
                        }
                    },
                };
                let mut l = Lin::constant(self.width(), Rat::zero());
                l.coeffs[slot] = Rat::one();
                Ok(l)
            }
            t => Err(FormulaError::Syntax { pos, message: format!("expected a term, found {}", describe(&t)) }),
        }
    }
}

fn ambient_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parses `ambient <n>; <expr>`.
pub fn parse(text: &str) -> Result<Formula, FormulaError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, ambient: 0, bound: Vec::new() };
    match p.next() {
        (Tok::Ident(s), _) if s == "ambient" => {}
        (t, pos) => {
            return Err(FormulaError::Syntax { pos, message: format!("expected `ambient`, found {}", describe(&t)) })
        }
    }
    let ambient = match p.next() {
        (Tok::Num(n), pos) => usize::try_from(n)
            .map_err(|_| FormulaError::Syntax { pos, message: "ambient dimension too large".into() })?,
        (t, pos) => {
            return Err(FormulaError::Syntax { pos, message: format!("expected a dimension, found {}", describe(&t)) })
        }
    };
    p.ambient = ambient;
    p.expect_sym(';')?;
    let body = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(Formula { ambient, body })
}

pub(super) fn fmt_coeff_term(first: bool, c: &Rat, var: &str, out: &mut String) {
    let neg = c.is_negative();
    let a = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if a.is_one() {
        out.push_str(var);
    } else {
        out.push_str(&crate::rational::fmt_rat(&a));
        out.push('*');
        out.push_str(var);
    }
}
