//! Text syntax for boolean combinations of pp-formulas over the rationals:
//!
//! ```text
//! ambient 2;
//! pp(E y : x1 - 2*y = 0 & x2 = 1/3) & !pp(x1 = x2)
//! ```
//!
//! `!` binds tighter than `&`, which binds tighter than `|`. Ambient
//! variables are `x1 .. xn`; names after `E` are existentially bound.

mod syntax;

use std::fmt;

use num_traits::Zero;

pub use syntax::parse;

use crate::definable::{boolean_normalize, CalcError, DefinableSet, PpSystem, SetExpr};
use crate::rational::{fmt_rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FormulaError {
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: `{name}` is outside the ambient dimension {ambient}")]
    OutOfRange { pos: Pos, name: String, ambient: usize },
    #[error("{pos}: product of two variables is not linear")]
    Nonlinear { pos: Pos },
    #[error(transparent)]
    Calc(#[from] CalcError),
}

/// `sum coeffs[i] * v_i = constant`, ambient variables first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinEq {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

#[derive(Clone, Debug)]
pub struct PpAtom {
    pub bound: Vec<String>,
    pub equations: Vec<LinEq>,
    pub pos: Pos,
}

impl PartialEq for PpAtom {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.equations == other.equations
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Pp(PpAtom),
    And(Vec<Node>),
    Or(Vec<Node>),
    Not(Box<Node>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Formula {
    pub ambient: usize,
    pub body: Node,
}

impl Node {
    fn to_set_expr(&self, ambient: usize) -> Result<SetExpr, CalcError> {
        Ok(match self {
            Node::Pp(a) => {
                let rows = a
                    .equations
                    .iter()
                    .map(|e| e.coeffs.iter().cloned().chain([e.constant.clone()]).collect())
                    .collect();
                SetExpr::Atom(PpSystem::new(ambient, a.bound.len(), rows)?)
            }
            Node::And(parts) => fold(parts, ambient, SetExpr::and)?,
            Node::Or(parts) => fold(parts, ambient, SetExpr::or)?,
            Node::Not(inner) => SetExpr::not(inner.to_set_expr(ambient)?),
        })
    }
}

fn fold(parts: &[Node], ambient: usize, op: fn(SetExpr, SetExpr) -> SetExpr) -> Result<SetExpr, CalcError> {
    let mut it = parts.iter();
    let mut acc = it.next().ok_or_else(|| CalcError::Shape("empty connective".into()))?.to_set_expr(ambient)?;
    for p in it {
        acc = op(acc, p.to_set_expr(ambient)?);
    }
    Ok(acc)
}

impl Formula {
    /// The set expression, with quantifiers still inside the leaves.
    pub fn to_set_expr(&self) -> Result<SetExpr, CalcError> {
        self.body.to_set_expr(self.ambient)
    }

    /// Projects away the quantifiers and normalizes into disjoint blocks.
    pub fn elaborate(&self) -> Result<DefinableSet, FormulaError> {
        Ok(boolean_normalize(&self.to_set_expr()?)?)
    }
}

fn var_name(ambient: usize, bound: &[String], i: usize) -> String {
    if i < ambient {
        format!("x{}", i + 1)
    } else {
        bound[i - ambient].clone()
    }
}

fn write_equation(ambient: usize, bound: &[String], e: &LinEq) -> String {
    let mut s = String::new();
    for (i, c) in e.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        syntax::fmt_coeff_term(s.is_empty(), c, &var_name(ambient, bound, i), &mut s);
    }
    if s.is_empty() {
        s.push('0');
    }
    format!("{s} = {}", fmt_rat(&e.constant))
}

fn write_node(ambient: usize, node: &Node, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match node {
        Node::Pp(a) => {
            write!(f, "pp(")?;
            if !a.bound.is_empty() {
                write!(f, "E {} : ", a.bound.join(" "))?;
            }
            let eqs: Vec<String> = a.equations.iter().map(|e| write_equation(ambient, &a.bound, e)).collect();
            write!(f, "{})", eqs.join(" & "))
        }
        Node::Not(inner) => {
            write!(f, "!")?;
            write_node(ambient, inner, 2, f)
        }
        Node::And(parts) | Node::Or(parts) => {
            let (own, sep) = if matches!(node, Node::And(_)) { (1, " & ") } else { (0, " | ") };
            let wrap = prec > own;
            if wrap {
                write!(f, "(")?;
            }
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write_node(ambient, p, own + 1, f)?;
            }
            if wrap {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ambient {}; ", self.ambient)?;
        write_node(self.ambient, &self.body, 0, f)
    }
}
