//! Formula language.
//!
//! ```text
//! formula := expr            (top-level factors prod(...)[^k] become products)
//! expr    := term { ("+" | "-") term }
//! term    := unary { ("*" | "/") unary }
//! unary   := "-" unary | power
//! power   := atom [ "^" INT ]
//! atom    := INT | "z" | "p" INT | "energy" | name "(" args ")" | "(" expr ")"
//! ```
//!
//! Builtins: `e(r)`, `h(r)`, `p(r)`, `mixed(a, b)`, `energy`, `prod(q)` where
//! `q` is a polynomial in `t` and `z` with constant term 1. Division is only by
//! rational constants. `#` starts a comment that runs to the end of the line.

use crate::catalan::{extract_coefficient_family, geometric_q};
use crate::error::{Error, Result};
use crate::exactcore::{Rational, Ring, UniPoly};
use crate::invariants::QPoly;
use crate::rigidity::{build_admissible, AdmissibleFormula, ProductDatum};
use crate::symfunc::{
    e_to_powersum, energy_powersum, mixed_powersum, CoeffPoly, GenMonomial, PowerSumExpr,
};

pub const DEFAULT_MAX_DEGREE: usize = 32;
const MAX_EXPONENT: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: li + 1, column: i + 1 };
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| syntax(pos, format!("integer literal {s} is too large")))?;
                out.push((Tok::Int(v), pos));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            } else if "+-*/^(),".contains(c) {
                out.push((Tok::Sym(c), pos));
                i += 1;
            } else {
                return Err(syntax(pos, format!("unexpected character {c:?}")));
            }
        }
    }
    let end = text.lines().enumerate().last().map_or(Pos { line: 1, column: 1 }, |(i, l)| Pos {
        line: i + 1,
        column: l.chars().count() + 1,
    });
    out.push((Tok::End, end));
    Ok(out)
}

fn syntax(pos: Pos, message: String) -> Error {
    Error::Syntax { line: pos.line, column: pos.column, message }
}

fn semantic(pos: Pos, message: impl std::fmt::Display) -> Error {
    Error::Semantic(format!("line {}, column {}: {message}", pos.line, pos.column))
}

#[derive(Clone, Debug)]
enum Node {
    Int(u64),
    Ident(String),
    Call(String, Vec<(Node, Pos)>),
    Add(Box<(Node, Pos)>, Box<(Node, Pos)>),
    Sub(Box<(Node, Pos)>, Box<(Node, Pos)>),
    Mul(Box<(Node, Pos)>, Box<(Node, Pos)>),
    Div(Box<(Node, Pos)>, Box<(Node, Pos)>),
    Neg(Box<(Node, Pos)>),
    Pow(Box<(Node, Pos)>, u32),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            (Tok::Sym(s), _) if s == c => Ok(()),
            (t, pos) => Err(syntax(pos, format!("expected '{c}', found {}", describe(&t)))),
        }
    }

    fn expr(&mut self) -> Result<(Node, Pos)> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                (Tok::Sym('+'), pos) => {
                    let pos = *pos;
                    self.bump();
                    let rhs = self.term()?;
                    lhs = (Node::Add(Box::new(lhs), Box::new(rhs)), pos);
                }
                (Tok::Sym('-'), pos) => {
                    let pos = *pos;
                    self.bump();
                    let rhs = self.term()?;
                    lhs = (Node::Sub(Box::new(lhs), Box::new(rhs)), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<(Node, Pos)> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                (Tok::Sym('*'), pos) => {
                    let pos = *pos;
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = (Node::Mul(Box::new(lhs), Box::new(rhs)), pos);
                }
                (Tok::Sym('/'), pos) => {
                    let pos = *pos;
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = (Node::Div(Box::new(lhs), Box::new(rhs)), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<(Node, Pos)> {
        if let (Tok::Sym('-'), pos) = self.peek() {
            let pos = *pos;
            self.bump();
            let inner = self.unary()?;
            return Ok((Node::Neg(Box::new(inner)), pos));
        }
        self.power()
    }

    fn power(&mut self) -> Result<(Node, Pos)> {
        let base = self.atom()?;
        if let (Tok::Sym('^'), _) = self.peek() {
            self.bump();
            return match self.bump() {
                (Tok::Int(k), pos) => {
                    if k > MAX_EXPONENT {
                        return Err(syntax(pos, format!("exponent {k} exceeds {MAX_EXPONENT}")));
                    }
                    let k = k as u32;
                    let p = base.1;
                    Ok((Node::Pow(Box::new(base), k), p))
                }
                (t, pos) => Err(syntax(
                    pos,
                    format!("expected a nonnegative integer exponent, found {}", describe(&t)),
                )),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<(Node, Pos)> {
        match self.bump() {
            (Tok::Int(v), pos) => Ok((Node::Int(v), pos)),
            (Tok::Ident(name), pos) => {
                if let (Tok::Sym('('), _) = self.peek() {
                    self.bump();
                    let mut args = vec![self.expr()?];
                    while let (Tok::Sym(','), _) = self.peek() {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    Ok((Node::Call(name, args), pos))
                } else {
                    Ok((Node::Ident(name), pos))
                }
            }
            (Tok::Sym('('), _) => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            (t, pos) => Err(syntax(pos, format!("expected an expression, found {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("'{v}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

fn parse_tree(text: &str) -> Result<(Node, Pos)> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let node = p.expr()?;
    match p.peek() {
        (Tok::End, _) => Ok(node),
        (t, pos) => Err(syntax(*pos, format!("unexpected {} after expression", describe(t)))),
    }
}

/// Name resolution for one target ring.
trait Atoms {
    type V: Ring;
    fn ident(&self, name: &str, pos: Pos) -> Result<Self::V>;
    fn call(&self, name: &str, args: &[(Node, Pos)], pos: Pos) -> Result<Self::V>;
}

fn eval<A: Atoms>(atoms: &A, (node, pos): &(Node, Pos)) -> Result<A::V> {
    Ok(match node {
        Node::Int(v) => A::V::from_rational(&Rational::from(*v)),
        Node::Ident(name) => atoms.ident(name, *pos)?,
        Node::Call(name, args) => atoms.call(name, args, *pos)?,
        Node::Add(a, b) => eval(atoms, a)?.add_ref(&eval(atoms, b)?),
        Node::Sub(a, b) => eval(atoms, a)?.sub_ref(&eval(atoms, b)?),
        Node::Mul(a, b) => eval(atoms, a)?.mul_ref(&eval(atoms, b)?),
        Node::Div(a, b) => {
            let d = eval(&Constants, b)?;
            let inv = d.recip().ok_or_else(|| semantic(b.1, "division by zero"))?;
            eval(atoms, a)?.scale(&inv)
        }
        Node::Neg(a) => eval(atoms, a)?.neg_ref(),
        Node::Pow(a, k) => eval(atoms, a)?.pow_u(*k),
    })
}

struct Constants;

impl Atoms for Constants {
    type V = Rational;
    fn ident(&self, name: &str, pos: Pos) -> Result<Rational> {
        Err(semantic(pos, format!("division is only by rational constants, found '{name}'")))
    }
    fn call(&self, name: &str, _: &[(Node, Pos)], pos: Pos) -> Result<Rational> {
        Err(semantic(pos, format!("division is only by rational constants, found '{name}(...)'")))
    }
}

fn int_arg(args: &[(Node, Pos)], idx: usize, pos: Pos) -> Result<usize> {
    match args.get(idx) {
        Some((Node::Int(v), _)) => Ok(*v as usize),
        Some((_, p)) => Err(semantic(*p, "expected an integer literal argument")),
        None => Err(semantic(pos, "missing integer argument")),
    }
}

fn arity(name: &str, args: &[(Node, Pos)], n: usize, pos: Pos) -> Result<()> {
    if args.len() != n {
        return Err(semantic(pos, format!("{name}(...) takes {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

struct Symmetric {
    max_degree: usize,
}

impl Symmetric {
    fn check_degree(&self, r: usize, pos: Pos) -> Result<()> {
        if r > self.max_degree {
            return Err(semantic(
                pos,
                format!("degree {r} exceeds the maximum degree {}", self.max_degree),
            ));
        }
        Ok(())
    }

    fn generator(&self, r: usize, pos: Pos) -> Result<PowerSumExpr> {
        if r == 0 {
            return Err(semantic(pos, "power sums are indexed from 1"));
        }
        self.check_degree(r, pos)?;
        Ok(PowerSumExpr::generator(r))
    }
}

impl Atoms for Symmetric {
    type V = PowerSumExpr;

    fn ident(&self, name: &str, pos: Pos) -> Result<PowerSumExpr> {
        match name {
            "z" => Ok(PowerSumExpr::z()),
            "energy" => Ok(energy_powersum()),
            _ if name.len() > 1 && name.starts_with('p') && name[1..].bytes().all(|b| b.is_ascii_digit()) => {
                let r = name[1..].parse().map_err(|_| semantic(pos, "power-sum index too large"))?;
                self.generator(r, pos)
            }
            "t" => Err(semantic(pos, "'t' may only appear inside prod(...)")),
            _ => Err(semantic(pos, format!("unknown name '{name}'"))),
        }
    }

    fn call(&self, name: &str, args: &[(Node, Pos)], pos: Pos) -> Result<PowerSumExpr> {
        match name {
            "p" => {
                arity(name, args, 1, pos)?;
                self.generator(int_arg(args, 0, pos)?, pos)
            }
            "e" => {
                arity(name, args, 1, pos)?;
                let r = int_arg(args, 0, pos)?;
                self.check_degree(r, pos)?;
                Ok(e_to_powersum(r))
            }
            "h" => {
                arity(name, args, 1, pos)?;
                let r = int_arg(args, 0, pos)?;
                self.check_degree(r, pos)?;
                extract_coefficient_family(&geometric_q(r), r)
            }
            "mixed" => {
                arity(name, args, 2, pos)?;
                let (a, b) = (int_arg(args, 0, pos)?, int_arg(args, 1, pos)?);
                if a == 0 || b == 0 {
                    return Err(semantic(pos, "mixed(a, b) needs a, b >= 1"));
                }
                self.check_degree(a.saturating_add(b), pos)?;
                Ok(mixed_powersum(a, b))
            }
            "prod" => Err(semantic(pos, "prod(...) is only allowed as a top-level factor")),
            _ => Err(semantic(pos, format!("unknown function '{name}'"))),
        }
    }
}

/// Polynomials in `t` and `z`, carried as `PowerSumExpr` with `t` in the slot
/// of the first generator.
struct TzPoly;

impl Atoms for TzPoly {
    type V = PowerSumExpr;
    fn ident(&self, name: &str, pos: Pos) -> Result<PowerSumExpr> {
        match name {
            "t" => Ok(PowerSumExpr::generator(1)),
            "z" => Ok(PowerSumExpr::z()),
            _ => Err(semantic(pos, format!("only 't' and 'z' may appear in a product factor, found '{name}'"))),
        }
    }
    fn call(&self, name: &str, _: &[(Node, Pos)], pos: Pos) -> Result<PowerSumExpr> {
        Err(semantic(pos, format!("function '{name}' is not allowed in a product factor")))
    }
}

struct NPoly;

impl Atoms for NPoly {
    type V = UniPoly;
    fn ident(&self, name: &str, pos: Pos) -> Result<UniPoly> {
        match name {
            "n" => Ok(UniPoly::x('n')),
            _ => Err(semantic(pos, format!("only 'n' may appear here, found '{name}'"))),
        }
    }
    fn call(&self, name: &str, _: &[(Node, Pos)], pos: Pos) -> Result<UniPoly> {
        Err(semantic(pos, format!("function '{name}' is not allowed here")))
    }
}

fn qpoly_from_tree(tree: &(Node, Pos)) -> Result<QPoly> {
    let e = eval(&TzPoly, tree)?;
    let deg = e.terms().map(|(m, _)| m.exponent(1) as usize).max().unwrap_or(0);
    let coeffs: Vec<CoeffPoly> = (0..=deg)
        .map(|k| {
            let mono = GenMonomial::new(if k == 0 { vec![] } else { vec![k as u32] });
            e.coeff(&mono)
        })
        .collect();
    QPoly::new(coeffs).map_err(|err| semantic(tree.1, err))
}

#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    pub max_degree: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_degree: DEFAULT_MAX_DEGREE }
    }
}

fn split_products<'a>(node: &'a (Node, Pos), rest: &mut Vec<&'a (Node, Pos)>, prods: &mut Vec<(&'a (Node, Pos), u32)>) {
    match &node.0 {
        Node::Mul(a, b) => {
            split_products(a, rest, prods);
            split_products(b, rest, prods);
        }
        Node::Call(name, _) if name == "prod" => prods.push((node, 1)),
        Node::Pow(inner, k) if matches!(&inner.0, Node::Call(name, _) if name == "prod") => {
            prods.push((inner, *k))
        }
        _ => rest.push(node),
    }
}

pub fn parse_formula_with(text: &str, opts: ParseOptions) -> Result<AdmissibleFormula> {
    let tree = parse_tree(text)?;
    let mut rest = Vec::new();
    let mut prods = Vec::new();
    split_products(&tree, &mut rest, &mut prods);
    let sym = Symmetric { max_degree: opts.max_degree };
    let mut psi = PowerSumExpr::one();
    for node in rest {
        psi = psi.mul_ref(&eval(&sym, node)?);
    }
    let mut factors = Vec::new();
    for ((node, pos), k) in prods {
        let Node::Call(_, args) = node else { unreachable!() };
        arity("prod", args, 1, *pos)?;
        factors.push((qpoly_from_tree(&args[0])?, k));
    }
    Ok(build_admissible(psi, ProductDatum { factors }))
}

pub fn parse_formula(text: &str) -> Result<AdmissibleFormula> {
    parse_formula_with(text, ParseOptions::default())
}

/// A polynomial in `t` (and `z`) with constant term 1.
pub fn parse_qpoly(text: &str) -> Result<QPoly> {
    qpoly_from_tree(&parse_tree(text)?)
}

/// A polynomial in `n` with rational coefficients.
pub fn parse_n_poly(text: &str) -> Result<UniPoly> {
    Ok(eval(&NPoly, &parse_tree(text)?)?.with_var('n'))
}
