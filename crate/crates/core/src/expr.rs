//! Boolean expressions over a declared variable set and its next-step copies.
//!
//! Grammar (lowest to highest precedence):
//!
//! ```text
//! iff     := implies ( "<->" implies )*        left-associative
//! implies := or ( "->" implies )?              right-associative
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | atom
//! atom    := "true" | "false" | ident | "next" "(" ident ")" | "(" iff ")"
//! ```
//!
//! `next` applies to a single variable only; `next(next(x))` is rejected.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexer::{tokenize, Tok, Token};

/// Default bound on the number of declared variables.
pub const DEFAULT_VAR_CAP: usize = 16;

/// Symbols are stored as `u32` bitmasks, so no table may be wider than this.
pub const MAX_VARS: usize = 32;

const RESERVED: &[&str] = &[
    "true", "false", "next", "var", "env", "sys", "init", "inv", "fair", "G", "GF",
];

/// Ordered set of Boolean variables. Position `i` is bit `i` of every [`Symbol`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = VarTable::default();
        for name in names {
            table.push(name.into())?;
        }
        Ok(table)
    }

    pub fn push(&mut self, name: String) -> Result<usize> {
        if !is_identifier(&name) {
            return Err(Error::InvalidVariable(format!(
                "`{name}` is not an identifier"
            )));
        }
        if RESERVED.contains(&name.as_str()) {
            return Err(Error::InvalidVariable(format!(
                "`{name}` is a reserved word"
            )));
        }
        if self.index.contains_key(&name) {
            return Err(Error::InvalidVariable(format!("`{name}` declared twice")));
        }
        if self.names.len() == MAX_VARS {
            return Err(Error::CapExceeded {
                vars: MAX_VARS + 1,
                cap: MAX_VARS,
            });
        }
        let pos = self.names.len();
        self.index.insert(name.clone(), pos);
        self.names.push(name);
        Ok(pos)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Alphabet size `r = 2^|V|`.
    pub fn alphabet_size(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.alphabet_size() as u64).map(|bits| Symbol(bits as u32))
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.len() > cap {
            Err(Error::CapExceeded {
                vars: self.len(),
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// Renders a symbol as the set of variables it makes true, e.g. `{a,c}`.
    pub fn format_symbol(&self, sym: Symbol) -> String {
        let set: Vec<&str> = self
            .names
            .iter()
            .enumerate()
            .filter(|(i, _)| sym.get(*i))
            .map(|(_, n)| n.as_str())
            .collect();
        format!("{{{}}}", set.join(","))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One valuation of the variable set: bit `i` holds the value of variable `i`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn get(self, var: usize) -> bool {
        self.0 >> var & 1 == 1
    }

    pub fn with(self, var: usize, value: bool) -> Symbol {
        if value {
            Symbol(self.0 | 1 << var)
        } else {
            Symbol(self.0 & !(1 << var))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Const(bool),
    Var(usize),
    NextVar(usize),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Implies(Box<BoolExpr>, Box<BoolExpr>),
    Iff(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn uses_next(&self) -> bool {
        match self {
            BoolExpr::Const(_) | BoolExpr::Var(_) => false,
            BoolExpr::NextVar(_) => true,
            BoolExpr::Not(e) => e.uses_next(),
            BoolExpr::And(l, r)
            | BoolExpr::Or(l, r)
            | BoolExpr::Implies(l, r)
            | BoolExpr::Iff(l, r) => l.uses_next() || r.uses_next(),
        }
    }

    /// Largest variable index referenced, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            BoolExpr::Const(_) => None,
            BoolExpr::Var(v) | BoolExpr::NextVar(v) => Some(*v),
            BoolExpr::Not(e) => e.max_var(),
            BoolExpr::And(l, r)
            | BoolExpr::Or(l, r)
            | BoolExpr::Implies(l, r)
            | BoolExpr::Iff(l, r) => l.max_var().max(r.max_var()),
        }
    }

    pub fn negate(self) -> BoolExpr {
        BoolExpr::Not(Box::new(self))
    }

    pub fn and(self, other: BoolExpr) -> BoolExpr {
        BoolExpr::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: BoolExpr) -> BoolExpr {
        BoolExpr::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: BoolExpr) -> BoolExpr {
        BoolExpr::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: BoolExpr) -> BoolExpr {
        BoolExpr::Iff(Box::new(self), Box::new(other))
    }

    /// Conjunction of all expressions; `true` for an empty list.
    pub fn conjoin_all<I: IntoIterator<Item = BoolExpr>>(exprs: I) -> BoolExpr {
        exprs
            .into_iter()
            .reduce(BoolExpr::and)
            .unwrap_or(BoolExpr::Const(true))
    }

    /// Disjunction of all expressions; `false` for an empty list.
    pub fn disjoin_all<I: IntoIterator<Item = BoolExpr>>(exprs: I) -> BoolExpr {
        exprs
            .into_iter()
            .reduce(BoolExpr::or)
            .unwrap_or(BoolExpr::Const(false))
    }

    /// Truth value with `Var` read from `cur` and `NextVar` from `nxt`.
    pub fn eval_pair(&self, cur: Symbol, nxt: Symbol) -> bool {
        match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Var(v) => cur.get(*v),
            BoolExpr::NextVar(v) => nxt.get(*v),
            BoolExpr::Not(e) => !e.eval_pair(cur, nxt),
            BoolExpr::And(l, r) => l.eval_pair(cur, nxt) && r.eval_pair(cur, nxt),
            BoolExpr::Or(l, r) => l.eval_pair(cur, nxt) || r.eval_pair(cur, nxt),
            BoolExpr::Implies(l, r) => !l.eval_pair(cur, nxt) || r.eval_pair(cur, nxt),
            BoolExpr::Iff(l, r) => l.eval_pair(cur, nxt) == r.eval_pair(cur, nxt),
        }
    }

    pub fn eval_single(&self, cur: Symbol) -> Result<bool> {
        if self.uses_next() {
            return Err(Error::Precondition(
                "expression refers to next-step variables",
            ));
        }
        Ok(self.eval_pair(cur, cur))
    }

    /// Number of symbols over `vars` satisfying a next-free expression.
    pub fn count_sat_single(&self, vars: &VarTable) -> Result<u64> {
        if self.uses_next() {
            return Err(Error::Precondition(
                "expression refers to next-step variables",
            ));
        }
        let compiled = self.compile();
        Ok(vars.symbols().filter(|&s| compiled.eval(s, s)).count() as u64)
    }

    pub fn compile(&self) -> CompiledExpr {
        let mut ops = Vec::new();
        self.emit(&mut ops);
        let mut depth = 0usize;
        let mut max_depth = 0usize;
        for op in &ops {
            match op {
                Op::Const(_) | Op::Cur(_) | Op::Next(_) => depth += 1,
                Op::Not => {}
                _ => depth -= 1,
            }
            max_depth = max_depth.max(depth);
        }
        CompiledExpr {
            ops,
            fits_bitstack: max_depth <= 64,
            tree: self.clone(),
        }
    }

    fn emit(&self, ops: &mut Vec<Op>) {
        match self {
            BoolExpr::Const(b) => ops.push(Op::Const(*b)),
            BoolExpr::Var(v) => ops.push(Op::Cur(1 << v)),
            BoolExpr::NextVar(v) => ops.push(Op::Next(1 << v)),
            BoolExpr::Not(e) => {
                e.emit(ops);
                ops.push(Op::Not);
            }
            BoolExpr::And(l, r) => Self::emit_bin(ops, l, r, Op::And),
            BoolExpr::Or(l, r) => Self::emit_bin(ops, l, r, Op::Or),
            BoolExpr::Implies(l, r) => Self::emit_bin(ops, l, r, Op::Implies),
            BoolExpr::Iff(l, r) => Self::emit_bin(ops, l, r, Op::Iff),
        }
    }

    fn emit_bin(ops: &mut Vec<Op>, l: &BoolExpr, r: &BoolExpr, op: Op) {
        l.emit(ops);
        r.emit(ops);
        ops.push(op);
    }

    /// Fully parenthesised rendering that [`parse_expr`] reads back.
    pub fn display<'a>(&'a self, vars: &'a VarTable) -> DisplayExpr<'a> {
        DisplayExpr { expr: self, vars }
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Const(bool),
    Cur(u32),
    Next(u32),
    Not,
    And,
    Or,
    Implies,
    Iff,
}

/// Postfix form of a [`BoolExpr`] for the inner loops of automaton construction.
#[derive(Debug, Clone)]
pub struct CompiledExpr {
    ops: Vec<Op>,
    fits_bitstack: bool,
    tree: BoolExpr,
}

impl CompiledExpr {
    #[inline]
    pub fn eval(&self, cur: Symbol, nxt: Symbol) -> bool {
        if !self.fits_bitstack {
            return self.tree.eval_pair(cur, nxt);
        }
        // Operand stack packed into a u64, top of stack in bit 0.
        let mut stack = 0u64;
        for op in &self.ops {
            match *op {
                Op::Const(b) => stack = stack << 1 | b as u64,
                Op::Cur(mask) => stack = stack << 1 | (cur.0 & mask != 0) as u64,
                Op::Next(mask) => stack = stack << 1 | (nxt.0 & mask != 0) as u64,
                Op::Not => stack ^= 1,
                bin => {
                    let r = stack & 1 == 1;
                    stack >>= 1;
                    let l = stack & 1 == 1;
                    let v = match bin {
                        Op::And => l && r,
                        Op::Or => l || r,
                        Op::Implies => !l || r,
                        _ => l == r,
                    };
                    stack = stack & !1 | v as u64;
                }
            }
        }
        stack & 1 == 1
    }
}

pub struct DisplayExpr<'a> {
    expr: &'a BoolExpr,
    vars: &'a VarTable,
}

impl<'a> fmt::Display for DisplayExpr<'a> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |v: usize| self.vars.names().get(v).map(String::as_str).unwrap_or("?");
        let sub = |e: &'a BoolExpr| DisplayExpr {
            expr: e,
            vars: self.vars,
        };
        match self.expr {
            BoolExpr::Const(b) => write!(f, "{b}"),
            BoolExpr::Var(v) => write!(f, "{}", name(*v)),
            BoolExpr::NextVar(v) => write!(f, "next({})", name(*v)),
            BoolExpr::Not(e) => write!(f, "!{}", sub(e)),
            BoolExpr::And(l, r) => write!(f, "({} & {})", sub(l), sub(r)),
            BoolExpr::Or(l, r) => write!(f, "({} | {})", sub(l), sub(r)),
            BoolExpr::Implies(l, r) => write!(f, "({} -> {})", sub(l), sub(r)),
            BoolExpr::Iff(l, r) => write!(f, "({} <-> {})", sub(l), sub(r)),
        }
    }
}

/// Parses a single expression; the whole input must be consumed.
pub fn parse_expr(text: &str, vars: &VarTable) -> Result<BoolExpr> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "empty expression".into(),
        });
    }
    let mut parser = ExprParser::new(&tokens, vars);
    let expr = parser.parse()?;
    if let Some(tok) = parser.peek() {
        return Err(Error::Syntax {
            line: tok.line,
            column: tok.column,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(expr)
}

pub(crate) struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    vars: &'a VarTable,
}

impl<'a> ExprParser<'a> {
    pub fn new(tokens: &'a [Token], vars: &'a VarTable) -> Self {
        ExprParser {
            tokens,
            pos: 0,
            vars,
        }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let tok = self.tokens.get(self.pos);
        self.pos += tok.is_some() as usize;
        tok
    }

    fn eof_error(&self, message: &str) -> Error {
        let (line, column) = self
            .tokens
            .last()
            .map(|t| (t.line, t.column + 1))
            .unwrap_or((1, 1));
        Error::Syntax {
            line,
            column,
            message: format!("unexpected end of input, {message}"),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<&'a Token> {
        match self.bump() {
            Some(t) if t.tok == want => Ok(t),
            Some(t) => Err(Error::Syntax {
                line: t.line,
                column: t.column,
                message: format!("expected {what}"),
            }),
            None => Err(self.eof_error(&format!("expected {what}"))),
        }
    }

    pub fn parse(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_implies()?;
        while matches!(self.peek(), Some(t) if t.tok == Tok::Iff) {
            self.bump();
            let rhs = self.parse_implies()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn parse_implies(&mut self) -> Result<BoolExpr> {
        let lhs = self.parse_or()?;
        if matches!(self.peek(), Some(t) if t.tok == Tok::Implies) {
            self.bump();
            let rhs = self.parse_implies()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_and()?;
        while matches!(self.peek(), Some(t) if t.tok == Tok::Or) {
            self.bump();
            lhs = lhs.or(self.parse_and()?);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<BoolExpr> {
        let mut lhs = self.parse_unary()?;
        while matches!(self.peek(), Some(t) if t.tok == Tok::And) {
            self.bump();
            lhs = lhs.and(self.parse_unary()?);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<BoolExpr> {
        if matches!(self.peek(), Some(t) if t.tok == Tok::Not) {
            self.bump();
            return Ok(self.parse_unary()?.negate());
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<BoolExpr> {
        let tok = self
            .bump()
            .ok_or_else(|| self.eof_error("expected an expression"))?;
        match &tok.tok {
            Tok::LParen => {
                let inner = self.parse()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(word) if word == "true" => Ok(BoolExpr::Const(true)),
            Tok::Ident(word) if word == "false" => Ok(BoolExpr::Const(false)),
            Tok::Ident(word) if word == "next" => {
                self.expect(Tok::LParen, "`(` after `next`")?;
                let arg = self
                    .bump()
                    .ok_or_else(|| self.eof_error("expected a variable inside `next(...)`"))?;
                let var = match &arg.tok {
                    Tok::Ident(name) if name == "next" => {
                        return Err(Error::Syntax {
                            line: arg.line,
                            column: arg.column,
                            message: "nested `next` is not supported".into(),
                        })
                    }
                    Tok::Ident(name) => self.lookup(name, arg)?,
                    _ => {
                        return Err(Error::Syntax {
                            line: arg.line,
                            column: arg.column,
                            message: "`next` takes a single variable".into(),
                        })
                    }
                };
                self.expect(Tok::RParen, "`)` closing `next(...)`")?;
                Ok(BoolExpr::NextVar(var))
            }
            Tok::Ident(name) => Ok(BoolExpr::Var(self.lookup(name, tok)?)),
            _ => Err(Error::Syntax {
                line: tok.line,
                column: tok.column,
                message: "expected an expression".into(),
            }),
        }
    }

    fn lookup(&self, name: &str, at: &Token) -> Result<usize> {
        self.vars
            .position(name)
            .ok_or_else(|| Error::UndeclaredVariable {
                name: name.to_string(),
                line: at.line,
                column: at.column,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> VarTable {
        VarTable::new(names.iter().copied()).unwrap()
    }

    fn sym(v: &VarTable, on: &[&str]) -> Symbol {
        on.iter()
            .fold(Symbol(0), |s, n| s.with(v.position(n).unwrap(), true))
    }

    #[test]
    fn parses_implication_with_next() {
        let v = vars(&["a", "b"]);
        let e = parse_expr("a -> next(b)", &v).unwrap();
        assert_eq!(e, BoolExpr::Var(0).implies(BoolExpr::NextVar(1)));
        assert!(e.uses_next());
    }

    #[test]
    fn precedence_not_and_or() {
        let v = vars(&["a", "b", "c"]);
        let e = parse_expr("!(a & b) | c", &v).unwrap();
        let want = BoolExpr::Var(0)
            .and(BoolExpr::Var(1))
            .negate()
            .or(BoolExpr::Var(2));
        assert_eq!(e, want);
        let e = parse_expr("!a & b | c -> a <-> b", &v).unwrap();
        let want = BoolExpr::Var(0)
            .negate()
            .and(BoolExpr::Var(1))
            .or(BoolExpr::Var(2))
            .implies(BoolExpr::Var(0))
            .iff(BoolExpr::Var(1));
        assert_eq!(e, want);
    }

    #[test]
    fn implication_is_right_associative() {
        let v = vars(&["a", "b", "c"]);
        let e = parse_expr("a -> b -> c", &v).unwrap();
        assert_eq!(
            e,
            BoolExpr::Var(0).implies(BoolExpr::Var(1).implies(BoolExpr::Var(2)))
        );
        let e = parse_expr("a <-> b <-> c", &v).unwrap();
        assert_eq!(
            e,
            BoolExpr::Var(0).iff(BoolExpr::Var(1)).iff(BoolExpr::Var(2))
        );
    }

    #[test]
    fn undeclared_variable_is_named() {
        let v = vars(&["a", "b"]);
        match parse_expr("a -> d", &v) {
            Err(Error::UndeclaredVariable { name, column, .. }) => {
                assert_eq!(name, "d");
                assert_eq!(column, 6);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let v = vars(&["a"]);
        assert!(matches!(
            parse_expr("a &", &v),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(parse_expr("(a", &v), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_expr("a a", &v),
            Err(Error::Syntax { column: 3, .. })
        ));
        assert!(matches!(parse_expr("", &v), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_expr("a $ a", &v),
            Err(Error::Syntax { column: 3, .. })
        ));
    }

    #[test]
    fn nested_next_rejected() {
        let v = vars(&["x"]);
        assert!(matches!(
            parse_expr("next(next(x))", &v),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_expr("next(!x)", &v),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn eval_pair_cases() {
        let v = vars(&["a", "b"]);
        let e = parse_expr("a -> next(b)", &v).unwrap();
        assert!(e.eval_pair(sym(&v, &["a"]), sym(&v, &["b"])));
        assert!(!e.eval_pair(sym(&v, &["a"]), sym(&v, &[])));
        assert!(e.eval_pair(sym(&v, &[]), sym(&v, &[])));
    }

    #[test]
    fn eval_single_cases() {
        let v = vars(&["a", "b"]);
        let e = parse_expr("a | b", &v).unwrap();
        assert!(e.eval_single(sym(&v, &["b"])).unwrap());
        assert!(BoolExpr::Const(true).eval_single(Symbol(3)).unwrap());
        let n = parse_expr("next(a)", &v).unwrap();
        assert!(matches!(
            n.eval_single(Symbol(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn count_sat_cases() {
        let v2 = vars(&["a", "b"]);
        let v3 = vars(&["a", "b", "c"]);
        assert_eq!(BoolExpr::Const(true).count_sat_single(&v2).unwrap(), 4);
        assert_eq!(
            parse_expr("a & b & !c", &v3)
                .unwrap()
                .count_sat_single(&v3)
                .unwrap(),
            1
        );
        // a|b holds on {a}, {b}, {a,b}
        let brute = (0..4u32)
            .filter(|bits| bits & 1 == 1 || bits & 2 == 2)
            .count() as u64;
        assert_eq!(brute, 3);
        assert_eq!(
            parse_expr("a | b", &v2)
                .unwrap()
                .count_sat_single(&v2)
                .unwrap(),
            brute
        );
        let n = parse_expr("next(a)", &v2).unwrap();
        assert!(n.count_sat_single(&v2).is_err());
    }

    #[test]
    fn var_table_validation() {
        assert!(VarTable::new(["a", "a"]).is_err());
        assert!(VarTable::new(["1a"]).is_err());
        assert!(VarTable::new(["next"]).is_err());
        assert!(VarTable::new(["_ok", "b2"]).is_ok());
        let v = vars(&["a", "b", "c"]);
        assert!(v.check_cap(3).is_ok());
        assert_eq!(v.check_cap(2), Err(Error::CapExceeded { vars: 3, cap: 2 }));
        assert_eq!(v.format_symbol(Symbol(0b101)), "{a,c}");
    }

    #[test]
    fn conjoin_and_disjoin_empty() {
        assert_eq!(BoolExpr::conjoin_all(vec![]), BoolExpr::Const(true));
        assert_eq!(BoolExpr::disjoin_all(vec![]), BoolExpr::Const(false));
    }

    #[test]
    fn compiled_matches_tree_on_deep_expression() {
        // Right-nested chain deeper than the 64-entry bit stack.
        let mut e = BoolExpr::Var(0);
        for i in 0..80 {
            e = if i % 2 == 0 {
                BoolExpr::NextVar(1).and(e)
            } else {
                BoolExpr::Var(1).or(e)
            };
        }
        let right_deep = (0..70).fold(BoolExpr::Var(0), |acc, _| BoolExpr::Var(1).iff(acc));
        for expr in [e, right_deep] {
            let c = expr.compile();
            for cur in 0..4 {
                for nxt in 0..4 {
                    assert_eq!(
                        c.eval(Symbol(cur), Symbol(nxt)),
                        expr.eval_pair(Symbol(cur), Symbol(nxt))
                    );
                }
            }
        }
    }
}
