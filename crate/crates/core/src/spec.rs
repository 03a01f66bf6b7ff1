//! GR(1) specifications as ordered lists of typed units.
//!
//! File format:
//!
//! ```text
//! # comment
//! var a;
//! var b;
//! env init !a;
//! env inv G (a -> next(b));
//! sys fair GF b;
//! ```
//!
//! Variables are declared before first use; declaration order fixes the bit
//! order of symbols. Unit labels are not part of the file format; callers
//! attach them (the CLI uses the file name of a refinement).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{BoolExpr, ExprParser, VarTable};
use crate::lexer::{tokenize, Tok, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitKind {
    Init,
    Inv,
    Fair,
}

impl UnitKind {
    fn keyword(self) -> &'static str {
        match self {
            UnitKind::Init => "init",
            UnitKind::Inv => "inv",
            UnitKind::Fair => "fair",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Env,
    Sys,
}

/// Which units of a spec a measurement looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum SideSelection {
    #[default]
    #[serde(rename = "env")]
    EnvOnly,
    #[serde(rename = "sys")]
    SysOnly,
    #[serde(rename = "all")]
    All,
}

impl SideSelection {
    pub fn admits(self, side: Side) -> bool {
        match self {
            SideSelection::EnvOnly => side == Side::Env,
            SideSelection::SysOnly => side == Side::Sys,
            SideSelection::All => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gr1Unit {
    pub kind: UnitKind,
    pub side: Side,
    pub expr: BoolExpr,
    pub label: Option<String>,
}

impl Gr1Unit {
    /// Builds a unit, rejecting `next` outside invariants.
    pub fn new(kind: UnitKind, side: Side, expr: BoolExpr) -> Result<Self> {
        if kind != UnitKind::Inv && expr.uses_next() {
            return Err(Error::Precondition(
                "initial and fairness units must not refer to next-step variables",
            ));
        }
        Ok(Gr1Unit {
            kind,
            side,
            expr,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// A specification: a variable table plus units in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Gr1Spec {
    vars: VarTable,
    units: Vec<Gr1Unit>,
}

/// The three Boolean components a spec reduces to before automaton construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub init: BoolExpr,
    pub inv: BoolExpr,
    pub fairs: Vec<BoolExpr>,
}

impl Gr1Spec {
    pub fn new(vars: VarTable, units: Vec<Gr1Unit>) -> Result<Self> {
        for unit in &units {
            check_unit_vars(&vars, unit)?;
        }
        Ok(Gr1Spec { vars, units })
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn units(&self) -> &[Gr1Unit] {
        &self.units
    }

    pub fn select(&self, selection: SideSelection) -> Gr1Spec {
        Gr1Spec {
            vars: self.vars.clone(),
            units: self
                .units
                .iter()
                .filter(|u| selection.admits(u.side))
                .cloned()
                .collect(),
        }
    }

    /// Appends refinement units; `self` is left untouched.
    pub fn conjoin(&self, refinement: &[Gr1Unit]) -> Result<Gr1Spec> {
        let mut units = self.units.clone();
        for unit in refinement {
            check_unit_vars(&self.vars, unit)?;
            units.push(unit.clone());
        }
        Ok(Gr1Spec {
            vars: self.vars.clone(),
            units,
        })
    }

    /// Conjoins the units of another spec declared over an identical variable table.
    pub fn conjoin_spec(&self, refinement: &Gr1Spec) -> Result<Gr1Spec> {
        self.require_same_vars(refinement)?;
        self.conjoin(&refinement.units)
    }

    pub fn require_same_vars(&self, other: &Gr1Spec) -> Result<()> {
        if self.vars.names() != other.vars.names() {
            return Err(Error::VarMismatch(format!(
                "[{}] vs [{}]",
                self.vars.names().join(", "),
                other.vars.names().join(", ")
            )));
        }
        Ok(())
    }

    pub fn normalize(&self) -> Normalized {
        let of_kind = |kind: UnitKind| {
            self.units
                .iter()
                .filter(move |u| u.kind == kind)
                .map(|u| u.expr.clone())
        };
        Normalized {
            init: BoolExpr::conjoin_all(of_kind(UnitKind::Init)),
            inv: BoolExpr::conjoin_all(of_kind(UnitKind::Inv)),
            fairs: of_kind(UnitKind::Fair).collect(),
        }
    }

    pub fn fairness_count(&self) -> usize {
        self.units
            .iter()
            .filter(|u| u.kind == UnitKind::Fair)
            .count()
    }
}

fn check_unit_vars(vars: &VarTable, unit: &Gr1Unit) -> Result<()> {
    if let Some(max) = unit.expr.max_var() {
        if max >= vars.len() {
            return Err(Error::VarMismatch(format!(
                "unit refers to variable #{max} but only {} are declared",
                vars.len()
            )));
        }
    }
    if unit.kind != UnitKind::Inv && unit.expr.uses_next() {
        return Err(Error::Precondition(
            "initial and fairness units must not refer to next-step variables",
        ));
    }
    Ok(())
}

impl fmt::Display for Gr1Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in self.vars.names() {
            writeln!(f, "var {name};")?;
        }
        for unit in &self.units {
            let side = match unit.side {
                Side::Env => "env",
                Side::Sys => "sys",
            };
            let marker = match unit.kind {
                UnitKind::Init => "",
                UnitKind::Inv => "G ",
                UnitKind::Fair => "GF ",
            };
            writeln!(
                f,
                "{side} {} {marker}{};",
                unit.kind.keyword(),
                unit.expr.display(&self.vars)
            )?;
        }
        Ok(())
    }
}

/// Parses a spec file.
pub fn parse_spec(text: &str) -> Result<Gr1Spec> {
    let tokens = tokenize(text)?;
    let mut spec = Gr1Spec::default();
    let mut pos = 0;
    while pos < tokens.len() {
        let head = &tokens[pos];
        let stmt_end = tokens[pos..]
            .iter()
            .position(|t| t.tok == Tok::Semi)
            .map(|i| pos + i)
            .ok_or_else(|| syntax(tokens.last().unwrap_or(head), "missing `;`"))?;
        let stmt = &tokens[pos..stmt_end];
        if stmt.is_empty() {
            return Err(syntax(head, "empty statement"));
        }
        if head.is_ident("var") {
            parse_var(stmt, &mut spec.vars)?;
        } else {
            let unit = parse_unit(stmt, &spec.vars)?;
            spec.units.push(unit);
        }
        pos = stmt_end + 1;
    }
    Ok(spec)
}

fn syntax(at: &Token, message: &str) -> Error {
    Error::Syntax {
        line: at.line,
        column: at.column,
        message: message.to_string(),
    }
}

fn parse_var(stmt: &[Token], vars: &mut VarTable) -> Result<()> {
    let head = &stmt[0];
    let name = match stmt.get(1) {
        Some(Token {
            tok: Tok::Ident(name),
            ..
        }) => name,
        Some(t) => return Err(syntax(t, "expected a variable name")),
        None => return Err(syntax(head, "expected a variable name after `var`")),
    };
    if let Some(extra) = stmt.get(2) {
        return Err(syntax(extra, "expected `;` after variable name"));
    }
    if vars.position(name).is_some() {
        return Err(Error::DuplicateVariable {
            name: name.clone(),
            line: head.line,
        });
    }
    vars.push(name.clone()).map_err(|err| match err {
        Error::InvalidVariable(msg) => syntax(&stmt[1], &msg),
        other => other,
    })?;
    Ok(())
}

fn parse_unit(stmt: &[Token], vars: &VarTable) -> Result<Gr1Unit> {
    let head = &stmt[0];
    let side = if head.is_ident("env") {
        Side::Env
    } else if head.is_ident("sys") {
        Side::Sys
    } else {
        return Err(syntax(head, "expected `var`, `env` or `sys`"));
    };
    let mut i = 1;
    let kind_tok = stmt
        .get(i)
        .ok_or_else(|| syntax(head, "expected `init`, `inv` or `fair`"))?;
    let kind = if kind_tok.is_ident("init") {
        UnitKind::Init
    } else if kind_tok.is_ident("inv") {
        UnitKind::Inv
    } else if kind_tok.is_ident("fair") {
        UnitKind::Fair
    } else {
        return Err(syntax(kind_tok, "expected `init`, `inv` or `fair`"));
    };
    i += 1;
    let marker = match kind {
        UnitKind::Init => None,
        UnitKind::Inv => Some("G"),
        UnitKind::Fair => Some("GF"),
    };
    if let Some(marker) = marker {
        match stmt.get(i) {
            Some(t) if t.is_ident(marker) => i += 1,
            Some(t) => return Err(syntax(t, &format!("expected `{marker}`"))),
            None => return Err(syntax(kind_tok, &format!("expected `{marker}`"))),
        }
    }
    let body = &stmt[i..];
    if body.is_empty() {
        return Err(syntax(
            stmt.last().unwrap_or(head),
            "expected an expression before `;`",
        ));
    }
    let mut parser = ExprParser::new(body, vars);
    let expr = parser.parse()?;
    if let Some(t) = body.get(parser.position()) {
        return Err(syntax(t, "expected `;`"));
    }
    if kind != UnitKind::Inv && expr.uses_next() {
        return Err(Error::NextOutsideInvariant {
            kind: kind.keyword(),
            line: head.line,
        });
    }
    Ok(Gr1Unit {
        kind,
        side,
        expr,
        label: None,
    })
}
