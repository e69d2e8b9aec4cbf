//! Text syntax for square classes, forms and Brauer classes over a fixed tower.
//!
//! ```text
//! elem ::= factor ("*" factor)*        factor ::= "-"? (integer | ident)
//! form ::= term ("+" term)*            term   ::= integer "x" term | atom ("x" atom)*
//! atom ::= "<" elems ">" | "<<" elems ">>" | "scale(" elem "," form ")"
//! alg  ::= "(" elem "," elem ")" ("(x)" "(" elem "," elem ")")*
//! ```
//!
//! `u` names the nonsquare generator of a finite base unless a tower variable is called `u`.

use std::fmt;

use crate::brauer::BrauerClass;
use crate::error::{Error, Result};
use crate::field_tower::{BaseField, FieldTower, SquareClass};
use crate::quadform::QuadForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Form(QuadForm),
    Algebra(BrauerClass),
}

impl Expr {
    pub fn render(&self) -> String {
        match self {
            Expr::Form(f) => f.render(),
            Expr::Algebra(a) => a.render(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses a form or, when the source starts with `(`, a Brauer class.
pub fn parse_expression(field: &FieldTower, src: &str) -> Result<Expr> {
    let mut p = Parser::new(field, src);
    p.skip_ws();
    let expr = if p.peek() == Some(b'(') { Expr::Algebra(p.algebra()?) } else { Expr::Form(p.form()?) };
    p.end()?;
    Ok(expr)
}

pub fn parse_form(field: &FieldTower, src: &str) -> Result<QuadForm> {
    let mut p = Parser::new(field, src);
    let form = p.form()?;
    p.end()?;
    Ok(form)
}

pub fn parse_algebra(field: &FieldTower, src: &str) -> Result<BrauerClass> {
    let mut p = Parser::new(field, src);
    let alg = p.algebra()?;
    p.end()?;
    Ok(alg)
}

pub fn parse_element(field: &FieldTower, src: &str) -> Result<SquareClass> {
    let mut p = Parser::new(field, src);
    let e = p.elem()?;
    p.end()?;
    Ok(e)
}

struct Parser<'a> {
    field: &'a FieldTower,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(field: &'a FieldTower, src: &'a str) -> Self {
        Parser { field, src: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Consumes `token` after optional whitespace.
    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected `{token}`"))
        }
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }

    fn integer(&mut self) -> Option<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == b'_') {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()
    }

    fn factor(&mut self) -> Result<SquareClass> {
        let negative = self.eat("-");
        self.skip_ws();
        let start = self.pos;
        let class = if let Some(c) = self.integer() {
            if c == 0 {
                return Err(Error::ZeroElement);
            }
            self.field.class_of_constant(c)?
        } else if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return self.err("integer out of range");
        } else if let Some(name) = self.ident() {
            match self.field.variable_by_name(name) {
                Some(c) => c,
                None if name == "u" && matches!(self.field.base(), BaseField::FiniteOdd { .. }) => {
                    self.field.base_generator().expect("finite bases have a generator")
                }
                None => return Err(Error::UnknownVariable(name.to_string())),
            }
        } else {
            self.pos = start;
            return self.err("expected an integer or a variable");
        };
        Ok(if negative { class * self.field.minus_one() } else { class })
    }

    fn elem(&mut self) -> Result<SquareClass> {
        let mut c = self.factor()?;
        while self.eat("*") {
            c = c * self.factor()?;
        }
        Ok(c)
    }

    fn elems(&mut self, close: &str) -> Result<Vec<SquareClass>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.elem()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn form(&mut self) -> Result<QuadForm> {
        let mut f = self.term()?;
        while self.eat("+") {
            f = f.orth_sum(&self.term()?)?;
        }
        Ok(f)
    }

    fn term(&mut self) -> Result<QuadForm> {
        self.skip_ws();
        let start = self.pos;
        if let Some(m) = self.integer() {
            if !self.eat("x") {
                self.pos = start;
                return self.err("expected `x` after a multiplicity");
            }
            return self.term()?.multiple(m as usize);
        }
        let mut f = self.atom()?;
        while self.eat("x") {
            f = f.tensor(&self.atom()?)?;
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<QuadForm> {
        if self.eat("<<") {
            let slots = self.elems(">>")?;
            QuadForm::pfister(self.field, &slots)
        } else if self.eat("<") {
            let entries = self.elems(">")?;
            QuadForm::diag(self.field, entries)
        } else if self.eat("scale(") {
            let a = self.elem()?;
            self.expect(",")?;
            let f = self.form()?;
            self.expect(")")?;
            f.scale(a)
        } else {
            self.err("expected `<`, `<<` or `scale(`")
        }
    }

    fn symbol(&mut self) -> Result<(SquareClass, SquareClass)> {
        self.expect("(")?;
        let a = self.elem()?;
        self.expect(",")?;
        let b = self.elem()?;
        self.expect(")")?;
        Ok((a, b))
    }

    fn algebra(&mut self) -> Result<BrauerClass> {
        let mut symbols = vec![self.symbol()?];
        loop {
            let save = self.pos;
            if self.eat("(") && self.eat("x") && self.eat(")") {
                symbols.push(self.symbol()?);
            } else {
                self.pos = save;
                break;
            }
        }
        BrauerClass::new(self.field, symbols)
    }
}
