//! Recursive-descent parser.
//!
//! ```text
//! document  := decl*
//! decl      := "algebra" NAME "{" item* "}"
//!            | "extension" NAME "{" ext_item* "}"
//!            | "scene" NAME "{" (NAME "=" INT ";")* "}"
//!            | "poisson" NAME "{" p_item* "}"
//!            | "run" NAME NAME (":" expr ("," expr)*)? ";"
//! item      := "base" names ";" | "basis" names ";"
//!            | "anchor" NAME "->" expr ";" | "bracket" entry
//! ext_item  := "base" names ";" | "lprime" "{" item* "}"
//!            | "ldoubleprime" "{" item* "}"
//!            | "nabla" "{" entry* "}" | "omega" "{" entry* "}"
//! p_item    := "generators" names ";" | "bracket" "{" NAME "," NAME "}" "=" expr ";"
//! entry     := "[" NAME "," NAME "]" "=" expr ";"
//! expr      := term (("+" | "-") term)*
//! term      := unary (("*" | "/") unary)*
//! unary     := "-" unary | power
//! power     := atom ("^" INT)?
//! atom      := INT | NAME | "(" expr ")"
//! ```

use super::ast::*;
use super::diag::{Diagnostic, Span};
use super::lexer::{lex, Tok, Token};

pub fn parse(src: &str) -> Result<Document, Diagnostic> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let mut decls = Vec::new();
    while p.peek().tok != Tok::Eof {
        decls.push(p.decl()?);
    }
    Ok(Document { decls })
}

/// Parses a standalone expression such as a command-line argument.
pub fn parse_expr(src: &str) -> Result<Expr, Diagnostic> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn list(expected: &[&str]) -> String {
    let quoted: Vec<String> = expected.iter().map(|e| format!("`{e}`")).collect();
    match quoted.len() {
        1 => quoted[0].clone(),
        _ => format!("one of {}", quoted.join(", ")),
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Diagnostic {
        let t = self.peek();
        Diagnostic::syntax(t.span, format!("expected {}, found {}", list(expected), t.tok.describe()))
    }

    fn error_what(&self, what: &str) -> Diagnostic {
        let t = self.peek();
        Diagnostic::syntax(t.span, format!("expected {what}, found {}", t.tok.describe()))
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<Span, Diagnostic> {
        if self.at_sym(c) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&[&c.to_string()]))
        }
    }

    fn expect_eof(&self) -> Result<(), Diagnostic> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.error_what("end of input"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<Ident, Diagnostic> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let name = s.clone();
                let span = self.bump().span;
                Ok(Ident { name, span })
            }
            _ => Err(self.error_what(what)),
        }
    }

    fn int(&mut self) -> Result<(String, Span), Diagnostic> {
        match &self.peek().tok {
            Tok::Int(s) => {
                let v = s.clone();
                Ok((v, self.bump().span))
            }
            _ => Err(self.error_what("an integer")),
        }
    }

    fn names(&mut self) -> Result<Vec<Ident>, Diagnostic> {
        let mut out = vec![self.ident("a name")?];
        while self.at_sym(',') {
            self.bump();
            out.push(self.ident("a name")?);
        }
        self.expect_sym(';')?;
        Ok(out)
    }

    fn decl(&mut self) -> Result<Decl, Diagnostic> {
        const KINDS: [&str; 5] = ["algebra", "extension", "scene", "poisson", "run"];
        let kw = match &self.peek().tok {
            Tok::Ident(s) if KINDS.contains(&s.as_str()) => s.clone(),
            _ => return Err(self.error(&KINDS)),
        };
        self.bump();
        if kw == "run" {
            let command = self.ident("a command name")?;
            let target = self.ident("a declaration name")?;
            let mut args = Vec::new();
            if self.at_sym(':') {
                self.bump();
                args.push(self.expr()?);
                while self.at_sym(',') {
                    self.bump();
                    args.push(self.expr()?);
                }
            }
            self.expect_sym(';')?;
            return Ok(Decl::Run(RunDecl { command, target, args }));
        }
        let name = self.ident("a declaration name")?;
        self.expect_sym('{')?;
        let decl = match kw.as_str() {
            "algebra" => Decl::Algebra {
                name,
                items: self.items()?,
            },
            "extension" => Decl::Extension {
                name,
                items: self.ext_items()?,
            },
            "scene" => {
                let mut settings = Vec::new();
                while !self.at_sym('}') {
                    let key = match &self.peek().tok {
                        Tok::Ident(_) => self.ident("a setting")?,
                        _ => return Err(self.error(&["s", "l", "}"])),
                    };
                    self.expect_sym('=')?;
                    let (value, value_span) = self.int()?;
                    self.expect_sym(';')?;
                    settings.push(Setting { key, value, value_span });
                }
                Decl::Scene { name, settings }
            }
            _ => Decl::Poisson {
                name,
                items: self.poisson_items()?,
            },
        };
        self.expect_sym('}')?;
        Ok(decl)
    }

    fn items(&mut self) -> Result<Vec<Item>, Diagnostic> {
        let mut items = Vec::new();
        loop {
            let item = match &self.peek().tok {
                Tok::Sym('}') => return Ok(items),
                Tok::Ident(s) if s == "base" => {
                    self.bump();
                    Item::Base(self.names()?)
                }
                Tok::Ident(s) if s == "basis" => {
                    self.bump();
                    Item::Basis(self.names()?)
                }
                Tok::Ident(s) if s == "anchor" => {
                    self.bump();
                    let element = self.ident("a basis element")?;
                    if self.peek().tok != Tok::Arrow {
                        return Err(self.error(&["->"]));
                    }
                    self.bump();
                    let value = self.expr()?;
                    self.expect_sym(';')?;
                    Item::Anchor { element, value }
                }
                Tok::Ident(s) if s == "bracket" => {
                    self.bump();
                    Item::Bracket(self.entry('[', ']')?)
                }
                _ => return Err(self.error(&["base", "basis", "anchor", "bracket", "}"])),
            };
            items.push(item);
        }
    }

    fn entry(&mut self, open: char, close: char) -> Result<BracketEntry, Diagnostic> {
        self.expect_sym(open)?;
        let left = self.ident("a name")?;
        self.expect_sym(',')?;
        let right = self.ident("a name")?;
        self.expect_sym(close)?;
        self.expect_sym('=')?;
        let value = self.expr()?;
        self.expect_sym(';')?;
        Ok(BracketEntry { left, right, value })
    }

    fn entries(&mut self) -> Result<Vec<BracketEntry>, Diagnostic> {
        self.expect_sym('{')?;
        let mut out = Vec::new();
        while !self.at_sym('}') {
            if !self.at_sym('[') {
                return Err(self.error(&["[", "}"]));
            }
            out.push(self.entry('[', ']')?);
        }
        self.bump();
        Ok(out)
    }

    fn ext_items(&mut self) -> Result<Vec<ExtItem>, Diagnostic> {
        let mut items = Vec::new();
        loop {
            let item = match &self.peek().tok {
                Tok::Sym('}') => return Ok(items),
                Tok::Ident(s) if s == "base" => {
                    self.bump();
                    ExtItem::Base(self.names()?)
                }
                Tok::Ident(s) if s == "lprime" || s == "ldoubleprime" => {
                    let keyword = self.ident("a block")?;
                    self.expect_sym('{')?;
                    let inner = self.items()?;
                    self.expect_sym('}')?;
                    if keyword.name == "lprime" {
                        ExtItem::LPrime { keyword, items: inner }
                    } else {
                        ExtItem::LDoublePrime { keyword, items: inner }
                    }
                }
                Tok::Ident(s) if s == "nabla" => {
                    self.bump();
                    ExtItem::Nabla(self.entries()?)
                }
                Tok::Ident(s) if s == "omega" => {
                    self.bump();
                    ExtItem::Omega(self.entries()?)
                }
                _ => return Err(self.error(&["base", "lprime", "ldoubleprime", "nabla", "omega", "}"])),
            };
            items.push(item);
        }
    }

    fn poisson_items(&mut self) -> Result<Vec<PoissonItem>, Diagnostic> {
        let mut items = Vec::new();
        loop {
            let item = match &self.peek().tok {
                Tok::Sym('}') => return Ok(items),
                Tok::Ident(s) if s == "generators" => {
                    self.bump();
                    PoissonItem::Generators(self.names()?)
                }
                Tok::Ident(s) if s == "bracket" => {
                    self.bump();
                    PoissonItem::Bracket(self.entry('{', '}')?)
                }
                _ => return Err(self.error(&["generators", "bracket", "}"])),
            };
            items.push(item);
        }
    }

    pub fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.term()?;
        while self.at_sym('+') || self.at_sym('-') {
            let op = self.bump();
            let rhs = self.term()?;
            let kind = if op.tok == Tok::Sym('+') {
                ExprKind::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span: op.span };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, Diagnostic> {
        let mut lhs = self.unary()?;
        while self.at_sym('*') || self.at_sym('/') {
            let op = self.bump();
            let rhs = self.unary()?;
            let kind = if op.tok == Tok::Sym('*') {
                ExprKind::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Div(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { kind, span: op.span };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, Diagnostic> {
        if self.at_sym('-') {
            let span = self.bump().span;
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Diagnostic> {
        let base = self.atom()?;
        if self.at_sym('^') {
            let span = self.bump().span;
            let (exp, _) = self.int()?;
            return Ok(Expr {
                kind: ExprKind::Pow(Box::new(base), exp),
                span,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Diagnostic> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(s) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Int(s),
                    span: t.span,
                })
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr {
                    kind: ExprKind::Var(s),
                    span: t.span,
                })
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            _ => Err(self.error_what("an expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vect_model_source() {
        let doc = parse("algebra vect { base x; basis e; anchor e -> dx; }").unwrap();
        let Decl::Algebra { name, items } = &doc.decls[0] else { panic!() };
        assert_eq!(name.name, "vect");
        assert_eq!(items.len(), 3);
        assert!(matches!(&items[0], Item::Base(v) if v.len() == 1));
        assert!(matches!(&items[1], Item::Basis(v) if v.len() == 1));
    }

    #[test]
    fn unbalanced_brace() {
        let err = parse("algebra a {\n  base x;\n  basis e;\n").unwrap_err();
        assert_eq!(err.span, Span::new(4, 1));
        assert_eq!(err.message, "expected one of `base`, `basis`, `anchor`, `bracket`, `}`, found end of input");
    }

    #[test]
    fn precedence() {
        let e = parse_expr("-x^2 + 3/2*y").unwrap();
        let ExprKind::Add(l, r) = e.kind else { panic!() };
        assert!(matches!(l.kind, ExprKind::Neg(_)));
        assert!(matches!(r.kind, ExprKind::Mul(..)));
        assert!(parse_expr("x +").is_err());
        assert!(parse_expr("x y").is_err());
    }
}
