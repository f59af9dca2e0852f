//! Syntax tree of the input language. Spans are carried for diagnostics
//! and ignored by equality, so a reparsed rendering compares equal.

use super::diag::Span;

#[derive(Clone, Debug)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Ident {}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    /// Decimal digits of a non-negative integer literal.
    Int(String),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, String),
}

/// `[left, right] = value;` in a bracket, nabla or omega table, or
/// `{left, right} = value;` in a Poisson block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub left: Ident,
    pub right: Ident,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Base(Vec<Ident>),
    Basis(Vec<Ident>),
    Anchor { element: Ident, value: Expr },
    Bracket(BracketEntry),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtItem {
    Base(Vec<Ident>),
    LPrime { keyword: Ident, items: Vec<Item> },
    LDoublePrime { keyword: Ident, items: Vec<Item> },
    Nabla(Vec<BracketEntry>),
    Omega(Vec<BracketEntry>),
}

#[derive(Clone, Debug)]
pub struct Setting {
    pub key: Ident,
    pub value: String,
    pub value_span: Span,
}

impl PartialEq for Setting {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.value == other.value
    }
}

impl Eq for Setting {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoissonItem {
    Generators(Vec<Ident>),
    Bracket(BracketEntry),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecl {
    pub command: Ident,
    pub target: Ident,
    pub args: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Algebra { name: Ident, items: Vec<Item> },
    Extension { name: Ident, items: Vec<ExtItem> },
    Scene { name: Ident, settings: Vec<Setting> },
    Poisson { name: Ident, items: Vec<PoissonItem> },
    Run(RunDecl),
}

impl Decl {
    pub fn name(&self) -> Option<&Ident> {
        match self {
            Decl::Algebra { name, .. }
            | Decl::Extension { name, .. }
            | Decl::Scene { name, .. }
            | Decl::Poisson { name, .. } => Some(name),
            Decl::Run(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub decls: Vec<Decl>,
}
