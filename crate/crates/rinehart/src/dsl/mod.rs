//! The input language: lexer, parser, canonical renderer and lowering to
//! engine objects.

mod ast;
mod diag;
mod lexer;
mod lower;
mod parser;
mod render;

pub use ast::*;
pub use diag::{Diagnostic, DiagnosticKind, Span};
pub use lexer::{lex, Tok, Token};
pub use lower::{first_unknown, lower, lower_expr, Named, Object, Program, Scope};
pub use parser::{parse, parse_expr};
pub use render::{render_document, render_expr};
