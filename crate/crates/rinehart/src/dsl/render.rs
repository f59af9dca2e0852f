//! Canonical source rendering. Parsing the output yields an equal tree.

use super::ast::*;

fn prec(e: &Expr) -> u8 {
    match e.kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Mul(..) | ExprKind::Div(..) => 2,
        ExprKind::Neg(_) => 3,
        ExprKind::Pow(..) => 4,
        ExprKind::Int(_) | ExprKind::Var(_) => 5,
    }
}

fn child(out: &mut String, e: &Expr, min: u8) {
    if prec(e) < min {
        out.push('(');
        expr_into(out, e);
        out.push(')');
    } else {
        expr_into(out, e);
    }
}

fn expr_into(out: &mut String, e: &Expr) {
    match &e.kind {
        ExprKind::Int(s) | ExprKind::Var(s) => out.push_str(s),
        ExprKind::Neg(a) => {
            out.push('-');
            child(out, a, 3);
        }
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            child(out, a, 1);
            out.push_str(if matches!(e.kind, ExprKind::Add(..)) { " + " } else { " - " });
            child(out, b, 2);
        }
        ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            child(out, a, 2);
            out.push(if matches!(e.kind, ExprKind::Mul(..)) { '*' } else { '/' });
            child(out, b, 3);
        }
        ExprKind::Pow(a, n) => {
            child(out, a, 5);
            out.push('^');
            out.push_str(n);
        }
    }
}

pub fn render_expr(e: &Expr) -> String {
    let mut out = String::new();
    expr_into(&mut out, e);
    out
}

fn names(ids: &[Ident]) -> String {
    ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(", ")
}

fn entry(open: char, close: char, b: &BracketEntry) -> String {
    format!("{open}{}, {}{close} = {};", b.left.name, b.right.name, render_expr(&b.value))
}

fn items(out: &mut String, items: &[Item], indent: &str) {
    for item in items {
        let line = match item {
            Item::Base(v) => format!("base {};", names(v)),
            Item::Basis(v) => format!("basis {};", names(v)),
            Item::Anchor { element, value } => format!("anchor {} -> {};", element.name, render_expr(value)),
            Item::Bracket(b) => format!("bracket {}", entry('[', ']', b)),
        };
        out.push_str(&format!("{indent}{line}\n"));
    }
}

fn table(out: &mut String, keyword: &str, entries: &[BracketEntry]) {
    out.push_str(&format!("  {keyword} {{\n"));
    for b in entries {
        out.push_str(&format!("    {}\n", entry('[', ']', b)));
    }
    out.push_str("  }\n");
}

pub fn render_document(doc: &Document) -> String {
    let mut out = String::new();
    for (k, d) in doc.decls.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        match d {
            Decl::Algebra { name, items: its } => {
                out.push_str(&format!("algebra {} {{\n", name.name));
                items(&mut out, its, "  ");
                out.push_str("}\n");
            }
            Decl::Extension { name, items: its } => {
                out.push_str(&format!("extension {} {{\n", name.name));
                for it in its {
                    match it {
                        ExtItem::Base(v) => out.push_str(&format!("  base {};\n", names(v))),
                        ExtItem::LPrime { keyword, items: inner } | ExtItem::LDoublePrime { keyword, items: inner } => {
                            out.push_str(&format!("  {} {{\n", keyword.name));
                            items(&mut out, inner, "    ");
                            out.push_str("  }\n");
                        }
                        ExtItem::Nabla(e) => table(&mut out, "nabla", e),
                        ExtItem::Omega(e) => table(&mut out, "omega", e),
                    }
                }
                out.push_str("}\n");
            }
            Decl::Scene { name, settings } => {
                out.push_str(&format!("scene {} {{\n", name.name));
                for s in settings {
                    out.push_str(&format!("  {} = {};\n", s.key.name, s.value));
                }
                out.push_str("}\n");
            }
            Decl::Poisson { name, items: its } => {
                out.push_str(&format!("poisson {} {{\n", name.name));
                for it in its {
                    match it {
                        PoissonItem::Generators(v) => out.push_str(&format!("  generators {};\n", names(v))),
                        PoissonItem::Bracket(b) => out.push_str(&format!("  bracket {}\n", entry('{', '}', b))),
                    }
                }
                out.push_str("}\n");
            }
            Decl::Run(r) => {
                out.push_str(&format!("run {} {}", r.command.name, r.target.name));
                if !r.args.is_empty() {
                    let args: Vec<String> = r.args.iter().map(render_expr).collect();
                    out.push_str(&format!(": {}", args.join(", ")));
                }
                out.push_str(";\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parser::{parse, parse_expr};
    use super::*;

    #[test]
    fn parentheses_where_needed() {
        for (src, want) in [
            ("a - (b - c)", "a - (b - c)"),
            ("(a - b) - c", "a - b - c"),
            ("a/(b*c)", "a/(b*c)"),
            ("(-x)^2", "(-x)^2"),
            ("-(x^2)", "-x^2"),
            ("--x", "--x"),
            ("(x*y)^3", "(x*y)^3"),
        ] {
            let e = parse_expr(src).unwrap();
            assert_eq!(render_expr(&e), want, "{src}");
            assert_eq!(parse_expr(want).unwrap(), e);
        }
    }

    #[test]
    fn document_roundtrip() {
        let src = "algebra v { base x; basis e; anchor e -> x*dx; }\nrun check v;\nrun bracket v: e^2, x^2;";
        let doc = parse(src).unwrap();
        assert_eq!(parse(&render_document(&doc)).unwrap(), doc);
    }
}
