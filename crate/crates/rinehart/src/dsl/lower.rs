//! Semantic analysis: turns a parsed document into engine objects.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rinehart_core::extensions::{ExtensionData, Tensor3};
use rinehart_core::invariant_theory::DualPairScene;
use rinehart_core::lie_rinehart::PoissonAlgebra;
use rinehart_core::{Error, LieRinehartPresentation, Poly, Rational, Var, VarKind};

use super::ast::*;
use super::diag::{Diagnostic, Span};

#[derive(Clone, Debug)]
pub enum Object {
    Algebra(LieRinehartPresentation),
    Extension(ExtensionData),
    Scene(DualPairScene),
    Poisson(PoissonAlgebra),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Algebra(_) => "algebra",
            Object::Extension(_) => "extension",
            Object::Scene(_) => "scene",
            Object::Poisson(_) => "poisson",
        }
    }

    /// Variables visible to expressions evaluated against this object.
    pub fn symbols(&self) -> Vec<Var> {
        match self {
            Object::Algebra(p) => p.base_vars().iter().chain(p.l_basis()).cloned().collect(),
            Object::Extension(e) => e
                .l_prime()
                .base_vars()
                .iter()
                .chain(e.l_prime().l_basis())
                .chain(e.l_double_prime().l_basis())
                .cloned()
                .collect(),
            Object::Scene(s) => s.algebra().generators().to_vec(),
            Object::Poisson(p) => p.generators().to_vec(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Named {
    pub name: Ident,
    pub object: Object,
}

#[derive(Clone, Debug, Default)]
pub struct Program {
    pub objects: Vec<Named>,
    pub runs: Vec<RunDecl>,
}

impl Program {
    pub fn get(&self, name: &str) -> Option<&Named> {
        self.objects.iter().find(|n| n.name.name == name)
    }
}

pub fn lower(doc: &Document) -> Result<Program, Diagnostic> {
    let mut program = Program::default();
    for decl in &doc.decls {
        if let Some(name) = decl.name() {
            if let Some(prev) = program.get(&name.name) {
                return Err(Diagnostic::semantic(
                    name.span,
                    format!(
                        "`{}` is already declared at {}:{}",
                        name.name, prev.name.span.line, prev.name.span.col
                    ),
                ));
            }
        }
        let object = match decl {
            Decl::Algebra { name, items } => Object::Algebra(lower_algebra(name, None, items)?),
            Decl::Extension { name, items } => Object::Extension(lower_extension(name, items)?),
            Decl::Scene { name, settings } => Object::Scene(lower_scene(name, settings)?),
            Decl::Poisson { name, items } => Object::Poisson(lower_poisson(name, items)?),
            Decl::Run(run) => {
                match program.get(&run.target.name) {
                    None => {
                        return Err(Diagnostic::semantic(
                            run.target.span,
                            format!("unknown declaration `{}`", run.target.name),
                        ))
                    }
                    Some(_) => program.runs.push(run.clone()),
                }
                continue;
            }
        };
        program.objects.push(Named {
            name: decl.name().cloned().expect("named declaration"),
            object,
        });
    }
    Ok(program)
}

/// Symbol table for expression lowering. `d<x>` names the derivation
/// marker of a base variable when `markers` is set.
pub struct Scope {
    vars: BTreeMap<String, Var>,
    markers: BTreeMap<String, Var>,
}

impl Scope {
    pub fn new(vars: &[Var]) -> Self {
        Scope {
            vars: vars.iter().map(|v| (v.name().to_string(), v.clone())).collect(),
            markers: BTreeMap::new(),
        }
    }

    fn with_markers(vars: &[Var], base: &[Var]) -> Self {
        let mut scope = Scope::new(vars);
        for b in base {
            let name = format!("d{}", b.name());
            if !scope.vars.contains_key(&name) {
                scope.markers.insert(name.clone(), Var::fiber(&name));
            }
        }
        scope
    }

    fn resolve(&self, name: &str) -> Option<&Var> {
        self.vars.get(name).or_else(|| self.markers.get(name))
    }
}

/// First identifier in `e` (source order) rejected by `known`.
pub fn first_unknown<'e>(e: &'e Expr, known: &dyn Fn(&str) -> bool) -> Option<(&'e str, Span)> {
    match &e.kind {
        ExprKind::Int(_) => None,
        ExprKind::Var(v) => (!known(v)).then_some((v.as_str(), e.span)),
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => first_unknown(a, known),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            first_unknown(a, known).or_else(|| first_unknown(b, known))
        }
    }
}

pub fn lower_expr(e: &Expr, scope: &Scope) -> Result<Poly, Diagnostic> {
    Ok(match &e.kind {
        ExprKind::Int(s) => {
            Poly::constant(s.parse::<Rational>().expect("lexer yields digits"))
        }
        ExprKind::Var(name) => match scope.resolve(name) {
            Some(v) => Poly::var(v),
            None => return Err(Diagnostic::semantic(e.span, format!("unknown symbol `{name}`"))),
        },
        ExprKind::Neg(a) => -lower_expr(a, scope)?,
        ExprKind::Add(a, b) => lower_expr(a, scope)? + lower_expr(b, scope)?,
        ExprKind::Sub(a, b) => lower_expr(a, scope)? - lower_expr(b, scope)?,
        ExprKind::Mul(a, b) => lower_expr(a, scope)? * lower_expr(b, scope)?,
        ExprKind::Div(a, b) => {
            let num = lower_expr(a, scope)?;
            let den = lower_expr(b, scope)?;
            match den.as_constant() {
                Some(c) if !c.is_zero() => num.scale(&(Rational::one() / c)),
                Some(_) => return Err(Diagnostic::semantic(e.span, "division by zero")),
                None => {
                    return Err(Diagnostic::semantic(
                        e.span,
                        "division is only allowed by a nonzero constant",
                    ))
                }
            }
        }
        ExprKind::Pow(a, n) => {
            let exp: u32 = n
                .parse()
                .map_err(|_| Diagnostic::semantic(e.span, format!("exponent `{n}` is too large")))?;
            lower_expr(a, scope)?.pow(exp)
        }
    })
}

fn core_error(span: Span, name: &str, err: Error) -> Diagnostic {
    Diagnostic::semantic(span, format!("in `{name}`: {err}"))
}

fn declare(target: &mut Vec<Var>, ids: &[Ident], kind: VarKind, taken: &mut BTreeMap<String, Span>) -> Result<(), Diagnostic> {
    for id in ids {
        if let Some(prev) = taken.get(&id.name) {
            return Err(Diagnostic::semantic(
                id.span,
                format!("`{}` is already declared at {}:{}", id.name, prev.line, prev.col),
            ));
        }
        taken.insert(id.name.clone(), id.span);
        target.push(Var::new(&id.name, kind));
    }
    Ok(())
}

fn index_of(vars: &[Var], id: &Ident, what: &str) -> Result<usize, Diagnostic> {
    vars.iter()
        .position(|v| v.name() == id.name)
        .ok_or_else(|| Diagnostic::semantic(id.span, format!("unknown {what} `{}`", id.name)))
}

/// Coefficients of `p` along `basis`, requiring `p` to be linear in it.
fn linear_coefficients(p: &Poly, basis: &[Var], span: Span, what: &str) -> Result<Vec<Poly>, Diagnostic> {
    let mut out = vec![Poly::zero(); basis.len()];
    for (m, c) in p.terms() {
        let hits: Vec<(usize, u32)> = basis
            .iter()
            .enumerate()
            .filter_map(|(i, v)| {
                let e = m.exponent(v);
                (e > 0).then_some((i, e))
            })
            .collect();
        match hits.as_slice() {
            [(i, 1)] => {
                let rest = m.derivative(&basis[*i]).expect("exponent is one").1;
                out[*i].add_term(rest, c.clone());
            }
            _ => return Err(Diagnostic::semantic(span, format!("{what} must be linear in {}", names(basis)))),
        }
    }
    Ok(out)
}

fn names(vars: &[Var]) -> String {
    let v: Vec<&str> = vars.iter().map(|v| v.name()).collect();
    v.join(", ")
}

/// Fills an antisymmetric table from `[a, b] = value` entries.
struct PairTable {
    seen: BTreeMap<(usize, usize), Span>,
}

impl PairTable {
    fn new() -> Self {
        PairTable { seen: BTreeMap::new() }
    }

    fn claim(&mut self, a: usize, b: usize, entry: &BracketEntry, antisymmetric: bool) -> Result<(), Diagnostic> {
        let span = entry.left.span;
        if let Some(prev) = self.seen.get(&(a, b)) {
            return Err(Diagnostic::semantic(
                span,
                format!(
                    "duplicate entry for [{}, {}], first given at {}:{}",
                    entry.left.name, entry.right.name, prev.line, prev.col
                ),
            ));
        }
        if antisymmetric {
            if let Some(prev) = self.seen.get(&(b, a)) {
                return Err(Diagnostic::semantic(
                    span,
                    format!(
                        "[{}, {}] is determined by antisymmetry from {}:{}",
                        entry.left.name, entry.right.name, prev.line, prev.col
                    ),
                ));
            }
        }
        self.seen.insert((a, b), span);
        Ok(())
    }
}

fn lower_algebra(name: &Ident, shared_base: Option<&[Var]>, items: &[Item]) -> Result<LieRinehartPresentation, Diagnostic> {
    let mut taken = BTreeMap::new();
    let mut base: Vec<Var> = Vec::new();
    if let Some(b) = shared_base {
        for v in b {
            taken.insert(v.name().to_string(), name.span);
        }
        base = b.to_vec();
    }
    let mut basis = Vec::new();
    for item in items {
        match item {
            Item::Base(ids) => {
                if shared_base.is_some() {
                    return Err(Diagnostic::semantic(
                        ids[0].span,
                        "base variables belong to the enclosing extension",
                    ));
                }
                declare(&mut base, ids, VarKind::Base, &mut taken)?;
            }
            Item::Basis(ids) => declare(&mut basis, ids, VarKind::Fiber, &mut taken)?,
            _ => {}
        }
    }
    let (n, m) = (base.len(), basis.len());
    let mut all = base.clone();
    all.extend(basis.iter().cloned());
    let mut anchor = vec![vec![Poly::zero(); n]; m];
    let mut anchored: BTreeMap<usize, Span> = BTreeMap::new();
    let mut structure = vec![vec![vec![Poly::zero(); m]; m]; m];
    let mut pairs = PairTable::new();
    let marker_scope = Scope::with_markers(&base, &base);
    let bracket_scope = Scope::new(&all);
    for item in items {
        match item {
            Item::Anchor { element, value } => {
                let j = index_of(&basis, element, "basis element")?;
                if let Some(prev) = anchored.insert(j, element.span) {
                    return Err(Diagnostic::semantic(
                        element.span,
                        format!("anchor of `{}` already given at {}:{}", element.name, prev.line, prev.col),
                    ));
                }
                if let Some((bad, span)) = first_unknown(value, &|s| marker_scope.resolve(s).is_some()) {
                    let hint = if basis.iter().any(|v| v.name() == bad) {
                        format!("basis element `{bad}` cannot appear in an anchor")
                    } else {
                        format!("unknown symbol `{bad}`")
                    };
                    return Err(Diagnostic::semantic(span, hint));
                }
                let p = lower_expr(value, &marker_scope)?;
                let markers: Vec<Var> = base.iter().map(|b| marker_scope.markers[&format!("d{}", b.name())].clone()).collect();
                anchor[j] = linear_coefficients(&p, &markers, value.span, "an anchor")?;
            }
            Item::Bracket(entry) => {
                let a = index_of(&basis, &entry.left, "basis element")?;
                let b = index_of(&basis, &entry.right, "basis element")?;
                pairs.claim(a, b, entry, true)?;
                let p = lower_expr(&entry.value, &bracket_scope)?;
                let coeffs = linear_coefficients(&p, &basis, entry.value.span, "a bracket")?;
                if a == b {
                    if coeffs.iter().any(|c| !c.is_zero()) {
                        return Err(Diagnostic::semantic(
                            entry.value.span,
                            format!("[{0}, {0}] must be zero", entry.left.name),
                        ));
                    }
                    continue;
                }
                for (i, c) in coeffs.into_iter().enumerate() {
                    structure[b][a][i] = -&c;
                    structure[a][b][i] = c;
                }
            }
            _ => {}
        }
    }
    LieRinehartPresentation::new(base, basis, anchor, structure).map_err(|e| core_error(name.span, &name.name, e))
}

fn lower_extension(name: &Ident, items: &[ExtItem]) -> Result<ExtensionData, Diagnostic> {
    let mut base = Vec::new();
    let mut taken = BTreeMap::new();
    for item in items {
        if let ExtItem::Base(ids) = item {
            declare(&mut base, ids, VarKind::Base, &mut taken)?;
        }
    }
    let mut prime = None;
    let mut double_prime = None;
    for item in items {
        match item {
            ExtItem::LPrime { keyword, items } => {
                if prime.is_some() {
                    return Err(Diagnostic::semantic(keyword.span, "duplicate `lprime` block"));
                }
                let lp = lower_algebra(keyword, Some(&base), items)?;
                for item in items {
                    if let Item::Anchor { element, .. } = item {
                        let j = index_of(lp.l_basis(), element, "basis element")?;
                        if lp.anchor()[j].iter().any(|p| !p.is_zero()) {
                            return Err(Diagnostic::semantic(
                                element.span,
                                format!("`lprime` element `{}` must have zero anchor", element.name),
                            ));
                        }
                    }
                }
                prime = Some(lp);
            }
            ExtItem::LDoublePrime { keyword, items } => {
                if double_prime.is_some() {
                    return Err(Diagnostic::semantic(keyword.span, "duplicate `ldoubleprime` block"));
                }
                double_prime = Some(lower_algebra(keyword, Some(&base), items)?);
            }
            _ => {}
        }
    }
    let (Some(lp), Some(ld)) = (prime, double_prime) else {
        return Err(Diagnostic::semantic(
            name.span,
            format!("extension `{}` needs both `lprime` and `ldoubleprime` blocks", name.name),
        ));
    };
    for v in lp.l_basis() {
        if ld.l_basis().iter().any(|w| w.name() == v.name()) {
            return Err(Diagnostic::semantic(
                name.span,
                format!("`{}` is declared in both `lprime` and `ldoubleprime`", v.name()),
            ));
        }
    }
    let (np, nd) = (lp.dim(), ld.dim());
    let mut prime_scope_vars = base.clone();
    prime_scope_vars.extend(lp.l_basis().iter().cloned());
    let scope = Scope::new(&prime_scope_vars);
    let mut nabla: Tensor3 = vec![vec![vec![Poly::zero(); np]; np]; nd];
    let mut omega: Tensor3 = vec![vec![vec![Poly::zero(); np]; nd]; nd];
    let mut nabla_seen = PairTable::new();
    let mut omega_seen = PairTable::new();
    for item in items {
        match item {
            ExtItem::Nabla(entries) => {
                for entry in entries {
                    let j = index_of(ld.l_basis(), &entry.left, "ldoubleprime element")?;
                    let k = index_of(lp.l_basis(), &entry.right, "lprime element")?;
                    nabla_seen.claim(j, k, entry, false)?;
                    let p = lower_expr(&entry.value, &scope)?;
                    nabla[j][k] = linear_coefficients(&p, lp.l_basis(), entry.value.span, "a nabla entry")?;
                }
            }
            ExtItem::Omega(entries) => {
                for entry in entries {
                    let j = index_of(ld.l_basis(), &entry.left, "ldoubleprime element")?;
                    let k = index_of(ld.l_basis(), &entry.right, "ldoubleprime element")?;
                    omega_seen.claim(j, k, entry, true)?;
                    let p = lower_expr(&entry.value, &scope)?;
                    let coeffs = linear_coefficients(&p, lp.l_basis(), entry.value.span, "an omega entry")?;
                    if j == k {
                        if coeffs.iter().any(|c| !c.is_zero()) {
                            return Err(Diagnostic::semantic(
                                entry.value.span,
                                format!("omega[{0}, {0}] must be zero", entry.left.name),
                            ));
                        }
                        continue;
                    }
                    omega[k][j] = coeffs.iter().map(|c| -c).collect();
                    omega[j][k] = coeffs;
                }
            }
            _ => {}
        }
    }
    ExtensionData::new(lp, ld, nabla, omega).map_err(|e| core_error(name.span, &name.name, e))
}

fn lower_scene(name: &Ident, settings: &[Setting]) -> Result<DualPairScene, Diagnostic> {
    let mut values: BTreeMap<&str, usize> = BTreeMap::new();
    for s in settings {
        if s.key.name != "s" && s.key.name != "l" {
            return Err(Diagnostic::semantic(
                s.key.span,
                format!("unknown setting `{}`, expected `s` or `l`", s.key.name),
            ));
        }
        if values.contains_key(s.key.name.as_str()) {
            return Err(Diagnostic::semantic(s.key.span, format!("setting `{}` given twice", s.key.name)));
        }
        let v: usize = s
            .value
            .parse()
            .ok()
            .filter(|v| (1..=8).contains(v))
            .ok_or_else(|| Diagnostic::semantic(s.value_span, format!("`{}` must be between 1 and 8", s.key.name)))?;
        values.insert(&s.key.name, v);
    }
    let get = |k: &str| {
        values
            .get(k)
            .copied()
            .ok_or_else(|| Diagnostic::semantic(name.span, format!("scene `{}` is missing `{k}`", name.name)))
    };
    DualPairScene::new(get("s")?, get("l")?).map_err(|e| core_error(name.span, &name.name, e))
}

fn lower_poisson(name: &Ident, items: &[PoissonItem]) -> Result<PoissonAlgebra, Diagnostic> {
    let mut gens = Vec::new();
    let mut taken = BTreeMap::new();
    for item in items {
        if let PoissonItem::Generators(ids) = item {
            declare(&mut gens, ids, VarKind::Base, &mut taken)?;
        }
    }
    let m = gens.len();
    let scope = Scope::new(&gens);
    let mut table = vec![vec![Poly::zero(); m]; m];
    let mut pairs = PairTable::new();
    for item in items {
        if let PoissonItem::Bracket(entry) = item {
            let a = index_of(&gens, &entry.left, "generator")?;
            let b = index_of(&gens, &entry.right, "generator")?;
            pairs.claim(a, b, entry, true)?;
            let p = lower_expr(&entry.value, &scope)?;
            if a == b {
                if !p.is_zero() {
                    return Err(Diagnostic::semantic(
                        entry.value.span,
                        format!("{{{0}, {0}}} must be zero", entry.left.name),
                    ));
                }
                continue;
            }
            table[b][a] = -&p;
            table[a][b] = p;
        }
    }
    PoissonAlgebra::new(gens, table).map_err(|e| core_error(name.span, &name.name, e))
}
