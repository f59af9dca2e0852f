//! Command implementations. Each command builds a [`Report`].

use std::fmt;

use num_traits::Zero;
use rinehart_core::extensions::{
    build_total, canonical_inclusion, curvature_of, reconstruct_extension, theorem_identities_report, ExtensionData,
    Tensor3,
};
use rinehart_core::invariant_theory::{
    check_reductive, hilbert_preimage, homogeneous_invariant_gap, is_sp, DualPairScene, HilbertPreimage,
    InfeasibleWitness, ReductivePair, SymMatrixQ, NUMERIC_TOLERANCE, SO3_R3_CAVEAT,
};
use rinehart_core::linalg::QMatrix;
use rinehart_core::lie_rinehart::PoissonAlgebra;
use rinehart_core::{presets, LieRinehartPresentation, Poly, Rational, TautologicalAlgebra, Var};
use serde_json::{json, Value};

use crate::dsl::{self, Diagnostic, Expr, Named, Object, Program, RunDecl, Scope};
use crate::report::{Check, Report, Verdict};

#[derive(Debug)]
pub enum CliError {
    /// A positioned diagnostic in `source` (a file path or argument label).
    Diagnostic { source: String, diagnostic: Diagnostic },
    Usage(String),
    Engine(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Diagnostic { source, diagnostic } => f.write_str(&diagnostic.render(source)),
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Engine(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type CmdResult<T> = Result<T, CliError>;

fn engine(e: rinehart_core::Error) -> CliError {
    CliError::Engine(e.to_string())
}

pub struct Loaded {
    pub path: String,
    pub source: String,
    pub program: Program,
}

pub fn load_source(path: &str, source: String) -> CmdResult<Loaded> {
    let located = |diagnostic| CliError::Diagnostic {
        source: path.to_string(),
        diagnostic,
    };
    let doc = dsl::parse(&source).map_err(located)?;
    let program = dsl::lower(&doc).map_err(located)?;
    Ok(Loaded {
        path: path.to_string(),
        source,
        program,
    })
}

pub fn load(path: &str) -> CmdResult<Loaded> {
    let source = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?;
    load_source(path, source)
}

fn with_article(kind: &str) -> String {
    let article = if kind.starts_with(['a', 'e']) { "an" } else { "a" };
    format!("{article} {kind}")
}

fn select<'p>(loaded: &'p Loaded, name: Option<&str>, kinds: &[&str]) -> CmdResult<Vec<&'p Named>> {
    let accepts = |n: &Named| kinds.contains(&n.object.kind());
    match name {
        Some(name) => {
            let n = loaded
                .program
                .get(name)
                .ok_or_else(|| CliError::Usage(format!("no declaration named `{name}` in {}", loaded.path)))?;
            if !accepts(n) {
                return Err(CliError::Usage(format!(
                    "`{name}` is {}, expected {}",
                    with_article(n.object.kind()),
                    kinds.join(" or ")
                )));
            }
            Ok(vec![n])
        }
        None => {
            let all: Vec<&Named> = loaded.program.objects.iter().filter(|n| accepts(n)).collect();
            if all.is_empty() {
                return Err(CliError::Usage(format!(
                    "{} declares no {}",
                    loaded.path,
                    kinds.join(" or ")
                )));
            }
            Ok(all)
        }
    }
}

// ---------------------------------------------------------------- rendering

fn strs<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(|x| Value::String(x.to_string())).collect())
}

fn var_names(vars: &[Var]) -> Value {
    strs(vars.iter().map(|v| v.name()))
}

fn combination(coeffs: &[Poly], basis: &[Var]) -> Poly {
    coeffs
        .iter()
        .zip(basis)
        .fold(Poly::zero(), |acc, (c, v)| acc + c * &Poly::var(v))
}

fn rational_combination(coeffs: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in coeffs.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if mag == Rational::from_integer(1.into()) {
            out.push_str(label);
        } else {
            out.push_str(&format!("{mag}*{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn anchor_lines(p: &LieRinehartPresentation) -> Value {
    let markers: Vec<Var> = p.base_vars().iter().map(|b| Var::fiber(&format!("d{}", b.name()))).collect();
    strs(
        p.l_basis()
            .iter()
            .zip(p.anchor())
            .map(|(e, row)| format!("{} -> {}", e.name(), combination(row, &markers))),
    )
}

fn bracket_lines(p: &LieRinehartPresentation) -> Value {
    let b = p.l_basis();
    let mut out = Vec::new();
    for j in 0..b.len() {
        for k in j + 1..b.len() {
            let v = combination(&p.structure()[j][k], b);
            if !v.is_zero() {
                out.push(format!("[{}, {}] = {v}", b[j].name(), b[k].name()));
            }
        }
    }
    strs(out)
}

fn tensor_lines(t: &Tensor3, left: &[Var], right: &[Var], target: &[Var], antisymmetric: bool) -> Value {
    let mut out = Vec::new();
    for (j, row) in t.iter().enumerate() {
        for (k, entry) in row.iter().enumerate() {
            if antisymmetric && k <= j {
                continue;
            }
            let v = combination(entry, target);
            if !v.is_zero() {
                out.push(format!("[{}, {}] = {v}", left[j].name(), right[k].name()));
            }
        }
    }
    strs(out)
}

fn matrix_rows(m: &QMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| strs((0..m.cols()).map(|j| m[(i, j)].clone()))).collect())
}

fn prefixed(prefix: &str, name: &str) -> String {
    format!("{prefix}/{name}")
}

// ------------------------------------------------------------ object checks

fn axioms_check(name: &str, p: &LieRinehartPresentation) -> Check {
    let r = p.check_axioms();
    let b = p.l_basis();
    let mut c = Check::new(prefixed(name, "axioms"), Verdict::from_ok(r.passed()))
        .detail("base", var_names(p.base_vars()))
        .detail("basis", var_names(b))
        .detail("triples_checked", r.triples_checked)
        .detail("pairs_checked", r.pairs_checked);
    if let Some(w) = &r.jacobi_witness {
        let (i, j, k) = w.triple;
        c = c.witness(json!({
            "law": "jacobi",
            "triple": [b[i].name(), b[j].name(), b[k].name()],
            "indices": [i, j, k],
            "jacobiator": combination(&w.jacobiator, b).to_string(),
        }));
    } else if let Some(w) = &r.anchor_witness {
        let (j, k) = w.pair;
        c = c.witness(json!({
            "law": "anchor_morphism",
            "pair": [b[j].name(), b[k].name()],
            "indices": [j, k],
            "variable": w.var.name(),
            "defect": w.defect.to_string(),
        }));
    }
    c
}

fn laws_check(name: &str, p: &LieRinehartPresentation, seed: u64) -> Check {
    let t = TautologicalAlgebra::new(p);
    let samples = t.default_samples(seed);
    let r = t.check_laws_sampled(&samples);
    let mut c = Check::new(prefixed(name, "bracket_laws"), Verdict::from_ok(r.ok()))
        .detail("samples", r.samples)
        .detail("max_fiber_degree", 3);
    let first = [("antisymmetry", &r.antisymmetry), ("leibniz", &r.leibniz), ("jacobi", &r.jacobi)]
        .into_iter()
        .find_map(|(law, w)| w.as_ref().map(|w| (law, w)));
    if let Some((law, (i, defect))) = first {
        let (u, v, w) = &samples[*i];
        c = c.witness(json!({
            "law": law,
            "sample": i,
            "u": u.to_string(),
            "v": v.to_string(),
            "w": w.to_string(),
            "defect": defect.to_string(),
        }));
    }
    c
}

fn potential_check(name: &str, p: &LieRinehartPresentation) -> Check {
    let r = TautologicalAlgebra::new(p).check_potential();
    let mut c = Check::new(prefixed(name, "potential"), Verdict::from_ok(r.ok())).detail("pairs", r.entries.len());
    if let Some(e) = r.entries.iter().find(|e| !e.ok()) {
        c = c.witness(json!({
            "pair": [e.pair.0.name(), e.pair.1.name()],
            "kind": e.kind.as_str(),
            "d_theta": e.d_theta.to_string(),
            "pi": e.pi.to_string(),
        }));
    }
    c
}

fn identities_check(name: &str, ext: &ExtensionData) -> CmdResult<Check> {
    let r = theorem_identities_report(ext).map_err(engine)?;
    let mut counts = serde_json::Map::new();
    for i in &r.checks {
        counts.insert(i.name.to_string(), i.checked.into());
    }
    let mut c = Check::new(prefixed(name, "identities"), Verdict::from_ok(r.ok())).detail("checked", counts);
    if let Some(i) = r.checks.iter().find(|i| !i.ok()) {
        let f = i.failure.as_ref().expect("failed identity has a failure");
        c = c.witness(json!({
            "identity": i.name,
            "statement": i.statement,
            "at": f.at,
            "expected": f.expected.to_string(),
            "got": f.got.to_string(),
        }));
    }
    Ok(c)
}

fn poisson_jacobi_check(name: &str, p: &PoissonAlgebra) -> Check {
    let g = p.generators();
    let w = p.jacobi_witness();
    let mut c = Check::new(prefixed(name, "jacobi"), Verdict::from_ok(w.is_none())).detail("generators", var_names(g));
    if let Some(((i, j, k), v)) = w {
        c = c.witness(json!({
            "triple": [g[i].name(), g[j].name(), g[k].name()],
            "indices": [i, j, k],
            "jacobiator": v.to_string(),
        }));
    }
    c
}

fn scene_checks(name: &str, scene: &DualPairScene, with_deficiency: bool) -> CmdResult<Vec<Check>> {
    let closure = scene.closure_table().map_err(engine)?;
    let labels: Vec<String> = closure.invariants.iter().map(|i| i.label()).collect();
    let table: Vec<Value> = closure
        .table
        .iter()
        .map(|row| strs(row.iter().map(|e| rational_combination(e, &labels))))
        .collect();
    let l = scene.l();
    let expected = l * (2 * l + 1);
    let closed = closure.dim() == expected && closure.is_antisymmetric() && closure.satisfies_jacobi();
    let mut out = vec![Check::new(prefixed(name, "closure"), Verdict::from_ok(closed))
        .detail("s", scene.s())
        .detail("l", l)
        .detail("dimension", closure.dim())
        .detail("expected_dimension", expected)
        .detail("invariants", strs(&labels))
        .detail("table", table)];

    let iso = scene.verify_sp_isomorphism().map_err(engine)?;
    let mut c = Check::new(prefixed(name, "sp_isomorphism"), Verdict::from_ok(iso.ok()))
        .detail("dimension", iso.dimension)
        .detail("expected_dimension", iso.expected_dimension)
        .detail("all_in_sp", iso.all_in_sp);
    if let Some((a, b)) = &iso.failure {
        c = c.witness(json!({ "pair": [a, b] }));
    }
    out.push(c);

    let m = scene.momentum_property_check();
    let mut c = Check::new(prefixed(name, "momentum_property"), Verdict::from_ok(m.ok()))
        .detail("pairs_checked", m.pairs_checked);
    if let Some(f) = &m.failure {
        c = c.witness(json!({
            "pair": [f.left, f.right],
            "bracket": f.bracket.to_string(),
            "expected": f.expected.to_string(),
        }));
    }
    out.push(c);

    if with_deficiency {
        out.push(deficiency_check(name, scene));
    }
    Ok(out)
}

fn deficiency_check(name: &str, scene: &DualPairScene) -> Check {
    let d = scene.sal_deficiency_report();
    let missing: Vec<&str> = d.entries.iter().filter(|e| !e.member).map(|e| e.label.as_str()).collect();
    let members: Vec<&str> = d.entries.iter().filter(|e| e.member).map(|e| e.label.as_str()).collect();
    Check::new(prefixed(name, "deficiency"), Verdict::from_ok(d.certified()))
        .detail("degree_two_dimension", d.component_dim)
        .detail("generated", strs(members))
        .detail("missing", strs(missing))
        .detail("kinetic_energy", d.kinetic_energy.to_string())
        .detail("kinetic_energy_member", d.kinetic_member)
        .detail("kinetic_energy_squared_member", d.kinetic_squared_member)
}

fn object_checks(n: &Named, seed: u64) -> CmdResult<Vec<Check>> {
    let name = n.name.name.as_str();
    Ok(match &n.object {
        Object::Algebra(p) => vec![axioms_check(name, p), laws_check(name, p, seed), potential_check(name, p)],
        Object::Extension(e) => {
            let total = build_total(e).map_err(engine)?;
            vec![identities_check(name, e)?, axioms_check(&prefixed(name, "total"), total.presentation())]
        }
        Object::Poisson(p) => vec![poisson_jacobi_check(name, p)],
        Object::Scene(s) => scene_checks(name, s, true)?,
    })
}

// ----------------------------------------------------------------- commands

pub fn check(loaded: &Loaded, name: Option<&str>, seed: u64) -> CmdResult<Report> {
    let mut report = Report::new("check", loaded.source.as_bytes(), seed);
    for n in select(loaded, name, &["algebra", "extension", "poisson", "scene"])? {
        report.checks.extend(object_checks(n, seed)?);
    }
    Ok(report)
}

/// Lowers a bracket argument in the context of `target`, reporting symbols
/// that belong to a different declaration as a context mismatch.
fn lower_in_context(loaded: &Loaded, target: &Named, e: &Expr, source: &str) -> CmdResult<Poly> {
    let symbols = target.object.symbols();
    let located = |diagnostic| CliError::Diagnostic {
        source: source.to_string(),
        diagnostic,
    };
    let known = |s: &str| symbols.iter().any(|v| v.name() == s);
    if let Some((bad, span)) = dsl::first_unknown(e, &known) {
        let owner = loaded
            .program
            .objects
            .iter()
            .find(|o| o.object.symbols().iter().any(|v| v.name() == bad));
        let message = match owner {
            Some(o) => format!(
                "context mismatch: `{bad}` belongs to `{}`, not to `{}`",
                o.name.name, target.name.name
            ),
            None => format!("unknown symbol `{bad}`"),
        };
        return Err(located(Diagnostic::semantic(span, message)));
    }
    dsl::lower_expr(e, &Scope::new(&symbols)).map_err(located)
}

fn bracket_of(target: &Named, u: &Poly, v: &Poly) -> CmdResult<Poly> {
    Ok(match &target.object {
        Object::Algebra(p) => TautologicalAlgebra::new(p).bracket(u, v),
        Object::Extension(e) => {
            let total = build_total(e).map_err(engine)?;
            TautologicalAlgebra::new(total.presentation()).bracket(u, v)
        }
        Object::Poisson(p) => p.bracket(u, v),
        Object::Scene(s) => s.bracket(u, v),
    })
}

fn bracket_check(loaded: &Loaded, target: &Named, args: [(&Expr, &str); 2]) -> CmdResult<Check> {
    let u = lower_in_context(loaded, target, args[0].0, args[0].1)?;
    let v = lower_in_context(loaded, target, args[1].0, args[1].1)?;
    let result = bracket_of(target, &u, &v)?;
    Ok(Check::new(prefixed(&target.name.name, "bracket"), Verdict::Pass)
        .detail("left", u.to_string())
        .detail("right", v.to_string())
        .detail("result", result.to_string()))
}

pub fn bracket(loaded: &Loaded, name: Option<&str>, left: &str, right: &str) -> CmdResult<Report> {
    let target = match name {
        Some(_) => select(loaded, name, &["algebra", "extension", "poisson", "scene"])?[0],
        None => select(loaded, None, &["algebra"])?[0],
    };
    let parse = |src: &str, label: &str| {
        dsl::parse_expr(src).map_err(|diagnostic| CliError::Diagnostic {
            source: label.to_string(),
            diagnostic,
        })
    };
    let (u, v) = (parse(left, "<left>")?, parse(right, "<right>")?);
    let mut input = loaded.source.clone().into_bytes();
    input.extend_from_slice(format!("\n{left}\n{right}").as_bytes());
    let mut report = Report::new("bracket", &input, 0);
    report.checks.push(bracket_check(loaded, target, [(&u, "<left>"), (&v, "<right>")])?);
    Ok(report)
}

fn reconstruct_check(name: &str, p: &LieRinehartPresentation) -> CmdResult<Check> {
    let r = TautologicalAlgebra::new(p).reconstruct().map_err(engine)?;
    let mut c = Check::new(prefixed(name, "reconstruct"), Verdict::from_ok(&r == p))
        .detail("base", var_names(r.base_vars()))
        .detail("basis", var_names(r.l_basis()))
        .detail("anchor", anchor_lines(&r))
        .detail("brackets", bracket_lines(&r));
    if &r != p {
        c = c.witness(json!({ "expected_brackets": bracket_lines(p), "expected_anchor": anchor_lines(p) }));
    }
    Ok(c)
}

pub fn reconstruct(loaded: &Loaded, name: Option<&str>) -> CmdResult<Report> {
    let mut report = Report::new("reconstruct", loaded.source.as_bytes(), 0);
    for n in select(loaded, name, &["algebra"])? {
        let Object::Algebra(p) = &n.object else { unreachable!() };
        report.checks.push(reconstruct_check(&n.name.name, p)?);
    }
    Ok(report)
}

fn extensions<'p>(loaded: &'p Loaded, name: Option<&str>) -> CmdResult<Vec<(&'p str, &'p ExtensionData)>> {
    Ok(select(loaded, name, &["extension"])?
        .into_iter()
        .map(|n| match &n.object {
            Object::Extension(e) => (n.name.name.as_str(), e),
            _ => unreachable!(),
        })
        .collect())
}

fn build_extension_checks(name: &str, ext: &ExtensionData) -> CmdResult<Vec<Check>> {
    let split = build_total(ext).map_err(engine)?;
    let p = split.presentation();
    let pick = |idx: &[usize]| var_names(&idx.iter().map(|&i| p.l_basis()[i].clone()).collect::<Vec<_>>());
    let total = Check::new(prefixed(name, "total"), Verdict::Pass)
        .detail("base", var_names(p.base_vars()))
        .detail("basis", var_names(p.l_basis()))
        .detail("prime", pick(split.prime()))
        .detail("double_prime", pick(split.double_prime()))
        .detail("anchor", anchor_lines(p))
        .detail("brackets", bracket_lines(p));
    Ok(vec![total, axioms_check(&prefixed(name, "total"), p)])
}

pub fn build_extension(loaded: &Loaded, name: Option<&str>) -> CmdResult<Report> {
    let mut report = Report::new("build-extension", loaded.source.as_bytes(), 0);
    for (n, ext) in extensions(loaded, name)? {
        report.checks.extend(build_extension_checks(n, ext)?);
    }
    Ok(report)
}

fn curvature_check(name: &str, ext: &ExtensionData) -> CmdResult<Check> {
    let split = build_total(ext).map_err(engine)?;
    let omega = curvature_of(&split, &canonical_inclusion(&split)).map_err(engine)?;
    let (lp, ld) = (ext.l_prime().l_basis(), ext.l_double_prime().l_basis());
    let same = &omega == ext.omega();
    let mut c = Check::new(prefixed(name, "curvature"), Verdict::from_ok(same))
        .detail("connection", "canonical inclusion")
        .detail("omega", tensor_lines(&omega, ld, ld, lp, true));
    if !same {
        c = c.witness(json!({ "declared": tensor_lines(ext.omega(), ld, ld, lp, true) }));
    }
    Ok(c)
}

pub fn curvature(loaded: &Loaded, name: Option<&str>) -> CmdResult<Report> {
    let mut report = Report::new("curvature", loaded.source.as_bytes(), 0);
    for (n, ext) in extensions(loaded, name)? {
        report.checks.push(curvature_check(n, ext)?);
    }
    Ok(report)
}

fn reconstruct_extension_check(name: &str, ext: &ExtensionData) -> CmdResult<Check> {
    let split = build_total(ext).map_err(engine)?;
    let (r, _) = reconstruct_extension(&split).map_err(engine)?;
    let (lp, ld) = (r.l_prime().l_basis(), r.l_double_prime().l_basis());
    let mismatch = [
        ("lprime", r.l_prime() == ext.l_prime()),
        ("ldoubleprime", r.l_double_prime() == ext.l_double_prime()),
        ("nabla", r.nabla() == ext.nabla()),
        ("omega", r.omega() == ext.omega()),
    ]
    .into_iter()
    .find(|(_, ok)| !ok);
    let mut c = Check::new(prefixed(name, "reconstruct_extension"), Verdict::from_ok(mismatch.is_none()))
        .detail("lprime", var_names(lp))
        .detail("ldoubleprime", var_names(ld))
        .detail("ldoubleprime_anchor", anchor_lines(r.l_double_prime()))
        .detail("nabla", tensor_lines(r.nabla(), ld, lp, lp, false))
        .detail("omega", tensor_lines(r.omega(), ld, ld, lp, true));
    if let Some((part, _)) = mismatch {
        c = c.witness(json!({ "differs": part }));
    }
    Ok(c)
}

pub fn reconstruct_ext(loaded: &Loaded, name: Option<&str>) -> CmdResult<Report> {
    let mut report = Report::new("reconstruct-extension", loaded.source.as_bytes(), 0);
    for (n, ext) in extensions(loaded, name)? {
        report.checks.push(reconstruct_extension_check(n, ext)?);
    }
    Ok(report)
}

pub const RUN_COMMANDS: [&str; 6] = [
    "check",
    "bracket",
    "reconstruct",
    "build_extension",
    "curvature",
    "reconstruct_extension",
];

fn run_decl(loaded: &Loaded, run: &RunDecl, seed: u64) -> CmdResult<Vec<Check>> {
    let located = |diagnostic| CliError::Diagnostic {
        source: loaded.path.clone(),
        diagnostic,
    };
    let cmd = run.command.name.as_str();
    if !RUN_COMMANDS.contains(&cmd) {
        let list: Vec<String> = RUN_COMMANDS.iter().map(|c| format!("`{c}`")).collect();
        return Err(located(Diagnostic::semantic(
            run.command.span,
            format!("unknown command `{cmd}`, expected one of {}", list.join(", ")),
        )));
    }
    let arity = if cmd == "bracket" { 2 } else { 0 };
    if run.args.len() != arity {
        return Err(located(Diagnostic::semantic(
            run.command.span,
            format!("`{cmd}` expects {arity} arguments, found {}", run.args.len()),
        )));
    }
    let target = loaded.program.get(&run.target.name).expect("lowering resolved run targets");
    let wrong_kind = |expected: &str| {
        located(Diagnostic::semantic(
            run.target.span,
            format!(
                "`{cmd}` needs {expected}, but `{}` is {}",
                run.target.name,
                with_article(target.object.kind())
            ),
        ))
    };
    let name = target.name.name.as_str();
    match (cmd, &target.object) {
        ("check", _) => object_checks(target, seed),
        ("bracket", _) => Ok(vec![bracket_check(
            loaded,
            target,
            [(&run.args[0], &loaded.path), (&run.args[1], &loaded.path)],
        )?]),
        ("reconstruct", Object::Algebra(p)) => Ok(vec![reconstruct_check(name, p)?]),
        ("reconstruct", _) => Err(wrong_kind("an algebra")),
        ("build_extension", Object::Extension(e)) => build_extension_checks(name, e),
        ("curvature", Object::Extension(e)) => Ok(vec![curvature_check(name, e)?]),
        ("reconstruct_extension", Object::Extension(e)) => Ok(vec![reconstruct_extension_check(name, e)?]),
        _ => Err(wrong_kind("an extension")),
    }
}

pub fn run(loaded: &Loaded, seed: u64) -> CmdResult<Report> {
    if loaded.program.runs.is_empty() {
        return Err(CliError::Usage(format!("{} contains no `run` declarations", loaded.path)));
    }
    let mut report = Report::new("run", loaded.source.as_bytes(), seed);
    for r in &loaded.program.runs {
        report.checks.extend(run_decl(loaded, r, seed)?);
    }
    Ok(report)
}

// -------------------------------------------------------------------- demos

pub fn demo_dual_pair(s: usize, l: usize) -> CmdResult<Report> {
    let scene = DualPairScene::new(s, l).map_err(engine)?;
    let mut report = Report::new("demo dual-pair", format!("dual-pair s={s} l={l}").as_bytes(), 0);
    report.checks = scene_checks("dual_pair", &scene, true)?;
    Ok(report)
}

pub fn demo_so3_r3() -> CmdResult<Report> {
    let scene = DualPairScene::so3_r3();
    let mut report = Report::new("demo so3-r3", b"so3-r3", 0);
    let invs = scene.invariant_generators();
    let momenta = scene.angular_momenta();
    let mut failure = None;
    'outer: for (a, m) in momenta.iter().enumerate() {
        for i in &invs {
            let b = scene.bracket(m, &i.value);
            if !b.is_zero() {
                failure = Some(json!({ "momentum": a + 1, "invariant": i.label(), "bracket": b.to_string() }));
                break 'outer;
            }
        }
    }
    let mut c = Check::new("so3_r3/invariants", Verdict::from_ok(failure.is_none()))
        .detail(
            "invariants",
            Value::Array(
                invs.iter()
                    .map(|i| json!({ "label": i.label(), "value": i.value.to_string() }))
                    .collect(),
            ),
        )
        .detail("angular_momenta", strs(&momenta))
        .detail("caveat", SO3_R3_CAVEAT);
    if let Some(w) = failure {
        c = c.witness(w);
    }
    report.checks.push(c);
    report.checks.extend(scene_checks("so3_r3", &scene, true)?);
    Ok(report)
}

pub const HOMOGENEOUS_PRESETS: [&str; 3] = ["so3-so2", "gxg-so3", "upper-triangular"];

pub fn demo_homogeneous(preset: &str, degree_bound: u32) -> CmdResult<Report> {
    let pair: ReductivePair = match preset {
        "so3-so2" => presets::so3_so2(),
        "gxg-so3" => presets::gxg_so3(),
        "upper-triangular" => presets::upper_triangular_pair(),
        other => {
            return Err(CliError::Usage(format!(
                "unknown preset `{other}`, expected one of {}",
                HOMOGENEOUS_PRESETS.join(", ")
            )))
        }
    };
    let mut report = Report::new("demo homogeneous", format!("homogeneous {preset} {degree_bound}").as_bytes(), 0);
    let names = pair.g().names();
    let pick = |idx: &[usize]| strs(idx.iter().map(|&i| names[i].clone()));
    let r = check_reductive(&pair);
    let mut c = Check::new("homogeneous/reductive", Verdict::from_ok(r.reductive()))
        .detail("preset", preset)
        .detail("h", pick(pair.h()))
        .detail("q", pick(pair.q()))
        .detail("h_q_in_q", r.h_q_in_q)
        .detail("q_q_in_h", r.q_q_in_h);
    if let Some(v) = &r.violation {
        let label = |c: &[Rational]| rational_combination(c, names);
        c = c.witness(json!({
            "inclusion": v.inclusion,
            "pair": [v.pair.0, v.pair.1],
            "bracket": label(&v.bracket),
        }));
    }
    report.checks.push(c);
    let gap = homogeneous_invariant_gap(&pair, degree_bound);
    let rows: Vec<Value> = gap
        .rows
        .iter()
        .map(|r| json!({ "degree": r.degree, "invariant_dim": r.invariant_dim, "from_q_invariants": r.from_q_invariants }))
        .collect();
    let gap_degrees: Vec<u32> = gap
        .rows
        .iter()
        .filter(|r| r.invariant_dim != r.from_q_invariants)
        .map(|r| r.degree)
        .collect();
    report.checks.push(
        Check::new("homogeneous/invariant_gap", Verdict::Pass)
            .detail("q_invariant_dim", gap.q_invariant_dim)
            .detail("rows", rows)
            .detail("gap_degrees", gap_degrees),
    );
    Ok(report)
}

fn preimage_check(gram: &SymMatrixQ, s: usize) -> Check {
    let result = hilbert_preimage(gram, s);
    let verdict = match &result {
        HilbertPreimage::Exact { .. } => Verdict::Pass,
        HilbertPreimage::Numeric { residual, .. } => Verdict::from_ok(*residual <= NUMERIC_TOLERANCE),
        HilbertPreimage::Infeasible(_) => Verdict::Infeasible,
    };
    let c = Check::new("hilbert/preimage", verdict)
        .detail("s", s)
        .detail("rank", gram.rank())
        .detail("gram", matrix_rows(gram.matrix()));
    match result {
        HilbertPreimage::Exact { vectors } => c
            .detail("method", "exact")
            .detail("vectors", Value::Array(vectors.iter().map(strs).collect())),
        HilbertPreimage::Numeric { vectors, residual } => c
            .detail("method", "numeric")
            .detail("vectors", json!(vectors))
            .detail("residual", residual)
            .detail("tolerance", NUMERIC_TOLERANCE),
        HilbertPreimage::Infeasible(InfeasibleWitness::NegativeDirection { vector, value }) => c.witness(json!({
            "reason": "negative direction",
            "vector": strs(&vector),
            "value": value.to_string(),
        })),
        HilbertPreimage::Infeasible(InfeasibleWitness::RankExcess { rank, s }) => {
            c.witness(json!({ "reason": "rank exceeds s", "rank": rank, "s": s }))
        }
    }
}

pub fn parse_point(text: &str) -> CmdResult<Vec<Rational>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<Rational>()
                .map_err(|_| CliError::Usage(format!("`{t}` is not a rational number")))
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> CmdResult<QMatrix> {
    let rows: Vec<Vec<Rational>> = text.split(';').map(parse_point).collect::<CmdResult<_>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Usage("matrix must be square, rows separated by `;`".into()));
    }
    Ok(QMatrix::from_rows(rows))
}

pub fn hilbert_point(s: usize, l: usize, point: &str) -> CmdResult<Report> {
    let scene = DualPairScene::new(s, l).map_err(engine)?;
    let coords = parse_point(point)?;
    let gram = scene.hilbert_map(&coords).map_err(engine)?;
    let bound = s.min(l);
    let ok = gram.is_psd() && gram.rank() <= bound;
    let mut report = Report::new("hilbert", format!("hilbert s={s} l={l} point={point}").as_bytes(), 0);
    report.checks.push(
        Check::new("hilbert/map", Verdict::from_ok(ok))
            .detail("s", s)
            .detail("l", l)
            .detail("gram", matrix_rows(gram.matrix()))
            .detail("psd", gram.is_psd())
            .detail("rank", gram.rank())
            .detail("rank_bound", bound),
    );
    report.checks.push(preimage_check(&gram, s));
    Ok(report)
}

pub fn hilbert_gram(s: usize, matrix: &str) -> CmdResult<Report> {
    let gram = SymMatrixQ::new(parse_matrix(matrix)?).map_err(engine)?;
    let mut report = Report::new("hilbert", format!("hilbert s={s} gram={matrix}").as_bytes(), 0);
    report.checks.push(preimage_check(&gram, s));
    Ok(report)
}

pub fn momentum_point(s: usize, l: usize, point: &str) -> CmdResult<Report> {
    let scene = DualPairScene::new(s, l).map_err(engine)?;
    let coords = parse_point(point)?;
    let m = scene.momentum_matrix(&coords).map_err(engine)?;
    let bound = s.min(2 * l);
    let in_sp = is_sp(&m);
    let rank = m.rank();
    let mut report = Report::new("momentum", format!("momentum s={s} l={l} point={point}").as_bytes(), 0);
    report.checks.push(
        Check::new("momentum/matrix", Verdict::from_ok(in_sp && rank <= bound))
            .detail("s", s)
            .detail("l", l)
            .detail("matrix", matrix_rows(&m))
            .detail("in_sp", in_sp)
            .detail("rank", rank)
            .detail("rank_bound", bound),
    );
    Ok(report)
}
