//! The scenario language behind the `exotica` binary.
//!
//! A program is a sequence of lines: bindings (`let NAME = KIND ...`) and
//! commands. Comments start with `#`. Example:
//!
//! ```text
//! let D = divisor 2[0] + [1]
//! let T = torus (1,0) (1*i,0) (0,1) (0,1*i)
//! let S = structure torus_gd(D, T, k=3/2)
//! let S2 = structure conjugate(S, (0; z))
//! verify S2
//! normal S2
//! moduli gdp D
//! basis D
//! act D (1; z) (0, 0)
//! mul D (1; z) (2; 1)
//! ```
//!
//! Binding kinds are `divisor`, `torus`, `kodaira`, and `structure`;
//! structure constructors are `torus_gd(D, T, k=..)`, `torus_gdp_exp(D, T)`,
//! `torus_gdp(D, T, a=.., k=..)`, `kodaira_gd(D, K, k=..)`,
//! `kodaira_gdp(D, K, lambda=.., k=..)`, and `conjugate(S, ELEMENT)`.
//!
//! [`parse_spec`] resolves names eagerly (unbound or wrongly-typed names are
//! rejected with their line); [`run_spec`] executes in order and renders
//! either human-readable text or flat `key=value` machine records. Exit code
//! 0 means every check passed, 1 means some verification check failed, and 2
//! means a parse or validation error stopped the run. Output is a pure
//! function of (program, seed, samples), so reruns are byte-identical.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::exppoly::{vd_basis, Divisor};
use crate::homogeneous::{GroupElement, SpaceDescriptor};
use crate::moduli::{moduli_gd_torus, moduli_gdp_torus};
use crate::parse::Cursor;
use crate::scalar::GaussRat;
use crate::surfaces::{
    build_kodaira_gd, build_kodaira_gdp, build_torus_gd, build_torus_gdp, build_torus_gdp_exp,
    conjugate_system, normal_form, verify_developing_system, DevelopingSystem, KodairaGroup,
    TorusLattice,
};

/// Output rendering selected by `--format`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Text,
    Machine,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "machine" => Ok(OutputFormat::Machine),
            other => Err(format!("unknown format `{}` (expected text or machine)", other)),
        }
    }
}

/// Knobs shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub format: OutputFormat,
    pub seed: u64,
    pub samples: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { format: OutputFormat::Text, seed: 0, samples: 8 }
    }
}

/// What a name is bound to while a program runs.
enum Binding {
    Divisor(Divisor),
    Torus(TorusLattice),
    Kodaira(KodairaGroup),
    Structure(DevelopingSystem),
}

/// The statically checked kind of a binding (known at parse time).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Divisor,
    Torus,
    Kodaira,
    Structure,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Divisor => "divisor",
            Kind::Torus => "torus",
            Kind::Kodaira => "kodaira",
            Kind::Structure => "structure",
        }
    }
}

/// A raw text fragment remembered with its position, re-parsed at run time
/// once the surrounding types are known.
#[derive(Clone, Debug)]
struct Fragment {
    text: String,
    line: u32,
    col: u32,
}

/// Which model plane a `moduli` command asks about.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelKind {
    Gd,
    Gdp,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Gd => write!(f, "gd"),
            ModelKind::Gdp => write!(f, "gdp"),
        }
    }
}

enum StructureExpr {
    TorusGd { divisor: String, torus: String, k: GaussRat },
    TorusGdpExp { divisor: String, torus: String },
    TorusGdp { divisor: String, torus: String, a: GaussRat, k: GaussRat },
    KodairaGd { divisor: String, kodaira: String, k: GaussRat },
    KodairaGdp { divisor: String, kodaira: String, lambda: GaussRat, k: GaussRat },
    Conjugate { structure: String, element: Fragment },
}

enum Statement {
    LetDivisor { name: String, divisor: Divisor },
    LetTorus { name: String, generators: [(GaussRat, GaussRat); 4], line: u32 },
    LetKodaira { name: String, params: Box<KodairaParams>, line: u32 },
    LetStructure { name: String, expr: StructureExpr, line: u32 },
    Verify { name: String },
    Normal { name: String },
    Moduli { model: ModelKind, divisor: String },
    Basis { divisor: String },
    Act { divisor: String, element: Fragment, point: Fragment },
    Mul { divisor: String, lhs: Fragment, rhs: Fragment },
}

struct KodairaParams {
    a1: GaussRat,
    a3: GaussRat,
    b1: GaussRat,
    b3: GaussRat,
    c2: GaussRat,
    d2: GaussRat,
    r: u32,
}

/// A parsed program: ordered statements with all names resolved.
pub struct SpecProgram {
    statements: Vec<Statement>,
}

fn lookup(
    table: &BTreeMap<String, Kind>,
    name: &str,
    expected: Kind,
    line: u32,
) -> Result<(), Error> {
    match table.get(name) {
        None => Err(Error::UnboundName { name: name.to_string(), line }),
        Some(kind) if *kind != expected => Err(Error::TypeMismatch {
            name: name.to_string(),
            line,
            found: kind.name(),
            expected: expected.name(),
        }),
        Some(_) => Ok(()),
    }
}

fn parse_name(c: &mut Cursor<'_>) -> Result<String, Error> {
    c.skip_ws();
    c.eat_ident().ok_or_else(|| c.error("expected a name"))
}

/// Capture a balanced `( ... )` group, parentheses included.
fn capture_group(c: &mut Cursor<'_>, rest_of_line: &str) -> Result<Fragment, Error> {
    c.skip_ws();
    let col = c.col();
    let line = c.line();
    let start = rest_of_line
        .len()
        .checked_sub(remaining_len(c))
        .expect("cursor walks the same line");
    let tail = &rest_of_line[start..];
    if !tail.starts_with('(') {
        return Err(c.error("expected `(`"));
    }
    let mut depth = 0usize;
    for (i, ch) in tail.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    let text = tail[..=i].to_string();
                    c.advance_bytes(i + 1);
                    return Ok(Fragment { text, line, col });
                }
            }
            _ => {}
        }
    }
    Err(c.error("unbalanced parentheses"))
}

fn remaining_len(c: &Cursor<'_>) -> usize {
    c.remaining().len()
}

/// Parse the full program text.
pub fn parse_spec(text: &str) -> Result<SpecProgram, Error> {
    let mut statements = Vec::new();
    let mut kinds: BTreeMap<String, Kind> = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx as u32 + 1;
        let content = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let mut c = Cursor::new(content, line_no);
        c.skip_ws();
        let keyword = c.eat_ident().ok_or_else(|| c.error("expected a statement"))?;
        let statement = match keyword.as_str() {
            "let" => parse_let(&mut c, content, &mut kinds)?,
            "verify" => {
                let name = parse_name(&mut c)?;
                lookup(&kinds, &name, Kind::Structure, line_no)?;
                Statement::Verify { name }
            }
            "normal" => {
                let name = parse_name(&mut c)?;
                lookup(&kinds, &name, Kind::Structure, line_no)?;
                Statement::Normal { name }
            }
            "moduli" => {
                let model = parse_name(&mut c)?;
                let model = match model.as_str() {
                    "gd" => ModelKind::Gd,
                    "gdp" => ModelKind::Gdp,
                    other => {
                        return Err(c.error(format!(
                            "unknown model `{}` (expected gd or gdp)",
                            other
                        )))
                    }
                };
                let name = parse_name(&mut c)?;
                lookup(&kinds, &name, Kind::Divisor, line_no)?;
                Statement::Moduli { model, divisor: name }
            }
            "basis" => {
                let name = parse_name(&mut c)?;
                lookup(&kinds, &name, Kind::Divisor, line_no)?;
                Statement::Basis { divisor: name }
            }
            "act" => {
                let name = parse_name(&mut c)?;
                lookup(&kinds, &name, Kind::Divisor, line_no)?;
                let element = capture_group(&mut c, content)?;
                let point = capture_group(&mut c, content)?;
                Statement::Act { divisor: name, element, point }
            }
            "mul" => {
                let name = parse_name(&mut c)?;
                lookup(&kinds, &name, Kind::Divisor, line_no)?;
                let lhs = capture_group(&mut c, content)?;
                let rhs = capture_group(&mut c, content)?;
                Statement::Mul { divisor: name, lhs, rhs }
            }
            other => return Err(c.error(format!("unknown statement `{}`", other))),
        };
        if !c.at_end() {
            return Err(c.error("unexpected trailing input"));
        }
        statements.push(statement);
    }
    Ok(SpecProgram { statements })
}

fn parse_let(
    c: &mut Cursor<'_>,
    content: &str,
    kinds: &mut BTreeMap<String, Kind>,
) -> Result<Statement, Error> {
    let name = parse_name(c)?;
    if kinds.contains_key(&name) {
        return Err(c.error(format!("`{}` is already bound", name)));
    }
    c.skip_ws();
    c.expect('=')?;
    c.skip_ws();
    let kind = c.eat_ident().ok_or_else(|| c.error("expected a binding kind"))?;
    let line_no = c.line();
    let statement = match kind.as_str() {
        "divisor" => {
            let divisor = c.parse_divisor_expr()?;
            kinds.insert(name.clone(), Kind::Divisor);
            Statement::LetDivisor { name, divisor }
        }
        "torus" => {
            let mut gens = Vec::with_capacity(4);
            for _ in 0..4 {
                gens.push(c.parse_gauss_pair()?);
            }
            let generators: [(GaussRat, GaussRat); 4] =
                gens.try_into().expect("exactly four pairs were parsed");
            kinds.insert(name.clone(), Kind::Torus);
            Statement::LetTorus { name, generators, line: line_no }
        }
        "kodaira" => {
            let params = parse_kodaira_params(c)?;
            kinds.insert(name.clone(), Kind::Kodaira);
            Statement::LetKodaira { name, params: Box::new(params), line: line_no }
        }
        "structure" => {
            let expr = parse_structure_expr(c, content, kinds)?;
            kinds.insert(name.clone(), Kind::Structure);
            Statement::LetStructure { name, expr, line: line_no }
        }
        other => return Err(c.error(format!("unknown binding kind `{}`", other))),
    };
    Ok(statement)
}

fn parse_kodaira_params(c: &mut Cursor<'_>) -> Result<KodairaParams, Error> {
    let mut seen: BTreeMap<String, GaussRat> = BTreeMap::new();
    let mut r: Option<u32> = None;
    loop {
        c.skip_ws();
        let Some(key) = c.eat_ident() else { break };
        c.expect('=')?;
        match key.as_str() {
            "a1" | "a3" | "b1" | "b3" | "c2" | "d2" => {
                let value = c.parse_gauss_expr()?;
                if seen.insert(key.clone(), value).is_some() {
                    return Err(c.error(format!("duplicate parameter `{}`", key)));
                }
            }
            "r" => {
                if r.replace(c.parse_u32()?).is_some() {
                    return Err(c.error("duplicate parameter `r`"));
                }
            }
            other => return Err(c.error(format!("unknown kodaira parameter `{}`", other))),
        }
    }
    let mut take = |key: &str| -> Result<GaussRat, Error> {
        seen.remove(key)
            .ok_or_else(|| c.error(format!("missing kodaira parameter `{}`", key)))
    };
    Ok(KodairaParams {
        a1: take("a1")?,
        a3: take("a3")?,
        b1: take("b1")?,
        b3: take("b3")?,
        c2: take("c2")?,
        d2: take("d2")?,
        r: r.ok_or_else(|| c.error("missing kodaira parameter `r`"))?,
    })
}

fn expect_key(c: &mut Cursor<'_>, key: &str) -> Result<GaussRat, Error> {
    c.skip_ws();
    match c.eat_ident() {
        Some(word) if word == key => {}
        _ => return Err(c.error(format!("expected `{}=`", key))),
    }
    c.expect('=')?;
    c.parse_gauss_expr()
}

fn expect_comma(c: &mut Cursor<'_>) -> Result<(), Error> {
    c.skip_ws();
    c.expect(',')
}

fn parse_structure_expr(
    c: &mut Cursor<'_>,
    content: &str,
    kinds: &BTreeMap<String, Kind>,
) -> Result<StructureExpr, Error> {
    c.skip_ws();
    let tag = c.eat_ident().ok_or_else(|| c.error("expected a structure constructor"))?;
    c.skip_ws();
    c.expect('(')?;
    let line = c.line();
    let expr = match tag.as_str() {
        "torus_gd" | "torus_gdp_exp" | "torus_gdp" => {
            let divisor = parse_name(c)?;
            lookup(kinds, &divisor, Kind::Divisor, line)?;
            expect_comma(c)?;
            let torus = parse_name(c)?;
            lookup(kinds, &torus, Kind::Torus, line)?;
            match tag.as_str() {
                "torus_gd" => {
                    expect_comma(c)?;
                    let k = expect_key(c, "k")?;
                    StructureExpr::TorusGd { divisor, torus, k }
                }
                "torus_gdp_exp" => StructureExpr::TorusGdpExp { divisor, torus },
                _ => {
                    expect_comma(c)?;
                    let a = expect_key(c, "a")?;
                    expect_comma(c)?;
                    let k = expect_key(c, "k")?;
                    StructureExpr::TorusGdp { divisor, torus, a, k }
                }
            }
        }
        "kodaira_gd" | "kodaira_gdp" => {
            let divisor = parse_name(c)?;
            lookup(kinds, &divisor, Kind::Divisor, line)?;
            expect_comma(c)?;
            let kodaira = parse_name(c)?;
            lookup(kinds, &kodaira, Kind::Kodaira, line)?;
            expect_comma(c)?;
            if tag == "kodaira_gd" {
                let k = expect_key(c, "k")?;
                StructureExpr::KodairaGd { divisor, kodaira, k }
            } else {
                let lambda = expect_key(c, "lambda")?;
                expect_comma(c)?;
                let k = expect_key(c, "k")?;
                StructureExpr::KodairaGdp { divisor, kodaira, lambda, k }
            }
        }
        "conjugate" => {
            let structure = parse_name(c)?;
            lookup(kinds, &structure, Kind::Structure, line)?;
            expect_comma(c)?;
            let element = capture_group(c, content)?;
            StructureExpr::Conjugate { structure, element }
        }
        other => return Err(c.error(format!("unknown structure constructor `{}`", other))),
    };
    c.skip_ws();
    c.expect(')')?;
    Ok(expr)
}

// ---------------------------------------------------------------------------
// execution

struct Emitter {
    format: OutputFormat,
    lines: Vec<String>,
}

impl Emitter {
    fn new(format: OutputFormat) -> Self {
        Emitter { format, lines: Vec::new() }
    }

    fn text(&mut self, line: impl Into<String>) {
        if self.format == OutputFormat::Text {
            self.lines.push(line.into());
        }
    }

    fn kv(&mut self, key: &str, value: impl fmt::Display) {
        if self.format == OutputFormat::Machine {
            self.lines.push(format!("{}={}", key, value));
        }
    }

    fn error(&mut self, err: &Error, line: Option<u32>) {
        match self.format {
            OutputFormat::Text => {
                let prefix = match line {
                    Some(n) => format!("error: line {}: ", n),
                    None => "error: ".to_string(),
                };
                self.lines.push(format!("{}{}", prefix, err));
            }
            OutputFormat::Machine => {
                self.lines.push(format!("error={}", err.name()));
                if let Some(n) = line {
                    self.lines.push(format!("line={}", n));
                }
                self.lines.push(format!("detail={}", err));
            }
        }
    }
}

/// The exit code and rendered output of a run.
pub struct RunOutcome {
    pub exit_code: i32,
    pub lines: Vec<String>,
}

fn fragment_element(
    space: &SpaceDescriptor,
    fragment: &Fragment,
) -> Result<GroupElement, Error> {
    let mut c = Cursor::new_at(&fragment.text, fragment.line, fragment.col);
    let element = c.parse_element_expr(space)?;
    if c.at_end() {
        Ok(element)
    } else {
        Err(c.error("unexpected trailing input in element"))
    }
}

/// Choose `G_D` or `G'_D` for a bare element literal by its field count.
fn detect_space(d: &Divisor, fragment: &Fragment) -> SpaceDescriptor {
    if fragment.text.matches(';').count() >= 2 {
        SpaceDescriptor::Gdp(d.clone())
    } else {
        SpaceDescriptor::Gd(d.clone())
    }
}

/// Execute a parsed program.
pub fn run_spec(program: &SpecProgram, options: &RunOptions) -> RunOutcome {
    let mut emitter = Emitter::new(options.format);
    let mut env: BTreeMap<String, Binding> = BTreeMap::new();
    let mut any_failed = false;

    for statement in &program.statements {
        match execute(statement, &mut env, &mut emitter, options) {
            Ok(all_passed) => {
                if !all_passed {
                    any_failed = true;
                }
            }
            Err((err, line)) => {
                emitter.error(&err, line);
                return RunOutcome { exit_code: 2, lines: emitter.lines };
            }
        }
    }
    RunOutcome { exit_code: i32::from(any_failed), lines: emitter.lines }
}

/// Parse and run in one step.
pub fn run_text(text: &str, options: &RunOptions) -> RunOutcome {
    match parse_spec(text) {
        Ok(program) => run_spec(&program, options),
        Err(err) => {
            let mut emitter = Emitter::new(options.format);
            let line = match &err {
                Error::Parse { line, .. } => Some(*line),
                Error::UnboundName { line, .. } | Error::TypeMismatch { line, .. } => Some(*line),
                _ => None,
            };
            emitter.error(&err, line);
            RunOutcome { exit_code: 2, lines: emitter.lines }
        }
    }
}

fn get<'e>(env: &'e BTreeMap<String, Binding>, name: &str) -> &'e Binding {
    env.get(name).expect("names were resolved at parse time")
}

fn get_divisor<'e>(env: &'e BTreeMap<String, Binding>, name: &str) -> &'e Divisor {
    match get(env, name) {
        Binding::Divisor(d) => d,
        _ => unreachable!("kind was checked at parse time"),
    }
}

fn get_structure<'e>(env: &'e BTreeMap<String, Binding>, name: &str) -> &'e DevelopingSystem {
    match get(env, name) {
        Binding::Structure(s) => s,
        _ => unreachable!("kind was checked at parse time"),
    }
}

type ExecError = (Error, Option<u32>);

fn execute(
    statement: &Statement,
    env: &mut BTreeMap<String, Binding>,
    emitter: &mut Emitter,
    options: &RunOptions,
) -> Result<bool, ExecError> {
    match statement {
        Statement::LetDivisor { name, divisor } => {
            env.insert(name.clone(), Binding::Divisor(divisor.clone()));
            Ok(true)
        }
        Statement::LetTorus { name, generators, line } => {
            let lattice =
                TorusLattice::new(generators.clone()).map_err(|e| (e, Some(*line)))?;
            env.insert(name.clone(), Binding::Torus(lattice));
            Ok(true)
        }
        Statement::LetKodaira { name, params, line } => {
            let group = KodairaGroup::new(
                params.a1.clone(),
                params.a3.clone(),
                params.b1.clone(),
                params.b3.clone(),
                params.c2.clone(),
                params.d2.clone(),
                params.r,
            )
            .map_err(|e| (e, Some(*line)))?;
            env.insert(name.clone(), Binding::Kodaira(group));
            Ok(true)
        }
        Statement::LetStructure { name, expr, line } => {
            let system = build_structure(expr, env).map_err(|e| (e, Some(*line)))?;
            env.insert(name.clone(), Binding::Structure(system));
            Ok(true)
        }
        Statement::Verify { name } => {
            let system = get_structure(env, name);
            let report = verify_developing_system(system, options.samples, options.seed);
            let passed = report.all_passed();
            emitter.text(format!("verify {}", name));
            emitter.kv("command", "verify");
            emitter.kv("target", name);
            for check in report.checks() {
                emitter.text(format!("  {}", check));
                emitter.kv(&check.name, if check.passed { "pass" } else { "fail" });
                if let Some(witness) = &check.witness {
                    emitter.kv(&format!("{}.witness", check.name), witness);
                }
            }
            emitter.text(format!("  result: {}", if passed { "PASS" } else { "FAIL" }));
            emitter.kv("result", if passed { "pass" } else { "fail" });
            Ok(passed)
        }
        Statement::Normal { name } => {
            let system = get_structure(env, name);
            let form = normal_form(system).map_err(|e| (e, None))?;
            emitter.text(format!("normal {}: {}", name, form));
            emitter.kv("command", "normal");
            emitter.kv("target", name);
            emitter.kv("form", form);
            Ok(true)
        }
        Statement::Moduli { model, divisor } => {
            let d = get_divisor(env, divisor);
            let description = match model {
                ModelKind::Gd => moduli_gd_torus(d),
                ModelKind::Gdp => moduli_gdp_torus(d),
            };
            emitter.text(format!("moduli {} {}: {}", model, divisor, description));
            emitter.kv("command", "moduli");
            emitter.kv("model", model);
            emitter.kv("divisor", d);
            emitter.kv("description", &description);
            emitter.kv("components", description.component_count());
            Ok(true)
        }
        Statement::Basis { divisor } => {
            let d = get_divisor(env, divisor);
            let basis = vd_basis(d);
            let rendered: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
            emitter.text(format!("basis {}: {}", divisor, rendered.join(", ")));
            emitter.kv("command", "basis");
            emitter.kv("divisor", d);
            emitter.kv("count", basis.len());
            emitter.kv("basis", rendered.join(", "));
            Ok(true)
        }
        Statement::Act { divisor, element, point } => {
            let d = get_divisor(env, divisor);
            let space = detect_space(d, element);
            let g = fragment_element(&space, element).map_err(|e| (e, None))?;
            let mut c = Cursor::new_at(&point.text, point.line, point.col);
            let p = c.parse_point_expr().map_err(|e| (e, None))?;
            let moved = g.act_point(&p);
            emitter.text(format!("act: {}", moved));
            emitter.kv("command", "act");
            emitter.kv("element", &g);
            emitter.kv("point", &p);
            emitter.kv("result", &moved);
            Ok(true)
        }
        Statement::Mul { divisor, lhs, rhs } => {
            let d = get_divisor(env, divisor);
            let space = detect_space(d, lhs);
            let a = fragment_element(&space, lhs).map_err(|e| (e, None))?;
            let b = fragment_element(&space, rhs).map_err(|e| (e, None))?;
            let product = a.mul(&b).map_err(|e| (e, None))?;
            emitter.text(format!("mul: {}", product));
            emitter.kv("command", "mul");
            emitter.kv("result", &product);
            Ok(true)
        }
    }
}

fn build_structure(
    expr: &StructureExpr,
    env: &BTreeMap<String, Binding>,
) -> Result<DevelopingSystem, Error> {
    match expr {
        StructureExpr::TorusGd { divisor, torus, k } => {
            let d = get_divisor(env, divisor).clone();
            let t = match get(env, torus) {
                Binding::Torus(t) => t.clone(),
                _ => unreachable!("kind was checked at parse time"),
            };
            build_torus_gd(d, t, k.clone())
        }
        StructureExpr::TorusGdpExp { divisor, torus } => {
            let d = get_divisor(env, divisor).clone();
            let t = match get(env, torus) {
                Binding::Torus(t) => t.clone(),
                _ => unreachable!("kind was checked at parse time"),
            };
            build_torus_gdp_exp(d, t)
        }
        StructureExpr::TorusGdp { divisor, torus, a, k } => {
            let d = get_divisor(env, divisor).clone();
            let t = match get(env, torus) {
                Binding::Torus(t) => t.clone(),
                _ => unreachable!("kind was checked at parse time"),
            };
            build_torus_gdp(d, t, a.clone(), k.clone())
        }
        StructureExpr::KodairaGd { divisor, kodaira, k } => {
            let d = get_divisor(env, divisor).clone();
            let g = match get(env, kodaira) {
                Binding::Kodaira(g) => g.clone(),
                _ => unreachable!("kind was checked at parse time"),
            };
            build_kodaira_gd(d, g, k.clone())
        }
        StructureExpr::KodairaGdp { divisor, kodaira, lambda, k } => {
            let d = get_divisor(env, divisor).clone();
            let g = match get(env, kodaira) {
                Binding::Kodaira(g) => g.clone(),
                _ => unreachable!("kind was checked at parse time"),
            };
            build_kodaira_gdp(d, g, lambda.clone(), k.clone())
        }
        StructureExpr::Conjugate { structure, element } => {
            let system = get_structure(env, structure);
            let g = fragment_element(system.model(), element)?;
            conjugate_system(system, &g)
        }
    }
}

// ---------------------------------------------------------------------------
// one-shot subcommands

/// `exotica basis DIVISOR`.
pub fn run_basis(divisor_text: &str, format: OutputFormat) -> RunOutcome {
    let mut emitter = Emitter::new(format);
    match crate::parse::parse_divisor(divisor_text) {
        Ok(d) => {
            let basis = vd_basis(&d);
            let rendered: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
            emitter.text(format!("basis {}: {}", d, rendered.join(", ")));
            emitter.kv("command", "basis");
            emitter.kv("divisor", &d);
            emitter.kv("count", basis.len());
            emitter.kv("basis", rendered.join(", "));
            RunOutcome { exit_code: 0, lines: emitter.lines }
        }
        Err(err) => {
            emitter.error(&err, None);
            RunOutcome { exit_code: 2, lines: emitter.lines }
        }
    }
}

/// `exotica moduli MODEL DIVISOR`.
pub fn run_moduli(model_text: &str, divisor_text: &str, format: OutputFormat) -> RunOutcome {
    let mut emitter = Emitter::new(format);
    let model = match model_text {
        "gd" => ModelKind::Gd,
        "gdp" => ModelKind::Gdp,
        other => {
            let err = Error::Parse {
                line: 1,
                col: 1,
                message: format!("unknown model `{}` (expected gd or gdp)", other),
            };
            emitter.error(&err, None);
            return RunOutcome { exit_code: 2, lines: emitter.lines };
        }
    };
    match crate::parse::parse_divisor(divisor_text) {
        Ok(d) => {
            let description = match model {
                ModelKind::Gd => moduli_gd_torus(&d),
                ModelKind::Gdp => moduli_gdp_torus(&d),
            };
            emitter.text(format!("moduli {} {}: {}", model, d, description));
            emitter.kv("command", "moduli");
            emitter.kv("model", model);
            emitter.kv("divisor", &d);
            emitter.kv("description", &description);
            emitter.kv("components", description.component_count());
            RunOutcome { exit_code: 0, lines: emitter.lines }
        }
        Err(err) => {
            emitter.error(&err, None);
            RunOutcome { exit_code: 2, lines: emitter.lines }
        }
    }
}
