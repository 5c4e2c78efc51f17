//! The session language: declarations of rings, ideals, modules, Serre
//! classes, loci and sections, and commands over them.
//!
//! [`parse_session`] does the syntax parse plus a static pass (unknown
//! identifiers, homogeneity). [`Session`] executes statements in order and
//! produces one [`Record`] per statement.

mod ast;
mod parser;

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

pub use ast::*;
pub use parser::{parse_line, parse_statements, ParseError};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite;
use crate::groebner::HomogeneousIdeal;
use crate::grmodules::ModulePresentation;
use crate::poly::{GradedRing, Polynomial};
use crate::proj::ThomasonDatum;
use crate::serre::{self, SerreSupport};
use crate::sheaf::{self, BasicOpen, SectionElement};

/// The demonstration session shipped with the crate.
pub const DEMO_SESSION: &str = include_str!("../../sessions/demo.projlat");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ring,
    Ideal,
    Module,
    Serre,
    Locus,
    Section,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Ideal => "ideal",
            Kind::Module => "module",
            Kind::Serre => "serre class",
            Kind::Locus => "locus",
            Kind::Section => "section",
        }
    }
}

/// Static environment: what each name is bound to and which ring is active.
#[derive(Debug, Clone, Default)]
pub struct Checker {
    rings: HashMap<String, Arc<GradedRing>>,
    kinds: HashMap<String, Kind>,
    active: Option<Arc<GradedRing>>,
}

fn eval_expr(e: &Expr, ring: &Arc<GradedRing>) -> Result<Polynomial> {
    Ok(match e {
        Expr::Num(r) => {
            let c = ring.field().from_rational(r).ok_or_else(|| {
                Error::InvalidRing(format!("coefficient {r} is undefined in {}", ring.field()))
            })?;
            Polynomial::constant(ring, c)
        }
        Expr::Var(v) => match ring.var_index(v) {
            Some(i) => ring.var(i),
            None => return Err(Error::UnknownIdentifier(v.clone())),
        },
        Expr::Neg(a) => -&eval_expr(a, ring)?,
        Expr::Add(a, b) => &eval_expr(a, ring)? + &eval_expr(b, ring)?,
        Expr::Sub(a, b) => &eval_expr(a, ring)? - &eval_expr(b, ring)?,
        Expr::Mul(a, b) => &eval_expr(a, ring)? * &eval_expr(b, ring)?,
        Expr::Pow(a, k) => eval_expr(a, ring)?.pow(*k),
    })
}

fn lone_name(gens: &IdealArg) -> Option<&str> {
    match gens.as_slice() {
        [Expr::Var(v)] => Some(v),
        _ => None,
    }
}

impl Checker {
    pub fn new() -> Self {
        Self::default()
    }

    fn ring(&self) -> std::result::Result<&Arc<GradedRing>, String> {
        self.active.as_ref().ok_or_else(|| "no ring has been declared".to_string())
    }

    fn poly(&self, e: &Expr) -> std::result::Result<(), String> {
        let ring = self.ring()?.with_field(Field::Rational);
        let p = eval_expr(e, &ring).map_err(|err| err.to_string())?;
        p.require_homogeneous().map_err(|err| err.to_string())
    }

    fn name(&self, n: &str, kind: Kind) -> std::result::Result<(), String> {
        match self.kinds.get(n) {
            Some(k) if *k == kind => Ok(()),
            Some(k) => Err(format!("'{n}' is a {}, not a {}", k.name(), kind.name())),
            None => Err(format!("unknown identifier '{n}'")),
        }
    }

    fn is_var(&self, n: &str) -> bool {
        self.active.as_ref().is_some_and(|r| r.var_index(n).is_some())
    }

    fn ideal(&self, gens: &IdealArg) -> std::result::Result<(), String> {
        if let Some(n) = lone_name(gens) {
            if !self.is_var(n) && self.kinds.get(n) == Some(&Kind::Ideal) {
                return Ok(());
            }
        }
        gens.iter().try_for_each(|g| self.poly(g))
    }

    fn module(&self, m: &ModExpr) -> std::result::Result<(), String> {
        match m {
            ModExpr::Name(n) => self.name(n, Kind::Module),
            ModExpr::Coker { cols, .. } => cols.iter().flatten().try_for_each(|e| self.poly(e)),
            ModExpr::Quo(g) => self.ideal(g),
            ModExpr::Free(_) => self.ring().map(|_| ()),
            ModExpr::Shift(a, _) | ModExpr::Tail(a, _) | ModExpr::Torsion(a) => self.module(a),
            ModExpr::Tensor(a, b) | ModExpr::Sum(a, b) => {
                self.module(a)?;
                self.module(b)
            }
        }
    }

    fn serre(&self, s: &SerreExpr) -> std::result::Result<(), String> {
        match s {
            SerreExpr::Name(n) => self.name(n, Kind::Serre),
            SerreExpr::Gen(ms) => ms.iter().try_for_each(|m| self.module(m)),
        }
    }

    fn locus(&self, l: &LocusExpr) -> std::result::Result<(), String> {
        match l {
            LocusExpr::Name(n) => self.name(n, Kind::Locus),
            LocusExpr::Union(parts) => parts.iter().try_for_each(|g| self.ideal(g)),
        }
    }

    fn section(&self, s: &SectionExpr) -> std::result::Result<(), String> {
        match s {
            SectionExpr::Name(n) => self.name(n, Kind::Section),
            SectionExpr::Frac { num, den, ambient, .. } => {
                self.poly(num)?;
                self.poly(den)?;
                ambient.as_ref().map_or(Ok(()), |a| self.ideal(a))
            }
        }
    }

    fn bind(&mut self, name: &str, kind: Kind) -> std::result::Result<(), String> {
        if self.is_var(name) {
            return Err(format!("'{name}' is a variable of the active ring"));
        }
        self.kinds.insert(name.to_string(), kind);
        Ok(())
    }

    fn check_inner(&mut self, stmt: &Stmt) -> std::result::Result<(), String> {
        match stmt {
            Stmt::Ring { name, field, vars } => {
                let field = match field {
                    FieldSpec::QQ => Field::Rational,
                    FieldSpec::GF(p) => Field::prime(*p).map_err(|e| e.to_string())?,
                };
                let ring = GradedRing::new(field, vars.clone()).map_err(|e| e.to_string())?;
                if vars.iter().any(|(v, _)| v == name) {
                    return Err(format!("ring name '{name}' clashes with one of its variables"));
                }
                self.rings.insert(name.clone(), ring.clone());
                self.kinds.insert(name.clone(), Kind::Ring);
                self.active = Some(ring);
                Ok(())
            }
            Stmt::Ideal { name, gens } => {
                self.ideal(gens)?;
                self.bind(name, Kind::Ideal)
            }
            Stmt::Module { name, expr } => {
                self.module(expr)?;
                self.bind(name, Kind::Module)
            }
            Stmt::Serre { name, expr } => {
                self.serre(expr)?;
                self.bind(name, Kind::Serre)
            }
            Stmt::Locus { name, expr } => {
                self.locus(expr)?;
                self.bind(name, Kind::Locus)
            }
            Stmt::Section { name, expr } => {
                self.section(expr)?;
                self.bind(name, Kind::Section)
            }
            Stmt::Command(c) => match c {
                Command::Gb(i) | Command::Sat(i) => self.ideal(i),
                Command::Radical(e, i) => {
                    self.poly(e)?;
                    self.ideal(i)
                }
                Command::Ann(m) | Command::Torsion(m) | Command::Supp(m) | Command::Hilbert(m, ..) => {
                    self.module(m)
                }
                Command::Subset(a, b) => {
                    self.locus(a)?;
                    self.locus(b)
                }
                Command::Member(m, s) => {
                    self.module(m)?;
                    self.serre(s)
                }
                Command::PrimeMember(m, p) => {
                    self.module(m)?;
                    self.ideal(p)
                }
                Command::Sections(e, amb) => {
                    self.poly(e)?;
                    amb.as_ref().map_or(Ok(()), |a| self.ideal(a))
                }
                Command::Restrict(s, e) => {
                    self.section(s)?;
                    self.poly(e)
                }
                Command::Eq(s, t) => {
                    self.section(s)?;
                    self.section(t)
                }
                Command::GermEq(s, t, p) => {
                    self.section(s)?;
                    self.section(t)?;
                    self.ideal(p)
                }
                Command::FiniteVerify(_) => Ok(()),
                Command::Roundtrip(Target::Name(n)) => match self.kinds.get(n) {
                    Some(Kind::Serre) | Some(Kind::Locus) => Ok(()),
                    Some(k) => Err(format!("'{n}' is a {}, not a serre class or locus", k.name())),
                    None => Err(format!("unknown identifier '{n}'")),
                },
                Command::Roundtrip(Target::Serre(ms)) => ms.iter().try_for_each(|m| self.module(m)),
                Command::Roundtrip(Target::Locus(parts)) => parts.iter().try_for_each(|g| self.ideal(g)),
            },
        }
    }

    /// Checks one statement and records its binding.
    pub fn check(&mut self, line: usize, stmt: &Stmt) -> std::result::Result<(), ParseError> {
        self.check_inner(stmt).map_err(|message| ParseError { line, col: 1, message, expected: vec![] })
    }
}

/// Syntax parse followed by the static pass.
pub fn parse_session(input: &str) -> std::result::Result<Vec<(usize, Stmt)>, ParseError> {
    let stmts = parse_statements(input)?;
    let mut checker = Checker::new();
    for (line, s) in &stmts {
        checker.check(*line, s)?;
    }
    Ok(stmts)
}

#[derive(Debug, Clone)]
enum Binding {
    Ideal(HomogeneousIdeal),
    Module(ModulePresentation),
    Serre(SerreSupport),
    Locus(ThomasonDatum),
    Section(SectionElement),
}

/// One executed statement.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub cmd: String,
    pub ok: bool,
    pub result: Value,
    pub ms: u64,
}

impl Record {
    /// Human-readable rendering of the result.
    pub fn text(&self) -> String {
        let body = match &self.result {
            Value::String(s) => s.clone(),
            Value::Object(o) if o.contains_key("checks") => {
                let mut s = format!("passed: {}", o["passed"]);
                for c in o["checks"].as_array().into_iter().flatten() {
                    s.push_str("\n  ");
                    s.push_str(c.as_str().unwrap_or_default());
                }
                s
            }
            other => other.to_string(),
        };
        if self.ok {
            format!("{}\n  {}", self.cmd, body.replace('\n', "\n  "))
        } else {
            format!("{}\n  error: {}", self.cmd, body)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputMode {
    #[default]
    Text,
    Json,
}

/// Execution state.
#[derive(Debug, Default)]
pub struct Session {
    rings: HashMap<String, Arc<GradedRing>>,
    active: Option<Arc<GradedRing>>,
    values: HashMap<String, Binding>,
    /// Bound modules in binding order, used as the probe corpus.
    module_order: Vec<String>,
    field_override: Option<Field>,
    checker: Checker,
}

fn report_json(r: &crate::Report) -> Value {
    json!({
        "title": r.title,
        "passed": r.passed(),
        "localizing_finite_type_bijection": r.localizing_finite_type_bijection,
        "checks": r.checks.iter().map(|c| {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() { format!("{tag} {}", c.name) } else { format!("{tag} {} ({})", c.name, c.detail) }
        }).collect::<Vec<_>>(),
    })
}

impl Session {
    pub fn new(field_override: Option<Field>) -> Self {
        Session { field_override, ..Default::default() }
    }

    fn ring(&self) -> Result<&Arc<GradedRing>> {
        self.active.as_ref().ok_or_else(|| Error::InvalidRing("no ring has been declared".into()))
    }

    fn poly(&self, e: &Expr) -> Result<Polynomial> {
        let p = eval_expr(e, self.ring()?)?;
        p.require_homogeneous()?;
        Ok(p)
    }

    fn lookup(&self, n: &str) -> Result<&Binding> {
        self.values.get(n).ok_or_else(|| Error::UnknownIdentifier(n.to_string()))
    }

    fn same_ring(&self, r: &Arc<GradedRing>) -> Result<()> {
        if r != self.ring()? {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn ideal(&self, gens: &IdealArg) -> Result<HomogeneousIdeal> {
        let ring = self.ring()?;
        if let Some(n) = lone_name(gens) {
            if ring.var_index(n).is_none() {
                if let Binding::Ideal(i) = self.lookup(n)? {
                    self.same_ring(i.ring())?;
                    return Ok(i.clone());
                }
            }
        }
        let polys = gens.iter().map(|g| self.poly(g)).collect::<Result<Vec<_>>>()?;
        HomogeneousIdeal::new(ring, polys)
    }

    fn module(&self, m: &ModExpr) -> Result<ModulePresentation> {
        let ring = self.ring()?;
        match m {
            ModExpr::Name(n) => match self.lookup(n)? {
                Binding::Module(m) => {
                    self.same_ring(m.ring())?;
                    Ok(m.clone())
                }
                _ => Err(Error::Shape(format!("'{n}' is not a module"))),
            },
            ModExpr::Coker { shifts, cols, colshifts } => {
                let mut columns = Vec::new();
                for col in cols {
                    if col.len() != shifts.len() {
                        return Err(Error::Shape(format!(
                            "column of length {} for {} rows",
                            col.len(),
                            shifts.len()
                        )));
                    }
                    let entries = col.iter().map(|e| eval_expr(e, ring)).collect::<Result<Vec<_>>>()?;
                    columns.push(entries);
                }
                match colshifts {
                    Some(c) => ModulePresentation::new(ring, shifts.clone(), c.clone(), columns),
                    None => ModulePresentation::with_inferred_shifts(ring, shifts.clone(), columns),
                }
            }
            ModExpr::Quo(g) => Ok(ModulePresentation::cyclic(&self.ideal(g)?)),
            ModExpr::Free(s) => Ok(ModulePresentation::free(ring, s.clone())),
            ModExpr::Shift(a, k) => Ok(self.module(a)?.shift(*k)),
            ModExpr::Tensor(a, b) => self.module(a)?.tensor(&self.module(b)?),
            ModExpr::Tail(a, d) => self.module(a)?.tail(*d),
            ModExpr::Sum(a, b) => self.module(a)?.direct_sum(&self.module(b)?),
            ModExpr::Torsion(a) => self.module(a)?.torsion_submodule(),
        }
    }

    fn serre(&self, s: &SerreExpr) -> Result<SerreSupport> {
        match s {
            SerreExpr::Name(n) => match self.lookup(n)? {
                Binding::Serre(s) => {
                    self.same_ring(s.ring())?;
                    Ok(s.clone())
                }
                _ => Err(Error::Shape(format!("'{n}' is not a serre class"))),
            },
            SerreExpr::Gen(ms) => {
                let mods = ms.iter().map(|m| self.module(m)).collect::<Result<Vec<_>>>()?;
                SerreSupport::from_modules(self.ring()?, &mods)
            }
        }
    }

    fn union(&self, parts: &[IdealArg]) -> Result<ThomasonDatum> {
        let ideals = parts.iter().map(|g| self.ideal(g)).collect::<Result<Vec<_>>>()?;
        ThomasonDatum::from_ideals(self.ring()?, &ideals)
    }

    fn locus(&self, l: &LocusExpr) -> Result<ThomasonDatum> {
        match l {
            LocusExpr::Name(n) => match self.lookup(n)? {
                Binding::Locus(u) => {
                    self.same_ring(u.ring())?;
                    Ok(u.clone())
                }
                _ => Err(Error::Shape(format!("'{n}' is not a locus"))),
            },
            LocusExpr::Union(parts) => self.union(parts),
        }
    }

    fn section(&self, s: &SectionExpr) -> Result<SectionElement> {
        match s {
            SectionExpr::Name(n) => match self.lookup(n)? {
                Binding::Section(s) => {
                    self.same_ring(s.open().ring())?;
                    Ok(s.clone())
                }
                _ => Err(Error::Shape(format!("'{n}' is not a section"))),
            },
            SectionExpr::Frac { num, den, power, ambient } => {
                let amb = ambient.as_ref().map(|a| self.ideal(a)).transpose()?;
                let open = BasicOpen::new(&self.poly(den)?, amb.as_ref())?;
                open.section(&self.poly(num)?, *power)
            }
        }
    }

    fn probe_corpus(&self) -> Result<Vec<ModulePresentation>> {
        let ring = self.ring()?;
        let mut out = vec![ModulePresentation::free(ring, vec![0])];
        for n in &self.module_order {
            if let Some(Binding::Module(m)) = self.values.get(n) {
                if m.ring() == ring {
                    out.push(m.clone());
                }
            }
        }
        Ok(out)
    }

    fn bind(&mut self, name: &str, v: Binding) {
        if matches!(v, Binding::Module(_)) {
            self.module_order.retain(|n| n != name);
            self.module_order.push(name.to_string());
        }
        self.values.insert(name.to_string(), v);
    }

    fn run(&mut self, stmt: &Stmt) -> Result<Value> {
        Ok(match stmt {
            Stmt::Ring { name, field, vars } => {
                let field = match (self.field_override, field) {
                    (Some(f), _) => f,
                    (None, FieldSpec::QQ) => Field::Rational,
                    (None, FieldSpec::GF(p)) => Field::prime(*p)?,
                };
                let ring = GradedRing::new(field, vars.clone())?;
                self.rings.insert(name.clone(), ring.clone());
                self.active = Some(ring.clone());
                json!(ring.to_string())
            }
            Stmt::Ideal { name, gens } => {
                let i = self.ideal(gens)?;
                let out = json!(i.to_string());
                self.bind(name, Binding::Ideal(i));
                out
            }
            Stmt::Module { name, expr } => {
                let m = self.module(expr)?;
                let out = json!(m.to_string());
                self.bind(name, Binding::Module(m));
                out
            }
            Stmt::Serre { name, expr } => {
                let s = self.serre(expr)?;
                let out = json!(s.to_string());
                self.bind(name, Binding::Serre(s));
                out
            }
            Stmt::Locus { name, expr } => {
                let u = self.locus(expr)?;
                let out = json!(u.to_string());
                self.bind(name, Binding::Locus(u));
                out
            }
            Stmt::Section { name, expr } => {
                let s = self.section(expr)?;
                let out = json!(format!("{s} on {}", s.open()));
                self.bind(name, Binding::Section(s));
                out
            }
            Stmt::Command(c) => self.command(c)?,
        })
    }

    fn command(&mut self, c: &Command) -> Result<Value> {
        Ok(match c {
            Command::Gb(i) => {
                let gb = self.ideal(i)?.groebner_basis()?.iter().map(|g| g.to_string()).collect::<Vec<_>>();
                json!(gb)
            }
            Command::Sat(i) => json!(self.ideal(i)?.saturate_irrelevant()?.to_string()),
            Command::Radical(e, i) => json!(self.ideal(i)?.radical_contains(&self.poly(e)?)?),
            Command::Ann(m) => json!(self.module(m)?.annihilator()?.to_string()),
            Command::Torsion(m) => json!(self.module(m)?.is_torsion()?),
            Command::Supp(m) => {
                let s = self.module(m)?.support()?;
                if s.is_empty()? {
                    json!("empty")
                } else {
                    json!(s.to_string())
                }
            }
            Command::Subset(a, b) => json!(self.locus(a)?.is_subset_of(&self.locus(b)?)?),
            Command::Member(m, s) => json!(self.serre(s)?.contains(&self.module(m)?)?),
            Command::PrimeMember(m, p) => {
                json!(serre::point_prime_membership(&self.ideal(p)?, &self.module(m)?)?)
            }
            Command::Sections(e, amb) => {
                let amb = amb.as_ref().map(|a| self.ideal(a)).transpose()?;
                let open = BasicOpen::new(&self.poly(e)?, amb.as_ref())?;
                let gens: Vec<String> = open.generators()?.iter().map(|g| g.to_string()).collect();
                json!({ "open": open.to_string(), "generators": gens })
            }
            Command::Restrict(s, e) => {
                let r = self.section(s)?.restrict(&self.poly(e)?)?;
                json!(format!("{r} on {}", r.open()))
            }
            Command::Eq(s, t) => json!(self.section(s)?.section_eq(&self.section(t)?)?),
            Command::GermEq(s, t, p) => {
                json!(sheaf::germ_eq(&self.section(s)?, &self.section(t)?, &self.ideal(p)?)?)
            }
            Command::Hilbert(m, a, b) => {
                let m = self.module(m)?;
                json!((*a..=*b).map(|j| m.hilbert_dim(j)).collect::<Vec<_>>())
            }
            Command::FiniteVerify(n) => report_json(&finite::finite_verify(*n)?),
            Command::Roundtrip(t) => {
                let report = match t {
                    Target::Name(n) => match self.lookup(n)?.clone() {
                        Binding::Serre(s) => serre::classification_round_trip(&s, &self.probe_corpus()?)?,
                        Binding::Locus(u) => serre::classification_round_trip_open(&u)?,
                        _ => return Err(Error::Shape(format!("'{n}' is not a serre class or locus"))),
                    },
                    Target::Serre(ms) => {
                        let s = self.serre(&SerreExpr::Gen(ms.clone()))?;
                        serre::classification_round_trip(&s, &self.probe_corpus()?)?
                    }
                    Target::Locus(parts) => serre::classification_round_trip_open(&self.union(parts)?)?,
                };
                report_json(&report)
            }
        })
    }

    /// Runs one statement; failures are reported in the record, not raised.
    pub fn execute(&mut self, stmt: &Stmt) -> Record {
        let start = Instant::now();
        let outcome = self.run(stmt);
        let ms = start.elapsed().as_millis() as u64;
        let cmd = stmt.to_string();
        match outcome {
            Ok(result) => Record { cmd, ok: true, result, ms },
            Err(e) => Record { cmd, ok: false, result: json!(e.to_string()), ms },
        }
    }

    /// Parses, checks and runs one REPL line against the session's static
    /// environment.
    pub fn execute_line(&mut self, line_no: usize, text: &str) -> std::result::Result<Option<Record>, ParseError> {
        let Some(stmt) = parse_line(line_no, text)? else { return Ok(None) };
        let mut checker = self.checker.clone();
        checker.check(line_no, &stmt)?;
        self.checker = checker;
        Ok(Some(self.execute(&stmt)))
    }
}

/// Outcome of running a whole session file.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<Record>,
    pub exit_code: i32,
}

impl RunOutput {
    pub fn render(&self, mode: OutputMode) -> String {
        let mut out = String::new();
        for r in &self.records {
            match mode {
                OutputMode::Json => out.push_str(&serde_json::to_string(r).expect("serializable")),
                OutputMode::Text => out.push_str(&r.text()),
            }
            out.push('\n');
        }
        out
    }
}

/// Runs a session file. Exit code 0 if every statement succeeds, 2 on a
/// parse or static error (nothing is executed), 3 if some statement fails.
pub fn run_session(input: &str, field_override: Option<Field>) -> std::result::Result<RunOutput, ParseError> {
    let stmts = parse_session(input)?;
    let mut session = Session::new(field_override);
    let records: Vec<Record> = stmts.iter().map(|(_, s)| session.execute(s)).collect();
    let exit_code = if records.iter().all(|r| r.ok) { 0 } else { 3 };
    Ok(RunOutput { records, exit_code })
}

/// Replaces every `"ms":<n>` field so timing does not affect comparisons.
pub fn mask_timing(json_lines: &str) -> String {
    json_lines
        .lines()
        .map(|l| match serde_json::from_str::<Value>(l) {
            Ok(mut v) => {
                if let Some(o) = v.as_object_mut() {
                    o.insert("ms".into(), json!(0));
                }
                serde_json::to_string(&v).expect("serializable")
            }
            Err(_) => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_pass() {
        assert!(parse_session("ring A = QQ[x:1, y:1, z:2]\nideal I = x^2 - y^2, x*z").is_ok());
        let e = parse_session("ring A = QQ[x:1, z:2]\nideal J = x + z").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("inhomogeneous"), "{}", e.message);
        assert!(e.message.contains('1') && e.message.contains('2'));
        let e = parse_session("ring A = QQ[x, y]\nann M").unwrap_err();
        assert!(e.message.contains("unknown identifier"));
        assert!(parse_session("ideal I = x").is_err());
        assert!(parse_session("ring A = QQ[x, y]\nideal x = y").is_err());
    }

    fn run(src: &str) -> Vec<Record> {
        run_session(src, None).unwrap().records
    }

    #[test]
    fn spec_commands() {
        let r = run("ring A = QQ[x, y]\ntorsion? coker{shifts:[0]; cols:[[x^2],[x*y],[y^2]]}\nsupp coker{shifts:[0]; cols:[[x^2],[x*y]]}");
        assert!(r.iter().all(|r| r.ok));
        assert_eq!(r[1].result, json!(true));
        assert_eq!(r[2].result, json!("V(x)"));
    }

    #[test]
    fn failures_continue() {
        let out = run_session("ring A = QQ[x, y]\nmodule M = coker{shifts:[0]; cols:[[0]]}\ngb (x)", None).unwrap();
        assert_eq!(out.exit_code, 3);
        assert!(!out.records[1].ok);
        assert!(out.records[2].ok);
    }

    #[test]
    fn ideals_by_name() {
        let r = run("ring A = QQ[x, y]\nideal I = x^2, x*y\nsat I\ngb (I)\nradical? x I");
        assert_eq!(r[2].result, json!("(x)"));
        assert_eq!(r[3].result, json!(["x*y", "x^2"]));
        assert_eq!(r[4].result, json!(true));
    }

    #[test]
    fn field_override() {
        let r = run_session("ring A = QQ[x, y]\ngb (2*x + 4*y, x)", Some(Field::prime(2).unwrap())).unwrap();
        assert_eq!(r.records[0].result, json!("GF(2)[x:1, y:1]"));
        assert_eq!(r.records[1].result, json!(["x"]));
    }

    #[test]
    fn demo_runs_clean() {
        let out = run_session(DEMO_SESSION, None).unwrap();
        for r in &out.records {
            assert!(r.ok, "{}", r.text());
        }
        assert_eq!(out.exit_code, 0);
    }
}
