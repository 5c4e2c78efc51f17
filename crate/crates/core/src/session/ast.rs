//! Statements of the session language and their canonical rendering.
//!
//! Rendering inserts exactly the parentheses the grammar needs, so the
//! output of `Display` parses back to an equal statement.

use std::fmt;

use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative rational literal.
    Num(BigRational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Generators of an ideal. A lone variable naming a bound ideal refers to
/// that ideal.
pub type IdealArg = Vec<Expr>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    QQ,
    GF(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModExpr {
    Name(String),
    Coker { shifts: Vec<i64>, cols: Vec<Vec<Expr>>, colshifts: Option<Vec<i64>> },
    Quo(IdealArg),
    Free(Vec<i64>),
    Shift(Box<ModExpr>, i64),
    Tensor(Box<ModExpr>, Box<ModExpr>),
    Tail(Box<ModExpr>, i64),
    Sum(Box<ModExpr>, Box<ModExpr>),
    Torsion(Box<ModExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SerreExpr {
    Name(String),
    Gen(Vec<ModExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocusExpr {
    Name(String),
    /// `V(I_1) | V(I_2) | …`
    Union(Vec<IdealArg>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectionExpr {
    Name(String),
    Frac { num: Expr, den: Expr, power: u32, ambient: Option<IdealArg> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Name(String),
    Serre(Vec<ModExpr>),
    Locus(Vec<IdealArg>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Gb(IdealArg),
    Sat(IdealArg),
    Radical(Expr, IdealArg),
    Ann(ModExpr),
    Torsion(ModExpr),
    Supp(ModExpr),
    Subset(LocusExpr, LocusExpr),
    Member(ModExpr, SerreExpr),
    PrimeMember(ModExpr, IdealArg),
    Sections(Expr, Option<IdealArg>),
    Restrict(SectionExpr, Expr),
    Eq(SectionExpr, SectionExpr),
    GermEq(SectionExpr, SectionExpr, IdealArg),
    Hilbert(ModExpr, i64, i64),
    FiniteVerify(usize),
    Roundtrip(Target),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Ring { name: String, field: FieldSpec, vars: Vec<(String, u32)> },
    Ideal { name: String, gens: IdealArg },
    Module { name: String, expr: ModExpr },
    Serre { name: String, expr: SerreExpr },
    Locus { name: String, expr: LocusExpr },
    Section { name: String, expr: SectionExpr },
    Command(Command),
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

struct Gens<'a>(&'a [Expr]);

impl fmt::Display for Gens<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(self.0))
    }
}

fn ints(v: &[i64]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Var(_) => 5,
        }
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.prec() < min;
        if wrap {
            write!(f, "(")?;
        }
        match self {
            Expr::Num(r) => write!(f, "{r}")?,
            Expr::Var(v) => write!(f, "{v}")?,
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.render(f, 3)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.render(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.render(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.render(f, 2)?;
                write!(f, "*")?;
                b.render(f, 3)?;
            }
            Expr::Pow(a, e) => {
                a.render(f, 5)?;
                write!(f, "^{e}")?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, 0)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::QQ => write!(f, "QQ"),
            FieldSpec::GF(p) => write!(f, "GF({p})"),
        }
    }
}

impl fmt::Display for ModExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModExpr::Name(n) => write!(f, "{n}"),
            ModExpr::Coker { shifts, cols, colshifts } => {
                let cols: Vec<String> = cols.iter().map(|c| format!("[{}]", join(c))).collect();
                write!(f, "coker{{shifts:[{}]; cols:[{}]", ints(shifts), cols.join(", "))?;
                if let Some(c) = colshifts {
                    write!(f, "; colshifts:[{}]", ints(c))?;
                }
                write!(f, "}}")
            }
            ModExpr::Quo(g) => write!(f, "quo({})", join(g)),
            ModExpr::Free(s) => write!(f, "free({})", ints(s)),
            ModExpr::Shift(m, k) => write!(f, "shift({m}, {k})"),
            ModExpr::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            ModExpr::Tail(m, d) => write!(f, "tail({m}, {d})"),
            ModExpr::Sum(a, b) => write!(f, "sum({a}, {b})"),
            ModExpr::Torsion(m) => write!(f, "torsion({m})"),
        }
    }
}

impl fmt::Display for SerreExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SerreExpr::Name(n) => write!(f, "{n}"),
            SerreExpr::Gen(ms) => write!(f, "gen({})", join(ms)),
        }
    }
}

fn fmt_union(f: &mut fmt::Formatter<'_>, parts: &[IdealArg]) -> fmt::Result {
    let parts: Vec<String> = parts.iter().map(|g| format!("V{}", Gens(g))).collect();
    write!(f, "{}", parts.join(" | "))
}

impl fmt::Display for LocusExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusExpr::Name(n) => write!(f, "{n}"),
            LocusExpr::Union(parts) => fmt_union(f, parts),
        }
    }
}

impl fmt::Display for SectionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionExpr::Name(n) => write!(f, "{n}"),
            SectionExpr::Frac { num, den, power, ambient } => {
                write!(f, "frac({num}, {den}, {power})")?;
                if let Some(a) = ambient {
                    write!(f, " mod {}", Gens(a))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Name(n) => write!(f, "{n}"),
            Target::Serre(ms) => write!(f, "gen({})", join(ms)),
            Target::Locus(parts) => fmt_union(f, parts),
        }
    }
}

impl Command {
    pub fn word(&self) -> &'static str {
        match self {
            Command::Gb(_) => "gb",
            Command::Sat(_) => "sat",
            Command::Radical(..) => "radical?",
            Command::Ann(_) => "ann",
            Command::Torsion(_) => "torsion?",
            Command::Supp(_) => "supp",
            Command::Subset(..) => "subset?",
            Command::Member(..) => "member?",
            Command::PrimeMember(..) => "prime-member?",
            Command::Sections(..) => "sections",
            Command::Restrict(..) => "restrict",
            Command::Eq(..) => "eq?",
            Command::GermEq(..) => "germ-eq?",
            Command::Hilbert(..) => "hilbert",
            Command::FiniteVerify(_) => "finite-verify",
            Command::Roundtrip(_) => "roundtrip",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.word())?;
        match self {
            Command::Gb(i) | Command::Sat(i) => write!(f, "{}", Gens(i)),
            Command::Radical(e, i) => write!(f, "{e} {}", Gens(i)),
            Command::Ann(m) | Command::Torsion(m) | Command::Supp(m) => write!(f, "{m}"),
            Command::Subset(a, b) => write!(f, "{a} {b}"),
            Command::Member(m, s) => write!(f, "{m} {s}"),
            Command::PrimeMember(m, p) => write!(f, "{m} {}", Gens(p)),
            Command::Sections(e, amb) => {
                write!(f, "{e}")?;
                if let Some(a) = amb {
                    write!(f, " mod {}", Gens(a))?;
                }
                Ok(())
            }
            Command::Restrict(s, e) => write!(f, "{s} {e}"),
            Command::Eq(s, t) => write!(f, "{s} {t}"),
            Command::GermEq(s, t, p) => write!(f, "{s} {t} {}", Gens(p)),
            Command::Hilbert(m, a, b) => write!(f, "{m} {a}..{b}"),
            Command::FiniteVerify(n) => write!(f, "n={n}"),
            Command::Roundtrip(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring { name, field, vars } => {
                let vars: Vec<String> = vars.iter().map(|(v, w)| format!("{v}:{w}")).collect();
                write!(f, "ring {name} = {field}[{}]", vars.join(", "))
            }
            Stmt::Ideal { name, gens } => write!(f, "ideal {name} = {}", join(gens)),
            Stmt::Module { name, expr } => write!(f, "module {name} = {expr}"),
            Stmt::Serre { name, expr } => write!(f, "serre {name} = {expr}"),
            Stmt::Locus { name, expr } => write!(f, "locus {name} = {expr}"),
            Stmt::Section { name, expr } => write!(f, "section {name} = {expr}"),
            Stmt::Command(c) => write!(f, "{c}"),
        }
    }
}
