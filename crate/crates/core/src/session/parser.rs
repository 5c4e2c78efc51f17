//! Line-oriented lexer and recursive-descent parser for session files.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::ast::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    DotDot,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::DotDot => write!(f, "'..'"),
            Tok::End => write!(f, "end of line"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

const SYMBOLS: &str = "+-*^/()[]{},;:=|";

fn lex(line_no: usize, text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let first = out.is_empty();
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric()
                    || chars[i] == '_'
                    || (first && (chars[i] == '-' || chars[i] == '?')))
            {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), col });
        } else if c == '.' && chars.get(i + 1) == Some(&'.') {
            out.push(Token { tok: Tok::DotDot, col });
            i += 2;
        } else if SYMBOLS.contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(ParseError {
                line: line_no,
                col,
                message: format!("unexpected character '{c}'"),
                expected: vec![],
            });
        }
    }
    out.push(Token { tok: Tok::End, col: chars.len() + 1 });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = &self.toks[self.pos];
        Err(ParseError {
            line: self.line,
            col: t.col,
            message: format!("unexpected {}", t.tok),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn fail<T>(&self, message: String) -> PResult<T> {
        Err(ParseError { line: self.line, col: self.toks[self.pos].col, message, expected: vec![] })
    }

    fn at_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(&[&format!("'{c}'")])
        }
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.at_word(w) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("'{w}'")])
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !s.contains(['-', '?']) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn uint(&mut self) -> PResult<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.error(&["integer"]),
        }
    }

    fn small<T: TryFrom<i128>>(&self, n: &BigInt) -> PResult<T> {
        n.to_i128()
            .and_then(|v| T::try_from(v).ok())
            .map_or_else(|| self.fail(format!("integer {n} out of range")), Ok)
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat_sym('-');
        let n = self.uint()?;
        let v: i64 = self.small(&n)?;
        Ok(if neg { -v } else { v })
    }

    fn int_list(&mut self) -> PResult<Vec<i64>> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if !self.eat_sym(']') {
            loop {
                out.push(self.int()?);
                if self.eat_sym(']') {
                    break;
                }
                self.expect_sym(',')?;
            }
        }
        Ok(out)
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while self.eat_sym('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym('^') {
            let e = self.uint()?;
            let e: u32 = self.small(&e)?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if self.at_sym('/') && matches!(self.peek2(), Tok::Int(_)) {
                    self.bump();
                    let d = self.uint()?;
                    if d.is_zero() {
                        return self.fail("zero denominator".into());
                    }
                    return Ok(Expr::Num(BigRational::new(n, d)));
                }
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Tok::Ident(_) => Ok(Expr::Var(self.ident()?)),
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            _ => self.error(&["number", "variable", "'('", "'-'"]),
        }
    }

    /// Comma-separated expressions up to (not including) `close`.
    fn expr_list(&mut self, close: char) -> PResult<Vec<Expr>> {
        let mut out = Vec::new();
        if self.at_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if !self.eat_sym(',') {
                return Ok(out);
            }
        }
    }

    /// `NAME` or `(e1, …)`.
    fn ideal_arg(&mut self) -> PResult<IdealArg> {
        if self.eat_sym('(') {
            let gens = self.expr_list(')')?;
            self.expect_sym(')')?;
            return Ok(gens);
        }
        match self.peek() {
            Tok::Ident(_) => Ok(vec![Expr::Var(self.ident()?)]),
            _ => self.error(&["ideal name", "'('"]),
        }
    }

    fn call_is(&self, name: &str, open: char) -> bool {
        self.at_word(name) && *self.peek2() == Tok::Sym(open)
    }

    fn module(&mut self) -> PResult<ModExpr> {
        if self.call_is("coker", '{') {
            self.bump();
            self.bump();
            self.expect_word("shifts")?;
            self.expect_sym(':')?;
            let shifts = self.int_list()?;
            self.expect_sym(';')?;
            self.expect_word("cols")?;
            self.expect_sym(':')?;
            self.expect_sym('[')?;
            let mut cols = Vec::new();
            if !self.eat_sym(']') {
                loop {
                    self.expect_sym('[')?;
                    let col = self.expr_list(']')?;
                    self.expect_sym(']')?;
                    cols.push(col);
                    if self.eat_sym(']') {
                        break;
                    }
                    self.expect_sym(',')?;
                }
            }
            let mut colshifts = None;
            if self.eat_sym(';') {
                self.expect_word("colshifts")?;
                self.expect_sym(':')?;
                colshifts = Some(self.int_list()?);
            }
            self.expect_sym('}')?;
            return Ok(ModExpr::Coker { shifts, cols, colshifts });
        }
        for word in ["quo", "free", "shift", "tensor", "tail", "sum", "torsion"] {
            if !self.call_is(word, '(') {
                continue;
            }
            self.bump();
            self.bump();
            let m = match word {
                "quo" => ModExpr::Quo(self.expr_list(')')?),
                "free" => {
                    let mut s = Vec::new();
                    if !self.at_sym(')') {
                        loop {
                            s.push(self.int()?);
                            if !self.eat_sym(',') {
                                break;
                            }
                        }
                    }
                    ModExpr::Free(s)
                }
                "torsion" => ModExpr::Torsion(Box::new(self.module()?)),
                "tensor" | "sum" => {
                    let a = Box::new(self.module()?);
                    self.expect_sym(',')?;
                    let b = Box::new(self.module()?);
                    if word == "tensor" {
                        ModExpr::Tensor(a, b)
                    } else {
                        ModExpr::Sum(a, b)
                    }
                }
                _ => {
                    let a = Box::new(self.module()?);
                    self.expect_sym(',')?;
                    let k = self.int()?;
                    if word == "shift" {
                        ModExpr::Shift(a, k)
                    } else {
                        ModExpr::Tail(a, k)
                    }
                }
            };
            self.expect_sym(')')?;
            return Ok(m);
        }
        match self.peek() {
            Tok::Ident(_) => Ok(ModExpr::Name(self.ident()?)),
            _ => self.error(&["module name", "coker{", "quo(", "free(", "shift(", "tensor(", "tail(", "sum(", "torsion("]),
        }
    }

    fn module_list(&mut self) -> PResult<Vec<ModExpr>> {
        let mut out = Vec::new();
        if self.at_sym(')') {
            return Ok(out);
        }
        loop {
            out.push(self.module()?);
            if !self.eat_sym(',') {
                return Ok(out);
            }
        }
    }

    fn gen_call(&mut self) -> PResult<Vec<ModExpr>> {
        self.bump();
        self.bump();
        let ms = self.module_list()?;
        self.expect_sym(')')?;
        Ok(ms)
    }

    fn serre(&mut self) -> PResult<SerreExpr> {
        if self.call_is("gen", '(') {
            return Ok(SerreExpr::Gen(self.gen_call()?));
        }
        match self.peek() {
            Tok::Ident(_) => Ok(SerreExpr::Name(self.ident()?)),
            _ => self.error(&["serre name", "gen("]),
        }
    }

    fn union(&mut self) -> PResult<Vec<IdealArg>> {
        let mut parts = Vec::new();
        loop {
            self.expect_word("V")?;
            self.expect_sym('(')?;
            parts.push(self.expr_list(')')?);
            self.expect_sym(')')?;
            if !self.eat_sym('|') {
                return Ok(parts);
            }
        }
    }

    fn locus(&mut self) -> PResult<LocusExpr> {
        if self.call_is("V", '(') {
            return Ok(LocusExpr::Union(self.union()?));
        }
        match self.peek() {
            Tok::Ident(_) => Ok(LocusExpr::Name(self.ident()?)),
            _ => self.error(&["locus name", "V("]),
        }
    }

    fn ambient(&mut self) -> PResult<Option<IdealArg>> {
        if self.at_word("mod") {
            self.bump();
            return Ok(Some(self.ideal_arg()?));
        }
        Ok(None)
    }

    fn section(&mut self) -> PResult<SectionExpr> {
        if self.call_is("frac", '(') {
            self.bump();
            self.bump();
            let num = self.expr()?;
            self.expect_sym(',')?;
            let den = self.expr()?;
            self.expect_sym(',')?;
            let k = self.uint()?;
            let power: u32 = self.small(&k)?;
            self.expect_sym(')')?;
            let ambient = self.ambient()?;
            return Ok(SectionExpr::Frac { num, den, power, ambient });
        }
        match self.peek() {
            Tok::Ident(_) => Ok(SectionExpr::Name(self.ident()?)),
            _ => self.error(&["section name", "frac("]),
        }
    }

    fn binding(&mut self) -> PResult<String> {
        let name = self.ident()?;
        self.expect_sym('=')?;
        Ok(name)
    }

    fn ring(&mut self) -> PResult<Stmt> {
        let name = self.binding()?;
        let field = if self.at_word("QQ") {
            self.bump();
            FieldSpec::QQ
        } else if self.at_word("GF") {
            self.bump();
            self.expect_sym('(')?;
            let p = self.uint()?;
            let p: u64 = self.small(&p)?;
            self.expect_sym(')')?;
            FieldSpec::GF(p)
        } else {
            return self.error(&["'QQ'", "'GF'"]);
        };
        self.expect_sym('[')?;
        let mut vars = Vec::new();
        loop {
            let v = self.ident()?;
            if v == "mod" {
                return self.fail("'mod' is reserved".into());
            }
            let w = if self.eat_sym(':') {
                let w = self.uint()?;
                self.small(&w)?
            } else {
                1
            };
            vars.push((v, w));
            if self.eat_sym(']') {
                break;
            }
            self.expect_sym(',')?;
        }
        Ok(Stmt::Ring { name, field, vars })
    }

    fn command(&mut self, word: &str) -> PResult<Command> {
        Ok(match word {
            "gb" => Command::Gb(self.ideal_arg()?),
            "sat" => Command::Sat(self.ideal_arg()?),
            "radical?" => {
                let e = self.expr()?;
                Command::Radical(e, self.ideal_arg()?)
            }
            "ann" => Command::Ann(self.module()?),
            "torsion?" => Command::Torsion(self.module()?),
            "supp" => Command::Supp(self.module()?),
            "subset?" => {
                let a = self.locus()?;
                Command::Subset(a, self.locus()?)
            }
            "member?" => {
                let m = self.module()?;
                Command::Member(m, self.serre()?)
            }
            "prime-member?" => {
                let m = self.module()?;
                Command::PrimeMember(m, self.ideal_arg()?)
            }
            "sections" => {
                let e = self.expr()?;
                Command::Sections(e, self.ambient()?)
            }
            "restrict" => {
                let s = self.section()?;
                Command::Restrict(s, self.expr()?)
            }
            "eq?" => {
                let s = self.section()?;
                Command::Eq(s, self.section()?)
            }
            "germ-eq?" => {
                let s = self.section()?;
                let t = self.section()?;
                Command::GermEq(s, t, self.ideal_arg()?)
            }
            "hilbert" => {
                let m = self.module()?;
                let a = self.int()?;
                if *self.peek() != Tok::DotDot {
                    return self.error(&["'..'"]);
                }
                self.bump();
                Command::Hilbert(m, a, self.int()?)
            }
            "finite-verify" => {
                self.expect_word("n")?;
                self.expect_sym('=')?;
                let n = self.uint()?;
                Command::FiniteVerify(self.small(&n)?)
            }
            "roundtrip" => Command::Roundtrip(if self.call_is("gen", '(') {
                Target::Serre(self.gen_call()?)
            } else if self.call_is("V", '(') {
                Target::Locus(self.union()?)
            } else {
                Target::Name(self.ident()?)
            }),
            _ => unreachable!("checked by caller"),
        })
    }

    fn statement(&mut self) -> PResult<Stmt> {
        const WORDS: [&str; 22] = [
            "ring", "ideal", "module", "serre", "locus", "section", "gb", "sat", "radical?", "ann",
            "torsion?", "supp", "subset?", "member?", "prime-member?", "sections", "restrict", "eq?",
            "germ-eq?", "hilbert", "finite-verify", "roundtrip",
        ];
        let word = match self.peek() {
            Tok::Ident(w) if WORDS.contains(&w.as_str()) => w.clone(),
            _ => return self.error(&["statement keyword"]),
        };
        self.bump();
        let stmt = match word.as_str() {
            "ring" => self.ring()?,
            "ideal" => {
                let name = self.binding()?;
                let gens = self.expr_list('\n')?;
                if gens.is_empty() {
                    return self.error(&["polynomial"]);
                }
                Stmt::Ideal { name, gens }
            }
            "module" => {
                let name = self.binding()?;
                Stmt::Module { name, expr: self.module()? }
            }
            "serre" => {
                let name = self.binding()?;
                Stmt::Serre { name, expr: self.serre()? }
            }
            "locus" => {
                let name = self.binding()?;
                Stmt::Locus { name, expr: self.locus()? }
            }
            "section" => {
                let name = self.binding()?;
                Stmt::Section { name, expr: self.section()? }
            }
            w => Stmt::Command(self.command(w)?),
        };
        if *self.peek() != Tok::End {
            return self.error(&["end of line"]);
        }
        Ok(stmt)
    }
}

/// Parses one statement; `None` for blank or comment-only lines.
pub fn parse_line(line_no: usize, text: &str) -> Result<Option<Stmt>, ParseError> {
    let toks = lex(line_no, text)?;
    if toks.len() == 1 {
        return Ok(None);
    }
    Parser { toks, pos: 0, line: line_no }.statement().map(Some)
}

/// Syntax-only parse of a whole file: `(line number, statement)` pairs.
pub fn parse_statements(input: &str) -> Result<Vec<(usize, Stmt)>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        if let Some(s) = parse_line(i + 1, line)? {
            out.push((i + 1, s));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Stmt {
        parse_line(1, s).unwrap().unwrap()
    }

    #[test]
    fn ring_declarations() {
        match parse("ring A = QQ[x:1, y:1, z:2]") {
            Stmt::Ring { name, field, vars } => {
                assert_eq!(name, "A");
                assert_eq!(field, FieldSpec::QQ);
                assert_eq!(vars.iter().map(|v| v.1).collect::<Vec<_>>(), vec![1, 1, 2]);
            }
            s => panic!("{s:?}"),
        }
        assert!(matches!(parse("ring B = GF(7)[a, b]"), Stmt::Ring { field: FieldSpec::GF(7), .. }));
    }

    #[test]
    fn ideals_and_rationals() {
        match parse("ideal I = x^2 - y^2, 3/2*x*z") {
            Stmt::Ideal { gens, .. } => {
                assert_eq!(gens.len(), 2);
                assert_eq!(gens[1].to_string(), "3/2*x*z");
            }
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn modules_and_commands() {
        let s = parse("torsion? coker{shifts:[0]; cols:[[x^2],[x*y],[y^2]]}");
        assert!(matches!(s, Stmt::Command(Command::Torsion(ModExpr::Coker { .. }))));
        let s = parse("hilbert tensor(M, shift(N, -2)) -3..4");
        assert!(matches!(s, Stmt::Command(Command::Hilbert(_, -3, 4))));
        let s = parse("subset? V(x) | V(y) V(x*y)   # comment");
        match s {
            Stmt::Command(Command::Subset(LocusExpr::Union(a), LocusExpr::Union(b))) => {
                assert_eq!((a.len(), b.len()), (2, 1));
            }
            s => panic!("{s:?}"),
        }
        assert!(matches!(parse("finite-verify n=3"), Stmt::Command(Command::FiniteVerify(3))));
        assert!(parse_line(4, "  # only a comment").unwrap().is_none());
    }

    #[test]
    fn minus_is_not_part_of_variables() {
        match parse("ideal J = x-y") {
            Stmt::Ideal { gens, .. } => assert_eq!(gens[0].to_string(), "x - y"),
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_line(3, "ideal I = x +").unwrap_err();
        assert_eq!((e.line, e.col), (3, 14));
        assert!(!e.expected.is_empty());
        let e = parse_line(1, "module M = coker{shifts:[0] cols:[]}").unwrap_err();
        assert_eq!(e.expected, vec!["';'"]);
        assert!(parse_line(1, "frobnicate x").is_err());
        assert!(parse_line(1, "ideal I = 1/0").is_err());
    }

    #[test]
    fn render_reparses() {
        for s in [
            "ring A = QQ[x:1, y:1, z:2]",
            "ideal I = x^2 - y^2, x*z",
            "module M = coker{shifts:[0,-1]; cols:[[y, 1]]; colshifts:[-1]}",
            "module N = tail(tensor(quo(I), free(0, 2)), 2)",
            "serre S = gen(M, quo(x))",
            "locus U = V(x) | V(y, z)",
            "section s = frac(y, x, 1) mod (x*y)",
            "germ-eq? s frac(y^2, x*y, 1) (0)",
            "roundtrip V(x*y)",
            "sections x mod (x*y)",
            "radical? -x^3 (x^2)",
            "ideal K = x - (y - z), (x*y)*z, x*(y*z), -(x^2)^3, (-x)^2, 2*(x + y)^2 - -3/4",
        ] {
            let a = parse(s);
            let b = parse(&a.to_string());
            assert_eq!(a, b, "{s}");
        }
    }
}
