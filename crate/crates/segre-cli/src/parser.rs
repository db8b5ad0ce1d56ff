//! Problem-file parsing.
//!
//! A problem file declares one ambient product of projective spaces,
//! names its coordinates, and defines named ideals with optional
//! assertions:
//!
//! ```text
//! ambient P2 x P3
//! vars x[0..2]; y[0..3]
//! ideal Y variety = x0*x2*y0 - x1^2*y2, y3
//! ideal X = x1*y2 + x0*y0, x0*x2*y0 - x1^2*y2, y3
//! ```
//!
//! Variable blocks are separated by `;`, one block per factor, and are
//! either an indexed range `x[0..2]` (giving x0, x1, x2) or a
//! comma-separated list of plain names `x, y, z, w`. Assertions between
//! an ideal's name and `=` are any of `variety`, `irreducible`, and
//! `mult N`. Polynomials use `+ - * ^` with explicit multiplication
//! only and integer coefficients; a Unicode minus sign is accepted and
//! treated as `-`. Every generator must be homogeneous in each factor's
//! variables separately; this is diagnosed at load, per ideal, with the
//! offending generator's position.

use segre_core::{Ambient, Coeff, Domain, GradedIdeal, Homogeneity, MultiPoly, SchemeSpec};
use std::collections::BTreeMap;
use std::fmt;

/// Where something went wrong, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

/// A parsed problem file: the ambient space, its variable names in
/// declaration order, and the named ideals with their assertions.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ambient: Ambient,
    #[allow(dead_code)] // consumed by callers that render polynomials back to text
    pub var_names: Vec<String>,
    ideals: Vec<(String, SchemeSpec)>,
}

impl ProblemFile {
    pub fn get(&self, name: &str) -> Option<&SchemeSpec> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }

    pub fn ideal_names(&self) -> Vec<&str> {
        self.ideals.iter().map(|(n, _)| n.as_str()).collect()
    }
}

// ---------------------------------------------------------------------------
// lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    KwAmbient,
    KwVars,
    KwIdeal,
    KwVariety,
    KwIrreducible,
    KwMult,
    Name(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    DotDot,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::KwAmbient => "keyword `ambient`".into(),
            Tok::KwVars => "keyword `vars`".into(),
            Tok::KwIdeal => "keyword `ideal`".into(),
            Tok::KwVariety => "keyword `variety`".into(),
            Tok::KwIrreducible => "keyword `irreducible`".into(),
            Tok::KwMult => "keyword `mult`".into(),
            Tok::Name(n) => format!("name `{n}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::DotDot => "`..`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        line,
        col,
        message: message.into(),
    })
}

fn lex(text: &str) -> PResult<Vec<Spanned>> {
    fn bump(
        chars: &mut std::iter::Peekable<std::str::Chars>,
        line: &mut usize,
        col: &mut usize,
    ) -> char {
        let c = chars.next().expect("peeked");
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        c
    }

    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        if c.is_whitespace() {
            bump(&mut chars, &mut line, &mut col);
            continue;
        }
        // a Unicode minus sign means the same as `-`
        let c = if c == '\u{2212}' { '-' } else { c };
        let tok = match c {
            '+' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::Plus
            }
            '-' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::Minus
            }
            '*' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::Star
            }
            '^' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::Caret
            }
            '(' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::RParen
            }
            '[' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::LBracket
            }
            ']' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::RBracket
            }
            ',' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::Comma
            }
            ';' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::Semi
            }
            '=' => {
                bump(&mut chars, &mut line, &mut col);
                Tok::Eq
            }
            '.' => {
                bump(&mut chars, &mut line, &mut col);
                match chars.peek() {
                    Some('.') => {
                        bump(&mut chars, &mut line, &mut col);
                        Tok::DotDot
                    }
                    _ => return err(tline, tcol, "expected `..`"),
                }
            }
            c if c.is_ascii_digit() => {
                let mut value: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    bump(&mut chars, &mut line, &mut col);
                    value = match value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as u64 - '0' as u64))
                    {
                        Some(v) => v,
                        None => return err(tline, tcol, "integer literal is too large"),
                    };
                }
                Tok::Int(value)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    name.push(bump(&mut chars, &mut line, &mut col));
                }
                match name.as_str() {
                    "ambient" => Tok::KwAmbient,
                    "vars" => Tok::KwVars,
                    "ideal" => Tok::KwIdeal,
                    "variety" => Tok::KwVariety,
                    "irreducible" => Tok::KwIrreducible,
                    "mult" => Tok::KwMult,
                    _ => Tok::Name(name),
                }
            }
            other => {
                return err(tline, tcol, format!("unexpected character `{other}`"));
            }
        };
        out.push(Spanned {
            tok,
            line: tline,
            col: tcol,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    ambient: Option<Ambient>,
    var_names: Vec<String>,
    var_index: BTreeMap<String, usize>,
}

/// Largest exponent a power expression may carry; anything bigger is
/// reported as an overflow instead of silently truncated.
const MAX_EXPONENT: u64 = 1 << 16;

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> PResult<Spanned> {
        let t = self.next();
        if &t.tok != want {
            return err(
                t.line,
                t.col,
                format!("expected {what}, found {}", t.tok.describe()),
            );
        }
        Ok(t)
    }

    fn expect_name(&mut self, what: &str) -> PResult<(String, usize, usize)> {
        let t = self.next();
        match t.tok {
            Tok::Name(n) => Ok((n, t.line, t.col)),
            other => err(
                t.line,
                t.col,
                format!("expected {what}, found {}", other.describe()),
            ),
        }
    }

    fn expect_int(&mut self, what: &str) -> PResult<(u64, usize, usize)> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok((n, t.line, t.col)),
            other => err(
                t.line,
                t.col,
                format!("expected {what}, found {}", other.describe()),
            ),
        }
    }

    // ambient := "ambient" P-name ("x" P-name)*
    fn parse_ambient(&mut self) -> PResult<()> {
        self.expect(&Tok::KwAmbient, "`ambient`")?;
        let mut dims = Vec::new();
        dims.push(self.parse_projective_factor()?);
        loop {
            // a lone name `x` followed by another P-factor continues the product
            let save = self.pos;
            if let Tok::Name(n) = &self.peek().tok {
                if n == "x" {
                    self.next();
                    match self.parse_projective_factor() {
                        Ok(d) => {
                            dims.push(d);
                            continue;
                        }
                        Err(_) => {
                            self.pos = save;
                            break;
                        }
                    }
                }
            }
            break;
        }
        self.ambient = Some(Ambient::new(dims));
        Ok(())
    }

    fn parse_projective_factor(&mut self) -> PResult<usize> {
        let (name, line, col) = self.expect_name("a projective factor like `P3`")?;
        let rest = match name.strip_prefix('P') {
            Some(r) if !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()) => r,
            _ => {
                return err(
                    line,
                    col,
                    format!("expected a projective factor like `P3`, found `{name}`"),
                )
            }
        };
        match rest.parse::<usize>() {
            Ok(n) => Ok(n),
            Err(_) => err(line, col, "projective dimension is too large"),
        }
    }

    // vars := "vars" block (";" block)*
    // block := NAME "[" INT ".." INT "]" | NAME ("," NAME)*
    fn parse_vars(&mut self) -> PResult<()> {
        self.expect(&Tok::KwVars, "`vars`")?;
        let ambient = self.ambient.clone().expect("ambient parsed first");
        let mut blocks: Vec<Vec<String>> = Vec::new();
        loop {
            blocks.push(self.parse_var_block()?);
            if self.peek().tok == Tok::Semi {
                self.next();
                continue;
            }
            break;
        }
        if blocks.len() != ambient.num_factors() {
            let t = self.peek();
            return err(
                t.line,
                t.col,
                format!(
                    "the ambient product has {} factors but {} variable blocks were declared",
                    ambient.num_factors(),
                    blocks.len()
                ),
            );
        }
        for (j, block) in blocks.iter().enumerate() {
            let want = ambient.factors()[j] + 1;
            if block.len() != want {
                let t = self.peek();
                return err(
                    t.line,
                    t.col,
                    format!(
                        "factor {} is P{} and needs {} variables, but block {} declares {}",
                        j + 1,
                        ambient.factors()[j],
                        want,
                        j + 1,
                        block.len()
                    ),
                );
            }
        }
        for block in blocks {
            for name in block {
                if self.var_index.contains_key(&name) {
                    let t = self.peek();
                    return err(t.line, t.col, format!("variable `{name}` declared twice"));
                }
                self.var_index.insert(name.clone(), self.var_names.len());
                self.var_names.push(name);
            }
        }
        Ok(())
    }

    fn parse_var_block(&mut self) -> PResult<Vec<String>> {
        let (base, line, col) = self.expect_name("a variable name")?;
        if self.peek().tok == Tok::LBracket {
            self.next();
            let (lo, lline, lcol) = self.expect_int("a range start")?;
            self.expect(&Tok::DotDot, "`..`")?;
            let (hi, _, _) = self.expect_int("a range end")?;
            self.expect(&Tok::RBracket, "`]`")?;
            if hi < lo || hi - lo > 1 << 16 {
                return err(lline, lcol, format!("bad variable range {lo}..{hi}"));
            }
            return Ok((lo..=hi).map(|i| format!("{base}{i}")).collect());
        }
        let mut names = vec![base];
        while self.peek().tok == Tok::Comma {
            self.next();
            let (n, _, _) = self.expect_name("a variable name")?;
            names.push(n);
        }
        let _ = (line, col);
        Ok(names)
    }

    // idealdef := "ideal" NAME assertion* "=" poly ("," poly)*
    fn parse_ideal(&mut self) -> PResult<(String, SchemeSpec)> {
        let kw = self.expect(&Tok::KwIdeal, "`ideal`")?;
        let (name, _, _) = self.expect_name("an ideal name")?;
        let mut variety = false;
        let mut irreducible = false;
        let mut mult: Option<u64> = None;
        loop {
            match &self.peek().tok {
                Tok::KwVariety => {
                    self.next();
                    variety = true;
                }
                Tok::KwIrreducible => {
                    self.next();
                    irreducible = true;
                }
                Tok::KwMult => {
                    let t = self.next();
                    let (m, _, _) = self.expect_int("a multiplicity")?;
                    if m == 0 {
                        return err(t.line, t.col, "a multiplicity must be positive");
                    }
                    mult = Some(m);
                }
                _ => break,
            }
        }
        self.expect(&Tok::Eq, "`=`")?;
        let mut polys = Vec::new();
        let mut spots = Vec::new();
        loop {
            let at = (self.peek().line, self.peek().col);
            polys.push(self.parse_expr()?);
            spots.push(at);
            if self.peek().tok == Tok::Comma {
                self.next();
                continue;
            }
            break;
        }
        let ambient = self.ambient.clone().expect("ambient parsed first");
        for (p, (line, col)) in polys.iter().zip(&spots) {
            match p.multidegree() {
                Ok(Homogeneity::Homogeneous(_)) => {}
                Ok(Homogeneity::NotHomogeneous) => {
                    return err(
                        *line,
                        *col,
                        format!("a generator of ideal `{name}` is not homogeneous"),
                    );
                }
                Err(e) => return err(*line, *col, e.to_string()),
            }
        }
        let ideal = match GradedIdeal::new(ambient, polys) {
            Ok(i) => i,
            Err(e) => return err(kw.line, kw.col, e.to_string()),
        };
        let mut spec = SchemeSpec::new(ideal);
        if variety {
            spec = SchemeSpec::variety(spec.ideal);
        } else if irreducible {
            spec = SchemeSpec::irreducible(spec.ideal);
        }
        if let Some(m) = mult {
            spec = spec.with_multiplicity(m);
        }
        if let Err(e) = spec.validate() {
            return err(
                kw.line,
                kw.col,
                format!("ideal `{name}` has inconsistent assertions: {e}"),
            );
        }
        Ok((name, spec))
    }

    // expr := term (("+" | "-") term)*
    fn parse_expr(&mut self) -> PResult<MultiPoly> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = self.combine(acc.add(&t))?;
                }
                Tok::Minus => {
                    self.next();
                    let t = self.parse_term()?;
                    acc = self.combine(acc.sub(&t))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := unary ("*" unary)*, with adjacent values rejected
    fn parse_term(&mut self) -> PResult<MultiPoly> {
        let mut acc = self.parse_unary()?;
        loop {
            match &self.peek().tok {
                Tok::Star => {
                    self.next();
                    let f = self.parse_unary()?;
                    acc = self.combine(acc.mul(&f))?;
                }
                Tok::Name(_) | Tok::Int(_) | Tok::LParen => {
                    let t = self.peek();
                    return err(
                        t.line,
                        t.col,
                        "implicit multiplication is not allowed; write `*`",
                    );
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // unary := "-" unary | power
    fn parse_unary(&mut self) -> PResult<MultiPoly> {
        if self.peek().tok == Tok::Minus {
            self.next();
            let p = self.parse_unary()?;
            return Ok(p.neg());
        }
        self.parse_power()
    }

    // power := atom ("^" INT)*
    fn parse_power(&mut self) -> PResult<MultiPoly> {
        let mut acc = self.parse_atom()?;
        while self.peek().tok == Tok::Caret {
            self.next();
            let (e, line, col) = self.expect_int("an exponent")?;
            if e > MAX_EXPONENT {
                return err(line, col, format!("exponent {e} is too large"));
            }
            acc = self.combine(acc.pow(e as u32))?;
        }
        Ok(acc)
    }

    fn parse_atom(&mut self) -> PResult<MultiPoly> {
        let ambient = self.ambient.clone().expect("ambient parsed first");
        let t = self.next();
        match t.tok {
            Tok::Name(n) => match self.var_index.get(&n) {
                Some(&v) => Ok(MultiPoly::variable(ambient, v, Domain::Rat)),
                None => err(t.line, t.col, format!("unknown variable `{n}`")),
            },
            Tok::Int(n) => {
                let c = match i64::try_from(n) {
                    Ok(v) => Coeff::rat_int(v),
                    Err(_) => return err(t.line, t.col, "coefficient is too large"),
                };
                Ok(MultiPoly::constant(ambient, c))
            }
            Tok::LParen => {
                let e = self.parse_expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            other => err(
                t.line,
                t.col,
                format!("expected a polynomial, found {}", other.describe()),
            ),
        }
    }

    fn combine(&self, r: segre_core::Result<MultiPoly>) -> PResult<MultiPoly> {
        match r {
            Ok(p) => Ok(p),
            Err(e) => {
                let t = self.peek();
                err(t.line, t.col, e.to_string())
            }
        }
    }
}

/// Parse a whole problem file.
pub fn parse_input(text: &str) -> PResult<ProblemFile> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ambient: None,
        var_names: Vec::new(),
        var_index: BTreeMap::new(),
    };
    p.parse_ambient()?;
    p.parse_vars()?;
    let mut ideals: Vec<(String, SchemeSpec)> = Vec::new();
    loop {
        match p.peek().tok {
            Tok::KwIdeal => {
                let at = (p.peek().line, p.peek().col);
                let (name, spec) = p.parse_ideal()?;
                if ideals.iter().any(|(n, _)| *n == name) {
                    return err(at.0, at.1, format!("ideal `{name}` defined twice"));
                }
                ideals.push((name, spec));
            }
            Tok::Eof => break,
            _ => {
                let t = p.peek();
                return err(
                    t.line,
                    t.col,
                    format!("expected `ideal` or end of input, found {}", t.tok.describe()),
                );
            }
        }
    }
    if ideals.is_empty() {
        let t = p.peek();
        return err(t.line, t.col, "a problem file needs at least one ideal");
    }
    Ok(ProblemFile {
        ambient: p.ambient.expect("parsed"),
        var_names: p.var_names,
        ideals,
    })
}
