//! Ring expressions and element literals.
//!
//! ```text
//! ring  := post { '*' post | '(+)' 'ideal(' elem {',' elem} ')' }
//! post  := atom { '[' IDENT ']' '/' '(' elem ')' }
//! atom  := 'Z/' INT | 'GF(' INT ')' | '(' ring ')'
//! elem  := term { ('+' | '-') term }
//! term  := unary { '*' unary | unary }      -- juxtaposition multiplies
//! unary := '-' unary | power
//! power := primary [ '^' INT ]
//! primary := INT | IDENT | '(' elem { ',' elem } ')'
//! ```

use std::fmt;

use rand::Rng;
use ringlab_core::poly::{is_irreducible, monic_polys};
use ringlab_core::{FiniteRing, Ideal, Ring, RingError, RingKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Int(u64),
    Var(String),
    Neg(Box<Elem>),
    Add(Box<Elem>, Box<Elem>),
    Sub(Box<Elem>, Box<Elem>),
    Mul(Box<Elem>, Box<Elem>),
    Pow(Box<Elem>, u32),
    Tuple(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    Zmod(u64),
    Gf(u64),
    PolyQuot {
        base: Box<RingExpr>,
        var: String,
        modulus: Elem,
    },
    Product(Vec<RingExpr>),
    Idealization {
        base: Box<RingExpr>,
        gens: Vec<Elem>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Eval(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub type DslResult<T> = std::result::Result<T, DslError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    OPlus,
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> DslResult<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    let err = |line, column, message: String| DslError::Syntax {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let step = |i: &mut usize, line: &mut usize, column: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            step(&mut i, &mut line, &mut column);
            continue;
        }
        if c.is_ascii_digit() {
            let mut v: u64 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(chars[i] as u64 - '0' as u64))
                    .ok_or_else(|| err(l, col, "integer literal overflows".into()))?;
                step(&mut i, &mut line, &mut column);
            }
            out.push(Token { tok: Tok::Int(v), line: l, column: col });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                step(&mut i, &mut line, &mut column);
            }
            out.push(Token { tok: Tok::Ident(s), line: l, column: col });
            continue;
        }
        if c == '(' {
            // `(+)` may carry inner whitespace
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            if j < chars.len() && chars[j] == '+' {
                let mut k = j + 1;
                while k < chars.len() && chars[k].is_whitespace() {
                    k += 1;
                }
                if k < chars.len() && chars[k] == ')' {
                    while i <= k {
                        step(&mut i, &mut line, &mut column);
                    }
                    out.push(Token { tok: Tok::OPlus, line: l, column: col });
                    continue;
                }
            }
        }
        if "/[]()*+-^,".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l, column: col });
            step(&mut i, &mut line, &mut column);
            continue;
        }
        return Err(err(l, col, format!("unexpected character '{c}'")));
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> DslResult<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> DslResult<T> {
        let t = &self.toks[self.pos];
        Err(DslError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Int(v) => format!("'{v}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::OPlus => "'(+)'".into(),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> DslResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected '{c}', found {}", self.describe()))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> DslResult<u64> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.fail(format!("expected an integer, found {}", self.describe())),
        }
    }

    fn ident(&mut self) -> DslResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(format!("expected an identifier, found {}", self.describe())),
        }
    }

    fn finish(&self) -> DslResult<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.fail(format!("unexpected {}", self.describe()))
        }
    }

    fn ring(&mut self) -> DslResult<RingExpr> {
        let mut cur = self.post()?;
        let mut open = false;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    let next = self.post()?;
                    match (&mut cur, open) {
                        (RingExpr::Product(fs), true) => fs.push(next),
                        _ => cur = RingExpr::Product(vec![cur, next]),
                    }
                    open = true;
                }
                Tok::OPlus => {
                    self.bump();
                    match self.peek() {
                        Tok::Ident(s) if s == "ideal" => {
                            self.bump();
                        }
                        _ => return self.fail(format!("expected 'ideal', found {}", self.describe())),
                    }
                    self.expect('(')?;
                    let gens = self.elem_list()?;
                    self.expect(')')?;
                    cur = RingExpr::Idealization {
                        base: Box::new(cur),
                        gens,
                    };
                    open = false;
                }
                _ => return Ok(cur),
            }
        }
    }

    fn post(&mut self) -> DslResult<RingExpr> {
        let mut cur = self.atom()?;
        while self.eat('[') {
            let var = self.ident()?;
            self.expect(']')?;
            self.expect('/')?;
            self.expect('(')?;
            let modulus = self.elem()?;
            self.expect(')')?;
            cur = RingExpr::PolyQuot {
                base: Box::new(cur),
                var,
                modulus,
            };
        }
        Ok(cur)
    }

    fn atom(&mut self) -> DslResult<RingExpr> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "Z" => {
                self.bump();
                self.expect('/')?;
                Ok(RingExpr::Zmod(self.int()?))
            }
            Tok::Ident(s) if s == "GF" => {
                self.bump();
                self.expect('(')?;
                let q = self.int()?;
                self.expect(')')?;
                Ok(RingExpr::Gf(q))
            }
            Tok::Sym('(') => {
                self.bump();
                let r = self.ring()?;
                self.expect(')')?;
                Ok(r)
            }
            _ => self.fail(format!("expected a ring, found {}", self.describe())),
        }
    }

    fn elem_list(&mut self) -> DslResult<Vec<Elem>> {
        let mut v = vec![self.elem()?];
        while self.eat(',') {
            v.push(self.elem()?);
        }
        Ok(v)
    }

    fn elem(&mut self) -> DslResult<Elem> {
        let mut cur = self.term()?;
        loop {
            if self.eat('+') {
                cur = Elem::Add(Box::new(cur), Box::new(self.term()?));
            } else if self.eat('-') {
                cur = Elem::Sub(Box::new(cur), Box::new(self.term()?));
            } else {
                return Ok(cur);
            }
        }
    }

    fn term(&mut self) -> DslResult<Elem> {
        let mut cur = self.unary()?;
        loop {
            // explicit or by juxtaposition
            if self.eat('*') || matches!(self.peek(), Tok::Ident(_) | Tok::Sym('(') | Tok::Int(_)) {
                cur = Elem::Mul(Box::new(cur), Box::new(self.unary()?));
            } else {
                return Ok(cur);
            }
        }
    }

    fn unary(&mut self) -> DslResult<Elem> {
        if self.eat('-') {
            return Ok(Elem::Neg(Box::new(self.unary()?)));
        }
        let base = self.primary()?;
        if self.eat('^') {
            let k = self.int()?;
            let k = u32::try_from(k).or_else(|_| self.fail("exponent too large"))?;
            return Ok(Elem::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn primary(&mut self) -> DslResult<Elem> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Elem::Int(v))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Elem::Var(s))
            }
            Tok::Sym('(') => {
                self.bump();
                let mut items = self.elem_list()?;
                self.expect(')')?;
                Ok(if items.len() == 1 {
                    items.pop().unwrap()
                } else {
                    Elem::Tuple(items)
                })
            }
            _ => self.fail(format!("expected an element, found {}", self.describe())),
        }
    }
}

pub fn parse(src: &str) -> DslResult<RingExpr> {
    let mut p = Parser::new(src)?;
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

pub fn parse_elem(src: &str) -> DslResult<Elem> {
    let mut p = Parser::new(src)?;
    let e = p.elem()?;
    p.finish()?;
    Ok(e)
}

/// Comma-separated element literals; an empty string is the empty list.
pub fn parse_elems(src: &str) -> DslResult<Vec<Elem>> {
    let mut p = Parser::new(src)?;
    if *p.peek() == Tok::End {
        return Ok(Vec::new());
    }
    let v = p.elem_list()?;
    p.finish()?;
    Ok(v)
}

impl Elem {
    fn prec(&self) -> u8 {
        match self {
            Elem::Add(..) | Elem::Sub(..) => 1,
            Elem::Mul(..) => 2,
            Elem::Neg(..) => 3,
            Elem::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Elem::Int(v) => write!(f, "{v}"),
            Elem::Var(s) => write!(f, "{s}"),
            Elem::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Elem::Add(a, b) | Elem::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " {} ", if matches!(self, Elem::Add(..)) { '+' } else { '-' })?;
                b.write_at(f, 2)
            }
            Elem::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Elem::Pow(a, k) => {
                a.write_at(f, 5)?;
                write!(f, "^{k}")
            }
            Elem::Tuple(items) => {
                write!(f, "(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    x.write_at(f, 0)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "Z/{n}"),
            RingExpr::Gf(q) => write!(f, "GF({q})"),
            RingExpr::PolyQuot { base, var, modulus } => {
                if matches!(**base, RingExpr::Product(_) | RingExpr::Idealization { .. }) {
                    write!(f, "({base})")?;
                } else {
                    write!(f, "{base}")?;
                }
                write!(f, "[{var}]/({modulus})")
            }
            RingExpr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    let wrap = match x {
                        RingExpr::Product(_) => true,
                        RingExpr::Idealization { .. } => i > 0,
                        _ => false,
                    };
                    if wrap {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            RingExpr::Idealization { base, gens } => {
                write!(f, "{base} (+) ideal(")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Integer polynomial in one variable, constant term first.
fn int_poly(e: &Elem, var: &str) -> DslResult<Vec<i64>> {
    fn trim(mut v: Vec<i64>) -> Vec<i64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
    fn mul(a: &[i64], b: &[i64]) -> DslResult<Vec<i64>> {
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = x
                    .checked_mul(y)
                    .and_then(|p| out[i + j].checked_add(p))
                    .ok_or_else(|| DslError::Eval("coefficient overflow".into()))?;
            }
        }
        Ok(trim(out))
    }
    fn lin(a: Vec<i64>, b: Vec<i64>, sign: i64) -> Vec<i64> {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| a.get(i).copied().unwrap_or(0) + sign * b.get(i).copied().unwrap_or(0))
            .collect();
        trim(v)
    }
    Ok(match e {
        Elem::Int(v) => trim(vec![i64::try_from(*v).map_err(|_| DslError::Eval("coefficient overflow".into()))?]),
        Elem::Var(s) if s == var => vec![0, 1],
        Elem::Var(s) => return Err(DslError::Eval(format!("unknown variable '{s}' in modulus"))),
        Elem::Neg(a) => int_poly(a, var)?.into_iter().map(|c| -c).collect(),
        Elem::Add(a, b) => lin(int_poly(a, var)?, int_poly(b, var)?, 1),
        Elem::Sub(a, b) => lin(int_poly(a, var)?, int_poly(b, var)?, -1),
        Elem::Mul(a, b) => mul(&int_poly(a, var)?, &int_poly(b, var)?)?,
        Elem::Pow(a, k) => {
            if *k > 64 {
                return Err(DslError::Eval("modulus exponent above 64".into()));
            }
            let a = int_poly(a, var)?;
            let mut acc = vec![1];
            for _ in 0..*k {
                acc = mul(&acc, &a)?;
            }
            acc
        }
        Elem::Tuple(_) => return Err(DslError::Eval("tuple in a modulus".into())),
    })
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Polynomial with integer coefficients as an element expression, leading
/// term first.
fn poly_elem(coeffs: &[usize], var: &str) -> Elem {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => None,
            1 => Some(Elem::Var(var.into())),
            _ => Some(Elem::Pow(Box::new(Elem::Var(var.into())), k as u32)),
        };
        terms.push(match (c, mono) {
            (c, None) => Elem::Int(c as u64),
            (1, Some(m)) => m,
            (c, Some(m)) => Elem::Mul(Box::new(Elem::Int(c as u64)), Box::new(m)),
        });
    }
    let mut it = terms.into_iter();
    let first = it.next().unwrap_or(Elem::Int(0));
    it.fold(first, |acc, t| Elem::Add(Box::new(acc), Box::new(t)))
}

/// `GF(q)` as `Z/p` or `Z/p[a]/(f)` with `f` the first monic irreducible of
/// degree `k` in enumeration order.
pub fn expand_gf(q: u64) -> DslResult<RingExpr> {
    let (p, k) = prime_power(q).ok_or_else(|| DslError::Eval(format!("GF({q}): {q} is not a prime power")))?;
    if k == 1 {
        return Ok(RingExpr::Zmod(p));
    }
    let fp = FiniteRing::zmod(p as usize)?;
    let f = monic_polys(&fp, k as usize)
        .into_iter()
        .find(|f| is_irreducible(&fp, f).unwrap_or(false))
        .ok_or_else(|| DslError::Eval(format!("no irreducible of degree {k} over Z/{p}")))?;
    Ok(RingExpr::PolyQuot {
        base: Box::new(RingExpr::Zmod(p)),
        var: "a".into(),
        modulus: poly_elem(f.coeffs(), "a"),
    })
}

pub fn build(expr: &RingExpr, cap: usize) -> DslResult<Ring> {
    Ok(match expr {
        RingExpr::Zmod(n) => {
            let n = usize::try_from(*n).map_err(|_| RingError::TooLarge { size: usize::MAX, cap })?;
            FiniteRing::zmod_with_cap(n, cap)?
        }
        RingExpr::Gf(q) => build(&expand_gf(*q)?, cap)?,
        RingExpr::PolyQuot { base, var, modulus } => {
            let b = build(base, cap)?;
            let coeffs = int_poly(modulus, var)?;
            let m: Vec<usize> = coeffs.iter().map(|&c| b.from_int(c)).collect();
            FiniteRing::poly_quot(&b, &m, var)?
        }
        RingExpr::Product(fs) => {
            let rings = fs.iter().map(|f| build(f, cap)).collect::<DslResult<Vec<_>>>()?;
            FiniteRing::product(&rings)?
        }
        RingExpr::Idealization { base, gens } => {
            let b = build(base, cap)?;
            let g = gens.iter().map(|e| eval(&b, e)).collect::<DslResult<Vec<_>>>()?;
            FiniteRing::idealization(&b, &Ideal::generated(&b, &g))?
        }
    })
}

pub fn parse_ring(src: &str, cap: usize) -> DslResult<Ring> {
    build(&parse(src)?, cap)
}

/// Value of an element literal in `ring`.
pub fn eval(ring: &Ring, e: &Elem) -> DslResult<usize> {
    Ok(match e {
        Elem::Int(v) => {
            let v = (*v % ring.size() as u64) as i64;
            ring.from_int(v)
        }
        Elem::Var(s) => ring
            .variable(s)
            .ok_or_else(|| DslError::Eval(format!("unknown variable '{s}' in {}", ring.describe())))?,
        Elem::Neg(a) => ring.neg(eval(ring, a)?),
        Elem::Add(a, b) => ring.add(eval(ring, a)?, eval(ring, b)?),
        Elem::Sub(a, b) => ring.sub(eval(ring, a)?, eval(ring, b)?),
        Elem::Mul(a, b) => ring.mul(eval(ring, a)?, eval(ring, b)?),
        Elem::Pow(a, k) => ring.pow(eval(ring, a)?, *k as u64),
        Elem::Tuple(items) => match ring.kind() {
            RingKind::Product { factors, .. } => {
                if items.len() != factors.len() {
                    return Err(DslError::Eval(format!(
                        "tuple of length {} for a product of {} factors",
                        items.len(),
                        factors.len()
                    )));
                }
                let comps = items
                    .iter()
                    .zip(factors)
                    .map(|(x, f)| eval(f, x))
                    .collect::<DslResult<Vec<_>>>()?;
                ring.tuple(&comps).unwrap()
            }
            RingKind::Idealization { base, .. } => {
                if items.len() != 2 {
                    return Err(DslError::Eval("idealization elements are pairs (r, m)".into()));
                }
                let r = eval(base, &items[0])?;
                let m = eval(base, &items[1])?;
                ring.pair(r, m)
                    .ok_or_else(|| DslError::Eval(format!("{} is not in the module", base.format(m))))?
            }
            // a constant coefficient over a product base
            RingKind::PolyQuot { base, .. } => ring.embed_base(eval(base, e)?),
            _ => return Err(DslError::Eval(format!("tuple literal in {}", ring.describe()))),
        },
    })
}

pub fn eval_str(ring: &Ring, src: &str) -> DslResult<usize> {
    eval(ring, &parse_elem(src)?)
}

pub fn eval_list(ring: &Ring, src: &str) -> DslResult<Vec<usize>> {
    parse_elems(src)?.iter().map(|e| eval(ring, e)).collect()
}

/// Random element expression over `vars`.
pub fn random_elem<R: Rng>(rng: &mut R, depth: u32, vars: &[&str]) -> Elem {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return if !vars.is_empty() && rng.gen_bool(0.5) {
            Elem::Var(vars[rng.gen_range(0..vars.len())].into())
        } else {
            Elem::Int(rng.gen_range(0..20))
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 => Elem::Neg(Box::new(random_elem(rng, d, vars))),
        1 => Elem::Add(Box::new(random_elem(rng, d, vars)), Box::new(random_elem(rng, d, vars))),
        2 => Elem::Sub(Box::new(random_elem(rng, d, vars)), Box::new(random_elem(rng, d, vars))),
        3 => Elem::Mul(Box::new(random_elem(rng, d, vars)), Box::new(random_elem(rng, d, vars))),
        4 => {
            let b = random_elem(rng, d, vars);
            Elem::Pow(Box::new(b), rng.gen_range(0..6))
        }
        _ => {
            let n = rng.gen_range(2..4);
            Elem::Tuple((0..n).map(|_| random_elem(rng, d, vars)).collect())
        }
    }
}

/// Syntactically valid expression; it need not build into a ring.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> RingExpr {
    const VARS: [&str; 4] = ["x", "y", "t", "a"];
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.5) {
            RingExpr::Zmod(rng.gen_range(2..50))
        } else {
            RingExpr::Gf(rng.gen_range(2..50))
        };
    }
    match rng.gen_range(0..3) {
        0 => {
            let var = VARS[rng.gen_range(0..VARS.len())];
            RingExpr::PolyQuot {
                base: Box::new(random_expr(rng, depth - 1)),
                var: var.into(),
                modulus: random_elem(rng, 3, &[var]),
            }
        }
        1 => {
            let n = rng.gen_range(2..4);
            RingExpr::Product((0..n).map(|_| random_expr(rng, depth - 1)).collect())
        }
        _ => {
            let n = rng.gen_range(1..3);
            RingExpr::Idealization {
                base: Box::new(random_expr(rng, depth - 1)),
                gens: (0..n).map(|_| random_elem(rng, 2, &VARS)).collect(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_forms() {
        let e = parse("Z/2[x]/(x^4+x)").unwrap();
        assert_eq!(e.to_string(), "Z/2[x]/(x^4 + x)");
        assert!(matches!(parse("Z/2 * GF(4)").unwrap(), RingExpr::Product(v) if v.len() == 2));
        assert!(matches!(parse("Z/4 (+) ideal(2)").unwrap(), RingExpr::Idealization { .. }));
    }

    #[test]
    fn syntax_error_position() {
        match parse("Z/2 *\n  GF(") {
            Err(DslError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 6)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gf_expansion() {
        assert_eq!(expand_gf(7).unwrap(), RingExpr::Zmod(7));
        assert_eq!(expand_gf(8).unwrap().to_string(), "Z/2[a]/(a^3 + a + 1)");
        assert!(expand_gf(12).is_err());
        let r = parse_ring("GF(9)", 1 << 16).unwrap();
        assert!(r.is_field());
    }

    #[test]
    fn element_literals() {
        let s = parse_ring("Z/2[x]/(x^4+x)", 1 << 16).unwrap();
        let u = eval_str(&s, "x^3 + x + 1").unwrap();
        assert_eq!(s.format(u), "x^3 + x + 1");
        let p = parse_ring("Z/4 * Z/2", 1 << 16).unwrap();
        assert_eq!(eval_list(&p, "(2, 1), (1,0)").unwrap().len(), 2);
        let i = parse_ring("Z/4 (+) ideal(2)", 1 << 16).unwrap();
        assert_eq!(i.size(), 8);
        assert!(eval_str(&i, "(1, 1)").is_err());
        assert_eq!(i.format(eval_str(&i, "(3, 2)").unwrap()), "(3, 2)");
    }
}
