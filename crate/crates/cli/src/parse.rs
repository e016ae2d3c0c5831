//! Text forms: ring specs, elements, fields and modes, homs and level
//! functionals.
//!
//! ```text
//! expr   := term {("+"|"-") term}
//! term   := ["-"] (rational | [rational "*"] factor {"*" factor})
//! factor := "J[" ident "]" | ident ["^" int] | "d(" mono ")" | "k" nat | "d" ident
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use toroidal_core::functor::LevelSpecialization;
use toroidal_core::{
    Exponent, FieldSpec, KTerm, KaehlerElement, Lc, LieAlgebra, LieElement, Rational, RingElement, RingHom, RingSpec,
    ToroidalAlgebra, ToroidalElement, VacuumModule, Variable,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

pub type PResult<T> = Result<T, ParseError>;

fn locate(src: &str, offset: usize, message: impl Into<String>) -> ParseError {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ParseError { line, column, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Arrow => write!(f, "`->`"),
        }
    }
}

fn lex(src: &str) -> PResult<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), i));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Int(s), i));
        } else if c == '-' {
            it.next();
            if it.peek().map(|&(_, c)| c) == Some('>') {
                it.next();
                out.push((Tok::Arrow, i));
            } else {
                out.push((Tok::Sym('-'), i));
            }
        } else if "+*/^[]();:=,".contains(c) {
            it.next();
            out.push((Tok::Sym(c), i));
        } else {
            return Err(locate(src, i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> PResult<Self> {
        Ok(Parser { src, toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |(_, o)| *o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(locate(self.src, self.offset(), msg))
    }

    fn err_at<T>(&self, offset: usize, msg: impl Into<String>) -> PResult<T> {
        Err(locate(self.src, offset, msg))
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(t) => self.err(format!("expected `{c}`, found {t}")),
                None => self.err(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => self.err(format!("expected a name, found {t}")),
            None => self.err("expected a name, found end of input"),
        }
    }

    fn keyword(&mut self, word: &str) -> PResult<()> {
        let at = self.offset();
        let got = self.ident()?;
        if got == word {
            Ok(())
        } else {
            self.err_at(at, format!("expected `{word}`, found `{got}`"))
        }
    }

    fn end(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.err(format!("unexpected {t}")),
        }
    }

    fn nat(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => self.err(format!("expected a number, found {t}")),
            None => self.err("expected a number, found end of input"),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat('-');
        let at = self.offset();
        let s = self.nat()?;
        let v: i64 = s.parse().map_err(|_| locate(self.src, at, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    /// `int ["/" nat]`
    fn rational(&mut self) -> PResult<Rational> {
        let at = self.offset();
        let n = self.nat()?;
        let text = if self.eat('/') {
            let d = self.nat()?;
            if d.bytes().all(|b| b == b'0') {
                return self.err_at(at, "zero denominator");
            }
            format!("{n}/{d}")
        } else {
            n
        };
        text.parse().map_err(|_| locate(self.src, at, "bad rational"))
    }

    fn signed_rational(&mut self) -> PResult<Rational> {
        let neg = self.eat('-');
        let r = self.rational()?;
        Ok(if neg { -r } else { r })
    }
}

/// `laurent:x,y;poly:u;t=name`. A Laurent variable called `t` is the loop
/// variable unless `t=` says otherwise.
pub fn parse_ring(src: &str) -> PResult<Arc<RingSpec>> {
    let mut p = Parser::new(src)?;
    let mut vars: Vec<(Variable, usize)> = Vec::new();
    let mut t: Option<(String, usize)> = None;
    loop {
        let at = p.offset();
        let key = p.ident()?;
        match key.as_str() {
            "laurent" | "poly" => {
                p.expect(':')?;
                loop {
                    let at = p.offset();
                    let name = p.ident()?;
                    if vars.iter().any(|(v, _)| v.name == name) {
                        return p.err_at(at, format!("duplicate variable `{name}`"));
                    }
                    let v = if key == "laurent" { Variable::laurent(&name) } else { Variable::poly(&name) };
                    vars.push((v, at));
                    if !p.eat(',') {
                        break;
                    }
                }
            }
            "t" => {
                p.expect('=')?;
                let at = p.offset();
                t = Some((p.ident()?, at));
            }
            other => return p.err_at(at, format!("unknown ring section `{other}`")),
        }
        if !p.eat(';') {
            break;
        }
    }
    p.end()?;
    let t_index = match &t {
        Some((name, at)) => match vars.iter().position(|(v, _)| &v.name == name) {
            Some(i) if vars[i].0.invertible => Some(i),
            Some(_) => return p.err_at(*at, format!("loop variable `{name}` must be a Laurent variable")),
            None => return p.err_at(*at, format!("unknown variable `{name}`")),
        },
        None => vars.iter().position(|(v, _)| v.name == "t" && v.invertible),
    };
    if vars.is_empty() {
        return p.err_at(0, "a ring needs at least one variable");
    }
    RingSpec::new(vars.into_iter().map(|(v, _)| v).collect(), t_index).map_err(|e| locate(src, 0, e.to_string()))
}

/// A parsed element; the type follows from the factors used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Ring(RingElement),
    Kaehler(KaehlerElement),
    Toroidal(ToroidalElement),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Ring(r) => r.fmt(f),
            Element::Kaehler(w) => w.fmt(f),
            Element::Toroidal(x) => x.fmt(f),
        }
    }
}

impl Element {
    pub fn kind(&self) -> &'static str {
        match self {
            Element::Ring(_) => "ring",
            Element::Kaehler(_) => "kaehler",
            Element::Toroidal(_) => "toroidal",
        }
    }
}

/// What an expression is parsed against.
#[derive(Clone, Copy)]
pub struct Context<'a> {
    pub ring: &'a Arc<RingSpec>,
    pub lie: Option<&'a Arc<LieAlgebra>>,
}

#[derive(Default)]
struct Sum {
    ring: Lc<Exponent>,
    central: Lc<KTerm>,
    loops: Lc<(usize, Exponent)>,
    saw_ring: Option<usize>,
    saw_form: bool,
    saw_loop: bool,
}

impl Parser<'_> {
    fn expr(&mut self, ctx: Context<'_>) -> PResult<Sum> {
        let mut sum = Sum::default();
        let mut sign = Rational::from_integer(1.into());
        if self.eat('-') {
            sign = -sign;
        }
        loop {
            self.term(ctx, &sign, &mut sum)?;
            if self.eat('+') {
                sign = Rational::from_integer(1.into());
            } else if self.eat('-') {
                sign = Rational::from_integer((-1).into());
            } else {
                break;
            }
        }
        Ok(sum)
    }

    fn monomial_factor(&mut self, ctx: Context<'_>, name: &str, at: usize, exp: &mut Exponent) -> PResult<()> {
        let i = ctx.ring.var_index(name).ok_or_else(|| locate(self.src, at, format!("unknown variable `{name}`")))?;
        let k = if self.eat('^') { self.int()? } else { 1 };
        exp.0[i] += k;
        Ok(())
    }

    fn term(&mut self, ctx: Context<'_>, sign: &Rational, sum: &mut Sum) -> PResult<()> {
        let start = self.offset();
        let spec = ctx.ring;
        let n = spec.nvars();
        let mut coeff = sign.clone();
        let mut exp = Exponent::zero(n);
        let mut lie: Option<usize> = None;
        let mut diff: Option<Lc<KTerm>> = None;
        if matches!(self.peek(), Some(Tok::Int(_))) {
            coeff *= self.rational()?;
            if !self.eat('*') {
                sum.saw_ring.get_or_insert(start);
                sum.ring.add_term(Exponent::zero(n), coeff);
                return Ok(());
            }
        }
        loop {
            let at = self.offset();
            let name = self.ident()?;
            if name == "J" && self.is_sym('[') {
                self.expect('[')?;
                let lat = self.offset();
                let lname = self.ident()?;
                self.expect(']')?;
                let Some(l) = ctx.lie else {
                    return self.err_at(at, "Lie generators need a Lie algebra context");
                };
                let idx = l
                    .index_of(&lname)
                    .ok_or_else(|| locate(self.src, lat, format!("unknown Lie basis element `{lname}`")))?;
                if lie.replace(idx).is_some() {
                    return self.err_at(at, "at most one Lie generator per term");
                }
            } else if name == "d" && self.is_sym('(') && spec.var_index("d").is_none() {
                self.expect('(')?;
                let mut m = Exponent::zero(n);
                if matches!(self.peek(), Some(Tok::Int(s)) if s == "1")
                    && self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::Sym(')'))
                {
                    self.pos += 1;
                } else {
                    loop {
                        let vat = self.offset();
                        let v = self.ident()?;
                        self.monomial_factor(ctx, &v, vat, &mut m)?;
                        if !self.eat('*') {
                            break;
                        }
                    }
                }
                self.expect(')')?;
                if !spec.is_legal(&m) {
                    return self.err_at(at, "illegal negative exponent on a polynomial variable");
                }
                let mut d = Lc::new();
                for (i, &k) in m.0.iter().enumerate() {
                    if k != 0 {
                        d.add_term(KTerm::new(m.shifted(i, -1), i), Rational::from_integer(k.into()));
                    }
                }
                if diff.replace(d).is_some() {
                    return self.err_at(at, "at most one differential per term");
                }
            } else if spec.var_index(&name).is_some() {
                self.monomial_factor(ctx, &name, at, &mut exp)?;
            } else if let Some(i) = name.strip_prefix('d').and_then(|v| spec.var_index(v)) {
                if diff.replace(Lc::basis(KTerm::new(Exponent::zero(n), i))).is_some() {
                    return self.err_at(at, "at most one differential per term");
                }
            } else if let Some(i) = name.strip_prefix('k').and_then(|d| d.parse::<usize>().ok()) {
                if i >= n {
                    return self.err_at(at, format!("`{name}`: no variable with index {i}"));
                }
                if !spec.vars()[i].invertible {
                    return self.err_at(at, format!("`{name}`: variable `{}` is not invertible", spec.vars()[i].name));
                }
                let k = KTerm::new(Exponent::unit(n, i).scale(-1), i);
                if diff.replace(Lc::basis(k)).is_some() {
                    return self.err_at(at, "at most one differential per term");
                }
            } else {
                return self.err_at(at, format!("unknown identifier `{name}`"));
            }
            if !self.eat('*') {
                break;
            }
        }
        match (lie, diff) {
            (Some(_), Some(_)) => self.err_at(start, "a Lie generator cannot multiply a differential"),
            (Some(l), None) => {
                if !spec.is_legal(&exp) {
                    return self.err_at(start, "illegal negative exponent on a polynomial variable");
                }
                sum.saw_loop = true;
                sum.loops.add_term((l, exp), coeff);
                Ok(())
            }
            (None, Some(d)) => {
                for (k, c) in &d {
                    let e = k.exp.add(&exp);
                    if !spec.is_legal(&e) {
                        return self.err_at(start, "illegal negative exponent on a polynomial variable");
                    }
                    sum.central.add_term(KTerm::new(e, k.var), c * &coeff);
                }
                sum.saw_form = true;
                Ok(())
            }
            (None, None) => {
                if !spec.is_legal(&exp) {
                    return self.err_at(start, "illegal negative exponent on a polynomial variable");
                }
                sum.saw_ring.get_or_insert(start);
                sum.ring.add_term(exp, coeff);
                Ok(())
            }
        }
    }
}

fn finish(p: &Parser<'_>, ctx: Context<'_>, sum: Sum) -> PResult<Element> {
    let spec = ctx.ring;
    let only_zero_scalars = sum.ring.is_zero();
    if (sum.saw_loop || sum.saw_form) && sum.saw_ring.is_some() && !only_zero_scalars {
        return p.err_at(sum.saw_ring.unwrap_or(0), "cannot add a ring element to a Lie or differential term");
    }
    let wrap = |e: toroidal_core::Error| locate(p.src, 0, e.to_string());
    if sum.saw_loop {
        let lie = ctx.lie.expect("checked when the generator was parsed");
        let alg = ToroidalAlgebra::new(lie.clone(), spec.clone());
        return alg.element(sum.loops, sum.central).map(Element::Toroidal).map_err(wrap);
    }
    if sum.saw_form {
        return KaehlerElement::from_terms(spec, sum.central).map(Element::Kaehler).map_err(wrap);
    }
    RingElement::from_terms(spec, sum.ring).map(Element::Ring).map_err(wrap)
}

pub fn parse_element(src: &str, ctx: Context<'_>) -> PResult<Element> {
    let mut p = Parser::new(src)?;
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let sum = p.expr(ctx)?;
    p.end()?;
    finish(&p, ctx, sum)
}

pub fn parse_ring_element(src: &str, ring: &Arc<RingSpec>) -> PResult<RingElement> {
    match parse_element(src, Context { ring, lie: None })? {
        Element::Ring(r) => Ok(r),
        other => Err(locate(src, 0, format!("expected a ring element, found a {} element", other.kind()))),
    }
}

/// Differentials; a literal `0` is accepted as the zero form.
pub fn parse_kaehler(src: &str, ring: &Arc<RingSpec>) -> PResult<KaehlerElement> {
    match parse_element(src, Context { ring, lie: None })? {
        Element::Kaehler(w) => Ok(w),
        Element::Ring(r) if r.is_zero() => Ok(KaehlerElement::zero(ring)),
        other => Err(locate(src, 0, format!("expected a differential, found a {} element", other.kind()))),
    }
}

pub fn parse_toroidal(src: &str, ring: &Arc<RingSpec>, lie: &Arc<LieAlgebra>) -> PResult<ToroidalElement> {
    let alg = ToroidalAlgebra::new(lie.clone(), ring.clone());
    match parse_element(src, Context { ring, lie: Some(lie) })? {
        Element::Toroidal(x) => Ok(x),
        Element::Kaehler(w) => alg.central(&w).map_err(|e| locate(src, 0, e.to_string())),
        Element::Ring(r) if r.is_zero() => Ok(alg.zero()),
        Element::Ring(_) => Err(locate(src, 0, "expected an element of the toroidal algebra, found a ring element")),
    }
}

impl Parser<'_> {
    /// `[rational "*"] name {("+"|"-") ...}` over the Lie basis.
    fn lie_combination(&mut self, lie: &LieAlgebra) -> PResult<LieElement> {
        let mut out = LieElement::zero(lie.dim());
        let mut sign = Rational::from_integer(1.into());
        if self.eat('-') {
            sign = -sign;
        }
        loop {
            let mut c = sign.clone();
            if matches!(self.peek(), Some(Tok::Int(_))) {
                c *= self.rational()?;
                self.expect('*')?;
            }
            let at = self.offset();
            let name = self.ident()?;
            let i = lie
                .index_of(&name)
                .ok_or_else(|| locate(self.src, at, format!("unknown Lie basis element `{name}`")))?;
            out.coeffs[i] += c;
            if self.eat('+') {
                sign = Rational::from_integer(1.into());
            } else if self.eat('-') {
                sign = Rational::from_integer((-1).into());
            } else {
                return Ok(out);
            }
        }
    }

    fn field(&mut self, module: &VacuumModule) -> PResult<FieldSpec> {
        let at = self.offset();
        let family = self.ident()?;
        let ctx = Context { ring: module.ring(), lie: None };
        let wrap = |src: &str, e: toroidal_core::Error| locate(src, at, e.to_string());
        self.expect('[')?;
        let spec = match family.as_str() {
            "J" => {
                let lie = self.lie_combination(module.lie())?;
                let u = if self.eat(';') {
                    self.keyword("u")?;
                    self.expect('=')?;
                    self.ring_until_bracket(ctx)?
                } else {
                    RingElement::one(module.ring())
                };
                module.field_j(lie, u).map_err(|e| wrap(self.src, e))?
            }
            "Kdt" => {
                self.keyword("u")?;
                self.expect('=')?;
                let u = self.ring_until_bracket(ctx)?;
                module.field_kdt(u).map_err(|e| wrap(self.src, e))?
            }
            "Kom" => {
                self.keyword("w")?;
                self.expect('=')?;
                let eat = self.offset();
                let sum = self.expr(ctx)?;
                let w = match finish(self, ctx, sum)? {
                    Element::Kaehler(w) => w,
                    _ => return self.err_at(eat, "expected a differential"),
                };
                module.field_kom(w).map_err(|e| wrap(self.src, e))?
            }
            other => return self.err_at(at, format!("unknown field family `{other}` (expected J, Kdt or Kom)")),
        };
        self.expect(']')?;
        Ok(spec)
    }

    fn ring_until_bracket(&mut self, ctx: Context<'_>) -> PResult<RingElement> {
        let at = self.offset();
        let sum = self.expr(ctx)?;
        match finish(self, ctx, sum)? {
            Element::Ring(r) => Ok(r),
            _ => self.err_at(at, "expected a ring element"),
        }
    }
}

/// `J[e;u=x^2]`, `Kdt[u=1]`, `Kom[w=x^-1*dx]`.
pub fn parse_field(src: &str, module: &VacuumModule) -> PResult<FieldSpec> {
    let mut p = Parser::new(src)?;
    let f = p.field(module)?;
    p.end()?;
    Ok(f)
}

/// A sequence of modes such as `J[e;u=1](1) J[f](-1)`, optionally separated
/// by commas.
pub fn parse_modes(src: &str, module: &VacuumModule) -> PResult<Vec<(FieldSpec, i64)>> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while p.peek().is_some() {
        let f = p.field(module)?;
        p.expect('(')?;
        let n = p.int()?;
        p.expect(')')?;
        out.push((f, n));
        p.eat(',');
    }
    Ok(out)
}

/// `hom: x -> y^2; t -> t`. Every source variable must be given an image.
pub fn parse_hom(src: &str, source: &Arc<RingSpec>, target: &Arc<RingSpec>) -> PResult<RingHom> {
    let mut p = Parser::new(src)?;
    p.keyword("hom")?;
    p.expect(':')?;
    let mut images: Vec<Option<RingElement>> = vec![None; source.nvars()];
    let ctx = Context { ring: target, lie: None };
    loop {
        let at = p.offset();
        let name = p.ident()?;
        let i = source.var_index(&name).ok_or_else(|| locate(src, at, format!("unknown source variable `{name}`")))?;
        if p.peek() != Some(&Tok::Arrow) {
            return p.err("expected `->`");
        }
        p.pos += 1;
        let img = p.ring_until_bracket(ctx)?;
        if images[i].replace(img).is_some() {
            return p.err_at(at, format!("`{name}` mapped twice"));
        }
        if !p.eat(';') {
            break;
        }
    }
    p.end()?;
    let mut out = Vec::new();
    for (i, img) in images.into_iter().enumerate() {
        match img {
            Some(r) => out.push(r),
            None => return p.err(format!("no image given for `{}`", source.vars()[i].name)),
        }
    }
    RingHom::new(source, target, out).map_err(|e| locate(src, 0, e.to_string()))
}

/// `chi: 1 -> 1; x -> 0`. Keys are fiber monomials.
pub fn parse_chi(src: &str, ring: &Arc<RingSpec>) -> PResult<LevelSpecialization> {
    let mut p = Parser::new(src)?;
    p.keyword("chi")?;
    p.expect(':')?;
    let mut values = BTreeMap::new();
    let t = ring.t();
    loop {
        let at = p.offset();
        let mut e = Exponent::zero(ring.nvars());
        if matches!(p.peek(), Some(Tok::Int(s)) if s == "1") {
            p.pos += 1;
        } else {
            loop {
                let vat = p.offset();
                let v = p.ident()?;
                p.monomial_factor(Context { ring, lie: None }, &v, vat, &mut e)?;
                if !p.eat('*') {
                    break;
                }
            }
        }
        if t.is_some_and(|t| e.get(t) != 0) {
            return p.err_at(at, "level functionals take fiber monomials (no t)");
        }
        if p.peek() != Some(&Tok::Arrow) {
            return p.err("expected `->`");
        }
        p.pos += 1;
        let v = p.signed_rational()?;
        if values.insert(e, v).is_some() {
            return p.err_at(at, "monomial given twice");
        }
        if !p.eat(';') {
            break;
        }
    }
    p.end()?;
    Ok(LevelSpecialization::new(values))
}
