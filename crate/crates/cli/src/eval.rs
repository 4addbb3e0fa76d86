//! A small expression language over named objects of an algebra.
//!
//! ```text
//! expr  := name '(' expr (',' expr)* ')' | atom
//! atom  := rational | 't' | A<k> | m<k> | a<k> | e<digits> | e{i,j,..} | x<i> | F0 | I
//! ```

use gla_core::cohomology::{cyclic_wedge, phi, phi_inverse, theta_inverse, theta_map};
use gla_core::exterior::{clifford_star, super_poisson, ExteriorElement};
use gla_core::multilinear::{
    circ_product, gerstenhaber_bracket, iota_contract, nr_bracket, skew_symmetrize, times_product, trace_lift,
    MultiMap, SkewMap,
};
use gla_core::quadratic::threeform_from_bracket;
use gla_core::{GramMatrix, Rational, Scalar};
use serde_json::{json, Value};

use crate::algebra::Loaded;
use crate::report::Render;

#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    Scalar(Scalar),
    Form(ExteriorElement),
    Skew(SkewMap),
    Multi(MultiMap),
}

impl Val {
    fn kind(&self) -> &'static str {
        match self {
            Val::Scalar(_) => "scalar",
            Val::Form(_) => "form",
            Val::Skew(_) => "skew-map",
            Val::Multi(_) => "multilinear-map",
        }
    }

    pub fn to_json(&self) -> Value {
        let value = match self {
            Val::Scalar(s) => s.render(),
            Val::Form(f) => f.render(),
            Val::Skew(f) => f.render(),
            Val::Multi(f) => f.render(),
        };
        json!({ "kind": self.kind(), "value": value })
    }

    pub fn to_text(&self) -> String {
        match self {
            Val::Scalar(s) => s.to_string(),
            Val::Form(f) if f.is_zero() => "0".into(),
            Val::Form(f) if f.homogeneous_degree() == Some(0) => f.coeff(0).to_string(),
            Val::Form(f) => f.to_string(),
            Val::Skew(f) => {
                let parts: Vec<String> = f
                    .forms()
                    .iter()
                    .enumerate()
                    .flat_map(|(r, form)| {
                        form.terms().iter().map(move |(m, c)| {
                            let idx: Vec<String> =
                                gla_core::exterior::mask_indices(*m).iter().map(|i| (i + 1).to_string()).collect();
                            format!("({c}) e{} -> X{}", idx.join("_"), r + 1)
                        })
                    })
                    .collect();
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
            Val::Multi(f) => {
                let parts: Vec<String> = f
                    .terms()
                    .iter()
                    .map(|((inputs, o), c)| {
                        let idx: Vec<String> = inputs.iter().map(|i| (i + 1).to_string()).collect();
                        format!("({c}) ({}) -> X{}", idx.join(","), o + 1)
                    })
                    .collect();
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Slash,
    Minus,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '(' | ')' | '{' | '}' | ',' | '/' | '-' => {
                out.push(match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    '/' => Tok::Slash,
                    _ => Tok::Minus,
                });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(format!("unexpected character `{c}` at position {i}")),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum Expr {
    Num(Rational),
    Atom(String),
    Monomial(Vec<usize>),
    Neg(Box<Expr>),
    Call(String, Vec<Expr>),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.next() {
            Some(ref x) if *x == t => Ok(()),
            other => Err(format!("expected {t:?}, found {other:?}")),
        }
    }

    fn integer(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Num(d)) => Ok(d),
            other => Err(format!("expected a number, found {other:?}")),
        }
    }

    fn expr(&mut self) -> Result<Expr, String> {
        match self.next() {
            Some(Tok::Minus) => Ok(Expr::Neg(Box::new(self.expr()?))),
            Some(Tok::Num(d)) => {
                let num: i64 = d.parse().map_err(|_| format!("number `{d}` out of range"))?;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let den: i64 = self.integer()?.parse().map_err(|_| "denominator out of range".to_string())?;
                    if den == 0 {
                        return Err("zero denominator".into());
                    }
                    Ok(Expr::Num(Rational::new(num.into(), den.into())))
                } else {
                    Ok(Expr::Num(Rational::from_integer(num.into())))
                }
            }
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let mut args = vec![self.expr()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Call(name, args))
                } else if name == "e" && self.peek() == Some(&Tok::LBrace) {
                    self.pos += 1;
                    let mut idx = Vec::new();
                    if self.peek() != Some(&Tok::RBrace) {
                        idx.push(self.index()?);
                        while self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                            idx.push(self.index()?);
                        }
                    }
                    self.expect(Tok::RBrace)?;
                    Ok(Expr::Monomial(idx))
                } else {
                    Ok(Expr::Atom(name))
                }
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }

    fn index(&mut self) -> Result<usize, String> {
        let d = self.integer()?;
        d.parse().map_err(|_| format!("index `{d}` out of range"))
    }
}

pub fn parse(s: &str) -> Result<Expr, String> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input after token {}", p.pos));
    }
    Ok(e)
}

/// Where names are resolved: an optional algebra and a dimension for bare forms.
pub struct Env<'a> {
    pub algebra: Option<&'a Loaded>,
    pub n: Option<usize>,
}

impl Env<'_> {
    fn dim(&self) -> Result<usize, String> {
        match (self.algebra, self.n) {
            (Some(a), Some(n)) if a.dim() != n => {
                Err(format!("--n {n} disagrees with the dimension {} of `{}`", a.dim(), a.name))
            }
            (Some(a), _) => Ok(a.dim()),
            (None, Some(n)) => Ok(n),
            (None, None) => Err("dimension unknown: pass --algebra or --n".into()),
        }
    }

    fn algebra(&self) -> Result<&Loaded, String> {
        self.algebra.ok_or_else(|| "this expression needs --algebra".to_string())
    }

    fn gram(&self) -> Result<GramMatrix, String> {
        match self.algebra {
            Some(a) => a.lie.require_gram().cloned().map_err(|e| e.to_string()),
            None => Ok(GramMatrix::identity(self.dim()?)),
        }
    }
}

fn err(e: gla_core::GlaError) -> String {
    e.to_string()
}

fn suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix).filter(|d| !d.is_empty()).and_then(|d| d.parse().ok())
}

fn atom(env: &Env, name: &str) -> Result<Val, String> {
    if name == "t" {
        return Ok(Val::Scalar(Scalar::t()));
    }
    if name == "F0" {
        return Ok(Val::Skew(env.algebra()?.lie.bracket().clone()));
    }
    if name == "I" {
        return Ok(Val::Form(threeform_from_bracket(&env.algebra()?.lie).map_err(err)?));
    }
    if let Some(k) = suffix(name, "A") {
        let alg = env.algebra()?.require_assoc()?;
        return Ok(Val::Skew(alg.standard_polynomial(k).map_err(err)?));
    }
    if let Some(k) = suffix(name, "m") {
        let alg = env.algebra()?.require_assoc()?;
        return Ok(Val::Multi(alg.iterated_product(k).map_err(err)?));
    }
    if let Some(k) = suffix(name, "a") {
        let alg = env.algebra()?.require_assoc()?;
        return Ok(Val::Form(trace_lift(&alg.standard_polynomial(k).map_err(err)?, alg).map_err(err)?));
    }
    if let Some(i) = suffix(name, "x") {
        let n = env.dim()?;
        if i == 0 || i > n {
            return Err(format!("x{i} out of range for dimension {n}"));
        }
        let v: Vec<Rational> = (0..n).map(|j| Rational::from_integer(i64::from(j + 1 == i).into())).collect();
        return Ok(Val::Skew(SkewMap::vector(&v)));
    }
    if let Some(digits) = name.strip_prefix('e').filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit())) {
        let idx: Vec<usize> = digits.bytes().map(|b| (b - b'0') as usize).collect();
        return monomial(env, &idx);
    }
    Err(format!("unknown name `{name}`"))
}

fn monomial(env: &Env, idx: &[usize]) -> Result<Val, String> {
    let n = env.dim()?;
    if let Some(&i) = idx.iter().find(|&&i| i == 0 || i > n) {
        return Err(format!("generator e{i} out of range for dimension {n}"));
    }
    let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
    Ok(Val::Form(ExteriorElement::monomial(n, &zero_based)))
}

fn as_form(env: &Env, v: Val) -> Result<ExteriorElement, String> {
    match v {
        Val::Form(f) => Ok(f),
        Val::Scalar(s) => Ok(ExteriorElement::scalar(env.dim()?, s)),
        other => Err(format!("expected a form, found a {}", other.kind())),
    }
}

fn as_skew(v: Val) -> Result<SkewMap, String> {
    match v {
        Val::Skew(f) => Ok(f),
        other => Err(format!("expected a skew map, found a {}", other.kind())),
    }
}

fn as_multi(v: Val) -> Result<MultiMap, String> {
    match v {
        Val::Multi(f) => Ok(f),
        Val::Skew(f) => Ok(f.to_multimap()),
        other => Err(format!("expected a multilinear map, found a {}", other.kind())),
    }
}

fn as_scalar(v: Val) -> Result<Scalar, String> {
    match v {
        Val::Scalar(s) => Ok(s),
        other => Err(format!("expected a scalar, found a {}", other.kind())),
    }
}

fn combine(env: &Env, a: Val, b: Val, c: &Scalar) -> Result<Val, String> {
    Ok(match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(&x + &(&y * c)),
        (Val::Skew(x), Val::Skew(y)) => {
            let mut out = x;
            out.add_scaled(&y, c).map_err(err)?;
            Val::Skew(out)
        }
        (Val::Multi(x), Val::Multi(y)) => {
            let mut out = x;
            out.add_scaled(&y, c).map_err(err)?;
            Val::Multi(out)
        }
        (x, y) => {
            let mut out = as_form(env, x)?;
            let y = as_form(env, y)?;
            if out.dim() != y.dim() {
                return Err(format!("dimension mismatch: {} and {}", out.dim(), y.dim()));
            }
            out.add_scaled(&y, c);
            Val::Form(out)
        }
    })
}

fn scale(v: Val, c: &Scalar) -> Val {
    match v {
        Val::Scalar(s) => Val::Scalar(&s * c),
        Val::Form(f) => Val::Form(f.scale(c)),
        Val::Skew(f) => Val::Skew(f.scale(c)),
        Val::Multi(f) => Val::Multi(f.scale(c)),
    }
}

fn call(env: &Env, name: &str, args: Vec<Val>) -> Result<Val, String> {
    let arity = match name {
        "tr" | "skew" | "theta" | "phi" | "thetainv" | "phiinv" => 1,
        "nr" | "gerst" | "circ" | "times" | "wedge" | "star" | "poisson" | "cwedge" | "iota" | "add" | "sub"
        | "scale" => 2,
        _ => return Err(format!("unknown function `{name}`")),
    };
    if args.len() != arity {
        return Err(format!("`{name}` takes {arity} argument(s), got {}", args.len()));
    }
    let mut it = args.into_iter();
    let mut arg = || it.next().expect("arity checked");
    Ok(match name {
        "nr" => Val::Skew(nr_bracket(&as_skew(arg())?, &as_skew(arg())?).map_err(err)?),
        "gerst" => Val::Multi(gerstenhaber_bracket(&as_multi(arg())?, &as_multi(arg())?).map_err(err)?),
        "circ" => {
            let alg = env.algebra()?.require_assoc()?;
            Val::Multi(circ_product(&as_multi(arg())?, &as_multi(arg())?, alg).map_err(err)?)
        }
        "times" => {
            let alg = env.algebra()?.require_assoc()?;
            Val::Skew(times_product(&as_skew(arg())?, &as_skew(arg())?, alg).map_err(err)?)
        }
        "skew" => Val::Skew(skew_symmetrize(&as_multi(arg())?)),
        "tr" => {
            let alg = env.algebra()?.require_assoc()?;
            Val::Form(trace_lift(&as_skew(arg())?, alg).map_err(err)?)
        }
        "wedge" => Val::Form(as_form(env, arg())?.wedge(&as_form(env, arg())?).map_err(err)?),
        "star" => Val::Form(clifford_star(&as_form(env, arg())?, &as_form(env, arg())?).map_err(err)?),
        "poisson" => {
            let g = env.gram()?;
            Val::Form(super_poisson(&as_form(env, arg())?, &as_form(env, arg())?, &g).map_err(err)?)
        }
        "theta" => Val::Form(theta_map(&as_skew(arg())?, &env.gram()?).map_err(err)?),
        "phi" => Val::Form(phi(&as_skew(arg())?, &env.gram()?).map_err(err)?),
        "thetainv" => Val::Skew(theta_inverse(&as_form(env, arg())?, &env.gram()?).map_err(err)?),
        "phiinv" => Val::Skew(phi_inverse(&as_form(env, arg())?, &env.gram()?).map_err(err)?),
        "cwedge" => Val::Skew(cyclic_wedge(&as_skew(arg())?, &as_skew(arg())?, &env.gram()?).map_err(err)?),
        "iota" => {
            let x = as_skew(arg())?;
            if x.arity() != 0 {
                return Err("iota expects a vector as its first argument".into());
            }
            let v: Vec<Rational> = x
                .eval(&[])
                .iter()
                .map(|c| c.as_rational().cloned().ok_or_else(|| "iota needs a rational vector".to_string()))
                .collect::<Result<_, _>>()?;
            Val::Skew(iota_contract(&v, &as_skew(arg())?).map_err(err)?)
        }
        "add" => combine(env, arg(), arg(), &Scalar::one())?,
        "sub" => combine(env, arg(), arg(), &Scalar::int(-1))?,
        "scale" => {
            let c = as_scalar(arg())?;
            scale(arg(), &c)
        }
        _ => unreachable!("arity table covers every function"),
    })
}

pub fn evaluate(env: &Env, e: &Expr) -> Result<Val, String> {
    match e {
        Expr::Num(r) => Ok(Val::Scalar(Scalar::Rat(r.clone()))),
        Expr::Atom(name) => atom(env, name),
        Expr::Monomial(idx) => monomial(env, idx),
        Expr::Neg(inner) => Ok(scale(evaluate(env, inner)?, &Scalar::int(-1))),
        Expr::Call(name, args) => {
            let vals = args.iter().map(|a| evaluate(env, a)).collect::<Result<Vec<_>, _>>()?;
            call(env, name, vals)
        }
    }
}
