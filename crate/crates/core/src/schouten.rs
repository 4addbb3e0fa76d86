//! Polynomial multivector fields on `g*`, the Schouten bracket and the embedding `V` of
//! Grassmann derivations.
//!
//! Coordinates `x_1..x_n` are the basis vectors of `g` viewed as linear functions on
//! `g*`; the direction `∂_i` pairs with `dx_i`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::derivation::GrassmannDerivation;
use crate::error::{check_dim, GlaError, Result};
use crate::exterior::{check_n, degree, interior_mask, inversion_sign, mask_indices, masks_lex, Mask};
use crate::scalar::{Rational, Scalar};

/// Default cap on the total degree of polynomial coefficients.
pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

fn exp_degree(e: &Exponent) -> u32 {
    e.iter().sum()
}

fn exp_add(a: &Exponent, b: &Exponent) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn exp_label(e: &Exponent) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// A polynomial in `n` commuting variables with [`Scalar`] coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::monomial(n, vec![0; n], c)
    }

    /// The coordinate function `x_i`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(n, e, Scalar::one())
    }

    pub fn monomial(n: usize, exp: Exponent, c: Scalar) -> Self {
        assert_eq!(exp.len(), n, "exponent length");
        let mut p = Self::zero(n);
        p.add_term(exp, c);
        p
    }

    /// A linear polynomial `Σ v_i x_i`.
    pub fn linear(v: &[Rational]) -> Self {
        let n = v.len();
        let mut p = Self::zero(n);
        for (i, c) in v.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, Scalar::Rat(c.clone()));
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Exponent, c: Scalar) {
        debug_assert_eq!(exp.len(), self.n);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(exp_degree).max()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        let mut out = self.clone();
        for (e, x) in &other.terms {
            out.add_term(e.clone(), x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Self {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(exp_add(a, b), x * y);
            }
        }
        out
    }

    /// `∂f/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, x) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, x.scale(&Rational::from_integer(e[i].into())));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Scalar> {
        check_dim(self.n, point.len())?;
        let mut s = Scalar::zero();
        for (e, x) in &self.terms {
            let mut m = Rational::from_integer(1.into());
            for (pi, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    m *= pi;
                }
            }
            s += &x.scale(&m);
        }
        Ok(s)
    }

    /// `{"a,b,c": coeff}` keyed by exponent vectors.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in &self.terms {
            m.insert(exp_label(e), Value::String(c.to_string()));
        }
        json!({ "dim": self.n, "terms": m })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| if *k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                    .collect();
                if vars.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// A multivector field `Σ P_I ∂_I` of fixed multivector degree `p = |I|`; it is zero
/// whenever `p > n`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMultivector {
    n: usize,
    degree: usize,
    terms: BTreeMap<(Exponent, Mask), Scalar>,
}

impl PolyMultivector {
    pub fn zero(n: usize, degree: usize) -> Self {
        check_n(n).expect("dimension within limits");
        PolyMultivector { n, degree, terms: BTreeMap::new() }
    }

    /// `P ∂_I` for sorted 0-based directions `I`.
    pub fn from_term(p: &Polynomial, dirs: &[usize]) -> Result<Self> {
        let mask = crate::exterior::mask_of(dirs);
        if degree(mask) != dirs.len() || dirs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GlaError::Structure("directions must be strictly increasing".into()));
        }
        if let Some(&m) = dirs.last() {
            if m >= p.dim() {
                return Err(GlaError::IndexOutOfRange { index: m, n: p.dim() });
            }
        }
        let mut w = Self::zero(p.dim(), dirs.len());
        for (e, c) in p.terms() {
            w.add_term(e.clone(), mask, c.clone());
        }
        Ok(w)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Multivector degree `p`; the shifted degree is `p − 1`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<(Exponent, Mask), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Exponent, dirs: Mask, c: Scalar) {
        debug_assert_eq!(degree(dirs), self.degree);
        debug_assert_eq!(exp.len(), self.n);
        if c.is_zero() {
            return;
        }
        let key = (exp, dirs);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Highest total degree among the coefficients.
    pub fn coefficient_degree(&self) -> u32 {
        self.terms.keys().map(|(e, _)| exp_degree(e)).max().unwrap_or(0)
    }

    /// The coefficient polynomial of `∂_I`.
    pub fn coefficient(&self, dirs: Mask) -> Polynomial {
        let mut p = Polynomial::zero(self.n);
        for ((e, m), c) in &self.terms {
            if *m == dirs {
                p.add_term(e.clone(), c.clone());
            }
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for ((e, m), x) in &self.terms {
            out.add_term(e.clone(), *m, x * c);
        }
        out
    }

    pub fn add(&self, other: &PolyMultivector) -> Result<Self> {
        check_dim(self.n, other.n)?;
        if self.degree != other.degree {
            return Err(GlaError::Degree(format!(
                "cannot add multivectors of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for ((e, m), x) in &other.terms {
            out.add_term(e.clone(), *m, x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyMultivector) -> Result<Self> {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    /// `W(f_1, …, f_p) = Σ P_I det[∂_{I_a} f_b]`.
    pub fn apply(&self, args: &[Polynomial]) -> Result<Polynomial> {
        if args.len() != self.degree {
            return Err(GlaError::Arity(format!(
                "multivector of degree {} applied to {} arguments",
                self.degree,
                args.len()
            )));
        }
        for a in args {
            check_dim(self.n, a.dim())?;
        }
        let grads: Vec<Vec<Polynomial>> =
            args.iter().map(|f| (0..self.n).map(|i| f.partial(i)).collect()).collect();
        let mut out = Polynomial::zero(self.n);
        let mut dets: BTreeMap<Mask, Polynomial> = BTreeMap::new();
        for ((e, m), c) in &self.terms {
            let det = dets.entry(*m).or_insert_with(|| grad_det(self.n, *m, &grads));
            let coef = Polynomial::monomial(self.n, e.clone(), c.clone());
            out = out.add(&coef.mul(det));
        }
        Ok(out)
    }

    /// `{"degree", "terms": {"a,b|i,j": coeff}}` with exponents then 1-based directions.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for ((e, d), c) in &self.terms {
            let dirs: Vec<String> = mask_indices(*d).iter().map(|i| (i + 1).to_string()).collect();
            m.insert(format!("{}|{}", exp_label(e), dirs.join(",")), Value::String(c.to_string()));
        }
        json!({ "dim": self.n, "degree": self.degree, "terms": m })
    }
}

impl fmt::Debug for PolyMultivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMultivector{}", self.to_json())
    }
}

/// `e_I(df_1, …, df_p)`, expanded along the first argument.
fn grad_det(n: usize, mask: Mask, grads: &[Vec<Polynomial>]) -> Polynomial {
    let Some((first, rest)) = grads.split_first() else {
        return Polynomial::constant(n, Scalar::one());
    };
    let mut out = Polynomial::zero(n);
    for i in mask_indices(mask) {
        if first[i].is_zero() {
            continue;
        }
        let (s, sub) = interior_mask(i, mask).expect("i ∈ mask");
        let minor = grad_det(n, sub, rest);
        out = out.add(&first[i].mul(&minor).scale(&Scalar::int(s)));
    }
    out
}

/// `[W, W']_S` with the default coefficient degree cap.
pub fn schouten_bracket(w1: &PolyMultivector, w2: &PolyMultivector) -> Result<PolyMultivector> {
    schouten_bracket_capped(w1, w2, DEFAULT_DEGREE_CAP)
}

/// `[P ∂_I, P' ∂_J]_S = (−1)^{pq} Σ_i P ∂_iP' ∂_J∧ι_i∂_I − Σ_i P' ∂_iP ∂_I∧ι_i∂_J`,
/// where `|I| = p + 1`, `|J| = q + 1`.
pub fn schouten_bracket_capped(
    w1: &PolyMultivector,
    w2: &PolyMultivector,
    cap: u32,
) -> Result<PolyMultivector> {
    check_dim(w1.n, w2.n)?;
    let n = w1.n;
    let target = w1.degree + w2.degree;
    if target == 0 {
        // Both are functions: the shifted degree −1 bracket vanishes.
        return Ok(PolyMultivector::zero(n, 0));
    }
    let mut out = PolyMultivector::zero(n, target - 1);
    let p = w1.degree as i64 - 1;
    let q = w2.degree as i64 - 1;
    let sign_pq = if (p * q).rem_euclid(2) == 0 { 1 } else { -1 };
    half_bracket(&mut out, w1, w2, sign_pq)?;
    half_bracket(&mut out, w2, w1, -1)?;
    if out.coefficient_degree() > cap {
        return Err(GlaError::Limit(format!(
            "Schouten bracket coefficient degree {} exceeds cap {cap}",
            out.coefficient_degree()
        )));
    }
    Ok(out)
}

/// Adds `sign · Σ_i P ∂_iP' ∂_J∧ι_i∂_I` over the terms `P∂_I` of `a` and `P'∂_J` of `b`.
fn half_bracket(out: &mut PolyMultivector, a: &PolyMultivector, b: &PolyMultivector, sign: i64) -> Result<()> {
    for ((ea, ia), ca) in &a.terms {
        for ((eb, jb), cb) in &b.terms {
            for i in mask_indices(*ia) {
                if eb[i] == 0 {
                    continue;
                }
                let (s, rest) = interior_mask(i, *ia).expect("i ∈ I");
                if rest & jb != 0 {
                    continue;
                }
                let ws = inversion_sign(*jb, rest);
                let mut e = exp_add(ea, eb);
                e[i] -= 1;
                let c = (ca * cb).scale(&Rational::from_integer((sign * s * ws * eb[i] as i64).into()));
                out.add_term(e, jb | rest, c);
            }
        }
    }
    Ok(())
}

/// `V_D = −Σ_r x_r ⊗ D(ω_r)`, so `V(Ω ∧ ι_X) = −X ⊗ Ω`.
///
/// Derivations of degree below −1 are zero and map to the zero function, matching the
/// bracket of two functions.
pub fn v_map(d: &GrassmannDerivation) -> PolyMultivector {
    let n = d.dim();
    let deg = (d.degree() + 1).max(0) as usize;
    let mut out = PolyMultivector::zero(n, deg);
    for (r, img) in d.images().iter().enumerate() {
        let mut e = vec![0; n];
        e[r] = 1;
        for (m, c) in img.terms() {
            out.add_term(e.clone(), *m, -c);
        }
    }
    out
}

/// Whether `[W, W]_S = 0`, for `W` of even multivector degree.
pub fn is_gpb(w: &PolyMultivector) -> Result<bool> {
    if !w.degree.is_multiple_of(2) {
        return Err(GlaError::Degree(format!(
            "GPB candidates have even multivector degree, got {}",
            w.degree
        )));
    }
    Ok(schouten_bracket(w, w)?.is_zero())
}

/// The linear Poisson bivector `Σ_{i<j} Σ_k c_{ij}^k x_k ∂_i∧∂_j` of a bracket table.
pub fn kks_bivector(l: &crate::quadratic::LieAlgebraDef) -> PolyMultivector {
    let n = l.dim();
    let mut out = PolyMultivector::zero(n, 2);
    for m in masks_lex(n, 2) {
        let ij = mask_indices(m);
        for (k, c) in l.bracket_basis(ij[0], ij[1]).into_iter().enumerate() {
            let mut e = vec![0; n];
            e[k] = 1;
            out.add_term(e, m, Scalar::Rat(c));
        }
    }
    out
}
