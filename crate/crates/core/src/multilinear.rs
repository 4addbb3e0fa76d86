//! Multilinear maps `g^k → g`, their Gerstenhaber and Nijenhuis–Richardson brackets,
//! and the associative-algebra products `∘` and `×`.
//!
//! Brackets use shifted degrees: a map of arity `k` sits in degree `k − 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{check_dim, GlaError, Result};
use crate::exterior::{
    check_n, degree, interior_mask, inversion_sign, mask_indices, mask_of, masks_lex,
    ExteriorElement, Mask,
};
use crate::linalg;
use crate::scalar::{Rational, Scalar};

pub const MAX_ARITY: usize = 8;

/// `(−1)^e` for a possibly negative exponent.
pub(crate) fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn signed(c: Scalar, s: i64) -> Scalar {
    if s < 0 {
        -c
    } else {
        c
    }
}

/// A `k`-linear map stored by its values on basis tuples.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiMap {
    n: usize,
    arity: usize,
    terms: BTreeMap<(Vec<usize>, usize), Scalar>,
}

impl MultiMap {
    pub fn zero(n: usize, arity: usize) -> Self {
        MultiMap { n, arity, terms: BTreeMap::new() }
    }

    /// An arity-0 map, i.e. a vector of `g`.
    pub fn vector(v: &[Rational]) -> Self {
        let mut m = Self::zero(v.len(), 0);
        for (i, c) in v.iter().enumerate() {
            m.add_term(vec![], i, Scalar::Rat(c.clone()));
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, 1);
        for i in 0..n {
            m.add_term(vec![i], i, Scalar::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<(Vec<usize>, usize), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, inputs: Vec<usize>, output: usize, c: Scalar) {
        debug_assert_eq!(inputs.len(), self.arity);
        debug_assert!(output < self.n && inputs.iter().all(|&i| i < self.n));
        if c.is_zero() {
            return;
        }
        let key = (inputs, output);
        let slot = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &MultiMap, c: &Scalar) -> Result<()> {
        check_dim(self.n, other.n)?;
        if self.arity != other.arity {
            return Err(GlaError::Arity(format!(
                "cannot add arity {} to arity {}",
                other.arity, self.arity
            )));
        }
        for ((a, o), x) in &other.terms {
            self.add_term(a.clone(), *o, x * c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n, self.arity);
        out.add_scaled(self, c).unwrap();
        out
    }

    pub fn sub(&self, other: &MultiMap) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1))?;
        Ok(out)
    }

    pub fn add(&self, other: &MultiMap) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one())?;
        Ok(out)
    }

    /// Value on a tuple of basis vectors.
    pub fn eval(&self, inputs: &[usize]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.n];
        for o in 0..self.n {
            if let Some(c) = self.terms.get(&(inputs.to_vec(), o)) {
                out[o] = c.clone();
            }
        }
        out
    }
}

impl fmt::Debug for MultiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiMap(n={}, arity={}) {{", self.n, self.arity)?;
        for ((a, o), c) in &self.terms {
            write!(f, " {a:?}->{o}: {c};")?;
        }
        write!(f, " }}")
    }
}

/// Composes `G` into slot `j` of `F`.
fn insert_at(
    f: &MultiMap,
    by_output: &HashMap<usize, Vec<(&Vec<usize>, &Scalar)>>,
    j: usize,
    sign: i64,
    out: &mut MultiMap,
) {
    for ((a, o), fc) in &f.terms {
        let Some(gs) = by_output.get(&a[j]) else {
            continue;
        };
        for (b, gc) in gs {
            let mut key = Vec::with_capacity(a.len() - 1 + b.len());
            key.extend_from_slice(&a[..j]);
            key.extend_from_slice(b);
            key.extend_from_slice(&a[j + 1..]);
            out.add_term(key, *o, signed(fc * *gc, sign));
        }
    }
}

fn index_by_output(g: &MultiMap) -> HashMap<usize, Vec<(&Vec<usize>, &Scalar)>> {
    let mut idx: HashMap<usize, Vec<(&Vec<usize>, &Scalar)>> = HashMap::new();
    for ((b, l), c) in &g.terms {
        idx.entry(*l).or_default().push((b, c));
    }
    idx
}

/// The Gerstenhaber bracket in shifted degrees `p = arity(F) − 1`, `q = arity(G) − 1`.
///
/// Two vectors bracket to the zero vector: the target degree −1 has no maps.
pub fn gerstenhaber_bracket(f: &MultiMap, g: &MultiMap) -> Result<MultiMap> {
    check_dim(f.n, g.n)?;
    let p = f.arity as i64 - 1;
    let q = g.arity as i64 - 1;
    if f.arity == 0 && g.arity == 0 {
        return Ok(MultiMap::zero(f.n, 0));
    }
    let arity = (p + q + 1) as usize;
    if arity > MAX_ARITY {
        return Err(GlaError::Limit(format!("result arity {arity} exceeds {MAX_ARITY}")));
    }
    let mut out = MultiMap::zero(f.n, arity);
    let g_idx = index_by_output(g);
    let pq = parity_sign(p * q);
    for j in 0..f.arity {
        let s = pq * parity_sign(q * j as i64);
        insert_at(f, &g_idx, j, s, &mut out);
    }
    let f_idx = index_by_output(f);
    for j in 0..g.arity {
        let s = -parity_sign(p * j as i64);
        insert_at(g, &f_idx, j, s, &mut out);
    }
    Ok(out)
}

/// A skew `k`-linear map `F = Σ_r F_r ⊗ X_r`, each `F_r` a `k`-form.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewMap {
    arity: usize,
    forms: Vec<ExteriorElement>,
}

impl SkewMap {
    pub fn zero(n: usize, arity: usize) -> Self {
        SkewMap { arity, forms: vec![ExteriorElement::zero(n); n] }
    }

    /// Builds the map from its components; each must be a form of degree `arity` or zero.
    pub fn from_forms(arity: usize, forms: Vec<ExteriorElement>) -> Result<Self> {
        let n = forms.len();
        check_n(n)?;
        for f in &forms {
            check_dim(n, f.dim())?;
            if f.degrees().iter().any(|&d| d != arity) {
                return Err(GlaError::Degree(format!(
                    "component is not a {arity}-form: {f}"
                )));
            }
        }
        Ok(SkewMap { arity, forms })
    }

    /// The arity-0 map given by a vector.
    pub fn vector(v: &[Rational]) -> Self {
        let n = v.len();
        let forms = v
            .iter()
            .map(|c| ExteriorElement::scalar(n, Scalar::Rat(c.clone())))
            .collect();
        SkewMap { arity: 0, forms }
    }

    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn forms(&self) -> &[ExteriorElement] {
        &self.forms
    }

    pub fn component(&self, r: usize) -> &ExteriorElement {
        &self.forms[r]
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().all(ExteriorElement::is_zero)
    }

    /// Adds `c · X_out` to the value on the sorted index set `mask`.
    pub fn add_term(&mut self, mask: Mask, out: usize, c: Scalar) {
        debug_assert_eq!(degree(mask), self.arity);
        self.forms[out].add_term(mask, c);
    }

    /// Number of stored coefficients.
    pub fn nnz(&self) -> usize {
        self.forms.iter().map(ExteriorElement::len).sum()
    }

    pub fn add_scaled(&mut self, other: &SkewMap, c: &Scalar) -> Result<()> {
        check_dim(self.dim(), other.dim())?;
        if self.arity != other.arity {
            return Err(GlaError::Arity(format!(
                "cannot add arity {} to arity {}",
                other.arity, self.arity
            )));
        }
        for (a, b) in self.forms.iter_mut().zip(&other.forms) {
            a.add_scaled(b, c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SkewMap { arity: self.arity, forms: self.forms.iter().map(|f| f.scale(c)).collect() }
    }

    pub fn add(&self, other: &SkewMap) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &SkewMap) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1))?;
        Ok(out)
    }

    /// Value on an arbitrary tuple of basis vectors; repeated arguments give 0.
    pub fn eval(&self, inputs: &[usize]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        if inputs.len() != self.arity {
            return out;
        }
        let mask = mask_of(inputs);
        if degree(mask) != inputs.len() {
            return out;
        }
        let s = linalg::inversion_sign(inputs);
        for (r, f) in self.forms.iter().enumerate() {
            out[r] = signed(f.coeff(mask), s as i64);
        }
        out
    }

    /// Value on arbitrary vectors, expanded multilinearly.
    pub fn eval_vectors(&self, vectors: &[Vec<Rational>]) -> Result<Vec<Scalar>> {
        if vectors.len() != self.arity {
            return Err(GlaError::Arity(format!(
                "expected {} arguments, got {}",
                self.arity,
                vectors.len()
            )));
        }
        let mut out = Vec::with_capacity(self.dim());
        for f in &self.forms {
            out.push(f.evaluate(vectors)?);
        }
        Ok(out)
    }

    /// Coordinates on the basis `(I, r)` with `I` in lexicographic order, `r` innermost.
    pub fn coords(&self) -> Vec<Rational> {
        let n = self.dim();
        let mut v = Vec::new();
        for m in masks_lex(n, self.arity) {
            for f in &self.forms {
                v.push(match f.coeff(m) {
                    Scalar::Rat(r) => r,
                    Scalar::Poly(_) => panic!("coords of a t-dependent map"),
                });
            }
        }
        v
    }

    pub fn from_coords(n: usize, arity: usize, v: &[Rational]) -> Self {
        let mut out = Self::zero(n, arity);
        for (k, m) in masks_lex(n, arity).into_iter().enumerate() {
            for r in 0..n {
                out.add_term(m, r, Scalar::Rat(v[k * n + r].clone()));
            }
        }
        out
    }

    /// The underlying multilinear map with all orderings of each input set.
    pub fn to_multimap(&self) -> MultiMap {
        let n = self.dim();
        let mut out = MultiMap::zero(n, self.arity);
        for (r, f) in self.forms.iter().enumerate() {
            for (m, c) in f.terms() {
                for perm in permutations(&mask_indices(*m)) {
                    let s = linalg::inversion_sign(&perm) as i64;
                    out.add_term(perm, r, signed(c.clone(), s));
                }
            }
        }
        out
    }

    /// JSON object keyed `"i,j->r"` with 1-based indices.
    pub fn to_json(&self) -> Value {
        let mut terms = Map::new();
        for (r, f) in self.forms.iter().enumerate() {
            for (m, c) in f.terms() {
                let idx: Vec<String> =
                    mask_indices(*m).iter().map(|i| (i + 1).to_string()).collect();
                terms.insert(format!("{}->{}", idx.join(","), r + 1), Value::String(c.to_string()));
            }
        }
        json!({ "arity": self.arity, "terms": Value::Object(terms) })
    }
}

impl fmt::Debug for SkewMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewMap(arity={}) [", self.arity)?;
        for (r, form) in self.forms.iter().enumerate() {
            if !form.is_zero() {
                write!(f, " X{}: {form};", r + 1)?;
            }
        }
        write!(f, " ]")
    }
}

pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// `(F ⋄ G)(X_K) = Σ_{S ⊂ K, |S| = arity G} ε · F(G(X_S), X_{K∖S})`.
fn nr_compose(f: &SkewMap, g: &SkewMap) -> SkewMap {
    let n = f.dim();
    let arity = (f.arity + g.arity).saturating_sub(1);
    let mut out = SkewMap::zero(n, arity);
    if f.arity == 0 || arity > n {
        return out;
    }
    // F terms grouped by the generators they contain.
    let mut f_by_gen: Vec<Vec<(Mask, usize, &Scalar)>> = vec![Vec::new(); n];
    for (o, form) in f.forms.iter().enumerate() {
        for (m, c) in form.terms() {
            for l in mask_indices(*m) {
                f_by_gen[l].push((*m, o, c));
            }
        }
    }
    let mut acc: HashMap<(Mask, usize), Scalar> = HashMap::new();
    for (l, gform) in g.forms.iter().enumerate() {
        for (s, gc) in gform.terms() {
            for (m, o, fc) in &f_by_gen[l] {
                let r = m & !(1u32 << l);
                if r & s != 0 {
                    continue;
                }
                let (pos, _) = interior_mask(l, *m).unwrap();
                let sign = inversion_sign(*s, r) * pos;
                let slot = acc.entry((s | r, *o)).or_insert_with(Scalar::zero);
                let v = gc * *fc;
                if sign < 0 {
                    *slot -= &v;
                } else {
                    *slot += &v;
                }
            }
        }
    }
    for ((m, o), c) in acc {
        out.add_term(m, o, c);
    }
    out
}

/// The Nijenhuis–Richardson bracket `[F,G]_a = (−1)^{pq} F⋄G − G⋄F`.
pub fn nr_bracket(f: &SkewMap, g: &SkewMap) -> Result<SkewMap> {
    check_dim(f.dim(), g.dim())?;
    let n = f.dim();
    if f.arity == 0 && g.arity == 0 {
        return Ok(SkewMap::zero(n, 0));
    }
    let p = f.arity as i64 - 1;
    let q = g.arity as i64 - 1;
    let mut out = nr_compose(f, g);
    if parity_sign(p * q) < 0 {
        out = out.scale(&Scalar::int(-1));
    }
    out.add_scaled(&nr_compose(g, f), &Scalar::int(-1))?;
    Ok(out)
}

/// `A(F)(X_1..X_k) = Σ_σ ε(σ) F(X_σ(1)..X_σ(k))`, with no `1/k!`.
pub fn skew_symmetrize(f: &MultiMap) -> SkewMap {
    let n = f.n;
    let mut out = SkewMap::zero(n, f.arity);
    for ((a, o), c) in &f.terms {
        let m = mask_of(a);
        if degree(m) != a.len() {
            continue;
        }
        let s = linalg::inversion_sign(a) as i64;
        out.add_term(m, *o, signed(c.clone(), s));
    }
    out
}

/// A finite-dimensional associative algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativeAlgebraDef {
    n: usize,
    /// `product[i][j]` lists `(k, c_ijk)` for `X_i X_j = Σ c_ijk X_k`.
    product: Vec<Vec<Vec<(usize, Rational)>>>,
    unit: Option<Vec<Rational>>,
    trace: Option<Vec<Rational>>,
    name: Option<String>,
}

impl AssociativeAlgebraDef {
    /// Validates associativity, the unit and trace cyclicity on all basis elements.
    pub fn new(
        n: usize,
        entries: &[(usize, usize, usize, Rational)],
        unit: Option<Vec<Rational>>,
        trace: Option<Vec<Rational>>,
    ) -> Result<Self> {
        check_n(n)?;
        let mut dense: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for (i, j, k, c) in entries {
            for &x in [i, j, k] {
                if x >= n {
                    return Err(GlaError::IndexOutOfRange { index: x + 1, n });
                }
            }
            *dense.entry((*i, *j, *k)).or_insert_with(Rational::zero) += c;
        }
        let mut product = vec![vec![Vec::new(); n]; n];
        for ((i, j, k), c) in dense {
            if !c.is_zero() {
                product[i][j].push((k, c));
            }
        }
        if let Some(u) = &unit {
            check_dim(n, u.len())?;
        }
        if let Some(t) = &trace {
            check_dim(n, t.len())?;
        }
        let alg = AssociativeAlgebraDef { n, product, unit, trace, name: None };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ij_k = self.mul_vec_basis(&self.mul_basis(i, j), k, true);
                    let i_jk = self.mul_vec_basis(&self.mul_basis(j, k), i, false);
                    if ij_k != i_jk {
                        return Err(GlaError::Structure(format!(
                            "product is not associative on (X{}, X{}, X{})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..n {
                let e: Vec<Rational> = (0..n)
                    .map(|k| if k == i { Rational::one() } else { Rational::zero() })
                    .collect();
                if self.mul(u, &e) != e || self.mul(&e, u) != e {
                    return Err(GlaError::Structure(format!("unit fails on X{}", i + 1)));
                }
            }
        }
        if let Some(t) = &self.trace {
            for i in 0..n {
                for j in 0..i {
                    if self.tr(&self.mul_basis(i, j)) != self.tr(&self.mul_basis(j, i)) {
                        return Err(GlaError::Structure(format!(
                            "trace is not cyclic on (X{}, X{})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            let _ = t;
        }
        Ok(())
    }

    fn tr(&self, v: &[Rational]) -> Rational {
        let t = self.trace.as_ref().unwrap();
        v.iter().zip(t).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `v · X_k` (when `right`) or `X_k · v`.
    fn mul_vec_basis(&self, v: &[Rational], k: usize, right: bool) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let terms = if right { &self.product[i][k] } else { &self.product[k][i] };
            for (l, d) in terms {
                out[*l] += c * d;
            }
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (k, c) in &self.product[i][j] {
            out[*k] = c.clone();
        }
        out
    }

    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.product[i][j]
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, c) in &self.product[i][j] {
                    out[*k] += a * b * c;
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> Option<&[Rational]> {
        self.unit.as_deref()
    }

    pub fn trace(&self) -> Option<&[Rational]> {
        self.trace.as_deref()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// The matrix algebra `gl(m)` on matrix units `E_ij`, index `i·m + j`.
    pub fn gl(m: usize) -> Self {
        let n = m * m;
        let mut entries = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    entries.push((i * m + j, j * m + l, i * m + l, Rational::one()));
                }
            }
        }
        let delta: Vec<Rational> = (0..n)
            .map(|k| if k / m == k % m { Rational::one() } else { Rational::zero() })
            .collect();
        Self::new(n, &entries, Some(delta.clone()), Some(delta))
            .expect("gl(m) is associative")
            .with_name(&format!("gl{m}"))
    }

    /// The unital commutative algebra `C^n` of diagonal matrices.
    pub fn diagonal(n: usize) -> Self {
        let entries: Vec<_> = (0..n).map(|i| (i, i, i, Rational::one())).collect();
        let ones = vec![Rational::one(); n];
        Self::new(n, &entries, Some(ones.clone()), Some(ones))
            .expect("diagonal algebra is associative")
            .with_name(&format!("diag{n}"))
    }

    pub fn to_json(&self) -> Value {
        let mut product = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for (k, c) in &self.product[i][j] {
                    product.push(json!([i + 1, j + 1, k + 1, Scalar::Rat(c.clone()).to_string()]));
                }
            }
        }
        let vec_json = |v: &Option<Vec<Rational>>| match v {
            Some(v) => Value::Array(
                v.iter().map(|c| Value::String(Scalar::Rat(c.clone()).to_string())).collect(),
            ),
            None => Value::Null,
        };
        let mut obj = Map::new();
        obj.insert("dim".into(), json!(self.n));
        obj.insert("product".into(), Value::Array(product));
        if self.unit.is_some() {
            obj.insert("unit".into(), vec_json(&self.unit));
        }
        if self.trace.is_some() {
            obj.insert("trace".into(), vec_json(&self.trace));
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = json_dim(v)?;
        let mut entries = Vec::new();
        if let Some(rows) = v.get("product") {
            for e in rows.as_array().ok_or_else(|| bad("`product` must be an array"))? {
                entries.push(parse_table_entry(e, n)?);
            }
        }
        let unit = v.get("unit").map(|u| parse_rational_vec(u, n)).transpose()?;
        let trace = v.get("trace").map(|u| parse_rational_vec(u, n)).transpose()?;
        Self::new(n, &entries, unit, trace)
    }

    /// The arity-2 product map.
    pub fn product_map(&self) -> MultiMap {
        let mut m = MultiMap::zero(self.n, 2);
        for i in 0..self.n {
            for j in 0..self.n {
                for (k, c) in &self.product[i][j] {
                    m.add_term(vec![i, j], *k, Scalar::Rat(c.clone()));
                }
            }
        }
        m
    }

    /// `m_k`: the `k`-fold product, with `m_0` the unit and `m_1` the identity.
    pub fn iterated_product(&self, k: usize) -> Result<MultiMap> {
        if k > MAX_ARITY {
            return Err(GlaError::Limit(format!("arity {k} exceeds {MAX_ARITY}")));
        }
        match k {
            0 => {
                let u = self
                    .unit
                    .as_ref()
                    .ok_or_else(|| GlaError::Precondition("m_0 requires a unit".into()))?;
                Ok(MultiMap::vector(u))
            }
            _ => {
                let id = MultiMap::identity(self.n);
                let mut acc = id.clone();
                for _ in 1..k {
                    acc = circ_product(&acc, &id, self)?;
                }
                Ok(acc)
            }
        }
    }

    /// The standard polynomial `A_k = A(m_k)`.
    pub fn standard_polynomial(&self, k: usize) -> Result<SkewMap> {
        Ok(skew_symmetrize(&self.iterated_product(k)?))
    }
}

fn bad(msg: &str) -> GlaError {
    GlaError::Parse(msg.to_string())
}

pub(crate) fn json_dim(v: &Value) -> Result<usize> {
    let n = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing integer field `dim`"))? as usize;
    check_n(n)?;
    Ok(n)
}

pub(crate) fn parse_scalar_value(v: &Value) -> Result<Rational> {
    let s: Scalar = match v {
        Value::String(s) => s.parse()?,
        Value::Number(x) => x.to_string().parse()?,
        _ => return Err(bad("coefficient must be a string or integer")),
    };
    s.as_rational()
        .cloned()
        .ok_or_else(|| bad("structure constants must be rational"))
}

pub(crate) fn parse_rational_vec(v: &Value, n: usize) -> Result<Vec<Rational>> {
    let arr = v.as_array().ok_or_else(|| bad("expected an array of coefficients"))?;
    check_dim(n, arr.len())?;
    arr.iter().map(parse_scalar_value).collect()
}

/// Parses `[i, j, k, "c"]` with 1-based indices.
pub(crate) fn parse_table_entry(e: &Value, n: usize) -> Result<(usize, usize, usize, Rational)> {
    let arr = e
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| bad("table entries must be [i, j, k, \"coef\"]"))?;
    let mut idx = [0usize; 3];
    for (slot, x) in idx.iter_mut().zip(arr) {
        let i = x.as_u64().ok_or_else(|| bad("table index must be an integer"))? as usize;
        if i == 0 || i > n {
            return Err(GlaError::IndexOutOfRange { index: i, n });
        }
        *slot = i - 1;
    }
    Ok((idx[0], idx[1], idx[2], parse_scalar_value(&arr[3])?))
}

/// `(F ∘ G)(Y_1..Y_{p+q}) = F(Y_1..Y_p) · G(Y_{p+1}..Y_{p+q})`.
pub fn circ_product(f: &MultiMap, g: &MultiMap, alg: &AssociativeAlgebraDef) -> Result<MultiMap> {
    check_dim(f.n, g.n)?;
    check_dim(f.n, alg.n)?;
    let arity = f.arity + g.arity;
    if arity > MAX_ARITY {
        return Err(GlaError::Limit(format!("result arity {arity} exceeds {MAX_ARITY}")));
    }
    let mut out = MultiMap::zero(f.n, arity);
    for ((a, o), x) in &f.terms {
        for ((b, l), y) in &g.terms {
            let xy = x * y;
            let mut key = a.clone();
            key.extend_from_slice(b);
            for (k, c) in &alg.product[*o][*l] {
                out.add_term(key.clone(), *k, xy.scale(c));
            }
        }
    }
    Ok(out)
}

/// `(F × G)(Y) = Σ_{σ ∈ S_{p,q}} ε(σ) F(Y_σ(1..p)) · G(Y_σ(p+1..p+q))`.
pub fn times_product(f: &SkewMap, g: &SkewMap, alg: &AssociativeAlgebraDef) -> Result<SkewMap> {
    check_dim(f.dim(), g.dim())?;
    check_dim(f.dim(), alg.n)?;
    let n = f.dim();
    let mut out = SkewMap::zero(n, f.arity + g.arity);
    if f.arity + g.arity > n {
        return Ok(out);
    }
    for (o, ff) in f.forms.iter().enumerate() {
        for (l, gf) in g.forms.iter().enumerate() {
            let prod = &alg.product[o][l];
            if prod.is_empty() || ff.is_zero() || gf.is_zero() {
                continue;
            }
            let w = ff.wedge(gf)?;
            for (k, c) in prod {
                out.forms[*k].add_scaled(&w, &Scalar::Rat(c.clone()));
            }
        }
    }
    Ok(out)
}

/// `ι_Z(F)(Y_1..Y_{p−1}) = F(Z, Y_1..Y_{p−1})`.
pub fn iota_contract(z: &[Rational], f: &SkewMap) -> Result<SkewMap> {
    check_dim(f.dim(), z.len())?;
    if f.arity == 0 {
        return Err(GlaError::Arity("cannot contract an arity-0 map".into()));
    }
    let forms = f
        .forms
        .iter()
        .map(|form| form.interior_vec(z))
        .collect::<Result<Vec<_>>>()?;
    Ok(SkewMap { arity: f.arity - 1, forms })
}

/// `Tr(F) = Σ_r τ_r F_r`, a form of degree `arity(F)`.
pub fn trace_lift(f: &SkewMap, alg: &AssociativeAlgebraDef) -> Result<ExteriorElement> {
    check_dim(f.dim(), alg.n)?;
    let tau = alg
        .trace
        .as_ref()
        .ok_or_else(|| GlaError::Precondition("algebra has no trace".into()))?;
    let mut out = ExteriorElement::zero(f.dim());
    for (r, form) in f.forms.iter().enumerate() {
        if !tau[r].is_zero() {
            out.add_scaled(form, &Scalar::Rat(tau[r].clone()));
        }
    }
    Ok(out)
}

/// Whether an even-arity skew map satisfies `[F,F]_a = 0`.
pub fn is_2k_lie(f: &SkewMap) -> Result<bool> {
    if !f.arity.is_multiple_of(2) {
        return Err(GlaError::Arity(format!(
            "2k-Lie structures have even arity, got {}",
            f.arity
        )));
    }
    Ok(nr_bracket(f, f)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn arity_one_gerstenhaber_is_commutator() {
        let mut f = MultiMap::zero(2, 1);
        f.add_term(vec![0], 1, Scalar::one());
        let mut g = MultiMap::zero(2, 1);
        g.add_term(vec![1], 0, Scalar::one());
        let b = gerstenhaber_bracket(&f, &g).unwrap();
        // FG − GF: FG(X1) = 0, FG(X2) = X2; GF(X1) = X1.
        let mut expect = MultiMap::zero(2, 1);
        expect.add_term(vec![1], 1, Scalar::one());
        expect.add_term(vec![0], 0, Scalar::int(-1));
        assert_eq!(b, expect);
    }

    #[test]
    fn vector_bracket_rules() {
        let alg = AssociativeAlgebraDef::gl(2);
        let a2 = alg.standard_polynomial(2).unwrap();
        let x = vec![rat(0), rat(1), rat(0), rat(0)];
        let lhs = nr_bracket(&SkewMap::vector(&x), &a2).unwrap();
        let rhs = iota_contract(&x, &a2).unwrap().scale(&Scalar::int(-1));
        assert_eq!(lhs, rhs);
        let v = MultiMap::vector(&x);
        assert!(gerstenhaber_bracket(&v, &v).unwrap().is_zero());
    }

    #[test]
    fn gl2_product_is_associative_and_a2_is_commutator() {
        let alg = AssociativeAlgebraDef::gl(2);
        let m = alg.product_map();
        assert!(gerstenhaber_bracket(&m, &m).unwrap().is_zero());
        let a2 = alg.standard_polynomial(2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let ij = alg.mul_basis(i, j);
                let ji = alg.mul_basis(j, i);
                let expect: Vec<Scalar> =
                    ij.iter().zip(&ji).map(|(a, b)| Scalar::Rat(a - b)).collect();
                assert_eq!(a2.eval(&[i, j]), expect);
            }
        }
    }

    #[test]
    fn non_associative_table_rejected() {
        // X1·X1 = X2, X1·X2 = 0, X2·X1 = X1: (X1X1)X1 = X1 but X1(X1X1) = 0.
        let entries = [(0, 0, 1, rat(1)), (1, 0, 0, rat(1))];
        assert!(AssociativeAlgebraDef::new(2, &entries, None, None).is_err());
    }

    #[test]
    fn left_multiplication_bracket_is_not_lie() {
        let mut f = SkewMap::zero(2, 2);
        f.add_term(0b11, 0, Scalar::one());
        // [X1,X2] = X1 is a Lie bracket (2-dim non-abelian); a 3-dim failure follows.
        assert!(is_2k_lie(&f).unwrap());
        let mut g = SkewMap::zero(3, 2);
        g.add_term(0b011, 2, Scalar::one());
        g.add_term(0b110, 0, Scalar::one());
        g.add_term(0b101, 0, Scalar::one());
        assert!(!is_2k_lie(&g).unwrap());
        assert!(is_2k_lie(&SkewMap::zero(3, 1)).is_err());
    }

    #[test]
    fn json_shape() {
        let alg = AssociativeAlgebraDef::gl(2);
        let back = AssociativeAlgebraDef::from_json(&alg.to_json()).unwrap();
        assert_eq!(back.product, alg.product);
        assert_eq!(back.trace, alg.trace);
    }
}
