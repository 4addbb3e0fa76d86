//! Sparse Grassmann algebra `Λg` on bitmask basis elements.
//!
//! Generators are indexed from 0 internally; serialized keys are 1-based. A basis
//! element `e_I` is the bitmask of `I`, read as the wedge of its generators in
//! ascending order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{check_dim, GlaError, Result};
use crate::linalg;
use crate::scalar::{Rational, Scalar};

pub const MAX_DIM: usize = 16;

pub type Mask = u32;

pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn mask_indices(mask: Mask) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn degree(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Inversion count `#{(i, j) : i ∈ I, j ∈ J, i > j}`.
pub fn inversions(a: Mask, b: Mask) -> u32 {
    let mut count = 0;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        count += (b & ((1u32 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    count
}

/// `(−1)^{Ω(I,J)}` as an integer sign.
pub fn inversion_sign(a: Mask, b: Mask) -> i64 {
    if inversions(a, b).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ι_{X_i} e_I = sign · e_{I∖i}`; `None` when `i ∉ I`.
pub fn interior_mask(i: usize, mask: Mask) -> Option<(i64, Mask)> {
    let bit = 1u32 << i;
    if mask & bit == 0 {
        return None;
    }
    let before = (mask & (bit - 1)).count_ones();
    Some((if before.is_multiple_of(2) { 1 } else { -1 }, mask & !bit))
}

/// All masks of popcount `k` on `n` generators, in increasing numeric order.
pub fn masks_of_degree(n: usize, k: usize) -> Vec<Mask> {
    (0..(1u32 << n)).filter(|m| degree(*m) == k).collect()
}

/// All masks of popcount `k`, lexicographic on their sorted index lists.
pub fn masks_lex(n: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(mask_of(&idx));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            break;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
    out
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        Err(GlaError::UnsupportedDimension(n))
    } else {
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    n: usize,
    terms: BTreeMap<Mask, Scalar>,
}

impl ExteriorElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        ExteriorElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        Self::basis(n, 0).scale(&c)
    }

    pub fn basis(n: usize, mask: Mask) -> Self {
        let mut e = Self::zero(n);
        assert!(mask >> n == 0, "mask {mask:#b} outside dimension {n}");
        e.terms.insert(mask, Scalar::one());
        e
    }

    /// The generator `e_i` (0-based).
    pub fn generator(n: usize, i: usize) -> Self {
        Self::basis(n, 1 << i)
    }

    /// `e_{i1} ∧ … ∧ e_{ik}` for an arbitrary index sequence (0-based).
    pub fn monomial(n: usize, indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Self::one(n), |acc, &i| acc.wedge(&Self::generator(n, i)).unwrap())
    }

    /// Linear form `Σ c_i e_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut e = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(1 << i, Scalar::Rat(c.clone()));
        }
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Mask, Scalar)>>(n: usize, terms: I) -> Self {
        let mut e = Self::zero(n);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Mask, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, mask: Mask) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: Mask, c: Scalar) {
        debug_assert!(mask >> self.n == 0);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ExteriorElement, c: &Scalar) {
        for (m, x) in &other.terms {
            self.add_term(*m, x * c);
        }
    }

    /// The degree-`w` component.
    pub fn part(&self, w: usize) -> Self {
        ExteriorElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| degree(**m) == w)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|m| degree(*m)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(w)` if homogeneous of degree `w`; the zero element reports `None`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&Scalar::Rat(c.clone()))
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    /// Specializes the formal parameter `t`.
    pub fn eval_t(&self, t: &Rational) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(m, c)| (*m, Scalar::Rat(c.eval_t(t)))),
        )
    }

    /// Coefficient of `t^k` in every term.
    pub fn t_coeff(&self, k: usize) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(m, c)| (*m, Scalar::Rat(c.t_coeff(k)))),
        )
    }

    /// Rational coordinates on the given ordered list of masks; fails on polynomial coefficients.
    pub fn coords(&self, basis: &[Mask]) -> Vec<Rational> {
        basis
            .iter()
            .map(|m| match self.terms.get(m) {
                Some(Scalar::Rat(r)) => r.clone(),
                Some(Scalar::Poly(_)) => panic!("coords of a t-dependent element"),
                None => Rational::zero(),
            })
            .collect()
    }

    pub fn from_coords(n: usize, basis: &[Mask], v: &[Rational]) -> Self {
        Self::from_terms(
            n,
            basis.iter().zip(v).map(|(m, c)| (*m, Scalar::Rat(c.clone()))),
        )
    }

    pub fn wedge(&self, other: &ExteriorElement) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = x * y;
                out.add_term(a | b, if inversion_sign(*a, *b) < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// `ι_{X_i}` for the basis vector `X_i` (0-based).
    pub fn interior(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((s, r)) = interior_mask(i, *m) {
                out.add_term(r, if s < 0 { -c } else { c.clone() });
            }
        }
        out
    }

    /// `ι_X` for `X = Σ x_i X_i`.
    pub fn interior_vec(&self, x: &[Rational]) -> Result<Self> {
        check_dim(self.n, x.len())?;
        let mut out = Self::zero(self.n);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                out.add_scaled(&self.interior(i), &Scalar::Rat(xi.clone()));
            }
        }
        Ok(out)
    }

    /// Evaluates the form on vectors with the determinant convention.
    pub fn evaluate(&self, vectors: &[Vec<Rational>]) -> Result<Scalar> {
        let mut cur = self.clone();
        for v in vectors {
            cur = cur.interior_vec(v)?;
        }
        Ok(cur.coeff(0))
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (m, c) in &self.terms {
            let key = mask_indices(*m)
                .iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",");
            map.insert(key, Value::String(c.to_string()));
        }
        Value::Object(map)
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Self> {
        check_n(n)?;
        let obj = v
            .as_object()
            .ok_or_else(|| GlaError::Parse("exterior element must be a JSON object".into()))?;
        let mut e = Self::zero(n);
        for (k, c) in obj {
            let mut idx = Vec::new();
            for part in k.split(',').filter(|p| !p.trim().is_empty()) {
                let i: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| GlaError::Parse(format!("bad index list `{k}`")))?;
                if i == 0 || i > n {
                    return Err(GlaError::IndexOutOfRange { index: i, n });
                }
                idx.push(i - 1);
            }
            let c: Scalar = match c {
                Value::String(s) => s.parse()?,
                Value::Number(x) => x.to_string().parse()?,
                _ => return Err(GlaError::Parse(format!("bad coefficient for `{k}`"))),
            };
            e.add_scaled(&Self::monomial(n, &idx), &c);
        }
        Ok(e)
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if *m == 0 {
                    format!("({c})")
                } else {
                    let idx: Vec<String> =
                        mask_indices(*m).iter().map(|i| (i + 1).to_string()).collect();
                    format!("({c})e{}", idx.join("_"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a ExteriorElement> for &'a ExteriorElement {
    type Output = ExteriorElement;
    fn add(self, rhs: &'a ExteriorElement) -> ExteriorElement {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<'a> Sub<&'a ExteriorElement> for &'a ExteriorElement {
    type Output = ExteriorElement;
    fn sub(self, rhs: &'a ExteriorElement) -> ExteriorElement {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::int(-1));
        out
    }
}

impl Neg for &ExteriorElement {
    type Output = ExteriorElement;
    fn neg(self) -> ExteriorElement {
        self.scale(&Scalar::int(-1))
    }
}

/// Symmetric invertible bilinear form, with its inverse cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    entries: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        check_n(n)?;
        for row in &entries {
            check_dim(n, row.len())?;
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(GlaError::InvalidGram(format!(
                        "not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let inverse = linalg::inverse(&entries)
            .ok_or_else(|| GlaError::InvalidGram("singular".into()))?;
        Ok(GramMatrix { entries, inverse })
    }

    pub fn identity(n: usize) -> Self {
        let e: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        GramMatrix { entries: e.clone(), inverse: e }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn inv(&self, i: usize, j: usize) -> &Rational {
        &self.inverse[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn inverse_entries(&self) -> &[Vec<Rational>] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.entries[i][j] == if i == j { Rational::one() } else { Rational::zero() }
            })
        })
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.entries[i][j].is_zero() {
                    s += xi * &self.entries[i][j] * yj;
                }
            }
        }
        s
    }

    /// The 1-form `B(X, ·)`.
    pub fn flat(&self, x: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.entries, x)
    }

    /// The vector `X` with `B(X, ·) = ω`.
    pub fn sharp(&self, omega: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.inverse, omega)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|x| Value::String(Scalar::Rat(x.clone()).to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// The super Poisson bracket `{Ω, Ω'}` for the form `B`.
///
/// On a degree-`w` component: `2(−1)^{w+1} Σ_{ij} (B⁻¹)_{ij} ι_iΩ ∧ ι_jΩ'`.
pub fn super_poisson(
    a: &ExteriorElement,
    b: &ExteriorElement,
    gram: &GramMatrix,
) -> Result<ExteriorElement> {
    check_dim(a.n, b.n)?;
    check_dim(a.n, gram.dim())?;
    let n = a.n;
    let ib: Vec<ExteriorElement> = (0..n).map(|j| b.interior(j)).collect();
    let mut out = ExteriorElement::zero(n);
    for w in a.degrees() {
        let aw = a.part(w);
        let sign = if w % 2 == 0 { -2 } else { 2 };
        for i in 0..n {
            let ia = aw.interior(i);
            if ia.is_zero() {
                continue;
            }
            for (j, ibj) in ib.iter().enumerate() {
                let g = gram.inv(i, j);
                if g.is_zero() || ibj.is_zero() {
                    continue;
                }
                let term = ia.wedge(ibj)?;
                out.add_scaled(&term, &Scalar::Rat(g * crate::scalar::rat(sign)));
            }
        }
    }
    Ok(out)
}

/// `ad_P(Ω) = {Ω, ·}` applied to `x`.
pub fn ad_p(
    omega: &ExteriorElement,
    x: &ExteriorElement,
    gram: &GramMatrix,
) -> Result<ExteriorElement> {
    super_poisson(omega, x, gram)
}

/// `e_I ⋆ e_J = (−1)^{Ω(I,J)} t^{|I∩J|} e_{IΔJ}`, extended bilinearly.
pub fn clifford_star(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
    check_dim(a.n, b.n)?;
    let mut out = ExteriorElement::zero(a.n);
    for (i, x) in &a.terms {
        for (j, y) in &b.terms {
            let k = degree(i & j);
            let c = Scalar::monomial(crate::scalar::rat(inversion_sign(*i, *j)), k);
            out.add_term(i ^ j, &(x * y) * &c);
        }
    }
    Ok(out)
}

/// The Clifford star for an explicit Gram matrix; only the identity is supported.
pub fn clifford_star_with(
    a: &ExteriorElement,
    b: &ExteriorElement,
    gram: &GramMatrix,
) -> Result<ExteriorElement> {
    if !gram.is_identity() {
        return Err(GlaError::InvalidGram(
            "the Clifford star is defined only for the orthonormal Gram".into(),
        ));
    }
    clifford_star(a, b)
}

/// `D_k(e_I, e_J) = δ_{|I∩J|,k} (−1)^{Ω(I,J)} e_{IΔJ}`.
pub fn dk_coefficient(
    k: usize,
    a: &ExteriorElement,
    b: &ExteriorElement,
) -> Result<ExteriorElement> {
    check_dim(a.n, b.n)?;
    let mut out = ExteriorElement::zero(a.n);
    for (i, x) in &a.terms {
        for (j, y) in &b.terms {
            if degree(i & j) != k {
                continue;
            }
            let c = x * y;
            out.add_term(i ^ j, if inversion_sign(*i, *j) < 0 { -c } else { c });
        }
    }
    Ok(out)
}

/// `Ω ⋆ Ω' = m_∧ ∘ exp(−tF)(Ω ⊗ Ω')` with `F(Ω⊗Ω') = (−1)^{|Ω|} Σ_j ι_jΩ ⊗ ι_jΩ'`.
pub fn moyal_star(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
    check_dim(a.n, b.n)?;
    let n = a.n;
    let mut tensor: BTreeMap<(Mask, Mask), Scalar> = BTreeMap::new();
    for (i, x) in &a.terms {
        for (j, y) in &b.terms {
            tensor.insert((*i, *j), x * y);
        }
    }
    let mut out = ExteriorElement::zero(n);
    let mut factorial = Rational::one();
    let mut k = 0usize;
    while !tensor.is_empty() {
        // (−t)^k / k! · F^k, then wedge the two factors.
        let sign = if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let coef = Scalar::monomial(sign / &factorial, k);
        for ((i, j), c) in &tensor {
            if i & j == 0 {
                let v = c * &coef;
                out.add_term(i | j, if inversion_sign(*i, *j) < 0 { -v } else { v });
            }
        }
        let mut next: BTreeMap<(Mask, Mask), Scalar> = BTreeMap::new();
        for ((i, j), c) in &tensor {
            let w_sign = if degree(*i).is_multiple_of(2) { 1 } else { -1 };
            let mut common = i & j;
            while common != 0 {
                let g = common.trailing_zeros() as usize;
                common &= common - 1;
                let (s1, ri) = interior_mask(g, *i).unwrap();
                let (s2, rj) = interior_mask(g, *j).unwrap();
                let v = if w_sign * s1 * s2 < 0 { -c } else { c.clone() };
                let slot = next.entry((ri, rj)).or_insert_with(Scalar::zero);
                *slot += &v;
            }
        }
        next.retain(|_, c| !c.is_zero());
        tensor = next;
        k += 1;
        factorial *= Rational::from_integer(k.into());
    }
    Ok(out)
}

/// The graded star commutator `Ω⋆Ω' − (−1)^{|Ω||Ω'|} Ω'⋆Ω` on homogeneous inputs.
pub fn star_commutator(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
    let mut out = ExteriorElement::zero(a.n);
    for wa in a.degrees() {
        for wb in b.degrees() {
            let (pa, pb) = (a.part(wa), b.part(wb));
            let ab = clifford_star(&pa, &pb)?;
            let ba = clifford_star(&pb, &pa)?;
            let s = if (wa * wb) % 2 == 0 { -1 } else { 1 };
            out = &out + &ab;
            out.add_scaled(&ba, &Scalar::int(s));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn e(n: usize, idx: &[usize]) -> ExteriorElement {
        ExteriorElement::monomial(n, idx)
    }

    #[test]
    fn wedge_signs() {
        let n = 3;
        assert_eq!(e(n, &[0]).wedge(&e(n, &[1])).unwrap(), ExteriorElement::basis(n, 0b011));
        assert_eq!(e(n, &[1]).wedge(&e(n, &[0])).unwrap(), -&ExteriorElement::basis(n, 0b011));
        assert!(e(n, &[0]).wedge(&e(n, &[0])).unwrap().is_zero());
        assert!(e(2, &[0]).wedge(&e(3, &[0])).is_err());
    }

    #[test]
    fn interior_signs() {
        let n = 2;
        let e12 = e(n, &[0, 1]);
        assert_eq!(e12.interior(0), e(n, &[1]));
        assert_eq!(e12.interior(1), -&e(n, &[0]));
        assert!(ExteriorElement::one(n).interior(0).is_zero());
    }

    #[test]
    fn clifford_small_products() {
        let n = 3;
        assert_eq!(clifford_star(&e(n, &[0]), &e(n, &[0])).unwrap(), ExteriorElement::scalar(n, Scalar::t()));
        assert_eq!(clifford_star(&e(n, &[0]), &e(n, &[1])).unwrap(), e(n, &[0, 1]));
        assert_eq!(clifford_star(&e(n, &[1]), &e(n, &[0])).unwrap(), -&e(n, &[0, 1]));
        // e1 e2 e2 e3 = t e1 e3
        let lhs = clifford_star(&e(n, &[0, 1]), &e(n, &[1, 2])).unwrap();
        assert_eq!(lhs, e(n, &[0, 2]).scale(&Scalar::t()));
    }

    #[test]
    fn d2_of_e12_with_itself() {
        let n = 2;
        let e12 = e(n, &[0, 1]);
        let sq = clifford_star(&e12, &e12).unwrap();
        let d2 = dk_coefficient(2, &e12, &e12).unwrap();
        assert_eq!(d2, ExteriorElement::scalar(n, Scalar::int(-1)));
        assert_eq!(sq.t_coeff(2), d2);
    }

    #[test]
    fn moyal_matches_small_cases() {
        let n = 3;
        assert_eq!(moyal_star(&e(n, &[0]), &e(n, &[0])).unwrap(), ExteriorElement::scalar(n, Scalar::t()));
        let x = e(n, &[0, 2]);
        assert_eq!(moyal_star(&x, &ExteriorElement::one(n)).unwrap(), x);
        let (a, b) = (e(n, &[0, 1]), e(n, &[0, 2]));
        assert_eq!(moyal_star(&a, &b).unwrap(), clifford_star(&a, &b).unwrap());
    }

    #[test]
    fn poisson_examples() {
        let g = GramMatrix::identity(3);
        let e1 = e(3, &[0]);
        assert_eq!(super_poisson(&e1, &e1, &g).unwrap(), ExteriorElement::scalar(3, Scalar::int(2)));
        let e123 = e(3, &[0, 1, 2]);
        assert!(super_poisson(&e123, &e123, &g).unwrap().is_zero());
    }

    #[test]
    fn gram_validation() {
        assert!(GramMatrix::new(vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]]).is_err());
        assert!(GramMatrix::new(vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]]).is_err());
        let g = GramMatrix::new(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap();
        assert_eq!(g.inv(0, 1), &rat(1));
        assert!(!g.is_identity());
        assert!(clifford_star_with(&e(2, &[0]), &e(2, &[1]), &g).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut x = e(4, &[0, 1, 3]).scale(&"3/2".parse().unwrap());
        x.add_term(0, "1-2*t^2".parse().unwrap());
        let j = x.to_json();
        assert_eq!(j["1,2,4"], "3/2");
        assert_eq!(j[""], "1-2*t^2");
        assert_eq!(ExteriorElement::from_json(4, &j).unwrap(), x);
    }

    #[test]
    fn lex_masks() {
        let m = masks_lex(4, 2);
        let lists: Vec<Vec<usize>> = m.iter().map(|x| mask_indices(*x)).collect();
        assert_eq!(
            lists,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(masks_lex(3, 0), vec![0]);
    }
}
