//! Graded derivations of `Λg`, stored by their values on the generators `ω_r`.

use std::fmt;

use num_traits::Zero;

use crate::error::{check_dim, GlaError, Result};
use crate::exterior::{masks_lex, super_poisson, ExteriorElement, GramMatrix};
use crate::linalg::SparseMatrix;
use crate::multilinear::{parity_sign, SkewMap};
use crate::scalar::{rat, Rational, Scalar};

/// `D = Σ_r D_r ∧ ι_{X_r}` with `D_r = D(ω_r)` of degree `d + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct GrassmannDerivation {
    degree: i64,
    images: Vec<ExteriorElement>,
}

impl GrassmannDerivation {
    pub fn new(degree: i64, images: Vec<ExteriorElement>) -> Result<Self> {
        let n = images.len();
        // Degrees of n or more are allowed; such derivations are zero.
        if degree < -1 {
            return Err(GlaError::Degree(format!("derivation degree {degree} is below -1")));
        }
        for img in &images {
            check_dim(n, img.dim())?;
            if img.degrees().iter().any(|&w| w as i64 != degree + 1) {
                return Err(GlaError::Degree(format!(
                    "generator image {img} is not of degree {}",
                    degree + 1
                )));
            }
        }
        Ok(GrassmannDerivation { degree, images })
    }

    pub fn zero(n: usize, degree: i64) -> Self {
        GrassmannDerivation { degree, images: vec![ExteriorElement::zero(n); n] }
    }

    /// `ι_X`, of degree −1.
    pub fn interior(x: &[Rational]) -> Self {
        let n = x.len();
        let images = x
            .iter()
            .map(|c| ExteriorElement::scalar(n, Scalar::Rat(c.clone())))
            .collect();
        GrassmannDerivation { degree: -1, images }
    }

    /// The super radial field `Σ ω_i ∧ ι_{X_i}`, of degree 0.
    pub fn radial(n: usize) -> Self {
        let images = (0..n).map(|i| ExteriorElement::generator(n, i)).collect();
        GrassmannDerivation { degree: 0, images }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn images(&self) -> &[ExteriorElement] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(ExteriorElement::is_zero)
    }

    pub fn apply(&self, omega: &ExteriorElement) -> Result<ExteriorElement> {
        check_dim(self.dim(), omega.dim())?;
        let mut out = ExteriorElement::zero(self.dim());
        for (r, d) in self.images.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let inner = omega.interior(r);
            if !inner.is_zero() {
                out = &out + &d.wedge(&inner)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        GrassmannDerivation {
            degree: self.degree,
            images: self.images.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &GrassmannDerivation) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(GlaError::Degree("cannot add derivations of different degrees".into()));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Ok(GrassmannDerivation {
            degree,
            images: self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect(),
        })
    }

    /// Generator images serialized as a JSON array of exterior elements.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "images": self.images.iter().map(ExteriorElement::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for GrassmannDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation(deg={}) [", self.degree)?;
        for (r, d) in self.images.iter().enumerate() {
            if !d.is_zero() {
                write!(f, " ω{} ↦ {d};", r + 1)?;
            }
        }
        write!(f, " ]")
    }
}

/// `[D, D'] = D∘D' − (−1)^{dd'} D'∘D`.
pub fn der_bracket(a: &GrassmannDerivation, b: &GrassmannDerivation) -> Result<GrassmannDerivation> {
    check_dim(a.dim(), b.dim())?;
    let n = a.dim();
    let sign = Scalar::int(-parity_sign(a.degree * b.degree));
    let mut images = Vec::with_capacity(n);
    for r in 0..n {
        let mut img = a.apply(&b.images[r])?;
        img.add_scaled(&b.apply(&a.images[r])?, &sign);
        images.push(img);
    }
    let degree = a.degree + b.degree;
    if degree < -1 {
        // Degree −2 derivations of Λg vanish.
        return Ok(GrassmannDerivation::zero(n, degree));
    }
    GrassmannDerivation::new(degree, images)
}

/// The isomorphism `D(Ω ⊗ X) = −Ω ∧ ι_X`; degree `arity − 1`.
pub fn to_derivation(f: &SkewMap) -> GrassmannDerivation {
    GrassmannDerivation {
        degree: f.arity() as i64 - 1,
        images: f.forms().iter().map(|x| -x).collect(),
    }
}

/// Inverse of [`to_derivation`].
pub fn from_derivation(d: &GrassmannDerivation) -> SkewMap {
    let arity = (d.degree + 1) as usize;
    SkewMap::from_forms(arity, d.images.iter().map(|x| -x).collect())
        .expect("derivation images are homogeneous")
}

/// `ad(X) = F(X, ·)` for a bracket-like arity-2 map.
pub fn ad_map(bracket: &SkewMap, x: &[Rational]) -> Result<SkewMap> {
    crate::multilinear::iota_contract(x, bracket)
}

/// `θ_X = D_{ad X}` for a Lie bracket.
pub fn theta(bracket: &SkewMap, x: &[Rational]) -> Result<GrassmannDerivation> {
    Ok(to_derivation(&ad_map(bracket, x)?))
}

/// `θ_{X_i}` for a basis vector.
pub fn theta_basis(bracket: &SkewMap, i: usize) -> GrassmannDerivation {
    let n = bracket.dim();
    let x: Vec<Rational> = (0..n).map(|k| if k == i { rat(1) } else { rat(0) }).collect();
    theta(bracket, &x).expect("dimensions agree")
}

/// The Hamiltonian criterion with indices lowered through `B`:
/// `E_r = Σ_s B_rs D_s` must satisfy `ι_r E_s + ι_s E_r = 0`.
pub fn is_hamiltonian(d: &GrassmannDerivation, gram: &GramMatrix) -> Result<bool> {
    check_dim(d.dim(), gram.dim())?;
    let lowered = lower(d, gram);
    let n = d.dim();
    for r in 0..n {
        for s in r..n {
            let sym = &lowered[s].interior(r) + &lowered[r].interior(s);
            if !sym.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn lower(d: &GrassmannDerivation, gram: &GramMatrix) -> Vec<ExteriorElement> {
    let n = d.dim();
    (0..n)
        .map(|r| {
            let mut e = ExteriorElement::zero(n);
            for s in 0..n {
                let b = gram.get(r, s);
                if !b.is_zero() {
                    e.add_scaled(&d.images[s], &Scalar::Rat(b.clone()));
                }
            }
            e
        })
        .collect()
}

/// `Ω = (1/2w) Σ_r E_r ∧ ω_r` with `w = deg D + 2`, so that `ad_P(Ω) = D`.
pub fn hamiltonian_potential(d: &GrassmannDerivation, gram: &GramMatrix) -> Result<ExteriorElement> {
    if !is_hamiltonian(d, gram)? {
        return Err(GlaError::Precondition("derivation is not Hamiltonian".into()));
    }
    let n = d.dim();
    if d.is_zero() {
        return Ok(ExteriorElement::zero(n));
    }
    let w = d.degree + 2;
    let mut omega = ExteriorElement::zero(n);
    for (r, e) in lower(d, gram).iter().enumerate() {
        omega = &omega + &e.wedge(&ExteriorElement::generator(n, r))?;
    }
    Ok(omega.scale(&Scalar::Rat(Rational::new(1.into(), (2 * w).into()))))
}

/// The derivation `ad_P(Ω)` for homogeneous `Ω` of degree `w ≥ 1`.
pub fn ad_p_derivation(omega: &ExteriorElement, gram: &GramMatrix) -> Result<GrassmannDerivation> {
    let n = omega.dim();
    if omega.is_zero() {
        return Ok(GrassmannDerivation::zero(n, -1));
    }
    let w = omega
        .homogeneous_degree()
        .ok_or_else(|| GlaError::Degree("ad_P needs a homogeneous element".into()))?;
    if w == 0 {
        return Ok(GrassmannDerivation::zero(n, -1));
    }
    let images = (0..n)
        .map(|r| super_poisson(omega, &ExteriorElement::generator(n, r), gram))
        .collect::<Result<Vec<_>>>()?;
    GrassmannDerivation::new(w as i64 - 2, images)
}

/// Membership of `D` in `ad_P(Λ^w g)` decided by an exact linear solve.
pub fn is_hamiltonian_by_span(d: &GrassmannDerivation, gram: &GramMatrix) -> Result<bool> {
    check_dim(d.dim(), gram.dim())?;
    let n = d.dim();
    let w = d.degree + 2;
    if d.is_zero() {
        return Ok(true);
    }
    if w > n as i64 {
        return Ok(false);
    }
    let w = w as usize;
    let rows_basis = masks_lex(n, w - 1);
    let cols = masks_lex(n, w);
    let row_index = |r: usize, k: usize| r * rows_basis.len() + k;
    let nrows = n * rows_basis.len();
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(cols.len());
    for &m in &cols {
        let ad = ad_p_derivation(&ExteriorElement::basis(n, m), gram)?;
        let mut col = vec![Rational::zero(); nrows];
        for (r, img) in ad.images().iter().enumerate() {
            for (k, x) in img.coords(&rows_basis).into_iter().enumerate() {
                col[row_index(r, k)] = x;
            }
        }
        columns.push(col);
    }
    let mut a = SparseMatrix::new(cols.len());
    let mut b = Vec::with_capacity(nrows);
    for row in 0..nrows {
        a.push_row(
            columns
                .iter()
                .enumerate()
                .filter(|(_, c)| !c[row].is_zero())
                .map(|(j, c)| (j, c[row].clone())),
        );
    }
    for (r, img) in d.images().iter().enumerate() {
        for (k, x) in img.coords(&rows_basis).into_iter().enumerate() {
            debug_assert_eq!(b.len(), row_index(r, k));
            b.push(x);
        }
    }
    Ok(a.solve(&b).is_some())
}
