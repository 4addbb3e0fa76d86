//! Cochain complexes with exact Betti numbers: the Chevalley complex on `Λg`, the
//! adjoint complex on skew maps, the cyclic subcomplex and 2k-Lie complexes; plus the
//! cyclic-cochain maps `Θ`, `Φ = −½Θ` and invariant subspaces.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::derivation::{theta_basis, to_derivation, GrassmannDerivation};
use crate::error::{check_dim, GlaError, Result};
use crate::exterior::{mask_indices, masks_lex, super_poisson, ExteriorElement, GramMatrix, Mask};
use crate::linalg::SparseMatrix;
use crate::multilinear::{is_2k_lie, nr_bracket, SkewMap};
use crate::quadratic::LieAlgebraDef;
use crate::scalar::{frac, rat, Rational, Scalar};

/// A cochain complex `C^0 → C^1 → …` whose differential raises degree by `step`.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub name: String,
    pub step: usize,
    pub labels: Vec<Vec<String>>,
    /// `diffs[p]` maps `C^p → C^{p+step}` (rows index the target), when the target exists.
    pub diffs: Vec<Option<SparseMatrix>>,
    /// Whether the complex was cut off before its natural top degree.
    pub truncated: bool,
}

impl GradedComplex {
    /// Assembles the complex and checks `d ∘ d = 0`.
    pub fn new(
        name: &str,
        step: usize,
        labels: Vec<Vec<String>>,
        diffs: Vec<Option<SparseMatrix>>,
        truncated: bool,
    ) -> Result<Self> {
        assert!(step >= 1);
        let c = GradedComplex { name: name.to_string(), step, labels, diffs, truncated };
        for p in 0..c.diffs.len() {
            let (Some(d1), Some(Some(d2))) = (&c.diffs[p], c.diffs.get(p + step)) else {
                continue;
            };
            if !d2.mul(d1).is_zero() {
                return Err(GlaError::Inconsistent(format!(
                    "{}: d∘d ≠ 0 starting in degree {p}",
                    c.name
                )));
            }
        }
        Ok(c)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn betti(&self) -> BettiTable {
        let dims = self.dims();
        let ranks: Vec<Option<usize>> = self
            .diffs
            .iter()
            .map(|d| d.as_ref().map(SparseMatrix::rank))
            .collect();
        let rows = (0..dims.len())
            .map(|p| {
                let incoming = if p >= self.step {
                    ranks[p - self.step]
                } else {
                    Some(0)
                };
                // The outgoing map is zero when its target degree lies past the top.
                let outgoing = match &ranks[p] {
                    Some(r) => Some(*r),
                    None if p + self.step >= dims.len() && !self.truncated => Some(0),
                    None => None,
                };
                let betti = match (incoming, outgoing) {
                    (Some(i), Some(o)) => Some(dims[p] - o - i),
                    _ => None,
                };
                BettiRow { degree: p, dim: dims[p], rank: outgoing, betti }
            })
            .collect();
        BettiTable { complex: self.name.clone(), step: self.step, truncated: self.truncated, rows }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiRow {
    pub degree: usize,
    pub dim: usize,
    /// Rank of the outgoing differential; `None` past a truncation.
    pub rank: Option<usize>,
    pub betti: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub complex: String,
    pub step: usize,
    pub truncated: bool,
    pub rows: Vec<BettiRow>,
}

impl BettiTable {
    /// Betti numbers for the degrees where they are determined.
    pub fn numbers(&self) -> Vec<usize> {
        self.rows.iter().map_while(|r| r.betti).collect()
    }

    /// `Σ(−1)^k dim C^k = Σ(−1)^k b_k`, meaningful for complete complexes with odd step.
    pub fn euler_consistent(&self) -> Option<bool> {
        if self.truncated || self.step.is_multiple_of(2) {
            return None;
        }
        let mut chi_c = 0i64;
        let mut chi_b = 0i64;
        for r in &self.rows {
            let s = if r.degree % 2 == 0 { 1 } else { -1 };
            chi_c += s * r.dim as i64;
            chi_b += s * r.betti? as i64;
        }
        Some(chi_c == chi_b)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "complex": self.complex,
            "step": self.step,
            "truncated": self.truncated,
            "betti": self.numbers(),
            "degrees": self.rows.iter().map(|r| json!({
                "degree": r.degree,
                "dim": r.dim,
                "rank": r.rank,
                "betti": r.betti,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} (step {}{})\n", self.complex, self.step, if self.truncated { ", truncated" } else { "" });
        s.push_str(&format!("{:>6} {:>6} {:>6} {:>6}\n", "degree", "dim", "rank", "betti"));
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        for r in &self.rows {
            s.push_str(&format!("{:>6} {:>6} {:>6} {:>6}\n", r.degree, r.dim, opt(r.rank), opt(r.betti)));
        }
        s
    }
}

fn mask_label(m: Mask) -> String {
    mask_indices(m).iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn from_columns(nrows: usize, cols: &[Vec<Rational>]) -> SparseMatrix {
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            if !x.is_zero() {
                rows[i].push((j, x.clone()));
            }
        }
    }
    SparseMatrix { ncols: cols.len(), rows }
}

/// The complex of a derivation `D` on `Λg` of positive odd degree (or degree 1).
fn derivation_complex(name: &str, d: &GrassmannDerivation) -> Result<GradedComplex> {
    let n = d.dim();
    if d.degree() < 1 {
        return Err(GlaError::Degree("complex differential must have positive degree".into()));
    }
    let step = d.degree() as usize;
    let bases: Vec<Vec<Mask>> = (0..=n).map(|k| masks_lex(n, k)).collect();
    let mut diffs = Vec::with_capacity(n + 1);
    for p in 0..=n {
        if p + step > n {
            diffs.push(None);
            continue;
        }
        let cols = bases[p]
            .iter()
            .map(|&m| Ok(d.apply(&ExteriorElement::basis(n, m))?.coords(&bases[p + step])))
            .collect::<Result<Vec<_>>>()?;
        diffs.push(Some(from_columns(bases[p + step].len(), &cols)));
    }
    let labels = bases.iter().map(|b| b.iter().map(|m| mask_label(*m)).collect()).collect();
    GradedComplex::new(name, step, labels, diffs, false)
}

/// The Chevalley complex `(Λg, ∂)` of trivial cohomology.
pub fn trivial_complex(l: &LieAlgebraDef) -> Result<GradedComplex> {
    derivation_complex("trivial", &to_derivation(l.bracket()))
}

/// The complex `(Λg, D_F)` of a 2k-Lie structure.
pub fn two_k_complex(f: &SkewMap) -> Result<GradedComplex> {
    if !is_2k_lie(f)? {
        return Err(GlaError::Precondition("[F,F]_a ≠ 0".into()));
    }
    if f.is_zero() {
        // D_F = 0: every degree is a cocycle and nothing is exact.
        let n = f.dim();
        let step = f.arity() - 1;
        let bases: Vec<Vec<Mask>> = (0..=n).map(|k| masks_lex(n, k)).collect();
        let diffs = (0..=n)
            .map(|p| (p + step <= n).then(|| SparseMatrix { ncols: bases[p].len(), rows: vec![Vec::new(); bases[p + step].len()] }))
            .collect();
        let labels = bases.iter().map(|b| b.iter().map(|m| mask_label(*m)).collect()).collect();
        return GradedComplex::new("twoK", step, labels, diffs, false);
    }
    derivation_complex("twoK", &to_derivation(f))
}

fn skew_labels(n: usize, k: usize) -> Vec<String> {
    let mut out = Vec::new();
    for m in masks_lex(n, k) {
        for r in 0..n {
            out.push(format!("{}->{}", mask_label(m), r + 1));
        }
    }
    out
}

fn skew_basis(n: usize, k: usize) -> Vec<SkewMap> {
    let mut out = Vec::new();
    for m in masks_lex(n, k) {
        for r in 0..n {
            let mut f = SkewMap::zero(n, k);
            f.add_term(m, r, Scalar::one());
            out.push(f);
        }
    }
    out
}

/// The adjoint complex `(M_a, [F_0, ·]_a)` in arities `0..=max_arity`.
pub fn adjoint_complex(l: &LieAlgebraDef, max_arity: usize) -> Result<GradedComplex> {
    let n = l.dim();
    let top = max_arity.min(n);
    let f0 = l.bracket();
    let mut diffs = Vec::with_capacity(top + 1);
    for k in 0..=top {
        if k + 1 > top {
            diffs.push(None);
            continue;
        }
        let cols = skew_basis(n, k)
            .iter()
            .map(|c| Ok(nr_bracket(f0, c)?.coords()))
            .collect::<Result<Vec<_>>>()?;
        diffs.push(Some(from_columns(masks_lex(n, k + 1).len() * n, &cols)));
    }
    let labels = (0..=top).map(|k| skew_labels(n, k)).collect();
    GradedComplex::new("adjoint", 1, labels, diffs, top < n)
}

/// `Ĉ(Y_1..Y_{k+1}) = B(C(Y_1..Y_k), Y_{k+1})` on a sorted index list.
fn hat_value(c: &SkewMap, gram: &GramMatrix, args: &[usize]) -> Rational {
    let (last, head) = args.split_last().expect("at least one argument");
    let v = c.eval(head);
    let mut s = Rational::zero();
    for (r, x) in v.iter().enumerate() {
        let b = gram.get(r, *last);
        if !b.is_zero() && !x.is_zero() {
            s += x.as_rational().expect("rational map") * b;
        }
    }
    s
}

/// Whether `Ĉ` is skew in all `k + 1` arguments.
///
/// `Ĉ` is already skew in its first `k` slots; full skewness then reduces to
/// antisymmetry under exchanging the last two.
pub fn is_cyclic(c: &SkewMap, gram: &GramMatrix) -> Result<bool> {
    check_dim(c.dim(), gram.dim())?;
    let n = c.dim();
    let k = c.arity();
    if k == 0 {
        return Ok(true);
    }
    for head in masks_lex(n, k - 1) {
        let hi = mask_indices(head);
        for a in 0..n {
            if head & (1 << a) != 0 {
                continue;
            }
            for b in a..n {
                if head & (1 << b) != 0 {
                    continue;
                }
                let mut x = hi.clone();
                x.push(a);
                x.push(b);
                let mut y = hi.clone();
                y.push(b);
                y.push(a);
                if hat_value(c, gram, &x) != -hat_value(c, gram, &y) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `Θ(C) = Ĉ` as a `(k+1)`-form.
pub fn theta_map(c: &SkewMap, gram: &GramMatrix) -> Result<ExteriorElement> {
    if !is_cyclic(c, gram)? {
        return Err(GlaError::Precondition("cochain is not cyclic".into()));
    }
    Ok(theta_unchecked(c, gram))
}

fn theta_unchecked(c: &SkewMap, gram: &GramMatrix) -> ExteriorElement {
    let n = c.dim();
    let mut out = ExteriorElement::zero(n);
    if c.arity() + 1 > n {
        return out;
    }
    for m in masks_lex(n, c.arity() + 1) {
        let v = hat_value(c, gram, &mask_indices(m));
        out.add_term(m, Scalar::Rat(v));
    }
    out
}

/// `Θ⁻¹(Ω)`: `C_l = (−1)^k Σ_m (B⁻¹)_{lm} ι_m Ω` for `Ω` of degree `k + 1 ≥ 1`.
pub fn theta_inverse(omega: &ExteriorElement, gram: &GramMatrix) -> Result<SkewMap> {
    check_dim(omega.dim(), gram.dim())?;
    let n = omega.dim();
    let w = match omega.homogeneous_degree() {
        Some(w) if w >= 1 => w,
        None if omega.is_zero() => {
            return Err(GlaError::Degree("degree of the zero form is ambiguous".into()))
        }
        _ => return Err(GlaError::Degree("Θ⁻¹ needs a homogeneous form of degree ≥ 1".into())),
    };
    let k = w - 1;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let inner: Vec<ExteriorElement> = (0..n).map(|m| omega.interior(m)).collect();
    let forms = (0..n)
        .map(|l| {
            let mut f = ExteriorElement::zero(n);
            for (m, im) in inner.iter().enumerate() {
                let g = gram.inv(l, m);
                if !g.is_zero() {
                    f.add_scaled(im, &Scalar::Rat(g * rat(sign)));
                }
            }
            f
        })
        .collect();
    SkewMap::from_forms(k, forms)
}

/// `Φ = −½ Θ`.
pub fn phi(c: &SkewMap, gram: &GramMatrix) -> Result<ExteriorElement> {
    Ok(theta_map(c, gram)?.scale_rat(&frac(-1, 2)))
}

pub fn phi_inverse(omega: &ExteriorElement, gram: &GramMatrix) -> Result<SkewMap> {
    theta_inverse(&omega.scale_rat(&rat(-2)), gram)
}

/// `C ∧ C' = Φ⁻¹(Φ(C) ∧ Φ(C'))`.
pub fn cyclic_wedge(c1: &SkewMap, c2: &SkewMap, gram: &GramMatrix) -> Result<SkewMap> {
    let w = phi(c1, gram)?.wedge(&phi(c2, gram)?)?;
    let arity = c1.arity() + c2.arity() + 1;
    if w.is_zero() {
        return Ok(SkewMap::zero(c1.dim(), arity));
    }
    phi_inverse(&w, gram)
}

/// `Ω · C`: the left `Λg`-action on `Λg ⊗ g`.
pub fn form_times_map(omega: &ExteriorElement, c: &SkewMap) -> Result<SkewMap> {
    let w = omega
        .homogeneous_degree()
        .ok_or_else(|| GlaError::Degree("needs a homogeneous form".into()))?;
    let forms = c.forms().iter().map(|f| omega.wedge(f)).collect::<Result<Vec<_>>>()?;
    SkewMap::from_forms(w + c.arity(), forms)
}

/// `Φ(C)·C' + (−1)^{(k+1)(k'+1)} Φ(C')·C`.
pub fn cyclic_wedge_explicit(c1: &SkewMap, c2: &SkewMap, gram: &GramMatrix) -> Result<SkewMap> {
    let n = c1.dim();
    let arity = c1.arity() + c2.arity() + 1;
    let (p1, p2) = (phi(c1, gram)?, phi(c2, gram)?);
    let mut out = SkewMap::zero(n, arity);
    if !p1.is_zero() {
        out.add_scaled(&form_times_map(&p1, c2)?, &Scalar::one())?;
    }
    if !p2.is_zero() {
        let s = if ((c1.arity() + 1) * (c2.arity() + 1)).is_multiple_of(2) { 1 } else { -1 };
        out.add_scaled(&form_times_map(&p2, c1)?, &Scalar::int(s))?;
    }
    Ok(out)
}

/// The cyclic subcomplex `(C_c, [F_0, ·]_a)` in arities `0..=max_arity`, with coordinates
/// taken through `Θ`.
pub fn cyclic_complex(l: &LieAlgebraDef, max_arity: usize) -> Result<GradedComplex> {
    let gram = l.require_gram()?;
    let n = l.dim();
    let top = max_arity.min(n - 1);
    let f0 = l.bracket();
    let mut diffs = Vec::with_capacity(top + 1);
    let mut labels = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let basis = masks_lex(n, k + 1);
        labels.push(basis.iter().map(|m| format!("Θ⁻¹({})", mask_label(*m))).collect());
        if k + 1 > top {
            diffs.push(None);
            continue;
        }
        let target = masks_lex(n, k + 2);
        let mut cols = Vec::with_capacity(basis.len());
        for &m in &basis {
            let c = theta_inverse(&ExteriorElement::basis(n, m), gram)?;
            let dc = nr_bracket(f0, &c)?;
            if !is_cyclic(&dc, gram)? {
                return Err(GlaError::Inconsistent(format!(
                    "d maps the cyclic cochain Θ⁻¹(e_{}) outside C_c",
                    mask_label(m)
                )));
            }
            cols.push(theta_unchecked(&dc, gram).coords(&target));
        }
        diffs.push(Some(from_columns(target.len(), &cols)));
    }
    GradedComplex::new("cyclic", 1, labels, diffs, top < n - 1)
}

/// Which space to compute invariants in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantSpace {
    Exterior,
    Skew { max_arity: usize },
}

/// `L_X(F) = Σ_r θ_X(F_r) ⊗ X_r + F_r ⊗ [X, X_r]`.
pub fn lie_derivative(l: &LieAlgebraDef, i: usize, f: &SkewMap) -> Result<SkewMap> {
    check_dim(l.dim(), f.dim())?;
    let th = theta_basis(l.bracket(), i);
    let mut forms: Vec<ExteriorElement> =
        f.forms().iter().map(|x| th.apply(x)).collect::<Result<Vec<_>>>()?;
    for (r, fr) in f.forms().iter().enumerate() {
        if fr.is_zero() {
            continue;
        }
        for (s, c) in l.bracket_basis(i, r).into_iter().enumerate() {
            if !c.is_zero() {
                forms[s].add_scaled(fr, &Scalar::Rat(c));
            }
        }
    }
    SkewMap::from_forms(f.arity(), forms)
}

/// Invariant bases per degree (exterior) or arity (skew maps).
pub fn invariants(l: &LieAlgebraDef, space: InvariantSpace) -> Result<Vec<Vec<Vec<Rational>>>> {
    let n = l.dim();
    let mut out = Vec::new();
    match space {
        InvariantSpace::Exterior => {
            let thetas: Vec<GrassmannDerivation> = (0..n).map(|i| theta_basis(l.bracket(), i)).collect();
            for k in 0..=n {
                let basis = masks_lex(n, k);
                let mut m = SparseMatrix::new(basis.len());
                let cols: Vec<Vec<Vec<Rational>>> = basis
                    .iter()
                    .map(|&b| {
                        thetas
                            .iter()
                            .map(|t| Ok(t.apply(&ExteriorElement::basis(n, b))?.coords(&basis)))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                for t in 0..n {
                    for row in 0..basis.len() {
                        m.push_row(cols.iter().enumerate().map(|(j, c)| (j, c[t][row].clone())));
                    }
                }
                out.push(m.nullspace());
            }
        }
        InvariantSpace::Skew { max_arity } => {
            for k in 0..=max_arity.min(n) {
                let basis = skew_basis(n, k);
                let cols = basis
                    .iter()
                    .map(|c| {
                        (0..n)
                            .map(|i| Ok(lie_derivative(l, i, c)?.coords()))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let per = masks_lex(n, k).len() * n;
                let mut m = SparseMatrix::new(basis.len());
                for i in 0..n {
                    for row in 0..per {
                        m.push_row(cols.iter().enumerate().map(|(j, c)| (j, c[i][row].clone())));
                    }
                }
                out.push(m.nullspace());
            }
        }
    }
    Ok(out)
}

/// Result of checking `{I, I'} = 0` on an invariant basis.
#[derive(Clone, Debug)]
pub struct CommutativityReport {
    /// Number of invariant basis vectors per degree.
    pub invariant_dims: Vec<usize>,
    pub pairs_checked: usize,
    /// `(degree, index, degree', index')` for each nonvanishing bracket.
    pub failures: Vec<(usize, usize, usize, usize)>,
}

impl CommutativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the super Poisson bracket vanishes on pairs of invariants of a
/// semisimple quadratic Lie algebra.
pub fn poisson_commutativity_check(l: &LieAlgebraDef) -> Result<CommutativityReport> {
    let gram = l.require_gram()?;
    if !l.is_semisimple() {
        return Err(GlaError::Precondition(
            "Killing form is degenerate; algebra is not semisimple".into(),
        ));
    }
    let n = l.dim();
    let inv = invariants(l, InvariantSpace::Exterior)?;
    let elems: Vec<(usize, usize, ExteriorElement)> = inv
        .iter()
        .enumerate()
        .flat_map(|(k, basis)| {
            let masks = masks_lex(n, k);
            basis
                .iter()
                .enumerate()
                .map(move |(j, v)| (k, j, ExteriorElement::from_coords(n, &masks, v)))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (a, (k1, j1, x)) in elems.iter().enumerate() {
        for (k2, j2, y) in &elems[a..] {
            pairs += 1;
            if !super_poisson(x, y, gram)?.is_zero() {
                failures.push((*k1, *j1, *k2, *j2));
            }
        }
    }
    Ok(CommutativityReport {
        invariant_dims: inv.iter().map(Vec::len).collect(),
        pairs_checked: pairs,
        failures,
    })
}

/// Solves `D_F = ½ Σ_r β_r ∧ θ_{X_r}` for forms `β_r` of degree `arity(F) − 1`.
pub fn beta_decomposition(l: &LieAlgebraDef, f: &SkewMap) -> Result<Option<Vec<ExteriorElement>>> {
    check_dim(l.dim(), f.dim())?;
    let n = l.dim();
    let d = to_derivation(f);
    let bdeg = f.arity() - 1;
    let bmasks = masks_lex(n, bdeg);
    let tmasks = masks_lex(n, bdeg + 1);
    let t_index: BTreeMap<Mask, usize> = tmasks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let thetas: Vec<GrassmannDerivation> = (0..n).map(|i| theta_basis(l.bracket(), i)).collect();
    // Unknown (r, J): coefficient of e_J in β_r. Equation (s, K): coefficient of e_K in D(ω_s).
    let nunk = n * bmasks.len();
    let mut eqs: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n * tmasks.len()];
    for (r, th) in thetas.iter().enumerate() {
        for s in 0..n {
            let img = th.apply(&ExteriorElement::generator(n, s))?;
            for (jm, &j) in bmasks.iter().enumerate() {
                let w = ExteriorElement::basis(n, j).wedge(&img)?;
                for (k, c) in w.terms() {
                    let row = s * tmasks.len() + t_index[k];
                    let slot = eqs[row].entry(r * bmasks.len() + jm).or_insert_with(Rational::zero);
                    *slot += c.as_rational().expect("rational") * frac(1, 2);
                }
            }
        }
    }
    let mut a = SparseMatrix::new(nunk);
    for row in eqs {
        a.push_row(row);
    }
    let mut b = Vec::with_capacity(n * tmasks.len());
    for s in 0..n {
        b.extend(d.images()[s].coords(&tmasks));
    }
    Ok(a.solve(&b).map(|x| {
        (0..n)
            .map(|r| ExteriorElement::from_coords(n, &bmasks, &x[r * bmasks.len()..(r + 1) * bmasks.len()]))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::{abelian, gl, sl};

    #[test]
    fn small_trivial_betti() {
        assert_eq!(trivial_complex(&sl(2)).unwrap().betti().numbers(), vec![1, 0, 0, 1]);
        assert_eq!(trivial_complex(&gl(2)).unwrap().betti().numbers(), vec![1, 1, 0, 1, 1]);
        assert_eq!(trivial_complex(&abelian(3).unwrap()).unwrap().betti().numbers(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn small_cyclic_betti() {
        assert_eq!(cyclic_complex(&sl(2), 8).unwrap().betti().numbers(), vec![0, 0, 1]);
        assert_eq!(cyclic_complex(&gl(2), 8).unwrap().betti().numbers(), vec![1, 0, 1, 1]);
    }

    #[test]
    fn theta_round_trip() {
        let g = sl(2);
        let gram = g.gram().unwrap();
        let c = g.bracket();
        let t = theta_map(c, gram).unwrap();
        assert_eq!(&theta_inverse(&t, gram).unwrap(), c);
    }

    #[test]
    fn sl2_exterior_invariants() {
        let dims: Vec<usize> = invariants(&sl(2), InvariantSpace::Exterior)
            .unwrap()
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(dims, vec![1, 0, 0, 1]);
    }

    #[test]
    fn gl2_refused_by_commutativity_check() {
        assert!(poisson_commutativity_check(&gl(2)).is_err());
        assert!(poisson_commutativity_check(&sl(2)).unwrap().passed());
    }
}
