//! Quadratic Lie algebras: the bracket/3-form correspondence, decomposability, the
//! elementary catalog and central reduction.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cohomology;
use crate::derivation::{ad_p_derivation, from_derivation};
use crate::error::{check_dim, GlaError, Result};
use crate::exterior::{check_n, mask_indices, masks_lex, ExteriorElement, GramMatrix};
use crate::linalg;
use crate::multilinear::{
    json_dim, nr_bracket, parse_scalar_value, parse_table_entry, AssociativeAlgebraDef, SkewMap,
};
use crate::scalar::{frac, rat, Rational, Scalar};

/// A vector space with a nondegenerate symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSpace {
    pub gram: GramMatrix,
}

impl QuadraticSpace {
    pub fn new(gram: GramMatrix) -> Self {
        QuadraticSpace { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
}

fn rational_of(s: &Scalar) -> Rational {
    s.as_rational().cloned().expect("Lie structure constants are rational")
}

/// A Lie algebra given by an arity-2 skew map, optionally with an invariant form.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebraDef {
    bracket: SkewMap,
    gram: Option<GramMatrix>,
    name: Option<String>,
}

impl fmt::Debug for LieAlgebraDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebraDef({}, n={})", self.name.as_deref().unwrap_or("?"), self.dim())
    }
}

impl LieAlgebraDef {
    /// Checks Jacobi and, when a Gram matrix is given, its invariance.
    pub fn new(bracket: SkewMap, gram: Option<GramMatrix>) -> Result<Self> {
        if bracket.arity() != 2 {
            return Err(GlaError::Arity(format!(
                "a Lie bracket has arity 2, got {}",
                bracket.arity()
            )));
        }
        if bracket.forms().iter().any(|f| !f.is_rational()) {
            return Err(GlaError::Structure("structure constants must be rational".into()));
        }
        if let Some(g) = &gram {
            check_dim(bracket.dim(), g.dim())?;
        }
        let jac = nr_bracket(&bracket, &bracket)?;
        if !jac.is_zero() {
            return Err(GlaError::Structure(format!("Jacobi identity fails: [F,F]_a = {jac:?}")));
        }
        let l = LieAlgebraDef { bracket, gram, name: None };
        if let Some(g) = &l.gram {
            let n = l.dim();
            for x in 0..n {
                for y in 0..n {
                    let xy = l.bracket_basis(x, y);
                    for z in 0..n {
                        let lhs = g.pair(&xy, &unit(n, z));
                        let rhs = -g.pair(&unit(n, y), &l.bracket_basis(x, z));
                        if lhs != rhs {
                            return Err(GlaError::Structure(format!(
                                "form is not invariant on (X{}, X{}, X{})",
                                x + 1,
                                y + 1,
                                z + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(l)
    }

    /// Builds from entries `[X_i, X_j] += c X_k` (0-based); skewness fills `[X_j, X_i]`.
    pub fn from_table(
        n: usize,
        entries: &[(usize, usize, usize, Rational)],
        gram: Option<GramMatrix>,
    ) -> Result<Self> {
        check_n(n)?;
        let mut f = SkewMap::zero(n, 2);
        for (i, j, k, c) in entries {
            for &x in [i, j, k] {
                if x >= n {
                    return Err(GlaError::IndexOutOfRange { index: x + 1, n });
                }
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(GlaError::Structure(format!("[X{0}, X{0}] must vanish", i + 1)));
            }
            let (a, b, s) = if i < j { (*i, *j, 1) } else { (*j, *i, -1) };
            f.add_term((1 << a) | (1 << b), *k, Scalar::Rat(c * rat(s)));
        }
        Self::new(f, gram)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn bracket(&self) -> &SkewMap {
        &self.bracket
    }

    pub fn gram(&self) -> Option<&GramMatrix> {
        self.gram.as_ref()
    }

    pub fn require_gram(&self) -> Result<&GramMatrix> {
        self.gram
            .as_ref()
            .ok_or_else(|| GlaError::Precondition("algebra has no invariant form".into()))
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.bracket.eval(&[i, j]).iter().map(rational_of).collect()
    }

    pub fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.bracket
            .eval_vectors(&[x.to_vec(), y.to_vec()])
            .expect("dimensions agree")
            .iter()
            .map(rational_of)
            .collect()
    }

    /// Matrix of `ad(X)`: column `j` is `[X, X_j]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| self.bracket_vec(x, &unit(n, j))).collect();
        linalg::transpose(&cols)
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        // Row (j, k): Σ_i x_i c_{ij}^k = 0.
        let mut rows = Vec::new();
        for j in 0..n {
            let cols: Vec<Vec<Rational>> = (0..n).map(|i| self.bracket_basis(i, j)).collect();
            for k in 0..n {
                rows.push(cols.iter().map(|c| c[k].clone()).collect());
            }
        }
        linalg::nullspace(&rows, n)
    }

    /// Basis of `[g, g]` (reduced row echelon rows).
    pub fn derived(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket_basis(i, j);
                if !linalg::is_zero_vec(&v) {
                    gens.push(v);
                }
            }
        }
        row_space(&gens)
    }

    /// The Killing form `tr(ad X_i ad X_j)`.
    pub fn killing_form(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let ads: Vec<Vec<Vec<Rational>>> = (0..n).map(|i| self.ad_matrix(&unit(n, i))).collect();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let p = linalg::mat_mul(&ads[i], &ads[j]);
                        (0..n).fold(Rational::zero(), |acc, k| acc + &p[k][k])
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_semisimple(&self) -> bool {
        !linalg::determinant(&self.killing_form()).is_zero()
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let mut bracket = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        bracket.push(json!([i + 1, j + 1, k + 1, Scalar::Rat(c.clone()).to_string()]));
                    }
                }
            }
        }
        let mut obj = json!({ "dim": n, "bracket": bracket });
        if let Some(g) = &self.gram {
            obj["gram"] = g.to_json();
        }
        obj
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = json_dim(v)?;
        let mut entries = Vec::new();
        if let Some(rows) = v.get("bracket") {
            let rows = rows
                .as_array()
                .ok_or_else(|| GlaError::Parse("`bracket` must be an array".into()))?;
            for e in rows {
                entries.push(parse_table_entry(e, n)?);
            }
        }
        let gram = match v.get("gram") {
            None | Some(Value::Null) => None,
            Some(g) => {
                let rows = g
                    .as_array()
                    .ok_or_else(|| GlaError::Parse("`gram` must be an array of rows".into()))?;
                check_dim(n, rows.len())?;
                let mut m = Vec::with_capacity(n);
                for row in rows {
                    let row = row
                        .as_array()
                        .ok_or_else(|| GlaError::Parse("`gram` rows must be arrays".into()))?;
                    check_dim(n, row.len())?;
                    m.push(row.iter().map(parse_scalar_value).collect::<Result<Vec<_>>>()?);
                }
                Some(GramMatrix::new(m)?)
            }
        };
        Self::from_table(n, &entries, gram)
    }

    /// Restriction to a subalgebra spanned by `basis` (coordinates solved exactly).
    pub fn restrict(&self, basis: &[Vec<Rational>]) -> Result<LieAlgebraDef> {
        let m = basis.len();
        check_n(m)?;
        let as_cols = linalg::transpose(basis);
        let mut entries = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let v = self.bracket_vec(&basis[i], &basis[j]);
                let coords = linalg::solve(&as_cols, &v).ok_or_else(|| {
                    GlaError::Structure("span is not closed under the bracket".into())
                })?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        let gram = match &self.gram {
            Some(g) => Some(GramMatrix::new(
                basis.iter().map(|x| basis.iter().map(|y| g.pair(x, y)).collect()).collect(),
            )?),
            None => None,
        };
        Self::from_table(m, &entries, gram)
    }

    /// The Lie algebra of an associative algebra, with the trace form when a trace exists
    /// and that form is nondegenerate.
    pub fn from_associative(alg: &AssociativeAlgebraDef) -> Result<Self> {
        let bracket = alg.standard_polynomial(2)?;
        let gram = match alg.trace() {
            Some(tau) => {
                let n = alg.dim();
                let g: Vec<Vec<Rational>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                alg.mul_basis(i, j)
                                    .iter()
                                    .zip(tau)
                                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                            })
                            .collect()
                    })
                    .collect();
                GramMatrix::new(g).ok()
            }
            None => None,
        };
        Self::new(bracket, gram)
    }

    /// Bracket and trace form from a basis of square matrices closed under commutators.
    pub fn from_matrix_basis(mats: &[Vec<Vec<Rational>>]) -> Result<Self> {
        let n = mats.len();
        let flat: Vec<Vec<Rational>> = mats.iter().map(|m| m.concat()).collect();
        let as_cols = linalg::transpose(&flat);
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let ab = linalg::mat_mul(&mats[i], &mats[j]);
                let ba = linalg::mat_mul(&mats[j], &mats[i]);
                let c: Vec<Rational> =
                    ab.concat().iter().zip(ba.concat()).map(|(x, y)| x - y).collect();
                let coords = linalg::solve(&as_cols, &c).ok_or_else(|| {
                    GlaError::Structure("matrix basis is not closed under commutators".into())
                })?;
                for (k, x) in coords.into_iter().enumerate() {
                    if !x.is_zero() {
                        entries.push((i, j, k, x));
                    }
                }
            }
        }
        let trace = |a: &Vec<Vec<Rational>>| (0..a.len()).fold(Rational::zero(), |acc, k| acc + &a[k][k]);
        let gram = (0..n)
            .map(|i| (0..n).map(|j| trace(&linalg::mat_mul(&mats[i], &mats[j]))).collect())
            .collect();
        Self::from_table(n, &entries, Some(GramMatrix::new(gram)?))
    }

    /// Direct sum with the orthogonal sum of forms (when both have one).
    pub fn direct_sum(&self, other: &LieAlgebraDef) -> Result<LieAlgebraDef> {
        let (a, b) = (self.dim(), other.dim());
        let n = a + b;
        let mut entries = Vec::new();
        for (off, l) in [(0, self), (a, other)] {
            for i in 0..l.dim() {
                for j in i + 1..l.dim() {
                    for (k, c) in l.bracket_basis(i, j).into_iter().enumerate() {
                        if !c.is_zero() {
                            entries.push((i + off, j + off, k + off, c));
                        }
                    }
                }
            }
        }
        let gram = match (&self.gram, &other.gram) {
            (Some(g), Some(h)) => {
                let mut m = vec![vec![Rational::zero(); n]; n];
                for i in 0..a {
                    for j in 0..a {
                        m[i][j] = g.get(i, j).clone();
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        m[a + i][a + j] = h.get(i, j).clone();
                    }
                }
                Some(GramMatrix::new(m)?)
            }
            _ => None,
        };
        Self::from_table(n, &entries, gram)
    }
}

/// Echelon basis of the row space.
pub fn row_space(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for v in rows {
        let mut cand = basis.clone();
        cand.push(v.clone());
        if linalg::rank(&cand) > basis.len() {
            basis.push(v.clone());
        }
    }
    basis
}

fn span_contains(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    if basis.is_empty() {
        return linalg::is_zero_vec(v);
    }
    linalg::solve(&linalg::transpose(basis), v).is_some()
}

fn intersect(a: &[Vec<Rational>], b: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Σ x_i a_i − Σ y_j b_j = 0.
    let mut cols: Vec<Vec<Rational>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = linalg::transpose(&cols);
    let ker = linalg::nullspace(&m, cols.len());
    let vecs: Vec<Vec<Rational>> = ker
        .iter()
        .map(|k| {
            let mut v = vec![Rational::zero(); n];
            for (i, ai) in a.iter().enumerate() {
                for (t, x) in ai.iter().enumerate() {
                    v[t] += &k[i] * x;
                }
            }
            v
        })
        .collect();
    row_space(&vecs)
}

/// Catalog names accepted by [`catalog`].
pub const CATALOG: &[&str] = &["sl2", "sl3", "gl2", "gl3", "elem4", "elem5", "elem6"];

fn matrix_unit(m: usize, i: usize, j: usize) -> Vec<Vec<Rational>> {
    let mut a = vec![vec![Rational::zero(); m]; m];
    a[i][j] = Rational::one();
    a
}

/// `sl(m)` on `H_1..H_{m−1}` followed by `E_ij` (`i < j`) then `E_ij` (`i > j`).
pub fn sl(m: usize) -> LieAlgebraDef {
    let mut mats = Vec::new();
    for i in 0..m - 1 {
        let mut h = matrix_unit(m, i, i);
        h[i + 1][i + 1] = -Rational::one();
        mats.push(h);
    }
    for i in 0..m {
        for j in i + 1..m {
            mats.push(matrix_unit(m, i, j));
        }
    }
    for i in 0..m {
        for j in 0..i {
            mats.push(matrix_unit(m, i, j));
        }
    }
    LieAlgebraDef::from_matrix_basis(&mats)
        .expect("sl(m) is a quadratic Lie algebra")
        .with_name(&format!("sl{m}"))
}

/// `gl(m)` on matrix units in row-major order, with the trace form.
pub fn gl(m: usize) -> LieAlgebraDef {
    LieAlgebraDef::from_associative(&AssociativeAlgebraDef::gl(m))
        .expect("gl(m) is a quadratic Lie algebra")
        .with_name(&format!("gl{m}"))
}

/// The abelian algebra of dimension `n` with the identity form.
pub fn abelian(n: usize) -> Result<LieAlgebraDef> {
    check_n(n)?;
    Ok(LieAlgebraDef::new(SkewMap::zero(n, 2), Some(GramMatrix::identity(n)))?
        .with_name(&format!("abelian{n}")))
}

fn hyperbolic_gram(n: usize, pairs: &[(usize, usize)], ones: &[usize]) -> GramMatrix {
    let mut m = vec![vec![Rational::zero(); n]; n];
    for &(a, b) in pairs {
        m[a][b] = Rational::one();
        m[b][a] = Rational::one();
    }
    for &a in ones {
        m[a][a] = Rational::one();
    }
    GramMatrix::new(m).expect("catalog form is nondegenerate")
}

/// Basis `Z_1, Z_2, Z_3, X_1, X_2, X_3` with `B(Z_i, X_j) = δ_ij`.
pub fn elem6() -> LieAlgebraDef {
    let g = hyperbolic_gram(6, &[(0, 3), (1, 4), (2, 5)], &[]);
    let e = [(3, 4, 2, rat(1)), (4, 5, 0, rat(1)), (5, 3, 1, rat(1))];
    LieAlgebraDef::from_table(6, &e, Some(g)).expect("valid catalog algebra").with_name("elem6")
}

/// Basis `Z_1, Z_2, X_1, X_2, T` with `B(Z_i, X_j) = δ_ij`, `B(T, T) = 1`.
pub fn elem5() -> LieAlgebraDef {
    let g = hyperbolic_gram(5, &[(0, 2), (1, 3)], &[4]);
    let e = [(2, 4, 1, rat(-1)), (3, 4, 0, rat(1)), (2, 3, 4, rat(1))];
    LieAlgebraDef::from_table(5, &e, Some(g)).expect("valid catalog algebra").with_name("elem5")
}

/// Basis `Z, P, X, Q` with `B(Z, X) = B(P, Q) = 1`.
pub fn elem4() -> LieAlgebraDef {
    let g = hyperbolic_gram(4, &[(0, 2), (1, 3)], &[]);
    let e = [(2, 1, 1, rat(1)), (2, 3, 3, rat(-1)), (1, 3, 0, rat(1))];
    LieAlgebraDef::from_table(4, &e, Some(g)).expect("valid catalog algebra").with_name("elem4")
}

/// Looks up a catalog or parametrized builtin (`abelian<n>`, `gl<m>`, `sl<m>`).
pub fn catalog(name: &str) -> Result<LieAlgebraDef> {
    match name {
        "elem4" => Ok(elem4()),
        "elem5" => Ok(elem5()),
        "elem6" => Ok(elem6()),
        _ => {
            let parse = |prefix: &str| {
                name.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok())
            };
            if let Some(n) = parse("abelian") {
                return abelian(n);
            }
            if let Some(m) = parse("gl").filter(|m| (1..=4).contains(m)) {
                return Ok(gl(m));
            }
            if let Some(m) = parse("sl").filter(|m| (2..=4).contains(m)) {
                return Ok(sl(m));
            }
            Err(GlaError::Parse(format!("unknown algebra `{name}`")))
        }
    }
}

/// `I(X, Y, Z) = B([X, Y], Z)`.
pub fn threeform_from_bracket(l: &LieAlgebraDef) -> Result<ExteriorElement> {
    let g = l.require_gram()?;
    let n = l.dim();
    let mut out = ExteriorElement::zero(n);
    for m in masks_lex(n, 3) {
        let idx = mask_indices(m);
        let xy = l.bracket_basis(idx[0], idx[1]);
        let v = g.pair(&xy, &unit(n, idx[2]));
        out.add_term(m, Scalar::Rat(v));
    }
    Ok(out)
}

/// The arity-`2k` map `F` with `D_F = −½ ad_P(I)` for `I` of odd degree `2k+1 ≥ 3`.
///
/// The zero form yields the zero bracket of arity 2.
pub fn bracket_from_form(i: &ExteriorElement, q: &QuadraticSpace) -> Result<SkewMap> {
    check_dim(i.dim(), q.dim())?;
    if i.is_zero() {
        return Ok(SkewMap::zero(i.dim(), 2));
    }
    let w = i
        .homogeneous_degree()
        .ok_or_else(|| GlaError::Degree("form must be homogeneous".into()))?;
    if w % 2 == 0 || w < 3 {
        return Err(GlaError::Degree(format!("form must have odd degree ≥ 3, got {w}")));
    }
    let d = ad_p_derivation(i, &q.gram)?.scale(&Scalar::Rat(frac(-1, 2)));
    Ok(from_derivation(&d))
}

/// Decomposability with the witness `dim V_I`, where `V_I` is the orthogonal of the
/// annihilator `{X : ι_X I = 0}`.
pub fn is_decomposable(i: &ExteriorElement) -> Result<(bool, usize)> {
    if i.is_zero() {
        return Err(GlaError::Precondition("decomposability of the zero form".into()));
    }
    let k = i
        .homogeneous_degree()
        .ok_or_else(|| GlaError::Degree("form must be homogeneous".into()))?;
    if !i.is_rational() {
        return Err(GlaError::Precondition("form must have rational coefficients".into()));
    }
    let n = i.dim();
    let basis = masks_lex(n, k - 1);
    let rows: Vec<Vec<Rational>> = (0..n).map(|x| i.interior(x).coords(&basis)).collect();
    let dim_v = linalg::rank(&rows);
    Ok((dim_v == k, dim_v))
}

/// Elementary test by decomposability of `I`, cross-checked against `dim [g,g] = 3`.
pub fn is_elementary(l: &LieAlgebraDef) -> Result<bool> {
    if l.is_abelian() {
        return Err(GlaError::Precondition("abelian algebras are excluded".into()));
    }
    let (dec, _) = is_decomposable(&threeform_from_bracket(l)?)?;
    let by_derived = l.derived().len() == 3;
    if dec != by_derived {
        return Err(GlaError::Inconsistent(format!(
            "decomposability ({dec}) disagrees with dim [g,g] = 3 ({by_derived})"
        )));
    }
    Ok(dec)
}

/// `g = z ⊕ l` with `z` central, `B|_z` nondegenerate and `Z(l)` totally isotropic.
#[derive(Clone, Debug)]
pub struct CentralReduction {
    /// Basis of `z` in coordinates of `g`.
    pub z: Vec<Vec<Rational>>,
    /// Basis of `l = z^⊥` in coordinates of `g`.
    pub l_basis: Vec<Vec<Rational>>,
    /// `l` with the restricted bracket and form.
    pub l: LieAlgebraDef,
    /// Restriction of `B` to `z`, when `z ≠ 0`.
    pub z_gram: Option<GramMatrix>,
}

pub fn reduce_center(g: &LieAlgebraDef) -> Result<CentralReduction> {
    let b = g.require_gram()?;
    if g.is_abelian() {
        return Err(GlaError::Precondition("abelian algebras are excluded".into()));
    }
    let n = g.dim();
    let center = g.center();
    let derived = g.derived();
    let z0 = intersect(&center, &derived, n);
    // Extend z0 inside Z(g), taking center basis vectors in order.
    let mut ext = z0.clone();
    let mut z = Vec::new();
    for v in &center {
        let mut cand = ext.clone();
        cand.push(v.clone());
        if linalg::rank(&cand) > ext.len() {
            ext.push(v.clone());
            z.push(v.clone());
        }
    }
    let z_gram = if z.is_empty() {
        None
    } else {
        let m: Vec<Vec<Rational>> = z.iter().map(|x| z.iter().map(|y| b.pair(x, y)).collect()).collect();
        Some(GramMatrix::new(m).map_err(|_| {
            GlaError::Inconsistent("form restricted to the central complement is degenerate".into())
        })?)
    };
    let l_basis = if z.is_empty() {
        (0..n).map(|i| unit(n, i)).collect()
    } else {
        let flats: Vec<Vec<Rational>> = z.iter().map(|x| b.flat(x)).collect();
        linalg::nullspace(&flats, n)
    };
    let l = g.restrict(&l_basis)?;
    let lg = l.require_gram()?;
    let zl = l.center();
    let dl = l.derived();
    for x in &zl {
        for y in &zl {
            if !lg.pair(x, y).is_zero() {
                return Err(GlaError::Inconsistent("Z(l) is not totally isotropic".into()));
            }
        }
        if !span_contains(&dl, x) {
            return Err(GlaError::Inconsistent("Z(l) is not contained in [l,l]".into()));
        }
    }
    let m = l.dim();
    if !(2 * zl.len() <= m && m <= 2 * dl.len()) {
        return Err(GlaError::Inconsistent(format!(
            "dimension bounds fail: dim Z(l) = {}, dim l = {m}, dim [l,l] = {}",
            zl.len(),
            dl.len()
        )));
    }
    Ok(CentralReduction { z, l_basis, l, z_gram })
}

fn tuples_sorted(n: usize, k: usize) -> Vec<Vec<usize>> {
    masks_lex(n, k).into_iter().map(mask_indices).collect()
}

/// `B`-invariance of an even-arity map, decided three ways that must agree.
pub fn is_invariant_form(f: &SkewMap, gram: &GramMatrix) -> Result<bool> {
    check_dim(f.dim(), gram.dim())?;
    if !f.arity().is_multiple_of(2) || f.arity() == 0 {
        return Err(GlaError::Arity(format!("expected positive even arity, got {}", f.arity())));
    }
    let n = f.dim();
    let k = f.arity();
    let val = |args: &[usize]| -> Vec<Rational> { f.eval(args).iter().map(rational_of).collect() };

    // B(F(Y.., Y), Z) = −B(Y, F(Y.., Z)).
    let mut by_definition = true;
    'outer: for ys in tuples_sorted(n, k - 1) {
        for y in 0..n {
            let mut a = ys.clone();
            a.push(y);
            let fy = val(&a);
            for z in 0..n {
                let mut b = ys.clone();
                b.push(z);
                if gram.pair(&fy, &unit(n, z)) != -gram.pair(&unit(n, y), &val(&b)) {
                    by_definition = false;
                    break 'outer;
                }
            }
        }
    }

    // ad_{Y..} ∈ o(B): Mᵀ B + B M = 0.
    let mut by_matrix = true;
    for ys in tuples_sorted(n, k - 1) {
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|y| {
                let mut a = ys.clone();
                a.push(y);
                val(&a)
            })
            .collect();
        let m = linalg::transpose(&cols);
        let bm = linalg::mat_mul(gram.entries(), &m);
        let mtb = linalg::transpose(&bm);
        if bm.iter().zip(&mtb).any(|(r, s)| r.iter().zip(s).any(|(x, y)| !(x + y).is_zero())) {
            by_matrix = false;
            break;
        }
    }

    let by_cyclic = cohomology::is_cyclic(f, gram)?;
    if by_definition != by_matrix || by_matrix != by_cyclic {
        return Err(GlaError::Inconsistent(format!(
            "invariance criteria disagree: definition {by_definition}, o(B) {by_matrix}, cyclic {by_cyclic}"
        )));
    }
    Ok(by_definition)
}
