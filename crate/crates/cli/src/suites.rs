//! Named verification suites. Each check returns the number of instances that held, or
//! a witness for the first instance that failed.

use std::panic::{catch_unwind, AssertUnwindSafe};

use gla_core::cohomology::{
    adjoint_complex, cyclic_complex, cyclic_wedge, cyclic_wedge_explicit, invariants, is_cyclic, lie_derivative, phi,
    poisson_commutativity_check, theta_inverse, theta_map, trivial_complex, two_k_complex, InvariantSpace,
};
use gla_core::derivation::{
    ad_p_derivation, der_bracket, from_derivation, hamiltonian_potential, is_hamiltonian, is_hamiltonian_by_span,
    theta, theta_basis, to_derivation, GrassmannDerivation,
};
use gla_core::exterior::{
    clifford_star, dk_coefficient, masks_lex, moyal_star, star_commutator, super_poisson, ExteriorElement,
};
use gla_core::linalg::{nullspace, rank};
use gla_core::multilinear::{
    circ_product, gerstenhaber_bracket, iota_contract, is_2k_lie, nr_bracket, skew_symmetrize, times_product,
    trace_lift, AssociativeAlgebraDef, MultiMap, SkewMap,
};
use gla_core::quadratic::{
    bracket_from_form, elem4, elem5, elem6, gl, is_decomposable, is_elementary, is_invariant_form, reduce_center,
    sl, threeform_from_bracket, LieAlgebraDef, QuadraticSpace,
};
use gla_core::random::RandomSource;
use gla_core::scalar::{frac, rat};
use gla_core::schouten::{is_gpb, kks_bivector, schouten_bracket, v_map, PolyMultivector};
use gla_core::{GramMatrix, Rational, Scalar};
use serde_json::{json, Value};

use crate::algebra::Loaded;
use crate::report::{expect_eq, pass, skip, CheckResult, Outcome, Render, Witness};

/// Inputs shared by every check of a run.
pub struct Ctx {
    pub algebra: Option<Loaded>,
    pub n: Option<usize>,
    pub seed: u64,
}

impl Ctx {
    /// A generator seeded from the run seed and the check id, so checks are independent.
    fn rng(&self, id: &str) -> RandomSource {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in id.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        RandomSource::new(self.seed ^ h)
    }

    fn alg(&self) -> &Loaded {
        self.algebra.as_ref().expect("suite declares an algebra")
    }

    fn n_or(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }
}

type CheckFn = fn(&Ctx) -> Outcome;

pub struct Check {
    pub id: &'static str,
    pub reference: &'static str,
    run: CheckFn,
}

pub struct Suite {
    pub name: &'static str,
    /// Algebra used when `--algebra` is absent; `None` for suites that take no algebra.
    pub default_algebra: Option<&'static str>,
    /// The checks read the associative product, so a bare Lie algebra is rejected up front.
    pub needs_associative: bool,
    pub checks: Vec<Check>,
}

macro_rules! checks {
    ($(($id:literal, $reference:literal, $f:ident)),* $(,)?) => {
        vec![$(Check { id: $id, reference: $reference, run: $f }),*]
    };
}

pub const SUITES: [&str; 9] = [
    "clifford",
    "exterior",
    "standard-polynomials",
    "derivations",
    "schouten",
    "elementary-catalog",
    "quadratic-correspondence",
    "cohomology",
    "cyclic",
];

pub fn suite(name: &str) -> Option<Suite> {
    let (default_algebra, checks) = match name {
        "clifford" => (None, checks![
            ("clifford.associativity", "Clifford star product is associative", clifford_associativity),
            ("clifford.dk-symmetry", "D_k(a,b) = (-1)^(|a||b|+k) D_k(b,a)", clifford_dk_symmetry),
            ("clifford.first-order", "D_1 is half the super Poisson bracket", clifford_first_order),
            ("clifford.moyal", "Moyal exponential formula equals the Clifford star", clifford_moyal),
            ("clifford.odd-commutator", "star commutator is twice the odd part of the deformation", clifford_odd_commutator),
            ("clifford.wedge-term", "t^0 term of the star product is the wedge product", clifford_wedge_term),
        ]),
        "exterior" => (None, checks![
            ("exterior.ad-p-derivation", "ad_P(W) is a derivation of degree |W|-2", exterior_ad_p),
            ("exterior.interior-derivation", "interior product is an odd derivation", exterior_interior),
            ("exterior.interior-square", "interior product squares to zero", exterior_interior_square),
            ("exterior.poisson-antisymmetry", "super Poisson bracket is graded antisymmetric", exterior_poisson_antisymmetry),
            ("exterior.poisson-jacobi", "super Poisson bracket satisfies graded Jacobi", exterior_poisson_jacobi),
            ("exterior.wedge-associative", "wedge product is associative", exterior_wedge_associative),
            ("exterior.wedge-commutative", "wedge product is graded commutative", exterior_wedge_commutative),
        ]),
        "standard-polynomials" => (Some("gl2"), checks![
            ("sp.a-table", "bracket table of the standard polynomials A_k", sp_a_table),
            ("sp.amitsur-levitzki", "A_2m = 0 and A_(2m-1) != 0 on m x m matrices", sp_amitsur_levitzki),
            ("sp.central-contraction", "contraction with the unit kills A_2k and sends A_2k+1 to A_2k", sp_central_contraction),
            ("sp.iterated-product", "m_k is the k-fold product and the k-fold circle power of m_1", sp_iterated_product),
            ("sp.m-table", "Gerstenhaber bracket table of the iterated products m_k", sp_m_table),
            ("sp.skew-symmetrization", "skew-symmetrization intertwines Gerstenhaber and NR brackets", sp_skew_symmetrization),
            ("sp.standard-2k-lie", "A_2k defines a 2k-Lie structure", sp_two_k_lie),
            ("sp.times-product", "A_k x A_l = A_l x A_k = A_(k+l)", sp_times_product),
            ("sp.trace-commutator", "trace of a graded x-commutator vanishes", sp_trace_commutator),
            ("sp.trace-even", "Tr(A_2k) = 0", sp_trace_even),
            ("sp.trace-odd", "Tr(A_2k+1) = (2k+1) Tr(A_2k . Y)", sp_trace_odd),
            ("sp.trace-supersymmetry", "Tr(F x G) = (-1)^(pq) Tr(G x F)", sp_trace_supersymmetry),
        ]),
        "derivations" => (Some("gl2"), checks![
            ("der.chevalley-half-theta", "Chevalley differential is half the sum of w_r wedge theta_r", der_half_theta),
            ("der.differential-square", "[d, d] = 0 for the Chevalley differential", der_square),
            ("der.hamiltonian", "Chevalley differential is Hamiltonian with potential -I/2 (two criteria)", der_hamiltonian),
            ("der.homomorphism", "skew maps to derivations is a graded Lie homomorphism", der_homomorphism),
            ("der.invariant-cocycles", "invariant forms are cocycles", der_invariant_cocycles),
            ("der.leibniz", "derivations satisfy the graded Leibniz rule", der_leibniz),
            ("der.radial-not-hamiltonian", "the radial derivation is not Hamiltonian (two criteria)", der_radial),
            ("der.theta-commutator", "theta_X = [i_X, d]", der_theta_commutator),
            ("der.theta-homomorphism", "[theta_X, theta_Y] = theta_[X,Y]", der_theta_homomorphism),
        ]),
        "schouten" => (Some("gl2"), checks![
            ("schouten.antisymmetry", "Schouten bracket is graded antisymmetric", schouten_antisymmetry),
            ("schouten.biderivation", "linear Poisson bracket satisfies the Leibniz rule", schouten_biderivation),
            ("schouten.constants-commute", "constant multivectors commute", schouten_constants),
            ("schouten.jacobi", "Schouten bracket satisfies graded Jacobi", schouten_jacobi),
            ("schouten.kks-gpb", "linear Poisson bivector is a generalized Poisson bracket", schouten_kks_gpb),
            ("schouten.kks-is-v-of-differential", "V of the Chevalley differential is the linear Poisson bivector", schouten_kks_v),
            ("schouten.v-homomorphism", "V is a graded Lie homomorphism into the Schouten algebra", schouten_v_homomorphism),
        ]),
        "elementary-catalog" => (None, checks![
            ("catalog.ad-rank", "rank ad(X) <= 2 on basis vectors", catalog_ad_rank),
            ("catalog.center-isotropic", "center is totally isotropic", catalog_center_isotropic),
            ("catalog.decomposable", "associated 3-form is decomposable", catalog_decomposable),
            ("catalog.derived-dim", "dim [g,g] = 3", catalog_derived_dim),
            ("catalog.invariance", "form is invariant", catalog_invariance),
            ("catalog.jacobi", "bracket satisfies Jacobi", catalog_jacobi),
            ("catalog.reduce-center", "gl2 reduces to sl2 plus a nondegenerate central line", catalog_reduce_center),
        ]),
        "quadratic-correspondence" => (None, checks![
            ("quad.bracket-round-trip", "bracket from the 3-form of a quadratic Lie algebra is its bracket", quad_bracket_round_trip),
            ("quad.center-perp", "orthogonal of the center is the derived algebra", quad_center_perp),
            ("quad.form-round-trip", "3-form of the bracket from a 3-form is that 3-form", quad_form_round_trip),
            ("quad.poisson-jacobi", "{I,I} = 0 iff the induced bracket satisfies Jacobi", quad_poisson_jacobi),
            ("quad.reduce-center", "central reduction splits off a nondegenerate central part", quad_reduce_center),
        ]),
        "cohomology" => (Some("gl2"), checks![
            ("coh.adjoint-h0-center", "adjoint H^0 is the center", coh_adjoint_h0),
            ("coh.cyclic-h0-center", "cyclic H^0 is the center", coh_cyclic_h0),
            ("coh.cyclic-shift", "cyclic Betti b_c^k = b^(k+1) for k >= 1", coh_cyclic_shift),
            ("coh.euler", "Euler characteristic of the trivial complex", coh_euler),
            ("coh.golden", "known Betti numbers of sl2 and gl2", coh_golden),
            ("coh.invariant-commutativity", "invariant forms Poisson-commute on semisimple algebras", coh_commutativity),
            ("coh.two-k-trivial", "2k-Lie complex of the bracket is the trivial complex", coh_two_k_trivial),
        ]),
        "cyclic" => (Some("gl2"), checks![
            ("cyc.a0-table", "[A_0, F wedge A_0]_a = (n/2)(-1)^f F on gl(n)", cyc_a0_table),
            ("cyc.closure", "cyclic cochains are closed under the NR bracket (two routes)", cyc_closure),
            ("cyc.d-ad-p", "D(C) = ad_P(Phi(C))", cyc_d_ad_p),
            ("cyc.phi-lie-derivative", "Phi intertwines L_X and theta_X", cyc_phi_lie_derivative),
            ("cyc.theta-d", "Theta intertwines d and the Chevalley differential", cyc_theta_d),
            ("cyc.wedge", "cyclic wedge equals its explicit formula and is cyclic", cyc_wedge),
        ]),
        _ => return None,
    };
    Some(Suite {
        name: SUITES.iter().find(|s| **s == name).expect("listed"),
        default_algebra,
        needs_associative: name == "standard-polynomials",
        checks,
    })
}

/// Runs every check on its own thread; results come back sorted by id.
pub fn run(suite: &Suite, ctx: &Ctx) -> Vec<CheckResult> {
    let mut results: Vec<CheckResult> = std::thread::scope(|s| {
        let handles: Vec<_> = suite
            .checks
            .iter()
            .map(|c| {
                s.spawn(move || {
                    let outcome = catch_unwind(AssertUnwindSafe(|| (c.run)(ctx))).unwrap_or_else(|p| {
                        let msg = p
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_else(|| "panic".into());
                        Err(Witness { inputs: Value::Null, lhs: json!({ "panic": msg }), rhs: Value::Null })
                    });
                    CheckResult { id: c.id.to_string(), reference: c.reference.to_string(), outcome }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread")).collect()
    });
    results.sort_by(|a, b| a.id.cmp(&b.id));
    results
}

fn sign(k: i64) -> Scalar {
    Scalar::int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn basis(n: usize) -> Vec<ExteriorElement> {
    (0..1u32 << n).map(|m| ExteriorElement::basis(n, m)).collect()
}

fn homogeneous(r: &mut RandomSource, n: usize) -> (usize, ExteriorElement) {
    let w = r.index(n + 1);
    (w, r.form(n, w, 0.5))
}

fn deg(e: &ExteriorElement) -> usize {
    e.homogeneous_degree().unwrap_or(0)
}

/// Zero maps of different arity labels compare equal.
fn same_skew(a: &SkewMap, b: &SkewMap) -> bool {
    a == b || (a.is_zero() && b.is_zero())
}

fn same_der(a: &GrassmannDerivation, b: &GrassmannDerivation) -> bool {
    a == b || (a.is_zero() && b.is_zero())
}

fn expect_skew(inputs: impl FnOnce() -> Value, lhs: &SkewMap, rhs: &SkewMap) -> Result<(), Witness> {
    if same_skew(lhs, rhs) {
        Ok(())
    } else {
        Err(Witness { inputs: inputs(), lhs: lhs.render(), rhs: rhs.render() })
    }
}

fn expect_der(inputs: impl FnOnce() -> Value, lhs: &GrassmannDerivation, rhs: &GrassmannDerivation) -> Result<(), Witness> {
    if same_der(lhs, rhs) {
        Ok(())
    } else {
        Err(Witness { inputs: inputs(), lhs: lhs.render(), rhs: rhs.render() })
    }
}

fn expect_true(inputs: impl FnOnce() -> Value, what: &str, holds: bool) -> Result<(), Witness> {
    if holds {
        Ok(())
    } else {
        Err(Witness { inputs: inputs(), lhs: json!(false), rhs: json!(what) })
    }
}

fn gram_of(l: &LieAlgebraDef) -> Result<&GramMatrix, Witness> {
    Ok(l.require_gram()?)
}

// ---- clifford ----

/// Basis triples when `n ≤ 4`, otherwise seeded random homogeneous triples.
fn triples(ctx: &Ctx, id: &str, n: usize) -> Vec<[ExteriorElement; 3]> {
    if n <= 4 {
        let b = basis(n);
        let mut out = Vec::new();
        for x in &b {
            for y in &b {
                for z in &b {
                    out.push([x.clone(), y.clone(), z.clone()]);
                }
            }
        }
        out
    } else {
        let mut r = ctx.rng(id);
        (0..200).map(|_| [homogeneous(&mut r, n).1, homogeneous(&mut r, n).1, homogeneous(&mut r, n).1]).collect()
    }
}

fn pairs(ctx: &Ctx, id: &str, n: usize, exhaustive_up_to: usize) -> Vec<[ExteriorElement; 2]> {
    if n <= exhaustive_up_to {
        let b = basis(n);
        b.iter().flat_map(|x| b.iter().map(move |y| [x.clone(), y.clone()])).collect()
    } else {
        let mut r = ctx.rng(id);
        (0..200).map(|_| [homogeneous(&mut r, n).1, homogeneous(&mut r, n).1]).collect()
    }
}

fn clifford_associativity(ctx: &Ctx) -> Outcome {
    let t = triples(ctx, "clifford.associativity", ctx.n_or(4));
    for [a, b, c] in &t {
        let lhs = clifford_star(&clifford_star(a, b)?, c)?;
        let rhs = clifford_star(a, &clifford_star(b, c)?)?;
        expect_eq(|| json!([a.render(), b.render(), c.render()]), &lhs, &rhs)?;
    }
    pass(t.len())
}

fn clifford_moyal(ctx: &Ctx) -> Outcome {
    let p = pairs(ctx, "clifford.moyal", ctx.n_or(4), 6);
    for [a, b] in &p {
        expect_eq(|| json!([a.render(), b.render()]), &moyal_star(a, b)?, &clifford_star(a, b)?)?;
    }
    pass(p.len())
}

fn clifford_wedge_term(ctx: &Ctx) -> Outcome {
    let p = pairs(ctx, "clifford.wedge-term", ctx.n_or(4), 6);
    for [a, b] in &p {
        expect_eq(|| json!([a.render(), b.render()]), &clifford_star(a, b)?.t_coeff(0), &a.wedge(b)?)?;
    }
    pass(p.len())
}

fn clifford_dk_symmetry(ctx: &Ctx) -> Outcome {
    let n = ctx.n_or(4);
    let p = pairs(ctx, "clifford.dk-symmetry", n, 4);
    for [a, b] in &p {
        let (wa, wb) = (deg(a) as i64, deg(b) as i64);
        for k in 0..=n {
            let lhs = dk_coefficient(k, a, b)?;
            let rhs = dk_coefficient(k, b, a)?.scale(&sign(wa * wb + k as i64));
            expect_eq(|| json!({ "k": k, "a": a.render(), "b": b.render() }), &lhs, &rhs)?;
        }
    }
    pass(p.len())
}

fn clifford_odd_commutator(ctx: &Ctx) -> Outcome {
    let n = ctx.n_or(4);
    let p = pairs(ctx, "clifford.odd-commutator", n, 4);
    for [a, b] in &p {
        let lhs = star_commutator(a, b)?;
        let mut rhs = ExteriorElement::zero(n);
        for k in (1..=n).step_by(2) {
            rhs.add_scaled(&dk_coefficient(k, a, b)?, &Scalar::monomial(rat(2), k));
        }
        expect_eq(|| json!([a.render(), b.render()]), &lhs, &rhs)?;
    }
    pass(p.len())
}

fn clifford_first_order(ctx: &Ctx) -> Outcome {
    let n = ctx.n_or(4);
    let p = pairs(ctx, "clifford.first-order", n, 4);
    let id = GramMatrix::identity(n);
    for [a, b] in &p {
        let lhs = dk_coefficient(1, a, b)?;
        let rhs = super_poisson(a, b, &id)?.scale_rat(&frac(1, 2));
        expect_eq(|| json!([a.render(), b.render()]), &lhs, &rhs)?;
    }
    pass(p.len())
}

// ---- exterior ----

const RANDOM_INSTANCES: usize = 40;

fn exterior_wedge_associative(ctx: &Ctx) -> Outcome {
    let t = triples(ctx, "exterior.wedge-associative", ctx.n_or(4));
    for [a, b, c] in &t {
        let lhs = a.wedge(b)?.wedge(c)?;
        let rhs = a.wedge(&b.wedge(c)?)?;
        expect_eq(|| json!([a.render(), b.render(), c.render()]), &lhs, &rhs)?;
    }
    pass(t.len())
}

fn exterior_wedge_commutative(ctx: &Ctx) -> Outcome {
    let p = pairs(ctx, "exterior.wedge-commutative", ctx.n_or(4), 5);
    for [a, b] in &p {
        let s = sign((deg(a) * deg(b)) as i64);
        expect_eq(|| json!([a.render(), b.render()]), &a.wedge(b)?, &b.wedge(a)?.scale(&s))?;
    }
    pass(p.len())
}

fn exterior_interior(ctx: &Ctx) -> Outcome {
    let n = ctx.n_or(4);
    let mut r = ctx.rng("exterior.interior-derivation");
    for _ in 0..RANDOM_INSTANCES {
        let x = r.vector(n);
        let (wa, a) = homogeneous(&mut r, n);
        let (_, b) = homogeneous(&mut r, n);
        let lhs = a.wedge(&b)?.interior_vec(&x)?;
        let mut rhs = a.interior_vec(&x)?.wedge(&b)?;
        rhs.add_scaled(&a.wedge(&b.interior_vec(&x)?)?, &sign(wa as i64));
        expect_eq(|| json!({ "x": x.render(), "a": a.render(), "b": b.render() }), &lhs, &rhs)?;
    }
    pass(RANDOM_INSTANCES)
}

fn exterior_interior_square(ctx: &Ctx) -> Outcome {
    let n = ctx.n_or(4);
    let mut r = ctx.rng("exterior.interior-square");
    for _ in 0..RANDOM_INSTANCES {
        let x = r.vector(n);
        let w = r.index(n + 1);
        let a = r.form(n, w, 0.6);
        let lhs = a.interior_vec(&x)?.interior_vec(&x)?;
        expect_eq(|| json!({ "x": x.render(), "a": a.render() }), &lhs, &ExteriorElement::zero(n))?;
    }
    pass(RANDOM_INSTANCES)
}

fn exterior_poisson_antisymmetry(ctx: &Ctx) -> Outcome {
    let n = ctx.n_or(4);
    let mut r = ctx.rng("exterior.poisson-antisymmetry");
    for _ in 0..RANDOM_INSTANCES {
        let g = r.gram(n);
        let (wa, a) = homogeneous(&mut r, n);
        let (wb, b) = homogeneous(&mut r, n);
        let lhs = super_poisson(&a, &b, &g)?;
        let rhs = super_poisson(&b, &a, &g)?.scale(&sign((wa * wb) as i64 + 1));
        expect_eq(|| json!({ "gram": g.to_json(), "a": a.render(), "b": b.render() }), &lhs, &rhs)?;
    }
    pass(RANDOM_INSTANCES)
}

fn exterior_poisson_jacobi(ctx: &Ctx) -> Outcome {
    let n = ctx.n_or(4);
    let mut r = ctx.rng("exterior.poisson-jacobi");
    for _ in 0..RANDOM_INSTANCES {
        let g = r.gram(n);
        let (wa, a) = homogeneous(&mut r, n);
        let (wb, b) = homogeneous(&mut r, n);
        let (_, c) = homogeneous(&mut r, n);
        let lhs = super_poisson(&a, &super_poisson(&b, &c, &g)?, &g)?;
        let mut rhs = super_poisson(&super_poisson(&a, &b, &g)?, &c, &g)?;
        rhs.add_scaled(&super_poisson(&b, &super_poisson(&a, &c, &g)?, &g)?, &sign((wa * wb) as i64));
        expect_eq(
            || json!({ "gram": g.to_json(), "a": a.render(), "b": b.render(), "c": c.render() }),
            &lhs,
            &rhs,
        )?;
    }
    pass(RANDOM_INSTANCES)
}

fn exterior_ad_p(ctx: &Ctx) -> Outcome {
    let n = ctx.n_or(4);
    let mut r = ctx.rng("exterior.ad-p-derivation");
    for _ in 0..RANDOM_INSTANCES {
        let g = r.gram(n);
        let (wo, o) = homogeneous(&mut r, n);
        let (wa, a) = homogeneous(&mut r, n);
        let (_, b) = homogeneous(&mut r, n);
        let lhs = super_poisson(&o, &a.wedge(&b)?, &g)?;
        let mut rhs = super_poisson(&o, &a, &g)?.wedge(&b)?;
        rhs.add_scaled(&a.wedge(&super_poisson(&o, &b, &g)?)?, &sign((wo * wa) as i64));
        expect_eq(
            || json!({ "gram": g.to_json(), "omega": o.render(), "a": a.render(), "b": b.render() }),
            &lhs,
            &rhs,
        )?;
    }
    pass(RANDOM_INSTANCES)
}

// ---- standard polynomials ----

/// Largest arity of a bracket in the m_k / A_k tables.
const TABLE_ARITY: usize = 5;

/// Graded-antisymmetry sign `−(−1)^{pq}` for shifted degrees.
fn swap_sign(a: usize, b: usize) -> i64 {
    let (p, q) = (a as i64 - 1, b as i64 - 1);
    if (p * q).rem_euclid(2) == 0 {
        -1
    } else {
        1
    }
}

/// `c` with `[X_a, X_b] = c X_{a+b−1}` in the m_k and A_k tables, or `None` for zero.
fn table_coefficient(a: usize, b: usize) -> Option<i64> {
    match (a % 2, b % 2) {
        (0, 0) => None,
        (0, 1) => Some(a as i64 - 1),
        (1, 1) => Some(a as i64 - b as i64),
        _ => table_coefficient(b, a).map(|c| c * swap_sign(a, b)),
    }
}

fn table_pairs(alg: &AssociativeAlgebraDef) -> Vec<(usize, usize)> {
    let lo = if alg.unit().is_some() { 0 } else { 1 };
    let mut out = Vec::new();
    for a in lo..=TABLE_ARITY {
        for b in lo..=TABLE_ARITY {
            if a + b >= 1 && a + b - 1 <= TABLE_ARITY {
                out.push((a, b));
            }
        }
    }
    out
}

fn sp_m_table(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    let lo = if alg.unit().is_some() { 0 } else { 1 };
    let ms: Vec<MultiMap> = (0..=TABLE_ARITY)
        .map(|k| if k < lo { Ok(MultiMap::zero(alg.dim(), 0)) } else { alg.iterated_product(k) })
        .collect::<Result<_, _>>()?;
    let pairs = table_pairs(alg);
    for &(a, b) in &pairs {
        let t = a + b - 1;
        let lhs = gerstenhaber_bracket(&ms[a], &ms[b])?;
        let rhs = match table_coefficient(a, b) {
            None => MultiMap::zero(alg.dim(), t),
            Some(c) => ms[t].scale(&Scalar::int(c)),
        };
        expect_eq(|| json!({ "a": a, "b": b }), &lhs, &rhs)?;
    }
    pass(pairs.len())
}

fn standard_polynomials(alg: &AssociativeAlgebraDef, top: usize) -> Result<Vec<SkewMap>, Witness> {
    let lo = if alg.unit().is_some() { 0 } else { 1 };
    Ok((0..=top)
        .map(|k| if k < lo { Ok(SkewMap::zero(alg.dim(), 0)) } else { alg.standard_polynomial(k) })
        .collect::<Result<_, _>>()?)
}

fn sp_a_table(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    let as_ = standard_polynomials(alg, TABLE_ARITY)?;
    let pairs = table_pairs(alg);
    for &(a, b) in &pairs {
        let t = a + b - 1;
        let lhs = nr_bracket(&as_[a], &as_[b])?;
        let rhs = match table_coefficient(a, b) {
            None => SkewMap::zero(alg.dim(), t),
            Some(c) => as_[t].scale(&Scalar::int(c)),
        };
        expect_eq(|| json!({ "a": a, "b": b }), &lhs, &rhs)?;
    }
    pass(pairs.len())
}

fn precondition(msg: String) -> Witness {
    Witness { inputs: Value::Null, lhs: json!({ "error": msg }), rhs: Value::Null }
}

fn sp_iterated_product(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    let n = alg.dim();
    let m1 = alg.iterated_product(1)?;
    let mut power = m1.clone();
    let mut count = 0;
    for k in 2..=4 {
        power = circ_product(&power, &m1, alg)?;
        expect_eq(|| json!({ "k": k }), &power, &alg.iterated_product(k)?)?;
        count += 1;
    }
    let unit = |i: usize| -> Vec<Rational> { (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect() };
    for k in 1..=3usize {
        let mk = alg.iterated_product(k)?;
        for code in 0..n.pow(k as u32) {
            let idx: Vec<usize> = (0..k).map(|p| code / n.pow(p as u32) % n).collect();
            let mut prod = unit(idx[0]);
            for &i in &idx[1..] {
                prod = alg.mul(&prod, &unit(i));
            }
            let want: Vec<Scalar> = prod.into_iter().map(Scalar::Rat).collect();
            expect_eq(|| json!({ "k": k, "inputs": idx.iter().map(|i| i + 1).collect::<Vec<_>>() }), &mk.eval(&idx), &want)?;
            count += 1;
        }
    }
    pass(count)
}

fn sp_skew_symmetrization(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    let mut count = 0;
    for a in 1..=3usize {
        for b in 1..=3usize {
            if a + b - 1 > 4 {
                continue;
            }
            let (ma, mb) = (alg.iterated_product(a)?, alg.iterated_product(b)?);
            let lhs = skew_symmetrize(&gerstenhaber_bracket(&ma, &mb)?);
            let rhs = nr_bracket(&skew_symmetrize(&ma), &skew_symmetrize(&mb))?;
            expect_skew(|| json!({ "a": a, "b": b }), &lhs, &rhs)?;
            count += 1;
        }
    }
    let mut r = ctx.rng("sp.skew-symmetrization");
    let n = alg.dim();
    for _ in 0..10 {
        let (p, q) = (r.index(3), r.index(3));
        let f = r.multimap(n, p, 0.2);
        let g = r.multimap(n, q, 0.2);
        let lhs = skew_symmetrize(&gerstenhaber_bracket(&f, &g)?);
        let rhs = nr_bracket(&skew_symmetrize(&f), &skew_symmetrize(&g))?;
        expect_skew(|| json!({ "f": f.render(), "g": g.render() }), &lhs, &rhs)?;
        count += 1;
    }
    pass(count)
}

fn sp_times_product(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    let as_ = standard_polynomials(alg, 4)?;
    let mut count = 0;
    for k in 1..=3usize {
        for l in 1..=4 - k {
            let kl = times_product(&as_[k], &as_[l], alg)?;
            expect_eq(|| json!({ "k": k, "l": l }), &kl, &as_[k + l])?;
            expect_eq(|| json!({ "k": l, "l": k }), &times_product(&as_[l], &as_[k], alg)?, &as_[k + l])?;
            count += 2;
        }
    }
    pass(count)
}

fn sp_central_contraction(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    let Some(z) = alg.unit() else {
        return skip("the algebra has no unit");
    };
    let as_ = standard_polynomials(alg, 5)?;
    let mut count = 0;
    for k in 1..=5usize {
        let lhs = iota_contract(z, &as_[k])?;
        let rhs = if k % 2 == 0 { SkewMap::zero(alg.dim(), k - 1) } else { as_[k - 1].clone() };
        expect_skew(|| json!({ "k": k }), &lhs, &rhs)?;
        count += 1;
    }
    pass(count)
}

fn sp_amitsur_levitzki(ctx: &Ctx) -> Outcome {
    let loaded = ctx.alg();
    let (Some(m), Ok(alg)) = (loaded.matrix_size, loaded.require_assoc()) else {
        return skip("not a full matrix algebra");
    };
    if m > 3 {
        return skip("matrix size above 3");
    }
    let vanishing = alg.standard_polynomial(2 * m)?;
    expect_skew(|| json!({ "k": 2 * m }), &vanishing, &SkewMap::zero(alg.dim(), 2 * m))?;
    let below = alg.standard_polynomial(2 * m - 1)?;
    expect_true(|| json!({ "k": 2 * m - 1 }), "A_(2m-1) nonzero", !below.is_zero())?;
    pass(2)
}

fn sp_two_k_lie(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    let top = if alg.dim() <= 4 { 4 } else { 2 };
    let mut count = 0;
    for k in (2..=top).step_by(2) {
        let a = alg.standard_polynomial(k)?;
        expect_true(|| json!({ "k": k }), "[A_k, A_k]_a = 0", is_2k_lie(&a)?)?;
        count += 1;
    }
    pass(count)
}

fn require_trace(alg: &AssociativeAlgebraDef) -> Result<&[Rational], Outcome> {
    alg.trace().ok_or_else(|| skip("the algebra has no trace"))
}

fn sp_trace_commutator(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    if let Err(o) = require_trace(alg) {
        return o;
    }
    let n = alg.dim();
    let mut r = ctx.rng("sp.trace-commutator");
    for _ in 0..20 {
        let (p, q) = (r.index(3), r.index(3));
        let f = r.skew_map(n, p, 0.2);
        let g = r.skew_map(n, q, 0.2);
        let fg = times_product(&f, &g, alg)?;
        let gf = times_product(&g, &f, alg)?;
        let br = fg.sub(&gf.scale(&sign((p * q) as i64)))?;
        expect_eq(|| json!({ "f": f.render(), "g": g.render() }), &trace_lift(&br, alg)?, &ExteriorElement::zero(n))?;
    }
    pass(20)
}

fn sp_trace_supersymmetry(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    if let Err(o) = require_trace(alg) {
        return o;
    }
    let n = alg.dim();
    let mut r = ctx.rng("sp.trace-supersymmetry");
    for _ in 0..20 {
        let (p, q) = (r.index(3), r.index(3));
        let f = r.skew_map(n, p, 0.2);
        let g = r.skew_map(n, q, 0.2);
        let lhs = trace_lift(&times_product(&f, &g, alg)?, alg)?;
        let rhs = trace_lift(&times_product(&g, &f, alg)?, alg)?.scale(&sign((p * q) as i64));
        expect_eq(|| json!({ "f": f.render(), "g": g.render() }), &lhs, &rhs)?;
    }
    pass(20)
}

fn sp_trace_even(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    if let Err(o) = require_trace(alg) {
        return o;
    }
    for k in 1..=2usize {
        let a = alg.standard_polynomial(2 * k)?;
        expect_eq(|| json!({ "k": 2 * k }), &trace_lift(&a, alg)?, &ExteriorElement::zero(alg.dim()))?;
    }
    pass(2)
}

fn trace_of(tau: &[Rational], v: &[Rational]) -> Rational {
    v.iter().zip(tau).map(|(x, t)| x * t).sum()
}

fn ordered_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..n).filter(|i| !t.contains(i)).map(|i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn sp_trace_odd(ctx: &Ctx) -> Outcome {
    let alg = ctx.alg().require_assoc().map_err(precondition)?;
    let tau = match require_trace(alg) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let n = alg.dim();
    let rational = |s: &Scalar| s.as_rational().cloned().unwrap_or_default();
    let mut count = 0;
    for k in 1..=2usize {
        if 2 * k + 1 > n {
            break;
        }
        let odd = alg.standard_polynomial(2 * k + 1)?;
        let even = alg.standard_polynomial(2 * k)?;
        for t in ordered_tuples(n, 2 * k + 1) {
            let lhs = trace_of(tau, &odd.eval(&t).iter().map(rational).collect::<Vec<_>>());
            let v: Vec<Rational> = even.eval(&t[..2 * k]).iter().map(rational).collect();
            let mut y = vec![rat(0); n];
            y[t[2 * k]] = rat(1);
            let rhs = trace_of(tau, &alg.mul(&v, &y)) * rat((2 * k + 1) as i64);
            expect_eq(|| json!({ "k": k, "inputs": t.iter().map(|i| i + 1).collect::<Vec<_>>() }), &lhs, &rhs)?;
            count += 1;
        }
    }
    pass(count)
}

// ---- derivations ----

fn der_homomorphism(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("der.homomorphism");
    for _ in 0..RANDOM_INSTANCES {
        let n = ctx.n.unwrap_or(2 + r.index(3));
        let (p, q) = (r.index(4), r.index(4));
        let f = r.skew_map(n, p, 0.4);
        let g = r.skew_map(n, q, 0.4);
        let lhs = to_derivation(&nr_bracket(&f, &g)?);
        let rhs = der_bracket(&to_derivation(&f), &to_derivation(&g))?;
        expect_der(|| json!({ "f": f.render(), "g": g.render() }), &lhs, &rhs)?;
    }
    pass(RANDOM_INSTANCES)
}

fn der_half_theta(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let n = l.dim();
    let del = to_derivation(l.bracket());
    let thetas: Vec<GrassmannDerivation> = (0..n).map(|i| theta_basis(l.bracket(), i)).collect();
    let max_deg = if n <= 8 { n } else { 3 };
    let mut count = 0;
    for k in 0..=max_deg {
        for m in masks_lex(n, k) {
            let x = ExteriorElement::basis(n, m);
            let mut rhs = ExteriorElement::zero(n);
            for (r, th) in thetas.iter().enumerate() {
                let term = ExteriorElement::generator(n, r).wedge(&th.apply(&x)?)?;
                rhs.add_scaled(&term, &Scalar::Rat(frac(1, 2)));
            }
            expect_eq(|| json!({ "x": x.render() }), &del.apply(&x)?, &rhs)?;
            count += 1;
        }
    }
    pass(count)
}

fn der_square(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let del = to_derivation(l.bracket());
    expect_der(|| json!({}), &der_bracket(&del, &del)?, &GrassmannDerivation::zero(l.dim(), 2))?;
    pass(1)
}

fn der_theta_commutator(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let n = l.dim();
    let del = to_derivation(l.bracket());
    for i in 0..n {
        let mut x = vec![rat(0); n];
        x[i] = rat(1);
        let lhs = theta_basis(l.bracket(), i);
        let rhs = der_bracket(&GrassmannDerivation::interior(&x), &del)?;
        expect_der(|| json!({ "x": x.render() }), &lhs, &rhs)?;
    }
    pass(n)
}

fn der_theta_homomorphism(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let mut r = ctx.rng("der.theta-homomorphism");
    for _ in 0..10 {
        let x = r.vector(l.dim());
        let y = r.vector(l.dim());
        let lhs = der_bracket(&theta(l.bracket(), &x)?, &theta(l.bracket(), &y)?)?;
        let rhs = theta(l.bracket(), &l.bracket_vec(&x, &y))?;
        expect_der(|| json!({ "x": x.render(), "y": y.render() }), &lhs, &rhs)?;
    }
    pass(10)
}

fn der_invariant_cocycles(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let n = l.dim();
    let del = to_derivation(l.bracket());
    let mut count = 0;
    for (k, basis) in invariants(l, InvariantSpace::Exterior)?.iter().enumerate() {
        let masks = masks_lex(n, k);
        for v in basis {
            let omega = ExteriorElement::from_coords(n, &masks, v);
            expect_eq(|| json!({ "invariant": omega.render() }), &del.apply(&omega)?, &ExteriorElement::zero(n))?;
            count += 1;
        }
    }
    pass(count)
}

fn der_hamiltonian(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let Some(g) = l.gram() else {
        return skip("the algebra has no invariant form");
    };
    let del = to_derivation(l.bracket());
    expect_true(|| json!({}), "Hamiltonian by the contraction criterion", is_hamiltonian(&del, g)?)?;
    expect_true(|| json!({}), "Hamiltonian by span membership", is_hamiltonian_by_span(&del, g)?)?;
    let omega = hamiltonian_potential(&del, g)?;
    expect_der(|| json!({ "potential": omega.render() }), &ad_p_derivation(&omega, g)?, &del)?;
    let i = threeform_from_bracket(l)?;
    expect_eq(|| json!({ "I": i.render() }), &omega, &i.scale_rat(&frac(-1, 2)))?;
    pass(4)
}

fn der_radial(ctx: &Ctx) -> Outcome {
    let n = ctx.algebra.as_ref().map_or(ctx.n_or(3), Loaded::dim);
    let d = GrassmannDerivation::radial(n);
    let mut r = ctx.rng("der.radial-not-hamiltonian");
    for _ in 0..5 {
        let g = r.gram(n);
        expect_true(|| json!({ "gram": g.to_json() }), "not Hamiltonian (contraction)", !is_hamiltonian(&d, &g)?)?;
        expect_true(|| json!({ "gram": g.to_json() }), "not Hamiltonian (span)", !is_hamiltonian_by_span(&d, &g)?)?;
    }
    pass(5)
}

fn der_leibniz(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("der.leibniz");
    for _ in 0..RANDOM_INSTANCES {
        let n = ctx.n.unwrap_or(2 + r.index(4));
        let d = r.index(n + 1) as i64 - 1;
        let der = r.derivation(n, d, 0.4);
        let (wa, a) = homogeneous(&mut r, n);
        let (_, b) = homogeneous(&mut r, n);
        let lhs = der.apply(&a.wedge(&b)?)?;
        let mut rhs = der.apply(&a)?.wedge(&b)?;
        rhs.add_scaled(&a.wedge(&der.apply(&b)?)?, &sign(d * wa as i64));
        expect_eq(|| json!({ "d": der.render(), "a": a.render(), "b": b.render() }), &lhs, &rhs)?;
    }
    pass(RANDOM_INSTANCES)
}

// ---- schouten ----

fn expect_mv(inputs: impl FnOnce() -> Value, lhs: &PolyMultivector, rhs: &PolyMultivector) -> Result<(), Witness> {
    if lhs == rhs || (lhs.is_zero() && rhs.is_zero()) {
        Ok(())
    } else {
        Err(Witness { inputs: inputs(), lhs: lhs.render(), rhs: rhs.render() })
    }
}

fn schouten_v_homomorphism(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("schouten.v-homomorphism");
    for _ in 0..RANDOM_INSTANCES {
        let n = ctx.n.unwrap_or(1 + r.index(3));
        let (p, q) = (r.index(4), r.index(4));
        let df = to_derivation(&r.skew_map(n, p, 0.5));
        let dg = to_derivation(&r.skew_map(n, q, 0.5));
        let lhs = v_map(&der_bracket(&df, &dg)?);
        let rhs = schouten_bracket(&v_map(&df), &v_map(&dg))?;
        expect_mv(|| json!({ "d1": df.render(), "d2": dg.render() }), &lhs, &rhs)?;
    }
    pass(RANDOM_INSTANCES)
}

fn random_multivectors(r: &mut RandomSource, ctx: &Ctx) -> (PolyMultivector, PolyMultivector) {
    let n = ctx.n.unwrap_or(1 + r.index(3));
    let (da, db) = (1 + r.index(n), 1 + r.index(n));
    (r.multivector(n, da, 2, 2), r.multivector(n, db, 2, 2))
}

fn schouten_antisymmetry(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("schouten.antisymmetry");
    for _ in 0..RANDOM_INSTANCES {
        let (a, b) = random_multivectors(&mut r, ctx);
        let (p, q) = (a.degree() as i64 - 1, b.degree() as i64 - 1);
        let lhs = schouten_bracket(&a, &b)?;
        let rhs = schouten_bracket(&b, &a)?.scale(&sign(p * q + 1));
        expect_mv(|| json!({ "a": a.render(), "b": b.render() }), &lhs, &rhs)?;
    }
    pass(RANDOM_INSTANCES)
}

fn schouten_jacobi(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("schouten.jacobi");
    let instances = 20;
    for _ in 0..instances {
        let n = ctx.n.unwrap_or(1 + r.index(3));
        let degs: Vec<usize> = (0..3).map(|_| 1 + r.index(n.min(2))).collect();
        let a = r.multivector(n, degs[0], 1, 2);
        let b = r.multivector(n, degs[1], 1, 2);
        let c = r.multivector(n, degs[2], 1, 2);
        let (p, q) = (degs[0] as i64 - 1, degs[1] as i64 - 1);
        let lhs = schouten_bracket(&a, &schouten_bracket(&b, &c)?)?;
        let x = schouten_bracket(&schouten_bracket(&a, &b)?, &c)?;
        let y = schouten_bracket(&b, &schouten_bracket(&a, &c)?)?.scale(&sign(p * q));
        let rhs = match (x.is_zero(), y.is_zero()) {
            (true, _) => y,
            (_, true) => x,
            _ => x.add(&y)?,
        };
        expect_mv(|| json!({ "a": a.render(), "b": b.render(), "c": c.render() }), &lhs, &rhs)?;
    }
    pass(instances)
}

fn schouten_constants(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("schouten.constants-commute");
    for _ in 0..RANDOM_INSTANCES {
        let n = ctx.n.unwrap_or(1 + r.index(4));
        let (da, db) = (1 + r.index(n), 1 + r.index(n));
        let a = r.multivector(n, da, 0, 3);
        let b = r.multivector(n, db, 0, 3);
        let br = schouten_bracket(&a, &b)?;
        expect_mv(|| json!({ "a": a.render(), "b": b.render() }), &br, &PolyMultivector::zero(n, da + db - 1))?;
    }
    pass(RANDOM_INSTANCES)
}

fn schouten_kks_gpb(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let w = kks_bivector(l);
    expect_true(|| json!({ "w": w.render() }), "[W, W]_S = 0", is_gpb(&w)?)?;
    pass(1)
}

fn schouten_kks_v(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    expect_mv(|| json!({}), &v_map(&to_derivation(l.bracket())), &kks_bivector(l))?;
    pass(1)
}

fn schouten_biderivation(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let w = kks_bivector(l);
    let n = l.dim();
    let mut r = ctx.rng("schouten.biderivation");
    for _ in 0..10 {
        let f = r.polynomial(n, 2, 3);
        let g = r.polynomial(n, 2, 3);
        let h = r.polynomial(n, 2, 3);
        let lhs = w.apply(&[f.mul(&g), h.clone()])?;
        let rhs = f.mul(&w.apply(&[g.clone(), h.clone()])?).add(&g.mul(&w.apply(&[f.clone(), h.clone()])?));
        expect_eq(|| json!({ "f": f.render(), "g": g.render(), "h": h.render() }), &lhs, &rhs)?;
    }
    pass(10)
}

// ---- elementary catalog ----

fn catalog_algebras() -> Vec<(&'static str, LieAlgebraDef)> {
    vec![("elem4", elem4()), ("elem5", elem5()), ("elem6", elem6()), ("sl2", sl(2))]
}

fn catalog_jacobi(_: &Ctx) -> Outcome {
    for (name, l) in catalog_algebras() {
        expect_true(|| json!({ "algebra": name }), "Jacobi", is_2k_lie(l.bracket())?)?;
    }
    pass(4)
}

fn catalog_invariance(_: &Ctx) -> Outcome {
    for (name, l) in catalog_algebras() {
        expect_true(|| json!({ "algebra": name }), "B-invariance", is_invariant_form(l.bracket(), gram_of(&l)?)?)?;
    }
    pass(4)
}

fn catalog_derived_dim(_: &Ctx) -> Outcome {
    for (name, l) in catalog_algebras() {
        expect_eq(|| json!({ "algebra": name }), &l.derived().len(), &3)?;
        expect_true(|| json!({ "algebra": name }), "elementary", is_elementary(&l)?)?;
    }
    pass(4)
}

fn catalog_decomposable(_: &Ctx) -> Outcome {
    for (name, l) in catalog_algebras() {
        let (dec, _) = is_decomposable(&threeform_from_bracket(&l)?)?;
        expect_true(|| json!({ "algebra": name }), "I decomposable", dec)?;
    }
    pass(4)
}

fn catalog_center_isotropic(_: &Ctx) -> Outcome {
    let mut count = 0;
    for (name, l) in catalog_algebras() {
        let g = gram_of(&l)?;
        let z = l.center();
        for x in &z {
            for y in &z {
                expect_eq(|| json!({ "algebra": name, "x": x.render(), "y": y.render() }), &g.pair(x, y), &rat(0))?;
                count += 1;
            }
        }
    }
    pass(count)
}

fn catalog_ad_rank(_: &Ctx) -> Outcome {
    let mut count = 0;
    for (name, l) in catalog_algebras() {
        for i in 0..l.dim() {
            let mut x = vec![rat(0); l.dim()];
            x[i] = rat(1);
            let rk = rank(&l.ad_matrix(&x));
            expect_true(|| json!({ "algebra": name, "x": x.render(), "rank": rk }), "rank <= 2", rk <= 2)?;
            count += 1;
        }
    }
    pass(count)
}

fn catalog_reduce_center(_: &Ctx) -> Outcome {
    let red = reduce_center(&gl(2))?;
    expect_eq(|| json!({ "part": "l" }), &red.l.dim(), &3)?;
    expect_true(|| json!({ "part": "l" }), "semisimple", red.l.is_semisimple())?;
    expect_eq(|| json!({ "part": "z" }), &red.z.len(), &1)?;
    expect_true(|| json!({ "part": "z" }), "nondegenerate", red.z_gram.is_some())?;
    pass(1)
}

// ---- quadratic correspondence ----

fn random_threeform(r: &mut RandomSource, n: usize) -> Result<gla_core::ExteriorElement, Witness> {
    Ok(if r.index(3) == 0 {
        let mut w = ExteriorElement::one(n);
        for _ in 0..3 {
            w = w.wedge(&r.form(n, 1, 0.7))?;
        }
        w
    } else {
        r.form(n, 3, 0.4)
    })
}

const QUADRATIC_INSTANCES: usize = 60;

fn quad_poisson_jacobi(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("quad.poisson-jacobi");
    for _ in 0..QUADRATIC_INSTANCES {
        let n = 3 + r.index(3);
        let gram = r.gram(n);
        let i = random_threeform(&mut r, n)?;
        let f = bracket_from_form(&i, &QuadraticSpace::new(gram.clone()))?;
        let poisson_zero = super_poisson(&i, &i, &gram)?.is_zero();
        let jacobi = is_2k_lie(&f)?;
        expect_eq(|| json!({ "gram": gram.to_json(), "I": i.render() }), &poisson_zero, &jacobi)?;
    }
    pass(QUADRATIC_INSTANCES)
}

fn quad_form_round_trip(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("quad.form-round-trip");
    for _ in 0..QUADRATIC_INSTANCES {
        let n = 3 + r.index(3);
        let gram = r.gram(n);
        let i = random_threeform(&mut r, n)?;
        let f = bracket_from_form(&i, &QuadraticSpace::new(gram.clone()))?;
        expect_eq(|| json!({ "gram": gram.to_json(), "I": i.render() }), &theta_map(&f, &gram)?, &i)?;
        if is_2k_lie(&f)? {
            let l = LieAlgebraDef::new(f, Some(gram.clone()))?;
            expect_eq(|| json!({ "gram": gram.to_json(), "I": i.render() }), &threeform_from_bracket(&l)?, &i)?;
        }
    }
    pass(QUADRATIC_INSTANCES)
}

fn quadratic_examples(ctx: &Ctx) -> Vec<(String, LieAlgebraDef)> {
    let mut out: Vec<(String, LieAlgebraDef)> = vec![("sl2".into(), sl(2)), ("gl2".into(), gl(2)), ("sl3".into(), sl(3))];
    out.extend(catalog_algebras().into_iter().take(3).map(|(n, l)| (n.to_string(), l)));
    if let Some(a) = &ctx.algebra {
        if a.lie.gram().is_some() {
            out.push((a.name.clone(), a.lie.clone()));
        }
    }
    out
}

fn quad_bracket_round_trip(ctx: &Ctx) -> Outcome {
    let ex = quadratic_examples(ctx);
    for (name, l) in &ex {
        let g = gram_of(l)?;
        let f = bracket_from_form(&threeform_from_bracket(l)?, &QuadraticSpace::new(g.clone()))?;
        expect_eq(|| json!({ "algebra": name }), &f, l.bracket())?;
    }
    pass(ex.len())
}

fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == rb && (both.is_empty() || rank(&both) == ra)
}

fn quad_center_perp(ctx: &Ctx) -> Outcome {
    let ex = quadratic_examples(ctx);
    for (name, l) in &ex {
        let g = gram_of(l)?;
        let flats: Vec<Vec<Rational>> = l.center().iter().map(|z| g.flat(z)).collect();
        let perp = if flats.is_empty() {
            (0..l.dim()).map(|i| (0..l.dim()).map(|j| rat(i64::from(i == j))).collect()).collect()
        } else {
            nullspace(&flats, l.dim())
        };
        let derived = l.derived();
        if !same_span(&perp, &derived) {
            return Err(Witness { inputs: json!({ "algebra": name }), lhs: perp.render(), rhs: derived.render() });
        }
    }
    pass(ex.len())
}

fn quad_reduce_center(ctx: &Ctx) -> Outcome {
    let ex: Vec<(String, LieAlgebraDef)> =
        quadratic_examples(ctx).into_iter().filter(|(_, l)| !l.is_abelian()).collect();
    for (name, l) in &ex {
        let red = reduce_center(l)?;
        let g = gram_of(l)?;
        let total = red.z.len() + red.l.dim();
        expect_eq(|| json!({ "algebra": name, "part": "dimension" }), &total, &l.dim())?;
        for z in &red.z {
            for y in &red.l_basis {
                expect_eq(|| json!({ "algebra": name, "z": z.render(), "y": y.render() }), &g.pair(z, y), &rat(0))?;
            }
        }
    }
    pass(ex.len())
}

// ---- cohomology ----

fn coh_golden(ctx: &Ctx) -> Outcome {
    let a = ctx.alg();
    let (trivial, cyclic): (Vec<usize>, Vec<usize>) = match a.name.as_str() {
        "sl2" => (vec![1, 0, 0, 1], vec![0, 0, 1]),
        "gl2" => (vec![1, 1, 0, 1, 1], vec![1, 0, 1, 1]),
        _ => return skip("no recorded values for this algebra"),
    };
    let l = &a.lie;
    expect_eq(|| json!({ "complex": "trivial" }), &trivial_complex(l)?.betti().numbers(), &trivial)?;
    expect_eq(|| json!({ "complex": "cyclic" }), &cyclic_complex(l, l.dim())?.betti().numbers(), &cyclic)?;
    pass(2)
}

fn coh_euler(ctx: &Ctx) -> Outcome {
    let t = trivial_complex(&ctx.alg().lie)?.betti();
    expect_eq(|| json!({ "betti": t.numbers() }), &t.euler_consistent(), &Some(true))?;
    pass(1)
}

fn coh_two_k_trivial(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let a = trivial_complex(l)?.betti().numbers();
    let b = two_k_complex(l.bracket())?.betti().numbers();
    expect_eq(|| json!({}), &b, &a)?;
    pass(1)
}

fn coh_adjoint_h0(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    let t = adjoint_complex(l, 1)?.betti();
    expect_eq(|| json!({}), &t.rows[0].betti, &Some(l.center().len()))?;
    pass(1)
}

fn cyclic_numbers(l: &LieAlgebraDef) -> Result<Vec<usize>, Witness> {
    Ok(cyclic_complex(l, l.dim())?.betti().numbers())
}

fn coh_cyclic_h0(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    if l.gram().is_none() {
        return skip("the algebra has no invariant form");
    }
    let t = cyclic_complex(l, 1)?.betti();
    expect_eq(|| json!({}), &t.rows[0].betti, &Some(l.center().len()))?;
    pass(1)
}

fn coh_cyclic_shift(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    if l.gram().is_none() {
        return skip("the algebra has no invariant form");
    }
    let b = trivial_complex(l)?.betti().numbers();
    let c = cyclic_numbers(l)?;
    for k in 1..c.len() {
        expect_eq(|| json!({ "k": k, "trivial": b, "cyclic": c }), &c[k], &b[k + 1])?;
    }
    pass(c.len().saturating_sub(1))
}

fn coh_commutativity(ctx: &Ctx) -> Outcome {
    let l = &ctx.alg().lie;
    if !l.is_semisimple() {
        return skip("the algebra is not semisimple");
    }
    let rep = poisson_commutativity_check(l)?;
    if let Some((k1, j1, k2, j2)) = rep.failures.first() {
        return Err(Witness {
            inputs: json!({ "first": { "degree": k1, "index": j1 }, "second": { "degree": k2, "index": j2 } }),
            lhs: json!("nonzero bracket"),
            rhs: json!("0"),
        });
    }
    pass(rep.pairs_checked)
}

// ---- cyclic ----

const CYCLIC_INSTANCES: usize = 40;

fn random_cyclic(r: &mut RandomSource, gram: &GramMatrix, max_arity: usize) -> Result<SkewMap, Witness> {
    let n = gram.dim();
    loop {
        let k = r.index(max_arity.min(n - 1) + 1);
        let w = r.form(n, k + 1, 0.6);
        if !w.is_zero() {
            return Ok(theta_inverse(&w, gram)?);
        }
    }
}

/// The loaded algebra when it carries a form, else seeded random quadratic algebras.
fn cyclic_algebra(ctx: &Ctx, r: &mut RandomSource) -> LieAlgebraDef {
    match &ctx.algebra {
        Some(a) if a.lie.gram().is_some() && r.index(2) == 0 => a.lie.clone(),
        _ => r.quadratic_lie_algebra(4),
    }
}

fn cyc_theta_d(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("cyc.theta-d");
    for _ in 0..CYCLIC_INSTANCES {
        let l = cyclic_algebra(ctx, &mut r);
        let g = gram_of(&l)?;
        let c = random_cyclic(&mut r, g, 3)?;
        let lhs = theta_map(&nr_bracket(l.bracket(), &c)?, g)?;
        let rhs = to_derivation(l.bracket()).apply(&theta_map(&c, g)?)?;
        expect_eq(|| json!({ "bracket": l.bracket().render(), "c": c.render() }), &lhs, &rhs)?;
    }
    pass(CYCLIC_INSTANCES)
}

fn cyc_d_ad_p(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("cyc.d-ad-p");
    for _ in 0..CYCLIC_INSTANCES {
        let l = cyclic_algebra(ctx, &mut r);
        let g = gram_of(&l)?;
        let c = random_cyclic(&mut r, g, 3)?;
        expect_der(|| json!({ "gram": g.to_json(), "c": c.render() }), &to_derivation(&c), &ad_p_derivation(&phi(&c, g)?, g)?)?;
    }
    pass(CYCLIC_INSTANCES)
}

fn cyc_closure(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("cyc.closure");
    for _ in 0..CYCLIC_INSTANCES {
        let l = cyclic_algebra(ctx, &mut r);
        let g = gram_of(&l)?;
        let c = random_cyclic(&mut r, g, 3)?;
        let c2 = random_cyclic(&mut r, g, 3)?;
        let br = nr_bracket(&c, &c2)?;
        let inputs = || json!({ "gram": g.to_json(), "c1": c.render(), "c2": c2.render() });
        expect_true(inputs, "[C, C']_a cyclic", is_cyclic(&br, g)?)?;
        let pb = super_poisson(&phi(&c, g)?, &phi(&c2, g)?, g)?;
        let route = from_derivation(&ad_p_derivation(&pb, g)?);
        expect_skew(inputs, &br, &route)?;
    }
    pass(CYCLIC_INSTANCES)
}

fn cyc_phi_lie_derivative(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("cyc.phi-lie-derivative");
    for _ in 0..CYCLIC_INSTANCES {
        let l = cyclic_algebra(ctx, &mut r);
        let g = gram_of(&l)?;
        let c = random_cyclic(&mut r, g, 3)?;
        let i = r.index(l.dim());
        let lhs = phi(&lie_derivative(&l, i, &c)?, g)?;
        let rhs = theta_basis(l.bracket(), i).apply(&phi(&c, g)?)?;
        expect_eq(|| json!({ "bracket": l.bracket().render(), "x": i + 1, "c": c.render() }), &lhs, &rhs)?;
    }
    pass(CYCLIC_INSTANCES)
}

fn cyc_wedge(ctx: &Ctx) -> Outcome {
    let mut r = ctx.rng("cyc.wedge");
    for _ in 0..CYCLIC_INSTANCES {
        let l = cyclic_algebra(ctx, &mut r);
        let g = gram_of(&l)?;
        let c = random_cyclic(&mut r, g, 3)?;
        let c2 = random_cyclic(&mut r, g, 3)?;
        let w = cyclic_wedge(&c, &c2, g)?;
        let inputs = || json!({ "gram": g.to_json(), "c1": c.render(), "c2": c2.render() });
        expect_skew(inputs, &w, &cyclic_wedge_explicit(&c, &c2, g)?)?;
        expect_true(inputs, "C wedge C' cyclic", is_cyclic(&w, g)?)?;
    }
    pass(CYCLIC_INSTANCES)
}

fn cyc_a0_table(ctx: &Ctx) -> Outcome {
    let a = ctx.alg();
    let (Some(m), Ok(alg)) = (a.matrix_size, a.require_assoc()) else {
        return skip("not a full matrix algebra");
    };
    if m > 3 {
        return skip("matrix size above 3");
    }
    let g = gram_of(&a.lie)?;
    let unit = alg.unit().expect("matrix algebras are unital");
    let a0 = SkewMap::vector(unit);
    let a2 = alg.standard_polynomial(2)?;
    let half_n = Scalar::Rat(frac(m as i64, 2));
    let mut gens = vec![a2.clone()];
    if m == 3 {
        gens.push(alg.standard_polynomial(4)?);
        gens.push(cyclic_wedge(&a2, &gens[1], g)?);
    }
    for f in &gens {
        let fdeg = phi(f, g)?.homogeneous_degree().unwrap_or(0);
        let lhs = nr_bracket(&a0, &cyclic_wedge(f, &a0, g)?)?;
        let rhs = f.scale(&(&half_n * &sign(fdeg as i64)));
        expect_skew(|| json!({ "f": f.render() }), &lhs, &rhs)?;
    }
    pass(gens.len())
}
