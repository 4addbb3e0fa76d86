use gla_core::cohomology::{
    adjoint_complex, cyclic_complex, cyclic_wedge, cyclic_wedge_explicit, invariants, is_cyclic, lie_derivative, phi,
    phi_inverse, poisson_commutativity_check, theta_inverse, theta_map, trivial_complex, two_k_complex,
    InvariantSpace,
};
use gla_core::derivation::{ad_p_derivation, from_derivation, theta_basis, to_derivation};
use gla_core::exterior::{masks_lex, super_poisson};
use gla_core::linalg::{nullspace, rank};
use gla_core::multilinear::{nr_bracket, trace_lift, AssociativeAlgebraDef, SkewMap};
use gla_core::quadratic::{abelian, elem4, elem5, elem6, gl, sl, threeform_from_bracket, LieAlgebraDef};
use gla_core::random::RandomSource;
use gla_core::scalar::{frac, rat};
use gla_core::{ExteriorElement, GramMatrix, Rational, Scalar};
use proptest::prelude::*;

fn sign(k: usize) -> Scalar {
    Scalar::int(if k.is_multiple_of(2) { 1 } else { -1 })
}

fn same(a: &SkewMap, b: &SkewMap) -> bool {
    a == b || (a.is_zero() && b.is_zero())
}

fn random_cyclic(r: &mut RandomSource, gram: &GramMatrix, arity: usize) -> SkewMap {
    let n = gram.dim();
    let form = r.form(n, arity + 1, 0.5);
    if form.is_zero() {
        SkewMap::zero(n, arity)
    } else {
        theta_inverse(&form, gram).unwrap()
    }
}

fn random_quadratic(r: &mut RandomSource) -> LieAlgebraDef {
    match r.index(4) {
        0 => sl(2),
        1 => gl(2),
        2 => elem4(),
        _ => r.quadratic_lie_algebra(5),
    }
}

fn identity(m: usize) -> Vec<Rational> {
    let mut v = vec![rat(0); m * m];
    for i in 0..m {
        v[i * m + i] = rat(1);
    }
    v
}

/// Basis of `span A ∩ span B`.
fn intersect(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let dim = a[0].len();
    let cols: Vec<Vec<Rational>> = a.iter().cloned().chain(b.iter().map(|v| v.iter().map(|x| -x).collect())).collect();
    let rows: Vec<Vec<Rational>> = (0..dim).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    nullspace(&rows, cols.len())
        .into_iter()
        .map(|coef| {
            (0..dim)
                .map(|i| a.iter().zip(&coef).map(|(v, c)| &v[i] * c).sum())
                .collect()
        })
        .collect()
}

#[test]
fn trivial_betti_numbers() {
    assert_eq!(trivial_complex(&sl(2)).unwrap().betti().numbers(), vec![1, 0, 0, 1]);
    assert_eq!(trivial_complex(&gl(2)).unwrap().betti().numbers(), vec![1, 1, 0, 1, 1]);
    let ab = trivial_complex(&abelian(3).unwrap()).unwrap();
    assert_eq!(ab.betti().numbers(), vec![1, 3, 3, 1]);
    assert!(ab.betti().rows.iter().all(|r| r.rank.unwrap_or(0) == 0));
    for l in [sl(2), gl(2), sl(3), elem4(), elem5(), elem6()] {
        assert_eq!(trivial_complex(&l).unwrap().betti().euler_consistent(), Some(true));
    }
}

#[test]
fn two_k_complexes() {
    let s = sl(2);
    assert_eq!(two_k_complex(s.bracket()).unwrap().betti(), {
        let mut t = trivial_complex(&s).unwrap().betti();
        t.complex = "twoK".into();
        t
    });
    let gl2 = AssociativeAlgebraDef::gl(2);
    assert_eq!(two_k_complex(&gl2.standard_polynomial(2).unwrap()).unwrap().betti().numbers(), vec![1, 1, 0, 1, 1]);
    assert_eq!(two_k_complex(&SkewMap::zero(4, 2)).unwrap().betti().numbers(), vec![1, 4, 6, 4, 1]);
    let zero4 = two_k_complex(&SkewMap::zero(5, 4)).unwrap();
    assert_eq!(zero4.step, 3);
    assert_eq!(zero4.betti().numbers(), vec![1, 5, 10, 10, 5, 1]);
    let mut bad = SkewMap::zero(3, 2);
    bad.add_term(0b011, 2, Scalar::one());
    bad.add_term(0b110, 0, Scalar::one());
    bad.add_term(0b101, 0, Scalar::one());
    assert!(two_k_complex(&bad).is_err());
}

#[test]
fn a4_complex_on_gl3_contains_invariants() {
    let alg = AssociativeAlgebraDef::gl(3);
    let l = LieAlgebraDef::from_associative(&alg).unwrap();
    let cx = two_k_complex(&alg.standard_polynomial(4).unwrap()).unwrap();
    assert_eq!(cx.step, 3);
    let betti = cx.betti();
    let inv = invariants(&l, InvariantSpace::Exterior).unwrap();
    for (k, basis) in inv.iter().enumerate() {
        assert!(betti.rows[k].betti.unwrap() >= basis.len(), "degree {k}");
    }
}

#[test]
fn adjoint_complexes() {
    let b = adjoint_complex(&sl(2), 2).unwrap().betti();
    assert_eq!(b.rows[0].betti, Some(0));
    assert_eq!(b.rows[1].betti, Some(0));
    assert!(b.truncated);
    assert_eq!(b.rows[2].betti, None);
    let g = adjoint_complex(&gl(2), 2).unwrap().betti();
    assert_eq!(g.rows[0].betti, Some(1));
    let ab = adjoint_complex(&abelian(2).unwrap(), 2).unwrap().betti();
    assert_eq!(ab.numbers(), vec![2, 4, 2]);
    // A_4 is the coboundary [A_2, A_3]_a, and it vanishes on gl(2).
    let alg = AssociativeAlgebraDef::gl(2);
    let (a2, a3) = (alg.standard_polynomial(2).unwrap(), alg.standard_polynomial(3).unwrap());
    assert_eq!(nr_bracket(&a2, &a3).unwrap(), alg.standard_polynomial(4).unwrap());
    assert!(nr_bracket(&a2, &a3).unwrap().is_zero());
}

#[test]
fn cyclic_betti_numbers() {
    assert_eq!(cyclic_complex(&gl(2), 3).unwrap().betti().numbers(), vec![1, 0, 1, 1]);
    assert_eq!(cyclic_complex(&sl(2), 2).unwrap().betti().numbers(), vec![0, 0, 1]);
    for l in [sl(2), gl(2), sl(3), elem4(), elem5()] {
        let n = l.dim();
        let cyc = cyclic_complex(&l, n - 1).unwrap().betti().numbers();
        let triv = trivial_complex(&l).unwrap().betti().numbers();
        assert_eq!(cyc[0], l.center().len());
        for k in 1..n {
            assert_eq!(cyc[k], triv[k + 1], "degree {k}");
        }
    }
    let line = LieAlgebraDef::new(SkewMap::zero(1, 2), Some(GramMatrix::identity(1))).unwrap();
    let b = cyclic_complex(&line, 0).unwrap().betti();
    assert_eq!(b.numbers(), vec![1]);
}

#[test]
fn cyclic_examples() {
    let gl2 = AssociativeAlgebraDef::gl(2);
    let l2 = LieAlgebraDef::from_associative(&gl2).unwrap();
    let g2 = l2.gram().unwrap();
    let a2 = gl2.standard_polynomial(2).unwrap();
    assert!(is_cyclic(&a2, g2).unwrap());
    // Θ(A_2) = (1/3) Tr(A_3).
    let tr3 = trace_lift(&gl2.standard_polynomial(3).unwrap(), &gl2).unwrap();
    assert_eq!(theta_map(&a2, g2).unwrap(), tr3.scale_rat(&frac(1, 3)));
    let gl3 = AssociativeAlgebraDef::gl(3);
    let l3 = LieAlgebraDef::from_associative(&gl3).unwrap();
    assert!(is_cyclic(&gl3.standard_polynomial(4).unwrap(), l3.gram().unwrap()).unwrap());
    let e6 = elem6();
    assert_eq!(theta_map(e6.bracket(), e6.gram().unwrap()).unwrap(), threeform_from_bracket(&e6).unwrap());
    assert!(theta_map(&SkewMap::zero(4, 2), g2).unwrap().is_zero());
    let mut f = SkewMap::zero(2, 2);
    f.add_term(0b11, 1, Scalar::one());
    assert!(!is_cyclic(&f, &GramMatrix::identity(2)).unwrap());
    assert!(theta_map(&f, &GramMatrix::identity(2)).is_err());
}

#[test]
fn invariant_examples() {
    let dims = |l: &LieAlgebraDef| -> Vec<usize> {
        invariants(l, InvariantSpace::Exterior).unwrap().iter().map(Vec::len).collect()
    };
    assert_eq!(dims(&sl(2)), vec![1, 0, 0, 1]);
    assert_eq!(dims(&gl(2)), vec![1, 1, 0, 1, 1]);
    assert_eq!(dims(&abelian(3).unwrap()), vec![1, 3, 3, 1]);
    assert_eq!(dims(&sl(3)), vec![1, 0, 0, 1, 0, 1, 0, 0, 1]);
}

#[test]
fn poisson_commutativity_of_invariants() {
    for l in [sl(2), sl(3)] {
        let report = poisson_commutativity_check(&l).unwrap();
        assert!(report.passed());
        assert!(report.pairs_checked > 1);
    }
    assert!(poisson_commutativity_check(&gl(2)).is_err());
    // {a_1, a_1} = 2n on gl(n) for a_1 = Tr(A_1).
    for m in [2, 3] {
        let alg = AssociativeAlgebraDef::gl(m);
        let l = LieAlgebraDef::from_associative(&alg).unwrap();
        let a1 = trace_lift(&alg.standard_polynomial(1).unwrap(), &alg).unwrap();
        let pb = super_poisson(&a1, &a1, l.gram().unwrap()).unwrap();
        assert_eq!(pb, ExteriorElement::scalar(m * m, Scalar::int(2 * m as i64)));
    }
}

#[test]
fn invariant_cyclic_cochains_represent_cohomology() {
    for l in [gl(2), sl(2)] {
        let n = l.dim();
        let gram = l.gram().unwrap();
        let betti = cyclic_complex(&l, n - 1).unwrap().betti().numbers();
        let inv = invariants(&l, InvariantSpace::Skew { max_arity: n - 1 }).unwrap();
        for k in 0..n {
            let cyc: Vec<Vec<Rational>> =
                masks_lex(n, k + 1).iter().map(|&m| theta_inverse(&ExteriorElement::basis(n, m), gram).unwrap().coords()).collect();
            let both = intersect(&inv[k], &cyc);
            assert_eq!(both.len(), betti[k], "arity {k}");
            for v in &both {
                let c = SkewMap::from_coords(n, k, v);
                assert!(is_cyclic(&c, gram).unwrap());
                assert!(nr_bracket(l.bracket(), &c).unwrap().is_zero());
            }
            // No nonzero invariant cocycle is a coboundary.
            if k > 0 && !both.is_empty() {
                let image: Vec<Vec<Rational>> = masks_lex(n, k)
                    .iter()
                    .map(|&m| nr_bracket(l.bracket(), &theta_inverse(&ExteriorElement::basis(n, m), gram).unwrap()).unwrap().coords())
                    .collect();
                let all: Vec<Vec<Rational>> = image.iter().chain(&both).cloned().collect();
                assert_eq!(rank(&all), rank(&image) + both.len());
            }
        }
    }
}

#[test]
fn a0_bracket_table_on_gl2_and_gl3() {
    for m in [2usize, 3] {
        let alg = AssociativeAlgebraDef::gl(m);
        let l = LieAlgebraDef::from_associative(&alg).unwrap();
        let g = l.gram().unwrap();
        let a0 = SkewMap::vector(&identity(m));
        let a2 = alg.standard_polynomial(2).unwrap();
        let half_n = Scalar::Rat(frac(m as i64, 2));
        let mut gens = vec![a2.clone()];
        if m == 3 {
            gens.push(alg.standard_polynomial(4).unwrap());
            gens.push(cyclic_wedge(&a2, &gens[1], g).unwrap());
        }
        assert!(nr_bracket(&a0, &a0).unwrap().is_zero());
        for f in &gens {
            // f' is the degree of Φ(F').
            let fdeg = phi(f, g).unwrap().homogeneous_degree().unwrap();
            let fa0 = cyclic_wedge(f, &a0, g).unwrap();
            let lhs = nr_bracket(&a0, &fa0).unwrap();
            assert_eq!(lhs, f.scale(&(&half_n * &sign(fdeg))), "gl{m}, f' = {fdeg}");
            assert!(nr_bracket(&a0, f).unwrap().is_zero());
            for f2 in &gens {
                assert!(same(&nr_bracket(f2, f).unwrap(), &SkewMap::zero(m * m, 0)));
                assert!(nr_bracket(f2, &fa0).unwrap().is_zero());
                let lhs = nr_bracket(&cyclic_wedge(f2, &a0, g).unwrap(), &fa0).unwrap();
                let rhs = cyclic_wedge(f2, f, g).unwrap().scale(&(&half_n * &sign(fdeg)));
                assert!(same(&lhs, &rhs));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn theta_intertwines_differentials(seed in any::<u64>()) {
        let mut r = RandomSource::new(seed);
        let l = random_quadratic(&mut r);
        let gram = l.gram().unwrap();
        let k = r.index(l.dim());
        let c = random_cyclic(&mut r, gram, k);
        let dc = nr_bracket(l.bracket(), &c).unwrap();
        prop_assert!(is_cyclic(&dc, gram).unwrap());
        let del = to_derivation(l.bracket());
        prop_assert_eq!(theta_map(&dc, gram).unwrap(), del.apply(&theta_map(&c, gram).unwrap()).unwrap());
    }

    #[test]
    fn d_map_is_ad_p_of_phi(seed in any::<u64>()) {
        let mut r = RandomSource::new(seed);
        let n = 1 + r.index(4);
        let gram = r.gram(n);
        let k = r.index(n);
        let c = random_cyclic(&mut r, &gram, k);
        let lhs = to_derivation(&c);
        let rhs = ad_p_derivation(&phi(&c, &gram).unwrap(), &gram).unwrap();
        prop_assert!(lhs == rhs || (lhs.is_zero() && rhs.is_zero()));
    }

    #[test]
    fn cyclic_cochains_form_a_subalgebra(seed in any::<u64>()) {
        let mut r = RandomSource::new(seed);
        let n = 2 + r.index(3);
        let gram = r.gram(n);
        let (k1, k2) = (r.index(n), r.index(n));
        let c1 = random_cyclic(&mut r, &gram, k1);
        let c2 = random_cyclic(&mut r, &gram, k2);
        let b = nr_bracket(&c1, &c2).unwrap();
        prop_assert!(is_cyclic(&b, &gram).unwrap());
        let pb = super_poisson(&phi(&c1, &gram).unwrap(), &phi(&c2, &gram).unwrap(), &gram).unwrap();
        let via_poisson = from_derivation(&ad_p_derivation(&pb, &gram).unwrap());
        prop_assert!(same(&b, &via_poisson));
        // Φ is onto Λ_+g only: the constant {Φ(X), Φ(Y)} of two arity-0 cochains has no preimage.
        let positive = &pb - &pb.part(0);
        prop_assert_eq!(theta_map(&b, &gram).unwrap().scale_rat(&frac(-1, 2)), positive);
    }

    #[test]
    fn phi_intertwines_lie_derivatives(seed in any::<u64>()) {
        let mut r = RandomSource::new(seed);
        let l = random_quadratic(&mut r);
        let gram = l.gram().unwrap();
        let k = r.index(l.dim());
        let c = random_cyclic(&mut r, gram, k);
        let i = r.index(l.dim());
        let lhs = phi(&lie_derivative(&l, i, &c).unwrap(), gram).unwrap();
        let rhs = theta_basis(l.bracket(), i).apply(&phi(&c, gram).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cyclic_wedge_formulas_agree(seed in any::<u64>()) {
        let mut r = RandomSource::new(seed);
        let n = 1 + r.index(4);
        let gram = r.gram(n);
        let (k1, k2) = (r.index(n), r.index(n));
        let c1 = random_cyclic(&mut r, &gram, k1);
        let c2 = random_cyclic(&mut r, &gram, k2);
        let w = cyclic_wedge(&c1, &c2, &gram).unwrap();
        prop_assert!(same(&w, &cyclic_wedge_explicit(&c1, &c2, &gram).unwrap()));
        prop_assert!(is_cyclic(&w, &gram).unwrap());
        if !w.is_zero() {
            let back = phi(&w, &gram).unwrap();
            prop_assert_eq!(phi_inverse(&back, &gram).unwrap(), w);
        }
    }

    #[test]
    fn bracket_is_a_derivation_of_the_cyclic_wedge(seed in any::<u64>()) {
        let mut r = RandomSource::new(seed);
        let n = 2 + r.index(3);
        let gram = r.gram(n);
        let ks = [r.index(n), r.index(n), r.index(n)];
        // Two arity-0 cochains bracket to a constant outside Λ_+g, where Φ does not reach.
        prop_assume!(ks[0] > 0 || (ks[1] > 0 && ks[2] > 0));
        let c = random_cyclic(&mut r, &gram, ks[0]);
        let c1 = random_cyclic(&mut r, &gram, ks[1]);
        let c2 = random_cyclic(&mut r, &gram, ks[2]);
        let lhs = nr_bracket(&c, &cyclic_wedge(&c1, &c2, &gram).unwrap()).unwrap();
        let a = cyclic_wedge(&nr_bracket(&c, &c1).unwrap(), &c2, &gram);
        let b = cyclic_wedge(&c1, &nr_bracket(&c, &c2).unwrap(), &gram);
        // Φ-degrees are arity + 1; super Poisson degrees shift by 2 and keep their parity.
        let s = sign((ks[0] + 1) * (ks[1] + 1));
        let rhs = match (a, b) {
            (Ok(a), Ok(b)) => {
                let b = b.scale(&s);
                if a.is_zero() { b } else if b.is_zero() { a } else { a.add(&b).unwrap() }
            }
            (Ok(a), Err(_)) => a,
            (Err(_), Ok(b)) => b.scale(&s),
            (Err(_), Err(_)) => SkewMap::zero(n, 0),
        };
        prop_assert!(same(&lhs, &rhs));
    }
}
