use gla_core::cohomology::theta_map;
use gla_core::exterior::{masks_lex, super_poisson};
use gla_core::linalg::{nullspace, rank};
use gla_core::multilinear::{nr_bracket, trace_lift, AssociativeAlgebraDef, SkewMap};
use gla_core::quadratic::{
    abelian, bracket_from_form, catalog, elem4, elem5, elem6, gl, is_decomposable, is_elementary,
    is_invariant_form, reduce_center, sl, threeform_from_bracket, LieAlgebraDef, QuadraticSpace,
};
use gla_core::random::RandomSource;
use gla_core::scalar::{frac, rat};
use gla_core::{ExteriorElement, GramMatrix, Rational, Scalar};
use proptest::prelude::*;

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { rat(1) } else { rat(0) }).collect()
}

fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    rank(a) == rank(b) && rank(&both) == rank(a)
}

/// `I(X,Y,Z) = B(F(X,Y), Z)` evaluated directly on basis triples.
fn form_of_map(f: &SkewMap, gram: &GramMatrix) -> ExteriorElement {
    let n = f.dim();
    let mut out = ExteriorElement::zero(n);
    for m in masks_lex(n, 3) {
        let idx: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
        let v: Vec<Rational> = f.eval(&idx[..2]).iter().map(|c| c.as_rational().unwrap().clone()).collect();
        out.add_term(m, Scalar::Rat(gram.pair(&v, &unit(n, idx[2]))));
    }
    out
}

fn quadratic_algebras() -> Vec<LieAlgebraDef> {
    let mut out = vec![sl(2), gl(2), sl(3), gl(3), elem4(), elem5(), elem6()];
    out.push(sl(2).direct_sum(&sl(2)).unwrap());
    out.push(sl(2).direct_sum(&abelian(1).unwrap()).unwrap());
    out
}

#[test]
fn bracket_and_form_round_trip() {
    for l in quadratic_algebras() {
        let gram = l.gram().unwrap().clone();
        let i = threeform_from_bracket(&l).unwrap();
        assert_eq!(i, form_of_map(l.bracket(), &gram));
        assert!(super_poisson(&i, &i, &gram).unwrap().is_zero());
        let q = QuadraticSpace::new(gram);
        assert_eq!(&bracket_from_form(&i, &q).unwrap(), l.bracket());
    }
}

#[test]
fn sl2_threeform_on_h_e_f() {
    // Basis H, E, F: [H,E] = 2E and B(E,F) = Tr(EF) = 1.
    let i = threeform_from_bracket(&sl(2)).unwrap();
    assert_eq!(i, ExteriorElement::monomial(3, &[0, 1, 2]).scale(&Scalar::int(2)));
}

#[test]
fn zero_and_invalid_forms() {
    let q = QuadraticSpace::new(GramMatrix::identity(4));
    assert!(bracket_from_form(&ExteriorElement::zero(4), &q).unwrap().is_zero());
    assert!(bracket_from_form(&ExteriorElement::monomial(4, &[0, 1]), &q).is_err());
    let mixed = &ExteriorElement::monomial(4, &[0, 1, 2]) + &ExteriorElement::monomial(4, &[0]);
    assert!(bracket_from_form(&mixed, &q).is_err());
    assert!(threeform_from_bracket(&abelian(3).unwrap()).unwrap().is_zero());
}

#[test]
fn elementary_six_dim_brackets() {
    // Basis Z_1, Z_2, Z_3, X_1, X_2, X_3 with B(Z_i, X_j) = δ_ij.
    let g = GramMatrix::new(
        (0..6).map(|i| (0..6).map(|j| if (i + 3 == j) || (j + 3 == i) { rat(1) } else { rat(0) }).collect()).collect(),
    )
    .unwrap();
    let f = bracket_from_form(&ExteriorElement::monomial(6, &[3, 4, 5]), &QuadraticSpace::new(g)).unwrap();
    assert_eq!(&f, elem6().bracket());
    let l = elem6();
    assert_eq!(l.bracket_basis(3, 4), unit(6, 2));
    assert_eq!(l.bracket_basis(4, 5), unit(6, 0));
    assert_eq!(l.bracket_basis(5, 3), unit(6, 1));
    assert!(same_span(&l.center(), &(0..3).map(|i| unit(6, i)).collect::<Vec<_>>()));
    assert!(same_span(&l.derived(), &l.center()));
}

#[test]
fn elementary_five_and_four_dim_brackets() {
    // Z_1, Z_2, X_1, X_2, T.
    let l = elem5();
    let neg = |v: Vec<Rational>| -> Vec<Rational> { v.into_iter().map(|x| -x).collect() };
    assert_eq!(l.bracket_basis(2, 4), neg(unit(5, 1)));
    assert_eq!(l.bracket_basis(3, 4), unit(5, 0));
    assert_eq!(l.bracket_basis(2, 3), unit(5, 4));
    // Z, P, X, Q.
    let h = elem4();
    assert_eq!(h.bracket_basis(2, 1), unit(4, 1));
    assert_eq!(h.bracket_basis(2, 3), neg(unit(4, 3)));
    assert_eq!(h.bracket_basis(1, 3), unit(4, 0));
    let heis: Vec<Vec<Rational>> = vec![unit(4, 0), unit(4, 1), unit(4, 3)];
    let derived = h.derived();
    assert!(same_span(&derived, &heis));
    // The derived algebra is Heisenberg: its own brackets span the line of Z.
    let mut inner = Vec::new();
    for x in &derived {
        for y in &derived {
            inner.push(h.bracket_vec(x, y));
        }
    }
    assert!(same_span(&inner, &[unit(4, 0)]));
}

#[test]
fn catalog_algebras_pass_all_checks() {
    for name in ["sl2", "elem4", "elem5", "elem6"] {
        let l = catalog(name).unwrap();
        let gram = l.gram().unwrap();
        assert!(nr_bracket(l.bracket(), l.bracket()).unwrap().is_zero());
        assert!(is_invariant_form(l.bracket(), gram).unwrap());
        assert!(is_elementary(&l).unwrap(), "{name}");
        assert_eq!(l.derived().len(), 3);
        let z = l.center();
        if name == "sl2" {
            assert!(z.is_empty());
        }
        for x in &z {
            for y in &z {
                assert_eq!(gram.pair(x, y), rat(0));
            }
        }
        let i = threeform_from_bracket(&l).unwrap();
        assert_eq!(is_decomposable(&i).unwrap(), (true, 3));
        for k in 0..l.dim() {
            assert!(rank(&l.ad_matrix(&unit(l.dim(), k))) <= 2, "{name} ad rank");
        }
    }
}

#[test]
fn decomposability_examples() {
    assert_eq!(is_decomposable(&ExteriorElement::monomial(3, &[0, 1, 2])).unwrap(), (true, 3));
    let two = &ExteriorElement::monomial(6, &[0, 1, 2]) + &ExteriorElement::monomial(6, &[3, 4, 5]);
    assert_eq!(is_decomposable(&two).unwrap(), (false, 6));
    let ss = sl(2).direct_sum(&sl(2)).unwrap();
    assert!(!is_decomposable(&threeform_from_bracket(&ss).unwrap()).unwrap().0);
    assert!(!is_elementary(&ss).unwrap());
    assert!(is_decomposable(&ExteriorElement::zero(3)).is_err());
    assert!(is_elementary(&abelian(3).unwrap()).is_err());
}

#[test]
fn center_orthogonal_is_derived_algebra() {
    let mut algebras = quadratic_algebras();
    let mut r = RandomSource::new(12);
    algebras.extend((0..10).map(|_| r.quadratic_lie_algebra(5)));
    for l in algebras {
        let gram = l.gram().unwrap();
        let flats: Vec<Vec<Rational>> = l.center().iter().map(|z| gram.flat(z)).collect();
        let perp = if flats.is_empty() { (0..l.dim()).map(|i| unit(l.dim(), i)).collect() } else { nullspace(&flats, l.dim()) };
        let derived = l.derived();
        assert!(same_span(&perp, &derived) || (perp.is_empty() && derived.is_empty()));
    }
}

#[test]
fn central_reduction_examples() {
    let r = reduce_center(&gl(2)).unwrap();
    assert!(same_span(&r.z, &[vec![rat(1), rat(0), rat(0), rat(1)]]));
    assert!(r.l.is_semisimple());
    let e6 = reduce_center(&elem6()).unwrap();
    assert!(e6.z.is_empty());
    assert_eq!(e6.l.dim(), 6);
    let sum = reduce_center(&sl(2).direct_sum(&abelian(1).unwrap()).unwrap()).unwrap();
    assert!(same_span(&sum.z, &[unit(4, 3)]));
    assert_eq!(sum.l.dim(), 3);
    assert_eq!(sum.l.derived().len(), 3);
    assert!(reduce_center(&abelian(2).unwrap()).is_err());
}

#[test]
fn invariance_examples() {
    let alg = AssociativeAlgebraDef::gl(3);
    let l = LieAlgebraDef::from_associative(&alg).unwrap();
    let a4 = alg.standard_polynomial(4).unwrap();
    assert!(is_invariant_form(&a4, l.gram().unwrap()).unwrap());
    assert!(is_invariant_form(sl(2).bracket(), sl(2).gram().unwrap()).unwrap());
    let mut f = SkewMap::zero(2, 2);
    f.add_term(0b11, 1, Scalar::one());
    assert!(!is_invariant_form(&f, &GramMatrix::identity(2)).unwrap());
    assert!(is_invariant_form(&alg.standard_polynomial(3).unwrap(), l.gram().unwrap()).is_err());
}

#[test]
fn five_form_recovers_a4_on_gl3() {
    let alg = AssociativeAlgebraDef::gl(3);
    let l = LieAlgebraDef::from_associative(&alg).unwrap();
    let gram = l.gram().unwrap().clone();
    let a4 = alg.standard_polynomial(4).unwrap();
    let a5 = trace_lift(&alg.standard_polynomial(5).unwrap(), &alg).unwrap();
    // Φ(A_4) = −(1/10) a_5 with Φ = −½ Θ, so Θ(A_4) = (1/5) a_5.
    let i = a5.scale_rat(&frac(1, 5));
    assert_eq!(theta_map(&a4, &gram).unwrap(), i);
    assert!(super_poisson(&i, &i, &gram).unwrap().is_zero());
    assert_eq!(bracket_from_form(&i, &QuadraticSpace::new(gram)).unwrap(), a4);
}

#[test]
fn json_round_trip() {
    for l in quadratic_algebras() {
        let back = LieAlgebraDef::from_json(&l.to_json()).unwrap();
        assert_eq!(back.bracket(), l.bracket());
        assert_eq!(back.gram().map(|g| g.entries().to_vec()), l.gram().map(|g| g.entries().to_vec()));
    }
    let heisenberg = serde_json::json!({ "dim": 3, "bracket": [[1, 2, 3, "1"]] });
    assert!(LieAlgebraDef::from_json(&heisenberg).is_ok());
    let not_jacobi = serde_json::json!({ "dim": 3, "bracket": [[1, 2, 3, "1"], [2, 3, 1, "1"], [1, 3, 1, "1"]] });
    assert!(LieAlgebraDef::from_json(&not_jacobi).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn jacobi_iff_self_bracket_vanishes(seed in any::<u64>()) {
        let mut r = RandomSource::new(seed);
        let n = 3 + r.index(3);
        let g = r.gram(n);
        let i = if r.index(2) == 0 {
            r.form(n, 3, 0.4)
        } else {
            let (a, b, c) = (r.form(n, 1, 0.7), r.form(n, 1, 0.7), r.form(n, 1, 0.7));
            a.wedge(&b).unwrap().wedge(&c).unwrap()
        };
        let f = bracket_from_form(&i, &QuadraticSpace::new(g.clone())).unwrap();
        let jacobi = nr_bracket(&f, &f).unwrap().is_zero();
        let poisson = super_poisson(&i, &i, &g).unwrap().is_zero();
        prop_assert_eq!(jacobi, poisson);
        if !i.is_zero() && is_decomposable(&i).unwrap().0 {
            prop_assert!(poisson);
        }
        prop_assert_eq!(form_of_map(&f, &g), i);
        prop_assert!(is_invariant_form(&f, &g).unwrap());
    }

    #[test]
    fn random_quadratic_algebras_round_trip(seed in any::<u64>()) {
        let mut r = RandomSource::new(seed);
        let l = r.quadratic_lie_algebra(6);
        let gram = l.gram().unwrap().clone();
        let i = threeform_from_bracket(&l).unwrap();
        prop_assert_eq!(&bracket_from_form(&i, &QuadraticSpace::new(gram)).unwrap(), l.bracket());
        if !l.is_abelian() {
            let red = reduce_center(&l).unwrap();
            prop_assert_eq!(red.z.len() + red.l.dim(), l.dim());
        }
    }
}

#[test]
fn degenerate_trace_form_is_dropped() {
    // Upper triangular 2x2 matrices: E11, E12, E22. Tr(E12 . Y) = 0 for all Y.
    let alg = AssociativeAlgebraDef::from_json(&serde_json::json!({
        "dim": 3,
        "product": [[1, 1, 1, "1"], [1, 2, 2, "1"], [2, 3, 2, "1"], [3, 3, 3, "1"]],
        "unit": ["1", "0", "1"],
        "trace": ["1", "0", "1"]
    }))
    .unwrap();
    let l = LieAlgebraDef::from_associative(&alg).unwrap();
    assert!(l.gram().is_none());
    assert_eq!(l.derived().len(), 1);
}
