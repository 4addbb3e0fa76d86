//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use gla_core::cohomology::{
    cyclic_complex, cyclic_wedge, cyclic_wedge_explicit, is_cyclic, phi, poisson_commutativity_check,
    theta_inverse, theta_map, trivial_complex,
};
use gla_core::derivation::{ad_p_derivation, der_bracket, from_derivation, to_derivation};
use gla_core::exterior::{clifford_star, moyal_star, super_poisson, ExteriorElement};
use gla_core::multilinear::{
    gerstenhaber_bracket, is_2k_lie, nr_bracket, skew_symmetrize, times_product, trace_lift,
    AssociativeAlgebraDef, MultiMap, SkewMap,
};
use gla_core::quadratic::{
    bracket_from_form, elem4, elem5, elem6, gl, is_decomposable, is_elementary, is_invariant_form,
    reduce_center, sl, threeform_from_bracket, LieAlgebraDef, QuadraticSpace,
};
use gla_core::random::RandomSource;
use gla_core::schouten::{schouten_bracket, v_map};
use gla_core::{Rational, Scalar};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

/// Graded-antisymmetry sign `−(−1)^{pq}` for shifted degrees.
fn swap_sign(a: usize, b: usize) -> i64 {
    let (p, q) = (a as i64 - 1, b as i64 - 1);
    if (p * q).rem_euclid(2) == 0 {
        -1
    } else {
        1
    }
}

/// Coefficient `c` with `[X_a, X_b] = c X_{a+b−1}` in the standard-polynomial tables, or
/// `None` when the table predicts zero.
fn table_coefficient(a: usize, b: usize) -> Option<i64> {
    match (a % 2, b % 2) {
        (0, 0) => None,
        (0, 1) => Some(a as i64 - 1),
        (1, 1) => Some(a as i64 - b as i64),
        _ => table_coefficient(b, a).map(|c| c * swap_sign(a, b)),
    }
}

fn criterion_1() -> Outcome {
    let mut checks = 0;
    let mut k0 = 0;
    for (name, alg) in [("gl2", AssociativeAlgebraDef::gl(2)), ("gl3", AssociativeAlgebraDef::gl(3))] {
        let ms: Vec<MultiMap> = (0..=6).map(|k| alg.iterated_product(k)).collect::<Result<_, _>>().map_err(|x| x.to_string())?;
        let as_: Vec<SkewMap> = ms.iter().map(skew_symmetrize).collect();
        for a in 0..=6usize {
            for b in 0..=6usize {
                if a + b == 0 || a + b - 1 > 5 {
                    continue;
                }
                let t = a + b - 1;
                let expect = table_coefficient(a, b);
                let g = e(gerstenhaber_bracket(&ms[a], &ms[b]))?;
                let want_m = match expect {
                    None => MultiMap::zero(alg.dim(), t),
                    Some(c) => ms[t].scale(&Scalar::int(c)),
                };
                ensure(g == want_m, || format!("{name}: [m_{a}, m_{b}] mismatch"))?;
                let h = e(nr_bracket(&as_[a], &as_[b]))?;
                let want_a = match expect {
                    None => SkewMap::zero(alg.dim(), t),
                    Some(c) => as_[t].scale(&Scalar::int(c)),
                };
                ensure(h == want_a, || format!("{name}: [A_{a}, A_{b}]_a mismatch"))?;
                checks += 2;
                if a == 0 || b == 0 {
                    k0 += 2;
                }
            }
        }
    }
    Ok(format!("{checks} table identities on gl2 and gl3, of which {k0} are k=0 instances (all hold)"))
}

fn criterion_2() -> Outcome {
    let gl2 = AssociativeAlgebraDef::gl(2);
    let gl3 = AssociativeAlgebraDef::gl(3);
    ensure(e(gl2.standard_polynomial(4))?.is_zero(), || "A_4 ≠ 0 on gl2".into())?;
    ensure(e(gl2.standard_polynomial(5))?.is_zero(), || "A_5 ≠ 0 on gl2".into())?;
    ensure(e(gl3.standard_polynomial(6))?.is_zero(), || "A_6 ≠ 0 on gl3".into())?;
    let a4 = e(gl3.standard_polynomial(4))?;
    ensure(!a4.is_zero(), || "A_4 = 0 on gl3".into())?;
    Ok(format!("A_4=A_5=0 on gl2, A_6=0 on gl3, A_4 on gl3 has {} terms", a4.nnz()))
}

fn criterion_3() -> Outcome {
    let a4 = e(AssociativeAlgebraDef::gl(3).standard_polynomial(4))?;
    let b = e(nr_bracket(&a4, &a4))?;
    ensure(b.arity() == 7, || format!("arity {}", b.arity()))?;
    let dim = b.coords().len();
    ensure(dim == 324, || format!("target dimension {dim}"))?;
    ensure(b.is_zero(), || format!("[A_4, A_4]_a has {} nonzero terms", b.nnz()))?;
    Ok(format!("[A_4, A_4]_a = 0 in a target space of dim {dim}"))
}

fn criterion_4() -> Outcome {
    let n = 4;
    let basis: Vec<ExteriorElement> = (0..1u32 << n).map(|m| ExteriorElement::basis(n, m)).collect();
    let mut triples = 0;
    for a in &basis {
        for b in &basis {
            let ab = e(clifford_star(a, b))?;
            for c in &basis {
                let l = e(clifford_star(&ab, c))?;
                let r = e(clifford_star(a, &e(clifford_star(b, c))?))?;
                ensure(l == r, || format!("associativity fails on {a} {b} {c}"))?;
                triples += 1;
            }
        }
    }
    let mut pairs = 0;
    for n in 1..=6 {
        for i in 0..1u32 << n {
            for j in 0..1u32 << n {
                let (x, y) = (ExteriorElement::basis(n, i), ExteriorElement::basis(n, j));
                ensure(e(moyal_star(&x, &y))? == e(clifford_star(&x, &y))?, || {
                    format!("moyal ≠ clifford on n={n}, {x} ⋆ {y}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{triples} associative triples at n=4; {pairs} basis pairs with moyal = clifford for n ≤ 6"))
}

fn criterion_5() -> Outcome {
    let cases = [
        ("sl2", sl(2), vec![1, 0, 0, 1], vec![0, 0, 1]),
        ("gl2", gl(2), vec![1, 1, 0, 1, 1], vec![1, 0, 1, 1]),
    ];
    let mut out = Vec::new();
    for (name, l, trivial, cyclic) in cases {
        let bt = e(trivial_complex(&l))?.betti();
        let bc = e(cyclic_complex(&l, 8))?.betti();
        ensure(bt.numbers() == trivial, || format!("{name} trivial Betti {:?}", bt.numbers()))?;
        ensure(bc.numbers() == cyclic, || format!("{name} cyclic Betti {:?}", bc.numbers()))?;
        ensure(bt.euler_consistent() == Some(true), || format!("{name} trivial Euler check"))?;
        ensure(bc.euler_consistent() == Some(true), || format!("{name} cyclic Euler check"))?;
        let (b, c) = (bt.numbers(), bc.numbers());
        for k in 1..c.len() {
            ensure(c[k] == b[k + 1], || format!("{name}: b_c^{k} = {} but b^{} = {}", c[k], k + 1, b[k + 1]))?;
        }
        ensure(c[0] == l.center().len(), || format!("{name}: b_c^0 ≠ dim Z(g)"))?;
        out.push(format!("{name} {b:?}/{c:?}"));
    }
    Ok(format!("trivial/cyclic Betti {}; shift law holds", out.join(", ")))
}

fn criterion_6() -> Outcome {
    let mut out = Vec::new();
    for (name, l) in [("sl2", sl(2)), ("sl3", sl(3))] {
        let r = e(poisson_commutativity_check(&l))?;
        ensure(r.passed(), || format!("{name}: nonvanishing brackets {:?}", r.failures))?;
        out.push(format!("{name} invariants {:?} ({} pairs)", r.invariant_dims, r.pairs_checked));
    }
    Ok(out.join("; "))
}

fn criterion_7() -> Outcome {
    let mut out = Vec::new();
    for m in [2usize, 3] {
        let alg = AssociativeAlgebraDef::gl(m);
        let l = gl(m);
        let a1 = e(trace_lift(&e(alg.standard_polynomial(1))?, &alg))?;
        let b = e(super_poisson(&a1, &a1, e(l.require_gram())?))?;
        let want = ExteriorElement::scalar(l.dim(), Scalar::int(2 * m as i64));
        ensure(b == want, || format!("gl{m}: {{a_1, a_1}} = {b}"))?;
        out.push(format!("gl{m}: {b}"));
    }
    Ok(format!("{{a_1, a_1}} = 2n ({})", out.join(", ")))
}

fn criterion_8() -> Outcome {
    for (name, l) in [("elem4", elem4()), ("elem5", elem5()), ("elem6", elem6()), ("sl2", sl(2))] {
        let gram = e(l.require_gram())?;
        ensure(e(is_2k_lie(l.bracket()))?, || format!("{name}: Jacobi"))?;
        ensure(e(is_invariant_form(l.bracket(), gram))?, || format!("{name}: invariance"))?;
        ensure(l.derived().len() == 3, || format!("{name}: dim [g,g] = {}", l.derived().len()))?;
        let (dec, _) = e(is_decomposable(&e(threeform_from_bracket(&l))?))?;
        ensure(dec, || format!("{name}: I not decomposable"))?;
        ensure(e(is_elementary(&l))?, || format!("{name}: not elementary"))?;
        let z = l.center();
        for x in &z {
            for y in &z {
                ensure(gram.pair(x, y) == Rational::from_integer(0.into()), || format!("{name}: center not isotropic"))?;
            }
        }
    }
    let red = e(reduce_center(&gl(2)))?;
    ensure(red.l.dim() == 3 && red.l.is_semisimple(), || "gl2: complement is not 3-dim semisimple".into())?;
    ensure(red.z.len() == 1 && red.z_gram.is_some(), || "gl2: central part is not a nondegenerate line".into())?;
    Ok("elem4/elem5/elem6/sl2 pass all checks; gl2 = sl2 ⊕ nondegenerate central line".into())
}

fn criterion_9() -> Outcome {
    let mut r = RandomSource::new(0x5eed_0009);
    let (mut total, mut lie) = (0, 0);
    while total < 240 {
        let n = 3 + r.index(3);
        let gram = r.gram(n);
        let i = match r.index(3) {
            0 => {
                let mut w = ExteriorElement::one(n);
                for _ in 0..3 {
                    w = e(w.wedge(&r.form(n, 1, 0.7)))?;
                }
                w
            }
            _ => r.form(n, 3, 0.4),
        };
        let q = QuadraticSpace::new(gram.clone());
        let f = e(bracket_from_form(&i, &q))?;
        let poisson_zero = e(super_poisson(&i, &i, &gram))?.is_zero();
        let jacobi = e(is_2k_lie(&f))?;
        ensure(poisson_zero == jacobi, || format!("instance {total}: {{I,I}}=0 is {poisson_zero}, Jacobi is {jacobi}"))?;
        ensure(e(theta_map(&f, &gram))? == i, || format!("instance {total}: Θ(F_I) ≠ I"))?;
        if jacobi {
            let l = e(LieAlgebraDef::new(f.clone(), Some(gram.clone())))?;
            ensure(e(threeform_from_bracket(&l))? == i, || format!("instance {total}: round trip"))?;
            lie += 1;
        }
        total += 1;
    }
    Ok(format!("{total} random 3-forms ({lie} with Jacobi); correspondence and round trips hold"))
}

fn random_cyclic(r: &mut RandomSource, l: &LieAlgebraDef, max_arity: usize) -> Result<SkewMap, String> {
    let n = l.dim();
    let gram = e(l.require_gram())?;
    loop {
        let k = r.index(max_arity.min(n - 1) + 1);
        let w = r.form(n, k + 1, 0.6);
        if !w.is_zero() {
            return e(theta_inverse(&w, gram));
        }
    }
}

fn criterion_10() -> Outcome {
    let mut r = RandomSource::new(0x5eed_0010);
    let instances = 120;
    for t in 0..instances {
        let l = r.quadratic_lie_algebra(4);
        let gram = e(l.require_gram())?.clone();
        let f0 = l.bracket();
        let c = random_cyclic(&mut r, &l, 3)?;
        let c2 = random_cyclic(&mut r, &l, 3)?;
        ensure(e(is_cyclic(&c, &gram))?, || format!("instance {t}: Θ⁻¹ not cyclic"))?;

        let dc = e(nr_bracket(f0, &c))?;
        let lhs = e(theta_map(&dc, &gram))?;
        let rhs = e(to_derivation(f0).apply(&e(theta_map(&c, &gram))?))?;
        ensure(lhs == rhs, || format!("instance {t}: Θ∘d ≠ ∂∘Θ"))?;

        let dd = to_derivation(&c);
        let ad = e(ad_p_derivation(&e(phi(&c, &gram))?, &gram))?;
        ensure(dd == ad, || format!("instance {t}: D(C) ≠ ad_P(Φ(C))"))?;

        let br = e(nr_bracket(&c, &c2))?;
        ensure(e(is_cyclic(&br, &gram))?, || format!("instance {t}: [C, C']_a not cyclic"))?;
        let pb = e(super_poisson(&e(phi(&c, &gram))?, &e(phi(&c2, &gram))?, &gram))?;
        let route = from_derivation(&e(ad_p_derivation(&pb, &gram))?);
        ensure(br.is_zero() && route.is_zero() || route == br, || {
            format!("instance {t}: [C, C']_a ≠ F(ad_P{{Φ(C), Φ(C')}})")
        })?;

        let w1 = e(cyclic_wedge(&c, &c2, &gram))?;
        let w2 = e(cyclic_wedge_explicit(&c, &c2, &gram))?;
        ensure(w1 == w2, || format!("instance {t}: cyclic wedge formulas disagree"))?;
        ensure(e(is_cyclic(&w1, &gram))?, || format!("instance {t}: cyclic wedge not cyclic"))?;
    }
    Ok(format!("{instances} instances each of Θ∘d=∂∘Θ, D(C)=ad_P(Φ(C)), closure (two routes), wedge agreement"))
}

fn criterion_11() -> Outcome {
    let mut r = RandomSource::new(0x5eed_0011);
    let instances = 120;
    for t in 0..instances {
        let n = 2 + r.index(3);
        let (p, q) = (r.index(4), r.index(4));
        let f = r.skew_map(n, p, 0.5);
        let g = r.skew_map(n, q, 0.5);
        let lhs = to_derivation(&e(nr_bracket(&f, &g))?);
        let rhs = e(der_bracket(&to_derivation(&f), &to_derivation(&g)))?;
        // Two vectors bracket into the zero space of arity −1, labelled differently on each side.
        let both_zero = p == 0 && q == 0 && lhs.is_zero() && rhs.is_zero();
        ensure(both_zero || lhs == rhs, || format!("instance {t}: D([F,G]_a) ≠ [D_F, D_G]"))?;

        let n3 = 2 + r.index(2);
        let (k1, k2) = (r.index(3) as i64 - 1, r.index(3) as i64 - 1);
        let d1 = r.derivation(n3, k1, 0.5);
        let d2 = r.derivation(n3, k2, 0.5);
        let lhs = v_map(&e(der_bracket(&d1, &d2))?);
        let rhs = e(schouten_bracket(&v_map(&d1), &v_map(&d2)))?;
        ensure(lhs == rhs, || format!("instance {t}: V([D,D']) ≠ [V_D, V_D']_S"))?;

        let (a, b) = (r.index(4), r.index(4));
        let fm = r.multimap(n3, a, 0.3);
        let gm = r.multimap(n3, b, 0.3);
        let lhs = skew_symmetrize(&e(gerstenhaber_bracket(&fm, &gm))?);
        let rhs = e(nr_bracket(&skew_symmetrize(&fm), &skew_symmetrize(&gm)))?;
        ensure(lhs == rhs, || format!("instance {t}: A([F,G]) ≠ [A(F), A(G)]_a"))?;
    }
    Ok(format!("{instances} instances each of the D-map, V-map and skew-symmetrization laws"))
}

fn trace_of(alg: &AssociativeAlgebraDef, v: &[Scalar]) -> Rational {
    let tau = alg.trace().expect("trace");
    v.iter().zip(tau).map(|(x, t)| x.as_rational().expect("rational") * t).sum()
}

fn ordered_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n)
                    .filter(|i| !t.contains(i))
                    .map(|i| {
                        let mut u = t.clone();
                        u.push(i);
                        u
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn criterion_12() -> Outcome {
    let mut r = RandomSource::new(0x5eed_0012);
    let mut brackets = 0;
    for (m, maxk) in [(2usize, 1usize), (3, 2)] {
        let alg = AssociativeAlgebraDef::gl(m);
        let n = alg.dim();
        for _ in 0..20 {
            let (p, q) = (r.index(3), r.index(3));
            let f = r.skew_map(n, p, 0.2);
            let g = r.skew_map(n, q, 0.2);
            let fg = e(times_product(&f, &g, &alg))?;
            let gf = e(times_product(&g, &f, &alg))?;
            let s = if (p * q) % 2 == 0 { 1 } else { -1 };
            let br = e(fg.sub(&gf.scale(&Scalar::int(s))))?;
            ensure(e(trace_lift(&br, &alg))?.is_zero(), || format!("gl{m}: Tr([F,G]_×) ≠ 0"))?;
            brackets += 1;
        }
        for k in 1..=m {
            let a = e(alg.standard_polynomial(2 * k))?;
            ensure(e(trace_lift(&a, &alg))?.is_zero(), || format!("gl{m}: Tr(A_{}) ≠ 0", 2 * k))?;
        }
        for k in 1..=maxk {
            let odd = e(alg.standard_polynomial(2 * k + 1))?;
            let even = e(alg.standard_polynomial(2 * k))?;
            for t in ordered_tuples(n, 2 * k + 1) {
                let lhs = trace_of(&alg, &odd.eval(&t));
                let v: Vec<Rational> = even.eval(&t[..2 * k]).iter().map(|x| x.as_rational().expect("rational").clone()).collect();
                let mut y = vec![Rational::from_integer(0.into()); n];
                y[t[2 * k]] = Rational::from_integer(1.into());
                let prod: Vec<Scalar> = alg.mul(&v, &y).into_iter().map(Scalar::Rat).collect();
                let rhs = trace_of(&alg, &prod) * Rational::from_integer(((2 * k + 1) as i64).into());
                ensure(lhs == rhs, || format!("gl{m}: trace relation fails at k={k}, tuple {t:?}"))?;
            }
        }
    }
    Ok(format!("{brackets} random Tr([F,G]_×)=0 checks; Tr(A_2k)=0; odd trace relation for k=1 (gl2), k≤2 (gl3)"))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "standard-polynomial bracket tables", criterion_1),
        (2, "Amitsur-Levitzki instances", criterion_2),
        (3, "[A_4, A_4]_a = 0 on gl3", criterion_3),
        (4, "Clifford deformation", criterion_4),
        (5, "cohomology golden values", criterion_5),
        (6, "Poisson commutativity of invariants", criterion_6),
        (7, "{a_1, a_1} = 2n", criterion_7),
        (8, "elementary classification", criterion_8),
        (9, "quadratic correspondence", criterion_9),
        (10, "cyclic machinery", criterion_10),
        (11, "homomorphism laws", criterion_11),
        (12, "trace identities", criterion_12),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, f) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS criterion {id:>2} {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
