//! Seeded random instances for property checks.
//!
//! Coefficients are drawn from the pool `{−2, −1, −1/2, 0, 1/2, 1, 2}`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::derivation::GrassmannDerivation;
use crate::exterior::{masks_lex, ExteriorElement, GramMatrix};
use crate::multilinear::{MultiMap, SkewMap};
use crate::quadratic::{elem4, gl, sl, LieAlgebraDef};
use crate::scalar::{frac, rat, Rational, Scalar};
use crate::schouten::{PolyMultivector, Polynomial};

const POOL: [(i64, i64); 7] = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)];

/// A deterministic instance generator.
pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coeff(&mut self) -> Rational {
        let (a, b) = POOL[self.rng.gen_range(0..POOL.len())];
        frac(a, b)
    }

    pub fn nonzero_coeff(&mut self) -> Rational {
        loop {
            let c = self.coeff();
            if c != rat(0) {
                return c;
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Each basis monomial of degree `k` is present with probability `density`.
    pub fn form(&mut self, n: usize, k: usize, density: f64) -> ExteriorElement {
        let mut out = ExteriorElement::zero(n);
        for m in masks_lex(n, k) {
            if self.rng.gen_bool(density) {
                out.add_term(m, Scalar::Rat(self.nonzero_coeff()));
            }
        }
        out
    }

    pub fn vector(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.coeff()).collect()
    }

    pub fn skew_map(&mut self, n: usize, arity: usize, density: f64) -> SkewMap {
        let forms = (0..n).map(|_| self.form(n, arity, density)).collect();
        SkewMap::from_forms(arity, forms).expect("homogeneous forms")
    }

    /// A multilinear map with each `(inputs, output)` entry present with probability `density`.
    pub fn multimap(&mut self, n: usize, arity: usize, density: f64) -> MultiMap {
        let mut f = MultiMap::zero(n, arity);
        let total = n.pow(arity as u32);
        for code in 0..total {
            let mut c = code;
            let inputs: Vec<usize> = (0..arity)
                .map(|_| {
                    let i = c % n;
                    c /= n;
                    i
                })
                .collect();
            for o in 0..n {
                if self.rng.gen_bool(density) {
                    f.add_term(inputs.clone(), o, Scalar::Rat(self.nonzero_coeff()));
                }
            }
        }
        f
    }

    /// A quadratic Lie algebra of dimension at most `max_dim` (at least 1): an abelian
    /// algebra with a random form, `sl(2)`, `gl(2)`, the 4-dim elementary algebra or
    /// `sl(2)` plus a central line.
    pub fn quadratic_lie_algebra(&mut self, max_dim: usize) -> LieAlgebraDef {
        let mut options = vec![0];
        if max_dim >= 3 {
            options.push(1);
        }
        if max_dim >= 4 {
            options.extend([2, 3, 4]);
        }
        match *options.choose(&mut self.rng).expect("nonempty") {
            0 => {
                let n = self.rng.gen_range(1..=max_dim);
                let gram = self.gram(n);
                LieAlgebraDef::new(SkewMap::zero(n, 2), Some(gram)).expect("abelian")
            }
            1 => sl(2),
            2 => gl(2),
            3 => elem4(),
            _ => {
                let line = LieAlgebraDef::new(SkewMap::zero(1, 2), Some(self.gram(1))).expect("abelian");
                sl(2).direct_sum(&line).expect("orthogonal sum")
            }
        }
    }

    /// A derivation of degree `d ∈ [−1, n − 1]`.
    pub fn derivation(&mut self, n: usize, d: i64, density: f64) -> GrassmannDerivation {
        let images = (0..n).map(|_| self.form(n, (d + 1) as usize, density)).collect();
        GrassmannDerivation::new(d, images).expect("homogeneous images")
    }

    /// A nondegenerate symmetric Gram matrix: identity, hyperbolic, diagonal or a
    /// congruence `PᵀDP` by a random unipotent `P`.
    pub fn gram(&mut self, n: usize) -> GramMatrix {
        match self.rng.gen_range(0..4) {
            0 => GramMatrix::identity(n),
            1 => {
                let mut g = vec![vec![rat(0); n]; n];
                let mut i = 0;
                while i + 1 < n {
                    g[i][i + 1] = rat(1);
                    g[i + 1][i] = rat(1);
                    i += 2;
                }
                if n % 2 == 1 {
                    g[n - 1][n - 1] = rat(1);
                }
                GramMatrix::new(g).expect("hyperbolic form")
            }
            2 => {
                let g = (0..n)
                    .map(|i| {
                        let mut row = vec![rat(0); n];
                        row[i] = self.nonzero_coeff();
                        row
                    })
                    .collect();
                GramMatrix::new(g).expect("nonzero diagonal")
            }
            _ => {
                let d: Vec<Rational> = (0..n).map(|_| self.nonzero_coeff()).collect();
                let mut p = vec![vec![rat(0); n]; n];
                for (i, row) in p.iter_mut().enumerate() {
                    row[i] = rat(1);
                    for x in row.iter_mut().skip(i + 1) {
                        *x = self.coeff();
                    }
                }
                let g = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| (0..n).map(|k| &p[k][i] * &d[k] * &p[k][j]).sum())
                            .collect()
                    })
                    .collect();
                GramMatrix::new(g).expect("congruent to a nondegenerate diagonal")
            }
        }
    }

    pub fn polynomial(&mut self, n: usize, max_degree: u32, terms: usize) -> Polynomial {
        let mut p = Polynomial::zero(n);
        for _ in 0..terms {
            let d = self.rng.gen_range(0..=max_degree);
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[self.index(n)] += 1;
            }
            p.add_term(e, Scalar::Rat(self.nonzero_coeff()));
        }
        p
    }

    pub fn multivector(&mut self, n: usize, degree: usize, max_degree: u32, terms: usize) -> PolyMultivector {
        let masks = masks_lex(n, degree);
        let mut w = PolyMultivector::zero(n, degree);
        if masks.is_empty() {
            return w;
        }
        for _ in 0..terms {
            let m = *masks.choose(&mut self.rng).expect("nonempty");
            let p = self.polynomial(n, max_degree, 1);
            for (e, c) in p.terms() {
                w.add_term(e.clone(), m, c.clone());
            }
        }
        w
    }
}
