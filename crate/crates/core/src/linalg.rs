//! Exact linear algebra over the rationals.
//!
//! Dense rank and determinant use fraction-free Bareiss elimination on integer-scaled
//! rows. Large sparse systems (cochain differentials, constructive solves) go through
//! [`SparseMatrix`], whose echelon routine keeps rows sorted by column.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// Scales a rational row by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Bareiss elimination in place; returns the rank and the sign-corrected last pivot.
fn bareiss(mut m: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt, bool) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = false;
    let mut full = true;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            full = false;
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            swaps = !swaps;
        }
        let prow = m[rank].clone();
        let pivot = prow[c].clone();
        for r in rank + 1..rows {
            let factor = m[r][c].clone();
            for j in c..cols {
                let v = &pivot * &m[r][j] - &factor * &prow[j];
                m[r][j] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    let det = if swaps { -prev } else { prev };
    (rank, det, full && rank == rows)
}

/// Rank of a dense rational matrix.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let rows = m.iter().map(|r| integer_row(r)).collect();
    bareiss(rows, cols).0
}

/// Determinant of a square rational matrix.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let scales: Vec<BigInt> = m
        .iter()
        .map(|row| row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
        .collect();
    let rows = m.iter().map(|r| integer_row(r)).collect();
    let (rank, det, _) = bareiss(rows, n);
    if rank < n {
        return Rational::zero();
    }
    let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Rational::new(det, denom)
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let (src, dst) = if r < c {
                    let (lo, hi) = a.split_at_mut(c);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[c], &mut hi[0])
                };
                for j in 0..2 * n {
                    if !src[j].is_zero() {
                        dst[j] -= &f * &src[j];
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[j] += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn transpose(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Kernel basis of a dense matrix with `cols` columns.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    SparseMatrix::from_dense(m, cols).nullspace()
}

/// Some solution of `m x = b`, or `None` when inconsistent.
pub fn solve(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    SparseMatrix::from_dense(m, cols).solve(b)
}

/// Sparse row: strictly increasing column indices, nonzero values.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    pub ncols: usize,
    pub rows: Vec<SparseRow>,
}

/// `a - f * b` on sorted sparse rows.
fn axpy(a: &SparseRow, f: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize_lead(row: &mut SparseRow) {
    let inv = row[0].1.recip();
    for e in row.iter_mut() {
        e.1 *= &inv;
    }
}

/// Row echelon form: pivot rows keyed by leading column, each with leading entry 1.
struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { pivots: HashMap::new() }
    }

    /// Reduces the leading entry until it hits a free column; returns the new pivot column.
    fn insert(&mut self, mut row: SparseRow) -> Option<usize> {
        while let Some((lead, coef)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &coef, p),
                None => {
                    normalize_lead(&mut row);
                    self.pivots.insert(lead, row);
                    return Some(lead);
                }
            }
        }
        None
    }

    /// Fully reduced rows, sorted by pivot column.
    fn rref(self) -> BTreeMap<usize, SparseRow> {
        let mut order: Vec<usize> = self.pivots.keys().copied().collect();
        order.sort_unstable();
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        let mut pivots = self.pivots;
        for &c in order.iter().rev() {
            let mut row = pivots.remove(&c).unwrap();
            let mut k = 1;
            while k < row.len() {
                let (col, coef) = row[k].clone();
                if let Some(p) = done.get(&col) {
                    row = axpy(&row, &coef, p);
                } else {
                    k += 1;
                }
            }
            done.insert(c, row);
        }
        done
    }
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    pub fn from_dense(m: &[Vec<Rational>], cols: usize) -> Self {
        let rows = m
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { ncols: cols, rows }
    }

    /// Adds a row given as unsorted `(column, value)` pairs, summing duplicates.
    pub fn push_row<I: IntoIterator<Item = (usize, Rational)>>(&mut self, entries: I) {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            debug_assert!(c < self.ncols);
            *acc.entry(c).or_insert_with(Rational::zero) += v;
        }
        self.rows
            .push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|row| {
                let mut out = vec![Rational::zero(); self.ncols];
                for (c, v) in row {
                    out[*c] = v.clone();
                }
                out
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    fn echelon(&self) -> Echelon {
        let mut order: Vec<&SparseRow> = self.rows.iter().filter(|r| !r.is_empty()).collect();
        order.sort_by_key(|r| r.len());
        let mut e = Echelon::new();
        for row in order {
            e.insert(row.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Kernel basis; each vector has a single 1 in a free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let rref = self.echelon().rref();
        (0..self.ncols)
            .filter(|c| !rref.contains_key(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[free] = Rational::one();
                for (&p, row) in &rref {
                    if let Some((_, x)) = row.iter().find(|(c, _)| *c == free) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Some solution of `self x = b` with free variables set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows.len());
        let rhs = self.ncols;
        let mut order: Vec<SparseRow> = self
            .rows
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                if !bi.is_zero() {
                    r.push((rhs, bi.clone()));
                }
                r
            })
            .filter(|r| !r.is_empty())
            .collect();
        order.sort_by_key(|r| r.len());
        let mut e = Echelon::new();
        for row in order {
            if e.insert(row) == Some(rhs) {
                return None;
            }
        }
        let mut x = vec![Rational::zero(); self.ncols];
        let mut leads: Vec<usize> = e.pivots.keys().copied().collect();
        leads.sort_unstable_by(|a, b| b.cmp(a));
        for c in leads {
            let row = &e.pivots[&c];
            let mut val = Rational::zero();
            for (j, a) in &row[1..] {
                if *j == rhs {
                    val += a;
                } else if !x[*j].is_zero() {
                    val -= a * &x[*j];
                }
            }
            x[c] = val;
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !v[*c].is_zero())
                    .fold(Rational::zero(), |acc, (c, a)| acc + a * &v[*c])
            })
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.rows.len());
        let mut out = SparseMatrix::new(other.ncols);
        for row in &self.rows {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                }
            }
            out.rows
                .push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        out
    }
}

/// Sign of a permutation given as a sequence of distinct comparable keys.
pub fn inversion_sign<T: Ord>(seq: &[T]) -> i32 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Whether every entry of the vector is zero.
pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Largest absolute numerator in a vector, for diagnostics.
pub fn max_abs_numer(v: &[Rational]) -> BigInt {
    v.iter()
        .map(|x| x.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_determinant() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(determinant(&a), rat(0));
        let b = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(determinant(&b), rat(5));
        let c = vec![vec![frac(1, 2), rat(1)], vec![rat(1), frac(1, 3)]];
        assert_eq!(determinant(&c), frac(1, 6) - rat(1));
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&swap), rat(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let a = vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), frac(1, 2)],
        ];
        let inv = inverse(&a).unwrap();
        let id = mat_mul(&a, &inv);
        for (i, row) in id.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { rat(1) } else { rat(0) });
            }
        }
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ker = nullspace(&a, 4);
        assert_eq!(ker.len(), 4 - rank(&a));
        for v in &ker {
            assert!(is_zero_vec(&mat_vec(&a, v)));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = solve(&a, &[rat(3), rat(1), rat(4)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert!(solve(&a, &[rat(3), rat(1), rat(5)]).is_none());
    }

    #[test]
    fn sparse_rank_matches_bareiss() {
        let a = m(&[&[0, 2, 0, 1], &[1, 0, 0, 0], &[1, 2, 0, 1], &[0, 0, 3, 0]]);
        assert_eq!(SparseMatrix::from_dense(&a, 4).rank(), rank(&a));
    }
}
