use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Square matrix with exact rational entries; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: BTreeMap::new() }
    }

    /// Matrix unit `e_ij`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(dim);
        m.set(i, j, BigRational::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        assert!(i < self.dim && j < self.dim, "entry ({i},{j}) outside {0}x{0}", self.dim);
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &BigRational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero(self.dim);
        if !s.is_zero() {
            for (&k, v) in &self.entries {
                out.entries.insert(k, v * s);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (&(i, j), v) in &self.entries {
            out.entries.insert((j, i), v.clone());
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        self.entries
            .iter()
            .filter(|((i, j), _)| i == j)
            .fold(BigRational::zero(), |a, (_, v)| a + v)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Row-major flattening, used for span computations.
    pub fn flatten(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim * self.dim];
        for (&(i, j), x) in &self.entries {
            v[i * self.dim + j] = x.clone();
        }
        v
    }
}

/// `tr(ab)` without forming the product.
pub fn trace_product(a: &SparseMatrix, b: &SparseMatrix) -> BigRational {
    let mut t = BigRational::zero();
    for (&(i, j), x) in &a.entries {
        if let Some(y) = b.entries.get(&(j, i)) {
            t += x * y;
        }
    }
    t
}

impl Add for &SparseMatrix {
    type Output = SparseMatrix;
    fn add(self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.entries {
            out.add_at(i, j, v);
        }
        out
    }
}

impl Sub for &SparseMatrix {
    type Output = SparseMatrix;
    fn sub(self, rhs: &SparseMatrix) -> SparseMatrix {
        self + &rhs.scale(&-BigRational::one())
    }
}

impl Mul for &SparseMatrix {
    type Output = SparseMatrix;
    fn mul(self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = SparseMatrix::zero(self.dim);
        for (&(i, k), x) in &self.entries {
            for (&(_, j), y) in rhs.entries.range((k, 0)..(k + 1, 0)) {
                out.add_at(i, j, &(x * y));
            }
        }
        out
    }
}

/// Expresses vectors as combinations of a fixed spanning list via a reduced
/// row echelon form of the list (kept as pivot rows with their provenance).
#[derive(Clone, Debug)]
pub struct SpanSolver {
    len: usize,
    /// (pivot column, reduced row, combination of the input vectors giving it)
    rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)>,
    independent: Vec<usize>,
}

impl SpanSolver {
    pub fn new(vectors: &[Vec<BigRational>]) -> Self {
        let count = vectors.len();
        let len = vectors.first().map_or(0, Vec::len);
        let mut solver = Self { len, rows: Vec::new(), independent: Vec::new() };
        for (idx, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), len, "vectors must share a length");
            let mut combo = vec![BigRational::zero(); count];
            combo[idx] = BigRational::one();
            let (row, combo) = solver.reduce(v.clone(), combo);
            if let Some(p) = row.iter().position(|x| !x.is_zero()) {
                let inv = row[p].recip();
                let row: Vec<_> = row.iter().map(|x| x * &inv).collect();
                let combo: Vec<_> = combo.iter().map(|x| x * &inv).collect();
                // keep the echelon fully reduced
                for (_, r, c) in solver.rows.iter_mut() {
                    let f = r[p].clone();
                    if !f.is_zero() {
                        for (a, b) in r.iter_mut().zip(&row) {
                            *a -= &f * b;
                        }
                        for (a, b) in c.iter_mut().zip(&combo) {
                            *a -= &f * b;
                        }
                    }
                }
                solver.rows.push((p, row, combo));
                solver.independent.push(idx);
            }
        }
        solver
    }

    fn reduce(
        &self,
        mut v: Vec<BigRational>,
        mut combo: Vec<BigRational>,
    ) -> (Vec<BigRational>, Vec<BigRational>) {
        for (p, r, c) in &self.rows {
            let f = v[*p].clone();
            if !f.is_zero() {
                for (a, b) in v.iter_mut().zip(r) {
                    *a -= &f * b;
                }
                for (a, b) in combo.iter_mut().zip(c) {
                    *a -= &f * b;
                }
            }
        }
        (v, combo)
    }

    /// Indices of a maximal independent subset, chosen greedily in input order.
    pub fn independent(&self) -> &[usize] {
        &self.independent
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Some coefficients `c` with `Σ c_i v_i = target`, or `None` outside the span.
    /// Coefficients only touch the independent subset.
    pub fn solve(&self, target: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(target.len(), self.len);
        let count = self.rows.first().map_or(0, |r| r.2.len());
        let mut coeffs = vec![BigRational::zero(); count];
        let mut rest = target.to_vec();
        for (p, r, c) in &self.rows {
            let f = rest[*p].clone();
            if !f.is_zero() {
                for (a, b) in rest.iter_mut().zip(r) {
                    *a -= &f * b;
                }
                for (a, b) in coeffs.iter_mut().zip(c) {
                    *a += &f * b;
                }
            }
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }
}

/// Inverse of a dense square matrix, or `None` when singular.
pub fn invert_dense(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
