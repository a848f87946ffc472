//! Dense matrices, integer Smith normal form and exact elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [T] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    pub fn mul(&self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Matrix::<T>::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let v = out.get(r, c).clone() + a.clone() * o.get(k, c).clone();
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Matrix<BigInt>,
    pub d: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
}

impl Smith {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn row_axpy(m: &mut Matrix<BigInt>, target: usize, src: usize, q: &BigInt) {
    for c in 0..m.cols {
        let s = m.get(src, c).clone();
        if !s.is_zero() {
            let v = m.get(target, c) - q * s;
            m.set(target, c, v);
        }
    }
}

fn col_axpy(m: &mut Matrix<BigInt>, target: usize, src: usize, q: &BigInt) {
    for r in 0..m.rows {
        let s = m.get(r, src).clone();
        if !s.is_zero() {
            let v = m.get(r, target) - q * s;
            m.set(r, target, v);
        }
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &Matrix<BigInt>) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = Matrix::<BigInt>::identity(m);
    let mut v = Matrix::<BigInt>::identity(n);
    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block goes to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for r in t..m {
            for c in t..n {
                let x = d.get(r, c);
                if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs() < d.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        d.swap_rows(t, br);
        u.swap_rows(t, br);
        d.swap_cols(t, bc);
        v.swap_cols(t, bc);
        loop {
            let mut dirty = false;
            for r in t + 1..m {
                if !d.get(r, t).is_zero() {
                    let q = d.get(r, t) / d.get(t, t);
                    row_axpy(&mut d, r, t, &q);
                    row_axpy(&mut u, r, t, &q);
                    dirty |= !d.get(r, t).is_zero();
                }
            }
            for c in t + 1..n {
                if !d.get(t, c).is_zero() {
                    let q = d.get(t, c) / d.get(t, t);
                    col_axpy(&mut d, c, t, &q);
                    col_axpy(&mut v, c, t, &q);
                    dirty |= !d.get(t, c).is_zero();
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it in
                let mut best = (t, t);
                for r in t + 1..m {
                    let x = d.get(r, t);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (r, t);
                    }
                }
                for c in t + 1..n {
                    let x = d.get(t, c);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (t, c);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let p = d.get(t, t).clone();
            let mut bad = None;
            'scan: for r in t + 1..m {
                for c in t + 1..n {
                    if !d.get(r, c).is_multiple_of(&p) {
                        bad = Some(r);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(r) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, r, &minus_one);
                    row_axpy(&mut u, t, r, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            for c in 0..n {
                let x = -d.get(t, c).clone();
                d.set(t, c, x);
            }
            for c in 0..m {
                let x = -u.get(t, c).clone();
                u.set(t, c, x);
            }
        }
    }
    Smith { u, d, v }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(a: &Matrix<BigInt>) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, v);
            }
        }
        prev = m.get(k, k).clone();
    }
    sign * m.get(n - 1, n - 1)
}

/// Rank of an integer matrix.
pub fn integer_rank(a: &Matrix<BigInt>) -> usize {
    smith_normal_form(a).rank()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m.get(r, c).inv();
        for x in m.row_mut(r).iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m.row(r).to_vec();
        for i in 0..m.rows() {
            if i != r && !m.get(i, c).is_zero() {
                let f = m.get(i, c).clone();
                for (x, y) in m.row_mut(i).iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        x.sub_mul(&f, y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); m.cols()];
        v[free] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -w.get(r, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Incrementally built echelon basis of a subspace of `F^dim`.
///
/// Pivot rows are stored sparse and normalized to a leading one.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    dim: usize,
    pivots: Vec<Option<SparseVec<F>>>,
    rank: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            pivots: vec![None; dim],
            rank: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduce a dense vector against the basis; returns the first nonzero
    /// index of the remainder.
    pub fn reduce(&self, v: &mut [F]) -> Option<usize> {
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            match &self.pivots[i] {
                Some(row) => {
                    let c = v[i].clone();
                    for (j, x) in row {
                        v[*j].sub_mul(&c, x);
                    }
                }
                None => return Some(i),
            }
        }
        None
    }

    /// Insert a dense vector; returns `true` if it enlarged the span.
    pub fn insert_dense(&mut self, mut v: Vec<F>) -> bool {
        let Some(lead) = self.reduce(&mut v) else {
            return false;
        };
        let inv = v[lead].inv();
        let row: SparseVec<F> = v
            .into_iter()
            .enumerate()
            .skip(lead)
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x * inv.clone()))
            .collect();
        self.pivots[lead] = Some(row);
        self.rank += 1;
        true
    }

    pub fn insert_sparse(&mut self, v: &[(usize, F)]) -> bool {
        let mut dense = vec![F::zero(); self.dim];
        for (i, x) in v {
            dense[*i] = x.clone();
        }
        self.insert_dense(dense)
    }

    pub fn contains_dense(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }
}

/// Rank of a list of sparse vectors, stopping early once `target` is reached.
pub fn sparse_rank<F: Field>(
    dim: usize,
    vectors: impl IntoIterator<Item = SparseVec<F>>,
    target: usize,
) -> usize {
    let mut e = Echelon::new(dim);
    if target == 0 {
        return 0;
    }
    for v in vectors {
        e.insert_sparse(&v);
        if e.rank() >= target {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use proptest::prelude::*;

    fn bi(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    fn gcd_of_minors(a: &Matrix<BigInt>, k: usize) -> BigInt {
        // brute force over all k x k minors
        let rows: Vec<usize> = (0..a.rows()).collect();
        let cols: Vec<usize> = (0..a.cols()).collect();
        let mut g = BigInt::zero();
        for rs in subsets(&rows, k) {
            for cs in subsets(&cols, k) {
                let m = Matrix::from_rows(
                    rs.iter()
                        .map(|&r| cs.iter().map(|&c| a.get(r, c).clone()).collect())
                        .collect(),
                    k,
                );
                g = g.gcd(&determinant(&m));
            }
        }
        g
    }

    fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            for mut rest in subsets(&items[i + 1..], k - 1) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn snf_small_examples() {
        let s = smith_normal_form(&bi(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
        let s = smith_normal_form(&Matrix::identity(3));
        assert_eq!(s.d, Matrix::identity(3));
        let z = Matrix::<BigInt>::zeros(2, 3);
        assert!(smith_normal_form(&z).d.is_zero());
    }

    #[test]
    fn nullspace_over_rationals() {
        let m = Matrix::from_rows(
            vec![
                vec![Rational::from(1), Rational::from(2), Rational::from(3)],
                vec![Rational::from(2), Rational::from(4), Rational::from(6)],
            ],
            3,
        );
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in 0..2 {
                let s = (0..3).fold(Rational::zero(), |acc, c| {
                    acc + m.get(r, c).clone() * v[c].clone()
                });
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn echelon_tracks_span() {
        type F = Fp<7>;
        let mut e = Echelon::<F>::new(3);
        assert!(e.insert_sparse(&[(0, F::new(1)), (1, F::new(2))]));
        assert!(!e.insert_sparse(&[(0, F::new(3)), (1, F::new(6))]));
        assert!(e.insert_sparse(&[(1, F::new(1))]));
        assert!(e.contains_dense(&[F::new(5), F::new(4), F::new(0)]));
        assert_eq!(e.rank(), 2);
    }

    proptest! {
        #[test]
        fn snf_matches_minor_gcds(entries in prop::collection::vec(-6i64..7, 9)) {
            let rows: Vec<&[i64]> = entries.chunks(3).collect();
            let a = bi(&rows);
            let s = smith_normal_form(&a);
            prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
            prop_assert!(determinant(&s.u).abs().is_one());
            prop_assert!(determinant(&s.v).abs().is_one());
            let f = s.invariant_factors();
            for w in f.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            let mut prod = BigInt::one();
            for k in 1..=3 {
                let g = gcd_of_minors(&a, k);
                if k <= f.len() {
                    prod *= &f[k - 1];
                    prop_assert_eq!(g, prod.clone());
                } else {
                    prop_assert!(g.is_zero());
                }
            }
        }
    }
}
