//! Dense Smith normal form over a generic integer scalar.
//!
//! Every arithmetic step is checked; [`try_smith_normal_form`] returns `None`
//! when a machine integer would overflow, so callers can retry over
//! [`crate::Int`].

use num_traits::{One, Zero};

use crate::scalar::IntegerScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntegerScalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(l, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(dst, j).checked_sub(&q.checked_mul(s)?)?;
            self.set(dst, j, v);
        }
        Some(())
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let v = self.get(i, dst).checked_sub(&q.checked_mul(s)?)?;
            self.set(i, dst, v);
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

/// `u * m * v = d` with `d` diagonal, `d[0] | d[1] | ...`, `u`, `v` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm<T> {
    pub u: DenseMatrix<T>,
    pub d: DenseMatrix<T>,
    pub v: DenseMatrix<T>,
}

impl<T: IntegerScalar> SmithNormalForm<T> {
    /// The nonzero diagonal entries, all positive.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Transforms<T> {
    u: Option<DenseMatrix<T>>,
    v: Option<DenseMatrix<T>>,
}

impl<T: IntegerScalar> Transforms<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }
    fn row_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        match &mut self.u {
            Some(u) => u.row_axpy(dst, src, q),
            None => Some(()),
        }
    }
    fn col_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        match &mut self.v {
            Some(v) => v.col_axpy(dst, src, q),
            None => Some(()),
        }
    }
    fn negate_row(&mut self, i: usize) {
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }
}

fn smallest_nonzero<T: IntegerScalar>(a: &DenseMatrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|b| ax < b.2) {
                let one = ax.is_one();
                best = Some((i, j, ax));
                if one {
                    let b = best.unwrap();
                    return Some((b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

/// Diagonalises `a` in place; the diagonal ends up with positive entries in
/// divisibility order.
fn diagonalize<T: IntegerScalar>(a: &mut DenseMatrix<T>, tr: &mut Transforms<T>) -> Option<()> {
    let n = a.rows.min(a.cols);
    for t in 0..n {
        let Some((pi, pj)) = smallest_nonzero(a, t) else { break };
        a.swap_rows(t, pi);
        tr.swap_rows(t, pi);
        a.swap_cols(t, pj);
        tr.swap_cols(t, pj);
        loop {
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..a.rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).clone() / p.clone();
                if !q.is_zero() {
                    a.row_axpy(i, t, &q)?;
                    tr.row_axpy(i, t, &q)?;
                }
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..a.cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).clone() / p.clone();
                if !q.is_zero() {
                    a.col_axpy(j, t, &q)?;
                    tr.col_axpy(j, t, &q)?;
                }
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder smaller than the pivot survived; move it to the pivot
                let mut best: Option<(bool, usize, T)> = None;
                for i in t + 1..a.rows {
                    let x = a.get(i, t);
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                        best = Some((true, i, x.abs()));
                    }
                }
                for j in t + 1..a.cols {
                    let x = a.get(t, j);
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                        best = Some((false, j, x.abs()));
                    }
                }
                let (is_row, idx, _) = best.unwrap();
                if is_row {
                    a.swap_rows(t, idx);
                    tr.swap_rows(t, idx);
                } else {
                    a.swap_cols(t, idx);
                    tr.swap_cols(t, idx);
                }
                continue;
            }
            // row t and column t are clear; enforce divisibility of the rest
            let mut bad_row = None;
            'scan: for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if !(a.get(i, j).clone() % p.clone()).is_zero() {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    let minus_one = -T::one();
                    a.row_axpy(t, i, &minus_one)?;
                    tr.row_axpy(t, i, &minus_one)?;
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            tr.negate_row(t);
        }
    }
    Some(())
}

/// Smith normal form with transforms, or `None` on machine-integer overflow.
pub fn try_smith_normal_form<T: IntegerScalar>(m: &DenseMatrix<T>) -> Option<SmithNormalForm<T>> {
    let mut d = m.clone();
    let mut tr = Transforms { u: Some(DenseMatrix::identity(m.rows)), v: Some(DenseMatrix::identity(m.cols)) };
    diagonalize(&mut d, &mut tr)?;
    let snf = SmithNormalForm { u: tr.u.unwrap(), d, v: tr.v.unwrap() };
    debug_assert!(snf_holds(m, &snf), "Smith normal form post-condition failed");
    Some(snf)
}

/// Smith normal form over arbitrary precision integers.
pub fn smith_normal_form(m: &DenseMatrix<crate::Int>) -> SmithNormalForm<crate::Int> {
    try_smith_normal_form(m).expect("arbitrary precision arithmetic cannot overflow")
}

/// Invariant factors only, skipping the transforms.
pub fn try_dense_invariant_factors<T: IntegerScalar>(m: &DenseMatrix<T>) -> Option<Vec<T>> {
    let mut d = m.clone();
    let mut tr = Transforms { u: None, v: None };
    diagonalize(&mut d, &mut tr)?;
    Some((0..d.rows.min(d.cols)).map(|i| d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect())
}

/// Checks `u * m * v = d`, diagonality, divisibility and that `u`, `v`
/// have determinant ±1.
pub fn snf_holds<T: IntegerScalar>(m: &DenseMatrix<T>, snf: &SmithNormalForm<T>) -> bool {
    let d = &snf.d;
    if snf.u.mul(m).mul(&snf.v) != *d {
        return false;
    }
    for i in 0..d.rows {
        for j in 0..d.cols {
            if i != j && !d.get(i, j).is_zero() {
                return false;
            }
        }
    }
    let diag: Vec<T> = (0..d.rows.min(d.cols)).map(|i| d.get(i, i).clone()).collect();
    for w in diag.windows(2) {
        if w[0].is_negative() || w[1].is_negative() {
            return false;
        }
        let ok = if w[0].is_zero() { w[1].is_zero() } else { (w[1].clone() % w[0].clone()).is_zero() };
        if !ok {
            return false;
        }
    }
    determinant_is_unit(&snf.u) && determinant_is_unit(&snf.v)
}

/// Exact determinant test via fraction-free (Bareiss) elimination over `Int`.
fn determinant_is_unit<T: IntegerScalar>(m: &DenseMatrix<T>) -> bool {
    use crate::Int;
    let n = m.rows;
    let mut a: Vec<Vec<Int>> =
        (0..n).map(|i| (0..n).map(|j| m.get(i, j).to_string().parse::<Int>().expect("integer")).collect()).collect();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return false };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { Int::one() } else { sign * &a[n - 1][n - 1] };
    det.is_one() || (-det).is_one()
}
