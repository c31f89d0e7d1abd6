//! Dense integer matrices: Hermite and Smith normal forms, kernels, solving.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major matrix over `Z`.
#[derive(Clone, PartialEq, Eq)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        ZMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        ZMatrix { rows, cols, data: data.iter().map(|&v| BigInt::from(v)).collect() }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ZMatrix) -> ZMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(r)) {
                *o += xr * a;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row_i <- s row_i + t row_j`, `row_j <- u row_i + v row_j` (simultaneously).
    fn combine_rows(&mut self, i: usize, j: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for c in 0..self.cols {
            let a = self[(i, c)].clone();
            let b = self[(j, c)].clone();
            if a.is_zero() && b.is_zero() {
                continue;
            }
            self[(i, c)] = s * &a + t * &b;
            self[(j, c)] = u * &a + v * &b;
        }
    }

    /// `col_i <- s col_i + t col_j`, `col_j <- u col_i + v col_j` (simultaneously).
    fn combine_cols(&mut self, i: usize, j: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for r in 0..self.rows {
            let a = self[(r, i)].clone();
            let b = self[(r, j)].clone();
            if a.is_zero() && b.is_zero() {
                continue;
            }
            self[(r, i)] = s * &a + t * &b;
            self[(r, j)] = u * &a + v * &b;
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(source, c)] * k;
            if !v.is_zero() {
                self[(target, c)] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for ZMatrix {
    type Output = BigInt;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// Bezout coefficients `(g, s, t)` with `s a + t b = g = gcd(a, b) >= 0`.
pub(crate) fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Like [`xgcd`], but when `a | b` returns `(a, 1, 0)` so that an
/// elimination step leaves the pivot row or column untouched.
fn pivot_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_multiple_of(a) {
        (a.clone(), BigInt::one(), BigInt::zero())
    } else {
        xgcd(a, b)
    }
}

/// Row-style Hermite form: `transform * m = echelon`.
#[derive(Debug, Clone)]
pub struct HermiteForm {
    pub echelon: ZMatrix,
    pub transform: ZMatrix,
    /// Pivot column of each nonzero row, in order.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows of the echelon form: a basis of the row lattice.
    pub fn basis(&self) -> ZMatrix {
        let mut b = ZMatrix::zeros(0, self.echelon.ncols());
        for r in 0..self.rank() {
            b.push_row(self.echelon.row(r).to_vec());
        }
        b
    }
}

/// Hermite normal form of the row lattice of `m`, with a unimodular transform.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hermite(m: &ZMatrix) -> HermiteForm {
    let mut h = m.clone();
    let mut u = ZMatrix::identity(m.nrows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.ncols() {
        if r == h.nrows() {
            break;
        }
        for i in r + 1..h.nrows() {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let (g, s, t) = xgcd(&a, &b);
            let (ub, va) = (-(&b / &g), &a / &g);
            h.combine_rows(r, i, &s, &t, &ub, &va);
            u.combine_rows(r, i, &s, &t, &ub, &va);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for k in 0..r {
            let q = h[(k, c)].div_floor(&p);
            if !q.is_zero() {
                h.add_row_multiple(k, r, &-&q);
                u.add_row_multiple(k, r, &-&q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm { echelon: h, transform: u, pivots }
}

/// Coefficients of `v` in the echelon basis (first `pivots.len()` rows of
/// `echelon`), or `None` if `v` is not in the lattice.
pub fn echelon_coordinates(echelon: &ZMatrix, pivots: &[usize], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coeffs = Vec::with_capacity(pivots.len());
    for (r, &c) in pivots.iter().enumerate() {
        let p = &echelon[(r, c)];
        let (q, rem) = rest[c].div_rem(p);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, e) in rest.iter_mut().zip(echelon.row(r)) {
                *x -= &q * e;
            }
        }
        coeffs.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coeffs)
}

/// Basis of `{x : x m = 0}` (rows).
pub fn left_kernel(m: &ZMatrix) -> ZMatrix {
    let hf = hermite(m);
    let mut k = ZMatrix::zeros(0, m.nrows());
    for r in hf.rank()..m.nrows() {
        k.push_row(hf.transform.row(r).to_vec());
    }
    k
}

/// Some `x` with `x m = v`, or `None`.
pub fn solve_left(m: &ZMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against {} columns",
            v.len(),
            m.ncols()
        )));
    }
    let hf = hermite(m);
    let Some(y) = echelon_coordinates(&hf.echelon, &hf.pivots, v) else {
        return Ok(None);
    };
    let mut x = vec![BigInt::zero(); m.nrows()];
    for (r, yr) in y.iter().enumerate() {
        for (xi, ui) in x.iter_mut().zip(hf.transform.row(r)) {
            *xi += yr * ui;
        }
    }
    Ok(Some(x))
}

/// `u * m * v = d` with `d` diagonal, `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: ZMatrix,
    pub d: ZMatrix,
    pub v: ZMatrix,
    pub v_inv: ZMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &ZMatrix) -> SmithForm {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut d = m.clone();
    let mut u = ZMatrix::identity(rows);
    let mut v = ZMatrix::identity(cols);
    let mut v_inv = ZMatrix::identity(cols);

    let swap_c = |d: &mut ZMatrix, v: &mut ZMatrix, vi: &mut ZMatrix, i: usize, j: usize| {
        d.swap_cols(i, j);
        v.swap_cols(i, j);
        vi.swap_rows(i, j);
    };
    // col_i, col_j <- (s col_i + t col_j, p col_i + q col_j) with sq - tp = 1.
    let comb_c = |d: &mut ZMatrix,
                  v: &mut ZMatrix,
                  vi: &mut ZMatrix,
                  i: usize,
                  j: usize,
                  s: &BigInt,
                  t: &BigInt,
                  p: &BigInt,
                  q: &BigInt| {
        d.combine_cols(i, j, s, t, p, q);
        v.combine_cols(i, j, s, t, p, q);
        vi.combine_rows(i, j, q, &-p, &-t, s);
    };

    for k in 0..rows.min(cols) {
        // pivot: smallest nonzero magnitude in the trailing block
        let Some((pr, pc)) = (k..rows)
            .flat_map(|r| (k..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !d[(r, c)].is_zero())
            .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()))
        else {
            break;
        };
        d.swap_rows(k, pr);
        u.swap_rows(k, pr);
        swap_c(&mut d, &mut v, &mut v_inv, k, pc);

        loop {
            let mut changed = false;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let a = d[(k, k)].clone();
                let b = d[(i, k)].clone();
                let (g, s, t) = pivot_gcd(&a, &b);
                let (ub, va) = (-(&b / &g), &a / &g);
                d.combine_rows(k, i, &s, &t, &ub, &va);
                u.combine_rows(k, i, &s, &t, &ub, &va);
                changed = true;
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let a = d[(k, k)].clone();
                let b = d[(k, j)].clone();
                let (g, s, t) = pivot_gcd(&a, &b);
                let (ub, va) = (-(&b / &g), &a / &g);
                comb_c(&mut d, &mut v, &mut v_inv, k, j, &s, &t, &ub, &va);
                changed = true;
            }
            if changed {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = d[(k, k)].clone();
            let bad = (k + 1..rows)
                .flat_map(|r| (k + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !d[(r, c)].is_multiple_of(&p));
            match bad {
                Some((r, _)) => {
                    d.add_row_multiple(k, r, &BigInt::one());
                    u.add_row_multiple(k, r, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    SmithForm { u, d, v, v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_smith(m: &ZMatrix) -> Vec<BigInt> {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        assert_eq!(s.v.mul(&s.v_inv), ZMatrix::identity(m.ncols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        diag
    }

    #[test]
    fn smith_examples() {
        let d = check_smith(&ZMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);

        let z = ZMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert!(s.d.is_zero());
        assert_eq!(s.u, ZMatrix::identity(2));
        assert_eq!(s.v, ZMatrix::identity(3));

        let d = check_smith(&ZMatrix::identity(3));
        assert!(d.iter().all(One::is_one));
    }

    #[test]
    fn hermite_and_kernel() {
        let m = ZMatrix::from_i64(3, 2, &[2, 4, 3, 6, 1, 2]);
        let hf = hermite(&m);
        assert_eq!(hf.transform.mul(&m), hf.echelon);
        assert_eq!(hf.rank(), 1);
        let k = left_kernel(&m);
        assert_eq!(k.nrows(), 2);
        assert!(k.mul(&m).is_zero());
        let x = solve_left(&m, &[BigInt::from(5), BigInt::from(10)]).unwrap().unwrap();
        assert_eq!(m.vec_mul(&x), vec![BigInt::from(5), BigInt::from(10)]);
        assert!(solve_left(&m, &[BigInt::from(1), BigInt::from(3)]).unwrap().is_none());
    }

    proptest! {
        #[test]
        fn smith_invariants_hold(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-6i64..7, 16)) {
            let m = ZMatrix::from_i64(rows, cols, &seed[..rows * cols]);
            check_smith(&m);
        }

        #[test]
        fn hermite_transform_is_unimodular(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-6i64..7, 16)) {
            let m = ZMatrix::from_i64(rows, cols, &seed[..rows * cols]);
            let hf = hermite(&m);
            prop_assert_eq!(hf.transform.mul(&m), hf.echelon.clone());
            prop_assert!(hf.transform.determinant().abs().is_one());
            for r in hf.rank()..rows {
                prop_assert!(hf.echelon.row(r).iter().all(Zero::is_zero));
            }
        }
    }
}
