//! Matrices over `Z/m` for composite `m`, and the Howell normal form.
//!
//! The Howell form of a matrix is the unique echelon generating set of its
//! row span in which each pivot divides `m`, entries above a pivot are
//! reduced modulo it, and for every `j` the rows vanishing on the first `j`
//! columns span every span element vanishing there. That last property makes
//! greedy reduction a complete membership test even when `m` is not prime.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Row-major matrix over `Z/m`, entries in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::RingMismatch("Howell arithmetic needs a modulus m >= 1".into()));
        }
        Ok(ModMatrix { modulus, rows, cols, data: vec![0; rows * cols] })
    }

    pub fn identity(modulus: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(modulus, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        Ok(m)
    }

    /// Builds a matrix from signed entries, reducing them modulo `modulus`.
    pub fn from_rows(modulus: u64, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(modulus, 0, cols)?;
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            m.push_row(r.iter().map(|&v| v.rem_euclid(modulus as i64) as u64).collect());
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<u64>) {
        assert_eq!(row.len(), self.cols);
        debug_assert!(row.iter().all(|&v| v < self.modulus));
        self.data.extend(row);
        self.rows += 1;
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.rows);
        let m = self.modulus;
        let mut out = vec![0u64; self.cols];
        for (r, &xr) in x.iter().enumerate() {
            if xr == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o = add_mod(*o, mul_mod(xr, a, m), m);
            }
        }
        out
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b)` over the integers.
fn xgcd_i(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn to_residue(v: i128, m: u64) -> u64 {
    v.rem_euclid(m as i128) as u64
}

/// A unit `u` of `Z/m` with `u a = gcd(a, m) (mod m)`.
fn normalizing_unit(a: u64, m: u64) -> u64 {
    let g = a.gcd(&m);
    let (a1, m1) = (a / g, m / g);
    let base = if m1 == 1 {
        0
    } else {
        let (_, s, _) = xgcd_i(a1 as i128, m1 as i128);
        to_residue(s, m1)
    };
    let mut u = base;
    while u.gcd(&m) != 1 {
        u += m1;
    }
    u % m
}

fn row_combine(rows: &mut [Vec<u64>], i: usize, j: usize, coef: [u64; 4], m: u64) {
    let [s, t, p, q] = coef;
    for c in 0..rows[i].len() {
        let (a, b) = (rows[i][c], rows[j][c]);
        if a == 0 && b == 0 {
            continue;
        }
        rows[i][c] = add_mod(mul_mod(s, a, m), mul_mod(t, b, m), m);
        rows[j][c] = add_mod(mul_mod(p, a, m), mul_mod(q, b, m), m);
    }
}

/// Howell elimination on the first `pivot_cols` columns of `rows`.
///
/// Returns the pivot rows (in echelon order, with their pivot columns)
/// followed by the remaining rows, which vanish on the processed columns.
/// Row operations act on full rows, so trailing columns may carry a
/// transform.
fn howell_rows(mut rows: Vec<Vec<u64>>, m: u64, pivot_cols: usize) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        // `rows` may grow as annihilator rows are appended.
        let mut i = r + 1;
        while i < rows.len() {
            if r >= rows.len() {
                break;
            }
            let b = rows[i][c];
            if b != 0 {
                let a = rows[r][c];
                let (g, s, t) = xgcd_i(a as i128, b as i128);
                let p = to_residue(-(b as i128 / g), m);
                let q = to_residue(a as i128 / g, m);
                row_combine(&mut rows, r, i, [to_residue(s, m), to_residue(t, m), p, q], m);
            }
            i += 1;
        }
        if r >= rows.len() || rows[r][c] == 0 {
            continue;
        }
        let u = normalizing_unit(rows[r][c], m);
        for v in rows[r].iter_mut() {
            *v = mul_mod(*v, u, m);
        }
        let pivot = rows[r][c];
        for k in 0..r {
            let q = rows[k][c] / pivot;
            if q != 0 {
                let nq = neg_mod(q % m, m);
                let (head, tail) = rows.split_at_mut(r);
                for (x, &y) in head[k].iter_mut().zip(tail[0].iter()) {
                    *x = add_mod(*x, mul_mod(nq, y, m), m);
                }
            }
        }
        let ann = m / pivot;
        if ann != m && ann != 1 {
            let extra: Vec<u64> = rows[r].iter().map(|&v| mul_mod(v, ann, m)).collect();
            if extra.iter().any(|&v| v != 0) {
                rows.push(extra);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// The Howell form of `mat` (zero rows dropped).
pub fn howell_form(mat: &ModMatrix) -> ModMatrix {
    let m = mat.modulus;
    let (rows, pivots) = howell_rows(mat.row_vectors(), m, mat.cols);
    let mut h = ModMatrix { modulus: m, rows: 0, cols: mat.cols, data: Vec::new() };
    for row in rows.into_iter().take(pivots.len()) {
        h.push_row(row);
    }
    h
}

/// Howell form together with a transform: `transform * mat = form`.
#[derive(Debug, Clone)]
pub struct HowellDecomposition {
    pub form: ModMatrix,
    pub transform: ModMatrix,
    pub pivots: Vec<usize>,
}

pub fn howell_with_transform(mat: &ModMatrix) -> HowellDecomposition {
    let (m, n, k) = (mat.modulus, mat.rows, mat.cols);
    let aug: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            let mut row = mat.row(r).to_vec();
            row.extend((0..n).map(|j| u64::from(j == r) % m));
            row
        })
        .collect();
    let (rows, pivots) = howell_rows(aug, m, k);
    let mut form = ModMatrix { modulus: m, rows: 0, cols: k, data: Vec::new() };
    let mut transform = ModMatrix { modulus: m, rows: 0, cols: n, data: Vec::new() };
    for row in rows.into_iter().take(pivots.len()) {
        form.push_row(row[..k].to_vec());
        transform.push_row(row[k..].to_vec());
    }
    HowellDecomposition { form, transform, pivots }
}

/// Greedy reduction of `v` against a Howell form; `None` if `v` is outside the span.
fn howell_coordinates(form: &ModMatrix, pivots: &[usize], v: &[u64]) -> Option<Vec<u64>> {
    let m = form.modulus;
    let mut rest = v.to_vec();
    let mut coeffs = Vec::with_capacity(pivots.len());
    for (r, &c) in pivots.iter().enumerate() {
        let p = form.get(r, c);
        if rest[c] % p != 0 {
            return None;
        }
        let q = rest[c] / p;
        if q != 0 {
            let nq = neg_mod(q, m);
            for (x, &y) in rest.iter_mut().zip(form.row(r)) {
                *x = add_mod(*x, mul_mod(nq, y, m), m);
            }
        }
        coeffs.push(q);
    }
    rest.iter().all(|&x| x == 0).then_some(coeffs)
}

/// Some `x` with `x * mat = v` over `Z/m`, or `None` if `v` is not in the row span.
pub fn solve_in_span(mat: &ModMatrix, v: &[u64]) -> Result<Option<Vec<u64>>> {
    if v.len() != mat.cols {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against {} columns",
            v.len(),
            mat.cols
        )));
    }
    if let Some(&bad) = v.iter().find(|&&x| x >= mat.modulus) {
        return Err(Error::RingMismatch(format!(
            "entry {bad} is not a residue modulo {}",
            mat.modulus
        )));
    }
    let dec = howell_with_transform(mat);
    Ok(howell_coordinates(&dec.form, &dec.pivots, v).map(|y| dec.transform.vec_mul(&y)))
}

/// Generators of `{x : x * mat = 0}` over `Z/m`.
pub fn left_kernel(mat: &ModMatrix) -> ModMatrix {
    let (m, n, k) = (mat.modulus, mat.rows, mat.cols);
    let aug: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            let mut row = mat.row(r).to_vec();
            row.extend((0..n).map(|j| u64::from(j == r) % m));
            row
        })
        .collect();
    // Eliminating over all columns gives the Howell property at column k,
    // so the rows vanishing on the first k columns span the kernel.
    let (rows, pivots) = howell_rows(aug, m, k + n);
    let mut ker = ModMatrix { modulus: m, rows: 0, cols: n, data: Vec::new() };
    for row in rows.into_iter().take(pivots.len()) {
        if row[..k].iter().all(|&v| v == 0) {
            ker.push_row(row[k..].to_vec());
        }
    }
    ker
}
