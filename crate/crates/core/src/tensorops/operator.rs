use crate::error::{Error, Result};

use super::field::Field;

/// Product of leg dimensions.
pub fn total_dim(legs: &[usize]) -> usize {
    legs.iter().product()
}

/// Strides of a row-major multi-index with the first leg most significant.
pub(crate) fn strides(legs: &[usize]) -> Vec<usize> {
    let mut s = vec![1; legs.len()];
    for l in (0..legs.len().saturating_sub(1)).rev() {
        s[l] = s[l + 1] * legs[l + 1];
    }
    s
}

pub(crate) fn decode(mut index: usize, legs: &[usize]) -> Vec<usize> {
    let mut c = vec![0; legs.len()];
    for l in (0..legs.len()).rev() {
        c[l] = index % legs[l];
        index /= legs[l];
    }
    c
}

pub(crate) fn encode(coords: &[usize], legs: &[usize]) -> usize {
    coords.iter().zip(legs).fold(0, |acc, (&c, &d)| acc * d + c)
}

/// A linear map between tensor products of finite-dimensional legs.
///
/// The matrix is dense, `prod(codomain) x prod(domain)`, row-major, and
/// basis indices are multi-indices with leg 1 most significant. A sparse
/// column view is kept alongside for fast application.
#[derive(Debug, Clone)]
pub struct LegOperator<F: Field> {
    field: F,
    domain: Vec<usize>,
    codomain: Vec<usize>,
    entries: Vec<F::Elem>,
    columns: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> PartialEq for LegOperator<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.domain == other.domain
            && self.codomain == other.codomain
            && self.entries == other.entries
    }
}

impl<F: Field> Eq for LegOperator<F> {}

impl<F: Field> LegOperator<F> {
    pub fn new(field: F, domain: Vec<usize>, codomain: Vec<usize>, entries: Vec<F::Elem>) -> Result<Self> {
        if domain.iter().chain(&codomain).any(|&d| d == 0) {
            return Err(Error::DimensionMismatch("leg dimensions must be positive".into()));
        }
        let (rows, cols) = (total_dim(&codomain), total_dim(&domain));
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} operator",
                entries.len()
            )));
        }
        let mut columns = vec![Vec::new(); cols];
        for (k, e) in entries.iter().enumerate() {
            if !field.is_zero(e) {
                columns[k % cols].push((k / cols, e.clone()));
            }
        }
        Ok(LegOperator { field, domain, codomain, entries, columns })
    }

    /// Square-signature operator with entries `f(row, col)`.
    pub fn from_fn(field: F, legs: Vec<usize>, f: impl Fn(usize, usize) -> F::Elem) -> Self {
        Self::from_fn_rect(field, legs.clone(), legs, f)
    }

    pub fn from_fn_rect(
        field: F,
        domain: Vec<usize>,
        codomain: Vec<usize>,
        f: impl Fn(usize, usize) -> F::Elem,
    ) -> Self {
        let (rows, cols) = (total_dim(&codomain), total_dim(&domain));
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(field, domain, codomain, entries).expect("consistent shape")
    }

    /// The operator sending basis vector `j` to basis vector `map(j)`.
    pub fn from_basis_map(
        field: F,
        domain: Vec<usize>,
        codomain: Vec<usize>,
        map: impl Fn(usize) -> usize,
    ) -> Self {
        let targets: Vec<usize> = (0..total_dim(&domain)).map(map).collect();
        let (zero, one) = (field.zero(), field.one());
        Self::from_fn_rect(field, domain, codomain, |r, c| {
            if targets[c] == r {
                one.clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn identity(field: F, legs: Vec<usize>) -> Self {
        Self::from_basis_map(field, legs.clone(), legs, |j| j)
    }

    pub fn scalar(field: F, legs: Vec<usize>, lambda: F::Elem) -> Self {
        let zero = field.zero();
        Self::from_fn(field, legs, |r, c| if r == c { lambda.clone() } else { zero.clone() })
    }

    /// Reorders legs: output leg `k` is input leg `order[k]`.
    pub fn leg_permutation(field: F, domain: Vec<usize>, order: &[usize]) -> Result<Self> {
        let n = domain.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&o| o >= n || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::InvalidInput(format!("{order:?} is not a permutation of 0..{n}")));
        }
        let codomain: Vec<usize> = order.iter().map(|&o| domain[o]).collect();
        let dom = domain.clone();
        let cod = codomain.clone();
        Ok(Self::from_basis_map(field, domain, codomain, move |j| {
            let c = decode(j, &dom);
            let out: Vec<usize> = order.iter().map(|&o| c[o]).collect();
            encode(&out, &cod)
        }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn domain_legs(&self) -> &[usize] {
        &self.domain
    }

    pub fn codomain_legs(&self) -> &[usize] {
        &self.codomain
    }

    pub fn arity(&self) -> usize {
        self.domain.len()
    }

    pub fn nrows(&self) -> usize {
        total_dim(&self.codomain)
    }

    pub fn ncols(&self) -> usize {
        total_dim(&self.domain)
    }

    pub fn is_square_signature(&self) -> bool {
        self.domain == self.codomain
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.ncols() + c]
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub(crate) fn column(&self, c: usize) -> &[(usize, F::Elem)] {
        &self.columns[c]
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ncols());
        let f = &self.field;
        let mut out = vec![f.zero(); self.nrows()];
        for (c, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (r, a) in &self.columns[c] {
                out[*r] = f.add(&out[*r], &f.mul(a, x));
            }
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LegOperator<F>) -> Result<LegOperator<F>> {
        if other.codomain != self.domain {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: inner codomain {:?} vs outer domain {:?}",
                other.codomain, self.domain
            )));
        }
        let f = &self.field;
        let (rows, cols) = (self.nrows(), other.ncols());
        let mut entries = vec![f.zero(); rows * cols];
        for c in 0..cols {
            let col = self.apply(&other.dense_column(c));
            for (r, v) in col.into_iter().enumerate() {
                entries[r * cols + c] = v;
            }
        }
        LegOperator::new(f.clone(), other.domain.clone(), self.codomain.clone(), entries)
    }

    fn dense_column(&self, c: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.nrows()];
        for (r, a) in &self.columns[c] {
            v[*r] = a.clone();
        }
        v
    }

    /// Kronecker product; the legs of `self` come first.
    pub fn tensor(&self, other: &LegOperator<F>) -> LegOperator<F> {
        let f = &self.field;
        let domain: Vec<usize> = self.domain.iter().chain(&other.domain).copied().collect();
        let codomain: Vec<usize> = self.codomain.iter().chain(&other.codomain).copied().collect();
        let (r2, c2) = (other.nrows(), other.ncols());
        Self::from_fn_rect(f.clone(), domain, codomain, |r, c| {
            f.mul(self.get(r / r2, c / c2), other.get(r % r2, c % c2))
        })
    }

    /// Regroups legs without touching the matrix, e.g. `(2,2,2) -> (4,2)`.
    pub fn regroup(&self, domain: Vec<usize>, codomain: Vec<usize>) -> Result<LegOperator<F>> {
        if total_dim(&domain) != self.ncols() || total_dim(&codomain) != self.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot regroup {:?} -> {:?} as {domain:?} -> {codomain:?}",
                self.domain, self.codomain
            )));
        }
        LegOperator::new(self.field.clone(), domain, codomain, self.entries.clone())
    }

    /// Inverse by Gauss-Jordan elimination; `Singular` if none exists.
    pub fn inverse(&self) -> Result<LegOperator<F>> {
        let n = self.nrows();
        if n != self.ncols() {
            return Err(Error::Singular(format!("{}x{} matrix is not square", n, self.ncols())));
        }
        let f = &self.field;
        let mut a: Vec<Vec<F::Elem>> = (0..n)
            .map(|r| {
                let mut row: Vec<F::Elem> = (0..n).map(|c| self.get(r, c).clone()).collect();
                row.extend((0..n).map(|c| if c == r { f.one() } else { f.zero() }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !f.is_zero(&a[r][c]))
                .ok_or_else(|| Error::Singular(format!("no pivot in column {c}")))?;
            a.swap(c, p);
            let inv = f.inv(&a[c][c]).expect("nonzero pivot");
            for x in a[c].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = a[c].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == c || f.is_zero(&row[c]) {
                    continue;
                }
                let k = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        let entries = a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        LegOperator::new(f.clone(), self.codomain.clone(), self.domain.clone(), entries)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square_signature() && *self == Self::identity(self.field.clone(), self.domain.clone())
    }

    /// `Some(σ)` when every column holds a single `1`, i.e. the operator maps basis
    /// vectors to basis vectors.
    pub fn as_basis_map(&self) -> Option<Vec<usize>> {
        let one = self.field.one();
        self.columns
            .iter()
            .map(|col| match col.as_slice() {
                [(r, v)] if *v == one => Some(*r),
                _ => None,
            })
            .collect()
    }

    pub(crate) fn require_invertible(&self, what: &str) -> Result<()> {
        if self.is_invertible() {
            Ok(())
        } else {
            Err(Error::Singular(what.to_string()))
        }
    }
}

/// The interchange `t: U_1 ⊗ U_2 -> U_2 ⊗ U_1`.
pub fn flip<F: Field>(field: F, d1: usize, d2: usize) -> LegOperator<F> {
    LegOperator::leg_permutation(field, vec![d1, d2], &[1, 0]).expect("valid permutation")
}
