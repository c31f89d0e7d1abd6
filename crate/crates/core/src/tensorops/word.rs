//! Placements of small operators into larger tensor products, words of
//! placed operators, and exact checking of word equations.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::operator::{decode, flip, strides, total_dim, LegOperator};
use crate::error::{Error, Result};
use crate::par;

/// Ordered leg positions (1-based) into a tensor product of `total_legs` legs.
///
/// Order matters: `(3, 2)` puts the operator's first leg on ambient leg 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    total_legs: usize,
    positions: Vec<usize>,
}

impl Placement {
    pub fn new(total_legs: usize, positions: &[usize]) -> Result<Self> {
        let mut seen = vec![false; total_legs + 1];
        for &p in positions {
            if p == 0 || p > total_legs {
                return Err(Error::InvalidInput(format!(
                    "leg position {p} outside 1..={total_legs}"
                )));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput(format!("leg position {p} repeated")));
            }
        }
        Ok(Placement { total_legs, positions: positions.to_vec() })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn total_legs(&self) -> usize {
        self.total_legs
    }
}

/// An operator acting on chosen legs of an ambient tensor product, identity elsewhere.
///
/// Application works by index arithmetic on the ambient multi-index; the
/// ambient matrix is never built unless asked for.
#[derive(Debug, Clone)]
pub struct PlacedOperator<F: Field> {
    op: Arc<LegOperator<F>>,
    in_dims: Vec<usize>,
    out_dims: Vec<usize>,
    /// For every ambient input index: (operator column, output index with the
    /// placed legs zeroed).
    routes: Vec<(usize, usize)>,
    /// Output index offset for every operator row.
    row_offsets: Vec<usize>,
}

impl<F: Field> PlacedOperator<F> {
    pub fn new(op: Arc<LegOperator<F>>, placement: &Placement, in_dims: &[usize]) -> Result<Self> {
        if placement.total_legs != in_dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "placement over {} legs but ambient has {}",
                placement.total_legs,
                in_dims.len()
            )));
        }
        if placement.positions.len() != op.arity() {
            return Err(Error::DimensionMismatch(format!(
                "operator has {} legs but placement names {}",
                op.arity(),
                placement.positions.len()
            )));
        }
        let pos: Vec<usize> = placement.positions.iter().map(|p| p - 1).collect();
        if op.domain_legs().len() != op.codomain_legs().len()
            && pos.iter().enumerate().any(|(k, &p)| k != p || pos.len() != in_dims.len())
        {
            return Err(Error::DimensionMismatch(
                "an operator that changes the number of legs must act on all legs in order".into(),
            ));
        }
        for (k, &p) in pos.iter().enumerate() {
            if in_dims[p] != op.domain_legs()[k] {
                return Err(Error::DimensionMismatch(format!(
                    "ambient leg {} has dimension {} but operator leg {} expects {}",
                    p + 1,
                    in_dims[p],
                    k + 1,
                    op.domain_legs()[k]
                )));
            }
        }
        if op.domain_legs().len() != op.codomain_legs().len() {
            let out_dims = op.codomain_legs().to_vec();
            let routes = (0..total_dim(in_dims)).map(|i| (i, 0)).collect();
            let row_offsets = (0..op.nrows()).collect();
            return Ok(PlacedOperator { op, in_dims: in_dims.to_vec(), out_dims, routes, row_offsets });
        }
        let mut out_dims = in_dims.to_vec();
        for (k, &p) in pos.iter().enumerate() {
            out_dims[p] = op.codomain_legs()[k];
        }
        let out_strides = strides(&out_dims);
        let dom_strides = strides(op.domain_legs());
        let placed: Vec<bool> = (0..in_dims.len()).map(|l| pos.contains(&l)).collect();

        let routes = (0..total_dim(in_dims))
            .map(|i| {
                let c = decode(i, in_dims);
                let col: usize = pos.iter().enumerate().map(|(k, &p)| c[p] * dom_strides[k]).sum();
                let base: usize = (0..c.len())
                    .filter(|&l| !placed[l])
                    .map(|l| c[l] * out_strides[l])
                    .sum();
                (col, base)
            })
            .collect();
        let row_offsets = (0..op.nrows())
            .map(|b| {
                let bc = decode(b, op.codomain_legs());
                pos.iter().enumerate().map(|(k, &p)| bc[k] * out_strides[p]).sum()
            })
            .collect();
        Ok(PlacedOperator { op, in_dims: in_dims.to_vec(), out_dims, routes, row_offsets })
    }

    pub fn in_dims(&self) -> &[usize] {
        &self.in_dims
    }

    pub fn out_dims(&self) -> &[usize] {
        &self.out_dims
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.op.field();
        let mut out = vec![f.zero(); total_dim(&self.out_dims)];
        for (i, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            let (col, base) = self.routes[i];
            for (b, a) in self.op.column(col) {
                let o = base + self.row_offsets[*b];
                out[o] = f.add(&out[o], &f.mul(a, x));
            }
        }
        out
    }

    /// Application to a sparse vector given as `(index, value)` pairs with
    /// distinct indices; the result is sorted by index and free of zeros.
    pub fn apply_sparse(&self, v: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
        let f = self.op.field();
        let mut out: Vec<(usize, F::Elem)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            let (col, base) = self.routes[*i];
            for (b, a) in self.op.column(col) {
                out.push((base + self.row_offsets[*b], f.mul(a, x)));
            }
        }
        out.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, F::Elem)> = Vec::with_capacity(out.len());
        for (i, x) in out {
            match merged.last_mut() {
                Some((j, y)) if *j == i => *y = f.add(y, &x),
                _ => merged.push((i, x)),
            }
        }
        merged.retain(|(_, x)| !f.is_zero(x));
        merged
    }

    /// The ambient operator as an explicit matrix.
    pub fn materialize(&self) -> LegOperator<F> {
        materialize(self.op.field(), &self.in_dims, &self.out_dims, |v| self.apply(v))
    }
}

fn basis_vector<F: Field>(f: &F, n: usize, j: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[j] = f.one();
    v
}

fn materialize<F: Field>(
    f: &F,
    in_dims: &[usize],
    out_dims: &[usize],
    apply: impl Fn(&[F::Elem]) -> Vec<F::Elem> + Sync + Send,
) -> LegOperator<F> {
    let (rows, cols) = (total_dim(out_dims), total_dim(in_dims));
    let idx: Vec<usize> = (0..cols).collect();
    let columns = par::map(&idx, |&j| apply(&basis_vector(f, cols, j)));
    let mut entries = vec![f.zero(); rows * cols];
    for (j, col) in columns.into_iter().enumerate() {
        for (r, v) in col.into_iter().enumerate() {
            entries[r * cols + j] = v;
        }
    }
    LegOperator::new(f.clone(), in_dims.to_vec(), out_dims.to_vec(), entries)
        .expect("consistent shape")
}

/// `op` acting on the legs `positions` (1-based, order significant) of an
/// ambient product with leg dimensions `ambient`, as an explicit operator.
pub fn place<F: Field>(op: &LegOperator<F>, positions: &[usize], ambient: &[usize]) -> Result<LegOperator<F>> {
    let pl = Placement::new(ambient.len(), positions)?;
    Ok(PlacedOperator::new(Arc::new(op.clone()), &pl, ambient)?.materialize())
}

/// One letter of a word, with 1-based leg positions.
#[derive(Debug, Clone)]
pub enum Letter<F: Field> {
    /// An operator on the listed legs.
    Op(Arc<LegOperator<F>>, Vec<usize>),
    /// `t_i`: the interchange of legs `i` and `i + 1`.
    Flip(usize),
    /// The interchange of two arbitrary legs.
    Swap(usize, usize),
}

impl<F: Field> Letter<F> {
    pub fn op(op: &Arc<LegOperator<F>>, positions: &[usize]) -> Self {
        Letter::Op(Arc::clone(op), positions.to_vec())
    }
}

/// A composite of placed operators, stored in application order.
#[derive(Debug, Clone)]
pub struct Word<F: Field> {
    field: F,
    in_dims: Vec<usize>,
    out_dims: Vec<usize>,
    factors: Vec<PlacedOperator<F>>,
}

impl<F: Field> Word<F> {
    /// Builds a word written as a product `A B C` (so `C` acts first) on an
    /// ambient product with input leg dimensions `in_dims`.
    pub fn product(field: &F, in_dims: &[usize], letters: Vec<Letter<F>>) -> Result<Self> {
        let mut dims = in_dims.to_vec();
        let mut factors = Vec::with_capacity(letters.len());
        for letter in letters.into_iter().rev() {
            let n = dims.len();
            let (op, positions) = match letter {
                Letter::Op(op, pos) => (op, pos),
                Letter::Flip(i) => {
                    if i == 0 || i >= n {
                        return Err(Error::InvalidInput(format!("t_{i} on {n} legs")));
                    }
                    (Arc::new(flip(field.clone(), dims[i - 1], dims[i])), vec![i, i + 1])
                }
                Letter::Swap(i, j) => {
                    if i == 0 || j == 0 || i > n || j > n || i == j {
                        return Err(Error::InvalidInput(format!("swap of legs {i}, {j} on {n} legs")));
                    }
                    (Arc::new(flip(field.clone(), dims[i - 1], dims[j - 1])), vec![i, j])
                }
            };
            let pl = Placement::new(n, &positions)?;
            let placed = PlacedOperator::new(op, &pl, &dims)?;
            dims = placed.out_dims.clone();
            factors.push(placed);
        }
        Ok(Word { field: field.clone(), in_dims: in_dims.to_vec(), out_dims: dims, factors })
    }

    pub fn in_dims(&self) -> &[usize] {
        &self.in_dims
    }

    pub fn out_dims(&self) -> &[usize] {
        &self.out_dims
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut cur = v.to_vec();
        for f in &self.factors {
            cur = f.apply(&cur);
        }
        cur
    }

    pub fn materialize(&self) -> LegOperator<F> {
        materialize(&self.field, &self.in_dims, &self.out_dims, |v| self.apply(v))
    }

    /// Image of the `j`-th basis vector, sparse and sorted by index.
    pub fn apply_basis(&self, j: usize) -> Vec<(usize, F::Elem)> {
        let mut cur = vec![(j, self.field.one())];
        for f in &self.factors {
            cur = f.apply_sparse(&cur);
        }
        cur
    }
}

/// Ambient dimension up to which checks apply both sides to every basis vector.
pub const EXHAUSTIVE_LIMIT: usize = 4096;
/// Number of random vectors used above [`EXHAUSTIVE_LIMIT`].
pub const RANDOM_SAMPLES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Exhaustive up to [`EXHAUSTIVE_LIMIT`], randomized above it.
    Auto,
    /// Every basis vector, regardless of size.
    Exhaustive,
    /// The given number of random vectors.
    Randomized(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: CheckMode,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { mode: CheckMode::Auto, seed: 0 }
    }
}

/// `lhs = rhs` as maps between the same ambient products.
#[derive(Debug, Clone)]
pub struct Equation<F: Field> {
    pub lhs: Word<F>,
    pub rhs: Word<F>,
}

impl<F: Field> Equation<F> {
    pub fn new(lhs: Word<F>, rhs: Word<F>) -> Result<Self> {
        if lhs.in_dims != rhs.in_dims || lhs.out_dims != rhs.out_dims {
            return Err(Error::DimensionMismatch(format!(
                "sides map {:?} -> {:?} and {:?} -> {:?}",
                lhs.in_dims, lhs.out_dims, rhs.in_dims, rhs.out_dims
            )));
        }
        Ok(Equation { lhs, rhs })
    }

    pub fn ambient_dim(&self) -> usize {
        total_dim(&self.lhs.in_dims)
    }

    /// Whether the identity is verified on every basis vector for `opts`.
    pub fn is_exhaustive(&self, opts: &CheckOptions) -> bool {
        match opts.mode {
            CheckMode::Exhaustive => true,
            CheckMode::Auto => self.ambient_dim() <= EXHAUSTIVE_LIMIT,
            CheckMode::Randomized(_) => false,
        }
    }

    pub fn holds(&self, opts: &CheckOptions) -> bool {
        let n = self.ambient_dim();
        let f = &self.lhs.field;
        if self.is_exhaustive(opts) {
            return par::all_range(0..n, |j| self.lhs.apply_basis(j) == self.rhs.apply_basis(j));
        }
        let samples = match opts.mode {
            CheckMode::Randomized(k) => k,
            _ => RANDOM_SAMPLES,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let vectors: Vec<Vec<F::Elem>> =
            (0..samples).map(|_| (0..n).map(|_| f.random(&mut rng)).collect()).collect();
        par::all_range(0..samples, |k| self.lhs.apply(&vectors[k]) == self.rhs.apply(&vectors[k]))
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::PrimeField;
    use super::*;
    use rand::Rng;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn random_op(f: PrimeField, legs: Vec<usize>, rng: &mut impl Rng) -> LegOperator<PrimeField> {
        let n: usize = legs.iter().product();
        let entries = (0..n * n).map(|_| rng.gen_range(0..3)).collect();
        LegOperator::new(f, legs.clone(), legs, entries).unwrap()
    }

    #[test]
    fn identity_placement() {
        let id = LegOperator::identity(f3(), vec![2, 2]);
        let amb = place(&id, &[3, 1], &[2, 2, 2]).unwrap();
        assert!(amb.is_identity());
    }

    #[test]
    fn placement_of_z_on_124_matches_flip_conjugation() {
        let f = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let z = random_op(f, vec![2, 2, 2], &mut rng);
        let amb = vec![2; 6];
        let placed = place(&z, &[1, 2, 4], &amb).unwrap();
        // t_3^{-1} (Z ⊗ 1) t_3, built from explicit matrices
        let t3 = LegOperator::identity(f, vec![2, 2])
            .tensor(&flip(f, 2, 2))
            .tensor(&LegOperator::identity(f, vec![2, 2]));
        let z1 = z.tensor(&LegOperator::identity(f, vec![2, 2, 2]));
        let conj = t3.inverse().unwrap().compose(&z1.compose(&t3).unwrap()).unwrap();
        assert_eq!(placed, conj);
    }

    #[test]
    fn reversed_placement_is_flip_conjugation() {
        let f = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = random_op(f, vec![2, 2], &mut rng);
        let amb = vec![2, 2, 2];
        let rev = place(&b, &[3, 2], &amb).unwrap();
        let t23 = place(&flip(f, 2, 2), &[2, 3], &amb).unwrap();
        let fwd = place(&b, &[2, 3], &amb).unwrap();
        assert_eq!(rev, t23.compose(&fwd).unwrap().compose(&t23).unwrap());
        // basis-vector check of the convention: B_{32} e_{(i,j,k)} reads (k, j) as B's input
        for i in 0..8 {
            let c = decode(i, &amb);
            for r in 0..8 {
                let rc = decode(r, &amb);
                let expect = if rc[0] == c[0] { *b.get(rc[2] * 2 + rc[1], c[2] * 2 + c[1]) } else { 0 };
                assert_eq!(*rev.get(r, i), expect);
            }
        }
    }

    #[test]
    fn rectangular_placement_changes_legs() {
        let f = f3();
        let m = LegOperator::leg_permutation(f, vec![2, 1, 3], &[2, 1, 0]).unwrap();
        let pl = Placement::new(4, &[2, 3, 4]).unwrap();
        let placed = PlacedOperator::new(Arc::new(m), &pl, &[5, 2, 1, 3]).unwrap();
        assert_eq!(placed.out_dims(), &[5, 3, 1, 2]);
        assert!(PlacedOperator::new(Arc::new(LegOperator::identity(f, vec![2])), &Placement::new(2, &[1]).unwrap(), &[3, 2]).is_err());
        assert!(Placement::new(3, &[1, 1]).is_err());
        assert!(Placement::new(3, &[4]).is_err());
    }

    #[test]
    fn place_is_functorial() {
        let f = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let amb = vec![2, 2, 2, 2];
        for _ in 0..10 {
            let p = random_op(f, vec![2, 2], &mut rng);
            let q = random_op(f, vec![2, 2], &mut rng);
            let lhs = place(&p.compose(&q).unwrap(), &[4, 2], &amb).unwrap();
            let rhs = place(&p, &[4, 2], &amb)
                .unwrap()
                .compose(&place(&q, &[4, 2], &amb).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn randomized_mode_agrees_on_small_cases() {
        let f = f3();
        let t = Arc::new(flip(f, 2, 2));
        let id = Arc::new(LegOperator::identity(f, vec![2, 2]));
        let lhs = Word::product(&f, &[2, 2], vec![Letter::op(&t, &[1, 2]), Letter::op(&t, &[1, 2])]).unwrap();
        let rhs = Word::product(&f, &[2, 2], vec![Letter::op(&id, &[1, 2])]).unwrap();
        let eq = Equation::new(lhs, rhs).unwrap();
        for mode in [CheckMode::Auto, CheckMode::Exhaustive, CheckMode::Randomized(8)] {
            assert!(eq.holds(&CheckOptions { mode, seed: 5 }));
        }
        let lhs = Word::product(&f, &[2, 2], vec![Letter::op(&t, &[1, 2])]).unwrap();
        let rhs = Word::product(&f, &[2, 2], vec![Letter::op(&id, &[1, 2])]).unwrap();
        let eq = Equation::new(lhs, rhs).unwrap();
        for mode in [CheckMode::Auto, CheckMode::Exhaustive, CheckMode::Randomized(8)] {
            assert!(!eq.holds(&CheckOptions { mode, seed: 5 }));
        }
    }

    #[test]
    fn sparse_basis_images_match_dense_apply() {
        let f = f3();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = Arc::new(random_op(f, vec![2, 3], &mut rng));
        let b = Arc::new(random_op(f, vec![3, 2], &mut rng));
        let w = Word::product(
            &f,
            &[2, 3, 2],
            vec![Letter::op(&a, &[2, 1]), Letter::Flip(1), Letter::op(&b, &[2, 3]), Letter::op(&a, &[1, 2])],
        )
        .unwrap();
        for j in 0..12 {
            let mut e = vec![0; 12];
            e[j] = 1;
            let dense: Vec<(usize, u64)> =
                w.apply(&e).into_iter().enumerate().filter(|&(_, v)| v != 0).collect();
            assert_eq!(w.apply_basis(j), dense);
        }
    }
}
