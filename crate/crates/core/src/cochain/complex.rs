use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{cell_args, cell_count, cell_index, Cochain};
use crate::error::{Error, Result};
use crate::magma::BMagma;
use crate::par;
use crate::zlinalg::{
    left_kernel, mod_left_kernel, quotient_invariants, solve_in_span, solve_left, AbelianGroup,
    ModMatrix, Quotient, ZMatrix,
};

/// Largest `|A|^n * rank(B)` accepted by [`cohomology`].
pub const COHOMOLOGY_CELL_LIMIT: usize = 2048;

/// The signed input cells whose values sum to `d(c)` at the output cell `args`
/// (of length `n + 1`).
fn d_terms(m: &BMagma, args: &[usize]) -> Vec<(i64, usize)> {
    let size = m.size();
    let n = args.len() - 1;
    if n == 1 {
        let (x, y) = (args[0], args[1]);
        return vec![(1, x), (-1, m.mul(x, y)), (1, y)];
    }
    let last = args[n];
    let mut out = Vec::with_capacity(2 * n);
    let mut rest = Vec::with_capacity(n);
    for i in 0..n {
        let sign = if i % 2 == 0 { -1 } else { 1 };
        rest.clear();
        rest.extend(args[..n].iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &a)| a));
        rest.push(m.mul(args[i], last));
        out.push((sign, cell_index(&rest, size)));
        *rest.last_mut().expect("n >= 2") = last;
        out.push((-sign, cell_index(&rest, size)));
    }
    out
}

/// `d(c)`: for degree 1, `d(p)(x, y) = p(x) - p(xy) + p(y)`; for `n >= 2`,
/// `d(c)(x_1..x_n, x) = sum_i (-1)^i [c(..x̂_i.., x_i x) - c(..x̂_i.., x)]`.
pub fn differential(c: &Cochain) -> Cochain {
    let m = c.magma();
    let size = m.size();
    let n = c.degree();
    let k = c.coeff().rank();
    let cells: Vec<usize> = (0..size.pow(n as u32 + 1)).collect();
    let values: Vec<i64> = par::flat_map(&cells, |&cell| {
        let args = cell_args(cell, size, n + 1);
        let mut acc = vec![0i64; k];
        for (s, src) in d_terms(m, &args) {
            for (a, v) in acc.iter_mut().zip(c.at(src)) {
                *a += s * v;
            }
        }
        acc
    });
    Cochain::from_flat(m.clone(), n + 1, c.coeff().clone(), values)
}

/// Matrix of `d` on `Z`-valued degree-`n` cochains: row `j` is `d(e_j)`.
pub fn differential_matrix(m: &BMagma, n: usize) -> Result<Vec<Vec<i64>>> {
    if n == 0 {
        return Err(Error::InvalidInput("the differential starts in degree 1".into()));
    }
    let size = m.size();
    let (rows, cols) = (cell_count(size, n)?, cell_count(size, n + 1)?);
    let mut mat = vec![vec![0i64; cols]; rows];
    for out in 0..cols {
        for (s, src) in d_terms(m, &cell_args(out, size, n + 1)) {
            mat[src][out] += s;
        }
    }
    Ok(mat)
}

pub fn is_cocycle(c: &Cochain) -> bool {
    differential(c).is_zero()
}

fn column(c: &Cochain, factor: usize) -> Vec<i64> {
    let k = c.coeff().rank();
    c.flat().iter().skip(factor).step_by(k).copied().collect()
}

/// A witness `b` with `d(b) = c`, or `None` if `c` is not a coboundary.
/// Decided exactly, one cyclic factor of `B` at a time.
pub fn is_coboundary(c: &Cochain) -> Result<Option<Cochain>> {
    let n = c.degree();
    if n < 2 {
        return Err(Error::InvalidInput("coboundaries start in degree 2 (H^1 = Z^1)".into()));
    }
    let m = c.magma();
    let d = differential_matrix(m, n - 1)?;
    let cols = d.first().map_or(0, Vec::len);
    let k = c.coeff().rank();
    let rows = d.len();
    let mut witness = vec![0i64; rows * k];
    for (j, &modulus) in c.coeff().moduli().iter().enumerate() {
        let v = column(c, j);
        let x: Vec<i64> = if modulus > 0 {
            let mat = ModMatrix::from_rows(modulus, cols, &d)?;
            let v: Vec<u64> = v.iter().map(|&a| a as u64).collect();
            match solve_in_span(&mat, &v)? {
                Some(x) => x.into_iter().map(|a| a as i64).collect(),
                None => return Ok(None),
            }
        } else {
            let flat: Vec<i64> = d.iter().flatten().copied().collect();
            let mat = ZMatrix::from_i64(rows, cols, &flat);
            let v: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
            match solve_left(&mat, &v)? {
                Some(x) => x
                    .iter()
                    .map(|a| a.to_i64().ok_or_else(|| Error::ResourceLimit("witness exceeds i64".into())))
                    .collect::<Result<_>>()?,
                None => return Ok(None),
            }
        };
        for (cell, a) in x.into_iter().enumerate() {
            witness[cell * k + j] = a;
        }
    }
    let b = Cochain::from_flat(m.clone(), n - 1, c.coeff().clone(), witness);
    if differential(&b) != *c {
        return Err(Error::DifferentialBug("coboundary witness does not reproduce the cochain".into()));
    }
    Ok(Some(b))
}

/// `H^n_b(A, B)` as invariant factors with one representative cocycle each.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyResult {
    pub degree: usize,
    /// Non-unit invariant factors; `0` marks a free summand.
    pub invariant_factors: Vec<u64>,
    pub representatives: Vec<Cochain>,
    #[serde(skip)]
    quotient: Option<Quotient>,
    #[serde(skip)]
    magma: Arc<BMagma>,
    #[serde(skip)]
    coeff: AbelianGroup,
}

pub fn cohomology(magma: &Arc<BMagma>, coeff: &AbelianGroup, n: usize) -> Result<CohomologyResult> {
    if n == 0 {
        return Err(Error::InvalidInput("cohomology is indexed from degree 1".into()));
    }
    let size = magma.size();
    let cells = cell_count(size, n)?;
    let k = coeff.rank();
    if cells.saturating_mul(k) > COHOMOLOGY_CELL_LIMIT || cell_count(size, n + 1).is_err() {
        return Err(Error::ResourceLimit(format!(
            "|A|^{n} * rank(B) = {cells} * {k} exceeds the limit {COHOMOLOGY_CELL_LIMIT}"
        )));
    }
    let mut result = CohomologyResult {
        degree: n,
        invariant_factors: Vec::new(),
        representatives: Vec::new(),
        quotient: None,
        magma: magma.clone(),
        coeff: coeff.clone(),
    };
    if k == 0 {
        return Ok(result);
    }
    let dn = differential_matrix(magma, n)?;
    let dprev = if n >= 2 { Some(differential_matrix(magma, n - 1)?) } else { None };
    let width = cells * k;
    let mut kernel = ZMatrix::zeros(0, width);
    let mut image = ZMatrix::zeros(0, width);
    let embed = |v: Vec<BigInt>, j: usize| {
        let mut row = vec![BigInt::from(0); width];
        for (cell, a) in v.into_iter().enumerate() {
            row[cell * k + j] = a;
        }
        row
    };

    let next = dn.first().map_or(0, Vec::len);
    let kernels: Vec<Vec<Vec<BigInt>>> = par::map(&coeff.moduli().iter().enumerate().collect::<Vec<_>>(), |&(_, &m)| {
        if m > 0 {
            let mat = ModMatrix::from_rows(m, next, &dn).expect("modulus is positive");
            mod_left_kernel(&mat)
                .row_vectors()
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect()
        } else {
            let flat: Vec<i64> = dn.iter().flatten().copied().collect();
            left_kernel(&ZMatrix::from_i64(cells, next, &flat)).row_vectors()
        }
    });
    for (j, rows) in kernels.into_iter().enumerate() {
        for r in rows {
            kernel.push_row(embed(r, j));
        }
        if let Some(dp) = &dprev {
            for r in dp {
                image.push_row(embed(r.iter().map(|&a| BigInt::from(a)).collect(), j));
            }
        }
    }

    let ambient = AbelianGroup::new((0..width).map(|i| coeff.moduli()[i % k]).collect());
    let q = quotient_invariants(&kernel, &image, &ambient)?;
    result.invariant_factors = q
        .invariants
        .iter()
        .map(|d| d.to_u64().ok_or_else(|| Error::ResourceLimit(format!("invariant factor {d} exceeds u64"))))
        .collect::<Result<_>>()?;
    for g in &q.generators {
        let values = g
            .iter()
            .map(|a| a.to_i64().ok_or_else(|| Error::ResourceLimit("representative exceeds i64".into())))
            .collect::<Result<Vec<_>>>()?;
        let rep = Cochain::from_flat(magma.clone(), n, coeff.clone(), values);
        if !is_cocycle(&rep) {
            return Err(Error::DifferentialBug("cohomology representative is not a cocycle".into()));
        }
        result.representatives.push(rep);
    }
    result.quotient = Some(q);
    Ok(result)
}

impl CohomologyResult {
    pub fn magma(&self) -> &Arc<BMagma> {
        &self.magma
    }

    pub fn coeff(&self) -> &AbelianGroup {
        &self.coeff
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of classes, or `None` when there is a free summand.
    pub fn order(&self) -> Option<u64> {
        self.invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| if d == 0 { None } else { acc.checked_mul(d) })
    }

    /// Coordinates of the class of a cocycle against [`Self::representatives`].
    pub fn classify(&self, c: &Cochain) -> Result<Vec<i64>> {
        if c.degree() != self.degree || c.coeff() != &self.coeff || c.magma().table() != self.magma.table() {
            return Err(Error::DimensionMismatch("cochain does not live in this cohomology".into()));
        }
        if !is_cocycle(c) {
            return Err(Error::InvalidInput("only cocycles have a cohomology class".into()));
        }
        let Some(q) = &self.quotient else {
            return Ok(Vec::new());
        };
        let v: Vec<BigInt> = c.flat().iter().map(|&a| BigInt::from(a)).collect();
        q.classify(&v)?
            .iter()
            .map(|a| a.to_i64().ok_or_else(|| Error::ResourceLimit("class coordinate exceeds i64".into())))
            .collect()
    }

    /// The cocycle `sum_i e_i * representative_i`.
    pub fn cocycle_of(&self, class: &[i64]) -> Result<Cochain> {
        if class.len() != self.representatives.len() {
            return Err(Error::DimensionMismatch(format!(
                "class has {} coordinates, H^{} has {} generators",
                class.len(),
                self.degree,
                self.representatives.len()
            )));
        }
        let mut acc = Cochain::zero(self.magma.clone(), self.degree, self.coeff.clone())?;
        for (e, r) in class.iter().zip(&self.representatives) {
            acc = acc.add(&r.scale(*e))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::{enumerate_b_magmas, MagmaTable};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn bm(t: MagmaTable) -> Arc<BMagma> {
        Arc::new(BMagma::new(t).unwrap())
    }

    /// All cochains of a degree with values in `Z/m`, `m^(|A|^n)` of them.
    fn all_cochains(magma: &Arc<BMagma>, n: usize, m: u64) -> Vec<Cochain> {
        let cells = magma.size().pow(n as u32);
        let total = (m as usize).pow(cells as u32);
        (0..total)
            .map(|mut code| {
                let vals = (0..cells)
                    .map(|_| {
                        let v = (code % m as usize) as i64;
                        code /= m as usize;
                        v
                    })
                    .collect();
                Cochain::from_flat(magma.clone(), n, AbelianGroup::cyclic(m), vals)
            })
            .collect()
    }

    /// `|Z^n| / |B^n|` by listing every cochain.
    fn brute_force_order(magma: &Arc<BMagma>, n: usize, m: u64) -> usize {
        let cocycles = all_cochains(magma, n, m).into_iter().filter(is_cocycle).count();
        if n == 1 {
            return cocycles;
        }
        let boundaries: BTreeSet<Vec<i64>> =
            all_cochains(magma, n - 1, m).iter().map(|c| differential(c).flat().to_vec()).collect();
        cocycles / boundaries.len()
    }

    #[test]
    fn degree_two_expansion() {
        let m = bm(MagmaTable::right_projection(3));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = Cochain::random(m.clone(), 2, AbelianGroup::cyclic(7), &mut rng).unwrap();
        let dq = differential(&q);
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let e = -q.get(&[y, m.mul(x, z)]).coords[0] + q.get(&[y, z]).coords[0]
                        + q.get(&[x, m.mul(y, z)]).coords[0]
                        - q.get(&[x, z]).coords[0];
                    assert_eq!(dq.get(&[x, y, z]).coords[0], e.rem_euclid(7));
                }
            }
        }
    }

    #[test]
    fn indicator_example() {
        let m = bm(MagmaTable::cyclic_group(2));
        let q = Cochain::from_fn(m, 2, AbelianGroup::integers(), |a| (a == [1, 1]).then(|| vec![1])).unwrap();
        assert!(differential(&q).is_zero());
    }

    #[test]
    fn matrix_agrees_with_differential() {
        let m = bm(MagmaTable::from_fn(3, |_, y| (y + 1) % 3));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=3 {
            let d = differential_matrix(&m, n).unwrap();
            let c = Cochain::random(m.clone(), n, AbelianGroup::integers(), &mut rng).unwrap();
            let dc = differential(&c);
            for (out, v) in dc.flat().iter().enumerate() {
                let e: i64 = (0..d.len()).map(|j| c.flat()[j] * d[j][out]).sum();
                assert_eq!(*v, e);
            }
        }
    }

    #[test]
    fn coboundary_decision_matches_enumeration_over_z2() {
        let m = bm(MagmaTable::cyclic_group(2));
        let images: BTreeSet<Vec<i64>> =
            all_cochains(&m, 2, 2).iter().map(|c| differential(c).flat().to_vec()).collect();
        for c in all_cochains(&m, 3, 2) {
            let w = is_coboundary(&c).unwrap();
            assert_eq!(w.is_some(), images.contains(c.flat()));
            if let Some(b) = w {
                assert_eq!(differential(&b), c);
            }
        }
    }

    #[test]
    fn cohomology_matches_brute_force() {
        for t in [MagmaTable::cyclic_group(2), MagmaTable::right_projection(2)] {
            let m = bm(t);
            for (n, modulus) in [(1, 2), (2, 2), (3, 2), (2, 4), (1, 4)] {
                let h = cohomology(&m, &AbelianGroup::cyclic(modulus), n).unwrap();
                assert_eq!(h.order().unwrap() as usize, brute_force_order(&m, n, modulus), "n={n} m={modulus}");
                for (i, r) in h.representatives.iter().enumerate() {
                    let c = h.classify(r).unwrap();
                    assert!(c.iter().enumerate().all(|(j, &v)| (v == 1) == (i == j) && (v == 0 || v == 1)));
                }
            }
        }
        let z3 = bm(MagmaTable::cyclic_group(3));
        let h1 = cohomology(&z3, &AbelianGroup::cyclic(3), 1).unwrap();
        assert_eq!(h1.invariant_factors, vec![3]);
        assert_eq!(h1.order().unwrap() as usize, brute_force_order(&z3, 1, 3));
    }

    #[test]
    fn trivial_coefficients() {
        let m = bm(MagmaTable::right_projection(2));
        for n in 1..4 {
            assert!(cohomology(&m, &AbelianGroup::trivial(), n).unwrap().is_trivial());
            assert!(cohomology(&m, &AbelianGroup::cyclic(1), n).unwrap().is_trivial());
        }
    }

    #[test]
    fn free_coefficients() {
        // H^1(Z/2, Z): additive maps Z/2 -> Z vanish
        let m = bm(MagmaTable::cyclic_group(2));
        assert!(cohomology(&m, &AbelianGroup::integers(), 1).unwrap().is_trivial());
        let h2 = cohomology(&m, &AbelianGroup::integers(), 2).unwrap();
        assert!(h2.representatives.iter().all(is_cocycle));
    }

    #[test]
    fn resource_refusal() {
        let m = bm(MagmaTable::right_projection(4));
        assert!(matches!(cohomology(&m, &AbelianGroup::cyclic(2), 6), Err(Error::ResourceLimit(_))));
    }

    fn small_magmas() -> Vec<MagmaTable> {
        (1..=3).flat_map(|n| enumerate_b_magmas(n, true)).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn d_squared_is_zero(idx in 0usize..1000, n in 1usize..=4, coeff in 0usize..4, seed in any::<u64>()) {
            let ms = small_magmas();
            let m = bm(ms[idx % ms.len()].clone());
            let g = AbelianGroup::cyclic([2, 4, 6, 0][coeff]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = Cochain::random(m, n, g, &mut rng).unwrap();
            prop_assert!(differential(&differential(&c)).is_zero());
        }

        #[test]
        fn coboundaries_are_cocycles(n in 2usize..=3, seed in any::<u64>()) {
            let m = bm(MagmaTable::right_projection(2));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = Cochain::random(m, n, AbelianGroup::cyclic(4), &mut rng).unwrap();
            if is_coboundary(&c).unwrap().is_some() {
                prop_assert!(is_cocycle(&c));
            }
            prop_assert!(is_coboundary(&differential(&c)).unwrap().is_some());
        }
    }
}
