//! Subquotients `K / I` of a finitely generated abelian group `G = ⊕ Z/m_j`.
//!
//! Both subgroups are lifted to lattices in `Z^N` (adding `m_j e_j` for the
//! finite coordinates), `K` gets a Hermite basis, the generators of `I` are
//! written in that basis, and a Smith form of the coordinate matrix gives the
//! invariant factors together with lifts of the generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::AbelianGroup;
use super::intmat::{echelon_coordinates, hermite, smith_normal_form, ZMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Quotient {
    /// Non-unit invariant factors `d_1 | d_2 | ...`; `0` marks a free factor.
    pub invariants: Vec<BigInt>,
    /// One lift in `Z^N` per invariant factor.
    pub generators: Vec<Vec<BigInt>>,
    basis: ZMatrix,
    pivots: Vec<usize>,
    v: ZMatrix,
    /// Index of the first non-unit diagonal entry of the Smith form.
    offset: usize,
}

fn relation_rows(ambient: &AbelianGroup) -> Vec<Vec<BigInt>> {
    let n = ambient.rank();
    ambient
        .moduli()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(j, &m)| {
            let mut row = vec![BigInt::zero(); n];
            row[j] = BigInt::from(m);
            row
        })
        .collect()
}

fn stack(gens: &ZMatrix, extra: &[Vec<BigInt>], cols: usize) -> ZMatrix {
    let mut all = ZMatrix::zeros(0, cols);
    for r in gens.row_vectors().into_iter().chain(extra.iter().cloned()) {
        all.push_row(r);
    }
    all
}

/// Invariant factors of `span(kernel_gens) / span(image_gens)` inside `ambient`,
/// which has one cyclic factor per column.
pub fn quotient_invariants(
    kernel_gens: &ZMatrix,
    image_gens: &ZMatrix,
    ambient: &AbelianGroup,
) -> Result<Quotient> {
    let n = ambient.rank();
    if kernel_gens.ncols() != n || image_gens.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "generators have {} / {} columns but the ambient group has {n} factors",
            kernel_gens.ncols(),
            image_gens.ncols()
        )));
    }
    let relations = relation_rows(ambient);
    let hf = hermite(&stack(kernel_gens, &relations, n));
    let basis = hf.basis();
    let k = basis.nrows();

    let mut coords = ZMatrix::zeros(0, k);
    for g in image_gens.row_vectors().into_iter().chain(relations) {
        let c = echelon_coordinates(&basis, &hf.pivots, &g).ok_or_else(|| {
            Error::DifferentialBug("an image generator is not in the kernel span".into())
        })?;
        coords.push_row(c);
    }

    let smith = smith_normal_form(&coords);
    let mut diag = smith.diagonal();
    diag.resize(k, BigInt::zero());
    let offset = diag.iter().take_while(|d| d.is_one()).count();
    let invariants: Vec<BigInt> = diag[offset..].to_vec();
    let generators = (offset..k)
        .map(|i| basis.vec_mul(smith.v_inv.row(i)))
        .collect();
    Ok(Quotient { invariants, generators, basis, pivots: hf.pivots, v: smith.v, offset })
}

impl Quotient {
    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Number of elements, or `None` when there is a free factor.
    pub fn order(&self) -> Option<BigInt> {
        self.invariants
            .iter()
            .try_fold(BigInt::one(), |acc, d| (!d.is_zero()).then(|| acc * d))
    }

    /// Class of a kernel element, as coordinates against [`Self::generators`]
    /// (reduced modulo each finite invariant factor).
    pub fn classify(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let x = echelon_coordinates(&self.basis, &self.pivots, v)
            .ok_or_else(|| Error::InvalidInput("vector is not in the kernel span".into()))?;
        let y = self.v.vec_mul(&x);
        Ok(self
            .invariants
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let yi = &y[self.offset + i];
                if d.is_zero() {
                    yi.clone()
                } else {
                    yi.mod_floor(d)
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Coset count by brute force inside `(Z/m)^k`.
    fn coset_count(m: i64, k: usize, kernel: &[Vec<i64>], image: &[Vec<i64>]) -> usize {
        let span = |gens: &[Vec<i64>]| -> BTreeSet<Vec<i64>> {
            let mut set: BTreeSet<Vec<i64>> = [vec![0; k]].into_iter().collect();
            loop {
                let mut grew = false;
                for v in set.clone() {
                    for g in gens {
                        let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(m)).collect();
                        grew |= set.insert(w);
                    }
                }
                if !grew {
                    return set;
                }
            }
        };
        span(kernel).len() / span(image).len()
    }

    #[test]
    fn trivial_and_cyclic() {
        let g = AbelianGroup::new(vec![2]);
        let k = ZMatrix::from_rows(1, &[ints(&[1])]);
        assert!(quotient_invariants(&k, &k, &g).unwrap().is_trivial());
        let q = quotient_invariants(&k, &ZMatrix::zeros(0, 1), &g).unwrap();
        assert_eq!(q.invariants, ints(&[2]));
    }

    #[test]
    fn rank_two_over_z4() {
        let g = AbelianGroup::new(vec![4, 4]);
        let kernel = vec![vec![1, 0], vec![0, 1]];
        let image = vec![vec![2, 0]];
        let k = ZMatrix::from_rows(2, &kernel.iter().map(|r| ints(r)).collect::<Vec<_>>());
        let i = ZMatrix::from_rows(2, &image.iter().map(|r| ints(r)).collect::<Vec<_>>());
        let q = quotient_invariants(&k, &i, &g).unwrap();
        assert_eq!(q.invariants, ints(&[2, 4]));
        assert_eq!(q.order().unwrap(), BigInt::from(coset_count(4, 2, &kernel, &image)));
        // generators classify to unit vectors
        for (idx, gen) in q.generators.iter().enumerate() {
            let c = q.classify(gen).unwrap();
            for (j, cj) in c.iter().enumerate() {
                assert_eq!(cj.is_one(), j == idx);
            }
        }
    }

    #[test]
    fn free_part() {
        let g = AbelianGroup::new(vec![0, 0]);
        let k = ZMatrix::identity(2);
        let i = ZMatrix::from_rows(2, &[ints(&[2, 0])]);
        let q = quotient_invariants(&k, &i, &g).unwrap();
        assert_eq!(q.invariants, ints(&[2, 0]));
        assert_eq!(q.order(), None);
    }

    #[test]
    fn containment_violation() {
        let g = AbelianGroup::new(vec![0, 0]);
        let k = ZMatrix::from_rows(2, &[ints(&[1, 0])]);
        let i = ZMatrix::from_rows(2, &[ints(&[0, 1])]);
        assert!(matches!(quotient_invariants(&k, &i, &g), Err(Error::DifferentialBug(_))));
    }

    #[test]
    fn random_quotients_match_coset_count() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for &m in &[4i64, 6, 8] {
            for _ in 0..6 {
                let k = 3;
                let kernel: Vec<Vec<i64>> =
                    (0..3).map(|_| (0..k).map(|_| rng.gen_range(0..m)).collect()).collect();
                // image: random combinations of kernel generators
                let image: Vec<Vec<i64>> = (0..2)
                    .map(|_| {
                        let c: Vec<i64> = (0..3).map(|_| rng.gen_range(0..m)).collect();
                        (0..k)
                            .map(|j| (0..3).map(|i| c[i] * kernel[i][j]).sum::<i64>().rem_euclid(m))
                            .collect()
                    })
                    .collect();
                let g = AbelianGroup::new(vec![m as u64; k]);
                let km = ZMatrix::from_rows(k, &kernel.iter().map(|r| ints(r)).collect::<Vec<_>>());
                let im = ZMatrix::from_rows(k, &image.iter().map(|r| ints(r)).collect::<Vec<_>>());
                let q = quotient_invariants(&km, &im, &g).unwrap();
                assert_eq!(q.order().unwrap(), BigInt::from(coset_count(m, k, &kernel, &image)));
            }
        }
    }
}
