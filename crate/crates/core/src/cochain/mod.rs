//! Cochains `A^n -> B` on a b-magma `A` with values in a finitely generated
//! abelian group `B`, the b-differential, cohomology, and the pointed
//! (categorical) conditions expressed through them.

mod complex;
mod orbits;
mod pointed;

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magma::{BMagma, MagmaTable};
use crate::zlinalg::{AbelianGroup, GroupElement};

pub use complex::{
    cohomology, differential, differential_matrix, is_coboundary, is_cocycle, CohomologyResult,
    COHOMOLOGY_CELL_LIMIT,
};
pub use orbits::{aut_orbits, Orbits, ORBIT_ENUMERATION_LIMIT};
pub use pointed::{
    abelian_coboundary_shift, bicat_equiv, comparison_from_abelian, functor_check, functor_solve,
    gauge_transform, is_abelian_3_cocycle, r_coherence_check, require_abelian_group,
    s4_coherence_check, transformation_check,
};

/// A map `A^n -> B`, stored densely. Cell `(x_1, ..., x_n)` has index
/// `sum x_i |A|^(n-i)` (so `x_1` is most significant), and the cell's value
/// occupies `values[cell * k .. cell * k + k]` for `k` cyclic factors of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    magma: Arc<BMagma>,
    degree: usize,
    coeff: AbelianGroup,
    values: Vec<i64>,
}

pub(crate) fn cell_count(size: usize, degree: usize) -> Result<usize> {
    u32::try_from(degree)
        .ok()
        .and_then(|d| size.checked_pow(d))
        .ok_or_else(|| Error::ResourceLimit(format!("|A|^{degree} overflows")))
}

/// Decodes a cell index into its arguments.
pub(crate) fn cell_args(mut cell: usize, size: usize, degree: usize) -> Vec<usize> {
    let mut args = vec![0; degree];
    for a in args.iter_mut().rev() {
        *a = cell % size;
        cell /= size;
    }
    args
}

pub(crate) fn cell_index(args: &[usize], size: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

impl Cochain {
    /// Validates shape and reduces every coordinate.
    pub fn new(magma: Arc<BMagma>, degree: usize, coeff: AbelianGroup, values: Vec<Vec<i64>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("cochains start in degree 1".into()));
        }
        let cells = cell_count(magma.size(), degree)?;
        if values.len() != cells {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} cochain on {} elements needs {cells} values, got {}",
                magma.size(),
                values.len()
            )));
        }
        let k = coeff.rank();
        let mut flat = Vec::with_capacity(cells * k);
        for v in values {
            flat.extend(coeff.element(v)?.coords);
        }
        Ok(Cochain { magma, degree, coeff, values: flat })
    }

    pub fn zero(magma: Arc<BMagma>, degree: usize, coeff: AbelianGroup) -> Result<Self> {
        Self::from_fn(magma, degree, coeff, |_| None)
    }

    /// Builds a cochain from `f(args)`, where `None` means zero.
    pub fn from_fn(
        magma: Arc<BMagma>,
        degree: usize,
        coeff: AbelianGroup,
        f: impl Fn(&[usize]) -> Option<Vec<i64>>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("cochains start in degree 1".into()));
        }
        let size = magma.size();
        let cells = cell_count(size, degree)?;
        let k = coeff.rank();
        let mut values = vec![0; cells * k];
        for cell in 0..cells {
            if let Some(v) = f(&cell_args(cell, size, degree)) {
                let e = coeff.element(v)?;
                values[cell * k..(cell + 1) * k].copy_from_slice(&e.coords);
            }
        }
        Ok(Cochain { magma, degree, coeff, values })
    }

    pub(crate) fn from_flat(magma: Arc<BMagma>, degree: usize, coeff: AbelianGroup, mut values: Vec<i64>) -> Self {
        let k = coeff.rank();
        debug_assert_eq!(values.len(), magma.size().pow(degree as u32) * k);
        for (i, v) in values.iter_mut().enumerate() {
            *v = coeff.reduce_coord(i % k.max(1), *v);
        }
        Cochain { magma, degree, coeff, values }
    }

    /// Uniformly random on finite factors, `-5..=5` on free ones.
    pub fn random<R: Rng + ?Sized>(magma: Arc<BMagma>, degree: usize, coeff: AbelianGroup, rng: &mut R) -> Result<Self> {
        let cells = cell_count(magma.size(), degree)?;
        let values = (0..cells * coeff.rank())
            .map(|i| match coeff.moduli()[i % coeff.rank()] {
                0 => rng.gen_range(-5..=5),
                m => rng.gen_range(0..m as i64),
            })
            .collect();
        Ok(Self::from_flat(magma, degree, coeff, values))
    }

    pub fn magma(&self) -> &Arc<BMagma> {
        &self.magma
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self) -> &AbelianGroup {
        &self.coeff
    }

    /// Flat coordinates, cell-major.
    pub fn flat(&self) -> &[i64] {
        &self.values
    }

    pub fn cells(&self) -> usize {
        self.magma.size().pow(self.degree as u32)
    }

    /// Value at a cell index.
    #[inline]
    pub fn at(&self, cell: usize) -> &[i64] {
        let k = self.coeff.rank();
        &self.values[cell * k..(cell + 1) * k]
    }

    /// Value at `(x_1, ..., x_n)`.
    pub fn get(&self, args: &[usize]) -> GroupElement {
        debug_assert_eq!(args.len(), self.degree);
        GroupElement { coords: self.at(cell_index(args, self.magma.size())).to_vec() }
    }

    pub fn values(&self) -> Vec<Vec<i64>> {
        let k = self.coeff.rank();
        (0..self.cells()).map(|c| self.values[c * k..(c + 1) * k].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub(crate) fn same_space(&self, other: &Cochain) -> Result<()> {
        if self.magma.table() != other.magma.table() || self.coeff != other.coeff || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "cochains live in different spaces (degrees {} and {}, coefficients {:?} and {:?})",
                self.degree,
                other.degree,
                self.coeff.moduli(),
                other.coeff.moduli()
            )));
        }
        Ok(())
    }

    fn zip(&self, other: &Cochain, op: impl Fn(i64, i64) -> i64) -> Result<Cochain> {
        self.same_space(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect();
        Ok(Cochain::from_flat(self.magma.clone(), self.degree, self.coeff.clone(), values))
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Cochain {
        let values = self.values.iter().map(|&a| -a).collect();
        Cochain::from_flat(self.magma.clone(), self.degree, self.coeff.clone(), values)
    }

    /// `k * self`.
    pub fn scale(&self, k: i64) -> Cochain {
        let values = self.values.iter().map(|&a| a * k).collect();
        Cochain::from_flat(self.magma.clone(), self.degree, self.coeff.clone(), values)
    }

    /// `(σ^* c)(x_1, ..., x_n) = c(σ x_1, ..., σ x_n)`.
    pub fn pullback(&self, sigma: &[usize]) -> Result<Cochain> {
        let size = self.magma.size();
        if sigma.len() != size || sigma.iter().any(|&s| s >= size) {
            return Err(Error::DimensionMismatch(format!("{sigma:?} is not a map on 0..{size}")));
        }
        let k = self.coeff.rank();
        let mut values = Vec::with_capacity(self.values.len());
        for cell in 0..self.cells() {
            let args: Vec<usize> = cell_args(cell, size, self.degree).iter().map(|&x| sigma[x]).collect();
            values.extend_from_slice(&self.values[cell_index(&args, size) * k..][..k]);
        }
        Ok(Cochain { magma: self.magma.clone(), degree: self.degree, coeff: self.coeff.clone(), values })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCochain {
    magma: MagmaTable,
    degree: usize,
    coeff: AbelianGroup,
    values: Vec<Vec<i64>>,
}

impl Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawCochain {
            magma: self.magma.table().clone(),
            degree: self.degree,
            coeff: self.coeff.clone(),
            values: self.values(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cochain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCochain::deserialize(d)?;
        let magma = BMagma::new(raw.magma).map_err(serde::de::Error::custom)?;
        Cochain::new(Arc::new(magma), raw.degree, raw.coeff, raw.values).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z2() -> Arc<BMagma> {
        Arc::new(BMagma::new(MagmaTable::cyclic_group(2)).unwrap())
    }

    #[test]
    fn index_order_is_first_argument_most_significant() {
        let c = Cochain::from_fn(z2(), 2, AbelianGroup::cyclic(4), |a| Some(vec![(a[0] * 2 + a[1]) as i64]))
            .unwrap();
        assert_eq!(c.values(), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(c.get(&[1, 0]).coords, vec![2]);
    }

    #[test]
    fn json_shape() {
        let c = Cochain::from_fn(z2(), 1, AbelianGroup::new(vec![2, 0]), |a| Some(vec![a[0] as i64 + 2, -3]))
            .unwrap();
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(j, r#"{"magma":{"n":2,"table":[[0,1],[1,0]]},"degree":1,"coeff":{"moduli":[2,0]},"values":[[0,-3],[1,-3]]}"#);
        let back: Cochain = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c);
        let bad = r#"{"magma":{"n":2,"table":[[0,0],[1,1]]},"degree":1,"coeff":{"moduli":[2]},"values":[[0],[1]]}"#;
        assert!(serde_json::from_str::<Cochain>(bad).is_err());
        let short = r#"{"magma":{"n":2,"table":[[0,1],[1,0]]},"degree":2,"coeff":{"moduli":[2]},"values":[[0],[1]]}"#;
        assert!(serde_json::from_str::<Cochain>(short).is_err());
    }

    #[test]
    fn arithmetic_reduces() {
        let g = AbelianGroup::cyclic(3);
        let a = Cochain::from_fn(z2(), 1, g.clone(), |x| Some(vec![x[0] as i64 + 1])).unwrap();
        assert!(a.add(&a.neg()).unwrap().is_zero());
        assert_eq!(a.scale(2).values(), vec![vec![2], vec![1]]);
        let b = Cochain::zero(z2(), 2, g).unwrap();
        assert!(a.add(&b).is_err());
    }
}
