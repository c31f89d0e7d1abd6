use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z/m_1 x ... x Z/m_k`, written additively. A modulus of `0` is an
/// infinite cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

/// Coordinates of an element, one per factor; finite coordinates lie in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<i64>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Self {
        AbelianGroup { moduli }
    }

    pub fn cyclic(m: u64) -> Self {
        AbelianGroup { moduli: vec![m] }
    }

    pub fn integers() -> Self {
        Self::cyclic(0)
    }

    pub fn trivial() -> Self {
        AbelianGroup { moduli: Vec::new() }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&m| m > 0)
    }

    /// Order, or `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        self.moduli
            .iter()
            .try_fold(1u64, |acc, &m| if m == 0 { None } else { acc.checked_mul(m) })
    }

    #[inline]
    pub fn reduce_coord(&self, factor: usize, v: i64) -> i64 {
        match self.moduli[factor] {
            0 => v,
            m => v.rem_euclid(m as i64),
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    pub fn element(&self, coords: Vec<i64>) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.rank()
            )));
        }
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| self.reduce_coord(i, c))
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: (0..self.rank())
                .map(|i| self.reduce_coord(i, a.coords[i] + b.coords[i]))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: (0..self.rank()).map(|i| self.reduce_coord(i, -a.coords[i])).collect(),
        }
    }

    /// All elements of a finite group, first factor most significant.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let order = self
            .order()
            .ok_or_else(|| Error::ResourceLimit("cannot list an infinite group".into()))?;
        Ok((0..order)
            .map(|mut code| {
                let mut coords = vec![0; self.rank()];
                for i in (0..self.rank()).rev() {
                    coords[i] = (code % self.moduli[i]) as i64;
                    code /= self.moduli[i];
                }
                GroupElement { coords }
            })
            .collect())
    }
}
