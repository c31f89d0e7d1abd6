//! Finite magmas, the b-axiom `x(yz) = y(xz)`, enumeration and symmetry.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// Largest carrier for which [`automorphisms`] scans all `n!` permutations.
pub const AUTOMORPHISM_SCAN_LIMIT: usize = 8;

/// A finite binary operation on `0..n`, stored row-major: `table[x * n + y] = xy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMagma", into = "RawMagma")]
pub struct MagmaTable {
    n: usize,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMagma {
    n: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawMagma> for MagmaTable {
    type Error = Error;

    fn try_from(raw: RawMagma) -> Result<Self> {
        MagmaTable::from_rows(raw.n, raw.table)
    }
}

impl From<MagmaTable> for RawMagma {
    fn from(t: MagmaTable) -> Self {
        RawMagma { n: t.n, table: t.rows() }
    }
}

impl MagmaTable {
    pub fn from_rows(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::MalformedTable(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            table.extend(row);
        }
        Self::from_flat(n, table)
    }

    pub fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("carrier must be nonempty".into()));
        }
        if table.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some((k, v)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::MalformedTable(format!(
                "entry ({}, {}) = {v} is outside 0..{n}",
                k / n,
                k % n
            )));
        }
        Ok(MagmaTable { n, table })
    }

    /// Addition table of `Z/n`.
    pub fn cyclic_group(n: usize) -> Self {
        Self::from_fn(n, |x, y| (x + y) % n)
    }

    /// `xy = y`.
    pub fn right_projection(n: usize) -> Self {
        Self::from_fn(n, |_, y| y)
    }

    /// `xy = x`.
    pub fn left_projection(n: usize) -> Self {
        Self::from_fn(n, |x, _| x)
    }

    /// Addition table of `Z/m_1 x ... x Z/m_k`, elements indexed in mixed radix
    /// with the first factor most significant.
    pub fn product_of_cyclic(moduli: &[usize]) -> Self {
        let n: usize = moduli.iter().product();
        let decode = |mut e: usize| {
            let mut c = vec![0; moduli.len()];
            for i in (0..moduli.len()).rev() {
                c[i] = e % moduli[i];
                e /= moduli[i];
            }
            c
        };
        Self::from_fn(n, |x, y| {
            let (cx, cy) = (decode(x), decode(y));
            moduli
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &m)| acc * m + (cx[i] + cy[i]) % m)
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::from_flat(n, table).expect("generated table out of range")
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    pub fn as_flat(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// The table transported along the bijection `perm`: `σ·t (σx, σy) = σ(xy)`.
    pub fn relabel(&self, perm: &[usize]) -> MagmaTable {
        let n = self.n;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x] * n + perm[y]] = perm[self.mul(x, y)];
            }
        }
        MagmaTable { n, table }
    }

    /// Lexicographically least relabelled table over all carrier permutations.
    pub fn canonical_form(&self) -> MagmaTable {
        (0..self.n)
            .permutations(self.n)
            .map(|p| self.relabel(&p))
            .min()
            .expect("at least one permutation")
    }
}

/// True iff `x(yz) = y(xz)` for all triples.
pub fn check_b_axiom(t: &MagmaTable) -> bool {
    let n = t.size();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| t.mul(x, t.mul(y, z)) == t.mul(y, t.mul(x, z))))
    })
}

pub fn check_commutative(t: &MagmaTable) -> bool {
    let n = t.size();
    (0..n).all(|x| (0..n).all(|y| t.mul(x, y) == t.mul(y, x)))
}

pub fn check_associative(t: &MagmaTable) -> bool {
    let n = t.size();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| t.mul(x, t.mul(y, z)) == t.mul(t.mul(x, y), z)))
    })
}

/// All `e` with `xe = x` for every `x`.
pub fn right_units(t: &MagmaTable) -> Vec<usize> {
    let n = t.size();
    (0..n).filter(|&e| (0..n).all(|x| t.mul(x, e) == x)).collect()
}

/// All `e` with `ee = e`.
pub fn idempotents(t: &MagmaTable) -> Vec<usize> {
    (0..t.size()).filter(|&e| t.mul(e, e) == e).collect()
}

/// A magma known to satisfy the b-axiom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BMagma(MagmaTable);

impl BMagma {
    pub fn new(t: MagmaTable) -> Result<Self> {
        if check_b_axiom(&t) {
            Ok(BMagma(t))
        } else {
            Err(Error::InvalidInput("table violates x(yz) = y(xz)".into()))
        }
    }

    pub fn table(&self) -> &MagmaTable {
        &self.0
    }

    pub fn into_table(self) -> MagmaTable {
        self.0
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.0.size()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.0.mul(x, y)
    }
}

impl std::ops::Deref for BMagma {
    type Target = MagmaTable;

    fn deref(&self) -> &MagmaTable {
        &self.0
    }
}

const UNSET: u8 = u8::MAX;

struct Filler {
    n: usize,
    cells: Vec<u8>,
}

impl Filler {
    #[inline]
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        match self.cells[x * self.n + y] {
            UNSET => None,
            v => Some(v as usize),
        }
    }

    /// Vacuously true while any of the four cells it reads is still open.
    #[inline]
    fn triple_ok(&self, x: usize, y: usize, z: usize) -> bool {
        let (Some(yz), Some(xz)) = (self.get(y, z), self.get(x, z)) else {
            return true;
        };
        match (self.get(x, yz), self.get(y, xz)) {
            (Some(l), Some(r)) => l == r,
            _ => true,
        }
    }

    /// Re-checks every triple that reads cell `(i, j)`.
    fn consistent_after(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        for k in 0..n {
            // (y, z) = (i, j) and (x, z) = (i, j)
            if !self.triple_ok(k, i, j) || !self.triple_ok(i, k, j) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.get(a, b) == Some(j) {
                    // (x, yz) = (i, j) with yz = j, and (y, xz) = (i, j) with xz = j
                    if !self.triple_ok(i, a, b) || !self.triple_ok(a, i, b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, k: usize, out: &mut Vec<MagmaTable>) {
        let n = self.n;
        if k == n * n {
            let table = self.cells.iter().map(|&v| v as usize).collect();
            out.push(MagmaTable { n, table });
            return;
        }
        for v in 0..n {
            self.cells[k] = v as u8;
            if self.consistent_after(k / n, k % n) {
                self.fill(k + 1, out);
            }
        }
        self.cells[k] = UNSET;
    }
}

/// All b-magma tables on `0..n`, in lexicographic (row-major) order.
///
/// With `up_to_iso`, returns the sorted canonical forms of the isomorphism
/// classes instead.
pub fn enumerate_b_magmas(n: usize, up_to_iso: bool) -> Vec<MagmaTable> {
    assert!(n >= 1 && n < UNSET as usize, "carrier size out of range");
    // Work is split over the choices of the first row.
    let prefixes: Vec<Vec<u8>> = (0..n)
        .map(|_| 0..n as u8)
        .multi_cartesian_product()
        .collect();
    let all = par::flat_map(&prefixes, |row| {
        let mut f = Filler { n, cells: vec![UNSET; n * n] };
        for (j, &v) in row.iter().enumerate() {
            f.cells[j] = v;
            if !f.consistent_after(0, j) {
                return Vec::new();
            }
        }
        let mut out = Vec::new();
        f.fill(n, &mut out);
        out
    });
    if !up_to_iso {
        return all;
    }
    let classes: BTreeSet<MagmaTable> = par::map(&all, MagmaTable::canonical_form)
        .into_iter()
        .collect();
    classes.into_iter().collect()
}

/// All permutations `σ` of the carrier with `σ(xy) = σ(x)σ(y)`, in
/// lexicographic order.
pub fn automorphisms(t: &MagmaTable) -> Result<Vec<Vec<usize>>> {
    let n = t.size();
    if n > AUTOMORPHISM_SCAN_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "automorphism scan needs {n}! permutations; limit is n <= {AUTOMORPHISM_SCAN_LIMIT}"
        )));
    }
    Ok((0..n)
        .permutations(n)
        .filter(|p| (0..n).all(|x| (0..n).all(|y| p[t.mul(x, y)] == t.mul(p[x], p[y]))))
        .collect())
}

/// A map between the carriers of two magmas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct MagmaMap {
    source: MagmaTable,
    target: MagmaTable,
    map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    source: MagmaTable,
    target: MagmaTable,
    map: Vec<usize>,
}

impl TryFrom<RawMap> for MagmaMap {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        MagmaMap::new(raw.source, raw.target, raw.map)
    }
}

impl From<MagmaMap> for RawMap {
    fn from(m: MagmaMap) -> Self {
        RawMap { source: m.source, target: m.target, map: m.map }
    }
}

impl MagmaMap {
    pub fn new(source: MagmaTable, target: MagmaTable, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::DimensionMismatch(format!(
                "map has {} values but the source has {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::DimensionMismatch(format!(
                "map value {v} outside target carrier 0..{}",
                target.size()
            )));
        }
        Ok(MagmaMap { source, target, map })
    }

    pub fn identity(t: &MagmaTable) -> Self {
        MagmaMap { source: t.clone(), target: t.clone(), map: (0..t.size()).collect() }
    }

    pub fn source(&self) -> &MagmaTable {
        &self.source
    }

    pub fn target(&self) -> &MagmaTable {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }
}

pub fn is_homomorphism(m: &MagmaMap) -> bool {
    let (s, t) = (&m.source, &m.target);
    let n = s.size();
    (0..n).all(|x| (0..n).all(|y| m.apply(s.mul(x, y)) == t.mul(m.apply(x), m.apply(y))))
}
