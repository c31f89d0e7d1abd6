//! Exhaustive searches for solutions of the braid, pre-unital and RLLL
//! equations in small, fixed candidate spaces.
//!
//! Every search scans a documented space completely (or refuses), filters with
//! a cheap test, and re-verifies each survivor through the public checker in
//! [`crate::tensorops`].

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::par;
use crate::tensorops::{
    check_hexagon, check_lze, check_preunital, check_tetrahedron, LegOperator, PrimeField,
};

/// Largest carrier for [`search_settheoretic_ybe`]; `(n^2)!` candidates.
pub const SET_YBE_MAX_N: usize = 3;
/// Largest characteristic for [`search_preunital`]; `(p - 1)^2` candidates.
pub const PREUNITAL_MAX_PRIME: u64 = 1000;
/// Largest leg dimension for [`search_lze`].
pub const LZE_MAX_DIM: usize = 2;

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult<T> {
    pub kind: &'static str,
    pub parameters: Value,
    pub solutions: Vec<T>,
    pub candidates_scanned: u64,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restriction: Option<&'static str>,
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// The `idx`-th permutation of `0..k` in lexicographic order.
pub(crate) fn nth_permutation(k: usize, mut idx: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..k).collect();
    let mut out = Vec::with_capacity(k);
    for i in (0..k).rev() {
        let f = factorial(i);
        let pos = (idx / f) as usize;
        idx %= f;
        out.push(pool.remove(pos));
    }
    out
}

fn f2() -> PrimeField {
    PrimeField::new(2).expect("2 is prime")
}

/// Permutation matrix of a bijection on basis indices (column `j` has its 1 in row `perm[j]`).
fn perm_operator(f: PrimeField, legs: Vec<usize>, perm: &[usize]) -> LegOperator<PrimeField> {
    LegOperator::from_basis_map(f, legs.clone(), legs, |j| perm[j])
}

/// Applies a bijection of `legs`-indexed cells to the coordinates at `pos`.
fn act(perm: &[usize], legs: &[usize], pos: &[usize], coords: &mut [usize]) {
    let idx = pos.iter().zip(legs).fold(0, |acc, (&p, &d)| acc * d + coords[p]);
    let mut img = perm[idx];
    for (&p, &d) in pos.iter().zip(legs).rev() {
        coords[p] = img % d;
        img /= d;
    }
}

/// A set-theoretic solution `r: S x S -> S x S`, listed as `r(x, y)` for
/// `(x, y)` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SetSolution {
    pub n: usize,
    pub map: Vec<[usize; 2]>,
}

impl SetSolution {
    fn from_perm(n: usize, perm: &[usize]) -> Self {
        SetSolution { n, map: perm.iter().map(|&v| [v / n, v % n]).collect() }
    }

    pub fn as_perm(&self) -> Vec<usize> {
        self.map.iter().map(|[u, v]| u * self.n + v).collect()
    }

    pub fn to_operator(&self) -> LegOperator<PrimeField> {
        perm_operator(f2(), vec![self.n, self.n], &self.as_perm())
    }
}

fn set_braid_holds(n: usize, r: &[usize]) -> bool {
    let legs = [n, n];
    (0..n * n * n).all(|t| {
        let start = [t / (n * n), t / n % n, t % n];
        let mut a = start;
        for pos in [[0, 1], [1, 2], [0, 1]] {
            act(r, &legs, &pos, &mut a);
        }
        let mut b = start;
        for pos in [[1, 2], [0, 1], [1, 2]] {
            act(r, &legs, &pos, &mut b);
        }
        a == b
    })
}

/// Every bijection `r` of `S x S` (`|S| = n`) whose permutation matrix
/// satisfies `B_12 B_23 B_12 = B_23 B_12 B_23`.
pub fn search_settheoretic_ybe(n: usize) -> Result<SearchResult<SetSolution>> {
    if n == 0 || n > SET_YBE_MAX_N {
        return Err(Error::ResourceLimit(format!(
            "set-theoretic search scans (n^2)! bijections; supported for 1 <= n <= {SET_YBE_MAX_N}"
        )));
    }
    let k = n * n;
    let total = factorial(k);
    let found = par::filter_map_range(0..total, |i| {
        let perm = nth_permutation(k, i);
        set_braid_holds(n, &perm).then_some(perm)
    });
    let mut solutions = Vec::with_capacity(found.len());
    for perm in found {
        let sol = SetSolution::from_perm(n, &perm);
        if !check_hexagon(&sol.to_operator())? {
            return Err(Error::DifferentialBug("set-level braid test disagrees with check_hexagon".into()));
        }
        solutions.push(sol);
    }
    Ok(SearchResult {
        kind: "ybe-set",
        parameters: json!({ "n": n }),
        solutions,
        candidates_scanned: total,
        exhaustive: true,
        restriction: None,
    })
}

/// The 4x4 matrix over `F_2` whose entry `(r, c)` is bit `4r + c` of `code`.
pub fn f2_matrix(code: u32) -> LegOperator<PrimeField> {
    LegOperator::from_fn(f2(), vec![2, 2], |r, c| u64::from(code >> (4 * r + c) & 1))
}

/// Every invertible `B` on `F_2^2 ⊗ F_2^2` passing the hexagon equation,
/// by scanning all `2^16` matrices.
pub fn search_matrix_ybe() -> Result<SearchResult<LegOperator<PrimeField>>> {
    let found = par::filter_map_range(0..1 << 16, |code| {
        let b = f2_matrix(code as u32);
        (b.is_invertible() && check_hexagon(&b).expect("invertible, shape fixed")).then_some(b)
    });
    Ok(SearchResult {
        kind: "ybe-matrix",
        parameters: json!({ "field": { "prime": 2 }, "dim": 2 }),
        solutions: found,
        candidates_scanned: 1 << 16,
        exhaustive: true,
        restriction: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ScalarPair {
    pub b: u64,
    pub c: u64,
}

/// Every pair of nonzero scalars `(B, C)` over `F_p` passing the pre-unital
/// equations on a one-dimensional `M`.
pub fn search_preunital(p: u64) -> Result<SearchResult<ScalarPair>> {
    if p > PREUNITAL_MAX_PRIME {
        return Err(Error::ResourceLimit(format!(
            "pre-unital scalar search supports primes up to {PREUNITAL_MAX_PRIME}"
        )));
    }
    let f = PrimeField::new(p)?;
    let q = p - 1;
    let found = par::filter_map_range(0..q * q, |i| {
        let (b, c) = (i / q + 1, i % q + 1);
        let bo = LegOperator::scalar(f, vec![1, 1], b);
        let co = LegOperator::scalar(f, vec![1], c);
        check_preunital(&bo, &co).expect("nonzero scalars").then_some(ScalarPair { b, c })
    });
    Ok(SearchResult {
        kind: "preunital",
        parameters: json!({ "field": { "prime": p }, "dim": 1 }),
        solutions: found,
        candidates_scanned: q * q,
        exhaustive: true,
        restriction: Some("scalars: dim M = 1"),
    })
}

/// A permutation-type solution of the tetrahedron and RLLL equations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LzePair {
    pub l_perm: Vec<usize>,
    pub z_perm: Vec<usize>,
    pub l: LegOperator<PrimeField>,
    pub z: LegOperator<PrimeField>,
}

fn tetra_set_holds(b: usize, z: &[usize]) -> bool {
    let legs = [b, b, b];
    let amb = [b; 6];
    let lhs = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];
    (0..b.pow(6)).all(|t| {
        let start = crate::tensorops::operator::decode(t, &amb);
        let mut x = start.clone();
        for pos in lhs.iter().rev() {
            act(z, &legs, pos, &mut x);
        }
        let mut y = start;
        for pos in lhs.iter() {
            act(z, &legs, pos, &mut y);
        }
        x == y
    })
}

fn lze_set_holds(c: usize, b: usize, l: &[usize], z: &[usize]) -> bool {
    let (ll, zl) = ([c, c, b], [b, b, b]);
    let amb = [c, c, c, b, b, b];
    let total = c.pow(3) * b.pow(3);
    (0..total).all(|t| {
        let start = crate::tensorops::operator::decode(t, &amb);
        // L124 L135 L236 Z456: Z acts first
        let mut x = start.clone();
        act(z, &zl, &[3, 4, 5], &mut x);
        act(l, &ll, &[1, 2, 5], &mut x);
        act(l, &ll, &[0, 2, 4], &mut x);
        act(l, &ll, &[0, 1, 3], &mut x);
        let mut y = start;
        act(l, &ll, &[0, 1, 3], &mut y);
        act(l, &ll, &[0, 2, 4], &mut y);
        act(l, &ll, &[1, 2, 5], &mut y);
        act(z, &zl, &[3, 4, 5], &mut y);
        x == y
    })
}

/// All pairs `(L, Z)` of permutation matrices over `F_2`, `L` on legs
/// `(c, c, b)` and `Z` on `(b, b, b)`, with `Z` a tetrahedron solution and
/// `(L, Z)` an RLLL solution.
///
/// The scan covers all `(b^3)!` candidates for `Z` and, for every
/// tetrahedron solution among them, all `(c^2 b)!` candidates for `L`;
/// `candidates_scanned` counts both.
pub fn search_lze(c: usize, b: usize) -> Result<SearchResult<LzePair>> {
    if c == 0 || b == 0 || c > LZE_MAX_DIM || b > LZE_MAX_DIM {
        return Err(Error::ResourceLimit(format!(
            "permutation-type RLLL search supports leg dimensions 1..={LZE_MAX_DIM}"
        )));
    }
    let f = f2();
    let (kz, kl) = (b.pow(3), c * c * b);
    let z_total = factorial(kz);
    let zs = par::filter_map_range(0..z_total, |i| {
        let z = nth_permutation(kz, i);
        tetra_set_holds(b, &z).then_some(z)
    });
    let l_total = factorial(kl);
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = par::flat_map(&zs, |z| {
        (0..l_total)
            .filter_map(|i| {
                let l = nth_permutation(kl, i);
                lze_set_holds(c, b, &l, z).then(|| (l, z.clone()))
            })
            .collect()
    });
    let mut solutions = Vec::with_capacity(pairs.len());
    for (l_perm, z_perm) in pairs {
        let l = perm_operator(f, vec![c, c, b], &l_perm);
        let z = perm_operator(f, vec![b, b, b], &z_perm);
        if !check_tetrahedron(&z)? || !check_lze(&l, &z)? {
            return Err(Error::DifferentialBug("set-level RLLL test disagrees with the checkers".into()));
        }
        solutions.push(LzePair { l_perm, z_perm, l, z });
    }
    Ok(SearchResult {
        kind: "lze",
        parameters: json!({ "field": { "prime": 2 }, "c": c, "b": b }),
        solutions,
        candidates_scanned: z_total + zs.len() as u64 * l_total,
        exhaustive: true,
        restriction: Some("permutation matrices only"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use std::collections::BTreeSet;

    #[test]
    fn permutations_in_lexicographic_order() {
        let all: Vec<Vec<usize>> = (0..24).map(|i| nth_permutation(4, i)).collect();
        let expect: Vec<Vec<usize>> = (0..4).permutations(4).collect();
        assert_eq!(all, expect);
    }

    /// Braid relation for a bijection on pairs, composing tuple maps.
    fn oracle_braid(n: usize, r: &[(usize, usize)]) -> bool {
        let rr = |x: usize, y: usize| r[x * n + y];
        (0..n).cartesian_product(0..n).cartesian_product(0..n).all(|((x, y), z)| {
            let b12 = |(a, b, c): (usize, usize, usize)| {
                let (u, v) = rr(a, b);
                (u, v, c)
            };
            let b23 = |(a, b, c): (usize, usize, usize)| {
                let (u, v) = rr(b, c);
                (a, u, v)
            };
            b12(b23(b12((x, y, z)))) == b23(b12(b23((x, y, z))))
        })
    }

    #[test]
    fn set_ybe_small_cases() {
        let r1 = search_settheoretic_ybe(1).unwrap();
        assert_eq!(r1.solutions.len(), 1);
        assert_eq!(r1.candidates_scanned, 1);
        let r2 = search_settheoretic_ybe(2).unwrap();
        let oracle: Vec<Vec<(usize, usize)>> = (0..2)
            .cartesian_product(0..2)
            .permutations(4)
            .filter(|r| oracle_braid(2, r))
            .collect();
        assert_eq!(r2.solutions.len(), oracle.len());
        assert_eq!(r2.candidates_scanned, 24);
        let flip = SetSolution { n: 2, map: vec![[0, 0], [1, 0], [0, 1], [1, 1]] };
        assert!(r2.solutions.contains(&flip));
        assert!(search_settheoretic_ybe(4).is_err());
    }

    #[test]
    fn preunital_scalars() {
        for p in [2, 3, 5, 7] {
            let r = search_preunital(p).unwrap();
            assert_eq!(r.solutions, vec![ScalarPair { b: 1, c: 1 }]);
            assert_eq!(r.candidates_scanned, (p - 1) * (p - 1));
        }
    }

    /// Hexagon check on plain bit matrices: B12 B23 B12 = B23 B12 B23 on F_2^8.
    fn naive_ybe(b: &[[u8; 4]; 4]) -> bool {
        let kron_left = |m: &[[u8; 4]; 4]| {
            // B ⊗ 1
            let mut out = [[0u8; 8]; 8];
            for r in 0..8 {
                for c in 0..8 {
                    if r % 2 == c % 2 {
                        out[r][c] = m[r / 2][c / 2];
                    }
                }
            }
            out
        };
        let kron_right = |m: &[[u8; 4]; 4]| {
            // 1 ⊗ B
            let mut out = [[0u8; 8]; 8];
            for r in 0..8 {
                for c in 0..8 {
                    if r / 4 == c / 4 {
                        out[r][c] = m[r % 4][c % 4];
                    }
                }
            }
            out
        };
        let mul = |a: &[[u8; 8]; 8], b: &[[u8; 8]; 8]| {
            let mut out = [[0u8; 8]; 8];
            for r in 0..8 {
                for c in 0..8 {
                    out[r][c] = (0..8).fold(0, |acc, k| acc ^ (a[r][k] & b[k][c]));
                }
            }
            out
        };
        let (b12, b23) = (kron_left(b), kron_right(b));
        mul(&mul(&b12, &b23), &b12) == mul(&mul(&b23, &b12), &b23)
    }

    fn naive_invertible(b: &[[u8; 4]; 4]) -> bool {
        let mut m = *b;
        let mut rank = 0;
        for c in 0..4 {
            if let Some(p) = (rank..4).find(|&r| m[r][c] == 1) {
                m.swap(rank, p);
                for r in 0..4 {
                    if r != rank && m[r][c] == 1 {
                        for k in 0..4 {
                            m[r][k] ^= m[rank][k];
                        }
                    }
                }
                rank += 1;
            }
        }
        rank == 4
    }

    #[test]
    fn matrix_ybe_matches_independent_scan() {
        let r = search_matrix_ybe().unwrap();
        // descending codes, bit 15 - k is entry k
        let mut oracle = 0;
        for code in (0..1u32 << 16).rev() {
            let mut b = [[0u8; 4]; 4];
            for k in 0..16 {
                b[k / 4][k % 4] = (code >> (15 - k) & 1) as u8;
            }
            if naive_invertible(&b) && naive_ybe(&b) {
                oracle += 1;
            }
        }
        assert_eq!(r.solutions.len(), oracle);
        let f = f2();
        assert!(r.solutions.contains(&LegOperator::identity(f, vec![2, 2])));
        assert!(r.solutions.contains(&crate::tensorops::flip(f, 2, 2)));
        assert!(r.solutions.iter().all(|b| check_hexagon(b).unwrap()));
    }

    #[test]
    fn lze_results_invariant_under_relabeling() {
        let (c, b) = (2, 2);
        let r = search_lze(c, b).unwrap();
        assert!(r.solutions.iter().any(|s| s.l.is_identity() && s.z.is_identity()));
        let zs: BTreeSet<&Vec<usize>> = r.solutions.iter().map(|s| &s.z_perm).collect();
        assert_eq!(r.candidates_scanned, 40320 * (1 + zs.len() as u64));
        let f = f2();
        let swap = LegOperator::from_basis_map(f, vec![2], vec![2], |j| 1 - j);
        let id = LegOperator::identity(f, vec![2]);
        let found: BTreeSet<(Vec<usize>, Vec<usize>)> =
            r.solutions.iter().map(|s| (s.l_perm.clone(), s.z_perm.clone())).collect();
        // relabel C, B, or both
        for (sc, sb) in [(&swap, &id), (&id, &swap), (&swap, &swap)] {
            let gl = sc.tensor(sc).tensor(sb);
            let gz = sb.tensor(sb).tensor(sb);
            let moved: BTreeSet<(Vec<usize>, Vec<usize>)> = r
                .solutions
                .iter()
                .map(|s| {
                    let l = gl.compose(&s.l).unwrap().compose(&gl).unwrap();
                    let z = gz.compose(&s.z).unwrap().compose(&gz).unwrap();
                    (l.as_basis_map().unwrap(), z.as_basis_map().unwrap())
                })
                .collect();
            assert_eq!(moved, found);
        }
    }

    #[test]
    fn lze_trivial_dims() {
        let r = search_lze(1, 1).unwrap();
        assert_eq!(r.solutions.len(), 1);
        let r = search_lze(2, 1).unwrap();
        // with b = 1 the RLLL equation reads L_12 L_13 L_23 = L_23 L_13 L_12 on C^{⊗3}
        assert!(r.solutions.iter().any(|s| s.l.is_identity()));
        assert!(search_lze(3, 1).is_err());
    }
}
