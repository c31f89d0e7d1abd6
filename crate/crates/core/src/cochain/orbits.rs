use serde::Serialize;

use super::complex::CohomologyResult;
use crate::error::{Error, Result};
use crate::magma::automorphisms;
use crate::par;

/// Largest `|H^n|` whose elements [`aut_orbits`] will list.
pub const ORBIT_ENUMERATION_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbits {
    /// Number of automorphisms of `A` acting.
    pub group_order: usize,
    /// Each orbit as a sorted list of class coordinates; orbits sorted by
    /// their first element.
    pub orbits: Vec<Vec<Vec<i64>>>,
}

fn decode(mut code: u64, radix: &[u64]) -> Vec<i64> {
    let mut out = vec![0; radix.len()];
    for i in (0..radix.len()).rev() {
        out[i] = (code % radix[i]) as i64;
        code /= radix[i];
    }
    out
}

fn encode(class: &[i64], radix: &[u64]) -> u64 {
    class.iter().zip(radix).fold(0, |acc, (&c, &r)| acc * r + c as u64)
}

/// Orbits of `Aut(A)` on `H^n_b(A, B)`, acting by pullback `σ^* c`.
pub fn aut_orbits(h: &CohomologyResult) -> Result<Orbits> {
    let order = h
        .order()
        .ok_or_else(|| Error::ResourceLimit("H^n has a free summand; cannot list its elements".into()))?;
    if order > ORBIT_ENUMERATION_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "|H^{}| = {order} exceeds the enumeration limit {ORBIT_ENUMERATION_LIMIT}",
            h.degree
        )));
    }
    let auts = automorphisms(h.magma().table())?;
    let radix = &h.invariant_factors;
    let codes: Vec<u64> = (0..order).collect();
    // image of every class under every automorphism
    let images: Vec<Vec<u64>> = par::map(&codes, |&code| {
        let c = h.cocycle_of(&decode(code, radix)).expect("class coordinates match generators");
        auts.iter()
            .map(|s| {
                let pulled = c.pullback(s).expect("automorphism is a permutation");
                encode(&h.classify(&pulled).expect("pullback of a cocycle is a cocycle"), radix)
            })
            .collect()
    });

    let mut seen = vec![false; order as usize];
    let mut orbits = Vec::new();
    for start in 0..order as usize {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            for &img in &images[orbit[i]] {
                if !std::mem::replace(&mut seen[img as usize], true) {
                    orbit.push(img as usize);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit.into_iter().map(|c| decode(c as u64, radix)).collect());
    }
    Ok(Orbits { group_order: auts.len(), orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{cohomology, differential, is_coboundary, is_cocycle, Cochain};
    use crate::magma::{BMagma, MagmaTable};
    use crate::zlinalg::AbelianGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;
    use std::sync::Arc;

    #[test]
    fn trivial_action_gives_singletons() {
        let m = Arc::new(BMagma::new(MagmaTable::cyclic_group(2)).unwrap());
        let h = cohomology(&m, &AbelianGroup::cyclic(2), 3).unwrap();
        let o = aut_orbits(&h).unwrap();
        assert_eq!(o.group_order, 1);
        assert_eq!(o.orbits.len() as u64, h.order().unwrap());
    }

    /// Orbits computed on cocycles directly, then projected to classes by
    /// coboundary tests.
    fn orbit_count_oracle(m: &Arc<BMagma>, n: usize, modulus: u64) -> usize {
        let cells = m.size().pow(n as u32);
        let all: Vec<Cochain> = (0..(modulus as usize).pow(cells as u32))
            .map(|mut code| {
                let vals = (0..cells)
                    .map(|_| {
                        let v = (code % modulus as usize) as i64;
                        code /= modulus as usize;
                        v
                    })
                    .collect();
                Cochain::from_flat(m.clone(), n, AbelianGroup::cyclic(modulus), vals)
            })
            .filter(is_cocycle)
            .collect();
        let same_class = |a: &Cochain, b: &Cochain| is_coboundary(&a.sub(b).unwrap()).unwrap().is_some();
        // class representatives
        let mut reps: Vec<Cochain> = Vec::new();
        for c in &all {
            if !reps.iter().any(|r| same_class(r, c)) {
                reps.push(c.clone());
            }
        }
        let auts = automorphisms(m.table()).unwrap();
        let class_of = |c: &Cochain| reps.iter().position(|r| same_class(r, c)).unwrap();
        let mut orbits: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for r in &reps {
            orbits.insert(auts.iter().map(|s| class_of(&r.pullback(s).unwrap())).collect());
        }
        orbits.len()
    }

    #[test]
    fn orbit_counts_match_oracle() {
        for t in [MagmaTable::cyclic_group(2), MagmaTable::right_projection(2), MagmaTable::right_projection(3)] {
            let m = Arc::new(BMagma::new(t).unwrap());
            for n in [2, 3] {
                if m.size() == 3 && n == 3 {
                    continue;
                }
                let h = cohomology(&m, &AbelianGroup::cyclic(2), n).unwrap();
                let o = aut_orbits(&h).unwrap();
                assert_eq!(o.orbits.len(), orbit_count_oracle(&m, n, 2));
            }
        }
    }

    #[test]
    fn pullback_commutes_with_d() {
        let m = Arc::new(BMagma::new(MagmaTable::cyclic_group(3)).unwrap());
        let auts = automorphisms(m.table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in 1..=3 {
            for _ in 0..10 {
                let c = Cochain::random(m.clone(), n, AbelianGroup::cyclic(6), &mut rng).unwrap();
                for s in &auts {
                    assert_eq!(differential(&c.pullback(s).unwrap()), differential(&c).pullback(s).unwrap());
                    if n >= 2 {
                        let b = differential(&c);
                        assert!(is_coboundary(&b.pullback(s).unwrap()).unwrap().is_some());
                    }
                }
            }
        }
    }
}
