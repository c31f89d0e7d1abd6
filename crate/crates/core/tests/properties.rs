//! Cross-module invariants as property tests.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bcoh::cochain::{
    abelian_coboundary_shift, comparison_from_abelian, differential, gauge_transform, is_abelian_3_cocycle,
    is_coboundary, is_cocycle, Cochain,
};
use bcoh::magma::{
    automorphisms, check_associative, check_commutative, enumerate_b_magmas, right_units, BMagma, MagmaTable,
};
use bcoh::search::search_matrix_ybe;
use bcoh::tensorops::{
    check_coxeter, check_s_relation, check_tetrahedron, place, s_to_z, Field, LegOperator, PrimeField,
};
use bcoh::zlinalg::AbelianGroup;

fn size3() -> &'static [MagmaTable] {
    static CELL: OnceLock<Vec<MagmaTable>> = OnceLock::new();
    CELL.get_or_init(|| enumerate_b_magmas(3, false))
}

fn size4_with_unit() -> &'static [MagmaTable] {
    static CELL: OnceLock<Vec<MagmaTable>> = OnceLock::new();
    CELL.get_or_init(|| enumerate_b_magmas(4, false).into_iter().filter(|t| !right_units(t).is_empty()).collect())
}

fn hexagon_solutions() -> &'static [LegOperator<PrimeField>] {
    static CELL: OnceLock<Vec<LegOperator<PrimeField>>> = OnceLock::new();
    CELL.get_or_init(|| search_matrix_ybe().unwrap().solutions)
}

fn random_op(f: PrimeField, dom: Vec<usize>, cod: Vec<usize>, rng: &mut ChaCha8Rng) -> LegOperator<PrimeField> {
    let n: usize = dom.iter().product::<usize>() * cod.iter().product::<usize>();
    let entries = (0..n).map(|_| f.random(rng)).collect();
    LegOperator::new(f, dom, cod, entries).unwrap()
}

fn random_invertible(f: PrimeField, legs: Vec<usize>, rng: &mut ChaCha8Rng) -> LegOperator<PrimeField> {
    loop {
        let op = random_op(f, legs.clone(), legs.clone(), rng);
        if op.is_invertible() {
            return op;
        }
    }
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn right_unit_forces_commutative_monoid(idx in any::<prop::sample::Index>()) {
        let t = idx.get(size4_with_unit());
        prop_assert!(check_commutative(t) && check_associative(t));
    }

    #[test]
    fn automorphisms_form_a_group(idx in any::<prop::sample::Index>()) {
        let t = idx.get(size3());
        let auts = automorphisms(t).unwrap();
        prop_assert!(auts.contains(&vec![0, 1, 2]));
        for a in &auts {
            let mut inv = vec![0; 3];
            for (x, &y) in a.iter().enumerate() {
                inv[y] = x;
            }
            prop_assert!(auts.contains(&inv));
            for b in &auts {
                prop_assert!(auts.contains(&compose(a, b)));
            }
        }
    }

    #[test]
    fn canonical_form_decides_isomorphism(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let all = size3();
        let (s, t) = (i.get(all), j.get(all));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let moved = s.relabel(&random_perm(3, &mut rng));
        prop_assert_eq!(s.canonical_form(), moved.canonical_form());
        // direct permutation scan
        let iso = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
            .iter()
            .any(|p| &s.relabel(p) == t);
        prop_assert_eq!(iso, s.canonical_form() == t.canonical_form());
    }

    #[test]
    fn coboundaries_and_gauge(idx in any::<prop::sample::Index>(), m in prop::sample::select(vec![2u64, 4, 6, 0]), seed in any::<u64>()) {
        let a = Arc::new(BMagma::new(idx.get(size3()).clone()).unwrap());
        let b = AbelianGroup::cyclic(m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = Cochain::random(a.clone(), 2, b.clone(), &mut rng).unwrap();
        let r = Cochain::random(a.clone(), 3, b.clone(), &mut rng).unwrap();
        prop_assert_eq!(gauge_transform(&r, &q).unwrap(), r.sub(&differential(&q)).unwrap());
        for c in [r.clone(), differential(&q), r.add(&differential(&q)).unwrap()] {
            if is_coboundary(&c).unwrap().is_some() {
                prop_assert!(is_cocycle(&c));
            }
        }
        prop_assert!(is_coboundary(&differential(&q)).unwrap().is_some());
    }

    #[test]
    fn pullback_commutes_with_d(idx in any::<prop::sample::Index>(), n in 1usize..=3, seed in any::<u64>()) {
        let t = idx.get(size3());
        let a = Arc::new(BMagma::new(t.clone()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Cochain::random(a, n, AbelianGroup::cyclic(6), &mut rng).unwrap();
        for s in automorphisms(t).unwrap() {
            prop_assert_eq!(differential(&c.pullback(&s).unwrap()), differential(&c).pullback(&s).unwrap());
        }
    }

    #[test]
    fn abelian_shift_moves_comparison_by_a_coboundary(k in 0u64..4, seed in any::<u64>()) {
        // a = 0 and the bilinear c(x, y) = 2kxy form an abelian 3-cocycle on Z/2 with values in Z/4
        let a_mag = Arc::new(BMagma::new(MagmaTable::cyclic_group(2)).unwrap());
        let b = AbelianGroup::cyclic(4);
        let a = Cochain::zero(a_mag.clone(), 3, b.clone()).unwrap();
        let c = Cochain::from_fn(a_mag.clone(), 2, b.clone(), |t| Some(vec![(2 * k * (t[0] * t[1]) as u64) as i64])).unwrap();
        prop_assert!(is_abelian_3_cocycle(&a, &c).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Cochain::random(a_mag, 2, b, &mut rng).unwrap();
        let (a2, c2) = abelian_coboundary_shift(&a, &c, &g).unwrap();
        let delta = comparison_from_abelian(&a2, &c2).unwrap().sub(&comparison_from_abelian(&a, &c).unwrap()).unwrap();
        prop_assert!(is_coboundary(&delta).unwrap().is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn place_is_functorial_and_flip_consistent(seed in any::<u64>(), pos in prop::sample::select(vec![[1usize, 3], [3, 1], [2, 3], [3, 2], [1, 2], [2, 1]])) {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amb = [2, 2, 2];
        let p = random_op(f, vec![2, 2], vec![2, 2], &mut rng);
        let q = random_op(f, vec![2, 2], vec![2, 2], &mut rng);
        let lhs = place(&p.compose(&q).unwrap(), &pos, &amb).unwrap();
        let rhs = place(&p, &pos, &amb).unwrap().compose(&place(&q, &pos, &amb).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(place(&LegOperator::identity(f, vec![2, 2]), &pos, &amb).unwrap().is_identity());
        // reversed positions are conjugation by the flip of the two operator legs
        let t = bcoh::tensorops::flip(f, 2, 2);
        let flipped = t.compose(&p).unwrap().compose(&t).unwrap();
        prop_assert_eq!(place(&p, &[pos[1], pos[0]], &amb).unwrap(), place(&flipped, &pos, &amb).unwrap());
    }

    #[test]
    fn hexagon_implies_coxeter_up_to_five_strands(idx in any::<prop::sample::Index>()) {
        let b = idx.get(hexagon_solutions());
        for n in 2..=5 {
            prop_assert!(check_coxeter(b, n).unwrap());
        }
    }

    #[test]
    fn s_relation_iff_tetrahedron(seed in any::<u64>(), scalar in any::<bool>()) {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = if scalar {
            // g ⊗ g ⊗ g composed with the reversal solves both sides
            let g = random_invertible(f, vec![2], &mut rng);
            let z = g.tensor(&g).tensor(&g);
            bcoh::tensorops::z_to_s(&z).unwrap()
        } else {
            random_invertible(f, vec![2, 2, 2], &mut rng)
        };
        let (a, b) = (check_s_relation(&s).unwrap(), check_tetrahedron(&s_to_z(&s).unwrap()).unwrap());
        prop_assert_eq!(a, b);
        if scalar {
            prop_assert!(a);
        }
    }
}

#[cfg(feature = "parallel")]
#[test]
fn searches_do_not_depend_on_thread_count() {
    use bcoh::search::{search_lze, search_settheoretic_ybe};
    let pools: Vec<rayon::ThreadPool> =
        [1, 3].iter().map(|&n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()).collect();
    let runs: Vec<String> = pools
        .iter()
        .map(|p| {
            p.install(|| {
                let a = serde_json::to_string(&search_settheoretic_ybe(2).unwrap()).unwrap();
                let b = serde_json::to_string(&search_lze(2, 1).unwrap()).unwrap();
                let c = serde_json::to_string(&search_matrix_ybe().unwrap()).unwrap();
                a + &b + &c
            })
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}
