//! Coherence equations of b-structures on vector spaces: pentagon, hexagon,
//! pre-unital and the b-functor condition on the identity.

use std::sync::Arc;

use super::field::Field;
use super::operator::LegOperator;
use super::word::{CheckOptions, Equation, Letter, Word};
use crate::error::{Error, Result};

/// Dimension of the common leg when `op` is square with `n` equal legs.
pub(crate) fn equal_legs<F: Field>(op: &LegOperator<F>, n: usize, what: &str) -> Result<usize> {
    let legs = op.domain_legs();
    if !op.is_square_signature() || legs.len() != n || legs.iter().any(|&d| d != legs[0]) {
        return Err(Error::DimensionMismatch(format!(
            "{what} must act on {n} equal legs, got {:?} -> {:?}",
            legs,
            op.codomain_legs()
        )));
    }
    Ok(legs[0])
}

fn invertible<F: Field>(op: &LegOperator<F>, what: &str) -> Result<Arc<LegOperator<F>>> {
    op.require_invertible(what)?;
    Ok(Arc::new(op.clone()))
}

fn op<F: Field>(a: &Arc<LegOperator<F>>, pos: &[usize]) -> Letter<F> {
    Letter::op(a, pos)
}

/// `Φ_12 Φ_13 Φ_23 = Φ_23 Φ_12` on `M^{⊗3}`.
pub fn pentagon_equation<F: Field>(phi: &LegOperator<F>) -> Result<Equation<F>> {
    let m = equal_legs(phi, 2, "Φ")?;
    let p = invertible(phi, "Φ")?;
    let f = phi.field();
    let amb = [m; 3];
    let lhs = Word::product(f, &amb, vec![op(&p, &[1, 2]), op(&p, &[1, 3]), op(&p, &[2, 3])])?;
    let rhs = Word::product(f, &amb, vec![op(&p, &[2, 3]), op(&p, &[1, 2])])?;
    Equation::new(lhs, rhs)
}

pub fn check_pentagon<F: Field>(phi: &LegOperator<F>) -> Result<bool> {
    Ok(pentagon_equation(phi)?.holds(&CheckOptions::default()))
}

/// `B_12 B_23 B_12 = B_23 B_12 B_23` on `M^{⊗3}`.
pub fn hexagon_equation<F: Field>(b: &LegOperator<F>) -> Result<Equation<F>> {
    let m = equal_legs(b, 2, "B")?;
    let bb = invertible(b, "B")?;
    let f = b.field();
    let amb = [m; 3];
    let lhs = Word::product(f, &amb, vec![op(&bb, &[1, 2]), op(&bb, &[2, 3]), op(&bb, &[1, 2])])?;
    let rhs = Word::product(f, &amb, vec![op(&bb, &[2, 3]), op(&bb, &[1, 2]), op(&bb, &[2, 3])])?;
    Equation::new(lhs, rhs)
}

pub fn check_hexagon<F: Field>(b: &LegOperator<F>) -> Result<bool> {
    Ok(hexagon_equation(b)?.holds(&CheckOptions::default()))
}

/// The three pre-unital identities, in order:
/// `B(1⊗C)B = (1⊗C)B(1⊗C)`, `B(1⊗C²)B = C²⊗1` and
/// `B_23 C_3 B_12 B_23 C_2 B_32 = C_1 C_2 B_32 t_23`.
pub fn preunital_equations<F: Field>(b: &LegOperator<F>, c: &LegOperator<F>) -> Result<Vec<Equation<F>>> {
    let m = equal_legs(b, 2, "B")?;
    if equal_legs(c, 1, "C")? != m {
        return Err(Error::DimensionMismatch(format!(
            "C acts on dimension {} but B on {m}",
            c.domain_legs()[0]
        )));
    }
    let bb = invertible(b, "B")?;
    let cc = invertible(c, "C")?;
    let c2 = Arc::new(c.compose(c)?);
    let f = b.field();
    let two = [m; 2];
    let three = [m; 3];

    let first = Equation::new(
        Word::product(f, &two, vec![op(&bb, &[1, 2]), op(&cc, &[2]), op(&bb, &[1, 2])])?,
        Word::product(f, &two, vec![op(&cc, &[2]), op(&bb, &[1, 2]), op(&cc, &[2])])?,
    )?;
    let second = Equation::new(
        Word::product(f, &two, vec![op(&bb, &[1, 2]), op(&c2, &[2]), op(&bb, &[1, 2])])?,
        Word::product(f, &two, vec![op(&c2, &[1])])?,
    )?;
    let third = Equation::new(
        Word::product(
            f,
            &three,
            vec![
                op(&bb, &[2, 3]),
                op(&cc, &[3]),
                op(&bb, &[1, 2]),
                op(&bb, &[2, 3]),
                op(&cc, &[2]),
                op(&bb, &[3, 2]),
            ],
        )?,
        Word::product(
            f,
            &three,
            vec![op(&cc, &[1]), op(&cc, &[2]), op(&bb, &[3, 2]), Letter::Flip(2)],
        )?,
    )?;
    Ok(vec![first, second, third])
}

pub fn check_preunital<F: Field>(b: &LegOperator<F>, c: &LegOperator<F>) -> Result<bool> {
    let opts = CheckOptions::default();
    Ok(preunital_equations(b, c)?.iter().all(|e| e.holds(&opts)))
}

/// `(g⊗g)B = B(g⊗g)`.
pub fn id_bfunctor_equation<F: Field>(g: &LegOperator<F>, b: &LegOperator<F>) -> Result<Equation<F>> {
    let m = equal_legs(b, 2, "B")?;
    if equal_legs(g, 1, "g")? != m {
        return Err(Error::DimensionMismatch("g and B act on different dimensions".into()));
    }
    let gg = invertible(g, "g")?;
    let bb = Arc::new(b.clone());
    let f = b.field();
    let amb = [m; 2];
    Equation::new(
        Word::product(f, &amb, vec![op(&gg, &[1]), op(&gg, &[2]), op(&bb, &[1, 2])])?,
        Word::product(f, &amb, vec![op(&bb, &[1, 2]), op(&gg, &[1]), op(&gg, &[2])])?,
    )
}

pub fn check_id_bfunctor<F: Field>(g: &LegOperator<F>, b: &LegOperator<F>) -> Result<bool> {
    Ok(id_bfunctor_equation(g, b)?.holds(&CheckOptions::default()))
}

/// `β_{U1,U2,U3} = B_24 t_13` on `U1 ⊗ M ⊗ U2 ⊗ M ⊗ U3`, where each `U` is a
/// block of legs (possibly empty). The codomain is `U2 ⊗ M ⊗ U1 ⊗ M ⊗ U3`.
pub fn beta_blocks<F: Field>(b: &LegOperator<F>, u1: &[usize], u2: &[usize], u3: &[usize]) -> Result<LegOperator<F>> {
    let m = equal_legs(b, 2, "B")?;
    let f = b.field();
    let mut legs = u1.to_vec();
    legs.push(m);
    legs.extend_from_slice(u2);
    legs.push(m);
    legs.extend_from_slice(u3);

    let (n1, n2) = (u1.len(), u2.len());
    let m1 = n1;
    let m2 = n1 + 1 + n2;
    let mut order: Vec<usize> = (m1 + 1..m2).collect();
    order.push(m1);
    order.extend(0..n1);
    order.push(m2);
    order.extend(m2 + 1..legs.len());
    let t13 = Arc::new(LegOperator::leg_permutation(f.clone(), legs.clone(), &order)?);
    let all: Vec<usize> = (1..=legs.len()).collect();
    let bb = Arc::new(b.clone());
    Word::product(f, &legs, vec![op(&bb, &[n2 + 1, n2 + n1 + 2]), op(&t13, &all)])
        .map(|w| w.materialize())
}

/// `B_24 t_13` on the five legs `(u1, m, u2, m, u3)`.
pub fn beta_on_vect<F: Field>(b: &LegOperator<F>, u1: usize, u2: usize, u3: usize) -> Result<LegOperator<F>> {
    let m = equal_legs(b, 2, "B")?;
    let f = b.field();
    let legs = [u1, m, u2, m, u3];
    let bb = Arc::new(b.clone());
    Word::product(f, &legs, vec![op(&bb, &[2, 4]), Letter::Swap(1, 3)]).map(|w| w.materialize())
}

/// The two paths `X(Y(ZW)) -> Z(Y(XW))` built from `β` on
/// `X ⊗ M ⊗ Y ⊗ M ⊗ Z ⊗ M ⊗ W`, each object a single leg.
///
/// Top: `β_{Y,Z,XW} ∘ (1⊗β_{X,Z,W}) ∘ β_{X,Y,ZW}`.
/// Bottom: `(1⊗β_{X,Y,W}) ∘ β_{X,Z,YW} ∘ (1⊗β_{Y,Z,W})`.
pub fn cbc_equation<F: Field>(b: &LegOperator<F>, objects: [usize; 4]) -> Result<Equation<F>> {
    let m = equal_legs(b, 2, "B")?;
    let f = b.field();
    let [x, y, z, w] = objects;
    let legs = [x, m, y, m, z, m, w];
    // β on a contiguous suffix starting after `skip` legs
    let step = |skip: usize, u1: usize, u2: usize, u3: &[usize]| -> Result<Letter<F>> {
        let beta = beta_blocks(b, &[u1], &[u2], u3)?;
        let pos: Vec<usize> = (skip + 1..=legs.len()).collect();
        Ok(Letter::Op(Arc::new(beta), pos))
    };
    let top = Word::product(
        f,
        &legs,
        vec![step(0, y, z, &[x, m, w])?, step(2, x, z, &[w])?, step(0, x, y, &[z, m, w])?],
    )?;
    let bottom = Word::product(
        f,
        &legs,
        vec![step(2, x, y, &[w])?, step(0, x, z, &[y, m, w])?, step(2, y, z, &[w])?],
    )?;
    Equation::new(top, bottom)
}

#[cfg(test)]
mod tests {
    use super::super::field::PrimeField;
    use super::super::operator::flip;
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn trivial_solutions() {
        let f = f2();
        let id = LegOperator::identity(f, vec![2, 2]);
        assert!(check_pentagon(&id).unwrap());
        assert!(check_hexagon(&id).unwrap());
        assert!(check_hexagon(&flip(f, 2, 2)).unwrap());
        // flip is not a pentagon solution: Φ_12Φ_13Φ_23 reverses, Φ_23Φ_12 cycles
        assert!(!check_pentagon(&flip(f, 2, 2)).unwrap());
    }

    #[test]
    fn scalar_pentagon() {
        let f = PrimeField::new(5).unwrap();
        for phi in 1..5 {
            let op = LegOperator::scalar(f, vec![1, 1], phi);
            assert_eq!(check_pentagon(&op).unwrap(), phi == 1);
        }
        let zero = LegOperator::scalar(f, vec![1, 1], 0);
        assert!(matches!(check_pentagon(&zero), Err(Error::Singular(_))));
    }

    #[test]
    fn preunital_examples() {
        let f = f2();
        let b = flip(f, 2, 2);
        let c = LegOperator::identity(f, vec![2]);
        let eqs = preunital_equations(&b, &c).unwrap();
        assert!(!eqs[0].holds(&CheckOptions::default()));
        assert!(!check_preunital(&b, &c).unwrap());
        let one = LegOperator::identity(f, vec![1, 1]);
        assert!(check_preunital(&one, &LegOperator::identity(f, vec![1])).unwrap());
    }

    #[test]
    fn identity_functor_examples() {
        let f = PrimeField::new(3).unwrap();
        let g = LegOperator::new(f, vec![2], vec![2], vec![1, 1, 0, 1]).unwrap();
        assert!(check_id_bfunctor(&g, &flip(f, 2, 2)).unwrap());
        let b = LegOperator::from_fn(f, vec![2, 2], |r, c| ((r * 3 + c * c + 1) % 3) as u64);
        let lam = LegOperator::scalar(f, vec![2], 2);
        assert!(check_id_bfunctor(&lam, &b).unwrap());
    }

    #[test]
    fn beta_with_unit_blocks_is_b() {
        let f = PrimeField::new(3).unwrap();
        let b = LegOperator::from_fn(f, vec![2, 2], |r, c| ((r + 2 * c + r * c) % 3) as u64);
        let beta = beta_on_vect(&b, 1, 1, 1).unwrap();
        assert_eq!(beta.entries(), b.entries());
        assert_eq!(beta.codomain_legs(), &[1, 2, 1, 2, 1]);
        let blocks = beta_blocks(&b, &[], &[], &[]).unwrap();
        assert_eq!(blocks, b);
    }

    #[test]
    fn beta_on_vect_moves_blocks() {
        let f = f2();
        let id = LegOperator::identity(f, vec![2, 2]);
        let beta = beta_on_vect(&id, 2, 3, 1).unwrap();
        assert_eq!(beta.codomain_legs(), &[3, 2, 2, 2, 1]);
        let expect = LegOperator::leg_permutation(f, vec![2, 2, 3, 2, 1], &[2, 1, 0, 3, 4]).unwrap();
        assert_eq!(beta, expect);
        let blocks = beta_blocks(&id, &[2], &[3], &[1]).unwrap();
        assert_eq!(blocks, expect);
    }

    #[test]
    fn cbc_holds_for_hexagon_solutions() {
        let f = f2();
        let t = flip(f, 2, 2);
        let id = LegOperator::identity(f, vec![2, 2]);
        for b in [t, id] {
            for objs in [[2, 1, 2, 1], [1, 1, 1, 1], [2, 2, 2, 2]] {
                assert!(cbc_equation(&b, objs).unwrap().holds(&CheckOptions::default()));
            }
        }
    }
}
