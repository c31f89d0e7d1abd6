//! One-object b-bicategory equations: tetrahedron, S-relation, RLLL,
//! M-relation, the `L|L'` composite and the `(C, L)` 2-morphism square.

use std::sync::Arc;

use super::coherence::equal_legs;
use super::field::Field;
use super::operator::LegOperator;
use super::word::{CheckOptions, Equation, Letter, Word};
use crate::error::{Error, Result};

fn op<F: Field>(a: &Arc<LegOperator<F>>, pos: &[usize]) -> Letter<F> {
    Letter::op(a, pos)
}

fn invertible<F: Field>(a: &LegOperator<F>, what: &str) -> Result<Arc<LegOperator<F>>> {
    a.require_invertible(what)?;
    Ok(Arc::new(a.clone()))
}

/// `t_1 t_2 t_1` on three legs with the given dimensions.
pub fn reversal<F: Field>(field: &F, legs: [usize; 3]) -> Result<LegOperator<F>> {
    Word::product(field, &legs, vec![Letter::Flip(1), Letter::Flip(2), Letter::Flip(1)])
        .map(|w| w.materialize())
}

/// `Z_124 Z_135 Z_236 Z_456 = Z_456 Z_236 Z_135 Z_124`.
pub fn tetrahedron_equation<F: Field>(z: &LegOperator<F>) -> Result<Equation<F>> {
    let b = equal_legs(z, 3, "Z")?;
    let zz = invertible(z, "Z")?;
    let f = z.field();
    let amb = [b; 6];
    let (z124, z135, z236, z456) =
        (op(&zz, &[1, 2, 4]), op(&zz, &[1, 3, 5]), op(&zz, &[2, 3, 6]), op(&zz, &[4, 5, 6]));
    Equation::new(
        Word::product(f, &amb, vec![z124.clone(), z135.clone(), z236.clone(), z456.clone()])?,
        Word::product(f, &amb, vec![z456, z236, z135, z124])?,
    )
}

pub fn check_tetrahedron<F: Field>(z: &LegOperator<F>) -> Result<bool> {
    Ok(tetrahedron_equation(z)?.holds(&CheckOptions::default()))
}

/// `t_3 S_456 S_234 (t_1 t_4) S_234 S_456 = S_123 S_345 (t_2 t_5) S_345 S_123 t_3`.
pub fn s_relation_equation<F: Field>(s: &LegOperator<F>) -> Result<Equation<F>> {
    let b = equal_legs(s, 3, "S")?;
    let ss = invertible(s, "S")?;
    let f = s.field();
    let amb = [b; 6];
    let lhs = vec![
        Letter::Flip(3),
        op(&ss, &[4, 5, 6]),
        op(&ss, &[2, 3, 4]),
        Letter::Flip(1),
        Letter::Flip(4),
        op(&ss, &[2, 3, 4]),
        op(&ss, &[4, 5, 6]),
    ];
    let rhs = vec![
        op(&ss, &[1, 2, 3]),
        op(&ss, &[3, 4, 5]),
        Letter::Flip(2),
        Letter::Flip(5),
        op(&ss, &[3, 4, 5]),
        op(&ss, &[1, 2, 3]),
        Letter::Flip(3),
    ];
    Equation::new(Word::product(f, &amb, lhs)?, Word::product(f, &amb, rhs)?)
}

pub fn check_s_relation<F: Field>(s: &LegOperator<F>) -> Result<bool> {
    Ok(s_relation_equation(s)?.holds(&CheckOptions::default()))
}

/// `S = t_1 t_2 t_1 Z`.
pub fn z_to_s<F: Field>(z: &LegOperator<F>) -> Result<LegOperator<F>> {
    let b = equal_legs(z, 3, "Z")?;
    reversal(z.field(), [b; 3])?.compose(z)
}

/// `Z = (t_1 t_2 t_1)^{-1} S`.
pub fn s_to_z<F: Field>(s: &LegOperator<F>) -> Result<LegOperator<F>> {
    let b = equal_legs(s, 3, "S")?;
    reversal(s.field(), [b; 3])?.inverse()?.compose(s)
}

/// `(c, b)` for an operator on legs `(c, c, b)`.
fn l_dims<F: Field>(l: &LegOperator<F>) -> Result<(usize, usize)> {
    match (l.domain_legs(), l.codomain_legs()) {
        ([c1, c2, b], cod) if c1 == c2 && cod == l.domain_legs() => Ok((*c1, *b)),
        (d, c) => Err(Error::DimensionMismatch(format!(
            "L must act on legs (c, c, b), got {d:?} -> {c:?}"
        ))),
    }
}

/// `(b, c)` for an operator `B ⊗ C ⊗ C -> C ⊗ C ⊗ B`.
fn m_dims<F: Field>(m: &LegOperator<F>) -> Result<(usize, usize)> {
    match (m.domain_legs(), m.codomain_legs()) {
        ([b, c1, c2], [c3, c4, b2]) if c1 == c2 && c2 == c3 && c3 == c4 && b == b2 => Ok((*b, *c1)),
        (d, c) => Err(Error::DimensionMismatch(format!(
            "M must map legs (b, c, c) to (c, c, b), got {d:?} -> {c:?}"
        ))),
    }
}

/// `L_124 L_135 L_236 Z_456 = Z_456 L_236 L_135 L_124` on `(c, c, c, b, b, b)`.
pub fn lze_equation<F: Field>(l: &LegOperator<F>, z: &LegOperator<F>) -> Result<Equation<F>> {
    let (c, b) = l_dims(l)?;
    if equal_legs(z, 3, "Z")? != b {
        return Err(Error::DimensionMismatch(format!(
            "Z acts on dimension {} but L's last leg has dimension {b}",
            z.domain_legs()[0]
        )));
    }
    let ll = invertible(l, "L")?;
    let zz = invertible(z, "Z")?;
    let f = l.field();
    let amb = [c, c, c, b, b, b];
    let (l124, l135, l236, z456) =
        (op(&ll, &[1, 2, 4]), op(&ll, &[1, 3, 5]), op(&ll, &[2, 3, 6]), op(&zz, &[4, 5, 6]));
    Equation::new(
        Word::product(f, &amb, vec![l124.clone(), l135.clone(), l236.clone(), z456.clone()])?,
        Word::product(f, &amb, vec![z456, l236, l135, l124])?,
    )
}

pub fn check_lze<F: Field>(l: &LegOperator<F>, z: &LegOperator<F>) -> Result<bool> {
    Ok(lze_equation(l, z)?.holds(&CheckOptions::default()))
}

/// `L = t_1 t_2 t_1 M^{-1}`, the reversal taken on `(b, c, c)`.
pub fn m_to_l<F: Field>(m: &LegOperator<F>) -> Result<LegOperator<F>> {
    let (b, c) = m_dims(m)?;
    reversal(m.field(), [b, c, c])?.compose(&m.inverse()?)
}

/// `M = L^{-1} t_1 t_2 t_1`, inverting [`m_to_l`].
pub fn l_to_m<F: Field>(l: &LegOperator<F>) -> Result<LegOperator<F>> {
    let (c, b) = l_dims(l)?;
    l.inverse()?.compose(&reversal(l.field(), [b, c, c])?)
}

/// `M_234 (t_1 t_4) M_234 M_456 t_3 S_123 = S_456 t_3 M_123 M_345 (t_2 t_5) M_345`,
/// mapping `(b, b, b, c, c, c)` to `(c, c, c, b, b, b)`.
pub fn m_relation_equation<F: Field>(m: &LegOperator<F>, s: &LegOperator<F>) -> Result<Equation<F>> {
    let (b, c) = m_dims(m)?;
    if equal_legs(s, 3, "S")? != b {
        return Err(Error::DimensionMismatch(format!(
            "S acts on dimension {} but M's B-leg has dimension {b}",
            s.domain_legs()[0]
        )));
    }
    let mm = invertible(m, "M")?;
    let ss = invertible(s, "S")?;
    let f = m.field();
    let amb = [b, b, b, c, c, c];
    let lhs = vec![
        op(&mm, &[2, 3, 4]),
        Letter::Flip(1),
        Letter::Flip(4),
        op(&mm, &[2, 3, 4]),
        op(&mm, &[4, 5, 6]),
        Letter::Flip(3),
        op(&ss, &[1, 2, 3]),
    ];
    let rhs = vec![
        op(&ss, &[4, 5, 6]),
        Letter::Flip(3),
        op(&mm, &[1, 2, 3]),
        op(&mm, &[3, 4, 5]),
        Letter::Flip(2),
        Letter::Flip(5),
        op(&mm, &[3, 4, 5]),
    ];
    Equation::new(Word::product(f, &amb, lhs)?, Word::product(f, &amb, rhs)?)
}

pub fn check_m_relation<F: Field>(m: &LegOperator<F>, s: &LegOperator<F>) -> Result<bool> {
    Ok(m_relation_equation(m, s)?.holds(&CheckOptions::default()))
}

/// `L|L' = t_2 L_125 L'_345 t_2` on `(c, c', c, c', b)`, regrouped as an
/// operator on `(c·c', c·c', b)`.
pub fn compose_l<F: Field>(l: &LegOperator<F>, l2: &LegOperator<F>) -> Result<LegOperator<F>> {
    let (c, b) = l_dims(l)?;
    let (c2, b2) = l_dims(l2)?;
    if b != b2 {
        return Err(Error::DimensionMismatch(format!(
            "L and L' have B-legs of dimension {b} and {b2}"
        )));
    }
    let f = l.field();
    let (a, a2) = (Arc::new(l.clone()), Arc::new(l2.clone()));
    let word = Word::product(
        f,
        &[c, c2, c, c2, b],
        vec![Letter::Flip(2), op(&a, &[1, 2, 5]), op(&a2, &[3, 4, 5]), Letter::Flip(2)],
    )?;
    let legs = vec![c * c2, c * c2, b];
    word.materialize().regroup(legs.clone(), legs)
}

/// `(f ⊗ 1) ∘ d = d' ∘ (1 ⊗ f ⊗ f)` for `d: C⊗D⊗D -> D⊗C'` and
/// `d': C⊗D'⊗D' -> D'⊗C'`.
pub fn cl_2morphism_equation<F: Field>(
    f: &LegOperator<F>,
    d: &LegOperator<F>,
    d2: &LegOperator<F>,
) -> Result<Equation<F>> {
    let bad = || {
        Error::DimensionMismatch(format!(
            "expected f: D -> D', d: (c, D, D) -> (D, c'), d': (c, D', D') -> (D', c'); got f {:?} -> {:?}, d {:?} -> {:?}, d' {:?} -> {:?}",
            f.domain_legs(),
            f.codomain_legs(),
            d.domain_legs(),
            d.codomain_legs(),
            d2.domain_legs(),
            d2.codomain_legs()
        ))
    };
    let (dd, dd2) = match (f.domain_legs(), f.codomain_legs()) {
        ([x], [y]) => (*x, *y),
        _ => return Err(bad()),
    };
    let (c, cp) = match (d.domain_legs(), d.codomain_legs()) {
        ([c, x, y], [z, cp]) if *x == dd && *y == dd && *z == dd => (*c, *cp),
        _ => return Err(bad()),
    };
    match (d2.domain_legs(), d2.codomain_legs()) {
        ([c2, x, y], [z, cp2]) if *c2 == c && *x == dd2 && *y == dd2 && *z == dd2 && *cp2 == cp => {}
        _ => return Err(bad()),
    }
    let field = f.field();
    let (ff, da, db) = (Arc::new(f.clone()), Arc::new(d.clone()), Arc::new(d2.clone()));
    let amb = [c, dd, dd];
    Equation::new(
        Word::product(field, &amb, vec![op(&ff, &[1]), op(&da, &[1, 2, 3])])?,
        Word::product(field, &amb, vec![op(&db, &[1, 2, 3]), op(&ff, &[2]), op(&ff, &[3])])?,
    )
}

pub fn check_cl_2morphism<F: Field>(
    f: &LegOperator<F>,
    d: &LegOperator<F>,
    d2: &LegOperator<F>,
) -> Result<bool> {
    Ok(cl_2morphism_equation(f, d, d2)?.holds(&CheckOptions::default()))
}
