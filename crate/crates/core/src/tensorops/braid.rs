//! Braid group action on `M^{⊗n} ⊗ Y` generated by a hexagon solution.

use std::sync::Arc;

use super::coherence::{equal_legs, hexagon_equation};
use super::field::Field;
use super::operator::LegOperator;
use super::word::{CheckOptions, Equation, Letter, Word};
use crate::error::{Error, Result};

fn ambient(m: usize, n: usize, tail: usize) -> Vec<usize> {
    let mut legs = vec![m; n];
    legs.push(tail);
    legs
}

fn generator<F: Field>(b: &Arc<LegOperator<F>>, binv: &Arc<LegOperator<F>>, n: usize, g: i64) -> Result<Letter<F>> {
    let i = g.unsigned_abs() as usize;
    if g == 0 || i >= n {
        return Err(Error::InvalidInput(format!("generator {g} outside ±1..={}", n.saturating_sub(1))));
    }
    Ok(Letter::op(if g > 0 { b } else { binv }, &[i, i + 1]))
}

fn require_hexagon<F: Field>(b: &LegOperator<F>) -> Result<usize> {
    let m = equal_legs(b, 2, "B")?;
    if !hexagon_equation(b)?.holds(&CheckOptions::default()) {
        return Err(Error::NotHexagon);
    }
    Ok(m)
}

fn word<F: Field>(b: &LegOperator<F>, n: usize, tail: usize, gens: &[i64]) -> Result<Word<F>> {
    let m = equal_legs(b, 2, "B")?;
    let bb = Arc::new(b.clone());
    let binv = Arc::new(b.inverse()?);
    let letters = gens.iter().map(|&g| generator(&bb, &binv, n, g)).collect::<Result<Vec<_>>>()?;
    Word::product(b.field(), &ambient(m, n, tail), letters)
}

/// The product `b_{w_1} b_{w_2} ...` on `n` strands of `M` plus a tail leg of
/// dimension `tail`, with `b_i = B_{i,i+1}` and `-i` standing for `b_i^{-1}`.
pub fn braid_word_eval<F: Field>(b: &LegOperator<F>, n: usize, gens: &[i64], tail: usize) -> Result<LegOperator<F>> {
    require_hexagon(b)?;
    if n == 0 || tail == 0 {
        return Err(Error::InvalidInput("need at least one strand and a positive tail dimension".into()));
    }
    Ok(word(b, n, tail, gens)?.materialize())
}

/// All Coxeter relations among `b_1, ..., b_{n-1}` on `M^{⊗n}`.
pub fn coxeter_equations<F: Field>(b: &LegOperator<F>, n: usize) -> Result<Vec<Equation<F>>> {
    require_hexagon(b)?;
    let mut eqs = Vec::new();
    for i in 1..n as i64 {
        if i + 1 < n as i64 {
            eqs.push(Equation::new(word(b, n, 1, &[i, i + 1, i])?, word(b, n, 1, &[i + 1, i, i + 1])?)?);
        }
        for j in i + 2..n as i64 {
            eqs.push(Equation::new(word(b, n, 1, &[i, j])?, word(b, n, 1, &[j, i])?)?);
        }
    }
    Ok(eqs)
}

/// Refuses (with [`Error::NotHexagon`]) when `B` fails the hexagon equation.
pub fn check_coxeter<F: Field>(b: &LegOperator<F>, n: usize) -> Result<bool> {
    let opts = CheckOptions::default();
    Ok(coxeter_equations(b, n)?.iter().all(|e| e.holds(&opts)))
}
