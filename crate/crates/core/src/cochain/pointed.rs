//! Conditions on categorical b-magmas and pointed b-bicategories, written
//! additively and evaluated pointwise (not through the differential).

use super::complex::is_coboundary;
use super::Cochain;
use crate::error::{Error, Result};
use crate::magma::{check_associative, check_commutative, is_homomorphism, MagmaMap, MagmaTable};

fn expect_degree(c: &Cochain, n: usize, name: &str) -> Result<()> {
    if c.degree() != n {
        return Err(Error::InvalidInput(format!("{name} must have degree {n}, got {}", c.degree())));
    }
    Ok(())
}

fn same_base(a: &Cochain, b: &Cochain) -> Result<()> {
    if a.magma().table() != b.magma().table() || a.coeff() != b.coeff() {
        return Err(Error::DimensionMismatch("cochains live on different magmas or coefficient groups".into()));
    }
    Ok(())
}

/// Sum of signed values of `c` at the listed argument tuples, as flat coordinates.
fn signed_sum(c: &Cochain, terms: &[(i64, &[usize])]) -> Vec<i64> {
    let k = c.coeff().rank();
    let mut acc = vec![0; k];
    for (s, args) in terms {
        for (a, v) in acc.iter_mut().zip(c.get(args).coords) {
            *a += s * v;
        }
    }
    (0..k).map(|j| c.coeff().reduce_coord(j, acc[j])).collect()
}

fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(len as u32)).map(move |code| super::cell_args(code, n, len))
}

/// `r(y,z,xw) + r(x,z,w) + r(x,y,zw) = r(x,y,w) + r(x,z,yw) + r(y,z,w)` for all
/// `x, y, z, w`.
pub fn r_coherence_check(r: &Cochain) -> Result<bool> {
    expect_degree(r, 3, "r")?;
    let m = r.magma();
    Ok(tuples(m.size(), 4).all(|t| {
        let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
        let (xw, zw, yw) = (m.mul(x, w), m.mul(z, w), m.mul(y, w));
        signed_sum(
            r,
            &[
                (1, &[y, z, xw]),
                (1, &[x, z, w]),
                (1, &[x, y, zw]),
                (-1, &[x, y, w]),
                (-1, &[x, z, yw]),
                (-1, &[y, z, w]),
            ],
        )
        .iter()
        .all(|&v| v == 0)
    }))
}

/// `r'(x,y,z) = r(x,y,z) + q(x,z) - q(x,yz) + q(y,xz) - q(y,z)`.
pub fn gauge_transform(r: &Cochain, q: &Cochain) -> Result<Cochain> {
    expect_degree(r, 3, "r")?;
    expect_degree(q, 2, "q")?;
    same_base(r, q)?;
    let m = r.magma();
    Cochain::from_fn(m.clone(), 3, r.coeff().clone(), |a| {
        let (x, y, z) = (a[0], a[1], a[2]);
        let base = r.get(a).coords;
        let shift = signed_sum(q, &[(1, &[x, z]), (-1, &[x, m.mul(y, z)]), (1, &[y, m.mul(x, z)]), (-1, &[y, z])]);
        Some(base.iter().zip(shift).map(|(a, b)| a + b).collect())
    })
}

/// `(f^* r')(x, y, z) = r'(f x, f y, f z)`, a cochain on the source.
fn pull_along(f: &MagmaMap, r2: &Cochain, source: &Cochain) -> Result<Cochain> {
    Cochain::from_fn(source.magma().clone(), r2.degree(), r2.coeff().clone(), |a| {
        let fa: Vec<usize> = a.iter().map(|&x| f.apply(x)).collect();
        Some(r2.get(&fa).coords)
    })
}

fn check_functor_inputs(f: &MagmaMap, r: &Cochain, r2: &Cochain) -> Result<()> {
    expect_degree(r, 3, "r")?;
    expect_degree(r2, 3, "r'")?;
    if f.source() != r.magma().table() || f.target() != r2.magma().table() {
        return Err(Error::DimensionMismatch("f must map the carrier of r to the carrier of r'".into()));
    }
    if r.coeff() != r2.coeff() {
        return Err(Error::DimensionMismatch("r and r' have different coefficient groups".into()));
    }
    if !is_homomorphism(f) {
        return Err(Error::InvalidInput("f is not a magma homomorphism".into()));
    }
    Ok(())
}

/// `r'(fx,fy,fz) + q(y,z) + q(x,yz) = q(x,z) + q(y,xz) + r(x,y,z)` for all triples.
pub fn functor_check(f: &MagmaMap, r: &Cochain, r2: &Cochain, q: &Cochain) -> Result<bool> {
    check_functor_inputs(f, r, r2)?;
    expect_degree(q, 2, "q")?;
    same_base(r, q)?;
    let m = r.magma();
    let k = r.coeff().rank();
    Ok(tuples(m.size(), 3).all(|t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let lhs = r2.get(&[f.apply(x), f.apply(y), f.apply(z)]).coords;
        let qs = signed_sum(q, &[(1, &[y, z]), (1, &[x, m.mul(y, z)]), (-1, &[x, z]), (-1, &[y, m.mul(x, z)])]);
        let rr = r.get(&t).coords;
        (0..k).all(|j| r.coeff().reduce_coord(j, lhs[j] + qs[j] - rr[j]) == 0)
    }))
}

/// Some `q` passing [`functor_check`], found as a preimage `d(q) = r - f^* r'`.
pub fn functor_solve(f: &MagmaMap, r: &Cochain, r2: &Cochain) -> Result<Option<Cochain>> {
    check_functor_inputs(f, r, r2)?;
    let pulled = pull_along(f, r2, r)?;
    is_coboundary(&r.sub(&pulled)?)
}

/// `q(x,y) + p(x) + p(y) = p(xy) + q~(x,y)`, reading the two-argument `p` of
/// the multiplicative form as `p(xy)`.
pub fn transformation_check(p: &Cochain, q: &Cochain, q2: &Cochain) -> Result<bool> {
    expect_degree(p, 1, "p")?;
    expect_degree(q, 2, "q")?;
    expect_degree(q2, 2, "q~")?;
    same_base(p, q)?;
    same_base(q, q2)?;
    let m = p.magma();
    let k = p.coeff().rank();
    Ok(tuples(m.size(), 2).all(|t| {
        let (x, y) = (t[0], t[1]);
        let lhs = signed_sum(p, &[(1, &[x]), (1, &[y]), (-1, &[m.mul(x, y)])]);
        let (a, b) = (q.get(&t).coords, q2.get(&t).coords);
        (0..k).all(|j| p.coeff().reduce_coord(j, a[j] + lhs[j] - b[j]) == 0)
    }))
}

/// Errors unless the table is the addition of a commutative group.
pub fn require_abelian_group(t: &MagmaTable) -> Result<()> {
    let n = t.size();
    if !check_commutative(t) || !check_associative(t) {
        return Err(Error::NotAbelianGroup("table is not commutative and associative".into()));
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| t.mul(e, x) == x))
        .ok_or_else(|| Error::NotAbelianGroup("no identity element".into()))?;
    if let Some(x) = (0..n).find(|&x| (0..n).all(|y| t.mul(x, y) != e)) {
        return Err(Error::NotAbelianGroup(format!("{x} has no inverse")));
    }
    Ok(())
}

/// `b(x,y,z) = a(x,y,z) + c(x,y) - a(y,x,z)` for an abelian group `A`.
pub fn comparison_from_abelian(a: &Cochain, c: &Cochain) -> Result<Cochain> {
    expect_degree(a, 3, "a")?;
    expect_degree(c, 2, "c")?;
    same_base(a, c)?;
    require_abelian_group(a.magma().table())?;
    Cochain::from_fn(a.magma().clone(), 3, a.coeff().clone(), |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let s = signed_sum(a, &[(1, &[x, y, z]), (-1, &[y, x, z])]);
        Some(s.iter().zip(c.get(&[x, y]).coords).map(|(u, v)| u + v).collect())
    })
}

/// Whether `(a, c)` is an abelian 3-cocycle on the group `A` (additive
/// notation, the table's product written `+`):
///
/// - `a(x,y,z+w) + a(x+y,z,w) = a(y,z,w) + a(x,y+z,w) + a(x,y,z)`
/// - `-a(y,z,x) + c(x,y+z) - a(x,y,z) = c(x,z) - a(y,x,z) + c(x,y)`
/// - `a(z,x,y) + c(x+y,z) + a(x,y,z) = c(x,z) + a(x,z,y) + c(y,z)`
pub fn is_abelian_3_cocycle(a: &Cochain, c: &Cochain) -> Result<bool> {
    expect_degree(a, 3, "a")?;
    expect_degree(c, 2, "c")?;
    same_base(a, c)?;
    let m = a.magma();
    require_abelian_group(m.table())?;
    let k = a.coeff().rank();
    let zero = |u: Vec<i64>, v: Vec<i64>| (0..k).all(|j| a.coeff().reduce_coord(j, u[j] + v[j]) == 0);
    let n = m.size();
    let pentagon = tuples(n, 4).all(|t| {
        let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
        let s = signed_sum(
            a,
            &[
                (1, &[x, y, m.mul(z, w)]),
                (1, &[m.mul(x, y), z, w]),
                (-1, &[y, z, w]),
                (-1, &[x, m.mul(y, z), w]),
                (-1, &[x, y, z]),
            ],
        );
        s.iter().all(|&v| v == 0)
    });
    if !pentagon {
        return Ok(false);
    }
    Ok(tuples(n, 3).all(|t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let h1a = signed_sum(a, &[(-1, &[y, z, x]), (-1, &[x, y, z]), (1, &[y, x, z])]);
        let h1c = signed_sum(c, &[(1, &[x, m.mul(y, z)]), (-1, &[x, z]), (-1, &[x, y])]);
        let h2a = signed_sum(a, &[(1, &[z, x, y]), (1, &[x, y, z]), (-1, &[x, z, y])]);
        let h2c = signed_sum(c, &[(1, &[m.mul(x, y), z]), (-1, &[x, z]), (-1, &[y, z])]);
        zero(h1a, h1c) && zero(h2a, h2c)
    }))
}

/// `(a + δg, c + g(x,y) - g(y,x))` with the group coboundary
/// `δg(x,y,z) = g(y,z) - g(x+y,z) + g(x,y+z) - g(x,y)`.
pub fn abelian_coboundary_shift(a: &Cochain, c: &Cochain, g: &Cochain) -> Result<(Cochain, Cochain)> {
    expect_degree(a, 3, "a")?;
    expect_degree(c, 2, "c")?;
    expect_degree(g, 2, "g")?;
    same_base(a, c)?;
    same_base(a, g)?;
    require_abelian_group(a.magma().table())?;
    let m = a.magma();
    let a2 = Cochain::from_fn(m.clone(), 3, a.coeff().clone(), |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let s = signed_sum(g, &[(1, &[y, z]), (-1, &[m.mul(x, y), z]), (1, &[x, m.mul(y, z)]), (-1, &[x, y])]);
        Some(a.get(t).coords.iter().zip(s).map(|(u, v)| u + v).collect())
    })?;
    let c2 = Cochain::from_fn(m.clone(), 2, a.coeff().clone(), |t| {
        let s = signed_sum(g, &[(1, &[t[0], t[1]]), (-1, &[t[1], t[0]])]);
        Some(c.get(t).coords.iter().zip(s).map(|(u, v)| u + v).collect())
    })?;
    Ok((a2, c2))
}

/// `s(x,y,z,v) + s(x,y,u,zv) + s(y,z,u,xv) + s(x,z,u,v)
///  = s(x,y,z,uv) + s(x,y,u,v) + s(x,z,u,yv) + s(y,z,u,v)` for all quintuples.
pub fn s4_coherence_check(s: &Cochain) -> Result<bool> {
    expect_degree(s, 4, "s")?;
    let m = s.magma();
    Ok(tuples(m.size(), 5).all(|t| {
        let (x, y, z, u, v) = (t[0], t[1], t[2], t[3], t[4]);
        signed_sum(
            s,
            &[
                (1, &[x, y, z, v]),
                (1, &[x, y, u, m.mul(z, v)]),
                (1, &[y, z, u, m.mul(x, v)]),
                (1, &[x, z, u, v]),
                (-1, &[x, y, z, m.mul(u, v)]),
                (-1, &[x, y, u, v]),
                (-1, &[x, z, u, m.mul(y, v)]),
                (-1, &[y, z, u, v]),
            ],
        )
        .iter()
        .all(|&w| w == 0)
    }))
}

/// Some `r` with `s' = s + d(r)`, or `None`.
pub fn bicat_equiv(s: &Cochain, s2: &Cochain) -> Result<Option<Cochain>> {
    expect_degree(s, 4, "s")?;
    expect_degree(s2, 4, "s'")?;
    is_coboundary(&s2.sub(s)?)
}
