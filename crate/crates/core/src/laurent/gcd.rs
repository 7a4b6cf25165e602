//! Multivariate gcd over `Z` by recursion on the variables with a
//! subresultant pseudo-remainder sequence in the main variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::{CoeffDomain, LaurentPoly};

/// Greatest common divisor in `Z[x_1^±, ..., x_n^±]`, unit-normalized.
pub fn gcd(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    if !f.group.is_torsion_free() || !g.group.is_torsion_free() {
        return Err(Error::TorsionUnsupported("gcd"));
    }
    if f.domain != CoeffDomain::Int || g.domain != CoeffDomain::Int {
        return Err(Error::Unsupported("gcd is implemented over Z only".into()));
    }
    if f.is_zero() {
        return Ok(g.normalize_unit());
    }
    if g.is_zero() {
        return Ok(f.normalize_unit());
    }
    let d = gcd_rec(&f.normalize_unit(), &g.normalize_unit());
    Ok(d.normalize_unit())
}

/// Fold [`gcd`] over a list of generators; errors on an empty list.
pub fn gcd_many(polys: &[LaurentPoly]) -> Result<LaurentPoly> {
    let Some(first) = polys.first() else {
        return Err(Error::ZeroPolynomial);
    };
    let mut acc = first.normalize_unit();
    for p in &polys[1..] {
        acc = gcd(&acc, p)?;
    }
    Ok(acc)
}

/// Both inputs nonzero with non-negative exponents.
fn gcd_rec(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let Some(v) = main_var(f, g) else {
        // both constant
        let c = f.leading_coeff().gcd(&g.leading_coeff());
        return LaurentPoly::from_terms(
            f.group.clone(),
            CoeffDomain::Int,
            [(f.group.identity(), c)],
        );
    };
    let (cf, pf) = content_wrt(f, v);
    let (cg, pg) = content_wrt(g, v);
    let c = gcd_rec(&cf, &cg);
    let prs = subresultant(&pf, &pg, v);
    let (_, pp) = content_wrt(&prs, v);
    c.mul(&pp).unwrap()
}

/// Smallest variable index with a positive exponent in either input.
fn main_var(f: &LaurentPoly, g: &LaurentPoly) -> Option<usize> {
    (0..f.group.rank).find(|&v| deg_v(f, v) > 0 || deg_v(g, v) > 0)
}

fn deg_v(f: &LaurentPoly, v: usize) -> i64 {
    f.support()
        .map(|g| i64::try_from(&g.free[v]).expect("exponent fits i64"))
        .max()
        .unwrap_or(0)
}

/// Leading coefficient of `f` viewed as univariate in `x_v`: the terms of top
/// `x_v`-degree with that degree removed.
fn lead_coeff(f: &LaurentPoly, v: usize) -> LaurentPoly {
    let d = deg_v(f, v);
    let big_d = BigInt::from(d);
    LaurentPoly::from_terms(
        f.group.clone(),
        f.domain,
        f.terms().filter(|(g, _)| g.free[v] == big_d).map(|(g, c)| {
            let mut free = g.free.clone();
            free[v] = BigInt::zero();
            (f.group.element(free, g.torsion.clone()), c.clone())
        }),
    )
}

/// Content and primitive part with respect to `x_v`: the content is the
/// recursive gcd of the `x_v`-coefficients.
fn content_wrt(f: &LaurentPoly, v: usize) -> (LaurentPoly, LaurentPoly) {
    let d = deg_v(f, v);
    let mut content: Option<LaurentPoly> = None;
    for k in 0..=d {
        let big_k = BigInt::from(k);
        let coeff = LaurentPoly::from_terms(
            f.group.clone(),
            f.domain,
            f.terms().filter(|(g, _)| g.free[v] == big_k).map(|(g, c)| {
                let mut free = g.free.clone();
                free[v] = BigInt::zero();
                (f.group.element(free, g.torsion.clone()), c.clone())
            }),
        );
        if coeff.is_zero() {
            continue;
        }
        content = Some(match content {
            Some(acc) => gcd_rec(&acc, &coeff),
            None => coeff,
        });
    }
    let content = content.expect("nonzero polynomial").normalize_unit();
    let prim = f.exact_div(&content).expect("content divides");
    (content, prim)
}

fn mono_shift(f: &LaurentPoly, v: usize, by: i64) -> LaurentPoly {
    let mut shift = vec![BigInt::zero(); f.group.rank];
    shift[v] = BigInt::from(by);
    f.shift(&shift)
}

fn pow(f: &LaurentPoly, k: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::from_terms(
        f.group.clone(),
        f.domain,
        [(f.group.identity(), BigInt::one())],
    );
    for _ in 0..k {
        acc = acc.mul(f).unwrap();
    }
    acc
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a  mod  b` in `x_v`.
fn prem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = deg_v(b, v);
    let l = lead_coeff(b, v);
    let mut r = a.clone();
    let mut e = deg_v(a, v) - db + 1;
    while !r.is_zero() && deg_v(&r, v) >= db {
        let dr = deg_v(&r, v);
        let t = mono_shift(&lead_coeff(&r, v), v, dr - db);
        r = r.mul(&l).unwrap().sub(&t.mul(b).unwrap()).unwrap();
        e -= 1;
    }
    for _ in 0..e.max(0) {
        r = r.mul(&l).unwrap();
    }
    r
}

/// Subresultant PRS on primitive inputs; returns the last nonzero remainder
/// (up to content), or a unit when the inputs are coprime in `x_v`.
fn subresultant(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let one = LaurentPoly::from_terms(
        a.group.clone(),
        CoeffDomain::Int,
        [(a.group.identity(), BigInt::one())],
    );
    let (mut f1, mut f2) = if deg_v(a, v) >= deg_v(b, v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if deg_v(&f2, v) == 0 {
        return one;
    }
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = deg_v(&f1, v) - deg_v(&f2, v);
        let r = prem(&f1, &f2, v);
        if r.is_zero() {
            return f2;
        }
        if deg_v(&r, v) == 0 {
            return one;
        }
        let divisor = g.mul(&pow(&h, delta)).unwrap();
        g = lead_coeff(&f2, v);
        f1 = f2;
        f2 = r.exact_div(&divisor).expect("subresultant division is exact");
        h = if delta == 0 {
            h
        } else {
            pow(&g, delta)
                .exact_div(&pow(&h, delta - 1))
                .expect("subresultant h-update is exact")
        };
    }
}
