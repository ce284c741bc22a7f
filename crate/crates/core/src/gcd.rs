//! Multivariate polynomial gcd by recursive content and primitive
//! pseudo-remainder sequences.

use num_traits::{One, Signed};

use crate::arith::rational_gcd;
use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::scalar::Field;
use crate::{Poly, Rat};

/// Coefficients of `p` as a polynomial in `x`, indexed by degree.
fn univariate_coeffs<F: Field>(p: &MPoly<F>, x: &str) -> Vec<MPoly<F>> {
    let deg = p.degree_in(x) as usize;
    let mut out = vec![MPoly::zero(); deg + 1];
    for (e, c) in p.coefficients_in(&[x]) {
        out[e[0] as usize] = c;
    }
    out
}

fn monic<F: Field>(p: &MPoly<F>) -> MPoly<F> {
    if p.is_zero() {
        return p.clone();
    }
    p.scale(&p.leading_coefficient().inv())
}

fn content_in<F: Field>(p: &MPoly<F>, x: &str) -> MPoly<F> {
    univariate_coeffs(p, x)
        .iter()
        .fold(MPoly::zero(), |g, c| gcd(&g, c))
}

fn pseudo_rem<F: Field>(a: &MPoly<F>, b: &MPoly<F>, x: &str) -> MPoly<F> {
    let db = b.degree_in(x);
    let lb = univariate_coeffs(b, x).pop().expect("nonzero divisor");
    let xv = MPoly::var(x);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = univariate_coeffs(&r, x).pop().expect("nonzero remainder");
        let shift = &lr * &xv.pow(dr - db);
        r = &(&lb * &r) - &(&shift * b);
    }
    r
}

/// Greatest common divisor, monic with respect to graded-lex order
/// (zero only when both inputs are zero).
pub fn gcd<F: Field>(a: &MPoly<F>, b: &MPoly<F>) -> MPoly<F> {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let used_a = a.used_vars();
    let used_b = b.used_vars();
    let Some(x) = used_a.iter().find(|v| used_b.contains(v)).cloned() else {
        return MPoly::one();
    };
    let ca = content_in(a, &x);
    let cb = content_in(b, &x);
    let c = gcd(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree_in(&x) < q.degree_in(&x) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.degree_in(&x) > 0 {
        let r = pseudo_rem(&p, &q, &x);
        p = q;
        q = if r.is_zero() {
            r
        } else {
            let cr = content_in(&r, &x);
            r.exact_div(&cr).expect("content divides")
        };
    }
    let g = if q.is_zero() { p } else { MPoly::one() };
    let g = if g.degree_in(&x) == 0 {
        MPoly::one()
    } else {
        let cg = content_in(&g, &x);
        g.exact_div(&cg).expect("content divides")
    };
    monic(&(&c * &g))
}

/// Scales a nonzero rational polynomial to coprime integer coefficients with
/// positive leading coefficient.
pub fn integer_primitive(p: &Poly) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let coeffs: Vec<Rat> = p.terms().map(|(_, c)| c.clone()).collect();
    let mut g = rational_gcd(&coeffs);
    if p.leading_coefficient().is_negative() {
        g = -g;
    }
    p.scale(&g.recip())
}

/// Content of a vector of polynomials with respect to `vars`, and the
/// primitive vector left after dividing it out.
///
/// Factors involving only variables outside `vars` are not part of the
/// content, except for the rational number content, which always is. The
/// result is normalised to positive leading coefficient.
pub fn poly_content_and_primitive(ps: &[Poly], vars: &[&str]) -> Result<(Poly, Vec<Poly>)> {
    if ps.iter().all(Poly::is_zero) {
        return Err(Error::AllZero);
    }
    let mut g = ps.iter().fold(Poly::zero(), |g, p| gcd(&g, p));
    // strip the part of g constant in `vars`
    let coeffs = g.coefficients_in(vars);
    let outer = coeffs.values().fold(Poly::zero(), |h, c| gcd(&h, c));
    g = g.exact_div(&outer).expect("coefficient gcd divides");
    let g = integer_primitive(&g);
    let all: Vec<Rat> = ps
        .iter()
        .flat_map(|p| p.terms().map(|(_, c)| c.clone()).collect::<Vec<_>>())
        .collect();
    let num_content = rational_gcd(&all);
    let g = g.scale(&num_content);
    let prim = ps
        .iter()
        .map(|p| p.exact_div(&g).expect("gcd divides every entry"))
        .collect();
    Ok((g, prim))
}

/// True when `a` and `b` share no nonconstant factor.
pub fn coprime<F: Field>(a: &MPoly<F>, b: &MPoly<F>) -> bool {
    gcd(a, b).is_one()
}
