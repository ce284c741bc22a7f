//! Hilbert symbols, Hasse invariants and the Hasse–Minkowski decision.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QuadraticForm;
use crate::arith::{is_prime, prime_support, square_class, valuation};
use crate::error::{Error, Result};
use crate::Rat;

/// A place of ℚ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(BigInt),
    Infinity,
}

impl Place {
    pub fn prime(p: i64) -> Result<Place> {
        Place::from_bigint(BigInt::from(p))
    }

    pub fn from_bigint(p: BigInt) -> Result<Place> {
        if p.is_positive() && is_prime(p.magnitude()) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::Invalid(format!("{p} is not a prime")))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Integer in the same square class.
fn integral(x: &Rat) -> BigInt {
    x.numer() * x.denom()
}

fn split_off(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let k = valuation(n, p);
    (k, n / p.pow(k))
}

/// Legendre symbol of a unit modulo an odd prime.
fn legendre(u: &BigInt, p: &BigInt) -> i32 {
    let e = (p - 1u32) / 2u32;
    let r = u.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u32 {
    u.mod_floor(&BigInt::from(8)).to_u32().expect("residue")
}

/// `(a, b)_p`: `+1` iff `z² = a x² + b y²` has a nontrivial solution over
/// `ℚ_p` (or `ℝ`).
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (a, b) = (integral(a), integral(b));
    Ok(match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if *p == BigInt::from(2) => {
            let (alpha, u) = split_off(&a, p);
            let (beta, v) = split_off(&b, p);
            let eps = |x: &BigInt| ((mod8(x) + 7) / 2) % 2;
            let omega = |x: &BigInt| {
                let r = mod8(x);
                u32::from(r == 3 || r == 5)
            };
            let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_off(&a, p);
            let (beta, v) = split_off(&b, p);
            let eps_p = ((p - 1u32) / 2u32).is_odd();
            let mut s = if eps_p && alpha % 2 == 1 && beta % 2 == 1 { -1 } else { 1 };
            if beta % 2 == 1 {
                s *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    })
}

/// Whether `x` is a square in `ℚ_p`.
fn is_local_square(x: &Rat, place: &Place) -> bool {
    let n = integral(x);
    match place {
        Place::Infinity => n.is_positive(),
        Place::Prime(p) => {
            let (k, u) = split_off(&n, p);
            if k % 2 == 1 {
                return false;
            }
            if *p == BigInt::from(2) {
                mod8(&u) == 1
            } else {
                legendre(&u, p) == 1
            }
        }
    }
}

fn hasse_of_diagonal(d: &[Rat], place: &Place) -> i32 {
    let mut h = 1;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            h *= hilbert_symbol(&d[i], &d[j], place).expect("nonzero diagonal");
        }
    }
    h
}

/// Places where a nondegenerate diagonal form can fail to be locally
/// isotropic or have nontrivial invariants: 2, ∞ and primes in the entries.
fn relevant_places(diags: &[&[Rat]]) -> Vec<Place> {
    let mut primes: Vec<BigInt> = vec![BigInt::from(2)];
    for d in diags {
        for x in d.iter() {
            primes.extend(prime_support(x));
        }
    }
    primes.sort();
    primes.dedup();
    let mut out: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    out.push(Place::Infinity);
    out
}

/// Local isotropy of a nondegenerate diagonal form of rank 3 or 4.
fn locally_isotropic(d: &[Rat], place: &Place) -> bool {
    let disc: Rat = d.iter().fold(Rat::one(), |acc, x| acc * x);
    let eps = hasse_of_diagonal(d, place);
    let minus_one = -Rat::one();
    match d.len() {
        3 => hilbert_symbol(&minus_one, &(-disc), place).expect("nonzero") == eps,
        4 => {
            !is_local_square(&disc, place)
                || eps == hilbert_symbol(&minus_one, &minus_one, place).expect("nonzero")
        }
        _ => unreachable!("only ranks 3 and 4 are decided locally"),
    }
}

pub(super) fn nonzero_diagonal(q: &QuadraticForm) -> Result<(Vec<Rat>, bool)> {
    let (_, d) = q.diagonalize()?;
    let degenerate = d.iter().any(Zero::is_zero);
    Ok((d.into_iter().filter(|x| !x.is_zero()).collect(), degenerate))
}

impl QuadraticForm {
    /// Product of `(d_i, d_j)_p` over `i < j` for a diagonalization.
    pub fn hasse_invariant(&self, place: &Place) -> Result<i32> {
        let (d, degenerate) = nonzero_diagonal(self)?;
        if degenerate {
            return Err(Error::Degenerate);
        }
        Ok(hasse_of_diagonal(&d, place))
    }

    /// Decides whether `q` has a nontrivial rational zero.
    pub fn is_isotropic(&self) -> Result<bool> {
        let (d, degenerate) = nonzero_diagonal(self)?;
        if degenerate {
            return Ok(true);
        }
        Ok(diagonal_is_isotropic(&d))
    }

    /// Isometry over ℚ of two nondegenerate numeric forms.
    pub fn equivalent_over_q(&self, other: &QuadraticForm) -> Result<bool> {
        let (d1, g1) = nonzero_diagonal(self)?;
        let (d2, g2) = nonzero_diagonal(other)?;
        if g1 || g2 {
            return Err(Error::Degenerate);
        }
        if d1.len() != d2.len() {
            return Ok(false);
        }
        let disc = |d: &[Rat]| square_class(&d.iter().fold(Rat::one(), |a, x| a * x));
        if disc(&d1) != disc(&d2) {
            return Ok(false);
        }
        if self.signature()? != other.signature()? {
            return Ok(false);
        }
        Ok(relevant_places(&[&d1, &d2])
            .iter()
            .all(|p| hasse_of_diagonal(&d1, p) == hasse_of_diagonal(&d2, p)))
    }
}

/// Hasse–Minkowski for a nondegenerate diagonal form.
pub(super) fn diagonal_is_isotropic(d: &[Rat]) -> bool {
    let pos = d.iter().filter(|x| x.is_positive()).count();
    let indefinite = pos > 0 && pos < d.len();
    match d.len() {
        0 | 1 => false,
        2 => square_class(&(-(d[0].clone() * d[1].clone()))).is_square(),
        3 | 4 => {
            indefinite
                && relevant_places(&[d])
                    .iter()
                    .filter(|p| **p != Place::Infinity)
                    .all(|p| locally_isotropic(d, p))
        }
        _ => indefinite,
    }
}
