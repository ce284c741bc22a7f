//! Isotropic vectors by height-bounded enumeration.
//!
//! The search runs inside the smallest isotropic principal coordinate
//! subform. There the first `k - 1` coordinates are enumerated projectively
//! by increasing height, and the last one is solved from the quadratic
//! `A z² + B z + C = 0`, so a witness is found at the lowest height of its
//! free part. Arithmetic is in `i128` when the bounds allow and in `BigInt`
//! otherwise.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::local::nonzero_diagonal;
use super::QuadraticForm;
use crate::arith::primitive_integer_vector;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::Rat;

/// Height cap used when the caller does not choose one.
pub const DEFAULT_HEIGHT_CAP: u64 = 50;

trait SearchInt: Clone + Integer + Signed + Roots + From<i64> {}
impl<T: Clone + Integer + Signed + Roots + From<i64>> SearchInt for T {}

/// Calls `f` on every primitive-up-to-sign integer vector of length `m` with
/// max-norm exactly `h` (first nonzero entry positive); stops when `f`
/// returns `Some`.
fn for_each_at_height<T>(m: usize, h: i64, mut f: impl FnMut(&[i64]) -> Option<T>) -> Option<T> {
    let mut x = vec![-h; m];
    loop {
        let max = x.iter().map(|v| v.abs()).max().unwrap_or(0);
        let first = x.iter().find(|v| **v != 0).copied().unwrap_or(0);
        if max == h && first > 0 {
            if let Some(r) = f(&x) {
                return Some(r);
            }
        }
        let mut i = m;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if x[i] < h {
                x[i] += 1;
                break;
            }
            x[i] = -h;
        }
    }
}

/// Searches `g` (integer, symmetric, `g[k-1][k-1] != 0`) for a zero with
/// free part of height at most `cap`.
fn search_subform<T: SearchInt>(g: &[Vec<T>], cap: u64) -> Option<Vec<T>> {
    let k = g.len();
    let m = k - 1;
    let a = g[m][m].clone();
    let two = T::from(2);
    let four = T::from(4);
    for h in 1..=cap as i64 {
        let found = for_each_at_height(m, h, |x| {
            let xs: Vec<T> = x.iter().map(|&v| T::from(v)).collect();
            let mut b = T::zero();
            let mut c = T::zero();
            for i in 0..m {
                if xs[i].is_zero() {
                    continue;
                }
                b = b + g[i][m].clone() * xs[i].clone();
                for j in 0..m {
                    c = c + g[i][j].clone() * xs[i].clone() * xs[j].clone();
                }
            }
            let b = b * two.clone();
            let disc = b.clone() * b.clone() - four.clone() * a.clone() * c;
            if disc.is_negative() {
                return None;
            }
            let r = disc.sqrt();
            if r.clone() * r.clone() != disc {
                return None;
            }
            // z = (-b + r) / (2a), written projectively
            let num = r - b;
            let den = two.clone() * a.clone();
            let mut v: Vec<T> = xs.iter().map(|xi| xi.clone() * den.clone()).collect();
            v.push(num);
            Some(v)
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn to_integer_rows(g: &Matrix<Rat>) -> Vec<Vec<BigInt>> {
    let mut den = BigInt::one();
    for row in g.to_rows() {
        for x in row {
            den = den.lcm(x.denom());
        }
    }
    g.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect())
        .collect()
}

fn search_integer_form(g: &[Vec<BigInt>], cap: u64) -> Option<Vec<BigInt>> {
    let k = g.len();
    let max = g.iter().flatten().map(|x| x.abs()).max().unwrap_or_default();
    // |disc| <= 4 * (2 k max cap)^2 + 4 max * k^2 max cap^2; keep well inside i128
    let bound = max.to_f64().unwrap_or(f64::INFINITY) * (k as f64) * (cap as f64 + 1.0);
    if bound < 1e15 {
        let small: Vec<Vec<i128>> = g
            .iter()
            .map(|r| r.iter().map(|x| x.to_i128().expect("bounded")).collect())
            .collect();
        search_subform(&small, cap).map(|v| v.into_iter().map(BigInt::from).collect())
    } else {
        search_subform(g, cap)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn normalize(v: &[Rat]) -> Vec<Rat> {
    primitive_integer_vector(v)
        .into_iter()
        .map(Rat::from_integer)
        .collect()
}

impl QuadraticForm {
    /// A nonzero integral vector `v` with `q(v) = 0`.
    ///
    /// Coordinate vectors with `q(e_i) = 0` and radical directions are
    /// returned directly; otherwise the search enumerates free coordinates up
    /// to `height_cap` and reports [`Error::CapExceeded`] if that is not
    /// enough.
    pub fn find_isotropic_vector(&self, height_cap: u64) -> Result<Vec<Rat>> {
        let g = self.numeric_gram()?;
        let n = self.dim();
        if let Some(i) = (0..n).find(|&i| g[(i, i)].is_zero()) {
            return Ok(unit(n, i));
        }
        let (_, degenerate) = nonzero_diagonal(self)?;
        if degenerate {
            let ns = g.nullspace();
            return Ok(normalize(&ns[0]));
        }
        if !self.is_isotropic()? {
            return Err(Error::NotIsotropic);
        }
        for k in 2..=n {
            for idx in subsets(n, k) {
                let sub = self.principal_subform(&idx);
                if !sub.is_isotropic()? {
                    continue;
                }
                let (_, sub_degenerate) = nonzero_diagonal(&sub)?;
                let local: Vec<Rat> = if sub_degenerate {
                    normalize(&sub.numeric_gram()?.nullspace()[0])
                } else {
                    let ints = to_integer_rows(&sub.numeric_gram()?);
                    match search_integer_form(&ints, height_cap) {
                        Some(v) => v.into_iter().map(Rat::from_integer).collect(),
                        None => return Err(Error::CapExceeded(height_cap)),
                    }
                };
                let mut v = vec![Rat::zero(); n];
                for (pos, &i) in idx.iter().enumerate() {
                    v[i] = local[pos].clone();
                }
                let v = normalize(&v);
                debug_assert!(self.eval_rat(&v)?.is_zero());
                return Ok(v);
            }
        }
        unreachable!("an isotropic form has an isotropic principal subform (itself)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;

    fn ints(v: &[Rat]) -> Vec<i64> {
        v.iter().map(|x| x.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn pythagorean_witness_has_height_one() {
        let q = QuadraticForm::diagonal_i64(&[1, 1, -1]).unwrap();
        let v = q.find_isotropic_vector(DEFAULT_HEIGHT_CAP).unwrap();
        assert!(q.eval_rat(&v).unwrap().is_zero());
        assert_eq!(v.iter().map(|x| x.abs()).max().unwrap(), Rat::one());
        // and (3, 4, 5) is a witness too
        assert!(q
            .eval_rat(&[Rat::from_i64(3), Rat::from_i64(4), Rat::from_i64(5)])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn coordinate_and_radical_directions() {
        let q = QuadraticForm::parse("x0*x1 + x2^2", None).unwrap();
        assert_eq!(ints(&q.find_isotropic_vector(5).unwrap()), vec![1, 0, 0]);
        let q = QuadraticForm::diagonal_i64(&[1, 0]).unwrap();
        assert_eq!(ints(&q.find_isotropic_vector(5).unwrap()), vec![0, 1]);
        let q = QuadraticForm::parse("x^2 + 2*x*y + y^2 + z^2", None).unwrap();
        let v = q.find_isotropic_vector(5).unwrap();
        assert_eq!(ints(&v), vec![1, -1, 0]);
    }

    #[test]
    fn anisotropic_and_cap() {
        let q = QuadraticForm::diagonal_i64(&[1, 1, -3]).unwrap();
        assert_eq!(q.find_isotropic_vector(10), Err(Error::NotIsotropic));
        // x^2 + y^2 = 13 z^2 first solves at (2, 3, 1)
        let q = QuadraticForm::diagonal_i64(&[1, 1, -13]).unwrap();
        assert_eq!(q.find_isotropic_vector(2), Err(Error::CapExceeded(2)));
        assert_eq!(ints(&q.find_isotropic_vector(3).unwrap()), vec![2, -3, -1]);
    }

    #[test]
    fn larger_rank_witnesses() {
        for d in [
            vec![1, 1, 1, 1, -1],
            vec![2, 3, -5, 7, -11, 13],
            vec![1, 2, 3, -6],
            vec![-3, 5, 7, 2],
        ] {
            let q = QuadraticForm::diagonal_i64(&d).unwrap();
            if q.is_isotropic().unwrap() {
                let v = q.find_isotropic_vector(DEFAULT_HEIGHT_CAP).unwrap();
                assert!(q.eval_rat(&v).unwrap().is_zero(), "{d:?}");
                assert!(v.iter().any(|x| !x.is_zero()));
            }
        }
    }
}
