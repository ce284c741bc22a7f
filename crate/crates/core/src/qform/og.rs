//! Small orthogonal-Grassmannian formulas and forms built from them.

use num_traits::{One, Zero};

use super::QuadraticForm;
use crate::arith::{square_class, SquareClass};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{Poly, Rat};

/// `dim OG(m+1, n+2) = (2n − 3m)(m+1)/2`, for `2m ≤ n`.
pub fn og_dimension(m: u64, n: u64) -> Result<u64> {
    if 2 * m > n {
        return Err(Error::Precondition(format!("2m <= n fails for m={m}, n={n}")));
    }
    Ok((2 * n - 3 * m) * (m + 1) / 2)
}

/// Number of real Veronese families in a quadric of signature `(r, s)`:
/// how many of `(5,1)`, `(1,5)`, `(3,3)` fit inside `(r, s)`.
pub fn real_veronese_family_count(r: u64, s: u64) -> Result<u64> {
    if r + s < 6 {
        return Err(Error::Precondition(format!("r + s = {} < 6", r + s)));
    }
    if r < s {
        return Err(Error::Precondition(format!("signature ({r},{s}) needs r >= s")));
    }
    Ok([(5, 1), (1, 5), (3, 3)]
        .iter()
        .filter(|(a, b)| *a <= r && *b <= s)
        .count() as u64)
}

/// The conic pair `a0x0²+a1x1²+a2x2²` and `a0a1a2·y² − a3x3² − a4x4²`.
pub fn og13_conic_pair(a: &[Rat; 5]) -> Result<(QuadraticForm, QuadraticForm)> {
    if a.iter().any(Zero::is_zero) {
        return Err(Error::ZeroArgument);
    }
    let c = QuadraticForm::diagonal(&a[..3])?;
    let prod = a[0].clone() * a[1].clone() * a[2].clone();
    let c2 = QuadraticForm::diagonal(&[prod, -a[3].clone(), -a[4].clone()])?
        .with_coords(vec!["y".into(), "x3".into(), "x4".into()])?;
    Ok((c, c2))
}

/// `Δ(q)·z² − q` for a nondegenerate rank-5 form, `Δ(q)` square-free.
pub fn g_of_q3(q: &QuadraticForm) -> Result<QuadraticForm> {
    let g = q.numeric_gram()?;
    if q.dim() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: q.dim(),
        });
    }
    let det = g.det();
    if det.is_zero() {
        return Err(Error::Degenerate);
    }
    let delta = Rat::from_integer(square_class(&det).representative().clone());
    let mut z = "z".to_string();
    while q.coords().contains(&z) {
        z.push('_');
    }
    let mut coords = q.coords().to_vec();
    coords.push(z);
    let out = Matrix::from_fn(6, 6, |i, j| match (i, j) {
        (5, 5) => Poly::constant(delta.clone()),
        (5, _) | (_, 5) => Poly::zero(),
        _ => Poly::constant(-g[(i, j)].clone()),
    });
    QuadraticForm::from_gram(coords, out)
}

impl QuadraticForm {
    /// Class of `(−1)^{r+1}·Δ` for a nondegenerate form of rank `2r+2`; the
    /// variety of middle-dimensional isotropic subspaces splits over ℚ iff
    /// this class is trivial.
    pub fn mid_og_component_class(&self) -> Result<SquareClass> {
        let g = self.numeric_gram()?;
        let n = self.dim();
        if n % 2 == 1 {
            return Err(Error::OddRank(n));
        }
        let det = g.det();
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        let r1 = n / 2;
        let sign = if r1 % 2 == 0 { Rat::one() } else { -Rat::one() };
        Ok(square_class(&(sign * det)))
    }
}
