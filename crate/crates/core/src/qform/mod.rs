//! Quadratic forms `q(x) = xᵀ·G·x` with polynomial Gram entries.
//!
//! A form is *numeric* when every entry of `G` is a rational constant; the
//! local-global machinery (isotropy, Witt decomposition, equivalence) needs
//! numeric forms. Symbolic forms are still useful as targets for identity
//! checks such as `q(h_0, …, h_{n+1}) ≡ 0`.

mod local;
mod og;
mod search;
mod witt;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{square_class, SquareClass};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Ring;
use crate::{Poly, Rat};

pub use local::{hilbert_symbol, Place};
pub use og::{g_of_q3, og13_conic_pair, og_dimension, real_veronese_family_count};
pub use search::DEFAULT_HEIGHT_CAP;
pub use witt::WittDecomposition;

/// Number of positive and negative squares in a diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discriminant {
    Numeric(SquareClass),
    Symbolic(Poly),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    coords: Vec<String>,
    gram: Matrix<Poly>,
}

/// Orders `x2` before `x10`.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u128>, &str) {
        let head_len = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (head, rest) = s.split_at(head_len);
        let num_len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let (num, tail) = rest.split_at(num_len);
        (head, num.parse().ok(), tail)
    }
    let (ha, na, ta) = split(a);
    let (hb, nb, tb) = split(b);
    ha.cmp(hb)
        .then(na.cmp(&nb))
        .then_with(|| ta.cmp(tb))
        .then_with(|| a.cmp(b))
}

/// Default coordinate names `x0, …, x{n-1}`.
pub fn default_coords(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

impl QuadraticForm {
    /// Builds a form from a symmetric Gram matrix.
    pub fn from_gram(coords: Vec<String>, gram: Matrix<Poly>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Invalid("Gram matrix must be square".into()));
        }
        if gram.rows() == 0 {
            return Err(Error::Invalid("form must have at least one coordinate".into()));
        }
        if coords.len() != gram.rows() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                got: coords.len(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::Invalid("Gram matrix must be symmetric".into()));
        }
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].contains(c) {
                return Err(Error::Invalid(format!("repeated coordinate {c}")));
            }
            if gram.to_rows().iter().flatten().any(|e| e.used_vars().contains(c)) {
                return Err(Error::Invalid(format!("coordinate {c} occurs in a Gram entry")));
            }
        }
        Ok(QuadraticForm { coords, gram })
    }

    /// Numeric form from a rational symmetric matrix, coordinates `x0, …`.
    pub fn from_rat_matrix(gram: &Matrix<Rat>) -> Result<Self> {
        Self::from_gram(default_coords(gram.rows()), gram.map(|c| Poly::constant(c.clone())))
    }

    pub fn from_rat_rows(rows: &[Vec<Rat>]) -> Result<Self> {
        Self::from_rat_matrix(&Matrix::from_rows(rows.to_vec()))
    }

    /// Diagonal numeric form.
    pub fn diagonal(d: &[Rat]) -> Result<Self> {
        Self::from_rat_matrix(&Matrix::diagonal(d))
    }

    pub fn diagonal_i64(d: &[i64]) -> Result<Self> {
        let d: Vec<Rat> = d.iter().map(|&x| Rat::from_i64(x)).collect();
        Self::diagonal(&d)
    }

    /// Symmetrizes a homogeneous quadratic polynomial; each off-diagonal
    /// coefficient is split evenly between `G[i][j]` and `G[j][i]`.
    ///
    /// Without explicit `coords`, the coordinates are the variables whose
    /// names start with `x`, `y` or `z` (natural order), or all variables if
    /// there are none; any other variable is a parameter.
    pub fn from_poly(p: &Poly, coords: Option<&[String]>) -> Result<Self> {
        let coords: Vec<String> = match coords {
            Some(c) => c.to_vec(),
            None => {
                let used = p.used_vars();
                let mut cs: Vec<String> = used
                    .iter()
                    .filter(|v| v.starts_with(['x', 'y', 'z']))
                    .cloned()
                    .collect();
                if cs.is_empty() {
                    cs = used;
                }
                cs.sort_by(|a, b| natural_cmp(a, b));
                cs
            }
        };
        if coords.is_empty() {
            return Err(Error::Invalid("no coordinates in quadratic form".into()));
        }
        let names: Vec<&str> = coords.iter().map(String::as_str).collect();
        if !p.is_homogeneous_in(&names, 2) {
            return Err(Error::Invalid(format!(
                "not a homogeneous quadratic form in {}",
                coords.join(", ")
            )));
        }
        let n = coords.len();
        let half = Rat::new(1.into(), 2.into());
        let mut gram = Matrix::<Poly>::zeros(n, n);
        for (e, c) in p.coefficients_in(&names) {
            let idx: Vec<usize> = e
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize))
                .collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                gram[(i, i)] = c;
            } else {
                let h = c.scale(&half);
                gram[(i, j)] = h.clone();
                gram[(j, i)] = h;
            }
        }
        Self::from_gram(coords, gram)
    }

    pub fn parse(text: &str, coords: Option<&[String]>) -> Result<Self> {
        Self::from_poly(&crate::parse::parse_poly(text, None)?, coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn gram(&self) -> &Matrix<Poly> {
        &self.gram
    }

    pub fn with_coords(&self, coords: Vec<String>) -> Result<Self> {
        Self::from_gram(coords, self.gram.clone())
    }

    pub fn is_numeric(&self) -> bool {
        self.gram.to_rows().iter().flatten().all(Poly::is_constant)
    }

    pub fn numeric_gram(&self) -> Result<Matrix<Rat>> {
        if !self.is_numeric() {
            return Err(Error::NotNumeric);
        }
        Ok(self.gram.map(|e| e.as_constant().expect("constant entry")))
    }

    /// The form as a polynomial in its coordinates.
    pub fn to_poly(&self) -> Poly {
        let xs: Vec<Poly> = self.coords.iter().map(|c| Poly::var(c)).collect();
        self.eval(&xs)
    }

    /// `q(v)` for polynomial arguments.
    pub fn eval(&self, v: &[Poly]) -> Poly {
        self.polar(v, v)
    }

    /// `b_q(x, y) = xᵀ·G·y`.
    pub fn polar(&self, x: &[Poly], y: &[Poly]) -> Poly {
        assert_eq!(x.len(), self.dim(), "argument length");
        assert_eq!(y.len(), self.dim(), "argument length");
        let n = self.dim();
        let mut acc = Poly::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Poly::zero();
            for j in 0..n {
                let g = &self.gram[(i, j)];
                if !g.is_zero() && !y[j].is_zero() {
                    row = &row + &(g * &y[j]);
                }
            }
            acc = &acc + &(&x[i] * &row);
        }
        acc
    }

    /// Checked variant of [`eval`](Self::eval).
    pub fn try_eval(&self, v: &[Poly]) -> Result<Poly> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(self.eval(v))
    }

    pub fn eval_rat(&self, v: &[Rat]) -> Result<Rat> {
        Ok(self.numeric_gram()?.bilinear(v, v))
    }

    pub fn polar_rat(&self, x: &[Rat], y: &[Rat]) -> Result<Rat> {
        Ok(self.numeric_gram()?.bilinear(x, y))
    }

    /// Congruent form `Sᵀ·G·S`, same coordinate names.
    pub fn transform(&self, s: &Matrix<Rat>) -> Result<Self> {
        if s.rows() != self.dim() || !s.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: s.rows(),
            });
        }
        let sp = s.map(|c| Poly::constant(c.clone()));
        Self::from_gram(self.coords.clone(), self.gram.congruence(&sp))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QuadraticForm {
            coords: self.coords.clone(),
            gram: self.gram.scale(&Poly::constant(c.clone())),
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.numeric_gram()?.rank())
    }

    pub fn is_degenerate(&self) -> Result<bool> {
        Ok(self.rank()? < self.dim())
    }

    /// Diagonalizes by congruence: returns `(S, d)` with
    /// `Sᵀ·G·S = diag(d)`, zeros of `d` (the radical) placed last.
    pub fn diagonalize(&self) -> Result<(Matrix<Rat>, Vec<Rat>)> {
        Ok(diagonalize_matrix(&self.numeric_gram()?))
    }

    pub fn signature(&self) -> Result<Signature> {
        let (_, d) = self.diagonalize()?;
        Ok(Signature {
            positives: d.iter().filter(|x| x.is_positive()).count(),
            negatives: d.iter().filter(|x| x.is_negative()).count(),
        })
    }

    /// Determinant of the Gram matrix; reduced mod squares when numeric.
    pub fn discriminant(&self) -> Discriminant {
        match self.numeric_gram() {
            Ok(g) => Discriminant::Numeric(square_class(&g.det())),
            Err(_) => Discriminant::Symbolic(self.gram.det()),
        }
    }

    pub fn numeric_discriminant(&self) -> Result<SquareClass> {
        Ok(square_class(&self.numeric_gram()?.det()))
    }

    /// Restriction to the coordinate subspace spanned by `idx`.
    pub fn principal_subform(&self, idx: &[usize]) -> Self {
        QuadraticForm {
            coords: idx.iter().map(|&i| self.coords[i].clone()).collect(),
            gram: self.gram.submatrix(idx, idx),
        }
    }

    /// Restriction to the span of the columns of `basis` (an `n×k` matrix),
    /// coordinates named by `names`.
    pub fn restrict(&self, basis: &Matrix<Rat>, names: Vec<String>) -> Result<Self> {
        let g = self.numeric_gram()?;
        Self::from_gram(names, basis.transpose().mul(&g).mul(basis).map(|c| Poly::constant(c.clone())))
    }
}

/// Symmetric Gaussian elimination by congruence.
pub(crate) fn diagonalize_matrix(g: &Matrix<Rat>) -> (Matrix<Rat>, Vec<Rat>) {
    let n = g.rows();
    let mut a = g.clone();
    let mut s = Matrix::<Rat>::identity(n);
    let mut d = Vec::with_capacity(n);
    // e_j <- e_j + c e_i, applied on both sides
    let add_col = |a: &mut Matrix<Rat>, s: &mut Matrix<Rat>, j: usize, i: usize, c: &Rat| {
        for r in 0..n {
            let v = a[(r, j)].clone() + c.clone() * a[(r, i)].clone();
            a[(r, j)] = v;
            let v = s[(r, j)].clone() + c.clone() * s[(r, i)].clone();
            s[(r, j)] = v;
        }
        for r in 0..n {
            let v = a[(j, r)].clone() + c.clone() * a[(i, r)].clone();
            a[(j, r)] = v;
        }
    };
    let swap = |a: &mut Matrix<Rat>, s: &mut Matrix<Rat>, i: usize, j: usize| {
        if i == j {
            return;
        }
        for r in 0..n {
            let t = a[(r, i)].clone();
            a[(r, i)] = a[(r, j)].clone();
            a[(r, j)] = t;
            let t = s[(r, i)].clone();
            s[(r, i)] = s[(r, j)].clone();
            s[(r, j)] = t;
        }
        for r in 0..n {
            let t = a[(i, r)].clone();
            a[(i, r)] = a[(j, r)].clone();
            a[(j, r)] = t;
        }
    };
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[(i, i)].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let pair = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_zero());
                let Some((i, j)) = pair else {
                    break;
                };
                add_col(&mut a, &mut s, i, j, &Rat::one());
                i
            }
        };
        swap(&mut a, &mut s, k, pivot);
        let p = a[(k, k)].clone();
        for j in k + 1..n {
            if !a[(k, j)].is_zero() {
                let c = -(a[(k, j)].clone() / p.clone());
                add_col(&mut a, &mut s, j, k, &c);
            }
        }
        d.push(p);
    }
    d.resize(n, Rat::zero());
    (s, d)
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}
