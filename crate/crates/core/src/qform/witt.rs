//! Witt decomposition: hyperbolic planes split off until the anisotropic
//! kernel remains.

use num_traits::{One, Zero};

use super::{diagonalize_matrix, QuadraticForm};
use crate::error::{Error, Result};
use crate::arith::square_class;
use crate::matrix::Matrix;
use crate::scalar::Ring;
use crate::Rat;

/// `Sᵀ·G·S = H ⊕ … ⊕ H ⊕ diag(kernel_diagonal)` with `H = [[0,1],[1,0]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct WittDecomposition {
    pub witt_index: usize,
    pub transform: Matrix<Rat>,
    pub kernel_diagonal: Vec<Rat>,
    /// Names for the kernel coordinates, taken from the original coordinates
    /// whose basis vectors survive into the kernel.
    pub kernel_coords: Vec<String>,
}

impl WittDecomposition {
    /// The block form `Sᵀ·G·S` is expected to equal.
    pub fn block_form(&self) -> Matrix<Rat> {
        let n = 2 * self.witt_index + self.kernel_diagonal.len();
        let mut m = Matrix::zeros(n, n);
        for i in 0..self.witt_index {
            m[(2 * i, 2 * i + 1)] = Rat::one();
            m[(2 * i + 1, 2 * i)] = Rat::one();
        }
        for (i, d) in self.kernel_diagonal.iter().enumerate() {
            let k = 2 * self.witt_index + i;
            m[(k, k)] = d.clone();
        }
        m
    }

    /// The first `m` isotropic basis vectors (columns `0, 2, 4, …` of `S`),
    /// spanning a totally isotropic subspace.
    pub fn isotropic_vectors(&self, m: usize) -> Vec<Vec<Rat>> {
        (0..m.min(self.witt_index))
            .map(|i| self.transform.col(2 * i))
            .collect()
    }

    /// The kernel as a diagonal form in `kernel_coords`.
    pub fn kernel_form(&self) -> Result<QuadraticForm> {
        if self.kernel_diagonal.is_empty() {
            return Err(Error::Invalid("empty anisotropic kernel".into()));
        }
        QuadraticForm::diagonal(&self.kernel_diagonal)?.with_coords(self.kernel_coords.clone())
    }

    /// The kernel in coordinates `x1, …, xk`, each coefficient replaced by
    /// its square-free integer representative.
    pub fn normalized_kernel_form(&self) -> Result<QuadraticForm> {
        let d: Vec<Rat> = self
            .kernel_diagonal
            .iter()
            .map(|c| Rat::from_integer(square_class(c).representative().clone()))
            .collect();
        let names = (1..=d.len()).map(|i| format!("x{i}")).collect();
        QuadraticForm::diagonal(&d)?.with_coords(names)
    }
}

fn columns(m: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    (0..m.cols()).map(|j| m.col(j)).collect()
}

fn from_columns(n: usize, cols: &[Vec<Rat>]) -> Matrix<Rat> {
    Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
}

fn axpy(a: &Rat, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    x.iter().zip(y).map(|(xi, yi)| a.clone() * xi.clone() + yi.clone()).collect()
}

impl QuadraticForm {
    /// Splits hyperbolic planes `(v, f)` off while the remaining form is
    /// isotropic, then diagonalizes the anisotropic rest.
    pub fn witt_decompose(&self, height_cap: u64) -> Result<WittDecomposition> {
        let g = self.numeric_gram()?;
        let n = self.dim();
        if g.rank() < n {
            return Err(Error::Degenerate);
        }
        let b = |x: &[Rat], y: &[Rat]| g.bilinear(x, y);
        let mut hyperbolic: Vec<Vec<Rat>> = Vec::new();
        let mut basis: Vec<Vec<Rat>> = columns(&Matrix::identity(n));
        let mut names: Vec<String> = self.coords().to_vec();
        loop {
            if basis.len() < 2 {
                break;
            }
            let w = from_columns(n, &basis);
            let sub = self.restrict(&w, names.clone())?;
            if !sub.is_isotropic()? {
                break;
            }
            let y = sub.find_isotropic_vector(height_cap)?;
            let v = w.mul_vec(&y);
            let w0 = basis
                .iter()
                .find(|e| !b(&v, e).is_zero())
                .expect("nondegenerate subspace pairs with v")
                .clone();
            let c = -(b(&w0, &w0) / (Rat::from_i64(2) * b(&v, &w0)));
            let w1 = axpy(&c, &v, &w0);
            let bvw = b(&v, &w1);
            let f: Vec<Rat> = w1.iter().map(|x| x.clone() / bvw.clone()).collect();
            // project the old basis onto the orthogonal complement of <v, f>
            let projected: Vec<Vec<Rat>> = basis
                .iter()
                .map(|x| {
                    let t = axpy(&-b(x, &f), &v, x);
                    axpy(&-b(x, &v), &f, &t)
                })
                .collect();
            let (_, pivots) = from_columns(n, &projected).rref();
            basis = pivots.iter().map(|&j| projected[j].clone()).collect();
            names = pivots.iter().map(|&j| names[j].clone()).collect();
            hyperbolic.push(v);
            hyperbolic.push(f);
        }
        let w = from_columns(n, &basis);
        let mut cols = hyperbolic;
        let mut kernel = Vec::new();
        if !basis.is_empty() {
            let gw = w.transpose().mul(&g).mul(&w);
            let (t, d) = diagonalize_matrix(&gw);
            cols.extend(columns(&w.mul(&t)));
            kernel = d;
        }
        let transform = from_columns(n, &cols);
        let dec = WittDecomposition {
            witt_index: (n - kernel.len()) / 2,
            transform,
            kernel_diagonal: kernel,
            kernel_coords: names,
        };
        debug_assert_eq!(g.congruence(&dec.transform), dec.block_form());
        Ok(dec)
    }

    /// Basis of an `(m+1)`-dimensional subspace on which `q` and `b_q`
    /// vanish, or `None` when the Witt index is at most `m`.
    pub fn totally_isotropic_subspace(&self, m: usize, height_cap: u64) -> Result<Option<Vec<Vec<Rat>>>> {
        let dec = self.witt_decompose(height_cap)?;
        if dec.witt_index < m + 1 {
            return Ok(None);
        }
        Ok(Some(dec.isotropic_vectors(m + 1)))
    }

    /// Witt index of a nondegenerate numeric form.
    pub fn witt_index(&self, height_cap: u64) -> Result<usize> {
        Ok(self.witt_decompose(height_cap)?.witt_index)
    }
}
