//! Quadratic maps `P² → Pⁿ⁺¹`, the explicit families that land in quadrics,
//! and their classification by the geometry of the projected Veronese
//! surface.
//!
//! A quadratic map is a linear projection of the Veronese surface
//! `V ⊂ P⁵ = P(Sym² k³)`: the coordinates span a subspace of the six
//! quadratic monomials, and the annihilator of that span is the projection
//! center.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qform::{default_coords, QuadraticForm};
use crate::scalar::Ring;
use crate::{Poly, Rat};

/// Source coordinates of `P²`.
pub const U: &str = "u";
pub const V: &str = "v";
pub const W: &str = "w";
const UVW: [&str; 3] = [U, V, W];

/// Exponents of `u², v², w², uv, vw, uw`, in that order.
pub const MONOMIALS: [[u32; 3]; 6] = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [0, 1, 1], [1, 0, 1]];

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// A map `(u:v:w) ↦ (h_0 : … : h_{n+1})` by quadrics, possibly with
/// parameters in the coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticMap {
    coords: Vec<Poly>,
    target: Option<QuadraticForm>,
}

fn check_linear(l: &Poly) -> Result<()> {
    if l.is_zero() || l.is_homogeneous_in(&UVW, 1) {
        Ok(())
    } else {
        Err(Error::NotLinear(l.to_string()))
    }
}

fn check_degree(p: &Poly, d: u32) -> Result<()> {
    if p.is_homogeneous_in(&UVW, d) && !p.is_zero() {
        Ok(())
    } else {
        Err(Error::WrongDegree {
            expected: d,
            got: p.degree_in_vars(&UVW),
        })
    }
}

fn form(p: Poly, n: usize) -> Result<QuadraticForm> {
    QuadraticForm::from_poly(&p, Some(&default_coords(n)))
}

fn x(i: usize) -> Poly {
    Poly::var(&format!("x{i}"))
}

fn uvw() -> (Poly, Poly, Poly) {
    (Poly::var(U), Poly::var(V), Poly::var(W))
}

/// Uniform pseudo-random nonzero rational of small height.
fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let mut n = 0i64;
    while n == 0 {
        n = rng.gen_range(-40..=40);
    }
    Rat::new(n.into(), rng.gen_range(1i64..=9).into())
}

impl QuadraticMap {
    /// Checks that every coordinate is a quadric in `u, v, w`.
    pub fn new(coords: Vec<Poly>) -> Result<Self> {
        if coords.iter().all(Poly::is_zero) {
            return Err(Error::AllZero);
        }
        for c in &coords {
            if !c.is_zero() && !c.is_homogeneous_in(&UVW, 2) {
                return Err(Error::Invalid(format!("{c} is not a quadric in u, v, w")));
            }
        }
        Ok(QuadraticMap { coords, target: None })
    }

    /// Attaches a target without checking it; see [`verify_on_quadric`].
    pub fn with_target(mut self, q: QuadraticForm) -> Result<Self> {
        if q.dim() != self.coords.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coords.len(),
                got: q.dim(),
            });
        }
        self.target = Some(q);
        Ok(self)
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn target(&self) -> Option<&QuadraticForm> {
        self.target.as_ref()
    }

    /// Variables other than `u, v, w`, sorted.
    pub fn params(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .coords
            .iter()
            .flat_map(|c| c.used_vars())
            .filter(|v| !UVW.contains(&v.as_str()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Substitutes values for parameters, in the map and in its target.
    pub fn specialize(&self, vals: &[(&str, Rat)]) -> Result<Self> {
        let coords = self.coords.iter().map(|c| c.eval_partial(vals)).collect();
        let mut out = QuadraticMap::new(coords)?;
        if let Some(q) = &self.target {
            let gram = q.gram().map(|e| e.eval_partial(vals));
            out = out.with_target(QuadraticForm::from_gram(q.coords().to_vec(), gram)?)?;
        }
        Ok(out)
    }

    /// `Φ ∘ S`: substitutes `(u, v, w) ↦ S·(u, v, w)`.
    pub fn precompose(&self, s: &Matrix<Rat>) -> Result<Self> {
        let (u, v, w) = uvw();
        let src = [u, v, w];
        let image: Vec<Poly> = (0..3)
            .map(|i| (0..3).fold(Poly::zero(), |acc, j| acc + src[j].scale(&s[(i, j)])))
            .collect();
        let subs: Vec<(&str, Poly)> = UVW.iter().copied().zip(image).collect();
        let coords = self.coords.iter().map(|c| c.substitute(&subs)).collect();
        let out = QuadraticMap::new(coords)?;
        match &self.target {
            Some(q) => out.with_target(q.clone()),
            None => Ok(out),
        }
    }

    /// `A ∘ Φ` for a square matrix `A`; the target is dropped.
    pub fn postcompose(&self, a: &Matrix<Rat>) -> Result<Self> {
        let n = self.coords.len();
        if a.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.cols(),
            });
        }
        let coords = (0..a.rows())
            .map(|i| (0..n).fold(Poly::zero(), |acc, j| acc + self.coords[j].scale(&a[(i, j)])))
            .collect();
        QuadraticMap::new(coords)
    }

    pub fn scale(&self, c: &Poly) -> Result<Self> {
        let out = QuadraticMap::new(self.coords.iter().map(|h| h * c).collect())?;
        match &self.target {
            Some(q) => out.with_target(q.clone()),
            None => Ok(out),
        }
    }

    /// `Φ(p)`.
    pub fn at(&self, p: &[Rat]) -> Vec<Poly> {
        let vals: Vec<(&str, Rat)> = UVW.iter().copied().zip(p.iter().cloned()).collect();
        self.coords.iter().map(|c| c.eval_partial(&vals)).collect()
    }

    /// Rows: coordinates; columns: coefficients of [`MONOMIALS`].
    pub fn coefficient_matrix(&self) -> Matrix<Poly> {
        Matrix::from_fn(self.coords.len(), 6, |i, j| self.coords[i].coefficient_of(&UVW, &MONOMIALS[j]))
    }

    /// Dimension of the span of the coordinates inside the six quadrics;
    /// parameters are specialized with [`DEFAULT_SEED`].
    pub fn span_dimension(&self) -> usize {
        self.span_dimension_seeded(DEFAULT_SEED)
    }

    /// Generic rank over three seeded specializations of the parameters.
    pub fn span_dimension_seeded(&self, seed: u64) -> usize {
        self.specializations(seed)
            .iter()
            .map(|vals| {
                let c = self.coefficient_matrix().map(|e| e.eval(&as_refs(vals)));
                c.rank()
            })
            .max()
            .unwrap_or(0)
    }

    fn specializations(&self, seed: u64) -> Vec<Vec<(String, Rat)>> {
        let params = self.params();
        if params.is_empty() {
            return vec![Vec::new()];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..3)
            .map(|_| params.iter().map(|p| (p.clone(), random_rat(&mut rng))).collect())
            .collect()
    }

    /// Classification of the image; see [`MapLabel`].
    pub fn classify(&self) -> Classification {
        self.classify_seeded(DEFAULT_SEED)
    }

    /// As [`classify`](Self::classify); parameters are specialized at three
    /// seeded random points, which must agree.
    pub fn classify_seeded(&self, seed: u64) -> Classification {
        let specs = self.specializations(seed);
        let results: Vec<Classification> = specs
            .iter()
            .map(|vals| {
                let coords: Vec<Poly> = self.coords.iter().map(|c| c.eval_partial(&as_refs(vals))).collect();
                classify_numeric(&coords)
            })
            .collect();
        let mut out = results[0].clone();
        if results.iter().any(|r| r.label != out.label || r.span_dim != out.span_dim) {
            out.label = MapLabel::ParameterDependent;
            out.center_rank = None;
            out.kernel_rank = None;
        }
        if !self.params().is_empty() {
            out.seed = Some(seed);
            out.specializations = specs;
        }
        out
    }
}

fn as_refs(vals: &[(String, Rat)]) -> Vec<(&str, Rat)> {
    vals.iter().map(|(k, v)| (k.as_str(), v.clone())).collect()
}

/// `q(Φ) ≡ 0` as a polynomial in `u, v, w` and every parameter.
pub fn verify_on_quadric(q: &QuadraticForm, phi: &QuadraticMap) -> Result<bool> {
    Ok(q.try_eval(&phi.coords)?.is_zero())
}

/// Geometry of the image of a quadratic map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapLabel {
    Point,
    LineImage,
    ConicImage,
    QuadruplePlane,
    QuadricConeImage,
    SmoothQuadricImage,
    K4Other,
    CubicScroll,
    ProjectedVeronese,
    SmoothProjectionV1,
    Veronese,
    ParameterDependent,
}

impl MapLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            MapLabel::Point => "point",
            MapLabel::LineImage => "line-image",
            MapLabel::ConicImage => "conic-image",
            MapLabel::QuadruplePlane => "quadruple-plane",
            MapLabel::QuadricConeImage => "quadric-cone-image",
            MapLabel::SmoothQuadricImage => "smooth-quadric-image",
            MapLabel::K4Other => "k4-other",
            MapLabel::CubicScroll => "cubic-scroll",
            MapLabel::ProjectedVeronese => "projected-veronese",
            MapLabel::SmoothProjectionV1 => "smooth-projection-V1",
            MapLabel::Veronese => "veronese",
            MapLabel::ParameterDependent => "parameter-dependent class",
        }
    }
}

impl fmt::Display for MapLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub label: MapLabel,
    pub span_dim: usize,
    /// Rank of the projection center as a symmetric matrix (`k = 5`).
    pub center_rank: Option<usize>,
    /// The center in monomial coordinates `(x00, x11, x22, x01, x12, x02)`.
    pub center: Option<Vec<Rat>>,
    /// Rank of the quadric through the image (`k = 4`).
    pub kernel_rank: Option<usize>,
    /// Number of independent quadrics through the image (`k = 4`).
    pub kernel_dim: Option<usize>,
    pub seed: Option<u64>,
    pub specializations: Vec<Vec<(String, Rat)>>,
}

fn row_poly(row: &[Rat]) -> Poly {
    let (u, v, w) = uvw();
    let mons = [&u * &u, &v * &v, &w * &w, &u * &v, &v * &w, &u * &w];
    mons.iter().zip(row).fold(Poly::zero(), |acc, (m, c)| acc + m.scale(c))
}

/// Symmetric matrix of a point of `P⁵` in monomial coordinates.
pub fn center_matrix(c: &[Rat]) -> Matrix<Rat> {
    Matrix::from_rows(vec![
        vec![c[0].clone(), c[3].clone(), c[5].clone()],
        vec![c[3].clone(), c[1].clone(), c[4].clone()],
        vec![c[5].clone(), c[4].clone(), c[2].clone()],
    ])
}

fn quartic_monomials() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for i in (0..=4).rev() {
        for j in (0..=4 - i).rev() {
            out.push([i, j, 4 - i - j]);
        }
    }
    out
}

fn classify_numeric(coords: &[Poly]) -> Classification {
    let c = Matrix::from_fn(coords.len(), 6, |i, j| {
        coords[i]
            .coefficient_of(&UVW, &MONOMIALS[j])
            .as_constant()
            .expect("specialized coefficients are numbers")
    });
    let (rref, pivots) = c.rref();
    let k = pivots.len();
    let basis: Vec<Poly> = (0..k).map(|i| row_poly(&rref.row(i))).collect();
    let mut out = Classification {
        label: MapLabel::Point,
        span_dim: k,
        center_rank: None,
        center: None,
        kernel_rank: None,
        kernel_dim: None,
        seed: None,
        specializations: Vec::new(),
    };
    out.label = match k {
        0 => MapLabel::ParameterDependent,
        1 => MapLabel::Point,
        2 => MapLabel::LineImage,
        3 => {
            let jac = Matrix::from_fn(3, 3, |i, j| basis[i].derivative(UVW[j]));
            if jac.det().is_zero() {
                MapLabel::ConicImage
            } else {
                MapLabel::QuadruplePlane
            }
        }
        4 => {
            let mons = quartic_monomials();
            let mut products = Vec::new();
            for i in 0..4 {
                for j in i..4 {
                    products.push((i, j, &basis[i] * &basis[j]));
                }
            }
            let m = Matrix::from_fn(mons.len(), products.len(), |r, col| {
                products[col].2.coefficient_of(&UVW, &mons[r]).as_constant().expect("numeric")
            });
            let kernel = m.nullspace();
            out.kernel_dim = Some(kernel.len());
            if kernel.len() == 1 {
                let half = Rat::new(1.into(), 2.into());
                let mut g = Matrix::<Rat>::zeros(4, 4);
                for ((i, j, _), coef) in products.iter().zip(&kernel[0]) {
                    if i == j {
                        g[(*i, *i)] = coef.clone();
                    } else {
                        g[(*i, *j)] = coef.clone() * half.clone();
                        g[(*j, *i)] = coef.clone() * half.clone();
                    }
                }
                let r = g.rank();
                out.kernel_rank = Some(r);
                match r {
                    4 => MapLabel::SmoothQuadricImage,
                    3 => MapLabel::QuadricConeImage,
                    _ => MapLabel::K4Other,
                }
            } else {
                MapLabel::K4Other
            }
        }
        5 => {
            let center = c.nullspace().remove(0);
            let r = center_matrix(&center).rank();
            out.center_rank = Some(r);
            out.center = Some(center);
            match r {
                1 => MapLabel::CubicScroll,
                2 => MapLabel::ProjectedVeronese,
                _ => MapLabel::SmoothProjectionV1,
            }
        }
        _ => MapLabel::Veronese,
    };
    out
}

fn build(coords: Vec<Poly>, target: Poly) -> Result<QuadraticMap> {
    let n = coords.len();
    QuadraticMap::new(coords)?.with_target(form(target, n)?)
}

fn nonzero_param(a: &Poly) -> Result<()> {
    if a.is_zero() {
        Err(Error::ZeroArgument)
    } else {
        Ok(())
    }
}

/// `(ℓ1ℓ2, αℓ1², α⁻¹ℓ2²)` onto `x0² − x1x2`.
///
/// For a non-constant `α` the projectively equal `(αℓ1ℓ2, α²ℓ1², ℓ2²)` is
/// returned, since `α⁻¹` is not a polynomial.
pub fn construct_conic_map(l1: &Poly, l2: &Poly, alpha: &Poly) -> Result<QuadraticMap> {
    check_linear(l1)?;
    check_linear(l2)?;
    nonzero_param(alpha)?;
    let coords = match alpha.as_constant() {
        Some(a) => vec![l1 * l2, (l1 * l1).scale(&a), (l2 * l2).scale(&a.recip())],
        None => vec![&(l1 * l2) * alpha, &(l1 * l1) * &(alpha * alpha), l2 * l2],
    };
    build(coords, &x(0) * &x(0) - &x(1) * &x(2))
}

/// `(ℓ1ℓ3 + aℓ2ℓ4, ℓ1ℓ4 + ℓ2ℓ3, ℓ1² − aℓ2², ℓ3² − aℓ4²)` onto
/// `x0² − a·x1² − x2x3`.
pub fn construct_surface_map(l: [&Poly; 4], a: &Poly) -> Result<QuadraticMap> {
    for li in l {
        check_linear(li)?;
    }
    let [l1, l2, l3, l4] = l;
    let coords = vec![
        l1 * l3 + &(l2 * l4) * a,
        l1 * l4 + l2 * l3,
        l1 * l1 - &(l2 * l2) * a,
        l3 * l3 - &(l4 * l4) * a,
    ];
    build(coords, &x(0) * &x(0) - &(&x(1) * &x(1)) * a - &x(2) * &x(3))
}

/// Inverse of the projection of `Q` from `p`:
/// `Φ(u) = q(L(u))·p − 2·b_q(p, L(u))·L(u)`.
pub fn construct_unprojection(q: &QuadraticForm, p: &[Poly], l: &[Poly]) -> Result<QuadraticMap> {
    let n = q.dim();
    for v in [p, l] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
    }
    for li in l {
        check_linear(li)?;
    }
    if !q.eval(p).is_zero() {
        return Err(Error::NotOnQuadric);
    }
    let lin = Matrix::from_fn(n, 3, |i, j| {
        let mut e = [0; 3];
        e[j] = 1;
        l[i].coefficient_of(&UVW, &e)
    });
    let injective = subsets3(n).into_iter().any(|rows| !lin.minor(&rows, &[0, 1, 2]).is_zero());
    if !injective {
        return Err(Error::DegenerateLinearMap);
    }
    let ql = q.eval(l);
    let b2 = q.polar(p, l).scale(&Rat::from_i64(2));
    let coords = p.iter().zip(l).map(|(pi, li)| &ql * pi - &b2 * li).collect();
    QuadraticMap::new(coords)?.with_target(q.clone())
}

fn subsets3(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(vec![i, j, k]);
            }
        }
    }
    out
}

/// The conic map with an arbitrary fourth coordinate `h3`, onto the cone
/// `x0² − x1x2` in `P³`.
pub fn construct_quadric_cone_map(l1: &Poly, l2: &Poly, alpha: &Poly, h3: &Poly) -> Result<QuadraticMap> {
    if !h3.is_zero() {
        check_degree(h3, 2)?;
    }
    let conic = construct_conic_map(l1, l2, alpha)?;
    let mut coords = conic.coords;
    coords.push(h3.clone());
    build(coords, &x(0) * &x(0) - &x(1) * &x(2))
}

/// `(∂C/∂u, ∂C/∂v, ∂C/∂w, 0, 0, 0)` onto `x0x3 + x1x4 + x2x5`.
pub fn construct_quadruple_plane(c: &Poly) -> Result<QuadraticMap> {
    check_degree(c, 3)?;
    let mut coords: Vec<Poly> = UVW.iter().map(|v| c.derivative(v)).collect();
    coords.extend(std::iter::repeat(Poly::zero()).take(3));
    build(coords, &x(0) * &x(3) + &x(1) * &x(4) + &x(2) * &x(5))
}

/// `(0, q, u² + av², w², uw, vw)` onto `x0x1 + x2x3 − x4² − a·x5²`.
pub fn construct_projected_veronese(a: &Poly, qpoly: &Poly) -> Result<QuadraticMap> {
    check_degree(qpoly, 2)?;
    let (u, v, w) = uvw();
    let coords = vec![
        Poly::zero(),
        qpoly.clone(),
        &u * &u + &(&v * &v) * a,
        &w * &w,
        &u * &w,
        &v * &w,
    ];
    build(
        coords,
        &x(0) * &x(1) + &x(2) * &x(3) - &x(4) * &x(4) - &(&x(5) * &x(5)) * a,
    )
}

fn veronese_q4_coords(a: &Poly, b: &Poly) -> Vec<Poly> {
    let (u, v, w) = uvw();
    let w2 = &w * &w;
    vec![
        &u * &u + &w2 * a,
        &u * &v,
        &v * &w,
        &u * &w,
        w2.clone(),
        &v * &v + &w2 * b,
    ]
}

fn q4_form(a: &Poly, b: &Poly) -> Poly {
    &x(0) * &x(5) - &x(1) * &x(1) - &(&x(2) * &x(2)) * a - &(&x(3) * &x(3)) * b - &(&(&x(4) * &x(4)) * a) * b
}

/// `(u² + aw², uv, vw, uw, w², v² + bw²)` onto
/// `x0x5 − x1² − a·x2² − b·x3² − ab·x4²`.
pub fn construct_veronese_q4(a: &Poly, b: &Poly) -> Result<QuadraticMap> {
    nonzero_param(a)?;
    nonzero_param(b)?;
    build(veronese_q4_coords(a, b), q4_form(a, b))
}

/// [`construct_veronese_q4`] with a seventh zero coordinate, onto the
/// previous form minus `c·x6²`.
pub fn construct_veronese_q5(a: &Poly, b: &Poly, c: &Poly) -> Result<QuadraticMap> {
    nonzero_param(a)?;
    nonzero_param(b)?;
    nonzero_param(c)?;
    let mut coords = veronese_q4_coords(a, b);
    coords.push(Poly::zero());
    build(coords, q4_form(a, b) - &(&x(6) * &x(6)) * c)
}

/// Veronese surfaces on spheres, with rational coordinates.
///
/// Variant 7 is `(u²+v²+2w², 2uv, 2vw, 2uw, 2w², u²−v²)` on
/// `x0² = x1² + … + x5²`. Variant 6 is
/// `(u²+v²+w², uv, vw, uw, ½(u²−v²), ½(u²+v²−2w²))` on
/// `x0² = 3x1² + 3x2² + 3x3² + 3x4² + x5²`, the irrational scalings moved
/// into the form.
pub fn construct_sphere_veronese(variant: u32) -> Result<QuadraticMap> {
    let (u, v, w) = uvw();
    let (uu, vv, ww) = (&u * &u, &v * &v, &w * &w);
    let two = Rat::from_i64(2);
    let half = Rat::new(1.into(), 2.into());
    let sq = |i: usize| &x(i) * &x(i);
    match variant {
        7 => build(
            vec![
                &uu + &vv + ww.scale(&two),
                (&u * &v).scale(&two),
                (&v * &w).scale(&two),
                (&u * &w).scale(&two),
                ww.scale(&two),
                &uu - &vv,
            ],
            sq(0) - sq(1) - sq(2) - sq(3) - sq(4) - sq(5),
        ),
        6 => {
            let three = Rat::from_i64(3);
            build(
                vec![
                    &uu + &vv + ww.clone(),
                    &u * &v,
                    &v * &w,
                    &u * &w,
                    (&uu - &vv).scale(&half),
                    (&uu + &vv - ww.scale(&two)).scale(&half),
                ],
                sq(0) - (sq(1) + sq(2) + sq(3) + sq(4)).scale(&three) - sq(5),
            )
        }
        _ => Err(Error::Invalid(format!("unknown sphere Veronese variant {variant}"))),
    }
}

/// Quadruple plane deforming to Veronese surfaces on
/// `x0x3 + x1x4 + x2x5 − x6²`:
/// `(u², v², w², t²(v²+2vw), t²(w²+2uw), t²(u²+2uv), t(uv+vw+uw))`.
pub fn construct_qp_deformation(t: &Poly) -> Result<QuadraticMap> {
    let (u, v, w) = uvw();
    let t2 = t * t;
    let two = Rat::from_i64(2);
    let coords = vec![
        &u * &u,
        &v * &v,
        &w * &w,
        &t2 * &(&v * &v + (&v * &w).scale(&two)),
        &t2 * &(&w * &w + (&u * &w).scale(&two)),
        &t2 * &(&u * &u + (&u * &v).scale(&two)),
        t * &(&u * &v + &v * &w + &u * &w),
    ];
    build(coords, &x(0) * &x(3) + &x(1) * &x(4) + &x(2) * &x(5) - &x(6) * &x(6))
}

/// Binary quadrics `(q0, q3)` with `q6² = q0·q1 + q3·(u² + av²)`.
pub fn pv_bezout(a: &Rat, q1: &Poly, q6: &Poly) -> Result<(Poly, Poly)> {
    let (u, v, _) = uvw();
    let f = &u * &u + (&v * &v).scale(a);
    for p in [q1, q6] {
        check_degree(p, 2)?;
        if p.degree_in(W) > 0 || !p.used_vars().iter().all(|x| x == U || x == V) {
            return Err(Error::Invalid(format!("{p} must be a binary quadric in u, v with rational coefficients")));
        }
    }
    let binary = [[2u32, 0, 0], [1, 1, 0], [0, 2, 0]];
    let quartic: Vec<[u32; 3]> = (0..=4).map(|i| [4 - i, i, 0]).collect();
    let target = q6 * q6;
    let names: Vec<String> = UVW.iter().map(|v| v.to_string()).collect();
    let mono = |e: &[u32; 3]| Poly::from_terms(&names, [(e.to_vec(), Rat::one())]);
    let cols: Vec<Poly> = binary
        .iter()
        .map(|e| q1 * &mono(e))
        .chain(binary.iter().map(|e| &f * &mono(e)))
        .collect();
    let m = Matrix::from_fn(5, 6, |r, c| cols[c].coefficient_of(&UVW, &quartic[r]).as_constant().expect("numeric"));
    // q1 and u^2 + a v^2 generate all binary quartics iff they have no common root
    if m.rank() < 5 {
        return Err(Error::NotCoprime);
    }
    let rhs: Vec<Rat> = quartic
        .iter()
        .map(|e| target.coefficient_of(&UVW, e).as_constant().expect("numeric"))
        .collect();
    let sol = m.solve(&rhs).ok_or(Error::NotCoprime)?;
    let q0 = (0..3).fold(Poly::zero(), |acc, i| acc + mono(&binary[i]).scale(&sol[i]));
    let q3 = (0..3).fold(Poly::zero(), |acc, i| acc + mono(&binary[i]).scale(&sol[i + 3]));
    debug_assert_eq!(&(&q0 * q1) + &(&q3 * &f), target);
    Ok((q0, q3))
}

/// Projected Veronese surfaces deforming to Veronese surfaces on
/// `x0x1 + x2x3 − x4² − a·x5² − x6²`:
/// `(t²q0, q1, u² + av², w² + t²q3, uw, vw, t·q6)`.
pub fn construct_pv_deformation(a: &Rat, q1: &Poly, q6: &Poly, t: &Poly) -> Result<QuadraticMap> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (q0, q3) = pv_bezout(a, q1, q6)?;
    let (u, v, w) = uvw();
    let t2 = t * t;
    let coords = vec![
        &t2 * &q0,
        q1.clone(),
        &u * &u + (&v * &v).scale(a),
        &w * &w + &t2 * &q3,
        &u * &w,
        &v * &w,
        t * q6,
    ];
    build(
        coords,
        &x(0) * &x(1) + &x(2) * &x(3) - &x(4) * &x(4) - (&x(5) * &x(5)).scale(a) - &x(6) * &x(6),
    )
}

/// Expected dimension `6n − 4` of the space of quadratic maps `P² → Qⁿ`.
pub fn expected_dimension(n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::Precondition(format!("n = {n} < 1")));
    }
    Ok(6 * n - 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly;

    fn p(s: &str) -> Poly {
        poly(s).unwrap()
    }

    fn map(parts: &[&str]) -> QuadraticMap {
        QuadraticMap::new(parts.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn verified(m: &QuadraticMap) -> bool {
        verify_on_quadric(m.target().unwrap(), m).unwrap()
    }

    #[test]
    fn veronese_projections() {
        let c = map(&["u^2", "v^2", "w^2", "u*v", "v*w"]).classify();
        assert_eq!((c.label, c.span_dim, c.center_rank), (MapLabel::ProjectedVeronese, 5, Some(2)));
        let c = map(&["u^2", "v^2", "u*v", "v*w", "u*w"]).classify();
        assert_eq!((c.label, c.center_rank), (MapLabel::CubicScroll, Some(1)));
        let c = map(&["u^2 - w^2", "v^2 - w^2", "u*v", "v*w", "u*w"]).classify();
        assert_eq!((c.label, c.center_rank), (MapLabel::SmoothProjectionV1, Some(3)));
        let one = Rat::one();
        assert_eq!(c.center.unwrap(), vec![one.clone(), one.clone(), one, Rat::zero(), Rat::zero(), Rat::zero()]);
    }

    #[test]
    fn low_span_labels() {
        assert_eq!(map(&["u^2", "2*u^2"]).classify().label, MapLabel::Point);
        assert_eq!(map(&["u^2", "v^2", "0"]).classify().label, MapLabel::LineImage);
        assert_eq!(map(&["u^2", "v^2", "u*v"]).classify().label, MapLabel::ConicImage);
        assert_eq!(map(&["u^2", "v^2", "w^2"]).classify().label, MapLabel::QuadruplePlane);
        let c = map(&["u*v", "u^2", "v^2", "w^2"]).classify();
        assert_eq!((c.label, c.kernel_rank), (MapLabel::QuadricConeImage, Some(3)));
        let c = map(&["u^2", "v^2", "w^2", "u*v + v*w"]).classify();
        assert_eq!((c.label, c.kernel_dim), (MapLabel::K4Other, Some(0)));
    }

    #[test]
    fn symbolic_families_verify() {
        let (a, b, c) = (p("a"), p("b"), p("c"));
        assert!(verified(&construct_veronese_q4(&a, &b).unwrap()));
        assert!(verified(&construct_veronese_q5(&a, &b, &c).unwrap()));
        assert!(verified(&construct_projected_veronese(&a, &p("k0*u^2 + k1*u*v + k2*w^2")).unwrap()));
        assert!(verified(&construct_quadruple_plane(&p("u^3 + v^3 + w^3 - 3*u*v*w")).unwrap()));
        assert!(verified(&construct_conic_map(&p("a*u + v"), &p("b*w"), &p("c")).unwrap()));
        let l = [p("u"), p("v"), p("w"), p("0")];
        assert!(verified(&construct_surface_map([&l[0], &l[1], &l[2], &l[3]], &a).unwrap()));
        assert!(verified(&construct_sphere_veronese(6).unwrap()));
        assert!(verified(&construct_sphere_veronese(7).unwrap()));
        assert!(verified(&construct_qp_deformation(&p("t")).unwrap()));
    }

    #[test]
    fn unprojection_of_the_binary_form() {
        let q = QuadraticForm::from_poly(&p("x0^2 - a*x1^2 - x2*x3"), None).unwrap();
        let pt = [p("0"), p("0"), p("1"), p("0")];
        let l = [p("u"), p("v"), p("0"), p("w")];
        let m = construct_unprojection(&q, &pt, &l).unwrap();
        assert_eq!(m.coords(), &[p("u*w"), p("v*w"), p("u^2 - a*v^2"), p("w^2")]);
        assert!(verified(&m));
        let flat = [p("u"), p("u"), p("0"), p("v")];
        assert_eq!(construct_unprojection(&q, &pt, &flat).unwrap_err(), Error::DegenerateLinearMap);
        let off = [p("1"), p("0"), p("0"), p("0")];
        assert_eq!(construct_unprojection(&q, &off, &l).unwrap_err(), Error::NotOnQuadric);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(construct_conic_map(&p("u^2"), &p("v"), &p("1")).unwrap_err(), Error::NotLinear("u^2".into()));
        assert_eq!(construct_conic_map(&p("u"), &p("v"), &p("0")).unwrap_err(), Error::ZeroArgument);
        assert!(matches!(construct_quadruple_plane(&p("u^2")), Err(Error::WrongDegree { expected: 3, got: 2 })));
        assert_eq!(construct_veronese_q4(&p("0"), &p("1")).unwrap_err(), Error::ZeroArgument);
        assert!(construct_sphere_veronese(5).is_err());
        assert!(expected_dimension(0).is_err());
    }

    #[test]
    fn conic_map_examples() {
        let m = construct_conic_map(&p("u"), &p("v"), &p("1")).unwrap();
        assert_eq!(m.coords(), &[p("u*v"), p("u^2"), p("v^2")]);
        assert_eq!(m.classify().label, MapLabel::ConicImage);
        let m = construct_conic_map(&p("u"), &p("u"), &p("3")).unwrap();
        assert_eq!(m.span_dimension(), 1);
        assert_eq!(construct_conic_map(&p("u + 2*w"), &p("v - w"), &p("5")).unwrap().span_dimension(), 3);
    }

    #[test]
    fn deformations() {
        let qp = construct_qp_deformation(&p("t")).unwrap();
        let at = |m: &QuadraticMap, t: i64| m.specialize(&[("t", Rat::from_i64(t))]).unwrap().classify().label;
        assert_eq!(at(&qp, 0), MapLabel::QuadruplePlane);
        assert_eq!(at(&qp, 1), MapLabel::Veronese);
        assert_eq!(qp.classify().label, MapLabel::Veronese);

        let pv = construct_pv_deformation(&Rat::one(), &p("u*v"), &p("u^2 - 2*v^2"), &p("t")).unwrap();
        assert!(verified(&pv));
        assert_eq!(at(&pv, 0), MapLabel::ProjectedVeronese);
        assert_eq!(at(&pv, 2), MapLabel::Veronese);
        assert_eq!(
            construct_pv_deformation(&Rat::one(), &p("u^2 + v^2"), &p("u*v"), &p("t")).unwrap_err(),
            Error::NotCoprime
        );
        // q6 must be binary: w^4 is not in (q1, u^2 + a v^2)
        assert!(construct_pv_deformation(&Rat::one(), &p("u*v"), &p("w^2"), &p("t")).unwrap_err().is_validation());
    }

    #[test]
    fn printed_quadruple_plane_family_is_off_the_quadric() {
        let printed = map(&["u^2", "v^2", "w^2", "(t*v+t*w)^2", "(t*u+t*w)^2", "(t*u+t*v)^2", "t*u*v+t*u*w+t*v*w"]);
        let q = QuadraticForm::parse("x0*x3 + x1*x4 + x2*x5 - x6^2", None).unwrap();
        let defect = q.eval(printed.coords());
        assert_eq!(defect, p("t^2*(u^2*v^2 + v^2*w^2 + u^2*w^2)"));
    }

    #[test]
    fn quaternionic_identity() {
        let lhs = p("(u^2+v^2+(a+b)*w^2)^2/4 - (u^2-v^2+(a-b)*w^2)^2/4");
        let rhs = p("(u*v)^2 + a*(v*w)^2 + b*(u*w)^2 + a*b*(w^2)^2");
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbolic_classification_records_the_seed() {
        let c = construct_veronese_q4(&p("a"), &p("b")).unwrap().classify_seeded(7);
        assert_eq!(c.label, MapLabel::Veronese);
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.specializations.len(), 3);
    }

    #[test]
    fn expected_dimensions() {
        assert_eq!(expected_dimension(4).unwrap(), 20);
        assert_eq!(expected_dimension(1).unwrap(), 2);
        assert_eq!(expected_dimension(5).unwrap(), 26);
    }
}
