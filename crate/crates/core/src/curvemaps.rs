//! Maps `P¹ → Qⁿ` given by binary forms in `s, t`.
//!
//! The basic move is the residual map: the plane curve swept by the lines
//! joining `φ(s:t)` and `ψ(s:t)` meets `Q` in `φ` and a residual curve, and
//! the residual is written down directly from the polar form.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gcd::poly_content_and_primitive;
use crate::matrix::Matrix;
use crate::qform::QuadraticForm;
use crate::scalar::Ring;
use crate::{Poly, Rat};

/// Parameter names of `P¹`.
pub const S: &str = "s";
pub const T: &str = "t";

/// A map `P¹ → Pⁿ⁺¹` by binary forms of a common degree, optionally on a
/// quadric.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveMap {
    degree: u32,
    coords: Vec<Poly>,
    target: Option<QuadraticForm>,
}

fn proportional(a: &[Poly], b: &[Poly]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()))
}

fn st_vec(p: &[Rat]) -> Vec<Poly> {
    p.iter().map(|c| Poly::constant(c.clone())).collect()
}

impl CurveMap {
    /// Checks homogeneity in `s, t` and, with a target, that `q(h) ≡ 0`.
    pub fn new(coords: Vec<Poly>, target: Option<QuadraticForm>) -> Result<Self> {
        if coords.iter().all(Poly::is_zero) {
            return Err(Error::AllZero);
        }
        let degree = coords
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.degree_in_vars(&[S, T]))
            .unwrap_or(0);
        if let Some(c) = coords.iter().find(|c| !c.is_zero() && !c.is_homogeneous_in(&[S, T], degree)) {
            return Err(Error::Invalid(format!(
                "coordinate {c} is not homogeneous of degree {degree} in s, t"
            )));
        }
        if let Some(q) = &target {
            if q.try_eval(&coords)?.is_zero() {
                return Ok(CurveMap { degree, coords, target });
            }
            return Err(Error::MapNotOnQuadric);
        }
        Ok(CurveMap { degree, coords, target })
    }

    /// Degree-0 and degree-1 maps from constant vectors: `t·a + s·b`.
    pub fn line(a: &[Rat], b: &[Rat], target: Option<QuadraticForm>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        let (s, t) = (Poly::var(S), Poly::var(T));
        let coords = a
            .iter()
            .zip(b)
            .map(|(x, y)| t.scale(x) + s.scale(y))
            .collect();
        CurveMap::new(coords, target)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn target(&self) -> Option<&QuadraticForm> {
        self.target.as_ref()
    }

    pub fn with_target(self, q: QuadraticForm) -> Result<Self> {
        CurveMap::new(self.coords, Some(q))
    }

    /// Value at `(s:t)`; entries keep any parameters.
    pub fn at(&self, s: &Rat, t: &Rat) -> Vec<Poly> {
        self.coords
            .iter()
            .map(|c| c.eval_partial(&[(S, s.clone()), (T, t.clone())]))
            .collect()
    }

    /// Numeric value at `(s:t)`; fails if a parameter survives.
    pub fn at_rat(&self, s: &Rat, t: &Rat) -> Result<Vec<Rat>> {
        self.at(s, t)
            .into_iter()
            .map(|c| c.as_constant().ok_or(Error::NotNumeric))
            .collect()
    }

    /// `φ(0) = φ(0:1)`.
    pub fn start(&self) -> Vec<Poly> {
        self.at(&Rat::zero(), &Rat::one())
    }

    /// `φ(∞) = φ(1:0)`.
    pub fn end(&self) -> Vec<Poly> {
        self.at(&Rat::one(), &Rat::zero())
    }

    /// True if `φ(s:t)` is a nonzero multiple of `p`.
    pub fn passes_through(&self, s: &Rat, t: &Rat, p: &[Rat]) -> bool {
        let v = self.at(s, t);
        v.iter().any(|c| !c.is_zero()) && proportional(&v, &st_vec(p))
    }
}

/// `R = q(ψ)·φ − 2·b_q(φ, ψ)·ψ`, with its content in `s, t` removed.
pub fn residual_map(q: &QuadraticForm, phi: &CurveMap, psi: &CurveMap) -> Result<CurveMap> {
    let n = q.dim();
    for m in [phi, psi] {
        if m.coords.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.coords.len(),
            });
        }
    }
    if !q.eval(&phi.coords).is_zero() {
        return Err(Error::MapNotOnQuadric);
    }
    if proportional(&phi.coords, &psi.coords) {
        return Err(Error::Proportional);
    }
    let qpsi = q.eval(&psi.coords);
    let b2 = q.polar(&phi.coords, &psi.coords).scale(&Rat::from_i64(2));
    let raw: Vec<Poly> = phi
        .coords
        .iter()
        .zip(&psi.coords)
        .map(|(f, g)| &qpsi * f - &b2 * g)
        .collect();
    if raw.iter().all(Poly::is_zero) {
        return Err(Error::ZeroResidual);
    }
    let (_, prim) = poly_content_and_primitive(&raw, &[S, T])?;
    CurveMap::new(prim, Some(q.clone()))
}

/// Residual of `φ` with respect to the chord `t·φ(0) + s·φ(∞)`; the degree
/// drops by at least two.
pub fn degree_reduce(q: &QuadraticForm, phi: &CurveMap) -> Result<CurveMap> {
    if phi.degree < 3 {
        return Err(Error::Precondition(format!(
            "degree_reduce needs degree >= 3, got {}",
            phi.degree
        )));
    }
    let (a, b) = (phi.start(), phi.end());
    if a.iter().all(Poly::is_zero) || b.iter().all(Poly::is_zero) || proportional(&a, &b) {
        return Err(Error::CoincidentEndpoints);
    }
    let (s, t) = (Poly::var(S), Poly::var(T));
    let chord = a.iter().zip(&b).map(|(x, y)| &t * x + &s * y).collect();
    let psi = CurveMap::new(chord, None)?;
    residual_map(q, phi, &psi)
}

/// The degree-2 map through `p0, p1, p2` on `Q`, hitting them at
/// `(s:t) = (1:0), (0:1), (1:1)`.
pub fn conic_through_three_points(q: &QuadraticForm, p: [&[Rat]; 3]) -> Result<CurveMap> {
    let n = q.dim();
    for x in p {
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        if !q.eval_rat(x)?.is_zero() {
            return Err(Error::NotOnQuadric);
        }
    }
    let cols = Matrix::from_fn(n, 3, |i, j| p[j][i].clone());
    if cols.rank() < 3 {
        return Err(Error::Collinear);
    }
    let b = |i: usize, j: usize| q.polar_rat(p[i], p[j]);
    let (b01, b02, b12) = (b(0, 1)?, b(0, 2)?, b(1, 2)?);
    if b01.is_zero() && b02.is_zero() && b12.is_zero() {
        return Err(Error::PlaneInQuadric);
    }
    // the restricted conic is 2(b01 λμ + b02 λν + b12 μν)
    if b01.is_zero() || b02.is_zero() || b12.is_zero() {
        return Err(Error::SingularConic);
    }
    // lines through (1:0:0) with direction (m:n)
    let (s, t) = (Poly::var(S), Poly::var(T));
    let m = (&s - &t).scale(&b02);
    let nn = s.scale(&-b01.clone());
    let l = m.scale(&b01) + nn.scale(&b02);
    let lambda = (&m * &nn).scale(&-b12);
    let mu = &m * &l;
    let nu = &nn * &l;
    let coords: Vec<Poly> = (0..n)
        .map(|i| lambda.scale(&p[0][i]) + mu.scale(&p[1][i]) + nu.scale(&p[2][i]))
        .collect();
    let (_, prim) = poly_content_and_primitive(&coords, &[S, T])?;
    CurveMap::new(prim, Some(q.clone()))
}

/// Output of [`sym_power_residual`].
#[derive(Clone, Debug, PartialEq)]
pub struct SymPowerResidual {
    /// `g_1(t), …, g_n(t)` of degree `≤ d − 1`.
    pub interpolant: Vec<Poly>,
    /// `f(g(t), t) / ∏(t − t_i)`.
    pub residual: Poly,
    /// `g(0)` and `g(1)`.
    pub anchors: [Vec<Rat>; 2],
}

fn lagrange_basis(nodes: &[Rat], t: &str) -> Vec<Poly> {
    let tv = Poly::var(t);
    (0..nodes.len())
        .map(|i| {
            let mut l = Poly::one();
            for (j, tj) in nodes.iter().enumerate() {
                if i != j {
                    let denom = (nodes[i].clone() - tj.clone()).recip();
                    l = &l * &(&tv - &Poly::constant(tj.clone())).scale(&denom);
                }
            }
            l
        })
        .collect()
}

/// Interpolates the curve `t ↦ (g(t), t)` through `points` on the affine
/// quadric `f(x_1, …, x_n, t) = 0` and divides out the known intersections.
///
/// Each point lists `x_1, …, x_n` followed by its `t` coordinate.
pub fn sym_power_residual(f: &Poly, xs: &[&str], t: &str, points: &[Vec<Rat>]) -> Result<SymPowerResidual> {
    let d = points.len();
    if d < 2 {
        return Err(Error::Precondition(format!("need at least 2 points, got {d}")));
    }
    let n = xs.len();
    let mut all: Vec<&str> = xs.to_vec();
    all.push(t);
    if f.used_vars().iter().any(|v| !all.contains(&v.as_str())) {
        return Err(Error::Invalid("quadric has variables outside x_1..x_n, t".into()));
    }
    if f.degree_in_vars(&all) > 2 {
        return Err(Error::Invalid("equation is not quadratic".into()));
    }
    for p in points {
        if p.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: p.len(),
            });
        }
        let vals: Vec<(&str, Rat)> = all.iter().copied().zip(p.iter().cloned()).collect();
        if !f.eval(&vals).is_zero() {
            return Err(Error::NotOnQuadric);
        }
    }
    let nodes: Vec<Rat> = points.iter().map(|p| p[n].clone()).collect();
    for i in 0..d {
        if nodes[..i].contains(&nodes[i]) {
            return Err(Error::RepeatedNodes);
        }
    }
    let basis = lagrange_basis(&nodes, t);
    let interpolant: Vec<Poly> = (0..n)
        .map(|k| {
            basis
                .iter()
                .zip(points)
                .fold(Poly::zero(), |acc, (l, p)| acc + l.scale(&p[k]))
        })
        .collect();
    let subs: Vec<(&str, Poly)> = xs.iter().copied().zip(interpolant.iter().cloned()).collect();
    let on_graph = f.substitute(&subs);
    if on_graph.is_zero() {
        return Err(Error::GraphInQuadric);
    }
    let tv = Poly::var(t);
    let nodes_poly = nodes
        .iter()
        .fold(Poly::one(), |acc, ti| &acc * &(&tv - &Poly::constant(ti.clone())));
    let residual = on_graph
        .exact_div(&nodes_poly)
        .expect("interpolant meets the quadric at every node");
    let at = |v: i64| {
        interpolant
            .iter()
            .map(|g| g.eval(&[(t, Rat::from_i64(v))]))
            .collect::<Vec<_>>()
    };
    let anchors = [at(0), at(1)];
    Ok(SymPowerResidual {
        interpolant,
        residual,
        anchors,
    })
}

/// Residual curve `C'` of a curve `C ⊂ S` of degree `d` and arithmetic genus
/// `p_a` on a quartic del Pezzo surface, cut out by a quadric through `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dp4Residual {
    pub degree: i64,
    pub genus: i64,
    /// `2d + 1 − p_a ≤ 12`: Riemann–Roch then provides a quadric through
    /// `C` not containing `S`.
    pub guaranteed: bool,
}

/// `(d, p_a) ↦ (8 − d, 4 − d + p_a)`.
pub fn dp4_residual(d: i64, p_a: i64) -> Result<Dp4Residual> {
    if !(0..=8).contains(&d) {
        return Err(Error::Precondition(format!("degree {d} outside 0..=8")));
    }
    Ok(Dp4Residual {
        degree: 8 - d,
        genus: 4 - d + p_a,
        guaranteed: 2 * d + 1 - p_a <= 12,
    })
}

/// The second point where the line through `p0 ∈ Q` with direction `v`
/// meets `Q`: `q(v)·p0 − 2·b_q(p0, v)·v`.
pub fn second_intersection(q: &QuadraticForm, p0: &[Rat], v: &[Rat]) -> Result<Vec<Rat>> {
    if !q.eval_rat(p0)?.is_zero() {
        return Err(Error::NotOnQuadric);
    }
    let qv = q.eval_rat(v)?;
    let b2 = q.polar_rat(p0, v)? * Rat::from_i64(2);
    Ok(p0
        .iter()
        .zip(v)
        .map(|(x, y)| qv.clone() * x.clone() - b2.clone() * y.clone())
        .collect())
}
