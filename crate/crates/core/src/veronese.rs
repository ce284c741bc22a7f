//! The Veronese surface as the rank-one locus of symmetric `3×3` matrices,
//! and the explicit identities built on that model.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gcd::{gcd, integer_primitive};
use crate::matrix::Matrix;
use crate::planemaps::{construct_veronese_q4, verify_on_quadric, QuadraticMap};
use crate::qform::QuadraticForm;
use crate::scalar::Ring;
use crate::{Poly, Rat};

/// Coordinates of `P⁵` in the order matching `u², v², w², uv, vw, uw`.
pub const P5_COORDS: [&str; 6] = ["x00", "x11", "x22", "x01", "x12", "x02"];

fn p5_names() -> Vec<String> {
    P5_COORDS.iter().map(|s| s.to_string()).collect()
}

/// A symmetric matrix `(x_ij)` identified with a point of `P⁵`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix3(Matrix<Poly>);

impl SymMatrix3 {
    /// From `(x00, x11, x22, x01, x12, x02)`.
    pub fn from_p5(c: &[Poly]) -> Result<Self> {
        if c.len() != 6 {
            return Err(Error::DimensionMismatch { expected: 6, got: c.len() });
        }
        Ok(SymMatrix3(Matrix::from_rows(vec![
            vec![c[0].clone(), c[3].clone(), c[5].clone()],
            vec![c[3].clone(), c[1].clone(), c[4].clone()],
            vec![c[5].clone(), c[4].clone(), c[2].clone()],
        ])))
    }

    pub fn from_rat(c: &[Rat]) -> Result<Self> {
        let polys: Vec<Poly> = c.iter().map(|x| Poly::constant(x.clone())).collect();
        Self::from_p5(&polys)
    }

    /// The matrix of the coordinate functions `x_ij`.
    pub fn generic() -> Self {
        let c: Vec<Poly> = P5_COORDS.iter().map(|n| Poly::var(n)).collect();
        Self::from_p5(&c).expect("six entries")
    }

    /// `(u_i u_j)`, the standard parametrization of `V`.
    pub fn veronese() -> Self {
        let (u, v, w) = (Poly::var("u"), Poly::var("v"), Poly::var("w"));
        Self::from_p5(&[&u * &u, &v * &v, &w * &w, &u * &v, &v * &w, &u * &w]).expect("six entries")
    }

    pub fn from_matrix(m: Matrix<Poly>) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 || !m.is_symmetric() {
            return Err(Error::Invalid("expected a symmetric 3x3 matrix".into()));
        }
        Ok(SymMatrix3(m))
    }

    pub fn matrix(&self) -> &Matrix<Poly> {
        &self.0
    }

    pub fn to_p5(&self) -> Vec<Poly> {
        let m = &self.0;
        vec![
            m[(0, 0)].clone(),
            m[(1, 1)].clone(),
            m[(2, 2)].clone(),
            m[(0, 1)].clone(),
            m[(1, 2)].clone(),
            m[(0, 2)].clone(),
        ]
    }

    pub fn det(&self) -> Poly {
        self.0.det()
    }

    /// The adjugate `y_ij = (−1)^{i+j} M_ji`; quadratic in the entries.
    pub fn sigma(&self) -> SymMatrix3 {
        SymMatrix3(self.0.adjugate())
    }

    /// Substitutes `x_ij ↦ e_ij` in a polynomial on `P⁵`.
    pub fn pull_back(&self, f: &Poly) -> Poly {
        let subs: Vec<(&str, Poly)> = P5_COORDS.iter().copied().zip(self.to_p5()).collect();
        f.substitute(&subs)
    }
}

/// Rank of a point of `P⁵` as a symmetric matrix: 1 on `V`, 2 on the
/// secant variety `det M = 0` off `V`, 3 elsewhere.
pub fn veronese_rank_stratum(p: &[Rat]) -> Result<usize> {
    if p.len() != 6 {
        return Err(Error::DimensionMismatch { expected: 6, got: p.len() });
    }
    if p.iter().all(Zero::is_zero) {
        return Err(Error::AllZero);
    }
    Ok(crate::planemaps::center_matrix(p).rank())
}

/// `a(x11x22 − x12²) + b(x00x22 − x02²) + c(x00x11 − x01²)`, a quadric
/// through `V`.
pub fn quadric_from_conic(a: &Poly, b: &Poly, c: &Poly) -> Result<QuadraticForm> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::AllZero);
    }
    let x = |n: &str| Poly::var(n);
    let f = &(&x("x11") * &x("x22") - &x("x12") * &x("x12")) * a
        + &(&x("x00") * &x("x22") - &x("x02") * &x("x02")) * b
        + &(&x("x00") * &x("x11") - &x("x01") * &x("x01")) * c;
    QuadraticForm::from_poly(&f, Some(&p5_names()))
}

/// `D^deg · p(n_1/D, …)`: substitution of fractions with a common
/// denominator, cleared.
fn substitute_fractions(p: &Poly, vars: &[&str], nums: &[Poly], den: &Poly, deg: u32) -> Poly {
    let mut out = Poly::zero();
    for (e, c) in p.coefficients_in(vars) {
        let k: u32 = e.iter().sum();
        let mut term = c * den.pow(deg - k);
        for (n, &ei) in nums.iter().zip(&e) {
            term = &term * &n.pow(ei);
        }
        out = out + term;
    }
    out
}

/// `lead^J · NF(p)` modulo `lead·x² + tail`, with `J` just large enough
/// to keep everything polynomial. Zero iff `p` lies in the ideal over the
/// field of fractions of the coefficients.
fn reduce_square(p: &Poly, x: &str, lead: &Poly, tail: &Poly) -> Poly {
    let top = p.degree_in(x) / 2;
    let xv = Poly::var(x);
    let minus_tail = -tail.clone();
    let mut out = Poly::zero();
    for (e, c) in p.coefficients_in(&[x]) {
        let (half, odd) = (e[0] / 2, e[0] % 2);
        out = out + &(&(&c * &lead.pow(top - half)) * &minus_tail.pow(half)) * &xv.pow(odd);
    }
    out
}

/// The birational map `C × C → Q` for the conic `C = (ax0² + bx1² + cx2²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicProduct {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    /// `(x1y2 − x2y1, −x0y2 + x2y0, x0y1 − x1y0, ax0y0 + bx1y1 + cx2y2)`.
    pub psi: Vec<Poly>,
    /// `bc·z0² + ac·z1² + ab·z2² + z3²`.
    pub target: QuadraticForm,
    /// Cofactors with `q(ψ) = λ·q_C(y) + μ·q_C(x)`.
    pub lambda: Poly,
    pub mu: Poly,
}

fn var(n: &str) -> Poly {
    Poly::var(n)
}

fn conic_in(prefix: &str, a: &Poly, b: &Poly, c: &Poly) -> Poly {
    let v = |i: usize| var(&format!("{prefix}{i}"));
    &(&v(0) * &v(0)) * a + &(&v(1) * &v(1)) * b + &(&v(2) * &v(2)) * c
}

impl ConicProduct {
    pub fn new(a: &Poly, b: &Poly, c: &Poly) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let (x0, x1, x2) = (var("x0"), var("x1"), var("x2"));
        let (y0, y1, y2) = (var("y0"), var("y1"), var("y2"));
        let psi = vec![
            &x1 * &y2 - &x2 * &y1,
            &x2 * &y0 - &x0 * &y2,
            &x0 * &y1 - &x1 * &y0,
            &(&x0 * &y0) * a + &(&x1 * &y1) * b + &(&x2 * &y2) * c,
        ];
        let z = |i: usize| var(&format!("z{i}"));
        let tf = &(&z(0) * &z(0)) * &(b * c) + &(&z(1) * &z(1)) * &(a * c) + &(&z(2) * &z(2)) * &(a * b) + &z(3) * &z(3);
        let names: Vec<String> = (0..4).map(|i| format!("z{i}")).collect();
        let target = QuadraticForm::from_poly(&tf, Some(&names))?;
        let pulled = target.eval(&psi);
        let (qx, qy) = (conic_in("x", a, b, c), conic_in("y", a, b, c));
        let (lambda, mu) = match pulled.exact_div(&qy) {
            Some(l) => (l, Poly::zero()),
            None => {
                let (quots, rem) = pulled.div_rem_many(&[qy.clone(), qx.clone()]);
                if !rem.is_zero() {
                    return Err(Error::Invalid(format!("pullback not in the conic ideal: {rem}")));
                }
                (quots[0].clone(), quots[1].clone())
            }
        };
        Ok(ConicProduct {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            psi,
            target,
            lambda,
            mu,
        })
    }

    /// `q_C(x)` and `q_C(y)`.
    pub fn conics(&self) -> (Poly, Poly) {
        (conic_in("x", &self.a, &self.b, &self.c), conic_in("y", &self.a, &self.b, &self.c))
    }

    /// `q(ψ) − λ·q_C(y) − μ·q_C(x)`, zero when the identity holds.
    pub fn pullback_defect(&self) -> Poly {
        let (qx, qy) = self.conics();
        self.target.eval(&self.psi) - &self.lambda * &qy - &self.mu * &qx
    }

    /// `x`-branch of the inverse: `(z1z3 − bz0z2, −z0z3 − az1z2, bz0² + az1²)`.
    pub fn inverse_x(&self) -> Vec<Poly> {
        let z = |i: usize| var(&format!("z{i}"));
        let (a, b) = (&self.a, &self.b);
        vec![
            &z(1) * &z(3) - &(&z(0) * &z(2)) * b,
            -(&z(0) * &z(3)) - &(&z(1) * &z(2)) * a,
            &(&z(0) * &z(0)) * b + &(&z(1) * &z(1)) * a,
        ]
    }

    /// `y`-branch of the inverse: `(−z1z3 − bz0z2, z0z3 − az1z2, bz0² + az1²)`.
    pub fn inverse_y(&self) -> Vec<Poly> {
        let z = |i: usize| var(&format!("z{i}"));
        let (a, b) = (&self.a, &self.b);
        vec![
            -(&z(1) * &z(3)) - &(&z(0) * &z(2)) * b,
            &z(0) * &z(3) - &(&z(1) * &z(2)) * a,
            &(&z(0) * &z(0)) * b + &(&z(1) * &z(1)) * a,
        ]
    }

    fn reduce(&self, p: &Poly) -> Poly {
        let r = reduce_square(
            p,
            "x2",
            &self.c,
            &(&(&var("x0") * &var("x0")) * &self.a + &(&var("x1") * &var("x1")) * &self.b),
        );
        reduce_square(
            &r,
            "y2",
            &self.c,
            &(&(&var("y0") * &var("y0")) * &self.a + &(&var("y1") * &var("y1")) * &self.b),
        )
    }

    /// Whether `branch ∘ ψ` is proportional to the `x` (or `y`) point modulo
    /// the two conic equations, and not identically zero there.
    pub fn inverse_recovers(&self, branch: &[Poly], prefix: &str) -> bool {
        let subs: Vec<(String, Poly)> = (0..4).map(|i| (format!("z{i}"), self.psi[i].clone())).collect();
        let subs: Vec<(&str, Poly)> = subs.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        let image: Vec<Poly> = branch.iter().map(|f| f.substitute(&subs)).collect();
        let pt: Vec<Poly> = (0..3).map(|i| var(&format!("{prefix}{i}"))).collect();
        let minors_vanish =
            (0..3).all(|i| (i + 1..3).all(|j| self.reduce(&(&image[i] * &pt[j] - &image[j] * &pt[i])).is_zero()));
        minors_vanish && image.iter().any(|f| !self.reduce(f).is_zero())
    }
}

/// One named verification.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// The nonzero residue when a check fails.
    pub witness: Option<String>,
}

fn check_zero(name: &str, p: &Poly) -> Check {
    Check {
        name: name.to_string(),
        passed: p.is_zero(),
        witness: (!p.is_zero()).then(|| p.to_string()),
    }
}

fn neg_off_diagonal(m: &SymMatrix3) -> SymMatrix3 {
    let mut out = m.0.clone();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                out[(i, j)] = -out[(i, j)].clone();
            }
        }
    }
    SymMatrix3(out)
}

/// The symmetric `2×2` minors cutting out `V ∪ V'`, and their sum.
pub fn symmetric_minor_equations() -> Vec<(&'static str, Poly)> {
    let x = |n: &str| Poly::var(n);
    let e1 = &x("x01") * &x("x01") - &x("x00") * &x("x11");
    let e2 = &x("x02") * &x("x02") - &x("x00") * &x("x22");
    let e3 = &x("x12") * &x("x12") - &x("x11") * &x("x22");
    let sum = &(&e1 + &e2) + &e3;
    vec![("x01^2-x00*x11", e1), ("x02^2-x00*x22", e2), ("x12^2-x11*x22", e3), ("Q4", sum)]
}

/// Three off-diagonal cofactors of `M`, vanishing on four coordinate planes.
pub fn nonsymmetric_minor_equations() -> Vec<(&'static str, Poly)> {
    let x = |n: &str| Poly::var(n);
    vec![
        ("x01*x12-x02*x11", &x("x01") * &x("x12") - &x("x02") * &x("x11")),
        ("x01*x22-x02*x12", &x("x01") * &x("x22") - &x("x02") * &x("x12")),
        ("x00*x12-x01*x02", &x("x00") * &x("x12") - &x("x01") * &x("x02")),
    ]
}

/// The four planes as parametrized symmetric matrices (free entries are
/// the variables `p0, p1, p2`).
pub fn linkage_planes() -> Vec<(&'static str, SymMatrix3)> {
    let p = |i: usize| Poly::var(&format!("p{i}"));
    let z = Poly::zero;
    let mk = |c: [Poly; 6]| SymMatrix3::from_p5(&c).expect("six entries");
    vec![
        ("diagonal", mk([p(0), p(1), p(2), z(), z(), z()])),
        ("block01", mk([p(0), p(1), z(), p(2), z(), z()])),
        ("block12", mk([z(), p(0), p(1), z(), p(2), z()])),
        ("block02", mk([p(0), z(), p(1), z(), z(), p(2)])),
    ]
}

/// Verifies the linkage identities: `V` and `V'` satisfy the symmetric
/// minors and `Q⁴`; the four planes satisfy the non-symmetric minors.
pub fn linkage_check() -> Vec<Check> {
    let v = SymMatrix3::veronese();
    let v_prime = neg_off_diagonal(&v);
    let mut out = Vec::new();
    for (surface, m) in [("V", &v), ("V'", &v_prime)] {
        for (eq, f) in symmetric_minor_equations() {
            out.push(check_zero(&format!("{surface}: {eq}"), &m.pull_back(&f)));
        }
    }
    for (plane, m) in linkage_planes() {
        for (eq, f) in nonsymmetric_minor_equations() {
            out.push(check_zero(&format!("{plane}: {eq}"), &m.pull_back(&f)));
        }
    }
    out
}

/// `b_q(Φ(p), Φ(u, v, w))`, a conic singular at `p`.
pub fn tangent_pullback_conic(q: &QuadraticForm, phi: &QuadraticMap, p: &[Rat]) -> Result<Poly> {
    if p.len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: p.len() });
    }
    if !verify_on_quadric(q, phi)? {
        return Err(Error::MapNotOnQuadric);
    }
    let at = phi.at(p);
    if at.iter().all(Poly::is_zero) {
        return Err(Error::BasePoint);
    }
    Ok(q.polar(&at, phi.coords()))
}

/// Gram matrix of a ternary form in `u, v, w`.
pub fn conic_gram(conic: &Poly) -> Result<Matrix<Poly>> {
    let uvw: Vec<String> = ["u", "v", "w"].iter().map(|s| s.to_string()).collect();
    if conic.is_zero() {
        return Ok(Matrix::zeros(3, 3));
    }
    Ok(QuadraticForm::from_poly(conic, Some(&uvw))?.gram().clone())
}

/// Rank of a numeric ternary conic.
pub fn conic_rank(conic: &Poly) -> Result<usize> {
    let g = conic_gram(conic)?;
    if !g.to_rows().iter().flatten().all(Poly::is_constant) {
        return Err(Error::NotNumeric);
    }
    Ok(g.map(|e| e.as_constant().expect("constant")).rank())
}

/// The curve of points `p ∈ P²` where the tangent pullback conic of the
/// Veronese surface on `Q⁴_{a,b}` is a double line, as a primitive integral
/// quadric in `u, v, w`.
///
/// It is the gcd of the `2×2` minors of the conic's Gram matrix at a
/// symbolic point `(u0 : v0 : w0)`.
pub fn double_line_locus(a: &Rat, b: &Rat) -> Result<Poly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let phi = construct_veronese_q4(&Poly::constant(a.clone()), &Poly::constant(b.clone()))?;
    let q = phi.target().expect("constructor sets the target").clone();
    let subs = [("u", var("u0")), ("v", var("v0")), ("w", var("w0"))];
    let at: Vec<Poly> = phi.coords().iter().map(|c| c.substitute(&subs)).collect();
    let conic = q.polar(&at, phi.coords());
    let g = conic_gram(&conic)?;
    let mut minors = Vec::new();
    for r in [[0, 1], [0, 2], [1, 2]] {
        for c in [[0, 1], [0, 2], [1, 2]] {
            let m = g.minor(&r, &c);
            if !m.is_zero() {
                minors.push(m);
            }
        }
    }
    let common = minors.iter().fold(Poly::zero(), |acc, m| gcd(&acc, m));
    if common.total_degree() != 2 {
        return Err(Error::ExtractionFailed(minors.iter().map(|m| m.to_string()).collect()));
    }
    let uvw: Vec<String> = ["u", "v", "w"].iter().map(|s| s.to_string()).collect();
    let locus = common.rename(&[("u0", "u"), ("v0", "v"), ("w0", "w")]).with_vars(&uvw);
    Ok(integer_primitive(&locus))
}

/// A rational function as a numerator/denominator pair.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction {
    pub num: Poly,
    pub den: Poly,
}

/// Stereographic projection of `x1² + … + xn² + z² = 1` from `(0, …, 0, −1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stereographic {
    pub n: usize,
    /// `x_i / (1 + z)`, in the variables `x1, …, xn, z`.
    pub forward: Vec<Fraction>,
    /// `2x_i / (1 + Σ)` then `(1 − Σ) / (1 + Σ)`, in `x1, …, xn`.
    pub inverse: Vec<Fraction>,
}

impl Stereographic {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("stereographic projection needs n >= 1".into()));
        }
        let xs: Vec<Poly> = (1..=n).map(|i| var(&format!("x{i}"))).collect();
        let one = Poly::one();
        let den = &one + &var("z");
        let forward = xs.iter().map(|x| Fraction { num: x.clone(), den: den.clone() }).collect();
        let sigma = xs.iter().fold(Poly::zero(), |acc, x| acc + x * x);
        let inv_den = &one + &sigma;
        let mut inverse: Vec<Fraction> = xs
            .iter()
            .map(|x| Fraction {
                num: x.scale(&Rat::from_i64(2)),
                den: inv_den.clone(),
            })
            .collect();
        inverse.push(Fraction {
            num: &one - &sigma,
            den: inv_den,
        });
        Ok(Stereographic { n, forward, inverse })
    }

    fn sphere_vars(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        v.push("z".into());
        v
    }

    /// `x1² + … + xn² + z² − 1`.
    pub fn sphere(&self) -> Poly {
        self.sphere_vars().iter().fold(-Poly::one(), |acc, v| acc + &var(v) * &var(v))
    }

    fn pull(&self, p: &Poly, deg: u32) -> Poly {
        let names = self.sphere_vars();
        let vars: Vec<&str> = names.iter().map(String::as_str).collect();
        let nums: Vec<Poly> = self.inverse.iter().map(|f| f.num.clone()).collect();
        substitute_fractions(p, &vars, &nums, &self.inverse[0].den, deg)
    }

    /// Numerator of the sphere equation at `π⁻¹`; zero on success.
    pub fn sphere_numerator(&self) -> Poly {
        self.pull(&self.sphere(), 2)
    }

    /// Numerators of `π(π⁻¹(x)) − x`; all zero on success.
    pub fn round_trip_numerators(&self) -> Vec<Poly> {
        self.forward
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let num = self.pull(&f.num, 1);
                let den = self.pull(&f.den, 1);
                num - &den * &var(&format!("x{}", i + 1))
            })
            .collect()
    }

    /// Sphere identity and round trip, as named checks.
    pub fn checks(&self) -> Vec<Check> {
        let mut out = vec![check_zero("sphere", &self.sphere_numerator())];
        for (i, r) in self.round_trip_numerators().iter().enumerate() {
            out.push(check_zero(&format!("round_trip_x{}", i + 1), r));
        }
        out
    }
}

/// `σ(σ(M)) = det(M)·M`, entry by entry.
pub fn sigma_involution_check(m: &SymMatrix3) -> Check {
    let lhs = m.sigma().sigma();
    let det = m.det();
    let defect: Poly = lhs
        .to_p5()
        .iter()
        .zip(m.to_p5())
        .fold(Poly::zero(), |acc, (l, e)| {
            let d = l - &(&det * &e);
            if acc.is_zero() { d } else { acc }
        });
    check_zero("sigma_sigma_equals_det_times_m", &defect)
}

impl ConicProduct {
    /// The pullback identity and both inverse branches.
    pub fn checks(&self) -> Vec<Check> {
        let branch = |name: &str, ok: bool| Check {
            name: name.to_string(),
            passed: ok,
            witness: None,
        };
        vec![
            check_zero("pullback", &self.pullback_defect()),
            branch("inverse_x", self.inverse_recovers(&self.inverse_x(), "x")),
            branch("inverse_y", self.inverse_recovers(&self.inverse_y(), "y")),
        ]
    }
}

/// Whether [`double_line_locus`] is proportional to `b·u² + a·v² + ab·w²`.
/// The witness is the computed locus.
pub fn double_line_locus_check(a: &Rat, b: &Rat) -> Result<Check> {
    let locus = double_line_locus(a, b)?;
    let uvw: Vec<String> = ["u", "v", "w"].iter().map(|s| s.to_string()).collect();
    let sq = |n: &str| &var(n) * &var(n);
    let expected = (sq("u").scale(b) + sq("v").scale(a) + sq("w").scale(&(a * b))).with_vars(&uvw);
    let cross = &locus.scale(&expected.leading_coefficient()) - &expected.scale(&locus.leading_coefficient());
    Ok(Check {
        name: "double_line_locus".into(),
        passed: cross.is_zero(),
        witness: Some(locus.to_string()),
    })
}

/// The tangent pullback conic of the Veronese surface on `Q⁴_{a,b}` at `p`,
/// and its rank.
pub fn tangent_conic_rank(a: &Rat, b: &Rat, p: &[Rat]) -> Result<(Poly, usize)> {
    let phi = construct_veronese_q4(&Poly::constant(a.clone()), &Poly::constant(b.clone()))?;
    let q = phi.target().expect("constructor sets the target").clone();
    let conic = tangent_pullback_conic(&q, &phi, p)?;
    let rank = conic_rank(&conic)?;
    Ok((conic, rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly;

    fn p(s: &str) -> Poly {
        poly(s).unwrap()
    }

    fn r(n: i64) -> Rat {
        Rat::from_i64(n)
    }

    #[test]
    fn sigma_examples() {
        let id = SymMatrix3::from_rat(&[r(1), r(1), r(1), r(0), r(0), r(0)]).unwrap();
        assert_eq!(id.sigma(), id);
        let v = SymMatrix3::veronese();
        assert!(v.sigma().matrix().is_zero());
        let m = SymMatrix3::generic();
        let twice = m.sigma().sigma();
        assert_eq!(twice.matrix(), &m.matrix().map(|e| e * &m.det()));
    }

    #[test]
    fn rank_strata() {
        assert_eq!(veronese_rank_stratum(&vec![r(1); 6]).unwrap(), 1);
        assert_eq!(veronese_rank_stratum(&[r(0), r(0), r(0), r(1), r(0), r(0)]).unwrap(), 2);
        assert_eq!(veronese_rank_stratum(&[r(1), r(1), r(1), r(0), r(0), r(0)]).unwrap(), 3);
        assert_eq!(veronese_rank_stratum(&vec![r(0); 6]).unwrap_err(), Error::AllZero);
    }

    #[test]
    fn quadrics_through_v() {
        let (a, b, c) = (p("a"), p("b"), p("c"));
        let q = quadric_from_conic(&a, &b, &c).unwrap();
        assert!(SymMatrix3::veronese().pull_back(&q.to_poly()).is_zero());
        let q1 = quadric_from_conic(&a, &b, &Poly::one()).unwrap();
        let rearranged = p("(x00 + a*x22)*(x11 + b*x22) - (x01^2 + a*x12^2 + b*x02^2 + a*b*x22^2)");
        assert_eq!(q1.to_poly(), rearranged);
        assert_eq!(quadric_from_conic(&Poly::zero(), &Poly::zero(), &Poly::zero()).unwrap_err(), Error::AllZero);
    }

    #[test]
    fn conic_product_identities() {
        let cp = ConicProduct::new(&p("a"), &p("b"), &p("c")).unwrap();
        assert!(cp.pullback_defect().is_zero());
        assert!(cp.inverse_recovers(&cp.inverse_x(), "x"));
        assert!(cp.inverse_recovers(&cp.inverse_y(), "y"));
        // the printed y-branch has the sign of z1 z3 flipped
        let z = |i: usize| Poly::var(&format!("z{i}"));
        let y = cp.inverse_y();
        let printed = vec![&z(1) * &z(3) + &(&z(0) * &z(2)) * &p("b"), y[1].clone(), y[2].clone()];
        assert!(!cp.inverse_recovers(&printed, "y"));
        // the first three coordinates vanish on the diagonal
        let diag = [("y0", p("x0")), ("y1", p("x1")), ("y2", p("x2"))];
        assert!(cp.psi[..3].iter().all(|f| f.substitute(&diag).is_zero()));
        assert_eq!(ConicProduct::new(&p("a"), &Poly::zero(), &p("c")).unwrap_err(), Error::ZeroArgument);
    }

    #[test]
    fn linkage_all_pass() {
        let checks = linkage_check();
        assert_eq!(checks.len(), 20);
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn tangent_conics_on_the_sphere_model() {
        let phi = construct_veronese_q4(&Poly::one(), &Poly::one()).unwrap();
        let q = phi.target().unwrap().clone();
        let pt = [r(1), r(2), r(3)];
        let conic = tangent_pullback_conic(&q, &phi, &pt).unwrap();
        for v in ["u", "v", "w"] {
            let d = conic.derivative(v);
            assert!(d.eval(&[("u", pt[0].clone()), ("v", pt[1].clone()), ("w", pt[2].clone())]).is_zero());
        }
        assert_eq!(conic_rank(&conic).unwrap(), 2);
    }

    #[test]
    fn double_line_loci() {
        assert_eq!(double_line_locus(&r(-1), &r(-1)).unwrap(), p("u^2 + v^2 - w^2"));
        assert_eq!(double_line_locus(&r(1), &r(1)).unwrap(), p("u^2 + v^2 + w^2"));
        assert_eq!(double_line_locus(&r(2), &r(-3)).unwrap(), p("3*u^2 - 2*v^2 + 6*w^2"));
        // (3, 4, 5) lies on the locus for (a, b) = (-1, -1), and the conic degenerates there
        let phi = construct_veronese_q4(&p("-1"), &p("-1")).unwrap();
        let q = phi.target().unwrap().clone();
        let conic = tangent_pullback_conic(&q, &phi, &[r(3), r(4), r(5)]).unwrap();
        assert_eq!(conic_rank(&conic).unwrap(), 1);
    }

    #[test]
    fn stereographic_identities() {
        for n in 1..=4 {
            let s = Stereographic::new(n).unwrap();
            assert!(s.sphere_numerator().is_zero());
            assert!(s.round_trip_numerators().iter().all(Poly::is_zero));
        }
        let s = Stereographic::new(1).unwrap();
        assert_eq!(s.inverse[0].num, p("2*x1"));
        assert_eq!(s.inverse[1].num, p("1 - x1^2"));
        assert_eq!(s.inverse[1].den, p("1 + x1^2"));
        assert!(Stereographic::new(0).is_err());
    }
}
