//! Property tests for the invariants of each module.

use std::collections::HashSet;

use num_traits::{One, Zero};
use proptest::prelude::*;
use quadmaps::curvemaps::{conic_through_three_points, degree_reduce, residual_map, second_intersection, sym_power_residual};
use quadmaps::planemaps::{construct_unprojection, construct_veronese_q4, verify_on_quadric};
use quadmaps::{
    hilbert_symbol, parse_poly, CurveMap, Error, Matrix, Place, Poly, QuadraticForm, Rat, Ring,
    SymMatrix3,
};

fn frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn r(n: i64) -> Rat {
    Rat::from_i64(n)
}

fn p(s: &str) -> Poly {
    parse_poly(s, None).unwrap()
}

fn rational() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rat> {
    ((-9i64..=9).prop_filter("nonzero", |n| *n != 0), 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

fn invertible3() -> impl Strategy<Value = Matrix<Rat>> {
    prop::collection::vec(-3i64..=3, 9)
        .prop_map(|v| Matrix::from_fn(3, 3, |i, j| r(v[3 * i + j])))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

fn random_poly() -> impl Strategy<Value = Poly> {
    let term = ((-40i64..=40), (1i64..=9), prop::collection::vec(0u32..=3, 5));
    prop::collection::vec(term, 1..6).prop_map(|terms| {
        let names = ["x0", "x1", "y", "a", "t"];
        terms.into_iter().fold(Poly::zero(), |acc, (n, d, exps)| {
            let mono = names
                .iter()
                .zip(&exps)
                .fold(Poly::constant(frac(n, d)), |m, (v, &e)| &m * &Poly::var(v).pow(e));
            acc + mono
        })
    })
}

fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    n != 0 && (2..=n).take_while(|k| k * k <= n).all(|k| n % (k * k) != 0)
}

fn squarefree() -> impl Strategy<Value = i64> {
    (-60i64..=60).prop_filter("squarefree", |n| is_squarefree(*n))
}

/// Whether `z² = ax² + by²` has a primitive solution modulo `p^k`. For
/// squarefree `a, b` and `k = 3` (odd `p`) or `k = 7` (`p = 2`), Hensel's
/// lemma makes this equivalent to a nontrivial `p`-adic solution.
fn locally_soluble(a: i64, b: i64, p: i64) -> bool {
    let m = if p == 2 { 128 } else { p * p * p };
    let squares: HashSet<i64> = (0..m).map(|z| z * z % m).collect();
    let unit_squares: HashSet<i64> = (0..m).filter(|z| z % p != 0).map(|z| z * z % m).collect();
    (0..m).any(|x| {
        (0..m).any(|y| {
            let v = (a * x * x + b * y * y).rem_euclid(m);
            if x % p != 0 || y % p != 0 {
                squares.contains(&v)
            } else {
                unit_squares.contains(&v)
            }
        })
    })
}

fn primes_dividing(n: i64) -> Vec<i64> {
    let mut n = n.unsigned_abs() as i64;
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_print_parse_is_a_fixed_point(f in random_poly()) {
        let text = f.to_string();
        let g = parse_poly(&text, None).unwrap();
        prop_assert!((&g - &f).is_zero());
        let printed = g.to_string();
        let h = parse_poly(&printed, None).unwrap();
        prop_assert_eq!(&h, &g);
        prop_assert_eq!(h.to_string(), printed);
    }

    #[test]
    fn hilbert_symbol_matches_local_solubility(a in squarefree(), b in squarefree(), pi in 0usize..4) {
        let prime = [2, 3, 5, 7][pi];
        let got = hilbert_symbol(&r(a), &r(b), &Place::prime(prime).unwrap()).unwrap();
        let expected = if locally_soluble(a, b, prime) { 1 } else { -1 };
        prop_assert_eq!(got, expected, "({}, {})_{}", a, b, prime);
    }

    #[test]
    fn hilbert_symbols_multiply_to_one(a in squarefree(), b in squarefree()) {
        let (ra, rb) = (r(a), r(b));
        let mut product = hilbert_symbol(&ra, &rb, &Place::Infinity).unwrap();
        for prime in primes_dividing(2 * a * b) {
            product *= hilbert_symbol(&ra, &rb, &Place::prime(prime).unwrap()).unwrap();
        }
        prop_assert_eq!(product, 1);
    }

    #[test]
    fn hilbert_symbol_steinberg_relations(a in nonzero_rational(), pi in 0usize..5) {
        let place = if pi == 4 { Place::Infinity } else { Place::prime([2, 3, 5, 7][pi]).unwrap() };
        prop_assert_eq!(hilbert_symbol(&a, &-a.clone(), &place).unwrap(), 1);
        if !a.is_one() {
            prop_assert_eq!(hilbert_symbol(&a, &(Rat::one() - &a), &place).unwrap(), 1);
        }
    }

    #[test]
    fn veronese_stays_on_its_quadric(a in nonzero_rational(), b in nonzero_rational(), s in invertible3(), c in rational()) {
        let m = construct_veronese_q4(&Poly::constant(a), &Poly::constant(b)).unwrap();
        let q = m.target().unwrap().clone();
        let moved = m.precompose(&s).unwrap();
        prop_assert!(verify_on_quadric(&q, &moved).unwrap());
        // a parameter factor, nowhere zero
        let factor = p(&format!("k^2 + ({c})^2 + 1"));
        prop_assert!(verify_on_quadric(&q, &moved.scale(&factor).unwrap()).unwrap());
    }

    #[test]
    fn reflections_preserve_verification(a in nonzero_rational(), b in nonzero_rational(), v in prop::collection::vec(-3i64..=3, 6)) {
        let m = construct_veronese_q4(&Poly::constant(a), &Poly::constant(b)).unwrap();
        let q = m.target().unwrap().clone();
        let v: Vec<Rat> = v.into_iter().map(r).collect();
        let qv = q.eval_rat(&v).unwrap();
        prop_assume!(!qv.is_zero());
        let g = q.numeric_gram().unwrap();
        let gv = g.mul_vec(&v);
        // x ↦ x − 2·b(x, v)/q(v)·v
        let reflection = Matrix::from_fn(6, 6, |i, j| {
            let delta = if i == j { Rat::one() } else { Rat::zero() };
            delta - r(2) * &v[i] * &gv[j] / &qv
        });
        let reflected = m.postcompose(&reflection).unwrap();
        prop_assert!(verify_on_quadric(&q, &reflected).unwrap());
    }

    #[test]
    fn span_and_label_are_projective_invariants(a in nonzero_rational(), b in nonzero_rational(), s in invertible3(), lower in prop::collection::vec(-2i64..=2, 15)) {
        let m = construct_veronese_q4(&Poly::constant(a), &Poly::constant(b)).unwrap();
        let before = m.classify();
        // lower triangular with nonzero diagonal, hence invertible
        let change = Matrix::from_fn(6, 6, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => r(1 + i as i64),
            std::cmp::Ordering::Greater => r(lower[i * (i - 1) / 2 + j]),
            std::cmp::Ordering::Less => Rat::zero(),
        });
        let moved = m.precompose(&s).unwrap().postcompose(&change).unwrap();
        prop_assert_eq!(moved.span_dimension(), before.span_dim);
        prop_assert_eq!(moved.classify().label, before.label);
    }

    #[test]
    fn sigma_twice_is_det_times_m(entries in prop::collection::vec(rational(), 6)) {
        let m = SymMatrix3::from_rat(&entries).unwrap();
        let twice = m.sigma().sigma();
        let det = m.det();
        for (l, e) in twice.to_p5().iter().zip(m.to_p5()) {
            prop_assert!((l - &(&det * &e)).is_zero());
        }
    }

    #[test]
    fn witt_transform_reaches_block_form(n in 2usize..=5, entries in prop::collection::vec(-5i64..=5, 15), diagonal in any::<bool>()) {
        let mut k = 0;
        let rows: Vec<Vec<Rat>> = {
            let mut m = vec![vec![Rat::zero(); n]; n];
            for i in 0..n {
                for j in i..n {
                    if i == j || !diagonal {
                        let c = entries[k % 15];
                        k += 1;
                        let val = if i == j { r(c) } else { frac(c, 2) };
                        m[i][j] = val.clone();
                        m[j][i] = val;
                    }
                }
            }
            m
        };
        let q = QuadraticForm::from_rat_rows(&rows).unwrap();
        prop_assume!(q.rank().unwrap() == n);
        let wd = match q.witt_decompose(30) {
            Ok(wd) => wd,
            Err(Error::CapExceeded(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(2 * wd.witt_index + wd.kernel_diagonal.len(), n);
        prop_assert_eq!(q.numeric_gram().unwrap().congruence(&wd.transform), wd.block_form());
        if !wd.kernel_diagonal.is_empty() {
            prop_assert!(!wd.kernel_form().unwrap().is_isotropic().unwrap());
        }
        prop_assert_eq!(q.witt_index(30).unwrap(), wd.witt_index);
    }

    #[test]
    fn change_of_basis_preserves_equivalence(d in prop::collection::vec(nonzero_rational(), 3), s in invertible3()) {
        let q = QuadraticForm::diagonal(&d).unwrap();
        let moved = q.transform(&s).unwrap();
        prop_assert!(moved.equivalent_over_q(&q).unwrap());
        prop_assert_eq!(moved.numeric_discriminant().unwrap(), q.numeric_discriminant().unwrap());
        prop_assert_eq!(moved.signature().unwrap(), q.signature().unwrap());
    }
}

fn split_q3() -> QuadraticForm {
    QuadraticForm::parse("x0*x1 + x2*x3 - x4^2", None).unwrap()
}

fn int_vec(len: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(-4i64..=4, len).prop_map(|v| v.into_iter().map(r).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residuals_stay_on_the_quadric(a in int_vec(5), b in int_vec(5)) {
        let q = split_q3();
        let line = CurveMap::line(&[r(1), r(0), r(0), r(0), r(0)], &[r(0), r(0), r(1), r(0), r(0)], Some(q.clone())).unwrap();
        let psi = match CurveMap::line(&a, &b, None) {
            Ok(psi) => psi,
            Err(_) => return Ok(()),
        };
        let up = match residual_map(&q, &line, &psi) {
            Ok(up) => up,
            Err(Error::ZeroResidual | Error::Proportional) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(q.eval(up.coords()).is_zero());
        prop_assert!(up.degree() <= 3);
        if up.degree() == 3 {
            if let Ok(down) = degree_reduce(&q, &up) {
                prop_assert!(q.eval(down.coords()).is_zero());
                prop_assert_eq!(down.degree(), 1);
            }
        }
    }

    #[test]
    fn conics_pass_through_their_points(v1 in int_vec(5), v2 in int_vec(5)) {
        let q = split_q3();
        let p0 = vec![r(1), r(0), r(0), r(0), r(0)];
        let (p1, p2) = match (second_intersection(&q, &p0, &v1), second_intersection(&q, &p0, &v2)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()),
        };
        let c = match conic_through_three_points(&q, [&p0, &p1, &p2]) {
            Ok(c) => c,
            Err(e) if !e.is_validation() => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(q.eval(c.coords()).is_zero());
        prop_assert!(c.passes_through(&r(1), &r(0), &p0));
        prop_assert!(c.passes_through(&r(0), &r(1), &p1));
        prop_assert!(c.passes_through(&r(1), &r(1), &p2));
    }

    #[test]
    fn sphere_residual_degree_is_bounded(params in prop::collection::vec((rational(), rational()), 2)) {
        // inverse stereographic images of (m, n) on x1² + x2² + t² = 1
        let pts: Vec<Vec<Rat>> = params
            .iter()
            .map(|(m, n)| {
                let den = Rat::one() + m * m + n * n;
                vec![r(2) * m / &den, r(2) * n / &den, (Rat::one() - m * m - n * n) / &den]
            })
            .collect();
        let f = p("x1^2 + x2^2 + t^2 - 1");
        match sym_power_residual(&f, &["x1", "x2"], "t", &pts) {
            Ok(out) => {
                prop_assert!(out.residual.degree_in("t") == 0);
                for (g, a) in out.interpolant.iter().zip(&out.anchors[0]) {
                    prop_assert_eq!(&g.eval(&[("t", Rat::zero())]), a);
                }
            }
            Err(Error::RepeatedNodes) => prop_assume!(false),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn unprojections_lie_on_the_quadric(coeffs in prop::collection::vec(-3i64..=3, 12)) {
        let q = QuadraticForm::parse("x0^2 - 2*x1^2 - x2*x3", None).unwrap();
        let pt = [p("0"), p("0"), p("1"), p("0")];
        let l: Vec<Poly> = coeffs
            .chunks(3)
            .map(|c| p("u").scale(&r(c[0])) + p("v").scale(&r(c[1])) + p("w").scale(&r(c[2])))
            .collect();
        match construct_unprojection(&q, &pt, &l) {
            Ok(m) => prop_assert!(verify_on_quadric(&q, &m).unwrap()),
            Err(Error::DegenerateLinearMap | Error::AllZero) => prop_assume!(false),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}

#[test]
fn oracle_self_check() {
    // z² = −x² − y² is insoluble exactly at 2 and ∞
    assert!(!locally_soluble(-1, -1, 2));
    assert!(locally_soluble(-1, -1, 3));
    // 3 is not a norm from ℚ(i) at 3
    assert!(!locally_soluble(-1, 3, 3));
    assert!(locally_soluble(2, 7, 3));
}
