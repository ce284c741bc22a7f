//! Sparse multivariate polynomials over an exact field.
//!
//! A polynomial carries its own ordered variable list; binary operations on
//! polynomials with different lists work over the union (left operand's
//! variables first). Equality is semantic, so `u + 0*v` over `[u, v]` equals
//! `u` over `[u]`. Terms are kept in graded-lexicographic order, with earlier
//! variables ranking higher.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Field, Ring};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MPoly<F> {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, F>,
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    for v in b {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

impl<F: Field> MPoly<F> {
    pub fn zero() -> Self {
        MPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(0), c);
        }
        p
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), F::one());
        MPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs over `vars`.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, F)>,
    {
        let mut p = MPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length must match variables");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let v = slot.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<F> {
        if self.is_zero() {
            return Some(F::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> F {
        self.terms
            .get(&Monomial::one(self.vars.len()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// Variables that actually occur, in list order.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Re-expresses over `vars`, which must contain every used variable.
    pub fn with_vars(&self, vars: &[String]) -> Self {
        if self.vars == vars {
            return self.clone();
        }
        let idx: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = MPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j = idx[i].unwrap_or_else(|| {
                        panic!("variable {} missing from target list", self.vars[i])
                    });
                    e[j] = k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Drops variables that do not occur.
    pub fn trimmed(&self) -> Self {
        self.with_vars(&self.used_vars())
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let vars = union_vars(&a.vars, &b.vars);
        (a.with_vars(&vars), b.with_vars(&vars))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Degree counting only the listed variables.
    pub fn degree_in_vars(&self, vars: &[&str]) -> u32 {
        let idx: Vec<usize> = vars.iter().filter_map(|v| self.var_index(v)).collect();
        self.terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.0[i]).sum())
            .max()
            .unwrap_or(0)
    }

    /// True when every term has degree exactly `deg` in `vars` (zero counts).
    pub fn is_homogeneous_in(&self, vars: &[&str], deg: u32) -> bool {
        let idx: Vec<usize> = vars.iter().filter_map(|v| self.var_index(v)).collect();
        self.terms
            .keys()
            .all(|m| idx.iter().map(|&i| m.0[i]).sum::<u32>() == deg)
    }

    /// Splits into `monomial in vars -> coefficient polynomial in the rest`.
    pub fn coefficients_in(&self, vars: &[&str]) -> BTreeMap<Vec<u32>, MPoly<F>> {
        let idx: Vec<Option<usize>> = vars.iter().map(|v| self.var_index(v)).collect();
        let rest: Vec<String> = self
            .vars
            .iter()
            .filter(|v| !vars.contains(&v.as_str()))
            .cloned()
            .collect();
        let rest_idx: Vec<usize> = rest
            .iter()
            .map(|v| self.var_index(v).expect("own variable"))
            .collect();
        let mut out: BTreeMap<Vec<u32>, MPoly<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = idx.iter().map(|i| i.map_or(0, |i| m.0[i])).collect();
            let e: Vec<u32> = rest_idx.iter().map(|&i| m.0[i]).collect();
            out.entry(key)
                .or_insert_with(|| MPoly {
                    vars: rest.clone(),
                    terms: BTreeMap::new(),
                })
                .add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Coefficient of the monomial `prod vars[i]^exps[i]`, as a polynomial in
    /// the remaining variables.
    pub fn coefficient_of(&self, vars: &[&str], exps: &[u32]) -> MPoly<F> {
        self.coefficients_in(vars)
            .remove(exps)
            .unwrap_or_else(MPoly::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> F {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: &str) -> Self {
        let Some(i) = self.var_index(var) else {
            return Self::zero();
        };
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                out.add_term(Monomial(e), c.clone() * F::from_i64(k as i64));
            }
        }
        out
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, subs: &[(&str, MPoly<F>)]) -> Self {
        let map: Vec<Option<&MPoly<F>>> = self
            .vars
            .iter()
            .map(|v| subs.iter().find(|(n, _)| *n == v).map(|(_, p)| p))
            .collect();
        let images: Vec<MPoly<F>> = self
            .vars
            .iter()
            .zip(&map)
            .map(|(v, s)| s.cloned().unwrap_or_else(|| MPoly::var(v)))
            .collect();
        let mut powers: Vec<Vec<MPoly<F>>> = images.iter().map(|p| vec![p.clone()]).collect();
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() < k as usize {
                    let next = powers[i].last().expect("seeded") * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize - 1];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluates the listed variables at field values.
    pub fn eval_partial(&self, vals: &[(&str, F)]) -> Self {
        let subs: Vec<(&str, MPoly<F>)> = vals
            .iter()
            .map(|(n, v)| (*n, MPoly::constant(v.clone())))
            .collect();
        self.substitute(&subs)
    }

    /// Full evaluation; panics if a used variable is left unassigned.
    pub fn eval(&self, vals: &[(&str, F)]) -> F {
        let p = self.eval_partial(vals);
        p.as_constant()
            .unwrap_or_else(|| panic!("unassigned variables in {:?}", p.used_vars()))
    }

    pub fn rename(&self, pairs: &[(&str, &str)]) -> Self {
        let subs: Vec<(&str, MPoly<F>)> =
            pairs.iter().map(|(a, b)| (*a, MPoly::var(b))).collect();
        self.substitute(&subs)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        MPoly::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| (m.0.clone(), f(c))),
        )
    }

    /// Multivariate division by a list of divisors in graded-lex order.
    /// Returns quotients and remainder with
    /// `self = sum q_i * divisors_i + r` and no term of `r` divisible by a
    /// leading monomial of a divisor.
    pub fn div_rem_many(&self, divisors: &[MPoly<F>]) -> (Vec<MPoly<F>>, MPoly<F>) {
        let mut vars = self.vars.clone();
        for d in divisors {
            vars = union_vars(&vars, &d.vars);
        }
        let divs: Vec<MPoly<F>> = divisors.iter().map(|d| d.with_vars(&vars)).collect();
        let mut p = self.with_vars(&vars);
        let zero = MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        let mut quots = vec![zero.clone(); divs.len()];
        let mut rem = zero;
        while let Some((lm, lc)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let mut divided = false;
            for (d, q) in divs.iter().zip(quots.iter_mut()) {
                let Some((dm, dc)) = d.leading_term() else {
                    continue;
                };
                if dm.divides(&lm) {
                    let tm = lm.div(dm);
                    let tc = lc.clone() / dc.clone();
                    q.add_term(tm.clone(), tc.clone());
                    p = &p - &d.mul_term(&tm, &tc);
                    divided = true;
                    break;
                }
            }
            if !divided {
                rem.add_term(lm.clone(), lc);
                p.terms.remove(&lm);
            }
        }
        (quots, rem)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &MPoly<F>) -> Option<MPoly<F>> {
        if divisor.is_zero() {
            return None;
        }
        let (mut q, r) = self.div_rem_many(std::slice::from_ref(divisor));
        if r.is_zero() {
            q.pop()
        } else {
            None
        }
    }

    fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone() * c.clone()))
                .collect(),
        }
    }
}

impl<F: Field> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (a, b) = MPoly::aligned(self, other);
        a.terms == b.terms
    }
}

impl<F: Field> Eq for MPoly<F> {}

impl<'a, F: Field> Add<&'a MPoly<F>> for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, rhs: &'a MPoly<F>) -> MPoly<F> {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (mut a, b) = MPoly::aligned(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl<'a, F: Field> Sub<&'a MPoly<F>> for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, rhs: &'a MPoly<F>) -> MPoly<F> {
        if rhs.is_zero() {
            return self.clone();
        }
        let (mut a, b) = MPoly::aligned(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, -c);
        }
        a
    }
}

impl<'a, F: Field> Mul<&'a MPoly<F>> for &'a MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, rhs: &'a MPoly<F>) -> MPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let (a, b) = MPoly::aligned(self, rhs);
        let mut out = MPoly {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<F: Field> $tr for MPoly<F> {
            type Output = MPoly<F>;
            fn $f(self, rhs: MPoly<F>) -> MPoly<F> {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Field> Neg for MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        -&self
    }
}

impl<F: Field> Zero for MPoly<F> {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for MPoly<F> {
    fn one() -> Self {
        MPoly::constant(F::one())
    }
}

impl<F: Field> Ring for MPoly<F> {
    fn from_i64(n: i64) -> Self {
        MPoly::constant(F::from_i64(n))
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.signum_i32() < 0;
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
