//! Integer and rational number theory: factorisation, square classes,
//! rational square roots.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rat;

const TRIAL_LIMIT: u32 = 10_000;

fn mod_pow(b: &BigUint, e: &BigUint, m: &BigUint) -> BigUint {
    b.modpow(e, m)
}

/// Miller–Rabin with the first twelve prime bases; deterministic below
/// 3.3e24 and a strong probable-prime test above.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for a in BASES {
        let mut x = mod_pow(&BigUint::from(a), &d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    // n is odd, composite, not a perfect power of a small prime
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y) = (BigUint::from(2u32), BigUint::from(2u32));
        let mut d = BigUint::one();
        let mut steps = 0u64;
        while d.is_one() && steps < 1_000_000 {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
            steps += 1;
        }
        if !d.is_one() && d != *n {
            return d;
        }
        c += 1u32;
    }
}

/// Prime factorisation of a positive integer, primes ascending.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut n = n.clone();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u32;
    while p <= TRIAL_LIMIT && BigUint::from(p) * BigUint::from(p) <= n {
        let bp = BigUint::from(p);
        let mut k = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            k += 1;
        }
        if k > 0 {
            out.push((bp, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    let mut big: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            big.push(m);
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    big.sort();
    for q in big {
        match out.iter_mut().find(|(p, _)| *p == q) {
            Some(slot) => slot.1 += 1,
            None => out.push((q, 1)),
        }
    }
    out.sort();
    out
}

/// Square-free part of an integer, sign preserved; `0 -> 0`.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for (p, k) in factorize(n.magnitude()) {
        if k % 2 == 1 {
            r *= BigInt::from(p);
        }
    }
    if n.is_negative() {
        -r
    } else {
        r
    }
}

/// A rational number modulo nonzero rational squares, represented by its
/// square-free integer representative (`0` for the zero class).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn of(x: &Rat) -> Self {
        SquareClass(squarefree_part(&(x.numer() * x.denom())))
    }

    pub fn from_int(n: i64) -> Self {
        SquareClass::of(&Rat::from_integer(n.into()))
    }

    pub fn representative(&self) -> &BigInt {
        &self.0
    }

    pub fn is_square(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = self.0.gcd(&other.0);
        if g.is_zero() {
            return SquareClass(BigInt::zero());
        }
        let g = g.abs();
        SquareClass((&self.0 / &g) * (&other.0 / &g))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Square-free representative of `x` modulo squares.
pub fn square_class(x: &Rat) -> SquareClass {
    SquareClass::of(x)
}

/// Exact integer square root of a nonnegative perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Rational square root when `x` is a square in ℚ.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Rat::new(n, d))
}

pub fn is_rational_square(x: &Rat) -> bool {
    rational_sqrt(x).is_some()
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

/// Primes dividing numerator or denominator.
pub fn prime_support(x: &Rat) -> Vec<BigInt> {
    let mut ps: Vec<BigInt> = factorize(x.numer().magnitude())
        .into_iter()
        .chain(factorize(x.denom().magnitude()))
        .map(|(p, _)| BigInt::from_biguint(Sign::Plus, p))
        .collect();
    ps.sort();
    ps.dedup();
    ps
}

/// Content of a rational vector: `gcd(numerators) / lcm(denominators)`,
/// positive, so that dividing by it leaves coprime integers.
pub fn rational_gcd(values: &[Rat]) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values.iter().filter(|v| !v.is_zero()) {
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    if num.is_zero() {
        return Rat::zero();
    }
    Rat::new(num, den)
}

/// Scales a nonzero rational vector to coprime integers, first nonzero entry
/// positive.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let g = rational_gcd(v);
    if g.is_zero() {
        return vec![BigInt::zero(); v.len()];
    }
    let sign = v
        .iter()
        .find(|x| !x.is_zero())
        .map_or(1, |x| if x.is_negative() { -1 } else { 1 });
    v.iter()
        .map(|x| {
            let q = x / &g;
            debug_assert!(q.is_integer());
            q.to_integer() * sign
        })
        .collect()
}

pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn square_class_examples() {
        assert_eq!(square_class(&r(12, 1)).representative(), &BigInt::from(3));
        assert_eq!(square_class(&r(-1, 4)).representative(), &BigInt::from(-1));
        assert_eq!(square_class(&r(18, 5)).representative(), &BigInt::from(10));
        assert!(square_class(&r(0, 1)).is_zero());
    }

    #[test]
    fn factorization_large_semiprime() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(998_244_353u64);
        let f = factorize(&(&p * &q * &p));
        assert_eq!(f, vec![(q, 1), (p, 2)]);
    }

    #[test]
    fn primality() {
        assert!(is_prime(&BigUint::from(2u32)));
        assert!(!is_prime(&BigUint::from(561u32)));
        assert!(is_prime(&BigUint::from(1_000_000_007u64)));
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[r(-1, 2), r(3, 4), r(0, 1)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::zero()]);
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&r(9, 4)), Some(r(3, 2)));
        assert_eq!(rational_sqrt(&r(2, 1)), None);
        assert_eq!(rational_sqrt(&r(-4, 1)), None);
    }
}
