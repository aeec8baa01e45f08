//! Exact scalars: rationals and cyclotomic fields `Q(zeta_N)`.
//!
//! An element of `Q(zeta_N)` is a polynomial in `zeta_N` of degree below
//! `phi(N)`, i.e. a vector of rationals, reduced modulo the `N`-th cyclotomic
//! polynomial `Phi_N`. The cyclotomic polynomials themselves are computed by
//! exact division from `x^N - 1 = prod_{d | N} Phi_d(x)`.
//!
//! Torsion characters live elsewhere as *rotation numbers* (rationals mod 1,
//! `q` standing for `e^{2 pi i q}`); they are expanded into field elements
//! here, and only when a matrix is actually evaluated.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Euler's totient of `n >= 1`.
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut result = n;
    let mut p = 2u32;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Distinct prime factors of `n >= 1`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers (dense, coefficient of x^i at index i).
// ---------------------------------------------------------------------------

fn zpoly_trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

fn zpoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    zpoly_trim(&mut out);
    out
}

/// Exact division of integer polynomials with *monic* divisor; panics on a
/// nonzero remainder (callers only divide products of cyclotomic factors).
fn zpoly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map_or(false, One::is_one), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    zpoly_trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() - 1 < dd {
        assert!(rem.iter().all(Zero::is_zero), "non-exact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, di) in den.iter().enumerate() {
                let t = di * &c;
                rem[k + i] -= t;
            }
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "non-exact polynomial division");
    zpoly_trim(&mut quot);
    quot
}

/// The `n`-th cyclotomic polynomial as dense integer coefficients
/// (`Phi_1 = x - 1`, `Phi_2 = x + 1`, `Phi_4 = x^2 + 1`, ...).
///
/// Results are memoized process-wide; orders used here are small.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let val = compute_cyclotomic(n);
    cache.lock().unwrap().insert(n, val.clone());
    val
}

fn compute_cyclotomic(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    // x^n - 1
    let mut xn1 = vec![BigInt::zero(); (n + 1) as usize];
    xn1[0] = BigInt::from(-1);
    xn1[n as usize] = BigInt::from(1);
    // Divide out Phi_d for every proper divisor d of n.
    let mut den = vec![BigInt::one()];
    for d in 1..n {
        if n % d == 0 {
            den = zpoly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    zpoly_div_exact(&xn1, &den)
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers.
// ---------------------------------------------------------------------------

fn qpoly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

fn qpoly_is_zero(p: &[Rat]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn qpoly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    qpoly_trim(&mut out);
    out
}

/// Remainder of `p` modulo the monic integer polynomial `m`.
fn qpoly_rem(p: &[Rat], m: &[BigInt]) -> Vec<Rat> {
    let md = m.len() - 1;
    let mut rem: Vec<Rat> = p.to_vec();
    qpoly_trim(&mut rem);
    while rem.len() - 1 >= md && !qpoly_is_zero(&rem) {
        let k = rem.len() - 1 - md;
        let c = rem.last().unwrap().clone();
        for (i, mi) in m.iter().enumerate() {
            let t = Rat::from(mi.clone()) * &c;
            rem[k + i] -= t;
        }
        qpoly_trim(&mut rem);
        if rem.len() - 1 < md {
            break;
        }
    }
    rem.resize(md.max(1), Rat::zero());
    rem
}

/// Quotient and remainder for division by an arbitrary nonzero divisor.
fn qpoly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    qpoly_trim(&mut rem);
    let mut d = den.to_vec();
    qpoly_trim(&mut d);
    assert!(!qpoly_is_zero(&d), "division by zero polynomial");
    let dd = d.len() - 1;
    let lead = d.last().unwrap().clone();
    if rem.len() < d.len() {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, di) in d.iter().enumerate() {
                let t = di * &c;
                rem[k + i] -= t;
            }
        }
    }
    qpoly_trim(&mut rem);
    qpoly_trim(&mut quot);
    (quot, rem)
}

// ---------------------------------------------------------------------------
// Cyclotomic numbers.
// ---------------------------------------------------------------------------

/// An element of `Q(zeta_order)`, reduced modulo `Phi_order`.
///
/// The coefficient vector always has length `phi(order)` (so `order` together
/// with the vector is a canonical form and equality is coefficient equality).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rat>,
}

impl Cyclotomic {
    /// The zero element of `Q(zeta_order)`.
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        Cyclotomic {
            order,
            coeffs: vec![Rat::zero(); euler_phi(order) as usize],
        }
    }

    /// The unit element of `Q(zeta_order)`.
    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rat::one())
    }

    /// A rational number viewed inside `Q(zeta_order)`.
    pub fn from_rational(order: u32, value: Rat) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    /// `zeta_order^k`, reduced.
    pub fn root_power(order: u32, k: i64) -> Self {
        let kk = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![Rat::zero(); kk + 1];
        raw[kk] = Rat::one();
        Self::reduce(order, raw)
    }

    /// The element with the given raw polynomial coefficients in `zeta_order`.
    pub fn reduce(order: u32, raw: Vec<Rat>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let mut rem = qpoly_rem(&raw, &phi);
        let want = euler_phi(order) as usize;
        rem.resize(want.max(1), Rat::zero());
        rem.truncate(want.max(1));
        Cyclotomic { order, coeffs: rem }
    }

    /// Field order `N` of `Q(zeta_N)` this element lives in.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis `1, zeta, ..., zeta^{phi(N)-1}`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// True when this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational part, when the element is rational (degree zero).
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same(&self, rhs: &Self) {
        assert_eq!(
            self.order, rhs.order,
            "cyclotomic orders differ; lift operands to a common order first"
        );
    }

    /// Sum.
    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    /// Difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Product.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.order);
        }
        let raw = qpoly_mul(&self.coeffs, &rhs.coeffs);
        Self::reduce(self.order, raw)
    }

    /// Product with a rational scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    ///
    /// `Phi_N` is irreducible over `Q`, so every nonzero residue is a unit;
    /// the Bezout coefficient from the extended Euclidean algorithm in `Q[x]`
    /// gives the inverse.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<Rat> = cyclotomic_polynomial(self.order)
            .into_iter()
            .map(Rat::from)
            .collect();
        // Extended Euclid on (a, phi): maintain r = s*a + t*phi.
        let mut r0 = self.coeffs.clone();
        qpoly_trim(&mut r0);
        let mut r1 = phi;
        let mut s0 = vec![Rat::one()];
        let mut s1 = vec![Rat::zero()];
        while !qpoly_is_zero(&r1) {
            let (q, r2) = qpoly_divmod(&r0, &r1);
            let qs1 = qpoly_mul(&q, &s1);
            let mut s2 = s0.clone();
            s2.resize(s2.len().max(qs1.len()), Rat::zero());
            for (i, v) in qs1.iter().enumerate() {
                s2[i] -= v;
            }
            qpoly_trim(&mut s2);
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant gcd.
        debug_assert!(r0.len() == 1 && !r0[0].is_zero());
        let inv_c = Rat::one() / r0[0].clone();
        let inv: Vec<Rat> = s0.iter().map(|x| x * &inv_c).collect();
        Some(Self::reduce(self.order, inv))
    }

    /// This element viewed in `Q(zeta_to)` where `order | to`
    /// (`zeta_N = zeta_M^{M/N}`).
    pub fn lift(&self, to: u32) -> Result<Self> {
        if to == self.order {
            return Ok(self.clone());
        }
        if to % self.order != 0 {
            return Err(Error::mismatch(format!(
                "cannot lift Q(zeta_{}) into Q(zeta_{})",
                self.order, to
            )));
        }
        let step = (to / self.order) as usize;
        let mut raw = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::reduce(to, raw))
    }

    /// Common denominator and integer numerator coefficients
    /// (`self = (1/den) * sum num[i] zeta^i`), for serialization.
    pub fn to_den_num(&self) -> (BigInt, Vec<BigInt>) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let num = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (den, num)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                if i == 1 {
                    write!(f, "z{}", self.order)?;
                } else {
                    write!(f, "z{}^{}", self.order, i)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Finite-field helpers for the modular rank oracle.
// ---------------------------------------------------------------------------

/// Deterministic Miller–Rabin primality test, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `(a * b) mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m`.
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let mut base = a % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Smallest prime `p > 2^30` with `p ≡ 1 (mod n)`, the default modulus for
/// the finite-field rank oracle with order-`n` roots of unity available.
pub fn default_oracle_prime(n: u32) -> u64 {
    let n = n.max(1) as u64;
    let lower = 1u64 << 30;
    let mut p = lower / n * n + 1;
    while p <= lower || !is_prime_u64(p) {
        p += n;
    }
    p
}

/// A fixed element of multiplicative order exactly `n` in `F_p`
/// (requires `n | p - 1`); deterministic in `(p, n)`.
pub fn root_of_unity_mod(p: u64, n: u32) -> u64 {
    assert!(n >= 1 && (p - 1) % n as u64 == 0, "need n | p-1");
    let n = n as u64;
    let exp = (p - 1) / n;
    let factors = prime_factors(n);
    let mut g = 2u64;
    loop {
        let cand = pow_mod(g, exp, p);
        if cand != 0 && factors.iter().all(|q| pow_mod(cand, n / q, p) != 1) {
            return cand;
        }
        g += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        let as_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.into_iter().map(|x| i64::try_from(x).unwrap()).collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        // Degree is phi(n).
        for n in 1..=24u32 {
            assert_eq!(
                cyclotomic_polynomial(n).len() as u32 - 1,
                euler_phi(n),
                "degree of Phi_{n}"
            );
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Cyclotomic::root_power(4, 1);
        let m1 = Cyclotomic::from_rational(4, rat(-1, 1));
        assert_eq!(i.mul(&i), m1);
    }

    #[test]
    fn sixth_root_relations() {
        // zeta_6^3 = -1, and zeta_6^2 - zeta_6 + 1 = 0.
        let z = Cyclotomic::root_power(6, 1);
        assert_eq!(z.mul(&z).mul(&z), Cyclotomic::from_rational(6, rat(-1, 1)));
        let lhs = z.mul(&z).sub(&z).add(&Cyclotomic::one(6));
        assert!(lhs.is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        // (1 + 2 zeta_12 - zeta_12^3) * its inverse = 1.
        let mut x = Cyclotomic::zero(12);
        x = x.add(&Cyclotomic::one(12));
        x = x.add(&Cyclotomic::root_power(12, 1).scale(&rat(2, 1)));
        x = x.sub(&Cyclotomic::root_power(12, 3));
        let inv = x.inverse().expect("nonzero");
        assert_eq!(x.mul(&inv), Cyclotomic::one(12));
        assert!(Cyclotomic::zero(5).inverse().is_none());
    }

    #[test]
    fn lift_is_consistent() {
        // zeta_2 lifted to order 6 equals zeta_6^3.
        let z2 = Cyclotomic::root_power(2, 1);
        let lifted = z2.lift(6).unwrap();
        assert_eq!(lifted, Cyclotomic::root_power(6, 3));
        // Lifting preserves products.
        let a = Cyclotomic::root_power(3, 1);
        let b = Cyclotomic::root_power(3, 2);
        let prod = a.mul(&b);
        assert_eq!(
            prod.lift(12).unwrap(),
            a.lift(12).unwrap().mul(&b.lift(12).unwrap())
        );
        assert!(z2.lift(5).is_err());
    }

    #[test]
    fn root_powers_sum_to_zero() {
        // 1 + zeta_5 + ... + zeta_5^4 = 0.
        let mut acc = Cyclotomic::zero(5);
        for k in 0..5 {
            acc = acc.add(&Cyclotomic::root_power(5, k));
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn oracle_prime_and_unity_root() {
        for n in [1u32, 2, 4, 6, 12] {
            let p = default_oracle_prime(n);
            assert!(p > (1 << 30));
            assert!(is_prime_u64(p));
            assert_eq!((p - 1) % n as u64, 0);
            let w = root_of_unity_mod(p, n);
            assert_eq!(pow_mod(w, n as u64, p), 1);
            for q in prime_factors(n as u64) {
                assert_ne!(pow_mod(w, n as u64 / q, p), 1, "order must be exactly {n}");
            }
        }
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_073_741_827)); // 2^30 + 3
        assert!(!is_prime_u64(1_073_741_825));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
    }

    #[test]
    fn serialization_split() {
        let mut x = Cyclotomic::from_rational(4, rat(1, 6));
        x = x.add(&Cyclotomic::root_power(4, 1).scale(&rat(-3, 4)));
        let (den, num) = x.to_den_num();
        assert_eq!(den, BigInt::from(12));
        assert_eq!(num, vec![BigInt::from(2), BigInt::from(-9)]);
    }
}
