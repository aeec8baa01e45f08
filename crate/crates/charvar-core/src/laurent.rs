//! Multivariate Laurent polynomials over cyclotomic rationals.
//!
//! Entries of Alexander matrices live in `Z[t_1^{±1}, ..., t_m^{±1}]`; after
//! substituting a torsion-translated parametrization they live in
//! `Q(zeta_N)[s_1^{±1}, ..., s_k^{±1}]`. Both are instances of [`LaurentPoly`]:
//! a finite map from exponent vectors in `Z^nvars` to nonzero [`Cyclotomic`]
//! coefficients, with a fixed variable count and cyclotomic order.
//!
//! Terms are kept in a `BTreeMap`, so iteration order (lexicographic on
//! exponent vectors) is canonical; the exact-division routine uses the
//! largest key as the leading term.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::cyclo::{Cyclotomic, Rat};

/// A Laurent polynomial in `nvars` variables over `Q(zeta_order)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Vec<i64>, Cyclotomic>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero(nvars: usize, order: u32) -> Self {
        LaurentPoly {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one(nvars: usize, order: u32) -> Self {
        Self::constant(nvars, Cyclotomic::one(order))
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: Cyclotomic) -> Self {
        let order = c.order();
        let mut p = Self::zero(nvars, order);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `t_i` (zero-based `i`).
    pub fn var(nvars: usize, order: u32, i: usize) -> Self {
        Self::var_pow(nvars, order, i, 1)
    }

    /// The monomial `t_i^e`.
    pub fn var_pow(nvars: usize, order: u32, i: usize, e: i64) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0i64; nvars];
        exp[i] = e;
        Self::monomial(order, exp, Cyclotomic::one(order))
    }

    /// The single-term polynomial `c * t^exp`.
    pub fn monomial(order: u32, exp: Vec<i64>, c: Cyclotomic) -> Self {
        assert_eq!(c.order(), order);
        let nvars = exp.len();
        let mut p = Self::zero(nvars, order);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Cyclotomic order of the coefficient field.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Cyclotomic)> {
        self.terms.iter()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when this is a unit of the Laurent ring (a single nonzero term).
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant term's coefficient when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return Some(Cyclotomic::zero(self.order));
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn assert_same(&self, rhs: &Self) {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        assert_eq!(self.order, rhs.order, "cyclotomic orders differ");
    }

    /// Sum.
    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    fn add_term(&mut self, exp: Vec<i64>, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Product.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        let mut out = Self::zero(self.nvars, self.order);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exp, ca.mul(cb));
            }
        }
        out
    }

    /// Product with a scalar.
    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out
    }

    /// Product with the unit monomial `c * t^exp`.
    pub fn mul_monomial(&self, exp: &[i64], c: &Cyclotomic) -> Self {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        let mut out = Self::zero(self.nvars, self.order);
        for (e, v) in &self.terms {
            let ne: Vec<i64> = e.iter().zip(exp).map(|(x, y)| x + y).collect();
            out.terms.insert(ne, v.mul(c));
        }
        out
    }

    /// Exponent spread `sum_v (max_v - min_v)`; a cheap size measure used by
    /// pivot selection.
    pub fn degree_spread(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let mut spread = 0i64;
        for v in 0..self.nvars {
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for e in self.terms.keys() {
                lo = lo.min(e[v]);
                hi = hi.max(e[v]);
            }
            spread += hi - lo;
        }
        spread
    }

    /// Strip the unit content: divide by the exponent-wise minimum monomial
    /// and by the rational content (gcd of all coefficient numerators over
    /// lcm of denominators). Returns the normalized polynomial; the stripped
    /// factor is a unit times a positive rational, so ranks are unaffected.
    pub fn strip_unit_content(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut shift = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (s, &x) in shift.iter_mut().zip(e) {
                *s = (*s).min(x);
            }
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            for r in c.coeffs() {
                if !r.is_zero() {
                    num_gcd = num_gcd.gcd(r.numer());
                    den_lcm = den_lcm.lcm(r.denom());
                }
            }
        }
        let content = Rat::new(num_gcd, den_lcm);
        let inv = Rat::one() / content;
        let mut out = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            let ne: Vec<i64> = e.iter().zip(&shift).map(|(x, s)| x - s).collect();
            out.terms.insert(ne, c.scale(&inv));
        }
        out
    }

    /// Leading term in lexicographic order.
    fn leading(&self) -> Option<(&Vec<i64>, &Cyclotomic)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns `q` with `self = q * div`, or `None` when the
    /// division is not exact. (Used by fraction-free elimination, where
    /// divisions are exact by construction; the `None` path guards bugs.)
    pub fn divide_exact(&self, div: &Self) -> Option<Self> {
        self.assert_same(div);
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars, self.order);
        let (dexp, dc) = {
            let (e, c) = div.leading().unwrap();
            (e.clone(), c.clone())
        };
        let dinv = dc.inverse().expect("nonzero leading coefficient");
        // Each step cancels the current leading term, which strictly
        // decreases in lexicographic order; exact divisions therefore take
        // exactly term_count(q) steps.
        let mut guard = 0usize;
        let max_steps = 4 * (self.term_count() + 1) * (div.term_count() + 1) + 64;
        while !rem.is_zero() {
            guard += 1;
            if guard > max_steps {
                return None;
            }
            let (rexp, rc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            let qexp: Vec<i64> = rexp.iter().zip(&dexp).map(|(a, b)| a - b).collect();
            let qc = rc.mul(&dinv);
            let qterm = Self::monomial(self.order, qexp, qc);
            rem = rem.sub(&qterm.mul(div));
            quot = quot.add(&qterm);
        }
        Some(quot)
    }

    /// Substitute each variable by a unit monomial `coeff * s^exp` in a new
    /// variable set (`images[i]` is the image of `t_i`). Coefficients must be
    /// invertible (they are roots of unity in practice); negative powers use
    /// the inverse.
    pub fn substitute_monomials(
        &self,
        new_nvars: usize,
        new_order: u32,
        images: &[(Vec<i64>, Cyclotomic)],
    ) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        for (e, c) in images {
            assert_eq!(e.len(), new_nvars);
            assert_eq!(c.order(), new_order);
            assert!(!c.is_zero(), "images must be units");
        }
        let mut out = Self::zero(new_nvars, new_order);
        for (e, c) in &self.terms {
            let mut exp = vec![0i64; new_nvars];
            let mut coeff = c.lift(new_order).expect("orders must be compatible");
            for (v, &pow) in e.iter().enumerate() {
                if pow == 0 {
                    continue;
                }
                let (ie, ic) = &images[v];
                for (x, y) in exp.iter_mut().zip(ie) {
                    *x += y * pow;
                }
                coeff = coeff.mul(&cyclo_pow(ic, pow));
            }
            out.add_term(exp, coeff);
        }
        out
    }

    /// Full evaluation at a point with invertible coordinates.
    pub fn eval(&self, point: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(point.len(), self.nvars);
        let order = if self.nvars == 0 {
            self.order
        } else {
            point[0].order()
        };
        let mut acc = Cyclotomic::zero(order);
        for (e, c) in &self.terms {
            let mut term = c.lift(order).expect("orders must be compatible");
            for (v, &pow) in e.iter().enumerate() {
                if pow != 0 {
                    term = term.mul(&cyclo_pow(&point[v], pow));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// `c^e` for possibly negative `e` (requires `c` invertible when `e < 0`).
pub fn cyclo_pow(c: &Cyclotomic, e: i64) -> Cyclotomic {
    let base = if e < 0 {
        c.inverse().expect("negative power of a non-unit")
    } else {
        c.clone()
    };
    let mut acc = Cyclotomic::one(c.order());
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(&base);
    }
    acc
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{}", i + 1, p)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.as_rational().map_or(false, |r| r.is_one()) {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
