//! Free differential calculus on free-group words.
//!
//! The derivative `d(w)/d(x_j)` of a word lives in the integral group ring
//! of the free group and satisfies
//!
//! ```text
//! d(x_i)/d(x_j)      = delta_ij
//! d(x_i^{-1})/d(x_j) = -delta_ij * x_i^{-1}
//! d(u v)/d(x_j)      = d(u)/d(x_j) + u * d(v)/d(x_j)
//! ```
//!
//! Two routes are exposed: the full group-ring derivative
//! ([`fox_derivative`]) and the abelianized derivative straight into a
//! Laurent polynomial ([`fox_derivative_abelian`]); they agree after
//! abelianizing the former, which the tests check.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::Zero;

use crate::cyclo::{Cyclotomic, Rat};
use crate::laurent::LaurentPoly;
use crate::word::Word;

/// An element of the integral group ring `Z[F_n]`: a finite integer
/// combination of reduced words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    /// The zero element.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The element `1` (the empty word with coefficient one).
    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    /// A single word with coefficient one.
    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::from(1));
        GroupRingElement { terms }
    }

    /// True when there are no terms.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate `(word, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    fn insert(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Sum.
    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }

    /// Difference.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Left multiplication by a single word.
    pub fn left_mul_word(&self, u: &Word) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.insert(u.mul(w), c.clone());
        }
        out
    }

    /// Abelianize into a Laurent polynomial in `n` variables over `Q`.
    pub fn abelianize(&self, n: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(n, 1);
        for (w, c) in &self.terms {
            let exp = w.abelianize(n);
            let coeff = Cyclotomic::from_rational(1, Rat::from(c.clone()));
            p = p.add(&LaurentPoly::monomial(1, exp, coeff));
        }
        p
    }
}

/// The group-ring derivative `d(w)/d(x_j)` (zero-based `j`).
pub fn fox_derivative(w: &Word, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    let target = j as i32 + 1;
    for &l in w.letters() {
        if l == target {
            out = out.add(&GroupRingElement::from_word(prefix.clone()));
        } else if l == -target {
            // d(x^{-1}) = -x^{-1}, shifted by the prefix.
            let shifted = prefix.mul(&Word::gen_inv(j));
            out = out.sub(&GroupRingElement::from_word(shifted));
        }
        prefix = prefix.mul(&Word::from_letters([l]));
    }
    out
}

/// The abelianized derivative as a Laurent polynomial in `t_1..t_n`
/// (computed directly, without building the group-ring element).
pub fn fox_derivative_abelian(w: &Word, j: usize, n: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(n, 1);
    let mut prefix = vec![0i64; n];
    let target = j as i32 + 1;
    let one = Cyclotomic::one(1);
    for &l in w.letters() {
        let idx = (l.unsigned_abs() as usize) - 1;
        assert!(idx < n, "letter outside generator range");
        if l == target {
            out = out.add(&LaurentPoly::monomial(1, prefix.clone(), one.clone()));
        } else if l == -target {
            let mut e = prefix.clone();
            e[idx] -= 1;
            out = out.sub(&LaurentPoly::monomial(1, e, one.clone()));
        }
        prefix[idx] += l.signum() as i64;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Word {
        Word::from_letters((0..len).map(|_| {
            let i = rng.gen_range(1..=n as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        }))
    }

    #[test]
    fn derivative_of_commutator() {
        // d([x1,x2])/dx1 = 1 - x1 x2 x1^{-1}; abelianized 1 - t2.
        let w = Word::gen(0).commutator(&Word::gen(1));
        let d = fox_derivative(&w, 0);
        let expect = GroupRingElement::one()
            .sub(&GroupRingElement::from_word(Word::from_letters([1, 2, -1])));
        assert_eq!(d, expect);
        let ab = fox_derivative_abelian(&w, 0, 2);
        let one = LaurentPoly::one(2, 1);
        let t2 = LaurentPoly::var(2, 1, 1);
        assert_eq!(ab, one.sub(&t2));
    }

    #[test]
    fn derivative_of_power() {
        // d(x^3)/dx = 1 + x + x^2.
        let w = Word::from_letters([1, 1, 1]);
        let d = fox_derivative(&w, 0);
        let expect = GroupRingElement::one()
            .add(&GroupRingElement::from_word(Word::from_letters([1])))
            .add(&GroupRingElement::from_word(Word::from_letters([1, 1])));
        assert_eq!(d, expect);
        // d(x^{-2})/dx = -x^{-1} - x^{-2}.
        let w = Word::from_letters([-1, -1]);
        let d = fox_derivative(&w, 0);
        let expect = GroupRingElement::from_word(Word::from_letters([-1]))
            .add(&GroupRingElement::from_word(Word::from_letters([-1, -1])))
            .neg();
        assert_eq!(d, expect);
    }

    #[test]
    fn product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let lu = rng.gen_range(0..8);
            let u = random_word(&mut rng, 3, lu);
            let lv = rng.gen_range(0..8);
            let v = random_word(&mut rng, 3, lv);
            let uv = u.mul(&v);
            for j in 0..3 {
                let lhs = fox_derivative(&uv, j);
                let rhs = fox_derivative(&u, j).add(&fox_derivative(&v, j).left_mul_word(&u));
                assert_eq!(lhs, rhs, "product rule for d/dx{}", j + 1);
            }
        }
    }

    #[test]
    fn abelian_route_matches_group_ring_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let lw = rng.gen_range(0..12);
            let w = random_word(&mut rng, 4, lw);
            for j in 0..4 {
                let a = fox_derivative(&w, j).abelianize(4);
                let b = fox_derivative_abelian(&w, j, 4);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn fundamental_identity() {
        // sum_j d(w)/dx_j * (t_j - 1) = ab(w) - 1.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let n = 4;
        for _ in 0..25 {
            let lw = rng.gen_range(0..14);
            let w = random_word(&mut rng, n, lw);
            let mut acc = LaurentPoly::zero(n, 1);
            for j in 0..n {
                let d = fox_derivative_abelian(&w, j, n);
                let tj = LaurentPoly::var(n, 1, j);
                acc = acc.add(&d.mul(&tj.sub(&LaurentPoly::one(n, 1))));
            }
            let abw = LaurentPoly::monomial(1, w.abelianize(n), Cyclotomic::one(1));
            assert_eq!(acc, abw.sub(&LaurentPoly::one(n, 1)));
        }
    }

    #[test]
    fn derivative_ignores_other_generators() {
        let w = Word::from_letters([2, 3, -2]);
        assert!(fox_derivative(&w, 0).is_zero());
        assert!(fox_derivative_abelian(&w, 0, 3).is_zero());
    }
}
