//! Torsion characters of the fundamental group, stored exactly.
//!
//! A character assigns each meridian generator a root of unity; we store the
//! rotation numbers `q_i ∈ [0, 1) ∩ Q` with `t_i = exp(2πi q_i)`. All
//! arithmetic is on the rotation numbers, so equality, orders, and products
//! are exact; the cyclotomic coordinates are expanded only at evaluation
//! time.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::cyclo::{Cyclotomic, Rat};
use crate::error::{Error, Result};

/// A point of the character torus with all coordinates roots of unity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    rots: Vec<Rat>,
}

/// Reduce a rational into `[0, 1)`.
fn mod1(q: &Rat) -> Rat {
    let f = q.floor();
    q - f
}

impl Character {
    /// The identity character on `n` coordinates.
    pub fn identity(n: usize) -> Character {
        Character {
            rots: vec![Rat::zero(); n],
        }
    }

    /// Build from rotation numbers (reduced into `[0, 1)`).
    pub fn from_rotations(rots: Vec<Rat>) -> Character {
        Character {
            rots: rots.iter().map(mod1).collect(),
        }
    }

    /// The character with rotations `multiple * e_i / order`: the point of
    /// a one-parameter direction `e` at the given root of unity.
    pub fn from_exponents_at_order(exponents: &[BigInt], order: u32, multiple: i64) -> Character {
        let d = BigInt::from(order);
        Character::from_rotations(
            exponents
                .iter()
                .map(|e| Rat::new(e * BigInt::from(multiple), d.clone()))
                .collect(),
        )
    }

    /// Parse a comma-separated list of rationals, e.g. `0,1/2,2/3`.
    pub fn from_csv(text: &str) -> Result<Character> {
        let mut rots = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let q = if let Some((a, b)) = part.split_once('/') {
                let num: BigInt = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad rational {part:?}")))?;
                let den: BigInt = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad rational {part:?}")))?;
                if den.is_zero() {
                    return Err(Error::invalid(format!("zero denominator in {part:?}")));
                }
                Rat::new(num, den)
            } else {
                let num: BigInt = part
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad rational {part:?}")))?;
                Rat::from(num)
            };
            rots.push(mod1(&q));
        }
        Ok(Character { rots })
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.rots.len()
    }

    /// True when there are no coordinates.
    pub fn is_empty(&self) -> bool {
        self.rots.is_empty()
    }

    /// The rotation numbers in `[0, 1)`.
    pub fn rotations(&self) -> &[Rat] {
        &self.rots
    }

    /// True for the identity character.
    pub fn is_identity(&self) -> bool {
        self.rots.iter().all(Zero::is_zero)
    }

    /// Multiplicative order: the lcm of the rotation denominators.
    pub fn order(&self) -> u32 {
        let mut l = BigInt::one();
        for q in &self.rots {
            l = l.lcm(q.denom());
        }
        u32::try_from(&l).expect("character order fits u32")
    }

    /// Coordinate-wise product (adds rotations mod 1).
    pub fn mul(&self, rhs: &Character) -> Character {
        assert_eq!(self.len(), rhs.len());
        Character {
            rots: self
                .rots
                .iter()
                .zip(&rhs.rots)
                .map(|(a, b)| mod1(&(a + b)))
                .collect(),
        }
    }

    /// Coordinate-wise inverse.
    pub fn inv(&self) -> Character {
        Character {
            rots: self.rots.iter().map(|q| mod1(&(-q))).collect(),
        }
    }

    /// The `k`-th power.
    pub fn pow(&self, k: i64) -> Character {
        let kq = Rat::from(BigInt::from(k));
        Character {
            rots: self.rots.iter().map(|q| mod1(&(q * &kq))).collect(),
        }
    }

    /// Rotation number of the coordinate product `t_1 t_2 ... t_n`
    /// (zero exactly when the product is 1).
    pub fn product_rotation(&self) -> Rat {
        mod1(&self.rots.iter().sum::<Rat>())
    }

    /// Apply an integer exponent vector: the rotation of `t^a`.
    pub fn exponent_rotation(&self, a: &[BigInt]) -> Rat {
        assert_eq!(a.len(), self.len());
        let s: Rat = self
            .rots
            .iter()
            .zip(a)
            .map(|(q, e)| q * Rat::from(e.clone()))
            .sum();
        mod1(&s)
    }

    /// Coordinates as elements of `Q(zeta_N)` for an `N` divisible by the
    /// character's order.
    pub fn to_point(&self, n: u32) -> Vec<Cyclotomic> {
        self.rots
            .iter()
            .map(|q| {
                let scaled = q * Rat::from(BigInt::from(n));
                assert!(
                    scaled.denom().is_one(),
                    "requested cyclotomic order must be a multiple of the character order"
                );
                let k_big = scaled.numer().mod_floor(&BigInt::from(n));
                let k = u32::try_from(&k_big).expect("exponent fits");
                Cyclotomic::root_power(n, k.into())
            })
            .collect()
    }

    /// The character with coordinate `h` removed.
    pub fn delete_coordinate(&self, h: usize) -> Character {
        let mut rots = self.rots.clone();
        rots.remove(h);
        Character { rots }
    }

    /// The character reindexed as `out[i] = self[perm[i]]`.
    pub fn select(&self, perm: &[usize]) -> Character {
        Character {
            rots: perm.iter().map(|&i| self.rots[i].clone()).collect(),
        }
    }

    /// CSV form with canonical reduced fractions, e.g. `0,1/2,2/3`.
    pub fn to_csv(&self) -> String {
        self.rots
            .iter()
            .map(|q| {
                if q.denom().is_one() {
                    format!("{}", q.numer())
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_csv())
    }
}

/// Enumerate all characters on `n` coordinates whose coordinate orders
/// divide `k`, in lexicographic order of rotation numerators. The count is
/// `k^n`; callers are expected to budget-check first.
pub fn all_characters_of_order_dividing(n: usize, k: u32) -> Vec<Character> {
    assert!(k >= 1);
    let total = (k as u128).pow(n as u32);
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0u32; n];
    loop {
        let rots: Vec<Rat> = idx
            .iter()
            .map(|&i| Rat::new(BigInt::from(i), BigInt::from(k)))
            .collect();
        out.push(Character::from_rotations(rots));
        // Increment the mixed-radix counter.
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < k {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn csv_round_trip_and_normalization() {
        let c = Character::from_csv("0, 1/2, 5/3, -1/4").unwrap();
        assert_eq!(c.to_csv(), "0,1/2,2/3,3/4");
        assert_eq!(Character::from_csv(&c.to_csv()).unwrap(), c);
        assert!(Character::from_csv("1/0").is_err());
        assert!(Character::from_csv("x").is_err());
    }

    #[test]
    fn order_and_identity() {
        let c = Character::from_rotations(vec![r(1, 2), r(2, 3), Rat::zero()]);
        assert_eq!(c.order(), 6);
        assert!(!c.is_identity());
        assert!(Character::identity(3).is_identity());
        assert_eq!(Character::identity(3).order(), 1);
    }

    #[test]
    fn group_laws() {
        let c = Character::from_rotations(vec![r(1, 2), r(1, 3)]);
        assert!(c.mul(&c.inv()).is_identity());
        assert_eq!(c.pow(6), Character::identity(2));
        assert_eq!(c.pow(2), c.mul(&c));
        // (-1) * (zeta_3) has product rotation 1/2 + 1/3 = 5/6.
        assert_eq!(c.product_rotation(), r(5, 6));
    }

    #[test]
    fn exponent_rotation_pairs_with_lattice() {
        let c = Character::from_rotations(vec![r(1, 2), r(1, 4), Rat::zero()]);
        let a = vec![BigInt::from(2), BigInt::from(4), BigInt::from(-7)];
        // 2*(1/2) + 4*(1/4) + 0 = 2 ≡ 0.
        assert!(c.exponent_rotation(&a).is_zero());
        let b = vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)];
        assert_eq!(c.exponent_rotation(&b), r(3, 4));
    }

    #[test]
    fn to_point_produces_roots_of_unity() {
        let c = Character::from_rotations(vec![r(1, 2), r(1, 3)]);
        let pt = c.to_point(6);
        assert_eq!(pt[0], Cyclotomic::root_power(6, 3));
        assert_eq!(pt[1], Cyclotomic::root_power(6, 2));
        // -1 squared is 1.
        assert_eq!(pt[0].mul(&pt[0]), Cyclotomic::one(6));
    }

    #[test]
    fn coordinate_surgery() {
        let c = Character::from_rotations(vec![r(1, 2), r(1, 3), r(1, 5)]);
        assert_eq!(
            c.delete_coordinate(1),
            Character::from_rotations(vec![r(1, 2), r(1, 5)])
        );
        assert_eq!(
            c.select(&[2, 0]),
            Character::from_rotations(vec![r(1, 5), r(1, 2)])
        );
    }

    #[test]
    fn enumeration_of_two_torsion() {
        let all = all_characters_of_order_dividing(3, 2);
        assert_eq!(all.len(), 8);
        assert!(all.iter().any(Character::is_identity));
        let with_product_one: Vec<_> = all
            .iter()
            .filter(|c| c.product_rotation().is_zero())
            .collect();
        assert_eq!(with_product_one.len(), 4);
        // Deterministic order: first is the identity.
        assert!(all[0].is_identity());
    }
}
