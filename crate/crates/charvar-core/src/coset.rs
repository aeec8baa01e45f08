//! Torsion-translated subtori of the character torus `(C*)^n`, exactly.
//!
//! A coset is stored in the canonical form `(L, θ)` where `L` is the
//! Hermite normal form of a *saturated* integer lattice and
//! `θ_a = rotation of t^a` (constant on the coset) for each row `a` of `L`:
//!
//! ```text
//! K = { t : t^a = e^{2πi θ_a}  for every row a of L }
//! ```
//!
//! Saturation makes `K` connected (a single translated subtorus of
//! dimension `n - rank L`), and the canonical form makes equality,
//! containment, and deduplication syntactic. Intersections are computed by
//! solving the stacked congruence system with a Smith normal form; the
//! result is the exact finite union of translated subtori.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::character::Character;
use crate::cyclo::Rat;
use crate::intlin::{
    hermite_normal_form, kernel_basis, saturate, smith_normal_form, zmat_rank, ZMat,
};

/// A translated subtorus in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusCoset {
    n: usize,
    lattice: ZMat,
    theta: Vec<Rat>,
}

fn mod1(q: &Rat) -> Rat {
    q - q.floor()
}

/// `m · q` over the rationals, reduced mod 1.
fn mat_times_rots(m: &ZMat, q: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            let s: Rat = row.iter().zip(q).map(|(a, x)| Rat::from(a.clone()) * x).sum();
            mod1(&s)
        })
        .collect()
}

impl TorusCoset {
    /// The full torus `(C*)^n`.
    pub fn full(n: usize) -> TorusCoset {
        TorusCoset {
            n,
            lattice: Vec::new(),
            theta: Vec::new(),
        }
    }

    /// The single point `{chi}`.
    pub fn point(chi: &Character) -> TorusCoset {
        let n = chi.len();
        let lattice = crate::intlin::zmat_identity(n);
        let theta = chi.rotations().to_vec();
        TorusCoset { n, lattice, theta }
    }

    /// The connected subtorus with direction space spanned by the rows of
    /// `directions`, translated to pass through `rho`.
    pub fn from_directions(n: usize, directions: &ZMat, rho: &Character) -> TorusCoset {
        assert_eq!(rho.len(), n);
        for r in directions {
            assert_eq!(r.len(), n);
        }
        let lattice = hermite_normal_form(&kernel_basis(directions));
        let theta = mat_times_rots(&lattice, rho.rotations());
        TorusCoset { n, lattice, theta }
    }

    /// The coset through `rho` of the connected subtorus
    /// `{t : t^a = 1 for all rows a of constraints}` (constraints are
    /// saturated first, which selects the identity component).
    pub fn from_constraints_through(n: usize, constraints: &ZMat, rho: &Character) -> TorusCoset {
        assert_eq!(rho.len(), n);
        let lattice = if constraints.is_empty() {
            Vec::new()
        } else {
            hermite_normal_form(&saturate(constraints))
        };
        let theta = mat_times_rots(&lattice, rho.rotations());
        TorusCoset { n, lattice, theta }
    }

    /// Ambient coordinate count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the coset.
    pub fn dim(&self) -> usize {
        self.n - self.lattice.len()
    }

    /// The canonical (saturated, Hermite-form) constraint lattice rows.
    pub fn lattice(&self) -> &ZMat {
        &self.lattice
    }

    /// The constant rotations `θ_a` paired with the lattice rows.
    pub fn theta(&self) -> &[Rat] {
        &self.theta
    }

    /// Rows spanning the direction space of the subtorus (the exponent
    /// vectors of a monomial parametrization). Saturated, `dim()` rows.
    pub fn direction_basis(&self) -> ZMat {
        if self.lattice.is_empty() {
            return crate::intlin::zmat_identity(self.n);
        }
        kernel_basis(&self.lattice)
    }

    /// A torsion point on the coset. Because the lattice is saturated its
    /// Smith divisors are all 1, so the congruence system `L q ≡ θ (mod 1)`
    /// has the direct solution `q = V (Uθ padded with zeros)`.
    pub fn translate_witness(&self) -> Character {
        if self.lattice.is_empty() {
            return Character::identity(self.n);
        }
        let s = smith_normal_form(&self.lattice);
        debug_assert!(
            s.divisors().iter().all(|d| d == &BigInt::one()),
            "saturated lattices have unit divisors"
        );
        let w = mat_times_rots(&s.u, &self.theta);
        let mut z = vec![Rat::zero(); self.n];
        z[..s.rank].clone_from_slice(&w[..s.rank]);
        let q: Vec<Rat> = (0..self.n)
            .map(|i| {
                let sum: Rat = (0..self.n)
                    .map(|j| Rat::from(s.v[i][j].clone()) * &z[j])
                    .sum();
                mod1(&sum)
            })
            .collect();
        let chi = Character::from_rotations(q);
        debug_assert!(self.contains(&chi), "witness must lie on the coset");
        chi
    }

    /// Does the coset contain this character?
    pub fn contains(&self, chi: &Character) -> bool {
        assert_eq!(chi.len(), self.n);
        self.lattice
            .iter()
            .zip(&self.theta)
            .all(|(a, th)| &chi.exponent_rotation(a) == th)
    }

    /// Is `self` contained in `other`? Holds when `other`'s constraint
    /// lattice lies in the rational row span of `self`'s (so each `t^a` is
    /// constant on `self`) and the constants match.
    pub fn is_subset(&self, other: &TorusCoset) -> bool {
        assert_eq!(self.n, other.n);
        if other.lattice.is_empty() {
            return true;
        }
        let mut stacked = self.lattice.clone();
        stacked.extend(other.lattice.iter().cloned());
        if zmat_rank(&stacked) != self.lattice.len() {
            return false;
        }
        let w = self.translate_witness();
        other
            .lattice
            .iter()
            .zip(&other.theta)
            .all(|(a, th)| &w.exponent_rotation(a) == th)
    }

    /// Exact intersection as a finite (possibly empty) union of translated
    /// subtori, deduplicated, in a deterministic order.
    pub fn intersect(&self, other: &TorusCoset) -> Vec<TorusCoset> {
        assert_eq!(self.n, other.n);
        let mut m = self.lattice.clone();
        m.extend(other.lattice.iter().cloned());
        let mut tau = self.theta.clone();
        tau.extend(other.theta.iter().cloned());
        solve_character_congruences(self.n, &m, &tau)
    }

    /// For a coset contained in `{t_h = 1}`: the same coset with
    /// coordinate `h` removed. Panics when the containment fails.
    pub fn delete_coordinate(&self, h: usize) -> TorusCoset {
        assert!(h < self.n);
        let dirs = self.direction_basis();
        assert!(
            dirs.iter().all(|row| row[h].is_zero()),
            "coordinate is not constant on the coset"
        );
        let w = self.translate_witness();
        assert!(
            w.rotations()[h].is_zero(),
            "coordinate is not pinned to 1 on the coset"
        );
        let new_dirs: ZMat = dirs
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.remove(h);
                r
            })
            .collect();
        TorusCoset::from_directions(self.n - 1, &new_dirs, &w.delete_coordinate(h))
    }

    /// Reindex coordinates: `out[i] = self[perm[i]]` where `perm` is a
    /// permutation of `0..n`.
    pub fn select(&self, perm: &[usize]) -> TorusCoset {
        assert_eq!(perm.len(), self.n);
        let dirs = self.direction_basis();
        let new_dirs: ZMat = dirs
            .iter()
            .map(|row| perm.iter().map(|&o| row[o].clone()).collect())
            .collect();
        let w = self.translate_witness();
        TorusCoset::from_directions(self.n, &new_dirs, &w.select(perm))
    }

    /// Embed into a larger torus: coordinates listed in `positions` (sorted,
    /// one per current coordinate) carry this coset; all other coordinates
    /// are pinned to 1.
    pub fn embed(&self, big_n: usize, positions: &[usize]) -> TorusCoset {
        assert_eq!(positions.len(), self.n);
        let dirs = self.direction_basis();
        let new_dirs: ZMat = dirs
            .iter()
            .map(|row| {
                let mut r = vec![BigInt::zero(); big_n];
                for (k, &p) in positions.iter().enumerate() {
                    r[p] = row[k].clone();
                }
                r
            })
            .collect();
        let w = self.translate_witness();
        let mut rots = vec![Rat::zero(); big_n];
        for (k, &p) in positions.iter().enumerate() {
            rots[p] = w.rotations()[k].clone();
        }
        TorusCoset::from_directions(big_n, &new_dirs, &Character::from_rotations(rots))
    }
}

/// Solve `M q ≡ τ (mod 1)` for characters `q`: the solution set is a finite
/// union of cosets of the connected torus `{t^a = 1, a ∈ sat(M)}`, one per
/// residue branch of the Smith divisors; empty when a rank-deficient
/// congruence is inconsistent.
pub fn solve_character_congruences(n: usize, m: &ZMat, tau: &[Rat]) -> Vec<TorusCoset> {
    if m.is_empty() {
        return vec![TorusCoset::full(n)];
    }
    assert_eq!(m.len(), tau.len());
    let s = smith_normal_form(m);
    let w = mat_times_rots(&s.u, tau);
    // Rows beyond the rank demand 0 ≡ w_j (mod 1).
    for wj in w.iter().skip(s.rank) {
        if !wj.is_zero() {
            return Vec::new();
        }
    }
    let divisors = s.divisors();
    let mut branch_count = BigInt::one();
    for d in &divisors {
        branch_count *= d;
    }
    let total = u64::try_from(&branch_count).expect("branch count fits u64");
    let mut out: Vec<TorusCoset> = Vec::new();
    for b in 0..total {
        // Mixed-radix digits of b over the divisors.
        let mut rem = b;
        let mut z = vec![Rat::zero(); n];
        for (j, d) in divisors.iter().enumerate() {
            let dj = u64::try_from(d).expect("divisor fits u64");
            let digit = rem % dj;
            rem /= dj;
            // d_j z_j ≡ w_j (mod 1)  =>  z_j = (w_j + digit)/d_j.
            let num = &w[j] + Rat::from(BigInt::from(digit));
            z[j] = num / Rat::from(d.clone());
        }
        let q: Vec<Rat> = (0..n)
            .map(|i| {
                let sum: Rat = (0..n)
                    .map(|j| Rat::from(s.v[i][j].clone()) * &z[j])
                    .sum();
                mod1(&sum)
            })
            .collect();
        let rho = Character::from_rotations(q);
        let coset = TorusCoset::from_constraints_through(n, m, &rho);
        debug_assert!(coset.contains(&rho));
        if !out.contains(&coset) {
            out.push(coset);
        }
    }
    // Deterministic order: by translate witness rotations.
    out.sort_by(|a, b| a.translate_witness().cmp(&b.translate_witness()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(BigInt::from(a), BigInt::from(b))
    }

    fn zrow(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn chi(rots: &[(i64, i64)]) -> Character {
        Character::from_rotations(rots.iter().map(|&(a, b)| r(a, b)).collect())
    }

    #[test]
    fn canonical_form_is_parametrization_independent() {
        // The line {(t, t^{-1})} translated by (1/2, 1/3), written two ways.
        let d1 = vec![zrow(&[1, -1])];
        let d2 = vec![zrow(&[-2, 2])]; // same direction, non-primitive, flipped
        let rho1 = chi(&[(1, 2), (1, 3)]);
        // Another point on the same coset: multiply by (1/4, -1/4) direction
        // torsion: (1/2 + 1/4, 1/3 - 1/4) = (3/4, 1/12).
        let rho2 = chi(&[(3, 4), (1, 12)]);
        let k1 = TorusCoset::from_directions(2, &d1, &rho1);
        let k2 = TorusCoset::from_directions(2, &d2, &rho2);
        assert_eq!(k1, k2);
        assert_eq!(k1.dim(), 1);
        assert!(k1.contains(&rho2));
        assert!(!k1.contains(&chi(&[(1, 2), (1, 2)])));
    }

    #[test]
    fn witness_lies_on_the_coset() {
        let dirs = vec![zrow(&[1, -1, 0]), zrow(&[0, 0, 2])];
        let rho = chi(&[(1, 2), (1, 2), (1, 3)]);
        let k = TorusCoset::from_directions(3, &dirs, &rho);
        let w = k.translate_witness();
        assert!(k.contains(&w));
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn intersection_of_crossing_lines_in_the_torus() {
        // {(t, t)} ∩ {(t, t^{-1})} = {(1,1), (-1,-1)}.
        let k1 = TorusCoset::from_directions(2, &vec![zrow(&[1, 1])], &Character::identity(2));
        let k2 = TorusCoset::from_directions(2, &vec![zrow(&[1, -1])], &Character::identity(2));
        let meet = k1.intersect(&k2);
        assert_eq!(meet.len(), 2);
        assert!(meet.iter().all(|k| k.dim() == 0));
        let pts: Vec<Character> = meet.iter().map(TorusCoset::translate_witness).collect();
        assert!(pts.contains(&Character::identity(2)));
        assert!(pts.contains(&chi(&[(1, 2), (1, 2)])));
    }

    #[test]
    fn intersection_with_coordinate_plane_splits_by_torsion() {
        // K = {(s, s, s^2)}: constraints t1 - t2 = 0 (multiplicatively),
        // t1^2/t3 = 1. Cutting with {t3 = 1} forces s^2 = 1: two points.
        let dirs = vec![zrow(&[1, 1, 2])];
        let k = TorusCoset::from_directions(3, &dirs, &Character::identity(3));
        let plane = TorusCoset::from_constraints_through(
            3,
            &vec![zrow(&[0, 0, 1])],
            &Character::identity(3),
        );
        let meet = k.intersect(&plane);
        assert_eq!(meet.len(), 2);
        let pts: Vec<Character> = meet.iter().map(TorusCoset::translate_witness).collect();
        assert!(pts.contains(&Character::identity(3)));
        assert!(pts.contains(&chi(&[(1, 2), (1, 2), (0, 1)])));
    }

    #[test]
    fn inconsistent_congruences_are_empty() {
        // t = zeta_3 and t = -1 simultaneously.
        let m = vec![zrow(&[1]), zrow(&[1])];
        let tau = vec![r(1, 3), r(1, 2)];
        assert!(solve_character_congruences(1, &m, &tau).is_empty());
    }

    #[test]
    fn subset_relations() {
        let point = TorusCoset::point(&chi(&[(1, 2), (1, 2)]));
        let line = TorusCoset::from_directions(2, &vec![zrow(&[1, 1])], &Character::identity(2));
        assert!(point.is_subset(&line));
        assert!(!line.is_subset(&point));
        assert!(line.is_subset(&TorusCoset::full(2)));
        // Same subtorus, different translate: not a subset.
        let shifted = TorusCoset::from_directions(2, &vec![zrow(&[1, 1])], &chi(&[(0, 1), (1, 2)]));
        assert!(!shifted.is_subset(&line));
        assert!(!line.is_subset(&shifted));
        assert!(line.is_subset(&line));
    }

    #[test]
    fn coordinate_deletion_and_embedding() {
        // {(t, 1, t^2)} with the middle coordinate pinned.
        let dirs = vec![zrow(&[1, 0, 2])];
        let k = TorusCoset::from_directions(3, &dirs, &Character::identity(3));
        let d = k.delete_coordinate(1);
        let expect = TorusCoset::from_directions(2, &vec![zrow(&[1, 2])], &Character::identity(2));
        assert_eq!(d, expect);
        // Embedding back into coordinates {0, 2} of a 3-torus.
        let e = expect.embed(3, &[0, 2]);
        assert_eq!(e, k);
    }

    #[test]
    fn select_permutes_coordinates() {
        let dirs = vec![zrow(&[1, 2, 0])];
        let rho = chi(&[(0, 1), (1, 2), (1, 3)]);
        let k = TorusCoset::from_directions(3, &dirs, &rho);
        let perm = [2usize, 0, 1];
        let p = k.select(&perm);
        let expect = TorusCoset::from_directions(
            3,
            &vec![zrow(&[0, 1, 2])],
            &chi(&[(1, 3), (0, 1), (1, 2)]),
        );
        assert_eq!(p, expect);
    }

    #[test]
    fn split_component_structure_of_nonsaturated_constraints() {
        // {t^2 = 1} in one variable: two points.
        let m = vec![zrow(&[2])];
        let tau = vec![Rat::zero()];
        let sols = solve_character_congruences(1, &m, &tau);
        assert_eq!(sols.len(), 2);
        let pts: Vec<Character> = sols.iter().map(TorusCoset::translate_witness).collect();
        assert!(pts.contains(&Character::identity(1)));
        assert!(pts.contains(&chi(&[(1, 2)])));
    }
}
