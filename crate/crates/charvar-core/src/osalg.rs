//! The degree `<= 2` part of the Orlik–Solomon algebra and resonance depth.
//!
//! For a central arrangement of `n` planes, `A^1` has basis `a_1, ..., a_n`
//! and `A^2` has one basis element `a_{f_1} ∧ a_{f_k}` (`k >= 2`) for each
//! codimension-two flat `F = {f_1 < ... < f_m}`; products expand through the
//! relation `a_p ∧ a_q = a_{f_1} ∧ a_q - a_{f_1} ∧ a_p` for `f_1 < p < q`
//! in a common flat, and vanish when the two planes span no common flat
//! entry beyond themselves (impossible for a central 3-arrangement: any two
//! planes lie in exactly one codim-2 flat).
//!
//! The resonance depth of `λ ∈ Q^n` is `dim ker(μ_λ: A^1 → A^2) − 1` for
//! `λ ≠ 0` (the line through `λ` is always in the kernel) and `n` at
//! `λ = 0`.

use num::Zero;

use crate::arrangement::Arrangement;
use crate::cyclo::{Cyclotomic, Rat};
use crate::lmatrix::cyclo_matrix_rank;

/// The degree-two Orlik–Solomon data of a central 3-arrangement.
#[derive(Debug, Clone)]
pub struct OsAlgebra {
    n: usize,
    flats: Vec<Vec<usize>>,
    /// Basis of `A^2`: pairs `(f_1, f_k)` per flat, flats in order.
    basis2: Vec<(usize, usize)>,
    /// For each plane pair `i < j`, the index of their common flat.
    pair_flat: Vec<Vec<Option<usize>>>,
}

impl OsAlgebra {
    /// Build from a central 3-arrangement.
    pub fn new(arr: &Arrangement) -> OsAlgebra {
        let n = arr.n();
        let flats = arr.flats_codim2();
        let mut basis2 = Vec::new();
        let mut pair_flat = vec![vec![None; n]; n];
        for (fi, flat) in flats.iter().enumerate() {
            let f1 = flat[0];
            for &fk in &flat[1..] {
                basis2.push((f1, fk));
            }
            for a in 0..flat.len() {
                for b in (a + 1)..flat.len() {
                    pair_flat[flat[a]][flat[b]] = Some(fi);
                    pair_flat[flat[b]][flat[a]] = Some(fi);
                }
            }
        }
        OsAlgebra {
            n,
            flats,
            basis2,
            pair_flat,
        }
    }

    /// Number of planes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of `A^2` (sum over flats of `|F| - 1`).
    pub fn dim2(&self) -> usize {
        self.basis2.len()
    }

    /// The basis pairs of `A^2`.
    pub fn basis2(&self) -> &[(usize, usize)] {
        &self.basis2
    }

    /// Index of the basis element `a_{f1} ∧ a_{fk}`.
    fn basis_index(&self, f1: usize, fk: usize) -> usize {
        self.basis2
            .iter()
            .position(|&(a, b)| a == f1 && b == fk)
            .expect("basis pair exists")
    }

    /// Expand `a_p ∧ a_q` (`p != q`, possibly unordered) in the `A^2` basis
    /// as `[(basis index, ±1)]`; empty when the product is zero.
    pub fn wedge(&self, p: usize, q: usize) -> Vec<(usize, i64)> {
        assert!(p != q);
        let (lo, hi, sign) = if p < q { (p, q, 1i64) } else { (q, p, -1i64) };
        let Some(fi) = self.pair_flat[lo][hi] else {
            return Vec::new();
        };
        let f1 = self.flats[fi][0];
        if lo == f1 {
            vec![(self.basis_index(f1, hi), sign)]
        } else {
            // a_lo ∧ a_hi = a_f1 ∧ a_hi − a_f1 ∧ a_lo.
            vec![
                (self.basis_index(f1, hi), sign),
                (self.basis_index(f1, lo), -sign),
            ]
        }
    }

    /// The matrix of `μ_λ : A^1 → A^2`, `a_p ↦ λ ∧ a_p`, with rational
    /// entries (as order-1 cyclotomics); rows = `A^2` basis, columns = planes.
    pub fn mu_matrix(&self, lambda: &[Rat]) -> Vec<Vec<Cyclotomic>> {
        assert_eq!(lambda.len(), self.n);
        let mut m = vec![vec![Cyclotomic::zero(1); self.n]; self.dim2()];
        for p in 0..self.n {
            for q in 0..self.n {
                if q == p || lambda[q].is_zero() {
                    continue;
                }
                for (row, sign) in self.wedge(q, p) {
                    let add = if sign > 0 {
                        lambda[q].clone()
                    } else {
                        -lambda[q].clone()
                    };
                    let cur = m[row][p].clone();
                    m[row][p] = cur.add(&Cyclotomic::from_rational(1, add));
                }
            }
        }
        m
    }

    /// Resonance depth of `λ`: `n` at `λ = 0`, otherwise
    /// `dim ker μ_λ − 1 = n − rank(μ_λ) − 1`.
    pub fn resonance_depth(&self, lambda: &[Rat]) -> usize {
        if lambda.iter().all(Zero::is_zero) {
            return self.n;
        }
        let mut m = self.mu_matrix(lambda);
        let rank = cyclo_matrix_rank(&mut m);
        self.n - rank - 1
    }
}

/// Resonance depth for an arrangement, coning first when it is affine.
pub fn resonance_depth(arr: &Arrangement, lambda: &[Rat]) -> usize {
    assert!(arr.central, "resonance works on the central model");
    OsAlgebra::new(arr).resonance_depth(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;
    use num::One;

    fn rat(x: i64) -> Rat {
        Rat::from(BigInt::from(x))
    }

    fn braid6() -> Arrangement {
        Arrangement {
            ambient_dim: 3,
            central: true,
            forms: [
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [1, -1, 0],
                [1, 0, -1],
                [0, 1, -1],
            ]
            .iter()
            .map(|f| f.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
            labels: (1..=6).map(|i| format!("H{i}")).collect(),
        }
    }

    #[test]
    fn dimension_of_degree_two() {
        // Flats: four triples and three doubles: dim A^2 = 4*2 + 3*1 = 11.
        let os = OsAlgebra::new(&braid6());
        assert_eq!(os.dim2(), 11);
        assert_eq!(os.n(), 6);
    }

    #[test]
    fn wedge_is_antisymmetric_and_flat_local() {
        let os = OsAlgebra::new(&braid6());
        let pq = os.wedge(1, 3);
        let qp = os.wedge(3, 1);
        let negated: Vec<(usize, i64)> = qp.iter().map(|&(i, s)| (i, -s)).collect();
        assert_eq!(pq, negated);
    }

    #[test]
    fn local_resonance_vector_has_depth_one() {
        // λ supported on the triple {1,2,4} (zero-based {0,1,3}) summing to 0.
        let os = OsAlgebra::new(&braid6());
        let lambda = vec![rat(1), rat(-1), rat(0), rat(0), rat(0), rat(0)];
        assert_eq!(os.resonance_depth(&lambda), 1);
        let lambda = vec![rat(1), rat(1), rat(0), rat(-2), rat(0), rat(0)];
        assert_eq!(os.resonance_depth(&lambda), 1);
    }

    #[test]
    fn essential_resonance_vector_has_depth_one() {
        // The essential component for the partition (16|25|34) contains
        // (a, b, -a-b, -a-b, b, a); every vertex then sums to zero.
        let os = OsAlgebra::new(&braid6());
        let lambda = vec![rat(1), rat(0), rat(-1), rat(-1), rat(0), rat(1)];
        assert_eq!(os.resonance_depth(&lambda), 1);
        let lambda = vec![rat(1), rat(2), rat(-3), rat(-3), rat(2), rat(1)];
        assert_eq!(os.resonance_depth(&lambda), 1);
    }

    #[test]
    fn generic_vector_has_depth_zero() {
        // Generic λ with sum zero lies in no resonance component.
        let os = OsAlgebra::new(&braid6());
        let lambda = vec![rat(1), rat(2), rat(3), rat(4), rat(5), rat(-15)];
        assert_eq!(os.resonance_depth(&lambda), 0);
    }

    #[test]
    fn zero_vector_depth_is_n() {
        let os = OsAlgebra::new(&braid6());
        assert_eq!(os.resonance_depth(&vec![Rat::zero(); 6]), 6);
        assert!(Rat::one().is_one());
    }

    #[test]
    fn single_triple_arrangement() {
        // Three concurrent planes x, y, x-y: pencil; R_1 is the full
        // sum-zero plane, so any sum-zero λ has depth 1.
        let a = Arrangement {
            ambient_dim: 3,
            central: true,
            forms: [[1, 0, 0], [0, 1, 0], [1, -1, 0]]
                .iter()
                .map(|f| f.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            labels: (1..=3).map(|i| format!("H{i}")).collect(),
        };
        let os = OsAlgebra::new(&a);
        assert_eq!(os.dim2(), 2);
        let lambda = vec![rat(2), rat(-1), rat(-1)];
        assert_eq!(os.resonance_depth(&lambda), 1);
        // Non-sum-zero λ on a pencil: depth 0.
        let lambda = vec![rat(1), rat(1), rat(1)];
        assert_eq!(os.resonance_depth(&lambda), 0);
    }
}
