//! Matrices over Laurent polynomial rings and exact rank computation.
//!
//! Three independent rank routes are provided:
//!
//! * [`LaurentMatrix::rank_fraction_free`] — Bareiss one-step elimination
//!   over the Laurent ring itself (exact, no fractions, the primary route);
//! * [`LaurentMatrix::rank_at_point`] — evaluation at an explicit point with
//!   root-of-unity coordinates followed by Gaussian elimination over
//!   `Q(zeta_N)` (exact);
//! * [`LaurentMatrix::rank_finite_field`] — random evaluation modulo a prime
//!   `p ≡ 1 (mod N)` (a cheap randomized cross-check: the result is a lower
//!   bound on the generic rank, with equality for all but finitely many
//!   assignments).

use num::bigint::BigInt;
use num::{Integer, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::{mul_mod, pow_mod, root_of_unity_mod, Cyclotomic, Rat};
use crate::laurent::LaurentPoly;

/// A dense matrix with [`LaurentPoly`] entries (row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    order: u32,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize, nvars: usize, order: u32) -> Self {
        LaurentMatrix {
            rows,
            cols,
            nvars,
            order,
            data: vec![LaurentPoly::zero(nvars, order); rows * cols],
        }
    }

    /// Build from rows (all rows must have equal length and matching ring).
    pub fn from_rows(nvars: usize, order: u32, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c, nvars, order);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, p) in row.into_iter().enumerate() {
                assert_eq!(p.nvars(), nvars);
                assert_eq!(p.order(), order);
                m.data[i * c + j] = p;
            }
        }
        m
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of Laurent variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Cyclotomic order of the coefficient field.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Entry accessor.
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    /// Entry mutator.
    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert_eq!(p.nvars(), self.nvars);
        assert_eq!(p.order(), self.order);
        self.data[i * self.cols + j] = p;
    }

    /// The matrix with column `j` removed.
    pub fn delete_col(&self, j: usize) -> Self {
        assert!(j < self.cols);
        let mut m = Self::zero(self.rows, self.cols - 1, self.nvars, self.order);
        for i in 0..self.rows {
            let mut out = 0;
            for c in 0..self.cols {
                if c != j {
                    m.data[i * (self.cols - 1) + out] = self.get(i, c).clone();
                    out += 1;
                }
            }
        }
        m
    }

    /// Apply a unit-monomial substitution to every entry
    /// (see [`LaurentPoly::substitute_monomials`]).
    pub fn substitute_monomials(
        &self,
        new_nvars: usize,
        new_order: u32,
        images: &[(Vec<i64>, Cyclotomic)],
    ) -> Self {
        let mut m = Self::zero(self.rows, self.cols, new_nvars, new_order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * self.cols + j] =
                    self.get(i, j).substitute_monomials(new_nvars, new_order, images);
            }
        }
        m
    }

    /// Evaluate every entry at a point with invertible coordinates.
    pub fn eval_at(&self, point: &[Cyclotomic]) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect())
            .collect()
    }

    /// Exact rank at an explicit point.
    pub fn rank_at_point(&self, point: &[Cyclotomic]) -> usize {
        cyclo_matrix_rank(&mut self.eval_at(point))
    }

    /// Divide each row and column by its common unit factor (a monomial times
    /// a positive rational). This scales the input by units only, so the rank
    /// is unchanged, and it keeps fraction-free elimination small.
    fn normalized_units(&self) -> Self {
        let mut m = self.clone();
        for i in 0..m.rows {
            strip_common_units(&mut m.data[i * m.cols..(i + 1) * m.cols], m.nvars);
        }
        for j in 0..m.cols {
            let mut col: Vec<LaurentPoly> = (0..m.rows).map(|i| m.get(i, j).clone()).collect();
            strip_common_units(&mut col, m.nvars);
            for (i, p) in col.into_iter().enumerate() {
                m.data[i * m.cols + j] = p;
            }
        }
        m
    }

    /// Rank over the fraction field of the Laurent ring, by Bareiss one-step
    /// fraction-free elimination with full pivoting. Pivots are chosen to
    /// minimize `(term count, exponent spread)`, which keeps intermediate
    /// minors small on the sparse matrices produced here.
    pub fn rank_fraction_free(&self) -> usize {
        let mut m = self.normalized_units();
        let (rows, cols) = (m.rows, m.cols);
        let mut prev = LaurentPoly::one(m.nvars, m.order);
        let mut rank = 0usize;
        while rank < rows && rank < cols {
            // Pivot search over the trailing submatrix.
            let mut best: Option<(usize, i64, usize, usize)> = None;
            for i in rank..rows {
                for j in rank..cols {
                    let e = m.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let key = (e.term_count(), e.degree_spread(), i, j);
                    match &best {
                        Some((tc, sp, bi, bj))
                            if (*tc, *sp, *bi, *bj) <= (key.0, key.1, key.2, key.3) => {}
                        _ => best = Some(key),
                    }
                }
            }
            let Some((_, _, pi, pj)) = best else { break };
            // Swap the pivot into position (rank, rank).
            if pi != rank {
                for j in 0..cols {
                    m.data.swap(rank * cols + j, pi * cols + j);
                }
            }
            if pj != rank {
                for i in 0..rows {
                    m.data.swap(i * cols + rank, i * cols + pj);
                }
            }
            let pivot = m.get(rank, rank).clone();
            for i in (rank + 1)..rows {
                let lead = m.get(i, rank).clone();
                for j in (rank + 1)..cols {
                    let num = pivot
                        .mul(m.get(i, j))
                        .sub(&lead.mul(m.get(rank, j)));
                    let q = num
                        .divide_exact(&prev)
                        .expect("fraction-free elimination divides exactly");
                    m.data[i * cols + j] = q;
                }
                m.data[i * cols + rank] = LaurentPoly::zero(m.nvars, m.order);
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Rank after a random evaluation modulo `p` (which must satisfy
    /// `p ≡ 1 (mod order)` so a primitive `order`-th root exists, and must be
    /// larger than every coefficient denominator). Runs `trials` independent
    /// seeded assignments and returns the maximum observed rank: each trial
    /// is a lower bound on the generic rank, so the maximum is the sharpest
    /// randomized estimate.
    pub fn rank_finite_field(&self, p: u64, seed: u64, trials: u32) -> usize {
        let mut best = 0usize;
        for t in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(t as u64 + 1)));
            let assign: Vec<u64> = (0..self.nvars).map(|_| rng.gen_range(1..p)).collect();
            best = best.max(self.rank_finite_field_with(p, &assign));
            if best == self.rows.min(self.cols) {
                break;
            }
        }
        best
    }

    /// Rank after the explicit evaluation `t_v = assign[v]` modulo `p`.
    pub fn rank_finite_field_with(&self, p: u64, assign: &[u64]) -> usize {
        assert_eq!(assign.len(), self.nvars);
        assert!(assign.iter().all(|&a| a % p != 0), "assignments must be units");
        let w = root_of_unity_mod(p, self.order);
        let mut num = vec![vec![0u64; self.cols]; self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                num[i][j] = eval_mod_p(self.get(i, j), p, w, assign);
            }
        }
        modp_matrix_rank(&mut num, p)
    }
}

/// Strip the common unit factor (monomial shift and rational content) shared
/// by a slice of polynomials, skipping zero entries. No-op when all are zero.
fn strip_common_units(entries: &mut [LaurentPoly], nvars: usize) {
    let mut shift = vec![i64::MAX; nvars];
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::from(1);
    let mut any = false;
    for p in entries.iter() {
        if p.is_zero() {
            continue;
        }
        any = true;
        let mut lo = vec![i64::MAX; nvars];
        for (e, c) in p.terms() {
            for (l, &x) in lo.iter_mut().zip(e) {
                *l = (*l).min(x);
            }
            for r in c.coeffs() {
                if !r.is_zero() {
                    num_gcd = num_gcd.gcd(r.numer());
                    den_lcm = den_lcm.lcm(r.denom());
                }
            }
        }
        for (s, l) in shift.iter_mut().zip(lo) {
            *s = (*s).min(l);
        }
    }
    if !any {
        return;
    }
    let inv_content = Rat::new(den_lcm, num_gcd);
    let neg_shift: Vec<i64> = shift.iter().map(|&s| -s).collect();
    for p in entries.iter_mut() {
        if p.is_zero() {
            continue;
        }
        let order = p.order();
        let unit = Cyclotomic::from_rational(order, inv_content.clone());
        *p = p.mul_monomial(&neg_shift, &unit);
    }
}

/// Exact Gaussian rank of a matrix over `Q(zeta_N)` (consumed in place).
pub fn cyclo_matrix_rank(m: &mut [Vec<Cyclotomic>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let inv = m[rank][col].inverse().expect("nonzero pivot");
        for j in col..cols {
            m[rank][j] = m[rank][j].mul(&inv);
        }
        for i in 0..rows {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..cols {
                    let s = m[rank][j].mul(&f);
                    m[i][j] = m[i][j].sub(&s);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Evaluate one Laurent polynomial modulo `p` at `t_v = assign[v]`, with
/// `zeta_order` mapped to the fixed primitive root `w`.
fn eval_mod_p(poly: &LaurentPoly, p: u64, w: u64, assign: &[u64]) -> u64 {
    let mut acc = 0u64;
    for (e, c) in poly.terms() {
        let mut v = cyclo_mod_p(c, p, w);
        for (var, &pow) in e.iter().enumerate() {
            if pow == 0 {
                continue;
            }
            let base = if pow < 0 {
                pow_mod(assign[var], p - 2, p)
            } else {
                assign[var]
            };
            v = mul_mod(v, pow_mod(base, pow.unsigned_abs(), p), p);
        }
        acc = (acc + v) % p;
    }
    acc
}

/// Image of a cyclotomic number modulo `p` under `zeta ↦ w`.
fn cyclo_mod_p(c: &Cyclotomic, p: u64, w: u64) -> u64 {
    let pm = BigInt::from(p);
    let mut acc = 0u64;
    let mut wk = 1u64;
    for r in c.coeffs() {
        if !r.is_zero() {
            let n = r.numer().mod_floor(&pm);
            let d = r.denom().mod_floor(&pm);
            let n64: u64 = n.try_into().expect("reduced numerator fits");
            let d64: u64 = d.try_into().expect("reduced denominator fits");
            assert!(d64 != 0, "denominator divisible by p");
            let val = mul_mod(n64, pow_mod(d64, p - 2, p), p);
            acc = (acc + mul_mod(val, wk, p)) % p;
        }
        wk = mul_mod(wk, w, p);
    }
    acc
}

/// Gaussian rank modulo a prime (matrix consumed in place).
pub fn modp_matrix_rank(m: &mut [Vec<u64>], p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&i| m[i][col] % p != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = pow_mod(m[rank][col] % p, p - 2, p);
        for j in col..cols {
            m[rank][j] = mul_mod(m[rank][j] % p, inv, p);
        }
        for i in 0..rows {
            if i != rank && m[i][col] % p != 0 {
                let f = m[i][col] % p;
                for j in col..cols {
                    let s = mul_mod(m[rank][j], f, p);
                    m[i][j] = (m[i][j] + p - s) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
