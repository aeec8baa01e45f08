//! Integer linear algebra: Hermite and Smith normal forms, kernels,
//! saturation of lattices.
//!
//! Everything works on row-major `Vec<Vec<BigInt>>`. The Smith normal form
//! returns the unimodular transforms, which the torus-coset arithmetic needs
//! to solve congruence systems `M w ≡ τ (mod Z)` exactly.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Matrix with integer entries, row major.
pub type ZMat = Vec<Vec<BigInt>>;

/// A zero matrix of the given shape.
pub fn zmat_zero(rows: usize, cols: usize) -> ZMat {
    vec![vec![BigInt::zero(); cols]; rows]
}

/// The identity matrix of the given size.
pub fn zmat_identity(n: usize) -> ZMat {
    let mut m = zmat_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

/// Matrix product.
pub fn zmat_mul(a: &ZMat, b: &ZMat) -> ZMat {
    let (ra, ca) = (a.len(), a.first().map_or(0, Vec::len));
    let cb = b.first().map_or(0, Vec::len);
    assert!(ca == b.len(), "shape mismatch in matrix product");
    let mut out = zmat_zero(ra, cb);
    for i in 0..ra {
        for k in 0..ca {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cb {
                if !b[k][j].is_zero() {
                    let t = &a[i][k] * &b[k][j];
                    out[i][j] += t;
                }
            }
        }
    }
    out
}

/// Transpose.
pub fn zmat_transpose(a: &ZMat) -> ZMat {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = zmat_zero(cols, rows);
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            out[j][i] = v.clone();
        }
    }
    out
}

/// Determinant by fraction-free (Bareiss) elimination; used in tests to
/// confirm unimodularity of the Smith transforms.
pub fn zmat_det(a: &ZMat) -> BigInt {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Hermite normal form of the row lattice: the canonical row-echelon basis
/// with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped, so the result has `rank` rows.
pub fn hermite_normal_form(rows: &ZMat) -> ZMat {
    let mut m: ZMat = rows.iter().filter(|r| !r.iter().all(Zero::is_zero)).cloned().collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0usize;
    for col in 0..cols {
        if r == m.len() {
            break;
        }
        // Gcd-eliminate column `col` among rows r.. .
        loop {
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if !m[i][col].is_zero()
                    && best.map_or(true, |b| m[i][col].abs() < m[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut any = false;
            for i in r + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = div_round(&m[i][col], &m[r][col]);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let t = &q * &m[r][j];
                            m[i][j] -= t;
                        }
                    }
                    any = any || !m[i][col].is_zero();
                }
            }
            if !any {
                break;
            }
        }
        if r < m.len() && !m[r][col].is_zero() {
            if m[r][col].is_negative() {
                for v in m[r].iter_mut() {
                    *v = -v.clone();
                }
            }
            // Reduce entries above the pivot into [0, pivot).
            let pivot_row = m[r].clone();
            for (_i, row) in m.iter_mut().enumerate().take(r) {
                let q = row[col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &q * &pivot_row[j];
                        row[j] -= t;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Rank of the row lattice.
pub fn zmat_rank(rows: &ZMat) -> usize {
    hermite_normal_form(rows).len()
}

/// Rounded division minimizing the remainder's absolute value
/// (ties toward the floor); keeps entries small during elimination.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    // The floor remainder r shares b's sign, so r' = r - b always has
    // |r'| = |b| - |r|; bump q by one exactly when that is smaller.
    if (&r + &r).abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

/// The Smith decomposition `U * A * V = D` of an integer matrix.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Left unimodular transform, `m x m`.
    pub u: ZMat,
    /// The diagonal form, same shape as the input; diagonal entries are
    /// nonnegative and satisfy `d_1 | d_2 | ... | d_r`.
    pub d: ZMat,
    /// Right unimodular transform, `n x n`.
    pub v: ZMat,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Smith {
    /// The nonzero diagonal entries `d_1 | ... | d_r`.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

/// Smith normal form with unimodular row and column transforms.
///
/// Deterministic: pivots are chosen as the smallest nonzero magnitude in the
/// trailing submatrix (first in reading order on ties).
pub fn smith_normal_form(a: &ZMat) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut d = a.clone();
    let mut u = zmat_identity(m);
    let mut v = zmat_identity(n);
    let mut t = 0usize;

    'outer: while t < m.min(n) {
        // Find the smallest nonzero entry in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);

        // Each pass either clears the pivot row and column or strictly
        // shrinks the pivot magnitude (remainders and column swaps), so this
        // terminates.
        loop {
            for i in t + 1..m {
                if !d[i][t].is_zero() {
                    let q = div_round(&d[i][t], &d[t][t]);
                    row_sub(&mut d, &mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        // Remainder became the new, smaller pivot.
                        swap_rows(&mut d, &mut u, t, i);
                    }
                }
            }
            for j in t + 1..n {
                if !d[t][j].is_zero() {
                    let q = div_round(&d[t][j], &d[t][t]);
                    col_sub(&mut d, &mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        swap_cols(&mut d, &mut v, t, j);
                    }
                }
            }
            let col_clear = (t + 1..m).all(|i| d[i][t].is_zero());
            let row_clear = (t + 1..n).all(|j| d[t][j].is_zero());
            if col_clear && row_clear {
                break;
            }
        }

        // Divisibility: if some trailing entry is not divisible by the pivot,
        // fold its row into row t and restart this pivot position.
        for i in t + 1..m {
            for j in t + 1..n {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    let one = BigInt::from(-1);
                    row_sub(&mut d, &mut u, t, i, &one); // row_t += row_i
                    continue 'outer;
                }
            }
        }

        if d[t][t].is_negative() {
            negate_row(&mut d, &mut u, t);
        }
        t += 1;
    }

    let rank = (0..m.min(n)).take_while(|&i| !d[i][i].is_zero()).count();
    Smith { u, d, v, rank }
}

fn swap_rows(d: &mut ZMat, u: &mut ZMat, a: usize, b: usize) {
    if a != b {
        d.swap(a, b);
        u.swap(a, b);
    }
}

fn swap_cols(d: &mut ZMat, v: &mut ZMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in d.iter_mut() {
        row.swap(a, b);
    }
    for row in v.iter_mut() {
        row.swap(a, b);
    }
}

/// `row_i -= q * row_t` on `d`, mirrored on `u`.
fn row_sub(d: &mut ZMat, u: &mut ZMat, i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (src, dst) = (t, i);
    let srow: Vec<BigInt> = d[src].clone();
    for (j, s) in srow.iter().enumerate() {
        let x = q * s;
        d[dst][j] -= x;
    }
    let surow: Vec<BigInt> = u[src].clone();
    for (j, s) in surow.iter().enumerate() {
        let x = q * s;
        u[dst][j] -= x;
    }
}

/// `col_j -= q * col_t` on `d`, mirrored on `v`.
fn col_sub(d: &mut ZMat, v: &mut ZMat, j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in d.iter_mut() {
        let x = q * &row[t];
        row[j] -= x;
    }
    for row in v.iter_mut() {
        let x = q * &row[t];
        row[j] -= x;
    }
}

fn negate_row(d: &mut ZMat, u: &mut ZMat, t: usize) {
    for x in d[t].iter_mut() {
        *x = -x.clone();
    }
    for x in u[t].iter_mut() {
        *x = -x.clone();
    }
}

/// A basis for the integer kernel `{x in Z^n : A x = 0}`, returned as rows.
///
/// Via `U A V = D`: the kernel is spanned by the columns of `V` beyond the
/// rank, and such a basis is automatically primitive (the kernel lattice is
/// saturated).
pub fn kernel_basis(a: &ZMat) -> ZMat {
    let n = a.first().map_or(0, Vec::len);
    let s = smith_normal_form(a);
    let mut out = Vec::new();
    for j in s.rank..n {
        out.push((0..n).map(|i| s.v[i][j].clone()).collect());
    }
    out
}

/// The saturation of the row lattice: `sat(L) = (ker L^T-as-constraints)`,
/// i.e. all integer vectors some multiple of which lies in the span.
/// Computed as the kernel of the kernel: `sat(L) = ker(B)` where the rows of
/// `B` span `{x : L x = 0}`. Returned in Hermite normal form.
pub fn saturate(rows: &ZMat) -> ZMat {
    if rows.is_empty() {
        return Vec::new();
    }
    let b = kernel_basis(rows);
    if b.is_empty() {
        // Full rank: saturation is all of Z^n.
        return zmat_identity(rows[0].len());
    }
    hermite_normal_form(&kernel_basis(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(rows: &[&[i64]]) -> ZMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn smith_of_diag_2_3() {
        // diag(2,3) has invariant factors (1, 6).
        let a = zm(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.rank, 2);
        assert_eq!(s.divisors(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(zmat_mul(&zmat_mul(&s.u, &a), &s.v), s.d);
        assert_eq!(zmat_det(&s.u).abs(), BigInt::one());
        assert_eq!(zmat_det(&s.v).abs(), BigInt::one());
    }

    #[test]
    fn smith_decomposition_random_shapes() {
        // Deterministic pseudo-random small matrices; verify U A V = D,
        // unimodularity, and the divisibility chain.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for (m, n) in [(2, 3), (3, 2), (3, 3), (4, 3), (3, 5), (1, 4), (4, 1)] {
            let a: ZMat = (0..m)
                .map(|_| (0..n).map(|_| BigInt::from((next() % 13) as i64 - 6)).collect())
                .collect();
            let s = smith_normal_form(&a);
            assert_eq!(zmat_mul(&zmat_mul(&s.u, &a), &s.v), s.d, "UAV = D for {a:?}");
            assert_eq!(zmat_det(&s.u).abs(), BigInt::one());
            assert_eq!(zmat_det(&s.v).abs(), BigInt::one());
            let div = s.divisors();
            for w in div.windows(2) {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility {div:?}");
            }
            for (i, row) in s.d.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if i != j {
                        assert!(x.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn hermite_canonical_form() {
        let a = zm(&[&[2, 4], &[6, 8]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h, zm(&[&[2, 0], &[0, 4]]));
        // Order of rows does not matter.
        let b = zm(&[&[6, 8], &[2, 4]]);
        assert_eq!(hermite_normal_form(&b), h);
        assert_eq!(zmat_rank(&a), 2);
    }

    #[test]
    fn kernel_and_saturation() {
        let a = zm(&[&[1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for row in &k {
            let s: BigInt = row.iter().sum();
            assert!(s.is_zero());
        }
        // Saturation of a non-primitive lattice.
        let l = zm(&[&[2, 2, 2]]);
        assert_eq!(saturate(&l), zm(&[&[1, 1, 1]]));
        // Saturation of a full-rank lattice is everything.
        let f = zm(&[&[2, 0], &[0, 3]]);
        assert_eq!(saturate(&f), zmat_identity(2));
        // Already-saturated lattices are fixed.
        let s = zm(&[&[1, 0, -1], &[0, 1, -1]]);
        assert_eq!(saturate(&s), hermite_normal_form(&s));
    }

    #[test]
    fn kernel_orthogonality() {
        let a = zm(&[&[1, -1, 0, 2], &[0, 2, -2, 0]]);
        for v in kernel_basis(&a) {
            for row in &a {
                let dot: BigInt = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }
}
