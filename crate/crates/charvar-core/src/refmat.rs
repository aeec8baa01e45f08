//! Hand-checked reference data for the block Alexander matrix of the
//! deletion of the rank-3 signed-permutation reflection arrangement.
//!
//! [`reference_matrix`] is the 12 × 7 matrix in a tidied row form, with
//! variables `t1..t7` attached to the planes `H1, H3, H2, H4, H5, H8, H7`
//! of the deconed 7-plane arrangement (deconed along `H6`).
//! [`row_recipes`] gives, for each reference row, the Laurent-polynomial
//! row combination of [`block_alexander_matrix`] rows that reproduces it
//! exactly, when the block form is computed with the fixed chart and
//! direction in [`deleted_b3_block_setup`]. Row operations do not change
//! the ideals of minors, so the two forms certify each other.

use num::BigInt;

use crate::laurent::LaurentPoly;
use crate::lmatrix::LaurentMatrix;

const NV: usize = 7;

/// `t_i` for 1-based `i`.
fn v(i1: usize) -> LaurentPoly {
    LaurentPoly::var(NV, 1, i1 - 1)
}

fn one() -> LaurentPoly {
    LaurentPoly::one(NV, 1)
}

fn zero() -> LaurentPoly {
    LaurentPoly::zero(NV, 1)
}

/// The reference 12 × 7 matrix.
pub fn reference_matrix() -> LaurentMatrix {
    let m = |a: &LaurentPoly, b: &LaurentPoly| a.mul(b);
    let s = |a: &LaurentPoly, b: &LaurentPoly| a.sub(b);
    let rows: Vec<Vec<LaurentPoly>> = vec![
        // (1 - t5, 0, 0, 0, t1 - 1, 0, 0)
        vec![
            s(&one(), &v(5)),
            zero(),
            zero(),
            zero(),
            s(&v(1), &one()),
            zero(),
            zero(),
        ],
        // (0, t5 (t3 - 1), 1 - t2 t5, 0, t3 - 1, 0, 0)
        vec![
            zero(),
            m(&v(5), &s(&v(3), &one())),
            s(&one(), &m(&v(2), &v(5))),
            zero(),
            s(&v(3), &one()),
            zero(),
            zero(),
        ],
        // (0, 1 - t5, t2 (1 - t5), 0, t2 t3 - 1, 0, 0)
        vec![
            zero(),
            s(&one(), &v(5)),
            m(&v(2), &s(&one(), &v(5))),
            zero(),
            s(&m(&v(2), &v(3)), &one()),
            zero(),
            zero(),
        ],
        // (0, 0, 0, 1 - t5, t4 - 1, 0, 0)
        vec![
            zero(),
            zero(),
            zero(),
            s(&one(), &v(5)),
            s(&v(4), &one()),
            zero(),
            zero(),
        ],
        // (t6 (t3 - 1), (t3 - 1)(t1 t6 - 1), t2 (1 - t1 t6), 0, 0, t3 - 1, 0)
        vec![
            m(&v(6), &s(&v(3), &one())),
            m(&s(&v(3), &one()), &s(&m(&v(1), &v(6)), &one())),
            m(&v(2), &s(&one(), &m(&v(1), &v(6)))),
            zero(),
            zero(),
            s(&v(3), &one()),
            zero(),
        ],
        // (1 - t6, t1 (t3 - 1)(t6 - 1), t1 t2 (1 - t6), 0, 0, t1 t3 - 1, 0)
        vec![
            s(&one(), &v(6)),
            m(&v(1), &m(&s(&v(3), &one()), &s(&v(6), &one()))),
            m(&m(&v(1), &v(2)), &s(&one(), &v(6))),
            zero(),
            zero(),
            s(&m(&v(1), &v(3)), &one()),
            zero(),
        ],
        // (0, t6 (t4 - 1), 0, 1 - t2 t6, 0, t4 - 1, 0)
        vec![
            zero(),
            m(&v(6), &s(&v(4), &one())),
            zero(),
            s(&one(), &m(&v(2), &v(6))),
            zero(),
            s(&v(4), &one()),
            zero(),
        ],
        // (0, 1 - t6, 0, t2 (1 - t6), 0, t2 t4 - 1, 0)
        vec![
            zero(),
            s(&one(), &v(6)),
            zero(),
            m(&v(2), &s(&one(), &v(6))),
            zero(),
            s(&m(&v(2), &v(4)), &one()),
            zero(),
        ],
        // (t7 (t4 - 1), (t4 - 1)(t1 t7 - 1), 0, t2 (1 - t1 t7), 0, 0, t4 - 1)
        vec![
            m(&v(7), &s(&v(4), &one())),
            m(&s(&v(4), &one()), &s(&m(&v(1), &v(7)), &one())),
            zero(),
            m(&v(2), &s(&one(), &m(&v(1), &v(7)))),
            zero(),
            zero(),
            s(&v(4), &one()),
        ],
        // (1 - t7, t1 (1 - t7), 0, t1 t2 (1 - t7), 0, 0, t1 t2 t4 - 1)
        vec![
            s(&one(), &v(7)),
            m(&v(1), &s(&one(), &v(7))),
            zero(),
            m(&m(&v(1), &v(2)), &s(&one(), &v(7))),
            zero(),
            zero(),
            s(&m(&m(&v(1), &v(2)), &v(4)), &one()),
        ],
        // (0, 1 - t7, 0, 0, 0, 0, t2 - 1)
        vec![
            zero(),
            s(&one(), &v(7)),
            zero(),
            zero(),
            zero(),
            zero(),
            s(&v(2), &one()),
        ],
        // (0, 0, 1 - t7, (t3 - 1)(1 - t7), 0, 0, t4 (t3 - 1))
        vec![
            zero(),
            zero(),
            s(&one(), &v(7)),
            m(&s(&v(3), &one()), &s(&one(), &v(7))),
            zero(),
            zero(),
            m(&v(4), &s(&v(3), &one())),
        ],
    ];
    LaurentMatrix::from_rows(NV, 1, rows)
}

/// For each reference row, the combination `sum_k coeff_k * block_row_k`
/// that reproduces it from the block form.
pub fn row_recipes() -> Vec<Vec<(usize, LaurentPoly)>> {
    vec![
        vec![(0, one())],
        vec![(2, one())],
        vec![(1, one()), (2, v(2))],
        vec![(3, one())],
        vec![(6, v(2)), (5, one().sub(&v(3)))],
        vec![
            (4, one()),
            (6, v(1).mul(&v(2))),
            (5, v(1).sub(&v(1).mul(&v(3)))),
        ],
        vec![(7, one())],
        vec![(5, one()), (7, v(2))],
        vec![(11, v(2)), (9, one().sub(&v(4)))],
        vec![(8, one()), (9, v(1)), (11, v(1).mul(&v(2)))],
        vec![(9, one())],
        vec![(10, one()), (11, v(3).sub(&one()))],
    ]
}

/// Reference rows that are plain block rows (recipe is a single block row
/// with coefficient one), as `(reference_row, block_row)` pairs.
pub fn raw_rows() -> Vec<(usize, usize)> {
    row_recipes()
        .iter()
        .enumerate()
        .filter(|(_, recipe)| recipe.len() == 1 && recipe[0].1.sub(&one()).is_zero())
        .map(|(r, recipe)| (r, recipe[0].0))
        .collect()
}

/// The decone setup under which [`row_recipes`] is exact: the plane to
/// decone along, the chart, and the projection direction.
pub fn deleted_b3_block_setup() -> (usize, Vec<Vec<BigInt>>, (i64, i64)) {
    let chart: Vec<Vec<BigInt>> = [[1, 1, -5], [-1, 1, 1], [0, 0, -1]]
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    (5, chart, (1, 0))
}

/// Apply [`row_recipes`] to a block matrix, producing a matrix comparable
/// to [`reference_matrix`] row for row.
pub fn combine_rows(block: &LaurentMatrix) -> LaurentMatrix {
    let recipes = row_recipes();
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::new();
    for recipe in &recipes {
        let mut row = vec![LaurentPoly::zero(NV, 1); block.cols()];
        for (k, coeff) in recipe {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = cell.add(&coeff.mul(block.get(*k, c)));
            }
        }
        rows.push(row);
    }
    LaurentMatrix::from_rows(NV, 1, rows)
}
