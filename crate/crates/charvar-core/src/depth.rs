//! Exact depth of torsion characters.
//!
//! The depth of a character `t` of a central arrangement group counts how
//! many jump loci `t` lies in: `depth(t) = max { d : rank A(t) < m - d }`,
//! where `A` is an Alexander matrix of an `m`-generator presentation of the
//! deconed group. Membership is evaluated on a decone: a central character
//! must satisfy the product condition `t_1 ... t_n = 1`, and its depth
//! equals the depth of the induced character of the deconed arrangement
//! (the coordinate of the plane sent to infinity is dropped). The identity
//! has depth equal to the first Betti number, which is the number of
//! planes.
//!
//! All ranks are computed exactly over the cyclotomic field containing the
//! character's values.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::alexander::alexander_matrix;
use crate::character::Character;
use crate::coset::TorusCoset;
use crate::cyclo::Cyclotomic;
use crate::error::{BudgetKind, Error, Result};
use crate::intlin::ZMat;
use crate::lmatrix::{cyclo_matrix_rank, LaurentMatrix};
use crate::present::Presentation;
use crate::wiring::{monodromy_presentation_of, suggest_direction};

/// Default ceiling on the number of characters a scan may visit.
pub const DEFAULT_SCAN_BUDGET: u64 = 100_000;

/// The plane a central arrangement is deconed at when no choice is given:
/// the plane cut out by the last coordinate if present, else the last one.
pub fn default_decone_plane(arr: &Arrangement) -> usize {
    use num::Zero;
    for (i, f) in arr.forms.iter().enumerate() {
        if f[..arr.ambient_dim - 1].iter().all(Zero::is_zero) {
            return i;
        }
    }
    arr.n() - 1
}

/// A reusable exact rank oracle for characters of one central arrangement:
/// the deconed presentation and its Alexander matrix, with the map from
/// matrix columns back to the parent's plane indices.
#[derive(Debug)]
pub struct DepthOracle {
    n: usize,
    decone_plane: usize,
    presentation: Presentation,
    matrix: LaurentMatrix,
    gen_planes: Vec<usize>,
}

impl DepthOracle {
    /// Build the oracle by deconing at the default plane with an
    /// automatically chosen generic direction.
    pub fn new(arr: &Arrangement) -> Result<DepthOracle> {
        Self::with_decone(arr, default_decone_plane(arr), None, None)
    }

    /// Build the oracle deconing at `plane`, optionally with an explicit
    /// chart (rows of an invertible integer matrix) and scan direction.
    pub fn with_decone(
        arr: &Arrangement,
        plane: usize,
        chart: Option<&ZMat>,
        direction: Option<(i64, i64)>,
    ) -> Result<DepthOracle> {
        if !arr.central {
            return Err(Error::invalid("depth needs a central arrangement"));
        }
        let affine = match chart {
            Some(c) => arr.decone_with_chart(plane, c)?,
            None => arr.decone(plane)?,
        };
        let direction = match direction {
            Some(d) => d,
            None => suggest_direction(&affine),
        };
        let presentation = monodromy_presentation_of(&affine, direction)?;
        let matrix = alexander_matrix(&presentation);
        // Generators already carry the parent's plane indices.
        let gen_planes: Vec<usize> = presentation.gen_planes();
        Ok(DepthOracle {
            n: arr.n(),
            decone_plane: plane,
            presentation,
            matrix,
            gen_planes,
        })
    }

    /// Number of planes of the parent arrangement.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The plane sent to infinity.
    pub fn decone_plane(&self) -> usize {
        self.decone_plane
    }

    /// The deconed presentation backing the oracle.
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// The Alexander matrix backing the oracle (one variable and one
    /// column per generator).
    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    /// For each matrix variable, the parent plane index it evaluates at.
    pub fn gen_planes(&self) -> &[usize] {
        &self.gen_planes
    }

    /// The values to substitute for the matrix variables at a character of
    /// the parent arrangement, in the cyclotomic field of its order.
    pub fn point_of(&self, t: &Character) -> Vec<Cyclotomic> {
        let point = t.to_point(t.order());
        self.gen_planes.iter().map(|&p| point[p].clone()).collect()
    }

    /// Exact rank of the Alexander matrix at the character.
    pub fn rank_at(&self, t: &Character) -> usize {
        cyclo_matrix_rank(&mut self.matrix.eval_at(&self.point_of(t)))
    }

    /// Depth of a character of the parent arrangement. The identity has
    /// depth `n`; any other character must satisfy the product condition.
    pub fn depth(&self, t: &Character) -> Result<usize> {
        if t.len() != self.n {
            return Err(Error::invalid(format!(
                "character has {} coordinates, arrangement has {}",
                t.len(),
                self.n
            )));
        }
        if t.is_identity() {
            return Ok(self.n);
        }
        let product = t.product_rotation();
        if !num::Zero::is_zero(&product) {
            return Err(Error::ProductCondition {
                product: product.to_string(),
            });
        }
        let m = self.presentation.ngens();
        Ok(m - 1 - self.rank_at(t))
    }
}

/// Depth of `t` on a central arrangement (builds a fresh oracle; use
/// [`DepthOracle`] directly to evaluate many characters).
pub fn depth_at_character(arr: &Arrangement, t: &Character) -> Result<usize> {
    DepthOracle::new(arr)?.depth(t)
}

/// Does the character lie in the degree-`d` jump locus? Recomputes the
/// depth exactly from scratch.
pub fn verify_point(arr: &Arrangement, t: &Character, d: usize) -> Result<bool> {
    Ok(depth_at_character(arr, t)? >= d)
}

/// Exhaustive depth scan over a finite set of characters: the subgroup
/// generated by `generators` together with, for each coset, its translate
/// times the torsion points of order dividing `order` along the coset's
/// directions. Only characters satisfying the product condition are
/// evaluated. Returns the characters of depth at least `d_min`, sorted,
/// with their depths.
pub fn scan_points(
    arr: &Arrangement,
    generators: &[Character],
    cosets: &[TorusCoset],
    order: u32,
    d_min: usize,
    budget: u64,
) -> Result<Vec<(Character, usize)>> {
    let n = arr.n();
    // The generating set: the supplied characters plus every character of
    // order dividing `order` on each supplied coset.
    let mut gens: Vec<Character> = Vec::new();
    for g in generators {
        if g.len() != n {
            return Err(Error::invalid("scan generator of wrong length"));
        }
        gens.push(g.clone());
    }
    for coset in cosets {
        if coset.n() != n {
            return Err(Error::invalid("scan coset of wrong length"));
        }
        let rho = coset.translate_witness();
        let dirs = coset.direction_basis();
        let r = dirs.len();
        let mut digits = vec![0u32; r];
        loop {
            let mut t = rho.clone();
            for (z, row) in digits.iter().zip(&dirs) {
                let step = Character::from_exponents_at_order(row, order, *z as i64);
                t = t.mul(&step);
            }
            if gens.len() as u64 > budget {
                return Err(Error::BudgetExceeded {
                    kind: BudgetKind::ScanPoints,
                    limit: budget,
                });
            }
            gens.push(t);
            let mut i = 0;
            while i < r {
                digits[i] += 1;
                if digits[i] < order {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
    }
    // Close into the full (finite, torsion) subgroup they generate.
    let mut points: BTreeSet<Character> = BTreeSet::new();
    points.insert(Character::identity(n));
    let mut frontier: Vec<Character> = points.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let q = p.mul(g);
            if points.insert(q.clone()) {
                if points.len() as u64 > budget {
                    return Err(Error::BudgetExceeded {
                        kind: BudgetKind::ScanPoints,
                        limit: budget,
                    });
                }
                frontier.push(q);
            }
        }
    }
    let oracle = DepthOracle::new(arr)?;
    let candidates: Vec<Character> = points
        .into_iter()
        .filter(|t| t.is_identity() || num::Zero::is_zero(&t.product_rotation()))
        .collect();
    let depths: Vec<usize> = candidates
        .par_iter()
        .map(|t| oracle.depth(t))
        .collect::<Result<Vec<usize>>>()?;
    let out: Vec<(Character, usize)> = candidates
        .into_iter()
        .zip(depths)
        .filter(|(_, d)| *d >= d_min)
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;

    fn load(name: &str) -> Arrangement {
        let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
        Arrangement::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn chr(csv: &str) -> Character {
        Character::from_csv(csv).unwrap()
    }

    #[test]
    fn identity_depth_is_the_number_of_planes() {
        let arr = load("deleted-b3");
        assert_eq!(depth_at_character(&arr, &Character::identity(8)).unwrap(), 8);
    }

    #[test]
    fn product_condition_is_enforced() {
        let arr = load("a3");
        // (-1, 1, 1, 1, 1, 1) has product -1.
        let t = chr("1/2,0,0,0,0,0");
        assert!(matches!(
            depth_at_character(&arr, &t),
            Err(Error::ProductCondition { .. })
        ));
    }

    #[test]
    fn non_fano_order_two_point_has_depth_two() {
        let arr = load("non-fano");
        // (1,-1,-1,1,-1,-1,1): the isolated point of the second jump locus.
        let t = chr("0,1/2,1/2,0,1/2,1/2,0");
        let oracle = DepthOracle::new(&arr).unwrap();
        assert_eq!(oracle.presentation().ngens(), 6);
        assert_eq!(oracle.rank_at(&t), 3);
        assert_eq!(oracle.depth(&t).unwrap(), 2);
    }

    #[test]
    fn deleted_b3_translated_point_has_depth_one() {
        let arr = load("deleted-b3");
        // (i,i,i,i,-1,-1,-1,-1): on the translated torus but on no
        // component through the identity.
        let t = chr("1/4,1/4,1/4,1/4,1/2,1/2,1/2,1/2");
        assert_eq!(depth_at_character(&arr, &t).unwrap(), 1);
    }

    #[test]
    fn deleted_b3_intersection_points_have_depth_two() {
        let arr = load("deleted-b3");
        let oracle = DepthOracle::new(&arr).unwrap();
        let rho1 = chr("0,1/2,1/2,0,0,1/2,0,1/2");
        let rho2 = chr("1/2,0,0,1/2,0,1/2,0,1/2");
        assert_eq!(oracle.depth(&rho1).unwrap(), 2);
        assert_eq!(oracle.depth(&rho2).unwrap(), 2);
    }

    #[test]
    fn generic_order_seven_point_has_depth_zero() {
        let arr = load("a3");
        // Exponents (1,2,3,5,4,6)/7 sum to 21/7 = 3, an integer.
        let t = chr("1/7,2/7,3/7,5/7,4/7,6/7");
        assert_eq!(depth_at_character(&arr, &t).unwrap(), 0);
    }

    #[test]
    fn depth_is_independent_of_the_decone() {
        let arr = load("deleted-b3");
        let chart: ZMat = vec![
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(-5)],
            vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(-1)],
        ];
        let recorded = DepthOracle::with_decone(&arr, 5, Some(&chart), None).unwrap();
        let elsewhere = DepthOracle::with_decone(&arr, 0, None, None).unwrap();
        let canonical = DepthOracle::new(&arr).unwrap();
        for csv in [
            "1/4,1/4,1/4,1/4,1/2,1/2,1/2,1/2",
            "0,1/2,1/2,0,0,1/2,0,1/2",
            "1/3,2/3,1/3,2/3,2/3,0,1/3,0",
        ] {
            let t = chr(csv);
            let d = canonical.depth(&t).unwrap();
            assert_eq!(recorded.depth(&t).unwrap(), d);
            assert_eq!(elsewhere.depth(&t).unwrap(), d);
        }
    }

    #[test]
    fn two_torsion_scan_of_braid_components_finds_only_the_identity() {
        let arr = load("a3");
        let comps =
            crate::resonance::resonance_components(&arr, 1, 1_000_000).unwrap();
        assert_eq!(comps.len(), 5);
        let cosets: Vec<TorusCoset> = comps
            .iter()
            .map(|c| TorusCoset::from_directions(6, &c.basis, &Character::identity(6)))
            .collect();
        let hits = scan_points(&arr, &[], &cosets, 2, 2, 10_000).unwrap();
        assert_eq!(hits.len(), 1);
        assert!(hits[0].0.is_identity());
        assert_eq!(hits[0].1, 6);
    }

    #[test]
    fn scan_budget_is_enforced() {
        let arr = load("a3");
        let full = TorusCoset::full(6);
        let err = scan_points(&arr, &[], &[full], 4, 0, 100).unwrap_err();
        assert!(matches!(
            err,
            Error::BudgetExceeded {
                kind: BudgetKind::ScanPoints,
                ..
            }
        ));
    }
}
