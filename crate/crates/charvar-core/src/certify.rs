//! Exact certification of candidate components: does a torsion-translated
//! subtorus lie in the degree-`d` jump locus?
//!
//! A coset is certified by substituting its parametrization into the
//! Alexander matrix of the deconed presentation and computing the exact
//! rank over the fraction field of a cyclotomic Laurent ring: the coset
//! lies in the locus iff the generic rank is at most `m - 1 - d` (with `m`
//! generators). A randomized finite-field evaluation gives a cheap sound
//! rejection first — a modular specialization can only lower the rank, so a
//! modular rank above the threshold already disproves membership — and the
//! fraction-free elimination then settles the answer unconditionally.

use num::bigint::BigInt;
use num::Zero;

use crate::arrangement::Arrangement;
use crate::character::Character;
use crate::coset::TorusCoset;
use crate::cyclo::{default_oracle_prime, Rat};
use crate::depth::DepthOracle;
use crate::error::{Error, Result};

/// Seeded trial count for the finite-field prescreen.
pub const DEFAULT_PRESCREEN_TRIALS: u32 = 3;

/// The outcome of certifying one coset at one depth.
#[derive(Debug, Clone)]
pub struct Certificate {
    /// Whether the coset lies in the degree-`d` jump locus.
    pub certified: bool,
    /// The depth that was tested.
    pub d: usize,
    /// Exact generic rank of the substituted Alexander matrix.
    pub rank: usize,
    /// Number of generators of the deconed presentation.
    pub ngens: usize,
    /// Exact depth at a generic point of the coset: `ngens - 1 - rank`.
    pub generic_depth: usize,
    /// Rank found by the finite-field prescreen (always `<= rank`).
    pub prescreen_rank: usize,
    /// Cyclotomic order of the translate.
    pub order: u32,
    /// Dimension of the coset.
    pub dim: usize,
    /// Per-plane parametrization: rotation number of the translate and the
    /// exponents of the free parameters (`t_i = rho_i * s^col_i`).
    pub parametrization: Vec<(Rat, Vec<BigInt>)>,
}

/// Check that every character on the coset satisfies the product
/// condition, and return its translate and direction basis.
fn coset_on_product_torus(coset: &TorusCoset) -> Result<(Character, Vec<Vec<BigInt>>)> {
    let rho = coset.translate_witness();
    let product = rho.product_rotation();
    if !product.is_zero() {
        return Err(Error::ProductCondition {
            product: product.to_string(),
        });
    }
    let dirs = coset.direction_basis();
    for (k, row) in dirs.iter().enumerate() {
        let s: BigInt = row.iter().sum();
        if !s.is_zero() {
            return Err(Error::invalid(format!(
                "coset leaves the product-one torus: direction {} has coordinate sum {s}",
                k + 1
            )));
        }
    }
    Ok((rho, dirs))
}

/// The substituted Alexander matrix of a coset: matrix variables become
/// monomials in the coset's free parameters, scaled by the translate.
fn substituted_matrix(
    oracle: &DepthOracle,
    rho: &Character,
    dirs: &[Vec<BigInt>],
) -> crate::lmatrix::LaurentMatrix {
    let order = rho.order();
    let point = rho.to_point(order);
    let images: Vec<(Vec<i64>, crate::cyclo::Cyclotomic)> = oracle
        .gen_planes()
        .iter()
        .map(|&p| {
            let exps: Vec<i64> = dirs
                .iter()
                .map(|row| i64::try_from(&row[p]).expect("exponent fits i64"))
                .collect();
            (exps, point[p].clone())
        })
        .collect();
    oracle.matrix().substitute_monomials(dirs.len(), order, &images)
}

/// Finite-field lower bound for the generic rank of the substituted matrix
/// (a cheap sound filter: returning more than `ngens - 1 - d` disproves
/// membership in the degree-`d` locus).
pub fn prescreen_rank(
    oracle: &DepthOracle,
    coset: &TorusCoset,
    seed: u64,
    trials: u32,
) -> Result<usize> {
    let (rho, dirs) = coset_on_product_torus(coset)?;
    let sub = substituted_matrix(oracle, &rho, &dirs);
    let p = default_oracle_prime(sub.order());
    Ok(sub.rank_finite_field(p, seed, trials))
}

/// Certify whether the coset lies in the degree-`d` jump locus, exactly.
pub fn certify_coset(
    oracle: &DepthOracle,
    coset: &TorusCoset,
    d: usize,
    seed: u64,
    trials: u32,
) -> Result<Certificate> {
    certify_coset_with(oracle, coset, d, None, seed, trials)
}

/// [`certify_coset`] with an explicit prescreen prime (which must be
/// congruent to 1 modulo the cyclotomic order of the substituted matrix, so
/// the field carries the needed roots of unity).
pub fn certify_coset_with(
    oracle: &DepthOracle,
    coset: &TorusCoset,
    d: usize,
    prime: Option<u64>,
    seed: u64,
    trials: u32,
) -> Result<Certificate> {
    if coset.n() != oracle.n() {
        return Err(Error::invalid(format!(
            "coset has {} coordinates, arrangement has {}",
            coset.n(),
            oracle.n()
        )));
    }
    if d == 0 {
        return Err(Error::invalid("certification depth must be at least 1"));
    }
    let (rho, dirs) = coset_on_product_torus(coset)?;
    let sub = substituted_matrix(oracle, &rho, &dirs);
    let p = match prime {
        None => default_oracle_prime(sub.order()),
        Some(p) => {
            if !crate::cyclo::is_prime_u64(p) || p % u64::from(sub.order()) != 1 {
                return Err(Error::invalid(format!(
                    "prescreen prime {p} must be prime and congruent to 1 mod {}",
                    sub.order()
                )));
            }
            p
        }
    };
    let prescreen = sub.rank_finite_field(p, seed, trials);
    let m = oracle.presentation().ngens();
    let bound = m - 1 - d;
    // The prescreen is a lower bound on the rank; the exact elimination
    // settles it (and must agree whenever the prescreen already rejects).
    let rank = if prescreen > bound {
        let exact = sub.rank_fraction_free();
        debug_assert!(exact >= prescreen);
        exact
    } else {
        sub.rank_fraction_free()
    };
    let parametrization: Vec<(Rat, Vec<BigInt>)> = (0..coset.n())
        .map(|i| {
            (
                rho.rotations()[i].clone(),
                dirs.iter().map(|row| row[i].clone()).collect(),
            )
        })
        .collect();
    Ok(Certificate {
        certified: rank <= bound,
        d,
        rank,
        ngens: m,
        generic_depth: m - 1 - rank,
        prescreen_rank: prescreen,
        order: rho.order(),
        dim: coset.dim(),
        parametrization,
    })
}

/// Convenience entry point building a fresh oracle for one arrangement.
pub fn certify_on(
    arr: &Arrangement,
    coset: &TorusCoset,
    d: usize,
    seed: u64,
    trials: u32,
) -> Result<Certificate> {
    certify_coset(&DepthOracle::new(arr)?, coset, d, seed, trials)
}
