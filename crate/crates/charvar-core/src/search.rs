//! Search for torsion-translated positive-dimensional components of the
//! jump loci.
//!
//! Candidates come from sub-arrangement patterns: every embedding of a
//! pattern arrangement carrying a known translated component pulls that
//! component's coset into the target (coordinates off the image are pinned
//! to `1`), and every torsion retranslation of the pulled-back coset up to
//! a given order is certified exactly against the target's Alexander
//! matrix. Certified cosets contained in a component through the identity
//! (a local torus or a partition component) are discarded — they are not
//! new components — and the survivors are deduplicated and reported with
//! their certificates.

use num::bigint::BigInt;
use num::Zero;
use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::certify::{certify_coset, prescreen_rank, Certificate};
use crate::character::Character;
use crate::coset::TorusCoset;
use crate::cyclo::Rat;
use crate::depth::DepthOracle;
use crate::error::{BudgetKind, Error, Result};
use crate::resonance::resonance_components;
use crate::subarr::find_subarrangements;

/// A certified translated component found by the search.
#[derive(Debug, Clone)]
pub struct SearchHit {
    /// The certified coset.
    pub coset: TorusCoset,
    /// Its exact certificate at the searched depth.
    pub certificate: Certificate,
    /// One pattern embedding that produced it (pattern plane -> target
    /// plane).
    pub embedding: Vec<usize>,
    /// Sorted image of the embedding: the support of the component.
    pub support: Vec<usize>,
}

/// The eight-plane arrangement with the smallest known translated
/// component, together with that component: a line of order-two torsion
/// characters `(t, -1/t, -1/t, t, t^2, -1, 1/t^2, -1)`.
pub fn default_pattern() -> (Arrangement, TorusCoset) {
    let forms: Vec<Vec<BigInt>> = [
        [1i64, 0, -1],
        [0, 1, -1],
        [1, 0, 0],
        [0, 1, 0],
        [1, -1, 1],
        [0, 0, 1],
        [1, -1, -1],
        [1, -1, 0],
    ]
    .iter()
    .map(|f| f.iter().map(|&x| BigInt::from(x)).collect())
    .collect();
    let arr = Arrangement {
        ambient_dim: 3,
        central: true,
        forms,
        labels: (1..=8).map(|i| format!("H{i}")).collect(),
    };
    let rho = Character::from_rotations(
        [0, 1, 1, 0, 0, 1, 0, 1]
            .iter()
            .map(|&x| Rat::new(BigInt::from(x), BigInt::from(2)))
            .collect(),
    );
    let dir: Vec<Vec<BigInt>> = vec![[1i64, -1, -1, 1, 2, 0, -2, 0]
        .iter()
        .map(|&x| BigInt::from(x))
        .collect()];
    let coset = TorusCoset::from_directions(8, &dir, &rho);
    (arr, coset)
}

/// Enumerate the torsion characters supported on `support` with order
/// dividing `order` and product one, in a fixed counter order.
fn retranslations(n: usize, support: &[usize], order: u32, budget: u64) -> Result<Vec<Character>> {
    let k = support.len();
    assert!(k >= 1);
    let total = (order as u64)
        .checked_pow(k as u32 - 1)
        .filter(|&t| t <= budget)
        .ok_or(Error::BudgetExceeded {
            kind: BudgetKind::ScanPoints,
            limit: budget,
        })?;
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0u32; k - 1];
    loop {
        let mut rots = vec![Rat::zero(); n];
        let mut sum = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            rots[support[i]] = Rat::new(BigInt::from(d), BigInt::from(order));
            sum += d as u64;
        }
        let last = (order as u64 - sum % order as u64) % order as u64;
        rots[support[k - 1]] = Rat::new(BigInt::from(last), BigInt::from(order));
        out.push(Character::from_rotations(rots));
        let mut i = 0;
        while i < k - 1 {
            digits[i] += 1;
            if digits[i] < order {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == k - 1 {
            break;
        }
    }
    Ok(out)
}

/// Search the degree-`d` locus of `arr` for torsion-translated components
/// modeled on the given patterns. Returns certified components not
/// contained in any component through the identity, sorted by support,
/// lattice, and translate.
#[allow(clippy::too_many_arguments)]
pub fn search_translated(
    arr: &Arrangement,
    patterns: &[(&Arrangement, &TorusCoset)],
    d: usize,
    max_order: u32,
    seed: u64,
    trials: u32,
    match_budget: u64,
    partition_budget: u64,
    scan_budget: u64,
) -> Result<Vec<SearchHit>> {
    let n = arr.n();
    let oracle = DepthOracle::new(arr)?;
    let bound = oracle.presentation().ngens() - 1 - d;
    let through_identity: Vec<TorusCoset> = resonance_components(arr, d, partition_budget)?
        .iter()
        .map(|c| TorusCoset::from_directions(n, &c.basis, &Character::identity(n)))
        .collect();
    // Enumerate every distinct pushed-forward candidate first (cheap,
    // sequential, deterministic), then certify the candidates in parallel
    // and merge back in enumeration order.
    let mut candidates: Vec<(TorusCoset, Vec<usize>, Vec<usize>)> = Vec::new();
    for (pattern, coset) in patterns {
        let dirs = coset.direction_basis();
        let rho = coset.translate_witness();
        for sigma in find_subarrangements(arr, pattern, match_budget)? {
            let mut support = sigma.clone();
            support.sort_unstable();
            // Push the pattern coset forward along the embedding.
            let mut big_dirs: Vec<Vec<BigInt>> = Vec::new();
            for row in &dirs {
                let mut r = vec![BigInt::zero(); n];
                for (i, &target) in sigma.iter().enumerate() {
                    r[target] = row[i].clone();
                }
                big_dirs.push(r);
            }
            let mut base_rots = vec![Rat::zero(); n];
            for (i, &target) in sigma.iter().enumerate() {
                base_rots[target] = rho.rotations()[i].clone();
            }
            let base = Character::from_rotations(base_rots);
            for tau in retranslations(n, &support, max_order, scan_budget)? {
                let candidate =
                    TorusCoset::from_directions(n, &big_dirs, &base.mul(&tau));
                if candidates.iter().any(|(c, _, _)| *c == candidate) {
                    continue;
                }
                candidates.push((candidate, sigma.clone(), support.clone()));
            }
        }
    }
    let evaluated: Vec<Option<SearchHit>> = candidates
        .into_par_iter()
        .map(|(candidate, sigma, support)| -> Result<Option<SearchHit>> {
            // Cheap sound rejection before the exact elimination.
            if prescreen_rank(&oracle, &candidate, seed, trials)? > bound {
                return Ok(None);
            }
            let certificate = certify_coset(&oracle, &candidate, d, seed, trials)?;
            if !certificate.certified {
                return Ok(None);
            }
            if through_identity.iter().any(|t| candidate.is_subset(t)) {
                return Ok(None);
            }
            Ok(Some(SearchHit {
                coset: candidate,
                certificate,
                embedding: sigma,
                support,
            }))
        })
        .collect::<Result<Vec<Option<SearchHit>>>>()?;
    let hits: Vec<SearchHit> = evaluated.into_iter().flatten().collect();
    // Keep only maximal cosets (a certified coset inside a larger
    // certified one is not a separate component).
    let keep: Vec<bool> = hits
        .iter()
        .map(|h| {
            !hits
                .iter()
                .any(|o| o.coset != h.coset && h.coset.is_subset(&o.coset))
        })
        .collect();
    let mut hits: Vec<SearchHit> = hits
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(h, _)| h)
        .collect();
    hits.sort_by(|a, b| {
        a.support
            .cmp(&b.support)
            .then_with(|| a.coset.lattice().cmp(b.coset.lattice()))
            .then_with(|| a.coset.theta().cmp(b.coset.theta()))
    });
    Ok(hits)
}

/// Search with the default pattern and budgets.
pub fn search_translated_default(
    arr: &Arrangement,
    d: usize,
    max_order: u32,
    seed: u64,
    trials: u32,
) -> Result<Vec<SearchHit>> {
    let (pattern, coset) = default_pattern();
    search_translated(
        arr,
        &[(&pattern, &coset)],
        d,
        max_order,
        seed,
        trials,
        crate::subarr::DEFAULT_MATCH_BUDGET,
        crate::resonance::DEFAULT_PARTITION_BUDGET,
        crate::depth::DEFAULT_SCAN_BUDGET,
    )
}
