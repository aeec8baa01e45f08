//! Degree-one resonance components of a central arrangement: local
//! components from multiple points and non-local components from neighborly
//! partitions of sub-arrangements.
//!
//! A partition `P = (p_1 | ... | p_q)` of a plane set `S` is *neighborly*
//! when every codimension-two trace `T` (a flat of the full arrangement cut
//! down to `S`, `|T| >= 2`) satisfies: a block containing all but at most
//! one element of `T` contains all of `T`. Concretely, a 2-element trace
//! must be monochromatic, and a larger trace must be monochromatic or have
//! at most `|T| - 2` elements in any block.
//!
//! A neighborly partition cuts out the subspace of tangent vectors
//! supported on `S`, with zero total sum and zero sum over every trace not
//! inside a single block; when that subspace has dimension at least two it
//! is a resonance component. Local components are the single-flat special
//! case. Enumeration is exhaustive over supports and three-block partitions
//! via depth-first coloring with exact feasibility pruning, under a node
//! budget.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::arrangement::Arrangement;
use crate::cyclo::Rat;
use crate::error::{BudgetKind, Error, Result};
use crate::intlin::{hermite_normal_form, kernel_basis, zmat_rank, ZMat};
use crate::osalg::resonance_depth;

/// Default ceiling on coloring nodes explored while enumerating partitions.
pub const DEFAULT_PARTITION_BUDGET: u64 = 1_000_000;

/// How a resonance component arises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    /// The local component of one multiple point (flat of size >= 3).
    Local {
        /// Sorted zero-based planes through the point.
        flat: Vec<usize>,
    },
    /// The component of a neighborly partition of a sub-arrangement.
    Partition {
        /// Blocks of sorted zero-based plane indices, ordered by minimum.
        blocks: Vec<Vec<usize>>,
    },
}

/// A linear subspace component of the first resonance variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceComponent {
    /// Sorted planes on which coordinates may be nonzero.
    pub support: Vec<usize>,
    /// Provenance (flat or partition).
    pub kind: ComponentKind,
    /// Saturated integer basis of the subspace, in Hermite normal form.
    pub basis: ZMat,
    /// Dimension of the subspace.
    pub dim: usize,
}

impl ResonanceComponent {
    /// A readable name: the flat or partition in 1-based plane numbers.
    pub fn name(&self) -> String {
        match &self.kind {
            ComponentKind::Local { flat } => format!(
                "local({})",
                flat.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            ComponentKind::Partition { blocks } => format!(
                "partition({})",
                blocks
                    .iter()
                    .map(|b| {
                        b.iter()
                            .map(|i| (i + 1).to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect::<Vec<_>>()
                    .join(" | ")
            ),
        }
    }

    /// Does this component's subspace contain the other's?
    pub fn contains_subspace(&self, other: &ResonanceComponent) -> bool {
        let mut stacked = self.basis.clone();
        stacked.extend(other.basis.iter().cloned());
        zmat_rank(&stacked) == self.dim
    }

    /// A rational point of the subspace in general position (basis rows
    /// combined with spread-out weights).
    pub fn sample_rational(&self) -> Vec<Rat> {
        let n = self.basis[0].len();
        let mut v = vec![Rat::zero(); n];
        let mut w = BigInt::one();
        for row in &self.basis {
            for (i, x) in row.iter().enumerate() {
                v[i] += Rat::from(x * &w);
            }
            w *= BigInt::from(3);
        }
        v
    }
}

/// The subspace of tangent vectors supported on `support` satisfying the
/// given sum constraints, as a saturated Hermite-form basis.
fn cut_subspace(n: usize, support: &[usize], sum_sets: &[Vec<usize>]) -> ZMat {
    let mut rows: ZMat = Vec::new();
    for i in 0..n {
        if !support.contains(&i) {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            rows.push(r);
        }
    }
    for set in sum_sets {
        let mut r = vec![BigInt::zero(); n];
        for &i in set {
            r[i] = BigInt::one();
        }
        rows.push(r);
    }
    hermite_normal_form(&kernel_basis(&rows))
}

/// The local components: one per flat with at least three planes, of
/// dimension `|flat| - 1`.
pub fn local_components(arr: &Arrangement) -> Vec<ResonanceComponent> {
    arr.flats_codim2()
        .into_iter()
        .filter(|f| f.len() >= 3)
        .map(|flat| {
            let basis = cut_subspace(arr.n(), &flat, &[flat.clone()]);
            let dim = basis.len();
            debug_assert_eq!(dim, flat.len() - 1);
            ResonanceComponent {
                support: flat.clone(),
                kind: ComponentKind::Local { flat },
                basis,
                dim,
            }
        })
        .collect()
}

/// The traces of the full arrangement's codim-2 flats on a support set:
/// sorted intersections of size >= 2 (these are exactly the flats of the
/// sub-arrangement).
fn traces_on(flats: &[Vec<usize>], support: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = flats
        .iter()
        .map(|f| {
            f.iter()
                .copied()
                .filter(|i| support.contains(i))
                .collect::<Vec<usize>>()
        })
        .filter(|t| t.len() >= 2)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Is the partition (given as a block index per support plane) neighborly
/// for these traces?
fn is_neighborly(support: &[usize], block_of: &BTreeMap<usize, usize>, traces: &[Vec<usize>]) -> bool {
    let _ = support;
    traces.iter().all(|t| {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for i in t {
            *counts.entry(block_of[i]).or_insert(0) += 1;
        }
        counts.len() == 1 || counts.values().all(|&c| c + 2 <= t.len())
    })
}

/// The subspace of a neighborly partition: supported on the union of the
/// blocks, zero total sum, zero sum over every trace not inside one block.
/// Returns the component when the partition is neighborly and the subspace
/// has dimension at least 2.
pub fn partition_component(arr: &Arrangement, blocks: &[Vec<usize>]) -> Option<ResonanceComponent> {
    let mut support: Vec<usize> = blocks.iter().flatten().copied().collect();
    support.sort_unstable();
    let block_of: BTreeMap<usize, usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(j, b)| b.iter().map(move |&i| (i, j)))
        .collect();
    assert_eq!(block_of.len(), support.len(), "blocks must be disjoint");
    let flats = arr.flats_codim2();
    let traces = traces_on(&flats, &support);
    if !is_neighborly(&support, &block_of, &traces) {
        return None;
    }
    let mut sums: Vec<Vec<usize>> = vec![support.clone()];
    for t in &traces {
        let mono = t.iter().map(|i| block_of[i]).collect::<std::collections::HashSet<_>>();
        if mono.len() > 1 {
            sums.push(t.clone());
        }
    }
    let basis = cut_subspace(arr.n(), &support, &sums);
    let dim = basis.len();
    if dim < 2 {
        return None;
    }
    let mut blocks: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort();
    Some(ResonanceComponent {
        support,
        kind: ComponentKind::Partition { blocks },
        basis,
        dim,
    })
}

/// Depth-first colorer shared by the two enumeration entry points. Planes
/// are colored in order; `None` in a slot means the plane is left out of
/// the support (only allowed when `allow_out`). Colors form a growth
/// string: color `j` may be used only after `0..j`.
struct Colorer<'a> {
    planes: &'a [usize],
    flats: &'a [Vec<usize>],
    flats_by_plane: Vec<Vec<usize>>,
    allow_out: bool,
    blocks_wanted: usize,
    budget: u64,
    nodes: u64,
    state: BTreeMap<usize, Option<usize>>, // plane -> Some(color) | None (out)
    found: Vec<Vec<Vec<usize>>>,
}

impl<'a> Colorer<'a> {
    fn new(
        planes: &'a [usize],
        flats: &'a [Vec<usize>],
        allow_out: bool,
        blocks_wanted: usize,
        budget: u64,
    ) -> Self {
        let flats_by_plane = planes
            .iter()
            .map(|&p| {
                flats
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.contains(&p))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        Colorer {
            planes,
            flats,
            flats_by_plane,
            allow_out,
            blocks_wanted,
            budget,
            nodes: 0,
            state: BTreeMap::new(),
            found: Vec::new(),
        }
    }

    /// Can the coloring of this flat still be completed to a legal trace?
    fn flat_feasible(&self, flat: &[Vec<usize>], k: usize) -> bool {
        let f = &flat[k];
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut undecided = 0usize;
        for i in f {
            if !self.planes.contains(i) {
                continue; // permanently out of the universe
            }
            match self.state.get(i) {
                Some(Some(c)) => *counts.entry(*c).or_insert(0) += 1,
                Some(None) => {}
                None => undecided += 1,
            }
        }
        let m: usize = counts.values().sum();
        if m <= 1 || counts.len() <= 1 {
            return true;
        }
        let c_max = *counts.values().max().unwrap();
        c_max + 2 <= m + undecided
    }

    fn descend(&mut self, pos: usize, used: usize) -> Result<()> {
        if pos == self.planes.len() {
            if used == self.blocks_wanted {
                let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); used];
                for (&p, s) in &self.state {
                    if let Some(c) = s {
                        blocks[*c].push(p);
                    }
                }
                self.found.push(blocks);
            }
            return Ok(());
        }
        let p = self.planes[pos];
        let limit = (used + 1).min(self.blocks_wanted);
        for choice in 0..=limit {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    kind: BudgetKind::PartitionNodes,
                    limit: self.budget,
                });
            }
            let (slot, next_used) = if choice == limit {
                if !self.allow_out {
                    continue;
                }
                (None, used)
            } else {
                (Some(choice), used.max(choice + 1))
            };
            self.state.insert(p, slot);
            let ok = self.flats_by_plane[pos]
                .clone()
                .iter()
                .all(|&k| self.flat_feasible(self.flats, k));
            if ok {
                self.descend(pos + 1, next_used)?;
            }
            self.state.remove(&p);
        }
        Ok(())
    }
}

/// All neighborly partitions of the sub-arrangement on `support` into
/// exactly `blocks` blocks, each given as blocks of sorted plane indices
/// ordered by minimum element.
pub fn neighborly_partitions(
    arr: &Arrangement,
    support: &[usize],
    blocks: usize,
    budget: u64,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut support = support.to_vec();
    support.sort_unstable();
    support.dedup();
    let flats = arr.flats_codim2();
    let mut colorer = Colorer::new(&support, &flats, false, blocks, budget);
    colorer.descend(0, 0)?;
    Ok(colorer.found)
}

/// All components of the degree-`d` resonance variety: local components
/// and three-block neighborly-partition components over all supports,
/// deduplicated by subspace, strict containments removed, filtered to
/// dimension >= d + 1, each verified pointwise against the cohomology-ring
/// rank computation.
pub fn resonance_components(
    arr: &Arrangement,
    d: usize,
    budget: u64,
) -> Result<Vec<ResonanceComponent>> {
    assert!(d >= 1, "resonance depth must be at least 1");
    let n = arr.n();
    let planes: Vec<usize> = (0..n).collect();
    let flats = arr.flats_codim2();
    let mut components = local_components(arr);
    let mut colorer = Colorer::new(&planes, &flats, true, 3, budget);
    colorer.descend(0, 0)?;
    for blocks in colorer.found {
        if let Some(c) = partition_component(arr, &blocks) {
            components.push(c);
        }
    }
    // Deduplicate by subspace; locals come first so they win the name.
    let mut unique: Vec<ResonanceComponent> = Vec::new();
    for c in components {
        if !unique.iter().any(|u| u.basis == c.basis) {
            unique.push(c);
        }
    }
    // Remove subspaces strictly contained in another.
    let keep: Vec<bool> = unique
        .iter()
        .map(|c| {
            !unique
                .iter()
                .any(|u| u.basis != c.basis && u.contains_subspace(c))
        })
        .collect();
    let mut out: Vec<ResonanceComponent> = unique
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| c)
        .filter(|c| c.dim >= d + 1)
        .collect();
    for c in &out {
        let depth = resonance_depth(arr, &c.sample_rational());
        assert!(
            depth >= d,
            "component {} fails pointwise verification: depth {depth} < {d}",
            c.name()
        );
    }
    out.sort_by(|a, b| a.support.cmp(&b.support).then_with(|| a.basis.cmp(&b.basis)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn central(forms: &[[i64; 3]]) -> Arrangement {
        Arrangement {
            ambient_dim: 3,
            central: true,
            forms: forms
                .iter()
                .map(|f| f.iter().map(|&x| bi(x)).collect())
                .collect(),
            labels: (1..=forms.len()).map(|i| format!("H{i}")).collect(),
        }
    }

    fn braid6() -> Arrangement {
        central(&[
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, -1, 0],
            [1, 0, -1],
            [0, 1, -1],
        ])
    }

    /// Seven planes: z, x, y-z, x-y, x-z, y, x+y-z.
    fn nonfano7() -> Arrangement {
        central(&[
            [0, 0, 1],
            [1, 0, 0],
            [0, 1, -1],
            [1, -1, 0],
            [1, 0, -1],
            [0, 1, 0],
            [1, 1, -1],
        ])
    }

    #[test]
    fn local_components_of_braid6() {
        let locals = local_components(&braid6());
        assert_eq!(locals.len(), 4);
        assert!(locals.iter().all(|c| c.dim == 2));
        let supports: Vec<Vec<usize>> = locals.iter().map(|c| c.support.clone()).collect();
        assert_eq!(
            supports,
            vec![vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5], vec![3, 4, 5]]
        );
    }

    #[test]
    fn braid6_has_one_essential_partition() {
        let parts = neighborly_partitions(&braid6(), &[0, 1, 2, 3, 4, 5], 3, 100_000).unwrap();
        assert_eq!(parts, vec![vec![vec![0, 5], vec![1, 4], vec![2, 3]]]);
        let c = partition_component(&braid6(), &parts[0]).unwrap();
        assert_eq!(c.dim, 2);
        // The subspace {(s, t, -s-t, -s-t, t, s)}.
        let expect = hermite_normal_form(&vec![
            vec![bi(1), bi(0), bi(-1), bi(-1), bi(0), bi(1)],
            vec![bi(0), bi(1), bi(-1), bi(-1), bi(1), bi(0)],
        ]);
        assert_eq!(c.basis, expect);
        assert_eq!(c.name(), "partition(1 6 | 2 5 | 3 4)");
    }

    #[test]
    fn splitting_a_triple_is_not_neighborly() {
        // {0,1,3} is a flat; separating 0,1 from 3 while keeping all three
        // in the support violates the neighborly rule.
        let blocks = vec![vec![0, 1], vec![3, 4], vec![2, 5]];
        assert!(partition_component(&braid6(), &blocks).is_none());
    }

    #[test]
    fn braid6_resonance_counts() {
        let r1 = resonance_components(&braid6(), 1, 1_000_000).unwrap();
        assert_eq!(r1.len(), 5);
        assert_eq!(r1.iter().filter(|c| matches!(c.kind, ComponentKind::Local { .. })).count(), 4);
        assert!(r1.iter().all(|c| c.dim == 2));
        // No component has dim >= 3, so the degree-2 variety is just {0}.
        let r2 = resonance_components(&braid6(), 2, 1_000_000).unwrap();
        assert!(r2.is_empty());
    }

    #[test]
    fn nonfano_resonance_counts() {
        let arr = nonfano7();
        let r1 = resonance_components(&arr, 1, 1_000_000).unwrap();
        assert_eq!(r1.len(), 9);
        let partitions: Vec<&ResonanceComponent> = r1
            .iter()
            .filter(|c| matches!(c.kind, ComponentKind::Partition { .. }))
            .collect();
        assert_eq!(partitions.len(), 3);
        let mut supports: Vec<Vec<usize>> =
            partitions.iter().map(|c| c.support.clone()).collect();
        supports.sort();
        assert_eq!(
            supports,
            vec![
                vec![0, 1, 2, 3, 4, 5],
                vec![0, 1, 2, 4, 5, 6],
                vec![1, 2, 3, 4, 5, 6],
            ]
        );
        assert!(partitions.iter().all(|c| c.dim == 2));
    }

    #[test]
    fn sub_pencils_are_absorbed_by_locals() {
        // A pencil of four planes: the only component is the local one of
        // dimension 3; three-block partitions of sub-pencils must not leak
        // through as separate components.
        let arr = central(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0]]);
        let r1 = resonance_components(&arr, 1, 100_000).unwrap();
        assert_eq!(r1.len(), 1);
        assert_eq!(r1[0].dim, 3);
        assert!(matches!(r1[0].kind, ComponentKind::Local { .. }));
        let r2 = resonance_components(&arr, 2, 100_000).unwrap();
        assert_eq!(r2.len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let err = resonance_components(&braid6(), 1, 10).unwrap_err();
        assert!(matches!(
            err,
            Error::BudgetExceeded {
                kind: BudgetKind::PartitionNodes,
                ..
            }
        ));
    }
}
