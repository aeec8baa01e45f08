//! Embeddings of one arrangement's intersection pattern into another's.
//!
//! An embedding is an injection of plane indices that identifies the
//! codimension-two incidence structures: planes of the pattern lie in a
//! common flat exactly when their images do, within the image set. Extra
//! target planes through the image flats are allowed — the sub-arrangement
//! on the image only sees its own traces.
//!
//! The search is depth-first over assignments in a connectivity-greedy
//! order, pruning with per-plane incidence profiles and exact pairwise
//! trace checks, under a node budget.

use crate::arrangement::Arrangement;
use crate::error::{BudgetKind, Error, Result};

/// Default ceiling on assignment nodes explored while matching.
pub const DEFAULT_MATCH_BUDGET: u64 = 1_000_000;

/// Pairwise flat table: `flat_of[i][j]` is the index of the unique flat
/// containing planes `i` and `j`.
fn pair_table(n: usize, flats: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut t = vec![vec![usize::MAX; n]; n];
    for (k, f) in flats.iter().enumerate() {
        for (a, &i) in f.iter().enumerate() {
            for &j in &f[a + 1..] {
                t[i][j] = k;
                t[j][i] = k;
            }
        }
    }
    t
}

/// Does `sigma` (pattern plane -> target plane) identify the incidence
/// structures? Checked directly from the definition; used to validate
/// search results and in tests.
pub fn is_flat_embedding(pattern: &Arrangement, target: &Arrangement, sigma: &[usize]) -> bool {
    let np = pattern.n();
    if sigma.len() != np {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !sigma.iter().all(|&c| c < target.n() && seen.insert(c)) {
        return false;
    }
    let pf = pair_table(np, &pattern.flats_codim2());
    let tf = pair_table(target.n(), &target.flats_codim2());
    let pflats = pattern.flats_codim2();
    let tflats = target.flats_codim2();
    for i in 0..np {
        for j in (i + 1)..np {
            let fp = &pflats[pf[i][j]];
            let ft = &tflats[tf[sigma[i]][sigma[j]]];
            for k in 0..np {
                if k == i || k == j {
                    continue;
                }
                if fp.contains(&k) != ft.contains(&sigma[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// A processing order for the pattern planes that keeps each new plane
/// incident to as many already-ordered planes as possible.
fn connectivity_order(n: usize, flats: &[Vec<usize>]) -> Vec<usize> {
    let pairs = pair_table(n, flats);
    let degree = |i: usize| flats.iter().filter(|f| f.contains(&i)).map(|f| f.len()).sum::<usize>();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut left: Vec<usize> = (0..n).collect();
    left.sort_by_key(|&i| std::cmp::Reverse(degree(i)));
    order.push(left.remove(0));
    while !left.is_empty() {
        let (best, _) = left
            .iter()
            .enumerate()
            .max_by_key(|(_, &c)| {
                (
                    order.iter().filter(|&&p| pairs[p][c] != usize::MAX).count(),
                    degree(c),
                    std::cmp::Reverse(c),
                )
            })
            .unwrap();
        order.push(left.remove(best));
    }
    order
}

struct Matcher<'a> {
    order: Vec<usize>,
    np: usize,
    pflats: Vec<Vec<usize>>,
    tflats: Vec<Vec<usize>>,
    ppairs: Vec<Vec<usize>>,
    tpairs: Vec<Vec<usize>>,
    /// For each pattern plane, its multiset of incident flat sizes.
    pprofile: Vec<Vec<usize>>,
    tprofile: Vec<Vec<usize>>,
    target_n: usize,
    budget: u64,
    nodes: u64,
    sigma: Vec<usize>, // usize::MAX = unassigned
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
    _phantom: std::marker::PhantomData<&'a ()>,
}

impl<'a> Matcher<'a> {
    /// A pattern plane can only map to a target plane whose incident flats
    /// dominate the pattern plane's: distinct flats map to distinct flats,
    /// never shrinking.
    fn profile_fits(&self, p: usize, c: usize) -> bool {
        let mut have = self.tprofile[c].clone();
        'want: for &s in &self.pprofile[p] {
            // Take the smallest target flat of size >= s.
            for (k, &h) in have.iter().enumerate() {
                if h >= s {
                    have.remove(k);
                    continue 'want;
                }
            }
            return false;
        }
        true
    }

    fn consistent(&self, p: usize, c: usize) -> bool {
        for &q in &self.order {
            let d = self.sigma[q];
            if d == usize::MAX || q == p {
                continue;
            }
            let fp = self.ppairs[p][q];
            let ft = self.tpairs[c][d];
            debug_assert!(fp != usize::MAX && ft != usize::MAX);
            // The traces on the assigned planes must agree.
            for &m in &self.order {
                let e = self.sigma[m];
                if e == usize::MAX || m == p || m == q {
                    continue;
                }
                if self.pflats[fp].contains(&m) != self.tflats[ft].contains(&e) {
                    return false;
                }
            }
        }
        true
    }

    fn descend(&mut self, pos: usize) -> Result<()> {
        if pos == self.np {
            self.found.push(self.sigma.clone());
            return Ok(());
        }
        let p = self.order[pos];
        for c in 0..self.target_n {
            if self.used[c] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    kind: BudgetKind::MatchNodes,
                    limit: self.budget,
                });
            }
            if !self.profile_fits(p, c) || !self.consistent(p, c) {
                continue;
            }
            self.sigma[p] = c;
            self.used[c] = true;
            self.descend(pos + 1)?;
            self.sigma[p] = usize::MAX;
            self.used[c] = false;
        }
        Ok(())
    }
}

/// All embeddings of the pattern's incidence structure into the target,
/// as vectors `sigma` with `sigma[pattern plane] = target plane`, in
/// lexicographic order. Distinct embeddings with the same image are all
/// returned (they pull cosets back differently).
pub fn find_subarrangements(
    target: &Arrangement,
    pattern: &Arrangement,
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    let np = pattern.n();
    let nt = target.n();
    if np > nt {
        return Ok(Vec::new());
    }
    let pflats = pattern.flats_codim2();
    let tflats = target.flats_codim2();
    let profile = |n: usize, flats: &[Vec<usize>]| -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| {
                let mut v: Vec<usize> = flats
                    .iter()
                    .filter(|f| f.contains(&i))
                    .map(|f| f.len())
                    .collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            })
            .collect()
    };
    let mut matcher = Matcher {
        order: connectivity_order(np, &pflats),
        np,
        ppairs: pair_table(np, &pflats),
        tpairs: pair_table(nt, &tflats),
        pprofile: profile(np, &pflats),
        tprofile: profile(nt, &tflats),
        pflats,
        tflats,
        target_n: nt,
        budget,
        nodes: 0,
        sigma: vec![usize::MAX; np],
        used: vec![false; nt],
        found: Vec::new(),
        _phantom: std::marker::PhantomData,
    };
    matcher.descend(0)?;
    let mut found = matcher.found;
    debug_assert!(found.iter().all(|s| is_flat_embedding(pattern, target, s)));
    found.sort();
    Ok(found)
}
