//! Hyperplane arrangements: parsing, validation, intersection data,
//! coning and deconing.
//!
//! A central arrangement lives in `C^3` (or generally `C^l`) and is given by
//! integer linear forms without constant term; an affine line arrangement
//! lives in `C^2` with forms `[a, b, c]` meaning `a u + b v + c = 0`.
//!
//! The codimension-two intersection flats (projective points of a central
//! 3-arrangement, vertices of an affine 2-arrangement) drive everything
//! downstream: resonance algebra, wiring diagrams, subarrangement matching.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::Rat;
use crate::error::{Error, Result};
use crate::intlin::{smith_normal_form, zmat_rank, ZMat};

/// A central hyperplane arrangement over the integers.
#[derive(Debug, Clone)]
pub struct Arrangement {
    /// Ambient dimension (3 for all the built-in examples).
    pub ambient_dim: usize,
    /// Whether the defining forms are homogeneous (no constant column).
    pub central: bool,
    /// One integer covector per hyperplane; length `ambient_dim` when
    /// central, `ambient_dim + 1` (trailing constant) otherwise.
    pub forms: Vec<Vec<BigInt>>,
    /// One display label per hyperplane.
    pub labels: Vec<String>,
}

/// The JSON wire format (coefficients as machine integers).
#[derive(Debug, Serialize, Deserialize)]
struct RawArrangement {
    ambient_dim: usize,
    central: bool,
    forms: Vec<Vec<i64>>,
    labels: Vec<String>,
}

/// An affine line arrangement in `C^2` obtained by deconing, with
/// bookkeeping back to the parent's plane indices.
#[derive(Debug, Clone)]
pub struct AffineArrangement {
    /// Forms `[a, b, c]`: the line `a u + b v + c = 0`.
    pub forms: Vec<Vec<BigInt>>,
    /// Labels carried over from the parent.
    pub labels: Vec<String>,
    /// For each line, the index of the plane it came from.
    pub parent_planes: Vec<usize>,
}

/// A vertex of an affine line arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineVertex {
    /// Exact coordinates.
    pub point: (Rat, Rat),
    /// Sorted indices of the incident lines (into the affine arrangement).
    pub lines: Vec<usize>,
}

impl Arrangement {
    /// Number of hyperplanes.
    pub fn n(&self) -> usize {
        self.forms.len()
    }

    /// Parse and validate from the JSON fixture format.
    pub fn from_json(text: &str) -> Result<Arrangement> {
        let raw: RawArrangement =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad JSON: {e}")))?;
        let arr = Arrangement {
            ambient_dim: raw.ambient_dim,
            central: raw.central,
            forms: raw
                .forms
                .iter()
                .map(|f| f.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            labels: raw.labels,
        };
        arr.validate()?;
        Ok(arr)
    }

    /// Serialize into the JSON wire format (fails if a coefficient does not
    /// fit a machine integer; fixture data always does).
    pub fn to_json(&self) -> String {
        let raw = RawArrangement {
            ambient_dim: self.ambient_dim,
            central: self.central,
            forms: self
                .forms
                .iter()
                .map(|f| f.iter().map(|x| i64::try_from(x).expect("coefficient fits i64")).collect())
                .collect(),
            labels: self.labels.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serialization cannot fail")
    }

    /// Validate shapes, nonzero and pairwise non-proportional forms,
    /// unique labels.
    pub fn validate(&self) -> Result<()> {
        let want = self.ambient_dim + usize::from(!self.central);
        if self.labels.len() != self.forms.len() {
            return Err(Error::invalid("labels and forms must have equal length"));
        }
        for (i, f) in self.forms.iter().enumerate() {
            if f.len() != want {
                return Err(Error::invalid(format!(
                    "form {} has {} entries, expected {want}",
                    i + 1,
                    f.len()
                )));
            }
            let linear_part = if self.central { &f[..] } else { &f[..self.ambient_dim] };
            if linear_part.iter().all(Zero::is_zero) {
                return Err(Error::invalid(format!("form {} has zero linear part", i + 1)));
            }
        }
        for i in 0..self.forms.len() {
            for j in (i + 1)..self.forms.len() {
                if proportional(&self.forms[i], &self.forms[j]) {
                    return Err(Error::invalid(format!(
                        "hyperplanes {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for l in &self.labels {
            if !seen.insert(l) {
                return Err(Error::invalid(format!("duplicate label {l:?}")));
            }
        }
        Ok(())
    }

    /// Rank of the arrangement (of the matrix of linear parts).
    pub fn rank(&self) -> usize {
        let m: ZMat = self
            .forms
            .iter()
            .map(|f| f[..self.ambient_dim].to_vec())
            .collect();
        zmat_rank(&m)
    }

    /// The codimension-two flats of a central arrangement in `C^3`:
    /// maximal sets of planes through a common line, each listed as sorted
    /// zero-based indices, sorted lexicographically, sizes `>= 2`.
    pub fn flats_codim2(&self) -> Vec<Vec<usize>> {
        assert!(self.central && self.ambient_dim == 3, "flats need a central 3-arrangement");
        let mut by_dir: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
        let n = self.n();
        for i in 0..n {
            for j in (i + 1)..n {
                let d = primitive_signed(&cross(&self.forms[i], &self.forms[j]));
                by_dir.entry(d).or_default();
            }
        }
        let keys: Vec<Vec<BigInt>> = by_dir.keys().cloned().collect();
        for d in keys {
            let members: Vec<usize> = (0..n)
                .filter(|&k| dot(&self.forms[k], &d).is_zero())
                .collect();
            by_dir.insert(d, members);
        }
        let mut flats: Vec<Vec<usize>> = by_dir.into_values().collect();
        flats.sort();
        flats.dedup();
        flats
    }

    /// The multiset of codim-2 flat sizes, descending (an isomorphism
    /// invariant used to prescreen subarrangement matching).
    pub fn flat_size_profile(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.flats_codim2().iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// The subarrangement on the given sorted plane indices (labels kept).
    pub fn restrict(&self, planes: &[usize]) -> Arrangement {
        Arrangement {
            ambient_dim: self.ambient_dim,
            central: self.central,
            forms: planes.iter().map(|&i| self.forms[i].clone()).collect(),
            labels: planes.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    /// Cone an affine arrangement: homogenize every form with a new last
    /// coordinate and append the hyperplane at infinity as the last plane.
    pub fn cone(affine: &AffineArrangement, infinity_label: &str) -> Arrangement {
        let mut forms: Vec<Vec<BigInt>> = affine
            .forms
            .iter()
            .map(|f| vec![f[0].clone(), f[1].clone(), f[2].clone()])
            .collect();
        forms.push(vec![BigInt::zero(), BigInt::zero(), BigInt::one()]);
        let mut labels = affine.labels.clone();
        labels.push(infinity_label.to_string());
        Arrangement {
            ambient_dim: 3,
            central: true,
            forms,
            labels,
        }
    }

    /// Decone a central 3-arrangement at plane `h` using an explicit
    /// invertible chart `M` (columns are the images of the `u, v, w` axes):
    /// substituting `(x, y, z) = M (u, v, w)` must send `H_h` to a plane
    /// `c w = 0`. In the chart `w = 1` every other plane becomes an affine
    /// line; the result keeps the remaining planes in their original order.
    /// Any nonzero determinant is allowed — a linear isomorphism of `C^3`
    /// carries the complement to the complement.
    pub fn decone_with_chart(&self, h: usize, chart: &ZMat) -> Result<AffineArrangement> {
        assert!(self.central && self.ambient_dim == 3);
        assert!(h < self.n());
        if chart.len() != 3 || chart.iter().any(|r| r.len() != 3) {
            return Err(Error::invalid("chart must be a 3x3 integer matrix"));
        }
        let det = crate::intlin::zmat_det(chart);
        if det.is_zero() {
            return Err(Error::invalid("chart must be invertible"));
        }
        let transformed: Vec<Vec<BigInt>> =
            self.forms.iter().map(|f| covector_times(f, chart)).collect();
        if !(transformed[h][0].is_zero() && transformed[h][1].is_zero()) {
            return Err(Error::invalid(
                "chart must send the deconed plane to the plane at infinity",
            ));
        }
        let mut forms = Vec::new();
        let mut labels = Vec::new();
        let mut parents = Vec::new();
        for (k, t) in transformed.iter().enumerate() {
            if k == h {
                continue;
            }
            forms.push(t.clone());
            labels.push(self.labels[k].clone());
            parents.push(k);
        }
        Ok(AffineArrangement {
            forms,
            labels,
            parent_planes: parents,
        })
    }

    /// Slice a central 3-arrangement with a generic affine plane
    /// `p x + q y + r z + s = 0` (given as `[p, q, r, s]`, `s != 0`): every
    /// plane meets it in a line, and the incidence sets of size >= 3 must
    /// be exactly the codimension-two flats of size >= 3. Non-generic
    /// planes (new incidences, lost vertices, lost or merged lines, or a
    /// plane through the origin) are rejected.
    pub fn generic_section(&self, plane: &[BigInt]) -> Result<AffineArrangement> {
        assert!(self.central && self.ambient_dim == 3);
        if plane.len() != 4 {
            return Err(Error::invalid("section plane must be [p, q, r, s]"));
        }
        if plane[3].is_zero() {
            return Err(Error::invalid(
                "section plane passes through the origin: not generic",
            ));
        }
        let pivot = (0..3)
            .rev()
            .find(|&k| !plane[k].is_zero())
            .ok_or_else(|| Error::invalid("section plane has zero linear part"))?;
        let params: Vec<usize> = (0..3).filter(|&k| k != pivot).collect();
        let forms: Vec<Vec<BigInt>> = self
            .forms
            .iter()
            .map(|f| {
                // Substitute x_pivot = -(sum_{i != pivot} P_i x_i + s)/P_pivot
                // and clear the denominator.
                vec![
                    &f[params[0]] * &plane[pivot] - &f[pivot] * &plane[params[0]],
                    &f[params[1]] * &plane[pivot] - &f[pivot] * &plane[params[1]],
                    -(&f[pivot] * &plane[3]),
                ]
            })
            .collect();
        for (i, f) in forms.iter().enumerate() {
            if f[0].is_zero() && f[1].is_zero() {
                return Err(Error::invalid(format!(
                    "plane {} is parallel to the section plane: not generic",
                    self.labels[i]
                )));
            }
        }
        for i in 0..forms.len() {
            for j in (i + 1)..forms.len() {
                if proportional(&forms[i], &forms[j]) {
                    return Err(Error::invalid(format!(
                        "planes {} and {} section to the same line: not generic",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        let section = AffineArrangement {
            forms,
            labels: self.labels.clone(),
            parent_planes: (0..self.n()).collect(),
        };
        let mut big_vertices: Vec<Vec<usize>> = section
            .vertices()
            .into_iter()
            .filter(|v| v.lines.len() >= 3)
            .map(|v| v.lines)
            .collect();
        big_vertices.sort();
        let big_flats: Vec<Vec<usize>> = self
            .flats_codim2()
            .into_iter()
            .filter(|f| f.len() >= 3)
            .collect();
        if big_vertices != big_flats {
            return Err(Error::invalid(
                "section changes the multiple-point census: not generic",
            ));
        }
        Ok(section)
    }

    /// Decone at plane `h` with a canonical chart derived from the Smith
    /// normal form of the plane's covector (used when no chart is pinned).
    pub fn decone(&self, h: usize) -> Result<AffineArrangement> {
        let s = smith_normal_form(&vec![self.forms[h].clone()]);
        // form * V = ±(g, 0, 0); move the g to the last column.
        let mut chart = s.v.clone();
        for row in chart.iter_mut() {
            row.swap(0, 2);
        }
        self.decone_with_chart(h, &chart)
    }
}

impl AffineArrangement {
    /// Number of lines.
    pub fn n(&self) -> usize {
        self.forms.len()
    }

    /// All vertices (points where at least two lines meet), sorted by
    /// exact coordinates, each with its sorted incident lines.
    pub fn vertices(&self) -> Vec<AffineVertex> {
        let n = self.n();
        let mut by_point: BTreeMap<(Rat, Rat), Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (a1, b1, c1) = form3(&self.forms[i]);
                let (a2, b2, c2) = form3(&self.forms[j]);
                let det = &a1 * &b2 - &a2 * &b1;
                if det.is_zero() {
                    continue; // parallel lines
                }
                let u = Rat::new(&b1 * &c2 - &b2 * &c1, det.clone());
                let v = Rat::new(&c1 * &a2 - &c2 * &a1, det.clone());
                by_point.entry((u, v)).or_default().extend([i, j]);
            }
        }
        let mut out = Vec::new();
        for ((u, v), mut lines) in by_point {
            lines.sort_unstable();
            lines.dedup();
            out.push(AffineVertex {
                point: (u, v),
                lines,
            });
        }
        out
    }

    /// Partition of the lines into parallel classes (sorted by the
    /// primitive direction covector).
    pub fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let mut by_dir: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.forms.iter().enumerate() {
            let d = primitive_signed(&[f[0].clone(), f[1].clone()]);
            by_dir.entry(d).or_default().push(i);
        }
        by_dir.into_values().collect()
    }
}

fn form3(f: &[BigInt]) -> (BigInt, BigInt, BigInt) {
    (f[0].clone(), f[1].clone(), f[2].clone())
}

/// Cross product of two 3-vectors.
fn cross(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divide by the gcd and normalize the sign of the first nonzero entry to
/// be positive (canonical representative of a rational direction).
pub fn primitive_signed(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &g).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in out.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    out
}

/// Are two integer covectors proportional over `Q`?
fn proportional(a: &[BigInt], b: &[BigInt]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    primitive_signed(a) == primitive_signed(b)
}

/// Covector times matrix: `(f M)_j = sum_i f_i M_{ij}`.
fn covector_times(f: &[BigInt], m: &ZMat) -> Vec<BigInt> {
    (0..m[0].len())
        .map(|j| (0..f.len()).map(|i| &f[i] * &m[i][j]).sum())
        .collect()
}
