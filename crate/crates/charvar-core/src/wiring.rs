//! Wiring diagrams of real affine line arrangements and the braid
//! monodromy generators they determine.
//!
//! A generic projection `p(x) = d · x` orders the lines ("wires") by their
//! height at the basepoint `p → +∞` (bottom to top) and orders the vertices
//! by decreasing projection value. Scanning the vertices in that order while
//! tracking wire positions gives a planar wiring diagram; at each vertex the
//! incident wires occupy consecutive positions and are reversed.
//!
//! Each vertex `k` with incident wire set `I_k` contributes the pure braid
//! `α_k = δ_k^{-1} A_{I_k} δ_k`, where `A_{I_k}` is the full twist on `I_k`
//! and `δ_k` is the subword of `∏_{i=2}^n ∏_{j<i} A_{j,i}` keeping the pairs
//! with `i ∈ I_k` and `j` a wire that passes *above* the vertex with
//! `min I_k < j < max I_k`. All indices are wire numbers, not positions.
//!
//! The linearly fibered variant splits the lines into wires and fiber lines
//! (those parallel to the projection fibers), demands that every wire-wire
//! vertex lie on a fiber line, and groups the `α_k` into one total braid per
//! fiber, scanned bottom-to-top along the fiber.

use num::bigint::BigInt;
use num::Zero;

use crate::arrangement::{primitive_signed, AffineArrangement};
use crate::braid::{full_twist, pure_generator, BraidWord};
use crate::cyclo::Rat;
use crate::error::{Error, Result};
use crate::present::{
    fibered_presentation, monodromy_presentation, Presentation, VertexMonodromy,
};

/// A wire or fiber line of a diagram.
#[derive(Debug, Clone)]
pub struct WireInfo {
    /// Index of the line in the source affine arrangement.
    pub line: usize,
    /// Display label carried over from the arrangement.
    pub label: String,
    /// Index of the parent plane (for decones) or of the line itself.
    pub plane: usize,
}

/// A vertex of the diagram: its exact position, the incident wires, and the
/// wires passing above it that are needed for the monodromy conjugator.
#[derive(Debug, Clone)]
pub struct WireVertex {
    /// Exact coordinates in the source chart.
    pub point: (Rat, Rat),
    /// Sorted zero-based wire numbers incident to the vertex.
    pub wires: Vec<usize>,
    /// Zero-based wire numbers `j` with `min < j < max` of `wires` that pass
    /// above the vertex (the set `J_k` of the conjugator subword).
    pub upper_between: Vec<usize>,
}

/// A wiring diagram: ordered wires and scanned vertices.
#[derive(Debug, Clone)]
pub struct WiringDiagram {
    /// Wires, bottom to top at the basepoint.
    pub wires: Vec<WireInfo>,
    /// Vertices in scan order (decreasing projection value).
    pub vertices: Vec<WireVertex>,
}

/// A linearly fibered wiring: wires, fiber lines (in scan order), and the
/// wire-wire vertices grouped by the fiber they lie on.
#[derive(Debug, Clone)]
pub struct FiberedWiring {
    /// Wires, bottom to top at the basepoint.
    pub wires: Vec<WireInfo>,
    /// Fiber lines, in decreasing projection order.
    pub fibers: Vec<WireInfo>,
    /// For each fiber, its wire-wire vertices bottom to top.
    pub groups: Vec<Vec<WireVertex>>,
}

/// Per-wire linear data with respect to a projection direction: the height
/// along the wire is `h = slope · p + intercept`.
#[derive(Debug, Clone)]
struct WireGeom {
    slope: Rat,
    intercept: Rat,
}

fn rat(b: &BigInt) -> Rat {
    Rat::from(b.clone())
}

/// Projection value of a point.
fn proj(d: &(BigInt, BigInt), pt: &(Rat, Rat)) -> Rat {
    rat(&d.0) * &pt.0 + rat(&d.1) * &pt.1
}

/// Height value of a point (the covector perpendicular to the direction).
fn height(d: &(BigInt, BigInt), pt: &(Rat, Rat)) -> Rat {
    -rat(&d.1) * &pt.0 + rat(&d.0) * &pt.1
}

/// Is the line with linear part `(a, b)` parallel to the projection fibers?
fn is_fiber_line(d: &(BigInt, BigInt), form: &[BigInt]) -> bool {
    (&form[0] * &d.1 - &form[1] * &d.0).is_zero()
}

/// Height-vs-projection data of a non-fiber line `a u + b v + c = 0`.
fn wire_geometry(d: &(BigInt, BigInt), form: &[BigInt]) -> WireGeom {
    let denom = &form[0] * &d.1 - &form[1] * &d.0;
    assert!(!denom.is_zero(), "fiber lines have no wire geometry");
    let norm = &d.0 * &d.0 + &d.1 * &d.1;
    WireGeom {
        slope: Rat::new(&form[1] * &d.1 + &form[0] * &d.0, denom.clone()),
        intercept: Rat::new(&form[2] * norm, denom),
    }
}

fn check_direction(d: &(BigInt, BigInt)) -> Result<()> {
    if d.0.is_zero() && d.1.is_zero() {
        return Err(Error::invalid("projection direction must be nonzero"));
    }
    Ok(())
}

/// Order line indices as wires: ascending by (slope, intercept), which is
/// bottom-to-top height order at the basepoint `p → +∞`.
fn order_wires(lines: &[usize], geoms: &[Option<WireGeom>]) -> Vec<usize> {
    let mut order = lines.to_vec();
    order.sort_by(|&x, &y| {
        let gx = geoms[x].as_ref().unwrap();
        let gy = geoms[y].as_ref().unwrap();
        (&gx.slope, &gx.intercept).cmp(&(&gy.slope, &gy.intercept))
    });
    order
}

/// The wires `j` strictly between the extremes of `incident` (wire numbers)
/// whose height at projection value `p` exceeds `h`.
fn upper_between(
    incident: &[usize],
    nwires: usize,
    geoms_by_wire: &[WireGeom],
    p: &Rat,
    h: &Rat,
) -> Vec<usize> {
    let lo = *incident.first().unwrap();
    let hi = *incident.last().unwrap();
    let _ = nwires;
    ((lo + 1)..hi)
        .filter(|w| !incident.contains(w))
        .filter(|&w| {
            let g = &geoms_by_wire[w];
            &(g.slope.clone() * p + &g.intercept) > h
        })
        .collect()
}

/// Validate the planar trace of a sequence of vertices: at each vertex the
/// incident wires must occupy consecutive positions (which are then
/// reversed), and the final layout must match the height order at
/// `p → -∞` (slope descending, intercept ascending).
fn validate_trace(nwires: usize, vertices: &[WireVertex], geoms_by_wire: &[WireGeom]) -> Result<()> {
    let mut pos: Vec<usize> = (0..nwires).collect(); // bottom to top
    for v in vertices {
        let mut idx: Vec<usize> = pos
            .iter()
            .enumerate()
            .filter(|(_, w)| v.wires.contains(w))
            .map(|(i, _)| i)
            .collect();
        idx.sort_unstable();
        let consecutive = idx.windows(2).all(|w| w[1] == w[0] + 1);
        if !consecutive {
            return Err(Error::invalid(format!(
                "vertex at ({}, {}) does not have consecutive wires in the diagram trace",
                v.point.0, v.point.1
            )));
        }
        pos[idx[0]..=idx[idx.len() - 1]].reverse();
    }
    let mut expect: Vec<usize> = (0..nwires).collect();
    expect.sort_by(|&x, &y| {
        let gx = &geoms_by_wire[x];
        let gy = &geoms_by_wire[y];
        gy.slope
            .cmp(&gx.slope)
            .then_with(|| gx.intercept.cmp(&gy.intercept))
    });
    if pos != expect {
        return Err(Error::invalid(
            "wiring trace does not terminate in the reversal forced by the projection",
        ));
    }
    Ok(())
}

/// Build the wiring diagram of an affine arrangement under a projection
/// direction. Every line must be a wire (none parallel to the fibers) and
/// all vertices must have distinct projection values; otherwise the error
/// reports a suggested generic direction.
pub fn wiring_diagram(arr: &AffineArrangement, direction: (i64, i64)) -> Result<WiringDiagram> {
    let d = (BigInt::from(direction.0), BigInt::from(direction.1));
    check_direction(&d)?;
    for (i, f) in arr.forms.iter().enumerate() {
        if is_fiber_line(&d, f) {
            let (sx, sy) = suggest_direction(arr);
            return Err(Error::NonGenericDirection {
                reason: format!("line {} is parallel to the projection fibers", arr.labels[i]),
                sx: sx.to_string(),
                sy: sy.to_string(),
            });
        }
    }
    let geoms: Vec<Option<WireGeom>> = arr
        .forms
        .iter()
        .map(|f| Some(wire_geometry(&d, f)))
        .collect();
    let order = order_wires(&(0..arr.n()).collect::<Vec<_>>(), &geoms);
    let wire_of_line: Vec<usize> = {
        let mut w = vec![0usize; arr.n()];
        for (widx, &line) in order.iter().enumerate() {
            w[line] = widx;
        }
        w
    };
    let geoms_by_wire: Vec<WireGeom> = order
        .iter()
        .map(|&l| geoms[l].clone().unwrap())
        .collect();

    let raw = arr.vertices();
    let mut scanned: Vec<(Rat, Rat, WireVertex)> = Vec::new();
    for v in &raw {
        let p = proj(&d, &v.point);
        let h = height(&d, &v.point);
        let mut wires: Vec<usize> = v.lines.iter().map(|&l| wire_of_line[l]).collect();
        wires.sort_unstable();
        let upper = upper_between(&wires, order.len(), &geoms_by_wire, &p, &h);
        scanned.push((
            p,
            h,
            WireVertex {
                point: v.point.clone(),
                wires,
                upper_between: upper,
            },
        ));
    }
    scanned.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    for pair in scanned.windows(2) {
        if pair[0].0 == pair[1].0 {
            let (sx, sy) = suggest_direction(arr);
            return Err(Error::NonGenericDirection {
                reason: format!(
                    "two vertices share the projection value {} — the scan order is ambiguous",
                    pair[0].0
                ),
                sx: sx.to_string(),
                sy: sy.to_string(),
            });
        }
    }
    let vertices: Vec<WireVertex> = scanned.into_iter().map(|(_, _, v)| v).collect();
    validate_trace(order.len(), &vertices, &geoms_by_wire)?;
    Ok(WiringDiagram {
        wires: order
            .iter()
            .map(|&l| WireInfo {
                line: l,
                label: arr.labels[l].clone(),
                plane: arr.parent_planes[l],
            })
            .collect(),
        vertices,
    })
}

/// Build the linearly fibered wiring for a direction: lines parallel to the
/// fibers become fiber lines, and every wire-wire vertex must lie on one.
pub fn fibered_wiring(arr: &AffineArrangement, direction: (i64, i64)) -> Result<FiberedWiring> {
    let d = (BigInt::from(direction.0), BigInt::from(direction.1));
    check_direction(&d)?;
    let mut wire_lines = Vec::new();
    let mut fiber_lines = Vec::new();
    for (i, f) in arr.forms.iter().enumerate() {
        if is_fiber_line(&d, f) {
            fiber_lines.push(i);
        } else {
            wire_lines.push(i);
        }
    }
    if fiber_lines.is_empty() {
        return Err(Error::NotFibered(
            "no line is parallel to the projection fibers".into(),
        ));
    }
    let geoms: Vec<Option<WireGeom>> = arr
        .forms
        .iter()
        .map(|f| {
            if is_fiber_line(&d, f) {
                None
            } else {
                Some(wire_geometry(&d, f))
            }
        })
        .collect();
    let order = order_wires(&wire_lines, &geoms);
    let wire_of_line: std::collections::HashMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(w, &l)| (l, w))
        .collect();
    let geoms_by_wire: Vec<WireGeom> = order
        .iter()
        .map(|&l| geoms[l].clone().unwrap())
        .collect();

    // Fiber lines carry a constant projection value; scan order is
    // decreasing in it.
    let fiber_value = |line: usize| -> Rat {
        let f = &arr.forms[line];
        // (a, b) = λ (d0, d1); on the line p = -c/λ. Use whichever direction
        // coordinate is nonzero to read off λ.
        if !d.0.is_zero() {
            -Rat::new(&f[2] * &d.0, f[0].clone())
        } else {
            -Rat::new(&f[2] * &d.1, f[1].clone())
        }
    };
    let mut fibers = fiber_lines.clone();
    fibers.sort_by(|&x, &y| fiber_value(y).cmp(&fiber_value(x)));

    let mut groups: Vec<Vec<(Rat, WireVertex)>> = vec![Vec::new(); fibers.len()];
    for v in &arr.vertices() {
        let wire_incident: Vec<usize> = v
            .lines
            .iter()
            .filter(|l| wire_of_line.contains_key(l))
            .map(|l| wire_of_line[l])
            .collect();
        if wire_incident.len() < 2 {
            continue; // wire-fiber double: no monodromy contribution
        }
        let on_fiber = v
            .lines
            .iter()
            .find_map(|l| fibers.iter().position(|fl| fl == l));
        let Some(j) = on_fiber else {
            return Err(Error::NotFibered(format!(
                "the vertex at ({}, {}) lies on no fiber line",
                v.point.0, v.point.1
            )));
        };
        let p = proj(&d, &v.point);
        let h = height(&d, &v.point);
        let mut wires = wire_incident;
        wires.sort_unstable();
        let upper = upper_between(&wires, order.len(), &geoms_by_wire, &p, &h);
        groups[j].push((
            h,
            WireVertex {
                point: v.point.clone(),
                wires,
                upper_between: upper,
            },
        ));
    }
    // Bottom to top along each fiber.
    for g in groups.iter_mut() {
        g.sort_by(|a, b| a.0.cmp(&b.0));
    }
    let groups: Vec<Vec<WireVertex>> = groups
        .into_iter()
        .map(|g| g.into_iter().map(|(_, v)| v).collect())
        .collect();
    let flat: Vec<WireVertex> = groups.iter().flatten().cloned().collect();
    validate_trace(order.len(), &flat, &geoms_by_wire)?;

    let info = |l: usize| WireInfo {
        line: l,
        label: arr.labels[l].clone(),
        plane: arr.parent_planes[l],
    };
    Ok(FiberedWiring {
        wires: order.iter().map(|&l| info(l)).collect(),
        fibers: fibers.iter().map(|&l| info(l)).collect(),
        groups,
    })
}

/// The conjugated full twist of one vertex: wire numbers zero-based in,
/// braid on `n` strands out.
fn vertex_braid(n: usize, v: &WireVertex) -> BraidWord {
    let block: Vec<usize> = v.wires.iter().map(|w| w + 1).collect();
    let twist = full_twist(n, &block);
    let in_i = |i: usize| block.contains(&i);
    let in_j = |j: usize| v.upper_between.iter().any(|&u| u + 1 == j);
    let mut delta = BraidWord::identity(n);
    for i in 2..=n {
        for j in 1..i {
            if in_i(i) && in_j(j) {
                delta = delta.mul(&pure_generator(n, j, i));
            }
        }
    }
    twist.conjugate(&delta)
}

/// The braid monodromy generators of a wiring diagram, one conjugated full
/// twist per vertex, in scan order.
pub fn braid_monodromy(wd: &WiringDiagram) -> Vec<BraidWord> {
    let n = wd.wires.len();
    wd.vertices.iter().map(|v| vertex_braid(n, v)).collect()
}

/// The total monodromy braids of a fibered wiring, one per fiber: the
/// product of the vertex braids along the fiber, bottom to top.
pub fn fiber_monodromies(fw: &FiberedWiring) -> Vec<BraidWord> {
    let n = fw.wires.len();
    fw.groups
        .iter()
        .map(|g| {
            g.iter()
                .fold(BraidWord::identity(n), |acc, v| acc.mul(&vertex_braid(n, v)))
        })
        .collect()
}

/// The vertex presentation of the arrangement group determined by a wiring
/// diagram of the arrangement under the given direction.
pub fn monodromy_presentation_of(
    arr: &AffineArrangement,
    direction: (i64, i64),
) -> Result<Presentation> {
    let wd = wiring_diagram(arr, direction)?;
    let alphas = braid_monodromy(&wd);
    let wires: Vec<(String, usize)> = wd
        .wires
        .iter()
        .map(|w| (w.label.clone(), w.plane))
        .collect();
    let vertices: Vec<VertexMonodromy> = wd
        .vertices
        .iter()
        .zip(alphas)
        .map(|(v, braid)| VertexMonodromy {
            wires: v.wires.clone(),
            braid,
        })
        .collect();
    Ok(monodromy_presentation(&wires, &vertices))
}

/// The semidirect-product presentation determined by a linearly fibered
/// wiring of the arrangement under the given direction.
pub fn fibered_presentation_of(
    arr: &AffineArrangement,
    direction: (i64, i64),
) -> Result<Presentation> {
    let fw = fibered_wiring(arr, direction)?;
    let bars = fiber_monodromies(&fw);
    let wires: Vec<(String, usize)> = fw
        .wires
        .iter()
        .map(|w| (w.label.clone(), w.plane))
        .collect();
    let fibers: Vec<(String, usize)> = fw
        .fibers
        .iter()
        .map(|f| (f.label.clone(), f.plane))
        .collect();
    Ok(fibered_presentation(&wires, &fibers, &bars))
}

/// Fiber lines that would have to be added for the arrangement to be
/// linearly fibered in this direction: one primitive integer form per
/// wire-wire vertex lying on no existing fiber line, deduplicated, in
/// decreasing projection order.
pub fn missing_fiber_forms(
    arr: &AffineArrangement,
    direction: (i64, i64),
) -> Result<Vec<Vec<BigInt>>> {
    let d = (BigInt::from(direction.0), BigInt::from(direction.1));
    check_direction(&d)?;
    let fiber_lines: Vec<usize> = (0..arr.n())
        .filter(|&i| is_fiber_line(&d, &arr.forms[i]))
        .collect();
    let mut missing: Vec<(Rat, Vec<BigInt>)> = Vec::new();
    for v in &arr.vertices() {
        let wire_count = v
            .lines
            .iter()
            .filter(|l| !fiber_lines.contains(l))
            .count();
        if wire_count < 2 || v.lines.iter().any(|l| fiber_lines.contains(l)) {
            continue;
        }
        // The fiber line through (u0, v0): d0 u + d1 v - (d0 u0 + d1 v0) = 0,
        // cleared to integers.
        let p = proj(&d, &v.point);
        let denom = p.denom().clone();
        let form = vec![&d.0 * &denom, &d.1 * &denom, -p.numer().clone()];
        let form = primitive_signed(&form);
        if !missing.iter().any(|(_, f)| f == &form) {
            missing.push((p, form));
        }
    }
    missing.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(missing.into_iter().map(|(_, f)| f).collect())
}

/// Search small integer covectors for one that is generic for this
/// arrangement: no line parallel to its fibers and all vertex projection
/// values distinct.
pub fn suggest_direction(arr: &AffineArrangement) -> (i64, i64) {
    let vertices = arr.vertices();
    let candidates = (0..).flat_map(|k: i64| {
        let k = k + 1;
        vec![(1, k - 1), (1, -(k - 1)), (k - 1, 1), (-(k - 1), 1), (1, k), (k, 1)]
    });
    for (a, b) in candidates {
        let d = (BigInt::from(a), BigInt::from(b));
        if d.0.is_zero() && d.1.is_zero() {
            continue;
        }
        if arr.forms.iter().any(|f| is_fiber_line(&d, f)) {
            continue;
        }
        let mut ps: Vec<Rat> = vertices.iter().map(|v| proj(&d, &v.point)).collect();
        ps.sort();
        if ps.windows(2).all(|w| w[0] != w[1]) {
            return (a, b);
        }
    }
    unreachable!("finitely many degenerate directions")
}
