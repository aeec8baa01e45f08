//! File and format plumbing: reading arrangements and cosets, rendering
//! characters, cosets, matrices, presentations, and wiring diagrams as
//! deterministic text or JSON.

use std::path::Path;

use num::BigInt;
use serde_json::{json, Value};

use charvar_core::arrangement::{AffineArrangement, Arrangement};
use charvar_core::character::Character;
use charvar_core::coset::TorusCoset;
use charvar_core::error::{Error, Result};
use charvar_core::intlin::ZMat;
use charvar_core::lmatrix::LaurentMatrix;
use charvar_core::present::{GenKind, Presentation};
use charvar_core::wiring::{FiberedWiring, WiringDiagram};
use charvar_core::word::Word;

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

pub fn read_arrangement(path: &Path) -> Result<Arrangement> {
    let arr = Arrangement::from_json(&read_text(path)?)?;
    arr.validate()?;
    Ok(arr)
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::invalid(format!("non-integer entry {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| Error::invalid(format!("non-integer entry {s:?}"))),
        other => Err(Error::invalid(format!("expected an integer, got {other}"))),
    }
}

fn parse_int_rows(v: &Value, what: &str) -> Result<ZMat> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::invalid(format!("{what} must be an array of integer rows")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::invalid(format!("{what} rows must be arrays")))?
                .iter()
                .map(parse_bigint)
                .collect()
        })
        .collect()
}

fn rotation_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::invalid(format!(
            "expected a rotation number, got {other}"
        ))),
    }
}

/// Parse a coset file: `{"translate": [rotations], "lattice": [[rows]]}`
/// (constraint rows; the connected component through the translate) or
/// `{"translate": [...], "exponents": [[one row per free parameter]]}`
/// (a monomial parametrization). A bare translate is the single point.
pub fn parse_coset(text: &str) -> Result<TorusCoset> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("coset JSON: {e}")))?;
    let translate = v
        .get("translate")
        .and_then(|t| t.as_array())
        .ok_or_else(|| Error::invalid("coset JSON needs a \"translate\" array"))?;
    let csv = translate
        .iter()
        .map(rotation_text)
        .collect::<Result<Vec<_>>>()?
        .join(",");
    let rho = Character::from_csv(&csv)?;
    let n = rho.len();
    match (v.get("lattice"), v.get("exponents")) {
        (Some(_), Some(_)) => Err(Error::invalid(
            "coset JSON must not carry both \"lattice\" and \"exponents\"",
        )),
        (Some(l), None) => {
            let rows = parse_int_rows(l, "\"lattice\"")?;
            for r in &rows {
                if r.len() != n {
                    return Err(Error::invalid("lattice row length != translate length"));
                }
            }
            Ok(TorusCoset::from_constraints_through(n, &rows, &rho))
        }
        (None, Some(e)) => {
            let rows = parse_int_rows(e, "\"exponents\"")?;
            for r in &rows {
                if r.len() != n {
                    return Err(Error::invalid("exponent row length != translate length"));
                }
            }
            Ok(TorusCoset::from_directions(n, &rows, &rho))
        }
        (None, None) => Ok(TorusCoset::point(&rho)),
    }
}

pub fn read_coset(path: &Path) -> Result<TorusCoset> {
    parse_coset(&read_text(path)?)
}

fn bigint_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn coset_value(c: &TorusCoset) -> Value {
    json!({
        "translate": c
            .translate_witness()
            .rotations()
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>(),
        "lattice": c
            .lattice()
            .iter()
            .map(|row| row.iter().map(bigint_value).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn coset_text(c: &TorusCoset) -> String {
    let mut out = format!(
        "dim {}  translate ({})\n",
        c.dim(),
        c.translate_witness().to_csv()
    );
    for row in c.lattice() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("  constraint [{}]\n", cells.join(", ")));
    }
    out
}

/// Matrix JSON: entries are term lists
/// `{"exp": [exponents], "coef": {"den": d, "num": [c0, c1, ...]}}` with the
/// coefficient written as a polynomial in the root of unity of the stated
/// order.
pub fn matrix_value(m: &LaurentMatrix) -> Value {
    let entries: Vec<Vec<Value>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| {
                    let terms: Vec<Value> = m
                        .get(r, c)
                        .terms()
                        .map(|(exp, coef)| {
                            let (den, num) = coef.to_den_num();
                            json!({
                                "exp": exp.iter().map(|e| json!(e)).collect::<Vec<_>>(),
                                "coef": {
                                    "den": bigint_value(&den),
                                    "num": num.iter().map(bigint_value).collect::<Vec<_>>(),
                                },
                            })
                        })
                        .collect();
                    json!(terms)
                })
                .collect()
        })
        .collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "vars": m.nvars(),
        "order": m.order(),
        "entries": entries,
    })
}

pub fn matrix_text(m: &LaurentMatrix) -> String {
    let mut out = format!(
        "{} x {} over {} variables (root-of-unity order {})\n",
        m.rows(),
        m.cols(),
        m.nvars(),
        m.order()
    );
    for r in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols()).map(|c| format!("{}", m.get(r, c))).collect();
        out.push_str(&format!("  [{}]\n", cells.join(" | ")));
    }
    out
}

/// Generator display names: wires are `x1, x2, ...`, fiber generators
/// `y1, y2, ...` in presentation order.
pub fn generator_names(p: &Presentation) -> Vec<String> {
    let mut names = Vec::new();
    let mut wires = 0usize;
    let mut fibers = 0usize;
    for g in &p.gens {
        match g.kind {
            GenKind::Wire(_) => {
                wires += 1;
                names.push(format!("x{wires}"));
            }
            GenKind::Fiber(_) => {
                fibers += 1;
                names.push(format!("y{fibers}"));
            }
        }
    }
    names
}

pub fn word_text(w: &Word, names: &[String]) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    w.letters()
        .iter()
        .map(|&l| {
            let name = &names[(l.unsigned_abs() as usize) - 1];
            if l < 0 {
                format!("{name}^-1")
            } else {
                name.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn presentation_text(p: &Presentation) -> String {
    let names = generator_names(p);
    let mut out = format!(
        "{} generators, {} relators\ngenerators:\n",
        p.ngens(),
        p.nrelators()
    );
    for (g, name) in p.gens.iter().zip(&names) {
        out.push_str(&format!(
            "  {name} = meridian of {} (plane {})\n",
            g.label,
            g.plane + 1
        ));
    }
    out.push_str("relators:\n");
    for r in &p.relators {
        out.push_str(&format!("  {}\n", word_text(r, &names)));
    }
    out
}

pub fn presentation_value(p: &Presentation) -> Value {
    let names = generator_names(p);
    json!({
        "generators": p
            .gens
            .iter()
            .zip(&names)
            .map(|(g, name)| {
                json!({
                    "name": name,
                    "label": g.label,
                    "plane": g.plane + 1,
                    "kind": match g.kind { GenKind::Wire(_) => "wire", GenKind::Fiber(_) => "fiber" },
                })
            })
            .collect::<Vec<_>>(),
        "relators": p
            .relators
            .iter()
            .map(|r| json!(r.letters()))
            .collect::<Vec<_>>(),
    })
}

pub fn wiring_text(wd: &WiringDiagram, braids: &[Vec<i32>]) -> String {
    let mut out = format!(
        "{} wires, {} vertices\nwires (left to right at the start):\n",
        wd.wires.len(),
        wd.vertices.len()
    );
    for (k, w) in wd.wires.iter().enumerate() {
        out.push_str(&format!("  {}: {} (plane {})\n", k + 1, w.label, w.plane + 1));
    }
    out.push_str("vertices (by sweep order):\n");
    for (v, b) in wd.vertices.iter().zip(braids) {
        let wires: Vec<String> = v.wires.iter().map(|w| (w + 1).to_string()).collect();
        out.push_str(&format!(
            "  at ({}, {}): wires {{{}}}  monodromy braid {:?}\n",
            v.point.0,
            v.point.1,
            wires.join(", "),
            b
        ));
    }
    out
}

pub fn wiring_value(wd: &WiringDiagram, braids: &[Vec<i32>]) -> Value {
    json!({
        "wires": wd
            .wires
            .iter()
            .map(|w| json!({"label": w.label, "plane": w.plane + 1}))
            .collect::<Vec<_>>(),
        "vertices": wd
            .vertices
            .iter()
            .zip(braids)
            .map(|(v, b)| {
                json!({
                    "point": [v.point.0.to_string(), v.point.1.to_string()],
                    "wires": v.wires.iter().map(|w| w + 1).collect::<Vec<_>>(),
                    "braid": b,
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn fibered_wiring_text(fw: &FiberedWiring, braids: &[Vec<i32>]) -> String {
    let mut out = format!(
        "{} wires over {} fibers\nwires:\n",
        fw.wires.len(),
        fw.fibers.len()
    );
    for (k, w) in fw.wires.iter().enumerate() {
        out.push_str(&format!("  {}: {} (plane {})\n", k + 1, w.label, w.plane + 1));
    }
    out.push_str("fibers (with their vertex groups and monodromies):\n");
    for ((k, f), b) in fw.fibers.iter().enumerate().zip(braids) {
        let groups: Vec<String> = fw.groups[k]
            .iter()
            .map(|v| {
                let wires: Vec<String> = v.wires.iter().map(|w| (w + 1).to_string()).collect();
                format!("{{{}}}", wires.join(", "))
            })
            .collect();
        out.push_str(&format!(
            "  {}: {} (plane {})  vertices {}  monodromy braid {:?}\n",
            k + 1,
            f.label,
            f.plane + 1,
            groups.join(" "),
            b
        ));
    }
    out
}

pub fn fibered_wiring_value(fw: &FiberedWiring, braids: &[Vec<i32>]) -> Value {
    json!({
        "wires": fw
            .wires
            .iter()
            .map(|w| json!({"label": w.label, "plane": w.plane + 1}))
            .collect::<Vec<_>>(),
        "fibers": fw
            .fibers
            .iter()
            .enumerate()
            .zip(braids)
            .map(|((k, f), b)| {
                json!({
                    "label": f.label,
                    "plane": f.plane + 1,
                    "groups": fw.groups[k]
                        .iter()
                        .map(|v| v.wires.iter().map(|w| w + 1).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "braid": b,
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// Parse `--decone`: a 1-based plane number or a plane label.
pub fn parse_decone(arr: &Arrangement, spec: &str) -> Result<usize> {
    if let Ok(k) = spec.parse::<usize>() {
        if k >= 1 && k <= arr.n() {
            return Ok(k - 1);
        }
        return Err(Error::invalid(format!(
            "plane number {k} out of range 1..={}",
            arr.n()
        )));
    }
    arr.labels
        .iter()
        .position(|l| l == spec)
        .ok_or_else(|| Error::invalid(format!("no plane labeled {spec:?}")))
}

/// Parse `--chart`: nine integers `a,b,c;d,e,f;g,h,i` (three rows).
pub fn parse_chart(spec: &str) -> Result<ZMat> {
    let rows: Vec<&str> = spec.split(';').collect();
    if rows.len() != 3 {
        return Err(Error::invalid("chart needs three ';'-separated rows"));
    }
    rows.iter()
        .map(|row| {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 3 {
                return Err(Error::invalid("chart rows need three ','-separated integers"));
            }
            cells
                .iter()
                .map(|c| {
                    c.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::invalid(format!("bad chart entry {c:?}")))
                })
                .collect()
        })
        .collect()
}

/// Parse `--direction`: two integers `sx,sy`.
pub fn parse_direction(spec: &str) -> Result<(i64, i64)> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::invalid("direction needs two ','-separated integers"));
    }
    let sx = parts[0]
        .trim()
        .parse::<i64>()
        .map_err(|_| Error::invalid(format!("bad direction entry {:?}", parts[0])))?;
    let sy = parts[1]
        .trim()
        .parse::<i64>()
        .map_err(|_| Error::invalid(format!("bad direction entry {:?}", parts[1])))?;
    Ok((sx, sy))
}

/// Decone a central arrangement per the `--decone`/`--chart` flags (the
/// canonical chart when none is given).
pub fn deconed(
    arr: &Arrangement,
    decone: Option<&str>,
    chart: Option<&str>,
) -> Result<AffineArrangement> {
    if !arr.central {
        return Err(Error::invalid(
            "this command needs a central arrangement (decone metadata applies to cones)",
        ));
    }
    let plane = match decone {
        Some(spec) => parse_decone(arr, spec)?,
        None => charvar_core::depth::default_decone_plane(arr),
    };
    match chart {
        Some(spec) => arr.decone_with_chart(plane, &parse_chart(spec)?),
        None => arr.decone(plane),
    }
}

/// Choose the projection direction: the `--direction` flag or the
/// suggestion derived from the affine arrangement.
pub fn direction_for(aff: &AffineArrangement, flag: Option<&str>) -> Result<(i64, i64)> {
    match flag {
        Some(spec) => parse_direction(spec),
        None => Ok(charvar_core::wiring::suggest_direction(aff)),
    }
}
