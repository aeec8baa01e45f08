//! Subcommand implementations. Every command returns its stdout payload
//! and an exit code: 0 = success / true, 1 = certified false or an empty
//! result, 2 = usage or input error (raised as `Error`), 3 = budget
//! exceeded (also raised as `Error`).

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};

use charvar_core::alexander::{alexander_matrix, block_alexander_matrix};

use charvar_core::certify::certify_coset_with;
use charvar_core::character::Character;
use charvar_core::coset::TorusCoset;
use charvar_core::depth::{depth_at_character, scan_points, DepthOracle};
use charvar_core::error::{Error, Result};
use charvar_core::report::{char_poset_report, ReportConfig};
use charvar_core::resonance::{resonance_components, ComponentKind};
use charvar_core::search::{default_pattern, search_translated};
use charvar_core::wiring::{
    braid_monodromy, fiber_monodromies, fibered_presentation_of, fibered_wiring,
    monodromy_presentation_of, wiring_diagram,
};

use crate::io;

/// Shared run options (global flags).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct Ctx {
    pub format: Format,
    pub seed: u64,
    pub trials: u32,
    pub prime: Option<u64>,
    pub partition_budget: u64,
    pub match_budget: u64,
    pub scan_budget: u64,
}

impl Ctx {
    pub fn render(&self, text: String, value: Value) -> String {
        match self.format {
            Format::Text => text,
            Format::Json => {
                serde_json::to_string_pretty(&value).expect("JSON rendering cannot fail")
            }
        }
    }
}

pub fn poset(ctx: &Ctx, path: &Path) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let flats = arr.flats_codim2();
    let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
    for f in &flats {
        *by_size.entry(f.len()).or_insert(0) += 1;
    }
    let mut text = format!(
        "{} planes, rank {}, {}\nplanes:\n",
        arr.n(),
        arr.rank(),
        if arr.central { "central" } else { "affine" }
    );
    for (k, (form, label)) in arr.forms.iter().zip(&arr.labels).enumerate() {
        let cells: Vec<String> = form.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("  {}: {}  [{}]\n", k + 1, label, cells.join(", ")));
    }
    text.push_str(&format!("codimension-2 flats: {}\n", flats.len()));
    for (size, count) in &by_size {
        text.push_str(&format!("  of {size} planes: {count}\n"));
    }
    for f in &flats {
        let members: Vec<String> = f.iter().map(|p| arr.labels[*p].clone()).collect();
        text.push_str(&format!("  {{{}}}\n", members.join(", ")));
    }
    let value = json!({
        "planes": arr.n(),
        "rank": arr.rank(),
        "central": arr.central,
        "labels": arr.labels,
        "flats": flats
            .iter()
            .map(|f| f.iter().map(|p| p + 1).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    Ok((ctx.render(text, value), 0))
}

pub fn wiring(
    ctx: &Ctx,
    path: &Path,
    decone: Option<&str>,
    chart: Option<&str>,
    direction: Option<&str>,
    fibered: bool,
) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let aff = io::deconed(&arr, decone, chart)?;
    let dir = io::direction_for(&aff, direction)?;
    if fibered {
        let fw = fibered_wiring(&aff, dir)?;
        let braids: Vec<Vec<i32>> = fiber_monodromies(&fw)
            .iter()
            .map(|b| b.letters().to_vec())
            .collect();
        let text = io::fibered_wiring_text(&fw, &braids);
        let value = io::fibered_wiring_value(&fw, &braids);
        Ok((ctx.render(text, value), 0))
    } else {
        let wd = wiring_diagram(&aff, dir)?;
        let braids: Vec<Vec<i32>> = braid_monodromy(&wd)
            .iter()
            .map(|b| b.letters().to_vec())
            .collect();
        let text = io::wiring_text(&wd, &braids);
        let value = io::wiring_value(&wd, &braids);
        Ok((ctx.render(text, value), 0))
    }
}

pub fn present(
    ctx: &Ctx,
    path: &Path,
    decone: Option<&str>,
    chart: Option<&str>,
    direction: Option<&str>,
    fibered: bool,
) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let aff = io::deconed(&arr, decone, chart)?;
    let dir = io::direction_for(&aff, direction)?;
    let p = if fibered {
        fibered_presentation_of(&aff, dir)?
    } else {
        monodromy_presentation_of(&aff, dir)?
    };
    Ok((
        ctx.render(io::presentation_text(&p), io::presentation_value(&p)),
        0,
    ))
}

pub fn alexmat(
    ctx: &Ctx,
    path: &Path,
    decone: Option<&str>,
    chart: Option<&str>,
    direction: Option<&str>,
    block: bool,
) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let aff = io::deconed(&arr, decone, chart)?;
    let dir = io::direction_for(&aff, direction)?;
    let m = if block {
        block_alexander_matrix(&fibered_presentation_of(&aff, dir)?)
    } else {
        alexander_matrix(&monodromy_presentation_of(&aff, dir)?)
    };
    Ok((ctx.render(io::matrix_text(&m), io::matrix_value(&m)), 0))
}

pub fn resonance(ctx: &Ctx, path: &Path, d: usize) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let comps = resonance_components(&arr, d, ctx.partition_budget)?;
    let mut text = format!("{} components of depth >= {d}\n", comps.len());
    for c in &comps {
        text.push_str(&format!("  dim {}  {}\n", c.dim, c.name()));
    }
    let value = json!({
        "count": comps.len(),
        "d": d,
        "components": comps
            .iter()
            .map(|c| {
                json!({
                    "id": c.name(),
                    "kind": match &c.kind {
                        ComponentKind::Local { .. } => "local",
                        ComponentKind::Partition { .. } => "partition",
                    },
                    "dim": c.dim,
                    "support": c.support.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "basis": c
                        .basis
                        .iter()
                        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    });
    let exit = i32::from(comps.is_empty());
    Ok((ctx.render(text, value), exit))
}

pub fn depth(ctx: &Ctx, path: &Path, character: &str) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let t = Character::from_csv(character)?;
    let k = depth_at_character(&arr, &t)?;
    let text = format!("{k}\n");
    let value = json!({
        "char": t.rotations().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "depth": k,
        "planes": arr.n(),
    });
    Ok((ctx.render(text, value), 0))
}

fn certificate_value(cert: &charvar_core::certify::Certificate) -> Value {
    json!({
        "certified": cert.certified,
        "d": cert.d,
        "rank": cert.rank,
        "generators": cert.ngens,
        "generic_depth": cert.generic_depth,
        "prescreen_rank": cert.prescreen_rank,
        "order": cert.order,
        "dim": cert.dim,
        "parametrization": cert
            .parametrization
            .iter()
            .map(|(rot, exps)| {
                json!({
                    "rotation": rot.to_string(),
                    "exponents": exps.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn certificate_text(cert: &charvar_core::certify::Certificate) -> String {
    format!(
        "certified: {}\nrank: {}\ngenerators: {}\ngeneric depth: {}\ndim: {}\norder: {}\n",
        cert.certified, cert.rank, cert.ngens, cert.generic_depth, cert.dim, cert.order
    )
}

pub fn certify(ctx: &Ctx, path: &Path, coset_path: &Path, d: usize) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let coset = io::read_coset(coset_path)?;
    let oracle = DepthOracle::new(&arr)?;
    let cert = certify_coset_with(&oracle, &coset, d, ctx.prime, ctx.seed, ctx.trials)?;
    let exit = i32::from(!cert.certified);
    Ok((
        ctx.render(certificate_text(&cert), certificate_value(&cert)),
        exit,
    ))
}

pub fn intersect(ctx: &Ctx, a_path: &Path, b_path: &Path) -> Result<(String, i32)> {
    let a = io::read_coset(a_path)?;
    let b = io::read_coset(b_path)?;
    if a.n() != b.n() {
        return Err(Error::invalid(format!(
            "cosets live in different tori ({} vs {} coordinates)",
            a.n(),
            b.n()
        )));
    }
    let pieces = a.intersect(&b);
    let mut text = format!("{} pieces\n", pieces.len());
    for p in &pieces {
        text.push_str(&io::coset_text(p));
    }
    let value = json!({
        "count": pieces.len(),
        "pieces": pieces.iter().map(io::coset_value).collect::<Vec<_>>(),
    });
    let exit = i32::from(pieces.is_empty());
    Ok((ctx.render(text, value), exit))
}

pub fn search(
    ctx: &Ctx,
    path: &Path,
    d: usize,
    max_order: u32,
    pattern_path: Option<&Path>,
    pattern_coset_path: Option<&Path>,
) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let (pattern, coset) = match (pattern_path, pattern_coset_path) {
        (Some(p), Some(c)) => (io::read_arrangement(p)?, io::read_coset(c)?),
        (None, None) => default_pattern(),
        _ => {
            return Err(Error::invalid(
                "--pattern and --pattern-coset must be given together",
            ))
        }
    };
    let hits = search_translated(
        &arr,
        &[(&pattern, &coset)],
        d,
        max_order,
        ctx.seed,
        ctx.trials,
        ctx.match_budget,
        ctx.partition_budget,
        ctx.scan_budget,
    )?;
    let mut text = format!("{} translated components\n", hits.len());
    for h in &hits {
        let support: Vec<String> = h.support.iter().map(|p| (p + 1).to_string()).collect();
        text.push_str(&format!(
            "  support {{{}}}  dim {}  order {}  generic depth {}  translate ({})\n",
            support.join(", "),
            h.coset.dim(),
            h.certificate.order,
            h.certificate.generic_depth,
            h.coset.translate_witness().to_csv()
        ));
    }
    let value = json!({
        "count": hits.len(),
        "d": d,
        "max_order": max_order,
        "hits": hits
            .iter()
            .map(|h| {
                json!({
                    "support": h.support.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "embedding": h.embedding.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "coset": io::coset_value(&h.coset),
                    "certificate": certificate_value(&h.certificate),
                })
            })
            .collect::<Vec<_>>(),
    });
    let exit = i32::from(hits.is_empty());
    Ok((ctx.render(text, value), exit))
}

pub fn scan(
    ctx: &Ctx,
    path: &Path,
    chars: &[String],
    on: &[std::path::PathBuf],
    orders: u32,
    d: usize,
) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let generators: Vec<Character> = chars
        .iter()
        .map(|c| Character::from_csv(c))
        .collect::<Result<_>>()?;
    let cosets: Vec<TorusCoset> = on
        .iter()
        .map(|p| io::read_coset(p))
        .collect::<Result<_>>()?;
    let hits = scan_points(&arr, &generators, &cosets, orders, d, ctx.scan_budget)?;
    let mut text = format!("{} characters of depth >= {d}\n", hits.len());
    for (t, k) in &hits {
        text.push_str(&format!("  depth {k}  ({})\n", t.to_csv()));
    }
    let value = json!({
        "count": hits.len(),
        "d": d,
        "order": orders,
        "hits": hits
            .iter()
            .map(|(t, k)| {
                json!({
                    "char": t.rotations().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "depth": k,
                })
            })
            .collect::<Vec<_>>(),
    });
    let exit = i32::from(hits.is_empty());
    Ok((ctx.render(text, value), exit))
}

pub fn report(
    ctx: &Ctx,
    path: &Path,
    d: usize,
    max_order: u32,
    points: &[String],
) -> Result<(String, i32)> {
    let arr = io::read_arrangement(path)?;
    let extra_points: Vec<Character> = points
        .iter()
        .map(|c| Character::from_csv(c))
        .collect::<Result<_>>()?;
    let cfg = ReportConfig {
        d,
        max_order,
        seed: ctx.seed,
        trials: ctx.trials,
        partition_budget: ctx.partition_budget,
        match_budget: ctx.match_budget,
        scan_budget: ctx.scan_budget,
        patterns: None,
        extra_points,
    };
    let rep = char_poset_report(&arr, &cfg)?;
    let out = match ctx.format {
        Format::Text => rep.to_text(),
        Format::Json => rep.to_json(),
    };
    Ok((out, 0))
}
