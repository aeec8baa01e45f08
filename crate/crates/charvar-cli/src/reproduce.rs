//! `charvar reproduce <id>`: re-run a built-in example end to end and diff
//! every computed count, depth and membership against recorded expectations.
//! Prints one line per assertion and exits nonzero if any of them fails.
//!
//! Fixture arrangements and their expectation files are embedded at compile
//! time, so `reproduce` works from any working directory.

use serde::Deserialize;
use serde_json::json;

use charvar_core::alexander::block_alexander_matrix;
use charvar_core::arrangement::Arrangement;
use charvar_core::certify::certify_coset_with;
use charvar_core::character::Character;
use charvar_core::coset::TorusCoset;
use charvar_core::depth::{scan_points, DepthOracle};
use charvar_core::error::{Error, Result};
use charvar_core::refmat;
use charvar_core::report::{char_poset_report, PosetReport, ReportConfig};
use charvar_core::resonance::{
    partition_component, resonance_components, ComponentKind, ResonanceComponent,
};
use charvar_core::search::{search_translated_default, SearchHit};
use charvar_core::wiring::fibered_presentation_of;

use crate::commands::{Ctx, Format};
use crate::io;

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../fixtures/",
            $name
        ))
    };
}

fn fixture_text(file: &str) -> Option<&'static str> {
    Some(match file {
        "fixtures/a3.json" => fixture!("a3.json"),
        "fixtures/non-fano.json" => fixture!("non-fano.json"),
        "fixtures/b3.json" => fixture!("b3.json"),
        "fixtures/deleted-b3.json" => fixture!("deleted-b3.json"),
        "fixtures/grunbaum.json" => fixture!("grunbaum.json"),
        "fixtures/falk-f1.json" => fixture!("falk-f1.json"),
        "fixtures/falk-f2.json" => fixture!("falk-f2.json"),
        "fixtures/ziegler-z1.json" => fixture!("ziegler-z1.json"),
        "fixtures/ziegler-z2.json" => fixture!("ziegler-z2.json"),
        _ => return None,
    })
}

fn expectation_text(id: &str) -> Option<&'static str> {
    Some(match id {
        "a3" => fixture!("expect/a3.json"),
        "nonfano" => fixture!("expect/nonfano.json"),
        "b3" => fixture!("expect/b3.json"),
        "deleted-b3" => fixture!("expect/deleted-b3.json"),
        "grunbaum" => fixture!("expect/grunbaum.json"),
        "falk" => fixture!("expect/falk.json"),
        "ziegler" => fixture!("expect/ziegler.json"),
        _ => return None,
    })
}

#[derive(Deserialize)]
struct Expectations {
    parts: Vec<Part>,
}

#[derive(Deserialize)]
struct Part {
    file: String,
    checks: Vec<Check>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Check {
    /// Number of components of the depth-`d` jump locus.
    ResonanceCount { d: usize, want: usize, claim: String },
    /// How many components are local vs. partition-induced.
    ComponentKinds {
        d: usize,
        local: usize,
        partition: usize,
        claim: String,
    },
    /// Every component subspace exponentiates to a certified subtorus.
    CertifyComponents { d: usize, claim: String },
    /// The exponentiated components pairwise meet only in the identity.
    PairwiseMeetIdentity { d: usize, claim: String },
    /// Scanning the subgroup generated by all component torsion points finds
    /// only the identity at depth >= d.
    ScanOnlyIdentity { d: usize, order: u32, claim: String },
    /// Common points of all partition-induced subtori (as rotation CSVs).
    PartitionCommonPoints { want: Vec<String>, claim: String },
    /// Exact depth of one character.
    Depth {
        #[serde(rename = "char")]
        character: String,
        want: usize,
        claim: String,
    },
    /// Lower bound on the depth of one character.
    DepthAtLeast {
        #[serde(rename = "char")]
        character: String,
        want: usize,
        claim: String,
    },
    /// Certify an explicit coset (inline coset object).
    Certify {
        d: usize,
        coset: serde_json::Value,
        want_certified: bool,
        #[serde(default)]
        want_rank: Option<usize>,
        #[serde(default)]
        want_generic_depth: Option<usize>,
        claim: String,
    },
    /// Certify the subtorus of a neighborly partition given by 1-based blocks.
    CertifyBlocks {
        d: usize,
        blocks: Vec<Vec<usize>>,
        claim: String,
    },
    /// The combined block Alexander matrix equals the hand-checked reference.
    ReferenceMatrix { claim: String },
    /// Generator counts of the semidirect-product presentation.
    FiberedShape {
        wires: usize,
        fibers: usize,
        claim: String,
    },
    /// Number of translated components found by the pattern search.
    SearchCount {
        d: usize,
        max_order: u32,
        want: usize,
        claim: String,
    },
    /// 1-based planes missing from each translated component's support.
    SearchSupports {
        d: usize,
        max_order: u32,
        want_missing: Vec<Vec<usize>>,
        claim: String,
    },
    /// Total number of certified candidate components in the report.
    ReportTotal {
        d: usize,
        max_order: u32,
        #[serde(default)]
        points: Vec<String>,
        want: usize,
        claim: String,
    },
    /// One meeting point of the report: its depth and member components.
    ReportMeeting {
        d: usize,
        max_order: u32,
        #[serde(default)]
        points: Vec<String>,
        point: String,
        want_depth: usize,
        #[serde(default)]
        want_members: Option<usize>,
        #[serde(default)]
        want_member_ids: Option<Vec<String>>,
        #[serde(default)]
        want_translated_member: bool,
        claim: String,
    },
    /// Slicing the essential subtorus of the rank-3 signed-permutation
    /// arrangement by {t3 = 1} yields two cosets, one of which maps to the
    /// deletion's translated component under coordinate deletion.
    B3Slice { claim: String },
}

impl Check {
    fn claim(&self) -> &str {
        match self {
            Check::ResonanceCount { claim, .. }
            | Check::ComponentKinds { claim, .. }
            | Check::CertifyComponents { claim, .. }
            | Check::PairwiseMeetIdentity { claim, .. }
            | Check::ScanOnlyIdentity { claim, .. }
            | Check::PartitionCommonPoints { claim, .. }
            | Check::Depth { claim, .. }
            | Check::DepthAtLeast { claim, .. }
            | Check::Certify { claim, .. }
            | Check::CertifyBlocks { claim, .. }
            | Check::ReferenceMatrix { claim }
            | Check::FiberedShape { claim, .. }
            | Check::SearchCount { claim, .. }
            | Check::SearchSupports { claim, .. }
            | Check::ReportTotal { claim, .. }
            | Check::ReportMeeting { claim, .. }
            | Check::B3Slice { claim } => claim,
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Outcome {
    if got == want {
        ok(format!("{got:?}"))
    } else {
        fail(format!("want {want:?}, got {got:?}"))
    }
}

fn exp_coset(c: &ResonanceComponent, n: usize) -> TorusCoset {
    TorusCoset::from_directions(n, &c.basis, &Character::identity(n))
}

fn run_search(ctx: &Ctx, arr: &Arrangement, d: usize, max_order: u32) -> Result<Vec<SearchHit>> {
    search_translated_default(arr, d, max_order, ctx.seed, ctx.trials)
}

fn run_report(
    ctx: &Ctx,
    arr: &Arrangement,
    d: usize,
    max_order: u32,
    points: &[String],
) -> Result<PosetReport> {
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
    char_poset_report(arr, &cfg)
}

fn run_check(ctx: &Ctx, arr: &Arrangement, check: &Check) -> Result<Outcome> {
    let n = arr.n();
    Ok(match check {
        Check::ResonanceCount { d, want, .. } => {
            let comps = resonance_components(arr, *d, ctx.partition_budget)?;
            expect_eq(comps.len(), *want)
        }
        Check::ComponentKinds {
            d,
            local,
            partition,
            ..
        } => {
            let comps = resonance_components(arr, *d, ctx.partition_budget)?;
            let got_local = comps
                .iter()
                .filter(|c| matches!(c.kind, ComponentKind::Local { .. }))
                .count();
            let got_part = comps.len() - got_local;
            expect_eq((got_local, got_part), (*local, *partition))
        }
        Check::CertifyComponents { d, .. } => {
            let comps = resonance_components(arr, *d, ctx.partition_budget)?;
            let oracle = DepthOracle::new(arr)?;
            let mut bad = Vec::new();
            for c in &comps {
                let cert =
                    certify_coset_with(&oracle, &exp_coset(c, n), *d, ctx.prime, ctx.seed, ctx.trials)?;
                if !cert.certified {
                    bad.push(c.name());
                }
            }
            if bad.is_empty() {
                ok(format!("all {} certified", comps.len()))
            } else {
                fail(format!("not certified: {}", bad.join(", ")))
            }
        }
        Check::PairwiseMeetIdentity { d, .. } => {
            let comps = resonance_components(arr, *d, ctx.partition_budget)?;
            let cosets: Vec<TorusCoset> = comps.iter().map(|c| exp_coset(c, n)).collect();
            let mut bad = Vec::new();
            for i in 0..cosets.len() {
                for j in i + 1..cosets.len() {
                    let pieces = cosets[i].intersect(&cosets[j]);
                    let only_identity = pieces.len() == 1
                        && pieces[0].dim() == 0
                        && pieces[0].translate_witness().is_identity();
                    if !only_identity {
                        bad.push(format!("({}, {})", comps[i].name(), comps[j].name()));
                    }
                }
            }
            if bad.is_empty() {
                ok(format!("{} pairs", cosets.len() * (cosets.len() - 1) / 2))
            } else {
                fail(format!("pairs meeting beyond the identity: {}", bad.join(" ")))
            }
        }
        Check::ScanOnlyIdentity { d, order, .. } => {
            let comps = resonance_components(arr, 1, ctx.partition_budget)?;
            let cosets: Vec<TorusCoset> = comps.iter().map(|c| exp_coset(c, n)).collect();
            let hits = scan_points(arr, &[], &cosets, *order, *d, ctx.scan_budget)?;
            let got: Vec<String> = hits.iter().map(|(t, _)| t.to_csv()).collect();
            if got.len() == 1 && hits[0].0.is_identity() {
                ok("only the trivial character")
            } else {
                fail(format!("want only the trivial character, got {got:?}"))
            }
        }
        Check::PartitionCommonPoints { want, .. } => {
            let comps = resonance_components(arr, 1, ctx.partition_budget)?;
            let subtori: Vec<TorusCoset> = comps
                .iter()
                .filter(|c| matches!(c.kind, ComponentKind::Partition { .. }))
                .map(|c| exp_coset(c, n))
                .collect();
            if subtori.is_empty() {
                return Ok(fail("no partition components"));
            }
            let mut pieces = vec![subtori[0].clone()];
            for t in &subtori[1..] {
                pieces = pieces.iter().flat_map(|p| p.intersect(t)).collect();
            }
            if pieces.iter().any(|p| p.dim() > 0) {
                return Ok(fail("common intersection is positive-dimensional"));
            }
            let mut got: Vec<String> =
                pieces.iter().map(|p| p.translate_witness().to_csv()).collect();
            got.sort();
            let mut want = want.clone();
            want.sort();
            expect_eq(got, want)
        }
        Check::Depth { character, want, .. } => {
            let t = Character::from_csv(character)?;
            let oracle = DepthOracle::new(arr)?;
            expect_eq(oracle.depth(&t)?, *want)
        }
        Check::DepthAtLeast { character, want, .. } => {
            let t = Character::from_csv(character)?;
            let oracle = DepthOracle::new(arr)?;
            let got = oracle.depth(&t)?;
            if got >= *want {
                ok(format!("depth {got} >= {want}"))
            } else {
                fail(format!("want depth >= {want}, got {got}"))
            }
        }
        Check::Certify {
            d,
            coset,
            want_certified,
            want_rank,
            want_generic_depth,
            ..
        } => {
            let coset = io::parse_coset(&coset.to_string())?;
            let oracle = DepthOracle::new(arr)?;
            let cert = certify_coset_with(&oracle, &coset, *d, ctx.prime, ctx.seed, ctx.trials)?;
            let mut bad = Vec::new();
            if cert.certified != *want_certified {
                bad.push(format!("certified: want {want_certified}, got {}", cert.certified));
            }
            if let Some(r) = want_rank {
                if cert.rank != *r {
                    bad.push(format!("rank: want {r}, got {}", cert.rank));
                }
            }
            if let Some(g) = want_generic_depth {
                if cert.generic_depth != *g {
                    bad.push(format!(
                        "generic depth: want {g}, got {}",
                        cert.generic_depth
                    ));
                }
            }
            if bad.is_empty() {
                ok(format!(
                    "certified={} rank={} generic depth={}",
                    cert.certified, cert.rank, cert.generic_depth
                ))
            } else {
                fail(bad.join("; "))
            }
        }
        Check::CertifyBlocks { d, blocks, .. } => {
            let blocks0: Vec<Vec<usize>> = blocks
                .iter()
                .map(|b| b.iter().map(|p| p - 1).collect())
                .collect();
            let comp = partition_component(arr, &blocks0)
                .ok_or_else(|| Error::invalid("the given blocks are not a neighborly partition"))?;
            let oracle = DepthOracle::new(arr)?;
            let cert =
                certify_coset_with(&oracle, &exp_coset(&comp, n), *d, ctx.prime, ctx.seed, ctx.trials)?;
            if cert.certified {
                ok(format!("certified, dim {}", comp.dim))
            } else {
                fail("not certified")
            }
        }
        Check::ReferenceMatrix { .. } => {
            let (plane, chart, dir) = refmat::deleted_b3_block_setup();
            let aff = arr.decone_with_chart(plane, &chart)?;
            let p = fibered_presentation_of(&aff, dir)?;
            let block = block_alexander_matrix(&p);
            let combined = refmat::combine_rows(&block);
            let reference = refmat::reference_matrix();
            let mut bad = Vec::new();
            if combined.rows() != reference.rows() || combined.cols() != reference.cols() {
                bad.push(format!(
                    "shape: want {}x{}, got {}x{}",
                    reference.rows(),
                    reference.cols(),
                    combined.rows(),
                    combined.cols()
                ));
            } else {
                for r in 0..reference.rows() {
                    for c in 0..reference.cols() {
                        if !combined.get(r, c).sub(reference.get(r, c)).is_zero() {
                            bad.push(format!("entry ({}, {})", r + 1, c + 1));
                        }
                    }
                }
            }
            let raw = refmat::raw_rows();
            for want in [(0usize, 0usize), (3, 3), (10, 9)] {
                if !raw.contains(&want) {
                    bad.push(format!("row {} is not a raw block row", want.0 + 1));
                }
            }
            for (r, k) in &raw {
                for c in 0..reference.cols() {
                    if !block.get(*k, c).sub(reference.get(*r, c)).is_zero() {
                        bad.push(format!("raw row {} differs at column {}", r + 1, c + 1));
                    }
                }
            }
            if bad.is_empty() {
                ok(format!(
                    "{}x{} entries match; raw rows check out",
                    reference.rows(),
                    reference.cols()
                ))
            } else {
                fail(bad.join("; "))
            }
        }
        Check::FiberedShape { wires, fibers, .. } => {
            let (plane, chart, dir) = refmat::deleted_b3_block_setup();
            let aff = arr.decone_with_chart(plane, &chart)?;
            let p = fibered_presentation_of(&aff, dir)?;
            expect_eq(
                (p.wire_gens().len(), p.fiber_gens().len()),
                (*wires, *fibers),
            )
        }
        Check::SearchCount {
            d, max_order, want, ..
        } => {
            let hits = run_search(ctx, arr, *d, *max_order)?;
            expect_eq(hits.len(), *want)
        }
        Check::SearchSupports {
            d,
            max_order,
            want_missing,
            ..
        } => {
            let hits = run_search(ctx, arr, *d, *max_order)?;
            let mut got: Vec<Vec<usize>> = hits
                .iter()
                .map(|h| {
                    (0..n)
                        .filter(|p| !h.support.contains(p))
                        .map(|p| p + 1)
                        .collect()
                })
                .collect();
            got.sort();
            let mut want = want_missing.clone();
            want.sort();
            expect_eq(got, want)
        }
        Check::ReportTotal {
            d,
            max_order,
            points,
            want,
            ..
        } => {
            let rep = run_report(ctx, arr, *d, *max_order, points)?;
            expect_eq(rep.total(), *want)
        }
        Check::ReportMeeting {
            d,
            max_order,
            points,
            point,
            want_depth,
            want_members,
            want_member_ids,
            want_translated_member,
            ..
        } => {
            let rep = run_report(ctx, arr, *d, *max_order, points)?;
            let t = Character::from_csv(point)?;
            let Some(edge) = rep.edges.iter().find(|e| e.point == t) else {
                return Ok(fail(format!("no meeting point at ({point})")));
            };
            let mut bad = Vec::new();
            if edge.depth != *want_depth {
                bad.push(format!("depth: want {want_depth}, got {}", edge.depth));
            }
            if let Some(m) = want_members {
                if edge.members.len() != *m {
                    bad.push(format!("members: want {m}, got {}", edge.members.len()));
                }
            }
            let member_ids: Vec<String> = edge
                .members
                .iter()
                .map(|&i| rep.nodes[i].id.clone())
                .collect();
            if let Some(ids) = want_member_ids {
                let mut got = member_ids.clone();
                got.sort();
                let mut want = ids.clone();
                want.sort();
                if got != want {
                    bad.push(format!("member ids: want {want:?}, got {got:?}"));
                }
            }
            if *want_translated_member && !member_ids.iter().any(|m| m.starts_with("translated")) {
                bad.push("no translated member at this point".to_string());
            }
            if bad.is_empty() {
                ok(format!(
                    "depth {} with {} members",
                    edge.depth,
                    edge.members.len()
                ))
            } else {
                fail(bad.join("; "))
            }
        }
        Check::B3Slice { .. } => {
            let blocks0: Vec<Vec<usize>> = vec![vec![0, 4, 5], vec![1, 3, 7], vec![2, 6, 8]];
            let comp = partition_component(arr, &blocks0)
                .ok_or_else(|| Error::invalid("expected essential partition is missing"))?;
            let gamma = exp_coset(&comp, n);
            let mut e3 = vec![num::BigInt::from(0); n];
            e3[2] = num::BigInt::from(1);
            let slice =
                TorusCoset::from_constraints_through(n, &vec![e3], &Character::identity(n));
            let mut pieces = gamma.intersect(&slice);
            pieces.sort_by_key(|p| p.translate_witness().to_csv());
            if pieces.len() != 2 {
                return Ok(fail(format!("want 2 slice pieces, got {}", pieces.len())));
            }
            let (_, want_coset) = charvar_core::search::default_pattern();
            // Both pieces lie in {t3 = 1}; drop that coordinate, then reorder
            // the remaining eight to the deletion's plane order.
            let deletion_map = [1usize, 3, 0, 2, 6, 7, 4, 5];
            let matches = pieces
                .iter()
                .filter(|p| p.delete_coordinate(2).select(&deletion_map) == want_coset)
                .count();
            if matches == 1 {
                ok("two pieces; one maps onto the deletion's translated coset")
            } else {
                fail(format!(
                    "want exactly one piece mapping onto the translated coset, got {matches}"
                ))
            }
        }
    })
}

pub fn run(ctx: &Ctx, id: &str) -> Result<(String, i32)> {
    let Some(expect_text) = expectation_text(id) else {
        return Err(Error::invalid(format!(
            "unknown example '{id}' (expected one of: a3, nonfano, b3, deleted-b3, grunbaum, falk, ziegler)"
        )));
    };
    let expectations: Expectations = serde_json::from_str(expect_text)
        .map_err(|e| Error::invalid(format!("malformed expectation file for '{id}': {e}")))?;

    let mut lines = Vec::new();
    let mut records = Vec::new();
    let mut failures = 0usize;
    for part in &expectations.parts {
        let text = fixture_text(&part.file)
            .ok_or_else(|| Error::invalid(format!("unknown fixture '{}'", part.file)))?;
        let arr = Arrangement::from_json(text)?;
        arr.validate()?;
        for check in &part.checks {
            let outcome = run_check(ctx, &arr, check)?;
            let status = if outcome.pass { "ok  " } else { "FAIL" };
            if !outcome.pass {
                failures += 1;
            }
            lines.push(format!(
                "{status} [{}] {} ({})",
                part.file,
                check.claim(),
                outcome.detail
            ));
            records.push(json!({
                "file": part.file,
                "claim": check.claim(),
                "pass": outcome.pass,
                "detail": outcome.detail,
            }));
        }
    }
    let total = records.len();
    let summary = if failures == 0 {
        format!("{id}: {total} assertions, all match")
    } else {
        format!("{id}: {failures} of {total} assertions FAILED")
    };
    lines.push(summary.clone());
    let text = format!("{}\n", lines.join("\n"));
    let value = json!({
        "id": id,
        "assertions": records,
        "failures": failures,
        "pass": failures == 0,
        "summary": summary,
    });
    let out = match ctx.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("JSON rendering cannot fail"),
    };
    Ok((out, i32::from(failures > 0)))
}
