//! Assembled reports on the components of a characteristic variety and how
//! they meet.
//!
//! A report collects, for one central arrangement and one depth:
//! components through the identity (exponentials of resonance components,
//! each certified exactly), torsion-translated components found by the
//! pattern search, and any extra points supplied by the caller (verified
//! individually). Nodes carry dimension, exact generic depth,
//! essentialness (no coordinate identically one), and provenance. Edges
//! record the zero-dimensional meeting points of pairs of components, with
//! every node through each point and the point's exact depth.
//!
//! Output is deterministic: nodes sort by support then lattice, edges by
//! descending depth then point.

use num::Zero;
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::certify::certify_coset;
use crate::character::Character;
use crate::coset::TorusCoset;
use crate::depth::{DepthOracle, DEFAULT_SCAN_BUDGET};
use crate::error::Result;
use crate::resonance::{resonance_components, ComponentKind, DEFAULT_PARTITION_BUDGET};
use crate::search::{default_pattern, search_translated};
use crate::subarr::DEFAULT_MATCH_BUDGET;

/// Options controlling a report run.
#[derive(Debug, Clone)]
pub struct ReportConfig {
    /// Depth of the jump locus to report on.
    pub d: usize,
    /// Maximum torsion order tried by the translated search.
    pub max_order: u32,
    /// Seed for the finite-field prescreens.
    pub seed: u64,
    /// Trial count for the finite-field prescreens.
    pub trials: u32,
    /// Node budget for partition enumeration.
    pub partition_budget: u64,
    /// Node budget for pattern matching.
    pub match_budget: u64,
    /// Point budget for retranslation enumeration.
    pub scan_budget: u64,
    /// Patterns for the translated search; `None` uses the default.
    pub patterns: Option<Vec<(Arrangement, TorusCoset)>>,
    /// Extra characters to verify and include as zero-dimensional nodes.
    pub extra_points: Vec<Character>,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            d: 1,
            max_order: 2,
            seed: 0,
            trials: 3,
            partition_budget: DEFAULT_PARTITION_BUDGET,
            match_budget: DEFAULT_MATCH_BUDGET,
            scan_budget: DEFAULT_SCAN_BUDGET,
            patterns: None,
            extra_points: Vec::new(),
        }
    }
}

/// One component in the report.
#[derive(Debug, Clone)]
pub struct ReportNode {
    /// Unique readable identifier (1-based plane numbers).
    pub id: String,
    /// Dimension of the coset.
    pub dim: usize,
    /// Exact depth at a generic point of the coset.
    pub depth: usize,
    /// Whether no coordinate is identically one on the coset.
    pub essential: bool,
    /// Where the component came from.
    pub provenance: String,
    /// Sorted planes on which the coset is not identically one.
    pub support: Vec<usize>,
    /// The coset itself.
    pub coset: TorusCoset,
}

/// One zero-dimensional meeting point of the components.
#[derive(Debug, Clone)]
pub struct ReportEdge {
    /// Sorted indices into `nodes` of every component through the point.
    pub members: Vec<usize>,
    /// The meeting point.
    pub point: Character,
    /// Its exact depth.
    pub depth: usize,
}

/// A full report.
#[derive(Debug, Clone)]
pub struct PosetReport {
    /// Number of planes.
    pub n: usize,
    /// Depth of the reported locus.
    pub d: usize,
    /// Components, sorted by support then lattice.
    pub nodes: Vec<ReportNode>,
    /// Meeting points, sorted by descending depth then point.
    pub edges: Vec<ReportEdge>,
}

/// Coordinates of a coset that are not identically one.
fn coset_support(coset: &TorusCoset) -> Vec<usize> {
    let rho = coset.translate_witness();
    let dirs = coset.direction_basis();
    (0..coset.n())
        .filter(|&i| {
            !rho.rotations()[i].is_zero() || dirs.iter().any(|row| !row[i].is_zero())
        })
        .collect()
}

fn support_1based(support: &[usize]) -> String {
    support
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Build the report for one arrangement.
pub fn char_poset_report(arr: &Arrangement, cfg: &ReportConfig) -> Result<PosetReport> {
    let n = arr.n();
    let oracle = DepthOracle::new(arr)?;
    let mut nodes: Vec<ReportNode> = Vec::new();

    for comp in resonance_components(arr, cfg.d, cfg.partition_budget)? {
        let coset = TorusCoset::from_directions(n, &comp.basis, &Character::identity(n));
        let cert = certify_coset(&oracle, &coset, cfg.d, cfg.seed, cfg.trials)?;
        debug_assert!(cert.certified);
        let provenance = match &comp.kind {
            ComponentKind::Local { .. } => "local flat".to_string(),
            ComponentKind::Partition { .. } => "neighborly partition".to_string(),
        };
        nodes.push(ReportNode {
            id: comp.name(),
            dim: comp.dim,
            depth: cert.generic_depth,
            essential: coset_support(&coset) == (0..n).collect::<Vec<usize>>(),
            provenance,
            support: coset_support(&coset),
            coset,
        });
    }

    let owned_patterns = cfg
        .patterns
        .clone()
        .unwrap_or_else(|| vec![default_pattern()]);
    let pattern_refs: Vec<(&Arrangement, &TorusCoset)> =
        owned_patterns.iter().map(|(a, c)| (a, c)).collect();
    for hit in search_translated(
        arr,
        &pattern_refs,
        cfg.d,
        cfg.max_order,
        cfg.seed,
        cfg.trials,
        cfg.match_budget,
        cfg.partition_budget,
        cfg.scan_budget,
    )? {
        let support = coset_support(&hit.coset);
        let id = format!(
            "translated({}; {})",
            support_1based(&support),
            hit.coset.translate_witness().to_csv()
        );
        nodes.push(ReportNode {
            id,
            dim: hit.coset.dim(),
            depth: hit.certificate.generic_depth,
            essential: support == (0..n).collect::<Vec<usize>>(),
            provenance: format!(
                "translated (pattern on planes {})",
                support_1based(&hit.support)
            ),
            support,
            coset: hit.coset,
        });
    }

    for point in &cfg.extra_points {
        let depth = oracle.depth(point)?;
        if depth < cfg.d {
            continue;
        }
        let coset = TorusCoset::point(point);
        let support = coset_support(&coset);
        nodes.push(ReportNode {
            id: format!("point({})", point.to_csv()),
            dim: 0,
            depth,
            essential: support == (0..n).collect::<Vec<usize>>(),
            provenance: "verified point".to_string(),
            support,
            coset,
        });
    }

    nodes.sort_by(|a, b| {
        a.support
            .cmp(&b.support)
            .then_with(|| a.coset.lattice().cmp(b.coset.lattice()))
            .then_with(|| a.coset.theta().cmp(b.coset.theta()))
    });

    // Zero-dimensional meeting points of distinct components.
    let mut points: std::collections::BTreeSet<Character> = std::collections::BTreeSet::new();
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            for piece in nodes[i].coset.intersect(&nodes[j].coset) {
                if piece.dim() == 0 {
                    points.insert(piece.translate_witness());
                }
            }
        }
    }
    let mut edges: Vec<ReportEdge> = Vec::new();
    for point in points {
        let members: Vec<usize> = nodes
            .iter()
            .enumerate()
            .filter(|(_, node)| node.coset.contains(&point))
            .map(|(k, _)| k)
            .collect();
        let depth = oracle.depth(&point)?;
        edges.push(ReportEdge {
            members,
            point,
            depth,
        });
    }
    edges.sort_by(|a, b| b.depth.cmp(&a.depth).then_with(|| a.point.cmp(&b.point)));

    Ok(PosetReport {
        n,
        d: cfg.d,
        nodes,
        edges,
    })
}

impl PosetReport {
    /// Number of components.
    pub fn total(&self) -> usize {
        self.nodes.len()
    }

    /// Plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "characteristic-variety report: {} planes, depth {}\n",
            self.n, self.d
        ));
        out.push_str(&format!(
            "certified candidate components: {}\n\n",
            self.total()
        ));
        for (k, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!(
                "  [{:>2}] dim {}  depth {}  {}  {}  ({})\n",
                k + 1,
                node.dim,
                node.depth,
                if node.essential { "essential  " } else { "inessential" },
                node.id,
                node.provenance,
            ));
        }
        if !self.edges.is_empty() {
            out.push_str("\nmeeting points:\n");
            for e in &self.edges {
                out.push_str(&format!(
                    "  depth {}  ({})  on {}\n",
                    e.depth,
                    e.point.to_csv(),
                    e.members
                        .iter()
                        .map(|m| format!("[{}]", m + 1))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
        }
        out
    }

    /// JSON rendering (keys sorted, numbers exact).
    pub fn to_json(&self) -> String {
        let coset_json = |c: &TorusCoset| -> Value {
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
                    .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            })
        };
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .map(|node| {
                json!({
                    "id": node.id,
                    "dim": node.dim,
                    "depth": node.depth,
                    "essential": node.essential,
                    "provenance": node.provenance,
                    "support": node.support.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "coset": coset_json(&node.coset),
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                json!({
                    "members": e.members.iter().map(|m| m + 1).collect::<Vec<_>>(),
                    "point": e
                        .point
                        .rotations()
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>(),
                    "depth": e.depth,
                })
            })
            .collect();
        let v = json!({
            "planes": self.n,
            "depth": self.d,
            "label": "certified candidate components",
            "total": self.total(),
            "nodes": nodes,
            "edges": edges,
        });
        serde_json::to_string_pretty(&v).expect("report serialization cannot fail")
    }
}
