//! Finite presentations of arrangement groups.
//!
//! Two constructions are provided, both driven by the braid data a wiring
//! diagram produces:
//!
//! * [`monodromy_presentation`] — generators are the wires (one meridian per
//!   line of an affine arrangement); each vertex `k` with incident wires
//!   `I_k` and local monodromy `alpha_k` contributes the relators
//!   `alpha_k(x_i) = x_i` for all `i` in `I_k` except the largest (that one
//!   is a consequence of the others).
//!
//! * [`fibered_presentation`] — for an arrangement fibered over a pencil of
//!   parallel lines: generators are the wires `x_1..x_n` plus one generator
//!   `y_j` per fiber line, and for every pair (wire `i`, fiber `j`) there is
//!   a relator `y_j^{-1} x_i y_j = alphabar_j(x_i)` where `alphabar_j` is
//!   the total monodromy between fibers `j` and `j+1`. This exhibits the
//!   group as an iterated semidirect product of free groups.
//!
//! Generators remember which arrangement plane their meridian encircles, so
//! downstream code can line matrix columns up with character coordinates.

use crate::braid::BraidWord;
use crate::word::Word;

/// What a generator is a meridian of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// Wire number (zero-based) in the wiring diagram.
    Wire(usize),
    /// Fiber number (zero-based) in a fibered diagram.
    Fiber(usize),
}

/// A presentation generator: a meridian loop about one plane.
#[derive(Debug, Clone)]
pub struct Generator {
    /// Display label (typically the plane's input label).
    pub label: String,
    /// Index of the plane (into the presented arrangement's plane list).
    pub plane: usize,
    /// Wire or fiber role in the diagram that produced the presentation.
    pub kind: GenKind,
}

/// Where a relator came from; used to lay out block matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelatorTag {
    /// Vertex relator `alpha_k(x_i) x_i^{-1}` (vertex index, wire index).
    Vertex {
        /// Vertex number in scan order (zero-based).
        vertex: usize,
        /// Wire the relator conjugates (zero-based).
        wire: usize,
    },
    /// Fibered relator `y_j^{-1} x_i y_j (alphabar_j(x_i))^{-1}`.
    Fibered {
        /// Wire index `i` (zero-based).
        wire: usize,
        /// Fiber index `j` (zero-based).
        fiber: usize,
    },
}

/// A finite presentation with labeled generators and tagged relators.
#[derive(Debug, Clone)]
pub struct Presentation {
    /// Generators in column order.
    pub gens: Vec<Generator>,
    /// Relators in row order (freely reduced words in the generators).
    pub relators: Vec<Word>,
    /// One tag per relator.
    pub tags: Vec<RelatorTag>,
}

impl Presentation {
    /// Number of generators.
    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    /// Number of relators.
    pub fn nrelators(&self) -> usize {
        self.relators.len()
    }

    /// Indices of wire generators (in generator order).
    pub fn wire_gens(&self) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&g| matches!(self.gens[g].kind, GenKind::Wire(_)))
            .collect()
    }

    /// Indices of fiber generators (in generator order).
    pub fn fiber_gens(&self) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&g| matches!(self.gens[g].kind, GenKind::Fiber(_)))
            .collect()
    }

    /// Map from generator index to the plane it encircles.
    pub fn gen_planes(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.plane).collect()
    }

    /// Every relator must abelianize to zero (meridian relations are
    /// conjugation relations). Debug-checked on construction.
    fn check_relators(&self) {
        let n = self.ngens();
        for r in &self.relators {
            debug_assert!(
                r.abelianize(n).iter().all(|&e| e == 0),
                "relator fails to abelianize to zero"
            );
        }
    }
}

/// A vertex of the diagram as the presentation sees it: the sorted incident
/// wires (zero-based) and the local monodromy braid `alpha_k`.
#[derive(Debug, Clone)]
pub struct VertexMonodromy {
    /// Sorted zero-based wire indices meeting at the vertex.
    pub wires: Vec<usize>,
    /// The conjugated twist braid for this vertex.
    pub braid: BraidWord,
}

/// Build the vertex presentation of an affine arrangement group from its
/// wires and per-vertex monodromies. `wires[w] = (label, plane)`.
pub fn monodromy_presentation(
    wires: &[(String, usize)],
    vertices: &[VertexMonodromy],
) -> Presentation {
    let n = wires.len();
    let gens: Vec<Generator> = wires
        .iter()
        .enumerate()
        .map(|(w, (label, plane))| Generator {
            label: label.clone(),
            plane: *plane,
            kind: GenKind::Wire(w),
        })
        .collect();
    let mut relators = Vec::new();
    let mut tags = Vec::new();
    for (k, v) in vertices.iter().enumerate() {
        assert!(v.braid.strands() == n, "vertex braid strand count");
        let images = v.braid.action();
        let mut incident = v.wires.clone();
        incident.sort_unstable();
        // Drop the largest incident wire: its relator follows from the rest.
        for &i in incident.iter().take(incident.len().saturating_sub(1)) {
            let rel = images[i].mul(&Word::gen_inv(i));
            relators.push(rel);
            tags.push(RelatorTag::Vertex { vertex: k, wire: i });
        }
    }
    let p = Presentation { gens, relators, tags };
    p.check_relators();
    p
}

/// Build the fibered presentation. `wires[i] = (label, plane)` for the wire
/// generators `x_i`, `fibers[j] = (label, plane)` for the fiber generators
/// `y_j`, and `monodromies[j]` is the total braid `alphabar_j` acting on the
/// wires between consecutive fibers. Relators are emitted fiber-major:
/// block `j` lists wires `i = 0..n`.
pub fn fibered_presentation(
    wires: &[(String, usize)],
    fibers: &[(String, usize)],
    monodromies: &[BraidWord],
) -> Presentation {
    let n = wires.len();
    assert_eq!(fibers.len(), monodromies.len(), "one braid per fiber");
    let mut gens: Vec<Generator> = wires
        .iter()
        .enumerate()
        .map(|(w, (label, plane))| Generator {
            label: label.clone(),
            plane: *plane,
            kind: GenKind::Wire(w),
        })
        .collect();
    gens.extend(fibers.iter().enumerate().map(|(j, (label, plane))| Generator {
        label: label.clone(),
        plane: *plane,
        kind: GenKind::Fiber(j),
    }));
    let mut relators = Vec::new();
    let mut tags = Vec::new();
    for (j, braid) in monodromies.iter().enumerate() {
        assert!(braid.strands() == n, "monodromy braid strand count");
        let images = braid.action();
        let yj = Word::gen(n + j);
        for i in 0..n {
            // y_j^{-1} x_i y_j * (alphabar_j(x_i))^{-1}.
            let rel = yj
                .inv()
                .mul(&Word::gen(i))
                .mul(&yj)
                .mul(&images[i].inv());
            relators.push(rel);
            tags.push(RelatorTag::Fibered { wire: i, fiber: j });
        }
    }
    let p = Presentation { gens, relators, tags };
    p.check_relators();
    p
}
