//! The four certification conditions.
//!
//! The vertex conditions (here `W*` and `V*`) constrain, at every inner
//! vertex of every vertex-reduced diagram, the valence and the degrees
//! of the incident 2-cells via the tables below. The cell conditions
//! (`W` and `V`) are the same tables with valences of vertices and
//! degrees of 2-cells interchanged.
//!
//! The checkers are sufficient-condition certifiers: `Certified` is a
//! theorem about the presentation; `NotCertified` only means this method
//! found no certificate.
//!
//! For the vertex conditions, a reduced circuit in the star graph is a
//! candidate link of an inner vertex. Each dart of the circuit is a
//! corner of a candidate cell; the degree lower bound used for that cell
//! is the minimum number of factors in a piece factorization of the
//! cell's boundary read from the vertex, where the first and last factor
//! (the two boundary arcs leaving the vertex) are capped by the longest
//! common extension the neighbouring cells of the circuit admit. Any
//! actual cell at such a vertex realizes one of these factorizations —
//! its sides are interior edges, hence pieces, and the two sides at the
//! vertex are shared with the neighbouring cells of the link, so their
//! lengths are at most the common extension — which makes the bound
//! sound while remaining exact enough to certify presentations whose
//! parallel star-graph edges force long shared sides.

use crate::pieces::{
    compute_pieces, enumerate_decompositions, min_factors_capped, min_piece_decomposition,
    Decomposition, PieceTable,
};
use crate::presentation::{validate, Presentation};
use crate::stargraph::{build_star_graph, Circuit, Dart, StarGraph};
use crate::words::{Letter, Word};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    #[serde(rename = "wstar")]
    WStar,
    W,
    #[serde(rename = "vstar")]
    VStar,
    V,
}

impl Condition {
    /// Vertex conditions constrain links of inner vertices; cell
    /// conditions constrain corners of inner cells.
    pub fn is_vertex_condition(self) -> bool {
        matches!(self, Condition::WStar | Condition::VStar)
    }

    /// The strict conditions use the strict tables (and strict
    /// curvature inequalities).
    pub fn is_strict(self) -> bool {
        matches!(self, Condition::VStar | Condition::V)
    }
}

// Non-strict tables: columns are lower bounds, one column per entry.
pub const TABLE_W_K3: [[usize; 3]; 14] = [
    [3, 7, 42],
    [3, 8, 24],
    [3, 9, 18],
    [3, 10, 15],
    [3, 11, 14],
    [3, 12, 12],
    [4, 5, 20],
    [4, 6, 12],
    [4, 7, 10],
    [4, 8, 8],
    [5, 5, 10],
    [5, 6, 8],
    [5, 7, 7],
    [6, 6, 6],
];
pub const TABLE_W_K4: [[usize; 4]; 6] = [
    [3, 3, 4, 12],
    [3, 3, 5, 8],
    [3, 3, 6, 6],
    [3, 4, 4, 6],
    [3, 4, 5, 5],
    [4, 4, 4, 4],
];
pub const TABLE_W_K5: [[usize; 5]; 2] = [[3, 3, 3, 3, 6], [3, 3, 3, 4, 4]];

// Strict tables.
pub const TABLE_V_K3: [[usize; 3]; 14] = [
    [3, 7, 43],
    [3, 8, 25],
    [3, 9, 19],
    [3, 10, 16],
    [3, 11, 14],
    [3, 12, 13],
    [4, 5, 21],
    [4, 6, 13],
    [4, 7, 10],
    [4, 8, 9],
    [5, 5, 11],
    [5, 6, 8],
    [5, 7, 7],
    [6, 6, 7],
];
pub const TABLE_V_K4: [[usize; 4]; 6] = [
    [3, 3, 4, 13],
    [3, 3, 5, 8],
    [3, 3, 6, 7],
    [3, 4, 4, 7],
    [3, 4, 5, 5],
    [4, 4, 4, 5],
];
pub const TABLE_V_K5: [[usize; 5]; 3] = [[3, 3, 3, 3, 7], [3, 3, 3, 4, 5], [3, 3, 4, 4, 4]];

fn dominates(sorted_values: &[usize], column: &[usize]) -> bool {
    sorted_values.iter().zip(column).all(|(&v, &c)| v >= c)
}

/// Does the multiset `values` (of size `k = values.len()`) satisfy the
/// table condition? For `k = 3, 4, 5`: some column is dominated
/// componentwise after sorting both ascending (the columns are stored
/// sorted). Non-strict: `k >= 6` needs all entries `>= 3`. Strict:
/// `k = 6` needs all `>= 3` and at least one `> 3`; `k >= 7` all `>= 3`.
pub fn table_lookup(cond: Condition, values: &[usize]) -> bool {
    let k = values.len();
    if k < 3 {
        return false;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let strict = cond.is_strict();
    match k {
        3 => columns(strict, 3).iter().any(|c| dominates(&sorted, c)),
        4 => columns(strict, 4).iter().any(|c| dominates(&sorted, c)),
        5 => columns(strict, 5).iter().any(|c| dominates(&sorted, c)),
        6 if strict => sorted[0] >= 3 && sorted[k - 1] > 3,
        _ => sorted[0] >= 3,
    }
}

/// Columns of the k-table, each sorted ascending.
pub fn columns(strict: bool, k: usize) -> Vec<Vec<usize>> {
    match (strict, k) {
        (false, 3) => TABLE_W_K3.iter().map(|c| c.to_vec()).collect(),
        (false, 4) => TABLE_W_K4.iter().map(|c| c.to_vec()).collect(),
        (false, 5) => TABLE_W_K5.iter().map(|c| c.to_vec()).collect(),
        (true, 3) => TABLE_V_K3.iter().map(|c| c.to_vec()).collect(),
        (true, 4) => TABLE_V_K4.iter().map(|c| c.to_vec()).collect(),
        (true, 5) => TABLE_V_K5.iter().map(|c| c.to_vec()).collect(),
        _ => Vec::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    NotCertified,
}

/// Why certification failed. Every witness re-verifies: its bounds fail
/// `table_lookup` (or the relator fails the minimum-three-pieces
/// requirement).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A relator that is not a product of at least three pieces.
    RelatorNotC3 {
        relator: usize,
        min_pieces: Option<usize>,
    },
    /// A reduced star-graph circuit whose per-corner degree lower bounds
    /// dominate no table column. `bounds[t]` belongs to dart `t`; `None`
    /// encodes "no candidate cell exists" (treated as unbounded).
    VertexCircuit {
        circuit: Circuit,
        vertices: Vec<usize>,
        bounds: Vec<Option<usize>>,
    },
    /// A piece decomposition of a relator whose per-breakpoint valence
    /// lower bounds dominate no column. `None` = no reduced circuit
    /// through that corner (unbounded).
    CellDecomposition {
        decomposition: Decomposition,
        bounds: Vec<Option<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub condition: Condition,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl CheckOutcome {
    pub fn certified(condition: Condition) -> Self {
        CheckOutcome {
            condition,
            verdict: Verdict::Certified,
            witness: None,
        }
    }

    pub fn refused(condition: Condition, witness: Witness) -> Self {
        CheckOutcome {
            condition,
            verdict: Verdict::NotCertified,
            witness: Some(witness),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// A corner of a candidate 2-cell at a star-graph vertex: the corner of
/// relator `root` between root positions `pos` and `pos + 1`, read
/// forward (`rev = false`) or backward.
#[derive(Clone, Copy, Debug)]
struct CircuitCorner {
    root: usize,
    pos: usize,
    rev: bool,
}

impl CircuitCorner {
    fn of_dart(g: &StarGraph, d: Dart) -> Self {
        let (root, pos) = g.edges[d.edge]
            .provenance
            .expect("star graph edges carry provenance");
        CircuitCorner {
            root,
            pos,
            rev: d.flip,
        }
    }

    /// `r`-th letter of the cell's boundary read from the vertex in the
    /// outgoing direction.
    fn out(&self, p: &Presentation, r: usize) -> Letter {
        let s = p.roots()[self.root].0.letters();
        let n = s.len();
        if self.rev {
            s[(self.pos + n - (r % n)) % n].inverse()
        } else {
            s[(self.pos + 1 + r) % n]
        }
    }

    /// `r`-th letter of the inverse of the cell's boundary read into the
    /// vertex — the word a neighbouring cell must match to share an edge
    /// path with this cell.
    fn in_inv(&self, p: &Presentation, r: usize) -> Letter {
        let flipped = CircuitCorner {
            rev: !self.rev,
            ..*self
        };
        flipped.out(p, r)
    }

    fn relator_len(&self, p: &Presentation) -> usize {
        p.relators()[self.root].len()
    }
}

/// Per-corner degree lower bounds for a reduced circuit: for each dart,
/// the minimum factor count of a piece factorization of the incident
/// cell's boundary (read from the circuit's vertex), with the first and
/// last factors capped by the common extensions shared with the
/// neighbouring corners of the circuit.
pub fn circuit_corner_bounds(
    p: &Presentation,
    g: &StarGraph,
    table: &PieceTable,
    circuit: &Circuit,
) -> Vec<Option<usize>> {
    let k = circuit.len();
    let corners: Vec<CircuitCorner> = circuit
        .darts
        .iter()
        .map(|&d| CircuitCorner::of_dart(g, d))
        .collect();
    // lambda[t] = longest common extension of corner t's outgoing
    // boundary and corner t+1's (inverted) incoming boundary. Dart
    // adjacency guarantees at least one common letter.
    let lambda: Vec<usize> = (0..k)
        .map(|t| {
            let a = &corners[t];
            let b = &corners[(t + 1) % k];
            let cap = a.relator_len(p).min(b.relator_len(p));
            let ext = (0..cap)
                .take_while(|&r| a.out(p, r) == b.in_inv(p, r))
                .count();
            debug_assert!(ext >= 1, "adjacent darts must share their first letter");
            ext.max(1)
        })
        .collect();
    (0..k)
        .map(|t| {
            let c = &corners[t];
            let n = c.relator_len(p);
            let boundary = Word((0..n).map(|q| c.out(p, q)).collect());
            let first_cap = lambda[t];
            let last_cap = lambda[(t + k - 1) % k];
            min_factors_capped(&boundary, table, first_cap, last_cap)
        })
        .collect()
}

const BIG: usize = usize::MAX;

fn to_values(bounds: &[Option<usize>]) -> Vec<usize> {
    bounds.iter().map(|b| b.unwrap_or(BIG)).collect()
}

/// Certify a vertex condition (`W*` or `V*`).
///
/// Procedure: (1) every relator must be a product of at least three
/// pieces; (2) every reduced star-graph circuit of length 3..=5 (3..=6
/// for the strict condition; longer links pass the tables
/// unconditionally) must have corner degree bounds passing
/// `table_lookup`. The first failing circuit in canonical order is the
/// witness.
pub fn check_vertex_condition(p: &Presentation, cond: Condition) -> CheckOutcome {
    assert!(cond.is_vertex_condition(), "use check_cell_condition");
    assert!(validate(p).ok, "presentation must be well-formed");
    let table = compute_pieces(p);
    for i in 0..p.relators().len() {
        let d = min_piece_decomposition(p, &table, i);
        if d.is_none_or(|d| d < 3) {
            return CheckOutcome::refused(
                cond,
                Witness::RelatorNotC3 {
                    relator: i,
                    min_pieces: d,
                },
            );
        }
    }
    let g = build_star_graph(p);
    let max_len = if cond.is_strict() { 6 } else { 5 };
    let circuits = g
        .enumerate_reduced_circuits(max_len)
        .expect("within hard cap");
    // Links of inner vertices of vertex-reduced diagrams never pass a
    // star-graph edge twice in different directions (not merely no
    // immediate backtracking), so circuits doing so can be skipped.
    let strongly_reduced = |c: &Circuit| {
        c.darts
            .iter()
            .all(|d| !c.darts.contains(&d.reverse()))
    };
    for c in circuits
        .iter()
        .filter(|c| c.len() >= 3 && strongly_reduced(c))
    {
        let bounds = circuit_corner_bounds(p, &g, &table, c);
        if !table_lookup(cond, &to_values(&bounds)) {
            return CheckOutcome::refused(
                cond,
                Witness::VertexCircuit {
                    circuit: c.clone(),
                    vertices: c.vertices(&g),
                    bounds,
                },
            );
        }
    }
    CheckOutcome::certified(cond)
}

/// Certify a cell condition (`W` or `V`).
///
/// For every relator and every piece decomposition into `d` factors,
/// `d = 3..=5` (`3..=6` for the strict condition), each breakpoint's
/// star-graph corner gets the valence lower bound
/// `min_circuit_length_through` that edge; the bound multiset must pass
/// the (role-swapped) tables.
pub fn check_cell_condition(p: &Presentation, cond: Condition) -> CheckOutcome {
    assert!(!cond.is_vertex_condition(), "use check_vertex_condition");
    assert!(validate(p).ok, "presentation must be well-formed");
    let table = compute_pieces(p);
    let g = build_star_graph(p);
    let max_d = if cond.is_strict() { 6 } else { 5 };
    for i in 0..p.relators().len() {
        let n = p.relators()[i].len();
        let root_len = p.roots()[i].0.len();
        for d in 3..=max_d.min(n) {
            for dec in enumerate_decompositions(p, &table, i, d) {
                let bounds: Vec<Option<usize>> = dec
                    .breakpoints
                    .iter()
                    .map(|&b| {
                        let j = ((b + n - 1) % n) % root_len;
                        let e = g.edge_at(i, j).expect("corner edge exists");
                        g.min_circuit_length_through(e)
                    })
                    .collect();
                if !table_lookup(cond, &to_values(&bounds)) {
                    return CheckOutcome::refused(
                        cond,
                        Witness::CellDecomposition {
                            decomposition: dec,
                            bounds,
                        },
                    );
                }
            }
        }
    }
    CheckOutcome::certified(cond)
}

/// Certify any condition.
pub fn check_condition(p: &Presentation, cond: Condition) -> CheckOutcome {
    if cond.is_vertex_condition() {
        check_vertex_condition(p, cond)
    } else {
        check_cell_condition(p, cond)
    }
}
