//! The star graph (Whitehead graph of the roots) of a presentation,
//! enumeration of reduced circuits up to rotation and reflection, and
//! shortest reduced circuits through a given edge.
//!
//! Vertices come in pairs `+x` / `-x`, one pair per generator. Each
//! corner of each root contributes one undirected edge: the corner
//! between cyclic positions `j` and `j+1` of root `s` joins
//! `arrive(s[j])` to `depart(s[j+1])`, where a positive letter `x`
//! arrives at `-x` and departs from `+x`, and `x^-1` arrives at `+x` and
//! departs from `-x`. Parallel edges and loops are kept as distinct edge
//! instances.

use crate::presentation::Presentation;
use crate::words::Letter;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

/// Hard cap on circuit enumeration length.
pub const CIRCUIT_HARD_CAP: usize = 8;

/// Vertex id of `+x` for generator `g`.
pub fn plus(g: u16) -> usize {
    2 * g as usize
}

/// Vertex id of `-x` for generator `g`.
pub fn minus(g: u16) -> usize {
    2 * g as usize + 1
}

/// The vertex a letter arrives at when read.
pub fn arrive(l: Letter) -> usize {
    if l.inv {
        plus(l.gen)
    } else {
        minus(l.gen)
    }
}

/// The vertex a letter departs from when read.
pub fn depart(l: Letter) -> usize {
    if l.inv {
        minus(l.gen)
    } else {
        plus(l.gen)
    }
}

/// One undirected edge instance. `tail`/`head` fix a reference
/// direction; provenance records which corner of which root produced it
/// (`None` for test graphs built directly from edge lists).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarEdge {
    pub tail: usize,
    pub head: usize,
    pub provenance: Option<(usize, usize)>,
}

/// A directed traversal of an edge instance: reference direction when
/// `flip` is false, reversed when true.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Dart {
    pub edge: usize,
    pub flip: bool,
}

impl Dart {
    pub fn reverse(self) -> Dart {
        Dart {
            edge: self.edge,
            flip: !self.flip,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StarGraph {
    pub n_vertices: usize,
    pub edges: Vec<StarEdge>,
    /// Darts grouped by tail vertex.
    out: Vec<Vec<Dart>>,
}

/// A reduced closed dart walk, stored in canonical form (lexicographic
/// minimum over all rotations of the walk and of its reflection).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Circuit {
    pub darts: Vec<Dart>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices visited, in order (tail of each dart).
    pub fn vertices(&self, g: &StarGraph) -> Vec<usize> {
        self.darts.iter().map(|&d| g.tail(d)).collect()
    }
}

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("requested length {0} exceeds the hard cap {CIRCUIT_HARD_CAP}")]
    CapExceeded(usize),
}

impl StarGraph {
    fn from_edge_list(n_vertices: usize, edges: Vec<StarEdge>) -> Self {
        let mut out = vec![Vec::new(); n_vertices];
        for (i, e) in edges.iter().enumerate() {
            out[e.tail].push(Dart {
                edge: i,
                flip: false,
            });
            out[e.head].push(Dart {
                edge: i,
                flip: true,
            });
        }
        StarGraph {
            n_vertices,
            edges,
            out,
        }
    }

    /// Build a graph directly from undirected edges (for tests/oracles).
    pub fn from_edges(n_vertices: usize, pairs: &[(usize, usize)]) -> Self {
        let edges = pairs
            .iter()
            .map(|&(tail, head)| StarEdge {
                tail,
                head,
                provenance: None,
            })
            .collect();
        Self::from_edge_list(n_vertices, edges)
    }

    pub fn tail(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        if d.flip {
            e.head
        } else {
            e.tail
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        if d.flip {
            e.tail
        } else {
            e.head
        }
    }

    /// Darts leaving `v`.
    pub fn out_darts(&self, v: usize) -> &[Dart] {
        &self.out[v]
    }

    /// The edge instance produced by corner `(root, pos)`.
    pub fn edge_at(&self, root: usize, pos: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.provenance == Some((root, pos)))
    }

    /// Valence of `v`, loops counted twice.
    pub fn valence(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// Is the dart walk a closed, reduced circuit (including wrap-around)?
    pub fn is_reduced_circuit(&self, darts: &[Dart]) -> bool {
        if darts.is_empty() {
            return false;
        }
        let k = darts.len();
        (0..k).all(|t| {
            let next = darts[(t + 1) % k];
            self.head(darts[t]) == self.tail(next) && next != darts[t].reverse()
        })
    }

    /// Canonical representative: least over rotations of the walk and of
    /// its reflection (reversed order, directions toggled).
    pub fn canonicalize(darts: &[Dart]) -> Circuit {
        let k = darts.len();
        let reflected: Vec<Dart> = darts.iter().rev().map(|d| d.reverse()).collect();
        let mut best: Option<Vec<Dart>> = None;
        for seq in [darts, reflected.as_slice()] {
            for r in 0..k {
                let mut rot: Vec<Dart> = seq[r..].to_vec();
                rot.extend_from_slice(&seq[..r]);
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        Circuit {
            darts: best.expect("nonempty"),
        }
    }

    /// All reduced circuits of length 1..=`max_len`, one canonical
    /// representative per rotation/reflection class, sorted by
    /// (length, darts). Exhaustive within the bound.
    pub fn enumerate_reduced_circuits(
        &self,
        max_len: usize,
    ) -> Result<Vec<Circuit>, CircuitError> {
        if max_len > CIRCUIT_HARD_CAP {
            return Err(CircuitError::CapExceeded(max_len));
        }
        let mut found: BTreeSet<Circuit> = BTreeSet::new();
        let mut all_darts: Vec<Dart> = (0..self.edges.len())
            .flat_map(|e| {
                [
                    Dart {
                        edge: e,
                        flip: false,
                    },
                    Dart { edge: e, flip: true },
                ]
            })
            .collect();
        all_darts.sort();
        let mut path: Vec<Dart> = Vec::with_capacity(max_len);
        for &d0 in &all_darts {
            path.push(d0);
            self.extend_circuits(d0, &mut path, max_len, &mut found);
            path.pop();
        }
        let mut out: Vec<Circuit> = found.into_iter().collect();
        out.sort_by_key(|c| (c.len(), c.darts.clone()));
        Ok(out)
    }

    fn extend_circuits(
        &self,
        d0: Dart,
        path: &mut Vec<Dart>,
        max_len: usize,
        found: &mut BTreeSet<Circuit>,
    ) {
        let last = *path.last().expect("nonempty");
        // Close the walk if we are back at the start and the wrap pair
        // is reduced.
        if self.head(last) == self.tail(d0) && d0 != last.reverse() {
            debug_assert!(self.is_reduced_circuit(path));
            found.insert(Self::canonicalize(path));
        }
        if path.len() == max_len {
            return;
        }
        for &d in &self.out[self.head(last)] {
            // Only extend with darts >= the anchor dart: every class has
            // a representative whose minimum dart comes first.
            if d >= d0 && d != last.reverse() {
                path.push(d);
                self.extend_circuits(d0, path, max_len, found);
                path.pop();
            }
        }
    }

    /// Exact minimum length of a reduced circuit traversing edge `e`
    /// (in either direction); `None` if no such circuit exists.
    pub fn min_circuit_length_through(&self, e: usize) -> Option<usize> {
        // Every circuit class through e has a representative starting
        // with the forward dart of e (rotate; reflect if needed).
        let start = Dart {
            edge: e,
            flip: false,
        };
        let origin = self.tail(start);
        // BFS over "last dart traversed" states; all reducedness
        // constraints are between consecutive darts, so shortest paths
        // in this state graph are valid reduced walks.
        let mut dist: HashMap<Dart, usize> = HashMap::new();
        dist.insert(start, 1);
        let mut frontier = vec![start];
        if self.head(start) == origin {
            // A loop edge closes immediately (wrap pair (start, start)
            // is reduced: same direction, not a reversal).
            return Some(1);
        }
        while !frontier.is_empty() {
            let mut next_frontier = Vec::new();
            for &d in &frontier {
                let dd = dist[&d] + 1;
                for &nd in &self.out[self.head(d)] {
                    if nd == d.reverse() || dist.contains_key(&nd) {
                        continue;
                    }
                    if self.head(nd) == origin && start != nd.reverse() {
                        return Some(dd);
                    }
                    dist.insert(nd, dd);
                    next_frontier.push(nd);
                }
            }
            frontier = next_frontier;
        }
        None
    }

    /// DOT rendering with `+x`/`-x` vertex labels and corner provenance
    /// on edges.
    pub fn to_dot(&self, names: &[String]) -> String {
        let label = |v: usize| {
            let g = v / 2;
            let name = names
                .get(g)
                .cloned()
                .unwrap_or_else(|| format!("g{g}"));
            if v % 2 == 0 {
                format!("+{name}")
            } else {
                format!("-{name}")
            }
        };
        let mut s = String::from("graph stargraph {\n");
        for v in 0..self.n_vertices {
            s.push_str(&format!("  v{v} [label=\"{}\"];\n", label(v)));
        }
        for e in &self.edges {
            let prov = match e.provenance {
                Some((i, j)) => format!(" [label=\"r{i}.{j}\"]"),
                None => String::new(),
            };
            s.push_str(&format!("  v{} -- v{}{prov};\n", e.tail, e.head));
        }
        s.push_str("}\n");
        s
    }
}

/// Star graph: one edge per corner of each root.
pub fn build_star_graph(p: &Presentation) -> StarGraph {
    let words: Vec<&[Letter]> = p.roots().iter().map(|(s, _)| s.letters()).collect();
    build_from_words(p.generator_count(), &words)
}

/// Whitehead graph: same construction applied to the full relators.
pub fn build_whitehead_graph(p: &Presentation) -> StarGraph {
    let words: Vec<&[Letter]> = p.relators().iter().map(|r| r.letters()).collect();
    build_from_words(p.generator_count(), &words)
}

fn build_from_words(n_gens: usize, words: &[&[Letter]]) -> StarGraph {
    let mut edges = Vec::new();
    for (i, s) in words.iter().enumerate() {
        let n = s.len();
        for j in 0..n {
            edges.push(StarEdge {
                tail: arrive(s[j]),
                head: depart(s[(j + 1) % n]),
                provenance: Some((i, j)),
            });
        }
    }
    StarGraph::from_edge_list(2 * n_gens, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::samples;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeMap;

    fn undirected(g: &StarGraph) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for e in &g.edges {
            let k = (e.tail.min(e.head), e.tail.max(e.head));
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn example1_star_graph_edges() {
        // P_2 = <x,y,z | z^2 y^-1, y x y^-1 x^-1>; vertices (+x,-x,+y,-y,+z,-z)
        // = (0,1,2,3,4,5).
        let g = build_star_graph(&samples::p_n(2));
        assert_eq!(g.n_vertices, 6);
        assert_eq!(g.edges.len(), 7);
        let mut expected = BTreeMap::new();
        for (a, b) in [(4, 5), (5, 3), (2, 4), (3, 0), (3, 1), (2, 1), (2, 0)] {
            *expected.entry((a.min(b), a.max(b))).or_insert(0) += 1usize;
        }
        assert_eq!(undirected(&g), expected);
    }

    #[test]
    fn power_relator_star_graph() {
        // <x | x^k>: root is x, one edge {+x, -x}.
        let p = crate::presentation::parse_presentation("<x | x^4>").unwrap();
        let g = build_star_graph(&p);
        assert_eq!(g.n_vertices, 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(undirected(&g), BTreeMap::from([((0, 1), 1)]));
        // The Whitehead graph of the full relator has 4 parallel edges.
        let w = build_whitehead_graph(&p);
        assert_eq!(w.edges.len(), 4);
    }

    #[test]
    fn example2_star_graph() {
        let g = build_star_graph(&samples::y2x());
        assert_eq!(g.n_vertices, 4);
        assert_eq!(g.edges.len(), 6);
    }

    #[test]
    fn example1_circuit_counts_and_witnesses() {
        let g = build_star_graph(&samples::p_n(2));
        let circuits = g.enumerate_reduced_circuits(5).unwrap();
        let count = |l: usize| circuits.iter().filter(|c| c.len() == l).count();
        assert_eq!(count(3), 0);
        assert_eq!(count(4), 1);
        assert_eq!(count(5), 2);
        for c in &circuits {
            assert!(g.is_reduced_circuit(&c.darts));
        }
        // The 4-circuit visits +y, +x, -y, -x (vertices 2, 0, 3, 1).
        let four = circuits.iter().find(|c| c.len() == 4).unwrap();
        let mut vs = four.vertices(&g);
        vs.sort();
        assert_eq!(vs, vec![0, 1, 2, 3]);
        // One 5-circuit visits +x, +y, +z, -z, -y (0, 2, 4, 5, 3).
        let visits = |c: &Circuit| {
            let mut vs = c.vertices(&g);
            vs.sort();
            vs
        };
        assert!(circuits
            .iter()
            .filter(|c| c.len() == 5)
            .any(|c| visits(c) == vec![0, 2, 3, 4, 5]));
    }

    #[test]
    fn example1_min_lengths() {
        let p = samples::p_n(2);
        let g = build_star_graph(&p);
        // Edge {+y,+x}: corner of the commutator. Provenance (1, j) with
        // endpoints {0, 2}.
        let yx = g
            .edges
            .iter()
            .position(|e| (e.tail.min(e.head), e.tail.max(e.head)) == (0, 2))
            .unwrap();
        assert_eq!(g.min_circuit_length_through(yx), Some(4));
        let zz = g
            .edges
            .iter()
            .position(|e| (e.tail.min(e.head), e.tail.max(e.head)) == (4, 5))
            .unwrap();
        assert_eq!(g.min_circuit_length_through(zz), Some(5));
    }

    #[test]
    fn isolated_edge_has_no_circuit() {
        let g = StarGraph::from_edges(2, &[(0, 1)]);
        assert_eq!(g.min_circuit_length_through(0), None);
        assert!(g.enumerate_reduced_circuits(6).unwrap().is_empty());
    }

    #[test]
    fn loop_and_parallel_edge_circuits() {
        // A loop is a length-1 circuit; two parallel edges form a
        // length-2 circuit (distinct instances, so reduced).
        let g = StarGraph::from_edges(2, &[(0, 0), (0, 1), (0, 1)]);
        let circuits = g.enumerate_reduced_circuits(4).unwrap();
        assert!(circuits.iter().any(|c| c.len() == 1));
        assert!(circuits
            .iter()
            .any(|c| c.len() == 2 && c.darts[0].edge != c.darts[1].edge));
        assert_eq!(g.min_circuit_length_through(0), Some(1));
        assert_eq!(g.min_circuit_length_through(1), Some(2));
    }

    #[test]
    fn cap_enforced() {
        let g = StarGraph::from_edges(2, &[(0, 1)]);
        assert!(g.enumerate_reduced_circuits(9).is_err());
    }

    /// Brute-force oracle: all closed reduced dart sequences from every
    /// start, canonicalized.
    fn brute_force(g: &StarGraph, max_len: usize) -> BTreeSet<Circuit> {
        let mut found = BTreeSet::new();
        let darts: Vec<Dart> = (0..g.edges.len())
            .flat_map(|e| {
                [
                    Dart {
                        edge: e,
                        flip: false,
                    },
                    Dart { edge: e, flip: true },
                ]
            })
            .collect();
        fn go(
            g: &StarGraph,
            darts: &[Dart],
            path: &mut Vec<Dart>,
            max_len: usize,
            found: &mut BTreeSet<Circuit>,
        ) {
            if !path.is_empty() && g.is_reduced_circuit(path) {
                found.insert(StarGraph::canonicalize(path));
            }
            if path.len() == max_len {
                return;
            }
            for &d in darts {
                let ok = match path.last() {
                    Some(&last) => g.head(last) == g.tail(d) && d != last.reverse(),
                    None => true,
                };
                if ok {
                    path.push(d);
                    go(g, darts, path, max_len, found);
                    path.pop();
                }
            }
        }
        let mut path = Vec::new();
        go(g, &darts, &mut path, max_len, &mut found);
        found
    }

    #[test]
    fn enumeration_matches_brute_force_on_random_multigraphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260826);
        for _ in 0..40 {
            let nv = rng.gen_range(2..=6);
            let ne = rng.gen_range(1..=8);
            let pairs: Vec<(usize, usize)> = (0..ne)
                .map(|_| (rng.gen_range(0..nv), rng.gen_range(0..nv)))
                .collect();
            let g = StarGraph::from_edges(nv, &pairs);
            let fast: BTreeSet<Circuit> =
                g.enumerate_reduced_circuits(5).unwrap().into_iter().collect();
            let slow = brute_force(&g, 5);
            assert_eq!(fast, slow, "mismatch on {pairs:?}");
            // min_circuit_length_through agrees with enumerated minima
            // when these are within the bound.
            for e in 0..g.edges.len() {
                let enumerated = slow
                    .iter()
                    .filter(|c| c.darts.iter().any(|d| d.edge == e))
                    .map(|c| c.len())
                    .min();
                if let Some(m) = enumerated {
                    assert_eq!(g.min_circuit_length_through(e), Some(m));
                }
            }
        }
    }

    #[test]
    fn dot_export_mentions_vertices() {
        let p = samples::p_n(2);
        let g = build_star_graph(&p);
        let dot = g.to_dot(p.generator_names());
        assert!(dot.contains("+x"));
        assert!(dot.contains("-z"));
        assert!(dot.contains(" -- "));
    }
}
