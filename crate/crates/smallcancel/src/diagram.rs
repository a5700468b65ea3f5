//! Diagrams over a presentation: combinatorial maps from a sphere minus
//! `τ` open 2-cells into the presentation complex.
//!
//! Representation: a set of darts (directed half-edges), each carrying a
//! letter label, a `twin` (the oppositely directed half of the same
//! edge) and a `next` (successor in its face boundary). Faces are the
//! orbits of `next`; each is either a relator face (its label cycle
//! reads a rotation of some `R_i^{±1}`) or one of the `τ` boundary
//! faces. Vertices are the orbits of `next ∘ twin` (darts sharing an
//! origin, in rotational order).

use crate::presentation::{match_relator_rotation, Presentation};
use crate::stargraph::{build_star_graph, Dart as StarDart, StarGraph};
use crate::words::{Letter, Word};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DartData {
    pub label: Letter,
    pub twin: usize,
    pub next: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FaceKind {
    /// Reads `rotate(R_relator, rotation)` when `orientation = +1`, the
    /// inverse of that rotation when `orientation = -1`.
    Relator {
        relator: usize,
        orientation: i8,
        rotation: usize,
    },
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub kind: FaceKind,
    /// Darts in `next` order, starting from the smallest dart id.
    pub darts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub darts: Vec<DartData>,
    pub faces: Vec<Face>,
    face_of: Vec<usize>,
    index_in_face: Vec<usize>,
    /// Darts by origin vertex, in `next ∘ twin` rotational order.
    pub vertices: Vec<Vec<usize>>,
    vertex_of: Vec<usize>,
}

impl Diagram {
    /// Assemble and fully validate a diagram over `p` from raw darts.
    /// `boundary_mark[d]` is true for darts lying in boundary faces
    /// (must be orbit-consistent); every other face must read a
    /// rotation of some relator or its inverse.
    pub fn from_parts(
        p: &Presentation,
        darts: Vec<DartData>,
        boundary_mark: &[bool],
    ) -> Result<Diagram, String> {
        let n = darts.len();
        if n == 0 {
            return Err("diagram has no darts".into());
        }
        if boundary_mark.len() != n {
            return Err("boundary mark length mismatch".into());
        }
        // Structural checks.
        for (d, dd) in darts.iter().enumerate() {
            if dd.twin >= n || dd.next >= n {
                return Err(format!("dart {d}: pointer out of range"));
            }
            if dd.twin == d {
                return Err(format!("dart {d}: twin is itself"));
            }
            if darts[dd.twin].twin != d {
                return Err(format!("dart {d}: twin is not an involution"));
            }
            if darts[dd.twin].label != dd.label.inverse() {
                return Err(format!("dart {d}: twin label is not the inverse"));
            }
        }
        let mut seen_next = vec![false; n];
        for dd in &darts {
            if seen_next[dd.next] {
                return Err("next is not a permutation".into());
            }
            seen_next[dd.next] = true;
        }
        // Face orbits.
        let mut face_of = vec![usize::MAX; n];
        let mut faces: Vec<Face> = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut orbit = vec![start];
            let mut d = darts[start].next;
            while d != start {
                orbit.push(d);
                d = darts[d].next;
            }
            let fid = faces.len();
            for &d in &orbit {
                face_of[d] = fid;
            }
            let is_boundary = boundary_mark[orbit[0]];
            if orbit.iter().any(|&d| boundary_mark[d] != is_boundary) {
                return Err(format!("face of dart {start}: mixed boundary marks"));
            }
            let kind = if is_boundary {
                FaceKind::Boundary
            } else {
                let word = Word(orbit.iter().map(|&d| darts[d].label).collect());
                let mut found = None;
                for i in 0..p.relators().len() {
                    if let Some((orientation, rotation)) = match_relator_rotation(p, i, &word) {
                        found = Some(FaceKind::Relator {
                            relator: i,
                            orientation,
                            rotation,
                        });
                        break;
                    }
                }
                found.ok_or_else(|| {
                    format!("face of dart {start} reads no relator rotation: {word:?}")
                })?
            };
            faces.push(Face { kind, darts: orbit });
        }
        let mut index_in_face = vec![0usize; n];
        for f in &faces {
            for (k, &d) in f.darts.iter().enumerate() {
                index_in_face[d] = k;
            }
        }
        // Vertex orbits of next ∘ twin.
        let mut vertex_of = vec![usize::MAX; n];
        let mut vertices: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if vertex_of[start] != usize::MAX {
                continue;
            }
            let mut orbit = vec![start];
            let mut d = darts[darts[start].twin].next;
            while d != start {
                orbit.push(d);
                d = darts[darts[d].twin].next;
            }
            let vid = vertices.len();
            for &d in &orbit {
                vertex_of[d] = vid;
            }
            vertices.push(orbit);
        }
        // Connectivity (over twin ∪ next).
        let mut reach = vec![false; n];
        let mut stack = vec![0usize];
        reach[0] = true;
        while let Some(d) = stack.pop() {
            for e in [darts[d].twin, darts[d].next] {
                if !reach[e] {
                    reach[e] = true;
                    stack.push(e);
                }
            }
        }
        if reach.iter().any(|r| !r) {
            return Err("diagram is not connected".into());
        }
        let dg = Diagram {
            darts,
            faces,
            face_of,
            index_in_face,
            vertices,
            vertex_of,
        };
        // Euler characteristic of the closed surface must be 2 (sphere).
        let v = dg.vertices.len() as i64;
        let e = (n / 2) as i64;
        if n % 2 != 0 {
            return Err("odd number of darts".into());
        }
        let f = dg.faces.len() as i64;
        if v - e + f != 2 {
            return Err(format!(
                "not spherical: V - E + F = {v} - {e} + {f} != 2"
            ));
        }
        Ok(dg)
    }

    /// Number of boundary faces (0 = spherical, 1 = disk, 2 = annular).
    pub fn tau(&self) -> usize {
        self.faces
            .iter()
            .filter(|f| f.kind == FaceKind::Boundary)
            .count()
    }

    /// Euler characteristic of `M` (the sphere minus the boundary cells).
    pub fn chi(&self) -> i64 {
        2 - self.tau() as i64
    }

    pub fn relator_face_count(&self) -> usize {
        self.faces.len() - self.tau()
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.vertex_of[d]
    }

    pub fn next(&self, d: usize) -> usize {
        self.darts[d].next
    }

    pub fn prev(&self, d: usize) -> usize {
        let f = &self.faces[self.face_of[d]];
        let k = self.index_in_face[d];
        f.darts[(k + f.darts.len() - 1) % f.darts.len()]
    }

    pub fn twin(&self, d: usize) -> usize {
        self.darts[d].twin
    }

    /// Valence of a vertex: incident edges, loops counted twice — which
    /// is exactly the number of darts with this origin.
    pub fn valence(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// A vertex is interior when no incident dart lies in a boundary
    /// face.
    pub fn is_interior_vertex(&self, v: usize) -> bool {
        self.vertices[v]
            .iter()
            .all(|&d| self.faces[self.face_of[d]].kind != FaceKind::Boundary)
    }

    /// Boundary words (one per boundary face) and total boundary length.
    pub fn boundary_data(&self) -> (Vec<Word>, usize) {
        let mut words = Vec::new();
        let mut len = 0;
        for f in &self.faces {
            if f.kind == FaceKind::Boundary {
                words.push(Word(f.darts.iter().map(|&d| self.darts[d].label).collect()));
                len += f.darts.len();
            }
        }
        (words, len)
    }

    /// The star-graph dart of the corner at the origin of `d` (the
    /// corner of `face_of(d)` between `prev(d)` and `d`). `None` for
    /// darts in boundary faces.
    pub fn corner_star_dart(&self, p: &Presentation, g: &StarGraph, d: usize) -> Option<StarDart> {
        let face = &self.faces[self.face_of[d]];
        let FaceKind::Relator {
            relator,
            orientation,
            rotation,
        } = face.kind
        else {
            return None;
        };
        let nrel = p.relators()[relator].len();
        let root_len = p.roots()[relator].0.len();
        let k = self.index_in_face[d];
        let (pos, flip) = if orientation == 1 {
            // Face word w[k] = R[(rotation + k) mod N]: the cell arrives
            // via R[a-1], departs via R[a].
            let a = (rotation + k) % nrel;
            (((a + nrel - 1) % nrel) % root_len, false)
        } else {
            // w[k] = inverse of R[(rotation - 1 - k) mod N]: the cell
            // (read forward) passes positions m, m+1 backwards.
            let m = (rotation + 2 * nrel - 1 - k) % nrel;
            (m % root_len, true)
        };
        let edge = g.edge_at(relator, pos).expect("corner edge exists");
        Some(StarDart { edge, flip })
    }

    /// The link of a vertex as components of corners mapped to star
    /// darts. Interior vertices give one closed component; boundary
    /// vertices give one open arc per boundary-face passage.
    pub fn links(&self, p: &Presentation, g: &StarGraph) -> Vec<VertexLink> {
        let mut out = Vec::new();
        for (vid, orbit) in self.vertices.iter().enumerate() {
            let corners: Vec<Option<StarDart>> = orbit
                .iter()
                .map(|&d| self.corner_star_dart(p, g, d))
                .collect();
            if corners.iter().all(|c| c.is_some()) {
                out.push(VertexLink {
                    vertex: vid,
                    closed: true,
                    darts: corners.into_iter().map(|c| c.unwrap()).collect(),
                });
            } else {
                // Split into arcs at the boundary-face gaps.
                let n = corners.len();
                let mut i = 0;
                while i < n && corners[i].is_some() {
                    i += 1;
                }
                // i is a gap; walk once around from there.
                let mut arc: Vec<StarDart> = Vec::new();
                for t in 1..=n {
                    match corners[(i + t) % n] {
                        Some(c) => arc.push(c),
                        None => {
                            if !arc.is_empty() {
                                out.push(VertexLink {
                                    vertex: vid,
                                    closed: false,
                                    darts: std::mem::take(&mut arc),
                                });
                            }
                        }
                    }
                }
                if !arc.is_empty() {
                    out.push(VertexLink {
                        vertex: vid,
                        closed: false,
                        darts: arc,
                    });
                }
            }
        }
        out
    }

    /// No link component passes a star-graph edge twice in different
    /// directions. Returns the first offending (vertex, edge) otherwise.
    pub fn is_vertex_reduced(&self, p: &Presentation, g: &StarGraph) -> Result<(), (usize, usize)> {
        for link in self.links(p, g) {
            for (a, &da) in link.darts.iter().enumerate() {
                for &db in &link.darts[a + 1..] {
                    if db == da.reverse() {
                        return Err((link.vertex, da.edge));
                    }
                }
            }
        }
        Ok(())
    }

    /// No link component has immediate backtracking (an edge followed by
    /// its reversal; wrap-around included for closed links).
    pub fn is_reduced(&self, p: &Presentation, g: &StarGraph) -> Result<(), (usize, usize)> {
        for link in self.links(p, g) {
            let n = link.darts.len();
            let pairs = if link.closed { n } else { n.saturating_sub(1) };
            for t in 0..pairs {
                let a = link.darts[t];
                let b = link.darts[(t + 1) % n];
                if b == a.reverse() {
                    return Err((link.vertex, a.edge));
                }
            }
        }
        Ok(())
    }

    /// Find a cancelling pair for a reduction move, as the `(u, v)`
    /// arguments of [`reduction_move`]: an edge site (mirror cells
    /// across an edge) is preferred, then a vertex site (mirror cells
    /// at oppositely oriented corners of a common vertex). Only pairs of
    /// distinct 2-cells qualify.
    pub fn find_reduction_site(&self, p: &Presentation, g: &StarGraph) -> Option<(usize, usize)> {
        // Edge sites.
        for u in 0..self.darts.len() {
            let v = self.twin(u);
            if self.face_of[u] == self.face_of[v] {
                continue;
            }
            if self.is_relator_face(self.face_of[u])
                && self.is_relator_face(self.face_of[v])
                && self.cancel_precondition(u, v)
            {
                return Some((u, v));
            }
        }
        // Vertex sites: corners at a common vertex mapping to the same
        // star edge with opposite directions.
        for orbit in &self.vertices {
            for (a, &da) in orbit.iter().enumerate() {
                let Some(ca) = self.corner_star_dart(p, g, da) else {
                    continue;
                };
                for &db in &orbit[a + 1..] {
                    let Some(cb) = self.corner_star_dart(p, g, db) else {
                        continue;
                    };
                    if cb != ca.reverse() || self.face_of[da] == self.face_of[db] {
                        continue;
                    }
                    let (u, v) = (da, self.prev(db));
                    if self.cancel_precondition(u, v) {
                        return Some((u, v));
                    }
                    let (u, v) = (db, self.prev(da));
                    if self.cancel_precondition(u, v) {
                        return Some((u, v));
                    }
                }
            }
        }
        None
    }

    fn is_relator_face(&self, f: usize) -> bool {
        self.faces[f].kind != FaceKind::Boundary
    }

    /// Mirror condition for cancelling the faces of `u` and `v`:
    /// equal face lengths and `label(next^k(u)) = label(prev^k(v))^{-1}`
    /// for all k.
    pub fn cancel_precondition(&self, u: usize, v: usize) -> bool {
        let fu = self.face_of[u];
        let fv = self.face_of[v];
        if fu == fv || !self.is_relator_face(fu) || !self.is_relator_face(fv) {
            return false;
        }
        let lu = self.faces[fu].darts.len();
        if lu != self.faces[fv].darts.len() {
            return false;
        }
        let mut a = u;
        let mut b = v;
        for _ in 0..lu {
            if self.darts[a].label != self.darts[b].label.inverse() {
                return false;
            }
            a = self.next(a);
            b = self.prev(b);
        }
        true
    }

    /// Elementary reduction: delete the two mirror 2-cells of `u` and
    /// `v` (see [`Diagram::cancel_precondition`]; for an edge site pass
    /// `v = twin(u)`, for a vertex site `u` = one corner's dart and `v`
    /// = `prev` of the other corner's dart) and zip their boundary paths
    /// together. Returns the resulting connected components (the
    /// `c + c' + 1` diagrams); components whose darts vanish entirely
    /// are dropped.
    pub fn reduction_move(
        &self,
        p: &Presentation,
        u: usize,
        v: usize,
    ) -> Result<Vec<Diagram>, String> {
        if !self.cancel_precondition(u, v) {
            return Err("cancel precondition fails".into());
        }
        let l = self.faces[self.face_of[u]].darts.len();
        let mut us = Vec::with_capacity(l);
        let mut vs = Vec::with_capacity(l);
        let mut a = u;
        let mut b = v;
        for _ in 0..l {
            us.push(a);
            vs.push(b);
            a = self.next(a);
            b = self.prev(b);
        }
        let deleted_face_u = self.face_of[u];
        let deleted_face_v = self.face_of[v];
        let is_deleted =
            |d: usize| self.face_of[d] == deleted_face_u || self.face_of[d] == deleted_face_v;
        // Position lookup inside the two deleted orbits.
        let mut slot: HashMap<usize, (bool, usize)> = HashMap::new();
        for (k, &d) in us.iter().enumerate() {
            slot.insert(d, (false, k));
        }
        for (k, &d) in vs.iter().enumerate() {
            slot.insert(d, (true, k));
        }
        // Identification k glues edge(us[k]) to edge(vs[k]): the outside
        // darts twin(us[k]) and twin(vs[k]) become twins. When such an
        // outside dart is itself one of the deleted darts, follow its
        // own identification until a live dart appears; a cycle means
        // the whole edge chain vanishes.
        let resolve = |mut d: usize| -> Option<usize> {
            let start = d;
            loop {
                match slot.get(&d) {
                    None => return Some(d),
                    Some(&(in_v, k)) => {
                        // d is deleted; its edge is identified with the
                        // opposite slot's edge — continue from that
                        // outside dart.
                        d = if in_v {
                            self.twin(us[k])
                        } else {
                            self.twin(vs[k])
                        };
                        if d == start {
                            return None;
                        }
                    }
                }
            }
        };
        let mut new_twin: HashMap<usize, usize> = HashMap::new();
        for k in 0..l {
            let a = self.twin(us[k]);
            let b = self.twin(vs[k]);
            if slot.contains_key(&a) && slot.contains_key(&b) {
                continue; // both sides deleted: resolved elsewhere or vanishing
            }
            if !slot.contains_key(&a) {
                match resolve(b) {
                    Some(t) => {
                        new_twin.insert(a, t);
                        new_twin.insert(t, a);
                    }
                    None => return Err("resolution cycle reached a live dart inconsistently".into()),
                }
            } else if !slot.contains_key(&b) {
                match resolve(a) {
                    Some(t) => {
                        new_twin.insert(b, t);
                        new_twin.insert(t, b);
                    }
                    None => return Err("resolution cycle reached a live dart inconsistently".into()),
                }
            }
        }
        // Build the surviving dart set with compacted ids.
        let live: Vec<usize> = (0..self.darts.len()).filter(|&d| !is_deleted(d)).collect();
        let mut id_map: HashMap<usize, usize> = HashMap::new();
        for (ni, &d) in live.iter().enumerate() {
            id_map.insert(d, ni);
        }
        let mut darts = Vec::with_capacity(live.len());
        let mut marks = Vec::with_capacity(live.len());
        for &d in &live {
            let t = match new_twin.get(&d) {
                Some(&t) => t,
                None => self.twin(d),
            };
            darts.push(DartData {
                label: self.darts[d].label,
                twin: *id_map
                    .get(&t)
                    .ok_or_else(|| format!("twin of live dart {d} resolved to deleted {t}"))?,
                next: id_map[&self.next(d)],
            });
            marks.push(self.faces[self.face_of[d]].kind == FaceKind::Boundary);
        }
        if darts.is_empty() {
            return Ok(Vec::new());
        }
        // Split into connected components over twin ∪ next.
        let n = darts.len();
        let mut comp = vec![usize::MAX; n];
        let mut ncomp = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = ncomp;
            while let Some(d) = stack.pop() {
                for e in [darts[d].twin, darts[d].next] {
                    if comp[e] == usize::MAX {
                        comp[e] = ncomp;
                        stack.push(e);
                    }
                }
            }
            ncomp += 1;
        }
        let mut out = Vec::new();
        for c in 0..ncomp {
            let ids: Vec<usize> = (0..n).filter(|&d| comp[d] == c).collect();
            let mut remap = HashMap::new();
            for (ni, &d) in ids.iter().enumerate() {
                remap.insert(d, ni);
            }
            let cd: Vec<DartData> = ids
                .iter()
                .map(|&d| DartData {
                    label: darts[d].label,
                    twin: remap[&darts[d].twin],
                    next: remap[&darts[d].next],
                })
                .collect();
            let cm: Vec<bool> = ids.iter().map(|&d| marks[d]).collect();
            out.push(Diagram::from_parts(p, cd, &cm)?);
        }
        Ok(out)
    }

    /// DOT rendering of the 1-skeleton.
    pub fn to_dot(&self, names: &[String]) -> String {
        let mut s = String::from("graph skeleton {\n");
        for v in 0..self.vertices.len() {
            s.push_str(&format!("  v{v};\n"));
        }
        for (d, dd) in self.darts.iter().enumerate() {
            if d < dd.twin {
                s.push_str(&format!(
                    "  v{} -- v{} [label=\"{}\"];\n",
                    self.vertex_of[d],
                    self.vertex_of[dd.twin],
                    crate::words::letter_display(dd.label, names)
                ));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// One component of a vertex link, mapped into the star graph.
#[derive(Clone, Debug)]
pub struct VertexLink {
    pub vertex: usize,
    pub closed: bool,
    pub darts: Vec<StarDart>,
}

/// The suppressed view: interior valence-2 vertices deleted, their edge
/// pairs combined into long edges.
#[derive(Clone, Debug)]
pub struct Suppressed {
    /// Per vertex: interior and valence 2.
    pub suppressed: Vec<bool>,
    /// Per face: number of boundary-path edges after suppression (darts
    /// whose origin survives). Boundary faces included for reference.
    pub degree: Vec<usize>,
    /// Long edges, one record per face-side run: the face, the darts of
    /// the run, the label word, and whether the edge is interior.
    pub long_edges: Vec<LongEdge>,
}

#[derive(Clone, Debug)]
pub struct LongEdge {
    pub face: usize,
    pub darts: Vec<usize>,
    pub label: Word,
    pub interior: bool,
}

/// Compute the suppressed view of a diagram.
pub fn suppress(m: &Diagram) -> Suppressed {
    let suppressed: Vec<bool> = (0..m.vertices.len())
        .map(|v| m.is_interior_vertex(v) && m.valence(v) == 2)
        .collect();
    let mut degree = Vec::with_capacity(m.faces.len());
    let mut long_edges = Vec::new();
    for (fid, f) in m.faces.iter().enumerate() {
        let deg = f
            .darts
            .iter()
            .filter(|&&d| !suppressed[m.vertex_of(d)])
            .count();
        degree.push(deg);
        if deg == 0 {
            continue; // face bounded entirely by suppressed vertices
        }
        // Runs start at darts with unsuppressed origin.
        for (k, &d0) in f.darts.iter().enumerate() {
            if suppressed[m.vertex_of(d0)] {
                continue;
            }
            let mut run = vec![d0];
            let mut k2 = (k + 1) % f.darts.len();
            while suppressed[m.vertex_of(f.darts[k2])] {
                run.push(f.darts[k2]);
                k2 = (k2 + 1) % f.darts.len();
            }
            let interior = run.iter().all(|&d| {
                m.is_relator_face(m.face_of(d)) && m.is_relator_face(m.face_of(m.twin(d)))
            });
            long_edges.push(LongEdge {
                face: fid,
                label: Word(run.iter().map(|&d| m.darts[d].label).collect()),
                darts: run,
                interior,
            });
        }
    }
    Suppressed {
        suppressed,
        degree,
        long_edges,
    }
}

/// A weight function on corners (units of π), keyed by the dart whose
/// origin carries the corner. Missing corners weigh 0.
pub type WeightFunction = HashMap<usize, Rational>;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact curvature accounting (units of π) at unsuppressed granularity:
/// `Σ_v κ(v) + Σ_D κ(D)` with `κ(v) = 2 − #gaps − g(v)` (one gap per
/// boundary-face passage; interior vertices have none) and
/// `κ(D) = g(D) − (d(D) − 2)` over relator faces. The right side of
/// the identity is `2χ(M)`.
pub fn curvature_check(m: &Diagram, g: &WeightFunction) -> (Rational, Rational) {
    let zero = Rational::zero;
    let corner_weight = |d: usize| -> Rational {
        if m.is_relator_face(m.face_of(d)) {
            g.get(&d).cloned().unwrap_or_else(zero)
        } else {
            zero()
        }
    };
    let mut lhs = Rational::zero();
    for orbit in m.vertices.iter() {
        let gv: Rational = orbit.iter().map(|&d| corner_weight(d)).sum();
        // Each passage of a boundary face contributes a gap of angle π:
        // κ(v) = (2 − #gaps − g(v))·π. Interior vertices have no gaps.
        let gaps = orbit
            .iter()
            .filter(|&&d| !m.is_relator_face(m.face_of(d)))
            .count() as i64;
        lhs += rat(2 - gaps, 1) - gv;
    }
    for f in &m.faces {
        if f.kind == FaceKind::Boundary {
            continue;
        }
        let gd: Rational = f.darts.iter().map(|&d| corner_weight(d)).sum();
        let d = f.darts.len() as i64;
        lhs += gd - rat(d - 2, 1);
    }
    (lhs, rat(2 * m.chi(), 1))
}

/// The piecewise-Euclidean weights at suppressed granularity: every
/// corner of a suppressed-degree-`d` cell at an unsuppressed vertex
/// gets `(d − 2)/d`; corners at suppressed vertices carry no weight.
pub fn pe_weights(m: &Diagram) -> WeightFunction {
    let s = suppress(m);
    let mut g = WeightFunction::new();
    for (fid, f) in m.faces.iter().enumerate() {
        if f.kind == FaceKind::Boundary {
            continue;
        }
        let d = s.degree[fid] as i64;
        if d == 0 {
            continue;
        }
        for &dart in &f.darts {
            if !s.suppressed[m.vertex_of(dart)] {
                g.insert(dart, rat(d - 2, d));
            }
        }
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightVariant {
    /// Hypotheses: `g(D) ≤ d(D) − 2`; `g(v) ≥ 2 + ε` at inner vertices;
    /// `g(δM) ≥ −N·l(δM)`. Conclusion: `V ≤ ((2+N)/ε)·l` when
    /// `χ(M) ≥ 0`, else `((4+N)/ε)·l`.
    Thm10,
    /// Hypotheses: `g(D) ≤ d(D) − 2 − ε`; `g(v) ≥ 2` at inner vertices;
    /// `g(δM) ≥ −N·l(δM)`. Conclusion: `F ≤ ((3+N)/ε)·l`.
    Thm11,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub holds: bool,
    /// The theorem's linear bound (on V for Thm10, on F for Thm11).
    pub bound: Rational,
    /// The quantity the bound constrains, for convenience.
    pub actual: usize,
}

/// Check the weight hypotheses of the linear isoperimetric theorems at
/// suppressed granularity and return the conclusion bound.
pub fn verify_weight_hypotheses(
    m: &Diagram,
    g: &WeightFunction,
    epsilon: &Rational,
    n_const: &Rational,
    variant: WeightVariant,
) -> WeightReport {
    let s = suppress(m);
    let zero = Rational::zero;
    let corner_weight = |d: usize| -> Rational {
        if m.is_relator_face(m.face_of(d)) && !s.suppressed[m.vertex_of(d)] {
            g.get(&d).cloned().unwrap_or_else(zero)
        } else {
            zero()
        }
    };
    let mut holds = true;
    // Cells.
    for (fid, f) in m.faces.iter().enumerate() {
        if f.kind == FaceKind::Boundary {
            continue;
        }
        let gd: Rational = f.darts.iter().map(|&d| corner_weight(d)).sum();
        let d = rat(s.degree[fid] as i64, 1);
        let cap = match variant {
            WeightVariant::Thm10 => d - rat(2, 1),
            WeightVariant::Thm11 => d - rat(2, 1) - epsilon.clone(),
        };
        if gd > cap {
            holds = false;
        }
    }
    // Inner (unsuppressed interior) vertices.
    for (vid, orbit) in m.vertices.iter().enumerate() {
        if s.suppressed[vid] || !m.is_interior_vertex(vid) {
            continue;
        }
        let gv: Rational = orbit.iter().map(|&d| corner_weight(d)).sum();
        let floor = match variant {
            WeightVariant::Thm10 => rat(2, 1) + epsilon.clone(),
            WeightVariant::Thm11 => rat(2, 1),
        };
        if gv < floor {
            holds = false;
        }
    }
    // Boundary weight.
    let (_, l) = if m.tau() > 0 {
        m.boundary_data()
    } else {
        (Vec::new(), 0)
    };
    let g_boundary: Rational = m
        .vertices
        .iter()
        .enumerate()
        .filter(|(vid, _)| !m.is_interior_vertex(*vid))
        .flat_map(|(_, orbit)| orbit.iter().map(|&d| corner_weight(d)))
        .sum();
    let l_rat = rat(l as i64, 1);
    if g_boundary < -(n_const.clone() * l_rat.clone()) {
        holds = false;
    }
    let (bound, actual) = match variant {
        WeightVariant::Thm10 => {
            let factor = if m.chi() >= 0 { rat(2, 1) } else { rat(4, 1) };
            let unsuppressed_vertices =
                s.suppressed.iter().filter(|&&b| !b).count();
            (
                (factor + n_const.clone()) / epsilon.clone() * l_rat,
                unsuppressed_vertices,
            )
        }
        WeightVariant::Thm11 => (
            (rat(3, 1) + n_const.clone()) / epsilon.clone() * l_rat,
            m.relator_face_count(),
        ),
    };
    WeightReport {
        holds,
        bound,
        actual,
    }
}

/// Direct evaluation of the defining angle inequality of a condition on
/// a concrete diagram (units of π): for the vertex conditions every
/// inner vertex of the suppressed diagram must have PE angle sum `≥ 2`
/// (`>` for the strict variant); for the cell conditions every interior
/// 2-cell, with corner angles `2/valence` at inner vertices, must have
/// angle sum `≤ d(D) − 2` (`<` for strict).
pub fn diagram_type_check(p: &Presentation, m: &Diagram, cond: crate::conditions::Condition) -> bool {
    use crate::conditions::Condition;
    let s = suppress(m);
    match cond {
        Condition::WStar | Condition::VStar => {
            let g = pe_weights(m);
            for (vid, orbit) in m.vertices.iter().enumerate() {
                if s.suppressed[vid] || !m.is_interior_vertex(vid) {
                    continue;
                }
                let gv: Rational = orbit
                    .iter()
                    .map(|&d| g.get(&d).cloned().unwrap_or_else(Rational::zero))
                    .sum();
                let ok = if cond == Condition::VStar {
                    gv > rat(2, 1)
                } else {
                    gv >= rat(2, 1)
                };
                if !ok {
                    return false;
                }
            }
            // Condition (a): every 2-cell has suppressed degree >= 3.
            m.faces.iter().enumerate().all(|(fid, f)| {
                f.kind == FaceKind::Boundary || s.degree[fid] >= 3
            })
        }
        Condition::W | Condition::V => {
            let _ = p;
            // Corner angle 2/valence at inner unsuppressed vertices.
            for (fid, f) in m.faces.iter().enumerate() {
                if f.kind == FaceKind::Boundary {
                    continue;
                }
                // Only interior cells (no vertex on the boundary) are
                // constrained.
                let interior_cell = f.darts.iter().all(|&d| {
                    m.is_interior_vertex(m.vertex_of(d))
                        && m.is_interior_vertex(m.vertex_of(m.twin(d)))
                });
                if !interior_cell {
                    continue;
                }
                let gd: Rational = f
                    .darts
                    .iter()
                    .filter(|&&d| !s.suppressed[m.vertex_of(d)])
                    .map(|&d| rat(2, m.valence(m.vertex_of(d)) as i64))
                    .sum();
                let cap = rat(s.degree[fid] as i64 - 2, 1);
                let ok = if cond == Condition::V { gd < cap } else { gd <= cap };
                if !ok {
                    return false;
                }
            }
            true
        }
    }
}

/// JSON representation per the published schema.
#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    darts: Vec<DartRepr>,
    faces: Vec<FaceRepr>,
}

#[derive(Serialize, Deserialize)]
struct DartRepr {
    id: usize,
    label: Letter,
    twin: usize,
    next: usize,
}

#[derive(Serialize, Deserialize)]
struct FaceRepr {
    darts: Vec<usize>,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    relator: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orientation: Option<i8>,
}

impl Diagram {
    pub fn to_json(&self) -> serde_json::Value {
        let repr = DiagramRepr {
            darts: self
                .darts
                .iter()
                .enumerate()
                .map(|(id, d)| DartRepr {
                    id,
                    label: d.label,
                    twin: d.twin,
                    next: d.next,
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| match f.kind {
                    FaceKind::Relator {
                        relator,
                        orientation,
                        ..
                    } => FaceRepr {
                        darts: f.darts.clone(),
                        kind: "relator".into(),
                        relator: Some(relator),
                        orientation: Some(orientation),
                    },
                    FaceKind::Boundary => FaceRepr {
                        darts: f.darts.clone(),
                        kind: "boundary".into(),
                        relator: None,
                        orientation: None,
                    },
                })
                .collect(),
        };
        serde_json::to_value(&repr).expect("serializable")
    }

    /// Load and re-verify a diagram from its JSON form: face orbits are
    /// recomputed and checked against the stored ones.
    pub fn from_json(p: &Presentation, value: &serde_json::Value) -> Result<Diagram, String> {
        let repr: DiagramRepr =
            serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
        let n = repr.darts.len();
        let mut darts = vec![
            DartData {
                label: Letter::new(0, false),
                twin: 0,
                next: 0
            };
            n
        ];
        for d in &repr.darts {
            if d.id >= n {
                return Err(format!("dart id {} out of range", d.id));
            }
            darts[d.id] = DartData {
                label: d.label,
                twin: d.twin,
                next: d.next,
            };
        }
        let mut marks = vec![false; n];
        for f in &repr.faces {
            for &d in &f.darts {
                if d >= n {
                    return Err(format!("face refers to unknown dart {d}"));
                }
                marks[d] = f.kind == "boundary";
            }
        }
        let dg = Diagram::from_parts(p, darts, &marks)?;
        // Verify the stored orbits match the recomputed ones.
        for f in &repr.faces {
            if f.darts.is_empty() {
                return Err("empty face in JSON".into());
            }
            let fid = dg.face_of(f.darts[0]);
            let recomputed = &dg.faces[fid].darts;
            let k = recomputed
                .iter()
                .position(|&d| d == f.darts[0])
                .ok_or("face mismatch")?;
            let rotated: Vec<usize> = (0..recomputed.len())
                .map(|t| recomputed[(k + t) % recomputed.len()])
                .collect();
            if rotated != f.darts {
                return Err("stored face orbit disagrees with recomputed orbit".into());
            }
        }
        Ok(dg)
    }
}

/// Evaluate a condition's table data directly against a diagram via the
/// star graph (convenience used by tests).
pub fn star_graph_of(p: &Presentation) -> StarGraph {
    build_star_graph(p)
}
