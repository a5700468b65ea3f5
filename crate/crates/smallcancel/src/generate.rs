//! Construction and random generation of diagrams: single-cell disks,
//! growth by gluing relator cells along boundary segments, mirror
//! doubling to spheres, annuli, and planted cancelling pairs.

use crate::diagram::{DartData, Diagram, FaceKind};
use crate::presentation::Presentation;
use crate::words::{rotate, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The disk consisting of one relator cell: `rotate(R_i, rotation)`
/// when `orientation = +1`, the inverse of that rotation when `−1`.
pub fn single_cell_disk(
    p: &Presentation,
    relator: usize,
    orientation: i8,
    rotation: usize,
) -> Result<Diagram, String> {
    let mut w = rotate(&p.relators()[relator].word(), rotation);
    if orientation == -1 {
        w = w.inverse();
    }
    single_cell_disk_from_word(p, &w)
}

/// The disk consisting of one relator cell with the given boundary
/// word (which must read a rotation of some `R_i^{±1}`).
pub fn single_cell_disk_from_word(p: &Presentation, w: &Word) -> Result<Diagram, String> {
    let l = w.len();
    if l == 0 {
        return Err("empty relator".into());
    }
    // Cell darts 0..l (next in a cycle), boundary darts l..2l: the twin
    // of cell dart k is l + k, and the boundary face runs in reverse.
    let mut darts = Vec::with_capacity(2 * l);
    for k in 0..l {
        darts.push(DartData {
            label: w.letters()[k],
            twin: l + k,
            next: (k + 1) % l,
        });
    }
    for k in 0..l {
        darts.push(DartData {
            label: w.letters()[k].inverse(),
            twin: k,
            next: l + (k + l - 1) % l,
        });
    }
    let mut marks = vec![false; 2 * l];
    for m in marks.iter_mut().skip(l) {
        *m = true;
    }
    Diagram::from_parts(p, darts, &marks)
}

/// Glue a fresh relator cell onto `m` along the boundary segment of
/// `ell` darts starting at `beta1` (consecutive in the boundary face).
/// `w` is the full boundary word of the new cell; its first `ell`
/// letters must equal the segment labels, and it must read a rotation
/// of some relator or its inverse. With `ell = |w| = |B|` the last
/// boundary face is consumed and the result is a sphere.
pub fn glue_cell(
    p: &Presentation,
    m: &Diagram,
    beta1: usize,
    ell: usize,
    w: &Word,
) -> Result<Diagram, String> {
    let l = w.len();
    if ell == 0 || ell > l {
        return Err("segment length out of range".into());
    }
    let bface = m.face_of(beta1);
    if m.faces[bface].kind != FaceKind::Boundary {
        return Err("beta1 is not a boundary dart".into());
    }
    let blen = m.faces[bface].darts.len();
    if ell > blen || (ell == blen && ell < l) {
        return Err("segment exceeds the boundary face".into());
    }
    let mut betas = Vec::with_capacity(ell);
    let mut d = beta1;
    for k in 0..ell {
        if m.darts[d].label != w.letters()[k] {
            return Err(format!("segment label mismatch at position {k}"));
        }
        betas.push(d);
        d = m.next(d);
    }
    let closing_sphere = ell == l && ell == blen;
    let n = m.darts.len();
    let fresh = l - ell; // darts c_ell..c_{l-1}, twins after them
    let mut darts = m.darts.clone();
    let mut marks: Vec<bool> = (0..n)
        .map(|d| m.faces[m.face_of(d)].kind == FaceKind::Boundary)
        .collect();
    // Segment darts move into the new cell.
    for &b in &betas {
        marks[b] = false;
    }
    let prev_b = m.prev(beta1);
    let next_after = m.next(betas[ell - 1]);
    if fresh == 0 {
        if !closing_sphere {
            darts[prev_b].next = next_after;
        }
        // next(beta_ell) must close the new cell.
        darts[betas[ell - 1]].next = beta1;
        return Diagram::from_parts(p, darts, &marks);
    }
    let c = |k: usize| n + (k - ell); // cell dart for position k in ell..l
    let chat = |k: usize| n + fresh + (k - ell);
    for k in ell..l {
        darts.push(DartData {
            label: w.letters()[k],
            twin: chat(k),
            next: if k + 1 < l { c(k + 1) } else { beta1 },
        });
        marks.push(false);
    }
    for k in ell..l {
        darts.push(DartData {
            label: w.letters()[k].inverse(),
            twin: c(k),
            next: if k > ell { chat(k - 1) } else { next_after },
        });
        marks.push(true);
    }
    darts[betas[ell - 1]].next = c(ell);
    darts[prev_b].next = chat(l - 1);
    Diagram::from_parts(p, darts, &marks)
}

/// Glue the mirror image of the relator cell across the boundary dart
/// `b` (whose twin must lie in a relator face). The result contains a
/// cancelling pair across that edge, so it is never reduced.
pub fn glue_mirror_cell(p: &Presentation, m: &Diagram, b: usize) -> Result<Diagram, String> {
    let u = m.twin(b);
    let fu = m.face_of(u);
    if m.faces[fu].kind == FaceKind::Boundary {
        return Err("twin of b is not in a relator face".into());
    }
    let l = m.faces[fu].darts.len();
    let mut wu = Vec::with_capacity(l);
    let mut d = u;
    for _ in 0..l {
        wu.push(m.darts[d].label);
        d = m.next(d);
    }
    // Mirror word from b: inv(w_0), inv(w_{l-1}), ..., inv(w_1).
    let mut v = vec![wu[0].inverse()];
    for k in (1..l).rev() {
        v.push(wu[k].inverse());
    }
    glue_cell(p, m, b, 1, &Word(v))
}

/// Double a disk across its boundary: the mirror image is glued along
/// the boundary circle, producing a spherical diagram.
pub fn mirror_double(p: &Presentation, m: &Diagram) -> Result<Diagram, String> {
    if m.tau() != 1 {
        return Err("mirror_double expects a disk".into());
    }
    let n = m.darts.len();
    let in_b = |d: usize| m.faces[m.face_of(d)].kind == FaceKind::Boundary;
    // Kept darts: originals not in B; copies n+e with twin(e) not in B.
    let mut keep = vec![false; 2 * n];
    for d in 0..n {
        keep[d] = !in_b(d);
        keep[n + d] = !in_b(m.twin(d));
    }
    let mut id_map = vec![usize::MAX; 2 * n];
    let mut count = 0;
    for (d, &k) in keep.iter().enumerate() {
        if k {
            id_map[d] = count;
            count += 1;
        }
    }
    let mut darts = vec![
        DartData {
            label: crate::words::Letter::new(0, false),
            twin: 0,
            next: 0,
        };
        count
    ];
    for d in 0..n {
        if keep[d] {
            let twin = if in_b(m.twin(d)) {
                n + m.twin(d)
            } else {
                m.twin(d)
            };
            darts[id_map[d]] = DartData {
                label: m.darts[d].label,
                twin: id_map[twin],
                next: id_map[m.next(d)],
            };
        }
        if keep[n + d] {
            // Mirrored faces traverse twin darts in reverse order.
            let next = n + m.twin(m.prev(m.twin(d)));
            let twin = if in_b(d) { m.twin(d) } else { n + m.twin(d) };
            darts[id_map[n + d]] = DartData {
                label: m.darts[d].label,
                twin: id_map[twin],
                next: id_map[next],
            };
        }
    }
    let marks = vec![false; count];
    Diagram::from_parts(p, darts, &marks)
}

/// Reopen a relator face of a diagram as a boundary face (turning a
/// sphere into a disk, or a disk into an annular diagram).
pub fn open_face(p: &Presentation, m: &Diagram, face: usize) -> Result<Diagram, String> {
    if m.faces[face].kind == FaceKind::Boundary {
        return Err("face is already a boundary face".into());
    }
    let mut marks: Vec<bool> = (0..m.darts.len())
        .map(|d| m.faces[m.face_of(d)].kind == FaceKind::Boundary)
        .collect();
    for &d in &m.faces[face].darts {
        marks[d] = true;
    }
    Diagram::from_parts(p, m.darts.clone(), &marks)
}

/// All cell words (rotations of relators and their inverses) starting
/// with the given letter.
fn matching_cell_words(p: &Presentation, first: crate::words::Letter) -> Vec<Word> {
    let mut out = Vec::new();
    for r in p.relators() {
        let w = r.word();
        for rot in 0..w.len() {
            let c = rotate(&w, rot);
            if c.letters()[0] == first {
                out.push(c.clone());
            }
            let ci = c.inverse();
            if ci.letters()[0] == first {
                out.push(ci);
            }
        }
    }
    out
}

/// Grow a disk by repeatedly gluing random relator cells along single
/// boundary edges. Returns a diagram with `cells` relator faces.
pub fn grow_disk(p: &Presentation, rng: &mut ChaCha8Rng, cells: usize) -> Result<Diagram, String> {
    let relator = rng.gen_range(0..p.relators().len());
    let rot = rng.gen_range(0..p.relators()[relator].len());
    let orientation = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut m = single_cell_disk(p, relator, orientation, rot)?;
    while m.relator_face_count() < cells {
        let boundary: Vec<usize> = m
            .faces
            .iter()
            .filter(|f| f.kind == FaceKind::Boundary)
            .flat_map(|f| f.darts.iter().copied())
            .collect();
        let &b = boundary.choose(rng).ok_or("no boundary left")?;
        let choices = matching_cell_words(p, m.darts[b].label);
        let w = choices.choose(rng).ok_or("no matching cell word")?;
        m = glue_cell(p, &m, b, 1, w)?;
    }
    Ok(m)
}

/// Grow a disk and reject until it is vertex reduced (or the attempt
/// budget runs out).
pub fn grow_vertex_reduced_disk(
    p: &Presentation,
    rng: &mut ChaCha8Rng,
    cells: usize,
    attempts: usize,
) -> Result<Diagram, String> {
    let g = crate::stargraph::build_star_graph(p);
    for _ in 0..attempts {
        let m = grow_disk(p, rng, cells)?;
        if m.is_vertex_reduced(p, &g).is_ok() {
            return Ok(m);
        }
    }
    Err("no vertex-reduced diagram found within the attempt budget".into())
}

/// Grow a disk and then plant a cancelling mirror cell across a random
/// boundary edge, yielding a non-reduced diagram with a known
/// reduction site.
pub fn grow_with_planted_pair(
    p: &Presentation,
    rng: &mut ChaCha8Rng,
    cells: usize,
) -> Result<Diagram, String> {
    let m = grow_disk(p, rng, cells.max(1))?;
    let boundary: Vec<usize> = m
        .faces
        .iter()
        .filter(|f| f.kind == FaceKind::Boundary)
        .flat_map(|f| f.darts.iter().copied())
        .filter(|&d| m.faces[m.face_of(m.twin(d))].kind != FaceKind::Boundary)
        .collect();
    let &b = boundary.choose(rng).ok_or("no usable boundary dart")?;
    glue_mirror_cell(p, &m, b)
}
