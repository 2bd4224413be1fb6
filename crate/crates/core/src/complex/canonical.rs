use super::{Triangulation, VertexId};

/// Isomorphism-invariant key of a triangulation under relabelings that map
/// the corner cycle to itself by a dihedral symmetry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u32>);

impl CanonicalKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

const UNSEEN: u32 = u32::MAX;

/// Breadth-first relabeling of the rotation system rooted at a corner, for
/// each of the `2n` framings; the lexicographically smallest encoding wins.
pub(super) fn canonical_key(t: &Triangulation) -> CanonicalKey {
    canonical_labeling(t).0
}

/// The key together with the vertex labeling that produced it.
fn canonical_labeling(t: &Triangulation) -> (CanonicalKey, Vec<u32>) {
    let n = t.complex().corner_count();
    let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
    for start in 0..n {
        for mirrored in [false, true] {
            let (code, label) = encode(t, start, mirrored);
            if best.as_ref().is_none_or(|b| code < b.0) {
                best = Some((code, label));
            }
        }
    }
    let (code, label) = best.expect("at least three corners");
    (CanonicalKey(code), label)
}

/// A vertex map `a -> b` carrying corners, triangles and condition of `a`
/// onto those of `b`, if the two are isomorphic.
pub(super) fn isomorphism(a: &Triangulation, b: &Triangulation) -> Option<Vec<VertexId>> {
    let (ka, la) = canonical_labeling(a);
    let (kb, lb) = canonical_labeling(b);
    if ka != kb {
        return None;
    }
    let mut inverse = vec![0; lb.len()];
    for (v, &l) in lb.iter().enumerate() {
        inverse[l as usize] = v as VertexId;
    }
    Some(la.iter().map(|&l| inverse[l as usize]).collect())
}

fn encode(t: &Triangulation, start: usize, mirrored: bool) -> (Vec<u32>, Vec<u32>) {
    let cx = t.complex();
    let corners = cx.corners();
    let n = corners.len();
    let vc = cx.vertex_count();
    let step = |i: usize| if mirrored { (i + n - 1) % n } else { (i + 1) % n };

    let mut label = vec![UNSEEN; vc];
    let mut next_label = 0u32;
    let root = corners[start];
    label[root as usize] = next_label;
    next_label += 1;
    let mut queue: Vec<(VertexId, VertexId)> = vec![(root, corners[step(start)])];
    let mut head = 0;
    while head < queue.len() {
        let (v, reference) = queue[head];
        head += 1;
        let rot = cx.rotation(v);
        let len = rot.len();
        let pos = rot.iter().position(|&u| u == reference).expect("reference is a neighbor");
        for j in 0..len {
            let idx = if mirrored { (pos + len - j) % len } else { (pos + j) % len };
            let u = rot[idx];
            if label[u as usize] == UNSEEN {
                label[u as usize] = next_label;
                next_label += 1;
                queue.push((u, v));
            }
        }
    }

    let mut code = Vec::with_capacity(4 + n + t.condition().len() + 3 * cx.triangles().len());
    code.push(vc as u32);
    code.push(n as u32);
    let mut i = start;
    for _ in 0..n {
        code.push(label[corners[i] as usize]);
        i = step(i);
    }
    let mut cond: Vec<u32> = t.condition().members().iter().map(|&v| label[v as usize]).collect();
    cond.sort_unstable();
    code.push(cond.len() as u32);
    code.extend(cond);
    let mut tris: Vec<[u32; 3]> = cx
        .triangles()
        .iter()
        .map(|tri| {
            let mut s = tri.0.map(|v| label[v as usize]);
            s.sort_unstable();
            s
        })
        .collect();
    tris.sort_unstable();
    code.extend(tris.into_iter().flatten());
    (code, label)
}
