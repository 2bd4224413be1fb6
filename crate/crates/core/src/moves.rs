//! Moves that shrink or reshape a triangulation: edge contraction, mosquito
//! elimination, subdivision deletion, killing a triangle, and the flip of a
//! diagonal inside the condition region.
//!
//! Every move that removes vertices returns a [`VertexMap`] from old to new
//! vertex ids; surviving vertices keep their relative order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, Condition, DiskComplex, Edge, GoodEdgeType, Triangle, Triangulation, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("edge {0} is not good")]
    NotGoodEdge(Edge),
    #[error("condition is separating")]
    NotNonSeparating,
    #[error("vertex {0} is not a mosquito")]
    NotAMosquito(VertexId),
    #[error("{0:?} is not a subdivision")]
    NotASubdivision([VertexId; 3]),
    #[error("condition after deleting a subdivision is ambiguous: {restricted:?} vs {spanned:?}")]
    ConditionMismatch { restricted: Vec<VertexId>, spanned: Vec<VertexId> },
    #[error("triangle {0} is not killable")]
    NotKillable(Triangle),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Old vertex id to new vertex id, or `None` for a deleted vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    pub mapping: Vec<Option<VertexId>>,
}

impl VertexMap {
    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.mapping[v as usize]
    }

    pub fn new_vertex_count(&self) -> usize {
        self.mapping.iter().flatten().map(|&v| v as usize + 1).max().unwrap_or(0)
    }

    /// Compacts ids after deleting `removed`; `merged` optionally sends one
    /// removed vertex onto a survivor instead of deleting it.
    fn compacting(vertex_count: usize, removed: &[bool], merged: Option<(VertexId, VertexId)>) -> Self {
        let mut next = 0;
        let mut mapping: Vec<Option<VertexId>> = removed
            .iter()
            .map(|&r| {
                if r {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect();
        if let Some((from, onto)) = merged {
            mapping[from as usize] = mapping[onto as usize];
        }
        debug_assert_eq!(mapping.len(), vertex_count);
        VertexMap { mapping }
    }
}

fn rebuild(
    t: &Triangulation,
    map: &VertexMap,
    triangles: impl IntoIterator<Item = [VertexId; 3]>,
    condition: impl IntoIterator<Item = VertexId>,
) -> Result<Triangulation, MoveError> {
    let f = |v: VertexId| map.get(v).expect("surviving vertex");
    let tris: Vec<[VertexId; 3]> = triangles.into_iter().map(|tri| tri.map(f)).collect();
    let corners = t.complex().corners().iter().map(|&c| f(c)).collect();
    let cond = Condition::from_members(condition.into_iter().map(f));
    let complex = DiskComplex::new(map.new_vertex_count(), tris, corners)?;
    Ok(Triangulation::new(complex, cond)?)
}

/// Vertex set of a list of triangle indices.
fn span(cx: &DiskComplex, faces: impl IntoIterator<Item = usize>) -> Vec<VertexId> {
    let mut v: Vec<VertexId> = faces.into_iter().flat_map(|i| cx.triangle(i).0).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Contracts a good edge. The survivor is the corner endpoint if there is
/// one, otherwise the lower id. The new condition is the image of the
/// vertices of `Triangles(C)` minus the two triangles on the edge.
pub fn contract(t: &Triangulation, e: Edge) -> Result<(Triangulation, VertexMap), MoveError> {
    if !t.is_non_separating() {
        return Err(MoveError::NotNonSeparating);
    }
    if t.good_edge_type(e).is_none() {
        return Err(MoveError::NotGoodEdge(e));
    }
    contract_unchecked(t, e)
}

fn contract_unchecked(t: &Triangulation, e: Edge) -> Result<(Triangulation, VertexMap), MoveError> {
    let cx = t.complex();
    let (keep, drop) = if cx.is_corner(e.hi) { (e.hi, e.lo) } else { (e.lo, e.hi) };
    let doomed = cx.faces_of_edge(e);
    let mut removed = vec![false; cx.vertex_count()];
    removed[drop as usize] = true;
    let map = VertexMap::compacting(cx.vertex_count(), &removed, Some((drop, keep)));
    let tris = (0..cx.triangles().len()).filter(|i| !doomed.contains(i)).map(|i| cx.triangle(i).0);
    let kept_condition: Vec<usize> = t.triangles_of_condition().into_iter().filter(|i| !doomed.contains(i)).collect();
    let cond = span(cx, kept_condition);
    let out = rebuild(t, &map, tris, cond)?;
    Ok((out, map))
}

/// Re-triangulates the polygon `link` (in cyclic order) without interior
/// vertices and without repeating an edge of `cx` outside the polygon.
fn triangulate_polygon(cx: &DiskComplex, link: &[VertexId]) -> Option<Vec<[VertexId; 3]>> {
    let d = link.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| link[i]);
    for apex in order {
        let ok = (2..d - 1).all(|j| !cx.has_edge(link[apex], link[(apex + j) % d]));
        if ok {
            return Some((1..d - 1).map(|j| [link[apex], link[(apex + j) % d], link[(apex + j + 1) % d]]).collect());
        }
    }
    let mut out = Vec::new();
    ear_search(cx, link.to_vec(), &mut Vec::new(), &mut out).then_some(out)
}

fn ear_search(cx: &DiskComplex, poly: Vec<VertexId>, added: &mut Vec<Edge>, out: &mut Vec<[VertexId; 3]>) -> bool {
    let d = poly.len();
    if d == 3 {
        out.push([poly[0], poly[1], poly[2]]);
        return true;
    }
    for i in 0..d {
        let (a, b, c) = (poly[(i + d - 1) % d], poly[i], poly[(i + 1) % d]);
        let chord = Edge::new(a, c);
        if cx.has_edge(a, c) || added.contains(&chord) {
            continue;
        }
        let mut rest = poly.clone();
        rest.remove(i);
        added.push(chord);
        out.push([a, b, c]);
        if ear_search(cx, rest, added, out) {
            return true;
        }
        out.pop();
        added.pop();
    }
    false
}

/// Deletes a mosquito and fills its star with triangles that have no
/// interior vertex, a fan from the lowest link vertex whenever that fan is
/// simplicial.
pub fn eliminate_mosquito(t: &Triangulation, v: VertexId) -> Result<(Triangulation, VertexMap), MoveError> {
    if !t.mosquitos().contains(&v) {
        return Err(MoveError::NotAMosquito(v));
    }
    let cx = t.complex();
    let link = cx.rotation(v).to_vec();
    let fill = triangulate_polygon(cx, &link)
        .ok_or_else(|| MoveError::PreconditionFailed(format!("star of {v} cannot be re-triangulated")))?;
    let mut removed = vec![false; cx.vertex_count()];
    removed[v as usize] = true;
    let map = VertexMap::compacting(cx.vertex_count(), &removed, None);
    let tris = cx.triangles().iter().filter(|tri| !tri.contains(v)).map(|tri| tri.0).chain(fill);
    let cond = t.condition().members().iter().copied().filter(|&u| u != v).collect::<Vec<_>>();
    let out = rebuild(t, &map, tris, cond)?;
    Ok((out, map))
}

/// Replaces everything inside the subdivision `triple` with the single
/// triangle it bounds.
pub fn delete_subdivision(t: &Triangulation, triple: [VertexId; 3]) -> Result<(Triangulation, VertexMap), MoveError> {
    let cx = t.complex();
    let mut triple = triple;
    triple.sort_unstable();
    let inside = cx.subdivision_interior(triple).ok_or(MoveError::NotASubdivision(triple))?;
    if triple.iter().all(|&v| t.in_condition(v)) {
        return Err(MoveError::PreconditionFailed(format!("{triple:?} lies entirely in the condition")));
    }
    let mut removed = vec![false; cx.vertex_count()];
    for &i in &inside {
        for v in cx.triangle(i).0 {
            if !triple.contains(&v) {
                removed[v as usize] = true;
            }
        }
    }
    let normalize = |mut s: Vec<VertexId>| {
        if s.len() <= 2 {
            s.clear();
        }
        s
    };
    let restricted = normalize(t.condition().members().iter().copied().filter(|&v| !removed[v as usize]).collect());
    let spanned = normalize(span(cx, t.triangles_of_condition().into_iter().filter(|i| !inside.contains(i))));
    if restricted != spanned {
        return Err(MoveError::ConditionMismatch { restricted, spanned });
    }
    let map = VertexMap::compacting(cx.vertex_count(), &removed, None);
    let tris = (0..cx.triangles().len())
        .filter(|i| !inside.contains(i))
        .map(|i| cx.triangle(i).0)
        .chain(std::iter::once(triple));
    let out = rebuild(t, &map, tris, restricted)?;
    Ok((out, map))
}

/// The innermost subdivision: fewest enclosed triangles, then lowest triple.
pub fn innermost_subdivision(t: &Triangulation) -> Option<[VertexId; 3]> {
    let cx = t.complex();
    t.subdivisions()
        .into_iter()
        .filter_map(|s| cx.subdivision_interior(s).map(|inside| (inside.len(), s)))
        .min()
        .map(|(_, s)| s)
}

#[derive(Clone, Debug)]
pub enum KillOutcome {
    /// Killing with an empty condition: the same complex conditioned on the
    /// killed triangle.
    Single(Triangulation),
    /// Killing next to a nonempty condition.
    Pair {
        /// The edge shared by the killed triangle and the condition region.
        edge: Edge,
        contracted: Triangulation,
        map: VertexMap,
        /// Same complex with the condition enlarged by the killed triangle.
        extended: Triangulation,
        /// `extended` has mosquitos and contributes nothing.
        discarded: bool,
    },
}

pub fn kill(t: &Triangulation, tri: Triangle) -> Result<KillOutcome, MoveError> {
    let killable = t.killable_triangles().map_err(|_| MoveError::NotNonSeparating)?;
    if !killable.iter().any(|k| k.sorted() == tri.sorted()) {
        return Err(MoveError::NotKillable(tri));
    }
    let cx = t.complex();
    let idx = cx.find_triangle(tri.0).expect("killable triangle is a face");
    let mut members = t.condition().members().to_vec();
    members.extend(tri.0);
    let extended = t.with_condition(Condition::from_members(members))?;
    if t.condition().is_empty() {
        return Ok(KillOutcome::Single(extended));
    }
    let edge = t
        .condition_edge(idx)
        .ok_or_else(|| MoveError::PreconditionFailed(format!("{tri} does not meet the condition along an edge")))?;
    if t.good_edge_type(edge) != Some(GoodEdgeType::Type2) {
        return Err(MoveError::NotGoodEdge(edge));
    }
    let (contracted, map) = contract_unchecked(t, edge)?;
    let discarded = !extended.mosquitos().is_empty();
    Ok(KillOutcome::Pair { edge, contracted, map, extended, discarded })
}

/// Exchanges the diagonal `xy` of the quadrilateral formed by triangles `wxy`
/// and `xyz` for `wz`. All four vertices must lie in the condition.
pub fn flip_within_condition(t: &Triangulation, quad: [VertexId; 4]) -> Result<Triangulation, MoveError> {
    let [w, x, y, z] = quad;
    if !quad.iter().all(|&v| t.in_condition(v)) {
        return Err(MoveError::PreconditionFailed(format!("{quad:?} is not inside the condition")));
    }
    let cx = t.complex();
    let (a, b) = match (cx.find_triangle([w, x, y]), cx.find_triangle([x, y, z])) {
        (Some(a), Some(b)) if a != b => (a, b),
        _ => return Err(MoveError::PreconditionFailed(format!("{w}{x}{y} and {x}{y}{z} are not both faces"))),
    };
    if cx.has_edge(w, z) {
        return Err(MoveError::PreconditionFailed(format!("{w}-{z} is already an edge")));
    }
    let tris: Vec<[VertexId; 3]> = (0..cx.triangles().len())
        .filter(|&i| i != a && i != b)
        .map(|i| cx.triangle(i).0)
        .chain([[w, x, z], [w, y, z]])
        .collect();
    let complex = DiskComplex::new(cx.vertex_count(), tris, cx.corners().to_vec())?;
    Ok(Triangulation::new(complex, t.condition().clone())?)
}

/// The flip made available by a kill: the quadrilateral formed by the killed
/// triangle and the condition triangle across the shared edge, if its other
/// diagonal is not already an edge.
pub fn trick_quad(before: &Triangulation, tri: Triangle, edge: Edge) -> Option<[VertexId; 4]> {
    let cx = before.complex();
    let z = tri.apex(edge.lo, edge.hi)?;
    let w = cx.common_neighbors(edge.lo, edge.hi).into_iter().find(|&v| v != z && before.in_condition(v))?;
    (!cx.has_edge(w, z)).then_some([w, edge.lo, edge.hi, z])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{make_diagonal, make_exploded};
    use crate::fixtures;

    fn assert_isomorphic(a: &Triangulation, b: &Triangulation) {
        assert_eq!(a.canonical_key(), b.canonical_key());
    }

    #[test]
    fn contracting_diagonal_edge_gives_smaller_diagonal() {
        let (t, map) = contract(&make_diagonal(2), Edge::new(4, 5)).unwrap();
        assert_isomorphic(&t, &make_diagonal(1));
        assert_eq!(map.get(5), Some(4));
        assert!(t.condition().is_empty());
    }

    #[test]
    fn contraction_inside_small_condition_empties_it() {
        let t = make_diagonal(2).with_condition(Condition::from_members([1, 4, 5])).unwrap();
        let (c, _) = contract(&t, Edge::new(4, 5)).unwrap();
        assert!(c.condition().is_empty());
        assert_isomorphic(&c, &make_diagonal(1));
    }

    #[test]
    fn contraction_requires_good_edge() {
        let t = fixtures::pinched_strip();
        assert_eq!(contract(&t, Edge::new(5, 6)).unwrap_err(), MoveError::NotGoodEdge(Edge::new(5, 6)));
        let r = fixtures::ring_around_vertex();
        assert_eq!(contract(&r, Edge::new(4, 5)).unwrap_err(), MoveError::NotNonSeparating);
    }

    #[test]
    fn mosquito_in_diamond() {
        let t = fixtures::mosquito_diamond();
        let (u, map) = eliminate_mosquito(&t, 8).unwrap();
        assert_eq!(u.complex().triangles().len(), 10);
        assert_eq!(map.get(8), None);
        assert!(u.complex().find_triangle([4, 5, 6]).is_some());
        assert!(u.complex().find_triangle([4, 6, 7]).is_some());
        assert!(u.is_non_separating());
        assert!(u.mosquitos().is_empty());
        assert_eq!(eliminate_mosquito(&t, 4).unwrap_err(), MoveError::NotAMosquito(4));
    }

    #[test]
    fn degree_three_mosquito() {
        let t = fixtures::center_with_subdivided_face().with_condition(Condition::from_members([0, 1, 4, 5])).unwrap();
        assert_eq!(t.mosquitos(), vec![5]);
        let (u, _) = eliminate_mosquito(&t, 5).unwrap();
        assert_eq!(u.complex().triangles().len(), 4);
        assert_isomorphic(&u.with_condition(Condition::empty()).unwrap(), &make_diagonal(1));
    }

    #[test]
    fn subdivision_of_single_vertex() {
        let t = fixtures::center_with_subdivided_face();
        let (u, map) = delete_subdivision(&t, [0, 1, 4]).unwrap();
        assert_eq!(map.get(5), None);
        assert_isomorphic(&u, &make_diagonal(1));
        assert_eq!(delete_subdivision(&t, [0, 1, 2]).unwrap_err(), MoveError::NotASubdivision([0, 1, 2]));
    }

    #[test]
    fn kill_sequence_on_diagonal_two() {
        let t = make_diagonal(2);
        // Q p2 p1 first.
        let first = match kill(&t, Triangle::new(1, 5, 4)).unwrap() {
            KillOutcome::Single(s) => s,
            other => panic!("expected a single outcome, got {other:?}"),
        };
        assert_eq!(first.condition().members(), &[1, 4, 5]);
        match kill(&first, Triangle::new(3, 4, 5)).unwrap() {
            KillOutcome::Pair { edge, contracted, extended, discarded, .. } => {
                assert_eq!(edge, Edge::new(4, 5));
                assert!(contracted.condition().is_empty());
                assert_isomorphic(&contracted, &make_diagonal(1));
                assert_eq!(extended.condition().members(), &[1, 3, 4, 5]);
                assert!(!discarded);
            }
            other => panic!("expected a pair, got {other:?}"),
        }
    }

    #[test]
    fn kill_can_discard() {
        // The vertex 5 sits inside PQ4 with the condition on PQ5; absorbing
        // 4 leaves 5 with every neighbor in the condition.
        let t = fixtures::center_with_subdivided_face().with_condition(Condition::from_members([0, 1, 5])).unwrap();
        match kill(&t, Triangle::new(1, 4, 5)).unwrap() {
            KillOutcome::Pair { edge, extended, discarded, contracted, .. } => {
                assert_eq!(edge, Edge::new(1, 5));
                assert!(discarded);
                assert_eq!(extended.mosquitos(), vec![5]);
                assert!(contracted.is_non_separating());
            }
            KillOutcome::Single(_) => panic!("condition was nonempty"),
        }
    }

    #[test]
    fn kill_rejects_non_killable() {
        let t = fixtures::two_triangle_square();
        let tri = t.complex().triangle(0);
        assert_eq!(kill(&t, tri).unwrap_err(), MoveError::NotKillable(tri));
    }

    #[test]
    fn flip_is_an_involution() {
        let t = make_diagonal(2).with_condition(Condition::from_members([1, 3, 4, 5])).unwrap();
        let f = flip_within_condition(&t, [1, 4, 5, 3]).unwrap();
        assert!(f.complex().has_edge(1, 3));
        assert!(!f.complex().has_edge(4, 5));
        assert_eq!(f.condition(), t.condition());
        assert_eq!(f.complex().triangles().len(), t.complex().triangles().len());
        let back = flip_within_condition(&f, [4, 1, 3, 5]).unwrap();
        let faces = |t: &Triangulation| {
            let mut v: Vec<_> = t.complex().triangles().iter().map(|x| x.sorted()).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(faces(&back), faces(&t));
    }

    #[test]
    fn flip_preconditions() {
        let t = make_diagonal(2);
        assert!(matches!(flip_within_condition(&t, [1, 4, 5, 3]), Err(MoveError::PreconditionFailed(_))));
    }

    #[test]
    fn exploded_trick_exposes_smaller_family() {
        for (n, k) in [(1, 1), (3, 1), (3, 2), (5, 2)] {
            let t = make_exploded(n, k).unwrap();
            let p = |i: usize| -> VertexId {
                if i == 0 {
                    0
                } else if i == n + 1 {
                    2
                } else {
                    3 + i as VertexId
                }
            };
            let dup = (n + 3 + k) as VertexId;
            let (a, b, c) = (p(2 * k - 2), p(2 * k - 1), p(2 * k));
            let first = match kill(&t, Triangle::new(c, b, dup)).unwrap() {
                KillOutcome::Single(s) => s,
                _ => unreachable!(),
            };
            let KillOutcome::Pair { edge, contracted, extended, discarded, .. } =
                kill(&first, Triangle::new(a, dup, b)).unwrap()
            else {
                unreachable!()
            };
            assert!(!discarded);
            assert_isomorphic(&contracted, &make_exploded(n, k - 1).unwrap());
            let quad = trick_quad(&first, Triangle::new(a, dup, b), edge).unwrap();
            let flipped = flip_within_condition(&extended, quad).unwrap();
            assert!(flipped.complex().has_edge(a, c));
            let mut cur = flipped;
            while let Some(s) = innermost_subdivision(&cur) {
                cur = delete_subdivision(&cur, s).unwrap().0;
            }
            assert!(cur.condition().is_empty());
            assert_isomorphic(&cur, &make_exploded(n - 1, k - 1).unwrap());
        }
    }
}
