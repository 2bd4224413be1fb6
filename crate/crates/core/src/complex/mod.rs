//! Disk-type simplicial complexes with labeled corners, collinearity
//! conditions, and the combinatorial predicates the degree algorithm is built
//! from.
//!
//! A [`DiskComplex`] is validated once and then immutable; every derived table
//! (edge incidence, rotation system, neighbor lists) is computed at
//! construction time. A [`Triangulation`] pairs a complex with a
//! [`Condition`], a set of vertices that a drawing must place on one line.

mod canonical;
mod families;
mod io;

pub use canonical::CanonicalKey;
pub use families::{diagonal_labels, make_diagonal, make_exploded};
pub use io::TriangulationFile;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index into the owning complex.
pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("not a disk: {0}")]
    NotADisk(String),
    #[error("bad condition: {0}")]
    BadCondition(String),
    #[error("no consistent orientation: {0}")]
    OrientationError(String),
    #[error("triangle count {found} differs from 2k+n-2 = {expected}")]
    CountMismatch { found: usize, expected: i64 },
    #[error("expected a quadrilateral boundary, found {0} corners")]
    NotAQuadrilateral(usize),
    #[error("condition is separating")]
    NotNonSeparating,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// An oriented triangle. After validation every stored triangle is
/// counterclockwise with respect to the boundary orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle(pub [VertexId; 3]);

impl Triangle {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Self {
        Triangle([a, b, c])
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        self.0
    }

    pub fn sorted(&self) -> [VertexId; 3] {
        let mut s = self.0;
        s.sort_unstable();
        s
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    /// Directed edges in orientation order.
    pub fn directed_edges(&self) -> [(VertexId, VertexId); 3] {
        let [a, b, c] = self.0;
        [(a, b), (b, c), (c, a)]
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge::new(a, b), Edge::new(b, c), Edge::new(c, a)]
    }

    /// The vertex opposite the edge `{a, b}`, if the edge belongs to this triangle.
    pub fn apex(&self, a: VertexId, b: VertexId) -> Option<VertexId> {
        if !(self.contains(a) && self.contains(b)) || a == b {
            return None;
        }
        self.0.iter().copied().find(|&v| v != a && v != b)
    }

    /// True if the triangle contains the directed edge `a -> b`.
    pub fn has_directed(&self, a: VertexId, b: VertexId) -> bool {
        self.directed_edges().contains(&(a, b))
    }

    pub fn reversed(&self) -> Self {
        let [a, b, c] = self.0;
        Triangle([a, c, b])
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

/// Unordered vertex pair, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub lo: VertexId,
    pub hi: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A validated simplicial complex homeomorphic to a disk.
#[derive(Clone, Debug)]
pub struct DiskComplex {
    vertex_count: usize,
    triangles: Vec<Triangle>,
    corners: Vec<VertexId>,
    is_corner: Vec<bool>,
    /// Counterclockwise neighbor order around each vertex. For corners the
    /// order runs from the next corner to the previous one.
    rotation: Vec<Vec<VertexId>>,
    neighbors: Vec<Vec<VertexId>>,
    edge_faces: HashMap<Edge, [Option<usize>; 2]>,
    face_index: HashMap<[VertexId; 3], usize>,
}

impl PartialEq for DiskComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.triangles == other.triangles && self.corners == other.corners
    }
}

impl Eq for DiskComplex {}

impl DiskComplex {
    /// Validates raw data and normalizes triangle orientation so that all
    /// triangles are counterclockwise with respect to the corner order.
    pub fn new(
        vertex_count: usize,
        triangles: Vec<[VertexId; 3]>,
        corners: Vec<VertexId>,
    ) -> Result<Self, ComplexError> {
        let n = corners.len();
        if n < 3 {
            return Err(ComplexError::NotADisk(format!("{n} corners, need at least 3")));
        }
        if triangles.is_empty() {
            return Err(ComplexError::NotADisk("no triangles".into()));
        }
        let in_range = |v: VertexId| (v as usize) < vertex_count;
        let mut is_corner = vec![false; vertex_count];
        for &c in &corners {
            if !in_range(c) {
                return Err(ComplexError::NotADisk(format!("corner {c} out of range")));
            }
            if is_corner[c as usize] {
                return Err(ComplexError::NotADisk(format!("corner {c} listed twice")));
            }
            is_corner[c as usize] = true;
        }

        let mut tris: Vec<Triangle> = Vec::with_capacity(triangles.len());
        let mut face_index = HashMap::with_capacity(triangles.len());
        for (i, t) in triangles.iter().enumerate() {
            let t = Triangle(*t);
            if t.0.iter().any(|&v| !in_range(v)) {
                return Err(ComplexError::NotADisk(format!("triangle {t} has a vertex out of range")));
            }
            let s = t.sorted();
            if s[0] == s[1] || s[1] == s[2] {
                return Err(ComplexError::NotADisk(format!("triangle {t} repeats a vertex")));
            }
            if face_index.insert(s, i).is_some() {
                return Err(ComplexError::NotADisk(format!("triangle {t} listed twice")));
            }
            tris.push(t);
        }

        let mut edge_faces: HashMap<Edge, [Option<usize>; 2]> = HashMap::new();
        for (i, t) in tris.iter().enumerate() {
            for e in t.edges() {
                let slot = edge_faces.entry(e).or_insert([None, None]);
                if slot[0].is_none() {
                    slot[0] = Some(i);
                } else if slot[1].is_none() {
                    slot[1] = Some(i);
                } else {
                    return Err(ComplexError::NotADisk(format!("edge {e} lies in more than two triangles")));
                }
            }
        }

        orient(&mut tris, &edge_faces)?;

        // Boundary edges, directed by their unique triangle.
        let mut succ: HashMap<VertexId, VertexId> = HashMap::new();
        let mut boundary_edges = 0usize;
        for (e, faces) in &edge_faces {
            if faces[1].is_some() {
                continue;
            }
            boundary_edges += 1;
            let t = tris[faces[0].unwrap()];
            let (a, b) = if t.has_directed(e.lo, e.hi) { (e.lo, e.hi) } else { (e.hi, e.lo) };
            if succ.insert(a, b).is_some() {
                return Err(ComplexError::NotADisk(format!("boundary is pinched at vertex {a}")));
            }
        }
        if boundary_edges != n {
            return Err(ComplexError::NotADisk(format!(
                "boundary has {boundary_edges} edges but {n} corners are listed"
            )));
        }
        let start = corners[0];
        let mut cycle = Vec::with_capacity(n);
        let mut v = start;
        loop {
            cycle.push(v);
            v = match succ.get(&v) {
                Some(&w) => w,
                None => return Err(ComplexError::NotADisk(format!("corner {v} is not on the boundary"))),
            };
            if v == start || cycle.len() > n {
                break;
            }
        }
        if v != start || cycle.len() != n {
            return Err(ComplexError::NotADisk("boundary is not a single cycle through the corners".into()));
        }
        let forward: Vec<VertexId> = cycle.clone();
        let mut backward = vec![start];
        backward.extend(cycle[1..].iter().rev());
        if corners == backward && n > 2 && corners != forward {
            for t in &mut tris {
                *t = t.reversed();
            }
        } else if corners != forward {
            return Err(ComplexError::NotADisk("corner order does not follow the boundary cycle".into()));
        }

        let mut used = vec![false; vertex_count];
        for t in &tris {
            for &v in &t.0 {
                used[v as usize] = true;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(ComplexError::NotADisk(format!("vertex {v} lies in no triangle")));
        }

        let rotation = rotations(vertex_count, &tris, &is_corner)?;
        let neighbors = rotation
            .iter()
            .map(|r| {
                let mut s = r.clone();
                s.sort_unstable();
                s
            })
            .collect();

        let k = vertex_count as i64 - n as i64;
        let expected = 2 * k + n as i64 - 2;
        if tris.len() as i64 != expected {
            return Err(ComplexError::CountMismatch { found: tris.len(), expected });
        }

        Ok(DiskComplex {
            vertex_count,
            triangles: tris,
            corners,
            is_corner,
            rotation,
            neighbors,
            edge_faces,
            face_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn triangle(&self, index: usize) -> Triangle {
        self.triangles[index]
    }

    pub fn corners(&self) -> &[VertexId] {
        &self.corners
    }

    pub fn corner_count(&self) -> usize {
        self.corners.len()
    }

    pub fn interior_vertex_count(&self) -> usize {
        self.vertex_count - self.corners.len()
    }

    pub fn is_corner(&self, v: VertexId) -> bool {
        self.is_corner[v as usize]
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v as usize]
    }

    /// Counterclockwise cyclic neighbor order around `v`.
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v as usize]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.neighbors[a as usize].binary_search(&b).is_ok()
    }

    /// All edges in sorted order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self.edge_faces.keys().copied().collect();
        e.sort_unstable();
        e
    }

    pub fn is_boundary_edge(&self, e: Edge) -> bool {
        matches!(self.edge_faces.get(&e), Some([Some(_), None]))
    }

    /// Triangle indices incident to the edge.
    pub fn faces_of_edge(&self, e: Edge) -> Vec<usize> {
        match self.edge_faces.get(&e) {
            Some(f) => f.iter().flatten().copied().collect(),
            None => Vec::new(),
        }
    }

    /// Index of the triangle with the given vertex set, in any order.
    pub fn find_triangle(&self, vs: [VertexId; 3]) -> Option<usize> {
        let mut s = vs;
        s.sort_unstable();
        self.face_index.get(&s).copied()
    }

    pub fn common_neighbors(&self, a: VertexId, b: VertexId) -> Vec<VertexId> {
        let (na, nb) = (self.neighbors(a), self.neighbors(b));
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < na.len() && j < nb.len() {
            match na[i].cmp(&nb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(na[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Whether the induced dual graph on `set` (triangle indices) is connected.
    /// The empty set counts as contiguous.
    pub fn is_contiguous(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return true;
        }
        let mut member = vec![false; self.triangles.len()];
        for &t in set {
            member[t] = true;
        }
        self.dual_components(&member).len() == 1
    }

    /// Connected components of the dual graph restricted to `member`.
    pub(crate) fn dual_components(&self, member: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.triangles.len()];
        let mut comps = Vec::new();
        for s in 0..self.triangles.len() {
            if !member[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(t) = q.pop_front() {
                for e in self.triangles[t].edges() {
                    for u in self.faces_of_edge(e) {
                        if member[u] && !seen[u] {
                            seen[u] = true;
                            comp.push(u);
                            q.push_back(u);
                        }
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Triples `{x,y,z}` of pairwise adjacent vertices that are not a face and
    /// not the whole corner set, sorted.
    pub fn subdivisions(&self) -> Vec<[VertexId; 3]> {
        let mut out = Vec::new();
        for e in self.edges() {
            for z in self.common_neighbors(e.lo, e.hi) {
                if z <= e.hi {
                    continue;
                }
                let triple = [e.lo, e.hi, z];
                if self.face_index.contains_key(&triple) {
                    continue;
                }
                if self.corners.len() == 3 && triple.iter().all(|&v| self.is_corner(v)) {
                    continue;
                }
                out.push(triple);
            }
        }
        out.sort_unstable();
        out
    }

    /// Triangles enclosed by the 3-cycle `triple`, or `None` if the triple is
    /// not a subdivision.
    pub fn subdivision_interior(&self, triple: [VertexId; 3]) -> Option<Vec<usize>> {
        let [x, y, z] = triple;
        if !(self.has_edge(x, y) && self.has_edge(y, z) && self.has_edge(x, z)) {
            return None;
        }
        if self.find_triangle(triple).is_some() {
            return None;
        }
        let cycle = [Edge::new(x, y), Edge::new(y, z), Edge::new(x, z)];
        for start in self.faces_of_edge(cycle[0]) {
            let mut seen = vec![false; self.triangles.len()];
            seen[start] = true;
            let mut region = vec![start];
            let mut q = VecDeque::from([start]);
            let mut touches_outside = false;
            while let Some(t) = q.pop_front() {
                for e in self.triangles[t].edges() {
                    if cycle.contains(&e) {
                        continue;
                    }
                    if self.is_boundary_edge(e) {
                        touches_outside = true;
                    }
                    for u in self.faces_of_edge(e) {
                        if !seen[u] {
                            seen[u] = true;
                            region.push(u);
                            q.push_back(u);
                        }
                    }
                }
            }
            if !touches_outside {
                region.sort_unstable();
                return Some(region);
            }
        }
        None
    }

    /// Interior edge whose contraction stays simplicial: not both endpoints
    /// corners, and exactly two vertices adjacent to both endpoints.
    pub fn is_contractible(&self, e: Edge) -> bool {
        self.has_edge(e.lo, e.hi)
            && !(self.is_corner(e.lo) && self.is_corner(e.hi))
            && self.common_neighbors(e.lo, e.hi).len() == 2
    }

    pub(crate) fn raw_triangles(&self) -> Vec<[VertexId; 3]> {
        self.triangles.iter().map(|t| t.0).collect()
    }
}

/// Propagates a consistent orientation over the dual graph.
fn orient(tris: &mut [Triangle], edge_faces: &HashMap<Edge, [Option<usize>; 2]>) -> Result<(), ComplexError> {
    let m = tris.len();
    let mut fixed = vec![false; m];
    fixed[0] = true;
    let mut q = VecDeque::from([0usize]);
    let mut reached = 1;
    while let Some(t) = q.pop_front() {
        for (a, b) in tris[t].directed_edges() {
            let faces = edge_faces[&Edge::new(a, b)];
            for s in faces.iter().flatten().copied() {
                if s == t {
                    continue;
                }
                if !fixed[s] {
                    if tris[s].has_directed(a, b) {
                        tris[s] = tris[s].reversed();
                    }
                    fixed[s] = true;
                    reached += 1;
                    q.push_back(s);
                } else if !tris[s].has_directed(b, a) {
                    return Err(ComplexError::OrientationError(format!(
                        "triangles {} and {} disagree along edge {a}-{b}",
                        tris[t], tris[s]
                    )));
                }
            }
        }
    }
    if reached != m {
        return Err(ComplexError::NotADisk("dual graph is disconnected".into()));
    }
    Ok(())
}

/// Builds the rotation system, checking that every interior link is a cycle
/// and every boundary link a path.
fn rotations(vertex_count: usize, tris: &[Triangle], is_corner: &[bool]) -> Result<Vec<Vec<VertexId>>, ComplexError> {
    let mut next: Vec<HashMap<VertexId, VertexId>> = vec![HashMap::new(); vertex_count];
    for t in tris {
        let [a, b, c] = t.0;
        for (v, p, s) in [(a, b, c), (b, c, a), (c, a, b)] {
            if next[v as usize].insert(p, s).is_some() {
                return Err(ComplexError::NotADisk(format!("link of vertex {v} is not a manifold link")));
            }
        }
    }
    let mut out = Vec::with_capacity(vertex_count);
    for v in 0..vertex_count {
        let map = &next[v];
        let mut has_pred: HashMap<VertexId, bool> = map.keys().map(|&k| (k, false)).collect();
        for &s in map.values() {
            has_pred.insert(s, true);
        }
        let starts: Vec<VertexId> = {
            let mut s: Vec<VertexId> = has_pred.iter().filter(|(_, &p)| !p).map(|(&k, _)| k).collect();
            s.sort_unstable();
            s
        };
        let link_size = has_pred.len();
        let order = if is_corner[v] {
            if starts.len() != 1 {
                return Err(ComplexError::NotADisk(format!("link of corner {v} is not a single path")));
            }
            let mut order = vec![starts[0]];
            let mut cur = starts[0];
            while let Some(&s) = map.get(&cur) {
                order.push(s);
                cur = s;
                if order.len() > link_size {
                    break;
                }
            }
            order
        } else {
            if !starts.is_empty() {
                return Err(ComplexError::NotADisk(format!(
                    "vertex {v} is on the boundary but is not listed as a corner"
                )));
            }
            let first = *map.keys().min().unwrap();
            let mut order = vec![first];
            let mut cur = map[&first];
            while cur != first && order.len() <= link_size {
                order.push(cur);
                cur = map[&cur];
            }
            order
        };
        if order.len() != link_size {
            return Err(ComplexError::NotADisk(format!("link of vertex {v} is not connected")));
        }
        out.push(order);
    }
    Ok(out)
}

/// A set of vertices required to be collinear.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Condition {
    members: Vec<VertexId>,
}

impl Condition {
    pub fn empty() -> Self {
        Condition { members: Vec::new() }
    }

    /// Sorted, deduplicated members; no validity check against a complex.
    pub fn from_members(members: impl IntoIterator<Item = VertexId>) -> Self {
        let mut m: Vec<VertexId> = members.into_iter().collect();
        m.sort_unstable();
        m.dedup();
        Condition { members: m }
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    fn mask(&self, vertex_count: usize) -> Vec<bool> {
        let mut m = vec![false; vertex_count];
        for &v in &self.members {
            m[v as usize] = true;
        }
        m
    }
}

/// Checks the condition rule: at most two corners, and some dual component of
/// `Triangles(C)` spans exactly `C`.
fn check_condition(complex: &DiskComplex, mask: &[bool], size: usize) -> Result<(), ComplexError> {
    if size == 0 {
        return Ok(());
    }
    let corners = complex.corners.iter().filter(|&&c| mask[c as usize]).count();
    if corners > 2 {
        return Err(ComplexError::BadCondition(format!("contains {corners} corners")));
    }
    let member: Vec<bool> = complex.triangles.iter().map(|t| t.0.iter().all(|&v| mask[v as usize])).collect();
    for comp in complex.dual_components(&member) {
        let mut span = vec![false; complex.vertex_count];
        let mut count = 0;
        for t in comp {
            for &v in &complex.triangles[t].0 {
                if !span[v as usize] {
                    span[v as usize] = true;
                    count += 1;
                }
            }
        }
        if count == size {
            return Ok(());
        }
    }
    Err(ComplexError::BadCondition("not the vertex set of a contiguous set of triangles".into()))
}

fn non_separating(complex: &DiskComplex, mask: &[bool]) -> bool {
    let vc = complex.vertex_count;
    let mut seen = vec![false; vc];
    for s in 0..vc {
        if mask[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut has_corner = complex.is_corner[s];
        let mut q = VecDeque::from([s as VertexId]);
        while let Some(v) = q.pop_front() {
            for &u in complex.neighbors(v) {
                if !mask[u as usize] && !seen[u as usize] {
                    seen[u as usize] = true;
                    has_corner |= complex.is_corner[u as usize];
                    q.push_back(u);
                }
            }
        }
        if !has_corner {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GoodEdgeType {
    /// Both endpoints outside the condition.
    Type1,
    /// On the boundary of the condition region, with one opposite vertex
    /// inside the condition and one outside.
    Type2,
}

/// Certificate that the area relation is linear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Linearity {
    /// Two opposite corners are joined.
    TypeD([VertexId; 2]),
    /// A vertex is joined to all four corners.
    TypeX(VertexId),
}

impl Linearity {
    pub fn letter(&self) -> &'static str {
        match self {
            Linearity::TypeD(_) => "D",
            Linearity::TypeX(_) => "X",
        }
    }
}

/// A disk complex together with a validated condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    complex: DiskComplex,
    condition: Condition,
    in_condition: Vec<bool>,
}

impl Triangulation {
    pub fn new(complex: DiskComplex, condition: Condition) -> Result<Self, ComplexError> {
        if let Some(&v) = condition.members.iter().find(|&&v| v as usize >= complex.vertex_count) {
            return Err(ComplexError::BadCondition(format!("vertex {v} out of range")));
        }
        let mask = condition.mask(complex.vertex_count);
        check_condition(&complex, &mask, condition.len())?;
        Ok(Triangulation { complex, condition, in_condition: mask })
    }

    /// Parses nothing; validates raw parts into a triangulation.
    pub fn validate(
        vertex_count: usize,
        triangles: Vec<[VertexId; 3]>,
        corners: Vec<VertexId>,
        condition: Vec<VertexId>,
    ) -> Result<Self, ComplexError> {
        let complex = DiskComplex::new(vertex_count, triangles, corners)?;
        Triangulation::new(complex, Condition::from_members(condition))
    }

    pub fn complex(&self) -> &DiskComplex {
        &self.complex
    }

    pub fn condition(&self) -> &Condition {
        &self.condition
    }

    pub fn in_condition(&self, v: VertexId) -> bool {
        self.in_condition[v as usize]
    }

    /// Same complex, different condition.
    pub fn with_condition(&self, condition: Condition) -> Result<Self, ComplexError> {
        Triangulation::new(self.complex.clone(), condition)
    }

    /// `Triangles(C)`: indices of the triangles whose vertices all lie in C.
    pub fn triangles_of_condition(&self) -> Vec<usize> {
        if self.condition.is_empty() {
            return Vec::new();
        }
        (0..self.complex.triangles.len()).filter(|&t| self.triangle_in_condition(t)).collect()
    }

    pub fn triangle_in_condition(&self, t: usize) -> bool {
        !self.condition.is_empty() && self.complex.triangles[t].0.iter().all(|&v| self.in_condition[v as usize])
    }

    /// Indices of triangles outside `Triangles(C)`; these carry area variables.
    pub fn live_triangles(&self) -> Vec<usize> {
        (0..self.complex.triangles.len()).filter(|&t| !self.triangle_in_condition(t)).collect()
    }

    pub fn is_non_separating(&self) -> bool {
        self.condition.is_empty() || non_separating(&self.complex, &self.in_condition)
    }

    fn require_non_separating(&self) -> Result<(), ComplexError> {
        if self.is_non_separating() {
            Ok(())
        } else {
            Err(ComplexError::NotNonSeparating)
        }
    }

    /// Condition vertices all of whose neighbors are in the condition.
    pub fn mosquitos(&self) -> Vec<VertexId> {
        self.condition
            .members
            .iter()
            .copied()
            .filter(|&v| {
                !self.complex.is_corner(v) && self.complex.neighbors(v).iter().all(|&u| self.in_condition[u as usize])
            })
            .collect()
    }

    pub fn subdivisions(&self) -> Vec<[VertexId; 3]> {
        self.complex.subdivisions()
    }

    pub fn good_edge_type(&self, e: Edge) -> Option<GoodEdgeType> {
        if !self.complex.is_contractible(e) {
            return None;
        }
        let (x, y) = (e.lo, e.hi);
        let (cx, cy) = (self.in_condition(x), self.in_condition(y));
        if !cx && !cy {
            return Some(GoodEdgeType::Type1);
        }
        if cx && cy {
            let apexes = self.complex.common_neighbors(x, y);
            let inside = apexes.iter().filter(|&&w| self.in_condition(w)).count();
            if inside == 1 {
                return Some(GoodEdgeType::Type2);
            }
        }
        None
    }

    pub fn good_edges(&self) -> Result<Vec<(Edge, GoodEdgeType)>, ComplexError> {
        self.require_non_separating()?;
        Ok(self.complex.edges().into_iter().filter_map(|e| self.good_edge_type(e).map(|t| (e, t))).collect())
    }

    /// The edge along which `t` meets the condition region: both endpoints in
    /// C, third vertex outside, and the opposite triangle in `Triangles(C)`.
    pub fn condition_edge(&self, t: usize) -> Option<Edge> {
        let tri = self.complex.triangles[t];
        let inside: Vec<VertexId> = tri.0.iter().copied().filter(|&v| self.in_condition(v)).collect();
        if inside.len() != 2 {
            return None;
        }
        let e = Edge::new(inside[0], inside[1]);
        let across = self.complex.faces_of_edge(e).into_iter().find(|&u| u != t)?;
        self.triangle_in_condition(across).then_some(e)
    }

    /// Whether `C ∪ Vx(t)` would be a non-separating condition.
    fn extension_is_killable(&self, t: usize) -> bool {
        let tri = self.complex.triangles[t];
        let mut mask = self.in_condition.clone();
        let mut size = self.condition.len();
        for &v in &tri.0 {
            if !mask[v as usize] {
                mask[v as usize] = true;
                size += 1;
            }
        }
        check_condition(&self.complex, &mask, size).is_ok() && non_separating(&self.complex, &mask)
    }

    /// Killable triangles, sorted by (minimum vertex, sorted triple). When C
    /// is nonempty only triangles meeting the condition region along an edge
    /// are candidates.
    pub fn killable_triangles(&self) -> Result<Vec<Triangle>, ComplexError> {
        self.require_non_separating()?;
        let mut out: Vec<Triangle> = (0..self.complex.triangles.len())
            .filter(|&t| !self.triangle_in_condition(t))
            .filter(|&t| self.condition.is_empty() || self.condition_edge(t).is_some())
            .filter(|&t| self.extension_is_killable(t))
            .map(|t| self.complex.triangles[t])
            .collect();
        out.sort_by_key(|t| t.sorted());
        Ok(out)
    }

    pub fn joined(&self, x: VertexId, y: VertexId) -> bool {
        (self.in_condition(x) && self.in_condition(y)) || self.complex.has_edge(x, y)
    }

    /// Type D takes precedence over type X.
    pub fn linearity_type(&self) -> Result<Option<Linearity>, ComplexError> {
        let c = &self.complex.corners;
        if c.len() != 4 {
            return Err(ComplexError::NotAQuadrilateral(c.len()));
        }
        for (a, b) in [(c[0], c[2]), (c[1], c[3])] {
            if self.joined(a, b) {
                return Ok(Some(Linearity::TypeD([a, b])));
            }
        }
        for v in 0..self.complex.vertex_count as VertexId {
            if self.complex.is_corner(v) {
                continue;
            }
            if c.iter().all(|&p| self.joined(v, p)) {
                return Ok(Some(Linearity::TypeX(v)));
            }
        }
        Ok(None)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canonical::canonical_key(self)
    }

    /// Vertex map onto `other` under which corners, faces and condition
    /// agree (up to a dihedral relabeling of the corners).
    pub fn isomorphism_to(&self, other: &Triangulation) -> Option<Vec<VertexId>> {
        canonical::isomorphism(self, other)
    }

    /// For each triangle of `other`, the index of the triangle of `self`
    /// mapped onto it by [`Self::isomorphism_to`].
    pub fn triangle_correspondence(&self, other: &Triangulation) -> Option<Vec<usize>> {
        let map = self.isomorphism_to(other)?;
        let mut by_image = HashMap::new();
        for (i, t) in self.complex.triangles.iter().enumerate() {
            by_image.insert(Triangle(t.0.map(|v| map[v as usize])).sorted(), i);
        }
        other.complex.triangles.iter().map(|t| by_image.get(&t.sorted()).copied()).collect()
    }
}
