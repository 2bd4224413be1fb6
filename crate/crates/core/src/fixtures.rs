//! Small hand-built triangulations of the unit square.
//!
//! Corners are always `P=0, Q=1, R=2, S=3` in counterclockwise order; the
//! remaining vertices are numbered as documented on each constructor.

use crate::complex::{make_diagonal, Triangulation, VertexId};

const P: VertexId = 0;
const Q: VertexId = 1;
const R: VertexId = 2;
const S: VertexId = 3;

fn build(vertices: usize, tris: &[[VertexId; 3]], condition: &[VertexId]) -> Triangulation {
    Triangulation::validate(vertices, tris.to_vec(), vec![P, Q, R, S], condition.to_vec())
        .expect("fixture is a valid triangulation")
}

/// The square cut by the diagonal `PR`.
pub fn two_triangle_square() -> Triangulation {
    make_diagonal(0)
}

/// One interior vertex `4` joined to all four corners.
pub fn square_with_center() -> Triangulation {
    make_diagonal(1)
}

/// Vertices `u=4, v=5, w=6, x=7, y=8, z=9`; condition `{v,x,y,z}`.
pub fn shaded_pair() -> Triangulation {
    let (u, v, w, x, y, z) = (4, 5, 6, 7, 8, 9);
    build(
        10,
        &[
            [P, Q, v],
            [P, v, u],
            [P, u, S],
            [S, u, x],
            [S, x, z],
            [S, z, R],
            [R, z, y],
            [R, y, w],
            [Q, R, w],
            [Q, w, v],
            [u, v, x],
            [v, w, y],
            [x, y, z],
            [v, x, y],
        ],
        &[v, x, y, z],
    )
}

/// Vertex labels of [`bridged`]: `u=4, v=5, w=6, x=7, y=8, z=9, t=10`.
pub mod bridged_labels {
    use crate::complex::VertexId;
    pub const U: VertexId = 4;
    pub const V: VertexId = 5;
    pub const W: VertexId = 6;
    pub const X: VertexId = 7;
    pub const Y: VertexId = 8;
    pub const Z: VertexId = 9;
    pub const T: VertexId = 10;
}

/// A complex with an empty condition where several triangle sets of
/// interest can be examined: a contiguous path, a disconnected set, and a
/// disconnected set whose vertex set picks up a bridging triangle.
pub fn bridged() -> Triangulation {
    use bridged_labels::*;
    build(
        11,
        &[
            [P, Q, V],
            [P, V, U],
            [P, U, S],
            [S, U, T],
            [S, T, Z],
            [S, Z, R],
            [R, Z, Y],
            [R, Y, W],
            [Q, R, W],
            [Q, W, V],
            [U, V, X],
            [U, X, T],
            [T, X, Z],
            [X, Z, Y],
            [V, X, Y],
            [V, W, Y],
        ],
        &[],
    )
}

/// A diamond `4,5,6,7` around the vertex `m=8`; the condition is the diamond
/// plus `m`, so `m` is a mosquito.
pub fn mosquito_diamond() -> Triangulation {
    let (a, b, c, d, m) = (4, 5, 6, 7, 8);
    build(
        9,
        &[
            [P, Q, a],
            [Q, b, a],
            [Q, R, b],
            [R, c, b],
            [R, S, c],
            [S, d, c],
            [S, P, d],
            [P, a, d],
            [a, b, m],
            [b, c, m],
            [c, d, m],
            [d, a, m],
        ],
        &[a, b, c, d, m],
    )
}

/// An octagon `4..=11` with an inner square `12..=15` around the vertex
/// `16`. The condition is the twelve ring vertices, which enclose `16`.
pub fn ring_around_vertex() -> Triangulation {
    let o = |i: u32| 3 + i;
    let v = 16;
    let mut tris = vec![
        [P, Q, o(2)],
        [Q, R, o(4)],
        [R, S, o(6)],
        [S, P, o(8)],
        [P, o(2), o(1)],
        [P, o(1), o(8)],
        [Q, o(3), o(2)],
        [Q, o(4), o(3)],
        [R, o(5), o(4)],
        [R, o(6), o(5)],
        [S, o(7), o(6)],
        [S, o(8), o(7)],
    ];
    tris.extend([
        [o(1), o(2), o(9)],
        [o(2), o(10), o(9)],
        [o(2), o(3), o(10)],
        [o(3), o(4), o(10)],
        [o(4), o(11), o(10)],
        [o(4), o(5), o(11)],
        [o(5), o(6), o(11)],
        [o(6), o(12), o(11)],
        [o(6), o(7), o(12)],
        [o(7), o(8), o(12)],
        [o(8), o(9), o(12)],
        [o(8), o(1), o(9)],
    ]);
    tris.extend([[o(9), o(10), v], [o(10), o(11), v], [o(11), o(12), v], [o(12), o(9), v]]);
    let cond: Vec<VertexId> = (1..=12).map(o).collect();
    build(17, &tris, &cond)
}

/// The center vertex `4` joined to all corners, with the triangle `PQ4`
/// subdivided by a vertex `5`. The edge `P4` then has three common
/// neighbors.
pub fn center_with_subdivided_face() -> Triangulation {
    let (c, u) = (4, 5);
    build(6, &[[P, Q, u], [Q, c, u], [c, P, u], [Q, R, c], [R, S, c], [S, P, c]], &[])
}

/// The diagonal complex with four interior vertices `4..=7`, conditioned on
/// `{Q, S, 4, 5, 6, 7}`. The middle diagonal edge `5-6` is contractible but
/// both of its apexes lie in the condition, and removing its two triangles
/// splits the condition region in two.
pub fn pinched_strip() -> Triangulation {
    make_diagonal(4).with_condition(crate::complex::Condition::from_members([Q, S, 4, 5, 6, 7])).expect("valid")
}

/// The condition is a zigzag strip from `P` to `Q` through `4..=9`; vertex
/// `6` is joined to `R` and `S` by edges and to `P` and `Q` through the
/// condition. No triangle is killable.
pub fn sunshine() -> Triangulation {
    let v = |i: u32| 3 + i;
    build(
        10,
        &[
            [v(2), v(3), v(4)],
            [v(2), v(4), v(5)],
            [v(1), v(2), v(5)],
            [v(1), v(5), v(6)],
            [v(1), v(6), Q],
            [P, v(1), Q],
            [S, P, v(1)],
            [S, v(1), v(2)],
            [S, v(2), v(3)],
            [S, v(3), R],
            [v(3), v(4), R],
            [v(4), v(5), R],
            [v(5), v(6), R],
            [v(6), Q, R],
        ],
        &[P, v(1), v(2), v(3), v(4), v(5), v(6), Q],
    )
}

/// Every fixture above, with a short name.
pub fn all() -> Vec<(&'static str, Triangulation)> {
    vec![
        ("two_triangle_square", two_triangle_square()),
        ("square_with_center", square_with_center()),
        ("shaded_pair", shaded_pair()),
        ("bridged", bridged()),
        ("mosquito_diamond", mosquito_diamond()),
        ("ring_around_vertex", ring_around_vertex()),
        ("center_with_subdivided_face", center_with_subdivided_face()),
        ("pinched_strip", pinched_strip()),
        ("sunshine", sunshine()),
    ]
}
