//! The diagonal family `T_n` and the exploded diagonal family `T_{n,k}`.
//!
//! Vertex numbering: corners `P=0, Q=1, R=2, S=3` in counterclockwise order,
//! then the diagonal vertices `p_1..p_n` as `4..n+3`, then the duplicates
//! `p'_1, p'_3, .., p'_{2k-1}` as `n+4..n+k+3`. `p_0 = P` and `p_{n+1} = R`.

use super::{ComplexError, Condition, DiskComplex, Triangulation, VertexId};

const P: VertexId = 0;
const Q: VertexId = 1;
const R: VertexId = 2;
const S: VertexId = 3;

fn diag(n: usize, i: usize) -> VertexId {
    match i {
        0 => P,
        i if i == n + 1 => R,
        i => 3 + i as VertexId,
    }
}

/// `T_n`: `n` interior vertices along the diagonal `PR`. Triangle `2(i-1)` is
/// `A_i = S p_{i-1} p_i` and triangle `2(i-1)+1` is `B_i = Q p_i p_{i-1}`.
pub fn make_diagonal(n: usize) -> Triangulation {
    let mut tris = Vec::with_capacity(2 * n + 2);
    for i in 1..=n + 1 {
        tris.push([S, diag(n, i - 1), diag(n, i)]);
        tris.push([Q, diag(n, i), diag(n, i - 1)]);
    }
    let complex = DiskComplex::new(n + 4, tris, vec![P, Q, R, S]).expect("diagonal family is a disk");
    Triangulation::new(complex, Condition::empty()).expect("empty condition")
}

/// Variable names `A1, B1, A2, B2, ..` aligned with the triangle order of
/// [`make_diagonal`].
pub fn diagonal_labels(n: usize) -> Vec<String> {
    (1..=n + 1).flat_map(|i| [format!("A{i}"), format!("B{i}")]).collect()
}

/// `T_{n,k}`: the diagonal `T_n` with `k` length-two segments
/// `p_{2i-2} p_{2i-1} p_{2i}` exploded into a pair of triangles.
pub fn make_exploded(n: usize, k: usize) -> Result<Triangulation, ComplexError> {
    if 2 * k > n + 1 {
        return Err(ComplexError::BadParameters(format!("need k <= (n+1)/2, got n={n}, k={k}")));
    }
    let p = |i: usize| diag(n, i);
    let dup = |i: usize| -> VertexId {
        // p'_{2i-1}
        (n + 3 + i) as VertexId
    };
    let mut tris = Vec::with_capacity(2 * n + 2 * k + 2);
    for i in 0..=n {
        tris.push([S, p(i), p(i + 1)]);
    }
    for i in 1..=k {
        tris.push([Q, dup(i), p(2 * i - 2)]);
    }
    for i in 1..=k {
        tris.push([Q, p(2 * i), dup(i)]);
    }
    for i in 2 * k..=n {
        tris.push([Q, p(i + 1), p(i)]);
    }
    for i in 1..=k {
        tris.push([p(2 * i - 2), dup(i), p(2 * i - 1)]);
    }
    for i in 1..=k {
        tris.push([p(2 * i), p(2 * i - 1), dup(i)]);
    }
    let complex = DiskComplex::new(n + k + 4, tris, vec![P, Q, R, S])?;
    Triangulation::new(complex, Condition::empty())
}
