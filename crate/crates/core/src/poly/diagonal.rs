//! Linear forms and closed-form polynomials over the areas `A_1, B_1, ..,
//! A_{n+1}, B_{n+1}` of the diagonal triangulation `T_n`, with `A_i` at
//! variable index `2(i-1)` and `B_i` at `2(i-1)+1`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{MultiPoly, PolyError};
use crate::complex::diagonal_labels;

pub(crate) fn diagonal_universe(n: usize) -> Arc<[String]> {
    diagonal_labels(n).into()
}

fn check(k: usize, n: usize) -> Result<(), PolyError> {
    if k > n + 1 {
        Err(PolyError::IndexOutOfRange { index: k, max: n + 1 })
    } else {
        Ok(())
    }
}

fn pair_sum(vars: &Arc<[String]>, range: std::ops::RangeInclusive<usize>) -> MultiPoly {
    let terms = range.flat_map(|i| {
        let mut a = vec![0; vars.len()];
        let mut b = vec![0; vars.len()];
        a[2 * (i - 1)] = 1;
        b[2 * (i - 1) + 1] = 1;
        [(BigInt::from(1), a), (BigInt::from(1), b)]
    });
    MultiPoly::from_terms(vars.clone(), terms)
}

/// `σ_k = Σ_{i ≤ k} (A_i + B_i)`.
pub fn sigma(k: usize, n: usize) -> Result<MultiPoly, PolyError> {
    check(k, n)?;
    Ok(pair_sum(&diagonal_universe(n), 1..=k))
}

/// `σ̄_k = Σ_{i > k} (A_i + B_i)`.
pub fn sigma_bar(k: usize, n: usize) -> Result<MultiPoly, PolyError> {
    check(k, n)?;
    Ok(pair_sum(&diagonal_universe(n), k + 1..=n + 1))
}

/// `L_k = σ_k - σ̄_k`.
pub fn l_form(k: usize, n: usize) -> Result<MultiPoly, PolyError> {
    sigma(k, n)?.sub(&sigma_bar(k, n)?)
}

/// `L_{k_1} L_{k_2} ⋯`; the empty product is 1.
pub fn l_product(indices: &[usize], n: usize) -> Result<MultiPoly, PolyError> {
    let mut out = MultiPoly::constant(diagonal_universe(n), 1);
    for &k in indices {
        out = out.mul(&l_form(k, n)?)?;
    }
    Ok(out)
}

fn except(range: std::ops::RangeInclusive<usize>, skip: [usize; 2]) -> Vec<usize> {
    range.filter(|j| !skip.contains(j)).collect()
}

// The L_k only see the pair sums s_i = A_i + B_i, so products are formed over
// the n+1 variables s_i and expanded into A_i, B_i once at the end.

fn pair_universe(n: usize) -> Arc<[String]> {
    (1..=n + 1).map(|i| format!("s{i}")).collect::<Vec<_>>().into()
}

fn pair_l_product(indices: &[usize], n: usize) -> MultiPoly {
    let vars = pair_universe(n);
    let mut out = MultiPoly::constant(vars.clone(), 1);
    for &k in indices {
        let terms = (1..=n + 1).map(|i| {
            let mut m = vec![0; n + 1];
            m[i - 1] = 1;
            (BigInt::from(if i <= k { 1 } else { -1 }), m)
        });
        out = out.mul(&MultiPoly::from_terms(vars.clone(), terms)).expect("same universe");
    }
    out
}

fn binomials(top: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for e in 1..=top {
        let prev = &rows[e - 1];
        let row = (0..=e)
            .map(|j| {
                let left = if j > 0 { prev[j - 1].clone() } else { BigInt::from(0) };
                left + prev.get(j).cloned().unwrap_or_default()
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Adds `scale · A_a · p(A_1+B_1, .., A_{n+1}+B_{n+1})` to `out`, where `a` is
/// an optional 1-based index.
fn lift_into(out: &mut MultiPoly, p: &MultiPoly, a: Option<usize>, scale: i64, binom: &[Vec<BigInt>]) {
    let width = out.vars.len();
    for (m, c) in &p.terms {
        let c = c * BigInt::from(scale);
        // Odometer over the split e_i = j_i + (e_i - j_i) of every exponent.
        let mut split = vec![0u16; m.len()];
        loop {
            let mut exps = vec![0u16; width];
            let mut coeff = c.clone();
            for (i, (&e, &j)) in m.iter().zip(&split).enumerate() {
                exps[2 * i] = j;
                exps[2 * i + 1] = e - j;
                if e > 0 {
                    coeff *= &binom[e as usize][j as usize];
                }
            }
            if let Some(a) = a {
                exps[2 * (a - 1)] += 1;
            }
            out.add_term(exps, coeff);
            let mut i = 0;
            while i < m.len() && split[i] == m[i] {
                split[i] = 0;
                i += 1;
            }
            if i == m.len() {
                break;
            }
            split[i] += 1;
        }
    }
}

/// The degree `n+1` relation before removing the factor `L_{n+1}`:
/// `-L_{0..n} - 2 Σ_{i=1}^{n+1} A_i L_{[0..n+1] \ {i-1,i}}`.
pub fn unfactored_relation(n: usize) -> Result<MultiPoly, PolyError> {
    let binom = binomials(n + 1);
    let mut out = MultiPoly::zero(diagonal_universe(n));
    lift_into(&mut out, &pair_l_product(&(0..=n).collect::<Vec<_>>(), n), None, -1, &binom);
    for i in 1..=n + 1 {
        lift_into(&mut out, &pair_l_product(&except(0..=n + 1, [i - 1, i]), n), Some(i), -2, &binom);
    }
    Ok(out)
}

/// `L_{1..n} - 2 (Σ_{i=1}^{n} A_i L_{[0..n] \ {i-1,i}} - A_{n+1} L_{1..n-1})`
/// with integer coefficients exactly as written.
pub fn monsky_diagonal_raw(n: usize) -> Result<MultiPoly, PolyError> {
    if n == 0 {
        return Err(PolyError::BadParameters("n must be at least 1".into()));
    }
    let binom = binomials(n);
    let mut out = MultiPoly::zero(diagonal_universe(n));
    lift_into(&mut out, &pair_l_product(&(1..=n).collect::<Vec<_>>(), n), None, 1, &binom);
    for i in 1..=n {
        lift_into(&mut out, &pair_l_product(&except(0..=n, [i - 1, i]), n), Some(i), -2, &binom);
    }
    lift_into(&mut out, &pair_l_product(&(1..n).collect::<Vec<_>>(), n), Some(n + 1), 2, &binom);
    Ok(out)
}

/// The primitive, sign-normalized polynomial of `T_n`.
pub fn monsky_diagonal(n: usize) -> Result<MultiPoly, PolyError> {
    monsky_diagonal_raw(n)?.primitive_part()
}
