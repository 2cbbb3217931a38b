//! First-order derivatives on `M_q(n)` written as sums over lattice paths
//! from `(1, j)` to `(i, 1)`.
//!
//! A path `[i_1..i_r; j_1..j_r]` has strictly increasing rows and strictly
//! decreasing columns. Down paths start in row 1, up paths start below it.
//! Each path contributes
//!
//! ```text
//! prod_y O[i_y, j_{y+1}] * (K / K^-1 factors) * prod_{x < j_r} K[i,x]^-1 * prod_x d[i_x, j_x]
//! ```
//!
//! where `K[s,t]` acts by `q^{+α_{s,t}}` (the inverse of [`Factor::K`] with
//! exponent 1), so that `K[1,1]^-1 d[1,2]` is the operator `q^{-α_1} ∂_2`.
//! For a down path the positive factors sit at `(i_x, t)` with
//! `j_{x+1} < t < j_x` and the inverse ones at `(s, j_{x+1})` with
//! `i_x < s < i_{x+1}`; for an up path the positive factors sit at
//! `(i_{x+1}, t)` and the inverse ones at `(s, j_x)` with `i_{x-1} < s < i_x`,
//! `i_0 = 0`. See [`Reading`] for the variant that matches the duality
//! derivative.

use std::fmt;

use super::{Factor, OpTerm, StructuredOp};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::ring::QCoeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathKind {
    Down,
    Up,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub kind: PathKind,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let tag = match self.kind {
            PathKind::Down => "d",
            PathKind::Up => "u",
        };
        write!(f, "{tag}[{};{}]", join(&self.rows), join(&self.cols))
    }
}

/// The paths of one derivative together with the summed operator, one term
/// per path in the same order.
#[derive(Clone, Debug)]
pub struct PathOperator {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub paths: Vec<Path>,
    pub op: StructuredOp,
}

impl PathOperator {
    /// The summand of lowest differential order.
    pub fn lowest_order_term(&self) -> Option<&OpTerm> {
        self.op.terms.iter().min_by_key(|t| t.order())
    }
}

/// Increasing sequences `first < .. < last` drawn from `first..=last`.
fn chains(first: usize, last: usize) -> Vec<Vec<usize>> {
    if first > last {
        return Vec::new();
    }
    if first == last {
        return vec![vec![first]];
    }
    let inner: Vec<usize> = (first + 1..last).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << inner.len()) {
        let mut c = vec![first];
        c.extend(inner.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x));
        c.push(last);
        out.push(c);
    }
    out
}

/// Strictly decreasing sequences of length `r` starting at `j`.
fn decreasing(j: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, r: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == r {
            out.push(prefix.clone());
            return;
        }
        let last = *prefix.last().unwrap();
        for next in (1..last).rev() {
            prefix.push(next);
            go(prefix, r, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut vec![j], r, &mut out);
    out
}

/// Enumerates the down and up paths for the entry `(i, j)`.
pub fn paths(i: usize, j: usize) -> Vec<Path> {
    if j == 1 {
        // a single one-step up path, also for i = 1
        return vec![Path {
            kind: PathKind::Up,
            rows: vec![i],
            cols: vec![1],
        }];
    }
    let mut out = Vec::new();
    let mut push = |kind, rows: Vec<usize>| {
        for cols in decreasing(j, rows.len()) {
            out.push(Path {
                kind,
                rows: rows.clone(),
                cols,
            });
        }
    };
    for rows in chains(1, i) {
        push(PathKind::Down, rows);
    }
    if i > 1 {
        // rows 1 < i_1 < .. < i_r = i
        for start in 2..=i {
            for rows in chains(start, i) {
                if rows[0] == start {
                    push(PathKind::Up, rows);
                }
            }
        }
    }
    out
}

/// How to read a displayed operator formula.
///
/// For path operators the adjusted reading is the one that agrees with the
/// duality derivative on `M_q(2)` and `M_q(3)`: every corner factor carries
/// an extra `q^2`, the horizontal factors are inverted, and the up-path
/// horizontal factors sit in row `i_x`. Both path kinds then share one
/// formula. For the lifts it is the extra `q^2` on `𝒪_1`; for the row
/// commutation formula it is the sign of the `q` exponents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Reading {
    /// The formula exactly as listed.
    #[default]
    AsWritten,
    Adjusted,
}

fn term_for(path: &Path, i: usize, n: usize, reading: Reading) -> OpTerm {
    let var = |s: usize, t: usize| (s - 1) * n + t;
    let adjusted = reading == Reading::Adjusted;
    let (rows, cols) = (&path.rows, &path.cols);
    let r = rows.len();
    let mut factors = Vec::new();
    for y in 0..r - 1 {
        factors.push(Factor::O(var(rows[y], cols[y + 1])));
    }
    // K[s,t] in the path convention is Factor::K(.., -1), its inverse K(.., 1)
    let horizontal = if adjusted { 1 } else { -1 };
    for x in 0..r - 1 {
        let row = match path.kind {
            PathKind::Up if !adjusted => rows[x + 1],
            _ => rows[x],
        };
        for t in cols[x + 1] + 1..cols[x] {
            factors.push(Factor::K(var(row, t), horizontal));
        }
    }
    let first = match path.kind {
        PathKind::Down => 1,
        PathKind::Up => 0,
    };
    for x in first..r {
        let below = if x == 0 { 0 } else { rows[x - 1] };
        for s in below + 1..rows[x] {
            factors.push(Factor::K(var(s, cols[x]), 1));
        }
    }
    for x in 1..cols[r - 1] {
        factors.push(Factor::K(var(i, x), 1));
    }
    for x in 0..r {
        factors.push(Factor::D(var(rows[x], cols[x])));
    }
    let mut term = OpTerm::new(factors);
    if adjusted {
        term.coeff = QCoeff::q_pow(2 * (r as i64 - 1));
    }
    term
}

/// The path-sum operator for `∂/∂X_{i,j}` on `M_q(n)`.
pub fn path_operator(alg: &Algebra, i: usize, j: usize, reading: Reading) -> Result<PathOperator> {
    let n = (1..=16).find(|&n| n * n == alg.n_gens()).ok_or_else(|| {
        Error::WrongAlgebra("the number of generators is not a perfect square".into())
    })?;
    super::require_mq(alg, n)?;
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::InvalidSpec(format!("entry ({i}, {j}) outside a {n}x{n} matrix")));
    }
    let paths = paths(i, j);
    let terms = paths.iter().map(|p| term_for(p, i, n, reading)).collect();
    Ok(PathOperator {
        n,
        i,
        j,
        paths,
        op: StructuredOp {
            terms,
            matrix_side: Some(n),
            inverse_k_notation: true,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::aiii;

    #[test]
    fn mq2_paths_print_as_expected() {
        let alg = Algebra::new(aiii(2)).unwrap();
        let show = |i, j| path_operator(&alg, i, j, Reading::AsWritten).unwrap().op.to_string();
        assert_eq!(show(1, 1), "d[1,1]");
        assert_eq!(show(1, 2), "K[1,1]^-1 d[1,2]");
        assert_eq!(show(2, 1), "K[1,1]^-1 d[2,1]");
        assert_eq!(show(2, 2), "O[1,1] d[1,2] d[2,1] + K[1,2]^-1 K[2,1]^-1 d[2,2]");
    }

    #[test]
    fn path_counts() {
        // (3,3) in a 3x3 matrix: down paths from row 1, up paths from rows 2, 3
        let p = paths(3, 3);
        assert!(p.iter().all(|p| p.rows.last() == Some(&3) && p.cols[0] == 3));
        assert_eq!(p.iter().filter(|p| p.kind == PathKind::Down).count(), 3);
        assert_eq!(p.iter().filter(|p| p.kind == PathKind::Up).count(), 3);
    }
}
