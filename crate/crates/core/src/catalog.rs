//! Built-in presentations in triangular form.
//!
//! Generator orders:
//! - `aiii(n)`: `Z_{i,j}` row-major, `Z_{i,j} -> (i-1)n + j`.
//! - `ci(n)`: `W_{i,j}` with `i <= j`, lexicographic on `(i, j)`.
//! - `fq(N)`: `z_0, ..., z_{N-1}, z*_{N-1}, ..., z*_0`.
//! - `quantum_plane`: `A, B` with `AB = qBA`.
//! - `symmetric(N)`: commuting variables.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{Algebra, AlgebraSpec, DiamondReport, Relation};
use crate::error::{Error, Result};
use crate::ring::QCoeff;
use crate::tensor::{TensorElement, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Aiii(usize),
    Ci(usize),
    Fq(usize),
    QuantumPlane,
    Symmetric(usize),
}

impl Family {
    /// Parses a family name and its size parameter, e.g. `("aiii", Some(2))`.
    pub fn from_parts(name: &str, param: Option<usize>) -> Result<Family> {
        let need = |p: Option<usize>| match p {
            Some(n) if n >= 1 => Ok(n),
            Some(_) => Err(Error::InvalidSpec(format!("{name}: size must be at least 1"))),
            None => Err(Error::InvalidSpec(format!("{name}: missing size parameter"))),
        };
        Ok(match name {
            "aiii" | "mq" => Family::Aiii(need(param)?),
            "ci" => Family::Ci(need(param)?),
            "fq" => Family::Fq(need(param)?),
            "quantum-plane" | "quantum_plane" | "qplane" => Family::QuantumPlane,
            "symmetric" => Family::Symmetric(need(param)?),
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "unknown family '{name}' (expected aiii, ci, fq, quantum-plane, symmetric)"
                )))
            }
        })
    }

    pub fn spec(self) -> AlgebraSpec {
        match self {
            Family::Aiii(n) => aiii(n),
            Family::Ci(n) => ci(n),
            Family::Fq(n) => fq(n),
            Family::QuantumPlane => quantum_plane(),
            Family::Symmetric(n) => symmetric(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Aiii(n) => write!(f, "aiii({n})"),
            Family::Ci(n) => write!(f, "ci({n})"),
            Family::Fq(n) => write!(f, "fq({n})"),
            Family::QuantumPlane => f.write_str("quantum_plane"),
            Family::Symmetric(n) => write!(f, "symmetric({n})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `name(n)`, e.g. `aiii(2)`, or a bare `name` such as `quantum-plane`.
    fn from_str(s: &str) -> Result<Family> {
        let s = s.trim();
        match s.find('(') {
            Some(k) if s.ends_with(')') => {
                let n = s[k + 1..s.len() - 1]
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad size in '{s}'")))?;
                Family::from_parts(&s[..k], Some(n))
            }
            _ => Family::from_parts(s, None),
        }
    }
}

fn word2(a: usize, b: usize) -> Word {
    Word::new(&[a as u8, b as u8])
}

fn set(spec: &mut AlgebraSpec, i: usize, j: usize, alpha: i64, tail: TensorElement) {
    spec.set_relation(i, j, Relation { alpha, tail })
        .expect("catalog relation is triangular");
}

/// The quantized `n x n` matrix algebra `M_q(n)`.
pub fn aiii(n: usize) -> AlgebraSpec {
    let idx = |i: usize, j: usize| (i - 1) * n + j;
    let mut spec = AlgebraSpec::new(format!("aiii{n}"), n * n).expect("size");
    let mut names = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            names.push(format!("Z{i}{j}"));
        }
    }
    spec.set_names(names).unwrap();
    let lambda = QCoeff::lambda();
    for s in 1..=n {
        for t in 1..=n {
            for i in 1..=n {
                for j in 1..=n {
                    let (big, small) = (idx(s, t), idx(i, j));
                    if small >= big {
                        continue;
                    }
                    if i == s || j == t {
                        set(&mut spec, big, small, -1, TensorElement::zero());
                    } else if t < j {
                        set(&mut spec, big, small, 0, TensorElement::zero());
                    } else {
                        // Z_st Z_ij = Z_ij Z_st - (q - q^-1) Z_it Z_sj
                        let tail = TensorElement::monomial(-&lambda, word2(idx(i, t), idx(s, j)));
                        set(&mut spec, big, small, 0, tail);
                    }
                }
            }
        }
    }
    spec
}

/// The CI family on symmetric `n x n` matrix entries `W_{i,j}`, `i <= j`.
///
/// For `i<j<k<l` the tail of `W_{j,l} W_{i,k}` is `(q^{-1} - q) W_{i,k} W_{j,l}`.
/// The `W_{k,k}` relation covers `i<j<k`, and the crossing relation covers
/// `i<k<j<l`. The presentation passes both confluence checks for `n <= 3`.
pub fn ci(n: usize) -> AlgebraSpec {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            pairs.push((i, j));
        }
    }
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap() + 1;
    let mut spec = AlgebraSpec::new(format!("ci{n}"), pairs.len()).expect("size");
    spec.set_names(pairs.iter().map(|(i, j)| format!("W{i}{j}")).collect())
        .unwrap();
    let q = |e: i64| QCoeff::q_pow(e);
    let one = QCoeff::one();
    let one_minus_q2 = &one - &q(2);
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a + 1..] {
            let (big, small) = (idx(k, l), idx(i, j));
            // every branch writes W_kl W_ij = q^alpha W_ij W_kl + tail
            let (alpha, tail) = if i == k {
                // W_ii W_il = q^-2 W_il W_ii, or W_ij W_il = q^-1 W_il W_ij
                (if i == j { 2 } else { 1 }, TensorElement::zero())
            } else if i == j && k == l {
                let c = one_minus_q2.checked_div(&(&q(1) + &q(-1))).unwrap();
                (0, TensorElement::monomial(-&c, word2(idx(i, k), idx(i, k))))
            } else if i == j {
                (0, TensorElement::monomial(-&one_minus_q2, word2(idx(i, k), idx(i, l))))
            } else if k == l {
                if j < k {
                    (0, TensorElement::monomial(-&one_minus_q2, word2(idx(i, k), idx(j, k))))
                } else if j == k {
                    (2, TensorElement::zero())
                } else {
                    (0, TensorElement::zero())
                }
            } else if j < k {
                let c = &q(-1) - &q(1);
                (0, TensorElement::monomial(-&c, word2(idx(i, k), idx(j, l))))
            } else if j == k {
                let c = &q(-2) - &q(2);
                (1, TensorElement::monomial(-&c, word2(idx(i, l), idx(j, j))))
            } else if j < l {
                let c = &q(-1) - &q(1);
                (0, TensorElement::monomial(-&c, word2(idx(i, l), idx(k, j))))
            } else if j == l {
                (1, TensorElement::zero())
            } else {
                (0, TensorElement::zero())
            };
            set(&mut spec, big, small, alpha, tail);
        }
    }
    spec
}

/// The quantized Heisenberg space `F_q(N)`.
pub fn fq(n: usize) -> AlgebraSpec {
    let z = |k: usize| k + 1;
    let zs = |k: usize| 2 * n - k;
    let mut spec = AlgebraSpec::new(format!("fq{n}"), 2 * n).expect("size");
    let mut names: Vec<String> = (0..n).map(|k| format!("z{k}")).collect();
    names.extend((0..n).rev().map(|k| format!("z{k}*")));
    spec.set_names(names).unwrap();
    for i in 0..n {
        for j in i + 1..n {
            set(&mut spec, z(j), z(i), 1, TensorElement::zero());
            set(&mut spec, zs(i), zs(j), 1, TensorElement::zero());
        }
        for j in 0..n {
            if i != j {
                set(&mut spec, zs(j), z(i), 1, TensorElement::zero());
            }
        }
        // z*_i z_i = z_i z*_i - (q^2 - 1) sum_{k>i} z_k z*_k
        let c = &QCoeff::one() - &QCoeff::q_pow(2);
        let mut tail = TensorElement::zero();
        for k in i + 1..n {
            tail.add_term(word2(z(k), zs(k)), &c);
        }
        set(&mut spec, zs(i), z(i), 0, tail);
    }
    spec
}

/// `AB = qBA`, i.e. `X2 X1 = q^{-1} X1 X2`.
pub fn quantum_plane() -> AlgebraSpec {
    let mut spec = AlgebraSpec::new("quantum_plane", 2).expect("size");
    spec.set_names(vec!["A".into(), "B".into()]).unwrap();
    set(&mut spec, 2, 1, -1, TensorElement::zero());
    spec
}

/// The polynomial ring in `n` commuting variables.
pub fn symmetric(n: usize) -> AlgebraSpec {
    let mut spec = AlgebraSpec::new(format!("symmetric{n}"), n).expect("size");
    for i in 2..=n {
        for j in 1..i {
            set(&mut spec, i, j, 0, TensorElement::zero());
        }
    }
    spec
}

/// Overlap report for the CI presentation.
pub fn ci_diamond_report(n: usize) -> Result<DiamondReport> {
    Ok(Algebra::new(ci(n))?.diamond_check())
}
