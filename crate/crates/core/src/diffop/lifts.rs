//! Vector lifts that turn `(∂/∂z_4)_q` on the 2x2 quantum matrices into the
//! classical-looking `K_2K_3 ∂_4` plus a nilpotent shift.
//!
//! With `D = K_2K_3∂_4` and `Ô = 𝒪_1∂_2∂_3`:
//! - `AF`: `F(f) = (f, Ôf, (Ô² + [Ô,D])f, (Ô³ + [Ô²,D] + D[Ô,D])f, ...)`,
//!   shift `A` with ones on the superdiagonal. Components past the fourth
//!   follow `L_{m+1} = L_m Ô + L_m D - D L_m`.
//! - `BG`: `G(f)_m = K_4^{2m}(∂_2∂_3)^m f`, shift `B` with `𝒪_1 K_4^{-2}` on
//!   the superdiagonal.
//!
//! The identity checked is `(D + shift) L(f) = L((∂/∂z_4)_q f)` row by row.

use std::fmt;
use std::str::FromStr;

use super::{q_derivative, require_mq, Factor, OpTerm, Reading, StructuredOp};
use crate::algebra::Algebra;
use crate::dual::{PolyRep, RepScheme};
use crate::error::{Error, Result};
use crate::ring::QCoeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftVersion {
    AF,
    BG,
}

impl FromStr for LiftVersion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AF" => Ok(LiftVersion::AF),
            "BG" => Ok(LiftVersion::BG),
            _ => Err(Error::InvalidSpec(format!("unknown lift '{s}' (expected AF or BG)"))),
        }
    }
}

impl fmt::Display for LiftVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftVersion::AF => "AF",
            LiftVersion::BG => "BG",
        })
    }
}

/// One row where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftMismatch {
    pub row: usize,
    pub lhs: PolyRep,
    pub rhs: PolyRep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub version: LiftVersion,
    /// Rows compared, including trailing rows where both sides vanish.
    pub rows_checked: usize,
    /// Rows whose lifted component is nonzero.
    pub nonzero_components: usize,
    pub mismatches: Vec<LiftMismatch>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    Corner,
    Shift,
}

struct Ops {
    shift: StructuredOp,
    corner: StructuredOp,
    k4_sq: StructuredOp,
    k4_inv_sq: StructuredOp,
    d23: StructuredOp,
    o1: StructuredOp,
}

impl Ops {
    fn new(reading: Reading) -> Ops {
        use Factor::*;
        let single = |factors| StructuredOp {
            terms: vec![OpTerm::new(factors)],
            ..Default::default()
        };
        let mut corner = single(vec![O(1), D(2), D(3)]);
        let mut o1 = single(vec![O(1)]);
        if reading == Reading::Adjusted {
            corner.terms[0].coeff = QCoeff::q_pow(2);
            o1.terms[0].coeff = QCoeff::q_pow(2);
        }
        Ops {
            shift: single(vec![K(2, 1), K(3, 1), D(4)]),
            corner,
            k4_sq: single(vec![K(4, 2)]),
            k4_inv_sq: single(vec![K(4, -2)]),
            d23: single(vec![D(2), D(3)]),
            o1,
        }
    }

    fn word(&self, w: &[Letter], f: &PolyRep) -> PolyRep {
        w.iter().rev().fold(f.clone(), |acc, l| match l {
            Letter::Corner => self.corner.apply(&acc),
            Letter::Shift => self.shift.apply(&acc),
        })
    }
}

type Combination = Vec<(i64, Vec<Letter>)>;

/// Operator words for the AF components `L_0 .. L_{count-1}`.
fn af_words(count: usize) -> Vec<Combination> {
    use Letter::*;
    let mut out: Vec<Combination> = vec![
        vec![(1, vec![])],
        vec![(1, vec![Corner])],
        vec![
            (1, vec![Corner, Corner]),
            (1, vec![Corner, Shift]),
            (-1, vec![Shift, Corner]),
        ],
        vec![
            (1, vec![Corner, Corner, Corner]),
            (1, vec![Corner, Corner, Shift]),
            (-1, vec![Shift, Corner, Corner]),
            (1, vec![Shift, Corner, Shift]),
            (-1, vec![Shift, Shift, Corner]),
        ],
    ];
    while out.len() < count {
        let last = out.last().unwrap();
        let mut next = Combination::new();
        for (s, w) in last {
            let mut a = w.clone();
            a.push(Corner);
            next.push((*s, a));
            let mut b = w.clone();
            b.push(Shift);
            next.push((*s, b));
            let mut c = vec![Shift];
            c.extend(w);
            next.push((-s, c));
        }
        out.push(next);
    }
    out.truncate(count);
    out
}

fn total_degree(f: &PolyRep) -> usize {
    f.degrees().into_iter().max().unwrap_or(0)
}

/// Checks the lift identity for `f` on the 2x2 quantum matrices.
pub fn covariant_lift_check(
    alg: &Algebra,
    version: LiftVersion,
    f: &PolyRep,
    reading: Reading,
) -> Result<LiftReport> {
    require_mq(alg, 2)?;
    let ops = Ops::new(reading);
    let df = q_derivative(alg, 4, f, RepScheme::F2)?;
    // every component L_m lowers total degree by m
    let rows = total_degree(f) + 1;
    let lift = |g: &PolyRep, count: usize| -> Vec<PolyRep> {
        match version {
            LiftVersion::AF => af_words(count)
                .iter()
                .map(|comb| {
                    let mut acc = PolyRep::zero(4);
                    for (s, w) in comb {
                        acc.add_scaled(&ops.word(w, g), &QCoeff::from_int(*s));
                    }
                    acc
                })
                .collect(),
            LiftVersion::BG => {
                let mut out = Vec::with_capacity(count);
                let mut cur = g.clone();
                for m in 0..count {
                    let mut c = cur.clone();
                    for _ in 0..m {
                        c = ops.k4_sq.apply(&c);
                    }
                    out.push(c);
                    cur = ops.d23.apply(&cur);
                }
                out
            }
        }
    };
    let left = lift(f, rows + 1);
    let right = lift(&df, rows);
    let mut mismatches = Vec::new();
    for m in 0..rows {
        let next = match version {
            LiftVersion::AF => left[m + 1].clone(),
            LiftVersion::BG => ops.o1.apply(&ops.k4_inv_sq.apply(&left[m + 1])),
        };
        let lhs = ops.shift.apply(&left[m]).add(&next);
        if lhs != right[m] {
            mismatches.push(LiftMismatch {
                row: m,
                lhs,
                rhs: right[m].clone(),
            });
        }
    }
    Ok(LiftReport {
        version,
        rows_checked: rows,
        nonzero_components: left.iter().filter(|c| !c.is_zero()).count(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::aiii;

    fn p(s: &str) -> PolyRep {
        PolyRep::parse(s, 4).unwrap()
    }

    #[test]
    fn constants_pass_trivially() {
        let alg = Algebra::new(aiii(2)).unwrap();
        for v in [LiftVersion::AF, LiftVersion::BG] {
            let r = covariant_lift_check(&alg, v, &p("3"), Reading::AsWritten).unwrap();
            assert!(r.passed());
            assert_eq!(r.nonzero_components, 1);
        }
    }

    #[test]
    fn corner_term_on_z2z3() {
        let alg = Algebra::new(aiii(2)).unwrap();
        let f = p("z2^1z3^1");
        let ops = Ops::new(Reading::AsWritten);
        assert_eq!(ops.corner.apply(&f), p("-1q^-1+1q^-3 * z1^1"));
        let r = covariant_lift_check(&alg, LiftVersion::AF, &f, Reading::AsWritten).unwrap();
        assert_eq!(r.nonzero_components, 2);
        // row 0 compares K2K3∂4 f + Ôf with (∂4)_q f = -(q - q^-1) z1
        assert_eq!(r.mismatches[0].row, 0);
        assert_eq!(r.mismatches[0].rhs, p("-1q^1+1q^-1 * z1^1"));
        let r = covariant_lift_check(&alg, LiftVersion::AF, &f, Reading::Adjusted).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn af_words_follow_recursion_past_display() {
        let w = af_words(5);
        assert_eq!(w[4].len(), 15);
        assert!(w[4].iter().all(|(_, x)| x.len() == 4));
    }
}
