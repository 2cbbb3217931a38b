//! Quantized partial derivatives obtained by duality, the diagonal shift
//! operators `K`, `𝒦`, `𝒪`, and structured operator expressions built from
//! them.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::dual::{dual_basis, sample, star_poly, PolyRep, RepScheme};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qsym::q_symmetrize;
use crate::ring::{QCoeff, Rational};
use crate::tensor::{TensorElement, Word};

mod checks;
mod lifts;
mod paths;

pub use checks::{
    lowest_order_check, opposite_relations_check, row_commutation_check, wave_operator, wave_operator_check,
    wave_operator_classical_form, LowestOrderEntry, OppositeReport, RowIdentityReport, WaveReport, OPPOSITE_ASSIGNMENT,
};
pub use lifts::{covariant_lift_check, LiftMismatch, LiftReport, LiftVersion};
pub use paths::{path_operator, Path, PathKind, PathOperator, Reading};

/// Matrix of the duality derivative along generator `g` on degree `n`:
/// row `β` (degree `n` basis of [`dual_basis`]), column `α` (degree `n-1`
/// basis), entry `n ⟨w_β, P_q-sym(X_g ⊗ sample_α)⟩`.
pub fn derivative_matrix(alg: &Algebra, g: usize, n: usize, scheme: RepScheme) -> Result<Arc<Matrix>> {
    if g == 0 || g > alg.n_gens() {
        return Err(Error::InvalidSpec(format!("generator {g} out of range 1..={}", alg.n_gens())));
    }
    if let Some(hit) = alg.deriv_cache.read().unwrap().get(&(g, n, scheme)) {
        return Ok(hit.clone());
    }
    let upper = dual_basis(alg, n, scheme)?;
    let lower = dual_basis(alg, n - 1, scheme)?;
    let xg = TensorElement::from_word(Word::letter(g as u8));
    let nq = QCoeff::from_int(n as i64);
    let mut m = Matrix::zeros(upper.basis.len(), lower.basis.len());
    for (col, alpha) in lower.basis.iter().enumerate() {
        let v = q_symmetrize(alg, &xg.concat(&sample(alpha, scheme)))?;
        let s = upper.sorted_coefficients(&v);
        for (row, p) in upper.pair_all(&s).into_iter().enumerate() {
            if !p.is_zero() {
                m.set(row, col, &p * &nq);
            }
        }
    }
    let m = Arc::new(m);
    alg.deriv_cache
        .write()
        .unwrap()
        .insert((g, n, scheme), m.clone());
    Ok(m)
}

/// The quantized partial derivative `(∂/∂z_g)_q` defined by duality.
pub fn q_derivative(alg: &Algebra, g: usize, f: &PolyRep, scheme: RepScheme) -> Result<PolyRep> {
    let n_gens = alg.n_gens();
    let mut out = PolyRep::zero(n_gens);
    for n in f.degrees() {
        if n == 0 {
            continue;
        }
        let m = derivative_matrix(alg, g, n, scheme)?;
        let upper = dual_basis(alg, n, scheme)?;
        let lower = dual_basis(alg, n - 1, scheme)?;
        for (beta, c) in f.iter() {
            if beta.iter().sum::<u32>() as usize != n {
                continue;
            }
            let row = upper.index_of(beta).unwrap();
            for (col, alpha) in lower.basis.iter().enumerate() {
                let e = m.get(row, col);
                if !e.is_zero() {
                    out.add_term(alpha.clone(), &(c * e));
                }
            }
        }
    }
    Ok(out)
}

/// A diagonal or first-order factor acting on polynomials; variables are
/// 1-based indices into the exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `z^α -> q^{-k α_v} z^α`.
    K(usize, i64),
    /// `z^α -> -q^{2a-1} (1 - q^{-2a-2}) / (a+1) z_v z^α`, `a = α_v`.
    Kcal(usize),
    /// `𝒦_v K_v^2`.
    O(usize),
    /// The classical partial derivative.
    D(usize),
}

fn q_pow(e: i64) -> QCoeff {
    QCoeff::q_pow(e)
}

/// Scalar of `𝒦_v` on a monomial whose `v`-exponent is `a`.
pub fn kcal_scalar(a: u32) -> QCoeff {
    let a = a as i64;
    // -q^{2a-1} (1 - q^{-2a-2}) / (a+1) = (q^{-3} - q^{2a-1}) / (a+1)
    QCoeff::laurent([(-3, Rational::one()), (2 * a - 1, Rational::from_int(-1))])
        .scale(&Rational::new(1, a + 1))
}

impl Factor {
    /// Applies the factor to one monomial, returning the image monomial or
    /// `None` when it vanishes.
    pub fn apply_monomial(&self, exps: &[u32], c: &QCoeff) -> Option<(Vec<u32>, QCoeff)> {
        let mut e = exps.to_vec();
        match *self {
            Factor::K(v, k) => Some((e, c * &q_pow(-k * exps[v - 1] as i64))),
            Factor::Kcal(v) => {
                let a = exps[v - 1];
                e[v - 1] += 1;
                Some((e, c * &kcal_scalar(a)))
            }
            Factor::O(v) => {
                let a = exps[v - 1];
                e[v - 1] += 1;
                Some((e, &(c * &kcal_scalar(a)) * &q_pow(-2 * a as i64)))
            }
            Factor::D(v) => {
                let a = exps[v - 1];
                if a == 0 {
                    return None;
                }
                e[v - 1] -= 1;
                Some((e, c.scale(&Rational::from_int(a as i64))))
            }
        }
    }

    pub fn apply(&self, f: &PolyRep) -> PolyRep {
        let mut out = PolyRep::zero(f.n_vars());
        for (e, c) in f.iter() {
            if let Some((e2, c2)) = self.apply_monomial(e, c) {
                out.add_term(e2, &c2);
            }
        }
        out
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, label: &dyn Fn(usize) -> String, invert_k: bool) -> fmt::Result {
        let this = match *self {
            Factor::K(v, k) if invert_k => Factor::K(v, -k),
            ref other => other.clone(),
        };
        match this {
            Factor::K(v, 1) => write!(f, "K{}", label(v)),
            Factor::K(v, k) => write!(f, "K{}^{k}", label(v)),
            Factor::Kcal(v) => write!(f, "Kcal{}", label(v)),
            Factor::O(v) => write!(f, "O{}", label(v)),
            Factor::D(v) => write!(f, "d{}", label(v)),
        }
    }
}

/// `coeff * F_1 F_2 ... F_k`, the rightmost factor acting first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTerm {
    pub coeff: QCoeff,
    pub factors: Vec<Factor>,
}

impl OpTerm {
    pub fn new(factors: Vec<Factor>) -> Self {
        OpTerm {
            coeff: QCoeff::one(),
            factors,
        }
    }

    /// Number of classical derivatives.
    pub fn order(&self) -> usize {
        self.factors.iter().filter(|f| matches!(f, Factor::D(_))).count()
    }
}

/// A sum of factor products acting on polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructuredOp {
    pub terms: Vec<OpTerm>,
    /// Side length `n` when variables are entries of an `n x n` matrix; used
    /// only for display.
    pub matrix_side: Option<usize>,
    /// Print `K` factors in the inverse convention, so that `K(v, 1)` shows
    /// as `K[v]^-1`.
    pub inverse_k_notation: bool,
}

impl StructuredOp {
    pub fn apply(&self, f: &PolyRep) -> PolyRep {
        let mut out = PolyRep::zero(f.n_vars());
        for t in &self.terms {
            let mut cur: Vec<(Vec<u32>, QCoeff)> = f.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
            for fac in t.factors.iter().rev() {
                cur = cur
                    .into_iter()
                    .filter_map(|(e, c)| fac.apply_monomial(&e, &c))
                    .collect();
            }
            for (e, c) in cur {
                out.add_term(e, &(&c * &t.coeff));
            }
        }
        out
    }

    fn label(&self, v: usize) -> String {
        match self.matrix_side {
            Some(n) => format!("[{},{}]", (v - 1) / n + 1, (v - 1) % n + 1),
            None => format!("[{v}]"),
        }
    }
}

impl fmt::Display for StructuredOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let label = |v: usize| self.label(v);
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if !t.coeff.is_one() {
                write!(f, "{} ", t.coeff)?;
            }
            for (i, fac) in t.factors.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                fac.fmt_with(f, &label, self.inverse_k_notation)?;
            }
        }
        Ok(())
    }
}

/// Checks that `alg` is the `n x n` quantum matrix algebra with variables in
/// row-major order.
pub fn require_mq(alg: &Algebra, n: usize) -> Result<()> {
    let reference = crate::catalog::aiii(n);
    let spec = alg.spec();
    let same = spec.n_gens() == reference.n_gens()
        && reference
            .relations()
            .all(|(i, j, r)| spec.relation(i, j).map(|s| s == r).unwrap_or(false));
    if same {
        Ok(())
    } else {
        Err(Error::WrongAlgebra(format!(
            "expected the {n}x{n} quantum matrix algebra in row-major order"
        )))
    }
}

/// The closed-form action of `(∂/∂z_g)_q` on `z^β` for the 2x2
/// quantum matrices.
pub fn mq2_closed_form(alg: &Algebra, g: usize, beta: &[u32]) -> Result<PolyRep> {
    require_mq(alg, 2)?;
    if beta.len() != 4 {
        return Err(Error::InvalidSpec("exponent vector must have 4 entries".into()));
    }
    let [a1, a2, a3, a4] = [beta[0], beta[1], beta[2], beta[3]];
    let mut out = PolyRep::zero(4);
    let r = |x: u32| Rational::from_int(x as i64);
    match g {
        1 if a1 > 0 => out.add_term(vec![a1 - 1, a2, a3, a4], &QCoeff::from_rational(r(a1))),
        2 if a2 > 0 => out.add_term(vec![a1, a2 - 1, a3, a4], &QCoeff::monomial(r(a2), -(a1 as i64))),
        3 if a3 > 0 => out.add_term(vec![a1, a2, a3 - 1, a4], &QCoeff::monomial(r(a3), -(a1 as i64))),
        4 => {
            if a4 > 0 {
                out.add_term(
                    vec![a1, a2, a3, a4 - 1],
                    &QCoeff::monomial(r(a4), -(a2 as i64) - a3 as i64),
                );
            }
            if a2 > 0 && a3 > 0 {
                // α2 α3 𝒦_{α1} q^{-2α1+2}, 𝒦 raising the z1 exponent
                let c = (&kcal_scalar(a1) * &q_pow(-2 * a1 as i64 + 2)).scale(&r(a2 * a3));
                out.add_term(vec![a1 + 1, a2 - 1, a3 - 1, a4], &c);
            }
        }
        1..=3 => {}
        _ => return Err(Error::InvalidSpec(format!("generator {g} out of range 1..=4"))),
    }
    Ok(out)
}

/// The structured forms of the four derivatives on the
/// 2x2 quantum matrices: `d1`, `K1 d2`, `K1 d3`, `K2 K3 d4 + O1 d2 d3`.
pub fn mq2_display_operator(g: usize) -> StructuredOp {
    use Factor::*;
    let terms = match g {
        1 => vec![OpTerm::new(vec![D(1)])],
        2 => vec![OpTerm::new(vec![K(1, 1), D(2)])],
        3 => vec![OpTerm::new(vec![K(1, 1), D(3)])],
        _ => vec![
            OpTerm::new(vec![K(2, 1), K(3, 1), D(4)]),
            OpTerm::new(vec![O(1), D(2), D(3)]),
        ],
    };
    StructuredOp {
        terms,
        ..Default::default()
    }
}

/// Which diagonal operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KOperator {
    K(usize),
    Kcal(usize),
    O(usize),
}

pub fn k_operator(which: KOperator, f: &PolyRep) -> Result<PolyRep> {
    let v = match which {
        KOperator::K(v) | KOperator::Kcal(v) | KOperator::O(v) => v,
    };
    if v == 0 || v > f.n_vars() {
        return Err(Error::InvalidSpec(format!("variable {v} out of range 1..={}", f.n_vars())));
    }
    Ok(match which {
        KOperator::K(v) => Factor::K(v, 1).apply(f),
        KOperator::Kcal(v) => Factor::Kcal(v).apply(f),
        KOperator::O(v) => Factor::O(v).apply(f),
    })
}

/// `{f, g} = lim_{q->1} (f⋆g - g⋆f)/(q-1)`, with rational coefficients.
pub fn poisson_bracket(alg: &Algebra, f: &PolyRep, g: &PolyRep, scheme: RepScheme) -> Result<PolyRep> {
    let fg = star_poly(alg, f, g, scheme)?;
    let gf = star_poly(alg, g, f, scheme)?;
    fg.sub(&gf)
        .try_map_coeffs(|c| Ok(QCoeff::from_rational(c.poisson_scale()?.eval_at_one()?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::pbw_basis;
    use crate::catalog::aiii;

    fn mq2() -> Algebra {
        Algebra::new(aiii(2)).unwrap()
    }

    fn mono(e: &[u32]) -> PolyRep {
        PolyRep::monomial(e.len(), e.to_vec(), QCoeff::one())
    }

    fn p(s: &str) -> PolyRep {
        PolyRep::parse(s, 4).unwrap()
    }

    #[test]
    fn small_derivatives() {
        let alg = mq2();
        let d = |g, e: &[u32]| q_derivative(&alg, g, &mono(e), RepScheme::F2).unwrap();
        assert_eq!(d(1, &[2, 1, 0, 0]), p("2 * z1^1z2^1"));
        assert_eq!(d(2, &[1, 1, 0, 0]), p("q^-1 * z1^1"));
        assert_eq!(d(4, &[0, 1, 1, 0]), p("-1q^1+1q^-1 * z1^1"));
        assert_eq!(d(4, &[0, 0, 0, 1]), p("1"));
    }

    // (β!/α!) times the coefficient of X^β in the normal form of X_g X^α
    fn via_normal_form(alg: &Algebra, g: usize, beta: &[u32]) -> PolyRep {
        let n: u32 = beta.iter().sum();
        let fact = |e: &[u32]| e.iter().fold(Rational::one(), |a, &x| a * Rational::factorial(x));
        let mut out = PolyRep::zero(4);
        for alpha in pbw_basis(4, n as usize - 1) {
            let mut w = vec![g as u8];
            for (v, &k) in alpha.iter().enumerate() {
                w.extend(std::iter::repeat_n(v as u8 + 1, k as usize));
            }
            let nf = alg.normal_form(&TensorElement::from_word(Word::new(&w)));
            let c = nf.coeff(&Word::from_exponents(beta));
            if !c.is_zero() {
                let r = fact(beta) * fact(&alpha).recip().unwrap();
                out.add_term(alpha, &c.scale(&r));
            }
        }
        out
    }

    #[test]
    fn duality_matches_normal_form_oracle_and_closed_form() {
        let alg = mq2();
        for n in 1..=3 {
            for beta in pbw_basis(4, n) {
                for g in 1..=4 {
                    let d = q_derivative(&alg, g, &mono(&beta), RepScheme::F2).unwrap();
                    assert_eq!(d, via_normal_form(&alg, g, &beta), "g={g} beta={beta:?}");
                    assert_eq!(d, mq2_closed_form(&alg, g, &beta).unwrap(), "g={g} beta={beta:?}");
                }
            }
        }
    }

    #[test]
    fn k_operator_examples() {
        let f = PolyRep::monomial(4, vec![3, 0, 0, 0], QCoeff::one());
        assert_eq!(k_operator(KOperator::K(1), &f).unwrap(), f.scale(&QCoeff::q_pow(-3)));
        let one = PolyRep::constant(4, QCoeff::one());
        assert_eq!(k_operator(KOperator::K(2), &one).unwrap(), one);
        assert_eq!(k_operator(KOperator::O(1), &one).unwrap(), p("-1q^-1+1q^-3 * z1^1"));
    }

    #[test]
    fn closed_form_rejects_other_algebras() {
        let alg = Algebra::new(crate::catalog::symmetric(4)).unwrap();
        assert!(matches!(mq2_closed_form(&alg, 1, &[1, 0, 0, 0]), Err(Error::WrongAlgebra(_))));
    }

    #[test]
    fn display_of_structured_operator() {
        assert_eq!(mq2_display_operator(4).to_string(), "K[2] K[3] d[4] + O[1] d[2] d[3]");
    }
}
