//! Operator identities for the derivatives on quantum matrices.

use super::{path_operator, q_derivative, require_mq, Factor, OpTerm, Reading, StructuredOp};
use crate::algebra::{pbw_basis, Algebra};
use crate::catalog::aiii;
use crate::dual::{PolyRep, RepScheme};
use crate::error::Result;
use crate::ring::QCoeff;
use crate::tensor::{TensorElement, Word};

fn dq(alg: &Algebra, g: usize, f: &PolyRep) -> Result<PolyRep> {
    q_derivative(alg, g, f, RepScheme::F2)
}

fn monomials(n_vars: usize, max_degree: usize) -> impl Iterator<Item = PolyRep> {
    (0..=max_degree)
        .flat_map(move |d| pbw_basis(n_vars, d))
        .map(move |e| PolyRep::monomial(n_vars, e, QCoeff::one()))
}

fn exps(f: &PolyRep) -> Vec<u32> {
    f.iter().next().map(|(e, _)| e.clone()).unwrap_or_default()
}

/// `□_q f = (∂_1)_q(∂_4)_q f - q^{-1}(∂_2)_q(∂_3)_q f` on the 2x2 quantum
/// matrices.
pub fn wave_operator(alg: &Algebra, f: &PolyRep) -> Result<PolyRep> {
    require_mq(alg, 2)?;
    let a = dq(alg, 1, &dq(alg, 4, f)?)?;
    let b = dq(alg, 2, &dq(alg, 3, f)?)?;
    Ok(a.sub(&b.scale(&QCoeff::q_pow(-1))))
}

/// `K_2K_3∂_1∂_4 - q∂_2∂_3` with classical derivatives.
pub fn wave_operator_classical_form() -> StructuredOp {
    use Factor::*;
    let mut second = OpTerm::new(vec![D(2), D(3)]);
    second.coeff = -QCoeff::q_pow(1);
    StructuredOp {
        terms: vec![OpTerm::new(vec![K(2, 1), K(3, 1), D(1), D(4)]), second],
        ..Default::default()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WaveReport {
    pub identity_checked: usize,
    /// Monomials where `□_q` differs from the classical form.
    pub identity_failures: Vec<Vec<u32>>,
    pub commutation_checked: usize,
    /// `(generator, monomial)` where `□_q (∂_g)_q != (∂_g)_q □_q`.
    pub commutation_failures: Vec<(usize, Vec<u32>)>,
}

impl WaveReport {
    pub fn passed(&self) -> bool {
        self.identity_failures.is_empty() && self.commutation_failures.is_empty()
    }
}

/// Compares `□_q` with its classical form on every monomial of degree at
/// most `identity_degree` and checks that it commutes with the four
/// derivatives on degree at most `commutation_degree`.
pub fn wave_operator_check(alg: &Algebra, identity_degree: usize, commutation_degree: usize) -> Result<WaveReport> {
    require_mq(alg, 2)?;
    let classical = wave_operator_classical_form();
    let mut report = WaveReport::default();
    for f in monomials(4, identity_degree) {
        report.identity_checked += 1;
        if wave_operator(alg, &f)? != classical.apply(&f) {
            report.identity_failures.push(exps(&f));
        }
    }
    for f in monomials(4, commutation_degree) {
        let boxed = wave_operator(alg, &f)?;
        for g in 1..=4 {
            report.commutation_checked += 1;
            if wave_operator(alg, &dq(alg, g, &f)?)? != dq(alg, g, &boxed)? {
                report.commutation_failures.push((g, exps(&f)));
            }
        }
    }
    Ok(report)
}

/// Which derivative plays the role of each generator of `M_q(2)` in the
/// opposite relations: `Z11 -> ∂_1`, `Z12 -> ∂_3`, `Z21 -> ∂_2`, `Z22 -> ∂_4`.
pub const OPPOSITE_ASSIGNMENT: [usize; 4] = [1, 3, 2, 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OppositeReport {
    pub relations_checked: usize,
    pub monomials_checked: usize,
    /// `(i, j, monomial)` for each relation `Z_i Z_j` that fails.
    pub failures: Vec<(usize, usize, Vec<u32>)>,
}

impl OppositeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the derivatives satisfy the `M_q(2)` relations with
/// `q -> q^{-1}` under [`OPPOSITE_ASSIGNMENT`], as operator identities on
/// all monomials of degree at most `max_degree`. A product `Z_a Z_b` maps to
/// the composition `∂_{π(a)} ∘ ∂_{π(b)}`.
pub fn opposite_relations_check(alg: &Algebra, max_degree: usize) -> Result<OppositeReport> {
    require_mq(alg, 2)?;
    let spec = aiii(2);
    let op = |k: usize| OPPOSITE_ASSIGNMENT[k - 1];
    let mut report = OppositeReport::default();
    let polys: Vec<PolyRep> = monomials(4, max_degree).collect();
    report.monomials_checked = polys.len();
    for f in &polys {
        // first derivatives of f, then second
        let mut second = vec![vec![PolyRep::zero(4); 5]; 5];
        let first: Vec<PolyRep> = (0..=4)
            .map(|g| if g == 0 { Ok(PolyRep::zero(4)) } else { dq(alg, g, f) })
            .collect::<Result<_>>()?;
        for (a, row) in second.iter_mut().enumerate().skip(1) {
            for (b, g) in first.iter().enumerate().skip(1) {
                row[b] = dq(alg, a, g)?;
            }
        }
        let comp = |x: usize, y: usize| &second[op(x)][op(y)];
        for (i, j, rel) in spec.relations() {
            let lhs = comp(i, j);
            let mut rhs = comp(j, i).scale(&QCoeff::q_pow(-rel.alpha));
            for (w, c) in rel.tail.iter() {
                let l = w.letters();
                rhs.add_scaled(comp(l[0] as usize, l[1] as usize), &c.invert_q());
            }
            if *lhs != rhs {
                report.failures.push((i, j, exps(f)));
            }
        }
    }
    report.relations_checked = spec.relations().count();
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RowIdentityReport {
    pub instances_checked: usize,
    /// `(row a, column i, row exponents)`.
    pub failures: Vec<(usize, usize, Vec<u32>)>,
}

impl RowIdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the commutation formula that moves `z_{n,i}` past a monomial in
/// row `a < n`:
///
/// ```text
/// z_{n,i} m = sum_{x<i} c_x q^{α_{x+1}+..+α_{i-1}} m[α_x - 1, α_i + 1] z_{n,x} + q^{α_i} m z_{n,i}
/// ```
///
/// with `c_x = q(q^{-2α_x} - 1)`, by comparing normal forms for all row
/// exponent vectors of total degree at most `max_degree`. The adjusted
/// reading negates the two `q` exponents, which is the form that holds in
/// `M_q(n)`.
pub fn row_commutation_check(alg: &Algebra, n: usize, max_degree: usize, reading: Reading) -> Result<RowIdentityReport> {
    let sign: i64 = match reading {
        Reading::AsWritten => 1,
        Reading::Adjusted => -1,
    };
    require_mq(alg, n)?;
    let var = |s: usize, t: usize| ((s - 1) * n + t) as u8;
    let row_word = |a: usize, e: &[u32]| -> Vec<u8> {
        let mut w = Vec::new();
        for (t, &k) in e.iter().enumerate() {
            w.extend(std::iter::repeat_n(var(a, t + 1), k as usize));
        }
        w
    };
    let word = |letters: Vec<u8>| TensorElement::from_word(Word::new(&letters));
    let mut report = RowIdentityReport::default();
    for a in 1..n {
        for i in 1..=n {
            for d in 0..=max_degree {
                for e in pbw_basis(n, d) {
                    report.instances_checked += 1;
                    let mut lw = vec![var(n, i)];
                    lw.extend(row_word(a, &e));
                    let lhs = alg.normal_form(&word(lw));
                    let mut rhs = TensorElement::zero();
                    for x in 1..i {
                        if e[x - 1] == 0 {
                            continue;
                        }
                        let c = &QCoeff::q_pow(1) * &(&QCoeff::q_pow(-2 * e[x - 1] as i64) - &QCoeff::one());
                        let shift: u32 = e[x..i - 1].iter().sum();
                        let mut e2 = e.clone();
                        e2[x - 1] -= 1;
                        e2[i - 1] += 1;
                        let mut w = row_word(a, &e2);
                        w.push(var(n, x));
                        rhs.add_scaled(&word(w), &(&c * &QCoeff::q_pow(sign * shift as i64)));
                    }
                    let mut w = row_word(a, &e);
                    w.push(var(n, i));
                    rhs.add_scaled(&word(w), &QCoeff::q_pow(sign * e[i - 1] as i64));
                    if lhs != alg.normal_form(&rhs) {
                        report.failures.push((a, i, e));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowestOrderEntry {
    pub i: usize,
    pub j: usize,
    pub found: OpTerm,
    /// `prod_{x<j} K[i,x]^-1 prod_{s<i} K[s,j]^-1 d[i,j]`.
    pub matches_row_i: bool,
    /// `prod_{y<j} K[1,y]^-1 prod_{x<i} K[x,j]^-1 d[i,j]`.
    pub matches_row_1: bool,
}

fn same_factors(a: &[Factor], b: &[Factor]) -> bool {
    // K factors commute among themselves; compare as multisets
    let key = |f: &Factor| format!("{f:?}");
    let mut x: Vec<String> = a.iter().map(key).collect();
    let mut y: Vec<String> = b.iter().map(key).collect();
    x.sort();
    y.sort();
    x == y
}

/// Compares the first-order summand of every path operator with the two
/// candidate closed forms.
pub fn lowest_order_check(alg: &Algebra, n: usize) -> Result<Vec<LowestOrderEntry>> {
    require_mq(alg, n)?;
    let var = |s: usize, t: usize| (s - 1) * n + t;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let po = path_operator(alg, i, j, Reading::AsWritten)?;
            let found = po.lowest_order_term().expect("nonempty").clone();
            let build = |row: usize| {
                let mut f: Vec<Factor> = (1..j).map(|y| Factor::K(var(row, y), 1)).collect();
                f.extend((1..i).map(|s| Factor::K(var(s, j), 1)));
                f.push(Factor::D(var(i, j)));
                f
            };
            out.push(LowestOrderEntry {
                i,
                j,
                matches_row_i: found.coeff.is_one() && same_factors(&found.factors, &build(i)),
                matches_row_1: found.coeff.is_one() && same_factors(&found.factors, &build(1)),
                found,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mq2() -> Algebra {
        Algebra::new(aiii(2)).unwrap()
    }

    fn p(s: &str) -> PolyRep {
        PolyRep::parse(s, 4).unwrap()
    }

    #[test]
    fn wave_spot_values() {
        let alg = mq2();
        assert_eq!(wave_operator(&alg, &p("z1^1z4^1")).unwrap(), p("1"));
        assert_eq!(wave_operator(&alg, &p("z2^1z3^1")).unwrap(), p("-1q^1"));
        assert!(wave_operator(&alg, &p("z1^1")).unwrap().is_zero());
    }

    #[test]
    fn wave_identity_low_degree() {
        let r = wave_operator_check(&mq2(), 3, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.identity_checked, 35);
    }

    #[test]
    fn opposite_relations_low_degree() {
        let r = opposite_relations_check(&mq2(), 3).unwrap();
        assert_eq!(r.relations_checked, 6);
        assert!(r.passed(), "{:?}", &r.failures[..r.failures.len().min(5)]);
    }

    #[test]
    fn row_commutation_formula() {
        let alg = mq2();
        let r = row_commutation_check(&alg, 2, 4, Reading::AsWritten).unwrap();
        assert_eq!((r.instances_checked, r.failures.len()), (30, 20));
        // moving z21 past z11 picks up q^-1, not q
        assert!(r.failures.contains(&(1, 1, vec![1, 0])));
        assert!(row_commutation_check(&alg, 2, 4, Reading::Adjusted).unwrap().passed());
    }

    #[test]
    fn lowest_order_terms_mq2() {
        let entries = lowest_order_check(&mq2(), 2).unwrap();
        assert!(entries.iter().all(|e| e.matches_row_i));
        let off: Vec<(usize, usize)> = entries.iter().filter(|e| !e.matches_row_1).map(|e| (e.i, e.j)).collect();
        assert_eq!(off, vec![(2, 2)]);
    }
}
