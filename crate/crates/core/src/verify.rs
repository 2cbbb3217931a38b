//! Named verification suites. Every suite returns one line per check it ran;
//! a check that does not apply to the algebra is reported as skipped.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{pbw_basis, Algebra};
use crate::diffop::{
    covariant_lift_check, lowest_order_check, mq2_closed_form, mq2_display_operator, opposite_relations_check,
    path_operator, q_derivative, require_mq, Factor, LiftVersion, Reading, StructuredOp,
};
use crate::dual::{PolyRep, RepScheme};
use crate::error::{Error, Result};
use crate::qsym::{check_budget, iterate_to_fixpoint, sigma_apply, star_identities_check, Scheme, Variant};
use crate::ring::QCoeff;
use crate::tensor::{all_words, TensorElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Stars,
    Braid,
    ClosedForms,
    Paths,
    OppositeRelations,
    Lifts,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Stars,
        Suite::Braid,
        Suite::ClosedForms,
        Suite::Paths,
        Suite::OppositeRelations,
        Suite::Lifts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Stars => "stars",
            Suite::Braid => "braid",
            Suite::ClosedForms => "closed-forms",
            Suite::Paths => "paths",
            Suite::OppositeRelations => "opposite-relations",
            Suite::Lifts => "lifts",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            status: Status::Skipped,
            detail: why.into(),
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        write!(f, "  {} checks, {failed} failed", self.checks.len())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_degree: usize,
    pub force: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_degree: 4,
            force: false,
        }
    }
}

/// Runs one suite, or every suite in order for [`Suite::All`].
pub fn run_suite(alg: &Algebra, suite: Suite, opts: VerifyOptions) -> Result<Vec<SuiteReport>> {
    if suite == Suite::All {
        return Suite::EACH.iter().map(|&s| run_one(alg, s, opts)).collect();
    }
    Ok(vec![run_one(alg, suite, opts)?])
}

fn run_one(alg: &Algebra, suite: Suite, opts: VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Stars => stars(alg, opts)?,
        Suite::Braid => {
            let mut v = braid_checks(alg, opts.max_degree, opts.force)?;
            v.extend(scheme_independence_checks(alg, opts.max_degree, opts.force)?);
            v
        }
        Suite::ClosedForms => only_mq2(alg, "closed forms", || closed_forms(alg, opts.max_degree))?,
        Suite::Paths => paths(alg, opts.max_degree)?,
        Suite::OppositeRelations => only_mq2(alg, "opposite relations", || {
            let r = opposite_relations_check(alg, opts.max_degree)?;
            let mut lines = Vec::new();
            for (i, j, _) in crate::catalog::aiii(2).relations() {
                let bad = r.failures.iter().filter(|f| f.0 == i && f.1 == j).count();
                lines.push(CheckLine::new(
                    format!("Z{i}Z{j} relation with q -> q^-1, degree <= {}", opts.max_degree),
                    bad == 0,
                    format!("{} monomials, {bad} failures", r.monomials_checked),
                ));
            }
            Ok(lines)
        })?,
        Suite::Lifts => only_mq2(alg, "lifts", || lifts(alg, opts.max_degree))?,
        Suite::All => unreachable!("expanded by run_suite"),
    };
    Ok(SuiteReport { suite, checks })
}

fn only_mq2(alg: &Algebra, what: &str, f: impl FnOnce() -> Result<Vec<CheckLine>>) -> Result<Vec<CheckLine>> {
    match require_mq(alg, 2) {
        Ok(()) => f(),
        Err(Error::WrongAlgebra(_)) => Ok(vec![CheckLine::skipped(what, "requires the 2x2 quantum matrices")]),
        Err(e) => Err(e),
    }
}

fn monomials(n_vars: usize, max_degree: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..=max_degree).flat_map(move |d| pbw_basis(n_vars, d))
}

fn stars(alg: &Algebra, opts: VerifyOptions) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    for n in 2..=opts.max_degree {
        for k in 1..=n {
            for r in 0..=n - k {
                let s = n - k - r;
                let rep = star_identities_check(alg, r, k, s, opts.force)?;
                let split = format!("(r,k,s)=({r},{k},{s})");
                out.push(CheckLine::new(
                    format!("left absorption (I_r⊗P_k⊗I_s)P = P {split}"),
                    rep.left_failures.is_empty(),
                    format!("{} words, {} failures", rep.words_checked, rep.left_failures.len()),
                ));
                out.push(CheckLine::new(
                    format!("right absorption P(I_r⊗P_k⊗I_s) = P {split}"),
                    rep.right_failures.is_empty(),
                    format!("{} words, {} failures", rep.words_checked, rep.right_failures.len()),
                ));
            }
        }
    }
    Ok(out)
}

/// Involutivity, far commutation and the braid relation for the tail-free
/// swaps on every word of degree `2..=max_degree`.
pub fn braid_checks(alg: &Algebra, max_degree: usize, force: bool) -> Result<Vec<CheckLine>> {
    let bar = |t: &TensorElement, i| sigma_apply(alg, t, i, Variant::Bar);
    let mut out = Vec::new();
    for n in 2..=max_degree {
        check_budget(alg.n_gens(), n, force)?;
        let words = all_words(alg.n_gens(), n);
        let (mut inv, mut far, mut braid) = (0, 0, 0);
        let (mut inv_n, mut far_n, mut braid_n) = (0, 0, 0);
        for w in &words {
            let t = TensorElement::from_word(w.clone());
            for i in 1..n {
                let s = bar(&t, i)?;
                inv_n += 1;
                if bar(&s, i)? != t {
                    inv += 1;
                }
                if i + 1 < n {
                    braid_n += 1;
                    let a = bar(&bar(&s, i + 1)?, i)?;
                    let b = bar(&bar(&bar(&t, i + 1)?, i)?, i + 1)?;
                    if a != b {
                        braid += 1;
                    }
                }
                for j in i + 2..n {
                    far_n += 1;
                    if bar(&bar(&t, j)?, i)? != bar(&s, j)? {
                        far += 1;
                    }
                }
            }
        }
        out.push(CheckLine::new(
            format!("bar-swap involutive on T^{n}"),
            inv == 0,
            format!("{inv_n} cases, {inv} failures"),
        ));
        if n >= 3 {
            out.push(CheckLine::new(
                format!("bar-swap braid relation on T^{n}"),
                braid == 0,
                format!("{braid_n} cases, {braid} failures"),
            ));
        }
        if n >= 4 {
            out.push(CheckLine::new(
                format!("bar-swap far commutation on T^{n}"),
                far == 0,
                format!("{far_n} cases, {far} failures"),
            ));
        }
    }
    Ok(out)
}

/// Compares the fixpoint computed with both reduced-word schemes on every
/// word of degree `1..=max_degree`.
pub fn scheme_independence_checks(alg: &Algebra, max_degree: usize, force: bool) -> Result<Vec<CheckLine>> {
    alg.require_homogeneous()?;
    let mut out = Vec::new();
    for n in 1..=max_degree {
        check_budget(alg.n_gens(), n, force)?;
        let words = all_words(alg.n_gens(), n);
        let mut bad = 0;
        for w in &words {
            let t = TensorElement::from_word(w.clone());
            let (l, _) = iterate_to_fixpoint(alg, &t, n, Scheme::InsertionLeft)?;
            let (r, _) = iterate_to_fixpoint(alg, &t, n, Scheme::InsertionRight)?;
            if l != r {
                bad += 1;
            }
        }
        out.push(CheckLine::new(
            format!("fixpoint independent of reduced-word scheme, degree {n}"),
            bad == 0,
            format!("{} words, {bad} failures", words.len()),
        ));
    }
    Ok(out)
}

fn closed_forms(alg: &Algebra, max_degree: usize) -> Result<Vec<CheckLine>> {
    let betas: Vec<Vec<u32>> = monomials(4, max_degree).collect();
    let mut out = Vec::new();
    for g in 1..=4 {
        let mut bad = 0;
        for b in &betas {
            let f = PolyRep::monomial(4, b.clone(), QCoeff::one());
            if q_derivative(alg, g, &f, RepScheme::F2)? != mq2_closed_form(alg, g, b)? {
                bad += 1;
            }
        }
        out.push(CheckLine::new(
            format!("d{g} duality derivative equals closed form, degree <= {max_degree}"),
            bad == 0,
            format!("{} monomials, {bad} failures", betas.len()),
        ));
    }
    Ok(out)
}

fn mq_side(alg: &Algebra) -> Option<usize> {
    (2..=3).find(|&n| n * n == alg.n_gens() && require_mq(alg, n).is_ok())
}

/// Term-by-term equality of two operators, factors compared as multisets.
fn same_decomposition(a: &StructuredOp, b: &StructuredOp) -> bool {
    let key = |t: &crate::diffop::OpTerm| {
        let mut f: Vec<String> = t.factors.iter().map(|x: &Factor| format!("{x:?}")).collect();
        f.sort();
        (t.coeff.to_string(), f)
    };
    let mut x: Vec<_> = a.terms.iter().map(key).collect();
    let mut y: Vec<_> = b.terms.iter().map(key).collect();
    x.sort();
    y.sort();
    x == y
}

fn paths(alg: &Algebra, max_degree: usize) -> Result<Vec<CheckLine>> {
    let Some(n) = mq_side(alg) else {
        return Ok(vec![CheckLine::skipped(
            "path operators",
            "requires the 2x2 or 3x3 quantum matrices",
        )]);
    };
    let nv = n * n;
    let polys: Vec<PolyRep> = monomials(nv, max_degree)
        .map(|b| PolyRep::monomial(nv, b, QCoeff::one()))
        .collect();
    let mut out = Vec::new();
    for reading in [Reading::AsWritten, Reading::Adjusted] {
        for i in 1..=n {
            for j in 1..=n {
                let po = path_operator(alg, i, j, reading)?;
                let g = (i - 1) * n + j;
                let mut bad = 0;
                for f in &polys {
                    if po.op.apply(f) != q_derivative(alg, g, f, RepScheme::F2)? {
                        bad += 1;
                    }
                }
                out.push(CheckLine::new(
                    format!("path sum for d[{i},{j}] ({reading:?}) equals duality derivative, degree <= {max_degree}"),
                    bad == 0,
                    format!("{} paths, {} monomials, {bad} failures", po.paths.len(), polys.len()),
                ));
            }
        }
    }
    if n == 2 {
        for g in 1..=4 {
            let (i, j) = ((g - 1) / 2 + 1, (g - 1) % 2 + 1);
            let po = path_operator(alg, i, j, Reading::AsWritten)?;
            out.push(CheckLine::new(
                format!("path decomposition of d[{i},{j}] matches the displayed operator factor for factor"),
                same_decomposition(&po.op, &mq2_display_operator(g)),
                po.op.to_string(),
            ));
        }
    }
    for e in lowest_order_check(alg, n)? {
        out.push(CheckLine::new(
            format!("lowest-order term of d[{},{}] is prod K[i,x]^-1 prod K[s,j]^-1 d[i,j]", e.i, e.j),
            e.matches_row_i,
            format!("{}", StructuredOp {
                terms: vec![e.found.clone()],
                matrix_side: Some(n),
                inverse_k_notation: true,
            }),
        ));
    }
    Ok(out)
}

fn lifts(alg: &Algebra, max_degree: usize) -> Result<Vec<CheckLine>> {
    let polys: Vec<PolyRep> = monomials(4, max_degree)
        .map(|b| PolyRep::monomial(4, b, QCoeff::one()))
        .collect();
    let mut out = Vec::new();
    for reading in [Reading::AsWritten, Reading::Adjusted] {
        for version in [LiftVersion::AF, LiftVersion::BG] {
            let mut bad = 0;
            let mut first = None;
            for f in &polys {
                let r = covariant_lift_check(alg, version, f, reading)?;
                if !r.passed() {
                    bad += 1;
                    first.get_or_insert_with(|| format!(", first at {f} row {}", r.mismatches[0].row));
                }
            }
            out.push(CheckLine::new(
                format!("{version} lift intertwines d4 ({reading:?}), degree <= {max_degree}"),
                bad == 0,
                format!("{} monomials, {bad} failures{}", polys.len(), first.unwrap_or_default()),
            ));
        }
    }
    Ok(out)
}
