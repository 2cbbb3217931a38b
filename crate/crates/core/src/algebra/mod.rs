//! Quadratic algebras in triangular form: rewriting to PBW normal form and
//! the confluence certificates.

mod format;
mod spec;

use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;

pub use spec::{AlgebraSpec, Relation};

use crate::dual::{DualBasis, RepScheme};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::QCoeff;
use crate::tensor::{TensorElement, Word};

/// Image of a two-letter word under the swap map.
#[derive(Clone, Debug)]
pub(crate) struct SwapImage {
    pub scale: QCoeff,
    pub tail: Vec<(Word, QCoeff)>,
}

/// A spec together with its rewriting tables and memo caches. Caches are
/// write-once maps; results never depend on their state.
pub struct Algebra {
    spec: AlgebraSpec,
    homogeneous: bool,
    // indexed [a-1][b-1]; the image of X_a X_b with the letters exchanged
    swap: Vec<Vec<SwapImage>>,
    nf_cache: RwLock<FxHashMap<Word, Arc<TensorElement>>>,
    pub(crate) qsym_cache: RwLock<FxHashMap<Word, Arc<(TensorElement, usize)>>>,
    pub(crate) dual_cache: RwLock<FxHashMap<(usize, RepScheme), Arc<DualBasis>>>,
    pub(crate) deriv_cache: RwLock<FxHashMap<(usize, usize, RepScheme), Arc<Matrix>>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra").field("spec", &self.spec).finish()
    }
}

/// A relation whose image under a generator scaling is not in the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcpFailure {
    /// The generator defining the scaling.
    pub generator: usize,
    /// The relation `(k, l)` that was scaled.
    pub relation: (usize, usize),
    /// Normal form of the scaled relation.
    pub residual: TensorElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcpReport {
    pub relations_checked: usize,
    pub failures: Vec<DcpFailure>,
}

impl DcpReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// An overlap `X_i X_j X_k` whose two reductions disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub triple: (usize, usize, usize),
    /// Normal form after rewriting `X_i X_j` first.
    pub left: TensorElement,
    /// Normal form after rewriting `X_j X_k` first.
    pub right: TensorElement,
}

impl Ambiguity {
    pub fn difference(&self) -> TensorElement {
        self.left.sub(&self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondReport {
    pub overlaps_checked: usize,
    pub failures: Vec<Ambiguity>,
}

impl DiamondReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub dcp: DcpReport,
    pub diamond: DiamondReport,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.dcp.passed() && self.diamond.passed()
    }
}

/// Exponent vectors of total degree `degree` over `n_gens` variables, in the
/// order of their sorted words (so `(2,0)` precedes `(1,1)`).
pub fn pbw_basis(n_gens: usize, degree: usize) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n_gens == 0 {
        return out;
    }
    rec(0, degree as u32, &mut vec![0; n_gens], &mut out);
    out
}

impl Algebra {
    /// Builds the rewriting tables. Fails on an incomplete spec.
    pub fn new(spec: AlgebraSpec) -> Result<Self> {
        spec.ensure_complete()?;
        let n = spec.n_gens();
        let mut swap = Vec::with_capacity(n);
        for a in 1..=n {
            let mut row = Vec::with_capacity(n);
            for b in 1..=n {
                row.push(if a == b {
                    SwapImage {
                        scale: QCoeff::one(),
                        tail: Vec::new(),
                    }
                } else if a > b {
                    let r = spec.relation(a, b)?;
                    SwapImage {
                        scale: QCoeff::q_pow(r.alpha),
                        tail: r.tail.sorted_terms().into_iter().map(|(w, c)| (w.clone(), c.clone())).collect(),
                    }
                } else {
                    // X_a X_b -> b_ba^{-1} (X_b X_a - p_ba)
                    let r = spec.relation(b, a)?;
                    let inv = QCoeff::q_pow(-r.alpha);
                    SwapImage {
                        scale: inv.clone(),
                        tail: r
                            .tail
                            .sorted_terms()
                            .into_iter()
                            .map(|(w, c)| (w.clone(), -(&inv * c)))
                            .collect(),
                    }
                });
            }
            swap.push(row);
        }
        Ok(Algebra {
            homogeneous: spec.is_homogeneous(),
            spec,
            swap,
            nf_cache: RwLock::new(FxHashMap::default()),
            qsym_cache: RwLock::new(FxHashMap::default()),
            dual_cache: RwLock::new(FxHashMap::default()),
            deriv_cache: RwLock::new(FxHashMap::default()),
        })
    }

    /// Builds the algebra and requires both confluence certificates to pass.
    pub fn validated(spec: AlgebraSpec) -> Result<Self> {
        let alg = Self::new(spec)?;
        let report = alg.validate();
        if !report.dcp.passed() {
            let f = &report.dcp.failures[0];
            return Err(Error::NotValidated(format!(
                "scaling by generator {} does not preserve relation {:?}",
                f.generator, f.relation
            )));
        }
        if !report.diamond.passed() {
            let f = &report.diamond.failures[0];
            return Err(Error::NotValidated(format!(
                "ambiguity on {:?} does not resolve",
                f.triple
            )));
        }
        Ok(alg)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn n_gens(&self) -> usize {
        self.spec.n_gens()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub(crate) fn require_homogeneous(&self) -> Result<()> {
        if self.homogeneous {
            Ok(())
        } else {
            Err(Error::InhomogeneousAlgebra)
        }
    }

    pub(crate) fn swap_image(&self, a: u8, b: u8) -> &SwapImage {
        &self.swap[a as usize - 1][b as usize - 1]
    }

    /// Errors when `t` uses a generator index beyond this algebra.
    pub fn check_letters(&self, t: &TensorElement) -> Result<()> {
        let m = t.max_letter() as usize;
        if m > self.n_gens() {
            return Err(Error::InvalidSpec(format!(
                "generator X{m} does not exist (algebra has {} generators)",
                self.n_gens()
            )));
        }
        Ok(())
    }

    /// Reduces to a combination of sorted words by rewriting the leftmost
    /// descent `X_i X_j` (`i > j`) until none is left.
    pub fn normal_form(&self, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in t.iter() {
            out.add_scaled(&self.normal_form_word(w), c);
        }
        out
    }

    pub fn normal_form_word(&self, w: &Word) -> Arc<TensorElement> {
        if w.is_sorted() {
            return Arc::new(TensorElement::from_word(w.clone()));
        }
        if let Some(hit) = self.nf_cache.read().unwrap().get(w) {
            return hit.clone();
        }
        let l = w.letters();
        let k = (0..l.len() - 1).find(|&k| l[k] > l[k + 1]).unwrap();
        let img = self.swap_image(l[k], l[k + 1]);
        let mut out = TensorElement::zero();
        let mut swapped = w.clone();
        swapped.letters_mut().swap(k, k + 1);
        self.debug_assert_decreases(w, &swapped);
        out.add_scaled(&self.normal_form_word(&swapped), &img.scale);
        for (u, c) in &img.tail {
            let v = w.slice(0, k).concat(u).concat(&w.slice(k + 2, l.len()));
            self.debug_assert_decreases(w, &v);
            out.add_scaled(&self.normal_form_word(&v), c);
        }
        let out = Arc::new(out);
        self.nf_cache
            .write()
            .unwrap()
            .insert(w.clone(), out.clone());
        out
    }

    fn debug_assert_decreases(&self, from: &Word, to: &Word) {
        if cfg!(debug_assertions) && from.len() == to.len() {
            debug_assert_eq!(
                crate::tensor::order_compare(to, from).unwrap(),
                crate::tensor::OrderRelation::Less,
                "rewriting {from} produced {to}, which is not smaller"
            );
        }
    }

    /// `S(X_k X_l) - X_k X_l` for the relation `(k, l)`, as an element of the
    /// ideal.
    pub fn relation_element(&self, k: usize, l: usize) -> TensorElement {
        let img = self.swap_image(k as u8, l as u8);
        let mut t = TensorElement::monomial(img.scale.clone(), Word::new(&[l as u8, k as u8]));
        for (u, c) in &img.tail {
            t.add_term(u.clone(), c);
        }
        t.add_term(Word::new(&[k as u8, l as u8]), &-QCoeff::one());
        t
    }

    /// For each generator `i`, scales every relation among `X_1..X_{i-1}` by
    /// `X_m -> b_im X_m` and checks the image still reduces to zero.
    pub fn dcp_check(&self) -> DcpReport {
        let n = self.n_gens();
        let mut failures = Vec::new();
        let mut checked = 0;
        for i in 2..=n {
            let b: Vec<QCoeff> = (1..i)
                .map(|m| QCoeff::q_pow(self.spec.relation(i, m).unwrap().alpha))
                .collect();
            for k in 2..i {
                for l in 1..k {
                    checked += 1;
                    let rel = self.relation_element(k, l);
                    let image: TensorElement = rel
                        .iter()
                        .map(|(w, c)| {
                            let s = w
                                .letters()
                                .iter()
                                .fold(c.clone(), |acc, &m| &acc * &b[m as usize - 1]);
                            (w.clone(), s)
                        })
                        .collect();
                    let residual = self.normal_form(&image);
                    if !residual.is_zero() {
                        failures.push(DcpFailure {
                            generator: i,
                            relation: (k, l),
                            residual,
                        });
                    }
                }
            }
        }
        DcpReport {
            relations_checked: checked,
            failures,
        }
    }

    /// Resolves every overlap `X_i X_j X_k` with `i > j > k` both ways.
    pub fn diamond_check(&self) -> DiamondReport {
        let n = self.n_gens();
        let mut failures = Vec::new();
        let mut checked = 0;
        for i in 3..=n {
            for j in 2..i {
                for k in 1..j {
                    checked += 1;
                    let (a, b, c) = (i as u8, j as u8, k as u8);
                    let xk = TensorElement::from_word(Word::letter(c));
                    let xi = TensorElement::from_word(Word::letter(a));
                    let left = self.normal_form(&self.swap_element(a, b).concat(&xk));
                    let right = self.normal_form(&xi.concat(&self.swap_element(b, c)));
                    if left != right {
                        failures.push(Ambiguity {
                            triple: (i, j, k),
                            left,
                            right,
                        });
                    }
                }
            }
        }
        DiamondReport {
            overlaps_checked: checked,
            failures,
        }
    }

    /// `S(X_a X_b)` as a tensor element.
    pub(crate) fn swap_element(&self, a: u8, b: u8) -> TensorElement {
        let img = self.swap_image(a, b);
        let mut t = TensorElement::monomial(img.scale.clone(), Word::new(&[b, a]));
        for (u, c) in &img.tail {
            t.add_term(u.clone(), c);
        }
        t
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            dcp: self.dcp_check(),
            diamond: self.diamond_check(),
        }
    }

    pub fn pbw_basis(&self, degree: usize) -> Vec<Vec<u32>> {
        pbw_basis(self.n_gens(), degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(text: &str) -> Algebra {
        Algebra::new(AlgebraSpec::from_qalg(text).unwrap()).unwrap()
    }

    const MQ2: &str = "qalg 1\nname mq2\ngens 4\nrel 2 1 : 1q^-1 ;\nrel 3 1 : 1q^-1 ;\nrel 3 2 : 1q^0 ;\nrel 4 1 : 1q^0 ; -1q^1+1q^-1 * 2 3\nrel 4 2 : 1q^-1 ;\nrel 4 3 : 1q^-1 ;\n";

    #[test]
    fn mq2_reorders_with_tail() {
        let a = alg(MQ2);
        let nf = a.normal_form(&"X4.X1".parse().unwrap());
        assert_eq!(nf.to_string(), "1q^0 * X1.X4 + -1q^1+1q^-1 * X2.X3");
        let sorted: TensorElement = "X1.X2.X3".parse().unwrap();
        assert_eq!(a.normal_form(&sorted), sorted);
    }

    #[test]
    fn mq2_passes_both_certificates() {
        let a = alg(MQ2);
        let r = a.validate();
        assert!(r.passed());
        assert_eq!(r.diamond.overlaps_checked, 4);
    }

    #[test]
    fn pbw_counts() {
        assert_eq!(pbw_basis(4, 0), vec![vec![0, 0, 0, 0]]);
        assert_eq!(pbw_basis(4, 1).len(), 4);
        assert_eq!(pbw_basis(4, 2).len(), 10);
        assert_eq!(pbw_basis(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn inhomogeneous_rewrites_down_in_degree() {
        let s = AlgebraSpec::from_qalg_relaxed("qalg 1\ngens 2\nrel 2 1 : 1q^-2 ; -1q^-2\n").unwrap();
        let a = Algebra::new(s).unwrap();
        assert!(!a.is_homogeneous());
        let nf = a.normal_form(&"X2.X1".parse().unwrap());
        assert_eq!(nf.to_string(), "-1q^-2 * 1 + 1q^-2 * X1.X2");
    }
}
