//! The dual pairing, polynomial representations of dual tensors, dual
//! relations and the star product.

use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::algebra::{pbw_basis, Algebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qsym::{check_budget, q_symmetrize, q_symmetrize_word};
use crate::ring::{QCoeff, Rational};
use crate::syntax::Cursor;
use crate::tensor::{all_words, content_compare, words_with_content, TensorElement, Word};

/// How tensors are turned into polynomials in commuting variables `z_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RepScheme {
    /// Coefficient of `z^α` sums the pairing over all words of content `α`.
    F1,
    /// Coefficient of `z^α` is `c_α` times the pairing with the sorted word.
    #[default]
    F2,
}

/// Multinomial coefficient `|α|! / Π α_i!`.
pub fn multinomial(alpha: &[u32]) -> Rational {
    let n: u32 = alpha.iter().sum();
    alpha
        .iter()
        .fold(Rational::factorial(n), |acc, &a| &acc / &Rational::factorial(a))
}

/// The tensor whose symmetrization pairs to the `z^α` coefficient.
pub fn sample(alpha: &[u32], scheme: RepScheme) -> TensorElement {
    match scheme {
        RepScheme::F2 => TensorElement::monomial(
            QCoeff::from_rational(multinomial(alpha)),
            Word::from_exponents(alpha),
        ),
        RepScheme::F1 => words_with_content(alpha)
            .into_iter()
            .map(|w| (w, QCoeff::one()))
            .collect(),
    }
}

/// An element of the dual tensor algebra over the basis `X_i*`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct DualElement(pub TensorElement);

impl DualElement {
    pub fn zero() -> Self {
        DualElement(TensorElement::zero())
    }

    pub fn from_word(w: Word) -> Self {
        DualElement(TensorElement::from_word(w))
    }

    pub fn concat(&self, other: &DualElement) -> DualElement {
        DualElement(self.0.concat(&other.0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, true)
    }
}

impl fmt::Debug for DualElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, true)
    }
}

impl std::str::FromStr for DualElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TensorElement::parse_with(s, true).map(DualElement)
    }
}

/// `⟨w, t⟩` for the dual-basis pairing extended to tensors.
pub fn pair(w: &DualElement, t: &TensorElement) -> QCoeff {
    let (small, large) = if w.0.len() <= t.len() { (&w.0, t) } else { (t, &w.0) };
    small.iter().fold(QCoeff::zero(), |acc, (word, c)| {
        let d = large.coeff(word);
        if d.is_zero() {
            acc
        } else {
            &acc + &(c * &d)
        }
    })
}

/// `Σ_n n! ⟨w_n, P_q-sym(t_n)⟩` over homogeneous components.
pub fn pair_symmetrized(alg: &Algebra, w: &DualElement, t: &TensorElement) -> Result<QCoeff> {
    let mut acc = QCoeff::zero();
    for n in t.degrees() {
        let p = q_symmetrize(alg, &t.graded_component(n))?;
        let f = QCoeff::from_rational(Rational::factorial(n as u32));
        acc += &(&pair(w, &p) * &f);
    }
    Ok(acc)
}

/// A polynomial in commuting variables `z_1..z_N`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyRep {
    n_vars: usize,
    terms: FxHashMap<Vec<u32>, QCoeff>,
}

impl PolyRep {
    pub fn zero(n_vars: usize) -> Self {
        PolyRep {
            n_vars,
            terms: FxHashMap::default(),
        }
    }

    pub fn monomial(n_vars: usize, exps: Vec<u32>, c: QCoeff) -> Self {
        let mut p = Self::zero(n_vars);
        p.add_term(exps, &c);
        p
    }

    pub fn constant(n_vars: usize, c: QCoeff) -> Self {
        Self::monomial(n_vars, vec![0; n_vars], c)
    }

    /// The coordinate function `z_g` (1-based).
    pub fn var(n_vars: usize, g: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[g - 1] = 1;
        Self::monomial(n_vars, e, QCoeff::one())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> QCoeff {
        self.terms.get(exps).cloned().unwrap_or_else(QCoeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &QCoeff)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &QCoeff) {
        assert_eq!(exps.len(), self.n_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PolyRep, c: &QCoeff) {
        for (e, d) in &other.terms {
            self.add_term(e.clone(), &(d * c));
        }
    }

    pub fn add(&self, other: &PolyRep) -> PolyRep {
        let mut out = self.clone();
        out.add_scaled(other, &QCoeff::one());
        out
    }

    pub fn sub(&self, other: &PolyRep) -> PolyRep {
        let mut out = self.clone();
        out.add_scaled(other, &-QCoeff::one());
        out
    }

    pub fn scale(&self, c: &QCoeff) -> PolyRep {
        let mut out = PolyRep::zero(self.n_vars);
        out.add_scaled(self, c);
        out
    }

    /// Commutative product.
    pub fn mul(&self, other: &PolyRep) -> PolyRep {
        let mut out = PolyRep::zero(self.n_vars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn try_map_coeffs(&self, f: impl Fn(&QCoeff) -> Result<QCoeff>) -> Result<PolyRep> {
        let mut out = PolyRep::zero(self.n_vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Terms ordered by degree, then by the sorted word of the monomial.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &QCoeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(e, _)| Word::from_exponents(e));
        v
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|e| e.iter().sum::<u32>() as usize).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Parses `term (+ term)*` with `term := [coeff '*'] monomial | coeff` and
    /// `monomial := ('z' index ['^' exponent])+`, variables at most `n_vars`.
    pub fn parse(s: &str, n_vars: usize) -> Result<PolyRep> {
        let mut cur = Cursor::new(s);
        let mut out = PolyRep::zero(n_vars);
        if s.trim() == "0" {
            return Ok(out);
        }
        loop {
            let c = if cur.peek() == Some('z') {
                QCoeff::one()
            } else {
                QCoeff::parse_from(&mut cur)?
            };
            let mut e = vec![0u32; n_vars];
            let starts_monomial = cur.peek() == Some('z');
            if starts_monomial || cur.eat('*') {
                if cur.peek() == Some('1') {
                    cur.bump();
                } else {
                    loop {
                        cur.expect('z')?;
                        let col = cur.column();
                        let i = cur.usize()?;
                        if i == 0 || i > n_vars {
                            return Err(Error::parse(col, format!("variable z{i} out of range 1..={n_vars}")));
                        }
                        let p = if cur.eat('^') {
                            let col = cur.column();
                            u32::try_from(cur.usize()?).map_err(|_| Error::parse(col, "exponent too large"))?
                        } else {
                            1
                        };
                        e[i - 1] += p;
                        cur.eat('.');
                        if cur.peek() != Some('z') {
                            break;
                        }
                    }
                }
            }
            out.add_term(e, &c);
            if cur.at_end() {
                break;
            }
            cur.expect('+')?;
        }
        Ok(out)
    }
}

impl fmt::Display for PolyRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * ")?;
            if e.iter().all(|&x| x == 0) {
                f.write_str("1")?;
            }
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    write!(f, "z{}^{x}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The polynomial representing `w` under `scheme`.
pub fn f_rep(alg: &Algebra, w: &DualElement, scheme: RepScheme) -> Result<PolyRep> {
    alg.check_letters(&w.0)?;
    let n_gens = alg.n_gens();
    let mut out = PolyRep::zero(n_gens);
    for n in w.0.degrees() {
        let wn = DualElement(w.0.graded_component(n));
        for alpha in pbw_basis(n_gens, n) {
            let v = q_symmetrize(alg, &sample(&alpha, scheme))?;
            out.add_term(alpha, &pair(&wn, &v));
        }
    }
    Ok(out)
}

/// Data for dual tensors supported on sorted words that represent single
/// monomials: `inverse[γ][β]` is the coefficient of `(X^γ)*` in the
/// representative of `z^β`.
#[derive(Debug)]
pub struct DualBasis {
    pub degree: usize,
    pub scheme: RepScheme,
    /// Exponent vectors in increasing reduction order.
    pub basis: Vec<Vec<u32>>,
    pub inverse: Matrix,
}

impl DualBasis {
    pub fn index_of(&self, alpha: &[u32]) -> Option<usize> {
        self.basis.iter().position(|b| b == alpha)
    }

    /// Coefficients on the sorted words of `v`, in basis order.
    pub fn sorted_coefficients(&self, v: &TensorElement) -> Vec<QCoeff> {
        self.basis
            .iter()
            .map(|g| v.coeff(&Word::from_exponents(g)))
            .collect()
    }

    /// `⟨w'_β, v⟩` for every `β`, where `w'_β` is the sorted-word
    /// representative and `v` is given by its sorted-word coefficients.
    pub fn pair_all(&self, s: &[QCoeff]) -> Vec<QCoeff> {
        (0..self.basis.len())
            .map(|b| {
                s.iter().enumerate().fold(QCoeff::zero(), |acc, (g, sg)| {
                    let y = self.inverse.get(g, b);
                    if sg.is_zero() || y.is_zero() {
                        acc
                    } else {
                        &acc + &(sg * y)
                    }
                })
            })
            .collect()
    }
}

pub fn dual_basis(alg: &Algebra, degree: usize, scheme: RepScheme) -> Result<Arc<DualBasis>> {
    alg.require_homogeneous()?;
    if let Some(hit) = alg.dual_cache.read().unwrap().get(&(degree, scheme)) {
        return Ok(hit.clone());
    }
    let n_gens = alg.n_gens();
    let mut basis = pbw_basis(n_gens, degree);
    basis.sort_by(|a, b| content_compare(&Word::from_exponents(a), &Word::from_exponents(b)));
    let d = basis.len();
    let mut m = Matrix::zeros(d, d);
    for (r, alpha) in basis.iter().enumerate() {
        let v = q_symmetrize(alg, &sample(alpha, scheme))?;
        for (c, gamma) in basis.iter().enumerate() {
            m.set(r, c, v.coeff(&Word::from_exponents(gamma)));
        }
    }
    let inverse = if m.is_lower_triangular() {
        m.lower_triangular_inverse()?
    } else {
        m.inverse()?
    };
    let db = Arc::new(DualBasis {
        degree,
        scheme,
        basis,
        inverse,
    });
    alg.dual_cache
        .write()
        .unwrap()
        .insert((degree, scheme), db.clone());
    Ok(db)
}

/// A dual tensor supported on sorted words whose representation is `z^β`.
pub fn w_sorted_representative(alg: &Algebra, beta: &[u32], scheme: RepScheme) -> Result<DualElement> {
    check_exponents(alg, beta)?;
    let n: u32 = beta.iter().sum();
    let db = dual_basis(alg, n as usize, scheme)?;
    let b = db.index_of(beta).unwrap();
    Ok(DualElement(
        db.basis
            .iter()
            .enumerate()
            .map(|(g, gamma)| (Word::from_exponents(gamma), db.inverse.get(g, b).clone()))
            .collect(),
    ))
}

fn check_exponents(alg: &Algebra, beta: &[u32]) -> Result<()> {
    if beta.len() != alg.n_gens() {
        return Err(Error::InvalidSpec(format!(
            "exponent vector has {} entries, algebra has {} generators",
            beta.len(),
            alg.n_gens()
        )));
    }
    Ok(())
}

/// The representative of `z^β` lying in the row space of the projector:
/// `P^t` applied to the sorted-word representative.
pub fn w_of_monomial(alg: &Algebra, beta: &[u32], scheme: RepScheme, force: bool) -> Result<DualElement> {
    let n: u32 = beta.iter().sum();
    check_budget(alg.n_gens(), n as usize, force)?;
    let w = w_sorted_representative(alg, beta, scheme)?;
    let mut out = TensorElement::zero();
    for x in all_words(alg.n_gens(), n as usize) {
        let px = q_symmetrize_word(alg, &x)?;
        out.add_term(x, &pair(&w, &px.0));
    }
    Ok(DualElement(out))
}

/// A dual tensor whose representation is `f`, built from sorted-word
/// representatives.
pub fn lift(alg: &Algebra, f: &PolyRep, scheme: RepScheme) -> Result<DualElement> {
    let mut out = TensorElement::zero();
    for (beta, c) in f.iter() {
        out.add_scaled(&w_sorted_representative(alg, beta, scheme)?.0, c);
    }
    Ok(DualElement(out))
}

/// `F_[w1] ⋆ F_[w2] = F_[w1 ⊗ w2]`.
pub fn star_product(alg: &Algebra, w1: &DualElement, w2: &DualElement, scheme: RepScheme) -> Result<PolyRep> {
    f_rep(alg, &w1.concat(w2), scheme)
}

/// Star product of plain polynomials, each lifted to a dual tensor first.
pub fn star_poly(alg: &Algebra, f: &PolyRep, g: &PolyRep, scheme: RepScheme) -> Result<PolyRep> {
    star_product(alg, &lift(alg, f, scheme)?, &lift(alg, g, scheme)?, scheme)
}

/// `X_i* X_j* = q^exponent X_j* X_i*` in the dual algebra, for `i > j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualRelation {
    pub i: usize,
    pub j: usize,
    pub exponent: i64,
}

/// Reads the dual relations off the degree-2 projector: the kernel of its
/// transpose must be spanned by `X_i*X_j* - q^c X_j*X_i*`, `i > j`.
pub fn dual_relations(alg: &Algebra) -> Result<Vec<DualRelation>> {
    alg.require_homogeneous()?;
    let n = alg.n_gens();
    let words = all_words(n, 2);
    let cols: Vec<TensorElement> = words
        .iter()
        .map(|w| q_symmetrize_word(alg, w).map(|r| r.0.clone()))
        .collect::<Result<_>>()?;
    let mut rank = QCoeff::zero();
    for (w, c) in words.iter().zip(&cols) {
        rank += &c.coeff(w);
    }
    let expected = QCoeff::from_int((n * (n + 1) / 2) as i64);
    if rank != expected {
        return Err(Error::NotQuasipolynomial(format!(
            "degree-2 projector has rank {rank}, expected {expected}"
        )));
    }
    let mut out = Vec::new();
    for i in 2..=n {
        for j in 1..i {
            let wij = Word::new(&[i as u8, j as u8]);
            let wji = Word::new(&[j as u8, i as u8]);
            let mut ratio: Option<QCoeff> = None;
            for c in &cols {
                let (a, b) = (c.coeff(&wij), c.coeff(&wji));
                match (a.is_zero(), b.is_zero()) {
                    (true, true) => continue,
                    (false, false) => {
                        let r = a.checked_div(&b)?;
                        if ratio.get_or_insert_with(|| r.clone()) != &r {
                            return Err(Error::NotQuasipolynomial(format!(
                                "rows X{i}.X{j} and X{j}.X{i} are not proportional"
                            )));
                        }
                    }
                    _ => {
                        return Err(Error::NotQuasipolynomial(format!(
                            "rows X{i}.X{j} and X{j}.X{i} have different supports"
                        )))
                    }
                }
            }
            let ratio = ratio.ok_or_else(|| Error::NotQuasipolynomial(format!("row X{i}.X{j} vanishes")))?;
            match ratio.as_monomial() {
                Some((r, e)) if r.is_one() => out.push(DualRelation { i, j, exponent: e }),
                _ => {
                    return Err(Error::NotQuasipolynomial(format!(
                        "rows X{i}.X{j} and X{j}.X{i} differ by {ratio}, not a power of q"
                    )))
                }
            }
        }
    }
    Ok(out)
}
