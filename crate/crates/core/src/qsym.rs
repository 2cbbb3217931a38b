//! The swap maps, lifted permutations, the averaged operator `P` and its
//! fixpoint, the q-symmetrization projector.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::ring::{QCoeff, Rational};
use crate::tensor::{all_words, TensorElement, Word};

/// Whether swaps carry the tails `p_ij` (`full`) or drop them (`bar`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Full,
    Bar,
}

/// How a permutation is written as a product of adjacent transpositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    /// Insertion sort placing the last position first.
    #[default]
    InsertionLeft,
    /// The mirror image of `InsertionLeft` under `i -> n - i`.
    InsertionRight,
}

/// Largest degree accepted without `force`.
pub const MAX_DEGREE: usize = 7;
/// Largest `N^n` accepted without `force`.
pub const MAX_DIMENSION: u128 = 1_000_000;

pub fn check_budget(n_gens: usize, degree: usize, force: bool) -> Result<()> {
    let dim = (n_gens as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
    if !force && (degree > MAX_DEGREE || dim > MAX_DIMENSION) {
        return Err(Error::DegreeBudgetExceeded { degree, dim });
    }
    Ok(())
}

/// Applies the swap at slots `i, i+1` (1-based) to every word.
pub fn sigma_apply(alg: &Algebra, t: &TensorElement, i: usize, variant: Variant) -> Result<TensorElement> {
    alg.require_homogeneous()?;
    let mut out = TensorElement::zero();
    for (w, c) in t.iter() {
        if i == 0 || i >= w.len() {
            return Err(Error::PositionOutOfRange {
                position: i,
                len: w.len(),
            });
        }
        sigma_word_into(alg, w, c, i - 1, variant, &mut out);
    }
    Ok(out)
}

fn sigma_word_into(alg: &Algebra, w: &Word, c: &QCoeff, k: usize, variant: Variant, out: &mut TensorElement) {
    let l = w.letters();
    let (a, b) = (l[k], l[k + 1]);
    if a == b {
        out.add_term(w.clone(), c);
        return;
    }
    let img = alg.swap_image(a, b);
    let mut swapped = w.clone();
    swapped.letters_mut().swap(k, k + 1);
    out.add_term(swapped, &(c * &img.scale));
    if variant == Variant::Full {
        for (u, d) in &img.tail {
            let mut v = w.clone();
            v.letters_mut()[k..k + 2].copy_from_slice(u.letters());
            out.add_term(v, &(c * d));
        }
    }
}

/// `sigma_apply` for a homogeneous input already known to be long enough.
fn sigma(alg: &Algebra, t: &TensorElement, i: usize, variant: Variant) -> TensorElement {
    let mut out = TensorElement::zero();
    for (w, c) in t.iter() {
        sigma_word_into(alg, w, c, i - 1, variant, &mut out);
    }
    out
}

/// A permutation of `1..=n` in one-line notation: `perm[k-1] = sigma(k)`.
/// It moves the letter in slot `k` to slot `sigma(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidSpec(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&k| self.0[k - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (k, &x) in self.0.iter().enumerate() {
            inv[x - 1] = k + 1;
        }
        Permutation(inv)
    }

    /// The adjacent transposition `s_i`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p: Vec<usize> = (1..=n).collect();
        p.swap(i - 1, i);
        Permutation(p)
    }

    pub fn inversions(&self) -> usize {
        let p = &self.0;
        (0..p.len())
            .map(|a| (a + 1..p.len()).filter(|&b| p[a] > p[b]).count())
            .sum()
    }

    /// Letters `i_1..i_r` with `self = s_{i_1} ... s_{i_r}`, of minimal length.
    pub fn reduced_word(&self, scheme: Scheme) -> Vec<usize> {
        match scheme {
            Scheme::InsertionLeft => self.insertion_left_word(),
            Scheme::InsertionRight => {
                let n = self.len();
                let rho = Permutation((1..=n).rev().collect());
                rho.compose(self)
                    .compose(&rho)
                    .insertion_left_word()
                    .into_iter()
                    .map(|i| n - i)
                    .collect()
            }
        }
    }

    fn insertion_left_word(&self) -> Vec<usize> {
        // self = r_n ... r_2 with r_k = s_j s_{j+1} ... s_{k-1} sending k to j
        let mut cur = self.clone();
        let mut word = Vec::new();
        for k in (2..=self.len()).rev() {
            let j = cur.image(k);
            word.extend(j..k);
            let mut r = Permutation::identity(self.len());
            for i in (j..k).rev() {
                r = Permutation::transposition(self.len(), i).compose(&r);
            }
            cur = r.inverse().compose(&cur);
        }
        word
    }

    /// Acts on a word: the letter in slot `k` moves to slot `sigma(k)`.
    pub fn act(&self, w: &Word) -> Word {
        let mut out = w.clone();
        for (k, &l) in w.letters().iter().enumerate() {
            out.letters_mut()[self.0[k] - 1] = l;
        }
        out
    }

    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for x in 1..=n {
                if !used[x - 1] {
                    used[x - 1] = true;
                    cur.push(x);
                    rec(cur, used, out);
                    cur.pop();
                    used[x - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

/// Applies the lift of `perm` along its reduced word for `scheme`.
pub fn perm_lift(
    alg: &Algebra,
    perm: &Permutation,
    variant: Variant,
    scheme: Scheme,
    t: &TensorElement,
) -> Result<TensorElement> {
    alg.require_homogeneous()?;
    check_degree(t, perm.len())?;
    let mut v = t.clone();
    for &i in perm.reduced_word(scheme).iter().rev() {
        v = sigma(alg, &v, i, variant);
    }
    Ok(v)
}

fn check_degree(t: &TensorElement, n: usize) -> Result<()> {
    for d in t.degrees() {
        if d != n {
            return Err(Error::DegreeMismatch(d, n));
        }
    }
    Ok(())
}

/// The averaged operator `(1/n!) Σ_σ σ̂` applied to a homogeneous element.
///
/// Uses the factorization of the sum over coset representatives,
/// `Σ σ̂ = G_n ... G_2` with `G_k = Σ_j σ_j σ_{j+1} ... σ_{k-1}`.
pub fn p_average(alg: &Algebra, t: &TensorElement, variant: Variant, scheme: Scheme) -> Result<TensorElement> {
    alg.require_homogeneous()?;
    let n = match t.homogeneous_degree() {
        Some(n) => n,
        None if t.is_zero() => return Ok(TensorElement::zero()),
        None => {
            let d = t.degrees();
            return Err(Error::DegreeMismatch(d[0], d[1]));
        }
    };
    Ok(p_apply(alg, t, n, variant, scheme))
}

fn p_apply(alg: &Algebra, t: &TensorElement, n: usize, variant: Variant, scheme: Scheme) -> TensorElement {
    let mut v = t.clone();
    for k in 2..=n {
        let mut u = v.clone();
        let mut acc = v;
        for j in (1..k).rev() {
            let slot = match scheme {
                Scheme::InsertionLeft => j,
                Scheme::InsertionRight => n - j,
            };
            u = sigma(alg, &u, slot, variant);
            acc.add_scaled(&u, &QCoeff::one());
        }
        v = acc;
    }
    let f = Rational::factorial(n as u32).recip().unwrap();
    v.scale(&QCoeff::from_rational(f))
}

/// Iterates `P` to its fixpoint. Returns the limit and the least `k` with
/// `P^k t = P^{k+1} t`.
pub fn iterate_to_fixpoint(alg: &Algebra, t: &TensorElement, n: usize, scheme: Scheme) -> Result<(TensorElement, usize)> {
    let cap = (alg.n_gens() as u128).checked_pow(n as u32).unwrap_or(u128::MAX).min(1 << 20) as usize;
    let mut v = t.clone();
    for k in 0..=cap {
        let next = p_apply(alg, &v, n, Variant::Full, scheme);
        if next == v {
            return Ok((v, k));
        }
        v = next;
    }
    Err(Error::NoConvergence(cap))
}

/// `P_q-sym` of a single word, memoized.
pub fn q_symmetrize_word(alg: &Algebra, w: &Word) -> Result<Arc<(TensorElement, usize)>> {
    alg.require_homogeneous()?;
    if let Some(hit) = alg.qsym_cache.read().unwrap().get(w) {
        return Ok(hit.clone());
    }
    let res = Arc::new(iterate_to_fixpoint(
        alg,
        &TensorElement::from_word(w.clone()),
        w.len(),
        Scheme::InsertionLeft,
    )?);
    alg.qsym_cache.write().unwrap().insert(w.clone(), res.clone());
    Ok(res)
}

/// The q-symmetrization projector applied to `t` (any mix of degrees).
pub fn q_symmetrize(alg: &Algebra, t: &TensorElement) -> Result<TensorElement> {
    alg.require_homogeneous()?;
    alg.check_letters(t)?;
    let mut out = TensorElement::zero();
    for (w, c) in t.iter() {
        out.add_scaled(&q_symmetrize_word(alg, w)?.0, c);
    }
    Ok(out)
}

/// The fixpoint computed on the whole element with the given scheme, without
/// the per-word cache.
pub fn q_symmetrize_with(alg: &Algebra, t: &TensorElement, scheme: Scheme) -> Result<(TensorElement, usize)> {
    alg.require_homogeneous()?;
    alg.check_letters(t)?;
    let mut out = TensorElement::zero();
    let mut iters = 0;
    for d in t.degrees() {
        let (v, k) = iterate_to_fixpoint(alg, &t.graded_component(d), d, scheme)?;
        out.add_scaled(&v, &QCoeff::one());
        iters = iters.max(k);
    }
    Ok((out, iters))
}

/// The matrix of `P_q-sym` on degree-`n` tensors, column `j` being the image
/// of `words[j]`.
#[derive(Clone, Debug)]
pub struct Projector {
    pub degree: usize,
    pub words: Vec<Word>,
    pub columns: Vec<TensorElement>,
    pub iterations_to_fixpoint: usize,
}

pub fn projector_matrix(alg: &Algebra, n: usize, force: bool) -> Result<Projector> {
    alg.require_homogeneous()?;
    check_budget(alg.n_gens(), n, force)?;
    let words = all_words(alg.n_gens(), n);
    let mut columns = Vec::with_capacity(words.len());
    let mut iters = 0;
    for w in &words {
        let r = q_symmetrize_word(alg, w)?;
        iters = iters.max(r.1);
        columns.push(r.0.clone());
    }
    Ok(Projector {
        degree: n,
        words,
        columns,
        iterations_to_fixpoint: iters,
    })
}

impl Projector {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Entry in row `row`, column `col`.
    pub fn entry(&self, row: &Word, col: usize) -> QCoeff {
        self.columns[col].coeff(row)
    }

    /// The trace, which is the rank for an idempotent matrix.
    pub fn trace(&self) -> QCoeff {
        self.words
            .iter()
            .zip(&self.columns)
            .fold(QCoeff::zero(), |acc, (w, c)| &acc + &c.coeff(w))
    }

    /// Applies the matrix to an element of degree `self.degree`.
    pub fn apply(&self, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w, c) in t.iter() {
            let idx = self.words.binary_search(w).expect("word of the projector's degree");
            out.add_scaled(&self.columns[idx], c);
        }
        out
    }

    /// True when every column is fixed by the matrix.
    pub fn is_idempotent(&self) -> bool {
        self.columns.iter().all(|c| &self.apply(c) == c)
    }

    /// Rows of the matrix as `(row, col, coeff)` lines; zero entries omitted.
    pub fn to_triplets(&self) -> String {
        let mut out = String::new();
        for row in &self.words {
            for (col, c) in self.words.iter().zip(&self.columns) {
                let e = c.coeff(row);
                if !e.is_zero() {
                    writeln!(out, "{row} {col} {e}").unwrap();
                }
            }
        }
        out
    }
}

/// `(I_r ⊗ P_k ⊗ I_s)` applied to a degree `r + k + s` element.
pub fn apply_middle(alg: &Algebra, t: &TensorElement, r: usize, k: usize) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    for (w, c) in t.iter() {
        let n = w.len();
        if r + k > n {
            return Err(Error::PositionOutOfRange { position: r + k, len: n });
        }
        let mid = q_symmetrize_word(alg, &w.slice(r, r + k))?;
        let pre = w.slice(0, r);
        let suf = w.slice(r + k, n);
        for (m, d) in mid.0.iter() {
            out.add_term(pre.concat(m).concat(&suf), &(c * d));
        }
    }
    Ok(out)
}

/// Basis words on which one of the two absorption identities fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StarReport {
    pub words_checked: usize,
    /// `(I_r ⊗ P_k ⊗ I_s) P ≠ P` on these words.
    pub left_failures: Vec<Word>,
    /// `P (I_r ⊗ P_k ⊗ I_s) ≠ P` on these words.
    pub right_failures: Vec<Word>,
}

impl StarReport {
    pub fn passed(&self) -> bool {
        self.left_failures.is_empty() && self.right_failures.is_empty()
    }
}

/// Checks `(I_r⊗P_k⊗I_s)P = P` and `P(I_r⊗P_k⊗I_s) = P` on every word of
/// degree `r + k + s`.
pub fn star_identities_check(alg: &Algebra, r: usize, k: usize, s: usize, force: bool) -> Result<StarReport> {
    alg.require_homogeneous()?;
    let n = r + k + s;
    check_budget(alg.n_gens(), n, force)?;
    let mut report = StarReport::default();
    for w in all_words(alg.n_gens(), n) {
        report.words_checked += 1;
        let pw = q_symmetrize_word(alg, &w)?;
        let single = TensorElement::from_word(w.clone());
        if apply_middle(alg, &pw.0, r, k)? != pw.0 {
            report.left_failures.push(w.clone());
        }
        let inner = apply_middle(alg, &single, r, k)?;
        if q_symmetrize(alg, &inner)? != pw.0 {
            report.right_failures.push(w);
        }
    }
    Ok(report)
}
