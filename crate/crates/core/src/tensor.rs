//! Words over the generator alphabet and finite linear combinations of them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::QCoeff;
use crate::syntax::Cursor;

/// A word `X_{i_1} X_{i_2} ... X_{i_r}` with 1-based letters. The empty word
/// is the unit of the tensor algebra.
///
/// The derived total order is by length, then plain lexicographic on letters.
/// It is only a deterministic tie-break; [`order_compare`] is the reduction
/// order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    /// Panics on a zero letter; letters are generator indices starting at 1.
    pub fn new(letters: &[u8]) -> Self {
        assert!(letters.iter().all(|&l| l > 0), "letters are 1-based");
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(g: u8) -> Self {
        Word::new(&[g])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn letters_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(SmallVec::from_slice(&self.0[start..end]))
    }

    /// Letter counts `(n_1, ..., n_N)`.
    pub fn content(&self, n_gens: usize) -> Vec<u32> {
        let mut c = vec![0; n_gens];
        for &l in &self.0 {
            c[l as usize - 1] += 1;
        }
        c
    }

    /// Number of pairs of positions `a < b` with `letter[a] > letter[b]`.
    pub fn misordering_index(&self) -> usize {
        let w = &self.0;
        let mut n = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }

    pub fn sorted(&self) -> Word {
        let mut v = self.0.clone();
        v.sort_unstable();
        Word(v)
    }

    /// The sorted word `X_1^{e_1} ... X_N^{e_N}`.
    pub fn from_exponents(exps: &[u32]) -> Word {
        let mut v = SmallVec::new();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                v.push(i as u8 + 1);
            }
        }
        Word(v)
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>, dual: bool) -> Result<Word> {
        if cur.peek() == Some('1') {
            cur.bump();
            return Ok(Word::empty());
        }
        let mut v = SmallVec::new();
        loop {
            cur.expect('X')?;
            let col = cur.column();
            let i = cur.usize()?;
            if i == 0 || i > u8::MAX as usize {
                return Err(Error::parse(col, "generator index out of range"));
            }
            v.push(i as u8);
            if dual {
                cur.expect('*')?;
            }
            if !cur.eat('.') {
                break;
            }
        }
        Ok(Word(v))
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, dual: bool) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "X{l}")?;
            if dual {
                f.write_str("*")?;
            }
        }
        Ok(())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut cur = Cursor::new(s);
        let w = Word::parse_from(&mut cur, false)?;
        cur.expect_end()?;
        Ok(w)
    }
}

/// Outcome of comparing two words of equal length in the reduction order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderRelation {
    Less,
    Equal,
    Greater,
    /// Same letter counts and same misordering index, different words.
    Incomparable,
}

/// Compares the letter-count vectors, the count of the largest generator
/// being most significant, so that `X_N^r` is the biggest word of degree `r`.
pub fn content_compare(a: &Word, b: &Word) -> Ordering {
    let mut ca = [0u16; 256];
    let mut cb = [0u16; 256];
    for &l in a.letters() {
        ca[l as usize] += 1;
    }
    for &l in b.letters() {
        cb[l as usize] += 1;
    }
    let top = a.max_letter().max(b.max_letter()) as usize;
    for g in (1..=top).rev() {
        match ca[g].cmp(&cb[g]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// The reduction order: letter counts first, then misordering index.
pub fn order_compare(a: &Word, b: &Word) -> Result<OrderRelation> {
    if a.len() != b.len() {
        return Err(Error::DegreeMismatch(a.len(), b.len()));
    }
    if a == b {
        return Ok(OrderRelation::Equal);
    }
    let o = content_compare(a, b).then_with(|| a.misordering_index().cmp(&b.misordering_index()));
    Ok(match o {
        Ordering::Less => OrderRelation::Less,
        Ordering::Greater => OrderRelation::Greater,
        Ordering::Equal => OrderRelation::Incomparable,
    })
}

/// A finite linear combination of words with [`QCoeff`] coefficients. No zero
/// coefficients are stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: FxHashMap<Word, QCoeff>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(QCoeff::one(), w)
    }

    pub fn monomial(c: QCoeff, w: Word) -> Self {
        let mut t = Self::zero();
        t.add_term(w, &c);
        t
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

    pub fn coeff(&self, w: &Word) -> QCoeff {
        self.terms.get(w).cloned().unwrap_or_else(QCoeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &QCoeff)> {
        self.terms.iter()
    }

    /// Terms in canonical order (degree, then plain lexicographic).
    pub fn sorted_terms(&self) -> Vec<(&Word, &QCoeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, w: Word, c: &QCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_scaled(&mut self, other: &TensorElement, c: &QCoeff) {
        if c.is_zero() {
            return;
        }
        if c.is_one() {
            for (w, d) in &other.terms {
                self.add_term(w.clone(), d);
            }
        } else {
            for (w, d) in &other.terms {
                self.add_term(w.clone(), &(d * c));
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, &QCoeff::one());
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, &-QCoeff::one());
        out
    }

    pub fn scale(&self, c: &QCoeff) -> TensorElement {
        let mut out = TensorElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Bilinear extension of word concatenation.
    pub fn concat(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), &(ca * cb));
            }
        }
        out
    }

    pub fn graded_component(&self, n: usize) -> TensorElement {
        TensorElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sorted list of degrees present.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Word::len).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(n)` if every word has length `n` (zero counts as homogeneous of
    /// any degree and reports `None`).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn max_letter(&self) -> u8 {
        self.terms.keys().map(Word::max_letter).max().unwrap_or(0)
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, dual: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * ")?;
            w.fmt_with(f, dual)?;
        }
        Ok(())
    }

    /// `term (+ term)*` with `term := [coeff '*'] word | coeff`; a bare
    /// coefficient multiplies the empty word.
    pub(crate) fn parse_with(s: &str, dual: bool) -> Result<TensorElement> {
        let mut cur = Cursor::new(s);
        let mut out = TensorElement::zero();
        if cur.peek() == Some('0') && {
            let mut probe = Cursor::new(s);
            probe.bump();
            probe.at_end()
        } {
            return Ok(out);
        }
        loop {
            if cur.peek() == Some('X') {
                out.add_term(Word::parse_from(&mut cur, dual)?, &QCoeff::one());
            } else {
                let c = QCoeff::parse_from(&mut cur)?;
                let w = if cur.eat('*') {
                    Word::parse_from(&mut cur, dual)?
                } else {
                    Word::empty()
                };
                out.add_term(w, &c);
            }
            if cur.at_end() {
                break;
            }
            cur.expect('+')?;
        }
        Ok(out)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl FromStr for TensorElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<TensorElement> {
        Self::parse_with(s, false)
    }
}

impl From<Word> for TensorElement {
    fn from(w: Word) -> Self {
        TensorElement::from_word(w)
    }
}

impl FromIterator<(Word, QCoeff)> for TensorElement {
    fn from_iter<I: IntoIterator<Item = (Word, QCoeff)>>(iter: I) -> Self {
        let mut t = TensorElement::zero();
        for (w, c) in iter {
            t.add_term(w, &c);
        }
        t
    }
}

/// All words of length `n` over `n_gens` letters, in plain lexicographic
/// order.
pub fn all_words(n_gens: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(n_gens.pow(n as u32));
    let mut cur = vec![1u8; n];
    loop {
        out.push(Word::new(&cur));
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if (cur[k] as usize) < n_gens {
                cur[k] += 1;
                for l in cur.iter_mut().skip(k + 1) {
                    *l = 1;
                }
                break;
            }
        }
    }
}

/// All words with the given letter counts, in plain lexicographic order.
pub fn words_with_content(content: &[u32]) -> Vec<Word> {
    fn rec(rem: &mut [u32], left: usize, cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word::new(cur));
            return;
        }
        for g in 0..rem.len() {
            if rem[g] > 0 {
                rem[g] -= 1;
                cur.push(g as u8 + 1);
                rec(rem, left - 1, cur, out);
                cur.pop();
                rem[g] += 1;
            }
        }
    }
    let mut rem = content.to_vec();
    let total = content.iter().sum::<u32>() as usize;
    let mut out = Vec::new();
    rec(&mut rem, total, &mut Vec::with_capacity(total), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn content_order_prefers_large_letters() {
        assert_eq!(order_compare(&w("X1.X1"), &w("X1.X2")).unwrap(), OrderRelation::Less);
        assert_eq!(order_compare(&w("X4.X1"), &w("X2.X3")).unwrap(), OrderRelation::Greater);
        assert_eq!(order_compare(&w("X2.X1"), &w("X1.X2")).unwrap(), OrderRelation::Greater);
        assert_eq!(order_compare(&w("X3.X3"), &w("X3.X3")).unwrap(), OrderRelation::Equal);
        assert_eq!(
            order_compare(&w("X2.X1.X1"), &w("X1.X2.X1")).unwrap(),
            OrderRelation::Greater
        );
        assert_eq!(
            order_compare(&w("X2.X1.X3"), &w("X1.X3.X2")).unwrap(),
            OrderRelation::Incomparable
        );
        assert_eq!(
            order_compare(&w("X1"), &w("X1.X2")),
            Err(Error::DegreeMismatch(1, 2))
        );
    }

    #[test]
    fn concat_is_bilinear() {
        let a: TensorElement = "X1 + X2".parse().unwrap();
        let b: TensorElement = "X1".parse().unwrap();
        assert_eq!(a.concat(&b).to_string(), "1q^0 * X1.X1 + 1q^0 * X2.X1");
        let c: TensorElement = "1q^1 * X1".parse().unwrap();
        let d: TensorElement = "1q^-1 * X1".parse().unwrap();
        assert_eq!(c.concat(&d).to_string(), "1q^0 * X1.X1");
    }

    #[test]
    fn display_round_trip() {
        let s = "1q^0 * X1.X4 + -1q^1+1q^-1 * X2.X3";
        let t: TensorElement = s.parse().unwrap();
        assert_eq!(t.to_string(), s);
        assert_eq!(t.len(), 2);
        let e: TensorElement = "3/2q^0 * 1 + X1".parse().unwrap();
        assert_eq!(e.to_string(), "3/2q^0 * 1 + 1q^0 * X1");
        assert!("0".parse::<TensorElement>().unwrap().is_zero());
    }

    #[test]
    fn parse_errors_carry_columns() {
        match "X1.Y2".parse::<TensorElement>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(all_words(3, 2).len(), 9);
        assert_eq!(all_words(2, 0), vec![Word::empty()]);
        assert_eq!(words_with_content(&[2, 1]).len(), 3);
        assert_eq!(w("X3.X1.X2").misordering_index(), 2);
        assert_eq!(Word::from_exponents(&[1, 0, 2]), w("X1.X3.X3"));
    }
}
