use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};
use crate::syntax::Cursor;

/// An exact element of Q(q).
///
/// Canonical form: `q^shift * num / den` where `num` and `den` are ordinary
/// polynomials with nonzero constant terms, `den` is monic and the two are
/// coprime. Zero is `shift = 0, num = [], den = [1]`. Laurent polynomials are
/// exactly the values with `den = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QCoeff {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl Default for QCoeff {
    fn default() -> Self {
        Self::zero()
    }
}

impl QCoeff {
    pub fn zero() -> Self {
        QCoeff {
            shift: 0,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(r, 0)
    }

    /// `r * q^e`.
    pub fn monomial(r: Rational, e: i64) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        QCoeff {
            shift: e,
            num: Poly(vec![r]),
            den: Poly::one(),
        }
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Laurent polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn laurent<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, r)| &acc + &Self::monomial(r, e))
    }

    /// `q - q^{-1}`.
    pub fn lambda() -> Self {
        Self::laurent([(1, Rational::one()), (-1, Rational::from_int(-1))])
    }

    /// Builds `q^shift * num / den` from raw parts and brings it to canonical
    /// form.
    pub(crate) fn normalize(shift: i64, mut num: Poly, mut den: Poly) -> Result<Self> {
        num.trim();
        den.trim();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let mut shift = shift;
        let v = num.valuation();
        num.shift_down(v);
        shift += v as i64;
        let w = den.valuation();
        den.shift_down(w);
        shift -= w as i64;
        if den.0.len() > 1 {
            let g = num.gcd(&den);
            if g.0.len() > 1 {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        let lc = den.lead().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(QCoeff { shift, num, den })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(r)` when the value is the constant `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        (self.shift == 0 && self.num.0.len() == 1 && self.den.is_one()).then(|| self.num.0[0].clone())
    }

    /// `Some((r, e))` when the value is the single term `r q^e`.
    pub fn as_monomial(&self) -> Option<(Rational, i64)> {
        (self.num.0.len() == 1 && self.den.is_one()).then(|| (self.num.0[0].clone(), self.shift))
    }

    /// Nonzero `(exponent, coefficient)` pairs of the numerator, exponents
    /// descending.
    pub fn numerator_terms(&self) -> Vec<(i64, Rational)> {
        poly_terms(&self.num, self.shift)
    }

    pub fn denominator_terms(&self) -> Vec<(i64, Rational)> {
        poly_terms(&self.den, 0)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::normalize(-self.shift, self.den.clone(), self.num.clone())
    }

    /// The substitution `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let rev = |p: &Poly| Poly(p.0.iter().rev().cloned().collect());
        let dn = self.num.0.len() as i64 - 1;
        let dd = self.den.0.len() as i64 - 1;
        Self::normalize(-self.shift - dn + dd, rev(&self.num), rev(&self.den)).expect("nonzero denominator")
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() || self.is_zero() {
            return Self::zero();
        }
        QCoeff {
            shift: self.shift,
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact value at `q = 1`.
    pub fn eval_at_one(&self) -> Result<Rational> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return Err(Error::PoleAtOne);
        }
        Ok(&self.num.eval_at_one() / &d)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, q: &Rational) -> Result<Rational> {
        if q.is_one() {
            return self.eval_at_one();
        }
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let pole = || Error::PoleAt(q.to_string());
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(pole());
        }
        let n = self.num.eval(q);
        if q.is_zero() {
            return match self.shift {
                0 => Ok(&n / &d),
                s if s > 0 => Ok(Rational::zero()),
                _ => Err(pole()),
            };
        }
        let qs = if self.shift >= 0 {
            q.pow(self.shift as u32)
        } else {
            q.recip().unwrap().pow((-self.shift) as u32)
        };
        Ok(&(&n * &qs) / &d)
    }

    /// `c / (q - 1)` for a coefficient vanishing at `q = 1`.
    pub fn poisson_scale(&self) -> Result<Self> {
        if !self.eval_at_one()?.is_zero() {
            return Err(Error::NotVanishingAtOne);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Self::normalize(self.shift, self.num.div_by_q_minus_one(), self.den.clone())
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(other.shift);
        let a = shifted(&self.num, (self.shift - m) as usize);
        let b = shifted(&other.num, (other.shift - m) as usize);
        if self.den.is_one() && other.den.is_one() {
            let mut n = a.add(&b);
            if n.is_zero() {
                return Self::zero();
            }
            let v = n.valuation();
            n.shift_down(v);
            return QCoeff {
                shift: m + v as i64,
                num: n,
                den: Poly::one(),
            };
        }
        if self.den == other.den {
            return Self::normalize(m, a.add(&b), self.den.clone()).unwrap();
        }
        let n = a.mul(&other.den).add(&b.mul(&self.den));
        Self::normalize(m, n, self.den.mul(&other.den)).unwrap()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + other.shift;
        if self.den.is_one() && other.den.is_one() {
            // product of polynomials with nonzero constant terms keeps one
            return QCoeff {
                shift,
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        Self::normalize(shift, self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }
}

fn shifted(p: &Poly, k: usize) -> Poly {
    if k == 0 {
        return p.clone();
    }
    let mut v = vec![Rational::zero(); k];
    v.extend(p.0.iter().cloned());
    Poly(v)
}

fn poly_terms(p: &Poly, shift: i64) -> Vec<(i64, Rational)> {
    p.0.iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64 + shift, c.clone()))
        .collect()
}

impl<'a> Add<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn add(self, rhs: &QCoeff) -> QCoeff {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn sub(self, rhs: &QCoeff) -> QCoeff {
        self.add_ref(&-rhs)
    }
}

impl<'a> Mul<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: &QCoeff) -> QCoeff {
        self.mul_ref(rhs)
    }
}

impl Neg for &QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        QCoeff {
            shift: self.shift,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        -&self
    }
}

impl Add for QCoeff {
    type Output = QCoeff;
    fn add(self, rhs: QCoeff) -> QCoeff {
        self.add_ref(&rhs)
    }
}

impl Sub for QCoeff {
    type Output = QCoeff;
    fn sub(self, rhs: QCoeff) -> QCoeff {
        &self - &rhs
    }
}

impl Mul for QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: QCoeff) -> QCoeff {
        self.mul_ref(&rhs)
    }
}

impl AddAssign<&QCoeff> for QCoeff {
    fn add_assign(&mut self, rhs: &QCoeff) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&QCoeff> for QCoeff {
    fn sub_assign(&mut self, rhs: &QCoeff) {
        *self = &*self - rhs;
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, terms: &[(i64, Rational)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0q^0");
    }
    for (k, (e, r)) in terms.iter().enumerate() {
        if k == 0 {
            write!(f, "{r}q^{e}")?;
        } else if r.is_negative() {
            write!(f, "-{}q^{e}", r.abs())?;
        } else {
            write!(f, "+{r}q^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write_sum(f, &self.numerator_terms())
        } else {
            f.write_str("(")?;
            write_sum(f, &self.numerator_terms())?;
            f.write_str(")/(")?;
            write_sum(f, &self.denominator_terms())?;
            f.write_str(")")
        }
    }
}

impl fmt::Debug for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `term := rational 'q^' int`. The rational or the `q^int` part may be
/// omitted on input (`q^2`, `3/2`, `q`), never on output.
fn parse_term(cur: &mut Cursor<'_>, negate: bool) -> Result<QCoeff> {
    let neg = if cur.eat('-') {
        !negate
    } else {
        cur.eat('+');
        negate
    };
    let mut r = match cur.digits() {
        Some(num) => {
            let mut text = num.to_string();
            if cur.peek() == Some('/') && cur.peek2().is_some_and(|c| c.is_ascii_digit()) {
                cur.bump();
                let d = cur.digits().unwrap();
                text.push('/');
                text.push_str(d);
            }
            text.parse::<Rational>()
                .map_err(|_| cur.error("invalid rational"))?
        }
        None => {
            if cur.peek() != Some('q') {
                return Err(cur.error("expected a coefficient term"));
            }
            Rational::one()
        }
    };
    if neg {
        r = -r;
    }
    let mut e = 0;
    if cur.eat('q') {
        e = 1;
        if cur.eat('^') {
            e = cur.signed_int()?;
        }
    }
    Ok(QCoeff::monomial(r, e))
}

fn parse_sum(cur: &mut Cursor<'_>) -> Result<QCoeff> {
    let mut acc = parse_term(cur, false)?;
    while let Some('+' | '-') = cur.peek() {
        // a sign followed by something that cannot start a term ends the
        // coefficient (e.g. the separator before `X1.X2`)
        let next = cur.peek2();
        if !next.is_some_and(|c| c.is_ascii_digit() || c == 'q' || c == '-' || c == '+') {
            break;
        }
        let neg = cur.bump() == Some('-');
        acc += &parse_term(cur, neg)?;
    }
    Ok(acc)
}

impl QCoeff {
    /// Parses one coefficient from the cursor, stopping at the first character
    /// that cannot continue it.
    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<Self> {
        if cur.peek() == Some('(') {
            cur.bump();
            let n = parse_sum(cur)?;
            cur.expect(')')?;
            cur.expect('/')?;
            cur.expect('(')?;
            let col = cur.column();
            let d = parse_sum(cur)?;
            cur.expect(')')?;
            return n
                .checked_div(&d)
                .map_err(|_| Error::parse(col, "zero denominator"));
        }
        parse_sum(cur)
    }
}

impl FromStr for QCoeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let c = Self::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> QCoeff {
        s.parse().unwrap()
    }

    #[test]
    fn invert_q_substitutes() {
        assert_eq!(c("q^2 - 3").invert_q(), c("q^-2 - 3"));
        let x = c("1").checked_div(&c("q + 2")).unwrap();
        assert_eq!(x.invert_q(), c("q").checked_div(&c("1 + 2q")).unwrap());
        assert_eq!(x.invert_q().invert_q(), x);
    }

    #[test]
    fn inverse_pairs_cancel() {
        assert_eq!(&c("1q^1") * &c("1q^-1"), QCoeff::one());
    }

    #[test]
    fn quotient_reduces_to_polynomial() {
        // (q^2 - 1)/(q - 1) = q + 1
        let v = c("(1q^2-1q^0)/(1q^1-1q^0)");
        assert_eq!(v, c("1q^1+1q^0"));
        assert!(v.is_laurent());
    }

    #[test]
    fn lambda_display_descending() {
        assert_eq!(QCoeff::lambda().to_string(), "1q^1-1q^-1");
        assert_eq!((-QCoeff::lambda()).to_string(), "-1q^1+1q^-1");
        assert_eq!(QCoeff::zero().to_string(), "0q^0");
        assert_eq!(c("3/2q^0").to_string(), "3/2q^0");
    }

    #[test]
    fn eval_at_one_cases() {
        assert!(QCoeff::lambda().eval_at_one().unwrap().is_zero());
        let r = c("(1q^1-1q^-1)/(1q^1-1q^0)");
        assert_eq!(r.eval_at_one().unwrap(), Rational::from_int(2));
        assert_eq!(c("3/2q^0").eval_at_one().unwrap(), Rational::new(3, 2));
        let pole = c("(1q^0)/(1q^1-1q^0)");
        assert_eq!(pole.eval_at_one(), Err(Error::PoleAtOne));
    }

    #[test]
    fn poisson_scale_cases() {
        assert_eq!(c("1q^1-1q^0").poisson_scale().unwrap(), QCoeff::one());
        assert_eq!(c("1q^2-1q^0").poisson_scale().unwrap(), c("1q^1+1q^0"));
        // q - q^{-1} = (q-1)(q+1)/q
        assert_eq!(QCoeff::lambda().poisson_scale().unwrap(), c("1q^0+1q^-1"));
        assert_eq!(c("1q^1").poisson_scale(), Err(Error::NotVanishingAtOne));
    }

    #[test]
    fn zero_denominator_errors() {
        assert_eq!(QCoeff::zero().inv(), Err(Error::ZeroDenominator));
        assert!("(1q^0)/(0q^0)".parse::<QCoeff>().is_err());
    }

    #[test]
    fn quotient_display_round_trips() {
        let v = c("(1q^2-1q^0)/(1q^1+1q^-1)");
        // (q^2-1)/(q+q^{-1}) = q(q^2-1)/(q^2+1)
        assert_eq!(v.to_string(), "(1q^3-1q^1)/(1q^2+1q^0)");
        assert_eq!(c(&v.to_string()), v);
    }

    #[test]
    fn lenient_input_forms() {
        assert_eq!(c("q"), QCoeff::q_pow(1));
        assert_eq!(c("2"), QCoeff::from_int(2));
        assert_eq!(c("q^-2 - 1/2"), QCoeff::laurent([(-2, Rational::one()), (0, Rational::new(-1, 2))]));
    }

    #[test]
    fn eval_at_rational_point() {
        let v = c("1q^1-1q^-1");
        assert_eq!(v.eval(&Rational::from_int(2)).unwrap(), Rational::new(3, 2));
        assert!(v.eval(&Rational::zero()).is_err());
    }
}
