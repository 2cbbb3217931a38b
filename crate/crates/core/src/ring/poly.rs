//! Dense univariate polynomials in `q` over the rationals.

use super::Rational;

/// Coefficient `i` multiplies `q^i`. No trailing zeros; the zero polynomial
/// is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct Poly(pub(crate) Vec<Rational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Rational::one()])
    }

    pub fn trim(&mut self) {
        while self.0.last().is_some_and(Rational::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    /// Power of the lowest nonzero term.
    pub fn valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&mut self, k: usize) {
        if k > 0 {
            self.0.drain(..k);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.0.get(i), other.0.get(i)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        let mut p = Poly(out);
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        let mut p = Poly(out);
        p.trim();
        p
    }

    /// Euclidean division over Q: `self = quot * div + rem`.
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        let dd = div.degree().expect("division by zero polynomial");
        let lead_inv = div.lead().unwrap().recip().unwrap();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in div.0.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        let mut q = Poly(quot);
        q.trim();
        let mut r = Poly(rem);
        r.trim();
        (q, r)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip().unwrap()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_at_one(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| &acc + c)
    }

    /// Exact division by `(q - 1)`; caller guarantees `p(1) = 0`.
    pub fn div_by_q_minus_one(&self) -> Poly {
        // synthetic division from the top
        let n = self.0.len();
        if n == 0 {
            return Poly::zero();
        }
        let mut quot = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for k in (1..n).rev() {
            carry = &carry + &self.0[k];
            quot[k - 1] = carry.clone();
        }
        debug_assert!((&carry + &self.0[0]).is_zero());
        let mut p = Poly(quot);
        p.trim();
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        let mut p = Poly(cs.iter().map(|&c| Rational::from_int(c)).collect());
        p.trim();
        p
    }

    #[test]
    fn long_division() {
        // (q^2 - 1) = (q + 1)(q - 1)
        let (qt, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(qt, p(&[1, 1]));
        assert!(r.is_zero());
        let (qt, r) = p(&[1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(qt, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[-2, 0, 2]); // 2(q-1)(q+1)
        let b = p(&[3, -3]); // -3(q-1)
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn synthetic_division_by_q_minus_one() {
        assert_eq!(p(&[-1, 0, 1]).div_by_q_minus_one(), p(&[1, 1]));
        assert_eq!(p(&[-1, 1]).div_by_q_minus_one(), p(&[1]));
    }
}
