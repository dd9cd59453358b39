//! Truncated Laurent series in w = u − 1 over a cyclotomic field.

use crate::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::linalg::{q, Q};

/// Σ_{i} coeffs[i]·w^{val+i}, exact for exponents ≤ `upto`.
#[derive(Clone, Debug)]
pub struct Laurent {
    pub val: i64,
    pub upto: i64,
    pub coeffs: Vec<CyclotomicNumber>,
}

/// Coefficients of (1 + w)^e up to w^n, for any integer e.
pub fn binomial_series(e: i64, n: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = q(1);
    for j in 0..=n as i64 {
        out.push(c.clone());
        c = c * q(e - j) / q(j + 1);
    }
    out
}

impl Laurent {
    pub fn coefficient(&self, k: &CyclotomicField, e: i64) -> CyclotomicNumber {
        let i = e - self.val;
        if i < 0 || i as usize >= self.coeffs.len() {
            return k.zero();
        }
        self.coeffs[i as usize].clone()
    }

    /// Strips vanishing leading terms.
    fn normalize(mut self) -> Self {
        while !self.coeffs.is_empty() && self.coeffs[0].is_zero() {
            self.coeffs.remove(0);
            self.val += 1;
        }
        self
    }

    pub fn mul(&self, k: &CyclotomicField, o: &Laurent) -> Laurent {
        let val = self.val + o.val;
        let upto = (self.upto + o.val).min(o.upto + self.val);
        let len = (upto - val + 1).max(0) as usize;
        let mut coeffs = vec![k.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < len && !b.is_zero() {
                    coeffs[i + j] = k.add(&coeffs[i + j], &k.mul(a, b));
                }
            }
        }
        Laurent { val, upto, coeffs }
    }

    pub fn inv(&self, k: &CyclotomicField) -> Result<Laurent> {
        let s = self.clone().normalize();
        if s.coeffs.is_empty() {
            return Err(Error::Consistency("inverting a series with no known non-zero term".into()));
        }
        let val = -s.val;
        let upto = s.upto - 2 * s.val;
        let len = (upto - val + 1).max(0) as usize;
        let c0inv = k.inv(&s.coeffs[0])?;
        let mut out: Vec<CyclotomicNumber> = Vec::with_capacity(len);
        for n in 0..len {
            // Σ_{j≤n} s_j out_{n−j} = [n = 0].
            let mut acc = if n == 0 { k.one() } else { k.zero() };
            for j in 1..=n.min(s.coeffs.len() - 1) {
                acc = k.sub(&acc, &k.mul(&s.coeffs[j], &out[n - j]));
            }
            out.push(k.mul(&acc, &c0inv));
        }
        Ok(Laurent { val, upto, coeffs: out })
    }
}

/// ζ^{a}(1 + w)^{e}, exact up to w^{upto}.
pub fn monomial(k: &CyclotomicField, a: i64, e: i64, upto: i64) -> Laurent {
    let z = k.zeta_pow(a);
    let coeffs = binomial_series(e, upto.max(0) as usize).iter().map(|c| k.scale(&z, c)).collect();
    Laurent { val: 0, upto: upto.max(0), coeffs }
}

/// 1 − ζ^{a}(1 + w)^{e}, exact up to w^{upto}.
pub fn one_minus(k: &CyclotomicField, a: i64, e: i64, upto: i64) -> Laurent {
    let mut m = monomial(k, a, e, upto);
    for c in m.coeffs.iter_mut() {
        *c = k.neg(c);
    }
    m.coeffs[0] = k.add(&m.coeffs[0], &k.one());
    m.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn binomial_negative_exponent() {
        // (1+w)^{-1} = 1 − w + w² − ...
        assert_eq!(binomial_series(-1, 3), vec![q(1), q(-1), q(1), q(-1)]);
        assert_eq!(binomial_series(3, 4), vec![q(1), q(3), q(3), q(1), q(0)]);
    }

    #[test]
    fn geometric_pole() {
        // u/(1 − u) with u = 1 + w is −1/w − 1 + O(w)... exactly −1/w − 1.
        let k = CyclotomicField::new(1).unwrap();
        let num = monomial(&k, 0, 1, 3);
        let den = one_minus(&k, 0, 1, 4);
        assert_eq!(den.val, 1);
        let f = num.mul(&k, &den.inv(&k).unwrap());
        assert_eq!(f.coefficient(&k, -1).as_rational(), Some(q(-1)));
        assert_eq!(f.coefficient(&k, 0).as_rational(), Some(q(-1)));
        assert_eq!(f.coefficient(&k, 1).as_rational(), Some(q(0)));
        assert!(f.upto >= 1);
    }

    #[test]
    fn regular_factor_at_minus_one() {
        // 1/(1 + u) at u = 1 is 1/2, derivative −1/4.
        let k = CyclotomicField::new(2).unwrap();
        let f = one_minus(&k, 1, 1, 3).inv(&k).unwrap();
        assert_eq!(f.coefficient(&k, 0).as_rational(), Some(frac(1, 2)));
        assert_eq!(f.coefficient(&k, 1).as_rational(), Some(frac(-1, 4)));
    }
}
