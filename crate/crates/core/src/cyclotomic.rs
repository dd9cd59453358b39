//! Exact arithmetic in Q(ζ_M) = Q[x]/Φ_M(x).

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{fmt_q, q, Q};

type Poly = Vec<Q>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) - b.get(i).cloned().unwrap_or_else(Q::zero))
        .collect();
    trim(&mut out);
    out
}

/// (quotient, remainder) of a by non-zero b.
fn poly_divrem(a: &[Q], b: &[Q]) -> (Poly, Poly) {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut quo = vec![Q::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[k + i] -= &c * y;
        }
        quo[k] = c;
        trim(&mut r);
    }
    trim(&mut quo);
    (quo, r)
}

/// Φ_m by dividing x^m − 1 by Φ_d for the proper divisors d.
pub fn cyclotomic_polynomial(m: u64) -> Vec<Q> {
    let mut p: Poly = vec![Q::zero(); m as usize + 1];
    p[0] = -Q::one();
    p[m as usize] = Q::one();
    for d in 1..m {
        if m % d == 0 {
            p = poly_divrem(&p, &cyclotomic_polynomial(d)).0;
        }
    }
    p
}

#[derive(Debug)]
pub struct CyclotomicField {
    m: u64,
    phi: Poly,
    /// Coordinates of ζ^e for 0 ≤ e < m.
    powers: Vec<Vec<Q>>,
    int_powers: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    pub m: u64,
    pub coords: Vec<Q>,
}

impl CyclotomicField {
    pub fn new(m: u64) -> Result<Arc<Self>> {
        if m == 0 || m > 10_000 {
            return Err(Error::Unsupported(format!("cyclotomic modulus {m}")));
        }
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![Q::zero(); deg];
        cur[0] = Q::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce by the monic Φ.
            let top = cur[deg - 1].clone();
            let mut next = vec![Q::zero(); deg];
            for i in (1..deg).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..deg {
                    next[i] -= &top * &phi[i];
                }
            }
            cur = next;
        }
        let int_powers = powers
            .iter()
            .map(|p| p.iter().map(|c| crate::linalg::to_i64(c).expect("integral power basis")).collect())
            .collect();
        Ok(Arc::new(CyclotomicField { m, phi, powers, int_powers }))
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber { m: self.m, coords: vec![Q::zero(); self.degree()] }
    }

    pub fn from_q(&self, x: Q) -> CyclotomicNumber {
        let mut z = self.zero();
        if self.degree() > 0 {
            z.coords[0] = x;
        }
        z
    }

    pub fn one(&self) -> CyclotomicNumber {
        self.from_q(Q::one())
    }

    /// ζ_m^e for any integer e.
    pub fn zeta_pow(&self, e: i64) -> CyclotomicNumber {
        let k = e.mod_floor(&(self.m as i64)) as usize;
        CyclotomicNumber { m: self.m, coords: self.powers[k].clone() }
    }

    /// Σ counts[e]·ζ^e.
    pub fn from_histogram(&self, counts: &[i64]) -> CyclotomicNumber {
        let mut z = vec![0i64; self.degree()];
        for (e, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (zi, p) in z.iter_mut().zip(&self.int_powers[e % self.m as usize]) {
                    *zi += c * p;
                }
            }
        }
        CyclotomicNumber { m: self.m, coords: z.into_iter().map(q).collect() }
    }

    fn check(&self, a: &CyclotomicNumber) {
        debug_assert_eq!(a.m, self.m, "mixed cyclotomic moduli");
    }

    pub fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        self.check(b);
        CyclotomicNumber { m: self.m, coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber { m: self.m, coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber { m: self.m, coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &CyclotomicNumber, c: &Q) -> CyclotomicNumber {
        CyclotomicNumber { m: self.m, coords: a.coords.iter().map(|x| x * c).collect() }
    }

    fn reduce(&self, p: Poly) -> CyclotomicNumber {
        let mut r = poly_divrem(&p, &self.phi).1;
        r.resize(self.degree(), Q::zero());
        CyclotomicNumber { m: self.m, coords: r }
    }

    pub fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        self.check(a);
        self.check(b);
        self.reduce(poly_mul(&a.coords, &b.coords))
    }

    /// Inverse by the extended Euclidean algorithm against Φ_m.
    pub fn inv(&self, a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        let mut r0 = self.phi.clone();
        let mut r1 = a.coords.clone();
        trim(&mut r1);
        if r1.is_empty() {
            return Err(Error::Consistency("inverse of zero in a cyclotomic field".into()));
        }
        let mut s0: Poly = vec![];
        let mut s1: Poly = vec![Q::one()];
        while !r1.is_empty() {
            let (quo, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a non-zero constant since Φ_m is irreducible.
        if r0.len() != 1 {
            return Err(Error::Consistency("non-invertible cyclotomic element".into()));
        }
        let c = r0[0].recip();
        Ok(self.reduce(s0.iter().map(|x| x * &c).collect()))
    }

    pub fn pow(&self, a: &CyclotomicNumber, mut e: u64) -> CyclotomicNumber {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl CyclotomicNumber {
    /// The rational value if every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords.first().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", fmt_q(&r)),
            None => {
                let parts: Vec<String> = self.coords.iter().map(fmt_q).collect();
                write!(f, "[{}]_{}", parts.join(", "), self.m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    #[test]
    fn small_cyclotomic_polynomials() {
        let ints = |p: Vec<Q>| p.iter().map(|c| c.to_integer().try_into().unwrap()).collect::<Vec<i64>>();
        assert_eq!(ints(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(31).len(), 31);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).iter().any(|c| *c == q(-2)));
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for m in [2u64, 3, 4, 6, 7, 12, 21, 31] {
            let k = CyclotomicField::new(m).unwrap();
            let s = (0..m as i64).fold(k.zero(), |a, e| k.add(&a, &k.zeta_pow(e)));
            assert!(s.is_zero(), "m = {m}");
            assert_eq!(k.pow(&k.zeta_pow(1), m), k.one());
        }
    }

    #[test]
    fn i_plus_minus_i() {
        let k = CyclotomicField::new(4).unwrap();
        assert_eq!(k.add(&k.zeta_pow(3), &k.zeta_pow(1)).as_rational(), Some(q(0)));
        let x = k.mul(&k.zeta_pow(1), &k.zeta_pow(1));
        assert_eq!(x.as_rational(), Some(q(-1)));
    }

    #[test]
    fn inverses() {
        let k = CyclotomicField::new(12).unwrap();
        for e in 1..12 {
            let a = k.sub(&k.one(), &k.zeta_pow(e));
            let b = k.add(&k.scale(&k.zeta_pow(e), &frac(3, 2)), &k.from_q(q(5)));
            for x in [a, b] {
                assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
            }
        }
        assert!(k.inv(&k.zero()).is_err());
    }

    #[test]
    fn histogram_matches_sum() {
        let k = CyclotomicField::new(21).unwrap();
        let counts: Vec<i64> = (0..21).map(|e| (e * 7 % 5) as i64 - 2).collect();
        let direct = counts.iter().enumerate().fold(k.zero(), |a, (e, &c)| k.add(&a, &k.scale(&k.zeta_pow(e as i64), &q(c))));
        assert_eq!(k.from_histogram(&counts), direct);
    }
}
