//! Finite fields F_{p^e} as F_p[x]/(f) with f the least monic irreducible.

use crate::error::{Error, Result};

/// Coordinates in the power basis 1, x, …, x^{e−1}.
pub type Fe = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    e: u32,
    /// Monic modulus, constant term first, length e + 1.
    modulus: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Remainder of a modulo b over F_p.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let lead = inv_mod(*b.last().unwrap(), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead % p;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * y % p) % p;
        }
        trim(&mut r);
    }
    r
}

/// The monic polynomial of degree `deg` with lower coefficients given by the
/// base-p digits of `idx`.
fn monic_from_index(mut idx: u64, deg: u32, p: u64) -> Vec<u64> {
    let mut f = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        f.push(idx % p);
        idx /= p;
    }
    f.push(1);
    f
}

/// Trial division by every monic polynomial of degree ≤ deg/2.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() as u32 - 1;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            if poly_rem(f, &monic_from_index(idx, d, p), p).is_empty() {
                return false;
            }
        }
    }
    deg >= 1
}

impl FiniteField {
    /// F_{p^e}; the modulus is the least monic irreducible polynomial when
    /// coefficient vectors are compared from x^{e−1} down to x^0.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) || e == 0 {
            return Err(Error::Precondition(format!("F_{{{p}^{e}}} is not a field")));
        }
        if (p as f64).powi(e as i32) > 1e6 {
            return Err(Error::Unsupported(format!("field of order {p}^{e}")));
        }
        let modulus = (0..p.pow(e))
            .map(|i| monic_from_index(i, e, p))
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        Ok(FiniteField { p, e, modulus })
    }

    /// F_q for a prime power q.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = crate::quasipoly::check_prime_power(q)?;
        Self::new(p, e)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.e
    }
    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        vec![0; self.e as usize]
    }
    pub fn one(&self) -> Fe {
        self.constant(1)
    }
    pub fn constant(&self, c: u64) -> Fe {
        let mut z = self.zero();
        z[0] = c % self.p;
        z
    }

    /// Element with base-p digits of `i` as coordinates; a bijection onto
    /// the field for 0 ≤ i < p^e.
    pub fn element(&self, mut i: u64) -> Fe {
        let mut z = self.zero();
        for c in z.iter_mut() {
            *c = i % self.p;
            i /= self.p;
        }
        z
    }

    pub fn index(&self, a: &Fe) -> u64 {
        a.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
    pub fn neg(&self, a: &Fe) -> Fe {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }
    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        self.add(a, &self.neg(b))
    }
    pub fn scale(&self, a: &Fe, c: u64) -> Fe {
        a.iter().map(|x| x * (c % self.p) % self.p).collect()
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let n = self.e as usize;
        let mut prod = vec![0u64; 2 * n];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(n, 0);
        r
    }

    pub fn pow(&self, a: &Fe, mut e: u64) -> Fe {
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

    pub fn is_zero(&self, a: &Fe) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn inv(&self, a: &Fe) -> Result<Fe> {
        if self.is_zero(a) {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn frobenius(&self, a: &Fe) -> Fe {
        self.pow(a, self.p)
    }

    /// a ∈ F_p, as an integer in [0, p).
    pub fn prime_value(&self, a: &Fe) -> Option<u64> {
        a[1..].iter().all(|&c| c == 0).then_some(a[0])
    }

    /// Tr_{F_{p^e}/F_{p^f}}(a) = Σ_{i < e/f} a^{p^{f i}}; f must divide e.
    pub fn trace_to(&self, a: &Fe, f: u32) -> Result<Fe> {
        if f == 0 || self.e % f != 0 {
            return Err(Error::Precondition(format!("F_{{p^{f}}} is not a subfield of F_{{p^{}}}", self.e)));
        }
        let step = self.p.pow(f);
        let mut acc = self.zero();
        let mut cur = a.clone();
        for _ in 0..self.e / f {
            acc = self.add(&acc, &cur);
            cur = self.pow(&cur, step);
        }
        Ok(acc)
    }

    /// Absolute trace to F_p.
    pub fn trace(&self, a: &Fe) -> u64 {
        self.prime_value(&self.trace_to(a, 1).unwrap()).expect("absolute trace lies in the prime field")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles() {
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert!(FiniteField::new(4, 1).is_err());
    }

    #[test]
    fn field_axioms_f16() {
        let f = FiniteField::new(2, 4).unwrap();
        let els: Vec<Fe> = f.elements().collect();
        for a in &els {
            if !f.is_zero(a) {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
            }
            assert_eq!(f.pow(a, 16), *a);
            for b in &els {
                assert_eq!(f.frobenius(&f.mul(a, b)), f.mul(&f.frobenius(a), &f.frobenius(b)));
                assert_eq!(f.frobenius(&f.add(a, b)), f.add(&f.frobenius(a), &f.frobenius(b)));
            }
        }
        let images: std::collections::BTreeSet<u64> = els.iter().map(|a| f.index(&f.frobenius(a))).collect();
        assert_eq!(images.len(), 16);
    }

    #[test]
    fn traces_are_surjective() {
        let f = FiniteField::new(3, 2).unwrap();
        let mut counts = [0; 3];
        for a in f.elements() {
            counts[f.trace(&a) as usize] += 1;
        }
        assert_eq!(counts, [3, 3, 3]);
    }
}
