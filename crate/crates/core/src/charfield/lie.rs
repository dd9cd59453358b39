//! The trace-zero hyperplane 𝔱(F_q) ⊂ F_{q^l} and its additive characters
//! χ_x(s) = ψ(Tr(x s)), ψ(a) = ζ_p^a on the prime field.

use std::collections::BTreeSet;

use super::finite_field::{Fe, FiniteField};
use super::torus::build_torus;
use crate::cyclotomic::CyclotomicField;
use crate::error::{Error, Result};
use crate::linalg::{frac, Q};

#[derive(Clone, Debug)]
pub struct LieTorusModel {
    pub q: u64,
    pub l: u64,
    pub m: u64,
    big: FiniteField,
    /// Elements of 𝔱(F_q), zero first.
    elements: Vec<Fe>,
    /// elements[i]^{q^j} as an index, for j < l.
    frob: Vec<Vec<usize>>,
}

impl LieTorusModel {
    pub fn new(q: u64, l: u64) -> Result<Self> {
        let t = build_torus(q, l)?;
        let (p, f) = crate::quasipoly::check_prime_power(q)?;
        let big = FiniteField::new(p, f * l as u32)?;
        let elements: Vec<Fe> = big.elements().filter(|s| big.is_zero(&big.trace_to(s, f).unwrap())).collect();
        debug_assert_eq!(elements.len() as u64, q.pow(l as u32 - 1));
        let pos = |s: &Fe| elements.iter().position(|e| e == s).expect("𝔱 is Frobenius stable");
        let frob = elements
            .iter()
            .map(|s| (0..l).map(|j| pos(&big.pow(s, q.pow(j as u32)))).collect())
            .collect();
        Ok(LieTorusModel { q, l, m: t.m, big, elements, frob })
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }
    pub fn characteristic(&self) -> u64 {
        self.big.characteristic()
    }
    pub fn element(&self, i: usize) -> &Fe {
        &self.elements[i]
    }

    /// Values of χ_x^{q^j}(s) = χ_x(s^{q^j}) as exponents of ζ_p, indexed by s.
    pub fn twisted(&self, x: usize, j: u64) -> Vec<u64> {
        let xe = &self.elements[x];
        (0..self.size()).map(|s| self.big.trace(&self.big.mul(xe, &self.elements[self.frob[s][j as usize]]))).collect()
    }

    /// Frobenius orbit of χ_x, as distinct value tables.
    pub fn orbit(&self, x: usize) -> BTreeSet<Vec<u64>> {
        (0..self.l).map(|j| self.twisted(x, j)).collect()
    }

    pub fn is_regular(&self, x: usize) -> bool {
        self.orbit(x).len() as u64 == self.l
    }

    /// Every χ_x^{q^i}χ_y^{q^j} is non-trivial on 𝔱.
    pub fn products_nontrivial(&self, x: usize, y: usize) -> bool {
        let p = self.characteristic();
        let tx: Vec<Vec<u64>> = (0..self.l).map(|i| self.twisted(x, i)).collect();
        let ty: Vec<Vec<u64>> = (0..self.l).map(|j| self.twisted(y, j)).collect();
        tx.iter().all(|a| ty.iter().all(|b| a.iter().zip(b).any(|(u, v)| (u + v) % p != 0)))
    }

    pub fn admissible(&self, x: usize, y: usize) -> bool {
        self.is_regular(x) && self.is_regular(y) && self.products_nontrivial(x, y)
    }

    /// All admissible pairs (x, y) of indices.
    pub fn admissible_pairs(&self) -> Vec<(usize, usize)> {
        let reg: Vec<usize> = (0..self.size()).filter(|&x| self.is_regular(x)).collect();
        let mut out = vec![];
        for &x in &reg {
            for &y in &reg {
                if self.products_nontrivial(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Σ_{s ≠ 0} χ(s) for the character χ_x.
    pub fn nonzero_sum(&self, x: usize) -> Result<i64> {
        let p = self.characteristic();
        let mut hist = vec![0i64; p as usize];
        for v in self.twisted(x, 0).iter().skip(1) {
            hist[*v as usize] += 1;
        }
        integral(&CyclotomicField::new(p)?.from_histogram(&hist))
    }

    /// Σ_{s ≠ 0} (Σ_i χ_x^{q^i}(s))(Σ_j χ_y^{q^j}(s)) in Q(ζ_p).
    pub fn lie_char_sum(&self, x: usize, y: usize) -> Result<i64> {
        if x >= self.size() || y >= self.size() {
            return Err(Error::Precondition("element index out of range".into()));
        }
        if !self.is_regular(x) || !self.is_regular(y) {
            return Err(Error::Precondition("characters must have Frobenius orbits of size l".into()));
        }
        if !self.products_nontrivial(x, y) {
            return Err(Error::Precondition("some χ_λ^{q^i}χ_μ^{q^j} is trivial".into()));
        }
        let p = self.characteristic();
        let tx: Vec<Vec<u64>> = (0..self.l).map(|i| self.twisted(x, i)).collect();
        let ty: Vec<Vec<u64>> = (0..self.l).map(|j| self.twisted(y, j)).collect();
        let mut hist = vec![0i64; p as usize];
        for s in 1..self.size() {
            for a in &tx {
                for b in &ty {
                    hist[((a[s] + b[s]) % p) as usize] += 1;
                }
            }
        }
        integral(&CyclotomicField::new(p)?.from_histogram(&hist))
    }

    /// J_nilp = −(1/l)(1/m)·Σ.
    pub fn j_nilp(&self, sum: i64) -> Q {
        -frac(sum, (self.l * self.m) as i64)
    }
}

fn integral(c: &crate::cyclotomic::CyclotomicNumber) -> Result<i64> {
    c.as_rational()
        .and_then(|r| crate::linalg::to_i64(&r))
        .ok_or_else(|| Error::Consistency(format!("additive sum {c} is not an integer")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperplane_sizes() {
        for (q, l) in [(3, 2), (2, 3), (5, 2), (4, 3)] {
            let lm = LieTorusModel::new(q, l).unwrap();
            assert_eq!(lm.size() as u64, q.pow(l as u32 - 1));
            for x in 1..lm.size() {
                assert!(lm.is_regular(x));
                assert_eq!(lm.nonzero_sum(x).unwrap(), -1);
            }
        }
    }

    #[test]
    fn five_two_pair() {
        let lm = LieTorusModel::new(5, 2).unwrap();
        let (x, y) = lm.admissible_pairs()[0];
        let s = lm.lie_char_sum(x, y).unwrap();
        assert_eq!(s, -4);
        assert_eq!(lm.j_nilp(s), frac(1, 3));
        assert!(lm.lie_char_sum(0, y).is_err());
    }

    #[test]
    fn small_cases_have_a_single_regular_orbit() {
        // |𝔱 − 0| = l, one Frobenius orbit: no admissible pair exists.
        for (q, l) in [(3, 2), (2, 3)] {
            assert!(LieTorusModel::new(q, l).unwrap().admissible_pairs().is_empty());
        }
    }
}
