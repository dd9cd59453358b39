//! Norm-one tori of SL_l over F_q and the numbers of the elliptic multiplicity
//! computation.
//!
//! T(F_q) is the kernel of the norm F_{q^l}^× → F_q^×, the unique subgroup of
//! order m = (q^l − 1)/(q − 1) of a cyclic group, modelled as Z/m with
//! Frobenius acting by multiplication by q.

use std::sync::Arc;

use num_integer::Integer;

use super::finite_field::is_prime;
use crate::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::linalg::{frac, q, Q};

#[derive(Clone, Debug)]
pub struct NormOneTorus {
    pub q: u64,
    pub l: u64,
    pub p: u64,
    pub m: u64,
    /// |Z_{SL_l}(F_q)| = gcd(l, q − 1).
    pub z: u64,
    field: Arc<CyclotomicField>,
}

/// θ(s) = ζ_m^{k s}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusCharacter {
    pub k: u64,
}

pub fn build_torus(q_: u64, l: u64) -> Result<NormOneTorus> {
    let (p, _) = crate::quasipoly::check_prime_power(q_)?;
    if !is_prime(l) {
        return Err(Error::InvalidTorus(format!("l = {l} is not prime")));
    }
    if l == p {
        return Err(Error::InvalidTorus(format!("l = {l} equals the characteristic")));
    }
    let big = q_.checked_pow(l as u32).ok_or_else(|| Error::Unsupported("q^l overflows".into()))?;
    let m = (big - 1) / (q_ - 1);
    let z = l.gcd(&(q_ - 1));
    debug_assert_eq!(m * (q_ - 1), big - 1);
    let field = CyclotomicField::new(m)?;
    Ok(NormOneTorus { q: q_, l, p, m, z, field })
}

impl NormOneTorus {
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    /// q^i mod m.
    pub fn frob_pow(&self, i: u64) -> u64 {
        (0..i).fold(1 % self.m, |acc, _| acc * (self.q % self.m) % self.m)
    }

    /// The Frobenius orbit {q^i k}.
    pub fn orbit(&self, theta: TorusCharacter) -> Vec<u64> {
        let mut o: Vec<u64> = (0..self.l).map(|i| theta.k * self.frob_pow(i) % self.m).collect();
        o.sort();
        o.dedup();
        o
    }

    /// Elements s of Z_G(F_q): multiples of m/z.
    pub fn center(&self) -> Vec<u64> {
        (0..self.z).map(|j| j * (self.m / self.z)).collect()
    }

    pub fn characters(&self) -> impl Iterator<Item = TorusCharacter> {
        (0..self.m).map(|k| TorusCharacter { k })
    }

    fn check(&self, t: TorusCharacter) -> Result<()> {
        if t.k >= self.m {
            return Err(Error::Precondition(format!("character exponent {} is not reduced mod {}", t.k, self.m)));
        }
        Ok(())
    }
}

/// θ^{q^i} ≠ θ for 0 < i < l.
pub fn general_position(theta: TorusCharacter, t: &NormOneTorus) -> bool {
    (1..t.l).all(|i| theta.k * (t.frob_pow(i) + t.m - 1) % t.m != 0)
}

/// θ_λ^{-1} lies in the Frobenius orbit of θ_μ.
pub fn contragredient_test(a: TorusCharacter, b: TorusCharacter, t: &NormOneTorus) -> Result<bool> {
    t.check(a)?;
    t.check(b)?;
    if !general_position(a, t) || !general_position(b, t) {
        return Err(Error::Precondition("characters are not in general position".into()));
    }
    let neg = (t.m - a.k) % t.m;
    Ok(t.orbit(b).contains(&neg))
}

/// (θ_λθ_μ)|_Z = 1, by the divisibility criterion z | k_λ + k_μ.
pub fn central_character_ok(a: TorusCharacter, b: TorusCharacter, t: &NormOneTorus) -> bool {
    (a.k + b.k) % t.z == 0
}

/// The same condition by evaluating θ_λθ_μ on every central element.
pub fn central_character_direct(a: TorusCharacter, b: TorusCharacter, t: &NormOneTorus) -> bool {
    let k = t.field();
    t.center().iter().all(|&s| k.zeta_pow(((a.k + b.k) * s) as i64) == k.one())
}

/// Σ_{i=1}^{l} θ(s)^{q^i} ∈ Q(ζ_m).
pub fn dl_torus_value(theta: TorusCharacter, s: u64, t: &NormOneTorus) -> CyclotomicNumber {
    let k = t.field();
    (1..=t.l).fold(k.zero(), |acc, i| k.add(&acc, &k.zeta_pow((t.frob_pow(i) * theta.k % t.m * (s % t.m)) as i64)))
}

fn integral(c: &CyclotomicNumber) -> Result<i64> {
    let r = c.as_rational().ok_or_else(|| Error::Consistency(format!("character sum {c} is not rational")))?;
    crate::linalg::to_i64(&r).ok_or_else(|| Error::Consistency(format!("character sum {c} is not an integer")))
}

fn check_pair(a: TorusCharacter, b: TorusCharacter, t: &NormOneTorus) -> Result<()> {
    t.check(a)?;
    t.check(b)?;
    if !general_position(a, t) || !general_position(b, t) {
        return Err(Error::Precondition("characters are not in general position".into()));
    }
    Ok(())
}

/// Σ_{s ∈ T − Z} DL_λ(s)·DL_μ(s), multiplying in Q(ζ_m) term by term.
pub fn char_sum_regular_direct(a: TorusCharacter, b: TorusCharacter, t: &NormOneTorus) -> Result<i64> {
    check_pair(a, b, t)?;
    let k = t.field();
    let center = t.center();
    let mut acc = k.zero();
    for s in (0..t.m).filter(|s| !center.contains(s)) {
        acc = k.add(&acc, &k.mul(&dl_torus_value(a, s, t), &dl_torus_value(b, s, t)));
    }
    integral(&acc)
}

/// The same sum, expanded into a histogram of exponents of ζ_m.
pub fn char_sum_regular(a: TorusCharacter, b: TorusCharacter, t: &NormOneTorus) -> Result<i64> {
    check_pair(a, b, t)?;
    let m = t.m;
    let center = t.center();
    let fa: Vec<u64> = (1..=t.l).map(|i| t.frob_pow(i) * a.k % m).collect();
    let fb: Vec<u64> = (1..=t.l).map(|i| t.frob_pow(i) * b.k % m).collect();
    let mut hist = vec![0i64; m as usize];
    for s in (0..m).filter(|s| !center.contains(s)) {
        for x in &fa {
            for y in &fb {
                hist[((x + y) * s % m) as usize] += 1;
            }
        }
    }
    integral(&t.field().from_histogram(&hist))
}

/// −z·l² (not contragredient) or −z(l² − l) + (m − z)·l (contragredient).
pub fn closed_form_char_sum(contragredient: bool, t: &NormOneTorus) -> i64 {
    let (l, m, z) = (t.l as i64, t.m as i64, t.z as i64);
    if contragredient {
        -z * (l * l - l) + (m - z) * l
    } else {
        -z * l * l
    }
}

/// l(q − 1)/(q^l − 1).
pub fn j_nilp_closed_form(t: &NormOneTorus) -> Q {
    frac(t.l as i64, t.m as i64)
}

/// J = (1/l)(1/m)·Σ_{T−Z} + z·J_nilp, asserted to be 0 or 1. A pair
/// failing the central condition gives 0 without further computation.
pub fn assemble_j(a: TorusCharacter, b: TorusCharacter, t: &NormOneTorus) -> Result<Q> {
    check_pair(a, b, t)?;
    if !central_character_ok(a, b, t) {
        return Ok(q(0));
    }
    let s = char_sum_regular(a, b, t)?;
    let j = frac(s, (t.l * t.m) as i64) + q(t.z as i64) * j_nilp_closed_form(t);
    if j != q(0) && j != q(1) {
        return Err(Error::Consistency(format!("J = {j} is neither 0 nor 1")));
    }
    Ok(j)
}

/// One row of the elliptic multiplicity table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlTraceRow {
    pub k_lambda: u64,
    pub k_mu: u64,
    pub general_position: bool,
    pub central_ok: bool,
    pub contragredient: Option<bool>,
    pub char_sum: Option<i64>,
    pub j: Option<Q>,
}

pub fn sl_trace_row(a: TorusCharacter, b: TorusCharacter, t: &NormOneTorus) -> Result<SlTraceRow> {
    t.check(a)?;
    t.check(b)?;
    let gp = general_position(a, t) && general_position(b, t);
    let central_ok = central_character_ok(a, b, t);
    let (contragredient, char_sum, j) = if gp {
        (Some(contragredient_test(a, b, t)?), Some(char_sum_regular(a, b, t)?), Some(assemble_j(a, b, t)?))
    } else {
        (None, None, None)
    };
    Ok(SlTraceRow { k_lambda: a.k, k_mu: b.k, general_position: gp, central_ok, contragredient, char_sum, j })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(k: u64) -> TorusCharacter {
        TorusCharacter { k }
    }

    #[test]
    fn torus_orders() {
        for (qq, l, m, z) in [(3, 2, 4, 2), (2, 3, 7, 1), (4, 3, 21, 3), (5, 2, 6, 2), (2, 5, 31, 1)] {
            let t = build_torus(qq, l).unwrap();
            assert_eq!((t.m, t.z), (m, z));
        }
        assert!(build_torus(3, 3).is_err());
        assert!(build_torus(6, 2).is_err());
        assert!(build_torus(3, 4).is_err());
    }

    #[test]
    fn general_position_examples() {
        let t = build_torus(3, 2).unwrap();
        assert!(general_position(th(1), &t));
        assert!(!general_position(th(2), &t));
        assert!(!general_position(th(0), &t));
    }

    #[test]
    fn contragredient_examples() {
        let t = build_torus(2, 3).unwrap();
        assert!(contragredient_test(th(1), th(3), &t).unwrap());
        assert!(!contragredient_test(th(1), th(1), &t).unwrap());
        assert!(contragredient_test(th(1), th(6), &t).unwrap());
        assert!(contragredient_test(th(0), th(1), &t).is_err());
    }

    #[test]
    fn central_examples() {
        let t = build_torus(3, 2).unwrap();
        assert!(central_character_ok(th(1), th(3), &t));
        assert!(central_character_ok(th(1), th(1), &t));
        let t5 = build_torus(5, 2).unwrap();
        assert!(!central_character_ok(th(1), th(2), &t5));
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(central_character_ok(th(a), th(b), &t5), central_character_direct(th(a), th(b), &t5));
            }
        }
    }

    #[test]
    fn dl_values() {
        let t = build_torus(3, 2).unwrap();
        assert!(dl_torus_value(th(1), 1, &t).is_zero());
        assert_eq!(dl_torus_value(th(0), 3, &t), t.field().from_q(q(2)));
        assert_eq!(dl_torus_value(th(3), 0, &t), t.field().from_q(q(2)));
    }

    #[test]
    fn char_sums_and_j() {
        let t32 = build_torus(3, 2).unwrap();
        let t23 = build_torus(2, 3).unwrap();
        assert_eq!(char_sum_regular(th(1), th(3), &t32).unwrap(), 0);
        assert_eq!(char_sum_regular(th(1), th(1), &t23).unwrap(), -9);
        assert_eq!(char_sum_regular(th(1), th(3), &t23).unwrap(), 12);
        assert_eq!(char_sum_regular_direct(th(1), th(3), &t23).unwrap(), 12);
        assert_eq!(assemble_j(th(1), th(3), &t23).unwrap(), q(1));
        assert_eq!(assemble_j(th(1), th(1), &t23).unwrap(), q(0));
        assert_eq!(assemble_j(th(1), th(3), &t32).unwrap(), q(1));
    }
}
