//! Quasi-polynomials on Z^n and their exact reconstruction from samples.
//!
//! The X-lattice is the coweight lattice: x ∈ Z^n stands for Σ x_i ϖ_i^∨.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{adapted_forms, brute_sum, LatticeSpec};
use crate::cyclotomic::{CyclotomicField, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};
use crate::rootdata::AVector;
use crate::truncation::TruncationContext;

/// Σ_ν p_ν(x)·ζ_P^{ν·x}, frequencies ν/P taken modulo Z^n.
#[derive(Clone, Debug)]
pub struct QuasiPolynomial {
    pub period: u64,
    pub vars: usize,
    pub degree: usize,
    /// Exponent vectors shared by every p_ν.
    pub monomials: Vec<Vec<u32>>,
    /// (ν numerators in [0, P), coefficients of p_ν), non-zero terms only.
    pub terms: Vec<(Vec<i64>, Vec<CyclotomicNumber>)>,
    field: Arc<CyclotomicField>,
}

fn monomials(vars: usize, degree: usize) -> Vec<Vec<u32>> {
    let mut out = vec![];
    let mut cur = vec![0u32; vars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, degree as u32, &mut cur, &mut out);
    out.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
    out
}

fn mono_eval(m: &[u32], x: &[Q]) -> Q {
    m.iter().zip(x).fold(Q::one(), |acc, (&e, xi)| acc * xi.pow(e as i32))
}

/// Points of [0, P)^n in lexicographic order.
fn residues(vars: usize, period: u64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|r: Vec<i64>| {
                (0..period as i64).map(move |v| {
                    let mut s = r.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out
}

impl QuasiPolynomial {
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    /// Frequencies as rational covectors in [0, 1)^n.
    pub fn frequencies(&self) -> Vec<Vec<Q>> {
        self.terms.iter().map(|(nu, _)| nu.iter().map(|&v| linalg::frac(v, self.period as i64)).collect()).collect()
    }

    pub fn evaluate(&self, x: &[i64]) -> CyclotomicNumber {
        let k = &self.field;
        let xq: Vec<Q> = x.iter().map(|&v| q(v)).collect();
        let mut acc = k.zero();
        for (nu, coeffs) in &self.terms {
            let mut p = k.zero();
            for (m, c) in self.monomials.iter().zip(coeffs) {
                if !c.is_zero() {
                    p = k.add(&p, &k.scale(c, &mono_eval(m, &xq)));
                }
            }
            let e: i64 = nu.iter().zip(x).map(|(a, b)| a * b).sum();
            acc = k.add(&acc, &k.mul(&p, &k.zeta_pow(e)));
        }
        acc
    }

    /// The value when it is rational.
    pub fn evaluate_rational(&self, x: &[i64]) -> Result<Q> {
        self.evaluate(x).as_rational().ok_or_else(|| Error::Consistency(format!("irrational value at {x:?}")))
    }
}

/// Fits a quasi-polynomial of the given period and degree: on each residue
/// class r + P·Z^n the function is a polynomial, found by exact interpolation
/// on the principal lattice r + P·{g ≥ 0, |g| ≤ degree}; the frequency
/// components come from the discrete Fourier transform over the classes.
pub fn fit_quasipolynomial<F>(vars: usize, period: u64, degree: usize, mut sample: F) -> Result<QuasiPolynomial>
where
    F: FnMut(&[i64]) -> Result<Q>,
{
    if period == 0 {
        return Err(Error::Precondition("period must be positive".into()));
    }
    let mons = monomials(vars, degree);
    let grid: Vec<Vec<i64>> = mons.iter().map(|m| m.iter().map(|&e| e as i64).collect()).collect();
    let res = residues(vars, period);
    let pi = period as i64;
    let mut per_class: Vec<Vec<Q>> = Vec::with_capacity(res.len());
    for r in &res {
        let mut rows = vec![];
        let mut vals = vec![];
        for g in &grid {
            let x: Vec<i64> = r.iter().zip(g).map(|(a, b)| a + pi * b).collect();
            let xq: Vec<Q> = x.iter().map(|&v| q(v)).collect();
            rows.push(mons.iter().map(|m| mono_eval(m, &xq)).collect::<Vec<_>>());
            vals.push(sample(&x)?);
        }
        let c = linalg::solve_vec(&rows, &vals).ok_or_else(|| Error::Consistency("interpolation system is singular".into()))?;
        per_class.push(c);
    }
    let k = CyclotomicField::new(period)?;
    let scale = Q::one() / Q::from_integer(num_bigint::BigInt::from(period).pow(vars as u32));
    let mut terms = vec![];
    for nu in &res {
        let mut coeffs = vec![];
        let mut any = false;
        for a in 0..mons.len() {
            let mut buckets = vec![Q::zero(); period as usize];
            for (r, c) in res.iter().zip(&per_class) {
                if c[a].is_zero() {
                    continue;
                }
                let e: i64 = nu.iter().zip(r).map(|(x, y)| x * y).sum();
                buckets[(-e).mod_floor(&pi) as usize] += &c[a];
            }
            let mut z = k.zero();
            for (e, b) in buckets.iter().enumerate() {
                if !b.is_zero() {
                    z = k.add(&z, &k.scale(&k.zeta_pow(e as i64), &(b * &scale)));
                }
            }
            any |= !z.is_zero();
            coeffs.push(z);
        }
        if any {
            terms.push((nu.clone(), coeffs));
        }
    }
    Ok(QuasiPolynomial { period, vars, degree, monomials: mons, terms, field: k })
}

/// Least P > 0 such that x ↦ x + P·e_i preserves every character exponent in
/// the product formula: N·P·ϖ_β(ϖ_i^∨) ∈ D_Q·Z for all Q ⊇ P, β ∉ Δ_Q.
pub fn structural_period(ctx: &TruncationContext, spec: &LatticeSpec) -> Result<u64> {
    let d = ctx.datum();
    let p = spec.parabolic;
    let n = Q::from_integer(spec.divisibility.into());
    let mut period = num_bigint::BigInt::one();
    for qq in ctx.between(&p, &ctx.full()) {
        let forms = adapted_forms(ctx, &p, &qq);
        let b: Vec<Vec<Q>> = spec.basis.iter().map(|g| forms.iter().map(|f| f.eval(g) * &n).collect()).collect();
        let dq = Q::from_integer(linalg::det(&b).abs().to_integer());
        for beta in (0..d.rank_ss()).filter(|b| !qq.contains(*b)) {
            for i in 0..d.rank_ss() {
                let v: Q = d.fundamental_weights()[beta].0[i].clone() * &n / &dq;
                period = period.lcm(v.denom());
            }
        }
    }
    period.try_into().map_err(|_| Error::Unsupported("period exceeds 64 bits".into()))
}

/// Outcome of fitting a lattice sum from brute-force samples.
#[derive(Clone, Debug)]
pub struct LatticeFit {
    pub quasi: QuasiPolynomial,
    pub structural_period: u64,
    pub held_out: Vec<(Vec<i64>, Q)>,
}

/// Deterministic held-out points, spread over both signs and off the grid.
pub fn held_out_points(vars: usize, period: u64, count: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 3 * period as i64 + 7;
    (0..count).map(|_| (0..vars).map(|_| rng.gen_range(-span..=span)).collect()).collect()
}

/// Fits Σ_{H∈Λ} Γ_P(H + H_0, X) as a quasi-polynomial in the coweight
/// coordinates of X. Candidate periods are the divisors of the structural
/// period in increasing order; the first one whose fit reproduces a fresh
/// held-out sample wins. A singular interpolation raises the degree.
pub fn fit_lattice_sum(ctx: &TruncationContext, spec: &LatticeSpec, holdout: usize, seed: u64) -> Result<LatticeFit> {
    let d = ctx.datum();
    let vars = d.rank_ss();
    let sp = structural_period(ctx, spec)?;
    let degree = spec.parabolic.corank(d);
    let eval = |x: &[i64]| {
        let mut v = AVector::from_ints(x);
        v.0.resize(d.dim(), Q::zero());
        brute_sum(ctx, spec, &v)
    };
    let pts = held_out_points(vars, sp, holdout, seed);
    let truth: Vec<Q> = pts.iter().map(|x| eval(x)).collect::<Result<_>>()?;
    for period in (1..=sp).filter(|p| sp % p == 0) {
        let mut deg = degree;
        let quasi = loop {
            match fit_quasipolynomial(vars, period, deg, eval) {
                Err(Error::Consistency(_)) if deg < degree + 2 => deg += 1,
                other => break other?,
            }
        };
        let mut ok = true;
        for (x, t) in pts.iter().zip(&truth) {
            if quasi.evaluate(x).as_rational().as_ref() != Some(t) {
                ok = false;
                break;
            }
        }
        if ok {
            let held_out = pts.into_iter().zip(truth).collect();
            return Ok(LatticeFit { quasi, structural_period: sp, held_out });
        }
    }
    Err(Error::Consistency("no period up to the structural one reproduces the held-out values".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;
    use crate::parabolic::StandardParabolic;
    use crate::rootdata::RootDatum;

    #[test]
    fn floor_half() {
        let f = fit_quasipolynomial(1, 2, 1, |x| Ok(Q::from_integer(x[0].div_euclid(2).into()))).unwrap();
        assert_eq!(f.terms.len(), 2);
        let k = f.field();
        let (nu0, p0) = &f.terms[0];
        assert_eq!(nu0, &vec![0]);
        // monomials are ordered 1, x.
        assert_eq!(p0[0], k.from_q(frac(-1, 4)));
        assert_eq!(p0[1], k.from_q(frac(1, 2)));
        let (nu1, p1) = &f.terms[1];
        assert_eq!(nu1, &vec![1]);
        assert_eq!(p1[0], k.from_q(frac(1, 4)));
        assert!(p1[1].is_zero());
        for x in -9..9 {
            assert_eq!(f.evaluate_rational(&[x]).unwrap(), Q::from_integer(x.div_euclid(2).into()));
        }
    }

    #[test]
    fn constant_has_one_frequency() {
        let f = fit_quasipolynomial(2, 3, 2, |_| Ok(q(7))).unwrap();
        assert_eq!(f.frequencies(), vec![vec![q(0), q(0)]]);
        assert_eq!(f.evaluate_rational(&[-5, 11]).unwrap(), q(7));
    }

    #[test]
    fn a1_period_and_fit() {
        let ctx = TruncationContext::new(RootDatum::new("A1", 0).unwrap());
        let spec = LatticeSpec::coroot(&ctx, StandardParabolic::borel()).unwrap();
        assert_eq!(structural_period(&ctx, &spec).unwrap(), 2);
        let fit = fit_lattice_sum(&ctx, &spec, 20, 1).unwrap();
        assert_eq!(fit.quasi.period, 2);
        assert_eq!(fit.held_out.len(), 20);
    }

    #[test]
    fn a2_borel_predicts_held_out() {
        let ctx = TruncationContext::new(RootDatum::new("A2", 0).unwrap());
        let spec = LatticeSpec::coroot(&ctx, StandardParabolic::borel()).unwrap();
        let fit = fit_lattice_sum(&ctx, &spec, 20, 7).unwrap();
        assert!(fit.held_out.iter().any(|(x, _)| x.iter().any(|&v| v < 0)));
        for (x, v) in &fit.held_out {
            assert_eq!(&fit.quasi.evaluate_rational(x).unwrap(), v);
        }
    }
}
