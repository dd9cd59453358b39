//! Evaluation of the lattice sum through the product formula: each term of
//! Γ_P splits into a product of one-dimensional geometric series after
//! Fourier analysis on L_Q/Λ, and the value at λ = 0 is the constant term of
//! the Laurent expansion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::{monomial, one_minus, Laurent};
use super::{adapted_forms, check_prime_power, LatticeSpec};
use crate::cyclotomic::CyclotomicField;
use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};
use crate::rootdata::AVector;
use crate::truncation::TruncationContext;

struct Chamber {
    sign: i64,
    /// exponents m_i of u along the basis of L_Q(1).
    m: Vec<i64>,
    /// first admissible index k0_i.
    k0: Vec<i64>,
    /// Λ generators in L_Q(N) coordinates (rows).
    lattice: Vec<Vec<i64>>,
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Unsupported("integer exceeds 64 bits".into()))
}

/// f_0(X) = Σ_{Q⊇P} (−1)^{dim 𝔞_Q^G} CT_{λ=0} f_λ^Q(X).
///
/// `q` only fixes the base of q^{−⟨λ,H⟩}; the constant term does not depend
/// on it, which callers can check.
pub fn product_eval(ctx: &TruncationContext, spec: &LatticeSpec, x: &AVector, q_base: u64) -> Result<Q> {
    check_prime_power(q_base)?;
    let d = ctx.datum();
    d.check_vector(x)?;
    let p = spec.parabolic;
    let r = p.corank(d);
    if r == 0 {
        return Ok(Q::one());
    }
    let n = spec.divisibility as i64;
    let free: Vec<usize> = (0..d.rank_ss()).filter(|k| !p.contains(*k)).collect();
    let g = ctx.full();
    let qs = ctx.between(&p, &g);

    // Dual bases e_i of the adapted coordinates, in ϖ^∨_k coordinates.
    let mut duals = vec![];
    for qq in &qs {
        let forms = adapted_forms(ctx, &p, qq);
        let f: Vec<Vec<Q>> = forms.iter().map(|a| free.iter().map(|&k| a.0[k].clone()).collect()).collect();
        duals.push(linalg::inverse(&f).ok_or_else(|| Error::Consistency("adapted coordinates are degenerate".into()))?);
    }

    // λ_0 = Σ_j t^j α_{k_j}, first t making every ⟨λ_0, e_i⟩ non-zero.
    let mut pairings: Vec<Vec<Q>> = vec![];
    for t in 1..=1000i64 {
        let lam: Vec<Q> = (0..r).map(|j| q(t).pow(j as i32)).collect();
        let vals: Vec<Vec<Q>> =
            duals.iter().map(|e| (0..r).map(|i| (0..r).map(|j| &lam[j] * &e[j][i]).sum()).collect()).collect();
        if vals.iter().flatten().all(|v| !v.is_zero()) {
            pairings = vals;
            break;
        }
    }
    if pairings.is_empty() {
        return Err(Error::Consistency("no generic direction found".into()));
    }
    let dprime = Q::from_integer(linalg::lcm_denoms(pairings.iter().flatten()));

    let mut chambers = vec![];
    for (qi, qq) in qs.iter().enumerate() {
        let forms = adapted_forms(ctx, &p, qq);
        let nalpha = qq.size() - p.size();
        let hx = &spec.offset - x;
        let mut k0 = vec![];
        for (i, f) in forms.iter().enumerate() {
            let c0 = if i < nalpha { f.eval(&spec.offset) } else { f.eval(&hx) };
            k0.push(to_i64(&linalg::floor(&(-c0 * q(n))))? + 1);
        }
        let m = pairings[qi].iter().map(|c| to_i64(&(c * &dprime).to_integer())).collect::<Result<Vec<_>>>()?;
        let lattice = spec
            .basis
            .iter()
            .map(|b| {
                forms
                    .iter()
                    .map(|f| {
                        let v = f.eval(b) * q(n);
                        if !v.is_integer() {
                            return Err(Error::InvalidLattice("Λ ⊄ L_Q(N)".into()));
                        }
                        to_i64(&v.to_integer())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let sign = if (g.size() - qq.size()) % 2 == 0 { 1 } else { -1 };
        chambers.push(Chamber { sign, m, k0, lattice });
    }

    let mut total: Vec<Q> = vec![Q::zero(); r + 1];
    for ch in &chambers {
        let part = chamber_constant_terms(ch, r)?;
        for (t, v) in total.iter_mut().zip(part) {
            *t += v * q(ch.sign);
        }
    }
    if total[..r].iter().any(|c| !c.is_zero()) {
        return Err(Error::Consistency("poles of the chamber terms do not cancel".into()));
    }
    Ok(total[r].clone())
}

/// Characters ν ∈ (1/D)Z^r / Z^r of L_Q/Λ, D = |det|, as numerators.
fn characters(lattice: &[Vec<i64>]) -> Result<(i64, Vec<Vec<i64>>)> {
    let m: Vec<Vec<Q>> = lattice.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
    let det = linalg::det(&m).abs();
    let dd = linalg::to_i64(&det).filter(|&v| v > 0).ok_or_else(|| Error::InvalidLattice("degenerate lattice".into()))?;
    let r = lattice.len();
    let mut out = vec![];
    let mut nu = vec![0i64; r];
    loop {
        if lattice.iter().all(|row| row.iter().zip(&nu).map(|(a, b)| a * b).sum::<i64>().mod_floor(&dd) == 0) {
            out.push(nu.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                if out.len() as i64 != dd {
                    return Err(Error::Consistency(format!("found {} characters of a group of order {dd}", out.len())));
                }
                return Ok((dd, out));
            }
            nu[i] += 1;
            if nu[i] < dd {
                break;
            }
            nu[i] = 0;
            i += 1;
        }
    }
}

/// (1/D) Σ_ν Π_i ζ^{ν_i k0_i} u^{m_i k0_i} / (1 − ζ^{ν_i} u^{m_i}), as the
/// coefficients of w^{−r}, …, w^0.
fn chamber_constant_terms(ch: &Chamber, r: usize) -> Result<Vec<Q>> {
    let (dd, chars) = characters(&ch.lattice)?;
    let k = CyclotomicField::new(dd as u64)?;
    let prec = r as i64;
    let mut acc: Vec<_> = (0..=r).map(|_| k.zero()).collect();
    for nu in &chars {
        let mut prod = Laurent { val: 0, upto: prec + 1, coeffs: vec![k.one()] };
        prod.coeffs.resize(prec as usize + 2, k.zero());
        for i in 0..r {
            let num = monomial(&k, nu[i] * ch.k0[i], ch.m[i] * ch.k0[i], prec + 1);
            let den = one_minus(&k, nu[i], ch.m[i], prec + 2);
            let f = num.mul(&k, &den.inv(&k)?);
            prod = prod.mul(&k, &f);
        }
        if prod.upto < 0 {
            return Err(Error::Consistency("series precision exhausted".into()));
        }
        for (j, a) in acc.iter_mut().enumerate() {
            *a = k.add(a, &prod.coefficient(&k, j as i64 - prec));
        }
    }
    acc.into_iter()
        .map(|c| {
            c.as_rational()
                .map(|v| v / q(dd))
                .ok_or_else(|| Error::Consistency("character sum is not rational".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::StandardParabolic;
    use crate::quasipoly::brute_sum;
    use crate::rootdata::RootDatum;

    #[test]
    fn a1_interval_counts() {
        let ctx = TruncationContext::new(RootDatum::new("A1", 0).unwrap());
        let spec = LatticeSpec::coroot(&ctx, StandardParabolic::borel()).unwrap();
        for (x, v) in [(5, 2), (6, 3), (0, 0)] {
            assert_eq!(product_eval(&ctx, &spec, &AVector(vec![q(x)]), 3).unwrap(), q(v));
        }
        assert!(product_eval(&ctx, &spec, &AVector(vec![q(1)]), 6).is_err());
    }

    #[test]
    fn matches_brute_in_rank_two() {
        for t in ["A2", "B2", "G2"] {
            let ctx = TruncationContext::new(RootDatum::new(t, 0).unwrap());
            for mask in [0u32, 1, 2] {
                for spec in [
                    LatticeSpec::coweight(&ctx, StandardParabolic { mask }).unwrap(),
                    LatticeSpec::coroot(&ctx, StandardParabolic { mask }).unwrap(),
                ] {
                    for x in [[3, 1], [-2, 4], [0, 0], [5, -3]] {
                        let xv = AVector::from_ints(&x);
                        let b = brute_sum(&ctx, &spec, &xv).unwrap();
                        let p = product_eval(&ctx, &spec, &xv, 2).unwrap();
                        assert_eq!(b, p, "{t} mask {mask} x {x:?}");
                    }
                }
            }
        }
    }
}
