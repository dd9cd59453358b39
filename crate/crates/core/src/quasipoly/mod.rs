//! Lattice sums Σ_{H∈Λ} Γ_P(H + H_0, X) and their quasi-polynomial structure.

mod fit;
mod laurent;
mod product;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::parabolic::StandardParabolic;
use crate::rootdata::{AForm, AVector};
use crate::truncation::TruncationContext;

pub use fit::{fit_lattice_sum, fit_quasipolynomial, held_out_points, structural_period, LatticeFit, QuasiPolynomial};
pub use product::product_eval;

/// A full-rank lattice Λ ⊂ 𝔞_P^G with offset H_0 ∈ 𝔞_P and an integer N
/// with Λ ⊆ L_Q(N) for every Q ⊇ P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub parabolic: StandardParabolic,
    pub basis: Vec<AVector>,
    pub offset: AVector,
    pub divisibility: u64,
}

/// Coordinates on 𝔞_P^G adapted to Q: α∘π_P for α ∈ Δ_Q − Δ_P, then ϖ_β for
/// β ∉ Δ_Q. L_Q(N) is (1/N)Z^r in these coordinates.
pub(crate) fn adapted_forms(ctx: &TruncationContext, p: &StandardParabolic, q: &StandardParabolic) -> Vec<AForm> {
    let d = ctx.datum();
    let mut out: Vec<AForm> = ctx.delta(p, q).unwrap().to_vec();
    for b in 0..d.rank_ss() {
        if !q.contains(b) {
            out.push(d.fundamental_weights()[b].clone());
        }
    }
    out
}

impl LatticeSpec {
    /// Validates the data and picks the least admissible N.
    pub fn new(ctx: &TruncationContext, p: StandardParabolic, basis: Vec<AVector>, offset: AVector) -> Result<Self> {
        let d = ctx.datum();
        let r = p.corank(d);
        if basis.len() != r {
            return Err(Error::InvalidLattice(format!("need {r} basis vectors, got {}", basis.len())));
        }
        d.check_vector(&offset)?;
        for i in p.indices() {
            if !d.simple_roots()[i].eval(&offset).is_zero() {
                return Err(Error::InvalidLattice(format!("offset is not in 𝔞_P (α_{} ≠ 0)", i + 1)));
            }
        }
        for b in &basis {
            d.check_vector(b)?;
            if p.indices().iter().any(|&i| !d.simple_roots()[i].eval(b).is_zero()) || b.0[d.rank_ss()..].iter().any(|x| !x.is_zero()) {
                return Err(Error::InvalidLattice(format!("basis vector {b} is not in 𝔞_P^G")));
            }
        }
        let mut den = BigInt::one();
        for q in ctx.between(&p, &ctx.full()) {
            for f in adapted_forms(ctx, &p, &q) {
                for b in &basis {
                    den = den.lcm(f.eval(b).denom());
                }
            }
        }
        let n: u64 = den.try_into().map_err(|_| Error::Unsupported("divisibility exceeds 64 bits".into()))?;
        let spec = LatticeSpec { parabolic: p, basis, offset, divisibility: n };
        spec.check_rank(ctx)?;
        Ok(spec)
    }

    /// Uses the given N after checking Λ ⊆ L_Q(N) for all Q.
    pub fn with_divisibility(mut self, n: u64) -> Result<Self> {
        if n == 0 || n % self.divisibility != 0 {
            return Err(Error::InvalidLattice(format!("Λ is not contained in L_Q({n}); N must be a multiple of {}", self.divisibility)));
        }
        self.divisibility = n;
        Ok(self)
    }

    fn check_rank(&self, ctx: &TruncationContext) -> Result<()> {
        let forms = adapted_forms(ctx, &self.parabolic, &self.parabolic);
        let m: Vec<Vec<Q>> = self.basis.iter().map(|b| forms.iter().map(|f| f.eval(b)).collect()).collect();
        if !self.basis.is_empty() && linalg::det(&m).is_zero() {
            return Err(Error::InvalidLattice("basis is not full rank in 𝔞_P^G".into()));
        }
        Ok(())
    }

    /// Λ = Z{ϖ_k^∨ : k ∉ I}.
    pub fn coweight(ctx: &TruncationContext, p: StandardParabolic) -> Result<Self> {
        let d = ctx.datum();
        let basis = (0..d.rank_ss()).filter(|k| !p.contains(*k)).map(|k| d.fundamental_coweight(k)).collect();
        Self::new(ctx, p, basis, AVector::zeros(d.dim()))
    }

    /// Λ = Z{π_P α_k^∨ : k ∉ I}.
    pub fn coroot(ctx: &TruncationContext, p: StandardParabolic) -> Result<Self> {
        let d = ctx.datum();
        let basis = (0..d.rank_ss())
            .filter(|k| !p.contains(*k))
            .map(|k| crate::parabolic::project_ap(d, &d.simple_coroots()[k], &p).1)
            .collect();
        Self::new(ctx, p, basis, AVector::zeros(d.dim()))
    }

    pub fn with_offset(ctx: &TruncationContext, base: &LatticeSpec, offset: AVector) -> Result<Self> {
        Self::new(ctx, base.parabolic, base.basis.clone(), offset)
    }
}

/// Σ_{H∈Λ} Γ_P(H + H_0, X), scanning a certified support box.
pub fn brute_sum(ctx: &TruncationContext, spec: &LatticeSpec, x: &AVector) -> Result<Q> {
    let p = &spec.parabolic;
    if p.mask == ctx.full().mask {
        // Γ_G ≡ 1 on the single point of 𝔞_G^G.
        return Ok(Q::one());
    }
    let sb = ctx.gamma_support_box(p, x, &spec.basis, &spec.offset)?;
    if !sb.certified {
        return Err(Error::Consistency("support box failed the doubling test".into()));
    }
    let cg = ctx.compile_gamma(p, &spec.basis, &spec.offset, x)?;
    let scan = crate::truncation::LatticeScan::new(&sb.coords, &spec.basis, &spec.offset)?;
    let (_, s) = scan.abs_sum(&cg, &sb.radius);
    Ok(Q::from_integer(s.into()))
}

/// Validates q as a prime power at least 2.
pub fn check_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    }
    let p = (2..=q).find(|p| q % p == 0).unwrap();
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    }
    Ok((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::rootdata::RootDatum;

    #[test]
    fn a1_interval_counts() {
        let ctx = TruncationContext::new(RootDatum::new("A1", 0).unwrap());
        let spec = LatticeSpec::coroot(&ctx, StandardParabolic::borel()).unwrap();
        assert_eq!(spec.divisibility, 1);
        for (x, n) in [(5, 2), (6, 3), (0, 0), (-3, -2), (1, 0)] {
            assert_eq!(brute_sum(&ctx, &spec, &AVector(vec![q(x)])).unwrap(), q(n), "x = {x}");
        }
    }

    #[test]
    fn vanishes_at_zero() {
        for t in ["A2", "B2", "G2"] {
            let ctx = TruncationContext::new(RootDatum::new(t, 0).unwrap());
            for m in [0u32, 1, 2] {
                let spec = LatticeSpec::coweight(&ctx, StandardParabolic { mask: m }).unwrap();
                assert_eq!(brute_sum(&ctx, &spec, &AVector::zeros(2)).unwrap(), q(0));
            }
        }
    }

    #[test]
    fn rejects_bad_lattices() {
        let ctx = TruncationContext::new(RootDatum::new("A2", 0).unwrap());
        let p = StandardParabolic { mask: 1 };
        assert!(LatticeSpec::new(&ctx, p, vec![AVector::from_ints(&[1, 0])], AVector::zeros(2)).is_err());
        assert!(LatticeSpec::new(&ctx, p, vec![], AVector::zeros(2)).is_err());
        assert!(LatticeSpec::new(&ctx, p, vec![AVector::from_ints(&[0, 1])], AVector::from_ints(&[1, 0])).is_err());
        let s = LatticeSpec::coweight(&ctx, p).unwrap();
        assert!(s.clone().with_divisibility(s.divisibility * 2).is_ok());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(check_prime_power(8).unwrap(), (2, 3));
        assert!(check_prime_power(6).is_err());
        assert!(check_prime_power(1).is_err());
    }
}
