//! The characteristic functions τ_P^Q, τ̂_P^Q and Arthur's Γ_P(H, X).

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::parabolic::{delta_pq, enumerate_standard, hat_delta_pq, StandardParabolic};
use crate::rootdata::{AForm, AVector, RootDatum};

/// A datum with Δ_P^Q and Δ̂_P^Q precomputed for every standard pair.
#[derive(Clone, Debug)]
pub struct TruncationContext {
    datum: RootDatum,
    delta: Vec<Option<Vec<AForm>>>,
    hat: Vec<Option<Vec<AForm>>>,
}

impl TruncationContext {
    pub fn new(datum: RootDatum) -> Self {
        let count = 1usize << datum.rank_ss();
        let mut delta = vec![None; count * count];
        let mut hat = vec![None; count * count];
        for p in enumerate_standard(&datum) {
            for q in enumerate_standard(&datum) {
                if p.is_subset(&q) {
                    let k = p.mask as usize * count + q.mask as usize;
                    delta[k] = Some(delta_pq(&datum, &p, &q).unwrap());
                    hat[k] = Some(hat_delta_pq(&datum, &p, &q).unwrap());
                }
            }
        }
        TruncationContext { datum, delta, hat }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    fn key(&self, p: &StandardParabolic, q: &StandardParabolic) -> Result<usize> {
        let count = 1usize << self.datum.rank_ss();
        if p.mask as usize >= count || q.mask as usize >= count {
            return Err(Error::Precondition(format!("parabolic out of range for rank {}", self.datum.rank_ss())));
        }
        if !p.is_subset(q) {
            return Err(Error::NotContained { inner: p.to_string(), outer: q.to_string() });
        }
        Ok(p.mask as usize * count + q.mask as usize)
    }

    pub fn delta(&self, p: &StandardParabolic, q: &StandardParabolic) -> Result<&[AForm]> {
        Ok(self.delta[self.key(p, q)?].as_deref().unwrap())
    }

    pub fn hat_delta(&self, p: &StandardParabolic, q: &StandardParabolic) -> Result<&[AForm]> {
        Ok(self.hat[self.key(p, q)?].as_deref().unwrap())
    }

    pub fn full(&self) -> StandardParabolic {
        StandardParabolic::full(&self.datum)
    }

    pub fn tau(&self, p: &StandardParabolic, q: &StandardParabolic, h: &AVector) -> Result<bool> {
        self.datum.check_vector(h)?;
        Ok(self.delta(p, q)?.iter().all(|f| f.eval(h).is_positive()))
    }

    pub fn tau_hat(&self, p: &StandardParabolic, q: &StandardParabolic, h: &AVector) -> Result<bool> {
        self.datum.check_vector(h)?;
        Ok(self.hat_delta(p, q)?.iter().all(|f| f.eval(h).is_positive()))
    }

    /// Standard parabolics R with P ⊆ R ⊆ Q.
    pub fn between(&self, p: &StandardParabolic, q: &StandardParabolic) -> Vec<StandardParabolic> {
        let free = q.mask & !p.mask;
        let mut out = vec![];
        let mut sub = free;
        loop {
            out.push(StandardParabolic { mask: p.mask | sub });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        out.sort();
        out
    }

    /// Σ_{P⊆R⊆Q} (−1)^{dim 𝔞_P^R} τ_P^R(H) τ̂_R^Q(H) = [P = Q].
    pub fn langlands_inversion_check(&self, p: &StandardParabolic, q: &StandardParabolic, h: &AVector) -> Result<bool> {
        self.key(p, q)?;
        self.datum.check_vector(h)?;
        let mut total = 0i64;
        for r in self.between(p, q) {
            for f in self.delta(p, &r)?.iter().chain(self.hat_delta(&r, q)?) {
                if f.eval(h).is_zero() {
                    return Err(Error::OnWall(format!("{f} vanishes at {h}")));
                }
            }
            if self.tau(p, &r, h)? && self.tau_hat(&r, q, h)? {
                total += sign(r.size() - p.size());
            }
        }
        Ok(total == (p == q) as i64)
    }

    /// Γ_P(H, X) = Σ_{Q⊇P} (−1)^{dim 𝔞_Q^G} τ_P^Q(H) τ̂_Q(H − X).
    pub fn gamma(&self, p: &StandardParabolic, h: &AVector, x: &AVector) -> Result<i64> {
        self.datum.check_vector(h)?;
        self.datum.check_vector(x)?;
        let g = self.full();
        self.key(p, &g)?;
        let hx = h - x;
        let mut total = 0;
        for q in self.between(p, &g) {
            if self.tau(p, &q, h)? && self.tau_hat(&q, &g, &hx)? {
                total += sign(g.size() - q.size());
            }
        }
        Ok(total)
    }

    /// Compiles Γ_P(H_0 + Σ k_i b_i, X) as a function of integer k.
    pub fn compile_gamma(&self, p: &StandardParabolic, basis: &[AVector], offset: &AVector, x: &AVector) -> Result<CompiledGamma> {
        for b in basis {
            self.datum.check_vector(b)?;
        }
        self.datum.check_vector(offset)?;
        self.datum.check_vector(x)?;
        let g = self.full();
        let mut rows: Vec<Vec<i128>> = vec![];
        let mut terms = vec![];
        let compile = |rows: &mut Vec<Vec<i128>>, f: &AForm, shift: &Q| -> Result<usize> {
            let mut r: Vec<Q> = vec![f.eval(offset) - shift];
            r.extend(basis.iter().map(|b| f.eval(b)));
            let row = scale_to_int(&r)?;
            Ok(match rows.iter().position(|x| *x == row) {
                Some(i) => i,
                None => {
                    rows.push(row);
                    rows.len() - 1
                }
            })
        };
        for q in self.between(p, &g) {
            let mut conds = vec![];
            for f in self.delta(p, &q)? {
                conds.push(compile(&mut rows, f, &Q::zero())?);
            }
            for f in self.hat_delta(&q, &g)? {
                conds.push(compile(&mut rows, f, &f.eval(x))?);
            }
            terms.push((sign(g.size() - q.size()), conds));
        }
        Ok(CompiledGamma { rows, terms })
    }

    /// Bounds for Γ_P(·, X) in the coordinates ϖ_k(H), k ∉ I: the support
    /// lies in the box [−R, R]^r, found by scanning `lattice + offset` and
    /// certified by comparing Σ|Γ| over the box and the doubled box.
    pub fn gamma_support_box(&self, p: &StandardParabolic, x: &AVector, lattice: &[AVector], offset: &AVector) -> Result<SupportBox> {
        let d = &self.datum;
        let coords: Vec<AForm> = (0..d.rank_ss()).filter(|&k| !p.contains(k)).map(|k| d.fundamental_weights()[k].clone()).collect();
        if coords.is_empty() {
            return Ok(SupportBox { coords, radius: Q::zero(), certified: true, nonzero: 1 });
        }
        if lattice.len() != coords.len() {
            return Err(Error::InvalidLattice(format!("expected {} basis vectors, got {}", coords.len(), lattice.len())));
        }
        let cg = self.compile_gamma(p, lattice, offset, x)?;
        let scan = LatticeScan::new(&coords, lattice, offset)?;
        let mut radius = coords.iter().map(|f| f.eval(x)).fold(Q::zero(), |a, b| a.max(b.abs()));
        radius = radius.max(scan.min_step());
        // Grow until the outer half of the box carries no support.
        loop {
            let mut far = Q::zero();
            let mut count = 0u64;
            scan.for_each(&radius, |k, y| {
                if cg.eval(k) != 0 {
                    count += 1;
                    let m = y.iter().fold(Q::zero(), |a, b| a.max(b.abs()));
                    far = far.clone().max(m);
                }
            });
            if far.clone() * Q::from_integer(2.into()) <= radius {
                let big = &radius * Q::from_integer(2.into());
                let (s1, _) = scan.abs_sum(&cg, &radius);
                let (s2, _) = scan.abs_sum(&cg, &big);
                return Ok(SupportBox { coords, radius, certified: s1 == s2, nonzero: count });
            }
            radius = &radius * Q::from_integer(2.into());
        }
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Clears denominators of a rational row by a positive factor.
fn scale_to_int(r: &[Q]) -> Result<Vec<i128>> {
    let den = linalg::lcm_denoms(r);
    r.iter()
        .map(|x| {
            let v = (x * Q::from_integer(den.clone())).to_integer();
            i128::try_from(v).map_err(|_| Error::Unsupported("coefficient exceeds 128 bits".into()))
        })
        .collect()
}

/// Γ_P evaluated on integer lattice coordinates with exact integer tests.
#[derive(Clone, Debug)]
pub struct CompiledGamma {
    rows: Vec<Vec<i128>>,
    terms: Vec<(i64, Vec<usize>)>,
}

impl CompiledGamma {
    pub fn eval(&self, k: &[i64]) -> i64 {
        let pos: Vec<bool> = self
            .rows
            .iter()
            .map(|r| r[0] + r[1..].iter().zip(k).map(|(&a, &b)| a * b as i128).sum::<i128>() > 0)
            .collect();
        self.terms.iter().filter(|(_, c)| c.iter().all(|&i| pos[i])).map(|(s, _)| s).sum()
    }
}

#[derive(Clone, Debug)]
pub struct SupportBox {
    /// The coordinate functionals ϖ_k, k ∉ I.
    pub coords: Vec<AForm>,
    pub radius: Q,
    /// Σ|Γ| agrees on the box and on the doubled box.
    pub certified: bool,
    /// Number of scanned lattice points with Γ ≠ 0.
    pub nonzero: u64,
}

/// Enumerates lattice points H_0 + Σ k_i b_i whose coordinates lie in a box.
pub struct LatticeScan {
    /// y = y0 + Y k.
    y0: Vec<Q>,
    y: Vec<Vec<Q>>,
    yinv: Vec<Vec<Q>>,
}

impl LatticeScan {
    pub fn new(coords: &[AForm], basis: &[AVector], offset: &AVector) -> Result<Self> {
        let y: Vec<Vec<Q>> = coords.iter().map(|f| basis.iter().map(|b| f.eval(b)).collect()).collect();
        let yinv = linalg::inverse(&y).ok_or_else(|| Error::InvalidLattice("basis is not full rank in 𝔞_P^G".into()))?;
        let y0 = coords.iter().map(|f| f.eval(offset)).collect();
        Ok(LatticeScan { y0, y, yinv })
    }

    /// The smallest non-zero |y| coordinate step, a scale for radii.
    pub fn min_step(&self) -> Q {
        self.y.iter().flatten().filter(|x| !x.is_zero()).map(|x| x.abs()).min().unwrap_or_else(|| Q::from_integer(1.into()))
    }

    pub fn for_each(&self, radius: &Q, mut f: impl FnMut(&[i64], &[Q])) {
        let r = self.y.len();
        let mut lo = vec![0i64; r];
        let mut hi = vec![0i64; r];
        for i in 0..r {
            // k_i = Σ_j inv_ij (y_j − y0_j) with y_j ∈ [−R, R].
            let mut a = Q::zero();
            let mut b = Q::zero();
            for j in 0..r {
                let c = &self.yinv[i][j];
                let u = c * (-radius - &self.y0[j]);
                let v = c * (radius - &self.y0[j]);
                a += u.clone().min(v.clone());
                b += u.max(v);
            }
            lo[i] = i64::try_from(a.floor().to_integer()).unwrap_or(i64::MIN / 4);
            hi[i] = i64::try_from(b.ceil().to_integer()).unwrap_or(i64::MAX / 4);
        }
        let mut k = lo.clone();
        loop {
            let yv: Vec<Q> = (0..r)
                .map(|j| &self.y0[j] + self.y[j].iter().zip(&k).map(|(a, &b)| a * Q::from_integer(b.into())).sum::<Q>())
                .collect();
            if yv.iter().all(|v| v.abs() <= *radius) {
                f(&k, &yv);
            }
            let mut i = 0;
            loop {
                if i == r {
                    return;
                }
                k[i] += 1;
                if k[i] <= hi[i] {
                    break;
                }
                k[i] = lo[i];
                i += 1;
            }
        }
    }

    /// (Σ|Γ|, ΣΓ) over the box.
    pub fn abs_sum(&self, g: &CompiledGamma, radius: &Q) -> (i64, i64) {
        let mut a = 0;
        let mut s = 0;
        self.for_each(radius, |k, _| {
            let v = g.eval(k);
            a += v.abs();
            s += v;
        });
        (a, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, q};

    fn ctx(t: &str) -> TruncationContext {
        TruncationContext::new(RootDatum::new(t, 0).unwrap())
    }

    #[test]
    fn tau_examples() {
        let c = ctx("A1");
        let b = StandardParabolic::borel();
        let g = c.full();
        let a = c.datum().simple_coroots()[0].clone();
        assert!(c.tau(&b, &g, &a).unwrap());
        assert!(!c.tau(&b, &g, &AVector::zeros(1)).unwrap());
        assert!(c.tau(&b, &b, &AVector::zeros(1)).unwrap());
        assert!(c.tau_hat(&b, &g, &a).unwrap());
        assert!(c.tau(&g, &b, &a).is_err());
        let c = ctx("A2");
        let h = &c.datum().simple_coroots()[0] - &c.datum().simple_coroots()[1];
        assert!(!c.tau_hat(&StandardParabolic::borel(), &c.full(), &h).unwrap());
    }

    #[test]
    fn inversion_examples() {
        let c = ctx("A1");
        let b = StandardParabolic::borel();
        let g = c.full();
        let a = c.datum().simple_coroots()[0].clone();
        assert!(c.langlands_inversion_check(&g, &g, &a).unwrap());
        assert!(c.langlands_inversion_check(&b, &g, &a).unwrap());
        assert!(matches!(c.langlands_inversion_check(&b, &g, &AVector::zeros(1)), Err(Error::OnWall(_))));
    }

    #[test]
    fn gamma_examples() {
        let c = ctx("A1");
        let b = StandardParabolic::borel();
        let a = c.datum().simple_coroots()[0].clone();
        let x = AVector(vec![q(5)]);
        assert_eq!(c.gamma(&b, &a, &x).unwrap(), 1);
        assert_eq!(c.gamma(&b, &a, &AVector::zeros(1)).unwrap(), 0);
        assert_eq!(c.gamma(&c.full(), &a, &x).unwrap(), 1);
        // Interval 0 < h ≤ x, and sign −1 on x < h ≤ 0.
        for h in -8..=8 {
            let hv = AVector(vec![q(h)]);
            let expect = if 0 < h && h <= 5 { 1 } else { 0 };
            assert_eq!(c.gamma(&b, &hv, &x).unwrap(), expect);
            let expect = if -5 < h && h <= 0 { -1 } else { 0 };
            assert_eq!(c.gamma(&b, &hv, &AVector(vec![q(-5)])).unwrap(), expect);
        }
    }

    #[test]
    fn compiled_matches_direct() {
        let c = ctx("B2");
        let b = StandardParabolic::borel();
        let basis = vec![AVector(vec![q(1), q(0)]), AVector(vec![frac(1, 2), q(1)])];
        let off = AVector(vec![frac(1, 3), frac(1, 7)]);
        let x = AVector(vec![q(3), q(-2)]);
        let cg = c.compile_gamma(&b, &basis, &off, &x).unwrap();
        for i in -6..6 {
            for j in -6..6 {
                let h = &(&off + &basis[0].scale(&q(i))) + &basis[1].scale(&q(j));
                assert_eq!(cg.eval(&[i, j]), c.gamma(&b, &h, &x).unwrap());
            }
        }
    }

    #[test]
    fn support_box_a1() {
        let c = ctx("A1");
        let b = StandardParabolic::borel();
        let basis = vec![c.datum().simple_coroots()[0].clone()];
        let sb = c.gamma_support_box(&b, &AVector(vec![q(5)]), &basis, &AVector::zeros(1)).unwrap();
        assert!(sb.certified);
        assert_eq!(sb.nonzero, 2);
        assert!(sb.radius >= frac(5, 2));
        let sb = c.gamma_support_box(&b, &AVector::zeros(1), &basis, &AVector::zeros(1)).unwrap();
        assert_eq!(sb.nonzero, 0);
        let sb = c.gamma_support_box(&c.full(), &AVector(vec![q(5)]), &[], &AVector::zeros(1)).unwrap();
        assert!(sb.coords.is_empty());
    }
}
