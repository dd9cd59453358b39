//! Degrees, semistability and the canonical refinement.

use num_traits::Zero;

use super::{ComplementaryPolyhedron, PolyhedronContext};
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::parabolic::{SemiStandardParabolic, StandardParabolic};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub parabolic: SemiStandardParabolic,
    pub degree: Q,
    /// Every candidate P ⊆ Q with its degree.
    pub degrees: Vec<(SemiStandardParabolic, Q)>,
}

impl PolyhedronContext {
    fn check_in(&self, p: &SemiStandardParabolic, q: &StandardParabolic) -> Result<()> {
        if !p.in_standard(&self.weyl, q) {
            return Err(Error::NotContained { inner: p.describe(&self.weyl), outer: q.to_string() });
        }
        Ok(())
    }

    /// Σ over reduced roots α of N_{P_0} ∩ M_Q of ⟨α, s·X_s⟩, with s = the
    /// minimal representative of P = (I, w).
    pub fn degree(&self, cp: &ComplementaryPolyhedron, p: &SemiStandardParabolic, q: &StandardParabolic) -> Result<Q> {
        self.check_in(p, q)?;
        let f = self.degree_form(&p.std, q)?;
        Ok(f.eval(&cp.transported(&self.weyl, p.rep)))
    }

    /// The degree computed from every chamber s ∈ W_I·w.
    pub fn degree_all_chambers(&self, cp: &ComplementaryPolyhedron, p: &SemiStandardParabolic, q: &StandardParabolic) -> Result<Vec<Q>> {
        self.check_in(p, q)?;
        let f = self.degree_form(&p.std, q)?;
        Ok(p.chambers(&self.weyl).into_iter().map(|s| f.eval(&cp.transported(&self.weyl, s))).collect())
    }

    /// Semi-standard parabolics properly contained in P.
    pub fn proper_subparabolics(&self, p: &SemiStandardParabolic) -> Vec<SemiStandardParabolic> {
        self.semis
            .iter()
            .filter(|r| r.std.mask != p.std.mask && r.is_subset(&self.weyl, p))
            .copied()
            .collect()
    }

    /// τ̂_{R}^{P}(δ·X_δ) = 0 for every semi-standard (R, δ) ⊊ P.
    pub fn is_semistable(&self, cp: &ComplementaryPolyhedron, p: &SemiStandardParabolic) -> Result<bool> {
        for r in self.proper_subparabolics(p) {
            let v = cp.transported(&self.weyl, r.rep);
            if self.trunc.tau_hat(&r.std, &p.std, &v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Clause (2): ⟨α, w·X_w⟩ > 0 for α ∈ Δ_{P_I}^Q.
    pub fn positive_on_complement(&self, cp: &ComplementaryPolyhedron, p: &SemiStandardParabolic, q: &StandardParabolic) -> Result<bool> {
        self.check_in(p, q)?;
        self.trunc.tau(&p.std, q, &cp.transported(&self.weyl, p.rep))
    }

    pub fn candidates(&self, q: &StandardParabolic) -> Vec<SemiStandardParabolic> {
        self.semis.iter().filter(|p| p.in_standard(&self.weyl, q)).copied().collect()
    }

    /// The largest parabolic of maximal degree, cross-checked against the
    /// two defining clauses: it must be the only candidate satisfying both.
    pub fn canonical_refinement(&self, cp: &ComplementaryPolyhedron, q: &StandardParabolic) -> Result<Refinement> {
        let cands = self.candidates(q);
        let mut degrees = Vec::with_capacity(cands.len());
        for p in &cands {
            degrees.push((*p, self.degree(cp, p, q)?));
        }
        let max = degrees.iter().map(|(_, d)| d.clone()).max().unwrap_or_else(Q::zero);
        let top: Vec<SemiStandardParabolic> = degrees.iter().filter(|(_, d)| *d == max).map(|(p, _)| *p).collect();
        let maximal: Vec<SemiStandardParabolic> = top
            .iter()
            .filter(|p| !top.iter().any(|o| o != *p && p.is_subset(&self.weyl, o)))
            .copied()
            .collect();
        if maximal.len() != 1 {
            return Err(Error::Consistency(format!("{} maximal parabolics of maximal degree", maximal.len())));
        }
        let best = maximal[0];
        if !top.iter().all(|p| p.is_subset(&self.weyl, &best)) {
            return Err(Error::Consistency("maximal-degree set has no largest element".into()));
        }
        let mut satisfying = vec![];
        for p in &cands {
            if self.positive_on_complement(cp, p, q)? && self.is_semistable(cp, p)? {
                satisfying.push(*p);
            }
        }
        if satisfying != [best] {
            let names: Vec<String> = satisfying.iter().map(|p| p.describe(&self.weyl)).collect();
            return Err(Error::Consistency(format!(
                "degree maximizer {} but defining clauses hold for [{}]",
                best.describe(&self.weyl),
                names.join(", ")
            )));
        }
        Ok(Refinement { parabolic: best, degree: max, degrees })
    }

    /// Σ_{(P, s)} (−1)^{dim 𝔞_P^G} τ̂_P(s·X_s) over all semi-standard P.
    pub fn semistability_indicator(&self, cp: &ComplementaryPolyhedron) -> Result<i64> {
        let g = self.trunc.full();
        let mut total = 0;
        for p in &self.semis {
            if self.trunc.tau_hat(&p.std, &g, &cp.transported(&self.weyl, p.rep))? {
                total += if p.std.corank(self.datum()) % 2 == 0 { 1 } else { -1 };
            }
        }
        Ok(total)
    }

    /// Checks that Σ of reduced roots of N_{P_I} ∩ M_J equals Σ n_j ϖ_j^J
    /// over j ∈ J − I with integers n_j ≥ 2, and returns the n_j.
    pub fn weight_identity(&self, i: &StandardParabolic, j: &StandardParabolic) -> Result<Vec<(usize, Q)>> {
        let d = self.datum();
        let s = self.degree_form(i, j)?;
        let mut recon = crate::rootdata::AForm::zeros(d.dim());
        let mut out = vec![];
        for k in j.indices() {
            let n = s.eval(&d.simple_coroots()[k]);
            if i.contains(k) {
                if !n.is_zero() {
                    return Err(Error::Consistency(format!("weight sum pairs non-trivially with α_{}^∨", k + 1)));
                }
                continue;
            }
            if !n.is_integer() || n < crate::linalg::q(2) {
                return Err(Error::Consistency(format!("coefficient {n} at ϖ_{}", k + 1)));
            }
            recon = &recon + &crate::parabolic::relative_weight(d, k, j).scale(&n);
            out.push((k, n));
        }
        if recon != *s {
            return Err(Error::Consistency("weight sum is not a combination of relative weights".into()));
        }
        Ok(out)
    }
}
