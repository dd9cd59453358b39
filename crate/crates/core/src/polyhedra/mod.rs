//! Complementary polyhedra: W-indexed families (X_s) in 𝔞_B with
//! X_t − X_s = b·γ^∨, b ≥ 0, whenever s = s_α t and γ = s^{-1}α.

mod project;
mod refine;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{frac, q, Q};
use crate::parabolic::{enumerate_semistandard, SemiStandardParabolic, StandardParabolic};
use crate::rootdata::{AForm, AVector, RootDatum, WeylGroup};
use crate::truncation::TruncationContext;

pub use project::{levi_restriction, project_polyhedron, LeviRestriction};
pub use refine::Refinement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryPolyhedron {
    /// vertices[s] = X_s, indexed like the Weyl group table.
    pub vertices: Vec<AVector>,
}

/// An edge where the defining relation fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeViolation {
    pub s: usize,
    pub simple: usize,
}

impl ComplementaryPolyhedron {
    /// Builds a family from possibly incomplete data.
    pub fn from_partial(w: &WeylGroup, vertices: Vec<Option<AVector>>) -> Result<Self> {
        if vertices.len() < w.order() {
            return Err(Error::MissingVertex(vertices.len()));
        }
        let mut out = Vec::with_capacity(w.order());
        for (s, v) in vertices.into_iter().enumerate() {
            out.push(v.ok_or(Error::MissingVertex(s))?);
        }
        Ok(ComplementaryPolyhedron { vertices: out })
    }

    pub fn constant(w: &WeylGroup, c: &AVector) -> Self {
        ComplementaryPolyhedron { vertices: vec![c.clone(); w.order()] }
    }

    /// s·X_s.
    pub fn transported(&self, w: &WeylGroup, s: usize) -> AVector {
        w.act_vec(s, &self.vertices[s])
    }

    /// The first edge violating the defining relation, if any.
    pub fn validate(&self, d: &RootDatum, w: &WeylGroup) -> Result<Option<EdgeViolation>> {
        if self.vertices.len() != w.order() {
            return Err(Error::MissingVertex(self.vertices.len().min(w.order())));
        }
        for v in &self.vertices {
            d.check_vector(v)?;
        }
        for s in 0..w.order() {
            for i in 0..d.rank_ss() {
                let t = w.mul(w.simple(i), s);
                let gamma = &d.roots()[w.act_root(w.inv(s), i)].coroot;
                let diff = &self.vertices[t] - &self.vertices[s];
                if !nonneg_multiple(&diff, gamma) {
                    return Ok(Some(EdgeViolation { s, simple: i }));
                }
            }
        }
        Ok(None)
    }
}

/// Whether diff = b·v for some b ≥ 0.
fn nonneg_multiple(diff: &AVector, v: &AVector) -> bool {
    let Some(k) = v.0.iter().position(|x| !x.is_zero()) else {
        return diff.is_zero();
    };
    let b = &diff.0[k] / &v.0[k];
    !b.is_negative() && diff.0.iter().zip(&v.0).all(|(a, c)| *a == &b * c)
}

/// X_s = Σ c_i s^{-1}Y_i + C for antidominant Y_i.
pub fn generate(d: &RootDatum, w: &WeylGroup, ys: &[AVector], cs: &[Q], shift: &AVector) -> Result<ComplementaryPolyhedron> {
    if ys.len() != cs.len() {
        return Err(Error::DimensionMismatch { expected: ys.len(), got: cs.len() });
    }
    d.check_vector(shift)?;
    for (i, y) in ys.iter().enumerate() {
        d.check_vector(y)?;
        if d.simple_roots().iter().any(|a| a.eval(y).is_positive()) {
            return Err(Error::NotAntidominant(i));
        }
    }
    if cs.iter().any(|c| c.is_negative()) {
        return Err(Error::Precondition("weights must be non-negative".into()));
    }
    let vertices = (0..w.order())
        .map(|s| {
            let si = w.inv(s);
            ys.iter().zip(cs).fold(shift.clone(), |acc, (y, c)| &acc + &w.act_vec(si, y).scale(c))
        })
        .collect();
    Ok(ComplementaryPolyhedron { vertices })
}

/// Whether (ξ, X) satisfies d(X) ≥ 0 and −d/f ≤ ⟨α, ξ⟩ ≤ d/f + f for every
/// positive reduced root α.
pub fn is_admissible(d: &RootDatum, xi: &AVector, x: &AVector, f: u32) -> Result<bool> {
    d.check_vector(xi)?;
    d.check_vector(x)?;
    if f == 0 {
        return Err(Error::Precondition("f must be positive".into()));
    }
    let dx = d.simple_roots().iter().map(|a| a.eval(x)).min().unwrap_or_else(Q::zero);
    if dx.is_negative() {
        return Ok(false);
    }
    let fq = q(f as i64);
    let lo = -(&dx / &fq);
    let hi = &dx / &fq + &fq;
    Ok(d.reduced_positive_roots().all(|(_, r)| {
        let v = r.form.eval(xi);
        lo <= v && v <= hi
    }))
}

/// Shared tables for refinement computations over one datum.
#[derive(Clone, Debug)]
pub struct PolyhedronContext {
    pub trunc: TruncationContext,
    pub weyl: WeylGroup,
    pub semis: Vec<SemiStandardParabolic>,
    /// degree_form[I * 2^n + J] = Σ of reduced roots in Φ_J − Φ_I.
    degree_form: Vec<Option<AForm>>,
}

impl PolyhedronContext {
    pub fn new(d: RootDatum) -> Result<Self> {
        let weyl = WeylGroup::new(&d)?;
        let semis = enumerate_semistandard(&d, &weyl);
        let count = 1usize << d.rank_ss();
        let mut degree_form = vec![None; count * count];
        for i in 0..count as u32 {
            for j in 0..count as u32 {
                if i & !j == 0 {
                    let mut f = AForm::zeros(d.dim());
                    for (_, r) in d.reduced_positive_roots() {
                        let sup = d.support(&r.form);
                        if sup & !j == 0 && sup & !i != 0 {
                            f = &f + &r.form;
                        }
                    }
                    degree_form[i as usize * count + j as usize] = Some(f);
                }
            }
        }
        Ok(PolyhedronContext { trunc: TruncationContext::new(d), weyl, semis, degree_form })
    }

    pub fn datum(&self) -> &RootDatum {
        self.trunc.datum()
    }

    /// Σ of the reduced roots of N_{P_I} ∩ M_{Q_J}.
    pub fn degree_form(&self, i: &StandardParabolic, j: &StandardParabolic) -> Result<&AForm> {
        let count = 1usize << self.datum().rank_ss();
        if !i.is_subset(j) {
            return Err(Error::NotContained { inner: i.to_string(), outer: j.to_string() });
        }
        Ok(self.degree_form[i.mask as usize * count + j.mask as usize].as_ref().unwrap())
    }

    /// A random antidominant point with coordinates in (−scale, 0), drawn
    /// from a fine grid so that walls are avoided almost surely.
    pub fn random_antidominant<R: Rng>(&self, rng: &mut R, scale: i64) -> AVector {
        let d = self.datum();
        let den = 997;
        let mut v = AVector::zeros(d.dim());
        for i in 0..d.rank_ss() {
            v.0[i] = -frac(rng.gen_range(1..scale * den), den);
        }
        v
    }

    /// A random generated polyhedron whose transported vertices avoid every
    /// wall entering refinements.
    pub fn random_polyhedron<R: Rng>(&self, rng: &mut R) -> ComplementaryPolyhedron {
        let d = self.datum();
        loop {
            let k = rng.gen_range(1..=3);
            let ys: Vec<AVector> = (0..k).map(|_| self.random_antidominant(rng, 4)).collect();
            let cs: Vec<Q> = (0..k).map(|_| frac(rng.gen_range(1..=40), 10)).collect();
            let mut shift = AVector::zeros(d.dim());
            for i in 0..d.rank_ss() {
                shift.0[i] = frac(rng.gen_range(-8000..=8000), 1009);
            }
            let cp = generate(d, &self.weyl, &ys, &cs, &shift).expect("antidominant input");
            if self.is_wall_free(&cp) {
                return cp;
            }
        }
    }

    /// Every τ, τ̂ and root test used by refinements is non-zero at every
    /// transported vertex.
    pub fn is_wall_free(&self, cp: &ComplementaryPolyhedron) -> bool {
        let d = self.datum();
        let stds = crate::parabolic::enumerate_standard(d);
        (0..self.weyl.order()).all(|s| {
            let v = cp.transported(&self.weyl, s);
            d.roots().iter().all(|r| !r.form.eval(&v).is_zero())
                && stds.iter().all(|p| {
                    stds.iter().filter(|q| p.is_subset(q)).all(|q| {
                        let t = &self.trunc;
                        t.delta(p, q).unwrap().iter().chain(t.hat_delta(p, q).unwrap()).all(|f| !f.eval(&v).is_zero())
                    })
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pctx(t: &str) -> PolyhedronContext {
        PolyhedronContext::new(RootDatum::new(t, 0).unwrap()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let c = pctx("A1");
        let d = c.datum();
        let a = d.simple_coroots()[0].clone();
        let s = c.weyl.simple(0);
        let mut v = vec![AVector::zeros(1); 2];
        v[0] = -&a;
        v[s] = a.clone();
        let cp = ComplementaryPolyhedron { vertices: v.clone() };
        assert_eq!(cp.validate(d, &c.weyl).unwrap(), None);
        v.swap(0, s);
        let cp = ComplementaryPolyhedron { vertices: v };
        assert!(cp.validate(d, &c.weyl).unwrap().is_some());
        assert_eq!(ComplementaryPolyhedron::constant(&c.weyl, &a).validate(d, &c.weyl).unwrap(), None);
        assert!(matches!(ComplementaryPolyhedron::from_partial(&c.weyl, vec![Some(a), None]), Err(Error::MissingVertex(1))));
    }

    #[test]
    fn generate_examples() {
        let c = pctx("A1");
        let d = c.datum();
        let a = d.simple_coroots()[0].clone();
        let cp = generate(d, &c.weyl, &[-&a], &[q(1)], &AVector::zeros(1)).unwrap();
        assert_eq!(cp.vertices[0], -&a);
        assert_eq!(cp.vertices[c.weyl.simple(0)], a);
        let cp = generate(d, &c.weyl, &[], &[], &a).unwrap();
        assert_eq!(cp, ComplementaryPolyhedron::constant(&c.weyl, &a));
        assert!(matches!(generate(d, &c.weyl, &[a.clone()], &[q(1)], &a), Err(Error::NotAntidominant(0))));
    }

    #[test]
    fn generated_families_validate() {
        for t in ["A2", "B2", "G2", "A1xA1"] {
            let c = pctx(t);
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..20 {
                let cp = c.random_polyhedron(&mut rng);
                assert_eq!(cp.validate(c.datum(), &c.weyl).unwrap(), None, "{t}");
            }
        }
    }

    #[test]
    fn admissible_examples() {
        let d = RootDatum::new("A1", 0).unwrap();
        let z = AVector::zeros(1);
        let a = d.simple_coroots()[0].clone();
        assert!(is_admissible(&d, &z, &z, 1).unwrap());
        assert!(!is_admissible(&d, &z, &-&a, 1).unwrap());
        // ⟨α, ξ⟩ = 3/2, d(X) = 1.
        let xi = AVector(vec![frac(3, 2)]);
        let x = AVector(vec![q(1)]);
        assert!(is_admissible(&d, &xi, &x, 1).unwrap());
        assert!(!is_admissible(&d, &AVector(vec![frac(5, 2)]), &x, 1).unwrap());
        assert!(!is_admissible(&d, &AVector(vec![frac(-3, 2)]), &x, 1).unwrap());
    }
}
