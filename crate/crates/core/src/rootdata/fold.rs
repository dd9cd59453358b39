//! Restriction of roots along a diagram automorphism.
//!
//! The folded space is the σ-fixed part of 𝔞_B; its coordinate for an orbit
//! O is the common value of h_i, i ∈ O. A covector χ restricts to the folded
//! covector whose O-coordinate is Σ_{i∈O} χ_i.

use std::collections::BTreeMap;

use num_traits::{One, Signed};

use super::{identify, AForm, AVector, RootDatum, WeylGroup};
use crate::error::{Error, Result};
use crate::linalg::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldCoefficient {
    /// Index of α' in the unfolded datum.
    pub root: usize,
    /// Index of the restricted root in the folded datum.
    pub restricted: usize,
    /// c = (ᾱ, ᾱ)/(α', α').
    pub c: Q,
}

#[derive(Clone, Debug)]
pub struct Folding {
    pub folded: RootDatum,
    pub sigma: Vec<usize>,
    pub order: usize,
    pub orbits: Vec<Vec<usize>>,
    pub coefficients: Vec<FoldCoefficient>,
    orbit_of: Vec<usize>,
    big_dim: usize,
    rank_central: usize,
}

fn perm_order(p: &[usize]) -> usize {
    let mut cur: Vec<usize> = (0..p.len()).collect();
    let id = cur.clone();
    for k in 1.. {
        cur = cur.iter().map(|&i| p[i]).collect();
        if cur == id {
            return k;
        }
    }
    unreachable!()
}

/// Folds `d` along `sigma` (a 0-based permutation of the simple roots).
/// `order_d` is the number of σ-iterates averaged by p^*, and must be a
/// multiple of the order of σ so that the average is a projection.
pub fn fold(d: &RootDatum, sigma: &[usize], order_d: usize) -> Result<Folding> {
    let n = d.rank_ss();
    let bad = |m: String| Err(Error::InvalidFolding(m));
    if sigma.len() != n {
        return bad(format!("σ has {} entries, rank is {n}", sigma.len()));
    }
    let mut hit = vec![false; n];
    for &i in sigma {
        if i >= n || hit[i] {
            return bad("σ is not a permutation".into());
        }
        hit[i] = true;
    }
    let c = d.cartan_matrix();
    for i in 0..n {
        for j in 0..n {
            if c[sigma[i]][sigma[j]] != c[i][j] {
                return bad(format!("σ does not preserve the Cartan matrix at ({},{})", i + 1, j + 1));
            }
        }
    }
    let ord = perm_order(sigma);
    if order_d == 0 || order_d % ord != 0 {
        return bad(format!("order {order_d} is not a multiple of the order {ord} of σ"));
    }

    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = vec![];
    for i in 0..n {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orb = vec![i];
        let mut j = sigma[i];
        while j != i {
            orb.push(j);
            j = sigma[j];
        }
        orb.sort();
        for &k in &orb {
            orbit_of[k] = orbits.len();
        }
        orbits.push(orb);
    }
    let nz = d.rank_central();
    let small_dim = orbits.len() + nz;

    let average = |f: &AForm| -> AForm {
        let mut out = f.clone();
        for orb in &orbits {
            let s: Q = orb.iter().map(|&i| f.0[i].clone()).sum::<Q>() / q(orb.len() as i64);
            for &i in orb {
                out.0[i] = s.clone();
            }
        }
        out
    };
    let restrict = |f: &AForm| -> AForm {
        let mut out = AForm::zeros(small_dim);
        for (o, orb) in orbits.iter().enumerate() {
            out.0[o] = orb.iter().map(|&i| f.0[i].clone()).sum();
        }
        out.0[orbits.len()..].clone_from_slice(&f.0[n..]);
        out
    };
    let project = |v: &AVector| -> AVector { project_with(&orbits, n, v) };

    let mut restricted: BTreeMap<AForm, AVector> = BTreeMap::new();
    let mut raw: Vec<(usize, AForm, Q)> = vec![];
    for (idx, r) in d.roots().iter().enumerate() {
        let avg = average(&r.form);
        if avg.is_zero() {
            return bad(format!("root {} restricts to zero", r.form));
        }
        let cval = d.inner(&avg, &avg) / d.inner(&r.form, &r.form);
        if !cval.is_positive() || cval > Q::one() {
            return Err(Error::Consistency(format!("coefficient {cval} outside (0,1]")));
        }
        let small = restrict(&r.form);
        let coroot = project(&r.coroot).scale(&cval.recip());
        if let Some(prev) = restricted.get(&small) {
            if *prev != coroot {
                return bad(format!("restricted root {small} has inconsistent coroots"));
            }
        } else {
            restricted.insert(small.clone(), coroot);
        }
        raw.push((idx, small, cval));
    }

    let k = orbits.len();
    let mut cartan = vec![vec![0i64; k]; k];
    for b in 0..k {
        let cor = restricted.get(&AForm::basis(b, small_dim)).ok_or_else(|| {
            Error::InvalidFolding(format!("orbit {} has no simple restricted root", b + 1))
        })?;
        for a in 0..k {
            let x = &cor.0[a];
            if !x.is_integer() {
                return bad("restricted Cartan matrix is not integral".into());
            }
            cartan[a][b] = crate::linalg::to_i64(x).unwrap();
        }
    }
    let label = identify(&cartan).unwrap_or_else(|| "folded".into());
    let folded = RootDatum::from_parts(label, cartan, nz, restricted.into_iter().collect())?;
    let coefficients = raw
        .into_iter()
        .map(|(root, small, c)| FoldCoefficient { root, restricted: folded.root_index(&small).unwrap(), c })
        .collect();
    Ok(Folding { folded, sigma: sigma.to_vec(), order: order_d, orbits, coefficients, orbit_of, big_dim: d.dim(), rank_central: nz })
}

fn project_with(orbits: &[Vec<usize>], n: usize, v: &AVector) -> AVector {
    let mut out = AVector::zeros(orbits.len() + v.dim() - n);
    for (o, orb) in orbits.iter().enumerate() {
        out.0[o] = orb.iter().map(|&i| v.0[i].clone()).sum::<Q>() / q(orb.len() as i64);
    }
    out.0[orbits.len()..].clone_from_slice(&v.0[n..]);
    out
}

impl Folding {
    /// The averaging projection [·] from 𝔞_B onto the folded space.
    pub fn project(&self, v: &AVector) -> AVector {
        project_with(&self.orbits, self.big_dim - self.rank_central, v)
    }

    /// The inclusion of the folded space as σ-fixed vectors.
    pub fn embed(&self, v: &AVector) -> AVector {
        let n = self.big_dim - self.rank_central;
        let mut out = AVector::zeros(self.big_dim);
        for i in 0..n {
            out.0[i] = v.0[self.orbit_of[i]].clone();
        }
        out.0[n..].clone_from_slice(&v.0[self.orbits.len()..]);
        out
    }

    /// Whether a big Weyl element commutes with σ.
    pub fn is_fixed(&self, big: &WeylGroup, w: usize) -> bool {
        let m = &big.element(w).matrix;
        let n = self.big_dim - self.rank_central;
        let s = |i: usize| if i < n { self.sigma[i] } else { i };
        (0..self.big_dim).all(|i| (0..self.big_dim).all(|j| m[s(i)][s(j)] == m[i][j]))
    }

    /// Maps each element of the folded Weyl group to the σ-fixed element of
    /// the big group with the same restriction.
    pub fn weyl_embedding(&self, big: &WeylGroup, small: &WeylGroup) -> Result<Vec<usize>> {
        let fixed: Vec<usize> = (0..big.order()).filter(|&w| self.is_fixed(big, w)).collect();
        if fixed.len() != small.order() {
            return Err(Error::Consistency(format!(
                "folded Weyl group has {} elements, σ-fixed subgroup has {}",
                small.order(),
                fixed.len()
            )));
        }
        let basis: Vec<AVector> = (0..small.element(0).matrix.len()).map(|i| AVector::basis(i, self.folded.dim())).collect();
        let mut out = vec![usize::MAX; small.order()];
        for &w in &fixed {
            let images: Vec<AVector> = basis.iter().map(|b| self.project(&big.act_vec(w, &self.embed(b)))).collect();
            let target = (0..small.order()).find(|&u| basis.iter().zip(&images).all(|(b, img)| small.act_vec(u, b) == *img));
            match target {
                Some(u) if out[u] == usize::MAX => out[u] = w,
                _ => return Err(Error::Consistency("σ-fixed element with no folded counterpart".into())),
            }
        }
        Ok(out)
    }

    /// The identity folding of `d`.
    pub fn identity(d: &RootDatum) -> Result<Folding> {
        fold(d, &(0..d.rank_ss()).collect::<Vec<_>>(), 1)
    }

    pub fn coefficient_range_ok(&self) -> bool {
        self.coefficients.iter().all(|c| c.c.is_positive() && c.c <= Q::one())
    }

    /// Checks ⟨ᾱ, ᾱ^∨⟩ = 2 and that (1/c)·[α'^∨] is the restricted coroot.
    pub fn check(&self, d: &RootDatum) -> Result<()> {
        for fc in &self.coefficients {
            let r = &self.folded.roots()[fc.restricted];
            if r.form.eval(&r.coroot) != q(2) {
                return Err(Error::Consistency(format!("⟨ᾱ, ᾱ^∨⟩ ≠ 2 for {}", r.form)));
            }
            let proj = self.project(&d.roots()[fc.root].coroot);
            if proj != r.coroot.scale(&fc.c) {
                return Err(Error::Consistency("projected coroot is not c times the restricted coroot".into()));
            }
        }
        if !self.coefficient_range_ok() {
            return Err(Error::Consistency("coefficient outside (0,1]".into()));
        }
        Ok(())
    }

    pub fn distinct_coefficients(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.coefficients.iter().map(|c| c.c.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn check_fold(t: &str, sigma: &[usize], order: usize, expect: &str, cs: &[Q]) -> Folding {
        let d = RootDatum::new(t, 0).unwrap();
        let f = fold(&d, sigma, order).unwrap();
        assert_eq!(f.folded.label(), expect);
        f.check(&d).unwrap();
        assert_eq!(f.distinct_coefficients(), cs);
        let big = WeylGroup::new(&d).unwrap();
        let small = WeylGroup::new(&f.folded).unwrap();
        let emb = f.weyl_embedding(&big, &small).unwrap();
        // The embedding is a homomorphism.
        for a in 0..small.order() {
            for b in 0..small.order() {
                assert_eq!(emb[small.mul(a, b)], big.mul(emb[a], emb[b]));
            }
        }
        f
    }

    #[test]
    fn identity_folding() {
        check_fold("A1", &[0], 1, "A1", &[q(1)]);
        check_fold("B2", &[0, 1], 1, "B2", &[q(1)]);
    }

    #[test]
    fn a3_to_c2() {
        let f = check_fold("A3", &[2, 1, 0], 2, "C2", &[frac(1, 2), q(1)]);
        assert_eq!(f.folded.roots().len(), 8);
    }

    #[test]
    fn d4_to_g2() {
        let f = check_fold("D4", &[2, 1, 3, 0], 3, "G2", &[frac(1, 3), q(1)]);
        assert_eq!(f.folded.roots().len(), 12);
    }

    #[test]
    fn a2_gives_non_reduced_bc1() {
        let f = check_fold("A2", &[1, 0], 2, "A1", &[frac(1, 4), q(1)]);
        assert_eq!(f.folded.roots().len(), 4);
        assert!(!f.folded.is_reduced_system());
        assert_eq!(f.folded.reduced_positive_roots().count(), 1);
    }

    #[test]
    fn a4_gives_bc2() {
        let f = check_fold("A4", &[3, 2, 1, 0], 2, "B2", &[frac(1, 4), frac(1, 2), q(1)]);
        assert_eq!(f.folded.roots().len(), 12);
        assert_eq!(f.folded.reduced_positive_roots().count(), 4);
    }

    #[test]
    fn rejects_non_automorphism() {
        let d = RootDatum::new("B2", 0).unwrap();
        assert!(matches!(fold(&d, &[1, 0], 2), Err(Error::InvalidFolding(_))));
        let d = RootDatum::new("A3", 0).unwrap();
        assert!(fold(&d, &[2, 1, 0], 3).is_err());
        assert!(fold(&d, &[2, 1, 0], 4).is_ok());
        assert!(fold(&d, &[0, 0, 1], 1).is_err());
    }
}
