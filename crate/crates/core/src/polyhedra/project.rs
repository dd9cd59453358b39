//! Moving polyhedra between root systems: folding and Levi restriction.

use super::ComplementaryPolyhedron;
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::parabolic::{SemiStandardParabolic, StandardParabolic};
use crate::rootdata::{AVector, Folding, RootDatum, WeylGroup};

/// ([X_{ι(w̄)}])_{w̄} over the folded datum, ι the σ-fixed embedding.
pub fn project_polyhedron(
    cp: &ComplementaryPolyhedron,
    folding: &Folding,
    big: &WeylGroup,
    small: &WeylGroup,
) -> Result<ComplementaryPolyhedron> {
    if cp.vertices.len() != big.order() {
        return Err(Error::MissingVertex(cp.vertices.len().min(big.order())));
    }
    let emb = folding.weyl_embedding(big, small)?;
    Ok(ComplementaryPolyhedron { vertices: emb.iter().map(|&w| folding.project(&cp.vertices[w])).collect() })
}

/// The Levi M_J as a datum of its own, with the coordinate change
/// φ(H) = (α_j(H) for j ∈ J, ϖ_k(H) for k ∉ J, central part).
#[derive(Clone, Debug)]
pub struct LeviRestriction {
    pub levi: RootDatum,
    pub weyl: WeylGroup,
    pub members: Vec<usize>,
    /// levi_to_big[u] is the element of W_J with the same word.
    pub levi_to_big: Vec<usize>,
    map: Vec<Vec<Q>>,
}

pub fn levi_restriction(d: &RootDatum, w: &WeylGroup, j: &StandardParabolic) -> Result<LeviRestriction> {
    let members = j.indices();
    if members.is_empty() {
        return Err(Error::Precondition("the Levi of B has no roots".into()));
    }
    let c = d.cartan_matrix();
    let cartan: Vec<Vec<i64>> = members.iter().map(|&a| members.iter().map(|&b| c[a][b]).collect()).collect();
    let levi = RootDatum::from_cartan(cartan, d.dim() - members.len())?;
    let lw = WeylGroup::new(&levi)?;
    let levi_to_big = lw
        .elements()
        .iter()
        .map(|e| w.from_word(&e.reduced_word.iter().map(|&a| members[a]).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let mut map = vec![];
    for &a in &members {
        map.push(d.simple_roots()[a].0.clone());
    }
    for k in (0..d.rank_ss()).filter(|k| !j.contains(*k)) {
        map.push(d.fundamental_weights()[k].0.clone());
    }
    for z in d.rank_ss()..d.dim() {
        map.push(crate::rootdata::AForm::basis(z, d.dim()).0);
    }
    Ok(LeviRestriction { levi, weyl: lw, members, levi_to_big, map })
}

impl LeviRestriction {
    pub fn coords(&self, v: &AVector) -> AVector {
        AVector(crate::linalg::mat_vec(&self.map, &v.0))
    }

    /// (φ(X_s))_{s ∈ W_J} as a polyhedron for the Levi.
    pub fn restrict(&self, cp: &ComplementaryPolyhedron) -> ComplementaryPolyhedron {
        ComplementaryPolyhedron { vertices: self.levi_to_big.iter().map(|&s| self.coords(&cp.vertices[s])).collect() }
    }

    /// A Levi semi-standard parabolic read in the big datum.
    pub fn lift(&self, p: &SemiStandardParabolic) -> SemiStandardParabolic {
        let mask = p.std.indices().iter().fold(0u32, |m, &a| m | (1 << self.members[a]));
        SemiStandardParabolic { std: StandardParabolic { mask }, rep: self.levi_to_big[p.rep] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::PolyhedronContext;
    use crate::rootdata::fold;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_folding_keeps_family() {
        let c = PolyhedronContext::new(RootDatum::new("A2", 0).unwrap()).unwrap();
        let f = Folding::identity(c.datum()).unwrap();
        let small = WeylGroup::new(&f.folded).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cp = c.random_polyhedron(&mut rng);
        assert_eq!(project_polyhedron(&cp, &f, &c.weyl, &small).unwrap(), cp);
    }

    #[test]
    fn folded_families_validate() {
        for (t, sigma, ord) in [("A3", vec![2, 1, 0], 2), ("D4", vec![2, 1, 3, 0], 3), ("A2", vec![1, 0], 2)] {
            let c = PolyhedronContext::new(RootDatum::new(t, 0).unwrap()).unwrap();
            let f = fold(c.datum(), &sigma, ord).unwrap();
            let small = WeylGroup::new(&f.folded).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for _ in 0..10 {
                let cp = c.random_polyhedron(&mut rng);
                let pr = project_polyhedron(&cp, &f, &c.weyl, &small).unwrap();
                assert_eq!(pr.validate(&f.folded, &small).unwrap(), None, "{t}");
            }
            let k = AVector::from_ints(&vec![1; c.datum().dim()]);
            let cst = ComplementaryPolyhedron::constant(&c.weyl, &k);
            let pr = project_polyhedron(&cst, &f, &c.weyl, &small).unwrap();
            assert_eq!(pr, ComplementaryPolyhedron::constant(&small, &f.project(&k)));
        }
    }

    #[test]
    fn levi_refinement_agrees() {
        for t in ["A2", "B2", "A3", "B3"] {
            let c = PolyhedronContext::new(RootDatum::new(t, 0).unwrap()).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            for _ in 0..10 {
                let cp = c.random_polyhedron(&mut rng);
                for jm in 1..c.datum().full_mask() {
                    let j = StandardParabolic { mask: jm };
                    let lr = levi_restriction(c.datum(), &c.weyl, &j).unwrap();
                    let lc = PolyhedronContext::new(lr.levi.clone()).unwrap();
                    let rcp = lr.restrict(&cp);
                    assert_eq!(rcp.validate(&lc.trunc.datum().clone(), &lc.weyl).unwrap(), None);
                    let small = lc.canonical_refinement(&rcp, &lc.trunc.full()).unwrap();
                    let big = c.canonical_refinement(&cp, &j).unwrap();
                    assert_eq!(lr.lift(&small.parabolic), big.parabolic, "{t} J={j}");
                    assert_eq!(small.degree, big.degree);
                }
            }
        }
    }
}
