//! Standard and semi-standard parabolics as subsets of simple roots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};
use crate::rootdata::{AForm, AVector, RootDatum, WeylGroup};

/// P_I for a bitmask I of simple roots (bit i is α_{i+1}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardParabolic {
    pub mask: u32,
}

impl StandardParabolic {
    pub fn borel() -> Self {
        Self { mask: 0 }
    }
    pub fn full(d: &RootDatum) -> Self {
        Self { mask: d.full_mask() }
    }
    pub fn from_indices(d: &RootDatum, idx: &[usize]) -> Result<Self> {
        let mut mask = 0;
        for &i in idx {
            if i >= d.rank_ss() {
                return Err(Error::Parse(format!("simple root index {} out of range", i + 1)));
            }
            mask |= 1 << i;
        }
        Ok(Self { mask })
    }
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|i| self.mask & (1 << i) != 0).collect()
    }
    pub fn contains(&self, i: usize) -> bool {
        self.mask & (1 << i) != 0
    }
    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }
    pub fn is_subset(&self, o: &Self) -> bool {
        self.mask & !o.mask == 0
    }
    /// dim 𝔞_P^G.
    pub fn corank(&self, d: &RootDatum) -> usize {
        d.rank_ss() - self.size()
    }
}

impl fmt::Display for StandardParabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// w^{-1} P_I w, with w minimal in W_I\W.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiStandardParabolic {
    pub std: StandardParabolic,
    pub rep: usize,
}

impl SemiStandardParabolic {
    pub fn new(w: &WeylGroup, std: StandardParabolic, elem: usize) -> Self {
        Self { std, rep: w.min_coset_rep(std.mask, elem) }
    }

    pub fn describe(&self, w: &WeylGroup) -> String {
        format!("({}, {})", self.std, w.element(self.rep).word_string())
    }

    /// Inclusion of the parabolics: I ⊆ I' and W_{I'}w = W_{I'}w'.
    pub fn is_subset(&self, w: &WeylGroup, o: &Self) -> bool {
        self.std.is_subset(&o.std) && w.min_coset_rep(o.std.mask, self.rep) == o.rep
    }

    /// Inclusion in a standard parabolic Q.
    pub fn in_standard(&self, w: &WeylGroup, q: &StandardParabolic) -> bool {
        self.std.is_subset(q) && w.in_parabolic(q.mask, self.rep)
    }

    /// Every element of the coset W_I·w.
    pub fn chambers(&self, w: &WeylGroup) -> Vec<usize> {
        w.parabolic_elements(self.std.mask).into_iter().map(|u| w.mul(u, self.rep)).collect()
    }
}

pub fn enumerate_standard(d: &RootDatum) -> Vec<StandardParabolic> {
    (0..=d.full_mask()).map(|mask| StandardParabolic { mask }).collect()
}

/// All semi-standard parabolics, grouped by standard type.
pub fn enumerate_semistandard(d: &RootDatum, w: &WeylGroup) -> Vec<SemiStandardParabolic> {
    let mut out = vec![];
    for std in enumerate_standard(d) {
        for x in 0..w.order() {
            if w.min_coset_rep(std.mask, x) == x {
                out.push(SemiStandardParabolic { std, rep: x });
            }
        }
    }
    out
}

fn check_pair(p: &StandardParabolic, q: &StandardParabolic) -> Result<()> {
    if !p.is_subset(q) {
        return Err(Error::NotContained { inner: p.to_string(), outer: q.to_string() });
    }
    Ok(())
}

/// C_I^{-1} as a dense matrix indexed by the members of I.
fn cartan_inverse(d: &RootDatum, idx: &[usize]) -> Vec<Vec<Q>> {
    let c = d.cartan_matrix();
    let sub: Vec<Vec<Q>> = idx.iter().map(|&i| idx.iter().map(|&j| q(c[i][j])).collect()).collect();
    linalg::inverse(&sub).unwrap_or_default()
}

/// Decomposes v = (component in 𝔞_B^P) + (component in 𝔞_P).
pub fn project_ap(d: &RootDatum, v: &AVector, p: &StandardParabolic) -> (AVector, AVector) {
    let idx = p.indices();
    let inv = cartan_inverse(d, &idx);
    let h: Vec<Q> = idx.iter().map(|&i| v.0[i].clone()).collect();
    let coeff = linalg::mat_vec(&inv, &h);
    let mut inner = AVector::zeros(v.dim());
    for (c, &j) in coeff.iter().zip(&idx) {
        inner = &inner + &d.simple_coroots()[j].scale(c);
    }
    let outer = v - &inner;
    (inner, outer)
}

/// α ∘ π_P as a covector.
pub fn compose_pi(d: &RootDatum, f: &AForm, p: &StandardParabolic) -> AForm {
    let idx = p.indices();
    let inv = cartan_inverse(d, &idx);
    // f(π_P H) = f(H) − Σ_{j} f(α_j^∨) c_j,  c = C_I^{-1} h_I.
    let fj: Vec<Q> = idx.iter().map(|&j| f.eval(&d.simple_coroots()[j])).collect();
    let mut out = f.clone();
    for (a, &k) in idx.iter().enumerate() {
        let s: Q = (0..idx.len()).map(|b| &fj[b] * &inv[b][a]).sum();
        out.0[k] -= s;
    }
    out
}

/// Δ_P^Q as covectors on 𝔞_B.
pub fn delta_pq(d: &RootDatum, p: &StandardParabolic, q: &StandardParabolic) -> Result<Vec<AForm>> {
    check_pair(p, q)?;
    Ok(q.indices()
        .into_iter()
        .filter(|&i| !p.contains(i))
        .map(|i| compose_pi(d, &d.simple_roots()[i], p))
        .collect())
}

/// ϖ_j^Q for j ∈ J − I: the fundamental weights of M_Q, zero on 𝔞_Q.
pub fn relative_weight(d: &RootDatum, j: usize, q: &StandardParabolic) -> AForm {
    let idx = q.indices();
    let inv = cartan_inverse(d, &idx);
    let a = idx.iter().position(|&k| k == j).expect("index in Q");
    let mut out = AForm::zeros(d.dim());
    for (b, &k) in idx.iter().enumerate() {
        out.0[k] = inv[a][b].clone();
    }
    out
}

/// Δ̂_P^Q as covectors on 𝔞_B.
pub fn hat_delta_pq(d: &RootDatum, p: &StandardParabolic, q: &StandardParabolic) -> Result<Vec<AForm>> {
    check_pair(p, q)?;
    Ok(q.indices().into_iter().filter(|&i| !p.contains(i)).map(|j| relative_weight(d, j, q)).collect())
}

/// Which lattice of 𝔞_B^G is projected in the general position test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocharacterLattice {
    /// Z{α_i^∨}: simply connected groups such as SL_n.
    Coroot,
    /// Z{ϖ_i^∨}: adjoint groups.
    Coweight,
}

/// Whether v ∈ Z-span(gens), all vectors rational of equal length.
pub fn in_lattice(gens: &[Vec<Q>], v: &[Q]) -> bool {
    let den = linalg::lcm_denoms(gens.iter().flatten().chain(v));
    let to_int = |x: &Q| (x * Q::from_integer(den.clone())).to_integer();
    let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(to_int).collect()).collect();
    let mut target: Vec<BigInt> = v.iter().map(to_int).collect();
    let n = target.len();
    let mut r0 = 0;
    for col in 0..n {
        // Euclid on column `col` among rows r0.. to get a single pivot.
        loop {
            let nz: Vec<usize> = (r0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&r| rows[r][col].abs()).unwrap();
            for &r in &nz {
                if r != piv {
                    let f = rows[r][col].div_floor(&rows[piv][col]);
                    let sub: Vec<BigInt> = rows[piv].iter().map(|x| x * &f).collect();
                    for (x, y) in rows[r].iter_mut().zip(sub) {
                        *x -= y;
                    }
                }
            }
        }
        let Some(piv) = (r0..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            if !target[col].is_zero() {
                return false;
            }
            continue;
        };
        rows.swap(r0, piv);
        let (quo, rem) = target[col].div_rem(&rows[r0][col]);
        if !rem.is_zero() {
            return false;
        }
        for (t, x) in target.iter_mut().zip(&rows[r0]) {
            *t -= x * &quo;
        }
        r0 += 1;
    }
    target.iter().all(|x| x.is_zero())
}

/// The 𝔞_P-projection of ξ avoids (projected lattice) + 𝔞_G, for every
/// proper standard P.
pub fn xi_general_position(d: &RootDatum, xi: &AVector, lattice: CocharacterLattice) -> bool {
    let n = d.rank_ss();
    let gens: Vec<AVector> = (0..n)
        .map(|i| match lattice {
            CocharacterLattice::Coroot => d.simple_coroots()[i].clone(),
            CocharacterLattice::Coweight => d.fundamental_coweight(i),
        })
        .collect();
    enumerate_standard(d).into_iter().filter(|p| p.mask != d.full_mask()).all(|p| {
        // Coordinates on 𝔞_P^G: ϖ_k for k ∉ I.
        let coords: Vec<&AForm> = (0..n).filter(|&k| !p.contains(k)).map(|k| &d.fundamental_weights()[k]).collect();
        let y = |v: &AVector| -> Vec<Q> {
            let pv = project_ap(d, v, &p).1;
            coords.iter().map(|f| f.eval(&pv)).collect()
        };
        let g: Vec<Vec<Q>> = gens.iter().map(y).collect();
        !in_lattice(&g, &y(xi))
    })
}

/// The same test over every semi-standard proper P, i.e. for every Weyl
/// conjugate of ξ.
pub fn xi_general_position_semistandard(d: &RootDatum, w: &WeylGroup, xi: &AVector, lattice: CocharacterLattice) -> bool {
    (0..w.order()).all(|x| xi_general_position(d, &w.act_vec(x, xi), lattice))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;

    fn datum(t: &str) -> (RootDatum, WeylGroup) {
        let d = RootDatum::new(t, 0).unwrap();
        let w = WeylGroup::new(&d).unwrap();
        (d, w)
    }

    #[test]
    fn counts() {
        for (t, s, ss) in [("A1", 2, 3), ("A2", 4, 13), ("B2", 4, 17), ("A3", 8, 75)] {
            let (d, w) = datum(t);
            assert_eq!(enumerate_standard(&d).len(), s);
            assert_eq!(enumerate_semistandard(&d, &w).len(), ss, "{t}");
        }
    }

    #[test]
    fn delta_examples() {
        let (d, _) = datum("A2");
        let b = StandardParabolic::borel();
        let g = StandardParabolic::full(&d);
        let p1 = StandardParabolic { mask: 1 };
        assert_eq!(delta_pq(&d, &b, &g).unwrap(), d.simple_roots().to_vec());
        let dp = delta_pq(&d, &p1, &g).unwrap();
        assert_eq!(dp, vec![AForm(vec![frac(1, 2), q(1)])]);
        assert!(delta_pq(&d, &p1, &p1).unwrap().is_empty());
        assert!(delta_pq(&d, &g, &p1).is_err());
        assert_eq!(hat_delta_pq(&d, &p1, &g).unwrap(), vec![d.fundamental_weights()[1].clone()]);
    }

    #[test]
    fn projection_examples() {
        let (d, _) = datum("A2");
        let a1 = d.simple_coroots()[0].clone();
        assert_eq!(project_ap(&d, &a1, &StandardParabolic::full(&d)), (a1.clone(), AVector::zeros(2)));
        let (inner, outer) = project_ap(&d, &a1, &StandardParabolic { mask: 1 });
        assert_eq!(inner, a1);
        assert!(outer.is_zero());
        let h = AVector::from_ints(&[1, 0]);
        let (inner, outer) = project_ap(&d, &h, &StandardParabolic { mask: 1 });
        assert_eq!(&inner + &outer, h);
        assert_eq!(d.simple_roots()[0].eval(&outer), q(0));
        let (d1, _) = datum("A1");
        let a = d1.simple_coroots()[0].clone();
        assert_eq!(project_ap(&d1, &a, &StandardParabolic::borel()), (AVector::zeros(1), a));
    }

    #[test]
    fn general_position_examples() {
        let (d, w) = datum("A1");
        let a = d.simple_coroots()[0].clone();
        assert!(!xi_general_position(&d, &AVector::zeros(1), CocharacterLattice::Coroot));
        assert!(xi_general_position(&d, &a.scale(&frac(1, 2)), CocharacterLattice::Coroot));
        assert!(!xi_general_position(&d, &a, CocharacterLattice::Coroot));
        assert!(!xi_general_position(&d, &a.scale(&frac(1, 2)), CocharacterLattice::Coweight));
        assert!(xi_general_position_semistandard(&d, &w, &a.scale(&frac(1, 2)), CocharacterLattice::Coroot));
    }

    #[test]
    fn lattice_membership() {
        let g = vec![vec![q(2), q(0)], vec![q(1), q(3)]];
        assert!(in_lattice(&g, &[q(3), q(3)]));
        assert!(!in_lattice(&g, &[q(1), q(0)]));
        assert!(in_lattice(&g, &[q(0), q(6)]));
        assert!(!in_lattice(&g, &[frac(1, 2), q(0)]));
    }
}
