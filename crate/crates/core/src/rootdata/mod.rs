//! Split root data realized inside 𝔞_B and its dual.
//!
//! Vectors use coordinates h_i = ⟨α_i, H⟩ followed by central coordinates,
//! so the basis is the fundamental coweights plus a basis of 𝔞_G. Covectors
//! are expanded in the simple roots followed by the dual central basis.

pub mod fold;
pub mod weyl;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, q, Q};

pub use fold::{fold, FoldCoefficient, Folding};
pub use weyl::{WeylElement, WeylGroup};

macro_rules! coords {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub Vec<Q>);

        impl $name {
            pub fn zeros(n: usize) -> Self {
                Self(vec![Q::zero(); n])
            }

            pub fn basis(i: usize, n: usize) -> Self {
                let mut v = Self::zeros(n);
                v.0[i] = Q::one();
                v
            }

            pub fn from_ints(xs: &[i64]) -> Self {
                Self(xs.iter().map(|&x| q(x)).collect())
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn scale(&self, c: &Q) -> Self {
                Self(self.0.iter().map(|x| x * c).collect())
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|x| x.is_zero())
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, o: &$name) -> $name {
                $name(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, o: &$name) -> $name {
                $name(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|a| -a).collect())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(linalg::fmt_q).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    };
}

coords!(AVector);
coords!(AForm);

impl AForm {
    /// Unchecked evaluation; callers guarantee matching dimensions.
    pub fn eval(&self, v: &AVector) -> Q {
        debug_assert_eq!(self.dim(), v.dim());
        linalg::dot(&self.0, &v.0)
    }
}

/// ⟨f, v⟩.
pub fn pairing(f: &AForm, v: &AVector) -> Result<Q> {
    if f.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: v.dim() });
    }
    Ok(f.eval(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub form: AForm,
    pub coroot: AVector,
    pub positive: bool,
    /// α/2 is not a root.
    pub reduced: bool,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    rank_ss: usize,
    rank_central: usize,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<AForm>,
    simple_coroots: Vec<AVector>,
    fundamental_weights: Vec<AForm>,
    roots: Vec<Root>,
    root_index: HashMap<AForm, usize>,
    gram: Vec<Vec<Q>>,
}

const MAX_ROOTS: usize = 4096;

impl RootDatum {
    /// Builds the datum named by `spec`: a label such as `A2`, `B3`, `G2`,
    /// a product `A1xA1`, or an explicit matrix `[[2,-1],[-1,2]]`.
    pub fn new(spec: &str, rank_central: usize) -> Result<Self> {
        let (label, cartan) = parse_type(spec)?;
        Self::from_cartan_labeled(label, cartan, rank_central)
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>, rank_central: usize) -> Result<Self> {
        let label = identify(&cartan).unwrap_or_else(|| "custom".to_string());
        Self::from_cartan_labeled(label, cartan, rank_central)
    }

    fn from_cartan_labeled(label: String, cartan: Vec<Vec<i64>>, rank_central: usize) -> Result<Self> {
        let gram = validate_cartan(&cartan)?;
        let n = cartan.len();
        let dim = n + rank_central;
        let coroots = simple_coroots_of(&cartan, rank_central);
        let simple: Vec<AForm> = (0..n).map(|i| AForm::basis(i, dim)).collect();

        // Reflection closure on (root, coroot) pairs.
        let mut seen: HashMap<AForm, AVector> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            seen.insert(simple[i].clone(), coroots[i].clone());
            queue.push_back((simple[i].clone(), coroots[i].clone()));
        }
        while let Some((f, v)) = queue.pop_front() {
            for i in 0..n {
                let (f2, v2) = reflect_pair(&simple[i], &coroots[i], &f, &v);
                if !seen.contains_key(&f2) {
                    if seen.len() >= MAX_ROOTS {
                        return Err(Error::InvalidCartan("root system too large".into()));
                    }
                    seen.insert(f2.clone(), v2.clone());
                    queue.push_back((f2, v2));
                }
            }
        }
        let pairs: Vec<(AForm, AVector)> = seen.into_iter().collect();
        Self::assemble(label, cartan, rank_central, gram, pairs)
    }

    /// Builds a datum from an explicit root list in the coordinates above.
    /// The simple roots must be the coordinate functionals and the list must
    /// be closed under its own reflections and negation.
    pub fn from_parts(
        label: String,
        cartan: Vec<Vec<i64>>,
        rank_central: usize,
        roots: Vec<(AForm, AVector)>,
    ) -> Result<Self> {
        let gram = validate_cartan(&cartan)?;
        let n = cartan.len();
        let dim = n + rank_central;
        let map: HashMap<AForm, AVector> = roots.iter().cloned().collect();
        if map.len() != roots.len() {
            return Err(Error::InvalidCartan("duplicate roots".into()));
        }
        let expected = simple_coroots_of(&cartan, rank_central);
        for i in 0..n {
            match map.get(&AForm::basis(i, dim)) {
                Some(v) if *v == expected[i] => {}
                _ => return Err(Error::InvalidCartan(format!("simple root {} missing or inconsistent", i + 1))),
            }
        }
        for (f, v) in &roots {
            if f.dim() != dim || v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: f.dim() });
            }
            if f.eval(v) != q(2) {
                return Err(Error::InvalidCartan(format!("⟨α, α^∨⟩ ≠ 2 for {f}")));
            }
            for (g, w) in &roots {
                if !g.eval(v).is_integer() {
                    return Err(Error::InvalidCartan(format!("non-integral pairing ⟨{g}, {v}⟩")));
                }
                let (g2, w2) = reflect_pair(f, v, g, w);
                if map.get(&g2) != Some(&w2) {
                    return Err(Error::InvalidCartan(format!("root list not closed under reflection in {f}")));
                }
            }
            if map.get(&-f) != Some(&-v) {
                return Err(Error::InvalidCartan(format!("negative of {f} missing")));
            }
        }
        Self::assemble(label, cartan, rank_central, gram, roots)
    }

    fn assemble(
        label: String,
        cartan: Vec<Vec<i64>>,
        rank_central: usize,
        gram: Vec<Vec<Q>>,
        pairs: Vec<(AForm, AVector)>,
    ) -> Result<Self> {
        let n = cartan.len();
        let dim = n + rank_central;
        let forms: std::collections::HashSet<&AForm> = pairs.iter().map(|p| &p.0).collect();
        let mut roots: Vec<Root> = Vec::with_capacity(pairs.len());
        for (f, v) in &pairs {
            let pos = f.0[..n].iter().all(|x| !x.is_negative());
            let neg = f.0[..n].iter().all(|x| !x.is_positive());
            if pos == neg {
                return Err(Error::InvalidCartan(format!("root {f} is neither positive nor negative")));
            }
            let half = f.scale(&linalg::frac(1, 2));
            roots.push(Root { form: f.clone(), coroot: v.clone(), positive: pos, reduced: !forms.contains(&half) });
        }
        // Positive roots by height, then their negatives in the same order.
        let key = |r: &Root| {
            let h: Q = r.form.0.iter().map(|x| x.abs()).sum();
            let abs: Vec<Q> = r.form.0.iter().map(|x| x.abs()).collect();
            (!r.positive, h, std::cmp::Reverse(abs))
        };
        roots.sort_by_key(key);
        let root_index = roots.iter().enumerate().map(|(i, r)| (r.form.clone(), i)).collect();
        let cq = linalg::mat_q(&cartan);
        let cinv = linalg::inverse(&cq).ok_or_else(|| Error::InvalidCartan("singular Cartan matrix".into()))?;
        let fundamental_weights = (0..n)
            .map(|i| {
                let mut w = AForm::zeros(dim);
                w.0[..n].clone_from_slice(&cinv[i]);
                w
            })
            .collect();
        Ok(RootDatum {
            label,
            rank_ss: n,
            rank_central,
            simple_roots: (0..n).map(|i| AForm::basis(i, dim)).collect(),
            simple_coroots: simple_coroots_of(&cartan, rank_central),
            cartan,
            fundamental_weights,
            roots,
            root_index,
            gram,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn rank_ss(&self) -> usize {
        self.rank_ss
    }
    pub fn rank_central(&self) -> usize {
        self.rank_central
    }
    pub fn dim(&self) -> usize {
        self.rank_ss + self.rank_central
    }
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    pub fn simple_roots(&self) -> &[AForm] {
        &self.simple_roots
    }
    pub fn simple_coroots(&self) -> &[AVector] {
        &self.simple_coroots
    }
    pub fn fundamental_weights(&self) -> &[AForm] {
        &self.fundamental_weights
    }
    /// ϖ_i^∨, the dual basis to the simple roots inside 𝔞_B^G.
    pub fn fundamental_coweight(&self, i: usize) -> AVector {
        AVector::basis(i, self.dim())
    }
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }
    pub fn positive_roots(&self) -> impl Iterator<Item = (usize, &Root)> {
        self.roots.iter().enumerate().filter(|(_, r)| r.positive)
    }
    pub fn reduced_positive_roots(&self) -> impl Iterator<Item = (usize, &Root)> {
        self.positive_roots().filter(|(_, r)| r.reduced)
    }
    pub fn root_index(&self, f: &AForm) -> Option<usize> {
        self.root_index.get(f).copied()
    }
    pub fn is_reduced_system(&self) -> bool {
        self.roots.iter().all(|r| r.reduced)
    }

    /// Indices of simple roots with non-zero coefficient in `f`.
    pub fn support(&self, f: &AForm) -> u32 {
        (0..self.rank_ss).filter(|&i| !f.0[i].is_zero()).fold(0, |m, i| m | (1 << i))
    }

    /// W-invariant inner product on covectors, short roots of each simple
    /// factor having squared length 2. Central components are ignored.
    pub fn inner(&self, a: &AForm, b: &AForm) -> Q {
        let n = self.rank_ss;
        let mut s = Q::zero();
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b.0[j].is_zero() && !self.gram[i][j].is_zero() {
                    s += &a.0[i] * &b.0[j] * &self.gram[i][j];
                }
            }
        }
        s
    }

    pub fn check_vector(&self, v: &AVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.dim() });
        }
        Ok(())
    }

    /// Mask with every simple root.
    pub fn full_mask(&self) -> u32 {
        (1u32 << self.rank_ss) - 1
    }
}

/// Reflects (g, w) in the root (f, v).
fn reflect_pair(f: &AForm, v: &AVector, g: &AForm, w: &AVector) -> (AForm, AVector) {
    let a = g.eval(v);
    let b = f.eval(w);
    (g - &f.scale(&a), w - &v.scale(&b))
}

fn simple_coroots_of(cartan: &[Vec<i64>], rank_central: usize) -> Vec<AVector> {
    let n = cartan.len();
    (0..n)
        .map(|j| {
            let mut v = AVector::zeros(n + rank_central);
            for i in 0..n {
                v.0[i] = q(cartan[i][j]);
            }
            v
        })
        .collect()
}

/// Checks finite type and returns the normalized Gram matrix (α_i, α_j).
pub fn validate_cartan(c: &[Vec<i64>]) -> Result<Vec<Vec<Q>>> {
    let n = c.len();
    let bad = |m: String| Err(Error::InvalidCartan(m));
    if n == 0 {
        return bad("empty Cartan matrix".into());
    }
    if n > 16 {
        return bad("rank above 16 is not supported".into());
    }
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return bad(format!("row {} has length {}, expected {n}", i + 1, row.len()));
        }
        for (j, &x) in row.iter().enumerate() {
            if i == j && x != 2 {
                return bad(format!("diagonal entry ({},{}) is {x}, expected 2", i + 1, j + 1));
            }
            if i != j && x > 0 {
                return bad(format!("off-diagonal entry ({},{}) is positive", i + 1, j + 1));
            }
            if i != j && (x == 0) != (c[j][i] == 0) {
                return bad(format!("entries ({},{}) and ({},{}) disagree on vanishing", i + 1, j + 1, j + 1, i + 1));
            }
        }
    }
    // Symmetrize: C_ij ℓ_j = C_ji ℓ_i.
    let mut len: Vec<Option<Q>> = vec![None; n];
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for start in 0..n {
        if len[start].is_some() {
            continue;
        }
        len[start] = Some(Q::one());
        comp[start] = ncomp;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                let li = len[i].clone().unwrap();
                let lj = li * q(c[j][i]) / q(c[i][j]);
                match &len[j] {
                    None => {
                        len[j] = Some(lj);
                        comp[j] = ncomp;
                        stack.push(j);
                    }
                    Some(x) if *x != lj => return bad("Cartan matrix is not symmetrizable".into()),
                    _ => {}
                }
            }
        }
        ncomp += 1;
    }
    let mut len: Vec<Q> = len.into_iter().map(Option::unwrap).collect();
    for k in 0..ncomp {
        let min = (0..n).filter(|&i| comp[i] == k).map(|i| len[i].clone()).min().unwrap();
        for i in 0..n {
            if comp[i] == k {
                len[i] = &len[i] * q(2) / &min;
            }
        }
    }
    let gram: Vec<Vec<Q>> =
        (0..n).map(|i| (0..n).map(|j| q(c[i][j]) * &len[j] / q(2)).collect()).collect();
    for k in 1..=n {
        let minor: Vec<Vec<Q>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
        if !linalg::det(&minor).is_positive() {
            return bad("Cartan matrix is not of finite type".into());
        }
    }
    Ok(gram)
}

/// Cartan matrix of an irreducible type in Bourbaki numbering.
pub fn irreducible_cartan(family: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    let chain = |c: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    };
    match (family, n) {
        ('A', n) if n >= 1 => chain(&mut c, n),
        ('B', n) if n >= 2 => {
            chain(&mut c, n);
            c[n - 2][n - 1] = -2;
        }
        ('C', n) if n >= 2 => {
            chain(&mut c, n);
            c[n - 1][n - 2] = -2;
        }
        ('D', n) if n >= 4 => {
            chain(&mut c, n - 1);
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        ('G', 2) => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
        ('F', 4) => {
            chain(&mut c, 4);
            c[1][2] = -2;
        }
        _ => return None,
    }
    Some(c)
}

fn block_diag(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut c = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                c[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    c
}

/// Parses a type label or explicit matrix into (label, Cartan matrix).
pub fn parse_type(spec: &str) -> Result<(String, Vec<Vec<i64>>)> {
    let s = spec.trim();
    if s.starts_with('[') {
        let m: Vec<Vec<i64>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("Cartan matrix `{s}`: {e}")))?;
        let label = identify(&m).unwrap_or_else(|| "custom".into());
        return Ok((label, m));
    }
    let mut blocks = vec![];
    let mut names = vec![];
    for part in s.split(['x', '×']) {
        let part = part.trim();
        let mut chars = part.chars();
        let family = chars.next().ok_or_else(|| Error::UnknownType(spec.into()))?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| Error::UnknownType(spec.into()))?;
        let c = irreducible_cartan(family, n).ok_or_else(|| Error::UnknownType(spec.into()))?;
        names.push(format!("{family}{n}"));
        blocks.push(c);
    }
    Ok((names.join("x"), block_diag(&blocks)))
}

/// Names an irreducible Cartan matrix if it matches a Bourbaki type.
pub fn identify(c: &[Vec<i64>]) -> Option<String> {
    let n = c.len();
    for fam in ['A', 'B', 'C', 'D', 'G', 'F'] {
        if irreducible_cartan(fam, n).as_deref() == Some(c) {
            return Some(format!("{fam}{n}"));
        }
    }
    None
}

/// Cartan matrix after reordering indices by `perm` (new i = old perm[i]).
pub fn permute_cartan(c: &[Vec<i64>], perm: &[usize]) -> Vec<Vec<i64>> {
    perm.iter().map(|&i| perm.iter().map(|&j| c[i][j]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (t, n) in [("A1", 2), ("A2", 6), ("A3", 12), ("B2", 8), ("C3", 18), ("D4", 24), ("G2", 12), ("A1xA1", 4)] {
            assert_eq!(RootDatum::new(t, 0).unwrap().roots().len(), n, "{t}");
        }
    }

    #[test]
    fn pairing_examples() {
        let d = RootDatum::new("A2", 0).unwrap();
        let a = d.simple_roots();
        let c = d.simple_coroots();
        assert_eq!(pairing(&a[0], &c[0]).unwrap(), q(2));
        assert_eq!(pairing(&d.fundamental_weights()[0], &c[1]).unwrap(), q(0));
        assert_eq!(pairing(&a[0], &c[1]).unwrap(), q(-1));
        assert!(pairing(&a[0], &AVector::zeros(3)).is_err());
    }

    #[test]
    fn dual_basis_and_central_kernel() {
        let d = RootDatum::new("B3", 2).unwrap();
        for (i, w) in d.fundamental_weights().iter().enumerate() {
            for (j, c) in d.simple_coroots().iter().enumerate() {
                assert_eq!(w.eval(c), q((i == j) as i64));
            }
        }
        let central = AVector::basis(4, 5);
        assert!(d.simple_roots().iter().all(|a| a.eval(&central).is_zero()));
    }

    #[test]
    fn short_roots_have_length_two() {
        let d = RootDatum::new("G2", 0).unwrap();
        let a = d.simple_roots();
        assert_eq!(d.inner(&a[0], &a[0]), q(2));
        assert_eq!(d.inner(&a[1], &a[1]), q(6));
        let d = RootDatum::new("B2", 0).unwrap();
        assert_eq!(d.inner(&d.simple_roots()[1], &d.simple_roots()[1]), q(2));
        assert_eq!(d.inner(&d.simple_roots()[0], &d.simple_roots()[0]), q(4));
    }

    #[test]
    fn rejects_bad_cartan() {
        for m in ["[[2,-1],[-1,1]]", "[[2,1],[1,2]]", "[[2,-1],[0,2]]", "[[2,-2],[-2,2]]", "[[2,-1,-1],[-1,2,-1],[-1,-1,2]]"] {
            assert!(RootDatum::new(m, 0).is_err(), "{m}");
        }
        assert!(matches!(RootDatum::new("Z3", 0), Err(Error::UnknownType(_))));
        assert!(RootDatum::new("B1", 0).is_err());
    }

    #[test]
    fn explicit_matrix_is_identified() {
        let d = RootDatum::new("[[2,-1],[-3,2]]", 0).unwrap();
        assert_eq!(d.label(), "G2");
    }

    #[test]
    fn closure_under_negation() {
        let d = RootDatum::new("C3", 0).unwrap();
        for r in d.roots() {
            let i = d.root_index(&-&r.form).unwrap();
            assert_eq!(d.roots()[i].coroot, -&r.coroot);
        }
        assert!(d.is_reduced_system());
    }
}
