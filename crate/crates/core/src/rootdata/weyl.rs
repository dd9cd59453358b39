//! The Weyl group as an explicit table of integer matrices.

use std::collections::HashMap;

use super::{AForm, AVector, RootDatum};
use crate::error::{Error, Result};
use crate::linalg::{q, Q};

/// An element of W acting on 𝔞_B. Matrices are integral in coweight
/// coordinates. `reduced_word` holds 0-based simple reflection indices and is
/// the lexicographically smallest reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub reduced_word: Vec<usize>,
    pub length: usize,
}

impl WeylElement {
    pub fn matrix_q(&self) -> Vec<Vec<Q>> {
        crate::linalg::mat_q(&self.matrix)
    }

    /// Reduced word with 1-based letters, as printed by the CLI.
    pub fn word_string(&self) -> String {
        if self.reduced_word.is_empty() {
            return "e".into();
        }
        self.reduced_word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("")
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<Vec<i64>>, usize>,
    mul: Vec<usize>,
    inv: Vec<usize>,
    simple: Vec<usize>,
    /// root_perm[w][r] = index of w·root_r.
    root_perm: Vec<Vec<usize>>,
    rank_ss: usize,
}

const MAX_ORDER: usize = 5000;

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

impl WeylGroup {
    pub fn new(d: &RootDatum) -> Result<Self> {
        let n = d.rank_ss();
        let dim = d.dim();
        let id: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| (i == j) as i64).collect()).collect();
        let gens: Vec<Vec<Vec<i64>>> = (0..n)
            .map(|i| {
                let mut m = id.clone();
                for k in 0..n {
                    m[k][i] -= d.cartan_matrix()[k][i];
                }
                m
            })
            .collect();

        let mut elements = vec![WeylElement { matrix: id.clone(), reduced_word: vec![], length: 0 }];
        let mut lookup = HashMap::from([(id, 0usize)]);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = vec![];
            for &w in &level {
                for (i, g) in gens.iter().enumerate() {
                    let m = matmul(&elements[w].matrix, g);
                    if lookup.contains_key(&m) {
                        continue;
                    }
                    if elements.len() >= MAX_ORDER {
                        return Err(Error::Unsupported(format!("Weyl group of {} exceeds {MAX_ORDER} elements", d.label())));
                    }
                    let mut word = elements[w].reduced_word.clone();
                    word.push(i);
                    let len = word.len();
                    lookup.insert(m.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(WeylElement { matrix: m, reduced_word: word, length: len });
                }
            }
            level = next;
        }

        let order = elements.len();
        let mut mul = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let m = matmul(&elements[a].matrix, &elements[b].matrix);
                mul[a * order + b] = lookup[&m];
            }
        }
        let inv = (0..order).map(|a| (0..order).find(|&b| mul[a * order + b] == 0).unwrap()).collect();
        let simple = gens.iter().map(|g| lookup[g]).collect();

        let mut root_perm = Vec::with_capacity(order);
        for e in &elements {
            let mq = e.matrix_q();
            let mut perm = Vec::with_capacity(d.roots().len());
            for r in d.roots() {
                // w·β = β ∘ w^{-1}; via coroots: w·β^∨ = M β^∨, and the root
                // is determined by its coroot.
                let v = AVector(crate::linalg::mat_vec(&mq, &r.coroot.0));
                let img = d
                    .roots()
                    .iter()
                    .position(|s| s.coroot == v)
                    .ok_or_else(|| Error::Consistency("Weyl element does not permute coroots".into()))?;
                perm.push(img);
            }
            root_perm.push(perm);
        }
        Ok(WeylGroup { elements, lookup, mul, inv, simple, root_perm, rank_ss: n })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }
    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length
    }
    pub fn index_of(&self, m: &[Vec<i64>]) -> Option<usize> {
        self.lookup.get(m).copied()
    }
    pub fn longest(&self) -> usize {
        (0..self.order()).max_by_key(|&w| self.length(w)).unwrap()
    }

    /// Index of the element with the given 0-based word.
    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        word.iter().try_fold(0, |w, &i| {
            if i >= self.rank_ss {
                return Err(Error::Parse(format!("letter {} out of range", i + 1)));
            }
            Ok(self.mul(w, self.simple[i]))
        })
    }

    /// Index of w·root_r.
    pub fn act_root(&self, w: usize, r: usize) -> usize {
        self.root_perm[w][r]
    }

    pub fn act_vec(&self, w: usize, v: &AVector) -> AVector {
        let m = &self.elements[w].matrix;
        AVector(m.iter().map(|row| row.iter().zip(&v.0).map(|(&a, x)| q(a) * x).sum()).collect())
    }

    /// w·λ = λ ∘ w^{-1}.
    pub fn act_form(&self, w: usize, f: &AForm) -> AForm {
        let m = &self.elements[self.inv(w)].matrix;
        let n = m.len();
        AForm((0..n).map(|j| (0..n).map(|i| &f.0[i] * q(m[i][j])).sum()).collect())
    }

    /// Whether w lies in W_I (I given as a bitmask).
    pub fn in_parabolic(&self, mask: u32, w: usize) -> bool {
        self.elements[w].reduced_word.iter().all(|&i| mask & (1 << i) != 0)
    }

    /// Elements of W_I.
    pub fn parabolic_elements(&self, mask: u32) -> Vec<usize> {
        (0..self.order()).filter(|&w| self.in_parabolic(mask, w)).collect()
    }

    /// The minimal-length element of the coset W_I·w.
    pub fn min_coset_rep(&self, mask: u32, mut w: usize) -> usize {
        'outer: loop {
            for i in 0..self.rank_ss {
                if mask & (1 << i) != 0 {
                    let u = self.mul(self.simple[i], w);
                    if self.length(u) < self.length(w) {
                        w = u;
                        continue 'outer;
                    }
                }
            }
            return w;
        }
    }

    /// Number of positive roots sent to negative roots by w.
    pub fn inversion_count(&self, d: &RootDatum, w: usize) -> usize {
        d.positive_roots().filter(|(r, _)| !d.roots()[self.act_root(w, *r)].positive).count()
    }

    /// Whether w sends every simple root of I to a positive root.
    pub fn keeps_positive(&self, d: &RootDatum, mask: u32, w: usize) -> bool {
        (0..self.rank_ss)
            .filter(|i| mask & (1 << i) != 0)
            .all(|i| d.roots()[self.act_root(w, i)].positive)
    }
}
