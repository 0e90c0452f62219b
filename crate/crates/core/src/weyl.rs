//! Weyl group elements and the combinatorics built on them.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::rootsystem::{CorootVector, RootSystem, Weight};

/// Default enumeration cap: large enough for every rank ≤ 6 classical group,
/// `F₄` and `E₆`.
pub const DEFAULT_WEYL_CAP: u64 = 1_000_000;

/// An element of `W`, stored as a reduced word together with its matrix on
/// fundamental-weight coordinates.
///
/// The word is the lexicographically smallest reduced word (0-based simple
/// reflection indices, leftmost factor first). Equality and hashing use the
/// matrix only.
#[derive(Clone, Debug)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

fn apply_word(rs: &RootSystem, word: &[usize], v: &mut [i64]) {
    for &i in word.iter().rev() {
        rs.reflect_in_place(i, v);
    }
}

/// Greedy straightening of a regular weight, smallest index first. Returns
/// the sequence of reflections applied.
fn straighten_steps(rs: &RootSystem, v: &mut [i64]) -> Vec<usize> {
    let mut steps = Vec::new();
    while let Some(i) = v.iter().position(|&x| x < 0) {
        rs.reflect_in_place(i, v);
        steps.push(i);
    }
    steps
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement {
            word: Vec::new(),
            matrix,
        }
    }

    fn matrix_of_word(rs: &RootSystem, word: &[usize]) -> Vec<Vec<i64>> {
        let n = rs.rank();
        let mut m = vec![vec![0; n]; n];
        for j in 0..n {
            let mut col = vec![0; n];
            col[j] = 1;
            apply_word(rs, word, &mut col);
            for i in 0..n {
                m[i][j] = col[i];
            }
        }
        m
    }

    /// The element `s_{i₁}⋯s_{i_k}` for a word of 0-based indices. The stored
    /// word is re-derived, so any word (reduced or not) is accepted.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        if let Some(&bad) = word.iter().find(|&&i| i >= rs.rank()) {
            return Err(Error::OutOfRange {
                index: bad,
                max: rs.rank().saturating_sub(1),
            });
        }
        Ok(Self::from_matrix(rs, Self::matrix_of_word(rs, word)))
    }

    fn from_matrix(rs: &RootSystem, matrix: Vec<Vec<i64>>) -> Self {
        let mut v: Vec<i64> = matrix.iter().map(|row| row.iter().sum()).collect();
        // w = s_{i₁}⋯s_{i_k} where i₁, …, i_k straighten w(ρ) back to ρ
        let word = straighten_steps(rs, &mut v);
        WeylElement { word, matrix }
    }

    pub fn simple(rs: &RootSystem, i: usize) -> Result<Self> {
        Self::from_word(rs, &[i])
    }

    /// Reduced word, 0-based.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Reduced word with 1-based indices, as printed.
    pub fn word_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        assert_eq!(w.rank(), self.rank());
        Weight(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&w.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `self ∘ other`.
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let n = self.rank();
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        Self::from_matrix(rs, m)
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        Self::from_matrix(rs, Self::matrix_of_word(rs, &rev))
    }

    /// Matrix of the contragredient action on simple-coroot coordinates,
    /// characterised by `⟨λ, w(h)⟩ = ⟨w⁻¹(λ), h⟩`.
    pub fn coroot_matrix(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        let n = rs.rank();
        let mut m = vec![vec![0; n]; n];
        for j in 0..n {
            let mut col = vec![0; n];
            col[j] = 1;
            for &i in self.word.iter().rev() {
                rs.reflect_coroot_in_place(i, &mut col);
            }
            for i in 0..n {
                m[i][j] = col[i];
            }
        }
        m
    }

    pub fn apply_coroot(&self, rs: &RootSystem, h: &CorootVector) -> CorootVector {
        let m = self.coroot_matrix(rs);
        CorootVector(
            m.iter()
                .map(|row| {
                    row.iter()
                        .zip(&h.0)
                        .map(|(&a, c)| c * BigInt::from(a))
                        .sum::<Scalar>()
                })
                .collect(),
        )
    }

    /// `ℓ(w)` as the number of positive roots sent to negative roots.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots()
            .iter()
            .filter(|r| !rs.is_positive_root(&self.apply(&r.weight)))
            .count()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (k, i) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

/// `sᵢ(λ) = λ − ⟨λ, αᵢ∨⟩αᵢ`.
pub fn reflect(rs: &RootSystem, i: usize, weight: &Weight) -> Result<Weight> {
    rs.check_rank(weight)?;
    if i >= rs.rank() {
        return Err(Error::OutOfRange {
            index: i,
            max: rs.rank() - 1,
        });
    }
    let mut v = weight.0.clone();
    rs.reflect_in_place(i, &mut v);
    Ok(Weight(v))
}

pub fn longest_element(rs: &RootSystem) -> WeylElement {
    WeylElement::from_word(rs, rs.longest_word()).expect("longest word uses valid indices")
}

/// The ρ-shifted action `w·ξ = w(ξ + ρ) − ρ`.
pub fn dot(rs: &RootSystem, w: &WeylElement, xi: &Weight) -> Weight {
    let rho = rs.rho();
    &w.apply(&(xi + &rho)) - &rho
}

/// `w ↦ w₀w⁻¹w₀`.
pub fn w0_conjugate_inverse(rs: &RootSystem, w: &WeylElement) -> WeylElement {
    let w0 = longest_element(rs);
    w0.compose(rs, &w.inverse(rs)).compose(rs, &w0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Straightened {
    /// `⟨ξ, α∨⟩ = 0` for some positive coroot.
    Singular,
    Regular {
        dominant: Weight,
        /// `w(ξ) = dominant`.
        w: WeylElement,
        steps: usize,
    },
}

/// Moves a regular weight into the dominant chamber by simple reflections,
/// always reflecting at the smallest index with a negative coordinate.
pub fn straighten(rs: &RootSystem, xi: &Weight) -> Result<Straightened> {
    rs.check_rank(xi)?;
    if rs
        .positive_roots()
        .iter()
        .any(|r| RootSystem::pairing_int(xi, &r.coroot) == 0)
    {
        return Ok(Straightened::Singular);
    }
    let mut v = xi.0.clone();
    let steps = straighten_steps(rs, &mut v);
    // s_{i_k}⋯s_{i₁}(ξ) is dominant
    let word: Vec<usize> = steps.iter().rev().copied().collect();
    let w = WeylElement::from_word(rs, &word)?;
    Ok(Straightened::Regular {
        dominant: Weight(v),
        steps: steps.len(),
        w,
    })
}

/// Coefficients of `∏ᵢ (1 + q + … + q^{dᵢ−1})`; entry `i` is `|W(i)|`.
pub fn poincare_coefficients(rs: &RootSystem) -> Vec<u64> {
    let mut poly = vec![1u64];
    for d in rs.degrees() {
        let mut next = vec![0u64; poly.len() + d as usize - 1];
        for (i, &c) in poly.iter().enumerate() {
            for k in 0..d as usize {
                next[i + k] += c;
            }
        }
        poly = next;
    }
    poly
}

/// Every element of `W`, ordered by length and then by reduced word.
/// Refuses when `|W|` exceeds `cap`.
pub fn enumerate(rs: &RootSystem, cap: u64) -> Result<Vec<WeylElement>> {
    let order = rs.weyl_order();
    if order > cap {
        return Err(Error::WeylCapExceeded { order, cap });
    }
    let n = rs.rank();
    let ident = WeylElement::identity(n);
    let mut out: Vec<(Vec<i64>, Vec<Vec<i64>>)> = vec![(rs.rho().0, ident.matrix)];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(rs.rho().0);
    let mut frontier = 0..1;
    // ℓ(sᵢw) = ℓ(w) + 1 exactly when the i-th coordinate of w(ρ) is positive
    while !frontier.is_empty() {
        let start = out.len();
        for idx in frontier.clone() {
            for i in 0..n {
                if out[idx].0[i] <= 0 {
                    continue;
                }
                let mut v = out[idx].0.clone();
                rs.reflect_in_place(i, &mut v);
                if seen.insert(v.clone()) {
                    let mut m = out[idx].1.clone();
                    for j in 0..n {
                        let c = m[i][j];
                        if c != 0 {
                            for (k, row) in m.iter_mut().enumerate() {
                                row[j] -= c * rs.cartan()[k][i];
                            }
                        }
                    }
                    out.push((v, m));
                }
            }
        }
        frontier = start..out.len();
    }
    let mut elements: Vec<WeylElement> = out
        .into_iter()
        .map(|(mut v, matrix)| WeylElement {
            word: straighten_steps(rs, &mut v),
            matrix,
        })
        .collect();
    elements.sort_by(|a, b| {
        a.word
            .len()
            .cmp(&b.word.len())
            .then_with(|| a.word.cmp(&b.word))
    });
    if elements.len() as u64 != order {
        return Err(Error::Internal(format!(
            "enumerated {} elements but |W| = {order}",
            elements.len()
        )));
    }
    Ok(elements)
}
