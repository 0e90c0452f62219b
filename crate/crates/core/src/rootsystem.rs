//! Cartan data for semisimple root systems.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * simple roots and fundamental weights are numbered as in Bourbaki;
//! * `cartan[i][j] = ⟨αⱼ, αᵢ∨⟩`, so column `j` holds the fundamental-weight
//!   coordinates of `αⱼ`;
//! * weights are integer vectors in fundamental-weight coordinates;
//! * coroots and elements of `ĥ` are vectors in simple-coroot coordinates, so
//!   `⟨λ, h⟩` is a plain dot product.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{int, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    fn check_rank(self, rank: usize) -> Result<()> {
        let ok = match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(())
        } else {
            let reason = match self {
                Family::A => "rank must be at least 1",
                Family::B | Family::C => "rank must be at least 2",
                Family::D => "rank must be at least 3",
                Family::E => "rank must be 6, 7 or 8",
                Family::F => "rank must be 4",
                Family::G => "rank must be 2",
            };
            Err(Error::InvalidType {
                family: self.letter(),
                rank,
                reason: reason.into(),
            })
        }
    }
}

/// One simple factor `(family, rank)` of a semisimple type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Parse("empty type component".into()))?;
        let family = Family::from_char(letter)
            .ok_or_else(|| Error::Parse(format!("unknown family '{letter}' in '{s}'")))?;
        let rank: usize = chars
            .as_str()
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in type component '{s}'")))?;
        Ok(SimpleType { family, rank })
    }
}

/// Parses a type string such as `"A2"`, `"b3"` or `"A1xA1"`.
pub fn parse_type_spec(spec: &str) -> Result<Vec<SimpleType>> {
    let parts: Vec<&str> = spec.split(['x', 'X', '×']).collect();
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(Error::Parse(format!(
            "malformed type string '{spec}'"
        )));
    }
    parts.into_iter().map(str::parse).collect()
}

/// Integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&n| n >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|n| n * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated integers, e.g. `"1,-2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate '{}'", t.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Element of `ĥ` in simple-coroot coordinates, with exact rational entries
/// (`ρ∨` has half-integral coordinates in general).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CorootVector(pub Vec<Scalar>);

impl CorootVector {
    pub fn from_ints(v: &[i64]) -> Self {
        CorootVector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self::from_ints(&v)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for CorootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A positive root together with its coroot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the basis of simple roots.
    pub simple: Vec<i64>,
    /// Fundamental-weight coordinates.
    pub weight: Weight,
    /// The coroot, in simple-coroot coordinates.
    pub coroot: Vec<i64>,
    pub height: i64,
    /// Index of the simple component carrying the root.
    pub component: usize,
}

impl Root {
    /// `⟨α∨, ρ⟩`: the height of the coroot in the dual system.
    pub fn coroot_height(&self) -> i64 {
        self.coroot.iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    components: Vec<SimpleType>,
    offsets: Vec<usize>,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    two_rho_check: Vec<i64>,
    highest_roots: Vec<Weight>,
    exponents: Vec<u32>,
    longest_word: Vec<usize>,
    positive_lookup: HashSet<Vec<i64>>,
}

fn simple_cartan(t: SimpleType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.family {
        Family::A | Family::B | Family::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Family::G => link(0, 1),
    }
    match t.family {
        // αₗ short
        Family::B => a[n - 1][n - 2] = -2,
        // αₗ long
        Family::C => a[n - 2][n - 1] = -2,
        // α₁, α₂ long; α₃, α₄ short
        Family::F => a[2][1] = -2,
        // α₁ short, α₂ long
        Family::G => a[0][1] = -3,
        _ => {}
    }
    a
}

/// Exponents as the dual partition of the height distribution of the
/// positive roots: the multiplicity of `m` is `#{height m} − #{height m+1}`.
pub fn exponents_from_heights(heights: impl IntoIterator<Item = i64>) -> Vec<u32> {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for h in heights {
        *counts.entry(h).or_default() += 1;
    }
    let max = counts.keys().next_back().copied().unwrap_or(0);
    let mut out = Vec::new();
    for m in 1..=max {
        let here = counts.get(&m).copied().unwrap_or(0);
        let next = counts.get(&(m + 1)).copied().unwrap_or(0);
        for _ in 0..(here - next) {
            out.push(m as u32);
        }
    }
    out
}

impl RootSystem {
    pub fn build(components: &[SimpleType]) -> Result<RootSystem> {
        if components.is_empty() {
            return Err(Error::Parse("empty type string".into()));
        }
        for c in components {
            c.family.check_rank(c.rank)?;
        }
        let rank: usize = components.iter().map(|c| c.rank).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut offsets = Vec::with_capacity(components.len());
        let mut off = 0;
        for c in components {
            offsets.push(off);
            for (i, row) in simple_cartan(*c).into_iter().enumerate() {
                for (j, v) in row.into_iter().enumerate() {
                    cartan[off + i][off + j] = v;
                }
            }
            off += c.rank;
        }

        let mut rs = RootSystem {
            components: components.to_vec(),
            offsets,
            rank,
            cartan,
            positive_roots: Vec::new(),
            two_rho_check: vec![0; rank],
            highest_roots: Vec::new(),
            exponents: Vec::new(),
            longest_word: Vec::new(),
            positive_lookup: HashSet::new(),
        };
        rs.generate_roots();
        rs.positive_lookup = rs
            .positive_roots
            .iter()
            .map(|r| r.weight.0.clone())
            .collect();
        rs.two_rho_check = (0..rank)
            .map(|j| rs.positive_roots.iter().map(|r| r.coroot[j]).sum())
            .collect();
        rs.highest_roots = (0..rs.components.len())
            .map(|c| {
                rs.positive_roots
                    .iter()
                    .filter(|r| r.component == c)
                    .max_by_key(|r| r.height)
                    .map(|r| r.weight.clone())
                    .expect("every component has a root")
            })
            .collect();
        rs.exponents = exponents_from_heights(rs.positive_roots.iter().map(|r| r.height));
        rs.longest_word = rs.compute_longest_word();
        Ok(rs)
    }

    pub fn parse(spec: &str) -> Result<RootSystem> {
        Self::build(&parse_type_spec(spec)?)
    }

    /// Closure of the simple roots under the simple reflections, carrying
    /// each coroot along so that roots and coroots stay paired.
    fn generate_roots(&mut self) {
        let n = self.rank;
        let a = &self.cartan;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back((e.clone(), e));
        }
        let mut all = Vec::new();
        while let Some((root, coroot)) = queue.pop_front() {
            for j in 0..n {
                let pair_root: i64 = (0..n).map(|k| a[j][k] * root[k]).sum();
                let pair_coroot: i64 = (0..n).map(|k| a[k][j] * coroot[k]).sum();
                let mut r2 = root.clone();
                r2[j] -= pair_root;
                let mut c2 = coroot.clone();
                c2[j] -= pair_coroot;
                if seen.insert(r2.clone()) {
                    queue.push_back((r2, c2));
                }
            }
            all.push((root, coroot));
        }
        let mut positive: Vec<Root> = all
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&c| c >= 0))
            .map(|(simple, coroot)| {
                let weight = Weight(
                    (0..n)
                        .map(|i| (0..n).map(|k| a[i][k] * simple[k]).sum())
                        .collect(),
                );
                let height = simple.iter().sum();
                let first = simple.iter().position(|&c| c != 0).unwrap();
                let component = self.component_of_index(first);
                Root {
                    simple,
                    weight,
                    coroot,
                    height,
                    component,
                }
            })
            .collect();
        positive.sort_by(|x, y| {
            x.height
                .cmp(&y.height)
                .then_with(|| x.simple.cmp(&y.simple))
        });
        self.positive_roots = positive;
    }

    fn compute_longest_word(&self) -> Vec<usize> {
        // straighten −ρ; the recorded reflections compose to w₀
        let mut v = -&self.rho();
        let mut steps = Vec::new();
        while let Some(i) = v.0.iter().position(|&x| x < 0) {
            self.reflect_in_place(i, &mut v.0);
            steps.push(i);
        }
        steps.reverse();
        steps
    }

    pub fn component_of_index(&self, i: usize) -> usize {
        self.offsets
            .iter()
            .rposition(|&o| o <= i)
            .expect("index within rank")
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    pub fn component_offset(&self, c: usize) -> usize {
        self.offsets[c]
    }

    pub fn is_simple(&self) -> bool {
        self.components.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Whether a weight (fundamental coordinates) is a positive root.
    pub fn is_positive_root(&self, w: &Weight) -> bool {
        self.positive_lookup.contains(&w.0)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_coroots(&self) -> Vec<CorootVector> {
        self.positive_roots
            .iter()
            .map(|r| CorootVector::from_ints(&r.coroot))
            .collect()
    }

    /// `ρ`, the sum of the fundamental weights.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// `2ρ∨`, the sum of the positive coroots (integral).
    pub fn two_rho_check(&self) -> &[i64] {
        &self.two_rho_check
    }

    pub fn rho_check(&self) -> CorootVector {
        CorootVector(
            self.two_rho_check
                .iter()
                .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(2)))
                .collect(),
        )
    }

    pub fn highest_roots(&self) -> &[Weight] {
        &self.highest_roots
    }

    /// Exponents `m₁ ≤ … ≤ m_ℓ`.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Degrees `dᵢ = mᵢ + 1` of the basic invariants.
    pub fn degrees(&self) -> Vec<u64> {
        self.exponents.iter().map(|&m| m as u64 + 1).collect()
    }

    /// `|W| = ∏ dᵢ`.
    pub fn weyl_order(&self) -> u64 {
        self.degrees().iter().product()
    }

    /// Coxeter number of component `c`: maximal root height plus one.
    pub fn coxeter_number(&self, c: usize) -> i64 {
        self.positive_roots
            .iter()
            .filter(|r| r.component == c)
            .map(|r| r.height)
            .max()
            .unwrap_or(0)
            + 1
    }

    /// Fundamental-weight coordinates of the simple root `αᵢ`.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan[k][i]).collect())
    }

    pub(crate) fn reflect_in_place(&self, i: usize, v: &mut [i64]) {
        let c = v[i];
        if c != 0 {
            for (k, x) in v.iter_mut().enumerate() {
                *x -= c * self.cartan[k][i];
            }
        }
    }

    /// Dual action of `sᵢ` on simple-coroot coordinates:
    /// `sᵢ(h) = h − ⟨αᵢ, h⟩ αᵢ∨`.
    pub(crate) fn reflect_coroot_in_place(&self, i: usize, h: &mut [i64]) {
        let c: i64 = (0..self.rank).map(|k| self.cartan[k][i] * h[k]).sum();
        h[i] -= c;
    }

    pub(crate) fn longest_word(&self) -> &[usize] {
        &self.longest_word
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank,
                got: w.rank(),
            })
        }
    }

    /// `⟨λ, β∨⟩ = Σ nⱼcⱼ`.
    pub fn pairing(&self, weight: &Weight, coroot: &CorootVector) -> Result<Scalar> {
        self.check_rank(weight)?;
        if coroot.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: coroot.rank(),
            });
        }
        Ok(weight
            .0
            .iter()
            .zip(&coroot.0)
            .map(|(&n, c)| c * BigInt::from(n))
            .fold(Scalar::zero(), |acc, x| acc + x))
    }

    pub(crate) fn pairing_int(weight: &Weight, coroot: &[i64]) -> i64 {
        weight.0.iter().zip(coroot).map(|(a, b)| a * b).sum()
    }

    /// `⟨λ, 2ρ∨⟩` (always an integer).
    pub fn pair_two_rho_check(&self, weight: &Weight) -> i64 {
        Self::pairing_int(weight, &self.two_rho_check)
    }

    /// `w₀(λ)`.
    pub fn apply_longest(&self, weight: &Weight) -> Weight {
        let mut v = weight.0.clone();
        for &i in self.longest_word.iter().rev() {
            self.reflect_in_place(i, &mut v);
        }
        Weight(v)
    }

    /// `λ* = −w₀(λ)`.
    pub fn star(&self, weight: &Weight) -> Result<Weight> {
        self.check_rank(weight)?;
        Ok(-&self.apply_longest(weight))
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn to_simple_root_coords(&self, weight: &Weight) -> Result<Vec<Scalar>> {
        self.check_rank(weight)?;
        let a = crate::exactlin::to_rational_rows(&self.cartan);
        let b: Vec<Scalar> = weight.0.iter().map(|&x| int(x)).collect();
        crate::exactlin::solve_rational(&a, &b)
            .ok_or_else(|| Error::Internal("Cartan matrix is singular".into()))
    }

    /// `dim V(λ) = ∏ ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`.
    pub fn weyl_dimension(&self, weight: &Weight) -> Result<BigInt> {
        self.check_rank(weight)?;
        if !weight.is_dominant() {
            return Err(Error::NotDominant(weight.to_string()));
        }
        let shifted = weight + &self.rho();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for r in &self.positive_roots {
            num *= Self::pairing_int(&shifted, &r.coroot);
            den *= r.coroot_height();
        }
        let (q, rem) = num.div_rem(&den);
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "Weyl dimension quotient is not integral for {weight}"
            )));
        }
        Ok(q)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
