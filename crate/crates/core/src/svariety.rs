//! Lattice data of a finitely generated monoid `Γ = Σ N γⱼ` of dominant
//! weights: the group `ZΓ`, the quotient `Λ/ZΓ` (character group of the
//! diagonalizable group `Q_Γ`), the saturation test `Γ = ZΓ ∩ Λ⁺`, the
//! grading lattice `ZΓ*` and a dual basis `x_j` of `ĥ`.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{
    self, hermite_normal_form, lattice_basis, lattice_coordinates, smith_normal_form, IntMatrix,
    Scalar,
};
use crate::rootsystem::{CorootVector, RootSystem, Weight};

/// Default cap on the number of lattice points examined by [`GammaMonoid::check_saturation`].
pub const DEFAULT_HILBERT_CAP: u64 = 1_000_000;

/// `Q_Γ ≅ (C*)^torus_rank × ∏ Z/dᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QGamma {
    pub torus_rank: usize,
    pub finite_factors: Vec<BigInt>,
}

impl QGamma {
    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.finite_factors.is_empty()
    }

    /// Order of the component group.
    pub fn component_order(&self) -> BigInt {
        self.finite_factors.iter().product()
    }
}

#[derive(Debug, Clone)]
pub struct GammaMonoid {
    generators: Vec<Weight>,
    lattice_basis: IntMatrix,
    rank: usize,
    ambient_rank: usize,
    invariant_factors: Vec<BigInt>,
}

fn weight_to_big(w: &Weight) -> Vec<BigInt> {
    w.0.iter().map(|&x| BigInt::from(x)).collect()
}

fn big_to_weight(v: &[BigInt]) -> Result<Weight> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Internal(format!("coordinate {x} overflows i64")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Weight)
}

/// Decides `μ ∈ Γ`. On success returns nonnegative coefficients with
/// `μ = Σ aⱼγⱼ`.
///
/// Every generator has `⟨γⱼ, 2ρ∨⟩ > 0`, and any representation satisfies
/// `Σ aⱼ⟨γⱼ, 2ρ∨⟩ = ⟨μ, 2ρ∨⟩`, so the search below is finite.
pub fn monoid_membership(
    rs: &RootSystem,
    gens: &[Weight],
    mu: &Weight,
) -> Result<Option<Vec<u64>>> {
    rs.check_rank(mu)?;
    for g in gens {
        rs.check_rank(g)?;
        if rs.pair_two_rho_check(g) <= 0 {
            return Err(Error::Domain(format!(
                "generator {g} has nonpositive ρ∨-pairing"
            )));
        }
    }
    let costs: Vec<i64> = gens.iter().map(|g| rs.pair_two_rho_check(g)).collect();
    let mut dead: HashSet<(usize, Vec<i64>)> = HashSet::new();
    let mut coeffs = vec![0u64; gens.len()];

    fn search(
        j: usize,
        rest: &[i64],
        rs: &RootSystem,
        gens: &[Weight],
        costs: &[i64],
        coeffs: &mut [u64],
        dead: &mut HashSet<(usize, Vec<i64>)>,
    ) -> bool {
        if rest.iter().all(|&x| x == 0) {
            return true;
        }
        if j == gens.len() {
            return false;
        }
        let budget = RootSystem::pairing_int(&Weight(rest.to_vec()), rs.two_rho_check());
        if budget <= 0 || dead.contains(&(j, rest.to_vec())) {
            return false;
        }
        let max = budget / costs[j];
        for a in (0..=max).rev() {
            let next: Vec<i64> = rest
                .iter()
                .zip(&gens[j].0)
                .map(|(r, g)| r - a * g)
                .collect();
            if search(j + 1, &next, rs, gens, costs, coeffs, dead) {
                coeffs[j] = a as u64;
                return true;
            }
        }
        dead.insert((j, rest.to_vec()));
        false
    }

    if search(0, &mu.0, rs, gens, &costs, &mut coeffs, &mut dead) {
        Ok(Some(coeffs))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaturationStatus {
    Holds,
    Fails,
    /// The lattice-point cap was hit before the search finished.
    Inconclusive,
}

/// Outcome of testing `Γ = ZΓ ∩ Λ⁺`.
#[derive(Debug, Clone)]
pub struct SaturationVerdict {
    pub status: SaturationStatus,
    /// An element of `ZΓ ∩ Λ⁺` outside `Γ`, when the condition fails.
    pub witness: Option<Weight>,
    /// Generators of `ZΓ ∩ Λ⁺` examined. When the condition holds this is
    /// the full Hilbert basis.
    pub hilbert_basis: Vec<Weight>,
    /// Lattice points visited.
    pub points_examined: u64,
}

impl SaturationVerdict {
    pub fn holds(&self) -> bool {
        self.status == SaturationStatus::Holds
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Scales a nonzero rational vector to a primitive integer vector with the
/// same direction.
fn primitive(v: &[Scalar]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

impl GammaMonoid {
    /// Validates the generators and computes `ZΓ` and `Λ/ZΓ`.
    pub fn new(rs: &RootSystem, gens: &[Weight]) -> Result<GammaMonoid> {
        if gens.is_empty() {
            return Err(Error::Domain("Γ needs at least one generator".into()));
        }
        let mut seen = HashSet::new();
        for g in gens {
            rs.check_rank(g)?;
            if !g.is_dominant() {
                return Err(Error::NotDominant(g.to_string()));
            }
            if g.is_zero() {
                return Err(Error::Domain("generators of Γ must be nonzero".into()));
            }
            if !seen.insert(g) {
                return Err(Error::Domain(format!("generator {g} is repeated")));
            }
        }
        let rows: Vec<Vec<BigInt>> = gens.iter().map(weight_to_big).collect();
        let m = IntMatrix::from_rows(&rows);
        let basis = lattice_basis(&m);
        // columns γⱼ as relations in Λ = Z^ℓ
        let snf = smith_normal_form(&m.transpose());
        Ok(GammaMonoid {
            generators: gens.to_vec(),
            rank: basis.rows(),
            lattice_basis: basis,
            ambient_rank: rs.rank(),
            invariant_factors: snf.invariant_factors,
        })
    }

    pub fn generators(&self) -> &[Weight] {
        &self.generators
    }

    /// Hermite basis of `ZΓ`, one row per basis vector.
    pub fn lattice_basis(&self) -> Vec<Weight> {
        self.lattice_basis
            .to_rows()
            .iter()
            .map(|r| big_to_weight(r).expect("basis entries fit in i64"))
            .collect()
    }

    /// `r = rank ZΓ`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn q_gamma(&self) -> QGamma {
        QGamma {
            torus_rank: self.ambient_rank - self.rank,
            finite_factors: self
                .invariant_factors
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
        }
    }

    pub fn lattice_contains(&self, mu: &Weight) -> bool {
        mu.rank() == self.ambient_rank
            && lattice_coordinates(&self.lattice_basis, &weight_to_big(mu)).is_some()
    }

    pub fn contains(&self, rs: &RootSystem, mu: &Weight) -> Result<Option<Vec<u64>>> {
        monoid_membership(rs, &self.generators, mu)
    }

    fn basis_rational(&self) -> Vec<Vec<Scalar>> {
        exactlin::to_rational_rows(&self.lattice_basis.to_rows())
    }

    /// Primitive integer directions of the extreme rays of the real cone
    /// `QΓ ∩ (dominant chamber)`.
    fn extreme_rays(&self) -> Vec<Vec<BigInt>> {
        let basis = self.basis_rational();
        let l = self.ambient_rank;
        let r = self.rank;
        let mut rays = BTreeSet::new();
        for mask in 0u32..(1 << l) {
            // constraints x_z = 0 for z in mask, on x = c·basis
            let constraints: Vec<Vec<Scalar>> = (0..l)
                .filter(|z| mask & (1 << z) != 0)
                .map(|z| (0..r).map(|i| basis[i][z].clone()).collect())
                .collect();
            let ns = exactlin::nullspace(&constraints, r);
            if ns.len() != 1 {
                continue;
            }
            let x: Vec<Scalar> = (0..l)
                .map(|j| (0..r).map(|i| &ns[0][i] * &basis[i][j]).sum())
                .collect();
            let x = if x.iter().all(|v| !v.is_negative()) {
                x
            } else if x.iter().all(|v| !v.is_positive()) {
                x.into_iter().map(|v| -v).collect()
            } else {
                continue;
            };
            if x.iter().any(|v| !v.is_zero()) {
                rays.insert(primitive(&x));
            }
        }
        rays.into_iter().collect()
    }

    /// Smallest positive multiple of `dir` lying in `ZΓ`.
    fn first_lattice_point_on(&self, dir: &[BigInt]) -> Result<Vec<BigInt>> {
        let basis = self.basis_rational();
        let a: Vec<Vec<Scalar>> = (0..self.ambient_rank)
            .map(|j| (0..self.rank).map(|i| basis[i][j].clone()).collect())
            .collect();
        let b: Vec<Scalar> = dir
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let c = exactlin::solve_rational(&a, &b)
            .ok_or_else(|| Error::Internal("extreme ray outside QΓ".into()))?;
        let m = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        Ok(dir.iter().map(|x| x * &m).collect())
    }

    /// Tests `Γ = ZΓ ∩ Λ⁺`.
    ///
    /// First every extreme ray of the cone `QΓ ∩ Λ⁺_R` must carry a
    /// generator; otherwise the first lattice point on an uncovered ray is a
    /// witness. When the cones agree, every element of `ZΓ ∩ Λ⁺` is a sum of
    /// generators plus a lattice point of some half-open parallelepiped
    /// spanned by `r` independent generators, so those points together with
    /// the generators contain the Hilbert basis. Each Hilbert basis element
    /// is then tested for membership in `Γ`.
    pub fn check_saturation(&self, rs: &RootSystem, point_cap: u64) -> Result<SaturationVerdict> {
        let primitive_gens: HashSet<Vec<BigInt>> = self
            .generators
            .iter()
            .map(|g| {
                let v: Vec<Scalar> = g.0.iter().map(|&x| exactlin::int(x)).collect();
                primitive(&v)
            })
            .collect();
        let mut ray_points = Vec::new();
        let mut uncovered = None;
        for ray in self.extreme_rays() {
            let p = big_to_weight(&self.first_lattice_point_on(&ray)?)?;
            if uncovered.is_none() && !primitive_gens.contains(&ray) {
                uncovered = Some(p.clone());
            }
            ray_points.push(p);
        }
        if let Some(w) = uncovered {
            self.certify_witness(rs, &w)?;
            return Ok(SaturationVerdict {
                status: SaturationStatus::Fails,
                witness: Some(w),
                points_examined: ray_points.len() as u64,
                hilbert_basis: ray_points,
            });
        }

        let mut candidates: BTreeSet<Weight> = self.generators.iter().cloned().collect();
        let mut examined: u64 = 0;
        let coords: Vec<Vec<BigInt>> = self
            .generators
            .iter()
            .map(|g| {
                lattice_coordinates(&self.lattice_basis, &weight_to_big(g))
                    .expect("generators lie in ZΓ")
            })
            .collect();
        for sigma in subsets(self.generators.len(), self.rank) {
            let g_rows: Vec<Vec<BigInt>> = sigma.iter().map(|&i| coords[i].clone()).collect();
            let g = IntMatrix::from_rows(&g_rows);
            let det = g.determinant().abs();
            if det.is_zero() {
                continue;
            }
            examined += det.to_u64().unwrap_or(u64::MAX);
            if examined > point_cap {
                return Ok(SaturationVerdict {
                    status: SaturationStatus::Inconclusive,
                    witness: None,
                    hilbert_basis: Vec::new(),
                    points_examined: examined,
                });
            }
            for p in self.parallelepiped_points(&g)? {
                let w = big_to_weight(&self.lattice_point(&p))?;
                if !w.is_zero() {
                    candidates.insert(w);
                }
            }
        }

        let candidates: Vec<Weight> = candidates.into_iter().collect();
        let hilbert_basis: Vec<Weight> = candidates
            .iter()
            .filter(|x| {
                !candidates.iter().any(|h| {
                    let d = *x - h;
                    h != *x && d.is_dominant() && !d.is_zero()
                })
            })
            .cloned()
            .collect();

        for h in &hilbert_basis {
            if monoid_membership(rs, &self.generators, h)?.is_none() {
                self.certify_witness(rs, h)?;
                return Ok(SaturationVerdict {
                    status: SaturationStatus::Fails,
                    witness: Some(h.clone()),
                    hilbert_basis,
                    points_examined: examined,
                });
            }
        }
        Ok(SaturationVerdict {
            status: SaturationStatus::Holds,
            witness: None,
            hilbert_basis,
            points_examined: examined,
        })
    }

    fn certify_witness(&self, rs: &RootSystem, w: &Weight) -> Result<()> {
        if !w.is_dominant() || !self.lattice_contains(w) || self.contains(rs, w)?.is_some() {
            return Err(Error::Internal(format!("witness {w} failed certification")));
        }
        Ok(())
    }

    fn lattice_point(&self, c: &[BigInt]) -> Vec<BigInt> {
        (0..self.ambient_rank)
            .map(|j| {
                c.iter()
                    .enumerate()
                    .map(|(i, ci)| ci * &self.lattice_basis[(i, j)])
                    .sum()
            })
            .collect()
    }

    /// Lattice points of `Z^r` in `{Σ tᵢ gᵢ : 0 ≤ tᵢ < 1}` for the rows `gᵢ`
    /// of a nonsingular `g`.
    fn parallelepiped_points(&self, g: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
        let r = g.rows();
        let (h, _) = hermite_normal_form(g);
        let diag: Vec<BigInt> = (0..r).map(|i| h[(i, i)].clone()).collect();
        let gt = exactlin::to_rational_rows(&g.transpose().to_rows());
        let mut out = Vec::new();
        // coset representatives of Z^r / (row lattice of h): the box 0 ≤ cᵢ < dᵢ
        let mut c = vec![BigInt::zero(); r];
        loop {
            let rhs: Vec<Scalar> = c
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            let t = exactlin::solve_rational(&gt, &rhs)
                .ok_or_else(|| Error::Internal("singular parallelepiped".into()))?;
            let frac: Vec<Scalar> = t.iter().map(|x| x - x.floor()).collect();
            let p: Vec<BigInt> = (0..r)
                .map(|j| {
                    let s: Scalar = (0..r).map(|i| &frac[i] * g[(i, j)].clone()).sum();
                    s.to_integer()
                })
                .collect();
            out.push(p);
            let mut k = 0;
            loop {
                if k == r {
                    return Ok(out);
                }
                c[k] += 1;
                if c[k] < diag[k] {
                    break;
                }
                c[k] = BigInt::zero();
                k += 1;
            }
        }
    }

    /// Decides `μ ∈ ZΓ* = Z{γⱼ*}`.
    pub fn grading_lattice_contains(&self, rs: &RootSystem, mu: &Weight) -> Result<bool> {
        rs.check_rank(mu)?;
        let rows: Vec<Vec<BigInt>> = self
            .generators
            .iter()
            .map(|g| rs.star(g).map(|s| weight_to_big(&s)))
            .collect::<Result<_>>()?;
        let basis = lattice_basis(&IntMatrix::from_rows(&rows));
        Ok(lattice_coordinates(&basis, &weight_to_big(mu)).is_some())
    }

    /// Indices of the first `r` generators (in order) spanning `QΓ`.
    pub fn spanning_indices(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let mut trial = rows.clone();
            trial.push(g.0.iter().map(|&x| exactlin::int(x)).collect());
            if exactlin::rational_rank(&trial) > rows.len() {
                rows = trial;
                chosen.push(i);
            }
        }
        chosen
    }

    /// Vectors `x₁ … x_r ∈ ĥ` with `⟨γᵢ*, x_j⟩ = δᵢⱼ`, where `γ₁ … γ_r` are
    /// the generators listed by [`Self::spanning_indices`].
    pub fn dual_basis(&self, rs: &RootSystem) -> Result<DualBasis> {
        let order = self.spanning_indices();
        let stars: Vec<Weight> = order
            .iter()
            .map(|&i| rs.star(&self.generators[i]))
            .collect::<Result<_>>()?;
        let a: Vec<Vec<Scalar>> = stars
            .iter()
            .map(|s| s.0.iter().map(|&x| exactlin::int(x)).collect())
            .collect();
        let mut vectors = Vec::with_capacity(order.len());
        for j in 0..order.len() {
            let e: Vec<Scalar> = (0..order.len())
                .map(|i| exactlin::int(i64::from(i == j)))
                .collect();
            let x = exactlin::solve_rational(&a, &e)
                .ok_or_else(|| Error::Internal("γ* rows are not independent".into()))?;
            vectors.push(CorootVector(x));
        }
        Ok(DualBasis {
            order,
            stars,
            vectors,
        })
    }
}

#[derive(Debug, Clone)]
pub struct DualBasis {
    /// Generator indices used, in order.
    pub order: Vec<usize>,
    /// `γᵢ*` for those generators.
    pub stars: Vec<Weight>,
    pub vectors: Vec<CorootVector>,
}

/// Counts of `Λ/ZΓ` as a map from invariant factor to multiplicity, plus the
/// free rank; convenient for display.
pub fn describe_quotient(q: &QGamma) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut counts: HashMap<&BigInt, usize> = HashMap::new();
    for d in &q.finite_factors {
        *counts.entry(d).or_default() += 1;
    }
    for d in &q.finite_factors {
        if let Some(n) = counts.remove(d) {
            for _ in 0..n {
                parts.push(format!("Z/{d}"));
            }
        }
    }
    if q.torus_rank > 0 {
        parts.push(if q.torus_rank == 1 {
            "Z".to_string()
        } else {
            format!("Z^{}", q.torus_rank)
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::parse(s).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn lattice_examples() {
        let r = rs("A1");
        let g = GammaMonoid::new(&r, &[w(&[2])]).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(
            g.q_gamma(),
            QGamma {
                torus_rank: 0,
                finite_factors: vec![BigInt::from(2)]
            }
        );
        assert_eq!(describe_quotient(&g.q_gamma()), "Z/2");

        let r = rs("A2");
        let g = GammaMonoid::new(&r, &[w(&[1, 1])]).unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(
            g.q_gamma(),
            QGamma {
                torus_rank: 1,
                finite_factors: vec![]
            }
        );
        assert_eq!(describe_quotient(&g.q_gamma()), "Z");

        let g = GammaMonoid::new(&r, &[w(&[1, 0]), w(&[0, 1])]).unwrap();
        assert_eq!(g.rank(), 2);
        assert!(g.q_gamma().is_trivial());
    }

    #[test]
    fn invalid_generators() {
        let r = rs("A2");
        assert!(matches!(
            GammaMonoid::new(&r, &[w(&[1, -1])]),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            GammaMonoid::new(&r, &[w(&[0, 0])]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            GammaMonoid::new(&r, &[w(&[1, 0]), w(&[1, 0])]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            GammaMonoid::new(&r, &[w(&[1])]),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let r = rs("A1");
        let gens = [w(&[2]), w(&[3])];
        assert_eq!(
            monoid_membership(&r, &gens, &w(&[0])).unwrap(),
            Some(vec![0, 0])
        );
        let a = monoid_membership(&r, &gens, &w(&[7])).unwrap().unwrap();
        assert_eq!(2 * a[0] + 3 * a[1], 7);
        assert_eq!(monoid_membership(&r, &gens, &w(&[1])).unwrap(), None);
        assert_eq!(monoid_membership(&r, &gens, &w(&[-4])).unwrap(), None);
    }

    #[test]
    fn membership_exhaustive_oracle() {
        // brute force over small coefficient boxes
        let r = rs("A2");
        let gens = [w(&[2, 0]), w(&[1, 1]), w(&[0, 3])];
        let mut reachable = HashSet::new();
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    reachable.insert(vec![2 * a + b, b + 3 * c]);
                }
            }
        }
        for x in 0..6 {
            for y in 0..6 {
                let got = monoid_membership(&r, &gens, &w(&[x, y])).unwrap();
                assert_eq!(got.is_some(), reachable.contains(&vec![x, y]), "({x},{y})");
                if let Some(a) = got {
                    let a: Vec<i64> = a.into_iter().map(|v| v as i64).collect();
                    assert_eq!(vec![2 * a[0] + a[1], a[1] + 3 * a[2]], vec![x, y]);
                }
            }
        }
    }

    #[test]
    fn saturation_examples() {
        let r = rs("A1");
        let v = GammaMonoid::new(&r, &[w(&[2])])
            .unwrap()
            .check_saturation(&r, DEFAULT_HILBERT_CAP)
            .unwrap();
        assert!(v.holds());
        assert_eq!(v.hilbert_basis, vec![w(&[2])]);

        let v = GammaMonoid::new(&r, &[w(&[2]), w(&[3])])
            .unwrap()
            .check_saturation(&r, DEFAULT_HILBERT_CAP)
            .unwrap();
        assert_eq!(v.status, SaturationStatus::Fails);
        assert_eq!(v.witness, Some(w(&[1])));

        let r = rs("A2");
        for gens in [
            vec![w(&[1, 1])],
            vec![w(&[1, 0]), w(&[0, 1])],
            vec![w(&[3, 1])],
        ] {
            let v = GammaMonoid::new(&r, &gens)
                .unwrap()
                .check_saturation(&r, DEFAULT_HILBERT_CAP)
                .unwrap();
            assert!(v.holds(), "{gens:?}");
        }
    }

    #[test]
    fn saturation_failure_through_uncovered_ray() {
        // cone of {(1,1),(2,1)} misses the ray through (1,0)
        let r = rs("A2");
        let g = GammaMonoid::new(&r, &[w(&[1, 1]), w(&[2, 1])]).unwrap();
        let v = g.check_saturation(&r, DEFAULT_HILBERT_CAP).unwrap();
        assert_eq!(v.status, SaturationStatus::Fails);
        let wit = v.witness.unwrap();
        assert!(wit.is_dominant() && g.lattice_contains(&wit));
        assert!(g.contains(&r, &wit).unwrap().is_none());
    }

    #[test]
    fn saturation_failure_inside_cone() {
        // adding (3,0) makes ZΓ = Z² while (1,0), (0,1) stay outside Γ
        let r = rs("A2");
        let g = GammaMonoid::new(&r, &[w(&[2, 0]), w(&[1, 1]), w(&[0, 2])]).unwrap();
        assert!(g.check_saturation(&r, DEFAULT_HILBERT_CAP).unwrap().holds());
        let g = GammaMonoid::new(&r, &[w(&[2, 0]), w(&[0, 2])]).unwrap();
        assert!(g.check_saturation(&r, DEFAULT_HILBERT_CAP).unwrap().holds());
        let g = GammaMonoid::new(&r, &[w(&[2, 0]), w(&[1, 1]), w(&[0, 2]), w(&[3, 0])]).unwrap();
        let v = g.check_saturation(&r, DEFAULT_HILBERT_CAP).unwrap();
        assert_eq!(v.status, SaturationStatus::Fails);
        let wit = v.witness.unwrap();
        assert!(wit == w(&[1, 0]) || wit == w(&[0, 1]));
    }

    #[test]
    fn cap_yields_inconclusive() {
        let r = rs("A1");
        let g = GammaMonoid::new(&r, &[w(&[5]), w(&[7])]).unwrap();
        let v = g.check_saturation(&r, 3).unwrap();
        assert_eq!(v.status, SaturationStatus::Inconclusive);
        assert!(v.witness.is_none());
    }

    #[test]
    fn grading_lattice_examples() {
        let r = rs("A2");
        let g = GammaMonoid::new(&r, &[w(&[1, 1])]).unwrap();
        assert!(!g.grading_lattice_contains(&r, &w(&[1, 0])).unwrap());
        assert!(g.grading_lattice_contains(&r, &w(&[2, 2])).unwrap());
        assert!(g.grading_lattice_contains(&r, &w(&[-1, -1])).unwrap());
        let g = GammaMonoid::new(&r, &[w(&[1, 0])]).unwrap();
        // γ* = (0,1)
        assert!(g.grading_lattice_contains(&r, &w(&[0, -1])).unwrap());
        assert!(!g.grading_lattice_contains(&r, &w(&[-1, 0])).unwrap());
    }

    fn check_dual(r: &RootSystem, g: &GammaMonoid) {
        let d = g.dual_basis(r).unwrap();
        assert_eq!(d.vectors.len(), g.rank());
        for (i, s) in d.stars.iter().enumerate() {
            for (j, x) in d.vectors.iter().enumerate() {
                assert_eq!(r.pairing(s, x).unwrap(), exactlin::int(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn dual_basis_examples() {
        let r = rs("A2");
        let g = GammaMonoid::new(&r, &[w(&[1, 1])]).unwrap();
        let d = g.dual_basis(&r).unwrap();
        assert_eq!(d.vectors, vec![CorootVector::simple(2, 0)]);
        check_dual(&r, &g);

        let r1 = rs("A1");
        let g = GammaMonoid::new(&r1, &[w(&[2])]).unwrap();
        let d = g.dual_basis(&r1).unwrap();
        assert_eq!(d.vectors[0].0[0], BigRational::new(1.into(), 2.into()));

        let g = GammaMonoid::new(&r, &[w(&[1, 0]), w(&[0, 1])]).unwrap();
        check_dual(&r, &g);
        let d = g.dual_basis(&r).unwrap();
        assert_eq!(d.stars, vec![w(&[0, 1]), w(&[1, 0])]);

        // dependent generator is skipped
        let g = GammaMonoid::new(&r, &[w(&[1, 1]), w(&[2, 2]), w(&[1, 0])]).unwrap();
        assert_eq!(g.dual_basis(&r).unwrap().order, vec![0, 2]);
        check_dual(&r, &g);
    }

    #[test]
    fn full_rank_factors_match_determinant() {
        let r = rs("A2");
        let g = GammaMonoid::new(&r, &[w(&[2, 1]), w(&[1, 3])]).unwrap();
        let prod: BigInt = g.invariant_factors().iter().product();
        assert_eq!(prod, BigInt::from(5));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn single_generator_always_saturated(
            t in prop::sample::select(vec!["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "B4", "D4"]),
            seed in prop::collection::vec(0i64..4, 4),
        ) {
            let r = rs(t);
            let g = Weight(seed[..r.rank()].to_vec());
            prop_assume!(!g.is_zero());
            let m = GammaMonoid::new(&r, std::slice::from_ref(&g)).unwrap();
            let v = m.check_saturation(&r, DEFAULT_HILBERT_CAP).unwrap();
            prop_assert!(v.holds());
            prop_assert_eq!(v.hilbert_basis, vec![g.clone()]);
            prop_assert_eq!(m.contains(&r, &g).unwrap(), Some(vec![1]));
            check_dual(&r, &m);
        }

        #[test]
        fn invariant_factors_match_maximal_minors(
            rows in prop::collection::vec(prop::collection::vec(0i64..5, 2), 2..4),
        ) {
            let r = rs("B2");
            let gens: Vec<Weight> = rows.iter().map(|v| Weight(v.clone())).collect();
            let distinct: HashSet<&Weight> = gens.iter().collect();
            prop_assume!(distinct.len() == gens.len() && gens.iter().all(|g| !g.is_zero()));
            let m = GammaMonoid::new(&r, &gens).unwrap();
            let big = IntMatrix::from_rows(&rows);
            let mut gcd = BigInt::zero();
            for s in subsets(rows.len(), 2) {
                let sub = IntMatrix::from_rows(&[rows[s[0]].clone(), rows[s[1]].clone()]);
                gcd = gcd.gcd(&sub.determinant());
            }
            if m.rank() == 2 {
                let prod: BigInt = m.invariant_factors().iter().product();
                prop_assert_eq!(prod, gcd);
            } else {
                prop_assert!(gcd.is_zero());
            }
            let _ = big;
        }

        #[test]
        fn verdict_is_certified(
            rows in prop::collection::vec(prop::collection::vec(0i64..4, 2), 1..4),
        ) {
            let r = rs("A2");
            let gens: Vec<Weight> = rows.iter().map(|v| Weight(v.clone())).collect();
            let distinct: HashSet<&Weight> = gens.iter().collect();
            prop_assume!(distinct.len() == gens.len() && gens.iter().all(|g| !g.is_zero()));
            let m = GammaMonoid::new(&r, &gens).unwrap();
            let v = m.check_saturation(&r, DEFAULT_HILBERT_CAP).unwrap();
            // brute-force oracle: every dominant lattice point of ZΓ in a box
            // must lie in Γ exactly when the verdict holds
            let mut counterexample = None;
            for x in 0..9 {
                for y in 0..9 {
                    let p = Weight(vec![x, y]);
                    if m.lattice_contains(&p) && m.contains(&r, &p).unwrap().is_none() {
                        counterexample.get_or_insert(p);
                    }
                }
            }
            match v.status {
                SaturationStatus::Holds => prop_assert!(counterexample.is_none(), "{:?}", counterexample),
                SaturationStatus::Fails => {
                    let wit = v.witness.unwrap();
                    prop_assert!(wit.is_dominant() && m.lattice_contains(&wit));
                    prop_assert!(m.contains(&r, &wit).unwrap().is_none());
                }
                SaturationStatus::Inconclusive => prop_assert!(false),
            }
        }
    }
}
