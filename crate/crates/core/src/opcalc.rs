//! Polynomials in `U(ĥ)`: `P_η`, the affine twists `F_w`, the substitution
//! `ψ_Γ`, order bookkeeping and the minimal-orbit numerology.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{int, Scalar};
use crate::rootsystem::{CorootVector, Family, RootSystem, SimpleType, Weight};
use crate::svariety::GammaMonoid;
use crate::weyl::{self, WeylElement};

/// Sparse polynomial with exact rational coefficients. Variables are printed
/// `h1..hℓ` (simple coroots) or `y1..yr` after `ψ_Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UhPolynomial {
    nvars: usize,
    symbol: char,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl UhPolynomial {
    pub fn zero(nvars: usize) -> Self {
        UhPolynomial {
            nvars,
            symbol: 'h',
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// The variable with index `i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Scalar::one());
        p
    }

    pub fn from_affine(f: &AffineForm) -> Self {
        let n = f.coeffs.len();
        let mut p = Self::constant(n, f.constant.clone());
        for (i, c) in f.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    /// Same polynomial, printed with a different variable letter.
    pub fn with_symbol(mut self, symbol: char) -> Self {
        self.symbol = symbol;
        self
    }

    pub fn symbol(&self) -> char {
        self.symbol
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars).with_symbol(self.symbol);
        }
        UhPolynomial {
            nvars: self.nvars,
            symbol: self.symbol,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars).with_symbol(self.symbol);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Algebra homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[UhPolynomial]) -> Result<UhPolynomial> {
        if images.len() != self.nvars {
            return Err(Error::RankMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let (n, symbol) = match images.first() {
            Some(p) => (p.nvars, p.symbol),
            None => (0, self.symbol),
        };
        if images.iter().any(|p| p.nvars != n) {
            return Err(Error::Domain(
                "substitution images live in different rings".into(),
            ));
        }
        let mut powers: Vec<Vec<UhPolynomial>> = images
            .iter()
            .map(|p| vec![Self::one(n).with_symbol(symbol), p.clone()])
            .collect();
        let mut out = Self::zero(n).with_symbol(symbol);
        for (e, c) in &self.terms {
            let mut t = Self::constant(n, c.clone()).with_symbol(symbol);
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k];
                }
            }
            for (m, v) in t.terms {
                out.add_term(m, v);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| {
                    acc * num_traits::pow(x.clone(), k as usize)
                })
            })
            .sum()
    }

    /// Terms in display order: total degree descending, then exponents
    /// lexicographically descending.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }
}

fn binop(a: &UhPolynomial, b: &UhPolynomial) -> UhPolynomial {
    assert_eq!(a.nvars, b.nvars, "polynomials over different variable sets");
    UhPolynomial::zero(a.nvars).with_symbol(a.symbol)
}

impl Add for &UhPolynomial {
    type Output = UhPolynomial;
    fn add(self, rhs: &UhPolynomial) -> UhPolynomial {
        let mut out = binop(self, rhs);
        out.terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &UhPolynomial {
    type Output = UhPolynomial;
    fn neg(self) -> UhPolynomial {
        self.scale(&-Scalar::one())
    }
}

impl Sub for &UhPolynomial {
    type Output = UhPolynomial;
    fn sub(self, rhs: &UhPolynomial) -> UhPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &UhPolynomial {
    type Output = UhPolynomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &UhPolynomial) -> UhPolynomial {
        let mut out = binop(self, rhs);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

fn fmt_coeff(c: &Scalar) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for UhPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("{}{}", self.symbol, i + 1)
                    } else {
                        format!("{}{}^{}", self.symbol, i + 1, p)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_coeff(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `Σ cⱼhⱼ + c₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub coeffs: Vec<Scalar>,
    pub constant: Scalar,
}

impl AffineForm {
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        self.coeffs
            .iter()
            .zip(point)
            .map(|(a, x)| a * x)
            .fold(self.constant.clone(), |acc, t| acc + t)
    }
}

/// `k(λ) = ⟨λ, 2ρ∨⟩`, cross-checked against twice the sum of the
/// simple-root coordinates of `λ`.
pub fn k_value(rs: &RootSystem, lambda: &Weight) -> Result<i64> {
    rs.check_rank(lambda)?;
    let k = rs.pair_two_rho_check(lambda);
    let m: Scalar = rs.to_simple_root_coords(lambda)?.into_iter().sum();
    if m * int(2) != int(k) {
        return Err(Error::Internal(format!("k({lambda}) disagrees with 2Σmᵢ")));
    }
    Ok(k)
}

/// The affine factors `α∨ + ⟨α∨,ρ⟩ − i`, `1 ≤ i ≤ ⟨η,α∨⟩`, whose product is `P_η`.
pub fn p_eta_factors(rs: &RootSystem, eta: &Weight) -> Result<Vec<AffineForm>> {
    rs.check_rank(eta)?;
    if !eta.is_dominant() {
        return Err(Error::NotDominant(eta.to_string()));
    }
    let mut out = Vec::new();
    for r in rs.positive_roots() {
        let n: i64 = eta.0.iter().zip(&r.coroot).map(|(a, b)| a * b).sum();
        let ht = r.coroot_height();
        for i in 1..=n {
            out.push(AffineForm {
                coeffs: r.coroot.iter().map(|&c| int(c)).collect(),
                constant: int(ht - i),
            });
        }
    }
    Ok(out)
}

/// `P_η` with leading constant 1.
pub fn p_eta(rs: &RootSystem, eta: &Weight) -> Result<UhPolynomial> {
    let mut p = UhPolynomial::one(rs.rank());
    for f in p_eta_factors(rs, eta)? {
        p = &p * &UhPolynomial::from_affine(&f);
    }
    if p.degree() != Some(k_value(rs, eta)? as u32) {
        return Err(Error::Internal(format!(
            "degree of P_{eta} is not k({eta})"
        )));
    }
    Ok(p)
}

/// `F_w(h) = w(h) + ⟨w(h) − h, ρ⟩`.
pub fn fw_on_h(rs: &RootSystem, w: &WeylElement, h: &CorootVector) -> Result<UhPolynomial> {
    if h.rank() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            got: h.rank(),
        });
    }
    let f = fw_affine(
        rs,
        w,
        &AffineForm {
            coeffs: h.0.clone(),
            constant: Scalar::zero(),
        },
    );
    Ok(UhPolynomial::from_affine(&f))
}

/// `F_w` on an affine form `h + c`.
pub fn fw_affine(rs: &RootSystem, w: &WeylElement, f: &AffineForm) -> AffineForm {
    let wh = w.apply_coroot(rs, &CorootVector(f.coeffs.clone()));
    let shift: Scalar = wh.0.iter().sum::<Scalar>() - f.coeffs.iter().sum::<Scalar>();
    AffineForm {
        coeffs: wh.0,
        constant: &f.constant + shift,
    }
}

/// `F_w` extended to `U(ĥ)` as an algebra endomorphism.
pub fn fw_on_poly(rs: &RootSystem, w: &WeylElement, p: &UhPolynomial) -> Result<UhPolynomial> {
    let images: Vec<UhPolynomial> = (0..rs.rank())
        .map(|j| fw_on_h(rs, w, &CorootVector::simple(rs.rank(), j)))
        .collect::<Result<_>>()?;
    p.substitute(&images)
}

/// Constant term of `F_{w₀}(P_γ)`, computed by expansion and by the closed
/// product `∏ (−1)^{⟨γ,α∨⟩} ∏ᵢ (⟨α∨,ρ⟩ + i)`.
pub fn fw0_p_constant(rs: &RootSystem, gamma: &Weight) -> Result<Scalar> {
    let w0 = weyl::longest_element(rs);
    let expanded = fw_on_poly(rs, &w0, &p_eta(rs, gamma)?)?.constant_term();
    let mut closed = BigInt::one();
    for r in rs.positive_roots() {
        let n: i64 = gamma.0.iter().zip(&r.coroot).map(|(a, b)| a * b).sum();
        let ht = r.coroot_height();
        for i in 1..=n {
            closed *= -(ht + i);
        }
    }
    let closed = Scalar::from_integer(closed);
    if expanded != closed {
        return Err(Error::Internal(format!(
            "constant term {expanded} of F_w0(P_{gamma}) disagrees with {closed}"
        )));
    }
    if closed.is_zero() {
        return Err(Error::Internal(format!(
            "F_w0(P_{gamma}) has zero constant term"
        )));
    }
    Ok(closed)
}

/// `ord + ⟨μ − w(μ), ρ∨⟩`.
pub fn order_twist(rs: &RootSystem, mu: &Weight, order: i64, w: &WeylElement) -> Result<i64> {
    rs.check_rank(mu)?;
    let diff = mu - &w.apply(mu);
    let twice = rs.pair_two_rho_check(&diff);
    if twice % 2 != 0 {
        return Err(Error::Internal(format!(
            "{diff} is not in the root lattice"
        )));
    }
    Ok(order + twice / 2)
}

/// `ψ_Γ`: `h ↦ Σⱼ ⟨γⱼ*, h⟩ yⱼ` over the dual basis of `Γ`.
pub fn psi_gamma(rs: &RootSystem, p: &UhPolynomial, gamma: &GammaMonoid) -> Result<UhPolynomial> {
    let duals = gamma.dual_basis(rs)?;
    let r = duals.stars.len();
    let images: Vec<UhPolynomial> = (0..rs.rank())
        .map(|k| {
            let mut img = UhPolynomial::zero(r).with_symbol('y');
            for (j, s) in duals.stars.iter().enumerate() {
                img = &img + &UhPolynomial::var(r, j).with_symbol('y').scale(&int(s.0[k]));
            }
            img
        })
        .collect();
    p.substitute(&images)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExoticOrderReport {
    pub k: i64,
    pub degree: i64,
    pub module_dim: BigInt,
}

/// Order, degree and dimension of the module of operators attached to `γ ∈ Γ`.
pub fn exotic_order_report(
    rs: &RootSystem,
    gamma: &Weight,
    monoid: &GammaMonoid,
) -> Result<ExoticOrderReport> {
    if monoid.contains(rs, gamma)?.is_none() {
        return Err(Error::Domain(format!("{gamma} is not in Γ")));
    }
    Ok(ExoticOrderReport {
        k: k_value(rs, gamma)?,
        degree: -1,
        module_dim: rs.weyl_dimension(gamma)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Surjectivity {
    Surjective,
    NotSurjective,
    CriterionNotApplicable,
}

impl fmt::Display for Surjectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinOrbitReport {
    #[serde(rename = "type")]
    pub simple_type: String,
    pub highest_root: Weight,
    pub k: i64,
    pub coxeter_h: i64,
    pub two_h_minus_2: i64,
    pub surjectivity: Surjectivity,
}

pub fn min_orbit_report(t: SimpleType) -> Result<MinOrbitReport> {
    let rs = RootSystem::build(&[t])?;
    let theta = rs.highest_roots()[0].clone();
    let k = k_value(&rs, &theta)?;
    let h = rs.coxeter_number(0);
    if k != 2 * (h - 1) {
        return Err(Error::Internal(format!("k(α̃) ≠ 2(h−1) for {t}")));
    }
    let surjectivity = if !t.family.is_classical() {
        Surjectivity::CriterionNotApplicable
    } else if k <= 4 {
        Surjectivity::Surjective
    } else {
        Surjectivity::NotSurjective
    };
    Ok(MinOrbitReport {
        simple_type: t.to_string(),
        highest_root: theta,
        k,
        coxeter_h: h,
        two_h_minus_2: 2 * (h - 1),
        surjectivity,
    })
}

/// Closed form of `k(α̃)` for the family of `t` (`l` is the rank).
pub fn family_formula(t: SimpleType) -> &'static str {
    match (t.family, t.rank) {
        (Family::A, _) => "2l",
        (Family::B | Family::C, _) => "2(2l-1)",
        (Family::D, _) => "2(2l-3)",
        (Family::E, 6) | (Family::F, _) => "22",
        (Family::E, 7) => "34",
        (Family::E, _) => "58",
        (Family::G, _) => "10",
    }
}

/// Types covered by the standard table: A1–A8, B2–B6, C2–C6, D3–D6, E6–E8, F4, G2.
pub fn min_orbit_table_types() -> Vec<SimpleType> {
    let mut out = Vec::new();
    let mut push = |family, ranks: std::ops::RangeInclusive<usize>| {
        for rank in ranks {
            out.push(SimpleType { family, rank });
        }
    };
    push(Family::A, 1..=8);
    push(Family::B, 2..=6);
    push(Family::C, 2..=6);
    push(Family::D, 3..=6);
    push(Family::E, 6..=8);
    push(Family::F, 4..=4);
    push(Family::G, 2..=2);
    out
}

pub fn min_orbit_table() -> Result<Vec<MinOrbitReport>> {
    min_orbit_table_types()
        .into_iter()
        .map(min_orbit_report)
        .collect()
}

/// Default cap on the number of factor choices examined by [`nullstellensatz_check`].
pub const DEFAULT_NULLSTELLENSATZ_CAP: u64 = 1 << 24;

/// Affine equations kept in echelon form.
#[derive(Clone)]
struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
    n: usize,
}

impl Echelon {
    /// Adds `a·h + c = 0`; returns false if the system becomes inconsistent.
    fn push(&mut self, f: &AffineForm) -> bool {
        let mut v: Vec<Scalar> = f.coeffs.clone();
        v.push(f.constant.clone());
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let t = v[*p].clone();
                for j in 0..=self.n {
                    v[j] = &v[j] - &t * &row[j];
                }
            }
        }
        match (0..self.n).find(|&j| !v[j].is_zero()) {
            None => v[self.n].is_zero(),
            Some(p) => {
                let lead = v[p].clone();
                for x in v.iter_mut() {
                    *x = &*x / &lead;
                }
                for (_, row) in self.rows.iter_mut() {
                    if !row[p].is_zero() {
                        let t = row[p].clone();
                        for j in 0..=self.n {
                            row[j] = &row[j] - &t * &v[j];
                        }
                    }
                }
                self.rows.push((p, v));
                true
            }
        }
    }
}

/// Decides whether the polynomials `F_w(P_η)`, `w ∈ W`, have no common zero.
///
/// Each `F_w(P_η)` is a product of affine forms, so a common zero is a
/// choice of one factor per `w` whose equations are simultaneously solvable.
pub fn nullstellensatz_check(
    rs: &RootSystem,
    eta: &Weight,
    cap: u64,
    weyl_cap: u64,
) -> Result<bool> {
    let base = p_eta_factors(rs, eta)?;
    if eta.is_zero() {
        return Err(Error::Domain("η must be nonzero".into()));
    }
    let elements = weyl::enumerate(rs, weyl_cap)?;
    let choices = BigInt::from(base.len()).pow(elements.len() as u32);
    if choices > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            what: "factor choices",
            needed: choices.to_string(),
            cap,
        });
    }
    let factor_sets: Vec<Vec<AffineForm>> = elements
        .iter()
        .map(|w| base.iter().map(|f| fw_affine(rs, w, f)).collect())
        .collect();

    fn solvable(k: usize, sets: &[Vec<AffineForm>], sys: &Echelon) -> bool {
        if k == sets.len() {
            return true;
        }
        sets[k].iter().any(|f| {
            let mut next = sys.clone();
            next.push(f) && solvable(k + 1, sets, &next)
        })
    }

    let start = Echelon {
        rows: Vec::new(),
        n: rs.rank(),
    };
    Ok(!solvable(0, &factor_sets, &start))
}
