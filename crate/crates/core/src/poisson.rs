//! Poisson-structure level queries.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{frac, int, monomial_basis, Polynomial, Scalar, WeightVector};
use crate::complexes::linear_system;
use crate::error::{Error, Result};
use crate::linalg::{self, rank_bareiss};
use crate::multivec::{divergence, MultiIndex, Multivector, OneForm, VolumeForm};

/// Named coordinates, a bivector, weights and a volume form.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonStructure {
    names: Vec<String>,
    bivector: Multivector,
    weights: WeightVector,
    volume: VolumeForm,
    validated: bool,
}

impl PoissonStructure {
    pub fn new(names: Vec<String>, bivector: Multivector) -> Result<Self> {
        if bivector.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, found: bivector.degree() });
        }
        if names.len() != bivector.nvars() {
            return Err(Error::CoordinateMismatch { left: names.len(), right: bivector.nvars() });
        }
        for (k, a) in names.iter().enumerate() {
            if names[..k].contains(a) {
                return Err(Error::InvalidParameter(format!("duplicate coordinate `{a}`")));
            }
        }
        let n = names.len();
        Ok(PoissonStructure {
            names,
            bivector,
            weights: WeightVector::ones(n),
            volume: VolumeForm::standard(),
            validated: false,
        })
    }

    /// Coordinates x0..x{n-1}.
    pub fn with_default_names(bivector: Multivector) -> Result<Self> {
        Self::new(Polynomial::default_names(bivector.nvars()), bivector)
    }

    pub fn with_weights(mut self, w: WeightVector) -> Result<Self> {
        if w.len() != self.dim() {
            return Err(Error::CoordinateMismatch { left: self.dim(), right: w.len() });
        }
        self.weights = w;
        Ok(self)
    }

    pub fn with_volume(mut self, v: VolumeForm) -> Self {
        self.volume = v;
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        let w = self.weights.clone();
        let v = self.volume.clone();
        let validated = self.validated;
        self = Self::new(names, self.bivector)?.with_weights(w)?.with_volume(v);
        self.validated = validated;
        Ok(self)
    }

    /// Runs the Jacobi check and marks the structure as validated.
    pub fn validate(mut self) -> Result<Self> {
        let report = jacobi_check(&self);
        if !report.is_poisson {
            return Err(Error::NotPoisson { witness: Box::new(report.witness) });
        }
        self.validated = true;
        Ok(self)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn bivector(&self) -> &Multivector {
        &self.bivector
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn volume(&self) -> &VolumeForm {
        &self.volume
    }

    /// π^{ij} = π(dx_i, dx_j).
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.bivector.component(&[i, j])
    }

    pub fn matrix(&self) -> Vec<Vec<Polynomial>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// Common total degree of the coefficients (None for π = 0).
    pub fn coefficient_degree(&self) -> Result<Option<u32>> {
        if self.bivector.is_zero() {
            return Ok(None);
        }
        self.bivector
            .coefficient_degree(&WeightVector::ones(self.dim()))
            .map(Some)
            .ok_or(Error::NotHomogeneous)
    }

    /// d^k maps coefficient degree i to i + shift.
    pub fn slice_shift(&self) -> Result<i64> {
        Ok(self.coefficient_degree()?.map_or(0, |d| d as i64 - 1))
    }

    pub fn format_bivector(&self) -> String {
        self.bivector.format_with(&self.names)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport {
    pub is_poisson: bool,
    /// [π,π]; zero exactly when `is_poisson`.
    pub witness: Multivector,
}

pub fn jacobi_check(pi: &PoissonStructure) -> JacobiReport {
    let w = pi.bivector.schouten(&pi.bivector);
    JacobiReport { is_poisson: w.is_zero(), witness: w }
}

/// π^♯(α) = Σ_j (Σ_i π^{ji} α_i) ∂_j
pub fn anchor(pi: &PoissonStructure, alpha: &OneForm) -> Result<Multivector> {
    let n = pi.dim();
    if alpha.nvars() != n {
        return Err(Error::CoordinateMismatch { left: n, right: alpha.nvars() });
    }
    let mut comps = vec![Polynomial::zero(n); n];
    for (idx, c) in pi.bivector.terms() {
        let ij = idx.indices();
        let (a, b) = (ij[0], ij[1]);
        // π^{ab} = c, π^{ba} = −c
        comps[a] = &comps[a] + &(c * &alpha.coeffs()[b]);
        comps[b] = &comps[b] - &(c * &alpha.coeffs()[a]);
    }
    Ok(Multivector::vector(comps))
}

/// X_f = π^♯(df).
pub fn hamiltonian(pi: &PoissonStructure, f: &Polynomial) -> Result<Multivector> {
    if f.nvars() != pi.dim() {
        return Err(Error::CoordinateMismatch { left: pi.dim(), right: f.nvars() });
    }
    anchor(pi, &OneForm::differential(f))
}

/// Basis of the weighted-degree-i polynomials with vanishing Hamiltonian field.
pub fn casimir_basis(pi: &PoissonStructure, i: u32) -> Result<Vec<Polynomial>> {
    let n = pi.dim();
    let basis = monomial_basis(n, i, &pi.weights);
    let images: Vec<Multivector> = basis
        .iter()
        .map(|m| hamiltonian(pi, &Polynomial::term(m.clone(), Scalar::one())))
        .collect::<Result<_>>()?;
    let (a, _) = linear_system(&images, None);
    Ok(linalg::kernel_basis(&a)
        .into_iter()
        .map(|v| {
            let p = Polynomial::from_terms(n, v.into_iter().map(|(j, c)| (basis[j].clone(), c)));
            p.primitive().1
        })
        .collect())
}

/// Y = Σ_j (Σ_i ∂_i π^{ji}) ∂_j, i.e. minus the divergences of π^♯(dx_j).
pub fn modular_field(pi: &PoissonStructure, omega: &VolumeForm) -> Result<Multivector> {
    let n = pi.dim();
    let mut comps = Vec::with_capacity(n);
    for j in 0..n {
        let h = anchor(pi, &OneForm::dx(n, j))?;
        comps.push(-divergence(&h, omega)?);
    }
    Ok(Multivector::vector(comps))
}

/// π∧…∧π (m factors), no normalization.
pub fn wedge_power(pi: &PoissonStructure, m: usize) -> Multivector {
    let mut acc = Multivector::function(Polynomial::one(pi.dim()));
    for _ in 0..m {
        acc = acc.wedge(&pi.bivector);
    }
    acc
}

/// Exact rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointEval(pub Vec<Scalar>);

impl Serialize for PointEval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl PointEval {
    pub fn new(coords: Vec<Scalar>) -> Self {
        PointEval(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        PointEval(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::CoordinateMismatch { left: n, right: self.0.len() });
        }
        Ok(())
    }
}

pub fn evaluated_matrix(pi: &PoissonStructure, p: &PointEval) -> Result<Vec<Vec<Scalar>>> {
    p.check(pi.dim())?;
    pi.matrix()
        .iter()
        .map(|row| row.iter().map(|c| c.eval(p.coords())).collect())
        .collect()
}

pub fn rank_at(pi: &PoissonStructure, p: &PointEval) -> Result<usize> {
    Ok(rank_bareiss(&evaluated_matrix(pi, p)?))
}

/// Linearization of π at a zero: rows ∂_{ab} (a<b), columns ∂/∂x_v.
#[derive(Clone, Debug, PartialEq)]
pub struct IntrinsicGradient {
    pub point: PointEval,
    pub matrix: Vec<Vec<Scalar>>,
    pub rank: usize,
}

pub fn intrinsic_gradient(pi: &PoissonStructure, p: &PointEval) -> Result<IntrinsicGradient> {
    let n = pi.dim();
    p.check(n)?;
    if !pi.bivector.eval(p.coords())?.is_empty() {
        return Err(Error::NotInZeroLocus);
    }
    let mut matrix = Vec::new();
    for idx in MultiIndex::all(n, 2) {
        let c = pi.bivector.coeff(idx);
        matrix.push(
            (0..n)
                .map(|v| c.partial(v).and_then(|d| d.eval(p.coords())))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let rank = rank_bareiss(&matrix);
    Ok(IntrinsicGradient { point: p.clone(), matrix, rank })
}

/// Σ_i (num_i / den) dx_i
#[derive(Clone, Debug, PartialEq)]
pub struct RationalOneForm {
    pub numerators: Vec<Polynomial>,
    pub denominator: Polynomial,
}

impl RationalOneForm {
    /// π^♯ of the numerator one-form; the result is this times `denominator`.
    pub fn anchor_numerator(&self, pi: &PoissonStructure) -> Result<Multivector> {
        anchor(pi, &OneForm::new(self.numerators.clone())?)
    }

    /// anchor(π, self) = Y, checked as Σ_i π^{ji} num_i = den·Y_j.
    pub fn inverts(&self, pi: &PoissonStructure, y: &Multivector) -> Result<bool> {
        Ok(self.anchor_numerator(pi)? == y.mul_poly(&self.denominator))
    }
}

fn poly_det(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    // Bareiss over Q[x]; every division is exact.
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut a = m.to_vec();
    let mut sign = Scalar::one();
    let mut prev = Polynomial::one(nvars);
    for c in 0..n {
        let Some(found) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Polynomial::zero(nvars);
        };
        if found != c {
            a.swap(c, found);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let num = &(&a[c][c] * &a[i][j]) - &(&a[i][c] * &a[c][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = Polynomial::zero(nvars);
        }
        prev = a[c][c].clone();
    }
    a[n - 1][n - 1].scale(&sign)
}

/// Pfaffian of an even skew matrix by expansion along the first row.
pub fn pfaffian(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    if n % 2 == 1 {
        return Polynomial::zero(nvars);
    }
    let mut acc = Polynomial::zero(nvars);
    for j in 1..n {
        if m[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let sub: Vec<Vec<Polynomial>> = keep
            .iter()
            .map(|&r| keep.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        let term = &m[0][j] * &pfaffian(&sub, nvars);
        let s = if j % 2 == 1 { Scalar::one() } else { -Scalar::one() };
        acc.add_scaled(&term, &s);
    }
    acc
}

/// Solves π^♯(α) = Y over the rational-function field by the adjugate.
/// The adjugate of an even skew matrix is divisible by the Pfaffian, so the
/// denominator returned is Pf(π) up to a constant.
pub fn anchor_invert(pi: &PoissonStructure, y: &Multivector) -> Result<RationalOneForm> {
    let n = pi.dim();
    if y.degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: y.degree() });
    }
    if y.nvars() != n {
        return Err(Error::CoordinateMismatch { left: n, right: y.nvars() });
    }
    let m = pi.matrix(); // row j, column i: π^{ji}
    let pf = pfaffian(&m, n);
    if pf.is_zero() {
        return Err(Error::Degenerate);
    }
    let ycomp: Vec<Polynomial> = (0..n).map(|j| y.coeff(MultiIndex::single(j))).collect();
    let mut numerators = Vec::with_capacity(n);
    for i in 0..n {
        // adj[i][j] = (−1)^{i+j} det(M without row j, column i)
        let mut acc = Polynomial::zero(n);
        for j in 0..n {
            if ycomp[j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Polynomial>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let cof = poly_det(&minor, n);
            let s = if (i + j) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            acc.add_scaled(&(&cof * &ycomp[j]), &s);
        }
        numerators.push(acc.div_exact(&pf).ok_or(Error::Degenerate)?);
    }
    let (scale, den) = pf.primitive();
    let numerators: Vec<Polynomial> = numerators.iter().map(|p| p.scale(&scale)).collect();
    let form = RationalOneForm { numerators, denominator: den };
    debug_assert!(form.inverts(pi, y).unwrap_or(false));
    Ok(form)
}

/// {x_i,x_j} = dx_i∧dx_j∧df∧dg / Ω in four variables.
pub fn jacobian_bivector(f: &Polynomial, g: &Polynomial, omega: &VolumeForm) -> Result<PoissonStructure> {
    if f.nvars() != 4 {
        return Err(Error::WrongDimension { expected: 4, found: f.nvars() });
    }
    if g.nvars() != 4 {
        return Err(Error::WrongDimension { expected: 4, found: g.nvars() });
    }
    let df: Vec<Polynomial> = (0..4).map(|i| f.partial(i)).collect::<Result<_>>()?;
    let dg: Vec<Polynomial> = (0..4).map(|i| g.partial(i)).collect::<Result<_>>()?;
    let inv_scale = omega.scale().recip();
    let mut pi = Multivector::zero(4, 2);
    for idx in MultiIndex::all(4, 2) {
        let ij = idx.indices();
        let rest: Vec<usize> = (0..4).filter(|k| !idx.contains(*k)).collect();
        let (k, l) = (rest[0], rest[1]);
        let (s, _) = MultiIndex::from_unsorted(&[ij[0], ij[1], k, l]).expect("permutation");
        let minor = &(&df[k] * &dg[l]) - &(&df[l] * &dg[k]);
        pi.add_term(idx, minor.scale(&(&inv_scale * int(s as i64))));
    }
    PoissonStructure::with_default_names(pi)
}

/// A vector field Y with [π,Y] = π, or None when none exists with
/// coefficients of degree ≤ max_degree.
pub fn exactness_witness(pi: &PoissonStructure, max_degree: u32) -> Result<Option<Multivector>> {
    let n = pi.dim();
    if pi.bivector.is_zero() {
        return Ok(Some(Multivector::zero(n, 1)));
    }
    // scaled (weighted) Euler fields first
    let mut candidates = vec![Multivector::euler(n)];
    if !pi.weights.is_standard() {
        candidates.push(Multivector::weighted_euler(&pi.weights));
    }
    for e in candidates {
        if let Some(c) = proportionality(&pi.bivector.schouten(&e), &pi.bivector) {
            let max_coeff = e.coefficient_degrees(&WeightVector::ones(n)).into_iter().max().unwrap_or(0);
            if !c.is_zero() && max_coeff <= max_degree {
                return Ok(Some(e.scale(&c.recip())));
            }
        }
    }
    // joint solve over all coefficient degrees ≤ max_degree
    let mut domain = Vec::new();
    for d in 0..=max_degree {
        for m in monomial_basis(n, d, &WeightVector::ones(n)) {
            for i in 0..n {
                domain.push(Multivector::monomial_term(
                    MultiIndex::single(i),
                    Polynomial::term(m.clone(), Scalar::one()),
                ));
            }
        }
    }
    let images: Vec<Multivector> = domain.iter().map(|y| pi.bivector.schouten(y)).collect();
    let (a, b) = linear_system(&images, Some(&pi.bivector));
    let Some(x) = linalg::solve(&a, &b.expect("rhs requested")) else {
        return Ok(None);
    };
    let mut y = Multivector::zero(n, 1);
    for (j, c) in x {
        y = y.add(&domain[j].scale(&c));
    }
    debug_assert_eq!(pi.bivector.schouten(&y), pi.bivector);
    Ok(Some(y))
}

/// c with a = c·b, if any.
fn proportionality(a: &Multivector, b: &Multivector) -> Option<Scalar> {
    let (idx, p) = b.terms().next()?;
    let (m, c) = p.terms().next()?;
    let ratio = a.coeff(*idx).coeff(m) / c;
    (a == &b.scale(&ratio)).then_some(ratio)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivitySample {
    pub point: Vec<String>,
    pub value: String,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NearPositivityReport {
    /// ∂_{0123} coefficient of π∧π.
    pub top_coefficient: String,
    pub samples: Vec<PositivitySample>,
    pub nonnegative: bool,
    pub counterexample: Option<usize>,
}

pub fn near_positivity_sample(pi: &PoissonStructure, points: &[PointEval]) -> Result<NearPositivityReport> {
    if pi.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, found: pi.dim() });
    }
    let top = wedge_power(pi, 2).coeff(MultiIndex::from_sorted(&[0, 1, 2, 3]));
    let mut samples = Vec::with_capacity(points.len());
    let mut counterexample = None;
    for (k, p) in points.iter().enumerate() {
        p.check(4)?;
        let v = top.eval(p.coords())?;
        let sign = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
        if sign < 0 && counterexample.is_none() {
            counterexample = Some(k);
        }
        samples.push(PositivitySample {
            point: p.coords().iter().map(|c| c.to_string()).collect(),
            value: v.to_string(),
            sign,
        });
    }
    Ok(NearPositivityReport {
        top_coefficient: top.format_with(pi.names()),
        samples,
        nonnegative: counterexample.is_none(),
        counterexample,
    })
}

/// Regular grid {−r..r}^n scaled by 1/2.
pub fn sample_grid(n: usize, r: i64) -> Vec<PointEval> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            for v in -r..=r {
                let mut p: Vec<Scalar> = prefix.clone();
                p.push(frac(v, 2));
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(PointEval).collect()
}
