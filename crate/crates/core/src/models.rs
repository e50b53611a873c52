//! Catalog of the local models.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use crate::algebra::{int, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::multivec::{AffinePointMap, MultiIndex, Multivector, Shift};
use crate::poisson::PoissonStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ModelName {
    NearPositive,
    NearSymplectic2n,
    Log2n,
    BlfCircle,
    BlfPoint,
    Sl2Dual,
    SymplecticStd,
    PhaseSpaceExample,
}

impl ModelName {
    pub const ALL: [ModelName; 8] = [
        ModelName::NearPositive,
        ModelName::NearSymplectic2n,
        ModelName::Log2n,
        ModelName::BlfCircle,
        ModelName::BlfPoint,
        ModelName::Sl2Dual,
        ModelName::SymplecticStd,
        ModelName::PhaseSpaceExample,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelName::NearPositive => "near-positive",
            ModelName::NearSymplectic2n => "near-symplectic-2n",
            ModelName::Log2n => "log-2n",
            ModelName::BlfCircle => "blf-circle",
            ModelName::BlfPoint => "blf-point",
            ModelName::Sl2Dual => "sl2-dual",
            ModelName::SymplecticStd => "symplectic-std",
            ModelName::PhaseSpaceExample => "phase-space-example",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ModelName::NearPositive => "x1(d0^d1 + d2^d3) + x3(d0^d3 + d1^d2) on R^4",
            ModelName::NearSymplectic2n => "near-positive block plus n-2 blocks dp^dq",
            ModelName::Log2n => "x1 d0^d1 plus n-2 blocks dp^dq (2n-2 coordinates)",
            ModelName::BlfCircle => "fold-circle model in (theta,x1,x2,x3), optional factor k",
            ModelName::BlfPoint => "Lefschetz-point model in (x1,x2,x3,x4), optional factor k",
            ModelName::Sl2Dual => "Lie-Poisson structure of sl(2,R)* in (x1,x2,x3)",
            ModelName::SymplecticStd => "sum of d(x2i)^d(x2i+1) on R^2n",
            ModelName::PhaseSpaceExample => "p1(dq1^dp1 + dq2^dp2) + p2(dq1^dp2 + dp1^dq2)",
        }
    }

    /// Whether the model takes the integer parameter n.
    pub fn takes_n(self) -> bool {
        matches!(self, ModelName::NearSymplectic2n | ModelName::Log2n | ModelName::SymplecticStd)
    }

    pub fn takes_factor(self) -> bool {
        matches!(self, ModelName::BlfCircle | ModelName::BlfPoint)
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('_', "-");
        ModelName::ALL
            .into_iter()
            .find(|m| m.as_str() == key)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub name: ModelName,
    /// Half-dimension for the families; ignored elsewhere.
    pub n: Option<u32>,
    /// Conformal factor for the fold/Lefschetz models.
    pub factor: Option<Polynomial>,
}

impl ModelSpec {
    pub fn new(name: ModelName) -> Self {
        ModelSpec { name, n: None, factor: None }
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_factor(mut self, k: Polynomial) -> Self {
        self.factor = Some(k);
        self
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn symplectic_names(prefix: &[&str], pairs: usize) -> Vec<String> {
    let mut out = names(prefix);
    for i in 1..=pairs {
        out.push(format!("p{i}"));
        out.push(format!("q{i}"));
    }
    out
}

fn x(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

fn term(pi: &mut Multivector, a: usize, b: usize, c: Polynomial) {
    let (s, idx) = MultiIndex::from_unsorted(&[a, b]).expect("distinct indices");
    pi.add_term(idx, c.scale(&int(s as i64)));
}

fn one(n: usize) -> Polynomial {
    Polynomial::one(n)
}

fn near_positive_terms(pi: &mut Multivector, n: usize) {
    term(pi, 0, 1, x(n, 1));
    term(pi, 2, 3, x(n, 1));
    term(pi, 0, 3, x(n, 3));
    term(pi, 1, 2, x(n, 3));
}

fn fold_terms(pi: &mut Multivector, n: usize, off: usize) {
    // x1 ∂2∧∂3 + x2 ∂1∧∂3 − x3 ∂1∧∂2, coordinates shifted by `off`
    let (a, b, c) = (off, off + 1, off + 2);
    term(pi, b, c, x(n, a));
    term(pi, a, c, x(n, b));
    term(pi, a, b, -x(n, c));
}

fn lefschetz_terms(pi: &mut Multivector) {
    let n = 4;
    let v = |i: usize| x(n, i - 1);
    let q = |a: Polynomial, b: Polynomial| &a * &b;
    term(pi, 0, 1, q(v(3), v(3)) + q(v(4), v(4)));
    term(pi, 0, 2, -q(v(1), v(4)) + q(v(2), v(3)));
    term(pi, 0, 3, -q(v(2), v(4)) - q(v(1), v(3)));
    term(pi, 1, 2, q(v(1), v(3)) + q(v(2), v(4)));
    term(pi, 1, 3, -q(v(1), v(4)) + q(v(2), v(3)));
    term(pi, 2, 3, q(v(1), v(1)) + q(v(2), v(2)));
}

fn require_n(spec: &ModelSpec, default: u32, min: u32) -> Result<usize> {
    let n = spec.n.unwrap_or(default);
    if n < min {
        return Err(Error::InvalidParameter(format!("{} needs n >= {min}, got {n}", spec.name)));
    }
    Ok(n as usize)
}

pub fn model(spec: &ModelSpec) -> Result<PoissonStructure> {
    if spec.factor.is_some() && !spec.name.takes_factor() {
        return Err(Error::InvalidParameter(format!("{} takes no conformal factor", spec.name)));
    }
    let (coords, mut pi) = match spec.name {
        ModelName::NearPositive => {
            let mut pi = Multivector::zero(4, 2);
            near_positive_terms(&mut pi, 4);
            (names(&["x0", "x1", "x2", "x3"]), pi)
        }
        ModelName::NearSymplectic2n => {
            let half = require_n(spec, 2, 2)?;
            let dim = 2 * half;
            let mut pi = Multivector::zero(dim, 2);
            near_positive_terms(&mut pi, dim);
            for b in 0..half - 2 {
                term(&mut pi, 4 + 2 * b, 5 + 2 * b, one(dim));
            }
            (symplectic_names(&["x0", "x1", "x2", "x3"], half - 2), pi)
        }
        ModelName::Log2n => {
            let half = require_n(spec, 2, 2)?;
            let dim = 2 * half - 2;
            let mut pi = Multivector::zero(dim, 2);
            term(&mut pi, 0, 1, x(dim, 1));
            for b in 0..half - 2 {
                term(&mut pi, 2 + 2 * b, 3 + 2 * b, one(dim));
            }
            (symplectic_names(&["x0", "x1"], half - 2), pi)
        }
        ModelName::BlfCircle => {
            let mut pi = Multivector::zero(4, 2);
            fold_terms(&mut pi, 4, 1);
            (names(&["theta", "x1", "x2", "x3"]), pi)
        }
        ModelName::BlfPoint => {
            let mut pi = Multivector::zero(4, 2);
            lefschetz_terms(&mut pi);
            (names(&["x1", "x2", "x3", "x4"]), pi)
        }
        ModelName::Sl2Dual => {
            let mut pi = Multivector::zero(3, 2);
            fold_terms(&mut pi, 3, 0);
            (names(&["x1", "x2", "x3"]), pi)
        }
        ModelName::SymplecticStd => {
            let half = require_n(spec, 2, 1)?;
            let dim = 2 * half;
            let mut pi = Multivector::zero(dim, 2);
            for b in 0..half {
                term(&mut pi, 2 * b, 2 * b + 1, one(dim));
            }
            ((0..dim).map(|i| format!("x{i}")).collect(), pi)
        }
        ModelName::PhaseSpaceExample => {
            // coordinates (q1, p1, q2, p2)
            let n = 4;
            let mut pi = Multivector::zero(n, 2);
            term(&mut pi, 0, 1, x(n, 1));
            term(&mut pi, 2, 3, x(n, 1));
            term(&mut pi, 0, 3, x(n, 3));
            term(&mut pi, 1, 2, x(n, 3));
            (names(&["q1", "p1", "q2", "p2"]), pi)
        }
    };
    if let Some(k) = &spec.factor {
        if k.nvars() != pi.nvars() {
            return Err(Error::CoordinateMismatch { left: pi.nvars(), right: k.nvars() });
        }
        pi = pi.mul_poly(k);
    }
    // all-ones weights everywhere; for the Lefschetz model they give ω̄(P¹) = ω̄(P²) = 2
    PoissonStructure::new(coords, pi)?.validate()
}

pub fn catalog_model(name: ModelName) -> PoissonStructure {
    model(&ModelSpec::new(name)).expect("catalog defaults are valid")
}

/// (x0, x1, x2, x3) ↦ (x0 + τ, −x1, x2, −x3).
pub fn involution_map() -> AffinePointMap {
    let d = [1, -1, 1, -1];
    let linear = (0..4)
        .map(|i| (0..4).map(|j| if i == j { int(d[i]) } else { int(0) }).collect())
        .collect();
    let mut shift = vec![Shift::zero(); 4];
    shift[0] = Shift::symbolic(Scalar::one());
    AffinePointMap::new(linear, shift).expect("involution is invertible")
}

/// Casimirs Q¹ = θ, Q² = −x1² + x2² + x3² of the fold model.
pub fn fold_casimirs() -> (Polynomial, Polynomial) {
    let n = 4;
    let q1 = x(n, 0);
    let q2 = -(&x(n, 1) * &x(n, 1)) + &x(n, 2) * &x(n, 2) + &x(n, 3) * &x(n, 3);
    (q1, q2)
}

/// Casimirs P¹ = x1² − x2² + x3² − x4², P² = 2(x1x2 + x3x4) of the Lefschetz model.
pub fn lefschetz_casimirs() -> (Polynomial, Polynomial) {
    let n = 4;
    let v = |i: usize| x(n, i - 1);
    let p1 = &v(1) * &v(1) - &v(2) * &v(2) + &v(3) * &v(3) - &v(4) * &v(4);
    let p2 = (&v(1) * &v(2) + &v(3) * &v(4)).scale(&int(2));
    (p1, p2)
}
