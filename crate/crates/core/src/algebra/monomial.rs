use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then exponents compared left to right (x0 > x1 > ...).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &WeightVector) -> u32 {
        self.0.iter().zip(w.as_slice()).map(|(e, w)| e * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// d/dx_i: (exponent, lowered monomial), or None when x_i is absent.
    pub fn partial(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = self.0[i];
        if e == 0 {
            return None;
        }
        let mut lowered = self.0.clone();
        lowered[i] -= 1;
        Some((e, Monomial(lowered)))
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Positive integer weights, one per coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn ones(nvars: usize) -> Self {
        WeightVector(vec![1; nvars])
    }

    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidParameter("weights must be positive".into()));
        }
        Ok(WeightVector(weights))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        self.0.iter().all(|&w| w == 1)
    }
}

/// All monomials of weighted degree `i` in `n` variables, ascending graded-lex.
pub fn monomial_basis(n: usize, i: u32, w: &WeightVector) -> Vec<Monomial> {
    assert_eq!(w.len(), n, "weight vector length must match coordinate count");
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(0, i, w.as_slice(), &mut current, &mut out);
    out.sort();
    out
}

fn fill(pos: usize, remaining: u32, w: &[u32], current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos == current.len() {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
        }
        return;
    }
    let mut e = 0;
    while e * w[pos] <= remaining {
        current[pos] = e;
        fill(pos + 1, remaining - e * w[pos], w, current, out);
        e += 1;
    }
    current[pos] = 0;
}
