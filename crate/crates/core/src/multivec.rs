//! Alternating multivector fields with polynomial coefficients.
//!
//! A basis k-vector ∂_I is stored under its sorted index set. The Schouten
//! bracket uses the odd-variable formula
//! [P,Q] = Σ_i (∂P/∂ξ_i)_R ∧ ∂_{x_i}Q − ∂_{x_i}P ∧ (∂Q/∂ξ_i)_L,
//! which gives [X,f] = X(f), the Lie bracket on vector fields and
//! [π,f] = π^♯(df).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{Polynomial, Scalar, WeightVector};
use crate::error::{Error, Result};

pub const MAX_COORDS: usize = 63;

/// Strictly increasing set of coordinate indices (bitmask).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiIndex(u64);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(0)
    }

    pub fn single(i: usize) -> Self {
        assert!(i < MAX_COORDS);
        MultiIndex(1 << i)
    }

    pub fn from_mask(mask: u64) -> Self {
        MultiIndex(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    /// Sorts `indices`, returning the permutation sign; None on a repeat.
    pub fn from_unsorted(indices: &[usize]) -> Option<(i32, MultiIndex)> {
        let mut v = indices.to_vec();
        let mut sign = 1;
        for a in 0..v.len() {
            for b in 0..v.len() - 1 - a {
                if v[b] > v[b + 1] {
                    v.swap(b, b + 1);
                    sign = -sign;
                } else if v[b] == v[b + 1] {
                    return None;
                }
            }
        }
        let mut mask = 0u64;
        for &i in &v {
            assert!(i < MAX_COORDS);
            if mask & (1 << i) != 0 {
                return None;
            }
            mask |= 1 << i;
        }
        Some((sign, MultiIndex(mask)))
    }

    pub fn from_sorted(indices: &[usize]) -> Self {
        let (sign, idx) = Self::from_unsorted(indices).expect("repeated index");
        assert_eq!(sign, 1, "indices must be increasing");
        idx
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Number of members below i.
    pub fn position(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    pub fn without(self, i: usize) -> MultiIndex {
        MultiIndex(self.0 & !(1 << i))
    }

    /// ∂_I ∧ ∂_J = sign · ∂_{I∪J}; None when they overlap.
    pub fn merge(self, other: MultiIndex) -> Option<(i32, MultiIndex)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut m = other.0;
        while m != 0 {
            let b = m.trailing_zeros();
            let above = if b >= 63 { 0 } else { self.0 & !((1u64 << (b + 1)) - 1) };
            inversions += above.count_ones();
            m &= m - 1;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, MultiIndex(self.0 | other.0)))
    }

    /// All index sets of size k in n coordinates, ascending.
    pub fn all(n: usize, k: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if cur.len() == k {
                out.push(MultiIndex::from_sorted(cur));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    pub fn label(self, names: &[String]) -> String {
        self.indices()
            .iter()
            .map(|&i| format!("d{}", names[i]))
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
            let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
            if la != lb {
                return la.cmp(&lb);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn sign_scalar(s: i32) -> Scalar {
    if s >= 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Degree-k multivector field. Degree 0 holds one polynomial under ∅.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multivector {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Polynomial>,
}

impl Multivector {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        assert!(nvars <= MAX_COORDS, "at most {MAX_COORDS} coordinates");
        Multivector { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn function(p: Polynomial) -> Self {
        let mut mv = Multivector::zero(p.nvars(), 0);
        mv.add_term(MultiIndex::empty(), p);
        mv
    }

    /// Constant-coefficient basis element ∂_{i1}∧…∧∂_{ik} (sign-normalized).
    pub fn basis(nvars: usize, indices: &[usize]) -> Self {
        let mut mv = Multivector::zero(nvars, indices.len());
        if let Some((s, idx)) = MultiIndex::from_unsorted(indices) {
            mv.add_term(idx, Polynomial::constant(nvars, sign_scalar(s)));
        }
        mv
    }

    pub fn monomial_term(idx: MultiIndex, coeff: Polynomial) -> Self {
        let mut mv = Multivector::zero(coeff.nvars(), idx.len());
        mv.add_term(idx, coeff);
        mv
    }

    /// Σ Y_i ∂_i
    pub fn vector(components: Vec<Polynomial>) -> Self {
        let n = components.len();
        let mut mv = Multivector::zero(n, 1);
        for (i, c) in components.into_iter().enumerate() {
            assert_eq!(c.nvars(), n);
            mv.add_term(MultiIndex::single(i), c);
        }
        mv
    }

    /// Euler field Σ x_i ∂_i.
    pub fn euler(nvars: usize) -> Self {
        Self::vector((0..nvars).map(|i| Polynomial::var(nvars, i)).collect())
    }

    /// Weighted Euler field Σ w_i x_i ∂_i.
    pub fn weighted_euler(w: &WeightVector) -> Self {
        let n = w.len();
        Self::vector(
            (0..n)
                .map(|i| Polynomial::var(n, i).scale(&Scalar::from_integer(w.as_slice()[i].into())))
                .collect(),
        )
    }

    pub fn add_term(&mut self, idx: MultiIndex, coeff: Polynomial) {
        assert_eq!(idx.len(), self.degree, "multi-index size must equal degree");
        assert_eq!(coeff.nvars(), self.nvars, "coordinate count mismatch");
        if let Some(m) = idx.max_index() {
            assert!(m < self.nvars, "index out of range");
        }
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(&coeff, &Scalar::one());
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled_term(&mut self, idx: MultiIndex, coeff: &Polynomial, c: &Scalar) {
        if coeff.is_zero() || c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(idx)
            .or_insert_with(|| Polynomial::zero(coeff.nvars()));
        slot.add_scaled(coeff, c);
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: MultiIndex) -> Polynomial {
        self.terms.get(&idx).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// Coefficient of ∂_{indices} with the sign of the given ordering.
    pub fn component(&self, indices: &[usize]) -> Polynomial {
        match MultiIndex::from_unsorted(indices) {
            Some((s, idx)) => self.coeff(idx).scale(&sign_scalar(s)),
            None => Polynomial::zero(self.nvars),
        }
    }

    /// Degree-0 value.
    pub fn as_function(&self) -> Polynomial {
        assert_eq!(self.degree, 0);
        self.coeff(MultiIndex::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Multivector) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::CoordinateMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(*i, c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        self.try_add(other).expect("incompatible multivectors")
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Multivector {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Multivector {
        let mut out = Multivector::zero(self.nvars, self.degree);
        if c.is_zero() {
            return out;
        }
        for (i, p) in &self.terms {
            out.terms.insert(*i, p.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Multivector {
        let mut out = Multivector::zero(self.nvars, self.degree);
        for (i, p) in &self.terms {
            out.add_term(*i, p * f);
        }
        out
    }

    pub fn map_coefficients<F: FnMut(&Polynomial) -> Polynomial>(&self, mut f: F) -> Multivector {
        let mut out = Multivector::zero(self.nvars, self.degree);
        for (i, p) in &self.terms {
            out.add_term(*i, f(p));
        }
        out
    }

    /// ∂/∂x_i applied to every coefficient.
    pub fn partial(&self, i: usize) -> Result<Multivector> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.nvars });
        }
        Ok(self.map_coefficients(|p| p.partial(i).expect("checked index")))
    }

    pub fn try_wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        let mut out = Multivector::zero(self.nvars, self.degree + other.degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if let Some((s, k)) = i.merge(*j) {
                    out.add_scaled_term(k, &(a * b), &sign_scalar(s));
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Multivector) -> Multivector {
        self.try_wedge(other).expect("coordinate count mismatch")
    }

    pub fn try_schouten(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        let deg = (self.degree + other.degree).saturating_sub(1);
        let mut out = Multivector::zero(self.nvars, deg);
        if self.degree + other.degree == 0 {
            return Ok(out);
        }
        for (ia, a) in &self.terms {
            for (jb, b) in &other.terms {
                schouten_terms(*ia, a, *jb, b, &mut out);
            }
        }
        Ok(out)
    }

    pub fn schouten(&self, other: &Multivector) -> Multivector {
        self.try_schouten(other).expect("coordinate count mismatch")
    }

    /// Common degree of all coefficients; None if zero or mixed.
    pub fn coefficient_degree(&self, w: &WeightVector) -> Option<u32> {
        let mut it = self.terms.values().map(|p| p.homogeneous_degree(w));
        let first = it.next()??;
        for d in it {
            if d? != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn is_homogeneous(&self, w: &WeightVector) -> bool {
        self.is_zero() || self.coefficient_degree(w).is_some()
    }

    /// Part with coefficients of weighted degree d.
    pub fn homogeneous_part(&self, d: u32, w: &WeightVector) -> Multivector {
        self.map_coefficients(|p| p.homogeneous_part(d, w))
    }

    pub fn coefficient_degrees(&self, w: &WeightVector) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .terms
            .values()
            .flat_map(|p| p.homogeneous_parts(w).into_keys())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<BTreeMap<MultiIndex, Scalar>> {
        let mut out = BTreeMap::new();
        for (i, p) in &self.terms {
            let v = p.eval(point)?;
            if !v.is_zero() {
                out.insert(*i, v);
            }
        }
        Ok(out)
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.degree == 0 {
            return self.as_function().format_with(names);
        }
        let mut parts = Vec::new();
        for (i, p) in &self.terms {
            let label = i.label(names);
            let (neg, body) = coefficient_prefix(p, names);
            parts.push((neg, if body.is_empty() { label } else { format!("{body}*{label}") }));
        }
        let mut s = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(&body);
        }
        s
    }
}

/// Sign and printable factor of a coefficient ("" for ±1).
pub(crate) fn coefficient_prefix(p: &Polynomial, names: &[String]) -> (bool, String) {
    if p.len() == 1 {
        let (m, c) = p.terms().next().expect("one term");
        let neg = c.is_negative();
        let a = c.abs();
        let body = match (m.is_one(), a.is_one()) {
            (true, true) => String::new(),
            (true, false) => a.to_string(),
            (false, true) => m.format_with(names),
            (false, false) => format!("{}*{}", a, m.format_with(names)),
        };
        (neg, body)
    } else {
        (false, format!("({})", p.format_with(names)))
    }
}

fn schouten_terms(ia: MultiIndex, a: &Polynomial, jb: MultiIndex, b: &Polynomial, out: &mut Multivector) {
    let ka = ia.len();
    for i in ia.indices() {
        let db = b.partial(i).expect("index in range");
        if db.is_zero() {
            continue;
        }
        let s_right = if (ka - 1 - ia.position(i)) % 2 == 0 { 1 } else { -1 };
        if let Some((s, k)) = ia.without(i).merge(jb) {
            out.add_scaled_term(k, &(a * &db), &sign_scalar(s * s_right));
        }
    }
    for j in jb.indices() {
        let da = a.partial(j).expect("index in range");
        if da.is_zero() {
            continue;
        }
        let s_left = if jb.position(j) % 2 == 0 { 1 } else { -1 };
        if let Some((s, k)) = ia.merge(jb.without(j)) {
            out.add_scaled_term(k, &(&da * b), &sign_scalar(-s * s_left));
        }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&Polynomial::default_names(self.nvars)))
    }
}

/// Σ_i ∂_i Y^i. The volume scale does not enter.
pub fn divergence(y: &Multivector, _omega: &VolumeForm) -> Result<Polynomial> {
    if y.degree != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: y.degree });
    }
    let mut acc = Polynomial::zero(y.nvars);
    for (idx, p) in &y.terms {
        let i = idx.indices()[0];
        acc.add_scaled(&p.partial(i)?, &Scalar::one());
    }
    Ok(acc)
}

/// Σ f_i dx_i
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneForm {
    coeffs: Vec<Polynomial>,
}

impl OneForm {
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(bad) = coeffs.iter().find(|c| c.nvars() != n) {
            return Err(Error::CoordinateMismatch { left: n, right: bad.nvars() });
        }
        Ok(OneForm { coeffs })
    }

    pub fn dx(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![Polynomial::zero(nvars); nvars];
        coeffs[i] = Polynomial::one(nvars);
        OneForm { coeffs }
    }

    pub fn differential(f: &Polynomial) -> Self {
        OneForm {
            coeffs: (0..f.nvars()).map(|i| f.partial(i).expect("in range")).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }
}

/// λ·dx_0∧…∧dx_{n−1}, λ > 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VolumeForm {
    scale: Scalar,
}

impl VolumeForm {
    pub fn standard() -> Self {
        VolumeForm { scale: Scalar::one() }
    }

    pub fn new(scale: Scalar) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::InvalidParameter("volume scale must be positive".into()));
        }
        Ok(VolumeForm { scale })
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }
}

impl Default for VolumeForm {
    fn default() -> Self {
        Self::standard()
    }
}

/// Translation component a + b·τ with τ a formal parameter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Shift {
    pub value: Scalar,
    pub tau: Scalar,
}

impl Shift {
    pub fn zero() -> Self {
        Shift { value: Scalar::zero(), tau: Scalar::zero() }
    }

    pub fn rational(value: Scalar) -> Self {
        Shift { value, tau: Scalar::zero() }
    }

    pub fn symbolic(tau: Scalar) -> Self {
        Shift { value: Scalar::zero(), tau }
    }
}

/// x ↦ Lx + t with invertible L.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffinePointMap {
    linear: Vec<Vec<Scalar>>,
    shift: Vec<Shift>,
}

impl AffinePointMap {
    pub fn new(linear: Vec<Vec<Scalar>>, shift: Vec<Shift>) -> Result<Self> {
        let n = linear.len();
        if shift.len() != n || linear.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("affine map must be square".into()));
        }
        let map = AffinePointMap { linear, shift };
        if map.determinant().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(map)
    }

    pub fn linear_map(linear: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = linear.len();
        Self::new(linear, vec![Shift::zero(); n])
    }

    pub fn identity(n: usize) -> Self {
        let linear = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        AffinePointMap { linear, shift: vec![Shift::zero(); n] }
    }

    pub fn scaling(n: usize, c: Scalar) -> Result<Self> {
        let linear = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { Scalar::zero() }).collect())
            .collect();
        Self::linear_map(linear)
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[Vec<Scalar>] {
        &self.linear
    }

    pub fn shift(&self) -> &[Shift] {
        &self.shift
    }

    pub fn determinant(&self) -> Scalar {
        crate::linalg::determinant(&self.linear)
    }

    /// self ∘ inner
    pub fn compose(&self, inner: &AffinePointMap) -> Result<AffinePointMap> {
        let n = self.dim();
        if inner.dim() != n {
            return Err(Error::CoordinateMismatch { left: n, right: inner.dim() });
        }
        let mut linear = vec![vec![Scalar::zero(); n]; n];
        let mut shift = self.shift.clone();
        for i in 0..n {
            for k in 0..n {
                let l = &self.linear[i][k];
                if l.is_zero() {
                    continue;
                }
                for j in 0..n {
                    linear[i][j] += l * &inner.linear[k][j];
                }
                shift[i].value += l * &inner.shift[k].value;
                shift[i].tau += l * &inner.shift[k].tau;
            }
        }
        Ok(AffinePointMap { linear, shift })
    }

    fn has_symbolic_shift(&self) -> bool {
        self.shift.iter().any(|s| !s.tau.is_zero())
    }

    /// Coefficient substitution x = L⁻¹(y − t), in n (+1 for τ) variables.
    fn inverse_substitution(&self) -> Result<Vec<Polynomial>> {
        let n = self.dim();
        let inv = crate::linalg::inverse(&self.linear).ok_or(Error::SingularMap)?;
        let tau = self.has_symbolic_shift();
        let nv = if tau { n + 1 } else { n };
        let mut subs = Vec::with_capacity(n);
        for row in &inv {
            let mut p = Polynomial::zero(nv);
            for (k, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                p.add_scaled(&Polynomial::var(nv, k), c);
                p.add_scaled(&Polynomial::constant(nv, self.shift[k].value.clone()), &-c.clone());
                if tau {
                    p.add_scaled(&Polynomial::var(nv, n).scale(&self.shift[k].tau), &-c.clone());
                }
            }
            subs.push(p);
        }
        Ok(subs)
    }

    /// Image of ∂_I under the linear part: Σ_K det(L[K,I]) ∂_K.
    fn basis_image(&self, idx: MultiIndex) -> Multivector {
        let n = self.dim();
        let mut acc = Multivector::function(Polynomial::one(n));
        for i in idx.indices() {
            let col = Multivector::vector(
                (0..n).map(|j| Polynomial::constant(n, self.linear[j][i].clone())).collect(),
            );
            acc = acc.wedge(&col);
        }
        acc
    }
}

/// φ_*A: coefficients composed with φ⁻¹, basis pushed by the linear part.
pub fn pushforward(phi: &AffinePointMap, a: &Multivector) -> Result<Multivector> {
    let n = a.nvars;
    if phi.dim() != n {
        return Err(Error::CoordinateMismatch { left: phi.dim(), right: n });
    }
    let subs = phi.inverse_substitution()?;
    let mut out = Multivector::zero(n, a.degree);
    let mut images: BTreeMap<MultiIndex, Multivector> = BTreeMap::new();
    for (idx, p) in &a.terms {
        let composed = p.substitute(&subs)?;
        let composed = composed.restrict_vars(n).ok_or(Error::SymbolicShift)?;
        let image = images.entry(*idx).or_insert_with(|| phi.basis_image(*idx));
        for (k, c) in image.terms() {
            out.add_scaled_term(*k, &composed, &c.constant_term());
        }
    }
    Ok(out)
}
