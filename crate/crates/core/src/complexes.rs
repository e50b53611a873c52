//! Graded Lichnerowicz complex d = [π, ·] and its cohomology.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{binomial, monomial_basis, Monomial, Polynomial, Scalar, WeightVector};
use crate::error::{Error, Result};
use crate::linalg::{self, column_relations, ColumnRelations, SparseMatrix, SparseVec};
use crate::multivec::{MultiIndex, Multivector};
use crate::poisson::PoissonStructure;

pub type BasisElement = (MultiIndex, Monomial);

/// Matrix of images expanded in the sorted set of (∂_I, monomial) keys they
/// touch; the optional right-hand side is expanded in the same rows.
pub(crate) fn linear_system(images: &[Multivector], rhs: Option<&Multivector>) -> (SparseMatrix, Option<SparseVec>) {
    let mut keys: BTreeSet<BasisElement> = BTreeSet::new();
    for mv in images.iter().chain(rhs) {
        for (idx, p) in mv.terms() {
            for (m, _) in p.terms() {
                keys.insert((*idx, m.clone()));
            }
        }
    }
    let row_of: HashMap<BasisElement, usize> = keys.into_iter().enumerate().map(|(r, k)| (k, r)).collect();
    let expand = |mv: &Multivector| -> SparseVec {
        let mut v = Vec::new();
        for (idx, p) in mv.terms() {
            for (m, c) in p.terms() {
                v.push((row_of[&(*idx, m.clone())], c.clone()));
            }
        }
        v
    };
    let cols = images.iter().map(expand).collect();
    let a = SparseMatrix::from_columns(row_of.len(), cols);
    let b = rhs.map(|r| {
        let mut v = expand(r);
        v.sort_by_key(|(i, _)| *i);
        v
    });
    (a, b)
}

/// k-vector fields with coefficients homogeneous of degree i, in layout order:
/// multi-index lexicographic, then ascending graded-lex monomials.
pub fn slice_basis(n: usize, k: usize, i: i64) -> Vec<BasisElement> {
    if i < 0 || k > n {
        return Vec::new();
    }
    let monos = monomial_basis(n, i as u32, &WeightVector::ones(n));
    MultiIndex::all(n, k)
        .into_iter()
        .flat_map(|idx| monos.iter().map(move |m| (idx, m.clone())))
        .collect()
}

pub fn slice_dim(n: usize, k: usize, i: i64) -> usize {
    if i < 0 || k > n {
        return 0;
    }
    binomial(n, k) * binomial(i as usize + n - 1, n - 1)
}

/// d^k restricted to coefficient degree i.
#[derive(Clone, Debug)]
pub struct GradedSliceMatrix {
    pub k: usize,
    pub i: u32,
    /// Coefficient degree of the codomain (negative: empty codomain).
    pub target_degree: i64,
    pub domain: Vec<BasisElement>,
    pub codomain: Vec<BasisElement>,
    pub matrix: SparseMatrix,
}

impl GradedSliceMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.matrix.nrows(), self.matrix.ncols())
    }

    pub fn domain_element(&self, col: usize) -> Multivector {
        basis_multivector(&self.domain[col])
    }

    /// Column of the multivector `mv` in domain coordinates.
    pub fn domain_vector(&self, mv: &Multivector) -> Result<SparseVec> {
        coordinates(&self.domain, mv)
    }

    pub fn codomain_vector(&self, mv: &Multivector) -> Result<SparseVec> {
        coordinates(&self.codomain, mv)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }
}

fn basis_multivector((idx, m): &BasisElement) -> Multivector {
    Multivector::monomial_term(*idx, Polynomial::term(m.clone(), Scalar::one()))
}

fn coordinates(basis: &[BasisElement], mv: &Multivector) -> Result<SparseVec> {
    let pos: HashMap<&BasisElement, usize> = basis.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let mut v = Vec::new();
    for (idx, p) in mv.terms() {
        for (m, c) in p.terms() {
            let key = (*idx, m.clone());
            let &r = pos.get(&key).ok_or(Error::NotHomogeneous)?;
            v.push((r, c.clone()));
        }
    }
    v.sort_by_key(|(i, _)| *i);
    Ok(v)
}

/// Multivector with the given coordinates in `basis`.
pub fn from_coordinates(n: usize, degree: usize, basis: &[BasisElement], v: &SparseVec) -> Multivector {
    let mut mv = Multivector::zero(n, degree);
    for (j, c) in v {
        let (idx, m) = &basis[*j];
        mv.add_term(*idx, Polynomial::term(m.clone(), c.clone()));
    }
    mv
}

pub fn build_slice_matrix(pi: &PoissonStructure, k: usize, i: u32) -> Result<GradedSliceMatrix> {
    let n = pi.dim();
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds dimension {n}")));
    }
    let shift = pi.slice_shift()?;
    let target = i as i64 + shift;
    let domain = slice_basis(n, k, i as i64);
    let codomain = slice_basis(n, k + 1, target);
    let row_of: HashMap<&BasisElement, usize> = codomain.iter().enumerate().map(|(r, b)| (b, r)).collect();
    let cols: Vec<SparseVec> = domain
        .par_iter()
        .map(|b| {
            let img = pi.bivector().schouten(&basis_multivector(b));
            let mut col = Vec::new();
            for (idx, p) in img.terms() {
                for (m, c) in p.terms() {
                    let r = row_of[&(*idx, m.clone())];
                    col.push((r, c.clone()));
                }
            }
            col
        })
        .collect();
    Ok(GradedSliceMatrix {
        k,
        i,
        target_degree: target,
        matrix: SparseMatrix::from_columns(codomain.len(), cols),
        domain,
        codomain,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyEntry {
    pub k: usize,
    pub i: u32,
    pub nullity: usize,
    /// Rank of the incoming d^{k−1} slice landing in degree i.
    pub incoming_rank: usize,
    pub dim: usize,
    #[serde(skip)]
    pub representatives: Option<Vec<Multivector>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub k_range: (usize, usize),
    pub i_max: u32,
    pub shift: i64,
    pub entries: Vec<CohomologyEntry>,
}

impl CohomologyReport {
    pub fn entry(&self, k: usize, i: u32) -> Option<&CohomologyEntry> {
        self.entries.iter().find(|e| e.k == k && e.i == i)
    }

    pub fn dim(&self, k: usize, i: u32) -> usize {
        self.entry(k, i).map_or(0, |e| e.dim)
    }

    /// (degree, dim H^k_i) for i = 0..=i_max.
    pub fn dims(&self, k: usize) -> Vec<(u32, usize)> {
        (0..=self.i_max).map(|i| (i, self.dim(k, i))).collect()
    }

    pub fn totals(&self) -> BTreeMap<usize, usize> {
        let mut t = BTreeMap::new();
        for e in &self.entries {
            *t.entry(e.k).or_insert(0) += e.dim;
        }
        t
    }
}

struct Slice {
    matrix: GradedSliceMatrix,
    relations: ColumnRelations,
}

fn compute_slice(pi: &PoissonStructure, k: usize, i: u32) -> Result<Slice> {
    let matrix = build_slice_matrix(pi, k, i)?;
    let relations = column_relations(&matrix.matrix);
    Ok(Slice { matrix, relations })
}

fn incoming_degree(k: usize, i: u32, shift: i64) -> Option<(usize, u32)> {
    let src = i as i64 - shift;
    (k >= 1 && src >= 0).then(|| (k - 1, src as u32))
}

fn assemble_entry(
    pi: &PoissonStructure,
    k: usize,
    i: u32,
    slices: &BTreeMap<(usize, u32), Slice>,
    shift: i64,
    with_reps: bool,
) -> Result<CohomologyEntry> {
    let cur = &slices[&(k, i)];
    let nullity = cur.relations.nullity();
    let incoming = incoming_degree(k, i, shift).map(|key| &slices[&key]);
    let incoming_rank = incoming.map_or(0, |s| s.relations.rank());
    let dim = nullity
        .checked_sub(incoming_rank)
        .expect("image of the previous differential lies in the kernel");
    let representatives = if with_reps {
        let n = pi.dim();
        let empty = SparseMatrix::zeros(cur.matrix.domain.len(), 0);
        let image = incoming.map_or(&empty, |s| &s.matrix.matrix);
        let kernel = cur.relations.kernel_basis();
        let reps = linalg::quotient_representatives(&cur.matrix.matrix, &kernel, image, incoming_rank)?;
        Some(
            reps.iter()
                .map(|v| from_coordinates(n, k, &cur.matrix.domain, v))
                .collect(),
        )
    } else {
        None
    };
    Ok(CohomologyEntry { k, i, nullity, incoming_rank, dim, representatives })
}

/// dim H^k_i with representatives.
pub fn cohomology_dim(pi: &PoissonStructure, k: usize, i: u32) -> Result<CohomologyEntry> {
    let shift = pi.slice_shift()?;
    let mut keys = vec![(k, i)];
    keys.extend(incoming_degree(k, i, shift));
    let slices = compute_slices(pi, &keys)?;
    assemble_entry(pi, k, i, &slices, shift, true)
}

fn compute_slices(pi: &PoissonStructure, keys: &[(usize, u32)]) -> Result<BTreeMap<(usize, u32), Slice>> {
    let computed: Vec<Result<((usize, u32), Slice)>> = keys
        .par_iter()
        .map(|&(k, i)| compute_slice(pi, k, i).map(|s| ((k, i), s)))
        .collect();
    computed.into_iter().collect()
}

/// Table of dim H^k_i for k in `k_range` (inclusive) and 0 ≤ i ≤ i_max.
pub fn cohomology_table(
    pi: &PoissonStructure,
    k_range: (usize, usize),
    i_max: u32,
    with_reps: bool,
) -> Result<CohomologyReport> {
    let n = pi.dim();
    let (k_lo, k_hi) = (k_range.0, k_range.1.min(n));
    if k_lo > k_hi {
        return Err(Error::InvalidParameter(format!("empty k-range {}..{}", k_range.0, k_range.1)));
    }
    let shift = pi.slice_shift()?;
    let mut keys = BTreeSet::new();
    for k in k_lo..=k_hi {
        for i in 0..=i_max {
            keys.insert((k, i));
            keys.extend(incoming_degree(k, i, shift));
        }
    }
    let keys: Vec<(usize, u32)> = keys.into_iter().collect();
    let slices = compute_slices(pi, &keys)?;
    let pairs: Vec<(usize, u32)> = (k_lo..=k_hi).flat_map(|k| (0..=i_max).map(move |i| (k, i))).collect();
    let entries: Vec<CohomologyEntry> = pairs
        .par_iter()
        .map(|&(k, i)| assemble_entry(pi, k, i, &slices, shift, with_reps))
        .collect::<Result<_>>()?;
    Ok(CohomologyReport { k_range: (k_lo, k_hi), i_max, shift, entries })
}

/// Hilbert function of a polynomial ring with generators in the given degrees.
pub fn hilbert_function(casimir_degrees: &[u32], max_degree: u32) -> Vec<usize> {
    let mut h = vec![0usize; max_degree as usize + 1];
    h[0] = 1;
    for &c in casimir_degrees {
        assert!(c > 0, "Casimir degrees must be positive");
        for d in c as usize..h.len() {
            h[d] += h[d - c as usize];
        }
    }
    h
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FreeModuleFit {
    pub casimir_degrees: Vec<u32>,
    pub rank: usize,
    /// Generator degrees with multiplicity, ascending.
    pub generator_degrees: Vec<u32>,
    pub exact: bool,
    /// Largest degree used in the fit.
    pub max_degree: u32,
    /// Whether the range reaches 2·max Casimir degree + max generator degree.
    pub range_sufficient: bool,
}

/// Greedy free-module fit of observed slice dimensions over ℝ[Casimirs].
pub fn fit_free_module(dims: &[(u32, usize)], casimir_degrees: &[u32]) -> Result<FreeModuleFit> {
    let max_degree = dims.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let mut residual = vec![0i64; max_degree as usize + 1];
    for &(d, v) in dims {
        residual[d as usize] = v as i64;
    }
    let h = hilbert_function(casimir_degrees, max_degree);
    let mut generators = Vec::new();
    for d in 0..=max_degree as usize {
        if residual[d] < 0 {
            return Err(Error::FitFailure { degree: d as u32 });
        }
        let count = residual[d];
        if count == 0 {
            continue;
        }
        for e in d..residual.len() {
            residual[e] -= count * h[e - d] as i64;
        }
        generators.extend(std::iter::repeat(d as u32).take(count as usize));
    }
    let exact = residual.iter().all(|&r| r == 0);
    let top_gen = generators.iter().copied().max().unwrap_or(0);
    let top_cas = casimir_degrees.iter().copied().max().unwrap_or(0);
    Ok(FreeModuleFit {
        casimir_degrees: casimir_degrees.to_vec(),
        rank: generators.len(),
        generator_degrees: generators,
        exact,
        max_degree,
        range_sufficient: max_degree >= 2 * top_cas + top_gen,
    })
}
