//! Global tables assembled from local contributions.

use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::complexes::{cohomology_table, fit_free_module, hilbert_function, CohomologyReport, FreeModuleFit};
use crate::error::{Error, Result};
use crate::models::{catalog_model, ModelName};

/// de Rham Betti numbers b0..b4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector(pub [u64; 5]);

impl BettiVector {
    pub fn new(b: [u64; 5]) -> Result<Self> {
        if b[0] == 0 {
            return Err(Error::InvalidParameter("b0 must be at least 1".into()));
        }
        Ok(BettiVector(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub k: usize,
    pub label: String,
    pub amount: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceRow {
    pub i: u32,
    pub total: [u64; 5],
    pub circle: [u64; 5],
    pub point: [u64; 5],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GlobalTable {
    pub kind: &'static str,
    /// Per-k totals (summed over the computed slices for the formal case).
    pub totals: [u64; 5],
    pub contributions: Vec<Contribution>,
    pub slices: Vec<SliceRow>,
    pub generators: Vec<String>,
    pub point_fits: Vec<Option<FreeModuleFit>>,
    pub notes: Vec<String>,
}

impl GlobalTable {
    pub fn slice(&self, i: u32) -> Option<&SliceRow> {
        self.slices.iter().find(|r| r.i == i)
    }
}

/// H⁰ = 1, H¹ = 2n + b1, H² = n + b2, H³ = b3, H⁴ = b4.
pub fn near_positive_global(b: BettiVector, n: u64) -> GlobalTable {
    let [_, b1, b2, b3, b4] = b.0;
    if n == 0 {
        return GlobalTable {
            kind: "near-positive",
            totals: b.0,
            contributions: (0..5)
                .map(|k| Contribution { k, label: format!("H{k}_dR"), amount: b.0[k] })
                .collect(),
            slices: Vec::new(),
            generators: Vec::new(),
            point_fits: Vec::new(),
            notes: vec!["no singular circles: symplectic case, Poisson cohomology equals de Rham".into()],
        };
    }
    let c = |k, label: &str, amount| Contribution { k, label: label.to_string(), amount };
    let contributions = vec![
        c(0, "constants", 1),
        c(1, "modular fields Y_k", n),
        c(1, "line-bundle fields d_k", n),
        c(1, "H1_dR", b1),
        c(2, "circle classes", n),
        c(2, "H2_dR", b2),
        c(3, "H3_dR", b3),
        c(4, "H4_dR", b4),
    ];
    let mut totals = [0u64; 5];
    for x in &contributions {
        totals[x.k] += x.amount;
    }
    GlobalTable {
        kind: "near-positive",
        totals,
        contributions,
        slices: Vec::new(),
        generators: (1..=n).flat_map(|k| [format!("Y_{k}"), format!("d_{k}")]).collect(),
        point_fits: Vec::new(),
        notes: Vec::new(),
    }
}

static POINT_TABLE: OnceLock<Mutex<Option<CohomologyReport>>> = OnceLock::new();

/// Lefschetz-point cohomology table, computed once and extended on demand.
pub fn point_table(i_max: u32) -> Result<CohomologyReport> {
    let cell = POINT_TABLE.get_or_init(|| Mutex::new(None));
    let mut guard = cell.lock().expect("cache lock");
    if let Some(t) = guard.as_ref() {
        if t.i_max >= i_max {
            let mut t = t.clone();
            t.entries.retain(|e| e.i <= i_max);
            t.i_max = i_max;
            return Ok(t);
        }
    }
    let t = cohomology_table(&catalog_model(ModelName::BlfPoint), (0, 4), i_max, false)?;
    *guard = Some(t.clone());
    Ok(t)
}

/// Circle slice dims: ⌊i/2⌋+1 in degrees 0, 1, 3, 4 and zero in degree 2.
pub fn circle_slice(i: u32) -> [u64; 5] {
    let h = hilbert_function(&[1, 2], i)[i as usize] as u64;
    [h, h, 0, h, h]
}

pub fn blf_global_formal(n: u64, m: u64, i_max: u32) -> Result<GlobalTable> {
    let points = if m > 0 { Some(point_table(i_max)?) } else { None };
    let mut slices = Vec::new();
    let mut totals = [0u64; 5];
    for i in 0..=i_max {
        let circle = circle_slice(i);
        let point: [u64; 5] = match &points {
            Some(t) => std::array::from_fn(|k| t.dim(k, i) as u64),
            None => [0; 5],
        };
        let total: [u64; 5] = std::array::from_fn(|k| n * circle[k] + m * point[k]);
        for k in 0..5 {
            totals[k] += total[k];
        }
        slices.push(SliceRow { i, total, circle, point });
    }
    let point_fits = match &points {
        Some(t) => (0..5).map(|k| fit_free_module(&t.dims(k), &[2, 2]).ok()).collect(),
        None => Vec::new(),
    };
    let mut contributions = Vec::new();
    for k in 0..5 {
        let circ: u64 = slices.iter().map(|r| r.circle[k]).sum();
        let pt: u64 = slices.iter().map(|r| r.point[k]).sum();
        contributions.push(Contribution { k, label: format!("{n} fold circle(s)"), amount: n * circ });
        contributions.push(Contribution { k, label: format!("{m} Lefschetz point(s)"), amount: m * pt });
    }
    let mut generators = vec![
        "circle H0: R[Q1,Q2]".to_string(),
        "circle H1: R[Q1,Q2] d/dtheta".to_string(),
        "circle H3: R[Q1,Q2] d1^d2^d3".to_string(),
        "circle H4: R[Q1,Q2] dtheta^d1^d2^d3".to_string(),
    ];
    for (k, fit) in point_fits.iter().enumerate() {
        match fit {
            Some(f) => generators.push(format!(
                "point H{k}: rank {} over R[P1,P2], generator degrees {:?}",
                f.rank, f.generator_degrees
            )),
            None => generators.push(format!("point H{k}: no free-module fit over R[P1,P2] in range")),
        }
    }
    Ok(GlobalTable {
        kind: "blf-formal",
        totals,
        contributions,
        slices,
        generators,
        point_fits,
        notes: vec![format!("formal slices truncated at coefficient degree {i_max}")],
    })
}
