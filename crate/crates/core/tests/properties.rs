//! Randomized structural identities.

use poisson_core::algebra::{frac, int, monomial_basis, Monomial, Polynomial, Scalar, WeightVector};
use poisson_core::assembly::{blf_global_formal, near_positive_global, BettiVector};
use poisson_core::complexes::{build_slice_matrix, cohomology_table, slice_basis};
use poisson_core::io::{parse_structure, print_structure};
use poisson_core::linalg::rank;
use poisson_core::models::{catalog_model, model, ModelName, ModelSpec};
use poisson_core::multivec::{pushforward, AffinePointMap, MultiIndex, Multivector, Shift, VolumeForm};
use poisson_core::poisson::{
    anchor_invert, casimir_basis, hamiltonian, intrinsic_gradient, jacobi_check, jacobian_bivector, modular_field,
    rank_at, PointEval, PoissonStructure,
};
use proptest::prelude::*;

const N: usize = 4;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn poly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0..=max_deg, n)), 0..=max_terms).prop_map(move |ts| {
        Polynomial::from_terms(
            n,
            ts.into_iter()
                .filter(|(_, e)| e.iter().sum::<u32>() <= max_deg)
                .map(|(c, e)| (Monomial::new(e), int(c))),
        )
    })
}

fn homogeneous(n: usize, d: u32) -> impl Strategy<Value = Polynomial> {
    let basis = monomial_basis(n, d, &WeightVector::ones(n));
    let len = basis.len();
    prop::collection::vec(-3i64..=3, len).prop_map(move |cs| {
        Polynomial::from_terms(n, basis.iter().cloned().zip(cs.into_iter().map(int)))
    })
}

fn multivector(n: usize, k: usize, max_deg: u32) -> impl Strategy<Value = Multivector> {
    let slots = MultiIndex::all(n, k);
    let m = slots.len();
    prop::collection::vec((0..m, poly(n, max_deg, 2)), 0..=3).prop_map(move |ts| {
        let mut a = Multivector::zero(n, k);
        for (s, p) in ts {
            a = a.add(&Multivector::monomial_term(slots[s], p));
        }
        a
    })
}

fn any_multivector(n: usize, max_k: usize, max_deg: u32) -> impl Strategy<Value = Multivector> {
    (0..=max_k).prop_flat_map(move |k| multivector(n, k, max_deg))
}

fn sign(e: usize) -> Scalar {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn small_point(n: usize) -> impl Strategy<Value = PointEval> {
    prop::collection::vec((-4i64..=4, 1i64..=3), n)
        .prop_map(|v| PointEval::new(v.into_iter().map(|(a, b)| frac(a, b)).collect()))
}

fn affine_map() -> impl Strategy<Value = AffinePointMap> {
    (prop::collection::vec(-2i64..=2, N * N), prop::collection::vec(-2i64..=2, N))
        .prop_filter_map("singular", |(entries, shift)| {
            let linear: Vec<Vec<Scalar>> = (0..N).map(|i| (0..N).map(|j| int(entries[i * N + j])).collect()).collect();
            let shift = shift.into_iter().map(|s| Shift::rational(int(s))).collect();
            AffinePointMap::new(linear, shift).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    // ------------------------------------------------------------ algebra

    #[test]
    fn ring_axioms(a in poly(N, 2, 4), b in poly(N, 2, 4), c in poly(N, 2, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn homogeneous_products((da, db, p, q) in (0u32..3, 0u32..3).prop_flat_map(|(da, db)| {
        (Just(da), Just(db), homogeneous(N, da), homogeneous(N, db))
    })) {
        let prod = &p * &q;
        if !prod.is_zero() {
            prop_assert_eq!(prod.homogeneous_degree(&WeightVector::ones(N)), Some(da + db));
        }
    }

    #[test]
    fn partial_lowers_weighted_degree(ws in prop::collection::vec(1u32..=3, N), d in 0u32..=6, cs in prop::collection::vec(-3i64..=3, 0..40)) {
        let w = WeightVector::new(ws.clone()).unwrap();
        let basis = monomial_basis(N, d, &w);
        let p = Polynomial::from_terms(N, basis.iter().cloned().zip(cs.into_iter().map(int)));
        for i in 0..N {
            let dp = p.partial(i).unwrap();
            if !dp.is_zero() {
                prop_assert_eq!(dp.homogeneous_degree(&w), Some(d - ws[i]));
            }
        }
    }

    // ----------------------------------------------------------- multivec

    #[test]
    fn schouten_graded_antisymmetry(a in any_multivector(N, 3, 2), b in any_multivector(N, 3, 2)) {
        let (da, db) = (a.degree(), b.degree());
        let ab = a.schouten(&b);
        let ba = b.schouten(&a);
        let s = -sign((da + 1) * (db + 1));
        prop_assert_eq!(ab, ba.scale(&s));
    }

    #[test]
    fn schouten_graded_leibniz(a in any_multivector(N, 2, 2), b in any_multivector(N, 2, 1), c in any_multivector(N, 2, 1)) {
        let (da, db) = (a.degree(), b.degree());
        // the bracket of two functions has no degree to live in
        prop_assume!(da + db >= 1 && da + c.degree() >= 1);
        let lhs = a.schouten(&b.wedge(&c));
        let rhs = a.schouten(&b).wedge(&c).add(&b.wedge(&a.schouten(&c)).scale(&sign((da + 1) * db)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_graded_jacobi(a in any_multivector(N, 2, 1), b in any_multivector(N, 2, 1), c in any_multivector(N, 2, 2)) {
        let (da, db, dc) = (a.degree(), b.degree(), c.degree());
        prop_assume!(da + db >= 1 && db + dc >= 1 && da + dc >= 1 && da + db + dc >= 2);
        let lhs = a.schouten(&b.schouten(&c));
        let rhs = a.schouten(&b).schouten(&c).add(&b.schouten(&a.schouten(&c)).scale(&sign((da + 1) * (db + 1))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_associative_graded_commutative(a in any_multivector(N, 2, 1), b in any_multivector(N, 2, 1), c in any_multivector(N, 2, 1)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign(a.degree() * b.degree())));
    }

    #[test]
    fn pushforward_is_natural(phi in affine_map(), a in any_multivector(N, 2, 1), b in any_multivector(N, 2, 1)) {
        let pa = pushforward(&phi, &a).unwrap();
        let pb = pushforward(&phi, &b).unwrap();
        prop_assert_eq!(pa.schouten(&pb), pushforward(&phi, &a.schouten(&b)).unwrap());
        prop_assert_eq!(pa.wedge(&pb), pushforward(&phi, &a.wedge(&b)).unwrap());
    }

    // ------------------------------------------------------------ poisson

    #[test]
    fn modular_field_ignores_volume_scale(num in 1i64..20, den in 1i64..20) {
        let vol = VolumeForm::new(frac(num, den)).unwrap();
        for &name in ModelName::ALL.iter() {
            let pi = catalog_model(name);
            prop_assert_eq!(modular_field(&pi, &vol).unwrap(), modular_field(&pi, &VolumeForm::standard()).unwrap());
        }
    }

    #[test]
    fn hamiltonian_fields_are_cocycles(f in poly(N, 3, 4)) {
        for name in [ModelName::NearPositive, ModelName::BlfCircle, ModelName::BlfPoint, ModelName::PhaseSpaceExample] {
            let pi = catalog_model(name);
            let xf = hamiltonian(&pi, &f).unwrap();
            prop_assert!(pi.bivector().schouten(&xf).is_zero());
        }
    }

    #[test]
    fn anchor_invert_round_trip(y in multivector(N, 1, 2)) {
        for name in [ModelName::NearPositive, ModelName::PhaseSpaceExample, ModelName::SymplecticStd] {
            let pi = match name {
                ModelName::SymplecticStd => model(&ModelSpec::new(name).with_n(2)).unwrap(),
                _ => catalog_model(name),
            };
            let form = anchor_invert(&pi, &y).unwrap();
            prop_assert!(form.inverts(&pi, &y).unwrap());
        }
    }

    #[test]
    fn jacobian_bivectors_are_poisson(f in poly(N, 2, 3), g in poly(N, 2, 3)) {
        let pi = jacobian_bivector(&f, &g, &VolumeForm::standard()).unwrap();
        prop_assert!(jacobi_check(&pi).is_poisson);
        prop_assert!(hamiltonian(&pi, &f).unwrap().is_zero());
        prop_assert!(hamiltonian(&pi, &g).unwrap().is_zero());
    }

    #[test]
    fn rank_is_even(p4 in small_point(4), p6 in small_point(6)) {
        for &name in ModelName::ALL.iter() {
            let pi = catalog_model(name);
            let p = match pi.dim() {
                4 => p4.clone(),
                d => PointEval::new(p6.coords().iter().take(d).cloned().collect()),
            };
            if p.coords().len() == pi.dim() {
                prop_assert_eq!(rank_at(&pi, &p).unwrap() % 2, 0);
            }
        }
        let big = model(&ModelSpec::new(ModelName::NearSymplectic2n).with_n(3)).unwrap();
        prop_assert_eq!(rank_at(&big, &p6).unwrap() % 2, 0);
    }

    #[test]
    fn near_positive_gradient_on_locus(a in -5i64..=5, b in 1i64..=4, c in -5i64..=5) {
        let p = PointEval::new(vec![frac(a, b), int(0), frac(c, b), int(0)]);
        prop_assert_eq!(intrinsic_gradient(&catalog_model(ModelName::NearPositive), &p).unwrap().rank, 2);
    }

    #[test]
    fn fold_with_factor_is_poisson(k in poly(N, 2, 3)) {
        prop_assume!(!k.is_zero());
        let pi = model(&ModelSpec::new(ModelName::BlfCircle).with_factor(k)).unwrap();
        prop_assert!(jacobi_check(&pi).is_poisson);
    }

    // --------------------------------------------------------------- assembly

    #[test]
    fn near_positive_global_additive(b in prop::array::uniform5(0u64..10), b2 in prop::array::uniform5(0u64..10), n1 in 1u64..5, n2 in 1u64..5) {
        let fix = |mut b: [u64; 5]| { b[0] = b[0].max(1); BettiVector::new(b).unwrap() };
        let t = |b: BettiVector, n| near_positive_global(b, n).totals;
        let diff = |b: BettiVector| -> Vec<i64> {
            t(b.clone(), n1 + n2).iter().zip(t(b, n1)).map(|(x, y)| *x as i64 - y as i64).collect()
        };
        prop_assert_eq!(diff(fix(b)), diff(fix(b2)));
        let tb = t(fix(b), n1);
        prop_assert_eq!((tb[3], tb[4]), (b[3], b[4]));
        let table = near_positive_global(fix(b), n1);
        for k in 0..5 {
            let s: u64 = table.contributions.iter().filter(|c| c.k == k).map(|c| c.amount).sum();
            prop_assert_eq!(s, table.totals[k]);
        }
    }

    #[test]
    fn blf_global_is_direct_sum(n in 0u64..4, m in 0u64..4) {
        let whole = blf_global_formal(n, m, 4).unwrap();
        let circle = blf_global_formal(1, 0, 4).unwrap();
        let point = blf_global_formal(0, 1, 4).unwrap();
        for i in 0..=4 {
            let (w, c, p) = (whole.slice(i).unwrap(), circle.slice(i).unwrap(), point.slice(i).unwrap());
            for k in 0..5 {
                prop_assert_eq!(w.total[k], n * c.total[k] + m * p.total[k]);
            }
        }
    }

    // -------------------------------------------------------------------- dsl

    #[test]
    fn dsl_round_trip(b in multivector(N, 2, 2), names in prop::sample::select(vec![
        vec!["x0", "x1", "x2", "x3"], vec!["t", "a", "b", "c"], vec!["q1", "p1", "q2", "p2"],
    ])) {
        let names: Vec<String> = names.into_iter().map(String::from).collect();
        let pi = PoissonStructure::new(names.clone(), b.clone()).unwrap();
        let text = print_structure(&pi);
        let back = parse_structure(&text).unwrap();
        prop_assert_eq!(back.bivector().unwrap(), b);
        prop_assert_eq!(back.coords, names);
    }
}

#[test]
fn monomial_counts() {
    for n in 1..=6 {
        for i in 0..=10u32 {
            let got = monomial_basis(n, i, &WeightVector::ones(n)).len();
            assert_eq!(got, binom(i as usize + n - 1, n - 1), "n={n} i={i}");
        }
    }
}

#[test]
fn casimirs_have_zero_hamiltonian() {
    for &name in ModelName::ALL.iter() {
        let pi = catalog_model(name);
        for i in 0..=8 {
            for c in casimir_basis(&pi, i).unwrap() {
                assert!(hamiltonian(&pi, &c).unwrap().is_zero(), "{name} degree {i}: {c}");
            }
        }
    }
}

#[test]
fn catalog_models_are_poisson_with_closed_modular_field() {
    for &name in ModelName::ALL.iter() {
        let pi = catalog_model(name);
        assert!(jacobi_check(&pi).is_poisson, "{name}");
        let y = modular_field(&pi, &VolumeForm::standard()).unwrap();
        assert!(pi.bivector().schouten(&y).is_zero(), "{name}");
    }
    for n in 2..=4 {
        for name in [ModelName::Log2n, ModelName::NearSymplectic2n, ModelName::SymplecticStd] {
            let pi = model(&ModelSpec::new(name).with_n(n)).unwrap();
            assert!(jacobi_check(&pi).is_poisson, "{name} n={n}");
        }
    }
}

#[test]
fn representatives_are_nontrivial_cocycles() {
    for &name in ModelName::ALL.iter() {
        let pi = catalog_model(name);
        let n = pi.dim();
        let shift = pi.slice_shift().unwrap();
        let t = cohomology_table(&pi, (0, n), 3, true).unwrap();
        for e in &t.entries {
            let reps = e.representatives.as_ref().unwrap();
            assert_eq!(reps.len(), e.dim);
            let here = build_slice_matrix(&pi, e.k, e.i).unwrap();
            for r in reps {
                assert!(pi.bivector().schouten(r).is_zero(), "{name} H{}_{}: {r}", e.k, e.i);
            }
            if e.k == 0 || reps.is_empty() {
                continue;
            }
            let src = e.i as i64 - shift;
            if src < 0 {
                continue;
            }
            let prev = build_slice_matrix(&pi, e.k - 1, src as u32).unwrap();
            let image_rank = rank(&prev.matrix);
            let cols: Vec<_> = reps.iter().map(|r| here.domain_vector(r).unwrap()).collect();
            let aug = prev.matrix.hstack(&poisson_core::linalg::SparseMatrix::from_columns(prev.matrix.nrows(), cols));
            assert_eq!(rank(&aug), image_rank + reps.len(), "{name} H{}_{}", e.k, e.i);
        }
    }
}

#[test]
fn euler_characteristic_per_chain() {
    for &name in ModelName::ALL.iter() {
        let pi = catalog_model(name);
        let n = pi.dim();
        let s = pi.slice_shift().unwrap();
        let i_max = 6u32;
        let t = cohomology_table(&pi, (0, n), i_max, false).unwrap();
        for start in 0..=i_max as i64 {
            let degs: Vec<i64> = (0..=n as i64).map(|k| start + k * s).collect();
            if degs.iter().any(|&d| d > i_max as i64) {
                continue;
            }
            let mut chi_h = 0i64;
            let mut chi_c = 0i64;
            for (k, &d) in degs.iter().enumerate() {
                let sg = if k % 2 == 0 { 1 } else { -1 };
                if d >= 0 {
                    chi_h += sg * t.dim(k, d as u32) as i64;
                    chi_c += sg * slice_basis(n, k, d).len() as i64;
                    assert_eq!(slice_basis(n, k, d).len(), binom(n, k) * binom(d as usize + n - 1, n - 1));
                }
            }
            assert_eq!(chi_h, chi_c, "{name} chain from degree {start}");
        }
    }
}
