//! Worked examples for each module, with expected values derived by hand.

use poisson_core::algebra::{frac, int, monomial_basis, Polynomial, Scalar, WeightVector};
use poisson_core::complexes::{build_slice_matrix, cohomology_dim, cohomology_table, fit_free_module};
use poisson_core::error::Error;
use poisson_core::io::{parse_structure, print_structure};
use poisson_core::models::{catalog_model, fold_casimirs, involution_map, lefschetz_casimirs, model, ModelName, ModelSpec};
use poisson_core::multivec::{divergence, pushforward, AffinePointMap, MultiIndex, Multivector, OneForm, VolumeForm};
use poisson_core::poisson::{
    anchor, anchor_invert, casimir_basis, exactness_witness, hamiltonian, intrinsic_gradient, jacobi_check,
    jacobian_bivector, modular_field, near_positivity_sample, rank_at, sample_grid, wedge_power, PointEval,
    PoissonStructure,
};

fn x(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

fn vf(n: usize, comps: &[(usize, Polynomial)]) -> Multivector {
    let mut y = Multivector::zero(n, 1);
    for (j, p) in comps {
        y.add_term(MultiIndex::single(*j), p.clone());
    }
    y
}

fn d(n: usize, idx: &[usize]) -> Multivector {
    Multivector::basis(n, idx)
}

fn near_positive() -> PoissonStructure {
    catalog_model(ModelName::NearPositive)
}

fn fold() -> PoissonStructure {
    catalog_model(ModelName::BlfCircle)
}

fn point() -> PoissonStructure {
    catalog_model(ModelName::BlfPoint)
}

fn symplectic4() -> PoissonStructure {
    model(&ModelSpec::new(ModelName::SymplecticStd).with_n(2)).unwrap()
}

// ---------------------------------------------------------------- algebra

#[test]
fn polynomial_products() {
    let n = 4;
    let a = &x(n, 1) + &x(n, 3);
    let b = &x(n, 1) - &x(n, 3);
    assert_eq!(&a * &b, &(&x(n, 1) * &x(n, 1)) - &(&x(n, 3) * &x(n, 3)));
    let (_, q2) = fold_casimirs();
    let manual = {
        let s = |i| &x(n, i) * &x(n, i);
        let q = &(&(-s(1)) + &s(2)) + &s(3);
        &q * &q
    };
    assert_eq!(&q2 * &q2, manual);
    assert!((&Polynomial::zero(n) * &q2).is_zero());
}

#[test]
fn polynomial_partials() {
    let (_, q2) = fold_casimirs();
    assert_eq!(q2.partial(1).unwrap(), x(4, 1).scale(&int(-2)));
    assert!(q2.partial(0).unwrap().is_zero());
    let (_, p2) = lefschetz_casimirs();
    assert_eq!(p2.partial(3).unwrap(), x(4, 2).scale(&int(2)));
    assert!(matches!(q2.partial(4), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn monomial_basis_sizes() {
    assert_eq!(monomial_basis(4, 2, &WeightVector::ones(4)).len(), 10);
    let constants = monomial_basis(4, 0, &WeightVector::ones(4));
    assert_eq!(constants.len(), 1);
    assert!(constants[0].is_one());
    assert_eq!(monomial_basis(3, 3, &WeightVector::ones(3)).len(), 10);
}

// --------------------------------------------------------------- multivec

#[test]
fn wedge_signs() {
    assert_eq!(d(4, &[0, 1]).wedge(&d(4, &[2, 3])), d(4, &[0, 1, 2, 3]));
    // (0,3,1,2) has two inversions
    assert_eq!(d(4, &[0, 3]).wedge(&d(4, &[1, 2])), d(4, &[0, 1, 2, 3]));
    assert!(d(4, &[0, 1]).wedge(&d(4, &[1, 2])).is_zero());
}

#[test]
fn schouten_examples() {
    let f = Multivector::function(x(4, 1));
    assert_eq!(d(4, &[1]).schouten(&f), Multivector::function(Polynomial::one(4)));
    let pi = fold();
    assert_eq!(pi.bivector().schouten(&Multivector::euler(4)), *pi.bivector());
    assert!(pi.bivector().schouten(pi.bivector()).is_zero());
}

#[test]
fn divergence_examples() {
    let vol = VolumeForm::standard();
    assert_eq!(divergence(&Multivector::euler(4), &vol).unwrap(), Polynomial::constant(4, int(4)));
    let y = vf(4, &[(1, -x(4, 1)), (3, -x(4, 3))]);
    assert_eq!(divergence(&y, &vol).unwrap(), Polynomial::constant(4, int(-2)));
    let y = vf(4, &[(2, x(4, 3)), (3, -x(4, 2))]);
    assert!(divergence(&y, &vol).unwrap().is_zero());
}

#[test]
fn pushforward_examples() {
    let np = near_positive();
    assert_eq!(pushforward(&involution_map(), np.bivector()).unwrap(), *np.bivector());
    let pi = fold();
    assert_eq!(pushforward(&AffinePointMap::identity(4), pi.bivector()).unwrap(), *pi.bivector());
    // linear coefficients: x ↦ 2x gives (x/2)(2∂)(2∂) = 2·π
    let doubled = pushforward(&AffinePointMap::scaling(4, int(2)).unwrap(), pi.bivector()).unwrap();
    assert_eq!(doubled, pi.bivector().scale(&int(2)));
    let sq = involution_map().compose(&involution_map()).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(sq.linear()[i][j], if i == j { int(1) } else { int(0) });
        }
    }
}

#[test]
fn involution_on_fold_flips_signs() {
    // x1 ↦ −x1, x3 ↦ −x3 with ∂1 ↦ −∂1, ∂3 ↦ −∂3:
    // x1∂23 → (−x1)(−1) = x1; x2∂13 → x2; −x3∂12 → (−)(−x3)(−1) = −x3
    let pi = fold();
    let pushed = pushforward(&involution_map(), pi.bivector()).unwrap();
    let n = 4;
    let flip = |p: &Polynomial| {
        p.substitute(&[x(n, 0), -x(n, 1), x(n, 2), -x(n, 3)]).unwrap()
    };
    for idx in MultiIndex::all(4, 2) {
        let ij = idx.indices();
        let s = [1, -1, 1, -1][ij[0]] * [1, -1, 1, -1][ij[1]];
        assert_eq!(pushed.coeff(idx), flip(&pi.bivector().coeff(idx)).scale(&int(s)));
    }
    assert_eq!(pushed, *pi.bivector());
}

// ---------------------------------------------------------------- poisson

#[test]
fn jacobi_examples() {
    assert!(jacobi_check(&fold()).is_poisson);
    assert!(jacobi_check(&near_positive()).is_poisson);
    let mut b = d(4, &[0, 1]);
    b.add_term(MultiIndex::from_sorted(&[2, 3]), x(4, 0));
    let bad = PoissonStructure::with_default_names(b).unwrap();
    let rep = jacobi_check(&bad);
    assert!(!rep.is_poisson);
    assert_eq!(rep.witness, d(4, &[1, 2, 3]).scale(&int(-2)));
    assert!(matches!(bad.validate(), Err(Error::NotPoisson { .. })));
}

#[test]
fn anchor_examples() {
    let np = near_positive();
    let n = 4;
    assert_eq!(anchor(&np, &OneForm::dx(n, 0)).unwrap(), vf(n, &[(1, -x(n, 1)), (3, -x(n, 3))]));
    let pi = fold();
    assert_eq!(anchor(&pi, &OneForm::dx(n, 1)).unwrap(), vf(n, &[(2, x(n, 3)), (3, -x(n, 2))]));
    assert!(anchor(&pi, &OneForm::dx(n, 0)).unwrap().is_zero());
}

#[test]
fn hamiltonian_examples() {
    let (_, q2) = fold_casimirs();
    assert!(hamiltonian(&fold(), &q2).unwrap().is_zero());
    let n = 4;
    assert_eq!(hamiltonian(&near_positive(), &x(n, 0)).unwrap(), vf(n, &[(1, -x(n, 1)), (3, -x(n, 3))]));
    assert!(hamiltonian(&point(), &Polynomial::one(n)).unwrap().is_zero());
    // X_f = [π, f]
    let f = &x(n, 0) * &x(n, 2);
    assert_eq!(
        hamiltonian(&near_positive(), &f).unwrap(),
        near_positive().bivector().schouten(&Multivector::function(f))
    );
}

#[test]
fn casimir_examples() {
    let pi = fold();
    let c1 = casimir_basis(&pi, 1).unwrap();
    assert_eq!(c1, vec![x(4, 0)]);
    assert_eq!(casimir_basis(&pi, 2).unwrap().len(), 2);
    assert!(casimir_basis(&near_positive(), 1).unwrap().is_empty());
}

#[test]
fn modular_examples() {
    let vol = VolumeForm::standard();
    assert_eq!(modular_field(&near_positive(), &vol).unwrap(), d(4, &[0]).scale(&int(2)));
    assert!(modular_field(&fold(), &vol).unwrap().is_zero());
    assert!(modular_field(&point(), &vol).unwrap().is_zero());
}

#[test]
fn wedge_power_examples() {
    let n = 4;
    let base = &(&x(n, 1) * &x(n, 1)) + &(&x(n, 3) * &x(n, 3));
    assert_eq!(
        wedge_power(&near_positive(), 2),
        Multivector::monomial_term(MultiIndex::from_sorted(&[0, 1, 2, 3]), base.scale(&int(2)))
    );
    assert!(wedge_power(&fold(), 2).is_zero());
    assert_eq!(wedge_power(&symplectic4(), 2), d(4, &[0, 1, 2, 3]).scale(&int(2)));
}

#[test]
fn rank_examples() {
    assert_eq!(rank_at(&near_positive(), &PointEval::from_ints(&[0, 1, 0, 0])).unwrap(), 4);
    assert_eq!(rank_at(&fold(), &PointEval::from_ints(&[5, 1, 0, 0])).unwrap(), 2);
    assert_eq!(rank_at(&point(), &PointEval::from_ints(&[0, 0, 0, 0])).unwrap(), 0);
}

#[test]
fn intrinsic_gradient_examples() {
    let np = near_positive();
    for p in [[0, 0, 0, 0], [3, 0, -2, 0], [-1, 0, 7, 0]] {
        assert_eq!(intrinsic_gradient(&np, &PointEval::from_ints(&p)).unwrap().rank, 2);
    }
    let phase = catalog_model(ModelName::PhaseSpaceExample);
    assert_eq!(intrinsic_gradient(&phase, &PointEval::from_ints(&[2, 0, -1, 0])).unwrap().rank, 2);
    let zero = PoissonStructure::with_default_names(Multivector::zero(4, 2)).unwrap();
    assert_eq!(intrinsic_gradient(&zero, &PointEval::from_ints(&[0, 0, 0, 0])).unwrap().rank, 0);
    assert!(matches!(
        intrinsic_gradient(&np, &PointEval::from_ints(&[0, 1, 0, 0])),
        Err(Error::NotInZeroLocus)
    ));
}

#[test]
fn anchor_invert_examples() {
    let np = near_positive();
    let n = 4;
    let den = &(&x(n, 1) * &x(n, 1)) + &(&x(n, 3) * &x(n, 3));
    let form = anchor_invert(&np, &d(n, &[1])).unwrap();
    assert_eq!(form.denominator, den);
    assert_eq!(form.numerators, vec![-x(n, 1), Polynomial::zero(n), x(n, 3), Polynomial::zero(n)]);
    assert!(form.inverts(&np, &d(n, &[1])).unwrap());

    // generic field: solve by hand against the four Hamiltonian fields
    let g: Vec<Polynomial> = vec![x(n, 2), &x(n, 0) * &x(n, 0), Polynomial::one(n), x(n, 3)];
    let y = vf(n, &[(0, g[0].clone()), (1, g[1].clone()), (2, g[2].clone()), (3, g[3].clone())]);
    let f = anchor_invert(&np, &y).unwrap();
    assert_eq!(f.denominator, den);
    assert!(f.inverts(&np, &y).unwrap());

    let s = symplectic4();
    let f = anchor_invert(&s, &d(n, &[0])).unwrap();
    assert_eq!(f.denominator, Polynomial::one(n));
    assert_eq!(f.numerators, vec![Polynomial::zero(n), Polynomial::one(n), Polynomial::zero(n), Polynomial::zero(n)]);

    assert!(matches!(anchor_invert(&fold(), &d(n, &[1])), Err(Error::Degenerate)));
}

#[test]
fn jacobian_examples() {
    let vol = VolumeForm::standard();
    let (q1, q2) = fold_casimirs();
    let j = jacobian_bivector(&q1, &q2.scale(&frac(-1, 2)), &vol).unwrap();
    assert_eq!(j.bivector(), fold().bivector());
    let (p1, p2) = lefschetz_casimirs();
    let j = jacobian_bivector(&p1, &p2, &vol).unwrap();
    assert_eq!(*j.bivector(), point().bivector().scale(&int(4)));
    // coordinates x1, x2 (positions 0, 1) leave only {x3, x4} = 1
    let j = jacobian_bivector(&x(4, 0), &x(4, 1), &vol).unwrap();
    assert_eq!(*j.bivector(), d(4, &[2, 3]));
}

#[test]
fn exactness_examples() {
    let e = Multivector::euler(4);
    assert_eq!(exactness_witness(&fold(), 1).unwrap(), Some(e.clone()));
    assert_eq!(exactness_witness(&near_positive(), 1).unwrap(), Some(e.clone()));
    assert_eq!(exactness_witness(&symplectic4(), 1).unwrap(), Some(e.scale(&frac(1, 2))));
}

#[test]
fn near_positivity_examples() {
    let grid = sample_grid(4, 2);
    let r = near_positivity_sample(&near_positive(), &grid).unwrap();
    assert!(r.nonnegative);
    assert_eq!(r.samples.len(), grid.len());
    let r = near_positivity_sample(&fold(), &grid).unwrap();
    assert!(r.nonnegative && r.samples.iter().all(|s| s.sign == 0));
    let mut b = d(4, &[0, 1]);
    b.add_term(MultiIndex::from_sorted(&[2, 3]), Polynomial::constant(4, int(-1)));
    let bad = PoissonStructure::with_default_names(b).unwrap();
    let r = near_positivity_sample(&bad, &grid).unwrap();
    assert!(!r.nonnegative);
    assert_eq!(r.counterexample, Some(0));
    assert!(r.samples.iter().all(|s| s.value == "-2"));
}

// -------------------------------------------------------------- complexes

#[test]
fn slice_matrix_examples() {
    let s = build_slice_matrix(&fold(), 0, 1).unwrap();
    assert_eq!(s.shape(), (16, 4));
    assert_eq!(s.rank(), 3);
    let np = near_positive();
    for i in 1..=4 {
        let s = build_slice_matrix(&np, 3, i).unwrap();
        let r_i = monomial_basis(4, i, &WeightVector::ones(4)).len();
        assert_eq!(s.rank(), r_i);
    }
}

#[test]
fn cohomology_dim_examples() {
    let e = cohomology_dim(&near_positive(), 1, 0).unwrap();
    assert_eq!(e.dim, 2);
    let reps = e.representatives.unwrap();
    assert!(reps.contains(&d(4, &[0])) && reps.contains(&d(4, &[2])));
    for i in 0..=8 {
        assert_eq!(cohomology_dim(&fold(), 2, i).unwrap().dim, 0);
    }
    let e = cohomology_dim(&point(), 0, 2).unwrap();
    assert_eq!(e.dim, 2);
    let (p1, p2) = lefschetz_casimirs();
    // H⁰ has no coboundaries: representatives span the same plane as P¹, P²
    let reps: Vec<Polynomial> = e.representatives.unwrap().iter().map(|r| r.as_function()).collect();
    for r in &reps {
        let solved = (|| {
            for a in -4..=4 {
                for b in -4..=4 {
                    for den in 1..=4 {
                        let cand = &p1.scale(&frac(a, den)) + &p2.scale(&frac(b, den));
                        if &cand == r {
                            return true;
                        }
                    }
                }
            }
            false
        })();
        assert!(solved, "representative {r} not in span(P1, P2)");
    }
}

#[test]
fn cohomology_table_examples() {
    let t = cohomology_table(&near_positive(), (0, 4), 4, false).unwrap();
    for k in 0..=4 {
        for i in 1..=4 {
            assert_eq!(t.dim(k, i), 0);
        }
    }
    let t = cohomology_table(&fold(), (0, 4), 4, false).unwrap();
    assert_eq!(t.dims(0).into_iter().map(|(_, d)| d).collect::<Vec<_>>(), vec![1, 1, 2, 2, 3]);
    let t = cohomology_table(&point(), (0, 4), 0, false).unwrap();
    assert_eq!(t.dim(0, 0), 1);
}

#[test]
fn free_module_fit_examples() {
    let t = cohomology_table(&fold(), (0, 0), 8, false).unwrap();
    let f = fit_free_module(&t.dims(0), &[1, 2]).unwrap();
    assert_eq!((f.rank, f.generator_degrees.clone(), f.exact), (1, vec![0], true));
    let t = cohomology_table(&point(), (2, 2), 8, false).unwrap();
    let f = fit_free_module(&t.dims(2), &[2, 2]).unwrap();
    assert!(f.exact);
    assert_eq!(f.generator_degrees.len(), f.rank);
}

// ----------------------------------------------------------------- models

#[test]
fn model_examples() {
    let pi = fold();
    assert_eq!(pi.dim(), 4);
    assert_eq!(pi.bivector().terms().count(), 3);
    for (_, c) in pi.bivector().terms() {
        assert_eq!(c.len(), 1);
        assert_eq!(c.degree(), Some(1));
    }
    let ns = model(&ModelSpec::new(ModelName::NearSymplectic2n).with_n(3)).unwrap();
    assert_eq!(ns.dim(), 6);
    assert_eq!(ns.bivector().terms().count(), 5);
    let mut expected = d(4, &[0, 1]);
    expected.add_term(MultiIndex::from_sorted(&[2, 3]), Polynomial::one(4));
    assert_eq!(symplectic4().bivector(), &expected);
    assert!(matches!("nope".parse::<ModelName>(), Err(Error::UnknownModel(_))));
    assert!(matches!(
        model(&ModelSpec::new(ModelName::Log2n).with_n(1)),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn lefschetz_weights_recorded() {
    let (p1, p2) = lefschetz_casimirs();
    let w = point().weights().clone();
    assert_eq!(p1.homogeneous_degree(&w), Some(2));
    assert_eq!(p2.homogeneous_degree(&w), Some(2));
}

#[test]
fn log_family_wedge_powers() {
    for n in 2..=4u32 {
        let pi = model(&ModelSpec::new(ModelName::Log2n).with_n(n)).unwrap();
        let k = (n - 1) as usize;
        let dim = pi.dim();
        assert_eq!(dim, 2 * k);
        let top = wedge_power(&pi, k);
        assert!(!top.is_zero());
        assert!(wedge_power(&pi, k + 1).is_zero());
        // on x1 = 0 the top power vanishes
        let mut subs: Vec<Polynomial> = (0..dim).map(|i| x(dim, i)).collect();
        subs[1] = Polynomial::zero(dim);
        let restricted = top.map_coefficients(|p| p.substitute(&subs).unwrap());
        assert!(restricted.is_zero());
        // the power below the top survives on the hypersurface
        if k >= 2 {
            let lower = wedge_power(&pi, k - 1).map_coefficients(|p| p.substitute(&subs).unwrap());
            assert!(!lower.is_zero());
        }
    }
}

#[test]
fn near_symplectic_top_power() {
    for n in 2..=3u32 {
        let pi = model(&ModelSpec::new(ModelName::NearSymplectic2n).with_n(n)).unwrap();
        let dim = pi.dim();
        let top = wedge_power(&pi, n as usize);
        let all: Vec<usize> = (0..dim).collect();
        let c = top.coeff(MultiIndex::from_sorted(&all));
        let base = &(&x(dim, 1) * &x(dim, 1)) + &(&x(dim, 3) * &x(dim, 3));
        // n! (x1² + x3²) up to a sign fixed by the block ordering
        let fact: i64 = (1..=n as i64).product();
        assert!(c == base.scale(&int(fact)) || c == base.scale(&int(-fact)), "top coefficient {c}");
        let mut at_zero: Vec<Scalar> = vec![int(3); dim];
        at_zero[1] = int(0);
        at_zero[3] = int(0);
        assert_eq!(c.eval(&at_zero).unwrap(), int(0));
    }
}

#[test]
fn fold_with_random_factors_is_poisson() {
    let n = 4;
    let factors = [
        &Polynomial::one(n) + &x(n, 0),
        &(&x(n, 1) * &x(n, 2)) - &Polynomial::constant(n, int(3)),
        &(&x(n, 0) * &x(n, 0)) + &(&x(n, 3) * &x(n, 1)).scale(&frac(1, 2)),
    ];
    for k in factors {
        let pi = model(&ModelSpec::new(ModelName::BlfCircle).with_factor(k)).unwrap();
        assert!(jacobi_check(&pi).is_poisson);
    }
}

// -------------------------------------------------------------------- dsl

#[test]
fn dsl_examples() {
    let doc = parse_structure("coords(t,x1,x2,x3) x1*dx2^dx3 + x2*dx1^dx3 - x3*dx1^dx2").unwrap();
    assert_eq!(doc.bivector().unwrap(), *fold().bivector());
    let doc = parse_structure("coords(a,b) 0").unwrap();
    assert!(doc.bivector().unwrap().is_zero());
    match parse_structure("coords(x) dx^") {
        Err(Error::Parse { line, column, token, .. }) => {
            assert_eq!((line, column), (1, 13));
            assert_eq!(token, "^");
        }
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn dsl_rejects_bad_input() {
    assert!(matches!(parse_structure("coords(x,y) z*dx^dy"), Err(Error::Parse { .. })));
    assert!(matches!(parse_structure("coords(x,y) (x*dx^dy"), Err(Error::Parse { .. })));
    assert!(matches!(parse_structure("coords(x,y) 0.5*dx^dy"), Err(Error::Parse { .. })));
    let doc = parse_structure("coords(x,y) 1/2*x^2*dx^dy").unwrap();
    assert_eq!(doc.bivector().unwrap().component(&[0, 1]), x(2, 0).pow(2).scale(&frac(1, 2)));
}

#[test]
fn catalog_round_trips_through_dsl() {
    for &name in ModelName::ALL.iter() {
        let pi = catalog_model(name);
        let text = print_structure(&pi);
        let back = parse_structure(&text).unwrap().to_structure().unwrap();
        assert_eq!(back.bivector(), pi.bivector(), "{name}: {text}");
        assert_eq!(back.names(), pi.names());
    }
}
