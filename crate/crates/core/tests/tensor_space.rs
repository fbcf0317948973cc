mod common;

use common::{fro, hermitian_from_seed, pauli_halves};
use liebasis::casimir::{casimir, CasimirKey};
use liebasis::lie_core::{adjoint_rep, build_generators, defining_rep, structure_constants};
use liebasis::linalg;
use liebasis::tensor_space::ProductSpace;
use proptest::prelude::*;

proptest! {
    #[test]
    fn lifts_commute(d1 in 1usize..5, d2 in 1usize..5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let b = build_generators(2).unwrap();
        // only the dimensions of the factor reps matter for lifting
        let r1 = liebasis::lie_core::Representation::new(
            liebasis::lie_core::RepKind::Defining,
            vec![linalg::identity(d1); b.len()],
        ).unwrap();
        let r2 = liebasis::lie_core::Representation::new(
            liebasis::lie_core::RepKind::Defining,
            vec![linalg::identity(d2); b.len()],
        ).unwrap();
        let ps = ProductSpace::new(r1, r2).unwrap();
        let a = ps.lift_first(&hermitian_from_seed(d1, s1)).unwrap();
        let bb = ps.lift_second(&hermitian_from_seed(d2, s2)).unwrap();
        prop_assert!(fro(&linalg::commutator(&a, &bb)) < 1e-12);
    }
}

#[test]
fn su2_t3_lift_spectrum() {
    let b = build_generators(2).unwrap();
    let ps = ProductSpace::new(defining_rep(&b), defining_rep(&b)).unwrap();
    // oracle: explicit Kronecker product diag(½,−½) ⊗ I₂
    let t3 = &pauli_halves()[2];
    let lifted = ps.lift_first(t3).unwrap();
    let d: Vec<f64> = (0..4).map(|i| lifted[(i, i)].re).collect();
    assert_eq!(d, vec![0.5, 0.5, -0.5, -0.5]);
    assert!(linalg::is_diagonal(&lifted, 0.0));
}

#[test]
fn su2_coupled_quadratic_is_j_squared() {
    let b = build_generators(2).unwrap();
    let ps = ProductSpace::new(defining_rep(&b), defining_rep(&b)).unwrap();
    let coupled = ps.coupled_rep();
    let j2 = casimir(&coupled, &b, CasimirKey::new(2, 2, 2).unwrap()).unwrap();
    // oracle: (J₁ + J₂)² from explicit 4×4 Kronecker products of Pauli/2
    let p = pauli_halves();
    let i2 = linalg::identity(2);
    let mut oracle = linalg::zeros(4, 4);
    for s in &p {
        let j = s.kronecker(&i2) + i2.kronecker(s);
        oracle += &j * &j;
    }
    assert!(fro(&(&j2 - &oracle)) < 1e-13);
    let e = linalg::eigh(&oracle).unwrap();
    let want = [0.0, 2.0, 2.0, 2.0];
    for (g, w) in e.values.iter().zip(want) {
        assert!((g - w).abs() < 1e-13);
    }
}

#[test]
fn coupled_reps_are_representations() {
    let b = build_generators(2).unwrap();
    let sc = structure_constants(&b);
    let ps = ProductSpace::new(defining_rep(&b), defining_rep(&b)).unwrap();
    let r = ps.coupled_rep();
    assert_eq!(r.dim(), 4);
    assert!(r.homomorphism_residual(&sc) < 1e-12);

    for (n, dim) in [(3, 64), (4, 225)] {
        let b = build_generators(n).unwrap();
        let sc = structure_constants(&b);
        let adj = adjoint_rep(&b, &sc);
        let ps = ProductSpace::new(adj.clone(), adj).unwrap();
        let r = ps.coupled_rep();
        assert_eq!(r.dim(), dim);
        if n == 3 {
            assert!(r.homomorphism_residual(&sc) < 1e-10);
        }
    }
}

#[test]
fn coupled_generators_commute_with_factor_casimirs() {
    let b = build_generators(3).unwrap();
    let sc = structure_constants(&b);
    let adj = adjoint_rep(&b, &sc);
    let ps = ProductSpace::new(defining_rep(&b), adj).unwrap();
    for key in CasimirKey::for_subgroup(3) {
        let c1 = ps.lift_first(&casimir(ps.rep1(), &b, key).unwrap()).unwrap();
        let c2 = ps.lift_second(&casimir(ps.rep2(), &b, key).unwrap()).unwrap();
        for a in 0..b.len() {
            let o = ps.couple(ps.rep1().matrix(a), ps.rep2().matrix(a)).unwrap();
            assert!(fro(&linalg::commutator(&o, &c1)) < 1e-10);
            assert!(fro(&linalg::commutator(&o, &c2)) < 1e-10);
        }
    }
}

#[test]
fn exchange_commutes_with_symmetric_coupling() {
    for n in 2..=3 {
        let b = build_generators(n).unwrap();
        let sc = structure_constants(&b);
        for rep in [defining_rep(&b), adjoint_rep(&b, &sc)] {
            let ps = ProductSpace::new(rep.clone(), rep).unwrap();
            let p = ps.exchange_operator().unwrap();
            for a in 0..b.len() {
                let o = ps.couple(ps.rep1().matrix(a), ps.rep2().matrix(a)).unwrap();
                let conj = linalg::mul(&linalg::mul(&p, &o), &p);
                assert!(fro(&(conj - &o)) < 1e-12);
            }
        }
    }
}
