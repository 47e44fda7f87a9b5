//! Independent oracles for the basis, the Hamiltonian, and the propagator.
//!
//! Every reference value here is computed from scratch in the test: the
//! basis by exhaustive filtering of the full configuration space, the
//! Hamiltonian by applying local spin and matter operators in the full
//! tensor-product space, and time evolution by dense diagonalization.

use std::collections::BTreeSet;
use std::time::Instant;

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlm_core::basis::{enumerate_basis, gauss_charge, vacuum_state};
use qlm_core::model::{ModelKind, ModelSpec};
use qlm_core::operators::{build_hamiltonian, build_qlm, build_tsm};
use qlm_core::propagator::{DenseEvolver, Propagator, PropagatorConfig};
use qlm_core::spin::{HalfInt, SpinValue};

mod common;

use common::{all_configs, config_of, dense_oracle, eigh, is_physical, max_abs_diff, oracle_matrix, Config};

type C = Complex64;

fn spec(twice_s: u32, length: usize, kind: ModelKind) -> ModelSpec {
    ModelSpec::new(SpinValue::new(twice_s).unwrap(), length, kind).unwrap()
}

#[test]
fn basis_equals_brute_force_enumeration() {
    let start = Instant::now();
    for twice_s in 1..=3 {
        for length in [2, 4, 6] {
            let basis = enumerate_basis(&spec(twice_s, length, ModelKind::Qlm));
            let expected: BTreeSet<Config> = all_configs(twice_s, length).into_iter().filter(is_physical).collect();
            let got: BTreeSet<Config> = (0..basis.dim()).map(|b| config_of(&basis, b)).collect();
            assert_eq!(got.len(), basis.dim(), "duplicates for 2S={twice_s} L={length}");
            assert_eq!(got, expected, "2S={twice_s} L={length}");
            for (b, state) in basis.states().iter().enumerate() {
                assert_eq!(basis.lookup(state), Some(b));
                for j in 1..=length {
                    assert_eq!(gauss_charge(state, j).unwrap(), HalfInt::ZERO);
                }
            }
        }
    }
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn documented_dimensions() {
    assert_eq!(enumerate_basis(&spec(1, 4, ModelKind::Qlm)).dim(), 7);
    assert_eq!(enumerate_basis(&spec(3, 2, ModelKind::Qlm)).dim(), 7);
}

#[test]
fn canonical_order_is_link0_then_big_endian_matter() {
    let basis = enumerate_basis(&spec(3, 6, ModelKind::Qlm));
    let key = |b: usize| {
        let (occ, links) = config_of(&basis, b);
        let matter = occ.iter().fold(0u32, |acc, &n| (acc << 1) | n as u32);
        (links[0], matter)
    };
    for b in 1..basis.dim() {
        assert!(key(b - 1) < key(b));
    }
    let again = enumerate_basis(&spec(3, 6, ModelKind::Qlm));
    assert_eq!(basis.states(), again.states());
}

#[test]
fn hamiltonian_matches_full_space_construction() {
    let start = Instant::now();
    for twice_s in [1, 2, 3] {
        for kind in [ModelKind::Qlm, ModelKind::Tsm] {
            let model = spec(twice_s, 4, kind).with_couplings(0.37, 0.81);
            let basis = enumerate_basis(&model);
            let h = build_hamiltonian(&basis);
            assert!(h.is_hermitian());
            let dense = h.to_dense();
            assert_eq!(max_abs_diff(&dense, &dense.transpose().to_owned()), 0.0);
            let oracle = oracle_matrix(&model, &basis);
            let dev = max_abs_diff(&dense, &oracle);
            assert!(dev < 1e-12, "2S={twice_s} {kind}: max deviation {dev:e}");
        }
    }
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn gauge_closure_at_length_six() {
    for twice_s in [1, 3] {
        let model = spec(twice_s, 6, ModelKind::Qlm);
        let basis = enumerate_basis(&model);
        let oracle = oracle_matrix(&model, &basis);
        let dev = max_abs_diff(&build_hamiltonian(&basis).to_dense(), &oracle);
        assert!(dev < 1e-12);
    }
}

#[test]
fn extreme_vacuum_couples_with_one_over_root_three() {
    let model = spec(1, 4, ModelKind::Qlm);
    let basis = enumerate_basis(&model);
    let h = build_qlm(&basis).unwrap();
    let v = vacuum_state(&basis, HalfInt::HALF).unwrap();
    let dense = h.to_dense();
    let couplings: Vec<f64> = (0..basis.dim()).filter(|&r| r != v).map(|r| dense[(r, v)]).filter(|a| *a != 0.0).collect();
    assert_eq!(couplings.len(), 2);
    for a in couplings {
        assert!((a.abs() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }
}

fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C> {
    let v: Vec<C> = (0..dim).map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / n).collect()
}

fn max_dev(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn translation_by_two_sites_commutes_with_h() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for twice_s in [1, 2, 3] {
        let model = spec(twice_s, 6, ModelKind::Qlm).with_couplings(0.3, 0.5);
        let basis = enumerate_basis(&model);
        let h = build_hamiltonian(&basis);
        let perm = basis.translation(2);
        let translate = |v: &[C]| {
            let mut out = vec![C::new(0.0, 0.0); v.len()];
            for (b, &p) in perm.iter().enumerate() {
                out[p] = v[b];
            }
            out
        };
        for _ in 0..4 {
            let v = random_state(&mut rng, basis.dim());
            let lhs = h.apply(&translate(&v)).unwrap();
            let rhs = translate(&h.apply(&v).unwrap());
            assert!(max_dev(&lhs, &rhs) < 1e-12);
        }
    }
}

fn eigenvalues(m: Mat<f64>) -> Vec<f64> {
    let mut e = eigh(&m).0;
    e.sort_by(f64::total_cmp);
    e
}

#[test]
fn tsm_and_qlm_spectra_agree_after_rescaling_for_small_spin() {
    for twice_s in [1, 2] {
        let s = twice_s as f64 / 2.0;
        let c = s * (s + 1.0);
        // the QLM amplitude is the TSM amplitude times √(2S/C) for S ≤ 1
        let qlm = spec(twice_s, 4, ModelKind::Qlm).with_couplings(0.4, 0.7);
        let mut tsm = spec(twice_s, 4, ModelKind::Tsm).with_couplings(0.4, 0.7);
        tsm.j = (2.0 * s / c).sqrt();
        let eq = eigenvalues(build_qlm(&enumerate_basis(&qlm)).unwrap().to_dense());
        let et = eigenvalues(build_tsm(&enumerate_basis(&tsm)).unwrap().to_dense());
        let dev = eq.iter().zip(&et).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-10, "2S={twice_s}: {dev:e}");
    }
}

#[test]
fn krylov_matches_dense_evolution() {
    let start = Instant::now();
    for twice_s in [1, 3] {
        let model = spec(twice_s, 4, ModelKind::Qlm).with_couplings(0.2, 0.3);
        let basis = enumerate_basis(&model);
        let h = build_hamiltonian(&basis);
        let mut v0 = vec![C::new(0.0, 0.0); basis.dim()];
        v0[vacuum_state(&basis, model.spin.s()).unwrap()] = C::new(1.0, 0.0);
        let cfg = PropagatorConfig { dt: 0.05, krylov_dim: 12, tol: 1e-12 };
        let prop = Propagator::krylov(&h, cfg).unwrap();
        let mut noop = |_: usize, _: f64, _: &[C]| Ok(());
        let report = prop.evolve(&v0, 10.0, &mut noop).unwrap();
        let reference = dense_oracle(&h.to_dense(), &v0, 10.0);
        let dev = max_dev(&report.final_state, &reference);
        assert!(dev < 1e-10, "2S={twice_s}: {dev:e}");
        let lib_dense = DenseEvolver::new(&h).unwrap().evolve(&v0, 10.0);
        assert!(max_dev(&lib_dense, &reference) < 1e-10);
    }
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn backward_evolution_returns_to_start() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let model = spec(3, 8, ModelKind::Qlm).with_couplings(0.1, 0.2);
    let basis = enumerate_basis(&model);
    let h = build_hamiltonian(&basis);
    let cfg = PropagatorConfig { dt: 0.05, ..Default::default() };
    let prop = Propagator::krylov(&h, cfg).unwrap();
    let v0 = random_state(&mut rng, basis.dim());
    let mut v = v0.clone();
    for _ in 0..40 {
        v = prop.step_by(&v, 0.05).unwrap().0;
    }
    for _ in 0..40 {
        v = prop.step_by(&v, -0.05).unwrap().0;
    }
    assert!(max_dev(&v, &v0) < 1e-8);
}

#[test]
fn halving_dt_changes_little() {
    let model = spec(3, 8, ModelKind::Qlm);
    let basis = enumerate_basis(&model);
    let h = build_hamiltonian(&basis);
    let mut v0 = vec![C::new(0.0, 0.0); basis.dim()];
    v0[vacuum_state(&basis, HalfInt::from_twice(3)).unwrap()] = C::new(1.0, 0.0);
    let finals: Vec<Vec<C>> = [0.01, 0.005]
        .iter()
        .map(|&dt| {
            let cfg = PropagatorConfig { dt, ..Default::default() };
            let mut noop = |_: usize, _: f64, _: &[C]| Ok(());
            Propagator::krylov(&h, cfg).unwrap().evolve(&v0, 5.0, &mut noop).unwrap().final_state
        })
        .collect();
    assert!(max_dev(&finals[0], &finals[1]) < 1e-6);
}

#[test]
fn opposite_extreme_vacua_give_mirrored_flux() {
    use qlm_core::observables::Observer;
    let model = spec(3, 8, ModelKind::Qlm);
    let basis = enumerate_basis(&model);
    let h = build_hamiltonian(&basis);
    let observer = Observer::new(&basis);
    let cfg = PropagatorConfig::default();
    let run = |mz: HalfInt| {
        let mut v0 = vec![C::new(0.0, 0.0); basis.dim()];
        v0[vacuum_state(&basis, mz).unwrap()] = C::new(1.0, 0.0);
        let mut flux = Vec::new();
        let mut rates = Vec::new();
        let mut sampler = |_: usize, t: f64, psi: &[C]| {
            flux.push(observer.observables(&h, psi, t)?.flux);
            rates.push(observer.rates(psi, t));
            Ok(())
        };
        Propagator::krylov(&h, cfg).unwrap().evolve(&v0, 3.0, &mut sampler).unwrap();
        (flux, rates)
    };
    let (fp, rp) = run(HalfInt::from_twice(3));
    let (fm, rm) = run(HalfInt::from_twice(-3));
    for (a, b) in fp.iter().zip(&fm) {
        assert!((a + b).abs() < 1e-10);
    }
    for (a, b) in rp.iter().zip(&rm) {
        for &(m, v) in &a.lambda {
            // overlaps far below the propagation tolerance carry no relative accuracy
            if let (Some(x), Some(y)) = (v.finite(), b.get(-m).unwrap().finite()) {
                if x.min(y) < 3.0 {
                    assert!((x - y).abs() < 1e-9, "t={} m={m}: {x} vs {y}", a.time);
                }
            }
        }
    }
}
